"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid or inconsistent input parameters."""


class UndefinedInputError(ValueError):
    """The operation is mathematically undefined for the input (e.g. gcd(0, 0))."""


class CapacityError(RuntimeError):
    """A brute-force enumeration would exceed its configured size guard."""


class UnsupportedCaseError(NotImplementedError):
    """The requested evaluation form is not available for this modulus kind."""
