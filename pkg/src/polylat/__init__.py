"""Reduced CBC construction of polynomial lattice point sets over F_p."""

from .bounds import discrepancy_bound, joe_sum, n_star_bound, suggest_ws, theorem_bound, tractability_check
from .cbc import ConstructionTrace, cbc_reduced_fast, cbc_reduced_naive, omega_multiply
from .discrepancy import local_discrepancy, star_discrepancy_exact, weighted_star_discrepancy_exact
from .errors import CapacityError, ParameterError, UndefinedInputError, UnsupportedCaseError
from .fieldpoly import Modulus, ModulusKind, Poly
from .pointset import PointSet, generate_point_set
from .quality import R_character, R_direct, R_walsh, psi_table
from .weights import GeneratingVector, WeightSystem, search_set

__version__ = "0.1.0"
