"""Exact holomorphic Euler characteristics on weighted projective stacks and
cyclic quotients of projective space via Kawasaki's Riemann-Roch formula."""
from .classes import KClass, KTerm
from .cyclotomic import Cyclotomic, promote, rational_value, root_of_unity
from .engine import (
    EulerResult,
    IntegralityError,
    ObstructionSetup,
    chi_fake,
    chi_kawasaki,
    chi_lefschetz,
    chi_virtual_direct,
    chi_virtual_strata,
)
from .geometry import CyclicQuotient, InvariantViolation, WeightedProjective, enumerate_sectors
from .series import Series

__version__ = "0.1.0"
