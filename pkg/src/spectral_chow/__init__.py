"""Exact spectral data of commuting matrix tuples.

Joint spectra as zero-cycles, Chow and Hitchin coordinates, the generalized
Cayley-Hamilton check, Cayley-cover fibers, multisymmetric rewriting, and
torsion-free quotients of one-parameter families over k[s].
"""

from .chow import cayley_fiber, chow2_membership, iota, is_multiplicity_free
from .families import (IdenticallyDegenerate, ModulePresentation, PolyMatrixTuple,
                       family_spectral_coords, ruled_example, torsion_free_quotient)
from .fields import QQ, FpElement, PrimeField, field_from_descriptor
from .matrix import Matrix, char_poly, rank_kernel
from .multisym import MultiSymInvariant, parse_invariant, rewrite_in_chow
from .snf import smith_normal_form
from .spectra import (MatrixTuple, NotCommuting, ZeroCycle, cayley_hamilton_check,
                      cycle_to_tuple, local_modules, spectral_datum, trace_powers)
from .symtensor import (ChowCoords, HitchinCoords, SymTensor, elementary_from_points,
                        newton_e_to_p, newton_p_to_e, power_sums_from_points)
from .unipoly import PolyRing, UniPoly, Unsplit, roots_with_multiplicity

__version__ = "0.1.0"
