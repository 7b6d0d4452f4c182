"""Exact verification of Ritt's nilpotency indices and the free vertex algebra side."""

from .diffalg import DiffPoly, DiffRing, Monomial, VarId, derive, derive_n, parse_poly, poly_mul
from .free_va import LocalitySpec, check_cofree_iff, check_jetfree, enumerate_basis, zhu_poisson_dims
from .lattice_residue import check_rittab, count_margin_matrices, residue_coefficient
from .nilpotency import q_pair, q_single, verify_power_threshold
from .slices import Grade, ResourceExceeded, enumerate_slice, is_member, quotient_slice_dim, slice_rank

__version__ = "0.1.0"
