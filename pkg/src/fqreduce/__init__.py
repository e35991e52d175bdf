"""Polynomial factoring over prime fields, and reductions of factoring to
Frobenius minimal polynomials, factor degrees, Carlitz characteristic
polynomials and Moore or Vandermonde determinants."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .field import PrimeField, Rng, field_new
from .poly import Factorization, ModCtx, Poly, modcompose, random_monic_squarefree, squarefree_decompose
from .factor import ddf, edf, factor, factor_degree_ref, is_irreducible, trial_factor
from .frobenius import FrobTable, frob_charpoly, frob_minpoly
from .carlitz import CarlitzCtx, carlitz_charpoly, smallest_degree_via_carlitz
from .determinants import build_Sm, moore_det_direct, moore_zero_test, vandermonde_det
from .reductions import (
    OracleSet, factor_degree_via_carlitz, factor_degree_via_determinant, find_cyclotomic, find_k,
    find_order, find_T, reduce_factor_via_factordegree, reduce_factor_via_frobminpoly,
)
from .textio import format_poly, parse_poly
