"""Kac-Weisfeiler workbench for Lie algebras reduced mod p.

Algebras are named by a builtin ("sl2", "remark:1:2", ...) or passed as a JSON
input document string.
"""

import json

from ._kw1 import (
    DimensionCap,
    Error,
    InputError,
    NotRestrictable,
    WeightMismatch,
    __version__,
    algebra_document,
    builtin_names,
    center_basis,
    fraction_field_degree,
    in_p_center_subalgebra,
    index,
    max_irreducible_dim,
    p_center_generators,
    p_map,
    rank_over_frobenius_subring,
    rank_over_p_center,
    run_cli,
)
from ._kw1 import check_json as _check_json


def check(algebra, primes=(3, 5), degree_bound=None, ext=None, samples=10, seed=0, oracle=False):
    """Full pipeline per prime. Returns (reports, exit_code) with reports as dicts."""
    text, code = _check_json(algebra, list(primes), degree_bound, ext, samples, seed, oracle)
    return json.loads(text)["reports"], code


__all__ = [
    "DimensionCap",
    "Error",
    "InputError",
    "NotRestrictable",
    "WeightMismatch",
    "__version__",
    "algebra_document",
    "builtin_names",
    "center_basis",
    "check",
    "fraction_field_degree",
    "in_p_center_subalgebra",
    "index",
    "max_irreducible_dim",
    "p_center_generators",
    "p_map",
    "rank_over_frobenius_subring",
    "rank_over_p_center",
    "run_cli",
]
