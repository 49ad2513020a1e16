"""Bundled reference tensors: the 21 vertex classes of the order-3 dimension-4
polytope and the smallest fractional vertex V of the order-3 dimension-3 one.

index.json carries, per class, the support size N, the permanent, the
denominator LCM Delta, and the symmetry flag; the library's own enumeration
and certification reproduce all of it.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from ..formats import parse_tensor_text
from ..tensor import Tensor


def _read(name: str) -> str:
    return resources.files(__package__).joinpath(name).read_text(encoding="utf-8")


def load_v() -> Tensor:
    """The smallest vertex that is not a multidimensional permutation (d=3, n=3)."""
    return parse_tensor_text(_read("v_smallest_3_3.txt"))


def load_known_vertex_3_4(k: int) -> Tensor:
    """Reference vertex class k (1..21) of the order-3 dimension-4 polytope."""
    if not 1 <= k <= 21:
        raise ValueError("k must be in 1..21")
    return parse_tensor_text(_read(f"omega_3_4/vertex_{k:02d}.txt"))


def load_known_vertices_3_4() -> list[Tensor]:
    return [load_known_vertex_3_4(k) for k in range(1, 22)]


def known_vertex_stats_3_4() -> dict[int, dict]:
    """Per-class reference stats: N, permanent, delta, symmetric."""
    raw = json.loads(_read("omega_3_4/index.json"))
    out = {}
    for key, rec in raw.items():
        out[int(key)] = {
            "N": rec["N"],
            "permanent": Fraction(rec["per"]),
            "delta": rec["delta"],
            "symmetric": rec["symmetric"],
        }
    return out
