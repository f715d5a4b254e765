"""Exact-arithmetic Tannakian reconstruction over commutative rings.

The library computes, at desk scale and in exact arithmetic, the coend
coalgebroid of a fiber functor on a finite linear category, transports
monoidal / symmetric / duality data to a (commutative) bialgebroid with
antipode, decides Hopf-ness through the fusion operators, checks the
recognition conditions on finite inputs, and exercises all of it on the
filtered-module example over Z/p^n.
"""

from .rings import GF, QQ, RingHom, ZZ, Zmod
from .linalg import Matrix, kernel, normal_form, smith, solve

__all__ = [
    "GF",
    "QQ",
    "ZZ",
    "Zmod",
    "RingHom",
    "Matrix",
    "normal_form",
    "kernel",
    "solve",
    "smith",
]
