"""Integer homology of the genus-two handlebody and its 2-handle additions."""

from __future__ import annotations

from math import gcd
from typing import NamedTuple

from .words import A, B, CyclicWord


class LatticeVector(NamedTuple):
    x: int
    y: int

    def __add__(self, other):  # type: ignore[override]
        return LatticeVector(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return LatticeVector(self.x - other.x, self.y - other.y)

    def __neg__(self):
        return LatticeVector(-self.x, -self.y)


class HomologyGroup(NamedTuple):
    free_rank: int
    torsion_order: int

    @property
    def torsion_free(self) -> bool:
        return self.torsion_order <= 1

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank
        if self.torsion_order > 1:
            parts.append(f"Z/{self.torsion_order}")
        return " + ".join(parts) or "0"


def abelianize(w: CyclicWord) -> LatticeVector:
    x = y = 0
    for letter in w.letters:
        step = 1 if letter > 0 else -1
        if abs(letter) == A:
            x += step
        elif abs(letter) == B:
            y += step
    return LatticeVector(x, y)


def two_handle_homology(r: LatticeVector) -> HomologyGroup:
    """H_1 of the handlebody with a 2-handle attached along a curve of class r."""
    if r.x == 0 and r.y == 0:
        return HomologyGroup(2, 0)
    return HomologyGroup(1, gcd(r.x, r.y))


def determinant(u: LatticeVector, w: LatticeVector) -> int:
    return u.x * w.y - u.y * w.x


def is_homology_sphere_pair(r: LatticeVector, m: LatticeVector) -> bool:
    return abs(determinant(r, m)) == 1


def perp_coefficient(u: LatticeVector, w: LatticeVector) -> int:
    """|u_perp . w| where u_perp = (-u.y, u.x)."""
    return abs(-u.y * w.x + u.x * w.y)
