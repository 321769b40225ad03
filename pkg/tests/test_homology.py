from hypothesis import given
from hypothesis import strategies as st

from rrdiagrams.homology import (
    HomologyGroup,
    LatticeVector,
    abelianize,
    determinant,
    is_homology_sphere_pair,
    perp_coefficient,
    two_handle_homology,
)
from rrdiagrams.words import A, B, cw, cyclic_canonical, power

ints = st.integers(-40, 40)
vectors = st.builds(LatticeVector, ints, ints)


def test_abelianize_examples():
    assert abelianize(cw("AB")) == (1, 1)
    assert abelianize(cw("A^3 B^2 A^2 B^2")) == (5, 4)


def test_abelianize_cut_vertex_meridian():
    # the closed form (j+1, (j+1)s - 1) is the u = 1 case
    s, u, a1 = 3, 1, 1
    j = a1 + 1
    w = cyclic_canonical(power(B, s - u) + (A,) + (power(B, s) + (A,)) * j)
    assert abelianize(w) == (j + 1, (j + 1) * s - 1) == (3, 8)


def test_two_handle_homology():
    assert two_handle_homology(LatticeVector(1, 1)) == HomologyGroup(1, 1)
    assert two_handle_homology(LatticeVector(0, 5)) == HomologyGroup(1, 5)
    assert two_handle_homology(LatticeVector(2, 4)).torsion_order == 2
    assert str(two_handle_homology(LatticeVector(2, 4))) == "Z + Z/2"
    assert two_handle_homology(LatticeVector(0, 0)).free_rank == 2


def test_homology_sphere_pair():
    assert is_homology_sphere_pair(LatticeVector(2, 3), LatticeVector(1, 1))
    assert not is_homology_sphere_pair(LatticeVector(1, 0), LatticeVector(1, 0))


def test_perp_coefficient():
    assert perp_coefficient(LatticeVector(1, 0), LatticeVector(3, 5)) == 5
    a, b, m, n = 1, 1, 2, 3
    assert perp_coefficient(LatticeVector((a + b) * n + b * m, a + b), LatticeVector(0, 1)) == 8
    assert perp_coefficient(LatticeVector(4, 7), LatticeVector(4, 7)) == 0


@given(vectors, vectors)
def test_determinant_antisymmetric(u, w):
    assert determinant(u, w) == -determinant(w, u)
    assert perp_coefficient(u, w) == abs(determinant(u, w))


@given(vectors, vectors, ints)
def test_determinant_shear_invariant(u, w, k):
    assert determinant(u, w + LatticeVector(k * u.x, k * u.y)) == determinant(u, w)
