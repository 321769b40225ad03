from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import exponent_sums, s_expand, s_same_curve

from rrdiagrams.checks import figure8_diagram
from rrdiagrams.diagrams import (
    Band,
    Chord,
    Fig1a,
    Fig1b,
    Fig9,
    Fig15,
    Handle,
    RRDiagram,
    Slot,
    change_cutting_disks,
    curve_predicates,
    extract_curves,
    family_diagram,
    heegaard_graph,
    normalizing_automorphism,
    validate,
)
from rrdiagrams.errors import InvalidParams
from rrdiagrams.homology import abelianize
from rrdiagrams.words import IDENTITY, A, B, apply_automorphism, cw, cyclic_canonical, format_word, power


def word_str(c):
    return "".join({A: "A", -A: "a", B: "B", -B: "b"}[x] for x in c.letters)


class TestValidate:
    def test_figure8_valid(self):
        assert validate(figure8_diagram()) == []

    def test_gcd_rule(self):
        d = RRDiagram(Handle("A", (Band(2, 1), Band(2, 1), Band(4, 1))), Handle("B", ()), ())
        assert any("gcd" in v for v in validate(d))

    def test_weight_conservation(self):
        d = RRDiagram(
            Handle("A", (Band(1, 2),)),
            Handle("B", (Band(1, 2),)),
            (Chord(Slot.parse("A0+"), Slot.parse("B0-"), 1), Chord(Slot.parse("B0+"), Slot.parse("A0-"), 2)),
        )
        assert validate(d)

    def test_slot_parse_errors(self):
        with pytest.raises(InvalidParams):
            Slot.parse("C0+")
        with pytest.raises(InvalidParams):
            Slot.parse("Ax+")


class TestExtract:
    def test_figure8(self):
        assert [str(w) for w in extract_curves(figure8_diagram())] == ["AB", "A^3 B^2 A^2 B^2"]

    @pytest.mark.parametrize("q,r,u,t", [(3, 2, 3, 2), (2, 3, 5, 2), (5, 3, 1, 4), (1, 2, 2, 3)])
    def test_fig15_words(self, q, r, u, t):
        fd = family_diagram(Fig15(1, 1, 1, q, r, u, t))
        want = s_expand([("A", r), ("B", u), ("A", q), ("B", t), ("A", q), ("B", u)])
        assert s_same_curve(word_str(fd.r), want)

    def test_fig1b_one_zero(self):
        assert family_diagram(Fig1b(1, 0, 1, 2, 3)).r == cw("A^2 B^3")

    def test_fig1b_homology(self):
        assert abelianize(family_diagram(Fig1b(2, 1, 2, 3, 2)).r) == (11, 6)

    def test_fig1a(self):
        fd = family_diagram(Fig1a(3))
        assert fd.r == cw("A")
        assert fd.curves["beta"] == cw("B^3")

    @given(
        st.integers(0, 4), st.integers(0, 4), st.integers(1, 6), st.integers(1, 6), st.integers(2, 6)
    )
    @settings(max_examples=80, deadline=None)
    def test_fig1b_structure(self, a, b, m, n, s):
        p = Fig1b(a, b, m, n, s)
        if a + b == 0 or gcd(a, b) != 1 or gcd(m, n) != 1:
            with pytest.raises(InvalidParams):
                family_diagram(p)
            return
        w = word_str(family_diagram(p).r)
        assert exponent_sums(w) == ((a + b) * n + b * m, (a + b) * s)
        runs = cyclic_canonical(family_diagram(p).r.letters).syllables()
        a_runs = sorted(e for g, e in runs if g == A)
        # a runs of length n and b runs of length n + m (equal labels merge)
        if m > 0 and a > 0 and b > 0:
            assert a_runs == sorted([n] * a + [n + m] * b)
        assert all(e == s for g, e in runs if g == B)

    def test_fig15_general_homology(self):
        for a, b, c in [(1, 1, 2), (2, 1, 1), (1, 3, 1)]:
            p = Fig15(a, b, c, 3, 2, 3, 2)
            r = abelianize(family_diagram(p).r)
            assert r == (a * p.r + (b + c) * p.q, c * p.t + (a + b) * p.u)

    def test_multi_component_rejected(self):
        with pytest.raises(InvalidParams, match="components"):
            family_diagram(Fig9(1, 1, 1, 2, 1, 3))

    def test_param_errors(self):
        with pytest.raises(InvalidParams, match="gcd"):
            family_diagram(Fig1b(2, 2, 1, 1, 3))
        with pytest.raises(InvalidParams, match="s > 1"):
            family_diagram(Fig1b(1, 0, 1, 2, 1))
        with pytest.raises(InvalidParams):
            family_diagram(Fig1a(1))


class TestHeegaardGraph:
    @pytest.mark.parametrize("n,s", [(1, 1), (2, 3), (4, 2)])
    def test_one_syllable_each(self, n, s):
        g = heegaard_graph([cyclic_canonical(power(A, n) + power(B, s))])
        assert g.complexity == n + s
        assert g.weight("A+", "A-") == n - 1
        assert g.weight("B+", "B-") == s - 1
        assert g.weight("A+", "B-") == 1 and g.weight("A-", "B+") == 1

    def test_ab(self):
        g = heegaard_graph([cw("AB")])
        assert g.complexity == 2
        assert g.weight("A+", "A-") == 0 and g.weight("B+", "B-") == 0

    def test_b_power(self):
        g = heegaard_graph([cw("B^4")])
        assert g.edges == {("B+", "B-"): 4}
        assert not curve_predicates([cw("B^4")]).connected

    def test_positive_connected(self):
        pr = curve_predicates([cw("A^3 B^2")])
        assert pr.connected and not pr.cut_vertex and pr.positive and pr.graph_type == "a"

    def test_fig9_mixed_signs_nonpositive(self):
        r = family_diagram(Fig9(2, 1, 1, 2, -1, 3)).r
        assert not curve_predicates([r]).positive

    def test_zero_label_cut_vertex(self):
        r = family_diagram(Fig9(2, 1, 1, 1, 0, 3)).r
        assert curve_predicates([r]).cut_vertex


class TestCuttingDisks:
    def test_identity(self):
        d = family_diagram(Fig9(2, 1, 1, 1, 1, 3)).diagram
        assert change_cutting_disks(d, IDENTITY) is d

    def test_one_one_normalization_has_big_label(self):
        p = Fig9(2, 1, 1, 1, 1, 3)
        phi = normalizing_automorphism(p)
        d = change_cutting_disks(family_diagram(p).diagram, phi)
        assert max(abs(b.label) for b in d.handle_a.bands + d.handle_b.bands) > 2
        assert extract_curves(d) == [
            min(apply_automorphism(family_diagram(p).r, phi), apply_automorphism(family_diagram(p).r, phi).inverse())
        ]

    def test_zero_label_proper_power_rejected(self):
        with pytest.raises(InvalidParams, match="proper power"):
            normalizing_automorphism(Fig9(4, 1, 1, 1, 0, 2))

    def test_zero_label_normalization(self):
        p = Fig9(1, 2, 3, 1, 1, 2)
        d = change_cutting_disks(family_diagram(p).diagram, normalizing_automorphism(p))
        assert format_word(extract_curves(d)[0].letters) in ("A^5 b^2 A^3 b^2", "A^5 B^-2 A^3 B^-2")
