"""The invariant suite behind ``rrdiagrams check``.

Each check returns (name, ok, detail).  Bounds are kept small so the
whole suite runs in seconds; the test-suite runs the same properties on
larger boxes.
"""

from __future__ import annotations

from itertools import product
from math import gcd
from typing import Callable

from .classify import (
    census,
    converse_pair,
    cull_meridian,
    eq3_inequalities_hold,
    eq3_solutions,
)
from .diagrams import Band, Chord, Fig15, Handle, RRDiagram, Slot, extract_curves, family_diagram
from .errors import RRError
from .homology import abelianize
from .waves import fig15_closed_form, meridian_candidates
from .words import (
    A,
    B,
    FreeAutomorphism,
    LeftMultiply,
    apply_automorphism,
    cw,
    cyclic_canonical,
    from_syllables,
    minimal_length,
    power,
)

Result = tuple[str, bool, str]


def figure8_diagram() -> RRDiagram:
    """Two disjoint curves AB and A^3 B^2 A^2 B^2 (also shipped as diagrams/fig8.rr)."""
    ha = Handle("A", (Band(2, 1), Band(3, 1), Band(1, 1)))
    hb = Handle("B", (Band(1, 1), Band(2, 2)))
    pairs = [("A0-", "B1+"), ("A0+", "B1-"), ("A1-", "B1+"), ("A1+", "B1-"), ("A2-", "B0+"), ("A2+", "B0-")]
    return RRDiagram(ha, hb, tuple(Chord(Slot.parse(x), Slot.parse(y), 1) for x, y in pairs))


def fig15_tuples(bound: int):
    for q, r, u, t in product(range(1, bound + 1), repeat=4):
        if q != r and u != t and gcd(q, r) == 1 and gcd(u, t) == 1:
            yield Fig15(1, 1, 1, q, r, u, t)


def fig15_expected_r(p: Fig15):
    return cyclic_canonical(
        from_syllables([(A, p.r), (B, p.u), (A, p.q), (B, p.t), (A, p.q), (B, p.u)])
    )


def seifert_meridian(s: int, u: int, a1: int):
    """M1 = B^(s-u) A (B^s A)^(a1+1) and its expected image B^-u A^(a1+2)."""
    word = power(B, s - u) + power(A, 1) + (power(B, s) + power(A, 1)) * (a1 + 1)
    return cyclic_canonical(word), cyclic_canonical(power(B, -u) + power(A, a1 + 2))


def check_fig8() -> Result:
    got = [str(w) for w in extract_curves(figure8_diagram())]
    want = sorted([str(cw("AB")), str(cw("A^3 B^2 A^2 B^2"))])
    return "fig8 words", sorted(got) == want, "" if sorted(got) == want else f"got {got}"


def check_fig15_words(bound: int) -> Result:
    bad = [p for p in fig15_tuples(bound) if family_diagram(p).r != fig15_expected_r(p)]
    return "fig15 words", not bad, f"first mismatch {bad[0]}" if bad else ""


def check_fig15_closed_forms(bound: int) -> Result:
    bad = []
    for p in fig15_tuples(bound):
        pair = meridian_candidates(family_diagram(p))
        if (pair.m1, pair.m2) != fig15_closed_form(p):
            bad.append(p)
    return "fig15 meridian closed forms", not bad, f"first mismatch {bad[0]}" if bad else ""


def check_meridian_invariants(bound: int) -> Result:
    count = 0
    for p in product(range(1, 3), repeat=3):
        for q, r, u, t in product(range(1, bound + 1), repeat=4):
            if q == r or u == t or gcd(q, r) != 1 or gcd(u, t) != 1:
                continue
            try:
                fd = family_diagram(Fig15(*p, q, r, u, t))
            except RRError:
                continue
            pair = meridian_candidates(fd)
            count += 1
            if len(pair.m1) + len(pair.m2) > len(fd.r):
                return "meridian invariants", False, f"length at {fd.params}"
            if abelianize(pair.m1) + abelianize(pair.m2) != abelianize(fd.r):
                return "meridian invariants", False, f"homology at {fd.params}"
    return "meridian invariants", True, f"{count} instances"


def check_automorphism_oracle() -> Result:
    for s in range(2, 11):
        phi = FreeAutomorphism([LeftMultiply(A, -s)])
        for u in range(1, s):
            if gcd(s, u) != 1:
                continue
            for a1 in range(1, 6):
                m1, want = seifert_meridian(s, u, a1)
                if apply_automorphism(m1, phi) != want:
                    return "automorphism oracle", False, f"(s,u,a1)=({s},{u},{a1})"
    return "automorphism oracle", True, ""


def check_fig9_census(bound: int) -> Result:
    count = 0
    for row in census(bound, "fig9"):
        count += 1
        if not row.knot_class.startswith("NotEmbeddable"):
            return "fig9 exclusion census", False, f"embeddable row {row.params}"
    return "fig9 exclusion census", True, f"{count} rows"


def check_eq3(bound: int) -> Result:
    sols = eq3_solutions(bound)
    if sols:
        return "u=1 equation insoluble", False, f"solution {sols[0]}"
    for b, c, j, m, s in product(range(1, bound + 1), range(1, bound + 1), range(1, bound + 1), range(2, bound + 1), range(2, bound + 1)):
        if not eq3_inequalities_hold(b, c, j, m, s):
            return "u=1 equation insoluble", False, f"inequality fails at {(b, c, j, m, s)}"
    return "u=1 equation insoluble", True, ""


def check_fig1b_census(bound: int) -> Result:
    certs = 0
    for row in census(bound, "fig1b"):
        if row.condition is not None:
            certs += 1
    return "fig1b certificates", True, f"{certs} certificates"


def check_culling() -> Result:
    culled = Fig15(1, 3, 1, 3, 2, 3, 2)
    kept = Fig15(1, 1, 1, 3, 2, 3, 2)
    verdicts = []
    for p in (culled, kept):
        pair = meridian_candidates(family_diagram(p))
        verdicts.append(type(cull_meridian(p, min(pair.m1, pair.m2, key=len))).__name__)
    ok = verdicts == ["Fail", "Pass"]
    return "culling", ok, "" if ok else f"got {verdicts}"


def check_cable_tunnels(depth: int) -> Result:
    lengths = []
    for p in converse_pair(2, 3, 2, 1):
        res = minimal_length(family_diagram(p).r, depth)
        if not res.exhausted:
            return "cable tunnel words", False, f"search not exhausted for {p}"
        lengths.append(res.length)
    return "cable tunnel words", lengths[0] != lengths[1], f"minimal lengths {lengths}"


def run_checks(bound: int, depth: int) -> list[Result]:
    checks: list[Callable[[], Result]] = [
        check_fig8,
        lambda: check_fig15_words(bound),
        lambda: check_fig15_closed_forms(bound),
        lambda: check_meridian_invariants(min(bound, 5)),
        check_automorphism_oracle,
        lambda: check_fig9_census(min(bound, 4)),
        lambda: check_eq3(min(bound, 12)),
        lambda: check_fig1b_census(bound),
        check_culling,
        lambda: check_cable_tunnels(depth),
    ]
    out = []
    for check in checks:
        try:
            out.append(check())
        except RRError as exc:
            out.append((getattr(check, "__name__", "check"), False, str(exc)))
    return out
