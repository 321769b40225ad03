"""Embedding decisions, knot classes and the parameter census."""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, NamedTuple, Sequence

from .diagrams import (
    Fig1a,
    Fig1b,
    Fig9,
    Fig15,
    check_params,
    curve_predicates,
    extract_curves,
    family_diagram,
    one_band_diagram,
)
from .errors import InvalidParams, InvariantViolation, RRError, UnsupportedShape
from .homology import (
    LatticeVector,
    abelianize,
    determinant,
    is_homology_sphere_pair,
    perp_coefficient,
    two_handle_homology,
)
from .waves import meridian_candidates
from .words import A, B, CyclicWord, cyclic_canonical, power

# ---------------------------------------------------------------------------
# culling


@dataclass(frozen=True)
class Pass:
    note: str = ""


@dataclass(frozen=True)
class Fail:
    reason: str


@dataclass(frozen=True)
class CullingInstance:
    """A meridian candidate M1 of R, an auxiliary curve alpha, and the
    signed essential intersections of the wave based at M1 with alpha."""

    alpha: CyclicWord
    r: CyclicWord
    m1: CyclicWord
    wave1_alpha_intersections: tuple[int, ...]

    def __post_init__(self) -> None:
        if 2 * len(self.m1) > len(self.r):
            raise InvalidParams(f"culling needs 2|M1| <= |R|, got |M1|={len(self.m1)}, |R|={len(self.r)}")
        if any(x not in (1, -1) for x in self.wave1_alpha_intersections):
            raise InvalidParams("intersection signs must be +1 or -1")


def culling_obstruction(inst: CullingInstance) -> Pass | Fail:
    signs = inst.wave1_alpha_intersections
    if not signs:
        return Fail("the wave based at M1 misses alpha")
    if len(signs) == 1:
        return Fail("the wave based at M1 meets alpha exactly once")
    if len(signs) == 2 and signs[0] != signs[1]:
        return Fail("the wave based at M1 meets alpha twice with opposite signs")
    return Pass()


def seifert_alpha(p: Fig15) -> CyclicWord:
    """The Seifert curve A^(q-r) B^(t-u) carried alongside a fig15 curve."""
    return cyclic_canonical(power(A, p.p_diff) + power(B, p.s_diff))


def culling_instance(p: Fig15, m1: CyclicWord) -> CullingInstance | None:
    """Culling data for a meridian candidate of a fig15 curve with q > r, u > t.

    When M1 carries connections of both maximal labels (q in the A-handle,
    u in the B-handle) its diagram is connected without cut-vertex, and the
    horizontal wave at those connections crosses alpha once.  Otherwise no
    such wave is located and None is returned.
    """
    if not (p.q > p.r and p.u > p.t):
        raise UnsupportedShape("the culling configuration is set up for q > r and u > t")
    fd = family_diagram(p)
    labels = {(g, abs(e)) for g, e in m1.syllables()}
    if not ((A, p.q) in labels and (B, p.u) in labels):
        return None
    preds = curve_predicates([m1])
    if not preds.connected or preds.cut_vertex:
        raise InvariantViolation(f"M1 = {m1} has maximal labels but a cut-vertex diagram")
    return CullingInstance(seifert_alpha(p), fd.r, m1, (1,))


def cull_meridian(p: Fig15, m1: CyclicWord) -> Pass | Fail:
    inst = culling_instance(p, m1)
    if inst is None:
        return Pass("no wave at the maximal connections of M1; branch survives")
    return culling_obstruction(inst)


# ---------------------------------------------------------------------------
# knot classes


@dataclass(frozen=True)
class Unknot:
    def __str__(self) -> str:
        return "Unknot"


@dataclass(frozen=True)
class Torus:
    p: int
    q: int

    def __str__(self) -> str:
        return f"Torus({self.p},{self.q})"


@dataclass(frozen=True)
class CableOfTorus:
    """The (c1, c2) cable of the (p, q) torus knot; c1 = c2*p*q + delta."""

    cable: tuple[int, int]
    companion: tuple[int, int]
    delta: int

    def __str__(self) -> str:
        c1, c2 = self.cable
        p, q = self.companion
        return f"Cable({c1},{c2}) of Torus({p},{q})"


@dataclass(frozen=True)
class NotEmbeddable:
    reason: str

    def __str__(self) -> str:
        return f"NotEmbeddable({self.reason})"


@dataclass(frozen=True)
class Unknown:
    reason: str

    def __str__(self) -> str:
        return f"Unknown({self.reason})"


KnotClass = Unknot | Torus | CableOfTorus | NotEmbeddable | Unknown


def proper_power_partner_exists(k: KnotClass) -> bool:
    if isinstance(k, Unknown):
        raise InvalidParams("cannot decide for an Unknown class")
    return isinstance(k, (Unknot, Torus, CableOfTorus))


# ---------------------------------------------------------------------------
# fig1b embedding conditions


@dataclass(frozen=True)
class EmbedCert:
    condition: int
    u: int
    delta: int

    def __str__(self) -> str:
        return f"condition {self.condition}, u={self.u}, delta={self.delta:+d}"


def _normalized_fig1b(p: Fig1b) -> Fig1b:
    check_params(p)
    if (p.a, p.b) == (0, 1):
        # one band of label n + m: the same curve as a = 1, b = 0 with n' = n + m
        return Fig1b(1, 0, p.m, p.n + p.m, p.s)
    return p


def fig1b_homology(p: Fig1b) -> LatticeVector:
    """Class of R: every strand crosses B once, A-bands carry n and n + m."""
    k = p.a + p.b
    return LatticeVector(k * p.n + p.b * p.m, k * p.s)


def _certificate_condition(p: Fig1b) -> int:
    if (p.a, p.b) == (1, 0):
        return 1
    return 2 if p.m == 1 else 3


def embeds_in_s3(p: Fig1b) -> EmbedCert | None:
    q = _normalized_fig1b(p)
    if (q.a, q.b) == (1, 0) and q.n < 2:
        raise InvalidParams("fig1b with (a, b) = (1, 0) needs n > 1")
    r = fig1b_homology(q)
    condition = _certificate_condition(q)
    us = [1] if condition == 3 else range(1, q.s)
    for u in us:
        if gcd(q.s, u) != 1:
            continue
        delta = determinant(LatticeVector(q.m, u), r)
        if abs(delta) == 1:
            if condition == 3 and not q.n > q.m:
                raise InvariantViolation(f"condition 3 certificate with n <= m at {p}")
            return EmbedCert(condition, u, delta)
    return None


def classify_exterior(p: Fig1a | Fig1b) -> KnotClass:
    if isinstance(p, Fig1a):
        check_params(p)
        return Unknot()
    q = _normalized_fig1b(p)
    if (q.a, q.b) == (1, 0) and q.n == 1:
        # R = A B^s is primitive, so H[R] is a solid torus
        return Unknot()
    cert = embeds_in_s3(q)
    if cert is None:
        return NotEmbeddable("NoWaveCertificate")
    k = q.a + q.b
    if cert.condition == 1:
        return Torus(q.n, q.s)
    if cert.condition == 2:
        return Torus(k * q.n + q.b, q.s)
    c1 = perp_coefficient(LatticeVector(k * q.n + q.b * q.m, k), LatticeVector(0, 1))
    return CableOfTorus((c1, q.s), (k, q.m), c1 - q.s * k * q.m)


def converse_pair(p: int, q: int, s: int, delta: int) -> tuple[Fig1b, Fig1b]:
    """Two condition-3 tuples describing the (spq+delta, s) cable of Torus(p, q).

    The first has a + b = p and m = q, the second the roles swapped; in
    each the smallest admissible b is used.
    """

    def solve(k: int, m: int) -> Fig1b:
        target = s * m * k + delta
        for b in range(1, k):
            a = k - b
            n, rest = divmod(target - b * m, k)
            if rest == 0 and n > 1 and gcd(a, b) == 1 and gcd(m, n) == 1:
                return Fig1b(a, b, m, n, s)
        raise InvalidParams(f"no tuple with a + b = {k}, m = {m} realizes the cable")

    return solve(p, q), solve(q, p)


# ---------------------------------------------------------------------------
# fig9 exclusion


class ExclusionReason(enum.Enum):
    TORSION_MERIDIAN = "TorsionMeridian"
    NO_CUT_VERTEX_CULL = "NoCutVertexCull"
    SEIFERT_OVER_S2 = "SeifertOverS2"
    DIOPHANTINE_INSOLUBLE = "DiophantineInsoluble"


class Exclusion(NamedTuple):
    reason: ExclusionReason
    u: int | None = None
    fibers: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.fibers:
            return f"{self.reason.value}:{','.join(map(str, self.fibers))}"
        return self.reason.value


def eq3_residual(b: int, c: int, j: int, m: int, s: int) -> int:
    """Left side minus right side (without delta) of the u = 1 determinant condition."""
    return (j + 1) * s * ((m - 1) * (b + c) + b) - (j + m) * (b + c) - b


def eq3_solutions(bound: int) -> list[tuple[int, int, int, int, int, int]]:
    """All (b, c, j, m, s, delta) in the box with residual equal to delta = +-1.

    The residual is linear in s, so s is solved for directly.
    """
    out = []
    for b in range(1, bound + 1):
        for c in range(1, bound + 1):
            for j in range(1, bound + 1):
                for m in range(2, bound + 1):
                    slope = (j + 1) * ((m - 1) * (b + c) + b)
                    offset = (j + m) * (b + c) + b
                    for delta in (1, -1):
                        s, rest = divmod(offset + delta, slope)
                        if rest == 0 and 2 <= s <= bound:
                            out.append((b, c, j, m, s, delta))
    return out


def eq3_inequalities_hold(b: int, c: int, j: int, m: int, s: int) -> bool:
    """The two strict inequalities whose sum rules out the u = 1 equation."""
    return s * (j + 1) * (m - 1) * (b + c) > (j + m) * (b + c) and b * s * (j + 1) - b > 1


@lru_cache(maxsize=None)
def fig9_component_count(a: int, b: int, c: int) -> int:
    """Number of curves a fig9 diagram carries; labels do not affect it."""
    return len(extract_curves(one_band_diagram([(1, a), (3, b), (2, c)], 5)))


def _check_fig9(p: Fig9) -> None:
    check_params(p)
    if min(p.a, p.b, p.c) < 1:
        raise InvalidParams("fig9 exclusion needs a, b, c > 0")
    if p.m == 0 or p.n == 0:
        raise InvalidParams("fig9 exclusion needs m, n != 0")
    if abs(p.m) == 1 and abs(p.n) == 1:
        raise InvalidParams("fig9 exclusion needs (m, n) != (+-1, +-1)")
    if fig9_component_count(p.a, p.b, p.c) != 1:
        raise InvalidParams("fig9: weights give more than one curve")


class _CutVertexBranch(NamedTuple):
    j: int
    fiber_from_j: int
    third_fiber: int
    residual_args: tuple[int, int, int, int]  # (b, c, j, m) in the M1 normal form


def _cut_vertex_branch(a: int, b: int, c: int, m: int, n: int) -> _CutVertexBranch | None:
    """Data of the meridian that can carry a cut-vertex, if any.

    M1 can only have a cut-vertex when n = 1 and b + c divides a; M2 is
    the mirror case with a and c, m and n exchanged.
    """
    if n == 1 and a % (b + c) == 0 and gcd(b, c) == 1:
        j = a // (b + c)
        return _CutVertexBranch(j, j + 1, m * (b + c) - c, (b, c, j, m))
    if m == 1 and c % (b + a) == 0 and gcd(b, a) == 1:
        j = c // (b + a)
        return _CutVertexBranch(j, j + 1, n * (b + a) - a, (b, a, j, n))
    return None


def exclusion_cases(p: Fig9) -> list[Exclusion]:
    """Every branch of the exclusion argument for p, one per wave parameter u."""
    _check_fig9(p)
    if p.m * p.n < 0:
        if two_handle_homology(LatticeVector(0, p.s)).torsion_order <= 1:
            raise InvariantViolation(f"B^s has torsion-free homology at {p}")
        return [Exclusion(ExclusionReason.TORSION_MERIDIAN)]
    m, n, s = abs(p.m), abs(p.n), abs(p.s)
    branch = _cut_vertex_branch(p.a, p.b, p.c, m, n)
    if branch is None:
        return [Exclusion(ExclusionReason.NO_CUT_VERTEX_CULL)]
    out = []
    for u in range(1, s):
        if gcd(s, u) != 1:
            continue
        if u > 1:
            fibers = (u, branch.fiber_from_j, branch.third_fiber)
            if min(fibers) <= 1:
                raise InvariantViolation(f"fiber indexes {fibers} not all > 1 at {p}, u={u}")
            out.append(Exclusion(ExclusionReason.SEIFERT_OVER_S2, u, fibers))
        else:
            res = eq3_residual(*branch.residual_args, s)
            if abs(res) == 1:
                raise InvariantViolation(f"u = 1 determinant equation solvable at {p}")
            out.append(Exclusion(ExclusionReason.DIOPHANTINE_INSOLUBLE, 1))
    return out


def exclude_all_positive(p: Fig9, u: int | None = None) -> Exclusion:
    """The operative reason H[R] cannot embed in S^3.

    In the cut-vertex branch the reason depends on the wave parameter u,
    which must then be given.
    """
    cases = exclusion_cases(p)
    if cases[0].u is None:
        return cases[0]
    if u is None:
        raise InvalidParams("this branch depends on the wave parameter u; pass u")
    for case in cases:
        if case.u == u:
            return case
    raise InvalidParams(f"u must satisfy 0 < u < |s| and gcd(s, u) = 1, got {u}")


# ---------------------------------------------------------------------------
# census

CENSUS_FIELDS = (
    "family",
    "a",
    "b",
    "c",
    "m",
    "n",
    "s",
    "u",
    "delta",
    "condition",
    "knot_class",
    "cable_c1",
    "cable_c2",
    "comp_p",
    "comp_q",
    "m1",
    "m2",
)


@dataclass(frozen=True)
class CensusRow:
    family: str
    params: dict
    u: int | None = None
    delta: int | None = None
    condition: int | None = None
    knot_class: str = ""
    cable: tuple[int, int] | None = None
    companion: tuple[int, int] | None = None
    m1: str = ""
    m2: str = ""
    embeddable: bool = field(default=False, compare=False)

    def record(self) -> dict:
        """Flat mapping over CENSUS_FIELDS; None marks an inapplicable field."""
        cable = self.cable or (None, None)
        comp = self.companion or (None, None)
        return {
            "family": self.family,
            "a": self.params.get("a"),
            "b": self.params.get("b"),
            "c": self.params.get("c"),
            "m": self.params.get("m"),
            "n": self.params.get("n"),
            "s": self.params.get("s"),
            "u": self.u,
            "delta": self.delta,
            "condition": self.condition,
            "knot_class": self.knot_class,
            "cable_c1": cable[0],
            "cable_c2": cable[1],
            "comp_p": comp[0],
            "comp_q": comp[1],
            "m1": self.m1 or None,
            "m2": self.m2 or None,
        }


def fig1b_row(p: Fig1b) -> CensusRow:
    """Classify one tuple and re-check every invariant its certificate implies."""
    params = {"a": p.a, "b": p.b, "m": p.m, "n": p.n, "s": p.s}
    k = classify_exterior(p)
    cert = None if isinstance(k, Unknot) else embeds_in_s3(p)
    row = CensusRow("fig1b", params, knot_class=str(k), embeddable=proper_power_partner_exists(k))
    if cert is None:
        return row
    r = fig1b_homology(_normalized_fig1b(p))
    meridian = LatticeVector(p.m, cert.u)
    if determinant(meridian, r) != cert.delta or not is_homology_sphere_pair(r, meridian):
        raise InvariantViolation(f"certificate determinant mismatch at {p}")
    fd = family_diagram(p, cert.u)
    if abelianize(fd.r) != r:
        raise InvariantViolation(f"word of R disagrees with its class at {p}")
    try:
        pair = meridian_candidates(fd)
        m1, m2 = str(pair.m1), str(pair.m2)
        if abelianize(pair.m1) != meridian:
            raise InvariantViolation(f"wave meridian {pair.m1} is not A^m B^u at {p}")
    except UnsupportedShape:
        m1 = m2 = ""
    cable = companion = None
    if isinstance(k, CableOfTorus):
        cable, companion = k.cable, k.companion
        if gcd(*cable) != 1 or gcd(*companion) != 1:
            raise InvariantViolation(f"cable coordinates not coprime at {p}")
        c1, c2 = cable
        kk, m = companion
        if c1 != c2 * kk * m + k.delta or abs(k.delta) != 1:
            raise InvariantViolation(f"cable identity fails at {p}")
    elif isinstance(k, Torus) and gcd(k.p, k.q) != 1:
        raise InvariantViolation(f"torus coordinates not coprime at {p}")
    return CensusRow(
        "fig1b",
        params,
        cert.u,
        cert.delta,
        cert.condition,
        str(k),
        cable,
        companion,
        m1,
        m2,
        True,
    )


def fig1b_tuples(bound: int) -> Iterator[Fig1b]:
    """Tuples satisfying the family and embedding-lemma hypotheses, in order."""
    for a in range(0, bound + 1):
        for b in range(0, bound + 1):
            if a + b == 0 or gcd(a, b) != 1:
                continue
            for m in range(1, bound + 1):
                for n in range(1, bound + 1):
                    if gcd(m, n) != 1:
                        continue
                    if (a, b) == (1, 0) and n < 2:
                        continue
                    for s in range(2, bound + 1):
                        yield Fig1b(a, b, m, n, s)


def fig9_tuples(bound: int) -> Iterator[Fig9]:
    for a in range(1, bound + 1):
        for b in range(1, bound + 1):
            for c in range(1, bound + 1):
                if fig9_component_count(a, b, c) != 1:
                    continue
                for m in range(-bound, bound + 1):
                    for n in range(-bound, bound + 1):
                        if m == 0 or n == 0 or gcd(m, n) != 1 or (abs(m), abs(n)) == (1, 1):
                            continue
                        for s in range(-bound, bound + 1):
                            if abs(s) >= 2:
                                yield Fig9(a, b, c, m, n, s)


def fig9_rows(p: Fig9) -> list[CensusRow]:
    params = {"a": p.a, "b": p.b, "c": p.c, "m": p.m, "n": p.n, "s": p.s}
    return [
        CensusRow("fig9", params, u=case.u, knot_class=str(NotEmbeddable(str(case))))
        for case in exclusion_cases(p)
    ]


def census(bound: int, which: str) -> Iterator[CensusRow]:
    """Rows for every admissible tuple with parameters bounded by ``bound``.

    Row order is lexicographic in the parameters.  Any invariant failure
    raises InvariantViolation naming the tuple.
    """
    if bound < 1:
        return
    if which == "fig1b":
        for p in fig1b_tuples(bound):
            try:
                yield fig1b_row(p)
            except InvariantViolation:
                raise
            except RRError as exc:
                raise InvariantViolation(f"{p}: {exc}") from exc
    elif which == "fig9":
        for p in fig9_tuples(bound):
            yield from fig9_rows(p)
    else:
        raise InvalidParams(f"census supports fig1b and fig9, not {which!r}")


def _cell(value) -> str:
    return "" if value is None else str(value)


def rows_to_csv(rows: Iterable[CensusRow], out: io.TextIOBase, header: bool = True) -> None:
    writer = csv.writer(out, lineterminator="\n")
    if header:
        writer.writerow(CENSUS_FIELDS)
    for row in rows:
        rec = row.record()
        writer.writerow([_cell(rec[k]) for k in CENSUS_FIELDS])


def rows_to_jsonl(rows: Iterable[CensusRow], out: io.TextIOBase) -> None:
    for row in rows:
        out.write(json.dumps(row.record(), separators=(",", ":")) + "\n")

