"""R-R diagrams: handles with bands of connections joined by annulus chords.

Geometry conventions
--------------------
Each handle is a disk whose boundary (the belt) carries the two ends of
every band.  With bands b0, b1, b2 the ends sit around the belt in the
order b0+, b1+, b2+, b0-, b1-, b2-.  The connections of one band are
parallel arcs, so the k-th point of one end (counted along the belt) is
joined to the k-th point from the far side of the other end.  Crossing a
band from its - end to its + end reads X^label, the reverse reads
X^-label.

The annulus between the two belts is cut open along a fixed arc, which
turns it into a disk whose boundary reads the A-belt points followed by
the B-belt points.  Chords are stored with winding number zero relative
to that cut, so realisability of the chords is the usual non-crossing
condition for a matching on a circle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import gcd
from typing import NamedTuple, Sequence

from .errors import InvalidParams, OpenStrand, UnsupportedShape
from .words import (
    A,
    B,
    CyclicWord,
    FreeAutomorphism,
    LeftMultiply,
    RightMultiply,
    apply_automorphism,
    cyclic_syllables,
    from_syllables,
    power,
    unoriented_canonical,
)


class Slot(NamedTuple):
    handle: str
    band: int
    end: int  # +1 or -1

    def __str__(self) -> str:
        return f"{self.handle}{self.band}{'+' if self.end > 0 else '-'}"

    @classmethod
    def parse(cls, text: str) -> "Slot":
        text = text.strip()
        if len(text) < 3 or text[0] not in "AB" or text[-1] not in "+-":
            raise InvalidParams(f"bad slot reference {text!r}")
        try:
            band = int(text[1:-1])
        except ValueError:
            raise InvalidParams(f"bad slot reference {text!r}") from None
        return cls(text[0], band, 1 if text[-1] == "+" else -1)


@dataclass(frozen=True)
class Band:
    label: int
    weight: int


@dataclass(frozen=True)
class Handle:
    name: str
    bands: tuple[Band, ...] = ()

    def slots(self) -> list[Slot]:
        k = len(self.bands)
        return [Slot(self.name, i, 1) for i in range(k)] + [Slot(self.name, i, -1) for i in range(k)]


class Chord(NamedTuple):
    start: Slot
    end: Slot
    weight: int


@dataclass(frozen=True)
class RRDiagram:
    handle_a: Handle
    handle_b: Handle
    chords: tuple[Chord, ...]

    def handle(self, name: str) -> Handle:
        return self.handle_a if name == "A" else self.handle_b

    def band(self, slot: Slot) -> Band:
        return self.handle(slot.handle).bands[slot.band]

    def slots(self) -> list[Slot]:
        return self.handle_a.slots() + self.handle_b.slots()


# ---------------------------------------------------------------------------
# validation


def _label_violations(h: Handle) -> list[str]:
    out = []
    if h.name not in ("A", "B"):
        out.append(f"handle {h.name!r}: name must be A or B")
    if len(h.bands) > 3:
        out.append(f"handle {h.name}: {len(h.bands)} bands, at most 3 allowed")
    for i, band in enumerate(h.bands):
        if band.weight < 1:
            out.append(f"handle {h.name} band {i}: weight {band.weight} < 1")
    labels = [band.label for band in h.bands]
    nonzero = [x for x in labels if x != 0]
    if labels and not nonzero:
        out.append(f"handle {h.name}: all band labels are zero")
    if len(nonzero) == 2 and gcd(*nonzero) != 1:
        out.append(f"handle {h.name}: labels {nonzero} have gcd {gcd(*nonzero)} != 1")
    if len(nonzero) == 3:
        ok = False
        for x, y, z in permutations(nonzero):
            if abs(z) in (abs(x + y), abs(x - y)) and gcd(x, y) == 1:
                ok = True
        if not ok:
            out.append(
                f"handle {h.name}: labels {nonzero} violate t = s + u with gcd(s, u) = 1"
            )
    return out


def validate(d: RRDiagram) -> list[str]:
    """Return the list of violated diagram rules (empty when valid)."""
    out = _label_violations(d.handle_a) + _label_violations(d.handle_b)
    if out:
        return out
    known = set(d.slots())
    totals = {slot: 0 for slot in known}
    for chord in d.chords:
        for slot in (chord.start, chord.end):
            if slot not in known:
                out.append(f"chord {chord.start}-{chord.end}: unknown slot {slot}")
        if chord.weight < 1:
            out.append(f"chord {chord.start}-{chord.end}: weight {chord.weight} < 1")
        if chord.start == chord.end:
            out.append(f"chord {chord.start}-{chord.end}: joins a slot to itself")
        if chord.start in totals:
            totals[chord.start] += chord.weight
        if chord.end in totals:
            totals[chord.end] += chord.weight
    if out:
        return out
    for slot in sorted(known, key=_slot_key(d)):
        want = d.band(slot).weight
        if totals[slot] != want:
            out.append(f"slot {slot}: chord weight {totals[slot]} != band weight {want}")
    if out:
        return out
    matching = _point_matching(d)
    crossing = _first_crossing(matching)
    if crossing is not None:
        out.append(f"chords cross at annulus points {crossing}")
    return out


def _slot_key(d: RRDiagram):
    order = {slot: i for i, slot in enumerate(d.slots())}
    return lambda slot: order[slot]


# ---------------------------------------------------------------------------
# point level structure


def _point_layout(d: RRDiagram) -> tuple[dict[Slot, list[int]], int]:
    """Circle positions of the points of every slot."""
    points: dict[Slot, list[int]] = {}
    pos = 0
    for slot in d.slots():
        w = d.band(slot).weight
        points[slot] = list(range(pos, pos + w))
        pos += w
    return points, pos


def _point_matching(d: RRDiagram) -> list[int]:
    points, total = _point_layout(d)
    order = {slot: i for i, slot in enumerate(d.slots())}
    nslots = len(order)
    incident: dict[Slot, list[tuple[int, int, Slot]]] = {slot: [] for slot in order}
    for idx, chord in enumerate(d.chords):
        incident[chord.start].append((idx, chord.weight, chord.end))
        incident[chord.end].append((idx, chord.weight, chord.start))
    # within a slot, chords reaching farther forward around the circle
    # take the earlier points; this is the only nesting-compatible order
    alloc: dict[tuple[int, Slot], list[int]] = {}
    for slot, items in incident.items():
        here = order[slot]
        items.sort(key=lambda it: (-((order[it[2]] - here) % nslots), it[0]))
        cursor = 0
        for idx, weight, _ in items:
            alloc[(idx, slot)] = points[slot][cursor : cursor + weight]
            cursor += weight
    partner = [-1] * total
    for idx, chord in enumerate(d.chords):
        xs = alloc[(idx, chord.start)]
        ys = alloc[(idx, chord.end)]
        for x, y in zip(xs, reversed(ys)):
            partner[x] = y
            partner[y] = x
    return partner


def _first_crossing(partner: Sequence[int]) -> tuple[int, int] | None:
    stack: list[int] = []
    for p, q in enumerate(partner):
        if q < 0:
            continue
        if q > p:
            stack.append(p)
        elif not stack or stack[-1] != q:
            return (q, p)
        else:
            stack.pop()
    return None


class Strand(NamedTuple):
    """One closed component: its word and the band crossings it makes."""

    word: tuple[int, ...]
    crossings: tuple[tuple[Slot, int], ...]  # (entry slot, point index in slot)


def walk_strands(d: RRDiagram) -> list[Strand]:
    """Follow every strand through bands and chords until it closes."""
    points, total = _point_layout(d)
    partner = _point_matching(d)
    owner: dict[int, tuple[Slot, int]] = {}
    for slot, pts in points.items():
        for k, p in enumerate(pts):
            owner[p] = (slot, k)
    visited = [False] * total
    strands = []
    for start in range(total):
        if visited[start]:
            continue
        letters: list[int] = []
        crossings = []
        p = start
        while True:
            if visited[p]:
                raise OpenStrand(f"strand through point {p} revisits a point before closing")
            slot, k = owner[p]
            band = d.band(slot)
            other = Slot(slot.handle, slot.band, -slot.end)
            q = points[other][band.weight - 1 - k]
            visited[p] = visited[q] = True
            gen = A if slot.handle == "A" else B
            # entering at the - end crosses the band positively
            letters.extend(power(gen, band.label if slot.end < 0 else -band.label))
            crossings.append((slot, k))
            nxt = partner[q]
            if nxt < 0:
                raise OpenStrand(f"slot {other} point {band.weight - 1 - k} has no chord")
            if nxt == start:
                break
            p = nxt
        strands.append(Strand(tuple(letters), tuple(crossings)))
    return strands


def extract_curves(d: RRDiagram) -> list[CyclicWord]:
    """Words of all closed components, canonical and sorted."""
    return sorted(unoriented_canonical(s.word) for s in walk_strands(d))


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class Fig1a:
    s: int


@dataclass(frozen=True)
class Fig1b:
    a: int
    b: int
    m: int
    n: int
    s: int


@dataclass(frozen=True)
class Fig9:
    a: int
    b: int
    c: int
    m: int
    n: int
    s: int


@dataclass(frozen=True)
class Fig15:
    a: int
    b: int
    c: int
    q: int
    r: int
    u: int
    t: int

    @property
    def p_diff(self) -> int:
        return self.q - self.r

    @property
    def s_diff(self) -> int:
        return self.t - self.u


FamilyParams = Fig1a | Fig1b | Fig9 | Fig15
FAMILIES = {"fig1a": Fig1a, "fig1b": Fig1b, "fig9": Fig9, "fig15": Fig15}


def family_name(p: FamilyParams) -> str:
    return {Fig1a: "fig1a", Fig1b: "fig1b", Fig9: "fig9", Fig15: "fig15"}[type(p)]


def check_params(p: FamilyParams) -> None:
    """Raise InvalidParams naming the first violated family constraint."""
    if isinstance(p, Fig1a):
        if abs(p.s) < 2:
            raise InvalidParams("fig1a: |s| > 1 required")
    elif isinstance(p, Fig1b):
        if p.a < 0 or p.b < 0 or p.a + p.b == 0:
            raise InvalidParams("fig1b: a, b >= 0 and a + b > 0 required")
        if gcd(p.a, p.b) != 1:
            raise InvalidParams("fig1b: gcd(a, b) = 1 required")
        if p.m < 1 or p.n < 1:
            raise InvalidParams("fig1b: m, n > 0 required")
        if gcd(p.m, p.n) != 1:
            raise InvalidParams("fig1b: gcd(m, n) = 1 required")
        if p.s < 2:
            raise InvalidParams("fig1b: s > 1 required")
    elif isinstance(p, Fig9):
        if min(p.a, p.b, p.c) < 0 or p.a + p.b + p.c == 0:
            raise InvalidParams("fig9: a, b, c >= 0 with a + b + c > 0 required")
        if gcd(p.m, p.n) != 1:
            raise InvalidParams("fig9: gcd(m, n) = 1 required")
        if abs(p.s) < 2:
            raise InvalidParams("fig9: |s| > 1 required")
    elif isinstance(p, Fig15):
        if min(p.a, p.b, p.c, p.q, p.r, p.u, p.t) < 1:
            raise InvalidParams("fig15: a, b, c, q, r, u, t > 0 required")
        if gcd(p.q, p.r) != 1 or gcd(p.u, p.t) != 1:
            raise InvalidParams("fig15: gcd(q, r) = gcd(u, t) = 1 required")
    else:
        raise InvalidParams(f"unknown family {p!r}")


def _bands(pairs) -> tuple[tuple[Band, ...], list[int]]:
    """Drop weight-zero bands; also return the kept original indexes."""
    kept = [(i, Band(label, w)) for i, (label, w) in enumerate(pairs) if w > 0]
    return tuple(b for _, b in kept), [i for i, _ in kept]


def one_band_diagram(a_bands: Sequence[tuple[int, int]], s: int) -> RRDiagram:
    """A-handle with the given (label, weight) bands; B-handle one band of label s.

    Every strand leaving an A-band runs to the B-band and back, so the
    curve reads as a product of syllables A^label B^s.
    """
    bands, _ = _bands(a_bands)
    total = sum(b.weight for b in bands)
    chords = []
    for i, band in enumerate(bands):
        chords.append(Chord(Slot("A", i, 1), Slot("B", 0, -1), band.weight))
    for i, band in enumerate(bands):
        chords.append(Chord(Slot("B", 0, 1), Slot("A", i, -1), band.weight))
    return RRDiagram(Handle("A", bands), Handle("B", (Band(s, total),)), tuple(chords))


def fig15_diagram(p: Fig15) -> RRDiagram:
    """Two bands per handle; bundle weights a (r to u), b (q to u), c (q to t)."""
    ha = Handle("A", (Band(p.r, p.a), Band(p.q, p.b + p.c)))
    hb = Handle("B", (Band(p.t, p.c), Band(p.u, p.a + p.b)))
    chords = (
        Chord(Slot("A", 0, 1), Slot("B", 1, -1), p.a),
        Chord(Slot("A", 1, 1), Slot("B", 1, -1), p.b),
        Chord(Slot("A", 1, 1), Slot("B", 0, -1), p.c),
        Chord(Slot("B", 1, 1), Slot("A", 0, -1), p.a),
        Chord(Slot("B", 1, 1), Slot("A", 1, -1), p.b),
        Chord(Slot("B", 0, 1), Slot("A", 1, -1), p.c),
    )
    return RRDiagram(ha, hb, chords)


@dataclass(frozen=True)
class FamilyDiagram:
    """A family diagram with its distinguished curves.

    ``curves`` maps names to words: R always, beta (the proper power
    curve B^s) where the family has one, and M for fig1b when a value of
    the hidden label u is supplied.
    """

    params: FamilyParams
    diagram: RRDiagram
    curves: dict = field(default_factory=dict)
    u: int | None = None

    @property
    def r(self) -> CyclicWord:
        return self.curves["R"]


def family_diagram(p: FamilyParams, u: int | None = None) -> FamilyDiagram:
    check_params(p)
    curves: dict[str, CyclicWord] = {}
    if isinstance(p, Fig1a):
        d = RRDiagram(
            Handle("A", (Band(1, 1),)),
            Handle("B", ()),
            (Chord(Slot("A", 0, 1), Slot("A", 0, -1), 1),),
        )
        curves["beta"] = unoriented_canonical(power(B, p.s))
    elif isinstance(p, Fig1b):
        d = one_band_diagram([(p.n, p.a), (p.n + p.m, p.b)], p.s)
        curves["beta"] = unoriented_canonical(power(B, p.s))
        if u is not None:
            if not 0 < u < p.s or gcd(p.s, u) != 1:
                raise InvalidParams("fig1b: 0 < u < s with gcd(s, u) = 1 required")
            curves["M"] = unoriented_canonical(power(A, p.m) + power(B, u))
    elif isinstance(p, Fig9):
        d = one_band_diagram([(p.n, p.a), (p.m + p.n, p.b), (p.m, p.c)], p.s)
        curves["beta"] = unoriented_canonical(power(B, p.s))
    else:
        d = fig15_diagram(p)
    problems = validate(d)
    if problems:
        raise InvalidParams(f"{family_name(p)}: diagram invalid: {problems[0]}")
    components = extract_curves(d)
    if len(components) != 1:
        raise InvalidParams(
            f"{family_name(p)}: parameters give {len(components)} components, not one curve"
        )
    curves["R"] = components[0]
    return FamilyDiagram(p, d, curves, u)


# ---------------------------------------------------------------------------
# Heegaard graph

VERTICES = ("A+", "A-", "B+", "B-")


def _exit_vertex(letter: int) -> str:
    name = "A" if abs(letter) == A else "B"
    return name + ("+" if letter > 0 else "-")


def _entry_vertex(letter: int) -> str:
    name = "A" if abs(letter) == A else "B"
    return name + ("-" if letter > 0 else "+")


@dataclass(frozen=True)
class HeegaardGraph:
    """Weighted multigraph on the fat vertices A+, A-, B+, B-.

    ``edges`` maps an unordered vertex pair (sorted tuple) to its weight;
    ``walks`` keeps the edge sequence of every curve.
    """

    edges: dict
    walks: tuple

    @property
    def complexity(self) -> int:
        return sum(self.edges.values())

    def weight(self, u: str, v: str) -> int:
        return self.edges.get(tuple(sorted((u, v))), 0)

    def degree(self, v: str) -> int:
        return sum(w for pair, w in self.edges.items() if v in pair) + self.edges.get((v, v), 0)


def heegaard_graph(curves: Sequence[CyclicWord]) -> HeegaardGraph:
    edges: dict[tuple[str, str], int] = {}
    walks = []
    for curve in curves:
        letters = curve.letters
        walk = []
        for i, x in enumerate(letters):
            y = letters[(i + 1) % len(letters)]
            pair = tuple(sorted((_exit_vertex(x), _entry_vertex(y))))
            edges[pair] = edges.get(pair, 0) + 1
            walk.append(pair)
        walks.append(tuple(walk))
    return HeegaardGraph(dict(sorted(edges.items())), tuple(walks))


class GraphPredicates(NamedTuple):
    connected: bool
    cut_vertex: bool
    positive: bool
    graph_type: str


def _components(vertices: set[str], edges) -> int:
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for (u, v), w in edges.items():
        if w > 0 and u in parent and v in parent:
            parent[find(u)] = find(v)
    return len({find(v) for v in vertices})


def graph_predicates(g: HeegaardGraph, curves: Sequence[CyclicWord] | None = None) -> GraphPredicates:
    """Connectivity, cut-vertex, positivity and the three-type pattern.

    Positivity is exponent coherence of the curve words; when ``curves``
    is not given it is read off the walks (an edge A+A- or B+B- is
    coherent, and mixed edges of both kinds A+B- and A+B+ cannot occur
    together in a positive diagram).
    """
    vertices = set(VERTICES)
    connected = _components(vertices, g.edges) == 1
    cut = False
    if connected:
        for v in VERTICES:
            rest = vertices - {v}
            sub = {pair: w for pair, w in g.edges.items() if v not in pair}
            if _components(rest, sub) > 1:
                cut = True
                break
    if curves is not None:
        positive = all(len(c.exponent_signs(A)) <= 1 and len(c.exponent_signs(B)) <= 1 for c in curves)
    else:
        same = g.weight("A+", "B+") + g.weight("A-", "B-")
        cross = g.weight("A+", "B-") + g.weight("A-", "B+")
        loops = sum(w for (u, v), w in g.edges.items() if u == v)
        positive = loops == 0 and (same == 0 or cross == 0)
    same = g.weight("A+", "B+") > 0 or g.weight("A-", "B-") > 0
    cross = g.weight("A+", "B-") > 0 or g.weight("A-", "B+") > 0
    if not connected or cut:
        kind = "c"
    elif same and cross:
        kind = "b"
    else:
        kind = "a"
    return GraphPredicates(connected, cut, positive, kind)


def curve_predicates(curves: Sequence[CyclicWord]) -> GraphPredicates:
    return graph_predicates(heegaard_graph(curves), curves)


# ---------------------------------------------------------------------------
# changes of cutting disks


def one_band_shape(word: CyclicWord) -> RRDiagram | None:
    """Re-embed a word of the form prod A^e_i B^f (f fixed) as a diagram.

    Tries every band order of the A-handle and both roles of the
    generators; returns the first diagram whose strand walk gives back
    exactly this word, or None.
    """
    for swap in (False, True):
        letters = word.letters
        if swap:
            letters = tuple((B if abs(x) == A else A) * (1 if x > 0 else -1) for x in letters)
        runs = cyclic_syllables(letters)
        if len(runs) < 2 or len(runs) % 2:
            continue
        b_exps = {e for g, e in runs if g == B}
        if len(b_exps) != 1:
            continue
        (f,) = b_exps
        counts: dict[int, int] = {}
        for g, e in runs:
            if g == A:
                counts[e] = counts.get(e, 0) + 1
        if len(counts) > 3:
            continue
        for order in permutations(sorted(counts)):
            d = one_band_diagram([(e, counts[e]) for e in order], f)
            if validate(d):
                continue
            got = extract_curves(d)
            target = unoriented_canonical(letters)
            if got == [target]:
                return _swap_handles(d) if swap else d
    return None


def _swap_handles(d: RRDiagram) -> RRDiagram:
    def flip(slot: Slot) -> Slot:
        return Slot("B" if slot.handle == "A" else "A", slot.band, slot.end)

    ha = Handle("A", d.handle_b.bands)
    hb = Handle("B", d.handle_a.bands)
    chords = tuple(Chord(flip(c.start), flip(c.end), c.weight) for c in d.chords)
    # the cut disk lists A points first, so swapping the handles rotates
    # the circle, which preserves non-crossing
    return RRDiagram(ha, hb, chords)


def change_cutting_disks(d: RRDiagram, phi: FreeAutomorphism) -> RRDiagram:
    """Diagram of the image curves after the change of cutting disks phi.

    Only single-curve images that re-embed in the one-band shape are
    supported; anything else raises UnsupportedShape.
    """
    if not phi.moves:
        return d
    curves = extract_curves(d)
    images = [apply_automorphism(c, phi) for c in curves]
    if len(images) != 1:
        raise UnsupportedShape("only single-curve diagrams can be re-embedded")
    image = images[0]
    out = one_band_shape(image)
    if out is None:
        raise UnsupportedShape(f"image {image} does not fit a one-band diagram shape")
    return out


def normalizing_automorphism(p: Fig9) -> FreeAutomorphism:
    """Change of cutting disks that removes the cut-vertex of a fig9 curve.

    (m, n) = (1, 1) uses A -> A B^-s; n = 0 uses A -> A B^-(rho+1)s with
    rho = floor(a / (b + c)), after rejecting the proper-power case where
    b + c divides a.
    """
    check_params(p)
    if (p.m, p.n) in ((1, 1), (-1, -1)):
        return FreeAutomorphism([RightMultiply(A, -p.s if p.m > 0 else p.s)])
    if p.n == 0 or p.m == 0:
        other = p.c if p.n == 0 else p.a
        zero_weight = p.a if p.n == 0 else p.c
        bc = p.b + other
        rho, rest = divmod(zero_weight, bc)
        if rest == 0:
            raise InvalidParams(
                f"fig9 with a zero label and {bc} | {zero_weight}: R is a proper power"
            )
        sign = 1 if (p.m + p.n) > 0 else -1
        return FreeAutomorphism([RightMultiply(A, -sign * (rho + 1) * p.s)])
    return FreeAutomorphism()
