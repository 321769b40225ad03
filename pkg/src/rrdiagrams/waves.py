"""Distinguished waves and the meridian pairs they produce.

A wave is recorded by where surgery cuts R.  A horizontal wave cuts R
once inside an A-run and once inside a B-run; a vertical wave removes two
consecutive A-crossings of opposite sign.  Surgery keeps the two arcs of
R between the cuts and closes each of them up, so the two new curves
always have abelianizations summing to that of R.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .diagrams import (
    Fig1b,
    Fig9,
    Fig15,
    FamilyDiagram,
    curve_predicates,
    walk_strands,
)
from .errors import InvalidParams, InvariantViolation, NoWaveGuarantee, UnsupportedShape
from .homology import abelianize
from .words import A, B, CyclicWord, cyclic_canonical, power


@dataclass(frozen=True)
class VerticalWave:
    """Arc of the boundary of the cutting disk of ``handle`` joining two
    crossings of opposite sign; ``positions`` index letters of the reading
    of R used for surgery."""

    handle: str
    positions: tuple[int, int]


@dataclass(frozen=True)
class HorizontalWave:
    """Cut positions (run index, letters of the run before the cut) in
    the A-run and the B-run of the positive reading of R."""

    a_attach: tuple[int, int]
    b_attach: tuple[int, int]


Wave = VerticalWave | HorizontalWave


class MeridianPair(NamedTuple):
    m1: CyclicWord
    m2: CyclicWord
    shorter: str  # "m1", "m2" or "tie"

    def candidates(self) -> list[CyclicWord]:
        if self.shorter == "tie":
            return [self.m1, self.m2]
        return [self.m1 if self.shorter == "m1" else self.m2]


class Reading(NamedTuple):
    """R as a linear sequence of syllables with band information.

    ``runs`` holds (generator, exponent); ``bands`` the (handle, band)
    traversed by each run; ``entry`` the point index at which the run
    enters its band, counted in that band's entry slot.
    """

    runs: tuple[tuple[int, int], ...]
    bands: tuple[tuple[str, int], ...]
    entry: tuple[int, ...]

    def letters(self) -> tuple[int, ...]:
        out: list[int] = []
        for gen, exp in self.runs:
            out.extend(power(gen, exp))
        return tuple(out)


def positive_reading(fd: FamilyDiagram) -> Reading:
    """Read R band by band, oriented so that most crossings are positive."""
    (strand,) = walk_strands(fd.diagram)
    d = fd.diagram
    runs, bands, entry = [], [], []
    for slot, k in strand.crossings:
        band = d.band(slot)
        gen = A if slot.handle == "A" else B
        runs.append((gen, band.label if slot.end < 0 else -band.label))
        bands.append((slot.handle, slot.band))
        entry.append(k if slot.end < 0 else band.weight - 1 - k)
    if sum(abs(e) for e in (x for _, x in runs) if e < 0) > sum(e for _, e in runs if e > 0):
        runs = [(g, -e) for g, e in reversed(runs)]
        bands.reverse()
        entry.reverse()
    # drop label-zero runs; their neighbours merge only in the word
    keep = [i for i, (_, e) in enumerate(runs) if e != 0]
    return Reading(
        tuple(runs[i] for i in keep), tuple(bands[i] for i in keep), tuple(entry[i] for i in keep)
    )


def _mixed_handle(r: CyclicWord) -> str | None:
    for gen, name in ((A, "A"), (B, "B")):
        if len(r.exponent_signs(gen)) > 1:
            return name
    return None


def locate_wave(fd: FamilyDiagram) -> Wave:
    """The distinguished wave of R in a family diagram."""
    r = fd.r
    preds = curve_predicates([r])
    if not preds.connected or preds.cut_vertex:
        raise NoWaveGuarantee(
            "Heegaard diagram of R is disconnected or has a cut-vertex; no wave is guaranteed"
        )
    reading = positive_reading(fd)
    if not preds.positive:
        handle = _mixed_handle(r)
        return _vertical(reading, handle)
    p = fd.params
    if isinstance(p, Fig15):
        return _horizontal_fig15(p, reading)
    if isinstance(p, Fig1b):
        if fd.u is None:
            raise InvalidParams("fig1b wave needs the hidden B-label u (0 < u < s)")
        return _horizontal_fig1b(p, fd.u, reading)
    raise UnsupportedShape(
        f"horizontal wave location is implemented for fig1b and fig15, not {type(p).__name__}"
    )


def _vertical(reading: Reading, handle: str) -> VerticalWave:
    gen = A if handle == "A" else B
    runs = reading.runs
    n = len(runs)
    offsets = []
    pos = 0
    for _, e in runs:
        offsets.append(pos)
        pos += abs(e)
    total = pos
    idx = [i for i, (g, _) in enumerate(runs) if g == gen]
    best = None
    for k, i in enumerate(idx):
        j = idx[(k + 1) % len(idx)]
        if (runs[i][1] > 0) == (runs[j][1] > 0):
            continue
        # prefer a pair separated by a single run of the other generator
        gap = (j - i) % n
        cand = (gap != 2, i, j)
        if best is None or cand < best:
            best = cand
    if best is None:
        raise NoWaveGuarantee(f"no opposite-sign crossings of D_{handle}")
    _, i, j = best
    last_of_i = offsets[i] + abs(runs[i][1]) - 1
    first_of_j = offsets[j]
    return VerticalWave(handle, (last_of_i % total, first_of_j % total))


def _pick(reading: Reading, band: tuple[str, int], next_band: tuple[str, int]) -> int:
    """Run of ``band`` followed by ``next_band``, outermost in its slot."""
    n = len(reading.runs)
    cands = [
        i
        for i in range(n)
        if reading.bands[i] == band and reading.bands[(i + 1) % n] == next_band
    ]
    if not cands:
        raise UnsupportedShape(f"no run of band {band} followed by band {next_band}")
    return min(cands, key=lambda i: (reading.entry[i], i))


def _horizontal_fig15(p: Fig15, reading: Reading) -> HorizontalWave:
    # bands: A0 = r, A1 = q; B0 = t, B1 = u
    a_band = ("A", 1) if p.q > p.r else ("A", 0)
    b_band = ("B", 1) if p.u > p.t else ("B", 0)
    ai = _pick(reading, a_band, ("B", 1))
    bi = _pick(reading, b_band, ("A", 1))
    a_cut = p.q - p.r if p.q > p.r else p.q
    b_cut = p.u - p.t if p.u > p.t else p.u
    return HorizontalWave((ai, a_cut), (bi, b_cut))


def _horizontal_fig1b(p: Fig1b, u: int, reading: Reading) -> HorizontalWave:
    n = len(reading.runs)
    if p.b > 0:
        a_band = ("A", 1 if p.a > 0 else 0)
        ai = _pick(reading, a_band, ("B", 0))
        a_cut = p.n
    else:
        if p.m >= p.n:
            raise UnsupportedShape("fig1b with b = 0 needs m < n to split the A-run")
        ai = _pick(reading, ("A", 0), ("B", 0))
        a_cut = p.n - p.m
    bi = (ai + 1) % n
    return HorizontalWave((ai, a_cut), (bi, u))


def wave_surgery(fd: FamilyDiagram, wave: Wave) -> MeridianPair:
    reading = positive_reading(fd)
    letters = reading.letters()
    total = len(letters)
    if isinstance(wave, VerticalWave):
        i, j = wave.positions
        # drop the two crossings joined by the wave, keep the arcs between
        m1 = [letters[(i + 1 + k) % total] for k in range((j - i - 1) % total)]
        m2 = [letters[(j + 1 + k) % total] for k in range((i - j - 1) % total)]
    else:
        starts = []
        pos = 0
        for _, e in reading.runs:
            starts.append(pos)
            pos += abs(e)
        (ai, acut), (bi, bcut) = wave.a_attach, wave.b_attach
        for run, cut in ((ai, acut), (bi, bcut)):
            if not 0 < cut < abs(reading.runs[run][1]):
                raise UnsupportedShape(f"cut {cut} does not split run {reading.runs[run]}")
        x = starts[ai] + acut
        y = starts[bi] + bcut
        m1 = [letters[(x + k) % total] for k in range((y - x) % total)]
        m2 = [letters[(y + k) % total] for k in range((x - y) % total)]
    pair = _pair(cyclic_canonical(m1), cyclic_canonical(m2))
    # the reading may run against the canonical orientation of R
    check_pair(cyclic_canonical(letters), pair)
    return pair


def _pair(m1: CyclicWord, m2: CyclicWord) -> MeridianPair:
    if len(m1) < len(m2):
        shorter = "m1"
    elif len(m2) < len(m1):
        shorter = "m2"
    else:
        shorter = "tie"
    return MeridianPair(m1, m2, shorter)


def check_pair(r: CyclicWord, pair: MeridianPair) -> None:
    if len(pair.m1) + len(pair.m2) > len(r):
        raise InvariantViolation(f"|M1| + |M2| > |R| for R = {r}")
    if abelianize(pair.m1) + abelianize(pair.m2) != abelianize(r):
        raise InvariantViolation(f"[M1] + [M2] != [R] for R = {r}")


def meridian_candidates(fd: FamilyDiagram) -> MeridianPair:
    return wave_surgery(fd, locate_wave(fd))


def fig15_closed_form(p: Fig15) -> tuple[CyclicWord, CyclicWord]:
    """Meridian pair for unit weights, by direct substitution.

    Used as an independent oracle; only defined for a = b = c = 1.
    """
    if (p.a, p.b, p.c) != (1, 1, 1):
        raise UnsupportedShape("closed forms are only known for a = b = c = 1")
    q, r, u, t = p.q, p.r, p.u, p.t
    pd, sd = p.p_diff, p.s_diff

    def word(*syl):
        out = []
        for gen, e in syl:
            out.extend(power(gen, e))
        return cyclic_canonical(out)

    if q > r and u > t:
        return word((A, r), (B, -sd), (A, r), (B, u)), word((B, t), (A, pd), (B, t), (A, q))
    if q > r and u < t:
        return (
            word((A, r), (B, u), (A, q), (B, u), (A, r), (B, u)),
            word((B, sd), (A, pd)),
        )
    if q < r and u > t:
        return (
            word((A, -pd), (B, -sd)),
            word((B, t), (A, q), (B, u), (A, q), (B, t), (A, q)),
        )
    if q < r and u < t:
        return word((A, -pd), (B, u), (A, q), (B, u)), word((B, sd), (A, q), (B, u), (A, q))
    raise UnsupportedShape("closed forms need q != r and u != t")


def fig9_vertical_meridian(p: Fig9) -> CyclicWord:
    """Vertical-wave meridian of a fig9 curve with mn < 0."""
    if p.m * p.n >= 0:
        raise InvalidParams("vertical wave needs mn < 0")
    from .diagrams import family_diagram

    pair = meridian_candidates(family_diagram(p))
    return pair.m1
