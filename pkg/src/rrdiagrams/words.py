"""Words, cyclic words and automorphisms of the free group F(A, B).

Letters are stored as nonzero integers: 1 is A, -1 is its inverse a,
2 is B and -2 is b.  A word is a tuple of such integers.  The fixed
letter order used for canonical rotations is A < a < B < b.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, NamedTuple, Sequence

from .errors import InvalidParams, WordIsTrivial

A, B = 1, 2
GENERATORS = (A, B)
_NAMES = {1: "A", -1: "a", 2: "B", -2: "b"}
_CODES = {v: k for k, v in _NAMES.items()}
# rank of each letter in the order A < a < B < b
_RANK = {1: 0, -1: 1, 2: 2, -2: 3}


class Letter(NamedTuple):
    generator: str
    sign: int

    @property
    def code(self) -> int:
        return _CODES[self.generator] * self.sign

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(_NAMES[abs(code)], 1 if code > 0 else -1)


Word = tuple


def generator_code(name: str) -> int:
    try:
        return {"A": A, "B": B}[name]
    except KeyError:
        raise InvalidParams(f"unknown generator {name!r}") from None


def power(gen: int, exponent: int) -> Word:
    """The word gen^exponent as a tuple of letter codes."""
    return (gen if exponent > 0 else -gen,) * abs(exponent)


def from_syllables(syllables: Iterable[tuple[int, int]]) -> Word:
    out: list[int] = []
    for gen, exp in syllables:
        out.extend(power(gen, exp))
    return reduce(out)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def reduce(w: Iterable[int]) -> Word:
    """Freely reduce a word (cancel adjacent letter/inverse pairs)."""
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclically_reduce(w: Iterable[int]) -> Word:
    w = reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i : j + 1]


def least_rotation(w: Sequence[int]) -> Word:
    """Lexicographically least rotation under A < a < B < b."""
    n = len(w)
    if n == 0:
        return ()
    ranks = [_RANK[x] for x in w]
    doubled = ranks + ranks
    best = 0
    for i in range(1, n):
        if doubled[i : i + n] < doubled[best : best + n]:
            best = i
    return tuple(w[best:]) + tuple(w[:best])


def syllables(w: Sequence[int]) -> list[tuple[int, int]]:
    """Run-length form [(generator, exponent), ...] of a linear word."""
    out: list[tuple[int, int]] = []
    for x in w:
        gen, sign = abs(x), (1 if x > 0 else -1)
        if out and out[-1][0] == gen and (out[-1][1] > 0) == (sign > 0):
            out[-1] = (gen, out[-1][1] + sign)
        else:
            out.append((gen, sign))
    return out


def cyclic_syllables(w: Sequence[int]) -> list[tuple[int, int]]:
    """Run-length form of a cyclic word, merging the run across the wrap."""
    runs = syllables(w)
    if len(runs) > 1 and runs[0][0] == runs[-1][0] and (runs[0][1] > 0) == (runs[-1][1] > 0):
        gen, exp = runs.pop()
        runs[0] = (gen, runs[0][1] + exp)
    return runs


def format_word(w: Sequence[int]) -> str:
    """Render as e.g. 'A^3 B^2 A^2 B^2', 'AB' or 'A^-2 b'."""
    if not w:
        return "1"
    tokens: list[str] = []
    bare = False
    for gen, exp in syllables(w):
        name = _NAMES[gen]
        if abs(exp) == 1:
            letter = name if exp > 0 else name.lower()
            if bare:
                tokens[-1] += letter
            else:
                tokens.append(letter)
            bare = True
        else:
            tokens.append(f"{name}^{exp}")
            bare = False
    return " ".join(tokens)


_TOKEN = re.compile(r"([AaBb])(?:\^([+-]?\d+))?")


def parse_word(text: str) -> Word:
    """Parse word literals such as 'A^3 B^2 A^2 B^2', 'B^-2 A^3' or 'bbAAA'."""
    compact = "".join(text.split())
    if compact in ("", "1"):
        return ()
    pos = 0
    out: list[int] = []
    while pos < len(compact):
        m = _TOKEN.match(compact, pos)
        if not m:
            raise InvalidParams(f"bad word literal at column {pos + 1}: {text!r}")
        code = _CODES[m.group(1)]
        exp = int(m.group(2)) if m.group(2) is not None else 1
        out.extend(power(abs(code), exp if code > 0 else -exp))
        pos = m.end()
    return reduce(out)


@total_ordering
@dataclass(frozen=True)
class CyclicWord:
    """A nontrivial cyclically reduced word stored in its canonical rotation."""

    letters: Word

    def __post_init__(self) -> None:
        if not self.letters:
            raise WordIsTrivial("cyclic word is trivial")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self.letters)

    def __repr__(self) -> str:
        return f"CyclicWord({format_word(self.letters)!r})"

    def __lt__(self, other: "CyclicWord") -> bool:
        return (len(self), [_RANK[x] for x in self.letters]) < (
            len(other),
            [_RANK[x] for x in other.letters],
        )

    def inverse(self) -> "CyclicWord":
        return cyclic_canonical(inverse(self.letters))

    def syllables(self) -> list[tuple[int, int]]:
        return cyclic_syllables(self.letters)

    def exponent_signs(self, gen: int) -> set[int]:
        return {1 if x > 0 else -1 for x in self.letters if abs(x) == gen}


def cyclic_canonical(w: Iterable[int]) -> CyclicWord:
    """Canonical representative of the conjugacy class of w."""
    letters = cyclically_reduce(w)
    if not letters:
        raise WordIsTrivial("word reduces to the identity")
    return CyclicWord(least_rotation(letters))


def unoriented_canonical(w: Iterable[int]) -> CyclicWord:
    """Canonical form of an unoriented curve: the lesser of w and w^-1."""
    cw = cyclic_canonical(w)
    inv = cw.inverse()
    key = lambda c: [_RANK[x] for x in c.letters]  # noqa: E731
    return min(cw, inv, key=key)


def cw(text: str) -> CyclicWord:
    """Shorthand: parse a literal straight into a CyclicWord."""
    return cyclic_canonical(parse_word(text))


# ---------------------------------------------------------------------------
# automorphisms


def _other(gen: int) -> int:
    return B if gen == A else A


@dataclass(frozen=True)
class RightMultiply:
    """target -> target * other^k"""

    target: int
    k: int

    def images(self) -> dict[int, Word]:
        return {self.target: (self.target,) + power(_other(self.target), self.k)}

    def inverse(self) -> "RightMultiply":
        return RightMultiply(self.target, -self.k)

    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return _elementary_matrix(self.target, self.k)

    def __str__(self) -> str:
        t, o = _NAMES[self.target], _NAMES[_other(self.target)]
        return f"{t}->{t}{o}^{self.k}"


@dataclass(frozen=True)
class LeftMultiply:
    """target -> other^k * target"""

    target: int
    k: int

    def images(self) -> dict[int, Word]:
        return {self.target: power(_other(self.target), self.k) + (self.target,)}

    def inverse(self) -> "LeftMultiply":
        return LeftMultiply(self.target, -self.k)

    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return _elementary_matrix(self.target, self.k)

    def __str__(self) -> str:
        t, o = _NAMES[self.target], _NAMES[_other(self.target)]
        return f"{t}->{o}^{self.k}{t}"


@dataclass(frozen=True)
class Invert:
    gen: int

    def images(self) -> dict[int, Word]:
        return {self.gen: (-self.gen,)}

    def inverse(self) -> "Invert":
        return self

    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((-1, 0), (0, 1)) if self.gen == A else ((1, 0), (0, -1))

    def __str__(self) -> str:
        name = _NAMES[self.gen]
        return f"{name}->{name.lower()}"


@dataclass(frozen=True)
class Swap:
    def images(self) -> dict[int, Word]:
        return {A: (B,), B: (A,)}

    def inverse(self) -> "Swap":
        return self

    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((0, 1), (1, 0))

    def __str__(self) -> str:
        return "A<->B"


ElementaryMove = RightMultiply | LeftMultiply | Invert | Swap


def _elementary_matrix(target: int, k: int) -> tuple[tuple[int, int], tuple[int, int]]:
    # columns are images of A and B in exponent-sum coordinates
    if target == A:
        return ((1, 0), (k, 1))
    return ((1, k), (0, 1))


def _matmul(m, n):
    return tuple(
        tuple(sum(m[i][k] * n[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


def substitute(w: Sequence[int], images: dict[int, Word]) -> Word:
    out: list[int] = []
    for x in w:
        img = images.get(abs(x))
        if img is None:
            out.append(x)
        elif x > 0:
            out.extend(img)
        else:
            out.extend(inverse(img))
    return reduce(out)


@dataclass(frozen=True)
class FreeAutomorphism:
    """A composition of elementary moves, applied left to right."""

    moves: tuple = ()

    def __init__(self, moves: Iterable[ElementaryMove] = ()) -> None:
        object.__setattr__(self, "moves", tuple(moves))

    def __str__(self) -> str:
        return " ; ".join(str(m) for m in self.moves) or "id"

    def inverse(self) -> "FreeAutomorphism":
        return FreeAutomorphism(m.inverse() for m in reversed(self.moves))

    def then(self, other: "FreeAutomorphism") -> "FreeAutomorphism":
        return FreeAutomorphism(self.moves + other.moves)

    def apply_word(self, w: Sequence[int]) -> Word:
        out = reduce(w)
        for move in self.moves:
            out = substitute(out, move.images())
        return out

    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Integer matrix M with abelianize(phi(w)) = M . abelianize(w)."""
        m = ((1, 0), (0, 1))
        for move in self.moves:
            m = _matmul(move.matrix(), m)
        return m


IDENTITY = FreeAutomorphism()


def apply_automorphism(w: CyclicWord, phi: FreeAutomorphism) -> CyclicWord:
    return cyclic_canonical(phi.apply_word(w.letters))


# Nielsen moves with exponent +-1.  Together with inversions and the swap
# (which never change length) these form the Whitehead automorphisms of
# F(A, B) up to inner automorphisms, so a cyclic word admitting none of
# them as a strict shortening is of minimal length in its orbit.
REDUCING_MOVES = tuple(
    cls(target, k) for cls in (RightMultiply, LeftMultiply) for target in GENERATORS for k in (1, -1)
)


class MinimalLength(NamedTuple):
    length: int
    achiever: CyclicWord
    exhausted: bool


def _images(w: CyclicWord):
    for move in REDUCING_MOVES:
        img = substitute(w.letters, move.images())
        yield move, cyclic_canonical(img)


def has_shortening_move(w: CyclicWord) -> bool:
    return any(len(img) < len(w) for _, img in _images(w))


def minimal_length(w: CyclicWord, depth_budget: int) -> MinimalLength:
    """Breadth-first search for the shortest image of w under automorphisms.

    Each level applies every Nielsen move with exponent +-1 to the current
    frontier and keeps images no longer than the best length seen so far.
    When a strictly shorter image turns up the frontier restarts from the
    shortest images.  ``exhausted`` is True when the returned achiever has
    no length-reducing move, which by Whitehead's theorem certifies that
    its length is the minimum over the automorphism orbit.
    """
    if depth_budget < 0:
        raise InvalidParams("depth budget must be >= 0")
    best = w
    frontier = [w]
    seen = {w}
    for _ in range(depth_budget):
        nxt: list[CyclicWord] = []
        for v in frontier:
            for _, img in _images(v):
                if len(img) > len(best) or img in seen:
                    continue
                seen.add(img)
                if len(img) < len(best):
                    best = img
                    nxt = [img]
                elif len(img) == len(best):
                    nxt.append(img)
        # keep only words of the current best length in the frontier
        frontier = [v for v in nxt if len(v) == len(best)]
        best = min(frontier + [best])
        if not frontier:
            break
    return MinimalLength(len(best), best, not has_shortening_move(best))


def seifert_form(w: CyclicWord) -> tuple[int, int] | None:
    """(|p|, |q|) if w is literally A^p B^q with |p|, |q| >= 2."""
    runs = w.syllables()
    if len(runs) != 2:
        return None
    (g1, e1), (g2, e2) = runs
    if {g1, g2} != {A, B} or abs(e1) < 2 or abs(e2) < 2:
        return None
    exps = {g1: abs(e1), g2: abs(e2)}
    return exps[A], exps[B]


def seifert_relator_form(w: CyclicWord, depth_budget: int) -> tuple[int, int] | None:
    """Search bounded compositions of moves for an image of the form A^p B^q.

    Images are explored breadth first with non-increasing length.  None
    means the form was not found within the budget, not that it is absent.
    """
    found = seifert_form(w)
    if found:
        return found
    frontier = deque([(w, 0)])
    seen = {w}
    while frontier:
        v, depth = frontier.popleft()
        if depth >= depth_budget:
            continue
        for _, img in _images(v):
            if len(img) > len(v) or img in seen:
                continue
            found = seifert_form(img)
            if found:
                return found
            seen.add(img)
            frontier.append((img, depth + 1))
    return None
