"""Independent reference implementations used by the tests.

These deliberately avoid the package's search and walking code: words
are plain strings, automorphisms are string substitutions, and sweeps
are exhaustive.
"""

from __future__ import annotations

from itertools import product
from math import gcd

import numpy as np

INV = {"A": "a", "a": "A", "B": "b", "b": "B"}


def s_reduce(w: str) -> str:
    out: list[str] = []
    for ch in w:
        if out and out[-1] == INV[ch]:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def s_cyclic_reduce(w: str) -> str:
    w = s_reduce(w)
    while len(w) > 1 and w[0] == INV[w[-1]]:
        w = w[1:-1]
    return w


def s_expand(syllables) -> str:
    """[('A', 3), ('B', -2)] -> 'AAAbb'."""
    out = []
    for gen, e in syllables:
        out.append((gen if e > 0 else gen.lower()) * abs(e))
    return "".join(out)


def s_rotations(w: str) -> set[str]:
    return {w[i:] + w[:i] for i in range(len(w))}


def s_same_class(u: str, v: str) -> bool:
    u, v = s_cyclic_reduce(u), s_cyclic_reduce(v)
    return len(u) == len(v) and v in s_rotations(u)


def s_same_curve(u: str, v: str) -> bool:
    """Equal as unoriented curves: conjugate to v or to v^-1."""
    vinv = "".join(INV[c] for c in reversed(v))
    return s_same_class(u, v) or s_same_class(u, vinv)


def s_substitute(w: str, images: dict[str, str]) -> str:
    full = dict(images)
    for g in ("A", "B"):
        full.setdefault(g, g)
        full[g.lower()] = "".join(INV[c] for c in reversed(full[g]))
    return s_reduce("".join(full[c] for c in w))


# Nielsen moves X -> XY^k, X -> Y^kX with k = +-1, written as substitutions
NIELSEN = [
    {"A": "AB"}, {"A": "Ab"}, {"A": "BA"}, {"A": "bA"},
    {"B": "BA"}, {"B": "Ba"}, {"B": "AB"}, {"B": "aB"},
]


def brute_minimal_length(w: str, depth: int) -> int:
    """Minimum cyclic length over all compositions of at most ``depth`` moves (no pruning)."""
    best = len(s_cyclic_reduce(w))
    frontier = {s_cyclic_reduce(w)}
    for _ in range(depth):
        nxt = set()
        for v in frontier:
            for img in NIELSEN:
                x = s_cyclic_reduce(s_substitute(v, img))
                nxt.add(x)
                best = min(best, len(x))
        frontier = nxt
    return best


def exponent_sums(w: str) -> tuple[int, int]:
    return (w.count("A") - w.count("a"), w.count("B") - w.count("b"))


def brute_embedding_certificates(a: int, b: int, m: int, n: int, s: int):
    """All (condition, u, delta) read off the three determinant conditions as written."""
    out = []
    for u in range(1, s):
        if gcd(s, u) != 1:
            continue
        if (a, b) == (1, 0):
            val, cond = s * m - u * n, 1
        elif m == 1:
            val, cond = s * (a + b) - u * ((a + b) * n + b), 2
        else:
            if u != 1:
                continue
            val, cond = m * s * (a + b) - ((a + b) * n + b * m), 3
        if abs(val) == 1:
            out.append((cond, u, val))
    return out


def numpy_eq3_count(bound: int = 50) -> int:
    """Count (b, c, j, m, s, delta) with the u = 1 determinant equation satisfied.

    Full grid over b, c, j in [1, bound] and m, s in [2, bound], one
    b-slice at a time to keep memory small.
    """
    c, j, m, s = np.meshgrid(
        np.arange(1, bound + 1, dtype=np.int64),
        np.arange(1, bound + 1, dtype=np.int64),
        np.arange(2, bound + 1, dtype=np.int64),
        np.arange(2, bound + 1, dtype=np.int64),
        indexing="ij",
    )
    hits = 0
    for b in range(1, bound + 1):
        lhs = (j + 1) * s * ((m - 1) * (b + c) + b)
        rhs = (j + m) * (b + c) + b
        hits += int(np.count_nonzero(np.abs(lhs - rhs) == 1))
    return hits


def numpy_inequalities_hold(bound: int = 50) -> bool:
    c, j, m, s = np.meshgrid(
        np.arange(1, bound + 1, dtype=np.int64),
        np.arange(1, bound + 1, dtype=np.int64),
        np.arange(2, bound + 1, dtype=np.int64),
        np.arange(2, bound + 1, dtype=np.int64),
        indexing="ij",
    )
    for b in range(1, bound + 1):
        first = s * (j + 1) * (m - 1) * (b + c) > (j + m) * (b + c)
        second = b * s * (j + 1) > b + 1
        if not (first.all() and second.all()):
            return False
    return True


def two_cut_pieces(word: str):
    """Every split of a cyclic word into two nonempty arcs."""
    n = len(word)
    for i, k in product(range(n), range(1, n)):
        rot = word[i:] + word[:i]
        yield rot[:k], rot[k:]
