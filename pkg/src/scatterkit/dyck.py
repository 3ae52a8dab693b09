"""Maximal Dyck paths P(d1, d2) and their pi labels."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

E, N = "E", "N"


@dataclass(frozen=True)
class Edge:
    direction: str
    ordinal: int
    anchor: tuple[int, int]
    pi: int
    index: int  # 1-based position among edges of the same direction

    @property
    def horizontal(self) -> bool:
        return self.direction == E

    @property
    def name(self) -> str:
        return f"{'u' if self.direction == E else 'v'}{self.index}"

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class MaxDyckPath:
    """The lattice path from (0,0) to (d1,d2) staying weakly below the diagonal
    and as high as possible. Edges are stored in path order."""

    d1: int
    d2: int
    edges: tuple[Edge, ...]

    @property
    def n(self) -> int:
        return self.d1 + self.d2

    @property
    def word(self) -> str:
        return "".join(e.direction for e in self.edges)

    @property
    def horizontal(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.direction == E)

    @property
    def vertical(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.direction == N)

    def u(self, i: int) -> Edge:
        """Horizontal edge u_i, 1-based left to right."""
        return self.horizontal[i - 1]

    def v(self, j: int) -> Edge:
        """Vertical edge v_j, 1-based bottom to top."""
        return self.vertical[j - 1]

    def edge(self, ordinal: int) -> Edge:
        return self.edges[ordinal % self.n]

    def by_pi(self, label: int) -> Edge:
        for e in self.edges:
            if e.pi == label:
                return e
        raise KeyError(label)

    def owns(self, e: Edge) -> bool:
        return 0 <= e.ordinal < self.n and self.edges[e.ordinal] == e


def _word_staircase(d1: int, d2: int) -> str:
    # step N whenever the point above is still weakly below the diagonal
    out = []
    x = y = 0
    while x < d1 or y < d2:
        if y < d2 and d1 * (y + 1) <= d2 * x:
            out.append(N)
            y += 1
        else:
            out.append(E)
            x += 1
    return "".join(out)


def _word_residue(d1: int, d2: int) -> str:
    """Coprime case: the edge at ordinal k has label k*d2 mod (d1+d2); N iff label >= d1."""
    n = d1 + d2
    return "".join(N if (k * d2) % n >= d1 else E for k in range(n))


def build_max_dyck(d1: int, d2: int) -> MaxDyckPath:
    if d1 < 1 or d2 < 1:
        raise ValueError(f"dimensions must be positive, got ({d1}, {d2})")
    word = _word_staircase(d1, d2)
    if gcd(d1, d2) == 1:
        assert word == _word_residue(d1, d2), (d1, d2)
    return path_from_word(d1, d2, word)


def path_from_word(d1: int, d2: int, word: str) -> MaxDyckPath:
    edges = []
    x = y = 0
    hi = vi = 0
    for k, step in enumerate(word):
        pi = d2 * x - d1 * y
        if step == E:
            hi += 1
            edges.append(Edge(E, k, (x, y), pi, hi))
            x += 1
        else:
            vi += 1
            edges.append(Edge(N, k, (x, y), pi, vi))
            y += 1
    if (x, y) != (d1, d2):
        raise ValueError("word does not end at (d1, d2)")
    return MaxDyckPath(d1, d2, tuple(edges))


def pi_label(path: MaxDyckPath, e: Edge) -> int:
    if not path.owns(e):
        raise ValueError(f"edge {e!r} does not belong to P({path.d1},{path.d2})")
    x, y = e.anchor
    return path.d2 * x - path.d1 * y


def cyclic_subpath(path: MaxDyckPath, u: Edge, v: Edge) -> list[Edge]:
    """Edges from u to v inclusive, wrapping past the end of the path if needed."""
    if u.direction != E or v.direction != N:
        raise ValueError("cyclic_subpath needs a horizontal start and a vertical end")
    if not (path.owns(u) and path.owns(v)):
        raise ValueError("edges must belong to the path")
    length = (v.ordinal - u.ordinal) % path.n
    return [path.edge(u.ordinal + k) for k in range(length + 1)]


def cyclic_offset(path: MaxDyckPath, a: Edge, b: Edge) -> int:
    """Number of steps forward from a to b around the cycle."""
    return (b.ordinal - a.ordinal) % path.n


def transpose_ordinal(path: MaxDyckPath, k: int) -> int:
    """Ordinal in P(d2, d1) of the image of edge k under the reflection (x,y) -> (d2-y, d1-x)."""
    return path.n - 1 - k


def doubled_word(path: MaxDyckPath, copies: int = 2) -> str:
    return path.word * copies


def label_multiset(path: MaxDyckPath) -> list[int]:
    return sorted(e.pi for e in path.edges)


def word_of(edges: Sequence[Edge]) -> str:
    return "".join(e.direction for e in edges)
