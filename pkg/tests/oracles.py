"""Slow, literal reimplementations used only as test oracles.

Nothing here shares code with the package beyond the path and grading
containers; each function follows the textbook definition directly.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, gcd

from scatterkit.dyck import E, N, MaxDyckPath, path_from_word


def max_dyck_word_brute(d1: int, d2: int) -> str:
    """Among all NE words from (0,0) to (d1,d2) that stay weakly below the
    diagonal, the one whose height at every x is largest."""
    best, best_heights = None, None
    for pos in itertools.combinations(range(d1 + d2), d2):
        word = [E] * (d1 + d2)
        for k in pos:
            word[k] = N
        x = y = 0
        heights = []
        ok = True
        for s in word:
            if s == E:
                x += 1
            else:
                y += 1
            if d1 * y > d2 * x:
                ok = False
                break
            heights.append((x, y))
        if not ok:
            continue
        # height profile: max y reached at each x
        prof = [max(yy for xx, yy in [(0, 0)] + heights if xx == xv) for xv in range(d1 + 1)]
        if best is None or all(a >= b for a, b in zip(prof, best_heights)):
            best, best_heights = "".join(word), prof
    return best


def _sub(path: MaxDyckPath, a: int, b: int) -> list[int]:
    """Ordinals from a to b inclusive, cyclically."""
    n = path.n
    return [(a + t) % n for t in range((b - a) % n + 1)]


def compatible_literal(path: MaxDyckPath, w) -> bool:
    edges = path.edges
    for u in range(path.n):
        if edges[u].direction != E or not w[u]:
            continue
        for v in range(path.n):
            if edges[v].direction != N or not w[v]:
                continue
            sub = _sub(path, u, v)
            found = False
            for e in sub:
                if edges[e].direction == N and e != v:
                    ue = _sub(path, u, e)
                    if sum(1 for x in ue if edges[x].direction == N) == \
                            sum(w[x] for x in ue if edges[x].direction == E):
                        found = True
                        break
                if edges[e].direction == E and e != u:
                    ev = _sub(path, e, v)
                    if sum(1 for x in ev if edges[x].direction == E) == \
                            sum(w[x] for x in ev if edges[x].direction == N):
                        found = True
                        break
            if not found:
                return False
    return True


def shadow_literal(path: MaxDyckPath, w, k: int) -> frozenset[int]:
    edges = path.edges
    n = path.n
    if edges[k].direction == E:
        best = None
        for v in range(n):
            if edges[v].direction != N:
                continue
            sub = _sub(path, k, v)
            if sum(1 for x in sub if edges[x].direction == N) == \
                    sum(w[x] for x in sub if edges[x].direction == E):
                if best is None or len(sub) < len(best):
                    best = sub
        if best is None:
            return frozenset(e.ordinal for e in path.vertical)
        return frozenset(x for x in best if edges[x].direction == N)
    best = None
    for u in range(n):
        if edges[u].direction != E:
            continue
        sub = _sub(path, u, k)
        if sum(1 for x in sub if edges[x].direction == E) == \
                sum(w[x] for x in sub if edges[x].direction == N):
            if best is None or len(sub) < len(best):
                best = sub
    if best is None:
        return frozenset(e.ordinal for e in path.horizontal)
    return frozenset(x for x in best if edges[x].direction == E)


def tight_literal(path: MaxDyckPath, w) -> bool:
    """Definition of a tight grading, restricted to p, q >= 1."""
    p = sum(w[e.ordinal] for e in path.vertical)
    q = sum(w[e.ordinal] for e in path.horizontal)
    if p < 1 or q < 1:
        return False
    if abs(p * path.d2 - q * path.d1) != gcd(p, q):
        return False
    if not compatible_literal(path, w):
        return False
    se = {k for k in range(path.n) if w[k] and path.edges[k].direction == E}
    sn = {k for k in range(path.n) if w[k] and path.edges[k].direction == N}
    sh_n = set().union(*[shadow_literal(path, w, k) for k in sn]) if sn else set()
    sh_e = set().union(*[shadow_literal(path, w, k) for k in se]) if se else set()
    return se <= sh_n or sn <= sh_e


def lambda_brute(path: MaxDyckPath, P1, P2) -> int:
    """Count tight gradings on ``path`` whose vertical weights form P1 and
    horizontal weights form P2, by trying every placement."""
    hs = [e.ordinal for e in path.horizontal]
    vs = [e.ordinal for e in path.vertical]
    count = 0
    seen = set()
    for hw in set(itertools.permutations(list(P2) + [0] * (len(hs) - len(P2)))):
        for vw in set(itertools.permutations(list(P1) + [0] * (len(vs) - len(P1)))):
            w = [0] * path.n
            for k, x in zip(hs, hw):
                w[k] = x
            for k, x in zip(vs, vw):
                w[k] = x
            t = tuple(w)
            if t in seen:
                continue
            seen.add(t)
            if tight_literal(path, t):
                count += 1
    return count


def binom_frac(x, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out = out * (x - i) / (i + 1)
    return out


def c7_numeric(b: int, c: int, i: int) -> Fraction:
    g = gcd(b, c)
    m = (b - 1) * (c - 1) * i + g
    return Fraction(g, m) * comb(m, i)


def c5_numeric(b: int, c: int, j: int) -> Fraction:
    g = gcd(b, j * c)
    return Fraction(g, b) * comb(b, j)


def c6_numeric(b: int, c: int, i: int) -> Fraction:
    g = gcd(i * b, c)
    return Fraction(g, c) * comb(c, i)


def poly_mul_naive(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= order:
                out[i + j] += Fraction(x) * Fraction(y)
    return out


def path_of(word: str) -> MaxDyckPath:
    return path_from_word(word.count(E), word.count(N), word)
