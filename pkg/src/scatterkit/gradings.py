"""Compatible and tight gradings on maximal Dyck paths, and their counts.

Weights are stored per edge ordinal. The two scans that drive everything are

* ``forward_match(w, k)`` for a horizontal edge k: walking forward from k, the
  first vertical edge at which the vertical count equals the accumulated
  horizontal weight;
* ``backward_match(w, k)`` for a vertical edge k: the mirror image.

Shadows and the compatibility test are both read off these offsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, gcd
from typing import Iterable, Iterator, Sequence

from .dyck import E, N, Edge, MaxDyckPath, build_max_dyck
from .exact import Partition, multinomial_mu, partitions_of


@dataclass(frozen=True)
class Grading:
    path: MaxDyckPath
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.weights) != self.path.n:
            raise ValueError(f"expected {self.path.n} weights, got {len(self.weights)}")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")

    @classmethod
    def zero(cls, path: MaxDyckPath) -> "Grading":
        return cls(path, (0,) * path.n)

    @classmethod
    def from_edges(cls, path: MaxDyckPath, assignment: dict) -> "Grading":
        """Build from ``{edge or 'u3' / 'v2' name: weight}``."""
        w = [0] * path.n
        for key, val in assignment.items():
            if isinstance(key, str):
                kind, idx = key[0], int(key[1:])
                e = path.u(idx) if kind == "u" else path.v(idx)
            else:
                e = key
            w[e.ordinal] = val
        return cls(path, tuple(w))

    def __getitem__(self, e: Edge) -> int:
        return self.weights[e.ordinal]

    @property
    def S_E(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.path.edges if e.direction == E and self.weights[e.ordinal])

    @property
    def S_N(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.path.edges if e.direction == N and self.weights[e.ordinal])

    @property
    def p(self) -> int:
        return sum(self.weights[e.ordinal] for e in self.path.edges if e.direction == N)

    @property
    def q(self) -> int:
        return sum(self.weights[e.ordinal] for e in self.path.edges if e.direction == E)

    @property
    def P1(self) -> Partition:
        return Partition.from_weights(self.weights[e.ordinal] for e in self.path.vertical)

    @property
    def P2(self) -> Partition:
        return Partition.from_weights(self.weights[e.ordinal] for e in self.path.horizontal)

    def describe(self) -> str:
        parts = [f"{e.name}={self.weights[e.ordinal]}" for e in self.path.edges if self.weights[e.ordinal]]
        return f"P({self.path.d1},{self.path.d2}): " + (", ".join(parts) or "zero")


@dataclass(frozen=True)
class TightSpec:
    P1: Partition
    P2: Partition
    d1: int
    d2: int
    epsilon: int

    def __post_init__(self):
        p, q = self.P1.size, self.P2.size
        if p < 1 or q < 1:
            raise ValueError("both partitions must be nonempty")
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        if p * self.d2 - q * self.d1 != self.epsilon * gcd(p, q):
            raise ValueError(f"p*d2 - q*d1 != epsilon*gcd(p,q) for {self}")
        if self.d1 < p or self.d2 < q:
            raise ValueError(f"need d1 >= p and d2 >= q in {self}")

    @classmethod
    def for_partitions(cls, P1, P2, epsilon: int = -1, dims=None) -> "TightSpec":
        P1, P2 = Partition(P1), Partition(P2)
        if dims is None:
            dims = choose_dims(P1.size, P2.size, epsilon)
        return cls(P1, P2, dims[0], dims[1], epsilon)


# scans

def forward_match(path: MaxDyckPath, w: Sequence[int], k: int) -> int | None:
    """Offset from horizontal edge k to the first vertical edge closing its shadow."""
    n = path.n
    edges = path.edges
    acc = cnt = 0
    for off in range(n):
        e = edges[(k + off) % n]
        if e.direction == E:
            acc += w[e.ordinal]
        else:
            cnt += 1
            if cnt == acc:
                return off
    return None


def backward_match(path: MaxDyckPath, w: Sequence[int], k: int) -> int | None:
    n = path.n
    edges = path.edges
    acc = cnt = 0
    for off in range(n):
        e = edges[(k - off) % n]
        if e.direction == N:
            acc += w[e.ordinal]
        else:
            cnt += 1
            if cnt == acc:
                return off
    return None


def _shadow_ordinals(path: MaxDyckPath, w: Sequence[int], e: Edge) -> frozenset[int]:
    n = path.n
    if e.direction == E:
        off = forward_match(path, w, e.ordinal)
        if off is None:
            return frozenset(x.ordinal for x in path.vertical)
        return frozenset((e.ordinal + t) % n for t in range(1, off + 1)
                         if path.edges[(e.ordinal + t) % n].direction == N)
    off = backward_match(path, w, e.ordinal)
    if off is None:
        return frozenset(x.ordinal for x in path.horizontal)
    return frozenset((e.ordinal - t) % n for t in range(1, off + 1)
                     if path.edges[(e.ordinal - t) % n].direction == E)


def shadow(omega: Grading, e: Edge) -> frozenset[Edge]:
    if not omega.path.owns(e):
        raise ValueError(f"edge {e!r} is not on the grading's path")
    return frozenset(omega.path.edges[k] for k in _shadow_ordinals(omega.path, omega.weights, e))


def shadow_of_set(omega: Grading, edges: Iterable[Edge]) -> frozenset[Edge]:
    out: set = set()
    for e in edges:
        out |= shadow(omega, e)
    return frozenset(out)


def _compatible(path: MaxDyckPath, w: Sequence[int]) -> bool:
    n = path.n
    hs = [e.ordinal for e in path.edges if e.direction == E and w[e.ordinal]]
    vs = [e.ordinal for e in path.edges if e.direction == N and w[e.ordinal]]
    if not hs or not vs:
        return True
    a = {k: forward_match(path, w, k) for k in hs}
    b = {k: backward_match(path, w, k) for k in vs}
    for u in hs:
        au = a[u]
        for v in vs:
            off = (v - u) % n
            if au is not None and au < off:
                continue
            bv = b[v]
            if bv is not None and bv < off:
                continue
            return False
    return True


def is_compatible(omega: Grading) -> bool:
    return _compatible(omega.path, omega.weights)


def tight_sign(path: MaxDyckPath, p: int, q: int) -> int | None:
    """The epsilon with p*d2 - q*d1 = epsilon*gcd(p,q), or None."""
    if p < 1 or q < 1:
        return None
    diff = p * path.d2 - q * path.d1
    g = gcd(p, q)
    if diff == g:
        return 1
    if diff == -g:
        return -1
    return None


def _tight(path: MaxDyckPath, w: Sequence[int]) -> bool:
    p = sum(w[e.ordinal] for e in path.vertical)
    q = sum(w[e.ordinal] for e in path.horizontal)
    eps = tight_sign(path, p, q)
    if eps is None:
        return False
    if not _compatible(path, w):
        return False
    if eps == 1:
        covered: set = set()
        for e in path.vertical:
            if w[e.ordinal]:
                covered |= _shadow_ordinals(path, w, e)
        return all(e.ordinal in covered for e in path.horizontal if w[e.ordinal])
    covered = set()
    for e in path.horizontal:
        if w[e.ordinal]:
            covered |= _shadow_ordinals(path, w, e)
    return all(e.ordinal in covered for e in path.vertical if w[e.ordinal])


def is_tight(omega: Grading) -> bool:
    """Tightness with the containment dictated by the sign of p*d2 - q*d1."""
    return _tight(omega.path, omega.weights)


def is_tight_either(omega: Grading) -> bool:
    """Tightness accepting either shadow containment."""
    path, w = omega.path, omega.weights
    if tight_sign(path, omega.p, omega.q) is None or not _compatible(path, w):
        return False
    sh_n = shadow_of_set(omega, omega.S_N)
    sh_e = shadow_of_set(omega, omega.S_E)
    return set(omega.S_E) <= sh_n or set(omega.S_N) <= sh_e


# dimensions

def choose_dims(p: int, q: int, epsilon: int) -> tuple[int, int]:
    """Smallest d1 >= p (then d2 >= q) with p*d2 - q*d1 = epsilon*gcd(p,q)."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    g = gcd(p, q)
    P, Q = p // g, q // g
    # Q*d1 = -epsilon (mod P)
    r = (-epsilon * pow(Q, -1, P)) % P if P > 1 else 0
    d1 = p + ((r - p) % P)
    while True:
        num = epsilon + Q * d1
        if num % P == 0 and num // P >= q:
            return d1, num // P
        d1 += P


# enumeration

def _distinct_arrangements(values: Sequence[int], slots: int, first_pos: int | None,
                           last_zero: int | None) -> Iterator[tuple[int, ...]]:
    """Distinct placements of the nonzero ``values`` into ``slots`` positions.

    ``first_pos`` (if given) must receive a positive value and ``last_zero``
    (if given) must stay zero.
    """
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    counts[0] = slots - len(values)
    if counts[0] < 0:
        return
    keys = sorted(counts, reverse=True)
    cur = [0] * slots

    def rec(pos: int):
        if pos == slots:
            yield tuple(cur)
            return
        for key in keys:
            if not counts[key]:
                continue
            if pos == first_pos and key == 0:
                continue
            if pos == last_zero and key != 0:
                continue
            counts[key] -= 1
            cur[pos] = key
            yield from rec(pos + 1)
            counts[key] += 1

    yield from rec(0)


def frame_windows(path: MaxDyckPath, p: int, q: int, epsilon: int) -> list[list[int]]:
    """Ordinal windows u_max .. v_max allowed by the label bounds on u_max and v_max."""
    g = gcd(p, q)
    n = path.n
    length = p + q + 1
    out = []
    if epsilon == -1:
        anchors = [e for e in path.horizontal if 0 <= e.pi < g]
    else:
        targets = {e.pi - g for e in path.vertical if path.d1 <= e.pi < path.d1 + g}
        anchors = [e for e in path.horizontal if e.pi in targets]
    for u in anchors:
        window = [(u.ordinal + t) % n for t in range(length)]
        last = path.edges[window[-1]]
        if last.direction != N:
            raise AssertionError(f"window from {u!r} does not end on a vertical edge")
        if epsilon == -1:
            assert last.pi == u.pi + n - g
        else:
            assert last.pi == u.pi + g
        out.append(window)
    return out


def enumerate_tight(spec: TightSpec, brute: bool = False) -> list[Grading]:
    """All tight gradings realising ``spec``, sorted by weight vector."""
    path = build_max_dyck(spec.d1, spec.d2)
    if brute:
        found = [g for g in _brute_force(path, spec.P1, spec.P2) if is_tight(g)]
    else:
        # windows of neighbouring anchors overlap, so a grading can be met twice
        found = list({g.weights: g for g in _pruned(path, spec)}.values())
    found.sort(key=lambda g: g.weights)
    return found


def _brute_force(path: MaxDyckPath, P1: Partition, P2: Partition) -> Iterator[Grading]:
    hs = [e.ordinal for e in path.horizontal]
    vs = [e.ordinal for e in path.vertical]
    for hw in _distinct_arrangements(list(P2), len(hs), None, None):
        for vw in _distinct_arrangements(list(P1), len(vs), None, None):
            w = [0] * path.n
            for k, x in zip(hs, hw):
                w[k] = x
            for k, x in zip(vs, vw):
                w[k] = x
            yield Grading(path, tuple(w))


def _pruned(path: MaxDyckPath, spec: TightSpec) -> Iterator[Grading]:
    p, q = spec.P1.size, spec.P2.size
    n = path.n
    for window in frame_windows(path, p, q, spec.epsilon):
        hs = [k for k in window if path.edges[k].direction == E]
        vs = [k for k in window if path.edges[k].direction == N]
        if spec.epsilon == -1:
            # u_max carries weight, u_min (just before v_max) does not
            h_first, h_zero = 0, len(hs) - 1
            assert hs[-1] == window[-2]
            v_first, v_zero = len(vs) - 1, None
        else:
            h_first, h_zero = 0, None
            # v_max carries weight, v_min (just after u_max) does not
            v_first, v_zero = len(vs) - 1, 0
            assert vs[0] == window[1]
        h_side = (hs, list(spec.P2), h_first, h_zero)
        v_side = (vs, list(spec.P1), v_first, v_zero)
        # enumerate the side with fewer placements outright, search the other
        if _placements(len(hs), spec.P2) <= _placements(len(vs), spec.P1):
            outer, inner, outer_is_h = h_side, v_side, True
        else:
            outer, inner, outer_is_h = v_side, h_side, False
        slots, values, first, zero = outer
        scan = forward_match if outer_is_h else backward_match
        for ow in _distinct_arrangements(values, len(slots), first, zero):
            w = [0] * n
            for k, x in zip(slots, ow):
                w[k] = x
            fixed = {k: scan(path, w, k) for k, x in zip(slots, ow) if x}
            for full in _search_side(path, w, inner, fixed, not outer_is_h):
                if _tight(path, full):
                    yield Grading(path, tuple(full))


def _placements(slots: int, parts: Sequence[int]) -> int:
    out = comb(slots, len(parts))
    rest = len(parts)
    for m in Partition(parts).multiplicities():
        out *= comb(rest, m)
        rest -= m
    return out


def _search_side(path: MaxDyckPath, w: list, side, fixed: dict, horizontal: bool):
    """Fill one side of ``w`` by depth-first search.

    ``fixed`` maps each weighted edge of the other side to its match offset.
    A new weighted edge x must close its own scan before reaching any fixed
    edge y whose scan already reaches x; otherwise the pair (x, y) breaks
    compatibility. Horizontal edges are filled right to left and vertical
    ones left to right, so such a scan usually reads decided weights only.
    """
    slots, values, first, zero = side
    n = path.n
    edges = path.edges
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    counts[0] = len(slots) - len(values)
    if counts[0] < 0:
        return
    keys = sorted(counts, reverse=True)
    unknown = set(slots)
    own = E if horizontal else N
    step = 1 if horizontal else -1

    def limit(x: int) -> int:
        best = n
        for y, m in fixed.items():
            off = (y - x) % n if horizontal else (x - y) % n
            if m is None or m >= off:
                best = min(best, off)
        return best

    def closes(x: int) -> bool:
        acc = cnt = 0
        for off in range(limit(x)):
            k = (x + step * off) % n
            if edges[k].direction == own:
                if k in unknown:
                    return True     # undecided here; the final check settles it
                acc += w[k]
            else:
                cnt += 1
                if cnt == acc:
                    return True
        return False

    order = list(range(len(slots)))
    if horizontal:
        order.reverse()

    def rec(t: int):
        if t == len(order):
            yield list(w)
            return
        idx = order[t]
        k = slots[idx]
        unknown.discard(k)
        for key in keys:
            if not counts[key]:
                continue
            if idx == first and key == 0:
                continue
            if idx == zero and key != 0:
                continue
            w[k] = key
            if key and not closes(k):
                continue
            counts[key] -= 1
            yield from rec(t + 1)
            counts[key] += 1
        w[k] = 0
        unknown.add(k)

    yield from rec(0)


def _pair_ok(n: int, a: dict, b: dict) -> bool:
    # horizontal-only scans never see vertical weights and vice versa, so the
    # offsets computed separately are the offsets of the combined grading
    for u, au in a.items():
        for v, bv in b.items():
            off = (v - u) % n
            if (au is not None and au < off) or (bv is not None and bv < off):
                continue
            return False
    return True


# counts

@lru_cache(maxsize=None)
def lambda_count(P1: tuple, P2: tuple, epsilon: int = -1, dims: tuple | None = None) -> int:
    spec = TightSpec.for_partitions(P1, P2, epsilon, dims)
    return len(enumerate_tight(spec))


def lam(P1: Sequence[int], P2: Sequence[int], epsilon: int = -1, dims=None) -> int:
    """lambda(P1, P2): the number of tight gradings with vertical weights P1 and horizontal weights P2."""
    return lambda_count(tuple(Partition(P1)), tuple(Partition(P2)), epsilon,
                        tuple(dims) if dims else None)


def lambda_table(k: int, d: int = 1, e: int = 1, epsilon: int = -1) -> dict[tuple, int]:
    """``{(P1, P2): lambda}`` over P1 |- k*d, P2 |- k*e."""
    return {(P1, P2): lam(P1, P2, epsilon)
            for P1 in partitions_of(k * d) for P2 in partitions_of(k * e)}


def lambda_length_one(i: int, P: Sequence[int]):
    """Closed form for lambda((i), P)."""
    from fractions import Fraction
    if i < 1:
        raise ValueError("i must be positive")
    P = Partition(P)
    if P.length > i:
        return Fraction(0)
    return Fraction(gcd(i, P.size), i) * multinomial_mu(i, P)


def tau_by_counting(b: int, c: int, i: int, j: int, dims=None) -> int:
    """tau^{b,c}(i,j) as a count of tight gradings with vertical weights in {0,b}
    and horizontal weights in {0,c}."""
    for name, val in (("b", b), ("c", c), ("i", i), ("j", j)):
        if val < 1:
            raise ValueError(f"{name} must be positive")
    P1 = Partition((b,) * i)
    P2 = Partition((c,) * j)
    if dims is None:
        return lam(P1, P2)
    d1, d2 = dims
    p, q = b * i, c * j
    eps = 1 if p * d2 - q * d1 > 0 else -1
    return lam(P1, P2, eps, (d1, d2))


def total_tight_central(k: int) -> int:
    total = sum(lam(P1, P2) for P1 in partitions_of(k) for P2 in partitions_of(k))
    closed = comb(4 * k + 1, k) // (4 * k + 1)
    assert total == closed, (k, total, closed)
    return total
