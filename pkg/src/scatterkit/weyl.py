"""Mutation, retraction and the Weyl-symmetry bijection on tight gradings.

Only the two-valued setting CG_{b,c} is handled: vertical weights are 0 or b,
horizontal weights 0 or c, so a grading is its pair of supports.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .dyck import MaxDyckPath, build_max_dyck, cyclic_offset
from .gradings import (Grading, TightSpec, _shadow_ordinals, choose_dims, enumerate_tight,
                       is_compatible, is_tight, shadow_of_set)
from .exact import Partition

TOP, TURNSTILE = "top", "turnstile"   # S_E in sh(S_N), S_N in sh(S_E)


@dataclass(frozen=True)
class ShadowedClass:
    kind: str
    d1: int
    d2: int
    i: int
    j: int
    b: int
    c: int

    def contains(self, omega: Grading) -> bool:
        path = omega.path
        if (path.d1, path.d2) != (self.d1, self.d2):
            return False
        if not in_cg(omega, self.b, self.c, self.i, self.j) or not is_compatible(omega):
            return False
        return shadowed_kind(omega, self.kind)


def in_cg(omega: Grading, b: int, c: int, i: int | None = None, j: int | None = None) -> bool:
    w = omega.weights
    if any(w[e.ordinal] not in (0, b) for e in omega.path.vertical):
        return False
    if any(w[e.ordinal] not in (0, c) for e in omega.path.horizontal):
        return False
    if i is not None and len(omega.S_N) != i:
        return False
    if j is not None and len(omega.S_E) != j:
        return False
    return True


def shadowed_kind(omega: Grading, kind: str) -> bool:
    if kind == TOP:
        return set(omega.S_E) <= shadow_of_set(omega, omega.S_N)
    if kind == TURNSTILE:
        return set(omega.S_N) <= shadow_of_set(omega, omega.S_E)
    raise ValueError(kind)


def _from_supports(path: MaxDyckPath, S_E, S_N, b: int, c: int) -> Grading:
    w = [0] * path.n
    for k in S_E:
        w[k] = c
    for k in S_N:
        w[k] = b
    return Grading(path, tuple(w))


def remote_shadow_index(omega: Grading) -> dict[tuple[int, int, int], int]:
    """``{(h, j, r): ordinal}`` for the remote shadow of S_N.

    h is the height of the horizontal edge, v_j the vertical edge that directly
    shadows it, r its 1-based rank from the left among such edges.
    """
    path, w = omega.path, omega.weights
    sn = [e for e in path.vertical if w[e.ordinal]]
    shadows = {e.index: _shadow_ordinals(path, w, e) for e in sn}
    removed_heights = {e.index - 1 for e in sn}
    groups: dict[tuple[int, int], list] = {}
    covered = set().union(*shadows.values()) if shadows else set()
    for k in covered:
        e = path.edges[k]
        h = e.anchor[1]
        if h in removed_heights:
            continue
        owners = [j for j, sh in shadows.items() if k in sh]
        size = min(len(shadows[j]) for j in owners)
        # nested or disjoint shadows leave ties only when several edges fall back
        # to the full horizontal set; the nearest one along the path owns e
        best = min((j for j in owners if len(shadows[j]) == size),
                   key=lambda j: cyclic_offset(path, e, path.v(j)))
        groups.setdefault((h, best), []).append(e)
    out = {}
    for (h, j), es in groups.items():
        es.sort(key=lambda e: e.anchor[0])
        for r, e in enumerate(es, 1):
            out[(h, j, r)] = e.ordinal
    return out


def mutate(omega: Grading, b: int, c: int) -> Grading:
    """The Lee-Li-Zelevinsky map to P(b*d2 - d1, d2)."""
    path = omega.path
    d1, d2 = path.d1, path.d2
    if b * d2 - d1 < 1:
        raise ValueError("b*d2 - d1 must be positive")
    if not in_cg(omega, b, c):
        raise ValueError("grading is not two-valued with weights b and c")
    new_path = build_max_dyck(b * d2 - d1, d2)
    sn = {e.index for e in omega.S_N}
    new_sn = [new_path.v(jj).ordinal for jj in range(1, d2 + 1) if (d2 + 1 - jj) not in sn]
    provisional = _from_supports(new_path, [], new_sn, b, c)
    old_index = remote_shadow_index(omega)
    new_index = remote_shadow_index(provisional)
    by_ordinal = {k: key for key, k in old_index.items()}
    new_se = []
    for e in omega.S_E:
        key = by_ordinal.get(e.ordinal)
        if key is None:
            # outside the remote shadow; the map forgets this edge
            continue
        h, jj, r = key
        target = (d2 - jj, d2 - h, r)
        if target not in new_index:
            raise ValueError(f"no remote-shadow edge {target} after mutation")
        new_se.append(new_index[target])
    return _from_supports(new_path, new_se, new_sn, b, c)


def retract(omega: Grading) -> Grading:
    """Zero the vertical weights outside the shadow of S_E."""
    keep = shadow_of_set(omega, omega.S_E)
    w = list(omega.weights)
    for e in omega.path.vertical:
        if w[e.ordinal] and e not in keep:
            w[e.ordinal] = 0
    return Grading(omega.path, tuple(w))


def weyl_map(omega: Grading, b: int, c: int) -> Grading:
    """Tight top-class grading with (i, j) -> tight turnstile-class grading with (cj - i, j)."""
    i, j = len(omega.S_N), len(omega.S_E)
    if c * j - i < 1:
        raise ValueError("need c*j - i >= 1")
    if not (in_cg(omega, b, c) and is_tight(omega) and shadowed_kind(omega, TOP)):
        raise ValueError("weyl_map needs a tight grading with S_E inside sh(S_N)")
    return retract(mutate(omega, b, c))


def transpose(omega: Grading) -> Grading:
    """Reflect across the anti-diagonal: a grading on P(d2, d1) with E and N swapped."""
    path = omega.path
    tp = build_max_dyck(path.d2, path.d1)
    n = path.n
    w = [0] * n
    for k in range(n):
        w[n - 1 - k] = omega.weights[k]
    return Grading(tp, tuple(w))


# bijection checks

def tight_cg(b: int, c: int, i: int, j: int, d1: int, d2: int) -> list[Grading]:
    """Tight gradings in CG_{b,c}(d1, d2, i, j)."""
    P1, P2 = Partition((b,) * i), Partition((c,) * j)
    p, q = b * i, c * j
    eps = 1 if p * d2 - q * d1 > 0 else -1
    return enumerate_tight(TightSpec(P1, P2, d1, d2, eps))


@dataclass
class BijectionReport:
    b: int
    c: int
    i: int
    j: int
    source_dims: tuple[int, int]
    target_dims: tuple[int, int]
    source_count: int
    target_count: int
    injective: bool
    onto: bool

    @property
    def ok(self) -> bool:
        return self.injective and self.onto and self.source_count == self.target_count


def check_weyl_bijection(b: int, c: int, i: int, j: int, dims=None) -> BijectionReport:
    """Map every tight top-class grading through weyl_map and compare with an
    independent enumeration of the target set."""
    if dims is None:
        dims = choose_dims(b * i, c * j, 1)
    d1, d2 = dims
    src = tight_cg(b, c, i, j, d1, d2)
    tdims = (b * d2 - d1, d2)
    tgt = {g.weights for g in tight_cg(b, c, c * j - i, j, *tdims)}
    images = [weyl_map(g, b, c).weights for g in src]
    return BijectionReport(b, c, i, j, (d1, d2), tdims, len(src), len(tgt),
                           injective=len(set(images)) == len(images),
                           onto=set(images) == tgt)


def check_second_symmetry(b: int, c: int, i: int, j: int) -> BijectionReport:
    """tau(i,j) = tau(i, b*i - j) via transpose, weyl_map with (c, b), transpose."""
    # on the transposed side the roles of (b, c) and (i, j) swap
    return check_weyl_bijection(c, b, j, i)
