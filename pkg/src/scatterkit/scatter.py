"""Order-by-order consistent completion of rank-2 scattering diagrams.

Series in x1, x2 are sparse dictionaries ``{(a1, a2): coefficient}`` truncated
by total degree. A wall with primitive direction m and function f(x^m) acts by

    theta_{m,f}(x^a) = x^a * f(x^m) ** <a, m>,   <a, m> = a1*m2 - a2*m1.

The line walls carry P1(x1) (direction (1,0)) and P2(x2) (direction (0,1)).
Consistency is

    theta_{(0,1)} o theta_{(1,0)} = theta_{(1,0)} o Pi o theta_{(0,1)}

with Pi the product of ray automorphisms taken in order of increasing slope
e/d. This choice was pinned by the pentagon identity (a single ray (1,1)
carrying 1 + x1*x2) and by the central ray of D_(2,2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable

from .exact import PolyBCG, TruncSeries, binom_poly, fraction_str, series_pow_frac

Series2 = dict


class OrderExceeded(ValueError):
    """Requested coefficient lies beyond the truncation order."""


# conventions (exposed so the calibration test can exercise the alternatives)
PAIRING_SIGN = 1
LINE_ORDER = "a"        # "a": B o A = A o Pi o B ; "b": A o B = B o Pi o A
RAY_ORDER = "asc"       # slope e/d increasing along Pi


def pairing(a, m, sign=None) -> int:
    s = PAIRING_SIGN if sign is None else sign
    return s * (a[0] * m[1] - a[1] * m[0])


def primitive(v) -> tuple[int, int]:
    g = gcd(v[0], v[1])
    return (v[0] // g, v[1] // g)


def _is_zero(c) -> bool:
    return not c


class Automorphism:
    """An elementary wall-crossing theta_{m,f}, with cached powers of f."""

    def __init__(self, m, f: TruncSeries, sign: int | None = None):
        self.m = m
        self.f = f
        self.sign = PAIRING_SIGN if sign is None else sign
        self._powers: dict[int, tuple] = {}

    def power(self, n: int) -> tuple:
        got = self._powers.get(n)
        if got is None:
            got = series_pow_frac(self.f, n).coeffs if n else (self.f.coeffs[0] * 0 + 1,)
            self._powers[n] = got
        return got

    def apply(self, s: Series2, T: int) -> Series2:
        m = self.m
        wdeg = m[0] + m[1]
        groups: dict[int, list] = {}
        for a, coef in s.items():
            groups.setdefault(pairing(a, m, self.sign), []).append((a, coef))
        out: dict = {}
        for n, terms in groups.items():
            if n == 0:
                for a, coef in terms:
                    _acc(out, a, coef)
                continue
            fp = self.power(n)
            for a, coef in terms:
                room = (T - a[0] - a[1]) // wdeg
                for j in range(min(room, len(fp) - 1) + 1):
                    cj = fp[j]
                    if _is_zero(cj):
                        continue
                    _acc(out, (a[0] + j * m[0], a[1] + j * m[1]), coef * cj)
        return {a: c for a, c in out.items() if not _is_zero(c)}

    def inverse(self) -> "Automorphism":
        return Automorphism(self.m, self.f.inverse(), self.sign)


def _acc(d: dict, key, val):
    cur = d.get(key)
    d[key] = val if cur is None else cur + val


def truncate(s: Series2, T: int) -> Series2:
    return {a: c for a, c in s.items() if a[0] + a[1] <= T}


@dataclass
class ScatteringDiagram:
    P1: TruncSeries
    P2: TruncSeries
    order: int
    rays: dict = field(default_factory=dict)    # direction -> TruncSeries in z

    def ray(self, direction) -> TruncSeries:
        m = primitive(direction)
        if m in self.rays:
            return self.rays[m]
        K = self.order // (m[0] + m[1])
        return TruncSeries.one(K)

    def coefficient(self, a1: int, a2: int):
        """Coefficient of x1^a1 x2^a2 on the ray through (a1, a2)."""
        if a1 + a2 > self.order:
            raise OrderExceeded(f"degree {a1 + a2} exceeds truncation order {self.order}")
        m = primitive((a1, a2))
        k = a1 // m[0]
        return self.ray(m)[k]

    def directions(self) -> list[tuple[int, int]]:
        return sorted(self.rays, key=lambda m: Fraction(m[1], m[0]))

    def ordered_product(self) -> list[Automorphism]:
        """Ray automorphisms in path order."""
        dirs = self.directions()
        if RAY_ORDER == "desc":
            dirs = dirs[::-1]
        return [Automorphism(m, self.rays[m]) for m in dirs]

    def to_json(self) -> list[dict]:
        out = []
        for m in self.directions():
            coeffs = []
            for k, c in enumerate(self.rays[m].coeffs):
                if k == 0 or _is_zero(c):
                    continue
                coeffs.append({"k": k, "value": _jsonable(c)})
            out.append({"direction": list(m), "coefficients": coeffs})
        return out

    def dumps(self) -> str:
        return json.dumps({"order": self.order, "rays": self.to_json()}, indent=1)


def _jsonable(c):
    if isinstance(c, PolyBCG):
        return c.to_json()
    return fraction_str(c)


# completion

def line_automorphisms(P1: TruncSeries, P2: TruncSeries):
    return Automorphism((1, 0), P1), Automorphism((0, 1), P2)


def _chain(auts, s: Series2, T: int) -> Series2:
    """(auts[0] o auts[1] o ... o auts[-1])(s): the last one is applied first."""
    for a in reversed(auts):
        s = a.apply(s, T)
    return s


def ray_target(P1: TruncSeries, P2: TruncSeries, T: int) -> tuple[Series2, Series2]:
    """Images of x1, x2 under the automorphism the rays must compose to."""
    A, B = line_automorphisms(P1, P2)
    if LINE_ORDER == "a":
        seq = [A.inverse(), B, A, B.inverse()]
    else:
        seq = [B.inverse(), A, B, A.inverse()]
    one = P1.coeffs[0] * 0 + 1
    return _chain(seq, {(1, 0): one}, T), _chain(seq, {(0, 1): one}, T)


def _inverse_product(rays: list[Automorphism], s: Series2, T: int) -> Series2:
    # Pi^{-1} = theta_r^{-1} o ... o theta_1^{-1}; theta_1^{-1} acts first
    for aut in rays:
        s = aut.inverse().apply(s, T)
    return s


def complete(P1: TruncSeries, P2: TruncSeries, N: int,
             progress: Callable[[int], None] | None = None) -> ScatteringDiagram:
    """Consistent completion of D(P1, P2) up to total degree N."""
    if N < 1:
        raise ValueError("order must be at least 1")
    for s in (P1, P2):
        if s.coeffs[0] != 1:
            raise ValueError("initial wall functions need constant term 1")
    P1 = _retruncate(P1, N)
    P2 = _retruncate(P2, N)
    T = N + 1
    R1, R2 = ray_target(P1, P2, T)
    diag = ScatteringDiagram(P1, P2, N)
    for k in range(2, N + 1):
        auts = diag.ordered_product()
        D1 = _inverse_product(auts, truncate(R1, k + 1), k + 1)
        D2 = _inverse_product(auts, truncate(R2, k + 1), k + 1)
        corrections = _read_defect(D1, D2, k)
        for m, (kk, c) in corrections.items():
            K = N // (m[0] + m[1])
            f = diag.rays.get(m, TruncSeries.one(K))
            bump = [0] * (K + 1)
            bump[0] = c * 0 + 1
            bump[kk] = c
            diag.rays[m] = f * TruncSeries(bump, K)
        if progress:
            progress(k)
    return diag


def _retruncate(s: TruncSeries, N: int) -> TruncSeries:
    coeffs = list(s.coeffs[: N + 1])
    zero = coeffs[0] * 0
    coeffs += [zero] * (N + 1 - len(coeffs))
    return TruncSeries(coeffs, N)


def _read_defect(D1: Series2, D2: Series2, k: int) -> dict:
    """Degree-k ray corrections from Pi^{-1} o R, which is the identity below degree k."""
    for (img, base) in ((D1, (1, 0)), (D2, (0, 1))):
        for a, c in img.items():
            deg = a[0] + a[1] - 1
            if deg == 0:
                if a != base or c != 1:
                    raise AssertionError(f"leading term of image broken at {a}")
            elif deg < k:
                raise AssertionError(f"unresolved defect at degree {deg} < {k}: {a}")
    out = {}
    alphas = set()
    for a in D1:
        if a[0] + a[1] == k + 1:
            alphas.add((a[0] - 1, a[1]))
    for a in D2:
        if a[0] + a[1] == k + 1:
            alphas.add((a[0], a[1] - 1))
    for alpha in alphas:
        c1 = D1.get((alpha[0] + 1, alpha[1]))
        c2 = D2.get((alpha[0], alpha[1] + 1))
        if alpha[0] < 0 or alpha[1] < 0:
            raise AssertionError(f"defect outside the first quadrant: {alpha}")
        m = primitive(alpha)
        if m[0] == 0 or m[1] == 0:
            raise AssertionError(f"defect on an axis direction {m}")
        kk = alpha[0] // m[0]
        s = PAIRING_SIGN
        # first order: theta(x1) = x1 (1 + s*m2*c z^kk), theta(x2) = x2 (1 - s*m1*c z^kk)
        from_1 = None if c1 is None else c1 / (s * m[1])
        from_2 = None if c2 is None else c2 / (-s * m[0])
        if from_1 is None or from_2 is None or from_1 != from_2:
            raise AssertionError(f"chart disagreement on direction {m}: {from_1} vs {from_2}")
        out[m] = (kk, from_1)
    return out


def verify_consistency(diag: ScatteringDiagram) -> bool:
    """Pi^{-1} o R is the identity on x1, x2 through total degree N."""
    T = diag.order + 1
    R1, R2 = ray_target(diag.P1, diag.P2, T)
    auts = diag.ordered_product()
    D1 = _inverse_product(auts, R1, T)
    D2 = _inverse_product(auts, R2, T)
    return _is_identity(D1, (1, 0)) and _is_identity(D2, (0, 1))


def _is_identity(D: Series2, base) -> bool:
    for a, c in D.items():
        if a == base:
            if c != 1:
                return False
        elif not _is_zero(c):
            return False
    return True


# standard diagrams

def poly_series(coeffs: dict[int, object], N: int) -> TruncSeries:
    out = [Fraction(0)] * (N + 1)
    for k, c in coeffs.items():
        if k <= N:
            out[k] = c
    return TruncSeries(out, N)


def cluster_diagram(b: int, c: int, N: int, progress=None) -> ScatteringDiagram:
    """D_(b,c) = D(1 + x1^b, 1 + x2^c)."""
    if b < 1 or c < 1:
        raise ValueError("b and c must be positive")
    return complete(poly_series({0: 1, b: 1}, N), poly_series({0: 1, c: 1}, N), N, progress)


def gps_diagram(c, b, N: int, progress=None) -> ScatteringDiagram:
    """D°_(c,b) = D((1+x1)^c, (1+x2)^b); b, c may be ints or the symbols 'b', 'c'."""
    P1 = _binomial_power(c, "c", N)
    P2 = _binomial_power(b, "b", N)
    return complete(P1, P2, N, progress)


def _binomial_power(val, name: str, N: int) -> TruncSeries:
    if isinstance(val, str):
        return TruncSeries([binom_poly(name, k) for k in range(N + 1)], N)
    from math import comb
    return TruncSeries([comb(val, k) for k in range(N + 1)], N)


def extract_tau(diag: ScatteringDiagram, b: int, c: int, i: int, j: int):
    """tau^{b,c}(i,j): coefficient of x1^{ib} x2^{jc} in D_(b,c)."""
    if i * b + j * c > diag.order:
        raise OrderExceeded(f"i*b + j*c = {i * b + j * c} exceeds order {diag.order}")
    return diag.coefficient(i * b, j * c)


def extract_rho(diag: ScatteringDiagram, a1: int, a2: int):
    """rho(a1, a2): coefficient of x1^a1 x2^a2 in D°."""
    return diag.coefficient(a1, a2)
