"""Wall-function coefficients from tight-grading counts.

Pipeline for a coprime slope (d, e):

    lambda  ->  rho_k   (wall of D°_(c,b) through (kd, ke))
            ->  tau_k   (wall of D_(b,c) through (kdb, kec)), a polynomial in b, c, g
            ->  tau_k(n), the coefficient of g^n.

Symbolic mode keeps g as a free variable. Numeric mode evaluates at integer
b, c with g = gcd(db, ec). The module also carries the closed formulas for
special slopes, the central-slope Lagrange series, chi extraction from the
functional equation, and the conjecture report driver.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd
from typing import Callable, Sequence

from .exact import (B, C, G, ONE, PolyBCG, TruncSeries, falling_binomial, fraction_str,
                    partitions_of, series_log, series_pow_frac)
from .gradings import lam, tau_by_counting
from .scatter import cluster_diagram, extract_tau, gps_diagram

BC = B * C


class ConsistencyError(AssertionError):
    """An internal identity that must hold exactly failed."""


def _require(cond: bool, msg: str):
    if not cond:
        raise ConsistencyError(msg)


# slope context

@dataclass(frozen=True)
class SlopeContext:
    """A coprime slope (d, e) with either numeric or symbolic b, c."""

    d: int
    e: int
    b: int | None = None     # None means symbolic
    c: int | None = None

    def __post_init__(self):
        if self.d < 1 or self.e < 1 or gcd(self.d, self.e) != 1:
            raise ValueError(f"(d, e) = ({self.d}, {self.e}) must be coprime positive integers")
        if (self.b is None) != (self.c is None):
            raise ValueError("b and c must both be numeric or both symbolic")
        if self.b is not None and (self.b < 1 or self.c < 1):
            raise ValueError("b and c must be positive")

    @property
    def symbolic(self) -> bool:
        return self.b is None

    @property
    def g(self):
        if self.symbolic:
            return G
        return gcd(self.d * self.b, self.e * self.c)

    @property
    def E(self) -> Fraction:
        if self.symbolic:
            raise ValueError("E is only formed at numeric b, c")
        b, c, d, e = self.b, self.c, self.d, self.e
        return Fraction(b * c * d * e - b * d * d - c * e * e, b * c)

    def numeric(self, b: int, c: int) -> "SlopeContext":
        return SlopeContext(self.d, self.e, b, c)

    def evaluate(self, poly: PolyBCG):
        """Specialise a symbolic result to this context (identity when symbolic)."""
        if self.symbolic:
            return poly
        return Fraction(poly.evaluate(self.b, self.c, self.g)) if isinstance(poly, PolyBCG) \
            else Fraction(poly)


@dataclass(frozen=True)
class TauSplit:
    k: int
    coeffs: tuple    # tau_k(1), ..., tau_k(k) as PolyBCG in b, c

    def __getitem__(self, n: int) -> PolyBCG:
        if not 1 <= n <= self.k:
            raise IndexError(n)
        return self.coeffs[n - 1]

    def reassemble(self) -> PolyBCG:
        out = PolyBCG()
        for n, t in enumerate(self.coeffs, 1):
            out = out + t * G ** n
        return out


# rho

def _binom(x, k: int):
    return falling_binomial(x, k) if k else ONE


@lru_cache(maxsize=None)
def _rho_symbolic(d: int, e: int, k: int) -> PolyBCG:
    out = PolyBCG()
    for P1 in partitions_of(k * d):
        for P2 in partitions_of(k * e):
            n = lam(P1, P2)
            if not n:
                continue
            term = PolyBCG.const(n)
            for p in P1:
                term = term * _binom(C, p)
            for q in P2:
                term = term * _binom(B, q)
            out = out + term
    _require(out.divides_monomial((1, 1, 0)), f"rho_{k} at ({d},{e}) is not divisible by bc")
    lead = out.coefficient((k * e, k * d, 0))
    _require(lead > 0, f"rho_{k} at ({d},{e}) lacks a positive b^{k * e} c^{k * d} term")
    _require(out.degree("b") == k * e and out.degree("c") == k * d,
             f"rho_{k} at ({d},{e}) has unexpected degrees")
    return out


def rho_k(ctx: SlopeContext, k: int):
    """rho(kd, ke) = sum lambda(P1, P2) prod binom(c, p) prod binom(b, q)."""
    if k < 1:
        raise ValueError("k must be positive")
    poly = _rho_symbolic(ctx.d, ctx.e, k)
    if ctx.symbolic:
        return poly
    return Fraction(poly.evaluate(ctx.b, ctx.c))


# tau

def _composition_sums(seq: Sequence[PolyBCG], K: int) -> dict[tuple[int, int], PolyBCG]:
    """``{(ell, k): sum over k1+...+k_ell = k of seq[k1]...seq[k_ell]}`` via powers of
    the generating series ``sum seq[k] t^k``."""
    R = TruncSeries([PolyBCG()] + [seq[k] for k in range(1, K + 1)], K)
    out = {}
    power = TruncSeries.one(K)
    for ell in range(1, K + 1):
        power = power * R
        for k in range(ell, K + 1):
            out[(ell, k)] = power[k] if isinstance(power[k], PolyBCG) else PolyBCG.const(power[k])
    return out


@lru_cache(maxsize=None)
def _tau_symbolic(d: int, e: int, K: int) -> tuple[PolyBCG, ...]:
    rhos = [None] + [_rho_symbolic(d, e, k) for k in range(1, K + 1)]
    sums = _composition_sums(rhos, K)
    taus = []
    for k in range(1, K + 1):
        tau = PolyBCG()
        for ell in range(1, k + 1):
            # binom(g/(bc), ell) * S = g (g - bc) ... (g - (ell-1) bc) * S / ((bc)^ell ell!)
            num = sums[(ell, k)]
            for m in range(ell):
                num = num * (G - m * BC)
            try:
                q = num.divide_exact(BC ** ell)
            except ArithmeticError as exc:
                raise ConsistencyError(f"bc^{ell} does not clear in tau_{k}") from exc
            tau = tau + q / factorial(ell)
        taus.append(tau)
    return tuple(taus)


def tau_series(ctx: SlopeContext, K: int) -> list:
    """tau_1, ..., tau_K along the slope; PolyBCG in symbolic mode, Fractions otherwise."""
    if K < 1:
        raise ValueError("K must be positive")
    taus = _tau_symbolic(ctx.d, ctx.e, K)
    if ctx.symbolic:
        return list(taus)
    return [ctx.evaluate(t) for t in taus]


def tau_series_expanded(d: int, e: int, K: int) -> list[PolyBCG]:
    """The second form: g * sum (g - bc)...(g - (ell-1)bc)/ell! * sum prod (rho/bc)."""
    scaled = [None] + [_rho_symbolic(d, e, k).div_monomial((1, 1, 0)) for k in range(1, K + 1)]
    sums = _composition_sums(scaled, K)
    out = []
    for k in range(1, K + 1):
        tau = PolyBCG()
        for ell in range(1, k + 1):
            coef = ONE
            for m in range(1, ell):
                coef = coef * (G - m * BC)
            tau = tau + G * coef * sums[(ell, k)] / factorial(ell)
        out.append(tau)
    return out


def tau_series_numeric_power(ctx: SlopeContext, K: int) -> list[Fraction]:
    """Numeric tau_k read off (sum rho_k t^k)^(g/(bc)), the change-of-lattice form."""
    if ctx.symbolic:
        raise ValueError("needs numeric b, c")
    f = TruncSeries([1] + [rho_k(ctx, k) for k in range(1, K + 1)], K)
    S = series_pow_frac(f, Fraction(ctx.g, ctx.b * ctx.c))
    return [S[k] for k in range(1, K + 1)]


# g-adic split

def tau_split(tau_k: PolyBCG, k: int, d: int | None = None, e: int | None = None) -> TauSplit:
    """Coefficients of g^1..g^k. With (d, e) given the degree and lead claims are asserted."""
    parts = tau_k.coeffs_in("g")
    _require(not parts.get(0), f"g does not divide tau_{k}")
    _require(max(parts) == k, f"tau_{k} has g-degree {max(parts)}")
    coeffs = tuple(parts.get(n, PolyBCG()) for n in range(1, k + 1))
    split = TauSplit(k, coeffs)
    if d is not None:
        for n, t in enumerate(coeffs, 1):
            db, dc = k * e - n, k * d - n
            _require(t.degree("b") == db and t.degree("c") == dc,
                     f"tau_{k}({n}) has degrees ({t.degree('b')}, {t.degree('c')}), expected ({db}, {dc})")
            _require(t.coefficient((db, dc, 0)) > 0, f"tau_{k}({n}) lead b^{db} c^{dc} not positive")
    return split


def tau_splits(ctx: SlopeContext, K: int) -> list[TauSplit]:
    taus = _tau_symbolic(ctx.d, ctx.e, K)
    return [tau_split(t, k, ctx.d, ctx.e) for k, t in enumerate(taus, 1)]


def tau_split_identity(ctx: SlopeContext, K: int) -> bool:
    """tau_k(n) = (1/n!) sum_{k1+...+kn=k} tau_k1(1)...tau_kn(1) for all n <= k <= K."""
    splits = tau_splits(ctx, K)
    firsts = [None] + [s[1] for s in splits]
    sums = _composition_sums(firsts, K)
    for k, s in enumerate(splits, 1):
        for n in range(1, k + 1):
            if s[n] != sums[(n, k)] / factorial(n):
                return False
    return True


def rho_from_tau(split: TauSplit) -> PolyBCG:
    """sum_n (bc)^n tau_k(n), i.e. tau_k at g = bc."""
    out = PolyBCG()
    for n, t in enumerate(split.coeffs, 1):
        out = out + t * BC ** n
    return out


# closed formulas

CLOSED_FORMULAS = ("C5", "C6", "C7", "C8", "C9", "C9alt", "C10")


def closed_formula(name: str, i: int, j: int, b=None, c=None):
    """tau(i, j) from a closed formula; symbolic in b, c, g unless b, c are given."""
    expected = {"C5": i == 1, "C6": j == 1, "C7": i == j, "C8": i == j,
                "C9": j == i - 1 and i >= 2, "C9alt": j == i - 1 and i >= 2,
                "C10": i == j - 1 and j >= 2}
    if name not in expected:
        raise ValueError(f"unknown formula {name}")
    if i < 1 or j < 1 or not expected[name]:
        raise ValueError(f"{name} does not apply to tau({i},{j})")
    bb, cc, g = B, C, G
    if name == "C5":
        val = (g * _binom(bb, j)).divide_exact(bb)
    elif name == "C6":
        val = (g * _binom(cc, i)).divide_exact(cc)
    elif name == "C7":
        X = (bb - 1) * (cc - 1) * i + g
        val = (g * _binom(X, i)).divide_exact(X)
    elif name == "C8":
        val = PolyBCG()
        top = (bb * cc - bb - cc) * i + g - 1
        for ell in range(i):
            val = val + g * comb(i - 1, ell) * _binom(top, ell) / (ell + 1)
    elif name == "C9":
        Y = bb * i - i + 1
        val = (g * _binom(Y * (cc - 1), i - 1)).divide_exact(Y * i)
    elif name == "C9alt":
        Y = (bb - 1) * i + 1
        val = (g * _binom((bb - 1) * (cc - 1) * i + cc - 1, i - 1)).divide_exact(Y * i)
    else:
        Y = cc * j - j + 1
        val = (g * _binom(Y * (bb - 1), j - 1)).divide_exact(Y * j)
    if b is None:
        return val
    gv = gcd(i * b, j * c) // gcd(i, j)
    return Fraction(val.evaluate(b, c, gv))


def applicable_formulas(i: int, j: int) -> list[str]:
    out = []
    for name in CLOSED_FORMULAS:
        try:
            closed_formula(name, i, j)
        except ValueError:
            continue
        out.append(name)
    return out


def check_c9_forms(imax: int = 6) -> bool:
    return all(closed_formula("C9", i, i - 1) == closed_formula("C9alt", i, i - 1)
               for i in range(2, imax + 1))


# central slope

def central_series(b: int, c: int, g: int, K: int) -> TruncSeries:
    """S_(1,1)(t) = sum tau(i,i) t^i from the Lagrange closed form.

    Coefficient i is n/((m-1)i + n) * binom(mi + n - 1, i) with m = (b-1)(c-1),
    n = g. The result is checked against fixed-point iteration of
    F = (1 - t F^((m-1)/n))^(-n).
    """
    if K < 0:
        raise ValueError("K must be nonnegative")
    m, n = (b - 1) * (c - 1), g
    coeffs = []
    for i in range(K + 1):
        den = (m - 1) * i + n
        if den:
            coeffs.append(Fraction(n, den) * falling_binomial(m * i + n - 1, i))
        else:
            # binom(mi+n-1, i)/((m-1)i+n) = binom(mi+n, i)/(mi+n)
            coeffs.append(Fraction(n, m * i + n) * falling_binomial(m * i + n, i))
    F = TruncSeries(coeffs, K)
    _require(F == _central_fixed_point(m, n, K), "Lagrange series disagrees with the fixed point")
    return F


def _central_fixed_point(m: int, n: int, K: int) -> TruncSeries:
    F = TruncSeries.one(K)
    t = TruncSeries.t(K)
    for _ in range(K + 1):
        F = series_pow_frac(1 - t * series_pow_frac(F, Fraction(m - 1, n)), -n)
    return F


# chi extraction

def wall_function(ctx: SlopeContext, K: int) -> TruncSeries:
    """f_(d,e)(t): the D°_(c,b) wall through (d, e) with x1^d x2^e -> t."""
    if ctx.symbolic:
        raise ValueError("needs numeric b, c")
    diag = gps_diagram(ctx.c, ctx.b, K * (ctx.d + ctx.e))
    coeffs = [1] + [diag.coefficient(k * ctx.d, k * ctx.e) for k in range(1, K + 1)]
    return TruncSeries(coeffs, K)


def _neg_log_one_minus(h: TruncSeries) -> TruncSeries:
    return -series_log(1 - h)


def chi_extract(ctx: SlopeContext, K: int, f: TruncSeries | None = None) -> list[Fraction]:
    """chi(1..K) from f = prod_k (1 - (t f^E)^k)^(-k chi(k)).

    Taking logs, log f = sum_k k chi(k) L_k with L_k = -log(1 - h^k),
    h = t f^E, and L_k = t^k + O(t^(k+1)), so chi is read off order by order.
    """
    if f is None:
        f = wall_function(ctx, K)
    if f.order != K:
        raise ValueError("f must be truncated at order K")
    h = TruncSeries.t(K) * series_pow_frac(f, ctx.E)
    resid = series_log(f)
    chis = []
    for k in range(1, K + 1):
        Lk = _neg_log_one_minus(h ** k)
        chi = Fraction(resid[k]) / k
        if chi.denominator != 1:
            raise ConsistencyError(f"chi({k}) = {chi} is not an integer; convention mismatch")
        chis.append(chi)
        resid = resid - Lk * (k * chi)
    _require(all(x == 0 for x in resid), "log residual did not vanish")
    _require(rebuild_from_chi(ctx.E, chis, K) == f, "rebuild from chi does not reproduce f")
    return chis


def rebuild_from_chi(E: Fraction, chis: Sequence[Fraction], K: int) -> TruncSeries:
    """Solve f = prod (1 - (t f^E)^k)^(-k chi(k)) by fixed-point iteration."""
    t = TruncSeries.t(K)
    f = TruncSeries.one(K)
    for _ in range(K + 1):
        h = t * series_pow_frac(f, E)
        nxt = TruncSeries.one(K)
        for k, chi in enumerate(chis, 1):
            if chi:
                nxt = nxt * series_pow_frac(1 - h ** k, -k * chi)
        f = nxt
    return f


# oracle agreement

def triple_agreement(b: int, c: int, max_degree: int = 12, diag=None) -> list[dict]:
    """Every tau(i, j) with ib + jc <= max_degree by scattering, counting, closed
    formula and the symbolic pipeline."""
    if diag is None:
        diag = cluster_diagram(b, c, max_degree)
    rows = []
    for i in range(1, max_degree // b + 1):
        for j in range(1, (max_degree - i * b) // c + 1):
            k = gcd(i, j)
            ctx = SlopeContext(i // k, j // k, b, c)
            row = {"i": i, "j": j,
                   "scatter": Fraction(extract_tau(diag, b, c, i, j)),
                   "counting": Fraction(tau_by_counting(b, c, i, j)),
                   "pipeline": tau_series(ctx, k)[k - 1],
                   "formulas": {n: closed_formula(n, i, j, b, c) for n in applicable_formulas(i, j)}}
            vals = {row["scatter"], row["counting"], row["pipeline"], *row["formulas"].values()}
            row["agree"] = len(vals) == 1
            rows.append(row)
    return rows


# conjecture report

@dataclass
class VerifyConfig:
    kmax: int = 3
    slopes: tuple = ((1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2))
    formula_cells: int = 4          # i (or j) range for C5-C10
    c13_jmax: int = 3
    numeric_bc: tuple = ((1, 5), (2, 2), (2, 3), (3, 3))
    empirical_degree: int = 8
    conjectures: tuple | None = None    # None runs all
    jobs: int = 1


@dataclass
class ReportRow:
    conjecture: str
    params: str
    status: str                     # PASS, FAIL or EMPIRICAL-PASS / EMPIRICAL-FAIL
    witness: str = ""


@dataclass
class Report:
    rows: list = field(default_factory=list)

    @property
    def gated_ok(self) -> bool:
        return all(r.status != "FAIL" for r in self.rows)

    def for_conjecture(self, name: str) -> list[ReportRow]:
        return [r for r in self.rows if r.conjecture == name]

    def to_json(self) -> str:
        return json.dumps({"schema": 1, "rows": [r.__dict__ for r in self.rows]}, indent=1)

    def table(self) -> str:
        w = max([len(r.params) for r in self.rows] + [6])
        lines = [f"{'conj':<6} {'params':<{w}} {'status':<15} witness"]
        for r in self.rows:
            lines.append(f"{r.conjecture:<6} {r.params:<{w}} {r.status:<15} {r.witness}")
        return "\n".join(lines)


def _status(ok: bool, empirical: bool = False) -> str:
    base = "PASS" if ok else "FAIL"
    return f"EMPIRICAL-{base}" if empirical else base


def c13_rhs(j: int) -> Fraction:
    return Fraction(sum(comb(ell, j - ell + 1) * comb(j + ell - 1, ell) for ell in range(j + 2)), j)


def _slope_k(cfg: VerifyConfig, d: int, e: int) -> int:
    # the (2,3)/(3,2) tables at k = 3 take seconds, larger slopes stop at k = 2
    return cfg.kmax if d + e <= 5 else min(cfg.kmax, 2)


def _check_c1_c3(cfg: VerifyConfig, d: int, e: int) -> list[ReportRow]:
    rows = []
    ctx = SlopeContext(d, e)
    K = _slope_k(cfg, d, e)
    taus = tau_series(ctx, K)
    for k, t in enumerate(taus, 1):
        par = f"(i,j)=({k * d},{k * e})"
        parts = t.coeffs_in("g")
        rows.append(ReportRow("C1", par, _status(True), f"{len(t.terms)} terms in Q[b,c,g]"))
        rows.append(ReportRow("C2", par, _status(not parts.get(0) and t.degree("g") == k),
                              f"deg_g={t.degree('g')}"))
        try:
            split = tau_split(t, k, d, e)
            ok = True
        except ConsistencyError as exc:
            split, ok = None, False
            rows.append(ReportRow("C3", par, "FAIL", str(exc)))
        if ok:
            t1 = split[1]
            rows.append(ReportRow("C3", par, _status(True),
                                  f"deg_b={t1.degree('b')} deg_c={t1.degree('c')}"))
            for n in range(1, k + 1):
                rows.append(ReportRow("C14", f"{par} n={n}", _status(True),
                                      f"deg_b={split[n].degree('b')} deg_c={split[n].degree('c')}"))
        if ok and gcd(d, e) == 1:
            lhs = split[k]
            rhs = split.coeffs[0] if k == 1 else tau_splits(ctx, 1)[0][1] ** k / factorial(k)
            rows.append(ReportRow("C15", par, _status(lhs == rhs), "tau(ik,jk;k) = tau(i,j;1)^k/k!"))
    return rows


def _check_c16_c18(cfg: VerifyConfig, d: int, e: int) -> list[ReportRow]:
    rows = []
    ctx = SlopeContext(d, e)
    K = _slope_k(cfg, d, e)
    if K < 2:
        return rows
    splits = tau_splits(ctx, K)
    t1, t2 = splits[0][1], splits[1][1]
    # n = k - 1 in the split identity: tau_k(k-1) (k-2)! = tau_1(1)^(k-2) tau_2(1)
    for k in range(2, K + 1):
        lhs = splits[k - 1][k - 1] * factorial(k - 2)
        ok = lhs == t1 ** (k - 2) * t2
        rows.append(ReportRow("C18", f"(d,e)=({d},{e}) k={k}", _status(ok), "factor p = tau(2d,2e;1)"))
    if d == 1 or e == 1:
        name = "C16" if d == 1 else "C17"
        try:
            p = t2.divide_exact(t1)
            ok, wit = True, f"p={p}"
        except ArithmeticError:
            ok, wit = False, "tau(1,j;1) does not divide tau(2,2j;1)"
        if ok:
            for k in range(2, K + 1):
                lhs = splits[k - 1][k - 1] * factorial(k - 2)
                ok = ok and lhs == t1 ** (k - 1) * p
        rows.append(ReportRow(name, f"(d,e)=({d},{e}) k<={K}", _status(ok), wit))
    return rows


def _check_formulas(cfg: VerifyConfig) -> list[ReportRow]:
    rows = []
    n = cfg.formula_cells
    cells = [("C5", 1, j) for j in range(1, n + 1)] + [("C6", i, 1) for i in range(1, n + 1)]
    cells += [(name, i, i) for name in ("C7", "C8") for i in range(1, cfg.kmax + 1)]
    cells += [(name, i, i - 1) for name in ("C9", "C9alt") for i in range(2, n + 1)]
    cells += [("C10", j - 1, j) for j in range(2, n + 1)]
    for name, i, j in cells:
        k = gcd(i, j)
        pipe = tau_series(SlopeContext(i // k, j // k), k)[k - 1]
        val = closed_formula(name, i, j)
        rows.append(ReportRow(name, f"tau({i},{j})", _status(val == pipe), "symbolic pipeline"))
    return rows


def _check_c13(cfg: VerifyConfig) -> list[ReportRow]:
    jmax = cfg.c13_jmax
    diag = cluster_diagram(1, 5, 7 * jmax)
    rows = []
    for j in range(1, jmax + 1):
        lhs = Fraction(extract_tau(diag, 1, 5, 2 * j, j))
        rhs = c13_rhs(j)
        rows.append(ReportRow("C13", f"j={j}", _status(lhs == rhs), f"{fraction_str(lhs)} vs {fraction_str(rhs)}"))
    return rows


def _empirical_cells(cfg: VerifyConfig) -> list[tuple[int, int, int]]:
    out = []
    for d, e in cfg.slopes:
        for k in range(1, _slope_k(cfg, d, e) + 1):
            if k * (d + e) - 1 <= cfg.empirical_degree:
                out.append((d, e, k))
    return out


def _check_c4(cfg: VerifyConfig) -> list[ReportRow]:
    rows = []
    for d, e, k in _empirical_cells(cfg):
        t = tau_series(SlopeContext(d, e), k)[k - 1]
        ok = (t * factorial(max(k * d, k * e))).is_integral()
        rows.append(ReportRow("C4", f"tau({k * d},{k * e})", _status(ok, True), "max(i,j)! tau integral"))
    return rows


def binomial_basis(values: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients a_k with P(x) = sum a_k binom(x, k), from P(0), P(1), ... by differences."""
    vals = list(values)
    out = []
    while vals:
        out.append(vals[0])
        vals = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _univariate_bb(t: PolyBCG) -> list[Fraction]:
    """Monomial coefficients of tau at c = b, g = b."""
    x = t.evaluate(B, B, B)
    if not isinstance(x, PolyBCG):
        return [Fraction(x)]
    deg = x.degree("b")
    return [x.coefficient((p, 0, 0)) for p in range(deg + 1)]


def _strip_zeros(seq: Sequence[Fraction]) -> list[Fraction]:
    s = list(seq)
    while s and s[0] == 0:
        s.pop(0)
    while s and s[-1] == 0:
        s.pop()
    return s


def _is_unimodal(seq: Sequence[Fraction]) -> bool:
    s = list(seq)
    k = 0
    while k + 1 < len(s) and s[k + 1] >= s[k]:
        k += 1
    return all(s[i + 1] <= s[i] for i in range(k, len(s) - 1))


def _is_log_concave(seq: Sequence[Fraction]) -> bool:
    return all(seq[i] ** 2 >= seq[i - 1] * seq[i + 1] for i in range(1, len(seq) - 1))


def _check_c11_c12(cfg: VerifyConfig) -> list[ReportRow]:
    rows = []
    for d, e, k in _empirical_cells(cfg):
        i, j = k * d, k * e
        t = tau_series(SlopeContext(d, e), k)[k - 1]
        mono = _univariate_bb(t)
        deg = len(mono) - 1
        # evaluate at b = 0..deg+1 to get the binomial-basis coefficients
        vals = []
        for bval in range(deg + 2):
            vals.append(sum(cf * bval ** p for p, cf in enumerate(mono)))
        basis = binomial_basis(vals)
        ok11 = deg == i + j - 1 and all(a >= 0 for a in basis)
        rows.append(ReportRow("C11", f"tau^(b,b)({i},{j})", _status(ok11, True),
                              f"deg={deg} basis={[fraction_str(a) for a in basis]}"))
        inner = _strip_zeros(basis)
        ok12 = _is_unimodal(inner) and _is_log_concave(inner) and all(a > 0 for a in inner)
        rows.append(ReportRow("C12", f"tau^(b,b)({i},{j})", _status(ok12, True),
                              "binomial-basis coefficients"))
    return rows


def _check_numeric(cfg: VerifyConfig) -> list[ReportRow]:
    rows = []
    for b, c in cfg.numeric_bc:
        for r in triple_agreement(b, c, 12):
            rows.append(ReportRow("C1", f"b={b} c={c} tau({r['i']},{r['j']})", _status(r["agree"]),
                                  f"scatter={fraction_str(r['scatter'])} counting={fraction_str(r['counting'])}"))
    return rows


def _task(job):
    kind, args, cfg = job
    return _TASKS[kind](cfg, *args)


_TASKS: dict[str, Callable] = {
    "c1c3": _check_c1_c3,
    "c16c18": _check_c16_c18,
    "formulas": lambda cfg: _check_formulas(cfg),
    "c13": lambda cfg: _check_c13(cfg),
    "c4": lambda cfg: _check_c4(cfg),
    "c11c12": lambda cfg: _check_c11_c12(cfg),
    "numeric": lambda cfg: _check_numeric(cfg),
}

_TASK_CONJ = {
    "c1c3": {"C1", "C2", "C3", "C14", "C15"},
    "c16c18": {"C16", "C17", "C18"},
    "formulas": {"C5", "C6", "C7", "C8", "C9", "C10"},
    "c13": {"C13"},
    "c4": {"C4"},
    "c11c12": {"C11", "C12"},
    "numeric": {"C1"},
}


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("SCATTERKIT_JOBS", "1")))
    except ValueError:
        return 1


def verify_conjectures(cfg: VerifyConfig | None = None) -> Report:
    """Run the requested checks. Failures are report rows, never exceptions."""
    cfg = cfg or VerifyConfig()
    wanted = set(cfg.conjectures) if cfg.conjectures else None
    jobs = []
    for kind, conj in _TASK_CONJ.items():
        if wanted is not None and not (conj & wanted):
            continue
        if kind in ("c1c3", "c16c18"):
            jobs.extend((kind, s, cfg) for s in cfg.slopes)
        else:
            jobs.append((kind, (), cfg))
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_task, jobs))
    else:
        results = [_task(j) for j in jobs]
    report = Report()
    for rows in results:
        for r in rows:
            if wanted is None or r.conjecture in wanted or (r.conjecture == "C9alt" and "C9" in wanted):
                report.rows.append(r)
    return report


# exports

def value_str(v) -> str:
    """Polynomials as text, integers bare, other rationals as a/b."""
    if isinstance(v, PolyBCG):
        return str(v)
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else fraction_str(v)


def value_json(v):
    if isinstance(v, PolyBCG):
        return v.to_json()
    return fraction_str(v)


def export_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([value_str(r[c]) if not isinstance(r[c], (int, str)) else r[c] for c in columns])
    return buf.getvalue().rstrip("\n")
