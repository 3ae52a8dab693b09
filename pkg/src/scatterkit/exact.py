"""Exact arithmetic layer: rationals, polynomials in b, c, g, partitions and
truncated power series.

Everything here is exact. Rationals are :class:`fractions.Fraction`; the
polynomial ring is a sparse dictionary keyed by exponent triples.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Sequence, Union

Rational = Fraction

VARS = ("b", "c", "g")
_VAR_INDEX = {"b": 0, "c": 1, "g": 2}

Scalar = Union[int, Fraction]


class PolyBCG:
    """Polynomial in the formal variables b, c, g with rational coefficients.

    Stored as ``{(deg_b, deg_c, deg_g): Fraction}`` with no zero entries.
    Instances are treated as immutable.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, coef in terms.items():
                if coef:
                    clean[tuple(mono)] = Fraction(coef)
        self.terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def const(cls, value: Scalar) -> "PolyBCG":
        return cls({(0, 0, 0): value})

    @classmethod
    def var(cls, name: str) -> "PolyBCG":
        mono = [0, 0, 0]
        mono[_VAR_INDEX[name]] = 1
        return cls({tuple(mono): 1})

    @staticmethod
    def _coerce(other) -> "PolyBCG":
        if isinstance(other, PolyBCG):
            return other
        if isinstance(other, (int, Fraction)):
            return PolyBCG.const(other)
        return NotImplemented

    # ring operations

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for mono, coef in other.terms.items():
            v = out.get(mono, 0) + coef
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return _raw({})
            return _raw({m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for (a0, a1, a2), ca in self.terms.items():
            for (b0, b1, b2), cb in other.terms.items():
                key = (a0 + b0, a1 + b1, a2 + b2)
                out[key] = out.get(key, 0) + ca * cb
        return _raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of PolyBCG by zero")
            inv = Fraction(1) / other
            return _raw({m: c * inv for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.divide_exact(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = PolyBCG.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # queries

    def is_constant(self) -> bool:
        return all(m == (0, 0, 0) for m in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0, 0, 0), Fraction(0))

    def degree(self, var: str | None = None) -> int:
        """Degree in one variable, or total degree. The zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(m) for m in self.terms)
        idx = _VAR_INDEX[var]
        return max(m[idx] for m in self.terms)

    def coefficient(self, mono: tuple[int, int, int]) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def coeffs_in(self, var: str) -> dict[int, "PolyBCG"]:
        """Split as a polynomial in ``var``: ``{power: coefficient polynomial}``."""
        idx = _VAR_INDEX[var]
        out: dict[int, dict] = {}
        for mono, coef in self.terms.items():
            m = list(mono)
            p = m[idx]
            m[idx] = 0
            out.setdefault(p, {})[tuple(m)] = coef
        return {p: _raw(t) for p, t in out.items()}

    def evaluate(self, b=None, c=None, g=None):
        """Substitute values (numbers or PolyBCG) for any subset of variables."""
        vals = (b, c, g)
        out = PolyBCG()
        for mono, coef in self.terms.items():
            term = PolyBCG.const(coef)
            rest = [0, 0, 0]
            for i, e in enumerate(mono):
                if vals[i] is None:
                    rest[i] = e
                elif e:
                    term = term * (vals[i] ** e)
            out = out + term * _raw({tuple(rest): Fraction(1)})
        if out.is_constant():
            return out.constant_value()
        return out

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def divides_monomial(self, mono: tuple[int, int, int]) -> bool:
        return all(all(m[i] >= mono[i] for i in range(3)) for m in self.terms)

    def div_monomial(self, mono: tuple[int, int, int]) -> "PolyBCG":
        if not self.divides_monomial(mono):
            raise ArithmeticError(f"{self} is not divisible by monomial {mono}")
        return _raw({(m[0] - mono[0], m[1] - mono[1], m[2] - mono[2]): c
                     for m, c in self.terms.items()})

    def leading_term(self) -> tuple[tuple[int, int, int], Fraction]:
        """Largest monomial in lex order (g, b, c)."""
        mono = max(self.terms, key=lambda m: (m[2], m[0], m[1]))
        return mono, self.terms[mono]

    def divide_exact(self, other: "PolyBCG") -> "PolyBCG":
        """Exact quotient ``self / other``; raises ArithmeticError on a remainder."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        key = lambda m: (m[2], m[0], m[1])
        lead_m, lead_c = other.leading_term()
        rem = self
        quot: dict = {}
        while rem:
            m, cm = rem.leading_term()
            if not all(m[i] >= lead_m[i] for i in range(3)):
                raise ArithmeticError(f"{self} is not divisible by {other}")
            qm = (m[0] - lead_m[0], m[1] - lead_m[1], m[2] - lead_m[2])
            qc = cm / lead_c
            quot[qm] = quot.get(qm, 0) + qc
            rem = rem - other * _raw({qm: qc})
            if rem and key(rem.leading_term()[0]) >= key(m):
                raise ArithmeticError("division did not make progress")
        return _raw({m: c for m, c in quot.items() if c})

    # display

    def __repr__(self):
        return f"PolyBCG({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (-sum(m), m), reverse=False):
            coef = self.terms[mono]
            factors = []
            for name, e in zip(VARS, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(coef))
            elif coef == 1:
                parts.append(body)
            elif coef == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{coef}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        """Sorted monomial list ``[{db, dc, dg, coef}]`` with ``num/den`` coefficients."""
        return [{"db": m[0], "dc": m[1], "dg": m[2], "coef": fraction_str(self.terms[m])}
                for m in sorted(self.terms)]

    @classmethod
    def from_json(cls, items: Iterable[dict]) -> "PolyBCG":
        return cls({(it["db"], it["dc"], it["dg"]): parse_fraction(it["coef"]) for it in items})


def _raw(terms: dict) -> PolyBCG:
    p = PolyBCG.__new__(PolyBCG)
    p.terms = terms
    p._hash = None
    return p


B = PolyBCG.var("b")
C = PolyBCG.var("c")
G = PolyBCG.var("g")
ONE = PolyBCG.const(1)


def fraction_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def falling_binomial(x, k: int):
    """``x (x-1) ... (x-k+1) / k!`` for any ring element x (int, Fraction, PolyBCG)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = 1
    for i in range(k):
        out = out * (x - i)
    if isinstance(out, PolyBCG):
        return out / factorial(k)
    return Fraction(out, 1) / factorial(k)


def binom_poly(variable: str, k: int) -> PolyBCG:
    """The binomial polynomial ``v choose k`` in one of b, c, g."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return falling_binomial(PolyBCG.var(variable), k) if k else PolyBCG.const(1)


def multinomial_mu(z, parts: Sequence[int]):
    """``z (z-1) ... (z-l+1) / prod(m!)`` over the multiplicities m of ``parts``."""
    ell = len(parts)
    num = 1
    for i in range(ell):
        num = num * (z - i)
    den = 1
    for m in multiplicities(parts):
        den *= factorial(m)
    if isinstance(num, PolyBCG):
        return num / den
    return Fraction(num, den)


# partitions

class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_weights(cls, weights: Iterable[int]) -> "Partition":
        return cls(sorted((w for w in weights if w), reverse=True))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> tuple[int, ...]:
        return multiplicities(self)

    def __repr__(self):
        return "(" + ",".join(map(str, self)) + ")"


def multiplicities(parts: Sequence[int]) -> tuple[int, ...]:
    """Multiplicities of the distinct parts, in decreasing part order."""
    out = []
    prev = None
    for p in sorted(parts, reverse=True):
        if p == prev:
            out[-1] += 1
        else:
            out.append(1)
            prev = p
    return tuple(out)


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order ((n) first, (1,...,1) last)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [Partition(p) for p in _partitions(n, n)]


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` nonnegative entries."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


# truncated power series

def _zero_like(x):
    return x * 0 if isinstance(x, PolyBCG) else Fraction(0)


class TruncSeries:
    """Power series ``sum_{k<=N} a_k t^k`` truncated at order N.

    Coefficients are Fractions or PolyBCG. Binary operations require equal
    truncation orders.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        coeffs = coeffs[: order + 1]
        coeffs = [c if isinstance(c, PolyBCG) else Fraction(c) for c in coeffs]
        while len(coeffs) < order + 1:
            coeffs.append(Fraction(0))
        self.coeffs = tuple(coeffs)
        self.order = order

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls([1], order)

    @classmethod
    def t(cls, order: int) -> "TruncSeries":
        return cls([0, 1], order)

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other: "TruncSeries"):
        if not isinstance(other, TruncSeries):
            raise TypeError(f"expected TruncSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise ValueError(f"mixed truncation orders {self.order} and {other.order}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, PolyBCG)):
            return TruncSeries([self.coeffs[0] + other] + list(self.coeffs[1:]), self.order)
        self._check(other)
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PolyBCG)):
            return TruncSeries([a * other for a in self.coeffs], self.order)
        self._check(other)
        n = self.order
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = 0
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return TruncSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self):
        return f"TruncSeries({[str(c) for c in self.coeffs]})"

    def scale(self, k: int) -> "TruncSeries":
        """Substitute t -> t^k (truncated at the same order)."""
        out = [Fraction(0)] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if i * k > self.order:
                break
            out[i * k] = a
        return TruncSeries(out, self.order)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by t^k."""
        return TruncSeries([0] * k + list(self.coeffs), self.order)

    def inverse(self) -> "TruncSeries":
        if self.coeffs[0] != 1:
            raise ValueError("only unit series with constant term 1 are inverted")
        a = self.coeffs
        out = [a[0] * 0 + 1]
        for k in range(1, self.order + 1):
            acc = 0
            for i in range(1, k + 1):
                if a[i]:
                    acc = acc + a[i] * out[k - i]
            out.append(-acc)
        return TruncSeries(out, self.order)


def _require_unit(s: TruncSeries):
    if s.coeffs[0] != 1:
        raise ValueError("series must have constant term 1")


def series_pow_frac(s: TruncSeries, alpha) -> TruncSeries:
    """``s ** alpha`` for a unit series and a rational (or ring) exponent.

    Uses the recurrence ``n p_n = sum_k ((alpha+1) k - n) s_k p_{n-k}``.
    """
    _require_unit(s)
    if not isinstance(alpha, PolyBCG):
        alpha = Fraction(alpha)
    a = s.coeffs
    p = [a[0] * 0 + 1]
    for n in range(1, s.order + 1):
        acc = 0
        for k in range(1, n + 1):
            if a[k]:
                acc = acc + ((alpha + 1) * k - n) * a[k] * p[n - k]
        p.append(acc / n if isinstance(acc, PolyBCG) else Fraction(acc) / n)
    return TruncSeries(p, s.order)


def series_pow_binomial(s: TruncSeries, alpha) -> TruncSeries:
    """``sum_l binom(alpha, l) (s - 1)^l``; the defining expansion, O(N^4)."""
    _require_unit(s)
    x = s - 1
    out = TruncSeries.one(s.order)
    term = TruncSeries.one(s.order)
    for ell in range(1, s.order + 1):
        term = term * x
        out = out + term * falling_binomial(alpha, ell)
    return out


def series_log(s: TruncSeries) -> TruncSeries:
    _require_unit(s)
    a = s.coeffs
    out = [_zero_like(a[0])]
    for n in range(1, s.order + 1):
        acc = a[n]
        for k in range(1, n):
            if out[k] and a[n - k]:
                acc = acc - Fraction(k, n) * out[k] * a[n - k]
        out.append(acc)
    return TruncSeries(out, s.order)


def series_exp(s: TruncSeries) -> TruncSeries:
    if s.coeffs[0] != 0:
        raise ValueError("exp requires a series with zero constant term")
    a = s.coeffs
    out = [a[0] * 0 + 1]
    for n in range(1, s.order + 1):
        acc = 0
        for k in range(1, n + 1):
            if a[k]:
                acc = acc + Fraction(k, n) * a[k] * out[n - k]
        out.append(acc)
    return TruncSeries(out, s.order)


def compositions_positive(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in compositions_positive(total - first, parts - 1):
            yield (first,) + rest
