"""Exact scalar, polynomial and truncated power series arithmetic.

Scalars are :class:`fractions.Fraction`.  Multi-indices are plain tuples of
nonnegative ints.  Both container types below are immutable; every operation
returns a new object.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]
MultiIndex = tuple


# ---------------------------------------------------------------------------
# scalars and multi-indices
# ---------------------------------------------------------------------------

def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected; they would silently break exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_rational(q: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is one."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def pochhammer(a: Scalar, k: int) -> Fraction:
    """Rising factorial ``a (a+1) ... (a+k-1)``; equals 1 for ``k == 0``."""
    if k < 0:
        raise ValueError("pochhammer order must be nonnegative")
    a = as_rational(a)
    out = Fraction(1)
    for t in range(k):
        out *= a + t
    return out


def mi_abs(n: Sequence[int]) -> int:
    return sum(n)


def mi_factorial(n: Sequence[int]) -> int:
    out = 1
    for k in n:
        out *= math.factorial(k)
    return out


def mi_add(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def unit(d: int, i: int, sign: int = 1) -> tuple:
    """``sign * e_i`` in Z^d with 0-based ``i``."""
    e = [0] * d
    e[i] = sign
    return tuple(e)


def multi_indices(d: int, max_total: int) -> Iterator[tuple]:
    """All n in N_0^d with ``|n| <= max_total`` in graded lexicographic order."""
    for total in range(max_total + 1):
        yield from _compositions(total, d)


def _compositions(total: int, parts: int) -> Iterator[tuple]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def box(d: int, bound: int) -> Iterator[tuple]:
    """All points of ``{0, ..., bound}^d`` in lexicographic order."""
    return itertools.product(range(bound + 1), repeat=d)


# ---------------------------------------------------------------------------
# sparse multivariate polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Sparse polynomial over Q in ``dim`` variables.

    ``terms`` maps exponent tuples to nonzero Fractions.
    """

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[tuple, Scalar] | None = None):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        clean = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != dim or min(exp, default=0) < 0:
                raise ValueError(f"bad exponent {exp} for dimension {dim}")
            coef = as_rational(coef)
            if coef:
                clean[exp] = clean.get(exp, Fraction(0)) + coef
        self.dim = dim
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # constructors ---------------------------------------------------------

    @classmethod
    def _raw(cls, dim: int, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.dim = dim
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, dim: int, value: Scalar) -> "Polynomial":
        return cls(dim, {(0,) * dim: value})

    @classmethod
    def variable(cls, dim: int, i: int) -> "Polynomial":
        """The coordinate function ``x_{i+1}`` (0-based ``i``)."""
        return cls(dim, {unit(dim, i): 1})

    @classmethod
    def zero(cls, dim: int) -> "Polynomial":
        return cls._raw(dim, {})

    # basic protocol -------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.dim, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self.dim}, {self.to_string()!r})"

    def to_string(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.dim)]
        parts = []
        for exp in sorted(self._terms, key=lambda e: (sum(e), e)):
            coef = self._terms[exp]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, exp) if k
            )
            if not mono:
                parts.append(format_rational(coef))
            elif coef == 1:
                parts.append(mono)
            elif coef == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(coef)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.dim != self.dim:
                raise ValueError("dimension mismatch")
            return other
        return Polynomial.constant(self.dim, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial.zero(self.dim)
            return Polynomial._raw(
                self.dim, {e: c * other for e, c in self._terms.items()}
            )
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.dim, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = Polynomial.constant(self.dim, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # evaluation and shifts ------------------------------------------------

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = point[0]
        return poly_eval(self, point)

    def shift(self, s: Sequence[int]) -> "Polynomial":
        return poly_shift(self, s)

    # serialization --------------------------------------------------------

    def to_json(self) -> list:
        return [
            {"exp": list(e), "coef": format_rational(self._terms[e])}
            for e in sorted(self._terms)
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping], dim: int | None = None):
        data = list(data)
        if dim is None:
            if not data:
                raise ValueError("dimension needed for an empty polynomial")
            dim = len(data[0]["exp"])
        terms: dict = {}
        for item in data:
            exp = tuple(item["exp"])
            terms[exp] = terms.get(exp, 0) + as_rational(item["coef"])
        return cls(dim, terms)


def poly_eval(p: Polynomial, point: Sequence[Scalar]) -> Fraction:
    """Exact value of ``p`` at ``point``."""
    if len(point) != p.dim:
        raise ValueError("dimension mismatch")
    point = [as_rational(v) for v in point]
    total = Fraction(0)
    powers: list[dict] = [{0: Fraction(1)} for _ in point]
    for exp, coef in p.items():
        term = coef
        for i, k in enumerate(exp):
            if k:
                cache = powers[i]
                if k not in cache:
                    cache[k] = point[i] ** k
                term *= cache[k]
        total += term
    return total


def poly_shift(p: Polynomial, s: Sequence[int]) -> Polynomial:
    """The polynomial ``x -> p(x + s)``."""
    if len(s) != p.dim:
        raise ValueError("dimension mismatch")
    if not any(s):
        return p
    out: dict = {}
    for exp, coef in p.items():
        # expand prod_i (x_i + s_i)^{k_i} one coordinate at a time
        partial = {(): coef}
        for k, si in zip(exp, s):
            nxt = {}
            for head, c in partial.items():
                if si == 0 or k == 0:
                    nxt[head + (k,)] = c
                    continue
                for j in range(k + 1):
                    nxt[head + (j,)] = c * math.comb(k, j) * si ** (k - j)
            partial = nxt
        for e, c in partial.items():
            out[e] = out.get(e, 0) + c
    return Polynomial._raw(p.dim, {e: c for e, c in out.items() if c})


def falling_product(dim: int, i: int, k: int) -> Polynomial:
    """``(-x_i)_k = (-x_i)(1 - x_i)...(k - 1 - x_i)`` as a polynomial."""
    uni = [Fraction(1)]  # coefficients in x_i, ascending
    for t in range(k):
        # multiply by (t - x)
        nxt = [Fraction(0)] * (len(uni) + 1)
        for j, c in enumerate(uni):
            nxt[j] += t * c
            nxt[j + 1] -= c
        uni = nxt
    return Polynomial(dim, {unit(dim, i, j) if j else (0,) * dim: c
                            for j, c in enumerate(uni)})


def random_polynomial(rng, dim: int, max_degree: int, n_terms: int = 6,
                      max_num: int = 9) -> Polynomial:
    """A random polynomial with small rational coefficients (``rng``: random.Random)."""
    exps = list(multi_indices(dim, max_degree))
    terms = {}
    for _ in range(n_terms):
        e = rng.choice(exps)
        terms[e] = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_num))
    return Polynomial(dim, terms)


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------

class TruncatedSeries:
    """Formal power series in ``dim`` variables, kept up to total degree ``order``."""

    __slots__ = ("dim", "order", "_coeffs")

    def __init__(self, dim: int, order: int, coeffs: Mapping[tuple, Scalar] | None = None):
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.dim = dim
        self.order = order
        clean = {}
        for exp, c in (coeffs or {}).items():
            exp = tuple(exp)
            if len(exp) != dim:
                raise ValueError("dimension mismatch")
            c = as_rational(c)
            if c and sum(exp) <= order:
                clean[exp] = c
        self._coeffs = clean

    @classmethod
    def from_polynomial(cls, p: Polynomial, order: int) -> "TruncatedSeries":
        return cls(p.dim, order, p.terms)

    @property
    def coefficients(self) -> dict:
        return dict(self._coeffs)

    def __getitem__(self, exp) -> Fraction:
        return self._coeffs.get(tuple(exp), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.dim, self.order, self._coeffs) == (other.dim, other.order, other._coeffs)

    def __repr__(self) -> str:
        body = Polynomial(self.dim, self._coeffs).to_string(
            [f"z{i + 1}" for i in range(self.dim)])
        return f"TruncatedSeries({body} + O(|z|^{self.order + 1}))"

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return TruncatedSeries(self.dim, min(self.order, other.order), out)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return TruncatedSeries(self.dim, self.order,
                               {e: c * as_rational(other) for e, c in self._coeffs.items()})

    def __pow__(self, k: int) -> "TruncatedSeries":
        out = TruncatedSeries(self.dim, self.order, {(0,) * self.dim: 1})
        for _ in range(k):
            out = series_mul(out, self)
        return out


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at ``min(a.order, b.order)``."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")
    order = min(a.order, b.order)
    out: dict = {}
    b_items = sorted(b._coeffs.items(), key=lambda kv: sum(kv[0]))
    for e1, c1 in a._coeffs.items():
        room = order - sum(e1)
        if room < 0:
            continue
        for e2, c2 in b_items:
            if sum(e2) > room:
                break
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return TruncatedSeries(a.dim, order, out)


def series_negative_power(gamma: Scalar, d: int, order: int) -> TruncatedSeries:
    """``(1 - z_1 - ... - z_d)^(-gamma)`` with coefficients ``(gamma)_|k| / k!``."""
    gamma = as_rational(gamma)
    rising = [Fraction(1)]
    for t in range(order):
        rising.append(rising[-1] * (gamma + t))
    coeffs = {k: rising[sum(k)] / mi_factorial(k) for k in multi_indices(d, order)}
    return TruncatedSeries(d, order, coeffs)
