"""Weighted inner products of Meixner polynomials over the lattice N_0^d.

Partial sums are exact rationals accumulated shell by shell (``|x| = k``).
The omitted tail is bounded by a geometric majorant: with
``|P_n(x)| <= K_n (1 + |x|)^deg P_n`` and ``sum_{|x|=k} W(x) = (beta)_k |c|^k / k!``
the shell contributions are dominated by ``S_k = K_n K_m (1+k)^D (beta)_k |c|^k / k!``,
whose successive ratios are bounded by a nonincreasing sequence ``rho_k``.
Once ``rho_{X+1} < 1`` the tail after shell ``X`` is at most
``S_{X+1} / (1 - rho_{X+1})``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .algebra import (
    Polynomial,
    Scalar,
    as_rational,
    format_rational,
    mi_factorial,
    multi_indices,
    pochhammer,
)
from .parameters import ParameterError, ZeroParameter
from .polynomials import MeixnerSpec, hypergeometric_polynomial
from .report import VerificationReport

PRECISION_ENV = "MEIXNER_PRECISION"
DEFAULT_CAP = 1000


class PreconditionViolated(ParameterError):
    pass


class NoConvergence(RuntimeError):
    pass


@dataclass(frozen=True)
class InnerProductResult:
    value: Fraction
    truncation: int
    tail_estimate: Fraction | None
    converged: bool

    def to_json(self) -> dict:
        return {
            "value": format_rational(self.value),
            "value_float": float(self.value),
            "truncation": self.truncation,
            "tail_estimate": None if self.tail_estimate is None else float(self.tail_estimate),
            "converged": self.converged,
        }


def weight(spec: MeixnerSpec, x: Sequence[int]) -> Fraction:
    """``(beta)_|x| prod_i c_i^x_i / x_i!``."""
    out = pochhammer(spec.beta, sum(x))
    for ci, xi in zip(spec.point.c, x):
        out *= ci ** xi / math.factorial(xi)
    return out


def check_positive_region(spec: MeixnerSpec) -> None:
    c = spec.point.c
    if spec.beta <= 0 or any(ci <= 0 for ci in c) or sum(c) >= 1:
        raise PreconditionViolated(
            "orthogonality sums need beta > 0, all c_i > 0 and |c| < 1")


def _shell(d: int, k: int):
    if d == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _shell(d - 1, k - first):
            yield (first,) + rest


class _IntegerPoly:
    """``P = numer / den`` with integer coefficients for fast lattice evaluation."""

    def __init__(self, p: Polynomial):
        self.den = math.lcm(*(c.denominator for _, c in p.items())) if p else 1
        self.terms = [(e, int(c * self.den)) for e, c in p.items()]
        self.abs_sum = sum((abs(c) for _, c in p.items()), Fraction(0))
        self.degree = max(p.degree(), 0)

    def __call__(self, x) -> int:
        total = 0
        for exp, coef in self.terms:
            t = coef
            for xi, k in zip(x, exp):
                if k:
                    t *= xi ** k
            total += t
        return total


class _TailBound:
    def __init__(self, spec: MeixnerSpec, scale: Fraction, degree: int):
        self.beta = spec.beta
        self.csum = sum(spec.point.c)
        self.scale = scale
        self.D = degree

    def shell_bound(self, k: int) -> Fraction:
        return (self.scale * (1 + k) ** self.D * pochhammer(self.beta, k)
                * self.csum ** k / math.factorial(k))

    def ratio_bound(self, k: int) -> Fraction:
        growth = max(Fraction(1), (self.beta + k) / (k + 1))
        return Fraction(k + 2, k + 1) ** self.D * growth * self.csum

    def tail_after(self, X: int) -> Fraction | None:
        rho = self.ratio_bound(X + 1)
        if rho >= 1:
            return None
        return self.shell_bound(X + 1) / (1 - rho)


def inner_products(spec: MeixnerSpec, pairs: Iterable[tuple], tolerance: Scalar,
                   cap: int = DEFAULT_CAP) -> dict:
    """Certified truncated inner products for several ``(n, m)`` pairs at once.

    Shells are added until every pair's tail bound drops below ``tolerance``.

    :raises PreconditionViolated: outside ``beta > 0``, ``c_i > 0``, ``|c| < 1``.
    :raises NoConvergence: if the truncation would exceed ``cap``.
    """
    check_positive_region(spec)
    tolerance = as_rational(tolerance)
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    pairs = [(tuple(n), tuple(m)) for n, m in pairs]
    d = spec.d
    polys = {}
    for n, m in pairs:
        for idx in (n, m):
            if idx not in polys:
                polys[idx] = _IntegerPoly(hypergeometric_polynomial(spec, idx))
    bounds = {
        (n, m): _TailBound(spec, polys[n].abs_sum * polys[m].abs_sum,
                           polys[n].degree + polys[m].degree)
        for n, m in pairs
    }

    # W(x) = (beta)_k * multinomial(x) * a^x / (k! * b^k) with c_i = a_i / b
    b = math.lcm(*(ci.denominator for ci in spec.point.c))
    a = [int(ci * b) for ci in spec.point.c]
    values = {p: Fraction(0) for p in pairs}
    tails: dict = {p: None for p in pairs}
    done: set = set()
    k = 0
    while True:
        if k > cap:
            missing = [p for p in pairs if p not in done]
            raise NoConvergence(f"tail not below tolerance by |x| = {cap} for {missing[:3]}")
        sums = {p: 0 for p in pairs if p not in done}
        kf = math.factorial(k)
        for x in _shell(d, k):
            w = kf // mi_factorial(x)
            for ai, xi in zip(a, x):
                w *= ai ** xi
            vals = {idx: poly(x) for idx, poly in polys.items()}
            for p in sums:
                sums[p] += w * vals[p[0]] * vals[p[1]]
        shell_scale = pochhammer(spec.beta, k) / (kf * b ** k)
        for p, s in sums.items():
            n, m = p
            values[p] += shell_scale * Fraction(s, polys[n].den * polys[m].den)
            tail = bounds[p].tail_after(k)
            tails[p] = tail
            if tail is not None and tail < tolerance:
                done.add(p)
        if len(done) == len(pairs):
            break
        k += 1
    return {p: InnerProductResult(values[p], k, tails[p], True) for p in pairs}


def truncated_inner_product(spec: MeixnerSpec, n: Sequence[int], m: Sequence[int],
                            X: int) -> InnerProductResult:
    """Exact partial sum over ``|x| <= X`` with its tail bound (no stopping rule)."""
    check_positive_region(spec)
    P = hypergeometric_polynomial(spec, n)
    Q = hypergeometric_polynomial(spec, m)
    total = Fraction(0)
    for k in range(X + 1):
        for x in _shell(spec.d, k):
            total += weight(spec, x) * P(x) * Q(x)
    bound = _TailBound(spec, _IntegerPoly(P).abs_sum * _IntegerPoly(Q).abs_sum,
                       max(P.degree(), 0) + max(Q.degree(), 0))
    return InnerProductResult(total, X, bound.tail_after(X), False)


def inner_product(spec: MeixnerSpec, n: Sequence[int], m: Sequence[int],
                  tolerance: Scalar, cap: int = DEFAULT_CAP) -> InnerProductResult:
    """``sum_x P_n(x) P_m(x) W(x)`` to a certified absolute tolerance."""
    pair = (tuple(n), tuple(m))
    return inner_products(spec, [pair], tolerance, cap)[pair]


@dataclass(frozen=True)
class NormValue:
    """``c0^(-beta) * rational``; ``exact`` is set when ``c0^(-beta)`` is rational."""

    rational: Fraction
    c0: Fraction
    beta: Fraction
    exact: Fraction | None

    def approx(self, dps: int | None = None) -> mpmath.mpf:
        dps = dps or precision_digits()
        with mpmath.workdps(dps):
            c0 = mpmath.mpf(self.c0.numerator) / self.c0.denominator
            beta = mpmath.mpf(self.beta.numerator) / self.beta.denominator
            return c0 ** (-beta) * (mpmath.mpf(self.rational.numerator) / self.rational.denominator)


def precision_digits() -> int:
    return max(50, int(os.environ.get(PRECISION_ENV, "50")))


def _int_root(v: int, q: int) -> int | None:
    if v < 0:
        return None
    lo, hi = 0, 1 << (v.bit_length() // q + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** q <= v:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo ** q == v else None


def _rational_power(base: Fraction, exponent: Fraction) -> Fraction | None:
    """``base ** exponent`` when it is rational, else None."""
    p, q = exponent.numerator, exponent.denominator
    if q == 1:
        return base ** p
    if base <= 0:
        return None
    num, den = _int_root(base.numerator, q), _int_root(base.denominator, q)
    if num is None or den is None:
        return None
    return Fraction(num, den) ** p


def norm_closed_form(spec: MeixnerSpec, n: Sequence[int]) -> NormValue:
    """``c0^(-beta) n! / ((beta)_|n| c~^n)``."""
    n = tuple(n)
    pt = spec.point
    rational = Fraction(mi_factorial(n)) / pochhammer(spec.beta, sum(n))
    for ct, k in zip(pt.c_tilde, n):
        if k and ct == 0:
            raise ZeroParameter("c_tilde component vanishes for a nonzero degree")
        rational /= ct ** k
    power = _rational_power(pt.c0, -spec.beta)
    exact = None if power is None else power * rational
    return NormValue(rational, pt.c0, spec.beta, exact)


def verify_orthogonality(spec: MeixnerSpec, maxdeg: int, tolerance: Scalar,
                         rel_tolerance: Scalar = Fraction(1, 10 ** 8),
                         cap: int = DEFAULT_CAP) -> VerificationReport:
    """Check every pair ``|n|, |m| <= maxdeg``.

    Off-diagonal pairs pass when the certified partial sum is within
    ``tolerance`` of zero; diagonal pairs when they match the closed-form norm
    to relative ``rel_tolerance``.
    """
    tolerance = as_rational(tolerance)
    rel_tolerance = as_rational(rel_tolerance)
    indices = list(multi_indices(spec.d, maxdeg))
    pairs = [(n, m) for i, n in enumerate(indices) for m in indices[i:]]
    results = inner_products(spec, pairs, tolerance, cap)
    report = VerificationReport()
    for (n, m), res in results.items():
        params = {"n": n, "m": m, "truncation": res.truncation,
                  "tail_estimate": float(res.tail_estimate)}
        if n != m:
            ok = abs(res.value) <= tolerance
            witness = None if ok else {"n": n, "m": m, "value": res.value}
            report.add("orthogonality-offdiagonal", params, ok, witness)
            continue
        norm = norm_closed_form(spec, n)
        if norm.exact is not None:
            ok = abs(res.value - norm.exact) <= rel_tolerance * abs(norm.exact)
            expected = norm.exact
        else:
            with mpmath.workdps(precision_digits()):
                target = norm.approx()
                got = mpmath.mpf(res.value.numerator) / res.value.denominator
                ok = bool(abs(got - target) <= mpmath.mpf(rel_tolerance.numerator)
                          / rel_tolerance.denominator * abs(target))
                expected = mpmath.nstr(target, 30)
        witness = None if ok else {"n": n, "value": res.value, "expected": expected}
        report.add("orthogonality-norm", params, ok, witness)
    return report
