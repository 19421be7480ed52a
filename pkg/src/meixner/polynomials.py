"""Multivariate Meixner polynomials ``P_n(x; m, beta)``.

Three independent ways to get at the same numbers:

* :func:`hypergeometric_polynomial` / :func:`evaluate` sum the terminating
  hypergeometric series over degree matrices ``A``;
* :func:`generating_coefficients` expands the generating function
  ``(1-|z|)^(-beta-|x|) prod_i (1 - sum_j u_ij z_j)^(x_i)`` as a truncated series;
* :func:`tabulate` computes whole lattice boxes at once by collapsing the sum
  over ``A`` column by column into products of linear forms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .algebra import (
    Polynomial,
    Scalar,
    TruncatedSeries,
    as_rational,
    falling_product,
    format_rational,
    mi_factorial,
    multi_indices,
    pochhammer,
    series_mul,
    series_negative_power,
)
from .parameters import MeixnerPoint, ParameterError, involution
from .report import VerificationReport


class BadBeta(ParameterError):
    pass


@dataclass(frozen=True)
class MeixnerSpec:
    point: MeixnerPoint
    beta: Fraction

    def __post_init__(self):
        beta = as_rational(self.beta)
        if beta.denominator == 1 and beta <= 0:
            raise BadBeta(f"beta must not be a nonpositive integer, got {beta}")
        object.__setattr__(self, "beta", beta)

    @property
    def d(self) -> int:
        return self.point.d

    def dual(self) -> "MeixnerSpec":
        return MeixnerSpec(involution(self.point), self.beta)

    def to_json(self) -> dict:
        out = self.point.to_json()
        out["beta"] = format_rational(self.beta)
        return out


def _eta(point: MeixnerPoint) -> list[list[Fraction]]:
    """``eta[i][j] = 1 - u_{i+1, j+1}`` (0-based)."""
    d = point.d
    return [[1 - point.U[i][j] for j in range(1, d + 1)] for i in range(1, d + 1)]


# ---------------------------------------------------------------------------
# hypergeometric sum
# ---------------------------------------------------------------------------

def degree_matrices(n: Sequence[int]) -> Iterator[tuple]:
    """Every d x d matrix over N_0 whose column ``j`` sums to at most ``n[j]``.

    Matrices are yielded as row tuples, enumerated column by column with each
    column in lexicographic order.
    """
    d = len(n)
    columns = []
    for nj in n:
        col = [a for a in itertools.product(range(nj + 1), repeat=d) if sum(a) <= nj]
        columns.append(col)
    for cols in itertools.product(*columns):
        yield tuple(zip(*cols))


def hypergeometric_terms(spec: MeixnerSpec, n: Sequence[int]) -> Iterator[tuple]:
    """Yield ``(row_sums, coefficient)`` for every degree matrix.

    The term of ``A`` is ``coefficient * prod_i (-x_i)_{row_sums[i]}``.
    """
    n = tuple(n)
    eta = _eta(spec.point)
    d = spec.d
    beta = spec.beta
    for A in degree_matrices(n):
        col_sums = [sum(A[i][j] for i in range(d)) for j in range(d)]
        row_sums = tuple(sum(row) for row in A)
        coef = Fraction(1)
        for j in range(d):
            coef *= pochhammer(-n[j], col_sums[j])
        if not coef:
            continue
        for i in range(d):
            for j in range(d):
                a = A[i][j]
                if a:
                    coef *= eta[i][j] ** a / math.factorial(a)
        coef /= pochhammer(beta, sum(row_sums))
        yield row_sums, coef


@lru_cache(maxsize=4096)
def _row_sum_coefficients(spec: MeixnerSpec, n: tuple) -> tuple:
    acc: dict = {}
    for rows, coef in hypergeometric_terms(spec, n):
        acc[rows] = acc.get(rows, 0) + coef
    return tuple((r, c) for r, c in sorted(acc.items()) if c)


def hypergeometric_polynomial(spec: MeixnerSpec, n: Sequence[int]) -> Polynomial:
    """``P_n`` as an exact polynomial in ``x_1..x_d``."""
    n = tuple(n)
    d = spec.d
    if len(n) != d:
        raise ValueError("degree index has wrong length")
    out = Polynomial.zero(d)
    for rows, coef in _row_sum_coefficients(spec, n):
        term = Polynomial.constant(d, coef)
        for i, r in enumerate(rows):
            if r:
                term = term * falling_product(d, i, r)
        out = out + term
    return out


def evaluate(spec: MeixnerSpec, n: Sequence[int], x: Sequence[Scalar]) -> Fraction:
    """``P_n(x)`` by direct summation, without expanding into monomials."""
    n = tuple(n)
    if len(n) != spec.d or len(x) != spec.d:
        raise ValueError("dimension mismatch")
    x = [as_rational(v) for v in x]
    total = Fraction(0)
    for rows, coef in _row_sum_coefficients(spec, n):
        term = coef
        for xi, r in zip(x, rows):
            if not r:
                continue
            term *= pochhammer(-xi, r)
            if not term:
                break
        total += term
    return total


def duality_check(spec: MeixnerSpec, n: Sequence[int], x: Sequence[int]) -> bool:
    """``P_n(x; m) == P_x(n; b(m))`` for lattice points ``n``, ``x``."""
    return evaluate(spec, n, x) == evaluate(spec.dual(), x, n)


def gauss_2f1(a: Scalar, b: Scalar, c: Scalar, z: Scalar) -> Fraction:
    """Terminating 2F1(a, b; c; z) summed by term ratios; ``a`` must be a nonpositive integer."""
    a, b, c, z = (as_rational(v) for v in (a, b, c, z))
    if a.denominator != 1 or a > 0:
        raise ValueError("a must be a nonpositive integer for a terminating series")
    term = Fraction(1)
    total = Fraction(1)
    for k in range(int(-a)):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
    return total


def classical_meixner(spec: MeixnerSpec, n: int, x: Scalar) -> Fraction:
    """One-variable reduction ``2F1(-n, -x; beta; 1 - u_11)``."""
    if spec.d != 1:
        raise ValueError("classical reduction needs d = 1")
    return gauss_2f1(-n, -as_rational(x), spec.beta, 1 - spec.point.U[1][1])


# ---------------------------------------------------------------------------
# generating function
# ---------------------------------------------------------------------------

def generating_function(spec: MeixnerSpec, x: Sequence[int], order: int) -> TruncatedSeries:
    """The generating function at lattice point ``x``, truncated at total degree ``order``."""
    x = tuple(int(v) for v in x)
    d = spec.d
    if len(x) != d or min(x) < 0:
        raise ValueError("x must be a lattice point of N_0^d")
    series = series_negative_power(spec.beta + sum(x), d, order)
    for i in range(d):
        if not x[i]:
            continue
        factor = {(0,) * d: Fraction(1)}
        for j in range(d):
            e = [0] * d
            e[j] = 1
            factor[tuple(e)] = -spec.point.U[i + 1][j + 1]
        linear = TruncatedSeries(d, order, factor)
        for _ in range(x[i]):
            series = series_mul(series, linear)
    return series


def generating_coefficients(spec: MeixnerSpec, x: Sequence[int], order: int) -> dict:
    """Coefficient of ``z^n`` in the generating function for all ``|n| <= order``.

    This equals ``(beta)_|n| / n! * P_n(x)``.
    """
    series = generating_function(spec, x, order)
    return {n: series[n] for n in multi_indices(spec.d, order)}


def values_from_generating(spec: MeixnerSpec, x: Sequence[int], order: int) -> dict:
    """``{n: P_n(x)}`` for ``|n| <= order``, read off the generating function."""
    coeffs = generating_coefficients(spec, x, order)
    return {n: g * mi_factorial(n) / pochhammer(spec.beta, sum(n))
            for n, g in coeffs.items()}


# ---------------------------------------------------------------------------
# batch tabulation on lattice boxes
# ---------------------------------------------------------------------------

def tabulate_scaled(spec: MeixnerSpec, n_bound: int, x_bound: int) -> tuple[np.ndarray, int]:
    """Integer numerators and one common denominator for :func:`tabulate`.

    Summing the hypergeometric series over one column of ``A`` at a time gives
    ``P_n(x) = sum_r [t^r] prod_j (1 - sum_i eta_ij t_i)^(n_j) (-x)_r / (beta)_|r|``;
    at lattice points only ``r <= x`` contributes.  Writing ``eta = eta_int / D``
    and ``beta = b / q`` keeps everything in exact integer arithmetic.
    """
    d = spec.d
    eta = _eta(spec.point)
    D = math.lcm(*(e.denominator for row in eta for e in row))
    eta_int = [[int(e * D) for e in row] for row in eta]
    b, q = spec.beta.numerator, spec.beta.denominator

    rb = x_bound + 1
    rshape = (rb,) * d
    K = d * x_bound
    # (beta)_k = B[k] / q^k with integer B[k]
    B = [1]
    for t in range(K):
        B.append(B[-1] * (b + q * t))
    denominator = D ** K * B[K]
    # G[r] * denominator = F_int[r] * q^|r| * D^(K-|r|) * B[K] / B[|r|]
    scale_by_total = [q ** k * D ** (K - k) * (B[K] // B[k]) for k in range(K + 1)]
    grid_r = np.indices(rshape).sum(axis=0)
    scale = np.empty(rshape, dtype=object)
    for idx in np.ndindex(*rshape):
        scale[idx] = scale_by_total[grid_r[idx]]

    ff = np.empty((rb, rb), dtype=object)
    for xv in range(rb):
        for r in range(rb):
            ff[xv, r] = int(pochhammer(-xv, r))

    def times_linear(F: np.ndarray, j: int) -> np.ndarray:
        out = F.copy()
        for i in range(d):
            e = eta_int[i][j]
            if not e:
                continue
            lead = [slice(None)] * d
            lag = [slice(None)] * d
            lead[i] = slice(1, None)
            lag[i] = slice(None, -1)
            out[tuple(lead)] = out[tuple(lead)] - e * F[tuple(lag)]
        return out

    table = np.empty((n_bound + 1,) * d + rshape, dtype=object)
    products: dict = {}
    one = np.zeros(rshape, dtype=object)
    one[(0,) * d] = 1
    for n in itertools.product(range(n_bound + 1), repeat=d):
        if not any(n):
            F = one
        else:
            j = next(k for k, v in enumerate(n) if v)
            prev = list(n)
            prev[j] -= 1
            F = times_linear(products[tuple(prev)], j)
        products[n] = F
        G = F * scale
        for axis in range(d):
            G = np.moveaxis(np.tensordot(ff, G, axes=([1], [axis])), 0, axis)
        table[n] = G
    return table, denominator


def tabulate(spec: MeixnerSpec, n_bound: int, x_bound: int) -> np.ndarray:
    """``T[n + x] = P_n(x)`` for ``n in {0..n_bound}^d``, ``x in {0..x_bound}^d``.

    Object array of Fractions with shape ``(n_bound+1,)*d + (x_bound+1,)*d``.
    """
    numer, denom = tabulate_scaled(spec, n_bound, x_bound)
    out = np.empty(numer.shape, dtype=object)
    for idx in np.ndindex(*numer.shape):
        out[idx] = Fraction(numer[idx], denom)
    return out


def tabulate_dict(spec: MeixnerSpec, n_bound: int, x_bound: int) -> dict:
    """:func:`tabulate` as ``{(n, x): P_n(x)}``."""
    table = tabulate(spec, n_bound, x_bound)
    d = spec.d
    out = {}
    for idx in np.ndindex(*table.shape):
        out[(idx[:d], idx[d:])] = table[idx]
    return out


# ---------------------------------------------------------------------------
# cross-checks
# ---------------------------------------------------------------------------

def verify_representations(spec: MeixnerSpec, maxdeg: int, x_bound: int) -> VerificationReport:
    """Generating-function coefficients against the hypergeometric sum, per lattice point."""
    report = VerificationReport()
    for x in itertools.product(range(x_bound + 1), repeat=spec.d):
        from_series = values_from_generating(spec, x, maxdeg)
        bad = None
        for n, value in from_series.items():
            direct = evaluate(spec, n, x)
            if value != direct:
                bad = {"n": n, "x": x, "generating": value, "hypergeometric": direct}
                break
        report.add("generating-vs-hypergeometric", {"x": x, "maxdeg": maxdeg}, bad is None, bad)
    return report


def verify_duality(spec: MeixnerSpec, bound: int) -> VerificationReport:
    """``P_n(x; m) = P_x(n; b(m))`` on ``{0..bound}^d x {0..bound}^d``, one check per ``n``."""
    d = spec.d
    table = tabulate(spec, bound, bound)
    dual = tabulate(spec.dual(), bound, bound)
    report = VerificationReport()
    for n in itertools.product(range(bound + 1), repeat=d):
        bad = None
        for x in itertools.product(range(bound + 1), repeat=d):
            if table[n + x] != dual[x + n]:
                bad = {"n": n, "x": x, "lhs": table[n + x], "rhs": dual[x + n]}
                break
        report.add("duality", {"n": n, "box": bound}, bad is None, bad)
    return report


def verify_classical(spec: MeixnerSpec, n_max: int, x_max: int) -> VerificationReport:
    """For ``d = 1``: agreement with the terminating Gauss series."""
    report = VerificationReport()
    for n in range(n_max + 1):
        bad = None
        for x in range(x_max + 1):
            a, b = evaluate(spec, (n,), (x,)), classical_meixner(spec, n, x)
            if a != b:
                bad = {"n": n, "x": x, "multivariate": a, "gauss": b}
                break
        report.add("classical-2F1", {"n": n, "x_max": x_max}, bad is None, bad)
    return report

