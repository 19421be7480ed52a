"""Partial difference operators acting on variables and on degree indices.

An operator is a list of ``(coefficient polynomial, lattice shift)`` terms and
acts by ``(L f)(v) = sum coefficient(v) * f(v + shift)``.  Operator indices
``i`` run over ``1..d``, matching the row/column labels of ``U``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .algebra import (
    Polynomial,
    multi_indices,
    poly_eval,
    poly_shift,
    unit,
)
from .polynomials import MeixnerSpec, hypergeometric_polynomial, tabulate_scaled
from .report import VerificationReport


class MissingGridPoint(KeyError):
    pass


@dataclass(frozen=True)
class ShiftTerm:
    coefficient: Polynomial
    shift: tuple

    def to_json(self) -> dict:
        return {"shift": list(self.shift), "coefficient": self.coefficient.to_json()}


@dataclass(frozen=True)
class DifferenceOperator:
    dim: int
    terms: tuple

    def shift_terms(self) -> list[ShiftTerm]:
        """Terms with a nonzero shift."""
        return [t for t in self.terms if any(t.shift)]

    def apply(self, p: Polynomial) -> Polynomial:
        return apply_symbolic(self, p)

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply_symbolic(self, p)

    def to_json(self) -> dict:
        return {"dim": self.dim, "terms": [t.to_json() for t in self.terms]}


def _summand(d: int, coefficient: Polynomial, shift: tuple) -> tuple:
    # coefficient * (E^shift - Id)
    return (ShiftTerm(coefficient, shift), ShiftTerm(-coefficient, (0,) * d))


def _assemble(d: int, prefactor: Fraction, c_other: Sequence[Fraction],
              weight, beta: Fraction) -> DifferenceOperator:
    """Shared layout of both operator families.

    ``weight(k)`` is the ``u`` entry paired with direction ``k`` (1-based).
    """
    var = [Polynomial.variable(d, l) for l in range(d)]
    total = Polynomial.constant(d, beta)
    for v in var:
        total = total + v
    terms: list = []
    for k in range(1, d + 1):
        for l in range(1, d + 1):
            if k == l:
                continue
            coef = var[l - 1] * (prefactor * c_other[k - 1] * weight(k) * weight(l))
            shift = tuple(a - b for a, b in zip(unit(d, k - 1), unit(d, l - 1)))
            terms.extend(_summand(d, coef, shift))
    for l in range(1, d + 1):
        coef = var[l - 1] * (-prefactor * weight(l))
        terms.extend(_summand(d, coef, unit(d, l - 1, -1)))
    for k in range(1, d + 1):
        coef = total * (-prefactor * c_other[k - 1] * weight(k))
        terms.extend(_summand(d, coef, unit(d, k - 1)))
    return DifferenceOperator(d, tuple(terms))


def build_variable_operator(spec: MeixnerSpec, i: int) -> DifferenceOperator:
    """Operator in ``x`` with eigenvalue ``n_i`` on ``P_n``."""
    pt = spec.point
    if not 1 <= i <= pt.d:
        raise ValueError(f"operator index must be in 1..{pt.d}")
    prefactor = pt.c_tilde[i - 1] / pt.c0
    return _assemble(pt.d, prefactor, pt.c, lambda k: pt.U[k][i], spec.beta)


def build_degree_operator(spec: MeixnerSpec, i: int) -> DifferenceOperator:
    """Operator in ``n`` with eigenvalue ``x_i`` on ``P_n``."""
    pt = spec.point
    if not 1 <= i <= pt.d:
        raise ValueError(f"operator index must be in 1..{pt.d}")
    prefactor = pt.c[i - 1] / pt.c0
    return _assemble(pt.d, prefactor, pt.c_tilde, lambda k: pt.U[i][k], spec.beta)


def apply_symbolic(op: DifferenceOperator, p: Polynomial) -> Polynomial:
    if p.dim != op.dim:
        raise ValueError("dimension mismatch")
    out = Polynomial.zero(op.dim)
    shifted: dict = {}
    for term in op.terms:
        if not term.coefficient:
            continue
        if term.shift not in shifted:
            shifted[term.shift] = poly_shift(p, term.shift)
        out = out + term.coefficient * shifted[term.shift]
    return out


def apply_on_grid(op: DifferenceOperator, table: Mapping, at: Sequence[int]) -> Fraction:
    """``(op f)(at)`` for ``f`` given by a table of lattice values.

    Terms whose coefficient vanishes at ``at`` are skipped without looking up
    the shifted point.
    """
    at = tuple(at)
    total = Fraction(0)
    for term in op.terms:
        coef = poly_eval(term.coefficient, at)
        if not coef:
            continue
        target = tuple(a + s for a, s in zip(at, term.shift))
        try:
            value = table[target]
        except (KeyError, IndexError):
            raise MissingGridPoint(f"value at {target} needed for {at}") from None
        total += coef * value
    return total


def _scaled_coefficients(op: DifferenceOperator, bound: int):
    """Integer coefficient arrays on ``{0..bound}^d`` and their common denominator."""
    den = 1
    for t in op.terms:
        for _, c in t.coefficient.items():
            den = math.lcm(den, c.denominator)
    shape = (bound + 1,) * op.dim
    out = []
    for t in op.terms:
        if not t.coefficient:
            continue
        arr = np.empty(shape, dtype=object)
        scaled = t.coefficient * den
        for idx in np.ndindex(*shape):
            arr[idx] = int(poly_eval(scaled, idx))
        out.append((arr, t.shift))
    return out, den


def apply_on_box(op: DifferenceOperator, values: np.ndarray, bound: int,
                 _coeffs=None) -> tuple[np.ndarray, int]:
    """Vectorized :func:`apply_on_grid` over ``{0..bound}^d``.

    ``values`` covers at least ``{0..bound+1}^d``.  Returns ``(result * den, den)``
    with ``den`` the common denominator of the operator coefficients, so integer
    input stays integer.
    """
    d = op.dim
    coeffs, den = _coeffs or _scaled_coefficients(op, bound)
    # one zero layer below each axis only: backward shifts at the edge carry
    # vanishing coefficients, while forward shifts must stay inside the table
    padded = np.zeros(tuple(k + 1 for k in values.shape), dtype=object)
    padded[(slice(1, None),) * d] = values
    result = np.zeros((bound + 1,) * d, dtype=object)
    for arr, shift in coeffs:
        index = []
        for s in shift:
            start = 1 + s
            index.append(slice(start, start + bound + 1))
        window = padded[tuple(index)]
        if window.shape != arr.shape:
            raise MissingGridPoint(f"table too small for shift {shift}")
        if any(s < 0 for s in shift):
            for axis, s in enumerate(shift):
                if s < 0:
                    edge = [slice(None)] * d
                    edge[axis] = 0
                    if np.any(arr[tuple(edge)] != 0):
                        raise MissingGridPoint(f"shift {shift} leaves the lattice")
        result = result + arr * window
    return result, den


# ---------------------------------------------------------------------------
# bispectrality and commutativity
# ---------------------------------------------------------------------------

def verify_eigen_variables(spec: MeixnerSpec, maxdeg: int) -> VerificationReport:
    """``L_{x,i} P_n = n_i P_n`` as exact polynomial identities, ``|n| <= maxdeg``."""
    report = VerificationReport()
    ops = [build_variable_operator(spec, i) for i in range(1, spec.d + 1)]
    for n in multi_indices(spec.d, maxdeg):
        P = hypergeometric_polynomial(spec, n)
        for i, op in enumerate(ops, 1):
            residual = apply_symbolic(op, P) - P * n[i - 1]
            witness = None
            if residual:
                witness = {"n": n, "i": i, "residual": residual}
            report.add("eigen-variables", {"n": n, "i": i}, not residual, witness)
    return report


def verify_eigen_degrees(spec: MeixnerSpec, grid: int) -> VerificationReport:
    """``L_{n,i} P_n(x) = x_i P_n(x)`` on ``{0..grid}^d x {0..grid}^d``.

    Two routes are compared as well: the degree operator applied to tabulated
    values at ``spec``, and the variable operator of the dual point applied to
    tabulated values of the dual polynomials.
    """
    d = spec.d
    dual = spec.dual()
    report = VerificationReport()
    numer, den = tabulate_scaled(spec, grid + 1, grid)
    dnumer, dden = tabulate_scaled(dual, grid, grid + 1)
    inner = (slice(0, grid + 1),) * d
    for i in range(1, d + 1):
        op = build_degree_operator(spec, i)
        dop = build_variable_operator(dual, i)
        coeffs = _scaled_coefficients(op, grid)
        dcoeffs = _scaled_coefficients(dop, grid)
        for x in np.ndindex(*(grid + 1,) * d):
            f = numer[(Ellipsis,) + x]
            lhs, lden = apply_on_box(op, f, grid, coeffs)
            rhs = f[inner] * (x[i - 1] * lden)
            g = dnumer[x]
            dlhs, dlden = apply_on_box(dop, g, grid, dcoeffs)
            eig_ok = lhs == rhs
            # lhs / (lden*den) must equal dlhs / (dlden*dden)
            route_ok = lhs * (dlden * dden) == dlhs * (lden * den)
            params = {"x": x, "i": i, "box": grid}
            for name, ok, a, b, sa, sb in (
                ("eigen-degrees", eig_ok, lhs, rhs, lden * den, lden * den),
                ("eigen-degrees-dual-route", route_ok, lhs, dlhs, lden * den, dlden * dden),
            ):
                witness = None
                if not np.all(ok):
                    n = tuple(int(v) for v in np.argwhere(~ok.astype(bool))[0])
                    witness = {"n": n, "x": x, "i": i,
                               "lhs": Fraction(a[n], sa), "rhs": Fraction(b[n], sb)}
                report.add(name, params, bool(np.all(ok)), witness)
    return report


def verify_bispectrality(spec: MeixnerSpec, maxdeg: int, grid: int) -> VerificationReport:
    """Both eigenvalue equations: symbolic in ``x``, tabulated in ``n``."""
    return verify_eigen_variables(spec, maxdeg).extend(verify_eigen_degrees(spec, grid))


def verify_commutativity(spec: MeixnerSpec, samples: Sequence[Polynomial]) -> VerificationReport:
    """Pairwise commutation of each operator family on sample polynomials."""
    report = VerificationReport()
    d = spec.d
    families = {
        "commute-x": [build_variable_operator(spec, i) for i in range(1, d + 1)],
        "commute-n": [build_degree_operator(spec, i) for i in range(1, d + 1)],
    }
    for name, ops in families.items():
        for s, p in enumerate(samples):
            for i in range(d):
                for j in range(i + 1, d):
                    diff = apply_symbolic(ops[i], apply_symbolic(ops[j], p)) - \
                        apply_symbolic(ops[j], apply_symbolic(ops[i], p))
                    witness = None if not diff else {"sample": p, "commutator": diff}
                    report.add(name, {"i": i + 1, "j": j + 1, "sample": s}, not diff, witness)
    return report
