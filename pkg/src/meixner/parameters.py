"""Points of the Meixner parameter set and their constructors.

A point is a tuple ``(c0, C, C~, U)`` with ``C = diag(1, -c_1, ..., -c_d)``,
``C~ = diag(1, -c~_1, ..., -c~_d)``, ``U`` a ``(d+1) x (d+1)`` matrix whose
row 0 and column 0 are all ones, and ``U^t C U C~ = c0 I``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Scalar, as_rational, format_rational
from .report import VerificationReport

Matrix = tuple  # tuple of row tuples of Fractions


class ParameterError(ValueError):
    """Base class for invalid parameter data."""


class ZeroParameter(ParameterError):
    pass


class NotInParameterSet(ParameterError):
    """Raised by :func:`validate`; ``diagnostics`` lists every violated condition."""

    def __init__(self, diagnostics: Sequence[str]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class DegenerateStep(ParameterError):
    pass


class ZeroDenominator(ParameterError):
    def __init__(self, k: int, message: str):
        self.k = k
        super().__init__(message)


class BadParameter(ParameterError):
    pass


def _matrix(rows) -> Matrix:
    return tuple(tuple(as_rational(v) for v in row) for row in rows)


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0))
                       for col in cols) for row in a)


def _transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def _diag(entries) -> Matrix:
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else Fraction(0) for j in range(n))
                 for i in range(n))


@dataclass(frozen=True)
class MeixnerPoint:
    """A point ``(c0, C, C~, U)``.  Construct through :func:`validate` or a family.

    ``c`` and ``c_tilde`` hold ``c_1..c_d``; ``U`` is indexed 0..d in both
    directions, so ``U[i][j]`` is ``u_{i,j}`` directly.
    """

    d: int
    c0: Fraction
    c: tuple
    c_tilde: tuple
    U: Matrix

    @property
    def C(self) -> Matrix:
        return _diag((Fraction(1),) + tuple(-ci for ci in self.c))

    @property
    def C_tilde(self) -> Matrix:
        return _diag((Fraction(1),) + tuple(-ci for ci in self.c_tilde))

    def u(self, i: int, j: int) -> Fraction:
        return self.U[i][j]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "c0": format_rational(self.c0),
            "c": [format_rational(v) for v in self.c],
            "c_tilde": [format_rational(v) for v in self.c_tilde],
            "U": [[format_rational(v) for v in row] for row in self.U],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict, check: bool = True) -> "MeixnerPoint":
        point = cls(
            d=int(data["d"]),
            c0=as_rational(data["c0"]),
            c=tuple(as_rational(v) for v in data["c"]),
            c_tilde=tuple(as_rational(v) for v in data["c_tilde"]),
            U=_matrix(data["U"]),
        )
        return validate(point) if check else point

    def with_entry(self, i: int, j: int, value: Scalar) -> "MeixnerPoint":
        """Copy with ``u_{i,j}`` replaced, skipping validation (for negative controls)."""
        rows = [list(r) for r in self.U]
        rows[i][j] = as_rational(value)
        return MeixnerPoint(self.d, self.c0, self.c, self.c_tilde, _matrix(rows))


def point_diagnostics(point: MeixnerPoint) -> list[str]:
    """Every violated defining condition of ``point``; empty iff it is valid."""
    d = point.d
    issues = []
    if d < 1:
        return [f"dimension must be >= 1, got {d}"]
    if len(point.c) != d or len(point.c_tilde) != d:
        return ["c and c_tilde must have length d"]
    if len(point.U) != d + 1 or any(len(r) != d + 1 for r in point.U):
        return ["U must be (d+1)x(d+1)"]

    if point.c0 == 0:
        issues.append("c0 is zero")
    for k, ck in enumerate(point.c, 1):
        if ck == 0:
            issues.append(f"c_{k} is zero")
    for k, ck in enumerate(point.c_tilde, 1):
        if ck == 0:
            issues.append(f"c_tilde_{k} is zero")

    for chk in parameter_report(point).failures():
        where = ", ".join(f"{k}={v}" for k, v in chk.params.items())
        detail = ", ".join(f"{k}={format_rational(v)}" for k, v in (chk.witness or {}).items())
        issues.append(f"identity {chk.identity} fails at {where}: {detail}")
    return issues


def parameter_report(point: MeixnerPoint) -> VerificationReport:
    """Entry-by-entry check of every defining identity, for display.

    Identities: ``unit-border`` (row and column 0 of ``U`` are ones),
    ``orthogonality-relation`` (``U^t C U C~ = c0 I``), ``column-weight-sum``
    and ``column-cross-sum`` (column sums weighted by ``c``) and
    ``weight-total`` (``c0 = 1 - |c| = 1 - |c~|``).
    """
    report = VerificationReport()
    d, U = point.d, point.U
    for j in range(d + 1):
        for entry in ((0, j), (j, 0)) if j else ((0, 0),):
            v = U[entry[0]][entry[1]]
            report.add("unit-border", {"entry": entry}, v == 1, None if v == 1 else {"value": v})
    lhs = _matmul(_matmul(_matmul(_transpose(U), point.C), U), point.C_tilde)
    for i in range(d + 1):
        for j in range(d + 1):
            want = point.c0 if i == j else Fraction(0)
            report.add("orthogonality-relation", {"entry": (i, j)}, lhs[i][j] == want,
                       None if lhs[i][j] == want else {"lhs": lhs[i][j], "rhs": want})
    for i in range(d + 1):
        s = sum((point.c[k - 1] * U[k][i] for k in range(1, d + 1)), Fraction(0))
        want = 1 - (point.c0 if i == 0 else 0)
        report.add("column-weight-sum", {"i": i}, s == want, None if s == want else {"lhs": s, "rhs": want})
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            s = sum((point.c[k - 1] * U[k][i] * U[k][j] for k in range(1, d + 1)), Fraction(0))
            ct = point.c_tilde[j - 1]
            want = 1 + (point.c0 / ct if i == j and ct else 0)
            report.add("column-cross-sum", {"i": i, "j": j}, s == want,
                       None if s == want else {"lhs": s, "rhs": want})
    for name, vec in (("c", point.c), ("c_tilde", point.c_tilde)):
        ok = point.c0 == 1 - sum(vec)
        report.add("weight-total", {"vector": name}, ok,
                   None if ok else {"c0": point.c0, "one_minus_sum": 1 - sum(vec)})
    return report


def validate(point: MeixnerPoint) -> MeixnerPoint:
    """Return ``point`` unchanged if it lies in the parameter set, else raise.

    :raises ZeroParameter: if ``c0`` or some ``c_k``, ``c~_k`` vanishes.
    :raises NotInParameterSet: for any other violation; carries all diagnostics.
    """
    issues = point_diagnostics(point)
    zeros = [m for m in issues if m.endswith("is zero")]
    if zeros:
        raise ZeroParameter("; ".join(zeros))
    if issues:
        raise NotInParameterSet(issues)
    return point


def make_point(c0, c, c_tilde, U) -> MeixnerPoint:
    """Build and validate a point from raw scalars and nested lists."""
    c = tuple(as_rational(v) for v in c)
    point = MeixnerPoint(len(c), as_rational(c0), c,
                         tuple(as_rational(v) for v in c_tilde), _matrix(U))
    return validate(point)


def involution(point: MeixnerPoint) -> MeixnerPoint:
    """Swap the roles of variables and degrees: ``(c0, C~, C, U^t)``."""
    return MeixnerPoint(point.d, point.c0, point.c_tilde, point.c, _transpose(point.U))


def _form(c: Sequence[Fraction], v: Sequence[Fraction], w: Sequence[Fraction]) -> Fraction:
    # <v, w> = v^t diag(1, -c_1, ..., -c_d) w
    return v[0] * w[0] - sum((ck * a * b for ck, a, b in zip(c, v[1:], w[1:])), Fraction(0))


def from_weights(c: Sequence[Scalar], mixing: Sequence[Scalar] | None = None) -> MeixnerPoint:
    """Gram-Schmidt construction of a point with prescribed ``c``.

    Column ``j`` of ``U`` starts from ``e_j`` plus the next ``d - j`` entries of
    ``mixing`` placed on coordinates ``j+1..d``; it is then made orthogonal to
    the previous columns under ``<v, w> = v^t C w`` and rescaled so that its
    coordinate 0 equals 1.  ``mixing`` has ``d(d-1)/2`` entries (default zeros).
    """
    c = tuple(as_rational(v) for v in c)
    d = len(c)
    if d < 1:
        raise BadParameter("need at least one weight")
    if any(ck == 0 for ck in c):
        raise ZeroParameter("all c_k must be nonzero")
    c0 = 1 - sum(c)
    if c0 == 0:
        raise ZeroParameter("c0 = 1 - |c| is zero")
    n_mix = d * (d - 1) // 2
    mixing = [Fraction(0)] * n_mix if mixing is None else [as_rational(v) for v in mixing]
    if len(mixing) != n_mix:
        raise BadParameter(f"expected {n_mix} mixing parameters, got {len(mixing)}")

    columns = [[Fraction(1)] * (d + 1)]
    norms = [c0]
    pos = 0
    for j in range(1, d + 1):
        w = [Fraction(0)] * (d + 1)
        w[j] = Fraction(1)
        for k in range(j + 1, d + 1):
            w[k] = mixing[pos]
            pos += 1
        for v, nv in zip(columns, norms):
            t = _form(c, w, v) / nv
            w = [a - t * b for a, b in zip(w, v)]
        if w[0] == 0:
            raise DegenerateStep(f"column {j} has vanishing coordinate 0 after orthogonalization")
        w = [a / w[0] for a in w]
        nw = _form(c, w, w)
        if nw == 0:
            raise DegenerateStep(f"column {j} is isotropic: <v_{j}, v_{j}> = 0")
        columns.append(w)
        norms.append(nw)

    U = _transpose(_matrix(columns))
    c_tilde = tuple(-c0 / nv for nv in norms[1:])
    return validate(MeixnerPoint(d, c0, c, c_tilde, U))


def family_triangular(c: Sequence[Scalar]) -> MeixnerPoint:
    """Lower-triangular family: ones below the diagonal, zeros above.

    ``u_{i,i} = (1 - c_{i+1} - ... - c_d) / c_i`` and
    ``c~_k = c_k c0 / ((1 - sum_{j>k} c_j)(1 - sum_{j>=k} c_j))``.
    """
    c = tuple(as_rational(v) for v in c)
    d = len(c)
    if d < 1:
        raise BadParameter("need at least one weight")
    if any(ck == 0 for ck in c):
        raise ZeroParameter("all c_k must be nonzero")
    c0 = 1 - sum(c)
    if c0 == 0:
        raise ZeroParameter("c0 = 1 - |c| is zero")

    # tail[k] = 1 - sum_{j > k} c_j for k = 0..d
    tail = [1 - sum(c[k:]) for k in range(d + 1)]
    c_tilde = []
    for k in range(1, d + 1):
        den = tail[k] * tail[k - 1]
        if den == 0:
            raise ZeroDenominator(k, f"denominator for c_tilde_{k} vanishes")
        c_tilde.append(c[k - 1] * c0 / den)

    rows = []
    for i in range(d + 1):
        row = []
        for j in range(d + 1):
            if i == 0 or j == 0:
                row.append(Fraction(1))
            elif i < j:
                row.append(Fraction(0))
            elif i > j:
                row.append(Fraction(1))
            else:
                row.append(tail[i] / c[i - 1])
        rows.append(row)
    return validate(MeixnerPoint(d, c0, c, tuple(c_tilde), _matrix(rows)))


def family_geometric(q: Scalar, d: int) -> MeixnerPoint:
    """Self-dual family ``c_k = c~_k = (1-q) q^(k-1)``; ``U`` depends on ``i + j`` only."""
    q = as_rational(q)
    if q in (0, 1):
        raise BadParameter("q must differ from 0 and 1")
    if d < 1:
        raise BadParameter("d must be positive")
    c = tuple((1 - q) * q ** (k - 1) for k in range(1, d + 1))
    rows = []
    for i in range(d + 1):
        row = []
        for j in range(d + 1):
            if i + j <= d:
                row.append(Fraction(1))
            elif i + j == d + 1:
                row.append(1 / (1 - q))
            else:
                row.append(Fraction(0))
        rows.append(row)
    return validate(MeixnerPoint(d, q ** d, c, c, _matrix(rows)))
