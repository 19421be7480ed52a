import json
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import sample_points
from meixner.parameters import (
    BadParameter,
    DegenerateStep,
    MeixnerPoint,
    NotInParameterSet,
    ZeroDenominator,
    ZeroParameter,
    family_geometric,
    family_triangular,
    from_weights,
    involution,
    make_point,
    parameter_report,
    point_diagnostics,
    validate,
)


def defining_identity_holds(point) -> bool:
    """Independent oracle: U^t C U C~ == c0 I by explicit loops."""
    d = point.d
    C = [1] + [-v for v in point.c]
    Ct = [1] + [-v for v in point.c_tilde]
    U = point.U
    for i in range(d + 1):
        for j in range(d + 1):
            s = sum(U[k][i] * C[k] * U[k][j] for k in range(d + 1)) * Ct[j]
            if s != (point.c0 if i == j else 0):
                return False
    border = all(U[0][j] == 1 and U[j][0] == 1 for j in range(d + 1))
    return border and point.c0 == 1 - sum(point.c) == 1 - sum(point.c_tilde)


def test_gram_d1_example():
    p = from_weights([F(1, 3)])
    assert p.c0 == F(2, 3)
    assert p.U == ((1, 1), (1, 3))
    assert p.c_tilde == (F(1, 3),)
    assert defining_identity_holds(p)


def test_triangular_d1_equals_gram():
    assert family_triangular([F(1, 3)]) == from_weights([F(1, 3)])


def test_triangular_d2_hand_values():
    p = family_triangular([F(1, 3), F(1, 4)])
    assert p.c0 == F(5, 12)
    assert p.U == ((1, 1, 1), (1, F(9, 4), 0), (1, 1, 4))
    assert p.c_tilde == (F(4, 9), F(5, 36))
    assert defining_identity_holds(p)


def test_geometric_d2_hand_values():
    p = family_geometric(F(1, 2), 2)
    assert p.c0 == F(1, 4)
    assert p.c == p.c_tilde == (F(1, 2), F(1, 4))
    assert p.U == ((1, 1, 1), (1, 1, 2), (1, 2, 0))
    assert involution(p) == p


@pytest.mark.parametrize("d", [1, 2, 3])
def test_sample_points_satisfy_identity(d):
    for p in sample_points(d):
        assert defining_identity_holds(p)
        assert parameter_report(p).passed
        assert point_diagnostics(p) == []


@pytest.mark.parametrize("q", [F(1, 3), F(3, 4), F(-1, 2), F(5, 2)])
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_geometric_family_is_valid_and_self_dual(q, d):
    p = family_geometric(q, d)
    assert defining_identity_holds(p)
    assert involution(p) == p


def test_zero_parameters_rejected():
    with pytest.raises(ZeroParameter):
        family_triangular([F(1, 2), F(1, 2)])
    with pytest.raises(ZeroParameter):
        from_weights([F(1, 2), 0])
    with pytest.raises(BadParameter):
        family_geometric(1, 2)
    with pytest.raises(BadParameter):
        from_weights([F(1, 5), F(1, 7)], [1, 2])


def test_degenerate_gram_step():
    # start vector (0, 1, -2) is already orthogonal to the all-ones column,
    # so coordinate 0 stays zero
    with pytest.raises(DegenerateStep):
        from_weights([F(1, 2), F(1, 4)], [-2])


def test_validate_collects_all_diagnostics():
    p = family_geometric(F(1, 2), 2)
    bad = p.with_entry(1, 2, 3).with_entry(0, 1, 2)
    with pytest.raises(NotInParameterSet) as info:
        validate(bad)
    text = " ".join(info.value.diagnostics)
    assert "unit-border" in text and "orthogonality-relation" in text
    assert not parameter_report(bad).passed


def test_json_round_trip_and_unchecked_loading():
    p = family_triangular([F(1, 3), F(1, 4), F(1, 6)])
    data = json.loads(p.dumps())
    assert data["U"][1][1] == "7/4"
    assert MeixnerPoint.from_json(data) == p
    bad = p.with_entry(2, 2, 7).to_json()
    with pytest.raises(NotInParameterSet):
        MeixnerPoint.from_json(bad)
    assert MeixnerPoint.from_json(bad, check=False).U[2][2] == 7


def test_make_point_accepts_strings():
    p = make_point("2/3", ["1/3"], ["1/3"], [[1, 1], [1, 3]])
    assert p == from_weights([F(1, 3)])
    with pytest.raises(NotInParameterSet):
        make_point("2/3", ["1/3"], ["1/3"], [[1, 1], [1, -3]])


positive = st.integers(1, 12)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda d: st.tuples(
    st.lists(positive, min_size=d + 1, max_size=d + 1),
    st.lists(st.integers(-4, 4), min_size=d * (d - 1) // 2, max_size=d * (d - 1) // 2))))
def test_gram_construction_lands_in_parameter_set(data):
    shares, mixing = data
    total = sum(shares)
    c = [F(s, total) for s in shares[1:]]
    try:
        p = from_weights(c, mixing)
    except (DegenerateStep, ZeroParameter):
        assume(False)
    assert p.c == tuple(c)
    assert defining_identity_holds(p)
    q = involution(p)
    assert defining_identity_holds(q)
    assert involution(q) == p


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=F(-3), max_value=F(3), max_denominator=12)
                .filter(lambda v: v != 0), min_size=1, max_size=4))
def test_triangular_family_valid_whenever_defined(c):
    try:
        p = family_triangular(c)
    except (ZeroParameter, ZeroDenominator):
        assume(False)
    assert defining_identity_holds(p)


def test_triangular_diagonal_sign():
    # u_11 = -1/c_1 would break the zero-row-sum condition: (1 - c_1 u_11) c~_1 != 0
    with pytest.raises(NotInParameterSet):
        make_point(F(2, 3), [F(1, 3)], [F(1, 3)], [[1, 1], [1, -3]])
    assert family_triangular([F(1, 3)]).U[1][1] == 3


def test_gram_equal_weights_is_valid():
    p = from_weights([F(1, 3), F(1, 3)])
    assert defining_identity_holds(p)
    assert p.c_tilde[0] != 0 and p.c_tilde[1] != 0


@given(st.fractions(min_value=F(-5), max_value=F(5), max_denominator=20)
       .filter(lambda v: v not in (0, 1)))
def test_gram_d1_column(c1):
    p = from_weights([c1])
    assert [row[1] for row in p.U] == [1, 1 / c1]
    assert p.c_tilde == (c1,)
