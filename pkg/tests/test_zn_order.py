from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from app.core.errors import PreconditionError
from app.core.ordering import Ordering, Sign
from app.services.zn_order import (
    LEX,
    SWAPPED_LEX,
    EigenClass,
    EigenlineOrder,
    EigenOrder,
    IntMatrix2,
    QuadNum,
    eigen_sign,
    find_violation,
    lattice_points,
    levitt_check,
    lex_compare,
    matrix_period,
    order_catalog,
)
from strategies import points

FIGURE_EIGHT = IntMatrix2(1, 1, 1, 2)
CAT_MAP = IntMatrix2(2, 1, 1, 1)

NEGATIVE_MATRICES = [
    IntMatrix2(-1, 0, 0, -1),
    IntMatrix2(1, -1, 1, 0),
    IntMatrix2(0, -1, 1, 0),
    IntMatrix2(0, -1, 1, -1),
    IntMatrix2(-1, 1, 0, -1),
    IntMatrix2(-2, -1, -1, -1),
]

POSITIVE_MATRICES = [
    CAT_MAP,
    FIGURE_EIGHT,
    IntMatrix2(1, 0, 0, 1),
    IntMatrix2(1, 1, 0, 1),
    IntMatrix2(1, 0, -3, 1),
    IntMatrix2(3, 2, 1, 1),
    IntMatrix2(1, 1, 1, 0),
    IntMatrix2(2, 1, 1, 0),
]


def test_quadnum_exact_signs():
    root5 = QuadNum.sqrt(5)
    assert root5.sign() is Sign.POSITIVE
    assert (2 - root5).sign() is Sign.NEGATIVE
    assert (3 - root5).sign() is Sign.POSITIVE
    assert QuadNum(1, 1, 4) == 3
    assert (root5 * root5) == 5
    assert (1 / root5) * root5 == 1
    assert QuadNum(Fraction(1, 2), Fraction(1, 2), 5) > 1


@given(
    st.fractions(min_value=-100, max_value=100, max_denominator=50),
    st.fractions(min_value=-100, max_value=100, max_denominator=50),
    st.integers(2, 60),
)
def test_quadnum_sign_matches_high_precision_float(p, q, d):
    assume(int(d**0.5) ** 2 != d)
    with mpmath.workdps(60):
        approx = mpmath.mpf(p.numerator) / p.denominator + (
            mpmath.mpf(q.numerator) / q.denominator * mpmath.sqrt(d)
        )
        expected = 0 if approx == 0 else (1 if approx > 0 else -1)
    assert int(QuadNum(p, q, d).sign()) == expected


def test_lex_compare():
    assert lex_compare((0, 0), (1, -5)) is Ordering.LT
    assert lex_compare((2, 3), (2, 3)) is Ordering.EQ
    assert lex_compare((0, 7), (1, 0)) is Ordering.LT
    assert SWAPPED_LEX.sign((7, -1)) is Sign.NEGATIVE


def test_eigen_sign_examples():
    assert eigen_sign(FIGURE_EIGHT, (1, 0)) is Sign.POSITIVE
    assert eigen_sign(FIGURE_EIGHT, (0, 0)) is Sign.ZERO
    assert eigen_sign(FIGURE_EIGHT, (0, 1)) is Sign.NEGATIVE
    c1, c2 = EigenOrder(FIGURE_EIGHT).coordinates((0, 1))
    assert c2 == -1 / QuadNum.sqrt(5)


def test_eigen_order_requires_positive_eigenvalues():
    with pytest.raises(PreconditionError):
        EigenOrder(IntMatrix2(-2, -1, -1, -1))
    with pytest.raises(PreconditionError):
        EigenlineOrder(IntMatrix2(0, 1, 1, 0))


def test_levitt_examples():
    report = levitt_check(CAT_MAP)
    assert report.preserves and report.verdict == "preserves"
    assert report.classification is EigenClass.POSITIVE_PAIR
    assert (report.trace, report.det, report.discriminant) == (3, 1, 5)

    neg = levitt_check(IntMatrix2(-1, 0, 0, -1))
    assert not neg.preserves and neg.classification is EigenClass.REPEATED
    assert neg.period == 2

    six = levitt_check(IntMatrix2(1, -1, 1, 0))
    assert six.verdict == "does-not-preserve"
    assert six.classification is EigenClass.COMPLEX_PAIR
    assert six.discriminant == -3
    assert six.period == 6

    assert levitt_check(IntMatrix2(1, 0, 0, 1)).preserves


def test_levitt_orientation_reversing():
    assert levitt_check(IntMatrix2(1, 1, 1, 0)).preserves
    swap = levitt_check(IntMatrix2(0, 1, 1, 0))
    assert not swap.preserves
    assert swap.classification is EigenClass.MIXED_PAIR
    assert isinstance(levitt_check(IntMatrix2(1, 1, 1, 0)).order, EigenlineOrder)


def test_levitt_rejects_non_automorphisms():
    with pytest.raises(PreconditionError) as info:
        levitt_check(IntMatrix2(2, 0, 0, 1))
    assert info.value.exit_code == 3


def test_report_to_dict():
    assert levitt_check(CAT_MAP).to_dict() == {
        "verdict": "preserves",
        "trace": 3,
        "det": 1,
        "discriminant": 5,
        "classification": "positive-real-pair",
        "order": "eigen(2,1;1,1)",
        "period": None,
    }


@pytest.mark.parametrize("matrix", POSITIVE_MATRICES, ids=str)
def test_positive_verdicts_carry_invariant_orders(matrix):
    report = levitt_check(matrix)
    assert report.preserves
    order = report.order
    for v in [(1, 0), (0, 1), (-3, 7), (5, 8), (13, -21), (50, -49)]:
        assert order.sign(matrix.apply(v)) is order.sign(v)
    assert find_violation(matrix, order, radius=10) is None


@given(points)
def test_eigen_orders_invariant_on_random_points(v):
    for matrix in (CAT_MAP, FIGURE_EIGHT, IntMatrix2(1, 1, 1, 0)):
        order = levitt_check(matrix).order
        assert order.sign(matrix.apply(v)) is order.sign(v)
        assert order.sign((-v[0], -v[1])) is -order.sign(v)


@pytest.mark.parametrize("matrix", NEGATIVE_MATRICES, ids=str)
def test_negative_verdicts_have_violations_for_every_catalog_order(matrix):
    assert not levitt_check(matrix).preserves
    for order in order_catalog():
        v = find_violation(matrix, order, radius=10)
        assert v is not None
        assert order.sign(matrix.apply(v)) is not order.sign(v)


def test_matrix_period():
    assert matrix_period(IntMatrix2(1, 0, 0, 1)) == 1
    assert matrix_period(IntMatrix2(0, -1, 1, 0)) == 4
    assert matrix_period(IntMatrix2(0, -1, 1, -1)) == 3
    assert matrix_period(CAT_MAP) is None


def test_lattice_points_scan_order():
    pts = list(lattice_points(1))
    assert len(pts) == 8
    assert pts[0] == (-1, -1)
    assert (0, 0) not in pts
    assert LEX.sign(pts[-1]) is Sign.POSITIVE
