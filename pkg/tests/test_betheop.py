from fractions import Fraction

from gaudin.algebra import ModuleSpec
from gaudin.betheop import (
    build_bethe_operator,
    check_polynomiality,
    commutativity_check,
    exact_sample_points,
    expected_leading_symbol,
    first_coefficient_residual,
    leading_symbol,
    weight_blocks_preserved,
)
from gaudin.linalg import Matrix
from gaudin.ratfun import RatFun

F = Fraction


def test_sample_points_avoid_poles():
    pts = exact_sample_points([F(2), F(5)], 5)
    assert pts == [F(3), F(4), F(6), F(7), F(8)]


def test_single_row_operator():
    spec = ModuleSpec(1, ("2",), ((1,),), ("3",), (1,))
    op = build_bethe_operator(spec)
    assert op.operator.order == 1
    b1 = op.coefficient(1)
    # B_1 = -K - 1/(u-b)
    for pt in (F(5), F(9)):
        assert b1.evaluate(pt).get(0, 0) == -2 - 1 / (pt - 3)


def test_first_coefficient_identity_family(exact_family_ops):
    for op in exact_family_ops:
        assert first_coefficient_residual(op).is_zero()


def test_leading_symbol_family(exact_family_ops):
    for op in exact_family_ops:
        assert leading_symbol(op) == expected_leading_symbol(op)


def test_first_coefficient_block_formula(golden_op):
    # B_1 block = -(K_1+K_2) - (1/u + 1/(u-1)) times the identity
    b1 = golden_op.block(1)
    for pt in (F(3), F(5), F(11)):
        expect = -(F(0) + F(1)) - (1 / pt + 1 / (pt - 1))
        got = b1.evaluate(pt)
        assert got.scalar_of_identity() == expect


def test_polynomiality_family(exact_family_ops):
    for op in exact_family_ops:
        report = check_polynomiality(op)
        assert report.ok, report.failures
        n = op.spec.size
        assert all(d <= n for d in report.degrees)
        for (i, s), order in report.pole_orders.items():
            assert order <= min(i, op.spec.factor_sizes[s])


def test_commutativity_family(exact_family_ops):
    for op in exact_family_ops:
        assert commutativity_check(op)


def test_weight_blocks(exact_family_ops):
    for op in exact_family_ops:
        assert weight_blocks_preserved(op)


def test_commutativity_detects_failure(golden_op):
    # sanity: a corrupted pair of values does not commute
    a = golden_op.evaluate(2, F(3))
    bad = a + Matrix([[F(0), F(1), F(0), F(0)],
                      [F(0), F(0), F(0), F(0)],
                      [F(0), F(0), F(0), F(0)],
                      [F(0), F(0), F(0), F(0)]])
    assert not a.commutator(bad).is_zero()


def test_weyl_style_full_tensor_polynomiality():
    """On the full tensor power of vector representations, clearing by the
    product over points of (u - z_s) already yields matrix polynomials."""
    spec = ModuleSpec(2, ("0", "1"), ((1,), (1,), (1,)), ("0", "1", "2"), (2, 1))
    op = build_bethe_operator(spec)
    pole = spec.pole_polynomial()
    for i in (1, 2):
        prod = op.coefficient(i) * RatFun(pole)
        assert prod.den.degree == 0
