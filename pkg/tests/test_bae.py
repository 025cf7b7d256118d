import math
import random
from fractions import Fraction

import numpy as np
import pytest

from gaudin.algebra import ModuleSpec
from gaudin.bae import (
    NonGenericError,
    RootCoordinates,
    bae_residual,
    factorized_operator,
    factorized_values,
    level_profile,
    newton_solve,
    profile_from_counts,
    root_coordinates,
    root_coordinates_from_space,
    verify_eigenvector,
    weight_function,
    weight_function_counts,
    weight_vector,
)
from gaudin.betheop import build_bethe_operator
from gaudin.polynomials import Poly
from gaudin.ratfun import RatFun
from gaudin.scalars import to_complex
from gaudin.spaces import QuasiExpSpace, membership_test

F = Fraction


def P(*coeffs):
    return Poly([F(c) for c in coeffs])


def test_level_profile():
    assert level_profile((2, 2), 2) == (4, 2)
    assert level_profile((1, 1, 1), 3) == (3, 2, 1)
    assert level_profile((3,), 2) == (3, 0)
    assert profile_from_counts((1, 0, 1), 3) == (2, 1, 1)


def test_residual_golden_quadratic():
    spec = ModuleSpec(2, ("0", "1"), ((1,), (1,)), ("0", "1"), (1, 1))
    for root in ((3 + math.sqrt(5)) / 2, (3 - math.sqrt(5)) / 2):
        t = root_coordinates(spec, [[complex(root)]])
        res = bae_residual(t, [0.0, 1.0])
        assert max(abs(r) for r in res) <= 1e-12


def test_residual_trivial_highest_weight():
    spec = ModuleSpec(2, ("0", "1"), ((1,), (1,)), ("0", "1"), (2, 0))
    t = root_coordinates(spec, [[]])
    assert bae_residual(t, [0.0, 1.0]) == []


def test_residual_rejects_coincident():
    spec = ModuleSpec(2, ("0", "1"), ((1,), (1,)), ("0", "1"), (1, 1))
    t = root_coordinates(spec, [[0.0]])
    with pytest.raises(NonGenericError):
        bae_residual(t, [0.0, 1.0])


def test_newton_solve_golden_roots():
    spec = ModuleSpec(2, ("0", "1"), ((1,), (1,)), ("0", "1"), (1, 1))
    sols = newton_solve(spec, seed=2024)
    assert len(sols) == 2
    got = sorted(to_complex(s.upper[0][0]).real for s in sols)
    expect = sorted([(3 - math.sqrt(5)) / 2, (3 + math.sqrt(5)) / 2])
    assert all(abs(a - b) <= 1e-10 for a, b in zip(got, expect))


def test_newton_solve_trivial():
    spec = ModuleSpec(2, ("0", "1"), ((1,), (1,), (1,)), ("0", "1", "2"), (3, 0))
    sols = newton_solve(spec, seed=1)
    assert len(sols) == 1
    assert sols[0].upper == ((),)


def test_newton_requires_simple_points():
    spec = ModuleSpec(2, ("0", "1"), ((2, 0),), ("0",), (1, 1))
    with pytest.raises(ValueError):
        newton_solve(spec)


def test_factorized_operator_rank_one():
    t = RootCoordinates([(F(0), F(2))])
    D = factorized_operator(t, (F(3),))
    h1 = D.coeff_of_dpower_from_top(1)
    for pt in (F(5), F(7)):
        assert h1.evaluate(pt) == -(3 + 1 / pt + 1 / (pt - 2))


def test_factorized_values_match_exact_composition():
    t = RootCoordinates([(F(0), F(1), F(2)), (F(5), F(7)), (F(3),)])
    K = (F(0), F(1), F(5, 2))
    D = factorized_operator(t, K)
    for pt in (F(9), F(1, 2)):
        values = factorized_values(t, K, pt)
        for i in (1, 2, 3):
            exact = D.coeff_of_dpower_from_top(i).evaluate(pt)
            assert abs(complex(exact) - values[i - 1]) <= 1e-9 * max(1, abs(complex(exact)))


def test_factorized_char_at_infinity():
    from gaudin.spaces import char_at_infinity

    t = RootCoordinates([(F(0), F(1), F(2)), (F(5), F(7)), (F(3),)])
    K = (F(0), F(1), F(5, 2))
    D = factorized_operator(t, K)
    assert char_at_infinity(D) == Poly.from_roots(K)


def test_weight_function_homogeneity():
    """omega_J is homogeneous of degree -(sum of upper level sizes)."""
    t01, t02, t1, t2 = F(2), F(5), F(7), F(11)
    c = F(3)
    base = RootCoordinates([(t01, t02), (t1,), (t2,)])
    scaled = RootCoordinates([(c * t01, c * t02), (c * t1,), (c * t2,)])
    v0 = weight_function_counts(base, 3, (1, 0, 1))
    v1 = weight_function_counts(scaled, 3, (1, 0, 1))
    for J, val in v0.items():
        assert v1[J] == val / c**2  # l_1 + l_2 = 2 pole factors per term


def test_chi_telescoping():
    """-sum_a chi^a collapses to -sum K - sum 1/(u-b): interior levels cancel."""
    t = RootCoordinates([(F(0), F(1), F(2)), (F(5), F(7)), (F(3),)])
    K = (F(0), F(1), F(2))
    D = factorized_operator(t, K)
    h1 = D.coeff_of_dpower_from_top(1)
    expect = RatFun(P(-3))
    for b in (F(0), F(1), F(2)):
        expect = expect - RatFun(P(1), Poly([-b, F(1)]))
    assert h1 == expect


def test_root_coordinates_from_space_golden():
    root = (3 + math.sqrt(5)) / 2
    f11 = -(root - 1)  # p_1 = u + f11 with value fixed by the kernel relation
    # recover the space through the numeric pipeline instead of hand algebra
    spec = ModuleSpec(2, ("0", "1"), ((1,), (1,)), ("0", "1"), (1, 1))
    op = build_bethe_operator(spec)
    from gaudin.spectral import spectrum_analysis

    report = spectrum_analysis(op)
    found = []
    for X in report.kernels:
        t, generic = root_coordinates_from_space(X)
        assert generic
        assert [abs(z) for z in t.levels[0]] == sorted(abs(z) for z in t.levels[0])
        found.append(t.levels[1][0])
    got = sorted(z.real for z in found)
    expect = sorted([(3 - math.sqrt(5)) / 2, (3 + math.sqrt(5)) / 2])
    assert all(abs(a - b) < 1e-8 for a, b in zip(got, expect))


def test_trailing_level_degree():
    X = QuasiExpSpace((F(0), F(1)), (P(0, 1), P(0, 1)))
    t, _ = root_coordinates_from_space(X)
    # y_{N-1} = p_N has degree lam_N = 1
    assert len(t.levels[1]) == 1


def test_weight_function_worked_example_exact():
    rng = random.Random(17)
    for _ in range(3):
        vals = rng.sample(range(2, 40), 4)
        t01, t02, t1, t2 = (F(v) for v in vals)
        t = RootCoordinates([(t01, t02), (t1,), (t2,)])
        got = weight_function_counts(t, 3, (1, 0, 1))
        expect_31 = 1 / ((t2 - t1) * (t1 - t01))
        expect_13 = 1 / ((t2 - t1) * (t1 - t02))
        assert got[(3, 1)] == expect_31
        assert got[(1, 3)] == expect_13


def test_weight_function_golden_shape():
    spec = ModuleSpec(2, ("0", "1"), ((1,), (1,)), ("0", "1"), (1, 1))
    t = root_coordinates(spec, [[F(5)]])
    vals = weight_function(t, spec)
    assert vals[(2, 1)] == 1 / (F(5) - 0)
    assert vals[(1, 2)] == 1 / (F(5) - 1)


def test_weight_function_highest_weight_trivial():
    spec = ModuleSpec(2, ("0", "1"), ((1,), (1,), (1,)), ("0", "1", "2"), (3, 0))
    t = root_coordinates(spec, [[]])
    vals = weight_function(t, spec)
    assert vals == {(1, 1, 1): 1}


def test_weight_function_permutation_invariance():
    spec = ModuleSpec(2, ("0", "1/2"), ((1,),) * 4, ("0", "1", "2", "3"), (2, 2))
    a, b = 4.5 + 0.25j, 6.0 - 1.0j
    t1 = root_coordinates(spec, [[a, b]])
    t2 = root_coordinates(spec, [[b, a]])
    v1, v2 = weight_vector(t1, spec), weight_vector(t2, spec)
    assert np.allclose(v1, v2)
    for pt in (9.0, 11.0):
        x1 = factorized_values(t1, [0.0, 0.5], pt)
        x2 = factorized_values(t2, [0.0, 0.5], pt)
        assert np.allclose(x1, x2)


def test_verify_eigenvector_golden(golden_op):
    spec = golden_op.spec
    sols = newton_solve(spec, seed=2024)
    for sol in sols:
        report = verify_eigenvector(sol, spec, golden_op, tol=1e-8)
        assert report.passed
        assert report.residual <= 1e-10


def test_verify_eigenvector_negative_control(golden_op):
    spec = golden_op.spec
    sols = newton_solve(spec, seed=2024)
    bad = root_coordinates(spec, [[to_complex(sols[0].upper[0][0]) + 0.1]])
    report = verify_eigenvector(bad, spec, golden_op, tol=1e-8)
    assert not report.passed
    assert report.residual > 1e-4


def test_integral_gap_instance_has_non_generic_point():
    """With K = (0,1) over b = (0,1,2,3) at weight (2,2) one fiber point has a
    repeated level-one root, so only five of the six eigenvectors admit root
    coordinates; this is why the count instances use non-integral gaps."""
    X = QuasiExpSpace((F(0), F(1)), (P(4, -4, 1), P(1, -2, 1)))
    spec = ModuleSpec(2, ("0", "1"), ((1,),) * 4, ("0", "1", "2", "3"), (2, 2))
    assert membership_test(X, spec).ok
    t, generic = root_coordinates_from_space(X, tol=1e-6)
    assert not generic  # y_1 = (u-1)^2 has a double root
    sols = newton_solve(spec, seed=2024)
    assert len(sols) == 5
