"""Chord decomposition and the recursive quadrature evaluator."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floorconvex import sequences as sq
from floorconvex.decomposition import (NormalizedSplit, q_decomp,
                                       q_exact_linear, split)
from floorconvex.topfunctions import (PiecewiseLinearTop, QuadraticTop,
                                      constant_top, mountain_top,
                                      q2_exact_subprism, random_concave_top,
                                      triangle_top)

F = Fraction


# ---------------------------------------------------------------------------
# split

def test_split_square():
    sp = split(constant_top(), F(1, 3))
    assert sp.left_mass == F(1, 6) and sp.right_mass == F(1, 3)
    assert sp.left.knots == ((0, 2), (1, 0))
    assert sp.right.knots == ((0, 0), (1, 2))


def test_split_triangle_degenerates_left():
    sp = split(triangle_top(), F(2, 5))
    assert sp.left is None and sp.left_mass == 0
    assert sp.right_mass == F(3, 5)
    assert sp.right.knots == ((0, 0), (1, 2))


def test_split_parabola_self_similar():
    sp = split(QuadraticTop(), F(1, 4))
    assert sp.left_mass == F(1, 64)
    assert sp.right_mass == F(27, 64)
    assert isinstance(sp.left, QuadraticTop)


def test_split_rejects_bad_abscissa():
    with pytest.raises(ValueError):
        split(constant_top(), F(0))
    with pytest.raises(ValueError):
        split(constant_top(), F(1))
    with pytest.raises(TypeError):
        split("not a top", F(1, 2))


@given(st.integers(min_value=0, max_value=10 ** 6),
       st.integers(min_value=1, max_value=63))
@settings(max_examples=100, deadline=None)
def test_split_mass_identity_and_validity(seed, k):
    rng = np.random.default_rng(seed)
    G = random_concave_top(rng)
    t = F(k, 64)
    gt = F(G.value(t))
    if gt <= 0:
        return
    sp = split(G, t)
    assert sp.left_mass + sp.right_mass + gt / 2 == 1
    for side, mass in ((sp.left, sp.left_mass), (sp.right, sp.right_mass)):
        if mass > 0:
            assert side is not None
            assert side.integral() == 1      # unit integral, exact
        else:
            assert side is None


# ---------------------------------------------------------------------------
# exact linear recursion

def test_exact_linear_reproduces_triangle_and_square():
    for n in range(10):
        assert q_exact_linear(2, 0, n) == sq.t_closed(n)
        assert q_exact_linear(0, 1, n) == sq.q_closed(n)
        assert q_exact_linear(-2, 2, n) == sq.t_closed(n)


def test_exact_linear_rejects_non_unit_integral():
    with pytest.raises(ValueError):
        q_exact_linear(1, 1, 3)


def test_exact_linear_general_slope_is_between_families():
    # any strict trapezoid sits strictly between triangle and square values
    for n in (2, 3, 4, 5):
        v = q_exact_linear(F(1), F(1, 2), n)
        assert sq.t_closed(n) < v < sq.q_closed(n)


# ---------------------------------------------------------------------------
# q_decomp

@pytest.mark.parametrize("n", range(7))
def test_q_decomp_reproduces_closed_families(n):
    for G, ref in [(triangle_top(), sq.t_closed(n)),
                   (constant_top(), sq.q_closed(n)),
                   (QuadraticTop(), sq.p_closed(n))]:
        r = q_decomp(G, n, tol=1e-9)
        assert not r.exhausted
        assert abs(r.value - float(ref)) < 1e-8


def test_q_decomp_examples():
    assert abs(q_decomp(triangle_top(), 4, 1e-9).value - 1 / 180) < 1e-9
    assert abs(q_decomp(constant_top(), 3, 1e-9).value - 5 / 36) < 1e-9
    assert abs(q_decomp(QuadraticTop(), 2, 1e-9).value - 2 / 5) < 1e-9


def test_q_decomp_two_points_matches_exact_functional():
    rng = np.random.default_rng(123)
    for _ in range(100):
        G = random_concave_top(rng)
        r = q_decomp(G, 2, tol=1e-9)
        assert abs(r.value - float(q2_exact_subprism(G))) < 1e-9


def test_q_decomp_tents_are_shear_images_of_the_triangle():
    # a tent body is an area-preserving shear of the triangle body, so its
    # whole sequence coincides with t_n
    for s in (F(1, 4), F(1, 2), F(7, 8)):
        for n in (2, 3):
            r = q_decomp(mountain_top(s), n, tol=1e-9)
            assert abs(r.value - float(sq.t_closed(n))) < 1e-7


def test_q_decomp_mirror_symmetry():
    G = PiecewiseLinearTop(((0, F(1, 2)), (F(1, 4), F(3, 2)), (1, F(1, 2))))
    mirrored = PiecewiseLinearTop(((0, F(1, 2)), (F(3, 4), F(3, 2)),
                                   (1, F(1, 2))))
    for n in (2, 3):
        a = q_decomp(G, n, tol=1e-8)
        b = q_decomp(mirrored, n, tol=1e-8)
        assert abs(a.value - b.value) < 1e-7


def test_q_decomp_budget_exhaustion_is_flagged():
    G = PiecewiseLinearTop(((0, F(1, 2)), (F(1, 3), F(3, 2)),
                            (F(2, 3), F(4, 3)), (1, 0)))
    r = q_decomp(G, 4, tol=1e-12, budget=50)
    assert r.exhausted
    ok = q_decomp(G, 2, tol=1e-9)
    assert not ok.exhausted


def test_q_decomp_input_validation():
    with pytest.raises(ValueError):
        q_decomp(constant_top(), -1)
    with pytest.raises(ValueError):
        q_decomp(constant_top(), 2, tol=0)


def test_q_decomp_base_cases():
    assert q_decomp(constant_top(), 0).value == 1.0
    assert q_decomp(QuadraticTop(), 1).value == 1.0
