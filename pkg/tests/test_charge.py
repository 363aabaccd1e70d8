from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from f0stab.charge import (
    Angle,
    CentralCharge,
    ExactComplex,
    I,
    LiftedGL,
    act_lifted,
    ec,
    evaluate,
    format_charge,
    identity_lifted,
    in_H,
    is_in_hreg,
    mat2_act,
    normalize,
    paper_g_element,
    parse_charge,
    phase_cmp,
    support_constant,
)
from f0stab.klattice import KClass, QuotClass, delta, delta_set, gamma

rat = st.fractions(min_value=-8, max_value=8, max_denominator=12)


def charges_in_H():
    return (
        st.tuples(rat, rat)
        .map(lambda t: ExactComplex(*t))
        .filter(lambda z: in_H(z))
    )


# -- literals ---------------------------------------------------------------

def test_parse_format_roundtrip():
    for text in ["1/4+1/4*i", "0+1*i", "-3+0*i", "2-5/7*i", "1/2*i", "-2", "i", "-i"]:
        z = parse_charge(text)
        assert parse_charge(format_charge(z)) == z


def test_parse_rejects_garbage():
    for bad in ["", "1.5", "x", "1/0", "2+3j", "1+", "+*i", "1++2*i"]:
        with pytest.raises(ValueError):
            parse_charge(bad)


# -- half plane and phases ---------------------------------------------------

def test_in_H_examples():
    assert in_H(I)
    assert in_H(ec(-3))
    assert not in_H(ec(2))
    assert not in_H(ec(0))


def test_phase_cmp_examples():
    assert phase_cmp(ec(1, 1), ec(-1, 1)) == -1
    assert phase_cmp(I, ec(-1)) == -1
    assert phase_cmp(ec(-2), ec(-5)) == 0
    with pytest.raises(ValueError):
        phase_cmp(ec(0), I)
    with pytest.raises(ValueError):
        phase_cmp(ec(1), I)


@given(charges_in_H(), charges_in_H(), charges_in_H())
def test_phase_cmp_total_preorder(a, b, c):
    # antisymmetry and transitivity of the exact comparison
    assert phase_cmp(a, b) == -phase_cmp(b, a)
    if phase_cmp(a, b) <= 0 and phase_cmp(b, c) <= 0:
        assert phase_cmp(a, c) <= 0


@given(charges_in_H(), charges_in_H(), st.fractions(min_value=F(1, 7), max_value=7, max_denominator=9))
def test_phase_cmp_positive_scaling_invariance(a, b, c):
    assert phase_cmp(a.scale(c), b.scale(c)) == phase_cmp(a, b)


@given(charges_in_H(), charges_in_H())
def test_phase_cmp_complex_scaling_invariance(a, b):
    c = ec(F(1, 3), F(1, 2))
    ca, cb = c * a, c * b
    if in_H(ca) and in_H(cb):
        assert phase_cmp(ca, cb) == phase_cmp(a, b)


# -- evaluation ----------------------------------------------------------------

def test_evaluate_examples():
    Z = CentralCharge(ec(1), I)
    assert evaluate(Z, delta()) == ec(2, 2)
    assert evaluate(Z, gamma(2)) == ec(1)
    assert evaluate(Z, QuotClass((1, 2))) == ec(1, 2)
    assert evaluate(Z, (1, 2)) == ec(1, 2)


# -- regularity ----------------------------------------------------------------

def brute_vanishing(Z: CentralCharge, n_max: int) -> bool:
    """Oracle: does Z kill some member of the truncated stable family?"""
    return any(evaluate(Z, v).is_zero() for v in delta_set(n_max))


def test_is_in_hreg_examples():
    assert is_in_hreg(CentralCharge(ec(1), I))
    assert not is_in_hreg(CentralCharge(ec(1), ec(-1)))
    Z = CentralCharge(ec(2), ec(-1))
    assert not is_in_hreg(Z)
    assert evaluate(Z, (1, 2)).is_zero()  # the witness found by the brute scan
    assert not is_in_hreg(CentralCharge(ec(0), I))
    assert not is_in_hreg(CentralCharge(I, ec(0)))


@given(st.fractions(min_value=-6, max_value=6, max_denominator=6),
       st.fractions(min_value=-6, max_value=6, max_denominator=6))
def test_is_in_hreg_matches_brute_scan(a, b):
    # real charges with small denominators: any vanishing family member has
    # numerator/denominator bounded by the ratio's, so a scan to 50 is conclusive
    Z = CentralCharge(ec(a), ec(b))
    assert is_in_hreg(Z) == (not brute_vanishing(Z, 50) and not (a == 0 and b == 0))


@given(st.fractions(min_value=-4, max_value=4, max_denominator=5),
       st.fractions(min_value=-4, max_value=4, max_denominator=5))
def test_is_in_hreg_never_vanishes_when_true(re, im):
    Z = CentralCharge(ExactComplex(re, im), ec(1, 1))
    if is_in_hreg(Z):
        assert not brute_vanishing(Z, 60)


def test_hreg_invariant_under_quotient_twist():
    from f0stab.klattice import quot_apply, quotient_action, t

    qt = quotient_action(t())
    for a, b in [(1, 1), (2, -1), (3, 5), (-1, 2)]:
        Z = CentralCharge(ec(a, 1), ec(b, 1))
        moved = CentralCharge(
            evaluate(Z, quot_apply(qt, QuotClass((1, 0)))),
            evaluate(Z, quot_apply(qt, QuotClass((0, 1)))),
        )
        assert is_in_hreg(Z) == is_in_hreg(moved)


# -- normalization ---------------------------------------------------------------

def test_normalize_example():
    c, Zn = normalize(CentralCharge(ec(1), I))
    assert c == ec(F(1, 4), F(1, 4))
    assert Zn.z0 == ec(F(1, 4), F(1, 4))
    assert Zn.z1 == ec(F(-1, 4), F(1, 4))
    assert Zn.z0 + Zn.z1 == ec(0, F(1, 2))


def test_normalize_fixed_point():
    Z = CentralCharge(ec(0, F(1, 4)), ec(0, F(1, 4)))
    c, Zn = normalize(Z)
    assert c == ec(1) and Zn == Z


def test_normalize_idempotent():
    _, Zn = normalize(CentralCharge(ec(3, 2), ec(-1, 5)))
    c2, Zn2 = normalize(Zn)
    assert c2 == ec(1) and Zn2 == Zn


def test_normalize_excluded_locus():
    with pytest.raises(ValueError):
        normalize(CentralCharge(ec(1), ec(-1)))


# -- support constant -------------------------------------------------------------

def test_support_constant_orthonormal_frame():
    assert support_constant(CentralCharge(ec(1), I), 10) == 1


def test_support_constant_scaled_frame():
    # oracle: exact scan of the ratio over the truncated family
    Z = CentralCharge(ec(2), ec(0, 2))
    worst = max(
        F(sum(c * c for c in v.coords)) / evaluate(Z, v).norm_sq() for v in delta_set(50)
    )
    assert worst == F(1, 4)
    assert support_constant(Z, 50) == F(1, 2)


@given(st.integers(-5, 5), st.integers(1, 5), st.integers(-5, 5), st.integers(1, 5))
def test_support_constant_dominates_whole_family(a, b, c, d):
    Z = CentralCharge(ec(a, b), ec(c, d))
    if not is_in_hreg(Z):
        return
    C = support_constant(Z, 5)
    for v in delta_set(60):
        norm_sq = F(sum(x * x for x in v.coords))
        assert C * C * evaluate(Z, v).norm_sq() >= norm_sq


# -- lifted elements ---------------------------------------------------------------

def test_act_lifted_trivial():
    Z = CentralCharge(ec(1), I)
    assert act_lifted(Z, identity_lifted()) == Z
    half = act_lifted(Z, LiftedGL(((F(2), F(0)), (F(0), F(2))), 0))
    assert half == CentralCharge(ec(F(1, 2)), ec(0, F(1, 2)))


def test_act_lifted_rotation():
    # rotation by a quarter turn lifts with f(1/2) = 1, i.e. anchor 1
    rot = ((F(0), F(-1)), (F(1), F(0)))
    with pytest.raises(ValueError):
        LiftedGL(rot, 0)
    g = LiftedGL(rot, 1)
    Z = CentralCharge(ec(1), I)
    assert act_lifted(Z, g) == CentralCharge(ec(0, -1), ec(1))


def test_lifted_compose_and_inverse():
    rot = LiftedGL(((F(0), F(-1)), (F(1), F(0))), 1)
    sq = rot.compose(rot)
    assert sq.matrix == ((F(-1), F(0)), (F(0), F(-1)))
    assert sq.anchor == 1  # f(1/2) = 3/2 sits in the half-open window at 1
    inv = rot.inverse()
    assert inv.anchor == 0
    assert rot.compose(inv).matrix == identity_lifted().matrix
    assert rot.compose(inv).anchor == 0


def _normalized_positive(x_re, x_im):
    x = ExactComplex(x_re, x_im)
    return CentralCharge(x, ec(0, F(1, 2)) - x)


def test_paper_g_element_matches_inverse_twist():
    from f0stab.klattice import apply, project, t

    t_inv = t().inverse()
    for x_re, x_im in [(F(1, 4), F(1, 4)), (F(1, 8), F(1, 4)), (F(1, 2), F(1, 8)),
                       (F(3, 8), F(3, 8)), (F(1), F(1, 4))]:
        Z = _normalized_positive(x_re, x_im)
        g = paper_g_element(Z)
        assert g.anchor == 0
        moved = act_lifted(Z, g)
        for i in (0, 1):
            assert moved(gamma(i)) == evaluate(Z, project(apply(t_inv, gamma(i))))
        # fixes the charge of the point class: the direction i/2
        assert mat2_act(g.matrix, ec(0, F(1, 2))) == ec(0, F(1, 2))


def test_paper_g_element_rejects_bad_frames():
    with pytest.raises(ValueError):  # not normalized
        paper_g_element(CentralCharge(ec(1), I))
    with pytest.raises(ValueError):  # ray: phases equal
        paper_g_element(CentralCharge(ec(0, F(1, 4)), ec(0, F(1, 4))))
    with pytest.raises(ValueError):  # negative chamber
        paper_g_element(_normalized_positive(F(-1, 4), F(1, 4)))


def test_angle_ordering():
    a = Angle.of(ec(1, 1))        # phase 1/4
    b = Angle.of(ec(-1, 1))       # phase 3/4
    c = Angle.of(ec(1, -1))       # phase -3/4, canonicalized downstairs
    assert a.cmp(b) == -1
    assert b.cmp(a) == 1
    assert c.cmp(a) == -1
    assert a.cmp(a.shifted(1)) == -1
    assert Angle.of(ec(2, 2)).cmp(a) == 0
