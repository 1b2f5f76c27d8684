"""Exact-arithmetic backends: canonical forms, parameters, serialization."""

import doctest
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import blobtensor.scalars as scalars_module
from blobtensor.scalars import (GENERIC, BlobParams, GenericScalar,
                                ParameterError, check_params, context,
                                cyclotomic_field, cyclotomic_polynomial,
                                effective_max_n, gauss_integer, lambda_params,
                                residues_equal, specialize, validate_params)

P_GEN = BlobParams(3, 0, 2)
P5 = BlobParams(3, 5, 2)


def frac_poly_div(num_low, num, den_low, den):
    """Independent oracle: divide Laurent polynomials over Q by long
    division on Fraction coefficients; fails if inexact.  Returns a dict
    exponent -> Fraction."""
    num = {num_low + i: Fraction(c) for i, c in enumerate(num) if c}
    den = {den_low + i: Fraction(c) for i, c in enumerate(den) if c}
    out = {}
    while num:
        e_n = max(num)
        e_d = max(den)
        coeff = num[e_n] / den[e_d]
        out[e_n - e_d] = coeff
        for e, c in den.items():
            k = e_n - e_d + e
            num[k] = num.get(k, Fraction(0)) - coeff * c
            if not num[k]:
                del num[k]
    return out


def as_expo_dict(x):
    return {x.shift + i: Fraction(c) for i, c in enumerate(x.num) if c}


def test_gauss_integer_trivial_values():
    assert gauss_integer(0, P_GEN).is_zero()
    assert gauss_integer(1, P_GEN) == GENERIC.one


def test_gauss_integer_two_matches_division_oracle():
    # [2] = (q^2 - q^-2)/(q - q^-1) expanded by independent long division
    oracle = frac_poly_div(-2, (-1, 0, 0, 0, 1), -1, (-1, 0, 1))
    assert oracle == {1: Fraction(1), -1: Fraction(1)}
    two = gauss_integer(2, P_GEN)
    assert two.den == (1,)
    assert as_expo_dict(two) == oracle
    assert str(two) == "1*q^-1+1*q^1/1*q^0"


def test_gauss_integer_vanishes_at_root_of_unity():
    assert gauss_integer(5, P5).is_zero()
    assert gauss_integer(7, BlobParams(3, 7, 2)).is_zero()
    assert not gauss_integer(5, BlobParams(3, 7, 2)).is_zero()


@given(st.integers(-12, 12))
def test_gauss_negation(k):
    assert gauss_integer(k, P_GEN) == -gauss_integer(-k, P_GEN)


@given(st.integers(-10, 10))
@settings(max_examples=40)
def test_gauss_recursion(k):
    # [k+1] = q [k] + q^-k
    ctx = context(P_GEN)
    assert gauss_integer(k + 1, P_GEN) == \
        ctx.q * gauss_integer(k, P_GEN) + ctx.q_pow(-k)


def test_lambda_params_difference_is_gauss_m():
    for params in (P_GEN, P5, BlobParams(3, 7, 3), BlobParams(3, 0, -3)):
        lam1, lam2 = lambda_params(params)
        assert lam1 - lam2 == gauss_integer(params.m, params)


def test_lambda_params_closed_forms():
    lam1, lam2 = lambda_params(BlobParams(2, 0, 2))
    q = GENERIC.q
    u = q - q.inv()
    assert lam1 == (q ** 2) / u
    assert lam1 * lam2 == (u * u).inv()
    # frozen golden: q^2/(q-q^-1)^2 in canonical form
    prod = lam1 * lam2
    assert (prod.shift, prod.num, prod.den) == (2, (1,), (1, 0, -2, 0, 1))
    assert lam1 / lam2 == q ** 4


@given(st.integers(-8, 8).filter(lambda m: m not in (0, 1)))
@settings(max_examples=30)
def test_lambda_ratio_is_q_2m(m):
    params = BlobParams(2, 0, m)
    lam1, lam2 = lambda_params(params)
    assert lam1 / lam2 == GENERIC.q ** (2 * m)


def test_validate_params_codes():
    assert check_params(BlobParams(3, 5, 2)) is None
    assert check_params(BlobParams(3, 5, 5)) == "lambda1_eq_lambda2"
    assert check_params(BlobParams(3, 5, 6)) == "lambda1_eq_q2_lambda2"
    assert check_params(BlobParams(3, 4, 2)) == "l_not_odd"
    assert check_params(BlobParams(3, 1, 2)) == "l_not_odd"
    assert check_params(BlobParams(3, 0, 0)) == "lambda1_eq_lambda2"
    assert check_params(BlobParams(3, 0, 1)) == "lambda1_eq_q2_lambda2"
    assert check_params(BlobParams(0, 5, 2)) == "n_not_positive"
    with pytest.raises(ParameterError) as err:
        validate_params(BlobParams(3, 4, 2))
    assert err.value.code == "l_not_odd"
    validate_params(BlobParams(3, 0, -7))


def test_field_axioms_and_inverse():
    q = GENERIC.q
    u = q - q.inv()
    assert u.inv() * u == GENERIC.one
    with pytest.raises(ZeroDivisionError):
        GENERIC.zero.inv()
    F5 = cyclotomic_field(5)
    assert gauss_integer(5, P5).is_zero()
    with pytest.raises(ZeroDivisionError):
        gauss_integer(5, P5).inv()
    assert (F5.q + F5.one).inv() * (F5.q + F5.one) == F5.one


def test_cross_backend_equality_is_type_error():
    F5 = cyclotomic_field(5)
    with pytest.raises(TypeError):
        GENERIC.q == F5.q
    with pytest.raises(TypeError):
        F5.q == GENERIC.q
    F7 = cyclotomic_field(7)
    with pytest.raises(TypeError):
        F5.q == F7.q
    with pytest.raises(TypeError):
        GENERIC.q + F5.q


def test_canonical_idempotence():
    # re-normalizing a canonical value changes nothing
    lam1, _ = lambda_params(P_GEN)
    again = GenericScalar.make(lam1.shift, lam1.num, lam1.den)
    assert (again.shift, again.num, again.den) == \
        (lam1.shift, lam1.num, lam1.den)
    # non-canonical input normalizes: q * 2q / (2q^2 - 2) = q^2/(q^2 - 1)
    messy = GenericScalar.make(1, (0, 2), (-2, 0, 2))
    direct = GENERIC.q ** 2 / (GENERIC.q ** 2 - GENERIC.one)
    assert (messy.shift, messy.num, messy.den) == \
        (direct.shift, direct.num, direct.den)


def test_denominator_normalization():
    # leading denominator coefficient is positive after reduction
    x = GENERIC.one / (GENERIC.one - GENERIC.q)
    assert x.den[-1] > 0
    assert x == -(GENERIC.one / (GENERIC.q - GENERIC.one))


def test_serialization_round_trip_generic():
    values = [GENERIC.zero, GENERIC.one, GENERIC.q ** -3,
              lambda_params(P_GEN)[0],
              (GENERIC.q ** 2 - GENERIC.from_int(7)) /
              (GENERIC.q ** 5 + GENERIC.q.inv() * GENERIC.from_int(3))]
    for v in values:
        s = GENERIC.serialize(v)
        assert GENERIC.parse(s) == v
        assert GENERIC.serialize(GENERIC.parse(s)) == s


def test_serialization_round_trip_cyclotomic():
    F5 = cyclotomic_field(5)
    values = [F5.zero, F5.one, F5.q_pow(3),
              (F5.q + F5.one) / F5.from_int(6),
              (F5.q - F5.from_int(2)).inv()]
    for v in values:
        s = F5.serialize(v)
        assert F5.parse(s) == v
        assert F5.serialize(F5.parse(s)) == s
    assert len(str(F5.zero).split(",")) == F5.deg


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(5) == (1, 1, 1, 1, 1)
    assert cyclotomic_polynomial(7) == (1,) * 7
    assert cyclotomic_polynomial(9) == (1, 0, 0, 1, 0, 0, 1)
    assert cyclotomic_polynomial(15) == (1, -1, 0, 1, -1, 1, 0, -1, 1)


def test_q_is_primitive_root():
    for l in (3, 5, 7, 9):
        F = cyclotomic_field(l)
        assert F.q ** l == F.one
        for k in range(1, l):
            assert not (F.q ** k == F.one)


scalar_exprs = st.recursive(
    st.one_of(st.integers(-4, 4).map(lambda k: ("int", k)),
              st.just(("q",)), st.just(("qinv",))),
    lambda children: st.one_of(
        st.tuples(st.just("add"), children, children),
        st.tuples(st.just("mul"), children, children),
        st.tuples(st.just("neg"), children)),
    max_leaves=12)


def eval_expr(expr, field):
    tag = expr[0]
    if tag == "int":
        return field.from_int(expr[1])
    if tag == "q":
        return field.q
    if tag == "qinv":
        return field.q.inv()
    if tag == "add":
        return eval_expr(expr[1], field) + eval_expr(expr[2], field)
    if tag == "mul":
        return eval_expr(expr[1], field) * eval_expr(expr[2], field)
    return -eval_expr(expr[1], field)


@given(scalar_exprs)
@settings(max_examples=150)
def test_specialization_is_ring_homomorphism(expr):
    # evaluate in the generic field then specialize = evaluate cyclotomically
    F5 = cyclotomic_field(5)
    generic_value = eval_expr(expr, GENERIC)
    assert specialize(generic_value, F5) == eval_expr(expr, F5)


@given(scalar_exprs, scalar_exprs)
@settings(max_examples=60)
def test_generic_field_axioms_random(e1, e2):
    a = eval_expr(e1, GENERIC)
    b = eval_expr(e2, GENERIC)
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == GENERIC.zero
    if not b.is_zero():
        assert (a / b) * b == a


polys = st.lists(st.integers(-5, 5), min_size=1, max_size=5).filter(
    lambda c: any(c))


@given(polys, polys, polys)
@settings(max_examples=120)
def test_common_factors_fully_cancel(a, b, g):
    # make(a*g / b*g) must equal make(a / b): the canonical form is unique
    from blobtensor.scalars import _pmul

    ag = _pmul(tuple(a), tuple(g))
    bg = _pmul(tuple(b), tuple(g))
    assert GenericScalar.make(0, ag, bg) == \
        GenericScalar.make(0, tuple(a), tuple(b))


@given(polys, polys)
@settings(max_examples=60)
def test_canonical_form_coprimality(a, b):
    x = GenericScalar.make(0, tuple(a), tuple(b))
    from blobtensor.scalars import _pgcd, _pcontent
    from math import gcd as int_gcd

    if x.is_zero():
        return
    assert x.num[0] != 0 and x.den[0] != 0
    assert x.den[-1] > 0
    assert _pgcd(x.num, x.den) == (1,)
    assert int_gcd(_pcontent(x.num), _pcontent(x.den)) == 1


def test_residues_equal():
    assert residues_equal(7, 2, 5)
    assert not residues_equal(7, 3, 5)
    assert residues_equal(4, 4, 0)
    assert not residues_equal(4, -4, 0)
    assert residues_equal(-2, 3, 5)


def test_max_n_env_override(monkeypatch):
    assert effective_max_n("generic") == 12
    assert effective_max_n("cyclotomic") == 16
    monkeypatch.setenv("BLOBTENSOR_MAX_N", "4")
    assert effective_max_n("generic") == 4


def test_doctests():
    results = doctest.testmod(scalars_module)
    assert results.failed == 0
