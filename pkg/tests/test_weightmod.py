"""Weight modules, localization, and the adjointness criteria."""

from math import comb

import pytest

from blobtensor.linalg import SpanSolver, mat_eq, mat_mul, span_rank
from blobtensor.scalars import BlobParams, context, residues_equal
from blobtensor.tensor import op_T
from blobtensor.weightmod import (WeightLabel, adjointness_injective,
                                  adjointness_record, adjointness_surjective,
                                  idempotent_e, lambda_range, localize,
                                  quotient_Q_scalars, quotient_scalar_record,
                                  special_element_scalar, straighten_word,
                                  underline_map, verify_module_blob_relations,
                                  verify_trivial_relations, weight_basis,
                                  weight_module, _e_matrix)

P3 = BlobParams(3, 0, 2)
C3 = context(P3)


def test_weight_label():
    lab = WeightLabel(4, 0)
    assert (lab.a, lab.n1, lab.n2, lab.dim) == (2, 2, 2, 6)
    with pytest.raises(ValueError):
        WeightLabel(4, 1)
    with pytest.raises(ValueError):
        WeightLabel(4, 6)
    assert lambda_range(3) == [-3, -1, 1, 3]


def test_weight_basis_order():
    assert weight_basis(3, 1) == ["211", "112", "121"]
    assert weight_basis(3, 3) == ["111"]
    assert len(weight_basis(4, 0)) == 6
    basis = weight_basis(5, 1)
    b2 = [w for w in basis if w[0] == "2"]
    assert basis[: len(b2)] == sorted(b2)
    assert basis[len(b2):] == sorted(w for w in basis if w[0] == "1")


def test_weight_basis_dimensions():
    for n in range(1, 13):
        for lam in lambda_range(n):
            assert len(weight_basis(n, lam)) == comb(n, (lam + n) // 2)


def test_module_matrices_match_generators():
    module = weight_module(P3, 1)
    from blobtensor.blob import BlobAction, blob_generator

    action = BlobAction.from_params(P3)
    for i in range(3):
        gen = blob_generator(i, action)
        for j, w in enumerate(module.basis):
            assert module.words(module.U[i][j]) == gen(w)


def test_idempotent():
    e = idempotent_e(3, P3)
    two = C3.q + C3.qinv
    assert e("112") == {"112": two.inv() * C3.qinv, "121": -two.inv()}
    assert e("111") == {}
    module = weight_module(P3, 1)
    em = _e_matrix(module)
    assert mat_eq(mat_mul(em, em), em)


def test_localize_small_cases():
    module = weight_module(P3, 1)
    loc = localize(module)
    assert loc.dim_e == 1 and loc.e_fixes_basis
    target = module.coords({"112": C3.one, "121": -C3.q})
    solver = SpanSolver()
    solver.insert(target)
    assert all(solver.contains(b) for b in loc.basis_coords)

    module = weight_module(P3, -1)
    loc = localize(module)
    tgt = module.coords({"212": C3.one, "221": -C3.q})
    solver = SpanSolver()
    solver.insert(tgt)
    assert loc.dim_e == 1
    assert all(solver.contains(b) for b in loc.basis_coords)


def test_localize_extremes_vanish():
    for n in (2, 3, 4, 5):
        params = BlobParams(n, 0, 2)
        for lam in (n, -n):
            assert localize(weight_module(params, lam)).dim_e == 0


def test_localized_generator_matrices_satisfy_blob_relations():
    from blobtensor.blob import blob_relation_checks_matrices

    params = BlobParams(5, 0, 2)
    loc = localize(weight_module(params, 1))
    assert loc.dim_e == comb(3, 1)
    checks = blob_relation_checks_matrices(loc.gens, context(params))
    assert all(ok for _, ok in checks)


def test_underline_map_explicit_image():
    # T3 T2 (112 - q 121) = q 121 - q^2 211
    T2, T3 = op_T(2, P3), op_T(3, P3)
    v = T3(T2({"112": C3.one, "121": -C3.q}))
    assert v == {"121": C3.q, "211": -(C3.q ** 2)}


@pytest.mark.parametrize("params", [BlobParams(0, 0, 2), BlobParams(0, 5, 2)])
def test_underline_map_grid(params):
    for n in range(3, 7):
        for lam in lambda_range(n)[1:-1]:
            res = underline_map(n, lam, BlobParams(n, params.l, params.m))
            assert res.ok, (n, lam, res.to_record())
            assert res.dim_e == comb(n - 2, WeightLabel(n, lam).a - 1)


def test_underline_map_rejects_extremes():
    with pytest.raises(ValueError):
        underline_map(3, 3, P3)
    with pytest.raises(ValueError):
        underline_map(2, 0, BlobParams(2, 0, 2))


def test_straightening():
    assert straighten_word("21", C3) == C3.one
    assert straighten_word("12", C3) == C3.q
    # inversion-count closed form as the oracle
    for w in ("1122", "1212", "2112", "1221", "2121", "2211"):
        inv = sum(1 for i in range(len(w)) for j in range(i + 1, len(w))
                  if w[i] == "1" and w[j] == "2")
        assert straighten_word(w, C3) == C3.q ** inv


@pytest.mark.parametrize("l,m", [(0, 2), (0, 3), (5, 2), (7, 3)])
def test_quotient_scalars(l, m):
    for n in (3, 4, 5):
        params = BlobParams(n, l, m)
        ctx = context(params)
        for lam in lambda_range(n)[1:-1]:
            lab = WeightLabel(n, lam)
            sv, sw = quotient_Q_scalars(n, lam, params)
            assert sv == ctx.lam1 * ctx.q_pow(-2 * lab.n2)
            assert sw == ctx.lam2
            rec = quotient_scalar_record(n, lam, ctx)
            assert rec.ok
            # the two scalars agree exactly when n2 = m mod l
            assert (sv == sw) == residues_equal(lab.n2, m, l)


def test_special_element_scalar():
    # generic: nonzero unless n2 = m exactly
    assert not special_element_scalar(5, 1, BlobParams(5, 0, 3)).is_zero()
    assert special_element_scalar(5, 1, BlobParams(5, 0, 2)).is_zero()
    # l = 5, m = 2: vanishes iff n2 = 2 mod 5
    assert not special_element_scalar(5, 3, BlobParams(5, 5, 2)).is_zero()
    assert special_element_scalar(5, 1, BlobParams(5, 5, 2)).is_zero()
    s = special_element_scalar(6, 2, BlobParams(6, 5, 2))
    assert s.is_zero()  # n2 = 2


def test_adjointness_pass_point():
    rec = adjointness_record(3, 1, BlobParams(3, 5, 2))
    assert rec["surjective"] and rec["injective"]
    assert rec["four_way_agree"] and rec["matches_expected"]
    assert rec["spans_agree"] and rec["quotient_scalars_match"]


def test_adjointness_failing_point_codim_one():
    # l=3, m=2, n=4, lambda=0: n2 = 2 = m mod 3 -> fails with codimension 1
    rec = adjointness_record(4, 0, BlobParams(4, 3, 2))
    assert not rec["surjective"] and not rec["injective"]
    assert rec["codim"] == 1
    assert rec["four_way_agree"] and rec["matches_expected"]
    assert not rec["expected_residue_verdict"]


def test_adjointness_generic_diagonal():
    # generic backend: obstruction exactly at n2 = m
    rec = adjointness_record(4, 0, BlobParams(4, 0, 2))  # n2 = 2 = m
    assert not rec["surjective"] and rec["codim"] == 1
    assert rec["four_way_agree"] and rec["matches_expected"]
    rec = adjointness_record(4, 0, BlobParams(4, 0, 3))  # n2 = 2 != 3
    assert rec["surjective"]
    assert rec["four_way_agree"] and rec["matches_expected"]


def test_adjointness_family_size():
    # canonical family has exactly dim-many members
    for (n, lam) in ((4, 0), (5, 1), (5, -1)):
        res = adjointness_injective(n, lam, BlobParams(n, 5, 2))
        assert res.family_size == WeightLabel(n, lam).dim


def test_adjointness_grid_four_way():
    for n in (3, 4, 5):
        for l in (3, 5):
            for m in range(2, l):
                params = BlobParams(n, l, m)
                for lam in lambda_range(n)[1:-1]:
                    rec = adjointness_record(n, lam, params)
                    assert rec["four_way_agree"], rec
                    assert rec["matches_expected"], rec
                    assert rec["spans_agree"], rec
                    if not rec["surjective"]:
                        assert rec["codim"] == 1, rec


def test_adjointness_composite_l():
    # l = 9: Phi_9 = x^6 + x^3 + 1, so reduction is not the all-ones case
    for n in (3, 4, 5):
        for m in (2, 3, 11):
            params = BlobParams(n, 9, m)
            for lam in lambda_range(n)[1:-1]:
                rec = adjointness_record(n, lam, params)
                assert rec["four_way_agree"] and rec["matches_expected"]
    rec = adjointness_record(5, 1, BlobParams(5, 9, 2))  # n2 = 2 = m
    assert not rec["surjective"] and rec["codim"] == 1


def test_adjointness_negative_m_matches_residue():
    for n in (3, 4):
        for lam in lambda_range(n)[1:-1]:
            r1 = adjointness_record(n, lam, BlobParams(n, 5, -3))
            r2 = adjointness_record(n, lam, BlobParams(n, 5, 2))
            assert r1["surjective"] == r2["surjective"]
            assert r1["four_way_agree"] and r1["matches_expected"]


def test_adjointness_rejects_bad_inputs():
    with pytest.raises(ValueError):
        adjointness_surjective(2, 0, BlobParams(2, 0, 2))
    with pytest.raises(ValueError):
        adjointness_surjective(4, 4, BlobParams(4, 0, 2))


def test_trivial_relations():
    # every index choice, every weight, n <= 6
    for n in (4, 5, 6):
        for lam in lambda_range(n):
            checks = verify_trivial_relations(n, lam, BlobParams(n, 0, 2))
            assert all(c.ok for c in checks), (n, lam)


def test_module_blob_relations_and_transpose():
    for (n, lam, l, m) in ((4, 0, 0, 2), (5, 1, 5, 2), (4, 2, 7, 3)):
        checks = verify_module_blob_relations(n, lam, BlobParams(n, l, m))
        assert all(c.ok for c in checks), (n, lam, l, m)
