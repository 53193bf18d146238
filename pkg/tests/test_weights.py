import pytest

from latticeroots.enumeration import normal_form_tuples
from latticeroots.errors import InvariantViolation
from latticeroots.lattice import SIMPLE_ROOTS, build_preset, dot, express_in_simple_roots
from latticeroots.orthocount import count_orthogonal_roots, orthogonal_counts
from latticeroots.weights import (APPENDIX_VECTORS, GRAM_OMEGA, AppendixVector, computed_gram,
                                  fundamental_weights, norm_of_weight_combination,
                                  verify_appendix, verify_vector, weight_vector)
from latticeroots.weyl import dominant_tuple, w_canonical_tuples


def test_gram_matrix():
    assert computed_gram() == [list(row) for row in GRAM_OMEGA]
    assert sum(map(sum, GRAM_OMEGA)) == 620


def test_weights_are_dual_to_simple_roots():
    w = fundamental_weights()
    for i, a in enumerate(SIMPLE_ROOTS):
        for j, o in enumerate(w):
            assert dot(a, o) == (1 if i == j else 0)
    assert dot(w[7], w[7]) == 2
    # omega_8 is the highest root
    assert w[7] in build_preset("E8").roots
    assert express_in_simple_roots(w[7]) == (2, 3, 4, 6, 5, 4, 3, 2)


def test_rho():
    rho = weight_vector((1,) * 8)
    assert rho.doubled == (0, 2, 4, 6, 8, 10, 12, 46)
    assert rho.norm == 620
    assert count_orthogonal_roots("E8", rho) == 0


@pytest.mark.parametrize("v,norm", [(APPENDIX_VECTORS[0], 92), (APPENDIX_VECTORS[1], 100),
                                    (APPENDIX_VECTORS[2], 108), (APPENDIX_VECTORS[3], 114),
                                    (APPENDIX_VECTORS[4], 104)])
def test_appendix_norms(v, norm):
    assert norm_of_weight_combination(v.coeffs) == norm == 2 * v.d
    assert weight_vector(v.coeffs).norm == norm


def test_verify_appendix():
    results = verify_appendix()
    assert [r.name for r in results] == ["l_5,6", "l_1,3", "l_2,4", "l_7,8", "l_M"]
    for r in results:
        assert r.passed, r.failures
        assert r.m == 12
    assert [r.decomposition for r in results] == ["A2+3A1"] * 4 + ["2A2"]


def test_verify_vector_reports_wrong_claims():
    bad = AppendixVector("bad", (1, 0, 0, 1, 0, 0, 1, 0), 47, "2A2", ((5, 6),))
    res = verify_vector(bad)
    assert not res.passed
    assert len(res.failures) == 3


def test_appendix_vectors_are_dominant():
    for v in APPENDIX_VECTORS:
        x = weight_vector(v.coeffs)
        assert dominant_tuple(x.doubled) == x.doubled


def test_appendix_vectors_appear_among_normal_forms():
    # each explicit vector is W-equivalent to some enumerated normal form with m = 12
    for v in APPENDIX_VECTORS:
        x = weight_vector(v.coeffs)
        forms = [f for f, m in zip(normal_form_tuples(v.d),
                                   orthogonal_counts("E8", list(normal_form_tuples(v.d))))
                 if m == 12]
        target = w_canonical_tuples([x.doubled])[0]
        assert target in set(w_canonical_tuples(forms))


def test_norm_mismatch_is_invariant_violation(monkeypatch):
    import latticeroots.weights as weights

    bent = tuple(tuple(c + (i == j == 0) for j, c in enumerate(row)) for i, row in enumerate(GRAM_OMEGA))
    monkeypatch.setattr(weights, "GRAM_OMEGA", bent)
    with pytest.raises(InvariantViolation):
        weights.norm_of_weight_combination((1, 0, 0, 0, 0, 0, 0, 0))


def test_weight_vector_needs_eight_coefficients():
    with pytest.raises(ValueError):
        weight_vector((1, 2, 3))
