import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quadsolv.classifier import (
    SolvabilityType as T,
    Verdict,
    check_corollary1,
    classify,
    gather_exponents,
)
from quadsolv.errors import DimensionOne, RankNotOne, ResonantPointPresent
from quadsolv.fixtures import fixture_document
from quadsolv.lie import triangular_defect
from quadsolv.system import LinearSystem, SingularPoint, ingest

from helpers import leading_terms_system, rand_invertible

EX1 = {"a": 0.1, "b": 0.05, "c": -0.05}
LATER = (T.INTEGRALS_AND_ALGEBRAIC, T.INTEGRALS, T.ALGEBRAIC)


def fuchsian_pair(R, p=2):
    """Two Fuchsian points with residues R and -R, so infinity is regular."""
    R = np.asarray(R, dtype=complex)
    return LinearSystem(p, [SingularPoint(0, 0, [R]), SingularPoint(1, 0, [-R])])


def test_gather_example1():
    h = gather_exponents(ingest(fixture_document("sec4-example1"), EX1))
    assert h.n_points == 3 and h.threshold == pytest.approx(1 / 6)
    assert h.cond1_ok and h.cond1prime_ok and h.generic and h.fuchsian_diff_ok
    assert h.cond1_margin == pytest.approx(1 / 6 - 0.1)


def test_gather_sec2_fails_cond1():
    h = gather_exponents(ingest(fixture_document("sec2-example1"), {"c": 3}))
    assert h.threshold == pytest.approx(0.5)
    assert not h.cond1_ok
    assert any("cond1 violated" in v and "1/2" in v for v in h.violations)


@pytest.mark.parametrize("p, n", [(2, 1), (3, 2), (4, 3)])
def test_gather_leading_terms_only(p, n):
    sys = leading_terms_system(np.random.default_rng(p * 10 + n), p, n, True)
    h = gather_exponents(sys)
    assert all(l == 0 for row in h.exponent_table for l in row.exponents)
    assert h.cond1_ok and h.threshold == pytest.approx(1 / (n * (p - 1)))


def test_gather_errors():
    with pytest.raises(ResonantPointPresent):
        gather_exponents(ingest(fixture_document("sec2-example1-raw"), {"c": 3}))
    with pytest.raises(DimensionOne):
        gather_exponents(LinearSystem(1, [SingularPoint(0, 1, [np.ones((1, 1)), np.zeros((1, 1))])]))


def test_q_minus_z_difference_flagged():
    h = gather_exponents(fuchsian_pair(np.diag([0.2, 0.0])))
    assert not h.fuchsian_diff_ok and any("Q\\Z" in v for v in h.violations)
    # integer and irrational differences are allowed
    assert gather_exponents(fuchsian_pair(np.diag([0.0, 0.0]))).fuchsian_diff_ok
    assert gather_exponents(fuchsian_pair(np.diag([math.sqrt(2) / 10, 0.0]))).fuchsian_diff_ok


def test_classify_example1():
    rep = classify(ingest(fixture_document("sec4-example1"), EX1))
    assert rep[T.GENERALIZED_QUADRATURES] is Verdict.YES
    assert rep[T.EXP_OF_INTEGRALS_AND_ALGEBRAIC] is Verdict.NO
    assert triangular_defect(rep.triangular_witness.p_matrix, rep.matrices) <= 1e-9
    for kind in LATER:
        assert rep[kind] is Verdict.NO
        assert "irregular point present" in rep.verdicts[kind].reason
    assert "cond1 holds" in rep.verdicts[T.GENERALIZED_QUADRATURES].reason


@pytest.mark.parametrize("b, want", [(1, Verdict.NO), (0, Verdict.YES), (-5, Verdict.YES)])
def test_classify_example2(b, want):
    rep = classify(ingest(fixture_document("sec4-example2"), {"a": 1, "b": b}))
    assert rep["GENERALIZED_QUADRATURES"] is want
    assert (rep.triangular_witness is not None) is (want is Verdict.YES)


def test_classify_sec2_inapplicable():
    rep = classify(ingest(fixture_document("sec2-example1"), {"c": 3}))
    for kind in (T.GENERALIZED_QUADRATURES, T.EXP_OF_INTEGRALS_AND_ALGEBRAIC):
        entry = rep.verdicts[kind]
        assert entry.verdict is Verdict.INAPPLICABLE
        assert "cond1" in entry.reason and "1/2" in entry.reason


def test_all_zero_matrices():
    sys = LinearSystem(3, [SingularPoint(0, 0, [np.zeros((3, 3))]), SingularPoint(2, 0, [np.zeros((3, 3))])])
    rep = classify(sys)
    assert all(rep[k] is Verdict.YES for k in T)
    assert np.allclose(rep.triangular_witness.p_matrix, np.eye(3))


def test_fuchsian_rational_clauses():
    rep = classify(fuchsian_pair(0.3 * np.eye(2)))
    assert rep[T.INTEGRALS_AND_ALGEBRAIC] is Verdict.YES
    assert rep[T.ALGEBRAIC] is Verdict.YES
    assert rep[T.INTEGRALS] is Verdict.NO
    # Jordan block: triangular but not diagonal
    rep = classify(fuchsian_pair([[0.3, 1], [0, 0.3]]))
    assert rep[T.GENERALIZED_QUADRATURES] is Verdict.YES
    assert rep[T.EXP_OF_INTEGRALS_AND_ALGEBRAIC] is Verdict.NO
    assert rep[T.INTEGRALS_AND_ALGEBRAIC] is Verdict.YES
    assert rep[T.ALGEBRAIC] is Verdict.NO
    # nilpotent residues: solvable by integrals
    rep = classify(fuchsian_pair([[0, 0.3], [0, 0]]))
    assert rep[T.INTEGRALS] is Verdict.YES
    # irrational exponents are not rational
    rep = classify(fuchsian_pair(math.sqrt(2) / 10 * np.eye(2)))
    assert rep[T.GENERALIZED_QUADRATURES] is Verdict.YES
    assert rep[T.INTEGRALS_AND_ALGEBRAIC] is Verdict.NO
    assert rep[T.ALGEBRAIC] is Verdict.NO


def test_q_minus_z_makes_everything_inapplicable():
    rep = classify(fuchsian_pair(np.diag([0.2, 0.0])))
    assert all(rep[k] is Verdict.INAPPLICABLE for k in T)
    assert "Q\\Z" in rep.verdicts[T.GENERALIZED_QUADRATURES].reason


def test_scalar_system():
    irregular = LinearSystem(1, [SingularPoint(0, 1, [np.ones((1, 1)), np.zeros((1, 1))])])
    rep = classify(irregular)
    assert rep[T.GENERALIZED_QUADRATURES] is Verdict.YES
    assert rep[T.EXP_OF_INTEGRALS_AND_ALGEBRAIC] is Verdict.YES
    assert all(rep[k] is Verdict.NO for k in LATER)
    assert rep.hypothesis.threshold is None
    fuchsian = LinearSystem(1, [SingularPoint(0, 0, [0.5 * np.ones((1, 1))])])
    rep = classify(fuchsian)
    assert all(rep[k] is Verdict.INAPPLICABLE for k in LATER)
    assert "scalar system" in rep.verdicts[T.GENERALIZED_QUADRATURES].reason


def _rank1(p, norms, rng):
    pts = []
    for i, nm in enumerate(norms):
        lead = np.diag(np.arange(p, dtype=complex) + 1)
        res = np.zeros((p, p), dtype=complex)
        res[0, 0] = nm
        pts.append(SingularPoint(i, 1, [lead, res]))
    return LinearSystem(p, pts)


def test_check_corollary1():
    rng = np.random.default_rng(0)
    # residues 0.4 and -0.4 sum to zero, so infinity stays regular (n = 2)
    assert check_corollary1(_rank1(2, [0.4, -0.4], rng))
    assert check_corollary1(_rank1(2, [0.0, 0.0], rng))
    # n = 3, p = 3: threshold 1/6
    assert not check_corollary1(_rank1(3, [0.2, -0.1, -0.1], rng))
    assert check_corollary1(_rank1(3, [0.1, -0.05, -0.05], rng))


def test_check_corollary1_errors():
    with pytest.raises(RankNotOne):
        check_corollary1(fuchsian_pair(np.eye(2)))
    # unbalanced residue puts a Fuchsian point at infinity
    with pytest.raises(RankNotOne):
        check_corollary1(LinearSystem(2, [SingularPoint(0, 1, [np.diag([1, 2]), 0.1 * np.eye(2)])]))
    with pytest.raises(DimensionOne):
        check_corollary1(LinearSystem(1, [SingularPoint(0, 1, [np.ones((1, 1)), np.zeros((1, 1))])]))


# ---------------------------------------------------------------------------
# properties


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.integers(1, 3), st.booleans())
def test_gq_conjugation_invariant(seed, p, n, tri):
    rng = np.random.default_rng(seed)
    sys = leading_terms_system(rng, p, n, tri)
    S = rand_invertible(rng, p)
    Sinv = np.linalg.inv(S)
    moved = LinearSystem(p, [
        SingularPoint(pt.location, pt.poincare_rank, [S @ c @ Sinv for c in pt.coeffs]) for pt in sys.points
    ])
    assert classify(sys)[T.GENERALIZED_QUADRATURES] is classify(moved)[T.GENERALIZED_QUADRATURES]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 3), st.sampled_from(["diag", "triu", "zero", "nil"]))
def test_verdict_implications(seed, p, shape):
    rng = np.random.default_rng(seed)
    eig = rng.choice([0.0, 0.1, 0.25, math.sqrt(2) / 10], size=p) if shape != "zero" else np.zeros(p)
    R = np.diag(eig).astype(complex)
    if shape in ("triu", "nil"):
        R = R + np.triu(rng.normal(size=(p, p)), 1) * 0.1
    if shape == "nil":
        np.fill_diagonal(R, 0)
    S = rand_invertible(rng, p)
    rep = classify(fuchsian_pair(S @ R @ np.linalg.inv(S), p))
    if rep[T.EXP_OF_INTEGRALS_AND_ALGEBRAIC] is Verdict.YES:
        assert rep[T.GENERALIZED_QUADRATURES] is Verdict.YES
    if rep[T.INTEGRALS] is Verdict.YES:
        assert rep[T.INTEGRALS_AND_ALGEBRAIC] is Verdict.YES
    if not rep.hypothesis.satisfied:
        assert all(rep[k] is Verdict.INAPPLICABLE for k in T)
