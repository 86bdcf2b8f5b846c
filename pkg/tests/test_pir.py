from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from starpir import codes, pir
from starpir.algebra import Polynomial, field_make
from starpir.errors import (
    CorruptedSymbols,
    InsufficientDistanceForRobustness,
    InsufficientSymbols,
    ShapeMismatch,
    ZeroRetrievalRate,
)
from starpir.families import AgCodeSpec, EllipticCurve, cyclic_from_generator, elliptic_ag, grs, hamming

F2 = field_make(2)
F5 = field_make(5)
F11 = field_make(11)


def toy():
    C = codes.repetition(F2, 3)
    D = cyclic_from_generator(F2, 3, Polynomial(F2, [1, 1]))
    return C, D


def elliptic_pair(m1=2, m2=3):
    E = EllipticCurve(F5, 0, 0, 0, 1, 1)
    return elliptic_ag(AgCodeSpec(E, m1)), elliptic_ag(AgCodeSpec(E, m2))


def system(C, D, m=2, b=None, seed=0):
    b = b or pir.recommend_rows(C, D)
    return pir.encode_storage(C, pir.random_files(C, m, b, np.random.default_rng(seed)))


PAIRS = {
    "toy": toy,
    "hamming": lambda: (codes.repetition(F2, 15), hamming(F2, 4)),
    "grs": lambda: (grs(F11, 8, 3), grs(F11, 8, 2)),
    "elliptic": elliptic_pair,
    "rm": lambda: (__import__("starpir.families", fromlist=["x"]).reed_muller(4, 1),) * 2,
}


# ---- storage --------------------------------------------------------------------


def test_encode_storage_examples():
    sys_ = pir.encode_storage(codes.repetition(F2, 3), [np.array([[1]]), np.array([[0]])])
    for j in range(3):
        assert list(sys_.server_contents(j)) == [1, 0]
    sys_ = pir.encode_storage(grs(F5, 4, 2), [np.array([[1, 2]])])
    assert [int(sys_.server_contents(j)[0]) for j in range(4)] == [(1 + 2 * a) % 5 for a in range(4)]
    with pytest.raises(ShapeMismatch):
        pir.encode_storage(grs(F5, 4, 2), [np.array([[1, 2, 3]])])


# ---- planning -------------------------------------------------------------------


def test_toy_schedule():
    C, D = toy()
    sys_ = system(C, D)
    s = pir.plan_retrieval(sys_, 1, D)
    assert len(s.rounds) == 1 and len(s.rounds[0].S) == 1
    assert s.achieved_rate == Fraction(1, 3)


def test_hamming_schedule_rate():
    C, D = PAIRS["hamming"]()
    sys_ = system(C, D, b=4)
    s = pir.plan_retrieval(sys_, 1, D)
    assert all(len(R.S) == 4 for R in s.rounds)
    assert s.achieved_rate == Fraction(4, 15)


def test_grs_robust_infeasible():
    C, D = grs(F11, 8, 3), grs(F11, 8, 5)
    sys_ = system(C, D, b=1)
    with pytest.raises(InsufficientDistanceForRobustness):
        pir.plan_retrieval(sys_, 1, D, b_byz=1)


def test_zero_retrieval_rate():
    C, D = grs(F11, 8, 4), grs(F11, 8, 5)
    sys_ = pir.encode_storage(C, [np.zeros((1, 4), dtype=np.int64)])
    with pytest.raises(ZeroRetrievalRate):
        pir.plan_retrieval(sys_, 1, D)


@pytest.mark.parametrize("name", sorted(PAIRS))
def test_end_to_end_every_file_and_rate_sandwich(name):
    C, D = PAIRS[name]()
    sys_ = system(C, D, m=3, seed=11)
    P = codes.star_product(C, D)
    lo = Fraction(codes.min_distance(P).lo - 1, C.n)
    hi = Fraction(C.n - P.k, C.n)
    for w in range(1, 4):
        X, s = pir.retrieve(sys_, w, D, seed=w)
        assert sys_.verify(w, X) and np.array_equal(X, sys_.file(w))
        assert lo <= s.achieved_rate <= hi


def test_determinism():
    C, D = elliptic_pair()
    sys_ = system(C, D)
    a = pir.plan_retrieval(sys_, 2, D, seed=9)
    b = pir.plan_retrieval(sys_, 2, D, seed=9)
    pir.run_local(a)
    pir.run_local(b)
    assert a.transcripts == b.transcripts and a.to_dict() == b.to_dict()
    c = pir.plan_retrieval(sys_, 2, D, seed=10)
    pir.run_local(c)
    assert c.transcripts != a.transcripts


def test_queries_differ_only_on_targets():
    C, D = elliptic_pair()
    sys_ = system(C, D, m=3)
    s1 = pir.plan_retrieval(sys_, 1, D, seed=4)
    s2 = pir.plan_retrieval(sys_, 2, D, seed=4)
    R1, R2 = s1.rounds[0], s2.rounds[0]
    assert R1.S == R2.S
    q1 = np.array(pir.make_queries(s1, 0)).T
    q2 = np.array(pir.make_queries(s2, 0)).T
    diff = np.argwhere(q1 != q2)
    b = sys_.b
    for row, col in diff:
        assert col in R1.S and row // b in (0, 1)


def test_zero_pad_queries_are_delta():
    C, D = toy()
    sys_ = system(C, D)
    s = pir.plan_retrieval(sys_, 2, D)
    R = s.rounds[0]
    s.rounds[0] = pir.RoundPlan(R.index, R.S, R.beta, np.zeros_like(R.Z), R.Delta)
    qs = pir.make_queries(s, 0)
    for j in range(3):
        assert list(qs[j]) == list(R.Delta[:, j])


def test_server_respond():
    f = F11
    y = np.array([3, 4, 5])
    assert pir.server_respond(f, y, [0, 0, 0]) == 0
    assert pir.server_respond(f, y, [0, 1, 0]) == 4
    rng = np.random.default_rng(0)
    for _ in range(20):
        q, y = rng.integers(0, 11, 6), rng.integers(0, 11, 6)
        assert pir.server_respond(f, y, q) == sum(int(a) * int(b) for a, b in zip(q, y)) % 11
    with pytest.raises(ShapeMismatch):
        pir.server_respond(f, y, [1, 2])


def test_reconstruct_round_toy_zero_pad():
    C, D = toy()
    sys_ = pir.encode_storage(C, [np.array([[1]]), np.array([[0]])])
    s = pir.plan_retrieval(sys_, 1, D)
    R = s.rounds[0]
    s.rounds[0] = pir.RoundPlan(R.index, R.S, R.beta, np.zeros_like(R.Z), R.Delta)
    responses, missing = pir.run_local(s)
    got = pir.reconstruct_round(s, responses[0], missing[0], 0)
    assert got == {(0, R.S[0]): 1}


def test_unresponsive_outside_S_robust():
    C, D = elliptic_pair()
    sys_ = system(C, D)
    s = pir.plan_retrieval(sys_, 1, D, a=1)
    S0 = set(s.rounds[0].S)
    j = next(j for j in range(8) if j not in S0)
    X, _ = pir.retrieve(sys_, 1, D, adversary=pir.AdversaryModel(unresponsive=frozenset({j})), a=1)
    assert sys_.verify(1, X)


def test_byzantine_beyond_budget_detected_or_wrong():
    C, D = PAIRS["hamming"]()
    sys_ = system(C, D, b=4)
    s = pir.plan_retrieval(sys_, 1, D)
    j = s.rounds[0].S[0]
    adv = pir.AdversaryModel(byzantine={j: lambda rnd, v: v ^ 1})
    try:
        X, _ = pir.retrieve(sys_, 1, D, adversary=adv)
    except CorruptedSymbols:
        return
    assert not sys_.verify(1, X)


def test_decode_file_insufficient():
    C, D = elliptic_pair()
    sys_ = system(C, D, b=1)
    s = pir.plan_retrieval(sys_, 1, D)
    with pytest.raises(InsufficientSymbols):
        pir.decode_file(s, {(0, 0): 1})


ROBUST_CASES = [(1, 0), (0, 1)]


@pytest.mark.parametrize("b_byz,a", ROBUST_CASES)
def test_robust_plan_certified(b_byz, a):
    C, D = elliptic_pair()
    sys_ = system(C, D, b=1)
    s = pir.plan_retrieval(sys_, 1, D, b_byz=b_byz, a=a)
    assert s.robust and pir.certified(s)


@given(
    st.integers(0, 7),
    st.integers(1, 10),
    st.lists(st.integers(0, 4), min_size=1, max_size=12),
    st.sampled_from(ROBUST_CASES),
)
@settings(max_examples=40, deadline=None)
def test_robust_random_mutations(j, w_seed, table, budgets):
    C, D = elliptic_pair()
    sys_ = system(C, D, m=2, b=1, seed=w_seed)
    b_byz, a = budgets
    if b_byz:
        rule = lambda rnd, v: (v + table[rnd % len(table)]) % 5  # noqa: E731
        adv = pir.AdversaryModel(byzantine={j: rule})
    else:
        adv = pir.AdversaryModel(unresponsive=frozenset({j}))
    for w in (1, 2):
        X, _ = pir.retrieve(sys_, w, D, seed=w_seed, adversary=adv, b_byz=b_byz, a=a)
        assert np.array_equal(X, sys_.file(w))


# ---- privacy --------------------------------------------------------------------


def test_structural_examples():
    assert pir.privacy_audit_structural(hamming(F2, 4), 7).passed
    C, D = toy()
    assert pir.privacy_audit_structural(D, 2).passed
    res = pir.privacy_audit_structural(codes.repetition(F2, 3), 2)
    assert not res.passed and res.witness == (0, 1)


def test_empirical_toy_passes_and_identical_targets():
    C, D = toy()
    sys_ = system(C, D, m=2)
    res = pir.privacy_audit_empirical(sys_, D, 2, 1, 2, samples=100_000)
    assert res.passed and res.method == "joint"
    same = pir.privacy_audit_empirical(sys_, D, 2, 1, 1, samples=20_000)
    assert same.tv < 0.05


def test_empirical_broken_sampler_fails():
    C, D = toy()
    sys_ = system(C, D, m=2)
    broken = codes.repetition(F2, 3)  # d_perp = 2 <= t
    res = pir.privacy_audit_empirical(sys_, D, 2, 1, 2, samples=20_000, pad_code=broken)
    assert not res.passed
    res = pir.privacy_audit_empirical(sys_, D, 2, 1, 2, samples=5_000, zero_pad=True)
    assert not res.passed


def test_session_export():
    C, D = toy()
    sys_ = system(C, D)
    s = pir.plan_retrieval(sys_, 1, D, seed=3)
    pir.run_local(s)
    d = s.to_dict()
    assert d["achieved_rate"] == "1/3" and set(d["transcripts"]) == {"0", "1", "2"}
