import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from starpir import bounds, codes
from starpir.algebra import field_make, rref
from starpir.bounds import (
    CONSISTENT,
    VIOLATED,
    ag_params,
    asymptotic_calculator,
    bch_tables,
    k_s,
    k_t,
    rate_ledger,
    singleton_audit,
)
from starpir.codes import DistanceCertificate, repetition
from starpir.errors import (
    InfeasibleDegrees,
    InfeasibleRates,
    ParamOutOfRange,
    UndefinedDualDistance,
    ZeroCode,
)
from starpir.families import grs, hamming, reed_muller

F2 = field_make(2)
F3 = field_make(3)


def all_subspaces(F, n):
    """Every nonzero proper-or-full subspace of F^n, each once (by RREF)."""
    seen = {}
    vecs = [v for v in itertools.product(range(F.q), repeat=n) if any(v)]
    for k in range(1, n + 1):
        for rows in itertools.combinations(vecs, k):
            R, piv = rref(F, np.array(rows))
            if len(piv) != k:
                continue
            key = R.tobytes()
            if key not in seen:
                seen[key] = codes.code_from_generator(F, R)
    return list(seen.values())


def full_support(C):
    return bool(np.count_nonzero(C.gen, axis=0).all())


def bound_holds(C, D):
    """Direct statement of the three cases from exact distances."""
    n, k = C.n, C.k
    P = codes.star_product(C, D)
    dD = codes.dual_distance(D, registry=False).d
    dP = None if P.is_zero else codes.min_distance(P, registry=False).d
    if k + dD >= n + 2:
        return dP == 1
    if not C.is_full:
        dC = codes.dual_distance(C, registry=False).d
        if dC + dD >= n + 3 and dP != 1:
            return False
    return (n - P.k) + dD <= n + 2 - k


@pytest.mark.parametrize("F,n", [(F2, 3), (F2, 4), (F3, 3)])
def test_full_support_pairs_exhaustive(F, n):
    subs = [C for C in all_subspaces(F, n) if full_support(C)]
    pairs = 0
    for C in subs:
        for D in subs:
            if D.is_full:
                continue
            rep = singleton_audit(C, D)
            assert rep.status == CONSISTENT, (C.gen, D.gen)
            assert bound_holds(C, D)
            pairs += 1
    assert pairs > 0


def test_violations_need_degenerate_code():
    # over F_2^3 every case-2 failure involves a code with a zero coordinate
    subs = all_subspaces(F2, 3)
    bad = []
    for C in subs:
        for D in subs:
            if D.is_full:
                continue
            rep = singleton_audit(C, D)
            if rep.violated:
                assert rep.degenerate_C or rep.degenerate_D
                bad.append(rep)
    assert any(r.degenerate_D for r in bad) and any(r.degenerate_C for r in bad)


def test_degenerate_counterexample():
    C = codes.code_from_generator(F2, [[0, 1, 0]])
    D = codes.code_from_generator(F2, [[1, 0, 1], [0, 1, 1]])
    rep = singleton_audit(C, D)
    assert rep.case2_status == VIOLATED and rep.degenerate_C
    # dim (C*D)^perp = 2, d_perp(D) = 3, n + 2 - k = 4
    assert rep.case2_inequality_lhs == (5, 5) and rep.case2_inequality_rhs == 4


@given(st.integers(0, 2**31 - 1), st.sampled_from([F2, F3]))
@settings(max_examples=150, deadline=None)
def test_random_full_support_pairs_consistent(seed, F):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 8))
    C = codes.random_code(F, n, int(rng.integers(1, n + 1)), rng)
    D = codes.random_code(F, n, int(rng.integers(1, n)), rng)
    if D.is_full or not (full_support(C) and full_support(D)):
        return
    assert singleton_audit(C, D).status == CONSISTENT


def test_case1_and_case3_families():
    F7 = field_make(7)
    # case 1: k + d_perp(D) >= n + 2
    C, D = grs(F7, 6, 4), grs(F7, 6, 3)
    rep = singleton_audit(C, D)
    assert rep.case1_applies and rep.case1_conclusion_holds
    assert codes.min_distance(codes.star_product(C, D), registry=False).d == 1
    # case 3: d_perp(C) + d_perp(D) >= n + 3 (5 + 4 >= 9)
    assert rep.case3_applies and rep.case3_conclusion_holds
    # just below both thresholds nothing is concluded
    rep = singleton_audit(grs(F7, 6, 2), grs(F7, 6, 3))
    assert not rep.case1_applies and not rep.case3_applies and rep.case2_holds


def test_case3_implies_case1():
    # d_perp(C) <= k + 1, so case 3 never applies without case 1
    rng = np.random.default_rng(5)
    for _ in range(200):
        n = int(rng.integers(2, 7))
        C = codes.random_code(F3, n, int(rng.integers(1, n)), rng)
        D = codes.random_code(F3, n, int(rng.integers(1, n)), rng)
        if D.is_full or C.is_full:
            continue
        rep = singleton_audit(C, D)
        if rep.case3_applies:
            assert rep.case1_applies


def test_injected_certificate_violates_case2():
    C, D = repetition(F2, 6), repetition(F2, 6)
    assert singleton_audit(C, D).status == CONSISTENT
    fake = DistanceCertificate(3, 3, "override", "override")
    rep = singleton_audit(C, D, overrides={"d_perp_D": fake})
    assert rep.case2_applies and rep.case2_status == VIOLATED and rep.violated


def test_audit_unverifiable_with_bounds_only():
    C = repetition(F2, 6)
    D = codes.dual(repetition(F2, 6))
    rep = singleton_audit(C, D, overrides={"d_perp_D": DistanceCertificate(1, 7, "x", "y")})
    assert rep.status == bounds.UNVERIFIABLE


def test_audit_errors():
    with pytest.raises(UndefinedDualDistance):
        singleton_audit(repetition(F2, 3), codes.full_space(F2, 3))
    with pytest.raises(ZeroCode):
        singleton_audit(codes.zero_code(F2, 3), repetition(F2, 3))


# ---- rate ledger ----------------------------------------------------------------


def test_ledger_hamming_row():
    L = rate_ledger(repetition(F2, 15), hamming(F2, 4))
    assert L.t_count == 7 and L.t_exact
    assert L.R_retrieval_transitive == Fraction(4, 15)
    assert L.to_dict()["R_retrieval_transitive"] == "4/15"


def test_ledger_rm_example():
    L = rate_ledger(reed_muller(7, 0), reed_muller(7, 3))
    assert L.t_count == 15 and L.to_dict()["R_retrieval_transitive"] == "64/128"
    L4 = rate_ledger(reed_muller(7, 0), reed_muller(7, 4))
    assert L4.t_count == 31 and L4.to_dict()["R_retrieval_transitive"] == "29/128"


@given(st.integers(0, 2**31 - 1), st.sampled_from([F2, F3]))
@settings(max_examples=60, deadline=None)
def test_ledger_basic_below_transitive(seed, F):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 8))
    C = codes.random_code(F, n, int(rng.integers(1, n)), rng)
    D = codes.random_code(F, n, int(rng.integers(1, n)), rng)
    if D.is_full or codes.star_product(C, D).is_zero:
        return
    L = rate_ledger(C, D)
    assert L.R_retrieval_basic <= L.R_retrieval_transitive


# ---- dually-BCH tables ----------------------------------------------------------


def zero_run_count(q, m, r):
    """Nonzero length-m words whose cyclic zero run is at least r."""
    cnt = 0
    for s in itertools.product(range(q), repeat=m):
        if not any(s):
            continue
        cur = best = 0
        for x in s + s:
            cur = cur + 1 if x == 0 else 0
            best = max(best, min(cur, m))
        cnt += best >= r
    return cnt


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 8])
def test_k_t_against_run_oracle(m):
    for t in range(2, m):
        assert k_t(m, t) == 2**m - 1 - zero_run_count(2, m, m - t)


@pytest.mark.parametrize("q,m", [(3, 3), (3, 4), (4, 3), (4, 4), (5, 3), (3, 5)])
def test_k_s_against_run_oracle(q, m):
    for s in range(2, m):
        assert k_s(q, m, s) == q**m - 1 - zero_run_count(q, m, m - s)


def test_k_t_pins_and_monotone():
    assert k_t(4, 2) == 7
    assert k_t(4, 3) == 1
    assert k_t(5, 2) == 21
    for m in (4, 5, 6):
        vals = [k_t(m, t) for t in range(2, m)]
        assert all(0 <= v <= 2**m - 1 for v in vals)
        assert vals == sorted(vals, reverse=True)
    with pytest.raises(ParamOutOfRange):
        k_t(4, 4)


def test_bch_table_row():
    row = bch_tables(2, 5, 2)
    assert row["n"] == 31 and row["k_value"] == 21 and row["rate_lower"] == Fraction(10, 31)
    assert row["protection"] == 7 and row["distance_claim_in_range"]


def test_long_bch_row():
    row = bounds.long_bch_row(2, 4, 3)
    assert row["t"] == 3 and row["rate"] == Fraction(8, 17) and row["n"] == 17
    with pytest.raises(ParamOutOfRange):
        bounds.long_bch_row(2, 4, 9)


def test_repeated_root_ranges_and_row():
    i_rng, j_rng = bounds.repeated_root_ranges(2, 1, 0)
    assert i_rng == (3, 3) and j_rng == (1, 2)
    row = bounds.repeated_root_row(2, 1, 0, 3, 1)
    assert row["n"] == 12 and row["dim"] == 7 and row["d_claim"] == 4


# ---- AG calculators -------------------------------------------------------------


def test_ag_params_elliptic():
    out = ag_params(8, 1, 1, 3)
    assert out["R_retrieval_basic"] == Fraction(3, 8)
    assert out["R_retrieval_simplified"] == Fraction(1, 2)
    assert out["R_retrieval_replication"] == Fraction(1, 2)
    assert out["basic_vs_simplified_offset"] == Fraction(1, 8)
    assert out["t"] == 2


def test_ag_params_infeasible():
    with pytest.raises(InfeasibleDegrees):
        ag_params(8, 1, 4, 4)
    with pytest.raises(InfeasibleDegrees):
        ag_params(8, 1, 0, 3)


def test_ag_robust_constraints():
    out = ag_params(8, 1, 1, 2, degG3=1, b=1, a=0, N=9)
    rob = out["robust"]
    assert rob["distance_budget"] and rob["dual_containment"] and rob["feasible"]
    assert rob["rate"] == Fraction(8 - 1 - 2 - 1 - 1, 8)


def test_genus6_rate():
    assert bounds.genus6_rate(Fraction(1, 4), Fraction(1, 8)) == Fraction(1, 8)
    with pytest.raises(ParamOutOfRange):
        bounds.genus6_rate(Fraction(1, 10), Fraction(0))


def test_parametrisations():
    rm = bounds.rm_pir_params(7, 0, 3)
    assert rm["t"] == 15 and rm["R_transitive"] == Fraction(64, 128)
    assert rm["R_transitive_formula"] == Fraction(99, 128)
    g = bounds.grs_pir_params(8, 3, 2)
    assert g["R_basic"] == Fraction(4, 8) and g["t"] == 2
    assert bounds.hamming_rate(4) == Fraction(4, 15)


def test_asymptotic_calculator():
    out = asymptotic_calculator(9, 0.3, 0.3)
    assert out["transitive"]["R_retrieval"] == Fraction(11, 40)
    assert out["transitive"]["t_lower"] == Fraction(7, 40)
    assert out["plain"]["R_retrieval"] == Fraction(3, 20)
    assert out["plain_sum"] == out["plain_sum_identity"]
    with pytest.raises(InfeasibleRates):
        asymptotic_calculator(9, 0.1, 0.1)


def test_length128_report_rows():
    rows = bounds.length128_report()
    by = {r["retrieval_code"]: r for r in rows}
    assert by["RM(7,3)"]["matches_claim"] and not by["RM(7,4)"]["matches_claim"]
    bch = by["dual(ext BCH(127,21))"]
    assert bch["t"] == 21 and bch["t_bound"] == "lower" and bch["rate"] == "64/128"
    assert bch["audit"] == CONSISTENT
