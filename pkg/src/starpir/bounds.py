"""Singleton-type bound audit for star-product PIR and the parametric
rate calculators (AG, BCH, repeated-root cyclic, RM, GRS, asymptotic).

All rates are ``fractions.Fraction``; nothing here uses floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb

import numpy as np

from . import codes
from .codes import DistanceCertificate, LinearCode
from .errors import (
    InfeasibleDegrees,
    InfeasibleRates,
    ParamOutOfRange,
    UndefinedDualDistance,
    ZeroCode,
)

CONSISTENT = "consistent"
VIOLATED = "violated"
UNVERIFIABLE = "unverifiable"
NOT_APPLICABLE = "not-applicable"


def frac_str(x: Fraction | None) -> str | None:
    if x is None:
        return None
    return f"{x.numerator}/{x.denominator}"


def _geq(lo: int, hi: int, bound: int):
    """Tri-state truth of ``value >= bound`` for value in [lo, hi]."""
    if lo >= bound:
        return True
    if hi < bound:
        return False
    return None


def _case_status(applies, conclusion) -> str:
    if applies is False:
        return NOT_APPLICABLE
    if conclusion is True:
        return CONSISTENT
    if conclusion is False and applies is True:
        return VIOLATED
    return UNVERIFIABLE


def _cert_dict(c: DistanceCertificate | None):
    return None if c is None else c.to_dict()


@dataclass
class SingletonAuditReport:
    n: int
    dim_C: int
    dim_CD: int
    dim_CD_perp: int
    d_perp_D: DistanceCertificate
    d_perp_C: DistanceCertificate | None
    d_CD: DistanceCertificate | None
    case1_applies: bool | None
    case1_conclusion_holds: bool | None
    case1_status: str
    case2_applies: bool | None
    case2_inequality_lhs: tuple[int, int]
    case2_inequality_rhs: int
    case2_holds: bool | None
    case2_status: str
    case3_applies: bool | None
    case3_conclusion_holds: bool | None
    case3_status: str
    degenerate_D: bool
    degenerate_C: bool = False
    notes: list[str] = dc_field(default_factory=list)

    @property
    def status(self) -> str:
        states = (self.case1_status, self.case2_status, self.case3_status)
        if VIOLATED in states:
            return VIOLATED
        if UNVERIFIABLE in states:
            return UNVERIFIABLE
        return CONSISTENT

    @property
    def violated(self) -> bool:
        return self.status == VIOLATED

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "dim_C": self.dim_C,
            "dim_CD": self.dim_CD,
            "dim_CD_perp": self.dim_CD_perp,
            "d_perp_D": _cert_dict(self.d_perp_D),
            "d_perp_C": _cert_dict(self.d_perp_C),
            "d_CD": _cert_dict(self.d_CD),
            "case1_applies": self.case1_applies,
            "case1_conclusion_holds": self.case1_conclusion_holds,
            "case1_status": self.case1_status,
            "case2_applies": self.case2_applies,
            "case2_lhs": list(self.case2_inequality_lhs),
            "case2_rhs": self.case2_inequality_rhs,
            "case2_holds": self.case2_holds,
            "case2_status": self.case2_status,
            "case3_applies": self.case3_applies,
            "case3_conclusion_holds": self.case3_conclusion_holds,
            "case3_status": self.case3_status,
            "degenerate_D": self.degenerate_D,
            "degenerate_C": self.degenerate_C,
            "status": self.status,
            "notes": list(self.notes),
        }


def has_zero_coordinate(C: LinearCode) -> bool:
    return bool((np.count_nonzero(C.gen, axis=0) == 0).any())


def _check_pair(C: LinearCode, D: LinearCode):
    if C.is_zero or D.is_zero:
        raise ZeroCode("storage and retrieval codes must be nonzero")
    if D.is_full:
        raise UndefinedDualDistance("D is the full space, so its dual is the zero code")


def singleton_audit(
    C: LinearCode, D: LinearCode, budget: int = codes.DEFAULT_BUDGET, overrides: dict | None = None
) -> SingletonAuditReport:
    """Evaluate the three cases of the Singleton-type bound on (C, D).

    ``overrides`` may replace any of the certificates ``d_perp_D``,
    ``d_perp_C`` or ``d_CD`` (used to inject hypothetical values).
    """
    _check_pair(C, D)
    ov = overrides or {}
    n, kC = C.n, C.k
    P = codes.star_product(C, D)
    dD = ov.get("d_perp_D") or codes.dual_distance(D, budget)
    dC = ov.get("d_perp_C") or (None if C.is_full else codes.dual_distance(C, budget))
    notes = []
    if P.is_zero and "d_CD" not in ov:
        # disjoint supports; only possible when D is degenerate
        dP, d_is_one = None, False
        notes.append("C*D is the zero code")
    else:
        dP = ov.get("d_CD") or codes.min_distance(P, budget)
        d_is_one = True if dP.hi == 1 else (False if dP.lo >= 2 else None)
    rP = n - P.k

    c1 = _geq(kC + dD.lo, kC + dD.hi, n + 2)
    c1_status = _case_status(c1, d_is_one)

    c2 = None if c1 is None else (not c1)
    rhs = n + 2 - kC
    lhs = (rP + dD.lo, rP + dD.hi)
    holds2 = True if lhs[1] <= rhs else (False if lhs[0] > rhs else None)
    c2_status = _case_status(c2, holds2)

    if dC is None:
        c3, c3_status = False, NOT_APPLICABLE
        notes.append("C is the full space: d_perp(C) undefined, case 3 not applicable")
    else:
        c3 = _geq(dC.lo + dD.lo, dC.hi + dD.hi, n + 3)
        c3_status = _case_status(c3, d_is_one)
    degenerate = dD.hi == 1
    degenerate_C = has_zero_coordinate(C)
    if degenerate:
        notes.append("D has an all-zero coordinate (d_perp(D) = 1); case 2 need not hold")
    if degenerate_C:
        notes.append("C has an all-zero coordinate; case 2 need not hold")
    return SingletonAuditReport(
        n=n,
        dim_C=kC,
        dim_CD=P.k,
        dim_CD_perp=rP,
        d_perp_D=dD,
        d_perp_C=dC,
        d_CD=dP,
        case1_applies=c1,
        case1_conclusion_holds=d_is_one if c1 is not False else None,
        case1_status=c1_status,
        case2_applies=c2,
        case2_inequality_lhs=lhs,
        case2_inequality_rhs=rhs,
        case2_holds=holds2,
        case2_status=c2_status,
        case3_applies=c3,
        case3_conclusion_holds=d_is_one if c3 is not False else None,
        case3_status=c3_status,
        degenerate_D=degenerate,
        degenerate_C=degenerate_C,
        notes=notes,
    )


# ---- rate ledger ----------------------------------------------------------------


@dataclass
class RateLedger:
    n: int
    k_C: int
    R_storage: Fraction
    failure_ratio: Fraction
    t_count: int
    t_exact: bool
    R_retrieval_basic: Fraction
    R_retrieval_transitive: Fraction
    dim_CD_perp: int
    transitive_achievable: bool
    singleton_slack: Fraction
    zero_retrieval_rate: bool
    d_C: DistanceCertificate
    d_perp_D: DistanceCertificate
    d_CD: DistanceCertificate

    @property
    def all_exact(self) -> bool:
        return self.d_C.exact and self.d_perp_D.exact and self.d_CD.exact

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k_C": self.k_C,
            "R_storage": frac_str(self.R_storage),
            "failure_ratio": frac_str(self.failure_ratio),
            "t": self.t_count,
            "t_bound": "exact" if self.t_exact else "lower",
            "R_retrieval_basic": frac_str(self.R_retrieval_basic),
            "R_retrieval_transitive": per_server_rate(self.dim_CD_perp, self.n),
            "transitive_achievable": self.transitive_achievable,
            "singleton_slack": frac_str(self.singleton_slack),
            "zero_retrieval_rate": self.zero_retrieval_rate,
            "d_C": self.d_C.to_dict(),
            "d_perp_D": self.d_perp_D.to_dict(),
            "d_CD": self.d_CD.to_dict(),
        }


def rate_ledger(
    C: LinearCode,
    D: LinearCode,
    budget: int = codes.DEFAULT_BUDGET,
    transitive_asserted: bool = False,
) -> RateLedger:
    """Storage/retrieval rates and collusion threshold of the pair (C, D).

    Where only bounds are certified, t and the basic rate use the proven
    lower bounds (``t_exact`` / certificate kinds say which).
    """
    _check_pair(C, D)
    n = C.n
    P = codes.star_product(C, D)
    dC = codes.min_distance(C, budget)
    dD = codes.dual_distance(D, budget)
    dP = codes.min_distance(P, budget)
    t = dD.lo - 1
    Rb = Fraction(dP.lo - 1, n)
    Rs = Fraction(C.k, n)
    return RateLedger(
        n=n,
        k_C=C.k,
        R_storage=Rs,
        failure_ratio=Fraction(dC.lo - 1, n),
        t_count=t,
        t_exact=dD.exact,
        R_retrieval_basic=Rb,
        R_retrieval_transitive=Fraction(n - P.k, n),
        dim_CD_perp=n - P.k,
        transitive_achievable=transitive_asserted,
        singleton_slack=1 - Rb - Fraction(t, n) - Rs + Fraction(2, n),
        zero_retrieval_rate=dP.hi == 1,
        d_C=dC,
        d_perp_D=dD,
        d_CD=dP,
    )


def per_server_rate(num: int, n: int) -> str:
    """A rate over n servers rendered without reduction, e.g. "64/128"."""
    return f"{num}/{n}"


# ---- AG calculators -------------------------------------------------------------


def ag_simplified_rate(n: int, g: int, R_storage: Fraction, t_ratio: Fraction) -> Fraction:
    """1 - R_storage - t - (3g-2)/n, with t a ratio of servers."""
    R_storage, t_ratio = Fraction(R_storage), Fraction(t_ratio)
    return 1 - R_storage - t_ratio - Fraction(3 * g - 2, n)


def ag_storage_range(n: int, g: int) -> tuple[Fraction, Fraction]:
    """Open interval of admissible storage rates."""
    return Fraction(g - 1, n), 1 - Fraction(3 * g - 2, n)


def ag_params(
    n: int,
    g: int,
    degG1: int,
    degG2: int,
    degG3: int | None = None,
    b: int = 0,
    a: int = 0,
    N: int | None = None,
) -> dict:
    """Parameters of the AG-code scheme for divisor degrees (G1, G2[, G3]).

    Both the basic rate (n-G1-G2-1)/n and the rate obtained by substituting
    into 1 - R_storage - t - (3g-2)/n are returned; they differ by one.
    """
    for name, deg in (("degG1", degG1), ("degG2", degG2)):
        if not 2 * g - 2 < deg < n:
            raise InfeasibleDegrees(f"need 2g-2 < {name} < n, got {deg}")
    if degG1 + degG2 >= n:
        raise InfeasibleDegrees(f"degG1 + degG2 = {degG1 + degG2} >= n = {n}")
    Rs = Fraction(degG1 - g + 1, n)
    t = degG2 - 2 * g + 1
    basic = Fraction(n - degG1 - degG2 - 1, n)
    cor = ag_simplified_rate(n, g, Rs, Fraction(t, n))
    out = {
        "n": n,
        "g": g,
        "R_storage": Rs,
        "failure_tolerance": n - degG1 - 1,
        "t": t,
        "R_retrieval_basic": basic,
        "R_retrieval_transitive": Fraction(n - (degG1 + degG2 - g + 1), n),
        "R_retrieval_simplified": cor,
        "basic_vs_simplified_offset": cor - basic,
    }
    if degG1 == g:
        # replicated storage: dim L(G1) = 1
        out["R_retrieval_replication"] = Fraction(n - t - 3 * g + 1, n)
        if g == 1:
            out["R_retrieval_replication_g1"] = Fraction(n - t - 2, n)
    if degG3 is not None:
        out["robust"] = robust_constraints(
            N if N is not None else n + 1, n, degG1, degG2, degG3, t=t, b=b, a=a, g=g
        )
    return out


def robust_constraints(
    N: int, n: int, m1: int, m2: int, m3: int, t: int, b: int, a: int, g: int = 1
) -> dict:
    """Feasibility of the (m1, m2, m3) divisor choice against t colluding,
    b Byzantine and a unresponsive servers."""
    checks = {
        "degrees_in_range": all(2 * g - 2 < m < N - 1 for m in (m1, m2, m3)),
        "privacy_t_plus_1_le_m2": t + 1 <= m2,
        "privacy_goppa_t_le_m2_minus_2g_plus_1": t <= m2 - 2 * g + 1,
        "distance_budget": 2 * b + a + 1 <= n - m1 - m2 - m3,
        "dual_containment": 2 * (m1 + m2) + m3 <= N - 1,
    }
    checks["feasible"] = all(
        checks[k] for k in ("degrees_in_range", "privacy_t_plus_1_le_m2", "distance_budget", "dual_containment")
    )
    checks["rate"] = Fraction(N - 1 - m1 - m2 - m3 - 1, N - 1)
    return checks


def genus6_rate(R_storage: Fraction, t_ratio: Fraction) -> Fraction:
    """Genus 6 curve with 33 points over F_8, n = 32."""
    R_storage, t_ratio = Fraction(R_storage), Fraction(t_ratio)
    lo, hi = ag_storage_range(32, 6)
    if not (lo < R_storage < hi):
        raise ParamOutOfRange(f"storage rate must lie in ({lo}, {hi})")
    if not 0 <= t_ratio <= Fraction(1, 2) - R_storage:
        raise ParamOutOfRange("need 0 <= t <= 1/2 - R_storage")
    return ag_simplified_rate(32, 6, R_storage, t_ratio)


# ---- BCH / cyclic tables --------------------------------------------------------


def _alt_sum(q: int, m: int, r: int) -> int:
    total = Fraction(0)
    for i in range(1, m // (r + 1) + 1):
        top = m - i * r - 1
        c = comb(top, i - 1) if top >= i - 1 >= 0 else 0
        total += (-1) ** (i - 1) * Fraction(m * (q - 1) ** i, i) * c * q ** (m - i * (r + 1))
    if total.denominator != 1:
        raise AssertionError("alternating sum is not an integer")
    return int(total)


def k_t(m: int, t: int) -> int:
    """Binary k_t = 2^m - 1 - sum_i (-1)^{i-1} (m/i) C(m-ir-1, i-1) 2^{m-i(r+1)}, r = m - t."""
    if not 2 <= t <= m - 1:
        raise ParamOutOfRange(f"need 2 <= t <= m-1, got t = {t}, m = {m}")
    return 2**m - 1 - _alt_sum(2, m, m - t)


def k_s(q: int, m: int, s: int) -> int:
    """q-ary analogue with the extra (q-1)^i factor and powers of q."""
    if q < 3:
        raise ParamOutOfRange("the q-ary formula needs q >= 3")
    if not 2 <= s <= m - 1:
        raise ParamOutOfRange(f"need 2 <= s <= m-1, got s = {s}, m = {m}")
    return q**m - 1 - _alt_sum(q, m, m - s)


def bch_tables(q: int, m: int, t_or_s: int) -> dict:
    """Rate row of the dually-BCH scheme over q^m - 1 servers."""
    n = q**m - 1
    u = t_or_s
    if q == 2:
        k = k_t(m, u)
        k_next = k_t(m, u + 1) if u + 1 <= m - 1 else None
        protection = 2 ** (m - u) - 1
        dist = 2 ** (m - u)
    else:
        k = k_s(q, m, u)
        k_next = k_s(q, m, u + 1) if u + 1 <= m - 1 else None
        protection = q ** (m - u - 1) - q + 1
        dist = q ** (m - u - 1) - q + 2
    return {
        "q": q,
        "m": m,
        "param": u,
        "n": n,
        "k_value": k,
        "k_next": k_next,
        "rate_lower": Fraction(n - k, n),
        "rate_upper": None if k_next is None else Fraction(n - k_next, n),
        "protection": protection,
        "dual_distance_claim": dist,
        "distance_claim_in_range": 2 <= u <= m - 3,
    }


def long_bch_row(q: int, m: int, delta: int) -> dict:
    """Length q^m + 1 BCH scheme: t = 2 delta - 3 and its displayed rate."""
    hi = q ** ((m - 1) // 2) + 3
    if not 3 <= delta <= hi:
        raise ParamOutOfRange(f"need 3 <= delta <= {hi}, got {delta}")
    N = q**m + 1
    num = q**m - 2 * m * (delta - 2 - (delta - 2) // q)
    return {"q": q, "m": m, "delta": delta, "n": N, "t": 2 * delta - 3, "rate": Fraction(num, N)}


def long_binary_rows(m: int) -> list[dict]:
    """The three binary length 2^m + 1 rows (t = 9, 13, 17)."""
    N = 2**m + 1
    return [
        {"m": m, "n": N, "t": t, "rate": Fraction(2**m - c * m, N)}
        for t, c in ((9, 4), (13, 6), (17, 8))
    ]


def repeated_root_ranges(s: int, s0: int, s1: int, literal: bool = False):
    """(i_range, j_range) as inclusive pairs.

    The default reading constrains j by s1; ``literal=True`` returns the
    constraints as printed, which both bound i (j then unconstrained).
    """
    if not 0 <= s1 <= s0 <= s - 1:
        raise ParamOutOfRange(f"need 0 <= s1 <= s0 <= s-1, got s0 = {s0}, s1 = {s1}, s = {s}")
    i_rng = (2**s - 2 ** (s - s0) + 1, 2**s - 2 ** (s - s0) + 2 ** (s - s0 - 1))
    j_rng = (2**s - 2 ** (s - s1) + 1, 2**s - 2 ** (s - s1) + 2 ** (s - s1 - 1))
    if literal:
        i2 = (2**s - 2 ** (s - s1) + 1, 2**s - 2 ** (s - s0) + 2 ** (s - s1 - 1))
        lo, hi = max(i_rng[0], i2[0]), min(i_rng[1], i2[1])
        return (lo, hi), (1, 2**s)
    return i_rng, j_rng


def repeated_root_row(s: int, s0: int, s1: int, i: int, j: int) -> dict:
    n = 3 * 2**s
    d = min(2 ** (s0 + 1), 2 ** (s1 + 2))
    return {
        "s": s,
        "s0": s0,
        "s1": s1,
        "i": i,
        "j": j,
        "n": n,
        "dim": n - i - 2 * j,
        "d_claim": d,
        "t": d - 1,
        "rate": Fraction(n - i - 2 * j, n),
    }


# ---- families parametrisations --------------------------------------------------


def rm_pir_params(m: int, r: int, rp: int) -> dict:
    """RM(m, r) storage with RM(m, rp) retrieval.

    ``R_transitive_formula`` sums C(m, i) up to m-r-rp as displayed;
    ``R_transitive`` is dim RM(m, r+rp)^perp / 2^m, which sums to m-r-rp-1.
    """
    if r + rp > m or min(r, rp) < 0:
        raise ParamOutOfRange("need r, rp >= 0 and r + rp <= m")
    n = 2**m
    u = m - r - rp
    return {
        "m": m,
        "r": r,
        "rp": rp,
        "n": n,
        "t": 2 ** (rp + 1) - 1,
        "R_storage": Fraction(sum(comb(m, i) for i in range(r + 1)), n),
        "R_basic": Fraction(2**u - 1, n),
        "R_transitive": Fraction(sum(comb(m, i) for i in range(u)), n),
        "R_transitive_formula": Fraction(sum(comb(m, i) for i in range(u + 1)), n),
    }


def grs_pir_params(n: int, k1: int, k2: int) -> dict:
    if k1 + k2 >= n or min(k1, k2) < 1:
        raise ParamOutOfRange("need k1, k2 >= 1 and k1 + k2 < n")
    return {
        "n": n,
        "k1": k1,
        "k2": k2,
        "R_storage": Fraction(k1, n),
        "t": k2,
        "R_basic": Fraction(n - k1 - k2 + 1, n),
    }


def hamming_rate(m: int, q: int = 2) -> Fraction:
    return Fraction(m, q**m - 1)


# ---- asymptotics ----------------------------------------------------------------


def _exact(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x))


def asymptotic_calculator(q: int, R1, R2) -> dict:
    """Limits over a tower over F_{q^2}: plain (-2/(q-1)) and transitive
    (-1/(q-1)) retrieval rates and the colluding ratio bound."""
    R1, R2 = _exact(R1), _exact(R2)
    if q < 2:
        raise InfeasibleRates("q must be at least 2")
    if R1 <= 0 or R2 <= 0:
        raise InfeasibleRates("R1 and R2 must be positive")
    if R1 + R2 < Fraction(1, 2):
        raise InfeasibleRates("need R1 + R2 >= 1/2")
    eps = Fraction(1, q - 1)
    plain = 1 - R1 - R2 - 2 * eps
    trans = 1 - R1 - R2 - eps
    if R1 + R2 >= 1 or trans < 0:
        raise InfeasibleRates(f"retrieval rate {trans} is negative")
    t = R2 - eps
    return {
        "q": q,
        "R_storage": R1,
        "plain": {"R_retrieval": plain, "t_lower": t, "feasible": plain >= 0},
        "transitive": {"R_retrieval": trans, "t_lower": t},
        "plain_sum": plain + t,
        "plain_sum_identity": 1 - R1 - 3 * eps,
    }


# ---- length-128 comparison ---------------------------------------------------


def length128_report(budget: int = codes.DEFAULT_BUDGET) -> list[dict]:
    """The three length-128 rows: RM(7,3), RM(7,4) and the dual of the
    extended BCH(127, 21) as retrieval codes for replicated storage."""
    from . import families

    C = families.reed_muller(7, 0)
    rows = []
    for r in (3, 4):
        D = families.reed_muller(7, r)
        L = rate_ledger(C, D, budget, transitive_asserted=True)
        rows.append(_length128_row(f"RM(7,{r})", L, claimed_t=15))
    E = codes.extend_parity(families.bch(families.field_make(2), 127, 21))
    D = codes.dual(E)
    L = rate_ledger(C, D, budget, transitive_asserted=True)
    audit = singleton_audit(C, D, budget)
    row = _length128_row("dual(ext BCH(127,21))", L, claimed_t=21)
    row["audit"] = audit.status
    rows.append(row)
    return rows


def _length128_row(label: str, L: RateLedger, claimed_t: int) -> dict:
    matches = (L.t_count == claimed_t) and L.R_retrieval_transitive == Fraction(1, 2)
    return {
        "retrieval_code": label,
        "n": L.n,
        "t": L.t_count,
        "t_bound": "exact" if L.t_exact else "lower",
        "rate": per_server_rate(L.dim_CD_perp, L.n),
        "claimed_t": claimed_t,
        "claimed_rate": "1/2",
        "matches_claim": matches,
        "d_perp_D_source": L.d_perp_D.source,
    }


__all__ = [
    "CONSISTENT",
    "NOT_APPLICABLE",
    "UNVERIFIABLE",
    "VIOLATED",
    "RateLedger",
    "SingletonAuditReport",
    "ag_params",
    "asymptotic_calculator",
    "bch_tables",
    "ag_storage_range",
    "ag_simplified_rate",
    "genus6_rate",
    "length128_report",
    "frac_str",
    "grs_pir_params",
    "has_zero_coordinate",
    "hamming_rate",
    "k_s",
    "k_t",
    "long_binary_rows",
    "per_server_rate",
    "rate_ledger",
    "rm_pir_params",
    "robust_constraints",
    "singleton_audit",
    "long_bch_row",
    "repeated_root_ranges",
    "repeated_root_row",
]
