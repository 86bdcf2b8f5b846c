"""Star-product PIR over coded storage.

Storage: m files of shape b x k are stacked into X (mb x k) and server j
stores column j of Y = X G_C.  A round sends q_j = Z[:, j] + Delta[:, j]
where the rows of Z are uniform codewords of the retrieval code D and Delta
puts a single 1 in rows of the target file at the round's target set S.
The responses <q_j, y_j> form c + e_S with c in C*D, so the parity matrix H
of C*D isolates the wanted symbols e_S.

Robust sessions (b_byz Byzantine, a unresponsive servers) are decoded
jointly over all rounds: for each hypothesised set of bad servers the
stacked syndrome equations are solved for the file itself.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Callable

import numpy as np

from . import codes
from .algebra import Echelon, linalg
from .codes import LinearCode
from .errors import (
    BudgetExceeded,
    CorruptedSymbols,
    DecodingAmbiguity,
    InconsistentSystem,
    InsufficientDistanceForRobustness,
    InsufficientSymbols,
    NoFeasibleSchedule,
    ShapeMismatch,
    ZeroRetrievalRate,
)

MAX_SUPPORT_N = 40
MAX_BYZANTINE = 2
MAX_ERASURE_PATTERNS = 200_000


def rng_for(seed: int, *key: int) -> np.random.Generator:
    """PCG64 stream for (seed, key...); pads use key (round, row)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def file_digest(X: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(X, dtype=np.int64).tobytes()).hexdigest()


# ---- storage ------------------------------------------------------------------


@dataclass
class StorageSystem:
    C: LinearCode
    m: int
    b: int
    X: np.ndarray
    Y: np.ndarray
    digests: tuple[str, ...]

    @property
    def n(self) -> int:
        return self.C.n

    @property
    def k(self) -> int:
        return self.C.k

    @property
    def field(self):
        return self.C.field

    def server_contents(self, j: int) -> np.ndarray:
        return self.Y[:, j]

    def file(self, w: int) -> np.ndarray:
        return self.X[(w - 1) * self.b : w * self.b]

    def verify(self, w: int, X) -> bool:
        return file_digest(np.asarray(X)) == self.digests[w - 1]


def encode_storage(C: LinearCode, files) -> StorageSystem:
    """Stack the m files (each b x k) and encode every row with C."""
    mats = [np.atleast_2d(np.asarray(x, dtype=np.int64)) for x in files]
    if not mats:
        raise ShapeMismatch("need at least one file")
    b = mats[0].shape[0]
    for i, x in enumerate(mats):
        if x.shape != (b, C.k):
            raise ShapeMismatch(f"file {i + 1} has shape {x.shape}, expected ({b}, {C.k})")
        if x.min(initial=0) < 0 or x.max(initial=0) >= C.q:
            raise ShapeMismatch(f"file {i + 1} has entries outside the field")
    X = np.vstack(mats)
    Y = C.field.matmul(X, C.gen)
    return StorageSystem(C, len(mats), b, X, Y, tuple(file_digest(x) for x in mats))


def random_files(C: LinearCode, m: int, b: int, rng) -> list[np.ndarray]:
    return [rng.integers(0, C.q, size=(b, C.k)) for _ in range(m)]


# ---- sessions -------------------------------------------------------------------


@dataclass
class RoundPlan:
    index: int
    S: tuple[int, ...]
    beta: dict[int, int]
    Z: np.ndarray
    Delta: np.ndarray


@dataclass
class AdversaryModel:
    """Colluding set T, Byzantine mutation rules keyed by server, and
    unresponsive servers.  A rule maps (round, value) to a field element."""

    colluding: frozenset = frozenset()
    byzantine: dict[int, Callable[[int, int], int]] = dc_field(default_factory=dict)
    unresponsive: frozenset = frozenset()


@dataclass
class RetrievalSession:
    sys: StorageSystem
    w: int
    D: LinearCode
    P: LinearCode
    H: np.ndarray
    rounds: list[RoundPlan]
    seed: int
    b_byz: int = 0
    a: int = 0
    robust: bool = False
    transcripts: dict[int, dict[int, tuple[int, ...]]] = dc_field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.sys.n

    @property
    def field(self):
        return self.sys.field

    @property
    def achieved_rate(self) -> Fraction:
        return Fraction(self.sys.b * self.sys.k, self.n * len(self.rounds))

    @property
    def r(self) -> int:
        return self.H.shape[0]

    def targets(self) -> list[tuple[int, int, int]]:
        """(round, row, position) triples of the schedule."""
        return [(R.index, R.beta[j], j) for R in self.rounds for j in R.S]

    def to_dict(self) -> dict:
        return {
            "w": self.w,
            "seed": self.seed,
            "n": self.n,
            "b": self.sys.b,
            "k": self.sys.k,
            "robust": self.robust,
            "b_byz": self.b_byz,
            "a": self.a,
            "rounds": [
                {"index": R.index, "S": list(R.S), "beta": {str(j): R.beta[j] for j in R.S}}
                for R in self.rounds
            ],
            "achieved_rate": f"{self.achieved_rate.numerator}/{self.achieved_rate.denominator}",
            "transcripts": {
                str(j): {str(rd): list(q) for rd, q in sorted(t.items())}
                for j, t in sorted(self.transcripts.items())
            },
        }


def recommend_rows(C: LinearCode, D: LinearCode) -> int:
    """Smallest b with dim((C*D)^perp) dividing b*k."""
    r = C.n - codes.star_product(C, D).k
    if r == 0:
        raise ZeroRetrievalRate("C*D is the full space")
    return r // gcd(r, C.k)


def sample_pad(D: LinearCode, rows: int, seed: int, rnd: int) -> np.ndarray:
    f = D.field
    msgs = np.array([rng_for(seed, rnd, i).integers(0, f.q, size=D.k) for i in range(rows)])
    return f.matmul(msgs.reshape(rows, D.k), D.gen)


def _delta(sys: StorageSystem, w: int, S, beta) -> np.ndarray:
    Delta = np.zeros((sys.m * sys.b, sys.n), dtype=np.int64)
    for j in S:
        Delta[(w - 1) * sys.b + beta[j], j] = 1
    return Delta


def _parity(C: LinearCode, D: LinearCode):
    P = codes.star_product(C, D)
    H = np.asarray(codes.dual(P).gen)
    if H.shape[0] == 0:
        raise ZeroRetrievalRate("C*D is the full space; nothing can be retrieved")
    if np.any(np.count_nonzero(H, axis=0) == 0):
        raise ZeroRetrievalRate("d(C*D) = 1: some coordinate carries no parity")
    return P, H


def _greedy_rounds(sys, H, cap, start_round=0, start_pos=0, need=None, used=None, limit=None):
    """Yield (S, beta) rounds greedily.

    ``need`` is a per-row echelon of C-columns still wanted (plain mode);
    when None every unused (row, position) pair is a candidate (robust mode).
    """
    n, b = sys.n, sys.b
    G = sys.C.gen
    f = sys.field
    pos = start_pos
    rnd = start_round
    counts = [0] * b
    while limit is None or rnd < limit:
        ech = Echelon(f, H.shape[0])
        S, beta = [], {}
        for off in range(n):
            if len(S) == cap:
                break
            j = (pos + off) % n
            if not ech.independent(H[:, j]):
                continue
            if need is not None:
                rows = [bb for bb in range(b) if len(need[bb]) < sys.k and need[bb].independent(G[:, j])]
            else:
                rows = [bb for bb in range(b) if (bb, j) not in used]
            if not rows:
                continue
            bb = min(rows, key=lambda x: (len(need[x]) if need is not None else counts[x], x))
            ech.add(H[:, j])
            S.append(j)
            beta[j] = bb
            if need is not None:
                need[bb].add(G[:, j])
            else:
                used.add((bb, j))
                counts[bb] += 1
        if not S:
            return
        pos = (S[-1] + 1) % n
        yield tuple(S), beta
        rnd += 1


def plan_retrieval(
    sys: StorageSystem,
    w: int,
    D: LinearCode,
    seed: int = 0,
    b_byz: int = 0,
    a: int = 0,
    budget: int = codes.DEFAULT_BUDGET,
    max_patterns: int = MAX_ERASURE_PATTERNS,
) -> RetrievalSession:
    """Schedule rounds retrieving file w (1-based).

    Plain mode targets up to dim((C*D)^perp) positions per round.  With
    b_byz or a nonzero the target sets shrink by a + 2 b_byz and rounds are
    added until every erasure pattern of size 2 b_byz + a still determines
    the file.
    """
    if not 1 <= w <= sys.m:
        raise ValueError(f"file index {w} outside 1..{sys.m}")
    if D.field != sys.field or D.n != sys.n:
        raise ShapeMismatch("retrieval code must match the storage code's field and length")
    P, H = _parity(sys.C, D)
    r = H.shape[0]
    robust = b_byz > 0 or a > 0
    if not robust:
        need = [Echelon(sys.field, sys.k) for _ in range(sys.b)]
        plans = list(_greedy_rounds(sys, H, r, need=need))
        if any(len(e) < sys.k for e in need):
            raise NoFeasibleSchedule("target positions cannot cover an information set of C")
    else:
        plans = _plan_robust(sys, P, H, b_byz, a, budget, max_patterns)
    rounds = []
    mb = sys.m * sys.b
    for i, (S, beta) in enumerate(plans):
        Z = sample_pad(D, mb, seed, i)
        rounds.append(RoundPlan(i, S, beta, Z, _delta(sys, w, S, beta)))
    return RetrievalSession(sys, w, D, P, H, rounds, seed, b_byz, a, robust)


def robust_target_size(P: LinearCode, r: int, b_byz: int, a: int, budget=codes.DEFAULT_BUDGET) -> int:
    dlo = codes.min_distance(P, budget).lo
    s = min(r, dlo - 1) - (a + 2 * b_byz)
    if s < 1:
        # per-round budget exhausted; rely on joint decoding across rounds
        s = r - (a + 2 * b_byz)
    if s < 1:
        raise InsufficientDistanceForRobustness(
            f"dim((C*D)^perp) = {r} and d(C*D) >= {dlo} leave no room for "
            f"a + 2b = {a + 2 * b_byz}"
        )
    return s


def _check_caps(n, b_byz, a, max_patterns):
    if n > MAX_SUPPORT_N or b_byz > MAX_BYZANTINE:
        raise BudgetExceeded(f"robust decoding is capped at n <= {MAX_SUPPORT_N}, b <= {MAX_BYZANTINE}")
    width = min(n, 2 * b_byz + a)
    if comb(n, width) > max_patterns:
        raise BudgetExceeded(f"C({n}, {width}) erasure patterns exceed {max_patterns}")


def _plan_robust(sys, P, H, b_byz, a, budget, max_patterns):
    n = sys.n
    _check_caps(n, b_byz, a, max_patterns)
    s = robust_target_size(P, H.shape[0], b_byz, a, budget)
    width = min(n, 2 * b_byz + a)
    patterns = list(combinations(range(n), width))
    max_rounds = -(-2 * sys.b * n // s)
    plans = []
    used = set()
    for S, beta in _greedy_rounds(sys, H, s, used=used, limit=max_rounds):
        plans.append((S, beta))
        if len(used) >= sys.b * sys.k and all(
            _determines(sys, H, plans, [W] * len(plans)) for W in patterns
        ):
            return plans
        if len(used) == sys.b * n:
            used.clear()
    raise InsufficientDistanceForRobustness(
        f"no schedule within {max_rounds} rounds tolerates {b_byz} Byzantine and {a} unresponsive servers"
    )


# ---- joint linear system --------------------------------------------------------


def _stacked(sys, H, plans, erased):
    """Coefficient matrix of the stacked syndrome equations.

    Unknowns: the b*k file entries, then per-round nuisance values on the
    erased positions.  Returns (M, nuisance_rank).
    """
    f = sys.field
    G = sys.C.gen
    r = H.shape[0]
    bk = sys.b * sys.k
    extra = sum(len(W) for W in erased)
    M = np.zeros((r * len(plans), bk + extra), dtype=np.int64)
    col = bk
    nuis_rank = 0
    for rho, ((S, beta), W) in enumerate(zip(plans, erased)):
        rows = slice(rho * r, (rho + 1) * r)
        Wset = set(W)
        for j in S:
            if j in Wset:
                continue
            bb = beta[j]
            blk = f.vmul(H[:, j][:, None], G[:, j][None, :])
            M[rows, bb * sys.k : (bb + 1) * sys.k] = f.vadd(M[rows, bb * sys.k : (bb + 1) * sys.k], blk)
        if W:
            M[rows, col : col + len(W)] = H[:, list(W)]
            nuis_rank += linalg.rank(f, H[:, list(W)])
            col += len(W)
    return M, nuis_rank


def _determines(sys, H, plans, erased) -> bool:
    M, nr = _stacked(sys, H, plans, erased)
    return linalg.rank(sys.field, M) - nr == sys.b * sys.k


def certified(session: RetrievalSession) -> bool:
    """True iff every erasure pattern of size 2 b_byz + a determines the file."""
    sys, n = session.sys, session.n
    plans = [(R.S, R.beta) for R in session.rounds]
    width = min(n, 2 * session.b_byz + session.a)
    return all(
        _determines(sys, session.H, plans, [W] * len(plans)) for W in combinations(range(n), width)
    )


# ---- rounds ---------------------------------------------------------------------


def make_queries(session: RetrievalSession, rnd: int) -> list[np.ndarray]:
    """Queries q_j = Z[:, j] + Delta[:, j]; recorded in the transcripts."""
    R = session.rounds[rnd]
    Q = session.field.vadd(R.Z, R.Delta)
    out = [np.ascontiguousarray(Q[:, j]) for j in range(session.n)]
    for j, q in enumerate(out):
        session.transcripts.setdefault(j, {})[rnd] = tuple(int(v) for v in q)
    return out


def server_respond(field, contents, query) -> int:
    y = np.asarray(contents, dtype=np.int64).reshape(-1)
    q = np.asarray(query, dtype=np.int64).reshape(-1)
    if y.shape != q.shape:
        raise ShapeMismatch(f"query length {q.shape[0]} != stored length {y.shape[0]}")
    return field.vdot(q, y)


def hypotheses(n: int, b_byz: int, missing=()):
    """Byzantine sets to try: all b_byz-subsets of the responding servers."""
    alive = [j for j in range(n) if j not in set(missing)]
    return list(combinations(alive, min(b_byz, len(alive))))


def _syndrome(f, H, r, missing):
    r = np.array([0 if v is None else int(v) for v in r], dtype=np.int64)
    for j in missing:
        r[j] = 0
    return f.matmul(H, r[:, None]).reshape(-1)


def reconstruct_round(session: RetrievalSession, responses, missing=(), rnd: int = 0) -> dict:
    """Recovered symbols {(row, position): value} from one round.

    Each hypothesis erases its Byzantine set plus ``missing``; a symbol is
    returned only if determined and equal under every consistent hypothesis.
    """
    f = session.field
    H = session.H
    R = session.rounds[rnd]
    s = _syndrome(f, H, responses, missing)
    results = []
    for T in hypotheses(session.n, session.b_byz, missing):
        W = sorted(set(T) | set(missing))
        S_alive = [j for j in R.S if j not in W]
        A = np.hstack([H[:, S_alive], H[:, W]]) if W else H[:, S_alive]
        try:
            sol = linalg.solve(f, A, s)
        except InconsistentSystem:
            continue
        N = linalg.nullspace(f, A, A.shape[1])
        got = {}
        for i, j in enumerate(S_alive):
            if N.shape[0] == 0 or not N[:, i].any():
                got[(R.beta[j], j)] = int(sol[i])
        results.append(got)
    if not results:
        if session.b_byz == 0:
            raise CorruptedSymbols("responses are inconsistent with C*D and no errors are allowed")
        raise BudgetExceeded("no error pattern within budget explains the responses")
    out = {}
    for key, v in results[0].items():
        if all(res.get(key) == v for res in results[1:]):
            out[key] = v
    return out


def decode_file(session: RetrievalSession, recovered: dict) -> np.ndarray:
    """Solve each row of file w from its recovered codeword symbols."""
    sys = session.sys
    f = sys.field
    G = sys.C.gen
    out = np.zeros((sys.b, sys.k), dtype=np.int64)
    for bb in range(sys.b):
        pos = sorted(j for (row, j) in recovered if row == bb)
        if not pos or linalg.rank(f, G[:, pos]) < sys.k:
            raise InsufficientSymbols(f"row {bb}: positions {pos} do not contain an information set")
        y = np.array([recovered[(bb, j)] for j in pos], dtype=np.int64)
        try:
            out[bb] = linalg.solve(f, G[:, pos].T, y)
        except InconsistentSystem:
            raise CorruptedSymbols(f"row {bb}: recovered symbols are not a codeword of C") from None
    return out


def _joint(session, responses, missing):
    sys, f, H = session.sys, session.field, session.H
    plans = [(R.S, R.beta) for R in session.rounds]
    s = np.concatenate([_syndrome(f, H, r, U) for r, U in zip(responses, missing)])
    all_missing = set().union(*[set(U) for U in missing]) if missing else set()
    bk = sys.b * sys.k
    sols = {}
    for T in hypotheses(sys.n, session.b_byz, all_missing):
        erased = [tuple(sorted(set(T) | set(U))) for U in missing]
        M, nr = _stacked(sys, H, plans, erased)
        try:
            sol = linalg.solve(f, M, s)
        except InconsistentSystem:
            continue
        if linalg.rank(f, M) - nr != bk:
            continue
        sols[T] = tuple(int(v) for v in sol[:bk])
    return sols


def decode_session(session: RetrievalSession, responses, missing=None) -> np.ndarray:
    """Decode file w from all rounds' responses.

    ``responses[rho][j]`` is server j's answer in round rho (None when
    missing); ``missing[rho]`` lists the servers that did not answer.
    """
    sys = session.sys
    R = len(session.rounds)
    missing = [tuple(sorted(U)) for U in (missing or [()] * R)]
    if not session.robust:
        recovered = {}
        for rho in range(R):
            recovered.update(reconstruct_round(session, responses[rho], missing[rho], rho))
        return decode_file(session, recovered)
    sols = _joint(session, responses, missing)
    if not sols:
        raise BudgetExceeded("no Byzantine set within budget yields a determined, consistent file")
    values = set(sols.values())
    if len(values) > 1:
        raise DecodingAmbiguity(f"{len(values)} distinct files are consistent with the responses")
    x = np.array(values.pop(), dtype=np.int64)
    return x.reshape(sys.b, sys.k)


def run_local(session: RetrievalSession, adversary: AdversaryModel | None = None):
    """Send every round to in-process servers; returns (responses, missing)."""
    adv = adversary or AdversaryModel()
    sys = session.sys
    responses, missing = [], []
    for rho in range(len(session.rounds)):
        qs = make_queries(session, rho)
        row, lost = [], []
        for j in range(sys.n):
            if j in adv.unresponsive:
                row.append(None)
                lost.append(j)
                continue
            v = server_respond(sys.field, sys.server_contents(j), qs[j])
            if j in adv.byzantine:
                v = sys.field.check(int(adv.byzantine[j](rho, v)))
            row.append(v)
        responses.append(row)
        missing.append(tuple(lost))
    return responses, missing


def retrieve(sys: StorageSystem, w: int, D: LinearCode, seed: int = 0, adversary=None, b_byz=0, a=0):
    session = plan_retrieval(sys, w, D, seed, b_byz=b_byz, a=a)
    responses, missing = run_local(session, adversary)
    return decode_session(session, responses, missing), session


# ---- privacy --------------------------------------------------------------------


@dataclass
class StructuralPrivacy:
    passed: bool
    t: int
    witness: tuple[int, ...] | None
    checked: int
    exhaustive: bool

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "t": self.t,
            "witness": None if self.witness is None else list(self.witness),
            "checked": self.checked,
            "exhaustive": self.exhaustive,
        }


def privacy_audit_structural(
    D: LinearCode, t: int, max_subsets: int = 10**6, samples: int = 20_000, seed: int = 0
) -> StructuralPrivacy:
    """Every t columns of G_D independent, i.e. d_perp(D) > t."""
    n = D.n
    if t > n:
        raise ValueError(f"t = {t} exceeds n = {n}")
    if comb(n, t) <= max_subsets:
        ok, wit, checked = codes.columns_in_general_position(D.field, D.gen, t)
        return StructuralPrivacy(ok, t, wit, checked, True)
    rng = np.random.default_rng(seed)
    for i in range(samples):
        T = tuple(sorted(rng.choice(n, size=t, replace=False).tolist()))
        if linalg.submatrix_rank(D.field, D.gen, T) < t:
            return StructuralPrivacy(False, t, T, i + 1, False)
    return StructuralPrivacy(True, t, None, samples, False)


@dataclass
class EmpiricalPrivacy:
    passed: bool
    tv: float
    threshold: float
    samples: int
    T: tuple[int, ...]
    method: str
    marginal_tv: list[float]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "tv": self.tv,
            "threshold": self.threshold,
            "samples": self.samples,
            "T": list(self.T),
            "method": self.method,
            "marginal_tv": self.marginal_tv,
        }


def _tv(a: np.ndarray, b: np.ndarray, size: int) -> float:
    pa = np.bincount(a, minlength=size) / a.size
    pb = np.bincount(b, minlength=size) / b.size
    return 0.5 * float(np.abs(pa - pb).sum())


def sample_restricted_queries(sys, plan: RoundPlan, w, D, T, samples, seed, pad_code=None, zero_pad=False):
    """``samples`` independent draws of the queries seen by coalition T."""
    f = sys.field
    pad = pad_code or D
    mb = sys.m * sys.b
    T = list(T)
    rng = rng_for(seed, 1 << 20)
    Delta = _delta(sys, w, plan.S, plan.beta)[:, T]
    if zero_pad:
        Z = np.zeros((samples, mb, len(T)), dtype=np.int64)
    else:
        msgs = rng.integers(0, f.q, size=(samples * mb, pad.k))
        Z = f.matmul(msgs, np.asarray(pad.gen)[:, T]).reshape(samples, mb, len(T))
    return f.vadd(Z, Delta[None, :, :])


def privacy_audit_empirical(
    sys: StorageSystem,
    D: LinearCode,
    t: int,
    w1: int,
    w2: int,
    samples: int = 100_000,
    threshold: float = 0.05,
    T=None,
    seed: int = 0,
    pad_code: LinearCode | None = None,
    zero_pad: bool = False,
    rnd: int = 0,
) -> EmpiricalPrivacy:
    """Total-variation distance between the coalition's view for w1 and w2.

    The joint tuple is histogrammed when it has at most samples/1000
    outcomes, which keeps the estimator's own bias (about
    0.56 sqrt(outcomes/samples)) under 0.02; otherwise the maximum over
    query rows of the per-row TV is used.
    ``pad_code`` / ``zero_pad`` substitute a defective pad sampler.
    """
    session = plan_retrieval(sys, w1, D, seed)
    plan = session.rounds[rnd]
    if T is None:
        T = list(plan.S[:t])
        T += [j for j in range(sys.n) if j not in T][: t - len(T)]
    T = tuple(sorted(T))
    q = sys.field.q
    A = sample_restricted_queries(sys, plan, w1, D, T, samples, seed, pad_code, zero_pad)
    B = sample_restricted_queries(sys, plan, w2, D, T, samples, seed + 1, pad_code, zero_pad)
    mb = A.shape[1]
    cells = mb * len(T)
    if q**cells <= max(1, samples // 1000):
        weights = q ** np.arange(cells, dtype=np.int64)
        tv = _tv(A.reshape(samples, -1) @ weights, B.reshape(samples, -1) @ weights, q**cells)
        method = "joint"
    else:
        per = []
        weights = q ** np.arange(len(T), dtype=np.int64)
        size = q ** len(T)
        if size > 1 << 20:
            raise BudgetExceeded(f"per-row outcome space q^{len(T)} too large")
        for i in range(mb):
            per.append(_tv(A[:, i, :] @ weights, B[:, i, :] @ weights, size))
        tv = max(per)
        method = "per-row-max"
    marg = [
        max(_tv(A[:, i, c], B[:, i, c], q) for i in range(mb)) for c in range(len(T))
    ]
    return EmpiricalPrivacy(tv <= threshold, tv, threshold, samples, T, method, marg)


__all__ = [
    "AdversaryModel",
    "EmpiricalPrivacy",
    "RetrievalSession",
    "RoundPlan",
    "StorageSystem",
    "StructuralPrivacy",
    "certified",
    "decode_file",
    "decode_session",
    "encode_storage",
    "file_digest",
    "hypotheses",
    "make_queries",
    "plan_retrieval",
    "privacy_audit_empirical",
    "privacy_audit_structural",
    "random_files",
    "recommend_rows",
    "reconstruct_round",
    "retrieve",
    "rng_for",
    "robust_target_size",
    "run_local",
    "sample_pad",
    "sample_restricted_queries",
    "server_respond",
]
