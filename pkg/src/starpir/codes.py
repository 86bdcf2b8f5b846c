"""Linear codes given by generator matrices.

A ``LinearCode`` stores a reduced (rref) generator matrix together with
"distance facts": proven bounds on its minimum distance and on the minimum
distance of its dual, registered by the family constructors.  ``min_distance``
turns facts and, when affordable, an exhaustive enumeration into a
``DistanceCertificate``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import FieldSpec, linalg
from .algebra.field import field_make
from .errors import (
    EmptyResult,
    FieldMismatch,
    LengthMismatch,
    UndefinedDistance,
    ZeroCode,
    ZeroScalar,
)

DEFAULT_BUDGET = 1 << 22

EXHAUSTIVE = "exhaustive"
SINGLETON = "singleton-upper"
CODEWORD = "codeword-weight"
TRIVIAL = "trivial"


@dataclass(frozen=True)
class DistanceFact:
    """A proven bound on a minimum distance; ``hi is None`` means no upper bound."""

    lo: int
    hi: int | None
    source: str


def family_formula(name: str, d: int) -> DistanceFact:
    return DistanceFact(d, d, f"family-formula:{name}")


def designed_bound(name: str, lo: int) -> DistanceFact:
    return DistanceFact(lo, None, f"designed-bound:{name}")


@dataclass(frozen=True)
class DistanceCertificate:
    lo: int
    hi: int
    lo_source: str
    hi_source: str

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def kind(self) -> str:
        return "exact" if self.exact else "bounds"

    @property
    def d(self) -> int:
        if not self.exact:
            raise ValueError(f"distance only bounded: [{self.lo}, {self.hi}]")
        return self.lo

    @property
    def source(self) -> str:
        return self.lo_source if self.lo_source == self.hi_source or self.exact else (
            f"{self.lo_source}|{self.hi_source}"
        )

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "lo": self.lo,
            "hi": self.hi,
            "lo_source": self.lo_source,
            "hi_source": self.hi_source,
        }

    @classmethod
    def exact_value(cls, d: int, source: str) -> DistanceCertificate:
        return cls(d, d, source, source)


class LinearCode:
    """An [n, k] linear code over ``field``.

    ``gen`` is a k x n basis (read-only): the reduced row echelon form,
    unless ``reduced=True`` says the given rows already form a basis (family
    constructors keep their evaluation matrices so that encoding a message
    evaluates the corresponding function).  ``family``
    is an optional descriptor dict set by the family constructors; the star
    product registry keys on its ``"name"`` entry.
    """

    def __init__(
        self,
        field: FieldSpec,
        gen,
        *,
        family: dict | None = None,
        distance_facts=(),
        dual_distance_facts=(),
        reduced: bool = False,
        n: int | None = None,
    ):
        G = linalg.as_matrix(gen, n)
        if not reduced and G.shape[0]:
            G = linalg.row_basis(field, G)
        G.setflags(write=False)
        self.field = field
        self.gen = G
        self.family = family
        self.distance_facts = tuple(distance_facts)
        self.dual_distance_facts = tuple(dual_distance_facts)
        self._dual: LinearCode | None = None
        self._certs: dict = {}

    @property
    def n(self) -> int:
        return self.gen.shape[1]

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def is_zero(self) -> bool:
        return self.k == 0

    @property
    def is_full(self) -> bool:
        return self.k == self.n

    @property
    def name(self) -> str:
        if self.family:
            return self.family.get("label", self.family["name"])
        return "code"

    def __repr__(self) -> str:
        return f"LinearCode[{self.n},{self.k}] over {self.field!r} ({self.name})"

    def encode(self, msg) -> np.ndarray:
        return self.field.matmul(np.asarray(msg, dtype=np.int64), self.gen)

    def contains(self, v) -> bool:
        return linalg.in_row_space(self.field, self.gen, v)

    def is_subcode_of(self, other: LinearCode) -> bool:
        _check_compatible(self, other)
        if self.k == 0:
            return True
        return linalg.rank(self.field, np.vstack([other.gen, self.gen])) == other.k

    def same_space(self, other: LinearCode) -> bool:
        return self.k == other.k and self.is_subcode_of(other)

    def is_cyclic(self) -> bool:
        return self.k == 0 or all(self.contains(np.roll(row, 1)) for row in self.gen)

    def codewords(self):
        """All q^k codewords as one array (small codes only)."""
        return _span_table(self.field, self.gen, self.n)

    def to_dict(self) -> dict:
        d = {
            "field": self.field.to_dict(),
            "n": self.n,
            "k": self.k,
            "gen": self.gen.tolist(),
        }
        if self.family:
            d["family"] = self.family.get("label", self.family["name"])
        return d

    @classmethod
    def from_dict(cls, d: dict) -> LinearCode:
        f = FieldSpec.from_dict(d["field"])
        gen = d["gen"]
        if int(d["k"]) == 0:
            return cls(f, np.zeros((0, int(d["n"])), dtype=np.int64), n=int(d["n"]))
        C = code_from_generator(f, gen)
        if C.k != int(d["k"]) or C.n != int(d["n"]):
            raise ValueError("descriptor dimensions disagree with the generator matrix")
        return C


def _check_compatible(C: LinearCode, D: LinearCode):
    if C.field != D.field:
        raise FieldMismatch(f"{C.field!r} vs {D.field!r}")
    if C.n != D.n:
        raise LengthMismatch(f"lengths {C.n} and {D.n} differ")


def code_from_generator(field: FieldSpec, gen, **kw) -> LinearCode:
    G = linalg.as_matrix(gen)
    G = G % field.q if field.s == 1 else G
    if G.size == 0 or not G.any():
        raise ZeroCode("generator matrix is zero")
    return LinearCode(field, G, **kw)


def zero_code(field: FieldSpec, n: int) -> LinearCode:
    return LinearCode(field, np.zeros((0, n), dtype=np.int64), n=n, reduced=True)


def full_space(field: FieldSpec, n: int) -> LinearCode:
    return LinearCode(
        field,
        np.eye(n, dtype=np.int64),
        reduced=True,
        family={"name": "full", "n": n},
        distance_facts=[family_formula("full-space", 1)],
    )


def repetition(field: FieldSpec, n: int) -> LinearCode:
    return LinearCode(
        field,
        np.ones((1, n), dtype=np.int64),
        reduced=True,
        family={"name": "repetition", "n": n, "label": f"repetition[{n},1]"},
        distance_facts=[family_formula("repetition n", n)],
        dual_distance_facts=[family_formula("even-weight 2", 2)] if n >= 2 else [],
    )


def dual(C: LinearCode) -> LinearCode:
    """Euclidean dual; ``dual(dual(C)) is C``."""
    if C._dual is None:
        N = linalg.nullspace(C.field, C.gen, C.n)
        D = LinearCode(
            C.field,
            N,
            n=C.n,
            distance_facts=C.dual_distance_facts,
            dual_distance_facts=C.distance_facts,
            family={"name": "dual", "label": f"dual({C.name})"},
        )
        D._dual = C
        C._dual = D
    return C._dual


# ---- star product -----------------------------------------------------------

# name -> fn(C, D) returning (code, relation) with relation in {"equal", "contains"}
# meaning the returned code equals or contains C*D, or None when not applicable
StarRule = Callable[[LinearCode, LinearCode], "tuple[LinearCode, str] | None"]
STAR_RULES: dict[str, StarRule] = {}


def register_star_rule(name: str, rule: StarRule):
    STAR_RULES[name] = rule


def _is_all_nonzero_line(C: LinearCode) -> bool:
    return C.k == 1 and bool(np.all(C.gen[0] != 0))


def star_product(C: LinearCode, D: LinearCode) -> LinearCode:
    """Span of all componentwise products of codewords of C and D."""
    _check_compatible(C, D)
    f = C.field
    if C.k == 0 or D.k == 0:
        return zero_code(f, C.n)
    if _is_all_nonzero_line(C):
        return scale_equivalent(D, C.gen[0])
    if _is_all_nonzero_line(D):
        return scale_equivalent(C, D.gen[0])
    prods = f.vmul(C.gen[:, None, :], D.gen[None, :, :]).reshape(-1, C.n)
    P = LinearCode(f, prods, family={"name": "star", "label": f"({C.name})*({D.name})"})
    cn, dn = (C.family or {}).get("name"), (D.family or {}).get("name")
    if cn and cn == dn and cn in STAR_RULES:
        res = STAR_RULES[cn](C, D)
        if res is not None:
            R, relation = res
            if relation == "equal" and R.same_space(P):
                R._certs.clear()
                return R
            if P.is_subcode_of(R):
                P.distance_facts = tuple(
                    DistanceFact(fa.lo, None, f"{fa.source}[subcode]") for fa in R.distance_facts
                )
                P.family = dict(P.family, contained_in=R.name, equals_container=P.k == R.k)
    return P


# ---- derived codes ----------------------------------------------------------


def scale_equivalent(C: LinearCode, a) -> LinearCode:
    a = np.asarray(a, dtype=np.int64).reshape(-1)
    if a.shape[0] != C.n:
        raise LengthMismatch("scaling vector length differs from code length")
    if np.any(a == 0):
        raise ZeroScalar("scaling vector has a zero entry")
    fam = None
    if C.family and "scale_rule" in C.family:
        fam = C.family["scale_rule"](C, a)
    elif np.all(a == 1):
        fam = C.family
    return LinearCode(
        C.field,
        C.field.vmul(C.gen, a[None, :]),
        family=fam or {"name": "scaled", "label": f"scaled({C.name})"},
        distance_facts=C.distance_facts,
        dual_distance_facts=C.dual_distance_facts,
    )


def puncture(C: LinearCode, S) -> LinearCode:
    S = set(int(j) for j in S)
    if len(S) >= C.n:
        raise EmptyResult("cannot puncture every coordinate")
    keep = [j for j in range(C.n) if j not in S]
    G = C.gen[:, keep]
    if not G.any():
        raise EmptyResult("punctured code is zero")
    facts = [
        DistanceFact(max(1, fa.lo - len(S)), fa.hi, f"{fa.source}[punctured]")
        for fa in C.distance_facts
    ]
    return LinearCode(
        C.field, G, distance_facts=facts, family={"name": "punctured", "label": f"punct({C.name})"}
    )


def extend_parity(C: LinearCode) -> LinearCode:
    """Append a coordinate making every codeword sum to zero."""
    f = C.field
    col = f.vneg(f.vsum(C.gen, axis=1))
    G = np.hstack([C.gen, col[:, None]])
    facts = []
    for fa in C.distance_facts:
        lo = fa.lo
        if f.q == 2 and lo % 2:
            lo += 1
        hi = None if fa.hi is None else fa.hi + 1
        if f.q == 2 and fa.hi is not None:
            hi = fa.hi + (fa.hi % 2)
        facts.append(DistanceFact(lo, hi, f"{fa.source}[extended]"))
    return LinearCode(
        f, G, distance_facts=facts, family={"name": "extended", "label": f"ext({C.name})"}
    )


def puncture_extend(op: str, C: LinearCode, S=()) -> LinearCode:
    if op == "puncture":
        return puncture(C, S)
    if op == "extend_parity":
        return extend_parity(C)
    raise ValueError(f"unknown operation {op!r}")


def information_set(C: LinearCode, preferred=()) -> tuple[int, ...]:
    """k coordinates with independent generator columns, greedily preferring
    ``preferred`` in the given order."""
    order = list(dict.fromkeys(int(j) for j in preferred))
    order += [j for j in range(C.n) if j not in order]
    ech = linalg.Echelon(C.field, C.k)
    out = []
    for j in order:
        if len(out) == C.k:
            break
        if ech.add(C.gen[:, j]):
            out.append(j)
    return tuple(out)


# ---- minimum distance ---------------------------------------------------------


def _span_table(field: FieldSpec, rows: np.ndarray, n: int) -> np.ndarray:
    T = np.zeros((1, n), dtype=np.int64)
    elems = np.arange(field.q, dtype=np.int64)
    for g in rows:
        scaled = field.vmul(elems[:, None], g[None, :])
        T = field.vadd(T[None, :, :], scaled[:, None, :]).reshape(-1, n)
    return T


def exhaustive_min_weight(field: FieldSpec, G: np.ndarray, stop_at: int = 1) -> tuple[int, int]:
    """Minimum weight over all nonzero combinations of the rows of G.

    Returns ``(weight, codewords_checked)``; stops early once a codeword of
    weight <= ``stop_at`` is seen.
    """
    k, n = G.shape
    q = field.q
    kl = 0
    while kl < k and q ** (kl + 1) * n <= (1 << 22):
        kl += 1
    kl = max(kl, 1)
    low = _span_table(field, G[:kl], n)
    high = _span_table(field, G[kl:], n)
    best = n + 1
    checked = 0
    for i, h in enumerate(high):
        W = field.vadd(low, h[None, :]) if i else low[1:]
        w = np.count_nonzero(W, axis=1)
        checked += W.shape[0]
        if w.size:
            best = min(best, int(w.min()))
        if best <= stop_at:
            break
    return best, checked


def min_distance(
    C: LinearCode, budget: int = DEFAULT_BUDGET, *, registry: bool = True
) -> DistanceCertificate:
    """Certificate for d(C).

    Exact via enumeration whenever q^k <= budget; otherwise the best proven
    bounds: registered facts below, Singleton and the weight of a known
    codeword above.  ``registry=False`` ignores registered facts.
    """
    if C.k == 0:
        raise UndefinedDistance("the zero code has no minimum distance")
    key = (budget, registry)
    if key in C._certs:
        return C._certs[key]
    lo, lo_src = 1, TRIVIAL
    hi, hi_src = C.n - C.k + 1, SINGLETON
    if registry:
        for fa in C.distance_facts:
            if fa.lo > lo:
                lo, lo_src = fa.lo, fa.source
            if fa.hi is not None and fa.hi <= hi:
                hi, hi_src = fa.hi, fa.source
    row_w = int(np.count_nonzero(C.gen, axis=1).min())
    if row_w < hi:
        hi, hi_src = row_w, CODEWORD
    if lo > hi:
        raise AssertionError(f"inconsistent distance facts for {C!r}: lo={lo} > hi={hi}")
    if lo < hi and C.q**C.k <= budget:
        w, _ = exhaustive_min_weight(C.field, C.gen, stop_at=lo)
        cert = DistanceCertificate.exact_value(w, EXHAUSTIVE)
    else:
        cert = DistanceCertificate(lo, hi, lo_src, hi_src)
    C._certs[key] = cert
    return cert


def dual_distance(C: LinearCode, budget: int = DEFAULT_BUDGET, *, registry: bool = True):
    return min_distance(dual(C), budget, registry=registry)


def weight_distribution(C: LinearCode) -> dict[int, int]:
    W = np.count_nonzero(C.codewords(), axis=1)
    vals, counts = np.unique(W, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


def brute_force_distance(C: LinearCode) -> int:
    """Independent oracle: pure-Python enumeration of every message."""
    from itertools import product

    f = C.field
    best = C.n + 1
    for msg in product(range(f.q), repeat=C.k):
        if not any(msg):
            continue
        w = 0
        for j in range(C.n):
            acc = 0
            for i, m in enumerate(msg):
                acc = f.add(acc, f.mul(m, int(C.gen[i, j])))
            w += acc != 0
        best = min(best, w)
    return best


def columns_in_general_position(field: FieldSpec, M, t: int):
    """True iff every t columns of M are linearly independent.

    Depth-first over column subsets with an incremental echelon basis; returns
    ``(True, None, checked)`` or ``(False, witness, checked)``.
    """
    M = linalg.as_matrix(M)
    rows, n = M.shape
    if t == 0:
        return True, None, 0
    if t > rows:
        return False, tuple(range(t)), 0
    checked = 0

    def dfs(start, chosen, ech):
        nonlocal checked
        if len(chosen) == t:
            checked += 1
            return None
        for j in range(start, n - (t - len(chosen)) + 1):
            e2 = ech.copy()
            if not e2.add(M[:, j]):
                checked += 1
                return tuple(chosen + [j])
            found = dfs(j + 1, chosen + [j], e2)
            if found is not None:
                return found
        return None

    witness = dfs(0, [], linalg.Echelon(field, rows))
    return witness is None, witness, checked


def random_code(field: FieldSpec, n: int, k: int, rng) -> LinearCode:
    """A uniformly random generator matrix of k rows (rank may be lower)."""
    while True:
        G = rng.integers(0, field.q, size=(k, n))
        if G.any():
            return code_from_generator(field, G)


__all__ = [
    "DEFAULT_BUDGET",
    "DistanceCertificate",
    "DistanceFact",
    "LinearCode",
    "brute_force_distance",
    "code_from_generator",
    "columns_in_general_position",
    "designed_bound",
    "dual",
    "dual_distance",
    "exhaustive_min_weight",
    "extend_parity",
    "family_formula",
    "field_make",
    "full_space",
    "information_set",
    "min_distance",
    "puncture",
    "puncture_extend",
    "random_code",
    "register_star_rule",
    "repetition",
    "scale_equivalent",
    "star_product",
    "weight_distribution",
    "zero_code",
]
