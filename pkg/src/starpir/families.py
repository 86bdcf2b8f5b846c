"""Constructors for the concrete code families: GRS, binary Reed-Muller,
cyclic and BCH codes, repeated-root cyclic codes and elliptic AG codes.

Every constructor registers what is known about its distances so that
``codes.min_distance`` can certify large instances without enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations
from math import comb, gcd

import numpy as np

from . import codes
from .algebra import FieldSpec, Polynomial, extension, field_make, is_prime, linalg, minimal_polynomial
from .algebra.poly import cyclotomic_cosets, multiplicative_order, x_pow_minus_one
from .algebra.field import prime_factors
from .codes import LinearCode, designed_bound, family_formula
from .errors import (
    ConfigError,
    DegreeOutOfRange,
    DeltaTooLarge,
    LengthExceedsField,
    NotADivisor,
    NotCoprime,
    RankDeficiency,
    RepeatedEvaluationPoint,
    SingularCurve,
    ZeroScalar,
)

# ---- GRS ----------------------------------------------------------------------


def grs(field: FieldSpec, n: int, k: int, evals=None, mults=None) -> LinearCode:
    """Evaluations v_j f(a_j) of all f with deg f < k."""
    if n > field.q:
        raise LengthExceedsField(f"n = {n} exceeds q = {field.q}")
    if not 1 <= k <= n:
        raise DegreeOutOfRange(f"need 1 <= k <= n, got k = {k}, n = {n}")
    evals = tuple(range(n)) if evals is None else tuple(int(a) for a in evals)
    mults = (1,) * n if mults is None else tuple(int(v) for v in mults)
    if len(evals) != n or len(mults) != n:
        raise ValueError("evals and mults must have length n")
    for a in evals:
        field.check(a)
    if len(set(evals)) != n:
        raise RepeatedEvaluationPoint("evaluation points must be distinct")
    if 0 in mults:
        raise ZeroScalar("GRS multipliers must be nonzero")
    ev = np.array(evals, dtype=np.int64)
    rows = [np.array(mults, dtype=np.int64)]
    powers = np.ones(n, dtype=np.int64)
    for _ in range(1, k):
        powers = field.vmul(powers, ev)
        rows.append(field.vmul(powers, np.array(mults)))
    fam = {
        "name": "grs",
        "label": f"GRS[{n},{k}]",
        "k": k,
        "evals": evals,
        "mults": mults,
        "scale_rule": _grs_scale,
    }
    dual_facts = [family_formula("grs dual k+1", k + 1)] if k < n else []
    return LinearCode(
        field,
        np.array(rows),
        reduced=True,  # Vandermonde rows with distinct points are independent
        family=fam,
        distance_facts=[family_formula("grs n-k+1", n - k + 1)],
        dual_distance_facts=dual_facts,
    )


def _grs_scale(C: LinearCode, a):
    fam = dict(C.family)
    fam["mults"] = tuple(int(v) for v in C.field.vmul(np.array(fam["mults"]), a))
    return fam


def _grs_star(C: LinearCode, D: LinearCode):
    fc, fd = C.family, D.family
    if fc["evals"] != fd["evals"]:
        return None
    n, f = C.n, C.field
    k = fc["k"] + fd["k"] - 1
    if k >= n:
        return codes.full_space(f, n), "equal"
    mults = f.vmul(np.array(fc["mults"]), np.array(fd["mults"]))
    return grs(f, n, k, fc["evals"], mults), "equal"


codes.register_star_rule("grs", _grs_star)


# ---- Reed-Muller --------------------------------------------------------------


def rm_dimension(m: int, r: int) -> int:
    return sum(comb(m, i) for i in range(r + 1))


def reed_muller(m: int, r: int) -> LinearCode:
    """Binary RM(m, r): evaluations of monomials of degree <= r on F_2^m.

    Point j of F_2^m has coordinate i equal to bit i of j.
    """
    if not 0 <= r <= m:
        raise DegreeOutOfRange(f"need 0 <= r <= m, got r = {r}, m = {m}")
    F2 = field_make(2)
    pts = (np.arange(1 << m)[:, None] >> np.arange(m)[None, :]) & 1
    rows = []
    for deg in range(r + 1):
        for mono in combinations(range(m), deg):
            rows.append(np.prod(pts[:, list(mono)], axis=1) if mono else np.ones(1 << m))
    G = np.array(rows, dtype=np.int64)
    dual_facts = [family_formula("reed-muller dual 2^{r+1}", 2 ** (r + 1))] if r < m else []
    return LinearCode(
        F2,
        G,
        reduced=True,  # distinct monomials are independent functions on F_2^m
        family={"name": "rm", "label": f"RM({m},{r})", "m": m, "r": r},
        distance_facts=[family_formula("reed-muller 2^{m-r}", 2 ** (m - r))],
        dual_distance_facts=dual_facts,
    )


def _rm_star(C: LinearCode, D: LinearCode):
    m = C.family["m"]
    if D.family["m"] != m:
        return None
    return reed_muller(m, min(m, C.family["r"] + D.family["r"])), "equal"


codes.register_star_rule("rm", _rm_star)


# ---- cyclic and BCH -------------------------------------------------------------


def cyclic_from_generator(field: FieldSpec, n: int, g: Polynomial, *, label=None, facts=()):
    if g.field != field:
        g = Polynomial(field, g.coeffs)
    if g.is_zero() or not g.divides(x_pow_minus_one(field, n)):
        raise NotADivisor(f"{g} does not divide x^{n} - 1")
    k = n - int(g.degree)
    if k == 0:
        return codes.zero_code(field, n)
    G = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        G[i, i : i + len(g.coeffs)] = g.coeffs
    C = LinearCode(
        field,
        G,
        family={"name": "cyclic", "label": label or f"cyclic[{n},{k}]", "g": g.coeffs},
        distance_facts=facts,
    )
    if not C.is_cyclic():
        raise AssertionError("generated code is not closed under cyclic shift")
    return C


def _longest_cyclic_run(exps: set[int], n: int) -> int:
    if len(exps) == n:
        return n
    best = 0
    for e in exps:
        if (e - 1) % n in exps:
            continue
        run = 0
        while (e + run) % n in exps:
            run += 1
        best = max(best, run)
    return best


def bch_zeros(q: int, n: int, delta: int, first: int = 1) -> tuple[list[list[int]], set[int]]:
    cosets = cyclotomic_cosets(q, n)
    want = {(first + i) % n for i in range(delta - 1)}
    used = [c for c in cosets if want & set(c)]
    return used, set().union(*used) if used else set()


def bch(field: FieldSpec, n: int, delta: int, narrow_sense: bool = True, first: int | None = None):
    """BCH code with zeros alpha^first, ..., alpha^(first+delta-2).

    alpha has order n in F_{q^ord}; the registered lower bound is the BCH
    bound computed from the longest run of consecutive zeros (>= delta).
    """
    q = field.q
    if gcd(n, q) != 1:
        raise NotCoprime(f"gcd({n}, {q}) != 1")
    if not 2 <= delta <= n:
        raise DeltaTooLarge(f"need 2 <= delta <= n, got {delta}")
    if first is None:
        first = 1 if narrow_sense else 0
    used, zeros = bch_zeros(q, n, delta, first)
    if len(zeros) == n:
        raise DeltaTooLarge("generator polynomial would be x^n - 1")
    ord_ = multiplicative_order(q, n)
    ext = extension(field, ord_)
    big = ext.big
    alpha = big.pow(big.primitive_element, (big.q - 1) // n)
    g = Polynomial(field, [1])
    for coset in used:
        g = g * minimal_polynomial(big.pow(alpha, coset[0]), ext)
    bound = _longest_cyclic_run(zeros, n) + 1
    C = cyclic_from_generator(
        field,
        n,
        g,
        label=f"BCH({n},{delta})",
        facts=[designed_bound("bch consecutive zeros", max(bound, delta))],
    )
    C.family.update(name="bch", delta=delta, zeros=tuple(sorted(zeros)))
    return C


def hamming(field: FieldSpec, m: int) -> LinearCode:
    """Hamming code of redundancy m: the dual of the simplex code whose
    columns are the nonzero vectors of F_q^m with leading entry 1."""
    q = field.q
    cols = []
    for v in range(1, q**m):
        digits = [(v // q**i) % q for i in range(m)]
        if next(d for d in reversed(digits) if d) == 1:
            cols.append(digits)
    S = np.array(cols, dtype=np.int64).T
    n = S.shape[1]
    simplex = LinearCode(
        field,
        S,
        family={"name": "simplex", "label": f"simplex[{n},{m}]", "m": m},
        distance_facts=[family_formula("simplex q^{m-1}", q ** (m - 1))],
        dual_distance_facts=[family_formula("hamming 3", 3)] if m >= 2 else [],
    )
    H = codes.dual(simplex)
    H.family = {"name": "hamming", "label": f"Hamming[{n},{n - m}]", "m": m}
    return H


def repeated_root_cyclic(s: int, i: int, j: int) -> LinearCode:
    """Binary cyclic code of length 3*2^s generated by (x+1)^i (x^2+x+1)^j."""
    F2 = field_make(2)
    n = 3 * 2**s
    if not (0 <= i <= 2**s and 0 <= j <= 2**s):
        raise DegreeOutOfRange(f"exponents must lie in [0, 2^s], got i = {i}, j = {j}")
    a = Polynomial(F2, [1, 1])
    b = Polynomial(F2, [1, 1, 1])
    g = Polynomial(F2, [1])
    for _ in range(i):
        g = g * a
    for _ in range(j):
        g = g * b
    C = cyclic_from_generator(F2, n, g, label=f"RRC(s={s},i={i},j={j})")
    C.family.update(name="repeated-root", s=s, i=i, j=j)
    return C


# ---- elliptic curves ----------------------------------------------------------


@dataclass(frozen=True)
class EllipticCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    field: FieldSpec
    a1: int = 0
    a2: int = 0
    a3: int = 0
    a4: int = 0
    a6: int = 0

    @property
    def coeffs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def _int(self, c: int) -> int:
        # integer constant mapped into the prime subfield
        return c % self.field.p

    def discriminant(self) -> int:
        f = self.field
        a1, a2, a3, a4, a6 = self.coeffs
        c = self._int
        b2 = f.add(f.mul(a1, a1), f.mul(c(4), a2))
        b4 = f.add(f.mul(c(2), a4), f.mul(a1, a3))
        b6 = f.add(f.mul(a3, a3), f.mul(c(4), a6))
        b8 = f.sub(
            f.add(f.add(f.mul(f.mul(a1, a1), a6), f.mul(c(4), f.mul(a2, a6))), f.mul(a2, f.mul(a3, a3))),
            f.add(f.mul(a1, f.mul(a3, a4)), f.mul(a4, a4)),
        )
        t1 = f.neg(f.mul(f.mul(b2, b2), b8))
        t2 = f.neg(f.mul(c(8), f.pow(b4, 3)))
        t3 = f.neg(f.mul(c(27), f.mul(b6, b6)))
        t4 = f.mul(c(9), f.mul(b2, f.mul(b4, b6)))
        return f.add(f.add(t1, t2), f.add(t3, t4))

    def contains(self, x: int, y: int) -> bool:
        f = self.field
        a1, a2, a3, a4, a6 = self.coeffs
        lhs = f.add(f.mul(y, y), f.add(f.mul(a1, f.mul(x, y)), f.mul(a3, y)))
        x2 = f.mul(x, x)
        rhs = f.add(f.add(f.mul(x2, x), f.mul(a2, x2)), f.add(f.mul(a4, x), a6))
        return lhs == rhs

    @cached_property
    def affine_points(self) -> tuple[tuple[int, int], ...]:
        if self.discriminant() == 0:
            raise SingularCurve(f"discriminant vanishes for {self.coeffs}")
        f = self.field
        a1, a2, a3, a4, a6 = self.coeffs
        el = np.arange(f.q, dtype=np.int64)
        X, Y = np.meshgrid(el, el, indexing="ij")
        X, Y = X.ravel(), Y.ravel()
        lhs = f.vadd(f.vmul(Y, Y), f.vadd(f.vmul(a1, f.vmul(X, Y)), f.vmul(a3, Y)))
        X2 = f.vmul(X, X)
        rhs = f.vadd(f.vadd(f.vmul(X2, X), f.vmul(a2, X2)), f.vadd(f.vmul(a4, X), a6))
        hit = np.flatnonzero(lhs == rhs)
        pts = tuple((int(X[i]), int(Y[i])) for i in hit)
        N = len(pts) + 1
        if (N - f.q - 1) ** 2 > 4 * f.q:
            raise AssertionError(f"Hasse bound violated: N = {N}, q = {f.q}")
        return pts

    @property
    def num_points(self) -> int:
        return len(self.affine_points) + 1


INFINITY = "O"


def curve_points(curve: EllipticCurve) -> list:
    """Affine points sorted by (x, y), then the point at infinity."""
    return list(curve.affine_points) + [INFINITY]


@dataclass(frozen=True)
class AgCodeSpec:
    curve: EllipticCurve
    m: int
    points: tuple = dc_field(default=None)

    def __post_init__(self):
        if self.points is None:
            object.__setattr__(self, "points", self.curve.affine_points)
        pts = tuple(tuple(int(c) for c in P) for P in self.points)
        object.__setattr__(self, "points", pts)
        n = len(pts)
        if len(set(pts)) != n:
            raise RepeatedEvaluationPoint("evaluation points must be distinct")
        for P in pts:
            if not self.curve.contains(*P):
                raise ValueError(f"{P} is not on the curve")
        if n > self.curve.num_points - 1:
            raise LengthExceedsField("more points than affine rational points")
        if not 0 < self.m < n:
            raise DegreeOutOfRange(f"need 0 < m < n, got m = {self.m}, n = {n}")

    @property
    def n(self) -> int:
        return len(self.points)


def riemann_roch_basis(m: int) -> list[tuple[int, int]]:
    """Exponents (a, b) of x^a y^b spanning L(m*O), by increasing pole order."""
    out = [(a, b) for b in (0, 1) for a in range(m // 2 + 1) if 2 * a + 3 * b <= m]
    return sorted(out, key=lambda e: 2 * e[0] + 3 * e[1])


def elliptic_ag(spec: AgCodeSpec) -> LinearCode:
    f = spec.curve.field
    xs = np.array([P[0] for P in spec.points], dtype=np.int64)
    ys = np.array([P[1] for P in spec.points], dtype=np.int64)
    rows = []
    for a, b in riemann_roch_basis(spec.m):
        v = np.ones(spec.n, dtype=np.int64)
        for _ in range(a):
            v = f.vmul(v, xs)
        if b:
            v = f.vmul(v, ys)
        rows.append(v)
    G = np.array(rows)
    n = spec.n
    if linalg.rank(f, G) != spec.m:
        raise RankDeficiency(f"L({spec.m}O) evaluated to rank {linalg.rank(f, G)}, expected {spec.m}")
    return LinearCode(
        f,
        G,
        reduced=True,
        family={
            "name": "elliptic",
            "label": f"AG[{n},{spec.m}]",
            "curve": spec.curve,
            "points": spec.points,
            "m": spec.m,
        },
        distance_facts=[designed_bound("goppa n-deg G", n - spec.m)],
        dual_distance_facts=[designed_bound("goppa dual deg G", spec.m)],
    )


def _elliptic_star(C: LinearCode, D: LinearCode):
    fc, fd = C.family, D.family
    if fc["curve"] != fd["curve"] or fc["points"] != fd["points"]:
        return None
    m = fc["m"] + fd["m"]
    if m >= C.n:
        return None
    return elliptic_ag(AgCodeSpec(fc["curve"], m, fc["points"])), "contains"


codes.register_star_rule("elliptic", _elliptic_star)


# ---- descriptors --------------------------------------------------------------

FAMILIES = {
    "grs": "q, n, k, optional evals, mults",
    "rm": "m, r (binary)",
    "cyclic": "q, n, g (coefficients, constant term first)",
    "repeated-root": "s, i, j (binary, length 3*2^s)",
    "bch": "q, n, delta, optional narrow_sense, first",
    "elliptic": "q, coeffs [a1,a2,a3,a4,a6], m, optional points",
    "repetition": "q, n",
    "hamming": "q, m",
    "generator": "q, gen (matrix rows)",
}


def families_list() -> list[dict]:
    return [{"family": k, "params": v} for k, v in FAMILIES.items()]


def field_from_params(params: dict, where: str = "params") -> FieldSpec:
    if "field" in params:
        try:
            return FieldSpec.from_dict(params["field"])
        except Exception as e:
            raise ConfigError(f"{where}.field", str(e)) from None
    q = params.get("q", 2)
    if not isinstance(q, int) or q < 2:
        raise ConfigError(f"{where}.q", f"field order must be an integer >= 2, got {q!r}")
    ps = prime_factors(q)
    if len(set(ps)) != 1 or not is_prime(ps[0]):
        raise ConfigError(f"{where}.q", f"{q} is not a prime power")
    p = ps[0]
    return field_make(p, len(ps))


def build_code(desc: dict, where: str = "code") -> LinearCode:
    """Resolve a family descriptor {"family", "params", "extend_parity", "dual"}."""
    if not isinstance(desc, dict) or "family" not in desc:
        raise ConfigError(where, "descriptor must be an object with a 'family' key")
    fam = desc["family"]
    params = desc.get("params", {})
    loc = f"{where}.params"

    def need(key):
        if key not in params:
            raise ConfigError(f"{loc}.{key}", "missing required parameter")
        return params[key]

    try:
        if fam == "rm":
            C = reed_muller(need("m"), need("r"))
        elif fam == "repeated-root":
            C = repeated_root_cyclic(need("s"), need("i"), need("j"))
        else:
            f = field_from_params(params, loc)
            if fam == "grs":
                C = grs(f, need("n"), need("k"), params.get("evals"), params.get("mults"))
            elif fam == "cyclic":
                C = cyclic_from_generator(f, need("n"), Polynomial(f, need("g")))
            elif fam == "bch":
                C = bch(
                    f, need("n"), need("delta"), params.get("narrow_sense", True), params.get("first")
                )
            elif fam == "elliptic":
                curve = EllipticCurve(f, *need("coeffs"))
                C = elliptic_ag(AgCodeSpec(curve, need("m"), params.get("points")))
            elif fam == "repetition":
                C = codes.repetition(f, need("n"))
            elif fam == "hamming":
                C = hamming(f, need("m"))
            elif fam == "generator":
                C = codes.code_from_generator(f, need("gen"))
            else:
                raise ConfigError(f"{where}.family", f"unknown family {fam!r}")
    except ConfigError:
        raise
    except Exception as e:
        raise ConfigError(loc, f"{type(e).__name__}: {e}") from None
    if desc.get("extend_parity"):
        C = codes.extend_parity(C)
    if desc.get("dual"):
        C = codes.dual(C)
    return C


__all__ = [
    "AgCodeSpec",
    "EllipticCurve",
    "FAMILIES",
    "INFINITY",
    "bch",
    "bch_zeros",
    "build_code",
    "curve_points",
    "cyclic_from_generator",
    "elliptic_ag",
    "families_list",
    "field_from_params",
    "grs",
    "hamming",
    "reed_muller",
    "repeated_root_cyclic",
    "riemann_roch_basis",
    "rm_dimension",
]
