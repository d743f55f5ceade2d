"""Constructive Wedderburn statements W_{p,k,f}.

W_{p,k,f} says: in a p^k-ring with p = 0, ba = f(a) b forces ba = ab. This
module provides the composition monoid GF(p)[T]/(T^(p^k) - T) with its
period/index computation, a status classifier for the proven families, and
a saturation prover for the finite group algebras that control monomial f.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .arith import is_prime
from .fppoly import FpPoly, mod_t_n_minus_t

# -- composition monoid ------------------------------------------------------------


def _reduce(f: FpPoly, q: int) -> FpPoly:
    return mod_t_n_minus_t(f, q)


def _frobenius(f: FpPoly, q: int) -> FpPoly:
    """f^p for f already reduced mod T^q - T: T^i goes to T^(ip), then wraps."""
    p = f.p
    out = [0] * min(q, len(f.coeffs) * p)
    for i, c in enumerate(f.coeffs):
        if c:
            e = i * p
            if e >= q:
                e = (e - 1) % (q - 1) + 1
            out[e] = (out[e] + c) % p
    return FpPoly(p, out)


@dataclass(frozen=True)
class MonoidElement:
    """A class in (GF(p)[T]/(T^q - T), composition, T) with q = p^k."""

    p: int
    k: int
    rep: FpPoly

    @classmethod
    def of(cls, p: int, k: int, f: FpPoly | str) -> "MonoidElement":
        if not isinstance(f, FpPoly):
            f = FpPoly.parse(p, f)
        return cls(p, k, _reduce(f, p ** k))

    @property
    def q(self) -> int:
        return self.p ** self.k

    def compose(self, inner: "MonoidElement") -> "MonoidElement":
        """self o inner, summing c_e * inner^e term by term.

        inner^e is a product of Frobenius images inner^(p^j), one per base-p
        digit of e, so p-power terms cost no multiplication at all.
        """
        if (inner.p, inner.k) != (self.p, self.k):
            raise ValueError("elements of different monoids")
        p, q = self.p, self.q
        frob = [inner.rep]
        acc = FpPoly.zero(p)
        for e, c in enumerate(self.rep.coeffs):
            if not c:
                continue
            term, j = FpPoly.const(p, c), 0
            while e:
                e, d = divmod(e, p)
                while len(frob) <= j:
                    frob.append(_frobenius(frob[-1], q))
                for _ in range(d):
                    term = _reduce(term * frob[j], q)
                j += 1
            acc = acc + term
        return MonoidElement(p, self.k, acc)

    def __matmul__(self, other: "MonoidElement") -> "MonoidElement":
        return self.compose(other)

    def iterate(self, j: int) -> "MonoidElement":
        out = MonoidElement(self.p, self.k, FpPoly.T(self.p))
        for _ in range(j):
            out = self.compose(out)
        return out


@dataclass(frozen=True)
class PeriodIndex:
    period: int
    index: int


def period_index(p: int, k: int, f: FpPoly | str, budget: int = 1_000_000) -> PeriodIndex:
    """Minimal (period, index) of f under composition mod T^(p^k) - T.

    Iterates f^{o j} for j = 0, 1, ... and stops at the first repeat.
    """
    el = MonoidElement.of(p, k, f)
    cur = MonoidElement(p, k, FpPoly.T(p))
    seen: dict[FpPoly, int] = {}
    j = 0
    while cur.rep not in seen:
        if j > budget:
            raise BudgetExceeded(f"no repeat within {budget} compositions")
        seen[cur.rep] = j
        cur = el.compose(cur)
        j += 1
    i = seen[cur.rep]
    return PeriodIndex(j - i, i)


def monomial_period(p: int, k: int, m: int) -> int:
    """Period of T^(p^m): the additive order of m in Z/k."""
    if k < 1 or m < 0:
        raise ValueError("need k >= 1 and m >= 0")
    return k // math.gcd(m, k)


# -- finite algebras -----------------------------------------------------------------


def default_budget(p: int) -> int:
    env = os.environ.get("RINGLOCK_BUDGET")
    if env:
        return int(env)
    return 64 if p == 2 else 32


class BudgetExceeded(RuntimeError):
    pass


class FiniteAlgebra:
    """Associative unital GF(p)-algebra given by structure constants.

    ``C[i, j]`` is the coordinate vector of e_i * e_j.
    """

    def __init__(self, p: int, labels: Sequence[str], C: np.ndarray, unit: np.ndarray):
        self.p = p
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.C = np.asarray(C, dtype=np.int64) % p
        if self.C.shape != (self.dim, self.dim, self.dim):
            raise ValueError("structure constants have the wrong shape")
        self.unit = np.asarray(unit, dtype=np.int64) % p
        # float64 keeps BLAS speed; entries stay far below 2^53 so results are exact
        self._flat = self.C.reshape(self.dim * self.dim, self.dim).astype(np.float64)

    def basis(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def mul(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        w = np.outer(u.astype(np.float64), v.astype(np.float64)).reshape(-1) @ self._flat
        return np.rint(w).astype(np.int64) % self.p

    def power(self, u: np.ndarray, e: int) -> np.ndarray:
        acc, base = self.unit.copy(), u % self.p
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return acc

    def left_mult_matrices(self) -> np.ndarray:
        """L with e_i * v = v @ L[i] for row vectors v."""
        return self.C

    def right_mult_matrices(self) -> np.ndarray:
        """R with v * e_i = v @ R[i] for row vectors v."""
        return self.C.transpose(1, 0, 2)

    def is_associative(self) -> bool:
        d, p = self.dim, self.p
        Cf = self.C.astype(np.float64)
        flat = Cf.reshape(d * d, d)
        for i in range(d):
            # (e_i e_j) e_k = sum_l C[i,j,l] C[l,k,:]
            left = (Cf[i] @ Cf.reshape(d, d * d)).reshape(d, d, d)
            # e_i (e_j e_k) = sum_l C[j,k,l] C[i,l,:]
            right = (flat @ Cf[i]).reshape(d, d, d)
            if not np.array_equal(np.rint(left).astype(np.int64) % p, np.rint(right).astype(np.int64) % p):
                return False
        return True

    def has_unit(self) -> bool:
        u = self.unit
        for i in range(self.dim):
            e = self.basis(i)
            if not (np.array_equal(self.mul(u, e), e) and np.array_equal(self.mul(e, u), e)):
                return False
        return True

    def is_commutative(self) -> bool:
        return np.array_equal(self.C, self.C.transpose(1, 0, 2))

    def structure_list(self) -> list[list[int]]:
        idx = np.argwhere(self.C)
        return [[int(i), int(j), int(k), int(self.C[i, j, k])] for i, j, k in idx]

    @classmethod
    def from_structure_list(cls, p: int, labels: Sequence[str], entries, unit) -> "FiniteAlgebra":
        d = len(labels)
        C = np.zeros((d, d, d), dtype=np.int64)
        for i, j, k, c in entries:
            C[i, j, k] = c
        return cls(p, labels, C, np.asarray(unit, dtype=np.int64))


def group_algebra_order(p: int, k: int, m: int) -> int:
    """d = gcd(m^(q-1) - 1, q - 1) with q = p^k."""
    n = p ** k - 1
    return math.gcd(pow(m, n, n) - 1, n) if n > 1 else 1


def semidirect_group_algebra(p: int, d: int, n: int, m: int) -> FiniteAlgebra:
    """GF(p)[C_d x|_m C_n]: X^d = 1, Y^n = 1, YX = X^m Y, basis X^i Y^j.

    Needs m^n = 1 mod d so that the relations define a group of order d*n.
    """
    if d < 1 or n < 1 or pow(m, n, d) != 1 % d:
        raise ValueError(f"m = {m} does not define an action of C_{n} on C_{d}")
    dim = d * n
    labels = [f"X^{i}Y^{j}" for i in range(d) for j in range(n)]
    C = np.zeros((dim, dim, dim), dtype=np.int64)
    mpow = [pow(m, j, d) for j in range(n)]
    # (X^i Y^j)(X^a Y^b) = X^(i + a m^j) Y^(j + b)
    for i in range(d):
        for j in range(n):
            for a in range(d):
                row = C[i * n + j, a * n:(a + 1) * n]
                x = ((i + a * mpow[j]) % d) * n
                for b in range(n):
                    row[b, x + (j + b) % n] = 1
    unit = np.zeros(dim, dtype=np.int64)
    unit[0] = 1
    return FiniteAlgebra(p, labels, C, unit)


def group_algebra(p: int, k: int, m: int, budget: int | None = None) -> FiniteAlgebra:
    """The algebra V_{p,k,T^m} = GF(p)[C_d x|_m C_(q-1)], d = gcd(m^(q-1) - 1, q - 1)."""
    if not is_prime(p) or k < 1 or m < 1:
        raise ValueError("need prime p, k >= 1, m >= 1")
    n = p ** k - 1
    d = group_algebra_order(p, k, m)
    budget = default_budget(p) if budget is None else budget
    if d * n > budget:
        raise BudgetExceeded(f"dimension {d * n} exceeds budget {budget}")
    return semidirect_group_algebra(p, d, n, m)


# -- linear algebra over GF(p) --------------------------------------------------------


class _Echelon:
    """Incrementally maintained row-echelon basis over GF(p)."""

    def __init__(self, p: int, dim: int):
        self.p, self.dim = p, dim
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = v % self.p
        for col, row in zip(self.pivots, self.rows):
            c = v[col]
            if c:
                v = (v - c * row) % self.p
        return v

    def add(self, v: np.ndarray) -> np.ndarray | None:
        v = self.reduce(v)
        nz = np.flatnonzero(v)
        if not len(nz):
            return None
        col = int(nz[0])
        v = (v * pow(int(v[col]), -1, self.p)) % self.p
        # keep earlier rows reduced at the new pivot
        for idx, row in enumerate(self.rows):
            c = row[col]
            if c:
                self.rows[idx] = (row - c * v) % self.p
        self.rows.append(v)
        self.pivots.append(col)
        return v

    def matrix(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, self.dim), dtype=np.int64)
        order = np.argsort(self.pivots)
        return np.array([self.rows[i] for i in order], dtype=np.int64)


def rank_mod_p(M: np.ndarray, p: int) -> int:
    """Rank by plain Gaussian elimination (kept separate from _Echelon)."""
    A = np.array(M, dtype=np.int64) % p
    if A.size == 0:
        return 0
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if not len(nz):
            continue
        piv = r + int(nz[0])
        A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        r += 1
    return r


# -- saturation --------------------------------------------------------------------


@dataclass
class SaturationTrace:
    p: int
    q: int
    labels: list[str]
    structure: list[list[int]]
    unit: list[int]
    relations: list[list[int]]
    ideal_basis: list[list[int]]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "labels": self.labels,
            "structure": self.structure,
            "unit": self.unit,
            "relations": self.relations,
            "ideal_basis": self.ideal_basis,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "SaturationTrace":
        return cls(d["p"], d["q"], list(d["labels"]), [list(e) for e in d["structure"]], list(d["unit"]),
                   [list(r) for r in d["relations"]], [list(r) for r in d["ideal_basis"]])

    @classmethod
    def from_json(cls, text: str) -> "SaturationTrace":
        return cls.from_dict(json.loads(text))


@dataclass
class CommutativeQuotient:
    relations: list[np.ndarray]
    ideal_basis: np.ndarray
    stats: dict
    trace: SaturationTrace


@dataclass
class Inconclusive:
    stats: dict
    reason: str = "budget exhausted"


def _candidates(A: FiniteAlgebra, seed: int):
    d = A.dim
    for i in range(d):
        yield "basis", A.basis(i)
    for i in range(d):
        for j in range(i + 1, d):
            yield "pair", (A.basis(i) + A.basis(j)) % A.p
    rng = np.random.default_rng(seed)
    while True:
        yield "random", rng.integers(0, A.p, size=d, dtype=np.int64)


def saturate_universal_quotient(A: FiniteAlgebra, q: int, budget: int | None = None,
                                seed: int = 0) -> CommutativeQuotient | Inconclusive:
    """Search for relations r^q - r whose two-sided ideal makes A commutative.

    Success is sound for the universal q-ring quotient of A, which is a
    further quotient of A / ideal. ``budget`` bounds the number of
    candidates r examined (default: basis + pairwise sums + 4*dim random).
    """
    d, p = A.dim, A.p
    if budget is None:
        budget = d + d * (d - 1) // 2 + 4 * d
    L = A.C                     # e_i * v  = v @ L[i] with L[i][l] = C[i, l]
    R = A.C.transpose(1, 0, 2)  # v * e_i  = v @ R[i]
    pending = [(i, j) for i in range(d) for j in range(i + 1, d)
               if not np.array_equal(A.C[i, j], A.C[j, i])]
    ech = _Echelon(p, d)
    relations: list[np.ndarray] = []
    stats = {"dim": d, "q": q, "examined": 0, "kinds": {"basis": 0, "pair": 0, "random": 0}}

    def commutators_done() -> bool:
        nonlocal pending
        pending = [(i, j) for i, j in pending if ech.reduce(A.C[i, j] - A.C[j, i]).any()]
        return not pending

    if not commutators_done():
        for kind, r in _candidates(A, seed):
            if stats["examined"] >= budget:
                stats["ideal_dim"] = len(ech.rows)
                stats["pending_commutators"] = len(pending)
                return Inconclusive(stats)
            stats["examined"] += 1
            rel = (A.power(r, q) - r) % p
            if not ech.reduce(rel).any():
                continue
            relations.append(r)
            stats["kinds"][kind] += 1
            queue = [ech.add(rel)]
            while queue:
                v = queue.pop()
                if v is None:
                    continue
                for i in range(d):
                    for w in (v @ L[i] % p, v @ R[i] % p):
                        added = ech.add(w)
                        if added is not None:
                            queue.append(added)
            if commutators_done() or len(ech.rows) == d:
                commutators_done()
                break
    stats["ideal_dim"] = len(ech.rows)
    stats["relations"] = len(relations)
    basis = ech.matrix()
    trace = SaturationTrace(p, q, A.labels, A.structure_list(), [int(x) for x in A.unit],
                            [[int(x) for x in r] for r in relations], basis.tolist())
    return CommutativeQuotient(relations, basis, stats, trace)


def verify_trace(trace: SaturationTrace | dict | str) -> tuple[bool, str]:
    """Independent re-check of a saturation trace.

    1. every ideal-basis row lies in the span of {e_i (r^q - r) e_j};
    2. every commutator e_i e_j - e_j e_i lies in the span of the ideal basis.
    """
    if isinstance(trace, str):
        trace = SaturationTrace.from_json(trace)
    elif isinstance(trace, dict):
        trace = SaturationTrace.from_dict(trace)
    p, d = trace.p, len(trace.labels)
    A = FiniteAlgebra.from_structure_list(p, trace.labels, trace.structure, trace.unit)
    I = np.array(trace.ideal_basis, dtype=np.int64).reshape(-1, d) % p
    gens = []
    for r in trace.relations:
        r = np.array(r, dtype=np.int64)
        rel = (A.power(r, trace.q) - r) % p
        # e_i * rel * e_j for all i, j via structure constants
        left = np.einsum("l,ilk->ik", rel, A.C) % p           # e_i * rel
        both = np.einsum("il,ljk->ijk", left, A.C) % p        # (e_i * rel) * e_j
        gens.append(both.reshape(d * d, d))
    G = np.concatenate(gens) if gens else np.zeros((0, d), dtype=np.int64)
    rg = rank_mod_p(G, p)
    if rank_mod_p(np.concatenate([G, I]), p) != rg:
        return False, "ideal basis is not contained in the ideal generated by the relations"
    comm = (A.C - A.C.transpose(1, 0, 2)).reshape(d * d, d) % p
    comm = comm[comm.any(axis=1)]
    ri = rank_mod_p(I, p)
    if len(comm) and rank_mod_p(np.concatenate([I, comm]), p) != ri:
        return False, "some commutator survives in the quotient"
    return True, "ok"


# -- status classifier -----------------------------------------------------------------


@dataclass
class WedderburnStatus:
    p: int
    k: int
    f: FpPoly
    verdict: str
    evidence: dict = field(default_factory=dict)

    @property
    def proven(self) -> bool:
        return self.verdict.startswith("Proven")

    def to_dict(self) -> dict:
        ev = {k: (v.to_dict() if hasattr(v, "to_dict") else v) for k, v in self.evidence.items()}
        return {"p": self.p, "k": self.k, "f": self.f.to_str(), "verdict": self.verdict, "evidence": ev}


def _monomial_exponent(f: FpPoly) -> int | None:
    c = f.coeffs
    if len(c) >= 2 and c[-1] == 1 and not any(c[:-1]):
        return len(c) - 1
    return None


def wedderburn_status(p: int, k: int, f: FpPoly | str, saturate: bool = False,
                      saturation_budget: int | None = None, dim_budget: int | None = None) -> WedderburnStatus:
    """Classify W_{p,k,f}: constant, linear T+u, period gcd 1, saturation, or open."""
    if not is_prime(p) or k < 1:
        raise ValueError("need prime p and k >= 1")
    q = p ** k
    f = f if isinstance(f, FpPoly) else FpPoly.parse(p, f)
    f = _reduce(f, q)
    if f.degree <= 0:
        return WedderburnStatus(p, k, f, "ProvenConstant")
    if f.degree == 1 and f.coeffs[1] == 1:
        return WedderburnStatus(p, k, f, "ProvenLinear", {"u": f.coeffs[0]})
    pi = period_index(p, k, f)
    dgcd = math.gcd(pi.period, q - 1)
    evidence: dict[str, Any] = {"period": pi.period, "index": pi.index, "gcd": dgcd}
    if dgcd == 1:
        return WedderburnStatus(p, k, f, "ProvenPeriodGcd", evidence)
    m = _monomial_exponent(f)
    if saturate and m is not None:
        try:
            A = group_algebra(p, k, m, budget=dim_budget)
        except BudgetExceeded as exc:
            evidence["saturation"] = str(exc)
        else:
            res = saturate_universal_quotient(A, q, budget=saturation_budget)
            if isinstance(res, CommutativeQuotient):
                ok, why = verify_trace(res.trace)
                if ok:
                    evidence["saturation"] = res.stats
                    evidence["trace"] = res.trace
                    return WedderburnStatus(p, k, f, "ProvenSemantically", evidence)
                evidence["saturation"] = f"trace failed re-verification: {why}"
            else:
                evidence["saturation"] = res.stats
    return WedderburnStatus(p, k, f, "Open", evidence)
