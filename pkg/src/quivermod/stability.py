"""Ground-truth theta-stability decisions over finite fields.

Semistability of a concrete representation over F_p is decided by exhaustive
enumeration of subrepresentations: all tuples of per-vertex subspaces (each
given by its reduced row echelon basis) that are stable under every arrow.
Rational inputs are handled by multi-prime reduction; instability can be
certified exactly by lifting a witness, semistability stays heuristic.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import numpy as np

from . import linalg
from .fields import PrimeField, QQ, Rationals
from .quiver import DimVector, Weight, theta_pairing, total_dim
from .rep import Representation, RepresentationError, representation

DEFAULT_BUDGET = 10**7


class BudgetExceededError(RuntimeError):
    def __init__(self, name: str, bound: int, required: int):
        super().__init__(f"budget {name} exceeded: need {required}, bound {bound}")
        self.name = name
        self.bound = bound
        self.required = required


@dataclass
class SubrepWitness:
    bases: dict[int, np.ndarray]  # vertex -> rref basis rows over F_p
    beta: DimVector
    theta_value: int | None = None


@dataclass
class SemistabilityVerdict:
    semistable: bool
    theta_of_m: int
    witness: SubrepWitness | None
    min_theta: int | None
    budget_used: int
    reason: str | None = None


@dataclass
class StabilityVerdict:
    stable: bool
    semistable: bool
    theta_of_m: int
    witness: SubrepWitness | None
    budget_used: int
    reason: str | None = None


def _all_subspaces(p: int, n: int) -> list[tuple[np.ndarray, tuple[int, ...]]]:
    """Every subspace of F_p^n as (rref basis rows, pivot columns)."""
    out: list[tuple[np.ndarray, tuple[int, ...]]] = [
        (np.zeros((0, n), dtype=np.int64), ())]
    for d in range(1, n + 1):
        for pivots in combinations(range(n), d):
            free_pos = [(i, c) for i in range(d) for c in range(n)
                        if c > pivots[i] and c not in pivots]
            for vals in product(range(p), repeat=len(free_pos)):
                basis = np.zeros((d, n), dtype=np.int64)
                for i, c in enumerate(pivots):
                    basis[i, c] = 1
                for (i, c), v in zip(free_pos, vals):
                    basis[i, c] = v
                out.append((basis, pivots))
    return out


def subspace_count(p: int, n: int) -> int:
    total = 1
    for d in range(1, n + 1):
        num = den = 1
        for t in range(d):
            num *= p**n - p**t
            den *= p**d - p**t
        total += num // den
    return total


def _in_span(vectors: np.ndarray, basis: np.ndarray, pivots: tuple[int, ...], p: int) -> bool:
    """Do all rows of `vectors` lie in the row span of the rref `basis`?"""
    w = vectors % p
    for i, c in enumerate(pivots):
        col = w[:, c].copy()
        if col.any():
            w = (w - np.outer(col, basis[i])) % p
    return not w.any()


def _arrow_stable(m: Representation, subs) -> bool:
    p = m.field.p
    for a in m.quiver.arrows:
        u_src, _ = subs[a.src - 1]
        u_tgt, piv_tgt = subs[a.tgt - 1]
        if u_src.shape[0] == 0:
            continue
        images = (m.matrix(a.id) @ u_src.T).T % p
        if not _in_span(images, u_tgt, piv_tgt, p):
            return False
    return True


def verify_witness(m: Representation, w: SubrepWitness) -> bool:
    """Independent re-check: bases have the stated ranks and are arrow-stable."""
    p = m.field.p
    subs = []
    for i in range(m.quiver.vertex_count):
        basis = w.bases[i + 1] % p
        r_mat, piv = linalg.rref(m.field, basis)
        if len(piv) != w.beta[i] or len(piv) != basis.shape[0]:
            return False
        subs.append((r_mat, tuple(piv)))
    return _arrow_stable(m, subs)


def _require_prime_field(m: Representation) -> PrimeField:
    if not isinstance(m.field, PrimeField):
        raise RepresentationError("the exhaustive oracle needs a representation over F_p")
    return m.field


def enumerate_subreps(m: Representation, budget: int = DEFAULT_BUDGET,
                      jobs: int = 1) -> list[SubrepWitness]:
    """All subrepresentations of m, as per-vertex rref subspace tuples."""
    fld = _require_prime_field(m)
    per_vertex = [_all_subspaces(fld.p, d) for d in m.dim]
    total = 1
    for lst in per_vertex:
        total *= len(lst)
    if total > budget:
        raise BudgetExceededError("subspace_tuples", budget, total)
    chunks = _split_chunks(per_vertex[0], jobs) if len(per_vertex) > 1 else None
    if jobs > 1 and chunks is not None and len(chunks) > 1:
        import concurrent.futures

        args = [(m, chunk, per_vertex[1:]) for chunk in chunks]
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_chunk, args))
        found = [w for part in parts for w in part]
    else:
        found = _scan_chunk((m, per_vertex[0], per_vertex[1:]))
    return found


def _split_chunks(items, jobs):
    if jobs <= 1 or len(items) <= 1:
        return [items]
    size = (len(items) + jobs - 1) // jobs
    return [items[i:i + size] for i in range(0, len(items), size)]


def _scan_chunk(args) -> list[SubrepWitness]:
    m, first, rest = args
    out = []
    for combo in product(first, *rest):
        if _arrow_stable(m, combo):
            beta = tuple(basis.shape[0] for basis, _ in combo)
            bases = {i + 1: basis for i, (basis, _) in enumerate(combo)}
            out.append(SubrepWitness(bases, beta))
    return out


def _witness_key(theta: Weight, w: SubrepWitness):
    return (theta_pairing(theta, w.beta), total_dim(w.beta), w.beta)


def is_semistable(m: Representation, theta: Sequence[int],
                  budget: int = DEFAULT_BUDGET, jobs: int = 1) -> SemistabilityVerdict:
    theta = tuple(int(t) for t in theta)
    theta_m = theta_pairing(theta, m.dim)
    if theta_m != 0:
        return SemistabilityVerdict(False, theta_m, None, None, 0,
                                    reason="theta(M) != 0")
    subreps = enumerate_subreps(m, budget=budget, jobs=jobs)
    best = min(subreps, key=lambda w: _witness_key(theta, w))
    min_theta = theta_pairing(theta, best.beta)
    if min_theta >= 0:
        return SemistabilityVerdict(True, theta_m, None, min_theta, len(subreps))
    best.theta_value = min_theta
    assert verify_witness(m, best)
    return SemistabilityVerdict(False, theta_m, best, min_theta, len(subreps))


def is_stable(m: Representation, theta: Sequence[int],
              budget: int = DEFAULT_BUDGET, jobs: int = 1) -> StabilityVerdict:
    theta = tuple(int(t) for t in theta)
    theta_m = theta_pairing(theta, m.dim)
    if theta_m != 0:
        return StabilityVerdict(False, False, theta_m, None, 0, reason="theta(M) != 0")
    subreps = enumerate_subreps(m, budget=budget, jobs=jobs)
    best = min(subreps, key=lambda w: _witness_key(theta, w))
    min_theta = theta_pairing(theta, best.beta)
    if min_theta < 0:
        best.theta_value = min_theta
        return StabilityVerdict(False, False, theta_m, best, len(subreps),
                                reason="destabilizing subrepresentation")
    zero = tuple(0 for _ in m.dim)
    for w in subreps:
        if w.beta == zero or w.beta == m.dim:
            continue
        if theta_pairing(theta, w.beta) == 0:
            w.theta_value = 0
            return StabilityVerdict(False, True, theta_m, w, len(subreps),
                                    reason="proper subrepresentation with theta = 0")
    return StabilityVerdict(True, True, theta_m, None, len(subreps))


@dataclass
class RationalVerdict:
    verdict: str            # "semistable" | "unstable"
    certainty: str          # "HEURISTIC" | "PROOF"
    theta_of_m: int
    primes_tested: list[int]
    skipped: list[tuple[int, str]] = dc_field(default_factory=list)
    witness_beta: DimVector | None = None
    witness_theta: int | None = None
    witness_prime: int | None = None
    witness_lifted: bool = False


def _reduce_mod(m: Representation, p: int) -> Representation:
    fld = PrimeField(p)
    mats = {}
    for a in m.quiver.arrows:
        src = m.matrix(a.id)
        red = fld.zeros(*src.shape)
        for (i, j), x in np.ndenumerate(src):
            x = Fraction(x)
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"prime {p} divides a denominator")
            red[i, j] = fld.coerce(x)
        mats[a.id] = red
    return representation(m.quiver, fld, m.dim, mats)


def _lift_witness(m: Representation, w: SubrepWitness) -> bool:
    """Does the F_p witness, read as small integers, give an exact Q-subrep?"""
    qq = QQ
    lifted = {}
    for i in range(m.quiver.vertex_count):
        raw = w.bases[i + 1]
        basis = qq.array([[int(x) for x in row] for row in raw]) \
            if raw.size else qq.zeros(*raw.shape)
        if linalg.rank(qq, basis) != w.beta[i]:
            return False
        lifted[i + 1] = basis
    for a in m.quiver.arrows:
        u_src = lifted[a.src]
        u_tgt = lifted[a.tgt]
        if u_src.shape[0] == 0:
            continue
        images = linalg.matmul(qq, m.matrix(a.id), u_src.T).T
        stacked = np.concatenate([u_tgt, images], axis=0)
        if linalg.rank(qq, stacked) != linalg.rank(qq, u_tgt):
            return False
    return True


def check_over_rationals(m: Representation, theta: Sequence[int], primes: Sequence[int],
                         budget: int = DEFAULT_BUDGET, jobs: int = 1) -> RationalVerdict:
    """Reduce a rational representation mod each prime and run the oracle.

    A "semistable" answer is heuristic; "unstable" is a proof exactly when the
    witness subspaces lift to an exact subrepresentation over Q.
    """
    if not isinstance(m.field, Rationals):
        raise RepresentationError("check_over_rationals needs a representation over Q")
    theta = tuple(int(t) for t in theta)
    theta_m = theta_pairing(theta, m.dim)
    if theta_m != 0:
        return RationalVerdict("unstable", "PROOF", theta_m, [],
                               witness_beta=m.dim, witness_theta=theta_m)
    tested: list[int] = []
    skipped: list[tuple[int, str]] = []
    best: RationalVerdict | None = None
    for p in primes:
        try:
            red = _reduce_mod(m, p)
        except ZeroDivisionError as exc:
            skipped.append((p, str(exc)))
            continue
        tested.append(p)
        verdict = is_semistable(red, theta, budget=budget, jobs=jobs)
        if verdict.semistable:
            continue
        w = verdict.witness
        lifted = _lift_witness(m, w)
        out = RationalVerdict("unstable", "PROOF" if lifted else "HEURISTIC",
                              theta_m, tested, skipped, w.beta, w.theta_value, p, lifted)
        if lifted:
            return out
        best = out
    if best is not None:
        best.primes_tested = tested
        best.skipped = skipped
        return best
    return RationalVerdict("semistable", "HEURISTIC", theta_m, tested, skipped)
