"""Dimension-vector level algorithms: generic Ext via the Schofield
recursion, nonemptiness of the (semi)stable loci, moduli dimensions and the
local-quiver data at semisimple points.

The recursion used is ext(alpha, beta) = max over generic subvectors
beta' of beta of -<alpha, beta - beta'>, where beta' is a generic subvector
iff ext(beta', beta - beta') = 0. The maximum runs over generic *quotients*
of the second argument; cross-checked against finite-field sampling.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from . import linalg
from .fields import PrimeField, Rationals
from .quiver import (DimVector, Quiver, QuiverError, euler_form, theta_pairing,
                     total_dim)
from .rep import Representation, RepresentationError, ext_space, hom_space
from .stability import DEFAULT_BUDGET, is_stable


class CyclicQuiverError(QuiverError):
    pass


def _check_acyclic(q: Quiver):
    if not q.acyclic:
        raise CyclicQuiverError("moduli operations require an acyclic quiver")


def _check_dimvec(q: Quiver, alpha: Sequence[int]) -> DimVector:
    a = tuple(int(x) for x in alpha)
    if len(a) != q.vertex_count:
        raise QuiverError("dimension vector length mismatch")
    if any(x < 0 for x in a):
        raise QuiverError("dimension vector entries must be nonnegative")
    return a


class GenericExtTable:
    """Memoized generic Ext^1 dimensions for one acyclic quiver."""

    def __init__(self, quiver: Quiver):
        _check_acyclic(quiver)
        self.quiver = quiver
        self._memo: dict[tuple[DimVector, DimVector], int] = {}
        self._in_progress: set[tuple[DimVector, DimVector]] = set()

    def ext(self, alpha: Sequence[int], beta: Sequence[int]) -> int:
        alpha = _check_dimvec(self.quiver, alpha)
        beta = _check_dimvec(self.quiver, beta)
        if total_dim(alpha) == 0 or total_dim(beta) == 0:
            return 0
        key = (alpha, beta)
        if key in self._memo:
            return self._memo[key]
        if key in self._in_progress:
            raise RuntimeError(f"generic ext recursion cycled at {key}")
        self._in_progress.add(key)
        try:
            best = 0
            for sub in self.generic_subdimvectors(beta):
                quotient = tuple(b - s for b, s in zip(beta, sub))
                best = max(best, -euler_form(self.quiver, alpha, quotient))
        finally:
            self._in_progress.discard(key)
        self._memo[key] = best
        return best

    def generic_subdimvectors(self, alpha: Sequence[int]) -> list[DimVector]:
        """All beta <= alpha such that every general representation of
        dimension alpha contains a subrepresentation of dimension beta."""
        alpha = _check_dimvec(self.quiver, alpha)
        out = []
        for beta in product(*(range(a + 1) for a in alpha)):
            quotient = tuple(a - b for a, b in zip(alpha, beta))
            if self.ext(beta, quotient) == 0:
                out.append(beta)
        return sorted(out)


def generic_ext(q: Quiver, alpha: Sequence[int], beta: Sequence[int],
                table: GenericExtTable | None = None) -> int:
    table = table if table is not None else GenericExtTable(q)
    return table.ext(alpha, beta)


def generic_subdimvectors(q: Quiver, alpha: Sequence[int],
                          table: GenericExtTable | None = None) -> list[DimVector]:
    table = table if table is not None else GenericExtTable(q)
    return table.generic_subdimvectors(alpha)


def semistable_nonempty(q: Quiver, alpha: Sequence[int], theta: Sequence[int],
                        table: GenericExtTable | None = None) -> bool:
    """Does a theta-semistable representation of dimension alpha exist generically?"""
    _check_acyclic(q)
    alpha = _check_dimvec(q, alpha)
    if theta_pairing(theta, alpha) != 0:
        return False
    table = table if table is not None else GenericExtTable(q)
    return all(theta_pairing(theta, beta) >= 0
               for beta in table.generic_subdimvectors(alpha))


def stable_nonempty(q: Quiver, alpha: Sequence[int], theta: Sequence[int],
                    table: GenericExtTable | None = None) -> bool:
    _check_acyclic(q)
    alpha = _check_dimvec(q, alpha)
    if total_dim(alpha) == 0:
        raise QuiverError("stable_nonempty needs a nonzero dimension vector")
    if theta_pairing(theta, alpha) != 0:
        return False
    table = table if table is not None else GenericExtTable(q)
    zero = tuple(0 for _ in alpha)
    for beta in table.generic_subdimvectors(alpha):
        if beta in (zero, alpha):
            continue
        if theta_pairing(theta, beta) <= 0:
            return False
    return True


def moduli_dimension(q: Quiver, alpha: Sequence[int], theta: Sequence[int],
                     table: GenericExtTable | None = None) -> int | None:
    """1 - <alpha, alpha> when the stable locus is nonempty, else None."""
    alpha = _check_dimvec(q, alpha)
    if not stable_nonempty(q, alpha, theta, table=table):
        return None
    return 1 - euler_form(q, alpha, alpha)


@dataclass(frozen=True)
class LocalQuiverData:
    """Etale-local model at a semisimple point: l stable summand classes,
    Ext^1 dimensions as arrow counts, and the multiplicity vector."""
    arrow_counts: tuple[tuple[int, ...], ...]
    multiplicities: tuple[int, ...]
    dim_vectors: tuple[DimVector, ...]
    verified: bool

    @property
    def num_classes(self) -> int:
        return len(self.multiplicities)

    def to_json(self) -> dict:
        return {
            "vertices": self.num_classes,
            "arrows": [{"id": f"c.{i + 1}.{j + 1}.{t + 1}", "src": i + 1, "tgt": j + 1}
                       for i in range(self.num_classes)
                       for j in range(self.num_classes)
                       for t in range(self.arrow_counts[i][j])],
            "beta_y": list(self.multiplicities),
            "summand_dims": [list(a) for a in self.dim_vectors],
            "verified": self.verified,
        }


class NotStableError(ValueError):
    pass


def local_quiver(stables: Sequence[tuple[Representation, int]], theta: Sequence[int],
                 *, assert_stable: bool = False, budget: int = DEFAULT_BUDGET,
                 jobs: int = 1) -> LocalQuiverData:
    """Local quiver data at the semisimple point sum of M_i with multiplicity e_i.

    Summands over F_p are verified theta-stable by the exhaustive oracle unless
    `assert_stable` is set (required for rational summands); the result is then
    flagged unverified.
    """
    if not stables:
        raise NotStableError("at least one stable summand is required")
    reps = [r for r, _ in stables]
    mults = [int(e) for _, e in stables]
    if any(e < 1 for e in mults):
        raise NotStableError("multiplicities must be >= 1")
    verified = True
    for r in reps:
        if assert_stable:
            verified = False
            continue
        if isinstance(r.field, Rationals):
            raise NotStableError(
                "rational summands cannot be oracle-verified; pass assert_stable=True")
        v = is_stable(r, theta, budget=budget, jobs=jobs)
        if not v.stable:
            raise NotStableError(f"summand of dimension {r.dim} is not theta-stable")
    l = len(reps)
    for i in range(l):
        for j in range(l):
            h = hom_space(reps[i], reps[j]).dim
            if h != (1 if i == j else 0):
                raise NotStableError(
                    f"hom(M_{i + 1}, M_{j + 1}) = {h}: summands are not stable "
                    "and pairwise non-isomorphic")
    counts = tuple(tuple(ext_space(reps[i], reps[j]).dim for j in range(l))
                   for i in range(l))
    return LocalQuiverData(counts, tuple(mults), tuple(r.dim for r in reps), verified)


def local_model_dimension(data: LocalQuiverData) -> int:
    """Dimension of the local model: sum a_ij e_i e_j - sum e_i^2 + 1."""
    if data.num_classes == 0:
        raise ValueError("empty local quiver data")
    e = data.multiplicities
    total = sum(data.arrow_counts[i][j] * e[i] * e[j]
                for i in range(len(e)) for j in range(len(e)))
    return total - sum(x * x for x in e) + 1
