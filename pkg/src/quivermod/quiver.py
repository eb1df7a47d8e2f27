"""Quivers, oriented paths, dimension vectors and weights.

Vertices are 1-based everywhere in the public API. A path stores its arrows
in application order (the arrow leaving the source first); the product p*q
means "apply q, then p", so evaluation against a representation satisfies
M(p*q) = M(p) M(q).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class QuiverError(ValueError):
    pass


DimVector = tuple[int, ...]
Weight = tuple[int, ...]


@dataclass(frozen=True)
class Arrow:
    id: str
    src: int
    tgt: int


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[Arrow, ...]
    labels: tuple[str, ...]
    acyclic: bool

    @cached_property
    def arrow_map(self) -> dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    def label(self, vertex: int) -> str:
        return self.labels[vertex - 1]

    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def to_json(self) -> dict:
        return {
            "vertices": self.vertex_count,
            "labels": list(self.labels),
            "arrows": [{"id": a.id, "src": a.src, "tgt": a.tgt} for a in self.arrows],
        }


def _is_acyclic(k: int, arrows: Sequence[Arrow]) -> bool:
    indeg = [0] * (k + 1)
    out: list[list[int]] = [[] for _ in range(k + 1)]
    for a in arrows:
        indeg[a.tgt] += 1
        out[a.src].append(a.tgt)
    queue = [v for v in range(1, k + 1) if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == k


def quiver(vertex_count: int, arrows: Iterable[tuple[str, int, int]],
           labels: Sequence[str] | None = None) -> Quiver:
    if vertex_count < 1:
        raise QuiverError("vertex count must be positive")
    arr = []
    seen_ids = set()
    for aid, src, tgt in arrows:
        aid = str(aid)
        if aid in seen_ids:
            raise QuiverError(f"duplicate arrow id {aid!r}")
        seen_ids.add(aid)
        if not (1 <= src <= vertex_count and 1 <= tgt <= vertex_count):
            raise QuiverError(f"arrow {aid!r}: vertex index out of range")
        arr.append(Arrow(aid, int(src), int(tgt)))
    if labels is None:
        labels = tuple(f"v{i}" for i in range(1, vertex_count + 1))
    else:
        labels = tuple(labels)
        if len(labels) != vertex_count or len(set(labels)) != vertex_count:
            raise QuiverError("labels must be distinct, one per vertex")
    return Quiver(vertex_count, tuple(arr), labels, _is_acyclic(vertex_count, arr))


def validate_quiver(raw) -> Quiver:
    """Build a Quiver from a JSON-style description (or pass one through)."""
    if isinstance(raw, Quiver):
        return raw
    if not isinstance(raw, dict):
        raise QuiverError("quiver description must be a mapping")
    try:
        k = int(raw["vertices"])
        arrows = [(a["id"], int(a["src"]), int(a["tgt"])) for a in raw.get("arrows", [])]
    except (KeyError, TypeError) as exc:
        raise QuiverError(f"malformed quiver description: {exc}") from exc
    return quiver(k, arrows, raw.get("labels"))


@dataclass(frozen=True)
class Path:
    source: int
    target: int
    arrows: tuple[str, ...] = field(default=())

    @property
    def length(self) -> int:
        return len(self.arrows)

    def __str__(self) -> str:
        if not self.arrows:
            return f"e{self.source}"
        return "*".join(reversed(self.arrows))


def trivial_path(vertex: int) -> Path:
    return Path(vertex, vertex)


def compose(p: Path, q: Path) -> Path:
    """The product p*q ("apply q, then p")."""
    if q.target != p.source:
        raise QuiverError(f"paths not composable: {q} ends at {q.target}, {p} starts at {p.source}")
    return Path(q.source, p.target, q.arrows + p.arrows)


def enumerate_paths(q: Quiver, max_len: int | None = None) -> list[Path]:
    """All paths of length <= max_len (all paths when acyclic and unbounded),
    sorted by (length, arrow ids, source)."""
    if max_len is None and not q.acyclic:
        raise QuiverError("cyclic quiver: a length bound is required")
    by_target: dict[int, list[Path]] = {}
    frontier = [trivial_path(v) for v in q.vertices()]
    paths = list(frontier)
    length = 0
    while frontier and (max_len is None or length < max_len):
        nxt = []
        for p in frontier:
            for a in q.arrows:
                if a.src == p.target:
                    nxt.append(Path(p.source, a.tgt, p.arrows + (a.id,)))
        paths.extend(nxt)
        frontier = nxt
        length += 1
    paths.sort(key=lambda p: (p.length, p.arrows, p.source))
    return paths


def paths_between(q: Quiver, source: int, target: int, max_len: int | None = None) -> list[Path]:
    return [p for p in enumerate_paths(q, max_len) if p.source == source and p.target == target]


def _check_length(q: Quiver, v: Sequence[int], what: str) -> tuple[int, ...]:
    v = tuple(int(x) for x in v)
    if len(v) != q.vertex_count:
        raise QuiverError(f"{what} has length {len(v)}, expected {q.vertex_count}")
    return v


def euler_form(q: Quiver, alpha: Sequence[int], beta: Sequence[int]) -> int:
    """<alpha, beta> = sum a_i b_i - sum over arrows i->j of a_i b_j."""
    a = _check_length(q, alpha, "alpha")
    b = _check_length(q, beta, "beta")
    total = sum(x * y for x, y in zip(a, b))
    for arrow in q.arrows:
        total -= a[arrow.src - 1] * b[arrow.tgt - 1]
    return total


def theta_pairing(theta: Sequence[int], alpha: Sequence[int]) -> int:
    if len(theta) != len(alpha):
        raise QuiverError(f"weight length {len(theta)} != dimension vector length {len(alpha)}")
    return sum(int(t) * int(a) for t, a in zip(theta, alpha))


def total_dim(alpha: Sequence[int]) -> int:
    return sum(int(a) for a in alpha)


def _compositions(k: int, n: int):
    """All length-k tuples of nonnegative ints summing to n, lexicographic."""
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(k - 1, n - first):
            yield (first,) + rest


def enumerate_dimvectors(q: Quiver, n: int, theta: Sequence[int]) -> list[DimVector]:
    """All alpha with d(alpha) = n and theta(alpha) = 0, lexicographically."""
    if n < 0:
        raise QuiverError("total dimension must be nonnegative")
    theta = _check_length(q, theta, "theta")
    return [a for a in _compositions(q.vertex_count, n) if theta_pairing(theta, a) == 0]
