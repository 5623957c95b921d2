"""Ice quivers, their mutation, and a few graph utilities."""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from pathlib import Path

Arrow = tuple[str, str]


class ValidationError(ValueError):
    def __init__(self, message: str, vertices: tuple[str, ...] = ()):
        super().__init__(message)
        self.vertices = vertices


class LoopFound(ValidationError):
    pass


class TwoCycleFound(ValidationError):
    pass


class FrozenFrozenArrow(ValidationError):
    pass


class UnknownVertex(KeyError):
    pass


class MutateAtFrozen(ValueError):
    pass


class IceQuiver:
    """A finite quiver with a frozen/exchangeable partition of its vertices.

    ``vertices`` maps each label to its frozen flag (insertion order is kept
    and used for all deterministic output); ``arrows`` maps an ordered pair
    to a positive multiplicity.  Instances are treated as immutable.
    """

    __slots__ = ("_vertices", "_arrows", "_hash")

    def __init__(self, vertices: Mapping[str, bool], arrows: Mapping[Arrow, int] | None = None):
        self._vertices = {str(v): bool(f) for v, f in vertices.items()}
        clean = {}
        for (u, v), m in (arrows or {}).items():
            if m < 0:
                raise ValueError(f"negative multiplicity on {u}->{v}")
            if m:
                clean[(str(u), str(v))] = clean.get((str(u), str(v)), 0) + int(m)
        for u, v in clean:
            for w in (u, v):
                if w not in self._vertices:
                    raise UnknownVertex(w)
        self._arrows = clean
        self._hash = None

    @property
    def vertices(self) -> Mapping[str, bool]:
        return self._vertices

    @property
    def arrows(self) -> Mapping[Arrow, int]:
        return self._arrows

    def is_frozen(self, v: str) -> bool:
        try:
            return self._vertices[v]
        except KeyError:
            raise UnknownVertex(v) from None

    @property
    def exchangeable(self) -> list[str]:
        return [v for v, f in self._vertices.items() if not f]

    @property
    def frozen(self) -> list[str]:
        return [v for v, f in self._vertices.items() if f]

    def mult(self, u: str, v: str) -> int:
        return self._arrows.get((u, v), 0)

    def neighbors(self, v: str) -> set[str]:
        return {b for a, b in self._arrows if a == v} | {a for a, b in self._arrows if b == v}

    def exchange_entry(self, u: str, v: str) -> int:
        """Signed count ``b_uv = #(u->v) - #(v->u)``."""
        return self.mult(u, v) - self.mult(v, u)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IceQuiver):
            return NotImplemented
        return self._vertices == other._vertices and self._arrows == other._arrows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._vertices.items()), frozenset(self._arrows.items())))
        return self._hash

    def __repr__(self) -> str:
        arrows = ", ".join(
            f"{u}->{v}" + (f"^{m}" if m > 1 else "") for (u, v), m in sorted(self._arrows.items())
        )
        return f"IceQuiver(frozen={self.frozen}, exchangeable={self.exchangeable}, arrows=[{arrows}])"

    def subquiver(self, keep: Iterable[str]) -> IceQuiver:
        """Full subquiver on ``keep``, in this quiver's vertex order."""
        keep = set(keep)
        return IceQuiver(
            {v: f for v, f in self._vertices.items() if v in keep},
            {(u, v): m for (u, v), m in self._arrows.items() if u in keep and v in keep},
        )

    def relabel(self, mapping: Mapping[str, str]) -> IceQuiver:
        r = lambda v: mapping.get(v, v)  # noqa: E731
        return IceQuiver(
            {r(v): f for v, f in self._vertices.items()},
            {(r(u), r(v)): m for (u, v), m in self._arrows.items()},
        )

    # serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": v, "frozen": f} for v, f in self._vertices.items()],
            "arrows": [{"from": u, "to": v, "mult": m} for (u, v), m in self._arrows.items()],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> IceQuiver:
        try:
            vertices = {str(d["id"]): bool(d.get("frozen", False)) for d in data["vertices"]}
            if len(vertices) != len(data["vertices"]):
                raise ValidationError("duplicate vertex id")
            arrows: dict[Arrow, int] = {}
            for a in data.get("arrows", []):
                key = (str(a["from"]), str(a["to"]))
                arrows[key] = arrows.get(key, 0) + int(a.get("mult", 1))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed quiver data: {exc!r}") from exc
        q = cls(vertices, arrows)
        validate(q)
        return q


def load_quiver(path: str | Path) -> IceQuiver:
    with open(path, encoding="utf-8") as fh:
        return IceQuiver.from_dict(json.load(fh))


def validate(q: IceQuiver) -> None:
    """Raise a ValidationError subclass naming the first violated invariant."""
    for (u, v), m in sorted(q.arrows.items()):
        if u == v:
            raise LoopFound(f"loop at {u}", (u,))
        if (v, u) in q.arrows:
            raise TwoCycleFound(f"2-cycle between {u} and {v}", (u, v))
        if q.vertices[u] and q.vertices[v]:
            raise FrozenFrozenArrow(f"arrow {u}->{v} joins two frozen vertices", (u, v))


def is_valid(q: IceQuiver) -> bool:
    try:
        validate(q)
    except ValidationError:
        return False
    return True


def _check_mutable(q: IceQuiver, k: str) -> None:
    if k not in q.vertices:
        raise UnknownVertex(k)
    if q.vertices[k]:
        raise MutateAtFrozen(f"vertex {k} is frozen")


def mutate(q: IceQuiver, k: str) -> IceQuiver:
    """Quiver mutation at exchangeable vertex ``k``.

    (a) add one arrow j->l for every path j->k->l; (b) reverse the arrows at
    k; (c) cancel 2-cycles and drop arrows between frozen vertices.
    """
    _check_mutable(q, k)
    incoming = [(j, m) for (j, t), m in q.arrows.items() if t == k]
    outgoing = [(l, m) for (s, l), m in q.arrows.items() if s == k]

    arrows: dict[Arrow, int] = {}
    for (u, v), m in q.arrows.items():
        if u == k or v == k:
            arrows[(v, u)] = m
        else:
            arrows[(u, v)] = m
    for j, mj in incoming:
        for l, ml in outgoing:
            arrows[(j, l)] = arrows.get((j, l), 0) + mj * ml

    out: dict[Arrow, int] = {}
    for (u, v), m in arrows.items():
        if q.vertices[u] and q.vertices[v]:
            continue
        back = arrows.get((v, u), 0)
        if m > back:
            out[(u, v)] = m - back
    return IceQuiver(q.vertices, out)


def exchange_matrix(q: IceQuiver) -> tuple[list[str], list[list[int]]]:
    order = list(q.vertices)
    return order, [[q.exchange_entry(u, v) for v in order] for u in order]


def from_exchange_matrix(order: list[str], frozen: Mapping[str, bool], b: list[list[int]]) -> IceQuiver:
    arrows = {}
    for i, u in enumerate(order):
        for j, v in enumerate(order):
            if b[i][j] > 0:
                arrows[(u, v)] = b[i][j]
    return IceQuiver({v: frozen[v] for v in order}, arrows)


def mutate_by_matrix(q: IceQuiver, k: str) -> IceQuiver:
    """Mutation via the skew-symmetric exchange matrix; used as a cross-check."""
    _check_mutable(q, k)
    order, b = exchange_matrix(q)
    kk = order.index(k)
    n = len(order)
    nb = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if kk in (i, j):
                nb[i][j] = -b[i][j]
            else:
                nb[i][j] = b[i][j] + (abs(b[i][kk]) * b[kk][j] + b[i][kk] * abs(b[kk][j])) // 2
            if q.vertices[order[i]] and q.vertices[order[j]]:
                nb[i][j] = 0
    return from_exchange_matrix(order, q.vertices, nb)


def exchangeable_components(q: IceQuiver) -> list[list[str]]:
    """Connected components of the exchangeable part, each sorted, ordered by least label.

    Arrows through frozen vertices do not connect.
    """
    ex = set(q.exchangeable)
    adj: dict[str, set[str]] = {v: set() for v in ex}
    for u, v in q.arrows:
        if u in ex and v in ex:
            adj[u].add(v)
            adj[v].add(u)
    seen: set[str] = set()
    comps = []
    for start in sorted(ex):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _signature(q: IceQuiver, v: str) -> tuple:
    outs = sorted(m for (a, _), m in q.arrows.items() if a == v)
    ins = sorted(m for (_, b), m in q.arrows.items() if b == v)
    return (q.vertices[v], tuple(outs), tuple(ins))


def find_isomorphism(a: IceQuiver, b: IceQuiver, frozen_by_label: bool = False) -> dict[str, str] | None:
    """Return a vertex bijection ``a -> b`` preserving frozen flags and arrows, or None.

    With ``frozen_by_label`` every frozen vertex must map to the frozen vertex
    of ``b`` carrying the same label; only exchangeable vertices are searched.
    """
    if len(a.vertices) != len(b.vertices) or len(a.arrows) != len(b.arrows):
        return None
    if sorted(a.arrows.values()) != sorted(b.arrows.values()):
        return None
    sig_a = {v: _signature(a, v) for v in a.vertices}
    sig_b = {v: _signature(b, v) for v in b.vertices}
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return None

    mapping: dict[str, str] = {}
    if frozen_by_label:
        if set(a.frozen) != set(b.frozen):
            return None
        for v in a.frozen:
            if sig_a[v] != sig_b[v]:
                return None
            mapping[v] = v

    def consistent(u: str, w: str) -> bool:
        for x, y in mapping.items():
            if a.mult(u, x) != b.mult(w, y) or a.mult(x, u) != b.mult(y, w):
                return False
        return True

    for v in list(mapping):
        if not consistent(v, v):
            return None

    # most constrained first: vertices with many neighbours
    todo = sorted((v for v in a.vertices if v not in mapping), key=lambda v: (-len(a.neighbors(v)), v))
    used = set(mapping.values())

    def search(i: int) -> bool:
        if i == len(todo):
            return True
        u = todo[i]
        for w in b.vertices:
            if w in used or sig_a[u] != sig_b[w] or not consistent(u, w):
                continue
            mapping[u] = w
            used.add(w)
            if search(i + 1):
                return True
            del mapping[u]
            used.discard(w)
        return False

    return dict(mapping) if search(0) else None


def all_isomorphisms(a: IceQuiver, b: IceQuiver, frozen_by_label: bool = False) -> list[dict[str, str]]:
    """Every isomorphism ``a -> b``; small quivers only."""
    first = find_isomorphism(a, b, frozen_by_label)
    if first is None:
        return []
    fixed = {v: v for v in a.frozen} if frozen_by_label else {}
    free_a = [v for v in a.vertices if v not in fixed]
    found = []

    def extend(mapping: dict[str, str], i: int) -> None:
        if i == len(free_a):
            found.append(dict(mapping))
            return
        u = free_a[i]
        used = set(mapping.values())
        for w in b.vertices:
            if w in used or a.vertices[u] != b.vertices[w]:
                continue
            if all(a.mult(u, x) == b.mult(w, y) and a.mult(x, u) == b.mult(y, w) for x, y in mapping.items()):
                if a.mult(u, u) == b.mult(w, w):
                    mapping[u] = w
                    extend(mapping, i + 1)
                    del mapping[u]

    extend(dict(fixed), 0)
    return found
