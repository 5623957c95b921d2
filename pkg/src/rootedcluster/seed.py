"""Seeds of a skew-symmetric cluster algebra and their mutation."""

from __future__ import annotations

import itertools
import json
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

from . import laurent
from .laurent import LaurentPoly, NotDivisible
from .quiver import IceQuiver, MutateAtFrozen, UnknownVertex, ValidationError, validate
from .quiver import mutate as quiver_mutate


class LaurentViolation(ArithmeticError):
    """An exchange-relation division failed; only possible for a bad seed or a bug."""


class NotAdmissible(ValueError):
    def __init__(self, step: int, vertex: str, reason: str = "not exchangeable"):
        super().__init__(f"step {step}: vertex {vertex!r} {reason}")
        self.step = step
        self.vertex = vertex


@dataclass(frozen=True, eq=False)
class Seed:
    """An ice quiver with a cluster variable attached to every vertex.

    ``vars`` are Laurent polynomials in the ``nvars`` initial indeterminates;
    ``initial_names[i]`` names ``x_i``.
    """

    quiver: IceQuiver
    vars: Mapping[str, LaurentPoly]
    initial_names: tuple[str, ...]

    def __post_init__(self):
        if set(self.vars) != set(self.quiver.vertices):
            raise ValueError("cluster variables must cover exactly the quiver's vertices")
        n = len(self.initial_names)
        for v, p in self.vars.items():
            if p.nvars != n:
                raise laurent.ContextMismatch(f"variable at {v} lives in a context of {p.nvars} variables")

    @property
    def nvars(self) -> int:
        return len(self.initial_names)

    @property
    def exchangeable(self) -> list[str]:
        return self.quiver.exchangeable

    @property
    def frozen(self) -> list[str]:
        return self.quiver.frozen

    def cluster(self) -> frozenset[LaurentPoly]:
        return frozenset(self.vars.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Seed):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and dict(self.vars) == dict(other.vars)
            and self.initial_names == other.initial_names
        )

    def __hash__(self) -> int:
        return hash((self.quiver, frozenset(self.vars.items())))

    def with_quiver(self, quiver: IceQuiver) -> Seed:
        return Seed(quiver, {v: self.vars[v] for v in quiver.vertices}, self.initial_names)

    def relabel(self, mapping: Mapping[str, str]) -> Seed:
        return Seed(
            self.quiver.relabel(mapping),
            {mapping.get(v, v): p for v, p in self.vars.items()},
            self.initial_names,
        )

    def to_dict(self) -> dict:
        d = self.quiver.to_dict()
        d["vars"] = {v: laurent.to_string(p) for v, p in self.vars.items()}
        return d


def initial_seed(quiver: IceQuiver) -> Seed:
    """Attach a fresh indeterminate ``x_i`` to the i-th vertex."""
    try:
        validate(quiver)
    except ValidationError as exc:
        raise ValidationError(f"invalid quiver: {exc}", exc.vertices) from exc
    names = tuple(quiver.vertices)
    n = len(names)
    return Seed(quiver, {v: LaurentPoly.gen(i, n) for i, v in enumerate(names)}, names)


def seed_from_dict(data: Mapping) -> Seed:
    q = IceQuiver.from_dict(data)
    s = initial_seed(q)
    if "vars" not in data:
        return s
    vars_ = dict(s.vars)
    for v, text in data["vars"].items():
        if v not in vars_:
            raise ValidationError(f"vars entry for unknown vertex {v!r}")
        vars_[v] = laurent.parse(text, s.nvars)
    return Seed(q, vars_, s.initial_names)


def load_seed(path: str | Path) -> Seed:
    with open(path, encoding="utf-8") as fh:
        return seed_from_dict(json.load(fh))


def exchange_monomials(s: Seed, k: str) -> tuple[LaurentPoly, LaurentPoly]:
    """``(M+, M-)``: products over arrows leaving and entering ``k``."""
    plus = LaurentPoly.one(s.nvars)
    minus = LaurentPoly.one(s.nvars)
    for (u, v), m in s.quiver.arrows.items():
        if u == k:
            plus = plus * s.vars[v] ** m
        elif v == k:
            minus = minus * s.vars[u] ** m
    return plus, minus


def mutate(s: Seed, k: str, check: bool = True) -> Seed:
    """Seed mutation at ``k``.

    The new variable is ``(M+ + M-) / x_k``.  With ``check`` the exchange
    identity ``x_k * x_k' == M+ + M-`` is re-verified by multiplication.
    """
    if k not in s.quiver.vertices:
        raise UnknownVertex(k)
    if s.quiver.vertices[k]:
        raise MutateAtFrozen(f"vertex {k} is frozen")
    plus, minus = exchange_monomials(s, k)
    rhs = plus + minus
    old = s.vars[k]
    try:
        new = laurent.exact_div(rhs, old)
    except NotDivisible as exc:
        raise LaurentViolation(f"exchange at {k} is not Laurent: {exc}") from exc
    if check and old * new != rhs:
        raise LaurentViolation(f"exchange identity fails at {k}")
    vars_ = dict(s.vars)
    vars_[k] = new
    return Seed(quiver_mutate(s.quiver, k), vars_, s.initial_names)


def apply_sequence(s: Seed, seq: Sequence[str], return_path: bool = False):
    """Fold ``mutate`` over ``seq``; optionally also return every intermediate seed."""
    path = [s]
    cur = s
    for i, k in enumerate(seq):
        if k not in cur.quiver.vertices:
            raise NotAdmissible(i, k, "is not a vertex")
        if cur.quiver.vertices[k]:
            raise NotAdmissible(i, k, "is frozen")
        cur = mutate(cur, k)
        path.append(cur)
    return (cur, path) if return_path else cur


def is_admissible(s: Seed, seq: Sequence[str]) -> bool:
    # exchangeability never changes under mutation, so no replay is needed
    return all(k in s.quiver.vertices and not s.quiver.vertices[k] for k in seq)


# rooted cluster morphisms -------------------------------------------------


@dataclass(frozen=True)
class Violation:
    condition: str
    vertex: str | None = None
    sequence: tuple[str, ...] = ()
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "vertex": self.vertex,
            "sequence": list(self.sequence),
            "detail": self.detail,
        }


def _substitution_images(sub: Seed, sup: Seed, var_map: Mapping[str, str | int]) -> dict[int, LaurentPoly]:
    """Images of ``sub``'s indeterminates under the map determined by ``var_map``."""
    images: dict[int, LaurentPoly] = {}
    for v, p in sub.vars.items():
        target = var_map[v]
        img = LaurentPoly.const(target, sup.nvars) if isinstance(target, int) else sup.vars[target]
        if p.is_monomial():
            (mono, c), = p.terms.items()
            nz = [i for i, e in enumerate(mono) if e]
            if c == 1 and len(nz) == 1 and mono[nz[0]] == 1:
                images[nz[0]] = img
                continue
        break
    else:
        return images
    # sub's cluster is not the indeterminates: f must be the identity on a shared ring
    if sub.nvars == sup.nvars and all(
        not isinstance(var_map[v], int) and sup.vars[var_map[v]] == p for v, p in sub.vars.items()
    ):
        return {i: LaurentPoly.gen(i, sup.nvars) for i in range(sup.nvars)}
    raise ValueError("cannot determine the ring map: sub's cluster must be its indeterminates "
                     "or coincide with super's cluster")


def verify_inclusion_morphism(
    sub: Seed,
    sup: Seed,
    var_map: Mapping[str, str | int] | None = None,
    depth: int = 3,
) -> Violation | None:
    """Check the rooted cluster morphism conditions for ``var_map: sub -> sup``.

    Conditions on exchangeable and frozen images are checked exactly; the
    compatibility with mutation is checked for every biadmissible sequence
    of length at most ``depth``.  Returns the first violation, or None.
    """
    if var_map is None:
        var_map = {v: v for v in sub.quiver.vertices}
    for v in sub.quiver.vertices:
        if v not in var_map:
            return Violation("domain", v, detail="vertex missing from var_map")
        t = var_map[v]
        if not isinstance(t, int) and t not in sup.quiver.vertices:
            return Violation("domain", v, detail=f"image {t!r} is not a vertex of the target")
    for v in sub.exchangeable:
        t = var_map[v]
        if not isinstance(t, int) and sup.quiver.vertices[t]:
            return Violation("a", v, detail=f"exchangeable {v} sent to frozen {t}")
    # (b) holds by construction: images are target cluster variables or integers

    images = _substitution_images(sub, sup, var_map)
    movable = [v for v in sub.exchangeable if not isinstance(var_map[v], int)]

    def image_of(p: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        return laurent.substitute(p, images, sup.nvars)

    def compare(seq: tuple[str, ...], s1: Seed, s2: Seed) -> Violation | None:
        for y in sub.quiver.vertices:
            t = var_map[y]
            rhs = LaurentPoly.const(t, sup.nvars) if isinstance(t, int) else s2.vars[t]
            num, den = image_of(s1.vars[y])
            if num != rhs * den:
                return Violation("c", y, seq, f"f(mu(y)) = ({num})/({den}) but mu(f(y)) = {rhs}")
        return None

    def walk(seq: tuple[str, ...], s1: Seed, s2: Seed) -> Violation | None:
        bad = compare(seq, s1, s2)
        if bad or len(seq) == depth:
            return bad
        for v in movable:
            bad = walk(seq + (v,), mutate(s1, v), mutate(s2, var_map[v]))
            if bad:
                return bad
        return None

    return walk((), sub, sup)


def biadmissible_sequences(sub: Seed, sup: Seed, var_map: Mapping[str, str | int], depth: int) -> Iterable[tuple[str, ...]]:
    """All biadmissible sequences up to ``depth``, in the order the verifier visits them."""
    movable = [
        v for v in sub.exchangeable
        if not isinstance(var_map[v], int) and not sup.quiver.vertices[var_map[v]]
    ]
    for n in range(depth + 1):
        yield from itertools.product(movable, repeat=n)
