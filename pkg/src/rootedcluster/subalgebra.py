"""Freezing, decomposition and gluing of seeds; complete pairs of rooted cluster subalgebras.

Freezing a seed at a set of exchangeable vertices splits its exchangeable
part into connected components.  A complete pair is obtained by distributing
those components between two members, each member keeping every frozen
vertex.  With ``n`` components there are exactly ``2**n`` such pairs.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .quiver import IceQuiver, exchangeable_components
from .seed import Seed


class NotExchangeable(ValueError):
    pass


class ExchangeableOverlap(ValueError):
    pass


@dataclass(frozen=True)
class FrozenSeed:
    seed: Seed
    newly_frozen: frozenset[str]
    isolated_frozen: frozenset[str]
    original_exchangeable: frozenset[str]
    original_frozen: frozenset[str]


@dataclass(frozen=True)
class SeedComponent:
    exchangeable: frozenset[str]
    attached_frozen: frozenset[str]
    seed: Seed

    @property
    def quiver(self) -> IceQuiver:
        return self.seed.quiver


@dataclass(frozen=True)
class CompletePair:
    first: Seed
    second: Seed
    coefficient_set: frozenset[str]
    components_first: tuple[int, ...]
    components_second: tuple[int, ...]

    def swapped(self) -> CompletePair:
        return CompletePair(self.second, self.first, self.coefficient_set,
                            self.components_second, self.components_first)


def freeze(s: Seed, exprime: Iterable[str]) -> FrozenSeed:
    """Freeze the vertices in ``exprime`` and drop every frozen-frozen arrow."""
    exprime = frozenset(exprime)
    for v in sorted(exprime):
        if v not in s.quiver.vertices or s.quiver.vertices[v]:
            raise NotExchangeable(f"{v!r} is not an exchangeable vertex")
    flags = {v: f or v in exprime for v, f in s.quiver.vertices.items()}
    arrows = {(u, v): m for (u, v), m in s.quiver.arrows.items() if not (flags[u] and flags[v])}
    q = IceQuiver(flags, arrows)
    touched = {u for u, _ in arrows} | {v for _, v in arrows}
    isolated = frozenset(v for v in q.frozen if v not in touched)
    return FrozenSeed(
        seed=s.with_quiver(q),
        newly_frozen=exprime,
        isolated_frozen=isolated,
        original_exchangeable=frozenset(s.exchangeable),
        original_frozen=frozenset(s.frozen),
    )


def components(fs: FrozenSeed) -> list[SeedComponent]:
    """One component per connected piece of the exchangeable part, ordered by least label.

    A component keeps the frozen vertices joined directly to its
    exchangeable vertices.
    """
    q = fs.seed.quiver
    out = []
    for comp in exchangeable_components(q):
        ex = frozenset(comp)
        attached = frozenset(w for v in comp for w in q.neighbors(v) if q.vertices[w])
        out.append(SeedComponent(ex, attached, fs.seed.with_quiver(q.subquiver(ex | attached))))
    return out


def glue(parts: Sequence[SeedComponent], shared_frozen: Iterable[str], ambient: Seed) -> Seed:
    """Glue components along identically labelled frozen vertices.

    ``shared_frozen`` vertices are always present, even if isolated; their
    variables (and the vertex order of the result) come from ``ambient``.
    """
    seen: set[str] = set()
    for p in parts:
        if seen & p.exchangeable:
            raise ExchangeableOverlap(f"components share {sorted(seen & p.exchangeable)}")
        seen |= p.exchangeable
    keep = set(shared_frozen) | seen
    flags: dict[str, bool] = {}
    arrows: dict[tuple[str, str], int] = {}
    for p in parts:
        for v, f in p.quiver.vertices.items():
            flags[v] = flags.get(v, False) or f
            keep.add(v)
        for key, m in p.quiver.arrows.items():
            arrows[key] = max(arrows.get(key, 0), m)
    for v in shared_frozen:
        flags[v] = True
    order = [v for v in ambient.quiver.vertices if v in keep]
    order += sorted(keep - set(order))
    q = IceQuiver({v: flags[v] for v in order}, arrows)
    vars_ = {}
    for v in order:
        src = next((p.seed for p in parts if v in p.quiver.vertices), ambient)
        vars_[v] = src.vars[v]
    return Seed(q, vars_, ambient.initial_names)


def complete_pair_violations(pair: CompletePair, fs: FrozenSeed, comps: Sequence[SeedComponent]) -> list[str]:
    """Structural check of the three defining conditions; empty list means valid."""
    problems = []
    all_frozen = frozenset(fs.seed.frozen)
    for name, member, idx in (("first", pair.first, pair.components_first),
                              ("second", pair.second, pair.components_second)):
        expected = glue([comps[i] for i in idx], all_frozen, fs.seed)
        if member.quiver != expected.quiver or dict(member.vars) != dict(expected.vars):
            problems.append(f"(1) {name} is not the gluing of components {list(idx)}")
        for i in idx:
            if len(exchangeable_components(comps[i].quiver)) != 1:
                problems.append(f"(1) component {i} is not indecomposable")
    ex1, ex2 = set(pair.first.exchangeable), set(pair.second.exchangeable)
    if ex1 & ex2:
        problems.append(f"(2) exchangeable overlap {sorted(ex1 & ex2)}")
    if ex1 | ex2 | fs.newly_frozen != fs.original_exchangeable or ex1 & fs.newly_frozen or ex2 & fs.newly_frozen:
        problems.append("(2) exchangeable sets do not partition ex minus ex'")
    need = fs.original_frozen | fs.isolated_frozen
    if not need <= set(pair.first.frozen) & set(pair.second.frozen):
        problems.append("(3) coefficients missing from a member")
    return problems


def enumerate_complete_pairs(s: Seed, exprime: Iterable[str] = ()) -> list[CompletePair]:
    """All ``2**n`` complete pairs with coefficient set ``fx | exprime``.

    Pair ``L`` (a subset of component indices, in binary counting order)
    puts the components in ``L`` into the first member and the rest into
    the second.  Every pair is checked against the defining conditions.
    """
    fs = freeze(s, exprime)
    comps = components(fs)
    n = len(comps)
    frozen = frozenset(fs.seed.frozen)
    coeff = fs.original_frozen | fs.newly_frozen
    pairs = []
    for mask in range(2**n):
        left = tuple(i for i in range(n) if mask >> i & 1)
        right = tuple(i for i in range(n) if not mask >> i & 1)
        pair = CompletePair(
            glue([comps[i] for i in left], frozen, fs.seed),
            glue([comps[i] for i in right], frozen, fs.seed),
            coeff,
            left,
            right,
        )
        problems = complete_pair_violations(pair, fs, comps)
        if problems:
            raise AssertionError(f"pair {left}/{right} is not complete: {problems}")
        pairs.append(pair)
    return pairs


def count_complete_pairs(s: Seed, exprime: Iterable[str] = ()) -> int:
    return 2 ** len(components(freeze(s, exprime)))


def pairs_report(s: Seed, exprime: Iterable[str] = ()) -> dict:
    exprime = frozenset(exprime)
    comps = components(freeze(s, exprime))
    pairs = enumerate_complete_pairs(s, exprime)

    def member(seed: Seed, idx: tuple[int, ...]) -> dict:
        return {"components": list(idx), "exchangeable": sorted(seed.exchangeable)}

    return {
        "count": len(pairs),
        "coefficient_set": sorted(pairs[0].coefficient_set) if pairs else [],
        "components": [sorted(c.exchangeable) for c in comps],
        "pairs": [
            {"first": member(p.first, p.components_first), "second": member(p.second, p.components_second)}
            for p in pairs
        ],
    }
