"""Plücker coordinates and the G(3,7) case study.

The Figure-style datasets shipped in ``data/`` are the initial quiver, the
E6-shaped standard quiver reached after seven mutations, and the three
subquivers obtained by freezing its branch vertex.  ``run_case_study``
replays the whole example and records the outcome of each stage.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import laurent
from .quiver import IceQuiver, exchangeable_components, find_isomorphism, load_quiver, validate
from .rng import SplitMix64
from .seed import Seed, apply_sequence, exchange_monomials, initial_seed
from .seed import mutate as seed_mutate
from .subalgebra import components, enumerate_complete_pairs, freeze, glue

Matrix = list[list[Fraction]]

MUTATION_SEQUENCE = ("147", "347", "137", "134", "467", "134", "457")
PLUCKER_EXCHANGEABLE = ("126", "135", "235", "367")
FROZEN_LABELS = ("123", "234", "345", "456", "567", "671", "712")
X_PRIME, X_DOUBLE_PRIME = "x'", "x''"
DATA_FILES = ("g37_initial.json", "g37_standard.json", "g37_sub1.json", "g37_sub2.json", "g37_sub3.json")
ALL_LABELS = tuple("".join(map(str, c)) for c in itertools.combinations(range(1, 8), 3))


def parse_label(label: str) -> tuple[int, int, int]:
    """``"671"`` -> ``(1, 6, 7)``; digits in any order, values in 1..7."""
    cols = tuple(sorted(int(ch) for ch in label))
    if len(cols) != 3 or len(set(cols)) != 3 or not all(1 <= c <= 7 for c in cols):
        raise ValueError(f"not a 3-subset of 1..7: {label!r}")
    return cols


def det3(m: Sequence[Sequence[Fraction]]) -> Fraction:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def plucker(matrix: Matrix, label: str | Sequence[int]) -> Fraction:
    """Maximal minor of a 3x7 matrix on the (1-based) columns of ``label``."""
    cols = parse_label(label) if isinstance(label, str) else tuple(label)
    return det3([[Fraction(row[c - 1]) for c in cols] for row in matrix])


def random_generic_matrix(rng_seed: int) -> Matrix:
    return random_generic_matrices(rng_seed, 1)[0]


def random_generic_matrices(rng_seed: int, count: int) -> list[Matrix]:
    """``count`` reproducible 3x7 rational matrices with all 35 minors nonzero."""
    rng = SplitMix64(rng_seed)
    out = []
    while len(out) < count:
        m = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(7)] for _ in range(3)]
        if all(plucker(m, a) for a in ALL_LABELS):
            out.append(m)
    return out


@dataclass
class G37Dataset:
    initial_quiver: IceQuiver
    standard_quiver: IceQuiver
    subquivers: tuple[IceQuiver, IceQuiver, IceQuiver]
    mutation_sequence: tuple[str, ...] = MUTATION_SEQUENCE


def load_dataset(data_dir: str | Path | None = None) -> G37Dataset:
    """Load the golden quivers, from ``data_dir`` or the packaged copies."""
    if data_dir is None:
        base = resources.files("rootedcluster") / "data"
        qs = [IceQuiver.from_dict(json.loads((base / f).read_text(encoding="utf-8"))) for f in DATA_FILES]
    else:
        qs = [load_quiver(Path(data_dir) / f) for f in DATA_FILES]
    return G37Dataset(qs[0], qs[1], (qs[2], qs[3], qs[4]))


def is_bipartite_exchangeable(q: IceQuiver) -> bool:
    """Every exchangeable vertex is a source or a sink of the exchangeable part."""
    ex = set(q.exchangeable)
    for v in ex:
        outs = any(a == v and b in ex for a, b in q.arrows)
        ins = any(b == v and a in ex for a, b in q.arrows)
        if outs and ins:
            return False
    return True


def plucker_point(s: Seed, matrix: Matrix) -> dict[int, Fraction]:
    """Value of each initial indeterminate: ``x_A -> Plücker coordinate A``."""
    return {i: plucker(matrix, name) for i, name in enumerate(s.initial_names)}


class CaseStudyFailure(RuntimeError):
    def __init__(self, stage: str, report: CaseStudyReport, message: str):
        super().__init__(f"stage {stage} failed: {message}")
        self.stage = stage
        self.report = report


@dataclass
class CaseStudyReport:
    rng_seed: int
    stages: dict[str, bool] = field(default_factory=dict)
    slot_labels: dict[str, str] = field(default_factory=dict)
    isomorphism: dict[str, str] = field(default_factory=dict)
    component_figures: list[str] = field(default_factory=list)
    pairs: int | None = None
    failed_stage: str | None = None
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.failed_stage is None and all(self.stages.values())

    def to_dict(self) -> dict:
        return {
            "rng_seed": self.rng_seed,
            "ok": self.ok,
            "failed_stage": self.failed_stage,
            "message": self.message,
            "stages": self.stages,
            "slot_labels": self.slot_labels,
            "isomorphism": self.isomorphism,
            "component_figures": self.component_figures,
            "pairs": self.pairs,
        }


def match_slots(final: Seed, matrices: Sequence[Matrix]) -> dict[str, str]:
    """Match exchangeable slots to Plücker labels by exact evaluation.

    A slot gets a label only if its value equals that minor for every
    matrix.  Unmatched slots are returned without an entry.
    """
    found: dict[str, str] = {}
    for v in final.exchangeable:
        candidates = set(PLUCKER_EXCHANGEABLE)
        for m in matrices:
            val = laurent.evaluate(final.vars[v], plucker_point(final, m))
            candidates = {a for a in candidates if plucker(m, a) == val}
        if len(candidates) == 1:
            found[v] = candidates.pop()
    return found


def run_case_study(rng_seed: int = 0, dataset: G37Dataset | None = None, n_matrices: int = 3) -> CaseStudyReport:
    """Replay the G(3,7) example; raise CaseStudyFailure at the first failing stage."""
    report = CaseStudyReport(rng_seed)
    ds = dataset or load_dataset()

    def fail(stage: str, msg: str):
        report.stages[stage] = False
        report.failed_stage = stage
        report.message = msg
        raise CaseStudyFailure(stage, report, msg)

    # (i) initial seed
    try:
        validate(ds.initial_quiver)
        start = initial_seed(ds.initial_quiver)
    except ValueError as exc:
        fail("i_initial_seed", str(exc))
    if len(start.exchangeable) != 6 or len(start.frozen) != 7:
        fail("i_initial_seed", "expected 6 exchangeable and 7 frozen vertices")
    report.stages["i_initial_seed"] = True

    # (ii) mutation sequence
    try:
        final = apply_sequence(start, ds.mutation_sequence)
    except (ValueError, ArithmeticError) as exc:
        fail("ii_mutation", str(exc))
    report.stages["ii_mutation"] = True

    # (iii) compare with the standard quiver
    iso = find_isomorphism(final.quiver, ds.standard_quiver, frozen_by_label=True)
    if iso is None:
        fail("iii_isomorphism", "mutated quiver is not isomorphic to the standard quiver")
    if not is_bipartite_exchangeable(final.quiver) or len(exchangeable_components(final.quiver)) != 1:
        fail("iii_isomorphism", "exchangeable part is not a connected bipartite quiver")
    report.isomorphism = {v: iso[v] for v in final.exchangeable}
    report.stages["iii_isomorphism"] = True

    # (iv) Plücker evaluation
    matrices = random_generic_matrices(rng_seed, n_matrices)
    labels = match_slots(final, matrices)
    if sorted(labels.values()) != sorted(PLUCKER_EXCHANGEABLE):
        fail("iv_plucker", f"matched {labels}, expected one slot per {PLUCKER_EXCHANGEABLE}")
    rest = [v for v in final.exchangeable if v not in labels]
    ex = set(final.exchangeable)
    # the exceptional variable at the E6 branch point is x''
    branch = [v for v in rest if len(final.quiver.neighbors(v) & ex) == 3]
    if len(rest) != 2 or len(branch) != 1:
        fail("iv_plucker", f"cannot tell x' from x'' among {rest}")
    labels[branch[0]] = X_DOUBLE_PRIME
    labels[next(v for v in rest if v != branch[0])] = X_PRIME
    report.slot_labels = {v: labels[v] for v in final.exchangeable}
    for m in matrices:
        point = plucker_point(final, m)
        for v in final.exchangeable:
            plus, minus = exchange_monomials(final, v)
            new = seed_mutate(final, v).vars[v]
            lhs = laurent.evaluate(final.vars[v], point) * laurent.evaluate(new, point)
            if lhs != laurent.evaluate(plus, point) + laurent.evaluate(minus, point):
                fail("iv_plucker", f"exchange relation at {v} fails numerically")
    if report.slot_labels != report.isomorphism:
        fail("iv_plucker", "Plücker labelling disagrees with the quiver isomorphism")
    report.stages["iv_plucker"] = True

    # (v) freeze at x'' and split
    named = final.relabel(report.slot_labels)
    fs = freeze(named, [X_DOUBLE_PRIME])
    comps = components(fs)
    if len(comps) != 3:
        fail("v_pairs", f"expected 3 components, found {len(comps)}")
    all_frozen = fs.seed.frozen
    remaining = list(enumerate(ds.subquivers, start=1))
    for c in comps:
        q = glue([c], all_frozen, fs.seed).quiver
        hit = next((i for i, sq in remaining if find_isomorphism(q, sq, frozen_by_label=True)), None)
        if hit is None:
            fail("v_pairs", f"component {sorted(c.exchangeable)} matches no subquiver")
        remaining = [(i, sq) for i, sq in remaining if i != hit]
        report.component_figures.append(f"g37_sub{hit}")
    report.pairs = len(enumerate_complete_pairs(named, [X_DOUBLE_PRIME]))
    if report.pairs != 8:
        fail("v_pairs", f"expected 8 complete pairs, found {report.pairs}")
    report.stages["v_pairs"] = True
    return report
