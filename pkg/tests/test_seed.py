import json
import random
from fractions import Fraction

import pytest

from rootedcluster.laurent import LaurentPoly, evaluate, parse
from rootedcluster.quiver import IceQuiver, MutateAtFrozen
from rootedcluster.seed import (
    LaurentViolation,
    NotAdmissible,
    Seed,
    apply_sequence,
    biadmissible_sequences,
    exchange_monomials,
    initial_seed,
    is_admissible,
    load_seed,
    mutate,
    seed_from_dict,
    verify_inclusion_morphism,
)
from strategies import random_quivers

G37_SEQUENCE = ["147", "347", "137", "134", "467", "134", "457"]


def test_initial_a2(a2_seed):
    assert a2_seed.vars == {"1": LaurentPoly.gen(0, 2), "2": LaurentPoly.gen(1, 2)}
    assert a2_seed.initial_names == ("1", "2")


def test_initial_figure1(g37):
    s = initial_seed(g37.initial_quiver)
    assert s.nvars == 13
    assert all(len(name) == 3 for name in s.initial_names)


def test_initial_empty():
    s = initial_seed(IceQuiver({}))
    assert s.vars == {} and s.nvars == 0


def test_a2_single_step(a2_seed):
    s = mutate(a2_seed, "1")
    assert s.vars["1"] == parse("x0^-1*x1 + x0^-1", 2)
    assert s.vars["2"] == LaurentPoly.gen(1, 2)
    assert s.quiver.arrows == {("2", "1"): 1}


def test_a2_twice_is_identity(a2_seed):
    assert mutate(mutate(a2_seed, "1"), "1") == a2_seed


def test_mutate_at_frozen():
    s = initial_seed(IceQuiver({"f": True, "k": False}, {("f", "k"): 1}))
    with pytest.raises(MutateAtFrozen):
        mutate(s, "f")


def test_frozen_variables_fixed(g37):
    s = initial_seed(g37.initial_quiver)
    final = apply_sequence(s, G37_SEQUENCE)
    for v in s.frozen:
        assert final.vars[v] == s.vars[v]


def test_apply_empty(a2_seed):
    assert apply_sequence(a2_seed, []) == a2_seed


def test_apply_path(a2_seed):
    final, path = apply_sequence(a2_seed, ["1", "2"], return_path=True)
    assert len(path) == 3 and path[0] == a2_seed and path[-1] == final


def test_not_admissible(g37):
    s = initial_seed(g37.initial_quiver)
    with pytest.raises(NotAdmissible) as info:
        apply_sequence(s, ["147", "712"])
    assert info.value.step == 1 and info.value.vertex == "712"
    assert not is_admissible(s, ["712"])
    assert is_admissible(s, [])
    assert is_admissible(s, G37_SEQUENCE)


def test_exchange_identity_and_evaluation_on_random_seeds():
    rng = random.Random(5)
    for q in random_quivers(21, 60, max_vertices=6):
        s = initial_seed(q)
        point = {i: Fraction(rng.randint(1, 9), rng.randint(1, 4)) for i in range(s.nvars)}
        for _ in range(4):
            if not s.exchangeable:
                break
            k = rng.choice(s.exchangeable)
            plus, minus = exchange_monomials(s, k)
            new = mutate(s, k)
            assert s.vars[k] * new.vars[k] == plus + minus
            want = (evaluate(plus, point) + evaluate(minus, point)) / evaluate(s.vars[k], point)
            assert evaluate(new.vars[k], point) == want
            assert mutate(new, k) == s
            s = new


def test_laurent_violation_on_unreachable_seed():
    # a non-cluster value at an exchangeable vertex breaks the Laurent property
    q = IceQuiver({"1": False, "2": False}, {("1", "2"): 1})
    s = Seed(q, {"1": parse("x0 + x1", 2), "2": parse("x1", 2)}, ("1", "2"))
    with pytest.raises(LaurentViolation):
        mutate(s, "1")


def test_seed_file_round_trip(tmp_path, a2_seed):
    s = mutate(a2_seed, "1")
    path = tmp_path / "seed.json"
    path.write_text(json.dumps(s.to_dict()))
    assert load_seed(path) == s


def test_seed_file_without_vars_is_initial(a2, a2_seed):
    assert seed_from_dict(a2.to_dict()) == a2_seed


class TestMorphism:
    def test_identity(self, g37):
        s = initial_seed(g37.initial_quiver)
        assert verify_inclusion_morphism(s, s, depth=3) is None

    def test_exchangeable_to_frozen(self):
        sub = initial_seed(IceQuiver({"a": False}))
        sup = initial_seed(IceQuiver({"a": True, "b": False}, {("a", "b"): 1}))
        v = verify_inclusion_morphism(sub, sup, {"a": "a"}, depth=1)
        assert v is not None and v.condition == "a"

    def test_incompatible_mutation(self):
        sub = initial_seed(IceQuiver({"1": False, "2": False}, {("1", "2"): 1}))
        sup = initial_seed(IceQuiver({"1": False, "2": False}, {("1", "2"): 2}))
        v = verify_inclusion_morphism(sub, sup, depth=2)
        assert v is not None and v.condition == "c" and v.sequence == ("1",)

    def test_subquivers_into_standard(self, g37):
        sup = initial_seed(g37.standard_quiver)
        for q in g37.subquivers:
            assert verify_inclusion_morphism(initial_seed(q), sup, depth=2) is None

    def test_integer_specialisation(self):
        # a frozen variable may be sent to an integer
        sub = initial_seed(IceQuiver({"k": False, "f": True}, {("k", "f"): 1}))
        sup = initial_seed(IceQuiver({"k": False}))
        assert verify_inclusion_morphism(sub, sup, {"k": "k", "f": 1}, depth=3) is None
        v = verify_inclusion_morphism(sub, sup, {"k": "k", "f": 2}, depth=1)
        assert v is not None and v.condition == "c"

    def test_sequence_count(self, g37):
        sup = initial_seed(g37.standard_quiver)
        sub = initial_seed(g37.subquivers[0])
        seqs = list(biadmissible_sequences(sub, sup, {v: v for v in sub.quiver.vertices}, 2))
        assert len(seqs) == 1 + 2 + 4
