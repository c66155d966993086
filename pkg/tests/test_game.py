import pytest

import game
from errors import BudgetExceededError, InvalidParameterError
from game import EMPTY, Assignment, Instance, Jump, ScoredJump, TypeProfile
from graph import make_clique_lines, make_cylinder, make_line

E = EMPTY


def _cylinder_instance():
    # top row 0 0 1, bottom row 2 E E
    instance = Instance(make_cylinder(3), TypeProfile((2, 1, 1)))
    return instance, Assignment((0, 0, 1, 2, E, E))


def test_profile_parse_and_format():
    profile = TypeProfile.parse("3, 2,2")
    assert profile.counts == (3, 2, 2)
    assert profile.k == 3
    assert profile.n == 7
    assert profile.max_count == 3
    assert str(profile) == "3,2,2"
    assert not profile.symmetric()
    assert TypeProfile((2, 2)).symmetric()


@pytest.mark.parametrize("text", ["3", "2,0", "a,b", "3,-1"])
def test_profile_rejects_bad_input(text):
    with pytest.raises(InvalidParameterError):
        TypeProfile.parse(text)


def test_instance_needs_an_empty_node():
    with pytest.raises(InvalidParameterError, match="empty"):
        Instance(make_line(3), TypeProfile((2, 1)))
    instance = Instance(make_line(4), TypeProfile((2, 1)))
    assert instance.empty_count == 1
    assert not instance.symmetric


def test_assignment_tokens_and_key():
    a = Assignment.from_tokens([0, "E", 1, "e", None])
    assert a.occupancy == (0, E, 1, E, E)
    assert a.tokens() == [0, "E", 1, "E", "E"]
    assert Assignment.from_key(a.key()) == a
    assert a.empty_nodes() == [1, 3, 4]
    assert a.occupied_nodes() == [0, 2]
    assert str(a) == "0 E 1 E E"
    with pytest.raises(InvalidParameterError):
        Assignment.from_tokens([0, "x"])


def test_validate_assignment():
    instance = Instance(make_line(3), TypeProfile((1, 1)))
    game.validate_assignment(instance, Assignment((0, 1, E)))
    with pytest.raises(InvalidParameterError, match="entries"):
        game.validate_assignment(instance, Assignment((0, 1)))
    with pytest.raises(InvalidParameterError, match="unknown type"):
        game.validate_assignment(instance, Assignment((0, 2, E)))
    with pytest.raises(InvalidParameterError, match="do not match"):
        game.validate_assignment(instance, Assignment((0, 0, E)))


def test_utility_and_type_count_on_a_path():
    instance = Instance(make_line(3), TypeProfile((1, 1)))
    a = Assignment((0, 1, E))
    assert game.utility(instance, a, 0) == 1
    assert game.utility(instance, a, 1) == 1
    assert game.type_count(instance, a, 2) == 1
    assert game.type_count_map(instance, a) == {2: 1}
    with pytest.raises(InvalidParameterError):
        game.utility(instance, a, 2)


def test_metrics_golden_values_on_cylinder():
    instance, a = _cylinder_instance()
    m = game.metrics(instance, a)
    assert m.sw == 5
    assert m.ce == 3
    assert m.mono == 1
    assert m.c_count == 0
    assert (m.te, m.b) == (4, 1)
    assert game.social_welfare(instance, a) == 5
    assert game.colorful_edges(instance, a) == 3
    assert game.monochromatic_edges(instance, a) == 1
    assert game.type_count_map(instance, a) == {4: 2, 5: 2}


def test_improving_jumps_are_ordered_by_source_then_dest():
    instance = Instance(make_line(4), TypeProfile((2, 1)))
    a = Assignment((0, 0, E, 1))
    jumps = game.improving_jumps(instance, a)
    assert [(s.jump.source, s.jump.dest) for s in jumps] == [(0, 2), (1, 2), (3, 2)]
    assert jumps[0] == ScoredJump(Jump(0, 2, 0), 0, 1)
    verdict = game.is_equilibrium(instance, a)
    assert not verdict
    assert verdict.witness == jumps[0]


def test_equilibrium_when_nobody_can_gain():
    instance = Instance(make_line(3), TypeProfile((1, 1)))
    verdict = game.is_equilibrium(instance, Assignment((0, 1, E)))
    assert verdict
    assert verdict.witness is None


def test_apply_jump_preserves_counts():
    instance = Instance(make_line(4), TypeProfile((2, 1)))
    after = game.apply_jump(Assignment((0, 0, E, 1)), Jump(0, 2, 0))
    assert after.occupancy == (E, 0, 0, 1)
    game.validate_assignment(instance, after)
    with pytest.raises(InvalidParameterError, match="occupied"):
        game.apply_jump(after, Jump(1, 2, 0))
    with pytest.raises(InvalidParameterError, match="does not hold"):
        game.apply_jump(after, Jump(3, 0, 0))


def test_assignment_from_placement_checks_counts():
    instance = Instance(make_line(4), TypeProfile((2, 1)))
    a = game.assignment_from_placement(instance, {0: 0, 1: 1, 3: 0})
    assert a.occupancy == (0, 1, E, 0)
    with pytest.raises(InvalidParameterError):
        game.assignment_from_placement(instance, {0: 0, 1: 1})


def test_random_assignment_is_reproducible():
    instance, _ = _cylinder_instance()
    a = game.random_assignment(instance, seed=11)
    assert a == game.random_assignment(instance, seed=11)
    game.validate_assignment(instance, a)


def test_labeling_counts():
    assert game.labeling_count(TypeProfile((1, 1)), 3) == 6
    assert game.labeling_count(TypeProfile((2, 1, 1)), 6) == 180
    assert game.labeling_count(TypeProfile((3, 2, 1)), 12) == 55440


def test_iter_labelings_is_lexicographic_and_complete():
    labelings = list(game.iter_labelings(TypeProfile((1, 1)), 3))
    assert labelings == [
        (E, 0, 1), (E, 1, 0), (0, E, 1), (0, 1, E), (1, E, 0), (1, 0, E),
    ]


def test_partitions_by_first_node_concatenate_to_full_order():
    profile = TypeProfile((2, 1, 1))
    full = list(game.iter_labelings(profile, 6))
    parts = []
    for first in (E, 0, 1, 2):
        part = list(game.iter_labelings(profile, 6, first))
        assert len(part) == game.labeling_count(profile, 6, first)
        parts.extend(part)
    assert parts == full
    assert len(set(full)) == 180


def test_budget_guard():
    instance = Instance(make_line(3), TypeProfile((1, 1)))
    assert game.require_within_budget(instance, 6) == 6
    with pytest.raises(BudgetExceededError) as info:
        game.require_within_budget(instance, 5)
    assert info.value.count == 6
    assert info.value.budget == 5


def test_clique_lines_instance_state_space():
    graph, _ = make_clique_lines((3, 2, 1))
    instance = Instance(graph, TypeProfile((3, 2, 1)))
    assert game.require_within_budget(instance) == 55440
