import itertools

import pytest

import game
from dynamics import (
    PolicyTag,
    PotentialKind,
    ResponsePolicy,
    Status,
    audit_lemma_jump,
    audit_potential,
    check_potential_applicable,
    find_irc,
    irc_witness,
    potential_value,
    replay,
    run_dynamics,
    search_irc,
    trim_cycle,
)
from errors import InapplicableError, InvalidParameterError
from game import EMPTY, Assignment, Instance, Jump, TypeProfile
from graph import (
    make_clique,
    make_cycle,
    make_cylinder,
    make_line,
    make_random_regular,
    small_connected_graphs,
)

E = EMPTY


def _profiles(n, k):
    """Profiles of n agents into k non-empty types, largest first (types are symmetric)."""
    for counts in itertools.combinations_with_replacement(range(1, n + 1), k):
        if sum(counts) == n:
            yield TypeProfile(tuple(sorted(counts, reverse=True)))


def test_first_improving_reaches_equilibrium():
    instance = Instance(make_line(4), TypeProfile((2, 1)))
    outcome = run_dynamics(instance, Assignment((0, 0, E, 1)))
    assert outcome.status is Status.EQUILIBRIUM
    assert [str(s) for s in outcome.trace] == ["0 0->2 0->1"]
    assert outcome.final.occupancy == (E, 0, 0, 1)
    assert outcome.cycle() == []


def test_best_response_breaks_ties_by_smallest_jump():
    instance = Instance(make_line(4), TypeProfile((2, 1)))
    policy = ResponsePolicy(PolicyTag.BEST_RESPONSE)
    outcome = run_dynamics(instance, Assignment((0, 0, E, 1)), policy)
    assert outcome.trace[0].jump == Jump(0, 2, 0)


def test_random_policy_is_seeded():
    instance = Instance(make_cylinder(4), TypeProfile((2, 2, 1)))
    start = game.random_assignment(instance, seed=2)
    policy = ResponsePolicy(PolicyTag.RANDOM_IMPROVING, seed=9)
    first = run_dynamics(instance, start, policy)
    again = run_dynamics(instance, start, policy)
    assert first.trace == again.trace
    assert first.status == again.status


def test_step_limit_must_be_positive():
    instance = Instance(make_line(4), TypeProfile((2, 1)))
    with pytest.raises(InvalidParameterError):
        run_dynamics(instance, Assignment((0, 0, E, 1)), step_limit=0)


def test_witness_cycle_revisits_start_after_six_jumps():
    instance, start = irc_witness()
    outcome = run_dynamics(instance, start)
    assert outcome.status is Status.STATE_REVISITED
    assert outcome.revisit_index == 0
    assert outcome.final == start
    moves = [(s.jump.source, s.jump.dest) for s in outcome.trace]
    assert moves == [(0, 3), (1, 4), (2, 5), (3, 0), (4, 1), (5, 2)]
    assert trim_cycle(outcome) == outcome.trace
    # three types, each jumps twice
    assert sorted(s.jump.agent_type for s in outcome.trace) == [0, 0, 1, 1, 2, 2]


def test_witness_cycle_without_memory_hits_step_limit():
    instance, start = irc_witness()
    outcome = run_dynamics(instance, start, step_limit=10, remember_states=False)
    assert outcome.status is Status.STEP_LIMIT
    assert len(outcome.trace) == 10


def test_replay_accepts_the_witness_trace():
    instance, start = irc_witness()
    outcome = run_dynamics(instance, start)
    states = replay(instance, start, outcome.trace)
    assert len(states) == 7
    assert states[-1] == start
    plain = [s.jump for s in outcome.trace]
    assert replay(instance, start, plain)[-1] == start


def test_replay_rejects_non_improving_step():
    instance = Instance(make_line(4), TypeProfile((2, 1)))
    start = Assignment((E, 0, 0, 1))
    with pytest.raises(InvalidParameterError, match="does not improve"):
        replay(instance, start, [Jump(1, 0, 0)])


def test_search_irc_on_acyclic_instance():
    instance = Instance(make_line(3), TypeProfile((1, 1)))
    result = search_irc(instance)
    assert result.cycle is None
    assert result.states_explored == 6
    assert find_irc(instance) is None


def test_potential_values_on_cylinder():
    instance = Instance(make_cylinder(3), TypeProfile((2, 1, 1)))
    a = Assignment((0, 0, 1, 2, E, E))
    assert potential_value(instance, a, PotentialKind.SW) == 5
    assert potential_value(instance, a, PotentialKind.THREE_REG_TWO_EMPTY) == 2 * (4 + 1) + 1


def test_degree_two_potential_on_a_line():
    instance = Instance(make_line(4), TypeProfile((2, 1)))
    # CE = 0, empty node 2 sees two types so c = 0
    assert potential_value(instance, Assignment((0, 0, E, 1)), PotentialKind.DEG2) == 0
    # after the jump: CE = 1 (2-3), empty node 0 sees one type
    assert potential_value(instance, Assignment((E, 0, 0, 1)), PotentialKind.DEG2) == 3


def test_potential_applicability():
    cylinder = Instance(make_cylinder(3), TypeProfile((2, 1, 1)))
    with pytest.raises(InapplicableError):
        check_potential_applicable(cylinder, PotentialKind.DEG2)
    three_empties = Instance(make_cylinder(3), TypeProfile((2, 1)))
    with pytest.raises(InapplicableError):
        check_potential_applicable(three_empties, PotentialKind.THREE_REG_TWO_EMPTY)
    with pytest.raises(InapplicableError):
        check_potential_applicable(
            Instance(make_line(4), TypeProfile((1, 1))), PotentialKind.THREE_REG_TWO_EMPTY
        )


def test_audits_pass_on_small_instances():
    report = audit_potential(Instance(make_cylinder(3), TypeProfile((2, 2))), PotentialKind.SW)
    assert report.passed, report.summary()
    assert report.states == 90
    report = audit_potential(Instance(make_line(6), TypeProfile((2, 1, 1))), PotentialKind.DEG2)
    assert report.passed, report.summary()
    instance = Instance(make_cylinder(3), TypeProfile((2, 1, 1)))
    report = audit_potential(instance, PotentialKind.THREE_REG_TWO_EMPTY)
    assert report.passed, report.summary()
    assert audit_lemma_jump(instance).passed


@pytest.mark.slow
def test_sw_potential_on_every_small_graph_with_two_types():
    for graph in small_connected_graphs(7, min_nodes=3):
        for empties in (1, 2, 3):
            n = graph.node_count - empties
            if n < 2:
                continue
            for profile in _profiles(n, 2):
                report = audit_potential(Instance(graph, profile), PotentialKind.SW)
                assert report.passed, report.summary()


@pytest.mark.slow
def test_degree_two_potential_on_lines_and_cycles():
    for size in range(3, 9):
        for graph in (make_line(size), make_cycle(size)):
            for k in (2, 3):
                for n in range(k, size):
                    for profile in _profiles(n, k):
                        report = audit_potential(Instance(graph, profile), PotentialKind.DEG2)
                        assert report.passed, report.summary()


@pytest.mark.slow
def test_three_regular_potential_and_jump_audit_with_two_empties():
    instances = [
        Instance(graph, profile)
        for graph in (make_cylinder(3), make_cylinder(4))
        for profile in _profiles(graph.node_count - 2, 3)
    ]
    instances.append(Instance(make_clique(4), TypeProfile((1, 1))))
    for instance in instances:
        report = audit_potential(instance, PotentialKind.THREE_REG_TWO_EMPTY)
        assert report.passed, report.summary()
        assert audit_lemma_jump(instance).passed
    for seed in range(10):
        instance = Instance(make_random_regular(3, 8, seed), TypeProfile((2, 2, 2)))
        assert audit_lemma_jump(instance).passed


@pytest.mark.slow
def test_single_empty_node_never_cycles():
    for graph in small_connected_graphs(7, min_nodes=3):
        for k in (2, 3):
            n = graph.node_count - 1
            if n < k:
                continue
            for profile in _profiles(n, k):
                assert find_irc(Instance(graph, profile)) is None


def test_rooted_search_closes_the_six_jump_cycle():
    instance, start = irc_witness()
    result = search_irc(instance, roots=[start])
    assert result.start == start
    assert result.states_explored == 6
    assert len(result.cycle) == 6
    assert sorted(s.jump.agent_type for s in result.cycle) == [0, 0, 1, 1, 2, 2]
    assert replay(instance, start, result.cycle)[-1] == start


def test_rooted_search_validates_roots():
    instance, _ = irc_witness()
    with pytest.raises(InvalidParameterError):
        search_irc(instance, roots=[Assignment((0, 1, 2) + (E,) * 9)])


@pytest.mark.slow
def test_cycle_search_on_cylinders_with_three_empty_nodes():
    cycle_length_by_m = {}
    for m, counts in ((4, (2, 2, 1)), (5, (3, 2, 2)), (6, (3, 3, 3))):
        instance = Instance(make_cylinder(m), TypeProfile(counts))
        assert instance.graph.node_count - instance.n == 3
        result = search_irc(instance)
        if result.cycle is None:
            continue
        cycle_length_by_m[m] = len(result.cycle)
        states = replay(instance, result.start, result.cycle)
        assert states[-1] == result.start
        assert len(set(states[:-1])) == len(result.cycle)
    assert 6 in cycle_length_by_m
