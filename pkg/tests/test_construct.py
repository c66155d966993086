import itertools

import pytest

import game
from construct import (
    Property,
    StabilityCertificate,
    certify,
    construct_cylinder_equilibrium,
    construct_equilibrium,
    construct_torus_equilibrium,
    construct_tree_equilibrium,
    verify_certificate,
)
from errors import InapplicableError
from game import EMPTY, Assignment, Instance, TypeProfile
from graph import make_clique, make_cylinder, make_line, make_random_tree, make_torus, make_tree

E = EMPTY


def _assert_verified(instance, result):
    assert game.is_equilibrium(instance, result.assignment)
    assert verify_certificate(instance, result.assignment, result.certificate)
    game.validate_assignment(instance, result.assignment)


def test_certify_prefers_p1():
    instance = Instance(make_line(3), TypeProfile((1, 1)))
    assert certify(instance, Assignment((0, 1, E))) == StabilityCertificate(Property.P1)


def test_certify_returns_none_for_unstable_assignment():
    instance = Instance(make_line(4), TypeProfile((2, 1)))
    assert certify(instance, Assignment((0, 0, E, 1))) is None


def test_verify_certificate_is_literal():
    instance = Instance(make_line(4), TypeProfile((2, 1)))
    stable = Assignment((E, 0, 0, 1))
    # node 1 has utility 0, so P1 does not hold, but it is a red agent facing only red
    assert not verify_certificate(instance, stable, StabilityCertificate(Property.P1))
    assert verify_certificate(instance, stable, StabilityCertificate(Property.P0, 0))
    assert verify_certificate(instance, stable, StabilityCertificate(Property.DIRECT))


def test_tree_star():
    star = make_tree(6, [(0, leaf) for leaf in range(1, 6)])
    instance = Instance(star, TypeProfile((3, 2)))
    result = construct_tree_equilibrium(instance)
    assert result.assignment.occupancy == (0, E, 0, 0, 1, 1)
    assert result.certificate == StabilityCertificate(Property.P0, 0)
    assert result.case == "tree"
    _assert_verified(instance, result)


def test_tree_path():
    instance = Instance(make_line(4), TypeProfile((1, 1, 1)))
    result = construct_tree_equilibrium(instance)
    assert result.assignment.occupancy == (E, 0, 2, 1)
    assert result.certificate.prop is Property.P1
    _assert_verified(instance, result)


def test_tree_constructor_rejects_cycles():
    with pytest.raises(InapplicableError):
        construct_tree_equilibrium(Instance(make_cylinder(3), TypeProfile((1, 1))))


def test_cylinder_case1_fills_the_top_row():
    instance = Instance(make_cylinder(8), TypeProfile((1, 1, 1, 1, 1)))
    result = construct_cylinder_equilibrium(instance)
    assert result.case == "1"
    assert result.certificate.prop is Property.P1
    utilities = [game.utility(instance, result.assignment, v) for v in range(5)]
    assert utilities == [1, 2, 2, 2, 1]
    assert all(t <= 1 for t in game.type_count_map(instance, result.assignment).values())
    _assert_verified(instance, result)


@pytest.mark.parametrize(
    "m, counts, case, prop",
    [
        (5, (1, 1, 1, 1, 1, 2), "2b-shift", Property.DIRECT),
        (7, (1, 1, 1, 2, 2, 2), "2b", Property.DIRECT),
        (6, (2, 3, 3), "3-even", Property.P1),
        (5, (1, 3, 3), "3a", Property.P1),
        (6, (2, 3, 4), "3b", Property.P1),
    ],
)
def test_cylinder_cases(m, counts, case, prop):
    instance = Instance(make_cylinder(m), TypeProfile(counts))
    result = construct_cylinder_equilibrium(instance)
    assert result.case == case
    assert result.certificate.prop is prop
    _assert_verified(instance, result)


def test_cylinder_case3c_encloses_with_largest_type():
    instance = Instance(make_cylinder(9), TypeProfile((1, 2, 8)))
    result = construct_cylinder_equilibrium(instance)
    assert result.case == "3c"
    assert result.certificate == StabilityCertificate(Property.P0, 2)
    _assert_verified(instance, result)


def test_cylinder_maps_types_back_to_caller_ids():
    # largest type listed first: the canonical order reverses it
    instance = Instance(make_cylinder(6), TypeProfile((4, 3, 2)))
    result = construct_cylinder_equilibrium(instance)
    assert result.type_map == (2, 1, 0)
    assert any("T_3=0" in line for line in result.explain())
    _assert_verified(instance, result)


def test_cylinder_small_and_two_type_games():
    tiny = Instance(make_cylinder(4), TypeProfile((1, 1)))
    assert construct_cylinder_equilibrium(tiny).case == "n<=3"
    crowded = Instance(make_cylinder(3), TypeProfile((2, 1, 1)))
    result = construct_cylinder_equilibrium(crowded)
    assert result.case == "dynamics"
    _assert_verified(crowded, result)
    two_types = Instance(make_cylinder(6), TypeProfile((3, 3)))
    assert construct_cylinder_equilibrium(two_types).case == "dynamics"


def test_torus_case1():
    instance = Instance(make_torus(9, 9), TypeProfile((8, 9, 9)))
    result = construct_torus_equilibrium(instance)
    assert result.case == "1"
    assert result.certificate.prop is Property.P1
    _assert_verified(instance, result)


def test_torus_case2a():
    instance = Instance(make_torus(10, 9), TypeProfile((20, 22, 22)))
    result = construct_torus_equilibrium(instance)
    assert result.case == "2a"
    assert result.certificate.prop in (Property.P0, Property.P1)
    _assert_verified(instance, result)


def test_torus_case2b():
    instance = Instance(make_torus(12, 9), TypeProfile((10,) * 6))
    result = construct_torus_equilibrium(instance)
    assert result.case == "2b"
    _assert_verified(instance, result)


def test_torus_case3():
    instance = Instance(make_torus(9, 9), TypeProfile((7,) + (8,) * 9))
    result = construct_torus_equilibrium(instance)
    assert result.case.startswith("3")
    _assert_verified(instance, result)


def test_torus_preconditions():
    with pytest.raises(InapplicableError, match="k >= 3"):
        construct_torus_equilibrium(Instance(make_torus(9, 9), TypeProfile((10, 10))))
    with pytest.raises(InapplicableError, match="m2 >= 9"):
        construct_torus_equilibrium(Instance(make_torus(8, 8), TypeProfile((8, 8, 8))))
    with pytest.raises(InapplicableError, match="largest type"):
        construct_torus_equilibrium(Instance(make_torus(9, 9), TypeProfile((5, 5, 5))))


def test_dispatch():
    path = Instance(make_line(4), TypeProfile((1, 1, 1)))
    assert construct_equilibrium(path).case == "tree"
    with pytest.raises(InapplicableError):
        construct_equilibrium(Instance(make_clique(5), TypeProfile((2, 2))))


def _tree_profiles(size):
    for counts in [(2, 1), (1, 1, 1), (3, 2, 2), (4, 4), (5, 3, 2, 1)]:
        if sum(counts) < size:
            yield TypeProfile(counts)


@pytest.mark.slow
def test_tree_constructor_on_random_trees():
    for seed in range(50):
        size = 5 + (seed * 7) % 36
        tree = make_random_tree(size, seed)
        for profile in _tree_profiles(size):
            instance = Instance(tree, profile)
            _assert_verified(instance, construct_tree_equilibrium(instance))


@pytest.mark.slow
def test_cylinder_constructor_on_profile_grid():
    for m in range(3, 13):
        graph = make_cylinder(m)
        for n in range(2, 2 * m):
            for k in range(2, min(n, 5) + 1):
                for counts in itertools.combinations_with_replacement(range(1, n + 1), k):
                    if sum(counts) != n:
                        continue
                    instance = Instance(graph, TypeProfile(counts))
                    result = construct_cylinder_equilibrium(instance)
                    assert not result.case.endswith("+repair"), (m, counts, result.case)
                    _assert_verified(instance, result)
            instance = Instance(graph, TypeProfile((1,) * n))
            _assert_verified(instance, construct_cylinder_equilibrium(instance))

