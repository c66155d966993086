#!/usr/bin/env python3
"""
Exhaustive ground truth: enumerate every type-labeling of an instance, find
optima and equilibria, compute exact PoA/PoS, check the known bounds, build
the explicit lower-bound equilibria, and run the random-graph cycle experiment.

All ratios are fractions.Fraction; nothing here uses floating point.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import config
import game
from dynamics import search_irc
from errors import BudgetExceededError, FailedBoundError, InapplicableError, InvalidParameterError
from game import EMPTY, Assignment, Instance, TypeProfile
from graph import (
    FamilyTag,
    make_clique_cycle,
    make_clique_lines,
    make_cycle,
    make_pos_gadget,
    make_random_connected,
    make_random_regular,
    make_regular_ring_of_cliques,
)

log = logging.getLogger(__name__)


class Objective(str, Enum):
    SW = "sw"
    CE = "ce"


def objective_value(instance: Instance, assignment: Assignment, objective: Objective) -> int:
    if objective is Objective.SW:
        return game.social_welfare(instance, assignment)
    return game.colorful_edges(instance, assignment)


# --------------------------------------------------------------------------- #
# Enumeration
# --------------------------------------------------------------------------- #
def enumerate_assignments(
    instance: Instance, budget: Optional[int] = None, first: Optional[int] = None
) -> Iterator[Assignment]:
    """Every labeling once, lexicographic; `first` restricts node 0 to one value."""
    game.require_within_budget(instance, budget)
    for occ in game.iter_labelings(instance.profile, instance.graph.node_count, first):
        yield Assignment(occ)


def brute_force_optimum(
    instance: Instance, objective: Objective, budget: Optional[int] = None
) -> Tuple[int, Assignment]:
    """Maximum objective value and the first assignment reaching it."""
    best: Optional[Tuple[int, Assignment]] = None
    for assignment in enumerate_assignments(instance, budget):
        value = objective_value(instance, assignment, objective)
        if best is None or value > best[0]:
            best = (value, assignment)
    return best


def enumerate_equilibria(instance: Instance, budget: Optional[int] = None) -> List[Assignment]:
    adjacency = instance.graph.adjacency
    return [
        a
        for a in enumerate_assignments(instance, budget)
        if next(game.iter_improving(adjacency, a.occupancy), None) is None
    ]


# --------------------------------------------------------------------------- #
# Analysis
# --------------------------------------------------------------------------- #
Best = Tuple[int, bytes]


@dataclass
class _Tally:
    """Per-partition results; keys are packed labelings so the tally pickles cheaply."""

    states: int = 0
    equilibria: int = 0
    optimum: Dict[Objective, Best] = field(default_factory=dict)
    eq_min: Dict[Objective, Best] = field(default_factory=dict)
    eq_max: Dict[Objective, Best] = field(default_factory=dict)


def _scan(instance: Instance, first: int) -> _Tally:
    adjacency = instance.graph.adjacency
    edges = instance.graph.edges()
    tally = _Tally()
    for occ in game.iter_labelings(instance.profile, instance.graph.node_count, first):
        tally.states += 1
        values = {
            Objective.SW: sum(
                game.raw_utility(adjacency, occ, v) for v, t in enumerate(occ) if t != EMPTY
            ),
            Objective.CE: sum(
                1 for u, v in edges if occ[u] != EMPTY and occ[v] != EMPTY and occ[u] != occ[v]
            ),
        }
        stable = next(game.iter_improving(adjacency, occ), None) is None
        if stable:
            tally.equilibria += 1
        key = None
        for objective, value in values.items():
            if objective not in tally.optimum or value > tally.optimum[objective][0]:
                key = key or bytes(t + 1 for t in occ)
                tally.optimum[objective] = (value, key)
            if not stable:
                continue
            if objective not in tally.eq_min or value < tally.eq_min[objective][0]:
                key = key or bytes(t + 1 for t in occ)
                tally.eq_min[objective] = (value, key)
            if objective not in tally.eq_max or value > tally.eq_max[objective][0]:
                key = key or bytes(t + 1 for t in occ)
                tally.eq_max[objective] = (value, key)
    return tally


def _merge(tallies: Sequence[_Tally]) -> _Tally:
    """Fold partition tallies in enumeration order; earlier witnesses win ties."""
    total = _Tally()
    for part in tallies:
        total.states += part.states
        total.equilibria += part.equilibria
        for objective, best in part.optimum.items():
            if objective not in total.optimum or best[0] > total.optimum[objective][0]:
                total.optimum[objective] = best
        for objective, low in part.eq_min.items():
            if objective not in total.eq_min or low[0] < total.eq_min[objective][0]:
                total.eq_min[objective] = low
        for objective, high in part.eq_max.items():
            if objective not in total.eq_max or high[0] > total.eq_max[objective][0]:
                total.eq_max[objective] = high
    return total


@dataclass
class InstanceAnalysis:
    objective: Objective
    states: int
    optimum_value: int
    optimum_witness: Assignment
    equilibria_count: int
    min_eq_value: Optional[int] = None
    max_eq_value: Optional[int] = None
    min_eq_witness: Optional[Assignment] = None
    max_eq_witness: Optional[Assignment] = None
    poa: Optional[Fraction] = None
    pos: Optional[Fraction] = None
    poa_infinite: bool = False

    @property
    def equilibrium_exists(self) -> bool:
        return self.equilibria_count > 0

    def summary(self) -> List[str]:
        lines = [
            f"objective: {self.objective.value}",
            f"labelings: {self.states}",
            f"optimum: {self.optimum_value} at [{self.optimum_witness}]",
            f"equilibria: {self.equilibria_count}",
        ]
        if self.equilibrium_exists:
            lines += [
                f"worst equilibrium: {self.min_eq_value} at [{self.min_eq_witness}]",
                f"best equilibrium: {self.max_eq_value} at [{self.max_eq_witness}]",
                f"PoA: {format_ratio(self.poa, self.poa_infinite)}",
                f"PoS: {format_ratio(self.pos, self.pos is None)}",
            ]
        else:
            lines.append("no equilibrium exists (PoA/PoS undefined)")
        return lines


def format_ratio(value: Optional[Fraction], infinite: bool = False) -> str:
    if infinite:
        return "inf"
    if value is None:
        return "n/a"
    return str(value)


def _ratio(optimum: int, value: int) -> Optional[Fraction]:
    if value == 0:
        # all-zero instance: every assignment is optimal
        return Fraction(1) if optimum == 0 else None
    return Fraction(optimum, value)


def analyze_objectives(
    instance: Instance,
    objectives: Sequence[Objective] = (Objective.SW, Objective.CE),
    budget: Optional[int] = None,
    jobs: int = config.DEFAULT_JOBS,
) -> Dict[Objective, InstanceAnalysis]:
    """
    One pass over all labelings for several objectives. With jobs > 1 the
    labelings are split by the value at node 0 and scanned in worker processes;
    results do not depend on the number of workers.
    """
    if jobs < 1:
        raise InvalidParameterError(f"jobs must be at least 1, got {jobs}")
    total_states = game.require_within_budget(instance, budget)
    firsts = [EMPTY] + list(range(instance.k))
    if jobs == 1:
        parts = [_scan(instance, first) for first in firsts]
    else:
        log.info("scanning %d labelings with %d workers", total_states, jobs)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan, [instance] * len(firsts), firsts))
    tally = _merge(parts)
    assert tally.states == total_states, "partitions must cover every labeling exactly once"

    results = {}
    for objective in objectives:
        opt_value, opt_key = tally.optimum[objective]
        analysis = InstanceAnalysis(
            objective=objective,
            states=tally.states,
            optimum_value=opt_value,
            optimum_witness=Assignment.from_key(opt_key),
            equilibria_count=tally.equilibria,
        )
        if tally.equilibria:
            low, low_key = tally.eq_min[objective]
            high, high_key = tally.eq_max[objective]
            analysis.min_eq_value, analysis.max_eq_value = low, high
            analysis.min_eq_witness = Assignment.from_key(low_key)
            analysis.max_eq_witness = Assignment.from_key(high_key)
            analysis.poa = _ratio(opt_value, low)
            analysis.poa_infinite = analysis.poa is None
            analysis.pos = _ratio(opt_value, high)
        else:
            log.warning("%s with profile %s has no equilibrium", instance.graph.family,
                        instance.profile)
        results[objective] = analysis
    return results


def analyze(
    instance: Instance,
    objective: Objective = Objective.SW,
    budget: Optional[int] = None,
    jobs: int = config.DEFAULT_JOBS,
) -> InstanceAnalysis:
    return analyze_objectives(instance, (objective,), budget, jobs)[objective]


# --------------------------------------------------------------------------- #
# Bound checks
# --------------------------------------------------------------------------- #
@dataclass
class BoundCheck:
    name: str
    holds: bool
    detail: str


@dataclass
class BoundReport:
    label: str
    checks: List[BoundCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)

    def failures(self) -> List[BoundCheck]:
        return [c for c in self.checks if not c.holds]

    def add(self, name: str, holds: bool, detail: str) -> None:
        self.checks.append(BoundCheck(name, holds, detail))

    def summary(self) -> List[str]:
        lines = [f"{self.label}: {'PASS' if self.passed else 'FAIL'}"]
        lines.extend(
            f"  [{'ok' if c.holds else 'FAIL'}] {c.name}: {c.detail}" for c in self.checks
        )
        return lines


def _degree_two_bound(k: int, objective: Objective) -> Fraction:
    if k == 2:
        return Fraction(4, 3) if objective is Objective.SW else Fraction(2)
    return Fraction(2 * k, k - 1)


def check_known_bounds(
    instance: Instance, analyses: Dict[Objective, InstanceAnalysis], label: str = ""
) -> BoundReport:
    """
    Equilibrium lower bounds, the general PoA_SW bound (exact on clique-lines
    instances), and the degree-2 and regular-graph PoA bounds for symmetric
    profiles.
    """
    report = BoundReport(label or f"{instance.graph.family} [{instance.profile}]")
    n, k = instance.n, instance.k
    largest = instance.profile.max_count
    sw, ce = analyses.get(Objective.SW), analyses.get(Objective.CE)
    exists = any(a.equilibrium_exists for a in analyses.values())
    if not exists:
        report.add("equilibrium exists", True, "none found; bounds are vacuous")
        return report

    if sw is not None:
        floor = n - largest + 1
        report.add(
            "equilibrium SW >= n - max n_T + 1",
            sw.min_eq_value >= floor,
            f"min {sw.min_eq_value}, bound {floor}",
        )
        general = Fraction(n * (k - 1), floor)
        singles = _singleton_middle_lines(instance)
        if instance.graph.family.tag is FamilyTag.CLIQUE_LINES and not singles:
            report.add(
                "PoA_SW == n(k-1)/(n - max n_T + 1)",
                not sw.poa_infinite and sw.poa == general,
                f"PoA {format_ratio(sw.poa, sw.poa_infinite)}, closed form {general}",
            )
        elif instance.graph.family.tag is FamilyTag.CLIQUE_LINES:
            # each one-node middle line sees two types in the line layout
            lower = Fraction(n * (k - 1), floor + singles)
            report.add(
                "n(k-1)/(n - max n_T + 1 + s) <= PoA_SW <= n(k-1)/(n - max n_T + 1)",
                not sw.poa_infinite and lower <= sw.poa <= general,
                f"PoA {format_ratio(sw.poa, sw.poa_infinite)}, range [{lower}, {general}]",
            )
        else:
            report.add(
                "PoA_SW <= n(k-1)/(n - max n_T + 1)",
                not sw.poa_infinite and sw.poa <= general,
                f"PoA {format_ratio(sw.poa, sw.poa_infinite)}, bound {general}",
            )
    if ce is not None:
        floor = (n - largest + 1) // 2
        report.add(
            "equilibrium CE >= ceil((n - max n_T)/2)",
            ce.min_eq_value >= floor,
            f"min {ce.min_eq_value}, bound {floor}",
        )

    symmetric = instance.profile.symmetric()
    graph = instance.graph
    if symmetric and graph.max_degree <= 2:
        for analysis in (sw, ce):
            if analysis is None:
                continue
            bound = _degree_two_bound(k, analysis.objective)
            report.add(
                f"degree <= 2 PoA_{analysis.objective.value.upper()} <= {bound}",
                not analysis.poa_infinite and analysis.poa <= bound,
                f"PoA {format_ratio(analysis.poa, analysis.poa_infinite)}",
            )
    if symmetric and ce is not None and graph.is_regular():
        delta = graph.max_degree
        report.add(
            f"{delta}-regular PoA_CE <= 2 delta",
            not ce.poa_infinite and ce.poa <= 2 * delta,
            f"PoA {format_ratio(ce.poa, ce.poa_infinite)}",
        )
    return report


def _singleton_middle_lines(instance: Instance) -> int:
    """Lines 1..k-2 of a clique-lines instance that hold a single node; 0 for other families."""
    if instance.graph.family.tag is not FamilyTag.CLIQUE_LINES:
        return 0
    sizes = instance.graph.family.parameters
    return sum(1 for size in sizes[1:-1] if size == 1)


def require_bounds(reports: Sequence[BoundReport]) -> None:
    failed = [r for r in reports if not r.passed]
    if failed:
        lines = [line for r in failed for line in r.summary()]
        raise FailedBoundError(
            f"{len(failed)} of {len(reports)} instances violate a bound:\n" + "\n".join(lines)
        )


# --------------------------------------------------------------------------- #
# Lower-bound witnesses
# --------------------------------------------------------------------------- #
def _largest_type(profile: TypeProfile) -> int:
    return max(range(profile.k), key=lambda t: (profile.counts[t], -t))


def _roles_or_fail(instance: Instance, scenario: str, tag: FamilyTag) -> Dict[str, Tuple[int, ...]]:
    if instance.graph.family.tag is not tag:
        raise InapplicableError(
            f"witness {scenario!r} needs a {tag.value} instance, got {instance.graph.family}"
        )
    return instance.graph.role_map()


def _clique_lines_witness(instance: Instance) -> Dict[int, int]:
    roles = _roles_or_fail(instance, "clique-lines", FamilyTag.CLIQUE_LINES)
    counts = instance.profile.counts
    by_size = sorted(range(instance.k), key=lambda t: (-counts[t], t))
    placement = {}
    for line, t in enumerate(by_size):
        nodes = roles[f"line-{line}"]
        if len(nodes) != counts[t]:
            raise InapplicableError(f"line-{line} has {len(nodes)} nodes for {counts[t]} agents")
        placement.update({v: t for v in nodes})
    return placement


def _clique_cycle_witness(instance: Instance) -> Dict[int, int]:
    roles = _roles_or_fail(instance, "clique-cycle", FamilyTag.CLIQUE_CYCLE)
    cycle = roles["cycle"]
    if not instance.profile.symmetric() or len(cycle) != instance.n:
        raise InapplicableError("clique-cycle witness needs n/k agents of every type")
    return {v: (i // 2) % instance.k for i, v in enumerate(cycle)}


def _regular_ring_witness(instance: Instance) -> Dict[int, int]:
    roles = _roles_or_fail(instance, "regular-ring", FamilyTag.REGULAR_RING)
    if not instance.profile.symmetric():
        raise InapplicableError("regular-ring witness needs a symmetric profile")
    per_type = instance.n // instance.k
    placement = {}
    for ell, v in enumerate(roles["cycle"]):
        placement[v] = ell
        attached = roles[f"clique-{ell}-attached"][: per_type - 1]
        placement.update({u: ell for u in attached})
    return placement


def _cycle_witness(instance: Instance) -> Dict[int, int]:
    """
    Red first, then blocks of two agents of one non-red type, round robin;
    a red separates two blocks of the same type; leftover reds close the run.
    """
    graph = instance.graph
    if graph.family.tag is not FamilyTag.CYCLE:
        raise InapplicableError(f"cycle witness needs a cycle, got {graph.family}")
    red = _largest_type(instance.profile)
    remaining = list(instance.profile.counts)
    seq = [red]
    remaining[red] -= 1
    others = [t for t in range(instance.k) if t != red]
    turn = 0
    while any(remaining[t] for t in others):
        t = others[turn % len(others)]
        turn += 1
        if not remaining[t]:
            continue
        if seq[-1] == t:
            if not remaining[red]:
                raise InapplicableError("cycle witness needs more red agents to separate blocks")
            seq.append(red)
            remaining[red] -= 1
        take = min(2, remaining[t])
        seq.extend([t] * take)
        remaining[t] -= take
    seq.extend([red] * remaining[red])
    return dict(enumerate(seq))


def _pos_case1_witness(instance: Instance) -> Dict[int, int]:
    roles = _roles_or_fail(instance, "pos-case1", FamilyTag.POS_GADGET)
    counts = instance.profile.counts
    red = _largest_type(instance.profile)
    singles = [t for t in range(instance.k) if t != red]
    if counts[red] != len(roles["p"]) or len(singles) != 3 or any(counts[t] != 1 for t in singles):
        raise InapplicableError("pos-case1 witness needs profile (x, 1, 1, 1)")
    placement = {v: red for v in roles["p"]}
    for name, t in zip(("r", "s", "t"), singles):
        placement[roles[name][0]] = t
    return placement


WITNESSES = {
    "clique-lines": _clique_lines_witness,
    "clique-cycle": _clique_cycle_witness,
    "regular-ring": _regular_ring_witness,
    "cycle": _cycle_witness,
    "pos-case1": _pos_case1_witness,
}


def build_witness_assignment(instance: Instance, scenario: str) -> Assignment:
    """The explicit lower-bound equilibrium of a construction; verified before return."""
    builder = WITNESSES.get(scenario)
    if builder is None:
        raise InvalidParameterError(
            f"unknown witness {scenario!r}; expected one of: {', '.join(WITNESSES)}"
        )
    assignment = game.assignment_from_placement(instance, builder(instance))
    verdict = game.is_equilibrium(instance, assignment)
    if not verdict:
        raise InapplicableError(
            f"{scenario} layout on {instance.graph.family} is not stable: {verdict.witness}"
        )
    return assignment


# --------------------------------------------------------------------------- #
# Price-of-stability gadget
# --------------------------------------------------------------------------- #
@dataclass
class PosGadgetReport:
    x: int
    sw_optimum: int
    ce_optimum: int
    equilibria: int
    eq_sw_max: int
    eq_ce_max: int
    case1_sw: int
    case1_ce: int
    case1_found: bool
    notes: List[str] = field(default_factory=list)

    @property
    def pos_sw(self) -> Fraction:
        return Fraction(self.sw_optimum, self.eq_sw_max)

    @property
    def pos_ce(self) -> Fraction:
        return Fraction(self.ce_optimum, self.eq_ce_max)

    def summary(self) -> List[str]:
        x = self.x
        return [
            f"gadget x={x}: {self.equilibria} equilibria",
            f"SW optimum {self.sw_optimum} (3x+5 = {3 * x + 5}); best equilibrium "
            f"{self.eq_sw_max} (bound 2x+13 = {2 * x + 13}); PoS_SW {self.pos_sw}",
            f"CE optimum {self.ce_optimum}; best equilibrium {self.eq_ce_max} "
            f"(bound 2x+8 = {2 * x + 8}); PoS_CE {self.pos_ce}",
            f"case-1 equilibrium: SW {self.case1_sw}, CE {self.case1_ce}, "
            f"{'found' if self.case1_found else 'MISSING'} among equilibria",
        ] + [f"note: {note}" for note in self.notes]


def pos_gadget_instance(x: int) -> Instance:
    graph, _ = make_pos_gadget(x)
    return Instance(graph, TypeProfile((x, 1, 1, 1)))


def pos_gadget_report(x: int, budget: Optional[int] = None, jobs: int = 1) -> PosGadgetReport:
    instance = pos_gadget_instance(x)
    analyses = analyze_objectives(instance, budget=budget, jobs=jobs)
    sw, ce = analyses[Objective.SW], analyses[Objective.CE]
    case1 = build_witness_assignment(instance, "pos-case1")
    equilibria = enumerate_equilibria(instance, budget)
    notes = []
    if ce.optimum_value == 3 * x + 3:
        notes.append("brute-forced CE optimum equals 3x+3")
    elif ce.optimum_value == 3 * x + 8:
        notes.append("brute-forced CE optimum equals 3x+8")
    else:
        notes.append(f"brute-forced CE optimum {ce.optimum_value} is neither 3x+3 nor 3x+8")
    if sw.optimum_value != 3 * x + 5:
        notes.append(f"brute-forced SW optimum {sw.optimum_value} differs from 3x+5")
    return PosGadgetReport(
        x=x,
        sw_optimum=sw.optimum_value,
        ce_optimum=ce.optimum_value,
        equilibria=sw.equilibria_count,
        eq_sw_max=sw.max_eq_value,
        eq_ce_max=ce.max_eq_value,
        case1_sw=game.social_welfare(instance, case1),
        case1_ce=game.colorful_edges(instance, case1),
        case1_found=case1 in equilibria,
        notes=notes,
    )


# --------------------------------------------------------------------------- #
# Named sweeps
# --------------------------------------------------------------------------- #
def one_large_type_profile(n: int, k: int) -> TypeProfile:
    """One big type and k - 1 singletons: (n - k + 1, 1, ..., 1)."""
    if not 2 <= k <= n - 1:
        raise InvalidParameterError(f"need 2 <= k < n, got n={n}, k={k}")
    return TypeProfile((n - k + 1,) + (1,) * (k - 1))


def balanced_profile(n: int, k: int) -> TypeProfile:
    if k < 2 or n % k:
        raise InvalidParameterError(f"k must divide n with k >= 2, got n={n}, k={k}")
    return TypeProfile((n // k,) * k)


def _sweep_small() -> Iterator[Tuple[str, Instance]]:
    for n, k in ((4, 2), (8, 2), (6, 3), (9, 3)):
        yield f"cycle C{n + 1} n={n} k={k}", Instance(
            make_cycle(n + 1), balanced_profile(n, k)
        )
    for profile in ((2, 1), (2, 2), (3, 2, 1), (2, 2, 2)):
        graph, _ = make_clique_lines(profile)
        yield f"clique-lines {profile}", Instance(graph, TypeProfile(profile))
    for n, k in ((5, 3), (6, 3)):
        profile = one_large_type_profile(n, k)
        graph, _ = make_clique_lines(profile.counts)
        yield f"clique-lines {profile.counts}", Instance(graph, profile)
    graph, _ = make_clique_cycle(6, 3)
    yield "clique-cycle n=6 k=3", Instance(graph, balanced_profile(6, 3))
    graph, _ = make_regular_ring_of_cliques(6, 3)
    yield "regular-ring n=6 k=3", Instance(graph, balanced_profile(6, 3))


SWEEPS = {"small": _sweep_small}


def sweep_instances(name: str) -> List[Tuple[str, Instance]]:
    if name not in SWEEPS:
        raise InvalidParameterError(f"unknown sweep {name!r}; expected one of: {', '.join(SWEEPS)}")
    return list(SWEEPS[name]())


def run_sweep(
    name: str = "small", budget: Optional[int] = None, jobs: int = 1
) -> List[BoundReport]:
    reports = []
    for label, instance in sweep_instances(name):
        analyses = analyze_objectives(instance, budget=budget, jobs=jobs)
        report = check_known_bounds(instance, analyses, label)
        log.info("%s: %s", label, "pass" if report.passed else "FAIL")
        reports.append(report)
    return reports


# --------------------------------------------------------------------------- #
# Random-graph improving-response-cycle experiment
# --------------------------------------------------------------------------- #
@dataclass(frozen=True)
class ExperimentConfig:
    num_nodes: int
    k: int
    empty_count: int
    edge_prob: float = 0.5
    regular_degree: Optional[int] = None

    def profile(self) -> TypeProfile:
        """n = num_nodes - empty_count agents, split as evenly as possible."""
        n = self.num_nodes - self.empty_count
        if n < self.k:
            raise InvalidParameterError(
                f"{n} agents cannot fill {self.k} types on {self.num_nodes} nodes"
            )
        base, extra = divmod(n, self.k)
        return TypeProfile(tuple(base + (1 if t < extra else 0) for t in range(self.k)))


@dataclass(frozen=True)
class ExperimentRow:
    num_nodes: int
    n: int
    k: int
    empty_count: int
    seed: int
    graph_kind: str
    irc_found: Optional[bool]
    states_explored: int
    cycle_length: int = 0


@dataclass
class ExperimentReport:
    rows: List[ExperimentRow] = field(default_factory=list)

    def by_empty_count(self) -> Dict[int, Tuple[int, int]]:
        """empty_count -> (samples searched, samples with a cycle)."""
        table: Dict[int, Tuple[int, int]] = {}
        for row in self.rows:
            if row.irc_found is None:
                continue
            searched, found = table.get(row.empty_count, (0, 0))
            table[row.empty_count] = (searched + 1, found + int(row.irc_found))
        return dict(sorted(table.items()))


def random_irc_experiment(
    configs: Sequence[ExperimentConfig], seeds: Sequence[int], budget: Optional[int] = None
) -> ExperimentReport:
    """Sample one graph per (config, seed), search it for an improving-response cycle."""
    report = ExperimentReport()
    for cfg in configs:
        profile = cfg.profile()
        for seed in seeds:
            if cfg.regular_degree:
                graph = make_random_regular(cfg.regular_degree, cfg.num_nodes, seed)
                kind = f"{cfg.regular_degree}-regular"
            else:
                graph = make_random_connected(cfg.num_nodes, cfg.edge_prob, seed)
                kind = f"G(n,{cfg.edge_prob})"
            instance = Instance(graph, profile)
            try:
                result = search_irc(instance, budget)
            except BudgetExceededError as e:
                log.warning("seed %d: %s", seed, str(e).splitlines()[0])
                found, explored, length = None, 0, 0
            else:
                found = result.cycle is not None
                explored = result.states_explored
                length = len(result.cycle) if result.cycle else 0
            if found and cfg.empty_count <= 2:
                log.warning(
                    "improving-response cycle with %d empty nodes (seed %d, %s)",
                    cfg.empty_count, seed, kind,
                )
            report.rows.append(
                ExperimentRow(
                    cfg.num_nodes, profile.n, profile.k, cfg.empty_count, seed, kind,
                    found, explored, length,
                )
            )
    return report


def default_experiment() -> Tuple[List[ExperimentConfig], List[int]]:
    """Random graphs with 1, 2 and 3 empty nodes, plus 3-regular graphs with 3 empty nodes."""
    configs = [
        ExperimentConfig(num_nodes=7, k=3, empty_count=1),
        ExperimentConfig(num_nodes=7, k=3, empty_count=2),
        ExperimentConfig(num_nodes=9, k=3, empty_count=3),
        ExperimentConfig(num_nodes=10, k=3, empty_count=3, regular_degree=3),
    ]
    return configs, list(range(25))
