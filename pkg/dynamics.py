#!/usr/bin/env python3
"""
Improving-response dynamics, improving-response-cycle search and potential audits.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

import config
import game
from errors import InapplicableError, InvalidParameterError
from game import EMPTY, Assignment, Instance, ScoredJump, TypeProfile
from graph import make_cylinder, rng_for

log = logging.getLogger(__name__)


# --------------------------------------------------------------------------- #
# Dynamics
# --------------------------------------------------------------------------- #
class PolicyTag(str, Enum):
    FIRST_IMPROVING = "first"
    BEST_RESPONSE = "best"
    RANDOM_IMPROVING = "random"


@dataclass(frozen=True)
class ResponsePolicy:
    tag: PolicyTag = PolicyTag.FIRST_IMPROVING
    seed: int = config.DEFAULT_SEED


class Status(str, Enum):
    EQUILIBRIUM = "equilibrium"
    STATE_REVISITED = "state-revisited"
    STEP_LIMIT = "step-limit"


@dataclass
class DynamicsOutcome:
    trace: List[ScoredJump]
    status: Status
    final: Assignment
    revisit_index: Optional[int] = None

    def cycle(self) -> List[ScoredJump]:
        """The closed part of a StateRevisited trace (empty otherwise)."""
        if self.status is not Status.STATE_REVISITED:
            return []
        return self.trace[self.revisit_index:]


Chooser = Callable[[List[ScoredJump]], ScoredJump]


def _chooser(policy: ResponsePolicy) -> Chooser:
    if policy.tag is PolicyTag.FIRST_IMPROVING:
        return lambda jumps: jumps[0]
    if policy.tag is PolicyTag.BEST_RESPONSE:
        # max() keeps the first maximum, i.e. the smallest (source, dest)
        return lambda jumps: max(jumps, key=lambda j: j.new_utility)
    rng = rng_for(policy.seed)
    return lambda jumps: jumps[int(rng.integers(len(jumps)))]


def run_dynamics(
    instance: Instance,
    initial: Assignment,
    policy: ResponsePolicy = ResponsePolicy(),
    step_limit: Optional[int] = None,
    remember_states: bool = True,
) -> DynamicsOutcome:
    """
    Apply the policy's improving jump until no jump improves, a state repeats,
    or step_limit jumps were made. remember_states=False skips the visited-state
    memory, so only equilibrium or the step limit can stop the run.
    """
    limit = config.step_limit() if step_limit is None else step_limit
    if limit < 1:
        raise InvalidParameterError(f"step_limit must be positive, got {limit}")
    game.validate_assignment(instance, initial)
    choose = _chooser(policy)
    adjacency = instance.graph.adjacency
    occ = initial.occupancy
    seen: Dict[Tuple[int, ...], int] = {occ: 0} if remember_states else {}
    trace: List[ScoredJump] = []
    while len(trace) < limit:
        jumps = list(game.iter_improving(adjacency, occ))
        if not jumps:
            return DynamicsOutcome(trace, Status.EQUILIBRIUM, Assignment(occ))
        step = choose(jumps)
        trace.append(step)
        occ = game.moved(occ, step.jump.source, step.jump.dest)
        if remember_states:
            if occ in seen:
                log.info("state revisited after %d jumps (first seen at %d)", len(trace), seen[occ])
                return DynamicsOutcome(trace, Status.STATE_REVISITED, Assignment(occ), seen[occ])
            seen[occ] = len(trace)
    return DynamicsOutcome(trace, Status.STEP_LIMIT, Assignment(occ))


def trim_cycle(outcome: DynamicsOutcome) -> List[ScoredJump]:
    return outcome.cycle()


def replay(instance: Instance, initial: Assignment, trace: List) -> List[Assignment]:
    """
    Re-check a trace: every step must be a valid, strictly improving jump.
    Accepts Jump or ScoredJump items; returns the visited states.
    """
    game.validate_assignment(instance, initial)
    states = [initial]
    current = initial
    for position, item in enumerate(trace):
        jump = item.jump if isinstance(item, ScoredJump) else item
        after = game.apply_jump(current, jump)
        old = game.utility(instance, current, jump.source)
        new = game.utility(instance, after, jump.dest)
        if new <= old:
            raise InvalidParameterError(
                f"step {position} ({jump}) does not improve: utility {old} -> {new}"
            )
        if isinstance(item, ScoredJump) and (item.old_utility, item.new_utility) != (old, new):
            raise InvalidParameterError(
                f"step {position} ({jump}) records {item.old_utility}->{item.new_utility}, "
                f"replay gives {old}->{new}"
            )
        states.append(after)
        current = after
    return states


# --------------------------------------------------------------------------- #
# Improving-response cycle search
# --------------------------------------------------------------------------- #
@dataclass
class IrcSearch:
    cycle: Optional[List[ScoredJump]]
    states_explored: int
    start: Optional[Assignment] = None


def search_irc(
    instance: Instance,
    budget: Optional[int] = None,
    roots: Optional[Iterable[Assignment]] = None,
) -> IrcSearch:
    """
    Depth-first search with white/gray/black coloring over the directed graph
    whose nodes are labelings and whose arcs are improving jumps. Returns the
    first directed cycle met, starting roots in lexicographic labeling order.

    With `roots`, only the states reachable from them are searched. Arcs are
    taken in (source, dest) order, so from a single root the search follows
    first-improving dynamics until it first backtracks.
    """
    total = game.require_within_budget(instance, budget)
    adjacency = instance.graph.adjacency
    gray, black = 1, 2
    color: Dict[bytes, int] = {}

    def key(occ: Tuple[int, ...]) -> bytes:
        return bytes(t + 1 for t in occ)

    if roots is None:
        starts = game.iter_labelings(instance.profile, instance.graph.node_count)
    else:
        starts = []
        for assignment in roots:
            game.validate_assignment(instance, assignment)
            starts.append(assignment.occupancy)

    # states are generated lazily from the jumps, so the digraph is never built
    for root in starts:
        root_key = key(root)
        if root_key in color:
            continue
        color[root_key] = gray
        path: List[Tuple[Tuple[int, ...], bytes]] = [(root, root_key)]
        arcs: List[ScoredJump] = []
        frames: List[Iterator[ScoredJump]] = [game.iter_improving(adjacency, root)]
        depth_of: Dict[bytes, int] = {root_key: 0}
        while frames:
            step = next(frames[-1], None)
            if step is None:
                frames.pop()
                _, done_key = path.pop()
                color[done_key] = black
                del depth_of[done_key]
                if arcs:
                    arcs.pop()
                continue
            occ = path[-1][0]
            nxt = game.moved(occ, step.jump.source, step.jump.dest)
            nxt_key = key(nxt)
            state = color.get(nxt_key)
            if state == gray:
                start = depth_of[nxt_key]
                cycle = arcs[start:] + [step]
                log.info("improving-response cycle of length %d after %d states",
                         len(cycle), len(color))
                return IrcSearch(cycle, len(color), Assignment(path[start][0]))
            if state == black:
                continue
            color[nxt_key] = gray
            depth_of[nxt_key] = len(path)
            path.append((nxt, nxt_key))
            arcs.append(step)
            frames.append(game.iter_improving(adjacency, nxt))
    log.info("no cycle among %d of %d labelings", len(color), total)
    return IrcSearch(None, len(color))


def find_irc(instance: Instance, budget: Optional[int] = None) -> Optional[List[ScoredJump]]:
    """A closed improving walk, or None when the improving-response graph is acyclic."""
    return search_irc(instance, budget).cycle


def irc_witness() -> Tuple[Instance, Assignment]:
    """
    Six-jump improving-response cycle on the 2 x 6 cylinder, three empty nodes.

    Top row: red, blue, green, then three empty nodes. Bottom row (static
    agents): blue, green, red, blue, green, red. First-improving dynamics move
    red 0->3, blue 1->4, green 2->5, red 3->0, blue 4->1, green 5->2.
    """
    red, blue, green = 0, 1, 2
    top = (red, blue, green, EMPTY, EMPTY, EMPTY)
    bottom = (blue, green, red, blue, green, red)
    instance = Instance(make_cylinder(6), TypeProfile((3, 3, 3)))
    return instance, Assignment(top + bottom)


# --------------------------------------------------------------------------- #
# Potentials
# --------------------------------------------------------------------------- #
class Direction(str, Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"


class PotentialKind(str, Enum):
    SW = "sw"
    DEG2 = "deg2"
    THREE_REG_TWO_EMPTY = "3reg"

    @property
    def direction(self) -> Direction:
        if self is PotentialKind.THREE_REG_TWO_EMPTY:
            return Direction.DECREASING
        return Direction.INCREASING


def check_potential_applicable(instance: Instance, kind: PotentialKind) -> None:
    graph = instance.graph
    if kind is PotentialKind.DEG2 and graph.max_degree > 2:
        raise InapplicableError(
            f"2*CE + c needs maximum degree <= 2; {graph.family} has {graph.max_degree}"
        )
    if kind is PotentialKind.THREE_REG_TWO_EMPTY:
        if not graph.is_regular(3):
            raise InapplicableError(f"2(TE + M) + B needs a 3-regular graph; got {graph.family}")
        if instance.empty_count != 2:
            raise InapplicableError(
                f"2(TE + M) + B needs exactly 2 empty nodes; got {instance.empty_count}"
            )


def potential_value(instance: Instance, assignment: Assignment, kind: PotentialKind) -> int:
    check_potential_applicable(instance, kind)
    m = game.metrics(instance, assignment)
    if kind is PotentialKind.SW:
        return m.sw
    if kind is PotentialKind.DEG2:
        return 2 * m.ce + m.c_count
    return 2 * (m.te + m.mono) + m.b


@dataclass
class Counterexample:
    assignment: Assignment
    step: ScoredJump
    detail: str
    before: Optional[int] = None
    after: Optional[int] = None


@dataclass
class AuditReport:
    name: str
    states: int = 0
    checked_jumps: int = 0
    counterexample: Optional[Counterexample] = None
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        line = f"{self.name}: {verdict} ({self.states} states, {self.checked_jumps} jumps)"
        if self.counterexample:
            c = self.counterexample
            line += f"\n  at [{c.assignment}] jump {c.step}: {c.detail}"
        return line


def audit_potential(
    instance: Instance, kind: PotentialKind, budget: Optional[int] = None
) -> AuditReport:
    """Every improving jump from every labeling must move the potential by at least 1
    in the kind's direction."""
    check_potential_applicable(instance, kind)
    game.require_within_budget(instance, budget)
    report = AuditReport(f"potential {kind.value}")
    sign = 1 if kind.direction is Direction.INCREASING else -1
    adjacency = instance.graph.adjacency
    for occ in game.iter_labelings(instance.profile, instance.graph.node_count):
        report.states += 1
        before_assignment = Assignment(occ)
        before = None
        for step in game.iter_improving(adjacency, occ):
            if before is None:
                before = potential_value(instance, before_assignment, kind)
            after = potential_value(
                instance, Assignment(game.moved(occ, step.jump.source, step.jump.dest)), kind
            )
            report.checked_jumps += 1
            if sign * (after - before) < 1:
                report.counterexample = Counterexample(
                    before_assignment, step, f"potential {before} -> {after}", before, after
                )
                return report
    return report


def _count_type(adjacency, occ, node: int, agent_type: int, skip: int = -1) -> int:
    return sum(1 for u in adjacency[node] if u != skip and occ[u] == agent_type)


def audit_lemma_jump(instance: Instance, budget: Optional[int] = None) -> AuditReport:
    """
    For every improving jump s -> d: tau_d before the jump is at least tau_s after
    it; on equality the mover gains exactly 1, the monochromatic edge count drops,
    and no monochromatic edge appears at d.
    """
    game.require_within_budget(instance, budget)
    report = AuditReport("jump type-count")
    adjacency = instance.graph.adjacency
    for occ in game.iter_labelings(instance.profile, instance.graph.node_count):
        report.states += 1
        for step in game.iter_improving(adjacency, occ):
            report.checked_jumps += 1
            s, d, t = step.jump
            after = game.moved(occ, s, d)
            tau_d = game.raw_type_count(adjacency, occ, d)
            tau_s = game.raw_type_count(adjacency, after, s)
            detail = None
            if tau_d < tau_s:
                detail = f"tau_d={tau_d} < tau_s'={tau_s}"
            elif tau_d == tau_s:
                created = _count_type(adjacency, occ, d, t, skip=s)
                delta_m = created - _count_type(adjacency, occ, s, t)
                gain = step.new_utility - step.old_utility
                if gain != 1:
                    detail = f"tau equal ({tau_d}) but utility gain {gain}"
                elif delta_m >= 0:
                    detail = f"tau equal ({tau_d}) but monochromatic edges change by {delta_m}"
                elif created:
                    detail = f"tau equal ({tau_d}) but {created} monochromatic edge(s) at d"
            if detail:
                report.counterexample = Counterexample(Assignment(occ), step, detail)
                return report
    return report
