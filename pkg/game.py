#!/usr/bin/env python3
"""
Core game model: type profiles, instances, assignments, utilities, objectives
and the equilibrium predicate.

Assignments are type-labelings: occupancy[v] is the type id living on node v,
or EMPTY. Agents of the same type are interchangeable, so a labeling stands
for every assignment that differs only by permuting same-type agents.
"""
import logging
from dataclasses import dataclass
from math import comb
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import config
from errors import BudgetExceededError, InvalidParameterError
from graph import Graph, rng_for

log = logging.getLogger(__name__)

EMPTY = -1
EMPTY_TOKEN = "E"


@dataclass(frozen=True)
class TypeProfile:
    """Number of agents per type; the index is the type id."""

    counts: Tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) < 2:
            raise InvalidParameterError(f"need k >= 2 types, got profile {list(self.counts)}")
        if any(c < 1 for c in self.counts):
            raise InvalidParameterError(f"every type needs at least one agent: {list(self.counts)}")

    @classmethod
    def parse(cls, text: str) -> "TypeProfile":
        try:
            counts = tuple(int(part) for part in text.replace(" ", "").split(",") if part)
        except ValueError as e:
            raise InvalidParameterError(
                f"bad profile {text!r}; expected comma-separated counts like 3,2,2"
            ) from e
        return cls(counts)

    @property
    def k(self) -> int:
        return len(self.counts)

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def max_count(self) -> int:
        return max(self.counts)

    def symmetric(self) -> bool:
        return len(set(self.counts)) == 1

    def __str__(self) -> str:
        return ",".join(map(str, self.counts))


@dataclass(frozen=True)
class Instance:
    graph: Graph
    profile: TypeProfile

    def __post_init__(self):
        if self.profile.n >= self.graph.node_count:
            raise InvalidParameterError(
                f"{self.profile.n} agents need more than {self.graph.node_count} nodes "
                "(at least one node must stay empty)"
            )

    @property
    def n(self) -> int:
        return self.profile.n

    @property
    def k(self) -> int:
        return self.profile.k

    @property
    def empty_count(self) -> int:
        return self.graph.node_count - self.profile.n

    @property
    def symmetric(self) -> bool:
        return self.profile.symmetric()


@dataclass(frozen=True)
class Assignment:
    occupancy: Tuple[int, ...]

    @classmethod
    def from_tokens(cls, tokens: Sequence) -> "Assignment":
        """Accepts type ids and "E" / None for empty nodes."""
        values = []
        for token in tokens:
            if token is None or (isinstance(token, str) and token.upper() == EMPTY_TOKEN):
                values.append(EMPTY)
            else:
                try:
                    values.append(int(token))
                except (TypeError, ValueError) as e:
                    raise InvalidParameterError(f"bad occupancy entry {token!r}") from e
        return cls(tuple(values))

    def tokens(self) -> List:
        return [EMPTY_TOKEN if t == EMPTY else t for t in self.occupancy]

    def key(self) -> bytes:
        """Packed radix string: one byte per node, 0 for empty, t + 1 for type t."""
        return bytes(t + 1 for t in self.occupancy)

    @classmethod
    def from_key(cls, key: bytes) -> "Assignment":
        return cls(tuple(b - 1 for b in key))

    def empty_nodes(self) -> List[int]:
        return [v for v, t in enumerate(self.occupancy) if t == EMPTY]

    def occupied_nodes(self) -> List[int]:
        return [v for v, t in enumerate(self.occupancy) if t != EMPTY]

    def __str__(self) -> str:
        return " ".join(str(t) for t in self.tokens())


class Jump(NamedTuple):
    source: int
    dest: int
    agent_type: int

    def reverse(self) -> "Jump":
        return Jump(self.dest, self.source, self.agent_type)

    def __str__(self) -> str:
        return f"{self.agent_type} {self.source}->{self.dest}"


class ScoredJump(NamedTuple):
    jump: Jump
    old_utility: int
    new_utility: int

    def __str__(self) -> str:
        return f"{self.jump} {self.old_utility}->{self.new_utility}"


@dataclass(frozen=True)
class Metrics:
    sw: int
    ce: int
    mono: int
    c_count: int
    te: Optional[int] = None
    b: Optional[int] = None


@dataclass(frozen=True)
class EquilibriumVerdict:
    stable: bool
    witness: Optional[ScoredJump] = None

    def __bool__(self) -> bool:
        return self.stable


def validate_assignment(instance: Instance, assignment: Assignment) -> None:
    occ = assignment.occupancy
    if len(occ) != instance.graph.node_count:
        raise InvalidParameterError(
            f"assignment has {len(occ)} entries for {instance.graph.node_count} nodes"
        )
    counts = [0] * instance.k
    for v, t in enumerate(occ):
        if t == EMPTY:
            continue
        if not 0 <= t < instance.k:
            raise InvalidParameterError(f"node {v} holds unknown type {t} (k={instance.k})")
        counts[t] += 1
    if tuple(counts) != instance.profile.counts:
        raise InvalidParameterError(
            f"assignment type counts {counts} do not match profile {list(instance.profile.counts)}"
        )


# --------------------------------------------------------------------------- #
# Helpers over raw (adjacency, occupancy) tuples; the search loops use these.
# --------------------------------------------------------------------------- #
def raw_utility(adjacency, occ, node: int) -> int:
    own = occ[node]
    return len({occ[u] for u in adjacency[node]} - {EMPTY, own})


def dest_utility(adjacency, occ, source: int, dest: int, agent_type: int) -> int:
    seen = {occ[u] for u in adjacency[dest] if u != source}
    seen.discard(EMPTY)
    seen.discard(agent_type)
    return len(seen)


def raw_type_count(adjacency, occ, node: int) -> int:
    seen = {occ[u] for u in adjacency[node]}
    seen.discard(EMPTY)
    return len(seen)


def iter_improving(adjacency, occ) -> Iterator[ScoredJump]:
    """Improving jumps in ascending (source, dest) order."""
    empties = [v for v, t in enumerate(occ) if t == EMPTY]
    for source, agent_type in enumerate(occ):
        if agent_type == EMPTY:
            continue
        current = raw_utility(adjacency, occ, source)
        for dest in empties:
            new = dest_utility(adjacency, occ, source, dest, agent_type)
            if new > current:
                yield ScoredJump(Jump(source, dest, agent_type), current, new)


def moved(occ: Tuple[int, ...], source: int, dest: int) -> Tuple[int, ...]:
    values = list(occ)
    values[dest] = values[source]
    values[source] = EMPTY
    return tuple(values)


# --------------------------------------------------------------------------- #
# Public operations
# --------------------------------------------------------------------------- #
def utility(instance: Instance, assignment: Assignment, node: int) -> int:
    """Number of distinct foreign types among the neighbors of the agent on node."""
    if assignment.occupancy[node] == EMPTY:
        raise InvalidParameterError(f"node {node} is empty; utility needs an agent")
    return raw_utility(instance.graph.adjacency, assignment.occupancy, node)


def type_count(instance: Instance, assignment: Assignment, node: int) -> int:
    return raw_type_count(instance.graph.adjacency, assignment.occupancy, node)


def type_count_map(instance: Instance, assignment: Assignment) -> Dict[int, int]:
    """tau for every empty node."""
    adjacency, occ = instance.graph.adjacency, assignment.occupancy
    return {v: raw_type_count(adjacency, occ, v) for v, t in enumerate(occ) if t == EMPTY}


def social_welfare(instance: Instance, assignment: Assignment) -> int:
    adjacency, occ = instance.graph.adjacency, assignment.occupancy
    return sum(raw_utility(adjacency, occ, v) for v, t in enumerate(occ) if t != EMPTY)


def colorful_edges(instance: Instance, assignment: Assignment) -> int:
    occ = assignment.occupancy
    return sum(
        1
        for u, v in instance.graph.edges()
        if occ[u] != EMPTY and occ[v] != EMPTY and occ[u] != occ[v]
    )


def monochromatic_edges(instance: Instance, assignment: Assignment) -> int:
    occ = assignment.occupancy
    return sum(1 for u, v in instance.graph.edges() if occ[u] != EMPTY and occ[u] == occ[v])


def metrics(instance: Instance, assignment: Assignment) -> Metrics:
    adjacency, occ = instance.graph.adjacency, assignment.occupancy
    ce = mono = touching_empty = 0
    for u, v in instance.graph.edges():
        if occ[u] == EMPTY or occ[v] == EMPTY:
            touching_empty += 1
        elif occ[u] == occ[v]:
            mono += 1
        else:
            ce += 1
    assert ce + mono + touching_empty == instance.graph.edge_count
    empties = assignment.empty_nodes()
    counts = [raw_type_count(adjacency, occ, e) for e in empties]
    te = b = None
    if len(empties) == 2:
        te = counts[0] + counts[1]
        b = int(empties[1] in adjacency[empties[0]])
    return Metrics(
        sw=social_welfare(instance, assignment),
        ce=ce,
        mono=mono,
        c_count=sum(1 for c in counts if c <= 1),
        te=te,
        b=b,
    )


def improving_jumps(instance: Instance, assignment: Assignment) -> List[ScoredJump]:
    return list(iter_improving(instance.graph.adjacency, assignment.occupancy))


def is_equilibrium(instance: Instance, assignment: Assignment) -> EquilibriumVerdict:
    witness = next(iter_improving(instance.graph.adjacency, assignment.occupancy), None)
    return EquilibriumVerdict(witness is None, witness)


def apply_jump(assignment: Assignment, jump: Jump) -> Assignment:
    occ = assignment.occupancy
    if jump.source == jump.dest:
        raise InvalidParameterError(f"jump {jump} does not move")
    if not (0 <= jump.source < len(occ) and 0 <= jump.dest < len(occ)):
        raise InvalidParameterError(f"jump {jump} leaves the graph")
    if occ[jump.source] != jump.agent_type:
        raise InvalidParameterError(f"jump {jump}: node {jump.source} does not hold that type")
    if occ[jump.dest] != EMPTY:
        raise InvalidParameterError(f"jump {jump}: node {jump.dest} is occupied")
    return Assignment(moved(occ, jump.source, jump.dest))


def assignment_from_placement(instance: Instance, placement: dict) -> Assignment:
    """Build a labeling from {node: type}; unlisted nodes are empty."""
    occ = [EMPTY] * instance.graph.node_count
    for node, agent_type in placement.items():
        occ[node] = agent_type
    assignment = Assignment(tuple(occ))
    validate_assignment(instance, assignment)
    return assignment


def random_assignment(instance: Instance, seed: int) -> Assignment:
    """Uniformly random labeling drawn from PCG64(seed)."""
    values = [EMPTY] * instance.empty_count
    for t, c in enumerate(instance.profile.counts):
        values.extend([t] * c)
    order = rng_for(seed).permutation(len(values))
    return Assignment(tuple(values[int(i)] for i in order))


# --------------------------------------------------------------------------- #
# State space
# --------------------------------------------------------------------------- #
def labeling_count(profile: TypeProfile, node_count: int, first: Optional[int] = None) -> int:
    """Multinomial(|V|; n_1, ..., n_k, |V| - n), optionally with node 0 fixed to `first`."""
    remaining = [node_count - profile.n] + list(profile.counts)
    total = node_count
    if first is not None:
        slot = first + 1
        if remaining[slot] == 0:
            return 0
        remaining[slot] -= 1
        total -= 1
    count = 1
    for part in remaining:
        count *= comb(total, part)
        total -= part
    return count


def iter_labelings(
    profile: TypeProfile, node_count: int, first: Optional[int] = None
) -> Iterator[Tuple[int, ...]]:
    """
    Every type-labeling exactly once, in lexicographic order of the occupancy
    vector (EMPTY sorts first). With `first` set, only labelings whose node 0
    holds that value; concatenating the slices in ascending order of `first`
    gives the full order.
    """
    values = [EMPTY] * (node_count - profile.n)
    for t, c in enumerate(profile.counts):
        values.extend([t] * c)
    prefix: Tuple[int, ...] = ()
    if first is not None:
        if first not in values:
            return
        values.remove(first)
        prefix = (first,)
    values.sort()
    while True:
        yield prefix + tuple(values)
        # next lexicographic permutation of a multiset
        i = len(values) - 2
        while i >= 0 and values[i] >= values[i + 1]:
            i -= 1
        if i < 0:
            return
        j = len(values) - 1
        while values[j] <= values[i]:
            j -= 1
        values[i], values[j] = values[j], values[i]
        values[i + 1:] = reversed(values[i + 1:])


def require_within_budget(instance: Instance, budget: Optional[int] = None) -> int:
    """Number of labelings of the instance; raises when it exceeds the budget."""
    limit = budget if budget is not None else config.state_budget()
    if limit <= 0:
        raise InvalidParameterError(f"budget must be positive, got {limit}")
    count = labeling_count(instance.profile, instance.graph.node_count)
    if count > limit:
        raise BudgetExceededError(count, limit)
    log.debug("state space of %d labelings (budget %d)", count, limit)
    return count
