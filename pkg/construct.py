#!/usr/bin/env python3
"""
Equilibrium constructors for trees, 2 x m cylinders and m1 x m2 tori.

Every constructor returns a Construction whose assignment has been checked
with game.is_equilibrium and whose stability certificate has been checked
with verify_certificate. Cylinder and torus layouts work on a canonical
profile sorted ascending (T_1 smallest, T_k largest); the type_map of the
result maps canonical ids back to the caller's ids.

Where a case leaves a layout choice open, the constructor yields several
deterministic candidates and keeps the first that verifies. If none does, a
bounded first-improving run from the primary candidate is tried before giving
up with ConstructionError.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

import config
import game
from dynamics import ResponsePolicy, Status, run_dynamics
from errors import ConstructionError, InapplicableError, InvalidParameterError
from game import EMPTY, Assignment, Instance
from graph import FamilyTag, is_tree

log = logging.getLogger(__name__)

Placement = Dict[int, int]
Candidate = Tuple[str, Optional[Placement], List[str]]


# --------------------------------------------------------------------------- #
# Certificates
# --------------------------------------------------------------------------- #
class Property(str, Enum):
    P1 = "P1"  # every agent has utility >= 1, every empty node has tau <= 1
    P0 = "P0"  # empties touch only the designated type; other agents have utility >= 1
    DIRECT = "direct"  # neither property; equilibrium checked jump by jump


@dataclass(frozen=True)
class StabilityCertificate:
    prop: Property
    designated_type: Optional[int] = None

    def __str__(self) -> str:
        if self.prop is Property.P0:
            return f"P0 (type {self.designated_type})"
        return self.prop.value


@dataclass
class Construction:
    assignment: Assignment
    certificate: StabilityCertificate
    case: str
    notes: List[str] = field(default_factory=list)
    type_map: Tuple[int, ...] = ()

    def explain(self) -> List[str]:
        lines = [f"case: {self.case}", f"certificate: {self.certificate}"]
        if self.type_map:
            lines.append(
                "canonical types: "
                + ", ".join(f"T_{i + 1}={t}" for i, t in enumerate(self.type_map))
            )
        lines.extend(f"note: {note}" for note in self.notes)
        return lines


def _agents_satisfied(adjacency, occ, skip: Optional[int] = None) -> bool:
    return all(
        game.raw_utility(adjacency, occ, v) >= 1
        for v, t in enumerate(occ)
        if t != EMPTY and t != skip
    )


def certify(instance: Instance, assignment: Assignment) -> Optional[StabilityCertificate]:
    """Strongest certificate the assignment satisfies, or None if it is not stable."""
    adjacency, occ = instance.graph.adjacency, assignment.occupancy
    empties = assignment.empty_nodes()
    if _agents_satisfied(adjacency, occ) and all(
        game.raw_type_count(adjacency, occ, e) <= 1 for e in empties
    ):
        return StabilityCertificate(Property.P1)
    bordering = {occ[u] for e in empties for u in adjacency[e]} - {EMPTY}
    if len(bordering) == 1:
        (designated,) = bordering
        if _agents_satisfied(adjacency, occ, skip=designated):
            return StabilityCertificate(Property.P0, designated)
    if game.is_equilibrium(instance, assignment):
        return StabilityCertificate(Property.DIRECT)
    return None


def _property_holds(
    instance: Instance, assignment: Assignment, certificate: StabilityCertificate
) -> bool:
    adjacency, occ = instance.graph.adjacency, assignment.occupancy
    empties = assignment.empty_nodes()
    if certificate.prop is Property.P1:
        return _agents_satisfied(adjacency, occ) and all(
            game.raw_type_count(adjacency, occ, e) <= 1 for e in empties
        )
    if certificate.prop is Property.P0:
        designated = certificate.designated_type
        for e in empties:
            if any(occ[u] not in (EMPTY, designated) for u in adjacency[e]):
                return False
        return _agents_satisfied(adjacency, occ, skip=designated)
    return bool(game.is_equilibrium(instance, assignment))


def verify_certificate(
    instance: Instance, assignment: Assignment, certificate: StabilityCertificate
) -> bool:
    """Literal check of the claimed property; a property that holds must imply stability."""
    game.validate_assignment(instance, assignment)
    holds = _property_holds(instance, assignment, certificate)
    if holds and certificate.prop is not Property.DIRECT:
        verdict = game.is_equilibrium(instance, assignment)
        if not verdict:
            raise ConstructionError(
                f"Certificate {certificate} holds but jump {verdict.witness} improves.\n"
                "This contradicts the stability argument; please report the instance."
            )
    return holds


# --------------------------------------------------------------------------- #
# Shared plumbing
# --------------------------------------------------------------------------- #
def _canonical(counts: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Counts sorted ascending and the map canonical id -> caller id."""
    order = tuple(sorted(range(len(counts)), key=lambda t: (counts[t], t)))
    return tuple(counts[t] for t in order), order


def _translate(
    instance: Instance, placement: Placement, type_map: Tuple[int, ...]
) -> Assignment:
    return game.assignment_from_placement(
        instance, {node: type_map[t] for node, t in placement.items()}
    )


def _certified(
    instance: Instance,
    assignment: Assignment,
    case: str,
    notes: List[str],
    type_map: Tuple[int, ...] = (),
) -> Construction:
    certificate = certify(instance, assignment)
    if certificate is None or not verify_certificate(instance, assignment, certificate):
        raise ConstructionError(
            f"Case {case} produced an unstable assignment on {instance.graph.family}.\n"
            f"  assignment: {assignment}"
        )
    log.info("%s: case %s, certificate %s", instance.graph.family, case, certificate)
    return Construction(assignment, certificate, case, notes, type_map)


def _first_verified(
    instance: Instance, candidates: Iterable[Candidate], type_map: Tuple[int, ...]
) -> Construction:
    primary = None
    for case, placement, notes in candidates:
        if placement is None:
            continue
        try:
            assignment = _translate(instance, placement, type_map)
        except InvalidParameterError as e:
            log.warning("case %s: layout does not match the profile (%s)", case, e)
            continue
        if primary is None:
            primary = (case, assignment, notes)
        if game.is_equilibrium(instance, assignment):
            return _certified(instance, assignment, case, notes, type_map)
        log.debug("case %s: candidate rejected (%s)", case, "; ".join(notes) or "primary")
    if primary is None:
        raise ConstructionError(f"No layout produced for {instance.graph.family}.")
    case, assignment, notes = primary
    outcome = run_dynamics(instance, assignment, ResponsePolicy())
    if outcome.status is Status.EQUILIBRIUM:
        log.warning(
            "case %s on %s needed %d repair jumps", case, instance.graph.family, len(outcome.trace)
        )
        notes = notes + [f"repaired with {len(outcome.trace)} first-improving jumps"]
        return _certified(instance, outcome.final, f"{case}+repair", notes, type_map)
    raise ConstructionError(
        f"Case {case} on {instance.graph.family} with profile {instance.profile} "
        "failed verification and repair.\n"
        f"  primary layout: {assignment}\n"
        f"  repair run ended with {outcome.status.value} after {len(outcome.trace)} jumps"
    )


def _exhaustive(instance: Instance, case: str) -> Construction:
    game.require_within_budget(instance)
    adjacency = instance.graph.adjacency
    for occ in game.iter_labelings(instance.profile, instance.graph.node_count):
        if next(game.iter_improving(adjacency, occ), None) is None:
            return _certified(instance, Assignment(occ), case, ["first equilibrium in lex order"])
    raise ConstructionError(f"No equilibrium among the labelings of {instance.graph.family}.")


def _by_dynamics(instance: Instance, case: str) -> Construction:
    start = next(game.iter_labelings(instance.profile, instance.graph.node_count))
    outcome = run_dynamics(instance, Assignment(start), ResponsePolicy())
    if outcome.status is not Status.EQUILIBRIUM:
        raise ConstructionError(
            f"First-improving dynamics on {instance.graph.family} stopped with "
            f"{outcome.status.value} after {len(outcome.trace)} jumps.\n"
            "A potential function guarantees convergence here; please report the instance."
        )
    notes = [f"first-improving dynamics converged after {len(outcome.trace)} jumps"]
    return _certified(instance, outcome.final, case, notes)


# --------------------------------------------------------------------------- #
# Trees
# --------------------------------------------------------------------------- #
def _tree_options(
    node: int,
    children: Dict[int, List[int]],
    types: Dict[int, int],
    remaining: List[int],
    red: int,
) -> List[int]:
    def satisfied(c: int) -> bool:
        return types[c] == red or any(types[g] != types[c] for g in children[c])

    blocked = {types[c] for c in children[node] if not satisfied(c)}
    kid_types = {types[c] for c in children[node]}
    options = [t for t, left in enumerate(remaining) if left > 0 and t not in blocked]
    others = sorted(
        (t for t in options if t != red),
        key=lambda t: (not (kid_types - {t}), -remaining[t], t),
    )
    if red not in options:
        return others
    return [red] + others if blocked else others + [red]


def _tree_inner_stage(
    adjacency, kept: List[int], parent: Dict[int, int], anchor: int, counts, red: int
) -> Dict[int, int]:
    """
    Types for every kept node except the root: the anchor is red and every
    non-red agent has a foreign neighbor. Children are typed before parents;
    a parent may not repeat the type of a child that is still unsatisfied.
    """
    kept_set = set(kept)
    children = {
        x: [c for c in adjacency[x] if c in kept_set and parent.get(c) == x] for x in kept
    }
    order = list(reversed(kept[2:]))
    remaining = list(counts)
    remaining[red] -= 1
    types = {anchor: red}
    options: List[Optional[List[int]]] = [None] * len(order)
    i = steps = 0
    while i < len(order):
        x = order[i]
        if options[i] is None:
            options[i] = _tree_options(x, children, types, remaining, red)
        if not options[i]:
            options[i] = None
            i -= 1
            if i < 0:
                raise ConstructionError(
                    f"No inner labeling of the {len(kept)}-node subtree meets the "
                    "foreign-neighbor condition."
                )
            remaining[types.pop(order[i])] += 1
            continue
        t = options[i].pop(0)
        types[x] = t
        remaining[t] -= 1
        i += 1
        steps += 1
        if steps > config.TREE_SEARCH_LIMIT:
            raise ConstructionError(
                f"Inner labeling search gave up after {config.TREE_SEARCH_LIMIT} steps."
            )
    return types


def construct_tree_equilibrium(instance: Instance) -> Construction:
    """
    Root the tree at its smallest leaf, keep the first n + 1 nodes in BFS order,
    label them so every non-red agent sees a foreign neighbor, then move red
    agents with utility 0 onto empty nodes next to non-red agents.
    """
    graph = instance.graph
    if not is_tree(graph):
        raise InapplicableError(f"tree constructor needs a tree; {graph.family} has cycles")
    adjacency = graph.adjacency
    counts = instance.profile.counts
    root = min(v for v in range(graph.node_count) if len(adjacency[v]) == 1)
    bfs = list(nx.bfs_edges(graph.to_networkx(), root, sort_neighbors=sorted))
    kept = ([root] + [child for _, child in bfs])[: instance.n + 1]
    parent = {child: par for par, child in bfs}
    anchor = adjacency[root][0]
    red = max(range(instance.k), key=lambda t: (counts[t], -t))
    inner = _tree_inner_stage(adjacency, kept, parent, anchor, counts, red)

    occ = [EMPTY] * graph.node_count
    for node, t in inner.items():
        occ[node] = t
    stuck = sorted(
        v for v, t in enumerate(occ) if t == red and game.raw_utility(adjacency, occ, v) == 0
    )
    targets = sorted(
        e
        for e, t in enumerate(occ)
        if t == EMPTY and any(occ[u] not in (EMPTY, red) for u in adjacency[e])
    )
    for source, dest in zip(stuck, targets):
        occ[dest], occ[source] = red, EMPTY
    assignment = Assignment(tuple(occ))
    game.validate_assignment(instance, assignment)

    if len(stuck) <= len(targets):
        certificate = StabilityCertificate(Property.P1)
    else:
        certificate = StabilityCertificate(Property.P0, red)
    notes = [
        f"root {root}, red type {red} at {anchor}, pruned {graph.node_count - len(kept)} nodes",
        f"{len(stuck)} red agents with utility 0, {len(targets)} empty nodes next to other types",
    ]
    if not verify_certificate(instance, assignment, certificate):
        raise ConstructionError(
            f"Tree layout does not satisfy {certificate}.\n  assignment: {assignment}"
        )
    log.info("tree of %d nodes: certificate %s", graph.node_count, certificate)
    return Construction(assignment, certificate, "tree", notes)


# --------------------------------------------------------------------------- #
# Cylinders
# --------------------------------------------------------------------------- #
def _ordered_pairs(counts: Sequence[int]) -> Tuple[List[Tuple[int, int]], int]:
    """n_1 pairs (T_1, T_2), then the rest of T_2 with T_3, ...; returns pairs and leftover T_k."""
    remaining = list(counts)
    pairs: List[Tuple[int, int]] = []
    for j in range(len(remaining) - 1):
        take = remaining[j]
        pairs.extend([(j, j + 1)] * take)
        remaining[j + 1] -= take
        remaining[j] = 0
    return pairs, remaining[-1]


def _cylinder_case1(m: int, counts: Sequence[int]) -> Iterator[Candidate]:
    k = len(counts)
    placement = {}
    for i, t in enumerate(range(k - 1, -1, -1)):
        placement[i if i < m else m + (i - m)] = t
    yield "1", placement, ["all agents in the top row" if k <= m else "top row, then bottom"]


def _cylinder_case2(m: int, counts: Sequence[int]) -> Iterator[Candidate]:
    k = len(counts)
    z = counts.index(2)
    seq = list(range(k - 1, -1, -1)) + list(range(k - 1, z - 1, -1))
    if len(seq) <= m:
        yield "2a", dict(enumerate(seq)), []
        return
    head, tail = seq[:m], seq[m:]
    shifted = k in (m, m + 1)
    preferred = [m - 2, m - 1] if shifted else [m - 1, m - 2]
    for start in preferred + [s for s in range(m) if s not in preferred]:
        placement = dict(enumerate(head))
        placement.update({m + (start + j) % m: t for j, t in enumerate(tail)})
        label = "2b-shift" if shifted and start == m - 2 else "2b"
        yield label, placement, [f"bottom run starts at column {start}"]


def _column(m: int, col: int, pair: Tuple[int, int], big: int, big_on_top: bool) -> Placement:
    top, bottom = pair if (pair[0] == big) == big_on_top else pair[::-1]
    return {col: top, m + col: bottom}


def _cylinder_case3(m: int, counts: Sequence[int]) -> Iterator[Candidate]:
    k, n = len(counts), sum(counts)
    big = k - 1
    a = m - (2 * m - n) // 2  # columns 0..a-1 hold agents; V_e is the rest
    pairs, unpaired = _ordered_pairs(counts)
    notes = [f"empty block from column {a}", f"{len(pairs)} ordered pairs, {unpaired} unpaired"]

    def fill(cols: Iterable[int], chosen: Sequence[Tuple[int, int]], flip: bool) -> Placement:
        out = {}
        for col, (x, y) in zip(cols, chosen):
            out[col], out[m + col] = (y, x) if flip else (x, y)
        return out

    if n % 2 == 0:
        pairs = pairs + [(big, big)] * (unpaired // 2)
        for flip in (False, True):
            placement = fill(range(a - 2, -1, -1), pairs[:-1], flip)
            placement.update(fill([a - 1], pairs[-1:], flip))
            yield "3-even", placement, notes
        return

    if unpaired == 1:
        *rest, p1, p2 = pairs
        for beside_e1, beside_e3 in ((p1, p2), (p2, p1)):
            for flip in (False, True):
                placement = {m + a - 1: big}
                placement.update(_column(m, a - 2, beside_e1, big, big_on_top=True))
                placement.update(_column(m, 0, beside_e3, big, big_on_top=False))
                placement.update(fill(range(1, a - 2), rest, flip))
                yield "3a", placement, notes
    elif unpaired == 3:
        (x, y), *rest = pairs
        for split in ((x, y), (y, x)):
            placement = {a - 2: big, m + a - 1: big, m: big, m + a - 2: split[0], 0: split[1]}
            placement.update(fill(range(1, a - 2), rest, False))
            yield "3b", placement, notes
    else:
        placement = {m + a - 1: big, a - 2: big, m + a - 2: big, 0: big, m: big}
        slots = [node for col in range(1, a - 2) for node in (col, m + col)]
        agents = [t for pair in pairs for t in pair] + [big] * (unpaired - 5)
        placement.update(zip(slots, agents))
        yield "3c", placement, notes


def construct_cylinder_equilibrium(instance: Instance) -> Construction:
    """Case analysis on the size of the largest type; small and two-type games use dynamics."""
    graph = instance.graph
    if graph.family.tag is not FamilyTag.CYLINDER:
        raise InapplicableError(f"cylinder constructor needs a 2 x m cylinder, got {graph.family}")
    m = graph.row_width()
    if instance.n <= 3:
        return _exhaustive(instance, "n<=3")
    if instance.empty_count <= 2 or instance.k == 2:
        return _by_dynamics(instance, "dynamics")
    counts, type_map = _canonical(instance.profile.counts)
    largest = counts[-1]
    if largest == 1:
        candidates = _cylinder_case1(m, counts)
    elif largest == 2:
        candidates = _cylinder_case2(m, counts)
    else:
        candidates = _cylinder_case3(m, counts)
    return _first_verified(instance, candidates, type_map)


# --------------------------------------------------------------------------- #
# Tori
# --------------------------------------------------------------------------- #
def _torus_sequence(counts: Sequence[int]) -> Tuple[List[int], int]:
    """Alternating T_1,T_2,T_1,T_2,T_3,T_2,... without T_k; also returns |X| (leftover T_{k-1})."""
    remaining = list(counts)
    seq: List[int] = []
    for low in range(len(counts) - 2):
        high = low + 1
        while remaining[low] > 0:
            seq.extend((high, low) if seq and seq[-1] == low else (low, high))
            remaining[low] -= 1
            remaining[high] -= 1
    return seq, remaining[-2]


def _snake(m1: int, m2: int, available: Set[int]) -> List[int]:
    """Row-by-row walk over the available nodes, starting at the sparsest row."""
    rows = {r: [c for c in range(m2) if r * m2 + c in available] for r in range(m1)}
    filled = [r for r in range(m1) if rows[r]]
    if not filled:
        return []
    start = min(filled, key=lambda r: (len(rows[r]), r))
    walk: List[int] = []
    here: Optional[int] = None
    for step in range(m1):
        r = (start + step) % m1
        if rows[r]:
            cols = _row_walk(rows[r], m2, here)
            walk.extend(r * m2 + c for c in cols)
            here = cols[-1]
    return walk


def _row_walk(cols: List[int], m2: int, here: Optional[int]) -> List[int]:
    if len(cols) == m2:
        first = 0 if here is None else here
        return [(first + j) % m2 for j in range(m2)]
    present = set(cols)
    segments = []
    for c in cols:
        if (c - 1) % m2 not in present:
            seg = [c]
            while (seg[-1] + 1) % m2 in present:
                seg.append((seg[-1] + 1) % m2)
            segments.append(seg)
    position = 0 if here is None else here

    def dist(c: int) -> int:
        d = abs(c - position) % m2
        return min(d, m2 - d)

    walk: List[int] = []
    while segments:
        seg = min(segments, key=lambda s: (min(dist(s[0]), dist(s[-1])), s[0]))
        segments.remove(seg)
        if dist(seg[-1]) < dist(seg[0]):
            seg = seg[::-1]
        walk.extend(seg)
        position = seg[-1]
    return walk


def _greedy_fill(
    adjacency,
    placement: Placement,
    order: List[int],
    remaining: List[int],
    needs_foreign: Callable[[int], bool],
) -> Optional[Placement]:
    """
    Type the nodes of `order` one by one so that every agent whose type needs
    it ends with a foreign neighbor. A node never repeats the type of an
    unsatisfied neighbor for which it is the last chance.
    """
    types = dict(placement)
    remaining = list(remaining)
    position = {v: i for i, v in enumerate(order)}

    def satisfied(u: int) -> bool:
        return any(w in types and types[w] != types[u] for w in adjacency[u])

    def later(u: int, after: int) -> bool:
        return any(w not in types and position.get(w, -1) > after for w in adjacency[u])

    for i, v in enumerate(order):
        forbidden = set()
        for u in adjacency[v]:
            if u in types and needs_foreign(types[u]) and not satisfied(u) and not later(u, i):
                forbidden.add(types[u])
        seen = {types[u] for u in adjacency[v] if u in types}
        more = later(v, i)
        viable = [
            t
            for t, left in enumerate(remaining)
            if left > 0 and t not in forbidden and (not needs_foreign(t) or (seen - {t}) or more)
        ]
        if not viable:
            return None
        t = min(viable, key=lambda t: (not (seen - {t}), -remaining[t], t))
        types[v] = t
        remaining[t] -= 1
    return types


@dataclass
class _Torus:
    m1: int
    m2: int
    adjacency: Tuple[Tuple[int, ...], ...]
    counts: Tuple[int, ...]

    @property
    def big(self) -> int:
        return len(self.counts) - 1

    def node(self, r: int, c: int) -> int:
        return (r % self.m1) * self.m2 + c % self.m2

    def outside(self, area: Set[int]) -> List[int]:
        return sorted({u for a in area for u in self.adjacency[a] if u not in area})

    def corner_neighbors(self, area: Set[int]) -> List[int]:
        corners = [
            a for a in area if sum(1 for u in self.adjacency[a] if u not in area) >= 2
        ]
        return sorted({u for a in corners for u in self.adjacency[a] if u not in area})


def _place_surplus(
    torus: _Torus, placement: Placement, surplus: int, first_rows: int
) -> Tuple[Placement, str]:
    """Put the T_k agents that did not fit the sequence next to other types."""
    adjacency, big = torus.adjacency, torus.big
    occ = dict(placement)
    node_count = torus.m1 * torus.m2

    def foreign_next_to(v: int) -> bool:
        return any(u in occ and occ[u] != big for u in adjacency[v])

    frontier = [e for e in range(node_count) if e not in occ and foreign_next_to(e)]
    if surplus >= len(frontier):
        for e in frontier:
            occ[e] = big
        rest = [e for e in range(node_count) if e not in occ][: surplus - len(frontier)]
        for e in rest:
            occ[e] = big
        return occ, "surplus encloses every empty node next to another type"

    priority = sorted(range(node_count), key=lambda v: (v // torus.m2 >= first_rows, v))
    progress = True
    while surplus and progress:
        progress = False
        for e in priority:
            if surplus == 0:
                break
            if e in occ or not foreign_next_to(e):
                continue
            exposed = [f for f in adjacency[e] if f not in occ and foreign_next_to(f)]
            if not exposed:
                occ[e] = big
                surplus -= 1
                progress = True
            elif len(exposed) == 1 and surplus >= 2:
                f = exposed[0]
                occ[e] = big
                if any(g not in occ and foreign_next_to(g) for g in adjacency[f]):
                    del occ[e]
                    continue
                occ[f] = big
                surplus -= 2
                progress = True
    if surplus:
        leftovers = [e for e in range(node_count) if e not in occ and foreign_next_to(e)]
        leftovers += [e for e in range(node_count) if e not in occ and e not in leftovers]
        for e in leftovers[:surplus]:
            occ[e] = big
        return occ, f"{surplus} surplus agents placed without a stability guarantee"
    return occ, "surplus placed beside other types"


def _torus_case1(torus: _Torus, seq_l: List[int], x_count: int) -> Iterator[Candidate]:
    big = torus.big
    items = seq_l + [big - 1] * x_count
    cut = max(0, len(items) - torus.counts[-1])
    seq = items[:cut]
    for item in items[cut:]:
        seq.extend((item, big))
    surplus = torus.counts[-1] - (len(items) - cut)
    width = torus.m2 - 2
    rows = len(seq) // width
    hat, tail = seq[: rows * width], seq[rows * width:]
    if len(tail) == 1:
        tail = []
        surplus += 1
    placement: Placement = {}
    for idx, t in enumerate(hat):
        r, c = divmod(idx, width)
        placement[torus.node(r, c + 1)] = t
    for idx, t in enumerate(tail):
        placement[torus.node(rows + 2, idx + 1)] = t
    notes = [f"{rows} full rows of {width}, {len(tail)} agents two rows below"]
    if surplus:
        placement, how = _place_surplus(torus, placement, surplus, rows)
        notes.append(how)
    yield "1", placement, notes


def _rows_area(torus: _Torus, empties: int) -> Set[int]:
    full, partial = divmod(empties, torus.m2)
    area = {torus.node(r, c) for r in range(full) for c in range(torus.m2)}
    area |= {torus.node(full, c) for c in range(partial)}
    return area


def _columns_area(torus: _Torus, empties: int) -> Set[int]:
    area = {torus.node(r, 0) for r in range((empties + 1) // 2)}
    area |= {torus.node(r, 1) for r in range(empties // 2)}
    return area


def _torus_enclose(
    torus: _Torus, area: Set[int], seq_l: List[int], x_count: int, label: str
) -> Iterator[Candidate]:
    big, second = torus.big, torus.big - 1
    border = torus.outside(area)
    placement: Placement = {b: big for b in border}
    spare_big, spare_x = torus.counts[-1] - len(border), x_count
    alternating: List[int] = []
    while spare_big > 0 and spare_x > 0:
        alternating.extend((big, second))
        spare_big -= 1
        spare_x -= 1
    notes = [f"{len(border)} agents of T_k enclose {len(area)} empty nodes"]

    filled = dict(placement)
    ok = True
    if spare_x:
        outer = [u for u in torus.outside(area | set(border)) if u not in filled]
        if len(outer) >= spare_x:
            filled.update({u: second for u in outer[:spare_x]})
        else:
            ok = False
        tail: List[int] = []
    else:
        tail = [big] * spare_big
    if ok:
        free = set(range(torus.m1 * torus.m2)) - area - set(filled)
        filled.update(zip(_snake(torus.m1, torus.m2, free), seq_l + alternating + tail))
        yield label, filled, notes + [f"Y: {spare_x or spare_big} agents"]

    free = set(range(torus.m1 * torus.m2)) - area - set(placement)
    remaining = list(torus.counts)
    remaining[big] -= len(border)
    greedy = _greedy_fill(
        torus.adjacency, placement, _snake(torus.m1, torus.m2, free), remaining,
        lambda t: t != big,
    )
    yield label, greedy, notes + ["greedy fill"]


def _torus_corners(
    torus: _Torus, area: Set[int], seq_l: List[int], x_count: int, label: str
) -> Iterator[Candidate]:
    big, second = torus.big, torus.big - 1
    corner_nbrs = torus.corner_neighbors(area)
    placement: Placement = {u: big for u in corner_nbrs}
    notes = [f"{len(corner_nbrs)} agents of T_k cover the corners"]
    walk = _snake(torus.m1, torus.m2, set(range(torus.m1 * torus.m2)) - area)

    border = set(torus.outside(area))
    filled = dict(placement)
    spare_big = torus.counts[-1] - len(corner_nbrs)
    run = [v for v in walk if v in border and v not in filled][:spare_big]
    filled.update({v: big for v in run})
    beside = [
        v for v in walk if v not in filled and any(filled.get(u) == big for u in torus.adjacency[v])
    ][:x_count]
    filled.update({v: second for v in beside})
    rest = [v for v in walk if v not in filled]
    filled.update(zip(rest, seq_l + [big] * (spare_big - len(run))))
    yield label, filled, notes + [f"{len(run)} more on the border, {len(beside)} of X beside them"]

    remaining = list(torus.counts)
    remaining[big] -= len(corner_nbrs)
    order = [v for v in walk if v not in placement]
    greedy = _greedy_fill(torus.adjacency, placement, order, remaining, lambda t: True)
    yield label, greedy, notes + ["greedy fill"]


def construct_torus_equilibrium(instance: Instance) -> Construction:
    """Needs m1 >= m2 >= 9, k >= 3 and a largest type of at least 8 agents."""
    graph = instance.graph
    if graph.family.tag is not FamilyTag.TORUS:
        raise InapplicableError(f"torus constructor needs a torus, got {graph.family}")
    m1, m2 = graph.family.parameters
    counts, type_map = _canonical(instance.profile.counts)
    problems = []
    if m2 < 9:
        problems.append(f"m2 >= 9 (got {m2})")
    if instance.k < 3:
        problems.append(f"k >= 3 (got {instance.k})")
    if counts[-1] < 8:
        problems.append(f"largest type >= 8 agents (got {counts[-1]})")
    if problems:
        raise InapplicableError(
            "Torus constructor preconditions not met: " + ", ".join(problems) + ".\n"
            "Fix: use `dynamics` on this instance instead."
        )
    torus = _Torus(m1, m2, graph.adjacency, counts)
    seq_l, x_count = _torus_sequence(counts)
    n, size = instance.n, m1 * m2
    empties = size - n
    log.debug("torus %dx%d: |L|=%d, |X|=%d, %d empty nodes", m1, m2, len(seq_l), x_count, empties)
    if n <= 5 * (m2 - 2):
        candidates = _torus_case1(torus, seq_l, x_count)
    elif n <= size - 2 * m2:
        area = _rows_area(torus, empties)
        if counts[-1] >= 2 * m2:
            candidates = _torus_enclose(torus, area, seq_l, x_count, "2a")
        else:
            candidates = _torus_corners(torus, area, seq_l, x_count, "2b")
    else:
        area = _columns_area(torus, empties)
        if counts[-1] >= len(torus.outside(area)):
            candidates = _torus_enclose(torus, area, seq_l, x_count, "3-enclose")
        else:
            candidates = _torus_corners(torus, area, seq_l, x_count, "3-corners")
    return _first_verified(instance, candidates, type_map)


# --------------------------------------------------------------------------- #
# Dispatch
# --------------------------------------------------------------------------- #
def construct_equilibrium(instance: Instance) -> Construction:
    """Pick the constructor for the instance's graph family."""
    tag = instance.graph.family.tag
    if tag is FamilyTag.CYLINDER:
        return construct_cylinder_equilibrium(instance)
    if tag is FamilyTag.TORUS:
        return construct_torus_equilibrium(instance)
    if tag in (FamilyTag.TREE, FamilyTag.LINE) or is_tree(instance.graph):
        return construct_tree_equilibrium(instance)
    raise InapplicableError(
        f"No equilibrium constructor for {instance.graph.family}.\n"
        "Constructors exist for trees, 2 x m cylinders and tori; use `dynamics` otherwise."
    )
