#!/usr/bin/env python3
"""
Graph representation, audits and generators.

Graphs are immutable values with 0-based dense node ids and sorted adjacency
lists. Cylinders and tori use row-major ids (r * width + c). Generators that
build a special construction also attach a role map naming which nodes play
which part (clique, lines, cycle nodes, ...); role maps partition the nodes.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

import config
from errors import ConstructionError, GiveUpError, InvalidParameterError

log = logging.getLogger(__name__)

Edge = Tuple[int, int]
Roles = Tuple[Tuple[str, Tuple[int, ...]], ...]


class FamilyTag(str, Enum):
    LINE = "line"
    CYCLE = "cycle"
    TREE = "tree"
    CYLINDER = "cylinder"
    TORUS = "torus"
    CLIQUE = "clique"
    CLIQUE_LINES = "clique-lines"
    CLIQUE_CYCLE = "clique-cycle"
    REGULAR_RING = "regular-ring"
    POS_GADGET = "pos-gadget"
    CUSTOM = "custom"


@dataclass(frozen=True)
class GraphFamily:
    tag: FamilyTag = FamilyTag.CUSTOM
    parameters: Tuple[int, ...] = ()

    def __str__(self) -> str:
        if not self.parameters:
            return self.tag.value
        return f"{self.tag.value}({', '.join(map(str, self.parameters))})"


CUSTOM = GraphFamily()


@dataclass(frozen=True)
class Graph:
    """Undirected simple connected graph."""

    node_count: int
    adjacency: Tuple[Tuple[int, ...], ...]
    family: GraphFamily = CUSTOM
    roles: Roles = field(default=(), compare=True)

    def neighbors(self, node: int) -> Tuple[int, ...]:
        return self.adjacency[node]

    def degree(self, node: int) -> int:
        return len(self.adjacency[node])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def is_regular(self, degree: Optional[int] = None) -> bool:
        degrees = {len(a) for a in self.adjacency}
        if len(degrees) != 1:
            return False
        return degree is None or degrees == {degree}

    def edges(self) -> List[Edge]:
        return [(u, v) for u, adj in enumerate(self.adjacency) for v in adj if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def role(self, name: str) -> Tuple[int, ...]:
        for role_name, nodes in self.roles:
            if role_name == name:
                return nodes
        raise KeyError(f"graph {self.family} has no role {name!r}")

    def role_map(self) -> Dict[str, Tuple[int, ...]]:
        return dict(self.roles)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.node_count))
        g.add_edges_from(self.edges())
        return g

    def row_width(self) -> int:
        """Number of columns for cylinder/torus layouts."""
        if self.family.tag is FamilyTag.CYLINDER:
            return self.family.parameters[0]
        if self.family.tag is FamilyTag.TORUS:
            return self.family.parameters[1]
        raise InvalidParameterError(f"{self.family} has no row layout")


# --------------------------------------------------------------------------- #
# Construction and audits
# --------------------------------------------------------------------------- #
def from_edges(
    node_count: int,
    edges: Iterable[Sequence[int]],
    family: GraphFamily = CUSTOM,
    roles: Optional[Dict[str, Sequence[int]]] = None,
) -> Graph:
    """Build and audit a graph from an edge list."""
    if node_count < 1:
        raise InvalidParameterError(f"node_count must be positive, got {node_count}")
    neighbor_sets: List[set] = [set() for _ in range(node_count)]
    for edge in edges:
        if len(edge) != 2:
            raise InvalidParameterError(f"edge {edge!r} is not a pair")
        u, v = int(edge[0]), int(edge[1])
        if not (0 <= u < node_count and 0 <= v < node_count):
            raise InvalidParameterError(f"edge ({u}, {v}) out of range 0..{node_count - 1}")
        if u == v:
            raise InvalidParameterError(f"self-loop at node {u}")
        if v in neighbor_sets[u]:
            raise InvalidParameterError(f"duplicate edge ({u}, {v})")
        neighbor_sets[u].add(v)
        neighbor_sets[v].add(u)
    role_tuple: Roles = ()
    if roles:
        role_tuple = tuple((name, tuple(nodes)) for name, nodes in roles.items())
    graph = Graph(
        node_count=node_count,
        adjacency=tuple(tuple(sorted(s)) for s in neighbor_sets),
        family=family,
        roles=role_tuple,
    )
    audit_graph(graph)
    return graph


def from_networkx(g: nx.Graph, family: GraphFamily = CUSTOM) -> Graph:
    if set(g.nodes) != set(range(g.number_of_nodes())):
        g = nx.convert_node_labels_to_integers(g, ordering="sorted")
    return from_edges(g.number_of_nodes(), g.edges(), family)


def audit_graph(graph: Graph) -> None:
    """Check the simple / symmetric / connected invariants and role partition."""
    problems = []
    if len(graph.adjacency) != graph.node_count:
        problems.append(
            f"adjacency has {len(graph.adjacency)} rows for {graph.node_count} nodes"
        )
    for v, adj in enumerate(graph.adjacency):
        if v in adj:
            problems.append(f"self-loop at node {v}")
        if len(set(adj)) != len(adj):
            problems.append(f"duplicate neighbor at node {v}")
        for u in adj:
            if not 0 <= u < graph.node_count or v not in graph.adjacency[u]:
                problems.append(f"edge ({v}, {u}) is not symmetric")
    if not problems and not nx.is_connected(graph.to_networkx()):
        problems.append("graph is not connected")
    if graph.roles:
        problems.extend(_role_problems(graph.node_count, graph.roles))
    if problems:
        raise InvalidParameterError("Invalid graph:\n  " + "\n  ".join(problems))


def _role_problems(node_count: int, roles: Roles) -> List[str]:
    seen: Dict[int, str] = {}
    problems = []
    for name, nodes in roles:
        for v in nodes:
            if v in seen:
                problems.append(f"node {v} is in roles {seen[v]!r} and {name!r}")
            seen[v] = name
    missing = sorted(set(range(node_count)) - set(seen))
    if missing:
        problems.append(f"nodes without a role: {missing}")
    return problems


def is_tree(graph: Graph) -> bool:
    return nx.is_tree(graph.to_networkx())


def rng_for(seed: int) -> np.random.Generator:
    """The one PRNG used everywhere: numpy's PCG64 bit generator."""
    if seed < 0:
        raise InvalidParameterError(f"seed must be a non-negative integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


# --------------------------------------------------------------------------- #
# Standard families
# --------------------------------------------------------------------------- #
def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidParameterError(message)


def make_line(n: int) -> Graph:
    _require(n >= 2, f"a line needs n >= 2 nodes, got {n}")
    return from_edges(n, nx.path_graph(n).edges(), GraphFamily(FamilyTag.LINE, (n,)))


def make_cycle(n: int) -> Graph:
    _require(n >= 3, f"a cycle needs n >= 3 nodes, got {n}")
    return from_edges(n, nx.cycle_graph(n).edges(), GraphFamily(FamilyTag.CYCLE, (n,)))


def make_cylinder(m: int) -> Graph:
    """2 x m cylinder; node (r, c) has id r * m + c."""
    _require(m >= 3, f"a 2 x m cylinder needs m >= 3, got {m}")
    edges = [(c, m + c) for c in range(m)]
    for r in (0, 1):
        edges.extend((r * m + c, r * m + (c + 1) % m) for c in range(m))
    return from_edges(2 * m, edges, GraphFamily(FamilyTag.CYLINDER, (m,)))


def make_torus(m1: int, m2: int) -> Graph:
    """m1 rows by m2 columns, wrapping both ways; node (r, c) has id r * m2 + c."""
    _require(m2 >= 3, f"a torus needs m2 >= 3 (duplicate edges otherwise), got {m2}")
    _require(m1 >= m2, f"a torus needs m1 >= m2, got {m1} x {m2}")
    g = nx.grid_2d_graph(m1, m2, periodic=True)
    g = nx.relabel_nodes(g, {(r, c): r * m2 + c for r, c in g.nodes})
    return from_edges(m1 * m2, g.edges(), GraphFamily(FamilyTag.TORUS, (m1, m2)))


def make_clique(n: int) -> Graph:
    _require(n >= 1, f"a clique needs n >= 1 nodes, got {n}")
    return from_edges(n, nx.complete_graph(n).edges(), GraphFamily(FamilyTag.CLIQUE, (n,)))


def make_tree(node_count: int, edges: Iterable[Sequence[int]]) -> Graph:
    graph = from_edges(node_count, edges, GraphFamily(FamilyTag.TREE, (node_count,)))
    _require(is_tree(graph), "edge list does not form a tree")
    return graph


def make_random_tree(num_nodes: int, seed: int) -> Graph:
    """Uniform labeled tree decoded from a random Pruefer sequence."""
    _require(num_nodes >= 2, f"a tree needs at least 2 nodes, got {num_nodes}")
    if num_nodes == 2:
        return make_tree(2, [(0, 1)])
    sequence = rng_for(seed).integers(0, num_nodes, size=num_nodes - 2)
    tree = nx.from_prufer_sequence([int(x) for x in sequence])
    return make_tree(num_nodes, tree.edges())


# --------------------------------------------------------------------------- #
# Lower-bound constructions
# --------------------------------------------------------------------------- #
def make_clique_lines(profile: Sequence[int]) -> Tuple[Graph, Dict[str, Tuple[int, ...]]]:
    """
    Clique K_n plus one line per type. Types are taken largest first, so the
    first line belongs to the largest type. Roles: "clique", "line-0", ...
    where line-t belongs to the t-th type in descending order.

    A middle line of one node has no "all but the last" nodes; that node is
    joined to the previous line's last node instead.
    """
    _require(len(profile) >= 2, f"need at least 2 types, got {len(profile)}")
    _require(all(c >= 1 for c in profile), f"type sizes must be positive: {list(profile)}")
    sizes = sorted(profile, reverse=True)
    n = sum(sizes)
    roles: Dict[str, Tuple[int, ...]] = {"clique": tuple(range(n))}
    edges: List[Edge] = list(nx.complete_graph(n).edges())
    lines: List[Tuple[int, ...]] = []
    start = n
    for t, size in enumerate(sizes):
        line = tuple(range(start, start + size))
        start += size
        edges.extend(zip(line, line[1:]))
        roles[f"line-{t}"] = line
        lines.append(line)
    edges.append((0, lines[0][0]))
    k = len(sizes)
    for t in range(1, k):
        anchor = lines[t - 1][-1]
        attached = lines[t] if t == k - 1 else lines[t][:-1] or lines[t]
        edges.extend((anchor, v) for v in attached)
    family = GraphFamily(FamilyTag.CLIQUE_LINES, tuple(sizes))
    graph = from_edges(start, edges, family, roles)
    return graph, graph.role_map()


def make_clique_cycle(n: int, k: int) -> Tuple[Graph, Dict[str, Tuple[int, ...]]]:
    """Clique K_n and cycle c_n joined by one edge; roles "clique" and "cycle" (in order)."""
    _require(k >= 2, f"need at least 2 types, got {k}")
    _require(n >= 3, f"the cycle needs n >= 3 nodes, got {n}")
    _require(n % k == 0 and (n // k) % 2 == 0, f"n/k must be an even integer, got n={n}, k={k}")
    cycle = tuple(range(n, 2 * n))
    edges = list(nx.complete_graph(n).edges())
    edges.extend((cycle[i], cycle[(i + 1) % n]) for i in range(n))
    edges.append((0, cycle[0]))
    roles = {"clique": tuple(range(n)), "cycle": cycle}
    graph = from_edges(2 * n, edges, GraphFamily(FamilyTag.CLIQUE_CYCLE, (n, k)), roles)
    return graph, graph.role_map()


def make_regular_ring_of_cliques(n: int, k: int) -> Tuple[Graph, Dict[str, Tuple[int, ...]]]:
    """
    Cycle v_0..v_{k-1} and k cliques of size n/k + 1; v_l is joined to the
    "attached" nodes of clique (l + 1) mod k, and the remaining "free" clique
    nodes are matched across consecutive cliques. The result is (n/k + 1)-regular.

    For k = 2 the cycle degenerates to one edge, so v_l attaches to all but one
    clique node and the two free nodes are matched to each other.
    Roles: "cycle", "clique-l-attached", "clique-l-free".
    """
    _require(k >= 2, f"need at least 2 types, got {k}")
    _require(n % k == 0, f"k must divide n, got n={n}, k={k}")
    delta = n // k + 1
    _require(delta >= 3, f"degree n/k + 1 must be at least 3, got {delta}")
    free_per_clique = 2 if k >= 3 else 1
    cycle = tuple(range(k))
    edges: List[Edge] = list(nx.cycle_graph(k).edges()) if k >= 3 else [(0, 1)]
    roles: Dict[str, Tuple[int, ...]] = {"cycle": cycle}
    cliques: List[Tuple[int, ...]] = []
    for ell in range(k):
        base = k + ell * delta
        nodes = tuple(range(base, base + delta))
        cliques.append(nodes)
        edges.extend((base + i, base + j) for i in range(delta) for j in range(i + 1, delta))
        roles[f"clique-{ell}-attached"] = nodes[: delta - free_per_clique]
        roles[f"clique-{ell}-free"] = nodes[delta - free_per_clique:]
    for ell in range(k):
        target = (ell + 1) % k
        edges.extend((cycle[ell], v) for v in roles[f"clique-{target}-attached"])
    if k >= 3:
        # last free node of clique l meets first free node of clique l + 1
        for ell in range(k):
            nxt = (ell + 1) % k
            edges.append((roles[f"clique-{ell}-free"][1], roles[f"clique-{nxt}-free"][0]))
    else:
        edges.append((roles["clique-0-free"][0], roles["clique-1-free"][0]))
    node_count = k + k * delta
    graph = from_edges(node_count, edges, GraphFamily(FamilyTag.REGULAR_RING, (n, k)), roles)
    if not graph.is_regular(delta):
        raise ConstructionError(f"ring of cliques for n={n}, k={k} is not {delta}-regular")
    return graph, graph.role_map()


def make_pos_gadget(x: int) -> Tuple[Graph, Dict[str, Tuple[int, ...]]]:
    """Nodes p_1..p_x, q, r, s, t: each p_i meets q, s, t; triangle r-s-t; edge q-r."""
    _require(x >= 1, f"gadget needs x >= 1, got {x}")
    q, r, s, t = x, x + 1, x + 2, x + 3
    edges: List[Edge] = []
    for p in range(x):
        edges.extend([(p, q), (p, s), (p, t)])
    edges.extend([(r, s), (s, t), (r, t), (q, r)])
    roles = {"p": tuple(range(x)), "q": (q,), "r": (r,), "s": (s,), "t": (t,)}
    graph = from_edges(x + 4, edges, GraphFamily(FamilyTag.POS_GADGET, (x,)), roles)
    return graph, graph.role_map()


# --------------------------------------------------------------------------- #
# Random graphs
# --------------------------------------------------------------------------- #
def make_random_connected(num_nodes: int, edge_prob: float, seed: int) -> Graph:
    """
    Erdos-Renyi G(n, p) conditioned on connectivity by rejection.

    Each attempt draws one uniform double per unordered pair (u < v, in
    lexicographic order) from PCG64(seed); pair (u, v) is an edge when the
    draw is below edge_prob.
    """
    _require(num_nodes >= 2, f"need at least 2 nodes, got {num_nodes}")
    _require(0.0 < edge_prob <= 1.0, f"edge_prob must lie in (0, 1], got {edge_prob}")
    rng = rng_for(seed)
    us, vs = np.triu_indices(num_nodes, k=1)
    for attempt in range(config.RANDOM_GRAPH_MAX_TRIES):
        keep = rng.random(us.size) < edge_prob
        g = nx.Graph()
        g.add_nodes_from(range(num_nodes))
        g.add_edges_from(zip(us[keep].tolist(), vs[keep].tolist()))
        if nx.is_connected(g):
            log.debug("G(%d, %.3f) seed=%d connected after %d tries", num_nodes, edge_prob, seed,
                      attempt + 1)
            return from_edges(num_nodes, g.edges())
    raise GiveUpError(
        f"No connected G({num_nodes}, {edge_prob}) sample in "
        f"{config.RANDOM_GRAPH_MAX_TRIES} tries (seed {seed}).\n"
        "Fix: use a higher edge probability."
    )


def make_random_regular(degree: int, num_nodes: int, seed: int) -> Graph:
    """Connected random degree-regular graph; networkx sampler seeded from PCG64(seed)."""
    _require(degree >= 1 and num_nodes > degree, f"no {degree}-regular graph on {num_nodes} nodes")
    _require((degree * num_nodes) % 2 == 0, "degree * num_nodes must be even")
    rng = rng_for(seed)
    for _ in range(config.RANDOM_GRAPH_MAX_TRIES):
        g = nx.random_regular_graph(degree, num_nodes, seed=int(rng.integers(2**32)))
        if nx.is_connected(g):
            return from_edges(num_nodes, g.edges())
    raise GiveUpError(f"No connected {degree}-regular graph on {num_nodes} nodes (seed {seed}).")


def small_connected_graphs(max_nodes: int, min_nodes: int = 2) -> Iterator[Graph]:
    """Every connected graph up to isomorphism with min_nodes..max_nodes nodes (max 7)."""
    _require(max_nodes <= 7, "the graph atlas only covers graphs with up to 7 nodes")
    for g in nx.graph_atlas_g():
        if min_nodes <= g.number_of_nodes() <= max_nodes and nx.is_connected(g):
            yield from_networkx(g)


def make_family(tag: str, params: Sequence[int]) -> Graph:
    """Build a graph from a family name and integer parameters (CLI entry point)."""
    try:
        family = FamilyTag(tag)
    except ValueError:
        names = ", ".join(t.value for t in FamilyTag if t is not FamilyTag.CUSTOM)
        raise InvalidParameterError(f"unknown family {tag!r}; expected one of: {names}")
    builders = {
        FamilyTag.LINE: (make_line, 1),
        FamilyTag.CYCLE: (make_cycle, 1),
        FamilyTag.CYLINDER: (make_cylinder, 1),
        FamilyTag.TORUS: (make_torus, 2),
        FamilyTag.CLIQUE: (make_clique, 1),
        FamilyTag.CLIQUE_CYCLE: (lambda n, k: make_clique_cycle(n, k)[0], 2),
        FamilyTag.REGULAR_RING: (lambda n, k: make_regular_ring_of_cliques(n, k)[0], 2),
        FamilyTag.POS_GADGET: (lambda x: make_pos_gadget(x)[0], 1),
        FamilyTag.TREE: (lambda n, seed=config.DEFAULT_SEED: make_random_tree(n, seed), None),
        FamilyTag.CLIQUE_LINES: (lambda *profile: make_clique_lines(profile)[0], None),
    }
    if family not in builders:
        raise InvalidParameterError(f"family {tag!r} cannot be generated from parameters")
    builder, arity = builders[family]
    if arity is not None and len(params) != arity:
        raise InvalidParameterError(f"{tag} takes {arity} parameter(s), got {len(params)}")
    try:
        return builder(*params)
    except TypeError as e:
        raise InvalidParameterError(f"bad parameters for {tag}: {list(params)}") from e
