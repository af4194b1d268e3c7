# Copyright 2026 The jrplab authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Multi-level aggregation trees and their heavy/light partitioning.

Serving a set of nodes costs the total cost of the minimal subtree
connecting them to the root. The partitioning repeatedly clusters
active subtrees of heavy nodes and, when no heavy node is left,
carves a light cluster of roughly ``sqrt(n)`` nodes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import networkx as nx

from jrplab.core import Partition, PartTag, ServiceFunction, Universe
from jrplab.exact import RatLike, exact_sqrt, le_root_times
from jrplab.exceptions import DomainError, MalformedSpecError, StateError
from jrplab.utils import format_mask, members, popcount

logger = logging.getLogger("jrplab")

ROOT = 0


class MlaInstance(ServiceFunction):
    """
    Node-weighted rooted tree over the universe of request types.

    Node 0 is the root, ``parent[0]`` must be ``None``.
    """

    kind = "mla"

    _universe: Universe
    _parent: Tuple[Optional[int], ...]
    _costs: Tuple[Fraction, ...]

    #: Children of every node in ascending order.
    children: Tuple[Tuple[int, ...], ...]

    #: Bitmask of the path from a node to the root, inclusive.
    path_masks: Tuple[int, ...]

    #: Cost of the path from a node to the root, inclusive.
    path_costs: Tuple[Fraction, ...]

    #: Bitmask of the maximal subtree rooted at a node.
    subtree_masks: Tuple[int, ...]

    #: Depth-first post-order visiting children in ascending order.
    postorder: Tuple[int, ...]

    def __init__(
        self, parent: Sequence[Optional[int]], costs: Sequence[RatLike]
    ) -> None:
        n = len(parent)
        self._universe = Universe(n)
        if len(costs) != n:
            raise MalformedSpecError(f"Tree has {n} nodes but {len(costs)} costs.")
        self._parent = tuple(parent)
        self._costs = tuple(Fraction(c) for c in costs)
        for v, c in enumerate(self._costs):
            if c < 0:
                raise MalformedSpecError(f"Negative cost of node {v}: {c}")
        if self._parent[ROOT] is not None:
            raise MalformedSpecError("Root must not have a parent.")
        graph = nx.DiGraph()
        graph.add_nodes_from(range(n))
        for v in range(1, n):
            p = self._parent[v]
            if p is None or not 0 <= p < n:
                raise MalformedSpecError(f"Node {v} has invalid parent {p!r}.")
            graph.add_edge(p, v)
        if not nx.is_arborescence(graph):
            raise MalformedSpecError("Parent links do not form a tree rooted at 0.")
        self.graph = graph
        self.children = tuple(tuple(sorted(graph.successors(v))) for v in range(n))
        self.postorder = tuple(nx.dfs_postorder_nodes(graph, ROOT))
        path_masks = [0] * n
        path_costs = [Fraction(0)] * n
        for v in nx.dfs_preorder_nodes(graph, ROOT):
            p = self._parent[v]
            above_mask = 0 if p is None else path_masks[p]
            above_cost = Fraction(0) if p is None else path_costs[p]
            path_masks[v] = above_mask | (1 << v)
            path_costs[v] = above_cost + self._costs[v]
        subtree_masks = [0] * n
        for v in self.postorder:
            mask = 1 << v
            for child in self.children[v]:
                mask |= subtree_masks[child]
            subtree_masks[v] = mask
        self.path_masks = tuple(path_masks)
        self.path_costs = tuple(path_costs)
        self.subtree_masks = tuple(subtree_masks)

    def __repr__(self) -> str:
        return f"<{type(self).__name__}: n={self.n}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MlaInstance):
            return NotImplemented
        return self._parent == other._parent and self._costs == other._costs

    def __hash__(self) -> int:
        return hash((self._parent, self._costs))

    @property
    def universe(self) -> Universe:
        return self._universe

    @property
    def parent(self) -> Tuple[Optional[int], ...]:
        return self._parent

    @property
    def costs(self) -> Tuple[Fraction, ...]:
        return self._costs

    def mask_cost(self, mask: int) -> Fraction:
        """Sum of node costs over a set of nodes."""
        return sum((self._costs[v] for v in members(mask)), Fraction(0))

    def closure(self, mask: int) -> int:
        """Nodes of the minimal subtree connecting *mask* to the root."""
        result = 0
        for v in members(mask):
            result |= self.path_masks[v]
        return result

    def _evaluate(self, mask: int) -> Fraction:
        return self.mask_cost(self.closure(mask))


def mla_eval(t: MlaInstance, nodes: int) -> Fraction:
    """Cost of the minimal subtree connecting *nodes* to the root."""
    return t(nodes)


class ActiveSet:
    """
    Nodes that are not clustered yet.

    While partitioning runs, the active nodes form a subtree
    containing the root.
    """

    mask: int

    def __init__(self, t: MlaInstance, mask: Optional[int] = None) -> None:
        self._tree = t
        self.mask = t.universe.full if mask is None else mask
        t.universe.check(self.mask)

    def __repr__(self) -> str:
        return f"<{type(self).__name__}: {format_mask(self.mask)}>"

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.mask >> v & 1)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __bool__(self) -> bool:
        return self.mask != 0

    def subtree(self, v: int) -> int:
        """Active part of the maximal subtree at *v*."""
        return self._tree.subtree_masks[v] & self.mask

    def children(self, v: int) -> List[int]:
        """Active children of *v* in ascending order."""
        return [c for c in self._tree.children[v] if c in self]

    def remove(self, mask: int) -> None:
        if mask & ~self.mask:
            raise StateError(f"Nodes {format_mask(mask & ~self.mask)} are not active.")
        self.mask &= ~mask


def is_heavy(t: MlaInstance, act: ActiveSet, v: int) -> bool:
    """
    Decide whether an active node is heavy.

    Both the cost of its path to the root and the cost of its active
    subtree must be at most ``4 * sqrt(n) * c(v)``.
    """
    t.universe.check_type(v)
    if v not in act:
        raise StateError(f"Node {v} is not active.")
    budget = t.costs[v]
    return le_root_times(t.path_costs[v], 4, t.n, budget) and le_root_times(
        t.mask_cost(act.subtree(v)), 4, t.n, budget
    )


@dataclass(frozen=True)
class MlaCluster:
    """One part created by the partitioning."""

    nodes: int
    tag: PartTag

    #: Node the cluster hangs on: the cluster root for heavy clusters
    #: and light clusters of type I, the shared parent for forests of type II.
    anchor: int

    def __str__(self) -> str:
        return f"{self.tag.value} {format_mask(self.nodes)} at {self.anchor}"


def _squared_at_least(size: int, factor: int, n: int) -> bool:
    # size >= sqrt(factor * n)
    return size * size >= factor * n


def find_light_cluster(
    t: MlaInstance, act: ActiveSet, *, visits: Optional[List[int]] = None
) -> MlaCluster:
    """
    Find a light cluster in the active tree.

    Expects that no active node is heavy. Returns either the whole active
    tree when it has at most ``2 * sqrt(n)`` nodes, an active subtree
    with between ``sqrt(n)`` and ``2 * sqrt(n)`` nodes, or a forest
    of sibling subtrees of the same total size.

    :param visits: one-element counter incremented per inspected node
    """
    if not act:
        raise StateError("No active nodes left.")
    n = t.n
    counter = visits if visits is not None else [0]
    if len(act) ** 2 <= 4 * n:
        counter[0] += 1
        return MlaCluster(act.mask, PartTag.LIGHT_I, ROOT)
    u = ROOT
    while True:
        for child in act.children(u):
            counter[0] += 1
            if popcount(act.subtree(child)) ** 2 > 4 * n:
                u = child
                break
        else:
            break
    kids = act.children(u)
    for child in kids:
        counter[0] += 1
        subtree = act.subtree(child)
        if _squared_at_least(popcount(subtree), 1, n):
            return MlaCluster(subtree, PartTag.LIGHT_I, child)
    forest = 0
    for child in kids:
        counter[0] += 1
        forest |= act.subtree(child)
        if _squared_at_least(popcount(forest), 1, n):
            return MlaCluster(forest, PartTag.LIGHT_II, u)
    raise AssertionError("Active subtree larger than 2*sqrt(n) has enough children.")


@dataclass(frozen=True)
class MlaTrace:
    """Clusters in the order they were created, with a work counter."""

    clusters: Tuple[MlaCluster, ...]

    #: Number of node inspections performed.
    visits: int

    @property
    def heavy(self) -> Tuple[MlaCluster, ...]:
        return tuple(c for c in self.clusters if c.tag is PartTag.HEAVY)

    @property
    def light(self) -> Tuple[MlaCluster, ...]:
        return tuple(c for c in self.clusters if c.tag is not PartTag.HEAVY)


def mla_partition_trace(t: MlaInstance) -> MlaTrace:
    """
    Run the heavy/light partitioning and record every cluster.

    Heavy nodes are searched in depth-first post-order, repeatedly,
    until none is left; only then a light cluster is carved.
    """
    act = ActiveSet(t)
    clusters: List[MlaCluster] = []
    visits = [0]
    while act:
        found = True
        while found:
            found = False
            for v in t.postorder:
                if v not in act:
                    continue
                visits[0] += 1
                if is_heavy(t, act, v):
                    cluster = MlaCluster(act.subtree(v), PartTag.HEAVY, v)
                    logger.debug(f"MLA cluster: {cluster}")
                    act.remove(cluster.nodes)
                    clusters.append(cluster)
                    found = True
        if act:
            cluster = find_light_cluster(t, act, visits=visits)
            logger.debug(f"MLA cluster: {cluster}")
            act.remove(cluster.nodes)
            clusters.append(cluster)
    trace = MlaTrace(tuple(clusters), visits[0])
    logger.info(
        f"MLA partition of {t.n} nodes:"
        f" {len(trace.heavy)} heavy, {len(trace.light)} light clusters."
    )
    return trace


def mla_partition(t: MlaInstance) -> Partition:
    """Partition of the tree into heavy and light clusters priced by the tree."""
    trace = mla_partition_trace(t)
    return Partition.from_function(
        t, [c.nodes for c in trace.clusters], [c.tag for c in trace.clusters]
    )


def verify_mla_partition(t: MlaInstance, trace: MlaTrace) -> List[str]:
    """
    Check the structural bounds of a partitioning run.

    Returns descriptions of violated bounds, empty when all hold:

    - at most ``sqrt(n) + 1`` light clusters,
    - ``f(P) <= 8 * sqrt(n) * c(v)`` for a heavy cluster P rooted at v,
    - ``f(K) <= 2 * f({r})`` for a light cluster K anchored at r.
    """
    n = t.n
    violations = []
    light = len(trace.light)
    if light and (light - 1) ** 2 > n:
        violations.append(f"{light} light clusters exceed sqrt({n}) + 1")
    for cluster in trace.heavy:
        cost = t(cluster.nodes)
        if not le_root_times(cost, 8, n, t.costs[cluster.anchor]):
            violations.append(f"heavy cluster {cluster} costs {cost}")
    for cluster in trace.light:
        cost = t(cluster.nodes)
        if cost > 2 * t.path_costs[cluster.anchor]:
            violations.append(f"light cluster {cluster} costs {cost}")
    return violations


def gen_star_mla(n: int) -> MlaInstance:
    """
    Star with a root of cost ``sqrt(n)`` and ``n - 1`` leaves of cost one.

    No partition approximates this tree better than ``sqrt(n) / 2``.
    """
    if n < 4:
        raise DomainError(f"Star needs at least 4 nodes: {n}")
    root_cost = exact_sqrt(n)
    parent: List[Optional[int]] = [None] + [ROOT] * (n - 1)
    return MlaInstance(parent, [root_cost] + [1] * (n - 1))
