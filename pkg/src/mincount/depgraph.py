"""Dependency graph over CNF variables and SCC-based structure tests.

The graph has an arc a -> b whenever some clause contains ``-a`` and
``b`` (as a positive literal).  Acyclicity of this graph decides which
counting strategy applies; head-cycle-freeness is computed as a
diagnostic only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import ORIG, CnfFormula


@dataclass(frozen=True)
class DepGraph:
    nodes: frozenset[int]
    arcs: frozenset[tuple[int, int]]


@dataclass(frozen=True, eq=False)
class SccDecomposition:
    """Strongly connected components in topological order."""

    components: tuple[tuple[int, ...], ...]
    component_of: dict

    def __len__(self) -> int:
        return len(self.components)


def build_dependency_graph(formula: CnfFormula) -> DepGraph:
    """Build the variable dependency graph of a formula.

    Only defined over original variables; raises ``ValueError`` when the
    formula's clauses mention auxiliary or copy ids.
    """
    for var in formula.variables():
        if formula.kind_of(var) != ORIG:
            raise ValueError(f"dependency graph requires original variables only, got {var}")
    arcs = set()
    for clause in formula.clauses:
        negatives = [-lit for lit in clause if lit < 0]
        positives = [lit for lit in clause if lit > 0]
        for a in negatives:
            for b in positives:
                arcs.add((a, b))
    return DepGraph(frozenset(formula.variables()), frozenset(arcs))


def strongly_connected_components(graph: DepGraph) -> SccDecomposition:
    """Tarjan's algorithm, iterative to tolerate deep chain graphs."""
    adjacency: dict[int, list[int]] = {node: [] for node in graph.nodes}
    for a, b in sorted(graph.arcs):
        adjacency[a].append(b)

    index: dict[int, int] = {}
    lowlink: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    components: list[tuple[int, ...]] = []
    counter = 0

    for root in sorted(graph.nodes):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            node, child_pos = work.pop()
            if child_pos == 0:
                index[node] = lowlink[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            descended = False
            children = adjacency[node]
            for pos in range(child_pos, len(children)):
                child = children[pos]
                if child not in index:
                    work.append((node, pos + 1))
                    work.append((child, 0))
                    descended = True
                    break
                if child in on_stack:
                    lowlink[node] = min(lowlink[node], index[child])
            if descended:
                continue
            if lowlink[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                components.append(tuple(sorted(component)))
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])

    # Tarjan emits components in reverse topological order.
    components.reverse()
    component_of = {}
    for pos, component in enumerate(components):
        for node in component:
            component_of[node] = pos
    for a, b in graph.arcs:
        if component_of[a] > component_of[b]:
            raise RuntimeError("condensation order violated; SCC computation is broken")
    return SccDecomposition(tuple(components), component_of)


def is_acyclic(graph: DepGraph) -> bool:
    """True iff the graph has no directed cycle."""
    if any(a == b for a, b in graph.arcs):
        return False
    decomposition = strongly_connected_components(graph)
    return all(len(component) == 1 for component in decomposition.components)


def is_head_cycle_free(formula: CnfFormula, graph: DepGraph) -> bool:
    """True iff no cycle contains two variables positive in a common clause.

    Two distinct variables lie on a common cycle exactly when they share
    a strongly connected component.
    """
    decomposition = strongly_connected_components(graph)
    component_of = decomposition.component_of
    cyclic = {
        pos for pos, component in enumerate(decomposition.components) if len(component) > 1
    }
    for clause in formula.clauses:
        seen: dict[int, int] = {}
        for lit in clause:
            if lit <= 0:
                continue
            component = component_of[lit]
            if component not in cyclic:
                continue
            if component in seen and seen[component] != lit:
                return False
            seen[component] = lit
    return True


def to_dot(graph: DepGraph) -> str:
    """Render the graph in DOT text format."""
    lines = ["digraph dependencies {"]
    for node in sorted(graph.nodes):
        lines.append(f"  {node};")
    for a, b in sorted(graph.arcs):
        lines.append(f"  {a} -> {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
