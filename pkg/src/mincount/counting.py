"""Minimal-model counting over the search/justification pair.

The engine walks one recursion for both strategies: unit propagation,
component decomposition, branching on a decision variable, and a base
case.  On the general path the base case runs a SAT-backed justification
check over the live copy variables; on the acyclic path the justification
side is absent and the recursion is a plain model count where free
original variables contribute a power-of-two multiplier and auxiliary
variables, being functionally determined, contribute nothing.

The recursion is realized with an explicit stack so that chain formulas
cannot exhaust the interpreter's recursion limit.  Each counting run owns
its mutable state; independent runs over the same immutable formula may
execute concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .depgraph import build_dependency_graph, is_acyclic, is_head_cycle_free
from .formula import COPY, CnfFormula, VarRange
from .sat import solve
from .transform import PairState, build_pair, with_forced_clauses

MIN_ID = "min-id"
MAX_OCCURRENCE = "max-occurrence"

MODE_ACYCLIC = "acyclic"
MODE_GENERAL = "general"

_CONFLICT = object()


@dataclass
class CountStats:
    """Search statistics accumulated over one counting run.

    ``components`` counts the sub-pairs produced by decomposition steps
    that actually split their node.
    """

    decisions: int = 0
    propagations: int = 0
    components: int = 0
    sat_calls: int = 0
    base_cases: int = 0
    mode: str = ""
    acyclic: bool | None = None
    head_cycle_free: bool | None = None

    def as_dict(self) -> dict:
        out = {"mode": self.mode}
        if self.acyclic is not None:
            out["acyclic"] = self.acyclic
        if self.head_cycle_free is not None:
            out["head_cycle_free"] = self.head_cycle_free
        out.update(
            decisions=self.decisions,
            propagations=self.propagations,
            components=self.components,
            sat_calls=self.sat_calls,
            base_cases=self.base_cases,
        )
        return out


@dataclass(frozen=True)
class CountResult:
    count: int
    stats: CountStats


@dataclass(frozen=True)
class BranchPolicy:
    """Decision-variable selection among the unassigned originals.

    ``max-occurrence`` picks the original variable occurring most often
    in the residual search clauses; ``min-id`` picks the smallest id.
    Ties always break toward the lowest id.
    """

    heuristic: str = MAX_OCCURRENCE

    def __post_init__(self):
        if self.heuristic not in (MIN_ID, MAX_OCCURRENCE):
            raise ValueError(f"unknown branch heuristic {self.heuristic!r}")

    def pick(self, clauses, orig_limit: int) -> int:
        if self.heuristic == MIN_ID:
            return min(abs(lit) for clause in clauses for lit in clause if abs(lit) <= orig_limit)
        counts: dict[int, int] = {}
        for clause in clauses:
            for lit in clause:
                var = abs(lit)
                if var <= orig_limit:
                    counts[var] = counts.get(var, 0) + 1
        best = -1
        best_count = -1
        for var in sorted(counts):
            if counts[var] > best_count:
                best, best_count = var, counts[var]
        return best


def _reduce(clause, assign):
    """Residual of a clause under ``assign``; None when satisfied."""
    out = []
    for lit in clause:
        value = assign.get(abs(lit))
        if value is None:
            out.append(lit)
        elif value == (lit > 0):
            return None
    return tuple(out)


_SEARCH = 0
_JUSTIFICATION = 1


def _bcp(search, justification, assign, copy_lo, stats):
    """Condition both sides and propagate units to fixpoint.

    Mutates ``assign``.  Search-side units (original and auxiliary
    literals) are asserted and, through the shared dictionary, seen by
    the justification side.  On the justification side only units over
    copy variables propagate, and their values never feed back into the
    search side because copies do not occur there.  Units over original
    variables arising on the justification side are left in place; the
    search side derives the same assignment itself.

    Propagation is driven by an occurrence index built per call, so a
    long cascade costs time linear in the literals it touches rather
    than one full rescan per derived unit.

    Returns ``(search_residual, justification_residual)`` or the conflict
    sentinel when a search clause is emptied.
    """
    sides = [search, justification if justification is not None else ()]
    dead = [bytearray(len(sides[0])), bytearray(len(sides[1]))]
    free = [[0] * len(sides[0]), [0] * len(sides[1])]
    occurrences: dict[int, list] = {}
    queue: list[int] = []
    # A falsified justification clause mid-propagation is only an invariant
    # violation if the search side fails to conflict by the fixpoint; a
    # search conflict always wins, as it did when whole rounds ran the
    # search side first.
    justification_violated = False

    def settle(lit: int, side: int) -> bool:
        """Apply a derived unit; False signals a search-side conflict."""
        nonlocal justification_violated
        var = abs(lit)
        if side == _JUSTIFICATION and var < copy_lo:
            return True
        value = lit > 0
        current = assign.get(var)
        if current is None:
            assign[var] = value
            stats.propagations += 1
            queue.append(var)
            return True
        if current == value:
            return True
        if side == _SEARCH:
            return False
        justification_violated = True
        return True

    for side in (_SEARCH, _JUSTIFICATION):
        for index, clause in enumerate(sides[side]):
            count = 0
            last_open = 0
            is_dead = False
            for lit in clause:
                value = assign.get(abs(lit))
                if value is None:
                    count += 1
                    last_open = lit
                    occurrences.setdefault(abs(lit), []).append((side, index, lit))
                elif value == (lit > 0):
                    is_dead = True
            if is_dead:
                dead[side][index] = 1
                continue
            free[side][index] = count
            if count == 0:
                if side == _SEARCH:
                    return _CONFLICT
                justification_violated = True
            elif count == 1 and not settle(last_open, side):
                return _CONFLICT

    head = 0
    while head < len(queue):
        var = queue[head]
        head += 1
        value = assign[var]
        for side, index, lit in occurrences.get(var, ()):
            if dead[side][index]:
                continue
            if value == (lit > 0):
                dead[side][index] = 1
                continue
            free[side][index] -= 1
            remaining = free[side][index]
            if remaining == 0:
                if side == _SEARCH:
                    return _CONFLICT
                justification_violated = True
            elif remaining == 1:
                unit = 0
                for candidate in sides[side][index]:
                    if abs(candidate) not in assign:
                        unit = candidate
                        break
                if unit == 0:
                    # The last open literal was settled but its queue entry
                    # is still pending; that entry finishes the clause.
                    continue
                if not settle(unit, side):
                    return _CONFLICT

    if justification_violated:
        raise RuntimeError(
            "justification clause falsified; the search side must conflict first"
        )

    residuals = []
    for side in (_SEARCH, _JUSTIFICATION):
        out = []
        for index, clause in enumerate(sides[side]):
            if dead[side][index]:
                continue
            out.append(tuple(lit for lit in clause if abs(lit) not in assign))
        residuals.append(tuple(out))
    if justification is None:
        return residuals[0], None
    return residuals[0], residuals[1]


def _split_components(search, justification, enabled):
    """Group residual clauses by variable connectivity.

    Returns ``(search_clauses, justification_clauses, vars)`` triples.
    With decomposition disabled everything lands in a single group, which
    still feeds the free-variable bookkeeping of the caller.
    """
    just = justification if justification is not None else ()
    if not enabled:
        everything = {abs(lit) for clause in search for lit in clause}
        everything |= {abs(lit) for clause in just for lit in clause}
        return [(search, justification, everything)]

    parent: dict[int, int] = {}

    def find(var):
        root = var
        while parent[root] != root:
            root = parent[root]
        while parent[var] != root:
            parent[var], var = root, parent[var]
        return root

    for clause in list(search) + list(just):
        variables = [abs(lit) for lit in clause]
        for var in variables:
            parent.setdefault(var, var)
        first = find(variables[0])
        for var in variables[1:]:
            root = find(var)
            if root != first:
                # Smaller root wins so grouping is deterministic.
                if root < first:
                    parent[first] = root
                    first = root
                else:
                    parent[root] = first

    groups: dict[int, list] = {}
    for clause in search:
        entry = groups.setdefault(find(abs(clause[0])), [[], [], set()])
        entry[0].append(clause)
        entry[2].update(abs(lit) for lit in clause)
    for clause in just:
        entry = groups.setdefault(find(abs(clause[0])), [[], [], set()])
        entry[1].append(clause)
        entry[2].update(abs(lit) for lit in clause)
    out = []
    for root in sorted(groups):
        part_search, part_just, variables = groups[root]
        out.append(
            (
                tuple(part_search),
                tuple(part_just) if justification is not None else None,
                variables,
            )
        )
    return out


def _justification_base(justification, assign, copy_lo, stats) -> int:
    """Base case once the search side has no clauses left.

    Unassigned originals default to false (the minimal choice) and their
    effect propagates through the copy implications.  An empty residual
    means every true atom is already justified.  Otherwise one SAT call
    asks whether the residual admits a model falsifying some live copy
    variable: if it does, some true atom lacks justification and the
    branch contributes nothing.
    """
    local = dict(assign)
    for var in sorted(
        {abs(lit) for clause in justification for lit in clause if abs(lit) < copy_lo}
    ):
        if var not in local:
            local[var] = False
    result = _bcp((), justification, local, copy_lo, stats)
    assert result is not _CONFLICT
    _, residual = result
    stats.base_cases += 1
    if not residual:
        return 1
    live = sorted({abs(lit) for clause in residual for lit in clause})
    if live and live[0] < copy_lo:
        raise RuntimeError("non-copy variable alive at a justification base case")
    query = CnfFormula(
        residual + (tuple(-var for var in live),),
        num_original_vars=0,
        var_ranges=(VarRange(COPY, 1, live[-1]),),
    )
    stats.sat_calls += 1
    return 0 if solve(query).satisfiable else 1


def _run(search, justification, assign, scope, *, orig_limit, copy_lo, policy,
         use_decomposition, stats, trace):
    """Explicit-stack evaluation of the counting recursion.

    ``scope`` (model-count mode only) is the set of original variables
    the current subproblem owns; originals that drop out of all clauses
    without being assigned are free and double the count.  In pair mode
    ``scope`` is None and free originals default to false, contributing
    a factor of one.
    """
    tasks = [("count", search, justification, assign, scope)]
    values = []
    while tasks:
        task = tasks.pop()
        op = task[0]
        if op == "count":
            _, search, justification, assign, scope = task
            result = _bcp(search, justification, assign, copy_lo, stats)
            if result is _CONFLICT:
                values.append(0)
                continue
            search, justification = result
            if not search:
                if justification is None:
                    free = sum(1 for var in scope if var not in assign)
                    values.append(1 << free)
                else:
                    values.append(
                        _justification_base(justification, assign, copy_lo, stats)
                    )
                continue
            components = _split_components(search, justification, use_decomposition)
            if len(components) > 1:
                stats.components += len(components)
            if justification is None:
                covered = set()
                for _, _, variables in components:
                    covered |= variables
                free = sum(
                    1 for var in scope if var not in assign and var not in covered
                )
            else:
                free = 0
            tasks.append(("combine", len(components), free))
            for part_search, part_just, variables in components:
                if not part_search:
                    # Justification-only component: straight to the base case.
                    values.append(
                        _justification_base(part_just, assign, copy_lo, stats)
                    )
                    continue
                var = policy.pick(part_search, orig_limit)
                stats.decisions += 1
                part_scope = (
                    frozenset(v for v in variables if v <= orig_limit)
                    if justification is None
                    else None
                )
                tasks.append(("sum", var))
                high = dict(assign)
                high[var] = True
                low = dict(assign)
                low[var] = False
                tasks.append(("count", part_search, part_just, high, part_scope))
                tasks.append(("count", part_search, part_just, low, part_scope))
        elif op == "sum":
            high_count = values.pop()
            low_count = values.pop()
            if trace is not None:
                trace.append(("decision", task[1], low_count, high_count))
            values.append(low_count + high_count)
        else:  # combine
            _, width, free = task
            product = 1
            for _ in range(width):
                product *= values.pop()
            values.append(product << free)
    return values[0]


def count_models(formula: CnfFormula, *, policy: BranchPolicy | None = None,
                 use_decomposition: bool = True, stats: CountStats | None = None,
                 trace=None) -> CountResult:
    """Exact model count over the formula's original variables.

    Auxiliary variables are propagated but never branched on and never
    counted; with the biconditional encoding they are determined by the
    originals.
    """
    stats = stats if stats is not None else CountStats()
    policy = policy or BranchPolicy()
    orig_limit = formula.num_original_vars
    scope = frozenset(v for v in formula.variables() if v <= orig_limit)
    copy_lo = max((vr.hi for vr in formula.var_ranges), default=0) + 1
    count = _run(
        formula.clauses, None, {}, scope,
        orig_limit=orig_limit, copy_lo=copy_lo, policy=policy,
        use_decomposition=use_decomposition, stats=stats, trace=trace,
    )
    return CountResult(count, stats)


def count_pair(pair: PairState, *, policy: BranchPolicy | None = None,
               use_decomposition: bool = True, stats: CountStats | None = None,
               trace=None) -> CountResult:
    """Count minimal models by recursing over the search/justification pair."""
    stats = stats if stats is not None else CountStats()
    policy = policy or BranchPolicy()
    count = _run(
        pair.search.clauses, pair.justification.clauses,
        dict(pair.assignment.values), None,
        orig_limit=pair.search.num_original_vars,
        copy_lo=pair.copy_map.first_copy_id, policy=policy,
        use_decomposition=use_decomposition, stats=stats, trace=trace,
    )
    return CountResult(count, stats)


def count_minimal(formula: CnfFormula, *, policy: BranchPolicy | None = None,
                  use_decomposition: bool = True, force_mode: str | None = None,
                  trace=None) -> CountResult:
    """Count the minimal models of a CNF formula.

    When the dependency graph is acyclic the count equals the model count
    of the formula strengthened with its forced implications, so no
    justification side is needed.  Cyclic formulas go through the pair
    recursion.  ``force_mode`` overrides the automatic choice; forcing
    the acyclic strategy on a cyclic formula raises ``ValueError``.
    """
    graph = build_dependency_graph(formula)
    acyclic = is_acyclic(graph)
    mode = force_mode if force_mode is not None else (
        MODE_ACYCLIC if acyclic else MODE_GENERAL
    )
    if mode == MODE_ACYCLIC and not acyclic:
        raise ValueError("acyclic mode requested but the dependency graph has a cycle")
    if mode not in (MODE_ACYCLIC, MODE_GENERAL):
        raise ValueError(f"unknown mode {mode!r}")
    stats = CountStats(
        mode=mode, acyclic=acyclic, head_cycle_free=is_head_cycle_free(formula, graph)
    )
    if mode == MODE_ACYCLIC:
        return count_models(
            with_forced_clauses(formula),
            policy=policy, use_decomposition=use_decomposition,
            stats=stats, trace=trace,
        )
    return count_pair(
        build_pair(formula),
        policy=policy, use_decomposition=use_decomposition,
        stats=stats, trace=trace,
    )


def decompose(pair: PairState) -> list[PairState]:
    """Split a conditioned pair into variable-disjoint sub-pairs.

    Expects both sides already conditioned on the pair's assignment.  The
    copy implication linking a variable to its copy keeps the two in one
    component.  Returns an empty list when no clauses remain.
    """
    components = _split_components(
        pair.search.clauses, pair.justification.clauses, True
    )
    out = []
    for part_search, part_just, _ in components:
        out.append(
            PairState(
                replace(pair.search, clauses=part_search),
                replace(pair.justification, clauses=part_just),
                pair.assignment.copy(),
                pair.copy_map,
            )
        )
    return out


def base_case(pair: PairState, stats: CountStats | None = None) -> int:
    """Justification base case for a pair whose search side is exhausted."""
    stats = stats if stats is not None else CountStats()
    return _justification_base(
        pair.justification.clauses,
        dict(pair.assignment.values),
        pair.copy_map.first_copy_id,
        stats,
    )
