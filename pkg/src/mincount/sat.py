"""Deterministic DPLL satisfiability kernel with watched-literal propagation.

Branching always picks the lowest unassigned variable id and tries false
first, so two runs on identical inputs return identical results.  Each
call is an independent solve; there is no incremental state.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .formula import DECISION, PROPAGATED, Assignment, CnfFormula, evaluate


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    witness: Assignment | None = None


def solve(formula: CnfFormula, assumptions=()) -> SatResult:
    """Decide satisfiability of ``formula`` under the given assumption literals.

    Raises ``ValueError`` when the assumptions contain a complementary
    pair.  The witness, when satisfiable, is total over the occurring
    variables plus the assumption variables.
    """
    assumptions = tuple(assumptions)
    assumed: set[int] = set()
    for lit in assumptions:
        if -lit in assumed:
            raise ValueError(f"inconsistent assumptions: {lit} and {-lit}")
        assumed.add(lit)

    clauses = [tuple(dict.fromkeys(clause)) for clause in formula.clauses]
    if any(len(clause) == 0 for clause in clauses):
        return SatResult(False)
    variables = sorted(
        {abs(lit) for clause in clauses for lit in clause}
        | {abs(lit) for lit in assumptions}
    )

    assign: dict[int, bool] = {}
    trail: list[tuple[int, str]] = []
    queue: deque[int] = deque()
    watched: dict[int, list[int]] = {}
    watch_pair: list[list[int]] = []
    root_units: list[int] = []

    for index, clause in enumerate(clauses):
        watch_pair.append(list(clause[:2]))
        if len(clause) == 1:
            root_units.append(clause[0])
        else:
            watched.setdefault(clause[0], []).append(index)
            watched.setdefault(clause[1], []).append(index)

    def enqueue(lit: int, reason: str) -> bool:
        var = abs(lit)
        value = lit > 0
        current = assign.get(var)
        if current is not None:
            return current == value
        assign[var] = value
        trail.append((lit, reason))
        queue.append(lit)
        return True

    def propagate() -> bool:
        while queue:
            lit = queue.popleft()
            falsified = -lit
            watchers = watched.get(falsified)
            if not watchers:
                continue
            pos = 0
            while pos < len(watchers):
                index = watchers[pos]
                pair = watch_pair[index]
                other = pair[1] if pair[0] == falsified else pair[0]
                other_value = assign.get(abs(other))
                if other_value == (other > 0):
                    pos += 1
                    continue
                moved = False
                for candidate in clauses[index]:
                    if candidate == falsified or candidate == other:
                        continue
                    value = assign.get(abs(candidate))
                    if value is None or value == (candidate > 0):
                        pair[0], pair[1] = other, candidate
                        watched.setdefault(candidate, []).append(index)
                        watchers[pos] = watchers[-1]
                        watchers.pop()
                        moved = True
                        break
                if moved:
                    continue
                if other_value is None:
                    enqueue(other, PROPAGATED)
                    pos += 1
                else:
                    return False
        return True

    for lit in assumptions:
        if not enqueue(lit, DECISION):
            return SatResult(False)
    for lit in root_units:
        if not enqueue(lit, PROPAGATED):
            return SatResult(False)
    if not propagate():
        return SatResult(False)

    # Chronological backtracking over an explicit decision stack: each
    # entry is (trail length before the decision, literal, flipped yet).
    decisions: list[list] = []

    def backtrack_to(length: int) -> None:
        while len(trail) > length:
            lit, _ = trail.pop()
            del assign[abs(lit)]
        queue.clear()

    while True:
        chosen = None
        for var in variables:
            if var not in assign:
                chosen = var
                break
        if chosen is None:
            witness = Assignment()
            for lit, reason in trail:
                witness.assign(lit, reason)
            return SatResult(True, witness)
        decisions.append([len(trail), -chosen, False])
        enqueue(-chosen, DECISION)
        while not propagate():
            while decisions and decisions[-1][2]:
                length, _, _ = decisions.pop()
                backtrack_to(length)
            if not decisions:
                return SatResult(False)
            length, lit, _ = decisions[-1]
            backtrack_to(length)
            decisions[-1] = [length, -lit, True]
            enqueue(-lit, DECISION)


def check_minimal(formula: CnfFormula, assignment: Assignment) -> bool:
    """Decide whether a total model of the formula is a minimal model.

    Builds the formula that pins every false variable false and asks for
    a model flipping at least one true variable; the input model is
    minimal exactly when that formula is unsatisfiable.  A model with no
    true variable is minimal without a solver call.  Raises
    ``ValueError`` when the assignment is not a model of the formula.
    """
    if not evaluate(formula, assignment):
        raise ValueError("check_minimal requires a model of the formula")
    occurring = sorted(formula.variables())
    true_vars = [var for var in occurring if assignment.values[var]]
    if not true_vars:
        return True
    false_units = tuple((-var,) for var in occurring if not assignment.values[var])
    flip_some = tuple(-var for var in true_vars)
    query = CnfFormula(
        formula.clauses + false_units + (flip_some,),
        formula.num_original_vars,
        formula.var_ranges,
    )
    return not solve(query).satisfiable
