"""Constructions for the counting pair.

The search side strengthens the input so that every true variable is
forced by one of its clauses; the justification side introduces one copy
variable per original and implications that let a SAT check detect true
atoms whose truth is not justified.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .formula import AUX, COPY, ORIG, Assignment, CnfFormula, VarRange, write_dimacs


@dataclass(frozen=True)
class ForcedSpec:
    """Per-variable co-literal sets of the clauses that can force it true.

    For each original variable x, ``co_literal_sets[x]`` holds one tuple
    per clause containing x positively: the clause's remaining literals.
    x may be true only if one of these tuples is entirely falsified.  A
    variable with no entry at all must be false.
    """

    co_literal_sets: dict
    num_original_vars: int

    def must_be_false(self) -> list[int]:
        return [
            x
            for x in range(1, self.num_original_vars + 1)
            if not self.co_literal_sets[x]
        ]


@dataclass(frozen=True)
class CopyVarMap:
    """Bijection between original variables and their copy variables.

    Copy ids occupy the contiguous block right above ``offset``, which is
    chosen past the auxiliary range so the three ranges stay disjoint.
    """

    offset: int
    num_original_vars: int

    def copy_of(self, var: int) -> int:
        return var + self.offset

    def original_of(self, copy_var: int) -> int:
        return copy_var - self.offset

    def is_copy(self, var: int) -> bool:
        return self.offset < var <= self.offset + self.num_original_vars

    @property
    def first_copy_id(self) -> int:
        return self.offset + 1


@dataclass
class PairState:
    """The two formulas the counting recursion walks, plus shared state.

    ``search`` holds the input clauses strengthened with the forced
    implications (original + auxiliary variables); ``justification``
    holds the copy implications (original + copy variables).  The
    assignment is shared across both sides.
    """

    search: CnfFormula
    justification: CnfFormula
    assignment: Assignment
    copy_map: CopyVarMap


def forced_formula(formula: CnfFormula) -> ForcedSpec:
    """Collect, per variable, the co-literal sets of its positive clauses."""
    sets = {x: [] for x in range(1, formula.num_original_vars + 1)}
    for clause in formula.clauses:
        for lit in clause:
            if lit > 0:
                sets[lit].append(tuple(other for other in clause if other != lit))
    return ForcedSpec(
        {x: tuple(co) for x, co in sets.items()}, formula.num_original_vars
    )


def tseitin_cnf(spec: ForcedSpec, next_free_id: int) -> CnfFormula:
    """CNF for the forced implications, introducing auxiliary variables.

    Each implication says: if x is true, some clause containing x
    positively has all its other literals false.  Co-literal sets of size
    one are inlined as single negated literals; larger sets get a fresh
    auxiliary variable defined by a full biconditional, so auxiliary
    values are functionally determined and the model count over original
    variables is unchanged.  A variable that can never be forced gets the
    unit clause requiring it false; a variable forced by a unit clause of
    the input yields no implication at all.
    """
    clauses: list[tuple[int, ...]] = []
    aux_lo = next_free_id
    next_id = next_free_id
    for x in range(1, spec.num_original_vars + 1):
        co_sets = spec.co_literal_sets[x]
        if not co_sets:
            clauses.append((-x,))
            continue
        if any(len(co) == 0 for co in co_sets):
            # x occurs as a unit clause; flipping it always falsifies that
            # clause, so the implication is vacuously true.
            continue
        implication = [-x]
        for co in co_sets:
            if len(co) == 1:
                implication.append(-co[0])
            else:
                aux = next_id
                next_id += 1
                for lit in co:
                    clauses.append((-aux, -lit))
                clauses.append((aux,) + co)
                implication.append(aux)
        clauses.append(tuple(implication))
    ranges = [VarRange(ORIG, 1, spec.num_original_vars)]
    if next_id > aux_lo:
        ranges.append(VarRange(AUX, aux_lo, next_id - 1))
    return CnfFormula(tuple(clauses), spec.num_original_vars, tuple(ranges))


def with_forced_clauses(formula: CnfFormula) -> CnfFormula:
    """The input formula conjoined with the CNF of its forced implications."""
    forced = tseitin_cnf(forced_formula(formula), formula.num_original_vars + 1)
    return CnfFormula(
        formula.clauses + forced.clauses,
        formula.num_original_vars,
        forced.var_ranges,
    )


def copy_formula(formula: CnfFormula, copy_map: CopyVarMap) -> CnfFormula:
    """Copy-variable implications used for justification checking.

    Three clause groups: one implication copy(x) -> x per occurring
    variable; per input clause with at least one positive literal, the
    clause's image over copy variables; and a unit requiring x false for
    every variable that never occurs positively.  Clauses without a
    positive literal produce no image.
    """
    occurring = sorted(formula.variables())
    positive = {lit for clause in formula.clauses for lit in clause if lit > 0}
    clauses: list[tuple[int, ...]] = []
    for x in occurring:
        clauses.append((-copy_map.copy_of(x), x))
    for clause in formula.clauses:
        positives = [lit for lit in clause if lit > 0]
        if not positives:
            continue
        negatives = [-lit for lit in clause if lit < 0]
        clauses.append(
            tuple(-copy_map.copy_of(b) for b in negatives)
            + tuple(copy_map.copy_of(a) for a in positives)
        )
    for x in occurring:
        if x not in positive:
            clauses.append((-x,))
    ranges = (
        VarRange(ORIG, 1, formula.num_original_vars),
        VarRange(COPY, copy_map.first_copy_id, copy_map.offset + copy_map.num_original_vars),
    )
    return CnfFormula(tuple(clauses), formula.num_original_vars, ranges)


def build_pair(formula: CnfFormula) -> PairState:
    """Assemble the search/justification pair for an input formula."""
    n = formula.num_original_vars
    forced = tseitin_cnf(forced_formula(formula), n + 1)
    aux_ranges = [vr for vr in forced.var_ranges if vr.kind == AUX]
    aux_hi = aux_ranges[0].hi if aux_ranges else n
    copy_map = CopyVarMap(offset=aux_hi, num_original_vars=n)
    search = CnfFormula(formula.clauses + forced.clauses, n, forced.var_ranges)
    justification = copy_formula(formula, copy_map)
    return PairState(search, justification, Assignment(), copy_map)


def write_pair_files(pair: PairState, directory: str) -> tuple[str, str]:
    """Write the pair as DIMACS files ``forced.cnf`` and ``copy.cnf``.

    Both files carry ``c vr`` range comments; the copy file additionally
    records one ``c copy <orig> <copy>`` comment per map entry.
    """
    os.makedirs(directory, exist_ok=True)
    search_path = os.path.join(directory, "forced.cnf")
    copy_path = os.path.join(directory, "copy.cnf")
    with open(search_path, "w") as handle:
        handle.write(write_dimacs(pair.search))
    copy_comments = [
        f"c copy {x} {pair.copy_map.copy_of(x)}"
        for x in range(1, pair.copy_map.num_original_vars + 1)
    ]
    with open(copy_path, "w") as handle:
        handle.write(write_dimacs(pair.justification, extra_comments=copy_comments))
    return search_path, copy_path
