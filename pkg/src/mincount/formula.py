"""CNF clause database, DIMACS parsing, conditioning and unit propagation.

Variables are positive integers and a literal is a signed integer: ``v``
for the positive literal, ``-v`` for the negated one.  A clause is a tuple
of literals and a formula is an immutable collection of clauses plus
metadata describing which id ranges hold original, auxiliary and copy
variables.  Formulas are safe to share between concurrent tasks; an
``Assignment`` is a single-owner mutable value.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

ORIG = "orig"
AUX = "aux"
COPY = "copy"

DECISION = "decision"
PROPAGATED = "propagated"


class ParseError(ValueError):
    """Malformed DIMACS input; the message names the offending line."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class VarRange:
    """Inclusive variable-id range tagged as original, auxiliary or copy."""

    kind: str
    lo: int
    hi: int

    def __contains__(self, var: int) -> bool:
        return self.lo <= var <= self.hi

    def __len__(self) -> int:
        return max(0, self.hi - self.lo + 1)


@dataclass(frozen=True)
class ParseStats:
    tautologies_dropped: int = 0
    duplicate_literals_dropped: int = 0


@dataclass(frozen=True)
class CnfFormula:
    """Immutable clause database.

    ``num_original_vars`` is the size of the original id range 1..n.
    Auxiliary and copy variables, when present, occupy disjoint ranges
    above n recorded in ``var_ranges``.
    """

    clauses: tuple[tuple[int, ...], ...]
    num_original_vars: int
    var_ranges: tuple[VarRange, ...] = ()
    parse_stats: ParseStats = ParseStats()

    def __post_init__(self):
        if not self.var_ranges:
            object.__setattr__(
                self, "var_ranges", (VarRange(ORIG, 1, self.num_original_vars),)
            )
        top = max((r.hi for r in self.var_ranges), default=0)
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > top:
                    raise ValueError(f"literal {lit} outside declared variable ranges")

    def variables(self) -> set[int]:
        """Ids occurring in at least one clause."""
        return {abs(lit) for clause in self.clauses for lit in clause}

    def kind_of(self, var: int) -> str:
        for vr in self.var_ranges:
            if var in vr:
                return vr.kind
        raise ValueError(f"variable {var} not in any declared range")

    def is_original(self, var: int) -> bool:
        return 1 <= var <= self.num_original_vars


class Assignment:
    """Partial truth assignment with an ordered trail of reasons.

    The trail records each assigned literal together with the reason it
    was assigned (``DECISION`` or ``PROPAGATED``); a variable appears at
    most once and ``values`` always agrees with the trail.
    """

    __slots__ = ("values", "trail")

    def __init__(self):
        self.values: dict[int, bool] = {}
        self.trail: list[tuple[int, str]] = []

    @classmethod
    def from_literals(cls, literals, reason: str = DECISION) -> "Assignment":
        out = cls()
        for lit in literals:
            out.assign(lit, reason)
        return out

    @classmethod
    def from_true_set(cls, variables, true_vars, reason: str = DECISION) -> "Assignment":
        """Total assignment over ``variables`` that sets exactly ``true_vars``."""
        out = cls()
        true_vars = set(true_vars)
        for var in sorted(variables):
            out.assign(var if var in true_vars else -var, reason)
        return out

    def assign(self, lit: int, reason: str = DECISION) -> None:
        var = abs(lit)
        value = lit > 0
        if var in self.values:
            if self.values[var] != value:
                raise ValueError(f"variable {var} already assigned the opposite value")
            return
        self.values[var] = value
        self.trail.append((lit, reason))

    def lit_value(self, lit: int) -> bool | None:
        """True/False if the literal is satisfied/falsified, None if unassigned."""
        value = self.values.get(abs(lit))
        if value is None:
            return None
        return value == (lit > 0)

    def true_vars(self) -> set[int]:
        return {var for var, value in self.values.items() if value}

    def copy(self) -> "Assignment":
        out = Assignment()
        out.values = dict(self.values)
        out.trail = list(self.trail)
        return out

    def __contains__(self, var: int) -> bool:
        return var in self.values

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Assignment):
            return NotImplemented
        return self.values == other.values and self.trail == other.trail

    def __repr__(self) -> str:
        lits = [lit for lit, _ in self.trail]
        return f"Assignment({lits})"


@dataclass(frozen=True)
class Conflict:
    """A clause whose literals are all falsified by the current assignment."""

    clause: tuple[int, ...]


def parse_dimacs(source) -> CnfFormula:
    """Parse DIMACS CNF text into a :class:`CnfFormula`.

    ``source`` may be a string or an iterable of lines.  Comment lines
    starting with ``c`` are ignored, except ``c vr <kind> <lo> <hi>``
    (kind one of orig/aux/copy) which restores variable-range metadata
    written by :func:`write_dimacs`.  Duplicate literals within a clause
    are dropped (first occurrence kept) and tautological clauses are
    removed; both events are counted in the formula's parse stats.
    """
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = [line.rstrip("\n") for line in source]

    header: tuple[int, int] | None = None
    ranges: list[VarRange] = []
    clauses: list[tuple[int, ...]] = []
    tautologies = 0
    duplicates = 0
    current: list[int] = []
    current_line: int | None = None
    last_line = 0

    def finish_clause(line_no: int) -> None:
        nonlocal tautologies, duplicates
        seen: set[int] = set()
        deduped: list[int] = []
        for lit in current:
            if lit in seen:
                continue
            seen.add(lit)
            deduped.append(lit)
        duplicates += len(current) - len(deduped)
        if any(-lit in seen for lit in deduped):
            tautologies += 1
            return
        clauses.append(tuple(deduped))

    for line_no, raw in enumerate(lines, start=1):
        last_line = line_no
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            parts = line.split()
            if len(parts) == 5 and parts[1] == "vr" and parts[2] in (ORIG, AUX, COPY):
                try:
                    lo, hi = int(parts[3]), int(parts[4])
                except ValueError:
                    continue
                ranges.append(VarRange(parts[2], lo, hi))
            continue
        if line.startswith("p"):
            if header is not None:
                raise ParseError("duplicate 'p cnf' header", line_no)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"malformed header {line!r}", line_no)
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"malformed header {line!r}", line_no) from None
            if num_vars < 0 or num_clauses < 0:
                raise ParseError(f"malformed header {line!r}", line_no)
            header = (num_vars, num_clauses)
            continue
        if header is None:
            raise ParseError("clause data before 'p cnf' header", line_no)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise ParseError(f"unexpected token {token!r}", line_no) from None
            if lit == 0:
                finish_clause(line_no)
                current = []
                current_line = None
            else:
                if abs(lit) > header[0]:
                    raise ParseError(
                        f"literal {lit} exceeds declared variable count {header[0]}",
                        line_no,
                    )
                if not current:
                    current_line = line_no
                current.append(lit)

    if header is None:
        raise ParseError("missing 'p cnf' header", last_line or 1)
    if current:
        raise ParseError("clause not terminated by 0", current_line or last_line)

    if ranges:
        orig = [r for r in ranges if r.kind == ORIG]
        num_original = orig[0].hi if orig else header[0]
        var_ranges = tuple(ranges)
    else:
        num_original = header[0]
        var_ranges = (VarRange(ORIG, 1, header[0]),)
    return CnfFormula(
        tuple(clauses),
        num_original,
        var_ranges,
        ParseStats(tautologies, duplicates),
    )


def write_dimacs(formula: CnfFormula, extra_comments=()) -> str:
    """Serialize a formula to DIMACS text, with ``c vr`` range comments."""
    lines = []
    for vr in formula.var_ranges:
        if len(vr):
            lines.append(f"c vr {vr.kind} {vr.lo} {vr.hi}")
    lines.extend(extra_comments)
    top = max(
        (vr.hi for vr in formula.var_ranges if len(vr)),
        default=formula.num_original_vars,
    )
    lines.append(f"p cnf {top} {len(formula.clauses)}")
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def condition(formula: CnfFormula, assignment: Assignment):
    """Reduce the formula under a partial assignment.

    Clauses satisfied by the assignment are removed and falsified literals
    are deleted from the remaining clauses.  Returns the reduced formula,
    or a :class:`Conflict` holding the first clause that becomes empty.
    """
    out = []
    for clause in formula.clauses:
        reduced = []
        satisfied = False
        for lit in clause:
            status = assignment.lit_value(lit)
            if status is None:
                reduced.append(lit)
            elif status:
                satisfied = True
                break
        if satisfied:
            continue
        if not reduced:
            return Conflict(clause)
        out.append(tuple(reduced))
    return replace(formula, clauses=tuple(out))


def propagate_to_fixpoint(formula: CnfFormula, assignment: Assignment):
    """Run unit propagation to fixpoint, extending ``assignment`` in place.

    Repeatedly conditions the formula and asserts every unit clause's
    literal with reason ``PROPAGATED`` until no unit clause remains.
    Returns ``(residual, assignment)``, or a :class:`Conflict` if a clause
    is emptied along the way.
    """
    current = condition(formula, assignment)
    while not isinstance(current, Conflict):
        pending = [clause[0] for clause in current.clauses if len(clause) == 1]
        progressed = False
        for lit in dict.fromkeys(pending):
            # A complementary pending pair surfaces as a Conflict on the
            # next conditioning pass.
            if assignment.lit_value(lit) is None:
                assignment.assign(lit, PROPAGATED)
                progressed = True
        if not progressed:
            return current, assignment
        current = condition(current, assignment)
    return current


def evaluate(formula: CnfFormula, assignment: Assignment) -> bool:
    """Truth value of the formula under a total assignment.

    Raises ``ValueError`` when the assignment leaves an occurring
    variable unassigned.
    """
    for var in formula.variables():
        if var not in assignment:
            raise ValueError(f"evaluate requires a total assignment; variable {var} is unassigned")
    return all(
        any(assignment.lit_value(lit) for lit in clause) for clause in formula.clauses
    )
