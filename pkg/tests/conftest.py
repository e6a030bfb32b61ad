import random

import pytest
from hypothesis import strategies as st

from mincount import Assignment, CnfFormula, build_dependency_graph, is_acyclic, parse_dimacs

# Three-variable fixtures used throughout: a positive 3-cycle of clauses
# and an implication 3-cycle, with a, b, c mapped to 1, 2, 3.
EX1_TEXT = "p cnf 3 3\n1 2 0\n2 3 0\n3 1 0\n"
EX2_TEXT = "p cnf 3 3\n-1 2 0\n-2 3 0\n-3 1 0\n"


@pytest.fixture
def ex1():
    return parse_dimacs(EX1_TEXT)


@pytest.fixture
def ex2():
    return parse_dimacs(EX2_TEXT)


def random_formula(rng: random.Random, min_vars=4, max_vars=12, min_clauses=4,
                   max_clauses=40, max_len=4) -> CnfFormula:
    """Random CNF with mixed polarities and clause lengths 1..max_len."""
    n = rng.randint(min_vars, max_vars)
    m = rng.randint(min_clauses, max_clauses)
    clauses = []
    for _ in range(m):
        k = rng.randint(1, max_len)
        chosen = rng.sample(range(1, n + 1), min(k, n))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in chosen))
    return CnfFormula(tuple(clauses), n)


def random_acyclic_formula(rng: random.Random, min_vars=4, max_vars=10,
                           min_clauses=3, max_clauses=25, max_len=4) -> CnfFormula:
    """Random CNF whose dependency graph is guaranteed acyclic.

    Every clause places its negated variables strictly below its positive
    ones in a per-instance variable order, so all arcs point forward.
    """
    n = rng.randint(min_vars, max_vars)
    m = rng.randint(min_clauses, max_clauses)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    rank = {v: i for i, v in enumerate(order)}
    clauses = []
    for _ in range(m):
        k = rng.randint(1, max_len)
        chosen = sorted(rng.sample(range(1, n + 1), min(k, n)), key=rank.get)
        split = rng.randint(0, len(chosen))
        clauses.append(tuple(-v for v in chosen[:split]) + tuple(chosen[split:]))
    formula = CnfFormula(tuple(clauses), n)
    assert is_acyclic(build_dependency_graph(formula))
    return formula


def total_assignment(formula: CnfFormula, true_vars) -> Assignment:
    return Assignment.from_true_set(formula.variables(), true_vars)


@st.composite
def cnf_formulas(draw, max_vars=6, max_clauses=10, max_len=3):
    """Hypothesis strategy for small CNF formulas without duplicate literals."""
    n = draw(st.integers(min_value=1, max_value=max_vars))
    m = draw(st.integers(min_value=0, max_value=max_clauses))
    clauses = []
    for _ in range(m):
        k = draw(st.integers(min_value=1, max_value=min(max_len, n)))
        chosen = draw(st.permutations(range(1, n + 1)))[:k]
        signs = [draw(st.booleans()) for _ in range(k)]
        clauses.append(tuple(v if s else -v for v, s in zip(chosen, signs)))
    return CnfFormula(tuple(clauses), n)
