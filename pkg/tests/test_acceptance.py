"""End-to-end acceptance suite.

Each test covers one acceptance criterion, prints one PASS/FAIL line
(visible with ``pytest -s`` or in captured output), and fails hard on
any deviation.  Everything is exact; there are no tolerances.
"""

import random
import time

import pytest

from mincount import (
    Assignment,
    BranchPolicy,
    CnfFormula,
    MIN_ID,
    base_case,
    build_dependency_graph,
    build_pair,
    check_minimal,
    count_minimal,
    count_minimal_brute,
    count_models,
    enumerate_models,
    is_acyclic,
    minimal_models_pairwise,
    parse_dimacs,
    tseitin_cnf,
    forced_formula,
    copy_formula,
    with_forced_clauses,
)

from conftest import EX1_TEXT, EX2_TEXT, random_acyclic_formula, random_formula, total_assignment

SUITE3_SIZE = 1000
SUITE4_SIZE = 300


def report(criterion: int, ok: bool, detail: str) -> None:
    line = f"acceptance criterion {criterion}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def suite3():
    rng = random.Random(20250808)
    return [random_formula(rng) for _ in range(SUITE3_SIZE)]


def test_criterion_1_positive_cycle_reproduction():
    started = time.perf_counter()
    f = parse_dimacs(EX1_TEXT)
    model_count = count_models(f).count
    strengthened_count = count_models(with_forced_clauses(f)).count
    minimal_count = count_minimal(f).count
    acyclic = is_acyclic(build_dependency_graph(f))
    elapsed = time.perf_counter() - started
    ok = (
        model_count == 4
        and strengthened_count == 3
        and minimal_count == 3
        and acyclic
        and elapsed < 1.0
    )
    report(
        1, ok,
        f"models={model_count} strengthened={strengthened_count} "
        f"minimal={minimal_count} acyclic={acyclic} elapsed={elapsed:.3f}s",
    )


def test_criterion_2_implication_cycle_reproduction():
    started = time.perf_counter()
    f = parse_dimacs(EX2_TEXT)
    graph = build_dependency_graph(f)
    arcs_ok = graph.arcs == frozenset({(1, 2), (2, 3), (3, 1)}) and not is_acyclic(graph)

    forced = tseitin_cnf(forced_formula(f), 4)
    forced_ok = {frozenset(c) for c in forced.clauses} == {
        frozenset({-1, 3}), frozenset({-2, 1}), frozenset({-3, 2})
    }

    pair = build_pair(f)
    copies = copy_formula(f, pair.copy_map)
    copy_ok = {frozenset(c) for c in copies.clauses} == {
        frozenset({-4, 1}), frozenset({-5, 2}), frozenset({-6, 3}),
        frozenset({-4, 5}), frozenset({-5, 6}), frozenset({-6, 4}),
    }

    strengthened_count = count_models(with_forced_clauses(f)).count
    minimal_count = count_minimal(f).count

    all_false = build_pair(f)
    all_false.assignment = Assignment.from_literals([-1, -2, -3])
    accepted = base_case(all_false)
    all_true = build_pair(f)
    all_true.assignment = Assignment.from_literals([1, 2, 3])
    rejected = base_case(all_true)

    elapsed = time.perf_counter() - started
    ok = (
        arcs_ok and forced_ok and copy_ok
        and strengthened_count == 2 and minimal_count == 1
        and accepted == 1 and rejected == 0
        and elapsed < 1.0
    )
    report(
        2, ok,
        f"arcs_ok={arcs_ok} forced_ok={forced_ok} copy_ok={copy_ok} "
        f"strengthened={strengthened_count} minimal={minimal_count} "
        f"empty_assignment={accepted} all_true={rejected} elapsed={elapsed:.3f}s",
    )


def test_criterion_3_oracle_equivalence(suite3):
    started = time.perf_counter()
    mismatches = []
    for index, f in enumerate(suite3):
        got = count_minimal(f).count
        want = count_minimal_brute(f).count
        if got != want:
            mismatches.append((index, got, want))
    elapsed = time.perf_counter() - started
    ok = not mismatches and elapsed < 300.0
    report(
        3, ok,
        f"instances={len(suite3)} mismatches={len(mismatches)} elapsed={elapsed:.1f}s"
        + (f" first={mismatches[0]}" if mismatches else ""),
    )


def test_criterion_4_acyclic_strengthening_counts_minimal_models():
    rng = random.Random(40188)
    mismatches = 0
    for _ in range(SUITE4_SIZE):
        f = random_acyclic_formula(rng)
        assert is_acyclic(build_dependency_graph(f))
        got = count_models(with_forced_clauses(f)).count
        want = count_minimal_brute(f).count
        if got != want:
            mismatches += 1
    report(4, mismatches == 0, f"instances={SUITE4_SIZE} mismatches={mismatches}")


def test_criterion_5_minimality_test_agreement(suite3):
    checked = 0
    disagreements = 0
    for f in suite3:
        models = enumerate_models(f)
        minimal = set(minimal_models_pairwise(models).models)
        for m in models:
            sat_based = check_minimal(f, total_assignment(f, m))
            if sat_based != (m in minimal):
                disagreements += 1
            checked += 1
    report(
        5, disagreements == 0,
        f"models_checked={checked} disagreements={disagreements}",
    )


def test_criterion_6_metamorphic_neutrality(suite3):
    rng = random.Random(60633)
    failures = 0
    for f in suite3:
        baseline = count_minimal(f).count
        no_decomposition = count_minimal(f, use_decomposition=False).count
        min_id = count_minimal(f, policy=BranchPolicy(MIN_ID)).count
        permuted_clauses = list(f.clauses)
        rng.shuffle(permuted_clauses)
        permuted = count_minimal(
            CnfFormula(tuple(permuted_clauses), f.num_original_vars)
        ).count
        if not baseline == no_decomposition == min_id == permuted:
            failures += 1
    report(6, failures == 0, f"instances={len(suite3)} failures={failures}")


def test_criterion_7_degenerate_inputs():
    empty = count_minimal(parse_dimacs("p cnf 0 0\n")).count
    empty_clause = count_minimal(parse_dimacs("p cnf 2 1\n0\n")).count

    all_negative_ok = True
    rng = random.Random(70711)
    for _ in range(50):
        n = rng.randint(2, 8)
        m = rng.randint(1, 12)
        clauses = []
        for _ in range(m):
            k = rng.randint(1, min(3, n))
            clauses.append(tuple(-v for v in rng.sample(range(1, n + 1), k)))
        f = CnfFormula(tuple(clauses), n)
        if count_minimal(f).count != count_minimal_brute(f).count:
            all_negative_ok = False

    padded = count_minimal(parse_dimacs("p cnf 9 2\n1 2 0\n-1 3 0\n")).count
    tight = count_minimal(parse_dimacs("p cnf 3 2\n1 2 0\n-1 3 0\n")).count

    ok = (
        empty == 1
        and empty_clause == 0
        and all_negative_ok
        and padded == tight
    )
    report(
        7, ok,
        f"empty={empty} empty_clause={empty_clause} all_negative_ok={all_negative_ok} "
        f"padded={padded} tight={tight}",
    )
