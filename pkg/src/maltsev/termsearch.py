"""Deciding the existence of a ternary cancellation term for the variety
generated by a finite algebra, with witness reconstruction.

A candidate term t is constrained only through the two binary functions
t(a,b,b) and t(b,b,a), so the search runs a breadth-first subalgebra
closure over pairs of such functions.  The variable generators are
    x -> (first projection, second projection)
    y -> (second projection, second projection)
    z -> (second projection, first projection)
and a term is a witness exactly when its pair is (first, first).  When the
closure completes without reaching the target the answer is a definitive
"none"; exhausting the budget is reported as a distinct third outcome.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Literal

from .algebras import (
    FiniteAlgebra,
    evaluate,
    is_maltsev_operation,
    make_algebra,
    table_from_function,
)
from .congruences import all_congruences, permute, quotient
from .algebras import product_algebra
from .errors import EvaluationError
from .terms import App, Term, Var, variables

PairVector = tuple[int, ...]

Status = Literal["found", "none", "budget-exhausted"]


@dataclass(frozen=True)
class SearchOutcome:
    status: Status
    term: Term | None
    visited: int


def _generators(n: int) -> dict[str, PairVector]:
    firsts = tuple(i // n for i in range(n * n))
    seconds = tuple(i % n for i in range(n * n))
    return {
        "x": firsts + seconds,
        "y": seconds + seconds,
        "z": seconds + firsts,
    }


def _target(n: int) -> PairVector:
    firsts = tuple(i // n for i in range(n * n))
    return firsts + firsts


def find_maltsev_term(alg: FiniteAlgebra, budget: int = 10**7) -> SearchOutcome:
    """Breadth-first closure of the three generator pair-vectors under the
    basic operations applied coordinatewise.

    The witness is the BFS-first one: levels are expanded in signature
    order, then in lexicographic order of argument index tuples, so reruns
    are deterministic.  Any returned term is re-verified pointwise.
    """
    n = alg.size
    gens = _generators(n)
    target = _target(n)

    elements: list[PairVector] = []
    parents: list[tuple] = []
    index: dict[PairVector, int] = {}

    def add(vec: PairVector, parent: tuple) -> bool:
        if vec in index:
            return False
        index[vec] = len(elements)
        elements.append(vec)
        parents.append(parent)
        return True

    for name in ("x", "y", "z"):
        add(gens[name], ("gen", name))
    if target in index:
        return _found(alg, elements, parents, index[target])

    width = 2 * n * n
    level_start = 0
    first_round = True
    while True:
        level_end = len(elements)
        buffer: list[tuple[PairVector, tuple]] = []
        buffered: set[PairVector] = set()
        for sym, tab in alg.tables:
            k = tab.arity
            if k == 0:
                if first_round:
                    vec = (tab.entries[0],) * width
                    if vec not in index and vec not in buffered:
                        buffer.append((vec, ("app", sym, ())))
                        buffered.add(vec)
                continue
            for idxs in _index_tuples(level_end, k, level_start):
                vec = tuple(
                    tab.apply(n, *(elements[i][c] for i in idxs))
                    for c in range(width)
                )
                if vec in index or vec in buffered:
                    continue
                buffer.append((vec, ("app", sym, idxs)))
                buffered.add(vec)
        if not buffer:
            return SearchOutcome("none", None, len(elements))
        for vec, parent in buffer:
            add(vec, parent)
            if len(elements) > budget:
                return SearchOutcome("budget-exhausted", None, len(elements))
            if vec == target:
                return _found(alg, elements, parents, index[target])
        level_start = level_end
        first_round = False


def _index_tuples(total: int, k: int, must_reach: int):
    """Lexicographic k-tuples over range(total) with max >= must_reach."""
    for idxs in itertools.product(range(total), repeat=k):
        if max(idxs) >= must_reach:
            yield idxs


def _found(alg, elements, parents, target_index) -> SearchOutcome:
    term = rebuild_term(parents, target_index)
    assert verify_maltsev_term(alg, term), "search produced an unverified term"
    return SearchOutcome("found", term, len(elements))


def rebuild_term(parents: list[tuple], i: int) -> Term:
    parent = parents[i]
    if parent[0] == "gen":
        return Var(parent[1])
    _, sym, idxs = parent
    return App(sym, tuple(rebuild_term(parents, j) for j in idxs))


def replay_vector(alg: FiniteAlgebra, t: Term) -> PairVector:
    """Recompute the pair vector of a term directly; used to confirm that
    witness reconstruction matches the search state."""
    n = alg.size
    left = tuple(
        evaluate(alg, t, {"x": a, "y": b, "z": b}) for a in range(n) for b in range(n)
    )
    right = tuple(
        evaluate(alg, t, {"x": b, "y": b, "z": a}) for a in range(n) for b in range(n)
    )
    return left + right


def verify_maltsev_term(alg: FiniteAlgebra, t: Term) -> bool:
    """Build the induced ternary table of t and check both cancellation
    equations pointwise."""
    foreign = set(variables(t)) - {"x", "y", "z"}
    if foreign:
        raise EvaluationError(f"foreign variables {sorted(foreign)}")
    n = alg.size
    induced = table_from_function(
        n, 3, lambda a, b, c: evaluate(alg, t, {"x": a, "y": b, "z": c})
    )
    probe = make_algebra("induced", n, {"t": induced})
    return is_maltsev_operation(probe, "t")


def permutability_audit(
    alg: FiniteAlgebra, square_limit: int = 36, lattice_guard: int = 8
) -> list[str]:
    """Check that all congruence pairs permute for the algebra, each of its
    quotients, and its square (when within the size limit).  Returns a list
    of human-readable failures; empty means the audit passed."""
    failures: list[str] = []
    subjects: list[FiniteAlgebra] = [alg]
    base = all_congruences(alg, max_size=lattice_guard)
    subjects.extend(quotient(alg, theta) for theta in base)
    if alg.size * alg.size <= square_limit:
        subjects.append(product_algebra(alg, alg))
    for subject in subjects:
        congruences = all_congruences(subject, max_size=max(lattice_guard, subject.size))
        for i, theta in enumerate(congruences):
            for phi in congruences[i + 1 :]:
                if not permute(subject, theta, phi):
                    failures.append(
                        f"{subject.name}: congruences do not permute"
                    )
    return failures
