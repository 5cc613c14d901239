"""Locate the most influential faulty cell for a cell with a propagated symptom.

Starting from the queried cell, each round inspects the faulty direct
precedents of the current cell.  If there are none, the current cell is the
answer.  Otherwise the candidates are narrowed first by their own number of
faulty direct precedents, then by their number of faulty direct dependents,
and a remaining tie is broken deterministically by row-major order (flagged
in the result).  The search always moves one precedent edge per round, so it
terminates on any acyclic graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from gridtrace.graph import DependencyGraph
from gridtrace.grid import CellAddress
from gridtrace.verification import MarkSheet, VerificationState


class QueryNotFaulty(Exception):
    """Tracing was requested for a cell that carries no symptom of fault."""

    def __init__(self, cell: CellAddress) -> None:
        super().__init__(f"{cell} has no symptom of fault")
        self.cell = cell


def _is_faulty(marks: MarkSheet, addr: CellAddress) -> bool:
    status = marks.get(addr)
    return status is not None and status.state is VerificationState.SYMPTOM


def faulty_direct_precedents(
    g: DependencyGraph, marks: MarkSheet, c: CellAddress
) -> tuple[CellAddress, ...]:
    return tuple(a for a in g.direct_precedents(c) if _is_faulty(marks, a))


def faulty_direct_dependents(
    g: DependencyGraph, marks: MarkSheet, c: CellAddress
) -> tuple[CellAddress, ...]:
    return tuple(a for a in g.direct_dependents(c) if _is_faulty(marks, a))


@dataclass(frozen=True)
class TraceStep:
    """One round of the search, with every working set it computed.

    ``resolved_step`` records how the round ended: 2 = no faulty precedents,
    current cell is the answer; 5 = a single candidate led on faulty
    precedents; 8 = a single candidate led on faulty dependents; 9 = the tie
    was broken by row-major order.
    """

    current: CellAddress
    faulty_precedents: tuple[CellAddress, ...]
    faulty_precedents_of: dict[CellAddress, tuple[CellAddress, ...]]
    precedent_winners: tuple[CellAddress, ...]
    faulty_dependents_of: dict[CellAddress, tuple[CellAddress, ...]]
    dependent_winners: tuple[CellAddress, ...]
    resolved_step: int
    next: CellAddress | None

    def to_dict(self) -> dict:
        return {
            "current": str(self.current),
            "faulty_precedents": [str(a) for a in self.faulty_precedents],
            "faulty_precedents_of": {
                str(a): [str(b) for b in bs] for a, bs in self.faulty_precedents_of.items()
            },
            "precedent_winners": [str(a) for a in self.precedent_winners],
            "faulty_dependents_of": {
                str(a): [str(b) for b in bs] for a, bs in self.faulty_dependents_of.items()
            },
            "dependent_winners": [str(a) for a in self.dependent_winners],
            "resolved_step": self.resolved_step,
            "next": None if self.next is None else str(self.next),
        }


@dataclass(frozen=True)
class TraceResult:
    query: CellAddress
    most_influential: CellAddress
    path: tuple[CellAddress, ...]
    steps: tuple[TraceStep, ...]
    tie_broken: bool = False

    def to_dict(self) -> dict:
        return {
            "query": str(self.query),
            "most_influential": str(self.most_influential),
            "path": [str(a) for a in self.path],
            "tie_broken": self.tie_broken,
            "steps": [step.to_dict() for step in self.steps],
        }


def trace_most_influential(
    g: DependencyGraph, marks: MarkSheet, query: CellAddress
) -> TraceResult:
    """Run the search from ``query``, snapshotting every round.

    Raises:
        QueryNotFaulty: if ``query`` is not marked with a symptom.
    """
    query = query.without_flags()
    if not _is_faulty(marks, query):
        raise QueryNotFaulty(query)

    path = [query]
    steps: list[TraceStep] = []
    tie_broken = False
    current = query

    while True:
        candidates = faulty_direct_precedents(g, marks, current)
        if not candidates:
            steps.append(
                TraceStep(current, candidates, {}, (), {}, (), resolved_step=2, next=None)
            )
            return TraceResult(query, current, tuple(path), tuple(steps), tie_broken)

        precedents_of = {c: faulty_direct_precedents(g, marks, c) for c in candidates}
        best = max(len(v) for v in precedents_of.values())
        precedent_winners = tuple(c for c in candidates if len(precedents_of[c]) == best)

        dependents_of: dict[CellAddress, tuple[CellAddress, ...]] = {}
        dependent_winners: tuple[CellAddress, ...] = ()
        if len(precedent_winners) == 1:
            chosen = precedent_winners[0]
            resolved = 5
        else:
            dependents_of = {
                c: faulty_direct_dependents(g, marks, c) for c in precedent_winners
            }
            best_dep = max(len(v) for v in dependents_of.values())
            dependent_winners = tuple(
                c for c in precedent_winners if len(dependents_of[c]) == best_dep
            )
            if len(dependent_winners) == 1:
                chosen = dependent_winners[0]
                resolved = 8
            else:
                chosen = min(dependent_winners)
                resolved = 9
                tie_broken = True

        steps.append(
            TraceStep(
                current,
                candidates,
                precedents_of,
                precedent_winners,
                dependents_of,
                dependent_winners,
                resolved_step=resolved,
                next=chosen,
            )
        )
        path.append(chosen)
        current = chosen
