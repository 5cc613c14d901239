"""Cell dependency graph: precedents, dependents, slices, evaluation order.

The graph is immutable after construction.  Every neighbor list and every
derived set is kept in row-major order so downstream results (evaluation,
marking, fault tracing) are deterministic.
"""

from __future__ import annotations

import heapq
from collections import deque
from typing import Iterable, Mapping

from gridtrace.formulas import referenced_cells
from gridtrace.grid import CellAddress, Formula, Workbook


class CircularReference(Exception):
    """The workbook's reference structure contains a cycle."""

    def __init__(self, cycle: list[CellAddress]) -> None:
        chain = " -> ".join(str(a) for a in cycle + cycle[:1])
        super().__init__(f"circular reference: {chain}")
        self.cycle = cycle


class DependencyGraph:
    """Directed acyclic graph over cell addresses.

    Edges run from a cell to the cells its formula reads (its precedents);
    the inverse direction gives dependents.
    """

    def __init__(self, precedents: Mapping[CellAddress, Iterable[CellAddress]]) -> None:
        prec: dict[CellAddress, tuple[CellAddress, ...]] = {}
        nodes: set[CellAddress] = set()
        for addr, refs in precedents.items():
            addr = addr.without_flags()
            refs = tuple(sorted({r.without_flags() for r in refs}))
            prec[addr] = refs
            nodes.add(addr)
            nodes.update(refs)
        for addr in nodes:
            prec.setdefault(addr, ())

        deps: dict[CellAddress, list[CellAddress]] = {addr: [] for addr in nodes}
        for addr in sorted(nodes):
            for ref in prec[addr]:
                deps[ref].append(addr)

        self._precedents = prec
        self._dependents = {addr: tuple(sorted(ds)) for addr, ds in deps.items()}
        self._nodes = frozenset(nodes)
        self._topo = self._toposort()

    def _toposort(self) -> tuple[CellAddress, ...]:
        pending = {addr: len(self._precedents[addr]) for addr in self._nodes}
        ready = [addr for addr, n in pending.items() if n == 0]
        heapq.heapify(ready)
        order: list[CellAddress] = []
        while ready:
            addr = heapq.heappop(ready)
            order.append(addr)
            for dep in self._dependents[addr]:
                pending[dep] -= 1
                if pending[dep] == 0:
                    heapq.heappush(ready, dep)
        if len(order) != len(self._nodes):
            raise CircularReference(self._find_cycle())
        return tuple(order)

    def _find_cycle(self) -> list[CellAddress]:
        WHITE, GRAY, BLACK = 0, 1, 2
        color = {addr: WHITE for addr in self._nodes}
        stack: list[CellAddress] = []

        def visit(addr: CellAddress) -> list[CellAddress] | None:
            color[addr] = GRAY
            stack.append(addr)
            for ref in self._precedents[addr]:
                if color[ref] == GRAY:
                    cycle = stack[stack.index(ref):]
                    pivot = cycle.index(min(cycle))
                    return cycle[pivot:] + cycle[:pivot]
                if color[ref] == WHITE:
                    found = visit(ref)
                    if found is not None:
                        return found
            stack.pop()
            color[addr] = BLACK
            return None

        for addr in sorted(self._nodes):
            if color[addr] == WHITE:
                found = visit(addr)
                if found is not None:
                    return found
        raise AssertionError("toposort failed but no cycle found")

    @property
    def nodes(self) -> frozenset[CellAddress]:
        return self._nodes

    @property
    def topo_order(self) -> tuple[CellAddress, ...]:
        """All nodes, every cell after all of its precedents."""
        return self._topo

    def __contains__(self, addr: CellAddress) -> bool:
        return addr.without_flags() in self._nodes

    def direct_precedents(self, addr: CellAddress) -> tuple[CellAddress, ...]:
        return self._precedents.get(addr.without_flags(), ())

    def direct_dependents(self, addr: CellAddress) -> tuple[CellAddress, ...]:
        return self._dependents.get(addr.without_flags(), ())

    def backward_slice(self, addr: CellAddress) -> tuple[CellAddress, ...]:
        """Transitive precedents of ``addr``, excluding ``addr`` itself."""
        return self._closure(addr, self._precedents)

    def forward_slice(self, addr: CellAddress) -> tuple[CellAddress, ...]:
        """Transitive dependents of ``addr``, excluding ``addr`` itself."""
        return self._closure(addr, self._dependents)

    def _closure(
        self, addr: CellAddress, edges: Mapping[CellAddress, tuple[CellAddress, ...]]
    ) -> tuple[CellAddress, ...]:
        addr = addr.without_flags()
        seen: set[CellAddress] = set()
        queue = deque(edges.get(addr, ()))
        while queue:
            node = queue.popleft()
            if node in seen:
                continue
            seen.add(node)
            queue.extend(edges[node])
        seen.discard(addr)
        return tuple(sorted(seen))


def build_graph(wb: Workbook) -> DependencyGraph:
    """Graph over every populated cell plus empty cells referenced by formulas.

    Raises:
        CircularReference: with one concrete cycle, smallest member first.
    """
    precedents: dict[CellAddress, tuple[CellAddress, ...]] = {}
    for addr, content in wb.cells():
        if isinstance(content, Formula):
            precedents[addr] = referenced_cells(content.ast)
        else:
            precedents[addr] = ()
    return DependencyGraph(precedents)
