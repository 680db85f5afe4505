"""Admissible completion bounds for border-framed ICP instances.

An instance is *border-framed* in one coordinate when every word of that
coordinate reduces to ``x_k M x_l^-1`` where ``x_k, x_l`` come from a fixed
set of border letters that never occur inside any middle ``M``.  Every
reduced product is then a sequence of frames ``x_c M x_d^-1``.  A frame only
disappears once pairs chained onto it (each starting with the frame's current
right border) walk the border graph from ``d`` back to ``c`` while their
middles cancel ``M``.  Frames are closed one at a time from the right, so the
number of pairs still needed is at least the sum of per-frame lower bounds.

Words are handled as tuples of nonzero ints: letter number ``k`` (1-based in
the alphabet) is ``k`` and its inverse is ``-k``.
"""
from __future__ import annotations

from collections import Counter, deque
from functools import lru_cache

INF = float("inf")
_MAX_SET_LETTERS = 10


class FrameBound:
    """Lower bound on pairs needed to cancel one coordinate to the identity."""

    def __init__(self, words: list[tuple[int, ...]]):
        self.ok = False
        self.edges: list[tuple[int, int, Counter]] = []
        if not words or any(len(w) < 2 for w in words):
            return
        borders = {w[0] for w in words}
        if any(b < 0 for b in borders):
            return
        for w in words:
            if -w[-1] not in borders:
                return
            middle = w[1:-1]
            if any(abs(x) in borders for x in middle):
                return
            self.edges.append((w[0], -w[-1], Counter(middle)))
        self.borders = frozenset(borders)
        self.nodes = sorted(borders)
        self.supply_max: Counter = Counter()
        for _, _, sup in self.edges:
            for z, c in sup.items():
                self.supply_max[z] = max(self.supply_max[z], c)
        self.ok = True
        self._closure = lru_cache(maxsize=1 << 16)(self._closure_uncached)

    def frames(self, w: tuple[int, ...]):
        """Split a reduced product into (left border, middle, right border)."""
        out = []
        i, n = 0, len(w)
        while i < n:
            c = w[i]
            j = i + 1
            while j < n and -w[j] not in self.borders:
                j += 1
            if c not in self.borders or j >= n:
                return None
            if any(x in self.borders for x in w[i + 1:j]):
                return None
            out.append((c, w[i + 1:j], -w[j]))
            i = j + 1
        return out

    def lower_bound(self, w: tuple[int, ...]) -> float:
        if not w:
            return 0
        frames = self.frames(w)
        if frames is None:
            return 0
        total = 0
        for c, middle, d in frames:
            need = Counter(-x for x in middle)
            total += self._closure(c, d, tuple(sorted(need.items())))
        return total

    def _closure_uncached(self, c: int, d: int, need: tuple[tuple[int, int], ...]) -> float:
        needed = [z for z, _ in need]
        if any(self.supply_max[z] == 0 for z in needed):
            return INF
        best = self._walk_covering(c, d, needed[:_MAX_SET_LETTERS])
        for z, count in need:
            per_edge = self.supply_max[z]
            uses = -(-count // per_edge)
            best = max(best, uses + self._walk_other_edges(c, d, z))
        return best

    def _walk_covering(self, c: int, d: int, letters: list[int]) -> float:
        """Shortest nonempty walk d -> c whose edges jointly supply every letter."""
        bit = {z: 1 << i for i, z in enumerate(letters)}
        full = (1 << len(letters)) - 1
        masks = [
            (k, l, sum(b for z, b in bit.items() if sup[z] > 0)) for k, l, sup in self.edges
        ]
        start = (d, 0)
        dist = {start: 0}
        queue = deque([start])
        while queue:
            node, mask = queue.popleft()
            steps = dist[(node, mask)]
            for k, l, m in masks:
                if k != node:
                    continue
                state = (l, mask | m)
                if state == (c, full):
                    return steps + 1
                if state not in dist:
                    dist[state] = steps + 1
                    queue.append(state)
        return INF

    def _walk_other_edges(self, c: int, d: int, z: int) -> float:
        """Fewest non-z edges on a walk d -> c that uses at least one z edge."""
        start = (d, False)
        dist = {start: 0}
        queue = deque([start])
        while queue:
            node, used = queue.popleft()
            base = dist[(node, used)]
            for k, l, sup in self.edges:
                if k != node:
                    continue
                supplies = sup[z] > 0
                state = (l, used or supplies)
                cost = base if supplies else base + 1
                if cost < dist.get(state, INF):
                    dist[state] = cost
                    if supplies:
                        queue.appendleft(state)
                    else:
                        queue.append(state)
        return dist.get((c, True), INF)
