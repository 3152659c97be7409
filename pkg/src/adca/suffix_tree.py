"""Depth-bounded suffix trie with suffix links, active point and coding contexts.

The trie holds every substring of the input seen so far whose length is at
most ``d + 1``.  Every such substring is an explicit node, so the active
point is always a node (the one for the longest recently re-occurring
suffix, truncated to depth ``d + 1``) and the coding context ``beta`` is
that node or its depth-``d`` suffix.
"""

from __future__ import annotations

from collections.abc import Iterator

__all__ = ["ContextTree", "Node"]


class Node:
    __slots__ = ("symbol", "parent", "depth", "children", "link", "counts", "born")

    def __init__(self, symbol, parent, depth, link, born):
        self.symbol = symbol
        self.parent = parent
        self.depth = depth
        self.children: dict[int, Node] = {}
        self.link = link
        # counter table N(c | node); None until the node has two children
        self.counts: dict[int, int] | None = None
        # number of symbols consumed when the node first appeared
        self.born = born

    @property
    def word(self) -> tuple[int, ...]:
        out = []
        p = self
        while p.parent is not None:
            out.append(p.symbol)
            p = p.parent
        return tuple(reversed(out))

    def labels(self) -> frozenset[int]:
        return frozenset(self.children)

    def count(self, c: int) -> int:
        return self.counts.get(c, 0) if self.counts is not None else 0

    def __repr__(self):
        return f"Node({''.join(map(str, self.word)) or 'λ'})"


class ContextTree:
    """Online trie of all substrings of length <= d + 1.

    ``suffixes[k]`` is the node for the length-``k`` suffix of the input
    consumed so far, for ``k`` up to ``min(i, d + 1)``.
    """

    def __init__(self, J: int, d: int):
        if d < 0:
            raise ValueError("depth bound d must be non-negative")
        self.J = J
        self.d = d
        self.root = Node(None, None, 0, None, 0)
        self.suffixes = [self.root]
        self.alpha_depth = 0
        self.i = 0
        self.size = 1

    @property
    def alpha(self) -> Node:
        return self.suffixes[self.alpha_depth]

    def beta(self) -> Node:
        depth = self.alpha_depth
        return self.suffixes[depth if depth < self.d else self.d]

    def _add_child(self, parent: Node, a: int, link: Node) -> Node:
        child = Node(a, parent, parent.depth + 1, link, self.i + 1)
        kids = parent.children
        kids[a] = child
        if parent.counts is not None:
            parent.counts[a] = 1
        elif len(kids) == 2:
            parent.counts = {c: 1 for c in kids}
        self.size += 1
        return child

    def extend(self, a: int) -> int:
        """Consume symbol ``a``; return the number of nodes inserted."""
        if not 0 <= a < self.J:
            raise ValueError(f"symbol {a} outside the alphabet of size {self.J}")
        old = self.suffixes
        top = min(self.i + 1, self.d + 1)
        new = [self.root]
        alpha = 0
        inserted = 0
        for k in range(1, top + 1):
            parent = old[k - 1]
            child = parent.children.get(a)
            if child is None:
                child = self._add_child(parent, a, new[k - 1])
                inserted += 1
            elif alpha == k - 1:
                alpha = k
            new.append(child)
        self.suffixes = new
        self.alpha_depth = alpha
        self.i += 1
        return inserted

    def labels(self, p: Node) -> frozenset[int]:
        return frozenset(p.children)

    def rank_list(self, beta: Node | None = None) -> list[int]:
        """Symbols missing below ``beta``, most plausible first.

        Each missing symbol ``c`` is scored by the deepest suffix-link ancestor
        of ``beta`` that has a ``c`` edge: longer supporting context first,
        then larger counter at that node, then smaller symbol.  A symbol never
        seen at all scores length 1 and count 0.
        """
        if beta is None:
            beta = self.beta()
        keys = []
        for c in range(self.J):
            if c in beta.children:
                continue
            p = beta.link
            while p is not None and c not in p.children:
                p = p.link
            if p is None:
                keys.append((-1, 0, c))
            else:
                keys.append((-(p.depth + 1), -p.count(c), c))
        keys.sort()
        return [c for _, _, c in keys]

    def bump_counter(self, p: Node, c: int) -> None:
        if p.counts is None:
            raise ValueError("counter table of this node is not active")
        if c not in p.counts:
            raise ValueError(f"node has no edge labelled {c}")
        p.counts[c] += 1

    def nodes(self) -> Iterator[Node]:
        """All nodes in (depth, word) order."""
        level = [self.root]
        while level:
            yield from level
            level = [ch for p in level for _, ch in sorted(p.children.items())]

    def fingerprint(self) -> tuple:
        """Hashable snapshot of structure, counters, links and active point."""
        nodes = []
        for p in self.nodes():
            counts = None if p.counts is None else tuple(sorted(p.counts.items()))
            link = None if p.link is None else p.link.word
            nodes.append((p.word, tuple(sorted(p.children)), link, counts))
        return (self.i, self.alpha_depth, self.beta().word, tuple(nodes))

    def dump(self) -> str:
        lines = []
        for p in self.nodes():
            w = "".join(map(str, p.word)) or "λ"
            parent = "-" if p.parent is None else ("".join(map(str, p.parent.word)) or "λ")
            link = "-" if p.link is None else ("".join(map(str, p.link.word)) or "λ")
            kids = ",".join(map(str, sorted(p.children)))
            counts = "-" if p.counts is None else ",".join(f"{c}:{n}" for c, n in sorted(p.counts.items()))
            lines.append(f"{w}\tdepth={p.depth}\tparent={parent}\tchildren={kids}\tlink={link}\tcounts={counts}")
        lines.append(f"alpha={''.join(map(str, self.alpha.word)) or 'λ'}\tbeta={''.join(map(str, self.beta().word)) or 'λ'}")
        return "\n".join(lines) + "\n"
