"""Union-find partition of variables with ordered representatives.

Union is by rank with path compression, but the representative reported for
a class is always its minimum variable under the store's total order (the
rank root and the representative are tracked separately).
"""

from __future__ import annotations

from typing import Dict, Iterable, List

from .errors import UnknownVariable
from .intervals import EMPTY, DomainStore, Itv, intersect


class Partition:
    __slots__ = ("_parent", "_rank", "_rep", "_members", "_ord", "classes_count")

    def __init__(self, variables: Iterable[str]):
        """Registration order is the total order used for representatives."""
        self._parent: Dict[str, str] = {}
        self._rank: Dict[str, int] = {}
        self._rep: Dict[str, str] = {}
        self._members: Dict[str, List[str]] = {}
        self._ord: Dict[str, int] = {}
        for x in variables:
            self.add(x)
        self.classes_count = len(self._parent)

    @classmethod
    def init(cls, d: DomainStore) -> "Partition":
        return cls(d)

    def _key(self, x: str) -> int:
        return self._ord[x]

    def add(self, x: str) -> None:
        """Late-register a variable as its own singleton class."""
        if x in self._parent:
            return
        self._ord[x] = len(self._ord)
        self._parent[x] = x
        self._rank[x] = 0
        self._rep[x] = x
        self._members[x] = [x]
        self.classes_count = len(self._members)

    def find(self, x: str) -> str:
        try:
            root = self._parent[x]
        except KeyError:
            raise UnknownVariable(x) from None
        if root == x:
            return x
        path = []
        while self._parent[root] != root:
            path.append(root)
            root = self._parent[root]
        for y in path:
            self._parent[y] = root
        self._parent[x] = root
        return root

    def representative(self, x: str) -> str:
        """Minimum variable of x's class under the total order."""
        return self._rep[self.find(x)]

    def same(self, x: str, y: str) -> bool:
        return self.find(x) == self.find(y)

    def merge(self, x: str, y: str) -> bool:
        """Union the two classes; returns True if they were distinct."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self._rank[rx] < self._rank[ry]:
            rx, ry = ry, rx
        self._parent[ry] = rx
        if self._rank[rx] == self._rank[ry]:
            self._rank[rx] += 1
        if self._key(self._rep[ry]) < self._key(self._rep[rx]):
            self._rep[rx] = self._rep[ry]
        mx, my = self._members[rx], self._members.pop(ry)
        if len(my) > len(mx):
            self._members[rx] = my
            my.extend(mx)
        else:
            mx.extend(my)
        self.classes_count -= 1
        return True

    def members(self, x: str) -> List[str]:
        return list(self._members[self.find(x)])

    def classes(self) -> List[frozenset]:
        return [frozenset(m) for m in self._members.values()]

    def __iter__(self):
        return iter(self._parent)

    def __len__(self):
        return len(self._parent)


def dom_E(part: Partition, d: DomainStore, x: str) -> Itv:
    """Intersection of the domains of every variable in x's class."""
    if x not in d:
        raise UnknownVariable(x)
    out = d[x]
    for y in part._members[part.find(x)]:
        if y != x:
            out = intersect(out, d[y])
            if out is EMPTY:
                return EMPTY
    return out
