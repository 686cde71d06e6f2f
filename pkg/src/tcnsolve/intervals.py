"""Integer intervals with infinite bounds, and the variable -> interval store.

Bounds are plain Python ints.  The sentinels NEG_INF/POS_INF are the values
-2**62 and 2**62; all interval arithmetic saturates at these sentinels, which
keeps every computed bound an over-approximation of the true one.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, NamedTuple, Tuple

from .errors import DuplicateVariable, UnknownVariable

POS_INF = 1 << 62
NEG_INF = -POS_INF

#: Result of lub_size on an interval with a sentinel bound.
INFINITE = math.inf


class Itv(NamedTuple):
    """A non-normalized interval; use :func:`itv` to construct one."""

    lo: int
    hi: int

    def __str__(self) -> str:
        return render(self)


#: The one canonical empty interval.
EMPTY = Itv(1, 0)

#: The unconstrained interval [-inf, inf].
TOP = Itv(NEG_INF, POS_INF)


def itv(lo: int, hi: int) -> Itv:
    """Build an interval, normalizing any lo > hi to the canonical EMPTY."""
    if lo > hi:
        return EMPTY
    return Itv(lo, hi)


def singleton(v: int) -> Itv:
    return Itv(v, v)


def is_empty(i: Itv) -> bool:
    return i.lo > i.hi


def is_singleton(i: Itv) -> bool:
    return i.lo == i.hi


def contains(i: Itv, v: int) -> bool:
    return i.lo <= v <= i.hi


def subset(a: Itv, b: Itv) -> bool:
    """a included in b (the empty interval is included in everything)."""
    if is_empty(a):
        return True
    return b.lo <= a.lo and a.hi <= b.hi


def intersect(a: Itv, b: Itv) -> Itv:
    if is_empty(a) or is_empty(b):
        return EMPTY
    return itv(max(a.lo, b.lo), min(a.hi, b.hi))


def lub_size(i: Itv):
    """Number of integers in the interval, or INFINITE."""
    if is_empty(i):
        return 0
    if i.lo == NEG_INF or i.hi == POS_INF:
        return INFINITE
    return i.hi - i.lo + 1


def is_finite(i: Itv) -> bool:
    return is_empty(i) or (i.lo > NEG_INF and i.hi < POS_INF)


def values(i: Itv) -> Iterable[int]:
    """Iterate the integers of a finite interval."""
    if is_empty(i):
        return range(0)
    if not is_finite(i):
        raise UnknownVariable("cannot iterate an infinite interval")
    return range(i.lo, i.hi + 1)


def render_bound(b: int) -> str:
    if b <= NEG_INF:
        return "-inf"
    if b >= POS_INF:
        return "inf"
    return str(b)


def render(i: Itv) -> str:
    if is_empty(i):
        return "empty"
    return f"{render_bound(i.lo)}..{render_bound(i.hi)}"


def parse_interval(text: str) -> Itv:
    """Inverse of :func:`render`, used when reading TCN dumps."""
    text = text.strip()
    if text == "empty":
        return EMPTY
    lo_s, hi_s = text.split("..")
    lo = NEG_INF if lo_s == "-inf" else int(lo_s)
    hi = POS_INF if hi_s == "inf" else int(hi_s)
    return itv(lo, hi)


class DomainStore:
    """Insertion-ordered map from variable id to interval.

    Insertion order doubles as the total order on variables used by the
    partition machinery (declaration order, then aux-creation order).
    """

    __slots__ = ("_itv", "_ord")

    def __init__(self, items: Iterable[Tuple[str, Itv]] = ()):
        self._itv: dict = {}
        self._ord: dict = {}
        for x, i in items:
            self.declare(x, i)

    def declare(self, x: str, i: Itv = TOP) -> None:
        if x in self._itv:
            raise DuplicateVariable(x)
        self._ord[x] = len(self._itv)
        self._itv[x] = i

    def update(self, x: str, i: Itv) -> Itv:
        """Intersect x's interval with i; returns the new interval."""
        try:
            cur = self._itv[x]
        except KeyError:
            raise UnknownVariable(x) from None
        new = intersect(cur, i)
        self._itv[x] = new
        return new

    def set(self, x: str, i: Itv) -> None:
        """Overwrite x's interval (no intersection); x must exist."""
        if x not in self._itv:
            raise UnknownVariable(x)
        self._itv[x] = i

    def __getitem__(self, x: str) -> Itv:
        try:
            return self._itv[x]
        except KeyError:
            raise UnknownVariable(x) from None

    def __contains__(self, x: str) -> bool:
        return x in self._itv

    def __iter__(self) -> Iterator[str]:
        return iter(self._itv)

    def __len__(self) -> int:
        return len(self._itv)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DomainStore):
            return NotImplemented
        return self._itv == other._itv

    def items(self):
        return self._itv.items()

    def ordinal(self, x: str) -> int:
        try:
            return self._ord[x]
        except KeyError:
            raise UnknownVariable(x) from None

    def copy(self) -> "DomainStore":
        new = DomainStore.__new__(DomainStore)
        new._itv = dict(self._itv)
        new._ord = self._ord.copy()
        return new

    def restricted(self, keep: Iterable[str]) -> "DomainStore":
        """New store with only `keep`, preserving the original ordering."""
        keep = set(keep)
        new = DomainStore.__new__(DomainStore)
        new._itv = {x: i for x, i in self._itv.items() if x in keep}
        new._ord = {x: n for x, n in self._ord.items() if x in keep}
        return new

    def leq(self, other: "DomainStore") -> bool:
        """Pointwise inclusion over a shared variable set."""
        if self._itv.keys() != other._itv.keys():
            return False
        return all(subset(i, other._itv[x]) for x, i in self._itv.items())

    def has_empty(self) -> bool:
        return any(is_empty(i) for i in self._itv.values())

    def __repr__(self) -> str:
        inner = ", ".join(f"{x}:{render(i)}" for x, i in self._itv.items())
        return f"DomainStore({inner})"
