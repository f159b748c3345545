"""Partitions, r-partitions and the box combinatorics used by fixed points.

A box ``s`` is stored through its zero-based offsets ``(x(s), y(s))``:
``x`` counts columns to the west and ``y`` counts rows to the south, so the
corner box is ``(0, 0)`` and row ``i`` of a partition holds the boxes with
``y = i``.  Arms and legs are the generalized ones, so they may be negative
for boxes outside the diagram.
"""

from collections import namedtuple
from functools import lru_cache


Box = namedtuple("Box", ["x", "y"])


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts if p)
        if any(p < 0 for p in parts):
            raise ValueError("partition parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts of {parts} are not weakly decreasing")
        return super().__new__(cls, parts)

    @property
    def size(self):
        return sum(self)

    def part(self, i):
        """The ``i``-th part, zero-based, with zeros past the length."""
        return self[i] if 0 <= i < len(self) else 0

    def conjugate(self):
        return _conjugate(self)

    def boxes(self):
        return [Box(x, y) for y, row in enumerate(self) for x in range(row)]

    def contains_box(self, s):
        return s.x >= 0 and s.y >= 0 and s.x < self.part(s.y)

    def arm(self, s):
        return self.part(s.y) - 1 - s.x

    def leg(self, s):
        return self.conjugate().part(s.x) - 1 - s.y

    def n(self):
        """n(lambda) = sum_i (i-1) lambda_i = sum over columns of binom(column, 2)."""
        return sum(c * (c - 1) // 2 for c in self.conjugate())

    def addable(self):
        """Boxes that can be added, ordered by row."""
        out = []
        for y in range(len(self) + 1):
            x = self.part(y)
            if y == 0 or self.part(y - 1) > x:
                out.append(Box(x, y))
        return out

    def removable(self):
        """Boxes that can be removed, ordered by row."""
        out = []
        for y in range(len(self)):
            x = self[y] - 1
            if self.part(y + 1) <= x:
                out.append(Box(x, y))
        return out

    def add_box(self, s):
        parts = list(self) + [0]
        if parts[s.y] != s.x or (s.y > 0 and parts[s.y - 1] <= s.x):
            raise ValueError(f"box {s} is not addable to {self}")
        parts[s.y] += 1
        return Partition(parts)

    def remove_box(self, s):
        if s not in self.removable():
            raise ValueError(f"box {s} is not removable from {self}")
        parts = list(self)
        parts[s.y] -= 1
        return Partition(parts)

    def contains(self, other):
        return len(other) <= len(self) and all(self.part(i) >= p for i, p in enumerate(other))

    def text(self):
        if len(self) == 1:
            return f"({self[0]})"
        return "(" + ",".join(str(p) for p in self) + ")"

    def __repr__(self):
        return f"Partition({list(self)})"


@lru_cache(maxsize=None)
def _conjugate(lam):
    if not lam:
        return Partition()
    return Partition([sum(1 for p in lam if p > j) for j in range(lam[0])])


def arm_leg(lam, s):
    """Generalized arm and leg ``(a_lambda(s), l_lambda(s))``."""
    lam = Partition(lam) if not isinstance(lam, Partition) else lam
    return lam.arm(s), lam.leg(s)


def hooks(ctx, lam, s):
    """The pair ``(h_lambda(s), h^lambda(s))`` = (kappa l + a + 1, kappa (l + 1) + a)."""
    a, l = arm_leg(lam, s)
    k = ctx.kappa
    return k * l + (a + 1), k * (l + 1) + a


def content(ctx, lam, s, variant="kappa", a=None):
    """Content of a box of ``lam``.

    ``variant="kappa"`` gives x(s) - kappa y(s); ``variant="equivariant"``
    gives x(s) x + y(s) y - e_a for colour ``a`` (one-based).
    """
    if not lam.contains_box(s):
        raise ValueError(f"box {s} is outside the diagram {lam}")
    if variant == "kappa":
        return s.x - ctx.kappa * s.y if s.y else ctx.scalar(s.x)
    if variant == "equivariant":
        if a is None or not 1 <= a <= ctx.r:
            raise ValueError("the equivariant content needs a colour index 1..r")
        return s.x * ctx.x + s.y * ctx.y - ctx.e[a - 1]
    raise ValueError(f"unknown content variant {variant!r}")


@lru_cache(maxsize=None)
def partitions_of(n, max_part=None):
    """All partitions of ``n`` in reverse lexicographic order ((n) first)."""
    if max_part is None:
        max_part = n
    if n == 0:
        return (Partition(),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


class MultiPartition(tuple):
    """An r-tuple of partitions."""

    __slots__ = ()

    def __new__(cls, parts):
        return super().__new__(cls, tuple(p if isinstance(p, Partition) else Partition(p) for p in parts))

    @property
    def r(self):
        return len(self)

    @property
    def size(self):
        return sum(p.size for p in self)

    def boxes(self):
        """All ``(colour a, box)`` pairs, colours one-based."""
        return [(a + 1, s) for a, lam in enumerate(self) for s in lam.boxes()]

    def add_boxes(self):
        """Covers from above: list of ``(colour, box, bigger multipartition)``."""
        out = []
        for a, lam in enumerate(self):
            for s in lam.addable():
                parts = list(self)
                parts[a] = lam.add_box(s)
                out.append((a + 1, s, MultiPartition(parts)))
        return out

    def remove_boxes(self):
        """Covers from below: list of ``(colour, box, smaller multipartition)``."""
        out = []
        for a, lam in enumerate(self):
            for s in lam.removable():
                parts = list(self)
                parts[a] = lam.remove_box(s)
                out.append((a + 1, s, MultiPartition(parts)))
        return out

    def contains(self, other):
        return all(a.contains(b) for a, b in zip(self, other))

    def text(self):
        return "[" + ",".join(p.text() if p else "()" for p in self) + "]"

    def __repr__(self):
        return f"MultiPartition({self.text()})"


@lru_cache(maxsize=None)
def enumerate_multipartitions(r, n):
    """All r-partitions of ``n``.

    Order: by the tuple of component sizes in reverse lexicographic order,
    then componentwise in the order of :func:`partitions_of`.
    """
    out = []

    def compositions(total, k):
        if k == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, k - 1):
                yield (first,) + rest

    for sizes in compositions(n, r):
        stacks = [[]]
        for m in sizes:
            stacks = [prefix + [p] for prefix in stacks for p in partitions_of(m)]
        out.extend(MultiPartition(s) for s in stacks)
    return tuple(out)


def parse_multipartition(text):
    """Inverse of :meth:`MultiPartition.text`, e.g. ``"[(2,1),(1)]"``."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"not a multipartition: {text!r}")
    body = body[1:-1].strip()
    parts = []
    depth = 0
    current = ""
    for ch in body:
        if ch == "(":
            depth += 1
            current = ""
        elif ch == ")":
            depth -= 1
            nums = [int(t) for t in current.split(",") if t.strip()]
            parts.append(Partition(nums))
        elif depth:
            current += ch
    return MultiPartition(parts)


def parse_partition(text):
    """Parse ``"2,1"``, ``"(2,1)"`` or ``"21"`` style input."""
    body = text.strip().strip("()[]")
    if not body:
        return Partition()
    if "," in body:
        return Partition(sorted((int(t) for t in body.split(",") if t.strip()), reverse=True))
    return Partition(sorted((int(ch) for ch in body), reverse=True))
