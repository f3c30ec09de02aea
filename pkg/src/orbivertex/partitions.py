"""Ordinary, colored 2D and colored 3D partitions.

Partitions are plain tuples of weakly decreasing positive integers.  Colored
2D partitions carry a modulus ``k = n + 1`` and color box ``(i, j)`` (row,
column, 0-based) by ``(j - i) mod k``.  Plane partitions are stored as a tuple
of 2D slices ``lambda^(0) >= lambda^(1) >= ...`` stacked along the third axis,
so box ``(a, b, c)`` is present iff ``b < slices[c][a]``; its color is
``(a - b) mod k``.

Maya diagrams use the convention ``p_i = lambda_i - i`` (i >= 1), vacuum
``{-1, -2, ...}``.  For the core/quotient split a position ``p`` belongs to
sublattice ``(p + 1) mod k``; see ``quotient_core``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator


Partition = tuple


def normalize(parts: Iterable[int]) -> Partition:
    out = tuple(sorted((int(p) for p in parts if p), reverse=True))
    if out and out[-1] < 0:
        raise ValueError("negative part")
    return out


def parse_partition(text: str) -> Partition:
    """Parse a literal such as ``"2,1"``; the empty string is the empty partition."""
    text = text.strip()
    if not text or text in ("0", "()", "[]"):
        return ()
    try:
        parts = [int(tok) for tok in text.replace(" ", "").strip("()[]").split(",") if tok]
    except ValueError as exc:
        raise ValueError(f"bad partition literal {text!r}") from exc
    if any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
        raise ValueError(f"bad partition literal {text!r}")
    return tuple(parts)


def format_partition(lam: Partition) -> str:
    return ",".join(str(p) for p in lam)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def boxes(lam: Partition):
    return [(i, j) for i, row in enumerate(lam) for j in range(row)]


def hook_lengths(lam: Partition):
    conj = conjugate(lam)
    return [lam[i] - j + conj[j] - i - 1 for i, j in boxes(lam)]


def dimension(lam: Partition) -> int:
    """Number of standard tableaux, by the hook length formula."""
    from math import factorial, prod
    return factorial(sum(lam)) // prod(hook_lengths(lam))


def z_factor(mu: Partition) -> int:
    """|Aut(mu)| * prod(mu_i): the centralizer order of cycle type mu."""
    from collections import Counter
    from math import factorial
    out = 1
    for part, mult in Counter(mu).items():
        out *= part ** mult * factorial(mult)
    return out


@lru_cache(maxsize=None)
def partitions_of(size: int, max_part: int | None = None) -> tuple:
    """All partitions of ``size`` in reverse lexicographic order."""
    if max_part is None:
        max_part = size
    if size == 0:
        return ((),)
    out = []
    for first in range(min(size, max_part), 0, -1):
        for rest in partitions_of(size - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enum_partitions(max_size: int) -> Iterator[Partition]:
    if max_size < 0:
        raise ValueError("max_size must be >= 0")
    for size in range(max_size + 1):
        yield from partitions_of(size)


# -- colored 2D partitions ----------------------------------------------------

@dataclass(frozen=True, order=True)
class ColoredPartition:
    parts: Partition
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "parts", normalize(self.parts))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def boxes(self):
        return boxes(self.parts)

    def color(self, box) -> int:
        i, j = box
        return (j - i) % self.modulus

    def color_counts(self) -> tuple:
        counts = [0] * self.modulus
        for box in self.boxes():
            counts[self.color(box)] += 1
        return tuple(counts)

    def is_multi_regular(self) -> bool:
        return len(set(self.color_counts())) <= 1

    def literal(self) -> str:
        return format_partition(self.parts)

    def to_json(self):
        return {"parts": list(self.parts), "modulus": self.modulus}


# -- plane partitions -----------------------------------------------------------

@dataclass(frozen=True)
class PlanePartition:
    """Stack of 2D slices along the third axis; slice ``c`` is the set of
    boxes ``(a, b)`` at height ``c``."""

    slices: tuple
    modulus: int = 1

    @property
    def size(self) -> int:
        return sum(sum(s) for s in self.slices)

    def boxes(self):
        return sorted((a, b, c) for c, sl in enumerate(self.slices)
                      for a, row in enumerate(sl) for b in range(row))

    def color(self, box) -> int:
        return (box[0] - box[1]) % self.modulus

    def color_counts(self) -> tuple:
        counts = [0] * self.modulus
        for box in self.boxes():
            counts[self.color(box)] += 1
        return tuple(counts)

    def key(self):
        """Canonical column encoding: heights read row by row."""
        if not self.slices:
            return ()
        base = self.slices[0]
        return tuple(tuple(sum(1 for sl in self.slices if len(sl) > a and sl[a] > b)
                           for b in range(base[a])) for a in range(len(base)))

    def with_modulus(self, modulus: int) -> "PlanePartition":
        return PlanePartition(self.slices, modulus)

    def to_json(self):
        return [list(b) for b in self.boxes()]


def color_counts(obj) -> tuple:
    return obj.color_counts()


def _subpartitions(outer: Partition, limit: int, row: int = 0, cap: int | None = None):
    """Partitions contained in ``outer`` with at most ``limit`` boxes."""
    if row >= len(outer):
        yield ()
        return
    top = outer[row] if cap is None else min(outer[row], cap)
    for first in range(min(top, limit), -1, -1):
        if first == 0:
            yield ()
            continue
        for rest in _subpartitions(outer, limit - first, row + 1, first):
            yield (first,) + rest


def _stacks_on(base: Partition, budget: int):
    """All slice stacks whose first slice is exactly ``base``."""
    yield (base,)
    if budget <= 0:
        return
    for nxt in _subpartitions(base, budget):
        if not nxt:
            continue
        for rest in _stacks_on(nxt, budget - sum(nxt)):
            yield (base,) + rest


def plane_partitions_by_base(max_boxes: int, n: int = 0) -> dict:
    """Plane partitions with at most ``max_boxes`` boxes, grouped by their
    first slice.  The groups are disjoint, so they can be consumed in parallel."""
    k = n + 1
    groups = {}
    for base in enum_partitions(max_boxes):
        if not base:
            groups[base] = [PlanePartition((), k)]
            continue
        stacks = [PlanePartition(st, k) for st in _stacks_on(base, max_boxes - sum(base))]
        groups[base] = sorted(stacks, key=lambda p: (p.size, p.key()))
    return groups


def enum_plane_partitions(max_boxes: int, n: int = 0) -> Iterator[PlanePartition]:
    allpp = [pp for group in plane_partitions_by_base(max_boxes, n).values() for pp in group]
    allpp.sort(key=lambda p: (p.size, p.key()))
    yield from allpp


# -- Maya diagrams, cores and quotients -------------------------------------

@dataclass(frozen=True)
class MayaDiagram:
    """Charge-0 bead set stored as its difference from the vacuum."""

    added: frozenset      # occupied positions >= 0
    removed: frozenset    # empty positions < 0

    @classmethod
    def from_partition(cls, lam: Partition) -> "MayaDiagram":
        beads = {part - i for i, part in enumerate(lam, start=1)}
        length = len(lam)
        added = frozenset(p for p in beads if p >= 0)
        removed = frozenset(p for p in range(-length, 0) if p not in beads)
        return cls(added, removed)

    def charge(self) -> int:
        return len(self.added) - len(self.removed)

    def beads_above(self, floor: int):
        """Occupied positions >= floor, descending."""
        top = max(self.added, default=-1)
        return [p for p in range(top, floor - 1, -1)
                if (p >= 0 and p in self.added) or (p < 0 and p not in self.removed)]

    def to_partition(self) -> Partition:
        if self.charge() != 0:
            raise ValueError("only charge-0 diagrams correspond to partitions")
        floor = min(self.removed, default=0) - 1
        beads = self.beads_above(floor)
        return normalize(p + i for i, p in enumerate(beads, start=1))


def _beads_to_partition(beads) -> Partition:
    """Partition from a finite charge-0 window of Maya positions: every
    position below the window is occupied and ``len(beads)`` equals
    ``-min(window)``."""
    ordered = sorted(beads, reverse=True)
    return normalize(p + i for i, p in enumerate(ordered, start=1))


def _vacuum_top(c: int) -> int:
    # shifted positions u = p + 1 put the bead u = 0 of the vacuum on sublattice 0
    return 0 if c == 0 else -1


def quotient_core(lam, n: int | None = None):
    """Return ``(core, quotient)`` of a colored partition.

    A bead at Maya position ``p`` lives on sublattice ``(p + 1) mod (n+1)``.
    Moving a bead up by ``n+1`` adds a border strip whose south-west box has
    color equal to that sublattice, so ``quotient[c]`` grows exactly when a
    strip starting at color ``c`` is added.
    """
    if isinstance(lam, ColoredPartition):
        parts, k = lam.parts, lam.modulus
    else:
        parts, k = normalize(lam), n + 1
    depth = len(parts) // k + 2
    floor = -depth + 1
    window = k * depth
    padded = list(parts) + [0] * (window - len(parts))
    shifted = [padded[i - 1] - i + 1 for i in range(1, window + 1)]
    core_beads = []
    quotient = []
    for c in range(k):
        top = _vacuum_top(c)
        heights = sorted(((u - c) // k for u in shifted if u % k == c and (u - c) // k >= floor),
                         reverse=True)
        charge = len(heights) - (top - floor + 1)
        quotient.append(normalize(r - top - charge + i - 1 for i, r in enumerate(heights, start=1)))
        core_beads.extend(k * r + c - 1 for r in range(top + charge, floor - 1, -1))
    return _beads_to_partition(core_beads), tuple(quotient)


def from_quotient(quot, n: int | None = None) -> ColoredPartition:
    """Multi-regular colored partition with empty core and the given quotient."""
    quot = tuple(normalize(q) for q in quot)
    k = len(quot) if n is None else n + 1
    if len(quot) != k:
        raise ValueError("quotient length must be n+1")
    depth = max((len(q) for q in quot), default=0) + 1
    beads = []
    for c, q in enumerate(quot):
        top = _vacuum_top(c)
        count = top + depth + 1
        padded = list(q) + [0] * (count - len(q))
        beads.extend(k * (padded[i - 1] + top - i + 1) + c - 1 for i in range(1, count + 1))
    return ColoredPartition(_beads_to_partition(beads), k)


def is_multi_regular(lam: ColoredPartition) -> bool:
    return lam.is_multi_regular()


def _addable(lam: Partition):
    out = []
    for i in range(len(lam) + 1):
        row = lam[i] if i < len(lam) else 0
        above = lam[i - 1] if i > 0 else None
        if above is None or above > row:
            out.append((i, row))
    return out


def _add_box(lam: Partition, i: int) -> Partition:
    parts = list(lam) + [0]
    parts[i] += 1
    return normalize(parts)


def _is_border_strip(inner: Partition, outer: Partition) -> bool:
    cells = set(boxes(outer)) - set(boxes(inner))
    if not cells:
        return False
    for (i, j) in cells:
        if (i + 1, j + 1) in cells:
            return False
    start = next(iter(cells))
    seen, stack = {start}, [start]
    while stack:
        i, j = stack.pop()
        for nb in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


def add_border_strip(lam: ColoredPartition, start_color: int) -> set:
    """Partitions obtained by gluing an (n+1)-box border strip onto ``lam``
    whose starting box (the south-west end of the strip) has color ``start_color``."""
    k = lam.modulus
    if not 0 <= start_color < k:
        raise ValueError("color out of range")
    layer = {lam.parts}
    for _ in range(k):
        layer = {_add_box(mu, i) for mu in layer for i, _ in _addable(mu)}
    out = set()
    for mu in layer:
        if not _is_border_strip(lam.parts, mu):
            continue
        cells = set(boxes(mu)) - set(boxes(lam.parts))
        bottom = max(i for i, _ in cells)
        foot = min((c for c in cells if c[0] == bottom), key=lambda c: c[1])
        if (foot[1] - foot[0]) % k == start_color:
            out.add(ColoredPartition(mu, k))
    return out


def partition_tuples(total: int, k: int):
    """All k-tuples of partitions with the given total size."""
    if k == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for lam in partitions_of(first):
            for rest in partition_tuples(total - first, k - 1):
                yield (lam,) + rest
