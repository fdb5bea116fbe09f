"""Literal construction of iterated partition sets.

An element of the order-m partition set of {1..n} is a nested structure:
atoms sit in blocks, blocks in boxes, and so on m levels deep, with the
outermost level read as a set of boxes.  The first-order set contains
the ordinary set partitions; each further order partitions the outer
boxes of every element one level down.

Enumeration streams elements in a deterministic order driven by
restricted growth strings, never materializing a whole level, and the
canonical serialization gives every structure a unique byte form so
distinctness and census claims can be checked literally.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from . import triangles

__all__ = [
    "DEFAULT_BUDGET",
    "NestedPartition",
    "Census",
    "InvalidPartitionError",
    "EnumerationBudgetError",
    "partitions_of",
    "iterate_partitions",
    "canonical_serialize",
    "parse_nested",
    "census",
    "verify_distinct_children",
]

DEFAULT_BUDGET = 10**7


class InvalidPartitionError(ValueError):
    """A nested structure violates the partition invariants."""


class EnumerationBudgetError(RuntimeError):
    """The requested set is larger than the enumeration budget allows."""

    def __init__(self, n: int, m: int, predicted: int, budget: int):
        self.n = n
        self.m = m
        self.predicted = predicted
        self.budget = budget
        super().__init__(
            f"enumerating order {m} over {n} atoms would yield {predicted} "
            f"elements, beyond the budget of {budget}"
        )


def _min_atom(box) -> int:
    while not isinstance(box, int):
        box = box[0]
    return box


def _serialize_box(box) -> str:
    # a box is an int atom at depth 0 or a tuple of boxes one level down
    if isinstance(box, int):
        return str(box)
    keyed = sorted((_min_atom(child), _serialize_box(child)) for child in box)
    return "{" + ",".join(s for _, s in keyed) + "}"


def _sort_boxes(boxes: Iterable) -> tuple:
    return tuple(sorted(boxes, key=lambda b: (_min_atom(b), _serialize_box(b))))


def _canonicalize(box):
    if isinstance(box, int):
        return box
    return _sort_boxes(_canonicalize(child) for child in box)


@dataclass(frozen=True)
class NestedPartition:
    """One element of the order-m partition set: a set of depth-m boxes."""

    order: int
    boxes: tuple

    def outer_size(self) -> int:
        """Number of outermost boxes (the element's cardinality as a set)."""
        return len(self.boxes)

    def atoms(self) -> tuple[int, ...]:
        out: list[int] = []
        stack = list(self.boxes)
        while stack:
            item = stack.pop()
            if isinstance(item, int):
                out.append(item)
            else:
                stack.extend(item)
        return tuple(sorted(out))

    def ground_blocks(self) -> tuple[tuple[int, ...], ...]:
        """The depth-1 boxes: the underlying plain partition of the atoms."""
        blocks: list[tuple[int, ...]] = []

        def walk(box):
            if isinstance(box[0], int):
                blocks.append(tuple(sorted(box)))
            else:
                for child in box:
                    walk(child)

        for box in self.boxes:
            walk(box)
        return tuple(sorted(blocks))

    def serialize(self) -> str:
        return _serialize_box(self.boxes)

    def validate(self) -> None:
        """Raise InvalidPartitionError unless this is a well-formed element."""
        if self.order < 1:
            raise InvalidPartitionError(f"order must be >= 1, got {self.order}")
        if not isinstance(self.boxes, tuple) or not self.boxes:
            raise InvalidPartitionError("an element needs a nonempty set of boxes")
        seen: list[int] = []

        def walk(box, depth):
            if isinstance(box, int):
                if depth != 0:
                    raise InvalidPartitionError(f"atom {box} at depth {self.order - depth}")
                if box < 1:
                    raise InvalidPartitionError(f"atom labels start at 1, got {box}")
                seen.append(box)
                return
            if not isinstance(box, tuple) or not box:
                raise InvalidPartitionError("every box must be a nonempty tuple")
            for child in box:
                walk(child, depth - 1)

        for box in self.boxes:
            walk(box, self.order)
        if len(set(seen)) != len(seen):
            raise InvalidPartitionError("atoms repeat across boxes")
        if sorted(seen) != list(range(1, len(seen) + 1)):
            raise InvalidPartitionError(
                f"atoms must be exactly 1..{len(seen)}, got {sorted(seen)}"
            )


def partitions_of(items: Sequence) -> Iterator[tuple]:
    """Yield every set partition of the given distinct tokens exactly once.

    Partitions are tuples of blocks, each block a tuple of tokens in
    input order; the sequence follows lexicographic restricted growth
    strings, so the single-block partition comes first and the
    all-singletons partition last.
    """
    tokens = tuple(items)
    if not tokens:
        raise ValueError("cannot partition an empty collection")
    if len(set(tokens)) != len(tokens):
        raise ValueError("tokens must be distinct")
    return _rgs_partitions(tokens)


def _rgs_partitions(tokens: tuple) -> Iterator[tuple]:
    n = len(tokens)
    labels = [0] * n
    while True:
        nblocks = max(labels) + 1
        blocks: list[list] = [[] for _ in range(nblocks)]
        for tok, lab in zip(tokens, labels):
            blocks[lab].append(tok)
        yield tuple(tuple(b) for b in blocks)
        # advance to the next restricted growth string
        prefix_max = [0] * n
        for i in range(1, n):
            prefix_max[i] = max(prefix_max[i - 1], labels[i - 1])
        i = n - 1
        while i > 0 and labels[i] > prefix_max[i]:
            i -= 1
        if i == 0:
            return
        labels[i] += 1
        for j in range(i + 1, n):
            labels[j] = 0


def iterate_partitions(
    n: int, m: int, budget: int = DEFAULT_BUDGET
) -> Iterator[NestedPartition]:
    """Stream every element of the order-m partition set of an n-set.

    Elements are built by recursively partitioning the outer boxes of
    each element one order down, in restricted-growth order at every
    level.  If the predicted count exceeds ``budget`` the stream is
    refused up front with the prediction attached.
    """
    if n < 1 or m < 1:
        raise ValueError(f"iterate_partitions requires n >= 1 and m >= 1, got ({n}, {m})")
    predicted = triangles.bell(n, m)
    if predicted > budget:
        raise EnumerationBudgetError(n, m, predicted, budget)
    return _elements(n, m)


def _elements(n: int, m: int) -> Iterator[NestedPartition]:
    if m == 1:
        for blocks in _rgs_partitions(tuple(range(1, n + 1))):
            yield NestedPartition(1, blocks)
    else:
        for parent in _elements(n, m - 1):
            for grouping in _rgs_partitions(parent.boxes):
                yield NestedPartition(m, grouping)


def canonical_serialize(p: NestedPartition) -> bytes:
    """Unique canonical byte form of an element.

    Atoms render as decimal labels; every box renders recursively with
    children sorted by minimum atom, then by their own serialization.
    Equal structures serialize identically, distinct ones differently.
    """
    p.validate()
    return p.serialize().encode("ascii")


def parse_nested(data: bytes | str) -> NestedPartition:
    """Parse a canonical serialization back into a validated element."""
    text = data.decode("ascii") if isinstance(data, bytes) else data
    tree, pos = _parse_box(text, 0)
    if pos != len(text):
        raise InvalidPartitionError(f"trailing input at byte {pos}")
    if isinstance(tree, int):
        raise InvalidPartitionError("a bare atom is not an element")
    depth = _depth(tree)
    element = NestedPartition(depth - 1, _canonicalize(tree))
    element.validate()
    return element


def _parse_box(text: str, pos: int):
    if pos >= len(text):
        raise InvalidPartitionError("unexpected end of input")
    if text[pos].isdigit():
        end = pos
        while end < len(text) and text[end].isdigit():
            end += 1
        return int(text[pos:end]), end
    if text[pos] != "{":
        raise InvalidPartitionError(f"unexpected character {text[pos]!r} at byte {pos}")
    pos += 1
    children = []
    while True:
        child, pos = _parse_box(text, pos)
        children.append(child)
        if pos >= len(text):
            raise InvalidPartitionError("unterminated box")
        if text[pos] == ",":
            pos += 1
            continue
        if text[pos] == "}":
            return tuple(children), pos + 1
        raise InvalidPartitionError(f"unexpected character {text[pos]!r} at byte {pos}")


def _depth(box) -> int:
    d = 0
    while not isinstance(box, int):
        box = box[0]
        d += 1
    return d


@dataclass
class Census:
    """Counts of elements by outer cardinality, plus the total."""

    n: int
    m: int
    counts: dict[int, int]
    total: int

    def count(self, k: int) -> int:
        return self.counts.get(k, 0)


def census(n: int, m: int, budget: int = DEFAULT_BUDGET) -> Census:
    """Count the elements of the order-m partition set by outer-box number."""
    counts: dict[int, int] = {}
    total = 0
    for element in iterate_partitions(n, m, budget):
        k = element.outer_size()
        counts[k] = counts.get(k, 0) + 1
        total += 1
    return Census(n, m, dict(sorted(counts.items())), total)


def verify_distinct_children(n: int, m: int, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff canonical serializations are pairwise distinct across the set.

    This checks literally that partitioning different parents never
    produces the same element twice, i.e. that the union defining the
    iterated set is disjoint.
    """
    seen: set[bytes] = set()
    for element in iterate_partitions(n, m, budget):
        key = canonical_serialize(element)
        if key in seen:
            return False
        seen.add(key)
    return True
