"""
frobenius.py
n^2-coloured Frobenius partitions: two-rowed arrays of coloured non-negative parts,
their enumeration, statistics, kernels and minimal symbols.
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

from colour import Colour, PartitionsError, colour
from partition import ColouredPartition, ColourStatistics, Part
from sequence import ColourSequence, reduce

logger = logging.getLogger(__name__)

# (value, index) pairs; a-row entries for the top, b-row entries for the bottom
Entry = Tuple[int, int]


class FrobeniusError(PartitionsError):
    """Raised for rows out of order, rows of unequal length and unparsable symbols."""


def top_key(entry: Entry) -> Tuple[int, int]:
    """At equal value a larger a-index is the smaller entry: 0_{a2} < 0_{a1} < 0_{a0}."""
    return (entry[0], -entry[1])


def bottom_key(entry: Entry) -> Tuple[int, int]:
    """At equal value a larger b-index is the larger entry: 0_{b0} < 0_{b1} < 0_{b2}."""
    return (entry[0], entry[1])


def _check_row(row: Sequence[Entry], key, name: str) -> None:
    for pos, (value, index) in enumerate(row):
        if value < 0 or index < 0:
            raise FrobeniusError(f"{name} entry {pos} must have non-negative value and index")
        if pos and key(row[pos - 1]) <= key(row[pos]):
            raise FrobeniusError(f"{name} row is not strictly decreasing at position {pos}")


@dataclass(frozen=True)
class FrobeniusPartition:
    top: Tuple[Entry, ...] = ()
    bottom: Tuple[Entry, ...] = ()

    def __post_init__(self):
        if len(self.top) != len(self.bottom):
            raise FrobeniusError(f"rows have lengths {len(self.top)} and {len(self.bottom)}")
        _check_row(self.top, top_key, "top")
        _check_row(self.bottom, bottom_key, "bottom")

    @property
    def length(self) -> int:
        return len(self.top)

    @property
    def weight(self) -> int:
        return self.length + sum(v for v, _ in self.top) + sum(v for v, _ in self.bottom)

    @property
    def colours(self) -> ColourSequence:
        return tuple(colour(a, b) for (_, a), (_, b) in zip(self.top, self.bottom))

    def sort_key(self) -> Tuple:
        return (self.weight, self.length, self.top, self.bottom)

    def __str__(self) -> str:
        top = ",".join(f"{v}a{i}" for v, i in self.top)
        bottom = ",".join(f"{v}b{i}" for v, i in self.bottom)
        return f"({top} | {bottom})"

    @classmethod
    def parse(cls, text: str) -> "FrobeniusPartition":
        """Parse "(3a1,2a0 | 4b2,4b0)"."""
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")) or "|" not in body:
            raise FrobeniusError(f"cannot parse Frobenius symbol {text!r}")
        top_text, bottom_text = body[1:-1].split("|", 1)
        return cls(_parse_row(top_text, "a"), _parse_row(bottom_text, "b"))

    def to_dict(self) -> Dict:
        return {"top": [list(e) for e in self.top], "bottom": [list(e) for e in self.bottom]}

    @classmethod
    def from_dict(cls, data: Dict) -> "FrobeniusPartition":
        return cls(tuple(tuple(e) for e in data["top"]), tuple(tuple(e) for e in data["bottom"]))


def _parse_row(text: str, letter: str) -> Tuple[Entry, ...]:
    text = text.strip()
    if not text:
        return ()
    entries = []
    for token in text.split(","):
        match = re.fullmatch(rf"\s*(\d+)\s*{letter}(\d+)\s*", token)
        if not match:
            raise FrobeniusError(f"cannot parse entry {token!r}")
        entries.append((int(match.group(1)), int(match.group(2))))
    return tuple(entries)


def frob_kernel(f: FrobeniusPartition) -> ColourSequence:
    return reduce(f.colours)


def frob_statistics(f: FrobeniusPartition, n: int) -> ColourStatistics:
    return ColourStatistics.collect(f.weight, f.colours, n)


def minimal_frobenius(seq: Sequence[Colour]) -> FrobeniusPartition:
    """
    Least-weight symbol with colour sequence seq.

    Both rows end in 0; a row value steps up by one exactly where the strict
    order cannot be met at equal values.
    """
    s = len(seq)
    top = [0] * s
    bottom = [0] * s
    for pos in range(s - 2, -1, -1):
        c, nxt = seq[pos], seq[pos + 1]
        top[pos] = top[pos + 1] + (1 if c.i >= nxt.i else 0)
        bottom[pos] = bottom[pos + 1] + (1 if c.k <= nxt.k else 0)
    return FrobeniusPartition(tuple((top[p], seq[p].i) for p in range(s)),
                              tuple((bottom[p], seq[p].k) for p in range(s)))


def frobenius_to_partition(f: FrobeniusPartition) -> ColouredPartition:
    """Column j becomes the part lambda_j + mu_j + 1 coloured by its column; weight is kept."""
    return ColouredPartition(tuple(Part(lv + mv + 1, colour(a, b))
                                   for (lv, a), (mv, b) in zip(f.top, f.bottom)))


# ===== ENUMERATION =====

def _rows(n: int, length: int, budget: int, key) -> Dict[int, List[Tuple[Entry, ...]]]:
    """Strictly decreasing rows of the given length with value sum <= budget, grouped by sum."""
    candidates = sorted(((v, i) for v in range(budget + 1) for i in range(n)), key=key, reverse=True)
    grouped: Dict[int, List[Tuple[Entry, ...]]] = {}
    row: List[Entry] = []

    def walk(start: int, total: int):
        if len(row) == length:
            grouped.setdefault(total, []).append(tuple(row))
            return
        need = length - len(row)
        for pos in range(start, len(candidates) - need + 1):
            value = candidates[pos][0]
            if total + value > budget:
                continue
            row.append(candidates[pos])
            walk(pos + 1, total + value)
            row.pop()

    walk(0, 0)
    return grouped


def enumerate_frobenius(n: int, max_weight: int) -> Iterator[FrobeniusPartition]:
    """
    Every n^2-coloured Frobenius partition of weight at most max_weight.

    Args:
        n: Number of colour indices
        max_weight: Weight bound

    Returns:
        Iterator[FrobeniusPartition]: sorted by (weight, length, top, bottom)
    """
    if max_weight < 0:
        raise FrobeniusError("max_weight must be non-negative")
    found = [FrobeniusPartition()]
    for s in range(1, max_weight + 1):
        budget = max_weight - s
        tops = _rows(n, s, budget, top_key)
        bottoms = _rows(n, s, budget, bottom_key)
        for top_sum, top_rows in tops.items():
            for bottom_sum, bottom_rows in bottoms.items():
                if top_sum + bottom_sum > budget:
                    continue
                found.extend(FrobeniusPartition(t, b) for t in top_rows for b in bottom_rows)
    found.sort(key=FrobeniusPartition.sort_key)
    logger.debug("enumerated %d Frobenius symbols for n=%d up to weight %d", len(found), n, max_weight)
    return iter(found)
