"""
sequence.py
Colour-sequence algebra: reduction to kernels, primary runs, insertion sites and their types.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np

from colour import (SENTINEL, Colour, Metric, PartitionsError, all_colours, colour, delta, metric_value,
                    parse_colour)

logger = logging.getLogger(__name__)

ColourSequence = Tuple[Colour, ...]


class NotReducedError(PartitionsError):
    """Raised when a sequence that should be reduced still has a removable free colour."""

    def __init__(self, position: int, pair: Tuple[Colour, Colour]):
        super().__init__(f"sequence is not reduced at position {position}: ({pair[0]}, {pair[1]})")
        self.position = position
        self.pair = pair


class SequenceError(PartitionsError):
    """Raised for counts of the wrong length and for decompositions that do not match."""


class SiteClass(Enum):
    NEUTRAL = "neutral"
    TYPE0 = "type0"
    TYPE1 = "type1"


def parse_sequence(text: str) -> ColourSequence:
    """Parse "a1b2,a3b1" into a colour sequence; the empty string is the empty sequence."""
    text = text.strip()
    if not text:
        return ()
    return tuple(parse_colour(token) for token in text.split(","))


def format_sequence(seq: Sequence[Colour]) -> str:
    return ",".join(str(c) for c in seq)


def _removable(left: Colour, right: Colour) -> bool:
    # a free a_k b_k right after any a_? b_k, or a free a_k b_k right before a_k b_?
    return (right.is_free and right.i == left.k) or (left.is_free and left.i == right.i)


def reduce(seq: Sequence[Colour]) -> ColourSequence:
    """
    Remove free colours next to matching bound colours until nothing more can be removed.

    Args:
        seq: Any sequence of non-sentinel colours

    Returns:
        ColourSequence: the reduction (kernel) of seq
    """
    stack: List[Colour] = []
    for c in seq:
        if c.is_sentinel:
            raise SequenceError("the sentinel cannot appear inside a colour sequence")
        keep = True
        while stack:
            top = stack[-1]
            if c.is_free and c.i == top.k:
                keep = False
                break
            if top.is_free and top.i == c.i:
                stack.pop()
                continue
            break
        if keep:
            stack.append(c)
    return tuple(stack)


def check_reduced(seq: Sequence[Colour]) -> None:
    for pos in range(len(seq) - 1):
        if _removable(seq[pos], seq[pos + 1]):
            raise NotReducedError(pos, (seq[pos], seq[pos + 1]))


def is_primary(c1: Colour, c2: Colour) -> bool:
    """(a_i b_k, a_k b_l) with both colours bound."""
    return c1.is_bound and c2.is_bound and c1.k == c2.i


def left_insertion_type(prev: Colour, c: Colour) -> int:
    """
    Effect of inserting a_k b_k between prev = a_i b_j and c = a_k b_l.

    Independent of i; the sentinel counts as index infinity.
    """
    j = prev.b
    k, l = c.i, c.k
    return (1 if j < k else 0) + (1 if k < l else 0) - (1 if j <= l else 0)


def right_insertion_type(c: Colour, nxt: Colour) -> int:
    """Effect of inserting a_j b_j between c = a_i b_j and nxt = a_k b_l; independent of l."""
    i, j = c.i, c.k
    k = nxt.a
    return (1 if i > j else 0) + (1 if j > k else 0) - (1 if i >= k else 0)


def insertion_difference(prev: Colour, f: Colour, nxt: Colour, metric: Metric = Metric.DELTA) -> int:
    """metric(prev, f) + metric(f, nxt) - metric(prev, nxt), with sentinel ends."""
    def m(x: Colour, y: Colour) -> int:
        if x.is_sentinel:
            return 1
        return metric_value(metric, x, y)
    return m(prev, f) + m(f, nxt) - m(prev, nxt)


@dataclass(frozen=True)
class InsertionSite:
    """
    One place where a free colour may be inserted into a kernel.

    index is the 1-based site number j; anchor is the 1-based position of the kernel colour
    the site is attached to; position is P(j), the number of kernel colours to its left.
    """
    index: int
    free: Colour
    site_class: SiteClass
    owner: Optional[int]
    side: str
    anchor: int
    position: int


@dataclass(frozen=True)
class KernelStructure:
    kernel: ColourSequence
    spans: Tuple[Tuple[int, int], ...]
    sites: Tuple[InsertionSite, ...]

    @property
    def s(self) -> int:
        return len(self.kernel)

    @property
    def t(self) -> int:
        return len(self.spans)

    def sites_of(self, site_class: SiteClass) -> List[InsertionSite]:
        return [site for site in self.sites if site.site_class is site_class]

    def type0_counts(self) -> List[int]:
        """|T_0^u| for u = 1..t."""
        return [sum(1 for site in self.sites if site.owner == u and site.site_class is SiteClass.TYPE0)
                for u in range(1, self.t + 1)]

    def type1_counts(self) -> List[int]:
        return [2 - x for x in self.type0_counts()]

    def runs(self) -> List[ColourSequence]:
        return [self.kernel[start - 1:end] for start, end in self.spans]


def starts_run(seq: Sequence[Colour], pos: int) -> bool:
    """Whether the (0-based) colour at pos opens a maximal primary subsequence."""
    c = seq[pos]
    return c.is_bound and not (pos > 0 and is_primary(seq[pos - 1], c))


def kernel_structure(seq: Sequence[Colour]) -> KernelStructure:
    """
    Runs and insertion sites of a reduced sequence.

    Args:
        seq: A reduced colour sequence

    Returns:
        KernelStructure: spans of the maximal primary subsequences and the s+t classified sites
    """
    kernel = tuple(seq)
    check_reduced(kernel)
    s = len(kernel)

    spans: List[Tuple[int, int]] = []
    run_of: List[Optional[int]] = [None] * s
    for pos, c in enumerate(kernel):
        if not c.is_bound:
            continue
        if starts_run(kernel, pos):
            spans.append((pos + 1, pos + 1))
        else:
            spans[-1] = (spans[-1][0], pos + 1)
        run_of[pos] = len(spans)

    sites: List[InsertionSite] = []
    for pos, c in enumerate(kernel):
        prev = kernel[pos - 1] if pos > 0 else SENTINEL
        nxt = kernel[pos + 1] if pos + 1 < s else SENTINEL
        if starts_run(kernel, pos):
            kind = SiteClass.TYPE1 if left_insertion_type(prev, c) == 1 else SiteClass.TYPE0
            sites.append(InsertionSite(len(sites) + 1, Colour.free(c.i), kind, run_of[pos],
                                       "left", pos + 1, pos))
        closes_run = c.is_bound and (pos + 1 == s or not is_primary(c, nxt))
        if closes_run:
            kind = SiteClass.TYPE1 if right_insertion_type(c, nxt) == 1 else SiteClass.TYPE0
            owner = run_of[pos]
        else:
            kind, owner = SiteClass.NEUTRAL, None
        sites.append(InsertionSite(len(sites) + 1, Colour.free(c.k), kind, owner,
                                   "right", pos + 1, pos + 1))

    structure = KernelStructure(kernel=kernel, spans=tuple(spans), sites=tuple(sites))
    logger.debug("kernel %s: s=%d t=%d", format_sequence(kernel), structure.s, structure.t)
    return structure


def insert(seq: Sequence[Colour], counts: Sequence[int]) -> ColourSequence:
    """
    Build S(n_1, ..., n_{s+t}).

    Args:
        seq: Reduced kernel S
        counts: How many times each site's free colour is inserted, in site order

    Returns:
        ColourSequence: the expanded sequence
    """
    structure = kernel_structure(seq)
    if len(counts) != len(structure.sites):
        raise SequenceError(f"expected {len(structure.sites)} counts, got {len(counts)}")
    if any(n < 0 for n in counts):
        raise SequenceError("insertion counts must be non-negative")
    out: List[Colour] = []
    for site, n in zip(structure.sites, counts):
        if site.side == "left":
            out.extend([site.free] * n)
        else:
            out.append(structure.kernel[site.anchor - 1])
            out.extend([site.free] * n)
    return tuple(out)


def decompose(seq: Sequence[Colour]) -> Tuple[ColourSequence, Tuple[int, ...]]:
    """Inverse of insert: the kernel of seq and the unique counts vector."""
    kernel = reduce(seq)
    structure = kernel_structure(kernel)
    counts: List[int] = []
    pos = 0

    def take_run(f: Colour) -> int:
        nonlocal pos
        start = pos
        while pos < len(seq) and seq[pos] == f:
            pos += 1
        return pos - start

    for site in structure.sites:
        if site.side == "left":
            counts.append(take_run(site.free))
            continue
        expected = structure.kernel[site.anchor - 1]
        if pos >= len(seq) or seq[pos] != expected:
            found = seq[pos] if pos < len(seq) else "end of sequence"
            raise SequenceError(f"expected {expected} at position {pos}, found {found}")
        pos += 1
        counts.append(take_run(site.free))
    if pos != len(seq):
        raise SequenceError(f"unmatched colours from position {pos}")
    return kernel, tuple(counts)


def all_sequences(n: int, length: int) -> List[ColourSequence]:
    """Every colour sequence of the given length over n indices (test and lemma helper)."""
    colours = [colour(i, k) for i in range(n) for k in range(n)]
    result: List[ColourSequence] = [()]
    for _ in range(length):
        result = [prefix + (c,) for prefix in result for c in colours]
    return result


def reduced_sequences(n: int, max_length: int) -> List[ColourSequence]:
    """Every reduced sequence over n indices with length at most max_length."""
    colours = [colour(i, k) for i in range(n) for k in range(n)]
    found: List[ColourSequence] = [()]
    frontier: List[ColourSequence] = [()]
    for _ in range(max_length):
        frontier = [prefix + (c,) for prefix in frontier for c in colours
                    if not prefix or not _removable(prefix[-1], c)]
        found.extend(frontier)
    return found


def sample_sequences(pool: Sequence[ColourSequence], size: int, seed: int = 0) -> List[ColourSequence]:
    """
    Seeded choice of up to size distinct sequences from pool.

    Args:
        pool: Candidate sequences
        size: How many to pick; the whole pool when it is smaller
        seed: Seed of the numpy generator

    Returns:
        List[ColourSequence]: the picks, in pool order
    """
    if size <= 0 or not pool:
        return []
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(pool), size=min(size, len(pool)), replace=False)
    return [pool[int(i)] for i in sorted(picks)]


# ===== SITE DIFFERENCES =====

# change in the difference across a site, by site class, under the two metrics that classify sites
SITE_DIFFERENCES = {
    Metric.DELTA: {SiteClass.NEUTRAL: 0, SiteClass.TYPE0: 0, SiteClass.TYPE1: 1},
    Metric.DELTA_DOUBLE_PRIME: {SiteClass.NEUTRAL: 0, SiteClass.TYPE0: 1, SiteClass.TYPE1: 0},
}


def site_neighbours(ks: KernelStructure, site: InsertionSite) -> Tuple[Colour, Colour]:
    """Kernel colours on either side of a site; the sentinel stands in past either end."""
    prev = ks.kernel[site.position - 1] if site.position > 0 else SENTINEL
    nxt = ks.kernel[site.position] if site.position < ks.s else SENTINEL
    return prev, nxt


def site_difference(ks: KernelStructure, site: InsertionSite, metric: Metric = Metric.DELTA) -> int:
    prev, nxt = site_neighbours(ks, site)
    return insertion_difference(prev, site.free, nxt, metric)


def double_insertion_difference(c1: Colour, c2: Colour, metric: Metric = Metric.DELTA) -> int:
    """
    Change in the c1 -> c2 difference when a_j b_j and then a_k b_k go between c1 = a_i b_j
    and c2 = a_k b_l.
    """
    right, left = Colour.free(c1.k), Colour.free(c2.i)
    return (metric_value(metric, c1, right) + metric_value(metric, right, left)
            + metric_value(metric, left, c2) - metric_value(metric, c1, c2))


# ===== RUNS OF EQUAL PARTS =====

def is_zero_run(seq: Sequence[Colour]) -> bool:
    """Whether every consecutive difference is 0, i.e. the colours can all sit on one part size."""
    return all(delta(seq[p], seq[p + 1]) == 0 for p in range(len(seq) - 1))


def zero_runs(n: int, max_length: int) -> List[ColourSequence]:
    """Every non-empty sequence over n indices of length at most max_length with zero differences."""
    colours = all_colours(n)
    frontier: List[ColourSequence] = [(c,) for c in colours] if max_length > 0 else []
    found = list(frontier)
    for _ in range(max_length - 1):
        frontier = [run + (c,) for run in frontier for c in colours if delta(run[-1], c) == 0]
        found.extend(frontier)
    return found


def zero_run_shape(seq: Sequence[Colour]) -> Optional[str]:
    """
    Shape of a run of equal parts.

    "1a", "1b", "1c": one free colour, repeated as a block at the left end, the right end or
    inside, with a-indices rising and b-indices falling through the bound colours around it.
    "2a", "2b", "2c": bound colours only, a-indices rising and b-indices falling, with a > b
    everywhere, a < b everywhere, or a single switch from a < b to a > b.

    Returns:
        Optional[str]: the shape, or None when the run has none of them
    """
    if not seq or not is_zero_run(seq):
        raise SequenceError("expected a non-empty run with zero differences")
    bound = [c for c in seq if c.is_bound]
    if any(b1.i >= b2.i or b1.k <= b2.k for b1, b2 in zip(bound, bound[1:])):
        return None

    frees = [p for p, c in enumerate(seq) if c.is_free]
    if frees:
        first, last = frees[0], frees[-1]
        f = seq[first]
        if any(seq[p] != f for p in range(first, last + 1)):
            return None
        left, right = seq[:first], seq[last + 1:]
        if left and not left[-1].i < f.i <= left[-1].k:
            return None
        if right and not right[0].k < f.i <= right[0].i:
            return None
        if not left:
            return "1a"
        return "1b" if not right else "1c"

    upper = [c.i < c.k for c in seq]
    if not any(upper):
        return "2a"
    if all(upper):
        return "2b"
    switches = sum(1 for u, v in zip(upper, upper[1:]) if u and not v)
    return "2c" if upper[0] and switches == 1 else None


def zero_run_insertions(seq: Sequence[Colour], n: int) -> Set[Tuple[int, Colour]]:
    """
    (gap, free colour) pairs that keep a run of equal parts at zero differences, found by trying
    every gap; gap g sits just before seq[g].
    """
    found = set()
    for gap in range(len(seq) + 1):
        for k in range(n):
            f = Colour.free(k)
            if is_zero_run(tuple(seq[:gap]) + (f,) + tuple(seq[gap:])):
                found.add((gap, f))
    return found


def predicted_zero_run_insertions(seq: Sequence[Colour]) -> Set[Tuple[int, Colour]]:
    """
    Free-colour insertions into a run of bound colours read off its shape: left of the run
    for 2a, right of it for 2b, at the switch for 2c.
    """
    shape = zero_run_shape(seq)
    if shape == "2a":
        first = seq[0]
        return {(0, Colour.free(k)) for k in range(first.k + 1, first.i + 1)}
    if shape == "2b":
        last = seq[-1]
        return {(len(seq), Colour.free(k)) for k in range(last.i + 1, last.k + 1)}
    if shape == "2c":
        gap = next(p for p in range(1, len(seq)) if seq[p].i > seq[p].k)
        low = max(seq[gap - 1].i, seq[gap].k)
        high = min(seq[gap - 1].k, seq[gap].i)
        return {(gap, Colour.free(k)) for k in range(low + 1, high + 1)}
    raise SequenceError(f"insertions are only read off runs of bound colours, got {format_sequence(seq)}")


# ===== INSERTIONS ACROSS A STEP OF ONE =====

def differences_hold(parts: Sequence[Tuple[int, Colour]]) -> bool:
    """Whether consecutive (size, colour) parts respect delta."""
    return all(s1 - s2 >= delta(c1, c2) for (s1, c1), (s2, c2) in zip(parts, parts[1:]))


def step_insertions(c1: Colour, c2: Colour, n: int, p: int = 1, copies: int = 1) -> Set[Tuple[int, Colour]]:
    """
    Free colours that fit between (p+1)_{c1} and p_{c2}, found by trying every placement.

    Returns:
        Set[Tuple[int, Colour]]: (1, f) when copies of f fit at size p+1, (0, f) at size p
    """
    found = set()
    for lift in (1, 0):
        for k in range(n):
            f = Colour.free(k)
            parts = [(p + 1, c1)] + [(p + lift, f)] * copies + [(p, c2)]
            if differences_hold(parts):
                found.add((lift, f))
    return found


def predicted_step_insertions(c1: Colour, c2: Colour) -> Set[Tuple[int, Colour]]:
    """
    The same set read off the index inequalities of two bound colours c1 = a_k1 b_l1 and
    c2 = a_k2 b_l2.
    """
    k1, l1, k2, l2 = c1.i, c1.k, c2.i, c2.k
    if k1 < l1 and k2 > l2:
        return ({(1, Colour.free(i)) for i in range(k1 + 1, l1 + 1)}
                | {(0, Colour.free(j)) for j in range(l2 + 1, k2 + 1)})
    if not (k1 < k2 or l1 > l2):
        return set()
    if k1 > l1 and k2 > l2:
        allowed = set(range(l2 + 1, k2 + 1)) - set(range(l1 + 1, k1 + 1))
        return {(0, Colour.free(i)) for i in allowed}
    if k1 < l1 and k2 < l2:
        allowed = set(range(k1 + 1, l1 + 1)) - set(range(k2 + 1, l2 + 1))
        return {(1, Colour.free(i)) for i in allowed}
    # c1 below the diagonal, c2 above it: no free colour reaches a zero difference on either side
    return set()
