"""
partition.py
Coloured partitions: membership in P_n, C_n(delta, gamma) and P^0, minimal partitions,
kernels, enumeration by weight and kernel-level generating functions.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from colour import (SENTINEL, Colour, ColourError, DeltaGammaTable, Metric, PartitionsError,
                    Variant, all_colours, check_index, delta, delta_variant, metric_value,
                    parse_colour, variant_extra_pattern)
from qseries import Dilation, LaurentPoly, QSeries, g, inv_euler, q_power, qbinom, qpoly_coefficients
from sequence import ColourSequence, KernelStructure, SiteClass, reduce

logger = logging.getLogger(__name__)


class PartitionError(PartitionsError):
    """Raised for malformed partitions (non-positive or increasing sizes, bad text)."""


class MembershipError(PartitionsError):
    """Raised when a partition is required to belong to a family and does not."""

    def __init__(self, message: str, witness: Optional[str] = None):
        super().__init__(message if witness is None else f"{message}: {witness}")
        self.witness = witness


@dataclass(frozen=True)
class Part:
    size: int
    colour: Colour

    def __str__(self) -> str:
        return f"{self.size}[{self.colour}]"


@dataclass(frozen=True)
class ColouredPartition:
    """Weakly decreasing sequence of coloured parts; family membership is checked separately."""
    parts: Tuple[Part, ...] = ()

    def __post_init__(self):
        for pos, part in enumerate(self.parts):
            if part.size < 1:
                raise PartitionError(f"part {pos} has non-positive size {part.size}")
            if part.colour.is_sentinel:
                raise PartitionError("the sentinel cannot colour a part")
            if pos and part.size > self.parts[pos - 1].size:
                raise PartitionError(f"sizes increase at position {pos}: {self.parts[pos - 1]} then {part}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, Colour]]) -> "ColouredPartition":
        return cls(tuple(Part(size, c) for size, c in pairs))

    @classmethod
    def classical(cls, sizes: Iterable[int]) -> "ColouredPartition":
        """An uncoloured partition, every part coloured a0b0."""
        return cls(tuple(Part(size, Colour.free(0)) for size in sorted(sizes, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "ColouredPartition":
        """Parse "9[a1b0]+8[a0b0]"; the empty string (or "0") is the empty partition."""
        text = text.strip()
        if text in ("", "0", "()"):
            return cls()
        parts = []
        for token in text.split("+"):
            token = token.strip()
            size_text, sep, rest = token.partition("[")
            if not sep or not rest.endswith("]") or not size_text.strip().isdigit():
                raise PartitionError(f"cannot parse part {token!r}")
            try:
                parts.append(Part(int(size_text), parse_colour(rest[:-1])))
            except ColourError as e:
                raise PartitionError(str(e)) from e
        return cls(tuple(parts))

    @property
    def weight(self) -> int:
        return sum(part.size for part in self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def colours(self) -> ColourSequence:
        return tuple(part.colour for part in self.parts)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(part.size for part in self.parts)

    def sort_key(self) -> Tuple:
        return (self.weight, tuple((p.size, p.colour.i, p.colour.k) for p in self.parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[Part]:
        return iter(self.parts)

    def __str__(self) -> str:
        return "+".join(str(part) for part in self.parts)

    def to_dict(self) -> List[Dict]:
        return [{"size": p.size, "a": p.colour.i, "b": p.colour.k} for p in self.parts]

    @classmethod
    def from_dict(cls, items: List[Dict]) -> "ColouredPartition":
        return cls(tuple(Part(int(item["size"]), Colour.from_dict(item)) for item in items))


# ===== STATISTICS =====

@dataclass(frozen=True)
class ColourStatistics:
    """Occurrences of each a_i and b_i, overall and restricted to bound colours."""
    weight: int
    u: Tuple[int, ...]
    v: Tuple[int, ...]
    bound_u: Tuple[int, ...]
    bound_v: Tuple[int, ...]

    @classmethod
    def collect(cls, weight: int, colours: Sequence[Colour], n: int) -> "ColourStatistics":
        u, v, bu, bv = [0] * n, [0] * n, [0] * n, [0] * n
        for c in colours:
            check_index(c, n)
            u[c.i] += 1
            v[c.k] += 1
            if c.is_bound:
                bu[c.i] += 1
                bv[c.k] += 1
        return cls(weight, tuple(u), tuple(v), tuple(bu), tuple(bv))

    def monomial(self) -> LaurentPoly:
        """prod a_i^(u_i - v_i); free colours contribute nothing."""
        return LaurentPoly.monomial([a - b for a, b in zip(self.u, self.v)])

    def bound_monomial(self) -> LaurentPoly:
        """Monomial in 2n variables a_0..a_{n-1}, b_0..b_{n-1} from the bound-only counts."""
        return LaurentPoly.monomial(list(self.bound_u) + list(self.bound_v))


def partition_statistics(p: ColouredPartition, n: int) -> ColourStatistics:
    return ColourStatistics.collect(p.weight, p.colours, n)


def generating_series(items: Iterable, order: int, nvars: int,
                      term: Callable[[object], Tuple[int, LaurentPoly]]) -> QSeries:
    """Sum q^weight * monomial over items, where term(item) gives (weight, monomial)."""
    coeffs: Dict[int, LaurentPoly] = {}
    for item in items:
        e, mono = term(item)
        if e > order:
            continue
        coeffs[e] = coeffs[e] + mono if e in coeffs else mono
    return QSeries(coeffs, order, nvars)


# ===== MEMBERSHIP =====

class Family(Enum):
    PN = "pn"
    CN = "cn"
    P0 = "p0"
    VARIANT = "variant"


@dataclass(frozen=True)
class MembershipSpec:
    family: Family
    n: int
    table: Optional[DeltaGammaTable] = field(default=None, compare=False)
    variant: Optional[Variant] = None

    def __post_init__(self):
        if self.n < 1:
            raise PartitionError("n must be positive")
        if self.family is Family.CN and self.table is None:
            raise PartitionError("the C_n family needs a delta/gamma table")
        if self.family is Family.VARIANT and self.variant is None:
            raise PartitionError("the difference-variant family needs a variant")

    @classmethod
    def pn(cls, n: int) -> "MembershipSpec":
        return cls(Family.PN, n)

    @classmethod
    def cn(cls, table: DeltaGammaTable) -> "MembershipSpec":
        return cls(Family.CN, table.n, table)

    @classmethod
    def p0(cls) -> "MembershipSpec":
        return cls(Family.P0, 1)

    @classmethod
    def difference_variant(cls, variant: Variant, n: int) -> "MembershipSpec":
        return cls(Family.VARIANT, n, variant=variant)

    def alphabet(self) -> List[Colour]:
        if self.family is Family.P0:
            return [Colour.free(0)]
        return all_colours(self.n, include_a0b0=self.family is Family.PN)

    def describe(self) -> str:
        if self.family is Family.CN:
            return f"C_{self.n}({self.table.name})"
        if self.family is Family.VARIANT:
            return f"C_{self.n}[{self.variant.value} differences]"
        if self.family is Family.P0:
            return "P^0"
        return f"P_{self.n}"


@dataclass(frozen=True)
class MembershipResult:
    ok: bool
    witness: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def _gap_violation(parts: Sequence[Part], gap: Callable[[Colour, Colour], int]) -> Optional[str]:
    for j in range(len(parts) - 1):
        need = gap(parts[j].colour, parts[j + 1].colour)
        if parts[j].size - parts[j + 1].size < need:
            return f"{parts[j]}+{parts[j + 1]} needs a difference of at least {need}"
    return None


def _centre_pattern(parts: Sequence[Part], j: int, table: DeltaGammaTable,
                    next_known: bool = True) -> Optional[str]:
    """
    Name of the forbidden pattern whose central free part is parts[j], or None.

    With next_known False the part after j is treated as not yet decided and
    patterns that depend on it are skipped.
    """
    centre = parts[j]
    if not centre.colour.is_free:
        return None
    p, i = centre.size, centre.colour.i
    prev = parts[j - 1] if j > 0 else None
    nxt = parts[j + 1] if j + 1 < len(parts) else None
    if nxt is None and not next_known:
        nxt_known = False
    else:
        nxt_known = True

    # next part of the same size coloured a_k2 b_l2 with k2 > l2
    if nxt is not None and nxt.size == p and nxt.colour.is_bound and nxt.colour.i > nxt.colour.k:
        n2 = nxt.colour
        if prev is None or prev.size >= p + 2:
            if i == table.delta_of(n2):
                return "A1"
        elif prev.size == p + 1:
            p1 = prev.colour
            if p1.i <= p1.k:
                if i == table.delta_of(n2):
                    return "A2"
            elif _d_left(p1, n2) and i == table.gamma_of(p1, n2):
                return "A3"

    # previous part of the same size coloured a_k1 b_l1 with k1 < l1
    if prev is not None and prev.size == p and prev.colour.is_bound and prev.colour.i < prev.colour.k:
        p1 = prev.colour
        if nxt is None:
            if nxt_known and i == table.delta_of(p1):
                return "B1"
        elif nxt.size <= p - 2:
            if i == table.delta_of(p1):
                return "B1"
        elif nxt.size == p - 1:
            n2 = nxt.colour
            if n2.i >= n2.k:
                if i == table.delta_of(p1):
                    return "B2"
            elif _d_right(p1, n2) and i == table.gamma_of(p1, n2):
                return "B3"

    if prev is not None and nxt is not None and prev.size == p and nxt.size == p:
        p1, n2 = prev.colour, nxt.colour
        if p1.is_bound and n2.is_bound and max(p1.i, n2.k) < min(n2.i, p1.k):
            if i == table.gamma_of(p1, n2):
                return "C"
    return None


def _d_left(c1: Colour, c2: Colour) -> bool:
    """{l2+1..k2} minus {l1+1..k1} is non-empty, both colours with k > l."""
    return bool(set(range(c2.k + 1, c2.i + 1)) - set(range(c1.k + 1, c1.i + 1)))


def _d_right(c1: Colour, c2: Colour) -> bool:
    """{k1+1..l1} minus {k2+1..l2} is non-empty, both colours with k < l."""
    return bool(set(range(c1.i + 1, c1.k + 1)) - set(range(c2.i + 1, c2.k + 1)))


def forbidden_centres(parts: Sequence[Part], table: DeltaGammaTable) -> List[int]:
    """Positions of every free part that is the centre of a forbidden pattern."""
    return [j for j in range(len(parts)) if _centre_pattern(parts, j, table) is not None]


def is_member(p: ColouredPartition, spec: MembershipSpec) -> MembershipResult:
    """
    Membership of p in the family described by spec.

    Args:
        p: Partition to test
        spec: Family and its parameters

    Returns:
        MembershipResult: truthy on success, otherwise carries the first violation
    """
    parts = p.parts
    if spec.family is Family.P0:
        for part in parts:
            if part.colour != Colour.free(0):
                return MembershipResult(False, f"{part} is not coloured a0b0")
        return MembershipResult(True)

    for part in parts:
        check_index(part.colour, spec.n)

    if spec.family in (Family.CN, Family.VARIANT):
        seen = set()
        for part in parts:
            if part.colour == Colour.free(0):
                return MembershipResult(False, f"{part} uses the colour a0b0")
            if spec.family is Family.CN and part.colour.is_free:
                if (part.size, part.colour) in seen:
                    return MembershipResult(False, f"{part} repeats a free colour")
                seen.add((part.size, part.colour))

    if spec.family is Family.VARIANT:
        violation = _gap_violation(parts, lambda a, b: delta_variant(spec.variant, a, b))
        if violation:
            return MembershipResult(False, violation)
        for j in range(len(parts) - 2):
            x, y, z = parts[j], parts[j + 1], parts[j + 2]
            if variant_extra_pattern(spec.variant, x.size, x.colour, y.size, y.colour, z.size, z.colour):
                return MembershipResult(False, f"{x}+{y}+{z} is a forbidden pattern")
        return MembershipResult(True)

    violation = _gap_violation(parts, delta)
    if violation:
        return MembershipResult(False, violation)

    if spec.family is Family.CN:
        for j in range(len(parts)):
            name = _centre_pattern(parts, j, spec.table)
            if name is not None:
                window = "+".join(str(x) for x in parts[max(0, j - 1):j + 2])
                return MembershipResult(False, f"{window} is a forbidden pattern ({name}) centred on {parts[j]}")
    return MembershipResult(True)


def require_member(p: ColouredPartition, spec: MembershipSpec) -> None:
    result = is_member(p, spec)
    if not result:
        raise MembershipError(f"{p} is not in {spec.describe()}", result.witness)


# ===== MINIMAL PARTITIONS AND KERNELS =====

def minimal_partition(seq: Sequence[Colour], metric: Metric = Metric.DELTA) -> ColouredPartition:
    """
    Least-weight partition with colour sequence seq under the given difference.

    The last part is 1; each earlier part exceeds the next by metric(c_k, c_{k+1}).
    """
    sizes = [0] * len(seq)
    running = 0
    for pos in range(len(seq) - 1, -1, -1):
        nxt = seq[pos + 1] if pos + 1 < len(seq) else SENTINEL
        running += metric_value(metric, seq[pos], nxt)
        sizes[pos] = running
    return ColouredPartition(tuple(Part(size, c) for size, c in zip(sizes, seq)))


def kernel_of(p: ColouredPartition) -> ColourSequence:
    return reduce(p.colours)


def minimal_weight_after_insertion(ks: KernelStructure, counts: Sequence[int]) -> int:
    """
    Weight of the minimal partition of S(n_1, ..., n_{s+t}) without building it.

    Type-1 sites that are used add P(j) once; every used site adds n_j times the
    number of active sites from j onwards.
    """
    if len(counts) != len(ks.sites):
        raise PartitionError(f"expected {len(ks.sites)} counts, got {len(counts)}")
    used_type1 = {site.index for site, n in zip(ks.sites, counts)
                  if site.site_class is SiteClass.TYPE1 and n > 0}
    active = [site.index for site in ks.sites
              if site.site_class is not SiteClass.TYPE1 or site.index in used_type1]
    weight = minimal_partition(ks.kernel, Metric.DELTA).weight
    for site, n in zip(ks.sites, counts):
        if site.site_class is SiteClass.TYPE1 and site.index not in used_type1:
            continue
        size = sum(1 for j in active if j >= site.index)
        weight += n * size
        if site.index in used_type1:
            weight += site.position
    return weight


class GfKind(Enum):
    DELTA = "delta"
    FROBENIUS = "frobenius"


def kernel_gf_formula(ks: KernelStructure, m: int, kind: GfKind, order: int) -> QSeries:
    """
    Closed-form generating function of the partitions (or Frobenius symbols) with
    kernel ks.kernel and exactly s+m parts (columns).

    Args:
        ks: Kernel structure of a reduced sequence S
        m: Number of parts beyond the kernel length
        kind: DELTA for coloured partitions, FROBENIUS for Frobenius symbols
        order: Truncation order

    Returns:
        QSeries: colour-free series through q^order
    """
    if m < 0:
        raise PartitionError("m must be non-negative")
    if ks.s == 0:
        return QSeries.one(order) if m == 0 else QSeries.zero(order)
    s, t = ks.s, ks.t
    x = ks.type0_counts()
    base = minimal_partition(ks.kernel, Metric.DELTA).weight
    poly = LaurentPoly.zero(1)
    for u in range(t + 1):
        weight = q_power(u * (s - t)) if kind is GfKind.DELTA else q_power(-u * (t + m))
        poly = poly + weight * g(u, t, x) * qbinom(s + m - 1, m - u)
    shift = base + m if kind is GfKind.DELTA else base + m * (s + m + 1)
    numerator = QSeries({e + shift: c for e, c in qpoly_coefficients(poly).items()}, order)
    result = numerator * inv_euler(order, s + m)
    if kind is GfKind.FROBENIUS:
        result = result * inv_euler(order, s + m)
    return result


# ===== ENUMERATION =====

def _weight_fn(dilation: Optional[Dilation]) -> Callable[[int, Colour], int]:
    if dilation is None:
        return lambda size, c: size
    return dilation.part_weight


def enumerate_partitions(spec: MembershipSpec, max_weight: int,
                         dilation: Optional[Dilation] = None) -> Iterator[ColouredPartition]:
    """
    Every member of the family with (possibly dilated) weight at most max_weight.

    Args:
        spec: Family to enumerate
        max_weight: Weight bound, measured after the dilation when one is given
        dilation: Optional affine part map defining the weight

    Returns:
        Iterator[ColouredPartition]: sorted by (weight, parts)
    """
    if max_weight < 0:
        raise PartitionError("max_weight must be non-negative")
    weight_of = _weight_fn(dilation)
    colours = spec.alphabet()
    family = spec.family
    if family is Family.VARIANT:
        gap = lambda a, b: delta_variant(spec.variant, a, b)  # noqa: E731
    else:
        gap = delta
    found: List[Tuple[int, ColouredPartition]] = []
    parts: List[Part] = []

    def admissible_tail() -> bool:
        # checks that became decidable once the last part was appended
        last = len(parts) - 1
        if family is Family.CN:
            prev = parts[last - 1] if last > 0 else None
            if prev is not None and prev.colour.is_free and prev == parts[last]:
                return False
            if last >= 1 and _centre_pattern(parts, last - 1, spec.table) is not None:
                return False
        elif family is Family.VARIANT and last >= 2:
            x, y, z = parts[last - 2], parts[last - 1], parts[last]
            if variant_extra_pattern(spec.variant, x.size, x.colour, y.size, y.colour, z.size, z.colour):
                return False
        return True

    def complete() -> bool:
        if family is Family.CN and parts:
            return _centre_pattern(parts, len(parts) - 1, spec.table) is None
        return True

    def walk(remaining: int, weight: int):
        if complete():
            found.append((weight, ColouredPartition(tuple(parts))))
        last = parts[-1] if parts else None
        for c in colours:
            top = max_weight if last is None else last.size - gap(last.colour, c)
            for size in range(1, top + 1):
                w = weight_of(size, c)
                if w > remaining:
                    break
                parts.append(Part(size, c))
                if admissible_tail():
                    walk(remaining - w, weight + w)
                parts.pop()

    walk(max_weight, 0)
    found.sort(key=lambda item: (item[0], item[1].sort_key()[1]))
    logger.debug("enumerated %d members of %s up to weight %d", len(found), spec.describe(), max_weight)
    for _, p in found:
        yield p


def count_by_weight(spec: MembershipSpec, max_weight: int,
                    dilation: Optional[Dilation] = None) -> List[int]:
    weight_of = _weight_fn(dilation)
    counts = [0] * (max_weight + 1)
    for p in enumerate_partitions(spec, max_weight, dilation):
        counts[sum(weight_of(part.size, part.colour) for part in p)] += 1
    return counts
