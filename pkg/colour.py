"""
colour.py
Colour alphabet, minimal-difference functions and the delta/gamma parameter tables.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

logger = logging.getLogger(__name__)


class PartitionsError(Exception):
    """Base class for every error raised by this package."""


class ColourError(PartitionsError):
    """Raised for sentinel misuse, bad indices and unparseable colour tokens."""


class TableError(PartitionsError):
    """Raised when a delta/gamma table is malformed or violates Conditions 1-2."""

    def __init__(self, message: str, violations: Optional[List["TableViolation"]] = None):
        super().__init__(message)
        self.violations = violations or []


class ColourKind(Enum):
    FREE = "free"
    BOUND = "bound"
    SENTINEL = "sentinel"


class Metric(Enum):
    """Which minimal-difference function a computation runs under."""
    DELTA = "delta"
    DELTA_PRIME = "delta_prime"
    DELTA_DOUBLE_PRIME = "delta_double_prime"


class Variant(Enum):
    """Built-in Capparelli-type parameter choices."""
    MEURMAN_PRIMC = "mp"
    ALT = "alt"


@dataclass(frozen=True, order=True)
class Colour:
    """
    A colour a_i b_k.

    Free colours have i == k, bound colours i != k. The sentinel a_inf b_inf only
    appears as the boundary value past the last part.
    """
    kind: ColourKind = field(compare=False)
    i: int = 0
    k: int = 0

    def __post_init__(self):
        if self.kind is ColourKind.FREE and self.i != self.k:
            raise ColourError(f"free colour needs equal indices, got a{self.i}b{self.k}")
        if self.kind is ColourKind.BOUND and self.i == self.k:
            raise ColourError(f"bound colour needs distinct indices, got a{self.i}b{self.k}")
        if self.kind is not ColourKind.SENTINEL and (self.i < 0 or self.k < 0):
            raise ColourError(f"negative colour index in a{self.i}b{self.k}")

    @classmethod
    def free(cls, i: int) -> "Colour":
        return cls(ColourKind.FREE, i, i)

    @classmethod
    def bound(cls, i: int, k: int) -> "Colour":
        return cls(ColourKind.BOUND, i, k)

    @property
    def is_free(self) -> bool:
        return self.kind is ColourKind.FREE

    @property
    def is_bound(self) -> bool:
        return self.kind is ColourKind.BOUND

    @property
    def is_sentinel(self) -> bool:
        return self.kind is ColourKind.SENTINEL

    @property
    def a(self) -> float:
        """a-index, infinite for the sentinel."""
        return math.inf if self.is_sentinel else self.i

    @property
    def b(self) -> float:
        """b-index, infinite for the sentinel."""
        return math.inf if self.is_sentinel else self.k

    def max_index(self) -> int:
        if self.is_sentinel:
            raise ColourError("the sentinel has no index")
        return max(self.i, self.k)

    def to_dict(self) -> Dict:
        return {"a": self.i, "b": self.k}

    @classmethod
    def from_dict(cls, data: Dict) -> "Colour":
        try:
            return colour(int(data["a"]), int(data["b"]))
        except (KeyError, TypeError, ValueError) as e:
            raise ColourError(f"bad colour record {data!r}") from e

    def __str__(self) -> str:
        if self.is_sentinel:
            return "ainfbinf"
        return f"a{self.i}b{self.k}"

    def __repr__(self) -> str:
        return f"Colour({self})"


SENTINEL = Colour(ColourKind.SENTINEL, -1, -1)


def colour(i: int, k: int) -> Colour:
    """Free or bound colour a_i b_k depending on the indices."""
    return Colour.free(i) if i == k else Colour.bound(i, k)


def parse_colour(token: str) -> Colour:
    """
    Parse a token like "a1b2".

    Args:
        token: Text of the form a<i>b<k>

    Returns:
        Colour: the parsed colour
    """
    text = token.strip()
    if not text.startswith("a") or "b" not in text:
        raise ColourError(f"cannot parse colour {token!r}")
    left, _, right = text[1:].partition("b")
    if not left.isdigit() or not right.isdigit():
        raise ColourError(f"cannot parse colour {token!r}")
    return colour(int(left), int(right))


def all_colours(n: int, include_a0b0: bool = True) -> List[Colour]:
    """All n^2 colours over indices 0..n-1, in matrix order."""
    colours = [colour(i, k) for i in range(n) for k in range(n)]
    if not include_a0b0:
        colours = [c for c in colours if c != Colour.free(0)]
    return sorted(colours, key=matrix_order_key)


def bound_colours(n: int) -> List[Colour]:
    return [c for c in all_colours(n) if c.is_bound]


def check_index(c: Colour, n: int) -> None:
    if not c.is_sentinel and c.max_index() >= n:
        raise ColourError(f"colour {c} uses an index outside 0..{n - 1}")


def _chi(condition: bool) -> int:
    return 1 if condition else 0


# ===== MINIMAL DIFFERENCES =====

def delta(c1: Colour, c2: Colour) -> int:
    """
    Minimal difference between consecutive parts coloured c1 then c2.

    Args:
        c1: Colour of the larger part
        c2: Colour of the next part (may be the sentinel)

    Returns:
        int: 0, 1 or 2
    """
    if c1.is_sentinel and c2.is_sentinel:
        raise ColourError("delta is undefined between two sentinels")
    if c1.is_sentinel or c2.is_sentinel:
        return 1
    i, k = c1.i, c1.k
    i2, k2 = c2.i, c2.k
    return (_chi(i >= i2) - _chi(i == k == i2)
            + _chi(k <= k2) - _chi(k == i2 == k2))


def delta_prime(c1: Colour, c2: Colour) -> int:
    if c1.is_sentinel or c2.is_sentinel:
        raise ColourError("delta_prime does not accept the sentinel")
    return _chi(c1.i >= c2.i) + _chi(c1.k <= c2.k)


def delta_double_prime(c1: Colour, c2: Colour) -> int:
    return 2 - delta_prime(c1, c2)


def metric_value(metric: Metric, c1: Colour, c2: Colour) -> int:
    """Difference under the given metric; the boundary past the last part always costs 1."""
    if c2.is_sentinel and not c1.is_sentinel:
        return 1
    if metric is Metric.DELTA:
        return delta(c1, c2)
    if metric is Metric.DELTA_PRIME:
        return delta_prime(c1, c2)
    return delta_double_prime(c1, c2)


def _check_variant_argument(c: Colour) -> None:
    if c.is_sentinel:
        raise ColourError("difference variants do not accept the sentinel")
    if c == Colour.free(0):
        raise ColourError("a0b0 is not part of the Capparelli alphabet")


def delta_variant(variant: Variant, c1: Colour, c2: Colour) -> int:
    """
    Delta_1 (Meurman-Primc) or Delta_2 (Alt) difference on the alphabet without a0b0.

    Both agree with delta except on a few pairs where delta is 0 and the variant is 1.
    """
    _check_variant_argument(c1)
    _check_variant_argument(c2)
    if c1.is_free and c1 == c2:
        return 1
    if variant is Variant.MEURMAN_PRIMC:
        # a_l b_l followed by a_k b_{l-1}, k >= l > 0
        if c1.is_free and c1.i > 0 and c2.k == c1.i - 1 and c2.i >= c1.i:
            return 1
        # a_{k-1} b_l followed by a_k b_k, l >= k > 0
        if c2.is_free and c2.i > 0 and c1.i == c2.i - 1 and c1.k >= c2.i:
            return 1
    else:
        # a_k b_k followed by a_k b_l, k > l
        if c1.is_free and c2.is_bound and c2.i == c1.i and c2.k < c2.i:
            return 1
        # a_k b_l followed by a_l b_l, l > k
        if c2.is_free and c1.is_bound and c1.k == c2.i and c1.k > c1.i:
            return 1
    return delta(c1, c2)


def variant_extra_pattern(variant: Variant, size1: int, c1: Colour, size2: int, c2: Colour,
                          size3: int, c3: Colour) -> bool:
    """True when three consecutive parts form one of the variant's two extra forbidden patterns."""
    if variant is Variant.MEURMAN_PRIMC:
        # (p+1)_{k1 l1} + p_{k2 k2} + p_{k2 l2}, k2 > k1 > l2 >= l1
        if (size1 == size2 + 1 and size2 == size3 and c2.is_free and c3.i == c2.i
                and c3.i > c1.i > c3.k >= c1.k):
            return True
        # (p+1)_{k1 l1} + (p+1)_{l1 l1} + p_{k2 l2}, l1 > l2 > k1 >= k2
        if (size1 == size2 and size2 == size3 + 1 and c2.is_free and c2.i == c1.k
                and c1.k > c3.k > c1.i >= c3.i):
            return True
        return False
    # (p+1)_{k1 l1} + p_{(l2+1)(l2+1)} + p_{k2 l2}, k1 >= k2 > l1 > l2
    if (size1 == size2 + 1 and size2 == size3 and c2.is_free and c2.i == c3.k + 1
            and c1.i >= c3.i > c1.k > c3.k):
        return True
    # (p+1)_{k1 l1} + (p+1)_{(k1+1)(k1+1)} + p_{k2 l2}, l2 >= l1 > k2 > k1
    if (size1 == size2 and size2 == size3 + 1 and c2.is_free and c2.i == c1.i + 1
            and c3.k >= c1.k > c3.i > c1.i):
        return True
    return False


# ===== MATRICES =====

def matrix_order_key(c: Colour) -> Tuple[int, int, int]:
    """Row/column order of the printed difference matrices, extended to every n."""
    gap = c.k - c.i
    return (gap, 0 if c == Colour.free(0) else 1, -c.i if gap <= 0 else c.i)


def build_delta_matrix(n: int, which: Metric = Metric.DELTA) -> Tuple[List[Colour], np.ndarray]:
    """
    Difference matrix over the n^2 colours.

    Args:
        n: Number of colour indices
        which: Metric filling the entries

    Returns:
        Tuple: (row/column colours, integer matrix)
    """
    if n < 1:
        raise ColourError("n must be positive")
    colours = all_colours(n)
    matrix = np.array([[metric_value(which, r, c) for c in colours] for r in colours], dtype=int)
    return colours, matrix


def build_variant_matrix(variant: Variant, n: int) -> Tuple[List[Colour], np.ndarray]:
    """Delta_1 / Delta_2 matrix over the n^2 - 1 colours other than a0b0."""
    colours = all_colours(n, include_a0b0=False)
    matrix = np.array([[delta_variant(variant, r, c) for c in colours] for r in colours], dtype=int)
    return colours, matrix


# ===== STRUCTURE OF DELTA =====

def delta_by_cases(c1: Colour, c2: Colour) -> int:
    """
    Delta through its free/bound case split rather than the defining formula.

    Args:
        c1: Non-sentinel colour of the larger part
        c2: Non-sentinel colour of the next part

    Returns:
        int: the same value delta(c1, c2) gives
    """
    if c1.is_sentinel or c2.is_sentinel:
        raise ColourError("the case split does not cover the sentinel")
    if c1.is_free and c2.is_free:
        return _chi(c1.i != c2.i)
    if c2.is_free:
        i, j, k = c1.i, c1.k, c2.i
        return 1 - _chi(i < k <= j) if i < j else 1 + _chi(i >= k > j)
    if c1.is_free:
        k, i, j = c1.i, c2.i, c2.k
        return 1 + _chi(i < k <= j) if i < j else 1 - _chi(i >= k > j)
    return _chi(c1.i >= c2.i) + _chi(c1.k <= c2.k)


def zero_pair_case(c1: Colour, c2: Colour) -> Optional[int]:
    """
    Which shape of zero-difference pair (c1, c2) is, or None when it has none of them.

    1: the same free colour twice. 2: a_i b_j then a_k b_k with i < k <= j.
    3: a_k b_k then a_i b_j with j < k <= i. 4: a_i b_j then a_k b_l, both bound, i < k and j > l.
    """
    if c1.is_sentinel or c2.is_sentinel:
        return None
    if c1.is_free and c2.is_free:
        return 1 if c1 == c2 else None
    if c2.is_free:
        return 2 if c1.i < c2.i <= c1.k else None
    if c1.is_free:
        return 3 if c2.k < c1.i <= c2.i else None
    return 4 if c1.i < c2.i and c1.k > c2.k else None


def triangle_violations(n: int) -> List[Tuple[Colour, Colour, Colour]]:
    """
    Triples (x, z, y) over the n^2 colours with delta(x, y) > delta(x, z) + delta(z, y).

    All triples are compared at once on the difference matrix.
    """
    colours, matrix = build_delta_matrix(n)
    through = matrix[:, :, None] + matrix[None, :, :]
    direct = matrix[:, None, :]
    found = [(colours[x], colours[z], colours[y]) for x, z, y in np.argwhere(direct > through)]
    logger.debug("triangle inequality for n=%d: %d violations", n, len(found))
    return found


# ===== DELTA / GAMMA TABLES =====

@dataclass(frozen=True)
class TableViolation:
    entry: str
    rule: str
    message: str

    def __str__(self) -> str:
        return f"{self.entry}: {self.rule} ({self.message})"


@dataclass
class DeltaGammaTable:
    """Parameter functions delta (on bound colours) and gamma (on the pairs Condition 2 names)."""
    n: int
    delta: Dict[Colour, int]
    gamma: Dict[Tuple[Colour, Colour], int]
    name: str = "custom"

    def delta_of(self, c: Colour) -> int:
        try:
            return self.delta[c]
        except KeyError:
            raise TableError(f"table {self.name} has no delta entry for {c}") from None

    def gamma_of(self, c1: Colour, c2: Colour) -> int:
        try:
            return self.gamma[(c1, c2)]
        except KeyError:
            raise TableError(f"table {self.name} has no gamma entry for ({c1}, {c2})") from None

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "delta": {f"{c.i},{c.k}": v for c, v in sorted(self.delta.items(), key=lambda e: matrix_order_key(e[0]))},
            "gamma": {
                f"{c1.i},{c1.k}|{c2.i},{c2.k}": v
                for (c1, c2), v in sorted(self.gamma.items(),
                                          key=lambda e: (matrix_order_key(e[0][0]), matrix_order_key(e[0][1])))
            },
        }

    @classmethod
    def from_dict(cls, data: Dict, name: str = "custom") -> "DeltaGammaTable":
        try:
            n = int(data["n"])
            delta_entries = {_parse_pair_key(key): int(v) for key, v in data["delta"].items()}
            gamma_entries = {}
            for key, v in data["gamma"].items():
                left, sep, right = key.partition("|")
                if not sep:
                    raise TableError(f"gamma key {key!r} must look like 'k1,l1|k2,l2'")
                gamma_entries[(_parse_pair_key(left), _parse_pair_key(right))] = int(v)
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise TableError(f"malformed table: {e}") from e
        return cls(n=n, delta=delta_entries, gamma=gamma_entries, name=name)


def _parse_pair_key(key: str) -> Colour:
    parts = key.split(",")
    if len(parts) != 2:
        raise TableError(f"bad colour key {key!r}")
    return colour(int(parts[0]), int(parts[1]))


def condition_two_range(c1: Colour, c2: Colour) -> Optional[List[int]]:
    """
    Allowed gamma values for the pair (c1, c2), or None when Condition 2 does not constrain it.

    c1 = a_{k1} b_{l1}, c2 = a_{k2} b_{l2}, both bound.
    """
    k1, l1, k2, l2 = c1.i, c1.k, c2.i, c2.k
    low, high = max(k1, l2), min(k2, l1)
    if low < high:
        return list(range(low + 1, high + 1))
    if k1 > l1 and k2 > l2:
        allowed = set(range(l2 + 1, k2 + 1)) - set(range(l1 + 1, k1 + 1))
        return sorted(allowed) or None
    if k1 < l1 and k2 < l2:
        allowed = set(range(k1 + 1, l1 + 1)) - set(range(k2 + 1, l2 + 1))
        return sorted(allowed) or None
    return None


def gamma_domain(n: int) -> Iterator[Tuple[Colour, Colour, List[int]]]:
    """Every pair of bound colours that needs a gamma value, with its allowed values."""
    for c1, c2 in product(bound_colours(n), repeat=2):
        allowed = condition_two_range(c1, c2)
        if allowed:
            yield c1, c2, allowed


def _delta_builtin(variant: Variant, c: Colour) -> int:
    if variant is Variant.MEURMAN_PRIMC:
        return 1 + min(c.i, c.k)
    return max(c.i, c.k)


def _gamma_builtin(variant: Variant, c1: Colour, c2: Colour, allowed: List[int]) -> int:
    k1, l1, k2, l2 = c1.i, c1.k, c2.i, c2.k
    if max(k1, l2) < min(k2, l1):
        return 1 + max(k1, l2) if variant is Variant.MEURMAN_PRIMC else min(k2, l1)
    if k1 > l1:
        first, second = (l2 + 1, k2) if variant is Variant.MEURMAN_PRIMC else (k2, l2 + 1)
    else:
        first, second = (k1 + 1, l1) if variant is Variant.MEURMAN_PRIMC else (l1, k1 + 1)
    return first if first in allowed else second


def builtin_delta_gamma(variant: Variant, n: int) -> DeltaGammaTable:
    """
    The (delta_1, gamma_1) or (delta_2, gamma_2) table for n colours.

    Args:
        variant: MEURMAN_PRIMC or ALT
        n: Number of colour indices, at least 2

    Returns:
        DeltaGammaTable: validated table
    """
    if n < 2:
        raise TableError("built-in tables need n >= 2")
    delta_entries = {c: _delta_builtin(variant, c) for c in bound_colours(n)}
    gamma_entries = {(c1, c2): _gamma_builtin(variant, c1, c2, allowed)
                     for c1, c2, allowed in gamma_domain(n)}
    table = DeltaGammaTable(n=n, delta=delta_entries, gamma=gamma_entries, name=variant.value)
    logger.debug("built %s table for n=%d: %d delta, %d gamma entries",
                 variant.value, n, len(delta_entries), len(gamma_entries))
    return table


def validate_delta_gamma(table: DeltaGammaTable) -> List[TableViolation]:
    """
    Check Conditions 1 and 2 entry by entry.

    Returns:
        List[TableViolation]: empty when the table is valid
    """
    violations = []
    expected_delta = set(bound_colours(table.n))
    for c in sorted(expected_delta, key=matrix_order_key):
        if c not in table.delta:
            violations.append(TableViolation(str(c), "condition 1", "missing delta entry"))
            continue
        low, high = min(c.i, c.k), max(c.i, c.k)
        value = table.delta[c]
        if not low < value <= high:
            violations.append(TableViolation(
                str(c), "condition 1", f"need {low} < delta <= {high}, got {value}"))
    for c in table.delta:
        if c not in expected_delta:
            violations.append(TableViolation(str(c), "condition 1", "not a bound colour of this table"))

    expected_gamma = {}
    for c1, c2, allowed in gamma_domain(table.n):
        expected_gamma[(c1, c2)] = allowed
        entry = f"({c1}, {c2})"
        if (c1, c2) not in table.gamma:
            violations.append(TableViolation(entry, "condition 2", "missing gamma entry"))
        elif table.gamma[(c1, c2)] not in allowed:
            violations.append(TableViolation(
                entry, "condition 2", f"gamma must lie in {allowed}, got {table.gamma[(c1, c2)]}"))
    for pair in table.gamma:
        if pair not in expected_gamma:
            violations.append(TableViolation(f"({pair[0]}, {pair[1]})", "condition 2", "unexpected gamma entry"))

    logger.debug("validated table %s: %d violations", table.name, len(violations))
    return violations


def require_valid(table: DeltaGammaTable) -> DeltaGammaTable:
    violations = validate_delta_gamma(table)
    if violations:
        listing = "; ".join(str(v) for v in violations)
        raise TableError(f"table {table.name} is invalid: {listing}", violations)
    return table


def count_valid_tables(n: int) -> int:
    """How many tables satisfy Conditions 1-2 for n colours."""
    total = 1
    for c in bound_colours(n):
        total *= max(c.i, c.k) - min(c.i, c.k)
    for _, _, allowed in gamma_domain(n):
        total *= len(allowed)
    return total
