"""
bijection.py
The weight-preserving map between P_n and C_n(delta, gamma) x P^0, and its inverse.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from colour import Colour, DeltaGammaTable, PartitionsError
from partition import (ColouredPartition, MembershipSpec, Part, forbidden_centres, is_member,
                       require_member)

logger = logging.getLogger(__name__)

A0B0 = Colour.free(0)


class BijectionError(PartitionsError):
    """Raised when a step meets a configuration its case analysis does not cover."""


@dataclass(frozen=True)
class PartitionPair:
    mu: ColouredPartition
    nu: ColouredPartition

    @property
    def weight(self) -> int:
        return self.mu.weight + self.nu.weight

    def __str__(self) -> str:
        return f"({self.mu or '0'}, {self.nu or '0'})"

    def to_dict(self) -> Dict:
        return {"mu": self.mu.to_dict(), "nu": self.nu.to_dict()}

    @classmethod
    def from_dict(cls, data: Dict) -> "PartitionPair":
        return cls(ColouredPartition.from_dict(data["mu"]), ColouredPartition.from_dict(data["nu"]))


@dataclass(frozen=True)
class BijectionStep:
    """Snapshot of (mu, nu) after one named step, for traces."""
    name: str
    mu: ColouredPartition
    nu: ColouredPartition


def _snapshot(name: str, parts: Sequence[Part], sizes: Sequence[int]) -> BijectionStep:
    return BijectionStep(name, ColouredPartition(tuple(parts)), ColouredPartition.classical(sizes))


# ===== FORWARD MAP =====

def phi_steps(lam: ColouredPartition, table: DeltaGammaTable) -> List[BijectionStep]:
    """
    Run the three forward steps and record (mu, nu) after each.

    Args:
        lam: Member of P_n with n = table.n
        table: delta/gamma parameters of the target family

    Returns:
        List[BijectionStep]: one snapshot per step; the last is the image
    """
    require_member(lam, MembershipSpec.pn(table.n))
    steps: List[BijectionStep] = []

    moved = [p.size for p in lam if p.colour == A0B0]
    parts = [p for p in lam if p.colour != A0B0]
    steps.append(_snapshot("remove a0b0 parts", parts, moved))

    seen = set()
    kept: List[Part] = []
    for part in parts:
        if part.colour.is_free and part in seen:
            moved.append(part.size)
            continue
        seen.add(part)
        kept.append(part)
    parts = kept
    steps.append(_snapshot("collapse repeated free colours", parts, moved))

    rounds = 0
    while True:
        centres = forbidden_centres(parts, table)
        if not centres:
            break
        rounds += 1
        for j in reversed(centres):
            moved.append(parts[j].size)
            del parts[j]
    if rounds > 1:
        logger.debug("forbidden-pattern removal needed %d rounds on %s", rounds, lam)
    steps.append(_snapshot("remove forbidden centres", parts, moved))
    return steps


def phi(lam: ColouredPartition, table: DeltaGammaTable) -> PartitionPair:
    last = phi_steps(lam, table)[-1]
    return PartitionPair(last.mu, last.nu)


# ===== INVERSE MAP =====

def _below_left(parts: Sequence[Part], first: int, p: int, table: DeltaGammaTable) -> int:
    # all parts of size p have k > l; the new free part goes before the first of them
    c2 = parts[first].colour
    left = parts[first - 1] if first > 0 else None
    if left is None or left.size >= p + 2:
        return table.delta_of(c2)
    if left.size == p + 1:
        c1 = left.colour
        if c1.i <= c1.k:
            return table.delta_of(c2)
        return table.gamma_of(c1, c2)
    raise BijectionError(f"part {left} cannot precede {parts[first]}")


def _below_right(parts: Sequence[Part], last: int, p: int, table: DeltaGammaTable) -> int:
    # all parts of size p have k < l; the new free part goes after the last of them
    c1 = parts[last].colour
    right = parts[last + 1] if last + 1 < len(parts) else None
    if right is None or right.size <= p - 2:
        return table.delta_of(c1)
    if right.size == p - 1:
        c2 = right.colour
        if c2.i >= c2.k:
            return table.delta_of(c1)
        return table.gamma_of(c1, c2)
    raise BijectionError(f"part {right} cannot follow {parts[last]}")


def _restore_centre(parts: List[Part], p: int, table: DeltaGammaTable) -> bool:
    """Insert the free part of size p that the forward map removed; False if there is none to restore."""
    idxs = [j for j, part in enumerate(parts) if part.size == p]
    if not idxs or any(parts[j].colour.is_free for j in idxs):
        return False
    falling = [parts[j].colour.i > parts[j].colour.k for j in idxs]
    if all(falling):
        i = _below_left(parts, idxs[0], p, table)
        parts.insert(idxs[0], Part(p, Colour.free(i)))
    elif not any(falling):
        i = _below_right(parts, idxs[-1], p, table)
        parts.insert(idxs[-1] + 1, Part(p, Colour.free(i)))
    else:
        for a, b in zip(idxs, idxs[1:]):
            if not falling[a - idxs[0]] and falling[b - idxs[0]]:
                parts.insert(b, Part(p, Colour.free(table.gamma_of(parts[a].colour, parts[b].colour))))
                break
        else:
            raise BijectionError(f"parts of size {p} have mixed colours without a rising-falling pair")
    return True


def phi_inverse_steps(pair: PartitionPair, table: DeltaGammaTable,
                      size_order: Optional[Sequence[int]] = None) -> List[BijectionStep]:
    """
    Undo the forward steps in reverse order, recording (mu, nu) after each.

    Args:
        pair: (mu, nu) with mu in C_n(delta, gamma) and nu in P^0
        table: delta/gamma parameters of mu's family
        size_order: Order in which the sizes of nu are tried when restoring
            removed centres; decreasing by default

    Returns:
        List[BijectionStep]: one snapshot per step; the last has the preimage as mu and an empty nu
    """
    require_member(pair.mu, MembershipSpec.cn(table))
    require_member(pair.nu, MembershipSpec.p0())
    pool = Counter(pair.nu.sizes)
    if size_order is None:
        order = sorted(pool, reverse=True)
    else:
        order = list(size_order)
        if sorted(order) != sorted(pool):
            raise BijectionError("size_order must list every distinct size of nu exactly once")

    parts = list(pair.mu.parts)
    steps: List[BijectionStep] = []

    for p in order:
        if _restore_centre(parts, p, table):
            pool[p] -= 1
    steps.append(_snapshot("restore forbidden centres", parts, sorted(pool.elements(), reverse=True)))

    for p in sorted(pool, reverse=True):
        free = [j for j, part in enumerate(parts) if part.size == p and part.colour.is_free]
        if not free or not pool[p]:
            continue
        if len(free) > 1:
            raise BijectionError(f"several free colours share size {p}")
        j = free[0]
        parts[j + 1:j + 1] = [parts[j]] * pool[p]
        pool[p] = 0
    steps.append(_snapshot("repeat free colours", parts, sorted(pool.elements(), reverse=True)))

    for p in sorted(pool.elements(), reverse=True):
        pos = 0
        while pos < len(parts) and parts[pos].size >= p:
            pos += 1
        parts.insert(pos, Part(p, A0B0))
    steps.append(_snapshot("insert a0b0 parts", parts, []))

    result = steps[-1].mu
    check = is_member(result, MembershipSpec.pn(table.n))
    if not check:
        raise BijectionError(f"inverse image {result} left P_{table.n}: {check.witness}")
    return steps


def phi_inverse(pair: PartitionPair, table: DeltaGammaTable,
                size_order: Optional[Sequence[int]] = None) -> ColouredPartition:
    return phi_inverse_steps(pair, table, size_order)[-1].mu


# ===== CONSERVATION =====

def conservation_summary(lam: ColouredPartition, pair: PartitionPair) -> Dict:
    """
    Compare lam with mu + nu on the quantities the bijection keeps fixed.

    Returns:
        dict: per-quantity (left, right) values and an overall 'preserved' flag
    """
    joined = list(pair.mu) + list(pair.nu)
    bound_left = Counter(p.colour for p in lam if p.colour.is_bound)
    bound_right = Counter(p.colour for p in joined if p.colour.is_bound)
    summary = {
        "weight": (lam.weight, pair.weight),
        "parts": (lam.length, len(joined)),
        "sizes": (sorted(lam.sizes, reverse=True), sorted((p.size for p in joined), reverse=True)),
        "bound_colours": ({str(c): v for c, v in sorted(bound_left.items())},
                          {str(c): v for c, v in sorted(bound_right.items())}),
    }
    summary["preserved"] = all(left == right for left, right in summary.values())
    return summary
