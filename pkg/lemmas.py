"""
lemmas.py
Exact checks of the q-binomial identities, the minimal-weight bookkeeping behind the
kernel generating functions, and the structure of the difference conditions.
Failures are collected into a report, never raised.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from colour import (Colour, Metric, all_colours, bound_colours, delta, delta_by_cases, delta_double_prime,
                    triangle_violations, zero_pair_case)
from partition import minimal_partition, minimal_weight_after_insertion
from qseries import LaurentPoly, QSeries, g, inv_euler, q_power, qbinom
from sequence import (SITE_DIFFERENCES, KernelStructure, SiteClass, differences_hold, double_insertion_difference,
                      insert, insertion_difference, is_primary, kernel_structure, left_insertion_type,
                      predicted_step_insertions, predicted_zero_run_insertions, reduced_sequences,
                      right_insertion_type, sample_sequences, site_difference, step_insertions,
                      zero_run_insertions, zero_run_shape, zero_runs)

logger = logging.getLogger(__name__)

MAX_FAILURES_KEPT = 5


@dataclass
class LemmaResult:
    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)
    failed: int = 0

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, equal: bool, label: str) -> None:
        self.cases += 1
        if not equal:
            self.failed += 1
            if len(self.failures) < MAX_FAILURES_KEPT:
                self.failures.append(label)

    def record_batch(self, cases: int, failures: Sequence[str]) -> None:
        self.cases += cases
        self.failed += len(failures)
        room = max(0, MAX_FAILURES_KEPT - len(self.failures))
        self.failures.extend(failures[:room])

    def to_dict(self) -> Dict:
        return {"name": self.name, "cases": self.cases, "failed": self.failed,
                "ok": self.ok, "failures": list(self.failures)}


@dataclass
class LemmaReport:
    results: List[LemmaResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def cases(self) -> int:
        return sum(r.cases for r in self.results)

    def first_failure(self) -> Dict:
        for r in self.results:
            if not r.ok:
                return {"lemma": r.name, "case": r.failures[0] if r.failures else None}
        return {}

    def to_dict(self) -> Dict:
        return {"ok": self.ok, "cases": self.cases, "results": [r.to_dict() for r in self.results]}


def qbinom_ext(n: int, k: int) -> LaurentPoly:
    """Gaussian binomial with [-1, 0] = 1, as used when a box has zero width."""
    if n == -1 and k == 0:
        return LaurentPoly.constant(1, 1)
    return qbinom(n, k)


def _series(poly: LaurentPoly, order: int) -> QSeries:
    return QSeries.from_qpoly(poly, order)


# ===== PURE q-BINOMIAL IDENTITIES =====

def check_box_decomposition(max_s: int = 6, max_m: int = 6, order: int = 20) -> LemmaResult:
    """1/(q;q)_{s+m} = sum_{m'} q^((m'-u)(s+m')) [m-u, m'-u] / (q;q)_{s+m'}."""
    result = LemmaResult("box decomposition of 1/(q;q)_{s+m}")
    for s in range(1, max_s + 1):
        for m in range(max_m + 1):
            for u in range(m + 1):
                rhs = QSeries.zero(order)
                for mp in range(u, m + 1):
                    rhs = rhs + _series(qbinom(m - u, mp - u), order).shift((mp - u) * (s + mp)) \
                        * inv_euler(order, s + mp)
                result.record(rhs == inv_euler(order, s + m), f"s={s} m={m} u={u}")
    return result


def check_lattice_paths(max_ab: int = 5, corrupt: bool = False) -> LemmaResult:
    """
    Sum over a-subsets A of [1, a+b] of q^(sum_{j in A} #{j' < j not in A}) equals [a+b, a].

    With corrupt set, one exponent is shifted to exercise the failure path.
    """
    result = LemmaResult("lattice paths in an a x b box")
    for a in range(max_ab + 1):
        for b in range(max_ab + 1):
            total = LaurentPoly.zero(1)
            for chosen in combinations(range(a + b), a):
                picked = set(chosen)
                exponent = sum(sum(1 for jp in range(j) if jp not in picked) for j in chosen)
                total = total + q_power(exponent + (1 if corrupt else 0))
            result.record(total == qbinom(a + b, a), f"a={a} b={b}")
    return result


def check_binomial_convolution(max_abc: int = 6) -> LemmaResult:
    """[a+b, c] = sum_{a'} [a, a'] [b, c-a'] q^(a'(b-c+a'))."""
    result = LemmaResult("q-Vandermonde convolution")
    for a in range(max_abc + 1):
        for b in range(max_abc + 1):
            for c in range(max_abc + 1):
                total = LaurentPoly.zero(1)
                for ap in range(min(a, c) + 1):
                    total = total + qbinom(a, ap) * qbinom(b, c - ap) * q_power(ap * (b - c + ap))
                result.record(total == qbinom(a + b, c), f"a={a} b={b} c={c}")
    return result


def _chains(t: int, top: int) -> Iterator[Tuple[int, ...]]:
    """0 = x_0 <= x_1 <= ... <= x_t = top, yielded as (x_0, ..., x_t)."""
    if t == 0:
        if top == 0:
            yield (0,)
        return
    for middle in product(range(top + 1), repeat=t - 1):
        xs = (0,) + middle + (top,)
        if all(xs[r] <= xs[r + 1] for r in range(t)):
            yield xs


def check_box_splitting(max_t: int = 3, max_l: int = 3, max_m: int = 6) -> LemmaResult:
    """[m + l_1 + ... + l_t - 1, m] = sum over chains of prod_r q^(l_r x_{r-1}) [x_r - x_{r-1} + l_r - 1, x_r - x_{r-1}]."""
    result = LemmaResult("splitting a box along a chain")
    for t in range(1, max_t + 1):
        for ls in product(range(max_l + 1), repeat=t):
            for m in range(max_m + 1):
                total = LaurentPoly.zero(1)
                for xs in _chains(t, m):
                    term = LaurentPoly.constant(1, 1)
                    for r in range(1, t + 1):
                        d = xs[r] - xs[r - 1]
                        term = term * q_power(ls[r - 1] * xs[r - 1]) * qbinom_ext(d + ls[r - 1] - 1, d)
                    total = total + term
                result.record(total == qbinom_ext(m + sum(ls) - 1, m), f"l={ls} m={m}")
    return result


def check_g_reflection(max_v: int = 4) -> LemmaResult:
    """g_{u,v}(1/q; 2-x) = q^(-u(2v+u-1)) g_{u,v}(q; x) for x in {0,1,2}^v."""
    result = LemmaResult("reflection of g_{u,v}")
    for v in range(max_v + 1):
        for xs in product(range(3), repeat=v):
            for u in range(v + 1):
                lhs = g(u, v, [2 - x for x in xs]).invert_variables()
                rhs = q_power(-u * (2 * v + u - 1)) * g(u, v, xs)
                result.record(lhs == rhs, f"u={u} v={v} x={xs}")
    return result


def _recursive_g_sum(xs: Sequence[int], m: int) -> LaurentPoly:
    """G_t(x; m) summed directly over 0 = m_0 <= ... <= m_t = m and k_u in [0, 2 - x_u]."""
    t = len(xs)
    total = LaurentPoly.zero(1)
    for ms in _chains(t, m):
        for ks in product(*(range(3 - x) for x in xs)):
            term = LaurentPoly.constant(1, 1)
            for u in range(1, t + 1):
                x, k = xs[u - 1], ks[u - 1]
                d = ms[u] - ms[u - 1]
                term = term * q_power(k * (u - 2 + k + x) + (k + x) * ms[u - 1]) \
                    * qbinom(2 - x, k) * qbinom_ext(d + x - 1, d - k)
            total = total + term
    return total


def check_g_expansion(max_t: int = 2, max_m: int = 5) -> LemmaResult:
    """G_t(x; m) = sum_u g_{u,t}(x) [m+t-1, m-u]."""
    result = LemmaResult("expansion of G_t in g_{u,t}")
    for t in range(1, max_t + 1):
        for xs in product(range(3), repeat=t):
            for m in range(max_m + 1):
                rhs = LaurentPoly.zero(1)
                for u in range(t + 1):
                    rhs = rhs + g(u, t, xs) * qbinom(m + t - 1, m - u)
                result.record(_recursive_g_sum(xs, m) == rhs, f"x={xs} m={m}")
    return result


# ===== MINIMAL-WEIGHT BOOKKEEPING =====

@dataclass(frozen=True)
class _SiteSets:
    neutral: Tuple[int, ...]
    type0: Dict[int, Tuple[int, ...]]
    type1: Dict[int, Tuple[int, ...]]

    @classmethod
    def of(cls, ks: KernelStructure) -> "_SiteSets":
        type0 = {u: tuple(s.index for s in ks.sites if s.owner == u and s.site_class is SiteClass.TYPE0)
                 for u in range(1, ks.t + 1)}
        type1 = {u: tuple(s.index for s in ks.sites if s.owner == u and s.site_class is SiteClass.TYPE1)
                 for u in range(1, ks.t + 1)}
        neutral = tuple(s.index for s in ks.sites if s.site_class is SiteClass.NEUTRAL)
        return cls(neutral, type0, type1)

    @property
    def n_type0(self) -> int:
        return sum(len(v) for v in self.type0.values())


def _used_type1_choices(sets: _SiteSets) -> Iterator[Dict[int, Tuple[int, ...]]]:
    runs = sorted(sets.type1)
    options = []
    for u in runs:
        sites = sets.type1[u]
        options.append([c for r in range(len(sites) + 1) for c in combinations(sites, r)])
    for picked in product(*options):
        yield dict(zip(runs, picked))


def _counts_vectors(length: int, total: int) -> Iterator[Tuple[int, ...]]:
    if length == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _counts_vectors(length - 1, total - first):
            yield (first,) + rest


def _direct_min_weight(ks: KernelStructure, counts: Sequence[int]) -> int:
    return minimal_partition(insert(ks.kernel, counts), Metric.DELTA).weight


def _bounded_counts(length: int, max_count: int, max_total: Optional[int]) -> Iterator[Tuple[int, ...]]:
    if max_total is None:
        yield from product(range(max_count + 1), repeat=length)
        return
    for total in range(max_total + 1):
        for counts in _counts_vectors(length, total):
            if max(counts, default=0) <= max_count:
                yield counts


def check_min_weight_formula(n: int = 3, max_length: int = 3, max_count: int = 2,
                             max_total: Optional[int] = None, sample: Optional[int] = None,
                             seed: int = 0) -> LemmaResult:
    """
    The closed minimal weight of S(n_1, ..., n_{s+t}) against building the partition.

    Args:
        n: Number of a/b indices
        max_length: Longest kernel checked
        max_count: Largest number of free colours put into one site
        max_total: Largest number of free colours put in overall; None for no bound
        sample: When set, kernels of exactly max_length are a seeded sample of this size
            and shorter kernels stay exhaustive
        seed: Seed for that sample
    """
    result = LemmaResult("minimal weight after insertions")
    kernels = reduced_sequences(n, max_length)
    if sample is not None:
        longest = [s for s in kernels if len(s) == max_length]
        kernels = [s for s in kernels if len(s) < max_length] + sample_sequences(longest, sample, seed)
    for seq in kernels:
        ks = kernel_structure(seq)
        for counts in _bounded_counts(len(ks.sites), max_count, max_total):
            equal = minimal_weight_after_insertion(ks, counts) == _direct_min_weight(ks, counts)
            result.record(equal, f"S={','.join(map(str, seq))} counts={counts}")
    return result


def _sigma1_direct(ks: KernelStructure, used: Sequence[int]) -> int:
    active = set(s.index for s in ks.sites if s.site_class is not SiteClass.TYPE1) | set(used)
    position = {s.index: s.position for s in ks.sites}
    return sum(position[j] + sum(1 for jp in active if jp >= j) for j in used)


def _sigma1_formula(sets: _SiteSets, picked: Dict[int, Tuple[int, ...]]) -> int:
    total = 0
    t = len(sets.type1)
    for u in range(1, t + 1):
        chosen = picked.get(u, ())
        tail = sum(len(sets.type0[v]) + len(picked.get(v, ())) for v in range(u, t + 1))
        total += (len(sets.neutral) + u - 1 + tail) * len(chosen)
        unused = [j for j in sets.type1[u] if j not in chosen]
        total += sum(sum(1 for jp in unused if jp < j) for j in chosen)
    return total


def check_gs_machinery(n: int = 3, max_length: int = 3, max_m: int = 4) -> List[LemmaResult]:
    """
    Sigma_1, H_{S,S_1} and G_{S,m} for every reduced S: each closed form against direct summation
    over insertion counts.
    """
    sigma = LemmaResult("Sigma_1 for a fixed set of used type-1 sites")
    h = LemmaResult("H_{S,S_1} for a fixed set of used type-1 sites")
    gs = LemmaResult("G_{S,m} summed over used type-1 sites")
    for seq in reduced_sequences(n, max_length):
        if not seq:
            continue
        ks = kernel_structure(seq)
        sets = _SiteSets.of(ks)
        base = minimal_partition(ks.kernel, Metric.DELTA).weight
        label = ",".join(map(str, seq))
        type1 = {j for sites in sets.type1.values() for j in sites}

        for picked in _used_type1_choices(sets):
            used = sorted(j for sites in picked.values() for j in sites)
            s1 = _sigma1_formula(sets, picked)
            sigma.record(s1 == _sigma1_direct(ks, used), f"S={label} S1={used}")
            for m in range(max_m + 1):
                direct = LaurentPoly.zero(1)
                for counts in _counts_vectors(len(ks.sites), m):
                    if {s.index for s, c in zip(ks.sites, counts) if c > 0 and s.index in type1} != set(used):
                        continue
                    direct = direct + q_power(_direct_min_weight(ks, counts))
                if m < len(used):
                    closed = LaurentPoly.zero(1)
                else:
                    closed = q_power(base + s1 + m - len(used)) * qbinom_ext(
                        m - 1 + len(sets.neutral) + sets.n_type0, m - len(used))
                h.record(direct == closed, f"S={label} S1={used} m={m}")

        for m in range(max_m + 1):
            direct = LaurentPoly.zero(1)
            for counts in _counts_vectors(len(ks.sites), m):
                direct = direct + q_power(_direct_min_weight(ks, counts))
            closed = LaurentPoly.zero(1)
            t = ks.t
            for kvec in product(*(range(len(sets.type1[u]) + 1) for u in range(1, t + 1))):
                ksum = sum(kvec)
                if ksum > m:
                    continue
                exponent = base + m - ksum
                for u in range(1, t + 1):
                    tail = sum(len(sets.type0[v]) + kvec[v - 1] for v in range(u, t + 1))
                    exponent += kvec[u - 1] * (len(sets.neutral) + u - 1 + tail)
                term = q_power(exponent) * qbinom_ext(m - 1 + len(sets.neutral) + sets.n_type0, m - ksum)
                for u in range(1, t + 1):
                    term = term * qbinom(len(sets.type1[u]), kvec[u - 1])
                closed = closed + term
            gs.record(direct == closed, f"S={label} m={m}")
    return [sigma, h, gs]


# ===== STRUCTURE OF THE DIFFERENCE CONDITIONS =====

DPP = Metric.DELTA_DOUBLE_PRIME


def _pair_label(c1: Colour, c2: Colour) -> str:
    return f"({c1}, {c2})"


def check_triangle_inequality(max_n: int = 4) -> LemmaResult:
    """delta(x, y) <= delta(x, z) + delta(z, y) over every triple of colours."""
    result = LemmaResult("triangle inequality for delta")
    for n in range(1, max_n + 1):
        found = triangle_violations(n)
        result.record_batch((n * n) ** 3, [f"n={n} {x} -> {z} -> {y}" for x, z, y in found])
    return result


def check_delta_cases(max_n: int = 4, corrupt: bool = False) -> List[LemmaResult]:
    """
    delta through its free/bound case split, the four shapes of a zero-difference pair, and
    zero differences never running both ways between distinct colours. delta does not depend
    on n, so the colours over max_n cover every smaller n.

    With corrupt set, repeated free colours are dropped from the zero shapes.
    """
    cases = LemmaResult("delta by free and bound cases")
    zeros = LemmaResult("shapes of a zero-difference pair")
    one_way = LemmaResult("zero differences run one way")
    for c1, c2 in product(all_colours(max_n), repeat=2):
        value = delta(c1, c2)
        label = _pair_label(c1, c2)
        cases.record(delta_by_cases(c1, c2) == value, label)
        shape = zero_pair_case(c1, c2)
        if corrupt and shape == 1:
            shape = None
        zeros.record((shape is not None) == (value == 0), label)
        if c1 != c2 and value == 0:
            one_way.record(delta(c2, c1) >= 1, label)
    return [cases, zeros, one_way]


def check_zero_runs(max_n: int = 4) -> List[LemmaResult]:
    """Every run of equal parts has one of the six shapes; free colours go into bound runs where the shape says."""
    shapes = LemmaResult("shapes of a run of equal parts")
    insertions = LemmaResult("free colours inside a run of bound colours")
    for run in zero_runs(max_n, max_n + 2):
        label = ",".join(map(str, run))
        shape = zero_run_shape(run)
        shapes.record(shape is not None, label)
        if shape is not None and shape.startswith("2"):
            insertions.record(zero_run_insertions(run, max_n) == predicted_zero_run_insertions(run), label)
    return [shapes, insertions]


def check_step_insertions(max_n: int = 4, max_p: int = 3) -> LemmaResult:
    """
    Free colours between (p+1)_{c1} and p_{c2} for bound c1, c2, one or two copies, against
    the index inequalities. When c1 sits above the diagonal and c2 below it, one free colour
    at each size fits at once.
    """
    result = LemmaResult("free colours across a step of one")
    for c1, c2 in product(bound_colours(max_n), repeat=2):
        predicted = predicted_step_insertions(c1, c2)
        for p in range(1, max_p + 1):
            for copies in (1, 2):
                result.record(step_insertions(c1, c2, max_n, p, copies) == predicted,
                              f"{_pair_label(c1, c2)} p={p} copies={copies}")
            upper = [f for lift, f in predicted if lift == 1]
            lower = [f for lift, f in predicted if lift == 0]
            for f_up, f_low in product(upper, lower):
                parts = [(p + 1, c1), (p + 1, f_up), (p, f_low), (p, c2)]
                result.record(differences_hold(parts), f"{_pair_label(c1, c2)} p={p} both {f_up} {f_low}")
    return result


def check_insertion_types(max_n: int = 4) -> List[LemmaResult]:
    """
    Inserting a free colour into a primary pair changes nothing under delta and delta''.
    Secondary insertions change delta by 0 or 1 as their type says, delta'' by the other
    value, and a left and right insertion together add up. delta'' agrees with delta between
    free colours.
    """
    primary = LemmaResult("insertion into a primary pair")
    secondary = LemmaResult("types of secondary insertions")
    together = LemmaResult("left and right insertions together")
    flip = LemmaResult("delta'' swaps the secondary types")
    for c1, c2 in product(all_colours(max_n), repeat=2):
        label = _pair_label(c1, c2)
        if c1.is_free and c2.is_free:
            flip.record(delta_double_prime(c1, c2) == delta(c1, c2), f"free {label}")
            continue
        if is_primary(c1, c2):
            f = Colour.free(c1.k)
            primary.record(insertion_difference(c1, f, c2) == 0 and insertion_difference(c1, f, c2, DPP) == 0,
                           label)
            continue
        if c1.k == c2.i:
            continue
        if c2.is_bound:
            f = Colour.free(c2.i)
            d = insertion_difference(c1, f, c2)
            secondary.record(d == left_insertion_type(c1, c2) and d in (0, 1), f"left {label}")
            flip.record(insertion_difference(c1, f, c2, DPP) == 1 - d, f"left {label}")
        if c1.is_bound:
            f = Colour.free(c1.k)
            d = insertion_difference(c1, f, c2)
            secondary.record(d == right_insertion_type(c1, c2) and d in (0, 1), f"right {label}")
            flip.record(insertion_difference(c1, f, c2, DPP) == 1 - d, f"right {label}")
        if c1.is_bound and c2.is_bound:
            together.record(double_insertion_difference(c1, c2)
                            == left_insertion_type(c1, c2) + right_insertion_type(c1, c2), label)
    return [primary, secondary, together, flip]


def check_site_differences(max_n: int = 4, max_length: int = 3) -> LemmaResult:
    """Each site of a reduced kernel changes delta and delta'' by what its class says, ends included."""
    result = LemmaResult("site classes under delta and delta''")
    for seq in reduced_sequences(max_n, max_length):
        ks = kernel_structure(seq)
        for site in ks.sites:
            for metric, expected in SITE_DIFFERENCES.items():
                result.record(site_difference(ks, site, metric) == expected[site.site_class],
                              f"S={','.join(map(str, seq))} site={site.index} {metric.value}")
    return result


def structural_suite(max_n: int = 4, corrupt: bool = False) -> LemmaReport:
    """
    Exhaustive checks of the combinatorics of delta for every n up to max_n.

    Args:
        max_n: Largest number of a/b indices
        corrupt: Break one classification to exercise the failure path

    Returns:
        LemmaReport: one result per statement
    """
    results = ([check_triangle_inequality(max_n)] + check_delta_cases(max_n, corrupt)
               + check_zero_runs(max_n) + [check_step_insertions(max_n)]
               + check_insertion_types(max_n) + [check_site_differences(max_n)])
    for r in results:
        logger.debug("%s: %d cases, %d failed", r.name, r.cases, r.failed)
    return LemmaReport(results)


def qbinom_lemma_suite(light: bool = False) -> LemmaReport:
    """
    Run every identity over its parameter grid.

    Args:
        light: Use reduced grids (for quick runs and the test suite)

    Returns:
        LemmaReport: one result per identity
    """
    if light:
        results = [
            check_box_decomposition(max_s=3, max_m=3, order=12),
            check_lattice_paths(max_ab=3),
            check_binomial_convolution(max_abc=4),
            check_box_splitting(max_t=2, max_l=2, max_m=4),
            check_g_reflection(max_v=3),
            check_g_expansion(max_t=2, max_m=3),
            check_min_weight_formula(n=2, max_length=3, max_count=2),
        ] + check_gs_machinery(n=2, max_length=3, max_m=3)
    else:
        results = [
            check_box_decomposition(),
            check_lattice_paths(),
            check_binomial_convolution(),
            check_box_splitting(),
            check_g_reflection(),
            check_g_expansion(),
            check_min_weight_formula(n=4, max_length=4, max_count=3, max_total=3, sample=100),
        ] + check_gs_machinery()
    report = LemmaReport(results)
    for r in results:
        logger.debug("%s: %d cases, %d failed", r.name, r.cases, r.failed)
    return report
