"""
verifier.py
Claim registry and verification runs: each claim compares an enumerated side with a
series side (or two series forms) coefficient by coefficient and produces a report.
"""

import logging
import os
import time
from collections import defaultdict
from dataclasses import dataclass, field, replace
from datetime import datetime
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from dotenv import load_dotenv

from bijection import PartitionPair, conservation_summary, phi, phi_inverse
from colour import (Colour, DeltaGammaTable, PartitionsError, Variant, build_delta_matrix,
                    build_variant_matrix, builtin_delta_gamma, colour, count_valid_tables,
                    validate_delta_gamma)
from frobenius import enumerate_frobenius, frob_kernel, frob_statistics
from lemmas import LemmaReport, check_lattice_paths, qbinom_lemma_suite, structural_suite
from oracles import (capparelli_c_counts, capparelli_d_counts, coloured_partition_counts,
                     partition_numbers, regular_partition_counts)
from partition import (ColouredPartition, GfKind, MembershipSpec, count_by_weight, enumerate_partitions,
                       generating_series, is_member, kernel_gf_formula, kernel_of, minimal_partition,
                       partition_statistics)
from qseries import (Dilation, LaurentPoly, QSeries, constant_term_product, euler, inv_euler,
                     inv_pochhammer, main2_jacobi_form, main2_product_form, pochhammer, series_sum,
                     with_nvars)
from sequence import kernel_structure, reduced_sequences, sample_sequences

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

REPORT_SCHEMA_VERSION = 1
STATUS_PASS = "pass"
STATUS_FAIL = "fail"


class BudgetError(PartitionsError):
    """Raised when a claim's estimated enumeration cost exceeds the configured budget."""

    def __init__(self, claim: str, estimate: int, budget: int):
        super().__init__(f"claim {claim} needs about {estimate:,} enumeration nodes, "
                         f"over the budget of {budget:,} (use --force to run anyway)")
        self.claim = claim
        self.estimate = estimate
        self.budget = budget


@dataclass(frozen=True)
class Settings:
    default_order: int = 20
    budget: int = 100_000_000
    db_path: str = "partitions.db"
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            default_order=int(os.getenv("PARTITIONS_DEFAULT_ORDER", "20")),
            budget=int(os.getenv("PARTITIONS_BUDGET", "100000000")),
            db_path=os.getenv("PARTITIONS_DB_PATH", "partitions.db"),
            log_level=os.getenv("PARTITIONS_LOG_LEVEL", "WARNING").upper(),
        )


@dataclass
class VerificationReport:
    claim: str
    parameters: Dict
    status: str
    checked_terms: int
    mismatch: Optional[Dict]
    wall_time: float
    details: Dict = field(default_factory=dict)
    created_at: str = field(default_factory=lambda: datetime.now().isoformat(timespec="seconds"))
    schema_version: int = REPORT_SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return self.status == STATUS_PASS

    def to_dict(self) -> Dict:
        return {
            "schema_version": self.schema_version,
            "claim": self.claim,
            "parameters": self.parameters,
            "status": self.status,
            "checked_terms": self.checked_terms,
            "mismatch": self.mismatch,
            "wall_time": round(self.wall_time, 3),
            "details": self.details,
            "created_at": self.created_at,
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "VerificationReport":
        return cls(
            claim=data["claim"],
            parameters=data.get("parameters", {}),
            status=data["status"],
            checked_terms=int(data.get("checked_terms", 0)),
            mismatch=data.get("mismatch"),
            wall_time=float(data.get("wall_time", 0.0)),
            details=data.get("details", {}),
            created_at=data.get("created_at", ""),
            schema_version=int(data.get("schema_version", REPORT_SCHEMA_VERSION)),
        )

    def to_text(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
        lines = [f"{self.claim} [{params}]: {self.status.upper()}",
                 f"  checked terms: {self.checked_terms}",
                 f"  wall time: {self.wall_time:.3f}s"]
        if self.mismatch:
            lines.append("  first mismatch: " + ", ".join(f"{k}={v}" for k, v in self.mismatch.items()))
        return "\n".join(lines)


# ===== CLAIM PLUMBING =====

@dataclass(frozen=True)
class ClaimParams:
    n: int
    order: int
    tables: Tuple[DeltaGammaTable, ...] = ()
    corrupt: bool = False
    light: bool = False
    kernel_length: int = 3
    kernel_extra: int = 8
    kernel_sample: int = 4
    kernel_seed: int = 0
    grid: Tuple[Tuple[int, int], ...] = ()


@dataclass
class ClaimOutcome:
    checked_terms: int
    mismatch: Optional[Dict] = None
    details: Dict = field(default_factory=dict)


@dataclass(frozen=True)
class Claim:
    claim_id: str
    description: str
    run: Callable[[ClaimParams], ClaimOutcome]
    cost: Callable[[ClaimParams], int]
    default_n: int = 2
    default_order: Optional[int] = None
    allowed_n: Optional[Tuple[int, ...]] = None
    uses_table: bool = False
    # (n, order) points run together when none of n, order or a table is given
    default_grid: Tuple[Tuple[int, int], ...] = ()


def estimate_nodes(n: int, weight: int, families: int = 1) -> int:
    """
    Rough node count for enumerating an n^2-coloured family up to weight.

    Uses the coefficients of 1/(q;q)^(n+1) times the alphabet size; it tracks the
    growth of the families well enough to refuse runs that would not finish.
    """
    counts = coloured_partition_counts(n + 1, max(weight, 0))
    return families * n * n * sum(counts)


def _corrupt_series(series: QSeries, enabled: bool) -> QSeries:
    """Add 1 to the coefficient of q^order, the last one the comparison reads."""
    if not enabled:
        return series
    bump = QSeries({series.order: LaurentPoly.constant(1, series.nvars)}, series.order, series.nvars)
    return series + bump


def _corrupt_counts(counts: Sequence[int], enabled: bool) -> List[int]:
    counts = list(counts)
    if enabled and counts:
        counts[-1] += 1
    return counts


def _compare_series(expected: QSeries, actual: QSeries, through: int) -> ClaimOutcome:
    mismatch = expected.first_mismatch(actual, through)
    return ClaimOutcome(checked_terms=through + 1, mismatch=mismatch)


def _compare_counts(expected: Sequence[int], actual: Sequence[int]) -> ClaimOutcome:
    for m, (e, a) in enumerate(zip(expected, actual)):
        if e != a:
            return ClaimOutcome(len(expected), {"q": m, "monomial": [], "expected": e, "actual": a})
    if len(expected) != len(actual):
        return ClaimOutcome(len(expected), {"q": min(len(expected), len(actual)), "monomial": [],
                                            "expected": len(expected), "actual": len(actual)})
    return ClaimOutcome(checked_terms=len(expected))


def _merge(outcomes: Sequence[Tuple[str, ClaimOutcome]]) -> ClaimOutcome:
    """Sum checked terms; the first failing sub-check supplies the mismatch."""
    total = ClaimOutcome(checked_terms=0)
    for label, outcome in outcomes:
        total.checked_terms += outcome.checked_terms
        total.details[label] = STATUS_FAIL if outcome.mismatch else STATUS_PASS
        total.details.update({f"{label}.{k}": v for k, v in outcome.details.items()})
        if outcome.mismatch and total.mismatch is None:
            total.mismatch = dict(outcome.mismatch, check=label)
    return total


def _member_series(spec: MembershipSpec, order: int) -> QSeries:
    n = spec.n
    return generating_series(enumerate_partitions(spec, order), order, n,
                             lambda p: (p.weight, partition_statistics(p, n).monomial()))


def _colour_count_series(spec: MembershipSpec, order: int, tracked: Sequence[Colour]) -> QSeries:
    """Series in one variable per tracked colour, counting parts of that colour."""
    def term(p: ColouredPartition):
        exps = [sum(1 for part in p if part.colour == c) for c in tracked]
        return p.weight, LaurentPoly.monomial(exps)
    return generating_series(enumerate_partitions(spec, order), order, len(tracked), term)


def _tables(params: ClaimParams) -> Tuple[DeltaGammaTable, ...]:
    if params.tables:
        return params.tables
    tables = (builtin_delta_gamma(Variant.MEURMAN_PRIMC, params.n),
              builtin_delta_gamma(Variant.ALT, params.n))
    return tables[:1] if params.n == 2 else tables


# ===== CLAIMS =====

def _sampled_kernels(params: ClaimParams, top: int) -> List[Tuple[Colour, ...]]:
    """Seeded sample of kernels one colour longer than the exhaustive ones, kept within weight top."""
    length = params.kernel_length + 1
    pool = [s for s in reduced_sequences(params.n, length)
            if len(s) == length and minimal_partition(s).weight + params.kernel_extra <= top]
    picked = sample_sequences(pool, params.kernel_sample, params.kernel_seed)
    logger.debug("sampled %d of %d kernels of length %d", len(picked), len(pool), length)
    return picked


def _claim_primc_kernel(params: ClaimParams) -> ClaimOutcome:
    n = params.n
    seqs = [s for s in reduced_sequences(n, params.kernel_length) if s]
    top = max(minimal_partition(s).weight for s in seqs) + params.kernel_extra
    sampled = _sampled_kernels(params, top)
    seqs += sampled
    bounds = {s: minimal_partition(s).weight + params.kernel_extra for s in seqs}
    p_counts: Dict[Tuple, List[int]] = defaultdict(lambda: [0] * (top + 1))
    f_counts: Dict[Tuple, List[int]] = defaultdict(lambda: [0] * (top + 1))
    for p in enumerate_partitions(MembershipSpec.pn(n), top):
        p_counts[kernel_of(p)][p.weight] += 1
    for f in enumerate_frobenius(n, top):
        f_counts[frob_kernel(f)][f.weight] += 1

    outcomes = []
    for s in seqs:
        bound = bounds[s]
        ks = kernel_structure(s)
        label = ",".join(str(c) for c in s)
        delta_side = series_sum([kernel_gf_formula(ks, m, GfKind.DELTA, bound) for m in range(bound + 1)], bound)
        frob_side = series_sum([kernel_gf_formula(ks, m, GfKind.FROBENIUS, bound) for m in range(bound + 1)], bound)
        enumerated_p = QSeries.from_counts(_corrupt_counts(p_counts[s][:bound + 1], params.corrupt), bound)
        enumerated_f = QSeries.from_counts(f_counts[s][:bound + 1], bound)
        outcomes.append((f"{label}:partitions", _compare_series(delta_side, enumerated_p, bound)))
        outcomes.append((f"{label}:frobenius", _compare_series(frob_side, enumerated_f, bound)))
        outcomes.append((f"{label}:closed-forms", _compare_series(delta_side, frob_side, bound)))
    merged = _merge(outcomes)
    merged.details = {"kernels": len(seqs), "max_weight": top,
                      "sampled": [",".join(str(c) for c in s) for s in sampled],
                      "failed": [k for k, v in merged.details.items() if v == STATUS_FAIL]}
    return merged


def _claim_primc(params: ClaimParams) -> ClaimOutcome:
    n, order = params.n, params.order
    product_side = _corrupt_series(constant_term_product(n, order), params.corrupt)
    partitions = _member_series(MembershipSpec.pn(n), order)
    frobenius = generating_series(enumerate_frobenius(n, order), order, n,
                                  lambda f: (f.weight, frob_statistics(f, n).monomial()))
    return _merge([("partitions", _compare_series(product_side, partitions, order)),
                   ("frobenius", _compare_series(product_side, frobenius, order))])


def _claim_capparelli(params: ClaimParams) -> ClaimOutcome:
    n, order = params.n, params.order
    product_side = with_nvars(euler(order), n) * constant_term_product(n, order)
    product_side = _corrupt_series(product_side, params.corrupt)
    outcomes = []
    for table in _tables(params):
        enumerated = _member_series(MembershipSpec.cn(table), order)
        outcomes.append((table.name, _compare_series(product_side, enumerated, order)))
    return _merge(outcomes)


def _claim_main2(params: ClaimParams) -> ClaimOutcome:
    n, order = params.n, params.order
    ct = _corrupt_series(constant_term_product(n, order), params.corrupt)
    return _merge([("jacobi-form", _compare_series(ct, main2_jacobi_form(n, order), order)),
                   ("product-form", _compare_series(ct, main2_product_form(n, order), order))])


def _claim_primc_spec(params: ClaimParams) -> ClaimOutcome:
    n, order = params.n, params.order
    counts = count_by_weight(MembershipSpec.pn(n), order, Dilation.principal(n))
    return _compare_counts(_corrupt_counts(partition_numbers(order), params.corrupt), counts)


def _claim_cap_spec(params: ClaimParams) -> ClaimOutcome:
    n, order = params.n, params.order
    expected = _corrupt_counts(regular_partition_counts(n, order), params.corrupt)
    outcomes = []
    for table in _tables(params):
        counts = count_by_weight(MembershipSpec.cn(table), order, Dilation.principal(n))
        outcomes.append((table.name, _compare_counts(expected, counts)))
    return _merge(outcomes)


# rows and columns in the printed order; entry (x, y) is the least difference x then y
PRINTED_PRIMC_MATRICES: Dict[int, Tuple[List[Tuple[int, int]], List[List[int]]]] = {
    2: ([(1, 0), (0, 0), (1, 1), (0, 1)],
        [[2, 1, 2, 2],
         [1, 0, 1, 1],
         [0, 1, 0, 2],
         [0, 1, 0, 2]]),
    3: ([(2, 0), (2, 1), (1, 0), (0, 0), (2, 2), (1, 1), (0, 1), (1, 2), (0, 2)],
        [[2, 2, 2, 1, 2, 2, 2, 2, 2],
         [1, 2, 1, 1, 2, 1, 2, 2, 2],
         [1, 1, 2, 1, 1, 2, 2, 2, 2],
         [1, 1, 1, 0, 1, 1, 1, 1, 1],
         [0, 0, 1, 1, 0, 1, 1, 2, 2],
         [0, 1, 0, 1, 1, 0, 2, 1, 2],
         [0, 1, 0, 1, 1, 0, 2, 1, 2],
         [0, 0, 1, 1, 0, 1, 1, 2, 2],
         [0, 0, 0, 1, 0, 0, 1, 1, 2]]),
}

PRINTED_CAPPARELLI_MATRIX = ([(1, 0), (1, 1), (0, 1)],
                             [[2, 2, 2],
                              [1, 1, 2],
                              [0, 1, 2]])


def _compare_matrix(printed: Tuple[List[Tuple[int, int]], List[List[int]]],
                    colours: List[Colour], matrix) -> ClaimOutcome:
    names, rows = printed
    position = {c: idx for idx, c in enumerate(colours)}
    checked = 0
    for r, (ri, rk) in enumerate(names):
        for col, (ci, ck) in enumerate(names):
            actual = int(matrix[position[colour(ri, rk)], position[colour(ci, ck)]])
            checked += 1
            if actual != rows[r][col]:
                return ClaimOutcome(checked, {"q": None, "monomial": [str(colour(ri, rk)), str(colour(ci, ck))],
                                              "expected": rows[r][col], "actual": actual})
    return ClaimOutcome(checked)


def _claim_primc_dilated(params: ClaimParams) -> ClaimOutcome:
    n = params.n
    colours, matrix = build_delta_matrix(n)
    return _merge([("matrix", _compare_matrix(PRINTED_PRIMC_MATRICES[n], colours, matrix)),
                   ("dilated-counts", _claim_primc_spec(params))])


def _claim_primc_nondilated(params: ClaimParams) -> ClaimOutcome:
    order = params.order
    a, c, d = (LaurentPoly.variable(v, 3) for v in range(3))
    product_side = (pochhammer(-a, 1, order, 2) * pochhammer(-d, 1, order, 2)
                    * with_nvars(inv_euler(order), 3) * inv_pochhammer(c, 1, order, 2))
    product_side = _corrupt_series(product_side, params.corrupt)
    enumerated = _colour_count_series(MembershipSpec.pn(2), order,
                                      [colour(1, 0), colour(1, 1), colour(0, 1)])
    return _compare_series(product_side, enumerated, order)


def _claim_capparelli_aag(params: ClaimParams) -> ClaimOutcome:
    order = params.order
    a, d = LaurentPoly.variable(0, 2), LaurentPoly.variable(1, 2)
    product_side = (pochhammer(LaurentPoly.constant(-1, 2), 1, order)
                    * pochhammer(-a, 1, order, 2) * pochhammer(-d, 1, order, 2))
    product_side = _corrupt_series(product_side, params.corrupt)
    table = builtin_delta_gamma(Variant.MEURMAN_PRIMC, 2)
    enumerated = _colour_count_series(MembershipSpec.cn(table), order, [colour(1, 0), colour(0, 1)])
    return _compare_series(product_side, enumerated, order)


def _claim_capparelli_classical(params: ClaimParams) -> ClaimOutcome:
    order = params.order
    table = builtin_delta_gamma(Variant.MEURMAN_PRIMC, 2)
    dilated = count_by_weight(MembershipSpec.cn(table), order, Dilation.capparelli())
    c_counts = _corrupt_counts(capparelli_c_counts(order), params.corrupt)
    outcomes = [("dilated-vs-difference", _compare_counts(c_counts, dilated)),
                ("difference-vs-congruence", _compare_counts(c_counts, capparelli_d_counts(order)))]
    variant_colours, variant_matrix = build_variant_matrix(Variant.MEURMAN_PRIMC, 2)
    outcomes.append(("matrix", _compare_matrix(PRINTED_CAPPARELLI_MATRIX, variant_colours, variant_matrix)))
    return _merge(outcomes)


def _report_outcome(report: LemmaReport) -> ClaimOutcome:
    mismatch = None
    if not report.ok:
        failure = report.first_failure()
        mismatch = {"q": None, "monomial": [], "expected": "identity", "actual": failure.get("case"),
                    "lemma": failure.get("lemma")}
    details = {r.name: STATUS_PASS if r.ok else STATUS_FAIL for r in report.results}
    return ClaimOutcome(report.cases, mismatch, details)


def _claim_lemmas(params: ClaimParams) -> ClaimOutcome:
    report = qbinom_lemma_suite(light=params.light)
    if params.corrupt:
        report.results.append(check_lattice_paths(max_ab=2, corrupt=True))
    return _report_outcome(report)


def _claim_structural(params: ClaimParams) -> ClaimOutcome:
    max_n = min(params.n, 3) if params.light else params.n
    return _report_outcome(structural_suite(max_n, corrupt=params.corrupt))


def _claim_bijection(params: ClaimParams) -> ClaimOutcome:
    outcomes = []
    for n, order in params.grid or ((params.n, params.order),):
        point = replace(params, n=n, order=order)
        for table in _tables(point):
            label = f"n={n}:{table.name}" if params.grid else table.name
            outcomes.append((label, _bijection_round_trips(table, order, params.corrupt)))
    return _merge(outcomes)


def _bijection_round_trips(table: DeltaGammaTable, order: int, corrupt: bool) -> ClaimOutcome:
    cn = MembershipSpec.cn(table)
    images: Dict[Tuple, ColouredPartition] = {}
    checked = 0
    for lam in enumerate_partitions(MembershipSpec.pn(table.n), order):
        pair = phi(lam, table)
        checked += 1
        key = (pair.mu, pair.nu)
        if not is_member(pair.mu, cn) or key in images:
            return ClaimOutcome(checked, {"q": lam.weight, "monomial": [], "expected": "injective image",
                                          "actual": str(lam)})
        images[key] = lam
        if not conservation_summary(lam, pair)["preserved"] or phi_inverse(pair, table) != lam:
            return ClaimOutcome(checked, {"q": lam.weight, "monomial": [], "expected": str(lam),
                                          "actual": str(pair)})

    members = list(enumerate_partitions(cn, order))
    classical = list(enumerate_partitions(MembershipSpec.p0(), order))
    pairs = 0
    for mu in members:
        for nu in classical:
            if mu.weight + nu.weight > order:
                continue
            pairs += 1
            checked += 1
            if (mu, nu) not in images:
                return ClaimOutcome(checked, {"q": mu.weight + nu.weight, "monomial": [],
                                              "expected": "preimage", "actual": str(PartitionPair(mu, nu))})
    expected_pairs = pairs + (1 if corrupt else 0)
    if expected_pairs != len(images):
        return ClaimOutcome(checked, {"q": order, "monomial": [], "expected": expected_pairs,
                                      "actual": len(images)})
    return ClaimOutcome(checked, details={"pairs": pairs})


def _claim_pn_fn_bound(params: ClaimParams) -> ClaimOutcome:
    n, order = params.n, params.order
    partitions = generating_series(enumerate_partitions(MembershipSpec.pn(n), order), order, 2 * n,
                                   lambda p: (p.weight, partition_statistics(p, n).bound_monomial()))
    frobenius = generating_series(enumerate_frobenius(n, order), order, 2 * n,
                                  lambda f: (f.weight, frob_statistics(f, n).bound_monomial()))
    return _compare_series(_corrupt_series(frobenius, params.corrupt), partitions, order)


def _claim_table_conditions(params: ClaimParams) -> ClaimOutcome:
    checked = 0
    for n in range(2, max(params.n, 5) + 1):
        for variant in Variant:
            checked += 1
            violations = validate_delta_gamma(builtin_delta_gamma(variant, n))
            if violations:
                return ClaimOutcome(checked, {"q": None, "monomial": [], "expected": "no violations",
                                              "actual": str(violations[0]), "n": n, "variant": variant.value})
    checked += 1
    count = count_valid_tables(2) + (1 if params.corrupt else 0)
    if count != 1:
        return ClaimOutcome(checked, {"q": None, "monomial": [], "expected": 1, "actual": count})
    return ClaimOutcome(checked)


def _family_cost(families: int = 1) -> Callable[[ClaimParams], int]:
    def cost(p: ClaimParams) -> int:
        return sum(estimate_nodes(n, order, families) for n, order in p.grid or ((p.n, p.order),))
    return cost


def _kernel_cost(params: ClaimParams) -> int:
    seqs = [s for s in reduced_sequences(params.n, params.kernel_length) if s]
    top = max(minimal_partition(s).weight for s in seqs) + params.kernel_extra
    return estimate_nodes(params.n, top, 2)


CLAIMS: Dict[str, Claim] = {c.claim_id: c for c in [
    Claim("primc-kernel", "kernel-level equality of P_n, F_n and both closed forms",
          _claim_primc_kernel, _kernel_cost, default_n=3),
    Claim("primc", "P_n and F_n series equal the constant-term product",
          _claim_primc, _family_cost(2), default_n=2, default_order=14),
    Claim("capparelli", "C_n(delta, gamma) series equals (q;q)_inf times the constant-term product",
          _claim_capparelli, _family_cost(2), default_n=2, default_order=12, uses_table=True),
    Claim("main2", "constant-term, theta-sum and product-sum forms agree",
          _claim_main2, lambda p: 0, default_n=3, default_order=15),
    Claim("primc-spec", "principal specialisation of P_n counts unrestricted partitions",
          _claim_primc_spec, _family_cost(), default_n=3),
    Claim("cap-spec", "principal specialisation of C_n(delta, gamma) counts n-regular partitions",
          _claim_cap_spec, _family_cost(2), default_n=3, uses_table=True),
    Claim("primc-nondilated", "P_2 with colours a, c, d tracked equals the four-factor product",
          _claim_primc_nondilated, _family_cost(), default_n=2, default_order=12, allowed_n=(2,)),
    Claim("capparelli-aag", "C_2 with colours a, d tracked equals the three-factor product",
          _claim_capparelli_aag, _family_cost(), default_n=2, default_order=12, allowed_n=(2,)),
    Claim("capparelli-classical", "dilated C_2 counts, C(m) and D(m) agree",
          _claim_capparelli_classical, lambda p: estimate_nodes(2, p.order // 3 + 1), default_n=2,
          default_order=40, allowed_n=(2,)),
    Claim("primc-dilated", "printed energy matrices and their dilated counts",
          _claim_primc_dilated, _family_cost(), default_n=2, default_order=15, allowed_n=(2, 3)),
    Claim("qbinom-lemmas", "q-binomial identities and minimal-weight bookkeeping",
          _claim_lemmas, lambda p: 0, default_n=3),
    Claim("structural", "triangle inequality, zero-difference shapes, insertion rules and the delta'' swap",
          _claim_structural, lambda p: 0, default_n=4),
    Claim("bijection", "round trips and conservation of the bijection",
          _claim_bijection, _family_cost(3), default_n=3, default_order=10, uses_table=True,
          default_grid=((2, 14), (3, 10))),
    Claim("pn-fn-bound", "bound-colour statistics agree between P_n and F_n",
          _claim_pn_fn_bound, _family_cost(2), default_n=2, default_order=12),
    Claim("table-conditions", "built-in delta/gamma tables satisfy both conditions",
          _claim_table_conditions, lambda p: 0, default_n=5),
]}


class ClaimVerifier:
    """
    Runs registered claims under the configured budget and wraps the outcome in a report.
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings.from_env()
        self.force = False

    def set_force(self, force: bool):
        """Run claims even when their estimate exceeds the budget."""
        self.force = force

    def resolve(self, claim_id: str, n: Optional[int] = None, order: Optional[int] = None) -> Tuple[Claim, int, int]:
        try:
            claim = CLAIMS[claim_id]
        except KeyError:
            raise PartitionsError(f"unknown claim {claim_id!r}; choose from {', '.join(sorted(CLAIMS))}") from None
        n = claim.default_n if n is None else n
        order = order if order is not None else (claim.default_order or self.settings.default_order)
        if n < 1 or order < 0:
            raise PartitionsError("n must be positive and the order non-negative")
        if claim.allowed_n and n not in claim.allowed_n:
            raise PartitionsError(f"claim {claim_id} is stated for n in {claim.allowed_n}, got n={n}")
        return claim, n, order

    def estimate(self, claim_id: str, n: Optional[int] = None, order: Optional[int] = None, **options) -> int:
        defaults_only = n is None and order is None and not options.get("tables")
        claim, n, order = self.resolve(claim_id, n, order)
        grid = claim.default_grid if defaults_only else ()
        return claim.cost(ClaimParams(n=n, order=order, grid=grid, **options))

    def run(self, claim_id: str, n: Optional[int] = None, order: Optional[int] = None,
            table: Optional[DeltaGammaTable] = None, corrupt: bool = False, light: bool = False,
            kernel_length: int = 3, kernel_extra: int = 8, kernel_sample: int = 4,
            kernel_seed: int = 0) -> VerificationReport:
        """
        Verify one claim.

        Args:
            claim_id: Key of CLAIMS
            n: Number of colour indices (claim default when None)
            order: Truncation order or weight bound (claim default, then settings)
            table: delta/gamma table for table-dependent claims (both built-ins when None)
            corrupt: Perturb one expected coefficient; the report must then fail
            light: Smaller parameter grids where a claim has them
            kernel_length, kernel_extra: Kernel-claim bounds
            kernel_sample, kernel_seed: Size and seed of the sample of kernels one colour longer

        Returns:
            VerificationReport: status pass iff every compared coefficient agreed
        """
        defaults_only = n is None and order is None and table is None
        claim, n, order = self.resolve(claim_id, n, order)
        if table is not None and table.n != n:
            raise PartitionsError(f"table is for n={table.n}, claim asked for n={n}")
        params = ClaimParams(n=n, order=order, tables=(table,) if table else (), corrupt=corrupt,
                             light=light, kernel_length=kernel_length, kernel_extra=kernel_extra,
                             kernel_sample=kernel_sample, kernel_seed=kernel_seed,
                             grid=claim.default_grid if defaults_only else ())
        estimate = claim.cost(params)
        if estimate > self.settings.budget and not self.force:
            logger.warning("refusing %s: estimate %d over budget %d", claim_id, estimate, self.settings.budget)
            raise BudgetError(claim_id, estimate, self.settings.budget)

        logger.info("verifying %s (n=%d, order=%d)", claim_id, n, order)
        start = time.perf_counter()
        outcome = claim.run(params)
        elapsed = time.perf_counter() - start
        status = STATUS_FAIL if outcome.mismatch else STATUS_PASS
        logger.info("%s finished: %s after %.2fs", claim_id, status, elapsed)

        parameters = {"n": n, "order": order}
        if claim.uses_table:
            parameters["tables"] = [t.name for t in (params.tables or _tables(params))]
        if claim_id == "primc-kernel":
            parameters.update(kernel_length=kernel_length, kernel_extra=kernel_extra,
                              kernel_sample=kernel_sample, kernel_seed=kernel_seed)
        if params.grid:
            parameters["grid"] = [list(point) for point in params.grid]
        if corrupt:
            parameters["corrupt"] = True
        return VerificationReport(claim=claim_id, parameters=parameters, status=status,
                                  checked_terms=outcome.checked_terms, mismatch=outcome.mismatch,
                                  wall_time=elapsed, details=outcome.details)


def run_claim(claim_id: str, **kwargs) -> VerificationReport:
    settings = kwargs.pop("settings", None)
    force = kwargs.pop("force", False)
    verifier = ClaimVerifier(settings)
    verifier.set_force(force)
    return verifier.run(claim_id, **kwargs)
