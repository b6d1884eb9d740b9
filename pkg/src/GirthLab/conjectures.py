"""
Girth bounds and verdicts for the Caccetta-Haggkvist (CH) and
Behzad-Chartrand-Wall (BCW) conjectures, Shen's max{ceil(n/k), 2k-2}
theorem, and the girth-doubling / girth-multiplying pipelines built on C_p x D.

All comparisons are exact integer arithmetic. The only irrational quantity,
3 * ceil((n/k) * ln((2 + sqrt 7) / 3)), is evaluated in 50-digit decimal.
"""

import hashlib
import math
import os
from dataclasses import dataclass, field
from decimal import Decimal, ROUND_CEILING, localcontext
from enum import Enum
from typing import Dict, List, Optional, Tuple

import arc_list
import products
import settings
import walks
from digraph_core import Digraph, degree_profile
from errors import PreconditionError

# Chvatal-Szemeredi style additive constants: g <= n/k + c
CS_ADDITIVE_CONSTANTS = (2500, 304, 73)

# k >= 0.3465 n forces a cycle of length at most 3
TRIANGLE_ALPHA_NUM, TRIANGLE_ALPHA_DEN = 3465, 10000

# CH is proved for these minimum out-degrees
PROVED_K_CASES = (1, 2, 3, 4, 5)

THEOREM6_PARITY_NOTE = (
    "statement omits odd girth; the girth-doubling proof needs it, so it is "
    "checked as a separate hypothesis"
)


class Verdict(Enum):
    HOLDS = "holds"
    HYPOTHESIS_UNMET = "hypothesis-unmet"
    COUNTEREXAMPLE = "counterexample"


class BoundVerdict(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    # acyclic input: no girth to compare (impossible when k >= 1)
    VACUOUS_FAIL = "vacuous-fail"


def _shen_log_decimal(n: int, k: int) -> Tuple[Decimal, Decimal]:
    with localcontext() as ctx:
        ctx.prec = 50
        log_term = ((Decimal(2) + Decimal(7).sqrt()) / Decimal(3)).ln()
        return log_term, Decimal(n) / Decimal(k) * log_term


def shen_log_coefficient() -> float:
    """3 ln((2 + sqrt 7) / 3), about 1.312."""
    log_term, _ = _shen_log_decimal(1, 1)
    return float(3 * log_term)


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    g: Optional[int]
    ch_bound: int
    shen_bound: int
    cs_bound: int
    shen_log_bound: int
    shen_log_estimate: float
    cs_additive_bounds: Dict[int, int]
    triangle_regime: bool
    shen_small_k_regime: bool
    proved_k_case: bool
    half_case: bool
    verdicts: Dict[str, BoundVerdict] = field(default_factory=dict)

    def violations(self) -> List[str]:
        return [name for name, v in self.verdicts.items() if v is not BoundVerdict.HOLDS]


@dataclass(frozen=True)
class Theorem6Flags:
    girth_ge_k: bool
    girth_odd: bool
    no_short_even_cycle: bool
    short_even_cycle: Optional[walks.Cycle] = None

    @property
    def all_hold(self) -> bool:
        return self.girth_ge_k and self.girth_odd and self.no_short_even_cycle


@dataclass(frozen=True)
class Corollary7Flags:
    p: int
    girth_ge_2k_over_p: bool
    no_walk_at: Tuple[Tuple[int, bool], ...]

    @property
    def no_forbidden_walks(self) -> bool:
        return not any(present for _, present in self.no_walk_at)

    @property
    def all_hold(self) -> bool:
        return self.girth_ge_2k_over_p and self.no_forbidden_walks


@dataclass(frozen=True)
class AmplifiedCheck:
    """C_p x D measured against what the proof claims about it."""
    p: int
    order: int
    min_out: int
    girth: Optional[int]
    expected_girth: int
    order_ok: bool
    min_out_ok: bool
    girth_ok: bool
    shen_bound_on_product: int
    ceiling_chain_ok: bool

    @property
    def identity_holds(self) -> bool:
        return self.order_ok and self.min_out_ok and self.girth_ok

    @property
    def shen_on_product_ok(self) -> bool:
        """g(C_p x D) <= max{ceil(pn/k), 2k-2}."""
        return self.girth is not None and self.girth <= self.shen_bound_on_product

    @property
    def all_checks_hold(self) -> bool:
        return self.identity_holds and self.ceiling_chain_ok and self.shen_on_product_ok


@dataclass(frozen=True)
class HypothesisReport:
    theorem6: Optional[Theorem6Flags] = None
    corollary7: Optional[Corollary7Flags] = None
    amplified: Optional[AmplifiedCheck] = None
    notes: Tuple[str, ...] = ()


@dataclass(frozen=True)
class CheckOutcome:
    mode: str
    verdict: Verdict
    bounds: BoundReport
    hypotheses: Optional[HypothesisReport] = None
    witness_path: Optional[str] = None
    # cor8 only: the plain BCW comparison, reported whatever the pipeline says
    bcw_verdict: Optional[Verdict] = None


def ch_bound(n: int, k: int) -> int:
    """ceil(n/k)."""
    if k < 1:
        raise PreconditionError(f"CH bound needs k >= 1, got k={k}")
    return -(-n // k)


def counterexample_order_cap(k: int) -> int:
    """Any CH counterexample with minimum out-degree k has n <= 2k^2 - 3k."""
    if k < 2:
        raise PreconditionError(f"order cap needs k >= 2, got k={k}")
    return 2 * k * k - 3 * k


def known_bounds(n: int, k: int, girth: Optional[walks.GirthResult] = None) -> BoundReport:
    """
    Evaluate every closed-form girth bound for order n and minimum out-degree k.

    Args:
        n: order
        k: minimum out-degree, at least 1
        girth: when given, each bound also gets a holds/fails verdict

    Returns:
        BoundReport
    """
    ch = ch_bound(n, k)
    shen = max(ch, 2 * k - 2)
    cs = -(-2 * n // (k + 1))

    log_term, x = _shen_log_decimal(n, k)
    shen_log = 3 * int(x.to_integral_value(rounding=ROUND_CEILING))
    x_float = n / k * float(log_term)
    nearest = round(x_float)
    if nearest and abs(x_float - nearest) <= math.ulp(x_float):
        settings.debug(
            f"shen log bound n={n} k={k}: float value {x_float!r} within one ulp of "
            f"{nearest}, decimal evaluation decided ceil={shen_log // 3}"
        )

    triangle = TRIANGLE_ALPHA_DEN * k >= TRIANGLE_ALPHA_NUM * n
    verdicts: Dict[str, BoundVerdict] = {}
    g = None
    additive = {c: n // k + c for c in CS_ADDITIVE_CONSTANTS}
    if girth is not None:
        g = girth.value
        named = {"ch": ch, "shen": shen, "cs": cs, "shen_log": shen_log}
        named.update({f"cs_additive_{c}": b for c, b in additive.items()})
        if triangle:
            named["triangle"] = 3
        for name, bound in named.items():
            if g is None:
                verdicts[name] = BoundVerdict.VACUOUS_FAIL
            else:
                verdicts[name] = BoundVerdict.HOLDS if g <= bound else BoundVerdict.FAILS

    return BoundReport(
        n=n,
        k=k,
        g=g,
        ch_bound=ch,
        shen_bound=shen,
        cs_bound=cs,
        shen_log_bound=shen_log,
        shen_log_estimate=float(3 * x),
        cs_additive_bounds=additive,
        triangle_regime=triangle,
        shen_small_k_regime=2 * k * k <= n,
        proved_k_case=k in PROVED_K_CASES,
        half_case=2 * k >= n,
        verdicts=verdicts,
    )


def write_witness(D: Digraph, kind: str, report: BoundReport, directory: Optional[str] = None) -> str:
    """Save a counterexample as an arc-list file with its parameters in the header."""
    directory = directory or settings.witness_dir()
    os.makedirs(directory, exist_ok=True)
    body = arc_list.serialize(D)
    digest = hashlib.sha1(body.encode()).hexdigest()[:12]
    path = os.path.join(directory, f"counterexample_{kind}_n{D.n}_{digest}.txt")
    comments = [
        f"kind={kind}",
        f"n={report.n} k={report.k} g={report.g}",
        f"ch_bound={report.ch_bound} shen_bound={report.shen_bound} "
        f"cs_bound={report.cs_bound} shen_log_bound={report.shen_log_bound}",
    ]
    arc_list.write_file(path, D, comments)
    print(f"Counterexample witness written to {path}")
    return path


def save_counterexample(D: Digraph, kind: str, directory: Optional[str] = None) -> str:
    """
    Measure D and write it with write_witness. For callers that found a
    failure in bulk (sweeps, samples, censuses) and hold only the digraph.

    Returns:
        path of the witness file
    """
    k = degree_profile(D).min_out
    if k < 1:
        raise PreconditionError("a witness needs minimum out-degree >= 1")
    return write_witness(D, kind, known_bounds(D.n, k, walks.girth(D)), directory)


def _min_out_or_fail(D: Digraph) -> int:
    k = degree_profile(D).min_out
    if k < 1:
        raise PreconditionError("minimum out-degree is 0; the conjectures need k >= 1")
    return k


def check_ch(D: Digraph, witness_directory: Optional[str] = None) -> CheckOutcome:
    k = _min_out_or_fail(D)
    girth = walks.girth(D)
    report = known_bounds(D.n, k, girth)
    if report.verdicts["ch"] is BoundVerdict.HOLDS:
        return CheckOutcome("ch", Verdict.HOLDS, report)
    path = write_witness(D, "ch", report, witness_directory)
    return CheckOutcome("ch", Verdict.COUNTEREXAMPLE, report, witness_path=path)


def _regular_degree_or_fail(D: Digraph) -> int:
    profile = degree_profile(D)
    if profile.is_d_regular is None or profile.is_d_regular < 1:
        outs, ins = D.out_degrees(), D.in_degrees()
        raise PreconditionError(
            f"digraph is not d-regular with d >= 1: out-degrees {min(outs)}..{max(outs)}, "
            f"in-degrees {min(ins)}..{max(ins)}"
        )
    return profile.is_d_regular


def check_bcw(D: Digraph, witness_directory: Optional[str] = None) -> CheckOutcome:
    d = _regular_degree_or_fail(D)
    report = known_bounds(D.n, d, walks.girth(D))
    if report.verdicts["ch"] is BoundVerdict.HOLDS:
        return CheckOutcome("bcw", Verdict.HOLDS, report)
    path = write_witness(D, "bcw", report, witness_directory)
    return CheckOutcome("bcw", Verdict.COUNTEREXAMPLE, report, witness_path=path)


def _amplify(D: Digraph, p: int, n: int, k: int, g: int) -> AmplifiedCheck:
    order, min_out, amp_girth = products.amplified_parameters(D, p)
    # p * ceil(n/k) >= ceil(pn/k) >= g(C_p x D) = pg
    chain = p * ch_bound(n, k) >= ch_bound(p * n, k) >= (amp_girth.value or 0)
    return AmplifiedCheck(
        p=p,
        order=order,
        min_out=min_out,
        girth=amp_girth.value,
        expected_girth=p * g,
        order_ok=order == p * n,
        min_out_ok=min_out == k,
        girth_ok=amp_girth.value == p * g,
        shen_bound_on_product=max(ch_bound(order, k), 2 * k - 2),
        ceiling_chain_ok=chain,
    )


def _pipeline_verdict(
    mode: str,
    D: Digraph,
    report: BoundReport,
    hypotheses: HypothesisReport,
    hypotheses_hold: bool,
    witness_directory: Optional[str],
) -> CheckOutcome:
    if not hypotheses_hold:
        return CheckOutcome(mode, Verdict.HYPOTHESIS_UNMET, report, hypotheses)
    amplified = hypotheses.amplified
    if amplified.all_checks_hold and report.verdicts["ch"] is BoundVerdict.HOLDS:
        return CheckOutcome(mode, Verdict.HOLDS, report, hypotheses)
    settings.debug(f"{mode}: amplified check {amplified}")
    path = write_witness(D, mode, report, witness_directory)
    return CheckOutcome(mode, Verdict.COUNTEREXAMPLE, report, hypotheses, path)


def theorem6_flags(D: Digraph, k: int, g: int) -> Theorem6Flags:
    even = walks.shortest_even_cycle(D, 2 * g)
    return Theorem6Flags(
        girth_ge_k=g >= k,
        girth_odd=g % 2 == 1,
        no_short_even_cycle=even.is_acyclic,
        short_even_cycle=even.witness,
    )


def check_theorem6(D: Digraph, witness_directory: Optional[str] = None) -> CheckOutcome:
    """
    Girth-doubling pipeline: if g >= k, g is odd and no even cycle is shorter
    than 2g, then C_2 x D has order 2n, min out-degree k and girth 2g, and
    ceil(n/k) >= g follows.
    """
    k = _min_out_or_fail(D)
    girth = walks.girth(D)
    g = girth.value
    report = known_bounds(D.n, k, girth)
    flags = theorem6_flags(D, k, g)
    amplified = _amplify(D, 2, D.n, k, g) if flags.all_hold else None
    hypotheses = HypothesisReport(theorem6=flags, amplified=amplified, notes=(THEOREM6_PARITY_NOTE,))
    return _pipeline_verdict("thm6", D, report, hypotheses, flags.all_hold, witness_directory)


def corollary7_flags(D: Digraph, p: int, k: int, g: int) -> Corollary7Flags:
    lengths = walks.closed_walk_lengths(D, (g - 1) * p)
    return Corollary7Flags(
        p=p,
        girth_ge_2k_over_p=p * g >= 2 * k,
        no_walk_at=tuple((j * p, lengths[j * p - 1]) for j in range(1, g)),
    )


def check_corollary7(D: Digraph, p: int, witness_directory: Optional[str] = None) -> CheckOutcome:
    """
    Girth-multiplying pipeline for p > 2: if pg >= 2k and D has no closed walk
    of length p, 2p, ..., (g-1)p, then C_p x D should have girth pg, which
    is checked here rather than assumed.
    """
    if p <= 2:
        raise PreconditionError(f"the multiplier must satisfy p > 2, got p={p}")
    k = _min_out_or_fail(D)
    girth = walks.girth(D)
    g = girth.value
    report = known_bounds(D.n, k, girth)
    flags = corollary7_flags(D, p, k, g)
    amplified = _amplify(D, p, D.n, k, g) if flags.all_hold else None
    hypotheses = HypothesisReport(corollary7=flags, amplified=amplified)
    return _pipeline_verdict("cor7", D, report, hypotheses, flags.all_hold, witness_directory)


def check_corollary8(D: Digraph, p: Optional[int] = None, witness_directory: Optional[str] = None) -> CheckOutcome:
    """BCW for regular digraphs: case (i) via check_theorem6, case (ii) via check_corollary7."""
    _regular_degree_or_fail(D)
    bcw = check_bcw(D, witness_directory)
    if p is None:
        outcome = check_theorem6(D, witness_directory)
    else:
        outcome = check_corollary7(D, p, witness_directory)
    verdict, witness_path = outcome.verdict, outcome.witness_path
    if bcw.verdict is Verdict.COUNTEREXAMPLE:
        verdict, witness_path = Verdict.COUNTEREXAMPLE, witness_path or bcw.witness_path
    return CheckOutcome(
        mode="cor8",
        verdict=verdict,
        bounds=outcome.bounds,
        hypotheses=outcome.hypotheses,
        witness_path=witness_path,
        bcw_verdict=bcw.verdict,
    )
