#!/usr/bin/env python3
"""
Command-line front-end for GirthLab.

Exit codes: 0 holds, 1 usage/parse error, 2 hypothesis not met,
3 counterexample, 4 precondition failure.
"""

import argparse
import sys
from typing import Dict, List, Optional

import arc_list
import conjectures
import dot_export
import products
import search
import settings
import walks
from conjectures import Verdict
from digraph_core import Digraph, degree_profile, is_oriented
from errors import ArcListParseError, GirthLabError, PreconditionError, SearchSpaceError

EXIT_HOLDS = 0
EXIT_USAGE = 1
EXIT_HYPOTHESIS = 2
EXIT_COUNTEREXAMPLE = 3
EXIT_PRECONDITION = 4

VERDICT_EXIT = {
    Verdict.HOLDS: EXIT_HOLDS,
    Verdict.HYPOTHESIS_UNMET: EXIT_HYPOTHESIS,
    Verdict.COUNTEREXAMPLE: EXIT_COUNTEREXAMPLE,
}


class GirthLabParser(argparse.ArgumentParser):
    """Usage errors exit 1; exit 2 is reserved for 'hypothesis not met'."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def kv_line(pairs: Dict[str, object]) -> str:
    """Single-line key=value summary; key order is the dict's insertion order."""
    def fmt(value):
        if isinstance(value, bool):
            return 'true' if value else 'false'
        if isinstance(value, float):
            return f"{value:.6f}"
        if value is None:
            return 'none'
        if isinstance(value, (tuple, list)):
            return ','.join(str(x) for x in value) if value else 'none'
        return str(value)
    return ' '.join(f"{key}={fmt(value)}" for key, value in pairs.items())


def emit(args, text_lines: List[str], summary: Dict[str, object]):
    if args.format == 'text':
        for line in text_lines:
            print(line)
    print(kv_line(summary))


def _single_input(args) -> str:
    if not args.input or len(args.input) != 1:
        raise PreconditionError("exactly one --input file is required")
    return args.input[0]


def cmd_girth(args) -> int:
    D = arc_list.read_file(_single_input(args))
    profile = degree_profile(D)
    result = walks.girth(D)
    oriented = is_oriented(D)
    lines = [f"n {D.n}, m {D.m}, min out-degree {profile.min_out}"
             + (", oriented" if oriented else "")]
    if result.is_acyclic:
        lines.append("girth: none (acyclic)")
    else:
        lines.append(f"girth {result.value}, witness {' '.join(str(v) for v in result.witness)}")
    emit(args, lines, {
        'n': D.n, 'm': D.m, 'min_out': profile.min_out, 'oriented': oriented,
        'girth': result.value, 'witness': result.witness,
    })
    return EXIT_HOLDS


def cmd_product(args) -> int:
    if not args.input or len(args.input) != 2:
        raise PreconditionError("product needs exactly two --input files")
    D1 = arc_list.read_file(args.input[0])
    D2 = arc_list.read_file(args.input[1])
    P = products.direct_product(D1, D2)
    lines = [f"product: {D1.n}*{D2.n} = {P.n} vertices, {P.m} arcs"]
    if args.out:
        arc_list.write_file(args.out, P, [f"direct product of {args.input[0]} and {args.input[1]}"])
        lines.append(f"written to {args.out}")
    else:
        lines.append(arc_list.serialize(P).rstrip('\n'))
    emit(args, lines, {'n1': D1.n, 'n2': D2.n, 'n': P.n, 'm': P.m, 'out': args.out})
    return EXIT_HOLDS


def bound_lines(report: conjectures.BoundReport) -> List[str]:
    lines = [
        f"n {report.n}, k {report.k}, g {report.g if report.g is not None else 'none'}",
        f"  ceil(n/k)                  {report.ch_bound}",
        f"  max(ceil(n/k), 2k-2)       {report.shen_bound}",
        f"  ceil(2n/(k+1))             {report.cs_bound}",
        f"  3*ceil((n/k) ln((2+sqrt7)/3)) {report.shen_log_bound}  (~{report.shen_log_estimate:.6f})",
    ]
    for c, bound in report.cs_additive_bounds.items():
        lines.append(f"  floor(n/k) + {c:<4}          {bound}")
    lines.append(
        f"  regimes: triangle={report.triangle_regime} small_k={report.shen_small_k_regime} "
        f"proved_k={report.proved_k_case} half={report.half_case}"
    )
    for name, verdict in report.verdicts.items():
        lines.append(f"  {name:<20} {verdict.value}")
    return lines


def _bounds_summary(report: conjectures.BoundReport) -> Dict[str, object]:
    return {
        'n': report.n, 'k': report.k, 'g': report.g,
        'ch_bound': report.ch_bound, 'shen_bound': report.shen_bound,
        'cs_bound': report.cs_bound, 'shen_log_bound': report.shen_log_bound,
        'shen_log_estimate': report.shen_log_estimate,
    }


def outcome_lines(outcome: conjectures.CheckOutcome) -> List[str]:
    lines = [f"mode {outcome.mode}: {outcome.verdict.value}"]
    hyp = outcome.hypotheses
    if hyp is not None and hyp.theorem6 is not None:
        t6 = hyp.theorem6
        lines.append(f"  g >= k: {t6.girth_ge_k}")
        lines.append(f"  g odd: {t6.girth_odd}")
        lines.append(f"  no even cycle shorter than 2g: {t6.no_short_even_cycle}"
                     + (f" (found {' '.join(map(str, t6.short_even_cycle))})" if t6.short_even_cycle else ""))
    if hyp is not None and hyp.corollary7 is not None:
        c7 = hyp.corollary7
        lines.append(f"  p*g >= 2k (p={c7.p}): {c7.girth_ge_2k_over_p}")
        present = [length for length, flag in c7.no_walk_at if flag]
        lines.append(f"  closed walks at multiples of p: {present if present else 'none'}")
    if hyp is not None and hyp.amplified is not None:
        amp = hyp.amplified
        label = "g(D×)" if amp.p == 2 else f"g(D×_{amp.p})"
        factor = "2g" if amp.p == 2 else f"{amp.p}g"
        if amp.girth_ok:
            lines.append(f"  {label}={amp.girth}={factor}")
        else:
            lines.append(f"  {label}={amp.girth}, expected {factor}={amp.expected_girth}")
        lines.append(f"  |V|={amp.order} (expected {amp.p * outcome.bounds.n}), min out-degree {amp.min_out}")
        lines.append(f"  max(ceil(pn/k), 2k-2) on the product: {amp.shen_bound_on_product}"
                     + ("" if amp.shen_on_product_ok else " (exceeded)"))
        lines.append(f"  ceiling chain p*ceil(n/k) >= ceil(pn/k) >= g: {amp.ceiling_chain_ok}")
    if hyp is not None:
        for note in hyp.notes:
            lines.append(f"  note: {note}")
    equality = outcome.bounds.g == outcome.bounds.ch_bound
    lines.append(f"  g={outcome.bounds.g} ceil(n/k)={outcome.bounds.ch_bound}"
                 + (" (equality)" if equality else ""))
    if outcome.bcw_verdict is not None:
        lines.append(f"  BCW g <= ceil(n/d): {outcome.bcw_verdict.value}")
    if outcome.witness_path:
        lines.append(f"  witness file: {outcome.witness_path}")
    return lines


def cmd_verify(args) -> int:
    D = arc_list.read_file(_single_input(args))
    mode = args.mode
    if mode == 'bounds':
        k = degree_profile(D).min_out
        report = conjectures.known_bounds(D.n, k, walks.girth(D))
        lines = bound_lines(report)
        summary = _bounds_summary(report)
        summary['violations'] = report.violations()
        summary['witness'] = None
        if report.violations():
            summary['witness'] = conjectures.write_witness(D, "bounds", report)
            lines.append(f"  witness file: {summary['witness']}")
        emit(args, lines, summary)
        return EXIT_COUNTEREXAMPLE if report.violations() else EXIT_HOLDS

    if mode == 'ch':
        outcome = conjectures.check_ch(D)
    elif mode == 'bcw':
        outcome = conjectures.check_bcw(D)
    elif mode == 'thm6':
        outcome = conjectures.check_theorem6(D)
    elif mode == 'cor7':
        if args.p is None:
            raise PreconditionError("mode cor7 needs --p")
        outcome = conjectures.check_corollary7(D, args.p)
    else:
        outcome = conjectures.check_corollary8(D, args.p)

    summary = {'mode': outcome.mode, 'verdict': outcome.verdict.value}
    summary.update(_bounds_summary(outcome.bounds))
    if outcome.hypotheses is not None and outcome.hypotheses.amplified is not None:
        amp = outcome.hypotheses.amplified
        summary['amplified_girth'] = amp.girth
        summary['amplified_shen_bound'] = amp.shen_bound_on_product
        summary['ceiling_chain_ok'] = amp.ceiling_chain_ok
    if outcome.bcw_verdict is not None:
        summary['bcw'] = outcome.bcw_verdict.value
    summary['witness'] = outcome.witness_path
    emit(args, outcome_lines(outcome), summary)
    return VERDICT_EXIT[outcome.verdict]


def _parse_partition(raw: Optional[str]):
    if raw is None:
        return (0, 1)
    try:
        part_index, part_total = (int(x) for x in raw.split('/'))
    except ValueError:
        raise PreconditionError(f"--partition expects i/t, got {raw!r}") from None
    return (part_index, part_total)


def cmd_enumerate(args) -> int:
    query = search.SearchQuery(
        n=args.n,
        min_out=args.min_out,
        regular_d=args.regular,
        max_count=args.max_count,
        partition=_parse_partition(args.partition),
        seed=args.seed,
    )
    query.validate()

    if args.mode == 'count':
        summary = search.enumerate_digraphs(query, lambda mask, D: None, progress=args.progress)
        emit(args, [f"{summary.visited} digraphs"], {
            'n': query.n, 'min_out': query.min_out, 'regular': query.regular_d,
            'partition': f"{query.partition[0]}/{query.partition[1]}",
            'visited': summary.visited, 'space': summary.space_size, 'truncated': summary.truncated,
        })
        return EXIT_HOLDS

    if args.mode == 'sample':
        tally = {'sampled': 0, 'ch_holds': 0, 'shen_holds': 0}
        failures = []

        def visit(mask, D):
            tally['sampled'] += 1
            k = min(D.out_degrees())
            if k == 0:
                tally['ch_holds'] += 1
                tally['shen_holds'] += 1
                return
            g = walks.girth(D).value
            ch = conjectures.ch_bound(D.n, k)
            tally['ch_holds'] += g <= ch
            tally['shen_holds'] += g <= max(ch, 2 * k - 2)
            if g > ch and not failures:
                failures.append(D)

        seed = search.sample(query, args.count, visit)
        witness = conjectures.save_counterexample(failures[0], "sample") if failures else None
        lines = [
            f"seed {seed}",
            f"{tally['sampled']} sampled digraphs, {tally['ch_holds']} within ceil(n/k), "
            f"{tally['shen_holds']} within Shen's bound",
        ]
        if witness:
            lines.append(f"witness file: {witness}")
        emit(args, lines, {'n': query.n, 'seed': seed, **tally, 'witness': witness})
        return EXIT_HOLDS if witness is None else EXIT_COUNTEREXAMPLE

    if args.mode == 'census':
        if args.p is not None and args.p <= 2:
            raise PreconditionError(f"the multiplier must satisfy p > 2, got p={args.p}")
        counts = search.hypothesis_census(query.n, args.p, progress=args.progress)
        witness = None
        if counts.first_failure_mask is not None:
            witness = conjectures.save_counterexample(
                Digraph.from_bitmask(counts.n, counts.first_failure_mask), counts.first_failure_kind)
        lines = [
            "n p visited thm6_members thm6_identity_ok cor7_members cor7_identity_ok",
            f"{counts.n} {counts.p if counts.p is not None else '-'} {counts.visited} "
            f"{counts.thm6_members} {counts.thm6_identity_ok} {counts.cor7_members} {counts.cor7_identity_ok}",
        ]
        if witness:
            lines.append(f"witness file: {witness}")
        emit(args, lines, {
            'n': counts.n, 'p': counts.p, 'visited': counts.visited,
            'thm6_members': counts.thm6_members, 'thm6_identity_ok': counts.thm6_identity_ok,
            'cor7_members': counts.cor7_members, 'cor7_identity_ok': counts.cor7_identity_ok,
            'witness': witness,
        })
        return EXIT_HOLDS if counts.identities_hold else EXIT_COUNTEREXAMPLE

    # mode ch: the shared CH / Shen / girth-doubling sweep
    if query.partition == (0, 1) and query.regular_d is None and query.max_count is None:
        summary = search.parallel_sweep(query.n, progress=args.progress, min_out=max(1, query.min_out))
    else:
        summary = search.sweep(query, progress=args.progress)
    lines = [
        "n visited skipped ch_violations shen_violations thm6_members thm6_identity_ok",
        f"{summary.n} {summary.visited} {summary.skipped} {summary.ch_violations} "
        f"{summary.shen_violations} {summary.thm6_members} {summary.thm6_identity_ok}",
    ]
    for k in sorted(summary.equality_counts):
        lines.append(f"equality k={k}: {summary.equality_counts[k]} digraphs, "
                     f"lowest mask {summary.equality_witness[k]}")
    witness = None
    if summary.all_hold:
        lines.append("all hold")
    else:
        witness = conjectures.save_counterexample(
            Digraph.from_bitmask(summary.n, summary.first_violation_mask), "ch")
        lines.append(f"VIOLATION at mask {summary.first_violation_mask}, witness file: {witness}")
    emit(args, lines, {
        'n': summary.n, 'visited': summary.visited, 'skipped': summary.skipped,
        'ch_violations': summary.ch_violations, 'shen_violations': summary.shen_violations,
        'thm6_members': summary.thm6_members, 'thm6_identity_ok': summary.thm6_identity_ok,
        'all_hold': summary.all_hold, 'witness': witness,
    })
    return EXIT_HOLDS if summary.all_hold else EXIT_COUNTEREXAMPLE


def cmd_export_dot(args) -> int:
    D = arc_list.read_file(_single_input(args))
    highlight = walks.girth(D).witness if args.highlight_girth else None
    text = dot_export.to_dot(D, highlight=highlight)
    if args.out:
        with open(args.out, 'w') as f:
            f.write(text)
    else:
        print(text, end='')
    return EXIT_HOLDS


def cmd_cage(args) -> int:
    record = search.cage_search(args.d, args.g, args.n_max)
    lines = [
        "d g best_order conjectured_order exhaustive_below bcw_counterexample",
        f"{record.d} {record.g} {record.best_order} {record.conjectured_order} "
        f"{record.exhaustive_below} {str(record.bcw_counterexample).lower()}",
        "n status space visited",
    ]
    lines.extend(f"{o.n} {o.status} {o.space_size} {o.visited}" for o in record.orders)
    if args.out and record.witness is not None:
        arc_list.write_file(args.out, record.witness, [f"({record.d},{record.g}) cage candidate"])
        lines.append(f"witness written to {args.out}")
    emit(args, lines, {
        'd': record.d, 'g': record.g, 'best_order': record.best_order,
        'conjectured_order': record.conjectured_order,
        'exhaustive_below': record.exhaustive_below,
        'bcw_counterexample': record.bcw_counterexample,
    })
    return EXIT_COUNTEREXAMPLE if record.bcw_counterexample else EXIT_HOLDS


def cmd_bounds(args) -> int:
    report = conjectures.known_bounds(args.n, args.k)
    lines = bound_lines(report)
    if args.k >= 2:
        lines.append(f"  counterexample order cap 2k^2-3k  {conjectures.counterexample_order_cap(args.k)}")
    emit(args, lines, _bounds_summary(report))
    return EXIT_HOLDS


def build_parser() -> argparse.ArgumentParser:
    parser = GirthLabParser(prog='girthlab', description='Exact girth analysis of small digraphs')
    sub = parser.add_subparsers(dest='command', required=True)

    def common(p):
        p.add_argument('--format', choices=['text', 'kv'], default='text',
                       help='text: human block plus summary line; kv: summary line only')
        return p

    p = common(sub.add_parser('girth', help='girth and a shortest cycle'))
    p.add_argument('--input', '-i', action='append', help='Arc-list file')
    p.set_defaults(func=cmd_girth)

    p = common(sub.add_parser('product', help='direct product of two digraphs'))
    p.add_argument('--input', '-i', action='append', help='Arc-list file (give twice)')
    p.add_argument('--out', help='Where to write the product arc list')
    p.set_defaults(func=cmd_product)

    p = common(sub.add_parser('verify', help='check a conjecture or pipeline on one digraph'))
    p.add_argument('--input', '-i', action='append', help='Arc-list file')
    p.add_argument('--mode', choices=['ch', 'bcw', 'thm6', 'cor7', 'cor8', 'bounds'], default='ch')
    p.add_argument('--p', type=int, default=None, help='Multiplier for cor7 / cor8 case (ii)')
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser('enumerate', help='exhaustive or sampled sweeps'))
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--min-out', type=int, default=0)
    p.add_argument('--regular', type=int, default=None)
    p.add_argument('--partition', default=None, help='i/t: visit cell i of t')
    p.add_argument('--mode', choices=['count', 'ch', 'census', 'sample'], default='count')
    p.add_argument('--p', type=int, default=None, help='Multiplier for census mode')
    p.add_argument('--count', type=int, default=1000, help='Draws in sample mode')
    p.add_argument('--max-count', type=int, default=None)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--progress', action='store_true')
    p.set_defaults(func=cmd_enumerate)

    p = common(sub.add_parser('export-dot', help='Graphviz DOT text'))
    p.add_argument('--input', '-i', action='append', help='Arc-list file')
    p.add_argument('--out', help='Write DOT here instead of stdout')
    p.add_argument('--highlight-girth', action='store_true', help='Colour a shortest cycle')
    p.set_defaults(func=cmd_export_dot)

    p = common(sub.add_parser('cage', help='smallest d-regular digraph of girth g'))
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--g', type=int, required=True)
    p.add_argument('--n-max', type=int, default=8)
    p.add_argument('--out', help='Write the witness arc list here')
    p.set_defaults(func=cmd_cage)

    p = common(sub.add_parser('bounds', help='known girth bounds for given n and k'))
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--k', type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ArcListParseError as e:
        print(f"Parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"Cannot read input: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (PreconditionError, SearchSpaceError) as e:
        print(f"Precondition failed: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except GirthLabError as e:
        settings.debug(f"{type(e).__name__}: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == '__main__':
    sys.exit(main())
