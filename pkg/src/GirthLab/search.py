"""
Exhaustive and sampled enumeration of small labelled digraphs, cage search,
and the bulk CH / Shen / girth-doubling sweeps built on it.

A labelled loop-free digraph on n vertices is an n(n-1)-bit integer: row u
occupies bits [u(n-1), (u+1)(n-1)) and bit j of a row is the arc to vertex
j (j < u) or j+1 (j >= u). Rows are generated one vertex at a time so the
out-degree filters prune whole rows before expansion, and digraphs are
produced in increasing bitmask order.
"""

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from math import comb
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Set, Tuple

from tqdm import tqdm

import conjectures
import products
import settings
import walks
from digraph_core import Digraph, circulant, degree_profile
from errors import PreconditionError, SearchSpaceError


def _popcount(x: int) -> int:
    return bin(x).count('1')


@dataclass(frozen=True)
class SearchQuery:
    n: int
    min_out: int = 0
    regular_d: Optional[int] = None
    max_count: Optional[int] = None
    partition: Tuple[int, int] = (0, 1)
    seed: Optional[int] = None

    def validate(self):
        if self.n < 1:
            raise PreconditionError(f"order must be at least 1, got {self.n}")
        if self.min_out < 0:
            raise PreconditionError(f"min_out must be non-negative, got {self.min_out}")
        if self.regular_d is not None and not 0 <= self.regular_d < self.n:
            raise PreconditionError(f"regular degree must be in [0, {self.n}), got {self.regular_d}")
        part_index, part_total = self.partition
        if part_total < 1 or not 0 <= part_index < part_total:
            raise PreconditionError(f"bad partition {part_index}/{part_total}")
        if self.max_count is not None and self.max_count < 0:
            raise PreconditionError(f"max_count must be non-negative, got {self.max_count}")


@dataclass(frozen=True)
class EnumerationSummary:
    visited: int
    space_size: int
    truncated: bool


def _row_options(query: SearchQuery) -> List[int]:
    width = query.n - 1
    if query.regular_d is not None:
        return [r for r in range(1 << width) if _popcount(r) == query.regular_d]
    return [r for r in range(1 << width) if _popcount(r) >= query.min_out]


def _row_vertices(n: int, u: int, row: int) -> Tuple[int, ...]:
    return tuple(j if j < u else j + 1 for j in range(n - 1) if row >> j & 1)


def space_size(query: SearchQuery) -> int:
    """Candidate count after row pruning (regular queries: before column pruning)."""
    if query.regular_d is not None:
        return comb(query.n - 1, query.regular_d) ** query.n
    per_row = sum(comb(query.n - 1, j) for j in range(query.min_out, query.n))
    return per_row ** query.n


def _check_exhaustive(query: SearchQuery):
    bits = query.n * (query.n - 1)
    if bits > settings.EXHAUSTIVE_BIT_CAP:
        raise SearchSpaceError(
            f"exhaustive enumeration at n={query.n} needs {bits} bits, cap is "
            f"{settings.EXHAUSTIVE_BIT_CAP}; use partitioned or sampled mode",
            space_size(query),
        )


def _iter_rows(query: SearchQuery) -> Iterator[Tuple[int, ...]]:
    """Row tuples (indexed by vertex) in increasing bitmask order within the partition cell."""
    n = query.n
    options = _row_options(query)
    part_index, part_total = query.partition
    head_len = min(2, n)
    tail_len = n - head_len
    d = query.regular_d
    verts = [{row: _row_vertices(n, u, row) for row in options} for u in range(n)]

    def columns_ok(cols: List[int], rows_left: int) -> bool:
        # rows_left rows (vertices 0..rows_left-1) are still to be placed
        for c, count in enumerate(cols):
            if count > d:
                return False
            helpers = rows_left - (1 if c < rows_left else 0)
            if d - count > helpers:
                return False
        return True

    def regular_tail(u: int, cols: List[int], placed: List[int]) -> Iterator[List[int]]:
        if u < 0:
            yield placed
            return
        for row in options:
            new_cols = cols[:]
            for v in verts[u][row]:
                new_cols[v] += 1
            if columns_ok(new_cols, u):
                yield from regular_tail(u - 1, new_cols, placed + [row])

    # rows listed from vertex n-1 down to 0: the top row varies slowest
    for idx, head in enumerate(itertools.product(options, repeat=head_len)):
        if idx % part_total != part_index:
            continue
        if d is None:
            for tail in itertools.product(options, repeat=tail_len):
                yield tuple(reversed(head + tail))
        else:
            cols = [0] * n
            for offset, row in enumerate(head):
                for v in verts[n - 1 - offset][row]:
                    cols[v] += 1
            if not columns_ok(cols, n - head_len):
                continue
            for desc in regular_tail(n - head_len - 1, cols, list(head)):
                yield tuple(reversed(desc))


def _assemble(n: int, rows: Sequence[int]) -> Tuple[int, Digraph]:
    width = n - 1
    mask = 0
    adj = []
    for u, row in enumerate(rows):
        mask |= row << (u * width)
        adj.append(_row_vertices(n, u, row))
    return mask, Digraph(n, tuple(adj))


def iter_digraphs(query: SearchQuery) -> Iterator[Tuple[int, Digraph]]:
    """(bitmask, digraph) pairs for every labelled digraph in the query's cell."""
    query.validate()
    _check_exhaustive(query)
    count = 0
    for rows in _iter_rows(query):
        if query.max_count is not None and count >= query.max_count:
            return
        count += 1
        yield _assemble(query.n, rows)


def enumerate_digraphs(query: SearchQuery, visit: Callable[[int, Digraph], None], progress: bool = False) -> EnumerationSummary:
    """
    Call visit(mask, digraph) on every digraph matching the query, exactly once,
    in increasing mask order.

    Raises:
        SearchSpaceError: if n(n-1) exceeds the exhaustive cap
    """
    query.validate()
    size = space_size(query)
    source = iter_digraphs(replace(query, max_count=None))
    if progress:
        source = tqdm(source, total=size // query.partition[1], desc=f"n={query.n}", unit="dg")
    visited = 0
    truncated = False
    for mask, D in source:
        if query.max_count is not None and visited >= query.max_count:
            # one more digraph exists past the cap
            truncated = True
            break
        visit(mask, D)
        visited += 1
    settings.debug(f"enumerated {visited} digraphs for {query}")
    return EnumerationSummary(visited=visited, space_size=size, truncated=truncated)


def sample(query: SearchQuery, count: int, visit: Callable[[int, Digraph], None], max_attempts: int = 10 ** 6) -> int:
    """
    Visit `count` digraphs drawn uniformly from the filtered space.

    Min-out-degree filters act row by row, so independent row draws are
    uniform. Regular queries draw d-subsets per row and reject on in-degree.

    Returns:
        the seed actually used
    """
    query.validate()
    seed = settings.DEFAULT_SEED if query.seed is None else query.seed
    rng = random.Random(seed)
    n, width = query.n, query.n - 1
    if query.regular_d is None and query.min_out > width:
        raise SearchSpaceError(f"no digraph on {n} vertices has min out-degree {query.min_out}", 0)
    drawn = attempts = 0
    while drawn < count:
        attempts += 1
        if attempts > max_attempts:
            raise SearchSpaceError(f"gave up after {max_attempts} rejected draws", space_size(query))
        rows = []
        for _ in range(n):
            if query.regular_d is not None:
                row = sum(1 << j for j in rng.sample(range(width), query.regular_d))
            else:
                row = rng.getrandbits(width) if width else 0
                while _popcount(row) < query.min_out:
                    row = rng.getrandbits(width)
            rows.append(row)
        mask, D = _assemble(n, rows)
        if query.regular_d is not None and degree_profile(D).is_d_regular != query.regular_d:
            continue
        visit(mask, D)
        drawn += 1
    return seed


# ---------------------------------------------------------------------------
# Shared CH / Shen bound / girth-doubling sweep


@dataclass
class SweepSummary:
    """Commutative, associative summary of one sweep cell."""
    n: int
    visited: int = 0
    skipped: int = 0
    ch_violations: int = 0
    shen_violations: int = 0
    first_violation_mask: Optional[int] = None
    equality_counts: Dict[int, int] = field(default_factory=dict)
    equality_witness: Dict[int, int] = field(default_factory=dict)
    equality_masks: Set[int] = field(default_factory=set)
    thm6_members: int = 0
    thm6_identity_ok: int = 0
    thm6_conclusion_ok: int = 0

    @property
    def all_hold(self) -> bool:
        return self.ch_violations == 0 and self.shen_violations == 0

    def merge(self, other: "SweepSummary") -> "SweepSummary":
        out = SweepSummary(self.n)
        out.visited = self.visited + other.visited
        out.skipped = self.skipped + other.skipped
        out.ch_violations = self.ch_violations + other.ch_violations
        out.shen_violations = self.shen_violations + other.shen_violations
        firsts = [m for m in (self.first_violation_mask, other.first_violation_mask) if m is not None]
        out.first_violation_mask = min(firsts) if firsts else None
        for k in set(self.equality_counts) | set(other.equality_counts):
            out.equality_counts[k] = self.equality_counts.get(k, 0) + other.equality_counts.get(k, 0)
            out.equality_witness[k] = min(
                m for m in (self.equality_witness.get(k), other.equality_witness.get(k)) if m is not None
            )
        out.equality_masks = self.equality_masks | other.equality_masks
        out.thm6_members = self.thm6_members + other.thm6_members
        out.thm6_identity_ok = self.thm6_identity_ok + other.thm6_identity_ok
        out.thm6_conclusion_ok = self.thm6_conclusion_ok + other.thm6_conclusion_ok
        return out


def _theorem6_check(D: Digraph, k: int, g: int) -> Optional[Tuple[bool, bool]]:
    """None if D misses the hypotheses, else (girth doubled exactly, ceil(n/k) >= g)."""
    if g < k or g % 2 == 0:
        return None
    if not walks.shortest_even_cycle(D, 2 * g).is_acyclic:
        return None
    order, min_out, amp_girth = products.amplified_parameters(D, 2)
    identity = order == 2 * D.n and min_out == k and amp_girth.value == 2 * g
    return identity, conjectures.ch_bound(D.n, k) >= g


def sweep(query: SearchQuery, keep_equality: bool = False, progress: bool = False) -> SweepSummary:
    """
    Shared sweep over one query cell: CH, Shen's max{ceil(n/k), 2k-2}, the
    equality census and the girth-doubling census. Digraphs with a sink
    (k = 0) are counted as skipped.
    """
    n = query.n
    summary = SweepSummary(n)

    def visit(mask: int, D: Digraph):
        k = min(D.out_degrees())
        if k == 0:
            summary.skipped += 1
            return
        g = walks.girth(D).value
        ch = -(-n // k)
        summary.visited += 1
        bad = False
        if g > ch:
            summary.ch_violations += 1
            bad = True
        if g > max(ch, 2 * k - 2):
            summary.shen_violations += 1
            bad = True
        if bad and summary.first_violation_mask is None:
            summary.first_violation_mask = mask
        if g == ch:
            summary.equality_counts[k] = summary.equality_counts.get(k, 0) + 1
            summary.equality_witness.setdefault(k, mask)
            if keep_equality:
                summary.equality_masks.add(mask)
        result = _theorem6_check(D, k, g)
        if result is not None:
            summary.thm6_members += 1
            summary.thm6_identity_ok += result[0]
            summary.thm6_conclusion_ok += result[1]

    enumerate_digraphs(query, visit, progress=progress)
    return summary


def parallel_sweep(n: int, workers: Optional[int] = None, keep_equality: bool = False, progress: bool = False, min_out: int = 1) -> SweepSummary:
    """Run the shared sweep over `workers` partition cells and merge the results."""
    workers = settings.worker_count(workers)
    if workers == 1 or n < 4:
        return sweep(SearchQuery(n=n, min_out=min_out), keep_equality, progress)
    settings.debug(f"sweep n={n} over {workers} worker processes")
    queries = [SearchQuery(n=n, min_out=min_out, partition=(i, workers)) for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(sweep, query, keep_equality) for query in queries]
        cells = [f.result() for f in (tqdm(futures, desc=f"n={n} cells") if progress else futures)]
    total = SweepSummary(n)
    for cell in cells:
        total = total.merge(cell)
    return total


@dataclass(frozen=True)
class CHReport:
    n_max: int
    per_order: Tuple[SweepSummary, ...]

    @property
    def all_hold(self) -> bool:
        return all(s.all_hold for s in self.per_order)

    @property
    def visited(self) -> int:
        return sum(s.visited for s in self.per_order)


def verify_ch_exhaustive(n_max: int, workers: Optional[int] = None, keep_equality: bool = False, progress: bool = False) -> CHReport:
    """
    Check CH and Shen's max{ceil(n/k), 2k-2} on every labelled digraph with
    min out-degree >= 1 and 2 <= n <= n_max. The girth-doubling census rides
    along in the same sweep.
    """
    summaries = []
    for n in range(2, n_max + 1):
        summary = parallel_sweep(n, workers, keep_equality, progress)
        if not summary.all_hold:
            D = Digraph.from_bitmask(n, summary.first_violation_mask)
            outcome = conjectures.check_ch(D)
            print(f"CH sweep violation at n={n}: {outcome.verdict.value}, witness {outcome.witness_path}")
        summaries.append(summary)
    return CHReport(n_max, tuple(summaries))


# ---------------------------------------------------------------------------
# Cage search


@dataclass(frozen=True)
class OrderResult:
    n: int
    status: str  # 'excluded', 'found', 'overflow', 'no-regular'
    space_size: int
    visited: int


@dataclass(frozen=True)
class CageRecord:
    d: int
    g: int
    best_order: Optional[int]
    conjectured_order: int
    witness: Optional[Digraph]
    exhaustive_below: int
    bcw_counterexample: bool
    orders: Tuple[OrderResult, ...]


def cage_search(d: int, g: int, n_max: int, space_cap: Optional[int] = None) -> CageRecord:
    """
    Smallest order of a d-regular digraph of girth >= g, searched exhaustively
    below the conjectured order d(g-1)+1, where the circulant is checked.
    """
    if d < 1 or g < 2:
        raise PreconditionError(f"cage search needs d >= 1 and g >= 2, got d={d}, g={g}")
    space_cap = settings.CAGE_SPACE_CAP if space_cap is None else space_cap
    conjectured = d * (g - 1) + 1
    # fewer than g vertices: every cycle is shorter than g
    exhaustive_below = g - 1
    contiguous = True
    best_order, witness = None, None
    orders: List[OrderResult] = []

    for n in range(g, min(n_max, conjectured - 1) + 1):
        if d >= n:
            orders.append(OrderResult(n, 'no-regular', 0, 0))
            if contiguous:
                exhaustive_below = n
            continue
        query = SearchQuery(n=n, regular_d=d)
        size = space_size(query)
        if size > space_cap or n * (n - 1) > settings.EXHAUSTIVE_BIT_CAP:
            orders.append(OrderResult(n, 'overflow', size, 0))
            print(f"Cage search d={d} g={g}: order {n} overflows ({size} candidates), skipped")
            contiguous = False
            continue
        found = None
        visited = 0
        for _, D in iter_digraphs(query):
            visited += 1
            if walks.girth(D).value >= g:
                found = D
                break
        if found is None:
            orders.append(OrderResult(n, 'excluded', size, visited))
            if contiguous:
                exhaustive_below = n
            continue
        orders.append(OrderResult(n, 'found', size, visited))
        best_order, witness = n, found
        break

    bcw_counterexample = best_order is not None and best_order < conjectured
    if bcw_counterexample:
        report = conjectures.known_bounds(best_order, d, walks.girth(witness))
        conjectures.write_witness(witness, "cage", report)
        print(f"BCW counterexample event: d={d} g={g} order {best_order} < {conjectured}")

    circ = circulant(conjectured, d)
    circ_girth = walks.girth(circ).value
    if circ_girth != g:
        raise AssertionError(f"circulant({conjectured}, {d}) has girth {circ_girth}, expected {g}")
    if best_order is None:
        best_order, witness = conjectured, circ

    return CageRecord(
        d=d,
        g=g,
        best_order=best_order,
        conjectured_order=conjectured,
        witness=witness,
        exhaustive_below=exhaustive_below,
        bcw_counterexample=bcw_counterexample,
        orders=tuple(orders),
    )


# ---------------------------------------------------------------------------
# Hypothesis census


@dataclass
class CensusCounts:
    n: int
    p: Optional[int]
    visited: int = 0
    thm6_members: int = 0
    thm6_identity_ok: int = 0
    cor7_members: int = 0
    cor7_identity_ok: int = 0
    thm6_member_masks: List[int] = field(default_factory=list)
    cor7_member_masks: List[int] = field(default_factory=list)
    # lowest-mask member whose product girth was not p*g, and which check it failed
    first_failure_mask: Optional[int] = None
    first_failure_kind: Optional[str] = None

    @property
    def identities_hold(self) -> bool:
        return self.thm6_identity_ok == self.thm6_members and self.cor7_identity_ok == self.cor7_members


def hypothesis_census(n: int, p: Optional[int] = None, keep_members: bool = False, progress: bool = False) -> CensusCounts:
    """
    Count digraphs of order n meeting the girth-doubling hypotheses (and the
    girth-multiplying ones for p), confirming girth(C_p x D) = p*g for each.
    """
    if p is not None and p <= 2:
        raise PreconditionError(f"the multiplier must satisfy p > 2, got p={p}")
    counts = CensusCounts(n, p)

    def visit(mask: int, D: Digraph):
        counts.visited += 1
        k = min(D.out_degrees())
        g = walks.girth(D).value
        result = _theorem6_check(D, k, g)
        if result is not None:
            counts.thm6_members += 1
            counts.thm6_identity_ok += result[0]
            if not result[0] and counts.first_failure_mask is None:
                counts.first_failure_mask, counts.first_failure_kind = mask, "thm6"
            if keep_members:
                counts.thm6_member_masks.append(mask)
        if p is not None and conjectures.corollary7_flags(D, p, k, g).all_hold:
            counts.cor7_members += 1
            order, min_out, amp_girth = products.amplified_parameters(D, p)
            identity = order == p * n and min_out == k and amp_girth.value == p * g
            counts.cor7_identity_ok += identity
            if not identity and counts.first_failure_mask is None:
                counts.first_failure_mask, counts.first_failure_kind = mask, "cor7"
            if keep_members:
                counts.cor7_member_masks.append(mask)

    enumerate_digraphs(SearchQuery(n=n, min_out=1), visit, progress=progress)
    return counts


def corollary7_sweep(n_max: int, ps: Sequence[int] = (3, 4, 5)) -> Dict[int, Tuple[int, int]]:
    """p -> (members, members whose product girth is exactly p*g), over 2 <= n <= n_max."""
    out = {}
    for p in ps:
        members = ok = 0
        for n in range(2, n_max + 1):
            counts = hypothesis_census(n, p)
            members += counts.cor7_members
            ok += counts.cor7_identity_ok
        out[p] = (members, ok)
    return out
