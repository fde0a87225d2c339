"""Counting-rule verdicts and the variance-identification decision.

The rule checked throughout: every set of q columns of the pattern must touch
at least 2q+s distinct nonzero rows (1 <= q <= r). It is verified three ways:

* brute force over all column subsets (the oracle; exponential in r),
* for s=1, a minimum weighted vertex cover computed as a network min-cut
  (polynomial; the rule holds iff the cover weighs at least r(2r+1)),
* for s=0, a matching of size 2r in the column-duplicated bipartite graph,
  which doubles as a constructive witness: it splits 2r rows into two groups
  whose square submatrices both carry a reordered nonzero diagonal.

s >= 2 reduces to s=1 on every deletion of s-1 rows.

A passing s=1 verdict guarantees generic variance identification; a failing
one only means the sufficient condition does not apply (the rule is not
necessary), which is what the `sufficient_only` flag on verdict records says.
"""

from dataclasses import dataclass, replace
from itertools import combinations
from math import comb

import numpy as np

from factorid import _kernels
from factorid.bipartite import (
    Matching,
    duplicate_columns,
    generate_bipartite,
    is_rcm,
    maximum_matching,
    minimum_vertex_cover,
)
from factorid.errors import (
    DeletionBudgetExceededError,
    EmptyPatternError,
    InfeasibleDimensionsError,
    NoDecompositionError,
    TooManyColumnsError,
    UntrimmedPatternError,
)
from factorid.flow import build_identification_network, max_flow_min_cut, mwvc_from_cut
from factorid.pattern import SparsityPattern, TrimReport, nonzero_row_count, trim

METHOD_BRUTEFORCE = "bruteforce"
METHOD_MINCUT = "mincut"
METHOD_DUPMATCHING = "dupmatching"
METHOD_DELETION_WRAPPER = "deletion_wrapper"


@dataclass(frozen=True)
class FailWitness:
    """A violating column subset: it touches fewer than 2q+s nonzero rows."""

    columns: tuple[int, ...]
    nonzero_rows: int
    deleted_rows: tuple[int, ...] | None = None


@dataclass(frozen=True)
class PassWitness:
    mincut_value: int | None = None
    matching: Matching | None = None
    note: str | None = None


@dataclass(frozen=True)
class CountingRuleVerdict:
    r: int
    s: int
    holds: bool
    method: str
    witness_fail: FailWitness | None = None
    witness_pass: PassWitness | None = None
    mincut_value: int | None = None


@dataclass(frozen=True)
class RcmDecomposition:
    """Two disjoint row groups, each a square submatrix with a reordered
    nonzero diagonal; read off a size-2r matching in the duplicated graph."""

    deleted_rows: tuple[int, ...]
    rows_a: tuple[int, ...]
    rows_b: tuple[int, ...]
    matching: Matching


@dataclass(frozen=True)
class RankFailure:
    trial: int | None
    deleted_rows: tuple[int, ...]
    group: str
    numerical_rank: int | None


@dataclass(frozen=True)
class GenericCheckReport:
    trials: int
    seed: int
    tolerance: float
    deletions_tested: int
    failures: tuple[RankFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class IdentificationVerdict:
    """Top-level decision. `identified=False` means "not guaranteed by the
    sufficient condition", never "proven unidentifiable"."""

    identified: bool
    effective_r: int
    trim: TrimReport
    detail: CountingRuleVerdict | None
    degenerate: bool
    sufficient_only: bool = True


def _require_trimmed(p: SparsityPattern) -> None:
    if p.r == 0:
        raise EmptyPatternError("pattern has no columns")
    if any(m == 0 for m in p.col_masks) or any(m == 0 for m in p.row_masks):
        raise UntrimmedPatternError("pattern has an all-zero row or column")


def counting_rule_bruteforce(
    p: SparsityPattern, s: int, max_columns: int = 24
) -> CountingRuleVerdict:
    """Check the rule by enumerating all nonempty column subsets.

    The first violating subset (smallest size, lexicographic within a size)
    is reported. Refuses r > max_columns: the sweep visits 2^r - 1 subsets.
    """
    if s < 0:
        raise ValueError("s must be non-negative")
    if p.r > max_columns:
        raise TooManyColumnsError(f"r={p.r} exceeds the brute-force cap {max_columns}")
    holds, subset, count = _kernels.counting_sweep(p.r, s, list(p.col_masks))
    if holds:
        return CountingRuleVerdict(
            r=p.r, s=s, holds=True, method=METHOD_BRUTEFORCE,
            witness_pass=PassWitness(note=f"all {2 ** p.r - 1} column subsets pass"),
        )
    return CountingRuleVerdict(
        r=p.r, s=s, holds=False, method=METHOD_BRUTEFORCE,
        witness_fail=FailWitness(columns=tuple(subset), nonzero_rows=count),
    )


def counting_rule_s1(p: SparsityPattern) -> CountingRuleVerdict:
    """Polynomial s=1 check via the identification network's minimum cut.

    The rule holds iff the minimum weighted vertex cover weighs at least
    r(2r+1). On failure the columns excluded from the cover form a violating
    subset: q of them touching at most 2q rows.
    """
    network = build_identification_network(p)
    cut = max_flow_min_cut(network)
    r = p.r
    threshold = r * (2 * r + 1)
    if cut.value >= threshold:
        return CountingRuleVerdict(
            r=r, s=1, holds=True, method=METHOD_MINCUT,
            witness_pass=PassWitness(mincut_value=cut.value),
            mincut_value=cut.value,
        )
    cover = mwvc_from_cut(network, cut)
    excluded = tuple(sorted(set(range(r)) - cover.cols))
    count = nonzero_row_count(p, excluded)
    assert count <= 2 * len(excluded)
    return CountingRuleVerdict(
        r=r, s=1, holds=False, method=METHOD_MINCUT,
        witness_fail=FailWitness(columns=excluded, nonzero_rows=count),
        mincut_value=cut.value,
    )


def counting_rule_s0(p: SparsityPattern) -> CountingRuleVerdict:
    """s=0 check: the column-duplicated graph must have a matching of size 2r.

    On failure, the columns with an uncovered copy in the minimum vertex
    cover form a violating subset (q columns touching at most 2q-1 rows).
    """
    _require_trimmed(p)
    r = p.r
    doubled = duplicate_columns(generate_bipartite(p))
    mm = maximum_matching(doubled)
    if mm.size == 2 * r:
        return CountingRuleVerdict(
            r=r, s=0, holds=True, method=METHOD_DUPMATCHING,
            witness_pass=PassWitness(
                matching=mm, note="matching saturates all columns and duplicates"
            ),
        )
    cover = minimum_vertex_cover(doubled, mm)
    excluded = tuple(
        j for j in range(r) if j not in cover.cols or j + r not in cover.cols
    )
    count = nonzero_row_count(p, excluded)
    assert count <= 2 * len(excluded) - 1
    return CountingRuleVerdict(
        r=r, s=0, holds=False, method=METHOD_DUPMATCHING,
        witness_fail=FailWitness(columns=excluded, nonzero_rows=count),
    )


def counting_rule(
    p: SparsityPattern, s: int, max_deletions: int = 10**6
) -> CountingRuleVerdict:
    """Dispatch on s: matching route (s=0), min-cut route (s=1), or the
    row-deletion wrapper (s >= 2: the rule holds iff every deletion of s-1
    rows leaves a pattern passing the s=1 rule).

    For s >= 2, m < 2r+s is rejected outright (the rule cannot hold there:
    the full column set alone needs 2r+s rows). For s <= 1 such patterns
    simply fail with a witness, which is what callers downstream expect.
    """
    if s < 0:
        raise ValueError("s must be non-negative")
    if s == 0:
        return counting_rule_s0(p)
    if s == 1:
        return counting_rule_s1(p)
    _require_trimmed(p)
    m, r = p.m, p.r
    if m < 2 * r + s:
        raise InfeasibleDimensionsError(
            f"m={m} < 2r+s={2 * r + s}: the rule cannot hold at these dimensions"
        )
    n_deletions = comb(m, s - 1)
    if n_deletions > max_deletions:
        raise DeletionBudgetExceededError(
            f"{n_deletions} deletions of {s - 1} rows exceed the budget {max_deletions}"
        )
    full_mask = (1 << m) - 1
    col_masks = p.col_masks
    for deleted in combinations(range(m), s - 1):
        rem_mask = full_mask
        for i in deleted:
            rem_mask ^= 1 << i
        emptied = next((j for j in range(r) if col_masks[j] & rem_mask == 0), None)
        if emptied is not None:
            return CountingRuleVerdict(
                r=r, s=s, holds=False, method=METHOD_DELETION_WRAPPER,
                witness_fail=FailWitness(
                    columns=(emptied,),
                    nonzero_rows=nonzero_row_count(p, (emptied,)),
                    deleted_rows=deleted,
                ),
            )
        gone = set(deleted)
        remainder = SparsityPattern(
            tuple(row for i, row in enumerate(p.entries) if i not in gone)
        )
        inner = counting_rule_s1(remainder)
        if not inner.holds:
            cols = inner.witness_fail.columns
            count = nonzero_row_count(p, cols)
            assert count <= 2 * len(cols) + s - 1
            return CountingRuleVerdict(
                r=r, s=s, holds=False, method=METHOD_DELETION_WRAPPER,
                witness_fail=FailWitness(
                    columns=cols, nonzero_rows=count, deleted_rows=deleted
                ),
            )
    return CountingRuleVerdict(
        r=r, s=s, holds=True, method=METHOD_DELETION_WRAPPER,
        witness_pass=PassWitness(
            note=f"all {n_deletions} deletions of {s - 1} rows pass the s=1 rule"
        ),
    )


def rcm_decomposition(
    p: SparsityPattern, deleted_rows: frozenset[int] | set[int] | tuple[int, ...] = ()
) -> RcmDecomposition | None:
    """Split the remaining rows into two groups of r whose square submatrices
    each have a reordered nonzero diagonal, or None when impossible.

    Group A collects the rows matched to the original columns (ordered by
    column), group B those matched to the duplicates. All indices refer to
    the input pattern's coordinates.
    """
    deleted = frozenset(deleted_rows)
    for i in deleted:
        if not (0 <= i < p.m):
            raise IndexError(f"row index {i} out of range for m={p.m}")
    kept = [i for i in range(p.m) if i not in deleted]
    r = p.r
    if len(kept) < 2 * r:
        return None
    remainder = SparsityPattern(tuple(p.entries[i] for i in kept))
    doubled = duplicate_columns(generate_bipartite(remainder))
    mm = maximum_matching(doubled)
    if mm.size < 2 * r:
        return None
    col_to_row = mm.column_to_row()
    rows_a = tuple(kept[col_to_row[j]] for j in range(r))
    rows_b = tuple(kept[col_to_row[j + r]] for j in range(r))
    for rows in (rows_a, rows_b):
        square = SparsityPattern(tuple(p.entries[i] for i in rows))
        ok, _ = is_rcm(square)
        assert ok, "matched row group lost its diagonal"
    remapped = Matching(frozenset((c, kept[i]) for c, i in mm.pairs))
    return RcmDecomposition(
        deleted_rows=tuple(sorted(deleted)),
        rows_a=rows_a,
        rows_b=rows_b,
        matching=remapped,
    )


def _sample_deletions(rng, m: int, s: int, cap: int) -> list[tuple[int, ...]]:
    total = comb(m, s)
    if total <= cap:
        return list(combinations(range(m), s))
    if total <= 4 * cap:
        everything = list(combinations(range(m), s))
        picked = rng.choice(total, size=cap, replace=False)
        return [everything[i] for i in sorted(picked.tolist())]
    seen: set[tuple[int, ...]] = set()
    while len(seen) < cap:
        seen.add(tuple(sorted(rng.choice(m, size=s, replace=False).tolist())))
    return sorted(seen)


def generic_rank_check(
    p: SparsityPattern,
    s: int,
    trials: int = 100,
    tolerance: float = 1e-8,
    seed: int = 0,
    deletion_cap: int = 200,
    diagnose: bool = False,
) -> GenericCheckReport:
    """Numerically probe the row-deletion property with random fillings.

    Each trial fills the 1-cells with independent standard normal draws and
    checks, for every tested deletion of s rows, that both row groups of the
    decomposition have numerical rank r (smallest singular value above
    tolerance times the largest). Deletions are enumerated exhaustively up
    to `deletion_cap`, else sampled per trial from the trial's own stream.

    A missing decomposition signals that the counting rule fails for that
    deletion; it raises NoDecompositionError unless diagnose=True, in which
    case it is recorded and the deletion skipped.
    """
    m, r = p.m, p.r
    if s < 0 or s > m:
        raise ValueError(f"cannot delete {s} of {m} rows")
    rng_streams = np.random.SeedSequence(seed).spawn(trials)
    nz = np.nonzero(np.array(p.entries, dtype=np.int64).reshape(m, r))
    enumerable = comb(m, s) <= deletion_cap
    fixed_deletions = list(combinations(range(m), s)) if enumerable else None
    decompositions: dict[tuple[int, ...], RcmDecomposition | None] = {}
    failures: list[RankFailure] = []
    tested: set[tuple[int, ...]] = set()

    def decomposition_for(deletion: tuple[int, ...]) -> RcmDecomposition | None:
        if deletion not in decompositions:
            dec = rcm_decomposition(p, deletion)
            if dec is None:
                if not diagnose:
                    raise NoDecompositionError(
                        f"no row-group decomposition after deleting rows {deletion}"
                    )
                failures.append(
                    RankFailure(
                        trial=None, deleted_rows=deletion,
                        group="decomposition", numerical_rank=None,
                    )
                )
            decompositions[deletion] = dec
        return decompositions[deletion]

    for trial in range(trials):
        rng = np.random.default_rng(rng_streams[trial])
        deletions = (
            fixed_deletions
            if enumerable
            else _sample_deletions(rng, m, s, deletion_cap)
        )
        beta = np.zeros((m, r))
        beta[nz] = rng.standard_normal(len(nz[0]))
        for deletion in deletions:
            tested.add(deletion)
            dec = decomposition_for(deletion)
            if dec is None:
                continue
            for group, rows in (("A", dec.rows_a), ("B", dec.rows_b)):
                sv = np.linalg.svd(beta[list(rows), :], compute_uv=False)
                rank = int(np.count_nonzero(sv > tolerance * sv[0])) if sv[0] > 0 else 0
                if rank < r:
                    failures.append(
                        RankFailure(
                            trial=trial, deleted_rows=deletion,
                            group=group, numerical_rank=rank,
                        )
                    )
    return GenericCheckReport(
        trials=trials,
        seed=seed,
        tolerance=tolerance,
        deletions_tested=len(tested),
        failures=tuple(failures),
    )


def verdict_in_original_coords(
    verdict: CountingRuleVerdict, report: TrimReport
) -> CountingRuleVerdict:
    """Map a verdict computed on a trimmed pattern back to original indices."""
    if not report.removed_zero_columns and not report.removed_zero_rows:
        return verdict
    wf = verdict.witness_fail
    if wf is not None:
        wf = replace(
            wf,
            columns=tuple(report.original_column(j) for j in wf.columns),
            deleted_rows=(
                tuple(report.original_row(i) for i in wf.deleted_rows)
                if wf.deleted_rows is not None
                else None
            ),
        )
    wp = verdict.witness_pass
    if wp is not None and wp.matching is not None:
        r_eff = report.effective_r
        r_orig = report.original_r
        pairs = frozenset(
            (
                report.original_column(c)
                if c < r_eff
                else r_orig + report.original_column(c - r_eff),
                report.original_row(i),
            )
            for c, i in wp.matching.pairs
        )
        wp = replace(wp, matching=Matching(pairs))
    return replace(verdict, witness_fail=wf, witness_pass=wp)


def variance_identified(p_raw: SparsityPattern) -> IdentificationVerdict:
    """Decide whether the pattern guarantees generic variance identification.

    Trims zero rows/columns first. A factor-free pattern after trimming is
    trivially identified (the covariance is purely idiosyncratic). Otherwise
    the s=1 rule on the trimmed pattern decides; witnesses are reported in
    the caller's original coordinates.
    """
    trimmed, report = trim(p_raw)
    if trimmed.r == 0:
        return IdentificationVerdict(
            identified=True,
            effective_r=0,
            trim=report,
            detail=None,
            degenerate=True,
        )
    verdict = verdict_in_original_coords(counting_rule_s1(trimmed), report)
    return IdentificationVerdict(
        identified=verdict.holds,
        effective_r=report.effective_r,
        trim=report,
        detail=verdict,
        degenerate=False,
    )
