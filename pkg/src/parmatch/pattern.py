"""Pattern preprocessing: prefix periods, compressed tables, prefix ladder.

Everything the two matchers need from the pattern is computed here, once,
and is immutable afterwards:

* the parameterized period of every prefix (via a KMP-style failure
  construction over predecessor values, cross-checked against brute force
  in the tests);
* the run-length encoding of those periods (the period is non-decreasing
  in the prefix length, so equal-period intervals partition [1, m]);
* the O(rho)-word encoding of pred(P): per residue class mod rho the
  column is a block of zeros followed by a single positive constant;
* the list of first occurrences (positions with pred == 0);
* for the randomized matcher, the prefix ladder P_0..P_s and the
  per-level fingerprints of the second halves of the ladder prefixes.

Preprocessing may use O(m) memory; only streaming-phase state is
space-bounded, so matchers keep references to the compressed tables but
never to the full period or predecessor arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import StructuralViolation, UsageError
from .fingerprint import FieldContext, Fingerprint, fp_of_sequence
from .predecessor import pred_string, window_relative


def ceil_log2(m: int) -> int:
    """Ceiling of log2 with a floor of 1, so the slack never degenerates."""
    return max(1, (m - 1).bit_length())


def compute_prefix_pperiods(pattern) -> list[int]:
    """Parameterized period of every prefix; entry [r] is for length r.

    Index 0 is unused.  Built from the parameterized failure function:
    the longest proper border of P[0..r-1] under p-matching, extended one
    position at a time exactly as in classic KMP but comparing
    window-relative predecessor values.
    """
    m = len(pattern)
    if m == 0:
        raise UsageError("empty pattern")
    pp = pred_string(pattern)
    fail = [0] * (m + 1)  # longest proper p-border per prefix length
    for r in range(2, m + 1):
        j = r - 1  # index of the prefix's last symbol
        b = fail[r - 1]
        while b > 0 and window_relative(pp[j], b) != pp[b]:
            b = fail[b]
        # Extending at b == 0 always succeeds: two single symbols p-match,
        # so every prefix of length >= 2 has a border of at least 1.
        fail[r] = b + 1
    periods = [0] * (m + 1)
    for r in range(1, m + 1):
        periods[r] = r - fail[r]
    return periods


@dataclass(frozen=True)
class CompressedPred:
    """pred(P) in O(rho) words: per residue j, zeros for the first ks[j]
    rows of the column, the constant cs[j] afterwards."""

    rho: int
    m: int
    ks: list[int]
    cs: list[int]

    def value(self, i: int) -> int:
        if not 0 <= i < self.m:
            raise UsageError(f"index {i} outside [0, {self.m})")
        j = i % self.rho
        return 0 if i // self.rho < self.ks[j] else self.cs[j]


def build_compressed_pred(pattern, rho: int, pred=None) -> CompressedPred:
    """Compress pred(P) given the pattern's parameterized period.

    The zeros-then-constant column shape is guaranteed when rho really is
    the period; a violation therefore indicates a wrong rho and raises.
    """
    if pred is None:
        pred = pred_string(pattern)
    m = len(pred)
    ks = [0] * rho
    cs = [0] * rho
    seen_const = [False] * rho
    for i, v in enumerate(pred):
        j = i % rho
        if not seen_const[j]:
            if v == 0:
                ks[j] += 1
            else:
                seen_const[j] = True
                cs[j] = v
        else:
            if v != cs[j]:
                raise StructuralViolation(
                    f"residue {j}: pred column not zeros-then-constant "
                    f"({v} after {cs[j]}); rho={rho} is not the period"
                )
    return CompressedPred(rho=rho, m=m, ks=ks, cs=cs)


def pred_access(cp: CompressedPred, i: int) -> int:
    """pred(P)[i] from the compressed form in O(1)."""
    return cp.value(i)


@dataclass(frozen=True)
class RunLengthPeriodTable:
    """Equal-period intervals of prefix lengths, ascending.

    runs[k] = (period, lo, hi): every prefix length in [lo, hi] has this
    parameterized period.  Intervals partition [1, m] and period values
    strictly increase run to run.
    """

    runs: list[tuple[int, int, int]]

    def expand(self, m: int) -> list[int]:
        out = [0] * (m + 1)
        for rho, lo, hi in self.runs:
            for r in range(lo, hi + 1):
                out[r] = rho
        return out


def build_run_table(periods: list[int]) -> RunLengthPeriodTable:
    m = len(periods) - 1
    runs: list[tuple[int, int, int]] = []
    lo = 1
    for r in range(2, m + 1):
        if periods[r] != periods[lo]:
            if periods[r] < periods[lo]:
                raise StructuralViolation("prefix periods must be non-decreasing")
            runs.append((periods[lo], lo, r - 1))
            lo = r
    runs.append((periods[lo], lo, m))
    return RunLengthPeriodTable(runs=runs)


def build_first_occurrences(pred: list[int]) -> list[int]:
    """Positions whose predecessor value is 0, ascending; 0 always included."""
    return [j for j, v in enumerate(pred) if v == 0]


@dataclass(frozen=True)
class PrefixLadder:
    """Geometric prefix lengths for the randomized matcher.

    lengths[0] is the shortest prefix whose period exceeds 3*delta;
    intermediate lengths double; the last is m - 4*delta.  mode is
    "rand" when the ladder exists, "det" when the pattern routes to the
    deterministic matcher (with the reason recorded).
    """

    delta: int
    mode: str
    reason: str = ""
    lengths: list[int] = field(default_factory=list)

    @property
    def m0(self) -> int:
        return self.lengths[0]

    @property
    def s(self) -> int:
        return len(self.lengths) - 1


@dataclass(frozen=True)
class PatternFingerprints:
    """Per-level comparison targets plus the explicit 4*delta tail.

    level_fps[l] (1-based) is the fingerprint of pred(P)[m_{l-1} .. m_l - 1]
    rebased to r^0; p0_last is pred(P)[m_0 - 1] for the final-character
    rule; tail_pred holds pred(P)[m - 4*delta ..] for the direct check of
    the last 4*delta positions.
    """

    level_fps: list[Fingerprint | None]
    p0_last: int
    tail_pred: list[int]


def build_ladder(
    pattern,
    sigma: int,
    ctx: FieldContext | None,
    periods: list[int] | None = None,
    pred: list[int] | None = None,
):
    """Build the prefix ladder, or decide the deterministic fallback.

    Returns (ladder, fingerprints-or-None, run_table, first_occurrences).
    Fallback triggers when m <= 14*delta, when the whole pattern's period
    is at most 3*delta, and in the corner where the shortest qualifying
    prefix sits too close to the end of the pattern for the ladder gaps
    to stay at least 3*delta.
    """
    m = len(pattern)
    if periods is None:
        periods = compute_prefix_pperiods(pattern)
    if pred is None:
        pred = pred_string(pattern)
    run_table = build_run_table(periods)
    first_occ = build_first_occurrences(pred)
    delta = sigma * ceil_log2(m)

    def fallback(reason: str):
        ladder = PrefixLadder(delta=delta, mode="det", reason=reason)
        return ladder, None, run_table, first_occ

    if m <= 14 * delta:
        return fallback(f"m={m} <= 14*delta={14 * delta}")
    if periods[m] <= 3 * delta:
        return fallback(f"period {periods[m]} <= 3*delta={3 * delta}")
    # Shortest prefix with period above the slack threshold.
    m0 = next(r for r in range(1, m + 1) if periods[r] > 3 * delta)
    if m0 <= m // 2:
        lengths = [m0]
        while lengths[-1] * 2 <= m // 2:
            lengths.append(lengths[-1] * 2)
        lengths.append(m - 4 * delta)
    elif m0 <= m - 7 * delta:
        # Degenerate ladder: the qualifying prefix is past the midpoint,
        # so the doubling sequence is empty and the final prefix is its
        # sole successor.
        lengths = [m0, m - 4 * delta]
    else:
        return fallback(
            f"shortest high-period prefix m0={m0} leaves a gap below 3*delta"
        )
    ladder = PrefixLadder(delta=delta, mode="rand", lengths=lengths)
    _check_ladder(ladder, m, periods)
    if ctx is None:
        # Deterministic-only callers need the routing decision but no
        # fingerprints.
        return ladder, None, run_table, first_occ
    fps = _build_fingerprints(ctx, ladder, pred, m, delta)
    return ladder, fps, run_table, first_occ


def _check_ladder(ladder: PrefixLadder, m: int, periods: list[int]) -> None:
    lens = ladder.lengths
    d = ladder.delta
    if periods[lens[0]] <= 3 * d:
        raise StructuralViolation("ladder base period too small")
    if lens[0] > 1 and periods[lens[0] - 1] > 3 * d:
        raise StructuralViolation("ladder base is not the shortest prefix")
    if lens[-1] != m - 4 * d:
        raise StructuralViolation("ladder must end at m - 4*delta")
    for a, b in zip(lens, lens[1:]):
        if b - a < 3 * d:
            raise StructuralViolation(f"ladder gap {b - a} below 3*delta={3 * d}")
    if len(lens) >= 2 and lens[-2] > m // 2:
        if len(lens) != 2:
            raise StructuralViolation("oversized intermediate ladder level")


def _build_fingerprints(
    ctx: FieldContext, ladder: PrefixLadder, pred: list[int], m: int, delta: int
) -> PatternFingerprints:
    lens = ladder.lengths
    level_fps: list[Fingerprint | None] = [None]
    for prev, cur in zip(lens, lens[1:]):
        level_fps.append(fp_of_sequence(ctx, pred[prev:cur]))
    return PatternFingerprints(
        level_fps=level_fps,
        p0_last=pred[lens[0] - 1],
        tail_pred=list(pred[m - 4 * delta :]),
    )


@dataclass(frozen=True)
class PatternProfile:
    """Everything preprocessing produces, bundled.

    The full period and predecessor arrays are preprocessing artifacts;
    matchers only hold the compressed pieces.
    """

    m: int
    sigma: int
    periods: list[int]
    pred: list[int]
    compressed: CompressedPred
    run_table: RunLengthPeriodTable
    first_occ: list[int]
    ladder: PrefixLadder
    fingerprints: PatternFingerprints | None

    @property
    def rho(self) -> int:
        return self.periods[self.m]


def build_profile(
    pattern, sigma: int, ctx: FieldContext | None = None
) -> PatternProfile:
    m = len(pattern)
    if m == 0:
        raise UsageError("empty pattern")
    for j, sym in enumerate(pattern):
        if not 0 <= sym < sigma:
            raise UsageError(f"pattern symbol {sym} at {j} outside [0, {sigma})")
    periods = compute_prefix_pperiods(pattern)
    pred = pred_string(pattern)
    rho = periods[m]
    compressed = build_compressed_pred(pattern, rho, pred=pred)
    ladder, fps, run_table, first_occ = build_ladder(
        pattern, sigma, ctx, periods=periods, pred=pred
    )
    return PatternProfile(
        m=m,
        sigma=sigma,
        periods=periods,
        pred=pred,
        compressed=compressed,
        run_table=run_table,
        first_occ=first_occ,
        ladder=ladder,
        fingerprints=fps,
    )
