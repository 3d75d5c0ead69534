"""Brute-force ground truth for parameterized matching.

Everything here is derived directly from the definitions: a window
matches iff its predecessor string equals the pattern's, and the
parameterized period is the smallest self-overlap shift under which a
string matches itself.  The module deliberately shares no code with the
engine (it recomputes predecessor strings its own way) so that agreement
between the two is meaningful evidence.

The window enumeration is vectorized with numpy but stays a literal
enumeration: for every window start the per-offset predecessor condition
is evaluated, pruning starts as soon as one offset rules them out.  A
pure-Python path (`*_slow`) exists for cross-checking the vectorized one.
"""

from __future__ import annotations

import numpy as np

from .errors import UsageError

# Sentinel distance for "no previous occurrence"; larger than any offset.
_FAR = np.int64(1 << 62)


def _pred(seq) -> list[int]:
    """Predecessor string by definition (0 = no previous occurrence)."""
    last: dict = {}
    out = []
    for i, sym in enumerate(seq):
        if sym in last:
            out.append(i - last[sym])
        else:
            out.append(0)
        last[sym] = i
    return out


def _pred_far(seq) -> np.ndarray:
    """Predecessor distances with _FAR for first occurrences (numpy)."""
    last: dict = {}
    out = np.empty(len(seq), dtype=np.int64)
    for i, sym in enumerate(seq):
        if sym in last:
            out[i] = i - last[sym]
        else:
            out[i] = _FAR
        last[sym] = i
    return out


def naive_pmatch(a, b) -> bool:
    """Do two equal-length sequences parameterize-match?"""
    if len(a) != len(b):
        raise UsageError(f"length mismatch: {len(a)} != {len(b)}")
    return _pred(a) == _pred(b)


def relabelling_pmatch(a, b) -> bool:
    """Independent second witness: try to build the injective relabelling
    directly instead of comparing predecessor strings."""
    if len(a) != len(b):
        raise UsageError(f"length mismatch: {len(a)} != {len(b)}")
    fwd: dict = {}
    bwd: dict = {}
    for x, y in zip(a, b):
        if fwd.setdefault(x, y) != y or bwd.setdefault(y, x) != x:
            return False
    return True


def naive_all_matches_slow(pattern, text) -> list[int]:
    """Window-by-window enumeration; reference for the vectorized path."""
    m, n = len(pattern), len(text)
    if m > n:
        return []
    pp = _pred(pattern)
    return [i for i in range(n - m + 1) if _pred(text[i : i + m]) == pp]


def naive_all_matches(pattern, text) -> list[int]:
    """All window starts where the pattern parameterize-matches the text.

    For each offset j the surviving window starts i must satisfy
    pred(window_i)[j] == pred(pattern)[j], where the window value is the
    global text distance if it stays inside the window and 0 otherwise.
    Starts are pruned offset by offset.
    """
    m, n = len(pattern), len(text)
    if m == 0:
        raise UsageError("empty pattern")
    if m > n:
        return []
    pp = _pred(pattern)
    g = _pred_far(text)
    alive = np.arange(n - m + 1, dtype=np.int64)
    for j in range(m):
        col = g[alive + j]
        if pp[j] == 0:
            keep = col > j
        else:
            keep = col == pp[j]
        alive = alive[keep]
        if alive.size == 0:
            break
    return alive.tolist()


def naive_pperiod_slow(pattern) -> int:
    m = len(pattern)
    for rho in range(1, m):
        if _pred(pattern[: m - rho]) == _pred(pattern[rho:]):
            return rho
    return m


def naive_pperiod(pattern) -> int:
    """Smallest shift under which the pattern matches itself.

    Shift m compares empty overlaps and is vacuously a match, so the
    result is always in [1, m].  Vectorized the same way as the window
    enumeration: shift rho survives offset j iff the window-relative
    distance at position rho+j equals pred(pattern)[j]; a shift whose
    whole overlap has been scanned without elimination is a match, and
    offsets are scanned in one pass so the first shift to retire is the
    smallest surviving one.
    """
    m = len(pattern)
    if m == 0:
        raise UsageError("empty pattern")
    if m == 1:
        return 1
    pp = _pred(pattern)
    g = _pred_far(pattern)
    best = m  # shift m compares empty overlaps, vacuously a match
    alive = np.arange(1, m, dtype=np.int64)
    for j in range(m - 1):
        if alive.size == 0:
            break
        # Retire shifts whose whole overlap [0, m-rho) has been verified.
        # A smaller shift may still be alive with offsets left to check,
        # so retirement only updates the bound; it does not end the scan.
        done = alive >= m - j
        if np.any(done):
            cand = int(alive[done].min())
            if cand < best:
                best = cand
            alive = alive[~done]
            alive = alive[alive < best]
            if alive.size == 0:
                break
        col = g[alive + j]
        if pp[j] == 0:
            keep = col > j
        else:
            keep = col == pp[j]
        alive = alive[keep]
    if alive.size:
        cand = int(alive.min())
        if cand < best:
            best = cand
    return best


def verify_match_structure(pattern, text, i_left):
    """Split the matches inside a 3m/2 window into (explicit, progression).

    Enumerates every match of the pattern within text[i_left : i_left +
    3m/2], takes the maximal tail run whose consecutive gaps are exactly
    the pattern's parameterized period, and returns (Y, A) with Y the
    explicit prefix and A the progression.  Raises UsageError if i_left
    is not itself a match, and returns a violation string instead of a
    split if the explicit set exceeds 6 * (distinct pattern symbols) or a
    progression block-equality fails.
    """
    m = len(pattern)
    window = text[i_left : i_left + (3 * m) // 2]
    matches = [i_left + x for x in naive_all_matches(pattern, window)]
    if not matches or matches[0] != i_left:
        raise UsageError(f"no match at i_left={i_left}")
    rho = naive_pperiod(pattern)
    # Maximal tail progression with common difference exactly rho.
    k = len(matches) - 1
    while k > 0 and matches[k] - matches[k - 1] == rho:
        k -= 1
    prog = matches[k:]
    expl = matches[:k]
    sigma_p = len(set(pattern))
    if len(expl) > 6 * sigma_p:
        return None, None, f"explicit set has {len(expl)} > {6 * sigma_p} entries"
    if expl and prog and max(expl) >= min(prog):
        return None, None, "explicit entries overlap the progression"
    # Block equality along the progression: the rho predecessor values
    # entering the window are identical for every progression member.
    # Guaranteed only in the regime where a genuine progression exists
    # (small period, all symbols seen early); outside it the tail run is
    # incidental and the check does not apply.
    alpha = _first_occurrence_span(pattern)
    if len(prog) >= 2 and rho <= m // 8 and alpha < m // 4:
        gt = _pred(text)
        first = gt[prog[0] + m - rho : prog[0] + m]
        for i in prog[1:]:
            if gt[i + m - rho : i + m] != first:
                return None, None, f"progression block mismatch at {i}"
    return expl, prog, None


def _first_occurrence_span(pattern) -> int:
    """Smallest alpha such that every distinct symbol occurs in P[0..alpha]."""
    seen = set()
    distinct = len(set(pattern))
    for i, sym in enumerate(pattern):
        seen.add(sym)
        if len(seen) == distinct:
            return i
    return len(pattern) - 1
