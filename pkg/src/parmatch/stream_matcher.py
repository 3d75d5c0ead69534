"""The randomized streaming matcher: constant work per symbol, small space.

Per arriving symbol four cooperative phases run inside one single-threaded
step:

* the base phase maintains the global predecessor value, the running
  prefix fingerprint of the predecessor string, and circular histories of
  the last 4*delta fingerprints, powers and predecessor values
  (delta = |alphabet| * ceil(log2 m) is the scheduling slack);
* phase A runs the deterministic matcher on the ladder base minus its
  last symbol, applies the final-character rule, and enqueues base-prefix
  matches with their prefix fingerprints;
* phase B prepares and consumes the zeroing queues: arrivals whose
  predecessor distance exceeds the base length enter a small buffer and
  are distributed to the per-level queues one level per arrival (Bdelta);
  one ladder level per arrival advances its candidate check (Bphi):
  fingerprint split, a bounded batch of zeroing-queue entries, then the
  comparison against the precomputed level fingerprint;
* phase C extends final-level matches over the last 4*delta positions by
  direct predecessor comparison, a bounded number per arrival, and emits
  the verdict exactly at the arrival where the window closes.

Every capacity and deadline the analysis guarantees is asserted at
runtime; a breach raises StructuralViolation rather than degrading
silently.  Patterns whose parameterized period is at most 3*delta, or
that are shorter than 14*delta, route wholesale to the deterministic
matcher.
"""

from __future__ import annotations

from collections import deque

from .det_matcher import DetCore, DetMatcher
from .errors import AlphabetError, ConfigError, StructuralViolation
from .fingerprint import FieldContext, context_new
from .match_queue import MatchQueue
from .pattern import build_profile
from .predecessor import NEVER

_IDLE, _WAIT, _SCAN = 0, 1, 2

# Bphi batch: the zeroing queue holds at most 12*sigma entries and must be
# scanned within sigma round-robin turns.
_SCAN_BATCH = 13
# Process C: 4*delta comparisons spread over the final delta arrivals.
_C_BUDGET = 5

# Hard per-arrival ceiling on counted operations (field multiplications and
# buffer touches), summed over the phase caps: base 7, phase A 6, Bdelta 5,
# Bphi 16 (scan turn), C 7.  Independent of the pattern length by
# construction; enforced per arrival.
OP_BUDGET = 7 + 6 + 5 + (1 + _SCAN_BATCH + 2) + (2 + _C_BUDGET)


class StreamMatcher:
    """Streaming matcher for one pattern over a dense alphabet."""

    __slots__ = (
        "m",
        "sigma",
        "mode",
        "ctx",
        "p",
        "det",
        "delta",
        "H",
        "s",
        "mlen",
        "m0",
        "i",
        "phi",
        "table",
        "hist_fp",
        "hist_rneg",
        "hist_rpow",
        "hist_pred",
        "suba",
        "a_prev",
        "p0_last",
        "bbuf",
        "bcur",
        "bnext",
        "dq_bufs",
        "dq_next",
        "dq_cap",
        "lv_phase",
        "lv_ip",
        "lv_fpprev",
        "lv_fpl",
        "lv_acc",
        "lv_rnb",
        "lv_cur",
        "lv_end",
        "gap_pow",
        "level_fp",
        "mq",
        "c_ip",
        "c_k",
        "tail_target",
        "tail_len",
        "mq_words",
        "static_words",
        "ops_last",
        "ops_max",
        "words_peak",
        "b_peak",
        "debug_checks",
    )

    def __init__(
        self,
        pattern,
        sigma: int,
        ctx: FieldContext | None = None,
        mode: str = "auto",
        prime_bits: int = 61,
        seed: int = 0,
    ):
        if mode not in ("auto", "det", "rand"):
            raise ConfigError(f"unknown mode {mode!r}")
        m = len(pattern)
        self.m = m
        self.sigma = sigma
        if ctx is None:
            ctx = context_new(prime_bits, seed)
        if ctx.p <= sigma:
            raise ConfigError(
                f"prime {ctx.p} must exceed the alphabet size {sigma}"
            )
        self.ctx = ctx
        self.p = ctx.p
        profile = build_profile(pattern, sigma, ctx)
        ladder = profile.ladder

        if mode == "rand" and ladder.mode != "rand":
            raise ConfigError(
                f"pattern not eligible for the randomized matcher: {ladder.reason}"
            )
        if mode == "det" or ladder.mode == "det":
            self.mode = "det"
            self.det = DetMatcher(profile)
            return
        self.mode = "rand"
        self.det = None

        delta = ladder.delta
        self.delta = delta
        self.H = 4 * delta
        lens = ladder.lengths
        self.s = ladder.s
        self.mlen = lens
        self.m0 = lens[0]
        self.i = -1
        self.phi = 0
        self.table = [-1] * sigma
        H = self.H
        self.hist_fp = [0] * H
        self.hist_rneg = [0] * H
        self.hist_rpow = [0] * H
        self.hist_pred = [0] * H

        sub = build_profile(pattern[: lens[0] - 1], sigma)
        if sub.rho > 3 * delta:
            raise StructuralViolation("ladder base minus one exceeds 3*delta period")
        self.suba = DetCore(sub, pend_cap=4 * (sigma + sub.rho) + 16)
        self.a_prev = False
        fps = profile.fingerprints
        self.p0_last = fps.p0_last

        self.bbuf = deque()
        self.bcur = None
        self.bnext = 1
        s = self.s
        cap = 12 * sigma
        self.dq_cap = cap
        self.dq_bufs = [None] + [[None] * cap for _ in range(s)]
        self.dq_next = [0] * (s + 1)

        self.lv_phase = [0] * (s + 1)
        self.lv_ip = [0] * (s + 1)
        self.lv_fpprev = [0] * (s + 1)
        self.lv_fpl = [0] * (s + 1)
        self.lv_acc = [0] * (s + 1)
        self.lv_rnb = [0] * (s + 1)
        self.lv_cur = [0] * (s + 1)
        self.lv_end = [0] * (s + 1)

        r = ctx.r
        p = ctx.p
        self.gap_pow = [0] + [
            pow(r, lens[l] - lens[l - 1], p) for l in range(1, s + 1)
        ]
        self.level_fp = [0] + [fps.level_fps[l].value for l in range(1, s + 1)]
        budget = 6 * sigma + 2
        self.mq = [
            MatchQueue(
                diff=profile.periods[lens[l]],
                rpd=pow(r, profile.periods[lens[l]], p),
                p=p,
                budget=budget,
            )
            for l in range(0, s + 1)
        ]
        self.c_ip = -1
        self.c_k = 0
        self.tail_target = fps.tail_pred
        self.tail_len = 4 * delta
        self.mq_words = 0
        self.static_words = (
            4 * H
            + self.tail_len
            + sigma
            + 3 * cap * s
            + 8 * (s + 1)
            + self.suba.live_words()
            + 32
        )
        self.ops_last = 0
        self.ops_max = 0
        self.words_peak = 0
        self.b_peak = 0
        # When set to a list, every completed level check appends
        # (level, candidate, computed second-half fingerprint).
        self.debug_checks = None

    # ------------------------------------------------------------------

    def step(self, sym: int) -> bool:
        """Process one arriving symbol; True iff a full match ends here."""
        if self.det is not None:
            return self.det.step(sym)

        sigma = self.sigma
        p = self.p
        ctx = self.ctx
        i = self.i + 1
        self.i = i
        if i > 0:
            ctx.clock = i
            rpow = ctx.r_pow = ctx.r_pow * ctx.r % p
            rneg = ctx.r_neg_pow = ctx.r_neg_pow * ctx.r_inv % p
        else:
            rpow = ctx.r_pow
            rneg = ctx.r_neg_pow
        ops = 7

        if sym < 0 or sym >= sigma:
            raise AlphabetError(sym, i, sigma)
        t = self.table[sym]
        self.table[sym] = i
        pv = i - t if t >= 0 else NEVER
        rendered = pv if pv != NEVER else 0
        if rendered >= p:
            raise ConfigError(f"stream length {i} too large for prime {p}")
        phi = (self.phi + rendered * rpow) % p
        self.phi = phi
        H = self.H
        slot = i % H
        self.hist_fp[slot] = phi
        self.hist_rneg[slot] = rneg
        self.hist_rpow[slot] = rpow
        self.hist_pred[slot] = pv

        # Phase A: base-prefix matches.
        m0 = self.m0
        prev = self.a_prev
        suba = self.suba
        c0 = suba.consumed
        self.a_prev = suba.step_pred(pv)
        ops += 1 + suba.consumed - c0
        if prev:
            pp = self.p0_last
            if (pp == pv) if 0 < pv <= m0 - 1 else (pp == 0):
                q0 = self.mq[0]
                w0 = q0.words
                q0.push(i - m0 + 1, phi)
                self.mq_words += q0.words - w0
                ops += 3

        # Phase Bdelta: buffer long-distance arrivals, distribute one level.
        if m0 < pv < NEVER:
            self.bbuf.append((i, pv, rpow))
            lb = len(self.bbuf)
            if lb > sigma:
                raise StructuralViolation(
                    f"distance buffer exceeded {sigma} entries"
                )
            if lb > self.b_peak:
                self.b_peak = lb
            ops += 2
        if self.bcur is None and self.bbuf:
            self.bcur = self.bbuf.popleft()
            self.bnext = 1
        if self.bcur is not None:
            lvl = self.bnext
            entry = self.bcur
            if entry[1] > self.mlen[lvl - 1]:
                nxt = self.dq_next[lvl]
                self.dq_bufs[lvl][nxt % self.dq_cap] = entry
                self.dq_next[lvl] = nxt + 1
                ops += 2
            if lvl >= self.s:
                self.bcur = None
            else:
                self.bnext = lvl + 1
            ops += 1

        # Phase Bphi: one level per arrival advances its candidate check.
        s = self.s
        ell = 1 + i % s
        ph = self.lv_phase[ell]
        if ph == _IDLE:
            ql = self.mq[ell - 1]
            if ql.segs:
                w0 = ql.words
                got = ql.pop()
                self.mq_words += ql.words - w0
                self.lv_ip[ell] = got[0]
                self.lv_fpprev[ell] = got[1]
                ph = _WAIT
                self.lv_phase[ell] = _WAIT
                ops += 2
        if ph == _WAIT:
            ip = self.lv_ip[ell]
            ml = self.mlen[ell]
            if i > ip + ml + self.delta:
                idx = ip + ml - 1
                if i - idx >= H:
                    raise StructuralViolation(
                        f"fingerprint history expired for level {ell}"
                    )
                fpl = self.hist_fp[idx % H]
                rnb = self.hist_rneg[(idx + 1) % H] * self.gap_pow[ell] % p
                self.lv_fpl[ell] = fpl
                self.lv_rnb[ell] = rnb
                self.lv_acc[ell] = (fpl - self.lv_fpprev[ell]) * rnb % p
                front = self.dq_next[ell] - self.dq_cap
                self.lv_cur[ell] = front if front > 0 else 0
                self.lv_end[ell] = self.dq_next[ell]
                self.lv_phase[ell] = _SCAN
                ops += 5
        elif ph == _SCAN:
            ip = self.lv_ip[ell]
            lo = ip + self.mlen[ell - 1]
            hi = ip + self.mlen[ell] - 1
            cur = self.lv_cur[ell]
            end = self.lv_end[ell]
            front = self.dq_next[ell] - self.dq_cap
            if front < 0:
                front = 0
            buf = self.dq_bufs[ell]
            cap = self.dq_cap
            if cur < front:
                # Entries were evicted before being scanned; safe only if
                # everything lost sat below the zeroing range.
                if front >= self.lv_end[ell] or front >= self.dq_next[ell]:
                    raise StructuralViolation(
                        f"level {ell} zeroing queue evicted unscanned entries"
                    )
                if buf[front % cap][0] > lo:
                    raise StructuralViolation(
                        f"level {ell} may have lost zeroing candidates"
                    )
                cur = front
            stop = cur + _SCAN_BATCH
            if stop > end:
                stop = end
            acc = self.lv_acc[ell]
            rnb = self.lv_rnb[ell]
            scanned = stop - cur
            while cur < stop:
                pos, pvj, rj = buf[cur % cap]
                if lo <= pos <= hi and pvj > pos - ip:
                    acc = (acc - pvj * rj % p * rnb) % p
                cur += 1
            self.lv_acc[ell] = acc
            self.lv_cur[ell] = cur
            ops += 1 + scanned
            if cur >= end:
                if self.debug_checks is not None:
                    self.debug_checks.append((ell, ip, acc))
                if acc == self.level_fp[ell]:
                    if i >= ip + self.mlen[ell] + 3 * self.delta:
                        raise StructuralViolation(
                            f"level {ell} missed its reporting deadline"
                        )
                    qn = self.mq[ell]
                    w0 = qn.words
                    qn.push(ip, self.lv_fpl[ell])
                    self.mq_words += qn.words - w0
                    ops += 2
                self.lv_phase[ell] = _IDLE

        # Phase C: extend final-level matches across the explicit tail.
        verdict = False
        m = self.m
        if self.c_ip < 0:
            qs = self.mq[s]
            if qs.segs:
                w0 = qs.words
                got = qs.pop()
                self.mq_words += qs.words - w0
                self.c_ip = got[0]
                self.c_k = 0
                base = self.c_ip + self.mlen[s]
                if i - base >= H:
                    raise StructuralViolation("predecessor history expired")
                ops += 2
        if self.c_ip >= 0:
            ip = self.c_ip
            k = self.c_k
            tail_len = self.tail_len
            base = ip + m - tail_len
            target = self.tail_target
            hist_pred = self.hist_pred
            budget = _C_BUDGET
            while budget > 0 and k < tail_len:
                j = base + k
                if j > i:
                    break
                pvj = hist_pred[j % H]
                o = j - ip
                w = pvj if 0 < pvj <= o else 0
                if w != target[k]:
                    self.c_ip = -1
                    break
                k += 1
                budget -= 1
            ops += _C_BUDGET - budget
            if self.c_ip >= 0:
                if k >= tail_len:
                    if i != ip + m - 1:
                        raise StructuralViolation("tail check completed off schedule")
                    verdict = True
                    self.c_ip = -1
                else:
                    self.c_k = k
                    if i >= ip + m - 1:
                        raise StructuralViolation("tail check behind schedule")

        self.ops_last = ops
        if ops > self.ops_max:
            self.ops_max = ops
            if ops > OP_BUDGET:
                raise StructuralViolation(
                    f"arrival {i} used {ops} ops, budget {OP_BUDGET}"
                )
        words = (
            self.static_words
            + 3 * len(self.bbuf)
            + self.mq_words
            + len(suba.pending)
        )
        if words > self.words_peak:
            self.words_peak = words
        return verdict

    # ------------------------------------------------------------------

    def scan(self, text) -> list[int]:
        """Match end positions over a whole text."""
        out = []
        step = self.step
        for sym in text:
            if step(sym):
                out.append(self.i if self.det is None else self.det.i)
        return out

    def live_words_peak(self) -> int:
        if self.det is not None:
            core = self.det.core
            return self.det.live_words() - len(core.pending) + core.pend_peak
        return self.words_peak

    def max_ops(self) -> int:
        if self.det is not None:
            return 0
        return self.ops_max

    def op_budget(self) -> int:
        """Enforced per-arrival ceiling; a constant independent of m."""
        return OP_BUDGET

    def d_fill_max(self) -> int:
        """Largest live occupancy reached by any zeroing queue."""
        if self.det is not None:
            return 0
        cap = self.dq_cap
        return max(min(n, cap) for n in self.dq_next[1:]) if self.s else 0


def stream_new(pattern, sigma: int, **cfg) -> StreamMatcher:
    return StreamMatcher(pattern, sigma, **cfg)


def stream_step(matcher: StreamMatcher, sym: int) -> bool:
    return matcher.step(sym)
