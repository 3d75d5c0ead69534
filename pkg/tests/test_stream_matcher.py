import random

import pytest

from parmatch.det_matcher import det_matcher_for
from parmatch.errors import AlphabetError, ConfigError
from parmatch.fingerprint import FieldContext, context_new, fp_of_sequence
from parmatch.gen import make_instance, periodic_instance
from parmatch.oracle import naive_all_matches
from parmatch.predecessor import pred_string
from parmatch.stream_matcher import StreamMatcher


def starts(matcher, m, text):
    return [e - m + 1 for e in matcher.scan(text)]


def test_fallback_small_period():
    sm = StreamMatcher([0] * 50, 2)
    assert sm.mode == "det"


def test_fallback_short_pattern():
    sm = StreamMatcher(list(range(8)) * 4, 8)
    assert sm.mode == "det"


def test_forced_det_equals_auto():
    rng = random.Random(3)
    p = [rng.randrange(2) for _ in range(400)]
    t = [rng.randrange(2) for _ in range(2000)]
    auto = StreamMatcher(p, 2, seed=5)
    det = StreamMatcher(p, 2, mode="det", seed=5)
    assert auto.mode == "rand"
    assert starts(auto, 400, t) == starts(det, 400, t)


def test_mode_rand_rejects_ineligible():
    with pytest.raises(ConfigError):
        StreamMatcher([0] * 50, 2, mode="rand")


def test_small_prime_rejected_against_alphabet():
    ctx = context_new(7, seed=1)  # p = 127
    with pytest.raises(ConfigError):
        StreamMatcher([0, 1, 2], 300, ctx=ctx)


def test_alphabet_violation_names_index():
    sm = StreamMatcher([0, 1] * 10, 2)
    sm.step(0)
    with pytest.raises(AlphabetError) as exc:
        sm.step(5)
    assert "index 1" in str(exc.value)


def test_randomized_equals_oracle_random_and_planted():
    rng = random.Random(17)
    n_rand = 0
    for t in range(40):
        kind = ("random", "planted")[t % 2]
        sigma = rng.choice([2, 4])
        m = rng.randint(260, 640) if sigma == 2 else rng.randint(520, 900)
        inst = make_instance(kind, m, 4 * m, sigma, seed=rng.randrange(2**31))
        sm = StreamMatcher(inst.pattern, sigma, seed=1234)
        if sm.mode == "rand":
            n_rand += 1
        assert starts(sm, m, inst.text) == naive_all_matches(
            inst.pattern, inst.text
        ), (kind, sigma, m, inst.seed)
    assert n_rand >= 20


def test_randomized_periodic_progressions():
    rng = random.Random(31)
    n_rand = 0
    total_matches = 0
    for _ in range(25):
        sigma = 2
        m = rng.randint(300, 800)
        delta = sigma * max(1, (m - 1).bit_length())
        block = 3 * delta + rng.randint(2, 30)
        inst = periodic_instance(m, 5 * m, sigma, seed=rng.randrange(2**31), block=block)
        sm = StreamMatcher(inst.pattern, sigma, seed=77)
        want = naive_all_matches(inst.pattern, inst.text)
        got = starts(sm, m, inst.text)
        assert got == want, (m, block, inst.seed)
        if sm.mode == "rand":
            n_rand += 1
            total_matches += len(want)
    assert n_rand >= 15
    assert total_matches > 100


def test_planted_match_reported_exactly_once_per_plant():
    rng = random.Random(5)
    p = [rng.randrange(2) for _ in range(300)]
    t = [rng.randrange(2) for _ in range(1500)]
    t[700:1000] = p
    sm = StreamMatcher(p, 2, seed=9)
    assert sm.mode == "rand"
    got = starts(sm, 300, t)
    assert naive_all_matches(p, t) == got
    assert 700 in got


def test_running_fingerprint_invariant_small_scale():
    rng = random.Random(123)
    p = [rng.randrange(2) for _ in range(280)]
    sm = StreamMatcher(p, 2, seed=6)
    assert sm.mode == "rand"
    text = [rng.randrange(2) for _ in range(900)]
    ref = FieldContext(sm.ctx.p, sm.ctx.r)
    for i, sym in enumerate(text):
        sm.step(sym)
        if i % 97 == 0:
            want = fp_of_sequence(ref, pred_string(text[: i + 1]))
            assert sm.phi == want.value


def test_stream_shorter_than_pattern_reports_nothing():
    rng = random.Random(1)
    p = [rng.randrange(2) for _ in range(300)]
    sm = StreamMatcher(p, 2, seed=3)
    assert sm.mode == "rand"
    assert not any(sm.step(rng.randrange(2)) for _ in range(299))


def test_base_prefix_queue_receives_oracle_match_set():
    # Every match of the ladder base must enter the first queue, at the
    # arrival closing its window.
    rng = random.Random(14)
    p = [rng.randrange(2) for _ in range(320)]
    sm = StreamMatcher(p, 2, seed=21)
    assert sm.mode == "rand"
    m0 = sm.m0
    text = [rng.randrange(2) for _ in range(1500)]
    text[400 : 400 + m0] = p[:m0]
    q0 = sm.mq[0]
    pushes = []
    for sym in text:
        before = q0.last_pos
        sm.step(sym)
        if q0.last_pos != before:
            pushes.append(q0.last_pos)
    assert pushes == naive_all_matches(p[:m0], text)


def test_distance_buffer_behavior():
    rng = random.Random(6)
    p = [rng.randrange(2) for _ in range(300)]
    # every symbol repeats within the base length: nothing buffered
    sm = StreamMatcher(p, 2, seed=4)
    assert sm.mode == "rand"
    sm.scan([0, 1] * 2000)
    assert sm.b_peak == 0
    # a symbol recurring after a gap beyond every ladder length lands in
    # every level's zeroing queue
    sm = StreamMatcher(p, 2, seed=4)
    gap = len(p) + 1
    text = [0] + [1] * gap + [0] + [1] * 50
    sm.scan(text)
    assert sm.b_peak == 1
    assert all(n == 1 for n in sm.dq_next[1:])


def test_level_checks_compute_window_relative_fingerprints():
    # Every completed level check must equal the fingerprint of the
    # window-relative predecessor string over the level's second half,
    # recomputed here from scratch.
    rng = random.Random(20)
    m = 500
    delta = 2 * max(1, (m - 1).bit_length())
    inst = periodic_instance(m, 6 * m, 2, seed=4, block=3 * delta + 9)
    sm = StreamMatcher(inst.pattern, 2, seed=8)
    assert sm.mode == "rand"
    sm.debug_checks = checks = []
    sm.scan(inst.text)
    assert len(checks) > 10
    lens = sm.mlen
    ref = FieldContext(sm.ctx.p, sm.ctx.r)
    for ell, ip, acc in checks:
        window = inst.text[ip : ip + lens[ell]]
        want = fp_of_sequence(ref, pred_string(window)[lens[ell - 1] :])
        assert acc == want.value, (ell, ip)


def test_bounds_on_adversarial_gaps():
    rng = random.Random(2)
    sigma = 4
    m = 2100
    inst = make_instance("long_gap", m, 12 * m, sigma, seed=8)
    sm = StreamMatcher(inst.pattern, sigma, seed=3)
    assert sm.mode == "rand"
    sm.scan(inst.text)
    assert sm.b_peak <= sigma
    assert sm.d_fill_max() <= 12 * sigma


def test_ops_within_budget_and_space_gauge():
    inst = make_instance("planted", 4096, 12288, 4, seed=11)
    sm = StreamMatcher(inst.pattern, 4, seed=2)
    assert sm.mode == "rand"
    sm.scan(inst.text)
    assert 0 < sm.max_ops() <= sm.op_budget()
    assert sm.live_words_peak() > 0


def test_ladder_corner_routes_are_exact():
    # A long low-period prefix pushes the ladder base past the midpoint:
    # degenerate two-level ladder.  Breaking only within 7*delta of the
    # end leaves no schedulable gap: deterministic fallback.
    rng = random.Random(2)
    sigma, m = 2, 1000
    block = [rng.randrange(sigma) for _ in range(10)]
    late = [block[j % 10] for j in range(600)] + [
        rng.randrange(sigma) for _ in range(400)
    ]
    very_late = [block[j % 10] for j in range(960)] + [
        rng.randrange(sigma) for _ in range(40)
    ]
    for pattern, want_mode in ((late, "rand"), (very_late, "det")):
        text = [rng.randrange(sigma) for _ in range(5000)]
        text[1200:2200] = pattern
        text[3000:4000] = pattern
        sm = StreamMatcher(pattern, sigma, seed=5)
        assert sm.mode == want_mode
        if want_mode == "rand":
            assert len(sm.mlen) == 2  # base plus sole successor
        got = starts(sm, m, text)
        want = naive_all_matches(pattern, text)
        assert got == want and len(got) >= 2


def test_det_and_rand_agree_on_long_streams():
    rng = random.Random(77)
    p = [rng.randrange(4) for _ in range(600)]
    t = [rng.randrange(4) for _ in range(6000)]
    t[2000:2600] = p
    rand = StreamMatcher(p, 4, seed=10)
    det = det_matcher_for(p, 4)
    assert rand.mode == "rand"
    a = starts(rand, 600, t)
    b = [e - 600 + 1 for e in det.scan(t)]
    assert a == b
