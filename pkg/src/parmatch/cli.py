"""Command-line interface: scan, verify, bench, gen.

Exit codes: 0 success, 1 usage/configuration error, 2 input or alphabet
error, 3 structural violation inside the engine.
"""

from __future__ import annotations

import argparse
import sys
import time

from .alphabet_filter import AlphabetFilter, densify_pattern
from .errors import AlphabetError, ConfigError, StructuralViolation, UsageError
from .gen import make_instance
from .oracle import naive_all_matches
from .stream_matcher import StreamMatcher

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_STRUCTURAL = 3


class _UsageExit(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageExit(message)


class _InputError(Exception):
    pass


def _iter_tokens(fobj):
    """Whitespace-separated unsigned base-10 integers, streamed."""
    carry = ""
    index = 0
    while True:
        chunk = fobj.read(65536)
        if not chunk:
            break
        parts = (carry + chunk).split()
        if chunk[-1] not in " \t\r\n" and parts:
            carry = parts.pop()
        else:
            carry = ""
        for tok in parts:
            yield _parse_token(tok, index)
            index += 1
    if carry:
        yield _parse_token(carry, index)


def _parse_token(tok: str, index: int) -> int:
    try:
        v = int(tok, 10)
    except ValueError:
        raise _InputError(f"token {tok!r} at position {index} is not an integer")
    if v < 0:
        raise _InputError(f"token {tok!r} at position {index} is negative")
    return v


def _iter_raw(fobj):
    while True:
        chunk = fobj.read(65536)
        if not chunk:
            break
        yield from chunk


def _read_all(path: str, raw: bool) -> list[int]:
    if raw:
        with open(path, "rb") as f:
            return list(f.read())
    with open(path, "r") as f:
        return list(_iter_tokens(f))


def _open_text_stream(path: str, raw: bool):
    if path == "-":
        return (_iter_raw(sys.stdin.buffer) if raw else _iter_tokens(sys.stdin)), None
    if raw:
        f = open(path, "rb")
        return _iter_raw(f), f
    f = open(path, "r")
    return _iter_tokens(f), f


def _add_common(p: _Parser) -> None:
    p.add_argument("--seed", type=int, default=1, help="PRNG seed (u64)")
    p.add_argument("--prime-bits", type=int, default=61, dest="prime_bits")


def build_parser() -> _Parser:
    top = _Parser(prog="parmatch", description=__doc__)
    sub = top.add_subparsers(dest="cmd", required=True)

    m = sub.add_parser("match", help="scan a text stream for pattern matches")
    m.add_argument("--pattern", required=True, help="pattern file")
    m.add_argument("--text", required=True, help="text file, or - for stdin")
    m.add_argument("--mode", choices=("auto", "det", "rand"), default="auto")
    m.add_argument("--alphabet-size", type=int, default=None, dest="alphabet_size")
    m.add_argument(
        "--general-alphabet",
        action="store_true",
        dest="general_alphabet",
        help="route the text through the recency filter (any symbols)",
    )
    m.add_argument("--raw", action="store_true", help="each byte is a symbol")
    m.add_argument("--stats", action="store_true", help="key=value metrics on stderr")
    m.add_argument("--unbuffered", action="store_true")
    _add_common(m)

    v = sub.add_parser("verify", help="matcher vs brute-force oracle")
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--max-m", type=int, default=256, dest="max_m")
    v.add_argument("--sigma", type=int, default=4)
    v.add_argument("--mode", choices=("auto", "det"), default="auto")
    _add_common(v)

    b = sub.add_parser("bench", help="time/space instrumentation")
    b.add_argument("--m", type=int, default=4096)
    b.add_argument("--n", type=int, default=0, help="default 3*m")
    b.add_argument("--sigma", type=int, default=4)
    b.add_argument("--kind", default="planted")
    b.add_argument("--mode", choices=("auto", "det", "rand"), default="auto")
    _add_common(b)

    g = sub.add_parser("gen", help="write a deterministic instance")
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--sigma", type=int, default=4)
    g.add_argument(
        "--kind", default="random", choices=("random", "planted", "periodic", "long_gap")
    )
    g.add_argument("--period", type=int, default=None, help="block length (periodic)")
    g.add_argument("--out-pattern", required=True, dest="out_pattern")
    g.add_argument("--out-text", required=True, dest="out_text")
    _add_common(g)
    return top


def cmd_match(args) -> int:
    pattern = _read_all(args.pattern, args.raw)
    if not pattern:
        print("empty pattern", file=sys.stderr)
        return EXIT_INPUT
    m = len(pattern)
    filt = None
    if args.general_alphabet or (args.alphabet_size is None and not args.raw):
        # Parameterized matching is alphabet-free, so unless a dense
        # alphabet is declared the text goes through the recency filter.
        dense, distinct = densify_pattern(pattern)
        pattern = dense
        sigma = distinct + 1
        filt = AlphabetFilter(distinct, m)
    elif args.alphabet_size is not None:
        sigma = args.alphabet_size
    else:
        sigma = 256
    matcher = StreamMatcher(
        pattern, sigma, mode=args.mode, prime_bits=args.prime_bits, seed=args.seed
    )
    symbols, fobj = _open_text_stream(args.text, args.raw)
    out = sys.stdout
    arrivals = 0
    matches = 0
    t0 = time.perf_counter()
    try:
        step = matcher.step
        if filt is None:
            for sym in symbols:
                if step(sym):
                    out.write(f"{arrivals - m + 1}\n")
                    matches += 1
                    if args.unbuffered:
                        out.flush()
                arrivals += 1
        else:
            fstep = filt.step
            for sym in symbols:
                if step(fstep(sym)):
                    out.write(f"{arrivals - m + 1}\n")
                    matches += 1
                    if args.unbuffered:
                        out.flush()
                arrivals += 1
    finally:
        if fobj is not None:
            fobj.close()
    elapsed = time.perf_counter() - t0
    if args.stats:
        err = sys.stderr
        err.write(f"mode={matcher.mode}\n")
        err.write(f"arrivals={arrivals}\n")
        err.write(f"matches={matches}\n")
        err.write(f"elapsed_s={elapsed:.6f}\n")
        if arrivals:
            err.write(f"throughput_sym_per_s={arrivals / max(elapsed, 1e-9):.0f}\n")
        err.write(f"peak_live_words={matcher.live_words_peak()}\n")
        if matcher.mode == "rand":
            err.write(f"max_ops={matcher.max_ops()}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    import random as _random

    rng = _random.Random(args.seed)
    kinds = ("random", "planted", "periodic")
    discrepancies = 0
    violations = 0
    for trial in range(args.trials):
        kind = kinds[trial % len(kinds)]
        m = rng.randint(1, args.max_m)
        n = 10 * m
        inst = make_instance(kind, m, n, args.sigma, seed=rng.randrange(2**32))
        expected = naive_all_matches(inst.pattern, inst.text)
        try:
            matcher = StreamMatcher(
                inst.pattern,
                inst.sigma,
                mode=args.mode,
                prime_bits=args.prime_bits,
                seed=args.seed,
            )
            got = [e - m + 1 for e in matcher.scan(inst.text)]
        except StructuralViolation:
            violations += 1
            continue
        if got != expected:
            discrepancies += 1
    print(f"trials={args.trials}")
    print(f"discrepancies={discrepancies}")
    print(f"structural_violations={violations}")
    return EXIT_OK if discrepancies == 0 and violations == 0 else EXIT_USAGE


def cmd_bench(args) -> int:
    n = args.n or 3 * args.m
    inst = make_instance(args.kind, args.m, n, args.sigma, seed=args.seed)
    matcher = StreamMatcher(
        inst.pattern,
        inst.sigma,
        mode=args.mode,
        prime_bits=args.prime_bits,
        seed=args.seed,
    )
    ops_total = 0
    ops_max = 0
    matches = 0
    t0 = time.perf_counter()
    step = matcher.step
    if matcher.mode == "rand":
        for sym in inst.text:
            if step(sym):
                matches += 1
            ops = matcher.ops_last
            ops_total += ops
            if ops > ops_max:
                ops_max = ops
    else:
        for sym in inst.text:
            if step(sym):
                matches += 1
    elapsed = time.perf_counter() - t0
    print(f"mode={matcher.mode}")
    print(f"m={args.m}")
    print(f"n={n}")
    print(f"sigma={inst.sigma}")
    print(f"kind={inst.kind}")
    print(f"matches={matches}")
    print(f"max_ops={ops_max}")
    print(f"mean_ops={ops_total / max(1, n):.3f}")
    print(f"peak_live_words={matcher.live_words_peak()}")
    print(f"elapsed_s={elapsed:.6f}")
    print(f"throughput_sym_per_s={n / max(elapsed, 1e-9):.0f}")
    return EXIT_OK


def cmd_gen(args) -> int:
    kw = {}
    if args.kind == "periodic" and args.period is not None:
        kw["block"] = args.period
    inst = make_instance(args.kind, args.m, args.n, args.sigma, seed=args.seed, **kw)
    with open(args.out_pattern, "w") as f:
        f.write(" ".join(map(str, inst.pattern)))
        f.write("\n")
    with open(args.out_text, "w") as f:
        f.write(" ".join(map(str, inst.text)))
        f.write("\n")
    return EXIT_OK


_COMMANDS = {
    "match": cmd_match,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "gen": cmd_gen,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.cmd](args)
    except _UsageExit as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (_InputError, AlphabetError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except StructuralViolation as e:
        print(f"structural violation: {e}", file=sys.stderr)
        return EXIT_STRUCTURAL
    except OSError as e:
        print(f"io error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
