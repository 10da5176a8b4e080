"""Command-line front end.

Subcommands: reach (run a model and report sizes/times), lfsr (round-trip
key search), eval (enumerate a serialized zonotope), selftest (randomized
oracle-equivalence checks). The env var LOGIZONO_CAP overrides the
enumeration caps.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from importlib import resources

from .binvec import BinaryMatrix, BinaryVector, Gate
from .errors import CapacityError, ModelError, SearchFailure
from . import cases, explicit as ex, logical as lz, poly as pz
from .model import load_model, parse_model
from .reach import reach, reach_report

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_SEARCH = 4


def _cap(default=2**20):
    text = os.environ.get("LOGIZONO_CAP")
    return int(text) if text else default


def _factor_cap():
    text = os.environ.get("LOGIZONO_CAP")
    if not text:
        return pz.DEFAULT_FACTOR_CAP
    return max(int(text).bit_length() - 1, 1)


def _resolve_model(spec_text):
    if os.path.exists(spec_text):
        return load_model(spec_text), spec_text
    fixture = resources.files("logizono").joinpath(
        "fixtures", spec_text if spec_text.endswith(".json")
        else spec_text + ".json")
    if fixture.is_file():
        return parse_model(json.loads(fixture.read_text())), str(fixture)
    raise ModelError(f"model file not found: {spec_text}")


def cmd_reach(args):
    model, path = _resolve_model(args.model)
    steps = sorted(int(s) for s in args.steps.split(","))
    result = reach(model, steps, args.algebra, args.mode,
                   break_next_state_deps=args.break_next_state_deps,
                   cap=_cap(args.cap))
    text = reach_report(result, steps, args.format, model_path=path,
                        seed=args.seed, dump_sets=args.dump_sets)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_lfsr(args):
    rng = random.Random(args.seed)
    lk = args.lk
    taps = (tuple(int(t) for t in args.taps.split(","))
            if args.taps else cases.default_taps(lk))
    out_taps = (tuple(int(t) for t in args.out_taps.split(","))
                if args.out_taps else (lk, lk - 1))
    lm = args.lm if args.lm else 2 * lk
    spec = cases.LfsrSpec(lk, taps, out_taps, lm)
    if args.key_hex:
        value = int(args.key_hex, 16)
        key = [(value >> (lk - 1 - i)) & 1 for i in range(lk)]
    else:
        key = [rng.getrandbits(1) for _ in range(lk)]
    message = [rng.getrandbits(1) for _ in range(lm)]
    cipher = cases.lfsr_encrypt(spec, key, message)
    if lm < lk:
        print(f"warning: {lm} keystream bits may not determine a "
              f"{lk}-bit key", file=sys.stderr)
    t0 = time.perf_counter()
    recovered = cases.lfsr_recover_key(spec, message, cipher)
    elapsed = time.perf_counter() - t0
    ok = list(recovered) == key
    print(f"# seed={args.seed}")
    print(f"recovered={'true' if ok else 'false'} "
          f"time_seconds={elapsed:.3f} lk={lk} lm={lm}")
    if args.key_hex and ok:
        print(f"key=0x{int(''.join(map(str, recovered)), 2):X}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_eval(args):
    with open(args.input, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if "E" in doc:
        z = pz.PolyLogicalZonotope.from_json(doc)
        points = pz.pz_evaluate(z, cap=_factor_cap())
    else:
        c = BinaryVector.from_string(doc["c"])
        G = BinaryMatrix(c.dim, tuple(
            BinaryVector.from_string(s) for s in doc["G"]))
        points = lz.lz_evaluate(lz.LogicalZonotope(c, G), cap=_factor_cap())
    for p in points:
        print(p.to_string())
    return EXIT_OK


def cmd_selftest(args):
    rng = random.Random(args.seed)
    mink = {
        Gate.XOR: pz.pz_mink_xor, Gate.AND: pz.pz_mink_and,
        Gate.OR: pz.pz_mink_or, Gate.XNOR: pz.pz_mink_xnor,
        Gate.NAND: pz.pz_mink_nand, Gate.NOR: pz.pz_mink_nor,
    }
    lzops = {
        Gate.XOR: lz.lz_xor, Gate.AND: lz.lz_and, Gate.OR: lz.lz_or,
        Gate.XNOR: lz.lz_xnor, Gate.NAND: lz.lz_nand, Gate.NOR: lz.lz_nor,
    }
    exact_gates = (Gate.XOR, Gate.XNOR)
    failures = 0
    for trial in range(args.trials):
        n = rng.randint(1, 4)
        a = _random_pz(rng, n)
        b = _random_pz(rng, n)
        la = _random_lz(rng, n)
        lb = _random_lz(rng, n)
        for gate in Gate:
            want = ex.set_minkowski(pz.pz_evaluate(a), pz.pz_evaluate(b),
                                    gate)
            got = pz.pz_evaluate(mink[gate](a, b))
            if got.points != want.points:
                failures += 1
            lwant = ex.set_minkowski(lz.lz_evaluate(la), lz.lz_evaluate(lb),
                                     gate)
            lgot = lz.lz_evaluate(lzops[gate](la, lb))
            if gate in exact_gates:
                if lgot.points != lwant.points:
                    failures += 1
            elif not lwant.points <= lgot.points:
                failures += 1
    print(f"selftest trials={args.trials} failures={failures}")
    return EXIT_OK if failures == 0 else EXIT_FAIL


def _random_pz(rng, n):
    h = rng.randint(0, 3)
    p = rng.randint(0, 3)
    c = BinaryVector(n, rng.getrandbits(n))
    G = BinaryMatrix(n, tuple(BinaryVector(n, rng.getrandbits(n))
                              for _ in range(h)))
    E = BinaryMatrix(p, tuple(BinaryVector(p, rng.getrandbits(p))
                              for _ in range(h)))
    return pz.PolyLogicalZonotope(c, G, E, pz.unique_id(p))


def _random_lz(rng, n):
    gamma = rng.randint(0, 3)
    c = BinaryVector(n, rng.getrandbits(n))
    G = BinaryMatrix(n, tuple(BinaryVector(n, rng.getrandbits(n))
                              for _ in range(gamma)))
    return lz.LogicalZonotope(c, G)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="logizono",
        description="Set-based reachability for logical systems")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reach", help="run reachability on a model")
    p.add_argument("--model", required=True,
                   help="model file path or bundled fixture name")
    p.add_argument("--steps", default="5")
    p.add_argument("--algebra", default="poly",
                   choices=("explicit", "logical", "poly"))
    p.add_argument("--mode", default="minkowski",
                   choices=("minkowski", "exact"))
    p.add_argument("--break-next-state-deps", action="store_true")
    p.add_argument("--out")
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.add_argument("--dump-sets", action="store_true")
    p.add_argument("--cap", type=int, default=2**20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("lfsr", help="round-trip LFSR key search")
    p.add_argument("--lk", type=int, default=60)
    p.add_argument("--taps")
    p.add_argument("--out-taps")
    p.add_argument("--lm", type=int)
    p.add_argument("--key-hex")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_lfsr)

    p = sub.add_parser("eval", help="enumerate a serialized zonotope")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("selftest", help="randomized oracle-equivalence suite")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ModelError, FileNotFoundError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as err:
        print(f"capacity error: {err}", file=sys.stderr)
        return EXIT_CAPACITY
    except SearchFailure as err:
        print(f"search failure: {err}", file=sys.stderr)
        return EXIT_SEARCH


if __name__ == "__main__":
    sys.exit(main())
