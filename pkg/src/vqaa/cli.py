"""Command-line entry point (``vqaa``).

Exit codes: 0 success, 1 attack ran out of iterations, 2 bad configuration or input.
All machine-readable output is JSON, one object per line.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

import numpy as np

from . import attack, bench, plot
from .bits import BitString
from .equivalence import max_tvd
from .errors import VQAAError
from .targets import get_cipher, make_cipher_target, read_vectors

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2

# small worked examples for the educational ciphers: (key, plain, cipher) in hex
KNOWN_VECTORS = {
    "sdes": [("282", "97", "38")],
    "saes": [("4af5", "d728", "24ec"), ("a73b", "6f6b", "0738")],
}


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True), flush=True)


def _seed(args) -> int | None:
    """--seed, else $VQAA_SEED, else None (use the config's seed)."""
    if args.seed is not None:
        seed = args.seed
    elif os.environ.get("VQAA_SEED", "").strip():
        try:
            seed = int(os.environ["VQAA_SEED"])
        except ValueError:
            raise VQAAError(f"VQAA_SEED must be an integer, got {os.environ['VQAA_SEED']!r}") from None
    else:
        return None
    if seed < 0:
        raise VQAAError("seed must be non-negative")
    return seed


def _load_spec(args) -> bench.ExperimentSpec:
    spec = bench.ExperimentSpec.load(args.config)
    seed = _seed(args)
    changes = {}
    if seed is not None:
        changes["seed"] = seed
    if getattr(args, "trials", None) is not None:
        changes["trials"] = args.trials
    if getattr(args, "out_dir", None) is not None:
        changes["output"] = {**spec.output, "dir": args.out_dir}
    if getattr(args, "time", False):
        changes["record_time"] = True
    return replace(spec, **changes) if changes else spec


def cmd_attack(args) -> int:
    spec = _load_spec(args)
    cfg, secret, public = bench.trial_attack_config(spec, args.trial)
    res = attack.run_attack(cfg)
    out = res.to_dict(include_trace=args.trace)
    out.update(secret_key_hex=secret.to_hex(), public_input_hex=public.to_hex(), trial=args.trial)
    if spec.prefix_width:
        out["prefix_width"] = spec.prefix_width
        out["aggregate_measurements"] = res.measurements * (1 << spec.prefix_width)
        if res.success:
            out["recovered_key_hex"] = secret.slice(0, spec.prefix_width).concat(res.recovered_key).to_hex()
    _emit(out)
    return EXIT_OK if res.success else EXIT_FAILED


def cmd_bench(args) -> int:
    spec = _load_spec(args)
    progress = None
    if args.verbose:
        def progress(rec):
            print(json.dumps({"trial": rec.trial, "iterations": rec.iterations,
                              "measurements": rec.measurements, "success": rec.success}), file=sys.stderr)
    result = bench.run_experiment(spec, jobs=args.jobs, progress=progress)
    summary = result.summary()
    if spec.output:
        summary["outputs"] = {k: str(v) for k, v in bench.output_paths(spec).items()}
    _emit(summary)
    return EXIT_OK if summary["success_rate"] == 1.0 else EXIT_FAILED


def cmd_brute(args) -> int:
    cipher = get_cipher(args.target)
    key = BitString.from_hex(args.key_hex, cipher.key_widths[0] if len(cipher.key_widths) == 1 else None)
    plain = BitString.from_hex(args.plain_hex, cipher.block_width)
    target = make_cipher_target(cipher, key, plain)
    seed = _seed(args)
    found, trials = attack.brute_force(target, np.random.default_rng(0 if seed is None else seed))
    _emit({"target": cipher.name, "recovered_key_hex": None if found is None else found.to_hex(),
           "trials": trials, "key_space": 1 << target.key_width})
    return EXIT_OK if found is not None else EXIT_FAILED


def cmd_equiv(args) -> int:
    if not 1 <= args.qubits <= 3:
        raise VQAAError("--qubits must be 1, 2 or 3")
    if args.draws < 1:
        raise VQAAError("--draws must be positive")
    seed = _seed(args)
    tvd = max_tvd(args.qubits, args.draws, seed=0 if seed is None else seed)
    _emit({"qubits": args.qubits, "draws": args.draws, "max_tvd": tvd, "pass": tvd < 1e-10})
    return EXIT_OK if tvd < 1e-10 else EXIT_FAILED


def cmd_plot(args) -> int:
    plot.emit_plot(args.inputs, args.out, column=args.column, baseline=args.baseline)
    _emit({"out": args.out, "curves": len(args.inputs)})
    return EXIT_OK


def cmd_vectors(args) -> int:
    cipher = get_cipher(args.cipher)
    if cipher.name == "blowfish":
        vectors = read_vectors(args.file)
    else:
        vectors = [(BitString.from_hex(k, cipher.key_widths[0]), BitString.from_hex(p, cipher.block_width),
                    BitString.from_hex(c, cipher.block_width)) for k, p, c in KNOWN_VECTORS[cipher.name]]
    failed = []
    for key, plain, expected in vectors:
        got = cipher.encrypt(key, plain)
        if got != expected or cipher.decrypt(key, got) != plain:
            failed.append({"key": key.to_hex(), "plain": plain.to_hex(), "expected": expected.to_hex(), "got": got.to_hex()})
    _emit({"cipher": cipher.name, "vectors": len(vectors), "passed": len(vectors) - len(failed), "failures": failed})
    return EXIT_OK if not failed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vqaa", description="Variational quantum key-search simulator.")
    sub = p.add_subparsers(dest="command", required=True)

    def seeded(sp):
        sp.add_argument("--seed", type=int, default=None, help="master seed (falls back to $VQAA_SEED)")
        return sp

    a = seeded(sub.add_parser("attack", help="run one attack trial from a JSON config"))
    a.add_argument("--config", required=True)
    a.add_argument("--trial", type=int, default=0, help="trial index (selects key/plaintext draw)")
    a.add_argument("--trace", action="store_true", help="include the sampled-cost trace")
    a.set_defaults(func=cmd_attack)

    b = seeded(sub.add_parser("bench", help="run a repeated-trial experiment"))
    b.add_argument("--config", required=True)
    b.add_argument("--trials", type=int, default=None)
    b.add_argument("--out-dir", default=None)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--time", action="store_true", help="fill the wall_ms column (output no longer reproducible)")
    b.add_argument("-v", "--verbose", action="store_true")
    b.set_defaults(func=cmd_bench)

    r = seeded(sub.add_parser("brute", help="random-order exhaustive key search"))
    r.add_argument("--target", required=True, choices=["sdes", "saes", "blowfish"])
    r.add_argument("--key-hex", required=True)
    r.add_argument("--plain-hex", required=True)
    r.set_defaults(func=cmd_brute)

    e = seeded(sub.add_parser("equiv-check", help="joint-register vs sample-then-encrypt distributions"))
    e.add_argument("--qubits", type=int, default=2)
    e.add_argument("--draws", type=int, default=100)
    e.set_defaults(func=cmd_equiv)

    g = sub.add_parser("plot", help="SVG chart of cumulative CSVs")
    g.add_argument("--in", dest="inputs", nargs="+", required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--column", default="cum_avg_iterations")
    g.add_argument("--baseline", type=float, default=None)
    g.set_defaults(func=cmd_plot)

    v = sub.add_parser("vectors", help="check a cipher against known test vectors")
    v.add_argument("--cipher", default="blowfish", choices=["blowfish", "sdes", "saes"])
    v.add_argument("--file", default=None, help="key,plain,cipher hex CSV (Blowfish only)")
    v.set_defaults(func=cmd_vectors)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_OK
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except (VQAAError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
