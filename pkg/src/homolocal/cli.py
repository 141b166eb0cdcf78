"""``homolocal`` command line.

Exit codes: 0 success, 1 self-check disagreement, 2 bad input,
3 trivial homology under ``--require-classes``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from .basis import measure_all
from .complex import betti
from .errors import HomolocalError, InputError, NoNontrivialClass, TooLarge
from .formats import chain_vertex_lists, dumps_cplx, dumps_overlay, load
from .measure import Diagnostics, measure_smallest
from .z2 import SparseZ2Matrix, rank_dense, rank_randomized

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_NO_CLASS = 0, 1, 2, 3


def _seed_default() -> int:
    raw = os.environ.get("HOMOLOCAL_SEED")
    if raw is None:
        return 0
    try:
        return int(raw, 0)
    except ValueError:
        raise InputError(f"HOMOLOCAL_SEED={raw!r} is not an integer") from None


def _common(p: argparse.ArgumentParser, with_input=True):
    if with_input:
        p.add_argument("input", help=".cplx or .off file")
    p.add_argument("--dim", type=int, default=1, help="homology dimension (>= 1)")
    p.add_argument("--mode", choices=("naive", "improved"), default="improved")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                   help="master seed (default: $HOMOLOCAL_SEED or 0)")
    p.add_argument("--trials", type=int, default=20, help="sketches per randomized rank probe")
    p.add_argument("--rank-method", choices=("auto", "randomized", "dense"), default="auto",
                   help="rank test used by the improved mode")
    p.add_argument("--onedim-modified", action="store_true",
                   help="for --dim 1, sort the reduction so cycles have at most 2r+1 edges")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.add_argument("--overlay", help="write the cycles as a text overlay")
    p.add_argument("--dump-complex", help="write the ingested complex as .cplx")
    p.add_argument("--require-classes", action="store_true",
                   help="exit 3 when the requested homology group is trivial")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="homolocal",
                                 description="Measure and localize Z2 homology classes.")
    sub = ap.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("smallest", help="smallest class and a localized cycle"))
    _common(sub.add_parser("basis", help="optimal basis by measure-and-seal"))
    p = sub.add_parser("oracle", help="compare against brute-force enumeration")
    _common(p)
    rc = sub.add_parser("rankcheck", help="randomized vs exact Z2 rank self-test")
    rc.add_argument("matrix", nargs="?", help="triplet file (header 'rows cols', then 'r c' lines)")
    rc.add_argument("--count", type=int, default=200)
    rc.add_argument("--max-side", type=int, default=64)
    rc.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    rc.add_argument("--trials", type=int, default=20)
    rc.add_argument("--out")
    return ap


def _class_json(K, m) -> dict:
    return {"size": m.size, "center": K.labels[m.center], "cycle": chain_vertex_lists(K, m.cycle)}


def _emit(doc: dict, out: str | None):
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_flags(args):
    if args.dim < 1:
        raise InputError("--dim must be at least 1")
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    if getattr(args, "threads", 1) < 1:
        raise InputError("--threads must be at least 1")


def _run_measure(args) -> int:
    loaded = load(args.input)
    K = loaded.complex
    if args.dump_complex:
        with open(args.dump_complex, "w", encoding="utf-8") as fh:
            fh.write(dumps_cplx(K))
    beta = betti(K, args.dim)
    if beta == 0 and args.require_classes:
        raise NoNontrivialClass(f"H_{args.dim} is trivial")

    doc = {"dim": args.dim, "betti": beta, "classes": [], "seal_log": [], "diagnostics": {}}
    classes = []
    if args.command == "basis":
        res = measure_all(K, args.dim, args.mode, args.seed, onedim_modified=args.onedim_modified,
                          threads=args.threads, trials=args.trials, method=args.rank_method)
        classes = res.classes
        final = res.final_complex
        doc["seal_log"] = [
            {"round": s.round, "apex": s.label,
             "added": {str(d): n for d, n in sorted(s.added.items()) if n}}
            for s in res.seal_log
        ]
        doc["diagnostics"] = res.diagnostics.as_dict()
        doc["diagnostics"]["final_betti"] = betti(final, args.dim)
    else:
        diag = Diagnostics()
        if beta:
            classes = [measure_smallest(K, args.dim, args.mode, args.seed,
                                        onedim_modified=args.onedim_modified, threads=args.threads,
                                        trials=args.trials, method=args.rank_method,
                                        diagnostics=diag)]
            doc["size"] = classes[0].size
        doc["diagnostics"] = diag.as_dict()
    doc["classes"] = [_class_json(K, m) for m in classes]
    _emit(doc, args.out)
    if args.overlay:
        with open(args.overlay, "w", encoding="utf-8") as fh:
            fh.write(dumps_overlay(K, classes, loaded.coords))
    return EXIT_OK


def _run_oracle(args) -> int:
    from .oracle import (
        HomologyCoordinates,
        class_sizes,
        greedy_basis,
        shortest_cycle_size_oracle,
    )

    K = load(args.input).complex
    coords = HomologyCoordinates(K, args.dim)
    if coords.betti == 0:
        if args.require_classes:
            raise NoNontrivialClass(f"H_{args.dim} is trivial")
        _emit({"dim": args.dim, "betti": 0, "measured": [], "brute": [], "agree": True}, args.out)
        return EXIT_OK
    if coords.betti > 4:
        raise TooLarge(f"betti number {coords.betti} is above the oracle limit of 4")
    sizes = class_sizes(K, args.dim, coords)
    brute = [s for _, s in greedy_basis(sizes)]
    res = measure_all(K, args.dim, args.mode, args.seed, onedim_modified=args.onedim_modified,
                      threads=args.threads, trials=args.trials, method=args.rank_method)
    doc = {"dim": args.dim, "betti": coords.betti, "measured": res.sizes, "brute": brute,
           "agree": res.sizes == brute}
    if args.dim == 1:
        rows = []
        for h in coords.classes():
            se = shortest_cycle_size_oracle(K, coords.representative(h))
            rows.append({"class": h, "size": sizes[h], "shortest_cycle": se,
                         "sandwich": 2 * sizes[h] <= se <= 2 * sizes[h] + 1})
        doc["classes"] = rows
        doc["agree"] = doc["agree"] and all(r["sandwich"] for r in rows)
    _emit(doc, args.out)
    return EXIT_OK if doc["agree"] else EXIT_MISMATCH


def _run_rankcheck(args) -> int:
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    if args.matrix:
        try:
            with open(args.matrix, encoding="utf-8") as fh:
                M = SparseZ2Matrix.loads(fh.read())
        except OSError as exc:
            raise InputError(f"cannot read {args.matrix}: {exc.strerror}") from None
        except (ValueError, IndexError) as exc:
            raise InputError(f"bad matrix file: {exc}") from None
        dense, rand = rank_dense(M), rank_randomized(M, args.seed, args.trials)
        _emit({"shape": list(M.shape), "rank_dense": dense, "rank_randomized": rand}, args.out)
        return EXIT_OK if dense == rand else EXIT_MISMATCH
    rng = np.random.default_rng(args.seed)
    agree = over = 0
    start = time.perf_counter()
    for i in range(args.count):
        m, n = (int(x) for x in rng.integers(1, args.max_side + 1, size=2))
        A = rng.random((m, n)) < rng.uniform(0.05, 0.5)
        M = SparseZ2Matrix.from_dense(A.astype(np.uint8))
        dense, rand = rank_dense(M), rank_randomized(M, args.seed + i + 1, args.trials)
        agree += dense == rand
        over += rand > dense
    _emit({"matrices": args.count, "agree": agree, "overestimates": over,
           "seconds": round(time.perf_counter() - start, 3)}, args.out)
    return EXIT_OK if over == 0 and agree >= 0.999 * args.count else EXIT_MISMATCH


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = _seed_default()
        if args.command == "rankcheck":
            return _run_rankcheck(args)
        _check_flags(args)
        if args.command == "oracle":
            return _run_oracle(args)
        return _run_measure(args)
    except NoNontrivialClass as exc:
        print(f"homolocal: {exc}", file=sys.stderr)
        return EXIT_NO_CLASS
    except (InputError, TooLarge) as exc:
        print(f"homolocal: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HomolocalError as exc:
        print(f"homolocal: internal error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
