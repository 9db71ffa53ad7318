"""Command line entry point. Every subcommand prints one JSON document (or CSV) on stdout."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .core import (
    BimatrixGame,
    GameFormatError,
    SymmetricGame,
    format_rational,
    load_game,
    read_strategy,
    strategy_to_json,
    to_rational,
)
from .dominance import strictly_dominated, weakly_dominated
from .equalizer import find_equalizer
from .oracle import DEFAULT_MAX_N, enumerate_symmetric_nash, is_symmetric_nash
from .solver import SolveCertificate, solve

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VIOLATION = 3

log = logging.getLogger("symnash")


def _emit(obj):
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _symmetric(path) -> SymmetricGame:
    game = load_game(path)
    if not isinstance(game, SymmetricGame):
        raise GameFormatError(f"{path}: expected a symmetric game")
    return game


def _float_vector(text):
    """Decimals or p/q fractions, comma or space separated."""
    return [float(to_rational(v)) if "/" in v else float(v)
            for v in text.replace(",", " ").split()]


def cmd_equalizer(args):
    cert = find_equalizer(_symmetric(args.game))
    if cert is None:
        _emit({"found": False, "X": None, "c": None})
    else:
        _emit({"found": True, **strategy_to_json(cert.X), "c": format_rational(cert.c)})
    return EXIT_OK


def cmd_dominance(args):
    game = _symmetric(args.game)
    test = strictly_dominated if args.strict else weakly_dominated
    out = []
    if game.n >= 2:
        for i in range(game.n):
            w = test(i, game)
            if w is not None:
                out.append({"index": i + 1, "dominator": strategy_to_json(w.X)["X"],
                            "slack": [format_rational(s) for s in w.slack]})
    _emit({"criterion": "strict" if args.strict else "weak", "dominated": out})
    return EXIT_OK


def cmd_solve(args):
    out = solve(_symmetric(args.game))
    _emit(out.to_json())
    return EXIT_OK if isinstance(out, SolveCertificate) and out.verified else EXIT_VIOLATION


def cmd_check(args):
    game = _symmetric(args.game)
    with open(args.strategy, encoding="utf-8") as fh:
        X = read_strategy(fh.read())
    rep = is_symmetric_nash(game, X)
    _emit({**strategy_to_json(X), **rep.to_json()})
    return EXIT_OK


def cmd_oracle(args):
    game = _symmetric(args.game)
    eqs = enumerate_symmetric_nash(game, max_n=args.max_n)
    _emit({"n": game.n, "equilibria": [strategy_to_json(X) for X in eqs]})
    return EXIT_OK


def cmd_hedge_trace(args):
    from .hedge import trajectory, trajectory_csv

    game = _symmetric(args.game)
    x0 = _float_vector(args.x0)
    if args.reference:
        ref = _float_vector(args.reference)
    else:
        cert = find_equalizer(game)
        ref = [float(v) for v in cert.X] if cert else [1.0 / game.n] * game.n
    rows = trajectory(game, x0, args.alpha, args.steps, ref)
    sys.stdout.write(trajectory_csv(rows))
    return EXIT_OK


def cmd_probe(args):
    from .hedge import PROBES

    fn = PROBES[args.lemma]
    kwargs = {"trials": args.trials, "seed": args.seed}
    if args.tol is not None:
        kwargs["tol"] = args.tol
    rep = fn(**kwargs)
    _emit(rep.to_json(include_samples=not args.summary))
    return EXIT_OK if rep.ok else 1


def cmd_bimatrix_solve(args):
    from .symmetrize import bimatrix_solve

    game = load_game(args.game)
    if not isinstance(game, BimatrixGame):
        raise GameFormatError(f"{args.game}: expected a bimatrix game")
    sol, res, trail = bimatrix_solve(game, max_n=args.max_n)
    certs = []
    for t in trail:
        entry = {"route": t["route"], "result": t["result"]}
        if "certificate" in t:
            entry["certificate"] = t["certificate"].to_json()
        if "violation" in t:
            entry["violation"] = t["violation"].to_json()
        if "Z" in t:
            entry["Z"] = strategy_to_json(t["Z"])["X"]
        certs.append(entry)
    doc = {"shift": format_rational(res.shift), "block_split": res.block_split,
           "certificates": certs}
    if sol is None:
        _emit({"found": False, **doc})
        return EXIT_VIOLATION
    _emit({"found": True, "P": strategy_to_json(sol.P), "Q": strategy_to_json(sol.Q),
           "row_check": sol.row_check.to_json(), "col_check": sol.col_check.to_json(), **doc})
    return EXIT_OK


def cmd_hunt(args):
    from .harness import GenSpec, hunt

    spec = GenSpec(args.n_min, args.n_max, args.entry_bound, args.trials, args.seed, args.family)
    rep = hunt(spec, jobs=args.jobs)
    _emit(rep.to_json())
    log.info("hunt finished: %s", rep.counts)
    return rep.exit_code


def cmd_replay(args):
    from .harness import canonical, replay

    with open(args.report, encoding="utf-8") as fh:
        doc = json.load(fh)
    entries = doc.get("counterexamples", [doc]) if isinstance(doc, dict) else doc
    if args.index is not None:
        entries = [entries[args.index]]
    results = []
    for e in entries:
        fresh = replay(e)
        results.append({"trial": e["trial"], "identical": canonical(fresh) == canonical(e),
                        "result": fresh.get("result", {}).get("kind", fresh.get("bucket"))})
    _emit({"replayed": len(results), "all_identical": all(r["identical"] for r in results),
           "entries": results})
    return EXIT_OK if all(r["identical"] for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symnash", description=__doc__)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("equalizer", help="find an equalizer of a symmetric game")
    s.add_argument("game")
    s.set_defaults(fn=cmd_equalizer)

    s = sub.add_parser("dominance", help="list dominated pure strategies with witnesses")
    s.add_argument("game")
    s.add_argument("--strict", action="store_true", help="strict instead of weak dominance")
    s.set_defaults(fn=cmd_dominance)

    s = sub.add_parser("solve", help="equalizer-or-eliminate symmetric equilibrium (exit 3 on violation)")
    s.add_argument("game")
    s.set_defaults(fn=cmd_solve)

    s = sub.add_parser("check", help="exact symmetric Nash check of a strategy")
    s.add_argument("game")
    s.add_argument("strategy")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("oracle", help="support enumeration of symmetric equilibria")
    s.add_argument("game")
    s.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="override the size cap")
    s.set_defaults(fn=cmd_oracle)

    s = sub.add_parser("hedge-trace", help="Hedge trajectory as CSV")
    s.add_argument("game")
    s.add_argument("--x0", required=True, help='start strategy, e.g. "0.5,0.3,0.2"')
    s.add_argument("--alpha", type=float, default=1.0)
    s.add_argument("--steps", type=int, default=100)
    s.add_argument("--reference", help="strategy to measure relative entropy from "
                   "(default: an equalizer, else uniform)")
    s.set_defaults(fn=cmd_hedge_trace)

    from .hedge.probes import PROBES

    s = sub.add_parser("probe", help="numerical probe of a Hedge lemma")
    s.add_argument("lemma", choices=sorted(PROBES))
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=11)
    s.add_argument("--tol", type=float, default=None, help="override the probe's tolerance")
    s.add_argument("--summary", action="store_true", help="omit per-sample records")
    s.set_defaults(fn=cmd_probe)

    s = sub.add_parser("bimatrix-solve", help="solve a bimatrix game through symmetrization")
    s.add_argument("game")
    s.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    s.set_defaults(fn=cmd_bimatrix_solve)

    from .harness import FAMILIES

    s = sub.add_parser("hunt", help="randomized counterexample hunt (exit 3 if any found)")
    s.add_argument("--n-min", type=int, default=2)
    s.add_argument("--n-max", type=int, default=6)
    s.add_argument("--entry-bound", type=int, default=5)
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--family", choices=FAMILIES, default="uniform")
    s.set_defaults(fn=cmd_hunt)

    s = sub.add_parser("replay", help="re-run counterexamples from a hunt report")
    s.add_argument("report")
    s.add_argument("--index", type=int, help="replay only this counterexample (0-based)")
    s.set_defaults(fn=cmd_replay)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:  # includes GameFormatError, OracleRefused
        print(f"symnash: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
