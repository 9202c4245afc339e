"""Command line interface: ``wcifano {check,enumerate,verify,reduce,blowup}``.

Defaults may come from a flat ``key=value`` file given by ``--config`` or
the ``WCIFANO_CONFIG`` environment variable; explicit flags win.  Keys are
the long option names with dashes or underscores (``max_weight = 20``).

Exit codes: 0 success / confirmed within caps, 1 violation found, 2 usage
or hypothesis error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__, kernel
from .blowup import blowup_table, closed_form_pairings, closed_form_top
from .conditions import necessary_conditions
from .core import WciCandidate, chern_profile, is_l_fano, l_window
from .enumerate import (SCHEMA, SearchCaps, default_m_max, filtered_corpus, run_search,
                        verify_log2, verify_log3, verify_monotonic)
from .reduction import (AdditiveState, HypothesisError, MultiplicativeState, frac_str,
                        parse_rational, reduce_additive, reduce_multiplicative)

log = logging.getLogger("wcifano")

CONFIG_ENV = "WCIFANO_CONFIG"


class UsageError(Exception):
    pass


def parse_int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return values


def parse_rational_list(text: str) -> list:
    try:
        values = [parse_rational(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    if not values or any(v <= 0 for v in values):
        raise argparse.ArgumentTypeError(f"expected positive rationals, got {text!r}")
    return values


def parse_l(text: str):
    if text == "auto":
        return text
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--l must be a positive integer or 'auto', got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"--l must be >= 1, got {value}")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def load_config(path: str | os.PathLike) -> dict[str, str]:
    """Read a flat ``key=value`` file; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (x.strip() for x in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


# option name -> (type, builtin default); None defaults mean "required or unset"
_OPTIONS = {
    "dim": (positive_int, None),
    "dim_min": (positive_int, None),
    "dim_max": (positive_int, None),
    "max_weight": (positive_int, 20),
    "max_degree": (positive_int, 40),
    "max_codim": (positive_int, None),
    "jobs": (positive_int, 1),
    "l": (parse_l, None),
    "m_max": (positive_int, None),
    "format": (str, "jsonl"),
    "backend": (str, None),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wcifano", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help=f"key=value defaults file (else ${CONFIG_ENV})")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="necessary conditions and Chern coefficients of one candidate")
    p.add_argument("--weights", type=parse_int_list, required=True)
    p.add_argument("--degrees", type=parse_int_list, required=True)
    p.add_argument("--l", type=positive_int)

    def caps_args(p, dims):
        if dims:
            p.add_argument("--dim-min", type=positive_int)
            p.add_argument("--dim-max", type=positive_int)
        else:
            p.add_argument("--dim", type=positive_int)
        p.add_argument("--max-weight", type=positive_int)
        p.add_argument("--max-degree", type=positive_int)
        p.add_argument("--max-codim", type=positive_int)
        p.add_argument("--jobs", type=positive_int)
        p.add_argument("--backend", choices=("compiled", "python"))

    p = sub.add_parser("enumerate", help="stream every survivor in a box")
    caps_args(p, dims=False)
    p.add_argument("--l", type=parse_l, help="integer or 'auto' (largest l of the window)")
    p.add_argument("--out", help="write records here instead of stdout")
    p.add_argument("--format", choices=("jsonl", "csv"))

    p = sub.add_parser("verify", help="confirm a theorem within caps")
    p.add_argument("--theorem", choices=("log2", "log3", "monotonic"), required=True)
    caps_args(p, dims=True)
    p.add_argument("--m-max", type=positive_int, help="monotonic: check c_m > c_{m+1} for m < m_max")

    p = sub.add_parser("reduce", help="run a reduction engine and print its trace")
    p.add_argument("--mode", choices=("additive", "multiplicative"), required=True)
    p.add_argument("--weights", type=parse_rational_list, required=True,
                   help="comma separated; p/q allowed in multiplicative mode")
    p.add_argument("--degrees", type=parse_int_list, required=True)
    p.add_argument("--trace", help="also write the trace as JSONL here")

    p = sub.add_parser("blowup", help="Chern pairings on the blow-up of P^n at a point")
    p.add_argument("--n", type=positive_int, required=True)
    return parser


def resolve(args: argparse.Namespace, file_cfg: dict[str, str]) -> dict:
    """Merge builtin defaults, the config file and flags (in that order)."""
    known = set(vars(args))
    for key in file_cfg:
        if key not in _OPTIONS:
            raise UsageError(f"unknown config key {key!r}")
    cfg = {}
    for key, (conv, default) in _OPTIONS.items():
        if key not in known:
            continue
        value = getattr(args, key)
        if value is None and key in file_cfg:
            try:
                value = conv(file_cfg[key])
            except (argparse.ArgumentTypeError, ValueError) as exc:
                raise UsageError(f"config {key}: {exc}")
        if value is None:
            value = default
        cfg[key] = value
        setattr(args, key, value)
    return cfg


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False)


def cmd_check(args, cfg) -> int:
    cand = WciCandidate.of(args.weights, args.degrees)
    lo, hi = l_window(cand.n)
    depth = args.l or max(hi, 1)
    verdicts = {str(l): is_l_fano(cand, l) for l in range(lo, hi + 1)}
    if args.l:
        verdicts[str(args.l)] = is_l_fano(cand, args.l)
    report = {
        "schema": SCHEMA,
        "command": "check",
        "config": cfg,
        "candidate": {"weights": list(cand.weights), "degrees": list(cand.degrees),
                      "n": cand.n, "N": cand.N, "k": cand.k, "s": cand.s, "label": str(cand)},
        "conditions": necessary_conditions(cand).to_dict(),
        "chern": list(chern_profile(cand, depth).coefficients),
        "fano": is_l_fano(cand, 1),
        "window": [lo, hi],
        "l_fano": verdicts,
    }
    print(_dump(report))
    return 0


def _caps(args, dim) -> SearchCaps:
    try:
        return SearchCaps(dim, args.max_weight, args.max_degree, args.max_codim)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_enumerate(args, cfg) -> int:
    if args.dim is None:
        raise UsageError("--dim is required")
    caps = _caps(args, args.dim)
    l = l_window(args.dim)[1] if args.l in (None, "auto") else args.l
    cfg["l"] = l
    result = run_search(caps, l, args.jobs, backend=args.backend)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        if args.format == "csv":
            w = csv.writer(out, lineterminator="\n")
            w.writerow(["n", "k", "weights", "degrees"] + [f"c{m}" for m in range(1, l + 1)])
            for sv in result.survivors:
                c = sv.cand
                w.writerow([c.n, c.k, "+".join(map(str, c.weights)), "+".join(map(str, c.degrees))]
                           + list(sv.chern.coefficients))
        else:
            for sv in result.survivors:
                out.write(_dump(sv.to_record()) + "\n")
    finally:
        if args.out:
            out.close()
    backend = args.backend or kernel.BACKEND
    print(f"scanned={result.scanned} survivors={len(result.survivors)} "
          f"elapsed={result.elapsed:.3f}s backend={backend} config={_dump(cfg)}", file=sys.stderr)
    return 0


def cmd_verify(args, cfg) -> int:
    if args.dim_min is None or args.dim_max is None:
        raise UsageError("--dim-min and --dim-max are required")
    if args.dim_min > args.dim_max:
        raise UsageError(f"empty dimension range {args.dim_min}..{args.dim_max}")
    dims = list(range(args.dim_min, args.dim_max + 1))
    for n in dims:
        _caps(args, n)
    kw = dict(jobs=args.jobs, backend=args.backend)
    if args.theorem == "log2":
        rep = verify_log2(dims, args.max_weight, args.max_degree, args.max_codim, **kw)
    elif args.theorem == "log3":
        rep = verify_log3(dims, args.max_weight, args.max_degree, args.max_codim, **kw)
    else:
        m_max = args.m_max or default_m_max(dims)
        cfg["m_max"] = m_max
        corpus, scanned = filtered_corpus(dims, args.max_weight, args.max_degree,
                                          args.max_codim, **kw)
        rep = verify_monotonic(corpus, m_max)
        rep.caps.update(max_weight=args.max_weight, max_degree=args.max_degree,
                        max_codim=args.max_codim)
        rep.dims = dims
        rep.runs.append({"corpus_scanned": scanned, "corpus_size": len(corpus)})
    out = rep.to_dict()
    out["config"] = cfg
    print(_dump(out))
    return 1 if rep.violations else 0


def cmd_reduce(args, cfg) -> int:
    if args.mode == "additive":
        if any(w.denominator != 1 for w in args.weights):
            raise UsageError("additive mode needs integer weights")
        trace = reduce_additive(AdditiveState([int(w) for w in args.weights], args.degrees))
    else:
        trace = reduce_multiplicative(MultiplicativeState(args.weights, args.degrees))
    if args.trace:
        with open(args.trace, "w") as fh:
            trace.write_jsonl(fh)
    out = trace.to_dict()
    out["config"] = {"mode": args.mode, "weights": [frac_str(w) for w in args.weights],
                     "degrees": args.degrees}
    print(_dump(out))
    return 0


def cmd_blowup(args, cfg) -> int:
    if args.n < 2:
        raise UsageError("--n must be >= 2")
    rows, top = blowup_table(args.n)
    consistent = (all((r.ch_dot_X, r.ch_dot_Y) == closed_form_pairings(r.n, r.k) for r in rows)
                  and top == closed_form_top(args.n))
    print(_dump({"schema": SCHEMA, "command": "blowup", "config": {"n": args.n},
                 "rows": [r.to_dict() for r in rows], "top": frac_str(top),
                 "closed_forms_agree": consistent}))
    return 0


COMMANDS = {"check": cmd_check, "enumerate": cmd_enumerate, "verify": cmd_verify,
            "reduce": cmd_reduce, "blowup": cmd_blowup}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        path = args.config or os.environ.get(CONFIG_ENV)
        file_cfg = load_config(path) if path else {}
        cfg = resolve(args, file_cfg)
        if path:
            cfg["config_file"] = str(path)
        return COMMANDS[args.command](args, cfg)
    except HypothesisError as exc:
        print(f"wcifano: hypothesis {exc.hypothesis} failed: {exc.detail}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, OSError) as exc:
        print(f"wcifano: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
