"""Command-line interface.

``polywidth verify`` runs a full experiment config; the one-shot subcommands
``gauge``, ``support``, ``dual`` and ``counts`` operate on a polytope JSON
file ({"dim": n, "symmetric": bool, "vertices": [[..]], "normals": [[..]]}).
"""

import argparse
import json
import sys

import numpy as np

from .families import face_counts
from .harness import run_experiment, _label
from .polytope import gauge, load_polytope, polar_dual, support, to_dict


def _parse_point(text, dim):
    values = [float(tok) for tok in text.replace(",", " ").split()]
    if len(values) != dim:
        raise SystemExit(f"point has {len(values)} coordinates, polytope has dim {dim}")
    return np.array(values)


def _cmd_verify(args):
    result = run_experiment(args.config, args.out, seed=args.seed,
                            samples=args.samples, parallel=args.parallel)
    for rp in result.reports:
        status = "ERROR" if rp.error else ("pass" if rp.all_pass else "FAIL")
        extra = f" ({rp.error})" if rp.error else ""
        print(f"[{status}] {_label(rp)}{extra}")
    summary = result.summary
    print(f"instances: {summary['instances']}  "
          f"min empirical constant: {summary['min_empirical_constant']}  "
          f"all pass: {summary['all_pass']}")
    print(f"report: {result.csv_path}")
    return 0 if summary["all_pass"] else 1


def _cmd_gauge(args):
    p = load_polytope(args.polytope)
    print(repr(gauge(p, _parse_point(args.point, p.dim))))
    return 0


def _cmd_support(args):
    p = load_polytope(args.polytope)
    print(repr(support(p, _parse_point(args.point, p.dim))))
    return 0


def _cmd_dual(args):
    dual = polar_dual(load_polytope(args.polytope))
    text = json.dumps(to_dict(dual))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text)
    return 0


def _cmd_counts(args):
    p = load_polytope(args.polytope)
    counts = face_counts(p)
    print(f"vertices: {counts.num_vertices}  facets: {counts.num_facets}  "
          f"method: {counts.method}")
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="polywidth",
        description="Polytope mean widths and vertex/facet count certificates")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run an experiment config")
    p_verify.add_argument("--config", required=True, help="JSON config file")
    p_verify.add_argument("--out", required=True, help="output directory")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--samples", type=int, default=None)
    p_verify.add_argument("--parallel", type=int, default=1, metavar="K")
    p_verify.set_defaults(func=_cmd_verify)

    for name, func, needs_point in (("gauge", _cmd_gauge, True),
                                    ("support", _cmd_support, True)):
        p_cmd = sub.add_parser(name, help=f"evaluate the {name} at a point")
        p_cmd.add_argument("polytope", help="polytope JSON file")
        p_cmd.add_argument("--point", required=True,
                           help="comma- or space-separated coordinates")
        p_cmd.set_defaults(func=func)

    p_dual = sub.add_parser("dual", help="write the polar dual as JSON")
    p_dual.add_argument("polytope")
    p_dual.add_argument("--out", default=None, help="output file (default stdout)")
    p_dual.set_defaults(func=_cmd_dual)

    p_counts = sub.add_parser("counts", help="exact vertex/facet counts")
    p_counts.add_argument("polytope")
    p_counts.set_defaults(func=_cmd_counts)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
