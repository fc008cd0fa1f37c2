"""Command line: ``supdiff verify | examples | gen | oracle``.

Exit codes: 0 success, 1 verdict failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from ..errors import SupdiffError
from ..formulas import default_directions, lhs_subdifferential
from ..polyrat import support
from .bundled import reproduce_paper_examples
from .generator import GenKind, gen_random_instance
from .instances import dumps, load
from .oracle import oracle_supports
from .report import DEFAULT_TOL, dumps_json, fmt_value, parse_grid, run_verify


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit with 2, as argparse does, but without noise
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="supdiff", description="Exact checks of subdifferential formulas for suprema.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, instance=True):
        if instance:
            sp.add_argument("--instance", required=True, help="instance JSON path or bundled:NAME")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--report", choices=("text", "json"), default="text")

    v = sub.add_parser("verify", help="verify formulas on one instance")
    common(v)
    v.add_argument("--formula", default="all", help="formula name or 'all'")
    v.add_argument("--eps-grid", default=None, help='e.g. "1/4,1/16,1/64" or "squares:6"')
    v.add_argument("--directions", type=int, default=50)
    v.add_argument("--tol", default=str(DEFAULT_TOL))

    e = sub.add_parser("examples", help="reproduce the bundled example table")
    common(e, instance=False)
    e.add_argument("--directions", type=int, default=50)

    g = sub.add_parser("gen", help="print a random instance as JSON")
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--k", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--kind", choices=[k.value for k in GenKind], default=GenKind.FULL_DOMAIN.value)
    g.add_argument("--out", default=None, help="write to this file instead of stdout")

    o = sub.add_parser("oracle", help="directional derivatives next to the computed support")
    common(o)
    o.add_argument("--directions", type=int, default=10)
    return p


def _emit(rep, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(dumps_json(rep.to_json()))
    else:
        print(rep.to_text())


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            rep = run_verify(args.instance, args.formula, args.eps_grid, args.directions, args.seed,
                             Fraction(args.tol))
            _emit(rep, args.report)
            return 0 if rep.ok else 1
        if args.command == "examples":
            rep = reproduce_paper_examples(args.seed, args.directions)
            _emit(rep, args.report)
            return 0 if rep.ok else 1
        if args.command == "gen":
            text = dumps(gen_random_instance(args.n, args.k, args.seed, args.kind))
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        if args.command == "oracle":
            inst = load(args.instance)
            lhs = lhs_subdifferential(inst.family, inst.x)
            rows, ok = [], True
            dirs = default_directions(inst.family.dim, args.directions, args.seed, (lhs,))
            for d, o in zip(dirs, oracle_supports(inst.family, inst.x, dirs)):
                s = support(lhs, d)
                ok &= o == s
                rows.append({"direction": [str(c) for c in d], "oracle": fmt_value(o), "support": fmt_value(s),
                             "agree": o == s})
            if args.report == "json":
                sys.stdout.write(dumps_json({"instance": inst.name, "ok": ok, "rows": rows}))
            else:
                print(f"instance {inst.name}")
                for r in rows:
                    mark = "ok " if r["agree"] else "BAD"
                    print(f"  [{mark}] d=({', '.join(r['direction'])})  f'(x;d)={r['oracle']}  support={r['support']}")
            return 0 if ok else 1
    except SupdiffError as exc:
        sys.stderr.write(f"supdiff: {exc.code}: {exc}\n")
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"supdiff: usage error: {exc}\n")
        return 2
    return 2  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
