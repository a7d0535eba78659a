"""``uqbl`` command line: ``verify``, ``basis``, ``matelem`` and ``decompose``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import verify, vertexop
from .fock import MODULE_LABELS, enumerate_basis, fock_module, g_eigenvalue

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a rational number: %r" % text) from None


def _common(p: argparse.ArgumentParser) -> None:
    # defaults are None so that environment overrides can be told apart from flags
    p.add_argument("--rank", "-l", type=int, default=None, help="rank l >= 2 (default 2)")
    p.add_argument("--max-degree", "-D", type=_fraction, default=None, help="maximal degree D (default 2)")
    p.add_argument("--mode-bound", "-M", type=int, default=None, help="mode bound M >= 1 (default 2)")
    p.add_argument(
        "--module",
        action="append",
        default=None,
        help="module label 0, 1 or l; repeat or comma-separate (default all)",
    )
    p.add_argument("--output", choices=("json", "text"), default=None)
    p.add_argument("--jobs", "-j", type=int, default=None, help="worker processes (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="uqbl", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    v = sub.add_parser("verify", help="run relation suites")
    _common(v)
    v.add_argument("--group", "-g", action="append", default=None, help="relation group; repeat or comma-separate")
    v.add_argument("--coproduct-degree", type=_fraction, default=None, help="degree bound for coproduct and dual checks (default 1)")
    v.add_argument("--timing", action="store_true", help="include wall time in the report")
    v.add_argument("--list-groups", action="store_true", help="print the relation groups and exit")

    b = sub.add_parser("basis", help="list canonical basis monomials")
    _common(b)
    b.add_argument("--irreducible", action="store_true", help="keep only the G eigenspace of the highest weight vector")

    m = sub.add_parser("matelem", help="exact vertex operator matrix element")
    _common(m)
    m.add_argument("--family", required=True, help="I, II, I*, II* (or typeI, typeII, dualI, dualII)")
    m.add_argument("--component", type=int, required=True)
    m.add_argument("--mode", type=_fraction, required=True)
    m.add_argument("--bra", required=True, help="basis monomial 'a(j,-m)...;psi(-k)...;lattice offset;module'")
    m.add_argument("--ket", required=True)
    m.add_argument("--normalization", choices=vertexop.NORMALIZATIONS, default="normalized")

    d = sub.add_parser("decompose", help="graded dimensions and the G split")
    _common(d)
    return parser


def _split_multi(values) -> tuple:
    out = []
    for v in values or ():
        out.extend(x.strip() for x in v.split(",") if x.strip())
    return tuple(out)


def _settings(args) -> dict:
    """Defaults, then ``UQBL_*`` variables, then flags."""
    s = {"rank": 2, "max_degree": Fraction(2), "mode_bound": 2, "modules": MODULE_LABELS, "output": "json", "jobs": 1}
    s.update(verify.config_from_env())
    flags = {
        "rank": args.rank,
        "max_degree": args.max_degree,
        "mode_bound": args.mode_bound,
        "modules": _split_multi(args.module) or None,
        "output": args.output,
        "jobs": args.jobs,
    }
    if hasattr(args, "group"):
        flags["groups"] = _split_multi(args.group) or None
        flags["coproduct_degree"] = args.coproduct_degree
    s.update({k: v for k, v in flags.items() if v is not None})
    return s


def _emit(obj, output: str, text: str) -> None:
    sys.stdout.write((json.dumps(obj, indent=2) if output == "json" else text) + "\n")


def cmd_verify(args, s) -> int:
    if args.list_groups:
        print("\n".join(verify.GROUPS))
        return EXIT_OK
    cfg = verify.RunConfig(
        rank=s["rank"],
        max_degree=s["max_degree"],
        mode_bound=s["mode_bound"],
        modules=tuple(s["modules"]),
        groups=tuple(s.get("groups", verify.GROUPS)),
        output=s["output"],
        jobs=s["jobs"],
        coproduct_degree=s.get("coproduct_degree", Fraction(1)),
        timing=args.timing,
    ).validated()
    report, code = verify.run(cfg)
    if cfg.output == "json":
        sys.stdout.write(verify.dumps(report) + "\n")
    else:
        sys.stdout.write(verify.render_text(report) + "\n")
    return code


def _modules(s) -> list:
    return [fock_module(s["rank"], verify._module_label(m)) for m in s["modules"]]


def _check_basic(s) -> None:
    verify.RunConfig(rank=s["rank"], max_degree=s["max_degree"], mode_bound=s["mode_bound"], modules=tuple(s["modules"])).validated()


def cmd_basis(args, s) -> int:
    _check_basic(s)
    out = {}
    graded = {}
    lines = []
    for mod in _modules(s):
        rows = []
        counts = []
        for deg, monos in enumerate_basis(mod, s["max_degree"], irreducible=args.irreducible).items():
            plus = 0
            for m in monos:
                g = g_eigenvalue(mod.space, m)
                plus += g > 0
                rows.append({"degree": str(deg), "state": verify.format_state(mod, m), "G": g})
                lines.append("%-5s %+d  %s" % (deg, g, verify.format_state(mod, m)))
            counts.append({"degree": str(deg), "dim": len(monos), "dim_G_plus": plus, "dim_G_minus": len(monos) - plus})
        out[mod.name] = rows
        graded[mod.name] = counts
    doc = {"schema": verify.SCHEMA, "rank": s["rank"], "max_degree": str(s["max_degree"]), "graded": graded, "basis": out}
    _emit(doc, s["output"], "\n".join(lines))
    return EXIT_OK


def cmd_decompose(args, s) -> int:
    _check_basic(s)
    out = {}
    lines = []
    for mod in _modules(s):
        rows = verify.decompose(mod, s["max_degree"])
        out[mod.name] = rows
        lines.append(mod.name)
        lines.append("  degree  dim   G+   G-  hw+  hw-")
        for r in rows:
            lines.append(
                "  %-6s %4d %4d %4d %4d %4d"
                % (r["degree"], r["dim"], r["G+"], r["G-"], r["highest_weight_G+"], r["highest_weight_G-"])
            )
    _emit({"schema": verify.SCHEMA, "rank": s["rank"], "max_degree": str(s["max_degree"]), "decomposition": out}, s["output"], "\n".join(lines))
    return EXIT_OK


def cmd_matelem(args, s) -> int:
    l = s["rank"]
    if l < 2:
        raise verify.ConfigError("rank must be an integer >= 2")
    ket_mod, ket = verify.parse_state(args.ket, l)
    bra_mod, bra = verify.parse_state(args.bra, l)
    fam = vertexop.vo_family(l, args.family, ket_mod.label, normalization=args.normalization)
    if bra_mod.space is not fam.target.space:
        raise verify.ConfigError("bra lies in %s, the operator maps into %s" % (bra_mod.name, fam.target.name))
    if len(bra) != 1 or len(ket) != 1:
        raise verify.ConfigError("bra and ket must be single basis monomials")
    (bmono, _), = bra.items()
    (kmono, _), = ket.items()
    # states name canonical basis monomials; the written operator order is not a coefficient
    value = vertexop.matrix_element(fam, bmono, args.component, args.mode, kmono)
    _emit(
        {
            "family": fam.name,
            "component": args.component,
            "mode": str(args.mode),
            "bra": verify.format_state(bra_mod, bmono),
            "ket": verify.format_state(ket_mod, kmono),
            "value": str(value),
        },
        s["output"] if args.output else "text",
        str(value),
    )
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        s = _settings(args)
        handler = {"verify": cmd_verify, "basis": cmd_basis, "decompose": cmd_decompose, "matelem": cmd_matelem}[args.command]
        return handler(args, s)
    except verify.ConfigError as exc:
        print("uqbl: error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print("uqbl: error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
