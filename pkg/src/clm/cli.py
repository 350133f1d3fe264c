"""``clm`` command-line front end.

Inputs are JSON documents read from a file argument or standard input;
results go to standard output.  Exit status: 0 success, 1 invalid input data
(error object on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from clm import identities, sampling
from clm import serialize as ser
from clm.chains import chain_from_collineation, collineation_from_chain, validate_chain
from clm.collineation import Flavor, flags, halphen_degeneration, limit_collineation
from clm.errors import CLMError
from clm.forms import isotropy_check
from clm.linalg import SplitContext, rat_str
from clm.stability import classify, dims_report, plucker_weight_support


class UsageError(Exception):
    pass


def _read(path: str) -> Any:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise ser.ParseError(f"cannot read {path}: {exc}") from exc
    return ser.loads(text)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


# --- text rendering ---------------------------------------------------------


def _is_matrix(d: Any) -> bool:
    return isinstance(d, dict) and set(d) == {"rows", "cols", "entries"}


def _render(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if _is_matrix(obj):
        if not obj["entries"]:
            return [pad + f"({obj['rows']}x{obj['cols']} empty)"]
        width = max((len(str(x)) for r in obj["entries"] for x in r), default=1)
        return [pad + "[ " + "  ".join(str(x).rjust(width) for x in r) + " ]" for r in obj["entries"]]
    if isinstance(obj, dict):
        lines = []
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and val and not (isinstance(val, list) and all(not isinstance(x, (dict, list)) for x in val)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(val)}")
        return lines
    if isinstance(obj, list):
        lines = []
        for i, val in enumerate(obj):
            lines.append(f"{pad}[{i}]")
            lines.extend(_render(val, indent + 1))
        return lines
    return [pad + _scalar(obj)]


def _scalar(val: Any) -> str:
    if isinstance(val, list):
        return "(" + ", ".join(_scalar(x) for x in val) + ")"
    if val is None:
        return "-"
    if isinstance(val, bool):
        return "yes" if val else "no"
    return str(val)


def _emit(obj: Any, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(ser.dumps(obj) + "\n")
    else:
        sys.stdout.write("\n".join(_render(obj)) + "\n")


# --- subcommands --------------------------------------------------------------


def _family_input(doc: dict):
    fam_doc = doc.get("family", doc) if isinstance(doc, dict) else doc
    family = ser.polymatrix_from_json(fam_doc)
    ctx = ser.ctx_from_json(doc["ctx"]) if isinstance(doc, dict) and "ctx" in doc else None
    domain = ser.subspace_from_json(doc["domain"]) if isinstance(doc, dict) and doc.get("domain") else None
    return family, ctx, domain


def cmd_classify(args) -> int:
    if args.sweep:
        rng = random.Random(args.seed)
        agree = 0
        for _ in range(args.sweep):
            u = rng.randint(1, 3)
            U = sampling.subspace(rng, rng.randint(u, 4), rng.randint(u, 4), u)
            sigma = Fraction(rng.randint(-2 * 4, 2 * (u + 1) * 4), 8)
            ok = classify(U, sigma).status == plucker_weight_support(U).oracle_status(sigma)
            agree += ok
        _emit({"samples": args.sweep, "agree": agree, "seed": args.seed}, args.format)
        return 0 if agree == args.sweep else 1
    if args.sigma is None:
        raise UsageError("classify: --sigma is required unless --sweep is given")
    U = ser.subspace_from_json(_read(args.input))
    _emit(ser.stability_to_json(classify(U, args.sigma)), args.format)
    return 0


def cmd_weights(args) -> int:
    U = ser.subspace_from_json(_read(args.input))
    ws = plucker_weight_support(U)
    out = ser.weights_to_json(ws)
    if args.sigma is not None:
        out["oracle_status"] = ws.oracle_status(args.sigma)
        out["sigma"] = rat_str(args.sigma)
    _emit(out, args.format)
    return 0


def cmd_dims(args) -> int:
    ctx = SplitContext(args.dim_v, args.dim_w, args.u)
    _emit(ser.dims_to_json(dims_report(ctx, args.flavor)), args.format)
    return 0


def _limit(args, flavor: Flavor) -> int:
    family, ctx, domain = _family_input(_read(args.input))
    cc = limit_collineation(family, ctx, flavor, domain)
    out = ser.cc_to_json(cc)
    if args.flags:
        fp, halphen = flags(cc)
        out = {"collineation": out, "flags": ser.flags_to_json(fp, halphen)}
    _emit(out, args.format)
    return 0


def cmd_chain_validate(args) -> int:
    chain = ser.chain_from_json(_read(args.input))
    report = validate_chain(chain)
    _emit(ser.chain_report_to_json(report), args.format)
    return 0 if report.ok else 1


def cmd_chain_from_cc(args) -> int:
    cc = ser.cc_from_json(_read(args.input))
    _emit(ser.chain_to_json(chain_from_collineation(cc)), args.format)
    return 0


def cmd_cc_from_chain(args) -> int:
    chain = ser.chain_from_json(_read(args.input))
    _emit(ser.cc_to_json(collineation_from_chain(chain, args.flavor)), args.format)
    return 0


def cmd_halphen(args) -> int:
    if args.u is not None:
        rng = random.Random(args.seed)
        a = sampling.integer_matrix_with_leading_minors(rng, args.u)
        ctx = None
    else:
        doc = _read(args.input)
        a = ser.matrix_from_json(doc.get("matrix", doc))
        ctx = ser.ctx_from_json(doc["ctx"]) if "ctx" in doc else None
    cc = halphen_degeneration(a, ctx)
    _emit(ser.cc_to_json(cc), args.format)
    return 0


def cmd_isotropy(args) -> int:
    U = ser.subspace_from_json(_read(args.input))
    _emit(ser.isotropy_to_json(isotropy_check(U, args.kind)), args.format)
    return 0


def cmd_identity(args) -> int:
    if args.u is not None and args.k is not None:
        res = identities.section_dim_identity(args.u, args.k)
        _emit(ser.identity_to_json(res), args.format)
        return 0 if res.equal else 1
    results = identities.sweep(args.max_u, args.max_k)
    if args.format == "json":
        _emit([ser.identity_to_json(r) for r in results], "json")
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "k", "lhs", "rhs", "equal"])
        for r in results:
            w.writerow([r.u, r.k, r.lhs, r.rhs, str(r.equal).lower()])
        sys.stdout.write(buf.getvalue())
    return 0 if all(r.equal for r in results) else 1


def cmd_snake_oil(args) -> int:
    if args.k is not None:
        lhs, rhs = identities.generating_function_check(args.k, args.order)
        out = {"k": args.k, "order": args.order, "sum_side": ser.series_to_json(lhs), "binomial_side": ser.series_to_json(rhs)}
        ok = lhs.equal and rhs.equal
    else:
        res = identities.snake_oil_check(args.j, args.order)
        out = ser.series_to_json(res)
        ok = res.equal
    _emit(out, args.format)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized inputs")

    parser = argparse.ArgumentParser(prog="clm", description="Complete collineations, GIT chambers and nodal chains.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, with_input=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if with_input:
            p.add_argument("input", nargs="?", default="-", help="JSON file, or - for standard input")
        p.set_defaults(func=func)
        return p

    p = add("classify", cmd_classify, "stability of a subspace at sigma")
    p.add_argument("--sigma", type=_rational)
    p.add_argument("--sweep", type=int, default=0, help="check the weight oracle on N random subspaces instead")
    p = add("weights", cmd_weights, "Pluecker weight support and orbit degree")
    p.add_argument("--sigma", type=_rational)
    p = add("dims", cmd_dims, "dimension bookkeeping", with_input=False)
    p.add_argument("--dim-v", type=int, required=True)
    p.add_argument("--dim-w", type=int, required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--flavor", choices=[f.value for f in Flavor], default="general")
    for name, flavor in (("collineate", Flavor.GENERAL), ("quadric", Flavor.SYMMETRIC), ("skew", Flavor.SKEW)):
        p = add(name, lambda a, fl=flavor: _limit(a, fl), f"limit of a {flavor.value} family at t=0")
        p.add_argument("--flags", action="store_true", help="also report the flags and the Halphen test")
    add("chain-validate", cmd_chain_validate, "check the five chain equations")
    add("chain-from-cc", cmd_chain_from_cc, "nodal chain of a complete collineation")
    p = add("cc-from-chain", cmd_cc_from_chain, "complete collineation of a nodal chain")
    p.add_argument("--flavor", choices=[f.value for f in Flavor], default="general")
    p = add("halphen", cmd_halphen, "Halphen degeneration of an invertible matrix")
    p.add_argument("--u", type=int, help="use a random integer matrix of this size (see --seed)")
    p = add("isotropy", cmd_isotropy, "isotropy for the pairings on V + V*")
    p.add_argument("--kind", choices=("symplectic", "symmetric"), required=True)
    p = add("identity", cmd_identity, "section-count binomial identity", with_input=False)
    p.add_argument("--u", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--max-u", type=int, default=40)
    p.add_argument("--max-k", type=int, default=12)
    p = add("snake-oil", cmd_snake_oil, "generating-function identities", with_input=False)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--k", type=int, help="check the (1-x)^(-1-2k) consequence instead")
    p.add_argument("--order", type=int, default=30)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except CLMError as exc:
        sys.stderr.write(ser.dumps(exc.payload()) + "\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(ser.dumps({"error": "domain", "message": str(exc)}) + "\n")
        return 1
    except (KeyError, TypeError, AttributeError) as exc:
        sys.stderr.write(ser.dumps({"error": "parse", "message": f"unexpected input structure: {exc}"}) + "\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
