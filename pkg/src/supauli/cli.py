"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

import argparse
import json
import sys

import numpy as np

from . import basis_change, checks, gellmann, pauli, render, sugroup

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _dump(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _load_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from None


def _load_operator(path):
    """Matrix JSON or parameter-vector JSON, returned as a dense matrix."""
    obj = _load_json(path)
    if isinstance(obj, dict) and "psi" in obj:
        return sugroup.build_element(sugroup.SuParameters.from_json(obj))
    return render.matrix_from_json(obj)


def _dimension(args):
    n = getattr(args, "n", None)
    m = getattr(args, "m", None)
    if n is not None and m is not None and n != 2**m:
        raise UsageError(f"--n {n} and --m {m} disagree")
    if n is None and m is not None:
        n = 2**m
    if n is None:
        raise UsageError("give --n or --m")
    return n


def _matrix_output(mat, args):
    if args.format == "json":
        return _dump(render.matrix_to_json(mat))
    return render.format_matrix(mat, args.tolerance)


def _generator_terms(coeffs):
    return [
        {"index": idx.flat, "label": idx.label(), "coeff": float(c)}
        for idx, c in sorted(coeffs.items(), key=lambda kv: kv[0].flat)
    ]


def _generator_text(coeffs, tol):
    if not coeffs:
        return "0"
    lines = []
    for idx, c in sorted(coeffs.items(), key=lambda kv: kv[0].flat):
        lines.append(f"{render.format_scalar(c, tol):>8}  X{idx.flat} ({idx.label()})")
    return "\n".join(lines)


def _decomposition_text(d, tol):
    if not d.terms:
        return "0"
    return "\n".join(f"{render.format_scalar(c, tol):>8}  {p}" for p, c in d.items())


def cmd_gen(args):
    n = _dimension(args)
    idx = gellmann.parse_index(n, args.index)
    mat = gellmann.generator(idx)
    if args.format == "json":
        out = render.matrix_to_json(mat)
        out.update(index=idx.flat, label=idx.label(), family=idx.family.name.lower())
        return _dump(out)
    return f"X{idx.flat} ({idx.label()})\n" + render.format_matrix(mat, args.tolerance)


def cmd_pauli(args):
    p = pauli.make_string(args.string)
    mat = pauli.materialize(p)
    if args.format == "json":
        out = render.matrix_to_json(mat)
        out.update(
            string=p.labels,
            flip_mask=p.flip_mask,
            z_mask=p.z_mask,
            y_count=p.y_count,
            form=str(pauli.classify_form(p)),
        )
        return _dump(out)
    return f"{p} ({pauli.classify_form(p)})\n" + render.format_matrix(mat, args.tolerance)


def cmd_classify(args):
    p = pauli.make_string(args.string)
    form = pauli.classify_form(p)
    if args.format == "json":
        return _dump(
            {
                "string": p.labels,
                "form": str(form),
                "pattern": list(form.pattern),
                "flip_mask": p.flip_mask,
                "z_mask": p.z_mask,
                "y_count": p.y_count,
            }
        )
    m = p.m
    return f"{p}: {form}  flip_mask={p.flip_mask:0{m}b} z_mask={p.z_mask:0{m}b} y_count={p.y_count}"


def cmd_table(args):
    table = basis_change.classification_table(args.m)
    if args.format == "json":
        return _dump(
            {
                "m": args.m,
                "forms": [{"form": str(form), **cells} for form, cells in table.items()],
            }
        )
    lines = []
    for form, cells in table.items():
        lines.append(f"{form} form generator:")
        if form.is_diagonal:
            lines.append("  " + ", ".join(f"X{i}" for i in cells["diagonal"]))
        else:
            lines.append("  Real part      : " + ", ".join(f"X{i}" for i in cells["real"]))
            lines.append("  Imaginary part : " + ", ".join(f"X{i}" for i in cells["imaginary"]))
    return "\n".join(lines)


def cmd_decompose(args):
    mat = _load_operator(args.input)
    if args.basis == "generator":
        coeffs = basis_change.decompose_in_generators(mat, args.tolerance_su)
        if args.format == "json":
            return _dump({"n": int(mat.shape[0]), "terms": _generator_terms(coeffs)})
        return _generator_text(coeffs, args.tolerance)
    fn = basis_change.decompose if args.naive else basis_change.fast_decompose
    d = fn(mat)
    if args.format == "json":
        return _dump(d.to_json())
    return _decomposition_text(d, args.tolerance)


def cmd_compose(args):
    obj = _load_json(args.input)
    d = basis_change.Decomposition.from_json(obj)
    return _matrix_output(basis_change.compose(d), args)


def cmd_cob(args):
    form = pauli.FormTag.parse(args.form)
    if args.m is not None and args.m != form.m:
        raise UsageError(f"form {form} has {form.m} factors but --m {args.m}")
    block = basis_change.sector_block(form, args.part)
    half = 2 ** (form.m - 1)
    orthogonal = bool(np.array_equal(block.g @ block.g.T, half * np.eye(len(block.g))))
    if args.format == "json":
        out = block.to_json()
        out["rows_orthogonal"] = orthogonal if block.scale is not None else None
        return _dump(out)
    lines = [
        f"{form}, {block.part.value} part: strings = g . generators",
        render.format_matrix(
            block.g,
            row_labels=[p.labels for p in block.strings],
            col_labels=[f"X{i}" for i in block.indices],
        ),
    ]
    if block.scale is not None:
        lines.append(f"inverse: generators = {block.scale} . g^T . strings")
        lines.append(f"g . g^T = {half} I: {'yes' if orthogonal else 'NO'}")
        h = block.normalized()
        self_inverse = block.is_symmetric and np.allclose(h @ h, np.eye(len(h)), atol=1e-12)
        lines.append(
            f"normalized h = g / sqrt({half}): symmetric={'yes' if block.is_symmetric else 'no'}, "
            f"self-inverse={'yes' if self_inverse else 'no'}"
        )
    else:
        lines.append("diagonal sector: generators are not orthogonal; inverse solved exactly")
    return "\n".join(lines)


def cmd_params(args):
    if args.action == "count":
        n = _dimension(args)
        count = sugroup.free_parameter_count(n)
        pairs = n * (n - 1) // 2
        if args.format == "json":
            return _dump({"n": n, "count": count, "diagonal": n - 1, "real": pairs, "imaginary": pairs})
        return f"su({n}): {n - 1} + {pairs} + {pairs} = {count} free parameters"
    if args.input is None:
        raise UsageError(f"params {args.action} needs an input file")
    if args.action == "build":
        p = sugroup.SuParameters.from_json(_load_json(args.input))
        return _matrix_output(sugroup.build_element(p), args)
    mat = render.matrix_from_json(_load_json(args.input))
    p = sugroup.extract_params(mat, args.tolerance_su)
    if args.format == "json":
        return _dump(p.to_json())
    return "\n".join(
        f"{name} = [{', '.join(render.format_scalar(v, args.tolerance) for v in vals)}]"
        for name, vals in (("psi", p.psi), ("a", p.a), ("b", p.b))
    )


def cmd_exp(args):
    obj = _load_json(args.input)
    p = sugroup.SuParameters.from_json(obj)
    u = sugroup.exponentiate(p, sugroup.Convention(args.convention))
    return _matrix_output(u, args)


def cmd_verify(args):
    kwargs = {"trials": args.trials, "seed": args.seed}
    results = checks.run_suite(args.suite, args.m, **kwargs)
    failed = any(not r.passed for r in results)
    if args.format == "json":
        out = _dump(
            {
                "m": args.m,
                "passed": not failed,
                "results": [
                    {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
                ],
            }
        )
    else:
        out = "\n".join(str(r) for r in results)
    return out, EXIT_VERIFY_FAILED if failed else EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument(
        "--tolerance",
        type=float,
        default=1e-12,
        help="tolerance for exact-symbol rendering (default 1e-12)",
    )

    parser = argparse.ArgumentParser(
        prog="supauli",
        description="su(2^m) generators, Pauli strings and the change of basis between them",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="render generator X_i")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--index", required=True, help='"8", "X8", "sym:1,2", "asym:1,2", "diag:3"')
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("pauli", parents=[common], help="materialize a Pauli string")
    p.add_argument("string")
    p.set_defaults(func=cmd_pauli)

    p = sub.add_parser("classify", parents=[common], help="D/OD form of a Pauli string")
    p.add_argument("string")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("table", parents=[common], help="generator indices grouped by form")
    p.add_argument("--m", type=int, default=3)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("decompose", parents=[common], help="expand a matrix in a basis")
    p.add_argument("input", help="matrix or parameter JSON file ('-' for stdin)")
    p.add_argument("--basis", choices=("pauli", "generator"), default="pauli")
    p.add_argument("--naive", action="store_true", help="use the O(8^m) projection")
    p.add_argument("--tolerance-su", type=float, default=sugroup.HERMITICITY_TOL)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("compose", parents=[common], help="sum a Pauli decomposition")
    p.add_argument("input", help="decomposition JSON file ('-' for stdin)")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("cob", parents=[common], help="change-of-basis block for one sector")
    p.add_argument("--form", required=True, help='e.g. "DD-OD" or "D⊗D⊗OD"')
    p.add_argument("--part", choices=("real", "imaginary", "diagonal"))
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_cob)

    p = sub.add_parser("params", parents=[common], help="count, build or extract parameters")
    p.add_argument("action", choices=("count", "build", "extract"))
    p.add_argument("input", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--tolerance-su", type=float, default=sugroup.HERMITICITY_TOL)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("exp", parents=[common], help="exponentiate parameters to the group")
    p.add_argument("input", help="parameter JSON file ('-' for stdin)")
    p.add_argument("--convention", choices=("unitary", "literal"), default="unitary")
    p.set_defaults(func=cmd_exp)

    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("--suite", default="all", choices=(*checks.SUITES, "all"))
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (UsageError, ValueError, pauli.ResourceLimitError) as exc:
        print(f"supauli {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    print(result)
    return code


if __name__ == "__main__":
    sys.exit(main())
