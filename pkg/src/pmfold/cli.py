"""Command line entry point.

Exit codes: 0 on success, 1 on a domain error (bad complex, failed check,
non-isomorphic inputs), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import contextlib
import io as _io
import json
import sys

from . import catalog
from .complex import Complex, is_isomorphic
from .constructions import (
    FoldingSpec,
    GluingSpec,
    boundary_simplex,
    connected_sum,
    edge_folding,
    enumerate_admissible_foldings,
    facet_subdivision,
    one_vertex_suspension,
    vertex_folding,
)
from .decomposition import decompose_full, verify_tree
from .errors import PmfoldError
from .io import (
    analysis_report,
    dumps_complex,
    dumps_tree,
    load_complex,
    loads_tree,
    render_report,
    render_tree,
    tree_to_dict,
)


class UsageError(Exception):
    pass


def _vertices(text: str) -> tuple:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated vertices, got {text!r}") from None


def _pairs(text: str) -> dict:
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        a, sep, b = item.partition(":")
        if not sep:
            raise UsageError(f"expected a:b pairs, got {item!r}")
        try:
            out[int(a)] = int(b)
        except ValueError:
            raise UsageError(f"expected integer pairs, got {item!r}") from None
    return out


def _spec_json(spec: FoldingSpec) -> dict:
    return {"kind": spec.kind, "sigma1": list(spec.sigma1), "sigma2": list(spec.sigma2),
            "psi": [list(p) for p in spec.psi]}


def _spec_text(spec: FoldingSpec) -> str:
    psi = ",".join(f"{a}:{b}" for a, b in spec.psi)
    return (f"{spec.kind} {','.join(map(str, spec.sigma1))} "
            f"{','.join(map(str, spec.sigma2))} {psi}")


def _emit_complex(c: Complex, args, comments=()) -> str:
    doc = dumps_complex(c, comments)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(doc)
        return f"wrote {len(c.facets)} facets to {args.output}\n"
    return doc


# -- command handlers; each returns (exit code, stdout text) ---------------

def cmd_analyze(args):
    report = analysis_report(load_complex(args.file))
    if args.format == "json":
        return 0, json.dumps(report, indent=1, sort_keys=True) + "\n"
    return 0, render_report(report)


def cmd_build(args):
    kind = args.kind
    if kind == "boundary-simplex":
        c = boundary_simplex(args.dim)
    elif kind == "suspension":
        poles = _vertices(args.poles)
        if len(poles) != 2:
            raise UsageError("--poles needs two labels")
        c = one_vertex_suspension(load_complex(args.file), args.vertex, poles)
    elif kind == "connsum":
        fa, fb = _vertices(args.facet_a), _vertices(args.facet_b)
        phi = _pairs(args.phi) if args.phi else None
        c = connected_sum(load_complex(args.file), load_complex(args.other),
                          GluingSpec.make(fa, fb, phi))
    elif kind == "subdivide":
        c = facet_subdivision(load_complex(args.file), _vertices(args.facet), args.label)
    else:
        try:
            c = catalog.fixture(args.name)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    return 0, _emit_complex(c, args)


def cmd_fold(args):
    c = load_complex(args.file)
    if args.kind == "search":
        anchor = None
        if args.anchor:
            anchor = _vertices(args.anchor)
            anchor = anchor[0] if len(anchor) == 1 else anchor
        specs = enumerate_admissible_foldings(c, args.fold_kind, anchor)
        if args.format == "json":
            return 0, json.dumps([_spec_json(s) for s in specs], indent=1) + "\n"
        return 0, "".join(_spec_text(s) + "\n" for s in specs) or "no admissible foldings\n"
    spec = FoldingSpec.make(_vertices(args.sigma1), _vertices(args.sigma2),
                            _pairs(args.psi), args.kind)
    if args.kind == "vertex":
        out = vertex_folding(c, spec)
    else:
        out = edge_folding(c, spec, strict=not args.permissive)
    return 0, _emit_complex(out, args)


def cmd_decompose(args):
    tree = decompose_full(load_complex(args.file))
    if args.tree_out:
        with open(args.tree_out, "w") as fh:
            fh.write(dumps_tree(tree))
    if args.format == "json":
        return 0, json.dumps(tree_to_dict(tree)["summary"], indent=1, sort_keys=True) + "\n"
    return 0, render_tree(tree)


def cmd_verify_tree(args):
    with open(args.tree) as fh:
        tree = loads_tree(fh.read())
    cert = verify_tree(tree)
    body = " ".join(f"{a}:{b}" for a, b in cert.items())
    return 0, f"replay matches recorded root\nmapping: {body}\n"


def cmd_iso(args):
    a, b = load_complex(args.a), load_complex(args.b)
    cert = is_isomorphic(a, b)
    if args.format == "json":
        payload = {"isomorphic": cert is not None,
                   "mapping": None if cert is None else {str(k): v for k, v in cert.items()}}
        return (0 if cert else 1), json.dumps(payload, indent=1) + "\n"
    if cert is None:
        return 1, "not isomorphic\n"
    return 0, "isomorphic\nmapping: " + " ".join(f"{k}:{v}" for k, v in cert.items()) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pmfold", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def with_format(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        return sp

    sp = with_format(sub.add_parser("analyze", help="f-vector, g2, normality and singularities"))
    sp.add_argument("file")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("build", help="construct a complex document")
    bsub = sp.add_subparsers(dest="kind", required=True)
    b = bsub.add_parser("boundary-simplex")
    b.add_argument("--dim", type=int, required=True)
    b = bsub.add_parser("suspension")
    b.add_argument("file")
    b.add_argument("--vertex", type=int, required=True)
    b.add_argument("--poles", required=True, help="two fresh labels, e.g. 7,8")
    b = bsub.add_parser("connsum")
    b.add_argument("file")
    b.add_argument("other")
    b.add_argument("--facet-a", required=True)
    b.add_argument("--facet-b", required=True)
    b.add_argument("--phi", help="bijection facet-a -> facet-b as a:b pairs")
    b = bsub.add_parser("subdivide")
    b.add_argument("file")
    b.add_argument("--facet", required=True)
    b.add_argument("--label", type=int)
    b = bsub.add_parser("fixture", help="one of the named example complexes")
    b.add_argument("name")
    for b in bsub.choices.values():
        b.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("fold", help="apply or search vertex/edge foldings")
    fsub = sp.add_subparsers(dest="kind", required=True)
    for kind in ("vertex", "edge"):
        f = fsub.add_parser(kind)
        f.add_argument("file")
        f.add_argument("--sigma1", required=True)
        f.add_argument("--sigma2", required=True)
        f.add_argument("--psi", required=True, help="a:b pairs on the non-fixed vertices")
        f.add_argument("-o", "--output")
        if kind == "edge":
            f.add_argument("--permissive", action="store_true",
                           help="return a non-normal result instead of failing")
    f = with_format(fsub.add_parser("search"))
    f.add_argument("file")
    f.add_argument("--kind", dest="fold_kind", choices=("vertex", "edge"), required=True)
    f.add_argument("--anchor", help="vertex or edge (comma list) the fixed set must meet")
    sp.set_defaults(func=cmd_fold)

    sp = with_format(sub.add_parser("decompose", help="full decomposition tree"))
    sp.add_argument("file")
    sp.add_argument("--tree-out", help="write the replayable tree document here")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("verify-tree", help="replay a tree document against its root")
    sp.add_argument("tree")
    sp.set_defaults(func=cmd_verify_tree)

    sp = with_format(sub.add_parser("iso", help="isomorphism test with certificate"))
    sp.add_argument("a")
    sp.add_argument("b")
    sp.set_defaults(func=cmd_iso)
    return p


def run_command(argv) -> tuple:
    """Run one command; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    err = _io.StringIO()
    try:
        with contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), "", err.getvalue()
    try:
        code, out = args.func(args)
    except UsageError as exc:
        return 2, "", f"usage error: {exc}\n"
    except PmfoldError as exc:
        return 1, "", f"error [{exc.code}]: {exc}\n"
    except OSError as exc:
        return 1, "", f"error [E_IO]: {exc}\n"
    return code, out, err.getvalue()


def main(argv=None) -> int:
    code, out, err = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
