"""Text formats: complex documents, analysis reports and decomposition trees.

A complex document looks like::

    pmfc 1
    # optional comments
    1 2 3 4
    1 2 3 5

Trees are JSON objects whose complexes are embedded complex documents.
"""
from __future__ import annotations

import json
from pathlib import Path

from .complex import Complex, f_vector, from_facets, g2_invariant, missing_tetrahedra
from .constructions import FoldingSpec
from .decomposition import DecompositionTree, Leaf, Node
from .errors import ParseError
from .surfaces import check_normal_pseudomanifold, g2_minimal_witnesses

HEADER = "pmfc 1"
TREE_FORMAT = "pmfold-tree 1"


def dumps_complex(c: Complex, comments=()) -> str:
    lines = [HEADER]
    lines += [f"# {text}" for text in comments]
    lines += [" ".join(map(str, f)) for f in c.facets]
    return "\n".join(lines) + "\n"


def loads_complex(text: str) -> Complex:
    rows = []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not seen_header:
            if line != HEADER:
                raise ParseError(lineno, f"expected header {HEADER!r}, got {line!r}")
            seen_header = True
            continue
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(lineno, f"non-integer token in {line!r}") from None
        if any(v < 0 for v in row):
            raise ParseError(lineno, "vertex labels must be non-negative")
        rows.append(row)
    if not seen_header:
        raise ParseError(1, f"missing header {HEADER!r}")
    return from_facets(rows)


def load_complex(path) -> Complex:
    return loads_complex(Path(path).read_text())


def save_complex(c: Complex, path, comments=()) -> None:
    Path(path).write_text(dumps_complex(c, comments))


# -- reports ---------------------------------------------------------------

def analysis_report(c: Complex) -> dict:
    report = {
        "dim": c.dim,
        "f_vector": list(f_vector(c)),
        "g2": g2_invariant(c),
    }
    if c.dim not in (2, 3):
        return report
    nr = check_normal_pseudomanifold(c)
    report.update({
        "is_pure": nr.is_pure,
        "every_ridge_in_two_facets": nr.every_ridge_in_two_facets,
        "strongly_connected": nr.strongly_connected,
        "is_pseudomanifold": nr.is_pseudomanifold,
        "is_normal": nr.is_normal,
    })
    if c.dim == 3:
        report["vertex_links"] = {
            str(v): {"name": sc.name, "chi": sc.chi, "orientable": sc.orientable,
                     "betti1_mod2": sc.betti1_mod2}
            for v, sc in sorted(nr.per_vertex.items())
        }
        report["missing_tetrahedra"] = len(missing_tetrahedra(c))
        if nr.is_normal:
            report["singular"] = {str(v): sc.name for v, sc in sorted(nr.per_vertex.items())
                                  if sc.name != "sphere"}
            report["g2_minimal_witnesses"] = g2_minimal_witnesses(c)
    return report


def render_report(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if key == "vertex_links":
            lines.append("vertex_links:")
            for v, sc in value.items():
                lines.append(f"  {v}: {sc['name']} (chi {sc['chi']})")
        elif key == "singular":
            body = ", ".join(f"{v}: {name}" for v, name in value.items())
            lines.append(f"singular: {{{body}}}")
        elif isinstance(value, list):
            lines.append(f"{key}: {' '.join(map(str, value)) if value else '-'}")
        else:
            lines.append(f"{key}: {str(value).lower() if isinstance(value, bool) else value}")
    return "\n".join(lines) + "\n"


# -- trees -----------------------------------------------------------------

def _spec_to_dict(spec: FoldingSpec) -> dict:
    return {"sigma1": list(spec.sigma1), "sigma2": list(spec.sigma2),
            "psi": [list(p) for p in spec.psi], "kind": spec.kind}


def _spec_from_dict(d: dict) -> FoldingSpec:
    return FoldingSpec.make(d["sigma1"], d["sigma2"], {a: b for a, b in d["psi"]}, d["kind"])


def _node_to_dict(n) -> dict:
    if isinstance(n, Leaf):
        out = {"leaf": n.kind, "complex": dumps_complex(n.complex)}
        if n.surface is not None:
            out.update(surface=dumps_complex(n.surface), apex=n.apex, poles=list(n.poles))
        if n.note:
            out["note"] = n.note
        return out
    out = {"op": n.op, "complex": dumps_complex(n.complex)}
    if n.facet:
        out["facet"] = list(n.facet)
    if n.spec is not None:
        out["spec"] = _spec_to_dict(n.spec)
    out["children"] = [_node_to_dict(ch) for ch in n.children]
    return out


def _node_from_dict(d: dict):
    if "leaf" in d:
        surface = loads_complex(d["surface"]) if "surface" in d else None
        poles = tuple(d["poles"]) if "poles" in d else None
        return Leaf(d["leaf"], loads_complex(d["complex"]), surface, d.get("apex"), poles,
                    d.get("note", ""))
    spec = _spec_from_dict(d["spec"]) if "spec" in d else None
    children = tuple(_node_from_dict(ch) for ch in d["children"])
    return Node(d["op"], loads_complex(d["complex"]), children, tuple(d.get("facet", ())), spec)


def tree_to_dict(tree: DecompositionTree) -> dict:
    return {
        "format": TREE_FORMAT,
        "witness": tree.witness,
        "summary": tree.summary(),
        "notes": list(tree.notes),
        "root": _node_to_dict(tree.root),
    }


def tree_from_dict(d: dict) -> DecompositionTree:
    if d.get("format") != TREE_FORMAT:
        raise ParseError(1, f"expected tree format {TREE_FORMAT!r}")
    return DecompositionTree(_node_from_dict(d["root"]), d.get("witness"), list(d.get("notes", [])))


def dumps_tree(tree: DecompositionTree) -> str:
    return json.dumps(tree_to_dict(tree), indent=1, sort_keys=True) + "\n"


def loads_tree(text: str) -> DecompositionTree:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
    return tree_from_dict(data)


def render_tree(tree: DecompositionTree) -> str:
    """Indented outline followed by the summary counts."""
    lines = []

    def walk(n, depth):
        pad = "  " * depth
        if isinstance(n, Leaf):
            extra = f" poles={n.poles[0]},{n.poles[1]}" if n.poles else ""
            lines.append(f"{pad}leaf {n.kind} f={list(f_vector(n.complex))}{extra}")
            return
        where = f" at {','.join(map(str, n.facet))}" if n.facet else ""
        if n.spec is not None:
            where = f" fixed {','.join(map(str, n.spec.fixed))}"
        lines.append(f"{pad}{n.op}{where} g2={g2_invariant(n.complex)}")
        for ch in n.children:
            walk(ch, depth + 1)

    walk(tree.root, 0)
    lines.append("summary:")
    lines += [f"  {k}: {v}" for k, v in tree.summary().items()]
    return "\n".join(lines) + "\n"
