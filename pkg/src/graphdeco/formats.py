"""JSON readers and writers for graphs, operators, spectral maps and spectra.

Graph files look like ``{"n": 3, "edges": [[0, 1], [1, 2]], "root": 0}``;
``root`` is required only where a decoration is expected.  A graph file may
carry its operator under ``"operator"``, either dense
(``{"dim": n, "entries": [[...], ...]}``) or as ``{"laplacian_of": ref}``
where ``ref`` is ``"self"``, an inline graph object or a path relative to
the file.  Without an ``"operator"`` key the Laplacian is used.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import IncompatibleOperatorError, InputError
from .gamma_map import HerglotzRational
from .graph_model import Graph, RootedGraph, incompatible_entries, laplacian
from .operator_core import SymmetricOperator


def read_json(path) -> dict:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def graph_from_dict(d) -> Graph:
    if not isinstance(d, dict) or "n" not in d:
        raise InputError("graph JSON needs an integer field 'n'")
    edges = d.get("edges", [])
    if not isinstance(edges, list):
        raise InputError("'edges' must be a list of [i, j] pairs")
    for e in edges:
        if not isinstance(e, (list, tuple)) or len(e) != 2 or not all(isinstance(k, int) and not isinstance(k, bool) for k in e):
            raise InputError(f"edge {e!r} is not a pair of integers")
    if isinstance(d["n"], bool) or not isinstance(d["n"], int):
        raise InputError(f"'n' must be an integer, got {d['n']!r}")
    return Graph(d["n"], tuple(tuple(e) for e in edges))


def rooted_from_dict(d) -> RootedGraph:
    g = graph_from_dict(d)
    if "root" not in d:
        raise InputError("decoration graph needs a 'root' field")
    root = d["root"]
    if isinstance(root, bool) or not isinstance(root, int):
        raise InputError(f"'root' must be an integer, got {root!r}")
    return RootedGraph(g, root)


def operator_from_dict(d, graph: Graph | None = None, base_dir: Path | None = None) -> SymmetricOperator:
    if not isinstance(d, dict):
        raise InputError("operator JSON must be an object")
    if "laplacian_of" in d:
        ref = d["laplacian_of"]
        if ref == "self":
            if graph is None:
                raise InputError("'laplacian_of': 'self' needs an enclosing graph")
            return laplacian(graph)
        if isinstance(ref, str):
            ref = read_json((base_dir or Path(".")) / ref)
        return laplacian(graph_from_dict(ref))
    if "entries" not in d:
        raise InputError("operator JSON needs 'entries' or 'laplacian_of'")
    entries = d["entries"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise InputError("'entries' must be a list of rows")
    if any(len(r) != len(entries) for r in entries):
        raise InputError("'entries' must be a square matrix")
    if "dim" in d and d["dim"] != len(entries):
        raise InputError(f"'dim' is {d['dim']} but entries have {len(entries)} rows")
    try:
        return SymmetricOperator([[float(x) for x in r] for r in entries])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"non-numeric operator entry ({exc})") from None


def require_compatible(op: SymmetricOperator, g: Graph, what: str) -> None:
    bad = incompatible_entries(op, g)
    if bad:
        i, j = bad[0]
        raise IncompatibleOperatorError(
            f"{what} operator is incompatible with its graph: entries[{i}][{j}] = "
            f"{float(op.entries[i, j])!r} but {{{i}, {j}}} is not an edge"
        )


def load_graph_with_operator(path, rooted: bool = False):
    """Read a graph file and its (compatible) operator.

    Returns ``(graph_or_rooted, operator)``.
    """
    path = Path(path)
    d = read_json(path)
    g = rooted_from_dict(d) if rooted else graph_from_dict(d)
    plain = g.graph if rooted else g
    op = operator_from_dict(d["operator"], plain, path.parent) if "operator" in d else laplacian(plain)
    if op.dim != plain.n:
        raise InputError(f"operator dimension {op.dim} does not match vertex count {plain.n}")
    require_compatible(op, plain, "decoration" if rooted else "base")
    return g, op


def gamma_to_dict(gamma: HerglotzRational, remainder) -> dict:
    return {
        **gamma.to_dict(),
        "remainder": [float(x) for x in remainder],
        "cyclic": not remainder,
    }


def gamma_from_dict(d) -> tuple:
    try:
        g = HerglotzRational(d["c"], tuple(d.get("poles", [])), tuple(d.get("weights", [])))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed gamma JSON: {exc}") from None
    return g, tuple(float(x) for x in d.get("remainder", []))
