"""Command-line interface.

Every verb reads a Cartan datum either from the built-in family registry
(``--family "A(1|1)"``) or from a JSON file (``--input datum.json``), runs
one exact computation and writes a deterministic report: JSON by default
(keys sorted, two-space indent, trailing newline), GraphViz DOT for the
graph verbs, or a short text summary.

Exit codes: 0 on success (including truncated explorations, which report
``"status": "truncated"``), 1 on a domain error (the JSON report carries
the module error name), 2 on invalid invocations.
"""

from __future__ import annotations

import functools
import json
import re
import sys
from pathlib import Path

import click

from .cartan import CartanDatum
from .errors import InvalidParameters, SuperrootsError
from .families import (
    construct,
    expected_metadata,
    family_registry,
    named_vectors,
    parse_family,
    spine_oracle,
)
from .groupoid import SKELETON, SPINE, explore, marked_graph_isomorphic
from .roots import (
    classify_component,
    enumerate_finite_system,
    is_imaginary,
    is_root_basis,
    principal_data,
    real_roots,
    root_bases,
    weyl_generate,
)
from .roots import RootVector
from .symmetry import sk_d_structure, sp_d_group

FORMATS = ("json", "text")
GRAPH_FORMATS = ("json", "dot", "text")


# ---------------------------------------------------------------------------
# plumbing


def _guarded(fn):
    """Turn module errors into exit-1 JSON reports."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SuperrootsError as exc:
            name = getattr(exc, "name", type(exc).__name__)
            click.echo(_dumps({"error": name, "message": str(exc)}), nl=False)
            sys.exit(1)

    return wrapper


def _dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _emit(body: str, out):
    if out:
        Path(out).write_text(body, encoding="utf-8")
    else:
        click.echo(body, nl=False)


def _load_source(family, input_path):
    """Resolve exactly one of --family / --input to (spec|None, datum)."""
    if (family is None) == (input_path is None):
        raise click.UsageError("provide exactly one of --family or --input")
    if family is not None:
        spec = parse_family(family)
        return spec, construct(spec)
    try:
        data = json.loads(Path(input_path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError("cannot read %s: %s" % (input_path, exc))
    if not isinstance(data, dict) or "matrix" not in data or "parity" not in data:
        raise click.UsageError(
            "input JSON must be an object with 'matrix' and 'parity'"
        )
    rows = data["matrix"]
    if any(len(r) != len(rows) for r in rows) or len(data["parity"]) != len(rows):
        raise InvalidParameters("input matrix must be square with a matching parity vector")
    return None, CartanDatum.from_json_dict(data)


_GREEK = {"δ": "delta", "α": "alpha", "β": "beta"}


def _resolve_root(text: str, spec, size: int) -> tuple:
    """A root argument: JSON coordinate list, named vector, or alpha_i."""
    cleaned = text.strip()
    for greek, latin in _GREEK.items():
        cleaned = cleaned.replace(greek, latin)
    if cleaned.startswith("["):
        try:
            coords = json.loads(cleaned)
        except json.JSONDecodeError as exc:
            raise click.UsageError("cannot parse root coordinates: %s" % exc)
        if len(coords) != size or not all(isinstance(c, int) for c in coords):
            raise InvalidParameters(
                "root coordinates must be %d integers" % size
            )
        return tuple(coords)
    named = named_vectors(spec) if spec is not None else {}
    if cleaned in named:
        return tuple(named[cleaned])
    m = re.match(r"^alpha_(\d+)$", cleaned)
    if m:
        i = int(m.group(1))
        if not 1 <= i <= size:
            raise InvalidParameters("alpha_%d is out of range 1..%d" % (i, size))
        return tuple(1 if j == i - 1 else 0 for j in range(size))
    raise InvalidParameters(
        "unknown root name %r (use a JSON list, alpha_i, or one of: %s)"
        % (text, ", ".join(sorted(named)) or "none for this source")
    )


def _principal(spine):
    """Principal data with the saturation escape hatch, disclosed."""
    pd = principal_data(spine)
    if pd.saturated:
        return pd, False
    return principal_data(spine, saturated_override=True), True


def _source_header(spec, input_path) -> dict:
    if spec is not None:
        return {"family": spec.name}
    return {"input": str(input_path)}


def _root_json(r: RootVector) -> dict:
    return {"coords": list(r.coords), "parity": r.parity, "height": r.height}


def _family_option(fn):
    fn = click.option("--family", default=None, metavar="NAME",
                      help="Built-in family, e.g. \"A(1|1)\" or \"Q(1,1,2)\".")(fn)
    fn = click.option("--input", "input_path", default=None, metavar="PATH",
                      type=click.Path(), help="Cartan datum JSON file.")(fn)
    return fn


def _out_option(fn):
    return click.option("--out", default=None, type=click.Path(),
                        help="Write the report to a file instead of stdout.")(fn)


# ---------------------------------------------------------------------------
# commands


@click.group()
def main():
    """Exact computations on root groupoids of contragredient super data."""


@main.command()
@_family_option
@click.option("--max-vertices", default=500, show_default=True)
@click.option("--max-height", default=12, show_default=True)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json",
              show_default=True)
@_out_option
@_guarded
def classify(family, input_path, max_vertices, max_height, fmt, out):
    """Fin/Aff/Ind type and parity type I/II of the component."""
    spec, datum = _load_source(family, input_path)
    spine = explore(datum, mode=SPINE, bound=max_vertices)
    pd, assumed = _principal(spine)
    report = classify_component(pd, spine, height_bound=max_height)
    payload = dict(_source_header(spec, input_path))
    payload.update(
        {
            "type": report["type"],
            "parity_type": report["parity_type"],
            "q0_quotient": report["q0_quotient"],
            "height_bound": report["height_bound"],
            "fully_reflectable": pd.fully_reflectable,
            "status": spine.status,
            "saturation_assumed": assumed,
        }
    )
    if fmt == "text":
        body = "type %(type)s, parity type %(parity_type)s\n" % payload
    else:
        body = _dumps(payload)
    _emit(body, out)


def _graph_command(name, mode):
    @main.command(name=name)
    @_family_option
    @click.option("--max-vertices", default=500, show_default=True)
    @click.option("--format", "fmt", type=click.Choice(GRAPH_FORMATS),
                  default="json", show_default=True)
    @_out_option
    @_guarded
    def cmd(family, input_path, max_vertices, fmt, out):
        spec, datum = _load_source(family, input_path)
        graph = explore(datum, mode=mode, bound=max_vertices)
        if fmt == "dot":
            body = graph.to_dot() + "\n"
        elif fmt == "text":
            body = "%s: %d vertices, %d edges, %s\n" % (
                mode, len(graph), len(graph.edges), graph.status)
        else:
            payload = dict(_source_header(spec, input_path))
            payload["graph"] = graph.to_json_dict()
            body = _dumps(payload)
        _emit(body, out)

    cmd.__doc__ = "Explore the %s as a marked graph." % mode
    return cmd


spine_cmd = _graph_command("spine", SPINE)
skeleton_cmd = _graph_command("skeleton", SKELETON)


@main.command(name="roots")
@_family_option
@click.option("--max-vertices", default=500, show_default=True)
@click.option("--max-height", default=12, show_default=True)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json",
              show_default=True)
@_out_option
@_guarded
def roots_cmd(family, input_path, max_vertices, max_height, fmt, out):
    """Real roots up to the height bound, split by class."""
    spec, datum = _load_source(family, input_path)
    spine = explore(datum, mode=SPINE, bound=max_vertices)
    pd, assumed = _principal(spine)
    groups = real_roots(pd, spine, max_height)
    payload = dict(_source_header(spec, input_path))
    payload.update(
        {
            "height_bound": max_height,
            "status": spine.status,
            "saturation_assumed": assumed,
        }
    )
    for key in ("anisotropic", "isotropic", "nonreflectable"):
        payload[key] = [
            _root_json(r) for r in sorted(groups[key], key=lambda r: r.coords)
        ]
    if fmt == "text":
        body = "".join(
            "%s: %d\n" % (k, len(payload[k]))
            for k in ("anisotropic", "isotropic", "nonreflectable")
        )
    else:
        body = _dumps(payload)
    _emit(body, out)


@main.command()
@_family_option
@click.option("--root", "root_text", required=True, metavar="ROOT",
              help="Coordinate list like \"[1,2,1]\", alpha_i, or a named "
                   "vector such as \"delta\".")
@click.option("--max-vertices", default=500, show_default=True)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json",
              show_default=True)
@_out_option
@_guarded
def imaginary(family, input_path, root_text, max_vertices, fmt, out):
    """Whether a lattice vector is an imaginary root."""
    spec, datum = _load_source(family, input_path)
    spine = explore(datum, mode=SPINE, bound=max_vertices)
    pd, assumed = _principal(spine)
    coords = _resolve_root(root_text, spec, datum.size)
    verdict = is_imaginary(pd, spine, coords)
    payload = dict(_source_header(spec, input_path))
    payload.update(
        {
            "root": list(coords),
            "imaginary": verdict,
            "status": spine.status,
            "saturation_assumed": assumed,
        }
    )
    body = ("%s\n" % str(verdict).lower()) if fmt == "text" else _dumps(payload)
    _emit(body, out)


@main.command()
@_family_option
@click.option("--candidate", default=None, metavar="ROOTS",
              help="JSON list of coordinate lists; when given, test it as a "
                   "root basis instead of enumerating all bases.")
@click.option("--max-vertices", default=500, show_default=True)
@click.option("--max-height", default=20, show_default=True)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json",
              show_default=True)
@_out_option
@_guarded
def bases(family, input_path, candidate, max_vertices, max_height, fmt, out):
    """Root bases: enumerate them (finite systems) or test a candidate."""
    spec, datum = _load_source(family, input_path)
    spine = explore(datum, mode=SPINE, bound=max_vertices)
    pd, assumed = _principal(spine)
    payload = dict(_source_header(spec, input_path))
    payload["saturation_assumed"] = assumed
    if candidate is not None:
        try:
            rows = json.loads(candidate)
        except json.JSONDecodeError as exc:
            raise click.UsageError("cannot parse --candidate: %s" % exc)
        vectors = [
            RootVector.from_coords(row, pd.base_parity) for row in rows
        ]
        verdict = is_root_basis(vectors, pd, spine, height_bound=max_height)
        payload.update(
            {
                "candidate": [list(v.coords) for v in vectors],
                "verdict": verdict.kind,
                "height_bound": verdict.bound,
            }
        )
        body = ("%s\n" % verdict.kind) if fmt == "text" else _dumps(payload)
    else:
        system = enumerate_finite_system(pd, spine, max_height=60)
        found = root_bases(system)
        payload.update(
            {
                "count": len(found),
                "bases": [[list(r.coords) for r in basis] for basis in found],
            }
        )
        body = ("%d bases\n" % len(found)) if fmt == "text" else _dumps(payload)
    _emit(body, out)


@main.command()
@_family_option
@click.option("--max-vertices", default=500, show_default=True)
@click.option("--power-bound", default=10, show_default=True,
              help="Matrix powers checked when certifying infinite order.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json",
              show_default=True)
@_out_option
@_guarded
def spd(family, input_path, max_vertices, power_bound, fmt, out):
    """Symmetry group of the spine (D-equivalent spine vertices)."""
    spec, datum = _load_source(family, input_path)
    spine = explore(datum, mode=SPINE, bound=max_vertices)
    group = sp_d_group(spine, power_bound=power_bound)
    payload = dict(_source_header(spec, input_path))
    payload["group"] = group.to_json_dict()
    payload["status"] = spine.status
    if spec is not None:
        payload["expected_class"] = expected_metadata(spec)["sp_d"]
    if fmt == "text":
        body = "order %s\n" % payload["group"]["order"]
    else:
        body = _dumps(payload)
    _emit(body, out)


@main.command()
@_family_option
@click.option("--max-vertices", default=400, show_default=True)
@click.option("--max-length", default=4, show_default=True,
              help="Weyl words up to this length enter the factor checks.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json",
              show_default=True)
@_out_option
@_guarded
def skd(family, input_path, max_vertices, max_length, fmt, out):
    """Bounded check of the skeleton symmetry factorization W x| Sp^D."""
    spec, datum = _load_source(family, input_path)
    skeleton = explore(datum, mode=SKELETON, bound=max_vertices)
    spine = explore(datum, mode=SPINE, bound=max_vertices)
    pd, assumed = _principal(spine)
    group = sp_d_group(spine, power_bound=6)
    weyl = weyl_generate(pd, max_length)
    delta = None
    if spec is not None:
        named = named_vectors(spec)
        if "delta" in named:
            delta = named["delta"]
    report = sk_d_structure(skeleton, group, weyl, delta=delta)
    payload = dict(_source_header(spec, input_path))
    payload.update(report)
    payload["saturation_assumed"] = assumed
    if fmt == "text":
        body = "factored: %s\n" % report.get("factored")
    else:
        body = _dumps(payload)
    _emit(body, out)


@main.command(name="oracle-check")
@click.option("--family", required=True, metavar="NAME")
@click.option("--max-vertices", default=2000, show_default=True)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json",
              show_default=True)
@_out_option
@_guarded
def oracle_check(family, max_vertices, fmt, out):
    """Compare the explored spine against the closed combinatorial model."""
    spec = parse_family(family)
    oracle = spine_oracle(spec)
    spine = explore(construct(spec), mode=SPINE, bound=max_vertices)
    complete = spine.status == "complete"
    payload = {
        "family": spec.name,
        "expected_spine": oracle.spine_count,
        "expected_skeleton": oracle.skeleton_count,
        "explored": len(spine),
        "status": spine.status,
        "counts_match": len(spine) == oracle.spine_count if complete else None,
        "isomorphic": marked_graph_isomorphic(spine, oracle.graph)
        if complete else None,
    }
    if fmt == "text":
        body = "isomorphic: %s\n" % payload["isomorphic"]
    else:
        body = _dumps(payload)
    _emit(body, out)


@main.command()
@click.option("--family", default=None, metavar="NAME",
              help="Export one family; omit to list the whole registry.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json",
              show_default=True)
@_out_option
@_guarded
def export(family, fmt, out):
    """Serialize registry entries: spec, Cartan datum and expected metadata."""
    if family is not None:
        specs = [parse_family(family)]
    else:
        specs = list(family_registry())
    entries = []
    for spec in specs:
        datum = construct(spec)
        entries.append(
            {
                "spec": spec.to_json_dict(),
                "datum": datum.to_json_dict(),
                "expected": expected_metadata(spec),
            }
        )
    if family is not None:
        payload = entries[0]
        text_line = payload["spec"]["name"]
    else:
        payload = {"families": entries}
        text_line = "\n".join(e["spec"]["name"] for e in entries)
    body = (text_line + "\n") if fmt == "text" else _dumps(payload)
    _emit(body, out)


if __name__ == "__main__":
    main()
