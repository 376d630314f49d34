"""Command-line interface: ``twistcode <command> ...``.

Exit codes: 0 ok, 1 internal error, 2 bad input, 3 golden-table mismatch.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

import click

from . import families as fam
from .checkerboard import checkerboard as greedy_checkerboard
from .checkerboard import (
    coloring_from_defect,
    edge_endpoints,
    face_edge_matrix,
    find_defect,
    is_checkerboardable,
)
from .derived_graphs import (
    decoding_graph,
    decoding_graph_to_dot,
    doubled,
    face_vertex,
    graph_to_dot,
    medial,
)
from .errors import BudgetExceeded, InputError, TwistcodeError
from .logical_analysis import DistanceReport, distance_report, exact_distance, resolve_budget
from .pauli_f2 import PauliList
from .rotation_system import (
    RotationSystem,
    dual,
    rotation_system_from_dict,
    rotation_system_to_dict,
)
from .surface_code import build_code, code_to_dict

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_GOLDEN = 0, 1, 2, 3


@dataclass
class CommandResult:
    text: str
    payload: Any = None
    code: int = EXIT_OK


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(res: CommandResult, as_json: bool, out: str | None = None) -> None:
    if out is not None and res.payload is not None:
        Path(out).write_text(_dump(res.payload) + "\n", encoding="utf-8")
    if as_json:
        click.echo(_dump(res.payload))
    else:
        click.echo(res.text.rstrip("\n"))
    if res.code:
        raise click.exceptions.Exit(res.code)


def _read_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON: {exc}") from exc


def _load_graph(path: str) -> RotationSystem:
    data = _read_json(path)
    if isinstance(data, dict) and "flag_count" not in data and isinstance(data.get("source"), dict):
        rs = data["source"].get("rotation_system")
        if rs is not None:
            return rotation_system_from_dict(rs)
    return rotation_system_from_dict(data)


json_option = click.option("--json", "as_json", is_flag=True, help="Emit one JSON document on stdout.")


@click.group()
def cli() -> None:
    """Surface codes on embedded graphs."""


# --------------------------------------------------------------- inspect


def inspect_payload(r: RotationSystem) -> dict[str, Any]:
    s = r.summary
    ok, col = is_checkerboardable(r)
    out = s.as_dict()
    out["flag_count"] = r.flag_count
    out["checkerboardable"] = ok
    out["coloring"] = col.as_list() if ok and col is not None else None
    out["defect"] = None if ok else sorted(_edges_of(find_defect(r)))
    out["odd_vertices"] = s.odd_vertices
    return out


def _edges_of(mask: int) -> list[int]:
    return [e for e in range(mask.bit_length()) if (mask >> e) & 1]


def _inspect_text(d: dict[str, Any]) -> str:
    kind = "orientable" if d["orientable"] else "non-orientable"
    lines = [
        f"flags {d['flag_count']}  V={d['V']} E={d['E']} F={d['F']}  chi={d['chi']}",
        f"surface: {kind}, genus {d['genus']}",
        f"odd-degree vertices M={d['M']}",
        f"checkerboardable: {'yes' if d['checkerboardable'] else 'no'}",
    ]
    if d["defect"] is not None:
        lines.append(f"defect edges: {d['defect']}")
    return "\n".join(lines)


@cli.command()
@click.argument("file")
@json_option
def inspect(file: str, as_json: bool) -> None:
    """Summarize a rotation-system file."""
    d = inspect_payload(_load_graph(file))
    _emit(CommandResult(_inspect_text(d), d), as_json)


# ----------------------------------------------------------------- build


def _code_text(payload: dict[str, Any]) -> str:
    lines = [f"N={payload['n']} K={payload['k']}"]
    lines.extend(payload["stabilizers"])
    return "\n".join(lines)


@cli.command()
@click.argument("file")
@click.option("--cals", "cals_file", default=None, help="JSON object of per-vertex CAL overrides.")
@click.option("--out", default=None, help="Also write the code JSON here.")
@json_option
def build(file: str, cals_file: str | None, out: str | None, as_json: bool) -> None:
    """Build the qubit surface code of a rotation system."""
    r = _load_graph(file)
    if cals_file is not None:
        cals = _read_json(cals_file)
        if not isinstance(cals, dict):
            raise InputError("CAL override file must hold a JSON object")
        r = rotation_system_from_dict({**rotation_system_to_dict(r), "cals": cals})
    payload = code_to_dict(build_code(r), {"file": Path(file).name if file != "-" else "-"})
    _emit(CommandResult(_code_text(payload), payload), as_json, out)


# -------------------------------------------------------------- distance


def _report_text(rep: DistanceReport) -> str:
    lines = [f"N={rep.n} K={rep.k}"]
    lines.append(f"exact D: {rep.exact if rep.exact is not None else 'not computed'}")
    for v, src in rep.lower_bounds:
        lines.append(f"  lower  {v:>4}  {src}")
    for v, src in rep.upper_bounds:
        lines.append(f"  upper  {v:>4}  {src}")
    for v, src in rep.informational:
        lines.append(f"  info   {v:>4}  {src} (not certified)")
    if rep.witness is not None:
        lines.append(f"witness: {rep.witness}")
    lines.extend(f"note: {n}" for n in rep.notes)
    return "\n".join(lines)


def _stabilizer_report(stabs: PauliList, budget: int) -> DistanceReport:
    k = stabs.n - stabs.dim()
    rep = DistanceReport(stabs.n, k)
    if k == 0:
        rep.notes.append("no logical qubits")
        return rep
    if budget <= 0:
        rep.notes.append("exact distance skipped: budget 0")
        return rep
    try:
        res = exact_distance(stabs, budget)
    except BudgetExceeded as exc:
        rep.notes.append(f"exact distance skipped: {exc}")
        return rep
    rep.exact, rep.witness = res.distance, res.witness
    if res.distance is not None:
        rep.upper_bounds.append((res.distance, "witness-operator"))
    return rep


def distance_payload(data: Any, budget: int | None, bounds_only: bool) -> DistanceReport:
    budget = resolve_budget(budget)
    if isinstance(data, dict) and "stabilizers" in data:
        src = data.get("source") if isinstance(data.get("source"), dict) else {}
        if src.get("rotation_system") is None:
            strs = data["stabilizers"]
            if not isinstance(strs, list) or not all(isinstance(s, str) for s in strs):
                raise InputError("'stabilizers' must be a list of Pauli strings")
            n = data.get("n")
            stabs = PauliList.from_strs(strs, n if isinstance(n, int) else None)
            return _stabilizer_report(stabs, 0 if bounds_only else budget)
        data = src["rotation_system"]
    r = rotation_system_from_dict(data)
    return distance_report(build_code(r), budget, bounds_only or budget <= 0)


@cli.command()
@click.argument("file")
@click.option("--exact-budget", type=int, default=None, help="Step budget for exact search; 0 disables it.")
@click.option("--bounds-only", is_flag=True, help="Skip the exact search.")
@json_option
def distance(file: str, exact_budget: int | None, bounds_only: bool, as_json: bool) -> None:
    """Distance bounds (and exact distance when affordable) of a code or graph."""
    rep = distance_payload(_read_json(file), exact_budget, bounds_only)
    code = EXIT_OK if rep.consistent() else EXIT_INTERNAL
    _emit(CommandResult(_report_text(rep), rep.as_dict(), code), as_json)


# ----------------------------------------------------------------- table


def cyclic2_table(max_st: int, budget: int | None = None) -> list[dict[str, int]]:
    rows = []
    for s in range(max_st + 1):
        for t in range(s, max_st + 1):
            stabs, k = fam.cyclic2_code(s, t)
            d = exact_distance(stabs, budget).distance
            rows.append({"s": s, "t": t, "N": stabs.n, "K": k, "D": d})
    return rows


def _table_text(rows: list[dict[str, int]], max_st: int) -> str:
    cell = {(e["s"], e["t"]): f"{e['N']},{e['K']},{e['D']}" for e in rows}
    width = 9
    head = "s\\t".ljust(5) + "".join(str(t).rjust(width) for t in range(max_st + 1))
    lines = [head]
    for s in range(max_st + 1):
        lines.append(str(s).ljust(5) + "".join(cell.get((s, t), "-").rjust(width) for t in range(max_st + 1)))
    lines.append("(t < s entries equal the (t, s) entries)")
    return "\n".join(lines)


def diff_table(rows: list[dict[str, int]], golden: Any, max_st: int) -> list[str]:
    if not isinstance(golden, dict) or not isinstance(golden.get("entries"), list):
        raise InputError("golden file must hold an object with an 'entries' list")
    want = {}
    for e in golden["entries"]:
        try:
            want[(e["s"], e["t"])] = (e["N"], e["K"], e["D"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad golden entry {e!r}") from exc
    msgs = []
    got = {(e["s"], e["t"]): (e["N"], e["K"], e["D"]) for e in rows}
    for key in sorted(got):
        if key not in want:
            msgs.append(f"(s,t)={key}: missing from golden")
        elif got[key] != want[key]:
            msgs.append(f"(s,t)={key}: computed {got[key]}, golden {want[key]}")
    for key in sorted(want):
        if key[0] <= max_st and key[1] <= max_st and key not in got:
            msgs.append(f"(s,t)={key}: golden entry not computed")
    return msgs


@cli.group()
def table() -> None:
    """Regenerate parameter tables."""


@table.command("cyclic2")
@click.option("--max", "max_st", type=click.IntRange(0, None), default=9, show_default=True)
@click.option("--diff", "golden_file", default=None, help="Golden JSON to compare against.")
@click.option("--exact-budget", type=int, default=None)
@json_option
def table_cyclic2(max_st: int, golden_file: str | None, exact_budget: int | None, as_json: bool) -> None:
    """[[N,K,D]] of the shifts of Z X I^s X Z I^t for 0 <= s <= t <= max."""
    rows = cyclic2_table(max_st, exact_budget)
    payload: dict[str, Any] = {"family": "cyclic2", "entries": rows}
    text = _table_text(rows, max_st)
    code = EXIT_OK
    if golden_file is not None:
        msgs = diff_table(rows, _read_json(golden_file), max_st)
        payload["mismatches"] = msgs
        text += "\n" + ("\n".join(msgs) if msgs else "golden: match")
        code = EXIT_GOLDEN if msgs else EXIT_OK
    _emit(CommandResult(text, payload, code), as_json)


# ---------------------------------------------------------------- derive


DERIVED: dict[str, Callable[[RotationSystem], RotationSystem]] = {
    "dual": dual,
    "medial": medial,
    "facevertex": face_vertex,
    "doubled": lambda r: doubled(r, find_defect(r)),
}


@cli.command()
@click.argument("file")
@click.option(
    "--kind",
    type=click.Choice(["dual", "medial", "facevertex", "decoding", "doubled"]),
    required=True,
)
@click.option("--dot", is_flag=True, help="Emit Graphviz DOT instead of JSON.")
def derive(file: str, kind: str, dot: bool) -> None:
    """Derived graph of a rotation system."""
    r = _load_graph(file)
    if kind == "decoding":
        g = decoding_graph(r)
        if dot:
            click.echo(decoding_graph_to_dot(g).rstrip("\n"))
            return
        idx = g.node_index()
        payload = {
            "nodes": [list(n) for n in g.nodes],
            "edges": [[idx[a], idx[b]] for a, b in g.edges],
            "components": len(g.components()),
        }
        click.echo(_dump(payload))
        return
    out = DERIVED[kind](r)
    if dot:
        click.echo(graph_to_dot(out).rstrip("\n"))
    else:
        click.echo(_dump(rotation_system_to_dict(out)))


# ---------------------------------------------------------- checkerboard


def _edge_mask(text: str, n_edges: int) -> int:
    mask = 0
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        try:
            e = int(part)
        except ValueError as exc:
            raise InputError(f"bad edge index {part!r}") from exc
        if not 0 <= e < n_edges:
            raise InputError(f"edge {e} out of range 0..{n_edges - 1}")
        mask |= 1 << e
    return mask


@cli.command()
@click.argument("file")
@click.option("--defect", "defect_edges", default=None, help="Comma-separated edge list fed to the greedy coloring.")
@json_option
def checkerboard(file: str, defect_edges: str | None, as_json: bool) -> None:
    """Face 2-coloring, or a coloring with defect edges."""
    r = _load_graph(file)
    s = r.summary
    ends = edge_endpoints(r)
    if defect_edges is None:
        ok, col = is_checkerboardable(r)
        delta = 0 if ok else find_defect(r)
        if not ok:
            col = coloring_from_defect(r, delta)
        payload: dict[str, Any] = {
            "checkerboardable": ok,
            "coloring": col.as_list() if col is not None else None,
            "defect": _edges_of(delta),
        }
    else:
        delta = _edge_mask(defect_edges, s.E)
        res = greedy_checkerboard(face_edge_matrix(r), delta, s.E)
        payload = {
            "checkerboardable": is_checkerboardable(r)[0],
            "input_defect": _edges_of(delta),
            "input_is_defect": res.gamma == delta,
            "defect": _edges_of(res.gamma),
            "coloring": ["black" if f in set(res.black) else "white" for f in range(s.F)],
        }
    lines = [f"checkerboardable: {'yes' if payload['checkerboardable'] else 'no'}"]
    if "input_is_defect" in payload:
        lines.append(f"input edges {payload['input_defect']} form a defect: {'yes' if payload['input_is_defect'] else 'no'}")
    if payload["defect"]:
        lines.append(f"defect edges: {payload['defect']}")
        lines.append("defect endpoints: " + " ".join(f"{ends[e][0]}-{ends[e][1]}" for e in payload["defect"]))
    if payload["coloring"] is not None:
        lines.append("coloring: " + " ".join(payload["coloring"]))
    _emit(CommandResult("\n".join(lines), payload), as_json)


# ---------------------------------------------------------------- family


def _family_emit(
    name: str, params: dict[str, Any], r: RotationSystem | None, stabs: PauliList | None, as_json: bool, out: str | None
) -> None:
    source = {"family": name, "params": params}
    if r is not None:
        payload = code_to_dict(build_code(r), source)
    else:
        assert stabs is not None
        payload = {"n": stabs.n, "k": stabs.n - stabs.dim(), "stabilizers": stabs.strings(), "source": source}
    _emit(CommandResult(f"{name} {params}\n" + _code_text(payload), payload), as_json, out)


def _vec(text: str) -> tuple[int, int]:
    try:
        a, b = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise InputError(f"expected 'a,b', got {text!r}") from exc
    return a, b


out_option = click.option("--out", default=None, help="Also write the code JSON here.")


@cli.group()
def family() -> None:
    """Build a code from a named family."""


@family.command("toric")
@click.option("--m", type=int, required=True)
@click.option("--n", type=int, required=True)
@out_option
@json_option
def family_toric(m: int, n: int, out: str | None, as_json: bool) -> None:
    _family_emit("toric", {"m": m, "n": n}, fam.square_toric(m, n), None, as_json, out)


@family.command("rotated-toric")
@click.option("--l1", required=True, help="a,b")
@click.option("--l2", required=True, help="c,d")
@out_option
@json_option
def family_rotated_toric(l1: str, l2: str, out: str | None, as_json: bool) -> None:
    v1, v2 = _vec(l1), _vec(l2)
    _family_emit("rotated-toric", {"l1": list(v1), "l2": list(v2)}, fam.rotated_toric(v1, v2), None, as_json, out)


@family.command("cyclic-toric")
@click.option("--a", type=int, required=True)
@click.option("--b", type=int, required=True)
@click.option("--shifts", is_flag=True, help="Emit the cyclic generator list instead of the graph code.")
@out_option
@json_option
def family_cyclic_toric(a: int, b: int, shifts: bool, out: str | None, as_json: bool) -> None:
    r, stabs = fam.cyclic_toric(a, b)
    params = {"a": a, "b": b}
    if shifts:
        _family_emit("cyclic-toric", params, None, stabs, as_json, out)
    else:
        _family_emit("cyclic-toric", params, r, None, as_json, out)


@family.command("cyclic2")
@click.option("--s", type=click.IntRange(0, None), required=True)
@click.option("--t", type=click.IntRange(0, None), required=True)
@out_option
@json_option
def family_cyclic2(s: int, t: int, out: str | None, as_json: bool) -> None:
    stabs, _ = fam.cyclic2_code(s, t)
    _family_emit("cyclic2", {"s": s, "t": t}, None, stabs, as_json, out)


@family.command("cyclic4")
@click.option("--N", "n", type=int, required=True)
@click.option("--p", type=int, required=True)
@click.option("--q", type=int, required=True)
@click.option("--r", type=int, required=True)
@out_option
@json_option
def family_cyclic4(n: int, p: int, q: int, r: int, out: str | None, as_json: bool) -> None:
    spec = fam.CyclicSpec(n, p, q, r)
    if not fam.cyclic4_consistent(spec):
        raise InputError(f"{spec} does not give commuting shifts")
    _family_emit("cyclic4", {"N": n, "p": p, "q": q, "r": r}, None, fam.cyclic4_stabilizers(spec), as_json, out)


@family.command("stellated")
@click.option("--s", type=int, required=True)
@click.option("--t", type=int, required=True)
@out_option
@json_option
def family_stellated(s: int, t: int, out: str | None, as_json: bool) -> None:
    _family_emit("stellated", {"s": s, "t": t}, fam.stellated_high_genus(s, t), None, as_json, out)


@family.command("rotated-surface")
@click.option("--d", type=int, required=True)
@out_option
@json_option
def family_rotated_surface(d: int, out: str | None, as_json: bool) -> None:
    _family_emit("rotated-surface", {"d": d}, fam.rotated_surface(d), None, as_json, out)


# ------------------------------------------------------------------ main


def main(argv: list[str] | None = None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="twistcode", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_INTERNAL
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT
    except (InputError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_INPUT
    except TwistcodeError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
        return EXIT_INTERNAL
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
