"""Command-line front door: invariants, solving, claim checking, play, serving.

Exit codes are fixed for CI use: 0 success, 1 any check failure, 2 usage or
parse errors, 3 state cap exceeded (a bracket is printed where applicable).
The default state cap comes from CONTAINMENT_STATE_CAP when set.
"""

from __future__ import annotations

import json
import os
import random as random_module
import sys

import click

from . import checks, graphs, solver
from .graphs import Graph, GraphError, Graph6Error
from .kernel import CONTAINMENT, Rules
from .solver import COPS_WIN, StateCapExceeded

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def default_state_cap() -> int:
    raw = os.environ.get("CONTAINMENT_STATE_CAP")
    if raw is None:
        return solver.DEFAULT_STATE_CAP
    try:
        return int(raw)
    except ValueError:
        raise click.UsageError(f"CONTAINMENT_STATE_CAP is not an integer: {raw!r}")


def load_graph(family: str | None, graph6_path: str | None, index: int) -> tuple[Graph, str]:
    """Resolve the single graph source of a command."""
    if (family is None) == (graph6_path is None):
        raise click.UsageError("provide exactly one graph source: --family or --graph6")
    try:
        if family is not None:
            return graphs.parse_family(family), family
        with open(graph6_path) as fh:
            lines = [line.strip() for line in fh if line.strip()]
        if not 0 <= index < len(lines):
            raise click.UsageError(
                f"--index {index} out of range; file has {len(lines)} graph(s)"
            )
        return graphs.parse_graph6(lines[index]), f"{graph6_path}[{index}]"
    except (GraphError, Graph6Error, OSError) as exc:
        raise click.UsageError(str(exc))


def emit(payload: dict, as_json: bool, human_lines: list[str]) -> None:
    if as_json:
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            click.echo(line)


graph_source = [
    click.option("--family", help="family spec, e.g. cycle:9, ring:4, petersen"),
    click.option("--graph6", "graph6_path", type=click.Path(), help="file with one graph6 line per graph"),
    click.option("--index", default=0, show_default=True, help="line to use from the graph6 file"),
]


def with_graph_source(f):
    for opt in reversed(graph_source):
        f = opt(f)
    return f


@click.group()
def main():
    """Exact solver and verification lab for edge-cop pursuit (Containment)."""


@main.command()
@with_graph_source
@click.option("--no-pass", "no_pass", is_flag=True, help="robber must move every turn")
@click.option("--json", "as_json", is_flag=True)
@click.option("--state-cap", type=int, default=None, help="override the state-space cap")
def xi(family, graph6_path, index, no_pass, as_json, state_cap):
    """Containability number: fewest edge cops that contain the robber."""
    g, name = load_graph(family, graph6_path, index)
    cap = state_cap or default_state_cap()
    out = solver.xi(g, robber_may_pass=not no_pass, state_cap=cap)
    payload = {
        "graph": name,
        "graph6": graphs.to_graph6(g),
        "robberMayPass": not no_pass,
        "xi": out.value,
        "bracket": out.bracket,
        "record": {str(k): v for k, v in out.record.items()},
    }
    if out.value is None:
        payload["stateCapHit"] = cap
        emit(payload, as_json, [f"xi({name}) in [{out.lower}, {out.upper}] (state cap {cap} hit)"])
        sys.exit(EXIT_CAP)
    payload["bestPlacement"] = list(out.result.best_placement)
    payload["optimalTime"] = out.result.optimal_time
    payload["elapsed"] = round(out.result.elapsed, 3)
    emit(
        payload,
        as_json,
        [
            f"xi({name}) = {out.value}",
            f"  winning placement (edge indices): {list(out.result.best_placement)}",
            f"  optimal containment time: {out.result.optimal_time} cop turn(s)",
            f"  solve time: {out.result.elapsed:.3f}s",
        ],
    )


@main.command("copnumber")
@with_graph_source
@click.option("--json", "as_json", is_flag=True)
@click.option("--state-cap", type=int, default=None)
def copnumber(family, graph6_path, index, as_json, state_cap):
    """Classic cop number: fewest vertex cops that capture the robber."""
    g, name = load_graph(family, graph6_path, index)
    cap = state_cap or default_state_cap()
    out = solver.cop_number(g, state_cap=cap)
    payload = {
        "graph": name,
        "graph6": graphs.to_graph6(g),
        "copNumber": out.value,
        "bracket": out.bracket,
        "record": {str(k): v for k, v in out.record.items()},
    }
    if out.value is None:
        emit(payload, as_json, [f"c({name}) in [{out.lower}, {out.upper}] (state cap hit)"])
        sys.exit(EXIT_CAP)
    payload["bestPlacement"] = list(out.result.best_placement)
    payload["optimalTime"] = out.result.optimal_time
    emit(
        payload,
        as_json,
        [
            f"c({name}) = {out.value}",
            f"  winning placement (vertices): {list(out.result.best_placement)}",
            f"  capture time: {out.result.optimal_time} cop turn(s)",
        ],
    )


@main.command()
@with_graph_source
@click.option("--json", "as_json", is_flag=True)
def gamma(family, graph6_path, index, as_json):
    """Domination number with a witness set."""
    g, name = load_graph(family, graph6_path, index)
    try:
        value, witness = graphs.domination_number(g)
    except GraphError as exc:
        raise click.UsageError(str(exc))
    emit(
        {"graph": name, "gamma": value, "witness": list(witness)},
        as_json,
        [f"gamma({name}) = {value}", f"  dominating set: {list(witness)}"],
    )


@main.command()
@with_graph_source
@click.option("--json", "as_json", is_flag=True)
def girth(family, graph6_path, index, as_json):
    """Length of the shortest cycle."""
    g, name = load_graph(family, graph6_path, index)
    value = graphs.girth(g)
    emit(
        {"graph": name, "girth": value},
        as_json,
        [f"girth({name}) = {'acyclic' if value is None else value}"],
    )


@main.command()
@with_graph_source
@click.option("--k", required=True, type=int, help="number of cops")
@click.option("--no-pass", "no_pass", is_flag=True)
@click.option("--vertex-game", is_flag=True, help="classic vertex pursuit instead of containment")
@click.option("--export-strategy", type=click.Path(), default=None,
              help="write the reachable optimal cop strategy table as JSON")
@click.option("--json", "as_json", is_flag=True)
@click.option("--state-cap", type=int, default=None)
def solve(family, graph6_path, index, k, no_pass, vertex_game, export_strategy, as_json, state_cap):
    """Decide cops-win vs robber-wins for a fixed number of cops."""
    g, name = load_graph(family, graph6_path, index)
    cap = state_cap or default_state_cap()
    kind = "vertexPursuit" if vertex_game else CONTAINMENT
    try:
        rules = Rules(kind, k, robber_may_pass=True if vertex_game else not no_pass)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    try:
        result = solver.solve(g, rules, cap)
    except StateCapExceeded as exc:
        emit(
            {"graph": name, "error": "state-cap", "estimate": exc.estimate, "cap": exc.cap},
            as_json,
            [f"state cap exceeded: estimated {exc.estimate} states > cap {exc.cap}"],
        )
        sys.exit(EXIT_CAP)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    payload = {"graph": name, "graph6": graphs.to_graph6(g), **result.summary()}
    lines = [f"{name}, {k} cop(s), {rules.kind}" + ("" if rules.robber_may_pass else " (no pass)"),
             f"  value: {result.value}"]
    if result.value == COPS_WIN:
        lines.append(f"  best placement: {list(result.best_placement)}")
        lines.append(f"  optimal time: {result.optimal_time} cop turn(s)")
    lines.append(f"  states: {result.state_count}, solve time {result.elapsed:.3f}s")
    if export_strategy:
        if result.value != COPS_WIN:
            raise click.UsageError("no cop strategy to export on a robber-win instance")
        cop_strat, _ = solver.extract_strategies(result)
        table = cop_strat.materialize_reachable()
        doc = {
            "graph6": graphs.to_graph6(g),
            "kind": rules.kind,
            "copCount": k,
            "robberMayPass": rules.robber_may_pass,
            "moves": [
                {
                    "squad": list(s[0]),
                    "robber": s.robber,
                    "toSquad": list(nxt[0]),
                }
                for s, nxt in sorted(table.items())
            ],
        }
        with open(export_strategy, "w") as fh:
            json.dump(doc, fh, indent=2)
        lines.append(f"  strategy table ({len(table)} states) written to {export_strategy}")
        payload["strategyStates"] = len(table)
    emit(payload, as_json, lines)


@main.command()
@click.option("--fast", "selection", flag_value="fast", default=True)
@click.option("--all", "selection", flag_value="all")
@click.option("--only", multiple=True, help="filter by check id prefix (repeatable)")
@click.option("--json", "as_json", is_flag=True)
@click.option("--state-cap", type=int, default=None)
def check(selection, only, as_json, state_cap):
    """Run the named claim checks and report pass/fail/skip."""
    cap = state_cap or default_state_cap()
    try:
        reports, summary = checks.run_suite(selection, only=only or None, state_cap=cap)
    except Exception as exc:  # infrastructure failure, not a check failure
        click.echo(f"suite error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    doc = checks.suite_document(reports, summary)
    if as_json:
        click.echo(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for r in reports:
            mark = {"pass": "PASS", "fail": "FAIL", "skipped": "skip"}[r.verdict]
            graph_name = r.inputs.get("graph", r.inputs.get("nMax", ""))
            extra = ""
            if r.verdict == "fail" and r.counterexample:
                extra = "  << COUNTEREXAMPLE"
            if r.verdict == "skipped":
                extra = f"  ({r.skip_reason})"
            click.echo(f"[{mark}] {r.check_id:28s} {graph_name}{extra}")
        click.echo(
            f"summary: {summary['pass']} pass, {summary['fail']} fail,"
            f" {summary['skipped']} skipped"
        )
        if summary["counterexamples"]:
            click.echo(
                "COUNTEREXAMPLE(S) FOUND: a stated claim fails on a concrete"
                " instance; see the check witness for a replayable trace."
            )
    sys.exit(EXIT_CHECK_FAILED if summary["fail"] else EXIT_OK)


@main.command()
@with_graph_source
@click.option("--k", required=True, type=int)
@click.option("--no-pass", "no_pass", is_flag=True)
@click.option("--vs", type=click.Choice(["optimal", "random"]), default="optimal",
              show_default=True, help="robber opponent for the engine cops")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.option("--state-cap", type=int, default=None)
def playout(family, graph6_path, index, k, no_pass, vs, seed, as_json, state_cap):
    """Move-by-move transcript of optimal-vs-optimal or optimal-vs-random play."""
    g, name = load_graph(family, graph6_path, index)
    cap = state_cap or default_state_cap()
    rules = Rules(CONTAINMENT, k, robber_may_pass=not no_pass)
    try:
        result = solver.solve(g, rules, cap)
    except StateCapExceeded as exc:
        click.echo(f"state cap exceeded: estimated {exc.estimate} states", err=True)
        sys.exit(EXIT_CAP)
    rng = random_module.Random(seed) if vs == "random" else None
    if result.value == COPS_WIN:
        trace = solver.playout(result, random_robber=rng)
    else:
        # no winning placement; demonstrate certified evasion from a default one
        squad = tuple(sorted(result._arena.squad_at(0)))
        trace = solver.playout(result, squad=squad, random_cops=rng)
    payload = {"graph": name, "value": result.value, **trace}
    lines = [f"{name}, {k} cop(s): {result.value}"]
    for ply in trace["plies"]:
        lines.append(
            f"  {ply['mover']:>9}: cops on edges {ply['squad']}, robber at {ply['robber']}"
        )
    if trace["outcome"] == "contained":
        lines.append(f"  contained in {trace['copTurns']} cop turn(s)")
    else:
        lines.append("  evasion certified at state repeat")
    emit(payload, as_json, lines)


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--state-cap", type=int, default=None)
@click.option("--cache-dir", type=click.Path(), default=None,
              help="solve-cache directory (default ~/.cache/containment)")
def serve(port, host, state_cap, cache_dir):
    """Run the HTTP play/solve service until interrupted."""
    import uvicorn

    from .service import build_app

    app = build_app(state_cap=state_cap or default_state_cap(), cache_dir=cache_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
