"""Named, machine-run verifications of the structural claims about the game.

Each check states a self-contained mathematical claim, computes everything
needed to decide it on concrete instances, and returns a structured report
with the inputs, the computed values, and a verdict.  A failing verdict
always carries a concrete witness replayable through the kernel; for the two
claims known to admit counterexamples (the product bound, and the girth-7
threshold, see check_girth7) a failure is flagged as a counterexample rather
than treated as an infrastructure error.

Reports serialize to a schema-versioned JSON document.  Runtime fields
aside, a suite run is deterministic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import graphs, kernel, solver
from .graphs import Graph
from .kernel import CONTAINMENT, COPS, Rules
from .solver import COPS_WIN, ROBBER_WINS, DEFAULT_STATE_CAP, StateCapExceeded

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
SKIP = "skipped"


@dataclass
class CheckReport:
    check_id: str
    claim: str
    inputs: dict
    computed: dict = field(default_factory=dict)
    verdict: str = PASS
    skip_reason: str | None = None
    counterexample: bool = False
    runtime: float = 0.0

    def to_dict(self) -> dict:
        return {
            "checkId": self.check_id,
            "claim": self.claim,
            "inputs": self.inputs,
            "computed": self.computed,
            "verdict": self.verdict,
            "skipReason": self.skip_reason,
            "counterexample": self.counterexample,
            "runtime": round(self.runtime, 4),
        }


def _describe(g: Graph, name: str) -> dict:
    return {"graph": name, "graph6": graphs.to_graph6(g), "n": g.n, "m": g.m}


def _timed(report: CheckReport, started: float) -> CheckReport:
    report.runtime = time.perf_counter() - started
    return report


# ---------------------------------------------------------------------------
# Individual checks


def check_bound_chain(g: Graph, name: str, state_cap: int = DEFAULT_STATE_CAP) -> CheckReport:
    """cop_number(G) <= xi(G) <= max_degree(G) * domination_number(G)."""
    started = time.perf_counter()
    report = CheckReport(
        check_id="bound_chain",
        claim="cop_number(G) <= xi(G) <= max_degree(G) * domination_number(G)",
        inputs=_describe(g, name),
    )
    try:
        c = solver.cop_number(g, state_cap)
        x = solver.xi(g, state_cap=state_cap)
    except StateCapExceeded as exc:
        report.verdict = SKIP
        report.skip_reason = f"state cap: {exc}"
        return _timed(report, started)
    if c.value is None or x.value is None:
        report.verdict = SKIP
        report.skip_reason = "search stopped by state cap"
        report.computed = {"copNumberBracket": c.bracket, "xiBracket": x.bracket}
        return _timed(report, started)
    gamma, witness = graphs.domination_number(g)
    delta_max = graphs.max_degree(g)
    report.computed = {
        "copNumber": c.value,
        "xi": x.value,
        "maxDegree": delta_max,
        "dominationNumber": gamma,
        "dominationWitness": list(witness),
        "upperBound": delta_max * gamma,
    }
    if not (c.value <= x.value <= delta_max * gamma):
        report.verdict = FAIL
    return _timed(report, started)


def check_product_bound(g: Graph, name: str, state_cap: int = DEFAULT_STATE_CAP) -> CheckReport:
    """xi(G) <= max_degree(G) * cop_number(G): open, swept for counterexamples."""
    started = time.perf_counter()
    report = CheckReport(
        check_id="product_bound",
        claim="xi(G) <= max_degree(G) * cop_number(G) (open bound; failure = counterexample)",
        inputs=_describe(g, name),
    )
    try:
        c = solver.cop_number(g, state_cap)
        x = solver.xi(g, state_cap=state_cap)
    except StateCapExceeded as exc:
        report.verdict = SKIP
        report.skip_reason = f"state cap: {exc}"
        return _timed(report, started)
    if c.value is None or x.value is None:
        report.verdict = SKIP
        report.skip_reason = "search stopped by state cap"
        return _timed(report, started)
    delta_max = graphs.max_degree(g)
    report.computed = {
        "xi": x.value,
        "copNumber": c.value,
        "maxDegree": delta_max,
        "bound": delta_max * c.value,
    }
    if x.value > delta_max * c.value:
        report.verdict = FAIL
        report.counterexample = True
        report.computed["witness"] = {
            "xiRecord": {str(k): v for k, v in x.record.items()},
        }
    return _timed(report, started)


def _girth_threshold_check(
    g: Graph, name: str, check_id: str, claim: str, extra_cops: int, state_cap: int
) -> CheckReport:
    """Shared body: with min_degree + extra_cops cops, the robber must win."""
    started = time.perf_counter()
    report = CheckReport(check_id=check_id, claim=claim, inputs=_describe(g, name))
    delta = graphs.min_degree(g)
    if delta < 3:
        report.verdict = SKIP
        report.skip_reason = (
            f"guard: min degree {delta} < 3 (cycles are solver-verified"
            " counterexamples to the unguarded statement)"
        )
        return _timed(report, started)
    k = delta + extra_cops
    try:
        result = solver.solve(g, Rules(CONTAINMENT, k), state_cap)
    except StateCapExceeded as exc:
        report.verdict = SKIP
        report.skip_reason = f"state cap: {exc}"
        return _timed(report, started)
    report.computed = {
        "girth": graphs.girth(g),
        "minDegree": delta,
        "cops": k,
        "value": result.value,
    }
    if result.value != ROBBER_WINS:
        report.verdict = FAIL
        report.counterexample = True
        report.computed["witness"] = {
            "bestPlacement": list(result.best_placement),
            "optimalTime": result.optimal_time,
            "trace": solver.playout(result),
        }
    return _timed(report, started)


def check_girth5(g: Graph, name: str, state_cap: int = DEFAULT_STATE_CAP) -> CheckReport:
    """girth >= 5 (and min degree >= 3) forces xi(G) > min_degree(G)."""
    girth = graphs.girth(g)
    if girth is None or girth < 5:
        report = CheckReport(
            check_id="girth5_floor",
            claim="girth(G) >= 5 and min_degree(G) >= 3 imply xi(G) > min_degree(G)",
            inputs=_describe(g, name),
            verdict=SKIP,
            skip_reason=f"girth {girth} below 5",
        )
        return report
    return _girth_threshold_check(
        g,
        name,
        "girth5_floor",
        "girth(G) >= 5 and min_degree(G) >= 3 imply xi(G) > min_degree(G)",
        extra_cops=0,
        state_cap=state_cap,
    )


def check_girth7(g: Graph, name: str, state_cap: int = DEFAULT_STATE_CAP) -> CheckReport:
    """girth >= 7 (and min degree >= 3) would force xi(G) > min_degree(G) + 1.

    The girth-7 cage on 24 vertices refutes this threshold under these rules:
    min_degree + 1 cops force containment (see the shipped analysis).  The
    check is kept as stated; on that instance it reports a counterexample
    with a replayable trace.
    """
    girth = graphs.girth(g)
    if girth is None or girth < 7:
        return CheckReport(
            check_id="girth7_threshold",
            claim="girth(G) >= 7 and min_degree(G) >= 3 imply xi(G) > min_degree(G) + 1",
            inputs=_describe(g, name),
            verdict=SKIP,
            skip_reason=f"girth {girth} below 7",
        )
    return _girth_threshold_check(
        g,
        name,
        "girth7_threshold",
        "girth(G) >= 7 and min_degree(G) >= 3 imply xi(G) > min_degree(G) + 1",
        extra_cops=1,
        state_cap=state_cap,
    )


def check_containment_locus(g: Graph, name: str, state_cap: int = DEFAULT_STATE_CAP) -> CheckReport:
    """When min-degree cops win, best play always contains on a 3- or 4-cycle."""
    started = time.perf_counter()
    claim = (
        "min_degree(G) cops never contain a best-play robber at a vertex"
        " lying on no 3- or 4-cycle"
    )
    report = CheckReport(
        check_id="containment_locus", claim=claim, inputs=_describe(g, name)
    )
    delta = graphs.min_degree(g)
    informational = delta < 3
    try:
        result = solver.solve(g, Rules(CONTAINMENT, delta), state_cap)
    except StateCapExceeded as exc:
        report.verdict = SKIP
        report.skip_reason = f"state cap: {exc}"
        return _timed(report, started)
    if result.value != COPS_WIN:
        report.verdict = SKIP
        report.skip_reason = f"{delta} cops lose; claim vacuous here"
        return _timed(report, started)

    loci = []
    on_short = []
    for v in range(g.n):
        trace = solver.playout(result, robber=v)
        assert trace["outcome"] == "contained"
        final = trace["finalRobber"]
        loci.append(final)
        on_short.append(graphs.on_short_cycle(g, final))
    report.computed = {
        "minDegree": delta,
        "containmentVertices": sorted(set(loci)),
        "allOnShortCycles": all(on_short),
    }
    if informational:
        # Outside the guard the statement's scope is unsettled; report only.
        report.verdict = SKIP
        report.skip_reason = (
            "min degree < 3: reported informationally, not judged"
        )
        return _timed(report, started)
    if not all(on_short):
        report.verdict = FAIL
        bad = [v for v, ok in zip(loci, on_short) if not ok]
        report.computed["witness"] = {"offCycleVertices": sorted(set(bad))}
    return _timed(report, started)


def check_family_ktrack(
    k_min: int = 3, k_max: int = 7, state_cap: int = DEFAULT_STATE_CAP
) -> list[CheckReport]:
    """xi = 3 on every double-cycle track in the range."""
    reports = []
    for k in range(k_min, k_max + 1):
        started = time.perf_counter()
        g = graphs.k_track(k)
        report = CheckReport(
            check_id=f"ktrack_containable_{k}",
            claim="xi(kTrack(k)) = 3 for all k >= 3",
            inputs=_describe(g, f"ktrack:{k}"),
        )
        try:
            out = solver.xi(g, state_cap=state_cap)
        except StateCapExceeded as exc:
            report.verdict = SKIP
            report.skip_reason = f"state cap: {exc}"
            reports.append(_timed(report, started))
            continue
        report.computed = {"xi": out.value, "optimalTime": out.result.optimal_time}
        if out.value != 3:
            report.verdict = FAIL
        reports.append(_timed(report, started))
    return reports


def check_family_kring(
    k_min: int = 3, k_max: int = 5, state_cap: int = DEFAULT_STATE_CAP
) -> list[CheckReport]:
    """ring(3) containable within 4 turns; 3 cops lose on ring(k) for k >= 4."""
    reports = []
    for k in range(k_min, k_max + 1):
        started = time.perf_counter()
        g = graphs.ring_of_squares(k)
        if k == 3:
            report = CheckReport(
                check_id="ring3_containable",
                claim="xi(ringOfSquares(3)) = 3 with containment in at most 4 turns",
                inputs=_describe(g, "ring:3"),
            )
            out = solver.xi(g, state_cap=state_cap)
            report.computed = {"xi": out.value, "optimalTime": out.result.optimal_time}
            if out.value != 3 or out.result.optimal_time > 4:
                report.verdict = FAIL
        else:
            report = CheckReport(
                check_id=f"ring{k}_uncontainable",
                claim="3 cops cannot contain on ringOfSquares(k) for any k >= 4",
                inputs=_describe(g, f"ring:{k}"),
            )
            try:
                result = solver.solve(g, Rules(CONTAINMENT, 3), state_cap)
            except StateCapExceeded as exc:
                report.verdict = SKIP
                report.skip_reason = f"state cap: {exc}"
                reports.append(_timed(report, started))
                continue
            report.computed = {"minDegree": graphs.min_degree(g), "value": result.value}
            if result.value != ROBBER_WINS:
                report.verdict = FAIL
                report.computed["witness"] = {
                    "bestPlacement": list(result.best_placement),
                    "trace": solver.playout(result),
                }
        reports.append(_timed(report, started))
    return reports


def check_trees(n_max: int = 7, state_cap: int = DEFAULT_STATE_CAP) -> CheckReport:
    """xi(T) = max_degree(T) on every tree up to n_max vertices.

    Trees are enumerated through all Pruefer sequences and deduplicated by
    canonical certificate before solving (xi and the degree sequence are
    isomorphism invariants).  Also verifies that a single cop wins on every
    tree when the robber must keep moving.
    """
    started = time.perf_counter()
    report = CheckReport(
        check_id="trees_max_degree",
        claim=(
            "xi(T) = max_degree(T) for every tree on >= 3 vertices;"
            " one cop contains on any tree when the robber cannot pass"
        ),
        inputs={"nMax": n_max},
    )
    if n_max > 7:
        raise ValueError("tree sweep is intended for n_max <= 7")
    distinct: dict[str, Graph] = {}
    enumerated = 0
    for n in range(2, n_max + 1):
        for seq in graphs.prufer_sequences(n):
            t = graphs.tree_from_prufer(seq)
            enumerated += 1
            distinct.setdefault(graphs.tree_certificate(t), t)
    violations = []
    for cert, t in distinct.items():
        expect = graphs.max_degree(t)
        out = solver.xi(t, state_cap=state_cap)
        if out.value != expect:
            violations.append(
                {"graph6": graphs.to_graph6(t), "xi": out.value, "maxDegree": expect}
            )
        nopass = solver.solve(t, Rules(CONTAINMENT, 1, robber_may_pass=False), state_cap)
        if nopass.value != COPS_WIN:
            violations.append(
                {"graph6": graphs.to_graph6(t), "noPassOneCop": nopass.value}
            )
    report.computed = {
        "enumeratedLabeledTrees": enumerated,
        "distinctTrees": len(distinct),
        "violations": violations,
    }
    if violations:
        report.verdict = FAIL
    return _timed(report, started)


# ---------------------------------------------------------------------------
# Suite runner


CHAIN_SUITE: list[str] = (
    [f"cycle:{n}" for n in range(4, 11)]
    + [f"complete:{n}" for n in range(3, 7)]
    + ["q3"]
    + [f"ktrack:{k}" for k in range(3, 8)]
    + ["ring:3", "ring:4", "petersen"]
    + ["path:5", "star:4", "prufer:2,2,3"]
)

GIRTH_SUITE: list[str] = ["petersen", "cycle:7", "cycle:5", "q3", "ktrack:5", "ring:4"]

LOCUS_SUITE: list[str] = [
    "complete:4",
    "complete:5",
    "q3",
    "ktrack:3",
    "ktrack:5",
    "ring:3",
    "cycle:6",
]


def run_suite(
    selection: str = "fast",
    only: Iterable[str] | None = None,
    state_cap: int = DEFAULT_STATE_CAP,
) -> tuple[list[CheckReport], dict]:
    """Run the named checks and summarize.

    selection "fast" covers everything but the girth-7 cage instance, which
    joins under "all".  `only` filters by check id prefix.  Failures are
    data, not errors; the caller maps them to exit codes.
    """
    if selection not in ("fast", "all", "none"):
        raise ValueError(f"unknown selection {selection!r}")
    reports: list[CheckReport] = []
    if selection != "none":
        for name in CHAIN_SUITE:
            g = graphs.parse_family(name)
            reports.append(check_bound_chain(g, name, state_cap))
            reports.append(check_product_bound(g, name, state_cap))
        for name in GIRTH_SUITE:
            g = graphs.parse_family(name)
            reports.append(check_girth5(g, name, state_cap))
        if selection == "all":
            reports.append(check_girth7(graphs.mcgee(), "mcgee", state_cap))
        for name in LOCUS_SUITE:
            g = graphs.parse_family(name)
            reports.append(check_containment_locus(g, name, state_cap))
        reports.extend(check_family_ktrack(state_cap=state_cap))
        reports.extend(check_family_kring(state_cap=state_cap))
        reports.append(check_trees(state_cap=state_cap))

    if only is not None:
        wanted = list(only)
        reports = [r for r in reports if any(r.check_id.startswith(w) for w in wanted)]
    reports.sort(key=lambda r: (r.check_id, r.inputs.get("graph", "")))
    summary = {
        "pass": sum(r.verdict == PASS for r in reports),
        "fail": sum(r.verdict == FAIL for r in reports),
        "skipped": sum(r.verdict == SKIP for r in reports),
        "counterexamples": sum(r.counterexample for r in reports),
    }
    return reports, summary


def suite_document(reports: list[CheckReport], summary: dict) -> dict:
    """The schema-versioned JSON document for one suite run."""
    return {
        "schemaVersion": SCHEMA_VERSION,
        "checks": [r.to_dict() for r in reports],
        "summary": summary,
    }
