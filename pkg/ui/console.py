"""
Text rendering for the command line.

Every renderer takes the same value objects the JSON output is built from and
returns a string; main.py decides between this and JSON.
"""

from typing import Dict, Iterable

import click

from engine.faces import format_face
from engine.intervals import Interval, f_vector, loops


def _ok(flag: bool, yes: str = "holds", no: str = "FAILS") -> str:
    return click.style(yes, fg="green") if flag else click.style(no, fg="red", bold=True)


def _values(values) -> str:
    if not values:
        return "{}"
    return "{" + ", ".join(str(v) if isinstance(v, int) else f"{v:.6g}" for v in values) + "}"


def render_interval(phi: Interval, title: str = "interval") -> str:
    lines = [click.style(f"{title} on {phi.n} vertices, {len(phi)} faces", bold=True)]
    if phi.is_empty:
        lines.append("  (empty)")
    else:
        lines.append("  " + " ".join(format_face(f) for f in phi))
    fv = f_vector(phi)
    lines.append("  f = (" + ", ".join(f"f_{k - 1}={c}" for k, c in enumerate(fv) if c) + ")")
    lost = sorted(loops(phi))
    if lost:
        lines.append(f"  loops: {lost}")
    return "\n".join(lines)


def render_spectrum(phi: Interval, report, poly) -> str:
    lines = [render_interval(phi)]
    for dim in report.dims:
        if not dim.values:
            continue
        kind = "exact" if dim.exact else click.style("numeric", fg="yellow")
        lines.append(f"  s_{dim.dim:<2} {kind:>7}  {_values(dim.values)}")
    lines.append(f"  integral: {_ok(report.integral, 'yes', 'no')}")
    lines.append(f"  S(t,q) = {poly.format()}")
    return "\n".join(lines)


def render_verdicts(verdicts: Dict[int, object]) -> str:
    lines = []
    for e, verdict in sorted(verdicts.items()):
        note = "" if verdict.rigorous else click.style(" (numeric, not rigorous)", fg="yellow")
        lines.append(f"vertex {e}: {_ok(verdict.holds)}{note}")
        if not verdict.holds:
            lines.append(f"  residual = {verdict.residual.format()}")
    return "\n".join(lines) if lines else "no vertices"


def render_specializations(reports: Iterable) -> str:
    lines = []
    for r in reports:
        lines.append(
            f"vertex {r.vertex}: q=0 {_ok(r.q0)}  q=1 {_ok(r.q1)}  t=0 {_ok(r.t0)}  t=-1 {_ok(r.t_minus_1)}"
        )
    return "\n".join(lines)


def render_shifted_check(phi: Interval, shifted: bool, witness) -> str:
    lines = [render_interval(phi), f"  shifted: {_ok(shifted, 'yes', 'no')}"]
    if witness is not None:
        low, mid, high = witness
        lines.append(
            f"  witness: {format_face(low)} ≤_S {format_face(mid)} ≤_S {format_face(high)}, "
            f"{format_face(mid)} missing"
        )
    return "\n".join(lines)


def render_decomposition(decomposition) -> str:
    lines = [f"top dimension i = {decomposition.top_dim}"]
    lines.append(render_interval(decomposition.phi_minus, "Φ⁻"))
    exceptional = Interval(decomposition.phi_minus.n, decomposition.exceptional)
    lines.append("𝒩_Φ: " + (" ".join(format_face(f) for f in exceptional) or "(none)"))
    lines.append(render_interval(decomposition.phi_plus, "Φ⁺"))
    lines.append(render_interval(decomposition.phi_prime, "Φ′"))
    return "\n".join(lines)


def render_matroid(matroid) -> str:
    circuits = matroid.circuits()
    lines = [
        click.style(f"{matroid.backend} matroid on {matroid.n} elements, rank {matroid.rank}", bold=True),
        f"  bases: {len(matroid.bases())}",
        "  circuits: " + (" ".join(format_face(c) for c in circuits) or "(none)"),
    ]
    if matroid.loops():
        lines.append(f"  loops: {list(matroid.loops())}")
    return "\n".join(lines)


def render_circuit_decomposition(decomposition) -> str:
    lines = [f"element {decomposition.element}, labels {list(decomposition.labels)}"]
    for circuit, summand in zip(decomposition.circuits, decomposition.summands):
        lines.append(f"  circuit {format_face(circuit)}: " + " ".join(format_face(f) for f in summand))
    return "\n".join(lines)


def render_fuzz(report) -> str:
    lines = [click.style(f"{len(report.results)} trials, seed {report.config.seed}", bold=True)]
    for gap, tally in report.tallies.items():
        lines.append(
            f"  |A|={gap}: {tally.trials} trials, {tally.integral} integral, "
            f"{tally.recursion_holds} recursive, {tally.both} both"
        )
    for result in report.counterexamples:
        lines.append(
            click.style(f"  trial {result.trial}", fg="red")
            + f" ({result.backend}, n={result.n}, A={list(result.removed)}): "
            f"integral={result.integral}, failing vertices {list(result.failing_vertices)}"
        )
    return "\n".join(lines)


def render_search(result) -> str:
    if not result.found:
        return f"none found in {result.trials} trials (n={result.n}, seed={result.seed})"
    lines = [
        click.style(f"found at trial {result.trial}, vertex {result.vertex}", fg="red", bold=True),
        render_interval(result.interval),
        f"  residual ({result.verdict.mode}) = {result.verdict.residual.format()}",
        f"  replay: --n {result.n} --seed {result.seed} (trial {result.trial})",
    ]
    return "\n".join(lines)
