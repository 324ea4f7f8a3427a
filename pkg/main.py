"""
lapint - Laplacian spectra of intervals in the Boolean algebra.

Command-line entry point. Every subcommand is a pure function of its input
document(s) and seed:

- spectrum / check / ops:    one interval (JSON file, '-' for stdin, or inline JSON)
- shifted check|gen|decompose: shifted intervals and the Φ⁻/Φ⁺/Φ′ pieces
- matroid info|pair|decompose|check: matroid minor pairs and strong maps
- fuzz / search-counterexample: randomized campaigns with replayable seeds

Exit status: 2 for malformed input, 1 when an --assert check fails, 0 otherwise.
"""

import json
import sys

import click
from pydantic import ValidationError

from config.settings import Settings
from engine.errors import GroundSetTooLarge, LapintError
from engine.faces import face_vertices
from engine.intervals import interval_as_dict
from engine.laplacian import betti, spectrum
from engine.matroid import circuit_decomposition, minor_pair, strong_map_interval
from engine.shifted import find_shifted_violation, phi_minus, random_shifted_interval
from engine.spectrum import (
    check_recursion_all_vertices,
    recursion_residual,
    satisfies_recursion,
    specialization_checks,
    spectrum_polynomial,
)
from modules.fuzz import fuzz_conjecture
from modules.pipeline import run_pipeline
from modules.search import search_counterexample
from modules.serialization import FuzzConfig, dumps, load_interval, load_matroid, read_source
from ui import console
from utils.logger import logger, setup_logger


class InputError(click.ClickException):
    """Malformed input document or arguments."""

    exit_code = 2


class AssertionFailed(click.ClickException):
    exit_code = 1


class LapintContext:
    def __init__(self, settings: Settings, fmt: str, tolerance=None):
        self.settings = settings
        self.fmt = fmt
        self.tolerances = settings.tolerances()
        if tolerance is not None:
            self.tolerances["tolerance"] = tolerance
            self.tolerances["group_tolerance"] = tolerance

    def limit(self, key: str) -> int:
        return self.settings.get("limits", key)

    def emit(self, document, text: str):
        click.echo(dumps(document) if self.fmt == "json" else text)


pass_lapint = click.make_pass_decorator(LapintContext)


def _load(loader, *args):
    try:
        return loader(*args)
    except (ValidationError, LapintError, ValueError, OSError) as exc:
        raise InputError(str(exc))


def _interval(ctx: LapintContext, source: str, limit_key: str = "max_n_spectra"):
    phi = _load(load_interval, source)
    limit = ctx.limit(limit_key)
    if phi.n > limit:
        raise InputError(str(GroundSetTooLarge(phi.n, limit)))
    return phi


def _matroid(ctx: LapintContext, source: str):
    return _load(load_matroid, source, ctx.limit("max_n_matroid"))


def _vertices(face):
    return list(face_vertices(face))


def _check_assert(enabled: bool, passed: bool, what: str):
    if enabled and not passed:
        raise AssertionFailed(f"{what} failed")


@click.group()
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default=None,
              help="Output format (default from config, json).")
@click.option("--tolerance", type=float, default=None, help="Numeric-mode tolerance.")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="Config file (default ~/.lapint/config.json or $LAPINT_CONFIG).")
@click.option("--log-level", default=None, help="loguru level for stderr diagnostics.")
@click.pass_context
def cli(ctx, fmt, tolerance, config_path, log_level):
    """Exact Laplacian spectra and the spectral recursion for intervals."""
    settings = Settings(config_path)
    log = settings.get("logging")
    setup_logger(log_level or log.get("level"), log.get("file_sink"), log.get("rotation"))
    ctx.obj = LapintContext(settings, fmt or settings.get("output", "format") or "json", tolerance)


@cli.command("spectrum")
@click.argument("source")
@pass_lapint
def spectrum_command(ctx, source):
    """Laplacian spectra, Betti numbers and S(t,q) of an interval."""
    phi = _interval(ctx, source)
    tol = {k: v for k, v in ctx.tolerances.items() if k != "tolerance"}
    report = spectrum(phi, numeric_hints=bool(ctx.settings.get("spectrum", "numeric_hints")), **tol)
    poly = spectrum_polynomial(phi, **tol)
    document = {
        "interval": interval_as_dict(phi),
        "spectrum": report.to_dict(),
        "polynomial": poly.to_dict(),
        "betti": {str(k - 1): b for k, b in enumerate(betti(phi))},
    }
    ctx.emit(document, console.render_spectrum(phi, report, poly))


@cli.command("check")
@click.argument("source")
@click.option("--vertex", "-e", type=int, default=None, help="Check one vertex only.")
@click.option("--specializations", is_flag=True, help="Also check q=0, q=1, t=0, t=-1.")
@click.option("--assert", "assert_", is_flag=True, help="Exit 1 unless the recursion holds.")
@pass_lapint
def check_command(ctx, source, vertex, specializations, assert_):
    """Verify the spectral recursion at one or every vertex."""
    phi = _interval(ctx, source)
    try:
        if vertex is None:
            verdicts = check_recursion_all_vertices(phi, **ctx.tolerances)
        else:
            verdicts = {vertex: recursion_residual(phi, vertex, **ctx.tolerances)}
    except LapintError as exc:
        raise InputError(str(exc))
    document = {
        "interval": interval_as_dict(phi),
        "holds": all(v.holds for v in verdicts.values()),
        "verdicts": {str(e): v.to_dict() for e, v in sorted(verdicts.items())},
    }
    text = console.render_verdicts(verdicts)
    passed = document["holds"]
    if specializations:
        reports = [specialization_checks(phi, e) for e in sorted(verdicts)]
        document["specializations"] = [r.to_dict() for r in reports]
        text += "\n" + console.render_specializations(reports)
        passed = passed and all(r.passed for r in reports)
    ctx.emit(document, text)
    _check_assert(assert_, passed, "spectral recursion")


@cli.command("ops")
@click.argument("source")
@click.option("--pipe", required=True, help='Operations, e.g. "dual | delete 3 | reduce 2".')
@pass_lapint
def ops_command(ctx, source, pipe):
    """Apply a pipeline of interval operations."""
    phi = _interval(ctx, source, "max_n_combinatorics")
    result = _load(run_pipeline, phi, pipe)
    ctx.emit(interval_as_dict(result), console.render_interval(result))


# -- shifted -------------------------------------------------------------------------

@cli.group("shifted")
def shifted_group():
    """Shifted intervals."""


@shifted_group.command("check")
@click.argument("source")
@click.option("--assert", "assert_", is_flag=True, help="Exit 1 unless the interval is shifted.")
@pass_lapint
def shifted_check(ctx, source, assert_):
    phi = _interval(ctx, source, "max_n_combinatorics")
    witness = find_shifted_violation(phi)
    document = {"interval": interval_as_dict(phi), "shifted": witness is None}
    if witness is not None:
        document["witness"] = [_vertices(f) for f in witness]
    ctx.emit(document, console.render_shifted_check(phi, witness is None, witness))
    _check_assert(assert_, witness is None, "shiftedness")


@shifted_group.command("gen")
@click.option("--n", "n", type=int, required=True, help="Number of vertices.")
@click.option("--seed", type=int, default=0, show_default=True)
@pass_lapint
def shifted_gen(ctx, n, seed):
    """Random shifted interval (replayable from --n and --seed)."""
    phi = _load(random_shifted_interval, n, seed, ctx.limit("max_n_combinatorics"))
    ctx.emit(interval_as_dict(phi), console.render_interval(phi, "shifted interval"))


@shifted_group.command("decompose")
@click.argument("source")
@click.option("--top-dim", type=int, default=None, help="The i of an (i-1,i)-dimensional interval.")
@pass_lapint
def shifted_decompose(ctx, source, top_dim):
    """Φ⁻, 𝒩_Φ, Φ⁺ and Φ′ of a two-dimensional interval."""
    phi = _interval(ctx, source, "max_n_combinatorics")
    decomposition = _load(phi_minus, phi, top_dim)
    ctx.emit(decomposition.to_dict(), console.render_decomposition(decomposition))


# -- matroid --------------------------------------------------------------------------

@cli.group("matroid")
def matroid_group():
    """Matroid minor pairs and strong maps."""


@matroid_group.command("info")
@click.argument("source")
@pass_lapint
def matroid_info(ctx, source):
    matroid = _matroid(ctx, source)
    document = {
        "matroid": matroid.to_dict(),
        "n": matroid.n,
        "rank": matroid.rank,
        "loops": list(matroid.loops()),
        "bases": [_vertices(b) for b in matroid.bases()],
        "circuits": [_vertices(c) for c in matroid.circuits()],
    }
    ctx.emit(document, console.render_matroid(matroid))


@matroid_group.command("pair")
@click.argument("source")
@click.option("--remove", "-a", "removed", type=int, multiple=True, required=True,
              help="Element of A (repeat for |A| > 1); |A| = 1 gives the minor pair.")
@pass_lapint
def matroid_pair(ctx, source, removed):
    """(IN(M - A), IN(M / A)) relabeled onto the remaining elements."""
    matroid = _matroid(ctx, source)
    phi = _load(strong_map_interval, matroid, removed)
    labels = [v for v in range(1, matroid.n + 1) if v not in removed]
    document = {"interval": interval_as_dict(phi), "labels": labels, "removed": sorted(removed)}
    ctx.emit(document, console.render_interval(phi, f"pair for A={sorted(removed)}"))


@matroid_group.command("decompose")
@click.argument("source")
@click.option("--element", "-e", type=int, required=True)
@pass_lapint
def matroid_decompose(ctx, source, element):
    """Split the minor pair at an element into one summand per circuit through it."""
    matroid = _matroid(ctx, source)
    decomposition = _load(circuit_decomposition, matroid, element)
    ctx.emit(decomposition.to_dict(), console.render_circuit_decomposition(decomposition))


@matroid_group.command("check")
@click.argument("source")
@click.option("--assert", "assert_", is_flag=True, help="Exit 1 unless every check passes.")
@pass_lapint
def matroid_check(ctx, source, assert_):
    """Recursion for IN(M) and for the minor pair at every element."""
    matroid = _matroid(ctx, source)
    if matroid.n > ctx.limit("max_n_spectra"):
        raise InputError(str(GroundSetTooLarge(matroid.n, ctx.limit("max_n_spectra"))))
    complex_holds = satisfies_recursion(matroid.independence_complex(), **ctx.tolerances)
    pairs = {
        e: satisfies_recursion(minor_pair(matroid, e), **ctx.tolerances)
        for e in range(1, matroid.n + 1)
    }
    passed = complex_holds and all(pairs.values())
    document = {
        "matroid": matroid.to_dict(),
        "independence_complex": complex_holds,
        "minor_pairs": {str(e): ok for e, ok in pairs.items()},
        "holds": passed,
    }
    lines = [f"IN(M): {'holds' if complex_holds else 'FAILS'}"]
    lines += [f"minor pair at {e}: {'holds' if ok else 'FAILS'}" for e, ok in pairs.items()]
    ctx.emit(document, "\n".join(lines))
    _check_assert(assert_, passed, "matroid recursion")


# -- campaigns ---------------------------------------------------------------------------

@cli.command("fuzz")
@click.option("--config-file", default=None, help="FuzzConfig JSON (path, '-' or inline).")
@click.option("--n-min", type=int, default=None)
@click.option("--n-max", type=int, default=None)
@click.option("--gap", "gaps", type=int, multiple=True, help="|A| values (repeatable).")
@click.option("--backend", "backends", multiple=True, help="gf2, gf3, graphic or uniform (repeatable).")
@click.option("--trials", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--jobs", type=int, default=None, help="Parallel worker processes.")
@click.option("--assert", "assert_", is_flag=True, help="Exit 1 if any counterexample is found.")
@pass_lapint
def fuzz_command(ctx, config_file, n_min, n_max, gaps, backends, trials, seed, jobs, assert_):
    """Strong-map campaign: integrality and recursion of (IN(M - A), IN(M / A))."""
    base = dict(ctx.settings.get("fuzz"))
    if config_file:
        base.update(_load(lambda s: json.loads(read_source(s)), config_file))
    overrides = {
        "n_min": n_min, "n_max": n_max, "trials": trials, "seed": seed, "jobs": jobs,
        "rank_gaps": list(gaps) or None, "backends": list(backends) or None,
    }
    base.update({k: v for k, v in overrides.items() if v is not None})
    config = _load(FuzzConfig.model_validate, base)
    report = fuzz_conjecture(config, **ctx.tolerances)
    ctx.emit(report.to_dict(), console.render_fuzz(report))
    _check_assert(assert_, not report.counterexamples, "strong-map campaign")


@cli.command("search-counterexample")
@click.option("--n", "n", type=int, default=None, help="Number of vertices.")
@click.option("--trials", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--numeric-ok", is_flag=True, help="Accept numeric-mode failures as findings.")
@pass_lapint
def search_command(ctx, n, trials, seed, numeric_ok):
    """First random interval whose recursion residual is nonzero."""
    defaults = ctx.settings.get("search")
    n = defaults.get("n") if n is None else n
    if n > ctx.limit("max_n_spectra"):
        raise InputError(str(GroundSetTooLarge(n, ctx.limit("max_n_spectra"))))
    result = search_counterexample(
        n,
        defaults.get("trials") if trials is None else trials,
        defaults.get("seed") if seed is None else seed,
        exact_only=not numeric_ok,
        **ctx.tolerances,
    )
    ctx.emit(result.to_dict(), console.render_search(result))


def run(argv=None) -> int:
    """Run the CLI on ``argv`` and return the exit status instead of exiting."""
    try:
        cli.main(args=argv, prog_name="lapint", standalone_mode=True)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    logger.debug("lapint started")
    main()
