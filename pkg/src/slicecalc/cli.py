from __future__ import annotations

import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator, List, Optional

import typer
from rich.console import Console
from rich.table import Table

from .config import Settings, load_settings
from .errors import InvalidSpecError, InvariantViolation
from .io_utils import dumps, read_json, write_json, write_jsonl
from .logging_conf import setup_logging
from .mackey import burnside, e_tensor, fixed_point, load_mackey, mackey_to_json, p_zero, validate
from .reps.group import CyclicGroup, require_odd_prime
from .reps.parse import parse_rep
from .reps.virtual import VirtualRep, canonicalize, dim_function, v_j
from .slices.classes import equivalence_classes, vj_condition, vj_shift_verdict
from .slices.connectivity import commutes_with_slices, nu, smash_verdict, sphere_in_tau
from .slices.formulas import LAMBDA_NOTE, apply_slice_functor, representative_only, slice_description, slice_schedule
from .slices.verify import run_suites

app = typer.Typer(help="Slice filtration calculator for cyclic groups", no_args_is_help=True)
logger = logging.getLogger(__name__)

EXIT_NO = 1
EXIT_INVALID = 2
EXIT_INVARIANT = 3

JSON_OPTION = typer.Option(False, "--json", help="Machine-readable JSON on stdout")


@dataclass
class State:
    json: bool = False
    quiet: bool = False
    settings: Settings = field(default_factory=Settings)


def _state(ctx: typer.Context, json_out: bool = False) -> State:
    if not isinstance(ctx.obj, State):
        ctx.obj = State()
    ctx.obj.json = ctx.obj.json or json_out
    return ctx.obj


@contextmanager
def _guard() -> Iterator[None]:
    """Map library errors onto the exit-code contract."""
    try:
        yield
    except typer.Exit:
        raise
    except InvalidSpecError as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(EXIT_INVALID)
    except OSError as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(EXIT_INVALID)
    except InvariantViolation as e:
        typer.echo(f"internal invariant violated: {e}", err=True)
        raise typer.Exit(EXIT_INVARIANT)
    except Exception as e:
        logger.exception("unexpected failure")
        typer.echo(f"internal error: {e!r}", err=True)
        raise typer.Exit(EXIT_INVARIANT)


def _emit(state: State, obj: Any, text: str) -> None:
    typer.echo(dumps(obj) if state.json else text)


def _print_table(table: Table) -> None:
    Console(soft_wrap=True).print(table)


def _load_rep(m: Optional[int], rep: Optional[str], rep_file: Optional[Path]) -> VirtualRep:
    if rep_file is not None:
        if rep is not None:
            raise InvalidSpecError("give either --rep or --rep-file, not both")
        loaded = canonicalize(read_json(str(rep_file)))
        if m is not None and m != loaded.group.order:
            raise InvalidSpecError(f"--m {m} disagrees with m={loaded.group.order} in {rep_file}")
        return loaded
    if rep is None or m is None:
        raise InvalidSpecError("--m and --rep (or --rep-file) are required")
    return parse_rep(rep, CyclicGroup(m))


# -----------------------------
# Global options
# -----------------------------

@app.callback()
def main(
    ctx: typer.Context,
    json_out: bool = JSON_OPTION,
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Only warnings and errors on stderr"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
    config: Optional[Path] = typer.Option(None, "--config", help="YAML file overriding sweep settings"),
    log_file: Optional[Path] = typer.Option(None, "--log-file", help="Also write logs to this file"),
):
    level = logging.WARNING if quiet else (logging.DEBUG if verbose else logging.INFO)
    with _guard():
        setup_logging(level, str(log_file) if log_file else None)
    state = _state(ctx, json_out)
    state.quiet = quiet
    with _guard():
        state.settings = load_settings(config)


# -----------------------------
# slice_calculus
# -----------------------------

@app.command("nu")
def cmd_nu(
    ctx: typer.Context,
    json_out: bool = JSON_OPTION,
    m: int = typer.Option(..., "--m", help="Group order"),
    n: int = typer.Option(..., "--n", help="Slice level"),
):
    """nu_n(G/C_d) = ceil(n/d) for every divisor d of m."""
    state = _state(ctx, json_out)
    with _guard():
        f = nu(CyclicGroup(m), n)
    text = f.render() + "".join(f"\nadvisory: {a}" for a in f.advisory)
    _emit(state, f.to_json(), text)


@app.command("sphere")
def cmd_sphere(
    ctx: typer.Context,
    json_out: bool = JSON_OPTION,
    n: int = typer.Option(..., "--n", help="Slice level"),
    m: Optional[int] = typer.Option(None, "--m", help="Group order"),
    rep: Optional[str] = typer.Option(None, "--rep", help='Representation, e.g. "2*lambda(1)+rho"'),
    rep_file: Optional[Path] = typer.Option(None, "--rep-file", help="Representation JSON"),
):
    """Is S^V in tau_{>=n}? Exit 1 if not."""
    state = _state(ctx, json_out)
    with _guard():
        v = _load_rep(m, rep, rep_file)
        res = sphere_in_tau(v, n)
    if res.member:
        text = f"in tau_{{>={n}}}"
    else:
        text = f"NOT in tau_{{>={n}}}; witness C{res.witness_divisor}"
    text += "".join(f"\nadvisory: {a}" for a in res.advisory)
    _emit(state, {"rep": v.to_spec(), **res.to_json()}, text)
    if not res.member:
        raise typer.Exit(EXIT_NO)


@app.command("smash")
def cmd_smash(
    ctx: typer.Context,
    json_out: bool = JSON_OPTION,
    n: int = typer.Option(..., "--n", help="Source level"),
    shift: int = typer.Option(..., "--shift", help="Target level is n + shift"),
    m: Optional[int] = typer.Option(None, "--m", help="Group order"),
    rep: Optional[str] = typer.Option(None, "--rep"),
    rep_file: Optional[Path] = typer.Option(None, "--rep-file"),
):
    """Does S^V carry tau_{>=n} into tau_{>=n+shift}, and is that an equivalence?"""
    state = _state(ctx, json_out)
    with _guard():
        v = _load_rep(m, rep, rep_file)
        verdict = smash_verdict(v, n, shift)
    text = verdict.kind.value
    if verdict.witness_divisor is not None:
        text += f" witness C{verdict.witness_divisor}"
    text += "".join(f"\nadvisory: {a}" for a in verdict.advisory)
    _emit(state, verdict.to_json(), text)


@app.command("auto")
def cmd_auto(
    ctx: typer.Context,
    json_out: bool = JSON_OPTION,
    m: Optional[int] = typer.Option(None, "--m", help="Group order"),
    rep: Optional[str] = typer.Option(None, "--rep"),
    rep_file: Optional[Path] = typer.Option(None, "--rep-file"),
):
    """Does S^V preserve every tau_{>=n} (and so commute with slices)? Exit 1 if not."""
    state = _state(ctx, json_out)
    with _guard():
        v = _load_rep(m, rep, rep_file)
        dims = dim_function(v)
        ok = commutes_with_slices(v)
    text = ("auto-equivalence" if ok else "not an auto-equivalence") + f"; dim {dims.render()}"
    _emit(state, {"rep": v.to_spec(), "auto_equivalence": ok, "dimensions": dims.to_json()}, text)
    if not ok:
        raise typer.Exit(EXIT_NO)


@app.command("classes")
def cmd_classes(
    ctx: typer.Context,
    json_out: bool = JSON_OPTION,
    p: int = typer.Option(..., "--p", help="Odd prime"),
    k: int = typer.Option(..., "--k", help="Group is C_{p^k}"),
    horizon: Optional[int] = typer.Option(None, "--horizon", help="Edge scan length, a multiple of p^k"),
):
    """Equivalence classes of the categories tau_{>=n} for C_{p^k}."""
    state = _state(ctx, json_out)
    with _guard():
        if horizon is None:
            require_odd_prime(p)
            if k >= 1:
                horizon = state.settings.horizon_periods * p ** k
        part = equivalence_classes(p, k, horizon)
        if not part.is_consistent():
            raise InvariantViolation(f"{len(part.blocks)} blocks for C_{p}^{k}, expected {part.expected_count}")
    if state.json:
        typer.echo(dumps(part.to_json()))
        return
    table = Table(title=f"C_{p}^{k}: {len(part.blocks)} classes")
    table.add_column("block")
    table.add_column("residues")
    table.add_column("representative")
    for i, block in enumerate(part.blocks):
        reps = [str(r) for r, b in zip(part.representatives, part.rep_blocks) if b == i]
        table.add_row(str(i), " ".join(map(str, block)), ", ".join(reps))
    _print_table(table)
    typer.echo(f"{len(part.blocks)} blocks, representatives {','.join(map(str, sorted(part.representatives)))}")


@app.command("vj")
def cmd_vj(
    ctx: typer.Context,
    json_out: bool = JSON_OPTION,
    p: int = typer.Option(..., "--p"),
    k: int = typer.Option(..., "--k"),
    j: int = typer.Option(..., "--j"),
    n: Optional[int] = typer.Option(None, "--n", help="Also test the congruence condition at n"),
):
    """V_j for C_{p^k}: decomposition, fixed dimensions and, with --n, the shift verdict."""
    state = _state(ctx, json_out)
    with _guard():
        v = v_j(p, k, j)
        dims = dim_function(v)
        out = {"rep": v.to_spec(), "format": v.format(), "dimensions": dims.to_json()}
        lines = [f"V_{j} = {v.format()}", f"dim {dims.render()}"]
        holds = True
        if n is not None:
            holds = vj_condition(p, k, j, n)
            verdict = vj_shift_verdict(p, k, j, n)
            out.update({"n": n, "condition": holds, "shift": verdict.to_json()})
            lines.append(f"condition at n={n}: {'holds' if holds else 'fails'}; tau_{{>={n}}} -> tau_{{>={n + 2 * p ** j}}}: {verdict.kind.value}")
    _emit(state, out, "\n".join(lines))
    if not holds:
        raise typer.Exit(EXIT_NO)


# -----------------------------
# slice_formulas
# -----------------------------

@app.command("slice")
def cmd_slice(
    ctx: typer.Context,
    json_out: bool = JSON_OPTION,
    p: int = typer.Option(..., "--p", help="Odd prime"),
    n: int = typer.Option(..., "--n", help="Slice index"),
    k: int = typer.Option(1, "--k", help="Group is C_{p^k}; only class representatives for k >= 2"),
    mackey: Optional[Path] = typer.Option(None, "--mackey", help="Homotopy Mackey functor JSON to transform"),
):
    """The n-th slice of a C_p-spectrum: suspension degree and Mackey-functor operation."""
    state = _state(ctx, json_out)
    with _guard():
        if k >= 2:
            residue, rep = representative_only(p, k, n)
            out = {"p": p, "k": k, "n": n, "residue": residue, "class_representative": rep}
            text = f"C_{p}^{k}: n = {n} is {residue} mod {p ** k}, class representative {rep}; slice functor not determined"
            _emit(state, out, text)
            return
        if k < 1:
            raise InvalidSpecError(f"k must be a positive integer, got {k}")
        desc = slice_description(p, n)
        dims = desc.dimensions()
        out = {**desc.to_json(), "dimensions": dims.to_json(), "note": LAMBDA_NOTE}
        lines = [desc.render(), f"dimensions {dims.render()}", f"note: {LAMBDA_NOTE}"]
        if mackey is not None:
            result = apply_slice_functor(desc, load_mackey(str(mackey)))
            out["mackey"] = mackey_to_json(result)
            lines.append(result.summary())
    _emit(state, out, "\n".join(lines))


@app.command("schedule")
def cmd_schedule(
    ctx: typer.Context,
    json_out: bool = JSON_OPTION,
    p: int = typer.Option(..., "--p"),
    lo: int = typer.Option(..., "--lo"),
    hi: int = typer.Option(..., "--hi"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write rows as JSONL"),
):
    """Slice descriptions for every n in [lo, hi], with the lambda steps linking n to its class."""
    state = _state(ctx, json_out)
    with _guard():
        rows = slice_schedule(p, lo, hi)
        records = [r.to_json() for r in rows]
        if out is not None:
            out.parent.mkdir(parents=True, exist_ok=True)
            write_jsonl(str(out), records)
            logger.info("wrote %s rows to %s", len(records), out)
    if state.json:
        typer.echo(dumps(records))
        return
    table = Table(title=f"C_{p} slices, n in [{lo}, {hi}]")
    for col in ("n", "case", "functor", "degree", "slice", "class link"):
        table.add_column(col)
    for r in rows:
        d = r.description
        table.add_row(str(d.n), d.index.label, d.functor.value, d.homotopy_degree_label, d.render(), r.link.render())
    _print_table(table)
    typer.echo(f"note: {LAMBDA_NOTE}")


# -----------------------------
# mackey_cp
# -----------------------------

@app.command("mackey")
def cmd_mackey(
    ctx: typer.Context,
    json_out: bool = JSON_OPTION,
    op: str = typer.Option(..., "--op", help="p0, eg or validate", case_sensitive=False),
    in_path: Optional[Path] = typer.Option(None, "--in", help="Mackey functor JSON"),
    builtin: Optional[str] = typer.Option(None, "--builtin", help="burnside or fixed", case_sensitive=False),
    p: Optional[int] = typer.Option(None, "--p", help="Prime for --builtin"),
    out_path: Optional[Path] = typer.Option(None, "--out", help="Write the resulting functor JSON"),
):
    """Validate a C_p Mackey functor or apply P0 / EC_p (x) to it."""
    state = _state(ctx, json_out)
    op = op.lower().strip()
    with _guard():
        if op not in {"p0", "eg", "validate"}:
            raise InvalidSpecError(f"--op must be p0, eg or validate, got {op!r}")
        if (in_path is None) == (builtin is None):
            raise InvalidSpecError("give exactly one of --in or --builtin")
        if builtin is not None:
            if p is None:
                raise InvalidSpecError("--builtin needs --p")
            makers = {"burnside": burnside, "fixed": fixed_point}
            key = builtin.lower().strip()
            if key not in makers:
                raise InvalidSpecError(f"--builtin must be burnside or fixed, got {builtin!r}")
            m = makers[key](p)
        else:
            m = load_mackey(str(in_path))

        if op == "validate":
            violations = validate(m)
            payload = {"valid": not violations, "violations": [v.to_json() for v in violations]}
            text = "valid" if not violations else "\n".join(["invalid"] + [str(v) for v in violations])
            _emit(state, payload, text)
            if violations:
                raise typer.Exit(EXIT_NO)
            return

        result = p_zero(m) if op == "p0" else e_tensor(m)
        doc = mackey_to_json(result)
        if out_path is not None:
            out_path.parent.mkdir(parents=True, exist_ok=True)
            write_json(str(out_path), doc)
            logger.info("wrote %s", out_path)
    _emit(state, doc, result.summary())


# -----------------------------
# verify
# -----------------------------

@app.command("verify")
def cmd_verify(
    ctx: typer.Context,
    json_out: bool = JSON_OPTION,
    suite: str = typer.Option("all", "--suite", help="thm43, cor44, thm45, prop210, rho, prop41, vjdims or all"),
    p: int = typer.Option(3, "--p", help="Odd prime"),
    k: int = typer.Option(1, "--k", help="Exponent of p"),
    bound: Optional[int] = typer.Option(
        None,
        "--range",
        help="Sweep bound: horizon periods (thm43, cor44), max group order (prop210), max |n| (rho)",
    ),
):
    """Run exhaustive invariant sweeps. Exit 0 iff every suite passes."""
    state = _state(ctx, json_out)
    with _guard():
        reports = run_suites(suite, p, k, state.settings, progress=not (state.quiet or state.json), bound=bound)
    passed = all(r.passed for r in reports)
    if state.json:
        typer.echo(dumps({"passed": passed, "suites": [r.to_json() for r in reports]}))
    else:
        lines: List[str] = []
        for r in reports:
            lines.append(f"{r.name}: {r.summary} [{'PASS' if r.passed else 'FAIL'}]")
            lines.extend(f"  {f}" for f in r.failures[:20])
        lines.append("all suites passed" if passed else "some suites FAILED")
        typer.echo("\n".join(lines))
    if not passed:
        raise typer.Exit(EXIT_NO)


if __name__ == "__main__":
    app()
