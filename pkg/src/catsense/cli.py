"""Command-line front end.

Settings resolve in three layers: explicit flags beat config-file keys beat
built-in defaults.  The config file is flat ``key = value`` text, keys named
exactly like the long flags without the leading dashes, ``#`` comments and
blank lines ignored.

Exit codes: 0 success, 1 bad usage or bad domain input, 2 I/O failure,
3 oracle capacity or tolerance failure.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence, TypeVar

import click
import numpy as np

from . import bounds, coherent, estimation, fock, svgplot
from .errors import (
    CapacityError,
    CatsenseError,
    StepTooSmallError,
    ToleranceFailure,
    TruncationError,
)

T = TypeVar("T")


def _sig17(x: float) -> str:
    return format(float(x), ".17g")


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _sig17(v)
    return str(v)


def write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    """CSV with 17-significant-digit floats and LF line endings."""
    lines = [",".join(header)]
    lines.extend(",".join(_csv_cell(v) for v in row) for row in rows)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


@dataclass(frozen=True)
class RunConfig:
    """Key/value settings parsed from a config file (empty when none given)."""

    values: Mapping[str, str] = field(default_factory=dict)

    @classmethod
    def from_file(cls, path: str | None) -> "RunConfig":
        if path is None:
            return cls({})
        parsed: dict[str, str] = {}
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                key, eq, value = line.partition("=")
                if not eq or not key.strip():
                    raise click.UsageError(f"{path}:{lineno}: expected 'key = value'")
                parsed[key.strip()] = value.strip()
        return cls(parsed)

    def resolve(self, key: str, flag: T | None, default: T, cast: Callable[[str], T]) -> T:
        if flag is not None:
            return flag
        if key in self.values:
            raw = self.values[key]
            try:
                return cast(raw)
            except (TypeError, ValueError) as exc:
                raise click.UsageError(f"config key '{key}': cannot parse {raw!r}") from exc
        return default


def _parse_int_list(raw: str) -> tuple[int, ...]:
    try:
        items = tuple(int(tok.strip()) for tok in raw.split(",") if tok.strip())
    except ValueError as exc:
        raise click.UsageError(f"cannot parse integer list {raw!r}") from exc
    if not items:
        raise click.UsageError(f"empty integer list {raw!r}")
    return items


def _parse_float_list(raw: str) -> tuple[float, ...]:
    try:
        items = tuple(float(tok.strip()) for tok in raw.split(",") if tok.strip())
    except ValueError as exc:
        raise click.UsageError(f"cannot parse number list {raw!r}") from exc
    if not items:
        raise click.UsageError(f"empty number list {raw!r}")
    return items


def _make_grid(ntot_min: float, ntot_max: float, points: int, spacing: str) -> np.ndarray:
    if points < 2:
        raise click.UsageError(f"points must be >= 2, got {points}")
    if not ntot_min < ntot_max:
        raise click.UsageError(f"need ntot-min < ntot-max, got {ntot_min} >= {ntot_max}")
    if spacing == "log":
        if ntot_min <= 0.0:
            raise click.UsageError("log spacing needs ntot-min > 0")
        return np.geomspace(ntot_min, ntot_max, points)
    if spacing == "linear":
        return np.linspace(ntot_min, ntot_max, points)
    raise click.UsageError(f"spacing must be 'log' or 'linear', got {spacing!r}")


# ---------------------------------------------------------------- figure1

def run_figure1(
    n_modes: int,
    ntot_min: float,
    ntot_max: float,
    points: int,
    spacing: str,
    out: str,
    svg: str | None = None,
) -> list[list]:
    """Sweep the photon budget and tabulate the three cat-probe bounds."""
    if n_modes < 1:
        raise click.UsageError(f"modes must be >= 1, got {n_modes}")
    grid = _make_grid(ntot_min, ntot_max, points, spacing)
    rows: list[list] = []
    for n in grid:
        alpha = bounds.invert_ntot(float(n), n_modes)
        ent = bounds.eps_min_entangled_cat(alpha, n_modes)
        rows.append(
            [
                float(n),
                ent.eps_min,
                bounds.eps_min_separable_cats(float(n), n_modes),
                bounds.eps_min_single_cat(float(n)),
                alpha,
            ]
        )
    write_csv(
        out,
        ["n_tot", "eps_entangled", "eps_separable", "eps_single_cat", "alpha_entangled"],
        rows,
    )
    if svg is not None:
        xs = [r[0] for r in rows]
        curves = [
            svgplot.Curve(f"entangled cat, {n_modes} modes", xs, [r[1] for r in rows], "solid"),
            svgplot.Curve(f"{n_modes} separable cats", xs, [r[2] for r in rows], "dotted"),
            svgplot.Curve("single-mode cat", xs, [r[3] for r in rows], "dashed"),
        ]
        svgplot.write_line_plot(
            svg,
            curves,
            title="Minimum detectable displacement vs photon budget",
            xlabel="total mean photon number",
            ylabel="eps_min",
            log_x=(spacing == "log"),
            log_y=True,
        )
    return rows


# ---------------------------------------------------------------- bounds

_FAMILY_CHOICES = tuple(k.value for k in bounds.FamilyKind)


def run_bounds(
    family: str,
    n_modes: int,
    ntot_min: float,
    ntot_max: float,
    points: int,
    spacing: str,
    out: str,
) -> list[list]:
    """Tabulate one bound family on a photon-number grid."""
    try:
        kind = bounds.FamilyKind(family)
    except ValueError as exc:
        raise click.UsageError(f"unknown family {family!r}, pick from {_FAMILY_CHOICES}") from exc
    try:
        fam = bounds.ProbeFamily(kind, n_modes if kind in (
            bounds.FamilyKind.SEPARABLE_CATS, bounds.FamilyKind.ENTANGLED_CAT) else 1)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    grid = _make_grid(ntot_min, ntot_max, points, spacing)
    results = bounds.curve(fam, grid)
    rows = [
        [fam.kind.value, fam.n_modes, r.n_tot, r.alpha, r.eps_min, r.qfi] for r in results
    ]
    write_csv(out, ["family", "n_modes", "n_tot", "alpha", "eps_min", "qfi"], rows)
    return rows


# ---------------------------------------------------------------- qfi-check

def run_qfi_check(
    modes_list: Sequence[int],
    alpha_list: Sequence[float],
    tol_pure: float,
    tol_fd: float,
    fd_step: float,
    out: str,
) -> tuple[list[list], float, float]:
    """Cross-check the closed-form cat QFI against the Fock oracle.

    Closed form: 4 Var(G) = 4 N (1 + 4 N a^2 / (1 + e^{-2 N a^2})).  The
    oracle computes the same number twice, from the generator variance of
    the truncated state and from the fidelity curvature under the actual
    displacement family.
    """
    rows: list[list] = []
    worst_pure = 0.0
    worst_fd = 0.0
    for n_modes in modes_list:
        if not 1 <= n_modes <= fock.MAX_MODES:
            raise CapacityError(f"modes {n_modes} outside oracle range 1..{fock.MAX_MODES}")
        for alpha in alpha_list:
            closed = 4.0 * bounds.entangled_cat_generator_variance(alpha, n_modes)
            cat = coherent.make_entangled_cat(alpha, n_modes)
            state = fock.to_fock(cat)
            gen = fock.collective_quad_x(state.dim, n_modes)
            oracle = fock.qfi_pure(state, gen)

            def displaced(eps: float, base=state, k=n_modes) -> fock.FockVector:
                return fock.displace_fock(base, [1j * eps] * k)

            fd = fock.qfi_fidelity_fd(displaced, 0.0, fd_step)
            rel_pure = abs(oracle - closed) / closed
            rel_fd = abs(fd - closed) / closed
            worst_pure = max(worst_pure, rel_pure)
            worst_fd = max(worst_fd, rel_fd)
            rows.append(
                [n_modes, float(alpha), state.dim, closed, oracle, fd, rel_pure, rel_fd]
            )
    write_csv(
        out,
        ["modes", "alpha", "dim", "qfi_closed_form", "qfi_oracle", "qfi_fd",
         "rel_err_oracle", "rel_err_fd"],
        rows,
    )
    if worst_pure >= tol_pure or worst_fd >= tol_fd:
        raise ToleranceFailure(
            f"qfi-check failed: worst oracle rel err {worst_pure:.3e} (tol {tol_pure:g}), "
            f"worst fd rel err {worst_fd:.3e} (tol {tol_fd:g})"
        )
    return rows, worst_pure, worst_fd


# ---------------------------------------------------------------- ramsey

def run_ramsey(
    qubit_list: Sequence[int],
    shots: int,
    replicates: int,
    seed: int,
    out: str,
) -> list[list]:
    """Simulate product vs GHZ fringe readout over a range of register sizes.

    Both schemes get the same qubit budget: `shots` GHZ repetitions consume
    shots * N qubits, so the product rows run shots * N single-qubit
    repetitions.  Under that accounting the predicted standard error
    1/sqrt(FI * repetitions) falls like N^-1/2 for product and N^-1 for
    GHZ.  Per row: per-repetition Fisher information, that prediction, and
    the spread of theta_hat over independent replicates.  Working point
    theta = pi / (8 N) keeps every fringe away from its extrema.
    """
    if shots < 1:
        raise click.UsageError(f"shots must be >= 1, got {shots}")
    if replicates < 2:
        raise click.UsageError(f"replicates must be >= 2, got {replicates}")
    root = np.random.SeedSequence(seed)
    rows: list[list] = []
    for n_qubits in qubit_list:
        if n_qubits < 1:
            raise click.UsageError(f"qubit count must be >= 1, got {n_qubits}")
        theta = math.pi / (8.0 * n_qubits)
        for scheme in (estimation.Scheme.PRODUCT, estimation.Scheme.GHZ):
            model = estimation.RamseyModel(scheme, n_qubits, theta)
            info = estimation.ramsey_fisher(model)
            reps = shots * n_qubits if scheme is estimation.Scheme.PRODUCT else shots
            child_seeds = [
                int(child.generate_state(1, np.uint64)[0])
                for child in root.spawn(replicates)
            ]
            estimates = [
                estimation.ramsey_simulate(model, reps, s) for s in child_seeds
            ]
            theta_hats = np.array([e.theta_hat for e in estimates])
            rows.append(
                [
                    n_qubits,
                    scheme.value,
                    info,
                    1.0 / math.sqrt(info * reps),
                    float(np.std(theta_hats, ddof=1)),
                ]
            )
    write_csv(out, ["N", "scheme", "FI", "delta_theta", "empirical_stderr"], rows)
    return rows


# ---------------------------------------------------------------- montecarlo

def run_montecarlo(
    probe_name: str,
    r: float,
    eps: float,
    shots: int,
    seed: int,
    out: str,
) -> list[list]:
    """One homodyne Monte Carlo run: sample, estimate, report the pull."""
    if probe_name == "coherent":
        probe: estimation.Probe = estimation.CoherentProbe()
    elif probe_name == "squeezed":
        try:
            probe = estimation.SqueezedProbe(r)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
    else:
        raise click.UsageError(f"probe must be 'coherent' or 'squeezed', got {probe_name!r}")
    try:
        experiment = estimation.HomodyneExperiment(probe, eps, shots, seed)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    samples = estimation.sample_homodyne(experiment)
    eps_hat, stderr = estimation.estimate_eps(samples, probe)
    pull = (eps_hat - eps) / stderr
    rows = [[probe_name, eps, shots, seed, probe.y_variance, eps_hat, stderr, pull]]
    write_csv(
        out,
        ["probe", "true_eps", "shots", "seed", "y_variance", "eps_hat", "stderr", "pull"],
        rows,
    )
    return rows


# ---------------------------------------------------------------- click wiring

@click.group(name="catsense")
def cli() -> None:
    """Displacement-sensing bounds, oracle cross-checks and toy experiments."""


_config_opt = click.option(
    "--config", "config_path", type=str, default=None,
    help="flat key=value settings file; flags given here win over it",
)


@cli.command("figure1")
@click.option("--modes", type=int, default=None, help="mode count of the entangled cat [10]")
@click.option("--ntot-min", type=float, default=None, help="grid start [0.1]")
@click.option("--ntot-max", type=float, default=None, help="grid end [100]")
@click.option("--points", type=int, default=None, help="grid size [200]")
@click.option("--spacing", type=str, default=None, help="log or linear [log]")
@click.option("--out", type=str, default=None, help="CSV path [figure1.csv]")
@click.option("--svg", type=str, default=None, help="also render an SVG plot here")
@_config_opt
def figure1_cmd(modes, ntot_min, ntot_max, points, spacing, out, svg, config_path):
    """Compare entangled, separable and single-cat bounds over a photon sweep."""
    cfg = RunConfig.from_file(config_path)
    rows = run_figure1(
        n_modes=cfg.resolve("modes", modes, 10, int),
        ntot_min=cfg.resolve("ntot-min", ntot_min, 0.1, float),
        ntot_max=cfg.resolve("ntot-max", ntot_max, 100.0, float),
        points=cfg.resolve("points", points, 200, int),
        spacing=cfg.resolve("spacing", spacing, "log", str),
        out=cfg.resolve("out", out, "figure1.csv", str),
        svg=cfg.resolve("svg", svg, None, str),
    )
    click.echo(f"figure1: wrote {len(rows)} rows")


@cli.command("bounds")
@click.option("--family", type=str, default=None,
              help="one of " + ", ".join(_FAMILY_CHOICES) + " [entangled-cat]")
@click.option("--modes", type=int, default=None, help="copies/modes for the cat arrays [10]")
@click.option("--ntot-min", type=float, default=None, help="grid start [0.1]")
@click.option("--ntot-max", type=float, default=None, help="grid end [100]")
@click.option("--points", type=int, default=None, help="grid size [50]")
@click.option("--spacing", type=str, default=None, help="log or linear [log]")
@click.option("--out", type=str, default=None, help="CSV path [bounds.csv]")
@_config_opt
def bounds_cmd(family, modes, ntot_min, ntot_max, points, spacing, out, config_path):
    """Tabulate a single bound family."""
    cfg = RunConfig.from_file(config_path)
    rows = run_bounds(
        family=cfg.resolve("family", family, "entangled-cat", str),
        n_modes=cfg.resolve("modes", modes, 10, int),
        ntot_min=cfg.resolve("ntot-min", ntot_min, 0.1, float),
        ntot_max=cfg.resolve("ntot-max", ntot_max, 100.0, float),
        points=cfg.resolve("points", points, 50, int),
        spacing=cfg.resolve("spacing", spacing, "log", str),
        out=cfg.resolve("out", out, "bounds.csv", str),
    )
    click.echo(f"bounds: wrote {len(rows)} rows")


@cli.command("qfi-check")
@click.option("--modes-list", type=str, default=None, help="comma list of mode counts [1,2,3]")
@click.option("--alpha-list", type=str, default=None,
              help="comma list of cat amplitudes [0.25,0.5,1,2]")
@click.option("--tol-pure", type=float, default=None, help="oracle rel-err gate [1e-6]")
@click.option("--tol-fd", type=float, default=None, help="finite-difference rel-err gate [1e-3]")
@click.option("--fd-step", type=float, default=None, help="fidelity FD base step [1e-3]")
@click.option("--out", type=str, default=None, help="CSV path [qfi_check.csv]")
@_config_opt
def qfi_check_cmd(modes_list, alpha_list, tol_pure, tol_fd, fd_step, out, config_path):
    """Verify closed-form cat QFI against the truncated-basis oracle."""
    cfg = RunConfig.from_file(config_path)
    rows, worst_pure, worst_fd = run_qfi_check(
        modes_list=cfg.resolve("modes-list", _parse_int_list(modes_list) if modes_list else None,
                               (1, 2, 3), _parse_int_list),
        alpha_list=cfg.resolve("alpha-list", _parse_float_list(alpha_list) if alpha_list else None,
                               (0.25, 0.5, 1.0, 2.0), _parse_float_list),
        tol_pure=cfg.resolve("tol-pure", tol_pure, 1e-6, float),
        tol_fd=cfg.resolve("tol-fd", tol_fd, 1e-3, float),
        fd_step=cfg.resolve("fd-step", fd_step, 1e-3, float),
        out=cfg.resolve("out", out, "qfi_check.csv", str),
    )
    click.echo(
        f"qfi-check: {len(rows)} cases, worst oracle rel err {worst_pure:.3e}, "
        f"worst fd rel err {worst_fd:.3e}"
    )


@cli.command("ramsey")
@click.option("--qubit-list", type=str, default=None, help="register sizes [1,2,4,8,16]")
@click.option("--shots", type=int, default=None,
              help="GHZ repetitions per replicate; product rows use shots*N [100000]")
@click.option("--replicates", type=int, default=None, help="independent repeats [32]")
@click.option("--seed", type=int, default=None, help="master seed [42]")
@click.option("--out", type=str, default=None, help="CSV path [ramsey.csv]")
@_config_opt
def ramsey_cmd(qubit_list, shots, replicates, seed, out, config_path):
    """Product vs GHZ Ramsey readout across register sizes."""
    cfg = RunConfig.from_file(config_path)
    rows = run_ramsey(
        qubit_list=cfg.resolve("qubit-list", _parse_int_list(qubit_list) if qubit_list else None,
                               (1, 2, 4, 8, 16), _parse_int_list),
        shots=cfg.resolve("shots", shots, 100_000, int),
        replicates=cfg.resolve("replicates", replicates, 32, int),
        seed=cfg.resolve("seed", seed, 42, int),
        out=cfg.resolve("out", out, "ramsey.csv", str),
    )
    click.echo(f"ramsey: wrote {len(rows)} rows")


@cli.command("montecarlo")
@click.option("--probe", type=str, default=None, help="coherent or squeezed [coherent]")
@click.option("--r", type=float, default=None, help="squeezing parameter [1.0]")
@click.option("--eps", type=float, default=None, help="true displacement [0.1]")
@click.option("--shots", type=int, default=None, help="homodyne shots [100000]")
@click.option("--seed", type=int, default=None, help="rng seed [7]")
@click.option("--out", type=str, default=None, help="CSV path [montecarlo.csv]")
@_config_opt
def montecarlo_cmd(probe, r, eps, shots, seed, out, config_path):
    """Sample a homodyne record and recover the displacement."""
    cfg = RunConfig.from_file(config_path)
    rows = run_montecarlo(
        probe_name=cfg.resolve("probe", probe, "coherent", str),
        r=cfg.resolve("r", r, 1.0, float),
        eps=cfg.resolve("eps", eps, 0.1, float),
        shots=cfg.resolve("shots", shots, 100_000, int),
        seed=cfg.resolve("seed", seed, 7, int),
        out=cfg.resolve("out", out, "montecarlo.csv", str),
    )
    click.echo(
        f"montecarlo: eps_hat {_sig17(rows[0][5])}, stderr {_sig17(rows[0][6])}"
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and map failures onto the documented exit codes."""
    try:
        cli.main(args=list(argv) if argv is not None else None,
                 prog_name="catsense", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.FileError as exc:
        click.echo(f"io error: {exc.format_message()}", err=True)
        return 2
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 1
    except click.Abort:
        return 1
    except OSError as exc:
        click.echo(f"io error: {exc}", err=True)
        return 2
    except (CapacityError, ToleranceFailure, TruncationError, StepTooSmallError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 3
    except (CatsenseError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
