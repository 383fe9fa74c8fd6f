"""Command-line entry point: ``markov-adiabatic <command> ...``.

Curves are CSV with a frozen header; summaries are ``key: value`` lines.
When ``--out`` is given the CSV goes there (atomically) and the summary to
stdout; without it the CSV goes to stdout and the summary to stderr.

Exit status: 0 success, 1 failed acceptance criterion, 2 usage error,
3 invalid input, 4 cap exceeded, 5 numerical failure.
"""

from __future__ import annotations

import functools
import sys

import click
import numpy as np

from . import io as mio
from .adiabatic_continuous import adiabatic_time_continuous
from .adiabatic_discrete import adiabatic_time
from .chain_core import as_stochastic, is_reversible, stationary_distribution
from .ctmc import as_generator, generator_stationary
from .errors import MarkovError
from .hamiltonian import chain_to_hamiltonian, hamiltonian_to_chain
from .instances import CONSTRUCTIONS, RNG_NAME, RandomChainSpec, generate_chain
from .ising import IsingExperimentConfig, adiabatic_ising_experiment, load_model
from .mixing import mixing_curve, mixing_time, mixing_time_continuous
from .spectral import mixing_time_bounds, reversible_spectrum, spectral_gap

EPS = click.FloatRange(0.0, 1.0, min_open=True, max_open=True)


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return mio.format_number(v)
    if isinstance(v, (list, tuple, np.ndarray)):
        return " ".join(_fmt(x) for x in v)
    return str(v)


def _summary(pairs) -> str:
    return "".join(f"{k}: {_fmt(v)}\n" for k, v in pairs)


def _emit(csv_text: str | None, summary: str, out) -> None:
    if csv_text is None:
        click.echo(summary, nl=False)
    elif out:
        mio.atomic_write(out, csv_text)
        click.echo(summary, nl=False)
    else:
        click.echo(csv_text, nl=False)
        click.echo(summary, nl=False, err=True)


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except MarkovError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(exc.exit_code)
    return wrapper


@click.group()
def main():
    """Mixing times, Hamiltonian/chain conversion and adiabatic times of Markov chains."""


@main.command()
@click.option("--matrix", "matrix_path", required=True, type=click.Path(dir_okay=False), help="Stochastic matrix file.")
@click.option("--eps", type=EPS, default=0.25, show_default=True)
@click.option("--cap", type=click.IntRange(min=1), default=10**6, show_default=True)
@_guard
def analyze(matrix_path, eps, cap):
    """Stationary law, spectrum, gap, mixing time and relaxation bounds of a chain."""
    P = as_stochastic(mio.read_matrix(matrix_path))
    pi = stationary_distribution(P)
    pairs = [("states", P.shape[0]), ("stationary", pi)]
    reversible = is_reversible(P, pi)
    pairs.append(("reversible", reversible))
    t_mix = mixing_time(P, eps, cap=cap, pi=pi)
    if reversible:
        spec = reversible_spectrum(P, pi)
        g = spectral_gap(spec)
        pairs += [("spectrum", spec), ("gap", g.gap), ("relaxation_time", g.relaxation_time)]
    pairs += [("eps", eps), ("t_mix", t_mix)]
    if reversible and eps < 0.5:
        lo, hi = mixing_time_bounds(g, pi, eps)
        pairs += [("t_mix_lower_bound", lo), ("t_mix_upper_bound", hi)]
    _emit(None, _summary(pairs), None)


@main.command()
@click.option("--direction", type=click.Choice(["h2p", "p2h"]), required=True)
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False))
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="Output matrix file.")
@click.option("--pi-out", type=click.Path(dir_okay=False), help="h2p: stationary law file.")
@click.option("--pi", "pi_path", type=click.Path(dir_okay=False), help="p2h: stationary law (computed if omitted).")
@click.option("--lambda0", type=float, default=0.0, show_default=True, help="p2h: ground energy.")
@_guard
def convert(direction, input_path, out, pi_out, pi_path, lambda0):
    """Hamiltonian to reversible chain (h2p) or back (p2h)."""
    M = mio.read_matrix(input_path)
    if direction == "h2p":
        c = hamiltonian_to_chain(M)
        mio.write_matrix(out, c.chain)
        if pi_out:
            mio.atomic_write(pi_out, mio.format_distribution(c.stationary))
        pairs = [("stationary", c.stationary), ("ground_energy", c.ground_energy),
                 ("hamiltonian_gap", c.hamiltonian_gap), ("chain_gap", c.chain_gap),
                 ("gap_relation_applies", c.gap_relation_applies)]
    else:
        P = as_stochastic(M)
        pi = mio.read_distribution(pi_path) if pi_path else stationary_distribution(P)
        H = chain_to_hamiltonian(P, pi, lambda0)
        mio.write_matrix(out, H)
        pairs = [("ground_energy", lambda0)]
    _emit(None, _summary(pairs), None)


@main.command()
@click.option("--matrix", "matrix_path", type=click.Path(dir_okay=False), help="Discrete-time chain.")
@click.option("--generator", "generator_path", type=click.Path(dir_okay=False), help="Continuous-time generator.")
@click.option("--eps", type=EPS, default=0.25, show_default=True)
@click.option("--cap", type=click.IntRange(min=1), default=10**6, show_default=True)
@click.option("--t-cap", type=click.FloatRange(min=0, min_open=True), default=1e3, show_default=True)
@click.option("--resolution", type=click.FloatRange(min=0, min_open=True), default=None,
              help="Continuous grid step [default: t-cap / 1000].")
@click.option("--out", type=click.Path(dir_okay=False), help="CSV of the discrete curve (T,error).")
@_guard
def mix(matrix_path, generator_path, eps, cap, t_cap, resolution, out):
    """Mixing time of a chain or a generator."""
    if (matrix_path is None) == (generator_path is None):
        raise click.UsageError("give exactly one of --matrix or --generator")
    if matrix_path:
        P = as_stochastic(mio.read_matrix(matrix_path))
        pi = stationary_distribution(P)
        t = mixing_time(P, eps, cap=cap, pi=pi)
        curve = mixing_curve(P, t, pi)
        csv_text = mio.curve_csv(np.column_stack([curve.times, curve.distances]))
        _emit(csv_text, _summary([("eps", eps), ("t_mix", t)]), out)
    else:
        Q = as_generator(mio.read_matrix(generator_path))
        t = mixing_time_continuous(Q, eps, t_cap=t_cap, resolution=resolution,
                                   pi=generator_stationary(Q))
        _emit(None, _summary([("eps", eps), ("t_mix", t)]), None)


@main.command("adiabatic-discrete")
@click.option("--initial", required=True, type=click.Path(dir_okay=False))
@click.option("--final", required=True, type=click.Path(dir_okay=False))
@click.option("--eps", type=EPS, required=True)
@click.option("--cap", type=click.IntRange(min=1), default=10_000, show_default=True)
@click.option("--metric", type=click.Choice(["tv", "l2"]), default="tv", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
@_guard
def adiabatic_discrete_cmd(initial, final, eps, cap, metric, out):
    """Discrete adiabatic time by scanning T = 1, 2, ..."""
    rep = adiabatic_time(mio.read_matrix(initial), mio.read_matrix(final), eps, cap=cap, metric=metric)
    d = rep.details
    pairs = [("eps", eps), ("metric", metric), ("measured_T", rep.measured_time), ("K", d["K"]),
             ("t_mix_half", d["t_mix_half"]), ("T_bound", int(rep.theoretical_bound)),
             ("K_approx", d["K_approx"])]
    _emit(mio.curve_csv(rep.error_curve), _summary(pairs), out)


def _continuous_pairs(rep):
    d = rep.details
    return [("eps", rep.epsilon), ("measured_T", rep.measured_time), ("lambda", d["lam"]),
            ("t_mix_half", d["t_mix_half"]), ("T_bound", rep.theoretical_bound),
            ("lambda_simulation", d["lam_sim"])]


@main.command("adiabatic-continuous")
@click.option("--initial", required=True, type=click.Path(dir_okay=False))
@click.option("--final", required=True, type=click.Path(dir_okay=False))
@click.option("--eps", type=EPS, required=True)
@click.option("--t-cap", type=click.FloatRange(min=0, min_open=True), default=1e3, show_default=True)
@click.option("--grid", type=click.FloatRange(min=0, min_open=True), default=1e-2, show_default=True)
@click.option("--steps", type=click.IntRange(min=1), default=None,
              help="Substeps per horizon [default: lambda*h <= 0.1].")
@click.option("--out", type=click.Path(dir_okay=False))
@_guard
def adiabatic_continuous_cmd(initial, final, eps, t_cap, grid, steps, out):
    """Continuous adiabatic time on the grid grid, 2 grid, ..."""
    rep = adiabatic_time_continuous(mio.read_matrix(initial), mio.read_matrix(final), eps,
                                    T_cap=t_cap, grid=grid, steps=steps)
    _emit(mio.curve_csv(rep.error_curve), _summary(_continuous_pairs(rep)), out)


@main.command()
@click.option("--init", "init_path", required=True, type=click.Path(dir_okay=False), help="Initial model file.")
@click.option("--final", "final_path", required=True, type=click.Path(dir_okay=False), help="Final model file.")
@click.option("--eps", type=EPS, required=True)
@click.option("--t-cap", type=click.FloatRange(min=0, min_open=True), default=1e3, show_default=True)
@click.option("--grid", type=click.FloatRange(min=0, min_open=True), default=0.05, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
@_guard
def ising(init_path, final_path, eps, t_cap, grid, out):
    """Adiabatic experiment between the Glauber dynamics of two Ising models."""
    m_i = load_model(init_path)
    m_f = load_model(final_path)
    rep = adiabatic_ising_experiment(m_i, m_f, eps, IsingExperimentConfig(T_cap=t_cap, grid=grid))
    pairs = [("spins", m_i.n), ("states", 2**m_i.n), ("beta_init", m_i.beta), ("beta_final", m_f.beta),
             ("field_init", m_i.h), ("field_final", m_f.h)]
    pairs += _continuous_pairs(rep)
    _emit(mio.curve_csv(rep.error_curve), _summary(pairs), out)


@main.command()
@click.option("--n", "n_states", type=click.IntRange(min=1, max=4096), required=True)
@click.option("--construction", type=click.Choice(CONSTRUCTIONS), default="reversible-random", show_default=True)
@click.option("--seed", type=click.IntRange(min=0, max=2**64 - 1), required=True)
@click.option("--out", type=click.Path(dir_okay=False), help="Matrix file [default: stdout].")
@_guard
def generate(n_states, construction, seed, out):
    """Seeded random chain in the matrix file format."""
    P = generate_chain(RandomChainSpec(n_states, construction, seed))
    text = mio.format_matrix(P)
    summary = _summary([("rng", RNG_NAME), ("seed", seed), ("construction", construction)])
    if out:
        mio.atomic_write(out, text)
        click.echo(summary, nl=False)
    else:
        click.echo(text, nl=False)
        click.echo(summary, nl=False, err=True)


@main.command()
@click.option("--seed", type=click.IntRange(min=0, max=2**64 - 1), default=None,
              help="Base seed for instance generation.")
@click.option("--only", type=click.IntRange(1, 8), multiple=True, help="Run only these criteria.")
@_guard
def suite(seed, only):
    """Run the acceptance battery, one PASS/FAIL line per criterion."""
    from .suite import DEFAULT_SEED, run_suite

    seed = DEFAULT_SEED if seed is None else seed
    click.echo(f"rng: {RNG_NAME} seed: {seed}")
    results = run_suite(seed, set(only) or None)
    for r in results:
        click.echo(r.line())
    if not all(r.passed for r in results):
        sys.exit(1)


if __name__ == "__main__":
    main()
