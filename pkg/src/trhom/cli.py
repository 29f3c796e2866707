"""Command-line runner: ``trhom {hom,whitelight,compare,oracle,selfcheck}``.

Exit codes: 0 ok, 1 invalid configuration, 2 numerical validation failure,
3 I/O failure.
"""
from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import analysis, engine, quantum
from .config import ConfigError, RunConfig, load_config
from .engine import SweepConfig, TermSelection
from .spectral import (
    C_UM_PER_FS,
    DispersionModel,
    FrequencyGrid,
    make_gaussian_spectrum,
    transfer_function,
    unit_transfer,
)
from .whitelight import whitelight_interferogram

EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 1, 2, 3


class ValidationFailure(RuntimeError):
    pass


def fmt(v):
    return format(float(v), ".17g")


def write_csv(path, header, columns):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in zip(*columns):
            w.writerow([fmt(v) for v in row])


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header = rows[0]
    data = np.array([[float(v) for v in r] for r in rows[1:]])
    return {h: data[:, i] for i, h in enumerate(header)}


def write_summary(path, items):
    with open(path, "w") as fh:
        for k, v in items.items():
            fh.write(f"{k} = {fmt(v) if isinstance(v, (float, np.floating)) else v}\n")


def read_summary(path):
    out = {}
    with open(path) as fh:
        for line in fh:
            if "=" in line:
                k, v = line.split("=", 1)
                out[k.strip()] = v.strip()
    return out


PLOT_SCRIPT = '''"""Plot the CSV files written by trhom in this directory (needs matplotlib)."""
import csv
from pathlib import Path

import matplotlib.pyplot as plt

here = Path(__file__).parent


def load(name):
    with open(here / name) as fh:
        rows = list(csv.DictReader(fh))
    return {k: [float(r[k]) for r in rows] for k in rows[0]}


fig, axes = plt.subplots(1, 2, figsize=(10, 4))
if (here / "s_of_x.csv").exists():
    s = load("s_of_x.csv")
    axes[0].plot(s["x_um"], s["S_normalized"], "o", ms=3, label="time-reversed HOM")
if (here / "fringes.csv").exists():
    f = load("fringes.csv")
    base = max(f["intensity"]) / 2 if f["intensity"] else 1.0
    axes[0].plot(f["x_um"], [e / base for e in f["envelope"]], "-", label="white-light envelope")
axes[0].set_xlabel("x (um)")
axes[0].legend()
if (here / "map.csv").exists():
    m = load("map.csv")
    xs = sorted(set(m["x_um"]))
    ts = sorted(set(m["tau_fs"]))
    grid = [[0.0] * len(xs) for _ in ts]
    xi = {x: i for i, x in enumerate(xs)}
    ti = {t: i for i, t in enumerate(ts)}
    for x, t, v in zip(m["x_um"], m["tau_fs"], m["intensity"]):
        grid[ti[t]][xi[x]] = v
    axes[1].imshow(grid, aspect="auto", origin="lower",
                   extent=[xs[0], xs[-1], ts[0] * 0.299792458, ts[-1] * 0.299792458])
    axes[1].set_xlabel("x (um)")
    axes[1].set_ylabel("c tau (um)")
fig.tight_layout()
fig.savefig(here / "plot.png", dpi=150)
'''


def _write_plot_script(out):
    (out / "plot.py").write_text(PLOT_SCRIPT)


def run_hom(cfg: RunConfig, out: Path, workers=1, phi=None, tag=""):
    E = cfg.spectrum()
    H = cfg.transfer(phi)
    imap = engine.interferogram_map(E, H, cfg.sweep, cfg.mode, workers=workers)
    S = engine.integrate_tau(imap)
    m = analysis.dip_metrics(S)
    X, T = np.meshgrid(imap.x_axis, imap.tau_axis, indexing="ij")
    write_csv(out / f"map{tag}.csv", ["x_um", "tau_fs", "intensity"], [X.ravel(), T.ravel(), imap.intensity.ravel()])
    write_csv(out / f"s_of_x{tag}.csv", ["x_um", "S", "S_normalized"], [S.x_axis, S.value, S.value / m.baseline])
    metrics = {"fwhm_um": m.fwhm, "visibility": m.visibility, "center_um": m.center, "baseline": m.baseline}
    write_summary(out / f"metrics{tag}.txt", metrics)
    return S, metrics


def run_whitelight(cfg: RunConfig, out: Path, phi=None, tag=""):
    E = cfg.spectrum()
    H = cfg.transfer(phi)
    fp = whitelight_interferogram(E, H, cfg.whitelight_axis())
    width = analysis.envelope_fwhm(fp)
    write_csv(out / f"fringes{tag}.csv", ["x_um", "intensity", "envelope"], [fp.x_axis, fp.intensity, fp.envelope])
    metrics = {"envelope_fwhm_um": width, "baseline": fp.baseline}
    write_summary(out / f"whitelight_metrics{tag}.txt", metrics)
    return fp, metrics


def run_compare(cfg: RunConfig, out: Path, workers=1):
    E = cfg.spectrum()
    xw = cfg.whitelight_axis()
    phi2 = cfg.compare_phi2
    if phi2 is None:
        phi2 = analysis.phi2_for_broadening(E, cfg.target_broadening, xw, cfg.pulse.omega0, xtol=1e-4)
    # reference arm is undispersed; [dispersion] does not enter the comparison
    phi = (0.0, 0.0, float(phi2))
    extra = engine.group_delay_extent(E, DispersionModel(phi, cfg.pulse.omega0))
    cfg = replace(cfg, sweep=cfg.sweep.widened(extra))
    S0, _ = run_hom(cfg, out, workers, phi=(), tag="_nodisp")
    S1, _ = run_hom(cfg, out, workers, phi=phi, tag="_disp")
    W0, _ = run_whitelight(cfg, out, phi=(), tag="_nodisp")
    W1, _ = run_whitelight(cfg, out, phi=phi, tag="_disp")
    report = {
        "phi2_fs2": float(phi2),
        "width_ratio_nodisp": analysis.width_ratio(S0, W0),
        "width_ratio_disp": analysis.width_ratio(S1, W1),
        "hom_broadening": analysis.broadening_factor(S1, S0),
        "whitelight_broadening": analysis.broadening_factor(W1, W0),
    }
    write_summary(out / "compare.txt", report)
    return report


def run_oracle(cfg: RunConfig, out: Path):
    sigma = cfg.sigma()
    basis = quantum.ModeBasis(cfg.n_modes, cfg.delta_over_sigma * sigma, cfg.pulse.omega0)
    pump = quantum.spdc_state(basis, quantum.gaussian_pair_amplitudes(basis, sigma))
    x = np.linspace(-1, 1, 81) * np.pi * C_UM_PER_FS / (2 * basis.delta)
    t0 = time.perf_counter()
    identity = quantum.random_identity_suite(cfg.n_instances, cfg.n_modes, cfg.seed)
    fwd = quantum.forward_coincidence(quantum.hom_unitary_factory(basis), x, pump, basis)
    _, rev = quantum.reversed_coincidence(quantum.hom_unitary_factory(basis), x, pump, basis)
    even = DispersionModel((0.0, 0.0, 2000.0, 0.0, 1e5), cfg.pulse.omega0)
    _, rev_d = quantum.reversed_coincidence(quantum.hom_unitary_factory(basis, even), x, pump, basis)
    scale = np.dot(rev.value, fwd.value) / np.dot(rev.value, rev.value)
    base = quantum.distinguishable_baseline(pump)
    pearson = np.corrcoef(rev.value, fwd.value)[0, 1]
    max_dev = np.max(np.abs(scale * rev.value - fwd.value)) / base
    even_dev = np.max(np.abs(rev_d.value - rev.value)) / base
    checks = [
        ("reversal_identity", identity, identity < 1e-10),
        ("reversed_vs_forward_pearson", pearson, pearson > 0.999),
        ("reversed_vs_forward_max_dev", max_dev, max_dev < 0.02),
        ("even_dispersion_max_dev", even_dev, even_dev < 1e-8),
    ]
    elapsed = time.perf_counter() - t0
    report = {name: float(v) for name, v, _ in checks}
    report["seconds"] = elapsed
    report["passed"] = str(all(ok for *_, ok in checks)).lower()
    write_summary(out / "oracle.txt", report)
    for name, v, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name} = {fmt(v)}")
    if not all(ok for *_, ok in checks):
        raise ValidationFailure("quantum oracle suite failed")
    return report


def run_selfcheck(cfg: RunConfig, out: Path, workers=1):
    sigma = cfg.sigma()
    w0 = cfg.pulse.omega0
    g = FrequencyGrid.for_pulse(w0, sigma, cfg.n_points, cfg.span_factor)
    E = make_gaussian_spectrum(g, w0, sigma)
    H1 = unit_transfer(g)
    sweep = SweepConfig.for_pulse(sigma, x_steps=101, tau_steps=201)
    S = engine.integrate_tau(engine.interferogram_map(E, H1, sweep, workers=workers))
    x = S.x_axis
    gauss = np.max(np.abs(S.normalized().value - (1 - np.exp(-(sigma * x / C_UM_PER_FS) ** 2 / 2))))

    a = engine.sfg_spectrum(E, H1, 5.0, 20.0, method="fft").samples
    b = engine.sfg_spectrum(E, H1, 5.0, 20.0, method="direct").samples
    fft_direct = np.max(np.abs(a - b)) / np.max(np.abs(b))

    worst = 0.0
    for phi in [(), (0, 0, 1000.0), (0, 30.0, 0, 5e3)]:
        H = transfer_function(DispersionModel(phi, w0), g)
        sw = sweep.widened(engine.group_delay_extent(E, DispersionModel(phi, w0)))
        Ss = engine.integrate_tau(engine.interferogram_map(E, H, sw, workers=workers))
        Sc = engine.closed_form_S(E, H, Ss.x_axis)
        worst = max(worst, np.max(np.abs(Ss.value - Sc.value)) / Ss.baseline())
    checks = [
        ("gaussian_closed_form", gauss, gauss < 5e-3),
        ("fft_vs_direct", fft_direct, fft_direct < 1e-9),
        ("two_path_agreement", worst, worst < 5e-3),
    ]
    report = {name: float(v) for name, v, _ in checks}
    report["passed"] = str(all(ok for *_, ok in checks)).lower()
    write_summary(out / "selfcheck.txt", report)
    for name, v, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name} = {fmt(v)}")
    if not all(ok for *_, ok in checks):
        raise ValidationFailure("selfcheck failed")
    return report


def build_parser():
    p = argparse.ArgumentParser(prog="trhom", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=["hom", "whitelight", "compare", "oracle", "selfcheck"])
    p.add_argument("--config", type=Path, help="INI run configuration")
    p.add_argument("--out", type=Path, help="output directory (overrides run.output)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--preset", choices=["paper"], help="load built-in parameters before the config file")
    p.add_argument("--seed", type=int)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.preset, args.seed)
    except ConfigError as exc:
        print(f"trhom: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"trhom: cannot read configuration: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.workers < 1:
        print("trhom: invalid configuration: --workers must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    out = args.out if args.out is not None else Path(cfg.output)
    try:
        out.mkdir(parents=True, exist_ok=True)
        if args.command == "hom":
            S, m = run_hom(cfg, out, args.workers)
            if "whitelight" in cfg.engines:
                fp, wm = run_whitelight(cfg, out)
                m["whitelight_envelope_fwhm_um"] = wm["envelope_fwhm_um"]
                m["width_ratio"] = analysis.width_ratio(S, fp)
                write_summary(out / "metrics.txt", m)
            _write_plot_script(out)
        elif args.command == "whitelight":
            _, m = run_whitelight(cfg, out)
            _write_plot_script(out)
        elif args.command == "compare":
            m = run_compare(cfg, out, args.workers)
        elif args.command == "oracle":
            m = run_oracle(cfg, out)
        else:
            m = run_selfcheck(cfg, out, args.workers)
    except (ValidationFailure, analysis.AnalysisError) as exc:
        print(f"trhom: numerical validation failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"trhom: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"trhom: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.command in ("hom", "whitelight", "compare"):
        for k, v in m.items():
            print(f"{k} = {fmt(v)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
