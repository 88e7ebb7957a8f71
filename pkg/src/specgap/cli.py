"""Scenario-driven command line: ``specgap run|full-verify|bands|kappa``.

Scenarios are declarative TOML files (see scenarios/ in the repository and
the README for the schema).  Every run is deterministic given the config
and seed: artifacts (JSON certificates, CSV tables, SVG plots) are written
with stable formatting and no timestamps, so re-runs are byte-identical.

Exit codes: 0 when every assertion passed; 2 when a verifier rejected its
preconditions (no claim made); 1 on assertion failure, malformed config, or
internal error.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from . import bands as bands_mod
from . import lifting as lifting_mod
from .errors import ConfigError, SpecgapError
from .gaps import perturbed_minimax, automorphism_check
from .linalg import SymmetricMatrix, eigendecompose
from .report import write_csv, write_json, write_svg_chart
from .schrodinger import AdmissibleDomain, Grid, PotentialField, build_hamiltonian, sample_equidistributed
from .verify import PROFILES, full_verify
from .verify import random_gapped, random_symmetric_with_norm

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_PRECONDITION = 2

KINDS = ("spectrum", "ucp", "lift", "gap-minimax", "band-edge", "full-verify")


def _require(cfg: dict, key: str, where: str):
    if key not in cfg:
        raise ConfigError(f"missing required field '{key}' in [{where}]")
    return cfg[key]


def _out_path(out_dir: str, name: str) -> str:
    return os.path.join(out_dir, name)


def _build_geometry(cfg: dict):
    geo = _require(cfg, "geometry", "scenario")
    extent = _require(geo, "extent", "geometry")
    dom = AdmissibleDomain.box(extent, cell_scale=float(geo.get("cell_scale", 1.0)))
    grid_cfg = cfg.get("grid", {})
    grid = Grid(dom, int(grid_cfg.get("resolution", 32)), grid_cfg.get("boundary", "dirichlet"))
    return dom, grid


def _build_potential(block: dict, grid: Grid, default_seed: int) -> PotentialField:
    gen = block.get("generator", "constant")
    if gen == "constant":
        return PotentialField.constant(grid, float(block.get("value", 0.0)))
    if gen == "cosine":
        return PotentialField.cosine(
            grid, amplitude=float(block.get("amplitude", 1.0)),
            period=block.get("period"),
        )
    if gen == "cell-random":
        return PotentialField.cell_random(
            grid, amplitude=float(block.get("amplitude", 1.0)),
            seed=int(block.get("seed", default_seed)),
        )
    if gen == "csv":
        return PotentialField.from_csv(grid, _require(block, "path", "potential"))
    raise ConfigError(f"unknown potential generator {gen!r}")


def _scenario_spectrum(cfg: dict, seed: int, out_dir: str) -> int:
    dom, grid = _build_geometry(cfg)
    v = _build_potential(cfg.get("potential", {}), grid, seed)
    ham = build_hamiltonian(dom, grid, v)
    dec = eigendecompose(ham)
    res = dec.residual() / max(dec.norm, 1e-300)
    orth = dec.orthonormality_defect()
    passed = res <= 1e-10 and orth <= 1e-10
    out = cfg.get("output", {})
    rows = [f"{k},{float(w)!r}" for k, w in enumerate(dec.eigenvalues)]
    write_csv(_out_path(out_dir, out.get("table", "spectrum.csv")), "index,eigenvalue", rows)
    write_json(_out_path(out_dir, out.get("certificate", "spectrum.json")), {
        "kind": "spectrum", "size": dec.n, "residual": res, "orthonormality": orth,
        "pass": passed,
    })
    return EXIT_PASS if passed else EXIT_FAIL


def _scenario_ucp(cfg: dict, seed: int, out_dir: str) -> int:
    dom, grid = _build_geometry(cfg)
    geo = cfg["geometry"]
    delta = float(_require(geo, "delta", "geometry"))
    params = cfg.get("parameters", {})
    v = _build_potential(cfg.get("potential", {}), grid, seed)
    ham = build_hamiltonian(dom, grid, v)
    dec = eigendecompose(ham)
    s = sample_equidistributed(dom, grid, delta, seed=int(geo.get("seed", seed)))
    rep = lifting_mod.ucp_verify(
        dec, s, v,
        energy=float(params.get("energy", 50.0)),
        exponent_n=float(params.get("exponent_n", 10.0)),
    )
    out = cfg.get("output", {})
    rows = [
        f"{k},{float(e)!r},{float(r)!r},{float(npr)!r}"
        for k, (e, r, npr) in enumerate(zip(rep.energies, rep.ratios, rep.n_prime_samples))
    ]
    write_csv(_out_path(out_dir, out.get("table", "ucp-ratios.csv")),
              "index,energy,mass_ratio,critical_n", rows)
    write_json(_out_path(out_dir, out.get("certificate", "ucp-cert.json")),
               {"kind": "ucp", **rep.to_json_dict()})

    ghost_ok = True
    if params.get("ghost_check", False):
        from .ghost import extend, sandwich_check

        tau = float(params.get("tau", 0.25))
        count = min(int(params.get("ghost_states", 5)), rep.used_modes)
        g_rows = []
        for k in range(count):
            ext = extend(dec.eigenvectors[:, k], dec, t_max=2.0 * tau, m=129)
            srep = sandwich_check(ext, ham, tau=tau, potential=v.values,
                                  weight=grid.quadrature_weight)
            ghost_ok = ghost_ok and srep.passed
            g_rows.append(
                f"{k},{srep.tau!r},{srep.lower!r},{srep.value!r},{srep.upper!r},"
                f"{'pass' if srep.passed else 'fail'}"
            )
        write_csv(_out_path(out_dir, out.get("ghost_table", "ucp-sandwich.csv")),
                  "index,tau,lower,value,upper,pass", g_rows)
    return EXIT_PASS if rep.passed and ghost_ok else EXIT_FAIL


def _scenario_lift(cfg: dict, seed: int, out_dir: str) -> int:
    dom, grid = _build_geometry(cfg)
    geo = cfg["geometry"]
    params = cfg.get("parameters", {})
    sub = params.get("kind", "bottom")
    v = _build_potential(cfg.get("potential", {}), grid, seed)
    ham = build_hamiltonian(dom, grid, v)

    pert = cfg.get("perturbation", {})
    theta = float(pert.get("theta", 1.0))
    if pert.get("generator", "indicator") == "indicator":
        delta = float(_require(geo, "delta", "geometry"))
        s = sample_equidistributed(dom, grid, delta, seed=int(geo.get("seed", seed)))
        w_values = np.where(s.mask, theta, 0.0)
    else:
        w_values = _build_potential(pert, grid, seed).values
        delta = float(geo.get("delta", 0.25 * dom.cell_scale))
        s = None
    w_op = SymmetricMatrix.from_diagonal(w_values)

    energy = float(params.get("energy", 50.0))
    exponent_n = float(params.get("exponent_n", 10.0))
    if sub == "bottom":
        const = lifting_mod.kappa(
            dimension=dom.dimension, cell_scale=dom.cell_scale, delta=delta,
            theta=theta, v_min=v.min_value, v_max=v.max_value,
            w_sup=float(np.max(np.abs(w_values))), energy=energy, exponent_n=exponent_n,
        )
        cert = lifting_mod.verify_bottom_lifting(ham, w_op, energy, const.value)
    elif sub in ("gap-left", "gap-right"):
        gamma = float(_require(params, "gamma", "parameters"))
        const = lifting_mod.kappa(
            dimension=dom.dimension, cell_scale=dom.cell_scale, delta=delta,
            theta=theta, v_min=v.min_value, v_max=v.max_value,
            w_sup=float(np.max(np.abs(w_values))),
            energy=gamma if sub == "gap-left" else energy,
            exponent_n=exponent_n,
        )
        variant = params.get("variant", "norm")
        if sub == "gap-left":
            cert = lifting_mod.verify_gap_lifting_left(ham, w_op, gamma, const.value, variant=variant)
        else:
            cert = lifting_mod.verify_gap_lifting_right(ham, w_op, gamma, const.value, energy, variant=variant)
    else:
        raise ConfigError(f"unknown lift kind {sub!r}; use bottom, gap-left or gap-right")

    out = cfg.get("output", {})
    write_json(_out_path(out_dir, out.get("certificate", "lift-cert.json")),
               {"kind": "lift", "sub": sub, "constant": const.to_json_dict(), **cert.to_json_dict()})
    write_csv(_out_path(out_dir, out.get("table", "lift-cert.csv")),
              "tag,kappa,min_margin,pass", [cert.csv_row()])
    if cert.precondition_failed:
        return EXIT_PRECONDITION
    return EXIT_PASS if cert.passed else EXIT_FAIL


def _scenario_gap_minimax(cfg: dict, seed: int, out_dir: str) -> int:
    params = cfg.get("parameters", {})
    n = int(params.get("size", 40))
    gap_width = float(params.get("gap_width", 2.0))
    b_factor = float(params.get("b_norm_factor", 0.4))
    indices = [int(i) for i in params.get("indices", [1, 2, 3])]
    rng = np.random.default_rng(seed)
    a = random_gapped(rng, n, gamma=0.0, gap_width=gap_width)
    b = random_symmetric_with_norm(rng, n, b_factor * gap_width)
    reports = [perturbed_minimax(a, b, 0.0, k, seed=seed) for k in indices]
    auto = automorphism_check(a, b, 0.0)
    passed = all(r.passed for r in reports) and auto.passed
    out = cfg.get("output", {})
    write_json(_out_path(out_dir, out.get("certificate", "gap-minimax.json")), {
        "kind": "gap-minimax", "size": n, "gap_width": gap_width,
        "minimax": [r.to_json_dict() for r in reports],
        "automorphism": auto.to_json_dict(),
        "pass": passed,
    })
    return EXIT_PASS if passed else EXIT_FAIL


def _scenario_band_edge(cfg: dict, seed: int, out_dir: str) -> int:
    dom, grid = _build_geometry(cfg)
    geo = cfg["geometry"]
    params = cfg.get("parameters", {})
    v = _build_potential(cfg.get("potential", {}), grid, seed)
    n_modes = int(params.get("modes", 24))
    theta_count = int(params.get("theta_count", 64))
    bf = bands_mod.compute_bands(v, n_modes=n_modes,
                                 theta_count=max(16, theta_count), n_bands=int(params.get("n_bands", 6)))
    gaps = bf.gaps(min_width=float(params.get("min_gap_width", 1e-3)))
    if not gaps:
        raise ConfigError("the potential has no open gap wide enough to trace")
    gap = gaps[int(params.get("gap_index", 0))]

    pert = cfg.get("perturbation", {})
    theta = float(pert.get("theta", 1.0))
    delta = float(_require(geo, "delta", "geometry"))
    s = sample_equidistributed(dom, grid, delta, seed=int(geo.get("seed", seed)))
    w_field = PotentialField(grid, np.where(s.mask, theta, 0.0))

    t_points = int(params.get("t_points", 20))
    t_window = (gap[1] - gap[0]) / theta
    t_grid = np.linspace(0.0, 0.95 * t_window, t_points)
    trace = bands_mod.trace_edges(
        v, w_field, s, gap, t_grid,
        exponent_n=float(params.get("exponent_n", 10.0)),
        n_modes=n_modes, theta_count=theta_count,
    )
    out = cfg.get("output", {})
    rows = trace.csv_rows()
    write_csv(_out_path(out_dir, out.get("table", "edge-trace.csv")), rows[0], rows[1:])
    if "svg" in out:
        write_svg_chart(
            _out_path(out_dir, out["svg"]),
            [("lower edge", trace.t_values, trace.f_minus),
             ("upper edge", trace.t_values, trace.f_plus)],
            title="gap edges under coupling", x_label="coupling t", y_label="energy",
        )
    write_json(_out_path(out_dir, out.get("certificate", "edge-trace.json")), {
        "kind": "band-edge", "gap": list(trace.gap), "kappa": trace.kappa_value,
        "w_sup": trace.w_sup, "theta_eff": trace.theta_eff,
        "t_window": trace.t_window,
        "truncated_at": trace.truncated_at,
        "pass": trace.passed,
    })
    return EXIT_PASS if trace.passed else EXIT_FAIL


def _scenario_full_verify(cfg: dict, seed: int, out_dir: str, jobs: int = 1, kappa_scale: float = 1.0) -> int:
    params = cfg.get("parameters", {})
    profile = params.get("profile", "smoke")
    rep = full_verify(seed=seed, profile=profile, jobs=jobs, kappa_scale=kappa_scale)
    out = cfg.get("output", {})
    write_json(_out_path(out_dir, out.get("certificate", "full-verify.json")), rep)
    rows = []
    for suite in rep["suites"]:
        for c in suite["checks"]:
            rows.append(f"{suite['suite']},{c['name']},{c['count']},{float(c['worst'])!r},"
                        f"{'pass' if c['pass'] else 'fail'}")
    write_csv(_out_path(out_dir, out.get("table", "full-verify.csv")),
              "suite,check,count,worst,pass", rows)
    return EXIT_PASS if rep["pass"] else EXIT_FAIL


_SCENARIOS = {
    "spectrum": _scenario_spectrum,
    "ucp": _scenario_ucp,
    "lift": _scenario_lift,
    "gap-minimax": _scenario_gap_minimax,
    "band-edge": _scenario_band_edge,
}


def run_scenario(config_path: str, seed_override: int | None = None,
                 out_dir: str | None = None, jobs: int = 1, kappa_scale: float = 1.0) -> int:
    """Parse and execute one scenario file; returns the exit code."""
    try:
        with open(config_path, "rb") as fh:
            cfg = tomllib.load(fh)
    except FileNotFoundError:
        print(f"error: config file not found: {config_path}", file=sys.stderr)
        return EXIT_FAIL
    except tomllib.TOMLDecodeError as exc:
        print(f"error: malformed TOML in {config_path}: {exc}", file=sys.stderr)
        return EXIT_FAIL

    kind = cfg.get("kind")
    if kind not in KINDS:
        print(f"error: scenario kind must be one of {KINDS}, got {kind!r}", file=sys.stderr)
        return EXIT_FAIL
    seed = int(seed_override if seed_override is not None else cfg.get("seed", 0))
    out_dir = out_dir or cfg.get("output", {}).get("directory") or os.environ.get("SPECGAP_OUT", "out")
    try:
        if kind == "full-verify":
            return _scenario_full_verify(cfg, seed, out_dir, jobs=jobs, kappa_scale=kappa_scale)
        return _SCENARIOS[kind](cfg, seed, out_dir)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except SpecgapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def _cmd_bands(args) -> int:
    dom = AdmissibleDomain.interval(0.0, args.period, cell_scale=args.period)
    grid = Grid(dom, int(round(args.resolution / args.period)), "neumann")
    if args.potential_csv:
        v = PotentialField.from_csv(grid, args.potential_csv)
    else:
        v = PotentialField.cosine(grid, amplitude=args.amplitude, period=args.period)
    bf = bands_mod.compute_bands(v, n_modes=args.modes, theta_count=args.theta_count,
                                 n_bands=args.bands)
    out_dir = args.out or os.environ.get("SPECGAP_OUT", "out")
    rows = []
    for n in range(bf.n_bands):
        lo, hi = bf.band_interval(n)
        rows.append(f"{n},{lo!r},{hi!r}")
    write_csv(_out_path(out_dir, "bands.csv"), "band,lower_edge,upper_edge", rows)
    if args.svg:
        series = [(f"band {n}", bf.thetas, bf.energies[:, n]) for n in range(bf.n_bands)]
        write_svg_chart(_out_path(out_dir, "bands.svg"), series,
                        title="band functions", x_label="quasimomentum", y_label="energy")
    for row in rows:
        print(row)
    return EXIT_PASS


def _cmd_kappa(args) -> int:
    const = lifting_mod.kappa(
        dimension=args.dimension, cell_scale=args.cell_scale, delta=args.delta,
        theta=args.theta, v_min=args.v_min, v_max=args.v_max,
        w_sup=args.w_sup, energy=args.energy, exponent_n=args.exponent_n,
    )
    print(f"shift = {const.shift!r}")
    print(f"value = {const.value!r}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specgap",
        description="Verification laboratory for spectral lifting estimates of Schrödinger operators.",
        epilog=(
            "Exit codes: 0 all assertions passed; 2 a verifier rejected its "
            "preconditions; 1 assertion failure, bad config, or internal error. "
            "CSV columns per scenario kind: spectrum -> index,eigenvalue; "
            "ucp -> index,energy,mass_ratio,critical_n; lift -> tag,kappa,min_margin,pass; "
            "band-edge -> t,f_minus,f_plus,slope_minus,slope_plus,kappa,pass; "
            "full-verify -> suite,check,count,worst,pass."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a TOML scenario")
    p_run.add_argument("config", help="path to the scenario TOML file")
    p_run.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    p_run.add_argument("--out", default=None, help="output directory (default: $SPECGAP_OUT or ./out)")
    p_run.add_argument("--jobs", type=int, default=1, help="parallel suite workers for full-verify kinds")

    p_fv = sub.add_parser("full-verify", help="run every module property suite")
    p_fv.add_argument("--profile", choices=sorted(PROFILES), default="full")
    p_fv.add_argument("--seed", type=int, default=0)
    p_fv.add_argument("--out", default=None)
    p_fv.add_argument("--jobs", type=int, default=1)
    p_fv.add_argument("--debug-scale-kappa", type=float, default=1.0,
                      help="tamper switch: scale the lifting constant (the suite must then fail)")

    p_bands = sub.add_parser("bands", help="band structure of a periodic cell potential")
    p_bands.add_argument("--amplitude", type=float, default=2.0)
    p_bands.add_argument("--period", type=float, default=1.0)
    p_bands.add_argument("--resolution", type=int, default=1024, help="cell sample count")
    p_bands.add_argument("--theta-count", type=int, default=512)
    p_bands.add_argument("--modes", type=int, default=32)
    p_bands.add_argument("--bands", type=int, default=8)
    p_bands.add_argument("--potential-csv", default=None)
    p_bands.add_argument("--out", default=None)
    p_bands.add_argument("--svg", action="store_true")

    p_kappa = sub.add_parser("kappa", help="one-shot lifting-constant evaluation")
    p_kappa.add_argument("--dimension", type=int, default=1)
    p_kappa.add_argument("--cell-scale", type=float, default=1.0)
    p_kappa.add_argument("--delta", type=float, required=True)
    p_kappa.add_argument("--theta", type=float, default=1.0)
    p_kappa.add_argument("--v-min", type=float, default=0.0)
    p_kappa.add_argument("--v-max", type=float, default=0.0)
    p_kappa.add_argument("--w-sup", type=float, default=0.0)
    p_kappa.add_argument("--energy", type=float, default=0.0)
    p_kappa.add_argument("--exponent-n", type=float, default=10.0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            code = run_scenario(args.config, seed_override=args.seed, out_dir=args.out, jobs=args.jobs)
        elif args.command == "full-verify":
            out_dir = args.out or os.environ.get("SPECGAP_OUT", "out")
            cfg = {"parameters": {"profile": args.profile}, "output": {}}
            code = _scenario_full_verify(cfg, args.seed, out_dir, jobs=args.jobs,
                                         kappa_scale=args.debug_scale_kappa)
        elif args.command == "bands":
            code = _cmd_bands(args)
        elif args.command == "kappa":
            code = _cmd_kappa(args)
        else:  # pragma: no cover - argparse enforces the choices
            code = EXIT_FAIL
    except Exception as exc:  # internal error contract
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return code


if __name__ == "__main__":
    sys.exit(main())
