"""Experiment runner: config validation, dispatch, CSV/JSON serialization.

Usage:  heatscope <kind> --config cfg.json [--out DIR] [--seed N]
                          [--threads N] [--format csv|json|both]

Configs are JSON documents; see CONFIG_FIELDS for the per-kind schema.
Every output embeds the config hash, the package version and the seed, and
serial re-runs with the same seed are bit-identical (wall time lives in a
separate meta file so result files stay reproducible).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np

from . import __version__, diophantine, heat, pointsets, remez, spectral
from .eigenbasis import (
    DEFAULT_SCALE,
    enumerate_modes,
    multiplicity,
)
from .errors import ContractError, DomainError, HeatscopeError, ResourceError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CONTRACT = 3
EXIT_RESOURCE = 4
EXIT_UNKNOWN_KIND = 5

KINDS = (
    "gamma",
    "remez",
    "spectral",
    "product_spectral",
    "heat_obs",
    "point_obs",
    "nodal_demo",
    "lr_chain",
    "product_obs",
    "diophantine",
)

# informal schema: required and optional fields per experiment kind
CONFIG_FIELDS: dict[str, dict[str, tuple[str, ...]]] = {
    "gamma": {
        "required": ("observation", "k_range"),
        "optional": ("method", "law", "name", "seed"),
    },
    "remez": {
        "required": ("observation", "cutoff", "draws"),
        "optional": ("scale", "grid_size", "name", "seed"),
    },
    "spectral": {
        "required": ("observation", "cutoffs"),
        "optional": ("scale", "name", "seed", "starts", "iters"),
    },
    "product_spectral": {
        "required": ("observation_a", "observation_b", "cutoffs"),
        "optional": ("scale", "name", "seed", "starts", "iters"),
    },
    "heat_obs": {
        "required": ("observation", "cutoff", "horizons"),
        "optional": ("scale", "draws", "norm_kind", "trace_kind", "n_time", "name", "seed"),
    },
    "point_obs": {
        "required": ("x0_panel", "frequencies", "horizon"),
        "optional": ("scale", "name", "seed"),
    },
    "nodal_demo": {
        "required": ("eigenvalue", "n_points"),
        "optional": ("scale", "horizon", "name", "seed"),
    },
    "lr_chain": {
        "required": ("observation", "cutoff", "horizon"),
        "optional": ("scale", "draws", "steps", "name", "seed"),
    },
    "product_obs": {
        "required": ("observation_a", "observation_b", "cutoff", "horizons", "fit_cutoffs"),
        "optional": ("scale", "name", "seed"),
    },
    "diophantine": {
        "required": ("x0_panel", "k_max"),
        "optional": ("depth", "name", "seed"),
    },
}


def config_hash(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def validate(kind: str, config: dict) -> list[dict]:
    """Pure schema and range checks; returns a list of diagnostics, empty when ok."""
    diags: list[dict] = []

    def bad(field: str, message: str) -> None:
        diags.append({"field": field, "message": message})

    if kind not in KINDS:
        bad("kind", f"unknown experiment kind {kind!r}")
        return diags
    spec_fields = CONFIG_FIELDS[kind]
    for f in spec_fields["required"]:
        if f not in config:
            bad(f, "required field missing")
    allowed = set(spec_fields["required"]) | set(spec_fields["optional"])
    for f in config:
        if f not in allowed:
            bad(f, f"unknown field for kind {kind!r}")
    if diags:
        return diags

    def check_generator(field: str, desc) -> None:
        if not isinstance(desc, dict) or "kind" not in desc:
            bad(field, "generator descriptor must be a mapping with 'kind'")
            return
        g = desc["kind"]
        if g == "omega_alpha":
            if desc.get("alpha", 1) <= 0:
                bad(f"{field}.alpha", "alpha must be > 0")
            if desc.get("count", 1) < 1:
                bad(f"{field}.count", "count must be >= 1")
        elif g == "omega_exp":
            if desc.get("count", 1) < 1:
                bad(f"{field}.count", "count must be >= 1")
        elif g == "singleton":
            x0 = desc.get("x0", 0.5)
            vals = x0 if isinstance(x0, (list, tuple)) else [x0]
            if any(not 0 < v < 1 for v in vals):
                bad(f"{field}.x0", "singleton coordinates must be in (0,1)")
        elif g == "uniform_grid":
            if desc.get("per_axis", 1) < 1:
                bad(f"{field}.per_axis", "per_axis must be >= 1")
        elif g == "cantor":
            if desc.get("level", 0) < 0:
                bad(f"{field}.level", "level must be >= 0")
            if not 0 < desc.get("ratio", 1 / 3) < 0.5:
                bad(f"{field}.ratio", "ratio must be in (0, 1/2)")
        elif g == "product":
            check_generator(f"{field}.a", desc.get("a"))
            check_generator(f"{field}.b", desc.get("b"))
        elif g == "explicit":
            if "points" not in desc:
                bad(f"{field}.points", "explicit generator needs points")
        else:
            bad(field, f"unknown generator kind {g!r}")

    def check_ascending(field: str, values) -> None:
        if not isinstance(values, (list, tuple)) or len(values) < 1:
            bad(field, "must be a nonempty list")
            return
        if any(b <= a for a, b in zip(values, values[1:])):
            bad(field, "values must be strictly ascending")
        if any(v <= 0 for v in values):
            bad(field, "values must be positive")

    for field in ("observation", "observation_a", "observation_b"):
        if field in config:
            check_generator(field, config[field])
    if "k_range" in config:
        kr = config["k_range"]
        if not (isinstance(kr, (list, tuple)) and len(kr) == 2 and 2 <= kr[0] <= kr[1]):
            bad("k_range", "must be [k_min, k_max] with 2 <= k_min <= k_max")
    for field in ("cutoffs", "horizons", "fit_cutoffs", "frequencies"):
        if field in config:
            check_ascending(field, config[field])
    for field in ("cutoff", "horizon", "scale"):
        if field in config and config[field] <= 0:
            bad(field, "must be > 0")
    for field in ("draws", "grid_size", "n_points", "steps", "k_max", "depth", "n_time"):
        if field in config and config[field] < 1:
            bad(field, "must be >= 1")
    if "x0_panel" in config:
        panel = config["x0_panel"]
        if not isinstance(panel, (list, tuple)) or not panel:
            bad("x0_panel", "must be a nonempty list")
    if "method" in config and config["method"] not in ("greedy", "exact", "first_k"):
        bad("method", "must be greedy, exact or first_k")
    if "law" in config and config["law"] not in ("k_log_k", "k_squared"):
        bad("law", "must be k_log_k or k_squared")
    if "norm_kind" in config and config["norm_kind"] not in ("l2", "linf"):
        bad("norm_kind", "must be l2 or linf")
    if "trace_kind" in config and config["trace_kind"] not in ("sup_l1", "points_l2"):
        bad("trace_kind", "must be sup_l1 or points_l2")
    return diags


def _jsonable(value: Any) -> Any:
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _fmt_cell(value: Any) -> str:
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ";".join(str(v) for v in value)
    return str(value)


# ---------------------------------------------------------------------------
# per-kind runners: each returns (csv_header, csv_rows, extra_json, warnings)


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def _map_units(fn: Callable, units: list, threads: int) -> list:
    """Apply fn to sweep units, optionally in a thread pool.

    Results come back in input order, so aggregation is deterministic under
    any schedule.
    """
    if threads <= 1 or len(units) <= 1:
        return [fn(u) for u in units]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, units))


def _run_gamma(config, seed, threads=1):
    obs = pointsets.generate(config["observation"])
    k_lo, k_hi = config["k_range"]
    method = config.get("method", "greedy")
    header = ["k", "log_gamma", "gamma", "method", "witness_indices"]
    ks_all = list(range(k_lo, k_hi + 1))
    ests = _map_units(lambda k: pointsets.gamma_estimate(obs, k, method), ks_all, threads)
    rows = []
    for k, g in zip(ks_all, ests):
        rows.append([k, g.log_value, g.value, g.method, list(g.witness_indices)])
    extra: dict[str, Any] = {}
    ks = list(range(k_lo, k_hi + 1))
    if len(ks) >= 3:
        law = config.get("law", "k_log_k")
        fit = pointsets.gamma_growth_fit(obs, ks, law=law, method=method)
        extra["growth_fit"] = {
            "law": fit.law,
            "slope": fit.slope,
            "intercept": fit.intercept,
            "residual": fit.residual,
        }
        logs = [r[1] for r in rows]
        if all(v < 0 for v in logs):
            extra["loglog_exponent"] = pointsets.loglog_exponent(ks, logs)
    return header, rows, extra, []


def _run_remez(config, seed, threads=1):
    obs = pointsets.generate(config["observation"])
    cutoff = config["cutoff"]
    scale = config.get("scale", 1.0)
    draws = config["draws"]
    grid_size = config.get("grid_size", 10_000)
    spec_slice = enumerate_modes(1, cutoff, scale)
    header = ["draw", "ell0", "lhs", "lhs_upper", "log_rhs", "holds"]
    rows = []
    gamma_cache: dict[int, pointsets.GammaEstimate] = {}
    for d in range(draws):
        coefs = _rng(seed, d).standard_normal(len(spec_slice))
        ell0 = remez.choose_ell0(remez.bernstein_bounds(spec_slice.max_index), 600)
        cert = remez.remez_verify(
            spec_slice, coefs, obs, grid_size, gamma_estimate=gamma_cache.get(ell0)
        )
        gamma_cache[cert.ell0] = pointsets.GammaEstimate(
            k=cert.ell0,
            log_value=cert.log_gamma,
            witness_indices=tuple(),
            witness=cert.nodes,
            method=cert.gamma_method,
        )
        rows.append([d, cert.ell0, cert.lhs, cert.lhs_upper, cert.log_rhs, cert.holds])
    n_hold = sum(1 for r in rows if r[5])
    return header, rows, {"holds": n_hold, "draws": draws}, []


def _run_spectral(config, seed, threads=1):
    obs = pointsets.generate(config["observation"])
    scale = config.get("scale", DEFAULT_SCALE)
    starts = config.get("starts", 16)
    iters = config.get("iters", 200)
    header = ["cutoff", "n_modes", "n_points", "lower", "upper", "sigma_min", "status"]
    rows = []
    samples = []
    for lam in config["cutoffs"]:
        sl = enumerate_modes(obs.dimension, lam, scale)
        if len(sl) == 0:
            continue
        sc = spectral.spectral_constant(sl, obs, starts=starts, iters=iters)
        rows.append([lam, len(sl), len(obs), sc.lower, sc.upper, sc.sigma_min, sc.status])
        if not sc.is_infinite:
            samples.append((lam, sc.lower))
    extra: dict[str, Any] = {}
    if len(samples) >= 3:
        fit = spectral.fit_growth(samples)
        extra["growth_fit"] = {
            "beta": fit.beta,
            "growth_constant": fit.growth_constant,
            "log_prefactor": fit.log_prefactor,
            "residual": fit.residual,
        }
    return header, rows, extra, []


def _fit_for(obs, cutoffs, scale, starts, iters):
    samples = []
    for lam in cutoffs:
        sl = enumerate_modes(obs.dimension, lam, scale)
        if len(sl) == 0:
            continue
        sc = spectral.spectral_constant(sl, obs, starts=starts, iters=iters)
        if sc.is_infinite:
            raise ContractError(f"factor constant infinite at cutoff {lam}; cannot fit growth")
        samples.append((lam, sc.lower))
    return spectral.fit_growth(samples)


def _run_product_spectral(config, seed, threads=1):
    obs_a = pointsets.generate(config["observation_a"])
    obs_b = pointsets.generate(config["observation_b"])
    scale = config.get("scale", DEFAULT_SCALE)
    starts = config.get("starts", 8)
    iters = config.get("iters", 150)
    cutoffs = config["cutoffs"]
    fit_a = _fit_for(obs_a, cutoffs, scale, starts, iters)
    fit_b = _fit_for(obs_b, cutoffs, scale, starts, iters)
    if abs(fit_a.beta - fit_b.beta) > 1e-9:
        # composition needs one common exponent; refit b on a's grid point
        raise ContractError(
            f"factor fits disagree on beta ({fit_a.beta} vs {fit_b.beta}); "
            "use factors with matching growth"
        )
    header = [
        "cutoff", "measured_lower", "log_composed", "cardinality",
        "composed_constant_form", "holds", "inherited_infinite",
    ]
    rows = []
    for lam in cutoffs:
        prod_slice = enumerate_modes(obs_a.dimension + obs_b.dimension, lam, scale)
        if len(prod_slice) == 0:
            continue
        chk = spectral.product_compose_check(
            prod_slice, obs_a, obs_b, fit_a, fit_b, starts=starts, iters=iters
        )
        measured = chk.measured.lower if not chk.measured.is_infinite else math.inf
        rows.append([
            lam, measured, chk.log_composed, chk.cardinality,
            chk.composed_constant_form, chk.holds, chk.inherited_infinite,
        ])
    all_hold = all(r[5] for r in rows)
    return header, rows, {"beta": fit_a.beta, "all_hold": all_hold}, []


def _run_heat_obs(config, seed, threads=1):
    obs = pointsets.generate(config["observation"])
    scale = config.get("scale", DEFAULT_SCALE)
    sl = enumerate_modes(obs.dimension, config["cutoff"], scale)
    draws = config.get("draws", 8)
    header = ["horizon", "draw", "ratio"]
    units = list(enumerate(config["horizons"]))

    def one(unit):
        i, horizon = unit
        exp = heat.make_experiment(
            sl, obs, horizon,
            n_time=config.get("n_time", 2049),
            norm_kind=config.get("norm_kind", "l2"),
            trace_kind=config.get("trace_kind", "sup_l1"),
        )
        out = []
        for d in range(draws):
            u0 = _rng(seed, i * draws + d).standard_normal(len(sl))
            out.append([horizon, d, heat.obs_ratio(u0, exp)])
        return out

    rows = [row for block in _map_units(one, units, threads) for row in block]
    return header, rows, {}, []


def _run_point_obs(config, seed, threads=1):
    scale = config.get("scale", 1.0)
    horizon = config["horizon"]
    header = ["x0", "K", "value", "status", "retained_rank"]
    units = [(x0, kf) for x0 in config["x0_panel"] for kf in config["frequencies"]]

    def one(unit):
        x0, kfreq = unit
        sl = enumerate_modes(1, scale * kfreq**2, scale)
        oc = heat.worst_case_obs(sl, pointsets.singleton(x0), horizon)
        return [x0, kfreq, oc.value, oc.status, oc.retained_rank]

    rows = _map_units(one, units, threads)
    return header, rows, {}, []


def _run_nodal_demo(config, seed, threads=1):
    scale = config.get("scale", 1.0)
    r = config["eigenvalue"]
    n_points = config["n_points"]
    horizon = config.get("horizon", 1.0)
    mult = multiplicity(2, r)
    sl = enumerate_modes(2, scale * r, scale)
    pts = _rng(seed, 0).uniform(0.05, 0.95, size=(n_points, 2))
    obs = pointsets.explicit(pts)
    witness = spectral.nullspace_witness(sl, obs)
    warnings = []
    if witness is None:
        warnings.append("no nullspace witness found")
        return ["found"], [[False]], {"multiplicity": mult}, warnings
    matrix = spectral.eval_matrix(sl, obs)
    residual = float(np.max(np.abs(matrix @ witness)))
    exp = heat.make_experiment(sl, obs, horizon, trace_kind="sup_l1")
    ratio = heat.obs_ratio(witness, exp)
    header = ["multiplicity", "residual", "obs_ratio_infinite"]
    rows = [[mult, residual, math.isinf(ratio)]]
    extra = {
        "witness": [float(v) for v in witness],
        "points": [list(map(float, p)) for p in pts],
        "obs_ratio": ratio,
    }
    return header, rows, extra, warnings


def _run_lr_chain(config, seed, threads=1):
    obs = pointsets.generate(config["observation"])
    scale = config.get("scale", DEFAULT_SCALE)
    sl = enumerate_modes(obs.dimension, config["cutoff"], scale)
    report = heat.telescoping_verify(
        sl, obs, config["horizon"],
        n_draws=config.get("draws", 12),
        seed=seed,
        n_intervals=config.get("steps", 20),
    )
    header = [
        "a_empirical", "observable", "c_two_point", "final_constant",
        "cost_form_constant", "telescoped_holds",
    ]
    rows = [[
        report.a_empirical if report.a_empirical is not None else "none",
        report.observable, report.c_two_point, report.final_constant,
        report.cost_form_constant, report.telescoped_holds,
    ]]
    warnings = [report.notes] if report.notes else []
    return header, rows, {"n_intervals": report.n_intervals, "n_data": report.n_data}, warnings


def _run_product_obs(config, seed, threads=1):
    obs_a = pointsets.generate(config["observation_a"])
    obs_b = pointsets.generate(config["observation_b"])
    scale = config.get("scale", 1.0)
    cutoff = config["cutoff"]
    fit = _fit_for(obs_b, config["fit_cutoffs"], scale, 8, 150)
    alpha = fit.beta / (1.0 - fit.beta)
    factor_costs = []
    for tau in config["horizons"]:
        sl1 = enumerate_modes(obs_a.dimension, cutoff, scale)
        oc = heat.worst_case_obs(sl1, obs_a, tau)
        factor_costs.append((tau, oc.value))
    header = ["horizon", "measured", "log_predicted", "holds", "inherited_infinite", "lambda_split"]
    rows = []
    for tau in config["horizons"]:
        chk = heat.product_obs_check(
            factor_costs, alpha, obs_a, fit, obs_b, cutoff, tau, scale
        )
        rows.append([
            tau, chk.measured.value, chk.log_predicted, chk.holds,
            chk.inherited_infinite, chk.lambda_split,
        ])
    return header, rows, {"alpha": alpha, "beta": fit.beta}, []


def _run_diophantine(config, seed, threads=1):
    k_max = config["k_max"]
    depth = config.get("depth", 30)
    header = ["x0", "label", "gap_at_k_max", "cf_quotients", "cf_truncated"]
    rows = []
    extra: dict[str, Any] = {"profiles": []}
    warnings = []
    for x0 in config["x0_panel"]:
        cf = diophantine.continued_fraction(x0, depth)
        if cf.truncated:
            warnings.append(f"continued fraction for {x0} truncated by precision")
        prof = diophantine.nodal_gap_profile(cf.x0, k_max)
        label = diophantine.classify(prof)
        rows.append([cf.x0, label, float(prof.gaps[-1]), list(cf.quotients), cf.truncated])
        extra["profiles"].append({
            "x0": cf.x0,
            "events": [[int(k), float(g)] for k, g in prof.events],
            "quotients": list(cf.quotients),
        })
    return header, rows, extra, warnings


_RUNNERS: dict[str, Callable] = {
    "gamma": _run_gamma,
    "remez": _run_remez,
    "spectral": _run_spectral,
    "product_spectral": _run_product_spectral,
    "heat_obs": _run_heat_obs,
    "point_obs": _run_point_obs,
    "nodal_demo": _run_nodal_demo,
    "lr_chain": _run_lr_chain,
    "product_obs": _run_product_obs,
    "diophantine": _run_diophantine,
}


def run(
    kind: str,
    config: dict,
    out_dir: Path,
    *,
    seed: Optional[int] = None,
    fmt: str = "both",
    threads: int = 1,
) -> dict:
    """Validate, dispatch and serialize one experiment; returns the record."""
    if kind not in KINDS:
        raise DomainError(f"unknown experiment kind {kind!r}")
    diags = validate(kind, config)
    if diags:
        msgs = "; ".join(f"{d['field']}: {d['message']}" for d in diags)
        raise ContractError(f"invalid config: {msgs}")
    seed = int(seed if seed is not None else config.get("seed", 0))
    started = time.perf_counter()
    header, rows, extra, warnings = _RUNNERS[kind](config, seed, threads=threads)
    wall = time.perf_counter() - started

    record = {
        "artifact_version": __version__,
        "config_hash": config_hash(config),
        "kind": kind,
        "seed": seed,
        "params": _jsonable(config),
        "columns": header,
        "rows": _jsonable(rows),
        "extra": _jsonable(extra),
        "warnings": warnings,
    }
    name = config.get("name", kind)
    out_dir.mkdir(parents=True, exist_ok=True)
    if fmt in ("csv", "both"):
        with open(out_dir / f"{name}.csv", "w", newline="", encoding="utf-8") as f:
            f.write(f"# config_hash={record['config_hash']}\n")
            f.write(f"# version={__version__}\n")
            f.write(f"# seed={seed}\n")
            writer = csv.writer(f)
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt_cell(v) for v in row])
    if fmt in ("json", "both"):
        with open(out_dir / f"{name}.json", "w", encoding="utf-8") as f:
            json.dump(record, f, sort_keys=True, indent=1)
            f.write("\n")
    # timing stays out of the deterministic artifacts
    with open(out_dir / f"{name}_meta.json", "w", encoding="utf-8") as f:
        json.dump({"wall_time_s": wall, "threads": threads}, f)
        f.write("\n")
    return record


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog="heatscope", description=__doc__)
    parser.add_argument("kind", help=f"experiment kind, one of {', '.join(KINDS)}")
    parser.add_argument("--config", required=True, help="path to the JSON config")
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--seed", type=int, default=None, help="seed override")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--format", choices=("csv", "json", "both"), default="both")
    args = parser.parse_args(argv)

    def fail(code: int, name: str, message: str) -> int:
        print(json.dumps({"error": {"code": code, "name": name, "message": message}}), file=sys.stderr)
        return code

    if args.kind not in KINDS:
        return fail(EXIT_UNKNOWN_KIND, "unknown_kind", f"unknown experiment kind {args.kind!r}")
    try:
        with open(args.config, "r", encoding="utf-8") as f:
            config = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        return fail(EXIT_CONFIG, "bad_config_file", str(exc))
    diags = validate(args.kind, config)
    if diags:
        return fail(EXIT_CONFIG, "invalid_config", json.dumps(diags))
    try:
        record = run(
            args.kind, config, Path(args.out),
            seed=args.seed, fmt=args.format, threads=args.threads,
        )
    except ResourceError as exc:
        return fail(EXIT_RESOURCE, "resource", str(exc))
    except (ContractError, DomainError) as exc:
        return fail(EXIT_CONTRACT, "contract", str(exc))
    except HeatscopeError as exc:
        return fail(EXIT_CONTRACT, "error", str(exc))
    if record["warnings"] and os.environ.get("HEATSCOPE_MODE") == "strict":
        return fail(EXIT_CONTRACT, "strict_warnings", "; ".join(record["warnings"]))
    print(f"{args.kind}: {len(record['rows'])} rows -> {args.out}")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
