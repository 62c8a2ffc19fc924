"""Command-line front end: verify / wolff / orbit / horoball / demo.

Outputs are deterministic under a fixed config and seed: JSON reports are
dumped with sorted keys and CSVs carry 17 significant digits.  Files are
written atomically (temp file + rename).  Set SYMDOM_LOG for verbosity.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile

import numpy as np

from .boundary import component_to_dict
from .config import (
    SCHEMA,
    TOLERANCE_NAMES,
    RunConfig,
    run_config_from_dict,
    run_config_to_dict,
)
from .demos import DEMO_NAMES, demo_config
from .dynamics import (
    DenjoyWolffReport,
    OrbitRecord,
    WolffData,
    denjoy_wolff_report,
    orbit,
)
from .errors import ConfigError, SymdomError
from .factors import element_norm, element_to_pairs, factor_from_spec
from .horofunction import eval_F_bisect
from .verify import run_verification

log = logging.getLogger("symdom")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_atomic(path: str, data: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".symdom-tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


# -- report serialization ------------------------------------------------------

def wolff_to_dict(w: WolffData) -> dict:
    out = {
        "verdict": w.verdict,
        "beta_schedule": list(w.beta_schedule),
        "residual_max": max(w.residuals) if w.residuals else 0.0,
        "fixed_point_norms": [element_norm(z) for z in w.fixed_points],
        "invariance_margin": w.invariance_margin,
        "f_scale": w.f_scale,
    }
    if w.zeta is not None:
        out["zeta"] = element_to_pairs(w.zeta)
    if w.F is not None:
        out["horofunction"] = {
            "frame": [element_to_pairs(e) for e in w.F.frame],
            "sigma": list(w.F.sigma),
        }
        out["sigma_diagnostics"] = {
            k: (list(v) if isinstance(v, tuple) else v)
            for k, v in w.sigma_estimate.diagnostics.items()
        }
    if w.fixed_point is not None:
        out["fixed_point"] = element_to_pairs(w.fixed_point)
    return out


def report_to_dict(rep: DenjoyWolffReport) -> dict:
    out = {
        "verdict": rep.verdict,
        "wolff": wolff_to_dict(rep.wolff),
        "tolerances": dict(rep.tolerances),
        "clusters_captured": rep.clusters_captured,
        "capture_failures": list(rep.capture_failures),
        "nonfinite_omega": list(rep.nonfinite_omega),
    }
    if rep.predicted_component is not None:
        out["predicted_component"] = component_to_dict(rep.predicted_component)
        out["truncated_component"] = component_to_dict(rep.truncated_component)
        out["truncation_index"] = rep.truncation_index
        out["s0"] = rep.s0
    if rep.hypothesis is not None:
        out["hypothesis"] = {
            "status": rep.hypothesis.status,
            "detail": rep.hypothesis.detail,
            "classifications": [dict(c) for c in rep.hypothesis.classifications],
        }
    out["limit_points"] = [
        [
            {
                "centre": element_to_pairs(c.centre),
                "count": c.count,
                "diameter": c.diameter,
            }
            for c in clusters
        ]
        for clusters in rep.limit_points
    ]
    out["starts"] = [element_to_pairs(s) for s in rep.starts]
    return out


# -- CSV writers ----------------------------------------------------------------

def orbit_csv(rec: OrbitRecord) -> str:
    dim = rec.start.factor.dim
    header = ["n"]
    for k in range(dim):
        header += [f"re{k}", f"im{k}"]
    header += ["norm", "kobayashi_step"]
    lines = [",".join(header)]
    for n in range(1, len(rec.points)):
        p = rec.points[n]
        row = [str(n)]
        for z in p.coords:
            row += [_fmt(z.real), _fmt(z.imag)]
        step = _fmt(rec.kappa_steps[n - 1]) if n - 1 < len(rec.kappa_steps) else ""
        row += [_fmt(rec.norms[n]), step]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def f_decay_csv(cfg: RunConfig, rec: OrbitRecord) -> str:
    """Horofunction values along an orbit: columns n, F."""
    F = cfg.horofunction
    tol = cfg.tol("bisect_tol")
    lines = ["n,F"]
    for n, p in enumerate(rec.points):
        if element_norm(p) >= 1.0 - 1e-12:
            break
        lines.append(f"{n},{_fmt(eval_F_bisect(F, p, tol))}")
    return "\n".join(lines) + "\n"


def horoball_grid_csv(cfg: RunConfig) -> str:
    if cfg.horofunction is None or cfg.slice is None:
        raise ConfigError("horoball command needs 'horofunction' and 'slice' in the config")
    F = cfg.horofunction
    sl = cfg.slice
    umin, umax, vmin, vmax = (float(t) for t in sl["extent"])
    n = int(sl["resolution"])
    f = cfg.factor
    origin, e1, e2 = sl["origin"], sl["e1"], sl["e2"]
    header = ["u", "v", "in_ball", "F"] + [f"member_s{_fmt(s)}" for s in cfg.s_list]
    lines = [",".join(header)]
    tol = cfg.tol("bisect_tol")
    for u in np.linspace(umin, umax, n):
        for v in np.linspace(vmin, vmax, n):
            x = origin + float(u) * e1 + float(v) * e2
            row = [_fmt(u), _fmt(v)]
            if element_norm(x) >= 1.0 - 1e-12:
                row += ["0", ""] + ["" for _ in cfg.s_list]
            else:
                val = eval_F_bisect(F, x, tol)
                row += ["1", _fmt(val)]
                row += ["1" if val < s else "0" for s in cfg.s_list]
            lines.append(",".join(row))
    return "\n".join(lines) + "\n"


# -- commands ---------------------------------------------------------------------

def _load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return run_config_from_dict(data)


def _tol_overrides(pairs: list[str] | None) -> dict:
    out = {}
    for item in pairs or []:
        if "=" not in item:
            raise ConfigError(f"--tol needs NAME=VALUE, got {item!r}")
        name, value = item.split("=", 1)
        out[name] = float(value)
    return out


def cmd_verify(args) -> int:
    try:
        factor = factor_from_spec(json.loads(args.factor))
        overrides = _tol_overrides(args.tol)
    except (ConfigError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    results = run_verification(factor, trials=args.trials, seed=args.seed, tolerances=overrides)
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "pass" if r.passed else "FAIL"
        failed += 0 if r.passed else 1
        print(f"{r.name:<{width}}  {status}  max_residual={r.max_residual:.3e}  tol={r.tolerance:.1e}  trials={r.trials}")
    print(f"{len(results) - failed}/{len(results)} identity suites passed")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def _run_report(cfg: RunConfig) -> DenjoyWolffReport:
    if cfg.map is None:
        raise ConfigError("config needs a 'map' for this command")
    wopts = cfg.wolff
    schedule = None
    if "beta_ks" in wopts:
        schedule = tuple(1.0 - 2.0 ** (-k) for k in wopts["beta_ks"])
    return denjoy_wolff_report(
        cfg.map,
        starts=cfg.starts or None,
        iterations=cfg.iterations,
        seed=cfg.seed,
        cluster_tol=cfg.tol("cluster_tol"),
        closure_tol=cfg.tol("closure_tol"),
        unit_threshold=1.0 - cfg.tol("unit_threshold"),
        invariance_samples=int(wopts.get("invariance_samples", 500)),
        beta_schedule=schedule,
        eh_tol=cfg.tol("eh_tol"),
    )


def _verdict_line(rep: DenjoyWolffReport) -> str:
    if rep.verdict == "interior-fixed-point":
        fp = rep.wolff.fixed_point
        return f"fixed point found at {element_to_pairs(fp)}"
    comp = rep.truncated_component
    c = element_to_pairs(comp.centre)
    captured = "all clusters captured" if rep.clusters_captured else "CAPTURE FAILED"
    return f"{rep.verdict}; component tripotent {c}; {captured}; hypothesis {rep.hypothesis.status}"


def cmd_wolff(args) -> int:
    try:
        cfg = _load_config(args.config)
        cfg.tolerances.update(_tol_overrides(args.tol))
        if args.seed is not None:
            cfg.seed = args.seed
        rep = _run_report(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = args.out or "wolff_report.json"
    write_atomic(out, dump_json(report_to_dict(rep)))
    print(_verdict_line(rep))
    log.info("report written to %s", out)
    return EXIT_FAIL if rep.verdict == "indeterminate" else EXIT_OK


def cmd_orbit(args) -> int:
    try:
        cfg = _load_config(args.config)
        if args.seed is not None:
            cfg.seed = args.seed
        if cfg.map is None:
            raise ConfigError("config needs a 'map' for orbit runs")
        if not cfg.starts:
            raise ConfigError("config needs explicit 'starts' for orbit runs")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = args.out or "orbit.csv"
    base, ext = os.path.splitext(out)
    paths = []
    for i, a in enumerate(cfg.starts):
        rec = orbit(cfg.map, a, cfg.iterations, cfg.tol("cluster_tol"))
        path = out if len(cfg.starts) == 1 else f"{base}_s{i:02d}{ext}"
        write_atomic(path, orbit_csv(rec))
        paths.append(path)
    print(f"wrote {len(paths)} orbit file(s): {', '.join(paths)}")
    return EXIT_OK


def cmd_horoball(args) -> int:
    try:
        cfg = _load_config(args.config)
        csv = horoball_grid_csv(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = args.out or "horoball_grid.csv"
    write_atomic(out, csv)
    print(f"wrote horoball grid to {out}")
    return EXIT_OK


def cmd_demo(args) -> int:
    try:
        data = demo_config(args.name)
        if args.seed is not None:
            data["seed"] = args.seed
        cfg = run_config_from_dict(data)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    outdir = args.out or f"demo_{args.name}"
    os.makedirs(outdir, exist_ok=True)
    write_atomic(os.path.join(outdir, "config.json"), dump_json(run_config_to_dict(cfg)))
    rep = _run_report(cfg)
    write_atomic(os.path.join(outdir, "report.json"), dump_json(report_to_dict(rep)))
    for i, a in enumerate(cfg.starts):
        rec = orbit(cfg.map, a, cfg.iterations, cfg.tol("cluster_tol"))
        write_atomic(os.path.join(outdir, f"orbit_s{i:02d}.csv"), orbit_csv(rec))
        if i == 0 and cfg.horofunction is not None:
            write_atomic(os.path.join(outdir, "f_decay.csv"), f_decay_csv(cfg, rec))
    if cfg.horofunction is not None and cfg.slice is not None:
        write_atomic(os.path.join(outdir, "horoball_grid.csv"), horoball_grid_csv(cfg))
    print(f"demo {args.name}: {_verdict_line(rep)}")
    print(f"outputs in {outdir}/")
    return EXIT_FAIL if rep.verdict == "indeterminate" else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="symdom",
        description="Jordan-algebraic bounded symmetric domains: verification and iteration experiments",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the identity-verification suites on a factor")
    p.add_argument("--factor", required=True, help="factor spec as JSON")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", action="append", metavar="NAME=VALUE")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("wolff", help="run the Wolff construction and Denjoy-Wolff report")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", action="append", metavar="NAME=VALUE")
    p.set_defaults(func=cmd_wolff)

    p = sub.add_parser("orbit", help="iterate a map and emit orbit CSVs")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("horoball", help="evaluate F on a 2-parameter slice and emit a grid CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_horoball)

    p = sub.add_parser("demo", help="run a named demo scenario end to end")
    p.add_argument("name", choices=DEMO_NAMES)
    p.add_argument("--out")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_demo)
    return ap


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("SYMDOM_LOG", "WARNING"))
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except SymdomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
