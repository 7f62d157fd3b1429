"""Command-line front end.

Subcommands ``profile``, ``shift``, ``geometry``, ``trajectory`` and ``compare`` write
CSV (17 significant digits) to ``--out`` or stdout. Configuration comes from an
optional ``key = value`` file (``--config``) with per-key overrides
(``--key value``). When ``--out`` is given, the fully resolved configuration is
written next to it as ``<out>.manifest``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import io
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path

from . import analysis, geometry, semiclassics
from .beam import BeamParams, TruncationPolicy
from .laser import LaserField
from .mathcore import ConvergenceError, DomainError

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

_POLARIZATIONS = {"x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0), "-x": (-1.0, 0.0, 0.0), "-y": (0.0, -1.0, 0.0)}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    # beam
    mass: float = 1.0
    p0: float = 1.2
    theta0: float = 0.2
    l: int = 3
    spin: str = "up"
    # laser
    a0: float = 0.2
    omega: float = 0.05
    polarization: str = "y"
    # density evaluation; n_max < 0 and window <= 0 select the automatic values
    n_max: int = -1
    window: float = 0.0
    grid: int = 256
    t: float = 0.0
    z: float = 0.0
    # shift scan: zeta_points phases on [zeta_start, zeta_stop)
    zeta_start: float = 0.0
    zeta_stop: float = 2.0 * math.pi
    zeta_points: int = 16
    # geometry table
    n_laser: int = 0
    theta_points: int = 7
    # trajectories
    mode: str = "oam"
    tilt: float = 0.5 * math.pi
    cycles: int = 2
    steps_per_cycle: int = 256
    # comparison grid
    l_primes: str = "1,2,5,200"
    thetas: str = "0.3,0.78539816339744828,1.5707963267948966"
    threads: int = 1

    # ------------------------------------------------------------------
    def beam(self) -> BeamParams:
        if self.spin not in ("up", "down"):
            raise ConfigError("spin: expected 'up' or 'down'")
        a, b = (1.0, 0.0) if self.spin == "up" else (0.0, 1.0)
        return _build("beam", lambda: BeamParams(self.l, a, b, self.p0, self.theta0, self.mass))

    def laser(self) -> LaserField:
        if self.polarization not in _POLARIZATIONS:
            raise ConfigError(f"polarization: expected one of {sorted(_POLARIZATIONS)}")
        return _build("laser", lambda: LaserField(self.a0, self.omega, (0.0, 0.0, -1.0),
                                                  _POLARIZATIONS[self.polarization], self.mass))

    def trunc(self) -> TruncationPolicy | None:
        return None if self.n_max < 0 else TruncationPolicy(self.n_max)

    def window_or_none(self) -> float | None:
        return None if self.window <= 0 else self.window

    def zetas(self) -> list[float]:
        span = self.zeta_stop - self.zeta_start
        return [self.zeta_start + i * span / self.zeta_points for i in range(self.zeta_points)]

    def l_prime_list(self) -> list[int]:
        return _parse_list("l_primes", self.l_primes, int)

    def theta_list(self) -> list[float]:
        return _parse_list("thetas", self.thetas, float)

    def validate(self) -> None:
        self.beam()
        self.laser()
        checks = [
            ("grid", self.grid >= analysis.MIN_GRID, f"must be >= {analysis.MIN_GRID}"),
            ("zeta_points", self.zeta_points >= 1, "must be >= 1"),
            ("theta_points", self.theta_points >= 2, "must be >= 2"),
            ("cycles", self.cycles >= 1, "must be >= 1"),
            ("steps_per_cycle", self.steps_per_cycle >= semiclassics.MIN_STEPS_PER_CYCLE,
             f"must be >= {semiclassics.MIN_STEPS_PER_CYCLE}"),
            ("mode", self.mode in ("oam", "spin", "none"), "expected 'oam', 'spin' or 'none'"),
            ("tilt", 0.0 <= self.tilt <= math.pi, "must lie in [0, pi]"),
            ("threads", self.threads >= 1, "must be >= 1"),
        ]
        for key, ok, msg in checks:
            if not ok:
                raise ConfigError(f"{key}: {msg}")
        if any(lp < 1 for lp in self.l_prime_list()):
            raise ConfigError("l_primes: every l' must be >= 1")
        if any(not (0.0 < th <= 0.5 * math.pi) for th in self.theta_list()):
            raise ConfigError("thetas: every theta must lie in (0, pi/2]")
        if self.window <= 0 and self.p0 * math.sin(self.theta0) <= 0:
            raise ConfigError("window: theta0 = 0 has no ring; set window explicitly")

    def manifest(self) -> str:
        lines = [f"{f.name} = {_fmt_value(getattr(self, f.name))}" for f in fields(self)]
        return "\n".join(lines) + "\n"


def _build(what, factory):
    try:
        return factory()
    except ValueError as exc:
        raise ConfigError(f"{what}: {exc}") from exc


def _parse_list(key, text, cast):
    try:
        return [cast(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"{key}: {exc}") from exc


def _fmt_value(v) -> str:
    return format(v, ".17g") if isinstance(v, float) else str(v)


def _convert(key: str, raw: str):
    ftype = {f.name: f.type for f in fields(RunConfig)}[key]
    try:
        if ftype in ("int", int):
            return int(raw)
        if ftype in ("float", float):
            value = float(raw)
            if not math.isfinite(value):
                raise ValueError("not finite")
            return value
        return raw.strip()
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {raw!r} as {ftype}") from None


def read_config_file(path: str | Path) -> dict[str, str]:
    known = {f.name for f in fields(RunConfig)}
    out = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key == "command":  # written by manifests; lets a manifest be replayed as a config
            continue
        if key not in known:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def resolve_config(file_values: dict[str, str], overrides: dict[str, str]) -> RunConfig:
    merged = {**file_values, **{k: v for k, v in overrides.items() if v is not None}}
    cfg = RunConfig(**{k: _convert(k, v) for k, v in merged.items()})
    cfg.validate()
    return cfg


# --------------------------------------------------------------------------
# CSV helpers
# --------------------------------------------------------------------------

def _fmt(x: float) -> str:
    if not math.isfinite(x):
        raise FloatingPointError("non-finite value in output")
    return format(float(x), ".17g")


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------

def cmd_profile(cfg: RunConfig) -> str:
    prm, las = cfg.beam(), cfg.laser()
    window = cfg.window_or_none() or analysis.default_window(prm)
    grid = analysis.density_grid(prm, las, cfg.t, cfg.z, window, cfg.grid, cfg.trunc(), cfg.threads)
    ax = grid.axis
    rows = ((ax[i], ax[j], grid.values[i, j]) for i in range(cfg.grid) for j in range(cfg.grid))
    return _csv(["x", "y", "rho"], rows)


def cmd_shift(cfg: RunConfig) -> str:
    reports = analysis.shift_scan(cfg.beam(), cfg.laser(), cfg.zetas(), cfg.window_or_none(),
                                  cfg.trunc(), cfg.grid, cfg.threads)
    rows = ((r.zeta, r.cx, r.cy, r.shift_x, r.shift_y, r.window) for r in reports)
    return _csv(["zeta", "cx", "cy", "shift_x", "shift_y", "window"], rows)


def cmd_geometry(cfg: RunConfig) -> str:
    s = 0.5 if cfg.spin == "up" else -0.5
    sigma = (0.0, 0.0, 1.0) if cfg.spin == "up" else (0.0, 0.0, -1.0)
    rows = []
    for i in range(cfg.theta_points):
        theta = 0.5 * math.pi * i / (cfg.theta_points - 1)
        g = geometry.VortexGeometry.from_theta(theta)
        led = geometry.ledger(cfg.l, cfg.n_laser, theta, s, sigma_expect=sigma)
        rows.append((theta, g.mu, g.berry_phase, g.solid_angle, led.total_L, led.total_S))
    return _csv(["theta", "mu", "berry_phase", "solid_angle", "total_L", "total_S"], rows)


def _trajectory_mode(cfg: RunConfig) -> semiclassics.HallMode | None:
    if cfg.mode == "oam":
        return semiclassics.HallMode.oam(cfg.l + cfg.n_laser)
    if cfg.mode == "spin":
        return semiclassics.HallMode.spin(cfg.tilt, 0.5 if cfg.spin == "up" else -0.5)
    return None


def cmd_trajectory(cfg: RunConfig) -> str:
    las = cfg.laser()
    init = semiclassics.initial_state(cfg.p0, cfg.mass)
    states, rep = semiclassics.integrate_trajectory(las, _trajectory_mode(cfg), init,
                                                    cfg.cycles, cfg.steps_per_cycle)
    body = _csv(["t", "Rx", "Ry", "Rz", "Px", "Py", "Pz"], (s.as_row() for s in states))
    summary = (f"# drift mode={rep.mode.kind} charge={_fmt(rep.mode.charge)} cycles={rep.cycles} "
               f"hall={_fmt(rep.hall)} hall_peak={_fmt(rep.hall_peak)} "
               f"polarization={_fmt(rep.polarization)}\n")
    return body + summary


def cmd_compare(cfg: RunConfig) -> str:
    las = cfg.laser()
    pairs = [(lp, th) for lp in cfg.l_prime_list() for th in cfg.theta_list()]

    def run(pair):
        return semiclassics.compare_hall_shifts(las, pair[0], pair[1], cfg.p0, cfg.cycles, cfg.steps_per_cycle)

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(run, pairs))
    else:
        results = [run(p) for p in pairs]
    rows = ((c.l_prime, c.theta, c.mu, c.drift_oam, c.drift_spin, c.ratio) for c in results)
    return _csv(["l_prime", "theta", "mu", "drift_oam", "drift_spin", "ratio"], rows)


COMMANDS = {
    "profile": cmd_profile,
    "shift": cmd_shift,
    "geometry": cmd_geometry,
    "trajectory": cmd_trajectory,
    "compare": cmd_compare,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="volkov-vortex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="key = value configuration file")
        p.add_argument("--out", help="output CSV path (default: stdout)")
        for f in fields(RunConfig):
            flags = [f"--{f.name}"]
            if "_" in f.name:
                flags.append(f"--{f.name.replace('_', '-')}")
            p.add_argument(*flags, dest=f.name, default=None, metavar="VALUE")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    overrides = {f.name: getattr(args, f.name) for f in fields(RunConfig)}
    try:
        file_values = read_config_file(args.config) if args.config else {}
        cfg = resolve_config(file_values, overrides)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        text = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ArithmeticError, ConvergenceError, DomainError, semiclassics.SingularityError,
            analysis.EmptyWindowError, ValueError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.out:
        out = Path(args.out)
        out.write_text(text, encoding="utf-8")
        Path(str(out) + ".manifest").write_text(f"command = {args.command}\n" + cfg.manifest(), encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
