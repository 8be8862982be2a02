"""Scenario configuration, orchestration and tabular (CSV) output.

A :class:`Scenario` fixes the qudit dimension, the initial Cartan-sector
state, one or more couplings, the operating weight and the time grid.
:func:`run_scenario` turns it into one :class:`ResultTable` per requested
observable.  Time-series tables have ``steps + 1`` rows; the ``region`` and
``kink`` tables are per-coupling summaries.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
import yaml

from .cartan import RootVector, build_cartan_basis, sector_reflection
from .dephasing import CouplingSpec, R_from_zeta, build_R_matrix, closed_trajectory, evolve_ode
from .errors import ConfigError, IndeterminatePatternError, InvalidStateError
from .geometry import OperationSpec, classify_region, geometric_phase_series, pattern_type, weyl_transport_scenario
from .spectral import (
    branch_concurrence_series,
    detect_kink,
    effective_concurrence_series,
    purity_series,
    track_spectrum,
)
from .state import DiagonalState

OUTPUTS = ("concurrence", "purity", "eigenvalues", "effective_coeffs", "gp", "region", "kink")
SERIES_OUTPUTS = ("concurrence", "purity", "eigenvalues", "effective_coeffs", "gp")
SWEEP_AXES = ("a0", "zeta", "weight_index")
SOLVERS = ("auto", "closed", "ode")
UNDEFINED = "undefined"
NONE = "none"
MIN_STEPS = 100
DEFAULT_T_MAX = 12 * math.pi
DEFAULT_STEPS = 4000

UNITS = {
    "concurrence": "t in units of 1/(coupling energy); C dimensionless",
    "purity": "t in units of 1/(coupling energy); Tr(rho^2) dimensionless",
    "eigenvalues": "t in units of 1/(coupling energy); eigenvalues of rho tracked by continuity, eps0 = effective branch",
    "effective_coeffs": "t in units of 1/(coupling energy); amplitudes of the effective eigenvector",
    "gp": "t in units of 1/(coupling energy); phase in radians, unwrapped",
    "region": "rates A, B, C in units of coupling energy",
    "kink": "times in units of 1/(coupling energy); gap dimensionless",
}


def _version() -> str:
    try:
        from importlib.metadata import version

        return version("artifact")
    except Exception:  # not installed (e.g. run from a checkout)
        return "0.1.0"


# --- scenario --------------------------------------------------------------


def parse_time(value, name: str = "time.t_max") -> float:
    """Accept numbers and strings such as ``"12pi"``, ``"12*pi"`` or ``"pi/2"``."""
    if isinstance(value, bool):
        raise ConfigError(f"expected a number, got {value!r}", name)
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        m = re.fullmatch(r"\s*([-+]?[0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*", value)
        try:
            if m:
                coef = float(m.group(1)) if m.group(1) not in ("", "+", "-") else float(m.group(1) + "1")
                div = float(m.group(2)) if m.group(2) else 1.0
                return coef * math.pi / div
            return float(value)
        except ValueError:
            pass
    raise ConfigError(f"cannot parse {value!r} as a time", name)


def _as_complex(x, name):
    try:
        if isinstance(x, (list, tuple)) and len(x) == 2:
            return complex(float(x[0]), float(x[1]))
        return complex(x.replace(" ", "")) if isinstance(x, str) else complex(x)
    except (TypeError, ValueError):
        raise ConfigError(f"cannot parse amplitude {x!r}", name) from None


@dataclass(frozen=True)
class Scenario:
    """One simulation set-up; several couplings share the initial state and grid."""

    name: str = "custom"
    d: int = 3
    a0: float | None = 1.0
    amplitudes: tuple | None = None
    zetas: tuple = ((0.0, 0.0),)
    gammas: tuple = ()  # CouplingSpec entries, integrated with the ODE route
    weight_index: int = 1
    t_max: float = DEFAULT_T_MAX
    steps: int = DEFAULT_STEPS
    outputs: tuple = ("concurrence",)
    solver: str = "auto"

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        d = self.d
        if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 2:
            raise ConfigError(f"d must be an integer >= 2, got {d!r}", "d")
        if (self.a0 is None) == (self.amplitudes is None):
            raise ConfigError("give exactly one of a0 or amplitudes", "initial")
        if self.a0 is not None:
            if not isinstance(self.a0, (int, float)) or not 0.0 <= self.a0 <= 1.0:
                raise ConfigError(f"a0 must lie in [0, 1], got {self.a0!r}", "initial.a0")
        else:
            a = np.asarray(self.amplitudes, dtype=complex)
            if a.shape != (d,) or not np.all(np.isfinite(a)):
                raise ConfigError(f"need {d} finite amplitudes, got {self.amplitudes!r}", "initial.amplitudes")
            if abs(np.linalg.norm(a) - 1.0) > 1e-10:
                raise ConfigError(f"amplitudes not normalized (norm {np.linalg.norm(a):.12g})", "initial.amplitudes")
        if not self.zetas and not self.gammas:
            raise ConfigError("at least one coupling is required", "couplings")
        for z in self.zetas:
            if len(z) != d - 1 or not all(math.isfinite(x) for x in z):
                raise ConfigError(f"zeta {z!r} must have {d - 1} finite components", "couplings.zeta")
        for g in self.gammas:
            if len(g.gamma1) != d - 1 or len(g.gamma2) != d - 1:
                raise ConfigError(f"gamma vectors must have {d - 1} components", "couplings.gamma")
            if not g.f_const >= 0:
                raise ConfigError("bath correlation f must be >= 0", "couplings.gamma")
        if not isinstance(self.weight_index, (int, np.integer)) or not 1 <= self.weight_index <= d:
            raise ConfigError(f"weight_index must be in 1..{d}, got {self.weight_index!r}", "weight")
        if not (isinstance(self.t_max, (int, float)) and math.isfinite(self.t_max) and self.t_max > 0):
            raise ConfigError(f"t_max must be a positive number, got {self.t_max!r}", "time.t_max")
        if isinstance(self.steps, bool) or not isinstance(self.steps, (int, np.integer)) or self.steps < MIN_STEPS:
            raise ConfigError(f"steps must be an integer >= {MIN_STEPS}, got {self.steps!r}", "time.steps")
        if not self.outputs:
            raise ConfigError("no outputs requested", "outputs")
        bad = [o for o in self.outputs if o not in OUTPUTS]
        if bad:
            raise ConfigError(f"unknown outputs {bad}; choose from {list(OUTPUTS)}", "outputs")
        if "region" in self.outputs and d != 3:
            raise ConfigError("region output needs d=3", "outputs")
        if self.solver not in SOLVERS:
            raise ConfigError(f"solver must be one of {SOLVERS}", "solver")
        if self.solver == "closed" and (d > 3 or self.gammas):
            raise ConfigError("closed form needs d in {2, 3} and zeta couplings", "solver")

    def initial_state(self) -> DiagonalState:
        if self.a0 is not None:
            return DiagonalState.from_a0(float(self.a0), self.d)
        return DiagonalState(np.asarray(self.amplitudes, dtype=complex))

    @property
    def t_grid(self) -> np.ndarray:
        return np.linspace(0.0, float(self.t_max), int(self.steps) + 1)

    def coupling_labels(self) -> list[str]:
        labels = [";".join(f"{x:g}" for x in z) for z in self.zetas]
        labels += [f"gamma{k}" for k in range(len(self.gammas))]
        return labels

    # -- (de)serialization --

    @classmethod
    def from_dict(cls, cfg: dict) -> "Scenario":
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a mapping", "<root>")
        known = {"name", "d", "initial", "couplings", "weight", "time", "outputs", "solver"}
        extra = set(cfg) - known
        if extra:
            raise ConfigError(f"unknown keys {sorted(extra)}", sorted(extra)[0])
        kw = {}
        if "name" in cfg:
            kw["name"] = str(cfg["name"])
        if "d" in cfg:
            kw["d"] = cfg["d"]
        init = cfg.get("initial", {"a0": 1.0})
        if not isinstance(init, dict) or set(init) - {"a0", "amplitudes"}:
            raise ConfigError("initial must contain a0 or amplitudes", "initial")
        if "amplitudes" in init:
            kw["amplitudes"] = tuple(_as_complex(x, "initial.amplitudes") for x in init["amplitudes"])
            kw["a0"] = None
            if "a0" in init:
                raise ConfigError("give exactly one of a0 or amplitudes", "initial")
        elif "a0" in init:
            if not isinstance(init["a0"], (int, float)) or isinstance(init["a0"], bool):
                raise ConfigError(f"a0 must be a number, got {init['a0']!r}", "initial.a0")
            kw["a0"] = float(init["a0"])
        coup = cfg.get("couplings", {})
        if not isinstance(coup, dict) or set(coup) - {"zeta", "gamma"}:
            raise ConfigError("couplings must contain zeta and/or gamma lists", "couplings")
        try:
            kw["zetas"] = tuple(tuple(float(x) for x in z) for z in coup.get("zeta", []))
        except (TypeError, ValueError):
            raise ConfigError("zeta entries must be lists of numbers", "couplings.zeta") from None
        gammas = []
        for g in coup.get("gamma", []):
            try:
                gammas.append(
                    CouplingSpec(
                        tuple(float(x) for x in g["gamma1"]),
                        tuple(float(x) for x in g["gamma2"]),
                        float(g.get("f", 1.0)),
                    )
                )
            except (TypeError, ValueError, KeyError):
                raise ConfigError("gamma entries need gamma1, gamma2 (and optional f)", "couplings.gamma") from None
        kw["gammas"] = tuple(gammas)
        if "weight" in cfg:
            kw["weight_index"] = cfg["weight"]
        time = cfg.get("time", {})
        if not isinstance(time, dict) or set(time) - {"t_max", "steps"}:
            raise ConfigError("time may contain t_max and steps", "time")
        if "t_max" in time:
            kw["t_max"] = parse_time(time["t_max"])
        if "steps" in time:
            kw["steps"] = time["steps"]
        if "outputs" in cfg:
            out = cfg["outputs"]
            kw["outputs"] = (out,) if isinstance(out, str) else tuple(out)
        if "solver" in cfg:
            kw["solver"] = cfg["solver"]
        return cls(**kw)

    def to_dict(self) -> dict:
        init = (
            {"a0": self.a0}
            if self.a0 is not None
            else {"amplitudes": [[complex(x).real, complex(x).imag] for x in self.amplitudes]}
        )
        coup = {"zeta": [list(z) for z in self.zetas]}
        if self.gammas:
            coup["gamma"] = [{"gamma1": list(g.gamma1), "gamma2": list(g.gamma2), "f": g.f_const} for g in self.gammas]
        return {
            "name": self.name,
            "d": int(self.d),
            "initial": init,
            "couplings": coup,
            "weight": int(self.weight_index),
            "time": {"t_max": float(self.t_max), "steps": int(self.steps)},
            "outputs": list(self.outputs),
            "solver": self.solver,
        }


def load_config(path) -> Scenario:
    """Read a YAML scenario file."""
    text = Path(path).read_text()
    try:
        cfg = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML: {exc}", "<file>") from None
    return Scenario.from_dict(cfg)


def list_presets() -> list[str]:
    root = resources.files("qudit_dephasing") / "presets"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".yaml"))


def load_preset(name: str) -> Scenario:
    res = resources.files("qudit_dephasing") / "presets" / f"{name}.yaml"
    if not res.is_file():
        raise ConfigError(f"no preset named {name!r}; see list-presets", "preset")
    return Scenario.from_dict(yaml.safe_load(res.read_text()))


def resolve(spec: str) -> Scenario:
    """A preset name or a path to a YAML config."""
    if os.path.exists(spec):
        return load_config(spec)
    return load_preset(spec)


# --- result tables ---------------------------------------------------------


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


@dataclass
class ResultTable:
    """Named columns, row records and a metadata block (written as ``# key: value``)."""

    name: str
    columns: tuple
    rows: list
    units: str = ""
    metadata: dict = field(default_factory=dict)

    def check(self) -> None:
        for r in self.rows:
            if len(r) != len(self.columns):
                raise ValueError(f"{self.name}: row width {len(r)} != {len(self.columns)}")
            for x in r:
                if isinstance(x, (float, np.floating)) and not math.isfinite(x):
                    raise ValueError(f"{self.name}: non-finite entry {x}")

    def column(self, name: str) -> np.ndarray:
        """Column as floats; sentinels become NaN."""
        j = self.columns.index(name)
        vals = []
        for r in self.rows:
            x = r[j]
            vals.append(np.nan if isinstance(x, str) and x in (UNDEFINED, NONE) else x)
        try:
            return np.array(vals, dtype=float)
        except (TypeError, ValueError):
            return np.array(vals, dtype=object)

    def to_csv(self, target=None) -> str:
        """Write to ``target`` (path or text stream) and return the text."""
        self.check()
        buf = io.StringIO()
        buf.write(f"# table: {self.name}\n")
        if self.units:
            buf.write(f"# units: {self.units}\n")
        for k, v in self.metadata.items():
            buf.write(f"# {k}: {v}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow([_fmt(x) for x in r])
        text = buf.getvalue()
        if target is not None:
            if hasattr(target, "write"):
                target.write(text)
            else:
                Path(target).write_text(text)
        return text

    @classmethod
    def read_csv(cls, source) -> "ResultTable":
        text = source.read() if hasattr(source, "read") else Path(source).read_text()
        meta, body = {}, []
        for line in text.splitlines():
            if line.startswith("# "):
                k, _, v = line[2:].partition(": ")
                meta[k] = v
            else:
                body.append(line)
        reader = csv.reader(body)
        columns = tuple(next(reader))

        def parse(x):
            try:
                return int(x) if re.fullmatch(r"[-+]?\d+", x) else float(x)
            except ValueError:
                return x

        rows = [tuple(parse(x) for x in r) for r in reader]
        name = meta.pop("table", "")
        units = meta.pop("units", "")
        return cls(name, columns, rows, units, meta)


# --- running ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CouplingRun:
    label: str
    zeta: tuple | None
    trajectory: list = field(repr=False)
    track: object = field(repr=False)


def _trajectory(s: Scenario, state: DiagonalState, zeta=None, gamma=None):
    basis = build_cartan_basis(s.d)
    t = s.t_grid
    closed_ok = zeta is not None and s.d in (2, 3)
    if s.solver == "closed" or (s.solver == "auto" and closed_ok):
        return closed_trajectory(state, zeta, t, basis)
    R = R_from_zeta(zeta) if zeta is not None else build_R_matrix(gamma)
    return evolve_ode(state, R, basis, t)


def simulate(s: Scenario) -> list[CouplingRun]:
    """Trajectory and spectral track for every coupling of ``s``; contracts are checked."""
    state = s.initial_state()
    try:
        state.require_normalized()
    except InvalidStateError as exc:
        raise ConfigError(str(exc), "initial") from None
    runs = []
    items = [(lab, z, None) for lab, z in zip(s.coupling_labels(), s.zetas)]
    items += [(lab, None, g) for lab, g in zip(s.coupling_labels()[len(s.zetas) :], s.gammas)]
    for label, z, g in items:
        traj = _trajectory(s, state, z, g)
        for r in traj:
            r.check()
        runs.append(CouplingRun(label, z, traj, track_spectrum(traj, state)))
    return runs


def _metadata(s: Scenario, **extra) -> dict:
    meta = {
        "scenario": json.dumps(s.to_dict(), sort_keys=True),
        "version": _version(),
        "grid": f"t = linspace(0, {s.t_max:.17g}, {s.steps + 1})",
    }
    meta.update(extra)
    return meta


def _series_tables(s: Scenario, runs: list[CouplingRun]) -> dict[str, ResultTable]:
    basis = build_cartan_basis(s.d)
    t = s.t_grid
    out = {}
    for name in s.outputs:
        if name not in SERIES_OUTPUTS:
            continue
        cols, data, extra = ["t"], [t], {}
        for run in runs:
            tk = run.track
            if name == "concurrence":
                cols.append(f"C[{run.label}]")
                data.append(effective_concurrence_series(tk, basis))
            elif name == "purity":
                cols.append(f"purity[{run.label}]")
                data.append(purity_series(tk))
            elif name == "eigenvalues":
                for k in range(s.d):
                    cols.append(f"eps{k}[{run.label}]")
                    data.append(tk.eigenvalues[:, k])
            elif name == "effective_coeffs":
                u = tk.effective
                complex_u = np.max(np.abs(u.imag)) >= 1e-12
                for q in range(s.d):
                    if complex_u:
                        cols += [f"u{q}.re[{run.label}]", f"u{q}.im[{run.label}]"]
                        data += [u[:, q].real, u[:, q].imag]
                    else:
                        cols.append(f"u{q}[{run.label}]")
                        data.append(u[:, q].real)
            elif name == "gp":
                series = geometric_phase_series(tk, OperationSpec(s.weight_index), basis)
                cols.append(f"gp[{run.label}]")
                data.append(np.where(series.defined, series.unwrapped, np.nan))
        if name == "gp":
            extra["sentinel"] = f"'{UNDEFINED}' marks grid points where the phase overlap vanishes"
        rows = []
        for i in range(len(t)):
            rows.append(tuple(UNDEFINED if np.isnan(c[i]) else float(c[i]) for c in data))
        out[name] = ResultTable(name, tuple(cols), rows, UNITS[name], _metadata(s, **extra))
    return out


def _region_table(s: Scenario) -> ResultTable:
    op = OperationSpec(s.weight_index)
    cols = ("coupling", "zeta1", "zeta2", "A", "B", "C", "dominant", "weight_label", "label_source", "pattern")
    rows = []
    for label, z in zip(s.coupling_labels(), s.zetas):
        if z[0] == 0.0 and z[1] == 0.0:
            rows.append((label, 0.0, 0.0, 0.0, 0.0, 0.0, NONE, NONE, NONE, NONE))
            continue
        reg = classify_region(z)
        try:
            pat = pattern_type(reg, op)
        except IndeterminatePatternError:
            pat = "indeterminate"
        rows.append(
            (
                label,
                float(z[0]),
                float(z[1]),
                *reg.rates,
                reg.dominant or "boundary",
                reg.weight_label if reg.weight_label is not None else NONE,
                reg.label_source,
                pat,
            )
        )
    meta = _metadata(s, sentinel=f"'{NONE}' for zero coupling; 'boundary' when rates tie")
    return ResultTable("region", cols, rows, UNITS["region"], meta)


def _kink_table(s: Scenario, runs: list[CouplingRun]) -> ResultTable:
    basis = build_cartan_basis(s.d)
    cols = ("coupling", "t_peak", "t_min_gap", "gap_min", "C_peak", "separation_steps")
    rows = []
    for run in runs:
        k = detect_kink(run.track, basis)
        if k.empty:
            rows.append((run.label, NONE, NONE, NONE, NONE, NONE))
        else:
            rows.append((run.label, k.t_peak, k.t_min_gap, k.gap_min, k.C_peak, k.separation_steps))
    meta = _metadata(s, sentinel=f"'{NONE}' when C(t) has no kink on the grid")
    return ResultTable("kink", cols, rows, UNITS["kink"], meta)


def run_scenario(s: Scenario) -> dict[str, ResultTable]:
    """One table per requested output, in the order requested."""
    s.validate()
    needs_sim = any(o != "region" for o in s.outputs)
    runs = simulate(s) if needs_sim else []
    series = _series_tables(s, runs)
    out = {}
    for name in s.outputs:
        if name == "region":
            out[name] = _region_table(s)
        elif name == "kink":
            out[name] = _kink_table(s, runs)
        else:
            out[name] = series[name]
        out[name].check()
    return out


def write_tables(tables: dict[str, ResultTable], out_dir, prefix: str) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, tab in tables.items():
        p = out_dir / f"{prefix}_{name}.csv"
        tab.to_csv(p)
        paths.append(p)
    return paths


# --- sweeps ----------------------------------------------------------------


def sweep_point(base: Scenario, axis: str, value) -> Scenario:
    if axis == "a0":
        return dataclasses.replace(base, a0=float(value), amplitudes=None)
    if axis == "zeta":
        return dataclasses.replace(base, zetas=(tuple(float(x) for x in value),))
    if axis == "weight_index":
        return dataclasses.replace(base, weight_index=int(value))
    raise ConfigError(f"sweep axis must be one of {SWEEP_AXES}, got {axis!r}", "axis")


def _axis_key(axis, value):
    if axis == "zeta":
        return ";".join(f"{float(x):g}" for x in value)
    return int(value) if axis == "weight_index" else float(value)


def run_sweep(base: Scenario, axis: str, values, workers: int | None = None) -> dict[str, ResultTable]:
    """Long-format tables (axis value first) concatenated over ``values``.

    Points run in a process pool; ``workers=1`` runs them in-process.
    """
    values = list(values)
    if not values:
        raise ConfigError("empty list of sweep values", "values")
    points = [sweep_point(base, axis, v) for v in values]
    if workers == 1 or len(points) == 1:
        results = [run_scenario(p) for p in points]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_scenario, points))
    out = {}
    for name in base.outputs:
        first = results[0][name]
        rows = []
        for v, res in zip(values, results):
            key = _axis_key(axis, v)
            rows += [(key, *r) for r in res[name].rows]
        meta = _metadata(base, sweep_axis=axis, sweep_values=json.dumps([_axis_key(axis, v) for v in values]))
        out[name] = ResultTable(name, (axis, *first.columns), rows, first.units, meta)
    return out


# --- Weyl verification -----------------------------------------------------


@dataclass(frozen=True)
class WeylReport:
    original: Scenario
    transformed: Scenario
    deviations: dict
    sector_original: tuple
    sector_transformed: tuple

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values())


def _series_for_weyl(s: Scenario):
    basis = build_cartan_basis(s.d)
    runs = simulate(s)
    op = OperationSpec(s.weight_index)
    out = []
    for run in runs:
        gp = geometric_phase_series(run.track, op, basis)
        out.append(
            {
                "gp": np.where(gp.defined, gp.unwrapped, 0.0),
                "gp_defined": gp.defined,
                "concurrence": effective_concurrence_series(run.track, basis),
                "branch_concurrence": branch_concurrence_series(run.track, basis),
                "purity": purity_series(run.track),
                "eigenvalues": run.track.eigenvalues,
                "effective": run.track.effective,
            }
        )
    return out


def verify_weyl(s: Scenario, alpha: RootVector) -> WeylReport:
    """Run ``s`` and its Weyl transport; report the max deviation of every series.

    Reflection-invariant series are compared directly; the effective vector is
    compared after mapping the original through the sector reflection.
    """
    if s.d != 3:
        raise ConfigError("Weyl verification needs d=3", "d")
    s2 = weyl_transport_scenario(s, alpha)
    A, B = _series_for_weyl(s), _series_for_weyl(s2)
    O = sector_reflection(alpha, 3)
    dev = {k: 0.0 for k in ("gp", "concurrence", "branch_concurrence", "purity", "eigenvalues", "effective")}
    for a, b in zip(A, B):
        both = a["gp_defined"] & b["gp_defined"]
        if np.any(a["gp_defined"] != b["gp_defined"]):
            dev["gp"] = math.inf
        else:
            dev["gp"] = max(dev["gp"], float(np.max(np.abs(a["gp"][both] - b["gp"][both]), initial=0.0)))
        for k in ("concurrence", "branch_concurrence", "purity", "eigenvalues"):
            dev[k] = max(dev[k], float(np.max(np.abs(a[k] - b[k]))))
        dev["effective"] = max(dev["effective"], float(np.max(np.abs(a["effective"] @ O.T - b["effective"]))))
    sec1 = tuple(float(x) for x in A[0]["effective"][-1, 1:].real)
    sec2 = tuple(float(x) for x in B[0]["effective"][-1, 1:].real)
    return WeylReport(s, s2, dev, sec1, sec2)
