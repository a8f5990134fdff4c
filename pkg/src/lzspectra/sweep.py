"""Parameter sweeps over the rate and spectrum functions, with CSV/JSON output.

A sweep varies one named parameter on a uniform grid, evaluates every requested
method at each grid point and records the outcome per row.  Pole hits and
accuracy failures are recorded in a ``status`` column instead of aborting.
"""

from __future__ import annotations

import enum
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import lzsm_rate as lz
from . import qd_spectra as qd
from .errors import AccuracyError, DomainError, PoleError, SpectraError

SCHEMA_VERSION = 1
METHODS = ("series", "exact", "airy", "airy_asym", "asym", "small_x")


class UsageError(SpectraError, ValueError):
    """Malformed sweep specification or CLI input."""


class Target(enum.Enum):
    LzsmRate = "LzsmRate"
    QdPower = "QdPower"
    SidebandLines = "SidebandLines"
    CoherentLines = "CoherentLines"
    InversionHarmonics = "InversionHarmonics"
    Mollow = "Mollow"
    FourierBias = "FourierBias"
    FourierAmplitude = "FourierAmplitude"
    FourierDouble = "FourierDouble"


# ---------------------------------------------------------------------------
# parameter handling


# each pair: physical name, dimensionless alias (scaled by omega)
_QUBIT_CHOICES = (("bias", "eps"), ("gamma2", "gamma"), ("amplitude", "x"))


def _qubit(p: Mapping[str, float]) -> lz.DrivenQubit:
    delta = p.get("delta", 1.0)
    omega = p.get("omega", 1.0)
    vals = {}
    for phys, dimless in _QUBIT_CHOICES:
        if phys in p:
            vals[phys] = p[phys]
        else:
            vals[phys] = p[dimless] * omega
    return lz.DrivenQubit(delta=delta, omega=omega, **vals)


def _saw(p) -> qd.SawDrive:
    return qd.SawDrive(p.get("omega0", 0.0), p["omega_s"], p["chi"], p["gamma"])


def _field(p) -> qd.ModulatedField:
    return qd.ModulatedField(p["Omega0"], p["omega1"], p["a"], p["gamma"])


def _dot(p) -> qd.BichromaticDot:
    return qd.BichromaticDot(
        d11=p["d11"], d22=p["d22"], d12=p["d12"], E1=p["E1"], E2=p["E2"],
        omega1=p["omega1"], omega2=p["omega2"], omega0=p.get("omega0", 0.0),
        n=int(p["n"]), gamma=p["gamma"], deltaS=p.get("deltaS", 0.0),
        sign=int(p.get("sign", 1)),
    )


@dataclass(frozen=True)
class _TargetInfo:
    required: Tuple[Tuple[str, ...], ...]  # each entry: any one of these names
    optional: Tuple[str, ...]
    methods: Dict[str, Callable]
    lines: bool = False


def _rate_methods():
    def wrap(fn):
        def f(p):
            r = fn(_qubit(p))
            return r.value, r.est_error

        return f

    return {
        "series": wrap(lambda q: lz.rate_series(q, 1e-12)),
        "exact": wrap(lz.rate_exact),
        "airy": wrap(lz.rate_airy_approx),
        "airy_asym": wrap(lz.rate_airy_asym),
        "asym": wrap(lz.rate_asym),
        "small_x": lambda p: (lz.rate_small_x(_qubit(p), int(p.get("m_max", 8))).value, math.nan),
    }


def _qd_methods():
    return {
        "series": lambda p: (qd.power_spectrum_series(_saw(p), p["omega"]), math.nan),
        "exact": lambda p: (qd.power_spectrum_exact(_saw(p), p["omega"]), math.nan),
        "asym": lambda p: (qd.power_spectrum_asym(_saw(p), p["omega"]), math.nan),
    }


def _sideband(p, method) -> List[Tuple[int, float, float]]:
    d = _saw(p)
    lc = qd.LaserCoupling.for_drive(d, p["omega_L"])
    ell_max = int(p.get("ell_max", qd.default_ell_max(d.chi)))
    if method == "asym":
        spec = qd.sideband_lines_asym(d, lc, ell_max)
        return [(ln.index, ln.frequency, ln.weight) for ln in spec]
    out = []
    for ell in range(-ell_max, ell_max + 1):
        w = qd.sideband_weight(d, lc, ell) if method == "exact" else qd.sideband_weight_series(d, lc, ell)
        out.append((ell, lc.omega_L - ell * d.omega_s, w))
    return out


def _coherent(p, method) -> List[Tuple[int, float, float]]:
    f = _field(p)
    k_max = int(p.get("k_max", 3))
    spec = qd.coherent_lines(f, p["omega_L"], k_max)
    return [(ln.index, ln.frequency, ln.weight) for ln in spec]


def _harmonics(p, method) -> List[Tuple[int, float, float]]:
    f = _field(p)
    k_max = int(p.get("k_max", 3))
    return [(h.k, h.k * f.omega1, h.beta) for h in qd.inversion_harmonics(f, k_max)]


def _mollow_methods():
    return {
        "series": lambda p: (qd.mollow_spectrum_series(_dot(p), p["omega"]), math.nan),
        "exact": lambda p: (qd.mollow_spectrum(_dot(p), p["omega"]), math.nan),
    }


def _fourier_bias_methods():
    def run(method):
        return lambda p: (lz.fourier_in_bias(_qubit(p), p["k_E"], method), math.nan)

    return {"exact": run(lz.FourierMethod.Closed), "series": run(lz.FourierMethod.GrafSeries)}


def _fourier_amplitude(p):
    # transform of the rate itself: W = -Im(...)/2 and the cosine transform is real-linear
    return -0.5 * lz.fourier_in_amplitude(_qubit(p), p["k_x"]).imag, math.nan


def _fourier_double(p):
    r = lz.fourier_double(_qubit(p), p["k_E"], p["k_A"])
    return r.value, math.nan, (None if r.support == "inside" else r.support)


_QUBIT_REQ = (("bias", "eps"), ("gamma2", "gamma"), ("amplitude", "x"))
_QUBIT_OPT = ("delta", "omega", "m_max")

TARGETS: Dict[Target, _TargetInfo] = {
    Target.LzsmRate: _TargetInfo(_QUBIT_REQ, _QUBIT_OPT, _rate_methods()),
    Target.QdPower: _TargetInfo(
        (("omega_s",), ("chi",), ("gamma",), ("omega",)), ("omega0",), _qd_methods()
    ),
    Target.SidebandLines: _TargetInfo(
        (("omega_s",), ("chi",), ("gamma",), ("omega_L",)),
        ("omega0", "ell_max"),
        {m: (lambda m: lambda p: _sideband(p, m))(m) for m in ("exact", "series", "asym")},
        lines=True,
    ),
    Target.CoherentLines: _TargetInfo(
        (("Omega0",), ("omega1",), ("a",), ("gamma",), ("omega_L",)),
        ("k_max",),
        {"exact": lambda p: _coherent(p, "exact")},
        lines=True,
    ),
    Target.InversionHarmonics: _TargetInfo(
        (("Omega0",), ("omega1",), ("a",), ("gamma",)),
        ("k_max",),
        {"exact": lambda p: _harmonics(p, "exact")},
        lines=True,
    ),
    Target.Mollow: _TargetInfo(
        tuple((n,) for n in ("d11", "d22", "d12", "E1", "E2", "omega1", "omega2", "n", "gamma", "omega")),
        ("omega0", "deltaS", "sign"),
        _mollow_methods(),
    ),
    Target.FourierBias: _TargetInfo(_QUBIT_REQ + (("k_E",),), _QUBIT_OPT, _fourier_bias_methods()),
    Target.FourierAmplitude: _TargetInfo(_QUBIT_REQ + (("k_x",),), _QUBIT_OPT, {"exact": _fourier_amplitude}),
    Target.FourierDouble: _TargetInfo(
        _QUBIT_REQ + (("k_E",), ("k_A",)), _QUBIT_OPT, {"exact": _fourier_double}
    ),
}


# ---------------------------------------------------------------------------
# spec


@dataclass(frozen=True)
class SweepSpec:
    target: Target
    variable: str
    start: float
    stop: float
    points: int
    fixed: Mapping[str, float] = field(default_factory=dict)
    methods: Tuple[str, ...] = ("exact",)

    def __post_init__(self):
        try:
            object.__setattr__(self, "target", Target(self.target))
        except ValueError:
            raise UsageError(f"target: unknown target {self.target!r}") from None
        object.__setattr__(self, "methods", tuple(self.methods))
        object.__setattr__(self, "fixed", dict(self.fixed))
        info = TARGETS[self.target]
        if not isinstance(self.points, int) or isinstance(self.points, bool) or self.points < 2:
            raise UsageError(f"points: need an integer >= 2, got {self.points!r}")
        for name in ("start", "stop"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise UsageError(f"{name}: need a finite number, got {v!r}")
        if not self.start < self.stop:
            raise UsageError(f"start: must be < stop ({self.start} >= {self.stop})")
        if not self.methods:
            raise UsageError("methods: at least one method is required")
        for m in self.methods:
            if m not in METHODS:
                raise UsageError(f"methods: unknown method {m!r}")
            if m not in info.methods:
                raise UsageError(f"methods: {m!r} is not available for target {self.target.value}")
        if len(set(self.methods)) != len(self.methods):
            raise UsageError("methods: duplicate method")
        known = {n for group in info.required for n in group} | set(info.optional)
        if self.variable not in known:
            raise UsageError(f"variable: {self.variable!r} is not a parameter of {self.target.value}")
        for k, v in self.fixed.items():
            if k not in known:
                raise UsageError(f"fixed: {k!r} is not a parameter of {self.target.value}")
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                raise UsageError(f"fixed: {k!r} needs a finite number, got {v!r}")
        present = set(self.fixed) | {self.variable}
        for group in info.required:
            if not present & set(group):
                raise UsageError(f"fixed: missing required parameter {' or '.join(group)!r}")

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "target": self.target.value,
            "variable": self.variable,
            "start": self.start,
            "stop": self.stop,
            "points": self.points,
            "fixed": dict(self.fixed),
            "methods": list(self.methods),
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "SweepSpec":
        if not isinstance(d, Mapping):
            raise UsageError("config: top level must be a JSON object")
        if d.get("schema") != SCHEMA_VERSION:
            raise UsageError(f"schema: expected {SCHEMA_VERSION}, got {d.get('schema')!r}")
        extra = set(d) - {"schema", "target", "variable", "start", "stop", "points", "fixed", "methods"}
        if extra:
            raise UsageError(f"{sorted(extra)[0]}: unknown config field")
        for key in ("target", "variable", "start", "stop", "points"):
            if key not in d:
                raise UsageError(f"{key}: missing from config")
        return cls(
            target=d["target"],
            variable=d["variable"],
            start=d["start"],
            stop=d["stop"],
            points=d["points"],
            fixed=d.get("fixed", {}),
            methods=tuple(d.get("methods", ("exact",))),
        )


# ---------------------------------------------------------------------------
# evaluation


@dataclass(frozen=True)
class SweepTable:
    """Sweep results: ``columns`` names each entry of every row."""

    spec: SweepSpec
    columns: Tuple[str, ...]
    rows: Tuple[tuple, ...]

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows], dtype=float)

    @property
    def statuses(self) -> List[str]:
        i = self.columns.index("status")
        return [r[i] for r in self.rows]


def _status_of(exc: Exception) -> str:
    if isinstance(exc, PoleError):
        return "pole"
    if isinstance(exc, AccuracyError):
        return "accuracy"
    return "domain"


def _evaluate_point(spec: SweepSpec, value: float):
    info = TARGETS[spec.target]
    params = dict(spec.fixed)
    params[spec.variable] = float(value)
    results = {}
    statuses = []
    for m in spec.methods:
        try:
            out = info.methods[m](params)
        except (SpectraError, ValueError, ZeroDivisionError, OverflowError) as exc:
            results[m] = exc
            statuses.append(_status_of(exc))
            continue
        if not info.lines and len(out) == 3:
            if out[2]:
                statuses.append(out[2])
            out = out[:2]
        results[m] = out
    return results, statuses


def _thread_count() -> int:
    raw = os.environ.get("SPECTRA_THREADS")
    if raw is None or raw == "":
        return min(4, os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise UsageError(f"SPECTRA_THREADS: need a positive integer, got {raw!r}")
    return n


def _merge_status(statuses: Sequence[str]) -> str:
    uniq = []
    for s in statuses:
        if s not in uniq:
            uniq.append(s)
    return "ok" if not uniq else "+".join(uniq)


def run_sweep(spec: SweepSpec, threads: Optional[int] = None) -> SweepTable:
    """Evaluate the sweep; rows come back in grid order whatever the thread count."""
    info = TARGETS[spec.target]
    n_threads = threads if threads is not None else _thread_count()
    grid = spec.grid
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            evaluated = list(pool.map(lambda v: _evaluate_point(spec, v), grid))
    else:
        evaluated = [_evaluate_point(spec, v) for v in grid]
    gap = "series" in spec.methods and "exact" in spec.methods
    if info.lines:
        return _line_table(spec, grid, evaluated, gap)
    columns = [spec.variable]
    for m in spec.methods:
        columns += [m, f"{m}_err"]
    if gap:
        columns.append("rel_gap")
    columns.append("status")
    rows = []
    for v, (results, statuses) in zip(grid, evaluated):
        row = [float(v)]
        for m in spec.methods:
            r = results[m]
            row += [math.nan, math.nan] if isinstance(r, Exception) else [float(r[0]), float(r[1])]
        if gap:
            row.append(_rel_gap(results["exact"], results["series"]))
        row.append(_merge_status(statuses))
        rows.append(tuple(row))
    return SweepTable(spec, tuple(columns), tuple(rows))


def _rel_gap(a, b) -> float:
    if isinstance(a, Exception) or isinstance(b, Exception):
        return math.nan
    a, b = a[0], b[0]
    if b == 0:
        return 0.0 if a == 0 else math.inf
    return abs(a - b) / abs(b)


def _line_table(spec, grid, evaluated, gap) -> SweepTable:
    columns = [spec.variable, "ell", "frequency"]
    for m in spec.methods:
        columns += [m, f"{m}_err"]
    if gap:
        columns.append("rel_gap")
    columns.append("status")
    rows = []
    for v, (results, statuses) in zip(grid, evaluated):
        lines = next((r for r in results.values() if not isinstance(r, Exception)), None)
        status = _merge_status(statuses)
        if lines is None:
            row = [float(v), math.nan, math.nan]
            for _ in spec.methods:
                row += [math.nan, math.nan]
            if gap:
                row.append(math.nan)
            rows.append(tuple(row + [status]))
            continue
        for i, (ell, freq, _) in enumerate(lines):
            row = [float(v), int(ell), float(freq)]
            for m in spec.methods:
                r = results[m]
                row += [math.nan, math.nan] if isinstance(r, Exception) else [float(r[i][2]), math.nan]
            if gap:
                a, b = results["exact"], results["series"]
                row.append(
                    math.nan
                    if isinstance(a, Exception) or isinstance(b, Exception)
                    else _rel_gap((a[i][2],), (b[i][2],))
                )
            rows.append(tuple(row + [status]))
    return SweepTable(spec, tuple(columns), tuple(rows))


def exit_code(table: SweepTable) -> int:
    statuses = table.statuses
    if statuses and all(s == "pole" for s in statuses):
        return 4
    if any("accuracy" in s for s in statuses):
        return 3
    return 0


# ---------------------------------------------------------------------------
# output


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return format(float(v), ".17g")


def to_csv(table: SweepTable) -> str:
    buf = io.StringIO()
    buf.write(",".join(table.columns) + "\n")
    for row in table.rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def to_json(table: SweepTable) -> str:
    doc = {
        "schema": SCHEMA_VERSION,
        "spec": table.spec.to_dict(),
        "columns": list(table.columns),
        "rows": [[_json_value(v) for v in row] for row in table.rows],
    }
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def table_from_json(text: str) -> SweepTable:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA_VERSION:
        raise UsageError(f"schema: expected {SCHEMA_VERSION}, got {doc.get('schema')!r}")
    spec = SweepSpec.from_dict(doc["spec"])
    rows = tuple(
        tuple(math.nan if v is None else v for v in row) for row in doc["rows"]
    )
    return SweepTable(spec, tuple(doc["columns"]), rows)


# ---------------------------------------------------------------------------
# analysis


@dataclass(frozen=True)
class Extremum:
    location: float
    value: float
    kind: str  # "max" or "min"


def detect_extrema(table: SweepTable, column: str) -> List[Extremum]:
    """Interior local extrema by a 3-point test, refined by a parabola through the triple.

    Consecutive extrema of the same kind (flat or noisy stretches) are merged,
    keeping the more extreme one, so kinds alternate.
    """
    if len(table.rows) < 5:
        raise UsageError(f"rows: extrema detection needs at least 5 rows, got {len(table.rows)}")
    if column not in table.columns:
        raise UsageError(f"column: {column!r} not in table")
    xs = table.column(table.columns[0])
    ys = table.column(column)
    found: List[Extremum] = []
    for i in range(1, len(ys) - 1):
        y0, y1, y2 = ys[i - 1], ys[i], ys[i + 1]
        if not (math.isfinite(y0) and math.isfinite(y1) and math.isfinite(y2)):
            continue
        if y1 > y0 and y1 >= y2:
            kind = "max"
        elif y1 < y0 and y1 <= y2:
            kind = "min"
        else:
            continue
        loc, val = _parabola_vertex(xs[i - 1 : i + 2], ys[i - 1 : i + 2])
        ext = Extremum(loc, val, kind)
        if found and found[-1].kind == kind:
            prev = found[-1]
            better = (val > prev.value) if kind == "max" else (val < prev.value)
            if better:
                found[-1] = ext
            continue
        found.append(ext)
    return found


def _parabola_vertex(x, y) -> Tuple[float, float]:
    x0, x1, x2 = x
    y0, y1, y2 = y
    d0, d2 = x0 - x1, x2 - x1
    denom = d0 * d2 * (d0 - d2)
    a = (d2 * (y0 - y1) - d0 * (y2 - y1)) / denom
    b = (d0 * d0 * (y2 - y1) - d2 * d2 * (y0 - y1)) / denom
    if a == 0:
        return float(x1), float(y1)
    t = -b / (2 * a)
    t = min(max(t, min(d0, d2)), max(d0, d2))
    return float(x1 + t), float(y1 + b * t + a * t * t)


def oscillation_amplitude(v: np.ndarray, y: np.ndarray) -> float:
    """Peak-to-trough of ``y`` after removing a least-squares trend ``c0 + c1/v``.

    The non-oscillating part of the large-argument asymptotics decays like
    ``1/v``, so this isolates the oscillation.  Grids touching ``v <= 0`` fall
    back to a linear trend.
    """
    v = np.asarray(v, dtype=float)
    y = np.asarray(y, dtype=float)
    ok = np.isfinite(y)
    v, y = v[ok], y[ok]
    if v.size < 3:
        raise UsageError("need at least 3 finite samples for an oscillation amplitude")
    trend = 1.0 / v if np.all(v > 0) else v
    basis = np.vstack([np.ones_like(v), trend]).T
    coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
    resid = y - basis @ coef
    return float(resid.max() - resid.min())


def suppression_report(spec_a: SweepSpec, spec_b: SweepSpec, method: Optional[str] = None, threads=None) -> float:
    """Oscillation amplitude of sweep ``a`` over that of sweep ``b`` on a shared grid."""
    for name in ("variable", "start", "stop", "points"):
        if getattr(spec_a, name) != getattr(spec_b, name):
            raise UsageError(f"{name}: sweeps must share variable and grid")
    if spec_a.target is not spec_b.target:
        raise UsageError("target: sweeps must share the target")
    if TARGETS[spec_a.target].lines:
        raise UsageError("target: suppression needs a scalar target")
    m = method or spec_a.methods[0]
    if m not in spec_a.methods or m not in spec_b.methods:
        raise UsageError(f"methods: {m!r} must be requested by both sweeps")
    ta, tb = run_sweep(spec_a, threads), run_sweep(spec_b, threads)
    amp_a = oscillation_amplitude(ta.column(spec_a.variable), ta.column(m))
    amp_b = oscillation_amplitude(tb.column(spec_b.variable), tb.column(m))
    if amp_a == amp_b:
        return 1.0
    return amp_a / amp_b
