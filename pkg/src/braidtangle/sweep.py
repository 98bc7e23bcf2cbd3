"""3-tangle values over rectangular two-parameter grids, with CSV/SVG output.

Two canned scans are provided: ``sweep_theta`` over the two rapidities at
fixed (p, q), and ``sweep_pq`` over (p, q) at fixed rapidities.  Both are
specializations of the generic ``run_grid``, optimized to share the
expensive q-Pochhammer phase evaluations: the rapidity scan caches phases
per distinct rapidity value, the (p, q) scan evaluates whole constant-p
rows of phases with numpy.

Grid nodes whose parameters fall outside the admissible domain (or that
hit a product pole) are recorded as NaN, never raised.  CSV output is
long-format with a ``#`` metadata preamble and is byte-reproducible for
identical inputs; SVG output is a standalone per-node heatmap on a fixed
five-stop color ramp.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Mapping, Union
from xml.sax.saxutils import escape

import numpy as np

from .braid import (
    EVEN_LABELS,
    BraidParams,
    ProductState,
    braid_apply_product,
    braid_coeffs,
    coeff_quad,
    product_state_vector,
)
from .errors import BraidTangleError, DomainError
from .qseries import DEFAULT_TOL, POLE_THRESHOLD, QTolerance
from .tangle import hyperdeterminant, tangle_even, tangle_generic
from .vertex import (
    SINGULAR_THRESHOLD,
    UNIT_MODULUS_TOL,
    ModelParams,
    canonical_angle,
    eight_vertex_phases,
)

PARAM_FIELDS = ("p", "q", "theta", "theta_prime")

StateSpec = Union[int, ProductState]

# Heatmap color ramp: equally spaced stops at tau = 0, .25, .5, .75, 1,
# linearly interpolated per RGB channel; NaN nodes render gray.
COLOR_STOPS = ((68, 1, 84), (59, 82, 139), (33, 145, 140), (94, 201, 98), (253, 231, 37))
MISSING_COLOR = (128, 128, 128)


@dataclass(frozen=True)
class AxisSpec:
    """One scan axis: parameter name and an inclusive uniform range."""

    name: str
    lo: float
    hi: float
    n: int

    def __post_init__(self) -> None:
        if self.name not in PARAM_FIELDS:
            raise DomainError(f"axis name must be one of {PARAM_FIELDS}, got {self.name!r}")
        if self.n < 2:
            raise DomainError(f"axis needs at least 2 points, got n={self.n}")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise DomainError(f"axis range must satisfy lo < hi, got [{self.lo}, {self.hi}]")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)


@dataclass(frozen=True)
class GridSpec:
    """Two scan axes, fixed values for the remaining parameters, and the
    initial state (even basis index 1..4, or an arbitrary product state).

    Individual nodes are allowed to violate domain constraints; they are
    recorded as missing when evaluated.
    """

    axis1: AxisSpec
    axis2: AxisSpec
    fixed: Mapping[str, float]
    state: StateSpec = 1

    def __post_init__(self) -> None:
        if self.axis1.name == self.axis2.name:
            raise DomainError(f"scan axes must differ, both are {self.axis1.name!r}")
        expected = set(PARAM_FIELDS) - {self.axis1.name, self.axis2.name}
        if set(self.fixed) != expected:
            raise DomainError(
                f"fixed parameters must be exactly {sorted(expected)}, got {sorted(self.fixed)}"
            )
        if isinstance(self.state, int) and not 1 <= self.state <= 4:
            raise DomainError(f"basis state index must be 1..4, got {self.state}")


@dataclass
class SweepResult:
    """Grid of tau values (NaN marks missing nodes) plus run metadata."""

    grid: GridSpec
    values: np.ndarray
    metadata: dict


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}j"


def state_label(state: StateSpec) -> str:
    if isinstance(state, int):
        return EVEN_LABELS[state - 1]
    parts = ",".join(
        _fmt_complex(v)
        for v in (state.x1, state.x1b, state.y1, state.y1b, state.z1, state.z1b)
    )
    return f"product({parts})"


def _make_metadata(grid: GridSpec, tol: QTolerance) -> dict:
    return {
        "fixed": dict(grid.fixed),
        "state": state_label(grid.state),
        "tolerance": {"eps": tol.eps, "max_terms": tol.max_terms},
        "created": datetime.now(timezone.utc).isoformat(),
    }


def _node_tau(bp: BraidParams, state: StateSpec, tol: QTolerance) -> float:
    if isinstance(state, int):
        return tangle_even(braid_coeffs(bp, state, tol))
    return tangle_generic(braid_apply_product(bp, state, tol))


def run_grid(grid: GridSpec, tol: QTolerance = DEFAULT_TOL) -> SweepResult:
    """Evaluate tau node by node; the straightforward, uncached reference path."""
    v1 = grid.axis1.values()
    v2 = grid.axis2.values()
    values = np.full((grid.axis1.n, grid.axis2.n), np.nan)
    for i, a1 in enumerate(v1):
        for j, a2 in enumerate(v2):
            params = dict(grid.fixed)
            params[grid.axis1.name] = float(a1)
            params[grid.axis2.name] = float(a2)
            try:
                values[i, j] = _node_tau(BraidParams(**params), grid.state, tol)
            except BraidTangleError:
                continue
    return SweepResult(grid, values, _make_metadata(grid, tol))


# ---------------------------------------------------------------------------
# rapidity scan (theta, theta'), phases cached per distinct rapidity


def _entries_or_none(p: float, q: float, theta: float, tol: QTolerance):
    """Vertex entries (a, d, c, b) at one rapidity, or None if out of domain."""
    try:
        quad = eight_vertex_phases(ModelParams(p, q, theta), tol)
    except BraidTangleError:
        return None
    return (quad.a, quad.d, quad.c, quad.b)


def _tau_from_entries(e1, e2, e12, state: StateSpec) -> float:
    if isinstance(state, int):
        al, be, ga, de = coeff_quad(e1, e2, e12, state)
        return 16.0 * abs(al * be * ga * de)
    vec = product_state_vector(state)
    out = np.empty(8, dtype=complex)
    for i in (1, 2, 3, 4):
        col = np.array(coeff_quad(e1, e2, e12, i))
        if i == 1:
            even = col * vec[0]
            odd = col * vec[4]
        else:
            even += col * vec[i - 1]
            odd += col * vec[i + 3]
    out[:4] = even
    out[4:] = odd
    return 4.0 * abs(hyperdeterminant(out))


def sweep_theta(
    p: float,
    q: float,
    n: int,
    state: StateSpec = 1,
    theta_range: tuple[float, float] = (-math.pi, math.pi),
    theta_prime_range: tuple[float, float] = (-math.pi, math.pi),
    tol: QTolerance = DEFAULT_TOL,
) -> SweepResult:
    """tau over an n x n grid of (theta, theta') at fixed (p, q).

    Axis endpoints are inclusive with uniform spacing, so symmetric ranges
    with odd n place the theta' = -theta anti-diagonal exactly on grid.
    """
    ModelParams(p, q, 0.0)  # validate the fixed parameters up front
    grid = GridSpec(
        axis1=AxisSpec("theta", theta_range[0], theta_range[1], n),
        axis2=AxisSpec("theta_prime", theta_prime_range[0], theta_prime_range[1], n),
        fixed={"p": p, "q": q},
        state=state,
    )
    t1 = grid.axis1.values()
    t2 = grid.axis2.values()
    ax1 = [_entries_or_none(p, q, float(t), tol) for t in t1]
    ax2 = [_entries_or_none(p, q, float(t), tol) for t in t2]
    sums: dict[float, object] = {}
    values = np.full((n, n), np.nan)
    for i in range(n):
        e1 = ax1[i]
        if e1 is None:
            continue
        for j in range(n):
            e2 = ax2[j]
            if e2 is None:
                continue
            total = float(t1[i] + t2[j])
            if total not in sums:
                sums[total] = _entries_or_none(p, q, total, tol)
            e12 = sums[total]
            if e12 is None:
                continue
            values[i, j] = _tau_from_entries(e1, e2, e12, state)
    return SweepResult(grid, values, _make_metadata(grid, tol))


# ---------------------------------------------------------------------------
# (p, q) scan at fixed rapidities, vectorized along constant-p rows


def _ratio_row(xn1, xn2, xd1, xd2, a: float, tol: QTolerance) -> np.ndarray:
    """Elementwise product ratio over arrays of arguments; NaN marks poles."""
    n1 = np.asarray(xn1, dtype=complex).copy()
    n2 = np.asarray(xn2, dtype=complex).copy()
    d1 = np.asarray(xd1, dtype=complex).copy()
    d2 = np.asarray(xd2, dtype=complex).copy()
    scale = np.max(np.stack([np.abs(n1), np.abs(n2), np.abs(d1), np.abs(d2)]), axis=0)
    out = np.ones(n1.shape, dtype=complex)
    power = 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        for _ in range(tol.max_terms):
            f1 = 1.0 - d1
            f2 = 1.0 - d2
            pole = (np.abs(f1) < POLE_THRESHOLD) | (np.abs(f2) < POLE_THRESHOLD)
            if pole.any():
                out[pole] = np.nan
            out *= (1.0 - n1) * (1.0 - n2) / (f1 * f2)
            n1 *= a
            n2 *= a
            d1 *= a
            d2 *= a
            power *= a
            if (scale * power < tol.eps).all():
                return out
    out[scale * power >= tol.eps] = np.nan
    return out


def _unit_row(arr: np.ndarray) -> np.ndarray:
    mod = np.abs(arr)
    good = np.abs(mod - 1.0) <= UNIT_MODULUS_TOL
    with np.errstate(invalid="ignore"):
        return np.where(good, arr / mod, np.nan)


def _entries_rows(p: float, q: np.ndarray, theta: float, tol: QTolerance):
    """Vertex entries (a, d, c, b) as arrays over q, for fixed p and rapidity."""
    theta = canonical_angle(theta)
    z = cmath.exp(1j * theta)
    zi = cmath.exp(-1j * theta)
    zh = cmath.exp(0.5j * theta)
    zhi = cmath.exp(-0.5j * theta)
    sp = math.sqrt(p)
    sq = np.sqrt(q)
    apd = _unit_row(
        _ratio_row(-sp / q * z, -sp * q * zi, -sp / q * zi, -sp * q * z, p, tol)
    )
    amd = _unit_row(
        _ratio_row(sp / q * z, sp * q * zi, sp / q * zi, sp * q * z, p, tol)
    )
    den_plus = sq * zh + zhi / sq
    den_minus = sq * zh - zhi / sq
    with np.errstate(divide="ignore", invalid="ignore"):
        pref_plus = np.where(
            np.abs(den_plus) < SINGULAR_THRESHOLD, np.nan, (sq * zhi + zh / sq) / den_plus
        )
        pref_minus = np.where(
            np.abs(den_minus) < SINGULAR_THRESHOLD, np.nan, (sq * zhi - zh / sq) / den_minus
        )
    cpb = _unit_row(
        pref_plus * _ratio_row(-p / q * z, -p * q * zi, -p / q * zi, -p * q * z, p, tol)
    )
    cmb = _unit_row(
        pref_minus * _ratio_row(p / q * z, p * q * zi, p / q * zi, p * q * z, p, tol)
    )
    return ((apd + amd) / 2.0, (apd - amd) / 2.0, (cpb + cmb) / 2.0, (cpb - cmb) / 2.0)


def sweep_pq(
    theta: float,
    theta_prime: float,
    p_range: tuple[float, float] = (0.01, 0.9),
    q_range: tuple[float, float] = (0.05, 0.95),
    n: int = 101,
    state: StateSpec = 1,
    tol: QTolerance = DEFAULT_TOL,
) -> SweepResult:
    """tau over an n x n grid of (p, q) at fixed rapidities.

    Both ranges must sit strictly inside (0, 1).
    """
    for label, (lo, hi) in (("p", p_range), ("q", q_range)):
        if not 0.0 < lo < hi < 1.0:
            raise DomainError(f"{label} range must sit inside (0, 1), got [{lo}, {hi}]")
    grid = GridSpec(
        axis1=AxisSpec("p", p_range[0], p_range[1], n),
        axis2=AxisSpec("q", q_range[0], q_range[1], n),
        fixed={"theta": theta, "theta_prime": theta_prime},
        state=state,
    )
    p_values = grid.axis1.values()
    q_values = grid.axis2.values()
    total = theta + theta_prime
    values = np.full((n, n), np.nan)
    with np.errstate(invalid="ignore"):
        for i, pv in enumerate(p_values):
            pv = float(pv)
            e1 = _entries_rows(pv, q_values, theta, tol)
            e2 = _entries_rows(pv, q_values, theta_prime, tol)
            e12 = _entries_rows(pv, q_values, total, tol)
            if isinstance(state, int):
                al, be, ga, de = coeff_quad(e1, e2, e12, state)
                values[i, :] = 16.0 * np.abs(al * be * ga * de)
            else:
                vec = product_state_vector(state)
                cols = [np.stack(coeff_quad(e1, e2, e12, k)) for k in (1, 2, 3, 4)]
                even = sum(col * vec[k] for k, col in enumerate(cols))
                odd = sum(col * vec[k + 4] for k, col in enumerate(cols))
                for j in range(n):
                    node = np.concatenate([even[:, j], odd[:, j]])
                    values[i, j] = 4.0 * abs(hyperdeterminant(node))
    return SweepResult(grid, values, _make_metadata(grid, tol))


# ---------------------------------------------------------------------------
# output


def _open_for_write(dest):
    if isinstance(dest, (str, Path)):
        return open(dest, "w", encoding="utf-8", newline=""), True
    return dest, False


def write_csv(result: SweepResult, dest) -> None:
    """Write a sweep as long-format CSV: one ``axis1,axis2,tau`` row per node.

    A ``#`` comment preamble carries the grid geometry, fixed parameters,
    state and tolerance.  Values are printed with 12 significant digits;
    missing nodes keep their row with an empty tau field.  Output is
    byte-identical for identical grids and tolerances (no timestamps).
    """
    g = result.grid
    handle, owned = _open_for_write(dest)
    try:
        w = handle.write
        w(f"# axis1: name={g.axis1.name} lo={_fmt(g.axis1.lo)} hi={_fmt(g.axis1.hi)} n={g.axis1.n}\n")
        w(f"# axis2: name={g.axis2.name} lo={_fmt(g.axis2.lo)} hi={_fmt(g.axis2.hi)} n={g.axis2.n}\n")
        fixed = " ".join(f"{k}={_fmt(v)}" for k, v in sorted(g.fixed.items()))
        w(f"# fixed: {fixed}\n")
        w(f"# state: {result.metadata['state']}\n")
        tol = result.metadata["tolerance"]
        w(f"# tolerance: eps={tol['eps']:g} max_terms={tol['max_terms']}\n")
        w(f"{g.axis1.name},{g.axis2.name},tau\n")
        v1 = g.axis1.values()
        v2 = g.axis2.values()
        for i in range(g.axis1.n):
            for j in range(g.axis2.n):
                tau = result.values[i, j]
                tau_txt = "" if math.isnan(tau) else _fmt(tau)
                w(f"{_fmt(v1[i])},{_fmt(v2[j])},{tau_txt}\n")
    finally:
        if owned:
            handle.close()


def ramp_color(v: float) -> tuple[int, int, int]:
    """Map tau (clamped to [0, 1]) onto the five-stop ramp; NaN is gray."""
    if math.isnan(v):
        return MISSING_COLOR
    v = min(1.0, max(0.0, v))
    x = 4.0 * v
    k = min(int(x), 3)
    t = x - k
    lo, hi = COLOR_STOPS[k], COLOR_STOPS[k + 1]
    return tuple(round(lo[ch] + t * (hi[ch] - lo[ch])) for ch in range(3))


def write_svg_heatmap(result: SweepResult, dest) -> None:
    """Render a sweep as a standalone SVG heatmap, one rect per grid node.

    axis1 runs left to right, axis2 bottom to top; axis names and range
    endpoints label the margins.
    """
    g = result.grid
    n1, n2 = g.axis1.n, g.axis2.n
    cell = max(2, min(12, 600 // max(n1, n2)))
    ml, mr, mt, mb = 64, 16, 16, 48
    width = ml + n1 * cell + mr
    height = mt + n2 * cell + mb
    handle, owned = _open_for_write(dest)
    try:
        w = handle.write
        w('<?xml version="1.0" encoding="UTF-8"?>\n')
        w(
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">\n'
        )
        w(f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>\n')
        for i in range(n1):
            x = ml + i * cell
            for j in range(n2):
                y = mt + (n2 - 1 - j) * cell
                r, gg, b = ramp_color(float(result.values[i, j]))
                w(
                    f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" '
                    f'fill="rgb({r},{gg},{b})"/>\n'
                )
        plot_w = n1 * cell
        plot_h = n2 * cell
        name1 = escape(g.axis1.name)
        name2 = escape(g.axis2.name)
        w(
            f'<text x="{ml + plot_w / 2:.0f}" y="{mt + plot_h + 32}" '
            f'text-anchor="middle" font-size="13">{name1}</text>\n'
        )
        w(
            f'<text x="16" y="{mt + plot_h / 2:.0f}" text-anchor="middle" '
            f'font-size="13" transform="rotate(-90 16 {mt + plot_h / 2:.0f})">{name2}</text>\n'
        )
        w(
            f'<text x="{ml}" y="{mt + plot_h + 14}" text-anchor="middle" '
            f'font-size="10">{_fmt(g.axis1.lo)}</text>\n'
        )
        w(
            f'<text x="{ml + plot_w}" y="{mt + plot_h + 14}" text-anchor="middle" '
            f'font-size="10">{_fmt(g.axis1.hi)}</text>\n'
        )
        w(
            f'<text x="{ml - 6}" y="{mt + plot_h}" text-anchor="end" '
            f'font-size="10">{_fmt(g.axis2.lo)}</text>\n'
        )
        w(
            f'<text x="{ml - 6}" y="{mt + 10}" text-anchor="end" '
            f'font-size="10">{_fmt(g.axis2.hi)}</text>\n'
        )
        w("</svg>\n")
    finally:
        if owned:
            handle.close()
