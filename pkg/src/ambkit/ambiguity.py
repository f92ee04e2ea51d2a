"""Cross and symmetric ambiguity functions and the Wigner distribution.

Conventions (t_k = t0 + k dt, rectangle rule throughout)::

    cross      chi(u,v)(tau,nu) = int u(t) v*(t + tau) exp(+j 2 pi nu t) dt
    symmetric  A(u,v)(tau,nu)   = int u(t + tau/2) v*(t - tau/2) exp(+j 2 pi nu t) dt
    wigner     W(u,v)(t,f)      = int u(t + tau/2) v*(t - tau/2) exp(-j 2 pi f tau) dtau

The symmetric integral is evaluated on the node set ``t = t_k - tau/2``,
where both factors fall on samples. The resulting sum obeys
``A(tau,nu) = exp(-j pi nu tau) chi(-tau,nu)`` exactly.

Delays must be integer multiples of ``dt``. The Doppler step must satisfy
``1/(dnu*dt)`` integer (``1/(2*df*dt)`` for the Wigner frequency axis), so
every requested frequency is an exact DFT bin after folding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import fft as sfft

from .signal import LatticeError, SampledSignal, _check_shared, inner_product

__all__ = [
    "GridSpec",
    "AmbiguityGrid",
    "Region",
    "default_grid",
    "cross_ambiguity",
    "symmetric_ambiguity",
    "ambiguity",
    "ambiguity_direct",
    "wigner",
    "wigner_direct",
    "grid_lp_integral",
    "epsilon_support",
]

KINDS = ("cross", "symmetric", "wigner")
_ALIGN_TOL = 1e-9


@dataclass(frozen=True)
class GridSpec:
    """Rectangular lattice; rows are delay (or time), columns Doppler (or frequency)."""

    tau0: float
    dtau: float
    n_tau: int
    nu0: float
    dnu: float
    n_nu: int

    def __post_init__(self):
        if not (self.dtau > 0 and self.dnu > 0):
            raise ValueError("grid steps must be positive")
        if self.n_tau < 1 or self.n_nu < 1:
            raise ValueError("grid needs at least one point per axis")
        for name in ("tau0", "dtau", "nu0", "dnu"):
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "n_tau", int(self.n_tau))
        object.__setattr__(self, "n_nu", int(self.n_nu))

    @classmethod
    def square(cls, extent=8.0, n=513):
        """Symmetric grid over [-extent, extent]^2 with ``n`` points per axis."""
        step = 2.0 * extent / (n - 1)
        return cls(-extent, step, n, -extent, step, n)

    @property
    def taus(self) -> np.ndarray:
        return self.tau0 + np.arange(self.n_tau) * self.dtau

    @property
    def nus(self) -> np.ndarray:
        return self.nu0 + np.arange(self.n_nu) * self.dnu

    @property
    def shape(self):
        return (self.n_tau, self.n_nu)

    @property
    def cell_area(self) -> float:
        return self.dtau * self.dnu

    @property
    def area(self) -> float:
        return self.n_tau * self.n_nu * self.cell_area

    def mesh(self):
        return np.meshgrid(self.taus, self.nus, indexing="ij")

    def index_of(self, tau, nu):
        """Nearest lattice indices to ``(tau, nu)``, clipped to the grid."""
        i = int(np.clip(round((tau - self.tau0) / self.dtau), 0, self.n_tau - 1))
        j = int(np.clip(round((nu - self.nu0) / self.dnu), 0, self.n_nu - 1))
        return i, j

    def subsample(self, n_tau, n_nu) -> "GridSpec":
        """Coarser grid on the same lattice (every k-th point, endpoints kept)."""
        st = max(1, (self.n_tau - 1) // max(1, n_tau - 1))
        sn = max(1, (self.n_nu - 1) // max(1, n_nu - 1))
        return GridSpec(
            self.tau0, self.dtau * st, min(n_tau, (self.n_tau - 1) // st + 1),
            self.nu0, self.dnu * sn, min(n_nu, (self.n_nu - 1) // sn + 1),
        )

    def to_dict(self):
        return {k: getattr(self, k) for k in ("tau0", "dtau", "n_tau", "nu0", "dnu", "n_nu")}


def default_grid() -> GridSpec:
    """513 x 513 points over [-8, 8]^2 (step 1/32)."""
    return GridSpec.square(8.0, 513)


@dataclass(frozen=True, eq=False)
class AmbiguityGrid:
    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != self.spec.shape:
            raise ValueError(f"values shape {v.shape} does not match grid {self.spec.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("ambiguity values must be finite")
        object.__setattr__(self, "values", v)

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)

    def at(self, tau, nu) -> complex:
        i, j = self.spec.index_of(tau, nu)
        return complex(self.values[i, j])

    @property
    def peak(self) -> float:
        return float(np.abs(self.values).max())


@dataclass(frozen=True)
class Region:
    """Rectangle ``(tau_min, tau_max, nu_min, nu_max)`` or disk ``(tau_c, nu_c, r)``."""

    kind: str
    bounds: tuple

    def __post_init__(self):
        b = tuple(float(x) for x in self.bounds)
        if not all(math.isfinite(x) for x in b):
            raise ValueError("region bounds must be finite")
        if self.kind == "rect":
            if len(b) != 4 or not (b[1] > b[0] and b[3] > b[2]):
                raise ValueError(f"degenerate rectangle {b}")
        elif self.kind == "disk":
            if len(b) != 3 or not b[2] > 0:
                raise ValueError(f"degenerate disk {b}")
        else:
            raise ValueError(f"unknown region kind {self.kind!r}")
        object.__setattr__(self, "bounds", b)

    @classmethod
    def rect(cls, tau_min, tau_max, nu_min, nu_max):
        return cls("rect", (tau_min, tau_max, nu_min, nu_max))

    @classmethod
    def disk(cls, tau_c, nu_c, radius):
        return cls("disk", (tau_c, nu_c, radius))

    @classmethod
    def parse(cls, text: str) -> "Region":
        """``rect:a,b,c,d`` or ``disk:tau_c,nu_c,r``."""
        kind, _, rest = text.partition(":")
        try:
            vals = [float(x) for x in rest.split(",")]
        except ValueError:
            raise ValueError(f"cannot parse region {text!r}") from None
        return cls(kind.strip(), tuple(vals))

    @property
    def measure(self) -> float:
        b = self.bounds
        if self.kind == "rect":
            return (b[1] - b[0]) * (b[3] - b[2])
        return math.pi * b[2] ** 2

    def contains(self, tau, nu) -> np.ndarray:
        b = self.bounds
        if self.kind == "rect":
            return (tau >= b[0]) & (tau <= b[1]) & (nu >= b[2]) & (nu <= b[3])
        return (tau - b[0]) ** 2 + (nu - b[1]) ** 2 <= b[2] ** 2

    def mask(self, spec: GridSpec) -> np.ndarray:
        """Cells whose centre lies in the region."""
        tau, nu = spec.mesh()
        return self.contains(tau, nu)

    def __str__(self):
        return f"{self.kind}:" + ",".join(f"{x:g}" for x in self.bounds)


# --------------------------------------------------------------------------
# lattice helpers


def _lags(values, dt, what="delay"):
    q = np.asarray(values, dtype=float) / dt
    m = np.rint(q)
    if np.any(np.abs(q - m) > _ALIGN_TOL * np.maximum(1.0, np.abs(q))):
        raise LatticeError(f"{what} values must be integer multiples of dt={dt}")
    return m.astype(np.int64)


def _dft_period(step, dt, factor=1.0):
    """Integer L with ``factor * step * dt * L == 1``."""
    q = 1.0 / (factor * step * dt)
    L = int(round(q))
    if L < 1 or abs(q - L) > _ALIGN_TOL * q:
        raise LatticeError(
            f"frequency step {step} is not on the DFT lattice of dt={dt} (1/({factor:g}*step*dt) = {q:g})"
        )
    return L


def _shifted_conj(v, start, shifts):
    """Rows ``conj(v[k + shifts[j]])`` for k in range(len), zero outside."""
    n = v.size
    k = np.arange(n)[None, :] + start + shifts[:, None]
    ok = (k >= 0) & (k < n)
    out = np.where(ok, np.conj(v)[np.clip(k, 0, n - 1)], 0)
    return out


def _fold_rows(q, period):
    """Sum columns congruent mod ``period`` (column c -> c % period)."""
    rows, n = q.shape
    reps = -(-n // period)
    if reps * period != n:
        q = np.concatenate([q, np.zeros((rows, reps * period - n), dtype=q.dtype)], axis=1)
    return q.reshape(rows, reps, period).sum(axis=1)


def _dft_rows(q, period, sign, k0, n_out, workers=None):
    """``S[j, i] = sum_k q[j, k] exp(sign * j 2 pi i (k0 + k) / period)``, i < n_out."""
    qf = _fold_rows(q, period)
    if sign > 0:
        F = sfft.ifft(qf, axis=1, workers=workers) * period
    else:
        F = sfft.fft(qf, axis=1, workers=workers)
    i = np.arange(n_out)
    cols = F[:, i % period]
    if k0:
        cols = cols * np.exp(sign * 2j * math.pi * ((i * k0) % period) / period)[None, :]
    return cols


def _doppler_rows(prod, t0, dt, spec: GridSpec, workers=None):
    """``dt * sum_k prod[j,k] exp(j 2 pi nu_i t_k)`` for every grid Doppler."""
    L = _dft_period(spec.dnu, dt)
    k = np.arange(prod.shape[1])
    if spec.nu0:
        prod = prod * np.exp(2j * math.pi * spec.nu0 * k * dt)[None, :]
    rows = _dft_rows(prod, L, +1, 0, spec.n_nu, workers)
    return dt * rows * np.exp(2j * math.pi * spec.nus * t0)[None, :]


# --------------------------------------------------------------------------
# FFT path


def cross_ambiguity(u: SampledSignal, v: SampledSignal, spec: GridSpec, workers=None) -> AmbiguityGrid:
    """chi(u,v) on ``spec``: one DFT per delay row."""
    _check_shared(u, v)
    m = _lags(spec.taus, u.dt)
    prod = u.samples[None, :] * _shifted_conj(v.samples, 0, m)
    return AmbiguityGrid(spec, _doppler_rows(prod, u.t0, u.dt, spec, workers))


def symmetric_ambiguity(u: SampledSignal, v: SampledSignal, spec: GridSpec, workers=None) -> AmbiguityGrid:
    """A(u,v) on ``spec`` via ``A(tau,nu) = exp(-j pi nu tau) chi(-tau,nu)``."""
    _check_shared(u, v)
    m = _lags(spec.taus, u.dt, "half-lag delay")
    prod = u.samples[None, :] * _shifted_conj(v.samples, 0, -m)
    rows = _doppler_rows(prod, u.t0, u.dt, spec, workers)
    tau, nu = spec.mesh()
    return AmbiguityGrid(spec, rows * np.exp(-1j * math.pi * nu * tau))


def wigner(u: SampledSignal, v: SampledSignal, spec: GridSpec, workers=None) -> AmbiguityGrid:
    """W(u,v) on a (t, f) grid; rows are times, which must be sample instants.

    With ``tau = 2 k dt`` the lag integral becomes
    ``2 dt sum_k u[n+k] v*[n-k] exp(-j 4 pi f k dt)``.
    """
    _check_shared(u, v)
    n_idx = _lags(spec.taus - u.t0, u.dt, "Wigner time")
    L = _dft_period(spec.dnu, u.dt, 2.0)
    N = u.n
    ks = np.arange(-(N - 1), N)
    a = n_idx[:, None] + ks[None, :]
    b = n_idx[:, None] - ks[None, :]
    ok = (a >= 0) & (a < N) & (b >= 0) & (b < N)
    prod = np.where(ok, u.samples[np.clip(a, 0, N - 1)] * np.conj(v.samples[np.clip(b, 0, N - 1)]), 0)
    if spec.nu0:
        prod = prod * np.exp(-4j * math.pi * spec.nu0 * ks * u.dt)[None, :]
    rows = _dft_rows(prod, L, -1, -(N - 1), spec.n_nu, workers)
    return AmbiguityGrid(spec, 2 * u.dt * rows)


def ambiguity(u, v, spec, kind="symmetric", workers=None) -> AmbiguityGrid:
    if kind == "cross":
        return cross_ambiguity(u, v, spec, workers)
    if kind == "symmetric":
        return symmetric_ambiguity(u, v, spec, workers)
    if kind == "wigner":
        return wigner(u, v, spec, workers)
    raise ValueError(f"unknown ambiguity kind {kind!r}")


# --------------------------------------------------------------------------
# direct oracle


def _sample_or_zero(x, idx):
    return x[idx] if 0 <= idx < x.size else 0j


def ambiguity_direct(u: SampledSignal, v: SampledSignal, points, kind="symmetric") -> list:
    """Evaluate the defining sums term by term at each ``(tau, nu)``.

    No transforms and no vectorised reductions: the sum over samples is an
    explicit loop, accumulated left to right.
    """
    _check_shared(u, v)
    if kind == "wigner":
        return wigner_direct(u, v, points)
    if kind not in ("cross", "symmetric"):
        raise ValueError(f"unknown ambiguity kind {kind!r}")
    us, vs = u.samples, v.samples
    dt, t0 = u.dt, u.t0
    out = []
    for tau, nu in points:
        m = int(_lags([tau], dt)[0])
        acc = 0j
        for k in range(u.n):
            if kind == "cross":
                # node t_k; v evaluated at t_k + tau
                t = t0 + k * dt
                term = us[k] * np.conj(_sample_or_zero(vs, k + m))
            else:
                # node t = t_k - tau/2: u(t + tau/2) = u_k, v(t - tau/2) = v_{k-m}
                t = t0 + k * dt - tau / 2
                term = us[k] * np.conj(_sample_or_zero(vs, k - m))
            if term != 0:
                acc += term * complex(math.cos(2 * math.pi * nu * t), math.sin(2 * math.pi * nu * t))
        out.append(acc * dt)
    return out


def wigner_direct(u: SampledSignal, v: SampledSignal, points) -> list:
    _check_shared(u, v)
    us, vs = u.samples, v.samples
    dt = u.dt
    out = []
    for t, f in points:
        n = int(_lags([t - u.t0], dt, "Wigner time")[0])
        acc = 0j
        for k in range(-(u.n - 1), u.n):
            term = _sample_or_zero(us, n + k) * np.conj(_sample_or_zero(vs, n - k))
            if term != 0:
                tau = 2 * k * dt
                acc += term * complex(math.cos(2 * math.pi * f * tau), -math.sin(2 * math.pi * f * tau))
        out.append(2 * dt * acc)
    return out


def direct_grid(u, v, spec: GridSpec, kind="symmetric") -> AmbiguityGrid:
    pts = [(a, b) for a in spec.taus for b in spec.nus]
    vals = np.array(ambiguity_direct(u, v, pts, kind)).reshape(spec.shape)
    return AmbiguityGrid(spec, vals)


# --------------------------------------------------------------------------
# integrals and supports


def _values(grid):
    return grid.values if isinstance(grid, AmbiguityGrid) else np.asarray(grid)


def grid_lp_integral(grid: AmbiguityGrid, p=2.0, region: Region | None = None, spec: GridSpec | None = None) -> float:
    """``sum |value|^p dtau dnu`` over cells, optionally restricted to ``region``.

    ``grid`` may also be a bare array (e.g. a norm field) when ``spec`` is given.
    """
    p = float(p)
    if not p >= 1:
        raise ValueError(f"p must be >= 1, got {p}")
    spec = grid.spec if isinstance(grid, AmbiguityGrid) else spec
    a = np.abs(_values(grid))
    w = a * a if p == 2 else a**p
    if region is not None:
        w = np.where(region.mask(spec), w, 0.0)
    return float(w.sum() * spec.cell_area)


def epsilon_support(grid: AmbiguityGrid, eps, spec: GridSpec | None = None) -> float:
    """Area of the cells where ``|value| > eps``."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    spec = grid.spec if isinstance(grid, AmbiguityGrid) else spec
    count = int(np.count_nonzero(np.abs(_values(grid)) > eps))
    return count * spec.cell_area


def origin_value(u: SampledSignal, v: SampledSignal) -> complex:
    """A(u,v)(0,0), the inner product."""
    return inner_product(u, v)
