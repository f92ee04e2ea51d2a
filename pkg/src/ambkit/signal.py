"""Sampled waveforms, generators, norms, moments and Fourier transforms.

Every continuous integral is replaced by the composite rectangle rule on the
sampling lattice ``t_k = t0 + k*dt``; samples outside the window are zero.
The forward transform uses the kernel ``exp(-j 2 pi f t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import fft as sfft

from .rng import Lcg64

__all__ = [
    "LatticeError",
    "SampledSignal",
    "SignalSet",
    "SpectrumGrid",
    "Lattice",
    "default_lattice",
    "gen_waveform",
    "unit_gaussian",
    "hermite_functions",
    "random_smooth_signal",
    "random_smooth_set",
    "lp_norm",
    "energy",
    "fourier_transform",
    "moment",
    "second_moment",
    "inner_product",
]

WAVEFORM_KINDS = ("gaussian", "matched_gaussian_pair", "hermite", "lfm_chirp", "phase_code")


class LatticeError(ValueError):
    """Sampling lattices of two operands do not agree or are malformed."""


@dataclass(frozen=True)
class Lattice:
    t0: float
    dt: float
    n: int

    def __post_init__(self):
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise LatticeError(f"dt must be positive and finite, got {self.dt}")
        if int(self.n) != self.n or self.n < 2:
            raise LatticeError(f"lattice needs at least 2 samples, got {self.n}")
        if not math.isfinite(self.t0):
            raise LatticeError("t0 must be finite")

    @property
    def times(self) -> np.ndarray:
        return self.t0 + np.arange(self.n) * self.dt


def default_lattice() -> Lattice:
    """t in [-8, 8) with dt = 1/32 (512 samples)."""
    return Lattice(-8.0, 1.0 / 32, 512)


@dataclass(frozen=True, eq=False)
class SampledSignal:
    t0: float
    dt: float
    samples: np.ndarray

    def __post_init__(self):
        x = np.array(self.samples, dtype=complex).ravel()
        Lattice(self.t0, self.dt, x.size)
        if not np.all(np.isfinite(x)):
            raise ValueError("samples must be finite")
        x.setflags(write=False)
        object.__setattr__(self, "samples", x)
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "dt", float(self.dt))

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.t0, self.dt, self.n)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + np.arange(self.n) * self.dt

    def scaled(self, c) -> "SampledSignal":
        return SampledSignal(self.t0, self.dt, c * self.samples)

    def shifted(self, k: int) -> "SampledSignal":
        """Delay by ``k`` samples on the same window (zero fill)."""
        x = np.zeros_like(self.samples)
        if k >= 0:
            x[k:] = self.samples[: self.n - k]
        else:
            x[:k] = self.samples[-k:]
        return SampledSignal(self.t0, self.dt, x)

    def same_lattice(self, other: "SampledSignal") -> bool:
        return (
            self.n == other.n
            and math.isclose(self.dt, other.dt, rel_tol=1e-12)
            and math.isclose(self.t0, other.t0, rel_tol=1e-12, abs_tol=1e-12 * self.dt)
        )


def _check_shared(u: SampledSignal, v: SampledSignal):
    if not u.same_lattice(v):
        raise LatticeError(
            f"lattice mismatch: (t0={u.t0}, dt={u.dt}, n={u.n}) vs (t0={v.t0}, dt={v.dt}, n={v.n})"
        )


@dataclass(frozen=True)
class SignalSet:
    """Ordered waveform set on one common sampling lattice."""

    signals: tuple
    labels: tuple = field(default=())

    def __post_init__(self):
        sigs = tuple(self.signals)
        if not sigs:
            raise ValueError("a signal set needs at least one signal")
        for s in sigs[1:]:
            _check_shared(sigs[0], s)
        labels = tuple(self.labels) if self.labels else tuple(f"u{i}" for i in range(len(sigs)))
        if len(labels) != len(sigs):
            raise ValueError("one label per signal required")
        object.__setattr__(self, "signals", sigs)
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.signals)

    def __getitem__(self, i) -> SampledSignal:
        return self.signals[i]

    def __iter__(self):
        return iter(self.signals)

    @property
    def m(self) -> int:
        return len(self.signals)

    @property
    def lattice(self) -> Lattice:
        return self.signals[0].lattice

    def norms(self, p=2.0) -> np.ndarray:
        return np.array([lp_norm(s, p) for s in self.signals])

    def scaled(self, c) -> "SignalSet":
        return SignalSet(tuple(s.scaled(c) for s in self.signals), self.labels)


@dataclass(frozen=True, eq=False)
class SpectrumGrid:
    f0: float
    df: float
    values: np.ndarray

    def __post_init__(self):
        if not self.df > 0:
            raise ValueError("df must be positive")
        v = np.array(self.values, dtype=complex).ravel()
        if not np.all(np.isfinite(v)):
            raise ValueError("spectrum values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def freqs(self) -> np.ndarray:
        return self.f0 + np.arange(self.values.size) * self.df


# --------------------------------------------------------------------------
# generators


def _as_lattice(lattice) -> Lattice:
    if isinstance(lattice, Lattice):
        return lattice
    return Lattice(*lattice)


def _gaussian_energy(alpha, beta, theta):
    # closed form of  int |exp(-a t^2 + b t + c)|^2 dt
    br = complex(beta).real
    return math.exp(2 * complex(theta).real) * math.sqrt(math.pi / (2 * alpha)) * math.exp(br * br / (2 * alpha))


def _gaussian(t, alpha, beta=0.0, theta=0.0, normalize=False):
    if not alpha > 0:
        raise ValueError(f"Gaussian kinds need alpha > 0, got {alpha}")
    x = np.exp(-alpha * t * t + complex(beta) * t + complex(theta))
    if normalize:
        x = x / math.sqrt(_gaussian_energy(alpha, beta, theta))
    return x


def unit_gaussian(lattice=None) -> SampledSignal:
    """g(t) = 2**(1/4) exp(-pi t^2) on ``lattice`` (default lattice if None)."""
    lat = default_lattice() if lattice is None else _as_lattice(lattice)
    return SampledSignal(lat.t0, lat.dt, _gaussian(lat.times, math.pi, normalize=True))


def hermite_functions(t, orders, scale=math.pi):
    """Orthonormal Hermite functions ``h_n(t)``, ``h_0 = (2 scale/pi)**(1/4) exp(-scale t^2)``.

    Evaluated with the three-term recurrence, so high orders stay finite.
    """
    t = np.asarray(t, dtype=float)
    orders = [int(o) for o in orders]
    if any(o < 0 for o in orders):
        raise ValueError("Hermite orders must be non-negative")
    x = math.sqrt(2 * scale) * t
    h_prev = np.zeros_like(x)
    h = (2 * scale / math.pi) ** 0.25 * np.exp(-scale * t * t)
    table = {0: h}
    for n in range(max(orders)):
        h_next = math.sqrt(2.0 / (n + 1)) * x * h - math.sqrt(n / (n + 1.0)) * h_prev
        h_prev, h = h, h_next
        table[n + 1] = h
    return [table[o].astype(complex) for o in orders]


def _listify(value, n=None):
    if value is None:
        return None
    if isinstance(value, (list, tuple, np.ndarray)):
        return list(value)
    return [value] if n is None else [value] * n


def gen_waveform(kind: str, params: dict | None, lattice) -> SignalSet:
    """Generate a waveform set sampled at ``t0 + k*dt``.

    Parameters
    ----------
    kind : str
        One of ``gaussian``, ``matched_gaussian_pair``, ``hermite``,
        ``lfm_chirp``, ``phase_code``.
    params : dict
        gaussian
            ``alpha`` (> 0), ``beta``, ``theta`` (complex, default 0),
            ``normalize`` (bool). ``e^{-alpha t^2 + beta t + theta}``.
        matched_gaussian_pair
            ``alpha``, ``betas`` and ``thetas`` (two values each, default 0),
            ``normalize``. Both members share ``alpha``.
        hermite
            ``orders`` (list of int), ``scale`` (default pi).
        lfm_chirp
            ``rates`` (Hz/s, one signal per rate), ``alpha`` (Gaussian
            envelope) or ``duration`` (rectangular envelope), ``centers``,
            ``f0``, ``normalize``.
        phase_code
            ``code`` (chip values, each reduced to unit modulus) or
            ``length`` plus ``seed`` for a random binary code, ``chip``
            (seconds), ``start`` (default: centred), ``smooth`` (Gaussian
            smoothing standard deviation in seconds, default 0),
            ``normalize``.
    lattice : Lattice or (t0, dt, n)
    """
    p = dict(params or {})
    lat = _as_lattice(lattice)
    t = lat.times
    normalize = bool(p.get("normalize", False))

    if kind == "gaussian":
        xs = [_gaussian(t, float(p.get("alpha", math.pi)), p.get("beta", 0.0), p.get("theta", 0.0), normalize)]
        labels = ["gaussian"]
    elif kind == "matched_gaussian_pair":
        alpha = float(p.get("alpha", math.pi))
        betas = _listify(p.get("betas", 0.0), 2)
        thetas = _listify(p.get("thetas", 0.0), 2)
        if len(betas) != 2 or len(thetas) != 2:
            raise ValueError("matched_gaussian_pair takes exactly two betas and two thetas")
        xs = [_gaussian(t, alpha, b, c, normalize) for b, c in zip(betas, thetas)]
        labels = ["gauss_a", "gauss_b"]
    elif kind == "hermite":
        orders = _listify(p.get("orders", [0, 1]))
        if not orders:
            raise ValueError("hermite needs at least one order")
        xs = hermite_functions(t, orders, float(p.get("scale", math.pi)))
        labels = [f"h{o}" for o in orders]
    elif kind == "lfm_chirp":
        rates = _listify(p.get("rates", p.get("rate", 1.0)))
        centers = _listify(p.get("centers", 0.0), len(rates))
        if len(centers) != len(rates):
            raise ValueError("one center per chirp rate required")
        f0 = float(p.get("f0", 0.0))
        xs = []
        for k, c in zip(rates, centers):
            s = t - c
            if "alpha" in p:
                env = _gaussian(s, float(p["alpha"]))
            else:
                dur = float(p.get("duration", 2.0))
                if not dur > 0:
                    raise ValueError("chirp duration must be positive")
                env = (np.abs(s) <= dur / 2).astype(complex)
            x = env * np.exp(1j * math.pi * float(k) * s * s + 2j * math.pi * f0 * t)
            if normalize:
                x = x / math.sqrt(np.sum(np.abs(x) ** 2) * lat.dt)
            xs.append(x)
        labels = [f"lfm{i}" for i in range(len(xs))]
    elif kind == "phase_code":
        code = p.get("code")
        if code is None and "length" in p:
            length = int(p["length"])
            if length < 1:
                raise ValueError("phase_code length must be >= 1")
            rng = Lcg64(p.get("seed", 0))
            code = [1.0 if rng.uniform() < 0.5 else -1.0 for _ in range(length)]
        code = _listify(code)
        if not code:
            raise ValueError("phase_code needs a non-empty code")
        chips = np.array(code, dtype=complex)
        if np.any(chips == 0):
            raise ValueError("phase_code chips must be nonzero")
        chips = chips / np.abs(chips)
        chip = float(p.get("chip", 0.5))
        if not chip > 0:
            raise ValueError("chip duration must be positive")
        start = float(p.get("start", -chip * len(chips) / 2))
        idx = np.floor((t - start) / chip).astype(int)
        inside = (idx >= 0) & (idx < len(chips))
        x = np.zeros(lat.n, dtype=complex)
        x[inside] = chips[idx[inside]]
        sigma = float(p.get("smooth", 0.0))
        if sigma > 0:
            x = _gauss_smooth(x, lat.dt, sigma)
        if normalize:
            x = x / math.sqrt(np.sum(np.abs(x) ** 2) * lat.dt)
        xs = [x]
        labels = ["phase_code"]
    else:
        raise ValueError(f"unknown waveform kind {kind!r}; expected one of {WAVEFORM_KINDS}")

    return SignalSet(tuple(SampledSignal(lat.t0, lat.dt, x) for x in xs), tuple(labels))


def _gauss_smooth(x, dt, sigma):
    half = int(math.ceil(6 * sigma / dt))
    s = np.arange(-half, half + 1) * dt
    kern = np.exp(-0.5 * (s / sigma) ** 2)
    kern /= kern.sum()
    return np.convolve(x, kern, mode="same")


def random_smooth_signal(lattice, rng: Lcg64, n_atoms=None) -> SampledSignal:
    """Sum of 2-4 random chirped Gaussian atoms, compact in time and frequency.

    Centres lie in [-2, 2] s, carrier offsets in [-1.5, 1.5] Hz, so the
    ambiguity surface fits inside [-8, 8]^2 with negligible truncation.
    """
    lat = _as_lattice(lattice)
    t = lat.times
    if n_atoms is None:
        n_atoms = rng.integers(2, 5)
    x = np.zeros(lat.n, dtype=complex)
    for _ in range(n_atoms):
        amp = complex(rng.normal(), rng.normal())
        alpha = rng.uniform(math.pi / 2, 2 * math.pi)
        c = rng.uniform(-2.0, 2.0)
        f = rng.uniform(-1.5, 1.5)
        k = rng.uniform(-0.5, 0.5)
        s = t - c
        x += amp * np.exp(-alpha * s * s + 2j * math.pi * f * s + 1j * math.pi * k * s * s)
    return SampledSignal(lat.t0, lat.dt, x)


def random_smooth_set(m, lattice=None, seed=0, normalize=False) -> SignalSet:
    lat = default_lattice() if lattice is None else _as_lattice(lattice)
    rng = Lcg64(seed)
    sigs = []
    for _ in range(m):
        s = random_smooth_signal(lat, rng)
        if normalize:
            s = s.scaled(1.0 / lp_norm(s, 2))
        sigs.append(s)
    return SignalSet(tuple(sigs), tuple(f"rand{i}" for i in range(m)))


# --------------------------------------------------------------------------
# norms, transforms, moments


def lp_norm(x: SampledSignal, p=2.0) -> float:
    """Rectangle-rule L^p norm; ``p = inf`` gives the peak magnitude."""
    p = float(p)
    if not p >= 1:
        raise ValueError(f"p must be >= 1, got {p}")
    a = np.abs(x.samples)
    if math.isinf(p):
        return float(a.max())
    peak = a.max()
    if peak == 0:
        return 0.0
    # scale out the peak to avoid overflow for large p
    return float(peak * (np.sum((a / peak) ** p) * x.dt) ** (1.0 / p))


def energy(x: SampledSignal) -> float:
    return float(np.sum(np.abs(x.samples) ** 2) * x.dt)


def fourier_transform(x: SampledSignal, pad_factor: int = 4, workers=None) -> SpectrumGrid:
    """Sampled approximation of ``X(f) = int x(t) exp(-j 2 pi f t) dt``.

    The zero-padded DFT (length ``pad_factor * N``) is scaled by ``dt`` and
    carries the ``exp(-j 2 pi f t0)`` origin phase. Frequencies run over one
    period centred on zero, ``f = (i - L//2) * df`` with ``df = 1/(L dt)``.
    """
    if int(pad_factor) != pad_factor or pad_factor < 1:
        raise ValueError("pad_factor must be an integer >= 1")
    L = int(pad_factor) * x.n
    df = 1.0 / (L * x.dt)
    spec = sfft.fftshift(sfft.fft(x.samples, n=L, workers=workers))
    freqs = (np.arange(L) - L // 2) * df
    vals = x.dt * spec * np.exp(-2j * math.pi * freqs * x.t0)
    return SpectrumGrid(float(freqs[0]), df, vals)


def _axis_and_density(x):
    if isinstance(x, SampledSignal):
        return x.times, np.abs(x.samples) ** 2, x.dt
    if isinstance(x, SpectrumGrid):
        return x.freqs, np.abs(x.values) ** 2, x.df
    raise TypeError("moment expects a SampledSignal or SpectrumGrid")


def moment(x, order: int) -> float:
    """Mean (order 1) or centred variance (order 2) of the energy density.

    The density is ``|x|^2 / ||x||^2`` on the time axis, or ``|X|^2/||X||^2``
    on the frequency axis for a SpectrumGrid.
    """
    axis, dens, step = _axis_and_density(x)
    total = dens.sum() * step
    if not total > 0:
        raise ValueError("moment of a zero-energy signal is undefined")
    mean = float(np.sum(axis * dens) * step / total)
    if order == 1:
        return mean
    if order == 2:
        return float(np.sum((axis - mean) ** 2 * dens) * step / total)
    raise ValueError("order must be 1 or 2")


def second_moment(x) -> float:
    """Un-normalised centred moment ``int (s - m)^2 |x(s)|^2 ds``."""
    axis, dens, step = _axis_and_density(x)
    total = dens.sum() * step
    if not total > 0:
        raise ValueError("moment of a zero-energy signal is undefined")
    return moment(x, 2) * float(total)


def inner_product(u: SampledSignal, v: SampledSignal) -> complex:
    """``sum_k u_k conj(v_k) dt``."""
    _check_shared(u, v)
    return complex(np.sum(u.samples * np.conj(v.samples)) * u.dt)


def signals_from(values: Sequence, lattice) -> SignalSet:
    lat = _as_lattice(lattice)
    return SignalSet(tuple(SampledSignal(lat.t0, lat.dt, np.asarray(v)) for v in values))
