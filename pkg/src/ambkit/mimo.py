"""MIMO correlation matrix fields, steered MIMO ambiguity and matrix-norm fields.

``R_ij(tau, nu)`` is the ambiguity of ``(u_i, u_j)``; the MIMO ambiguity is

    A(tau, nu, fs, fs') = sum_m sum_m' R_mm'(tau, nu) exp(i 2 pi gamma (fs m - fs' m'))

Spatial-frequency integrals over [0, 1)^2 use ``k_s`` uniform nodes per axis.
The integrand ``|A|^2`` is a trigonometric polynomial of degree
``gamma*(M-1)`` in each spatial frequency, so the rule is exact once
``k_s > gamma*(M-1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ambiguity import AmbiguityGrid, GridSpec, Region, ambiguity
from .signal import SignalSet

__all__ = [
    "CorrelationMatrixField",
    "SteeringSpec",
    "NormField",
    "SliceStats",
    "correlation_matrix_field",
    "mimo_ambiguity",
    "mimo_slices",
    "mimo_l2_energy",
    "mimo_region_energy",
    "matrix_norm_field",
    "NORM_KINDS",
]

NORM_KINDS = ("frobenius", "induced1", "inducedInf", "entrywise_p")


@dataclass(frozen=True, eq=False)
class CorrelationMatrixField:
    """``entries[i, j]`` holds the grid of R_ij; shape (M, M, n_tau, n_nu)."""

    spec: GridSpec
    entries: np.ndarray
    kind: str = "symmetric"

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        if e.ndim != 4 or e.shape[0] != e.shape[1] or e.shape[2:] != self.spec.shape:
            raise ValueError(f"entries must have shape (M, M, {self.spec.n_tau}, {self.spec.n_nu}), got {e.shape}")
        object.__setattr__(self, "entries", e)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    def entry(self, i, j) -> AmbiguityGrid:
        return AmbiguityGrid(self.spec, self.entries[i, j])

    def entry_peaks(self) -> np.ndarray:
        """M x M matrix of ``max |R_ij|`` over the grid."""
        return np.abs(self.entries).max(axis=(2, 3))


@dataclass(frozen=True)
class SteeringSpec:
    """Uniform-linear steering: spacing ratio ``gamma`` and spatial nodes ``k_s``.

    ``k_s=None`` picks ``max(2M, gamma*(M-1) + 1)`` for the field at hand.
    """

    gamma: int = 1
    k_s: int | None = None

    def __post_init__(self):
        g = self.gamma
        if isinstance(g, float) and g.is_integer():
            object.__setattr__(self, "gamma", int(g))
        if not isinstance(self.gamma, (int, np.integer)) or self.gamma < 1:
            raise ValueError(f"gamma must be a positive integer, got {g!r}")
        if self.k_s is not None and int(self.k_s) < 1:
            raise ValueError("k_s must be positive")

    def nodes(self, m: int) -> int:
        if self.k_s is None:
            return max(2 * m, self.gamma * (m - 1) + 1)
        k = int(self.k_s)
        if k < 2 * m or k <= self.gamma * (m - 1):
            raise ValueError(
                f"k_s={k} too small for M={m}, gamma={self.gamma}: need k_s >= 2M and k_s > gamma*(M-1)"
            )
        return k

    def to_dict(self, m=None):
        d = {"gamma": int(self.gamma), "k_s": self.k_s}
        if m is not None:
            d["k_s"] = self.nodes(m)
        return d


@dataclass(frozen=True, eq=False)
class NormField:
    spec: GridSpec
    kind: str
    values: np.ndarray
    p: float | None = None

    def integral(self, power=1.0, region: Region | None = None) -> float:
        w = self.values**power
        if region is not None:
            w = np.where(region.mask(self.spec), w, 0.0)
        return float(w.sum() * self.spec.cell_area)

    @property
    def peak(self) -> float:
        return float(self.values.max())


def correlation_matrix_field(sigs: SignalSet, spec: GridSpec, kind="symmetric", workers=None) -> CorrelationMatrixField:
    if kind not in ("cross", "symmetric"):
        raise ValueError("correlation field kind must be 'cross' or 'symmetric'")
    m = len(sigs)
    entries = np.empty((m, m) + spec.shape, dtype=complex)
    for i in range(m):
        for j in range(m):
            entries[i, j] = ambiguity(sigs[i], sigs[j], spec, kind, workers).values
    return CorrelationMatrixField(spec, entries, kind)


def _phases(m, gamma, f):
    return np.exp(2j * math.pi * gamma * f * np.arange(m))


def mimo_ambiguity(field: CorrelationMatrixField, steering: SteeringSpec, f_s=0.0, f_s_prime=0.0) -> AmbiguityGrid:
    """One (fs, fs') slice of the MIMO ambiguity function."""
    a = _phases(field.m, steering.gamma, f_s)
    b = np.conj(_phases(field.m, steering.gamma, f_s_prime))
    return AmbiguityGrid(field.spec, np.einsum("m,n,mnij->ij", a, b, field.entries))


@dataclass(frozen=True, eq=False)
class SliceStats:
    """Per-cell statistics over the spatial-frequency slices.

    ``density`` is the slice mean of ``|A|^2`` (so its (tau,nu) sum is the
    quadrature of the 4-D integral). ``max_abs`` is the slice maximum of
    ``|A|``. ``slice_support`` maps each eps to the per-slice eps-support
    areas.
    """

    spec: GridSpec
    k_s: int
    density: np.ndarray
    max_abs: np.ndarray
    slice_support: dict


def mimo_slices(field: CorrelationMatrixField, steering: SteeringSpec, eps_list=()) -> SliceStats:
    """Walk the ``k_s^2`` slices once, never holding more than one in memory."""
    k = steering.nodes(field.m)
    fs = np.arange(k) / k
    density = np.zeros(field.spec.shape)
    max_abs = np.zeros(field.spec.shape)
    supports = {float(e): [] for e in eps_list}
    cell = field.spec.cell_area
    for a in fs:
        for b in fs:
            mag = np.abs(mimo_ambiguity(field, steering, a, b).values)
            density += mag * mag
            np.maximum(max_abs, mag, out=max_abs)
            for e in supports:
                supports[e].append(np.count_nonzero(mag > e) * cell)
    density /= k * k
    return SliceStats(field.spec, k, density, max_abs, supports)


def mimo_region_energy(field, steering, region: Region | None = None, stats: SliceStats | None = None) -> float:
    """``int_0^1 int_0^1 int int_E |A|^2`` (whole grid when ``region`` is None)."""
    stats = stats or mimo_slices(field, steering)
    d = stats.density
    if region is not None:
        d = np.where(region.mask(field.spec), d, 0.0)
    return float(d.sum() * field.spec.cell_area)


def mimo_l2_energy(field: CorrelationMatrixField, steering: SteeringSpec) -> float:
    return mimo_region_energy(field, steering)


def matrix_norm_field(field: CorrelationMatrixField, kind="frobenius", p=None) -> NormField:
    """Per-cell norm of the M x M matrix ``R(tau, nu)``.

    ``induced1`` is the maximum absolute column sum, ``inducedInf`` the
    maximum absolute row sum, ``entrywise_p`` the p-norm of the flattened
    matrix.
    """
    a = np.abs(field.entries)
    if kind == "frobenius":
        vals = np.sqrt((a * a).sum(axis=(0, 1)))
    elif kind == "induced1":
        vals = a.sum(axis=0).max(axis=0)
    elif kind == "inducedInf":
        vals = a.sum(axis=1).max(axis=0)
    elif kind == "entrywise_p":
        if p is None or not float(p) >= 1:
            raise ValueError(f"entrywise_p needs p >= 1, got {p}")
        p = float(p)
        vals = (a * a).sum(axis=(0, 1)) ** 0.5 if p == 2 else (a**p).sum(axis=(0, 1)) ** (1.0 / p)
    else:
        raise ValueError(f"unknown norm kind {kind!r}; expected one of {NORM_KINDS}")
    return NormField(field.spec, kind, vals, p)
