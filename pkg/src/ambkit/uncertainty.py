"""Uncertainty relations evaluated as inequality reports with measured slack.

Every check returns :class:`InequalityResult` records. Identities (``eq``)
use a relative tolerance of 1e-3, since they inherit quadrature error. One-sided
relations (``le``/``ge``) only get a 1e-9 relative round-off guard.

Relation catalog (ids, in emission order)::

    heisenberg  lieb  local                       per signal / per pair
    R3.1 R3.2 R3.3 R3.3-supp R3.4 R3.5            MIMO ambiguity
    P4.1 P4.2 P4.3 P4.4 P4.4-supp P4.5 P4.x-1norm correlation-matrix norms
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .ambiguity import AmbiguityGrid, GridSpec, Region, default_grid, grid_lp_integral, symmetric_ambiguity
from .mimo import (
    CorrelationMatrixField,
    SteeringSpec,
    correlation_matrix_field,
    matrix_norm_field,
    mimo_region_energy,
    mimo_slices,
)
from .signal import SampledSignal, SignalSet, energy, fourier_transform, lp_norm, second_moment

__all__ = [
    "InequalityResult",
    "SuiteConfig",
    "PreconditionError",
    "check_heisenberg",
    "check_lieb",
    "check_local_uncertainty",
    "support_lower_bound",
    "run_mimo_suite",
    "run_full_suite",
    "matched_gaussian_alpha",
    "is_matched_gaussian_set",
    "is_equal_norm_set",
    "SINGLE_RELATIONS",
    "MIMO_RELATIONS",
    "CATALOG",
]

SINGLE_RELATIONS = ("heisenberg", "lieb", "local")
MIMO_RELATIONS = (
    "R3.1", "R3.2", "R3.3", "R3.3-supp", "R3.4", "R3.5",
    "P4.1", "P4.2", "P4.3", "P4.4", "P4.4-supp", "P4.5", "P4.x-1norm",
)
CATALOG = SINGLE_RELATIONS + MIMO_RELATIONS

EQ_RTOL = 1e-3
ONE_SIDED_RTOL = 1e-9


class PreconditionError(ValueError):
    """A relation was requested on inputs outside its hypotheses."""


@dataclass
class InequalityResult:
    id: str
    lhs: float
    rhs: float
    sense: str
    slack: float
    tol: float
    satisfied: bool
    context: dict = field(default_factory=dict)

    @classmethod
    def build(cls, id, lhs, rhs, sense, rtol=None, context=None):
        """Compute slack and verdict; ``rtol`` is scaled by ``max(|lhs|, |rhs|)``."""
        lhs, rhs = float(lhs), float(rhs)
        if not (math.isfinite(lhs) and math.isfinite(rhs)):
            raise ValueError(f"{id}: non-finite sides lhs={lhs}, rhs={rhs}")
        if sense == "le":
            slack = rhs - lhs
        elif sense == "ge":
            slack = lhs - rhs
        elif sense == "eq":
            slack = -abs(lhs - rhs)
        else:
            raise ValueError(f"unknown sense {sense!r}")
        if rtol is None:
            rtol = EQ_RTOL if sense == "eq" else ONE_SIDED_RTOL
        tol = rtol * max(abs(lhs), abs(rhs))
        ctx = dict(context or {})
        ctx.setdefault("rtol", rtol)
        return cls(id, lhs, rhs, sense, slack, tol, bool(slack >= -tol), ctx)

    def to_dict(self):
        return asdict(self)

    def __str__(self):
        mark = "ok " if self.satisfied else "FAIL"
        op = {"le": "<=", "ge": ">=", "eq": "=="}[self.sense]
        extra = ", ".join(f"{k}={v}" for k, v in self.context.items() if k in ("p", "q", "eps", "region", "pair", "link", "signal"))
        return f"[{mark}] {self.id:<11} {self.lhs:.9g} {op} {self.rhs:.9g}  slack={self.slack:.3g}  {extra}"


# --------------------------------------------------------------------------
# single-signal and pairwise relations


def check_heisenberg(x: SampledSignal, pad_factor=4, rtol=None) -> InequalityResult:
    """``sqrt(int t^2|x|^2) sqrt(int f^2|X|^2) >= ||x||^2 / (4 pi)`` with centred moments."""
    e = energy(x)
    if not e > 0:
        raise ValueError("Heisenberg check needs a nonzero signal")
    spec = fourier_transform(x, pad_factor)
    mt = second_moment(x)
    mf = second_moment(spec)
    lhs = math.sqrt(mt) * math.sqrt(mf)
    rhs = e / (4 * math.pi)
    ctx = {"energy": e, "time_variance": mt / e, "freq_variance": mf / e, "pad_factor": pad_factor}
    return InequalityResult.build("heisenberg", lhs, rhs, "ge", rtol, ctx)


def _lieb_sense(p):
    if p > 2:
        return "le"
    if p < 2:
        return "ge"
    return "eq"


def check_lieb(u: SampledSignal, v: SampledSignal, p, grid, rtol=None) -> InequalityResult:
    """``int int |A(u,v)|^p`` against ``(2/p) (||u|| ||v||)^p``.

    ``grid`` is a GridSpec, or a precomputed AmbiguityGrid of ``A(u, v)``.
    The bound is an upper bound for ``p > 2``, a lower bound for ``p < 2``
    and the Moyal identity at ``p = 2``.
    """
    p = float(p)
    if not p >= 1:
        raise ValueError(f"Lieb check needs p >= 1, got {p}")
    amb = grid if isinstance(grid, AmbiguityGrid) else symmetric_ambiguity(u, v, grid)
    lhs = grid_lp_integral(amb, p)
    rhs = (2.0 / p) * (lp_norm(u, 2) * lp_norm(v, 2)) ** p
    return InequalityResult.build("lieb", lhs, rhs, _lieb_sense(p), rtol, {"p": p})


def check_local_uncertainty(grid: AmbiguityGrid, region: Region, energy_bound, rtol=None, id="local"):
    """The chain ``int_E |A|^2 <= |E| ||A||_inf^2 <= |E| ||u||^2 ||v||^2``.

    Returns the two links as separate results.
    """
    meas = region.measure
    if not meas > 0:
        raise ValueError("region must have positive measure")
    lhs1 = grid_lp_integral(grid, 2, region)
    peak2 = grid.peak**2
    ctx = {"region": str(region), "measure": meas}
    r1 = InequalityResult.build(id, lhs1, meas * peak2, "le", rtol, {**ctx, "link": "inf-norm"})
    r2 = InequalityResult.build(id, meas * peak2, meas * float(energy_bound), "le", rtol, {**ctx, "link": "energy"})
    return r1, r2


def support_lower_bound(numerator_energy, denominator) -> float:
    """Support lower bound ``numerator / denominator`` from the local relation."""
    if not denominator > 0:
        raise ValueError("support bound needs a positive denominator")
    return float(numerator_energy) / float(denominator)


# --------------------------------------------------------------------------
# set predicates


def matched_gaussian_alpha(x: SampledSignal, rel=1e-6, floor=1e-4):
    """Return ``alpha`` if ``x`` is ``exp(-alpha t^2 + beta t + theta)``, else None.

    Uses ``x[k+1] x[k-1] / x[k]^2 = exp(-2 alpha dt^2)``, which holds for every
    complex beta, theta, on the samples above ``floor * max|x|``.
    """
    a = np.abs(x.samples)
    if a.max() == 0:
        return None
    big = a > floor * a.max()
    k = np.nonzero(big[1:-1] & big[:-2] & big[2:])[0] + 1
    if k.size < 3:
        return None
    s = x.samples
    logr = np.log(s[k + 1] * s[k - 1] / s[k] ** 2)
    alphas = -logr.real / (2 * x.dt**2)
    alpha = float(np.median(alphas))
    if not alpha > 0:
        return None
    if np.max(np.abs(logr.imag)) > rel * abs(np.median(logr.real)):
        return None
    if np.max(np.abs(alphas - alpha)) > rel * alpha:
        return None
    return alpha


def is_matched_gaussian_set(sigs: SignalSet, rel=1e-6) -> bool:
    alphas = [matched_gaussian_alpha(s) for s in sigs]
    if any(a is None for a in alphas):
        return False
    return max(alphas) - min(alphas) <= rel * max(alphas)


def is_equal_norm_set(sigs: SignalSet, rel=1e-6) -> bool:
    n = sigs.norms(2)
    return float(n.max() - n.min()) <= rel * float(n.max())


# --------------------------------------------------------------------------
# suites


@dataclass
class SuiteConfig:
    """Parameters shared by the suite runners.

    ``relations=None`` runs every relation whose hypotheses the input meets
    (R3.4 and R3.5 are skipped otherwise). Naming relations explicitly makes
    unmet hypotheses an error. ``tolerances`` maps relation ids to relative
    tolerances.
    """

    grid: GridSpec = field(default_factory=default_grid)
    steering: SteeringSpec = field(default_factory=SteeringSpec)
    p_list: tuple = (1.0, 1.5, 2.0, 3.0, 4.0)
    regions: tuple = (Region.disk(0.0, 0.0, 1.0), Region.rect(-1.0, 1.0, -0.5, 0.5))
    eps_list: tuple = (0.05, 0.1, 0.2, 0.4)
    tolerances: dict = field(default_factory=dict)
    relations: tuple | None = None
    kind: str = "symmetric"

    def __post_init__(self):
        if self.relations is not None:
            unknown = [r for r in self.relations if r not in CATALOG]
            if unknown:
                raise ValueError(f"unknown relation id(s): {', '.join(unknown)}; known: {', '.join(CATALOG)}")
        if any(not float(p) >= 1 for p in self.p_list):
            raise ValueError("all p must be >= 1")
        if any(not float(e) > 0 for e in self.eps_list):
            raise ValueError("all eps must be positive")

    def enabled(self, rid) -> bool:
        return self.relations is None or rid in self.relations

    def explicit(self, rid) -> bool:
        return self.relations is not None and rid in self.relations

    def rtol(self, rid):
        return self.tolerances.get(rid)


def _conjugate(p):
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1)


def run_mimo_suite(sigs: SignalSet, cfg: SuiteConfig | None = None, field: CorrelationMatrixField | None = None) -> list:
    """Evaluate the MIMO relations (R3.x) and correlation-matrix properties (P4.x)."""
    cfg = cfg or SuiteConfig()
    if field is None:
        field = correlation_matrix_field(sigs, cfg.grid, cfg.kind)
    m = len(sigs)
    steer = cfg.steering
    spec = field.spec
    cell = spec.cell_area
    n2 = sigs.norms(2)
    energies = n2**2
    bound = float(energies.sum() ** 2)  # sum_m sum_m' ||u_m||^2 ||u_m'||^2
    base = {"M": m, "gamma": steer.gamma}
    out = []

    def add(rid, lhs, rhs, sense, **ctx):
        out.append(InequalityResult.build(rid, lhs, rhs, sense, cfg.rtol(rid), {**base, **ctx}))

    need_slices = any(cfg.enabled(r) for r in ("R3.1", "R3.3", "R3.3-supp", "R3.4", "R3.5"))
    stats = mimo_slices(field, steer, cfg.eps_list) if need_slices else None
    ks = stats.k_s if stats else steer.nodes(m)
    base["k_s"] = ks
    peaks = field.entry_peaks()
    abs2 = np.abs(field.entries) ** 2
    total_energy = mimo_region_energy(field, steer, None, stats) if stats else None

    if cfg.enabled("R3.1"):
        add("R3.1", total_energy, bound, "eq")

    if cfg.enabled("R3.2"):
        worst = float(abs2.sum(axis=(0, 1)).max())
        add("R3.2", bound, worst, "ge", mimo_energy=total_energy, pointwise="max over lattice")

    if cfg.enabled("R3.3"):
        sup2 = float((peaks**2).sum())
        for region in cfg.regions:
            meas = region.measure
            local = mimo_region_energy(field, steer, region, stats)
            add("R3.3", local, meas * sup2, "le", region=str(region), measure=meas, link="inf-norm")
            add("R3.3", meas * sup2, meas * bound, "le", region=str(region), measure=meas, link="energy")

    if cfg.enabled("R3.3-supp"):
        for eps in cfg.eps_list:
            mask = stats.max_abs > eps
            area = np.count_nonzero(mask) * cell
            num = float(stats.density[mask].sum() * cell)
            lower = support_lower_bound(num, bound)
            add("R3.3-supp", area, lower, "ge", eps=eps, support="union of per-slice eps-supports",
                min_slice_area=min(stats.slice_support[float(eps)]), numerator=num)

    if cfg.enabled("R3.4"):
        if is_equal_norm_set(sigs):
            u4 = float(energies[0] ** 2)
            for region in cfg.regions:
                meas = region.measure
                local = mimo_region_energy(field, steer, region, stats)
                add("R3.4", local, m * m * meas * u4, "le", region=str(region), measure=meas,
                    label="R3.4 (corrected constant)", printed_constant_rhs=m * meas * u4,
                    ratio=local / (meas * u4))
        elif cfg.explicit("R3.4"):
            raise PreconditionError("R3.4 needs an equal-norm signal set")

    if cfg.enabled("R3.5"):
        matched = is_matched_gaussian_set(sigs)
        max_entry = float(peaks.max())
        if matched and max_entry <= 1.0 + 1e-12:
            for p in cfg.p_list:
                p = float(p)
                lieb_sum = (2.0 / p) * float((n2[:, None] ** p * n2[None, :] ** p).sum())
                measured = float((np.abs(field.entries) ** p).sum() * cell)
                sense = {"le": "ge", "ge": "le", "eq": "eq"}[_lieb_sense(p)]
                add("R3.5", total_energy, lieb_sum, sense, p=p, entry_lp_sum=measured, max_entry=max_entry)
        elif cfg.explicit("R3.5"):
            if not matched:
                raise PreconditionError("R3.5 needs a matched-Gaussian signal set (common alpha > 0)")
            raise PreconditionError(f"R3.5 needs max |A_mm'| <= 1, measured {max_entry:.6g}")

    frob = matrix_norm_field(field, "frobenius") if any(
        cfg.enabled(r) for r in ("P4.1", "P4.4", "P4.4-supp")) else None

    if cfg.enabled("P4.1"):
        add("P4.1", frob.integral(2), bound, "eq")

    for rid, kind in (("P4.2", "induced1"), ("P4.3", "inducedInf")):
        if not cfg.enabled(rid):
            continue
        worst = matrix_norm_field(field, kind).peak
        add(rid, worst, float(n2.sum() * n2.max()), "le", p=2.0, q=2.0, norm=kind)
        for p in cfg.p_list:
            p = float(p)
            if p == 2:
                continue
            q = _conjugate(p)
            np_ = np.array([lp_norm(s, p) for s in sigs])
            nq = np.array([lp_norm(s, q) for s in sigs])
            add(rid, worst, float(np_.sum() * nq.max()), "le", p=p, q=q, norm=kind, variant="holder")

    if cfg.enabled("P4.4"):
        for region in cfg.regions:
            meas = region.measure
            add("P4.4", frob.integral(2, region), meas * bound, "le", region=str(region), measure=meas)

    if cfg.enabled("P4.4-supp"):
        for eps in cfg.eps_list:
            mask = frob.values > eps
            area = np.count_nonzero(mask) * cell
            num = float((frob.values[mask] ** 2).sum() * cell)
            add("P4.4-supp", area, support_lower_bound(num, bound), "ge", eps=eps, numerator=num)

    if cfg.enabled("P4.5"):
        for p in cfg.p_list:
            p = float(p)
            ent = matrix_norm_field(field, "entrywise_p", p)
            rhs = (2.0 / p) * float((n2[:, None] ** p * n2[None, :] ** p).sum())
            add("P4.5", ent.integral(p), rhs, _lieb_sense(p), p=p)

    if cfg.enabled("P4.x-1norm"):
        ent1 = matrix_norm_field(field, "entrywise_p", 1.0).integral(1)
        n1 = np.array([lp_norm(s, 1) for s in sigs])
        ninf = np.array([lp_norm(s, math.inf) for s in sigs])
        add("P4.x-1norm", ent1, 2.0 * float(n2.sum() ** 2), "ge", claim="2-norms", norm="entrywise 1-norm")
        add("P4.x-1norm", ent1, float(n1.sum() * ninf.sum()), "ge", claim="1-norm x inf-norm",
            norm="entrywise 1-norm")

    return out


def run_full_suite(sigs: SignalSet, cfg: SuiteConfig | None = None) -> list:
    """Per-signal Heisenberg, pairwise Lieb and local checks, then the MIMO suite."""
    cfg = cfg or SuiteConfig()
    out = []
    if cfg.enabled("heisenberg"):
        for k, s in enumerate(sigs):
            r = check_heisenberg(s, rtol=cfg.rtol("heisenberg"))
            r.context["signal"] = sigs.labels[k]
            out.append(r)
    pairs = [(i, j) for i in range(len(sigs)) for j in range(i, len(sigs))]
    if cfg.enabled("lieb") or cfg.enabled("local"):
        grids = {(i, j): symmetric_ambiguity(sigs[i], sigs[j], cfg.grid) for i, j in pairs}
        if cfg.enabled("lieb"):
            for (i, j), g in grids.items():
                for p in cfg.p_list:
                    r = check_lieb(sigs[i], sigs[j], p, g, cfg.rtol("lieb"))
                    r.context["pair"] = [i, j]
                    out.append(r)
        if cfg.enabled("local"):
            for (i, j), g in grids.items():
                eb = energy(sigs[i]) * energy(sigs[j])
                for region in cfg.regions:
                    for r in check_local_uncertainty(g, region, eb, cfg.rtol("local")):
                        r.context["pair"] = [i, j]
                        out.append(r)
    if any(cfg.enabled(r) for r in MIMO_RELATIONS):
        out.extend(run_mimo_suite(sigs, cfg))
    return out
