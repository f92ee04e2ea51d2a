"""ambkit command line: gen, amb, mimo, verify, support, norms.

Exit status 0 on success, 1 when a verification fails (unsatisfied relation
or oracle mismatch), 2 on invalid input. ``AMBKIT_THREADS`` caps the FFT
worker count.
"""

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import __version__
from . import io as aio
from .ambiguity import GridSpec, Region, ambiguity, ambiguity_direct, epsilon_support, grid_lp_integral
from .mimo import SteeringSpec, correlation_matrix_field, matrix_norm_field, mimo_ambiguity
from .signal import WAVEFORM_KINDS, Lattice, energy, gen_waveform, lp_norm, random_smooth_set
from .uncertainty import CATALOG, SuiteConfig, run_full_suite, support_lower_bound

ORACLE_TOL = 1e-9


def _threads():
    raw = os.environ.get("AMBKIT_THREADS")
    if not raw:
        return None
    n = int(raw)
    if n < 1:
        raise ValueError("AMBKIT_THREADS must be a positive integer")
    return n


def _floats(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _complexes(text):
    return [complex(x.replace(" ", "")) for x in text.split(",") if x.strip()]


def _add_grid_flags(p):
    g = p.add_argument_group("grid")
    g.add_argument("--extent", type=float, default=8.0, help="square grid over [-extent, extent]^2")
    g.add_argument("--n", type=int, default=513, help="points per axis for the square grid")
    for name in ("tau0", "dtau", "nu0", "dnu"):
        g.add_argument(f"--{name}", type=float)
    g.add_argument("--ntau", type=int)
    g.add_argument("--nnu", type=int)


def _grid(args) -> GridSpec:
    spec = GridSpec.square(args.extent, args.n)
    explicit = {
        "tau0": args.tau0, "dtau": args.dtau, "n_tau": args.ntau,
        "nu0": args.nu0, "dnu": args.dnu, "n_nu": args.nnu,
    }
    d = spec.to_dict()
    d.update({k: v for k, v in explicit.items() if v is not None})
    return GridSpec(**d)


def _pick(sigs, i, name):
    if not 0 <= i < len(sigs):
        raise ValueError(f"--{name} {i} out of range for a set of {len(sigs)} signal(s)")
    return sigs[i]


# --------------------------------------------------------------------------
# subcommands


def cmd_gen(args):
    half = args.t
    n = int(round(2 * half / args.dt))
    lat = Lattice(-half, args.dt, n)
    if args.kind == "random_smooth":
        sigs = random_smooth_set(args.m, lat, seed=args.seed, normalize=args.normalize)
    else:
        params = {"normalize": args.normalize, "seed": args.seed}
        if args.alpha is not None:
            params["alpha"] = args.alpha
        if args.kind == "gaussian":
            if args.beta:
                params["beta"] = _complexes(args.beta)[0]
        elif args.kind == "matched_gaussian_pair":
            if args.beta:
                params["betas"] = _complexes(args.beta)
        elif args.kind == "hermite":
            params["orders"] = [int(x) for x in args.orders.split(",")]
        elif args.kind == "lfm_chirp":
            params["rates"] = _floats(args.rates)
            if args.centers:
                params["centers"] = _floats(args.centers)
            if args.duration is not None:
                params["duration"] = args.duration
        elif args.kind == "phase_code":
            if args.code:
                params["code"] = _complexes(args.code)
            else:
                params["length"] = args.length
            params["chip"] = args.chip
            params["smooth"] = args.smooth
        sigs = gen_waveform(args.kind, params, lat)
    aio.write_signal_set(args.output, sigs)
    for label, s in zip(sigs.labels, sigs):
        print(f"{label}\t{lp_norm(s, 2):.15g}")
    return 0


def cmd_amb(args):
    sigs = aio.read_signal_set(args.set)
    u, v = _pick(sigs, args.i, "i"), _pick(sigs, args.j, "j")
    spec = _grid(args)
    grid = ambiguity(u, v, spec, args.kind, _threads())
    aio.write_ambg(args.output, grid)
    i0, j0 = spec.index_of(0.0, 0.0)
    print(f"peak |A| = {grid.peak:.15g}; |A| at lattice point nearest origin = {abs(grid.values[i0, j0]):.15g}")
    if args.oracle:
        sub = spec.subsample(9, 9)
        ti = np.rint((sub.taus - spec.tau0) / spec.dtau).astype(int)
        ni = np.rint((sub.nus - spec.nu0) / spec.dnu).astype(int)
        pts = [(a, b) for a in sub.taus for b in sub.nus]
        direct = np.array(ambiguity_direct(u, v, pts, args.kind)).reshape(sub.shape)
        diff = float(np.abs(grid.values[np.ix_(ti, ni)] - direct).max())
        print(f"oracle max abs diff on {sub.n_tau}x{sub.n_nu} subsample = {diff:.3e}")
        if diff > ORACLE_TOL:
            print(f"oracle mismatch {diff:.3e} > {ORACLE_TOL:g}", file=sys.stderr)
            return 1
    return 0


def cmd_mimo(args):
    sigs = aio.read_signal_set(args.set)
    spec = _grid(args)
    field = correlation_matrix_field(sigs, spec, args.kind, _threads())
    aio.write_field(args.output, field)
    print(f"wrote {field.m}x{field.m} correlation field to {args.output}")
    if args.amb_output:
        steer = SteeringSpec(args.gamma)
        g = mimo_ambiguity(field, steer, args.fs, args.fsp)
        aio.write_ambg(args.amb_output, g)
        print(f"MIMO ambiguity at fs={args.fs:g}, fs'={args.fsp:g}: peak {g.peak:.15g}")
    return 0


def cmd_verify(args):
    sigs = aio.read_signal_set(args.set)
    only = tuple(x.strip() for x in args.only.split(",")) if args.only else None
    kwargs = {}
    if args.p:
        kwargs["p_list"] = tuple(_floats(args.p))
    if args.region:
        kwargs["regions"] = tuple(Region.parse(r) for r in args.region)
    if args.eps:
        kwargs["eps_list"] = tuple(_floats(args.eps))
    cfg = SuiteConfig(grid=_grid(args), steering=SteeringSpec(args.gamma, args.ks), relations=only, **kwargs)
    results = run_full_suite(sigs, cfg)
    report = aio.report_dict(results, sigs, cfg.grid, cfg.steering.to_dict(len(sigs)), __version__)
    if args.output:
        aio.write_report(args.output, report)
    n_bad = 0
    for r in results:
        n_bad += not r.satisfied
        if not args.quiet:
            print(r)
    print(f"{len(results) - n_bad}/{len(results)} relations satisfied")
    return 0 if n_bad == 0 else 1


def cmd_support(args):
    eps_list = _floats(args.eps)
    if any(not e > 0 for e in eps_list):
        raise ValueError("eps must be positive")
    if args.ambg:
        grid = aio.read_ambg(args.ambg)
        denom = args.energy if args.energy is not None else grid_lp_integral(grid, 2)
    elif args.set:
        sigs = aio.read_signal_set(args.set)
        u, v = _pick(sigs, args.i, "i"), _pick(sigs, args.j, "j")
        grid = ambiguity(u, v, _grid(args), "symmetric", _threads())
        denom = args.energy if args.energy is not None else energy(u) * energy(v)
    else:
        raise ValueError("support needs --ambg or --set")
    rows = []
    for eps in eps_list:
        mask = grid.magnitude > eps
        area = epsilon_support(grid, eps)
        num = float((grid.magnitude[mask] ** 2).sum() * grid.spec.cell_area)
        bound = support_lower_bound(num, denom)
        rows.append({"eps": eps, "area": area, "bound": bound, "margin": area - bound})
    if args.json:
        print(json.dumps({"denominator": denom, "rows": rows}))
    else:
        print("eps\tarea\tbound\tmargin")
        for r in rows:
            print(f"{r['eps']:.6g}\t{r['area']:.9g}\t{r['bound']:.9g}\t{r['margin']:.9g}")
    return 0


def cmd_norms(args):
    if args.field:
        field = aio.read_field(args.field)
    elif args.set:
        field = correlation_matrix_field(aio.read_signal_set(args.set), _grid(args), "symmetric", _threads())
    else:
        raise ValueError("norms needs --field or --set")
    nf = matrix_norm_field(field, args.kind, args.p)
    if args.output:
        taus, nus = field.spec.taus, field.spec.nus
        with open(args.output, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["tau", "nu", nf.kind])
            for a in range(field.spec.n_tau):
                for b in range(field.spec.n_nu):
                    w.writerow([repr(float(taus[a])), repr(float(nus[b])), repr(float(nf.values[a, b]))])
    power = args.p if args.kind == "entrywise_p" else 2.0
    print(f"{nf.kind}: max {nf.peak:.12g}; integral of norm^{power:g} {nf.integral(power):.12g}")
    return 0


# --------------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="ambkit", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a SignalSet JSON file")
    g.add_argument("--kind", required=True, choices=WAVEFORM_KINDS + ("random_smooth",))
    g.add_argument("--alpha", type=float)
    g.add_argument("--beta", help="complex value(s), comma separated")
    g.add_argument("--orders", default="0,1")
    g.add_argument("--rates", default="1.0")
    g.add_argument("--centers")
    g.add_argument("--duration", type=float)
    g.add_argument("--code", help="chip values, comma separated")
    g.add_argument("--length", type=int, default=13)
    g.add_argument("--chip", type=float, default=0.5)
    g.add_argument("--smooth", type=float, default=0.0)
    g.add_argument("--m", type=int, default=2, help="set size for random_smooth")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--normalize", action=argparse.BooleanOptionalAction, default=True)
    g.add_argument("--t", type=float, default=8.0, help="lattice covers [-t, t)")
    g.add_argument("--dt", type=float, default=1.0 / 32)
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("amb", help="compute one ambiguity surface to an AMBG file")
    a.add_argument("--set", required=True)
    a.add_argument("--i", type=int, default=0)
    a.add_argument("--j", type=int, default=0)
    a.add_argument("--kind", choices=("cross", "symmetric", "wigner"), default="symmetric")
    a.add_argument("--oracle", action="store_true", help="check a 9x9 subsample against direct quadrature")
    _add_grid_flags(a)
    a.add_argument("-o", "--output", required=True)
    a.set_defaults(func=cmd_amb)

    m = sub.add_parser("mimo", help="compute the correlation matrix field of a set")
    m.add_argument("--set", required=True)
    m.add_argument("--kind", choices=("cross", "symmetric"), default="symmetric")
    m.add_argument("--gamma", type=int, default=1)
    m.add_argument("--fs", type=float, default=0.0)
    m.add_argument("--fsp", type=float, default=0.0)
    m.add_argument("--amb-output", help="also write the MIMO ambiguity slice at (fs, fsp)")
    _add_grid_flags(m)
    m.add_argument("-o", "--output", required=True, help="output directory")
    m.set_defaults(func=cmd_mimo)

    v = sub.add_parser("verify", help="run the uncertainty-relation suite")
    v.add_argument("--set", required=True)
    v.add_argument("--only", help=f"comma separated subset of: {','.join(CATALOG)}")
    v.add_argument("--gamma", type=int, default=1)
    v.add_argument("--ks", type=int)
    v.add_argument("--p", help="comma separated exponents")
    v.add_argument("--region", action="append", help="rect:a,b,c,d or disk:tau,nu,r (repeatable)")
    v.add_argument("--eps", help="comma separated eps levels")
    v.add_argument("--quiet", action="store_true")
    _add_grid_flags(v)
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("support", help="eps-support areas and their lower bounds")
    s.add_argument("--ambg")
    s.add_argument("--set")
    s.add_argument("--i", type=int, default=0)
    s.add_argument("--j", type=int, default=0)
    s.add_argument("--eps", default="0.05,0.1,0.2,0.4")
    s.add_argument("--energy", type=float, help="denominator ||u||^2 ||v||^2 (default: from input)")
    s.add_argument("--json", action="store_true")
    _add_grid_flags(s)
    s.set_defaults(func=cmd_support)

    n = sub.add_parser("norms", help="matrix-norm field of R(tau, nu) as CSV")
    n.add_argument("--field")
    n.add_argument("--set")
    n.add_argument("--kind", choices=("frobenius", "induced1", "inducedInf", "entrywise_p"), default="frobenius")
    n.add_argument("--p", type=float)
    _add_grid_flags(n)
    n.add_argument("-o", "--output")
    n.set_defaults(func=cmd_norms)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"ambkit {args.command}: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
