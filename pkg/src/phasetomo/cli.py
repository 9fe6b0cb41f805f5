"""Command-line surface: figure-data emission, state evolution, verification.

Subcommands: airy, wigner-stationary, tomogram-stationary, evolve, verify.
Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.
PHASETOMO_THREADS caps the BLAS/FFT thread pools (set before numpy loads).

Only stdlib imports happen at module level so the thread cap can take effect.
"""

from __future__ import annotations

import argparse
import os
import sys

SCHEMA_VERSION = 1


def _apply_thread_cap():
    cap = os.environ.get("PHASETOMO_THREADS")
    if not cap:
        return
    try:
        n = max(1, int(cap))
    except ValueError:
        print(f"phasetomo: ignoring invalid PHASETOMO_THREADS={cap!r}", file=sys.stderr)
        return
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS",
                "NUMEXPR_NUM_THREADS"):
        os.environ.setdefault(var, str(n))


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="phasetomo",
        description="Wavefunction / phase-space / tomographic dynamics of a "
                    "charge in a uniform field")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mass", type=float, default=1.0, help="particle mass m")
    common.add_argument("--field", type=float, default=1.0, help="field strength F")
    common.add_argument("--hbar", type=float, default=1.0, help="Planck constant")
    common.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="tabular output format")
    sub = parser.add_subparsers(dest="command", required=True)

    p_airy = sub.add_parser("airy", parents=[common],
                            help="tabulate the Airy-type profile Phi(x)")
    p_airy.add_argument("--range", nargs=2, type=float, default=(-12.0, 4.0),
                        metavar=("LO", "HI"))
    p_airy.add_argument("--num", type=int, default=1601)
    p_airy.add_argument("--out", default="airy.csv")

    p_wig = sub.add_parser("wigner-stationary", parents=[common],
                           help="phase-space density of a stationary state")
    p_wig.add_argument("--energy", type=float, default=1.0)
    p_wig.add_argument("--q-range", nargs=2, type=float, default=(-6.0, 3.0))
    p_wig.add_argument("--p-range", nargs=2, type=float, default=(-3.0, 3.0))
    p_wig.add_argument("--nq", type=int, default=301)
    p_wig.add_argument("--np", type=int, default=301, dest="npts")
    p_wig.add_argument("--out", default="wigner_stationary.csv")

    p_tom = sub.add_parser("tomogram-stationary", parents=[common],
                           help="tomogram of a stationary state (slice or sweep)")
    p_tom.add_argument("--energy", type=float, default=1.0)
    p_tom.add_argument("--mu", type=float, default=1.0)
    p_tom.add_argument("--nu", type=float, default=0.0)
    p_tom.add_argument("--sweep", action="store_true",
                       help="emit a theta-sweep instead of a single slice")
    p_tom.add_argument("--ntheta", type=int, default=178)
    p_tom.add_argument("--x-range", nargs=2, type=float, default=(-4.0, 8.0))
    p_tom.add_argument("--nx", type=int, default=801)
    p_tom.add_argument("--out", default="tomogram_stationary.csv")

    p_evo = sub.add_parser("evolve", parents=[common],
                           help="evolve a Gaussian state and report everything")
    p_evo.add_argument("--omega", type=float, default=1.0,
                       help="frequency of the preparing spring")
    p_evo.add_argument("--time", type=float, default=1.0)
    p_evo.add_argument("--out", default="evolve_report.json")

    p_ver = sub.add_parser("verify", parents=[common],
                           help="run the numerical verification suites")
    p_ver.add_argument("suite", nargs="?", default="all",
                       choices=("specfun", "green", "wigner", "tomography", "all"))
    p_ver.add_argument("--tol", type=float, default=None,
                       help="override every check tolerance (diagnostics)")
    p_ver.add_argument("--out", default=None, help="write the JSON report here")
    return parser


def _params_from(args):
    from .states import PhysParams
    return PhysParams(m=args.mass, F=args.field, hbar=args.hbar)


def _sidecar_path(out):
    stem, _ = os.path.splitext(out)
    return stem + "_meta.json"


def _emit_table(out, fmt, header, rows, sidecar=None):
    from .serialize import write_csv, write_json
    if fmt == "csv":
        write_csv(out, header, rows)
    else:
        write_json(out, {"schema_version": SCHEMA_VERSION, "columns": header,
                         "rows": [[float(v) for v in r] for r in rows]})
    if sidecar is not None:
        write_json(_sidecar_path(out), sidecar)


def cmd_airy(args) -> int:
    import numpy as np
    from .specfun import airy_phi_values
    if args.num < 2:
        raise SystemExit(2)
    lo, hi = args.range
    xs = np.linspace(lo, hi, args.num)
    phi = airy_phi_values(xs)
    _emit_table(args.out, args.format, ["x", "phi"], zip(xs, phi))
    print(f"wrote {args.num} rows to {args.out}")
    return 0


def cmd_wigner_stationary(args) -> int:
    import numpy as np
    from .phasespace import wigner_stationary
    from .states import StationaryState
    params = _params_from(args)
    s = StationaryState(args.energy, params)
    qs = np.linspace(args.q_range[0], args.q_range[1], args.nq)
    ps = np.linspace(args.p_range[0], args.p_range[1], args.npts)
    W = wigner_stationary(qs[:, None], ps[None, :], s)
    rows = ((q, p, W[i, j]) for i, q in enumerate(qs) for j, p in enumerate(ps))
    sidecar = {"schema_version": SCHEMA_VERSION, "energy": args.energy,
               "params": {"m": params.m, "F": params.F, "hbar": params.hbar},
               "q_axis": {"lo": qs[0], "hi": qs[-1], "n": args.nq},
               "p_axis": {"lo": ps[0], "hi": ps[-1], "n": args.npts},
               "order": "row-major, q outer"}
    _emit_table(args.out, args.format, ["q", "p", "w"], rows, sidecar)
    print(f"wrote {args.nq * args.npts} rows to {args.out}")
    return 0


def cmd_tomogram_stationary(args) -> int:
    import numpy as np
    from .states import StationaryState
    from .tomography import tomogram_stationary
    params = _params_from(args)
    s = StationaryState(args.energy, params)
    Xs = np.linspace(args.x_range[0], args.x_range[1], args.nx)
    meta = {"schema_version": SCHEMA_VERSION, "energy": args.energy,
            "params": {"m": params.m, "F": params.F, "hbar": params.hbar}}
    if args.sweep:
        # midpoint theta grid over [0, pi); rows with |mu| < 1e-3 are excluded
        theta = (np.arange(args.ntheta) + 0.5) * np.pi / args.ntheta
        theta = theta[np.abs(np.cos(theta)) >= 1e-3]
        rows = []
        for th in theta:
            w = tomogram_stationary(Xs, float(np.cos(th)), float(np.sin(th)), s)
            rows.extend((th, X, wv) for X, wv in zip(Xs, w))
        meta["theta_rows"] = len(theta)
        _emit_table(args.out, args.format, ["theta", "X", "w"], rows, meta)
        print(f"wrote {len(theta)} theta rows x {args.nx} samples to {args.out}")
    else:
        w = tomogram_stationary(Xs, args.mu, args.nu, s)
        meta.update({"mu": args.mu, "nu": args.nu})
        _emit_table(args.out, args.format, ["X", "w"], zip(Xs, w), meta)
        print(f"wrote slice (mu={args.mu}, nu={args.nu}) to {args.out}")
    return 0


def cmd_evolve(args) -> int:
    import numpy as np
    from .oracle import GridState, evolve
    from .phasespace import gaussian_wigner, evolve_gaussian_wigner
    from .serialize import write_json
    from .states import gaussian_eval, gaussian_ground
    from .propagators import propagate_gaussian
    from .tomography import gaussian_tomogram

    params = _params_from(args)
    g0 = gaussian_ground(args.omega, params)
    t_final = args.time
    gt = propagate_gaussian(g0, t_final, params)

    traj = []
    for t in np.linspace(0.0, t_final, 21):
        gti = propagate_gaussian(g0, float(t), params)
        traj.append({"t": float(t), "mean_x": gti.mean_x(),
                     "mean_p": gti.mean_p(params.hbar), "var_x": gti.var_x(),
                     "var_p": gti.var_p(params.hbar)})

    # Wigner grid of the evolved state on a window tracking the packet
    gw_t = evolve_gaussian_wigner(gaussian_wigner(g0, params), t_final, params)
    cx, cp = gt.mean_x(), gt.mean_p(params.hbar)
    wq = 6 * np.sqrt(gt.var_x())
    wp = 6 * np.sqrt(gt.var_p(params.hbar))
    qs = np.linspace(cx - wq, cx + wq, 201)
    ps = np.linspace(cp - wp, cp + wp, 201)
    Wvals = gw_t(qs[:, None], ps[None, :])
    stem, _ = os.path.splitext(args.out)
    wigner_file = stem + "_wigner.csv"
    from .serialize import write_csv
    write_csv(wigner_file, ["q", "p", "w"],
              ((q, p, Wvals[i, j]) for i, q in enumerate(qs)
               for j, p in enumerate(ps)))

    slices = []
    Xs = np.linspace(cx + cp - 8.0, cx + cp + 8.0, 161)
    for mu, nu in ((1.0, 0.0), (0.0, 1.0), (np.sqrt(0.5), np.sqrt(0.5))):
        w = gaussian_tomogram(gt, mu, nu, Xs, params)
        slices.append({"mu": float(mu), "nu": float(nu),
                       "X": [float(v) for v in Xs], "w": [float(v) for v in w]})

    # independent grid-solver deviation
    if t_final > 0:
        span = max(20.0, abs(cx) + 10 * np.sqrt(gt.var_x()))
        x = np.linspace(-span, span, 4096)
        dx = x[1] - x[0]
        dt = min(9e-4, 9.5 * params.m * dx**2 / params.hbar)
        s1 = evolve(GridState(x, gaussian_eval(g0, x), params), t_final, dt)
        ref = gaussian_eval(gt, x)
        oracle_l2 = float(np.sqrt(np.sum(np.abs(s1.psi - ref) ** 2) * dx))
    else:
        oracle_l2 = 0.0

    report = {
        "schema_version": SCHEMA_VERSION,
        "params": {"m": params.m, "F": params.F, "hbar": params.hbar,
                   "omega": args.omega},
        "time": t_final,
        "state_initial": {"n": [g0.n.real, g0.n.imag], "a": [g0.a.real, g0.a.imag],
                          "b": [g0.b.real, g0.b.imag]},
        "state_final": {"n": [gt.n.real, gt.n.imag], "a": [gt.a.real, gt.a.imag],
                        "b": [gt.b.real, gt.b.imag]},
        "trajectory": traj,
        "wigner_grid_file": wigner_file,
        "tomogram_slices": slices,
        "oracle_l2_deviation": oracle_l2,
    }
    write_json(args.out, report)
    print(f"wrote evolution report to {args.out} (oracle L2 deviation {oracle_l2:.3e})")
    return 0


def cmd_verify(args) -> int:
    from .serialize import write_json
    from .verify import SUITE_NAMES, run_suites
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    ok, results = run_suites(names, tol_override=args.tol)
    n_pass = n_total = 0
    for suite, checks in results.items():
        for c in checks:
            n_total += 1
            n_pass += c["passed"]
            status = "PASS" if c["passed"] else "FAIL"
            print(f"[{status}] {suite}:{c['check']}  residual={c['residual']:.3e}  "
                  f"tol={c['tolerance']:.1e}")
    print(f"{n_pass}/{n_total} checks passed")
    if args.out:
        write_json(args.out, {"schema_version": SCHEMA_VERSION, "passed": bool(ok),
                              "suites": results})
    return 0 if ok else 1


_HANDLERS = {
    "airy": cmd_airy,
    "wigner-stationary": cmd_wigner_stationary,
    "tomogram-stationary": cmd_tomogram_stationary,
    "evolve": cmd_evolve,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    _apply_thread_cap()
    args = _build_parser().parse_args(argv)
    from .errors import PhaseTomoError
    try:
        return _HANDLERS[args.command](args)
    except PhaseTomoError as exc:
        print(f"phasetomo: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"phasetomo: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
