"""Command-line interface.

Subcommands: ``family`` (bound-curve sweep to CSV), ``bounds`` (JSON report
for one state file), ``verify`` (self-check suites), ``survey`` (random-state
detection rates to CSV), ``witness`` (spectrum / matrix dump).

Exit codes: 0 success, 1 input or usage error, 2 verification failure.
Every randomized command takes an explicit --seed; there is no wall-clock
default, so identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys

import numpy as np

from . import closedform
from .bounds import (concurrence_lower_bound, eof_lower_bound,
                     family_bounds_closed_form)
from .criteria import (OptimizerBudget, build_witness, evaluate_criteria,
                       partial_transpose_norm, realign_norm, twisted_witness,
                       witness_value)
from .linalg import hermitian_spectrum
from .spinspace import coupled_system
from .states import (DensityMatrix, family_state, haar_unitary, load_state,
                     random_density, random_pure, schmidt_decompose)

FAMILY_COLUMNS = ("lambda", "tr_W_rho", "bound_witness", "norm_T2", "bound_ppt",
                  "norm_R", "bound_realign", "bound_upper", "eof_new", "eof_old",
                  "eof_upper")

SURVEY_COLUMNS = ("state", "ppt_violated", "realignment_violated", "witness_value",
                  "witness_detects", "trace_norm_T2", "trace_norm_R")


def _fmt(x) -> str:
    """Shortest decimal string that round-trips to the same double."""
    return repr(float(x))


def _even_n(value: str) -> int:
    n = int(value)
    if n < 4 or n % 2 != 0:
        raise argparse.ArgumentTypeError(f"local dimension must be even and >= 4, got {n}")
    return n


def _family_row(sys_, lam: float) -> list[str]:
    rho = family_state(sys_, lam).matrix
    n = sys_.n
    report = concurrence_lower_bound(rho, sys_)
    t2 = report.f_ppt + 1.0
    rn = report.f_realign + 1.0
    scale = np.sqrt(2 / (n * (n - 1)))
    eof_new = report.eof_lower
    eof_old = eof_lower_bound(rho, sys_, include_witness=False)
    return [_fmt(lam), _fmt(-report.f_witness + 0.0),
            _fmt(scale * max(report.f_witness, 0.0) + 0.0),
            _fmt(t2), _fmt(scale * max(report.f_ppt, 0.0) + 0.0),
            _fmt(rn), _fmt(scale * max(report.f_realign, 0.0) + 0.0),
            _fmt(np.sqrt(2 * (n - 1) / n) * lam),
            _fmt(eof_new), _fmt(eof_old), _fmt(lam * np.log2(n))]


def cmd_family(args) -> int:
    if args.steps < 2:
        print("error: --steps must be at least 2", file=_sys.stderr)
        return 1
    if not (0 <= args.lambda_min <= args.lambda_max <= 1):
        print("error: need 0 <= lambda-min <= lambda-max <= 1", file=_sys.stderr)
        return 1
    sys_ = coupled_system(args.n)
    grid = np.linspace(args.lambda_min, args.lambda_max, args.steps)
    lines = [",".join(FAMILY_COLUMNS)]
    lines += [",".join(_family_row(sys_, float(lam))) for lam in grid]
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_bounds(args) -> int:
    state = load_state(args.state)
    if not isinstance(state, DensityMatrix):
        state = DensityMatrix(n_local=state.n_local, matrix=state.projector())
    sys_ = coupled_system(state.n_local)
    budget = None
    if args.optimize:
        if args.seed is None:
            print("error: --optimize requires an explicit --seed", file=_sys.stderr)
            return 1
        budget = OptimizerBudget(restarts=args.restarts, iterations=args.iterations,
                                 seed=args.seed)
    report = concurrence_lower_bound(state.matrix, sys_, optimize=args.optimize,
                                     budget=budget)
    verdict = evaluate_criteria(state.matrix, sys_)
    out = {
        "n_local": state.n_local,
        "f_ppt": report.f_ppt,
        "f_realign": report.f_realign,
        "f_witness": report.f_witness,
        "concurrence_lower": report.concurrence_lower,
        "lambda0": report.lambda0,
        "eof_lower": report.eof_lower,
        "ppt_violated": verdict.ppt_violated,
        "realignment_violated": verdict.realignment_violated,
        "witness_value": verdict.witness_value,
        "witness_detects": verdict.witness_detects,
        "trace_norm_T2": verdict.trace_norm_T2,
        "trace_norm_R": verdict.trace_norm_R,
    }
    if report.f_witness_optimized is not None:
        out["f_witness_optimized"] = report.f_witness_optimized
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def cmd_survey(args) -> int:
    if args.samples < 1:
        print("error: --samples must be at least 1", file=_sys.stderr)
        return 1
    sys_ = coupled_system(args.n)
    n2 = args.n * args.n
    rank = args.rank if args.rank is not None else n2
    if not 1 <= rank <= n2:
        print(f"error: --rank must lie in [1, {n2}]", file=_sys.stderr)
        return 1
    entries = []
    if args.include_family:
        for lam in (0.05, 0.06, 0.07, 0.08, 0.09):
            entries.append((f"family({lam})", family_state(sys_, lam).matrix))
    streams = np.random.SeedSequence(args.seed).spawn(args.samples)
    for k in range(args.samples):
        entries.append((f"random{k}", random_density(sys_, rank, streams[k]).matrix))

    lines = [",".join(SURVEY_COLUMNS)]
    n_ppt = n_re = n_wit = n_wit_only = 0
    for name, rho in entries:
        v = evaluate_criteria(rho, sys_)
        n_ppt += v.ppt_violated
        n_re += v.realignment_violated
        n_wit += v.witness_detects
        n_wit_only += v.witness_detects and not v.ppt_violated and not v.realignment_violated
        lines.append(",".join([name, str(v.ppt_violated), str(v.realignment_violated),
                               _fmt(v.witness_value), str(v.witness_detects),
                               _fmt(v.trace_norm_T2), _fmt(v.trace_norm_R)]))
    lines.append(f"# summary states={len(entries)} ppt={n_ppt} realign={n_re} "
                 f"witness={n_wit} witness_only={n_wit_only}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_witness(args) -> int:
    sys_ = coupled_system(args.n)
    w = build_witness(sys_)
    evals, _ = hermitian_spectrum(w.matrix)
    if args.format == "json":
        obj = {"n_local": args.n,
               "trace": float(np.trace(w.matrix).real),
               "eigenvalues": [float(x) for x in evals],
               "matrix": [[[z.real, z.imag] for z in row] for row in w.matrix]}
        text = json.dumps(obj, indent=2) + "\n"
    else:
        lines = ["eigenvalue"] + [_fmt(x) for x in evals]
        lines.append("# matrix rows (real part only differs from zero)")
        for row in w.matrix:
            lines.append(",".join(_fmt(z.real) for z in row))
        text = "\n".join(lines) + "\n"
    _write_text(args.out, text)
    return 0


def _write_text(path, text: str) -> None:
    if path is None or path == "-":
        _sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


class _Checker:
    """Collects named pass/fail outcomes and prints one line each."""

    def __init__(self):
        self.failed = False

    def check(self, name: str, err: float, tol: float) -> None:
        ok = err <= tol
        self.failed |= not ok
        status = "PASS" if ok else "FAIL"
        print(f"{status} {name:40s} max_err={err:.3e} tol={tol:.1e}")


def _verify_witness(ck: _Checker, n: int, tol: float) -> None:
    sys_ = coupled_system(n)
    ws = [build_witness(sys_, form) for form in ("lifted", "swap", "spectral")]
    err = max(float(np.abs(a.matrix - b.matrix).max())
              for a, b in ((ws[0], ws[1]), (ws[1], ws[2])))
    ck.check(f"witness-forms-agree n={n}", err, max(tol, 1e-10))
    evals, _ = hermitian_spectrum(ws[1].matrix)
    spec_err = 0.0
    mult_err = 0
    pos = 0
    for value, mult in closedform.witness_spectrum(n):
        cluster = evals[pos:pos + mult]
        got = int(np.sum(np.abs(evals - value) < 1e-6))
        mult_err += abs(got - mult)
        spec_err = max(spec_err, float(np.abs(cluster - value).max()))
        pos += mult
    ck.check(f"witness-spectrum n={n}", spec_err + mult_err, max(tol, 1e-9))
    psi = sys_.singlet
    ck.check(f"witness-singlet-expectation n={n}",
             abs(float((psi.conj() @ ws[1].matrix @ psi).real) + (n - 2)), max(tol, 1e-10))


def _verify_appendix_b(ck: _Checker, n: int, tol: float) -> None:
    sys_ = coupled_system(n)
    w = build_witness(sys_)
    norm_err = 0.0
    wit_err = 0.0
    for k in range(101):
        lam = k / 100
        rho = family_state(sys_, lam).matrix
        t2_ref, re_ref = closedform.family_trace_norms(n, lam)
        norm_err = max(norm_err,
                       abs(partial_transpose_norm(rho, sys_) - t2_ref),
                       abs(realign_norm(rho, sys_) - re_ref))
        wit_err = max(wit_err, abs(witness_value(w, rho)
                                   - closedform.family_witness_expectation(n, lam)))
    ck.check(f"trace-norms-vs-closed-form n={n}", norm_err, tol)
    ck.check(f"witness-value-vs-closed-form n={n}", wit_err, 1e-12)


def _verify_appendix_a(ck: _Checker, n: int, samples: int, seed: int, tol: float) -> None:
    sys_ = coupled_system(n)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        cfg = closedform.sample_frame_config(sys_, rng)
        worst = max(worst, abs(closedform.overlap_kernel(cfg, sys_)))
    ck.check(f"overlap-kernel-bound n={n} samples={samples}", max(worst - 1.0, 0.0), 1e-12)

    w = build_witness(sys_)
    worst = 0.0
    for k in range(max(samples // 10, 100)):
        psi = random_pure(sys_, rng)
        alpha = schmidt_decompose(psi).coefficients
        cap = float(np.sum(alpha) ** 2 - np.sum(alpha ** 2))
        fw = -witness_value(w, psi.projector())
        worst = max(worst, fw - cap)
        u1, u2 = haar_unitary(sys_.n, rng), haar_unitary(sys_.n, rng)
        fw_twist = -float(np.einsum("ij,ji->", twisted_witness(w, u1, u2),
                                    psi.projector()).real)
        worst = max(worst, fw_twist - cap)
    ck.check(f"pure-state-witness-cap n={n}", max(worst, 0.0), 1e-10)


def _verify_figures(ck: _Checker, n: int, tol: float) -> None:
    sys_ = coupled_system(n)
    scale = np.sqrt(2 / (n * (n - 1)))
    err_w = err_p = err_eof = 0.0
    for k in range(101):
        lam = k / 100
        point = family_bounds_closed_form(n, lam)
        rho = family_state(sys_, lam).matrix
        report = concurrence_lower_bound(rho, sys_)
        err_w = max(err_w, abs(scale * max(report.f_witness, 0.0) - point.bound_witness))
        err_p = max(err_p, abs(scale * max(report.f_ppt, 0.0) - point.bound_ppt))
        err_eof = max(err_eof, abs(report.eof_lower - point.eof_new),
                      abs(eof_lower_bound(rho, sys_, include_witness=False) - point.eof_old))
    ck.check(f"figure-concurrence-curves n={n}", max(err_w, err_p), tol)
    ck.check(f"figure-eof-curves n={n}", err_eof, tol)
    cross = family_bounds_closed_form(n, 0.5)
    ck.check(f"curve-crossing-at-half n={n}",
             abs(cross.bound_witness - cross.bound_ppt), tol)


def cmd_verify(args) -> int:
    ck = _Checker()
    suites = ("witness", "appendixA", "appendixB", "figures") if args.suite == "all" \
        else (args.suite,)
    if any(s == "appendixA" for s in suites) and args.seed is None:
        print("error: this suite is randomized and requires an explicit --seed",
              file=_sys.stderr)
        return 1
    for suite in suites:
        if suite == "witness":
            _verify_witness(ck, args.n, args.tol)
        elif suite == "appendixB":
            _verify_appendix_b(ck, args.n, args.tol)
        elif suite == "appendixA":
            _verify_appendix_a(ck, args.n, args.samples, args.seed, args.tol)
        elif suite == "figures":
            _verify_figures(ck, args.n, args.tol)
    return 2 if ck.failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entbound",
        description="Entanglement detection and concurrence / entanglement-of-"
                    "formation lower bounds on C^N x C^N (even N >= 4).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", help="sweep the singlet/Werner family, write CSV")
    p.add_argument("--n", type=_even_n, default=4)
    p.add_argument("--lambda-min", type=float, default=0.0)
    p.add_argument("--lambda-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("bounds", help="JSON bound report for one state file")
    p.add_argument("state", help="path to a JSON state file")
    p.add_argument("--optimize", action="store_true",
                   help="sharpen the witness functional over product unitaries")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--iterations", type=int, default=500)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run self-check suites")
    p.add_argument("suite", choices=("witness", "appendixA", "appendixB",
                                     "figures", "all"))
    p.add_argument("--n", type=_even_n, default=4)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("survey", help="criteria verdicts over random states, write CSV")
    p.add_argument("--n", type=_even_n, default=4)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--rank", type=int, default=None, help="Ginibre factor width (default N^2)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--include-family", action="store_true",
                   help="inject family states at lambda = 0.05..0.09")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("witness", help="print the witness spectrum and matrix")
    p.add_argument("--n", type=_even_n, default=4)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_witness)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; remap to the input-error code
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
