"""Command-line front end.

One executable, four subcommands:

    nonlocality-lab prbox                     # PR box table, CHSH, checkers
    nonlocality-lab singlet --n 1000000       # PR-box singlet Monte Carlo
    nonlocality-lab crypto eval|scan|tau-average
    nonlocality-lab theorem --nmin 2 --nmax 6 # operator-algebra residuals

Exit codes: 0 success, 1 verification failure, 2 usage error.  All
randomness derives from --seed through named substreams, so identical
invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from ._rng import derive_seed, substream
from .correlations import (
    check_no_signaling,
    check_outcome_independence,
    check_parameter_independence,
)
from .crypto_bell import (
    closed_form_chsh,
    quantum_chsh_reference,
    region_scan,
    scan_to_csv,
    singlet_reference,
    tau_average_chsh,
)
from .entangled_ops import theorem_bound, verification_report
from .pr_box import pr_chsh, pr_ideal_table, pr_table_from_hidden
from .singlet_sim import estimate_singlet_correlation

__all__ = ["main"]


def _random_direction(rng: np.random.Generator) -> np.ndarray:
    z = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, 2.0 * math.pi)
    r = math.sqrt(1.0 - z * z)
    return np.array([r * math.cos(phi), r * math.sin(phi), z])


# ---------------------------------------------------------------------------
# prbox
# ---------------------------------------------------------------------------


def _cmd_prbox(args: argparse.Namespace) -> int:
    table = pr_ideal_table()
    report = pr_chsh()
    no_sig = check_no_signaling(table)
    pi_res = check_parameter_independence(table)
    oi_res = check_outcome_independence(table)
    hidden_ok = pr_table_from_hidden((0.5, 0.5)) == table
    slices_ok = True
    for prior in ((1.0, 0.0), (0.0, 1.0)):
        slice_table = pr_table_from_hidden(prior)
        slices_ok &= check_outcome_independence(slice_table).ok
        slices_ok &= not check_parameter_independence(slice_table).ok
    ok = (
        report.f == 4.0
        and report.nonlocality.value == "superquantum"
        and no_sig.ok
        and no_sig.max_deviation == 0.0
        and pi_res.ok
        and not oi_res.ok
        and hidden_ok
        and slices_ok
    )
    if args.json:
        payload = {
            "table": json.loads(table.to_json()),
            "f": report.f,
            "class": report.nonlocality.value,
            "no_signaling": {"ok": no_sig.ok, "max_deviation": no_sig.max_deviation},
            "parameter_independence": pi_res.ok,
            "outcome_independence": oi_res.ok,
            "hidden_model_reproduces_table": hidden_ok,
            "deterministic_slices_oi_not_pi": slices_ok,
            "ok": ok,
        }
        print(json.dumps(payload, indent=2))
    else:
        print("ideal PR box P(a,b|x,y), rows in (a,b) = 00,01,10,11 order:")
        for x in (0, 1):
            for y in (0, 1):
                row = " ".join(f"{table.prob(x, y, a, b):g}" for a in (0, 1) for b in (0, 1))
                print(f"  x={x} y={y} : {row}")
        print(f"F = {report.f:.6f}, class = {report.nonlocality.value}")
        print(f"no-signaling: {'PASS' if no_sig.ok else 'FAIL'} (max deviation {no_sig.max_deviation:g})")
        print(f"parameter independence: {'PASS' if pi_res.ok else 'FAIL'}")
        w = oi_res.witness
        print(
            f"outcome independence: {'FAIL (expected)' if not oi_res.ok else 'PASS (unexpected)'}"
            + (
                f" witness: P({w.party}={w.outcome}|x={w.x},y={w.y},other={w.given})"
                f" = {w.conditional:g} vs marginal {w.marginal:g}"
                if w
                else ""
            )
        )
        print(f"hidden-bit model with prior (1/2,1/2) reproduces table: {'PASS' if hidden_ok else 'FAIL'}")
        print(f"deterministic slices satisfy OI, violate PI: {'PASS' if slices_ok else 'FAIL'}")
        print(f"overall: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# singlet
# ---------------------------------------------------------------------------


def _cmd_singlet(args: argparse.Namespace) -> int:
    rng = substream(args.seed, "singlet-directions")
    records = []
    all_ok = True
    for k in range(args.pairs):
        a = _random_direction(rng)
        b = _random_direction(rng)
        pair_seed = derive_seed(args.seed, f"singlet-pair-{k}")
        estimate = estimate_singlet_correlation(a, b, args.n, pair_seed)
        reference = singlet_reference(a, b)
        threshold = max(0.01, 4.0 * estimate.stderr)
        ok = abs(estimate.e_hat - reference) < threshold
        all_ok &= ok
        records.append(
            {
                "a": [float(v) for v in a],
                "b": [float(v) for v in b],
                "n": args.n,
                "seed": pair_seed,
                "e_hat": estimate.e_hat,
                "stderr": estimate.stderr,
                "quantum_reference": reference,
                "pass": ok,
            }
        )
    if args.json:
        print(json.dumps({"pairs": records, "ok": all_ok}, indent=2))
    else:
        print(f"{'a.b':>10} {'e_hat':>10} {'-a.b':>10} {'stderr':>10}  verdict (4 sigma, 0.01 floor)")
        for rec in records:
            dot = -rec["quantum_reference"]
            print(
                f"{dot:>+10.5f} {rec['e_hat']:>+10.5f} {rec['quantum_reference']:>+10.5f} "
                f"{rec['stderr']:>10.5f}  {'PASS' if rec['pass'] else 'FAIL'}"
            )
        print(f"all pairs {'PASS' if all_ok else 'FAIL'}")
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# crypto
# ---------------------------------------------------------------------------


def _cmd_crypto_eval(args: argparse.Namespace) -> int:
    comparison = closed_form_chsh(args.alpha, args.tau)
    exact = comparison.exact
    if args.json:
        payload = {
            "alpha": exact.alpha,
            "tau": exact.tau,
            "correlations": {
                "e_ab": exact.e_ab,
                "e_ab_prime": exact.e_ab_prime,
                "e_a_prime_b": exact.e_a_prime_b,
                "e_a_prime_b_prime": exact.e_a_prime_b_prime,
            },
            "f": exact.f,
            "class": exact.nonlocality.value,
            "closed_form": {
                "printed": comparison.printed_f,
                "normalized": comparison.normalized_f,
            },
            "discrepancy": {
                "printed": comparison.printed_max_dev,
                "normalized": comparison.normalized_max_dev,
                "matching_variant": comparison.matching_variant,
                "singular": comparison.singular,
            },
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"alpha = {exact.alpha!r}, tau = {exact.tau!r}")
        print(
            f"E(a,b) = {exact.e_ab:+.9f}  E(a,b') = {exact.e_ab_prime:+.9f}  "
            f"E(a',b) = {exact.e_a_prime_b:+.9f}  E(a',b') = {exact.e_a_prime_b_prime:+.9f}"
        )
        print(f"F = {exact.f:.6f}, class = {exact.nonlocality.value}")
        if comparison.singular:
            print("closed forms: singular point (NaN components)")
        else:
            print(
                f"closed form printed:    F = {comparison.printed_f:+.9f}, "
                f"max correlation deviation {comparison.printed_max_dev:.3e}"
            )
            print(
                f"closed form normalized: F = {comparison.normalized_f:+.9f}, "
                f"max correlation deviation {comparison.normalized_max_dev:.3e}"
            )
            print(f"matching variant: {comparison.matching_variant}")
    return 0


def _cmd_crypto_scan(args: argparse.Namespace) -> int:
    cells = region_scan(args.n_alpha, args.n_tau)
    scan_to_csv(cells, args.out)
    counts: dict[str, int] = {}
    for cell in cells:
        counts[cell.nonlocality.value] = counts.get(cell.nonlocality.value, 0) + 1
    peak = max(cells, key=lambda c: abs(c.f))
    print(f"wrote {len(cells)} cells to {args.out}")
    for name in ("local", "quantum_nonlocal", "superquantum"):
        print(f"  {name}: {counts.get(name, 0)}")
    print(f"max |f| = {abs(peak.f):.6f} at alpha = {peak.alpha:.6f}, tau = {peak.tau:.6f}")
    return 0 if len(counts) == 3 else 1


def _cmd_crypto_tau_average(args: argparse.Namespace) -> int:
    average = tau_average_chsh(args.alpha)
    reference = quantum_chsh_reference(args.alpha)
    gap = abs(average - reference)
    print(f"tau-averaged F = {average:.6f}")
    print(f"quantum oracle = {reference:.6f}")
    print(f"|difference| = {gap:.3e}")
    return 0 if gap <= 1e-6 else 1


# ---------------------------------------------------------------------------
# theorem
# ---------------------------------------------------------------------------


def _cmd_theorem(args: argparse.Namespace) -> int:
    report = verification_report(args.nmin, args.nmax, trials=args.trials, seed=args.seed)
    bounds = {n: theorem_bound(n) for n in (1, 10, 100, 10_000, 1_000_000)}
    if args.json:
        payload = {
            "dimensions": {
                str(n): res for n, res in report["dimensions"].items()
            },
            "tolerances": report["tolerances"],
            "partition_bound": {str(n): b for n, b in bounds.items()},
            "passed": report["passed"],
        }
        print(json.dumps(payload, indent=2))
    else:
        tolerances = report["tolerances"]
        for n, residuals in report["dimensions"].items():
            print(f"N = {n}")
            for key, value in residuals.items():
                verdict = "PASS" if value <= tolerances[key] else "FAIL"
                print(f"  {key:<32} {value:.3e}  (tol {tolerances[key]:.0e})  {verdict}")
        print("partition bound (2n/N) sin^2(pi/2n) at ||a||^2 = 1, N = 2:")
        for n, b in bounds.items():
            print(f"  n = {n:<9} bound = {b:.6e}")
        print(f"overall: {'PASS' if report['passed'] else 'FAIL'}")
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nonlocality-lab",
        description="Local, quantum and superquantum two-party correlations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_prbox = sub.add_parser("prbox", help="PR box table, CHSH value and checkers")
    p_prbox.add_argument("--json", action="store_true")
    p_prbox.set_defaults(func=_cmd_prbox)

    p_singlet = sub.add_parser("singlet", help="PR-box singlet Monte Carlo")
    p_singlet.add_argument("--n", type=int, default=1_000_000, help="rounds per pair")
    p_singlet.add_argument("--seed", type=int, default=1)
    p_singlet.add_argument("--pairs", type=int, default=5, help="random direction pairs")
    p_singlet.add_argument("--json", action="store_true")
    p_singlet.set_defaults(func=_cmd_singlet)

    p_crypto = sub.add_parser("crypto", help="crypto-nonlocal model")
    crypto_sub = p_crypto.add_subparsers(dest="crypto_command", required=True)

    p_eval = crypto_sub.add_parser("eval", help="conditional CHSH at one point")
    p_eval.add_argument("--alpha", type=float, required=True)
    p_eval.add_argument("--tau", type=float, required=True)
    p_eval.add_argument("--json", action="store_true")
    p_eval.set_defaults(func=_cmd_crypto_eval)

    p_scan = crypto_sub.add_parser("scan", help="grid scan to CSV")
    p_scan.add_argument("--grid", default="200x200", help="AxB cell counts")
    p_scan.add_argument("--out", default="region_scan.csv")
    p_scan.set_defaults(func=_cmd_crypto_scan)

    p_avg = crypto_sub.add_parser("tau-average", help="tau-averaged CHSH vs quantum oracle")
    p_avg.add_argument("--alpha", type=float, required=True)
    p_avg.set_defaults(func=_cmd_crypto_tau_average)

    p_theorem = sub.add_parser("theorem", help="operator-algebra identity residuals")
    p_theorem.add_argument("--nmin", type=int, default=2)
    p_theorem.add_argument("--nmax", type=int, default=6)
    p_theorem.add_argument("--trials", type=int, default=50)
    p_theorem.add_argument("--seed", type=int, default=1)
    p_theorem.add_argument("--json", action="store_true")
    p_theorem.set_defaults(func=_cmd_theorem)

    return parser


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if args.command == "singlet":
        if args.n < 1:
            parser.error("--n must be >= 1")
        if args.pairs < 1:
            parser.error("--pairs must be >= 1")
    elif args.command == "crypto":
        if args.crypto_command == "eval":
            if not 0.0 <= args.alpha <= math.pi / 4.0:
                parser.error("--alpha must lie in [0, pi/4]")
            if not 0.0 <= args.tau < math.pi:
                parser.error("--tau must lie in [0, pi)")
        elif args.crypto_command == "tau-average":
            if not 0.0 <= args.alpha <= math.pi / 4.0:
                parser.error("--alpha must lie in [0, pi/4]")
        elif args.crypto_command == "scan":
            parts = args.grid.lower().split("x")
            try:
                n_alpha, n_tau = (int(p) for p in parts)
            except ValueError:
                parser.error("--grid must look like 200x200")
            if n_alpha < 2 or n_tau < 2:
                parser.error("grid dimensions must be >= 2")
            args.n_alpha, args.n_tau = n_alpha, n_tau
    elif args.command == "theorem":
        if not 2 <= args.nmin <= args.nmax <= 16:
            parser.error("need 2 <= nmin <= nmax <= 16")
        if args.trials < 1:
            parser.error("--trials must be >= 1")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
