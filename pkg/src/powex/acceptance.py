"""The acceptance checks behind ``powex verify``: quantitative desk-scale
verification of every headline property, each with an explicit measured
value, bound, and runtime budget.

Check functions return a CheckResult and never raise on a failed bound;
they raise only if the computation itself cannot run. ``run_all`` executes
the full battery in order.
"""
from __future__ import annotations

import math
import subprocess
import sys
import time
from dataclasses import dataclass

from .convergence_lab import error_curve, hall_limit_check, naive_t2_constants, \
    rate_fit, Scaling
from .exact_law import exact_cdf, exact_pdf
from .expansions import ApproxOrder, cdf_approx, pdf_approx
from .montecarlo import ks_check, simulate_block_maxima
from .norming import norming_constants, solve_b
from .special_functions import LOG_2PI, gumbel_cdf, mills_series_survival, \
    std_normal_pdf, survival


@dataclass(frozen=True)
class CheckResult:
    check: str
    status: str  # PASS or FAIL
    measured: float
    bound: float
    detail: str = ""


def _result(check: str, ok: bool, measured: float, bound: float, detail: str) -> CheckResult:
    return CheckResult(check=check, status="PASS" if ok else "FAIL",
                       measured=measured, bound=bound, detail=detail)


def check_norming_residual() -> CheckResult:
    """|2*pi*b^2*e^{b^2}/n^2 - 1| <= 1e-12 at n in {10, 1e3, 1e6, 1e12}, under 1 ms."""
    ns = [10.0, 1e3, 1e6, 1e12]
    solve_b(ns[0])  # warm the code path before timing
    start = time.perf_counter()
    bs = [solve_b(n) for n in ns]
    elapsed = time.perf_counter() - start
    worst = max(
        abs(math.exp(LOG_2PI + math.log(b * b) + b * b - 2.0 * math.log(n)) - 1.0)
        for n, b in zip(ns, bs)
    )
    ok = worst <= 1e-12 and elapsed < 1e-3
    return _result("norming-residual", ok, worst, 1e-12,
                   f"elapsed={elapsed * 1e3:.3f}ms over {len(ns)} solves")


def check_mills_series() -> CheckResult:
    """Series error within 2*a_{L+1}*x^{-2(L+1)}*phi(x)/x for x in {5,10,20},
    L in 0..3, under 1 ms."""
    xs = [5.0, 10.0, 20.0]
    mills_series_survival(5.0, 0)  # warm
    worst_ratio = 0.0
    start = time.perf_counter()
    for x in xs:
        exact = survival(x).value
        a = [1, 1, 3, 15, 105]
        for order in range(4):
            approx = mills_series_survival(x, order).value
            bound = 2.0 * a[order + 1] * x ** (-2 * (order + 1)) * std_normal_pdf(x) / x
            worst_ratio = max(worst_ratio, abs(approx - exact) / bound)
    elapsed = time.perf_counter() - start
    ok = worst_ratio <= 1.0 and elapsed < 1e-3
    return _result("mills-series", ok, worst_ratio, 1.0,
                   f"max |error|/bound ratio; elapsed={elapsed * 1e3:.3f}ms")


def check_hall_limit() -> CheckResult:
    """Scaled error vs k1: |gap| at n=1e12 within 1.5|k2|/b^2 + 10/b^4 and
    below the n=1e6 gap, for t in {0.5, 1, 3, 2} x x in {-1, 0, 1, 2}."""
    start = time.perf_counter()
    worst = 0.0
    all_ok = True
    for t in (0.5, 1.0, 3.0, 2.0):
        for x in (-1.0, 0.0, 1.0, 2.0):
            res = hall_limit_check(t, x, [1e6, 1e12])
            worst = max(worst, abs(res.final_gap) / res.bound)
            all_ok = all_ok and res.passed
    elapsed = time.perf_counter() - start
    ok = all_ok and elapsed < 1.0
    return _result("hall-limit", ok, worst, 1.0,
                   f"max |final gap|/bound over 16 (t,x); elapsed={elapsed:.3f}s")


def _remainder_slopes(target: str, combos: list[tuple[float, float]]) -> tuple[float, bool, str]:
    grid = [10.0 ** k for k in range(3, 13)]
    worst_dev = 0.0
    ok = True
    slopes = []
    for t, x in combos:
        curve = error_curve(t, x, grid, ApproxOrder.THIRD, target=target,
                            scaling=Scaling.THIRD_ORDER_REMAINDER)
        fit = rate_fit(curve)
        slopes.append(f"(t={t:g},x={x:g})={fit.slope:.3f}")
        worst_dev = max(worst_dev, abs(fit.slope + 4.0))
        ok = ok and -5.0 <= fit.slope <= -3.0
    return worst_dev, ok, "slopes " + ", ".join(slopes)


def check_cdf_remainder_slope() -> CheckResult:
    """Third-order distribution remainder decays with ln-b slope in [-5, -3]."""
    start = time.perf_counter()
    worst, ok, detail = _remainder_slopes(
        "cdf", [(1.0, 0.0), (1.0, 1.0), (3.0, 0.0), (3.0, 1.0)])
    elapsed = time.perf_counter() - start
    return _result("cdf-remainder-slope", ok and elapsed < 1.0, worst, 1.0,
                   f"max |slope+4|; {detail}; elapsed={elapsed:.3f}s")


def check_pdf_remainder_slope() -> CheckResult:
    """Density remainder (varpi, tau construction) slope in [-5, -3]."""
    start = time.perf_counter()
    worst, ok, detail = _remainder_slopes(
        "pdf", [(1.0, 0.0), (1.0, 1.0), (2.0, 0.0), (2.0, 1.0)])
    elapsed = time.perf_counter() - start
    return _result("pdf-remainder-slope", ok and elapsed < 1.0, worst, 1.0,
                   f"max |slope+4|; {detail}; elapsed={elapsed:.3f}s")


def check_order_improvement() -> CheckResult:
    """Sup-error over x in [-1.5, 4] strictly drops limit -> second -> third
    at n = 1e6 for t in {1, 2}, both cdf and pdf."""
    start = time.perf_counter()
    xs = [-1.5 + 0.25 * i for i in range(23)]
    orders = [ApproxOrder.LIMIT, ApproxOrder.SECOND, ApproxOrder.THIRD]
    worst_ratio = 0.0
    details = []
    for t in (1.0, 2.0):
        nc = norming_constants(1e6, t)
        for target in ("cdf", "pdf"):
            sups = []
            for order in orders:
                if target == "cdf":
                    sup = max(abs(cdf_approx(nc, x, order).value
                                  - exact_cdf(nc, x).value) for x in xs)
                else:
                    sup = max(abs(pdf_approx(nc, x, order).value
                                  - exact_pdf(nc, x)) for x in xs)
                sups.append(sup)
            for a, b in zip(sups, sups[1:]):
                worst_ratio = max(worst_ratio, b / a)
            details.append(f"t={t:g} {target}: "
                           + "->".join(f"{s:.2e}" for s in sups))
    elapsed = time.perf_counter() - start
    ok = worst_ratio < 1.0 and elapsed < 1.0
    return _result("order-improvement", ok, worst_ratio, 1.0,
                   "; ".join(details) + f"; elapsed={elapsed:.3f}s")


def check_t2_acceleration() -> CheckResult:
    """At n = 1e6, x = 0 the adjusted t=2 constants beat the naive (c=2, d=b^2)
    ones by at least 5x in |exact_cdf - Lambda|, under 1 ms."""
    norming_constants(1e6, 2.0)  # warm
    start = time.perf_counter()
    lam = gumbel_cdf(0.0).value
    adjusted = abs(exact_cdf(norming_constants(1e6, 2.0), 0.0).value - lam)
    naive = abs(exact_cdf(naive_t2_constants(1e6), 0.0).value - lam)
    elapsed = time.perf_counter() - start
    ratio = naive / adjusted
    ok = ratio >= 5.0 and elapsed < 1e-3
    return _result("t2-acceleration", ok, ratio, 5.0,
                   f"naive/adjusted error ratio (pass when >= bound); "
                   f"elapsed={elapsed * 1e3:.3f}ms")


def check_exact_self_consistency() -> CheckResult:
    """exact_pdf matches the central difference of exact_cdf to 1e-6 relative
    (where pdf > 1e-8) on [-1, 4] for (n, t) in {1e3, 1e6} x {0.5, 1, 2, 3}."""
    start = time.perf_counter()
    worst = 0.0
    xs = [-1.0 + 0.25 * i for i in range(21)]
    for n in (1e3, 1e6):
        for t in (0.5, 1.0, 2.0, 3.0):
            nc = norming_constants(n, t)
            for x in xs:
                h = 1e-5 * max(1.0, abs(x))
                pdf = exact_pdf(nc, x)
                if pdf <= 1e-8:
                    continue
                diff = (exact_cdf(nc, x + h).value - exact_cdf(nc, x - h).value) / (2 * h)
                worst = max(worst, abs(diff - pdf) / pdf)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-6 and elapsed < 1.0
    return _result("exact-self-consistency", ok, worst, 1e-6,
                   f"max relative gap over 168 points; elapsed={elapsed:.3f}s")


MC_SEED = 42


def check_monte_carlo() -> CheckResult:
    """n=100, t=2, reps=1e6, fixed seed: KS vs exact law within the DKW band
    at alpha=0.001, and KS vs the Gumbel limit at least 0.01, under 60 s."""
    start = time.perf_counter()
    nc = norming_constants(100, 2.0)
    sample = simulate_block_maxima(nc, 10 ** 6, MC_SEED)
    against_exact = ks_check(sample, "exact", alpha=0.001)
    against_limit = ks_check(sample, "limit", alpha=0.001)
    elapsed = time.perf_counter() - start
    ok = (against_exact.passed and against_limit.statistic >= 0.01
          and elapsed < 60.0)
    return _result("monte-carlo-ks", ok, against_exact.statistic,
                   against_exact.bound,
                   f"D_exact={against_exact.statistic:.6f} vs DKW "
                   f"{against_exact.bound:.6f}; D_limit="
                   f"{against_limit.statistic:.6f} (needs >= 0.01); "
                   f"seed={MC_SEED}; elapsed={elapsed:.1f}s")


# Documented command lines whose output must be byte-identical across runs.
DETERMINISM_COMMANDS: tuple[tuple[str, ...], ...] = (
    ("norming", "--n", "1000", "--t", "2"),
    ("norming", "--n", "1e6", "--t", "0.5", "--format", "json"),
    ("norming", "--n", "1"),
    ("table", "--n", "1e6", "--t", "1", "--x=-1:4:0.25",
     "--orders", "limit,second,third,exact", "--target", "cdf"),
    ("table", "--n", "1000", "--t", "2", "--x=0:2:0.5",
     "--orders", "limit,third", "--target", "pdf"),
    ("mills", "--x", "5:20:5", "--order", "3"),
    ("rates", "--t", "1", "--x", "0", "--n-grid", "1e3:1e10:10"),
    ("simulate", "--n", "100", "--t", "2", "--reps", "2000", "--seed", "42"),
)


def _run_cli(cmd: tuple[str, ...]) -> tuple[int, bytes, bytes]:
    proc = subprocess.run([sys.executable, "-m", "powex", *cmd],
                          capture_output=True, timeout=120)
    return proc.returncode, proc.stdout, proc.stderr


def check_cli_determinism() -> CheckResult:
    """Every documented command produces byte-identical output (and exit
    code) when invoked twice."""
    mismatches = 0
    checked = 0
    details = []
    for cmd in DETERMINISM_COMMANDS:
        first = _run_cli(cmd)
        second = _run_cli(cmd)
        checked += 1
        if first != second:
            mismatches += 1
            details.append(" ".join(cmd))
    ok = mismatches == 0
    detail = f"{checked} commands run twice each"
    if details:
        detail += "; mismatched: " + "; ".join(details)
    return _result("cli-determinism", ok, float(mismatches), 0.0, detail)


def run_all() -> list[CheckResult]:
    """All acceptance checks, in their documented order."""
    return [
        check_norming_residual(),
        check_mills_series(),
        check_hall_limit(),
        check_cdf_remainder_slope(),
        check_pdf_remainder_slope(),
        check_order_improvement(),
        check_t2_acceleration(),
        check_exact_self_consistency(),
        check_monte_carlo(),
        check_cli_determinism(),
    ]
