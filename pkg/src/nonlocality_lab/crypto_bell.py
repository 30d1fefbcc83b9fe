"""A crypto-nonlocal hidden-variable model with conditional CHSH landscape.

The model describes a qubit pair in the singlet state with a hidden unit
vector lam.  lam is uniform on the sphere and carries a two-level polar
chart (mu, tau) with mu in [0, 2*pi) and tau in [0, pi): tau selects a great
circle through the poles, mu runs around it, and the surface element is
|sin mu| dmu dtau.  Outcomes are

    A = sgn(a_hat . lam),      B = -sgn(b_hat . lam),

where a_hat, b_hat are the measurement directions a, b rotated in their
common plane, symmetrically about the bisector, so that their angle becomes
omega_hat = pi * sin^2(omega / 2).  Averaged over the full sphere this
reproduces the singlet correlation -a.b; averaged over mu alone (at fixed
tau) the single-party outcomes vanish identically, which is the
crypto-nonlocality property, while the pair correlation

    E_tau(a, b) = (1/4) * int_0^{2pi} A B |sin mu| dmu

can exceed the Tsirelson bound and approaches the algebraic maximum
|F| -> 4 near (alpha, tau) = (pi/6, pi/2) on the tilted four-direction
family used throughout this module.

The mu-integral is evaluated EXACTLY: on a great circle each projection
a_hat.lam(mu) is a pure cosine with exactly two roots, so the integrand is
piecewise +-1 on at most four arcs and |sin mu| integrates in closed form on
each.  A dense Riemann sum is kept in the test suite as an independent
cross-check; closed-form expressions (see ``chi_functions``) are evaluated
both as printed and in a normalized variant and compared against the exact
integrator, never trusted over it.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .correlations import NonlocalityClass, classify_chsh
from .singlet_sim import SphereSampler, as_unit_vector, sgn

__all__ = [
    "polar_from_standard",
    "standard_from_polar",
    "great_circle_point",
    "abs_sin_integral",
    "RotatedPair",
    "rotated_settings",
    "model_outcomes",
    "conditional_correlation",
    "crypto_local_average",
    "mc_joint_correlation",
    "FourDirectionFamily",
    "four_directions",
    "gamma_functions",
    "critical_alpha",
    "chi_functions",
    "ConditionalChsh",
    "conditional_chsh",
    "closed_form_correlations",
    "ClosedFormComparison",
    "closed_form_chsh",
    "singlet_reference",
    "quantum_chsh_reference",
    "tau_average_correlation",
    "tau_average_chsh",
    "region_scan",
    "scan_to_csv",
]

TWO_PI = 2.0 * math.pi

# ---------------------------------------------------------------------------
# The (mu, tau) chart
# ---------------------------------------------------------------------------


def polar_from_standard(theta: float, phi: float) -> tuple[float, float]:
    """Map standard polar angles (theta, phi) to the chart (mu, tau).

    theta in [0, pi] is the angle from +z, phi in [0, 2*pi) the azimuth.
    Points with y >= 0 map identically; y < 0 maps to (2*pi - theta,
    phi - pi).  The seam phi = pi is assigned to the second branch so tau
    stays inside [0, pi) (a measure-zero convention).
    """
    if not 0.0 <= theta <= math.pi or not 0.0 <= phi < TWO_PI:
        raise ValueError(f"angles out of range: theta={theta}, phi={phi}")
    if phi < math.pi:
        return theta, phi
    return TWO_PI - theta, phi - math.pi


def standard_from_polar(mu: float, tau: float) -> tuple[float, float]:
    """Inverse chart; recovers (theta, phi) up to the measure-zero seam."""
    if not 0.0 <= mu < TWO_PI or not 0.0 <= tau < math.pi:
        raise ValueError(f"angles out of range: mu={mu}, tau={tau}")
    if mu <= math.pi:
        return mu, tau
    return TWO_PI - mu, tau + math.pi


def great_circle_point(mu: float, tau: float) -> np.ndarray:
    """Cartesian point of the chart; at fixed tau, mu traces a great circle
    through the poles: (sin mu cos tau, sin mu sin tau, cos mu)."""
    return np.array(
        [
            math.sin(mu) * math.cos(tau),
            math.sin(mu) * math.sin(tau),
            math.cos(mu),
        ]
    )


def abs_sin_integral(lo: float, hi: float) -> float:
    """Exact integral of |sin t| over [lo, hi], 0 <= lo <= hi."""

    def antiderivative(t: float) -> float:
        k = math.floor(t / math.pi)
        return 2.0 * k + 1.0 - math.cos(t - k * math.pi)

    return antiderivative(hi) - antiderivative(lo)


# ---------------------------------------------------------------------------
# Rotated settings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RotatedPair:
    """Measurement directions after the in-plane rotation.

    a_hat and b_hat stay in the plane of (a, b), symmetric about the
    bisector of the original angle omega, at the new angle
    omega_hat = pi * sin^2(omega / 2).
    """

    a_hat: np.ndarray
    b_hat: np.ndarray
    omega: float
    omega_hat: float


def _orthogonal_unit(v: np.ndarray) -> np.ndarray:
    """Deterministic unit vector orthogonal to v: Gram-Schmidt of the
    canonical axis least aligned with v."""
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(v)))] = 1.0
    u = axis - (axis @ v) * v
    return u / np.linalg.norm(u)


def rotated_settings(a, b) -> RotatedPair:
    """Rotate (a, b) within their plane to the angle pi * sin^2(omega / 2).

    Both vectors move symmetrically so the bisector is preserved.  For the
    degenerate antiparallel case omega = pi, the bisector is ambiguous; any
    in-plane choice gives b_hat = -a_hat = -a, so downstream averages do not
    depend on it.
    """
    a = as_unit_vector(a)
    b = as_unit_vector(b)
    dot = float(np.clip(a @ b, -1.0, 1.0))
    omega = math.atan2(float(np.linalg.norm(np.cross(a, b))), dot)
    omega_hat = math.pi * math.sin(omega / 2.0) ** 2
    mid = a + b
    norm_mid = float(np.linalg.norm(mid))
    if norm_mid > 1e-12:
        bisector = mid / norm_mid
        diff = a - b
        norm_diff = float(np.linalg.norm(diff))
        if norm_diff < 1e-12:  # omega = 0
            return RotatedPair(a.copy(), a.copy(), omega, omega_hat)
        side = diff / norm_diff
    else:  # omega = pi
        side = a
        bisector = _orthogonal_unit(a)
    c, s = math.cos(omega_hat / 2.0), math.sin(omega_hat / 2.0)
    return RotatedPair(c * bisector + s * side, c * bisector - s * side, omega, omega_hat)


def model_outcomes(a, b, mu: float, tau: float) -> tuple[int, int]:
    """Possessed outcome signs (A, B) at hidden variable (mu, tau).

    B is evaluated on b_hat, which depends on a as well — the model is
    manifestly nonlocal at this level.
    """
    pair = rotated_settings(a, b)
    lam = great_circle_point(mu, tau)
    return sgn(float(pair.a_hat @ lam)), -sgn(float(pair.b_hat @ lam))


# ---------------------------------------------------------------------------
# Exact arc integration on a great circle
# ---------------------------------------------------------------------------


def _circle_roots(u: np.ndarray, tau: float) -> tuple[float, float] | None:
    """Roots in [0, 2*pi) of u . lam(mu) = p cos(mu) + q sin(mu).

    Returns None when the projection vanishes identically (the circle lies
    in the plane orthogonal to u); its sign is then the constant sgn(0)=+1.
    """
    p = u[2]
    q = u[0] * math.cos(tau) + u[1] * math.sin(tau)
    if math.hypot(p, q) < 1e-15:
        return None
    m = math.atan2(q, p)
    return (m - math.pi / 2.0) % TWO_PI, (m + math.pi / 2.0) % TWO_PI


def _arc_average(vectors: list[np.ndarray], tau: float) -> float:
    """(1/4) * int_0^{2pi} prod_v sgn(v . lam(mu)) |sin mu| dmu, exact.

    Each projection flips sign at exactly two angles, so the product is
    piecewise constant on at most 2*len(vectors) arcs; |sin| integrates in
    closed form on each arc.
    """
    breaks: list[float] = []
    for v in vectors:
        roots = _circle_roots(v, tau)
        if roots is None:
            continue  # vanishing projection: constant sign +1
        breaks.extend(roots)
    if not breaks:
        return 1.0
    breaks = sorted(set(breaks))
    total = 0.0
    for i, lo in enumerate(breaks):
        hi = breaks[i + 1] if i + 1 < len(breaks) else breaks[0] + TWO_PI
        if hi - lo < 1e-15:
            continue
        lam = great_circle_point(0.5 * (lo + hi), tau)
        sign = 1
        for v in vectors:
            sign *= sgn(float(v @ lam))
        total += sign * abs_sin_integral(lo, hi)
    return total / 4.0


def conditional_correlation(a, b, tau: float) -> float:
    """Pair correlation at fixed tau: (1/4) int A B |sin mu| dmu, exact."""
    pair = rotated_settings(a, b)
    return -_arc_average([pair.a_hat, pair.b_hat], tau)


def crypto_local_average(a, tau: float, b=None) -> float:
    """Single-party average at fixed tau: (1/4) int A |sin mu| dmu.

    When ``b`` is given, the model's rotated vector a_hat(a, b) is averaged;
    otherwise ``a`` itself is.  Either way the average vanishes for every
    unit vector — opposite hemispheres of a great circle carry opposite
    signs and equal weight — which is the crypto-nonlocality property.
    """
    if b is not None:
        vector = rotated_settings(a, b).a_hat
    else:
        vector = as_unit_vector(a)
    return _arc_average([vector], tau)


def mc_joint_correlation(a, b, n: int, seed: int) -> tuple[float, float]:
    """Full-sphere Monte Carlo of A*B; returns (mean, stderr).

    Cross-check for the exact route: the mean must agree with -a.b.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    pair = rotated_settings(a, b)
    lam = SphereSampler(seed).sample(n)
    products = np.where(lam @ pair.a_hat >= 0.0, 1.0, -1.0) * np.where(
        lam @ pair.b_hat >= 0.0, -1.0, 1.0
    )
    stderr = float(products.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return float(products.mean()), stderr


# ---------------------------------------------------------------------------
# The tilted four-direction family and its closed forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FourDirectionFamily:
    """CHSH settings in the (x, z)-plane, tilted by alpha in [0, pi/4]."""

    alpha: float
    a: np.ndarray
    a_prime: np.ndarray
    b: np.ndarray
    b_prime: np.ndarray

    def pairs(self):
        """The four (Alice, Bob) pairs in CHSH order."""
        return (
            (self.a, self.b),
            (self.a, self.b_prime),
            (self.a_prime, self.b),
            (self.a_prime, self.b_prime),
        )


def four_directions(alpha: float) -> FourDirectionFamily:
    if not 0.0 <= alpha <= math.pi / 4.0 + 1e-12:
        raise ValueError(f"alpha must lie in [0, pi/4], got {alpha}")
    sa, ca = math.sin(alpha), math.cos(alpha)
    s3, c3 = math.sin(3.0 * alpha), math.cos(3.0 * alpha)
    return FourDirectionFamily(
        alpha=alpha,
        a=np.array([sa, 0.0, ca]),
        a_prime=np.array([-s3, 0.0, c3]),
        b=np.array([-sa, 0.0, ca]),
        b_prime=np.array([s3, 0.0, c3]),
    )


def gamma_functions(alpha: float) -> tuple[float, float, float, float]:
    """Auxiliary angles of the closed forms.

    gamma_1 and gamma_2 are the rotated angles of the (a, b) and (a', b')
    pairs; gamma_3/2 and gamma_4/2 are the in-plane polar positions of the
    rotated vectors of the cross pairs.
    """
    s2 = math.pi * math.sin(alpha) ** 2
    return (
        s2,
        math.pi * math.sin(3.0 * alpha) ** 2,
        4.0 * alpha + s2,
        4.0 * alpha - s2,
    )


@lru_cache(maxsize=1)
def critical_alpha() -> float:
    """The alpha (~0.562) where the cross-pair closed form changes branch.

    Root of 4*alpha + pi*sin^2(alpha) = pi; the left side is strictly
    increasing (derivative 4 + pi*sin(2*alpha) > 0), so the root is unique.
    Located by bisection to 1e-12.
    """
    lo, hi = 0.0, math.pi / 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if 4.0 * mid + math.pi * math.sin(mid) ** 2 < math.pi:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-14:
            break
    return 0.5 * (lo + hi)


def chi_functions(
    alpha: float, tau: float, normalized: bool = False
) -> tuple[float, float, float, float]:
    """Closed-form kernels chi_j = 2 cos(tau) / sqrt(cos^2 tau + cot^2(gamma_j/2)).

    gamma_j = 0 is taken as the chi_j -> 0 limit; gamma_j = pi makes cot
    vanish so chi_j = +-2.  When cos(tau) and cot(gamma_j/2) vanish together
    (within 1e-12: floating-point pi/2 never gives an exact zero) the
    expression is 0/0 and NaN marks the singular component.  The
    ``normalized`` variant divides by 2; it is the variant that matches the
    exact arc integration.
    """
    out = []
    cos_tau = math.cos(tau)
    for gamma in gamma_functions(alpha):
        if gamma <= 0.0:
            out.append(0.0)
            continue
        cot_half = math.cos(gamma / 2.0) / math.sin(gamma / 2.0)
        if abs(cos_tau) < 1e-12 and abs(cot_half) < 1e-12:
            out.append(math.nan)
            continue
        value = 2.0 * cos_tau / math.sqrt(cos_tau**2 + cot_half**2)
        out.append(value / 2.0 if normalized else value)
    return tuple(out)


@dataclass(frozen=True)
class ConditionalChsh:
    """The four fixed-tau correlations of the family and their CHSH value."""

    alpha: float
    tau: float
    e_ab: float
    e_ab_prime: float
    e_a_prime_b: float
    e_a_prime_b_prime: float
    f: float
    nonlocality: NonlocalityClass


def conditional_chsh(alpha: float, tau: float) -> ConditionalChsh:
    """Exact-arc conditional correlations and CHSH value at (alpha, tau)."""
    family = four_directions(alpha)
    e = [conditional_correlation(u, v, tau) for u, v in family.pairs()]
    f = e[0] + e[1] + e[2] - e[3]
    return ConditionalChsh(
        alpha=alpha,
        tau=tau,
        e_ab=e[0],
        e_ab_prime=e[1],
        e_a_prime_b=e[2],
        e_a_prime_b_prime=e[3],
        f=f,
        nonlocality=classify_chsh(f),
    )


def closed_form_correlations(
    alpha: float, tau: float, normalized: bool = True
) -> tuple[float, float, float, float]:
    """Closed-form conditional correlations (e_ab, e_ab', e_a'b, e_a'b').

    e_ab = 2|chi_1| - 1, e_a'b' = 2|chi_2| - 1, and the cross pairs share
    |chi_3 - chi_4| - 1 below ``critical_alpha`` and 1 - |chi_3 + chi_4|
    above it.  NaN components propagate from singular chi values.
    """
    x1, x2, x3, x4 = chi_functions(alpha, tau, normalized=normalized)
    e_ab = 2.0 * abs(x1) - 1.0
    e_apbp = 2.0 * abs(x2) - 1.0
    if alpha <= critical_alpha():
        cross = abs(x3 - x4) - 1.0
    else:
        cross = 1.0 - abs(x3 + x4)
    return e_ab, cross, cross, e_apbp


@dataclass(frozen=True)
class ClosedFormComparison:
    """Printed and normalized closed forms against the exact-arc values."""

    exact: ConditionalChsh
    printed: tuple[float, float, float, float]
    normalized: tuple[float, float, float, float]
    printed_f: float
    normalized_f: float
    printed_max_dev: float
    normalized_max_dev: float
    singular: bool

    @property
    def matching_variant(self) -> str | None:
        """Which variant reproduces the exact values (1e-9 per correlation)."""
        printed_ok = self.printed_max_dev <= 1e-9
        normalized_ok = self.normalized_max_dev <= 1e-9
        if printed_ok and not normalized_ok:
            return "printed"
        if normalized_ok and not printed_ok:
            return "normalized"
        if printed_ok and normalized_ok:
            return "both"
        return None


def closed_form_chsh(alpha: float, tau: float) -> ClosedFormComparison:
    """Evaluate both closed-form variants and compare with the exact arcs."""
    exact = conditional_chsh(alpha, tau)
    printed = closed_form_correlations(alpha, tau, normalized=False)
    normalized = closed_form_correlations(alpha, tau, normalized=True)
    exact_e = (exact.e_ab, exact.e_ab_prime, exact.e_a_prime_b, exact.e_a_prime_b_prime)

    def chsh_of(e):
        return e[0] + e[1] + e[2] - e[3]

    def max_dev(e):
        return max(abs(u - v) for u, v in zip(e, exact_e))

    singular = any(math.isnan(v) for v in printed + normalized)
    return ClosedFormComparison(
        exact=exact,
        printed=printed,
        normalized=normalized,
        printed_f=chsh_of(printed),
        normalized_f=chsh_of(normalized),
        printed_max_dev=math.inf if singular else max_dev(printed),
        normalized_max_dev=math.inf if singular else max_dev(normalized),
        singular=singular,
    )


# ---------------------------------------------------------------------------
# tau averages and the region scan
# ---------------------------------------------------------------------------


def singlet_reference(a, b) -> float:
    """Quantum singlet correlation -a.b; the oracle the model must meet."""
    return -float(as_unit_vector(a) @ as_unit_vector(b))


def quantum_chsh_reference(alpha: float) -> float:
    """Singlet CHSH value on the tilted family, straight from dot products
    (works out to -3 cos(2 alpha) + cos(6 alpha))."""
    family = four_directions(alpha)
    e = [singlet_reference(u, v) for u, v in family.pairs()]
    return e[0] + e[1] + e[2] - e[3]


def tau_average_correlation(a, b, epsabs: float = 1e-10) -> float:
    """(1/pi) * int_0^pi E_tau(a, b) dtau by adaptive quadrature.

    tau is uniform on [0, pi) with density 1/pi (the |sin mu| factor of the
    chart carries the whole surface weight); the average must reproduce the
    quantum value -a.b.
    """
    pair = rotated_settings(a, b)

    def integrand(tau: float) -> float:
        return -_arc_average([pair.a_hat, pair.b_hat], tau)

    value, _ = quad(integrand, 0.0, math.pi, points=[math.pi / 2.0], limit=200, epsabs=epsabs)
    return value / math.pi


def tau_average_chsh(alpha: float, epsabs: float = 1e-10) -> float:
    """(1/pi) * int_0^pi F_tau(alpha) dtau over the exact-arc integrand."""
    family = four_directions(alpha)
    pairs = [rotated_settings(u, v) for u, v in family.pairs()]

    def integrand(tau: float) -> float:
        e = [-_arc_average([p.a_hat, p.b_hat], tau) for p in pairs]
        return e[0] + e[1] + e[2] - e[3]

    value, _ = quad(integrand, 0.0, math.pi, points=[math.pi / 2.0], limit=200, epsabs=epsabs)
    return value / math.pi


def _scan_row(args: tuple[float, tuple[float, ...]]) -> list[ConditionalChsh]:
    alpha, taus = args
    family = four_directions(alpha)
    pairs = [rotated_settings(u, v) for u, v in family.pairs()]
    row = []
    for tau in taus:
        e = [-_arc_average([p.a_hat, p.b_hat], tau) for p in pairs]
        f = e[0] + e[1] + e[2] - e[3]
        row.append(
            ConditionalChsh(alpha, tau, e[0], e[1], e[2], e[3], f, classify_chsh(f))
        )
    return row


def region_scan(
    n_alpha: int = 200,
    n_tau: int = 200,
    workers: int | None = None,
) -> list[ConditionalChsh]:
    """Scan the (alpha, tau) rectangle [0, pi/4] x [0, pi) on cell centers.

    Cell centers keep the scan off the two isolated singular points of the
    closed forms.  Results come back row-major in alpha then tau, identical
    for any worker count; ``workers`` defaults to the NONLOCALITY_LAB_THREADS
    environment variable (serial when unset).
    """
    if n_alpha < 2 or n_tau < 2:
        raise ValueError("grid dimensions must be >= 2")
    if workers is None:
        workers = int(os.environ.get("NONLOCALITY_LAB_THREADS", "1"))
    alphas = [(i + 0.5) * (math.pi / 4.0) / n_alpha for i in range(n_alpha)]
    taus = tuple((j + 0.5) * math.pi / n_tau for j in range(n_tau))
    jobs = [(alpha, taus) for alpha in alphas]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_scan_row, jobs, chunksize=max(1, n_alpha // (4 * workers))))
    else:
        rows = [_scan_row(job) for job in jobs]
    return [cell for row in rows for cell in row]


def scan_to_csv(cells: list[ConditionalChsh], path: str) -> None:
    """Write a scan as CSV with header alpha,tau,f,class.

    Floats use round-trip decimal formatting (``repr``), '.' separator.
    """
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["alpha", "tau", "f", "class"])
        for cell in cells:
            writer.writerow([repr(cell.alpha), repr(cell.tau), repr(cell.f), cell.nonlocality.value])
