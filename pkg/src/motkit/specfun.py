"""Special functions for boundary Liouville structure constants.

Implements the double-gamma function Gamma_b via its integral
representation, the fixed-length three-point constant bar-H together
with its reduced closed form on the one-parameter family
(beta, Q + 3*gamma/2 - beta, 2/gamma), the disk reflection amplitude
bar-R, the boundary cosmological constant mu_B(sigma), and the closed
form of the Laplace-transformed constant H at mu = 0 on the family
(Q + 3*gamma/2 - beta, 2/gamma, beta).

Conventions: gamma in (0, 2) is the LQG coupling, Q = 2/gamma + gamma/2,
and every Gamma_b call below uses b = gamma/2.  All evaluations are pure
and reentrant; heavy products are assembled in log scale with explicit
sign tracking, and each function has a log-scale variant for callers
that need to avoid overflow.

Numerical scheme for log Gamma_b(z) (for z inside a convergence window
around (b + 1/b)/2):

* on (0, cutoff) the integrand's 1/t singularities cancel analytically;
  we integrate its Taylor series, built by power-series arithmetic, term
  by term (the raw integrand loses all precision near t = 0),
* on (cutoff, oo) the two slowly decaying pieces are integrated in
  closed form (an exponential integral plus a power tail) and only the
  exponentially decaying part is handled by adaptive Gauss-Legendre
  panels with tail truncation,
* outside the window, the shift equations move z inside while ordinary
  Gamma factors are accumulated in log scale.

H is only realized on the special closed-form family; no meromorphic
continuation in its six arguments is attempted.  The artifact relies on
the symmetry of H_{(0,0,0)} in its three insertion sizes to reorder
arguments (an identity assumed from the source theory, not re-derived
here).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre
from scipy.special import exp1

from .errors import (
    DomainError,
    PoleProximityError,
    QuadratureConvergenceError,
)

__all__ = [
    "QuadratureConfig",
    "InsertionTriple",
    "insertion_triple",
    "gamma_b",
    "log_gamma_b",
    "bar_r",
    "log_bar_r",
    "bar_h",
    "log_bar_h",
    "bar_h_reduced",
    "mu_b",
    "h_special",
    "log_h_special",
    "qt_laplace_from_h",
    "q_background",
]

POLE_GUARD = 1e-8  # below this distance to a pole lattice, refuse to evaluate

_GL_NODES, _GL_WEIGHTS = legendre.leggauss(24)


def q_background(gamma: float) -> float:
    """Background charge Q = 2/gamma + gamma/2, for gamma in (0, 2)."""
    if not 0.0 < gamma < 2.0:
        raise DomainError(f"gamma must lie in (0, 2), got {gamma}")
    return 2.0 / gamma + gamma / 2.0


@dataclass(frozen=True)
class QuadratureConfig:
    """Controls the Gamma_b integral evaluation.

    small_t_cutoff is the switch point between the Taylor-series segment
    and panel quadrature; it is clamped internally to a quarter of the
    series' radius of convergence (set by the nearest complex zero of
    the denominator) so the default is safe for every b.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 200
    small_t_cutoff: float = 0.5

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise DomainError("tolerances must be strictly positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")
        if self.small_t_cutoff <= 0:
            raise DomainError("small_t_cutoff must be positive")


_DEFAULT_CFG = QuadratureConfig()


@dataclass(frozen=True)
class InsertionTriple:
    """Three boundary insertion sizes together with the coupling gamma.

    The sum and the Seiberg admissibility flags are recomputed on access
    rather than stored, so they can never drift out of sync with the
    betas.
    """

    gamma: float
    beta1: float
    beta2: float
    beta3: float

    def __post_init__(self):
        if not 0.0 < self.gamma < 2.0:
            raise DomainError(f"gamma must lie in (0, 2), got {self.gamma}")

    @property
    def beta_bar(self) -> float:
        return self.beta1 + self.beta2 + self.beta3

    @property
    def betas(self) -> tuple[float, float, float]:
        return (self.beta1, self.beta2, self.beta3)

    @property
    def seiberg_pair(self) -> bool:
        """|beta1 - beta2| < beta3."""
        return abs(self.beta1 - self.beta2) < self.beta3

    @property
    def seiberg_sum(self) -> bool:
        """beta1 + beta2 + beta3 > gamma."""
        return self.beta_bar > self.gamma

    @property
    def seiberg_upper(self) -> bool:
        """beta_i < Q for all i."""
        q = q_background(self.gamma)
        return all(b < q for b in self.betas)

    @property
    def seiberg_ok(self) -> bool:
        return self.seiberg_pair and self.seiberg_sum and self.seiberg_upper


def insertion_triple(gamma: float, beta1: float, beta2: float, beta3: float) -> InsertionTriple:
    return InsertionTriple(gamma, beta1, beta2, beta3)


# ---------------------------------------------------------------------------
# ordinary Gamma in log scale with sign tracking
# ---------------------------------------------------------------------------

def _signed_log_gamma(x: float, factor: str) -> tuple[float, float]:
    """(log|Gamma(x)|, sign), raising PoleProximityError near 0, -1, -2, ..."""
    if x <= 0.0:
        dist = abs(x - round(x))
        if dist < POLE_GUARD:
            raise PoleProximityError(
                f"Gamma argument {x} within {POLE_GUARD} of a pole in factor {factor}",
                factor=factor,
                distance=dist,
            )
        sign = 1.0 if (math.floor(x) % 2 == 0) else -1.0
        # reflection: log|Gamma(x)| = log(pi/|sin(pi x)|) - log Gamma(1-x)
        return math.log(math.pi / abs(math.sin(math.pi * x))) - math.lgamma(1.0 - x), sign
    return math.lgamma(x), 1.0


# ---------------------------------------------------------------------------
# double gamma
# ---------------------------------------------------------------------------

def _pole_distance(b: float, z: float) -> float:
    """Distance from z to the pole lattice {-m b - n/b : m, n >= 0}."""
    if z > POLE_GUARD:
        return z  # all poles lie in (-oo, 0]
    best = abs(z)
    m_max = int(-z / b) + 2
    for m in range(m_max):
        rem = -z - m * b  # want n/b closest to rem
        if rem < -b:
            break
        n = max(0.0, round(rem * b))
        for nn in (n - 1, n, n + 1):
            if nn >= 0:
                best = min(best, abs(z + m * b + nn / b))
    return best


def _series_coefficients(b: float, z: float, n_terms: int) -> np.ndarray:
    """Taylor coefficients of the Gamma_b integrand around t = 0.

    The integrand is (1/t) * [N/D - (d^2/2) e^{-t} + d/t] with
    N = e^{-a t}(e^{-d t} - 1), D = (1 - e^{-b t})(1 - e^{-t/b}),
    a = (b + 1/b)/2 and d = z - a.  Writing D = t^2 phi(bt) phi(t/b)
    with phi(x) = (1 - e^{-x})/x, the bracket equals B(t)/t^2 where
    B(t) = e^{-at}(e^{-dt}-1)/(phi(bt) phi(t/b)) + d t - (d^2/2) t^2 e^{-t}
    vanishes to third order, so the integrand is the entire-series
    sum_k B_{k+3} t^k on the disk |t| < 2 pi min(b, 1/b).
    """
    a = 0.5 * (b + 1.0 / b)
    d = z - a
    m = n_terms + 4
    k = np.arange(m, dtype=float)
    fact = np.concatenate(([1.0], np.cumprod(np.arange(1.0, m))))
    fact_next = fact * np.arange(1.0, m + 1.0)  # (k+1)!
    u = (-d) ** k / fact
    u[0] = 0.0
    v = (-a) ** k / fact
    pb = (-b) ** k / fact_next
    qb = (-1.0 / b) ** k / fact_next

    def mul(p, q):
        out = np.zeros(m)
        for i in range(m):
            out[i] = np.dot(p[: i + 1], q[i::-1])
        return out

    r = mul(pb, qb)
    w = np.zeros(m)
    w[0] = 1.0 / r[0]
    for i in range(1, m):
        w[i] = -np.dot(r[1: i + 1], w[i - 1:: -1]) / r[0]
    big_b = mul(mul(v, u), w)
    big_b[1] += d
    big_b[2:] -= 0.5 * d * d * ((-1.0) ** k[:-2]) / fact[:-2]
    return big_b[3: 3 + n_terms]


def _mid_integrand(b: float, z: float, t: np.ndarray) -> np.ndarray:
    """N/(D t): the exponentially decaying part of the integrand."""
    a = 0.5 * (b + 1.0 / b)
    num = np.exp(-a * t) * np.expm1(-(z - a) * t)
    den = np.expm1(-b * t) * np.expm1(-t / b)
    return num / (den * t)


def _log_gamma_b_window(b: float, z: float, cfg: QuadratureConfig) -> float:
    """log Gamma_b(z) by direct integration; needs Re z > 0, away from poles."""
    a = 0.5 * (b + 1.0 / b)
    d = z - a
    cutoff = min(cfg.small_t_cutoff, 0.25 * 2.0 * math.pi * min(b, 1.0 / b))
    n_terms = 40
    coef = _series_coefficients(b, z, n_terms)
    powers = cutoff ** np.arange(1, n_terms + 1) / np.arange(1, n_terms + 1)
    terms = coef * powers
    if abs(terms[-1]) + abs(terms[-2]) > cfg.abs_tol:
        raise QuadratureConvergenceError(
            f"series segment of log Gamma_b({b}, {z}) did not converge"
        )
    head = float(np.dot(coef, powers))

    total = 0.0
    lo = cutoff
    h = cutoff
    decay = min(z, a)
    converged = False
    for _ in range(cfg.max_subdivisions):
        hi = lo + h
        x = 0.5 * (hi - lo) * _GL_NODES + 0.5 * (hi + lo)
        val = 0.5 * (hi - lo) * float(np.dot(_GL_WEIGHTS, _mid_integrand(b, z, x)))
        total += val
        if abs(val) < cfg.abs_tol * 1e-3 and lo > 5.0 / decay:
            converged = True
            break
        lo = hi
        h *= 1.6
    if not converged:
        raise QuadratureConvergenceError(
            f"tail quadrature of log Gamma_b({b}, {z}) did not converge "
            f"within {cfg.max_subdivisions} panels"
        )
    return head + total - 0.5 * d * d * float(exp1(cutoff)) + d / cutoff


@lru_cache(maxsize=4096)
def _log_gamma_b_cached(b: float, z: float, cfg: QuadratureConfig) -> tuple[float, float]:
    dist = _pole_distance(b, z)
    if dist < POLE_GUARD:
        raise PoleProximityError(
            f"Gamma_b argument z={z} within {dist:.2e} of the pole lattice "
            f"{{-m*{b} - n/{b}}}",
            factor=f"Gamma_b({b}, {z})",
            distance=dist,
        )
    a = 0.5 * (b + 1.0 / b)
    lo, hi = 0.5 * a, 3.5 * a  # window [0.25, 1.75] * (b + 1/b)
    step = max(b, 1.0 / b)

    log_acc = 0.0
    sign_acc = 1.0
    zz = z
    # Gamma_b(z) = Gamma_b(z + step) * (2 pi)^(-1/2) Gamma(c z) s^(e(z))
    while zz < lo:
        lg, sg = _shift_factor(b, step, zz)
        log_acc += lg
        sign_acc *= sg
        zz += step
    while zz > hi:
        zz -= step
        lg, sg = _shift_factor(b, step, zz)
        log_acc -= lg
        sign_acc *= sg
    return log_acc + _log_gamma_b_window(b, zz, cfg), sign_acc


def _shift_factor(b: float, step: float, z: float) -> tuple[float, float]:
    """log and sign of Gamma_b(z)/Gamma_b(z + step) for step in {b, 1/b}."""
    if step == b:
        lg, sg = _signed_log_gamma(b * z, factor=f"Gamma({b}*{z}) in shift")
        return (
            lg + (-b * z + 0.5) * math.log(b) - 0.5 * math.log(2.0 * math.pi),
            sg,
        )
    lg, sg = _signed_log_gamma(z / b, factor=f"Gamma({z}/{b}) in shift")
    return (
        lg + (z / b - 0.5) * math.log(b) - 0.5 * math.log(2.0 * math.pi),
        sg,
    )


def log_gamma_b(b: float, z: float, cfg: QuadratureConfig | None = None) -> tuple[float, float]:
    """(log|Gamma_b(z)|, sign) for b > 0 and real z off the pole lattice.

    Gamma_b is normalized by Gamma_b((b + 1/b)/2) = 1 and satisfies
    Gamma_b(z)/Gamma_b(z + b) = (2 pi)^(-1/2) Gamma(b z) b^(-b z + 1/2)
    together with the same equation under b -> 1/b.  It is symmetric
    under b <-> 1/b.
    """
    if b <= 0:
        raise DomainError(f"b must be positive, got {b}")
    return _log_gamma_b_cached(float(b), float(z), cfg or _DEFAULT_CFG)


def gamma_b(b: float, z: float, cfg: QuadratureConfig | None = None) -> float:
    """Double-gamma function Gamma_b(z); see log_gamma_b."""
    lg, sign = log_gamma_b(b, z, cfg)
    return sign * math.exp(lg)


# ---------------------------------------------------------------------------
# bar-R, bar-H, mu_B, H-special
# ---------------------------------------------------------------------------

def log_bar_r(gamma: float, beta: float, mu: float,
              cfg: QuadratureConfig | None = None) -> tuple[float, float]:
    """(log|bar-R(beta, mu, 0)|, sign); see bar_r."""
    q = q_background(gamma)
    if mu < 0:
        raise DomainError(f"mu must be nonnegative, got {mu}")
    if abs(q - beta) < POLE_GUARD:
        raise DomainError("beta = Q is outside the domain of bar-R")
    expo = 2.0 * (q - beta) / gamma
    if mu == 0.0:
        if expo > 0:
            return -math.inf, 1.0
        raise DomainError("mu = 0 with beta > Q makes bar-R diverge")
    half = gamma / 2.0
    lg_num, sg_num = log_gamma_b(half, beta - half, cfg)
    lg_den, sg_den = log_gamma_b(half, q - beta, cfg)
    log_val = (
        expo * math.log(mu)
        + (expo - 0.5) * math.log(2.0 * math.pi)
        + (gamma * (q - beta) / 2.0 - 0.5) * math.log(2.0 / gamma)
        - math.log(abs(q - beta))
        - expo * math.lgamma(1.0 - gamma * gamma / 4.0)
        + lg_num
        - lg_den
    )
    sign = sg_num * sg_den * (1.0 if q > beta else -1.0)
    return log_val, sign


def bar_r(gamma: float, beta: float, mu: float, cfg: QuadratureConfig | None = None) -> float:
    """Disk reflection amplitude bar-R(beta, mu, 0) at zero opposite weight.

    bar-R = mu^(2(Q-b)/g) (2 pi)^(2(Q-b)/g - 1/2) (2/g)^(g(Q-b)/2 - 1/2)
            / ((Q-b) Gamma(1 - g^2/4)^(2(Q-b)/g))
            * Gamma_{g/2}(b - g/2) / Gamma_{g/2}(Q - b).

    The mu dependence is exactly the power mu^(2(Q-beta)/gamma); at
    mu = 0 that power is taken as the limit (zero when the exponent is
    positive).
    """
    lg, sign = log_bar_r(gamma, beta, mu, cfg)
    return sign * math.exp(lg)


def log_bar_h(gamma: float, betas: InsertionTriple,
              cfg: QuadratureConfig | None = None) -> tuple[float, float]:
    """(log|bar-H|, sign) of the fixed-length structure constant; see bar_h."""
    if abs(betas.gamma - gamma) > 1e-12:
        raise DomainError(
            f"gamma mismatch: {gamma} vs triple built for {betas.gamma}"
        )
    q = q_background(gamma)
    half = gamma / 2.0
    b1, b2, b3 = betas.betas
    bb = betas.beta_bar

    log_val = (
        (2.0 * q - bb + gamma) / gamma * math.log(2.0 * math.pi)
        + ((half - 2.0 / gamma) * (q - bb / 2.0) - 1.0) * math.log(2.0 / gamma)
        - (2.0 * q - bb) / gamma * math.lgamma(1.0 - gamma * gamma / 4.0)
    )
    sign = 1.0
    lg, sg = _signed_log_gamma((bb - 2.0 * q) / gamma, factor="Gamma((beta_bar - 2Q)/gamma)")
    log_val -= lg
    sign *= sg
    for z, name in (
        (bb / 2.0 - q, "Gamma_b(beta_bar/2 - Q)"),
        (bb / 2.0 - b2, "Gamma_b((beta_bar - 2 beta2)/2)"),
        (bb / 2.0 - b1, "Gamma_b((beta_bar - 2 beta1)/2)"),
        (q - bb / 2.0 + b3, "Gamma_b(Q - (beta_bar - 2 beta3)/2)"),
    ):
        lg, sg = log_gamma_b(half, z, cfg)
        log_val += lg
        sign *= sg
    for z, name in (
        (q, "Gamma_b(Q)"),
        (q - b1, "Gamma_b(Q - beta1)"),
        (q - b2, "Gamma_b(Q - beta2)"),
        (b3, "Gamma_b(beta3)"),
    ):
        lg, sg = log_gamma_b(half, z, cfg)
        log_val -= lg
        sign *= sg
    return log_val, sign


def bar_h(gamma: float, betas: InsertionTriple, cfg: QuadratureConfig | None = None) -> float:
    """Fixed-boundary-length three-point constant bar-H^(b1,b2,b3)_(0,1,0).

    Direct evaluation of the double-gamma product formula.  Symmetric
    under beta1 <-> beta2 at the formula level (the same factors are
    exchanged).  Any Gamma or Gamma_b factor within the pole guard of a
    pole raises PoleProximityError naming the factor.
    """
    lg, sign = log_bar_h(gamma, betas, cfg)
    return sign * math.exp(lg)


def bar_h_reduced(gamma: float, beta: float) -> float:
    """Closed form of bar-H on the family (beta, Q + 3 gamma/2 - beta, 2/gamma).

    Equals Gamma(1 - gamma^2/4)^2 / (Gamma(g/2 (Q - beta)) Gamma(g/2 (Q - beta~)))
    with beta~ = Q + 3 gamma/2 - beta, valid for
    beta in (3 gamma/2, Q + gamma/2) excluding Q (where a Gamma argument
    hits a pole).  Manifestly symmetric under beta <-> beta~.
    """
    q = q_background(gamma)
    lo, hi = 1.5 * gamma, q + gamma / 2.0
    if not (lo < beta < hi) or abs(beta - q) < POLE_GUARD:
        raise DomainError(
            f"beta must lie in ({lo}, {hi}) excluding Q={q}, got {beta}"
        )
    beta_t = q + 1.5 * gamma - beta
    lg1, sg1 = _signed_log_gamma(gamma / 2.0 * (q - beta), "Gamma(g/2 (Q - beta))")
    lg2, sg2 = _signed_log_gamma(gamma / 2.0 * (q - beta_t), "Gamma(g/2 (Q - beta~))")
    log_val = 2.0 * math.lgamma(1.0 - gamma * gamma / 4.0) - lg1 - lg2
    return sg1 * sg2 * math.exp(log_val)


def mu_b(gamma: float, sigma: float) -> float:
    """Boundary cosmological constant mu_B(sigma).

    mu_B(sigma) = sin(pi gamma^2/4)^(-1/2) cos(pi gamma (sigma - Q/2)),
    nonnegative for sigma in [Q/2 - 1/(2 gamma), Q/2 + 1/(2 gamma)].
    Total function of sigma.
    """
    q = q_background(gamma)
    s = math.sin(math.pi * gamma * gamma / 4.0)
    return math.cos(math.pi * gamma * (sigma - q / 2.0)) / math.sqrt(s)


def log_h_special(gamma: float, beta: float) -> tuple[float, float]:
    """(log|H|, sign) of the closed-form three-point constant; see h_special."""
    q = q_background(gamma)
    if not gamma < beta < q:
        raise DomainError(f"beta must lie in ({gamma}, {q}), got {beta}")
    half = gamma / 2.0
    log_val = (
        math.log(2.0 / (gamma * math.pi))
        + 2.0 * math.lgamma(1.0 - gamma * gamma / 4.0)
        + 0.5 * math.log(math.sin(math.pi * gamma * gamma / 4.0))
    )
    sign = 1.0
    for z, name, plus in (
        (half * (q + half - beta), "Gamma(g/2 (Q + g/2 - beta))", True),
        (half * (beta - gamma), "Gamma(g/2 (beta - gamma))", True),
        (half * (q - beta), "Gamma(g/2 (Q - beta))", False),
        (half * (beta - 1.5 * gamma), "Gamma(g/2 (beta - 3g/2))", False),
    ):
        lg, sg = _signed_log_gamma(z, name)
        log_val += lg if plus else -lg
        sign *= sg
    return log_val, sign


def h_special(gamma: float, beta: float) -> float:
    """H^(Q + 3g/2 - beta, 2/g, beta)_(0,0,0) for beta in (gamma, Q).

    Closed form:
    (2/(g pi)) Gamma(1 - g^2/4)^2 sqrt(sin(pi g^2/4))
      * Gamma(g/2 (Q + g/2 - beta)) Gamma(g/2 (beta - g))
      / (Gamma(g/2 (Q - beta)) Gamma(g/2 (beta - 3g/2))).

    Vanishes as beta -> Q (a denominator Gamma blows up); arguments that
    put any Gamma factor at a pole are rejected.
    """
    lg, sign = log_h_special(gamma, beta)
    return sign * math.exp(lg)


def qt_laplace_from_h(gamma: float, betas: InsertionTriple, h_value: float) -> float:
    """Quantum-triangle Laplace functional from an H value.

    QT(W1, W2, W3)[exp(-A - sum_i mu_i L_i)] = H / prod_i (Q - beta_i);
    the prefactor is negative iff an odd number of betas exceed Q.
    """
    q = q_background(gamma)
    prod = 1.0
    for b in betas.betas:
        diff = q - b
        if diff == 0.0:
            raise DomainError(f"beta = Q = {q} makes the QT prefactor divide by zero")
        prod *= diff
    return h_value / prod
