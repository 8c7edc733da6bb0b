"""Closed-form parameter calculus for the mating-of-trees coupling.

Relates the LQG coupling gamma, the flow-line angle theta, the
excursion-sign probability p, the local-time constant c, the walk
correlation rho, wedge weights, insertion sizes, and boundary-length
power laws.  The central exact relations are

    p/(1-p) = sin(a_g (pi - 2 theta)) / sin(a_g (pi + 2 theta)),
    c       = cos((1 - gamma^2/4) theta) / sin(pi gamma^2/8),

with a_g = 1/2 - gamma^2/8, valid for gamma in (0, 2) and theta in
[-pi/2, pi/2] (endpoint values of p taken as continuous limits 0, 1).
The products p*c and (1-p)*c have the single-sine forms

    p c      = sin(a_g (pi - 2 theta)) / sin(pi gamma^2/4),
    (1-p) c  = sin(a_g (pi + 2 theta)) / sin(pi gamma^2/4),

and `pc_via_lcft` recomputes them from the structure constants of
`specfun` (bar-H over H on the wedge-weight family) - the toolkit's
master cross-check of the special-function stack against the closed
form.

Everything here is pure and thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import specfun
from .errors import DomainError, HypothesisViolationError, NumericalError, SeibergViolationError
from .specfun import InsertionTriple, QuadratureConfig, q_background

__all__ = [
    "LqgParams",
    "SkewCoupling",
    "WeightBetaRecord",
    "lqg_params",
    "gamma_from_rho",
    "p_of_theta",
    "c_of_theta",
    "theta_of_p",
    "pc_products",
    "pc_via_lcft",
    "pc_via_lcft_component",
    "inversion_rate",
    "wedge_weights",
    "skew_coupling",
    "insertion_calculus",
    "qt_length_law",
    "qt_scaling_exponent",
    "lf_length_density",
    "area_laplace",
]


@dataclass(frozen=True)
class LqgParams:
    """All constants derived from gamma.

    kappa = gamma^2, kappa_prime = 16/kappa, Q = 2/gamma + gamma/2,
    chi_ig = 2/sqrt(kappa) - sqrt(kappa)/2 (imaginary-geometry),
    a = sqrt(2) sin(pi gamma^2/4)^(-1/2) (walk variance constant),
    rho = -cos(pi gamma^2/4) (walk correlation).
    """

    gamma: float
    kappa: float
    kappa_prime: float
    Q: float
    chi_ig: float
    a: float
    rho: float


def lqg_params(gamma: float) -> LqgParams:
    """Derive the full constant bundle from gamma in (0, 2)."""
    q = q_background(gamma)
    kappa = gamma * gamma
    s = math.sin(math.pi * kappa / 4.0)
    return LqgParams(
        gamma=gamma,
        kappa=kappa,
        kappa_prime=16.0 / kappa,
        Q=q,
        chi_ig=2.0 / gamma - gamma / 2.0,
        a=math.sqrt(2.0) / math.sqrt(s),
        rho=-math.cos(math.pi * kappa / 4.0),
    )


def gamma_from_rho(rho: float) -> float:
    """The unique gamma in (0, 2) with -cos(pi gamma^2/4) = rho."""
    if not -1.0 < rho < 1.0:
        raise DomainError(f"rho must lie in (-1, 1), got {rho}")
    return math.sqrt(4.0 * math.acos(-rho) / math.pi)


def _check_theta(theta: float) -> None:
    if not -math.pi / 2.0 <= theta <= math.pi / 2.0:
        raise DomainError(f"theta must lie in [-pi/2, pi/2], got {theta}")


def p_of_theta(gamma: float, theta: float) -> float:
    """Probability p that the space-filling curve sits left of the flow line.

    p/(1-p) = sin(a_g (pi - 2 theta)) / sin(a_g (pi + 2 theta)) with
    a_g = 1/2 - gamma^2/8; the endpoints theta = +-pi/2 return the
    continuous limits 0 and 1.
    """
    q_background(gamma)
    _check_theta(theta)
    if theta == math.pi / 2.0:
        return 0.0
    if theta == -math.pi / 2.0:
        return 1.0
    a_g = 0.5 - gamma * gamma / 8.0
    num = math.sin(a_g * (math.pi - 2.0 * theta))
    den = math.sin(a_g * (math.pi + 2.0 * theta))
    return num / (num + den)


def c_of_theta(gamma: float, theta: float) -> float:
    """Local-time normalization c = cos((1 - gamma^2/4) theta) / sin(pi gamma^2/8)."""
    q_background(gamma)
    _check_theta(theta)
    return math.cos((1.0 - gamma * gamma / 4.0) * theta) / math.sin(math.pi * gamma * gamma / 8.0)


def _dp_dtheta(gamma: float, theta: float) -> float:
    a_g = 0.5 - gamma * gamma / 8.0
    num = math.sin(a_g * (math.pi - 2.0 * theta))
    den = math.sin(a_g * (math.pi + 2.0 * theta))
    dnum = -2.0 * a_g * math.cos(a_g * (math.pi - 2.0 * theta))
    dden = 2.0 * a_g * math.cos(a_g * (math.pi + 2.0 * theta))
    tot = num + den
    return (dnum * tot - num * (dnum + dden)) / (tot * tot)


def theta_of_p(gamma: float, p: float, abs_tol: float = 1e-12, max_iter: int = 200) -> float:
    """Invert p_of_theta on the open interval; monotone bisection + Newton polish."""
    q_background(gamma)
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie in (0, 1), got {p}")
    lo, hi = -math.pi / 2.0, math.pi / 2.0
    # p decreases in theta: p(lo) = 1, p(hi) = 0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if p_of_theta(gamma, mid) > p:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    else:
        raise NumericalError("theta_of_p bisection did not converge")
    theta = 0.5 * (lo + hi)
    deriv = _dp_dtheta(gamma, theta)
    if deriv != 0.0:
        polished = theta - (p_of_theta(gamma, theta) - p) / deriv
        if lo - 1e-10 <= polished <= hi + 1e-10:
            theta = polished
    if abs(p_of_theta(gamma, theta) - p) > 1e3 * abs_tol:
        raise NumericalError("theta_of_p did not reach its tolerance")
    return theta


def pc_products(gamma: float, theta: float) -> tuple[float, float]:
    """(p*c, (1-p)*c) in closed form.

    p c = sin(a_g (pi - 2 theta)) / sin(pi gamma^2/4) and the mirror
    formula for (1-p) c; their sum telescopes back to c_of_theta via
    sin(a(pi-2t)) + sin(a(pi+2t)) = 2 sin(a pi) cos(2 a t).
    """
    q_background(gamma)
    _check_theta(theta)
    a_g = 0.5 - gamma * gamma / 8.0
    s = math.sin(math.pi * gamma * gamma / 4.0)
    return (
        math.sin(a_g * (math.pi - 2.0 * theta)) / s,
        math.sin(a_g * (math.pi + 2.0 * theta)) / s,
    )


def wedge_weights(gamma: float, theta: float) -> tuple[float, float]:
    """(W_left, W_right) = (1 - gamma^2/4)(1 -+ 2 theta/pi); sums to 2 - gamma^2/2."""
    q_background(gamma)
    _check_theta(theta)
    base = 1.0 - gamma * gamma / 4.0
    return (
        base * (1.0 - 2.0 * theta / math.pi),
        base * (1.0 + 2.0 * theta / math.pi),
    )


def pc_via_lcft_component(gamma: float, w: float,
                          cfg: QuadratureConfig | None = None) -> float:
    """One product p*c or (1-p)*c from structure constants, given its wedge weight.

    Computes (2 / (gamma sqrt(sin(pi gamma^2/4)))) * bar-H(beta, beta~, 2/gamma)
    / H(Q + 3 gamma/2 - beta, 2/gamma, beta) with beta = gamma + (2 - w)/gamma
    and beta~ = Q + 3 gamma/2 - beta.  H carries its arguments in the
    closed-form order; matching the (beta, beta~, 2/gamma) order of bar-H
    relies on the symmetry of H_{(0,0,0)} in its insertion sizes.

    Valid strictly inside the thick-weight window w in
    (gamma^2/2, 2 - gamma^2/2), which keeps beta inside (3 gamma/2, Q);
    the formulas are never evaluated outside their proven domain.
    """
    q = q_background(gamma)
    lo, hi = gamma * gamma / 2.0, 2.0 - gamma * gamma / 2.0
    if not lo < w < hi:
        raise DomainError(
            f"wedge weight {w} outside the admissible window ({lo}, {hi})"
        )
    beta = gamma + (2.0 - w) / gamma
    beta_t = q + 1.5 * gamma - beta
    triple = InsertionTriple(gamma, beta, beta_t, 2.0 / gamma)
    log_bh, sg_bh = specfun.log_bar_h(gamma, triple, cfg)
    log_h, sg_h = specfun.log_h_special(gamma, beta)
    s = math.sin(math.pi * gamma * gamma / 4.0)
    log_val = math.log(2.0 / gamma) - 0.5 * math.log(s) + log_bh - log_h
    return sg_bh * sg_h * math.exp(log_val)


def pc_via_lcft(gamma: float, theta: float,
                cfg: QuadratureConfig | None = None) -> tuple[float, float]:
    """(p*c, (1-p)*c) recomputed through the LCFT structure constants.

    Agrees with pc_products to high accuracy on the admissible window;
    this is the master cross-check tying the double-gamma stack to the
    closed-form theorem.
    """
    w_left, w_right = wedge_weights(gamma, theta)
    return (
        pc_via_lcft_component(gamma, w_left, cfg),
        pc_via_lcft_component(gamma, w_right, cfg),
    )


def inversion_rate(theta: float) -> float:
    """Expected permuton inversion rate (pi - 2 theta)/(2 pi)."""
    _check_theta(theta)
    return (math.pi - 2.0 * theta) / (2.0 * math.pi)


@dataclass(frozen=True)
class SkewCoupling:
    """Consistent bundle (gamma, theta, p, c, wL, wR, q, rho).

    q is the permuton skew parameter and equals p; rho is the driving
    walk correlation -cos(pi gamma^2/4); wL + wR = 2 - gamma^2/2.
    """

    gamma: float
    theta: float
    p: float
    c: float
    w_left: float
    w_right: float
    q: float
    rho: float


def skew_coupling(gamma: float, theta: float) -> SkewCoupling:
    """Build the full coupling bundle at (gamma, theta)."""
    p = p_of_theta(gamma, theta)
    w_left, w_right = wedge_weights(gamma, theta)
    return SkewCoupling(
        gamma=gamma,
        theta=theta,
        p=p,
        c=c_of_theta(gamma, theta),
        w_left=w_left,
        w_right=w_right,
        q=p,
        rho=-math.cos(math.pi * gamma * gamma / 4.0),
    )


@dataclass(frozen=True)
class WeightBetaRecord:
    """Weight-to-insertion bookkeeping for one quantum-surface weight W.

    beta = gamma + (2 - W)/gamma, beta_dual = Q - |beta - Q| (thick-thin
    reflection), delta = (beta/2)(Q - beta/2) (conformal weight), and
    w_reflect = gamma (gamma + 2/gamma - beta) recovers W from beta.
    """

    W: float
    beta: float
    beta_dual: float
    delta: float
    w_reflect: float


def insertion_calculus(gamma: float, w: float) -> WeightBetaRecord:
    """Populate the weight/insertion record for weight w at coupling gamma."""
    q = q_background(gamma)
    beta = gamma + (2.0 - w) / gamma
    return WeightBetaRecord(
        W=w,
        beta=beta,
        beta_dual=q - abs(beta - q),
        delta=(beta / 2.0) * (q - beta / 2.0),
        w_reflect=gamma * (gamma + 2.0 / gamma - beta),
    )


def qt_scaling_exponent(gamma: float, w1: float, w2: float, w3: float) -> float:
    """Boundary-length scaling exponent (gamma^2 + 2 - (W1+W2+W3)) / gamma^2."""
    q_background(gamma)
    return (gamma * gamma + 2.0 - (w1 + w2 + w3)) / (gamma * gamma)


def qt_length_law(gamma: float, w1: float, w2: float, w3: float,
                  cfg: QuadratureConfig | None = None) -> tuple[float, float]:
    """(exponent, prefactor) of |QT(W1, W2, W3; ell)| = prefactor * ell^exponent.

    exponent = (beta_bar - 2 Q)/gamma - 1 and
    prefactor = 2 |bar-H| / (gamma prod_i (Q - beta_i)) with
    beta_i = gamma + (2 - W_i)/gamma.  Requires the reflected sizes
    beta~_i = Q - |beta_i - Q| to satisfy |beta~_1 - beta~_2| < beta~_3
    and beta~_1 + beta~_2 + beta~_3 > gamma, and every beta_i != Q.
    `ell` measures the arc between the W1 and W2 marked points; permuted
    weight orders are the caller's responsibility (the stated order is
    fixed here).
    """
    q = q_background(gamma)
    betas = [gamma + (2.0 - w) / gamma for w in (w1, w2, w3)]
    tilde = [q - abs(b - q) for b in betas]
    if not abs(tilde[0] - tilde[1]) < tilde[2]:
        raise HypothesisViolationError(
            f"|beta~1 - beta~2| < beta~3 fails for weights {(w1, w2, w3)}"
        )
    if not sum(tilde) > gamma:
        raise HypothesisViolationError(
            f"beta~1 + beta~2 + beta~3 > gamma fails for weights {(w1, w2, w3)}"
        )
    prod = 1.0
    for b in betas:
        if abs(q - b) < 1e-14:
            raise HypothesisViolationError("beta_i = Q makes the prefactor diverge")
        prod *= q - b
    beta_bar = sum(betas)
    exponent = (beta_bar - 2.0 * q) / gamma - 1.0
    triple = InsertionTriple(gamma, *betas)
    prefactor = 2.0 / (gamma * prod) * abs(specfun.bar_h(gamma, triple, cfg))
    return exponent, prefactor


def lf_length_density(gamma: float, betas: InsertionTriple, ell: float,
                      cfg: QuadratureConfig | None = None) -> float:
    """Total mass (2/gamma) bar-H ell^((beta_bar - 2Q)/gamma - 1) of the
    fixed-boundary-length Liouville field.

    Requires the Seiberg conditions |beta1 - beta2| < beta3,
    beta_bar > gamma, and beta1, beta2 < Q.
    """
    q = q_background(gamma)
    if ell <= 0:
        raise DomainError(f"ell must be positive, got {ell}")
    if not (betas.seiberg_pair and betas.seiberg_sum
            and betas.beta1 < q and betas.beta2 < q):
        raise SeibergViolationError(
            f"Seiberg conditions fail for {betas.betas} at gamma={gamma}"
        )
    expo = (betas.beta_bar - 2.0 * q) / gamma - 1.0
    return 2.0 / gamma * specfun.bar_h(gamma, betas, cfg) * ell ** expo


def area_laplace(gamma: float, theta: float, mu: float) -> tuple[float, float]:
    """Laplace transforms (E e^{-mu A_left}, E e^{-mu A_right}) of the
    unit-local-time quantum areas.

    Equal to exp(-c p sqrt(2 mu)/a) and exp(-c (1-p) sqrt(2 mu)/a); the
    product of the pair is exp(-c sqrt(2 mu)/a) since the exponents add.
    """
    if mu < 0:
        raise DomainError(f"mu must be nonnegative, got {mu}")
    params = lqg_params(gamma)
    p = p_of_theta(gamma, theta)
    c = c_of_theta(gamma, theta)
    root = math.sqrt(2.0 * mu)
    return (
        math.exp(-c * p * root / params.a),
        math.exp(-c * (1.0 - p) * root / params.a),
    )
