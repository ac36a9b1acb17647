"""Zero-energy solutions for the two-term power-law potential family.

A family is indexed by a real exponent parameter mu (mu not in {0, +1/2,
-1/2}; those three values collapse to the oscillator, Coulomb and Morse
problems and are rejected), a strength lam > 0, angular momentum l and a
state index n.  The potential

    V(r) = (lam/(2 mu+1))^2 [ (lam^2/2) r^p1 - Omega r^p2 ],
    p1 = -2(mu - 1/2)/(mu + 1/2),    p2 = -2 mu/(mu + 1/2),
    Omega = 2n + 1 + (2l + 1)|mu + 1/2|,

admits an exact solution at exactly zero energy,

    psi(r) = a_n (lam^(2 mu+1) r)^(l+1 or -l) exp(-(lam^2/2) r^(1/(mu+1/2)))
             L_n^((2l+1)|mu+1/2|)(lam^2 r^(1/(mu+1/2))),

with the l+1 prefactor for mu > -1/2 and -l for mu < -1/2.  This module
builds the potential and wavefunction, checks the residual and the point
canonical transformation identity that generates them from the oscillator,
classifies boundedness and normalizability of the effective potential, and
enumerates degenerate (l, n) pairs sharing one potential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import oracle
from .closedform import (ClosedFormSolution, ResidualReport, count_sign_changes,
                         relative_residual)

__all__ = [
    "PowerLawFamily", "PotentialTerms", "MappedParameters", "BoundCondition",
    "WellScan", "ClassificationReport", "NormResult",
    "map_parameters", "potential_eval", "effective_potential_eval",
    "effective_potential_beta_form", "exponent_pair", "wavefunction",
    "schrodinger_residual", "pct_identity_check", "bound_condition",
    "classify", "degenerate_pairs", "norm",
]

_EXCLUDED_MU = {Fraction(0), Fraction(1, 2), Fraction(-1, 2)}


def _validate_mu(mu) -> float:
    mu_f = float(mu)
    if not math.isfinite(mu_f):
        raise ValueError("mu must be finite")
    if mu_f in (0.0, 0.5, -0.5):
        raise ValueError(
            "mu in {0, +1/2, -1/2} reduces to the oscillator, Coulomb or Morse "
            "problem and is outside this family")
    return mu_f


@dataclass(frozen=True)
class PowerLawFamily:
    """Parameter bundle (mu, lam, l, n) of one exactly solvable problem."""

    mu: float | Fraction
    lam: float = 1.0
    l: int = 0
    n: int = 0

    def __post_init__(self):
        _validate_mu(self.mu)
        if not self.lam > 0:
            raise ValueError("lam must be positive")
        for name in ("l", "n"):
            v = getattr(self, name)
            if not (isinstance(v, (int, np.integer)) and v >= 0):
                raise ValueError(f"{name} must be a non-negative integer, got {v!r}")

    @property
    def mu_f(self) -> float:
        return float(self.mu)

    @property
    def above(self) -> bool:
        """True on the mu > -1/2 branch (regular r^(l+1) prefactor)."""
        return self.mu_f > -0.5

    @property
    def beta(self) -> float:
        """Positive tail parameter: mu = -1/2 + 1/beta above, -1/2 - 1/beta below."""
        return 1.0 / abs(self.mu_f + 0.5)

    @property
    def gamma(self) -> float:
        return -0.5 + (self.l + 0.5) * abs(self.mu_f + 0.5)

    @property
    def omega(self):
        """Degeneracy constant 2n + 1 + (2l+1)|mu + 1/2| (exact for rational mu)."""
        if isinstance(self.mu, Rational):
            return 2 * self.n + 1 + (2 * self.l + 1) * abs(Fraction(self.mu) + Fraction(1, 2))
        return 2 * self.n + 1 + (2 * self.l + 1) * abs(self.mu_f + 0.5)


@dataclass(frozen=True)
class PotentialTerms:
    """One repulsive plus one attractive power term; coefficients positive."""

    repulsive_coeff: float
    repulsive_exponent: float
    attractive_coeff: float
    attractive_exponent: float

    def __post_init__(self):
        if not (self.repulsive_coeff > 0 and self.attractive_coeff > 0):
            raise ValueError("both term coefficients must be positive")

    def value(self, r):
        r = _positive(r)
        return (self.repulsive_coeff * r**self.repulsive_exponent
                - self.attractive_coeff * r**self.attractive_exponent)

    def scaled(self, coupling_scale: float) -> "PotentialTerms":
        return replace(self, attractive_coeff=self.attractive_coeff * coupling_scale)

    @property
    def turning_scale(self) -> float:
        """Radius where the two terms balance."""
        return (self.attractive_coeff / self.repulsive_coeff) ** (
            1.0 / (self.repulsive_exponent - self.attractive_exponent))


@dataclass(frozen=True)
class MappedParameters:
    energy: float
    gamma: float
    terms: PotentialTerms


def _positive(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("radial argument must be positive")
    return r


def exponent_pair(mu) -> tuple[float, float]:
    """Exponents (p1, p2) of the repulsive and attractive terms; both tend to
    -2 as |mu| grows, and are undefined at mu in {0, +1/2, -1/2}."""
    mu_f = _validate_mu(mu)
    return (-2.0 * (mu_f - 0.5) / (mu_f + 0.5), -2.0 * mu_f / (mu_f + 0.5))


def map_parameters(family: PowerLawFamily) -> MappedParameters:
    """Physical parameters produced by the coordinate map r = x^(2 mu + 1):
    zero energy, the representation label gamma, and the potential terms."""
    mu, lam, l, n = family.mu_f, family.lam, family.l, family.n
    p1, p2 = exponent_pair(mu)
    unit = (lam / (2.0 * mu + 1.0)) ** 2
    omega = 2 * n + 1 + (2 * l + 1) * abs(mu + 0.5)
    terms = PotentialTerms(repulsive_coeff=unit * lam**2 / 2.0,
                           repulsive_exponent=p1,
                           attractive_coeff=unit * omega,
                           attractive_exponent=p2)
    return MappedParameters(energy=0.0, gamma=family.gamma, terms=terms)


def potential_eval(family: PowerLawFamily, r):
    return map_parameters(family).terms.value(r)


def effective_potential_eval(family: PowerLawFamily, r, coupling_scale: float = 1.0):
    """Centrifugal term plus twice the potential: the coefficient of psi in
    psi'' = [l(l+1)/r^2 + 2 V(r)] psi at zero energy."""
    r = _positive(r)
    terms = map_parameters(family).terms.scaled(coupling_scale)
    return family.l * (family.l + 1) / r**2 + 2.0 * terms.value(r)


def effective_potential_beta_form(family: PowerLawFamily, r):
    """Same quantity written in the tail parameter beta; must agree pointwise
    with the mu form for every valid family."""
    r = _positive(r)
    b, lam, l, n = family.beta, family.lam, family.l, family.n
    omega_b = 2 * n + 1 + (2 * l + 1) / b
    s = r**b if family.above else r**(-b)
    return (l * (l + 1) + (b**2 * lam**4 / 4.0) * s**2
            - (b**2 * lam**2 / 2.0) * omega_b * s) / r**2


# ---------------------------------------------------------------------------
# Wavefunction
# ---------------------------------------------------------------------------

def _raw_solution(family: PowerLawFamily) -> ClosedFormSolution:
    mu, lam, l, n = family.mu_f, family.lam, family.l, family.n
    p = float(l + 1) if family.above else float(-l)
    m = 1.0 / (mu + 0.5)
    order = (2 * l + 1) * abs(mu + 0.5)
    amp = (lam ** (2.0 * mu + 1.0)) ** p
    return ClosedFormSolution(amplitude=amp, power=p, rate=lam**2, shape=m,
                              degree=n, order=order)


def _default_grid(family: PowerLawFamily, num: int = 240,
                  w_lo: float = 1e-2, w_hi: float | None = None) -> np.ndarray:
    """Radial grid mapped from the Laguerre argument w = lam^2 r^(1/(mu+1/2)),
    which is where all the structure (zeros, turning points) lives."""
    if w_hi is None:
        w_hi = 30.0 * (family.n + 1)
    w = np.geomspace(w_lo, w_hi, num)
    m = 1.0 / (family.mu_f + 0.5)
    r = (w / family.lam**2) ** (1.0 / m)
    return np.sort(r)


def _pinned_solution(family: PowerLawFamily) -> ClosedFormSolution:
    """Overall scale fixed at the attractive-term turning radius so ratio
    tests are well conditioned; falls back to the grid maximum if the turning
    radius sits too close to a node."""
    raw = _raw_solution(family)
    r0 = map_parameters(family).terms.turning_scale
    grid = _default_grid(family)
    vals = raw.value(grid)
    peak = np.abs(vals).max()
    v0 = float(raw.value(r0))
    if abs(v0) < 1e-3 * peak:
        v0 = float(vals[np.argmax(np.abs(vals))])
    return raw.scaled(1.0 / v0)


def wavefunction(family: PowerLawFamily) -> ClosedFormSolution:
    """Closed-form solution with analytic derivatives.  Normalized by
    quadrature whenever the norm is finite (always above mu = -1/2; for l > 0
    below); otherwise pinned to unit value at the turning radius and tagged
    unnormalized."""
    pinned = _pinned_solution(family)
    if family.above or family.l > 0:
        q = oracle.quad_seminfinite(lambda r: pinned.value(r) ** 2, 1e-11)
        if not q.converged:
            raise RuntimeError(f"norm quadrature failed for {family}: {q.note}")
        a_n = 1.0 / math.sqrt(q.value)
        return pinned.scaled(a_n, normalized=True, norm_constant=pinned.amplitude * a_n)
    return pinned.scaled(1.0, normalized=False, norm_constant=None,
                         notes=("unnormalized: norm diverges for l = 0 below mu = -1/2",))


@dataclass(frozen=True)
class NormResult:
    finite: bool
    value: float | None
    quad: oracle.QuadResult | None


def norm(family: PowerLawFamily) -> NormResult:
    """Squared-norm of the constructed wavefunction.  Finiteness follows the
    closed rule (divergent exactly when mu < -1/2 and l = 0, where the tail
    integrand tends to a constant); quadrature confirms either way."""
    finite = family.above or family.l > 0
    sol = wavefunction(family)
    q = oracle.quad_seminfinite(lambda r: sol.value(r) ** 2, 1e-10)
    if not finite:
        return NormResult(False, None, q)
    return NormResult(True, q.value, q)


# ---------------------------------------------------------------------------
# Residual checks
# ---------------------------------------------------------------------------

def schrodinger_residual(family: PowerLawFamily, grid=None,
                         coupling_scale: float = 1.0) -> ResidualReport:
    """Relative residual of psi'' = [l(l+1)/r^2 + 2V] psi on a grid.

    ``coupling_scale`` perturbs the attractive coefficient in the equation
    only, as a detector sanity hook.
    """
    r = _default_grid(family) if grid is None else _positive(grid)
    sol = _pinned_solution(family)
    val, _, d2 = sol._derivs(r)
    terms_obj = map_parameters(family).terms.scaled(coupling_scale)
    terms = [
        d2,
        -family.l * (family.l + 1) / r**2 * val,
        -2.0 * terms_obj.value(r) * val,
    ]
    mask = np.abs(val) > 1e-12 * np.abs(val).max()
    return relative_residual(terms, mask=mask)


def pct_identity_check(family: PowerLawFamily, grid=None,
                       gamma_offset: float = 0.0) -> ResidualReport:
    """Check that the coordinate map r = x^(2 mu + 1) applied to the
    oscillator equation reproduces -l(l+1)/r^2 - 2V(r).

    The mapped side is
        (g')^-2 [ -(4 g(g+1)+3/4)/x^2 - lam^4 x^2 + 4 lam^2 (g+n+1)
                  - g'''/(2 g') + 3 (g''/g')^2 / 4 ]
    with g(x) = x^(2 mu + 1); for a monomial map the last two terms collapse
    to ((2 mu+1)^2 - 1)/(4 x^2).
    """
    lam, l, n = family.lam, family.l, family.n
    M = 2.0 * family.mu_f + 1.0
    if grid is None:
        w = np.geomspace(1e-2, 30.0 * (n + 1), 240)
        x = np.sqrt(w) / lam
    else:
        x = _positive(grid)
    g = family.gamma + gamma_offset
    dg = M * x ** (M - 1.0)
    d2g_over = (M - 1.0) / x          # g''/g'
    d3g_over = (M - 1.0) * (M - 2.0) / x**2  # g'''/g'
    bracket = (-(4.0 * g * (g + 1.0) + 0.75) / x**2
               - lam**4 * x**2
               + 4.0 * lam**2 * (g + n + 1.0)
               - 0.5 * d3g_over + 0.75 * d2g_over**2)
    mapped = bracket / dg**2
    r = x**M
    direct = -family.l * (family.l + 1) / r**2 - 2.0 * potential_eval(family, r)
    return relative_residual([mapped, -direct])


# ---------------------------------------------------------------------------
# Boundedness / normalizability classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundCondition:
    """Necessary (not sufficient) well-existence condition n > rhs, defined
    for |mu| > 1/2; reported alongside the numerical shape verdict but never
    overriding it."""

    rhs: float | None
    satisfied: bool | None
    applicable: bool

    @property
    def status(self) -> str:
        if self.satisfied is None:
            return "not-applicable"
        if not self.applicable:
            return "not-applicable"
        return "satisfied" if self.satisfied else "violated"


def bound_condition(family: PowerLawFamily, coupling_scale: float = 1.0) -> BoundCondition:
    mu, b, l = family.mu_f, family.beta, family.l
    if -0.5 < mu < 0.5:
        return BoundCondition(rhs=None, satisfied=None, applicable=False)
    sign = -1.0 if mu > 0.5 else +1.0  # (1 -+ beta), (2 -+ beta)
    one, two = 1.0 + sign * b, 2.0 + sign * b
    rhs = (2.0 * math.sqrt(l * (l + 1) * one) / (b * two) - (l + 0.5) / b - 0.5)
    omega_eff = coupling_scale * (2 * family.n + 1 + (2 * l + 1) / b)
    n_eff = 0.5 * (omega_eff - 1.0 - (2 * l + 1) / b)
    return BoundCondition(rhs=rhs, satisfied=bool(n_eff > rhs), applicable=l > 0)


@dataclass(frozen=True)
class WellScan:
    found_negative_minimum: bool
    r_min: float | None
    v_min: float | None
    barrier_reaches_positive: bool | None


def _limit_label(exponent: float, coeff: float, at_infinity: bool) -> str:
    grows = exponent > 0 if at_infinity else exponent < 0
    if grows:
        return "+inf" if coeff > 0 else "-inf"
    return "0+" if coeff > 0 else "0-"


def _effective_limits(terms: PotentialTerms, l: int) -> tuple[str, str]:
    entries = [(terms.repulsive_exponent, 2.0 * terms.repulsive_coeff),
               (terms.attractive_exponent, -2.0 * terms.attractive_coeff)]
    if l > 0:
        entries.append((-2.0, float(l * (l + 1))))
    at0 = min(entries, key=lambda e: e[0])
    atinf = max(entries, key=lambda e: e[0])
    return (_limit_label(*at0, at_infinity=False),
            _limit_label(*atinf, at_infinity=True))


def _golden_min(f, a, b, tol):
    phi_r = 2.0 / (1.0 + math.sqrt(5.0))
    x1 = b - phi_r * (b - a)
    x2 = a + phi_r * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f2 > f1:
            b, x2, f2 = x2, x1, f1
            x1 = b - phi_r * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + phi_r * (b - a)
            f2 = f(x2)
    x = 0.5 * (a + b)
    return x, f(x)


def _scan_well(terms: PotentialTerms, l: int) -> WellScan:
    """Log-grid scan of the effective potential around the turning scale for
    a negative local minimum with a positive barrier beyond it."""

    def veff(r):
        return l * (l + 1) / np.asarray(r, float)**2 + 2.0 * terms.value(r)

    r0 = terms.turning_scale
    grid = np.geomspace(r0 * 1e-5, r0 * 1e5, 2000)
    v = veff(grid)
    interior = (v[1:-1] < v[:-2]) & (v[1:-1] < v[2:]) & (v[1:-1] < 0)
    idx = np.nonzero(interior)[0] + 1
    if idx.size == 0:
        return WellScan(False, None, None, None)
    i = idx[np.argmin(v[idx])]
    r_min, v_min = _golden_min(lambda r: float(veff(r)),
                               grid[i - 1], grid[i + 1], 1e-10 * grid[i])
    barrier = bool(np.any(v[i + 1:] > 0))
    return WellScan(True, float(r_min), float(v_min), barrier)


@dataclass(frozen=True)
class ClassificationReport:
    limit_origin: str
    limit_infinity: str
    bounded: bool
    normalizable: bool
    condition: BoundCondition
    well: WellScan | None
    coupling_scale: float = 1.0


def classify(family: PowerLawFamily, coupling_scale: float = 1.0) -> ClassificationReport:
    """Shape classification of the effective potential.

    Decision procedure: confining tails (|mu| < 1/2) and the mu > 1/2, l = 0
    shape (rise from -inf through zero to a positive barrier) are bounded by
    construction; mu < -1/2 with l = 0 never is (tail creeps up to zero from
    below).  Every other case is scanned numerically for a negative local
    minimum separated from the asymptotic region by a positive barrier.
    Normalizability follows the closed rule: divergent only for mu < -1/2
    with l = 0.  ``coupling_scale`` scales the attractive coefficient so
    sub-quantized shapes (the condition-violated rows of the summary table)
    can be constructed and inspected with the same machinery.
    """
    mu, l = family.mu_f, family.l
    terms = map_parameters(family).terms.scaled(coupling_scale)
    lim0, liminf = _effective_limits(terms, l)
    condition = bound_condition(family, coupling_scale)
    well = None
    if -0.5 < mu < 0.5:
        bounded = True
    elif mu > 0.5 and l == 0:
        bounded = True
    elif mu < -0.5 and l == 0:
        bounded = False
    else:
        well = _scan_well(terms, l)
        bounded = bool(well.found_negative_minimum and well.barrier_reaches_positive)
    normalizable = not (mu < -0.5 and l == 0)
    return ClassificationReport(limit_origin=lim0, limit_infinity=liminf,
                                bounded=bounded, normalizable=normalizable,
                                condition=condition, well=well,
                                coupling_scale=coupling_scale)


# ---------------------------------------------------------------------------
# Degeneracy
# ---------------------------------------------------------------------------

def degenerate_pairs(mu, omega, l_max: int) -> set[tuple[int, int]]:
    """All (l <= l_max, n >= 0) with 2n + 1 + (2l+1)|mu+1/2| equal to omega.

    Exact rational arithmetic whenever mu (and omega) are rational; floats
    fall back to a 1e-12 tolerance on the match.
    """
    if l_max < 0:
        raise ValueError("l_max must be >= 0")
    _validate_mu(mu)
    pairs: set[tuple[int, int]] = set()
    exact = isinstance(mu, Rational) and isinstance(omega, Rational)
    if exact:
        q = abs(Fraction(mu) + Fraction(1, 2))
        for l in range(l_max + 1):
            n2 = Fraction(omega) - 1 - (2 * l + 1) * q
            if n2 >= 0 and (n2 / 2).denominator == 1:
                pairs.add((l, int(n2 / 2)))
        return pairs
    q = abs(float(mu) + 0.5)
    for l in range(l_max + 1):
        n_real = 0.5 * (float(omega) - 1.0 - (2 * l + 1) * q)
        n_int = round(n_real)
        if n_int >= 0 and abs(n_real - n_int) <= 1e-12 * max(1.0, abs(float(omega))):
            pairs.add((l, int(n_int)))
    return pairs


def interior_node_count(family: PowerLawFamily) -> int:
    """Zeros of the wavefunction on (0, inf), counted by sign changes on a
    fine grid covering the Laguerre-argument range."""
    sol = _pinned_solution(family)
    grid = _default_grid(family, num=4000, w_lo=1e-4,
                         w_hi=4.0 * (family.n + 1) + 2.0 * sol.order + 20.0)
    return count_sign_changes(sol.value(grid))
