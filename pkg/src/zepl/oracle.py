"""Independent numerical verification tools.

Nothing in this module evaluates a closed-form solution from the rest of the
package: quantized couplings and energies are rediscovered from the bare
differential equations by double-sided shooting, and norms/orthogonality are
checked by adaptive quadrature.  The only shared knowledge is the problem
statement itself (potential coefficients and exponents).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .closedform import count_sign_changes

__all__ = [
    "QuadResult",
    "quad_seminfinite",
    "RadialODE",
    "Trajectory",
    "integrate_radial",
    "ShootingResult",
    "shoot_coupling",
    "shoot_energy_bender",
    "build_powerlaw_ode",
    "build_halfline_ode",
    "coupling_mismatch",
]

# 15-point Kronrod extension of 7-point Gauss, abscissae/weights on [-1, 1].
_KRONROD_NODES = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759,
    0.991455371120813,
])
_KRONROD_WEIGHTS = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529,
])
_GAUSS_WEIGHTS = np.array([
    0.0, 0.129484966168870, 0.0, 0.279705391489277, 0.0,
    0.381830050505119, 0.0, 0.417959183673469, 0.0,
    0.381830050505119, 0.0, 0.279705391489277, 0.0,
    0.129484966168870, 0.0,
])

_T_CAP = 704.0  # exp() stays finite
_CHUNK = 7.0


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    converged: bool
    panels: int
    note: str = ""

    def __float__(self):
        return self.value


def _gk_panel(g, a, b):
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * _KRONROD_NODES
    v = g(x)
    ik = half * float(np.dot(_KRONROD_WEIGHTS, v))
    ig = half * float(np.dot(_GAUSS_WEIGHTS, v))
    e = 200.0 * abs(ik - ig)
    err = e**1.5 if e < 1.0 else e
    return ik, max(err, 1e-16 * abs(ik))


def quad_seminfinite(f, tol: float = 1e-10, *, atol: float = 0.0,
                     max_panels: int = 2000) -> QuadResult:
    """Integrate f over (0, inf) with the substitution r = exp(t).

    The window in t grows outward until boundary chunks stop contributing,
    then panels are bisected adaptively (Gauss-Kronrod 7/15) until the summed
    error estimate drops below ``tol`` relative (or ``atol`` absolute).
    Integrands whose tails never become negligible (e.g. 1/r) come back with
    ``converged=False`` and the partial value.  ``f`` must accept ndarrays.
    """
    if not (1e-13 <= tol <= 1e-6):
        raise ValueError(f"tol must lie in [1e-13, 1e-6], got {tol}")

    def g(t):
        r = np.exp(t)
        with np.errstate(all="ignore"):
            v = np.asarray(f(r), dtype=float) * r
        return np.where(np.isfinite(v), v, 0.0)

    panels: list[tuple] = []  # (-err, a, b, value, err)

    def push(a, b):
        val, err = _gk_panel(g, a, b)
        heapq.heappush(panels, (-err, a, b, val, err))
        return val, err

    total = 0.0
    for k in range(4):
        val, _ = push(-_CHUNK + k * 3.5, -_CHUNK + (k + 1) * 3.5)
        total += val

    truncated = False
    for sign in (-1.0, 1.0):
        edge = _CHUNK * sign
        while True:
            nxt = edge + sign * _CHUNK
            if abs(nxt) > _T_CAP:
                truncated = True
                break
            a, b = (nxt, edge) if sign < 0 else (edge, nxt)
            val, err = push(a, b)
            total += val
            edge = nxt
            significant = abs(val) + err > max(tol * abs(total) * 1e-3, 1e-290)
            if abs(edge) >= 12 * _CHUNK and not significant:
                break

    while True:
        total = sum(p[3] for p in panels)
        total_err = sum(p[4] for p in panels)
        if total_err <= max(tol * abs(total), atol):
            break
        if len(panels) >= max_panels:
            return QuadResult(total, total_err, False, len(panels),
                              "panel budget exhausted")
        _, a, b, _, _ = heapq.heappop(panels)
        mid = 0.5 * (a + b)
        push(a, mid)
        push(mid, b)

    if truncated:
        return QuadResult(total, total_err, False, len(panels),
                          "window truncated before tail became negligible")
    return QuadResult(total, total_err, True, len(panels))


# ---------------------------------------------------------------------------
# Radial initial-value integration
# ---------------------------------------------------------------------------

def _wkb_from_q(q, r, coupling, sign):
    """First-order WKB start u = q^(-1/4) exp(sign * int sqrt(q));
    returns (1, u'/u) since overall scale is irrelevant."""
    qv = q(r, coupling)
    if qv <= 0:
        raise ValueError(f"WKB start needs q > 0, got {qv:g} at r = {r:g}")
    h = 1e-5 * r
    dq = (q(r + h, coupling) - q(r - h, coupling)) / (2.0 * h)
    return 1.0, sign * math.sqrt(qv) - dq / (4.0 * qv)


@dataclass
class RadialODE:
    """u'' = q(r, c) u on a positive domain with a matching radius.

    ``q`` bundles the centrifugal term and twice the potential; ``c`` is the
    shooting parameter (attractive coupling or spectral value).  Domain ends
    and the matching radius may depend on the parameter.  Start values default
    to the regular power u ~ r^origin_exponent at the inner end and to a
    first-order WKB decaying form at the outer end.
    """

    q: Callable[[float, float], float]
    r_inner: Callable[[float], float] | float
    r_outer: Callable[[float], float] | float
    origin_exponent: float = 1.0
    match_radius: Callable[[float], float] | float | None = None
    inner_start: Callable[[float, float], tuple[float, float]] | None = None
    outer_start: Callable[[float, float], tuple[float, float]] | None = None

    def _resolve(self, bound, coupling):
        return float(bound(coupling)) if callable(bound) else float(bound)

    def inner_at(self, coupling):
        return self._resolve(self.r_inner, coupling)

    def outer_at(self, coupling):
        return self._resolve(self.r_outer, coupling)

    def match_at(self, coupling: float) -> float:
        lo, hi = self.inner_at(coupling), self.outer_at(coupling)
        if self.match_radius is None:
            raw = math.sqrt(lo * hi)
        else:
            raw = self._resolve(self.match_radius, coupling)
        return min(max(raw, 3.0 * lo), hi / 3.0)


@dataclass(frozen=True)
class Trajectory:
    r: np.ndarray
    u: np.ndarray
    du: np.ndarray
    log_deriv: float
    end_u: float
    end_du: float


def integrate_radial(ode: RadialODE, coupling: float, direction: str = "outward",
                     rtol: float = 1e-10, segments: int = 8,
                     points_per_segment: int = 50) -> Trajectory:
    """Adaptive Runge-Kutta (Dormand-Prince embedded 5(4) pair) sweep toward
    the matching radius.  The state is renormalized between log-spaced
    segments so stretched-exponential growth cannot overflow; only the
    log-derivative and the node pattern are meaningful downstream."""
    if direction not in ("outward", "inward"):
        raise ValueError("direction must be 'outward' or 'inward'")
    r_match = ode.match_at(coupling)
    if direction == "outward":
        r_from, r_to = ode.inner_at(coupling), r_match
        start = ode.inner_start or (
            lambda r, c: (r**ode.origin_exponent,
                          ode.origin_exponent * r ** (ode.origin_exponent - 1.0)))
    else:
        r_from, r_to = ode.outer_at(coupling), r_match
        start = ode.outer_start or (lambda r, c: _wkb_from_q(ode.q, r, c, -1.0))
    if min(r_from, r_to) <= 0:
        raise ValueError("domain must be positive")

    u0, du0 = start(r_from, coupling)
    y = np.array([u0, du0], dtype=float)
    bounds = np.geomspace(r_from, r_to, segments + 1)

    def rhs(r, state):
        return (state[1], ode.q(r, coupling) * state[0])

    rs, us, dus = [], [], []
    for a, b in zip(bounds[:-1], bounds[1:]):
        scale = max(abs(y[0]), abs(y[1]) * a, 1e-290)
        sol = solve_ivp(rhs, (a, b), y, method="RK45", rtol=rtol,
                        atol=[1e-14 * scale, 1e-14 * scale / a],
                        t_eval=np.geomspace(a, b, points_per_segment))
        if not sol.success:
            raise RuntimeError(f"radial integration failed on [{a:g}, {b:g}]: {sol.message}")
        skip = 1 if rs else 0  # segment start duplicates the previous end point
        rs.append(sol.t[skip:])
        us.append(sol.y[0][skip:])
        dus.append(sol.y[1][skip:])
        y = sol.y[:, -1].copy()
        norm = max(abs(y[0]), abs(y[1]) * b)
        if norm > 1e12:  # positive factor keeps the sign pattern intact
            y /= norm
            us[-1] = us[-1] / norm
            dus[-1] = dus[-1] / norm

    r_arr = np.concatenate(rs)
    u_arr = np.concatenate(us)
    du_arr = np.concatenate(dus)
    end_u, end_du = float(y[0]), float(y[1])
    log_deriv = end_du / end_u if end_u != 0.0 else math.inf
    return Trajectory(r_arr, u_arr, du_arr, log_deriv, end_u, end_du)


# ---------------------------------------------------------------------------
# Shooting in the attractive coupling / in the spectral parameter
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShootingResult:
    values: list[float]
    node_counts: list[int]
    mismatches: list[float]
    diagnostics: dict = field(default_factory=dict)


def _golden_min(f, a, b, tol):
    phi = 2.0 / (1.0 + math.sqrt(5.0))
    x1 = b - phi * (b - a)
    x2 = a + phi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f2 > f1:
            b, x2, f2 = x2, x1, f1
            x1 = b - phi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + phi * (b - a)
            f2 = f(x2)
    return 0.5 * (a + b)


def _power_series_start(prefactor_exponent: float, step: float, c_rep: float,
                        coupling: float, l: int, r: float,
                        max_terms: int = 600):
    """Convergent series u = r^p sum_k a_k r^(k s) for the two-term family.

    a_k = (2 c a_{k-2} - 2 D a_{k-1}) / (k|s| (2l+1+k|s|)) serves both the
    regular origin branch (p = l+1, s = beta > 0) and the decaying infinity
    branch (p = -l, s = -beta); denominators never vanish and the series is
    entire in r^s, so truncation is the only error.
    """
    p, s = prefactor_exponent, step
    x = r**s
    a_prev2, a_prev1 = 0.0, 1.0
    u_sum, du_sum = 1.0, p
    term_pow = 1.0
    tiny_run = 0
    for k in range(1, max_terms):
        denom = k * abs(s) * (2 * l + 1 + k * abs(s))
        a_k = (2.0 * c_rep * a_prev2 - 2.0 * coupling * a_prev1) / denom
        term_pow *= x
        contrib = a_k * term_pow
        u_sum += contrib
        du_sum += (p + k * s) * contrib
        a_prev2, a_prev1 = a_prev1, a_k
        if abs(contrib) < 1e-17 * (abs(u_sum) + 1e-300):
            tiny_run += 1
            if tiny_run >= 3:
                break
        else:
            tiny_run = 0
    else:
        raise RuntimeError("series start did not converge; move the boundary inward")
    base = r**p
    return base * u_sum, base * du_sum / r


def _powerlaw_exponents(mu: float):
    if mu == 0.0 or mu == 0.5 or mu == -0.5:
        raise ValueError("mu in {0, +1/2, -1/2} is outside the family")
    p1 = -2.0 * (mu - 0.5) / (mu + 0.5)
    p2 = -2.0 * mu / (mu + 0.5)
    return p1, p2


def _match_radius_factory(c_rep, p1, p2, l):
    def match(coupling):
        r0 = (coupling / c_rep) ** (1.0 / (p1 - p2))
        grid = np.geomspace(r0 * 1e-4, r0 * 1e4, 600)
        veff = l * (l + 1) / grid**2 + 2.0 * (c_rep * grid**p1 - coupling * grid**p2)
        i = int(np.argmin(veff))
        if 0 < i < grid.size - 1 and veff[i] < 0:
            f = lambda r: l * (l + 1) / r**2 + 2.0 * (c_rep * r**p1 - coupling * r**p2)
            return _golden_min(f, grid[i - 1], grid[i + 1], 1e-10 * grid[i])
        crossings = np.nonzero(np.sign(veff[1:]) != np.sign(veff[:-1]))[0]
        if crossings.size >= 2:
            return math.sqrt(grid[crossings[0]] * grid[crossings[-1]])
        if crossings.size == 1:
            return float(grid[crossings[0]])
        return r0

    return match


def build_powerlaw_ode(mu: float, lam: float, l: int) -> RadialODE:
    """Zero-energy radial problem of the two-term power-law family with the
    attractive coefficient left free as the shooting parameter."""
    mu = float(mu)
    p1, p2 = _powerlaw_exponents(mu)
    c_rep = (lam / (2.0 * mu + 1.0)) ** 2 * lam**2 / 2.0
    above = mu > -0.5
    beta = 1.0 / abs(mu + 0.5)

    def q(r, coupling):
        return l * (l + 1) / r**2 + 2.0 * (c_rep * r**p1 - coupling * r**p2)

    if above:
        # regular series at the origin, stretched-exponential decay at infinity;
        # the outer radius guarantees both a ~36 decay budget and clear
        # dominance of the repulsive term (positive WKB argument)
        r_inner = (0.5 / lam**2) ** (1.0 / beta)
        r_outer = lambda D: max((72.0 / lam**2) ** (1.0 / beta),
                                (6.0 * D / c_rep) ** (1.0 / beta))
        inner = lambda r, c: _power_series_start(l + 1.0, beta, c_rep, c, l, r)
        outer = None  # WKB decaying default
        s_origin = l + 1.0
    else:
        # essential decay into the origin, algebraic r^(-l) branch at infinity
        r_inner = lambda D: min((lam**2 / 72.0) ** (1.0 / beta),
                                (c_rep / (6.0 * D)) ** (1.0 / beta))
        match_fn = _match_radius_factory(c_rep, p1, p2, l)

        def r_outer(D):
            series_ok = (10.0 * max(2.0 * D, math.sqrt(2.0 * c_rep), 1.0)
                         / beta**2) ** (1.0 / beta)
            return max(series_ok, 9.5 * match_fn(D))

        inner = lambda r, c: _wkb_from_q(q, r, c, +1.0)
        outer = lambda r, c: _power_series_start(-float(l), -beta, c_rep, c, l, r)
        s_origin = float(l + 1)

    return RadialODE(q=q, r_inner=r_inner, r_outer=r_outer,
                     origin_exponent=s_origin,
                     match_radius=_match_radius_factory(c_rep, p1, p2, l),
                     inner_start=inner, outer_start=outer)


def coupling_mismatch(ode: RadialODE, coupling: float, rtol: float = 1e-10):
    """Scaled Wronskian of the two one-sided solutions at the matching radius:
    zero exactly at a quantized parameter value, continuous in between."""
    out = integrate_radial(ode, coupling, "outward", rtol=rtol)
    inn = integrate_radial(ode, coupling, "inward", rtol=rtol)
    rm = ode.match_at(coupling)
    w = out.end_du * inn.end_u - inn.end_du * out.end_u
    scale = math.sqrt((out.end_u**2 + (rm * out.end_du) ** 2)
                      * (inn.end_u**2 + (rm * inn.end_du) ** 2))
    return w * rm / (scale + 1e-300), out, inn


def _count_nodes(ode: RadialODE, coupling: float, rtol: float = 1e-10) -> int:
    out = integrate_radial(ode, coupling, "outward", rtol=rtol)
    inn = integrate_radial(ode, coupling, "inward", rtol=rtol)
    ratio = out.end_u / inn.end_u if inn.end_u != 0 else 1.0
    combined = np.concatenate([out.u, (ratio * inn.u)[::-1][1:]])
    return count_sign_changes(combined)


def _scan_and_bisect(ode: RadialODE, step: float, count: int,
                     max_steps: int = 4000, scan_rtol: float = 1e-9,
                     xtol: float = 1e-10) -> ShootingResult:
    values, nodes, mism = [], [], []
    cache: dict[float, float] = {}

    def f(c):
        if c not in cache:
            cache[c] = coupling_mismatch(ode, c, rtol=scan_rtol)[0]
        return cache[c]

    prev_c = prev_f = None
    k = 1
    while len(values) < count and k <= max_steps:
        c = step * k
        fc = f(c)
        if prev_c is not None and prev_f != 0 and np.sign(fc) != np.sign(prev_f):
            root = brentq(f, prev_c, c, xtol=xtol, rtol=1e-14)
            resid = coupling_mismatch(ode, root, rtol=1e-10)[0]
            values.append(float(root))
            mism.append(abs(float(resid)))
            nodes.append(_count_nodes(ode, root))
        prev_c, prev_f = c, fc
        k += 1
    diagnostics = {"scan_steps": k - 1, "step": step,
                   "bracket_failures": max(0, count - len(values))}
    if len(values) < count:
        diagnostics["note"] = "bracket failure: fewer roots than requested"
    return ShootingResult(values, nodes, mism, diagnostics)


def shoot_coupling(mu, lam: float, l: int, count: int = 3) -> ShootingResult:
    """Recover the first ``count`` quantized attractive couplings of the
    two-term power-law problem at zero energy, holding the repulsive
    coefficient fixed at (lam/(2 mu + 1))^2 lam^2 / 2.  Node counts come from
    the matched double-sided solution."""
    if count > 6:
        raise ValueError("count must be <= 6")
    mu, lam = float(mu), float(lam)
    ode = build_powerlaw_ode(mu, lam, l)
    base = (lam / (2.0 * mu + 1.0)) ** 2  # coupling unit of the family
    return _scan_and_bisect(ode, step=base / 2.0, count=count)


def build_halfline_ode(n_power: int) -> RadialODE:
    """Half-line problem -psi'' + x^(2N+2) psi = E x^N psi with psi(0) = 0.

    The origin start is the convergent series psi = sum_j c_j x^(1+j) with
    c_j = (c_{j-2N-4} - E c_{j-N-2}) / (j (j+1)); the outer start is WKB
    decay beyond the turning point x = E^(1/(N+2)).
    """
    if n_power == -2:
        raise ValueError("N = -2 is excluded")
    if n_power < -1:
        raise ValueError("shooting supports N >= -1 (integer power series origin)")
    N = int(n_power)

    def q(x, energy):
        return x ** (2 * N + 2) - energy * x**N

    def inner(x, energy):
        coef = [1.0]
        value, deriv = x, 1.0
        xpow = x
        for j in range(1, 400):
            c_a = coef[j - 2 * N - 4] if j - 2 * N - 4 >= 0 else 0.0
            c_b = coef[j - N - 2] if j - N - 2 >= 0 else 0.0
            cj = (c_a - energy * c_b) / (j * (j + 1))
            coef.append(cj)
            xpow *= x
            value += cj * xpow
            deriv += (1 + j) * cj * xpow / x
            if j > 6 and abs(cj * xpow) < 1e-18 * (abs(value) + 1e-300):
                break
        return value, deriv

    def match(energy):
        return 0.55 * max(energy, 0.3) ** (1.0 / (N + 2))

    def outer(energy):
        return 1.2 * (36.0 * (N + 2) + 2.0 * energy) ** (1.0 / (N + 2))

    return RadialODE(q=q, r_inner=0.02, r_outer=outer, origin_exponent=1.0,
                     match_radius=match, inner_start=inner)


def shoot_energy_bender(n_power: int, count: int = 2) -> ShootingResult:
    """Recover the first ``count`` quantized E values of the half-line
    monomial-potential problem by scan plus bisection on the matching
    mismatch."""
    if count > 4:
        raise ValueError("count must be <= 4")
    if n_power not in (-1, 0, 1, 3):
        raise ValueError("supported N values: -1, 0, 1, 3")
    ode = build_halfline_ode(n_power)
    return _scan_and_bisect(ode, step=0.25, count=count)
