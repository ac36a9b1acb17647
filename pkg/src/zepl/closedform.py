"""Shared closed-form radial function and residual-report machinery.

Every exact solution in this package has the same shape,

    psi(r) = amplitude * r^power * exp(-(rate/2) * r^shape)
                       * L_degree^order(rate * r^shape),

with a possibly negative (or fractional) shape exponent.  Value and the first
two derivatives follow from the product/chain rule plus the Laguerre
derivative identity, so residual checks never touch finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .specfn import laguerre, laguerre_deriv, laguerre_deriv2

__all__ = ["ClosedFormSolution", "ResidualReport", "log_grid", "relative_residual", "count_sign_changes"]


def log_grid(lo: float, hi: float, num: int = 200) -> np.ndarray:
    if not (lo > 0 and hi > lo):
        raise ValueError("log grid needs 0 < lo < hi")
    return np.geomspace(lo, hi, num)


@dataclass(frozen=True)
class ClosedFormSolution:
    """Evaluable radial function with analytic first and second derivatives."""

    amplitude: float
    power: float
    rate: float
    shape: float
    degree: int = 0
    order: float = 0.0
    normalized: bool = False
    norm_constant: float | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    def _pieces(self, r):
        r = np.asarray(r, dtype=float)
        if np.any(r <= 0):
            raise ValueError("radial argument must be positive")
        w = self.rate * r ** self.shape
        f = r ** self.power
        g = np.exp(-0.5 * w)
        h = laguerre(self.degree, self.order, w)
        return r, w, f, g, h

    def value(self, r):
        r, _, f, g, h = self._pieces(r)
        out = self.amplitude * f * g * h
        return out if out.ndim else float(out)

    __call__ = value

    def deriv(self, r):
        out = self._derivs(r)[1]
        return out if np.ndim(out) else float(out)

    def deriv2(self, r):
        out = self._derivs(r)[2]
        return out if np.ndim(out) else float(out)

    def _derivs(self, r):
        """(value, d/dr, d2/dr2) in one pass."""
        r, w, f, g, h = self._pieces(r)
        p, m = self.power, self.shape
        dw = self.rate * m * r ** (m - 1.0)
        d2w = self.rate * m * (m - 1.0) * r ** (m - 2.0)
        df = p * f / r
        d2f = p * (p - 1.0) * f / r**2
        dg = -0.5 * dw * g
        d2g = (0.25 * dw**2 - 0.5 * d2w) * g
        hp = laguerre_deriv(self.degree, self.order, w)
        hpp = laguerre_deriv2(self.degree, self.order, w)
        dh = hp * dw
        d2h = hpp * dw**2 + hp * d2w
        val = f * g * h
        d1 = df * g * h + f * dg * h + f * g * dh
        d2 = (
            d2f * g * h
            + f * d2g * h
            + f * g * d2h
            + 2.0 * (df * dg * h + df * g * dh + f * dg * dh)
        )
        a = self.amplitude
        return a * val, a * d1, a * d2

    def scaled(self, factor: float, **changes) -> "ClosedFormSolution":
        return replace(self, amplitude=self.amplitude * factor, **changes)


@dataclass(frozen=True)
class ResidualReport:
    """Pointwise relative residuals of an identity on a grid."""

    grid: np.ndarray
    residuals: np.ndarray
    max_residual: float
    masked_points: int

    def __bool__(self):  # truthiness == "there is data"
        return self.residuals.size > 0


def relative_residual(terms, mask=None) -> ResidualReport:
    """Residual of sum(terms) == 0, normalized by sum of |term_i| per point.

    ``terms`` is a sequence of equal-length arrays; ``mask`` marks points to
    keep (True).  Points whose normalization is vanishingly small relative to
    the grid maximum are dropped: the identity is 0 == 0 there.
    """
    terms = [np.asarray(t, dtype=float) for t in terms]
    total = np.zeros_like(terms[0])
    scale = np.zeros_like(terms[0])
    for t in terms:
        total = total + t
        scale = scale + np.abs(t)
    keep = scale > 1e-12 * (scale.max() if scale.size else 0.0)
    if mask is not None:
        keep &= np.asarray(mask, dtype=bool)
    rel = np.abs(total[keep]) / (scale[keep] + 1e-300)
    grid = np.arange(total.size)[keep]
    max_rel = float(rel.max()) if rel.size else 0.0
    return ResidualReport(grid=grid, residuals=rel, max_residual=max_rel,
                          masked_points=int(total.size - keep.sum()))


def count_sign_changes(values) -> int:
    """Strict sign changes along a sampled curve, ignoring near-zero samples."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        return 0
    good = np.abs(v) > 1e-12 * np.abs(v).max()
    s = np.sign(v[good])
    if s.size < 2:
        return 0
    return int(np.sum(s[1:] * s[:-1] < 0))
