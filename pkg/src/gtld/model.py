"""The distribution family itself: CDF/PDF/SF/hazard, quantile, sampling.

The CDF is F(x) = (1+lam)*v - lam*v^2 with v = u^theta and
u = 1 - exp(-beta*G(x)); G is supplied by an :class:`InnerTransform`.
The survival function uses the exact factorization
1 - (1+lam)*v + lam*v^2 = (1-v)*(1-lam*v), with 1-v evaluated through
expm1/log1p so the deep right tail keeps relative accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

import numpy as np

from .transforms import SUBFAMILY_SHAPES, InnerTransform, make_transform

_V_CLIP = 1.0 - 1e-16  # clamp on v = A^(1/theta) before log1p at p -> 1
_LOG2 = 0.6931471805599453


def _log1mexp(a):
    """log(1 - e^{-a}) for a >= 0, on the cancellation-safe branch each side."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(
            a < _LOG2,
            np.log(-np.expm1(-np.minimum(a, _LOG2))),
            np.log1p(-np.exp(-np.maximum(a, _LOG2))),
        )


class SupportError(ValueError):
    """Argument outside the distribution's support."""


@dataclass(frozen=True)
class ParamVector:
    """Full parameter tuple: shape psi, scale beta, power theta, transmutation lam."""

    beta: float
    theta: float
    lam: float
    shape: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if not self.theta > 0:
            raise ValueError(f"theta must be positive, got {self.theta}")
        if not -1.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda must lie in [-1, 1], got {self.lam}")
        for name, val in self.shape.items():
            if not val > 0:
                raise ValueError(f"shape parameter {name} must be positive, got {val}")
        object.__setattr__(self, "shape", dict(self.shape))

    def as_array(self, family: str | None = None) -> np.ndarray:
        """Flat (shape..., beta, theta, lam) array in declaration order."""
        names = SUBFAMILY_SHAPES[family] if family else tuple(self.shape)
        return np.array(
            [self.shape[n] for n in names] + [self.beta, self.theta, self.lam]
        )


def param_names(family: str) -> tuple[str, ...]:
    """Flat parameter order used by arrays, Hessians, and reports."""
    return SUBFAMILY_SHAPES[family] + ("beta", "theta", "lambda")


class QuantileMeasures(NamedTuple):
    median: float
    moors_kurtosis: float
    bowley_skewness: float


@dataclass(frozen=True)
class GtldModel:
    """Immutable pairing of an inner transform and a parameter vector."""

    transform: InnerTransform
    params: ParamVector

    @property
    def support_low(self) -> float:
        return self.transform.support_low

    # -- distribution functions ------------------------------------------

    def _check_support(self, x, closure=True):
        xv = np.asarray(x, dtype=float)
        low = self.transform.support_low
        bad = xv < low if closure else xv <= low
        if np.any(bad):
            raise SupportError(
                f"argument below the support infimum {low} of {self.transform.name}"
            )
        return xv

    def _log_u(self, xv):
        a = self.params.beta * np.maximum(self.transform.eval(xv), 0.0)
        return _log1mexp(a)

    def cdf(self, x):
        xv = self._check_support(x)
        p = self.params
        with np.errstate(invalid="ignore"):
            v = np.exp(p.theta * self._log_u(xv))
        out = v * ((1.0 + p.lam) - p.lam * v)
        return out if np.ndim(x) else float(out)

    def survival(self, x):
        xv = self._check_support(x)
        p = self.params
        log_u = self._log_u(xv)
        with np.errstate(invalid="ignore"):
            v = np.exp(p.theta * log_u)
            one_minus_v = -np.expm1(p.theta * log_u)
        out = one_minus_v * (1.0 - p.lam * v)
        return out if np.ndim(x) else float(out)

    def logpdf(self, x):
        xv = self._check_support(x)
        p = self.params
        with np.errstate(divide="ignore", invalid="ignore"):
            G = np.maximum(self.transform.eval(xv), 0.0)
            gp = self.transform.deriv(xv)
            log_u = _log1mexp(p.beta * G)
            v = np.exp(p.theta * log_u)
            out = (
                np.log(p.theta * p.beta)
                + np.log(gp)
                - p.beta * G
                + (p.theta - 1.0) * log_u
                + np.log((1.0 + p.lam) - 2.0 * p.lam * v)
            )
        out = np.where(np.isnan(out), -np.inf, out)
        return out if np.ndim(x) else float(out)

    def pdf(self, x):
        xv = self._check_support(x)
        p = self.params
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = np.exp(self.logpdf(xv))
        # one-sided limit at the support edge where u = 0
        at_edge = np.asarray(self.transform.eval(xv)) <= 0.0
        if np.any(at_edge):
            gp = np.asarray(self.transform.deriv(xv), dtype=float)
            if p.theta == 1.0:
                edge = p.beta * gp * (1.0 + p.lam)
            elif p.theta > 1.0:
                edge = np.zeros_like(gp)
            else:
                edge = np.where(gp > 0, np.inf, 0.0)
            out = np.where(at_edge, edge, out)
        return out if np.ndim(x) else float(out)

    def hazard(self, x):
        s = self.survival(x)
        f = self.pdf(x)
        s_arr = np.asarray(s)
        if np.any(s_arr == 0.0):
            raise OverflowError("survival underflowed to 0; hazard undefined")
        return f / s

    # -- quantiles and sampling ------------------------------------------

    def _quantile_arr(self, p):
        par = self.params
        lam = par.lam
        with np.errstate(invalid="ignore"):
            disc = np.sqrt(np.maximum((1.0 + lam) ** 2 - 4.0 * p * lam, 0.0))
            A = 2.0 * p / ((1.0 + lam) + disc)
            y = np.minimum(A ** (1.0 / par.theta), _V_CLIP)
        G = -np.log1p(-y) / par.beta
        return self.transform.inverse(G)

    def quantile(self, p):
        pv = np.asarray(p, dtype=float)
        if np.any((pv <= 0.0) | (pv >= 1.0)):
            raise ValueError("quantile requires 0 < p < 1")
        out = self._quantile_arr(pv)
        return out if np.ndim(p) else float(out)

    def sample(self, n: int, seed: int) -> np.ndarray:
        """n i.i.d. draws by inverse-CDF over a seeded PCG64 generator."""
        if n < 1:
            raise ValueError("sample size must be >= 1")
        rng = np.random.default_rng(seed)
        u = rng.random(n)
        u = np.maximum(u, 1e-300)  # keep strictly inside (0, 1)
        return np.asarray(self._quantile_arr(u), dtype=float)

    def quantile_measures(self) -> QuantileMeasures:
        """Median, Moors coefficient of kurtosis, Bowley coefficient of skewness."""
        q = self.quantile(np.array([1, 2, 3, 4, 5, 6, 7]) / 8.0)
        median = q[3]
        mck = (q[6] - q[4] + q[2] - q[0]) / (q[5] - q[1])
        bcs = (q[5] + q[1] - 2.0 * q[3]) / (q[5] - q[1])
        return QuantileMeasures(float(median), float(mck), float(bcs))


def make_model(
    family: str,
    beta: float,
    theta: float,
    lam: float,
    **shape: float,
) -> GtldModel:
    """Convenience constructor from a sub-family id and named parameters."""
    transform = make_transform(family, **shape)
    params = ParamVector(beta=beta, theta=theta, lam=lam, shape=shape)
    return GtldModel(transform=transform, params=params)


def model_from_params(family: str, params: ParamVector) -> GtldModel:
    return GtldModel(make_transform(family, **params.shape), params)
