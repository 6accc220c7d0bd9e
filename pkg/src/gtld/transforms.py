"""The eight built-in inner transforms G(x) and their closed-form CDFs.

Each sub-family of the distribution is determined by a strictly increasing
function G with G(support_low+) = 0 and G(x) -> inf.  ``make_transform``
builds the concrete transform from its lowercase string id; library users
can also construct :class:`InnerTransform` directly to plug in their own G.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

# id -> (required shape parameter names, kernel family id)
SUBFAMILY_SHAPES: dict[str, tuple[str, ...]] = {
    "gte": (),
    "gtr": (),
    "gtw": ("alpha",),
    "gtmw": ("alpha", "gamma"),
    "gtwe": ("alpha",),
    "gtb12": ("alpha",),
    "gtl": ("alpha",),
    "gtp1": ("alpha",),
}

SUBFAMILY_IDS = tuple(SUBFAMILY_SHAPES)


@dataclass(frozen=True)
class InnerTransform:
    """A sub-family's G with derivative, inverse, and support.

    Invariants: G strictly increasing on (support_low, inf),
    G(support_low+) = 0, G -> inf; ``inverse`` is the functional inverse of
    ``eval``.  ``edge_order`` is the power k with G(x) ~ c*(x-support_low)^k
    near the lower endpoint (used for integrability screening).
    """

    name: str
    eval: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray]
    inverse: Callable[[np.ndarray], np.ndarray]
    support_low: float = 0.0
    shape_params: Mapping[str, float] = field(default_factory=dict)
    edge_order: float = 1.0
    family_id: int = -1  # kernel dispatch id; -1 for user-defined transforms


def _shape_args(sub_id: str, shape: Mapping[str, float]) -> tuple[float, float]:
    """Kernel shape slots (s1, s2) for a built-in sub-family."""
    names = SUBFAMILY_SHAPES[sub_id]
    vals = [float(shape[n]) for n in names]
    while len(vals) < 2:
        vals.append(0.0)
    return vals[0], vals[1]


def _gtmw_inverse(alpha: float, gamma: float) -> Callable:
    """Numeric inverse of G(x) = x^alpha * exp(gamma*x).

    Doubling bracket + bisection, then Newton polish; G is strictly
    increasing so the bracket always exists.
    """

    def g(x):
        return x**alpha * math.exp(gamma * x)

    def inv_scalar(y: float) -> float:
        if y <= 0.0:
            return 0.0
        hi = 1.0
        while g(hi) < y:
            hi *= 2.0
        lo = 0.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if g(mid) < y:
                lo = mid
            else:
                hi = mid
        x = 0.5 * (lo + hi)
        for _ in range(8):
            gx = g(x)
            gp = x ** (alpha - 1.0) * math.exp(gamma * x) * (alpha + gamma * x)
            step = (gx - y) / gp
            x_new = x - step
            if x_new <= lo or x_new >= hi:
                break
            x = x_new
            if abs(step) <= 1e-15 * max(x, 1.0):
                break
        return x

    return np.vectorize(inv_scalar, otypes=[np.float64])


def make_transform(sub_id: str, **shape: float) -> InnerTransform:
    """Build one of the eight built-in transforms from its string id."""
    if sub_id not in SUBFAMILY_SHAPES:
        raise ValueError(
            f"unknown sub-family {sub_id!r}; expected one of {SUBFAMILY_IDS}"
        )
    required = SUBFAMILY_SHAPES[sub_id]
    missing = [n for n in required if n not in shape]
    if missing:
        raise ValueError(f"{sub_id} requires shape parameter(s) {missing}")
    extra = [n for n in shape if n not in required]
    if extra:
        raise ValueError(f"{sub_id} does not take shape parameter(s) {extra}")
    for name, val in shape.items():
        if not val > 0:
            raise ValueError(f"shape parameter {name} must be positive, got {val}")

    shape = {n: float(shape[n]) for n in required}
    from . import _kernels

    common = dict(
        name=sub_id,
        shape_params=shape,
        family_id=_kernels.FAMILY_IDS[sub_id],
    )

    if sub_id == "gte":
        return InnerTransform(
            eval=lambda x: np.asarray(x, dtype=float) + 0.0,
            deriv=lambda x: np.ones_like(np.asarray(x, dtype=float)),
            inverse=lambda y: np.asarray(y, dtype=float) + 0.0,
            edge_order=1.0,
            **common,
        )
    if sub_id == "gtr":
        return InnerTransform(
            eval=lambda x: 0.5 * np.square(np.asarray(x, dtype=float)),
            deriv=lambda x: np.asarray(x, dtype=float) + 0.0,
            inverse=lambda y: np.sqrt(2.0 * np.asarray(y, dtype=float)),
            edge_order=2.0,
            **common,
        )

    a = shape["alpha"]
    if sub_id == "gtw":
        return InnerTransform(
            eval=lambda x: np.asarray(x, dtype=float) ** a,
            deriv=lambda x: a * np.asarray(x, dtype=float) ** (a - 1.0),
            inverse=lambda y: np.asarray(y, dtype=float) ** (1.0 / a),
            edge_order=a,
            **common,
        )
    if sub_id == "gtmw":
        g = shape["gamma"]
        return InnerTransform(
            eval=lambda x: np.asarray(x, dtype=float) ** a
            * np.exp(g * np.asarray(x, dtype=float)),
            deriv=lambda x: np.asarray(x, dtype=float) ** (a - 1.0)
            * np.exp(g * np.asarray(x, dtype=float))
            * (a + g * np.asarray(x, dtype=float)),
            inverse=_gtmw_inverse(a, g),
            edge_order=a,
            **common,
        )
    if sub_id == "gtwe":
        return InnerTransform(
            eval=lambda x: np.expm1(np.asarray(x, dtype=float) ** a),
            deriv=lambda x: a
            * np.asarray(x, dtype=float) ** (a - 1.0)
            * np.exp(np.asarray(x, dtype=float) ** a),
            inverse=lambda y: np.log1p(np.asarray(y, dtype=float)) ** (1.0 / a),
            edge_order=a,
            **common,
        )
    if sub_id == "gtb12":
        return InnerTransform(
            eval=lambda x: np.log1p(np.asarray(x, dtype=float) ** a),
            deriv=lambda x: a
            * np.asarray(x, dtype=float) ** (a - 1.0)
            / (1.0 + np.asarray(x, dtype=float) ** a),
            inverse=lambda y: np.expm1(np.asarray(y, dtype=float)) ** (1.0 / a),
            edge_order=a,
            **common,
        )
    if sub_id == "gtl":
        # here "alpha" is the Lomax inner scale, not a power
        return InnerTransform(
            eval=lambda x: np.log1p(np.asarray(x, dtype=float) / a),
            deriv=lambda x: 1.0 / (a + np.asarray(x, dtype=float)),
            inverse=lambda y: a * np.expm1(np.asarray(y, dtype=float)),
            edge_order=1.0,
            **common,
        )
    # gtp1: "alpha" is the Pareto lower bound; support is (alpha, inf)
    return InnerTransform(
        eval=lambda x: np.log(np.asarray(x, dtype=float) / a),
        deriv=lambda x: 1.0 / np.asarray(x, dtype=float),
        inverse=lambda y: a * np.exp(np.asarray(y, dtype=float)),
        support_low=a,
        edge_order=1.0,
        **common,
    )


def closed_form_cdf(sub_id: str, params, x):
    """The sub-family's printed CDF, written directly (no G pipeline).

    Differential-test counterpart of the generic cdf; both must agree to
    machine-level tolerance.
    """
    if sub_id not in SUBFAMILY_SHAPES:
        raise ValueError(f"unknown sub-family {sub_id!r}")
    x = np.asarray(x, dtype=float)
    b, t, lam = params.beta, params.theta, params.lam
    sh = params.shape
    if sub_id == "gte":
        u = -np.expm1(-b * x)
    elif sub_id == "gtr":
        u = -np.expm1(-b * x**2 / 2.0)
    elif sub_id == "gtw":
        u = -np.expm1(-b * x ** sh["alpha"])
    elif sub_id == "gtmw":
        u = -np.expm1(-b * x ** sh["alpha"] * np.exp(sh["gamma"] * x))
    elif sub_id == "gtwe":
        u = -np.expm1(-b * np.expm1(x ** sh["alpha"]))
    elif sub_id == "gtb12":
        u = 1.0 - (1.0 + x ** sh["alpha"]) ** (-b)
    elif sub_id == "gtl":
        u = 1.0 - (1.0 + x / sh["alpha"]) ** (-b)
    else:  # gtp1
        u = 1.0 - (x / sh["alpha"]) ** (-b)
    ut = u**t
    return (1.0 + lam) * ut - lam * ut**2
