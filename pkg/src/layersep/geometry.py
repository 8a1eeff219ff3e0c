"""Geometry of the spherical shell ``{x in R^d : r <= |x| <= 1}`` and uniform sampling on it.

The shell with inner radius ``r = 0`` is the whole unit ball.  Sampling
factorizes into a uniform direction (normalized Gaussian vector) and a radius
drawn by inverting the radial CDF ``F(rho) = (rho^d - r^d) / (1 - r^d)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "LayerSpec",
    "PointCloud",
    "radius_inverse_cdf",
    "sample_layer",
    "unit_ball_volume",
    "log_unit_ball_volume",
]

# Slack for re-checking norms of stored float64 coordinates.  Empirically the
# normalize-then-rescale construction drifts at most 3 ulp from the assigned
# radius, independent of d (numpy reduces pairwise).
_NORM_SLACK_ULPS = 4.0


@dataclass(frozen=True)
class LayerSpec:
    """Spherical shell in ``R^d`` between radii ``r`` and 1.

    Attributes:
        d: ambient dimension, integer >= 1.
        r: inner radius, 0 <= r < 1.  r = 0 degenerates to the unit ball.
    """

    d: int
    r: float

    def __post_init__(self):
        if isinstance(self.d, bool) or not float(self.d).is_integer():
            raise DomainError(f"dimension must be an integer, got {self.d!r}")
        if int(self.d) < 1:
            raise DomainError(f"dimension must be >= 1, got {self.d}")
        r = float(self.r)
        if not (0.0 <= r < 1.0) or math.isnan(r):
            raise DomainError(f"inner radius must satisfy 0 <= r < 1, got {self.r!r}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "r", r)


@dataclass(frozen=True)
class PointCloud:
    """Immutable batch of points that all live in one shell.

    Attributes:
        layer: the shell the points were drawn from / must lie in.
        points: (n, d) float64 array, one point per row; made read-only.
        seed: 64-bit seed that reproduces the cloud via :func:`sample_layer`
            (callers constructing clouds from external data may pass any
            marker value; reproducibility is then their business).
    """

    layer: LayerSpec
    points: np.ndarray
    seed: int

    def __post_init__(self):
        pts = np.ascontiguousarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise DomainError(f"points must be a 2-d array, got shape {pts.shape}")
        if pts.shape[1] != self.layer.d:
            raise DomainError(
                f"points have dimension {pts.shape[1]}, layer has d={self.layer.d}"
            )
        if not np.all(np.isfinite(pts)):
            raise DomainError("points must be finite")
        if pts.shape[0]:
            norms = np.linalg.norm(pts, axis=1)
            hi = 1.0 + _NORM_SLACK_ULPS * np.spacing(1.0)
            lo = self.layer.r - _NORM_SLACK_ULPS * np.spacing(max(self.layer.r, 1.0))
            if norms.max() > hi or norms.min() < lo:
                raise DomainError(
                    "point norms leave the shell: "
                    f"range [{norms.min()}, {norms.max()}] vs [{self.layer.r}, 1]"
                )
        pts = pts.copy()
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]


def radius_inverse_cdf(u, layer: LayerSpec):
    """Invert the radial CDF of the uniform shell distribution.

    ``rho = (r^d + u * (1 - r^d))^(1/d)``, mapping Uniform[0,1] variates to
    radii whose d-volume between shells is uniform.  Scalar in, scalar out;
    array in, array out.

    Args:
        u: uniform variate(s) in [0, 1].
        layer: target shell.

    Returns:
        Radii in [r, 1]; exactly r at u=0 and exactly 1 at u=1.
    """
    arr = np.asarray(u, dtype=np.float64)
    if arr.size and not (np.all(arr >= 0.0) and np.all(arr <= 1.0)):
        raise DomainError("u must lie in [0, 1]")
    r, d = layer.r, layer.d
    rd = math.pow(r, d) if r > 0.0 else 0.0
    t = rd + arr * (1.0 - rd)
    rho = np.power(t, 1.0 / d)
    rho = np.clip(rho, r, 1.0)
    # pin the endpoints so u=0 / u=1 land exactly on the shell boundary
    rho = np.where(arr == 0.0, r, rho)
    rho = np.where(arr == 1.0, 1.0, rho)
    if np.ndim(u) == 0:
        return float(rho)
    return rho


def sample_layer(layer: LayerSpec, n: int, seed: int) -> PointCloud:
    """Draw ``n`` points i.i.d. uniform on the shell.

    Directions come from normalized standard Gaussians (zero vectors are
    redrawn; at d=1 the direction degenerates to a uniform sign), radii from
    :func:`radius_inverse_cdf`.  Identical ``(layer, n, seed)`` triples yield
    bit-identical clouds.
    """
    if isinstance(n, bool) or not float(n).is_integer() or int(n) < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    n = int(n)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, layer.d))
    norms = np.linalg.norm(g, axis=1)
    while True:
        bad = np.flatnonzero(norms == 0.0)
        if bad.size == 0:
            break
        g[bad] = rng.standard_normal((bad.size, layer.d))
        norms[bad] = np.linalg.norm(g[bad], axis=1)
    rho = radius_inverse_cdf(rng.random(n), layer)
    pts = g * (np.asarray(rho) / norms)[:, None]
    return PointCloud(layer=layer, points=pts, seed=int(seed))


def log_unit_ball_volume(d: int) -> float:
    """Natural log of the d-dimensional unit ball volume pi^(d/2)/Gamma(d/2+1)."""
    if isinstance(d, bool) or not float(d).is_integer() or int(d) < 1:
        raise DomainError(f"dimension must be an integer >= 1, got {d!r}")
    d = int(d)
    return 0.5 * d * math.log(math.pi) - math.lgamma(0.5 * d + 1.0)


def unit_ball_volume(d: int) -> float:
    """Volume of the d-dimensional unit ball (2 at d=1, pi at d=2, ...).

    Evaluated in log space so large d degrades to graceful underflow instead
    of Gamma-function overflow.
    """
    return math.exp(log_unit_ball_volume(d))
