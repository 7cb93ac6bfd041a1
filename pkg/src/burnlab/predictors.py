"""Closed-form burning-number predictions at finite size.

Random-graph predictions pick the exponent i from the expected degree d
and report which clause fired; grid predictions pair the cube-root
leading term with the volume lower bound; path predictions cover the
random-ignition variants. ``neighborhood_profile`` measures how close
ball growth in a sample graph is to the idealized d^j rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .drunk import DrunkVariant
from .graph import Graph, bfs_distances
from .rng import Splitmix64
from .strategies import grid_lower_bound

__all__ = [
    "OUT_OF_REGIME",
    "GnpPrediction",
    "GridPrediction",
    "NeighborhoodProfile",
    "predict_gnp",
    "predict_grid",
    "predict_path_drunk",
    "neighborhood_profile",
    "K3_DEFAULT",
]

# upper constant for the square-root interval of the unburned-selection
# variant; pilot runs put the mean ratio near 1.55, this brackets it
K3_DEFAULT = 4.0


class _OutOfRegime:
    """Marker for inputs outside the theory's degree range."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "OUT_OF_REGIME"


OUT_OF_REGIME = _OutOfRegime()

_CASES = ("1", "2", "3", "dense-23", "dense-2")


@dataclass(frozen=True)
class GnpPrediction:
    n: int
    p: float
    d: float
    eps: float
    delta: float
    omega: float
    i: Optional[int]
    case: str
    predicted: frozenset
    margin: float

    def __post_init__(self):
        if self.case not in _CASES:
            raise ValueError(f"unknown case {self.case!r}")
        if self.case in ("1", "2", "3") and (self.i is None or self.i < 2):
            raise ValueError(f"exponent must be >= 2, got {self.i}")


@dataclass(frozen=True)
class GridPrediction:
    m: int
    n: int
    leading: float
    regime: str  # "wide" | "narrow"
    k0: float
    lower: int


def predict_gnp(n: int, p: float, eps: float = 0.1, delta: float = 1.0):
    """Predicted burning-number set for a binomial random graph.

    Returns OUT_OF_REGIME when the expected degree falls below ln n,
    where the theory gives no answer.
    """
    if not (0.0 < p < 1.0):
        raise ValueError(f"need 0 < p < 1, got {p}")
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    d = p * (n - 1)
    ln_n = math.log(n)
    lnln = math.log(ln_n)
    omega = math.sqrt(lnln)

    # near-complete graphs first: one round of spread from x1 nearly
    # finishes, so b lands on 2 or straddles {2, 3}
    hi = 1.0 - (ln_n + lnln - omega) / n
    lo = 1.0 - (ln_n + lnln + omega) / n
    if p >= hi:
        return GnpPrediction(n, p, d, eps, delta, omega, None, "dense-2",
                             frozenset({2}), p - hi)
    if p >= lo:
        return GnpPrediction(n, p, d, eps, delta, omega, None, "dense-23",
                             frozenset({2, 3}), p - lo)

    if d < ln_n:
        return OUT_OF_REGIME

    target = 2.0 * ln_n + delta
    i = 2
    while d**i / n < target:
        i += 1
    x = d ** (i - 1) / n
    if x >= (1.0 + eps) * ln_n:
        case, predicted = "1", frozenset({i})
        margin = x - (1.0 + eps) * ln_n
    elif x >= (1.0 - eps) * math.log(d):
        case, predicted = "2", frozenset({i, i + 1})
        margin = x - (1.0 - eps) * math.log(d)
    else:
        case, predicted = "3", frozenset({i + 1})
        margin = (1.0 - eps) * math.log(d) - x
    return GnpPrediction(n, p, d, eps, delta, omega, i, case, predicted, margin)


def predict_grid(m: int, n: int) -> GridPrediction:
    """Cube-root leading term and regime split for the m-by-n grid."""
    if not (1 <= m <= n):
        raise ValueError(f"need 1 <= m <= n, got {m}x{n}")
    leading = (1.5 * m * n) ** (1.0 / 3.0)
    regime = "wide" if m > math.sqrt(n) else "narrow"
    k0 = (1.5 * m * n) ** (1.0 / 3.0) - 1.0
    return GridPrediction(m, n, leading, regime, k0, grid_lower_bound(m, n))


def predict_path_drunk(
    n: int, variant: DrunkVariant, k3: float = K3_DEFAULT
) -> Union[float, Tuple[float, float]]:
    """Expected rounds for random ignition on the n-vertex path.

    Uniform and never-reselected rules share the same leading term; the
    unburned-only rule gets a square-root interval with pilot constant.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not isinstance(variant, DrunkVariant):
        raise TypeError(f"expected DrunkVariant, got {variant!r}")
    if variant is DrunkVariant.UNIFORM_UNBURNED:
        root = math.sqrt(n)
        return (root, k3 * root)
    return math.sqrt(n * math.log(n) / 2.0)


@dataclass(frozen=True, eq=False)
class NeighborhoodProfile:
    d_nominal: float
    vertices: tuple
    max_j: int          # deepest j the table actually covers
    ball_ratio: np.ndarray    # (len(vertices), max_j): grown-ball size / d^j
    sphere_ratio: np.ndarray  # (len(vertices), max_j): grown-ball / shell size
    truncated: bool


def neighborhood_profile(
    g: Graph, d_nominal: float, sample: int, max_j: int, seed: int = 0
) -> NeighborhoodProfile:
    """Ball-growth ratios for sampled vertices at depths 1..max_j.

    Ball sizes exclude the center, so depth 1 is plain degree. When some
    sampled vertex's ball swallows its whole component before max_j, the
    table stops at the last depth valid for every vertex and the result
    is flagged truncated.
    """
    if d_nominal <= 1.0:
        raise ValueError(f"need d_nominal > 1, got {d_nominal}")
    if sample < 1:
        raise ValueError(f"need sample >= 1, got {sample}")
    if max_j < 1:
        raise ValueError(f"need max_j >= 1, got {max_j}")
    n = g.n
    if sample >= n:
        verts = list(range(n))
    else:
        rng = Splitmix64(seed)
        seen = set()
        verts = []
        while len(verts) < sample:
            v = rng.below(n)
            if v not in seen:
                seen.add(v)
                verts.append(v)

    balls = np.zeros((len(verts), max_j), dtype=np.float64)
    spheres = np.zeros((len(verts), max_j), dtype=np.float64)
    depth = max_j
    for row, v in enumerate(verts):
        dist = bfs_distances(g, v).dist
        shells = np.bincount(dist[dist > 0], minlength=max_j + 1)
        balls[row] = np.cumsum(shells[1 : max_j + 1])
        spheres[row] = shells[1 : max_j + 1]
        empty = np.flatnonzero(spheres[row] == 0)
        if empty.size:
            depth = min(depth, int(empty[0]))
    truncated = depth < max_j
    balls = balls[:, :depth]
    spheres = spheres[:, :depth]
    powers = d_nominal ** np.arange(1, depth + 1, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        sphere_ratio = balls / spheres
    return NeighborhoodProfile(
        d_nominal=d_nominal,
        vertices=tuple(verts),
        max_j=depth,
        ball_ratio=balls / powers,
        sphere_ratio=sphere_ratio,
        truncated=truncated,
    )
