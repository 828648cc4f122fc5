"""Achievable-rate region sweep, corner points and region geometry.

The boundary of the secrecy capacity region is traced by a one-parameter
family of axis-aligned rectangles. For the direct parametrization alpha,
user 1's bound is the closed-form ratio gamma1(alpha) and user 2's bound
gamma2(alpha) is the top eigenvalue of an alpha-dependent pencil; the dual
parametrization beta exchanges the users' roles. The region itself is the
convex hull of all swept rectangles; its Pareto frontier is returned with
the generating parameter of every vertex.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import geometry, linalg
from .channel import ChannelPair, ChannelSpectrum, rate_scale, spectrum
from .errors import ParamOutOfRange
from .parallel import thread_map

PARAM_ALPHA = "alpha"
PARAM_BETA = "beta"


class RatePair(NamedTuple):
    """A point in rate space, bits per channel use."""

    r1: float
    r2: float


@dataclass(frozen=True)
class RateRectangle:
    """An achievable rectangle [0, r1] x [0, r2] and the parameter behind it."""

    corner: RatePair
    param: float
    param_kind: str = PARAM_ALPHA


@dataclass(frozen=True)
class RegionBoundary:
    """Swept rectangle corners plus the Pareto frontier of their hull.

    points      -- swept rectangles in parameter order
    hull        -- frontier vertices, r1 strictly increasing
    hull_params -- generating parameter of each hull vertex
    kind        -- "alpha" / "beta" sweeps are convex frontiers;
                   "outer" and "timeshare" boundaries reuse the container
    hull_union_gap -- distance from the hull to the swept corner curve
                   (how much the convex-hull operator added to the union)
    """

    points: tuple[RateRectangle, ...]
    hull: tuple[RatePair, ...]
    hull_params: tuple[float, ...]
    kind: str = PARAM_ALPHA
    hull_union_gap: float = 0.0

    def frontier(self) -> list[tuple[float, float]]:
        return [(p.r1, p.r2) for p in self.hull]

    @property
    def r1_max(self) -> float:
        return self.hull[-1].r1 if self.hull else 0.0

    @property
    def r2_max(self) -> float:
        return self.hull[0].r2 if self.hull else 0.0


@dataclass(frozen=True)
class SweepConfig:
    """Controls for the boundary sweep.

    The uniform base grid is refined two ways: chord-sagitta subdivision
    until the polygonal boundary sits within `sagitta_tol` of the true
    curve, and golden-section searches that pin the maximizer of
    r1 + w * r2 for each weight w. `segment_tol`, when set, also splits
    any boundary chord longer than the given length (used by the outer
    bound's staircase, which needs short steps rather than low sagitta).
    """

    grid_points: int = 512
    adaptive: bool = True
    sagitta_tol: float = 1e-7
    segment_tol: float | None = None
    refine: bool = True
    refine_weights: tuple[float, ...] = (0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0)
    refine_iters: int = 30
    refine_interval_tol: float = 1e-10
    max_points: int = 20000

    def __post_init__(self):
        if self.grid_points < 2:
            raise ValueError("grid needs at least 2 points")


def _check_param(value: float, name: str) -> float:
    v = float(value)
    if not 0.0 <= v <= 1.0:
        raise ParamOutOfRange(f"{name} must lie in [0, 1], got {value}")
    return v


def gamma1(ch: ChannelPair, spec: ChannelSpectrum, alpha: float) -> float:
    """User 1's rate ratio (1 + aP|h^H e1|^2) / (1 + aP|g^H e1|^2)."""
    a = _check_param(alpha, "alpha")
    p = ch.power
    num = 1.0 + a * p * abs(np.vdot(ch.h, spec.e1)) ** 2
    den = 1.0 + a * p * abs(np.vdot(ch.g, spec.e1)) ** 2
    return num / den


def gamma2(
    ch: ChannelPair, spec: ChannelSpectrum, alpha: float
) -> tuple[float, np.ndarray]:
    """User 2's bound: top eigenpair of the alpha-scaled residual pencil.

    The pencil is (I + s_g g g^H, I + s_h h h^H) with
    s_g = (1-a)P / (1 + aP|g^H e1|^2) and s_h = (1-a)P / (1 + aP|h^H e1|^2).
    Returns (gamma2, c2); c2 feeds the rank-one covariance construction.
    """
    a = _check_param(alpha, "alpha")
    p = ch.power
    s_g = (1.0 - a) * p / (1.0 + a * p * abs(np.vdot(ch.g, spec.e1)) ** 2)
    s_h = (1.0 - a) * p / (1.0 + a * p * abs(np.vdot(ch.h, spec.e1)) ** 2)
    t = ch.dim
    pa = linalg.identity_plus_rank_one(t, s_g, ch.g)
    pb = linalg.identity_plus_rank_one(t, s_h, ch.h)
    res = linalg.largest_gen_eig(pa, pb)
    return res.eigenvalue, res.eigenvector


def xi2(ch: ChannelPair, spec: ChannelSpectrum, beta: float) -> float:
    """User 2's closed-form ratio in the role-exchanged parametrization."""
    b = _check_param(beta, "beta")
    p = ch.power
    num = 1.0 + b * p * abs(np.vdot(ch.g, spec.e2)) ** 2
    den = 1.0 + b * p * abs(np.vdot(ch.h, spec.e2)) ** 2
    return num / den


def xi1(
    ch: ChannelPair, spec: ChannelSpectrum, beta: float
) -> tuple[float, np.ndarray]:
    """User 1's pencil eigenvalue in the role-exchanged parametrization."""
    b = _check_param(beta, "beta")
    p = ch.power
    s_h = (1.0 - b) * p / (1.0 + b * p * abs(np.vdot(ch.h, spec.e2)) ** 2)
    s_g = (1.0 - b) * p / (1.0 + b * p * abs(np.vdot(ch.g, spec.e2)) ** 2)
    t = ch.dim
    pa = linalg.identity_plus_rank_one(t, s_h, ch.h)
    pb = linalg.identity_plus_rank_one(t, s_g, ch.g)
    res = linalg.largest_gen_eig(pa, pb)
    return res.eigenvalue, res.eigenvector


def _log_rate(ratio: float, scale: float) -> float:
    return max(0.0, scale * math.log2(ratio)) if ratio > 0 else 0.0


def _intercepts(ch: ChannelPair, spec: ChannelSpectrum) -> tuple[float, float]:
    scale = rate_scale(ch)
    return _log_rate(spec.lambda1, scale), _log_rate(spec.lambda2, scale)


def max_rates(ch: ChannelPair) -> RatePair:
    """The two axis intercepts (scale*log2 lambda1, scale*log2 lambda2)."""
    r1, r2 = _intercepts(ch, spectrum(ch))
    return RatePair(r1, r2)


def miso_wiretap_capacity(ch: ChannelPair) -> float:
    """Secrecy capacity with user 2 demoted to a pure eavesdropper.

    Identical, bit for bit, to the r1 axis intercept of the full region.
    """
    return max_rates(ch).r1


def _corner_fn(
    ch: ChannelPair, spec: ChannelSpectrum, param_kind: str
) -> Callable[[float], RatePair]:
    scale = rate_scale(ch)
    cap1, cap2 = _intercepts(ch, spec)

    def corner(value: float) -> RatePair:
        if param_kind == PARAM_ALPHA:
            ratio1 = gamma1(ch, spec, value)
            ratio2, _ = gamma2(ch, spec, value)
        else:
            ratio1, _ = xi1(ch, spec, value)
            ratio2 = xi2(ch, spec, value)
        # corner identities bound the sweep by the intercepts; clamping
        # removes last-ulp overshoot so the hull endpoints stay exact
        return RatePair(
            min(_log_rate(ratio1, scale), cap1),
            min(_log_rate(ratio2, scale), cap2),
        )

    return corner


def _subdivide(
    corner: Callable[[float], RatePair],
    cache: dict[float, RatePair],
    cfg: SweepConfig,
) -> None:
    """Insert parameters until every chord is flat and short enough."""
    stack = []
    params = sorted(cache)
    for lo, hi in zip(params, params[1:]):
        stack.append((lo, hi, 0))
    while stack:
        lo, hi, depth = stack.pop()
        if len(cache) >= cfg.max_points or depth > 40 or hi - lo < 1e-12:
            continue
        mid = 0.5 * (lo + hi)
        a, b, m = cache[lo], cache[hi], corner(mid)
        cache[mid] = m
        chord = math.hypot(b.r1 - a.r1, b.r2 - a.r2)
        sag = geometry.point_polyline_distance((m.r1, m.r2), [a, b])
        too_long = cfg.segment_tol is not None and chord > cfg.segment_tol
        if sag > cfg.sagitta_tol or too_long:
            stack.append((lo, mid, depth + 1))
            stack.append((mid, hi, depth + 1))


def _golden_refine(
    corner: Callable[[float], RatePair],
    cache: dict[float, RatePair],
    cfg: SweepConfig,
) -> None:
    """Golden-section search of argmax r1 + w*r2 for each weight."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0

    def score(value: float, w: float) -> float:
        if value not in cache:
            cache[value] = corner(value)
        p = cache[value]
        return p.r1 + w * p.r2

    for w in cfg.refine_weights:
        lo, hi = 0.0, 1.0
        x1 = hi - inv_phi * (hi - lo)
        x2 = lo + inv_phi * (hi - lo)
        f1, f2 = score(x1, w), score(x2, w)
        for _ in range(cfg.refine_iters):
            if hi - lo < cfg.refine_interval_tol or len(cache) >= cfg.max_points:
                break
            if f1 >= f2:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - inv_phi * (hi - lo)
                f1 = score(x1, w)
            else:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + inv_phi * (hi - lo)
                f2 = score(x2, w)


def _hull_union_gap(
    frontier: list[tuple[float, float]], corners: list[tuple]
) -> float:
    """How far the hull strays from the swept corner curve.

    Zero (up to sweep sagitta) means the union of swept rectangles is
    already convex and the hull operator added nothing; a large value
    flags a convexification bridge over a non-concave stretch.
    """
    if len(frontier) < 2 or len(corners) < 2:
        return 0.0
    curve = geometry.pareto_corners(corners)
    samples = geometry.resample_polyline(frontier, 512, include_vertices=False)
    return float(geometry.min_distances(samples, curve).max())


def _build_boundary(
    rects: list[RateRectangle],
    cap1: float,
    cap2: float,
    kind: str,
) -> RegionBoundary:
    tagged = [(r.corner.r1, r.corner.r2, r.param) for r in rects]
    tagged.append((cap1, 0.0, 1.0 if kind == PARAM_ALPHA else 0.0))
    tagged.append((0.0, cap2, 0.0 if kind == PARAM_ALPHA else 1.0))
    pareto = geometry.pareto_corners(tagged)
    chain = geometry.concave_chain(pareto)
    if not chain:
        chain = [(0.0, 0.0, 0.0)]
    hull = tuple(RatePair(c[0], c[1]) for c in chain)
    hull_params = tuple(float(c[2]) for c in chain)
    gap = _hull_union_gap([(p.r1, p.r2) for p in hull], tagged)
    return RegionBoundary(
        points=tuple(rects),
        hull=hull,
        hull_params=hull_params,
        kind=kind,
        hull_union_gap=gap,
    )


def _sweep(ch: ChannelPair, cfg: SweepConfig, param_kind: str) -> RegionBoundary:
    spec = spectrum(ch)
    corner = _corner_fn(ch, spec, param_kind)
    base = [float(v) for v in np.linspace(0.0, 1.0, cfg.grid_points)]
    cache: dict[float, RatePair] = dict(zip(base, thread_map(corner, base)))
    if cfg.adaptive:
        _subdivide(corner, cache, cfg)
    if cfg.refine:
        _golden_refine(corner, cache, cfg)
    rects = [
        RateRectangle(cache[v], v, param_kind) for v in sorted(cache)
    ]
    cap1, cap2 = _intercepts(ch, spec)
    return _build_boundary(rects, cap1, cap2, param_kind)


def capacity_region(ch: ChannelPair, grid: SweepConfig | None = None) -> RegionBoundary:
    """Sweep the direct parametrization and convexify."""
    return _sweep(ch, grid or SweepConfig(), PARAM_ALPHA)


def capacity_region_beta(
    ch: ChannelPair, grid: SweepConfig | None = None
) -> RegionBoundary:
    """Sweep the role-exchanged parametrization; same region as
    capacity_region up to discretization."""
    return _sweep(ch, grid or SweepConfig(), PARAM_BETA)


def time_sharing_region(ch: ChannelPair) -> RegionBoundary:
    """Segment between the two single-user operating points."""
    cap1, cap2 = _intercepts(ch, spectrum(ch))
    rects = [
        RateRectangle(RatePair(cap1, 0.0), 0.0, "timeshare"),
        RateRectangle(RatePair(0.0, cap2), 1.0, "timeshare"),
    ]
    return _build_boundary(rects, cap1, cap2, "timeshare")


def region_contains(boundary: RegionBoundary, p: RatePair, tol: float = 1e-9) -> bool:
    """Is the rate pair dominated by the boundary's region (within tol)?

    Convex boundaries use chord interpolation; the outer bound's staircase
    uses rectangle dominance (a chord would overstate that region).
    """
    frontier = boundary.frontier()
    if boundary.kind == "outer":
        return geometry.contains_staircase(frontier, p.r1, p.r2, tol)
    return geometry.contains_convex(frontier, p.r1, p.r2, tol)


def equal_rate_point(boundary: RegionBoundary) -> float:
    """Largest c with (c, c) inside the region (frontier/diagonal crossing)."""
    frontier = boundary.frontier()
    if not frontier:
        return 0.0
    hi = frontier[-1][0]
    if geometry.frontier_value(frontier, hi) >= hi:
        return hi
    lo = 0.0
    if geometry.frontier_value(frontier, 0.0) <= 0.0:
        return 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if geometry.frontier_value(frontier, mid) >= mid:
            lo = mid
        else:
            hi = mid
    return lo
