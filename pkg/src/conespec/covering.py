"""Parent-chained coverings and the Hausdorff bounds for timestamp images/fibers.

A node at level j stands for a ball of diameter <= 2 a theta^j.  It carries a
coarse dimension D (it has at most C1 theta^{-D} children) and a coarse
Hoelder exponent h (timestamp diameters shrink like theta^{sum of h over the
ancestors}).  Writing the sum over level-j nodes as an expectation over a
uniform random descent gives the chain

    sum_j omega_d diam^d
        = E[prod #children * omega_d diam^d]               (enumeration)
        <= omega_d C2^d E[C1^{(1+d) j} theta^{sum(d h - D)}] (path bound)
        <= omega_d C2^d (C1^2 theta^xi)^j                  (majorant)

where the last step needs d h - D >= xi at every node, d <= 1 and C1 >= 1.
Expectations are computed exactly by weighted traversal.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np


def omega(d: float) -> float:
    """Volume of the unit ball in R^d (d real)."""
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1)


@dataclass
class CoverNode:
    level: int
    diameter_bound: float
    coarse_dim: float
    coarse_holder: float
    timestamp_diam: float
    children: list["CoverNode"] = field(default_factory=list)


def theta_threshold(C1: float, xi: float) -> float:
    """Largest dyadic theta0 = 2^-m with C1^2 theta0^xi < 1."""
    if C1 <= 1:
        raise ValueError("C1 must exceed 1")
    if xi <= 0:
        raise ValueError("xi must be positive")
    m = 1
    while C1**2 * 2.0 ** (-m * xi) >= 1:
        m += 1
    return 2.0**-m


def iter_nodes(tree: CoverNode, path: str = "root"):
    """(path, node, ancestors) in depth-first order."""
    stack = [(tree, path, ())]
    while stack:
        node, p, anc = stack.pop()
        yield p, node, anc
        for i in range(len(node.children) - 1, -1, -1):
            stack.append((node.children[i], f"{p}/{i}", anc + (node,)))


def validate_tree(tree: CoverNode, C1: float, C2: float, theta: float, a: float | None = None) -> None:
    """Check the child-count, timestamp and (optionally) diameter assumptions."""
    slack = 1 + 1e-12
    for path, node, anc in iter_nodes(tree):
        j = len(anc)
        if node.level != j:
            raise ValueError(f"node {path}: level {node.level} but depth {j}")
        if node.coarse_dim < 0 or node.coarse_holder < 0:
            raise ValueError(f"node {path}: negative coarse dimension or Hoelder exponent")
        if len(node.children) > C1 * theta ** (-node.coarse_dim) * slack:
            raise ValueError(
                f"node {path}: {len(node.children)} children exceed C1*theta^-D = "
                f"{C1 * theta ** (-node.coarse_dim):.6g}"
            )
        h_sum = sum(x.coarse_holder for x in anc)
        allowed = C2 * C1**j * theta**h_sum
        if node.timestamp_diam > allowed * slack:
            raise ValueError(
                f"node {path}: timestamp diameter {node.timestamp_diam:.6g} exceeds {allowed:.6g}"
            )
        if a is not None and node.diameter_bound > 2 * a * theta**j * slack:
            raise ValueError(f"node {path}: diameter bound exceeds 2 a theta^j")


def depth(tree: CoverNode) -> int:
    return max(len(anc) for _, _, anc in iter_nodes(tree))


def _level_walk(tree: CoverNode, j: int):
    """Level-j nodes with (probability of uniform descent, sum D, sum h) over ancestors."""
    out = []
    stack = [(tree, 1.0, 0.0, 0.0, 0)]
    while stack:
        node, prob, dsum, hsum, lev = stack.pop()
        if lev == j:
            out.append((node, prob, dsum, hsum))
            continue
        kids = node.children
        for c in kids:
            stack.append((c, prob / len(kids), dsum + node.coarse_dim, hsum + node.coarse_holder, lev + 1))
    return out


@dataclass(frozen=True)
class BoundChain:
    level: int
    enumeration: float
    path_bound: float
    majorant: float
    hypothesis_holds: bool


def image_bound(tree: CoverNode, d: float, C1: float, C2: float, theta: float, xi: float,
                level: int | None = None) -> BoundChain:
    """Image bound at one level (deepest level by default)."""
    if d > 1:
        raise ValueError("the image bound needs d <= 1")
    if C1 < 1:
        raise ValueError("C1 must be at least 1")
    validate_tree(tree, C1, C2, theta)
    j = depth(tree) if level is None else level
    w = omega(d)
    enum = 0.0
    path = 0.0
    for node, prob, dsum, hsum in _level_walk(tree, j):
        enum += w * node.timestamp_diam**d
        path += prob * C1 ** ((1 + d) * j) * theta ** (d * hsum - dsum)
    path *= w * C2**d
    major = w * C2**d * (C1**2 * theta**xi) ** j
    holds = all(d * n.coarse_holder - n.coarse_dim >= xi - 1e-12 for _, n, _ in iter_nodes(tree))
    return BoundChain(j, enum, path, major, holds)


def fiber_bound(tree: CoverNode, d: float, C1: float, C2: float, theta: float, xi: float,
                a: float = 1.0, level: int | None = None) -> BoundChain:
    """Bound for the upper integral of H^d_inf of the fibers at one level."""
    if C1 < 1:
        raise ValueError("C1 must be at least 1")
    validate_tree(tree, C1, C2, theta)
    j = depth(tree) if level is None else level
    w = omega(d)
    scale = w * (a * theta**j) ** d
    enum = 0.0
    path = 0.0
    for node, prob, dsum, hsum in _level_walk(tree, j):
        enum += node.timestamp_diam
        path += prob * theta ** (hsum - dsum)
    enum *= scale
    path *= scale * C2 * C1 ** (2 * j)
    major = w * a**d * C2 * (C1**2 * theta**xi) ** j
    holds = all(d - n.coarse_dim + n.coarse_holder >= xi - 1e-12 for _, n, _ in iter_nodes(tree))
    return BoundChain(j, enum, path, major, holds)


def bound_series(bound, tree: CoverNode, *args, **kwargs) -> list[BoundChain]:
    return [bound(tree, *args, level=j, **kwargs) for j in range(depth(tree) + 1)]


def decay_rate(values: list[float]) -> float:
    """Geometric rate fitted over the second half of a positive series."""
    J = len(values) - 1
    lo = J // 2
    if J - lo < 1 or min(values) < 0:
        raise ValueError("need a nonnegative series of length >= 2")
    if values[lo] == 0:
        return 0.0 if values[J] == 0 else math.inf
    return (values[J] / values[lo]) ** (1 / (J - lo))


def constant_tree(depth_: int, children: int, coarse_dim: float, coarse_holder: float,
                  C1: float, C2: float, theta: float, a: float = 1.0) -> CoverNode:
    """Every node saturates the child count and the timestamp/diameter bounds."""

    def build(j: int) -> CoverNode:
        node = CoverNode(j, 2 * a * theta**j, coarse_dim, coarse_holder,
                         C2 * C1**j * theta ** (coarse_holder * j))
        if j < depth_:
            node.children = [build(j + 1) for _ in range(children)]
        return node

    return build(0)


def random_tree(rng: np.random.Generator, depth_: int, C1: float, C2: float, theta: float,
                dim_range=(0.0, 0.3), holder_range=(0.6, 1.0), prune: float = 0.2,
                a: float = 1.0) -> CoverNode:
    """A valid tree with random parameters, child counts and diameters."""

    def build(j: int, hsum: float) -> CoverNode:
        D = float(rng.uniform(*dim_range))
        h = float(rng.uniform(*holder_range))
        node = CoverNode(
            j,
            2 * a * theta**j * float(rng.uniform(0.5, 1.0)),
            D,
            h,
            C2 * C1**j * theta**hsum * float(rng.uniform(0.5, 1.0)),
        )
        if j < depth_:
            cap = max(1, math.floor(C1 * theta ** (-D) + 1e-12))
            count = int(rng.integers(1, cap + 1))
            kids = [build(j + 1, hsum + h) for _ in range(count)]
            # keep at least one branch so the deepest level exists
            keep = [c for i, c in enumerate(kids) if i == 0 or rng.random() >= prune]
            node.children = keep
        return node

    return build(0, 0.0)


# ---- synthetic self-similar sets ----


@dataclass(frozen=True)
class TimestampMap:
    """t(x) = constant * x[axis]**exponent on the unit cube."""

    exponent: float = 1.0
    constant: float = 1.0
    axis: int = 0

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.constant * np.asarray(x)[..., self.axis] ** self.exponent


@dataclass(frozen=True)
class SyntheticFoliationSet:
    """Attractor of the maps x -> r_i x + b_i inside [0, 1]^m."""

    ratios: tuple[float, ...]
    offsets: tuple[tuple[float, ...], ...]
    timestamp: TimestampMap = TimestampMap()

    def __post_init__(self):
        if len(self.ratios) != len(self.offsets) or not self.ratios:
            raise ValueError("need one offset per contraction ratio")
        m = len(self.offsets[0])
        for r, b in zip(self.ratios, self.offsets):
            if not 0 < r < 1:
                raise ValueError(f"contraction ratio {r} outside (0, 1)")
            if len(b) != m or any(v < 0 or v + r > 1 + 1e-12 for v in b):
                raise ValueError("each map must send the unit cube into itself")
        if not 0 < self.timestamp.exponent <= 1:
            raise ValueError("timestamp exponent must lie in (0, 1]")
        if not 0 <= self.timestamp.axis < m:
            raise ValueError("timestamp axis out of range")

    @property
    def dim(self) -> int:
        return len(self.offsets[0])

    def open_set_condition(self) -> bool:
        """Images of the unit cube are pairwise interior-disjoint."""
        for (r1, b1), (r2, b2) in itertools.combinations(zip(self.ratios, self.offsets), 2):
            separated = any(x1 + r1 <= x2 + 1e-12 or x2 + r2 <= x1 + 1e-12 for x1, x2 in zip(b1, b2))
            if not separated:
                return False
        return True

    def axis_extent(self) -> tuple[float, float]:
        """[min, max] of the attractor's timestamp coordinate."""
        ax = self.timestamp.axis
        lo, hi = 0.0, 1.0
        for _ in range(2000):
            nlo = min(r * lo + b[ax] for r, b in zip(self.ratios, self.offsets))
            nhi = max(r * hi + b[ax] for r, b in zip(self.ratios, self.offsets))
            if abs(nlo - lo) < 1e-15 and abs(nhi - hi) < 1e-15:
                break
            lo, hi = nlo, nhi
        return lo, hi

    @classmethod
    def from_json(cls, data: dict) -> "SyntheticFoliationSet":
        ts = data.get("timestamp", {})
        return cls(
            tuple(float(r) for r in data["ratios"]),
            tuple(tuple(float(v) for v in b) for b in data["offsets"]),
            TimestampMap(float(ts.get("exponent", 1.0)), float(ts.get("constant", 1.0)), int(ts.get("axis", 0))),
        )


def group_size(ratio_max: float, theta0: float) -> int:
    """Smallest L with ratio_max^L <= theta0."""
    L = 1
    while ratio_max**L > theta0:
        L += 1
    return L


def synthetic_tree(s: SyntheticFoliationSet, levels: int, L: int) -> tuple[CoverNode, float, float]:
    """Natural covering tree, L IFS generations per tree level; returns (tree, theta, D)."""
    theta = max(s.ratios) ** L
    N = len(s.ratios)
    D = math.log(N**L) / math.log(1 / theta)
    h = s.timestamp.exponent
    lo, hi = s.axis_extent()
    ax = s.timestamp.axis
    words = list(itertools.product(range(N), repeat=L))
    sqrt_m = math.sqrt(s.dim)

    def piece(scale: float, shift: float) -> float:
        a, b = scale * lo + shift, scale * hi + shift
        return s.timestamp.constant * (b**h - a**h)

    def build(j: int, scale: float, shift: float) -> CoverNode:
        node = CoverNode(j, scale * sqrt_m, D, h, piece(scale, shift))
        if j < levels:
            for w in words:
                sc, sh = scale, shift
                for i in w:
                    # compose: current map after f_i
                    sh = sc * s.offsets[i][ax] + sh
                    sc = sc * s.ratios[i]
                node.children.append(build(j + 1, sc, sh))
        return node

    return build(0, 1.0, 0.0), theta, D


def sample_points(s: SyntheticFoliationSet, generations: int, rng: np.random.Generator) -> np.ndarray:
    """One random point of the unit cube pushed through every word of the given length."""
    N = len(s.ratios)
    ratios = np.array(s.ratios)
    offsets = np.array(s.offsets)
    count = N**generations
    pts = rng.random((count, s.dim))
    # digits of the word index, most significant first
    idx = np.arange(count)
    digits = [(idx // N**p) % N for p in range(generations - 1, -1, -1)]
    # apply innermost map first: x -> f_{w1}(f_{w2}(...f_{wD}(x)))
    for dig in reversed(digits):
        pts = ratios[dig][:, None] * pts + offsets[dig]
    return pts


def box_counting_dimension(values: np.ndarray, exponents) -> float:
    """Slope of log N(2^-i) against i log 2 for 1-d data."""
    counts = []
    for i in exponents:
        eps = 2.0 ** (-i)
        counts.append(len(np.unique(np.floor(values / eps))))
    x = np.array(exponents, dtype=float) * math.log(2)
    y = np.log(np.array(counts, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


@dataclass(frozen=True)
class SynthReport:
    estimated_image_dim: float
    bound_dim: float
    box_count_dim: float
    theta: float
    coarse_dim: float
    holder: float
    group: int
    decay_rate: float | None

    def to_json(self) -> dict:
        return {
            "estimatedImageDim": self.estimated_image_dim,
            "boundDim": self.bound_dim,
            "boxCountDim": self.box_count_dim,
            "theta": self.theta,
            "coarseDim": self.coarse_dim,
            "holder": self.holder,
            "group": self.group,
            "imageBoundDecayRate": self.decay_rate,
        }


def synth_experiment(s: SyntheticFoliationSet, depth_: int, C1: float = 1.01, xi: float = 0.1,
                     seed: int = 0, tree_levels: int = 6) -> SynthReport:
    """Bound from the covering proposition against a box-counting estimate.

    ``depth_`` is the number of IFS generations used for box counting.  The
    covering tree groups L generations per level so that theta <= theta0.
    """
    if not s.open_set_condition():
        raise ValueError("overlapping IFS: open set condition fails")
    theta0 = theta_threshold(C1, xi)
    L = group_size(max(s.ratios), theta0)
    h = s.timestamp.exponent
    C2 = s.timestamp.constant
    levels = max(1, min(tree_levels, depth_ // L))
    tree, theta, D = synthetic_tree(s, levels, L)
    validate_tree(tree, C1, C2, theta)
    bound = (xi + D) / h
    rate = None
    if bound <= 1:
        series = bound_series(image_bound, tree, bound, C1, C2, theta, xi)
        rate = decay_rate([b.enumeration for b in series])
    rng = np.random.default_rng(seed)
    pts = sample_points(s, depth_, rng)
    t = s.timestamp(pts)
    finest = max(2, int(depth_ * math.log2(1 / max(s.ratios))) - 2)
    box = box_counting_dimension(t, list(range(2, finest + 1)))
    return SynthReport(D / h, bound, box, theta, D, h, L, rate)
