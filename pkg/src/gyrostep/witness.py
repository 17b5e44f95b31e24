"""Constructive witnesses for dense subsets, narrow covers, networks and
countable local bases of the step-function gyrogroup.

Dense and network families are explicit and finite: the full carrier or a
list of labels for finite instances, and dyadic rational grids for the disk
and the ball. Searches walk candidates in a fixed index order and return the
first match.
"""

from __future__ import annotations

import bisect
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .core import ContinuousGyrogroup, FiniteGyrogroup, Gyrogroup, Neighborhood, contains
from .errors import DensityError, SchemaError, StepFunctionError, VerificationError
from .rational import as_rational
from .step import (ONE, ZERO, StepFunction, aligned, common_refinement, cosub_sf,
                   dyadic_shift, in_neighborhood, in_translate)


# --------------------------------------------------------------------------
# dense families


@dataclass(frozen=True)
class DenseSpec:
    """An enumerable subset D of the carrier.

    Finite instances list labels explicitly; continuous instances use every
    point of the grid ``(1/2^level) Z^dim`` inside the carrier, enumerated in
    lexicographic order of integer coordinates.
    """

    instance: Gyrogroup
    points: tuple | None = None
    level: int | None = None

    @classmethod
    def finite(cls, G: FiniteGyrogroup, points=None) -> "DenseSpec":
        pts = tuple(G.check(p) for p in (G.elements() if points is None else points))
        if not pts:
            raise SchemaError("a dense family needs at least one point")
        return cls(G, points=pts)

    @classmethod
    def grid(cls, G: ContinuousGyrogroup, level: int) -> "DenseSpec":
        if level < 0:
            raise SchemaError("grid level must be non-negative")
        return cls(G, level=level)

    @property
    def step(self) -> float:
        return 2.0 ** -self.level

    def _inside(self, coords) -> bool:
        G = self.instance
        return math.hypot(*coords) < G.radius * (1 - 1e-12)

    def _grid_point(self, idx):
        return self.instance.from_coords([i * self.step for i in idx])

    def __iter__(self) -> Iterator:
        if self.points is not None:
            yield from self.points
            return
        G = self.instance
        top = math.ceil(G.radius / self.step)
        for idx in itertools.product(range(-top, top + 1), repeat=G.dim):
            coords = [i * self.step for i in idx]
            if self._inside(coords):
                yield G.from_coords(coords)

    def __contains__(self, x) -> bool:
        G = self.instance
        if self.points is not None:
            return any(G.eq(x, p) for p in self.points)
        coords = G.coords(x)
        return self._inside(coords) and all((c / self.step).is_integer() for c in coords)

    def candidates(self, x, radius: float | None = None) -> Iterator:
        """Points within Euclidean ``radius`` of ``x`` in index order (all
        points when ``radius`` is None or D is an explicit list)."""
        if self.points is not None or radius is None:
            yield from self
            return
        G = self.instance
        xc = G.coords(x)
        ranges = [range(math.floor((c - radius) / self.step), math.ceil((c + radius) / self.step) + 1)
                  for c in xc]
        for idx in itertools.product(*ranges):
            coords = [i * self.step for i in idx]
            if self._inside(coords) and math.dist(coords, xc) <= radius:
                yield G.from_coords(coords)


def _window(G: Gyrogroup, x, V: Neighborhood, side: str = "left") -> float | None:
    if G.exact or not V.is_ball:
        return None
    extent = G.translate_extent if side == "left" else G.right_translate_extent
    return extent(x, V.radius) * (1 + 1e-9) + 1e-12


def point_in_translate(D: DenseSpec, x, V: Neighborhood):
    """``x`` itself when it lies in D, else the first ``y`` in D with
    ``y ∈ x ⊕ V``, i.e. ``⊖x ⊕ y ∈ V``."""
    G = D.instance
    if x in D:
        return x
    for y in D.candidates(x, _window(G, x, V)):
        if contains(G, V, G.op(G.inverse(x), y)):
            return y
    raise DensityError(f"no point of the dense family lies in {x!r} ⊕ V")


def translate_containing(D: DenseSpec, x, V: Neighborhood, side: str = "left"):
    """``x`` itself when it lies in D, else the first ``d`` in D with
    ``x ∈ d ⊕ V`` (left) or ``x ∈ V ⊕ d`` (right)."""
    G = D.instance
    if side not in ("left", "right"):
        raise SchemaError(f"side must be 'left' or 'right', got {side!r}")
    if x in D:
        return x
    if side == "left":
        # x = d ⊕ v  <=>  ⊖d ⊕ x = v ∈ V; ‖⊖d ⊕ x‖ = ‖⊖x ⊕ d‖ bounds the window
        for d in D.candidates(x, _window(G, x, V)):
            if contains(G, V, G.op(G.inverse(d), x)):
                return d
    elif side == "right":
        # x = v ⊕ d  <=>  x ⊟ d = v ∈ V; then d = ⊖v ⊕ x lies near x
        for d in D.candidates(x, _window(G, x, V, "right")):
            if contains(G, V, G.cosub(x, d)):
                return d
    raise DensityError(f"no translate of V by the dense family contains {x!r}")


def density_check(D: DenseSpec, V: Neighborhood, samples: int = 200,
                  rng: random.Random | None = None) -> bool:
    """Every tested x has a point of D in ``x ⊕ V`` (all x for finite G)."""
    G = D.instance
    if isinstance(G, FiniteGyrogroup):
        xs = G.elements()
    else:
        rng = rng or random.Random(0)
        xs = [G.random_element(rng) for _ in range(samples)]
    try:
        for x in xs:
            point_in_translate(D, x, V)
    except DensityError:
        return False
    return True


def cover_check(D: DenseSpec, V: Neighborhood, side: str = "left", samples: int = 200,
                rng: random.Random | None = None, max_norm: float | None = None) -> bool:
    """``D ⊕ V = G`` (left) or ``V ⊕ D = G`` (right): exhaustive on finite G.

    On continuous G the check samples the closed disk ``‖x‖ <= max_norm``
    (default ``0.9 * radius``) together with its rim. A finite grid cannot
    cover the whole open carrier at a fixed V, so callers pass the region
    they actually need.
    """
    G = D.instance
    if isinstance(G, FiniteGyrogroup):
        xs = G.elements()
    else:
        rng = rng or random.Random(0)
        frac = 0.9 if max_norm is None else max_norm / G.radius
        xs = [G.random_element(rng, max_norm=frac) for _ in range(samples)]
        xs += [G.from_coords([c * frac * G.radius / max(G.norm(x), 1e-300) for c in G.coords(x)])
               for x in xs[: samples // 4] if G.norm(x) > 0]
    try:
        for x in xs:
            translate_containing(D, x, V, side)
    except DensityError:
        return False
    return True


def _cuts(f: StepFunction, budget: Fraction, shift: bool) -> list[Fraction]:
    return dyadic_shift(f.breakpoints, budget) if shift else list(f.breakpoints)


def densify(f: StepFunction, D: DenseSpec, V: Neighborhood, eps, shift: bool = False) -> StepFunction:
    """A D-valued ``g ∈ f ⊕ O(V, eps)``.

    Each piece value ``x_k`` is replaced by the first ``y_k ∈ D ∩ (x_k ⊕ V)``;
    with ``shift`` the interior cuts move right to dyadic ``b_k`` with
    ``Σ (b_k - a_k) < eps``, otherwise ``b_k = a_k``.
    """
    eps = as_rational(eps)
    if eps <= 0:
        raise StepFunctionError("eps must be positive")
    G = f.instance
    if D.instance != G:
        raise StepFunctionError("dense family over a different instance")
    ys = [point_in_translate(D, x, V) for x in f.values]
    g = StepFunction(G, _cuts(f, eps, shift), ys)
    if not in_translate(g, f, V, eps):
        raise VerificationError("densified function left f ⊕ O(V, eps)")
    return g


def narrow_cover_witness(f: StepFunction, D: DenseSpec, V: Neighborhood, eps,
                         shift: bool = False, side: str = "left") -> StepFunction:
    """A D-valued ``g`` with ``f ∈ g ⊕ O(V, eps)`` (left) or
    ``f ∈ O(V, eps) ⊕ g`` (right, decided as ``f ⊟ g ∈ O(V, eps)``)."""
    eps = as_rational(eps)
    if eps <= 0:
        raise StepFunctionError("eps must be positive")
    G = f.instance
    if D.instance != G:
        raise StepFunctionError("dense family over a different instance")
    region = None if G.exact else max(G.norm(x) for x in f.values)
    if not cover_check(D, V, side, max_norm=region):
        raise DensityError("the translates of V by D do not cover the values of f")
    xs = [translate_containing(D, x, V, side) for x in f.values]
    g = StepFunction(G, _cuts(f, eps, shift), xs)
    if not covers(f, g, V, eps, side):
        raise VerificationError("cover witness failed its membership re-check")
    return g


def covers(f: StepFunction, g: StepFunction, V: Neighborhood, eps, side: str = "left") -> bool:
    if side == "left":
        return in_translate(f, g, V, eps)
    return in_neighborhood(cosub_sf(f, g), V, eps)


# --------------------------------------------------------------------------
# networks


@dataclass(frozen=True)
class NetworkSet:
    """An explicit finite set, or the closed ball ``{y : ‖⊖center ⊕ y‖ <= radius}``."""

    members: frozenset | None = None
    center: object = None
    radius: Fraction | None = None

    def contains(self, G: Gyrogroup, y) -> bool:
        if self.members is not None:
            return y in self.members if G.exact else any(G.eq(y, m) for m in self.members)
        return G.norm(G.op(G.inverse(self.center), y)) <= self.radius

    def inside_translate(self, G: Gyrogroup, x, V: Neighborhood) -> bool:
        """Whether this set lies inside ``x ⊕ V``: exact for finite sets; for
        balls via ``‖⊖x ⊕ c‖ ⊕ r < rho``, which bounds ``‖⊖x ⊕ y‖``."""
        if self.members is not None:
            return all(contains(G, V, G.op(G.inverse(x), y)) for y in self.members)
        if not V.is_ball:
            raise TypeError("ball network sets need ball neighborhoods")
        s = G.norm(G.op(G.inverse(x), self.center))
        return G.scalar_add(s, float(self.radius)) < V.radius


@dataclass(frozen=True)
class NetworkSpec:
    """A network on the carrier: singletons of a finite G, or closed balls with
    dyadic centers and radii ``1/2^j``, ``j = 1 .. depth``."""

    instance: Gyrogroup
    centers: DenseSpec
    depth: int = 0

    @classmethod
    def finite(cls, G: FiniteGyrogroup) -> "NetworkSpec":
        return cls(G, DenseSpec.finite(G))

    @classmethod
    def grid(cls, G: ContinuousGyrogroup, level: int, depth: int) -> "NetworkSpec":
        return cls(G, DenseSpec.grid(G, level), depth)

    def choose(self, x, V: Neighborhood) -> NetworkSet:
        """First member P with ``x ∈ P ⊆ x ⊕ V``."""
        G = self.instance
        if isinstance(G, FiniteGyrogroup):
            P = NetworkSet(members=frozenset([x]))
            if P.inside_translate(G, x, V):
                return P
            raise DensityError("identity not in V")
        for j in range(1, self.depth + 1):
            r = Fraction(1, 2 ** j)
            if G.scalar_add(float(r), float(r)) >= V.radius:
                continue
            window = G.translate_extent(x, float(r)) * (1 + 1e-9) + 1e-12
            for c in self.centers.candidates(x, window):
                P = NetworkSet(center=c, radius=r)
                if P.contains(G, x) and P.inside_translate(G, x, V):
                    return P
        raise DensityError(f"no network member sits between {x!r} and {x!r} ⊕ V")


@dataclass(frozen=True)
class QSet:
    """The set of g leaving ``P_{k+1}`` on ``[b_k, b_{k+1})`` (``b_0 = 0``) on
    a set of total measure below ``1/n``."""

    m: int
    n: int
    b: tuple
    P: tuple

    def __contains__(self, g: StepFunction) -> bool:
        return q_set_member(g, self.n, self.b, self.P)


def q_bad_measure(g: StepFunction, b: Sequence, P: Sequence[NetworkSet]) -> Fraction:
    b = [as_rational(x) for x in b]
    if not b or b[-1] != ONE or any(x >= y for x, y in zip([ZERO, *b], b)):
        raise StepFunctionError("cut vector must be strictly increasing in (0, 1] and end at 1")
    if len(P) != len(b):
        raise StepFunctionError(f"{len(b)} blocks but {len(P)} network sets")
    G = g.instance
    blocks = [ZERO, *b]
    part = common_refinement(g.breakpoints, blocks)
    total = ZERO
    for lo, hi, (y,) in aligned(g, partition=part):
        k = bisect.bisect_right(blocks, lo) - 1
        if not P[k].contains(G, y):
            total += hi - lo
    return total


def q_set_member(g: StepFunction, n: int, b: Sequence, P: Sequence[NetworkSet]) -> bool:
    if n < 1:
        raise StepFunctionError("n must be a positive integer")
    return q_bad_measure(g, b, P) < Fraction(1, n)


def build_q_set(f: StepFunction, V: Neighborhood, eps, network: NetworkSpec) -> QSet:
    """Q(m, 2n, b, P) with ``f ∈ Q ⊆ f ⊕ O(V, eps)``: n is least with
    ``1/n < eps``, ``x_k ∈ P_{k+1} ⊆ x_k ⊕ V`` and ``Σ (b_k - a_k) < 1/(2n)``."""
    eps = as_rational(eps)
    if eps <= 0:
        raise StepFunctionError("eps must be positive")
    n = math.floor(1 / eps) + 1
    P = tuple(network.choose(x, V) for x in f.values)
    b = tuple(dyadic_shift(f.breakpoints, Fraction(1, 2 * n))[1:])
    Q = QSet(len(f.values), 2 * n, b, P)
    if f not in Q:
        raise VerificationError("f is not in its own Q-set")
    return Q


def sample_q_member(Q: QSet, G: Gyrogroup, rng: random.Random) -> StepFunction:
    """A random element of Q: values from ``P_{k+1}`` on each block, then
    arbitrary values on a few short pieces of total measure below ``1/n``."""
    from .sampling import element_in

    blocks = [ZERO, *Q.b]
    bps, vals = [ZERO], []
    budget = Fraction(1, Q.n)
    for k, (lo, hi) in enumerate(zip(blocks, blocks[1:])):
        P = Q.P[k]
        mid = None
        if rng.random() < 0.5:
            length = min(budget, hi - lo) * Fraction(rng.randint(1, 9), 10)
            if 0 < length < hi - lo:
                mid = lo + length
                budget -= length
        if mid is not None:
            bps.append(mid)
            vals.append(G.random_element(rng))
        if P.members is not None:
            vals.append(rng.choice(sorted(P.members, key=repr)))
        else:
            w = element_in(G, Neighborhood.ball(float(P.radius) * (1 - 1e-6)), rng)
            vals.append(G.op(P.center, w))
        bps.append(hi)
    g = StepFunction(G, bps, vals)
    if g not in Q:
        raise VerificationError("sampled function fell outside its Q-set")
    return g


# --------------------------------------------------------------------------
# countable local base


def local_base(neighborhoods: Sequence[Neighborhood], depth: int) -> Iterator[tuple[Neighborhood, Fraction]]:
    """The family ``O(V, 1/n)`` for V in the list and ``n = 1 .. depth``."""
    for V in neighborhoods:
        for n in range(1, depth + 1):
            yield V, Fraction(1, n)


def base_included(V: Neighborhood, eps, W: Neighborhood, eps2) -> bool:
    """Sufficient test for ``O(V, eps) ⊆ O(W, eps2)``: ``V ⊆ W`` and ``eps <= eps2``."""
    return V.subset_of(W) and as_rational(eps) <= as_rational(eps2)
