"""Step functions on J = [0, 1) with values in a gyrogroup, and the
gyrogroup they form under pointwise operations.

Breakpoints are exact :class:`fractions.Fraction` values, so every measure
computed here is an exact rational.
"""

from __future__ import annotations

import bisect
import math
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Sequence

from .core import ContinuousGyrogroup, Gyrogroup, Neighborhood, contains
from .errors import SchemaError, StepFunctionError, VerificationError
from .rational import as_rational, format_rational

ZERO = Fraction(0)
ONE = Fraction(1)

Partition = tuple  # sorted, deduplicated Fractions from 0 to 1


class StepFunction:
    """A canonical piecewise-constant map ``[0, 1) -> G``.

    ``values[k]`` is taken on ``[breakpoints[k], breakpoints[k+1])``.
    Adjacent equal values (under the instance's equality) are merged at
    construction, keeping the leftmost value of each run.
    """

    __slots__ = ("instance", "breakpoints", "values")

    def __init__(self, instance: Gyrogroup, breakpoints: Iterable, values: Iterable):
        bps = tuple(as_rational(b) for b in breakpoints)
        vals = tuple(instance.check(v) for v in values)
        if len(bps) < 2 or bps[0] != ZERO or bps[-1] != ONE:
            raise StepFunctionError("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise StepFunctionError("breakpoints must be strictly increasing")
        if len(vals) != len(bps) - 1:
            raise StepFunctionError(
                f"{len(bps) - 1} intervals but {len(vals)} values")
        out_b = [bps[0]]
        out_v = [vals[0]]
        for b, v in zip(bps[1:-1], vals[1:]):
            if instance.eq(out_v[-1], v):
                continue
            out_b.append(b)
            out_v.append(v)
        out_b.append(ONE)
        self.instance = instance
        self.breakpoints = tuple(out_b)
        self.values = tuple(out_v)

    def __call__(self, r) -> object:
        r = as_rational(r)
        if not ZERO <= r < ONE:
            raise StepFunctionError(f"{r} is outside [0, 1)")
        return self.values[bisect.bisect_right(self.breakpoints, r) - 1]

    def intervals(self):
        """Yield ``(lo, hi, value)`` for each maximal constant piece."""
        return zip(self.breakpoints, self.breakpoints[1:], self.values)

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        if self.instance != other.instance:
            return False
        if self.instance.exact:
            return self.breakpoints == other.breakpoints and self.values == other.values
        return all(self.instance.eq(u, v) for _, _, (u, v) in aligned(self, other))

    def __hash__(self):
        if self.instance.exact:
            return hash((self.breakpoints, self.values))
        return hash(self.instance)

    def __repr__(self):
        pieces = ", ".join(f"[{format_rational(lo)},{format_rational(hi)}):{v!r}"
                           for lo, hi, v in self.intervals())
        return f"StepFunction({pieces})"

    # JSON ----------------------------------------------------------------

    def to_json(self) -> dict:
        G = self.instance
        return {
            "instance": G.to_config(),
            "breakpoints": [format_rational(b) for b in self.breakpoints],
            "values": [G.element_to_json(v) for v in self.values],
        }

    @classmethod
    def from_json(cls, obj, instance: Gyrogroup | None = None) -> "StepFunction":
        from .core import instance_from_config

        if not isinstance(obj, dict) or not {"breakpoints", "values"} <= set(obj):
            raise SchemaError("step function JSON needs 'breakpoints' and 'values'")
        if instance is None:
            if "instance" not in obj:
                raise SchemaError("step function JSON needs an 'instance'")
            instance = instance_from_config(obj["instance"])
        elif "instance" in obj and instance_from_config(obj["instance"]) != instance:
            raise SchemaError("step function instance does not match")
        bps, vals = obj["breakpoints"], obj["values"]
        if not isinstance(bps, list) or not isinstance(vals, list):
            raise SchemaError("'breakpoints' and 'values' must be lists")
        if any(not isinstance(b, (str, int)) or isinstance(b, bool) for b in bps):
            raise SchemaError("breakpoints must be 'p/q' strings")
        try:
            return cls(instance, [as_rational(b) for b in bps],
                       [instance.element_from_json(v) for v in vals])
        except StepFunctionError as exc:
            raise SchemaError(str(exc)) from exc


# --------------------------------------------------------------------------
# partitions


def common_refinement(*partitions: Sequence[Fraction]) -> Partition:
    return tuple(sorted(set().union(*partitions)))


def aligned(*fs: StepFunction, partition: Sequence[Fraction] | None = None):
    """Walk the common refinement of ``fs`` (or a given finer partition),
    yielding ``(lo, hi, (f1(lo), f2(lo), ...))``."""
    G = fs[0].instance
    for f in fs[1:]:
        if f.instance != G:
            raise StepFunctionError("step functions over different instances")
    if partition is None:
        partition = common_refinement(*(f.breakpoints for f in fs))
    else:
        partition = tuple(partition)
        needed = set().union(*(f.breakpoints for f in fs))
        if not needed <= set(partition):
            raise StepFunctionError("partition does not refine the step functions")
    idx = [0] * len(fs)
    for lo, hi in zip(partition, partition[1:]):
        for i, f in enumerate(fs):
            while f.breakpoints[idx[i] + 1] <= lo:
                idx[i] += 1
        yield lo, hi, tuple(f.values[i] for f, i in zip(fs, idx))


def pointwise(fn: Callable, *fs: StepFunction, instance: Gyrogroup | None = None) -> StepFunction:
    """Apply ``fn`` to the values of ``fs`` on their common refinement."""
    G = instance if instance is not None else fs[0].instance
    bps, vals = [ZERO], []
    for _, hi, xs in aligned(*fs):
        bps.append(hi)
        vals.append(fn(*xs))
    return StepFunction(G, bps, vals)


def refine_points(f: StepFunction, extra: Iterable) -> Partition:
    """A partition refining ``f`` by the rational points in ``extra``."""
    pts = {as_rational(p) for p in extra}
    if any(not ZERO <= p <= ONE for p in pts):
        raise StepFunctionError("refinement points must lie in [0, 1]")
    return common_refinement(f.breakpoints, pts)


# --------------------------------------------------------------------------
# gyrogroup operations


def embed_const(G: Gyrogroup, x) -> StepFunction:
    """The constant step function with value ``x``."""
    return StepFunction(G, (ZERO, ONE), (x,))


def zero(G: Gyrogroup) -> StepFunction:
    return embed_const(G, G.identity)


def is_constant(f: StepFunction) -> bool:
    return len(f.values) == 1


def add(f: StepFunction, g: StepFunction) -> StepFunction:
    return pointwise(f.instance.op, f, g)


def neg(f: StepFunction) -> StepFunction:
    return pointwise(f.instance.inverse, f)


def sub(f: StepFunction, g: StepFunction) -> StepFunction:
    return add(f, neg(g))


def gyr_sf(f: StepFunction, g: StepFunction, h: StepFunction) -> StepFunction:
    """``gyr[f, g](h) = ⊖(f ⊕ g) ⊕ (f ⊕ (g ⊕ h))`` computed with the lifted
    operations."""
    return add(neg(add(f, g)), add(f, add(g, h)))


def coadd_sf(f: StepFunction, g: StepFunction) -> StepFunction:
    return add(f, gyr_sf(f, neg(g), g))


def cosub_sf(f: StepFunction, g: StepFunction) -> StepFunction:
    return coadd_sf(f, neg(g))


class StepExtension(Gyrogroup):
    """The gyrogroup of step functions over ``base``, so that generic code
    written against :class:`Gyrogroup` runs on it unchanged."""

    kind = "step"

    def __init__(self, base: Gyrogroup):
        self.base = base
        self.exact = base.exact
        self.tol = base.tol
        self.identity = zero(base)

    def check(self, f):
        if not isinstance(f, StepFunction) or f.instance != self.base:
            raise StepFunctionError(f"{f!r} is not a step function over {self.base!r}")
        return f

    def op(self, f, g):
        return add(self.check(f), self.check(g))

    def inverse(self, f):
        return neg(self.check(f))

    def gyr(self, f, g, h):
        return gyr_sf(self.check(f), self.check(g), self.check(h))

    def eq(self, f, g):
        return f == g

    def __eq__(self, other):
        return isinstance(other, StepExtension) and other.base == self.base

    def __hash__(self):
        return hash(("step", self.base))

    def __repr__(self):
        return f"StepExtension({self.base!r})"


# --------------------------------------------------------------------------
# measure and basic neighborhoods O(V, eps)


def _positive_eps(eps) -> Fraction:
    eps = as_rational(eps)
    if eps <= 0:
        raise StepFunctionError(f"eps must be positive, got {eps}")
    return eps


def bad_measure(f: StepFunction, V: Neighborhood) -> Fraction:
    """Exact Lebesgue measure of ``{r : f(r) not in V}``."""
    G = f.instance
    return sum((hi - lo for lo, hi, x in f.intervals() if not contains(G, V, x)), ZERO)


def in_neighborhood(f: StepFunction, V: Neighborhood, eps) -> bool:
    """``f ∈ O(V, eps)``, i.e. ``bad_measure(f, V) < eps`` (strict)."""
    return bad_measure(f, V) < _positive_eps(eps)


def in_translate(g: StepFunction, f: StepFunction, V: Neighborhood, eps) -> bool:
    """``g ∈ f ⊕ O(V, eps)``, decided as ``(⊖f) ⊕ g ∈ O(V, eps)``."""
    return in_neighborhood(add(neg(f), g), V, eps)


def disagreement(f: StepFunction, g: StepFunction) -> Fraction:
    """Exact measure of ``{r : f(r) != g(r)}``."""
    G = f.instance
    return sum((hi - lo for lo, hi, (x, y) in aligned(f, g) if not G.eq(x, y)), ZERO)


# --------------------------------------------------------------------------
# path to the identity


def path(f: StepFunction, t) -> StepFunction:
    """Point ``t`` of the path from ``0•`` to ``f``: on each piece
    ``[a_k, a_{k+1})`` keep ``f`` up to ``a_k + t (a_{k+1} - a_k)`` and use the
    identity afterwards."""
    t = as_rational(t)
    if not ZERO <= t <= ONE:
        raise StepFunctionError(f"path parameter must lie in [0, 1], got {t}")
    G = f.instance
    if t == 0:
        return zero(G)
    if t == 1:
        return f
    bps, vals = [ZERO], []
    for lo, hi, x in f.intervals():
        bps += [lo + t * (hi - lo), hi]
        vals += [x, G.identity]
    return StepFunction(G, bps, vals)


# --------------------------------------------------------------------------
# construction from a tuple of values and cuts


def from_parts(G: Gyrogroup, values: Sequence, cuts: Sequence) -> StepFunction:
    """Value ``values[k]`` on ``[a_k, a_{k+1})`` with ``a_0 = 0`` and
    ``a_{n+1} = 1``; ``cuts`` are ``a_1 < ... < a_n`` inside (0, 1)."""
    cuts = [as_rational(a) for a in cuts]
    if len(values) != len(cuts) + 1:
        raise StepFunctionError(
            f"{len(values)} values need {len(values) - 1} cuts, got {len(cuts)}")
    if any(not ZERO < a < ONE for a in cuts):
        raise StepFunctionError("cuts must lie strictly inside (0, 1)")
    if any(a >= b for a, b in zip(cuts, cuts[1:])):
        raise StepFunctionError("cuts must be strictly increasing")
    return StepFunction(G, [ZERO, *cuts, ONE], values)


def min_gap(f: StepFunction) -> Fraction:
    return min(hi - lo for lo, hi in zip(f.breakpoints, f.breakpoints[1:]))


def in_compact_piece(cuts: Sequence, m: int) -> bool:
    """Whether the cut tuple lies in A_{n,m}: consecutive gaps (with 0 and 1
    appended) all at least ``1/m``."""
    pts = [ZERO, *(as_rational(a) for a in cuts), ONE]
    return all(b - a >= Fraction(1, m) for a, b in zip(pts, pts[1:]))


# --------------------------------------------------------------------------
# closedness of the constant functions


class SeparationWitness(NamedTuple):
    V: Neighborhood
    eps: Fraction


def _separating_ball(G: ContinuousGyrogroup, x1, x2, max_halvings: int = 40) -> float:
    """Radius rho with ``(x1 ⊕ ball(rho)) ∩ (x2 ⊕ ball(rho)) = ∅`` on a sample grid."""
    rho = G.norm(G.op(G.inverse(x1), x2)) / 4
    for _ in range(max_halvings):
        grid = G.ball_grid(rho)
        # x1 ⊕ v = x2 ⊕ w forces w = ⊖x2 ⊕ (x1 ⊕ v)
        if all(G.norm(G.op(G.inverse(x2), G.op(x1, v))) >= rho for v in grid):
            return rho
        rho /= 2
    raise VerificationError("no separating ball found")


def separation_witness(f: StepFunction) -> SeparationWitness:
    """For non-constant ``f``, a symmetric V and eps with ``f ⊕ g`` non-constant
    for every ``g ∈ O(V, eps)``.

    The two pieces used are the longest piece and the longest piece holding a
    different value (leftmost on ties); eps is the shorter of their lengths.
    """
    if is_constant(f):
        raise StepFunctionError("f is constant; it lies in the embedded copy of G")
    G = f.instance
    pieces = list(f.intervals())
    first = max(pieces, key=lambda p: (p[1] - p[0], -p[0]))
    second = max((p for p in pieces if not G.eq(p[2], first[2])),
                 key=lambda p: (p[1] - p[0], -p[0]))
    eps = min(first[1] - first[0], second[1] - second[0])
    if G.exact:
        V = Neighborhood.finite(G, [G.identity])
    else:
        V = Neighborhood.ball(_separating_ball(G, first[2], second[2]))
    return SeparationWitness(V, eps)


def hausdorff_witness(f: StepFunction) -> tuple[Neighborhood, Fraction]:
    """For ``f != 0•``, U and eps with ``f ∉ O(U, eps) ⊟ O(U, eps)``.

    U is chosen so that ``U ⊟ U`` misses every non-identity value of ``f``;
    eps is half the measure of ``{f != 0}``. Halving is needed: two members of
    ``O(U, m)`` can leave U on disjoint sets of total measure up to ``2m``.
    """
    G = f.instance
    support = sum((hi - lo for lo, hi, x in f.intervals() if not G.is_identity(x)), ZERO)
    if support == 0:
        raise StepFunctionError("f is the identity")
    if G.exact:
        U = Neighborhood.finite(G, [G.identity])
    else:
        m = min(G.norm(x) for x in f.values if not G.is_identity(x))
        # ‖a ⊟ b‖ ≤ ‖a‖ ⊕ ‖b‖ < m once rho ⊕ rho < m
        rho = m / 4
        while G.scalar_add(rho, rho) >= m:
            rho /= 2
        U = Neighborhood.ball(rho)
    return U, support / 2


def finite_grid(denominator: int) -> Partition:
    return tuple(Fraction(k, denominator) for k in range(denominator + 1))


def from_grid_values(G: Gyrogroup, values: Sequence, denominator: int | None = None) -> StepFunction:
    """Step function taking ``values[k]`` on ``[k/n, (k+1)/n)``."""
    n = denominator or len(values)
    return StepFunction(G, finite_grid(n), values)


def dyadic_shift(cuts: Sequence[Fraction], budget: Fraction) -> list[Fraction]:
    """Rational ``b_k`` with ``a_k <= b_k < a_{k+1}`` and ``Σ (b_k - a_k) < budget``.

    ``cuts`` is the full partition ``0 = a_0 < ... < a_n = 1``; the interior
    cuts are rounded up to the coarsest dyadic grid ``1/2^j`` that keeps both
    constraints. ``b_0 = 0`` and ``b_n = 1`` are kept.
    """
    cuts = [as_rational(a) for a in cuts]
    interior = cuts[1:-1]
    if not interior:
        return list(cuts)
    gap = min(b - a for a, b in zip(cuts, cuts[1:]))
    j = 0
    while True:
        q = 2 ** j
        if Fraction(1, q) <= gap:
            shifted = [Fraction(math.ceil(a * q), q) for a in interior]
            if sum((b - a for a, b in zip(interior, shifted)), ZERO) < budget:
                return [ZERO, *shifted, ONE]
        j += 1
