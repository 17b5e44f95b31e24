"""Bounded pseudometrics on a gyrogroup and their extension to step functions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .core import ContinuousGyrogroup, FiniteGyrogroup, Gyrogroup, Neighborhood
from .errors import SchemaError, StepFunctionError
from .rational import as_rational
from .step import StepFunction, aligned, in_translate


@dataclass(frozen=True)
class Pseudometric:
    """A bounded pseudometric ``d`` on the carrier of ``instance``.

    ``modulus(x, eps)`` returns a neighborhood V with ``d(x, x ⊕ y) < eps``
    for every ``y`` in V. ``inner_radius(x, V)`` returns ``delta > 0`` with
    ``{u : d(x, u) < delta} ⊆ x ⊕ V``. Either may be None.
    """

    name: str
    instance: Gyrogroup
    d: Callable
    bound: float
    modulus: Callable | None = None
    inner_radius: Callable | None = None

    def __call__(self, x, y):
        return self.d(x, y)


def discrete_metric(G: FiniteGyrogroup) -> Pseudometric:
    """``d(x, y) = 0`` if ``x == y`` else 1, as integers so sums stay exact."""

    def d(x, y):
        return 0 if x == y else 1

    return Pseudometric(
        name="discrete",
        instance=G,
        d=d,
        bound=1,
        modulus=lambda x, eps: Neighborhood.finite(G, [G.identity]),
        inner_radius=lambda x, V: 1,
    )


def euclidean_metric(G: ContinuousGyrogroup) -> Pseudometric:
    """Chord distance truncated at 1, ``min(|x - y|, 1)``.

    Truncation keeps the topology and gives bound 1, which the continuity
    estimate for ``d•`` needs (the mass where ``g`` leaves ``f ⊕ V`` is
    weighted by the bound).
    """

    def d(x, y):
        return min(G.distance(x, y), 1.0)

    def modulus(x, eps):
        # Solve translate_extent(x, rho) = eps for rho; strict inequality for |y| < rho.
        s = G.norm(x)
        if G.kind == "mobius":
            rho = eps / (1 - s * s + eps * s)
        else:
            rho = eps / (1 + eps * s / G.c ** 2)
        return Neighborhood.ball(min(rho, G.radius) * (1 - 1e-9))

    def inner_radius(x, V):
        # ‖⊖x ⊕ u‖ ≤ |u - x| / (1 - ‖x‖/c) for both instances
        if not V.is_ball:
            raise TypeError("continuous inner radius needs a ball neighborhood")
        return min(V.radius * (1 - G.norm(x) / G.radius), 1.0) * (1 - 1e-9)

    return Pseudometric(
        name="euclidean",
        instance=G,
        d=d,
        bound=1,
        modulus=modulus,
        inner_radius=inner_radius,
    )


def metric_by_name(G: Gyrogroup, name: str) -> Pseudometric:
    if name == "discrete":
        if not isinstance(G, FiniteGyrogroup):
            raise SchemaError("the discrete metric is for finite instances")
        return discrete_metric(G)
    if name == "euclidean":
        if not isinstance(G, ContinuousGyrogroup):
            raise SchemaError("the euclidean metric is for the disk and the ball")
        return euclidean_metric(G)
    raise SchemaError(f"unknown metric {name!r}")


def d_bullet(d: Pseudometric, f: StepFunction, g: StepFunction,
             partition: Sequence[Fraction] | None = None):
    """``Σ (a_{k+1} - a_k) d(x_k, y_k)`` over a partition on which both ``f``
    and ``g`` are constant (their common refinement unless one is given).

    Exact (a Fraction) when ``d`` returns integers or Fractions.
    """
    if f.instance != d.instance or g.instance != d.instance:
        raise StepFunctionError("metric and step functions over different instances")
    return sum(((hi - lo) * d(x, y) for lo, hi, (x, y) in aligned(f, g, partition=partition)),
               Fraction(0))


def conforming_delta0(d: Pseudometric, f: StepFunction, V: Neighborhood, eps) -> Fraction | float:
    """``delta0 = eps * delta`` with delta the smallest inner radius over the
    values of ``f``, so that ``d•(f, g) < delta0`` forces ``g ∈ f ⊕ O(V, eps)``."""
    if d.inner_radius is None:
        raise SchemaError(f"metric {d.name!r} has no inner radius")
    eps = as_rational(eps)
    delta = min(d.inner_radius(x, V) for x in f.values)
    return eps * delta


def metric_topology_check(d: Pseudometric, f: StepFunction, V: Neighborhood, eps, delta0,
                          samples: int | Iterable[StepFunction],
                          rng: random.Random | None = None) -> bool:
    """True iff every tested ``g`` with ``d•(f, g) < delta0`` lies in
    ``f ⊕ O(V, eps)``.

    ``samples`` is either a count of random step functions drawn near ``f``
    or an explicit iterable of candidates (for exhaustive scans).
    """
    from .sampling import sample_near

    if not delta0 > 0:
        raise SchemaError("delta0 must be positive")
    eps = as_rational(eps)
    if isinstance(samples, int):
        if samples <= 0:
            raise SchemaError("at least one sample is required")
        rng = rng or random.Random(0)
        scale = delta0 / d.bound
        candidates = (sample_near(f, rng, measure=Fraction(scale).limit_denominator(10 ** 6) * 2)
                      for _ in range(samples))
    else:
        candidates = samples
    for g in candidates:
        if d_bullet(d, f, g) < delta0 and not in_translate(g, f, V, eps):
            return False
    return True


def continuity_check(d: Pseudometric, f: StepFunction, eps, samples: int,
                     rng: random.Random | None = None) -> bool:
    """For V from the modulus at ``eps/2``, sampled ``g ∈ f ⊕ O(V, eps/2)``
    satisfy ``d•(f, g) < eps``."""
    from .sampling import sample_translate_member

    if d.modulus is None:
        raise SchemaError(f"metric {d.name!r} has no continuity modulus")
    eps = as_rational(eps)
    rng = rng or random.Random(0)
    V = _meet(d.instance, [d.modulus(x, eps / 2) for x in f.values])
    for _ in range(samples):
        g = sample_translate_member(f, V, eps / 2, rng)
        if not d_bullet(d, f, g) < eps:
            return False
    return True


def _meet(G: Gyrogroup, Vs: list[Neighborhood]) -> Neighborhood:
    out = Vs[0]
    for V in Vs[1:]:
        out = out.intersect(V)
    return out
