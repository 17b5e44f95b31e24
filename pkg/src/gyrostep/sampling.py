"""Random and exhaustive generators of elements and step functions.

Every generator takes an explicit ``random.Random`` so results are
reproducible from a seed.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterator

from .core import FiniteGyrogroup, Gyrogroup, Neighborhood, contains
from .rational import as_rational
from .step import ONE, ZERO, StepFunction, add, finite_grid, from_grid_values


def random_partition(rng: random.Random, max_pieces: int = 4, max_denominator: int = 12) -> list[Fraction]:
    q = rng.randint(1, max_denominator)
    k = rng.randint(1, min(max_pieces, q))
    cuts = sorted(rng.sample(range(1, q), k - 1)) if q > 1 else []
    return [ZERO, *(Fraction(c, q) for c in cuts), ONE]


def random_step(G: Gyrogroup, rng: random.Random, max_pieces: int = 4,
                max_denominator: int = 12, value=None) -> StepFunction:
    """A random step function; ``value(rng)`` draws values (default: any element)."""
    value = value or (lambda r: G.random_element(r))
    bps = random_partition(rng, max_pieces, max_denominator)
    return StepFunction(G, bps, [value(rng) for _ in bps[1:]])


def enumerate_grid(G: FiniteGyrogroup, denominator: int) -> Iterator[StepFunction]:
    """Every step function over a finite G that is constant on the cells
    ``[k/n, (k+1)/n)``; each function appears exactly once."""
    for vals in itertools.product(G.elements(), repeat=denominator):
        yield from_grid_values(G, vals, denominator)


def element_in(G: Gyrogroup, V: Neighborhood, rng: random.Random):
    if V.is_ball:
        for _ in range(1000):
            x = G.random_element(rng, max_norm=min(V.radius, 0.95 * G.radius) / G.radius)
            if contains(G, V, x):
                return x
        return G.identity
    return rng.choice(sorted(V.members, key=repr))


def element_outside(G: Gyrogroup, V: Neighborhood, rng: random.Random, max_norm: float = 0.9):
    """A random element not in V, or None when V is everything."""
    if isinstance(G, FiniteGyrogroup):
        rest = [x for x in G.elements() if not contains(G, V, x)]
        return rng.choice(rest) if rest else None
    for _ in range(1000):
        x = G.random_element(rng, max_norm=max_norm)
        if not contains(G, V, x):
            return x
    return None


def sample_member(G: Gyrogroup, V: Neighborhood, eps, rng: random.Random,
                  max_denominator: int = 12) -> StepFunction:
    """A random element of ``O(V, eps)``: values leave V on a set of measure
    strictly below ``eps``."""
    eps = as_rational(eps)
    q = rng.randint(1, max_denominator)
    cells = [(Fraction(k, q), Fraction(k + 1, q)) for k in range(q)]
    used = ZERO
    bad = set()
    for i in rng.sample(range(q), q):
        if used + Fraction(1, q) < eps and rng.random() < 0.5:
            bad.add(i)
            used += Fraction(1, q)
    bps, vals = [ZERO], []
    extra = None
    good = [i for i in range(q) if i not in bad]
    if good and rng.random() < 0.5:
        length = (eps - used) * Fraction(rng.randint(1, 9), 10)
        i = rng.choice(good)
        if length < cells[i][1] - cells[i][0]:
            extra = (i, cells[i][0] + length)
    for i, (lo, hi) in enumerate(cells):
        if extra is not None and extra[0] == i:
            out = element_outside(G, V, rng)
            if out is not None:
                bps.append(extra[1])
                vals.append(out)
        if i in bad:
            out = element_outside(G, V, rng)
            vals.append(out if out is not None else element_in(G, V, rng))
        else:
            vals.append(element_in(G, V, rng))
        bps.append(hi)
    return StepFunction(G, bps, vals)


def sample_translate_member(f: StepFunction, V: Neighborhood, eps, rng: random.Random) -> StepFunction:
    """A random element of ``f ⊕ O(V, eps)``."""
    return add(f, sample_member(f.instance, V, eps, rng))


def sample_near(f: StepFunction, rng: random.Random, measure, jitter: float = 1e-3) -> StepFunction:
    """``f ⊕ h`` where ``h`` is arbitrary on a set of measure at most
    ``measure`` and (for continuous instances) has norm below ``jitter``
    elsewhere."""
    G = f.instance
    measure = as_rational(measure)
    if isinstance(G, FiniteGyrogroup):
        small = Neighborhood.finite(G, [G.identity])
    else:
        small = Neighborhood.ball(jitter)
    q = rng.randint(1, 16)
    bps, vals = [ZERO], []
    budget = min(measure, ONE)
    for k in range(q):
        lo, hi = Fraction(k, q), Fraction(k + 1, q)
        if budget > 0 and rng.random() < 0.3:
            length = min(budget, hi - lo) * Fraction(rng.randint(1, 10), 10)
            budget -= length
            if lo + length < hi:
                bps.append(lo + length)
                vals.append(G.random_element(rng))
            else:
                bps.append(hi)
                vals.append(G.random_element(rng))
                continue
        bps.append(hi)
        vals.append(element_in(G, small, rng))
    return add(f, StepFunction(G, bps, vals))


def grid_functions(G: FiniteGyrogroup, denominators=(1, 2, 3, 4)) -> list[StepFunction]:
    """All distinct step functions constant on the cells of any of the
    given uniform grids."""
    seen = {}
    for n in denominators:
        for f in enumerate_grid(G, n):
            seen.setdefault(f, None)
    return list(seen)


__all__ = [
    "element_in",
    "element_outside",
    "enumerate_grid",
    "finite_grid",
    "grid_functions",
    "random_partition",
    "random_step",
    "sample_member",
    "sample_near",
    "sample_translate_member",
]
