import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gyrostep.core import CyclicGroup, EinsteinBall, MobiusDisk, Neighborhood
from gyrostep.errors import SchemaError, StepFunctionError
from gyrostep.metric import (conforming_delta0, continuity_check, d_bullet, discrete_metric,
                             euclidean_metric, metric_by_name, metric_topology_check)
from gyrostep.sampling import enumerate_grid, grid_functions, random_step
from gyrostep.step import StepFunction, embed_const, from_parts, in_translate, zero

Z5 = CyclicGroup(5)
MOB = MobiusDisk()
DISC = discrete_metric(Z5)


def test_discrete_example():
    f = from_parts(Z5, [2, 3], [F(1, 2)])
    assert d_bullet(DISC, f, embed_const(Z5, 2)) == F(1, 2)
    assert d_bullet(DISC, f, f) == 0


def test_constants_extend_d():
    for x, y in itertools.product(range(5), repeat=2):
        assert d_bullet(DISC, embed_const(Z5, x), embed_const(Z5, y)) == DISC(x, y)
    E = euclidean_metric(MOB)
    assert d_bullet(E, embed_const(MOB, 0.1j), embed_const(MOB, 0.4j)) == pytest.approx(0.3)


def test_positive_on_distinct():
    fs = grid_functions(Z5, (1, 2, 3))
    for f, g in itertools.combinations(fs[:60], 2):
        assert d_bullet(DISC, f, g) > 0


def test_pseudometric_axioms_euclidean_sampled():
    E = euclidean_metric(MOB)
    rng = random.Random(2)
    for _ in range(200):
        f, g, h = (random_step(MOB, rng) for _ in range(3))
        assert d_bullet(E, f, g) == pytest.approx(d_bullet(E, g, f))
        assert d_bullet(E, f, h) <= d_bullet(E, f, g) + d_bullet(E, g, h) + 1e-12
        assert 0 <= d_bullet(E, f, g) <= E.bound


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(0, 1, max_denominator=40), max_size=6))
def test_refinement_invariance(extra):
    rng = random.Random(len(extra))
    f, g = random_step(Z5, rng), random_step(Z5, rng)
    part = sorted({*f.breakpoints, *g.breakpoints, *extra, F(0), F(1)})
    assert d_bullet(DISC, f, g, partition=part) == d_bullet(DISC, f, g)


def test_partition_must_refine():
    f = from_parts(Z5, [2, 3], [F(1, 3)])
    with pytest.raises(StepFunctionError):
        d_bullet(DISC, f, zero(Z5), partition=[F(0), F(1, 2), F(1)])


def test_metric_by_name():
    assert metric_by_name(Z5, "discrete").name == "discrete"
    assert metric_by_name(MOB, "euclidean").bound == 1
    with pytest.raises(SchemaError):
        metric_by_name(MOB, "discrete")
    with pytest.raises(SchemaError):
        metric_by_name(Z5, "euclidean")
    with pytest.raises(SchemaError):
        metric_by_name(Z5, "taxicab")


def test_topology_check_proof_delta():
    V = Neighborhood.finite(Z5, [])
    eps = F(1, 2)
    delta0 = conforming_delta0(DISC, zero(Z5), V, eps)
    assert delta0 == F(1, 2)
    assert metric_topology_check(DISC, zero(Z5), V, eps, delta0, samples=enumerate_grid(Z5, 4))


def test_topology_check_bound_delta_fails():
    # δ₀ equal to the bound lets g differ from f on half of [0,1) while eps is tiny
    V = Neighborhood.finite(Z5, [])
    assert not metric_topology_check(DISC, zero(Z5), V, F(1, 100), DISC.bound,
                                     samples=enumerate_grid(Z5, 4))


def test_topology_check_sampled_continuous():
    E = euclidean_metric(MOB)
    rng = random.Random(11)
    for _ in range(30):
        f = random_step(MOB, rng, value=lambda r: MOB.random_element(r, max_norm=0.8))
        V = Neighborhood.ball(rng.uniform(0.05, 0.3))
        eps = F(rng.randint(1, 9), 10)
        delta0 = conforming_delta0(E, f, V, eps)
        assert metric_topology_check(E, f, V, eps, delta0, samples=20, rng=rng)


def test_inner_radius_forces_translate_membership():
    # d(x, u) < δ implies ⊖x ⊕ u in V, checked on random points
    rng = random.Random(5)
    for G in (MOB, EinsteinBall(c=1.0), EinsteinBall(c=3.0)):
        E = euclidean_metric(G)
        for _ in range(500):
            x = G.random_element(rng, max_norm=0.9)
            V = Neighborhood.ball(rng.uniform(0.01, 0.5) * G.radius)
            delta = E.inner_radius(x, V)
            step = [rng.gauss(0, 1) for _ in G.coords(x)]
            scale = delta * rng.random() / max(sum(s * s for s in step) ** 0.5, 1e-300)
            u = G.from_coords([c + scale * s for c, s in zip(G.coords(x), step)])
            assert E(x, u) < delta
            assert G.norm(G.op(G.inverse(x), u)) < V.radius


def test_modulus_bounds_distance():
    rng = random.Random(6)
    for G in (MOB, EinsteinBall(c=2.0)):
        E = euclidean_metric(G)
        for _ in range(500):
            x = G.random_element(rng, max_norm=0.9)
            eps = rng.uniform(0.001, 0.5)
            V = E.modulus(x, eps)
            y = G.random_element(rng, max_norm=min(V.radius / G.radius, 0.99))
            if G.norm(y) < V.radius:
                assert E(x, G.op(x, y)) < eps


@pytest.mark.parametrize("G", [Z5, MOB], ids=["Z5", "mobius"])
def test_continuity_check(G):
    d = metric_by_name(G, "discrete" if G.exact else "euclidean")
    rng = random.Random(7)
    for _ in range(20):
        f = random_step(G, rng)
        assert continuity_check(d, f, F(rng.randint(1, 9), 10), samples=20, rng=rng)


def test_topology_sampled_members_inside_translate():
    # sanity for the sampler used by the check: candidates stay near f
    f = from_parts(Z5, [1, 3], [F(1, 2)])
    V = Neighborhood.finite(Z5, [])
    rng = random.Random(0)
    assert metric_topology_check(DISC, f, V, F(1, 3), F(1, 3), samples=200, rng=rng)
    g = StepFunction(Z5, [0, F(1, 2), 1], [1, 3])
    assert in_translate(g, f, V, F(1, 100))
