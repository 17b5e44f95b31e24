import random
from fractions import Fraction as F

import pytest

from gyrostep.core import CyclicGroup, EinsteinBall, MobiusDisk, Neighborhood
from gyrostep.errors import DensityError, SchemaError, StepFunctionError
from gyrostep.sampling import random_step, sample_member
from gyrostep.step import StepFunction, embed_const, from_parts, in_neighborhood, in_translate, zero
from gyrostep.witness import (DenseSpec, NetworkSet, NetworkSpec, QSet, base_included,
                              build_q_set, cover_check, covers, densify, density_check,
                              local_base, narrow_cover_witness, point_in_translate,
                              q_bad_measure, q_set_member, sample_q_member, translate_containing)

Z5 = CyclicGroup(5)
MOB = MobiusDisk()


# -- dense families --------------------------------------------------------


def test_grid_enumeration():
    D = DenseSpec.grid(MOB, 1)
    pts = list(D)
    assert pts == sorted(pts, key=lambda z: (z.real, z.imag))
    assert set(pts) == {complex(x, y) for x in (-0.5, 0, 0.5) for y in (-0.5, 0, 0.5)}
    with pytest.raises(SchemaError):
        DenseSpec.grid(MOB, -1)
    with pytest.raises(SchemaError):
        DenseSpec.finite(Z5, [])


def test_einstein_grid_count():
    # all 27 points of {-1/2, 0, 1/2}^3 lie inside the unit ball (max norm √3/2)
    assert len(list(DenseSpec.grid(EinsteinBall(c=1.0), 1))) == 27


def test_densify_finite_identity_cases():
    rng = random.Random(0)
    D = DenseSpec.finite(Z5)
    for _ in range(20):
        f = random_step(Z5, rng)
        V = Neighborhood.finite(Z5, [rng.randrange(5)])
        assert densify(f, D, V, F(1, 7)) == f


def test_densify_already_d_valued():
    D = DenseSpec.finite(Z5, [0, 2, 4])
    f = from_parts(Z5, [2, 4, 0], [F(1, 3), F(3, 4)])
    assert densify(f, D, Neighborhood.finite(Z5, [1]), F(1, 5)) == f


def test_densify_mobius_example():
    f = embed_const(MOB, 0.30000001 + 0j)
    D = DenseSpec.grid(MOB, 6)
    V = Neighborhood.ball(0.01)
    g = densify(f, D, V, F(1, 8))
    assert g == embed_const(MOB, 19 / 64 + 0j)
    assert in_translate(g, f, V, F(1, 8))


def test_densify_shift_moves_cuts_to_dyadics():
    f = from_parts(Z5, [1, 2, 3], [F(1, 3), F(5, 7)])
    g = densify(f, DenseSpec.finite(Z5), Neighborhood.finite(Z5, []), F(1, 10), shift=True)
    assert all((b.denominator & (b.denominator - 1)) == 0 for b in g.breakpoints)
    assert in_translate(g, f, Neighborhood.finite(Z5, []), F(1, 10))


def test_densify_failure_raises():
    D = DenseSpec.finite(Z5, [0])
    f = embed_const(Z5, 3)
    with pytest.raises(DensityError):
        densify(f, D, Neighborhood.finite(Z5, [1]), F(1, 2))
    assert not density_check(D, Neighborhood.finite(Z5, [1]))
    with pytest.raises(DensityError):
        densify(embed_const(MOB, 0.4 + 0j), DenseSpec.grid(MOB, 2), Neighborhood.ball(0.01), F(1, 2))


def test_densify_instance_mismatch():
    with pytest.raises(StepFunctionError):
        densify(embed_const(Z5, 1), DenseSpec.finite(CyclicGroup(7)), Neighborhood.finite(Z5, []), F(1, 2))


# -- narrow covers -----------------------------------------------------------


def test_cover_examples():
    D = DenseSpec.finite(Z5, [0, 2, 4])
    V = Neighborhood(members=frozenset({0, 1}))
    assert translate_containing(D, 3, V) == 2
    g = narrow_cover_witness(embed_const(Z5, 3), D, V, F(1, 4))
    assert g == embed_const(Z5, 2)
    assert Z5.op(2, 1) == 3
    assert narrow_cover_witness(zero(Z5), D, V, F(1, 4)) == zero(Z5)


def test_cover_precondition():
    D = DenseSpec.finite(Z5, [0])
    V = Neighborhood.finite(Z5, [1])
    assert not cover_check(D, V)
    with pytest.raises(DensityError):
        narrow_cover_witness(embed_const(Z5, 0), D, V, F(1, 2))
    with pytest.raises(SchemaError):
        translate_containing(D, 0, V, side="middle")


@pytest.mark.parametrize("side", ["left", "right"])
def test_cover_sides_mobius(side):
    rng = random.Random(8)
    D = DenseSpec.grid(MOB, 5)
    for _ in range(20):
        f = random_step(MOB, rng, value=lambda r: MOB.random_element(r, max_norm=0.6))
        V = Neighborhood.ball(0.15)
        eps = F(rng.randint(1, 9), 10)
        g = narrow_cover_witness(f, D, V, eps, side=side, shift=rng.random() < 0.5)
        assert covers(f, g, V, eps, side)
        assert all(v in set(D) for v in g.values)


def test_right_cover_on_einstein():
    G = EinsteinBall(c=1.0)
    D = DenseSpec.grid(G, 3)
    V = Neighborhood.ball(0.3)
    rng = random.Random(9)
    f = random_step(G, rng, value=lambda r: G.random_element(r, max_norm=0.5))
    g = narrow_cover_witness(f, D, V, F(1, 3), side="right")
    assert covers(f, g, V, F(1, 3), "right")


def test_point_in_translate_order():
    D = DenseSpec.finite(Z5, [4, 2, 0])
    assert point_in_translate(D, 3, Neighborhood.finite(Z5, [1])) == 4
    assert point_in_translate(D, 2, Neighborhood.finite(Z5, [2])) == 2
    assert 0.25 + 0.5j in DenseSpec.grid(MOB, 2)
    assert 0.3 + 0j not in DenseSpec.grid(MOB, 2)
    assert 1 + 0j not in DenseSpec.grid(MOB, 0)


# -- networks and Q-sets -----------------------------------------------------


def test_network_choose_sandwich():
    rng = random.Random(10)
    net = NetworkSpec.grid(MOB, 6, 10)
    for _ in range(100):
        x = MOB.random_element(rng, max_norm=0.8)
        V = Neighborhood.ball(rng.uniform(0.05, 0.4))
        P = net.choose(x, V)
        assert P.contains(MOB, x)
        for _ in range(20):
            y = MOB.op(P.center, MOB.random_element(rng, max_norm=float(P.radius)))
            if P.contains(MOB, y):
                assert MOB.norm(MOB.op(MOB.inverse(x), y)) < V.radius


def test_network_choose_fails_gracefully():
    net = NetworkSpec.grid(MOB, 2, 2)
    with pytest.raises(DensityError):
        net.choose(0.3 + 0.1j, Neighborhood.ball(0.01))


def test_q_set_examples():
    P = (NetworkSet(members=frozenset({2})), NetworkSet(members=frozenset({3})))
    b = (F(1, 2), F(1))
    inside = from_parts(Z5, [2, 3], [F(1, 2)])
    assert q_bad_measure(inside, b, P) == 0
    assert q_set_member(inside, 4, b, P)
    first_block_bad = from_parts(Z5, [1, 3], [F(1, 2)])
    assert q_bad_measure(first_block_bad, b, P) == F(1, 2)
    assert not q_set_member(first_block_bad, 2, b, P)
    almost = from_parts(Z5, [1, 2, 3], [F(1, 5), F(1, 2)])
    assert q_set_member(almost, 4, b, P) and not q_set_member(almost, 5, b, P)
    with pytest.raises(StepFunctionError):
        q_bad_measure(inside, (F(1, 2),), P)
    with pytest.raises(StepFunctionError):
        q_set_member(inside, 0, b, P)


def test_build_q_set_finite():
    f = from_parts(Z5, [2, 3], [F(1, 3)])
    Q = build_q_set(f, Neighborhood.finite(Z5, []), F(1, 4), NetworkSpec.finite(Z5))
    assert Q.n == 10 and Q.m == 2
    assert Q.b[-1] == 1 and Q.b[0] - F(1, 3) < F(1, 10)
    assert f in Q


@pytest.mark.parametrize("G", [Z5, MOB], ids=["Z5", "mobius"])
def test_q_set_sandwich_sampled(G):
    rng = random.Random(12)
    net = NetworkSpec.finite(G) if G.exact else NetworkSpec.grid(G, 6, 10)
    for _ in range(20):
        V = Neighborhood.finite(G, [rng.randrange(5)]) if G.exact else Neighborhood.ball(0.2)
        f = random_step(G, rng, value=lambda r: G.random_element(r, max_norm=0.7))
        eps = F(rng.randint(1, 9), 10)
        Q = build_q_set(f, V, eps, net)
        for _ in range(10):
            assert in_translate(sample_q_member(Q, G, rng), f, V, eps)


# -- countable local base ----------------------------------------------------


def test_local_base_monotone():
    Vs = [Neighborhood.finite(Z5, []), Neighborhood.finite(Z5, [1]), Neighborhood.finite(Z5, [1, 2])]
    base = list(local_base(Vs, 6))
    assert len(base) == 18
    rng = random.Random(13)
    for (V, e), (W, e2) in ((p, q) for p in base for q in base):
        if base_included(V, e, W, e2):
            for _ in range(5):
                f = sample_member(Z5, V, e, rng)
                assert in_neighborhood(f, W, e2)
    assert not base_included(Vs[1], F(1, 2), Vs[0], F(1, 2))
    assert not base_included(Vs[0], F(1, 2), Vs[1], F(1, 3))


def test_qset_dataclass_contains():
    Q = QSet(1, 3, (F(1),), (NetworkSet(members=frozenset({1})),))
    assert embed_const(Z5, 1) in Q
    assert StepFunction(Z5, [0, F(1, 4), 1], [0, 1]) in Q
    assert StepFunction(Z5, [0, F(1, 3), 1], [0, 1]) not in Q
