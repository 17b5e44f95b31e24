"""Gyrogroup axioms and derived identities, checked over given elements.

Each check takes an iterable of tuples and returns True when the law holds
on all of them under ``G.eq``. They work for any :class:`Gyrogroup`,
including :class:`~gyrostep.step.StepExtension`.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable

from .core import FiniteGyrogroup, Gyrogroup


def left_identity_and_right_identity(G: Gyrogroup, xs: Iterable) -> bool:
    return all(G.eq(G.op(G.identity, a), a) and G.eq(G.op(a, G.identity), a) for a in xs)


def inverses(G: Gyrogroup, xs: Iterable) -> bool:
    return all(G.is_identity(G.op(G.inverse(a), a)) and G.is_identity(G.op(a, G.inverse(a)))
               for a in xs)


def gyroassociative(G: Gyrogroup, triples: Iterable) -> bool:
    return all(G.eq(G.op(x, G.op(y, z)), G.op(G.op(x, y), G.gyr(x, y, z))) for x, y, z in triples)


def loop_property(G: Gyrogroup, triples: Iterable) -> bool:
    return all(G.eq(G.gyr(G.op(x, y), y, z), G.gyr(x, y, z)) for x, y, z in triples)


def gyr_automorphism(G: Gyrogroup, quads: Iterable) -> bool:
    """``gyr[x,y](a ⊕ b) = gyr[x,y](a) ⊕ gyr[x,y](b)``, and distinct a, b stay
    distinct under ``gyr[x,y]``."""
    for x, y, a, b in quads:
        if not G.eq(G.gyr(x, y, G.op(a, b)), G.op(G.gyr(x, y, a), G.gyr(x, y, b))):
            return False
        if not G.eq(a, b) and G.eq(G.gyr(x, y, a), G.gyr(x, y, b)):
            return False
    return True


def left_cancellation(G: Gyrogroup, pairs: Iterable) -> bool:
    return all(G.eq(G.op(G.inverse(x), G.op(x, y)), y) for x, y in pairs)


def right_cancellation(G: Gyrogroup, pairs: Iterable) -> bool:
    return all(G.eq(G.op(G.sub(x, y), G.gyr(x, G.inverse(y), y)), x) for x, y in pairs)


def cosub_cancellation(G: Gyrogroup, pairs: Iterable) -> bool:
    """``(y ⊖ x) ⊞ x = y``."""
    return all(G.eq(G.coadd(G.sub(y, x), x), y) for x, y in pairs)


def coadd_cancellation(G: Gyrogroup, pairs: Iterable) -> bool:
    """``(y ⊞ (⊖x)) ⊕ x = y``."""
    return all(G.eq(G.op(G.coadd(y, G.inverse(x)), x), y) for x, y in pairs)


def gyr_formula(G: Gyrogroup, triples: Iterable) -> bool:
    """``gyr`` agrees with ``⊖(x⊕y) ⊕ (x⊕(y⊕z))``."""
    return all(G.eq(G.gyr(x, y, z), G.gyr_formula(x, y, z)) for x, y, z in triples)


def right_injective(G: Gyrogroup, triples: Iterable) -> bool:
    """``y != z  =>  y ⊕ x != z ⊕ x``."""
    return all(G.eq(y, z) or not G.eq(G.op(y, x), G.op(z, x)) for x, y, z in triples)


def coadd_injective(G: Gyrogroup, triples: Iterable) -> bool:
    """``y != z  =>  x ⊞ y != x ⊞ z``."""
    return all(G.eq(y, z) or not G.eq(G.coadd(x, y), G.coadd(x, z)) for x, y, z in triples)


def check_axioms(G: Gyrogroup, exhaustive: bool = False, samples: int = 1000,
                 rng: random.Random | None = None, elements=None) -> dict[str, bool]:
    """Run every law. ``exhaustive`` uses all elements of a finite G (or the
    given ``elements``); otherwise random samples are drawn."""
    if exhaustive:
        if elements is None:
            if not isinstance(G, FiniteGyrogroup):
                raise TypeError("exhaustive checks need a finite instance or explicit elements")
            elements = G.elements()
        xs = list(elements)
        pairs = list(itertools.product(xs, repeat=2))
        triples = list(itertools.product(xs, repeat=3))
        quads = [(x, y, a, b) for (x, y, a), b in zip(triples, itertools.cycle(xs))]
    else:
        rng = rng or random.Random(0)
        draw = G.random_element
        xs = [draw(rng) for _ in range(samples)]
        pairs = [(draw(rng), draw(rng)) for _ in range(samples)]
        triples = [(draw(rng), draw(rng), draw(rng)) for _ in range(samples)]
        quads = [(draw(rng), draw(rng), draw(rng), draw(rng)) for _ in range(samples)]
    return {
        "G1 identity": left_identity_and_right_identity(G, xs),
        "G2 inverse": inverses(G, xs),
        "G3 gyroassociative": gyroassociative(G, triples),
        "G4 loop property": loop_property(G, triples),
        "gyr automorphism": gyr_automorphism(G, quads),
        "left cancellation": left_cancellation(G, pairs),
        "right cancellation": right_cancellation(G, pairs),
        "(y ⊖ x) ⊞ x = y": cosub_cancellation(G, pairs),
        "(y ⊞ ⊖x) ⊕ x = y": coadd_cancellation(G, pairs),
        "gyr formula": gyr_formula(G, triples),
        "right injective": right_injective(G, triples),
        "cooperation injective": coadd_injective(G, triples),
    }
