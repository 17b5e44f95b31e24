"""Groupoid homomorphisms between gyrogroups and their pointwise lifts."""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .core import (CyclicGroup, FiniteGyrogroup, FiniteSubgyrogroup,
                   Gyrogroup, MobiusDisk, Neighborhood, contains)
from .errors import CarrierError, SchemaError, StepFunctionError
from .step import StepFunction, in_neighborhood, pointwise


class HomomorphismError(CarrierError):
    """A map fails ``φ(a ⊕ b) = φ(a) ⊕ φ(b)`` or another required property."""


@dataclass(frozen=True, eq=False)
class GroupoidHom:
    """A map ``source -> target`` preserving ⊕.

    Construction verifies the homomorphism law: exhaustively when the
    source is finite, on ``samples`` random pairs otherwise.
    """

    source: Gyrogroup
    target: Gyrogroup
    fn: Callable
    name: str = "hom"
    claims_open: bool = False
    claims_onto: bool = False
    samples: int = field(default=1000, repr=False)

    def __post_init__(self):
        S, T = self.source, self.target
        if isinstance(S, FiniteGyrogroup):
            pairs = ((a, b) for a in S.elements() for b in S.elements())
        else:
            rng = random.Random(0)
            pairs = ((S.random_element(rng), S.random_element(rng)) for _ in range(self.samples))
        for a, b in pairs:
            if not T.eq(self.fn(S.op(a, b)), T.op(self.fn(a), self.fn(b))):
                raise HomomorphismError(f"{self.name} is not a homomorphism at ({a!r}, {b!r})")
        if self.claims_onto and not self.is_onto():
            raise HomomorphismError(f"{self.name} claims to be onto but is not")

    def __call__(self, a):
        return self.target.check(self.fn(self.source.check(a)))

    def is_injective(self) -> bool:
        if not isinstance(self.source, FiniteGyrogroup):
            raise TypeError("injectivity is decided for finite sources only")
        images = [self(a) for a in self.source.elements()]
        return len(set(images)) == len(images)

    def is_onto(self) -> bool:
        if not (isinstance(self.source, FiniteGyrogroup) and isinstance(self.target, FiniteGyrogroup)):
            raise TypeError("surjectivity is decided for finite instances only")
        return {self(a) for a in self.source.elements()} == set(self.target.elements())

    def right_inverse(self) -> dict:
        """For an onto map of finite instances, the least preimage of each element."""
        if not self.is_onto():
            raise HomomorphismError(f"{self.name} is not onto")
        out = {}
        for a in self.source.elements():
            out.setdefault(self(a), a)
        return out

    def image(self, V: Neighborhood) -> Neighborhood:
        """``φ(V)`` for a finite neighborhood."""
        if V.is_ball:
            raise TypeError("images are computed for finite neighborhoods only")
        return Neighborhood(members=frozenset(self(a) for a in V.members))


def compose(psi: GroupoidHom, phi: GroupoidHom) -> GroupoidHom:
    """``psi ∘ phi``."""
    if phi.target != psi.source:
        raise HomomorphismError("composition needs phi.target == psi.source")
    return GroupoidHom(phi.source, psi.target, lambda a: psi.fn(phi.fn(a)),
                       name=f"{psi.name}∘{phi.name}")


def lift(phi: GroupoidHom, f: StepFunction) -> StepFunction:
    """``φ•(f)(r) = φ(f(r))``, canonicalized over the target."""
    if f.instance != phi.source:
        raise StepFunctionError("step function is not over the homomorphism's source")
    return pointwise(phi, f, instance=phi.target)


def preimage(phi: GroupoidHom, h: StepFunction) -> StepFunction:
    """A step function ``f`` with ``φ•(f) = h``, built pointwise from a right
    inverse of an onto ``φ`` between finite instances."""
    if h.instance != phi.target:
        raise StepFunctionError("step function is not over the homomorphism's target")
    section = phi.right_inverse()
    return pointwise(lambda y: section[y], h, instance=phi.source)


# --------------------------------------------------------------------------
# catalog


def identity_hom(G: Gyrogroup) -> GroupoidHom:
    return GroupoidHom(G, G, lambda a: a, name="identity", claims_open=True, claims_onto=isinstance(G, FiniteGyrogroup))


def mod_hom(source: CyclicGroup, n: int) -> GroupoidHom:
    """Reduction ``Z_{mn} -> Z_n``."""
    if not isinstance(source, CyclicGroup) or source.n % n:
        raise HomomorphismError(f"mod {n} needs a cyclic source whose order is a multiple of {n}")
    return GroupoidHom(source, CyclicGroup(n), lambda a: a % n, name=f"mod{n}",
                       claims_open=True, claims_onto=True)


def inclusion_hom(H: FiniteSubgyrogroup) -> GroupoidHom:
    return GroupoidHom(H, H.parent, lambda a: a, name="inclusion")


def rotation_hom(G: MobiusDisk, angle: float) -> GroupoidHom:
    """``z -> e^{i angle} z``, an automorphism of the Möbius disk."""
    u = cmath.exp(1j * angle)
    return GroupoidHom(G, G, lambda z: u * z, name=f"rot({angle})", claims_open=True)


def hom_from_spec(source: Gyrogroup, spec: str) -> GroupoidHom:
    """Catalog lookup: ``"identity"``, ``"mod:N"``, ``"inclusion"``, ``"rot:ANGLE"``."""
    name, _, arg = spec.partition(":")
    if name == "identity" and not arg:
        return identity_hom(source)
    if name == "mod":
        try:
            n = int(arg)
        except ValueError:
            raise SchemaError(f"bad modulus in {spec!r}") from None
        if n < 1:
            raise SchemaError(f"bad modulus in {spec!r}")
        return mod_hom(source, n)
    if name == "inclusion" and not arg:
        if not isinstance(source, FiniteSubgyrogroup):
            raise SchemaError("inclusion needs a subgroup instance as source")
        return inclusion_hom(source)
    if name == "rot":
        if not isinstance(source, MobiusDisk):
            raise SchemaError("rotations act on the Möbius disk")
        try:
            return rotation_hom(source, float(arg))
        except ValueError:
            raise SchemaError(f"bad angle in {spec!r}") from None
    raise SchemaError(f"unknown homomorphism {spec!r}")


def compose_specs(source: Gyrogroup, specs: Iterable[str]) -> GroupoidHom:
    """Compose catalog homomorphisms, applied left to right."""
    specs = list(specs)
    if not specs:
        raise SchemaError("no homomorphism given")
    hom = hom_from_spec(source, specs[0])
    for s in specs[1:]:
        hom = compose(hom_from_spec(hom.target, s), hom)
    return hom


# --------------------------------------------------------------------------
# checks


def subgyrogroup_preimage_check(incl: GroupoidHom, V: Neighborhood, eps,
                                samples: int | Iterable[StepFunction],
                                rng: random.Random | None = None) -> bool:
    """For an injective inclusion ``H -> G``, check
    ``f ∈ O(H ∩ V, eps)  <=>  incl•(f) ∈ O(V, eps)`` on the tested ``f``.

    ``samples`` is a count of random step functions over H or an explicit
    iterable of them.
    """
    from .sampling import random_step

    H, G = incl.source, incl.target
    if isinstance(H, FiniteGyrogroup):
        if not incl.is_injective():
            raise HomomorphismError(f"{incl.name} is not injective")
        W = Neighborhood(members=frozenset(h for h in H.elements() if contains(G, V, incl(h))))
    else:
        raise TypeError("preimage checks run on finite instances")
    if isinstance(samples, int):
        if samples <= 0:
            raise SchemaError("at least one sample is required")
        rng = rng or random.Random(0)
        samples = (random_step(H, rng) for _ in range(samples))
    return all(in_neighborhood(f, W, eps) == in_neighborhood(lift(incl, f), V, eps)
               for f in samples)


def continuity_check(phi: GroupoidHom, U: Neighborhood, V: Neighborhood, eps,
                     members: Iterable[StepFunction]) -> bool:
    """Given ``φ(U) ⊆ V``, every tested member of ``O(U, eps)`` maps into ``O(V, eps)``."""
    for f in members:
        if in_neighborhood(f, U, eps) and not in_neighborhood(lift(phi, f), V, eps):
            return False
    return True


def even_subgroup(n: int) -> FiniteSubgyrogroup:
    """The subgroup of even residues in ``Z_n`` (n even)."""
    if n % 2:
        raise SchemaError("the even subgroup needs an even order")
    return FiniteSubgyrogroup(CyclicGroup(n), range(0, n, 2))


__all__ = [
    "GroupoidHom",
    "HomomorphismError",
    "compose",
    "compose_specs",
    "continuity_check",
    "even_subgroup",
    "hom_from_spec",
    "identity_hom",
    "inclusion_hom",
    "lift",
    "mod_hom",
    "preimage",
    "rotation_hom",
    "subgyrogroup_preimage_check",
]
