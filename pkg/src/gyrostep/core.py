"""Gyrogroups: the abstract operations and the concrete instances.

Elements are plain Python values:

* finite instances use non-negative ``int`` labels,
* the Möbius disk uses ``complex`` numbers of modulus < 1,
* the Einstein ball uses 3-tuples of floats with Euclidean norm < c.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .errors import BoundaryError, CarrierError, SchemaError

DEFAULT_TOL = 1e-9
BOUNDARY_MARGIN = 1e-12


class Gyrogroup:
    """Base class. Subclasses provide ``identity``, ``op``, ``inverse``, ``eq``.

    ``gyr`` defaults to the formula ``⊖(a⊕b) ⊕ (a⊕(b⊕z))``.
    """

    kind = "abstract"
    exact = True
    tol = 0.0
    identity: Any = None

    def check(self, a):
        return a

    def op(self, a, b):
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return a == b

    def sub(self, a, b):
        """``a ⊖ b = a ⊕ (⊖b)``."""
        return self.op(a, self.inverse(b))

    def gyr_formula(self, a, b, z):
        return self.op(self.inverse(self.op(a, b)), self.op(a, self.op(b, z)))

    def gyr(self, a, b, z):
        return self.gyr_formula(a, b, z)

    def coadd(self, a, b):
        """Cooperation ``a ⊞ b = a ⊕ gyr[a, ⊖b](b)``."""
        return self.op(a, self.gyr(a, self.inverse(b), b))

    def cosub(self, a, b):
        """``a ⊟ b = a ⊞ (⊖b)``."""
        return self.coadd(a, self.inverse(b))

    def is_identity(self, a) -> bool:
        return self.eq(a, self.identity)


# --------------------------------------------------------------------------
# finite instances


class FiniteGyrogroup(Gyrogroup):
    """A gyrogroup on a finite set of integer labels."""

    exact = True
    tol = 0.0
    identity = 0

    def elements(self) -> list[int]:
        raise NotImplementedError

    def check(self, a):
        if isinstance(a, bool) or not isinstance(a, int) or a not in self._members:
            raise CarrierError(f"{a!r} is not an element of {self}")
        return a

    def random_element(self, rng: random.Random, **_):
        return rng.choice(self.elements())

    def element_to_json(self, a):
        return {"label": a}

    def element_from_json(self, obj):
        if not isinstance(obj, dict) or set(obj) != {"label"}:
            raise SchemaError(f"expected {{'label': k}}, got {obj!r}")
        return self.check(obj["label"])

    def __eq__(self, other):
        return type(self) is type(other) and self.to_config() == other.to_config()

    def __hash__(self):
        return hash(repr(self.to_config()))


class CyclicGroup(FiniteGyrogroup):
    kind = "cyclic"

    def __init__(self, n: int):
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise SchemaError(f"cyclic group order must be a positive integer, got {n!r}")
        self.n = n
        self._members = frozenset(range(n))

    def elements(self):
        return list(range(self.n))

    def op(self, a, b):
        self.check(a)
        self.check(b)
        return (a + b) % self.n

    def inverse(self, a):
        self.check(a)
        return (-a) % self.n

    def gyr(self, a, b, z):
        self.check(a)
        self.check(b)
        return self.check(z)

    def to_config(self):
        return {"kind": "cyclic", "n": self.n}

    def __repr__(self):
        return f"CyclicGroup({self.n})"


class SymmetricGroup3(FiniteGyrogroup):
    """S3 with label k standing for the k-th permutation of (0, 1, 2) in
    lexicographic order; label 0 is the identity. Product is composition,
    ``(p ⊕ q)(i) = p(q(i))``."""

    kind = "s3"
    _perms = list(itertools.permutations(range(3)))

    def __init__(self):
        self._members = frozenset(range(6))
        index = {p: i for i, p in enumerate(self._perms)}
        self._table = [
            [index[tuple(p[q[i]] for i in range(3))] for q in self._perms]
            for p in self._perms
        ]
        self._inv = [row.index(0) for row in self._table]

    def elements(self):
        return list(range(6))

    def op(self, a, b):
        return self._table[self.check(a)][self.check(b)]

    def inverse(self, a):
        return self._inv[self.check(a)]

    def gyr(self, a, b, z):
        self.check(a)
        self.check(b)
        return self.check(z)

    def to_config(self):
        return {"kind": "s3"}

    def __repr__(self):
        return "SymmetricGroup3()"


class FiniteSubgyrogroup(FiniteGyrogroup):
    """A subset of a finite gyrogroup, closed under its operations.

    Labels are the parent's labels.
    """

    kind = "subgroup"

    def __init__(self, parent: FiniteGyrogroup, members: Iterable[int]):
        self.parent = parent
        members = sorted({parent.check(m) for m in members})
        self._members = frozenset(members)
        self._list = members
        if parent.identity not in self._members:
            raise CarrierError("a subgyrogroup must contain the identity")
        for a in members:
            if parent.inverse(a) not in self._members:
                raise CarrierError(f"subset not closed under inverse at {a}")
            for b in members:
                if parent.op(a, b) not in self._members:
                    raise CarrierError(f"subset not closed under ⊕ at ({a}, {b})")
                for z in members:
                    if parent.gyr(a, b, z) not in self._members:
                        raise CarrierError("subset not closed under gyrations")

    def elements(self):
        return list(self._list)

    def op(self, a, b):
        return self.parent.op(self.check(a), self.check(b))

    def inverse(self, a):
        return self.parent.inverse(self.check(a))

    def gyr(self, a, b, z):
        return self.parent.gyr(self.check(a), self.check(b), self.check(z))

    def to_config(self):
        return {"kind": "subgroup", "parent": self.parent.to_config(), "elements": list(self._list)}

    def __repr__(self):
        return f"FiniteSubgyrogroup({self.parent!r}, {self._list})"


# --------------------------------------------------------------------------
# continuous instances


class ContinuousGyrogroup(Gyrogroup):
    """Common plumbing for the Möbius disk and the Einstein ball.

    Both carriers are open Euclidean balls of radius ``radius`` and both
    satisfy ``‖a ⊕ b‖ ≤ ‖a‖ ⊕ ‖b‖`` where the right side is the scalar form
    of the operation (see :meth:`scalar_add`).
    """

    exact = False
    radius = 1.0
    dim = 2

    def __init__(self, tol: float = DEFAULT_TOL):
        if not tol >= 0:
            raise SchemaError("tolerance must be non-negative")
        self.tol = float(tol)

    def norm(self, a) -> float:
        raise NotImplementedError

    def _guard(self, a):
        if not self.norm(a) < self.radius * (1 - BOUNDARY_MARGIN):
            raise BoundaryError(f"{a!r} is too close to the carrier boundary")
        return a

    def _escape(self, a):
        n = self.norm(a)
        if not n < self.radius:
            raise BoundaryError(f"result {a!r} escaped the carrier (norm {n!r})")
        return a

    def scalar_add(self, s: float, t: float) -> float:
        """Upper bound for ``‖a ⊕ b‖`` given ``‖a‖ = s``, ``‖b‖ = t``."""
        c2 = self.radius ** 2
        return (s + t) / (1 + s * t / c2)

    def translate_extent(self, x, rho: float) -> float:
        """Euclidean radius R with ``x ⊕ ball(rho) ⊆ euclidean_ball(x, R)``."""
        raise NotImplementedError

    def right_translate_extent(self, x, rho: float) -> float:
        """Euclidean radius R with ``ball(rho) ⊕ x ⊆ euclidean_ball(x, R)``."""
        raise NotImplementedError

    def distance(self, a, b) -> float:
        return math.dist(self.coords(a), self.coords(b))

    def __eq__(self, other):
        return type(self) is type(other) and self.to_config() == other.to_config()

    def __hash__(self):
        return hash(repr(self.to_config()))


class MobiusDisk(ContinuousGyrogroup):
    """Möbius addition ``a ⊕ b = (a + b) / (1 + conj(a) b)`` on the open unit disk."""

    kind = "mobius"
    radius = 1.0
    dim = 2
    identity = 0j

    def check(self, a):
        if isinstance(a, bool) or not isinstance(a, (int, float, complex)):
            raise CarrierError(f"{a!r} is not a point of the Möbius disk")
        a = complex(a)
        if not (math.isfinite(a.real) and math.isfinite(a.imag)):
            raise CarrierError(f"{a!r} is not finite")
        return self._guard(a)

    def norm(self, a):
        return abs(a)

    def coords(self, a):
        return (a.real, a.imag)

    def from_coords(self, xs: Sequence[float]):
        return complex(xs[0], xs[1])

    def op(self, a, b):
        a = self.check(a)
        b = self.check(b)
        return self._escape((a + b) / (1 + a.conjugate() * b))

    def inverse(self, a):
        return -self.check(a)

    def gyr(self, a, b, z):
        a = self.check(a)
        b = self.check(b)
        z = self.check(z)
        return (1 + a * b.conjugate()) / (1 + a.conjugate() * b) * z

    def eq(self, a, b):
        return abs(a.real - b.real) <= self.tol and abs(a.imag - b.imag) <= self.tol

    def translate_extent(self, x, rho):
        # |x⊕y − x| = |y|(1−|x|²)/|1+x̄y|
        s = abs(x)
        return rho * (1 - s * s) / (1 - s * rho)

    def right_translate_extent(self, x, rho):
        # |w⊕x − x| = |w − w̄x²| / |1 + w̄x|
        s = abs(x)
        return rho * (1 + s * s) / (1 - s * rho)

    def random_element(self, rng: random.Random, max_norm: float = 0.9):
        r = max_norm * math.sqrt(rng.random())
        t = rng.uniform(0, 2 * math.pi)
        return complex(r * math.cos(t), r * math.sin(t))

    def ball_grid(self, rho: float, k: int = 16) -> list[complex]:
        """Deterministic points of ``ball(rho)``, including points near its rim."""
        pts = [0j]
        for i in range(1, k + 1):
            r = rho * (i / k) * (1 - 1e-9)
            m = 4 * i
            pts.extend(complex(r * math.cos(2 * math.pi * j / m), r * math.sin(2 * math.pi * j / m))
                       for j in range(m))
        return pts

    def element_to_json(self, a):
        return {"re": a.real, "im": a.imag}

    def element_from_json(self, obj):
        if not isinstance(obj, dict) or set(obj) != {"re", "im"}:
            raise SchemaError(f"expected {{'re': x, 'im': y}}, got {obj!r}")
        return self.check(complex(_real(obj["re"]), _real(obj["im"])))

    def to_config(self):
        cfg = {"kind": "mobius"}
        if self.tol != DEFAULT_TOL:
            cfg["tol"] = self.tol
        return cfg

    def __repr__(self):
        return "MobiusDisk()"


class EinsteinBall(ContinuousGyrogroup):
    """Relativistic velocity addition in the open ball of radius ``c`` in R³.

    ``u ⊕ v = (u + v/γ_u + (γ_u/(1+γ_u)) (u·v/c²) u) / (1 + u·v/c²)``.
    """

    kind = "einstein"
    dim = 3
    identity = (0.0, 0.0, 0.0)

    def __init__(self, c: float = 1.0, tol: float = DEFAULT_TOL):
        super().__init__(tol)
        c = float(c)
        if not (c > 0 and math.isfinite(c)):
            raise SchemaError(f"speed limit must be a positive real, got {c!r}")
        self.c = c
        self.radius = c

    def check(self, a):
        try:
            a = tuple(float(v) for v in a)
        except TypeError:
            raise CarrierError(f"{a!r} is not a velocity vector") from None
        if len(a) != 3 or not all(math.isfinite(v) for v in a):
            raise CarrierError(f"{a!r} is not a velocity vector")
        return self._guard(a)

    def norm(self, a):
        return math.sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2])

    def coords(self, a):
        return a

    def from_coords(self, xs):
        return tuple(float(v) for v in xs)

    def gamma(self, u) -> float:
        return 1.0 / math.sqrt(1.0 - (u[0] ** 2 + u[1] ** 2 + u[2] ** 2) / self.c ** 2)

    def op(self, u, v):
        u = self.check(u)
        v = self.check(v)
        c2 = self.c ** 2
        uv = (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]) / c2
        g = self.gamma(u)
        k = g / (1 + g) * uv
        w = tuple((u[i] + v[i] / g + k * u[i]) / (1 + uv) for i in range(3))
        return self._escape(w)

    def inverse(self, a):
        a = self.check(a)
        return (-a[0], -a[1], -a[2])

    def eq(self, a, b):
        return all(abs(x - y) <= self.tol for x, y in zip(a, b))

    def translate_extent(self, x, rho):
        # |u⊕v − u| ≤ |v| / (1 − |u||v|/c²)
        return rho / (1 - self.norm(x) * rho / self.c ** 2)

    def right_translate_extent(self, x, rho):
        # expand w⊕x − x; 1 − 1/γ_w ≤ |w|²/c² and γ/(1+γ) ≤ 1 bound the extra terms
        s, c2 = self.norm(x), self.c ** 2
        return rho * (1 + (2 * rho * s + s * s) / c2) / (1 - s * rho / c2)

    def random_element(self, rng: random.Random, max_norm: float = 0.9):
        r = max_norm * self.c * rng.random() ** (1 / 3)
        v = [rng.gauss(0, 1) for _ in range(3)]
        n = math.sqrt(sum(t * t for t in v)) or 1.0
        return tuple(r * t / n for t in v)

    def ball_grid(self, rho: float, k: int = 8) -> list[tuple]:
        pts = [self.identity]
        golden = math.pi * (3 - math.sqrt(5))
        for i in range(1, k + 1):
            r = rho * (i / k) * (1 - 1e-9)
            m = 6 * i * i
            for j in range(m):
                z = 1 - 2 * (j + 0.5) / m
                s = math.sqrt(1 - z * z)
                t = golden * j
                pts.append((r * s * math.cos(t), r * s * math.sin(t), r * z))
        return pts

    def element_to_json(self, a):
        return {"vx": a[0], "vy": a[1], "vz": a[2]}

    def element_from_json(self, obj):
        if not isinstance(obj, dict) or set(obj) != {"vx", "vy", "vz"}:
            raise SchemaError(f"expected {{'vx', 'vy', 'vz'}}, got {obj!r}")
        return self.check((_real(obj["vx"]), _real(obj["vy"]), _real(obj["vz"])))

    def to_config(self):
        cfg = {"kind": "einstein", "c": self.c}
        if self.tol != DEFAULT_TOL:
            cfg["tol"] = self.tol
        return cfg

    def __repr__(self):
        return f"EinsteinBall(c={self.c})"


def _real(v) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaError(f"expected a number, got {v!r}")
    return float(v)


def instance_from_config(cfg: dict) -> Gyrogroup:
    """Build an instance from ``{"kind": "cyclic", "n": 5}`` and friends."""
    if not isinstance(cfg, dict) or "kind" not in cfg:
        raise SchemaError(f"instance config must be an object with a 'kind', got {cfg!r}")
    kind = cfg["kind"]
    extra = set(cfg) - {"kind"}
    if kind == "cyclic":
        if extra != {"n"}:
            raise SchemaError("cyclic instance takes exactly 'n'")
        return CyclicGroup(cfg["n"])
    if kind == "s3":
        if extra:
            raise SchemaError("s3 instance takes no parameters")
        return SymmetricGroup3()
    if kind == "mobius":
        if extra - {"tol"}:
            raise SchemaError("mobius instance takes only 'tol'")
        return MobiusDisk(tol=cfg.get("tol", DEFAULT_TOL))
    if kind == "einstein":
        if extra - {"c", "tol"}:
            raise SchemaError("einstein instance takes only 'c' and 'tol'")
        return EinsteinBall(c=_real(cfg.get("c", 1.0)), tol=cfg.get("tol", DEFAULT_TOL))
    if kind == "subgroup":
        if extra != {"parent", "elements"}:
            raise SchemaError("subgroup instance takes 'parent' and 'elements'")
        parent = instance_from_config(cfg["parent"])
        if not isinstance(parent, FiniteGyrogroup):
            raise SchemaError("subgroups are supported for finite parents only")
        return FiniteSubgyrogroup(parent, cfg["elements"])
    raise SchemaError(f"unknown instance kind {kind!r}")


# --------------------------------------------------------------------------
# neighborhoods of the identity


@dataclass(frozen=True)
class Neighborhood:
    """An open neighborhood V of the identity: a finite set or a norm ball."""

    members: frozenset | None = None
    radius: float | None = None

    def __post_init__(self):
        if (self.members is None) == (self.radius is None):
            raise SchemaError("a neighborhood is either a finite set or a ball")
        if self.radius is not None and not (self.radius > 0 and math.isfinite(self.radius)):
            raise SchemaError(f"ball radius must be positive, got {self.radius!r}")

    @classmethod
    def finite(cls, G: Gyrogroup, elements: Iterable, symmetrize: bool = True) -> "Neighborhood":
        """Explicit subset containing the identity, closed under ⊖ unless
        ``symmetrize`` is false."""
        members = {G.check(e) for e in elements}
        members.add(G.identity)
        if symmetrize:
            members |= {G.inverse(e) for e in members}
        return cls(members=frozenset(members))

    @classmethod
    def ball(cls, rho: float) -> "Neighborhood":
        return cls(radius=float(rho))

    @property
    def is_ball(self) -> bool:
        return self.radius is not None

    def contains(self, G: Gyrogroup, a) -> bool:
        return contains(G, self, a)

    def is_symmetric(self, G: Gyrogroup) -> bool:
        if self.is_ball:
            return True
        return all(contains(G, self, G.inverse(a)) for a in self.members)

    def subset_of(self, other: "Neighborhood") -> bool:
        """Exact inclusion test for two sets or two balls."""
        if self.is_ball != other.is_ball:
            raise TypeError("cannot compare a ball with a finite set")
        if self.is_ball:
            return self.radius <= other.radius
        return self.members <= other.members

    def intersect(self, other: "Neighborhood") -> "Neighborhood":
        if self.is_ball != other.is_ball:
            raise TypeError("cannot intersect a ball with a finite set")
        if self.is_ball:
            return Neighborhood(radius=min(self.radius, other.radius))
        return Neighborhood(members=self.members & other.members)

    def to_json(self, G: Gyrogroup) -> dict:
        if self.is_ball:
            return {"ball": self.radius}
        return {"set": [G.element_to_json(a) for a in _sorted(self.members)]}

    @classmethod
    def from_json(cls, G: Gyrogroup, obj) -> "Neighborhood":
        if isinstance(obj, dict) and set(obj) == {"ball"}:
            return cls.ball(_real(obj["ball"]))
        if isinstance(obj, dict) and set(obj) == {"set"} and isinstance(obj["set"], list):
            return cls.finite(G, [G.element_from_json(e) for e in obj["set"]])
        raise SchemaError(f"expected {{'set': [...]}} or {{'ball': rho}}, got {obj!r}")


def _sorted(items):
    try:
        return sorted(items)
    except TypeError:
        return sorted(items, key=repr)


def contains(G: Gyrogroup, V: Neighborhood, a) -> bool:
    """Membership in V. Balls use the strict test ``norm(a) < rho`` in plain
    floating point; no extra slack is applied at the rim."""
    if V.is_ball:
        if G.exact:
            raise TypeError("norm balls are defined for continuous instances only")
        return G.norm(a) < V.radius
    if G.exact:
        return a in V.members
    return any(G.eq(a, m) for m in V.members)
