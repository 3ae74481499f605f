"""Dirichlet characters mod q and modular residue arithmetic.

Characters are built from the unit-group structure of each prime-power
component (cyclic via a primitive root for odd p^e, the {-1} x <5> split for
2^e >= 8) and glued by CRT. Values are stored as a full table of phase
numerators: chi(a) = exp(2*pi*i*phase[a]/order), with -1 marking non-units.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, lcm

import numpy as np

from .errors import NonInvertible
from .numtheory import euler_phi, factorize, primitive_root


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "value", self.value % self.modulus)

    def __add__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value + other.value, self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value * other.value, self.modulus)

    def _check(self, other: "Residue") -> None:
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch")


def mod_inverse(a: Residue) -> Residue:
    """Multiplicative inverse of a modulo its modulus."""
    if gcd(a.value, a.modulus) != 1:
        raise NonInvertible(f"{a.value} has no inverse mod {a.modulus}")
    if a.modulus == 1:
        return Residue(0, 1)
    return Residue(pow(a.value, -1, a.modulus), a.modulus)


def inv_mod(a: int, m: int) -> int:
    """Integer convenience wrapper around mod_inverse."""
    return mod_inverse(Residue(a, m)).value


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character mod q as a full phase table.

    phases[a] = k means chi(a) = e(k/order); phases[a] = -1 means chi(a) = 0.
    """

    modulus: int
    order: int
    phases: tuple[int, ...]
    conductor: int
    is_primitive: bool
    is_even: bool
    label: tuple[int, ...] = ()
    _values: np.ndarray | None = field(default=None, repr=False, compare=False)

    def values(self) -> np.ndarray:
        """chi(a) for a = 0..q-1 as complex128."""
        if self._values is None:
            ph = np.asarray(self.phases)
            vals = np.where(
                ph >= 0,
                np.exp(2j * np.pi * np.maximum(ph, 0) / self.order),
                0.0,
            )
            object.__setattr__(self, "_values", vals)
        return self._values

    def __call__(self, n: int) -> complex:
        return char_eval(self, n)

    def conjugate(self) -> "DirichletCharacter":
        ph = tuple(-k % self.order if k >= 0 else -1 for k in self.phases)
        return DirichletCharacter(
            self.modulus, self.order, ph, self.conductor,
            self.is_primitive, self.is_even,
            tuple(-x for x in self.label),
        )

    @property
    def is_trivial(self) -> bool:
        return all(k <= 0 for k in self.phases)


def char_eval(chi: DirichletCharacter, n: int) -> complex:
    """chi(n mod q); zero off units, periodic, negative n allowed."""
    k = chi.phases[n % chi.modulus]
    if k < 0:
        return 0.0 + 0.0j
    return complex(np.exp(2j * np.pi * k / chi.order))


def _component_structure(p: int, e: int) -> tuple[list[tuple[int, int]], dict[int, tuple[int, ...]]]:
    """Generators of (Z/p^e)* and discrete-log table.

    Returns ([(generator, order), ...], {unit: exponent tuple}).
    """
    pe = p ** e
    if pe == 1 or pe == 2:
        return [], {a: () for a in range(pe) if gcd(a, pe) == 1}
    if p == 2 and e == 2:
        return [(3, 2)], {1: (0,), 3: (1,)}
    if p == 2:
        gens = [(pe - 1, 2), (5, 2 ** (e - 2))]
        table = {}
        x = 1
        for i in range(2):
            y = x
            for j in range(2 ** (e - 2)):
                table[y] = (i, j)
                y = y * 5 % pe
            x = x * (pe - 1) % pe
        return gens, table
    g = primitive_root(pe)
    n = euler_phi(pe)
    table = {}
    y = 1
    for j in range(n):
        table[y] = (j,)
        y = y * g % pe
    return [(g, n)], table


@lru_cache(maxsize=None)
def enumerate_characters(q: int) -> tuple[DirichletCharacter, ...]:
    """All phi(q) Dirichlet characters mod q, with conductor/parity flags."""
    comps = sorted(factorize(q).items())
    structures = [_component_structure(p, e) for p, e in comps]
    gen_orders: list[int] = []
    for gens, _ in structures:
        gen_orders.extend(o for _, o in gens)
    order_lcm = lcm(*gen_orders) if gen_orders else 1

    # discrete logs of every unit of Z/qZ with respect to the CRT generators
    dlogs = np.full((q if q > 1 else 1, len(gen_orders)), 0, dtype=np.int64)
    unit_mask = np.zeros(max(q, 1), dtype=bool)
    for a in range(max(q, 1)):
        if gcd(a, q) != 1 and q > 1:
            continue
        unit_mask[a] = True
        pos = 0
        for (p, e), (gens, table) in zip(comps, structures):
            exps = table[a % p ** e]
            for x in exps:
                dlogs[a, pos] = x
                pos += 1

    chars = []
    labels = _label_grid([o for o in gen_orders])
    for label in labels:
        phases = np.full(max(q, 1), -1, dtype=np.int64)
        for a in range(max(q, 1)):
            if not unit_mask[a]:
                continue
            k = 0
            for j, (lab, o) in enumerate(zip(label, gen_orders)):
                k += lab * dlogs[a, j] * (order_lcm // o)
            phases[a] = k % order_lcm
        phases_t = tuple(int(x) for x in phases)
        cond = _conductor(q, phases_t, order_lcm)
        even = q <= 2 or phases_t[q - 1] == 0
        chars.append(
            DirichletCharacter(
                modulus=q, order=order_lcm, phases=phases_t,
                conductor=cond, is_primitive=(cond == q), is_even=even,
                label=tuple(label),
            )
        )
    chars.sort(key=lambda c: c.label)
    return tuple(chars)


def _label_grid(orders: list[int]) -> list[tuple[int, ...]]:
    grid = [()]
    for o in orders:
        grid = [g + (j,) for g in grid for j in range(o)]
    return grid


def _conductor(q: int, phases: tuple[int, ...], order: int) -> int:
    if q == 1:
        return 1
    for f in sorted(d for d in range(1, q + 1) if q % d == 0):
        ok = True
        for a in range(1, q):
            if a % f == 1 % f and gcd(a, q) == 1 and phases[a] != 0:
                ok = False
                break
        if ok:
            return f
    return q


def trivial_character(q: int) -> DirichletCharacter:
    for chi in enumerate_characters(q):
        if chi.is_trivial:
            return chi
    raise RuntimeError("unreachable")


def quadratic_character(p: int) -> DirichletCharacter:
    """The real nontrivial (Legendre-symbol) character mod an odd prime p."""
    for chi in enumerate_characters(p):
        if chi.is_primitive and all(k in (-1, 0, chi.order // 2) for k in chi.phases):
            return chi
    raise ValueError(f"no quadratic character mod {p}")


def primitive_characters(q: int) -> list[DirichletCharacter]:
    return [c for c in enumerate_characters(q) if c.is_primitive]
