"""Dirichlet characters mod q and the twisted sums sum_{n <= x} a_n chi(n).

A character is stored by exact rational angles on a fixed set of generators
of (Z/qZ)^*, so chi(g_i) = e(t_i). Complex floats appear only when a value
is evaluated or summed.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels, parallel
from .exact import SQRT3, a_array


def factorize(q: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, primes in increasing order."""
    out = []
    p = 2
    while p * p <= q:
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            out.append((p, k))
        p += 1 if p == 2 else 2
    if q > 1:
        out.append((q, 1))
    return out


def euler_phi(q: int) -> int:
    phi = q
    for p, _ in factorize(q):
        phi = phi // p * (p - 1)
    return phi


def _primitive_root(pk: int, p: int) -> int:
    """Smallest primitive root modulo an odd prime power p^k."""
    phi = pk // p * (p - 1)
    tests = [phi // r for r, _ in factorize(phi)]
    for g in range(2, pk):
        if g % p and all(pow(g, t, pk) != 1 for t in tests):
            return g
    raise ArithmeticError(f"no primitive root mod {pk}")


@dataclass(frozen=True)
class UnitGroupStructure:
    modulus: int
    generators: tuple[tuple[int, int], ...]
    discrete_log_table: dict = field(compare=False, repr=False)

    @property
    def order(self) -> int:
        return math.prod(d for _, d in self.generators)


def unit_group_structure(q: int) -> UnitGroupStructure:
    """Present (Z/qZ)^* as a product of cyclic groups.

    Odd prime powers get their smallest primitive root; 2^k with k >= 3 gets
    -1 and 5 (orders 2 and 2^{k-2}); 4 gets 3. Local generators are lifted by
    CRT to be 1 modulo the other prime-power factors.
    """
    if q < 1:
        raise ValueError(f"modulus must be >= 1, got {q}")
    local: list[tuple[int, int, int]] = []  # (generator mod p^k, order, p^k)
    for p, k in factorize(q):
        pk = p**k
        if p == 2:
            if k == 2:
                local.append((3, 2, pk))
            elif k >= 3:
                local.append((pk - 1, 2, pk))
                local.append((5, 2 ** (k - 2), pk))
        else:
            local.append((_primitive_root(pk, p), pk // p * (p - 1), pk))

    gens = []
    for g, d, pk in local:
        rest = q // pk
        # x = g mod pk, x = 1 mod rest
        x = g if rest == 1 else (g * rest * pow(rest, -1, pk) + pk * pow(pk, -1, rest)) % q
        gens.append((x % q if q > 1 else 0, d))

    table = {}
    for exps in itertools.product(*(range(d) for _, d in gens)):
        r = 1 % q
        for (g, _), e in zip(gens, exps):
            r = r * pow(g, e, q) % q
        if r in table:
            raise ArithmeticError(f"generators of (Z/{q})* are not independent")
        table[r] = exps
    structure = UnitGroupStructure(q, tuple(gens), table)
    if len(table) != euler_phi(q):
        raise ArithmeticError(f"generators of (Z/{q})* do not span the group")
    return structure


_EXACT = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}


def unit_root(t: Fraction) -> complex:
    """e(t) = exp(2 pi i t), exact at quarter turns."""
    t = t % 1
    if t in _EXACT:
        return _EXACT[t]
    return cmath.exp(2j * math.pi * float(t))


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    angles: tuple[Fraction, ...]
    group: UnitGroupStructure = field(compare=False, repr=False)
    index: int = field(default=0, compare=False)

    @property
    def principal(self) -> bool:
        return all(t == 0 for t in self.angles)

    @property
    def ident(self) -> str:
        parts = [
            f"{int(t * d)}/{d}" for t, (_, d) in zip(self.angles, self.group.generators)
        ]
        return f"{self.modulus}:" + ",".join(parts)

    def angle(self, n: int) -> Fraction | None:
        """The exact angle of chi(n) mod 1, or None when gcd(n, q) > 1."""
        exps = self.group.discrete_log_table.get(n % self.modulus)
        if exps is None:
            return None
        return sum((e * t for e, t in zip(exps, self.angles)), Fraction(0)) % 1

    def __call__(self, n: int) -> complex:
        return eval_char(self, n)

    def table(self) -> np.ndarray:
        """chi(0), ..., chi(q-1) as a complex array."""
        return np.array([eval_char(self, r) for r in range(self.modulus)], dtype=np.complex128)


def characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q, principal first, angle tuples in lexicographic order."""
    group = unit_group_structure(q)
    out = []
    for i, ks in enumerate(itertools.product(*(range(d) for _, d in group.generators))):
        angles = tuple(Fraction(k, d) for k, (_, d) in zip(ks, group.generators))
        out.append(DirichletCharacter(q, angles, group, i))
    return out


def eval_char(chi: DirichletCharacter, n: int) -> complex:
    t = chi.angle(n)
    if t is None:
        return 0j
    return unit_root(t)


def character_residue_sum(q: int) -> list[complex]:
    """sum_{b mod q} chi(b) for each character: phi(q) for chi_0, else 0."""
    return [parallel.pairwise_sum(chi.table().tolist()) for chi in characters(q)]


@dataclass(frozen=True)
class TwistedSumReport:
    char_id: str
    char_index: int
    q: int
    x: int
    value: complex
    main_term: float
    residual_abs: float

    def row(self) -> dict:
        return {
            "q": self.q,
            "char_index": self.char_index,
            "x": self.x,
            "re_S": self.value.real,
            "im_S": self.value.imag,
            "main_term": self.main_term,
            "residual_abs": self.residual_abs,
        }


def twisted_value(chi: DirichletCharacter, x: int) -> complex:
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    tab = chi.table()
    cre = np.ascontiguousarray(tab.real)
    cim = np.ascontiguousarray(tab.imag)
    av = a_array(x)

    def part(c):
        lo, hi = c
        return kernels.chi_weighted_sum(np.ascontiguousarray(av[lo:hi]), lo, cre, cim)

    return parallel.pairwise_sum(parallel.pmap(part, parallel.chunks(1, x + 1)))


def twisted_sum(chi: DirichletCharacter, x: int) -> TwistedSumReport:
    value = twisted_value(chi, x)
    q = chi.modulus
    mt = euler_phi(q) * x**2.5 / (5 * q * SQRT3) if chi.principal else 0.0
    return TwistedSumReport(chi.ident, chi.index, q, x, value, mt, abs(value - mt))


def ap_reconstruct(b: int, q: int, x: int) -> complex:
    """Recover the coprime progression sum from the twisted sums by orthogonality."""
    if math.gcd(b, q) != 1:
        raise ValueError(f"residue {b} is not a unit mod {q}")
    terms = [eval_char(chi, b).conjugate() * twisted_value(chi, x) for chi in characters(q)]
    return parallel.pairwise_sum(terms) / euler_phi(q)
