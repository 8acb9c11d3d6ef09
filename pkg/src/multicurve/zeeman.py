"""Weak-field (anomalous) Zeeman splitting of one-electron atomic levels.

A level ``(n, l, s, j)`` in a field ``B0`` splits into ``2j+1`` states with
energy shifts ``mu_B * B0 * m_j * g_J``; a line between two levels splits
into a multiplet whose members obey the dipole selection rules.

Quantum numbers are floats restricted to integer or half-integer values,
which binary floating point represents exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError

MU_B = 9.27400915e-24        # J/T
G_L = 1.0
G_S = 2.0023192
HBAR = 1.054571726e-34       # J s
H_PLANCK = 2.0 * math.pi * HBAR
C_LIGHT = 2.99792458e8       # m/s

LAMBDA_D1 = 589.59e-9
LAMBDA_D2 = 589.00e-9

_ORBITAL_LETTERS = "spdfghik"


@dataclass(frozen=True)
class PhysicalConstants:
    mu_B: float = MU_B
    g_L: float = G_L
    g_S: float = G_S
    hbar: float = HBAR
    c: float = C_LIGHT


CONSTANTS = PhysicalConstants()


def _is_half_integer_multiple(x: float) -> bool:
    return float(2 * x).is_integer()


@dataclass(frozen=True)
class AtomicLevel:
    n: int
    l: int
    s: float
    j: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"principal quantum number must be an integer >= 1, got {self.n}")
        if int(self.l) != self.l or not 0 <= self.l < self.n:
            raise DomainError(f"orbital number must satisfy 0 <= l < n, got l={self.l}, n={self.n}")
        if self.s < 0 or not _is_half_integer_multiple(self.s):
            raise DomainError(f"spin must be a non-negative half-integer multiple, got {self.s}")
        if not _is_half_integer_multiple(self.j) or not abs(self.l - self.s) <= self.j <= self.l + self.s:
            raise DomainError(f"j={self.j} outside |l-s|..l+s for l={self.l}, s={self.s}")
        if not float(self.j - self.l - self.s).is_integer():
            raise DomainError(f"j={self.j} inconsistent with l={self.l}, s={self.s}")

    @property
    def label(self) -> str:
        letter = _ORBITAL_LETTERS[self.l] if self.l < len(_ORBITAL_LETTERS) else f"[l={self.l}]"
        num = int(round(2 * self.j))
        frac = f"{num}/2" if num % 2 else str(num // 2)
        return f"{self.n}{letter}{frac}"

    @property
    def g(self) -> float:
        return lande_g(self.l, self.s, self.j)

    @property
    def m_values(self) -> list:
        return [-self.j + k for k in range(int(round(2 * self.j)) + 1)]

    def states(self) -> list:
        return [ZeemanState(self, m) for m in self.m_values]

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class ZeemanState:
    level: AtomicLevel
    m_j: float

    def __post_init__(self):
        if abs(self.m_j) > self.level.j or not float(self.level.j - self.m_j).is_integer():
            raise DomainError(f"m_j={self.m_j} not in -j..j for j={self.level.j}")


class SpectralLine(NamedTuple):
    lower: ZeemanState
    upper: ZeemanState
    wavenumber_shift: float      # 1/m, signed, upper minus lower
    wavelength: float            # m
    observable: bool

    @property
    def delta_mj(self) -> float:
        return self.upper.m_j - self.lower.m_j


def lande_g(l: float, s: float, j: float, g_s: float = G_S) -> float:
    """``1 + (g_S - 1) [j(j+1) - l(l+1) + s(s+1)] / (2 j(j+1))``."""
    if j == 0:
        raise DomainError("Landé factor undefined for j = 0")
    jj = j * (j + 1.0)
    return 1.0 + (g_s - 1.0) * (jj - l * (l + 1.0) + s * (s + 1.0)) / (2.0 * jj)


def zeeman_energy_shift(state: ZeemanState, b0: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """First-order energy shift in joules."""
    if b0 < 0:
        raise DomainError("field strength must be non-negative")
    g = lande_g(state.level.l, state.level.s, state.level.j, constants.g_S)
    return constants.mu_B * b0 * state.m_j * g


def split_level(level: AtomicLevel, b0: float, constants: PhysicalConstants = CONSTANTS) -> list:
    """``(m_j, shift)`` for the ``2j+1`` sublevels, ``m_j`` ascending."""
    return [(st.m_j, zeeman_energy_shift(st, b0, constants)) for st in level.states()]


def transition_allowed(a: ZeemanState, b: ZeemanState) -> bool:
    """Dipole rules: ``dl = +-1``, ``dj in {0, +-1}``, ``dm_j in {0, +-1}``."""
    dl = abs(a.level.l - b.level.l)
    dj = abs(a.level.j - b.level.j)
    dm = abs(a.m_j - b.m_j)
    return dl == 1 and dj <= 1 and dm <= 1


def zeeman_multiplet(lower: AtomicLevel, upper: AtomicLevel, b0: float, wavelength0: float,
                     planck: float = HBAR, constants: PhysicalConstants = CONSTANTS) -> list:
    """Every candidate line between the sublevels of ``lower`` and ``upper``.

    The wavenumber shift is ``(m'_j g'_J - m_j g_J) mu_B B0 / (planck * c)``.
    ``planck`` defaults to the reduced constant; pass ``H_PLANCK`` for the
    photon-energy convention ``E = h c / lambda``.
    """
    if b0 < 0:
        raise DomainError("field strength must be non-negative")
    if not wavelength0 > 0:
        raise DomainError("mother-line wavelength must be positive")
    g_lo = lande_g(lower.l, lower.s, lower.j, constants.g_S)
    g_up = lande_g(upper.l, upper.s, upper.j, constants.g_S)
    scale = constants.mu_B * b0 / (planck * constants.c)
    nu0 = 1.0 / wavelength0
    lines = []
    for lo in lower.states():
        for up in upper.states():
            shift = (up.m_j * g_up - lo.m_j * g_lo) * scale
            lines.append(SpectralLine(lo, up, shift, 1.0 / (nu0 + shift), transition_allowed(lo, up)))
    return lines


NA_3S_HALF = AtomicLevel(3, 0, 0.5, 0.5)
NA_3P_HALF = AtomicLevel(3, 1, 0.5, 0.5)
NA_3P_3HALF = AtomicLevel(3, 1, 0.5, 1.5)


class SodiumMultiplets(NamedTuple):
    d1: list
    d2: list


def sodium_demo(b0: float, physical: bool = False) -> SodiumMultiplets:
    """D1 (3s1/2 - 3p1/2, 589.59 nm) and D2 (3s1/2 - 3p3/2, 589.00 nm) multiplets."""
    planck = H_PLANCK if physical else HBAR
    return SodiumMultiplets(
        zeeman_multiplet(NA_3S_HALF, NA_3P_HALF, b0, LAMBDA_D1, planck),
        zeeman_multiplet(NA_3S_HALF, NA_3P_3HALF, b0, LAMBDA_D2, planck),
    )


ELEMENTS = {"NA": sodium_demo}
