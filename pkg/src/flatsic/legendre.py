"""Legendre vectors: two-phase ansatz vectors patterned by quadratic residues.

For a prime d = p congruent to 3 mod 4 a Legendre vector is the ansatz vector
whose phase is x1 at every quadratic-residue index and -1/x1 elsewhere; the
pattern is consistent with v_{d-j} = -conj(v_j) because -1 is a non-residue.
The closed-form phase that solves the X-overlap equation is

    x1 = (beta - 1) / sqrt(x0),                       d = 3 mod 8,
    x1 = (beta - x0) / (sqrt(d+1) sqrt(x0)),          d = 7 mod 8,

where beta is a square root of -(sqrt(d+1)+1), respectively of
-(d-3)(sqrt(d+1)+1); both branches of beta give solutions.

Perron's counting theorems drive the closed-form autocorrelation: with
"Reste" meaning quadratic residues together with 0, shifting the Reste by
any coprime a yields (p+1)/4 Reste and (p+1)/4 Nichtreste, and shifting the
Nichtreste yields (p+1)/4 Reste and (p-3)/4 Nichtreste.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass

import numpy as np

from . import verify
from .ansatz import AnsatzVector, _ansatz_from_phases, to_normalized, x_overlap_residual
from .weyl import Dim, _as_dim, is_prime

__all__ = [
    "PerronCounts",
    "LegendreVector",
    "BranchReport",
    "LegendreClassification",
    "legendre_symbol",
    "perron_counts",
    "legendre_x1",
    "build_legendre_vector",
    "lemma1_closed_form",
    "classify_legendre",
    "classification_csv_header",
    "classification_csv_row",
    "primes_3mod4",
]


def legendre_symbol(n: int, p: int) -> int:
    """Legendre symbol (n|p) by Euler's criterion with fast modular power."""
    p = int(p)
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p}")
    n = int(n) % p
    if n == 0:
        return 0
    return 1 if pow(n, (p - 1) // 2, p) == 1 else -1


def primes_3mod4(limit: int) -> list[int]:
    """All primes p <= limit with p = 3 mod 4, ascending."""
    return [p for p in range(3, limit + 1, 4) if is_prime(p)]


def _require_3mod4_prime(dim: Dim | int) -> Dim:
    dim = _as_dim(dim)
    if not dim.is_prime or dim.mod4 != 3:
        raise ValueError(
            f"Legendre construction requires a prime d = 3 mod 4, got d={dim.d}"
        )
    return dim


@functools.lru_cache(maxsize=128)
def _residue_signs(d: int) -> np.ndarray:
    """Lookup table of Legendre symbols: signs[j] in {-1, 0, +1}."""
    signs = np.full(d, -1, dtype=np.int8)
    signs[0] = 0
    signs[(np.arange(1, d, dtype=np.int64) ** 2) % d] = 1
    signs.setflags(write=False)
    return signs


@dataclass(frozen=True)
class PerronCounts:
    """Residue-class counts of a shifted residue class mod p.

    "Rest" follows Perron's convention: a quadratic residue or 0.  The four
    counts classify r_i + a over the Reste r_i and n_i + a over the
    Nichtreste n_i.
    """

    p: int
    a: int
    reste_from_reste: int
    nichtreste_from_reste: int
    reste_from_nichtreste: int
    nichtreste_from_nichtreste: int


def perron_counts(p: int, a: int) -> PerronCounts:
    """Count residue classes of shifted Reste/Nichtreste by enumeration."""
    dim = _require_3mod4_prime(p)
    p = dim.d
    a = int(a)
    if math.gcd(a, p) != 1:
        raise ValueError(f"shift must be coprime to p, got a={a}, p={p}")
    signs = _residue_signs(p)
    reste = np.flatnonzero(signs >= 0)
    nicht = np.flatnonzero(signs < 0)
    shifted_r = signs[(reste + a) % p]
    shifted_n = signs[(nicht + a) % p]
    return PerronCounts(
        p=p,
        a=a % p,
        reste_from_reste=int(np.count_nonzero(shifted_r >= 0)),
        nichtreste_from_reste=int(np.count_nonzero(shifted_r < 0)),
        reste_from_nichtreste=int(np.count_nonzero(shifted_n >= 0)),
        nichtreste_from_nichtreste=int(np.count_nonzero(shifted_n < 0)),
    )


def _sqrt_x0(d: int) -> complex:
    return complex(cmath.sqrt(complex(-2.0 - math.sqrt(d + 1.0))))


def legendre_x1(dim: Dim | int, beta_sign: int = +1) -> complex:
    """Closed-form unit phase solving the X-overlap equation for the
    Legendre pattern.

    beta_sign selects the branch of the inner square root; the radicand is a
    negative real in both the 3 mod 8 and 7 mod 8 cases, so beta is purely
    imaginary, beta = +- i sqrt(|radicand|).
    """
    dim = _require_3mod4_prime(dim)
    if beta_sign not in (+1, -1):
        raise ValueError(f"beta_sign must be +1 or -1, got {beta_sign}")
    d = dim.d
    s = math.sqrt(d + 1.0)
    sx0 = _sqrt_x0(d)
    if dim.mod8 == 3:
        beta = beta_sign * 1j * math.sqrt(s + 1.0)
        return complex((beta - 1.0) / sx0)
    beta = beta_sign * 1j * math.sqrt((d - 3.0) * (s + 1.0))
    return complex((beta - (-2.0 - s)) / (s * sx0))


@dataclass(frozen=True)
class LegendreVector:
    """A Legendre vector: the phase x1, its branch, and the ansatz data."""

    dim: Dim
    x1: complex
    beta_sign: int
    ansatz: AnsatzVector


def build_legendre_vector(dim: Dim | int, beta_sign: int = +1) -> LegendreVector:
    """Construct the Legendre vector with phases x1 / -1/x1 by residue class."""
    dim = _require_3mod4_prime(dim)
    x1 = legendre_x1(dim, beta_sign)
    d = dim.d
    half = (d - 1) // 2
    signs = _residue_signs(d)
    phases = np.where(signs[1 : half + 1] > 0, x1, -1.0 / x1)
    av = _ansatz_from_phases(dim, phases)
    return LegendreVector(dim=dim, x1=x1, beta_sign=beta_sign, ansatz=av)


def lemma1_closed_form(dim: Dim | int, x1: complex, j_is_residue: bool) -> complex:
    """Closed-form autocorrelation <v|X^{-2j}|v> of a Legendre vector.

    The four cases split by d mod 8 and by the residue class of j; the
    non-residue case substitutes x1 -> -1/x1 into the residue formula.
    """
    dim = _require_3mod4_prime(dim)
    d = dim.d
    z = complex(x1) if j_is_residue else -1.0 / complex(x1)
    sx0 = _sqrt_x0(d)
    if dim.mod8 == 3:
        return complex(
            (d - 3) / 2.0
            - (d - 3) / 4.0 / z**2
            - (d + 1) / 4.0 * z**2
            + 2.0 * sx0 / z
        )
    return complex(
        (d - 3) / 2.0
        - (d + 1) / 4.0 / z**2
        - (d - 3) / 4.0 * z**2
        - 2.0 * sx0 * z
    )


@dataclass(frozen=True)
class BranchReport:
    """Residuals of one beta branch of the Legendre vector."""

    beta_sign: int
    x_overlap_residual: float
    sic_residual: float
    is_sic: bool


@dataclass(frozen=True)
class LegendreClassification:
    """X-overlap and SIC verdicts for both branches at one dimension."""

    dim: Dim
    branches: tuple[BranchReport, BranchReport]
    tolerance: float

    @property
    def x_overlap_residual(self) -> float:
        return max(b.x_overlap_residual for b in self.branches)

    @property
    def sic_residual(self) -> float:
        return max(b.sic_residual for b in self.branches)

    @property
    def verdict(self) -> str:
        return "sic" if all(b.is_sic for b in self.branches) else "not-sic"


def classify_legendre(dim: Dim | int, tol: float | None = None) -> LegendreClassification:
    """Evaluate X-overlap and SIC residuals of both Legendre branches."""
    dim = _require_3mod4_prime(dim)
    if tol is None:
        tol = 1e-9 * dim.d
    reports = []
    for sign in (+1, -1):
        psi = to_normalized(build_legendre_vector(dim, sign).ansatz)
        xres = x_overlap_residual(psi)
        sres = verify.sic_residual(psi)
        reports.append(
            BranchReport(
                beta_sign=sign,
                x_overlap_residual=xres,
                sic_residual=sres,
                is_sic=bool(sres <= tol),
            )
        )
    return LegendreClassification(dim=dim, branches=tuple(reports), tolerance=float(tol))


def classification_csv_header() -> str:
    return "d,mod8,x_overlap_residual,sic_residual,verdict"


def classification_csv_row(c: LegendreClassification) -> str:
    return (
        f"{c.dim.d},{c.dim.mod8},{c.x_overlap_residual:.17g},"
        f"{c.sic_residual:.17g},{c.verdict}"
    )
