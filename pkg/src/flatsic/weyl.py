"""Weyl-Heisenberg operators on complex vectors of dimension d.

Conventions used throughout the package: the clock and shift operators act
on length-d complex vectors as Z|r> = omega^r |r> and X|r> = |r+1> with
omega = exp(2 pi i / d), indices modulo d.  Displacement unitaries are
D_{j,k} = tau^{jk} X^j Z^k with tau = -exp(pi i / d).  Inner products
conjugate the first argument.  The DFT kernel is omega^{+rs} / sqrt(d).

All operations are pure functions; vectors are immutable after construction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

#: Recognized vector forms.  "normalized" is a unit vector; "v-form" has
#: first component sqrt(x0) and unit-modulus phases elsewhere; "rescaled"
#: has first component x0 and the other components scaled by sqrt(x0).
FORMS = ("normalized", "v-form", "rescaled")

_PRIMALITY_LIMIT = 10**12


def norm_tolerance(d: int) -> float:
    """Default absolute tolerance for d-term aggregate sums."""
    return 1e-9 * d


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (desk scale only)."""
    n = int(n)
    if n > _PRIMALITY_LIMIT:
        raise ValueError(f"primality test supports n <= {_PRIMALITY_LIMIT}, got {n}")
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Dim:
    """A validated dimension with its arithmetic classification.

    n_sq_plus_3 is the integer n with d = n^2 + 3 when d - 3 is a perfect
    square, else None.
    """

    d: int
    is_odd: bool
    is_prime: bool
    n_sq_plus_3: int | None
    mod4: int
    mod8: int


def make_dimension(d: int) -> Dim:
    """Classify an integer dimension; rejects d < 2."""
    if isinstance(d, bool) or int(d) != d:
        raise ValueError(f"dimension must be an integer, got {d!r}")
    d = int(d)
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    n = None
    if d >= 3:
        root = math.isqrt(d - 3)
        if root * root == d - 3:
            n = root
    return Dim(
        d=d,
        is_odd=bool(d % 2),
        is_prime=is_prime(d),
        n_sq_plus_3=n,
        mod4=d % 4,
        mod8=d % 8,
    )


def _as_dim(dim: Dim | int) -> Dim:
    return dim if isinstance(dim, Dim) else make_dimension(dim)


@dataclass(frozen=True)
class PhaseConstants:
    """omega = exp(2 pi i / d) and tau = -exp(pi i / d) for one dimension."""

    d: int
    omega: complex
    tau: complex


def phase_constants(dim: Dim | int) -> PhaseConstants:
    d = _as_dim(dim).d
    return PhaseConstants(
        d=d,
        omega=cmath.exp(2j * math.pi / d),
        tau=-cmath.exp(1j * math.pi / d),
    )


def omega_power(d: int, m: int) -> complex:
    """omega^m evaluated from the reduced exponent (no drift for large m)."""
    return cmath.exp(2j * math.pi * (m % d) / d)


def tau_power(d: int, m: int) -> complex:
    """tau^m = (-1)^m exp(i pi m / d), reduced mod 2d before exponentiating."""
    mm = m % (2 * d)
    val = cmath.exp(1j * math.pi * mm / d)
    return -val if mm & 1 else val


@dataclass(frozen=True)
class CVec:
    """Dense complex vector of length d with a form tag.

    A "normalized" vector must have unit norm within norm_tolerance(d);
    the other form tags carry their own conventions (see FORMS) and are
    validated where they enter the toolkit.
    """

    dim: Dim
    components: np.ndarray
    form: str = "normalized"

    def __post_init__(self) -> None:
        arr = np.array(self.components, dtype=np.complex128)
        if arr.shape != (self.dim.d,):
            raise ValueError(
                f"expected {self.dim.d} components, got array of shape {arr.shape}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "components", arr)
        if self.form not in FORMS:
            raise ValueError(f"unknown form {self.form!r}, expected one of {FORMS}")
        if self.form == "normalized":
            nrm = float(np.linalg.norm(arr))
            if abs(nrm - 1.0) > norm_tolerance(self.dim.d):
                raise ValueError(
                    f"normalized vector has norm {nrm!r}, outside tolerance "
                    f"{norm_tolerance(self.dim.d):g}"
                )

    @property
    def d(self) -> int:
        return self.dim.d


def cvec(components, form: str = "normalized") -> CVec:
    """Build a CVec from any complex sequence, inferring the dimension."""
    arr = np.asarray(components, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError("expected a one-dimensional complex vector")
    return CVec(make_dimension(arr.shape[0]), arr, form)


def basis_vector(dim: Dim | int, r: int) -> CVec:
    """Standard basis vector e_r (index reduced mod d)."""
    dim = _as_dim(dim)
    arr = np.zeros(dim.d, dtype=np.complex128)
    arr[r % dim.d] = 1.0
    return CVec(dim, arr, "normalized")


def _carray(psi) -> np.ndarray:
    """Coerce a CVec or array-like to a 1-d complex128 array."""
    if isinstance(psi, CVec):
        return psi.components
    arr = np.asarray(psi, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError("expected a one-dimensional complex vector")
    return arr


def _displacement_components(arr: np.ndarray, j: int, k: int) -> np.ndarray:
    """Components of D_{j,k} arr for a raw array; indices reduced mod d."""
    d = arr.shape[0]
    j %= d
    k %= d
    r = np.arange(d)
    phases = np.exp(2j * np.pi * ((k * ((r - j) % d)) % d) / d)
    return tau_power(d, j * k) * phases * np.roll(arr, j)


def _displacement_overlap(arr: np.ndarray, j: int, k: int) -> complex:
    """<arr| D_{j,k} |arr> for a raw array."""
    return complex(np.vdot(arr, _displacement_components(arr, j, k)))


def apply_displacement(psi: CVec, j: int, k: int) -> CVec:
    """Apply D_{j,k} = tau^{jk} X^j Z^k without materializing a matrix.

    Component r of the result is tau^{jk} omega^{k(r-j)} psi_{r-j} with all
    indices mod d.  Norm-preserving; the form tag is carried through.
    """
    return CVec(psi.dim, _displacement_components(psi.components, j, k), psi.form)


def inner_product(phi: CVec, psi: CVec) -> complex:
    """<phi|psi> with conjugation on the first argument."""
    if phi.dim.d != psi.dim.d:
        raise ValueError(f"dimension mismatch: {phi.dim.d} vs {psi.dim.d}")
    return complex(np.vdot(phi.components, psi.components))


def dft(psi: CVec) -> CVec:
    """Unitary DFT with kernel omega^{+rs} / sqrt(d).

    Applying it twice reverses parity: component r maps to component -r mod d.
    """
    d = psi.dim.d
    out = math.sqrt(d) * np.fft.ifft(psi.components)
    return CVec(psi.dim, out, psi.form)
