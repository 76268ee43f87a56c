"""Almost-flat ansatz vectors and their overlap residuals.

An ansatz vector in odd dimension d has v-form (sqrt(x0), v_1, ..., v_{d-1})
with x0 = -2 - sqrt(d+1), unit phases v_j constrained by v_{d-j} = -conj(v_j),
and normalization N^2 = 1/(d-1-x0).  The free parameters are the (d-1)/2
angles of v_1..v_{(d-1)/2}.  sqrt(x0) is taken purely imaginary with positive
imaginary part; the opposite phase convention flips the sign of the X-overlap
right-hand side and is not separately represented.

The ghost flag selects x0 = -2 + sqrt(d+1) instead.  Ghost vectors are
constructible, but the X-overlap and SIC claims in this package apply only to
the default branch.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from .weyl import CVec, Dim, _as_dim, _carray, _displacement_overlap

__all__ = [
    "AnsatzVector",
    "DegenerateComponentError",
    "IdentityReport",
    "build_ansatz",
    "to_normalized",
    "to_rescaled",
    "to_vform",
    "as_normalized",
    "z_shift",
    "z_overlap_residual",
    "x_overlap_residual",
    "x_overlap_deviations",
    "vform_x_overlap_deviations",
    "displacement_row_identity",
    "ansatz_to_json",
    "ansatz_from_json",
]


class DegenerateComponentError(ValueError):
    """A vanishing component makes the X-overlap right-hand side undefined."""


@dataclass(frozen=True)
class AnsatzVector:
    """Phase data of an almost-flat candidate vector.

    phases holds v_1..v_{d-1} (index j-1 for v_j); angles holds the free
    angles that generated the first half, kept verbatim so JSON interchange
    round-trips exactly.  norm_sq is N^2 = 1/(d-1-x0).
    """

    dim: Dim
    x0: float
    angles: np.ndarray
    phases: np.ndarray
    sqrt_x0: complex
    norm_sq: float
    ghost: bool = False

    @property
    def d(self) -> int:
        return self.dim.d


def _require_odd(dim: Dim, what: str) -> None:
    if not dim.is_odd:
        raise ValueError(f"{what} requires odd dimension, got d={dim.d}")


def build_ansatz(dim: Dim | int, angles, ghost: bool = False) -> AnsatzVector:
    """Build an ansatz vector from its (d-1)/2 free angles (radians).

    Raises for even d and for a wrong angle count.  ghost=True selects the
    x0 = -2 + sqrt(d+1) branch.
    """
    dim = _as_dim(dim)
    _require_odd(dim, "the almost-flat ansatz")
    d = dim.d
    if d < 3:
        raise ValueError(f"the almost-flat ansatz requires d >= 3, got {d}")
    half = (d - 1) // 2
    ang = np.atleast_1d(np.asarray(angles, dtype=float))
    if ang.shape != (half,):
        raise ValueError(f"expected {half} angles for d={d}, got {ang.size}")
    s = math.sqrt(d + 1.0)
    x0 = -2.0 + s if ghost else -2.0 - s
    sqrt_x0 = complex(cmath.sqrt(complex(x0)))
    v = np.empty(d - 1, dtype=np.complex128)
    v[:half] = np.exp(1j * ang)
    v[half:] = -np.conj(v[half - 1 :: -1])
    ang = ang.copy()
    ang.setflags(write=False)
    v.setflags(write=False)
    return AnsatzVector(
        dim=dim,
        x0=x0,
        angles=ang,
        phases=v,
        sqrt_x0=sqrt_x0,
        norm_sq=1.0 / (d - 1.0 - x0),
        ghost=ghost,
    )


def _ansatz_from_phases(dim: Dim, phases: np.ndarray, ghost: bool = False) -> AnsatzVector:
    """Internal constructor from explicit first-half phases (exact values).

    The second half is forced by v_{d-j} = -conj(v_j); angles are recovered
    for serialization.
    """
    d = dim.d
    half = (d - 1) // 2
    s = math.sqrt(d + 1.0)
    x0 = -2.0 + s if ghost else -2.0 - s
    v = np.empty(d - 1, dtype=np.complex128)
    v[:half] = phases[:half]
    v[half:] = -np.conj(v[half - 1 :: -1])
    ang = np.angle(v[:half])
    ang.setflags(write=False)
    v.setflags(write=False)
    return AnsatzVector(
        dim=dim,
        x0=x0,
        angles=ang,
        phases=v,
        sqrt_x0=complex(cmath.sqrt(complex(x0))),
        norm_sq=1.0 / (d - 1.0 - x0),
        ghost=ghost,
    )


def to_vform(av: AnsatzVector) -> CVec:
    """The v-form vector (sqrt(x0), v_1, ..., v_{d-1})."""
    w = np.concatenate(([av.sqrt_x0], av.phases))
    return CVec(av.dim, w, "v-form")


def to_normalized(av: AnsatzVector) -> CVec:
    """Unit-norm vector N (sqrt(x0), v_1, ..., v_{d-1}).

    On the default branch the true norm of the v-form equals 1/N with
    N^2 = 1/(d-1-x0); ghost vectors are divided by their actual norm.
    """
    w = np.concatenate(([av.sqrt_x0], av.phases))
    return CVec(av.dim, w / np.linalg.norm(w), "normalized")


def to_rescaled(av: AnsatzVector) -> CVec:
    """Rescaled vector (x0, sqrt(x0) v_1, ..., sqrt(x0) v_{d-1})."""
    x = np.concatenate(([complex(av.x0)], av.sqrt_x0 * av.phases))
    return CVec(av.dim, x, "rescaled")


def _unit_components(vec: CVec) -> tuple[np.ndarray, float]:
    """Convert any form to unit-norm components; returns (components, norm).

    The returned norm is the norm of the phase-corrected vector before the
    final division (1.0 means the input was already a unit vector).
    Rescaled input is divided by sqrt(x0) first, which restores the
    phase convention that the X-overlap equation is sensitive to.
    """
    arr = vec.components
    if vec.form == "rescaled":
        c0 = complex(arr[0])
        if abs(c0.imag) > 1e-9 * (1.0 + abs(c0)):
            raise ValueError(
                f"rescaled vector must have a real first component, got {c0!r}"
            )
        if c0.real == 0.0:
            raise ValueError("rescaled vector has zero first component")
        arr = arr / cmath.sqrt(complex(c0.real))
    nrm = float(np.linalg.norm(arr))
    if nrm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return arr / nrm, nrm


def as_normalized(vec: CVec) -> CVec:
    """Convert a vector of any form tag to the normalized form."""
    unit, _ = _unit_components(vec)
    return CVec(vec.dim, unit, "normalized")


def z_shift(psi: CVec, k: int) -> CVec:
    """Apply Z^k: component r is multiplied by omega^{kr}.

    All three form tags are preserved: component 0 is untouched and all
    moduli are unchanged.
    """
    d = psi.dim.d
    k %= d
    r = np.arange(d)
    out = psi.components * np.exp(2j * np.pi * ((k * r) % d) / d)
    return CVec(psi.dim, out, psi.form)


def z_overlap_residual(psi: CVec) -> float:
    """max_k |sqrt(d+1) <Psi|Z^k|Psi> - 1| over k = 1..d-1.

    Non-normalized input is converted/normalized internally.  The ansatz
    satisfies this identically, whatever the free angles.
    """
    unit, _ = _unit_components(psi)
    d = unit.shape[0]
    s = math.sqrt(d + 1.0)
    vals = d * np.fft.ifft(np.abs(unit) ** 2)  # vals[k] = sum_r omega^{kr} |psi_r|^2
    return float(np.max(np.abs(s * vals[1:] - 1.0)))


def x_overlap_deviations(psi: CVec) -> np.ndarray:
    """Per-index deviations |sqrt(d+1) <Psi|X^{-2j}|Psi> - psi_j^2/|psi_j|^2|.

    Entry j-1 is the deviation at j, for j = 1..d-1.  Requires odd d; raises
    if any component psi_j (j != 0) vanishes, since the right-hand side is
    then undefined.
    """
    _require_odd(psi.dim, "the X-overlap equation")
    unit, _ = _unit_components(psi)
    d = unit.shape[0]
    if np.any(unit[1:] == 0):
        raise DegenerateComponentError(
            "degenerate zero component: psi_j = 0 for some j != 0"
        )
    s = math.sqrt(d + 1.0)
    devs = np.empty(d - 1)
    for j in range(1, d):
        lhs = s * np.vdot(unit, np.roll(unit, (-2 * j) % d))
        rhs = unit[j] ** 2 / abs(unit[j]) ** 2
        devs[j - 1] = abs(lhs - rhs)
    return devs


def x_overlap_residual(psi: CVec) -> float:
    """Max deviation from the X-overlap equation over j = 1..d-1."""
    return float(np.max(x_overlap_deviations(psi)))


def vform_x_overlap_deviations(vec: CVec) -> np.ndarray:
    """Per-index deviations |<v|X^{-2j}|v> - (sqrt(d+1)+1) v_j^2| on a v-form
    vector, j = 1..d-1.

    Equivalent to the normalized-form deviations up to the constant factor
    sqrt(d+1)+1.
    """
    _require_odd(vec.dim, "the X-overlap equation")
    w = vec.components
    d = w.shape[0]
    s = math.sqrt(d + 1.0)
    devs = np.empty(d - 1)
    for j in range(1, d):
        lhs = np.vdot(w, np.roll(w, (-2 * j) % d))
        devs[j - 1] = abs(lhs - (s + 1.0) * w[j] ** 2)
    return devs


@dataclass(frozen=True)
class IdentityReport:
    """Both sides of the displacement row-sum identity at one index."""

    j: int
    lhs: complex
    rhs: complex
    deviation: float


def displacement_row_identity(psi, j: int) -> IdentityReport:
    """Check the unconditional identity
    <Psi|X^{-2j}|Psi> + sum_{k=1}^{d-1} <Psi|D_{-2j,k}|Psi> = d psi_{-j}^* psi_j.

    Holds for every complex vector in odd dimension (the row sum of the
    displacement operators at fixed shift collapses to a rank-one operator;
    the exponent -2j needs 2 invertible mod d).  Accepts a CVec or a plain
    array.
    """
    arr = _carray(psi)
    d = arr.shape[0]
    if d % 2 == 0:
        raise ValueError(f"the row identity requires odd dimension, got d={d}")
    m = (-2 * j) % d
    lhs = 0j
    for k in range(d):  # k = 0 contributes the bare <Psi|X^{-2j}|Psi> term
        lhs += _displacement_overlap(arr, m, k)
    rhs = d * np.conj(arr[(-j) % d]) * arr[j % d]
    return IdentityReport(j=j % d, lhs=complex(lhs), rhs=complex(rhs), deviation=abs(lhs - rhs))


def ansatz_to_json(av: AnsatzVector) -> str:
    """Serialize to {"d", "ghost", "angles"}; round-trips at double precision."""
    return json.dumps(
        {"d": av.dim.d, "ghost": av.ghost, "angles": [float(a) for a in av.angles]}
    )


def ansatz_from_json(text: str) -> AnsatzVector:
    """Inverse of ansatz_to_json."""
    obj = json.loads(text)
    if not isinstance(obj, dict) or not {"d", "ghost", "angles"} <= set(obj):
        raise ValueError('expected an object with keys "d", "ghost", "angles"')
    return build_ansatz(int(obj["d"]), obj["angles"], ghost=bool(obj["ghost"]))
