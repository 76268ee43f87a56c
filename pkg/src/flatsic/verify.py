"""SIC verification: displacement overlaps and quartic autocorrelation checks.

A unit vector is a SIC fiducial when every displacement overlap
<Psi|D_{j,k}|Psi> with (j,k) != (0,0) has squared modulus 1/(d+1).  The same
condition can be tested entirely through the components via the quartic
autocorrelation functional

    G(i,k) = sum_r psi*_{r+i} psi*_{r+k} psi_r psi_{r+i+k}
           = (1/d) sum_j omega^{kj} |<Psi|X^i Z^j|Psi>|^2,

whose SIC target is (delta_{i,0} + delta_{k,0}) / (d+1).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .ansatz import _unit_components
from .weyl import CVec, Dim, _carray, apply_displacement, inner_product

__all__ = [
    "OverlapTable",
    "SicReport",
    "overlap_table",
    "sic_residual",
    "gik_quartic",
    "gik_fourier",
    "gik_residual",
    "gik_table",
    "is_sic",
    "naive_x_residual",
    "overlap_table_csv",
    "gik_table_csv",
]


@dataclass(frozen=True)
class OverlapTable:
    """All d^2 overlaps <Psi|D_{j,k}|Psi>; entry (0,0) is the squared norm."""

    dim: Dim
    entries: np.ndarray


def overlap_table(psi: CVec) -> OverlapTable:
    """Compute every displacement overlap of a vector.

    Non-normalized input (any form tag) is normalized internally, so entry
    (0,0) is always 1 up to rounding.
    """
    unit, _ = _unit_components(psi)
    d = psi.dim.d
    vec = CVec(psi.dim, unit, "normalized")
    entries = np.empty((d, d), dtype=np.complex128)
    for j in range(d):
        for k in range(d):
            entries[j, k] = inner_product(vec, apply_displacement(vec, j, k))
    entries.setflags(write=False)
    return OverlapTable(psi.dim, entries)


def _sic_deviations(table: OverlapTable) -> np.ndarray:
    d = table.dim.d
    dev = np.abs(np.abs(table.entries) ** 2 - 1.0 / (d + 1.0))
    dev[0, 0] = 0.0
    return dev


def sic_residual(psi: CVec) -> float:
    """max over (j,k) != (0,0) of | |<Psi|D_{j,k}|Psi>|^2 - 1/(d+1) |."""
    return float(_sic_deviations(overlap_table(psi)).max())


def gik_quartic(psi, i: int, k: int) -> complex:
    """G(i,k) as the direct quartic sum over the components.

    Accepts a CVec or plain array; no normalization is applied, so the
    Fourier-side identity holds for arbitrary vectors.
    """
    arr = _carray(psi)
    d = arr.shape[0]
    i %= d
    k %= d
    up = np.roll(arr, -i)  # up[r] = arr[(r+i) % d]
    uk = np.roll(arr, -k)
    upk = np.roll(arr, -((i + k) % d))
    return complex(np.sum(np.conj(up) * np.conj(uk) * arr * upk))


def gik_fourier(psi, i: int, k: int) -> complex:
    """G(i,k) as (1/d) sum_j omega^{kj} |<Psi|X^i Z^j|Psi>|^2.

    Evaluates the clock-shift overlaps directly; agrees with gik_quartic for
    every vector, normalized or not.
    """
    arr = _carray(psi)
    d = arr.shape[0]
    i %= d
    k %= d
    r = np.arange(d)
    shifted = np.roll(arr, i)  # (X^i psi)_r = psi_{r-i}
    total = 0j
    for j in range(d):
        ov = np.vdot(arr, np.exp(2j * np.pi * ((j * ((r - i) % d)) % d) / d) * shifted)
        total += np.exp(2j * np.pi * ((k * j) % d) / d) * abs(ov) ** 2
    return complex(total / d)


def gik_residual(psi: CVec) -> float:
    """max over all (i,k) of |G(i,k) - (delta_{i,0}+delta_{k,0})/(d+1)|.

    The input is normalized internally.  All d^2 pairs are evaluated even
    though the target has symmetry; simplicity wins at desk scale.
    """
    unit, _ = _unit_components(psi)
    d = unit.shape[0]
    worst = 0.0
    for i in range(d):
        for k in range(d):
            target = ((i == 0) + (k == 0)) / (d + 1.0)
            worst = max(worst, abs(gik_quartic(unit, i, k) - target))
    return worst


def gik_table(psi: CVec) -> np.ndarray:
    """The full d x d table of G(i,k) values for the normalized vector."""
    unit, _ = _unit_components(psi)
    d = unit.shape[0]
    table = np.empty((d, d), dtype=np.complex128)
    for i in range(d):
        for k in range(d):
            table[i, k] = gik_quartic(unit, i, k)
    table.setflags(write=False)
    return table


def naive_x_residual(psi: CVec) -> float:
    """max over j = 1..d-1 of | |<Psi|X^j|Psi>|^2 - 1/(d+1) |.

    This checks only the moduli of the bare shift overlaps, a strictly weaker
    condition than the X-overlap equation.
    """
    unit, _ = _unit_components(psi)
    d = unit.shape[0]
    worst = 0.0
    for j in range(1, d):
        ov = np.vdot(unit, np.roll(unit, j))
        worst = max(worst, abs(abs(ov) ** 2 - 1.0 / (d + 1.0)))
    return worst


@dataclass(frozen=True)
class SicReport:
    """Verdict and residuals of a SIC check.

    The verdict applies to the internally normalized vector; input_norm
    records the norm found before normalization (1.0 for unit input).
    """

    max_modulus_deviation: float
    worst_pair: tuple[int, int]
    gik_max_deviation: float
    is_sic: bool
    tolerance_used: float
    input_norm: float


def is_sic(psi: CVec, tol: float | None = None) -> SicReport:
    """Decide the SIC property from the overlap moduli.

    tol defaults to 1e-9 * d.  The decision uses the squared-modulus
    deviations only; the quartic residual is reported alongside.
    """
    d = psi.dim.d
    if tol is None:
        tol = 1e-9 * d
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    unit, nrm = _unit_components(psi)
    uvec = CVec(psi.dim, unit, "normalized")
    dev = _sic_deviations(overlap_table(uvec))
    worst = int(np.argmax(dev))
    return SicReport(
        max_modulus_deviation=float(dev.max()),
        worst_pair=(worst // d, worst % d),
        gik_max_deviation=gik_residual(uvec),
        is_sic=bool(dev.max() <= tol),
        tolerance_used=float(tol),
        input_norm=nrm,
    )


def _complex_cell(z: complex) -> str:
    return f"{z.real:.17g},{z.imag:.17g}"


def overlap_table_csv(table: OverlapTable, moduli_only: bool = False) -> str:
    """CSV rendering: row index j, column index k, cells "re,im" (or moduli)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    d = table.dim.d
    writer.writerow(["j\\k"] + [str(k) for k in range(d)])
    for j in range(d):
        if moduli_only:
            cells = [f"{abs(z):.17g}" for z in table.entries[j]]
        else:
            cells = [_complex_cell(z) for z in table.entries[j]]
        writer.writerow([str(j)] + cells)
    return buf.getvalue()


def gik_table_csv(psi: CVec, moduli_only: bool = False) -> str:
    """CSV rendering of the G(i,k) table: row index i, column index k."""
    table = gik_table(psi)
    d = psi.dim.d
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["i\\k"] + [str(k) for k in range(d)])
    for i in range(d):
        if moduli_only:
            cells = [f"{abs(z):.17g}" for z in table[i]]
        else:
            cells = [_complex_cell(z) for z in table[i]]
        writer.writerow([str(i)] + cells)
    return buf.getvalue()
