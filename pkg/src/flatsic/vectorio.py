"""JSON interchange for vectors.

Schema: {"d": int, "form": "normalized"|"v-form"|"rescaled",
"components": [[re, im], ...], "metadata": {"label": ..., "source": ...}}
with metadata optional.  Form-specific invariants are checked on load and
violations are reported with the failing invariant's name.
"""

from __future__ import annotations

import json

import numpy as np

from .weyl import FORMS, CVec, cvec, norm_tolerance

__all__ = ["VectorFileError", "parse_vector_file", "dump_vector"]

#: Load-time slack for the O(d)-scaled v-form/rescaled modulus invariants;
#: user files carry limited digits.  Normalized vectors are held to the
#: package-wide norm tolerance instead.
_LOAD_TOL = 1e-6


class VectorFileError(ValueError):
    """Raised for malformed or invariant-violating vector files."""

    def __init__(self, message: str, invariant: str | None = None):
        if invariant:
            message = f"{message} [invariant: {invariant}]"
        super().__init__(message)
        self.invariant = invariant


def parse_vector_file(text: str) -> CVec:
    """Parse and validate a vector file; returns a CVec with its form tag."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise VectorFileError(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise VectorFileError("expected a JSON object at top level")
    for key in ("d", "form", "components"):
        if key not in obj:
            raise VectorFileError(f"missing required key {key!r}")
    d = obj["d"]
    if not isinstance(d, int) or d < 2:
        raise VectorFileError(f"d must be an integer >= 2, got {d!r}")
    form = obj["form"]
    if form not in FORMS:
        raise VectorFileError(f"form must be one of {FORMS}, got {form!r}")
    comps = obj["components"]
    if not isinstance(comps, list):
        raise VectorFileError("components must be a list of [re, im] pairs")
    if len(comps) != d:
        raise VectorFileError(
            f"expected {d} components, found {len(comps)}", invariant="components-length"
        )
    values = []
    for i, pair in enumerate(comps):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) for v in pair)
        ):
            raise VectorFileError(f"component {i} is not a [re, im] number pair")
        values.append(complex(pair[0], pair[1]))
    arr = np.asarray(values, dtype=np.complex128)
    _check_form(d, form, arr)
    try:
        return cvec(arr, form)
    except ValueError as exc:
        raise VectorFileError(str(exc), invariant=f"{form}-form") from exc


def _check_form(d: int, form: str, arr: np.ndarray) -> None:
    if form == "normalized":
        nrm = float(np.linalg.norm(arr))
        if abs(nrm - 1.0) > norm_tolerance(d):
            raise VectorFileError(
                f"normalized vector has norm {nrm:.6g}", invariant="normalized-norm"
            )
    elif form == "v-form":
        moduli = np.abs(arr[1:])
        if np.any(np.abs(moduli - 1.0) > _LOAD_TOL):
            raise VectorFileError(
                "v-form phases must have unit modulus", invariant="vform-unit-moduli"
            )
        c0 = complex(arr[0])
        if abs(c0.real * c0.imag) > _LOAD_TOL * (1.0 + abs(c0) ** 2):
            raise VectorFileError(
                "v-form first component must be purely real or purely imaginary",
                invariant="vform-first-component",
            )
    elif form == "rescaled":
        c0 = complex(arr[0])
        if abs(c0.imag) > _LOAD_TOL * (1.0 + abs(c0)):
            raise VectorFileError(
                "rescaled first component must be real", invariant="rescaled-x0-real"
            )
        x0 = c0.real
        if abs((x0 + 2.0) ** 2 - (d + 1.0)) > _LOAD_TOL * (d + 1.0):
            raise VectorFileError(
                f"rescaled first component {x0:.6g} does not satisfy "
                f"(x0+2)^2 = d+1 = {d + 1}",
                invariant="rescaled-x0-quadratic",
            )
        if np.any(np.abs(np.abs(arr[1:]) ** 2 - abs(x0)) > _LOAD_TOL * (1.0 + abs(x0))):
            raise VectorFileError(
                "rescaled components must have squared modulus |x0|",
                invariant="rescaled-moduli",
            )


def dump_vector(vec: CVec, label: str | None = None, source: str | None = None) -> str:
    """Serialize a CVec; component floats round-trip exactly."""
    obj: dict = {
        "d": vec.dim.d,
        "form": vec.form,
        "components": [[float(z.real), float(z.imag)] for z in vec.components],
    }
    metadata = {}
    if label is not None:
        metadata["label"] = label
    if source is not None:
        metadata["source"] = source
    if metadata:
        obj["metadata"] = metadata
    return json.dumps(obj)
