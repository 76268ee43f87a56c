"""Polynomial systems for the rescaled almost-flat vector, with exact
rational coefficients.

In the rescaled coordinates x_0..x_{d-1} the ansatz contributes the pair
relations x_j x_{d-j} + x_0 and the quadratic (x_0+2)^2 - (d+1); the
X-overlap equation becomes, after eliminating conjugates via
conj(x_r) = x_{d-r}, the moduli via |x_j|^2 = -x_0, and the surd via
sqrt(d+1) = -(x_0+2), the cubic generators

    P_j = sum_m x_m x_{2j-m mod d} - (x_0 + 1) x_j^2,      j = 1..d-1.

The polynomialization is a derived identity, so build_system output is
validated by evaluating the generators at known solution vectors before any
export is trusted (the tests do exactly that).

Gröbner bases themselves are out of scope: systems are exported for external
computer-algebra engines, and candidate points are only checked for
membership numerically.
"""

from __future__ import annotations

import hashlib
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .weyl import Dim, _as_dim

__all__ = [
    "Poly",
    "PolySystem",
    "poly",
    "build_system",
    "eval_system",
    "check_d7_component_basis",
    "export_system",
    "parse_system",
    "parse_poly",
    "system_manifest",
]


@dataclass(frozen=True)
class Poly:
    """Polynomial in x_0..x_{d-1}; terms maps exponent tuples to nonzero
    rational coefficients."""

    d: int
    terms: dict[tuple[int, ...], Fraction] = field(compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", dict(self.terms))

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.d == other.d and self.terms == other.terms

    def evaluate(self, point) -> complex:
        """Evaluate at a complex point of length d (double precision)."""
        pt = np.asarray(point, dtype=np.complex128)
        if pt.shape != (self.d,):
            raise ValueError(f"expected a point of length {self.d}, got {pt.shape}")
        total = 0j
        for exps, coeff in self.terms.items():
            term = complex(float(coeff))
            for v, e in enumerate(exps):
                if e:
                    term *= pt[v] ** e
            total += term
        return total


def poly(d: int, terms: dict[tuple[int, ...], Fraction | int]) -> Poly:
    """Build a Poly, validating exponent lengths and dropping zero terms."""
    clean: dict[tuple[int, ...], Fraction] = {}
    for exps, coeff in terms.items():
        exps = tuple(int(e) for e in exps)
        if len(exps) != d:
            raise ValueError(f"exponent vector {exps} does not have length {d}")
        coeff = Fraction(coeff)
        if coeff:
            clean[exps] = coeff
    return Poly(d=d, terms=clean)


def _mono(d: int, *indices: int) -> tuple[int, ...]:
    exps = [0] * d
    for i in indices:
        exps[i % d] += 1
    return tuple(exps)


@dataclass(frozen=True)
class PolySystem:
    """A generator list over Q[x_0..x_{d-1}], optionally with a permutation
    symmetry multiplier m (adding x_j - x_{mj mod d})."""

    dim: Dim
    polys: tuple[Poly, ...]
    symmetry_multiplier: int | None = None


def build_system(dim: Dim | int, symmetry_multiplier: int | None = None) -> PolySystem:
    """Generators: pair relations, the x_0 quadratic, the X-overlap cubics,
    and optional symmetry constraints x_j - x_{mj}.

    Requires odd d; a symmetry multiplier must be coprime to d.
    """
    dim = _as_dim(dim)
    d = dim.d
    if not dim.is_odd:
        raise ValueError(f"polynomial systems are built for odd d only, got d={d}")
    m = symmetry_multiplier
    if m is not None:
        m = int(m) % d
        if math.gcd(m, d) != 1:
            raise ValueError(
                f"symmetry multiplier must be coprime to d, got m={symmetry_multiplier}"
            )
    gens: list[Poly] = []
    for j in range(1, (d - 1) // 2 + 1):
        gens.append(poly(d, {_mono(d, j, d - j): 1, _mono(d, 0): 1}))
    gens.append(poly(d, {_mono(d, 0, 0): 1, _mono(d, 0): 4, _mono(d): -(d - 3)}))
    for j in range(1, d):
        terms: dict[tuple[int, ...], Fraction] = {}
        for a in range(d):
            key = _mono(d, a, (2 * j - a) % d)
            terms[key] = terms.get(key, Fraction(0)) + 1
        key = _mono(d, 0, j, j)
        terms[key] = terms.get(key, Fraction(0)) - 1
        key = _mono(d, j, j)
        terms[key] = terms.get(key, Fraction(0)) - 1
        gens.append(poly(d, terms))
    if m is not None:
        for j in range(1, d):
            t = (m * j) % d
            if t != j:
                gens.append(poly(d, {_mono(d, j): 1, _mono(d, t): -1}))
    return PolySystem(dim=dim, polys=tuple(gens), symmetry_multiplier=m)


def eval_system(system: PolySystem, point) -> list[float]:
    """Residual moduli |p(point)| of every generator, double precision."""
    pt = np.asarray(point, dtype=np.complex128)
    if pt.shape != (system.dim.d,):
        raise ValueError(
            f"expected a point of length {system.dim.d}, got shape {pt.shape}"
        )
    return [abs(p.evaluate(pt)) for p in system.polys]


# Known lexicographic basis of the permutation-symmetric component of the
# d=7 system (x1 = x2 = x4, x3 = x5 = x6); hard-coded verbatim.
def _d7_component_basis() -> tuple[Poly, ...]:
    d = 7
    half = Fraction(1, 2)
    gens = []
    for j in (1, 2, 4):
        gens.append(poly(d, {_mono(d, j): 1, _mono(d, 6): 1, _mono(d, 0): half, _mono(d): -1}))
    for j in (3, 5):
        gens.append(poly(d, {_mono(d, j): 1, _mono(d, 6): -1}))
    gens.append(
        poly(d, {_mono(d, 6, 6): 1, _mono(d, 6, 0): half, _mono(d, 6): -1, _mono(d, 0): -1})
    )
    gens.append(poly(d, {_mono(d, 0, 0): 1, _mono(d, 0): 4, _mono(d): -4}))
    return tuple(gens)


_D7_BASIS = _d7_component_basis()


def check_d7_component_basis(point) -> float:
    """Max residual modulus of the seven hard-coded d=7 component-basis
    polynomials at a rescaled point of length 7."""
    pt = np.asarray(point, dtype=np.complex128)
    if pt.shape != (7,):
        raise ValueError(f"expected a point of length 7, got shape {pt.shape}")
    return max(abs(p.evaluate(pt)) for p in _D7_BASIS)


# ---------------------------------------------------------------------------
# plain-text export / parse
#
# Term order: graded lexicographic with variable order x1 > x2 > ... > x0
# (x_0 last, mirroring the lexicographic order used for the published d=7
# basis).  Within a monomial the factors print in that same variable order.

def _var_order(d: int) -> list[int]:
    return list(range(1, d)) + [0]


def _term_key(d: int):
    order = _var_order(d)

    def key(item):
        exps, _ = item
        return (-sum(exps), tuple(-exps[v] for v in order))

    return key


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly_line(p: Poly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for pos, (exps, coeff) in enumerate(sorted(p.terms.items(), key=_term_key(p.d))):
        factors = [
            f"x{v}" + (f"^{exps[v]}" if exps[v] > 1 else "")
            for v in _var_order(p.d)
            if exps[v]
        ]
        mono = "*".join(factors)
        mag = _coeff_str(abs(coeff))
        if mono:
            body = mono if abs(coeff) == 1 else f"{mag}*{mono}"
        else:
            body = mag
        if pos == 0:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(("+ " if coeff > 0 else "- ") + body)
    return " ".join(parts)


_FACTOR_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")
_COEFF_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_poly(line: str, d: int) -> Poly:
    """Parse one plain-format polynomial line back to exact rationals."""
    tokens = line.split()
    if not tokens:
        raise ValueError("empty polynomial line")
    terms: dict[tuple[int, ...], Fraction] = {}
    sign = 1
    pos = 0
    while pos < len(tokens):
        tok = tokens[pos]
        if pos > 0:
            if tok == "+":
                sign = 1
            elif tok == "-":
                sign = -1
            else:
                raise ValueError(f"expected '+' or '-' between terms, got {tok!r}")
            pos += 1
            if pos >= len(tokens):
                raise ValueError("dangling sign at end of line")
            tok = tokens[pos]
        else:
            sign = 1
            if tok.startswith("-"):
                sign = -1
                tok = tok[1:]
        coeff = Fraction(sign)
        exps = [0] * d
        for factor in tok.split("*"):
            m = _FACTOR_RE.match(factor)
            if m:
                idx = int(m.group(1))
                if idx >= d:
                    raise ValueError(f"variable x{idx} out of range for d={d}")
                exps[idx] += int(m.group(2) or 1)
                continue
            m = _COEFF_RE.match(factor)
            if m:
                coeff *= Fraction(int(m.group(1)), int(m.group(2) or 1))
                continue
            raise ValueError(f"cannot parse factor {factor!r}")
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + coeff
        pos += 1
    return poly(d, terms)


def export_system(system: PolySystem, format: str = "plain") -> str:
    """Render a system as text.

    "plain" is one polynomial per line in the deterministic term order;
    "cas-script" wraps the same lines in a generic ring declaration and a
    lexicographic Gröbner basis request.  Output is byte-stable.
    """
    lines = [_poly_line(p) for p in system.polys]
    if format == "plain":
        return "\n".join(lines) + "\n"
    if format == "cas-script":
        d = system.dim.d
        variables = ", ".join(f"x{v}" for v in _var_order(d))
        out = [
            "# polynomial system over the rationals",
            f"# variables in lexicographic order: {variables}",
            f"ring Q[{variables}]",
            "ideal:",
        ]
        out += ["  " + ln for ln in lines]
        out += ["task: groebner_basis", "order: lexicographic"]
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown export format {format!r}")


def parse_system(text: str, d: int | None = None) -> PolySystem:
    """Parse plain-format text back into a PolySystem.

    When d is omitted it is inferred as 1 + the largest variable index seen.
    The symmetry multiplier is not recoverable from the text and is left
    unset; generator polynomials round-trip exactly.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if d is None:
        seen = [int(m) for ln in lines for m in re.findall(r"x(\d+)", ln)]
        if not seen:
            raise ValueError("cannot infer dimension: no variables in input")
        d = max(seen) + 1
    polys = tuple(parse_poly(ln, d) for ln in lines)
    return PolySystem(dim=_as_dim(d), polys=polys, symmetry_multiplier=None)


def system_manifest(system: PolySystem, text: str) -> dict:
    """Manifest accompanying an export: dimension, multiplier, generator
    count, and the SHA-256 of the exported text."""
    return {
        "d": system.dim.d,
        "symmetry_multiplier": system.symmetry_multiplier,
        "num_generators": len(system.polys),
        "sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
    }
