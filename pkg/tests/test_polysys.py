"""System construction, membership checks, and export round-trips."""

import hashlib
import math
from fractions import Fraction

import numpy as np
import pytest
from helpers import d7_solution, d19_solution, d67_solution, normalize_rescaled

from flatsic import (
    build_system,
    check_d7_component_basis,
    cvec,
    eval_system,
    export_system,
    parse_poly,
    parse_system,
    poly,
    system_manifest,
    x_overlap_residual,
    z_shift,
)


def mono(d, *idx):
    e = [0] * d
    for i in idx:
        e[i] += 1
    return tuple(e)


def d7_ghost_points():
    """The two first-component points with x0 > 0, from the quadratic system
    x1 + x6 = 1 - x0/2, x1 x6 = -x0 (independent of the generator builder)."""
    x0 = -2.0 + 2.0 * math.sqrt(2.0)
    b = 1.0 - x0 / 2.0
    root = math.sqrt(b * b + 4.0 * x0)
    points = []
    for sgn in (+1, -1):
        t1 = (b + sgn * root) / 2.0
        t6 = (b - sgn * root) / 2.0
        points.append(np.array([x0, t1, t1, t6, t1, t6, t6], dtype=complex))
    return points


class TestBuildSystem:
    def test_d7_generator_inventory(self):
        system = build_system(7)
        assert len(system.polys) == 3 + 1 + 6
        quad = poly(7, {mono(7, 0, 0): 1, mono(7, 0): 4, mono(7): -4})
        assert quad in system.polys
        for j in range(1, 4):
            assert poly(7, {mono(7, j, 7 - j): 1, mono(7, 0): 1}) in system.polys

    def test_quadratic_scales_with_d(self):
        system = build_system(11)
        quad = poly(11, {mono(11, 0, 0): 1, mono(11, 0): 4, mono(11): -8})
        assert quad in system.polys

    def test_d67_symmetry_constraints(self):
        system = build_system(67, symmetry_multiplier=29)
        assert poly(67, {mono(67, 1): 1, mono(67, 29): -1}) in system.polys
        assert poly(67, {mono(67, 2): 1, mono(67, 58): -1}) in system.polys
        assert system.symmetry_multiplier == 29

    def test_d19_order3_symmetry(self):
        system = build_system(19, symmetry_multiplier=7)
        # 7 has order 3 mod 19, so each j pairs with 7j
        for j in range(1, 19):
            assert poly(19, {mono(19, j): 1, mono(19, (7 * j) % 19): -1}) in system.polys
        sym = [p for p in system.polys if len(p.terms) == 2 and all(c in (1, -1) for c in p.terms.values()) and all(sum(e) == 1 for e in p.terms)]
        assert len(sym) == 18

    def test_even_dimension_rejected(self):
        with pytest.raises(ValueError):
            build_system(12)

    def test_non_coprime_multiplier(self):
        with pytest.raises(ValueError):
            build_system(9, symmetry_multiplier=3)


class TestEvalSystem:
    def test_d7_solutions_on_variety(self):
        system = build_system(7)
        for coeff in (-1, +1):
            residuals = eval_system(system, d7_solution(coeff))
            assert max(residuals) < 1e-10

    def test_x_overlap_generators_vanish(self):
        # the derived polynomialization must vanish at the published vectors
        system = build_system(7)
        cubic = [p for p in system.polys if any(sum(e) == 3 for e in p.terms)]
        assert len(cubic) == 6
        for coeff in (-1, +1):
            for p in cubic:
                assert abs(p.evaluate(d7_solution(coeff))) < 1e-10

    def test_zero_vector(self):
        system = build_system(7)
        residuals = eval_system(system, np.zeros(7))
        assert max(residuals) == pytest.approx(4.0)  # the x0 quadratic

    def test_d19_solution(self):
        system = build_system(19)
        assert max(eval_system(system, d19_solution())) < 1e-10

    def test_d19_with_symmetry(self):
        system = build_system(19, symmetry_multiplier=4)  # order 9, residue classes
        assert max(eval_system(system, d19_solution())) < 1e-10

    def test_d67_with_symmetry(self):
        system = build_system(67, symmetry_multiplier=29)
        assert max(eval_system(system, d67_solution())) < 1e-10

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            eval_system(build_system(7), np.zeros(5))

    def test_solution_consistency(self):
        # on-variety points with x0 < 0 satisfy the X-overlap equation once
        # normalized
        for point, d in ((d7_solution(+1), 7), (d19_solution(), 19)):
            assert max(eval_system(build_system(d), point)) < 1e-10
            assert point[0].real < 0
            assert x_overlap_residual(normalize_rescaled(point)) < 1e-8


class TestD7ComponentBasis:
    def test_published_solutions(self):
        for coeff in (-1, +1):
            assert check_d7_component_basis(d7_solution(coeff)) < 1e-10

    def test_ghost_points(self):
        # the variety's symmetric component has 4 points: two beta branches
        # for each sign of x0; all must satisfy the basis and the system
        system = build_system(7)
        for point in d7_ghost_points():
            assert check_d7_component_basis(point) < 1e-10
            assert max(eval_system(system, point)) < 1e-10

    def test_z_shift_leaves_component(self):
        shifted = z_shift(cvec(d7_solution(-1), "rescaled"), 1)
        assert check_d7_component_basis(shifted.components) > 0.01

    def test_length_check(self):
        with pytest.raises(ValueError):
            check_d7_component_basis(np.zeros(5))


class TestExport:
    def test_d7_plain_lines(self):
        text = export_system(build_system(7))
        lines = text.splitlines()
        assert "x0^2 + 4*x0 - 4" in lines
        assert "x1*x6 + x0" in lines
        assert "x2*x5 + x0" in lines
        assert "x3*x4 + x0" in lines
        assert len(lines) == 10

    def test_byte_stable(self):
        a = export_system(build_system(19, symmetry_multiplier=7))
        b = export_system(build_system(19, symmetry_multiplier=7))
        assert a == b

    def test_round_trip_exact(self):
        for d, m in ((7, None), (11, None), (19, 7)):
            system = build_system(d, symmetry_multiplier=m)
            back = parse_system(export_system(system))
            assert back.dim.d == d
            assert list(back.polys) == list(system.polys)

    def test_round_trip_preserves_fractions(self):
        from flatsic import PolySystem, make_dimension

        p = poly(3, {mono(3, 1, 2): Fraction(7, 3), mono(3): Fraction(-1, 2)})
        system = PolySystem(dim=make_dimension(3), polys=(p,), symmetry_multiplier=None)
        line = export_system(system).strip()
        assert parse_poly(line, 3) == p

    def test_cas_script_format(self):
        text = export_system(build_system(7), format="cas-script")
        assert "ring Q[x1, x2, x3, x4, x5, x6, x0]" in text
        assert "x0^2 + 4*x0 - 4" in text
        assert "groebner_basis" in text

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            export_system(build_system(7), format="latex")

    def test_parse_poly_cases(self):
        p = parse_poly("-x3^2*x0 + 2*x1*x5", 7)
        assert p == poly(7, {mono(7, 3, 3, 0): -1, mono(7, 1, 5): 2})
        q = parse_poly("x6^2 + 1/2*x6*x0 - x6 - x0", 7)
        assert q.terms[mono(7, 6, 0)] == Fraction(1, 2)
        with pytest.raises(ValueError):
            parse_poly("x9 + 1", 7)
        with pytest.raises(ValueError):
            parse_poly("x1 +", 7)

    def test_infer_dimension(self):
        system = parse_system("x1*x6 + x0\nx0^2 + 4*x0 - 4")
        assert system.dim.d == 7


class TestManifest:
    def test_fields_and_hash(self):
        system = build_system(7)
        text = export_system(system)
        manifest = system_manifest(system, text)
        assert manifest["d"] == 7
        assert manifest["symmetry_multiplier"] is None
        assert manifest["num_generators"] == 10
        assert manifest["sha256"] == hashlib.sha256(text.encode()).hexdigest()
