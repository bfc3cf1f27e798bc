import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equichord import (
    angle_periodicity_check,
    beta_sum_check,
    circulant_spectrum,
    connelly_check,
    construct_2kk,
    construct_inscribed,
    contact_angle,
    equiangular_family_basis,
    exists_nontrivial,
    family_member,
    normalize_similarity,
    polygon_from_sides,
    solve_restr2,
    verify_gutkin,
)
from equichord.errors import CoprimePair, Infeasible, NotApplicable, OutOfRange
from equichord.polygons import as_gutkin_polygon, regular_polygon


class TestVerify:
    def test_regular_polygons(self):
        for n in (4, 5, 7, 9):
            for k in range(2, n - 1):
                rep = verify_gutkin(regular_polygon(n), k)
                assert rep["is_gutkin"]
                assert rep["alpha_measured"] == pytest.approx(contact_angle(n, k), abs=1e-12)

    def test_rectangle_k2_not_gutkin(self):
        rect = np.array([[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [0.0, 1.0]])
        assert not verify_gutkin(rect, 2)["is_gutkin"]

    def test_rectangle_k3_gutkin(self):
        # k = n - 1: the "diagonals" are the sides, every rectangle qualifies
        rect = np.array([[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [0.0, 1.0]])
        rep = verify_gutkin(rect, 3)
        assert rep["is_gutkin"]
        assert rep["alpha_measured"] == pytest.approx(np.pi / 2, abs=1e-12)


class TestSpectrum:
    def test_hand_derived_6_3(self):
        # lambda_r = i sqrt(3) (omega^{2r} - 1), zero exactly at r in {0, 3}
        spec = circulant_spectrum(6, 3)
        assert spec.zero_set == (0, 3)
        assert spec.M == 1
        omega = np.exp(2j * np.pi / 6)
        for r in range(6):
            expect = 1j * np.sqrt(3.0) * (omega ** (2 * r) - 1)
            assert abs(spec.eigenvalues[r] - expect) < 1e-12

    def test_24_5_includes_half_mode(self):
        spec = circulant_spectrum(24, 5)
        assert spec.zero_set == (0, 7, 12, 17)
        assert spec.M == 3

    def test_no_solutions_5_2(self):
        spec = circulant_spectrum(5, 2)
        assert spec.zero_set == (0,)
        assert spec.M == 0

    def test_sweep_matches_restr2_and_connelly(self):
        for n in range(5, 61):
            for k in range(2, n // 2 + 1):
                spec = circulant_spectrum(n, k)
                rs = [s.r for s in solve_restr2(n, k)]
                assert sorted(set(spec.zero_set) - {0}) == rs, (n, k)
                if k < n / 2:
                    below = {r for r in spec.zero_set if 1 < r < n / 2}
                    arith = {r for r in range(2, (n - 1) // 2 + 1)
                             if connelly_check(n, k, r)}
                    assert below == arith, (n, k)

    def test_exists_nontrivial_criterion(self):
        for n in range(5, 31):
            for k in range(2, n // 2 + 1):
                expect = (k >= 3) if n == 2 * k else (math.gcd(n, k - 1) > 1)
                assert exists_nontrivial(n, k) == expect

    def test_8_4_family_despite_coprimality(self):
        # gcd(8, 3) = 1 yet nontrivial (8,4)-gons exist: n = 2k is special
        assert math.gcd(8, 3) == 1
        p = construct_2kk(4, [0.3, 0.5])
        assert verify_gutkin(p.vertices, 4, tol=1e-8)["is_gutkin"]
        assert circulant_spectrum(8, 4).M == 2


class TestFamily:
    def test_basis_dimension_2kk(self):
        for k in (3, 4, 5):
            assert len(equiangular_family_basis(2 * k, k)) == k - 2

    def test_members_are_gutkin(self):
        basis = equiangular_family_basis(24, 5)
        assert len(basis) == 3
        for i in range(3):
            sides = family_member(24, 5, [0.3 if j == i else 0.0 for j in range(3)])
            assert sides.min() > 0
            rep = verify_gutkin(polygon_from_sides(sides), 5, tol=1e-8)
            assert rep["is_gutkin"]

    def test_default_member_positive(self):
        sides = family_member(6, 3)
        assert sides.min() > 0
        assert verify_gutkin(polygon_from_sides(sides), 3, tol=1e-8)["is_gutkin"]

    def test_no_equiangular_family_for_12_4(self):
        # nontrivial (12,4)-gons exist (inscribed) but none are equiangular
        assert equiangular_family_basis(12, 4) == []
        with pytest.raises(Infeasible):
            family_member(12, 4)


class TestConstruct2kk:
    def test_side_pattern(self):
        p = construct_2kk(3, [0.3])
        assert p.alpha == pytest.approx(np.pi / 3, abs=1e-12)
        sides = np.linalg.norm(np.roll(p.vertices, -1, axis=0) - p.vertices, axis=1)
        assert sides[0] == pytest.approx(0.3, abs=1e-12)
        assert sides[1] == pytest.approx(0.7, abs=1e-12)
        # main diagonals all have unit length
        for i in range(3):
            d = np.linalg.norm(p.vertices[i + 3] - p.vertices[i])
            assert d == pytest.approx(1.0, abs=1e-10)

    def test_infeasible(self):
        with pytest.raises(Infeasible):
            construct_2kk(3, [1.2])

    def test_beta_undefined(self):
        p = construct_2kk(3, [0.3])
        with pytest.raises(NotApplicable):
            beta_sum_check(p)


class TestConstructInscribed:
    def test_hexagon(self):
        p = construct_inscribed(6, 3, [0.8, 2 * np.pi / 3 - 0.8])
        assert p.alpha == pytest.approx(np.pi / 3, abs=1e-10)
        assert angle_periodicity_check(p)

    def test_12_4(self):
        w = np.array([0.4, 0.6, 1.0])
        p = construct_inscribed(12, 4, w / w.sum() * 2 * np.pi / 4)
        assert p.alpha == pytest.approx(contact_angle(12, 4), abs=1e-10)
        assert beta_sum_check(p) < 1e-9
        assert angle_periodicity_check(p)

    def test_coprime_rejected(self):
        with pytest.raises(CoprimePair):
            construct_inscribed(7, 2, [1.0])

    def test_nonregular(self):
        p = construct_inscribed(6, 3, [0.8, 2 * np.pi / 3 - 0.8])
        sides = np.linalg.norm(np.roll(p.vertices, -1, axis=0) - p.vertices, axis=1)
        assert sides.std() > 1e-3


class TestNormalize:
    def test_canonical_frame(self):
        p = normalize_similarity(construct_2kk(3, [0.3]))
        assert np.allclose(p.vertices[0], [0.0, 0.0], atol=1e-12)
        d = np.linalg.norm(p.vertices[3] - p.vertices[0])
        assert d == pytest.approx(1.0, abs=1e-12)


class TestRangeChecks:
    def test_contact_angle_formula(self):
        assert contact_angle(24, 5) == pytest.approx(np.pi * 4 / 24, abs=1e-15)
        with pytest.raises(OutOfRange):
            contact_angle(6, 1)

    def test_spectral_range(self):
        with pytest.raises(OutOfRange):
            circulant_spectrum(10, 6)

    @given(st.integers(min_value=5, max_value=24))
    @settings(max_examples=20, deadline=None)
    def test_verify_alpha_matches_formula(self, n):
        v = regular_polygon(n)
        for k in range(2, n // 2 + 1):
            rep = verify_gutkin(v, k)
            assert rep["alpha_measured"] == pytest.approx(contact_angle(n, k), abs=1e-10)

    def test_as_gutkin_polygon_rejects(self):
        rect = np.array([[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [0.0, 1.0]])
        with pytest.raises(Exception):
            as_gutkin_polygon(rect, 2)
