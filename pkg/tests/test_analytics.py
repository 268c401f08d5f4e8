import cmath
import math

import numpy as np
import pytest

from tripods.analytics import (
    from_zu_coords,
    mc_omega_volume,
    omega_membership,
    partner_endpoint,
    reference_constants,
    expected_primitive_density,
    expected_total_density,
    slice_property_check,
    to_zu_coords,
)


def test_reference_constants_closed_forms():
    c = reference_constants()
    assert c["main_constant"] == pytest.approx(0.20947986097, abs=1e-11)
    assert c["omega_volume"] == pytest.approx(math.sqrt(3) * math.pi / 24, rel=1e-15)
    assert c["omega_volume"] == pytest.approx(0.2267249205292772, rel=1e-15)
    assert c["zeta4_inv"] == pytest.approx(90 / math.pi ** 4, rel=1e-15)
    assert c["zeta4_inv"] == pytest.approx(0.924, abs=5e-4)
    assert c["eisenstein_total"] == pytest.approx(math.pi / 12, rel=1e-15)
    assert c["nonreduced_bound"] == pytest.approx(0.0770, abs=5e-5)
    assert c["c1"] == pytest.approx(0.392 * 0.75, abs=1e-3)
    assert c["c2"] == c["zeta4_inv"]
    # main constant is the zeta(4)-primitive fraction of the region volume
    assert c["main_constant"] == pytest.approx(c["zeta4_inv"] * c["omega_volume"], rel=1e-14)


def test_expected_densities():
    assert expected_total_density(1.0) == pytest.approx(math.sqrt(3) * math.pi / 24)
    assert expected_total_density(math.sqrt(3) / 2) == pytest.approx(
        math.sqrt(3) * math.pi / 18)
    assert expected_primitive_density(1.0) == pytest.approx(
        reference_constants()["main_constant"])


def test_omega_membership_examples():
    assert omega_membership(0.5 + 0j, 0.5j)      # scaled copy of (1, i)
    assert not omega_membership(1 + 0j, 1j)      # ell^2 = 2 + sqrt(3) > 1
    assert not omega_membership(0.5j, 0.5 + 0j)  # orientation reversed


def test_omega_membership_angle_bound():
    # angle at origin of (1, -1+i) is 3*pi/4 > 2*pi/3, scaled small
    assert not omega_membership(0.2 + 0j, complex(-0.2, 0.2))


def test_zu_coordinate_maps_inverse():
    rng = np.random.Generator(np.random.PCG64(5))
    for _ in range(200):
        z = complex(*rng.normal(size=2))
        w = complex(*rng.normal(size=2))
        z2, u = to_zu_coords(z, w)
        z3, w2 = from_zu_coords(z2, u)
        assert abs(w2 - w) < 1e-12 and z3 == z


def test_unit_jacobian_of_zu_map():
    """|det| of the real 4x4 Jacobian equals 1 (finite differences).

    The map is linear, so central differences carry no truncation error; a
    coarse power-of-two step keeps float rounding below 1e-12.
    """
    rng = np.random.Generator(np.random.PCG64(9))
    h = 2.0 ** -4
    for _ in range(10):
        base = rng.normal(size=4)

        def f(v):
            z, u = to_zu_coords(complex(v[0], v[1]), complex(v[2], v[3]))
            return np.array([z.real, z.imag, u.real, u.imag])

        jac = np.empty((4, 4))
        for k in range(4):
            e = np.zeros(4)
            e[k] = h
            jac[:, k] = (f(base + e) - f(base - e)) / (2 * h)
        assert abs(abs(np.linalg.det(jac)) - 1.0) < 1e-12


def test_mc_volume_deterministic_and_within_error():
    est1 = mc_omega_volume(200_000, seed=42)
    est2 = mc_omega_volume(200_000, seed=42)
    assert est1.estimate == est2.estimate
    assert est1.standard_error == pytest.approx(
        math.pi ** 2 * math.sqrt(est1.hit_fraction * (1 - est1.hit_fraction) / est1.samples))
    assert abs(est1.estimate - est1.reference) < 4 * est1.standard_error
    assert est1.reference == pytest.approx(math.sqrt(3) * math.pi / 24, rel=1e-15)


def test_mc_volume_hit_fraction_scale():
    est = mc_omega_volume(100_000, seed=3)
    assert est.hit_fraction == pytest.approx(math.sqrt(3) / (24 * math.pi), rel=0.15)


def test_mc_volume_rejects_tiny_sample():
    with pytest.raises(ValueError):
        mc_omega_volume(100, seed=1)


def test_slice_u_equals_one():
    res = slice_property_check(1 + 0j, 10_000, seed=17)
    assert res.counterexamples == []
    assert res.area_expected == pytest.approx(math.sqrt(3) / 4)
    assert res.passed


def test_slice_scaled_rotated():
    u = 0.5 * cmath.exp(1j * math.pi / 4)
    res = slice_property_check(u, 10_000, seed=23)
    assert res.counterexamples == []
    assert res.area_expected == pytest.approx(math.sqrt(3) / 16)
    assert res.passed


def test_slice_zero_is_empty():
    res = slice_property_check(0j, 1000, seed=1)
    assert res.passed and res.area_expected == 0.0


def test_slice_rejects_bad_u():
    with pytest.raises(ValueError):
        slice_property_check(2 + 0j, 100, seed=1)
    with pytest.raises(ValueError):
        slice_property_check(-0.5 + 0.1j, 100, seed=1)  # arg > 2*pi/3


def test_slice_equivariance():
    """z in slice(u) iff c*z in slice(c*u) for admissible u, cu."""
    from tripods.analytics import _point_segment_distance, _triangle_vertices

    rng = np.random.Generator(np.random.PCG64(31))
    u = 0.9 * cmath.exp(1j * 0.3)
    checked = 0
    for _ in range(3000):
        c = (0.2 + 0.75 * rng.random()) * cmath.exp(1j * (rng.random() * 0.6))
        cu = c * u
        if abs(cu) > 1 or not (cu.imag > 0 and math.sqrt(3) * cu.real + cu.imag > 0):
            continue
        z = complex(*(rng.random(2) * 2 - 1)) * abs(u)
        m1 = omega_membership(z, partner_endpoint(z, u))
        m2 = omega_membership(c * z, partner_endpoint(c * z, cu))
        if m1 != m2:
            # disagreement is only tolerable within float rounding
            # of the slice-triangle boundary
            v0, v1, v2 = _triangle_vertices(u)
            dist = min(_point_segment_distance(z, v0, v1),
                       _point_segment_distance(z, v1, v2),
                       _point_segment_distance(z, v2, v0))
            assert dist < 1e-9, (z, u, c)
        checked += 1
    assert checked > 1000
