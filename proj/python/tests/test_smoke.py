import cmath
import math

import pytest

import quantum_knot as qk


def test_half_integer_hankel():
    z = 1.0
    want = 1j * math.sqrt(2 / math.pi) * cmath.exp(-1j * z)
    assert abs(qk.hankel(2, 0.5, z) - want) < 1e-14


def test_monodromy_examples():
    a, b = qk.monodromy_coeffs(1.0, 2)
    assert abs(a - 3) < 1e-14 and abs(b - 2) < 1e-14
    a, b = qk.monodromy_coeffs(0.5, 2)
    assert abs(a + 1) < 1e-14 and abs(b) < 1e-14


def test_oracle_matches_circuit_relation():
    a, b = qk.monodromy_coeffs(0.7, 2)
    z0 = 3.0
    formula = a * qk.hankel(2, 0.7, z0) + b * qk.hankel(1, 0.7, z0)
    assert abs(qk.continuation_oracle(0.7, z0, 2 * math.pi) - formula) < 1e-8 * abs(formula)


def test_shoot_quantized_and_generic():
    spec = qk.ContourSpec(N=1)
    assert qk.shoot(0.5, 1, 1.0, spec).residual <= 1e-6
    r = qk.shoot(0.3, 1, 1.0, spec)
    assert abs(r.c1 / r.c2 - r.predicted_ratio) < 1e-6 * abs(r.predicted_ratio)


def test_scan_finds_quantized_orders():
    minima = qk.scan_sturmian(1, 1.0, 0.05, 1.95, 40, qk.ContourSpec(N=1))
    assert [round(nu, 6) for nu, _ in minima] == [0.5, 1.5]


def test_quantization_tables():
    assert [q.M for q in qk.allowed_angular_momenta(2, 5)] == [1, 2, 3, 5]
    assert qk.is_bound_state(0.25, 2)
    assert not qk.is_bound_state(1.0, 1)
    assert qk.dimension_dichotomy(3, 0, 1) == (True, 1)
    assert qk.dimension_dichotomy(2, 1, 3) == (False, None)
    gamma, forbidden = qk.coupling_for_knot(4, 2, 3, 5)
    assert not forbidden
    assert abs(qk.effective_order(4, 2, gamma) - 5 / 6) < 1e-12


def test_surface_and_strip():
    p = qk.SurfacePoint(2.0, 0.5 + 2 * math.pi)
    assert p.sector == 3
    assert qk.map_to_strip(1.0, -math.pi / 2) == (0.0, 0.0)
    rho, theta = qk.map_from_strip(*qk.map_to_strip(0.3, 7.0))
    assert abs(rho - 0.3) < 1e-15 and abs(theta - 7.0) < 1e-14
    pts = qk.contour_points(qk.ContourSpec(N=0, n_samples=50))
    assert all(abs(z.imag + 1.0) < 1e-13 for z in pts)


def test_errors_become_python_exceptions():
    with pytest.raises(ValueError):
        qk.ContourSpec(N=1, eps=2.0)
    with pytest.raises(ValueError):
        qk.effective_order(3, 0, -1.0)
    with pytest.raises(ValueError):
        qk.hankel(3, 0.5, 1.0)
