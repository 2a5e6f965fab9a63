"""Smoke tests for the python module; runnable under pytest or directly."""

import cmath
import math

import treeharm as th


def test_tree_counts():
    assert th.sphere_size(2, 0) == 1
    assert th.sphere_size(2, 3) == 12
    assert th.sphere_size(4, 2) == 20
    assert th.ball_size(2, 3) == 22
    assert th.distance(2, [0, 1], [0, 0]) == 2
    assert th.distance(2, [], [2, 1, 0]) == 3


def test_spectral_constants():
    assert abs(th.gamma_eigenvalue(4, 0.0) - 0.8) < 1e-15
    tau = th.spectral_period(2)
    assert abs(tau - 2.0 * math.pi / math.log(2.0)) < 1e-15
    phi = th.spherical_function(2, 0.0, 4)
    assert abs(phi[2] - 5.0 / 6.0) < 1e-14
    lam = 0.31 * tau
    c_sum = th.c_function(2, lam) + th.c_function(2, -lam)
    assert abs(c_sum - 1.0) < 1e-13


def test_density_mass():
    tau = th.spectral_period(3)
    nodes = 512
    mass = sum(
        th.plancherel_weight(3, -0.5 * tau + j * tau / nodes)
        for j in range(nodes)
    ) * (tau / nodes)
    assert abs(mass - 1.0) < 1e-10


def test_transform_roundtrip():
    values = [1.0, -0.5, 0.25, 0.125]
    samples = th.spherical_transform(2, values)
    back, budget = th.inverse_spherical(2, samples, 3)
    assert budget < 1e-8
    for got, want in zip(back, values):
        assert abs(got - want) < 1e-10


def test_riesz_kernel_decay():
    kernel, budget = th.riesz_kernel(2, 1 + 0j, 8.0)
    assert abs(kernel[0] - (1.0 - 1.0 / 8.0)) < 1e-12
    assert abs(kernel[1] - 1.0 / 24.0) < 1e-12
    rep = th.kernel_report(2, 0.5 + 1j, 64.0)
    assert max(rep["decay_ratio"]) <= th.decay_bound(2) + 1e-8
    assert rep["route_discrepancy"] <= 1e-8


def test_heat_kernel_mass():
    values, budget, tail = th.heat_kernel(2, 1.0, 30)
    mass = sum(
        v.real * (1 if n == 0 else 3 * 2 ** (n - 1))
        for n, v in enumerate(values)
    )
    assert abs(mass - 1.0) < 1e-9
    assert all(v.real > -1e-14 for v in values)


def test_comparison_norms():
    value, diverges = th.comparison_lq_norm(2, 4.0)
    assert not diverges
    assert abs(value**4 - 2.5) < 1e-12
    _, diverges2 = th.comparison_lq_norm(2, 2.0)
    assert diverges2


def test_error_mapping():
    try:
        th.sphere_size(1, 0)
    except ValueError:
        pass
    else:
        raise AssertionError("q = 1 accepted")
    try:
        th.c_function(2, 0j)
    except RuntimeError:
        pass
    else:
        raise AssertionError("pole accepted")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"{name}: ok")
    print("smoke tests passed")
