import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from argwind.boundary import from_expression, from_fourier, from_samples
from argwind.errors import HasLogPart, PointOutsideDomain, ResidualTooLarge, TooFewSamples
from argwind.geometry import boundary_sampling, contains, interior_grid
from argwind.harmonic import (Basis, HarmonicRepresentation, conjugation_constants,
                              harmonic_measures, periods, solve_dirichlet, split_conjugable)

from oracles import ConcentricAnnulus, random_annulus_points

LOG_HALF = np.log(0.5)


def piecewise(domain, m, per_circle):
    """Boundary data given by one callable per circle."""
    s = boundary_sampling(domain, m)
    return from_samples(domain, [fn(p) for fn, p in zip(per_circle, s.points)])


def test_disc_square_is_basis_member(disc):
    h = solve_dirichlet(disc, from_expression("z^2", disc, 256), 8)
    expected = np.zeros(h.coef.size, dtype=complex)
    expected[2] = 1
    np.testing.assert_allclose(h.coef, expected, atol=1e-13)
    assert h.residual <= 1e-12


def test_annulus_outer_indicator(annulus):
    f = piecewise(annulus, 256, [lambda z: 0 * z, lambda z: 1 + 0 * z])
    h = solve_dirichlet(annulus, f, 16)
    assert h.holo_outer[0] == pytest.approx(1, abs=1e-12)
    assert h.logs[0] == pytest.approx(-1 / LOG_HALF, abs=1e-12)


def test_annulus_abs2_data(annulus):
    # u = 1 + beta log|z| with 1 on the outer circle and 0.25 on the inner one
    h = solve_dirichlet(annulus, from_expression("abs2(z)", annulus, 256), 16)
    assert h.holo_outer[0] == pytest.approx(1, abs=1e-12)
    assert h.logs[0] == pytest.approx((0.25 - 1) / LOG_HALF, abs=1e-12)


def test_evaluate_constant_and_linear(disc, annulus):
    b = Basis(disc, 4)
    c = np.zeros(b.size, dtype=complex)
    c[0] = 2 - 1j
    assert HarmonicRepresentation(b, c).evaluate(0.37j) == pytest.approx(2 - 1j)
    c = np.zeros(b.size, dtype=complex)
    c[1] = 1
    assert HarmonicRepresentation(b, c).evaluate(0.3) == pytest.approx(0.3)
    ba = Basis(annulus, 4)
    c = np.zeros(ba.size, dtype=complex)
    c[ba.logs] = 1
    assert HarmonicRepresentation(ba, c).evaluate(0.7j) == pytest.approx(np.log(0.7))


def test_evaluate_outside_raises(annulus):
    h = solve_dirichlet(annulus, from_expression("z", annulus, 256), 16)
    with pytest.raises(PointOutsideDomain):
        h.evaluate(0.1)
    h.evaluate(0.5)  # boundary is fine


def test_oversampling_precondition(annulus):
    with pytest.raises(TooFewSamples):
        solve_dirichlet(annulus, from_expression("z", annulus, 64), 24)


def test_residual_cap(annulus):
    # |cos| has a kink; degree 8 cannot reach 1e-8
    f = from_samples(annulus, [np.abs(np.cos(np.linspace(0, 2 * np.pi, 128, endpoint=False)))] * 2)
    with pytest.raises(ResidualTooLarge):
        solve_dirichlet(annulus, f, 8, residual_cap=1e-8)


def test_matches_mode_oracle_on_annulus(annulus, rng):
    expr = "conj(z)^3 + 0.2*z^2 - abs2(z)*conj(z) + 1/(z-3)"
    f = from_expression(expr, annulus, 512)
    h = solve_dirichlet(annulus, f, 24)
    from argwind.expressions import parse_expression
    e = parse_expression(expr)
    oracle = ConcentricAnnulus(0.5, 1.0, e, e)
    z = random_annulus_points(rng, 100)
    np.testing.assert_allclose(h.evaluate(z), oracle(z), atol=1e-8)
    assert h.logs[0] == pytest.approx(oracle.log_coefficient, abs=1e-9)


def test_measures_disc(disc):
    ms = harmonic_measures(disc, 8, 128)
    assert len(ms) == 1
    z = interior_grid(disc, 9)
    np.testing.assert_allclose(ms[0].evaluate(z), 1, atol=1e-13)


def test_measures_annulus_closed_form(annulus, rng):
    ms = harmonic_measures(annulus, 16, 256)
    z = random_annulus_points(rng, 100)
    np.testing.assert_allclose(ms[0].evaluate(z), np.log(np.abs(z)) / LOG_HALF, atol=1e-8)
    np.testing.assert_allclose(ms[0].evaluate(z) + ms[1].evaluate(z), 1, atol=1e-8)


@pytest.mark.parametrize("name", ["triple", "offcenter"])
def test_measures_partition_of_unity(name, request):
    domain = request.getfixturevalue(name)
    ms = harmonic_measures(domain, 24, 512)
    z = interior_grid(domain, 15)
    total = sum(w.evaluate(z) for w in ms.measures)
    np.testing.assert_allclose(total, 1, atol=1e-8)
    for k, w in enumerate(ms.measures):
        vals = w.on_boundary(512)
        for j, v in enumerate(vals):
            np.testing.assert_allclose(v, 1.0 if j == k else 0.0, atol=1e-8)


def test_periods(annulus):
    ms = harmonic_measures(annulus, 16, 256)
    assert periods(ms[0])[0] == pytest.approx(np.pi * 1j / LOG_HALF)
    z = solve_dirichlet(annulus, from_expression("z^2 + conj(z)", annulus, 256), 16)
    np.testing.assert_allclose(periods(z), 0, atol=1e-13)
    logz = piecewise(annulus, 256, [lambda z: np.log(np.abs(z)) + 0j] * 2)
    assert periods(solve_dirichlet(annulus, logz, 16))[0] == pytest.approx(np.pi * 1j)


def test_period_matches_contour_integral(triple):
    # independent check of "period = pi i lambda": integrate du/dz around each hole numerically
    f = from_expression("abs2(z) + conj(z)^2", triple, 512)
    h = solve_dirichlet(triple, f, 24)
    for j, hole in enumerate(triple.holes):
        m = 2048
        t = 2 * np.pi * np.arange(m) / m
        z = hole.center + 1.2 * hole.radius * np.exp(1j * t)
        step = 1e-6
        du_dz = 0.5 * ((h.evaluate(z + step) - h.evaluate(z - step))
                       - 1j * (h.evaluate(z + 1j * step) - h.evaluate(z - 1j * step))) / (2 * step)
        dz = 1j * (z - hole.center) * (2 * np.pi / m)
        assert np.sum(du_dz * dz) == pytest.approx(periods(h)[j], abs=1e-6)


def test_conjugation_constants_annulus(annulus):
    ms = harmonic_measures(annulus, 16, 256)
    logz = piecewise(annulus, 256, [lambda z: np.log(np.abs(z)) + 0j] * 2)
    c = conjugation_constants(annulus, solve_dirichlet(annulus, logz, 16), ms)
    assert c[0] == pytest.approx(-LOG_HALF, abs=1e-12)
    zero = solve_dirichlet(annulus, from_expression("z + 1/z", annulus, 256), 16)
    np.testing.assert_allclose(conjugation_constants(annulus, zero, ms), 0, atol=1e-12)


def test_conjugation_constants_kill_logs(triple):
    ms = harmonic_measures(triple, 24, 512)
    h = solve_dirichlet(triple, from_expression("conj(z)*z^2 + abs2(z-0.1)", triple, 512), 24)
    c = conjugation_constants(triple, h, ms)
    fixed = h + sum(cj * w for cj, w in zip(c, ms.hole_measures))
    np.testing.assert_allclose(fixed.logs, 0, atol=1e-10)


def test_conjugation_constants_linear(triple):
    ms = harmonic_measures(triple, 24, 512)
    h1 = solve_dirichlet(triple, from_expression("abs2(z)", triple, 512), 24)
    h2 = solve_dirichlet(triple, from_expression("conj(z)^2*z", triple, 512), 24)
    c = lambda h: conjugation_constants(triple, h, ms)
    np.testing.assert_allclose(c(h1 + h2), c(h1) + c(h2), atol=1e-10)


def test_constants_continuity(annulus):
    ms = harmonic_measures(annulus, 16, 256)
    base = from_expression("abs2(z)*conj(z) + conj(z)^2", annulus, 256)
    c0 = conjugation_constants(annulus, solve_dirichlet(annulus, base, 16), ms)
    for delta in (1e-2, 1e-3):
        # means i delta inside, -delta outside add delta (1 + i) omega_1 - delta, so dc = -delta (1 + i)
        pert = from_fourier(annulus, [{0: 1j * delta}, {0: -delta}], 256)
        c1 = conjugation_constants(annulus, solve_dirichlet(annulus, base + pert, 16), ms)
        assert c1[0] - c0[0] == pytest.approx(-delta * (1 + 1j), abs=1e-12)
        for inner, outer in (({0: delta, 1: delta}, {3: delta}), ({2: delta}, {-2: delta})):
            pert = from_fourier(annulus, [inner, outer], 256)
            c1 = conjugation_constants(annulus, solve_dirichlet(annulus, base + pert, 16), ms)
            assert np.max(np.abs(c1 - c0)) <= 100 * delta


def test_split_re_z(disc):
    f = from_expression("(z + conj(z))/2", disc, 128)
    F, G = split_conjugable(solve_dirichlet(disc, f, 8))
    np.testing.assert_allclose(F.outer, [0, 0.5] + [0] * 7, atol=1e-14)
    np.testing.assert_allclose(G.outer, [0, 0.5] + [0] * 7, atol=1e-14)


def test_split_holomorphic(annulus):
    F, G = split_conjugable(solve_dirichlet(annulus, from_expression("z^2", annulus, 256), 16))
    assert F(0.7) == pytest.approx(0.49)
    np.testing.assert_allclose(G.outer, 0, atol=1e-13)
    np.testing.assert_allclose(G.holes, 0, atol=1e-13)


def test_split_rejects_log(annulus):
    b = Basis(annulus, 4)
    c = np.zeros(b.size, dtype=complex)
    c[b.logs] = 0.1
    with pytest.raises(HasLogPart):
        split_conjugable(HarmonicRepresentation(b, c))


def test_split_round_trip(triple):
    ms = harmonic_measures(triple, 24, 512)
    h = solve_dirichlet(triple, from_expression("conj(z)^2 + abs2(z)*z", triple, 512), 24)
    h = h + sum(c * w for c, w in zip(conjugation_constants(triple, h, ms), ms.hole_measures))
    F, G = split_conjugable(h, tol=1e-9)
    z = boundary_sampling(triple, 512).all_points
    np.testing.assert_allclose(F(z) + np.conj(G(z)), h.evaluate(z, check=False), atol=1e-10)


def test_holo_series_derivative(triple):
    h = solve_dirichlet(triple, from_expression("z^3 + 1/(z+0.4) + 2/(z-0.45)^2", triple, 512), 24)
    F, _ = split_conjugable(h)
    z0, step = 0.1 + 0.5j, 1e-5
    fd = (F(z0 + step) - F(z0 - step)) / (2 * step)
    assert F.derivative(z0) == pytest.approx(fd, abs=1e-7)
    assert F.derivative(z0) == pytest.approx(3 * z0 ** 2 - 1 / (z0 + 0.4) ** 2 - 4 / (z0 - 0.45) ** 3, abs=1e-8)


def test_real_data_gives_symmetric_parts(triple):
    h = solve_dirichlet(triple, from_expression("abs2(z) + z + conj(z)", triple, 512), 24)
    np.testing.assert_allclose(h.anti_outer, np.conj(h.holo_outer[1:]), atol=1e-10)
    np.testing.assert_allclose(h.anti_holes, np.conj(h.holo_holes), atol=1e-10)
    np.testing.assert_allclose(h.logs.imag, 0, atol=1e-10)


@given(st.integers(0, 2 * 9 * 3 + 2), st.complex_numbers(min_magnitude=0.1, max_magnitude=3))
def test_basis_members_recovered(idx, scale):
    from argwind.geometry import Circle, validate_domain
    dom = validate_domain(Circle(0, 1), [Circle(-0.4, 0.15), Circle(0.45, 0.15)])
    b = Basis(dom, 9)
    c = np.zeros(b.size, dtype=complex)
    c[idx] = scale
    member = HarmonicRepresentation(b, c)
    s = boundary_sampling(dom, 128)
    f = from_samples(dom, [member.evaluate(p, check=False) for p in s.points])
    np.testing.assert_allclose(solve_dirichlet(dom, f, 9).coef, c, atol=1e-10)


trig = st.dictionaries(st.integers(-5, 5), st.complex_numbers(max_magnitude=2), max_size=4)


@given(trig, trig, st.integers(0, 10_000))
def test_maximum_principle(d_in, d_out, seed):
    from argwind.geometry import Circle, validate_domain
    dom = validate_domain(Circle(0, 1), [Circle(0.3, 0.3)])
    # real data: symmetrize the Fourier data
    sym = lambda d: {**{k: v / 2 for k, v in d.items()},
                     **{-k: np.conj(v) / 2 + d.get(-k, 0) / 2 for k, v in d.items()}}
    f = from_fourier(dom, [sym(d_in), sym(d_out)], 512)
    vals = f.all_values.real
    h = solve_dirichlet(dom, from_samples(dom, [v.real for v in f.values]), 24)
    rng = np.random.default_rng(seed)
    z = rng.uniform(-1, 1, 400) + 1j * rng.uniform(-1, 1, 400)
    z = z[contains(dom, z)][:100]
    u = h.evaluate(z).real
    assert u.min() >= vals.min() - 1e-8 and u.max() <= vals.max() + 1e-8


@given(st.complex_numbers(max_magnitude=3), st.complex_numbers(max_magnitude=3))
def test_periods_linear(a, b):
    from argwind.geometry import Circle, validate_domain
    dom = validate_domain(Circle(0, 1), [Circle(0, 0.5)])
    h1 = solve_dirichlet(dom, from_expression("abs2(z)", dom, 256), 16)
    h2 = solve_dirichlet(dom, from_expression("conj(z)*abs2(z)", dom, 256), 16)
    np.testing.assert_allclose(periods(a * h1 + b * h2), a * periods(h1) + b * periods(h2), atol=1e-12)
