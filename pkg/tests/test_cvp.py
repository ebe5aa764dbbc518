import numpy as np
import pytest

import gluequant as gq
from gluequant import catalog
from gluequant.errors import NotInSpan, TooManyPoints

from conftest import brute_force_closest, brute_force_count_within, random_lattice


def _ctx(name):
    return gq.context_for(catalog.get(name).lattice)


def test_factorization_invariants():
    for name in ("E6", "D6", "GluedE6E6", "GluedD6D6"):
        ctx = _ctx(name)
        lat = ctx.lattice
        assert np.allclose(ctx.lower @ ctx.lower.T, lat.gram, atol=1e-9)
        assert np.all(np.diag(ctx.lower) > 0)


def test_closest_rounding_z6():
    r = gq.closest_point(_ctx("Z6"), np.full(6, 0.4))
    assert np.array_equal(r.coords, np.zeros(6, dtype=np.int64))
    assert r.dist2 == pytest.approx(6 * 0.16, rel=1e-12)


def test_closest_d6_shallow_hole():
    # frozen from the brute-force oracle: distance^2 = 1, origin wins the tie
    d6 = catalog.get("D6").lattice
    target = np.array([1.0, 0, 0, 0, 0, 0])
    d_oracle, w_oracle = brute_force_closest(d6, target, halfwidth=2)
    r = gq.closest_point(gq.context_for(d6), target)
    assert d_oracle == pytest.approx(1.0, abs=1e-12)
    assert r.dist2 == pytest.approx(1.0, abs=1e-9)
    assert np.array_equal(r.coords, w_oracle)


def test_closest_e6_deep_hole():
    e6 = catalog.get("E6").lattice
    g1 = gq.standard_glue_vectors("E6")[1]
    d_oracle, _ = brute_force_closest(e6, g1.ambient, halfwidth=2)
    assert d_oracle == pytest.approx(4.0 / 3.0, abs=1e-9)
    r = gq.closest_point(gq.context_for(e6), g1.ambient)
    assert r.dist2 == pytest.approx(4.0 / 3.0, abs=1e-9)


def test_closest_point_on_lattice_point_is_exact():
    rng = np.random.default_rng(23)
    for _ in range(20):
        lat = random_lattice(rng, int(rng.integers(1, 5)))
        u = rng.integers(-3, 4, lat.dimension)
        r = gq.closest_point(gq.context_for(lat), u @ lat.basis)
        assert r.dist2 <= 1e-12
        assert np.array_equal(r.coords, u)


def test_closest_tie_break_lexicographic():
    z2 = catalog.get("Z2").lattice
    r = gq.closest_point(gq.context_for(z2), np.array([0.5, 0.5]))
    assert np.array_equal(r.coords, [0, 0])
    r = gq.closest_point(gq.context_for(z2), np.array([-0.5, 0.5]))
    assert np.array_equal(r.coords, [-1, 0])


def test_closest_off_span():
    lat = gq.make_lattice(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))
    ctx = gq.DecoderContext(lat)
    with pytest.raises(NotInSpan):
        gq.closest_point(ctx, np.array([0.2, 0.3, 2.0]))
    r = gq.closest_point(ctx, np.array([0.2, 0.3, 2.0]), project=True)
    assert r.residual2 == pytest.approx(4.0, rel=1e-12)
    assert r.dist2 == pytest.approx(0.04 + 0.09, rel=1e-12)


def test_oracle_equivalence_fuzz():
    rng = np.random.default_rng(101)
    for _ in range(300):
        n = int(rng.integers(1, 5))
        lat = random_lattice(rng, n)
        target = rng.uniform(-4, 4, lat.ambient_dim) @ np.eye(lat.ambient_dim)
        d_oracle, w_oracle = brute_force_closest(lat, target)
        r = gq.closest_point(gq.context_for(lat), target)
        assert r.dist2 == pytest.approx(d_oracle, abs=1e-9)
        assert np.array_equal(r.coords, w_oracle)


def test_closest_beats_random_lattice_points():
    rng = np.random.default_rng(7)
    for _ in range(10):
        lat = random_lattice(rng, 4)
        ctx = gq.context_for(lat)
        target = rng.uniform(-2, 2, 4)
        r = gq.closest_point(ctx, target)
        for _ in range(100):
            p = rng.integers(-5, 6, 4) @ lat.basis
            assert r.dist2 <= np.sum((target - p) ** 2) + 1e-9


def test_enumerate_within_z2():
    pts = gq.enumerate_within(gq.context_for(catalog.get("Z2").lattice), np.zeros(2), 1.0)
    assert len(pts) == 5
    assert pts[0][1] == 0.0


def test_enumerate_within_e6_deep_hole_shell():
    e6 = catalog.get("E6").lattice
    g1 = gq.standard_glue_vectors("E6")[1]
    pts = gq.enumerate_within(gq.context_for(e6), -g1.ambient, 4.0 / 3.0)
    assert len(pts) == 27


def test_enumerate_within_d6_deep_hole_shell():
    d6 = catalog.get("D6").lattice
    g1 = gq.standard_glue_vectors("D6")[1]
    count_oracle = brute_force_count_within(d6, -g1.ambient, 1.5, halfwidth=3)
    pts = gq.enumerate_within(gq.context_for(d6), -g1.ambient, 1.5)
    assert count_oracle == 32
    assert len(pts) == 32


def test_enumerate_within_minimum_shell_exclusive():
    for name in ("E6", "D6", "GluedE6E6"):
        lat = catalog.get(name).lattice
        pts = gq.enumerate_within(gq.context_for(lat), np.zeros(lat.ambient_dim), 2.0 * 0.99)
        assert len(pts) == 1  # origin only below the minimum shell


def test_enumerate_guard():
    z2 = catalog.get("Z2").lattice
    with pytest.raises(TooManyPoints):
        gq.enumerate_within(gq.context_for(z2), np.zeros(2), 10_000.0, limit=100)


def test_all_closest_points_midpoint():
    z2 = catalog.get("Z2").lattice
    res = gq.all_closest_points(gq.context_for(z2), np.array([0.5, 0.5]))
    assert len(res) == 4
    assert [tuple(r.coords) for r in res] == [(0, 0), (0, 1), (1, 0), (1, 1)]
