import math

import numpy as np
import pytest

import gluequant as gq
from gluequant import catalog
from gluequant.errors import DimensionMismatch, NotInSpan, ParseError, RankDeficient

from conftest import random_lattice


def test_make_lattice_identity():
    lat = gq.make_lattice(np.eye(6))
    assert lat.volume == pytest.approx(1.0)
    assert lat.det_gram == pytest.approx(1.0)
    assert lat.dimension == 6


def test_make_lattice_e6():
    lat = catalog.get("E6").lattice
    assert lat.det_gram == pytest.approx(3.0, rel=1e-12)
    assert lat.volume == pytest.approx(math.sqrt(3.0), rel=1e-12)


def test_make_lattice_d6():
    assert catalog.get("D6").lattice.det_gram == pytest.approx(4.0, rel=1e-12)


def test_rank_deficient_rejected():
    b = np.array([[1.0, 0.0], [2.0, 0.0]])
    with pytest.raises(RankDeficient):
        gq.make_lattice(b)


def test_more_rows_than_columns_rejected():
    with pytest.raises(DimensionMismatch):
        gq.make_lattice(np.ones((3, 2)))


def test_rectangular_basis_supported():
    b = np.array([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]])
    lat = gq.make_lattice(b)
    u, resid = gq.coordinates(lat, np.array([1.0, 1.0, 2.0]))
    assert resid < 1e-12
    assert np.allclose(u, [1.0, 1.0])


def test_dual_zn_self_dual():
    z4 = catalog.get("Z4").lattice
    d = gq.dual(z4)
    assert np.allclose(d.gram, np.eye(4), atol=1e-12)


def test_dual_e6_det():
    d = gq.dual(catalog.get("E6").lattice)
    assert d.det_gram == pytest.approx(1.0 / 3.0, rel=1e-9)


def test_dual_glued_e6e6_det():
    d = gq.dual(catalog.get("GluedE6E6").lattice)
    assert d.det_gram == pytest.approx(1.0, rel=1e-9)


def test_dual_of_dual_round_trip():
    rng = np.random.default_rng(11)
    for _ in range(20):
        lat = random_lattice(rng, int(rng.integers(2, 5)))
        back = gq.dual(gq.dual(lat))
        assert np.allclose(back.gram, lat.gram, atol=1e-9)


def test_product_trivial():
    z1 = catalog.get("Z1").lattice
    p = gq.product(z1, z1)
    assert p.det_gram == pytest.approx(1.0)
    assert p.dimension == 2


def test_product_dets():
    e6 = catalog.get("E6").lattice
    d6 = catalog.get("D6").lattice
    assert gq.product(e6, e6).det_gram == pytest.approx(9.0, rel=1e-9)
    assert gq.product(d6, d6).det_gram == pytest.approx(16.0, rel=1e-9)


def test_product_volume_multiplicative():
    rng = np.random.default_rng(5)
    for _ in range(25):
        a = random_lattice(rng, int(rng.integers(2, 5)))
        b = random_lattice(rng, int(rng.integers(2, 5)))
        p = gq.product(a, b)
        assert p.volume == pytest.approx(a.volume * b.volume, rel=1e-9)


def test_membership_d6_basis_row():
    d6 = catalog.get("D6").lattice
    ok, u = gq.membership(d6, np.array([2.0, 0, 0, 0, 0, 0]))
    assert ok
    assert list(u) == [1, 0, 0, 0, 0, 0]


def test_membership_e6_glue_vector_not_member():
    e6 = catalog.get("E6").lattice
    g = gq.standard_glue_vectors("E6")
    ok, u = gq.membership(e6, g[1].ambient)
    assert not ok and u is None
    # g1 + g2 is congruent to zero, hence a lattice point
    ok, _ = gq.membership(e6, g[1].ambient + g[2].ambient)
    assert ok


def test_membership_closure_fuzz():
    rng = np.random.default_rng(17)
    for _ in range(50):
        lat = random_lattice(rng, int(rng.integers(2, 5)))
        x = rng.integers(-4, 5, lat.dimension) @ lat.basis
        y = rng.integers(-4, 5, lat.dimension) @ lat.basis
        ok, _ = gq.membership(lat, x + y)
        assert ok


def test_membership_off_span_raises():
    b = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    lat = gq.make_lattice(b)
    with pytest.raises(NotInSpan):
        gq.membership(lat, np.array([0.0, 0.0, 1.0]))


def test_catalog_square_basis_det_consistency():
    for name in ("Z5", "D4", "D6", "E6", "GluedE6E6", "GluedD6D6"):
        lat = catalog.get(name).lattice
        det_b = np.linalg.det(lat.basis)
        assert det_b * det_b == pytest.approx(lat.det_gram, rel=1e-9)


def test_generator_text_round_trip(tmp_path):
    lat = catalog.get("GluedE6E6").lattice
    path = tmp_path / "gen.txt"
    gq.write_generator_text(lat, path)
    again = gq.make_lattice(gq.read_generator_text(path))
    assert np.array_equal(again.basis, lat.basis)  # 17 significant digits round-trip doubles
    assert float(np.max(np.abs(again.gram - lat.gram))) < 1e-12


@pytest.mark.parametrize(
    "content,line",
    [
        ("", 1),
        ("2\n1 0\n0 1\n", 1),
        ("2 2\n1 0\n", 2),
        ("2 2\n1 0\n0 zz\n", 3),
        ("2 2\n1 0 0\n0 1\n", 2),
    ],
)
def test_generator_text_parse_errors(tmp_path, content, line):
    path = tmp_path / "bad.txt"
    path.write_text(content)
    with pytest.raises(ParseError) as err:
        gq.read_generator_text(path)
    assert err.value.line == line
