"""Built-in lattices and their published reference figures.

Generator matrices are stored verbatim in the 6- and 12-dimensional square
forms (including the column-sign conventions of the source material); the
toolkit never normalizes equivalent bases, so exported goldens stay stable.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import Lattice, dual, make_lattice, product, read_generator_text
from .errors import UnsupportedLattice

SQ3 = math.sqrt(3.0)

E6_BASIS = np.array([
    [2.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0, 0.0, 0.0],
    [1.0, 0.0, 1.0, 0.0, 0.0, 0.0],
    [1.0, 0.0, 0.0, 1.0, 0.0, 0.0],
    [1.0, 0.0, 0.0, 0.0, 1.0, 0.0],
    [0.5, 0.5, 0.5, 0.5, 0.5, SQ3 / 2],
])

# Half the coordinates of the two nonzero cosets of E6* over E6.
E6_GLUE_AMBIENT = (
    np.zeros(6),
    np.array([-0.5, -0.5, -0.5, -0.5, -0.5, SQ3 / 6]),
    np.array([0.5, 0.5, 0.5, 0.5, 0.5, -SQ3 / 6]),
)


def dn_basis(n: int) -> np.ndarray:
    """Checkerboard lattice generator: 2*e1 and e1+ek, matching the printed D6 form."""
    b = np.eye(n)
    b[:, 0] += 1.0
    b[0, 0] = 2.0
    return b


def dn_glue_ambient(n: int) -> tuple[np.ndarray, ...]:
    g1 = np.full(n, 0.5)
    g2 = np.zeros(n)
    g2[0] = 1.0
    g3 = np.full(n, 0.5)
    g3[0] = -0.5
    return (np.zeros(n), g1, g2, g3)


def _glued_e6e6_basis() -> np.ndarray:
    b = np.zeros((12, 12))
    b[:6, :6] = E6_BASIS
    b[6:11, 6:11] = E6_BASIS[:5, :5]
    b[11, 5] = 2.0 / SQ3
    b[11, 6:11] = -0.5
    b[11, 11] = 1.0 / (2 * SQ3)
    return b


def _glued_d6d6_basis() -> np.ndarray:
    b = np.zeros((12, 12))
    b[:6, :6] = dn_basis(6)
    b[6, :6] = 0.5
    b[6, 6] = 1.0
    b[7:11, 6:11] = dn_basis(6)[1:5, :5]
    b[11, 0] = 1.0
    b[11, 6:] = 0.5
    return b


GLUED_E6E6_BASIS = _glued_e6e6_basis()
GLUED_D6D6_BASIS = _glued_d6d6_basis()

# Exact NSM reference constants.
E6_NSM = 5.0 / (56.0 * 3.0 ** (1.0 / 6.0))
E6_DUAL_NSM = 12619.0 / (68040.0 * 3.0 ** (5.0 / 6.0))
E6_X_E6_DUAL_NSM = 7711.0 / 102060.0
GLUED_E6E6_NSM = 200359601790277 / 2859883842816000
GLUED_D6D6_NSM = 6492178537549 / 92704053657600
K12_NSM = 797361941 / (6567561000 * SQ3)
ZN_NSM = 1.0 / 12.0

E6_NSM_EXACT = "5/(56*3^(1/6))"
E6_DUAL_NSM_EXACT = "12619/(68040*3^(5/6))"
E6_X_E6_DUAL_NSM_EXACT = "7711/102060"
GLUED_E6E6_NSM_EXACT = "200359601790277/2859883842816000"
GLUED_D6D6_NSM_EXACT = "6492178537549/92704053657600"
K12_NSM_EXACT = "797361941/(6567561000*sqrt(3))"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    lattice: Lattice
    known_nsm: float | None = None
    known_nsm_exact: str | None = None
    known_facets: int | None = None
    known_covering_radius: float | None = None
    glue_ambient: tuple[np.ndarray, ...] | None = None

    @property
    def glue_vectors(self):
        if self.glue_ambient is None:
            return None
        from .glue import standard_glue_vectors

        return standard_glue_vectors(self.name)


_ZN_RE = re.compile(r"^Z(\d+)$")
_DN_RE = re.compile(r"^D(\d+)$")


@lru_cache(maxsize=128)
def get(name: str) -> CatalogEntry:
    """Look up a built-in lattice by name (Zn, Dn, E6, D6, their duals, and the glued pair)."""
    m = _ZN_RE.match(name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise UnsupportedLattice(name)
        return CatalogEntry(
            name=name,
            lattice=make_lattice(np.eye(n), name=name),
            known_nsm=ZN_NSM,
            known_nsm_exact="1/12",
            known_facets=2 * n,
            known_covering_radius=math.sqrt(n) / 2,
            glue_ambient=(np.zeros(n),),
        )
    m = _DN_RE.match(name)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise UnsupportedLattice(name)
        return CatalogEntry(
            name=name,
            lattice=make_lattice(dn_basis(n), name=name),
            known_facets=2 * n * (n - 1) if n >= 3 else 4,
            known_covering_radius=max(1.0, math.sqrt(n) / 2),
            glue_ambient=dn_glue_ambient(n),
        )
    if name == "E6":
        return CatalogEntry(
            name="E6",
            lattice=make_lattice(E6_BASIS, name="E6"),
            known_nsm=E6_NSM,
            known_nsm_exact=E6_NSM_EXACT,
            known_facets=72,
            known_covering_radius=2.0 / SQ3,
            glue_ambient=E6_GLUE_AMBIENT,
        )
    if name == "E6*":
        return CatalogEntry(
            name="E6*",
            lattice=dual(get("E6").lattice),
            known_nsm=E6_DUAL_NSM,
            known_nsm_exact=E6_DUAL_NSM_EXACT,
        )
    if name == "D6*":
        return CatalogEntry(name="D6*", lattice=dual(get("D6").lattice))
    if name == "GluedE6E6":
        return CatalogEntry(
            name="GluedE6E6",
            lattice=make_lattice(GLUED_E6E6_BASIS, name="GluedE6E6"),
            known_nsm=GLUED_E6E6_NSM,
            known_nsm_exact=GLUED_E6E6_NSM_EXACT,
            known_facets=1602,
            known_covering_radius=2.0 / SQ3,
        )
    if name == "GluedD6D6":
        return CatalogEntry(
            name="GluedD6D6",
            lattice=make_lattice(GLUED_D6D6_BASIS, name="GluedD6D6"),
            known_nsm=GLUED_D6D6_NSM,
            known_nsm_exact=GLUED_D6D6_NSM_EXACT,
            known_facets=1912,
            known_covering_radius=math.sqrt(1.5),
        )
    raise UnsupportedLattice(name)


def listing() -> list[dict]:
    """Rows for the catalog report: concrete entries plus the parametric families."""
    rows = []
    for name in ("E6", "E6*", "D6", "D6*", "GluedE6E6", "GluedD6D6"):
        e = get(name)
        rows.append(
            {
                "name": name,
                "dimension": e.lattice.dimension,
                "det_gram": e.lattice.det_gram,
                "volume": e.lattice.volume,
                "known_nsm": e.known_nsm,
                "known_nsm_exact": e.known_nsm_exact,
                "known_facets": e.known_facets,
                "known_covering_radius": e.known_covering_radius,
            }
        )
    rows.append(
        {
            "name": "Zn",
            "dimension": None,
            "det_gram": 1.0,
            "volume": 1.0,
            "known_nsm": ZN_NSM,
            "known_nsm_exact": "1/12",
            "known_facets": None,
            "known_covering_radius": None,
        }
    )
    rows.append(
        {
            "name": "Dn",
            "dimension": None,
            "det_gram": 4.0,
            "volume": 2.0,
            "known_nsm": None,
            "known_nsm_exact": None,
            "known_facets": None,
            "known_covering_radius": None,
        }
    )
    return rows


def resolve_spec(spec: str) -> Lattice:
    """Resolve a lattice spec: catalog name, 'AxB' product expression, or a generator file path."""
    if os.path.exists(spec) or os.sep in spec or spec.endswith(".txt"):
        return make_lattice(read_generator_text(spec), name=os.path.basename(spec))
    if "x" in spec:
        parts = spec.split("x")
        lat = get(parts[0]).lattice
        for p in parts[1:]:
            lat = product(lat, get(p).lattice)
        return lat
    return get(spec).lattice
