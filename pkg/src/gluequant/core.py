"""Core lattice algebra: generator and Gram matrices, duals, products, membership.

A lattice is the set {u B : u an integer row vector} for a real generator
matrix B with linearly independent rows.  Ambient arithmetic is 64-bit
floating point with explicit absolute tolerances; exact rational arithmetic
lives in the glue module, which works in basis coordinates only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    IllConditioned,
    NotInSpan,
    ParseError,
    RankDeficient,
)

SOLVE_TOL = 1e-9     # span residual / coordinate integrality tolerance
RANK_RATIO = 1e-12   # det(gram) relative to the Hadamard bound
COND_LIMIT = 1e12


def _frozen(a) -> np.ndarray:
    out = np.ascontiguousarray(a, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Lattice:
    """Immutable lattice with cached Gram matrix, determinant and volume.

    Instances hash by identity and are safe to share across threads.
    """

    basis: np.ndarray    # (n, m) generator; rows are basis vectors
    gram: np.ndarray     # (n, n) = basis @ basis.T
    det_gram: float
    volume: float        # sqrt(det_gram)
    pinv: np.ndarray     # (m, n); x @ pinv yields basis coordinates of x
    name: str | None = None

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[1]

    def __repr__(self) -> str:
        return f"Lattice({self.name or 'unnamed'}, n={self.dimension}, m={self.ambient_dim})"


def make_lattice(basis, name: str | None = None) -> Lattice:
    """Build a Lattice from generator rows, rejecting rank-deficient input."""
    b = np.asarray(basis, dtype=float)
    if b.ndim != 2 or b.shape[0] < 1 or b.shape[1] < 1:
        raise DimensionMismatch("generator matrix must be two-dimensional and nonempty")
    if b.shape[0] > b.shape[1]:
        raise DimensionMismatch(f"more rows than columns: {b.shape[0]}x{b.shape[1]}")
    if not np.all(np.isfinite(b)):
        raise ValueError("generator entries must be finite")
    gram = b @ b.T
    hadamard = float(np.prod(np.diag(gram)))
    # Cholesky-based determinant: every operation commutes with scaling the
    # basis by a power of two, so derived quantities rescale exactly.
    try:
        root = 1.0
        for v in np.diag(np.linalg.cholesky(gram)):
            root *= float(v)
        det = root * root
    except np.linalg.LinAlgError:
        det = 0.0
    if det <= RANK_RATIO * hadamard:
        raise RankDeficient(f"det(gram)={det:.6e} under the rank tolerance for this scale")
    n, m = b.shape
    if n == m:
        pinv = np.linalg.inv(b)
    else:
        q, r = np.linalg.qr(b.T)  # B^T = Q R, hence B^+ = Q R^{-T}
        pinv = q @ np.linalg.inv(r).T
    return Lattice(
        basis=_frozen(b),
        gram=_frozen(gram),
        det_gram=det,
        volume=math.sqrt(det),
        pinv=_frozen(pinv),
        name=name,
    )


def coordinates(lattice: Lattice, point) -> tuple[np.ndarray, float]:
    """Least-squares basis coordinates of an ambient point, plus the off-span residual norm."""
    x = np.asarray(point, dtype=float)
    if x.shape != (lattice.ambient_dim,):
        raise DimensionMismatch(f"point has shape {x.shape}, lattice is embedded in R^{lattice.ambient_dim}")
    u = x @ lattice.pinv
    resid = float(np.linalg.norm(x - u @ lattice.basis))
    return u, resid


def membership(lattice: Lattice, point) -> tuple[bool, np.ndarray | None]:
    """Whether a point is a lattice vector; returns its integer coordinates when it is."""
    u, resid = coordinates(lattice, point)
    if resid >= SOLVE_TOL:
        raise NotInSpan(f"off-span residual {resid:.3e}")
    w = np.rint(u)
    if float(np.max(np.abs(u - w))) < SOLVE_TOL:
        return True, w.astype(np.int64)
    return False, None


def dual(lattice: Lattice) -> Lattice:
    """Dual lattice, generated by gram^{-1} @ basis."""
    cond = float(np.linalg.cond(lattice.gram))
    if cond > COND_LIMIT:
        raise IllConditioned(f"gram condition number {cond:.3e}")
    b_dual = np.linalg.solve(lattice.gram, lattice.basis)
    name = f"{lattice.name}*" if lattice.name else None
    return make_lattice(b_dual, name=name)


def product(a: Lattice, b: Lattice, name: str | None = None) -> Lattice:
    """Cartesian product lattice with a block-diagonal generator."""
    n1, m1 = a.basis.shape
    n2, m2 = b.basis.shape
    blk = np.zeros((n1 + n2, m1 + m2))
    blk[:n1, :m1] = a.basis
    blk[n1:, m1:] = b.basis
    if name is None and a.name and b.name:
        name = f"{a.name}x{b.name}"
    return make_lattice(blk, name=name)


def write_generator_text(lattice_or_matrix, path) -> None:
    """Write a generator matrix as plain text: 'n m' header, then one row per line."""
    b = lattice_or_matrix.basis if isinstance(lattice_or_matrix, Lattice) else np.asarray(lattice_or_matrix, float)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{b.shape[0]} {b.shape[1]}\n")
        for row in b:
            fh.write(" ".join(format(v, ".17g") for v in row) + "\n")


def read_generator_text(path) -> np.ndarray:
    """Parse the plain-text generator format, reporting the offending line on error."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError("empty file", line=1)
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"expected 'n m' header, got {lines[0]!r}", line=1)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError(f"non-integer header {lines[0]!r}", line=1) from None
    if n < 1 or m < 1:
        raise ParseError(f"bad dimensions {n}x{m}", line=1)
    rows = []
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != n:
        raise ParseError(f"expected {n} rows, found {len(body)}", line=len(lines))
    for i, ln in enumerate(body, start=2):
        toks = ln.split()
        if len(toks) != m:
            raise ParseError(f"expected {m} values, got {len(toks)}", line=i)
        try:
            rows.append([float(t) for t in toks])
        except ValueError:
            raise ParseError(f"bad number in {ln!r}", line=i) from None
    return np.array(rows, dtype=float)
