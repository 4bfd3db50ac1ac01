"""Lattice bases, Gram-Schmidt data, duals, and exact unimodular transforms.

A basis is an m x n real matrix of full column rank whose columns generate
the lattice.  The reversed dual pairs column i of the primal with column
n-i+1 of the dual, which keeps successive-minima statements aligned with the
Gram-Schmidt order of the primal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NonPositiveSigma, NotUnimodular, RankDeficient

# relative floor under which a Gram-Schmidt vector counts as collapsed
RANK_TOL = 1e-10
# slack used by all floating-point reduction predicates
CHECK_EPS = 1e-9


def round_half_away(x):
    """Round to nearest integer, halves away from zero (0.5 -> 1, -0.5 -> -1)."""
    x = np.asarray(x, dtype=float)
    out = np.sign(x) * np.floor(np.abs(x) + 0.5)
    if out.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True, eq=False)
class Basis:
    """Columns of `entries` are the basis vectors; m >= n and full rank."""

    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=float)
        if e.ndim != 2:
            raise RankDeficient("basis must be a 2-d matrix")
        m, n = e.shape
        if n < 1 or m < n:
            raise RankDeficient(f"need m >= n >= 1, got shape {e.shape}")
        if not np.all(np.isfinite(e)):
            raise RankDeficient("basis entries must be finite")
        # judged on the singular-value ratio so the test is scale-free;
        # column norms can under- or overflow for extreme magnitudes
        svals = np.linalg.svd(e, compute_uv=False)
        if svals[-1] <= RANK_TOL * svals[0]:
            raise RankDeficient(
                f"smallest singular value {svals[-1]:.3e} below rank tolerance")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    def column(self, j: int) -> np.ndarray:
        return self.entries[:, j]


@dataclass(frozen=True, eq=False)
class GsoData:
    """Gram-Schmidt orthogonalization B = Bhat mu^T.

    gso_vectors holds the orthogonal (unnormalized) vectors as columns,
    gso_norms_sq their squared lengths, and mu the unit lower-triangular
    coefficient matrix mu[i, j] = <b_i, bhat_j> / |bhat_j|^2.
    """

    gso_vectors: np.ndarray
    gso_norms_sq: np.ndarray
    mu: np.ndarray


@dataclass(frozen=True, eq=False)
class UnimodularTransform:
    """Integer matrix with determinant +-1, stored exactly (python ints)."""

    entries: np.ndarray

    def __post_init__(self):
        rows = _as_int_rows(self.entries)
        d = int_det(rows)
        if d not in (1, -1):
            raise NotUnimodular(f"determinant {d} is not +-1")
        arr = np.array(rows, dtype=object)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def det(self) -> int:
        return int_det(_as_int_rows(self.entries))

    def as_float(self) -> np.ndarray:
        return self.entries.astype(float)


def _as_int_rows(mat) -> list[list[int]]:
    """Copy a matrix into a list of rows of exact python ints."""
    a = np.asarray(mat)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotUnimodular(f"transform must be square, got shape {a.shape}")
    out = []
    for row in a:
        irow = []
        for v in row:
            iv = int(v)
            if iv != v:
                raise NotUnimodular(f"non-integer entry {v!r}")
            irow.append(iv)
        out.append(irow)
    return out


def int_det(rows: list[list[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def int_inverse(rows: list[list[int]]) -> list[list[int]]:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(rows)
    aug = [[Fraction(rows[i][j]) for j in range(n)]
           + [Fraction(1 if i == j else 0) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if aug[r][col] != 0:
                piv = r
                break
        if piv is None:
            raise NotUnimodular("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    inv = []
    for i in range(n):
        row = []
        for j in range(n):
            v = aug[i][n + j]
            if v.denominator != 1:
                raise NotUnimodular("inverse is not integral")
            row.append(int(v))
        inv.append(row)
    return inv


def is_unimodular(mat) -> bool:
    """True iff `mat` is square, integer, and has determinant +-1."""
    try:
        rows = _as_int_rows(mat)
    except NotUnimodular:
        return False
    return int_det(rows) in (1, -1)


def identity_transform(n: int) -> UnimodularTransform:
    return UnimodularTransform(np.eye(n, dtype=int))


def flip_matrix(n: int) -> np.ndarray:
    """Anti-diagonal permutation J (reverses coordinate order); J @ J = I."""
    return np.eye(n, dtype=int)[::-1].copy()


def _as_matrix(basis_or_matrix) -> np.ndarray:
    if isinstance(basis_or_matrix, Basis):
        return basis_or_matrix.entries
    return np.asarray(basis_or_matrix, dtype=float)


def gso_core(entries: np.ndarray):
    """Modified Gram-Schmidt; returns (gso_vectors, gso_norms_sq, mu).

    Raises RankDeficient when a Gram-Schmidt vector collapses below
    RANK_TOL times the largest column norm.
    """
    e = np.asarray(entries, dtype=float)
    m, n = e.shape
    # work at unit scale: squared norms of very small or very large entries
    # would under- or overflow, while mu and the collapse test are
    # scale-invariant
    scale = float(np.max(np.abs(e)))
    if scale > 0.0:
        e = e / scale
    bhat = np.zeros((m, n))
    mu = np.eye(n)
    norms_sq = np.zeros(n)
    floor = RANK_TOL * np.linalg.norm(e, axis=0).max()
    for i in range(n):
        v = e[:, i].copy()
        for j in range(i):
            c = (v @ bhat[:, j]) / norms_sq[j]
            mu[i, j] = c
            v -= c * bhat[:, j]
        nsq = float(v @ v)
        if np.sqrt(nsq) <= floor:
            raise RankDeficient(f"gso vector {i} collapsed (|bhat| = {np.sqrt(nsq):.3e})")
        bhat[:, i] = v
        norms_sq[i] = nsq
    # squared norms beyond float range saturate to 0 or inf; mu and the
    # collapse test above are exact either way
    with np.errstate(over="ignore", under="ignore"):
        return bhat * scale, norms_sq * (scale * scale), mu


def gso(basis) -> GsoData:
    """Gram-Schmidt data of a basis."""
    bhat, norms_sq, mu = gso_core(_as_matrix(basis))
    return GsoData(gso_vectors=bhat, gso_norms_sq=norms_sq, mu=mu)


def lattice_volume(basis) -> float:
    """Product of Gram-Schmidt norms = sqrt(det(B^T B))."""
    _, norms_sq, _ = gso_core(_as_matrix(basis))
    return float(np.exp(0.5 * np.sum(np.log(norms_sq))))


def dual_basis(basis) -> Basis:
    """Reversed dual: pseudoinverse transpose with column order flipped.

    Column i of the primal and column n-i+1 of the dual pair to 1; all other
    pairings are 0.
    """
    e = _as_matrix(basis)
    # B = QR gives B (B^T B)^{-1} = Q R^{-T}; solving with R instead of the
    # Gram matrix keeps the error linear in the condition number.
    from scipy.linalg import solve_triangular

    # dual(c B) = dual(B) / c: run the factorization at unit scale so
    # Householder column norms cannot under- or overflow
    scale = float(np.max(np.abs(e)))
    if scale == 0.0:
        raise RankDeficient("cannot dualize the zero matrix")
    q, r = np.linalg.qr(e / scale)
    dual = q @ solve_triangular(r, np.eye(r.shape[0]), lower=False).T
    return Basis(dual[:, ::-1] / scale)


def dual_gso(basis) -> GsoData:
    """Gram-Schmidt data of the reversed dual, from primal data alone.

    The dual Gram-Schmidt vectors are the primal ones divided by their
    squared lengths and re-indexed in reverse; the dual mu matrix is the
    flipped inverse transpose of the primal one.
    """
    bhat, norms_sq, mu = gso_core(_as_matrix(basis))
    n = len(norms_sq)
    dual_vecs = (bhat / norms_sq)[:, ::-1]
    dual_norms = (1.0 / norms_sq)[::-1]
    from scipy.linalg import solve_triangular

    mu_inv = solve_triangular(mu, np.eye(n), lower=True, unit_diagonal=True)
    dual_mu = mu_inv.T[::-1, ::-1]
    return GsoData(gso_vectors=dual_vecs, gso_norms_sq=dual_norms, mu=dual_mu)


def apply_transform(basis, u: UnimodularTransform) -> Basis:
    """Right-multiply the basis by a unimodular transform (same lattice)."""
    e = _as_matrix(basis)
    if u.n != e.shape[1]:
        raise NotUnimodular(f"transform size {u.n} does not match basis n {e.shape[1]}")
    return Basis(e @ u.as_float())


def dual_transform_to_primal(u_dual: UnimodularTransform) -> UnimodularTransform:
    """Map a transform found on the reversed dual back to the primal side.

    If the dual basis was multiplied by U*, the primal basis must be
    multiplied by J (U*)^{-T} J so that duality is preserved.  Computed in
    exact integer arithmetic.
    """
    rows = [[int(v) for v in row] for row in u_dual.entries]
    inv = int_inverse(rows)
    n = len(inv)
    # J A^T J = reverse both index orders of A^T
    out = [[inv[n - 1 - j][n - 1 - i] for j in range(n)] for i in range(n)]
    return UnimodularTransform(np.array(out, dtype=object))


def complex_to_real(h) -> Basis:
    """Real embedding [[Re, -Im], [Im, Re]] of a complex matrix."""
    hc = np.atleast_2d(np.asarray(h, dtype=complex))
    top = np.hstack([hc.real, -hc.imag])
    bot = np.hstack([hc.imag, hc.real])
    return Basis(np.vstack([top, bot]))


def augment_mmse(basis_or_matrix, sigma: float) -> Basis:
    """Stack sigma * I under the matrix; full rank for any input matrix."""
    if sigma <= 0 or not np.isfinite(sigma):
        raise NonPositiveSigma(f"sigma must be positive, got {sigma}")
    e = _as_matrix(basis_or_matrix)
    return Basis(np.vstack([e, sigma * np.eye(e.shape[1])]))


def write_basis_csv(path, basis) -> None:
    """One matrix row per line, 17 significant digits."""
    e = _as_matrix(basis)
    with open(path, "w") as fh:
        for row in e:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def read_basis_csv(path) -> Basis:
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([float(v) for v in line.split(",")])
    return Basis(np.array(rows))


def read_vector_csv(path) -> np.ndarray:
    """A vector stored either as one line or one value per line."""
    vals = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            vals.extend(float(v) for v in line.split(","))
    return np.array(vals)
