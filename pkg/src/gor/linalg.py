"""Exact dense linear algebra over the engine's fields.

Two backends behind one interface: a generic one working on numpy object
arrays of ``Fraction`` (used for rational certificates, small sizes only)
and a mod-p backend storing residues in float64 so that panel elimination
and back-substitution run through BLAS matmuls while staying exact
(products are < p^2 ~ 1e9 and accumulation depth is kept far below 2^53/p^2).

Conventions: matrices act on column vectors, A has shape (m, n); kernels,
spans and row spaces are handled as collections of row vectors.
"""

from fractions import Fraction

import numpy as np

from .errors import InfeasibleSizeError

# Per-array budget.  The box this was developed on has 5 GB of RAM; keep a
# single dense intermediate under half of it.
DEFAULT_BUDGET_BYTES = 2_400_000_000


def backend_for(field, budget=DEFAULT_BUDGET_BYTES):
    if field.p is None:
        return FractionLinAlg(field, budget)
    return ModpLinAlg(field.p, budget)


class BaseLinAlg:
    def __init__(self, budget=DEFAULT_BUDGET_BYTES):
        self.budget = budget

    def check_size(self, m, n, what="matrix"):
        bytes_ = m * n * self.itemsize
        if bytes_ > self.budget:
            raise InfeasibleSizeError(
                f"{what} of shape {m}x{n} (~{bytes_ / 1e9:.1f} GB) exceeds the "
                f"{self.budget / 1e9:.1f} GB working budget",
                estimate=bytes_,
                budget=self.budget,
            )

    def zeros(self, m, n):
        raise NotImplementedError

    def rank(self, A):
        _, piv = self.echelon(A)
        return len(piv)

    def inverse(self, A):
        """Inverse of a square invertible matrix via RREF of [A | I]."""
        A = self.asarray(A)
        n = A.shape[0]
        assert A.shape[1] == n
        aug = np.hstack([A, self.eye(n)])
        R, piv = self.rref(aug)
        if piv != list(range(n)):
            raise ValueError("matrix is singular")
        return R[:, n:]

    def solve_left(self, B, U):
        """Solve X @ B = U (rows of U expressed in the row basis B)."""
        return self.matmul(U, self.inverse(B))

    def nullity(self, A):
        A = self.asarray(A)
        return A.shape[1] - self.rank(A)

    def span(self, n):
        return Span(self, n)


class FractionLinAlg(BaseLinAlg):
    """Dense exact elimination on object arrays of Fraction."""

    itemsize = 120  # rough per-entry cost used only for budget guards

    def __init__(self, field, budget=DEFAULT_BUDGET_BYTES):
        super().__init__(budget)
        self.field = field

    def asarray(self, rows, ncols=None):
        if isinstance(rows, np.ndarray) and rows.dtype == object:
            return rows.copy()
        rows = list(rows)
        if not rows:
            return np.zeros((0, ncols or 0), dtype=object)
        A = np.empty((len(rows), len(rows[0])), dtype=object)
        for i, row in enumerate(rows):
            A[i, :] = [Fraction(x) for x in row]
        return A

    def zeros(self, m, n):
        A = np.empty((m, n), dtype=object)
        A[:, :] = Fraction(0)
        return A

    def eye(self, n):
        A = self.zeros(n, n)
        for i in range(n):
            A[i, i] = Fraction(1)
        return A

    def echelon(self, A, track_rows=False):
        """Row echelon with normalized pivots.

        Returns (U, pivcols) or (U, pivcols, origin_rows) with track_rows,
        where origin_rows[k] is the index of an input row independent from
        the earlier pivots.
        """
        A = self.asarray(A)
        m, n = A.shape
        idx = list(range(m))
        r = 0
        pivcols = []
        origins = []
        for c in range(n):
            if r == m:
                break
            piv = None
            for i in range(r, m):
                if A[i, c] != 0:
                    piv = i
                    break
            if piv is None:
                continue
            if piv != r:
                A[[r, piv]] = A[[piv, r]]
                idx[r], idx[piv] = idx[piv], idx[r]
            A[r] = A[r] / A[r, c]
            col = A[r + 1 :, c]
            nz = [i for i, x in enumerate(col) if x != 0]
            for i in nz:
                A[r + 1 + i] = A[r + 1 + i] - col[i] * A[r]
            pivcols.append(c)
            origins.append(idx[r])
            r += 1
        U = A[:r]
        if track_rows:
            return U, pivcols, origins
        return U, pivcols

    def rref(self, A):
        U, pivcols = self.echelon(A)
        for k in range(len(pivcols) - 1, 0, -1):
            c = pivcols[k]
            for i in range(k):
                if U[i, c] != 0:
                    U[i] = U[i] - U[i, c] * U[k]
        return U, pivcols

    def nullspace(self, A):
        """Kernel basis as rows, RREF-style: identity on the free columns."""
        A = self.asarray(A)
        n = A.shape[1]
        R, pivcols = self.rref(A)
        pivset = set(pivcols)
        free = [c for c in range(n) if c not in pivset]
        K = self.zeros(len(free), n)
        for j, f in enumerate(free):
            K[j, f] = Fraction(1)
            for k, c in enumerate(pivcols):
                K[j, c] = -R[k, f]
        return K

    def matmul(self, A, B):
        return self.asarray(A) @ self.asarray(B)

    def normalize(self, A):
        return A

    def to_scalar(self, c):
        return Fraction(c)

    def from_scalar(self, x, field):
        return Fraction(x)

    def reduce_rows(self, M, R, pivcols):
        """Subtract the RREF span (R, pivcols) from the rows of M."""
        M = self.asarray(M)
        if len(pivcols):
            M = M - M[:, list(pivcols)] @ R
        return M


class ModpLinAlg(BaseLinAlg):
    """Blocked exact elimination mod p with float64 storage.

    All stored values lie in [0, p).  Exactness requires inner products to
    stay below 2^53: panel width and back-substitution blocks are capped so
    depth * (p-1)^2 < 2^53 with a wide margin for p <= ~2^15.5; general
    matmuls (reduce_rows) check the inner dimension explicitly.
    """

    itemsize = 8

    def __init__(self, p, budget=DEFAULT_BUDGET_BYTES, panel=128):
        super().__init__(budget)
        self.p = p
        self.panel = panel
        # largest exact accumulation depth for float64 dot products
        self.max_depth = int(2**53 // ((p - 1) ** 2 * 4))
        if self.max_depth < 2 * panel:
            raise InfeasibleSizeError(f"prime {p} too large for the float64 backend")

    @property
    def field_p(self):
        return self.p

    def asarray(self, rows, ncols=None):
        if isinstance(rows, np.ndarray):
            if rows.dtype == np.float64:
                A = rows.copy()
            else:
                A = rows.astype(np.float64)
        else:
            rows = list(rows)
            if not rows:
                return np.zeros((0, ncols or 0))
            A = np.array([[float(int(x) % self.p) for x in row] for row in rows])
        A %= self.p
        return A

    def zeros(self, m, n):
        return np.zeros((m, n))

    def eye(self, n):
        return np.eye(n)

    def _swap(self, A, i, j, idx):
        if i != j:
            A[[i, j]] = A[[j, i]]
            idx[i], idx[j] = idx[j], idx[i]

    def echelon(self, A, track_rows=False):
        p = self.p
        A = self.asarray(A)
        m, n = A.shape
        self.check_size(m, n, "echelon input")
        idx = np.arange(m)
        r = 0
        c = 0
        pivcols = []
        pivinvs = []
        while c < n and r < m:
            c2 = min(c + self.panel, n)
            r0 = r
            Lbuf = np.zeros((m, c2 - c))
            local = []  # panel-local multiplier column per pivot
            for col in range(c, c2):
                if r == m:
                    break
                nz = np.nonzero(A[r:, col])[0]
                if nz.size == 0:
                    continue
                i = r + int(nz[0])
                if i != r:
                    A[[r, i]] = A[[i, r]]
                    Lbuf[[r, i]] = Lbuf[[i, r]]
                    idx[r], idx[i] = idx[i], idx[r]
                piv = A[r, col]
                ipiv = float(pow(int(piv), -1, p))
                mult = (A[r + 1 :, col] * ipiv) % p
                if mult.any():
                    A[r + 1 :, col:c2] -= np.outer(mult, A[r, col:c2])
                    A[r + 1 :, col:c2] %= p
                Lbuf[r + 1 :, len(local)] = mult
                local.append(col)
                pivcols.append(col)
                pivinvs.append(ipiv)
                r += 1
            s = r - r0
            if s and c2 < n:
                # finish the pivot rows of this panel, then bulk-update below
                for j in range(1, s):
                    lj = Lbuf[r0 + j, :j]
                    if lj.any():
                        A[r0 + j, c2:] -= lj @ A[r0 : r0 + j, c2:]
                        A[r0 + j, c2:] %= p
                L = Lbuf[r:, :s]
                if L.any():
                    A[r:, c2:] -= L @ A[r0:r, c2:]
                    A[r:, c2:] %= p
            c = c2
        U = A[:r]
        for k, ipiv in enumerate(pivinvs):
            if ipiv != 1.0:
                U[k] = (U[k] * ipiv) % p
        if track_rows:
            return U, pivcols, [int(i) for i in idx[:r]]
        return U, pivcols

    def _backsolve_unit_upper(self, T, B, block=256):
        """Solve T X = B with T upper triangular, unit diagonal, mod p."""
        p = self.p
        r = T.shape[0]
        X = B.copy()
        k0 = r
        while k0 > 0:
            k1 = max(0, k0 - block)
            for i in range(k0 - 2, k1 - 1, -1):
                row = T[i, i + 1 : k0]
                if row.any():
                    X[i] -= row @ X[i + 1 : k0]
                    X[i] %= p
            if k1 > 0:
                W = T[:k1, k1:k0]
                if W.any():
                    X[:k1] -= W @ X[k1:k0]
                    X[:k1] %= p
            k0 = k1
        return X

    def rref(self, A):
        """Reduced row echelon form (pivots 1, zeros above), blocked."""
        U, pivcols = self.echelon(A)
        r, n = U.shape
        if r == 0:
            return U, pivcols
        pivset = set(pivcols)
        free = [c for c in range(n) if c not in pivset]
        T = U[:, pivcols]
        X = self._backsolve_unit_upper(T, U[:, free]) if free else np.zeros((r, 0))
        R = np.zeros((r, n))
        R[np.arange(r), pivcols] = 1.0
        if free:
            R[:, free] = X
        return R, pivcols

    def nullspace(self, A):
        """Kernel basis as rows: identity on free columns, RREF corrections."""
        A = self.asarray(A)
        n = A.shape[1]
        U, pivcols = self.echelon(A)
        pivset = set(pivcols)
        free = [c for c in range(n) if c not in pivset]
        self.check_size(len(free), n, "kernel basis")
        K = np.zeros((len(free), n))
        if not free:
            return K
        K[np.arange(len(free)), free] = 1.0
        if pivcols:
            T = U[:, pivcols]
            X = self._backsolve_unit_upper(T, U[:, free])
            K[:, pivcols] = (-X.T) % self.p
        return K

    def matmul(self, A, B):
        A = self.asarray(A)
        B = self.asarray(B)
        return self._mm(A, B)

    def _mm(self, A, B):
        """Exact A @ B mod p, splitting the inner dimension when needed."""
        k = A.shape[1]
        if k <= self.max_depth:
            return (A @ B) % self.p
        out = np.zeros((A.shape[0], B.shape[1]))
        for s in range(0, k, self.max_depth):
            out += A[:, s : s + self.max_depth] @ B[s : s + self.max_depth]
            out %= self.p
        return out

    def normalize(self, A):
        return A % self.p

    def to_scalar(self, c):
        return float(int(c) % self.p)

    def from_scalar(self, x, field):
        return int(x) % self.p

    def reduce_rows(self, M, R, pivcols):
        M = self.asarray(M)
        if len(pivcols):
            M -= self._mm(M[:, list(pivcols)], R)
            M %= self.p
        return M


class Span:
    """A maintained RREF row space supporting batched insertions."""

    def __init__(self, backend, n):
        self.backend = backend
        self.n = n
        self.R = backend.zeros(0, n)
        self.pivcols = []

    @property
    def rank(self):
        return len(self.pivcols)

    def residual(self, M):
        """Rows of M reduced modulo the span."""
        return self.backend.reduce_rows(M, self.R, self.pivcols)

    def add_rows(self, M, want_indices=False):
        """Insert rows; returns indices of rows that enlarged the span.

        The returned indices identify input rows that are independent
        modulo the previous span (in insertion order).
        """
        be = self.backend
        M = self.residual(be.asarray(M, self.n))
        if want_indices:
            U, newpiv, origins = be.echelon(M, track_rows=True)
        else:
            U, newpiv = be.echelon(M)
            origins = list(range(len(newpiv)))
        if not newpiv:
            return []
        Urref, _ = be.rref(U) if len(newpiv) > 1 else (U, newpiv)
        # clear the new pivot columns from the existing rows
        if self.pivcols:
            self.R = be.reduce_rows(self.R, Urref, newpiv)
        self.R = np.vstack([self.R, Urref]) if self.R.shape[0] else Urref
        self.pivcols = self.pivcols + list(newpiv)
        return origins

    def contains_rows(self, M):
        res = self.residual(M)
        if isinstance(res, np.ndarray) and res.dtype == np.float64:
            return not res.any()
        return all(x == 0 for x in np.asarray(res).ravel())
