"""Finite-dimensional graded algebras and modules.

An ArtinianAlgebra is a staircase basis per degree plus exact multiplication
matrices for each variable.  FiniteGradedModule layers graded action
matrices over such an algebra (or over the polynomial ring acting through
it).  On top of these we get the canonical module as the graded dual,
socle/type/level, minimal presentations over the polynomial ring,
Lefschetz probing and unimodality certificates.
"""

import random

import numpy as np

from .errors import BadParameterError, VerificationError
from .linalg import Span, backend_for
from .polyring import monomials_of_degree


class ArtinianAlgebra:
    """Graded quotient with basis `std[d]` (monomial tuples) per degree.

    tables[v][d] is the matrix of multiplication by the v-th variable,
    mapping coordinates in degree d to coordinates in degree d+1.
    """

    def __init__(self, ring, std, tables, backend=None, parents=None):
        std = [list(b) for b in std]
        while std and not std[-1]:
            std.pop()
        self.ring = ring
        self.field = ring.field
        self.std = std
        self.hilbert = [len(b) for b in std]
        self.top = len(std) - 1
        self.backend = backend if backend is not None else backend_for(ring.field)
        self.tables = tables
        self.pos = [{m: i for i, m in enumerate(b)} for b in std]
        assert self.hilbert and self.hilbert[0] == 1
        if parents is None:
            parents = self._parents_from_monomials()
        # parents[d][i] = (v, j): basis element i of degree d equals
        # x_v times basis element j of degree d-1 (exactly, as a product)
        self.parents = parents

    def _parents_from_monomials(self):
        out = [None]
        for d in range(1, self.top + 1):
            lst = []
            for m in self.std[d]:
                if not isinstance(m, tuple):
                    return None
                v = next(k for k, e in enumerate(m) if e > 0)
                mm = list(m)
                mm[v] -= 1
                lst.append((v, self.pos[d - 1][tuple(mm)]))
            out.append(lst)
        return out

    def hf(self, d):
        if 0 <= d <= self.top:
            return self.hilbert[d]
        return 0

    @property
    def dim(self):
        return sum(self.hilbert)

    def hilbert_function(self):
        return list(self.hilbert)

    def h_vector(self):
        return tuple(self.hilbert)

    def table(self, v, d):
        if 0 <= d < self.top:
            return self.tables[v][d]
        return self.backend.zeros(self.hf(d + 1), self.hf(d))

    def linear_form_matrix(self, coeffs, d):
        """Matrix of multiplication by sum(coeffs[v] * x_v) from degree d."""
        be = self.backend
        out = be.zeros(self.hf(d + 1), self.hf(d))
        for v, c in enumerate(coeffs):
            if not self.field.is_zero(c):
                out = out + be.to_scalar(c) * self.table(v, d)
        return be.normalize(out)

    def mono_matrix(self, mono, d):
        """Matrix of multiplication by a monomial, degree d to d + |mono|."""
        be = self.backend
        M = be.eye(self.hf(d))
        cur = d
        for v, e in enumerate(mono):
            for _ in range(e):
                M = be.matmul(self.table(v, cur), M)
                cur += 1
        return M

    def poly_matrix(self, f, d):
        """Matrix of multiplication by a homogeneous polynomial from degree d."""
        assert f.is_homogeneous()
        e = f.degree()
        be = self.backend
        out = be.zeros(self.hf(d + e), self.hf(d))
        for mono, c in f.terms.items():
            out = out + be.to_scalar(c) * self.mono_matrix(mono, d)
        return be.normalize(out)

    def coords(self, f):
        """Coordinates of a homogeneous polynomial supported on the staircase."""
        assert f.is_homogeneous()
        d = f.degree()
        if d < 0:
            d = 0
        vec = self.backend.zeros(1, self.hf(d))
        for m, c in f.terms.items():
            assert m in self.pos[d], "element not in normal form"
            vec[0, self.pos[d][m]] = self.backend.to_scalar(c)
        return vec

    def as_module(self):
        actions = [[self.table(v, d) for d in range(self.top)] for v in range(self.ring.n)]
        return FiniteGradedModule(self, 0, list(self.hilbert), actions)

    def verify_tables(self):
        """Commutativity of the multiplication tables, checked exhaustively."""
        be = self.backend
        for d in range(self.top - 1):
            for v in range(self.ring.n):
                for w in range(v + 1, self.ring.n):
                    A = be.matmul(self.table(w, d + 1), self.table(v, d))
                    B = be.matmul(self.table(v, d + 1), self.table(w, d))
                    if not _same(A, B):
                        raise VerificationError(
                            f"tables for variables {v},{w} do not commute at degree {d}"
                        )
        return True


def _same(A, B):
    if isinstance(A, np.ndarray) and A.dtype == np.float64:
        return A.shape == B.shape and not (A - B).any()
    return A.shape == B.shape and all(x == y for x, y in zip(A.ravel(), B.ravel()))


class FiniteGradedModule:
    """Finite-length graded module over an ArtinianAlgebra.

    Components live in degrees offset .. offset+len(dims)-1; actions[v][i]
    maps the i-th component to the (i+1)-th.
    """

    def __init__(self, algebra, offset, dims, actions, labels=None):
        self.algebra = algebra
        self.backend = algebra.backend
        self.offset = offset
        self.dims = list(dims)
        self.actions = actions
        self.labels = labels

    @property
    def nvars(self):
        return self.algebra.ring.n

    @property
    def degrees(self):
        return range(self.offset, self.offset + len(self.dims))

    @property
    def top_degree(self):
        return self.offset + len(self.dims) - 1

    def dim_at(self, d):
        i = d - self.offset
        if 0 <= i < len(self.dims):
            return self.dims[i]
        return 0

    @property
    def length(self):
        return sum(self.dims)

    def hilbert_function(self):
        return {d: self.dim_at(d) for d in self.degrees}

    def action(self, v, d):
        i = d - self.offset
        if 0 <= i < len(self.dims) - 1:
            return self.actions[v][i]
        return self.backend.zeros(self.dim_at(d + 1), self.dim_at(d))

    def mono_action(self, mono, d):
        be = self.backend
        M = be.eye(self.dim_at(d))
        cur = d
        for v, e in enumerate(mono):
            for _ in range(e):
                M = be.matmul(self.action(v, cur), M)
                cur += 1
        return M

    def poly_action(self, f, d):
        assert f.is_homogeneous()
        e = f.degree()
        be = self.backend
        out = be.zeros(self.dim_at(d + e), self.dim_at(d))
        for mono, c in f.terms.items():
            out = out + be.to_scalar(c) * self.mono_action(mono, d)
        return be.normalize(out)

    def shift(self, a):
        """M(a), with M(a)_d = M_{d+a}."""
        return FiniteGradedModule(
            self.algebra, self.offset - a, self.dims, self.actions, self.labels
        )

    def verify_actions(self):
        be = self.backend
        for d in list(self.degrees)[:-1]:
            for v in range(self.nvars):
                for w in range(v + 1, self.nvars):
                    A = be.matmul(self.action(w, d + 1), self.action(v, d))
                    B = be.matmul(self.action(v, d + 1), self.action(w, d))
                    if not _same(A, B):
                        raise VerificationError(
                            f"module actions {v},{w} do not commute at degree {d}"
                        )
        return True


def canonical_module(R):
    """omega_R as the graded dual of R, components in degrees -top .. 0.

    The action of a variable on the dual is the transpose of its
    multiplication matrix one degree down.
    """
    top = R.top
    dims = [R.hf(top - i) for i in range(top + 1)]
    actions = []
    for v in range(R.ring.n):
        acts = []
        for i in range(top):
            T = R.table(v, top - i - 1)
            acts.append(T.T.copy())
        actions.append(acts)
    return FiniteGradedModule(R, -top, dims, actions)


def socle(R):
    """Graded basis (rows per degree) of the annihilator of the maximal ideal."""
    be = R.backend
    out = {}
    for d in range(R.top + 1):
        if R.hf(d) == 0:
            continue
        if d == R.top:
            out[d] = be.eye(R.hf(d))
            continue
        stacked = np.vstack([R.table(v, d) for v in range(R.ring.n)])
        K = be.nullspace(stacked)
        if K.shape[0]:
            out[d] = K
    return out


def socle_dimensions(R):
    return {d: int(K.shape[0]) for d, K in socle(R).items()}


def type_and_level(R):
    dims = socle_dimensions(R)
    t = sum(dims.values())
    return t, len(dims) == 1


def is_gorenstein(R):
    t, _ = type_and_level(R)
    return t == 1


class Presentation:
    """Minimal generators and first syzygies of a module over the polynomial
    ring: relation j is the column [columns[j][i]]_i of homogeneous
    polynomials against the chosen generators."""

    def __init__(self, ring, gen_degrees, rel_degrees, columns):
        self.ring = ring
        self.gen_degrees = list(gen_degrees)
        self.rel_degrees = list(rel_degrees)
        self.columns = columns

    @property
    def linear(self):
        """Generated in one degree with all relations one degree above."""
        gd = set(self.gen_degrees)
        if len(gd) != 1:
            return False
        d = gd.pop()
        return all(e == d + 1 for e in self.rel_degrees)

    def __repr__(self):
        return (
            f"Presentation({len(self.gen_degrees)} gens deg {self.gen_degrees}, "
            f"{len(self.rel_degrees)} rels deg {self.rel_degrees})"
        )


def minimal_generators(M):
    """Per-degree minimal generators: (degree, coordinate row) pairs."""
    be = M.backend
    gens = []
    prev = None  # span of A_1 * previous component inside current component
    for d in M.degrees:
        nd = M.dim_at(d)
        if nd == 0:
            prev = None
            continue
        span = be.span(nd)
        if prev is not None and M.dim_at(d - 1):
            rows = np.vstack([M.action(v, d - 1).T for v in range(M.nvars)])
            span.add_rows(rows)
        newidx = span.add_rows(be.eye(nd), want_indices=True)
        for i in newidx:
            row = be.zeros(1, nd)
            row[0, i] = be.to_scalar(1)
            gens.append((d, row))
        prev = d
    return gens


def minimal_presentation(M, extra_bound=0, max_escalations=3):
    """Minimal presentation of M over the polynomial ring.

    Generators are found degree by degree; relations (first syzygies of the
    chosen surjection from a graded free module) are computed up to the top
    internal degree of M plus 2 (plus escalation), then the Hilbert function
    of the presented cokernel is verified two degrees further.
    """
    be = M.backend
    ring = M.algebra.ring
    n = ring.n
    gens = minimal_generators(M)
    if not gens:
        return Presentation(ring, [], [], [])
    gdegs = [d for d, _ in gens]
    gmin = min(gdegs)

    D = M.top_degree + 2 + extra_bound

    def src_basis(e):
        basis = []
        for gi, d in enumerate(gdegs):
            if e >= d:
                for u in monomials_of_degree(n, e - d):
                    basis.append((gi, u))
        return basis

    def phi_matrix(e, basis):
        """Columns: image in M_e of each (generator, monomial) pair."""
        cols = be.zeros(M.dim_at(e), len(basis))
        for j, (gi, u) in enumerate(basis):
            d = gdegs[gi]
            img = be.matmul(M.mono_action(u, d), gens[gi][1].T)
            cols[:, j : j + 1] = img
        return cols

    def shift_rows(rows, basis_lo, index_hi):
        """Multiply syzygy rows by each variable, reindexing the source."""
        out = []
        nlo = len(basis_lo)
        for v in range(n):
            tgt = np.empty(nlo, dtype=np.int64)
            for j, (gi, u) in enumerate(basis_lo):
                uu = list(u)
                uu[v] += 1
                tgt[j] = index_hi[(gi, tuple(uu))]
            block = be.zeros(rows.shape[0], len(index_hi))
            block[:, tgt] = rows
            out.append(block)
        return np.vstack(out) if out else be.zeros(0, len(index_hi))

    rel_degrees = []
    rel_rows = []  # (degree, row vector over src_basis(degree))
    prev_kernel = None
    prev_basis = None
    found_span = None  # degree-wise span generated by the found relations
    ok = True
    e = gmin
    while e <= D + 2:
        basis = src_basis(e)
        index = {bu: j for j, bu in enumerate(basis)}
        if not basis:
            e += 1
            continue
        if M.dim_at(e) == 0:
            K = be.eye(len(basis))
        else:
            Phi = phi_matrix(e, basis)
            K = be.nullspace(Phi)
        span = be.span(len(basis))
        if prev_kernel is not None and prev_kernel.shape[0]:
            span.add_rows(shift_rows(prev_kernel, prev_basis, index))
        if e <= D:
            newidx = span.add_rows(K, want_indices=True)
            for i in newidx:
                rel_degrees.append(e)
                rel_rows.append((e, K[i : i + 1].copy(), basis))
        else:
            # verification zone: the found relations must already span
            if span.rank != K.shape[0]:
                ok = False
        # surjectivity onto M_e (cokernel HF check)
        if len(basis) - K.shape[0] != M.dim_at(e):
            raise VerificationError("presentation does not surject onto the module")
        prev_kernel = K
        prev_basis = basis
        # once the module is exhausted and the relations fill the whole
        # source, every later degree is spanned by variable multiples
        if (
            e > M.top_degree
            and e >= max(gdegs)
            and K.shape[0] == len(basis)
            and span.rank == len(basis)
        ):
            break
        e += 1
    if not ok:
        if max_escalations <= 0:
            raise VerificationError(
                "syzygy degree bound insufficient after escalation"
            )
        return minimal_presentation(M, extra_bound + 2, max_escalations - 1)

    columns = []
    for e, row, basis in rel_rows:
        col = [ring.zero() for _ in gdegs]
        for j, (gi, u) in enumerate(basis):
            c = row[0, j]
            if isinstance(c, float):
                if c == 0.0:
                    continue
                coef = ring.field.from_int(int(c))
            else:
                if c == 0:
                    continue
                coef = c
            col[gi] = col[gi] + ring.monomial(u, coef)
        columns.append(col)
    return Presentation(ring, gdegs, rel_degrees, columns)


def is_superlevel(R):
    """Level with linearly presented canonical module."""
    t, level = type_and_level(R)
    if not level:
        return False
    pres = minimal_presentation(canonical_module(R))
    assert len(pres.gen_degrees) == t
    return pres.linear


def unimodality(h):
    """(is_unimodal, first_violation_index).

    The violation index marks the bottom of the first dip: the entry that a
    later value strictly exceeds after a strict descent.
    """
    h = list(h)
    descended = False
    low = None
    for i in range(1, len(h)):
        if h[i] < h[i - 1]:
            descended = True
            low = i
        elif h[i] > h[i - 1] and descended:
            return False, low
    return True, None


def h_vector_of(hilbert):
    h = list(hilbert)
    while h and h[-1] == 0:
        h.pop()
    return tuple(h)


def lefschetz_check(R, mode="weak", trials=5, seed=0):
    """Probe random linear forms for the (weak/strong) Lefschetz property.

    Positive verdicts are probabilistic evidence; the non-unimodality
    obstruction (non-unimodal HF rules out WLP) is a certificate.
    """
    if mode not in ("weak", "strong"):
        raise BadParameterError(f"unknown mode {mode!r}")
    F = R.field
    if F.p is not None and F.p <= R.top:
        raise BadParameterError(
            f"prime {F.p} too small for Lefschetz probing at top degree {R.top}"
        )
    h = R.hilbert
    uni, viol = unimodality(h_vector_of(h))
    rng = random.Random(seed)
    be = R.backend
    powers = range(1, R.top + 1) if mode == "strong" else (1,)
    trials_out = []
    for _ in range(trials):
        if F.p is None:
            coeffs = [F.from_int(rng.randint(1, 1000)) for _ in range(R.ring.n)]
        else:
            coeffs = [rng.randint(1, F.p - 1) for _ in range(R.ring.n)]
        maps_ok = True
        failures = []
        for j in powers:
            for i in range(R.top - j + 1):
                M = R.linear_form_matrix(coeffs, i)
                cur = i + 1
                for _ in range(j - 1):
                    M = be.matmul(R.linear_form_matrix(coeffs, cur), M)
                    cur += 1
                r = be.rank(M)
                want = min(R.hf(i), R.hf(i + j))
                assert r <= want
                if r != want:
                    maps_ok = False
                    failures.append({"i": i, "j": j, "rank": r, "full": want})
        trials_out.append({"coeffs": [str(c) for c in coeffs], "ok": maps_ok,
                           "failures": failures})
    holds = any(t["ok"] for t in trials_out)
    report = {
        "mode": mode,
        "seed": seed,
        "trials": trials_out,
        "verdict": "holds for some tested form" if holds else
                   "failed for all tested forms",
        "probabilistic": True,
        "unimodal": uni,
    }
    if not uni:
        report["wlp_impossible"] = True
        report["non_unimodality_index"] = viol
        report["verdict"] = "WLP impossible: non-unimodal Hilbert function"
        report["probabilistic"] = False
    return report
