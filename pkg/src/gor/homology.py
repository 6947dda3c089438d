"""Homological invariants.

Two engines live here:

* Betti tables of an Artinian quotient over the ambient polynomial ring,
  computed as homology of the Koszul complex on the variables tensored with
  the quotient (ranks of exterior-algebra-indexed boundary blocks).

* Step-bounded minimal graded free resolutions over the Artinian algebra
  itself (of the residue field or of any finite module), built degree by
  degree from exact kernels.  Boundary matrices in consecutive internal
  degrees are assembled incrementally through the basis parent pointers, so
  the engine only needs Hilbert data and multiplication tables, never
  monomials.

Everything downstream (regularity, t-values, subadditivity, Gorenstein
symmetry, Koszul linearity) reads off these two.
"""

from itertools import combinations

import numpy as np

from .artinian import FiniteGradedModule, minimal_generators
from .errors import VerificationError
from .fields import binomial


class BettiTable:
    """Graded Betti numbers beta_{i,j} over the polynomial ring."""

    def __init__(self, n, beta, max_i=None):
        self.n = n
        self.beta = {k: int(v) for k, v in beta.items() if v}
        self.max_i = n if max_i is None else max_i

    @property
    def complete(self):
        return self.max_i >= self.n

    def get(self, i, j):
        return self.beta.get((i, j), 0)

    def items(self):
        return sorted(self.beta.items())

    def t_values(self):
        """t_i = max{j : beta(i,j) != 0} for each computed i."""
        out = {}
        for (i, j), _ in self.beta.items():
            out[i] = max(out.get(i, j), j)
        return dict(sorted(out.items()))

    def projective_dimension(self):
        return max(i for i, _ in self.beta)

    def as_rows(self):
        """Betti-diagram rows: row r lists beta_{i, i+r} for i = 0..pd."""
        pd = self.projective_dimension()
        maxr = max(j - i for i, j in self.beta)
        return [
            [self.get(i, i + r) for i in range(pd + 1)] for r in range(maxr + 1)
        ]

    def __repr__(self):
        return f"BettiTable({self.beta})"


def regularity(B):
    """reg = max over nonzero beta(i,j) of j - i."""
    return max(j - i for i, j in B.beta)


def t_values(B):
    return B.t_values()


def subadditivity_report(ts):
    """Violating pairs (a, b), a <= b, with t_a + t_b < t_{a+b}.

    ts may be a dict {i: t_i} or a sequence starting at t_1."""
    if not isinstance(ts, dict):
        ts = {i + 1: t for i, t in enumerate(ts)}
    out = []
    for a in sorted(ts):
        if a < 1:
            continue
        for b in sorted(ts):
            if b < a:
                continue
            c = a + b
            if c in ts and ts[a] + ts[b] < ts[c]:
                out.append((a, b))
    return out


def gorenstein_symmetry_check(B, s):
    """beta(i,j) == beta(n-i, n+s-j) for all (i,j), s the socle degree."""
    if not B.complete:
        raise VerificationError("symmetry check needs a complete table")
    n = B.n
    keys = set(B.beta) | {(n - i, n + s - j) for i, j in B.beta}
    return all(B.get(i, j) == B.get(n - i, n + s - j) for i, j in keys)


def euler_identity_check(B, hilbert):
    """Sum (-1)^i beta(i,j) t^j == HS(t) * (1-t)^n, exactly."""
    n = B.n
    lhs = {}
    for (i, j), v in B.beta.items():
        lhs[j] = lhs.get(j, 0) + (-1) ** i * v
    rhs = {}
    for d, h in enumerate(hilbert):
        for k in range(n + 1):
            c = h * (-1) ** k * binomial(n, k)
            if c:
                rhs[d + k] = rhs.get(d + k, 0) + c
    lhs = {k: v for k, v in lhs.items() if v}
    rhs = {k: v for k, v in rhs.items() if v}
    return lhs == rhs


def betti_over_S(R, max_i=None, check_euler=True):
    """Betti table of R over its polynomial ring via Koszul homology.

    beta_{i,j} = dim C_{i,j} - rank d_{i,j} - rank d_{i+1,j} with
    C_{i,j} = (number of i-subsets) copies of R_{j-i}.  With max_i the
    table is computed only for homological degrees <= max_i (partial)."""
    n = R.ring.n
    be = R.backend
    top = R.top
    full = max_i is None or max_i >= n
    imax = n if full else max_i
    subsets = [list(combinations(range(n), i)) for i in range(imax + 2)]
    index = [{T: k for k, T in enumerate(ss)} for ss in subsets]

    rank_cache = {}

    def boundary_rank(i, j):
        t = j - i  # internal degree carried by the source coefficients
        if i < 1 or i > n or t < 0 or t > top:
            return 0
        key = (i, j)
        if key in rank_cache:
            return rank_cache[key]
        rows = len(subsets[i - 1]) * R.hf(t + 1)
        cols = len(subsets[i]) * R.hf(t)
        if rows == 0 or cols == 0:
            rank_cache[key] = 0
            return 0
        be.check_size(rows, cols, "Koszul boundary")
        W = be.zeros(rows, cols)
        ht, ht1 = R.hf(t), R.hf(t + 1)
        for ti, T in enumerate(subsets[i]):
            c0 = ti * ht
            for k, v in enumerate(T):
                Tp = T[:k] + T[k + 1 :]
                r0 = index[i - 1][Tp] * ht1
                blk = R.table(v, t)
                W[r0 : r0 + ht1, c0 : c0 + ht] = blk if k % 2 == 0 else -blk
        r = be.rank(be.normalize(W))
        rank_cache[key] = r
        return r

    beta = {}
    for i in range(imax + 1):
        for j in range(i, i + top + 1):
            t = j - i
            c = len(subsets[i]) * R.hf(t)
            if c == 0:
                continue
            b = c - boundary_rank(i, j) - boundary_rank(i + 1, j)
            assert b >= 0
            if b:
                beta[(i, j)] = b
    B = BettiTable(n, beta, max_i=imax)
    if full and check_euler and not euler_identity_check(B, R.hilbert):
        raise VerificationError("Betti table fails the Hilbert series identity")
    return B


class FreeModule:
    """Graded free module over an ArtinianAlgebra: direct sum of shifts."""

    def __init__(self, A, gen_degrees):
        self.A = A
        self.gdegs = list(gen_degrees)

    def dim_at(self, e):
        return sum(self.A.hf(e - d) for d in self.gdegs)

    def offsets(self, e):
        out = []
        pos = 0
        for d in self.gdegs:
            out.append(pos)
            pos += self.A.hf(e - d)
        return out

    def apply_action(self, v, e, X):
        """Multiplication by the v-th variable on degree-e column vectors."""
        A = self.A
        be = A.backend
        out = be.zeros(self.dim_at(e + 1), X.shape[1])
        src = 0
        dst = 0
        for d in self.gdegs:
            hs, hd = A.hf(e - d), A.hf(e + 1 - d)
            if hs and hd:
                out[dst : dst + hd] = be.matmul(A.table(v, e - d), X[src : src + hs])
            src += hs
            dst += hd
        return be.normalize(out)

    def column_parents(self, e):
        """For assembling boundary matrices incrementally: per variable v, a
        pair (columns at degree e, parent columns at degree e-1) such that
        basis element col = x_v * basis element parent, plus the list of
        constant columns (gi, col) for generators of degree e."""
        A = self.A
        by_var = [([], []) for _ in range(A.ring.n)]
        const_cols = []
        off_e = self.offsets(e)
        off_p = self.offsets(e - 1)
        for gi, d in enumerate(self.gdegs):
            t = e - d
            if t < 0 or A.hf(t) == 0:
                continue
            if t == 0:
                const_cols.append((gi, off_e[gi]))
                continue
            for b in range(A.hf(t)):
                v, pj = A.parents[t][b]
                by_var[v][0].append(off_e[gi] + b)
                by_var[v][1].append(off_p[gi] + pj)
        return by_var, const_cols


class TorProfile:
    """Generator degrees of a minimal free resolution, step by step."""

    def __init__(self, step_degrees, cap, step_complete):
        self.steps = [sorted(d) for d in step_degrees]
        self.cap = cap
        self.step_complete = list(step_complete)

    def beta(self, i, j):
        if i >= len(self.steps):
            return 0
        return self.steps[i].count(j)

    def graded(self, i):
        out = {}
        for d in self.steps[i]:
            out[d] = out.get(d, 0) + 1
        return out

    def __repr__(self):
        return f"TorProfile({[self.graded(i) for i in range(len(self.steps))]})"


def linear_steps(profile):
    """Largest s with every generator degree at steps 1..s equal to the
    step index offset by the (single) degree of the step-0 generators."""
    base = set(profile.steps[0])
    assert len(base) == 1, "linearity is measured from a single-degree start"
    d0 = base.pop()
    s = 0
    for i in range(1, len(profile.steps)):
        degs = profile.steps[i]
        if degs and all(d == d0 + i for d in degs):
            s = i
        else:
            break
    return s


class Resolution:
    """Minimal graded free resolution of a finite module over an Artinian
    algebra, built by exact linear algebra up to a step bound."""

    def __init__(self, M, steps, degree_cap=None):
        A = M.algebra
        assert A.parents is not None, "algebra needs basis parent pointers"
        self.A = A
        self.M = M
        self.be = A.backend
        gens0 = minimal_generators(M)
        self.gen_degrees = [[d for d, _ in gens0]]
        self.gen_images = [[vec.T.copy() for _, vec in gens0]]
        self.cap = (2 * steps + A.top) if degree_cap is None else degree_cap
        self.step_complete = [True]
        for _ in range(steps):
            self._advance()

    def free(self, s):
        return FreeModule(self.A, self.gen_degrees[s])

    def target(self, s):
        """What F_s maps to: F_{s-1}, or the module itself for s = 0."""
        return self.M if s == 0 else self.free(s - 1)

    @property
    def computed_steps(self):
        return len(self.gen_degrees) - 1

    def profile(self):
        return TorProfile(self.gen_degrees, self.cap, self.step_complete)

    def boundary_matrix(self, s, e, W_prev=None):
        """Matrix of d_s : (F_s)_e -> (F_{s-1})_e (or -> M_e for s = 0).

        W_prev, if given, must be the degree e-1 boundary matrix; columns
        for non-constant basis elements are variable-shifts of its columns."""
        be = self.be
        Fs = self.free(s)
        tgt = self.target(s)
        rows = tgt.dim_at(e)
        cols = Fs.dim_at(e)
        be.check_size(rows, max(cols, 1), "resolution boundary")
        W = be.zeros(rows, cols)
        by_var, const_cols = Fs.column_parents(e)
        for gi, c in const_cols:
            W[:, c : c + 1] = self.gen_images[s][gi]
        if W_prev is None and any(cols_v for cols_v, _ in by_var):
            W_prev = self.boundary_matrix(s, e - 1)
        for v, (cols_v, parents_v) in enumerate(by_var):
            if not cols_v:
                continue
            if isinstance(tgt, FreeModule):
                shifted = tgt.apply_action(v, e - 1, W_prev[:, parents_v])
            else:
                shifted = be.normalize(
                    be.matmul(tgt.action(v, e - 1), W_prev[:, parents_v])
                )
            W[:, cols_v] = shifted
        return W

    def _advance(self):
        be = self.be
        A = self.A
        s = self.computed_steps
        Fs = self.free(s)
        if not Fs.gdegs:
            self.gen_degrees.append([])
            self.gen_images.append([])
            self.step_complete.append(True)
            return
        dmin = min(Fs.gdegs)
        dmax = max(Fs.gdegs)
        etop = dmax + A.top
        ecap = min(self.cap, etop)
        new_degs = []
        new_imgs = []
        K_prev = None
        W_prev = None
        for e in range(dmin, ecap + 1):
            W = self.boundary_matrix(s, e, W_prev)
            K = be.nullspace(W)
            span = be.span(W.shape[1])
            if K_prev is not None and K_prev.shape[0]:
                shifted = Fs.apply_action(0, e - 1, K_prev.T).T
                blocks = [shifted]
                for v in range(1, A.ring.n):
                    blocks.append(Fs.apply_action(v, e - 1, K_prev.T).T)
                span.add_rows(np.vstack(blocks))
            newidx = span.add_rows(K, want_indices=True)
            if newidx:
                # minimality: new generators live in the graded maximal ideal
                _, const_cols = Fs.column_parents(e)
                for i in newidx:
                    for _, c in const_cols:
                        assert K[i, c] == 0, "unit entry in boundary"
                for i in newidx:
                    new_degs.append(e)
                    new_imgs.append(K[i : i + 1].T.copy())
            K_prev = K
            W_prev = W
        self.gen_degrees.append(new_degs)
        self.gen_images.append(new_imgs)
        self.step_complete.append(ecap >= etop)


def resolve_module(M, steps, degree_cap=None):
    return Resolution(M, steps, degree_cap)


def trivial_module(A):
    """The residue field k as a module over A."""
    actions = [[] for _ in range(A.ring.n)]
    return FiniteGradedModule(A, 0, [1], actions)


def resolve_k_over_R(R, steps, degree_cap=None):
    """Minimal resolution of the residue field over R; returns a TorProfile."""
    res = Resolution(trivial_module(R), steps, degree_cap)
    prof = res.profile()
    assert prof.steps[0] == [0]
    return prof


def tor_of_module(M, i, degree_cap=None):
    """Graded dimensions {j: dim Tor_i(M, k)_j} over M's algebra."""
    res = Resolution(M, i, degree_cap)
    return res.profile().graded(i)
