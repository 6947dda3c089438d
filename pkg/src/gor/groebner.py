"""Buchberger's algorithm, normal forms, staircases, Artinian quotients,
and colon-by-element ideals (the Artinian case, by pure linear algebra)."""

import heapq

import numpy as np

from .artinian import ArtinianAlgebra
from .errors import NotArtinianError
from .linalg import backend_for
from .polyring import (
    Ideal,
    Polynomial,
    mono_coprime,
    mono_deg,
    mono_div,
    mono_lcm,
    mono_mul,
)

ARTINIAN_DEGREE_BOUND = 64


class GroebnerBasis:
    def __init__(self, ring, elements, complete=True, cap=None):
        self.ring = ring
        self.elements = list(elements)  # monic, reduced
        self.leads = [g.lead_monomial() for g in self.elements]
        self.complete = complete
        self.cap = cap
        by_deg = {}
        for i, m in enumerate(self.leads):
            by_deg.setdefault(mono_deg(m), []).append(i)
        self.by_degree = by_deg

    def max_degree(self):
        return max((g.degree() for g in self.elements), default=0)

    def is_quadratic(self):
        return self.max_degree() <= 2

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def normal_form(f, G):
    """Full remainder of f on division by G (tail-reduced)."""
    ring = f.ring
    F = ring.field
    key = ring.key
    work = dict(f.terms)
    out = {}
    leads = G.leads
    elems = G.elements
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        dm = mono_deg(m)
        red = None
        for i, lm in enumerate(leads):
            if mono_deg(lm) <= dm:
                u = mono_div(m, lm)
                if u is not None:
                    red = (i, u)
                    break
        if red is None:
            out[m] = c
            continue
        i, u = red
        g = elems[i]
        glead = leads[i]
        for mg, cg in g.terms.items():
            if mg == glead:
                continue
            mm = mono_mul(u, mg)
            cc = F.mul(c, cg)
            if mm in work:
                s = F.sub(work[mm], cc)
                if F.is_zero(s):
                    del work[mm]
                else:
                    work[mm] = s
            else:
                work[mm] = F.neg(cc)
    return Polynomial(ring, out)


def _spoly(gi, gj):
    """S-polynomial of two monic polynomials."""
    li, lj = gi.lead_monomial(), gj.lead_monomial()
    u = mono_lcm(li, lj)
    return gi.mul_mono(mono_div(u, li)) - gj.mul_mono(mono_div(u, lj))


def _interreduce(polys):
    """Fully interreduce a set: each element tail-reduced against the
    others, zero remainders discarded.  Preserves the generated ideal; on a
    Groebner basis this produces the reduced basis."""
    polys = [p.monic() for p in polys if not p.is_zero()]
    if not polys:
        return []
    ring = polys[0].ring
    polys.sort(key=lambda g: (g.degree(), ring.key(g.lead_monomial())))
    changed = True
    while changed:
        changed = False
        out = []
        for i, g in enumerate(polys):
            others = out + polys[i + 1 :]
            h = normal_form(g, GroebnerBasis(ring, others)) if others else g
            if h.is_zero():
                changed = True
                continue
            h = h.monic()
            if h != g:
                changed = True
            out.append(h)
        polys = out
    return polys


def buchberger(ideal_or_gens, degree_cap=None):
    """Reduced Groebner basis of a homogeneous ideal (grevlex by default).

    With degree_cap, S-pairs are processed in non-decreasing degree and the
    run stops at the cap; for homogeneous input the result is a degree-
    truncated basis, exact for normal forms in degrees <= cap.
    """
    if isinstance(ideal_or_gens, Ideal):
        ideal = ideal_or_gens
        if ideal._gb is not None and ideal._gb.cap is None:
            return ideal._gb
        gens = ideal.generators
        ring = ideal.ring
    else:
        ideal = None
        gens = list(ideal_or_gens)
        ring = gens[0].ring

    G = _interreduce(gens)
    if not G:
        gb = GroebnerBasis(ring, [], complete=True, cap=degree_cap)
        if ideal is not None and degree_cap is None:
            ideal._gb = gb
        return gb
    leads = [g.lead_monomial() for g in G]

    heap = []
    done = set()

    def push_pairs(t):
        for i in range(t):
            u = mono_lcm(leads[i], leads[t])
            heapq.heappush(heap, (mono_deg(u), i, t, u))

    for t in range(len(G)):
        push_pairs(t)

    complete = True
    while heap:
        d, i, j, u = heapq.heappop(heap)
        if degree_cap is not None and d > degree_cap:
            complete = False
            break
        key = (i, j)
        if key in done:
            continue
        done.add(key)
        if mono_coprime(leads[i], leads[j]):
            continue
        # chain criterion
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if mono_div(u, leads[k]) is not None:
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a in done and b in done:
                    skip = True
                    break
        if skip:
            continue
        h = normal_form(_spoly(G[i], G[j]), GroebnerBasis(ring, G))
        if h.is_zero():
            continue
        G.append(h.monic())
        leads.append(G[-1].lead_monomial())
        push_pairs(len(G) - 1)

    G = _interreduce(G)
    gb = GroebnerBasis(ring, G, complete=complete, cap=degree_cap)
    if ideal is not None and complete and degree_cap is None:
        ideal._gb = gb
    return gb


def verify_groebner(gb):
    """Recheck that every S-pair reduces to zero."""
    G = gb.elements
    for i in range(len(G)):
        for j in range(i):
            if mono_coprime(gb.leads[i], gb.leads[j]):
                continue
            if not normal_form(_spoly(G[i], G[j]), gb).is_zero():
                return False
    return True


def staircase(gb, bound=ARTINIAN_DEGREE_BOUND):
    """Standard monomials per degree; raises NotArtinianError if the
    staircase has not closed off by the degree bound."""
    ring = gb.ring
    n = ring.n
    leads = gb.leads
    lead_arr = np.array(leads, dtype=np.int64) if leads else np.zeros((0, n), np.int64)
    std = [[ring.one_mono]]
    d = 0
    while std[d]:
        d += 1
        if d > bound:
            raise NotArtinianError(
                f"staircase still open at degree {bound}; quotient not Artinian "
                f"(or raise the bound)"
            )
        if gb.cap is not None and d > gb.cap:
            raise NotArtinianError(
                f"truncated basis (cap {gb.cap}) cannot certify degree {d}"
            )
        cand = set()
        for m in std[d - 1]:
            for v in range(n):
                mm = list(m)
                mm[v] += 1
                cand.add(tuple(mm))
        cand = sorted(cand, key=ring.key, reverse=True)
        if lead_arr.shape[0]:
            C = np.array(cand, dtype=np.int64)
            keep = []
            for start in range(0, lead_arr.shape[0], 256):
                block = lead_arr[start : start + 256]
                hits = (C[:, None, :] >= block[None, :, :]).all(axis=2).any(axis=1)
                keep.append(hits)
            divisible = np.logical_or.reduce(keep)
            std.append([m for m, bad in zip(cand, divisible) if not bad])
        else:
            std.append(cand)
    return std[:-1]


def build_quotient(source, backend=None, bound=ARTINIAN_DEGREE_BOUND):
    """ArtinianAlgebra from an ideal or Groebner basis.

    Builds the staircase basis and exact per-degree multiplication tables
    (normal forms of variable times basis monomial)."""
    gb = source if isinstance(source, GroebnerBasis) else buchberger(source)
    ring = gb.ring
    F = ring.field
    std = staircase(gb, bound=bound)
    be = backend if backend is not None else backend_for(F)
    pos = [{m: i for i, m in enumerate(b)} for b in std]
    top = len(std) - 1
    nf_cache = {}
    tables = []
    for v in range(ring.n):
        per_deg = []
        for d in range(top):
            T = be.zeros(len(std[d + 1]), len(std[d]))
            for col, m in enumerate(std[d]):
                mm = list(m)
                mm[v] += 1
                q = tuple(mm)
                if q in pos[d + 1]:
                    T[pos[d + 1][q], col] = be.to_scalar(F.one)
                    continue
                if q not in nf_cache:
                    nf_cache[q] = normal_form(ring.monomial(q), gb)
                for mono, c in nf_cache[q].terms.items():
                    T[pos[d + 1][mono], col] = be.to_scalar(c)
            per_deg.append(T)
        tables.append(per_deg)
    A = ArtinianAlgebra(ring, std, tables, backend=be)
    A.source_ideal = source if isinstance(source, Ideal) else Ideal(ring, gb.elements)
    return A


def colon_by_element(C, g):
    """C : g for S/C Artinian and g homogeneous, by kernel computation.

    Returns a minimalized generating set of the colon ideal."""
    ring = C.ring
    gb = buchberger(C)
    gnf = normal_form(g, gb)
    if gnf.is_zero():
        return Ideal(ring, [ring.const(1)])
    A = build_quotient(gb)
    be = A.backend
    e = gnf.degree()
    candidates = list(C.generators)
    for d in range(A.top + 1):
        M = A.poly_matrix(gnf, d)
        K = be.nullspace(M)
        for row in range(K.shape[0]):
            f = ring.zero()
            for col, m in enumerate(A.std[d]):
                coef = be.from_scalar(K[row, col], ring.field)
                if not ring.field.is_zero(coef):
                    f = f + ring.monomial(m, coef)
            if not f.is_zero():
                candidates.append(f)
    # minimalize by degree
    candidates.sort(key=lambda f: f.degree())
    mins = []
    i = 0
    while i < len(candidates):
        d = candidates[i].degree()
        batch = []
        while i < len(candidates) and candidates[i].degree() == d:
            batch.append(candidates[i])
            i += 1
        gbm = buchberger(mins) if mins else None
        reduced = [normal_form(f, gbm) if gbm else f for f in batch]
        reduced = [f for f in reduced if not f.is_zero()]
        if not reduced:
            continue
        monos = sorted({m for f in reduced for m in f.terms}, key=ring.key)
        idx = {m: j for j, m in enumerate(monos)}
        span = be.span(len(monos))
        for f in reduced:
            row = be.zeros(1, len(monos))
            for m, c in f.terms.items():
                row[0, idx[m]] = be.to_scalar(c)
            if span.add_rows(row):
                mins.append(f)
    return Ideal(ring, mins)
