"""Hilbert series and truncated graded Poincare series arithmetic.

A PoincareTruncation stores bigraded Betti numbers beta(i, j) up to a
homological order N (and an optional internal degree cap).  The series
identities relating a trivial extension to its factors,

    P_Rt^k  = P_R^k  * (1 - xy P_R^{omega_R(-2)})^(-1)
    P_R^{omega_R} = P_A^{omega_R} * (1 - xy P_A^M)^(-1),

are checked coefficient by coefficient, with both sides produced by
independent resolution computations.
"""

from .artinian import FiniteGradedModule, canonical_module
from .errors import BadParameterError, VerificationError
from .fields import GF


class PoincareTruncation:
    """Non-negative integer coefficients beta(i, j), exact to order N."""

    def __init__(self, coeffs, order, degree_cap=None):
        self.order = order
        self.degree_cap = degree_cap
        self.coeffs = {}
        for (i, j), v in coeffs.items():
            if i > order:
                continue
            if degree_cap is not None and j > degree_cap:
                continue
            v = int(v)
            if v < 0:
                raise VerificationError(
                    f"negative Poincare coefficient {v} at (i, j) = ({i}, {j})"
                )
            if v:
                self.coeffs[(i, j)] = v

    @classmethod
    def one(cls, order):
        return cls({(0, 0): 1}, order)

    @classmethod
    def from_profile(cls, profile, degree_cap=None):
        """Truncation from a TorProfile; only fully computed steps count."""
        order = len(profile.steps) - 1
        for i, done in enumerate(profile.step_complete):
            if not done:
                order = min(order, i - 1)
        if order < 0:
            raise VerificationError("no complete homological steps in profile")
        coeffs = {}
        for i in range(order + 1):
            for j, v in profile.graded(i).items():
                coeffs[(i, j)] = v
        return cls(coeffs, order, degree_cap)

    def _common(self, other):
        order = min(self.order, other.order)
        caps = [c for c in (self.degree_cap, other.degree_cap) if c is not None]
        return order, (min(caps) if caps else None)

    def add(self, other):
        order, cap = self._common(other)
        out = {}
        for src in (self.coeffs, other.coeffs):
            for k, v in src.items():
                out[k] = out.get(k, 0) + v
        return PoincareTruncation(out, order, cap)

    def multiply(self, other):
        order, cap = self._common(other)
        out = {}
        for (i1, j1), v1 in self.coeffs.items():
            if i1 > order:
                continue
            for (i2, j2), v2 in other.coeffs.items():
                if i1 + i2 > order:
                    continue
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + v1 * v2
        return PoincareTruncation(out, order, cap)

    def shift(self, di, dj):
        """Multiply by x^di y^dj; raises the reliable order accordingly."""
        out = {(i + di, j + dj): v for (i, j), v in self.coeffs.items()}
        cap = self.degree_cap + dj if self.degree_cap is not None else None
        return PoincareTruncation(out, self.order + di, cap)

    def geometric_inverse(self):
        """(1 - self)^(-1) as a truncation; needs no order-0 terms."""
        if any(i == 0 for i, _ in self.coeffs):
            raise BadParameterError(
                "geometric inverse needs a factor without homological order 0"
            )
        total = PoincareTruncation.one(self.order)
        power = PoincareTruncation.one(self.order)
        for _ in range(self.order):
            power = power.multiply(self)
            if not power.coeffs:
                break
            total = total.add(power)
        return total

    def equal(self, other):
        order, cap = self._common(other)

        def trim(c):
            return {
                k: v
                for k, v in c.items()
                if k[0] <= order and (cap is None or k[1] <= cap)
            }

        return trim(self.coeffs) == trim(other.coeffs)

    def is_linear_through(self, s):
        """No beta(i, j) with j != i for 1 <= i <= min(s, order)."""
        s = min(s, self.order)
        return not any(1 <= i <= s and j != i for (i, j) in self.coeffs)

    def __repr__(self):
        return f"PoincareTruncation(order={self.order}, {sorted(self.coeffs.items())})"


def hilbert_series(R):
    """Coefficient list of HS_R(t); exact, finite for Artinian R."""
    hs = list(R.hilbert)
    assert all(isinstance(v, int) and v >= 0 for v in hs)
    return hs


def direct_sum(M1, M2):
    """Block-diagonal direct sum of two modules over the same algebra."""
    assert M1.algebra is M2.algebra
    be = M1.backend
    lo = min(M1.offset, M2.offset)
    hi = max(M1.top_degree, M2.top_degree)
    dims = [M1.dim_at(d) + M2.dim_at(d) for d in range(lo, hi + 1)]
    actions = []
    for v in range(M1.nvars):
        acts = []
        for d in range(lo, hi):
            a1, a2 = M1.dim_at(d), M2.dim_at(d)
            b1, b2 = M1.dim_at(d + 1), M2.dim_at(d + 1)
            T = be.zeros(b1 + b2, a1 + a2)
            if a1 and b1:
                T[:b1, :a1] = M1.action(v, d)
            if a2 and b2:
                T[b1:, a1:] = M2.action(v, d)
            acts.append(T)
        actions.append(acts)
    return FiniteGradedModule(M1.algebra, lo, dims, actions)


def _profile(module, steps, degree_cap=None):
    from .homology import resolve_module

    return resolve_module(module, steps, degree_cap).profile()


def gulliksen_check_1(alpha, N, field=GF(32003)):
    """P_Rt^k = P_R^k (1 - xy P_R^{omega_R(-2)})^(-1) up to order N.

    The left side resolves k over the trivial extension directly; the
    right side is assembled from resolutions over R."""
    from .constructions import build
    from .groebner import build_quotient
    from .homology import resolve_k_over_R
    from .idealization import idealize

    R = build_quotient(build("roos-alpha", field=field, alpha=alpha))
    res = idealize(R)
    lhs = PoincareTruncation.from_profile(resolve_k_over_R(res.model, N))
    P_Rk = PoincareTruncation.from_profile(resolve_k_over_R(R, N))
    w2 = canonical_module(R).shift(-2)  # components in degrees 0..2
    P_w = PoincareTruncation.from_profile(_profile(w2, max(N - 1, 0)))
    rhs = P_Rk.multiply(P_w.shift(1, 1).geometric_inverse())
    return lhs.equal(rhs)


def gulliksen_check_2(alpha, N, field=GF(32003)):
    """P_R^{omega_R} = P_A^{omega_R} (1 - xy P_A^M)^(-1) up to order N.

    Both sides are computed for the (-2) twist of omega_R, which shifts
    every internal degree of the identity by the same amount.  Over A,
    omega_R(-2) decomposes as omega_M(-1) (+) omega_A(-2)."""
    from .constructions import (
        build,
        roos_algebra,
        roos_dual_module,
        roos_module,
    )
    from .groebner import build_quotient

    R = build_quotient(build("roos-alpha", field=field, alpha=alpha))
    wR2 = canonical_module(R).shift(-2)
    lhs = PoincareTruncation.from_profile(_profile(wR2, N))

    A = roos_algebra(field)
    wA2 = canonical_module(A).shift(-2)
    wM1 = roos_dual_module(alpha, field, algebra=A)
    P_wR_over_A = PoincareTruncation.from_profile(_profile(direct_sum(wA2, wM1), N))
    P_M = PoincareTruncation.from_profile(
        _profile(roos_module(alpha, field, algebra=A), max(N - 1, 0))
    )
    rhs = P_wR_over_A.multiply(P_M.shift(1, 1).geometric_inverse())
    return lhs.equal(rhs)
