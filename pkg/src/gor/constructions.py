"""Example families of Artinian quotients, with the closed-form values
used as independent oracles.

Families:
  roos4       six quadrics in k[u,x,y,z] (type 4, superlevel, non-Koszul)
  cm          squares of 2m variables plus the square of their sum
  roos-alpha  thirteen quadrics in k[u,v,w,x,y,z] depending on alpha >= 2
  stanley     k[x,y,z] modulo all monomials of degree 4
  ci          x_i^(d_i) for a list of degrees

The generator strings are frozen fixtures: each family's canonical text is
hashed and the hashes are pinned in the regression tests.
"""

import hashlib
from fractions import Fraction

from .artinian import FiniteGradedModule, unimodality
from .errors import BadParameterError, VerificationError
from .fields import QQ, binomial, truncate_nonneg
from .groebner import build_quotient
from .polyring import Ideal, PolyRing, monomials_of_degree, parse

ROOS4_VARS = ["u", "x", "y", "z"]
ROOS4_GENS = ["x^2+y*z+u^2", "x*u", "x^2+x*y", "x*z+y*u", "z*u+u^2", "y^2+z^2"]

ROOS_ALPHA_VARS = ["u", "v", "w", "x", "y", "z"]

ROOS_A_VARS = ["x", "y", "v", "w"]
ROOS_A_GENS = ["x^2", "x*y", "y^2", "v^2", "v*w", "w^2"]


def family_strings(family, m=None, alpha=None, degrees=None):
    """Canonical (variable names, generator strings) for a family."""
    if family == "roos4":
        return list(ROOS4_VARS), list(ROOS4_GENS)
    if family == "cm":
        if m is None or m < 2:
            raise BadParameterError("cm family needs m >= 2")
        names = [f"x{i}" for i in range(1, 2 * m + 1)]
        gens = [f"{nm}^2" for nm in names]
        gens.append("(" + "+".join(names) + ")^2")
        return names, gens
    if family == "roos-alpha":
        if alpha is None or alpha < 2:
            raise BadParameterError("roos-alpha family needs alpha >= 2")
        gens = ["x^2", "x*y", "y^2", "y*z", "z^2", "z*u", "u^2", "u*v",
                "v^2", "v*w", "w^2",
                f"x*z+{alpha}*z*w-u*w",
                f"z*w+x*u+{alpha - 2}*u*w"]
        return list(ROOS_ALPHA_VARS), gens
    if family == "stanley":
        ring = PolyRing(["x", "y", "z"], QQ)
        return ["x", "y", "z"], [ring.mono_str(u) for u in monomials_of_degree(3, 4)]
    if family == "ci":
        if not degrees or any(d < 1 for d in degrees):
            raise BadParameterError("ci family needs positive degrees")
        names = [f"x{i}" for i in range(1, len(degrees) + 1)]
        return names, [f"{nm}^{d}" if d > 1 else nm for nm, d in zip(names, degrees)]
    raise BadParameterError(f"unknown family {family!r}")


def family_text(family, m=None, alpha=None, degrees=None, field=QQ):
    names, gens = family_strings(family, m=m, alpha=alpha, degrees=degrees)
    lines = ["vars: " + ", ".join(names), "field: " + field.spec_string()]
    return "\n".join(lines + gens) + "\n"


def family_hash(family, m=None, alpha=None, degrees=None):
    names, gens = family_strings(family, m=m, alpha=alpha, degrees=degrees)
    text = "vars: " + ", ".join(names) + "\n" + "\n".join(gens) + "\n"
    return hashlib.sha256(text.encode()).hexdigest()


def build(family, field=QQ, m=None, alpha=None, degrees=None):
    """The family's defining ideal over the requested field."""
    if family == "cm" and field.p is not None and field.p <= 2 * m + 1:
        raise BadParameterError(
            f"cm family with m={m} needs characteristic 0 or p > {2 * m + 1}"
        )
    names, gens = family_strings(family, m=m, alpha=alpha, degrees=degrees)
    ring = PolyRing(names, field)
    return Ideal(ring, [parse(s, ring) for s in gens])


def cm_hilbert(m, i):
    """binom(2m, i) - binom(2m, i-2), the Hilbert function of the cm ring."""
    if m < 2 or i < 0:
        raise BadParameterError("cm_hilbert needs m >= 2 and i >= 0")
    return truncate_nonneg(binomial(2 * m, i) - binomial(2 * m, i - 2))


def idealized_hilbert(m, i):
    """Hilbert function of the idealization of the cm ring.

    HF(i) = [C(2m,i) - C(2m,i-2)] + [C(2m,m-i+1) - C(2m,m-i-1)]."""
    if m < 2:
        raise BadParameterError("idealized_hilbert needs m >= 2")
    dual = binomial(2 * m, m - i + 1) - binomial(2 * m, m - i - 1)
    return cm_hilbert(m, i) + dual


def idealized_h_vector(m):
    return tuple(idealized_hilbert(m, i) for i in range(m + 2))


def ci_t_values(degrees):
    """Maximal syzygy degrees of a monomial complete intersection: prefix
    sums of the descending-sorted degree list (t_0 = 0 omitted)."""
    ds = sorted(degrees, reverse=True)
    if any(d < 1 for d in ds) or not ds:
        raise BadParameterError("ci_t_values needs positive degrees")
    out = []
    s = 0
    for d in ds:
        s += d
        out.append(s)
    return tuple(out)


def inequality_witness(m):
    """Exact certificate that the idealized cm Hilbert function dips.

    The h-vector rises to a peak at i = 2, then strictly exceeds its
    middle value, which the palindromic tail climbs back out of; that dip
    is the non-unimodality witness for every m >= 7 (both parities).  All
    comparisons are exact big-integer arithmetic."""
    if m < 7:
        raise BadParameterError("the dip certificate needs m >= 7")
    hv = idealized_h_vector(m)
    mid = (m + 1) // 2
    peak = hv[2]
    dip = hv[mid]
    uni, _ = unimodality(hv)
    passes = peak > dip and hv[m - 1] > dip and not uni
    return {
        "m": m,
        "peak_index": 2,
        "dip_index": mid,
        "peak": peak,
        "dip": dip,
        "ratio": Fraction(peak, dip),
        "ratio_first_to_middle": Fraction(hv[1], hv[m // 2]),
        "non_unimodal": not uni,
        "passes": passes,
    }


# the module M over A = k[x,y]/(x,y)^2 (x) k[v,w]/(v,w)^2, from the action
# table: entry (e_i, f_j) is the linear form carrying e_i to f_j
def _roos_table(alpha, F):
    a = F.from_int(alpha)
    one = F.one
    z = F.zero
    neg = F.neg
    # rows f1..f4, columns e1, e2; one matrix per variable of ROOS_A_VARS
    return {
        "x": [[z, z], [z, neg(one)], [one, z], [z, z]],
        "y": [[z, z], [z, z], [z, z], [z, one]],
        "v": [[one, z], [z, z], [z, z], [z, z]],
        "w": [[z, z], [one, F.sub(a, F.from_int(2))], [a, one], [z, z]],
    }


def roos_algebra(field=QQ):
    """A = k[x,y,v,w]/((x,y)^2 + (v,w)^2), Hilbert function (1,4,4)."""
    ring = PolyRing(ROOS_A_VARS, field)
    A = build_quotient(Ideal(ring, [parse(s, ring) for s in ROOS_A_GENS]))
    assert A.hilbert == [1, 4, 4]
    return A


def roos_module(alpha, field=QQ, algebra=None):
    """The A-module M with HS_M = 2 + 4t and the pinned action table."""
    if alpha < 2:
        raise BadParameterError("roos_module needs alpha >= 2")
    A = algebra if algebra is not None else roos_algebra(field)
    be = A.backend
    table = _roos_table(alpha, field)
    actions = []
    for nm in ROOS_A_VARS:
        T = be.zeros(4, 2)
        for i in range(4):
            for j in range(2):
                T[i, j] = be.to_scalar(table[nm][i][j])
        actions.append([T])
    labels = {0: ["e1", "e2"], 1: ["f1", "f2", "f3", "f4"]}
    M = FiniteGradedModule(A, 0, [2, 4], actions, labels=labels)
    M.verify_actions()
    return M


def roos_dual_module(alpha, field=QQ, algebra=None):
    """omega_M(-1), the graded dual of M, by transposing the actions."""
    M = roos_module(alpha, field, algebra=algebra)
    actions = [[M.actions[v][0].T.copy()] for v in range(4)]
    labels = {0: ["f1*", "f2*", "f3*", "f4*"], 1: ["e1*", "e2*"]}
    N = FiniteGradedModule(M.algebra, 0, [4, 2], actions, labels=labels)
    N.verify_actions()
    return N


def roos_dual_table_matches(alpha, field=QQ):
    """The dual module's actions against an independent transcription of
    the dual action table (v f1* = e1* and so on: same entries, read
    columnwise)."""
    N = roos_dual_module(alpha, field)
    table = _roos_table(alpha, field)
    be = N.backend
    for v, nm in enumerate(ROOS_A_VARS):
        D = N.actions[v][0]  # 2 x 4: columns f_j*, rows e_i*
        for i in range(2):
            for j in range(4):
                if D[i, j] != be.to_scalar(table[nm][j][i]):
                    return False
    return True


def reconstruct_R_from_idealization(alpha, field=QQ):
    """Rebuild R = A |x M(-1) by structure constants and compare it with
    S/I(alpha): Hilbert functions and minimal quadric counts must agree."""
    from .idealization import extension_model

    A = roos_algebra(field)
    M = roos_module(alpha, field, algebra=A)
    N = M.shift(-1)  # components in degrees 1, 2
    big = PolyRing(ROOS_A_VARS + ["e1", "e2"], field)
    model = extension_model(A, N, big, 2)
    model.verify_tables()

    I = build("roos-alpha", field=field, alpha=alpha)
    R = build_quotient(I)
    quadrics_presented = sum(1 for g in I.generators if g.degree() == 2)
    # with no linear forms in the ideal, the minimal quadric count is
    # determined by the Hilbert function: C(n+1, 2) - HF(2)
    n = len(ROOS_ALPHA_VARS)
    quadrics_model = binomial(n + 1, 2) - model.hf(2)
    report = {
        "alpha": alpha,
        "hf_model": model.hilbert_function(),
        "hf_presented": R.hilbert_function(),
        "quadrics_presented": quadrics_presented,
        "quadrics_model": quadrics_model,
        "ok": model.hilbert == R.hilbert == [1, 6, 8]
        and quadrics_presented == quadrics_model == 13,
    }
    if not report["ok"]:
        raise VerificationError(f"idealization reconstruction mismatch: {report}")
    return report
