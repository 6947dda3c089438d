"""Command-line driver: family builders, analysis reports, idealization,
Koszul probing, and the frozen regression corpus.

Exit codes: 0 success, 2 user error, 3 infeasible size, 4 verification
failure.  Reports are JSON with sorted keys; every numeric value carries a
provenance tag (computed | formula | paper-regression).  Timings go to
stderr so reports stay byte-identical across runs.
"""

import argparse
import hashlib
import json
import sys
import time

from . import __version__
from .constructions import (
    build,
    ci_t_values,
    cm_hilbert,
    family_hash,
    family_strings,
    idealized_h_vector,
    inequality_witness,
)
from .errors import (
    BadParameterError,
    GorError,
    InfeasibleSizeError,
    NotArtinianError,
    NotLevelError,
    ParseError,
    VerificationError,
)
from .fields import Field, GF, QQ
from .groebner import build_quotient
from .polyring import Ideal, PolyRing, parse

EXIT_OK = 0
EXIT_USER = 2
EXIT_INFEASIBLE = 3
EXIT_VERIFY = 4


# ---------------------------------------------------------------- IdealFile

def ideal_to_text(ideal):
    ring = ideal.ring
    lines = ["vars: " + ", ".join(ring.names), "field: " + ring.field.spec_string()]
    lines += [str(g) for g in ideal.generators]
    return "\n".join(lines) + "\n"


def ideal_from_text(text):
    lines = [ln for ln in text.splitlines()]
    if len(lines) < 3 or not lines[0].startswith("vars:") or not lines[1].startswith("field:"):
        raise BadParameterError(
            "ideal file needs 'vars:' and 'field:' header lines plus generators"
        )
    names = [nm.strip() for nm in lines[0][len("vars:"):].split(",")]
    field = Field.parse(lines[1][len("field:"):].strip())
    ring = PolyRing(names, field)
    gens = [parse(ln, ring) for ln in lines[2:] if ln.strip()]
    for g in gens:
        if not g.is_homogeneous():
            raise BadParameterError(f"generator {g} is not homogeneous")
    return Ideal(ring, gens)


def content_hash(ideal):
    return hashlib.sha256(ideal_to_text(ideal).encode()).hexdigest()


# ----------------------------------------------------------------- helpers

_FAMILY_PARAMS = {"roos4": (), "stanley": (), "cm": ("m",), "roos-alpha": ("alpha",),
                  "ci": ("degrees",)}


def _family_kwargs(args):
    kw = {}
    if getattr(args, "m", None) is not None:
        kw["m"] = args.m
    if getattr(args, "alpha", None) is not None:
        kw["alpha"] = args.alpha
    if getattr(args, "degrees", None):
        kw["degrees"] = tuple(args.degrees)
    return kw


def _resolve_input(name, field):
    """An analyze target: a path to an ideal file, or a family shorthand
    like roos4, cm-m3, roos-alpha-2, stanley, ci-3-2-2."""
    import os

    if os.path.exists(name):
        with open(name, encoding="utf-8") as fh:
            return ideal_from_text(fh.read())
    if name == "roos4" or name == "stanley":
        return build(name, field=field)
    if name.startswith("cm-m"):
        return build("cm", field=field, m=int(name[4:]))
    if name.startswith("roos-alpha-"):
        return build("roos-alpha", field=field, alpha=int(name[11:]))
    if name.startswith("ci-"):
        return build("ci", field=field, degrees=tuple(int(x) for x in name[3:].split("-")))
    raise BadParameterError(f"no such file or family shorthand: {name}")


def tagged(value, provenance="computed"):
    return {"provenance": provenance, "value": value}


def betti_as_list(B):
    return [
        {"i": i, "j": j, "value": v}
        for (i, j), v in sorted(B.beta.items())
        if v
    ]


def emit(report, path=None):
    text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def base_report(ideal):
    return {
        "engine": {"name": "gor", "version": __version__},
        "field": ideal.ring.field.spec_string(),
        "vars": list(ideal.ring.names),
        "generators": [str(g) for g in ideal.generators],
        "content_hash": content_hash(ideal),
    }


# ------------------------------------------------------------- subcommands

def cmd_build(args):
    field = Field.parse(args.field)
    ideal = build(args.family, field=field, **_family_kwargs(args))
    text = ideal_to_text(ideal)
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        # round-trip check: reading the file back reproduces it bit-exactly
        with open(args.out, encoding="utf-8") as fh:
            if ideal_to_text(ideal_from_text(fh.read())) != text:
                raise VerificationError("ideal file does not round-trip")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_analyze(args):
    from .artinian import (
        is_superlevel,
        lefschetz_check,
        type_and_level,
        unimodality,
    )
    from .homology import (
        betti_over_S,
        regularity,
        subadditivity_report,
        t_values,
    )

    field = Field.parse(args.field)
    ideal = _resolve_input(args.input, field)
    t0 = time.time()
    R = build_quotient(ideal)
    report = base_report(ideal)
    report["hilbert_function"] = tagged(R.hilbert_function())
    report["h_vector"] = tagged(list(R.h_vector()))
    ty, level = type_and_level(R)
    report["type"] = tagged(ty)
    report["level"] = tagged(level)
    report["gorenstein"] = tagged(ty == 1)
    uni, viol = unimodality(R.h_vector())
    report["unimodal"] = tagged(uni)
    if not uni:
        report["non_unimodality_index"] = tagged(viol)
    if args.superlevel or args.idealize:
        report["superlevel"] = tagged(is_superlevel(R))
    if args.betti or args.subadditivity:
        B = betti_over_S(R, max_i=args.max_betti_step)
        report["betti"] = tagged(betti_as_list(B))
        if B.complete:
            report["regularity"] = tagged(regularity(B))
        ts = t_values(B)
        report["t_values"] = tagged({str(k): v for k, v in ts.items()})
        if args.subadditivity:
            report["subadditivity_violations"] = tagged(
                [list(p) for p in subadditivity_report(ts)]
            )
    if args.idealize:
        from .idealization import idealize, verify_idealization

        res = idealize(R)
        checks = verify_idealization(res)
        report["idealization"] = tagged(
            {
                "vars": list(res.ring.names),
                "h_vector": list(res.model.h_vector()),
                "quadratic": res.is_quadratic(),
                "generators": len(res.ideal.generators),
                "checks_ok": checks["all_ok"],
            }
        )
        if args.koszul_steps:
            report["koszul_idealization"] = tagged(
                _koszul_section(res.model, args.koszul_steps, args.degree_cap)
            )
    if args.koszul_steps and not args.idealize:
        report["koszul"] = tagged(_koszul_section(R, args.koszul_steps, args.degree_cap))
    if args.lefschetz:
        report["lefschetz"] = tagged(
            lefschetz_check(R, mode=args.lefschetz, seed=args.seed)
        )
        report["seed"] = tagged(args.seed)
    print(f"analyze: {time.time() - t0:.2f}s", file=sys.stderr)
    emit(report, args.json)
    return EXIT_OK


def _koszul_section(R, steps, degree_cap):
    from .homology import linear_steps, resolve_k_over_R

    prof = resolve_k_over_R(R, steps, degree_cap)
    return {
        "steps_computed": len(prof.steps) - 1,
        "degree_cap": prof.cap,
        "linear_steps": linear_steps(prof),
        "graded_betti": [
            {"i": i, "j": j, "value": v}
            for i in range(len(prof.steps))
            for j, v in sorted(prof.graded(i).items())
        ],
    }


def cmd_idealize(args):
    from .idealization import idealize, verify_idealization

    field = Field.parse(args.field)
    ideal = _resolve_input(args.input, field)
    R = build_quotient(ideal)
    res = idealize(R)
    if args.out:
        text = ideal_to_text(res.ideal)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    checks = verify_idealization(res)
    report = base_report(ideal)
    report["idealization"] = tagged(
        {
            "vars": list(res.ring.names),
            "generators": [str(g) for g in res.ideal.generators],
            "tags": list(res.tags),
            "bigraded": [list(b) for b in res.bigraded],
            "h_vector": list(res.model.h_vector()),
            "quadratic": res.is_quadratic(),
            "content_hash": content_hash(res.ideal),
        }
    )
    report["checks"] = tagged(_jsonable(checks))
    emit(report, args.json)
    return EXIT_OK if checks["all_ok"] else EXIT_VERIFY


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    return str(obj)


def cmd_koszul(args):
    field = Field.parse(args.field)
    ideal = _resolve_input(args.input, field)
    R = build_quotient(ideal)
    report = base_report(ideal)
    report["koszul"] = tagged(_koszul_section(R, args.steps, args.degree_cap))
    emit(report, args.json)
    return EXIT_OK


def cmd_family(args):
    kw = _family_kwargs(args)
    names, gens = family_strings(args.family, **kw)
    report = {
        "engine": {"name": "gor", "version": __version__},
        "family": args.family,
        "parameters": _jsonable(kw),
        "vars": names,
        "generators": gens,
        "content_hash": family_hash(args.family, **kw),
    }
    if args.family == "cm" and args.m is not None:
        report["hilbert_formula"] = tagged(
            [cm_hilbert(args.m, i) for i in range(args.m + 2)], "formula"
        )
        report["idealized_h_vector"] = tagged(
            list(idealized_h_vector(args.m)), "formula"
        )
        if args.m >= 7:
            report["inequality_witness"] = tagged(
                _jsonable(inequality_witness(args.m)), "formula"
            )
    if args.family == "ci" and args.degrees:
        report["t_values"] = tagged(list(ci_t_values(tuple(args.degrees))), "formula")
    emit(report, args.json)
    return EXIT_OK


# ------------------------------------------------------------------ corpus

def _corpus_sec3_betti():
    from .homology import betti_over_S, regularity

    R = build_quotient(build("roos4", field=GF(32003)))
    B = betti_over_S(R)
    want = {(0, 0): 1, (1, 2): 6, (2, 3): 4, (2, 4): 9, (3, 5): 12, (4, 6): 4}
    assert B.beta == want, B.beta
    assert regularity(B) == 2


def _corpus_sec3_type():
    from .artinian import is_superlevel, type_and_level

    R = build_quotient(build("roos4", field=GF(32003)))
    ty, level = type_and_level(R)
    assert (ty, level) == (4, True)
    assert R.ring.n + ty == 8
    assert is_superlevel(R)


def _corpus_sec3_idealization():
    from .idealization import idealize, verify_idealization

    R = build_quotient(build("roos4", field=GF(32003)))
    res = idealize(R)
    assert res.model.hilbert == [1, 8, 8, 1]
    assert res.is_quadratic()
    assert verify_idealization(res)["all_ok"]


def _corpus_cm2():
    from .homology import betti_over_S, t_values

    R = build_quotient(build("cm", field=GF(32003), m=2))
    assert R.hilbert == [cm_hilbert(2, i) for i in range(3)]
    B = betti_over_S(R)
    ts = t_values(B)
    assert ts[1] == 2 and ts[2] == 4


def _corpus_cm3_t2():
    from .homology import betti_over_S, t_values

    R = build_quotient(build("cm", field=GF(32003), m=3))
    B = betti_over_S(R)
    ts = t_values(B)
    assert ts[1] == 2 and ts[2] == 5


def _corpus_formulas():
    assert idealized_h_vector(7) == (1, 1444, 2092, 1988, 1820, 1988, 2092, 1444, 1)
    assert idealized_hilbert_pair(8) == (6732, 7191)
    assert idealized_hilbert_pair(9) == (24054, 25346)
    for m in range(7, 65):
        assert inequality_witness(m)["passes"]


def idealized_hilbert_pair(m):
    from .constructions import idealized_hilbert

    return idealized_hilbert(m, 3), idealized_hilbert(m, 2)


def _corpus_stanley():
    from .idealization import idealize
    from .polyring import monomials_of_degree

    ring = PolyRing(["x", "y", "z"], GF(32003))
    R = build_quotient(Ideal(ring, [ring.monomial(u) for u in monomials_of_degree(3, 4)]))
    res = idealize(R)
    assert res.model.hilbert == [1, 13, 12, 13, 1]
    assert not res.is_quadratic()


def _corpus_ci():
    from .homology import betti_over_S, t_values

    for degs in ((2, 2, 2), (3, 2, 2)):
        R = build_quotient(build("ci", field=GF(32003), degrees=degs))
        got = t_values(betti_over_S(R))
        want = ci_t_values(degs)
        assert tuple(got[i] for i in range(1, len(degs) + 1)) == want


def _corpus_char_independence():
    from .homology import betti_over_S

    for name, kw in (("roos4", {}), ("cm", {"m": 2}), ("ci", {"degrees": (2, 2, 2)})):
        Bq = betti_over_S(build_quotient(build(name, field=QQ, **kw)))
        Bp = betti_over_S(build_quotient(build(name, field=GF(32003), **kw)))
        assert Bq.beta == Bp.beta, name


CORPUS = [
    ("sec3-betti-table", _corpus_sec3_betti),
    ("sec3-type-level", _corpus_sec3_type),
    ("sec3-idealization", _corpus_sec3_idealization),
    ("cm-m2", _corpus_cm2),
    ("cm-m3-t2", _corpus_cm3_t2),
    ("formula-suite", _corpus_formulas),
    ("stanley-footnote", _corpus_stanley),
    ("ci-t-values", _corpus_ci),
    ("char-independence", _corpus_char_independence),
]


def _run_corpus_entry(name):
    fn = dict(CORPUS)[name]
    t0 = time.time()
    try:
        fn()
        return name, True, "", time.time() - t0
    except Exception as exc:  # report, do not crash the pool
        return name, False, f"{type(exc).__name__}: {exc}", time.time() - t0


def cmd_reproduce(args):
    names = [name for name, _ in CORPUS]
    if args.jobs and args.jobs > 1:
        from multiprocessing import Pool

        with Pool(args.jobs) as pool:
            results = pool.map(_run_corpus_entry, names)
    else:
        results = [_run_corpus_entry(name) for name in names]
    ok = True
    lines = []
    for name, passed, msg, dt in results:
        status = "PASS" if passed else "FAIL"
        ok = ok and passed
        lines.append({"entry": name, "status": status, "detail": msg})
        print(f"{status} {name} ({dt:.1f}s)" + (f": {msg}" if msg else ""))
    if args.json:
        emit({"engine": {"name": "gor", "version": __version__},
              "results": lines, "all_pass": ok}, args.json)
    return EXIT_OK if ok else EXIT_VERIFY


# -------------------------------------------------------------------- main

def make_parser():
    p = argparse.ArgumentParser(prog="gor", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, field=True):
        if field:
            sp.add_argument("--field", default="fp:32003", help="q or fp:<p>")
        sp.add_argument("--json", default=None, help="write the JSON report here")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--degree-cap", dest="degree_cap", type=int, default=None)

    def family_params(sp):
        sp.add_argument("--m", type=int, default=None)
        sp.add_argument("--alpha", type=int, default=None)
        sp.add_argument("--degrees", type=int, nargs="*", default=None)

    sp = sub.add_parser("build", help="write a family's ideal file")
    sp.add_argument("--family", required=True)
    family_params(sp)
    sp.add_argument("--out", default="-")
    common(sp)
    sp.set_defaults(fn=cmd_build)

    sp = sub.add_parser("analyze", help="report on an ideal file or family shorthand")
    sp.add_argument("input")
    sp.add_argument("--betti", action="store_true")
    sp.add_argument("--max-betti-step", type=int, default=None)
    sp.add_argument("--subadditivity", action="store_true")
    sp.add_argument("--superlevel", action="store_true")
    sp.add_argument("--idealize", action="store_true")
    sp.add_argument("--koszul-steps", dest="koszul_steps", type=int, default=None)
    sp.add_argument("--lefschetz", choices=["weak", "strong"], default=None)
    common(sp)
    sp.set_defaults(fn=cmd_analyze)

    sp = sub.add_parser("idealize", help="idealize a level algebra")
    sp.add_argument("input")
    sp.add_argument("--out", default=None)
    common(sp)
    sp.set_defaults(fn=cmd_idealize)

    sp = sub.add_parser("koszul", help="probe linearity of the resolution of k")
    sp.add_argument("input")
    sp.add_argument("--steps", type=int, default=3)
    common(sp)
    sp.set_defaults(fn=cmd_koszul)

    sp = sub.add_parser("family", help="print a family's frozen data and formulas")
    sp.add_argument("--family", required=True)
    family_params(sp)
    common(sp, field=False)
    sp.set_defaults(fn=cmd_family)

    sp = sub.add_parser("reproduce", help="run the frozen regression corpus")
    common(sp)
    sp.set_defaults(fn=cmd_reproduce)

    return p


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except (BadParameterError, ParseError, NotArtinianError, NotLevelError,
            FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER
    except InfeasibleSizeError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (VerificationError, AssertionError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
