"""Command-line front end.

Every subcommand prints one JSON certificate on stdout and a short summary on
stderr.  Exit status: 0 when every verdict holds, 1 when some verdict fails,
2 on usage or resource-guard errors.
"""
from __future__ import annotations

import argparse
import itertools
import json
import re
import sys

import numpy as np

from . import __version__, gf
from .ver4 import ResourceGuardError, UsageError, guard_scale, make_object

SCHEMA_VERSION = 1

# exhaustive classification beyond total dimension 3 takes many minutes
_CLASSIFY_DIM_LIMIT = 3


# ---------------------------------------------------------------------------
# argument helpers


def _field(args, default: str) -> gf.Field:
    return gf.field_by_name(args.field or default)


def _scalar(F: gf.Field, text: str) -> int:
    try:
        v = F.parse(text)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"cannot parse field element {text!r}: {exc}") from None
    if not F.contains(v):
        raise UsageError(f"{text!r} is not an element of {F.name}")
    return v


def _params(F: gf.Field, text: str | None) -> dict[str, int]:
    out: dict[str, int] = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"--params expects k=v pairs, got {item!r}")
        k, v = (s.strip() for s in item.split("=", 1))
        out[k] = _scalar(F, v)
    return out


_TERM = re.compile(r"^(\d*)\s*[*·x]?\s*(1|P)$")


def parse_object(text: str) -> tuple[int, int]:
    """'P', '1+P', '2*1+P', '2P', '3·1' -> (m, n)."""
    m = n = 0
    for term in text.replace(" ", "").split("+"):
        hit = _TERM.match(term)
        if not hit:
            raise UsageError(f"cannot parse object {text!r}")
        c = int(hit.group(1) or 1)
        if hit.group(2) == "1":
            m += c
        else:
            n += c
    return m, n


def _mn(args, default=(0, 1)) -> tuple[int, int]:
    m = default[0] if args.m is None else args.m
    n = default[1] if args.n is None else args.n
    make_object(m, n)  # validates
    return m, n


def _fmt_params(F: gf.Field, b: dict[str, int]) -> dict[str, str]:
    return {k: F.fmt(v) for k, v in sorted(b.items())}


# ---------------------------------------------------------------------------
# subcommands; each returns (parameters, verdicts, payload, field name)


def cmd_verify_tables(args):
    from .liealg import check_axioms
    from .registry import all_rows, bindings, canonical_table, row_spec, table_lookup

    fields = [gf.field_by_name(args.field)] if args.field else [gf.GF2, gf.get_field(2)]
    if args.row:
        if not args.table:
            raise UsageError("--row needs --table")
        specs = [row_spec(args.table, args.row)]
    elif args.table:
        tid = canonical_table(args.table)
        specs = [s for s in all_rows() if s.table == tid]
    else:
        specs = all_rows()
    verdicts: dict[str, bool] = {}
    instances = []
    for F in fields:
        for spec in specs:
            binds = [_params(F, args.params)] if args.params else list(bindings(spec, F))
            for b in binds:
                L = table_lookup(spec.table, spec.row, b, F)
                rep = check_axioms(L)
                verdicts[spec.row_id] = verdicts.get(spec.row_id, True) and rep.ok
                entry = {"row": spec.row_id, "field": F.name, "params": _fmt_params(F, b), "ok": rep.ok}
                if not rep.ok:
                    entry["report"] = rep.as_dict()
                instances.append(entry)
    payload = {
        "instances": instances,
        "instance_count": len(instances),
        "failing_rows": sorted(r for r, ok in verdicts.items() if not ok),
    }
    params = {"table": args.table, "row": args.row, "params": args.params}
    return params, verdicts, payload, "+".join(F.name for F in fields)


def cmd_classify(args):
    from .classify import classification_certificate, isomorphism_search, row_instances
    from .liealg import p_algebra

    F = _field(args, "gf2")
    m, n = _mn(args)
    if m + 2 * n > _CLASSIFY_DIM_LIMIT * max(guard_scale(), 1.0):
        raise ResourceGuardError(
            f"classification of total dimension {m + 2 * n} exceeds the limit {_CLASSIFY_DIM_LIMIT}; "
            "raise VERLIE_GUARD_SCALE to run it"
        )
    cert = classification_certificate(m, n, F)
    verdicts = {
        "every_orbit_matched": all(o["matches"] for o in cert["orbits"]),
        "no_unmatched_rows": not any("matches no orbit" in f for f in cert["flags"]),
        "intertwiners_found": all(
            mt["intertwiner"] is not None for o in cert["orbits"] for mt in o["matches"]
        ),
    }
    if F.k == 1:
        # rows with distinct ids must stay apart after extending scalars to GF(4)
        F4 = gf.get_field(2)
        insts = list(row_instances(m, n, F))
        clashes = []
        for (r1, b1, L1), (r2, b2, L2) in itertools.combinations(insts, 2):
            if r1 != r2 and isomorphism_search(L1, L2, F4) is not None:
                clashes.append([r1, _fmt_params(F, b1), r2, _fmt_params(F, b2)])
        cert["gf4_clashes"] = clashes
        verdicts["rows_distinct_over_gf4"] = not clashes
    if (m, n) == (0, 1):
        F4 = gf.get_field(2)
        phi = isomorphism_search(p_algebra("s", F4), p_algebra("n", F4), F4)
        verdicts["P_s_not_iso_P_n_over_gf4"] = phi is None
    return {"m": m, "n": n}, verdicts, cert, F.name


def cmd_koszul(args):
    from .koszul import compare_with_generic, verify_exactness

    F = _field(args, "gf2")
    if args.object:
        m, n = parse_object(args.object)
    else:
        m, n = _mn(args)
    X = make_object(m, n)
    top = 10 if args.max_degree is None else args.max_degree
    if (m, n) != (0, 1) or F.k != 1:
        limit = int(6 * max(guard_scale(), 1.0))
        if top > limit:
            raise ResourceGuardError(f"generic Koszul complex limited to total degree {limit}")
    rep = verify_exactness(X, top, F)
    verdicts = {
        "d_squared_zero": rep.d_squared_zero,
        "exact_in_positive_degrees": rep.exact_in_positive_degrees,
        "h0_is_one": rep.h0 == 1,
    }
    payload = {"exactness": rep.as_dict()}
    if (m, n) == (0, 1) and F.k == 1:
        cmp = compare_with_generic(min(top, 6))
        payload["generic_comparison"] = {"max_total": cmp["max_total"], "mismatches": [list(p) for p in cmp["mismatches"]]}
        verdicts["generic_agrees_with_explicit"] = cmp["agree"]
    return {"m": m, "n": n, "max_degree": top}, verdicts, payload, F.name


def _glp_center_generators(U):
    x, y, e, yp = (U.gen(g) for g in ("x", "y", "e", "y'"))
    one = U.one()
    gens = {
        "e": (e, 1),
        "x^2": (U.power(x, 2), 2),
        "y^4+y^2": (U.add(U.power(y, 4), U.power(y, 2)), 4),
        "(y^2+y)e": (U.multiply(U.add(U.power(y, 2), y), e), 3),
        "xy'(1-e)": (U.multiply(U.multiply(x, yp), U.add(one, e)), 2),
    }
    return gens


def cmd_center(args):
    from .forms import gl_uea
    from .uea import centralizer_basis, centralizer_dims, subalgebra_dims

    F = _field(args, "gf2")
    m, n = _mn(args)
    top = 6 if args.max_degree is None else args.max_degree
    U = gl_uea(m, n, F.k)
    cdims = centralizer_dims(U, top)
    payload = {"centralizer_dims": cdims}
    verdicts = {}
    if (m, n) == (0, 1):
        gens = _glp_center_generators(U)
        names = list(gens)
        sdims = subalgebra_dims(U, [gens[k][0] for k in names], [gens[k][1] for k in names], top)
        payload["generators"] = {k: U.fmt(gens[k][0]) for k in names}
        payload["generated_dims"] = sdims
        payload["generators_central"] = {k: U.is_central(gens[k][0]) for k in names}
        verdicts["generators_central"] = all(payload["generators_central"].values())
        verdicts["dims_agree"] = sdims == cdims
        if sdims != cdims:
            # lowest-degree central elements outside the generated algebra
            low = next(d for d in range(top + 1) if sdims[d] != cdims[d])
            payload["first_gap_degree"] = low
            payload["centralizer_basis_to_gap"] = [U.fmt(z) for z in centralizer_basis(U, low)]
    return {"m": m, "n": n, "max_degree": top}, verdicts, payload, F.name


def cmd_casimir(args):
    from .forms import (
        build_form,
        casimir,
        casimir_formula,
        check_form,
        gl_uea,
        nondegenerate_actual_rule,
        nondegenerate_expected,
    )

    F = _field(args, "gf4")
    m, n = _mn(args)
    lams = [_scalar(F, args.lam)] if args.lam is not None else list(F.elements())
    mus = [_scalar(F, args.mu)] if args.mu is not None else list(F.elements())
    U = gl_uea(m, n, F.k)
    verdicts = {"adjoint_invariant": True, "nondegeneracy_rule": True, "casimir_central": True, "casimir_formula": True}
    forms = []
    for lam, mu in itertools.product(lams, mus):
        B = build_form(m, n, lam, mu, F)
        chk = check_form(B)
        entry = {"lambda": F.fmt(lam), "mu": F.fmt(mu), "checks": chk}
        entry["nondegenerate_stated_rule"] = nondegenerate_expected(m, lam, mu)
        entry["nondegenerate_observed_rule"] = nondegenerate_actual_rule(m, n, lam, mu)
        verdicts["adjoint_invariant"] &= chk["adjoint_invariant"]
        verdicts["nondegeneracy_rule"] &= chk["nondegenerate"] == entry["nondegenerate_stated_rule"]
        if chk["nondegenerate"]:
            C = casimir(B)
            entry["casimir"] = U.fmt(C)
            entry["central"] = U.is_central(C)
            entry["matches_formula"] = C == casimir_formula(B)
            verdicts["casimir_central"] &= entry["central"]
            verdicts["casimir_formula"] &= entry["matches_formula"]
        forms.append(entry)
    params = {"m": m, "n": n, "lambda": args.lam, "mu": args.mu}
    return params, {k: bool(v) for k, v in verdicts.items()}, {"forms": forms}, F.name


def cmd_fourcenter(args):
    from .forms import ad4_identity_check, four_center_check

    F = _field(args, "gf2")
    m, n = _mn(args)
    claims = four_center_check(m, n, F.k)
    ad4 = ad4_identity_check(m, n, F.k)
    verdicts = {f"claim {c.label}": c.as_expected for c in claims}
    verdicts["ad4_identity"] = ad4["holds"]
    payload = {
        "claims": [
            {"label": c.label, "expected_central": c.expected_central, "central": c.central, "note": c.note}
            for c in claims
        ],
        "ad4": {k: v for k, v in ad4.items() if k != "holds"},
    }
    return {"m": m, "n": n}, verdicts, payload, F.name


def cmd_conjecture(args):
    from .forms import conjecture_solve, gl_algebra

    F = _field(args, "gf2")
    m, n = _mn(args)
    L = gl_algebra(m, n, F.k)
    labels = [args.element] if args.element else list(L.labels)
    bound = 4 if args.max_degree is None else args.max_degree
    verdicts, results = {}, {}
    for lab in labels:
        if lab not in L.labels:
            raise UsageError(f"unknown basis element {lab!r}; choose from {list(L.labels)}")
        res = conjecture_solve(L.vec(lab), m, n, bound, F.k)
        results[lab] = res.as_dict(F)
        verdicts[f"solvable {lab}"] = res.consistent
    return {"m": m, "n": n, "element": args.element, "max_degree": bound}, verdicts, {"solutions": results}, F.name


def _rule_domain(kind: int, F: gf.Field):
    els = list(F.elements())
    for a1, b1, a2, b2 in itertools.product(els, repeat=4):
        if kind == 2 and (a1 == 0 or a2 == 0):
            continue
        if kind in (3, 4) and a1 != 0:
            continue
        if kind == 5 and a1 == 0:
            continue
        yield (a1, b1), (a2, b2)


def cmd_reps(args):
    from . import repglp as R

    F = _field(args, "gf4")
    verdicts: dict[str, bool] = {}
    payload: dict = {}
    run_all = not (args.rule or args.restriction or args.simple)
    if args.simple or run_all:
        bad = []
        for eps, a, b in itertools.product((0, 1), F.elements(), F.elements()):
            M = R.make_simple(eps, a, b, F)
            if not (R.check_module(M) and R.is_simple_module(M)):
                bad.append(R.label_str((eps, a, b), F))
        verdicts["simples_ok"] = not bad
        payload["simple_failures"] = bad
    if args.rule or run_all:
        kinds = [args.rule] if args.rule else [1, 2, 3, 4, 5]
        pr = _params(F, args.params)
        for kind in kinds:
            if pr:
                try:
                    dom = [((pr["a1"], pr["b1"]), (pr["a2"], pr["b2"]))]
                except KeyError as exc:
                    raise UsageError(f"--params needs a1,b1,a2,b2 (missing {exc})") from None
            else:
                dom = list(_rule_domain(kind, F))
            fails = []
            counts = {"module_ok": 0, "factors_ok": 0, "split_ok": 0, "head_ok": 0}
            for p1, p2 in dom:
                r = R.tensor_rule(kind, p1, p2, F)
                for k in counts:
                    counts[k] += bool(r[k])
                if not all(r[k] for k in counts):
                    fails.append({"p1": [F.fmt(v) for v in p1], "p2": [F.fmt(v) for v in p2], **r})
            for k in counts:
                verdicts[f"rule {kind} {k}"] = counts[k] == len(dom)
            payload[f"rule {kind}"] = {"cases": len(dom), "passing": counts, "failures": fails}
    if args.restriction or run_all:
        names = [args.restriction] if args.restriction else sorted(R.RESTRICTION_LABELS)
        found = {}
        for name in names:
            M = R.glp_restrict(name, F)
            if name not in R.RESTRICTION_LABELS:
                raise UsageError(f"no expected label recorded for {name!r}")
            want = R.RESTRICTION_LABELS[name]
            got = R.identify_simple(M) if R.check_module(M) else None
            found[name] = {"expected": R.label_str(want, F), "found": None if got is None else R.label_str(got, F)}
            verdicts[f"restriction {name}"] = got == R.canonical_label(*want)
        payload["restrictions"] = found
    params = {"rule": args.rule, "restriction": args.restriction, "simple": args.simple, "params": args.params}
    return params, verdicts, payload, F.name


def _defect_example():
    from .liealg import BracketStructure

    X = make_object(2, 0)
    c = np.zeros((2, 2, 2), dtype=np.uint8)
    c[0, 0, 1] = 1  # [x, x] = y, y central
    return BracketStructure(gf.GF2, X, c, ("x", "y"), "2*1 with [x,x]=y")


def cmd_pbw(args):
    from .registry import all_rows, bindings, row_spec, table_lookup
    from .uea import pbw_check

    F = _field(args, "gf2")
    top = 4 if args.max_degree is None else args.max_degree
    if top > int(4 * max(guard_scale(), 1.0)):
        raise ResourceGuardError("PBW check limited to filtration degree 4")
    if args.row:
        if not args.table:
            raise UsageError("--row needs --table")
        spec = row_spec(args.table, args.row)
        binds = [_params(F, args.params)] if args.params else list(bindings(spec, F))
        jobs = [(spec, b) for b in binds]
    else:
        jobs = [(s, b) for s in all_rows() for b in bindings(s, F)]
    rows, defects = [], []
    for spec, b in jobs:
        rep = pbw_check(table_lookup(spec.table, spec.row, b, F), top)
        rows.append({"row": spec.row_id, "params": _fmt_params(F, b), **rep.as_dict()})
        if rep.defect:
            defects.append(spec.row_id)
    verdicts = {"rows_without_defect": not defects}
    payload = {"rows": rows, "defective_rows": sorted(set(defects))}
    if not args.row:
        ex = pbw_check(_defect_example(), top)
        payload["defect_example"] = ex.as_dict()
        first = next((k for k, (a, e) in enumerate(zip(ex.actual_dims, ex.expected_dims)) if a < e), None)
        payload["defect_example"]["first_defect_degree"] = first
        verdicts["defect_example_degree_1"] = first == 1
    return {"table": args.table, "row": args.row, "params": args.params, "max_degree": top}, verdicts, payload, F.name


COMMANDS = {
    "verify-tables": cmd_verify_tables,
    "classify": cmd_classify,
    "koszul": cmd_koszul,
    "center": cmd_center,
    "casimir": cmd_casimir,
    "fourcenter": cmd_fourcenter,
    "conjecture": cmd_conjecture,
    "reps": cmd_reps,
    "pbw": cmd_pbw,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="verlie",
        description="Exact Lie-theory checks in characteristic 2. Each command prints a JSON certificate.",
        epilog="Exit status: 0 all verdicts pass, 1 some verdict fails, 2 usage or resource error.",
    )
    p.add_argument("--version", action="version", version=f"verlie {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, *opts):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--field", choices=sorted(gf.FIELD_NAMES), default=None)
        sp.add_argument("--compact", action="store_true", help="single-line JSON")
        for o in opts:
            o(sp)
        return sp

    mn = lambda sp: (sp.add_argument("--m", type=int), sp.add_argument("--n", type=int))  # noqa: E731
    deg = lambda sp: sp.add_argument("--max-degree", type=int)  # noqa: E731
    row = lambda sp: (sp.add_argument("--table"), sp.add_argument("--row"), sp.add_argument("--params"))  # noqa: E731

    add("verify-tables", "check the axioms on registry rows", row)
    add("classify", "orbit classification matched to registry rows", mn)
    add("koszul", "Koszul complex homology", mn, deg, lambda sp: sp.add_argument("--object"))
    add("center", "centralizer dimensions in U(gl)", mn, deg)
    add(
        "casimir",
        "invariant forms and Casimir elements",
        mn,
        lambda sp: (sp.add_argument("--lambda", dest="lam"), sp.add_argument("--mu")),
    )
    add("fourcenter", "4-center claims and the ad^4 identity", mn)
    add("conjecture", "solve for degree-4 central polynomials", mn, deg, lambda sp: sp.add_argument("--element"))
    add(
        "reps",
        "gl(P) simple modules, tensor rules and restrictions",
        lambda sp: (
            sp.add_argument("--rule", type=int, choices=[1, 2, 3, 4, 5]),
            sp.add_argument("--restriction"),
            sp.add_argument("--simple", action="store_true"),
            sp.add_argument("--params"),
        ),
    )
    add("pbw", "PBW dimension check", row, deg)
    return p


def certificate(command: str, params: dict, verdicts: dict, payload, field: str) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "command": command,
        "parameters": params,
        "field": field,
        "verdicts": verdicts,
        "payload": payload,
    }


def _default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (set, tuple)):
        return list(o)
    raise TypeError(f"not serializable: {type(o).__name__}")


def dumps(cert: dict, compact: bool = False) -> str:
    if compact:
        return json.dumps(cert, sort_keys=True, default=_default, ensure_ascii=False, separators=(",", ":"))
    return json.dumps(cert, sort_keys=True, default=_default, ensure_ascii=False, indent=2)


def run(argv=None) -> tuple[int, dict | None]:
    args = build_parser().parse_args(argv)
    try:
        params, verdicts, payload, fname = COMMANDS[args.command](args)
    except (UsageError, ResourceGuardError) as exc:
        kind = "resource" if isinstance(exc, ResourceGuardError) else "usage"
        print(f"verlie {args.command}: {kind} error: {exc}", file=sys.stderr)
        return 2, None
    cert = certificate(args.command, params, verdicts, payload, fname)
    print(dumps(cert, args.compact))
    failed = sorted(k for k, v in verdicts.items() if not v)
    print(f"verlie {args.command}: {len(verdicts) - len(failed)}/{len(verdicts)} verdicts pass", file=sys.stderr)
    for k in failed:
        print(f"  FAIL {k}", file=sys.stderr)
    return (1 if failed else 0), cert


def main(argv=None) -> int:
    try:
        code, _ = run(argv)
    except SystemExit as exc:  # argparse
        return int(exc.code or 0)
    return code


if __name__ == "__main__":
    sys.exit(main())
