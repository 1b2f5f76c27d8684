"""Command-line driver: parameter grids, verification reports, goldens.

Exit codes: 0 = every check passed (or was skipped with a reason),
1 = at least one verification failed, 2 = configuration error.

Reports are deterministic: grids iterate l ascending, then m, then n, then
lambda; scalars serialize canonically; JSON is emitted with sorted keys.
Running the same configuration twice produces byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import blob, specht, tensor, towers, weightmod
from .scalars import (BlobParams, ParameterError, check_params, check_size,
                      context, _PARAM_MESSAGES)


def _parse_range(text):
    if ".." in text:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        values = list(range(lo, hi + 1))
    else:
        values = [int(text)]
    if any(n < 1 for n in values):
        raise ValueError("n must be positive")
    return values


def _parse_int_list(text):
    return [int(p) for p in text.split(",") if p != ""]


def _lambda_values(text, n):
    if text == "all":
        return weightmod.lambda_range(n)
    lam = int(text)
    if (lam + n) % 2 or abs(lam) > n:
        return []
    return [lam]


def _param_grid(args):
    """Yield (params, None) for valid points and (params, reason) for points
    skipped by validation, in the deterministic l, m, n order."""
    for l in sorted(args.l):
        for m in sorted(args.m):
            code = check_params(BlobParams(max(args.n), l, m))
            if code is not None:
                yield BlobParams(0, l, m), code
                continue
            if args.backend != "auto":
                actual = "generic" if l == 0 else "cyclotomic"
                if actual != args.backend:
                    yield BlobParams(0, l, m), f"backend_mismatch:{actual}"
                    continue
            for n in sorted(args.n):
                yield BlobParams(n, l, m), None


def _matrix_json(cols, basis, field):
    dim = len(basis)
    dense = []
    for col in cols:
        dense.append([field.serialize(col[i]) if i in col
                      else field.serialize(field.zero) for i in range(dim)])
    return {"basis": list(basis), "columns": dense,
            "convention": "columns are images"}


def _emit(args, report):
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_text(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _checks_to_records(checks):
    return [c.to_record() for c in checks]


def _skip_record(params, reason):
    message = _PARAM_MESSAGES.get(reason, reason)
    return {"l": params.l, "m": params.m, "reason": reason,
            "message": message}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_verify_relations(args):
    results, skipped = [], []
    ok = True
    for params, skip in _param_grid(args):
        if skip:
            skipped.append(_skip_record(params, skip))
            print(f"skip l={params.l} m={params.m}: {skip}", file=sys.stderr)
            continue
        check_size(params.n, params.backend)
        checks = tensor.verify_ariki_koike(params.n, params)
        checks += tensor.verify_blob_identity(params.n, params)
        checks += blob.verify_blob_relations(params.n, params)
        checks += blob.verify_ideal_generators(params.n, params)
        for j in (1, 2):
            for p in range(1, params.n + 1):
                checks += tensor.verify_partial_rotation_fixing(
                    j, p, params.n, params)
        point_ok = all(c.ok for c in checks)
        ok = ok and point_ok
        results.append({"n": params.n, "l": params.l, "m": params.m,
                        "backend": params.backend,
                        "checks": _checks_to_records(checks),
                        "all_ok": point_ok})
    return {"command": "verify-relations", "results": results,
            "skipped": skipped, "ok": ok}, ok


def cmd_adjointness(args):
    results, skipped = [], []
    ok = True
    dual_records = []
    for params, skip in _param_grid(args):
        if skip:
            skipped.append(_skip_record(params, skip))
            print(f"skip l={params.l} m={params.m}: {skip}", file=sys.stderr)
            continue
        check_size(params.n, params.backend)
        n = params.n
        for lam in _lambda_values(args.lam, n):
            if abs(lam) == n:
                continue
            primal = weightmod.adjointness_record(n, lam, params)
            dual = specht.dual_adjointness_check(n, lam, params)
            dual_records.append(dual)
            point_ok = (primal["four_way_agree"]
                        and primal["matches_expected"]
                        and primal["spans_agree"]
                        and primal["quotient_scalars_match"]
                        and (primal["surjective"] or primal["codim"] == 1)
                        and dual["dual_tests_agree"])
            ok = ok and point_ok
            results.append({"primal": primal, "dual": dual,
                            "all_ok": point_ok})
    rule, tallies = specht.resolve_dual_criterion(dual_records) \
        if dual_records else (None, {})
    summary = {
        "points": len(results),
        "primal_verdict_equals_n2_neq_m": all(
            r["primal"]["matches_expected"] for r in results),
        "dual_consistent_rule": rule,
        "dual_rule_tallies": tallies,
    }
    if dual_records:
        ok = ok and rule is not None
    return {"command": "adjointness", "results": results,
            "skipped": skipped, "summary": summary, "ok": ok}, ok


def cmd_localize(args):
    results, skipped = [], []
    ok = True
    for params, skip in _param_grid(args):
        if skip:
            skipped.append(_skip_record(params, skip))
            print(f"skip l={params.l} m={params.m}: {skip}", file=sys.stderr)
            continue
        check_size(params.n, params.backend)
        n = params.n
        for lam in _lambda_values(args.lam, n):
            if abs(lam) == n:
                module = weightmod.weight_module(params, lam)
                loc = weightmod.localize(module)
                point_ok = loc.dim_e == 0
                rec = {"n": n, "l": params.l, "m": params.m, "lambda": lam,
                       "dim_e": loc.dim_e, "localizes_to_zero": point_ok,
                       "ok": point_ok}
            else:
                res = weightmod.underline_map(n, lam, params)
                point_ok = res.ok
                rec = dict(res.to_record(), l=params.l, m=params.m)
            ok = ok and point_ok
            results.append(rec)
    return {"command": "localize", "results": results,
            "skipped": skipped, "ok": ok}, ok


def cmd_restrict(args):
    results, skipped = [], []
    ok = True
    for params, skip in _param_grid(args):
        if skip:
            skipped.append(_skip_record(params, skip))
            print(f"skip l={params.l} m={params.m}: {skip}", file=sys.stderr)
            continue
        check_size(params.n, params.backend)
        n = params.n
        for lam in _lambda_values(args.lam, n):
            rec = {"n": n, "l": params.l, "m": params.m, "lambda": lam}
            point_ok = True
            central = towers.verify_central_z(n, lam, params)
            rec["central"] = central.to_record()
            point_ok = point_ok and central.ok
            if abs(lam) != n:
                seq = towers.restriction_sequence(n, lam, params)
                rec["restriction"] = seq.to_record()
                point_ok = point_ok and seq.ok
                if n >= 3:
                    split = towers.splitting_check(n, lam, params)
                    rec["splitting"] = split.to_record(params)
                    if not split.wall:
                        point_ok = point_ok and split.split is True
            rec["ok"] = point_ok
            ok = ok and point_ok
            results.append(rec)
    return {"command": "restrict", "results": results,
            "skipped": skipped, "ok": ok}, ok


def cmd_triangle(args):
    n_max = max(args.n)
    table = towers.x_multiplicity_table(n_max)
    checks = towers.verify_triangle(n_max)
    ok = all(c.ok for c in checks)
    if args.format == "csv":
        lines = [",".join(str(v) for v in table[n])
                 for n in range(1, n_max + 1)]
        _emit_text(args, "\n".join(lines) + "\n")
        return None, ok
    report = {"command": "triangle",
              "rows": {str(n): table[n] for n in range(1, n_max + 1)},
              "lambda_columns": {str(n): weightmod.lambda_range(n)
                                 for n in range(1, n_max + 1)},
              "checks": _checks_to_records(checks),
              "ok": ok}
    return report, ok


def cmd_duality(args):
    results, skipped = [], []
    ok = True
    for params, skip in _param_grid(args):
        if skip:
            skipped.append(_skip_record(params, skip))
            print(f"skip l={params.l} m={params.m}: {skip}", file=sys.stderr)
            continue
        check_size(params.n, params.backend)
        n = params.n
        for n1 in range(0, n + 1):
            n2 = n - n1
            checks = specht.verify_phi_intertwines(n1, n2, params)
            checks += specht.verify_S_prime_relations(n1, n2, params)
            checks += specht.verify_gi_quadratic_on_bitableaux(
                specht.col_shape(n1, n2), params)
            checks += specht.xi_word_eigenvalue_checks(n1, n2, params)
            checks += specht.xi_bitableau_eigenvalue_checks(n1, n2, params)
            checks += specht.verify_dualize_properties(n1, n2, params)
            point_ok = all(c.ok for c in checks)
            ok = ok and point_ok
            results.append({"n": n, "l": params.l, "m": params.m,
                            "n1": n1, "n2": n2,
                            "checks": _checks_to_records(checks),
                            "all_ok": point_ok})
    return {"command": "duality", "results": results,
            "skipped": skipped, "ok": ok}, ok


def cmd_smallcase(args):
    results, skipped = [], []
    ok = True
    for l in sorted(args.l):
        for m in sorted(args.m):
            params = BlobParams(2, l, m)
            code = check_params(params)
            if code is not None:
                skipped.append(_skip_record(params, code))
                print(f"skip l={l} m={m}: {code}", file=sys.stderr)
                continue
            checks, computed, golden = towers.verify_smallcase_matrices(
                params)
            field = context(params).field
            point_ok = all(c.ok for c in checks)
            ok = ok and point_ok
            results.append({
                "l": l, "m": m,
                "checks": _checks_to_records(checks),
                "computed": {k: _matrix_json(v, ["12", "21"], field)
                             for k, v in sorted(computed.items())},
                "golden": {k: _matrix_json(v, ["12", "21"], field)
                           for k, v in sorted(golden.items())},
                "all_ok": point_ok})
    return {"command": "smallcase", "results": results,
            "skipped": skipped, "ok": ok}, ok


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _add_common(sub, lam=False, needs_n=True):
    if needs_n:
        sub.add_argument("--n", type=_parse_range, default=[4],
                         help="n or range like 2..6")
    if lam:
        sub.add_argument("--lambda", dest="lam", default="all",
                         help="a single weight or 'all'")
    sub.add_argument("--l", type=_parse_int_list, default=[0],
                     help="comma list of l values (0 = generic)")
    sub.add_argument("--m", type=_parse_int_list, default=[2],
                     help="comma list of m values")
    sub.add_argument("--backend", choices=["auto", "generic", "cyclotomic"],
                     default="auto")
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    sub.add_argument("--format", choices=["json", "csv"], default="json")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="blobtensor",
        description="Exact verification suite for the rank-two tensor "
                    "representation of the type-B Hecke algebra and its "
                    "blob-algebra quotient.")
    subs = parser.add_subparsers(dest="command", required=True)
    for name, fn, lam in (
            ("verify-relations", cmd_verify_relations, False),
            ("adjointness", cmd_adjointness, True),
            ("localize", cmd_localize, True),
            ("restrict", cmd_restrict, True),
            ("duality", cmd_duality, False),
            ("smallcase", cmd_smallcase, False)):
        sub = subs.add_parser(name)
        _add_common(sub, lam=lam, needs_n=name != "smallcase")
        sub.set_defaults(fn=fn)
    tri = subs.add_parser("triangle")
    tri.add_argument("--n", type=_parse_range, default=[4])
    tri.add_argument("--out", default=None)
    tri.add_argument("--format", choices=["json", "csv"], default="csv")
    tri.set_defaults(fn=cmd_triangle)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if getattr(args, "format", "json") == "csv" and \
            args.command != "triangle":
        print("csv output is only defined for the triangle command",
              file=sys.stderr)
        return 2
    try:
        report, ok = args.fn(args)
    except ParameterError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    if report is not None:
        _emit(args, report)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
