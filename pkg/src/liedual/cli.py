"""Batch front end.

    liedual [--format human|machine] [--input PATH] [--seed S] COMMAND ...

Commands: validate, cohomology, duality [--twist], group, lt,
signs [--max-dim D], prop38 [--dim D --trials T --seed S].

Input documents are JSON with 1-based indices and rationals as strings.
Exit codes: 0 ok, 1 computed but not ok, 2 parse error, 3 validation
error, 4 hypothesis gate, 5 internal error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import __version__
from .ce import build_ce, cohomology, euler_characteristic
from .corpus import random_invertible
from .duality import (
    NotUnimodularError,
    check_invariants_to_coinvariants,
    coinvariants,
    equivariance_discrepancy,
    invariants,
    verify_complex_duality,
)
from .linalg import Matrix, det
from .lie import (
    AutomorphismPair,
    FiniteGroupRep,
    LieAlgebra,
    Representation,
    ValidationError,
    adjoint_rep,
    is_unimodular,
    trace_ad,
    trivial_rep,
    validate_algebra,
    validate_automorphism_pair,
    validate_group,
    validate_rep,
)
from .lubin_tate import (
    LaurentPoly,
    LTContext,
    TruncatedSeries,
    bracket_a,
    bracket_pi,
    formal_group_law,
    gauss_norm,
    herr_complex,
    interval_norm,
    psi,
    psi_dec,
    psi_exact_degree,
)
from .signs import check_star_naturality, complement, lex_basis, sign, star_matrix

EXIT_OK, EXIT_NOT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_GATE, EXIT_INTERNAL = 0, 1, 2, 3, 4, 5


class ParseError(ValueError):
    pass


class GateError(ValueError):
    pass


def _frac(x, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"{where}: expected an integer or a rational string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"{where}: malformed rational {x!r} ({exc})") from None


def _matrix(rows, where: str, shape: tuple[int, int] | None = None) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError(f"{where}: expected a list of rows")
    grid = [[_frac(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]
    cols = len(grid[0]) if grid else (shape[1] if shape else 0)
    try:
        m = Matrix(grid, cols=cols)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None
    if shape and m.shape != shape:
        raise ParseError(f"{where}: expected shape {shape}, got {m.shape}")
    return m


@dataclass
class ProblemDocument:
    algebra: LieAlgebra | None = None
    module: Representation | None = None
    module_kind: str = "explicit"
    pairs: list = field(default_factory=list)
    groups: list = field(default_factory=list)
    lt: dict | None = None
    task: str | None = None


def parse_document(doc: Any) -> ProblemDocument:
    if not isinstance(doc, dict):
        raise ParseError("document root must be an object")
    out = ProblemDocument(task=doc.get("task"))
    if "lie_algebra" in doc:
        la = doc["lie_algebra"]
        dim = la.get("dim")
        if not isinstance(dim, int) or dim < 0:
            raise ParseError("lie_algebra.dim: expected a non-negative integer")
        brackets: dict = {}
        for n, b in enumerate(la.get("brackets", [])):
            where = f"lie_algebra.brackets[{n}]"
            try:
                i, j, k = int(b["i"]), int(b["j"]), int(b["k"])
            except (KeyError, TypeError, ValueError):
                raise ParseError(f"{where}: needs integer fields i, j, k") from None
            if not (1 <= i <= dim and 1 <= j <= dim and 1 <= k <= dim):
                raise ParseError(f"{where}: index out of range 1..{dim}")
            if i == j:
                raise ParseError(f"{where}: i and j must differ")
            if i > j:
                raise ParseError(f"{where}: give brackets with i < j")
            c = _frac(b.get("c", "1"), f"{where}.c")
            entry = brackets.setdefault((i, j), {})
            entry[k] = entry.get(k, 0) + c
        out.algebra = LieAlgebra(dim, brackets, name=la.get("name", ""))
    if "module" in doc:
        if out.algebra is None:
            raise ParseError("module given without lie_algebra")
        md = doc["module"]
        kind = md.get("kind", "explicit" if "action" in md else "trivial")
        out.module_kind = kind
        if kind == "adjoint":
            out.module = adjoint_rep(out.algebra)
        elif kind == "trivial":
            out.module = trivial_rep(out.algebra, int(md.get("dim", 1)))
        elif kind == "explicit":
            dim = md.get("dim")
            if not isinstance(dim, int) or dim < 0:
                raise ParseError("module.dim: expected a non-negative integer")
            action = md.get("action", [])
            if len(action) != out.algebra.dim:
                raise ParseError(f"module.action: expected {out.algebra.dim} matrices")
            mats = tuple(_matrix(a, f"module.action[{n}]", (dim, dim)) for n, a in enumerate(action))
            out.module = Representation(out.algebra, dim, mats)
        else:
            raise ParseError(f"module.kind: unknown kind {kind!r}")
    if "group" in doc:
        gd = doc["group"]
        for n, p in enumerate(gd.get("pairs", [])):
            where = f"group.pairs[{n}]"
            out.pairs.append(
                AutomorphismPair(
                    _matrix(p.get("alg_map"), f"{where}.alg_map"),
                    _matrix(p.get("mod_map"), f"{where}.mod_map"),
                    p.get("name", f"pair{n + 1}"),
                )
            )
        for n, g in enumerate(gd.get("finite", [])):
            where = f"group.finite[{n}]"
            dim = g.get("dim")
            if not isinstance(dim, int) or dim < 0:
                raise ParseError(f"{where}.dim: expected a non-negative integer")
            elems = tuple(_matrix(e, f"{where}.elements[{a}]", (dim, dim)) for a, e in enumerate(g.get("elements", [])))
            out.groups.append(FiniteGroupRep(dim, elems, g.get("name", f"group{n + 1}")))
    if "lt" in doc:
        ld = doc["lt"]
        try:
            p = int(ld["p"])
        except (KeyError, TypeError, ValueError):
            raise ParseError("lt.p: required integer") from None
        lt_section = {
            "p": p,
            "q": int(ld.get("q", p)),
            "pi": _frac(ld.get("pi", p), "lt.pi"),
            "N": int(ld.get("N", 8)),
            "u": _frac(ld.get("u", 1), "lt.u"),
            "polys": [],
            "radii": [_frac(t, f"lt.radii[{n}]") for n, t in enumerate(ld.get("radii", []))],
            "interval": [_frac(t, f"lt.interval[{n}]") for n, t in enumerate(ld.get("interval", []))],
        }
        for n, poly in enumerate(ld.get("polys", [])):
            coeffs = tuple(_frac(c, f"lt.polys[{n}].coeffs[{a}]") for a, c in enumerate(poly.get("coeffs", [])))
            lt_section["polys"].append(LaurentPoly(int(poly.get("lo", 0)), coeffs, p))
        if lt_section["interval"] and len(lt_section["interval"]) != 2:
            raise ParseError("lt.interval: expected [r, s]")
        out.lt = lt_section
    return out


def serialize_document(d: ProblemDocument) -> dict:
    """Canonical form; serialize(parse(x)) is a fixed point of the pair."""
    out: dict = {}
    if d.task:
        out["task"] = d.task
    if d.algebra is not None:
        out["lie_algebra"] = d.algebra.serialize()
        if d.algebra.name:
            out["lie_algebra"]["name"] = d.algebra.name
    if d.module is not None:
        if d.module_kind == "adjoint":
            out["module"] = {"kind": "adjoint"}
        elif d.module_kind == "trivial":
            out["module"] = {"kind": "trivial", "dim": d.module.dim}
        else:
            out["module"] = {"kind": "explicit", **d.module.serialize()}
    if d.pairs or d.groups:
        out["group"] = {
            "pairs": [{"name": p.name, **p.serialize()} for p in d.pairs],
            "finite": [{"name": g.name, **g.serialize()} for g in d.groups],
        }
    if d.lt is not None:
        lt = d.lt
        out["lt"] = {
            "p": lt["p"],
            "q": lt["q"],
            "pi": str(lt["pi"]),
            "N": lt["N"],
            "u": str(lt["u"]),
            "polys": [{"lo": f.lo, "coeffs": [str(c) for c in f.coeffs]} for f in lt["polys"]],
            "radii": [str(t) for t in lt["radii"]],
            "interval": [str(t) for t in lt["interval"]],
        }
    return out


def _need(d: ProblemDocument, *what: str) -> None:
    for w in what:
        if w == "algebra" and d.algebra is None:
            raise ParseError("document has no lie_algebra section")
        if w == "module" and d.module is None:
            raise ParseError("document has no module section")
        if w == "lt" and d.lt is None:
            raise ParseError("document has no lt section")
        if w == "group" and not (d.pairs or d.groups):
            raise ParseError("document has no group section")


def _viol(vs) -> list:
    return [v.serialize() for v in vs]


def _require_valid(d: ProblemDocument) -> None:
    if d.algebra is not None:
        bad = validate_algebra(d.algebra)
        if bad:
            raise ValidationError("Jacobi identity fails", _viol(bad))
    if d.module is not None:
        bad = validate_rep(d.module)
        if bad:
            raise ValidationError("module is not a representation", _viol(bad))


def cmd_validate(d: ProblemDocument, args=None) -> dict:
    checks = {}
    if d.algebra is not None:
        checks["jacobi"] = _viol(validate_algebra(d.algebra))
    if d.module is not None:
        checks["representation"] = _viol(validate_rep(d.module))
    if d.pairs:
        if d.module is None:
            raise ParseError("automorphism pairs need a module section")
        checks["automorphism_pairs"] = {p.name: _viol(validate_automorphism_pair(d.module, p)) for p in d.pairs}
    if d.groups:
        checks["groups"] = {g.name: _viol(validate_group(g)) for g in d.groups}

    def clean(v):
        if isinstance(v, dict):
            return all(clean(x) for x in v.values())
        return not v

    return {"ok": clean(checks), "results": checks}


def cmd_cohomology(d: ProblemDocument, args=None) -> dict:
    _need(d, "algebra", "module")
    _require_valid(d)
    c = build_ce(d.module)
    h = cohomology(c)
    results = {
        "dims": list(h.dims),
        "euler_characteristic": euler_characteristic(h),
        "euler_characteristic_spaces": euler_characteristic(c),
        "trace_ad": [str(t) for t in trace_ad(d.algebra)],
        "unimodular": is_unimodular(d.algebra),
    }
    if args is not None and getattr(args, "representatives", False):
        results["representatives"] = [r.serialize() for r in h.representatives]
    return {"ok": results["euler_characteristic"] == results["euler_characteristic_spaces"], "results": results}


def cmd_duality(d: ProblemDocument, args=None) -> dict:
    _need(d, "algebra", "module")
    _require_valid(d)
    use_twist = bool(args is not None and getattr(args, "twist", False))
    try:
        rep = verify_complex_duality(d.module, use_twist)
    except NotUnimodularError as exc:
        raise GateError(str(exc)) from None
    results = rep.serialize()
    results["dims_dual"] = [x.dim_dual for x in rep.degrees]
    results["dims_primal_reversed"] = [x.dim_primal for x in rep.degrees]
    results["dims_primal"] = results["dims_primal_reversed"][::-1]
    return {"ok": rep.ok, "results": results}


def cmd_group(d: ProblemDocument, args=None) -> dict:
    _need(d, "group")
    results: dict = {"finite": [], "pairs": []}
    ok = True
    for g in d.groups:
        bad = validate_group(g)
        if bad:
            raise ValidationError(f"group {g.name!r} is not closed", _viol(bad))
        inv = invariants(g)
        dim_co, _ = coinvariants(g)
        iso = check_invariants_to_coinvariants(g)
        ok &= iso
        results["finite"].append(
            {"name": g.name, "order": len(g.elements), "invariants_dim": inv.cols, "coinvariants_dim": dim_co, "composite_iso": iso}
        )
    if d.pairs:
        _need(d, "module")
        _require_valid(d)
    for p in d.pairs:
        bad = validate_automorphism_pair(d.module, p)
        if bad:
            raise ValidationError(f"pair {p.name!r} invalid", _viol(bad))
        exact, factor = equivariance_discrepancy(d.module, p)
        dA = det(p.alg_map)
        if dA == 1:
            ok &= exact
        results["pairs"].append(
            {
                "name": p.name,
                "det_alg_map": str(dA),
                "equivariant": exact,
                "factor": None if factor is None else str(factor),
                "expected_to_hold": dA == 1,
            }
        )
    return {"ok": ok, "results": results}


def cmd_lt(d: ProblemDocument, args=None) -> dict:
    _need(d, "lt")
    lt = d.lt
    try:
        ctx = LTContext(lt["p"], lt["q"], lt["pi"], lt["N"])
        u = lt["u"]
        bu = bracket_a(ctx, u)
        herr = herr_complex(ctx, u)
    except ValueError as exc:
        raise ValidationError(str(exc), []) from None
    F = formal_group_law(ctx)
    hd = cohomology(herr).dims
    psi_table = []
    for j in range(ctx.N):
        mono = TruncatedSeries.monomial(ctx, j)
        psi_table.append({"j": j, "psi_dec": [str(c) for c in psi_dec(ctx, mono).coeffs], "psi": [str(c) for c in psi(ctx, mono).coeffs]})
    norms = []
    for f in lt["polys"]:
        entry = {"poly": f.serialize(), "gauss": {str(t): str(gauss_norm(f, t)) for t in lt["radii"]}}
        if lt["interval"]:
            r, s = lt["interval"]
            entry["interval"] = str(interval_norm(f, r, s))
        norms.append(entry)
    results = {
        "context": ctx.serialize(),
        "bracket_pi": bracket_pi(ctx).serialize()["coeffs"],
        "bracket_u": {"u": str(u), "coeffs": bu.serialize()["coeffs"]},
        "formal_group_law": F.serialize()["terms"],
        "psi_exact_degree": psi_exact_degree(ctx),
        "psi_table": psi_table,
        "herr": {"dims": list(hd), "note": "single generator [u] in place of Gamma"},
        "norms": norms,
    }
    return {"ok": hd[0] == 1, "results": results}


def cmd_signs(d, args) -> dict:
    max_d = args.max_dim
    literal_failures = []
    product_ok = True
    starstar_ok = True
    total = 0
    for dd in range(max_d + 1):
        for k in range(dd + 1):
            for phi in lex_basis(dd, k):
                total += 1
                prod = sign(phi) * sign(complement(phi))
                if prod != (-1) ** (k * (dd - k)):
                    literal_failures.append({"d": dd, "k": k, "phi": list(phi.values)})
                if prod != (-1) ** (dd * (dd + 1) // 2):
                    product_ok = False
            ss = star_matrix(dd, dd - k) @ star_matrix(dd, k)
            if ss != Matrix.identity(ss.rows).scale((-1) ** (dd * (dd + 1) // 2)):
                starstar_ok = False
    results = {
        "injections_checked": total,
        "sgn_product_equals_(-1)^(k(d-k))_failures": len(literal_failures),
        "first_failures": literal_failures[:10],
        "sgn_product_equals_(-1)^(d(d+1)/2)": product_ok,
        "star_star_equals_(-1)^(d(d+1)/2)": starstar_ok,
    }
    return {"ok": not literal_failures, "results": results}


def cmd_star_naturality(d, args) -> dict:
    rng = random.Random(args.seed)
    dim = args.dim
    failures = []
    for t in range(args.trials):
        a = random_invertible(rng, dim)
        for k in range(dim + 1):
            if not check_star_naturality(a, k):
                failures.append({"trial": t, "k": k, "matrix": a.serialize()})
    results = {"dim": dim, "trials": args.trials, "seed": args.seed, "failures": failures}
    return {"ok": not failures, "results": results}


COMMANDS = {
    "validate": cmd_validate,
    "cohomology": cmd_cohomology,
    "duality": cmd_duality,
    "group": cmd_group,
    "lt": cmd_lt,
    "signs": cmd_signs,
    "prop38": cmd_star_naturality,
}
NEEDS_DOC = {"validate", "cohomology", "duality", "group", "lt"}


def build_parser() -> argparse.ArgumentParser:
    # global options are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "machine"], default=argparse.SUPPRESS)
    common.add_argument("--input", default=argparse.SUPPRESS, help="problem document (JSON); '-' for stdin")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    ap = argparse.ArgumentParser(prog="liedual", description=__doc__.splitlines()[0], parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common])
    c = sub.add_parser("cohomology", parents=[common])
    c.add_argument("--representatives", action="store_true")
    du = sub.add_parser("duality", parents=[common])
    du.add_argument("--twist", action="store_true")
    sub.add_parser("group", parents=[common])
    sub.add_parser("lt", parents=[common])
    s = sub.add_parser("signs", parents=[common])
    s.add_argument("--max-dim", type=int, default=8)
    p = sub.add_parser("prop38", parents=[common])
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--trials", type=int, default=20)
    return ap


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    args = build_parser().parse_args(argv)
    for name, default in (("format", "human"), ("input", None), ("seed", 0)):
        if not hasattr(args, name):
            setattr(args, name, default)
    return args


def _load(path: str | None) -> Any:
    if path is None:
        raise ParseError("this command needs --input")
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    return execute(parse_args(argv))


def execute(args: argparse.Namespace) -> tuple[int, dict]:
    report: dict = {"task": args.command, "version": __version__}
    try:
        doc = parse_document(_load(args.input)) if args.command in NEEDS_DOC else None
        out = COMMANDS[args.command](doc, args)
        report.update(out)
        code = EXIT_OK if out["ok"] else EXIT_NOT_OK
    except ParseError as exc:
        report.update(ok=False, error={"kind": "parse", "message": str(exc)})
        code = EXIT_PARSE
    except OSError as exc:
        report.update(ok=False, error={"kind": "parse", "message": str(exc)})
        code = EXIT_PARSE
    except ValidationError as exc:
        report.update(ok=False, error={"kind": "validation", "message": str(exc).split(":")[0], "violations": exc.violations})
        code = EXIT_VALIDATION
    except GateError as exc:
        report.update(ok=False, error={"kind": "hypothesis", "message": str(exc)})
        code = EXIT_GATE
    except Exception as exc:  # noqa: BLE001
        report.update(ok=False, error={"kind": "internal", "message": f"{type(exc).__name__}: {exc}"})
        code = EXIT_INTERNAL
    return code, report


def _human(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, val in report.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_human(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(_human(item, indent + 1))
                lines.append(f"{pad}  --")
        else:
            lines.append(f"{pad}{key}: {json.dumps(val)}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    args = parse_args(argv)
    code, report = execute(args)
    if args.format == "machine":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(_human(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
