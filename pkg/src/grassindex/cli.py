"""Command-line entry point: ``grassindex <verb> [options]``.

Exit codes: 0 success, 1 a verification suite found a mismatch, 2 invalid input.
Results go to stdout (JSON by default, or CSV); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
import warnings
from pathlib import Path

import numpy as np

from .geometry import FUNCTIONALS, ConvexBody
from .grassmann import GrassmannRing, dual_classes, e2_table, graded_dimension
from .index import (
    closed_form_power,
    index_power,
    two_adic,
    verify_prop_relations,
    verify_t_vanishing,
)
from .solver import SolverConfig, solve_equal_shadows, solve_inertia_split, solve_sections
from .wreath import (
    WreathContext,
    multiply,
    naive_product,
    random_element,
    tensor_expand,
    wreath_sw_component,
)

DEFAULT_SEED = 20240611
SUITES = ("thm1", "thm2", "prop-calculus", "cor-vanishing", "wreath-oracle")
DEFAULT_N_LIST = {
    "thm1": [2, 4, 6],
    "thm2": [1, 2, 3, 4, 5, 6],
    "prop-calculus": [2, 4, 6],
    "cor-vanishing": [2, 4, 6, 8],
    "wreath-oracle": [1, 2, 3, 4],
}


class InputError(ValueError):
    """Bad user input; reported with exit code 2."""


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _positive(name: str, value: int | None) -> int:
    if value is None:
        raise InputError(f"--{name} is required")
    if value < 1:
        raise InputError(f"--{name} must be >= 1, got {value}")
    return value


def _n_list(text: str | None, suite: str) -> list[int]:
    if text is None:
        return list(DEFAULT_N_LIST[suite])
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"--n-list must be comma-separated integers, got {text!r}") from None
    if not values or min(values) < 1:
        raise InputError("--n-list needs positive integers")
    return values


def _load_json(path: str | None, flag: str) -> dict:
    if path is None:
        raise InputError(f"--{flag} is required")
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as err:
        raise InputError(f"cannot read --{flag} {path}: {err}") from None


def _functionals(text: str) -> list[str]:
    sel = [s.strip() for s in text.split(",") if s.strip()]
    bad = [s for s in sel if s not in FUNCTIONALS]
    if not sel or bad:
        raise InputError(f"--functionals must be drawn from {','.join(FUNCTIONALS)}")
    return sel


def _solver_config(args) -> SolverConfig:
    try:
        return SolverConfig(starts=args.starts, tol=args.tol, seed=args.seed)
    except ValueError as err:
        raise InputError(str(err)) from None


# -- verbs --------------------------------------------------------------------


def cmd_index(args):
    n = _positive("n", args.n)
    cert = index_power(n, args.variant == "oriented")
    data = cert.to_json()
    rows = [{"degree": d["degree"], "basis_size": d["basis_size"], "ideal_rank": d["ideal_rank"]} for d in data["slice_dims"]]
    return data, rows or [{k: v for k, v in data.items() if k != "slice_dims"}], 0


def cmd_sw_classes(args):
    n = _positive("n", args.n)
    ctx = WreathContext(n, args.variant == "oriented")
    degrees = [args.k] if args.k is not None else range(1, 2 * n + 1)
    classes = []
    for k in degrees:
        if not 0 <= k <= 2 * n:
            raise InputError(f"--k must lie in 0..{2 * n}")
        classes.append({"degree": k, "class": str(wreath_sw_component(ctx, k))})
    return {"n": n, "variant": args.variant, "classes": classes}, classes, 0


def cmd_dual_classes(args):
    n, k = _positive("n", args.n), _positive("k", args.k)
    duals = [{"degree": j, "class": str(p)} for j, p in enumerate(dual_classes(n, k), start=1)]
    return {"n": n, "k": k, "dual_classes": duals}, duals, 0


def cmd_ring_dims(args):
    n, k = _positive("n", args.n), _positive("k", args.k)
    ring = GrassmannRing(n, k)
    if args.degree is not None:
        if args.degree < 0:
            raise InputError("--degree must be >= 0")
        degrees = [args.degree]
    else:
        top = n * k if args.max_degree is None else args.max_degree
        if top < 0:
            raise InputError("--max-degree must be >= 0")
        degrees = list(range(top + 1))
    rows = [{"degree": j, "dimension": graded_dimension(ring, j)} for j in degrees]
    return {"n": n, "k": k, "dims": [r["dimension"] for r in rows], "degrees": degrees}, rows, 0


def cmd_e2_table(args):
    n = _positive("n", args.n)
    columns = 4 if args.max_degree is None else args.max_degree + 1
    if columns < 1:
        raise InputError("--max-degree must be >= 0")
    table = e2_table(n, columns)
    rows = [{"row": j, **{f"col{i}": v for i, v in enumerate(r)}} for j, r in enumerate(table)]
    return {"n": n, "columns": columns, "rows": table}, rows, 0


def _suite_cases(args):
    suite = args.suite
    ns = _n_list(args.n_list, suite)
    variants = [args.variant] if args.variant else None
    if suite in ("thm1", "thm2"):
        oriented = suite == "thm1"
        for n in ns:
            cert = index_power(n, oriented)
            expected = closed_form_power(n, oriented)
            ok = cert.s == expected and (cert.closed_form_only or (cert.witness_in and cert.witness_out is not False))
            note = " (closed form only)" if cert.closed_form_only else ""
            yield {"case": f"n={n} {cert.variant}", "expected": expected, "got": cert.s, "pass": bool(ok)}, note
    elif suite == "prop-calculus":
        for n in ns:
            if n % 2:
                raise InputError("prop-calculus needs even n")
            a, _ = two_adic(n)
            for variant in variants or ["unoriented", "oriented"]:
                for k in range(1, 2 ** (a + 1)):
                    ok = verify_prop_relations(n, variant == "oriented", k)
                    yield {"case": f"n={n} {variant} k={k}", "pass": ok}, ""
    elif suite == "cor-vanishing":
        for n in ns:
            if n % 2:
                raise InputError("cor-vanishing needs even n")
            for variant in variants or ["unoriented", "oriented"]:
                ok = verify_t_vanishing(n, variant == "oriented")
                yield {"case": f"n={n} {variant}", "pass": ok}, ""
    else:
        rng = np.random.default_rng(args.seed)
        pairs = 100
        for n in ns:
            for variant in variants or ["unoriented"]:
                ctx = WreathContext(n, variant == "oriented")
                bad = 0
                for _ in range(pairs):
                    d1, d2 = (int(v) for v in rng.integers(0, 6, size=2))
                    x, y = random_element(ctx, d1, rng), random_element(ctx, d2, rng)
                    if tensor_expand(multiply(x, y)) != naive_product(tensor_expand(x), tensor_expand(y)):
                        bad += 1
                yield {"case": f"n={n} {variant} pairs={pairs}", "mismatches": bad, "pass": bad == 0}, ""


def cmd_verify(args):
    cases = []
    for case, note in _suite_cases(args):
        _err(f"{'PASS' if case['pass'] else 'FAIL'} {args.suite} {case['case']}{note}")
        cases.append(case)
    passed = sum(c["pass"] for c in cases)
    failed = len(cases) - passed
    _err(f"{args.suite}: {passed}/{len(cases)} passed")
    data = {"suite": args.suite, "passed": passed, "failed": failed, "cases": cases}
    return data, cases, 0 if failed == 0 else 1


def _load_body(args) -> ConvexBody:
    data = _load_json(args.body, "body")
    try:
        body = ConvexBody.from_json(data)
    except (KeyError, TypeError, ValueError) as err:
        raise InputError(f"invalid body: {err}") from None
    if body.dimension != 4:
        raise InputError("bodies must live in R^4")
    return body


def _solver_output(result, args):
    if not result.converged:
        _err(f"warning: no start reached residual < {args.tol:g} (best {result.residual:.3e})")
    data = result.to_json()
    rows = [
        {"functional": k, "value_V": result.values_V[k], "value_Vperp": result.values_Vperp[k]}
        for k in result.names
    ]
    return data, rows, 0


def cmd_shadow_solve(args):
    body = _load_body(args)
    return _solver_output(solve_equal_shadows(body, _functionals(args.functionals), _solver_config(args)), args)


def cmd_shadow_sections(args):
    body = _load_body(args)
    try:
        result = solve_sections(body, _functionals(args.functionals), _solver_config(args))
    except ValueError as err:
        raise InputError(str(err)) from None
    return _solver_output(result, args)


def cmd_inertia(args):
    data = _load_json(args.points, "points")
    try:
        pts = np.asarray(data["points"], dtype=float)
        dim = int(data["dimension"])
    except (KeyError, TypeError, ValueError) as err:
        raise InputError(f"invalid points file: {err}") from None
    if dim != 4 or pts.ndim != 2 or pts.shape[1] != 4 or len(pts) == 0:
        raise InputError("points must be a nonempty list of vectors in R^4")
    return _solver_output(solve_inertia_split(pts, _solver_config(args)), args)


COMMANDS = {
    "index": cmd_index,
    "sw-classes": cmd_sw_classes,
    "dual-classes": cmd_dual_classes,
    "ring-dims": cmd_ring_dims,
    "e2-table": cmd_e2_table,
    "verify": cmd_verify,
    "shadow-solve": cmd_shadow_solve,
    "shadow-sections": cmd_shadow_sections,
    "inertia": cmd_inertia,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grassindex", description="Z/2 index of G_n(R^2n) and equal-shadow solvers.")
    p.add_argument("verb", choices=list(COMMANDS))
    p.add_argument("--n", type=int)
    p.add_argument("--variant", choices=["oriented", "unoriented"])
    p.add_argument("--k", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--n-list")
    p.add_argument("--suite", choices=SUITES)
    p.add_argument("--body")
    p.add_argument("--points")
    p.add_argument("--functionals", default=",".join(FUNCTIONALS))
    p.add_argument("--starts", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    return p


def _to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    fields: list[str] = []
    for r in rows:
        fields += [k for k in r if k not in fields]
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    return buf.getvalue()


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.verb == "verify" and args.suite is None:
        _err("error: verify needs --suite")
        return 2
    if args.verb in ("index", "sw-classes") and args.variant is None:
        args.variant = "unoriented"
    if args.verb in ("verify", "shadow-solve", "shadow-sections", "inertia"):
        _err(f"seed: {args.seed}")
    start = time.perf_counter()
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            data, rows, code = COMMANDS[args.verb](args)
    except InputError as err:
        _err(f"error: {err}")
        return 2
    except ValueError as err:
        _err(f"error: {err}")
        return 2
    # one write at the end so output never interleaves
    sys.stdout.write(json.dumps(data, indent=2) + "\n" if args.format == "json" else _to_csv(rows))
    sys.stdout.flush()
    _err(f"done in {time.perf_counter() - start:.2f}s")
    return code


def main() -> None:
    sys.exit(run())
