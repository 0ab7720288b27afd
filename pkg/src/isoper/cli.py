"""Command line front end: ``isoper <subcommand> ...``.

Every run writes one envelope (JSON, or TSV with one row per sample).  Exit
codes: 0 success, 2 budget exhausted (partial output is still written), 3
input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from importlib import resources

from . import __version__
from .errors import (
    BudgetExceeded,
    IsoperError,
    NotNullhomotopic,
    ParseError,
    UnknownName,
    UnknownSymbol,
)

EXIT_OK, EXIT_BUDGET, EXIT_INPUT = 0, 2, 3


class InputError(Exception):
    pass


# -- serialization ---------------------------------------------------------


def _plain(obj):
    """Convert to JSON-ready data: Fractions become "p/q" strings."""
    from .linalg import RationalMatrix
    from .words import Word

    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Word):
        return str(obj)
    if isinstance(obj, RationalMatrix):
        return [[str(x) for x in r] for r in obj.rows]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return str(obj)


def emit(envelope: dict, fmt: str = "json") -> bytes:
    """Canonical JSON (sorted keys) or TSV of ``envelope["rows"]``."""
    if fmt == "json":
        body = {k: v for k, v in envelope.items() if k not in ("columns", "rows")}
        return (json.dumps(_plain(body), sort_keys=True, indent=2) + "\n").encode()
    if fmt == "tsv":
        cols = envelope.get("columns") or []
        lines = ["\t".join(cols)]
        for row in envelope.get("rows") or []:
            cells = []
            for c in cols:
                v = _plain(row.get(c))
                cells.append("" if v is None else json.dumps(v) if isinstance(v, (list, dict)) else str(v))
            lines.append("\t".join(cells))
        return ("\n".join(lines) + "\n").encode()
    raise InputError(f"unknown format {fmt!r}")


# -- input helpers -----------------------------------------------------------


def load_presentation(spec):
    """A file path, a bundled file name (``z2.pres``) or a catalog name."""
    from .dehn import catalog_presentation, parse_presentation, parse_presentation_text

    if os.path.exists(spec):
        return parse_presentation(spec)
    name = os.path.basename(spec)
    data = resources.files("isoper") / "data" / name
    if data.is_file():
        return parse_presentation_text(data.read_text(encoding="utf-8"), os.path.splitext(name)[0])
    if not spec.endswith(".pres"):
        try:
            return catalog_presentation(spec)
        except UnknownName:
            pass
    raise InputError(f"no such presentation file: {spec}")


def _budget(args):
    from .dehn import SearchBudget

    try:
        return SearchBudget(
            max_count=args.max_count,
            max_conjugator_length=args.max_conjugator,
            max_intermediate_length=args.max_intermediate,
            max_states=args.max_states,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _parse_mem(text):
    units = {"k": 2**10, "m": 2**20, "g": 2**30, "t": 2**40}
    t = text.strip().lower().rstrip("b")
    if t and t[-1] in units:
        return int(float(t[:-1]) * units[t[-1]])
    return int(t)


def _apply_memory_cap():
    cap = os.environ.get("ISOPER_MAX_MEM")
    if not cap:
        return None
    try:
        limit = _parse_mem(cap)
    except ValueError:
        raise InputError(f"bad ISOPER_MAX_MEM value {cap!r}") from None
    try:
        import resource

        resource.setrlimit(resource.RLIMIT_AS, (limit, resource.RLIM_INFINITY))
    except (ImportError, ValueError, OSError):
        pass
    return limit


# -- subcommands ------------------------------------------------------------


def _chunks(items, k):
    return [items[i::k] for i in range(k)]


def _area_worker(payload):
    from .dehn import area_rows, parse_presentation_text

    text, name, words, budget, weighted = payload
    P = parse_presentation_text(text, name)
    return area_rows(P, words, budget, weighted)


def _rows_parallel(P, words, budget, weighted, threads):
    from .dehn import area_rows

    if threads <= 1 or len(words) < 2:
        return area_rows(P, words, budget, weighted)
    parts = _chunks(list(enumerate(words)), threads)
    jobs = [(P.format(), P.name, [w for _, w in part], budget, weighted) for part in parts]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(_area_worker, jobs))
    merged = {}
    for part, res in zip(parts, results):
        for (i, _), row in zip(part, res):
            merged[i] = row
    return [merged[i] for i in range(len(words))]


def cmd_area(args):
    from .dehn import AreaSearcher, weighted_area_search

    P = load_presentation(args.presentation)
    budget = _budget(args)
    searcher = AreaSearcher(P, budget)
    rows = []
    partial = False
    for text in args.words:
        try:
            y = P.alphabet.parse(text)
        except UnknownSymbol as exc:
            raise InputError(f"unknown symbol {exc}") from None
        if P.model is not None and not P.model.is_identity(P.model.evaluate_codes(y.codes)):
            raise NotNullhomotopic(f"{y} is not null")
        try:
            res = weighted_area_search(P, y, searcher=searcher) if args.weighted else searcher.search(y)
            rows.append({
                "word": str(y),
                "length": y.length(),
                "area": res.count,
                "weighted_cost": res.weighted_cost,
                "certified": res.certified,
                "expression": str(res.expression),
            })
        except BudgetExceeded as exc:
            partial = True
            rows.append({"word": str(y), "length": y.length(), "area": None, "weighted_cost": None,
                         "certified": False, "expression": None,
                         "lower_bound": exc.partial.get("lower_bound")})
    return {
        "results": rows,
        "rows": rows,
        "columns": ["word", "length", "area", "weighted_cost", "certified", "expression"],
        "certified": all(r["certified"] for r in rows),
        "partial": partial,
        "budget": budget.as_dict(),
        "input": {"presentation": P.format(), "words": [r["word"] for r in rows], "weighted": args.weighted},
    }


def cmd_dehn(args):
    from .dehn import aggregate_dehn, check_gersten_bound, null_words

    P = load_presentation(args.presentation)
    budget = _budget(args)
    if P.model is None:
        raise InputError("the presentation needs a [model] section for null-word enumeration")
    words = null_words(P, args.max_n)
    kinds = ["weighted"] if args.weighted else ["area"]
    if args.gersten:
        kinds = ["area", "weighted"]
    tables = {}
    for kind in kinds:
        per = _rows_parallel(P, words, budget, kind == "weighted", args.threads)
        tables[kind] = aggregate_dehn(per, args.max_n, P, kind == "weighted")
    rows = []
    for i in range(args.max_n + 1):
        row = {"n": i}
        for kind in kinds:
            s = tables[kind][i]
            key = "value" if kind == kinds[0] else "f_prime"
            row[key] = s.value
            row["witness" if kind == kinds[0] else "witness_prime"] = str(s.witness)
            row["certified"] = row.get("certified", True) and s.certified
            row["words_checked"] = s.words_checked
        rows.append(row)
    out = {
        "results": rows,
        "rows": rows,
        "columns": ["n", "value"] + (["f_prime"] if args.gersten else []) + ["certified", "witness", "words_checked"],
        "certified": all(r["certified"] for r in rows),
        "partial": not all(r["certified"] for r in rows),
        "budget": budget.as_dict(),
        "input": {"presentation": P.format(), "max_n": args.max_n, "weighted": args.weighted,
                  "gersten": args.gersten},
    }
    if args.gersten:
        certified_rows = [(r["n"], r["value"], r["f_prime"]) for r in rows if r["certified"]]
        out["gersten"] = [
            {"n": g.n, "f": g.f, "f_prime": g.f_prime, "bound": g.bound, "slack": g.slack, "holds": g.holds}
            for g in check_gersten_bound(certified_rows, P.M)
        ]
    return out


def cmd_growth(args):
    from .bar import cocycle_check, cocycle_growth_report, parse_cochain
    from .groups import catalog_model
    from .psmod import GrowthBound

    model = catalog_model(args.group)
    try:
        C = Fraction(args.C)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad constant {args.C!r}") from None
    phi = parse_cochain(args.cochain, model, 2 * args.radius)
    doubling = model.letter_image(1) if args.doubling else None
    report = cocycle_growth_report(phi, args.radius, k_max=args.k, C=C, doubling=doubling, limit=2**args.limit_bits)
    entry = report["verdicts"][args.k]
    cc = cocycle_check(phi, args.radius)
    result = {
        "verdict": entry["verdict"],
        "witness": [model.format_element(g) for g in entry["witness"]] if "witness" in entry else None,
        "weight": entry.get("weight"),
        "value": entry.get("value"),
        "beyond_ball": entry.get("beyond_ball", False),
        "exponent": entry.get("exponent"),
        "C": C,
        "k": args.k,
        "class": GrowthBound(C, args.k).growth_class,
        "cocycle": cc.ok,
        "cocycle_witness": [model.format_element(g) for g in cc.witness] if cc.witness else None,
        "suggested": {
            k: {"C": v["C"], "increasing": v["increasing"]} for k, v in report["growth"]["degrees"].items()
        } if report["growth"] else None,
    }
    return {
        "results": result,
        "rows": [{"k": args.k, "C": C, "verdict": result["verdict"], "witness": result["witness"],
                  "value": result["value"]}],
        "columns": ["k", "C", "verdict", "witness", "value"],
        "certified": True,
        "partial": False,
        "budget": {"radius": args.radius, "limit_bits": args.limit_bits},
        "input": {"group": model.name, "cochain": args.cochain, "C": C, "k": args.k, "radius": args.radius,
                  "doubling": args.doubling},
    }


def cmd_cohomology(args):
    from .resolution import builtin_resolution, cohomology_dims

    R = builtin_resolution(args.resolution, top=args.top)
    dims = cohomology_dims(R)
    rows = [{"n": n, "dim": d} for n, d in enumerate(dims)]
    return {
        "results": {"dims": dims, "complete": R.complete},
        "rows": rows,
        "columns": ["n", "dim"],
        "certified": True,
        "partial": False,
        "budget": {"top": args.top},
        "input": {"resolution": R.name},
    }


def cmd_resolution_check(args):
    from .groups import Free
    from .resolution import builtin_resolution, check_contraction, cohomology_dims, verify_section_bound

    R = builtin_resolution(args.name, top=args.top)
    checks = {"d_squared_zero": True, "augmentation": True}
    rows = [{"check": "d_squared_zero", "ok": True}, {"check": "augmentation", "ok": True}]
    checks["dims"] = cohomology_dims(R)
    if R.contraction is not None:
        n = check_contraction(R, args.radius)
        checks["contraction"] = {"ok": True, "checked": n, "radius": args.radius}
        rows.append({"check": "contraction", "ok": True, "checked": n})
    if isinstance(R.model, Free):
        rep = verify_section_bound(R.model, args.radius)
        checks["section_bound"] = {"ok": rep.ok and rep.identity_ok, "checked": rep.checked,
                                   "radius": rep.radius}
        rows.append({"check": "section_bound", "ok": rep.ok and rep.identity_ok, "checked": rep.checked})
    return {
        "results": checks,
        "rows": rows,
        "columns": ["check", "ok", "checked"],
        "certified": all(r["ok"] for r in rows),
        "partial": False,
        "budget": {"radius": args.radius, "top": args.top},
        "input": {"resolution": R.name},
    }


def cmd_simplicial(args):
    from .simplicial import (
        assemble_contraction,
        build_h1_cocomplex,
        check_simplicial_identities,
        kernel_samples,
        seed_from_presentation,
        type_p_extend,
    )

    P = load_presentation(args.presentation)
    budget = _budget(args)
    T = seed_from_presentation(P, budget)
    result = {}
    rows = []
    if args.type_p:
        samples = kernel_samples(T, 1, args.type_p, seed=args.seed)
        new = type_p_extend(T, 2, samples)
        ok = all(T.face(2, 2, T.base_word(b)) == b.element for b in new)
        result["type_p"] = {"m": 2, "materialized": len(new), "top_face_ok": ok}
        rows.append({"check": "type_p", "ok": ok, "checked": len(new)})
    if args.check_identities:
        rep = check_simplicial_identities(T, args.max_dim)
        result["identities"] = rep
        rows.append({"check": "identities", "ok": True, "checked": rep["checked"]})
    if args.contraction:
        from . import kernel
        import random

        C = assemble_contraction(T)
        rng = random.Random(args.seed)
        gens = P.alphabet.generator_codes()
        level0 = []
        while len(level0) < args.contraction:
            w = kernel.free_reduce(tuple(rng.choice(gens) for _ in range(rng.randint(1, 4))))
            level0.append(T.level0_word(w))
        r0 = C.verify(0, level0)
        level1 = kernel_samples(T, 1, args.contraction, seed=args.seed + 1, kernel_only=False, max_letters=3)
        r1 = C.verify(1, level1)
        result["contraction"] = {"0": r0, "1": r1}
        rows.append({"check": "contraction_n0", "ok": r0["ok"], "checked": r0["checked"]})
        rows.append({"check": "contraction_n1", "ok": r1["ok"], "checked": r1["checked"]})
    if args.h1:
        h = build_h1_cocomplex(T)
        result["h1"] = {k: h[k] for k in ("h1", "delta1", "delta2", "delta_squared_zero", "X0", "X1")}
        rows.append({"check": "h1", "ok": h["delta_squared_zero"], "checked": h["h1"]})
    return {
        "results": result,
        "rows": rows,
        "columns": ["check", "ok", "checked"],
        "certified": all(r["ok"] for r in rows),
        "partial": False,
        "budget": dict(budget.as_dict(), max_dim=args.max_dim),
        "input": {"presentation": P.format(), "seed": args.seed, "type_p": args.type_p,
                  "contraction": args.contraction},
    }


def cmd_higher_dehn(args):
    from .simplicial import higher_dehn_sample, seed_from_presentation

    P = load_presentation(args.presentation)
    budget = _budget(args)
    T = seed_from_presentation(P, budget)
    res = higher_dehn_sample(T, args.n, args.max_n, budget)
    rows = [dict(r, x=str(r["x"])) for r in res.rows]
    witness = None
    if res.witness is not None:
        witness = str(P.alphabet.word(res.witness)) if args.n == 0 else T.format(1, res.witness)
    return {
        "results": {"n": res.n, "N": res.N, "value": res.value, "certified": res.certified, "witness": witness,
                    "samples": rows},
        "rows": rows,
        "columns": ["x", "length", "lift", "bound", "certified"],
        "certified": res.certified,
        "partial": not res.certified,
        "budget": res.budget,
        "input": {"presentation": P.format(), "n": args.n, "max_n": args.max_n},
    }


COMMANDS = {
    "area": cmd_area,
    "dehn": cmd_dehn,
    "growth": cmd_growth,
    "cohomology": cmd_cohomology,
    "resolution-check": cmd_resolution_check,
    "simplicial": cmd_simplicial,
    "higher-dehn": cmd_higher_dehn,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output path, or json|tsv as a format shorthand")
    common.add_argument("--format", choices=["json", "tsv"], default=None)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timing", action="store_true", help="record wall time (breaks byte-identity)")
    common.add_argument("--max-count", type=int, default=8)
    common.add_argument("--max-conjugator", type=int, default=4)
    common.add_argument("--max-intermediate", type=int, default=16)
    common.add_argument("--max-states", type=int, default=60_000_000)
    common.add_argument("--max-ball-elements", type=int, default=10**6)

    parser = argparse.ArgumentParser(prog="isoper", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"isoper {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("area", parents=[common], help="area of null words")
    p.add_argument("--presentation", required=True)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("words", nargs="+")

    p = sub.add_parser("dehn", parents=[common], help="Dehn function samples")
    p.add_argument("--presentation", required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--gersten", action="store_true", help="both tables plus the Gersten comparison")

    p = sub.add_parser("growth", parents=[common], help="growth verdict for a 1-cochain")
    p.add_argument("--group", required=True)
    p.add_argument("--cochain", required=True)
    p.add_argument("--C", default="1")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--radius", type=int, default=6)
    p.add_argument("--doubling", action="store_true", help="continue along g, g^2, g^4, ... past the ball")
    p.add_argument("--limit-bits", type=int, default=64)

    p = sub.add_parser("cohomology", parents=[common], help="dims of H^n(G; Q)")
    p.add_argument("--resolution", required=True)
    p.add_argument("--top", type=int, default=3)

    p = sub.add_parser("resolution-check", parents=[common], help="verify a builtin resolution")
    p.add_argument("name")
    p.add_argument("--radius", type=int, default=4)
    p.add_argument("--top", type=int, default=3)

    p = sub.add_parser("simplicial", parents=[common], help="presentation seed checks")
    p.add_argument("--presentation", required=True)
    p.add_argument("--check-identities", action="store_true")
    p.add_argument("--max-dim", type=int, default=3)
    p.add_argument("--type-p", type=int, default=0, metavar="N", help="extend at m=2 by N sampled kernel elements")
    p.add_argument("--contraction", type=int, default=0, metavar="N", help="verify the contraction on N samples")
    p.add_argument("--h1", action="store_true")

    p = sub.add_parser("higher-dehn", parents=[common], help="higher Dehn samples")
    p.add_argument("--presentation", default="z2")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--max-n", type=int, required=True)
    return parser


def run(args) -> tuple[int, dict]:
    started = time.perf_counter()
    code = EXIT_OK
    try:
        if args.threads < 1:
            raise InputError("--threads must be positive")
        _apply_memory_cap()
        _set_ball_cap(args.max_ball_elements)
        payload = COMMANDS[args.command](args)
        if payload.get("partial"):
            code = EXIT_BUDGET
    except (BudgetExceeded, MemoryError) as exc:
        partial = getattr(exc, "partial", None) or {}
        payload = {"results": None, "rows": [], "columns": [], "certified": False, "partial": True,
                   "error": str(exc) or "memory cap reached", "budget": partial}
        code = EXIT_BUDGET
    envelope = {
        "tool": "isoper",
        "version": __version__,
        "command": args.command,
        "timing": round(time.perf_counter() - started, 3) if args.timing else None,
    }
    envelope.update(payload)
    return code, envelope


def _set_ball_cap(n):
    from . import groups

    if n < 1:
        raise InputError("--max-ball-elements must be positive")
    groups.DEFAULT_MAX_ELEMENTS = n


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or "json"
    out_path = None
    if args.out in ("json", "tsv"):
        fmt = args.format or args.out
    elif args.out:
        out_path = args.out
    try:
        code, envelope = run(args)
    except (InputError, ParseError, UnknownName, UnknownSymbol, NotNullhomotopic, FileNotFoundError,
            IsoperError, ValueError) as exc:
        print(f"isoper: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    data = emit(envelope, fmt)
    if code == EXIT_BUDGET:
        print(f"isoper: budget exhausted: {envelope.get('error', 'partial results')}", file=sys.stderr)
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
