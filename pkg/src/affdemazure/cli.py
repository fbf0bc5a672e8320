"""Command-line front end.

Exit status: 0 on success, 1 if a verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .branching import decompose
from .cartan import CartanData, LabelError, affine_of, build_cartan
from .charring import from_terms, monomial
from .demazure import (apply_letters, demazure_character, finite_weyl_character,
                       translation_character)
from .theorems import REGISTRY, grid_tasks, limit_letters, run_tasks
from .weylgroup import peel_reduced_word, translation, translation_element

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_vector(text: str, what: str = "vector") -> tuple[int, ...]:
    """``"1,0,2"`` -> ``(1, 0, 2)``; errors name the offending column."""
    if text is None or not text.strip():
        raise UsageError(f"{what}: empty vector")
    out = []
    col = 1
    for token in text.split(","):
        stripped = token.strip()
        try:
            out.append(int(stripped))
        except ValueError:
            raise UsageError(f"{what}: column {col}: {stripped!r} is not an integer") from None
        col += len(token) + 1
    return tuple(out)


def parse_parts(text: str) -> list[tuple[int, ...]]:
    parts = []
    for k, chunk in enumerate(text.split(";"), 1):
        parts.append(parse_vector(chunk, f"--parts entry {k}"))
    return parts


def _cartan(label: str) -> CartanData:
    try:
        return build_cartan(label)
    except LabelError as exc:
        raise UsageError(f"--algebra: {exc}") from None


def _check_length(vec, n, what):
    if len(vec) != n:
        raise UsageError(f"{what}: expected {n} coordinates, got {len(vec)}")


def _emit_character(char, fmt: str, level: int):
    if fmt == "tsv":
        print(char.to_tsv(level))
    else:
        print(char.to_json(level))


# ------------------------------------------------------------- commands
def _affine_character(args):
    cd = _cartan(args.algebra)
    if not cd.is_affine:
        cd = affine_of(cd)
    if args.level is None or args.level < 0:
        raise UsageError("--level: a nonnegative level is required")
    cw = parse_vector(args.coweight, "--coweight")
    _check_length(cw, cd.rank, "--coweight")
    if any(c < 0 for c in cw):
        raise UsageError(f"--coweight: {cw} is not dominant")
    lam = parse_vector(args.weight, "--weight") if args.weight else (0,) * cd.rank
    _check_length(lam, cd.rank, "--weight")
    node = args.node or 0
    if not 0 <= node < cd.size:
        raise UsageError(f"--node: {node} out of range for {cd.name}")
    if cd.label.twist >= 2 or node:
        top = [0] * cd.size
        top[node] = args.level
        rest = [j for j in range(cd.size) if j != node]
        for j, c in zip(rest, lam):
            top[j] += c
        if any(c < 0 for c in top):
            raise UsageError("highest weight is not dominant")
        return cd, translation_character(cd, cw, tuple(top), node)
    c0 = args.level - sum(a * c for a, c in zip(cd.comarks[1:], lam))
    if c0 < 0 or any(c < 0 for c in lam):
        raise UsageError(f"--weight: {args.level}*Lambda_0 + {lam} is not dominant")
    return cd, demazure_character(cd, cw, (c0,) + lam)


def cmd_char(args) -> int:
    if args.coweight is None:
        if args.weight is None:
            raise UsageError("char needs --coweight (Demazure character) or --weight (irreducible)")
        cd = _cartan(args.algebra)
        if cd.is_affine:
            cd = cd.finite
        lam = parse_vector(args.weight, "--weight")
        _check_length(lam, cd.size, "--weight")
        if any(c < 0 for c in lam):
            raise UsageError(f"--weight: {lam} is not dominant")
        _emit_character(finite_weyl_character(cd, lam), args.format, 0)
        return EXIT_OK
    cd, char = _affine_character(args)
    _emit_character(char, args.format, args.level)
    return EXIT_OK


def _read_character(path: str):
    raw = sys.stdin.read() if path == "-" else open(path).read()
    try:
        obj = json.loads(raw)
        cd = _cartan(obj["algebra"])
        terms = [(tuple(t["weight"]), int(t["mult"])) for t in obj["terms"]]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"--input: not a character document ({exc})") from None
    if cd.is_affine:
        fin = cd.finite
    else:
        fin = cd
    for w, _ in terms:
        _check_length(w, fin.size, "--input weight")
    return from_terms(fin, terms)


def cmd_decompose(args) -> int:
    if args.input:
        char = _read_character(args.input)
    else:
        if args.coweight is None:
            raise UsageError("decompose needs --input or --coweight")
        cd, affine_char = _affine_character(args)
        char = affine_char.project_to_finite(args.node or 0)[1]
    dec = decompose(char)
    obj = dec.to_json_obj()
    if args.format == "tsv":
        print("weight\tmult\tdim")
        for p in obj["parts"]:
            print(",".join(map(str, p["weight"])) + f"\t{p['mult']}\t{p['dim']}")
    else:
        print(json.dumps(obj, separators=(",", ":")))
    return EXIT_OK


def cmd_word(args) -> int:
    cd = _cartan(args.algebra)
    if not cd.is_affine:
        cd = affine_of(cd)
    cw = parse_vector(args.coweight, "--coweight")
    _check_length(cw, cd.rank, "--coweight")
    if any(c < 0 for c in cw):
        raise UsageError(f"--coweight: {cw} is not dominant")
    if cd.label.twist >= 2:
        g = translation(cd, tuple(-c for c in cw), args.node or 0)
    else:
        g = translation_element(cd, cw)
    print(json.dumps(peel_reduced_word(g).to_json(), separators=(",", ":")))
    return EXIT_OK


def cmd_limit(args) -> int:
    cd = affine_of(_cartan(args.algebra))
    lam = parse_vector(args.weight, "--weight") if args.weight else (0,) * cd.rank
    _check_length(lam, cd.rank, "--weight")
    r = args.level
    if r is None or r < 1:
        raise UsageError("--level: r >= 1 is required")
    c0 = r - sum(a * c for a, c in zip(cd.comarks[1:], lam))
    if c0 < 0 or any(c < 0 for c in lam):
        raise UsageError(f"--weight: {r}*Lambda_0 + {lam} is not dominant")
    if args.N is None or args.N < 0:
        raise UsageError("--N: a nonnegative truncation is required")
    char = apply_letters(monomial(cd, (c0,) + lam), limit_letters(cd, args.N))
    _emit_character(char, args.format, r)
    return EXIT_OK


def _verify_tasks(args) -> list:
    kind = args.claim
    if kind == "all":
        return grid_tasks("all", args.max_rank, args.max_level)
    if args.algebra is None and kind != "twisted":
        return grid_tasks(kind, args.max_rank, args.max_level)
    need = lambda name, value: value if value is not None else _missing(name)  # noqa: E731
    if kind == "thm1":
        return [("thm1", {"algebra": args.algebra, "m": need("--level", args.level),
                          "parts": parse_parts(need("--parts", args.parts))})]
    if kind == "thm1a":
        rest = parse_parts(args.parts) if args.parts else []
        return [("thm1a", {"algebra": args.algebra, "m": need("--level", args.level),
                           "s": need("--s", args.s), "i": need("--node", args.node), "rest": rest,
                           "reading": args.reading})]
    if kind == "thm2":
        return [("thm2", {"algebra": args.algebra, "i": need("--node", args.node),
                          "m": need("--level", args.level)})]
    if kind == "hilf8":
        return [("hilf8", {"algebra": args.algebra, "r": need("--level", args.level)})]
    if kind == "wmodule":
        return [("wmodule", {"algebra": args.algebra, "r": need("--level", args.level)})]
    if kind == "limit":
        lam = parse_vector(args.weight, "--weight") if args.weight else None
        cd = affine_of(_cartan(args.algebra))
        return [("limit", {"algebra": args.algebra, "r": need("--level", args.level),
                           "lam": lam or (0,) * cd.rank, "N": need("--N", args.N)})]
    if kind == "length":
        return [("length_lemma", {"algebra": args.algebra,
                                  "coweight": parse_vector(need("--coweight", args.coweight),
                                                           "--coweight")})]
    if kind == "twisted":
        if args.algebra is None:
            return grid_tasks("twisted", args.max_rank, args.max_level)
        if args.parts:
            return [("twisted_thm", {"algebra": args.algebra, "k": args.node or 0,
                                     "m": need("--level", args.level),
                                     "parts": parse_parts(args.parts)})]
        return [("twisted_decomposition", {"algebra": args.algebra, "i": need("--node", args.node),
                                           "l": need("--level", args.level)})]
    raise UsageError(f"unknown claim {kind!r}")


def _missing(name):
    raise UsageError(f"{name} is required for this claim")


def cmd_verify(args) -> int:
    if args.algebra is not None:
        _cartan(args.algebra)
    tasks = _verify_tasks(args)
    if args.claim != "all" and args.algebra is not None:
        # an explicit instance: precondition violations are usage errors
        reports = [REGISTRY[claim](**kwargs) for claim, kwargs in tasks]
    else:
        reports = run_tasks(tasks, args.workers)
    for rep in reports:
        print(rep.to_json(timing=args.timing))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# ---------------------------------------------------------------- parser
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="affdemazure",
                                description="Demazure characters of affine Kac-Moody algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=True):
        sp.add_argument("--algebra", help='label such as "C2", "C2^1", "A4^2"')
        sp.add_argument("--level", type=int, help="level m (or r)")
        sp.add_argument("--coweight", help="comma-separated fundamental coweight coordinates")
        sp.add_argument("--weight", help="comma-separated fundamental weight coordinates")
        sp.add_argument("--node", type=int, help="node index (basepoint or fundamental node)")
        if fmt:
            sp.add_argument("--format", choices=("json", "tsv"), default="json")

    sp = sub.add_parser("char", help="Demazure or irreducible character")
    common(sp)
    sp.set_defaults(func=cmd_char)

    sp = sub.add_parser("decompose", help="split a finite character into irreducibles")
    common(sp)
    sp.add_argument("--input", help="character JSON file ('-' for stdin)")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("word", help="reduced word of a translation element")
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_word)

    sp = sub.add_parser("limit", help="truncated limit character")
    common(sp)
    sp.add_argument("--N", type=int, help="number of W factors")
    sp.set_defaults(func=cmd_limit)

    sp = sub.add_parser("verify", help="run verification instances, one JSON line each")
    sp.add_argument("claim", choices=("thm1", "thm1a", "thm2", "hilf8", "wmodule", "twisted",
                                      "limit", "length", "all"))
    common(sp, fmt=False)
    sp.add_argument("--parts", help='semicolon-separated vectors, e.g. "1,0;0,1"')
    sp.add_argument("--s", type=int, help="multiplicity of Lambda_i (thm1a)")
    sp.add_argument("--reading", choices=("derived", "stated"), default="derived")
    sp.add_argument("--N", type=int, help="truncation for limit")
    sp.add_argument("--max-rank", type=int, default=4)
    sp.add_argument("--max-level", type=int, default=2)
    sp.add_argument("--workers", type=int, default=None,
                    help="process count (default from AFFDEMAZURE_WORKERS, else 1)")
    sp.add_argument("--timing", action="store_true", help="include elapsed_ms in reports")
    sp.set_defaults(func=cmd_verify)
    return p


def parse_and_run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(parse_and_run())


if __name__ == "__main__":
    main()
