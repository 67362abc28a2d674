"""Command-line surface: expression parsing and command dispatch.

Expressions follow a small arithmetic grammar (integers, variables
``x1..x8`` with aliases ``x, y, z, w``, ``+ - * / ^``, parentheses; no
implicit multiplication).  Exit codes: 0 when a verdict was computed
(even a failing one), 2 on usage or parse errors, 3 when a computation
hit its truncation limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .algebra import LaurentPolynomial, RationalFunction, ZeroDenominator
from .gauss import EXCLUDED, INSUFFICIENT, GaussCheckConfig, check_gauss
from .polytope import GradingForm, face_of_form, newton_polytope
from .series import TruncationLimit, expand_at_vertex
from .theory import (
    ToroidalMap,
    classify_degree2,
    classify_linear,
    classify_mostly_linear,
    log_det_construct,
    minton_decide,
    restrict_face,
    substitute_multivariate,
    substitute_univariate,
)

_ALIASES = {"x": 0, "y": 1, "z": 2, "w": 3}


class ExprError(ValueError):
    """Syntax or evaluation error, carrying the byte offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# tokenizer and recursive-descent parser
# ---------------------------------------------------------------------------

def _tokenize(s: str):
    tokens = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            tokens.append(("int", int(s[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(s) and (s[j].isalnum()):
                j += 1
            tokens.append(("name", s[i:j], i))
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ExprError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(s)))
    return tokens


def parse_expression(s: str):
    """Parse an expression string into an AST of nested tuples."""
    tokens = _tokenize(s)
    pos = 0

    def peek():
        return tokens[pos]

    def advance():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expect(kind):
        tok = advance()
        if tok[0] != kind:
            raise ExprError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse_expr():
        node = parse_term()
        while peek()[0] in ("+", "-"):
            op = advance()[0]
            rhs = parse_term()
            node = (op, node, rhs)
        return node

    def parse_term():
        node = parse_factor()
        while peek()[0] in ("*", "/"):
            op = advance()[0]
            rhs = parse_factor()
            node = (op, node, rhs)
        return node

    def parse_factor():
        if peek()[0] == "-":
            tok = advance()
            return ("neg", parse_factor())
        node = parse_base()
        exps = []
        while peek()[0] == "^":
            advance()
            exps.append(parse_signed_int())
        if exps:
            # right-associative integer tower
            e = exps[-1]
            for v in reversed(exps[:-1]):
                if e < 0:
                    raise ExprError("negative exponent in exponent tower", tokens[pos][2])
                e = v**e
            node = ("pow", node, e)
        return node

    def parse_signed_int():
        sign = 1
        if peek()[0] == "-":
            advance()
            sign = -1
        tok = advance()
        if tok[0] != "int":
            raise ExprError(f"expected integer exponent, found {tok[1]!r}", tok[2])
        return sign * tok[1]

    def parse_base():
        tok = advance()
        if tok[0] == "int":
            return ("num", tok[1])
        if tok[0] == "name":
            return ("var", _variable_index(tok[1], tok[2]))
        if tok[0] == "(":
            node = parse_expr()
            expect(")")
            return node
        raise ExprError(f"unexpected token {tok[1]!r}", tok[2])

    node = parse_expr()
    tok = peek()
    if tok[0] != "end":
        raise ExprError(f"unexpected token {tok[1]!r}", tok[2])
    return node


def _variable_index(name: str, pos: int) -> int:
    if name in _ALIASES:
        return _ALIASES[name]
    if name.startswith("x") and name[1:].isdigit():
        idx = int(name[1:])
        if 1 <= idx <= 8:
            return idx - 1
    raise ExprError(f"unknown variable {name!r}", pos)


def expr_nvars(node) -> int:
    kind = node[0]
    if kind == "num":
        return 0
    if kind == "var":
        return node[1] + 1
    if kind in ("neg", "pow"):
        return expr_nvars(node[1])
    return max(expr_nvars(node[1]), expr_nvars(node[2]))


def expr_to_rational(node, nvars: int) -> RationalFunction:
    """Evaluate an AST to a rational function in ``nvars`` variables."""
    kind = node[0]
    if kind == "num":
        return RationalFunction.constant(nvars, node[1])
    if kind == "var":
        return RationalFunction.from_polynomial(
            LaurentPolynomial.variable(nvars, node[1])
        )
    if kind == "neg":
        return -expr_to_rational(node[1], nvars)
    if kind == "pow":
        return expr_to_rational(node[1], nvars) ** node[2]
    a = expr_to_rational(node[1], nvars)
    b = expr_to_rational(node[2], nvars)
    if kind == "+":
        return a + b
    if kind == "-":
        return a - b
    if kind == "*":
        return a * b
    if kind == "/":
        return a / b
    raise AssertionError(f"unknown node {kind}")


def parse_laurent(src: str, nvars: int | None = None) -> LaurentPolynomial:
    """Parse a string directly into a Laurent polynomial.

    Division is only allowed by constants and monomials; anything else
    raises, since the result could not be a Laurent polynomial.
    """
    ast = parse_expression(src)
    n = max(expr_nvars(ast), nvars or 0, 1)
    F = expr_to_rational(ast, n)
    if len(F.den) != 1:
        raise ExprError("expression is not a Laurent polynomial", 0)
    (v, c), = F.den.coefficient_dict().items()
    return F.num.shift(tuple(-x for x in v)) * (Fraction(1) / c)


def parse_rational(num_src: str, den_src: str | None = None, nvars: int | None = None):
    """Parse numerator/denominator sources into one rational function."""
    num_ast = parse_expression(num_src)
    den_ast = parse_expression(den_src) if den_src else None
    n = max(
        expr_nvars(num_ast),
        expr_nvars(den_ast) if den_ast else 0,
        nvars or 0,
        1,
    )
    F = expr_to_rational(num_ast, n)
    if den_ast is not None:
        F = F / expr_to_rational(den_ast, n)
    return F


# ---------------------------------------------------------------------------
# command implementations
# ---------------------------------------------------------------------------

def _read_source(value: str) -> str:
    return sys.stdin.read() if value == "-" else value


def _parse_vec(text: str):
    return tuple(int(v.strip()) for v in text.split(","))


def _parse_primes(text: str):
    return tuple(int(v.strip()) for v in text.split(","))


def _load_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


def _default_vertex(F: RationalFunction):
    NP = newton_polytope(F.den)
    return min(NP.vertices, key=lambda v: (sum(v), v))


def _emit(payload: dict, text: str, as_json: bool):
    print(json.dumps(payload, indent=2) if as_json else text)


def cmd_expand(args) -> int:
    F = parse_rational(_read_source(args.num), args.den and _read_source(args.den))
    vertex = _parse_vec(args.vertex) if args.vertex else _default_vertex(F)
    grading = GradingForm(_parse_vec(args.grading)) if args.grading else None
    series = expand_at_vertex(F, vertex, args.bound, grading)
    payload = {
        "schema": 1,
        "vertex": list(series.vertex),
        "grading": list(series.grading.weights),
        "bound": series.bound,
        "coefficients": [
            {"k": list(e), "c": f"{c.numerator}/{c.denominator}"}
            for e, c in series.items()
        ],
    }
    _emit(payload, series.dump(), args.json)
    return 0


def cmd_check(args) -> int:
    F = parse_rational(_read_source(args.num), args.den and _read_source(args.den))
    vertex = _parse_vec(args.vertex) if args.vertex else _default_vertex(F)
    grading = GradingForm(_parse_vec(args.grading)) if args.grading else None
    cfg = GaussCheckConfig(
        primes=args.primes, r_max=args.rmax, strength=args.strength,
        m_budget=args.mbudget,
    )
    series = expand_at_vertex(F, vertex, args.bound, grading)
    if args.jobs > 1:
        from .gauss import effective_m_budget

        budget = effective_m_budget(cfg, series.bound)

        def one(p):
            sub = GaussCheckConfig(
                primes=(p,), r_max=args.rmax, strength=args.strength,
                m_budget=budget,
            )
            return check_gauss(F, vertex, sub, series=series).entries[0]

        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            entries = list(pool.map(one, sorted(cfg.primes)))
        report = check_gauss(F, vertex, cfg, series=series)
        report = type(report)(
            vertex=report.vertex, bound=report.bound, strength=report.strength,
            r_max=report.r_max, entries=tuple(entries),
        )
    else:
        report = check_gauss(F, vertex, cfg, series=series)
    lines = []
    for e in report.entries:
        line = f"p={e.prime}: {e.verdict}"
        if e.witness:
            line += f" witness m={e.witness['m']} r={e.witness['r']}"
        if e.verdict not in (EXCLUDED, INSUFFICIENT):
            line += f" ({e.checked} congruences checked)"
        lines.append(line)
    _emit(report.to_json_dict(), "\n".join(lines), args.json)
    if any(e.verdict == INSUFFICIENT for e in report.entries):
        return 3
    return 0


def cmd_construct_det(args) -> int:
    asts = [parse_expression(_read_source(src)) for src in args.f]
    n = max(args.nvars or 0, max(expr_nvars(a) for a in asts), len(asts))
    fs = [expr_to_rational(a, n) for a in asts]
    out = log_det_construct(fs, n)
    _emit({"schema": 1, "num": out.num.to_string(), "den": out.den.to_string()},
          out.to_string(), args.json)
    return 0


def cmd_substitute(args) -> int:
    f = parse_rational(_read_source(args.num), args.den and _read_source(args.den),
                       nvars=args.nvars)
    n = f.nvars
    if len(args.g) != n:
        raise ExprError(f"need {n} substitutions, got {len(args.g)}", 0)
    if args.mode == "univariate":
        gs = [parse_rational(_read_source(src), nvars=1) for src in args.g]
        out = substitute_univariate(f, gs)
    else:
        gs = [parse_rational(_read_source(src), nvars=n) for src in args.g]
        out = substitute_multivariate(f, gs)
    _emit({"schema": 1, "num": out.num.to_string(), "den": out.den.to_string()},
          out.to_string(), args.json)
    return 0


def cmd_toroidal(args) -> int:
    F = parse_rational(_read_source(args.num), args.den and _read_source(args.den))
    rows = tuple(
        tuple(Fraction(v.strip()) for v in row.split(","))
        for row in args.matrix.split(";")
    )
    out = toroidal_from_rows(F, rows)
    _emit({"schema": 1, "num": out.num.to_string(), "den": out.den.to_string()},
          out.to_string(), args.json)
    return 0


def toroidal_from_rows(F, rows):
    from .theory import toroidal_substitute

    return toroidal_substitute(F, ToroidalMap(rows))


def cmd_restrict_face(args) -> int:
    F = parse_rational(_read_source(args.num), args.den and _read_source(args.den))
    form = _parse_vec(args.form)
    face = face_of_form(newton_polytope(F.den), form)
    out = restrict_face(F, face)
    _emit(
        {
            "schema": 1,
            "face_members": [list(m) for m in face.members],
            "num": out.num.to_string(),
            "den": out.den.to_string(),
        },
        out.to_string(),
        args.json,
    )
    return 0


def cmd_minton(args) -> int:
    F = parse_rational(_read_source(args.num), args.den and _read_source(args.den),
                       nvars=1)
    verdict = minton_decide(F)
    if verdict.has_gauss:
        dec = verdict.decomposition
        text = ["yes", f"constant: {dec.constant}"]
        for c, u in dec.terms:
            text.append(f"term: c={c} u={u.to_string()}")
        text = "\n".join(text)
    else:
        text = f"no ({verdict.reason})"
    _emit(verdict.to_json_dict(), text, args.json)
    return 0


def cmd_classify_linear(args) -> int:
    F = parse_rational(_read_source(args.num), args.den and _read_source(args.den))
    got = classify_linear(F.num, F.den)
    _emit({"schema": 1, "has_gauss_property": got}, "true" if got else "false", args.json)
    return 0


def cmd_classify_mostly_linear(args) -> int:
    F = parse_rational(_read_source(args.num), args.den and _read_source(args.den))
    verdict = classify_mostly_linear(F.num, F.den, z_var=args.zvar)
    text = ["true" if verdict.overall else "false"]
    for k, v in sorted(verdict.per_k.items()):
        tag = v if isinstance(v, str) else ("yes" if v.has_gauss else f"no ({v.reason})")
        text.append(f"k={','.join(str(i) for i in k)}: {tag}")
    _emit(verdict.to_json_dict(), "\n".join(text), args.json)
    return 0


def cmd_classify_deg2(args) -> int:
    F = parse_rational(_read_source(args.num), args.den and _read_source(args.den),
                       nvars=2)
    result = classify_degree2(F.num, F.den)
    if result.status == "reduced":
        payload = {
            "schema": 1,
            "status": "reduced",
            "toroidal_map": [[str(v) for v in row] for row in result.toroidal_map.rows],
        }
        _emit(payload, "reduced (apply the reported toroidal substitution)", args.json)
        return 0
    payload = {
        "schema": 1,
        "status": "classified",
        "dim_VQ": result.dim_VQ,
        "edge_monomials": [list(m) for m in result.edge_monomials],
        "basis": [b.to_string() for b in result.basis],
        "numerator_in_span": result.contains,
    }
    text = (
        f"dim V_Q = {result.dim_VQ}; edge monomials: "
        f"{[f'x^{m}' for m in result.edge_monomials]}; "
        f"numerator in span: {result.contains}"
    )
    _emit(payload, text, args.json)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="gausscong",
        description="Exact Gauss-congruence toolkit for rational functions",
    )
    top.add_argument("--config", help="key=value defaults file (primes, bound, rmax)")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, den_required=True):
        p.add_argument("--num", required=True, help="numerator expression ('-' for stdin)")
        if den_required:
            p.add_argument("--den", required=True, help="denominator expression")
        else:
            p.add_argument("--den", help="denominator expression")
        p.add_argument("--json", action="store_true", help="emit JSON")

    p = sub.add_parser("expand", help="expand at a vertex and dump coefficients")
    common(p)
    p.add_argument("--vertex", help="comma-separated vertex, default graded-lex minimal")
    p.add_argument("--grading", help="comma-separated grading weights")
    p.add_argument("--bound", type=int, help="grade cap (default 60)")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("check", help="check Gauss congruences at a vertex")
    common(p)
    p.add_argument("--vertex")
    p.add_argument("--grading")
    p.add_argument("--bound", type=int)
    p.add_argument("--primes", type=_parse_primes)
    p.add_argument("--rmax", type=int)
    p.add_argument("--strength", type=int, default=1)
    p.add_argument("--mbudget", type=int)
    p.add_argument("--jobs", type=int, default=1, help="parallel per-prime checking")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct-det", help="log-derivative determinant construction")
    p.add_argument("--f", action="append", required=True, help="one rational expression per function")
    p.add_argument("--nvars", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct_det)

    p = sub.add_parser("substitute", help="variable substitution constructions")
    common(p, den_required=False)
    p.add_argument("--g", action="append", required=True, help="one substitution per variable")
    p.add_argument("--mode", choices=("univariate", "multivariate"), default="univariate")
    p.add_argument("--nvars", type=int)
    p.set_defaults(func=cmd_substitute)

    p = sub.add_parser("toroidal", help="monomial change of variables x = y^A")
    common(p, den_required=False)
    p.add_argument("--matrix", required=True, help="rows 'a,b;c,d' (entries may be fractions)")
    p.set_defaults(func=cmd_toroidal)

    p = sub.add_parser("restrict-face", help="restrict to a face of the denominator polytope")
    common(p)
    p.add_argument("--form", required=True, help="integer form whose argmin face is taken")
    p.set_defaults(func=cmd_restrict_face)

    p = sub.add_parser("minton", help="decide the univariate Gauss property")
    common(p)
    p.set_defaults(func=cmd_minton)

    p = sub.add_parser("classify-linear", help="multilinear-denominator classification")
    common(p)
    p.set_defaults(func=cmd_classify_linear)

    p = sub.add_parser("classify-mostly-linear", help="denominator linear outside one variable")
    common(p)
    p.add_argument("--zvar", type=int, help="index of the distinguished variable")
    p.set_defaults(func=cmd_classify_mostly_linear)

    p = sub.add_parser("classify-deg2", help="planar total-degree-2 classification")
    common(p)
    p.set_defaults(func=cmd_classify_deg2)
    return top


def _apply_config(args):
    cfg = _load_config(args.config) if args.config else {}
    if getattr(args, "bound", None) is None and hasattr(args, "bound"):
        args.bound = int(cfg.get("bound", 60))
    if getattr(args, "primes", None) is None and hasattr(args, "primes"):
        args.primes = _parse_primes(cfg.get("primes", "2,3,5,7,11,13"))
    if getattr(args, "rmax", None) is None and hasattr(args, "rmax"):
        args.rmax = int(cfg.get("rmax", 2))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        _apply_config(args)
        return args.func(args)
    except TruncationLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ExprError, ZeroDenominator, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
