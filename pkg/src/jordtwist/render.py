"""Text and LaTeX rendering of truncated series, grouped by powers of ``t``."""
from __future__ import annotations

import ast
from typing import Dict, List, Sequence, Tuple

from .exactmath import I, Poly, parse_rational
from .tensorcalc import TensorElem

T = "t"


def _groups(x: TensorElem) -> Dict[int, List[Tuple[tuple, Poly]]]:
    groups: Dict[int, List[Tuple[tuple, Poly]]] = {}
    for key, c in x.terms.items():
        for n in sorted({e[x.params.index(T)] for e in c.terms}):
            groups.setdefault(n, []).append((key, c.coefficient(T, n)))
    for terms in groups.values():
        terms.sort(key=lambda kc: kc[0], reverse=True)
    return groups


def _coeff_text(c: Poly, latex: bool) -> str:
    """Empty for 1, ``-`` for -1, parenthesised when it is a sum."""
    if c == 1:
        return ""
    if c == -1:
        return "-"
    s = c.latex() if latex else str(c)
    if len(c.terms) > 1:
        return f"({s}) " if not latex else f"\\left({s}\\right) "
    return s + (r"\, " if latex else " ")


def _t_power(n: int, latex: bool) -> str:
    if n == 0:
        return ""
    if n == 1:
        return "t"
    return f"t^{{{n}}}" if latex else f"t^{n}"


def render_series(x: TensorElem, fmt: str = "text") -> str:
    """``1⊗1 + t((u - 1) P⊗D + u D⊗P) + ...`` (text) or the LaTeX equivalent."""
    if fmt not in ("text", "latex"):
        raise ValueError(f"unknown format {fmt!r}")
    latex = fmt == "latex"
    sep = r" \otimes " if latex else "⊗"
    mono = x.ctx.mono_latex if latex else x.ctx.mono_str
    groups = _groups(x)
    if not groups:
        return "0"
    out = []
    for n in sorted(groups):
        parts = [_coeff_text(c, latex) + sep.join(mono(m) for m in key) for key, c in groups[n]]
        body = " + ".join(parts).replace("+ -", "- ")
        tp = _t_power(n, latex)
        if not tp:
            out.append(body)
        elif len(parts) == 1 and not body.startswith("-"):
            out.append(f"{tp} {body}" if not latex else f"{tp}\\, {body}")
        else:
            out.append(f"{tp}({body})" if not latex else f"{tp}\\left({body}\\right)")
    return " + ".join(out)


def series_json(x: TensorElem) -> dict:
    return {"arity": x.arity, "N": x.order, "params": list(x.params), "terms": x.to_json()}


# -- polynomial input ---------------------------------------------------------------------


def parse_poly(text: str, variables: Sequence[str]) -> Poly:
    """Parse ``3/2*x0^2*x1 - i*x1 + 1`` into a Poly over ``variables``.

    Accepts ``+ - * /`` (division by constants only), ``^`` or ``**`` with
    non-negative integer exponents, integer literals, ``i`` and parentheses.
    """
    variables = tuple(variables)
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}") from exc

    def ev(node) -> Poly:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise ValueError(f"only integer literals are allowed, got {node.value!r}")
            return Poly.const(variables, parse_rational(node.value))
        if isinstance(node, ast.Name):
            if node.id in variables:
                return Poly.var(variables, node.id)
            if node.id in ("i", "I"):
                return Poly.const(variables, I)
            raise ValueError(f"unknown symbol {node.id!r}; expected one of {variables}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a = ev(node.left)
            if isinstance(node.op, ast.Pow):
                b = ev(node.right)
                if not b.is_constant() or b.constant_term() != int(b.constant_term()) or b.constant_term() < 0:
                    raise ValueError("exponents must be non-negative integers")
                return a ** int(b.constant_term())
            b = ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if not b.is_constant() or not b:
                    raise ValueError("division only by non-zero constants")
                return a * (1 / b.constant_term())
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)
