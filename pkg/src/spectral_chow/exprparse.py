"""Polynomial expression strings: literals, + - * ^ /, parentheses, names, subscripts.

Parsing goes through :mod:`ast` with a whitelist of node types; ``^`` means
power. Division is allowed only by a constant.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from typing import Callable


class ExpressionError(ValueError):
    pass


def _const_value(node) -> Fraction | None:
    """Numeric value of a constant-only subtree, or None."""
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _const_value(node.operand)
        if v is None:
            return None
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        a, b = _const_value(node.left), _const_value(node.right)
        if a is None or b is None:
            return None
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if b == 0:
                raise ExpressionError("division by zero")
            return a / b
        if isinstance(node.op, ast.Pow) and b.denominator == 1 and b >= 0:
            return a ** int(b)
    return None


def evaluate(text: str, *, const: Callable, name: Callable | None = None,
             subscript: Callable | None = None):
    """Evaluate ``text`` with user hooks.

    ``const(Fraction)`` lifts literals, ``name(str)`` resolves bare names and
    ``subscript(str, [int, ...])`` resolves ``v[i][j]...`` references.
    """
    src = text.replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg} at column {exc.offset}") from None

    def where(node):
        return f" at column {getattr(node, 'col_offset', 0) + 1} of {text!r}"

    def ev(node):
        c = _const_value(node)
        if c is not None:
            return const(c)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                k = _const_value(node.right)
                if k is None or k.denominator != 1 or k < 0:
                    raise ExpressionError("exponent must be a nonnegative integer" + where(node))
                return ev(node.left) ** int(k)
            if isinstance(node.op, ast.Div):
                k = _const_value(node.right)
                if k is None:
                    raise ExpressionError("only division by a constant is allowed" + where(node))
                if k == 0:
                    raise ExpressionError("division by zero" + where(node))
                return ev(node.left) * const(1 / k)
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            raise ExpressionError("unsupported operator" + where(node))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Name):
            if name is None:
                raise ExpressionError(f"unexpected name {node.id!r}" + where(node))
            return name(node.id)
        if isinstance(node, ast.Subscript):
            idx = []
            cur = node
            while isinstance(cur, ast.Subscript):
                k = _const_value(cur.slice)
                if k is None or k.denominator != 1:
                    raise ExpressionError("subscripts must be integer literals" + where(cur))
                idx.append(int(k))
                cur = cur.value
            if not isinstance(cur, ast.Name) or subscript is None:
                raise ExpressionError("unexpected subscript" + where(node))
            return subscript(cur.id, idx[::-1])
        raise ExpressionError(f"unsupported syntax {type(node).__name__}" + where(node))

    return ev(tree.body)


def parse_unipoly(text: str, field=None, var: str = "s"):
    """Parse e.g. ``"3*s^2-1/2"`` into a :class:`~spectral_chow.unipoly.UniPoly`."""
    from .fields import QQ
    from .unipoly import UniPoly

    field = field or QQ

    def name(n):
        if n != var:
            raise ExpressionError(f"unknown variable {n!r} (expected {var!r})")
        return UniPoly([0, 1], field, var)

    def const(c):
        return UniPoly([field(c)], field, var)

    return evaluate(text, const=const, name=name)
