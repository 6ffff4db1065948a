"""A small expression language for boundary functions.

Grammar: the variable ``z``, the calls ``conj(.)`` and ``abs2(.)``, numeric
literals (``2``, ``0.25``, ``1e-3``, imaginary ``2i`` / ``2j`` / ``i``),
``+ - * / ^`` and parentheses.  Exponents must be integer literals.

Parsing is delegated to :mod:`ast` after a couple of textual rewrites; only a
whitelisted set of node types is accepted.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import least_squares

from .errors import ExpressionError, PoleOnBoundary

POLE_TOL = 1e-12

_IMAG_LITERAL = re.compile(r"(?<![\w.])(\d+\.?\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?)i\b")

Evaluator = Callable[[np.ndarray], np.ndarray]


def _normalize(text: str) -> str:
    text = text.replace("−", "-").replace("^", "**")
    text = _IMAG_LITERAL.sub(r"\1j", text)
    return text


@dataclass(frozen=True)
class Expression:
    """A compiled expression.  Calling it evaluates pointwise on complex arrays."""

    source: str
    func: Evaluator = field(repr=False, compare=False)
    denominators: tuple[Evaluator, ...] = field(repr=False, compare=False, default=())

    def __call__(self, z):
        return self.func(np.asarray(z, dtype=complex))

    def check_poles(self, circles, dense: int = 4096, tol: float = POLE_TOL):
        """Raise PoleOnBoundary if any denominator gets within ``tol`` of zero on
        one of ``circles``."""
        theta = 2 * np.pi * np.arange(dense) / dense
        step = 2 * np.pi / dense
        for circle in circles:
            for den in self.denominators:
                with np.errstate(all="ignore"):
                    vals = np.abs(den(circle.point(theta)))
                if not np.all(np.isfinite(vals)):
                    raise PoleOnBoundary(f"{self.source!r} is singular on a boundary circle")
                i = int(np.argmin(vals))
                best = vals[i]
                if best > tol:
                    # |den| is V-shaped at a zero; fit Re/Im jointly instead of the modulus
                    def parts(t):
                        v = den(np.atleast_1d(circle.point(t[0])))[0]
                        return [v.real, v.imag]

                    res = least_squares(parts, [theta[i]], bounds=([theta[i] - step], [theta[i] + step]),
                                        xtol=1e-15, ftol=1e-15, gtol=1e-15)
                    best = min(best, float(np.hypot(*res.fun)))
                if best <= tol:
                    raise PoleOnBoundary(
                        f"denominator of {self.source!r} vanishes on the circle "
                        f"|z - {circle.center}| = {circle.radius}")


class _Compiler:
    def __init__(self, source: str):
        self.source = source
        self.denominators: list[Evaluator] = []

    def fail(self, node, msg="unsupported construct"):
        raise ExpressionError(f"{msg} in {self.source!r}: {ast.dump(node)[:60]}")

    def compile(self, node) -> Evaluator:
        if isinstance(node, ast.Expression):
            return self.compile(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, (int, float, complex)):
                self.fail(node, "non-numeric literal")
            c = complex(node.value)
            return lambda z: np.full(z.shape, c)
        if isinstance(node, ast.Name):
            if node.id == "z":
                return lambda z: z
            if node.id in ("i", "j"):
                return lambda z: np.full(z.shape, 1j)
            self.fail(node, f"unknown name {node.id!r}")
        if isinstance(node, ast.UnaryOp):
            inner = self.compile(node.operand)
            if isinstance(node.op, ast.USub):
                return lambda z: -inner(z)
            if isinstance(node.op, ast.UAdd):
                return inner
            self.fail(node)
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or len(node.args) != 1 or node.keywords:
                self.fail(node, "only conj(x) and abs2(x) calls are allowed")
            arg = self.compile(node.args[0])
            if node.func.id == "conj":
                return lambda z: np.conj(arg(z))
            if node.func.id == "abs2":
                return lambda z: np.abs(arg(z)) ** 2 + 0j
            self.fail(node, f"unknown function {node.func.id!r}")
        if isinstance(node, ast.BinOp):
            return self._binop(node)
        self.fail(node)

    def _binop(self, node) -> Evaluator:
        left = self.compile(node.left)
        if isinstance(node.op, ast.Pow):
            k = self._int_exponent(node.right)
            if k < 0:
                self.denominators.append(left)
            return lambda z: left(z) ** k
        right = self.compile(node.right)
        op = node.op
        if isinstance(op, ast.Add):
            return lambda z: left(z) + right(z)
        if isinstance(op, ast.Sub):
            return lambda z: left(z) - right(z)
        if isinstance(op, ast.Mult):
            return lambda z: left(z) * right(z)
        if isinstance(op, ast.Div):
            self.denominators.append(right)
            return lambda z: left(z) / right(z)
        self.fail(node)

    def _int_exponent(self, node) -> int:
        sign = 1
        while isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            if isinstance(node.op, ast.USub):
                sign = -sign
            node = node.operand
        if (isinstance(node, ast.Constant) and isinstance(node.value, (int, float))
                and not isinstance(node.value, bool) and float(node.value).is_integer()):
            return sign * int(node.value)
        self.fail(node, "exponent must be an integer literal")


def parse_expression(text: str) -> Expression:
    try:
        tree = ast.parse(_normalize(text.strip()), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from None
    comp = _Compiler(text)
    func = comp.compile(tree)
    return Expression(text, func, tuple(comp.denominators))
