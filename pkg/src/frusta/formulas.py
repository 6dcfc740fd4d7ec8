"""
Closed-form frustum and pyramid volume rules, and step-by-step traces of the
two historical evaluation schedules.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import InvalidParameters
from .exact import Q, render_rational

# one zhang is ten chi
ZHANG_IN_CHI = 10


class FormulaId(str, Enum):
    F_T = "F_T"
    F_TA = "F_TA"
    F_P = "F_P"
    GUNN_PEET_FACTORED = "GUNN_PEET_FACTORED"


def evaluate_formula(fid: FormulaId, a, b, h) -> Fraction:
    """Exact value of the chosen rule.  ``b`` is ignored by F_P and may be None there."""
    fid = FormulaId(fid)
    a, h = Q(a), Q(h)
    if h <= 0:
        raise InvalidParameters("invalid parameters: h must be positive")
    if fid is FormulaId.F_P:
        if a <= 0:
            raise InvalidParameters("invalid parameters: a must be positive")
        return h / 3 * a * a
    b = Q(b)
    if b < 0:
        raise InvalidParameters("invalid parameters: b must be non-negative")
    if a <= b:
        raise InvalidParameters("invalid parameters: a must exceed b")
    if fid is FormulaId.F_T:
        return h / 3 * (a * a + a * b + b * b)
    if fid is FormulaId.F_TA:
        return h * a * b + h / 3 * (a - b) ** 2
    return h * (a * b + Fraction(1, 3) * (a - b) ** 2)


ADD, MUL, DIV = "add", "mul", "div"


@dataclass(frozen=True)
class Step:
    """One line of a schedule; ``ops`` lists the arithmetic events it performs."""

    label: str
    value: Fraction
    ops: Tuple[str, ...] = ()


@dataclass(frozen=True)
class AlgorithmTrace:
    style: str
    steps: Tuple[Step, ...] = ()
    unit_label: Optional[str] = None

    @property
    def values(self) -> List[Fraction]:
        return [s.value for s in self.steps]

    @property
    def final(self) -> Fraction:
        return self.steps[-1].value

    @property
    def op_counts(self) -> Tuple[int, int, int]:
        return op_count(self)

    def render(self, decimals: bool = True) -> str:
        unit = f" ({self.unit_label})" if self.unit_label else ""
        lines = [f"{self.style} trace{unit}"]
        width = max((len(s.label) for s in self.steps), default=0)
        for i, s in enumerate(self.steps, 1):
            line = f"{i:>2}. {s.label:<{width}}  {render_rational(s.value)}"
            if decimals and s.value.denominator != 1:
                line += f"  ≈ {float(s.value):.6f}"
            lines.append(line)
        return "\n".join(lines)


def _frustum_args(a, b, h):
    a, b, h = Q(a), Q(b), Q(h)
    if h <= 0:
        raise InvalidParameters("invalid parameters: h must be positive")
    if b <= 0:
        raise InvalidParameters("invalid parameters: b must be positive")
    if a <= b:
        raise InvalidParameters("invalid parameters: a must exceed b")
    return a, b, h


def moscow_trace(a, b, h, unit: Optional[str] = None) -> AlgorithmTrace:
    """Square a, multiply a by b, square b, add, take a third of h, multiply."""
    a, b, h = _frustum_args(a, b, h)
    a2, ab, b2 = a * a, a * b, b * b
    total = a2 + ab + b2
    third = h / 3
    steps = (
        Step("square a", a2, (MUL,)),
        Step("multiply a by b", ab, (MUL,)),
        Step("square b", b2, (MUL,)),
        Step("add the three results", total, (ADD, ADD)),
        Step("take 1/3 of h", third, (DIV,)),
        Step("multiply the sum by h/3", third * total, (MUL,)),
    )
    return AlgorithmTrace("moscow", steps, unit)


def nine_chapters_trace(a, b, h, unit: Optional[str] = None) -> AlgorithmTrace:
    """Same products and sum, then times h, and only at the end divide by 3."""
    a, b, h = _frustum_args(a, b, h)
    a2, ab, b2 = a * a, a * b, b * b
    total = a2 + ab + b2
    steps = (
        Step("square a", a2, (MUL,)),
        Step("multiply a by b", ab, (MUL,)),
        Step("square b", b2, (MUL,)),
        Step("add the three results", total, (ADD, ADD)),
        Step("multiply by h", total * h, (MUL,)),
        Step("divide by 3", total * h / 3, (DIV,)),
    )
    return AlgorithmTrace("nine_chapters", steps, unit)


def op_count(t: AlgorithmTrace) -> Tuple[int, int, int]:
    """(additions, multiplications, divisions) in the step list."""
    ops = [o for s in t.steps for o in s.ops]
    return ops.count(ADD), ops.count(MUL), ops.count(DIV)


@dataclass(frozen=True)
class IdentityResult:
    name: str
    left: Fraction
    right: Fraction

    @property
    def ok(self) -> bool:
        return self.left == self.right


def identity_checks(a, b) -> List[IdentityResult]:
    """The plane identity behind F_TA and the cube-difference identity, checked exactly."""
    a, b = Q(a), Q(b)
    return [
        IdentityResult("3ab + (a-b)^2 = a^2 + ab + b^2", 3 * a * b + (a - b) ** 2, a * a + a * b + b * b),
        IdentityResult("(a-b)(a^2 + ab + b^2) = a^3 - b^3", (a - b) * (a * a + a * b + b * b), a ** 3 - b ** 3),
    ]


def zhang_to_chi(x) -> Fraction:
    return Q(x) * ZHANG_IN_CHI
