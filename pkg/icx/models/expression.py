"""
1-expressions: binary trees over the constant 1 with sum and product nodes.

Text form is fully parenthesized except that a left-nested chain of the same
operator is written flat, e.g. ((1+1)+1) renders as (1+1+1):

    expr  := "1" | "(" expr ("+" expr)+ ")" | "(" expr ("*" expr)+ ")"

Chains parse left-associatively, so parse(render(e)) == e.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from icx.errors import ExpressionSyntaxError
from icx.table.complexity_table import ComplexityTable

ONE_KIND = "ONE"
SUM_KIND = "SUM"
PROD_KIND = "PROD"

_OPERATORS = {SUM_KIND: "+", PROD_KIND: "*"}
_KINDS = {"+": SUM_KIND, "*": PROD_KIND}


@dataclass(frozen=True, eq=False, repr=False)
class Expression:
    kind: str
    left: Optional["Expression"] = None
    right: Optional["Expression"] = None
    value: int = field(default=1, init=False)
    ones: int = field(default=1, init=False)
    depth: int = field(default=0, init=False)
    digest: int = field(default=0, init=False)

    def __post_init__(self):
        if self.kind == ONE_KIND:
            if self.left is not None or self.right is not None:
                raise ValueError("ONE has no children")
            object.__setattr__(self, "digest", hash(ONE_KIND))
            return
        if self.kind not in _OPERATORS or self.left is None or self.right is None:
            raise ValueError(f"bad expression node {self.kind!r}")
        if self.kind == SUM_KIND:
            value = self.left.value + self.right.value
        else:
            value = self.left.value * self.right.value
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "ones", self.left.ones + self.right.ones)
        object.__setattr__(self, "depth", 1 + max(self.left.depth, self.right.depth))
        object.__setattr__(self, "digest", hash((self.kind, self.left.digest, self.right.digest)))

    def __eq__(self, other: object) -> bool:
        # explicit stack: synthesized trees run deeper than the recursion limit
        if not isinstance(other, Expression):
            return NotImplemented
        pending = [(self, other)]
        while pending:
            a, b = pending.pop()
            if a is b:
                continue
            if (a.kind, a.digest, a.ones, a.depth) != (b.kind, b.digest, b.ones, b.depth) or a.value != b.value:
                return False
            if a.kind != ONE_KIND:
                pending.append((a.left, b.left))
                pending.append((a.right, b.right))
        return True

    def __hash__(self) -> int:
        return self.digest

    def __repr__(self) -> str:
        return f"Expression({self.kind}, value={self.value}, ones={self.ones})"

    def __add__(self, other: "Expression") -> "Expression":
        return Expression(SUM_KIND, self, other)

    def __mul__(self, other: "Expression") -> "Expression":
        return Expression(PROD_KIND, self, other)

    def __str__(self) -> str:
        return render(self)


ONE = Expression(ONE_KIND)
TWO = ONE + ONE


def evaluate(e: Expression) -> int:
    """Exact value of an expression (arbitrary precision)."""
    return e.value


def ones(e: Expression) -> int:
    """Number of 1 leaves."""
    return e.ones


class ExpressionBuilder:
    """
    Reconstructs optimal expressions from a complexity table, caching
    sub-expressions so repeated requests share nodes.

    Ties: the smallest divisor d >= 2 with ||d|| + ||n/d|| = ||n|| wins;
    otherwise the smallest a with ||a|| + ||n-a|| = ||n||, built as
    (n-a) + a.
    """

    def __init__(self, table: ComplexityTable):
        self.table = table
        self._cache: Dict[int, Expression] = {1: ONE}

    def build(self, n: int) -> Expression:
        target = self.table.query(n)
        cached = self._cache.get(n)
        if cached is not None:
            return cached
        costs = self.table.costs
        split = None
        d = 2
        while d * d <= n:
            if n % d == 0 and int(costs[d - 1]) + int(costs[n // d - 1]) == target:
                split = (PROD_KIND, d, n // d)
                break
            d += 1
        if split is None:
            for a in range(1, n // 2 + 1):
                if int(costs[a - 1]) + int(costs[n - a - 1]) == target:
                    split = (SUM_KIND, n - a, a)
                    break
        if split is None:
            raise ValueError(f"table entry for {n} is not attained by any split")
        kind, left, right = split
        expr = Expression(kind, self.build(left), self.build(right))
        self._cache[n] = expr
        return expr


def reconstruct(table: ComplexityTable, n: int) -> Expression:
    """
    Optimal expression for n with exactly ||n|| ones.

    Args:
        table: Complexity table covering n
        n: Target value

    Returns:
        Expression e with value n and ones(e) = ||n||
    """
    return ExpressionBuilder(table).build(n)


def binary_expression(n: int) -> Expression:
    """Horner expression of the binary expansion: 1, then x(1+1) and +1 per bit."""
    if n < 1:
        raise ValueError("n must be positive")
    bits = bin(n)[3:]
    expr = ONE
    for bit in bits:
        expr = expr * TWO
        if bit == "1":
            expr = expr + ONE
    return expr


def binary_cost(n: int) -> int:
    """ones(binary_expression(n)) without building the tree."""
    if n < 1:
        raise ValueError("n must be positive")
    length = n.bit_length()
    return 1 + 2 * (length - 1) + bin(n).count("1") - 1


def _chain(e: Expression) -> List[Expression]:
    """Operands of the left-nested chain of e's operator, leftmost first."""
    operands: List[Expression] = []
    node = e
    while node.kind == e.kind:
        operands.append(node.right)
        node = node.left
    operands.append(node)
    operands.reverse()
    return operands


def render(e: Expression) -> str:
    """Text form of an expression (see the module grammar)."""
    out: List[str] = []
    pending: List[object] = [e]
    while pending:
        item = pending.pop()
        if isinstance(item, str):
            out.append(item)
        elif item.kind == ONE_KIND:
            out.append("1")
        else:
            operands = _chain(item)
            operator = _OPERATORS[item.kind]
            pending.append(")")
            for i, operand in enumerate(reversed(operands)):
                if i:
                    pending.append(operator)
                pending.append(operand)
            pending.append("(")
    return "".join(out)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> Expression:
        # each open frame holds [operand so far, operator or None]
        frames: List[list] = []
        while True:
            char = self.peek()
            if char == "(":
                self.pos += 1
                frames.append([None, None])
                continue
            if char != "1":
                raise ExpressionSyntaxError("expected '1' or '('", self.pos)
            self.pos += 1
            node = ONE
            while frames:
                frame = frames[-1]
                frame[0] = node if frame[0] is None else Expression(_KINDS[frame[1]], frame[0], node)
                char = self.peek()
                if frame[1] is None:
                    if char not in _KINDS:
                        raise ExpressionSyntaxError("expected '+' or '*'", self.pos)
                    frame[1] = char
                if char == frame[1]:
                    self.pos += 1
                    break
                if char != ")":
                    raise ExpressionSyntaxError("expected ')'", self.pos)
                self.pos += 1
                node = frames.pop()[0]
            else:
                return node


def parse(text: str) -> Expression:
    """
    Parse expression text.

    Raises:
        ExpressionSyntaxError: With the offset of the first offending character
    """
    parser = _Parser(text)
    expr = parser.expr()
    if parser.pos != len(text):
        raise ExpressionSyntaxError("unexpected trailing input", parser.pos)
    return expr
