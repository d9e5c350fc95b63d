"""Sum-of-products expressions over Z_k.

Surface grammar (ASCII rendering of the usual typeset notation):

    expr    :=  term (("+" | "⊕") term)*
    term    :=  factor ("*" factor)*
    factor  :=  "x" index ["^" digit]  |  number

"x3" is the ring value of variable 3; "x3^a" is the indicator that equals 1
when x3 = a and 0 otherwise; a bare number is a constant of Z_k.  "+" and
"*" are addition and multiplication mod k; whitespace is ignored.  For k = 2
the indicator x^1 coincides with x and x^0 with the complement of x.
"""

from __future__ import annotations

from .kfun import KFunction


class SPSyntaxError(ValueError):
    """Parse failure; `position` is the 0-based offset in the input."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Parser:
    def __init__(self, text: str, k: int):
        self.text = text
        self.k = k
        self.pos = 0

    def error(self, msg: str):
        raise SPSyntaxError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_number(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a number")
        return int(self.text[start:self.pos])

    def factor(self):
        ch = self.peek()
        if ch == "x":
            self.pos += 1
            at = self.pos
            index = self.take_number()
            if index < 1:
                self.pos = at
                self.error("variable index must be >= 1")
            if self.peek() == "^":
                self.pos += 1
                at = self.pos
                alpha = self.take_number()
                if alpha >= self.k:
                    self.pos = at
                    self.error(f"exponent {alpha} out of range for k={self.k}")
                return ("ind", index, alpha)
            return ("var", index)
        if ch.isdigit():
            at = self.pos
            value = self.take_number()
            if value >= self.k:
                self.pos = at
                self.error(f"constant {value} out of range for k={self.k}")
            return ("const", value)
        self.error("expected a variable or constant")

    def term(self):
        factors = [self.factor()]
        while self.peek() == "*":
            self.pos += 1
            factors.append(self.factor())
        return factors

    def expression(self):
        terms = [self.term()]
        while self.peek() in ("+", "⊕"):
            self.pos += 1
            terms.append(self.term())
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")
        return terms


def _eval_term(factors, point, k: int) -> int:
    prod = 1
    for fac in factors:
        if fac[0] == "var":
            prod = prod * point[fac[1] - 1] % k
        elif fac[0] == "ind":
            prod = prod * (1 if point[fac[1] - 1] == fac[2] else 0) % k
        else:
            prod = prod * fac[1] % k
        if prod == 0:
            return 0
    return prod


def parse(text: str, k: int, arity: int | None = None) -> KFunction:
    """Parse an SP expression into its truth table.

    The arity defaults to the largest variable index in the expression;
    passing `arity` pads with (inessential) trailing variables.
    """
    terms = _Parser(text, k).expression()
    max_index = max((fac[1] for t in terms for fac in t if fac[0] != "const"),
                    default=0)
    n = max_index if arity is None else arity
    if n < max_index:
        raise ValueError(f"expression uses x{max_index} but arity is {n}")

    vals = bytearray(k ** n)
    point = [0] * n
    for idx in range(k ** n):
        m = idx
        for i in range(n):
            m, point[i] = divmod(m, k)
        vals[idx] = sum(_eval_term(t, point, k) for t in terms) % k
    return KFunction(k, n, vals)


def to_sp(f: KFunction) -> str:
    """Canonical full SP form: one indicator product per non-zero table entry."""
    if f.n == 0:
        return str(f.values[0])
    terms = []
    for idx, v in enumerate(f.values):
        if v == 0:
            continue
        m = idx
        factors = []
        for i in range(1, f.n + 1):
            m, a = divmod(m, f.k)
            factors.append(f"x{i}^{a}")
        coeff = "" if v == 1 else f"{v}*"
        terms.append(coeff + "*".join(factors))
    return " + ".join(terms) if terms else "0"
