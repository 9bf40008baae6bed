"""Exact arithmetic layer: Gaussian rationals, multivariate polynomials, matrices.

Everything here is immutable and exact; no floats anywhere.  Polynomials live
in an open-ended list of named formal parameters (h, mu, c, M, lam, eps, ...)
with Gaussian-rational coefficients.  Matrix determinants are computed by the
fraction-free Bareiss scheme, so all intermediate divisions are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union


class NotDivisible(ArithmeticError):
    """Exact polynomial division requested but no polynomial quotient exists."""


class DivByZero(ZeroDivisionError):
    """Division by the zero polynomial."""


class NonSquare(ValueError):
    """Determinant of a non-square matrix requested."""


def _fr(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class GaussRat:
    """A Gaussian rational re + im*i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _fr(re))
        object.__setattr__(self, "im", _fr(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @staticmethod
    def of(x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        return GaussRat(_fr(x))

    def __add__(self, other):
        other = GaussRat.of(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussRat.of(other))

    def __rsub__(self, other):
        return GaussRat.of(other) + (-self)

    def __mul__(self, other):
        other = GaussRat.of(other)
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRat":
        n = self.norm2()
        if n == 0:
            raise DivByZero("inverse of zero")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussRat.of(other).inverse()

    def __rtruediv__(self, other):
        return GaussRat.of(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = GaussRat(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussRat(other)
        if not isinstance(other, GaussRat):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRat({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{_imag_str(abs(self.im))}"

    @staticmethod
    def parse(text: str) -> "GaussRat":
        """Inverse of str(); accepts forms like '-3/4', 'i', '1+i', '2-3/4i'."""
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty Gaussian rational")
        # Split into real and imaginary pieces on a +/- that is not leading.
        pivot = -1
        for k in range(1, len(s)):
            if s[k] in "+-" and s[k - 1] not in "+-/":
                pivot = k
        if s.endswith("i"):
            if pivot >= 0:
                re_part, im_part = s[:pivot], s[pivot:-1]
            else:
                re_part, im_part = "", s[:-1]
            if im_part in ("", "+"):
                im = Fraction(1)
            elif im_part == "-":
                im = Fraction(-1)
            else:
                im = Fraction(im_part.rstrip("*"))
            re = Fraction(re_part) if re_part else Fraction(0)
            return GaussRat(re, im)
        return GaussRat(Fraction(s))


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}i"


ONE = GaussRat(1)
ZERO = GaussRat(0)
I = GaussRat(0, 1)

# A monomial is a tuple of (parameter name, positive exponent) pairs sorted by
# name; the empty tuple is the constant monomial.
Monomial = Tuple[Tuple[str, int], ...]

Scalar = Union[int, Fraction, GaussRat, "CoeffPoly"]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged: Dict[str, int] = dict(a)
    for name, e in b:
        merged[name] = merged.get(name, 0) + e
    return tuple(sorted(merged.items()))


def _mono_deg(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when monomial a divides b."""
    db = dict(b)
    return all(db.get(name, 0) >= e for name, e in a)


def _mono_div(b: Monomial, a: Monomial) -> Monomial:
    db = dict(b)
    for name, e in a:
        db[name] -= e
    return tuple(sorted((n, e) for n, e in db.items() if e))


def _mono_key(m: Monomial):
    # Graded order: total degree first, then the name/exponent word.
    return (-_mono_deg(m), m)


class CoeffPoly:
    """Multivariate polynomial in named parameters over Gaussian rationals."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Dict[Monomial, GaussRat] = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = GaussRat.of(coeff)
                if not coeff.is_zero():
                    clean[mono] = coeff
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CoeffPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(x) -> "CoeffPoly":
        x = GaussRat.of(x)
        return CoeffPoly({(): x})

    @staticmethod
    def param(name: str, exp: int = 1) -> "CoeffPoly":
        if exp < 0:
            raise ValueError("parameter exponents must be non-negative")
        if exp == 0:
            return CoeffPoly.const(1)
        return CoeffPoly({((name, exp),): ONE})

    @staticmethod
    def of(x: Scalar) -> "CoeffPoly":
        if isinstance(x, CoeffPoly):
            return x
        return CoeffPoly.const(x)

    # -- ring ops ----------------------------------------------------------

    def __add__(self, other):
        other = CoeffPoly.of(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            cur = out.get(mono)
            if cur is None:
                out[mono] = coeff
            else:
                s = cur + coeff
                if s.is_zero():
                    del out[mono]
                else:
                    out[mono] = s
        return CoeffPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return CoeffPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-CoeffPoly.of(other))

    def __rsub__(self, other):
        return CoeffPoly.of(other) + (-self)

    def __mul__(self, other):
        other = CoeffPoly.of(other)
        if not self.terms or not other.terms:
            return CoeffPoly()
        out: Dict[Monomial, GaussRat] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                c = c1 * c2
                cur = out.get(mono)
                if cur is None:
                    out[mono] = c
                else:
                    s = cur + c
                    if s.is_zero():
                        del out[mono]
                    else:
                        out[mono] = s
        return CoeffPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        out = CoeffPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        # Division by an invertible scalar only; general division is exact_div.
        if isinstance(other, (int, Fraction, GaussRat)):
            return self * GaussRat.of(other).inverse()
        other = CoeffPoly.of(other)
        if other.is_constant():
            return self * other.constant_value().inverse()
        return self.exact_div(other)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self) -> GaussRat:
        if not self.terms:
            return ZERO
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return self.terms[()]

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(_mono_deg(m) for m in self.terms)

    def degree_in(self, name: str) -> int:
        deg = 0
        for mono in self.terms:
            for n, e in mono:
                if n == name:
                    deg = max(deg, e)
        return deg

    def params(self) -> Tuple[str, ...]:
        names = set()
        for mono in self.terms:
            for n, _ in mono:
                names.add(n)
        return tuple(sorted(names))

    def leading(self) -> Tuple[Monomial, GaussRat]:
        mono = min(self.terms, key=_mono_key)
        return mono, self.terms[mono]

    def coefficient(self, mono: Monomial) -> GaussRat:
        return self.terms.get(tuple(sorted(mono)), ZERO)

    def substitute(self, assignment: Dict[str, "CoeffPoly"]) -> "CoeffPoly":
        """Substitute polynomials for parameters (others left untouched)."""
        out = CoeffPoly()
        for mono, coeff in self.terms.items():
            term = CoeffPoly.const(coeff)
            for name, e in mono:
                repl = assignment.get(name)
                if repl is None:
                    term = term * CoeffPoly.param(name, e)
                else:
                    term = term * (CoeffPoly.of(repl) ** e)
            out = out + term
        return out

    # -- exact division ----------------------------------------------------

    def exact_div(self, other: "CoeffPoly") -> "CoeffPoly":
        other = CoeffPoly.of(other)
        if other.is_zero():
            raise DivByZero("polynomial division by zero")
        if self.is_zero():
            return CoeffPoly()
        lead_mono, lead_coeff = other.leading()
        rem = self
        quot: Dict[Monomial, GaussRat] = {}
        while not rem.is_zero():
            rmono, rcoeff = rem.leading()
            if not _mono_divides(lead_mono, rmono):
                raise NotDivisible(f"({self}) is not divisible by ({other})")
            qmono = _mono_div(rmono, lead_mono)
            qcoeff = rcoeff / lead_coeff
            quot[qmono] = quot.get(qmono, ZERO) + qcoeff
            rem = rem - CoeffPoly({qmono: qcoeff}) * other
        return CoeffPoly(quot)

    # -- equality / hashing / printing --------------------------------------

    def _key(self):
        return tuple(sorted(self.terms.items(), key=lambda kv: _mono_key(kv[0])))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRat)):
            other = CoeffPoly.of(other)
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self._key())
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"CoeffPoly({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts: List[str] = []
        for mono, coeff in self._key():
            factors = [f"{n}^{e}" if e > 1 else n for n, e in mono]
            if coeff == ONE and factors:
                head = ""
            elif coeff == GaussRat(-1) and factors:
                head = "-"
            else:
                cs = str(coeff)
                if ("+" in cs[1:]) or ("-" in cs[1:]):
                    cs = f"({cs})"
                head = cs if not factors else f"{cs}*"
            body = "*".join(factors)
            parts.append(head + body if factors else head)
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text


def parse_poly(text: str) -> CoeffPoly:
    """Parse a polynomial string such as '-2*mu^4 + 4*h*mu^2' or '3/2'."""
    tokens = _tokenize(text)
    poly, pos = _parse_sum(tokens, 0)
    if pos != len(tokens):
        raise ValueError(f"trailing input in polynomial: {text!r}")
    return poly


def _tokenize(text: str) -> List[str]:
    tokens: List[str] = []
    k = 0
    while k < len(text):
        ch = text[k]
        if ch.isspace():
            k += 1
        elif ch in "+-*^()":
            tokens.append(ch)
            k += 1
        elif ch.isdigit():
            j = k
            while j < len(text) and (text[j].isdigit() or text[j] == "/"):
                j += 1
            tokens.append(text[k:j])
            k = j
        elif ch.isalpha() or ch == "_":
            j = k
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[k:j])
            k = j
        else:
            raise ValueError(f"bad character {ch!r} in polynomial {text!r}")
    return tokens


def _parse_sum(tokens, pos):
    sign = 1
    while pos < len(tokens) and tokens[pos] in "+-":
        if tokens[pos] == "-":
            sign = -sign
        pos += 1
    poly, pos = _parse_product(tokens, pos)
    total = poly * sign
    while pos < len(tokens) and tokens[pos] in "+-":
        sign = 1
        while pos < len(tokens) and tokens[pos] in "+-":
            if tokens[pos] == "-":
                sign = -sign
            pos += 1
        poly, pos = _parse_product(tokens, pos)
        total = total + poly * sign
    return total, pos


def _parse_product(tokens, pos):
    poly, pos = _parse_power(tokens, pos)
    while pos < len(tokens) and tokens[pos] == "*":
        nxt, pos = _parse_power(tokens, pos + 1)
        poly = poly * nxt
    return poly, pos


def _parse_power(tokens, pos):
    poly, pos = _parse_atom(tokens, pos)
    if pos < len(tokens) and tokens[pos] == "^":
        if pos + 1 >= len(tokens) or not tokens[pos + 1][0].isdigit():
            raise ValueError("exponent expected after '^'")
        poly = poly ** int(tokens[pos + 1])
        pos += 2
    return poly, pos


def _parse_atom(tokens, pos):
    if pos >= len(tokens):
        raise ValueError("unexpected end of polynomial")
    tok = tokens[pos]
    if tok == "(":
        poly, pos = _parse_sum(tokens, pos + 1)
        if pos >= len(tokens) or tokens[pos] != ")":
            raise ValueError("unbalanced parenthesis")
        return poly, pos + 1
    if tok == "-":
        poly, pos = _parse_atom(tokens, pos + 1)
        return -poly, pos
    if tok[0].isdigit():
        return CoeffPoly.const(Fraction(tok)), pos + 1
    if tok == "i":
        return CoeffPoly.const(I), pos + 1
    return CoeffPoly.param(tok), pos + 1


class PolyMatrix:
    """Rectangular matrix of CoeffPoly entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[Scalar]]):
        rows = [[CoeffPoly.of(e) for e in row] for row in entries]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", len(rows[0]) if rows else 0)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for i in range(self.rows)]
                           for j in range(self.cols)])

    def swap_rows(self, i, j) -> "PolyMatrix":
        rows = [list(r) for r in self.entries]
        rows[i], rows[j] = rows[j], rows[i]
        return PolyMatrix(rows)

    def is_upper_triangular(self) -> bool:
        return all(self.entries[i][j].is_zero()
                   for i in range(self.rows) for j in range(min(i, self.cols)))

    def det_bareiss(self) -> CoeffPoly:
        """Fraction-free determinant; every internal division is exact."""
        if self.rows != self.cols:
            raise NonSquare(f"{self.rows}x{self.cols} matrix has no determinant")
        n = self.rows
        if n == 0:
            return CoeffPoly.const(1)
        a = [list(row) for row in self.entries]
        sign = 1
        prev = CoeffPoly.const(1)
        for k in range(n - 1):
            if a[k][k].is_zero():
                pivot_row = next((r for r in range(k + 1, n)
                                  if not a[r][k].is_zero()), None)
                if pivot_row is None:
                    return CoeffPoly()
                a[k], a[pivot_row] = a[pivot_row], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                    a[i][j] = num.exact_div(prev)
                a[i][k] = CoeffPoly()
            prev = a[k][k]
        det = a[n - 1][n - 1]
        return det if sign == 1 else -det

    def det_cofactor(self) -> CoeffPoly:
        """Naive cofactor expansion; the independent cross-check for small sizes."""
        if self.rows != self.cols:
            raise NonSquare(f"{self.rows}x{self.cols} matrix has no determinant")
        n = self.rows

        def expand(rows: List[List[CoeffPoly]]) -> CoeffPoly:
            m = len(rows)
            if m == 0:
                return CoeffPoly.const(1)
            if m == 1:
                return rows[0][0]
            total = CoeffPoly()
            for j in range(m):
                if rows[0][j].is_zero():
                    continue
                minor = [[row[k] for k in range(m) if k != j] for row in rows[1:]]
                piece = rows[0][j] * expand(minor)
                total = total + (piece if j % 2 == 0 else -piece)
            return total

        return expand([list(r) for r in self.entries])

    def __str__(self):
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]"
                         for row in self.entries)
