"""Matrix-valued differential operators with exact Laurent coefficients.

A term is  coeff * x^E * d^D * e_{row,col}  where E assigns each coordinate a
generalized exponent a + b*eps (a, b rational; the eps part is used by the
multi-diagonal realizations whose mode functions carry a formal exponent
shift), D is a multi-index of derivatives and e_{row,col} a matrix unit.
Composition applies the Leibniz rule exactly; there is no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .coeff import CoeffPoly, GaussRat

# generalized exponent: rational part + rational multiple of the formal 'eps'
Expo = Tuple[Fraction, Fraction]
EXPO_ZERO: Expo = (Fraction(0), Fraction(0))


class SizeMismatch(ValueError):
    """Operators over different coordinates or matrix sizes combined."""


def as_expo(x) -> Expo:
    if isinstance(x, tuple):
        return (Fraction(x[0]), Fraction(x[1]))
    return (Fraction(x), Fraction(0))


def _expo_add(a: Expo, b: Expo) -> Expo:
    return (a[0] + b[0], a[1] + b[1])


def _expo_sub_int(a: Expo, j: int) -> Expo:
    return (a[0] - j, a[1])


def _falling(expo: Expo, j: int) -> CoeffPoly:
    """expo*(expo-1)*...*(expo-j+1) as a polynomial in eps."""
    out = CoeffPoly.const(1)
    a, b = expo
    for i in range(j):
        factor = CoeffPoly.const(a - i)
        if b:
            factor = factor + CoeffPoly.param("eps") * b
        out = out * factor
        if out.is_zero():
            break
    return out


TermKey = Tuple[Tuple[Expo, ...], Tuple[int, ...], int, int]


class DiffOp:
    """Finite sum of exact differential-operator terms on named coordinates."""

    __slots__ = ("coords", "size", "terms")

    def __init__(self, coords: Sequence[str], size: int = 1,
                 terms: Dict[TermKey, CoeffPoly] = None):
        clean = {}
        if terms:
            for key, coeff in terms.items():
                coeff = CoeffPoly.of(coeff)
                if not coeff.is_zero():
                    clean[key] = coeff
        object.__setattr__(self, "coords", tuple(coords))
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("DiffOp is immutable")

    # -- construction --------------------------------------------------------

    @staticmethod
    def zero(coords: Sequence[str], size: int = 1) -> "DiffOp":
        return DiffOp(coords, size)

    @staticmethod
    def term(coords: Sequence[str], coeff, expos: Dict[str, object] = None,
             derivs: Dict[str, int] = None, slot: Tuple[int, int] = (0, 0),
             size: int = 1) -> "DiffOp":
        coords = tuple(coords)
        evec = [EXPO_ZERO] * len(coords)
        for name, e in (expos or {}).items():
            evec[coords.index(name)] = as_expo(e)
        dvec = [0] * len(coords)
        for name, k in (derivs or {}).items():
            if k < 0:
                raise ValueError("negative derivative order")
            dvec[coords.index(name)] = k
        key = (tuple(evec), tuple(dvec), slot[0], slot[1])
        return DiffOp(coords, size, {key: CoeffPoly.of(coeff)})

    @staticmethod
    def identity(coords: Sequence[str], size: int = 1) -> "DiffOp":
        out = {}
        for r in range(size):
            key = ((EXPO_ZERO,) * len(coords), (0,) * len(coords), r, r)
            out[key] = CoeffPoly.const(1)
        return DiffOp(coords, size, out)

    def with_matrix(self, matrix: Sequence[Sequence]) -> "DiffOp":
        """Tensor a scalar operator with a constant matrix (entries GaussRat-able)."""
        if self.size != 1:
            raise SizeMismatch("with_matrix expects a scalar operator")
        size = len(matrix)
        out: Dict[TermKey, CoeffPoly] = {}
        for (evec, dvec, _r, _c), coeff in self.terms.items():
            for r in range(size):
                for c in range(size):
                    entry = matrix[r][c]
                    entry = entry if isinstance(entry, CoeffPoly) else CoeffPoly.of(entry)
                    if entry.is_zero():
                        continue
                    key = (evec, dvec, r, c)
                    cur = out.get(key)
                    val = coeff * entry
                    out[key] = val if cur is None else cur + val
        return DiffOp(self.coords, size, out)

    # -- linear structure -----------------------------------------------------

    def _check(self, other: "DiffOp"):
        if self.coords != other.coords or self.size != other.size:
            raise SizeMismatch(f"{self.coords}x{self.size} vs "
                               f"{other.coords}x{other.size}")

    def __add__(self, other: "DiffOp") -> "DiffOp":
        self._check(other)
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            cur = out.get(key)
            if cur is None:
                out[key] = coeff
            else:
                s = cur + coeff
                if s.is_zero():
                    del out[key]
                else:
                    out[key] = s
        return DiffOp(self.coords, self.size, out)

    def __neg__(self):
        return DiffOp(self.coords, self.size,
                      {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> "DiffOp":
        factor = CoeffPoly.of(factor)
        return DiffOp(self.coords, self.size,
                      {k: c * factor for k, c in self.terms.items()})

    # -- composition ----------------------------------------------------------

    def __matmul__(self, other: "DiffOp") -> "DiffOp":
        self._check(other)
        ncoord = len(self.coords)
        out: Dict[TermKey, CoeffPoly] = {}
        for (e1, d1, r1, c1), coeff1 in self.terms.items():
            for (e2, d2, r2, c2), coeff2 in other.terms.items():
                if c1 != r2:
                    continue
                base = coeff1 * coeff2
                # Leibniz across every coordinate: d^{d1} o x^{e2}
                pieces = [(base, [], [])]  # (coeff, expo drops j_i, deriv keeps)
                for i in range(ncoord):
                    k = d1[i]
                    gamma = e2[i]
                    new_pieces = []
                    for coeff, drops, keeps in pieces:
                        if k == 0 or (gamma[0] == 0 and gamma[1] == 0):
                            new_pieces.append((coeff, drops + [0], keeps + [k]))
                            continue
                        for j in range(k + 1):
                            fall = _falling(gamma, j)
                            if fall.is_zero():
                                continue
                            c = coeff * fall * comb(k, j)
                            new_pieces.append((c, drops + [j], keeps + [k - j]))
                    pieces = new_pieces
                for coeff, drops, keeps in pieces:
                    evec = tuple(_expo_sub_int(_expo_add(e1[i], e2[i]), drops[i])
                                 for i in range(ncoord))
                    dvec = tuple(keeps[i] + d2[i] for i in range(ncoord))
                    key = (evec, dvec, r1, c2)
                    cur = out.get(key)
                    val = coeff if cur is None else cur + coeff
                    if val.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = val
        return DiffOp(self.coords, self.size, out)

    def commutator(self, other: "DiffOp") -> "DiffOp":
        return (self @ other) - (other @ self)

    # -- queries ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return (self.coords == other.coords and self.size == other.size
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.coords, self.size,
                     tuple(sorted(((k, c) for k, c in self.terms.items()),
                                  key=lambda kv: str(kv[0])))))

    def order(self) -> int:
        return max((sum(d) for (_e, d, _r, _c) in self.terms), default=0)

    def slot(self, r: int, c: int) -> "DiffOp":
        """Extract one matrix slot as a scalar operator."""
        out = {}
        for (evec, dvec, rr, cc), coeff in self.terms.items():
            if rr == r and cc == c:
                out[(evec, dvec, 0, 0)] = coeff
        return DiffOp(self.coords, 1, out)

    def deriv_part(self, derivs: Dict[str, int]) -> Dict[Tuple[Expo, ...], CoeffPoly]:
        """Coefficient of a given derivative monomial (scalar operators)."""
        dvec = [0] * len(self.coords)
        for name, k in derivs.items():
            dvec[self.coords.index(name)] = k
        dvec = tuple(dvec)
        out = {}
        for (evec, dv, _r, _c), coeff in self.terms.items():
            if dv == dvec:
                out[evec] = out.get(evec, CoeffPoly()) + coeff
        return {e: c for e, c in out.items() if not c.is_zero()}

    def max_deriv(self, coord: str) -> int:
        i = self.coords.index(coord)
        return max((d[i] for (_e, d, _r, _c) in self.terms), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (evec, dvec, r, c), coeff in sorted(
                self.terms.items(), key=lambda kv: str(kv[0])):
            factors = []
            cs = str(coeff)
            if " " in cs or "+" in cs[1:] or "-" in cs[1:]:
                cs = f"({cs})"
            if cs != "1":
                factors.append(cs)
            for name, e in zip(self.coords, evec):
                if e == EXPO_ZERO:
                    continue
                a, b = e
                txt = str(a) if b == 0 else (f"{a}+{b}*eps" if a else f"{b}*eps")
                factors.append(f"{name}^({txt})" if ("/" in txt or "+" in txt
                                                     or "-" in txt[1:] or b) else f"{name}^{txt}")
            for name, k in zip(self.coords, dvec):
                if k == 1:
                    factors.append(f"d_{name}")
                elif k > 1:
                    factors.append(f"d_{name}^{k}")
            if self.size > 1:
                factors.append(f"E[{r},{c}]")
            parts.append("*".join(factors) if factors else "1")
        return " + ".join(parts)


def linear_substitute(op: DiffOp, new_coords: Sequence[str],
                      coord_images: Dict[str, Dict[str, GaussRat]],
                      deriv_images: Dict[str, Dict[str, GaussRat]]) -> DiffOp:
    """Rewrite an operator under an invertible linear coordinate change.

    coord_images[x] expresses the old coordinate x as a linear combination of
    new coordinates; deriv_images[x] expresses d/dx likewise.  Requires all
    coefficient exponents of `op` to be non-negative integers.
    """
    eye = [[1 if i == j else 0 for j in range(op.size)] for i in range(op.size)]
    out = DiffOp.zero(new_coords, op.size)
    for (evec, dvec, r, c), coeff in op.terms.items():
        piece = DiffOp.term(new_coords, coeff, slot=(r, c), size=op.size)
        for name, e in zip(op.coords, evec):
            if e[1] != 0 or e[0].denominator != 1 or e[0] < 0:
                raise ValueError("linear_substitute needs polynomial coefficients")
            lin = DiffOp.zero(new_coords, op.size)
            for new_name, factor in coord_images[name].items():
                lin = lin + DiffOp.term(new_coords, CoeffPoly.of(factor),
                                        expos={new_name: 1}, size=1).with_matrix(eye)
            for _ in range(int(e[0])):
                piece = piece @ lin
        for name, k in zip(op.coords, dvec):
            if k == 0:
                continue
            dlin = DiffOp.zero(new_coords, op.size)
            for new_name, factor in deriv_images[name].items():
                dlin = dlin + DiffOp.term(new_coords, CoeffPoly.of(factor),
                                          derivs={new_name: 1}, size=1).with_matrix(eye)
            for _ in range(k):
                piece = piece @ dlin
        out = out + piece
    return out
