"""Concrete realizations by differential operators, and their exact checks.

Covers the vector-field realization on (t, r, zeta), the mass realizations on
(t, r), the 2x2 spinor realization, the multi-diagonal d x d realizations and
their intertwining with the triangular operator nabla, coinduced modules, the
Cartan prolongation, the coadjoint action on density triples, and the
embedding of the Schroedinger algebra into the complexified conformal algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .coeff import CoeffPoly, GaussRat, I as IMAG
from .diffop import DiffOp, Expo, as_expo, linear_substitute
from . import liealg as la
from . import linalg
from .liealg import GenSymbol, LieElement, InvalidSymbol
from .report import SuiteReport


class NotFirstOrder(ValueError):
    """Generator outside the families acting on Schroedinger operators."""


class NoSolution(ValueError):
    """A conjugation/intertwining identity admits no solution (checked outcome)."""


class DecompositionError(ValueError):
    """Operator does not lie in the expected affine space."""


MASS = CoeffPoly.param("M")
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class RepId:
    """Selector for an implemented representation."""

    name: str
    d: int = 1
    params: Tuple[Tuple[str, CoeffPoly], ...] = ()
    preset: str = ""

    def param(self, key: str) -> CoeffPoly:
        for name, value in self.params:
            if name == key:
                return value
        return CoeffPoly.param(key)

    def __str__(self):
        bits = [self.name]
        if self.preset:
            bits.append(self.preset)
        if self.d != 1:
            bits.append(f"d={self.d}")
        bits.extend(f"{k}={v}" for k, v in self.params)
        return ":".join(bits[:1]) + ("(" + ", ".join(bits[1:]) + ")" if bits[1:] else "")


def pi_tilde(d: int = 1) -> RepId:
    return RepId("pi_tilde", d)


def pi_lambda(lam=None) -> RepId:
    lam = CoeffPoly.param("lam") if lam is None else CoeffPoly.of(lam)
    return RepId("pi_lambda", 1, (("lam", lam),))


def dirac_sigma(lam=None) -> RepId:
    lam = CoeffPoly.param("lam") if lam is None else CoeffPoly.of(lam)
    return RepId("dirac_sigma", 1, (("lam", lam),))


def md(eps=None, d: int = 3) -> RepId:
    eps = CoeffPoly.param("eps") if eps is None else CoeffPoly.of(eps)
    return RepId("md", d, (("eps", eps),))


def coinduced(preset: str, lam=None) -> RepId:
    params = ()
    if lam is not None:
        params = (("lam", CoeffPoly.of(lam)),)
    elif preset in ("scalar_weight", "dirac"):
        params = (("lam", CoeffPoly.param("lam")),)
    return RepId("coinduced", 1, params, preset)


def conformal(d: int = 1) -> RepId:
    return RepId("conformal", d)


def rep_coords(rep: RepId) -> Tuple[str, ...]:
    if rep.name == "pi_tilde":
        rs = ("r",) if rep.d == 1 else tuple(f"r{i}" for i in range(1, rep.d + 1))
        return ("t",) + rs + ("zeta",)
    if rep.name in ("pi_lambda", "dirac_sigma"):
        return ("t", "r")
    if rep.name == "md":
        if rep.d == 2:
            return ("t", "r")
        if rep.d == 3:
            return ("t", "r", "zeta")
        return tuple(f"t{i}" for i in range(rep.d))
    if rep.name == "coinduced":
        return ("t", "r", "zeta")
    if rep.name == "conformal":
        return tuple(f"x{i}" for i in range(1, rep.d + 3))
    raise InvalidSymbol(f"unknown representation {rep.name}")


def rep_size(rep: RepId) -> int:
    if rep.name == "dirac_sigma":
        return 2
    if rep.name == "md":
        return rep.d
    if rep.name == "coinduced":
        return len(_preset_matrices(rep)[0])
    return 1


# ---------------------------------------------------------------------------
# generator formulas (function form: the time profile is the monomial t^a)


def _sv_function_exponent(g: GenSymbol) -> Fraction:
    """Mode -> monomial exponent: L_n ~ t^{n+1}, Y_m ~ t^{m+1/2}, M_p ~ t^p."""
    if g.family == la.L_FAMILY:
        return g.mode + 1
    if g.family == la.Y_FAMILY:
        return g.mode + HALF
    if g.family == la.M_FAMILY:
        return g.mode
    if g.family == la.R_FAMILY:
        return g.mode
    raise InvalidSymbol(f"no vector-field profile for {g}")


def rep_generator(rep: RepId, g: GenSymbol) -> DiffOp:
    """The displayed operator for a basis generator of the relevant algebra."""
    if rep.name == "pi_tilde":
        return _pi_tilde_gen(rep, g)
    if rep.name == "pi_lambda":
        return _pi_lambda_gen(rep.param("lam"), g.family,
                              _sv_function_exponent(g))
    if rep.name == "dirac_sigma":
        return _dirac_gen(rep.param("lam"), g.family, _sv_function_exponent(g))
    if rep.name == "md":
        level = {la.L_FAMILY: 0, la.Y_FAMILY: 1, la.M_FAMILY: 2}[g.family]
        if level >= rep.d:
            raise InvalidSymbol(f"{g} has no level in md d={rep.d}")
        expo = (g.mode + 1, Fraction(level))
        return md_generator(rep, level, expo)
    if rep.name == "coinduced":
        return coinduced_generator(rep, g.family, _sv_function_exponent(g))
    if rep.name == "conformal":
        return conformal_image(rep.d, g)
    raise InvalidSymbol(f"unknown representation {rep.name}")


def _pi_tilde_gen(rep: RepId, g: GenSymbol) -> DiffOp:
    coords = rep_coords(rep)
    d = rep.d
    rs = coords[1:-1]
    a = _sv_function_exponent(g)
    out = DiffOp.zero(coords)
    if g.family == la.L_FAMILY:
        out = out + DiffOp.term(coords, -1, expos={"t": a}, derivs={"t": 1})
        if a != 0:
            for r in rs:
                out = out + DiffOp.term(coords, -a * HALF,
                                        expos={"t": a - 1, r: 1}, derivs={r: 1})
        if a * (a - 1) != 0:
            for r in rs:
                out = out + DiffOp.term(coords, -a * (a - 1) * Fraction(1, 4),
                                        expos={"t": a - 2, r: 2},
                                        derivs={"zeta": 1})
        return out
    if g.family == la.Y_FAMILY:
        r = rs[0] if d == 1 else f"r{g.i}"
        out = out + DiffOp.term(coords, -1, expos={"t": a}, derivs={r: 1})
        if a != 0:
            out = out + DiffOp.term(coords, -a, expos={"t": a - 1, r: 1},
                                    derivs={"zeta": 1})
        return out
    if g.family == la.M_FAMILY:
        return DiffOp.term(coords, -1, expos={"t": a}, derivs={"zeta": 1})
    if g.family == la.R_FAMILY:
        # sign chosen so the rotation rows of the bracket table hold
        ri, rj = f"r{g.i}", f"r{g.j}"
        return (DiffOp.term(coords, 1, expos={"t": a, ri: 1}, derivs={rj: 1})
                - DiffOp.term(coords, 1, expos={"t": a, rj: 1}, derivs={ri: 1}))
    raise InvalidSymbol(f"{g} not in the vector-field realization")


def _pi_lambda_gen(lam: CoeffPoly, family: str, a: Fraction) -> DiffOp:
    coords = ("t", "r")
    if family == la.L_FAMILY:
        out = DiffOp.term(coords, -1, expos={"t": a}, derivs={"t": 1})
        if a != 0:
            out = out + DiffOp.term(coords, -a * HALF, expos={"t": a - 1, "r": 1},
                                    derivs={"r": 1})
            out = out + DiffOp.term(coords, -lam * a, expos={"t": a - 1})
        if a * (a - 1) != 0:
            out = out + DiffOp.term(coords, MASS * Fraction(-1, 4) * a * (a - 1),
                                    expos={"t": a - 2, "r": 2})
        return out
    if family == la.Y_FAMILY:
        out = DiffOp.term(coords, -1, expos={"t": a}, derivs={"r": 1})
        if a != 0:
            out = out + DiffOp.term(coords, -MASS * a, expos={"t": a - 1, "r": 1})
        return out
    if family == la.M_FAMILY:
        return DiffOp.term(coords, -MASS, expos={"t": a})
    raise NotFirstOrder(f"family {family} not realized here")


E21 = ((0, 0), (1, 0))


def _dirac_gen(lam: CoeffPoly, family: str, a: Fraction) -> DiffOp:
    coords = ("t", "r")
    eye = ((1, 0), (0, 1))
    if family == la.L_FAMILY:
        scal = DiffOp.term(coords, -1, expos={"t": a}, derivs={"t": 1})
        if a != 0:
            scal = scal + DiffOp.term(coords, -a * HALF,
                                      expos={"t": a - 1, "r": 1}, derivs={"r": 1})
        if a * (a - 1) != 0:
            scal = scal + DiffOp.term(coords, -MASS * Fraction(1, 4) * a * (a - 1),
                                      expos={"t": a - 2, "r": 2})
        out = scal.with_matrix(eye)
        if a != 0:
            dia = ((lam - Fraction(1, 4), CoeffPoly()),
                   (CoeffPoly(), lam + Fraction(1, 4)))
            out = out + DiffOp.term(coords, -a, expos={"t": a - 1},
                                    size=1).with_matrix(dia)
        if a * (a - 1) != 0:
            out = out + DiffOp.term(coords, -HALF * a * (a - 1),
                                    expos={"t": a - 2, "r": 1},
                                    size=1).with_matrix(E21)
        return out
    if family == la.Y_FAMILY:
        scal = DiffOp.term(coords, -1, expos={"t": a}, derivs={"r": 1})
        if a != 0:
            scal = scal + DiffOp.term(coords, -MASS * a, expos={"t": a - 1, "r": 1})
        out = scal.with_matrix(eye)
        if a != 0:
            out = out + DiffOp.term(coords, -a, expos={"t": a - 1},
                                    size=1).with_matrix(E21)
        return out
    if family == la.M_FAMILY:
        return DiffOp.term(coords, -MASS, expos={"t": a}, size=1).with_matrix(eye)
    raise NotFirstOrder(f"family {family} not realized here")


# ---------------------------------------------------------------------------
# multi-diagonal realizations


def md_generator(rep: RepId, level: int, expo) -> DiffOp:
    """Level-k generator with time profile t^expo (expo may carry an eps part)."""
    eps = rep.param("eps")
    d = rep.d
    coords = rep_coords(rep)
    expo = as_expo(expo)
    if not 0 <= level < d:
        raise InvalidSymbol(f"level {level} out of range for d={d}")
    if rep_is_md_generic(rep):
        return _md_generic_gen(coords, d, level, expo)
    if d == 2:
        return _md2_gen(coords, eps, level, expo)
    if d == 3:
        return _md3_gen(coords, eps, level, expo)
    raise InvalidSymbol("md with eps != 0 exists only for d = 2, 3")


def rep_is_md_generic(rep: RepId) -> bool:
    return rep.d >= 4 or rep.param("eps").is_zero() and rep.d >= 4


def _dexp(expo: Expo, k: int = 1) -> CoeffPoly:
    """Falling product expo*(expo-1)*...*(expo-k+1) of a generalized exponent."""
    out = CoeffPoly.const(1)
    a, b = expo
    for i in range(k):
        f = CoeffPoly.const(a - i)
        if b:
            f = f + CoeffPoly.param("eps") * b
        out = out * f
    return out


def _md2_gen(coords, eps: CoeffPoly, level: int, expo: Expo) -> DiffOp:
    a = expo
    da = _dexp(a, 1)
    if level == 0:
        out = DiffOp.term(coords, -1, expos={"t": a}, derivs={"t": 1},
                          size=1).with_matrix(((1, 0), (0, 1)))
        out = out + DiffOp.term(coords, -(1 + eps) * da,
                                expos={"t": (a[0] - 1, a[1]), "r": 1},
                                derivs={"r": 1}, size=1).with_matrix(((1, 0), (0, 1)))
        out = out + DiffOp.term(coords, eps * da, expos={"t": (a[0] - 1, a[1])},
                                size=1).with_matrix(((1, 0), (0, 0)))
        return out
    return DiffOp.term(coords, -1, expos={"t": a}, derivs={"r": 1},
                       size=1).with_matrix(((1, 0), (0, 1)))


def _md3_gen(coords, eps: CoeffPoly, level: int, expo: Expo) -> DiffOp:
    a = expo
    eye = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    da = _dexp(a, 1)
    dda = _dexp(a, 2)
    am1 = (a[0] - 1, a[1])
    am2 = (a[0] - 2, a[1])
    if level == 0:
        out = DiffOp.term(coords, -1, expos={"t": a}, derivs={"t": 1},
                          size=1).with_matrix(eye)
        out = out + DiffOp.term(coords, -(1 + eps) * da, expos={"t": am1, "r": 1},
                                derivs={"r": 1}, size=1).with_matrix(eye)
        out = out + DiffOp.term(coords, -(1 + 2 * eps) * da,
                                expos={"t": am1, "zeta": 1},
                                derivs={"zeta": 1}, size=1).with_matrix(eye)
        out = out + DiffOp.term(coords, -(1 + eps) * dda * HALF,
                                expos={"t": am2, "r": 2},
                                derivs={"zeta": 1}, size=1).with_matrix(eye)
        out = out + DiffOp.term(coords, eps * da, expos={"t": am1},
                                size=1).with_matrix(((2, 0, 0), (0, 1, 0), (0, 0, 0)))
        return out
    if level == 1:
        out = DiffOp.term(coords, -1, expos={"t": a}, derivs={"r": 1},
                          size=1).with_matrix(eye)
        out = out + DiffOp.term(coords, -da, expos={"t": am1, "r": 1},
                                derivs={"zeta": 1}, size=1).with_matrix(eye)
        return out
    return DiffOp.term(coords, -1, expos={"t": a}, derivs={"zeta": 1},
                       size=1).with_matrix(eye)


def _md_generic_gen(coords, d: int, level: int, expo: Expo) -> DiffOp:
    """eps = 0 family for general d: nested transport terms along t1."""
    if expo[1] != 0:
        raise InvalidSymbol("generic multi-diagonal level needs integer profiles")
    a = expo[0]
    eye = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    k = level
    out = DiffOp.term(coords, -1, expos={coords[0]: a},
                      derivs={coords[k]: 1}, size=1).with_matrix(eye)
    for i in range(1, d - k):
        gi = _dexp((a, Fraction(0)), i)  # a(a-1)...(a-i+1)
        base = {coords[0]: (a - i, Fraction(0))}
        fact_i = Fraction(1)
        for q in range(1, i + 1):
            fact_i *= q
        expos1 = dict(base)
        expos1[coords[1]] = as_expo(i)
        out = out + DiffOp.term(coords, -gi / fact_i, expos=expos1,
                                derivs={coords[i + k]: 1}, size=1).with_matrix(eye)
        fact_im1 = fact_i / i
        for j in range(2, d - i - k + 1):
            expos2 = dict(base)
            if i - 1:
                expos2[coords[1]] = as_expo(i - 1)
            expos2[coords[j]] = as_expo(1)
            out = out + DiffOp.term(coords, -gi / fact_im1, expos=expos2,
                                    derivs={coords[i + j + k - 1]: 1},
                                    size=1).with_matrix(eye)
    return out


def md_expected_bracket(rep: RepId, x: Tuple[int, Expo],
                        y: Tuple[int, Expo]) -> List[Tuple[int, Expo, CoeffPoly]]:
    """Structure constants of the multi-diagonal family in function form.

    [X^(0)_f, X^(j)_g] = X^(j)_{(1+j*eps) f' g - f g'} and, for i, j >= 1,
    [X^(i)_f, X^(j)_g] = X^(i+j)_{f'g - fg'}, vanishing beyond level d-1.
    """
    eps = rep.param("eps")
    (i, a), (j, b) = x, y
    if i > j:
        return [(lvl, e, -c) for (lvl, e, c) in md_expected_bracket(rep, y, x)]
    lvl = i + j
    if lvl > rep.d - 1:
        return []
    target = (a[0] + b[0] - 1, a[1] + b[1])
    da, db = _dexp(a, 1), _dexp(b, 1)
    if i == 0:
        coeff = (1 + j * eps) * da - db
    else:
        coeff = da - db
    if coeff.is_zero():
        return []
    return [(lvl, target, coeff)]


def md_function_defect(rep: RepId, x: Tuple[int, object],
                       y: Tuple[int, object]) -> DiffOp:
    xi, xa = x[0], as_expo(x[1])
    yi, ya = y[0], as_expo(y[1])
    lhs = md_generator(rep, xi, xa).commutator(md_generator(rep, yi, ya))
    rhs = DiffOp.zero(rep_coords(rep), rep.d)
    for lvl, expo, coeff in md_expected_bracket(rep, (xi, xa), (yi, ya)):
        rhs = rhs + md_generator(rep, lvl, expo).scale(coeff)
    return lhs - rhs


# ---------------------------------------------------------------------------
# coinduced modules


N3 = ((0, 1, 0), (0, 0, 1), (0, 0, 0))
E13 = ((0, 0, 1), (0, 0, 0), (0, 0, 0))


def _mat(entries) -> Tuple[Tuple[CoeffPoly, ...], ...]:
    return tuple(tuple(CoeffPoly.of(e) for e in row) for row in entries)


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)), CoeffPoly())
                       for j in range(n)) for i in range(n))


def _mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_scale(a, s):
    return tuple(tuple(x * s for x in row) for row in a)


def _mat_is_zero(a):
    return all(x.is_zero() for row in a for x in row)


def _preset_matrices(rep: RepId):
    lam = rep.param("lam")
    name = rep.preset
    if name == "scalar_weight":
        return _mat([[-lam]]), _mat([[0]]), _mat([[0]])
    if name == "dirac":
        l0 = _mat([[Fraction(1, 4) - lam, 0], [0, Fraction(-1, 4) - lam]])
        return l0, _mat([[0, 0], [-1, 0]]), _mat([[0, 0], [0, 0]])
    if name == "md30":
        l0 = _mat([[-1, 0, 0], [0, Fraction(-1, 2), 0], [0, 0, 0]])
        z = _mat([[0] * 3] * 3)
        return l0, z, z
    if name == "nabla":
        l0 = _mat([[-1, 0, 0], [0, Fraction(-1, 2), 0], [0, 0, 0]])
        return l0, _mat_scale(_mat(N3), CoeffPoly.const(-1)), \
            _mat_scale(_mat(E13), CoeffPoly.const(-1))
    raise InvalidSymbol(f"unknown coinduced preset {name!r}")


def preset_relation_defects(rep: RepId) -> List[Tuple[str, object]]:
    """The solvable-subalgebra relations the inducing data must satisfy."""
    l0, yh, m1 = _preset_matrices(rep)
    comm = lambda a, b: _mat_sub(_mat_mul(a, b), _mat_mul(b, a))
    out = []
    out.append(("[l0,y]+y/2", _mat_sub(comm(l0, yh),
                                       _mat_scale(yh, CoeffPoly.const(-HALF)))))
    out.append(("[l0,m]+m", _mat_sub(comm(l0, m1),
                                     _mat_scale(m1, CoeffPoly.const(-1)))))
    out.append(("[y,m]", comm(yh, m1)))
    return [(name, mat) for name, mat in out if not _mat_is_zero(mat)]


def coinduced_generator(rep: RepId, family: str, a: Fraction) -> DiffOp:
    l0, yh, m1 = _preset_matrices(rep)
    size = len(l0)
    coords = ("t", "r", "zeta")
    eye = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    if family == la.L_FAMILY:
        out = DiffOp.term(coords, -1, expos={"t": a}, derivs={"t": 1},
                          size=1).with_matrix(eye)
        if a != 0:
            out = out + DiffOp.term(coords, -a * HALF, expos={"t": a - 1, "r": 1},
                                    derivs={"r": 1}, size=1).with_matrix(eye)
            out = out + DiffOp.term(coords, a, expos={"t": a - 1},
                                    size=1).with_matrix(l0)
        aa = a * (a - 1)
        if aa != 0:
            out = out + DiffOp.term(coords, -aa * Fraction(1, 4),
                                    expos={"t": a - 2, "r": 2},
                                    derivs={"zeta": 1}, size=1).with_matrix(eye)
            out = out + DiffOp.term(coords, aa * HALF, expos={"t": a - 2, "r": 1},
                                    size=1).with_matrix(yh)
        aaa = a * (a - 1) * (a - 2)
        if aaa != 0:
            out = out + DiffOp.term(coords, aaa * Fraction(1, 4),
                                    expos={"t": a - 3, "r": 2},
                                    size=1).with_matrix(m1)
        return out
    if family == la.Y_FAMILY:
        out = DiffOp.term(coords, -1, expos={"t": a}, derivs={"r": 1},
                          size=1).with_matrix(eye)
        if a != 0:
            out = out + DiffOp.term(coords, -a, expos={"t": a - 1, "r": 1},
                                    derivs={"zeta": 1}, size=1).with_matrix(eye)
            out = out + DiffOp.term(coords, a, expos={"t": a - 1},
                                    size=1).with_matrix(yh)
        aa = a * (a - 1)
        if aa != 0:
            out = out + DiffOp.term(coords, aa, expos={"t": a - 2, "r": 1},
                                    size=1).with_matrix(m1)
        return out
    if family == la.M_FAMILY:
        out = DiffOp.term(coords, -1, expos={"t": a}, derivs={"zeta": 1},
                          size=1).with_matrix(eye)
        if a != 0:
            out = out + DiffOp.term(coords, a, expos={"t": a - 1},
                                    size=1).with_matrix(m1)
        return out
    raise InvalidSymbol(f"family {family} is not coinduced here")


# ---------------------------------------------------------------------------
# homomorphism defects


def _rep_algebra(rep: RepId) -> la.AlgebraId:
    if rep.name == "pi_tilde":
        return la.sv(rep.d)
    if rep.name in ("pi_lambda", "dirac_sigma", "coinduced"):
        return la.sv(1)
    if rep.name == "md":
        eps = rep.param("eps")
        return la.sv_eps(CoeffPoly.const(1) + 2 * eps)
    if rep.name == "conformal":
        return la.sch(rep.d)
    raise InvalidSymbol(f"unknown representation {rep.name}")


def rep_element(rep: RepId, x: LieElement) -> DiffOp:
    out = DiffOp.zero(rep_coords(rep), rep_size(rep))
    for sym, coeff in x.terms.items():
        if sym.family == la.Z_FAMILY:
            continue
        out = out + rep_generator(rep, sym).scale(coeff)
    return out


def rep_defect(rep: RepId, a: GenSymbol, b: GenSymbol) -> DiffOp:
    """[rho(a), rho(b)] - rho([a, b]); zero for every implemented realization."""
    lhs = rep_generator(rep, a).commutator(rep_generator(rep, b))
    alg = _rep_algebra(rep)
    rhs = rep_element(rep, la.bracket(alg, a, b))
    return lhs - rhs


def rep_symbols(rep: RepId, window_two: int) -> List[GenSymbol]:
    alg = _rep_algebra(rep)
    syms = la.algebra_symbols(alg, window_two)
    if rep.name == "md":
        return [s for s in syms if s.family in (la.L_FAMILY, la.Y_FAMILY,
                                                la.M_FAMILY)]
    return syms


def rep_check(rep: RepId, window_two: int = 8) -> SuiteReport:
    report = SuiteReport("rep-check", {"rep": str(rep), "window": window_two})
    if rep.name == "coinduced":
        defects = preset_relation_defects(rep)
        report.add(f"{rep.preset}-inducing-relations", not defects,
                   witness="; ".join(n for n, _ in defects) or None)
    if rep.name == "conformal":
        report.extend(conformal_check(rep.d))
        return report
    syms = rep_symbols(rep, window_two)
    bad = []
    for i, a in enumerate(syms):
        for b in syms[i:]:
            if not rep_defect(rep, a, b).is_zero():
                bad.append(f"({a},{b})")
    report.add("bracket-defects-vanish", not bad,
               witness="; ".join(bad[:5]) or None)
    if rep.name == "md" and rep.d in (2, 3):
        extra = []
        profiles = [(0, (2, 0)), (0, (1, 0)), (1, (1, 0)), (1, (HALF, 1))]
        if rep.d == 3:
            profiles.append((2, (1, 2)))
        for x in profiles:
            for y in profiles:
                if not md_function_defect(rep, x, y).is_zero():
                    extra.append(f"{x} vs {y}")
        report.add("function-profile-defects-vanish", not extra,
                   witness="; ".join(extra[:5]) or None)
    return report


def mass_to_zeta(op: DiffOp, coords=("t", "r", "zeta")) -> DiffOp:
    """Rewrite powers of the mass parameter into derivatives along zeta."""
    out = DiffOp.zero(coords, op.size)
    zpos = coords.index("zeta")
    for (evec, dvec, r, c), coeff in op.terms.items():
        new_evec = [as_expo(0)] * len(coords)
        for name, e in zip(op.coords, evec):
            new_evec[coords.index(name)] = e
        base_dvec = [0] * len(coords)
        for name, k in zip(op.coords, dvec):
            base_dvec[coords.index(name)] = k
        for mono, scal in coeff.terms.items():
            mpow = 0
            rest = []
            for name, e in mono:
                if name == "M":
                    mpow = e
                else:
                    rest.append((name, e))
            dv = list(base_dvec)
            dv[zpos] += mpow
            key = (tuple(new_evec), tuple(dv), r, c)
            cur = out.terms.get(key)
            add = CoeffPoly({tuple(rest): scal})
            out = out + DiffOp(coords, op.size, {key: add})
    return out


def zeta_to_mass(op: DiffOp, coords=("t", "r")) -> DiffOp:
    """Inverse rewriting: zeta-derivatives become powers of the mass parameter."""
    out = DiffOp.zero(coords, op.size)
    zpos = op.coords.index("zeta")
    for (evec, dvec, r, c), coeff in op.terms.items():
        if evec[zpos] != as_expo(0):
            raise DecompositionError("coefficient depends on zeta")
        k = dvec[zpos]
        new_evec = []
        new_dvec = []
        for name, e, dk in zip(op.coords, evec, dvec):
            if name == "zeta":
                continue
            new_evec.append(e)
            new_dvec.append(dk)
        key = (tuple(new_evec), tuple(new_dvec), r, c)
        out = out + DiffOp(coords, op.size, {key: coeff * (MASS ** k)})
    return out
