#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Inose 构造模块
不变量 A, B, Δ1, Δ2；曲面 F^(n)；三次曲线 C_u 及其到 F^(6) 的坐标变换 Ψ_u；
切线第三交点 Ō 及对应截面 P_Ō
"""

from dataclasses import dataclass, field
from fractions import Fraction
from types import SimpleNamespace
from typing import Any, Dict, Optional, Tuple

import mpmath

import config
from exact_arith import numeric_embed, interval_ball
from poly_ratfunc import Poly, RatFunc, TruncatedSeries, value_to_json
from elliptic import (
    WeierstrassCurve, CurvePoint, PlaneCubicWithOrigin, ModelTransform,
    tangent_and_third, normalize_projective
)
from isogeny import ThreeIsogenyFamily
from errors import (
    ComputationError, SingularInput, UnsupportedN, IndeterminateForm, SingularPoint
)

ZERO = Fraction(0)
ONE = Fraction(1)

BASE_VARIABLES = {1: 's', 2: 't', 6: 'u'}


@dataclass
class InoseData:
    A: Any
    B: Any
    D1: Any
    D2: Any

    def to_json(self) -> Dict[str, Any]:
        return {k: value_to_json(v) for k, v in
                (('A', self.A), ('B', self.B), ('D1', self.D1), ('D2', self.D2))}


@dataclass
class SurfaceModel:
    """F^(n) 及其相对族模型记录的变换"""
    n: int
    var: str
    curve: WeierstrassCurve
    transform: Optional[ModelTransform] = None
    data: Optional[InoseData] = field(default=None, repr=False)

    def to_json(self) -> Dict[str, Any]:
        rescale = None
        if self.transform is not None:
            rescale = {
                'lambda': value_to_json(self.transform.lam),
                'mu': self.transform.base.to_json() if self.transform.base is not None else None,
                'orientation': self.transform.orientation,
            }
        return {'n': self.n, 'variable': self.var, 'curve': self.curve.to_json(), 'rescale': rescale}


def _cubic_coeffs(f: Poly):
    if f.degree != 3 or f.lc != 1:
        raise SingularInput(f"{f} is not a monic cubic")
    return f.coeff(2), f.coeff(1), f.coeff(0)


def _delta(a2, a4, a6):
    return 16 * (a2 * a2 * a4 * a4 - 4 * a2 ** 3 * a6 + 18 * a2 * a4 * a6
                 - 4 * a4 ** 3 - 27 * a6 * a6)


def invariants_from_cubics(f1: Poly, f2: Poly) -> InoseData:
    """由 f1, f2 的系数计算 A, B, Δ1, Δ2"""
    a2, a4, a6 = _cubic_coeffs(f1)
    b2, b4, b6 = _cubic_coeffs(f2)
    D1, D2 = _delta(a2, a4, a6), _delta(b2, b4, b6)
    if not D1 or not D2:
        raise SingularInput("cubic with vanishing discriminant")
    A = (a2 * a2 - 3 * a4) * (b2 * b2 - 3 * b4)
    B = Fraction(32, 27) * (2 * a2 ** 3 - 9 * a2 * a4 + 27 * a6) * (2 * b2 ** 3 - 9 * b2 * b4 + 27 * b6)
    return InoseData(A, B, D1, D2)


def build_surface(data: InoseData, n: int, var: Optional[str] = None) -> SurfaceModel:
    """
    F^(n): Y^2 = X^3 - A/3 X + (Δ1 v^n + B + Δ2 / v^n) / 64
    """
    if not 1 <= n <= 6:
        raise UnsupportedN(f"F^({n}) is not a K3 surface; n must lie in 1..6")
    var = var or BASE_VARIABLES.get(n, 'v')
    num = Poly([data.D2] + [0] * (n - 1) + [data.B] + [0] * (n - 1) + [data.D1], var)
    a6 = RatFunc(num, Poly.monomial(64, n, var))
    a4 = RatFunc.constant(-data.A / 3, var)
    curve = WeierstrassCurve(0, 0, 0, a4, a6)
    return SurfaceModel(n, var, curve, None, data)


def family_surface(fam: ThreeIsogenyFamily, n: int) -> SurfaceModel:
    return build_surface(invariants_from_cubics(fam.f1, fam.f2), n)


def _e(a, b):
    return 3 * (a + 3 * b) ** 2 - a * a


def weier_f6_coeffs(fam: ThreeIsogenyFamily) -> Tuple[Any, RatFunc]:
    """闭式 W4 与 W6(u)"""
    a, b, ap, bp = fam.a, fam.b, fam.ap, fam.bp
    e, ep = _e(a, b), _e(ap, bp)
    W4 = -a * ap * (a + 6 * b) * (ap + 6 * bp) / 3
    hi = a * a * b ** 3 * (4 * a + 27 * b)
    lo = ap * ap * bp ** 3 * (4 * ap + 27 * bp)
    mid = a * ap * e * ep / 54
    # W6 = -(hi u^6 + lo / u^6)/4 + mid
    num = Poly([-lo / 4] + [0] * 5 + [mid] + [0] * 5 + [-hi / 4], 'u')
    W6 = RatFunc(num, Poly.monomial(1, 6, 'u'))
    return W4, W6


def build_weier_f6(fam: ThreeIsogenyFamily) -> SurfaceModel:
    """F^(6) 的闭式，并与 build_surface(·, 6) 比对"""
    W4, W6 = weier_f6_coeffs(fam)
    curve = WeierstrassCurve(0, 0, 0, RatFunc.constant(W4, 'u'), W6)
    data = invariants_from_cubics(fam.f1, fam.f2)
    generic = build_surface(data, 6)
    if generic.curve != curve:
        raise ComputationError("closed form of F^(6) disagrees with the invariant formula")
    return SurfaceModel(6, 'u', curve, None, data)


def build_cubic_model(fam: ThreeIsogenyFamily) -> PlaneCubicWithOrigin:
    """C_u: x2^3 + a'(x2 - b'z)^2 z = u^6 (x1^3 + a(x1 - bz)^2 z)，原点 (1 : u^2 : 0)"""
    a, b, ap, bp = fam.a, fam.b, fam.ap, fam.bp
    u = RatFunc.gen('u')
    u6 = u ** 6
    terms = {
        (0, 3, 0): ONE,
        (0, 2, 1): ap,
        (0, 1, 2): -2 * ap * bp,
        (0, 0, 3): ap * bp * bp - u6 * (a * b * b),
        (3, 0, 0): -u6,
        (2, 0, 1): -u6 * a,
        (1, 0, 2): u6 * (2 * a * b),
    }
    return PlaneCubicWithOrigin(terms, (ONE, u * u, ZERO))


def cubic_affine(fam: ThreeIsogenyFamily, x1, x2, u6):
    """C_u 在 z = 1 处的值，参数可以取自任意环"""
    a, b, ap, bp = fam.a, fam.b, fam.ap, fam.bp
    lhs = x2 * x2 * x2 + ap * (x2 - bp) * (x2 - bp)
    rhs = x1 * x1 * x1 + a * (x1 - b) * (x1 - b)
    return lhs - u6 * rhs


class TransformPsi:
    """
    Ψ_u: C_u -> F^(6)
    X = (c6 u^6 + c4 u^4 + c2 u^2 + c0) / (3u^2 D)，Y = (d10 u^10 + d6 u^6 + d4 u^4 + d0) / (6u^3 D^2)，
    D = (3x1 + az)u^2 - (3x2 + a'z)
    """

    def __init__(self, fam: ThreeIsogenyFamily):
        self.fam = fam
        a, b, ap, bp = fam.a, fam.b, fam.ap, fam.bp
        self.e = _e(a, b)
        self.ep = _e(ap, bp)
        self.g = a * (a + 6 * b)
        self.gp = ap * (ap + 6 * bp)

    def coefficients(self, x1, x2, z=ONE) -> Dict[str, Any]:
        """c6, c4, c2, c0, d10, d6, d4, d0"""
        a, ap = self.fam.a, self.fam.ap
        e, ep, g, gp = self.e, self.ep, self.g, self.gp
        A = 3 * x1 + a * z
        B = 3 * x2 + ap * z
        zz = z * z
        return {
            'c6': 2 * g * A - a * e * z,
            'c4': g * B,
            'c2': -gp * A,
            'c0': -2 * gp * B + ap * ep * z,
            'd10': -a * e * (A * A + 2 * g * zz) + 6 * g * g * A * z,
            'd6': a * e * (B * B + 2 * gp * zz) - 6 * g * gp * A * z,
            'd4': ap * ep * (A * A + 2 * g * zz) - 6 * g * gp * B * z,
            'd0': -ap * ep * (B * B + 2 * gp * zz) + 6 * gp * gp * B * z,
        }

    def numerators(self, x1, x2, u, z=ONE):
        """(NX, NY, D)，X = NX/(3u^2 D)，Y = NY/(6u^3 D^2)"""
        c = self.coefficients(x1, x2, z)
        u2 = u * u
        u4 = u2 * u2
        u6 = u4 * u2
        nx = c['c6'] * u6 + c['c4'] * u4 + c['c2'] * u2 + c['c0']
        ny = c['d10'] * (u6 * u4) + c['d6'] * u6 + c['d4'] * u4 + c['d0']
        d = (3 * x1 + self.fam.a * z) * u2 - (3 * x2 + self.fam.ap * z)
        return nx, ny, d

    def __call__(self, x1, x2, z=ONE) -> CurvePoint:
        """把 C_u 上的点 (x1 : x2 : z) 映到 F^(6)"""
        u = RatFunc.gen('u')
        if not z:
            if x2 == u * u * x1:
                return CurvePoint.infinity()
            raise IndeterminateForm("points at infinity other than O are not supported")
        if z != 1:
            x1, x2 = x1 / z, x2 / z
        nx, ny, d = self.numerators(x1, x2, u)
        if not d:
            raise IndeterminateForm("point lies on the tangent line at O; use the series limit")
        u2 = u * u
        X = nx / (3 * u2 * d)
        Y = ny / (6 * u2 * u * d * d)
        return CurvePoint(X, Y)


def build_psi(fam: ThreeIsogenyFamily) -> TransformPsi:
    return TransformPsi(fam)


class BiPoly:
    """x1, x2 的二元多项式，terms: {(i, j): 系数}"""

    __slots__ = ('terms',)

    def __init__(self, terms: Optional[Dict[Tuple[int, int], Any]] = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def var(cls, index: int) -> "BiPoly":
        return cls({(1, 0) if index == 1 else (0, 1): ONE})

    def _other(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        return BiPoly({(0, 0): other})

    def __add__(self, other):
        o = self._other(other)
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) + (-self)

    def __mul__(self, other):
        o = self._other(other)
        out: Dict[Tuple[int, int], Any] = {}
        for (i, j), v in self.terms.items():
            for (k, l), w in o.terms.items():
                key = (i + k, j + l)
                prod = v * w
                out[key] = out[key] + prod if key in out else prod
        return BiPoly(out)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def divmod_monic_x2(self, divisor: "BiPoly"):
        """按 x2 做带余除法，divisor 关于 x2 首一"""
        n = max(j for _, j in divisor.terms)
        if divisor.terms.get((0, n)) != 1 or any(j == n and i for i, j in divisor.terms):
            raise ValueError("divisor is not monic in x2")
        q = BiPoly()
        r = self
        while r.terms:
            m = max(j for _, j in r.terms)
            if m < n:
                break
            lead = BiPoly({(i, j - n): v for (i, j), v in r.terms.items() if j == m})
            q = q + lead
            r = r - lead * divisor
        return q, r


def verify_psi(fam: ThreeIsogenyFamily) -> bool:
    """
    把 Ψ 代入 F^(6) 的方程，结果须被 C_u 整除
    3 NY^2 - 4 NX^3 D - 36 W4 u^4 NX D^3 - 108 u^6 W6 D^4 ≡ 0 (mod C_u)
    """
    psi = TransformPsi(fam)
    W4, W6 = weier_f6_coeffs(fam)
    u = Poly.gen('u')
    u6W6 = (W6 * RatFunc(Poly.monomial(1, 6, 'u'))).num
    x1, x2 = BiPoly.var(1), BiPoly.var(2)
    nx, ny, d = psi.numerators(x1, x2, u)
    d2 = d * d
    expr = (3 * ny * ny - 4 * nx * nx * nx * d
            - (36 * W4) * nx * d2 * d * u ** 4
            - 108 * d2 * d2 * u6W6)
    cubic = cubic_affine(fam, x1, x2, u ** 6)
    _, rem = expr.divmod_monic_x2(cubic)
    return not rem


def obar_point(fam: ThreeIsogenyFamily) -> Tuple[RatFunc, RatFunc]:
    """O 处切线与 C_u 的第三个交点 Ō (z = 1 的仿射坐标)"""
    C = build_cubic_model(fam)
    _, third = tangent_and_third(C, C.origin)
    x1, x2, z = normalize_projective(third)
    return x1, x2


def _branch(fam: ThreeIsogenyFamily, x1_0, x2_0, u6, order: int):
    """过 (x1_0, x2_0) 的 C_u 局部参数化，返回截断级数 (x1(h), x2(h))"""
    a, b, ap, bp = fam.a, fam.b, fam.ap, fam.bp
    d2 = 3 * x2_0 * x2_0 + 2 * ap * (x2_0 - bp)
    d1 = -u6 * (3 * x1_0 * x1_0 + 2 * a * (x1_0 - b))
    if d2:
        x1 = TruncatedSeries.variable(x1_0, order)
        x2 = TruncatedSeries([x2_0], order)
        for _ in range(order):
            x2 = x2 - cubic_affine(fam, x1, x2, u6) / d2
    elif d1:
        x2 = TruncatedSeries.variable(x2_0, order)
        x1 = TruncatedSeries([x1_0], order)
        for _ in range(order):
            x1 = x1 - cubic_affine(fam, x1, x2, u6) / d1
    else:
        raise SingularPoint("C_u is singular at the requested point")
    return x1, x2


def psi_limit(fam: ThreeIsogenyFamily, x1_0, x2_0, order: int = 4) -> CurvePoint:
    """Ψ 在可去奇点处沿曲线取极限"""
    u = RatFunc.gen('u')
    u2 = u * u
    x1, x2 = _branch(fam, x1_0, x2_0, u2 ** 3, order)
    nx, ny, d = TransformPsi(fam).numerators(x1, x2, u)
    X = nx / (d * (3 * u2))
    Y = ny / (d * d * (6 * u2 * u))
    return CurvePoint(X[0], Y[0])


def obar_section(fam: ThreeIsogenyFamily) -> CurvePoint:
    """P_Ō = Ψ_u(Ō)"""
    x1, x2 = obar_point(fam)
    return psi_limit(fam, x1, x2)


def _horner(coeffs, x):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def check_psi_specialization(fam: ThreeIsogenyFamily, u0=2, x1_0=1, embedding=None) -> bool:
    """
    在有理 u0 处用区间算术检验 Ψ 把 C_{u0} 的点映到 F^(6) 的特化上
    参数取 numeric_embed 的区间；x2 为 C_{u0} 在 x1 = x1_0 上的三个根，各取一个小球。
    清分母后的 F^(6) 方程（同 verify_psi）在区间上须包含 0
    :raises IndeterminateForm: 三个点都落在 Ψ 的分母为零处，没有检验任何点
    """
    bits = config.ARITH_CONFIG['embed_precision']

    def box(c):
        return numeric_embed(c, embedding, bits)

    a, b, ap, bp = (box(c) for c in (fam.a, fam.b, fam.ap, fam.bp))
    u, x1 = box(u0), box(x1_0)
    ctx = u.ctx
    W4, W6 = weier_f6_coeffs(fam)
    u6W6 = (W6 * RatFunc(Poly.monomial(1, 6, 'u'))).num
    w4 = box(W4)
    u6w6 = _horner([box(c) for c in u6W6.coeffs], u)

    with mpmath.workprec(bits + 32):
        ca, cb, cap, cbp, cu, cx1 = (v.center for v in (a, b, ap, bp, u, x1))
        rhs = cu ** 6 * (cx1 ** 3 + ca * (cx1 - cb) ** 2)
        roots = mpmath.polyroots([1, cap, -2 * cap * cbp, cap * cbp * cbp - rhs],
                                 maxsteps=config.ARITH_CONFIG['newton_iterations'], extraprec=bits)
        radius = mpmath.mpf(2) ** (-(bits // 2))
        balls = [interval_ball(mpmath.mpc(r), radius * (1 + abs(r)), ctx) for r in roots]

    psi = TransformPsi(SimpleNamespace(a=a, b=b, ap=ap, bp=bp))
    checked = 0
    for x2 in balls:
        nx, ny, d = psi.numerators(x1, x2, u, ONE)
        if d.contains(0):
            continue
        d2 = d * d
        residual = (3 * ny * ny - 4 * nx * nx * nx * d
                    - 36 * w4 * nx * d2 * d * u ** 4
                    - 108 * d2 * d2 * u6w6)
        if not residual.contains(0):
            return False
        checked += 1
    if not checked:
        raise IndeterminateForm(f"no point of C_u over x1 = {x1_0} at u = {u0} avoids the poles of Psi")
    return True
