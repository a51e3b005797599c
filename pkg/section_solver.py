#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
截面求解模块
由 3-同源除子构造切于 O 的二次曲线，求第六个交点，经 Ψ_u 映到 F^(6)，
再下降到 F^(1) (s = u^6) 与 F^(2) (t = u^3)；另给出 R_ij 截面及 Galois / CM 像
"""

from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import sympy

import config
from exact_arith import FieldAutomorphism, tower_with_omega
from poly_ratfunc import (
    Poly, RatFunc, TruncatedSeries, as_ratfunc, substitute, rewrite_in_power, poly_gcd, value_to_json
)
from elliptic import WeierstrassCurve, CurvePoint, ec_group
from isogeny import ThreeIsogenyFamily, TwoTorsionData, two_torsion
from inose_construct import (
    SurfaceModel, TransformPsi, family_surface, build_weier_f6, obar_section
)
from errors import (
    CheckFailed, DegenerateSystem, ResidualNotRational, ImageOffCurve, PointNotOnCurve
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class IsogenyDivisorForm:
    """p_φ^±(x1, z) = x1^3 + 4ab x1 z^2 - 8ab^2 z^3 ∓ u^3 x1^3，此处取 z = 1"""
    sign: int
    form: Poly

    @classmethod
    def build(cls, fam: ThreeIsogenyFamily, sign: int) -> "IsogenyDivisorForm":
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        u = RatFunc.gen('u')
        a, b = fam.a, fam.b
        lead = 1 - sign * u ** 3
        form = Poly([RatFunc.constant(-8 * a * b * b, 'u'), RatFunc.constant(4 * a * b, 'u'),
                     RatFunc.constant(0, 'u'), lead], 'x1')
        return cls(sign, form)

    def homogeneous(self) -> Dict[Tuple[int, int], Any]:
        """{(x1 次数, z 次数): 系数}"""
        return {(i, 3 - i): c for i, c in enumerate(self.form.coeffs) if c}


@dataclass
class ConicCoeffs:
    """q = c1 x1^2 + c2 x1 x2 + c3 x2^2 + c4 x1 z + c5 x2 z + c6 z^2"""
    c: Tuple[Any, ...]

    def __post_init__(self):
        if len(self.c) != 6 or not any(self.c):
            raise DegenerateSystem("a conic needs six coefficients, not all zero")

    def __call__(self, x1, x2, z=ONE):
        c1, c2, c3, c4, c5, c6 = self.c
        return c1 * x1 * x1 + c2 * x1 * x2 + c3 * x2 * x2 + c4 * x1 * z + c5 * x2 * z + c6 * z * z

    def scaled(self, factor) -> "ConicCoeffs":
        return ConicCoeffs(tuple(ci * factor for ci in self.c))

    def to_json(self) -> List[Dict[str, Any]]:
        return [value_to_json(ci) for ci in self.c]


@dataclass
class DescendedSection:
    surface: SurfaceModel
    point: CurvePoint
    provenance: Dict[str, Any] = field(default_factory=dict)

    @property
    def X(self):
        return self.point.x

    @property
    def Y(self):
        return self.point.y

    def to_json(self) -> Dict[str, Any]:
        data = {'surface': self.surface.to_json()}
        data.update(self.point.to_json())
        data['provenance'] = self.provenance
        return data


# ----------------------------------------------------------------------
# 线性代数
# ----------------------------------------------------------------------
def _rational_nullspace(rows: Sequence[Sequence[Any]]) -> List[List[Fraction]]:
    m = sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in row]
                      for row in rows])
    return [[Fraction(int(x.p), int(x.q)) for x in v] for v in m.nullspace()]


def nullspace(rows: Sequence[Sequence[Any]]) -> List[List[Any]]:
    """
    域上矩阵的零空间基
    有理矩阵交给 sympy；系数在数域塔或 Q(u) 中时用高斯消元
    每个基向量在对应自由列上取 1
    """
    if rows and all(isinstance(x, (int, Fraction)) for row in rows for x in row):
        return _rational_nullspace(rows)
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ONE / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v: List[Any] = [ZERO] * ncols
        v[free] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][free]
        basis.append(v)
    return basis


def _lcm(p: Poly, q: Poly) -> Poly:
    return (p * q) // poly_gcd(p, q)


# ----------------------------------------------------------------------
# 二次曲线与第六个交点
# ----------------------------------------------------------------------
def _tangent_constant(fam: ThreeIsogenyFamily):
    """O 处切线 x2 = u^2 x1 + κ z 中的 κ = a(u^2 + 3)/3"""
    u = RatFunc.gen('u')
    return fam.a * (u * u + 3) / 3


def solve_conic(fam: ThreeIsogenyFamily, sign: int = 1) -> ConicCoeffs:
    """
    五个齐次线性条件：
      在 O 处与切线相切（x1^2 与 x1 z 系数为零）
      q(x1, φ_x(x1), 1)·9x1^4 被 p_φ^± 整除（余式的三个系数为零）
    解规范化为最低下标的非零系数等于 1
    """
    u = RatFunc.gen('u')
    u2 = u * u
    kappa = _tangent_constant(fam)
    a, b = fam.a, fam.b
    p = IsogenyDivisorForm.build(fam, sign).form
    N = Poly([12 * a * b * b, -12 * a * b, 4 * a, 3], 'x1')
    x = Poly.gen('x1')
    products = [9 * x ** 6, 3 * x ** 3 * N, N * N, 9 * x ** 5, 3 * x ** 2 * N, 9 * x ** 4]
    rems = [(t.map_coeffs(lambda c: RatFunc.constant(c, 'u')) % p) for t in products]
    rows = [
        [ONE, u2, u2 * u2, ZERO, ZERO, ZERO],
        [ZERO, kappa, 2 * u2 * kappa, ONE, u2, ZERO],
    ]
    for k in range(3):
        rows.append([r.coeff(k) for r in rems])
    kernel = nullspace(rows)
    if len(kernel) != 1:
        raise DegenerateSystem(f"conic system has a kernel of dimension {len(kernel)}")
    v = kernel[0]
    lead = next(ci for ci in v if ci)
    return ConicCoeffs(tuple(ci / lead for ci in v))


def _clear_denominators(conic: ConicCoeffs) -> Tuple[RatFunc, ...]:
    dens = [ci.den if isinstance(ci, RatFunc) else Poly([1], 'u') for ci in conic.c]
    common = dens[0]
    for d in dens[1:]:
        common = _lcm(common, d)
    scale = RatFunc(common)
    return tuple(as_ratfunc(ci, 'u') * scale for ci in conic.c)


def _eliminate_x2(fam: ThreeIsogenyFamily, conic: ConicCoeffs) -> Tuple[Poly, Poly, Poly]:
    """
    在二次曲线上把 C 约化为 x2 的一次式 C ≡ r1 x2 + r0，返回 (R, s0, s1)
    s_k = r_k c3^2，R = q(x1, -s0/s1)·s1^2 = c3^2 · Res_x2(q, C)
    """
    c1, c2, c3, c4, c5, c6 = _clear_denominators(conic)
    if not c3:
        raise ResidualNotRational("conic has no x2^2 term")
    ap, bp = fam.ap, fam.bp
    u = RatFunc.gen('u')
    u6 = u ** 6

    def lift(poly_coeffs):
        return Poly([c if isinstance(c, RatFunc) else RatFunc.constant(c, 'u') for c in poly_coeffs], 'x1')

    x = lift([ZERO, ONE])
    q1 = lift([c5, c2])
    q0 = lift([c6, c4, c1])
    f1 = lift(fam.f1.coeffs)
    # r1 c3^2 与 r0 c3^2
    s1 = q1 * q1 - q0 * c3 - q1 * (ap * c3) - lift([2 * ap * bp * c3 * c3])
    s0 = q1 * q0 - q0 * (ap * c3) + lift([ap * bp * bp * c3 * c3]) - f1 * (u6 * c3 * c3)
    R = (x * x * s1 * s1 * c1 - x * s0 * s1 * c2 + s0 * s0 * c3
         + x * s1 * s1 * c4 - s0 * s1 * c5 + s1 * s1 * c6)
    return R, s0, s1


def _residual_factor(fam: ThreeIsogenyFamily, conic: ConicCoeffs, sign: int) -> Tuple[Poly, Poly, Poly]:
    R, s0, s1 = _eliminate_x2(fam, conic)
    p = IsogenyDivisorForm.build(fam, sign).form
    quotient, rem = divmod(R, p)
    if rem:
        raise ResidualNotRational(f"{p} does not divide the eliminant")
    return quotient, s0, s1


def sixth_point(fam: ThreeIsogenyFamily, conic: ConicCoeffs, sign: int = 1) -> Tuple[RatFunc, RatFunc]:
    """
    C_u 与二次曲线的第六个交点 Q4^±（z = 1 的仿射坐标）
    消去 x2 后 R = p_φ^± × 一次式，x2 = -s0/s1
    """
    quotient, s0, s1 = _residual_factor(fam, conic, sign)
    if quotient.degree != 1:
        raise ResidualNotRational(f"residual factor has degree {quotient.degree}")
    xi = -quotient.coeff(0) / quotient.coeff(1)
    denom = s1(xi)
    if not denom:
        raise ResidualNotRational("x2 is not determined by the residual x1")
    eta = -s0(xi) / denom
    return xi, eta


def intersection_degrees(fam: ThreeIsogenyFamily, conic: ConicCoeffs, sign: int = 1,
                         order: int = 4) -> Dict[str, int]:
    """
    二次曲线与 C_u 交点的重数记账：除子 3，O 处 2，剩余 1
    除子与剩余部分由消去 x2 后的 R 与 p_φ^± 的公因式读出
    O 处的重数由 x1 = 1 坐标卡中 z = h 的局部展开给出
    """
    u = RatFunc.gen('u')
    u2 = u * u
    u6 = u2 ** 3
    ap, bp, a, b = fam.ap, fam.bp, fam.a, fam.b
    z = TruncatedSeries.variable(ZERO, order)
    x2 = TruncatedSeries([u2], order)
    d2 = 3 * u2 * u2

    def cubic(x2s, zs):
        lhs = x2s * x2s * x2s + ap * (x2s - bp * zs) * (x2s - bp * zs) * zs
        rhs = 1 + a * (1 - b * zs) * (1 - b * zs) * zs
        return lhs - u6 * rhs

    for _ in range(order):
        x2 = x2 - cubic(x2, z) / d2
    at_origin = conic(ONE, x2, z).valuation()
    R, _, _ = _eliminate_x2(fam, conic)
    p = IsogenyDivisorForm.build(fam, sign).form
    common = poly_gcd(R, p)
    return {'divisor': common.degree, 'origin': at_origin, 'residual': R.degree - common.degree}


# ----------------------------------------------------------------------
# 下降
# ----------------------------------------------------------------------
def _descend_point(P: CurvePoint, m: int, newvar: str, zeta=None) -> CurvePoint:
    if P.is_infinity:
        return P
    return CurvePoint(rewrite_in_power(P.x, m, newvar, zeta), rewrite_in_power(P.y, m, newvar, zeta))


def _omega_for(tower, extend: bool):
    """塔中已有 ω 时直接返回；extend 为真时必要时扩张"""
    bigger, w = tower_with_omega(tower)
    if bigger != tower and not extend:
        return None
    return w


def _on(E: WeierstrassCurve, P: CurvePoint, anchor: str) -> CurvePoint:
    if not E.contains(P):
        raise PointNotOnCurve(f"{P} is not on {E}", anchor)
    return P


def q4_points(fam: ThreeIsogenyFamily) -> Tuple[Tuple[RatFunc, RatFunc], Tuple[RatFunc, RatFunc]]:
    """Q4^+ 与 Q4^-；后者由 u -> -u 得到"""
    conic = solve_conic(fam, 1)
    plus = sixth_point(fam, conic, 1)
    if config.SOLVER_CONFIG['check_gauge']:
        u = RatFunc.gen('u')
        if sixth_point(fam, conic.scaled(u + 1), 1) != plus:
            raise CheckFailed("sixth point depends on the conic gauge", "conic gauge")
    flip = RatFunc._make(Poly([0, -1], 'u'), Poly([1], 'u'))
    minus = (substitute(plus[0], flip), substitute(plus[1], flip))
    return plus, minus


def psi_q4(fam: ThreeIsogenyFamily) -> Tuple[CurvePoint, CurvePoint]:
    """P_φ^± = Ψ_u(Q4^±)"""
    psi = TransformPsi(fam)
    plus, minus = q4_points(fam)
    return psi(*plus), psi(*minus)


def section_F1(fam: ThreeIsogenyFamily, P_pm: Optional[Tuple[CurvePoint, CurvePoint]] = None) -> DescendedSection:
    """
    P^(1)_φ = P_φ^+ - P_φ^-：在 u -> -ωu 下不变，改写为 s = u^6 的函数
    """
    F6 = build_weier_f6(fam).curve
    Pp, Pm = P_pm or psi_q4(fam)
    diff = ec_group('add', F6, Pp, ec_group('neg', F6, Pm))
    zeta = None
    if config.SOLVER_CONFIG['check_descent']:
        w = _omega_for(fam.tower, extend=True)
        zeta = -w
    point = _descend_point(diff, 6, 's', zeta)
    surface = family_surface(fam, 1)
    _on(surface.curve, point, "P1 on F^(1)")
    if config.SOLVER_CONFIG['check_closed_form'] and point != closed_form_P1(fam):
        raise CheckFailed("P^(1) differs from the closed form", "closed form of P^(1)")
    return DescendedSection(surface, point, {'kind': 'P1_from_phi'})


def section_F2(fam: ThreeIsogenyFamily, P_plus: Optional[CurvePoint] = None) -> DescendedSection:
    """
    P^(2)_φ = P_φ^+ - P_Ō：在 u -> ωu 下不变，改写为 t = u^3 的函数
    """
    F6 = build_weier_f6(fam).curve
    if P_plus is None:
        P_plus = psi_q4(fam)[0]
    P_obar = obar_section(fam)
    diff = ec_group('add', F6, P_plus, ec_group('neg', F6, P_obar))
    zeta = None
    if config.SOLVER_CONFIG['check_descent']:
        zeta = _omega_for(fam.tower, extend=True)
    point = _descend_point(diff, 3, 't', zeta)
    surface = family_surface(fam, 2)
    _on(surface.curve, point, "P2 on F^(2)")
    if config.SOLVER_CONFIG['check_closed_form'] and point != closed_form_P2(fam):
        raise CheckFailed("P^(2) differs from the closed form", "closed form of P^(2)")
    return DescendedSection(surface, point, {'kind': 'P2_from_phi'})


RIJ_ORDER = ((2, 2), (3, 3), (2, 3), (3, 2))


def sections_Rij(fam: ThreeIsogenyFamily, torsion: Optional[TwoTorsionData] = None) -> List[DescendedSection]:
    """
    R_ij = Ψ_u(α_i : β_j : 1) - Ψ_u(α_1 : β_1 : 1)，(i, j) 依次为 22, 33, 23, 32
    """
    torsion = torsion or two_torsion(fam)
    psi = TransformPsi(fam)
    F6 = build_weier_f6(fam).curve
    origin = psi(torsion.alphas[0], torsion.betas[0])
    neg_origin = ec_group('neg', F6, origin)
    zeta = None
    if config.SOLVER_CONFIG['check_descent']:
        zeta = _omega_for(torsion.tower, extend=True)
    surface = family_surface(fam, 2)
    out = []
    for i, j in RIJ_ORDER:
        image = psi(torsion.alphas[i - 1], torsion.betas[j - 1])
        diff = ec_group('add', F6, image, neg_origin)
        point = _descend_point(diff, 3, 't', zeta)
        _on(surface.curve, point, f"R{i}{j} on F^(2)")
        out.append(DescendedSection(surface, point, {'kind': 'R_ij', 'i': i, 'j': j}))
    return out


# ----------------------------------------------------------------------
# Galois 与复乘的像
# ----------------------------------------------------------------------
def galois_image(sec: DescendedSection, auto: FieldAutomorphism) -> DescendedSection:
    """按系数作用自同构；曲面须在自同构下不变"""
    curve = sec.surface.curve
    conj = curve.map_coeffs(lambda c: c.map_coeffs(auto) if isinstance(c, RatFunc) else auto(c))
    if conj != curve:
        raise ImageOffCurve(f"{auto!r} does not preserve {curve}")
    point = sec.point.map_coords(lambda f: f.map_coeffs(auto) if isinstance(f, RatFunc) else auto(f))
    if not curve.contains(point):
        raise ImageOffCurve(f"image under {auto!r} is not on the curve")
    prov = {'kind': 'galois_image', 'of': sec.provenance.get('kind'), 'automorphism': auto.name}
    return DescendedSection(sec.surface, point, prov)


def cm_image(sec: DescendedSection, x_factor, y_factor, var_scale=1, x_shift=0,
             name: str = "cm") -> DescendedSection:
    """
    (X(v), Y(v)) -> (x_factor·X(κv) + x_shift, y_factor·Y(κv))，κ = var_scale
    例：[-ω](X, Y) = (ωX, -Y)
    """
    var = sec.surface.var
    image = None
    if var_scale != 1:
        image = RatFunc._make(Poly([0, var_scale], var), Poly([1], var))

    def pull(f):
        return substitute(f, image) if image is not None else f

    P = sec.point
    point = CurvePoint(pull(P.x) * x_factor + x_shift, pull(P.y) * y_factor)
    if not sec.surface.curve.contains(point):
        raise ImageOffCurve(f"{name} image is not on the curve")
    return DescendedSection(sec.surface, point, {'kind': 'cm_image', 'of': sec.provenance.get('kind'),
                                                 'map': name})


def group_combination(sec_list: Sequence[DescendedSection], coeffs: Sequence[int]) -> DescendedSection:
    """Σ n_i P_i"""
    surface = sec_list[0].surface
    E = surface.curve
    total = CurvePoint.infinity()
    for sec, n in zip(sec_list, coeffs):
        if n:
            total = ec_group('add', E, ec_group('smul', E, sec.point, n), total)
    return DescendedSection(surface, total, {'kind': 'group_combination', 'coeffs': list(coeffs)})


# ----------------------------------------------------------------------
# 闭式
# ----------------------------------------------------------------------
def closed_form_P1(fam: ThreeIsogenyFamily, var: str = 's') -> CurvePoint:
    a, b, ap, bp = fam.a, fam.b, fam.ap, fam.bp
    aa, bb = a * ap, b * bp
    s = RatFunc.gen(var)
    S = Fraction(9, 2) * (b * b * s / 9 + 9 * bp * bp / s)
    c2 = 8 * aa + 81 * bb
    c1 = Fraction(16, 9) * aa * aa - 144 * aa * bb + 729 * bb * bb
    c0 = bb * (80 * aa * aa - 1944 * aa * bb + 2187 * bb * bb)
    X = -(3 * S ** 3 + c2 * S * S + c1 * S + c0) / (16 * aa * (S - 9 * bb))
    d3 = 36 * (aa + 9 * bb)
    d2 = 2 * (16 * aa * aa - 162 * aa * bb + 2187 * bb * bb)
    d1 = -108 * bb * (8 * aa * aa + 135 * aa * bb - 243 * bb * bb)
    d0 = -3 * bb * (128 * aa ** 3 - 6912 * aa * aa * bb + 26244 * aa * bb * bb - 19683 * bb ** 3)
    quartic = 9 * S ** 4 + d3 * S ** 3 + d2 * S * S + d1 * S + d0
    Y = -s * (b * s + 9 * bp) * quartic / (288 * a ** 3 * (b * s - 9 * bp) ** 3)
    return CurvePoint(X, Y)


def closed_form_P2(fam: ThreeIsogenyFamily, var: str = 't') -> CurvePoint:
    a, b = fam.a, fam.b
    beta = 4 * a + 27 * b
    t = RatFunc.gen(var)
    T = b * t - beta / t
    X = (T * T + 4 * a * T + Fraction(4, 3) * (a * a + 3 * b * beta)) / 4
    Y = (b * t + beta / t) * (T * T + 6 * a * T + 4 * (2 * a * a + b * beta)) / 8
    return CurvePoint(X, Y)


# ----------------------------------------------------------------------
# 并行
# ----------------------------------------------------------------------
def map_parallel(fn: Callable[[Any], Any], items: Sequence[Any], max_workers: Optional[int] = None,
                 progress=None) -> List[Any]:
    """对互相独立的输入并行求值，结果按输入顺序返回"""
    workers = max_workers or config.RUN_CONFIG['max_workers']
    results: List[Any] = [None] * len(items)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(fn, item): idx for idx, item in enumerate(items)}
        for future in as_completed(futures):
            results[futures[future]] = future.result()
            if progress is not None:
                progress.update(1)
    return results
