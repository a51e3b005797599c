#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
3-同源模块
两种 3-同源正规形式、显式同源映射以及两条曲线的 2-挠点
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from exact_arith import FieldTower, QQ, nf_sqrt
from poly_ratfunc import Poly, RatFunc, coeff_tower, rational_roots, value_to_json
from elliptic import WeierstrassCurve, CurvePoint
from errors import SingularMember, NotAField


class IsogenyMap:
    """φ(x, y) = (φ_x(x), φ_y(x)·y)"""

    def __init__(self, phi_x: RatFunc, phi_y: RatFunc):
        self.phi_x = phi_x
        self.phi_y = phi_y

    @property
    def degree(self) -> int:
        return max(self.phi_x.num.degree, self.phi_x.den.degree)

    def kernel_polynomial(self) -> Poly:
        return self.phi_x.den

    def __call__(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return P
        if not self.phi_x.den(P.x):
            return CurvePoint.infinity()
        return CurvePoint(self.phi_x(P.x), self.phi_y(P.x) * P.y)

    def to_json(self) -> Dict[str, Any]:
        return {'phi_x': self.phi_x.to_json(), 'phi_y': self.phi_y.to_json()}

    def __repr__(self) -> str:
        return f"IsogenyMap(phi_x={self.phi_x}, phi_y={self.phi_y})"


@dataclass
class ThreeIsogenyFamily:
    """E1: y^2 = x^3 + a(x-b)^2 与 E2: y^2 = x^3 + a'(x-b')^2"""
    a: Any
    b: Any
    ap: Any
    bp: Any
    E1: WeierstrassCurve
    E2: WeierstrassCurve
    phi: IsogenyMap
    tower: FieldTower = field(default=QQ)

    @property
    def f1(self) -> Poly:
        a, b = self.a, self.b
        return Poly([a * b * b, -2 * a * b, a, 1], 'x1')

    @property
    def f2(self) -> Poly:
        ap, bp = self.ap, self.bp
        return Poly([ap * bp * bp, -2 * ap * bp, ap, 1], 'x2')

    def to_json(self) -> Dict[str, Any]:
        return {
            'a': value_to_json(self.a),
            'b': value_to_json(self.b),
            'E1': self.E1.to_json(),
            'E2': self.E2.to_json(),
            'phi_x': self.phi.phi_x.to_json(),
            'phi_y': self.phi.phi_y.to_json(),
        }


@dataclass
class TwoTorsionData:
    alphas: List[Any]
    betas: List[Any]
    tower: FieldTower


def _normal_form_curve(a, b) -> WeierstrassCurve:
    # y^2 = x^3 + a x^2 - 2ab x + ab^2
    return WeierstrassCurve(0, a, 0, -2 * a * b, a * b * b, check=False)


def build_family(a, b) -> ThreeIsogenyFamily:
    """
    由 (a, b) 构造 3-同源族
    :return: E1, E2 = E1/G 及同源映射
    """
    a = Fraction(a) if isinstance(a, int) else a
    b = Fraction(b) if isinstance(b, int) else b
    if not a:
        raise SingularMember("a must be nonzero")
    ap = -3 * a
    bp = (4 * a + 27 * b) / 9
    E1 = _normal_form_curve(a, b)
    E2 = _normal_form_curve(ap, bp)
    if not E1.discriminant or not E2.discriminant:
        raise SingularMember(f"family member (a, b) = ({a}, {b}) is singular")
    x = 'x1'
    phi_x = RatFunc(Poly([12 * a * b * b, -12 * a * b, 4 * a, 3], x), Poly([0, 0, 3], x))
    phi_y = RatFunc(Poly([8 * a * b * b, -4 * a * b, 0, -1], x), Poly([0, 0, 0, 1], x))
    tower = coeff_tower([a, b])
    return ThreeIsogenyFamily(a, b, ap, bp, E1, E2, IsogenyMap(phi_x, phi_y), tower)


def build_j0(d):
    """
    y^2 = x^3 + d 关于 <(0, √d)> 的商
    :return: (E, E/G, φ)
    """
    d = Fraction(d) if isinstance(d, int) else d
    if not d:
        raise SingularMember("d must be nonzero")
    E = WeierstrassCurve.short(0, d)
    EG = WeierstrassCurve.short(0, -27 * d)
    x = 'x1'
    phi_x = RatFunc(Poly([4 * d, 0, 0, 1], x), Poly([0, 0, 1], x))
    phi_y = RatFunc(Poly([-8 * d, 0, 0, 1], x), Poly([0, 0, 0, 1], x))
    return E, EG, IsogenyMap(phi_x, phi_y)


def family_from_kernel(A2, A4, x0, A6=0) -> ThreeIsogenyFamily:
    """
    曲线 y^2 = x^3 + A2 x^2 + A4 x + A6 上以 x0 为横坐标的 3-挠点生成有理核时，
    平移 x -> x + x0 得到正规形式
    """
    A2, A4, x0, A6 = (Fraction(c) if isinstance(c, int) else c for c in (A2, A4, x0, A6))
    a = 3 * x0 + A2
    if not a:
        raise SingularMember("kernel point gives a = 0 (the j = 0 normal form)")
    b = -(3 * x0 * x0 + 2 * A2 * x0 + A4) / (2 * a)
    const = x0 * x0 * x0 + A2 * x0 * x0 + A4 * x0 + A6
    if a * b * b != const:
        raise ValueError(f"x0 = {x0} is not the x-coordinate of a 3-torsion point")
    return build_family(a, b)


def verify_isogeny(E1: WeierstrassCurve, E2: WeierstrassCurve, phi: IsogenyMap) -> bool:
    """检验 φ_y(x)^2 f1(x) = f2(φ_x(x)) 作为有理函数恒等式"""
    if E1.a1 or E1.a3 or E2.a1 or E2.a3:
        return False
    x = RatFunc.gen(phi.phi_x.var)
    lhs = phi.phi_y * phi.phi_y * E1.rhs(x)
    return lhs == E2.rhs(phi.phi_x)


def _cubic_discriminant(f: Poly):
    # 首一三次 x^3 + b x^2 + c x + d
    b, c, d = f.coeff(2), f.coeff(1), f.coeff(0)
    return 18 * b * c * d - 4 * b ** 3 * d + b * b * c * c - 4 * c ** 3 - 27 * d * d


def _fresh(tower: FieldTower, name: str) -> str:
    while name in tower.names:
        name += "'"
    return name


def two_torsion(fam: ThreeIsogenyFamily, roots: Optional[Sequence[Any]] = None) -> TwoTorsionData:
    """
    x^3 + a(x-b)^2 的三个根 α_i 与 β_i = φ_x(α_i)
    :param roots: 已知的三个根（按约定顺序）；缺省时按需扩张数域
    """
    f1 = fam.f1
    if roots is not None:
        alphas = list(roots)
        if len(alphas) != 3:
            raise ValueError("two_torsion needs exactly three roots")
        for r in alphas:
            if f1(r):
                raise ValueError(f"{r} is not a root of {f1}")
        if alphas[0] == alphas[1] or alphas[0] == alphas[2] or alphas[1] == alphas[2]:
            raise ValueError("roots must be distinct")
        tower = coeff_tower(alphas + [fam.a, fam.b])
    else:
        alphas, tower = _split_cubic(f1, fam.tower)
    alphas = [tower.element(r) for r in alphas]
    betas = [fam.phi.phi_x(r) for r in alphas]
    for beta in betas:
        if fam.E2.rhs(beta):
            raise NotAField(f"beta = {beta} is not a 2-torsion abscissa of E2")
    return TwoTorsionData(alphas, betas, tower)


def _split_cubic(f: Poly, tower: FieldTower):
    """求首一三次式的三个根，必要时添加一个三次根和一个平方根"""
    first = None
    if tower.level == 0:
        rr = rational_roots(f)
        if len(rr) == 3:
            return [tower.element(r) for r in rr], tower
        if rr:
            first = tower.element(rr[0])
    if first is None:
        name = _fresh(tower, 'alpha')
        tower = tower.extend(name, f.coeffs)
        first = tower.gen(name)
    # 余下的二次因子 x^2 + p x + q
    lin = Poly([-first, 1], f.var)
    quad = f // lin
    p = quad.coeff(1)
    disc_cubic = tower.element(_cubic_discriminant(f))
    deriv = f.derivative()(first)
    root_disc = nf_sqrt(disc_cubic)
    if root_disc is None:
        name = _fresh(tower, 'delta')
        tower = tower.extend(name, [-disc_cubic, 0, 1])
        root_disc = tower.gen(name)
        first = tower.element(first)
        p = tower.element(p)
        deriv = tower.element(deriv)
    # 二次因子判别式 = disc(f) / f'(α)^2
    s = root_disc / deriv
    second = (-p - s) / 2
    third = (-p + s) / 2
    return [first, second, third], tower
