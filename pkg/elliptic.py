#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
椭圆曲线模块
一般 Weierstrass 方程 y^2 + a1xy + a3y = x^3 + a2x^2 + a4x + a6，
系数可以是有理数、数域元素或有理函数
"""

from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from poly_ratfunc import RatFunc, substitute, value_to_json, value_from_json
from errors import PointNotOnCurve, SingularCurve, ZeroScale, SingularPoint

ZERO = Fraction(0)


class WeierstrassCurve:
    """Weierstrass 曲线"""

    __slots__ = ('a1', 'a2', 'a3', 'a4', 'a6', '_disc')

    def __init__(self, a1=0, a2=0, a3=0, a4=0, a6=0, check: bool = True):
        norm = lambda c: Fraction(c) if isinstance(c, int) else c
        self.a1, self.a2, self.a3, self.a4, self.a6 = map(norm, (a1, a2, a3, a4, a6))
        self._disc = None
        if check and not self.discriminant:
            raise SingularCurve(f"discriminant of {self} vanishes")

    @classmethod
    def short(cls, a4, a6, check: bool = True) -> "WeierstrassCurve":
        return cls(0, 0, 0, a4, a6, check=check)

    @property
    def coeffs(self) -> Tuple[Any, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self):
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.coeffs
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def c4(self):
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self):
        b2 = self.b2
        return -b2 * b2 * b2 + 36 * b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self):
        if self._disc is None:
            b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
            self._disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        return self._disc

    @property
    def j(self):
        c4 = self.c4
        return c4 * c4 * c4 / self.discriminant

    def is_short(self) -> bool:
        return not (self.a1 or self.a2 or self.a3)

    def rhs(self, x):
        """x^3 + a2x^2 + a4x + a6"""
        value = x * x * x + self.a6
        if self.a2:
            value = value + self.a2 * x * x
        if self.a4:
            value = value + self.a4 * x
        return value

    def contains(self, P: "CurvePoint") -> bool:
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        lhs = y * y
        if self.a1:
            lhs = lhs + self.a1 * x * y
        if self.a3:
            lhs = lhs + self.a3 * y
        return lhs == self.rhs(x)

    def point(self, x, y) -> "CurvePoint":
        """构造并检验曲线上的点"""
        P = CurvePoint(x, y)
        if not self.contains(P):
            raise PointNotOnCurve(f"({x}, {y}) is not on {self}")
        return P

    def map_coeffs(self, fn, check: bool = True) -> "WeierstrassCurve":
        return WeierstrassCurve(*(fn(c) for c in self.coeffs), check=check)

    def __eq__(self, other) -> bool:
        return isinstance(other, WeierstrassCurve) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash(tuple(hash(c) for c in self.coeffs))

    def __str__(self) -> str:
        lhs = "Y^2"
        if self.a1:
            lhs += f" + ({self.a1})*X*Y"
        if self.a3:
            lhs += f" + ({self.a3})*Y"
        rhs = "X^3"
        for c, mono in ((self.a2, "X^2"), (self.a4, "X"), (self.a6, "")):
            if c:
                rhs += f" + ({c})" + (f"*{mono}" if mono else "")
        return f"{lhs} = {rhs}"

    def __repr__(self) -> str:
        return f"WeierstrassCurve({self})"

    def to_json(self) -> Dict[str, Any]:
        return {name: value_to_json(c) for name, c in zip(('a1', 'a2', 'a3', 'a4', 'a6'), self.coeffs)}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "WeierstrassCurve":
        return cls(*(value_from_json(data[name]) for name in ('a1', 'a2', 'a3', 'a4', 'a6')))


class CurvePoint:
    """仿射点 (x, y) 或无穷远点"""

    __slots__ = ('x', 'y')

    def __init__(self, x=None, y=None):
        self.x = x
        self.y = y

    @classmethod
    def infinity(cls) -> "CurvePoint":
        return cls(None, None)

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def map_coords(self, fx, fy=None) -> "CurvePoint":
        if self.is_infinity:
            return self
        fy = fy or fx
        return CurvePoint(fx(self.x), fy(self.y))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash((hash(self.x), hash(self.y)))

    def __str__(self) -> str:
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"

    def __repr__(self) -> str:
        return f"CurvePoint{self}"

    def to_json(self) -> Dict[str, Any]:
        if self.is_infinity:
            return {'inf': True}
        return {'X': value_to_json(self.x), 'Y': value_to_json(self.y)}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "CurvePoint":
        if data.get('inf'):
            return cls.infinity()
        return cls(value_from_json(data['X']), value_from_json(data['Y']))


# ----------------------------------------------------------------------
# 群运算
# ----------------------------------------------------------------------
def point_neg(E: WeierstrassCurve, P: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return P
    y = -P.y
    if E.a1:
        y = y - E.a1 * P.x
    if E.a3:
        y = y - E.a3
    return CurvePoint(P.x, y)


def point_add(E: WeierstrassCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """弦切法加法（不做在线检验）"""
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a1, a2, a3, a4, a6 = E.coeffs
    if P.x == Q.x:
        x = P.x
        denom = 2 * P.y
        if a1:
            denom = denom + a1 * x
        if a3:
            denom = denom + a3
        if P.y != Q.y or not denom:
            return CurvePoint.infinity()
        num = 3 * x * x + a4
        if a2:
            num = num + 2 * a2 * x
        if a1:
            num = num - a1 * P.y
        slope = num / denom
    else:
        slope = (Q.y - P.y) / (Q.x - P.x)
    x3 = slope * slope - P.x - Q.x
    if a1:
        x3 = x3 + a1 * slope
    if a2:
        x3 = x3 - a2
    y3 = slope * (P.x - x3) - P.y
    if a1:
        y3 = y3 - a1 * x3
    if a3:
        y3 = y3 - a3
    return CurvePoint(x3, y3)


def point_mul(E: WeierstrassCurve, P: CurvePoint, n: int) -> CurvePoint:
    if n < 0:
        return point_mul(E, point_neg(E, P), -n)
    result = CurvePoint.infinity()
    base = P
    while n:
        if n & 1:
            result = point_add(E, result, base)
        n >>= 1
        if n:
            base = point_add(E, base, base)
    return result


def ec_group(op: str, E: WeierstrassCurve, P: CurvePoint, Q=None) -> CurvePoint:
    """
    曲线群运算
    :param op: add / neg / smul
    :param Q: add 时为第二个点，smul 时为整数倍数
    """
    if not E.contains(P):
        raise PointNotOnCurve(f"{P} is not on {E}")
    if op == 'neg':
        return point_neg(E, P)
    if op == 'smul':
        return point_mul(E, P, int(Q))
    if op == 'add':
        if not E.contains(Q):
            raise PointNotOnCurve(f"{Q} is not on {E}")
        return point_add(E, P, Q)
    raise ValueError(f"unknown operation: {op}")


def ec_invariants(E: WeierstrassCurve):
    """返回 (c4, c6, Δ, j)"""
    disc = E.discriminant
    if not disc:
        raise SingularCurve(f"discriminant of {E} vanishes")
    c4 = E.c4
    return c4, E.c6, disc, c4 * c4 * c4 / disc


def rescale_model(E: WeierstrassCurve, points: Sequence[CurvePoint], lam):
    """(X, Y) -> (λ^2 X, λ^3 Y)"""
    if not lam:
        raise ZeroScale("scale factor must be nonzero")
    transform = ModelTransform(lam)
    return transport_curve(transform, E), [transport_point(transform, P) for P in points]


class ModelTransform:
    """
    模型变换 X' = λ^2 X(v), Y' = ε λ^3 Y(v)，其中 v = base(v')
    :param lam: 坐标缩放 λ
    :param base: 底变量的代换（有理函数），None 表示不变
    :param orientation: ε = ±1
    """

    def __init__(self, lam=1, base: Optional[RatFunc] = None, orientation: int = 1, name: str = ""):
        if not lam:
            raise ZeroScale("scale factor must be nonzero")
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        self.lam = Fraction(lam) if isinstance(lam, int) else lam
        self.base = base
        self.orientation = orientation
        self.name = name

    def _pull(self, value):
        if self.base is None or not isinstance(value, RatFunc):
            return value
        return substitute(value, self.base)

    def apply_x(self, x):
        return self.lam ** 2 * self._pull(x)

    def apply_y(self, y):
        return self.orientation * self.lam ** 3 * self._pull(y)

    def __repr__(self) -> str:
        return f"ModelTransform(lam={self.lam}, base={self.base}, orientation={self.orientation})"


def transport_point(T: ModelTransform, P: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return P
    return CurvePoint(T.apply_x(P.x), T.apply_y(P.y))


def transport_curve(T: ModelTransform, E: WeierstrassCurve) -> WeierstrassCurve:
    lam, eps = T.lam, T.orientation
    a1, a2, a3, a4, a6 = (T._pull(c) for c in E.coeffs)
    return WeierstrassCurve(eps * lam * a1, lam ** 2 * a2, eps * lam ** 3 * a3,
                            lam ** 4 * a4, lam ** 6 * a6)


# ----------------------------------------------------------------------
# 平面三次曲线
# ----------------------------------------------------------------------
def _cross(p, q):
    return (p[1] * q[2] - p[2] * q[1],
            p[2] * q[0] - p[0] * q[2],
            p[0] * q[1] - p[1] * q[0])


def proportional(p, q) -> bool:
    """两个齐次坐标向量是否成比例"""
    return not any(_cross(p, q))


def normalize_projective(p):
    """把最后一个非零坐标化为 1"""
    for c in reversed(p):
        if c:
            return tuple(x / c for x in p)
    raise ValueError("zero vector is not a projective point")


class PlaneCubicWithOrigin:
    """
    三元三次型 F(x1, x2, z) = Σ c_ijk x1^i x2^j z^k 及其上的原点
    terms: {(i, j, k): 系数}
    """

    def __init__(self, terms: Dict[Tuple[int, int, int], Any], origin: Tuple[Any, Any, Any]):
        self.terms = {e: c for e, c in terms.items() if c}
        if any(sum(e) != 3 for e in self.terms):
            raise ValueError("terms must be homogeneous of degree 3")
        self.origin = tuple(origin)
        if self(*self.origin):
            raise PointNotOnCurve("origin is not on the cubic")

    def __call__(self, x1, x2, z):
        total: Any = ZERO
        for (i, j, k), c in self.terms.items():
            total = total + c * x1 ** i * x2 ** j * z ** k
        return total

    def gradient(self, p):
        x1, x2, z = p
        grads: List[Any] = [ZERO, ZERO, ZERO]
        for (i, j, k), c in self.terms.items():
            if i:
                grads[0] = grads[0] + c * i * x1 ** (i - 1) * x2 ** j * z ** k
            if j:
                grads[1] = grads[1] + c * j * x1 ** i * x2 ** (j - 1) * z ** k
            if k:
                grads[2] = grads[2] + c * k * x1 ** i * x2 ** j * z ** (k - 1)
        return tuple(grads)

    def contains(self, p) -> bool:
        return not self(*p)

    def __repr__(self) -> str:
        return f"PlaneCubicWithOrigin({len(self.terms)} terms, origin={self.origin})"


def tangent_and_third(C: PlaneCubicWithOrigin, P):
    """
    P 处的切线及其与三次曲线的第三个交点
    :return: (切线系数 (l1, l2, l3), 第三交点)
    """
    P = tuple(P)
    if not C.contains(P):
        raise PointNotOnCurve(f"{P} is not on the cubic")
    line = C.gradient(P)
    if not any(line):
        raise SingularPoint(f"{P} is a singular point")
    # 取切线上另一点 Q
    Q = None
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        cand = _cross(line, e)
        if any(cand) and not proportional(cand, P):
            Q = cand
            break
    plus = tuple(p + q for p, q in zip(P, Q))
    minus = tuple(p - q for p, q in zip(P, Q))
    f_plus, f_minus = C(*plus), C(*minus)
    # F(sP + tQ) = A s t^2 + B t^3
    A = (f_plus + f_minus) / 2
    B = (f_plus - f_minus) / 2
    third = tuple(B * p - A * q for p, q in zip(P, Q))
    return line, third
