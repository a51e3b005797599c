#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
多项式与有理函数模块
单变量稠密多项式（系数为 Fraction、NFElement 或另一变量的 RatFunc），
规范形式的有理函数，赋值，互素无平方因子基，截断幂级数
"""

from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import sympy

from exact_arith import FieldTower, NFElement, QQ, common_tower
from errors import DivisionByZero, IndeterminateForm, ZeroFunction, NotInSubfield

ZERO = Fraction(0)
ONE = Fraction(1)


def _norm(c):
    return Fraction(c) if isinstance(c, int) else c


def _fmt(c) -> str:
    text = str(c)
    if any(ch in text[1:] for ch in " +-") or isinstance(c, RatFunc):
        return f"({text})"
    return text


class Poly:
    """
    稠密单变量多项式，coeffs 由低次到高次，最高位非零，零多项式为 []
    另一变量的多项式或有理函数作为系数参与运算
    """

    __slots__ = ('coeffs', 'var')

    def __init__(self, coeffs: Sequence[Any] = (), var: str = 'x'):
        cs = [_norm(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs
        self.var = var

    @classmethod
    def constant(cls, c, var: str = 'x') -> "Poly":
        return cls([c], var)

    @classmethod
    def gen(cls, var: str = 'x') -> "Poly":
        return cls([0, 1], var)

    @classmethod
    def monomial(cls, c, n: int, var: str = 'x') -> "Poly":
        return cls([0] * n + [c], var)

    # ------------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def exponents(self) -> List[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def _other(self, other):
        """把运算对象转成同变量多项式；不能处理时返回 None"""
        if isinstance(other, Poly):
            if other.var == self.var:
                return other
            if other.is_constant():
                return Poly(other.coeffs, self.var)
            raise ValueError(f"variable mismatch: {self.var} and {other.var}")
        if isinstance(other, RatFunc) and other.var == self.var:
            return None
        if isinstance(other, (int, Fraction, NFElement, RatFunc, TruncatedSeries)):
            return Poly([other], self.var)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Poly([], self.var)
        if len(b) == 1:
            c = b[0]
            return Poly([x * c for x in a], self.var)
        if len(a) == 1:
            c = a[0]
            return Poly([c * y for y in b], self.var)
        out: List[Any] = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Poly([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not o:
            raise DivisionByZero("polynomial division by zero")
        r = list(self.coeffs)
        g = o.coeffs
        dq = len(g) - 1
        if len(r) - 1 < dq:
            return Poly([], self.var), Poly(r, self.var)
        lc = g[-1]
        inv = None if lc == 1 else ONE / lc
        q: List[Any] = [ZERO] * (len(r) - dq)
        for i in range(len(r) - 1, dq - 1, -1):
            c = r[i]
            if not c:
                continue
            if inv is not None:
                c = c * inv
            q[i - dq] = c
            for j in range(dq):
                if g[j]:
                    r[i - dq + j] = r[i - dq + j] - c * g[j]
            r[i] = ZERO
        return Poly(q, self.var), Poly(r[:dq], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs and (self.var == other.var or self.is_constant())
        if isinstance(other, (int, Fraction, NFElement)):
            return self.coeffs == Poly([other], self.var).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.coeff(0))
        return hash((self.var, tuple(self.coeffs)))

    def __call__(self, value):
        acc: Any = ZERO
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def monic(self) -> "Poly":
        if not self.coeffs or self.lc == 1:
            return self
        inv = ONE / self.lc
        return Poly([c * inv for c in self.coeffs], self.var)

    def derivative(self) -> "Poly":
        return Poly([c * i for i, c in enumerate(self.coeffs)][1:], self.var)

    def map_coeffs(self, fn) -> "Poly":
        return Poly([fn(c) for c in self.coeffs], self.var)

    def scale_var(self, c) -> "Poly":
        """p(c·x)"""
        out = []
        pw: Any = ONE
        for a in self.coeffs:
            out.append(a * pw)
            pw = pw * c
        return Poly(out, self.var)

    def reversed(self, n: Optional[int] = None) -> "Poly":
        """x^n p(1/x)，n 缺省为次数"""
        n = self.degree if n is None else n
        return Poly([ZERO] * (n - self.degree) + list(reversed(self.coeffs)), self.var)

    def rename(self, var: str) -> "Poly":
        return Poly(self.coeffs, var)

    def tower(self) -> FieldTower:
        return coeff_tower(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if not mono:
                terms.append(_fmt(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{_fmt(c)}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly({self}, var={self.var})"

    def to_json(self) -> Dict[str, Any]:
        tower = self.tower()
        return {
            'var': self.var,
            'tower': tower.to_json(),
            'coeffs': [tower.element(c).coeff_pairs() for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Poly":
        tower = FieldTower.from_json(data['tower'])
        coeffs = [NFElement.from_coeff_pairs(tower, pairs) for pairs in data['coeffs']]
        if tower.level == 0:
            coeffs = [c.to_fraction() for c in coeffs]
        return cls(coeffs, data['var'])


def coeff_tower(values: Sequence[Any]) -> FieldTower:
    """一组系数所在的最小公共塔"""
    tower = QQ
    for c in values:
        if isinstance(c, NFElement):
            tower = common_tower(tower, c.tower)
    return tower


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """首一最大公因式"""
    a, b = f, g
    while b:
        a, b = b, a % b
        b = b.monic() if b else b
    return a.monic()


def poly_resultant(f: Poly, g: Poly) -> Any:
    """欧几里得算法求结式"""
    if not f or not g:
        return ZERO
    m, n = f.degree, g.degree
    if n == 0:
        return g.lc ** m
    if m == 0:
        return f.lc ** n
    r = f % g
    if not r:
        return ZERO
    sign = -1 if (m * n) % 2 else 1
    return sign * g.lc ** (m - r.degree) * poly_resultant(g, r)


def poly_arith(op: str, f: Poly, g: Poly):
    """
    多项式运算
    :param op: add / mul / divrem / gcd / resultant
    """
    if f.var != g.var and not (f.is_constant() or g.is_constant()):
        raise ValueError(f"variable mismatch: {f.var} and {g.var}")
    if op == 'add':
        return f + g
    if op == 'mul':
        return f * g
    if op == 'divrem':
        return divmod(f, g)
    if op == 'gcd':
        return poly_gcd(f, g)
    if op == 'resultant':
        return poly_resultant(f, g)
    raise ValueError(f"unknown operation: {op}")


def squarefree_part(f: Poly) -> Poly:
    return f.monic() // poly_gcd(f, f.derivative())


def coprime_basis(polys: Sequence[Poly]) -> List[Poly]:
    """
    互素无平方因子基：每个输入都是基元素幂的乘积（差一个常数）
    """
    basis: List[Poly] = []
    for p in polys:
        if not p or p.degree < 1:
            continue
        todo = [squarefree_part(p)]
        while todo:
            q = todo.pop()
            if q.degree < 1:
                continue
            for i, b in enumerate(basis):
                g = poly_gcd(q, b)
                if g.degree >= 1:
                    basis.pop(i)
                    todo.extend([g, b // g, q // g])
                    break
            else:
                basis.append(q.monic())
    basis.sort(key=lambda b: (b.degree, str(b)))
    return basis


def rational_roots(f: Poly) -> List[Fraction]:
    """有理系数多项式的全部有理根（不计重数，升序）"""
    coeffs = []
    for c in f.coeffs:
        if isinstance(c, NFElement):
            c = c.to_fraction()
        coeffs.append(sympy.Rational(c.numerator, c.denominator))
    if len(coeffs) <= 1:
        return []
    x = sympy.Symbol(f.var)
    roots = sympy.Poly(list(reversed(coeffs)), x, domain='QQ').ground_roots()
    return sorted(Fraction(int(r.p), int(r.q)) for r in roots)


class RatFunc:
    """
    规范形式有理函数 num/den：den 首一，gcd(num, den) = 1
    """

    __slots__ = ('num', 'den')

    def __init__(self, num, den=None, var: Optional[str] = None):
        if not isinstance(num, Poly):
            num = Poly([num], var or (den.var if isinstance(den, Poly) else 'x'))
        if den is None:
            den = Poly([1], num.var)
        elif not isinstance(den, Poly):
            den = Poly([den], num.var)
        if not den:
            raise DivisionByZero("zero denominator")
        if num.var != den.var:
            if num.is_constant():
                num = num.rename(den.var)
            elif den.is_constant():
                den = den.rename(num.var)
            else:
                raise ValueError("numerator and denominator use different variables")
        if den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            inv = ONE / lc
            num = Poly([c * inv for c in num.coeffs], num.var)
            den = Poly([c * inv for c in den.coeffs], den.var)
        if not num:
            den = Poly([1], num.var)
        self.num = num
        self.den = den

    @classmethod
    def _make(cls, num: Poly, den: Poly) -> "RatFunc":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def gen(cls, var: str) -> "RatFunc":
        return cls._make(Poly([0, 1], var), Poly([1], var))

    @classmethod
    def constant(cls, c, var: str) -> "RatFunc":
        return cls._make(Poly([c], var), Poly([1], var))

    @property
    def var(self) -> str:
        return self.num.var

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coeff(0)

    def __bool__(self) -> bool:
        return bool(self.num)

    def _other(self, other):
        if isinstance(other, RatFunc):
            if other.var == self.var:
                return other
            if other.is_constant():
                return RatFunc.constant(other.constant_value(), self.var)
            raise ValueError(f"variable mismatch: {self.var} and {other.var}")
        if isinstance(other, Poly):
            if other.var == self.var:
                return RatFunc._make(other, Poly([1], self.var))
            if other.is_constant():
                return RatFunc.constant(other.coeff(0), self.var)
            return None
        if isinstance(other, (int, Fraction, NFElement)):
            return RatFunc.constant(other, self.var)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, o.num, o.den
        if b.degree == 0 and d.degree == 0:
            return RatFunc._make(a + c, b)
        if d.degree == 0:
            return RatFunc._make(a + c * b, b)
        if b.degree == 0:
            return RatFunc._make(a * d + c, d)
        # Henrici
        g = poly_gcd(b, d)
        if g.degree == 0:
            return RatFunc._make(a * d + c * b, b * d)
        b1, d1 = b // g, d // g
        n = a * d1 + c * b1
        h = poly_gcd(n, g)
        den = b1 * d
        if h.degree > 0:
            n, den = n // h, den // h
        if not n:
            den = Poly([1], self.var)
        return RatFunc._make(n, den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make(-self.num, self.den)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, o.num, o.den
        if not a or not c:
            return RatFunc._make(Poly([], self.var), Poly([1], self.var))
        if c.degree == 0 and d.degree == 0:
            return RatFunc._make(a * c.coeffs[0], b)
        if a.degree == 0 and b.degree == 0:
            return RatFunc._make(c * a.coeffs[0], d)
        g1 = poly_gcd(a, d) if d.degree > 0 else None
        g2 = poly_gcd(c, b) if b.degree > 0 else None
        if g1 is not None and g1.degree > 0:
            a, d = a // g1, d // g1
        if g2 is not None and g2.degree > 0:
            c, b = c // g2, b // g2
        return RatFunc._make(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise DivisionByZero("inverse of the zero function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._make(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        try:
            o = self._other(other)
        except ValueError:
            return False
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((hash(self.num), hash(self.den)))

    def __call__(self, value):
        d = self.den(value)
        if not d:
            raise DivisionByZero(f"pole of {self} at {value}")
        n = self.num(value)
        if self.den.degree == 0 and d == 1:
            return n
        return n / d

    def map_coeffs(self, fn) -> "RatFunc":
        return RatFunc(self.num.map_coeffs(fn), self.den.map_coeffs(fn))

    def rename(self, var: str) -> "RatFunc":
        return RatFunc._make(self.num.rename(var), self.den.rename(var))

    def tower(self) -> FieldTower:
        return common_tower(self.num.tower(), self.den.tower())

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def to_json(self) -> Dict[str, Any]:
        return {'num': self.num.to_json(), 'den': self.den.to_json()}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "RatFunc":
        return cls(Poly.from_json(data['num']), Poly.from_json(data['den']))


def as_ratfunc(f, var: Optional[str] = None) -> RatFunc:
    if isinstance(f, RatFunc):
        return f
    if isinstance(f, Poly):
        return RatFunc._make(f, Poly([1], f.var))
    return RatFunc.constant(f, var or 'x')


def substitute(f, image) -> Any:
    """
    复合 f(image)
    :param f: 多项式或有理函数
    :param image: 像（有理函数、多项式或常数）
    """
    f = as_ratfunc(f)
    if not isinstance(image, (Poly, RatFunc)):
        return f(image)
    image = as_ratfunc(image)
    n, d = f.num, f.den
    p, q = image.num, image.den
    w = image.var
    # c·w
    if q.degree == 0 and p.degree == 1 and not p.coeffs[0]:
        c = p.coeffs[1] / q.coeffs[0] if q.coeffs[0] != 1 else p.coeffs[1]
        num, den = n.scale_var(c).rename(w), d.scale_var(c).rename(w)
        lc = den.lc
        if lc != 1:
            inv = ONE / lc
            num = Poly([x * inv for x in num.coeffs], w)
            den = Poly([x * inv for x in den.coeffs], w)
        return RatFunc._make(num, den)
    # 1/w
    if p.degree == 0 and q.degree == 1 and not q.coeffs[0] and p.coeffs[0] == q.coeffs[1]:
        e = max(n.degree, d.degree)
        num = Poly([ZERO] * (e - n.degree) + list(reversed(n.coeffs)), w)
        den = Poly([ZERO] * (e - d.degree) + list(reversed(d.coeffs)), w)
        return RatFunc(num, den)
    e = max(n.degree, d.degree)
    powers_p = [Poly([1], w)]
    powers_q = [Poly([1], w)]
    for _ in range(e):
        powers_p.append(powers_p[-1] * p)
        powers_q.append(powers_q[-1] * q)

    def homog(poly: Poly) -> Poly:
        acc = Poly([], w)
        for i, c in enumerate(poly.coeffs):
            if c:
                acc = acc + powers_p[i] * powers_q[e - i] * c
        return acc

    den = homog(d)
    if not den:
        raise IndeterminateForm(f"denominator of {f} vanishes under the substitution")
    return RatFunc(homog(n), den)


class Place:
    """有理函数域的位：有限位（首一不可约多项式）或无穷远位"""

    __slots__ = ('kind', 'poly', 'var')

    def __init__(self, kind: str, poly: Optional[Poly] = None, var: Optional[str] = None):
        self.kind = kind
        self.poly = poly.monic() if poly is not None else None
        self.var = var or (poly.var if poly is not None else 'x')

    @classmethod
    def finite(cls, poly: Poly) -> "Place":
        if poly.degree < 1:
            raise ValueError("a finite place needs a nonconstant polynomial")
        return cls('finite', poly)

    @classmethod
    def at(cls, root, var: str) -> "Place":
        return cls('finite', Poly([-root, 1], var))

    @classmethod
    def infinity(cls, var: str) -> "Place":
        return cls('infinity', None, var)

    @property
    def is_infinity(self) -> bool:
        return self.kind == 'infinity'

    @property
    def degree(self) -> int:
        return 1 if self.is_infinity else self.poly.degree

    @property
    def root(self):
        """一次位的根"""
        if self.is_infinity or self.poly.degree != 1:
            raise ValueError(f"{self} is not a rational point")
        return -self.poly.coeff(0)

    def uniformizer(self) -> RatFunc:
        if self.is_infinity:
            return RatFunc(1, Poly.gen(self.var))
        return as_ratfunc(self.poly)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Place) and self.kind == other.kind
                and self.var == other.var and self.poly == other.poly)

    def __hash__(self) -> int:
        return hash((self.kind, self.var, self.poly))

    def __str__(self) -> str:
        if self.is_infinity:
            return f"{self.var}=oo"
        if self.poly.degree == 1:
            return f"{self.var}={self.root}"
        return f"({self.poly})"

    def __repr__(self) -> str:
        return f"Place({self})"


def _poly_valuation(f: Poly, g: Poly) -> int:
    n = 0
    while True:
        q, r = divmod(f, g)
        if r:
            return n
        f = q
        n += 1


def valuation(f, place: Place) -> int:
    """f 在 place 处的阶"""
    f = as_ratfunc(f, place.var)
    if not f:
        raise ZeroFunction("valuation of the zero function")
    if place.is_infinity:
        return f.den.degree - f.num.degree
    return _poly_valuation(f.num, place.poly) - _poly_valuation(f.den, place.poly)


def rewrite_in_power(f, m: int, newvar: str, zeta=None) -> RatFunc:
    """
    把关于 u ↦ ζu 不变的 f(u) 写成 R(u^m)
    :param zeta: 本原 m 次单位根；给出时先做不变性检验
    """
    f = as_ratfunc(f)
    u = f.var
    if zeta is not None:
        moved = substitute(f, RatFunc._make(Poly([0, zeta], u), Poly([1], u)))
        if moved != f:
            raise NotInSubfield(f"function is not invariant under {u} -> zeta*{u}")
    for poly in (f.num, f.den):
        if any(e % m for e in poly.exponents()):
            raise NotInSubfield(f"function is not a function of {u}^{m}")
    num = Poly(f.num.coeffs[::m], newvar)
    den = Poly(f.den.coeffs[::m], newvar)
    result = RatFunc._make(num, den)
    back = substitute(result, RatFunc._make(Poly.monomial(1, m, u), Poly([1], u)))
    if back != f:
        raise NotInSubfield("rewritten function does not reproduce the input")
    return result


class TruncatedSeries:
    """
    截断幂级数 Σ c_i h^i (i < order)，系数取自任意域
    """

    __slots__ = ('coeffs', 'order')

    def __init__(self, coeffs: Sequence[Any], order: int):
        cs = [_norm(c) for c in coeffs][:order]
        cs += [ZERO] * (order - len(cs))
        self.coeffs = cs
        self.order = order

    @classmethod
    def variable(cls, value, order: int) -> "TruncatedSeries":
        """value + h"""
        return cls([value, ONE], order)

    def _other(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries([other], self.order)

    def __add__(self, other):
        o = self._other(other)
        n = min(self.order, o.order)
        return TruncatedSeries([self.coeffs[i] + o.coeffs[i] for i in range(n)], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) + (-self)

    def __mul__(self, other):
        o = self._other(other)
        n = min(self.order, o.order)
        out: List[Any] = [ZERO] * n
        for i in range(n):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(n - i):
                if o.coeffs[j]:
                    out[i + j] = out[i + j] + a * o.coeffs[j]
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = TruncatedSeries([ONE], self.order)
        for _ in range(k):
            result = result * self
        return result

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.order

    def __truediv__(self, other):
        o = self._other(other)
        k = o.valuation()
        if k >= o.order:
            raise DivisionByZero("division by a series that vanishes to full precision")
        if self.valuation() < k:
            raise IndeterminateForm("quotient has a pole")
        a = self.coeffs[k:]
        b = o.coeffs[k:]
        n = min(len(a), len(b))
        inv = ONE / b[0]
        out: List[Any] = []
        for i in range(n):
            acc = a[i]
            for j in range(1, i + 1):
                if b[j] and out[i - j]:
                    acc = acc - b[j] * out[i - j]
            out.append(acc * inv)
        return TruncatedSeries(out, n)

    def __rtruediv__(self, other):
        return self._other(other) / self

    def __getitem__(self, i: int):
        return self.coeffs[i]

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.coeffs}, order={self.order})"


def value_to_json(v) -> Dict[str, Any]:
    """标量、多项式或有理函数的 JSON 表示"""
    if isinstance(v, RatFunc):
        return {'ratfunc': v.to_json()}
    if isinstance(v, Poly):
        return {'poly': v.to_json()}
    if isinstance(v, NFElement):
        return {'nf': v.to_json()}
    v = Fraction(v)
    return {'q': [v.numerator, v.denominator]}


def value_from_json(data: Dict[str, Any]):
    if 'ratfunc' in data:
        return RatFunc.from_json(data['ratfunc'])
    if 'poly' in data:
        return Poly.from_json(data['poly'])
    if 'nf' in data:
        return NFElement.from_json(data['nf'])
    n, d = data['q']
    return Fraction(n, d)
