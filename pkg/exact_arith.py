#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
精确算术模块
有理数 Q 以及由一串首一极小多项式逐级定义的数域塔 Q(g1)(g2)...

元素的内部表示（raw）按层递归：第 0 层是 Fraction，第 k 层是长度为 d_k 的元组，
每个分量是第 k-1 层的 raw。乘法按顶层生成元的极小多项式逐级取余。
"""

from fractions import Fraction
from functools import lru_cache
from math import isqrt, prod
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import mpmath
from mpmath.ctx_iv import MPIntervalContext

import config
from errors import (
    ComputationError, NotMonic, DegreeTooSmall, NotAField, DivisionByZero,
    PrecisionExhausted, TowerMismatch
)

# 任意精度有理数
BigRational = Fraction

Scalar = Union[int, Fraction, "NFElement"]


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not a rational: {value!r}")


class FieldTower:
    """
    数域塔
    steps 为 ((生成元名, 极小多项式 raw 系数元组), ...)，系数由低次到高次，
    每个系数是上一层的 raw，首项为 1
    """

    def __init__(self, steps: Sequence[Tuple[str, tuple]] = ()):
        self.steps = tuple((name, tuple(mp)) for name, mp in steps)
        self.names = tuple(name for name, _ in self.steps)
        self.degrees = tuple(len(mp) - 1 for _, mp in self.steps)
        self.level = len(self.steps)
        self.degree = prod(self.degrees) if self.degrees else 1
        self.key = self.steps
        self._minpolys = tuple(mp for _, mp in self.steps)
        # 各层的零元与单位元
        zeros: List[Any] = [Fraction(0)]
        ones: List[Any] = [Fraction(1)]
        for d in self.degrees:
            zeros.append((zeros[-1],) * d)
            ones.append((ones[-1],) + (zeros[-2],) * (d - 1))
        self._zeros = zeros
        self._ones = ones

    # ------------------------------------------------------------------
    # 基本信息
    # ------------------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, FieldTower) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        if not self.steps:
            return "FieldTower(Q)"
        return f"FieldTower(Q({', '.join(self.names)}), degree={self.degree})"

    def is_prefix_of(self, other: "FieldTower") -> bool:
        """判断自身是否为 other 的前缀（即 other 的子域）"""
        return self.key == other.key[:self.level]

    def prefix(self, level: int) -> "FieldTower":
        return FieldTower(self.steps[:level])

    def extend(self, name: str, minpoly: Sequence[Scalar]) -> "FieldTower":
        """
        添加一个新生成元
        :param name: 生成元名
        :param minpoly: 极小多项式系数（低次到高次），系数为本塔中的元素
        :return: 高一层的新塔
        """
        coeffs = [self.element(c) for c in minpoly]
        while len(coeffs) > 1 and not coeffs[-1]:
            coeffs.pop()
        if len(coeffs) - 1 < 2:
            raise DegreeTooSmall(f"minimal polynomial of {name} must have degree >= 2")
        if coeffs[-1] != 1:
            raise NotMonic(f"minimal polynomial of {name} is not monic")
        if name in self.names:
            raise ValueError(f"generator name already used: {name}")
        raw = tuple(c.raw for c in coeffs)
        return FieldTower(self.steps + ((name, raw),))

    def element(self, value: Scalar) -> "NFElement":
        """把整数、分数或子塔元素转换到本塔"""
        if isinstance(value, NFElement):
            if value.tower == self:
                return value
            if value.tower.is_prefix_of(self):
                return NFElement(self, self.lift_raw(value.raw, value.tower.level))
            raise TowerMismatch(f"{value.tower!r} is not a subfield of {self!r}")
        return NFElement(self, self.raw_from_rational(_to_fraction(value)))

    def zero(self) -> "NFElement":
        return NFElement(self, self._zeros[self.level])

    def one(self) -> "NFElement":
        return NFElement(self, self._ones[self.level])

    def gen(self, name: str) -> "NFElement":
        """返回名为 name 的生成元"""
        k = self.names.index(name) + 1
        d = self.degrees[k - 1]
        raw = (self._zeros[k - 1], self._ones[k - 1]) + (self._zeros[k - 1],) * (d - 2)
        return NFElement(self, self.lift_raw(raw, k))

    def minpoly(self, name: str) -> List["NFElement"]:
        """生成元的极小多项式系数（作为本塔元素）"""
        k = self.names.index(name)
        return [NFElement(self, self.lift_raw(c, k)) for c in self._minpolys[k]]

    def basis_exponents(self) -> List[Tuple[int, ...]]:
        """与 NFElement.coeffs 顺序一致的幂积基指数（按 (顶层, ..., 底层) 字典序）"""
        exps: List[Tuple[int, ...]] = [()]
        for d in self.degrees:
            exps = [e + (j,) for j in range(d) for e in exps]
        return exps

    # ------------------------------------------------------------------
    # raw 层运算
    # ------------------------------------------------------------------
    def raw_from_rational(self, q: Fraction, level: Optional[int] = None) -> Any:
        if level is None:
            level = self.level
        return self.lift_raw(q, 0, level)

    def lift_raw(self, raw: Any, from_level: int, to_level: Optional[int] = None) -> Any:
        if to_level is None:
            to_level = self.level
        for k in range(from_level, to_level):
            raw = (raw,) + (self._zeros[k],) * (self.degrees[k] - 1)
        return raw

    def is_zero_raw(self, k: int, x: Any) -> bool:
        if k == 0:
            return x == 0
        return all(self.is_zero_raw(k - 1, c) for c in x)

    def add_raw(self, k: int, x: Any, y: Any) -> Any:
        if k == 0:
            return x + y
        if k == 1:
            return tuple(a + b for a, b in zip(x, y))
        return tuple(self.add_raw(k - 1, a, b) for a, b in zip(x, y))

    def sub_raw(self, k: int, x: Any, y: Any) -> Any:
        if k == 0:
            return x - y
        if k == 1:
            return tuple(a - b for a, b in zip(x, y))
        return tuple(self.sub_raw(k - 1, a, b) for a, b in zip(x, y))

    def neg_raw(self, k: int, x: Any) -> Any:
        if k == 0:
            return -x
        return tuple(self.neg_raw(k - 1, a) for a in x)

    def mul_raw(self, k: int, x: Any, y: Any) -> Any:
        if k == 0:
            return x * y
        lower = k - 1
        d = self.degrees[lower]
        mp = self._minpolys[lower]
        zero = self._zeros[lower]
        is_zero = self.is_zero_raw
        acc = [zero] * (2 * d - 1)
        for i, a in enumerate(x):
            if is_zero(lower, a):
                continue
            for j, b in enumerate(y):
                if is_zero(lower, b):
                    continue
                acc[i + j] = self.add_raw(lower, acc[i + j], self.mul_raw(lower, a, b))
        # 用首一极小多项式从高次往下约化
        for i in range(2 * d - 2, d - 1, -1):
            c = acc[i]
            if is_zero(lower, c):
                continue
            for j in range(d):
                if not is_zero(lower, mp[j]):
                    acc[i - d + j] = self.sub_raw(lower, acc[i - d + j], self.mul_raw(lower, c, mp[j]))
        return tuple(acc[:d])

    def inv_raw(self, k: int, x: Any) -> Any:
        if self.is_zero_raw(k, x):
            raise DivisionByZero("inverse of zero")
        if k == 0:
            return 1 / x
        lower = k - 1
        d = self.degrees[lower]
        r0 = list(self._minpolys[lower])
        r1 = self._ptrim(lower, list(x))
        s0: List[Any] = []
        s1: List[Any] = [self._ones[lower]]
        # 扩展欧几里得: s_i * x ≡ r_i (mod minpoly)
        while r1:
            q, r = self._pdivmod(lower, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self._psub(lower, s0, self._pmul(lower, q, s1))
        if len(r0) > 1:
            raise NotAField(f"minimal polynomial of {self.names[lower]} is reducible")
        c = self.inv_raw(lower, r0[0])
        res = [self.mul_raw(lower, c, s) for s in s0]
        if len(res) > d:
            _, res = self._pdivmod(lower, res, list(self._minpolys[lower]))
        res = res + [self._zeros[lower]] * (d - len(res))
        return tuple(res)

    def pow_raw(self, k: int, x: Any, n: int) -> Any:
        result = self._ones[k]
        base = x
        while n:
            if n & 1:
                result = self.mul_raw(k, result, base)
            n >>= 1
            if n:
                base = self.mul_raw(k, base, base)
        return result

    # 系数在第 lower 层的多项式（列表，低次在前，已去掉高位零）
    def _ptrim(self, lower: int, p: List[Any]) -> List[Any]:
        while p and self.is_zero_raw(lower, p[-1]):
            p.pop()
        return p

    def _psub(self, lower: int, p: List[Any], q: List[Any]) -> List[Any]:
        n = max(len(p), len(q))
        zero = self._zeros[lower]
        out = [self.sub_raw(lower, p[i] if i < len(p) else zero, q[i] if i < len(q) else zero)
               for i in range(n)]
        return self._ptrim(lower, out)

    def _pmul(self, lower: int, p: List[Any], q: List[Any]) -> List[Any]:
        if not p or not q:
            return []
        out = [self._zeros[lower]] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            if self.is_zero_raw(lower, a):
                continue
            for j, b in enumerate(q):
                out[i + j] = self.add_raw(lower, out[i + j], self.mul_raw(lower, a, b))
        return self._ptrim(lower, out)

    def _pdivmod(self, lower: int, p: List[Any], q: List[Any]) -> Tuple[List[Any], List[Any]]:
        r = list(p)
        self._ptrim(lower, r)
        dq = len(q) - 1
        inv_lc = self.inv_raw(lower, q[-1])
        if len(r) - 1 < dq:
            return [], r
        quot = [self._zeros[lower]] * (len(r) - dq)
        while r and len(r) - 1 >= dq:
            shift = len(r) - 1 - dq
            c = self.mul_raw(lower, r[-1], inv_lc)
            quot[shift] = c
            for j in range(dq + 1):
                r[shift + j] = self.sub_raw(lower, r[shift + j], self.mul_raw(lower, c, q[j]))
            r.pop()
            self._ptrim(lower, r)
        return self._ptrim(lower, quot), r

    # ------------------------------------------------------------------
    # 序列化
    # ------------------------------------------------------------------
    def to_json(self) -> List[Dict[str, Any]]:
        out = []
        for k, (name, mp) in enumerate(self.steps):
            sub = self.prefix(k)
            out.append({
                'name': name,
                'minpoly': [NFElement(sub, c).coeff_pairs() for c in mp],
            })
        return out

    @classmethod
    def from_json(cls, data: List[Dict[str, Any]]) -> "FieldTower":
        tower = cls()
        for step in data:
            coeffs = [NFElement.from_coeff_pairs(tower, pairs) for pairs in step['minpoly']]
            tower = tower.extend(step['name'], coeffs)
        return tower


QQ = FieldTower()


def common_tower(t1: FieldTower, t2: FieldTower) -> FieldTower:
    """返回包含两者的塔（其中一个必须是另一个的前缀）"""
    if t1 is t2 or t1 == t2:
        return t1
    if t1.is_prefix_of(t2):
        return t2
    if t2.is_prefix_of(t1):
        return t1
    raise TowerMismatch(f"incompatible towers {t1!r} and {t2!r}")


class NFElement:
    """数域塔中的元素（不可变）"""

    __slots__ = ('tower', 'raw')

    def __init__(self, tower: FieldTower, raw: Any):
        self.tower = tower
        self.raw = raw

    # ------------------------------------------------------------------
    # 类型协调
    # ------------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.tower is self.tower or other.tower == self.tower:
                return self.tower, self.raw, other.raw
            t = common_tower(self.tower, other.tower)
            return (t, t.lift_raw(self.raw, self.tower.level),
                    t.lift_raw(other.raw, other.tower.level))
        if isinstance(other, (int, Fraction)):
            return self.tower, self.raw, self.tower.raw_from_rational(Fraction(other))
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        t, x, y = c
        return NFElement(t, t.add_raw(t.level, x, y))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        t, x, y = c
        return NFElement(t, t.sub_raw(t.level, x, y))

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        t, x, y = c
        return NFElement(t, t.sub_raw(t.level, y, x))

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        t, x, y = c
        return NFElement(t, t.mul_raw(t.level, x, y))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        t, x, y = c
        return NFElement(t, t.mul_raw(t.level, x, t.inv_raw(t.level, y)))

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        t, x, y = c
        return NFElement(t, t.mul_raw(t.level, y, t.inv_raw(t.level, x)))

    def __neg__(self):
        return NFElement(self.tower, self.tower.neg_raw(self.tower.level, self.raw))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        t = self.tower
        if n < 0:
            return NFElement(t, t.pow_raw(t.level, t.inv_raw(t.level, self.raw), -n))
        return NFElement(t, t.pow_raw(t.level, self.raw, n))

    def inverse(self) -> "NFElement":
        return NFElement(self.tower, self.tower.inv_raw(self.tower.level, self.raw))

    def __bool__(self) -> bool:
        return not self.tower.is_zero_raw(self.tower.level, self.raw)

    def __eq__(self, other) -> bool:
        try:
            c = self._coerce(other)
        except TowerMismatch:
            return False
        if c is None:
            return NotImplemented
        return c[1] == c[2]

    def __ne__(self, other) -> bool:
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def _lowest(self) -> Tuple[int, Any]:
        """所在的最低层及该层 raw"""
        k, raw = self.tower.level, self.raw
        while k > 0 and all(self.tower.is_zero_raw(k - 1, c) for c in raw[1:]):
            raw = raw[0]
            k -= 1
        return k, raw

    def __hash__(self) -> int:
        k, raw = self._lowest()
        if k == 0:
            return hash(raw)
        return hash((self.tower.key[:k], raw))

    # ------------------------------------------------------------------
    # 查询
    # ------------------------------------------------------------------
    def is_rational(self) -> bool:
        return self._lowest()[0] == 0

    def to_fraction(self) -> Fraction:
        k, raw = self._lowest()
        if k != 0:
            raise ValueError(f"{self} is not rational")
        return raw

    def level(self) -> int:
        """元素实际所在的最低层"""
        return self._lowest()[0]

    @property
    def coeffs(self) -> List[Fraction]:
        """幂积基下的有理坐标向量"""
        out: List[Fraction] = []

        def walk(k, raw):
            if k == 0:
                out.append(raw)
                return
            for c in raw:
                walk(k - 1, c)

        walk(self.tower.level, self.raw)
        return out

    @classmethod
    def from_coeffs(cls, tower: FieldTower, coeffs: Sequence[Scalar]) -> "NFElement":
        values = [_to_fraction(c) for c in coeffs]
        if len(values) != tower.degree:
            raise ValueError("coefficient vector length differs from tower degree")
        pos = 0

        def build(k):
            nonlocal pos
            if k == 0:
                pos += 1
                return values[pos - 1]
            return tuple(build(k - 1) for _ in range(tower.degrees[k - 1]))

        return cls(tower, build(tower.level))

    def coeff_pairs(self) -> List[List[int]]:
        return [[c.numerator, c.denominator] for c in self.coeffs]

    @classmethod
    def from_coeff_pairs(cls, tower: FieldTower, pairs: Sequence[Sequence[int]]) -> "NFElement":
        return cls.from_coeffs(tower, [Fraction(n, d) for n, d in pairs])

    def to_json(self) -> Dict[str, Any]:
        return {'tower': self.tower.to_json(), 'coeffs': self.coeff_pairs()}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "NFElement":
        tower = FieldTower.from_json(data['tower'])
        return cls.from_coeff_pairs(tower, data['coeffs'])

    def __str__(self) -> str:
        terms = []
        for c, exps in zip(self.coeffs, self.tower.basis_exponents()):
            if c == 0:
                continue
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.tower.names, exps) if e
            )
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                coeff = f"({c})" if c.denominator != 1 else str(c)
                terms.append(f"{coeff}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"NFElement({self})"


def tower_extend(tower: FieldTower, name: str, minpoly: Sequence[Scalar]) -> FieldTower:
    """向数域塔添加生成元"""
    return tower.extend(name, minpoly)


def nf_arith(op: str, x: Scalar, y: Scalar) -> Scalar:
    """
    数域四则运算
    :param op: add / sub / mul / div
    """
    if op == 'add':
        return x + y
    if op == 'sub':
        return x - y
    if op == 'mul':
        return x * y
    if op == 'div':
        if not y:
            raise DivisionByZero("division by zero")
        return x / y
    raise ValueError(f"unknown operation: {op}")


# ----------------------------------------------------------------------
# 平方根
# ----------------------------------------------------------------------
def _sqrt_fraction(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _sqrt_raw(tower: FieldTower, k: int, raw: Any) -> Optional[Any]:
    if k == 0:
        return _sqrt_fraction(raw)
    lower = k - 1
    d = tower.degrees[lower]
    zero = tower._zeros[lower]
    in_lower = all(tower.is_zero_raw(lower, c) for c in raw[1:])
    if in_lower:
        r = _sqrt_raw(tower, lower, raw[0])
        if r is not None:
            return (r,) + (zero,) * (d - 1)
        if d % 2 == 1:
            # 奇数次扩张中不会出现新的平方根
            return None
    if d != 2:
        raise NotImplementedError(
            f"square roots at the degree-{d} level {tower.names[lower]} are not supported")
    # 二次层: g^2 + p g + q = 0, delta = 2g + p, delta^2 = D
    q_, p_ = tower._minpolys[lower][0], tower._minpolys[lower][1]
    disc = tower.sub_raw(lower, tower.mul_raw(lower, p_, p_),
                         tower.mul_raw(lower, tower.raw_from_rational(Fraction(4), lower), q_))
    half = tower.raw_from_rational(Fraction(1, 2), lower)
    c0, c1 = raw
    # x = A + B*delta
    big_b = tower.mul_raw(lower, c1, half)
    big_a = tower.sub_raw(lower, c0, tower.mul_raw(lower, big_b, p_))

    def to_raw(pp, qq):
        # pp + qq*delta = (pp + qq*p) + 2qq*g
        return (tower.add_raw(lower, pp, tower.mul_raw(lower, qq, p_)),
                tower.add_raw(lower, qq, qq))

    if tower.is_zero_raw(lower, big_b):
        r = _sqrt_raw(tower, lower, big_a)
        if r is not None:
            return to_raw(r, zero)
        r = _sqrt_raw(tower, lower, tower.mul_raw(lower, big_a, tower.inv_raw(lower, disc)))
        if r is not None:
            return to_raw(zero, r)
        return None
    norm = tower.sub_raw(lower, tower.mul_raw(lower, big_a, big_a),
                         tower.mul_raw(lower, tower.mul_raw(lower, big_b, big_b), disc))
    n = _sqrt_raw(tower, lower, norm)
    if n is None:
        return None
    for sign in (1, -1):
        signed = n if sign == 1 else tower.neg_raw(lower, n)
        p2 = tower.mul_raw(lower, tower.add_raw(lower, big_a, signed), half)
        pp = _sqrt_raw(tower, lower, p2)
        if pp is None or tower.is_zero_raw(lower, pp):
            continue
        qq = tower.mul_raw(lower, big_b, tower.inv_raw(lower, tower.add_raw(lower, pp, pp)))
        cand = to_raw(pp, qq)
        if tower.mul_raw(k, cand, cand) == raw:
            return cand
    return None


def nf_sqrt(x: Scalar, tower: Optional[FieldTower] = None) -> Optional[NFElement]:
    """
    在所在的塔中求平方根
    :return: 某个平方根，不存在时返回 None
    """
    if not isinstance(x, NFElement):
        x = (tower or QQ).element(x)
    r = _sqrt_raw(x.tower, x.tower.level, x.raw)
    if r is None:
        return None
    return NFElement(x.tower, r)


def tower_with_omega(tower: FieldTower) -> Tuple[FieldTower, NFElement]:
    """
    返回包含三次单位根 ω 的塔及 ω
    已有 sqrt(-3) 时直接取 ω = (-1 + sqrt(-3))/2，否则添加 x^2 + x + 1
    """
    for name in tower.names:
        mp = tower.minpoly(name)
        if len(mp) == 3 and mp[0] == 1 and mp[1] == 1:
            return tower, tower.gen(name)
    s = nf_sqrt(tower.element(-3))
    if s is not None:
        return tower, (s - 1) / 2
    name = 'w'
    while name in tower.names:
        name += "'"
    bigger = tower.extend(name, [1, 1, 1])
    return bigger, bigger.gen(name)


# ----------------------------------------------------------------------
# 自同构
# ----------------------------------------------------------------------
class FieldAutomorphism:
    """
    数域塔的自同构，由各生成元的像确定
    未给出的生成元默认不动
    """

    def __init__(self, tower: FieldTower, images: Optional[Dict[str, Scalar]] = None, name: str = "sigma"):
        self.tower = tower
        self.name = name
        images = images or {}
        unknown = set(images) - set(tower.names)
        if unknown:
            raise ValueError(f"unknown generators: {sorted(unknown)}")
        self.images = {g: tower.element(images.get(g, tower.gen(g))) for g in tower.names}
        self._powers: List[List[NFElement]] = []
        for k, g in enumerate(tower.names):
            img = self.images[g]
            pw = [tower.one()]
            for _ in range(tower.degrees[k] - 1):
                pw.append(pw[-1] * img)
            self._powers.append(pw)
        self._check()

    @classmethod
    def identity(cls, tower: FieldTower) -> "FieldAutomorphism":
        return cls(tower, {}, name="id")

    def _check(self) -> None:
        for k, g in enumerate(self.tower.names):
            coeffs = [self._apply_raw(k, c) for c in self.tower._minpolys[k]]
            img = self.images[g]
            value = self.tower.zero()
            for c in reversed(coeffs):
                value = value * img + c
            if value:
                raise ComputationError(f"image of {g} does not satisfy its minimal polynomial")

    def _apply_raw(self, k: int, raw: Any) -> NFElement:
        if k == 0:
            return self.tower.element(raw)
        out = self.tower.zero()
        for c, pw in zip(raw, self._powers[k - 1]):
            if self.tower.is_zero_raw(k - 1, c):
                continue
            out = out + self._apply_raw(k - 1, c) * pw
        return out

    def __call__(self, x: Scalar) -> Scalar:
        if not isinstance(x, NFElement):
            return x
        if not x.tower.is_prefix_of(self.tower):
            raise TowerMismatch(f"{x.tower!r} is not contained in {self.tower!r}")
        return self._apply_raw(x.tower.level, x.raw)

    def is_involution(self) -> bool:
        return all(self(self(self.tower.gen(g))) == self.tower.gen(g) for g in self.tower.names)

    def __repr__(self) -> str:
        moved = {g: str(v) for g, v in self.images.items() if v != self.tower.gen(g)}
        return f"FieldAutomorphism({self.name}, {moved})"


def apply_automorphism(a: FieldAutomorphism, x: Scalar) -> Scalar:
    return a(x)


# ----------------------------------------------------------------------
# 数值嵌入
# ----------------------------------------------------------------------
@lru_cache(maxsize=None)
def interval_context(bits: int) -> MPIntervalContext:
    """给定精度的独立区间上下文；不改动 mpmath.iv 的全局精度"""
    ctx = MPIntervalContext()
    ctx.prec = bits
    return ctx


class ComplexInterval:
    """实部、虚部各为一个 mpmath 区间；精度取自区间所属的上下文"""

    __slots__ = ('re', 'im')

    def __init__(self, re, im=None):
        self.re = re
        self.im = im if im is not None else re.ctx.mpf(0)

    @property
    def ctx(self) -> MPIntervalContext:
        return self.re.ctx

    def __add__(self, other):
        other = _as_interval(other, self.ctx)
        return ComplexInterval(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_interval(other, self.ctx)
        return ComplexInterval(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_interval(other, self.ctx) - self

    def __neg__(self):
        return ComplexInterval(-self.re, -self.im)

    def __mul__(self, other):
        other = _as_interval(other, self.ctx)
        return ComplexInterval(self.re * other.re - self.im * other.im,
                               self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = _as_interval(1, self.ctx)
        for _ in range(n):
            out = out * self
        return out

    @property
    def mid(self) -> complex:
        return complex(float(self.re.mid), float(self.im.mid))

    @property
    def center(self) -> mpmath.mpc:
        """区间中点，按当前 mp 精度取整"""
        return mpmath.mpc(mpmath.mpf(self.re.mid), mpmath.mpf(self.im.mid))

    @property
    def width(self) -> float:
        return float(max(self.re.delta, self.im.delta))

    def contains(self, z) -> bool:
        z = complex(z) if not isinstance(z, mpmath.mpc) else z
        return z.real in self.re and z.imag in self.im

    def overlaps(self, other: "ComplexInterval") -> bool:
        return (self.re.a <= other.re.b and other.re.a <= self.re.b
                and self.im.a <= other.im.b and other.im.a <= self.im.b)

    def __repr__(self) -> str:
        return f"ComplexInterval({self.re}, {self.im})"


def _as_interval(x, ctx: MPIntervalContext) -> ComplexInterval:
    if isinstance(x, ComplexInterval):
        return x
    if isinstance(x, Fraction):
        return ComplexInterval(ctx.mpf(x.numerator) / ctx.mpf(x.denominator))
    if isinstance(x, (complex, mpmath.mpc)):
        return ComplexInterval(ctx.mpf(x.real), ctx.mpf(x.imag))
    return ComplexInterval(ctx.mpf(x))


def interval_ball(z: mpmath.mpc, radius: mpmath.mpf, ctx: MPIntervalContext) -> ComplexInterval:
    return ComplexInterval(ctx.mpf([z.real - radius, z.real + radius]),
                           ctx.mpf([z.imag - radius, z.imag + radius]))


def _generator_embeddings(tower: FieldTower, embedding: Dict[str, Any], bits: int) -> List[mpmath.mpc]:
    """逐层选取并用牛顿法精化生成元的复数近似"""
    values: List[mpmath.mpc] = []
    iterations = config.ARITH_CONFIG['newton_iterations']

    def eval_lower(k, raw):
        if k == 0:
            return mpmath.mpf(raw.numerator) / raw.denominator
        acc = mpmath.mpc(0)
        for c in reversed(raw):
            acc = acc * values[k - 1] + eval_lower(k - 1, c)
        return acc

    for k, (name, mp) in enumerate(tower.steps):
        coeffs = [eval_lower(k, c) for c in mp]
        try:
            roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=iterations, extraprec=2 * bits)
        except mpmath.libmp.NoConvergence as exc:
            raise PrecisionExhausted(f"root isolation failed for {name}") from exc
        roots = [mpmath.mpc(r) for r in roots]
        target = embedding.get(name)
        if target is None:
            chosen = max(roots, key=lambda r: (mpmath.re(r), mpmath.im(r)))
        else:
            target = mpmath.mpc(complex(target)) if not isinstance(target, mpmath.mpc) else target
            chosen = min(roots, key=lambda r: abs(r - target))
        z = chosen
        deriv = [c * i for i, c in enumerate(coeffs)][1:]
        for _ in range(iterations):
            fz = mpmath.polyval(list(reversed(coeffs)), z)
            dz = mpmath.polyval(list(reversed(deriv)), z)
            if dz == 0:
                raise PrecisionExhausted(f"multiple root while refining {name}")
            step = fz / dz
            z = z - step
            if abs(step) <= abs(z) * mpmath.mpf(2) ** (-bits - 8):
                break
        values.append(z)
    return values


def numeric_embed(x: Scalar, embedding: Optional[Dict[str, Any]] = None,
                  precision: Optional[int] = None) -> ComplexInterval:
    """
    把元素嵌入复数域，返回包含其像的区间
    :param x: 元素
    :param embedding: 生成元名 -> 复数近似，用于选择共轭；缺省取实部最大的根
    :param precision: 二进制位数
    """
    bits = precision or config.ARITH_CONFIG['embed_precision']
    if bits > config.ARITH_CONFIG['embed_max_precision']:
        raise PrecisionExhausted(f"precision {bits} exceeds the configured maximum")
    if not isinstance(x, NFElement):
        x = QQ.element(x)
    tower = x.tower
    ctx = interval_context(bits + 16)
    with mpmath.workprec(bits + 32):
        gens = _generator_embeddings(tower, embedding or {}, bits)
        radius = mpmath.mpf(2) ** (-bits)
        balls = [interval_ball(z, radius * (1 + abs(z)), ctx) for z in gens]

    def ev(k, raw):
        if k == 0:
            return _as_interval(raw, ctx)
        acc = ComplexInterval(ctx.mpf(0))
        for c in reversed(raw):
            acc = acc * balls[k - 1] + ev(k - 1, c)
        return acc

    return ev(tower.level, x.raw)
