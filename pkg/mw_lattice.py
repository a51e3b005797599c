#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Mordell-Weil 格模块
逐位极小化与 Kodaira 纤维分类、截面的分量、典范高度、Gram 矩阵与行列式
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import sympy

import config
from exact_arith import nf_sqrt
from poly_ratfunc import (
    Poly, RatFunc, Place, as_ratfunc, substitute, coprime_basis, poly_gcd, valuation
)
from elliptic import CurvePoint, ec_group
from inose_construct import SurfaceModel
from section_solver import DescendedSection, map_parallel
from errors import CheckFailed, ComputationError, SingularCurve, UnhandledType

ZERO = Fraction(0)

# 加性纤维：极小模型上 v(Δ) -> 类型
_ADDITIVE = {2: 'II', 3: 'III', 4: 'IV', 6: 'I0*', 8: 'IV*', 9: 'III*', 10: 'II*'}

# 非单位分量的局部修正项
_CONTRIBUTION = {
    'III': Fraction(1, 2),
    'IV': Fraction(2, 3),
    'I0*': Fraction(1),
    'IV*': Fraction(4, 3),
    'III*': Fraction(3, 2),
}

_GROUP_ORDER = {'II': 1, 'III': 2, 'IV': 3, 'IV*': 3, 'III*': 2, 'II*': 1}

SectionLike = Union[DescendedSection, CurvePoint]


@dataclass(frozen=True)
class KodairaFiber:
    """
    一组共轭位上的奇异纤维
    place 为无平方因子多项式（其各根上纤维类型相同）或无穷远位，count 为几何纤维个数
    """
    place: Place
    kind: str
    n: int = 0
    v_disc: int = 0
    count: int = 1

    @property
    def name(self) -> str:
        if self.kind == 'I':
            return f"I{self.n}"
        if self.kind == 'I*':
            return f"I{self.n}*"
        return self.kind

    @property
    def group_order(self) -> int:
        if self.kind == 'I':
            return self.n
        if self.kind == 'I*':
            return 4
        return _GROUP_ORDER[self.kind]

    def to_json(self) -> Dict[str, Any]:
        return {'place': str(self.place), 'type': self.name, 'v_disc': self.v_disc, 'count': self.count}

    def __str__(self) -> str:
        prefix = f"{self.count} " if self.count > 1 else ""
        return f"{prefix}{self.name} at {self.place}"


@dataclass
class LocalModel:
    """
    一个位上的整极小模型 (X, Y) -> (π^{-2e} X, π^{-3e} Y)
    无穷远位在 w = 1/v 坐标卡中处理，g 为该坐标卡中的无平方因子多项式
    """
    place: Place
    g: Poly
    chart: Optional[RatFunc]
    e: int
    A4: RatFunc
    A6: RatFunc
    v_disc: int
    fiber: Optional[KodairaFiber] = None

    def pull(self, f, var: str) -> RatFunc:
        f = as_ratfunc(f, var)
        if self.chart is None or not f:
            return f
        return substitute(f, self.chart)

    def minimal_coords(self, P: CurvePoint, var: str) -> Tuple[RatFunc, RatFunc]:
        X = _twist(self.pull(P.x, var), self.g, -2 * self.e)
        Y = _twist(self.pull(P.y, var), self.g, -3 * self.e)
        return X, Y


@dataclass
class ComponentAssignment:
    """各有理可约纤维上每个截面所在的分量（单位分量为 0）"""
    fibers: Dict[str, KodairaFiber]
    labels: Dict[str, List[int]]
    references: Dict[str, Any] = field(default_factory=dict, repr=False)

    def label(self, place: str, index: int) -> int:
        return self.labels[place][index]

    def to_json(self) -> Dict[str, Any]:
        return {key: {'type': self.fibers[key].name, 'labels': list(labels)}
                for key, labels in self.labels.items()}


@dataclass
class GramMatrix:
    entries: List[List[Fraction]]
    basis: List[Any] = field(default_factory=list, repr=False)

    @property
    def size(self) -> int:
        return len(self.entries)

    def is_symmetric(self) -> bool:
        return all(self.entries[i][j] == self.entries[j][i]
                   for i in range(self.size) for j in range(i))

    def det(self) -> Fraction:
        return _det(self.entries)

    def scaled(self, factor) -> List[List[Fraction]]:
        return [[factor * x for x in row] for row in self.entries]

    def integer_matrix(self, factor: int) -> Optional[List[List[int]]]:
        """factor·G 为整数矩阵时返回之"""
        rows = self.scaled(factor)
        if any(x.denominator != 1 for row in rows for x in row):
            return None
        return [[int(x) for x in row] for row in rows]

    def __eq__(self, other) -> bool:
        if isinstance(other, GramMatrix):
            other = other.entries
        return [list(r) for r in self.entries] == [[Fraction(x) for x in r] for r in other]

    def to_json(self) -> Dict[str, Any]:
        return {
            'entries': [[str(x) for x in row] for row in self.entries],
            'det': str(self.det()),
            'basis': [b.provenance if isinstance(b, DescendedSection) else str(b) for b in self.basis],
        }


def _det(rows: Sequence[Sequence[Any]]) -> Fraction:
    if not rows:
        return Fraction(1)
    m = sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in row]
                      for row in rows])
    d = m.det()
    return Fraction(int(d.p), int(d.q))


# ----------------------------------------------------------------------
# 局部工具
# ----------------------------------------------------------------------
def _twist(f: RatFunc, g: Poly, k: int) -> RatFunc:
    """f·g^k"""
    if not f or not k:
        return f
    return f * as_ratfunc(g) ** k


def _val(f: RatFunc, g: Poly) -> Optional[int]:
    """在 g 的（任一）根处的阶；零函数返回 None"""
    if not f:
        return None
    return valuation(f, Place.finite(g))


def _locus(f: RatFunc, g: Poly, k: int = 1) -> Poly:
    """g 的根中使 v(f) >= k 的那些根构成的首一因子"""
    if not f:
        return g.monic()
    h = g.monic()
    p = f.num
    for _ in range(k):
        h = poly_gcd(h, p)
        if h.degree < 1:
            break
        p = p.derivative()
    return h


def _count(h: Poly) -> int:
    return max(h.degree, 0)


def _primary(D: Poly, g: Poly) -> Tuple[int, Poly]:
    """D 的 g-准素部分的次数（g 各根处重数之和）及余下部分"""
    total = 0
    while D.degree >= 1:
        h = poly_gcd(D, g)
        if h.degree < 1:
            break
        D = D // h
        total += h.degree
    return total, D


def _short_coeffs(S: SurfaceModel) -> Tuple[RatFunc, RatFunc]:
    E = S.curve
    if not E.is_short() or E.a3:
        raise ValueError(f"{E} is not in short Weierstrass form")
    return as_ratfunc(E.a4, S.var), as_ratfunc(E.a6, S.var)


def _kodaira(r4: Optional[int], r6: Optional[int], r_disc: int) -> Optional[Tuple[str, int]]:
    """极小模型上 (v(A4), v(A6), v(Δ)) 决定的 Kodaira 类型；光滑时返回 None"""
    if r_disc == 0:
        return None
    if r4 == 0:
        return 'I', r_disc
    if r4 == 2 and r6 == 3 and r_disc > 6:
        return 'I*', r_disc - 6
    kind = _ADDITIVE.get(r_disc)
    if kind is None:
        raise UnhandledType(f"no Kodaira type with v(A4)={r4}, v(A6)={r6}, v(disc)={r_disc}")
    if kind == 'I0*':
        return 'I*', 0
    return kind, 0


def _local_model(place: Place, g: Poly, chart: Optional[RatFunc],
                 A4: RatFunc, A6: RatFunc, disc: RatFunc) -> LocalModel:
    m4, m6 = _val(A4, g), _val(A6, g)
    e = min(m // k for m, k in ((m4, 4), (m6, 6)) if m is not None)
    v_disc = _val(disc, g) - 12 * e
    r4 = None if m4 is None else m4 - 4 * e
    r6 = None if m6 is None else m6 - 6 * e
    model = LocalModel(place, g, chart, e, _twist(A4, g, -4 * e), _twist(A6, g, -6 * e), v_disc)
    kind = _kodaira(r4, r6, v_disc)
    if kind is not None:
        count = 1 if place.is_infinity else g.degree
        model.fiber = KodairaFiber(place, kind[0], kind[1], v_disc, count)
    return model


def local_models(S: SurfaceModel) -> List[LocalModel]:
    """系数与判别式的互素无平方因子基中每个元素一个有限位，另加无穷远位"""
    A4, A6 = _short_coeffs(S)
    disc = -16 * (4 * A4 ** 3 + 27 * A6 * A6)
    if not disc:
        raise SingularCurve(f"{S.curve} has vanishing discriminant")
    polys = []
    for f in (A4, A6, disc):
        if f:
            polys.extend([f.num, f.den])
    models = [_local_model(Place.finite(g), g, None, A4, A6, disc) for g in coprime_basis(polys)]

    w = f"{S.var}_inf"
    chart = RatFunc._make(Poly([1], w), Poly([0, 1], w))
    pulled = [substitute(f, chart) if f else RatFunc.constant(0, w) for f in (A4, A6, disc)]
    models.append(_local_model(Place.infinity(S.var), Poly([0, 1], w), chart, *pulled))
    return models


def _check_fiber_sum(S: SurfaceModel, fibers: Sequence[KodairaFiber]) -> None:
    if S.n not in (1, 2) or not config.HEIGHT_CONFIG['check_fiber_sum']:
        return
    total = sum(f.v_disc * f.count for f in fibers)
    expected = 12 * config.HEIGHT_CONFIG['chi']
    if total != expected:
        raise CheckFailed(f"discriminant degrees sum to {total}, expected {expected}",
                          f"discriminant degree of F^({S.n})")


def classify_fibers(S: SurfaceModel, models: Optional[List[LocalModel]] = None) -> List[KodairaFiber]:
    """全部奇异纤维（含无穷远位）"""
    models = models if models is not None else local_models(S)
    fibers = [m.fiber for m in models if m.fiber is not None]
    _check_fiber_sum(S, fibers)
    return fibers


def fiber_counts(fibers: Sequence[KodairaFiber]) -> Dict[str, int]:
    counts: Counter = Counter()
    for f in fibers:
        counts[f.name] += f.count
    return dict(counts)


def predicted_fiber_row(j1, j2) -> Dict[str, int]:
    """
    F^(1) 除 s = 0, ∞ 处两个 II* 之外的奇异纤维
    """
    if j1 != j2:
        if j1 * j2 == 0:
            return {'II': 2}
        return {'I1': 4}
    if j1 == 0:
        return {'IV': 1}
    if j1 == 1728:
        return {'I2': 2}
    return {'I2': 1, 'I1': 2}


def extra_fibers(fibers: Sequence[KodairaFiber]) -> Dict[str, int]:
    """去掉两个 II* 后的纤维计数，用于与 predicted_fiber_row 比较"""
    counts = fiber_counts(fibers)
    if counts.get('II*', 0) < 2:
        raise CheckFailed("F^(1) must have two fibers of type II*", "II* fibers at s = 0, oo")
    counts['II*'] -= 2
    return {k: v for k, v in counts.items() if v}


# ----------------------------------------------------------------------
# 分量与高度
# ----------------------------------------------------------------------
def _local_contribution(model: LocalModel, X: RatFunc, Y: RatFunc) -> Fraction:
    fiber, g = model.fiber, model.g
    if fiber.kind == 'I':
        node = _locus(3 * X * X + model.A4, g)
        if node.degree < 1:
            return ZERO
        n, half = fiber.n, fiber.n // 2
        counts = [_count(poly_gcd(node, _locus(Y, g, k))) for k in range(1, half + 1)] + [0]
        return sum(((counts[k - 1] - counts[k]) * Fraction(k * (n - k), n) for k in range(1, half + 1)), ZERO)
    hit = _locus(X, g)
    hits = _count(hit)
    if not hits:
        return ZERO
    if fiber.kind == 'I*' and fiber.n:
        far = _count(poly_gcd(hit, _locus(_twist(X, g, -1) - _double_root(model), g)))
        return (hits - far) + far * (1 + Fraction(fiber.n, 4))
    return hits * _CONTRIBUTION[fiber.name]


def _double_root(model: LocalModel) -> RatFunc:
    """I_n* 的约化三次式 T^3 + (A4/π^2) T + A6/π^3 的二重根"""
    p = _twist(model.A4, model.g, -2)
    q = _twist(model.A6, model.g, -3)
    return -3 * q / (2 * p)


def _intersection_and_contribution(S: SurfaceModel, P: CurvePoint,
                                   models: Sequence[LocalModel]) -> Tuple[Fraction, Fraction]:
    rest = as_ratfunc(P.x, S.var).den
    poles = 0
    contr = ZERO
    for model in models:
        X, Y = model.minimal_coords(P, S.var)
        poles += _primary(X.den, model.g)[0]
        if model.chart is None:
            rest = _primary(rest, model.g)[1]
        if model.fiber is not None and model.fiber.group_order > 1:
            contr += _local_contribution(model, X, Y)
    poles += max(rest.degree, 0)
    return Fraction(poles, 2), contr


def _point(P: SectionLike) -> CurvePoint:
    return P.point if isinstance(P, DescendedSection) else P


def intersection_with_zero(S: SurfaceModel, P: SectionLike,
                           models: Optional[List[LocalModel]] = None) -> Fraction:
    """(P·O)"""
    P = _point(P)
    if P.is_infinity:
        raise ValueError("the zero section meets itself with negative self-intersection")
    models = models if models is not None else local_models(S)
    return _intersection_and_contribution(S, P, models)[0]


def self_height(S: SurfaceModel, P: SectionLike, models: Optional[List[LocalModel]] = None) -> Fraction:
    """
    h(P) = 2χ + 2(P·O) - Σ contr_v(P)
    """
    P = _point(P)
    if P.is_infinity:
        return ZERO
    models = models if models is not None else local_models(S)
    po, contr = _intersection_and_contribution(S, P, models)
    return 2 * config.HEIGHT_CONFIG['chi'] + 2 * po - contr


def height_pair(S: SurfaceModel, P: SectionLike, Q: SectionLike,
                models: Optional[List[LocalModel]] = None) -> Fraction:
    """极化：<P, Q> = (h(P+Q) - h(P) - h(Q)) / 2"""
    models = models if models is not None else local_models(S)
    P, Q = _point(P), _point(Q)
    total = ec_group('add', S.curve, P, Q)
    return (self_height(S, total, models) - self_height(S, P, models) - self_height(S, Q, models)) / 2


def gram_and_det(S: SurfaceModel, basis: Sequence[SectionLike],
                 models: Optional[List[LocalModel]] = None, progress=None,
                 max_workers: Optional[int] = None) -> Tuple[GramMatrix, Fraction]:
    """
    高度配对矩阵及其行列式
    :param progress: 可选的 ProgressBar，每算完一个高度更新一次
    :param max_workers: 线程数；缺省时取 RUN_CONFIG
    """
    models = models if models is not None else local_models(S)
    points = [_point(P) for P in basis]
    n = len(points)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]

    def height_of(item):
        if isinstance(item, tuple):
            i, j = item
            return self_height(S, ec_group('add', S.curve, points[i], points[j]), models)
        return self_height(S, points[item], models)

    values = map_parallel(height_of, list(range(n)) + pairs, max_workers=max_workers, progress=progress)
    diag = values[:n]
    entries = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        entries[i][i] = diag[i]
    for (i, j), h in zip(pairs, values[n:]):
        entries[i][j] = entries[j][i] = (h - diag[i] - diag[j]) / 2
    gram = GramMatrix(entries, list(basis))
    return gram, gram.det()


def hom_lattice_det(gram) -> Fraction:
    """det Hom(E1, E2) = det(½·Gram(F^(1)))"""
    rows = gram.entries if isinstance(gram, GramMatrix) else gram
    return _det([[Fraction(x) / 2 for x in row] for row in rows])


def check_lattice_identity(det_F2, det_Hom) -> bool:
    """det F^(2) = 2^4/3^2 · det Hom"""
    return Fraction(det_F2) == Fraction(16, 9) * Fraction(det_Hom)


# ----------------------------------------------------------------------
# 分量标号
# ----------------------------------------------------------------------
def _branch_label(model: LocalModel, key: str, X: RatFunc, Y: RatFunc,
                  references: Dict[str, Any]) -> int:
    fiber, g = model.fiber, model.g
    root = -g.coeff(0)
    if fiber.kind == 'I':
        node = _val(3 * X * X + model.A4, g)
        if node is not None and node < 1:
            return 0
        vy = _val(Y, g)
        if vy is not None and vy < 1:
            return 0
        return fiber.n // 2 if vy is None else min(vy, fiber.n // 2)
    vx = _val(X, g)
    if vx is not None and vx < 1:
        return 0
    if fiber.kind in ('III', 'III*'):
        return 1
    if fiber.kind == 'I*':
        if fiber.n:
            far = _val(_twist(X, g, -1) - _double_root(model), g)
            # I_n* 的远端两个分量不再细分
            return 1 if far is not None and far < 1 else 2
        residue = _twist(X, g, -1)(root)
        seen = references.setdefault(key, [])
        if residue not in seen:
            seen.append(residue)
        return 1 + seen.index(residue)
    # IV / IV*：按 Y/π^k 的剩余区分两个分支
    k = 1 if fiber.kind == 'IV' else 2
    residue = _twist(Y, g, -k)(root)
    ref = references.get(key)
    if ref is None:
        ref = nf_sqrt(_twist(model.A6, g, -2 * k)(root)) or residue
        references[key] = ref
    if residue == ref:
        return 1
    if residue == -ref:
        return 2
    raise ComputationError(f"branch residue {residue} at {model.place} is not +-{ref}")


def component_assignment(S: SurfaceModel, sections: Sequence[SectionLike],
                         models: Optional[List[LocalModel]] = None) -> ComponentAssignment:
    """有理位（一次位与无穷远位）上各截面的分量标号"""
    models = models if models is not None else local_models(S)
    points = [_point(P) for P in sections]
    fibers: Dict[str, KodairaFiber] = {}
    labels: Dict[str, List[int]] = {}
    references: Dict[str, Any] = {}
    for model in models:
        fiber = model.fiber
        if fiber is None or fiber.group_order == 1 or model.g.degree != 1:
            continue
        key = str(model.place)
        fibers[key] = fiber
        row = []
        for P in points:
            if P.is_infinity:
                row.append(0)
                continue
            X, Y = model.minimal_coords(P, S.var)
            row.append(_branch_label(model, key, X, Y, references))
        labels[key] = row
    return ComponentAssignment(fibers, labels, references)


def check_component_homomorphism(S: SurfaceModel, P: SectionLike, Q: SectionLike,
                                 models: Optional[List[LocalModel]] = None) -> bool:
    """label(P+Q) = label(P) + label(Q)（分量群中）"""
    P, Q = _point(P), _point(Q)
    total = ec_group('add', S.curve, P, Q)
    assignment = component_assignment(S, [P, Q, total], models)
    for key, (lp, lq, lpq) in assignment.labels.items():
        fiber = assignment.fibers[key]
        order = fiber.group_order
        if fiber.kind == 'I*':
            raise UnhandledType(f"component labels of {fiber.name} are not cyclic")
        if fiber.kind == 'I' and order > 2:
            # I_n 的标号只记到 ±
            def fold(x):
                x %= order
                return min(x, order - x)
            if lpq not in (fold(lp + lq), fold(lp - lq)):
                return False
        elif (lp + lq - lpq) % order:
            return False
    return True
