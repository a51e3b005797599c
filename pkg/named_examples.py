#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
命名实例模块
三个奇异 K3 曲面 X_[3,3,3], X_[3,2,3], X_[3,0,3] 与一般族的固定数据：
数域塔、3-同源族、2-挠点的约定顺序、到显示模型的变换、显示的截面坐标，
以及计算 Gram 矩阵所用的基
"""

from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Tuple

import config
from exact_arith import FieldAutomorphism, QQ
from poly_ratfunc import Poly, RatFunc
from elliptic import WeierstrassCurve, CurvePoint, ModelTransform, transport_curve, transport_point
from isogeny import ThreeIsogenyFamily, TwoTorsionData, build_family, family_from_kernel, two_torsion
from inose_construct import SurfaceModel, build_surface, family_surface, invariants_from_cubics
from section_solver import (
    DescendedSection, section_F1, section_F2, sections_Rij, galois_image, cm_image, RIJ_ORDER
)
from errors import ComputationError

# (标签, 计算值, 显示值)
Anchor = Tuple[str, Any, Any]

R_NAMES = tuple(f"R{i}{j}" for i, j in RIJ_ORDER)


def _scale_var(c, var: str) -> RatFunc:
    """v = c·v'"""
    return RatFunc._make(Poly([0, c], var), Poly([1], var))


class SurfaceExample:
    """
    一个 3-同源族及其上的截面
    子类给出显示模型、第二个生成元与显示的坐标
    """

    name = "generic"
    var_F1 = 's'
    var_F2 = 't'

    def __init__(self, family: ThreeIsogenyFamily, roots: Optional[List[Any]] = None,
                 transform_F1: Optional[ModelTransform] = None,
                 transform_F2: Optional[ModelTransform] = None):
        self.family = family
        self.roots = roots
        self.transform_F1 = transform_F1
        self.transform_F2 = transform_F2

    @property
    def expected(self) -> Dict[str, Any]:
        return config.EXPECTED[self.name]

    # ------------------------------------------------------------------
    # 族模型上的对象
    # ------------------------------------------------------------------
    @cached_property
    def torsion(self) -> TwoTorsionData:
        return two_torsion(self.family, self.roots)

    @cached_property
    def F1(self) -> SurfaceModel:
        return family_surface(self.family, 1)

    @cached_property
    def F2(self) -> SurfaceModel:
        return family_surface(self.family, 2)

    @cached_property
    def P1(self) -> DescendedSection:
        return section_F1(self.family)

    @cached_property
    def P2(self) -> DescendedSection:
        return section_F2(self.family)

    @cached_property
    def R(self) -> List[DescendedSection]:
        return sections_Rij(self.family, self.torsion)

    # ------------------------------------------------------------------
    # 显示模型
    # ------------------------------------------------------------------
    def _printed_surface(self, S: SurfaceModel, T: Optional[ModelTransform], var: str) -> SurfaceModel:
        if T is None:
            return S
        return SurfaceModel(S.n, var, transport_curve(T, S.curve), T, S.data)

    @cached_property
    def printed_F1(self) -> SurfaceModel:
        return self._printed_surface(self.F1, self.transform_F1, self.var_F1)

    @cached_property
    def printed_F2(self) -> SurfaceModel:
        return self._printed_surface(self.F2, self.transform_F2, self.var_F2)

    def to_printed(self, sec: DescendedSection, orientation: Optional[int] = None) -> DescendedSection:
        """把族模型上的截面搬到显示模型；orientation 覆盖变换自带的符号"""
        n = sec.surface.n
        T = self.transform_F1 if n == 1 else self.transform_F2
        target = self.printed_F1 if n == 1 else self.printed_F2
        if T is None:
            return DescendedSection(target, sec.point, dict(sec.provenance))
        if orientation is not None and orientation != T.orientation:
            T = ModelTransform(T.lam, T.base, orientation, T.name)
        prov = dict(sec.provenance, transported=T.name or 'printed')
        return DescendedSection(target, transport_point(T, sec.point), prov)

    def printed_curves(self) -> Dict[int, WeierstrassCurve]:
        """显示的 F^(1), F^(2) 方程（没有显示的省略）"""
        return {}

    # ------------------------------------------------------------------
    # 基
    # ------------------------------------------------------------------
    def second_F1(self) -> Optional[DescendedSection]:
        return None

    def second_F2(self) -> Optional[DescendedSection]:
        return None

    def lattice_F1(self) -> Tuple[SurfaceModel, List[DescendedSection]]:
        """F^(1) 上计算 Gram 矩阵的曲面与基"""
        second = self.second_F1()
        basis = [self.P1] if second is None else [self.P1, second]
        return self.F1, basis

    def lattice_F2(self) -> Tuple[SurfaceModel, List[DescendedSection]]:
        second = self.second_F2()
        head = [self.P2] if second is None else [self.P2, second]
        return self.F2, head + list(self.R)

    def anchors(self) -> List[Anchor]:
        """需要与显示值逐项比较的坐标"""
        return []

    def to_json(self) -> Dict[str, Any]:
        return {'name': self.name, 'family': self.family.to_json()}


class GenericExample(SurfaceExample):
    """一般的 (a, b)：Gram 矩阵由 P^(2) 与四个 R_ij 给出"""

    def __init__(self, a, b):
        super().__init__(build_family(a, b))
        self.a, self.b = a, b


# ----------------------------------------------------------------------
# X_[3,3,3]
# ----------------------------------------------------------------------
class X333(SurfaceExample):
    """
    k = Q(ω)(c), c^3 = 2；a = 6, b = -1
    显示模型与族模型相同，显示的截面是计算所得截面的负元
    """

    name = 'x333'

    def __init__(self):
        tower = QQ.extend('w', [1, 1, 1]).extend('c', [-2, 0, 0, 1])
        self.tower = tower
        self.w = tower.gen('w')
        self.c = tower.gen('c')
        roots = [-2 + self.c, -2 + self.c * self.w, -2 + self.c * self.w ** 2]
        flip = ModelTransform(1, None, -1, 'negation')
        super().__init__(build_family(6, -1), roots, flip, flip)

    def cm(self, sec: DescendedSection) -> DescendedSection:
        """[-ω](X, Y) = (ωX, -Y)"""
        return cm_image(sec, self.w, -1, name='[-w]')

    def second_F1(self) -> DescendedSection:
        return self.cm(self.P1)

    def second_F2(self) -> DescendedSection:
        return self.cm(self.P2)

    def printed_curves(self) -> Dict[int, WeierstrassCurve]:
        s = RatFunc.gen('s')
        return {1: WeierstrassCurve.short(RatFunc.constant(0, 's'), -27 * (s - 506 + 9 / s))}

    def j_E2(self):
        return self.family.E2.j

    def anchors(self) -> List[Anchor]:
        s, t = RatFunc.gen('s'), RatFunc.gen('t')
        S = (s / 3 + 3 / s) / 2
        X1 = (S ** 3 - 93 * S ** 2 + 963 * S + 4129) / (64 * (S - 1))
        Y1 = 3 * s * (s + 3) * (S ** 4 - 140 * S ** 3 + 4758 * S ** 2 - 13100 * S + 258481) \
            / (256 * (s - 3) ** 3)
        Tm, Tp = t - 3 / t, t + 3 / t
        X2 = Tm * Tm / 4 - 6 * Tm + 15
        Y2 = Tp * (Tm * Tm - 36 * Tm + 300) / 8
        sqrt_m3 = 1 + 2 * self.w
        R22 = (-15 * self.c ** 2 * self.w, -3 * sqrt_m3 * Tm)
        R23 = (-24 * self.w, -3 * sqrt_m3 * Tp)
        printed_R = {
            'R22': R22,
            'R33': (self.w * R22[0], -R22[1]),
            'R23': R23,
            'R32': (self.w * R23[0], -R23[1]),
        }
        P1 = self.to_printed(self.P1).point
        P2 = self.to_printed(self.P2).point
        out = [
            ("X_[3,3,3] X(P^(1))", P1.x, X1),
            ("X_[3,3,3] Y(P^(1))", P1.y, Y1),
            ("X_[3,3,3] X(P^(2))", P2.x, X2),
            ("X_[3,3,3] Y(P^(2))", P2.y, Y2),
        ]
        for name, sec in zip(R_NAMES, self.R):
            point = self.to_printed(sec).point
            X, Y = printed_R[name]
            out.append((f"X_[3,3,3] X({name})", point.x, X))
            out.append((f"X_[3,3,3] Y({name})", point.y, Y))
        return out


# ----------------------------------------------------------------------
# X_[3,2,3]
# ----------------------------------------------------------------------
class X323(SurfaceExample):
    """
    k = Q(√2), H = k(i), L = H(ρ), ρ^2 = 1 - √2
    E1 由 H-有理 3-挠点 x0 的平移得到；显示模型经 μ = (√2 - i)/3、λ = √2/6 缩放，
    s = (1-√2)^3 s'/μ^6, t = ρ^3 t'/μ^3，显示的截面为负元
    """

    name = 'x323'
    var_F1 = "s'"
    var_F2 = "t'"

    def __init__(self):
        H = QQ.extend('r2', [-2, 0, 1]).extend('i', [1, 0, 1])
        r2, i = H.gen('r2'), H.gen('i')
        L = H.extend('rho', [r2 - 1, 0, 1])
        self.tower = L
        self.r2, self.i, self.rho = L.gen('r2'), L.gen('i'), L.gen('rho')
        x0 = -(3 + 2 * r2) - (4 + 3 * r2) * i
        family = family_from_kernel(6 * (3 - r2), 9 * (3 + 2 * r2), x0)
        r2, i, rho = self.r2, self.i, self.rho
        base = -3 * (3 - r2) - x0
        roots = [-x0, base - 6 * r2 * rho, base + 6 * r2 * rho]
        mu = (r2 - i) / 3
        lam = (2 - r2 * i) / 18
        T1 = ModelTransform(lam, _scale_var((1 - r2) ** 3 / mu ** 6, "s'"), -1, 'printed F^(1)')
        T2 = ModelTransform(lam, _scale_var(rho ** 3 / mu ** 3, "t'"), -1, 'printed F^(2)')
        super().__init__(family, roots, T1, T2)
        self.gamma = FieldAutomorphism(L, {'i': -i}, name='gamma')
        self.sigma = FieldAutomorphism(L, {'rho': -rho}, name='sigma')

    @staticmethod
    def weierstrass_E1() -> WeierstrassCurve:
        """E1: y^2 = x^3 + 6(3-√2)x^2 + 9(3+2√2)x"""
        k = QQ.extend('r2', [-2, 0, 1])
        r2 = k.gen('r2')
        return WeierstrassCurve(0, 6 * (3 - r2), 0, 9 * (3 + 2 * r2), 0)

    @cached_property
    def P1_printed(self) -> DescendedSection:
        return self.to_printed(self.P1)

    @cached_property
    def P2_printed(self) -> DescendedSection:
        return self.to_printed(self.P2)

    @cached_property
    def R_printed(self) -> List[DescendedSection]:
        return [self.to_printed(sec) for sec in self.R]

    def second_F1(self) -> DescendedSection:
        # 显示模型定义在 Q 上，γ 保持之；族模型不行
        return galois_image(self.P1_printed, self.gamma)

    def second_F2(self) -> DescendedSection:
        return galois_image(self.P2_printed, self.gamma)

    def lattice_F1(self):
        return self.printed_F1, [self.P1_printed, self.second_F1()]

    def lattice_F2(self):
        return self.printed_F2, [self.P2_printed, self.second_F2()] + self.R_printed

    def printed_curves(self) -> Dict[int, WeierstrassCurve]:
        s, t = RatFunc.gen("s'"), RatFunc.gen("t'")
        a4 = Fraction(575, 12)
        const = Fraction(-34937, 108)
        return {
            1: WeierstrassCurve.short(RatFunc.constant(a4, "s'"), s + const - 1 / s),
            2: WeierstrassCurve.short(RatFunc.constant(a4, "t'"), t * t + const - 1 / (t * t)),
        }

    def anchors(self) -> List[Anchor]:
        r2, i, rho = self.r2, self.i, self.rho
        s, t = RatFunc.gen("s'"), RatFunc.gen("t'")
        S = s - 1 / s
        c2 = -42 * (23 - 10 * i)
        c1 = 2 * (9402 - 13685 * i)
        c0 = -4 * (61663 + 50160 * i)
        X1 = -i * (3 * S ** 3 + c2 * S * S + c1 * S + c0) / (12 * (2 - i) ** 8 * (S + 2 * i))
        T = t + i / t
        e1 = rho * (9 - 2 * r2 + (13 + 11 * r2) * i)
        e0 = (161 - 97 * i) / 6
        X2 = -(1 + i) * (T * T + e1 * T + e0) / (2 * (1 + 2 * i) ** 2)
        X22 = (1 - 2 * i) * (2 + r2 + r2 * i) * rho - (1 - 2 * i) ** 4 / 6
        g, sg = self.gamma, self.sigma
        Tg = t - i / t
        printed_R = {
            'R22': (X22, T),
            'R33': (sg(X22), -T),
            'R23': (g(X22), Tg),
            'R32': (g(sg(X22)), -Tg),
        }
        out = [
            ("X_[3,2,3] X(P^(1)_phi1)", self.P1_printed.point.x, X1),
            ("X_[3,2,3] X(P^(2)_phi1)", self.P2_printed.point.x, X2),
        ]
        for name, sec in zip(R_NAMES, self.R_printed):
            X, Y = printed_R[name]
            out.append((f"X_[3,2,3] X({name})", sec.point.x, X))
            out.append((f"X_[3,2,3] Y({name})", sec.point.y, Y))
        return out

    def galois_relations(self) -> List[Anchor]:
        """R33 = -σ(R22), R23 = γ(R22), R32 = γ(R33)，在显示模型上"""
        R22, R33, R23, R32 = (sec.point for sec in self.R_printed)

        def act(auto, P: CurvePoint) -> CurvePoint:
            return P.map_coords(lambda f: f.map_coeffs(auto) if isinstance(f, RatFunc) else auto(f))

        minus_sigma = act(self.sigma, R22)
        minus_sigma = CurvePoint(minus_sigma.x, -minus_sigma.y)
        return [
            ("X_[3,2,3] R33 = -sigma(R22)", R33, minus_sigma),
            ("X_[3,2,3] R23 = gamma(R22)", R23, act(self.gamma, R22)),
            ("X_[3,2,3] R32 = gamma(R33)", R32, act(self.gamma, R33)),
        ]


# ----------------------------------------------------------------------
# X_[3,0,3]
# ----------------------------------------------------------------------
class X303(SurfaceExample):
    """
    k = Q(√3), L = k(i)(α), α^2 = 3 + 2√3；a = 9(2+√3), b = (1-√3)/3
    显示的 F^(1)：s = 81(3+2√3)s', λ = √3/9，P^(1)_φ1 取负元；
    R_ij 用 t = 27t'，符号不变
    """

    name = 'x303'
    var_F1 = "s'"
    var_F2 = "t'"

    def __init__(self):
        k = QQ.extend('r3', [-3, 0, 1])
        r3k = k.gen('r3')
        L = k.extend('i', [1, 0, 1]).extend('alpha', [-(3 + 2 * r3k), 0, 1])
        self.tower = L
        self.r3, self.i, self.alpha = L.gen('r3'), L.gen('i'), L.gen('alpha')
        family = build_family(9 * (2 + r3k), (1 - r3k) / 3)
        r3, al = self.r3, self.alpha
        roots = [r3 - 2, -8 - 5 * r3 - (3 + 2 * r3) * al, -8 - 5 * r3 + (3 + 2 * r3) * al]
        lam = r3k / 9
        T1 = ModelTransform(lam, _scale_var(81 * (3 + 2 * r3k), "s'"), -1, 'printed F^(1)')
        T2 = ModelTransform(lam, _scale_var(Fraction(27), "t'"), 1, 'printed F^(2)')
        super().__init__(family, roots, T1, T2)

    @cached_property
    def P1_printed(self) -> DescendedSection:
        return self.to_printed(self.P1)

    def second_F1(self) -> DescendedSection:
        # (X, Y)(s') -> (-X(-s'), iY(-s'))
        return cm_image(self.P1_printed, -1, self.i, var_scale=-1, name='cm s -> -s')

    def second_F2(self) -> DescendedSection:
        # 族模型上 (X, Y)(t) -> (-X(-it), iY(-it))
        return cm_image(self.P2, -1, self.i, var_scale=-self.i, name='cm t -> -it')

    def lattice_F1(self):
        return self.printed_F1, [self.P1_printed, self.second_F1()]

    def printed_curves(self) -> Dict[int, WeierstrassCurve]:
        r3 = self.r3
        s = RatFunc.gen("s'")
        return {1: WeierstrassCurve.short(RatFunc.constant(-(387 + 224 * r3), "s'"),
                                          (7 + 4 * r3) * (s + 1 / s))}

    def anchors(self) -> List[Anchor]:
        r3, al = self.r3, self.alpha
        s, t = RatFunc.gen("s'"), RatFunc.gen("t'")
        S = s + 1 / s
        c3, c2 = (2 - r3) ** 2, -42
        c1, c0 = 12 * (91 + 36 * r3), -8 * (1267 + 680 * r3)
        X1 = (c3 * S ** 3 + c2 * S * S + c1 * S + c0) / (144 * (S + 2))
        d4, d3 = (2 - r3) ** 3, -4 * (25 - 12 * r3)
        d2, d1 = 24 * (107 + 15 * r3), 16 * (461 + 444 * r3)
        d0 = -16 * (54676 + 32091 * r3)
        quartic = d4 * S ** 4 + d3 * S ** 3 + d2 * S * S + d1 * S + d0
        Y1 = s * (s - 1) * quartic / (1728 * (s + 1) ** 3)
        Tp = 3 * t / al + al / (3 * t)
        Tm = 3 * t / al - al / (3 * t)
        kk = 2 + r3
        x0, x1 = 7 + 4 * r3, 2 * (1 + r3) * al
        printed_R = {
            'R22': (-x0 + x1, kk * Tp),
            'R33': (-x0 - x1, -kk * Tp),
            'R23': (x0 - x1, kk * Tm),
            'R32': (x0 + x1, -kk * Tm),
        }
        P1 = self.P1_printed.point
        out = [
            ("X_[3,0,3] X(P^(1)_phi1)", P1.x, X1),
            ("X_[3,0,3] Y(P^(1)_phi1)", P1.y, Y1),
        ]
        for name, sec in zip(R_NAMES, self.R):
            point = self.to_printed(sec).point
            X, Y = printed_R[name]
            out.append((f"X_[3,0,3] X({name})", point.x, X))
            out.append((f"X_[3,0,3] Y({name})", point.y, Y))
        return out


_BUILDERS: Dict[str, Callable[[], SurfaceExample]] = {
    'x333': X333,
    'x323': X323,
    'x303': X303,
}


def build_example(name: str) -> SurfaceExample:
    """
    按名字构造命名实例
    :raises ValueError: 未知的名字
    """
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise ValueError(f"unknown example {name!r}; choose from {', '.join(config.NAMED_EXAMPLES)}")


def generic_examples() -> List[GenericExample]:
    return [GenericExample(a, b) for a, b in config.GENERIC_PAIRS]


def twin_j_surface(a, b, scale) -> SurfaceModel:
    """
    E1 与其二次扭变同构的曲线配对（j1 = j2）得到的 F^(1)
    f2(x) = scale^{-3} f1(scale·x) 仍是首一三次式
    """
    fam = build_family(a, b)
    f1 = fam.f1
    f2 = Poly([c / scale ** (3 - k) for k, c in enumerate(f1.coeffs)], 'x2')
    if f2.lc != 1:
        raise ComputationError("twisted cubic is not monic")
    return build_surface(invariants_from_cubics(f1, f2), 1)
