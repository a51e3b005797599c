#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
inose-sections 配置文件
"""

from fractions import Fraction
from typing import Dict, List, Tuple

# 数值嵌入与牛顿迭代
ARITH_CONFIG = {
    'embed_precision': 128,       # 区间嵌入的初始精度（比特）
    'embed_max_precision': 4096,  # 精度加倍的上限
    'newton_iterations': 200,     # 数值根的最大迭代次数
}

# 截面求解
SOLVER_CONFIG = {
    'check_descent': True,      # u -> -ωu / u -> ωu 不变性检验
    'check_closed_form': True,  # 与闭式比较
    'check_gauge': True,        # 用缩放后的二次曲线重解第六点
}

# 高度与纤维
HEIGHT_CONFIG = {
    'chi': 2,                 # K3 曲面的 Euler 示性数 / 12
    'check_fiber_sum': True,  # Σ v(Δ) = 12χ
}

# 运行配置
RUN_CONFIG = {
    'default_outputs': ['text'],
    'default_checks': 'all',
    'seed': 20240601,
    'max_workers': 4,  # 线程池大小
    'psi_samples': 3,  # Ψ 特化检验的抽样点数
    'output_dir': 'results',
}

# 输出配置
OUTPUT_CONFIG = {
    'color_output': True,
    'show_progress': True,
    'matrix_scale': 3,  # Gram 矩阵按 (1/3)·整数矩阵显示
}

# 一般族的测试参数 (a, b)
GENERIC_PAIRS: List[Tuple[int, int]] = [(1, 1), (2, -1), (3, 2), (6, -1), (-1, 2)]

OUTPUT_FORMATS = ('text', 'json', 'latex-matrices')
NAMED_EXAMPLES = ('x333', 'x323', 'x303')

# 已知结果：Gram 矩阵记为 3 倍后的整数矩阵
EXPECTED: Dict[str, Dict] = {
    'generic': {
        'gram3': [
            [12, 0, 0, -3, -3],
            [0, 4, 2, 0, 0],
            [0, 2, 4, 0, 0],
            [-3, 0, 0, 4, 2],
            [-3, 0, 0, 2, 4],
        ],
        'det': Fraction(16, 3),
        'height_P1': 6,
        'height_P2': 4,
        'fibers_F1': {'II*': 2, 'I1': 4},
        'det_hom': Fraction(3),
    },
    'x333': {
        'gram3': [
            [12, 6, 0, 0, -3, -3],
            [6, 12, 0, 0, 0, -3],
            [0, 0, 4, 2, 0, 0],
            [0, 0, 2, 4, 0, 0],
            [-3, 0, 0, 0, 4, 2],
            [-3, -3, 0, 0, 2, 4],
        ],
        'det': Fraction(12),
        'gram_F1': [[6, 3], [3, 6]],
        'det_hom': Fraction(27, 4),
        'fibers_F1': {'II*': 2, 'II': 2},
        'j2': -12288000,
    },
    'x323': {
        'gram3': [
            [12, 3, 0, 0, -3, -3],
            [3, 12, -3, -3, 0, 0],
            [0, -3, 4, 2, 0, 0],
            [0, -3, 2, 4, 0, 0],
            [-3, 0, 0, 0, 4, 2],
            [-3, 0, 0, 0, 2, 4],
        ],
        'det': Fraction(128, 9),
        'gram_F1': [[6, 2], [2, 6]],
        'det_hom': Fraction(8),
        'fibers_F1': {'II*': 2, 'I1': 4},
    },
    'x303': {
        'gram3': [
            [12, 0, 0, 0, -3, -3],
            [0, 12, -3, -3, 0, 0],
            [0, -3, 4, 2, 0, 0],
            [0, -3, 2, 4, 0, 0],
            [-3, 0, 0, 0, 4, 2],
            [-3, 0, 0, 0, 2, 4],
        ],
        'det': Fraction(16),
        'gram_F1': [[6, 0], [0, 6]],
        'det_hom': Fraction(9),
        'fibers_F1': {'II*': 2, 'I1': 4},
    },
}

# --checks 接受的检验名
CHECK_NAMES = (
    'isogeny',
    'psi_identity',
    'psi_specialization',
    'weier_f6',
    'printed_F1',
    'closed_form_P1',
    'closed_form_P2',
    'printed_sections',
    'heights',
    'fibers_F1',
    'fibers_F2',
    'gram_F1',
    'gram_F2',
    'lattice_identity',
    'component_homomorphism',
)
