#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
输出格式化模块
验证报告的文本 / JSON / LaTeX 矩阵导出与控制台打印
"""

import json
import os
from datetime import datetime
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import config
from utils import print_color, print_success, print_error, print_warning, print_info, paint, Fore, Style

STATUS_COLORS = {
    'passed': Fore.GREEN,
    'failed': Fore.RED,
    'error': Fore.RED,
    'skipped': Fore.YELLOW,
}


def _fraction_text(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_matrix(entries: Sequence[Sequence[Any]], scale: Optional[int] = None) -> List[str]:
    """
    按列对齐的矩阵文本
    :param scale: scale·G 为整数矩阵时写成 (1/scale)·(整数矩阵)
    """
    rows = [[Fraction(x) for x in row] for row in entries]
    prefix = ""
    if scale and all((scale * x).denominator == 1 for row in rows for x in row):
        rows = [[scale * x for x in row] for row in rows]
        prefix = f"(1/{scale}) "
    cells = [[_fraction_text(x) for x in row] for row in rows]
    width = max((len(c) for row in cells for c in row), default=1)
    lines = []
    for k, row in enumerate(cells):
        lead = prefix if k == 0 else " " * len(prefix)
        lines.append(lead + "[ " + "  ".join(c.rjust(width) for c in row) + " ]")
    return lines


def latex_matrix(entries: Sequence[Sequence[Any]], scale: Optional[int] = None) -> str:
    """pmatrix 形式，可整除时带 \\frac{1}{scale}"""
    rows = [[Fraction(x) for x in row] for row in entries]
    prefix = ""
    if scale and all((scale * x).denominator == 1 for row in rows for x in row):
        rows = [[scale * x for x in row] for row in rows]
        prefix = f"\\frac{{1}}{{{scale}}}"

    def cell(x: Fraction) -> str:
        if x.denominator == 1:
            return str(x.numerator)
        sign = "-" if x < 0 else ""
        return f"{sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"

    body = " \\\\\n".join("  " + " & ".join(cell(x) for x in row) for row in rows)
    return f"{prefix}\\begin{{pmatrix}}\n{body}\n\\end{{pmatrix}}"


class ReportExporter:
    """报告导出器"""

    def __init__(self, output_dir: Optional[str] = None):
        """
        初始化导出器
        :param output_dir: 输出目录
        """
        self.output_dir = output_dir or config.RUN_CONFIG['output_dir']
        self.timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")

    def _path(self, filename: Optional[str], label: str, ext: str) -> str:
        os.makedirs(self.output_dir, exist_ok=True)
        if not filename:
            filename = f"inose_{label}_{self.timestamp}"
        return os.path.join(self.output_dir, f"{filename}.{ext}")

    def export_text(self, report, filename: Optional[str] = None) -> str:
        """
        导出为文本文件
        :param report: VerificationReport
        :return: 文件路径
        """
        path = self._path(filename, report.label, 'txt')
        with open(path, 'w', encoding='utf-8') as f:
            f.write("\n".join(report_lines(report)) + "\n")
        print_success(f"Exported report to: {path}")
        return path

    def export_json(self, report, filename: Optional[str] = None, path: Optional[str] = None) -> str:
        """
        导出为 JSON 文件；字段顺序固定，同一配置两次运行的输出逐字节相同
        :param path: 显式的文件路径（--json）
        """
        if path:
            parent = os.path.dirname(path)
            if parent:
                os.makedirs(parent, exist_ok=True)
        else:
            path = self._path(filename, report.label, 'json')
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(report.to_json(), f, indent=2, ensure_ascii=False)
            f.write("\n")
        print_success(f"Exported report to JSON: {path}")
        return path

    def export_latex(self, report, filename: Optional[str] = None) -> str:
        """导出 Gram 矩阵的 LaTeX 代码"""
        path = self._path(filename, report.label, 'tex')
        scale = config.OUTPUT_CONFIG['matrix_scale']
        parts = []
        for key, gram in report.grams.items():
            parts.append(f"% {report.label} {key}, det = {_fraction_text(gram.det())}")
            parts.append(latex_matrix(gram.entries, scale))
            parts.append("")
        with open(path, 'w', encoding='utf-8') as f:
            f.write("\n".join(parts))
        print_success(f"Exported {len(report.grams)} matrices to: {path}")
        return path

    def export(self, report, outputs: Sequence[str], json_path: Optional[str] = None) -> Dict[str, str]:
        paths: Dict[str, str] = {}
        if 'text' in outputs:
            paths['text'] = self.export_text(report)
        if 'json' in outputs or json_path:
            paths['json'] = self.export_json(report, path=json_path)
        if 'latex-matrices' in outputs:
            paths['latex-matrices'] = self.export_latex(report)
        return paths


def report_lines(report) -> List[str]:
    """报告的纯文本形式（不含颜色）"""
    scale = config.OUTPUT_CONFIG['matrix_scale']
    lines = [f"inose-sections report: {report.label}", ""]
    lines.append("Surfaces:")
    for key, eq in report.surfaces.items():
        lines.append(f"  {key}: {eq}")
    if report.sections:
        lines.append("")
        lines.append("Sections:")
        for sec in report.sections:
            lines.append(f"  {sec['name']} on {sec['surface']}:")
            lines.append(f"    X = {sec['X']}")
            lines.append(f"    Y = {sec['Y']}")
    for key, fibers in report.fibers.items():
        lines.append("")
        lines.append(f"Singular fibers of {key}:")
        for fib in fibers:
            lines.append(f"  {fib}")
    for key, gram in report.grams.items():
        lines.append("")
        lines.append(f"Gram matrix of {key} (det = {_fraction_text(gram.det())}):")
        lines.extend("  " + row for row in format_matrix(gram.entries, scale))
    lines.append("")
    lines.append("Checks:")
    for name, result in report.checks.items():
        detail = f"  ({result['detail']})" if result.get('detail') else ""
        lines.append(f"  {name:<24} {result['status']}{detail}")
    if report.timings:
        lines.append("")
        lines.append("Timings (s):")
        for name, sec in report.timings.items():
            lines.append(f"  {name:<24} {sec:.2f}")
    return lines


class ReportPrinter:
    """报告打印机"""

    @staticmethod
    def print_banner(title: str):
        print_color("\n" + "=" * 60, Fore.CYAN, Style.BRIGHT)
        print_color(title, Fore.CYAN, Style.BRIGHT)
        print_color("=" * 60, Fore.CYAN, Style.BRIGHT)

    @staticmethod
    def print_summary(report):
        """打印曲面、纤维与 Gram 矩阵"""
        scale = config.OUTPUT_CONFIG['matrix_scale']
        print("\n" + "=" * 60)
        print_color(f"RESULTS: {report.label}", Fore.GREEN, Style.BRIGHT)
        print("=" * 60)

        for key, eq in report.surfaces.items():
            print(f"{paint(key + ':', Fore.YELLOW)} {eq}")

        for key, fibers in report.fibers.items():
            print("\n" + paint(f"Singular fibers of {key}:", Fore.YELLOW))
            for fib in fibers:
                print(f"  • {fib}")

        for key, gram in report.grams.items():
            print("\n" + paint(f"Gram matrix of {key}", Fore.YELLOW) + f" (det = {_fraction_text(gram.det())})")
            for row in format_matrix(gram.entries, scale):
                print(f"  {row}")
        print("=" * 60)

    @staticmethod
    def print_checks(report):
        """逐项打印检查结果"""
        print("\n" + "=" * 60)
        print_color("CHECKS", Fore.GREEN, Style.BRIGHT)
        print("=" * 60)
        width = max((len(k) for k in report.checks), default=0)
        for name, result in report.checks.items():
            status = result['status']
            color = STATUS_COLORS.get(status, Fore.WHITE)
            padding = ' ' * (width - len(name))
            line = f"{paint(name + ':', Fore.YELLOW)}{padding} {paint(status, color)}"
            if result.get('detail'):
                line += f"  {result['detail']}"
            print(line)
        print("=" * 60)

    @staticmethod
    def print_verdict(report):
        failed = [k for k, r in report.checks.items() if r['status'] == 'failed']
        errors = [k for k, r in report.checks.items() if r['status'] == 'error']
        if errors:
            print_error(f"{len(errors)} check(s) raised an internal error: {', '.join(errors)}")
        if failed:
            print_error(f"{len(failed)} check(s) failed: {', '.join(failed)}")
            for name in failed:
                anchor = report.checks[name].get('anchor')
                if anchor:
                    print_warning(f"{name}: see {anchor}")
        if not failed and not errors:
            passed = sum(1 for r in report.checks.values() if r['status'] == 'passed')
            print_success(f"All {passed} requested checks passed")
        elif report.timings:
            print_info(f"Total time: {sum(report.timings.values()):.1f}s")
