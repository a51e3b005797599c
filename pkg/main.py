#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
inose-sections - Inose 曲面上 3-同源截面与 Mordell-Weil 格的验证工具
"""

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

import config
from utils import print_error, print_info, ProgressBar, Timer, configure_console, seeded_rng
from exact_arith import FieldTower, NFElement, QQ
from isogeny import verify_isogeny
from inose_construct import family_surface, build_weier_f6, verify_psi, check_psi_specialization
from section_solver import DescendedSection, closed_form_P1, closed_form_P2
from mw_lattice import (
    GramMatrix, KodairaFiber, local_models, classify_fibers, fiber_counts, extra_fibers,
    predicted_fiber_row, self_height, gram_and_det, hom_lattice_det, check_lattice_identity,
    check_component_homomorphism
)
from named_examples import SurfaceExample, GenericExample, X323, build_example
from errors import ComputationError, CheckFailed, IndeterminateForm
from output import ReportExporter, ReportPrinter

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2
EXIT_INTERNAL = 3


class CheckSkipped(Exception):
    """检查对当前实例不适用"""


@dataclass
class RunConfig:
    mode: str
    example: Optional[str] = None
    a: Any = None
    b: Any = None
    tower: FieldTower = QQ
    outputs: List[str] = field(default_factory=lambda: list(config.RUN_CONFIG['default_outputs']))
    checks: List[str] = field(default_factory=lambda: list(config.CHECK_NAMES))
    seed: int = config.RUN_CONFIG['seed']
    max_workers: int = config.RUN_CONFIG['max_workers']
    show_progress: bool = True

    @property
    def label(self) -> str:
        if self.mode == 'named':
            return self.example
        return re.sub(r"[^\w.-]+", "_", f"family_a{self.a}_b{self.b}")


@dataclass
class VerificationReport:
    label: str
    mode: str
    surfaces: Dict[str, str] = field(default_factory=dict)
    sections: List[Dict[str, Any]] = field(default_factory=list)
    fibers: Dict[str, List[KodairaFiber]] = field(default_factory=dict)
    grams: Dict[str, GramMatrix] = field(default_factory=dict)
    determinants: Dict[str, Fraction] = field(default_factory=dict)
    checks: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        statuses = [r['status'] for r in self.checks.values()]
        if 'error' in statuses:
            return EXIT_INTERNAL
        if 'failed' in statuses:
            return EXIT_CHECK_FAILED
        return EXIT_OK

    def to_json(self) -> Dict[str, Any]:
        # 不含计时，保证输出可复现
        return {
            'label': self.label,
            'mode': self.mode,
            'surfaces': dict(self.surfaces),
            'sections': list(self.sections),
            'fibers': {k: [f.to_json() for f in v] for k, v in self.fibers.items()},
            'gram': {k: g.to_json() for k, g in self.grams.items()},
            'det': {k: str(v) for k, v in self.determinants.items()},
            'checks': {k: dict(v) for k, v in self.checks.items()},
            'exit_code': self.exit_code,
        }


def _section_entry(name: str, sec: DescendedSection) -> Dict[str, Any]:
    return {
        'name': name,
        'surface': f"F^({sec.surface.n})",
        'X': str(sec.point.x),
        'Y': str(sec.point.y),
        'provenance': sec.provenance,
    }


class CheckSuite:
    """对一个实例逐项执行检查；共享的模型、截面与 Gram 矩阵只算一次"""

    def __init__(self, example: SurfaceExample, seed: int, show_progress: bool = True,
                 max_workers: Optional[int] = None):
        self.example = example
        self.rng = seeded_rng(seed)
        self.show_progress = show_progress
        self.max_workers = max_workers
        self.grams: Dict[str, GramMatrix] = {}
        self.fibers: Dict[str, List[KodairaFiber]] = {}
        self.sections: Dict[str, DescendedSection] = {}
        self._models: Dict[int, Any] = {}

    @property
    def named(self) -> bool:
        return not isinstance(self.example, GenericExample)

    def models(self, S):
        key = id(S)
        if key not in self._models:
            self._models[key] = local_models(S)
        return self._models[key]

    def _register(self, names: List[str], secs: List[DescendedSection]) -> None:
        for name, sec in zip(names, secs):
            self.sections.setdefault(name, sec)

    def _basis_names(self, n: int, size: int) -> List[str]:
        head = [f"P{n}_phi1", f"P{n}_phi2"] if self.named else [f"P{n}"]
        if n == 2:
            return head + ['R22', 'R33', 'R23', 'R32']
        return head[:size]

    def _gram(self, n: int) -> GramMatrix:
        key = f"F^({n})"
        if key in self.grams:
            return self.grams[key]
        S, basis = self.example.lattice_F1() if n == 1 else self.example.lattice_F2()
        self._register(self._basis_names(n, len(basis)), basis)
        pairs = len(basis) * (len(basis) + 1) // 2
        with ProgressBar(pairs, f"Heights on {key}", self.show_progress) as bar:
            gram, _ = gram_and_det(S, basis, self.models(S), progress=bar, max_workers=self.max_workers)
        self.grams[key] = gram
        return gram

    # ------------------------------------------------------------------
    # 各项检查：返回说明文字；失败时抛出 CheckFailed
    # ------------------------------------------------------------------
    def check_isogeny(self) -> str:
        fam = self.example.family
        if not verify_isogeny(fam.E1, fam.E2, fam.phi):
            raise CheckFailed("phi_y^2 f1 != f2(phi_x)", "isogeny identity")
        if self.example.name == 'x333':
            j2 = fam.E2.j
            if j2 != self.example.expected['j2']:
                raise CheckFailed(f"j(E2) = {j2}", "j-invariant of E2 of X_[3,3,3]")
            return f"j(E2) = {j2}"
        if isinstance(self.example, X323):
            printed = X323.weierstrass_E1()
            if printed.j != fam.E1.j:
                raise CheckFailed("kernel normalization changed j(E1)", "E1 of X_[3,2,3]")
            return f"j(E1) = {printed.j}"
        return "phi_y^2 f1 = f2(phi_x)"

    def check_psi_identity(self) -> str:
        if not verify_psi(self.example.family):
            raise CheckFailed("Psi does not map C_u into F^(6)", "coordinate transform Psi")
        return "F^(6)(Psi) = 0 mod C_u"

    def check_psi_specialization(self) -> str:
        points = []
        for _ in range(config.RUN_CONFIG['psi_samples']):
            u0, x1 = self.rng.randint(2, 9), self.rng.randint(1, 9)
            try:
                ok = check_psi_specialization(self.example.family, u0, x1)
            except IndeterminateForm:
                continue
            if not ok:
                raise CheckFailed(f"residual box excludes 0 at u = {u0}, x1 = {x1}",
                                  "specialization of Psi")
            points.append(f"(u, x1) = ({u0}, {x1})")
        if not points:
            raise CheckFailed("no sampled point avoids the poles of Psi", "specialization of Psi")
        return ", ".join(points)

    def check_weier_f6(self) -> str:
        try:
            S = build_weier_f6(self.example.family)
        except CheckFailed:
            raise
        except ComputationError as e:
            raise CheckFailed(str(e), "closed form of F^(6)")
        return str(S.curve)

    def check_printed_F1(self) -> str:
        curves = self.example.printed_curves()
        if not curves:
            raise CheckSkipped("no printed model")
        for n, curve in sorted(curves.items()):
            S = self.example.printed_F1 if n == 1 else self.example.printed_F2
            if S.curve != curve:
                raise CheckFailed(f"F^({n}) is {S.curve}", f"printed equation of F^({n})")
        return ", ".join(f"F^({n})" for n in sorted(curves))

    def check_closed_form_P1(self) -> str:
        sec = self.example.P1
        self._register([self._basis_names(1, 1)[0]], [sec])
        if sec.point != closed_form_P1(self.example.family):
            raise CheckFailed("conic pipeline and closed form differ", "closed form of P^(1)")
        return "conic pipeline = closed form"

    def check_closed_form_P2(self) -> str:
        sec = self.example.P2
        self._register([self._basis_names(2, 1)[0]], [sec])
        if sec.point != closed_form_P2(self.example.family):
            raise CheckFailed("conic pipeline and closed form differ", "closed form of P^(2)")
        return "conic pipeline = closed form"

    def check_printed_sections(self) -> str:
        anchors = self.example.anchors()
        if isinstance(self.example, X323):
            anchors = anchors + self.example.galois_relations()
        if not anchors:
            raise CheckSkipped("no printed sections")
        for label, computed, printed in anchors:
            if computed != printed:
                raise CheckFailed(f"{label} differs from the printed value", label)
        return f"{len(anchors)} coordinates"

    def check_heights(self) -> str:
        ex = self.example
        expected = config.EXPECTED['generic']
        h1 = self_height(ex.F1, ex.P1, self.models(ex.F1))
        h2 = self_height(ex.F2, ex.P2, self.models(ex.F2))
        if h1 != expected['height_P1']:
            raise CheckFailed(f"h(P^(1)) = {h1}", "height of P^(1)")
        if h2 != expected['height_P2']:
            raise CheckFailed(f"h(P^(2)) = {h2}", "height of P^(2)")
        return f"h(P^(1)) = {h1}, h(P^(2)) = {h2}"

    def check_fibers_F1(self) -> str:
        ex = self.example
        fibers = classify_fibers(ex.F1, self.models(ex.F1))
        self.fibers['F^(1)'] = fibers
        extra = extra_fibers(fibers)
        predicted = predicted_fiber_row(ex.family.E1.j, ex.family.E2.j)
        if extra != predicted:
            raise CheckFailed(f"found {extra}, predicted {predicted}", "fiber table of F^(1)")
        expected = ex.expected.get('fibers_F1') if self.named else None
        counts = fiber_counts(fibers)
        if expected is not None and counts != expected:
            raise CheckFailed(f"found {counts}", "fiber table of F^(1)")
        return ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))

    def check_fibers_F2(self) -> str:
        S = self.example.F2
        fibers = classify_fibers(S, self.models(S))
        self.fibers['F^(2)'] = fibers
        counts = fiber_counts(fibers)
        return ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))

    def check_gram_F1(self) -> str:
        gram = self._gram(1)
        expected = self.example.expected.get('gram_F1', [[self.example.expected.get('height_P1')]])
        if gram != expected:
            raise CheckFailed(f"Gram matrix is {gram.entries}", "Gram matrix of F^(1)")
        return f"det = {gram.det()}"

    def check_gram_F2(self) -> str:
        gram = self._gram(2)
        expected = self.example.expected
        scale = config.OUTPUT_CONFIG['matrix_scale']
        if gram.integer_matrix(scale) != expected['gram3']:
            raise CheckFailed(f"Gram matrix is {gram.entries}", "Gram matrix of F^(2)")
        det = gram.det()
        if det != expected['det']:
            raise CheckFailed(f"det = {det}", "determinant of F^(2)")
        return f"det = {det}"

    def check_lattice_identity(self) -> str:
        if 'det_hom' not in self.example.expected:
            raise CheckSkipped("no expected det Hom(E1, E2) for this example")
        det_hom = hom_lattice_det(self._gram(1))
        det_F2 = self._gram(2).det()
        if det_hom != self.example.expected['det_hom']:
            raise CheckFailed(f"det Hom = {det_hom}", "determinant of Hom(E1, E2)")
        if not check_lattice_identity(det_F2, det_hom):
            raise CheckFailed(f"det F^(2) = {det_F2}, det Hom = {det_hom}", "2^4/3^2 det Hom = det F^(2)")
        return f"det F^(2) = 16/9 * {det_hom}"

    def check_component_homomorphism(self) -> str:
        S, basis = self.example.lattice_F2()
        models = self.models(S)
        for k in range(1, len(basis)):
            if not check_component_homomorphism(S, basis[0], basis[k], models):
                raise CheckFailed(f"labels are not additive for sections 0 and {k}",
                                  "component groups of F^(2)")
        return f"{len(basis) - 1} pairs"

    def run(self, name: str) -> Dict[str, Any]:
        method: Callable[[], str] = getattr(self, f"check_{name}")
        try:
            return {'status': 'passed', 'detail': method()}
        except CheckSkipped as e:
            return {'status': 'skipped', 'detail': str(e)}
        except CheckFailed as e:
            return {'status': 'failed', 'detail': str(e), 'anchor': e.anchor}
        except Exception as e:
            return {'status': 'error', 'detail': f"{type(e).__name__}: {e}",
                    'anchor': getattr(e, 'anchor', None)}


def _build_example(cfg: RunConfig) -> SurfaceExample:
    if cfg.mode == 'named':
        return build_example(cfg.example)
    return GenericExample(cfg.a, cfg.b)


def run(cfg: RunConfig) -> VerificationReport:
    """
    执行 isogeny -> inose_construct -> section_solver -> mw_lattice
    :return: 报告；exit_code 为 0 当且仅当所有请求的检查通过
    """
    report = VerificationReport(cfg.label, cfg.mode)
    example = _build_example(cfg)
    suite = CheckSuite(example, cfg.seed, cfg.show_progress, cfg.max_workers)

    requested = [name for name in config.CHECK_NAMES if name in cfg.checks]
    for name in requested:
        with Timer(report.timings, name):
            report.checks[name] = suite.run(name)

    report.surfaces['F^(1)'] = str(example.printed_F1.curve)
    report.surfaces['F^(2)'] = str(example.printed_F2.curve)
    report.surfaces['F^(6)'] = str(family_surface(example.family, 6).curve)
    report.sections = [_section_entry(name, sec) for name, sec in suite.sections.items()]
    report.fibers = dict(suite.fibers)
    report.grams = dict(suite.grams)
    report.determinants = {k: g.det() for k, g in suite.grams.items()}
    return report


def _parse_scalar(text: str, tower: FieldTower):
    """有理数 "3/2"，或塔中幂积基坐标的 JSON 列表 "[18, 9]" """
    text = text.strip()
    if text.startswith('['):
        coeffs = [Fraction(str(c)) for c in json.loads(text)]
        return NFElement.from_coeffs(tower, coeffs)
    value = Fraction(text)
    return value if tower.level == 0 else tower.element(value)


class InoseRunner:
    """inose-sections 主类"""

    def __init__(self):
        self.args = None
        self.config: Optional[RunConfig] = None
        self.exporter = ReportExporter()

    def parse_args(self, argv=None):
        """解析命令行参数"""
        parser = argparse.ArgumentParser(
            description='inose-sections - Inose 曲面上 3-同源截面与 Mordell-Weil 格的验证',
            epilog='\nExamples:\n'
                   '  python run.py named x333\n'
                   '  python run.py family --a 1 --b 1\n'
                   '  python run.py named x303 --outputs latex-matrices\n'
                   '  python run.py named x323 --checks printed_sections,gram_F1 --json out.json',
            formatter_class=argparse.RawDescriptionHelpFormatter
        )

        # 输入选项
        input_group = parser.add_argument_group('Input Options')
        input_group.add_argument('target', nargs='*',
                                 help='named <x333|x323|x303> 或 family')
        input_group.add_argument('--mode', choices=('named', 'family'),
                                 help='运行模式（也可作为第一个位置参数）')
        input_group.add_argument('--example', choices=config.NAMED_EXAMPLES,
                                 help='命名实例')
        input_group.add_argument('--a', help='族参数 a（有理数或塔坐标的 JSON 列表）')
        input_group.add_argument('--b', help='族参数 b')
        input_group.add_argument('--tower',
                                 help='数域塔的 JSON（或 JSON 文件路径）')

        # 检查选项
        check_group = parser.add_argument_group('Check Options')
        check_group.add_argument('--checks', default=config.RUN_CONFIG['default_checks'],
                                 help=f"逗号分隔的检查名或 all（可选：{', '.join(config.CHECK_NAMES)}）")
        check_group.add_argument('--seed', type=int, default=config.RUN_CONFIG['seed'],
                                 help=f"抽样检查的随机种子（默认：{config.RUN_CONFIG['seed']}）")

        # 输出选项
        output_group = parser.add_argument_group('Output Options')
        output_group.add_argument('--outputs', default=','.join(config.RUN_CONFIG['default_outputs']),
                                  help=f"逗号分隔的输出格式（可选：{', '.join(config.OUTPUT_FORMATS)}）")
        output_group.add_argument('--json', metavar='PATH',
                                  help='把 JSON 报告写到指定路径')
        output_group.add_argument('-o', '--output',
                                  help=f"输出目录（默认：{config.RUN_CONFIG['output_dir']}）")
        output_group.add_argument('--no-color', action='store_true',
                                  help='禁用彩色输出')
        output_group.add_argument('--quiet', action='store_true',
                                  help='安静模式，减少输出')
        output_group.add_argument('--no-progress', action='store_true',
                                  help='禁用进度条')

        # 性能选项
        perf_group = parser.add_argument_group('Performance Options')
        perf_group.add_argument('--threads', type=int, default=config.RUN_CONFIG['max_workers'],
                                help=f"线程数（默认：{config.RUN_CONFIG['max_workers']}）")

        try:
            self.args = parser.parse_args(argv)
        except SystemExit as e:
            # 用法错误统一为退出码 1
            sys.exit(EXIT_USAGE if e.code else EXIT_OK)
        self._validate_args()
        return self.args

    def _fail(self, message: str):
        print_error(message)
        sys.exit(EXIT_USAGE)

    def _validate_args(self):
        """验证参数并构造 RunConfig"""
        args = self.args
        positional = list(args.target)
        mode = args.mode
        if positional and positional[0] in ('named', 'family'):
            if mode and mode != positional[0]:
                self._fail(f"冲突的模式: {mode} / {positional[0]}")
            mode = positional.pop(0)
        example = args.example
        if positional:
            if example and example != positional[0]:
                self._fail(f"冲突的实例: {example} / {positional[0]}")
            example = positional.pop(0)
        if positional:
            self._fail(f"多余的参数: {' '.join(positional)}")
        if mode is None:
            mode = 'named' if example else None
        if mode is None:
            self._fail("必须指定模式 named 或 family")

        configure_console(quiet=args.quiet, color=not args.no_color)

        if args.threads < 1:
            self._fail("线程数必须大于0")

        outputs = [o.strip() for o in args.outputs.split(',') if o.strip()]
        unknown = [o for o in outputs if o not in config.OUTPUT_FORMATS]
        if unknown:
            self._fail(f"未知的输出格式: {', '.join(unknown)}")

        if args.checks.strip() == 'all':
            checks = list(config.CHECK_NAMES)
        else:
            checks = [c.strip() for c in args.checks.split(',') if c.strip()]
            unknown = [c for c in checks if c not in config.CHECK_NAMES]
            if unknown or not checks:
                self._fail(f"未知的检查: {', '.join(unknown) or '(空)'}")

        cfg = RunConfig(mode=mode, outputs=outputs, checks=checks, seed=args.seed,
                        max_workers=args.threads, show_progress=not args.no_progress)

        if mode == 'named':
            if example not in config.NAMED_EXAMPLES:
                self._fail(f"未知的实例: {example}（可选：{', '.join(config.NAMED_EXAMPLES)}）")
            if args.a is not None or args.b is not None or args.tower:
                self._fail("--a/--b/--tower 只用于 family 模式")
            cfg.example = example
        else:
            if example:
                self._fail("family 模式不接受实例名")
            if args.a is None or args.b is None:
                self._fail("family 模式需要 --a 与 --b")
            tower = QQ
            if args.tower:
                text = args.tower
                if os.path.exists(text):
                    with open(text, 'r', encoding='utf-8') as f:
                        text = f.read()
                try:
                    tower = FieldTower.from_json(json.loads(text))
                except (ValueError, KeyError, TypeError, ComputationError) as e:
                    self._fail(f"无效的数域塔: {e}")
            try:
                cfg.a = _parse_scalar(args.a, tower)
                cfg.b = _parse_scalar(args.b, tower)
            except (ValueError, ZeroDivisionError, TypeError) as e:
                self._fail(f"无效的参数 a/b: {e}")
            if not cfg.a:
                self._fail("a 必须非零")
            cfg.tower = tower

        if args.output:
            self.exporter.output_dir = args.output
        self.config = cfg

    def initialize(self):
        """打印运行信息"""
        cfg = self.config
        if self.args.quiet:
            return
        ReportPrinter.print_banner("inose-sections - 3-isogeny sections of Inose surfaces")
        if cfg.mode == 'named':
            print_info(f"实例: {cfg.example}")
        else:
            print_info(f"族参数: a = {cfg.a}, b = {cfg.b}")
        print_info(f"检查: {', '.join(cfg.checks)}")
        print_info(f"线程数: {cfg.max_workers}")

    def run(self, argv=None) -> int:
        """运行主程序，返回退出码"""
        self.parse_args(argv)
        self.initialize()

        report = run(self.config)

        if not self.args.quiet:
            ReportPrinter.print_summary(report)
            ReportPrinter.print_checks(report)
        self.exporter.export(report, self.config.outputs, self.args.json)
        ReportPrinter.print_verdict(report)
        return report.exit_code


def main(argv=None):
    """主函数"""
    try:
        code = InoseRunner().run(argv)
    except KeyboardInterrupt:
        print_error("\ninterrupted")
        sys.exit(EXIT_USAGE)
    except Exception as e:
        print_error(f"程序错误: {e}")
        sys.exit(EXIT_INTERNAL)
    sys.exit(code)


if __name__ == "__main__":
    main()
