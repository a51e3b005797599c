#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
inose-sections - Inose 曲面上 3-同源截面与 Mordell-Weil 格
"""

__version__ = "1.0.0"
__description__ = "Inose 曲面上的 3-同源截面与 Mordell-Weil 格"

from .main import InoseRunner, RunConfig, VerificationReport, run, main
from .isogeny import build_family, verify_isogeny, two_torsion
from .inose_construct import build_surface, build_weier_f6, build_psi, verify_psi
from .section_solver import section_F1, section_F2, sections_Rij
from .mw_lattice import classify_fibers, self_height, height_pair, gram_and_det
from .named_examples import build_example
from .output import ReportExporter, ReportPrinter
from .utils import ProgressBar

__all__ = [
    'InoseRunner',
    'RunConfig',
    'VerificationReport',
    'run',
    'main',
    'build_family',
    'verify_isogeny',
    'two_torsion',
    'build_surface',
    'build_weier_f6',
    'build_psi',
    'verify_psi',
    'section_F1',
    'section_F2',
    'sections_Rij',
    'classify_fibers',
    'self_height',
    'height_pair',
    'gram_and_det',
    'build_example',
    'ReportExporter',
    'ReportPrinter',
    'ProgressBar',
]
