import json
from fractions import Fraction

from main import VerificationReport
from mw_lattice import GramMatrix, KodairaFiber
from output import ReportExporter, format_matrix, latex_matrix, report_lines
from poly_ratfunc import Place

THIRDS = [[Fraction(4, 3), Fraction(2, 3)], [Fraction(2, 3), Fraction(4, 3)]]


def _report():
    report = VerificationReport('demo', 'family')
    report.surfaces['F^(1)'] = 'Y^2 = X^3 + s'
    report.fibers['F^(1)'] = [KodairaFiber(Place.infinity('s'), 'II*', v_disc=10)]
    report.grams['F^(2)'] = GramMatrix(THIRDS)
    report.determinants['F^(2)'] = Fraction(4, 3)
    report.checks['gram_F2'] = {'status': 'passed', 'detail': 'det = 4/3'}
    report.timings['gram_F2'] = 0.25
    return report


def test_format_matrix_factors_out_scale():
    assert format_matrix(THIRDS, 3) == ["(1/3) [ 4  2 ]", "      [ 2  4 ]"]
    assert format_matrix([[Fraction(1, 2)]], 3) == ["[ 1/2 ]"]
    assert format_matrix([[12, -3], [-3, 4]]) == ["[ 12  -3 ]", "[ -3   4 ]"]


def test_latex_matrix():
    entries = [[Fraction(4, 3), Fraction(-2, 3)], [Fraction(-2, 3), Fraction(4, 3)]]
    assert latex_matrix(entries, 3) == (
        "\\frac{1}{3}\\begin{pmatrix}\n  4 & -2 \\\\\n  -2 & 4\n\\end{pmatrix}"
    )
    assert latex_matrix([[Fraction(-1, 2)]]) == "\\begin{pmatrix}\n  -\\frac{1}{2}\n\\end{pmatrix}"


def test_report_lines_cover_each_part():
    lines = report_lines(_report())
    assert lines[0] == "inose-sections report: demo"
    assert "  F^(1): Y^2 = X^3 + s" in lines
    assert "Gram matrix of F^(2) (det = 4/3):" in lines
    assert "  (1/3) [ 4  2 ]" in lines
    assert any(line.startswith("  gram_F2") and "passed" in line for line in lines)


def test_export_text_and_latex(tmp_path):
    exporter = ReportExporter(str(tmp_path))
    paths = exporter.export(_report(), ['text', 'latex-matrices'])
    assert set(paths) == {'text', 'latex-matrices'}
    text = open(paths['text'], encoding='utf-8').read()
    assert "Checks:" in text
    tex = open(paths['latex-matrices'], encoding='utf-8').read()
    assert tex.startswith("% demo F^(2), det = 4/3")
    assert "\\frac{1}{3}\\begin{pmatrix}" in tex


def test_export_json_to_explicit_path(tmp_path):
    target = tmp_path / "nested" / "report.json"
    path = ReportExporter(str(tmp_path)).export_json(_report(), path=str(target))
    assert path == str(target)
    data = json.loads(target.read_text(encoding='utf-8'))
    assert data['label'] == 'demo'
    assert data['gram']['F^(2)']['entries'] == [['4/3', '2/3'], ['2/3', '4/3']]
    assert data['det'] == {'F^(2)': '4/3'}
    assert data['fibers']['F^(1)'][0]['type'] == 'II*'
    assert data['exit_code'] == 0
    assert 'timings' not in data
