import json
from fractions import Fraction

import pytest

import config
import main as cli
from exact_arith import QQ, NFElement
from main import InoseRunner, RunConfig, VerificationReport, run, _parse_scalar


def _family(checks, **kwargs):
    return RunConfig(mode='family', a=Fraction(1), b=Fraction(1), checks=checks,
                     show_progress=False, **kwargs)


def test_label_is_filesystem_safe():
    cfg = RunConfig(mode='family', a=Fraction(1), b=Fraction(-1, 3))
    assert cfg.label == "family_a1_b-1_3"
    assert RunConfig(mode='named', example='x303').label == 'x303'


def test_parse_scalar():
    assert _parse_scalar("3/2", QQ) == Fraction(3, 2)
    k = QQ.extend('r3', [-3, 0, 1])
    value = _parse_scalar('[18, "1/2"]', k)
    assert isinstance(value, NFElement)
    assert value == 18 + k.gen('r3') / 2


@pytest.mark.parametrize("argv", [
    [],
    ['named'],
    ['named', 'x999'],
    ['family'],
    ['family', '--a', '0', '--b', '1'],
    ['family', '--a', 'abc', '--b', '1'],
    ['named', 'x333', '--a', '1'],
    ['named', 'x333', '--checks', 'nonsense'],
    ['named', 'x333', '--outputs', 'pdf'],
    ['named', 'x333', '--threads', '0'],
    ['named', 'x333', 'extra'],
    ['named', 'x333', '--threads', 'many'],
    ['--mode', 'other'],
])
def test_usage_errors_exit_with_one(argv):
    with pytest.raises(SystemExit) as excinfo:
        InoseRunner().parse_args(argv + ['--quiet'])
    assert excinfo.value.code == 1


def test_positional_and_flag_forms_agree():
    a = InoseRunner()
    a.parse_args(['named', 'x323', '--quiet'])
    b = InoseRunner()
    b.parse_args(['--mode', 'named', '--example', 'x323', '--quiet'])
    assert a.config.example == b.config.example == 'x323'
    assert a.config.checks == list(config.CHECK_NAMES)


def test_tower_option(tmp_path):
    tower = QQ.extend('r3', [-3, 0, 1])
    path = tmp_path / "tower.json"
    path.write_text(json.dumps(tower.to_json()), encoding='utf-8')
    runner = InoseRunner()
    runner.parse_args(['family', '--tower', str(path), '--a', '[18, 9]', '--b', '["1/3", "-1/3"]', '--quiet'])
    r3 = tower.gen('r3')
    assert runner.config.tower == tower
    assert runner.config.a == 18 + 9 * r3
    assert runner.config.b == (1 - r3) / 3


def test_cheap_checks_pass():
    report = run(_family(['isogeny', 'psi_identity', 'weier_f6', 'closed_form_P2']))
    assert report.exit_code == 0
    assert [r['status'] for r in report.checks.values()] == ['passed'] * 4
    assert set(report.surfaces) == {'F^(1)', 'F^(2)', 'F^(6)'}
    assert report.sections[0]['name'] == 'P2'


def test_checks_without_data_are_skipped():
    report = run(_family(['printed_F1', 'printed_sections']))
    assert {r['status'] for r in report.checks.values()} == {'skipped'}
    assert report.exit_code == 0


def test_run_takes_worker_count_from_its_config():
    before = dict(config.RUN_CONFIG)
    report = run(_family(['isogeny', 'psi_specialization'], max_workers=1))
    assert report.checks['psi_specialization']['status'] == 'passed'
    assert config.RUN_CONFIG == before


@pytest.mark.slow
def test_generic_lattice_identity_passes():
    report = run(_family(['lattice_identity']))
    assert report.checks['lattice_identity']['status'] == 'passed'
    assert report.checks['lattice_identity']['detail'] == "det F^(2) = 16/9 * 3"


def test_failed_check_reports_anchor(monkeypatch):
    monkeypatch.setitem(config.EXPECTED['generic'], 'height_P1', 7)
    report = run(_family(['heights']))
    result = report.checks['heights']
    assert result['status'] == 'failed'
    assert result['anchor'] == 'height of P^(1)'
    assert report.exit_code == 2


def test_exit_code_priorities():
    report = VerificationReport('demo', 'family')
    report.checks = {'a': {'status': 'passed'}, 'b': {'status': 'skipped'}}
    assert report.exit_code == 0
    report.checks['c'] = {'status': 'failed'}
    assert report.exit_code == 2
    report.checks['d'] = {'status': 'error'}
    assert report.exit_code == 3


def test_json_report_is_reproducible(tmp_path):
    paths = [tmp_path / "first.json", tmp_path / "second.json"]
    for path in paths:
        code = InoseRunner().run(['family', '--a', '1', '--b', '1', '--checks', 'isogeny,weier_f6',
                                  '--outputs', 'json', '--json', str(path), '-o', str(tmp_path),
                                  '--quiet', '--no-progress'])
        assert code == 0
    first, second = (p.read_bytes() for p in paths)
    assert first == second
    data = json.loads(first)
    assert data['exit_code'] == 0
    assert data['checks']['isogeny']['status'] == 'passed'
    assert 'timings' not in data


def test_main_maps_interrupt_and_crash(monkeypatch):
    def interrupted(self, argv=None):
        raise KeyboardInterrupt

    def crashed(self, argv=None):
        raise RuntimeError("boom")

    monkeypatch.setattr(cli.InoseRunner, 'run', interrupted)
    with pytest.raises(SystemExit) as excinfo:
        cli.main([])
    assert excinfo.value.code == 1
    monkeypatch.setattr(cli.InoseRunner, 'run', crashed)
    with pytest.raises(SystemExit) as excinfo:
        cli.main([])
    assert excinfo.value.code == 3
