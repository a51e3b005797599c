from utils import ProgressBar, Timer, configure_console, paint, seeded_rng, Fore


def test_progress_bar_counts_and_clamps(capsys):
    configure_console(quiet=False, color=False)
    with ProgressBar(3, "Heights on F^(1)") as bar:
        bar.update()
        bar.update(5)
    assert bar.done == 3
    out = capsys.readouterr().out
    assert "Heights on F^(1):" in out
    assert "3/3 pairs" in out


def test_quiet_progress_bar_prints_nothing(capsys):
    with ProgressBar(2) as bar:
        bar.update(2)
    assert capsys.readouterr().out == ""


def test_timer_accumulates_per_label():
    timings = {}
    for _ in range(2):
        with Timer(timings, 'conic'):
            pass
    assert set(timings) == {'conic'}
    assert timings['conic'] >= 0


def test_paint_respects_color_switch():
    configure_console(color=False)
    assert paint("IV*", Fore.YELLOW) == "IV*"


def test_seeded_rng_is_reproducible():
    assert seeded_rng(7).randint(1, 10 ** 9) == seeded_rng(7).randint(1, 10 ** 9)
