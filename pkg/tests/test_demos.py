import runpy
from pathlib import Path

import pytest

DEMOS = sorted((Path(__file__).parent.parent / "demos").glob("*.py"))


@pytest.mark.parametrize("script", DEMOS, ids=lambda p: p.name)
def test_demo_runs(script, monkeypatch, capsys):
    monkeypatch.setenv("FFBENCH_REPS", "3")
    runpy.run_path(str(script), run_name="__main__")
    assert capsys.readouterr().out
