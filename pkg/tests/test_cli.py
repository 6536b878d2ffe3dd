import json

import pytest

from src import main as cli
from src.utils.dump_manager import load_potentials, load_triangulations


@pytest.fixture(autouse=True)
def log_file(tmp_path, monkeypatch):
    monkeypatch.setattr(cli, "LOG_FILE", str(tmp_path / "optlim.log"))


def test_fixtures_listing(capsys):
    assert cli.main(["fixtures"]) == 0
    names = capsys.readouterr().out.split()
    assert "4_1" in names
    assert "5_2_kashaev" not in names


def test_missing_source_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        cli.main(["compute"])
    assert info.value.code == 2


def test_missing_pd_file(tmp_path):
    assert cli.main(["compute", "--pd", str(tmp_path / "nothing.pd")]) == 2


def test_malformed_pd_file(tmp_path):
    path = tmp_path / "bad.pd"
    path.write_text("X(1,2,3)\n")
    assert cli.main(["compute", "--pd", str(path)]) == 2


def test_trefoil_exit_code():
    assert cli.main(["compute", "--knot", "3_1", "--seeds", "5"]) == 3


def test_compute_writes_report_and_dumps(tmp_path):
    report = tmp_path / "report.json"
    potential = tmp_path / "potential.json"
    triangulation = tmp_path / "triangulation.json"
    code = cli.main(["compute", "--knot", "4_1", "--seeds", "40", "--report", str(report),
                     "--dump-potential", str(potential), "--dump-triangulation", str(triangulation)])
    assert code == 0
    data = json.loads(report.read_text())
    assert data['vol'] == pytest.approx(2.029883212819307, abs=1e-6)
    assert 'timings' not in data
    assert set(load_potentials(str(potential))) == {'V', 'W'}
    assert len(load_triangulations(str(triangulation))['thurston'].tetrahedra) == 2


def test_compute_to_stdout(capsys):
    assert cli.main(["compute", "--knot", "4_1", "--seeds", "40", "--open-side", "2", "--timings"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data['split_side'] == 2
    assert 'timings' in data


@pytest.mark.parametrize("suite", ["numerics", "moves"])
def test_verify(suite, tmp_path):
    report = tmp_path / "verify.json"
    assert cli.main(["verify", "--suite", suite, "--samples", "30", "--report", str(report)]) == 0
    data = json.loads(report.read_text())
    assert data['suite'] == suite
    assert data['passed']


def test_unknown_suite_rejected():
    with pytest.raises(SystemExit):
        cli.main(["verify", "--suite", "everything"])
