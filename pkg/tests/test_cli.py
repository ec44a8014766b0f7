"""
Testes da linha de comando
"""
import json

import pytest

from nerve_forge.cli.commands import EXIT_ERROR, EXIT_NOT_FOUND, EXIT_OK, run
from nerve_forge.core.config import settings
from nerve_forge.models.combinatorics import Partition
from nerve_forge.services.configs import config_service
from nerve_forge.services.file_processor import file_processor
from nerve_forge.services.report_storage import report_storage


def _report(capsys):
    return json.loads(capsys.readouterr().out)


def _error(captured):
    """Último objeto JSON do stderr (linhas de log podem precedê-lo)"""
    err = captured.err
    start = err.rindex("\n{") + 1 if "\n{" in err else 0
    return json.loads(err[start:])


def test_construct_star(capsys):
    code = run(["construct", "star", "--random", "8", "--n", "4", "--seed", "3"])
    report = _report(capsys)
    assert code == EXIT_OK
    assert report["outcome"] == "found"
    assert report["verification"] == "PASS"
    assert report["n_parts"] == 4 and len(report["partition"]) == 8
    assert report_storage.get_stats().by_command == {"construct": 1}


def test_construct_caterpillar_writes_partition(tmp_path, capsys):
    out = tmp_path / "part.json"
    code = run(["construct", "caterpillar", "--random", "10", "--named", "path:4", "--seed", "1",
                "--out", str(out)])
    assert code == EXIT_OK
    assert file_processor.load_partition(out, size=10).n_parts == 4
    assert _report(capsys)["verification"] == "PASS"


def test_construct_cycle(capsys):
    code = run(["construct", "cycle", "--random", "20", "--n", "4", "--seed", "2"])
    assert code == EXIT_OK
    assert _report(capsys)["verification"] == "PASS"


def test_search_named_obstruction(capsys):
    code = run(["search", "--random", "11", "--named", "convex-obstruction", "--seed", "4"])
    report = _report(capsys)
    assert code == EXIT_NOT_FOUND
    assert report["outcome"] == "not_found"


def test_search_negative_exit_code(capsys):
    code = run(["search", "--builtin", "p4-blocker-8", "--named", "path:4"])
    report = _report(capsys)
    assert code == EXIT_NOT_FOUND
    assert report["outcome"] == "not_found"
    assert report["partition"] is None


def test_verify_mismatch(tmp_path, capsys):
    ps = config_service.random_points(6, 2, seed=1)
    points = file_processor.save_points(ps, tmp_path / "pts.json")
    partition = file_processor.save_partition(Partition(n_parts=3, assignment=(0, 0, 1, 1, 2, 2)),
                                              tmp_path / "p.json")
    code = run(["verify", "--points", str(points), "--partition", str(partition), "--named", "cycle:5"])
    report = _report(capsys)
    assert code == EXIT_NOT_FOUND
    assert report["verification"] == "FAIL"


def test_nerve_faces(tmp_path, capsys, nerve_face_points):
    ps, partition = nerve_face_points
    points = file_processor.save_points(ps, tmp_path / "pts.json")
    part = file_processor.save_partition(partition, tmp_path / "p.json")
    assert run(["nerve", "--points", str(points), "--partition", str(part)]) == EXIT_OK
    report = _report(capsys)
    assert report["details"]["faces"] == {"3": [[0, 1, 2]]}


def test_subset_convex(capsys):
    code = run(["subset", "convex", "--random", "8", "--mode", "convex-position", "--size", "8", "--seed", "4"])
    report = _report(capsys)
    assert code == EXIT_OK
    assert sorted(report["details"]["subset"]) == list(range(8))


def test_render(tmp_path, capsys, square):
    points = file_processor.save_points(square, tmp_path / "sq.json")
    part = file_processor.save_partition(Partition(n_parts=2, assignment=(0, 1, 0, 1)), tmp_path / "p.json")
    svg = tmp_path / "fig.svg"
    assert run(["render", "--points", str(points), "--partition", str(part), "--out", str(svg)]) == EXIT_OK
    assert svg.read_text().count("<circle") == 4


def test_generate_and_graphs(tmp_path, capsys):
    out = tmp_path / "gen.json"
    assert run(["generate", "--n", "7", "--dim", "3", "--seed", "9", "--out", str(out)]) == EXIT_OK
    assert len(file_processor.load_points(out)) == 7
    capsys.readouterr()
    assert run(["graphs", "--max-n", "7"]) == EXIT_OK
    assert _report(capsys)["details"]["trees"]["7"] == 11


def test_error_goes_to_stderr(capsys):
    code = run(["construct", "star", "--random", "8", "--seed", "3"])
    captured = capsys.readouterr()
    assert code == EXIT_ERROR
    assert captured.out == ""
    error = _error(captured)
    assert error["kind"] == "NerveForgeError"
    assert report_storage.get_stats().error_count == 1


def test_parse_error_detail(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "points": [[1, 2], [3]]}')
    assert run(["search", "--points", str(bad), "--named", "path:2"]) == EXIT_ERROR
    error = _error(capsys.readouterr())
    assert error["kind"] == "ParseError"
    assert error["detail"]["line"] == 1


def test_acceptance_subset(capsys):
    assert run(["acceptance", "--quick", "--only", "1,12"]) == EXIT_OK
    criteria = _report(capsys)["details"]["criteria"]
    assert [c["number"] for c in criteria] == [1, 12]
    assert all(c["passed"] for c in criteria)


def test_unknown_builtin_rejected_by_parser():
    with pytest.raises(SystemExit):
        run(["search", "--builtin", "nope", "--named", "path:4"])


def test_render_defaults_to_output_dir(tmp_path, capsys, square, monkeypatch):
    monkeypatch.setattr(settings, "output_dir", str(tmp_path / "out"))
    points = file_processor.save_points(square, tmp_path / "sq.json")
    part = file_processor.save_partition(Partition(n_parts=2, assignment=(0, 1, 0, 1)), tmp_path / "p.json")
    assert run(["render", "--points", str(points), "--partition", str(part)]) == EXIT_OK
    assert _report(capsys)["details"]["svg"] == str(tmp_path / "out" / "partition.svg")
    assert (tmp_path / "out" / "partition.svg").is_file()


def test_reports_subcommand(capsys):
    run(["construct", "star", "--random", "8", "--n", "4", "--seed", "3"])
    stored = _report(capsys)
    assert report_storage.get_report(stored["id"]) is not None

    assert run(["reports", "list"]) == EXIT_OK
    listed = _report(capsys)["details"]["reports"]
    assert [r["id"] for r in listed] == [stored["id"]]

    assert run(["reports", "stats"]) == EXIT_OK
    assert _report(capsys)["details"]["by_command"] == {"construct": 1}

    assert run(["reports", "show", "--id", stored["id"]]) == EXIT_OK
    assert _report(capsys)["details"]["report"]["partition"] == stored["partition"]
    assert run(["reports", "show", "--id", "missing"]) == EXIT_NOT_FOUND
    capsys.readouterr()

    assert run(["reports", "clear"]) == EXIT_OK
    assert _report(capsys)["details"]["removed"] == 1
    assert report_storage.get_stats().total_runs == 0


def test_acceptance_experiment(capsys):
    assert run(["acceptance", "--experiment", "non-extendable-7"]) == EXIT_OK
    experiment = _report(capsys)["details"]["experiment"]
    assert experiment["name"] == "non-extendable-7" and experiment["passed"]


def test_reports_errors_are_not_stored(capsys):
    assert run(["reports", "show"]) == EXIT_ERROR
    assert _error(capsys.readouterr())["kind"] == "NerveForgeError"
    assert report_storage.get_stats().total_runs == 0
