'''
testing the quower command line
'''
import json

import pytest

from quower.board import BoardVariant
from quower.cli import EXIT_INVALID, EXIT_OK, EXIT_TIMEOUT, EXIT_USAGE, board_table, field_table, main
from quower.constructions import best_construction, cover_punctured_0mod4
from quower.cover_doc import board_document, dumps, loads, read_document, short_document
from quower.field import FieldSpec
from quower.lifting import PsiMap, lift
from quower.log_cfg import log_config


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_xi_solve(capsys):
    code, out, _ = run(capsys, "xi", "--n", "7")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "xi(7) = 5"
    assert lines[1].startswith("centers: (")
    assert lines[1].count("(") == 5
    assert lines[2] == "verified: yes"


def test_xi_construct_and_bounds(capsys):
    code, out, _ = run(capsys, "xi", "--n", "12", "--variant", "punctured", "--method", "construct")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "xi_D(12) <= 6"
    code, out, _ = run(capsys, "xi", "--n", "9", "--method", "bounds")
    assert code == EXIT_OK
    assert out.strip() == "xi(9) in [5, 6]"
    _, out, _ = run(capsys, "xi", "--n", "10", "--method", "bounds")
    assert out.strip() == "xi(10) = 5"


def test_xi_single_cell_boards(capsys):
    _, out, _ = run(capsys, "xi", "--n", "1")
    assert out.splitlines()[:2] == ["xi(1) = 1", "centers: (1,1)"]
    _, out, _ = run(capsys, "xi", "--n", "1", "--variant", "punctured")
    assert out.splitlines()[0] == "xi_D(1) = 0"
    assert out.splitlines()[2] == "verified: yes"


def test_xi_ascii(capsys):
    code, out, _ = run(capsys, "xi", "--n", "3", "--ascii")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "xi(3) = 2"
    assert lines[-1] == "  1 2 3"
    assert sum(line.count("Q") for line in lines[3:]) == 2


def test_xi_timeout(capsys):
    code, out, err = run(capsys, "--time-limit", "0", "--no-symmetry", "xi", "--n", "13")
    assert code == EXIT_TIMEOUT
    assert out.startswith("xi(13) <= ")
    assert "time limit reached" in err


def test_c_solve_and_lift(capsys):
    code, out, _ = run(capsys, "c", "--q", "5")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "c(5) = 4"
    code, out, _ = run(capsys, "c", "--q", "11", "--method", "lift")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "c(11) <= 7"
    assert lines[1].startswith("board cover of D_10: ")
    assert lines[-1] == "verified: yes"


def test_c_json(capsys):
    code, out, _ = run(capsys, "c", "--q", "7", "--method", "lift", "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["kind"] == "short"
    assert doc["size"] == 5
    assert doc["verified"] is True


def test_bad_arguments(capsys):
    code, _, err = run(capsys, "c", "--q", "6")
    assert code == EXIT_USAGE
    assert err.startswith("error: ")
    with pytest.raises(SystemExit) as info:
        main(["xi"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0


def test_lift_verify_extract_pipeline(capsys, tmp_path):
    code, out, _ = run(capsys, "xi", "--n", "6", "--variant", "punctured", "--method", "construct", "--json")
    assert code == EXIT_OK
    board_path = tmp_path / "board.json"
    board_path.write_text(out, encoding="utf-8")
    short_path = tmp_path / "short.json"
    back_path = tmp_path / "back.json"

    code, _, err = run(capsys, "lift", "--q", "7", "--in", str(board_path), "--out", str(short_path))
    assert code == EXIT_OK
    assert "to 5 balls" in err
    code, out, _ = run(capsys, "verify", "--in", str(short_path))
    assert code == EXIT_OK
    assert out.strip() == "valid short cover of size 5"

    code, _, _ = run(capsys, "extract", "--q", "7", "--in", str(short_path), "--out", str(back_path))
    assert code == EXIT_OK
    back = read_document(back_path)
    assert back.cover.variant is BoardVariant.PUNCTURED
    assert back.cover.centers == read_document(board_path).cover.centers

    code, _, _ = run(capsys, "lift", "--q", "4", "--in", str(board_path))
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "lift", "--q", "7", "--in", str(short_path))
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "extract", "--q", "8", "--in", str(short_path))
    assert code == EXIT_USAGE


def test_verify_reports_uncovered_cells(capsys, tmp_path):
    doc = board_document(best_construction(7))
    doc["centers"] = doc["centers"][:2]
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, _ = run(capsys, "verify", "--in", str(path))
    assert code == EXIT_INVALID
    assert "declared size 5 but 2 centers" in out
    assert " uncovered: (" in out


def test_verify_rejects_malformed_documents(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{\"kind\": \"board\",", encoding="utf-8")
    code, _, err = run(capsys, "verify", "--in", str(path))
    assert code == EXIT_USAGE
    assert "line 1" in err


def test_lp_command(capsys, tmp_path):
    code, out, _ = run(capsys, "lp", "--n", "3")
    assert code == EXIT_OK
    assert out.count(">= 1") == 9
    path = tmp_path / "pg2.lp"
    code, out, _ = run(capsys, "lp", "--q", "2", "--out", str(path))
    assert code == EXIT_OK
    assert out == ""
    assert path.read_text(encoding="utf-8").count(">= 1") == 7
    code, _, _ = run(capsys, "lp", "--n", "3", "--q", "2")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "lp")
    assert code == EXIT_USAGE


def test_small_tables():
    boards = board_table(7)
    assert list(boards["n"]) == [3, 4, 5, 6, 7]
    assert list(boards["xi"]) == ["2", "3", "3", "3", "5"]
    assert list(boards["xi_D"]) == ["2", "2", "3", "3", "4"]
    assert list(boards["xi source"]) == ["construction"] * 4 + ["solver"]
    fields = field_table(8)
    assert list(fields["q"]) == [2, 3, 4, 5, 7, 8]
    assert list(fields["c"]) == ["1", "3", "3", "4", "5", "6"]
    assert fields["c source"].iloc[-1] == "solver"


def test_table_command(capsys):
    code, out, _ = run(capsys, "table", "--max-n", "5", "--max-q", "5")
    assert code == EXIT_OK
    assert "xi_D source" in out
    assert "construction" in out


def test_log_file(capsys, tmp_path):
    path = tmp_path / "quower.log"
    code, _, _ = run(capsys, "--log-file", str(path), "xi", "--n", "5")
    assert code == EXIT_OK
    assert log_config().enabled
    assert "optimum 3" in path.read_text(encoding="utf-8")


@pytest.mark.slow
def test_full_table(capsys):
    code, out, _ = run(capsys, "table")
    assert code == EXIT_OK
    assert "bound" not in out


def test_json_board_document_is_canonical(capsys):
    _, out, _ = run(capsys, "xi", "--n", "10", "--method", "construct", "--json")
    assert out == dumps(board_document(best_construction(10)))


def test_extract_reads_the_field_of_the_document(capsys, tmp_path):
    spec = FieldSpec(3, 2, (2, 1, 1))
    g = spec.generator ** 3
    board = cover_punctured_0mod4(8)
    path = tmp_path / "short.json"
    path.write_text(dumps(short_document(lift(board, 9, PsiMap(spec, g)), generator=g)), encoding="utf-8")
    code, out, _ = run(capsys, "verify", "--in", str(path))
    assert code == EXIT_OK
    code, out, _ = run(capsys, "extract", "--q", "9", "--in", str(path))
    assert code == EXIT_OK
    assert loads(out).cover.centers == board.centers
