import json

import pytest

from utils.finite_field import FieldError
from utils.codebook import CodebookError, build_codebook
from utils.codebook_io import (
    codebook_to_json,
    read_codebook,
    write_codebook,
    write_report_csv,
    write_report_json,
)
from utils.welch import CSV_HEADER, evaluate
from conftest import field


@pytest.fixture
def c1_file(tmp_path):
    cb = build_codebook(field(4), "C1", fixed_j=2)
    return cb, write_codebook(cb, str(tmp_path / "c1.json"))


def corrupt(path, update):
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    update(data)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f)


def test_round_trip_keeps_the_evaluation(c1_file):
    cb, path = c1_file
    loaded = read_codebook(path)
    assert loaded.construction == "C1"
    assert loaded.fixed_param == 2
    assert loaded.spec == cb.spec
    assert (loaded.entries == cb.entries).all()
    assert evaluate(loaded) == evaluate(cb)


def test_writes_are_byte_identical(tmp_path):
    spec = field(5)
    first = write_codebook(build_codebook(spec, "C2", fixed_b=3), str(tmp_path / "a.json"))
    second = write_codebook(build_codebook(spec, "C2", fixed_b=3), str(tmp_path / "b.json"))
    with open(first, "rb") as f1, open(second, "rb") as f2:
        assert f1.read() == f2.read()


def test_json_layout(c1_file):
    cb, _ = c1_file
    data = codebook_to_json(cb)
    assert (data["p"], data["m"], data["modulus"], data["g"]) == (2, 2, [1, 1, 1], cb.spec.g.encoding)
    assert (data["N"], data["K"], data["n_root"]) == (64, 12, 6)
    assert len(data["rows"]) == 64 and len(data["rows"][0]) == 12


def test_corrupted_exponent_is_a_violation(c1_file):
    _, path = c1_file

    def flip(data):
        data["rows"][5][3] = (data["rows"][5][3] + 1) % data["n_root"]

    corrupt(path, flip)
    report = evaluate(read_codebook(path))
    assert report.violations > 0
    assert not report.passed


@pytest.mark.parametrize("update", [
    lambda d: d.pop("rows"),
    lambda d: d.update(construction="C7"),
    lambda d: d.update(rows=d["rows"][:-1]),
    lambda d: d.update(N=10),
    lambda d: d.update(n_root=7),
    lambda d: d["rows"][0].__setitem__(0, 99),
    lambda d: d["rows"][0].__setitem__(0, "x"),
    lambda d: d.update(fixed_param="one"),
])
def test_malformed_files_are_rejected(c1_file, update):
    _, path = c1_file
    corrupt(path, update)
    with pytest.raises(CodebookError):
        read_codebook(path)


def test_bad_field_is_rejected(c1_file):
    _, path = c1_file
    corrupt(path, lambda d: d.update(modulus=[1, 0, 1]))
    with pytest.raises(FieldError):
        read_codebook(path)


def test_malformed_field_description_is_a_field_error(c1_file):
    _, path = c1_file
    corrupt(path, lambda d: d.update(p="two"))
    with pytest.raises(FieldError):
        read_codebook(path)


def test_not_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{rows: ", encoding="utf-8")
    with pytest.raises(CodebookError):
        read_codebook(str(path))


def test_report_files(tmp_path):
    reports = [evaluate(build_codebook(field(q), "C1")) for q in (3, 4)]
    json_path = write_report_json(reports[0], str(tmp_path / "out" / "report.json"))
    with open(json_path, encoding="utf-8") as f:
        assert json.load(f)["i_max"] == pytest.approx(0.5)
    csv_path = write_report_csv(reports, str(tmp_path / "report.csv"))
    with open(csv_path, encoding="utf-8") as f:
        lines = f.read().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[1].startswith("3,27,6,")
    assert len(lines) == 3
