import json
import subprocess
import sys

import pytest

from esnd import export
from esnd.cli import EXIT_COMPUTATION, EXIT_OK, EXIT_USAGE, main, positive_int, run
from esnd.density import density
from esnd.sequences import SSequence

SQUAREFREE = 0.6079271018540267


def usage_status(argv):
    with pytest.raises(SystemExit) as info:
        run(argv)
    return info.value.code


def test_density_text():
    status, text = run(["density", "--seq", "finite:1"])
    assert status == EXIT_OK
    assert text.startswith("finite:1  h = 0.60792710")
    lo, hi = text.split("[")[1].split("]")[0].split(", ")
    assert float(lo) <= SQUAREFREE <= float(hi)


def test_density_json_multiple():
    status, text = run(["density", "--seq", "finite:1", "--seq", "odd", "--format", "json"])
    rows = json.loads(text)
    assert status == EXIT_OK and [r["sequence"] for r in rows] == ["finite:1", "named:odd"]
    assert rows[0]["lo"] <= SQUAREFREE <= rows[0]["hi"]
    assert rows[0]["width"] <= 1e-8


def test_density_csv_round_trip():
    _, text = run(["density", "--seq", "finite:1,2", "-P", "1e5", "--width", "1", "--format", "csv"])
    (row,) = export.read_rows_csv(text)
    b = density(SSequence.finite([1, 2]), 10**5)
    assert row["prime_bound"] == 10**5
    assert (row["lo"], row["hi"], row["point"]) == (b.lo, b.hi, b.point)


def test_scientific_notation_flags():
    assert positive_int("1e7") == 10**7
    assert positive_int("250") == 250
    for bad in ("1.5", "0", "-3", "abc", "1e-3"):
        with pytest.raises(Exception):
            positive_int(bad)


@pytest.mark.parametrize(
    "argv",
    [
        ["density", "--seq", "finite:2,3"],
        ["density", "--seq", "finite:1", "-P", "1"],
        ["density", "--seq", "finite:1", "-I", "1"],
        ["density", "--seq", "finite:1", "--width", "0"],
        ["count", "--seq", "finite:1", "--limit", "2.5"],
        ["gaps", "--max-term", "1"],
        ["gaps", "--max-term", "13"],
        ["measure", "--max-term", "20"],
        ["verify", "nonsense"],
        ["bogus"],
    ],
)
def test_usage_errors(argv):
    assert usage_status(argv) == EXIT_USAGE


def test_computation_error_status():
    status, text = run(["count", "--seq", "finite:1", "--limit", "2e9"])
    assert status == EXIT_COMPUTATION and text.startswith("error:")


def test_count_json():
    status, text = run(["count", "--seq", "finite:1", "--limit", "1e4", "--format", "json"])
    report = export.read_count_json(text)
    assert status == EXIT_OK and report.count == 6083 and report.x == 10**4
    assert report.ratio < 1


def test_enumerate_outputs():
    _, text = run(["enumerate", "--seq", "odd", "--limit", "16"])
    assert text.split() == ["1", "2", "3", "5", "6", "7", "8", "10", "11", "13", "14", "15"]
    _, js = run(["enumerate", "--seq", "odd", "--limit", "16", "--format", "json"])
    assert json.loads(js)["members"][-1] == 15


def test_gaps_json_and_csv_round_trip():
    _, js = run(["gaps", "--max-term", "3", "--format", "json"])
    obj = json.loads(js)
    assert obj["disjointness"] == "disjoint" and obj["bound"] == 3
    from_json = export.read_gaps_json(js)
    _, csv_text = run(["gaps", "--max-term", "3", "--format", "csv"])
    from_csv = export.read_gaps_csv(csv_text)
    assert from_json == from_csv and len(from_csv) == 3
    berend = next(r for r in from_csv if r.s1 == SSequence.finite([1, 2]))
    assert berend.s2 == SSequence.cofinite([1], 3)
    assert berend.left_hi < berend.right_lo


def test_gaps_csv_header_checked():
    with pytest.raises(ValueError):
        export.read_gaps_csv("a,b\n1,2\n")


def test_gaps_text():
    status, text = run(["gaps", "--max-term", "2"])
    assert status == EXIT_OK
    assert text.splitlines()[0].startswith("1 gaps with terms <= 2; disjoint")
    assert "S1=finite:1,2" in text and "S2=cofinite:1;tail=3" in text


def test_measure_labels_open_question():
    status, text = run(["measure", "--max-term", "4"])
    assert status == EXIT_OK
    assert "conjecture: OPEN." in text
    _, js = run(["measure", "--max-term", "4", "--format", "json"])
    obj = json.loads(js)
    assert obj["conjecture"] == "open"
    assert [m["bound"] for m in obj["measures"]] == [2, 3, 4]


def test_verify_text_and_status():
    status, text = run(["verify", "oeis"])
    assert status == EXIT_OK and text.startswith("PASS oeis: 4 checks")


def test_out_file(tmp_path):
    target = tmp_path / "h.json"
    status, text = run(["density", "--seq", "finite:1", "--format", "json", "--out", str(target)])
    assert status == EXIT_OK and text == ""
    assert json.loads(target.read_text())[0]["sequence"] == "finite:1"


def test_main_writes_stdout(capsys):
    assert main(["enumerate", "--seq", "finite:1", "--limit", "10"]) == EXIT_OK
    assert capsys.readouterr().out.split() == ["1", "2", "3", "5", "6", "7", "10"]
    assert main(["count", "--seq", "finite:1", "--limit", "2e9"]) == EXIT_COMPUTATION
    assert capsys.readouterr().err.startswith("error:")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "esnd", "density", "--seq", "finite:1,2", "-P", "1000", "--width", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("finite:1,2  h = 0.83190")


def test_bracket_text_rounds_outward():
    assert export.bracket_text(0.12345678901234, 0.12345678901236, 6) == "[0.123456, 0.123457]"
    assert export.sig(1234567.0, 3) == "1230000"
    assert export.sig(0.0) == "0"
