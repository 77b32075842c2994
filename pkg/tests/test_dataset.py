import numpy as np
import pytest

from eedist.dataset import LabeledDataset, load_ucr, synthetic_strings, ucr_paths, write_ucr
from eedist.validation import ParseError


def test_comma_line(tmp_path):
    p = tmp_path / "X_TRAIN"
    p.write_text("1,0.5,0.25,-0.75\n")
    ds = load_ucr(p)
    assert ds.instances[0].label == 1
    assert ds.instances[0].series == (0.5, 0.25, -0.75)
    assert ds.name == "X" and ds.role == "train"


def test_tab_line_with_float_label(tmp_path):
    p = tmp_path / "X_TEST"
    p.write_text("2.0\t1.0\t2.0\n")
    ds = load_ucr(p)
    assert ds.instances[0].label == 2
    assert ds.instances[0].series == (1.0, 2.0)
    assert ds.role == "test"


def test_whitespace_format_and_blank_lines(tmp_path):
    p = tmp_path / "d"
    p.write_text("  1.0000000e+00  3.5 -1.25e-01\n\n -1   2 4\n")
    ds = load_ucr(p)
    assert [s.label for s in ds.instances] == [1, -1]
    assert ds.instances[0].series == (3.5, -0.125)


def test_empty_file(tmp_path):
    p = tmp_path / "empty"
    p.write_text("\n\n")
    with pytest.raises(ParseError, match="no instances"):
        load_ucr(p)


@pytest.mark.parametrize(
    "content, line",
    [("1,2,3\n1\n", 2), ("1,2,x\n", 1), ("a,1,2\n", 1), ("1,2\n1,nan,3\n", 2)],
)
def test_parse_errors_name_the_line(tmp_path, content, line):
    p = tmp_path / "bad"
    p.write_text(content)
    with pytest.raises(ParseError, match=f"line {line}") as info:
        load_ucr(p)
    assert info.value.line == line


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_ucr(tmp_path / "nope")


def test_delimiters_are_interchangeable(tmp_path):
    rows = [[1, 0.5, -2.0, 3.25], [2, 1e-3, 4.0, -0.5]]
    comma = tmp_path / "c"
    tab = tmp_path / "t"
    comma.write_text("\n".join(",".join(map(str, r)) for r in rows))
    tab.write_text("\n".join("\t".join(map(str, r)) for r in rows))
    assert load_ucr(comma, name="x") == load_ucr(tab, name="x")


def test_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    ds = LabeledDataset.from_arrays(rng.normal(size=(6, 9)), rng.integers(1, 4, 6), "rt", "train")
    p = tmp_path / "rt_TRAIN"
    write_ucr(ds, p)
    assert load_ucr(p) == ds
    assert p.read_text().splitlines()[0].count(",") == 9


def test_mixed_lengths_warn(tmp_path):
    p = tmp_path / "m"
    p.write_text("1,1,2,3\n2,1,2\n")
    with pytest.warns(UserWarning, match="mixes series lengths"):
        load_ucr(p)


def test_ucr_paths(tmp_path):
    d = tmp_path / "Coffee"
    d.mkdir()
    (d / "Coffee_TRAIN").write_text("1,1,2\n")
    (d / "Coffee_TEST.tsv").write_text("1\t1\t2\n")
    train, test = ucr_paths(d)
    assert train.name == "Coffee_TRAIN" and test.name == "Coffee_TEST.tsv"
    with pytest.raises(FileNotFoundError):
        ucr_paths(tmp_path)


def test_synthetic_strings():
    assert synthetic_strings(1, 0, 10, 4) == []
    a = synthetic_strings(7, 50, 12, 5)
    assert a == synthetic_strings(7, 50, 12, 5)
    assert a != synthetic_strings(8, 50, 12, 5)
    big = synthetic_strings(3, 1000, 64, 4)
    assert all(0 <= len(s) <= 64 and s.alphabet_size == 4 for s in big)
    assert all(0 <= x < 4 for s in big for x in s)
    assert {len(s) for s in big} >= {0, 64}
