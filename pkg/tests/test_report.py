import pytest
from hypothesis import given
from hypothesis import strategies as st

from ffbench.analysis import SpeedupRecord, build_speedup_records
from ffbench.bench import BenchmarkRow
from ffbench.errors import CsvSchemaError, DimensionMismatchError, EmptyInputError, InvalidCountError
from ffbench.fixtures import PAPER
from ffbench.report import (
    RECORD_HEADER,
    ROW_HEADER,
    compare_with_fixture,
    emit_rows,
    fmt_ratio,
    parse_records,
    parse_rows,
)


def esp32_records():
    return build_speedup_records(PAPER.serial_rows(), PAPER.parallel_rows())


def test_single_row_csv():
    text = emit_rows([BenchmarkRow(50, 20, 1000, 1, 383.0)], "csv")
    assert text == "no,input,hidden,operations,workers,time_us\n1,50,20,1000,1,383.0\n"


def test_headers_match_schema():
    assert emit_rows(PAPER.serial_rows()).splitlines()[0] == ",".join(ROW_HEADER)
    assert emit_rows(esp32_records()).splitlines()[0] == ",".join(RECORD_HEADER)
    assert ROW_HEADER == ("no", "input", "hidden", "operations", "workers", "time_us")
    assert RECORD_HEADER == ("operations", "t_serial_us", "t_parallel_us", "ratio", "p")


def test_csv_uses_lf_only():
    assert "\r" not in emit_rows(esp32_records(), "csv")


def test_markdown_ratio_column():
    md = emit_rows(esp32_records(), "markdown").splitlines()
    header = [c.strip() for c in md[0].strip("|").split("|")]
    col = header.index("Ratio")
    ratios = [line.strip("|").split("|")[col].strip() for line in md[2:]]
    assert ratios[0] == "1.51" and ratios[-1] == "1.92"
    assert len(ratios) == 10


def test_markdown_single_row():
    md = emit_rows([BenchmarkRow.make(50, 20, 2, 6.0)], "markdown").splitlines()
    assert len(md) == 3
    assert md[2].split("|")[-2].strip() == "6.0"


def test_ratio_formatting_is_half_even_on_stored_value():
    assert fmt_ratio(0.125) == "0.12"
    assert fmt_ratio(0.375) == "0.38"
    assert fmt_ratio(1.8995) == "1.90"


def test_emit_does_not_alter_values():
    records = esp32_records()
    before = [r.ratio for r in records]
    emit_rows(records, "csv")
    emit_rows(records, "markdown")
    assert [r.ratio for r in records] == before


def test_empty_input():
    with pytest.raises(EmptyInputError):
        emit_rows([], "csv")


def test_mixed_input_rejected():
    with pytest.raises(TypeError):
        emit_rows([PAPER.serial_rows()[0], esp32_records()[0]])


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_rows(PAPER.serial_rows(), "html")


def test_parse_rejects_wrong_header():
    with pytest.raises(CsvSchemaError):
        parse_rows("a,b,c\n1,2,3\n")
    with pytest.raises(CsvSchemaError):
        parse_rows(",".join(ROW_HEADER) + "\n")
    with pytest.raises(CsvSchemaError):
        parse_rows(",".join(ROW_HEADER) + "\n1,50,x,1000,1,3.0\n")


def test_records_round_trip_at_display_precision():
    text = emit_rows(esp32_records())
    parsed = parse_records(text)
    assert emit_rows(parsed) == text
    assert [r.ratio for r in parsed][:2] == [1.51, 1.68]


rows_strategy = st.lists(
    st.builds(
        BenchmarkRow.make,
        st.integers(1, 1000),
        st.integers(1, 1000),
        st.integers(1, 64),
        st.floats(0, 1e7, allow_nan=False),
    ),
    min_size=1,
    max_size=30,
)


@given(rows_strategy)
def test_rows_emit_parse_emit_stable(rows):
    text = emit_rows(rows, "csv")
    parsed = parse_rows(text)
    assert emit_rows(parsed, "csv") == text
    for orig, back in zip(rows, parsed):
        assert (orig.input_count, orig.hidden_count, orig.operations, orig.worker_count) == (
            back.input_count, back.hidden_count, back.operations, back.worker_count)
        assert back.elapsed_micros == float(f"{orig.elapsed_micros:.1f}")


@given(st.lists(st.builds(BenchmarkRow.make, st.integers(1, 500), st.integers(1, 500),
                          st.integers(1, 8), st.integers(0, 10**6).map(lambda k: k / 10)),
                min_size=1, max_size=20))
def test_one_decimal_rows_parse_back_equal(rows):
    parsed = parse_rows(emit_rows(rows))
    assert [(r.operations, r.worker_count, r.elapsed_micros) for r in parsed] == [
        (r.operations, r.worker_count, r.elapsed_micros) for r in rows]


record_strategy = st.builds(
    SpeedupRecord,
    st.integers(1, 10**6),
    st.floats(0.1, 1e6),
    st.floats(0.1, 1e6),
    st.floats(0, 10),
    st.floats(0, 1),
)


@given(st.lists(record_strategy, min_size=1, max_size=20))
def test_records_emit_parse_emit_stable(records):
    text = emit_rows(records)
    assert emit_rows(parse_records(text)) == text


def test_compare_table_three_passes():
    report = compare_with_fixture([r.ratio for r in esp32_records()], PAPER.expected_ratios, 0.01)
    assert report.passed
    assert report.pass_count == 10


def test_compare_identical():
    assert compare_with_fixture([1.0], [1.0], 1e-12).passed


def test_compare_failure_difference():
    report = compare_with_fixture([1.51], [1.60], 0.01)
    assert not report.passed
    assert report.entries[0].difference == pytest.approx(0.09)
    assert "FAIL" in report.render()


def test_compare_validates():
    with pytest.raises(DimensionMismatchError):
        compare_with_fixture([1, 2], [1], 0.01)
    with pytest.raises(InvalidCountError):
        compare_with_fixture([1], [1], 0)


def test_overall_pass_is_conjunction():
    report = compare_with_fixture([1.0, 2.0], [1.0, 2.5], 0.1)
    assert [e.passed for e in report.entries] == [True, False]
    assert report.passed is False
