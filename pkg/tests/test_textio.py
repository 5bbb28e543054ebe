import io

import numpy as np
import pytest

from mwlith import DataFormatError, DetectorGrid, IntensityPattern, Mask, forward
from mwlith.textio import (
    read_mask_lines,
    read_pattern_text,
    read_targets_jsonl,
    read_trace_text,
    write_mask_lines,
    write_pattern_text,
    write_targets_jsonl,
    write_trace_text,
)


@pytest.fixture(scope="module")
def sample_pattern(small_geometry, grid, small_matter_table):
    mask = Mask.from_string("0101111101100000")
    return forward(mask, small_geometry, grid, "matter", table=small_matter_table)


class TestPatternText:
    def test_round_trip_is_bitwise(self, sample_pattern):
        sink = io.StringIO()
        write_pattern_text(sink, sample_pattern)
        back = read_pattern_text(io.StringIO(sink.getvalue()))
        assert back.normalization == sample_pattern.normalization
        assert back.grid.same_as(sample_pattern.grid)
        assert np.array_equal(back.values, sample_pattern.values)

    def test_rewriting_is_byte_identical(self, sample_pattern):
        first = io.StringIO()
        write_pattern_text(first, sample_pattern)
        back = read_pattern_text(io.StringIO(first.getvalue()))
        second = io.StringIO()
        write_pattern_text(second, back)
        assert first.getvalue() == second.getvalue()

    def test_missing_header_rejected(self, sample_pattern):
        sink = io.StringIO()
        write_pattern_text(sink, sample_pattern)
        body = "\n".join(line for line in sink.getvalue().splitlines()
                         if not line.startswith("# n_points"))
        with pytest.raises(DataFormatError, match="n_points"):
            read_pattern_text(io.StringIO(body))

    def test_row_count_mismatch_rejected(self, sample_pattern):
        sink = io.StringIO()
        write_pattern_text(sink, sample_pattern)
        truncated = "\n".join(sink.getvalue().splitlines()[:-3])
        with pytest.raises(DataFormatError, match="rows"):
            read_pattern_text(io.StringIO(truncated))

    def test_tampered_position_rejected(self, sample_pattern):
        sink = io.StringIO()
        write_pattern_text(sink, sample_pattern)
        lines = sink.getvalue().splitlines()
        fields = lines[5].split()
        lines[5] = f"{float(fields[0]) * 1.001!r} {fields[1]}"
        with pytest.raises(DataFormatError, match="positions"):
            read_pattern_text(io.StringIO("\n".join(lines)))

    def test_bad_column_count_rejected(self):
        with pytest.raises(DataFormatError, match="two columns"):
            read_pattern_text(io.StringIO("1.0 2.0 3.0\n"))


class TestTraceText:
    def test_round_trip(self):
        best = np.array([1.0, 2.5, 2.5, 7.75e8])
        mean = np.array([0.5, 1.25, 2.0, 3.5e8])
        sink = io.StringIO()
        write_trace_text(sink, best, mean)
        got_best, got_mean = read_trace_text(io.StringIO(sink.getvalue()))
        assert np.array_equal(got_best, best)
        assert np.array_equal(got_mean, mean)

    def test_out_of_order_generations_rejected(self):
        text = "0 1.0 0.5\n2 2.0 1.0\n"
        with pytest.raises(DataFormatError, match="out of order"):
            read_trace_text(io.StringIO(text))

    def test_column_count_enforced(self):
        with pytest.raises(DataFormatError, match="three columns"):
            read_trace_text(io.StringIO("0 1.0\n"))


class TestMaskLines:
    def test_round_trip(self):
        masks = [Mask.from_string("0101"), Mask.from_string("1110")]
        sink = io.StringIO()
        write_mask_lines(sink, masks)
        assert read_mask_lines(io.StringIO(sink.getvalue())) == masks

    def test_bad_character_reports_line(self):
        with pytest.raises(DataFormatError, match="line 2"):
            read_mask_lines(io.StringIO("0101\n01a1\n"))

    def test_length_check(self):
        with pytest.raises(DataFormatError, match="expected 8"):
            read_mask_lines(io.StringIO("0101\n"), n_sections=8)

    def test_comments_and_blanks_skipped(self):
        text = "# header\n\n0101\n"
        assert read_mask_lines(io.StringIO(text)) == [Mask.from_string("0101")]


class TestTargetsJsonl:
    def test_round_trip(self, small_geometry, grid, small_matter_table):
        from mwlith import bench_targets

        targets = bench_targets(small_matter_table, seed=9, count=3)
        sink = io.StringIO()
        write_targets_jsonl(sink, targets)
        back = read_targets_jsonl(io.StringIO(sink.getvalue()),
                                  small_geometry, grid)
        assert len(back) == 3
        for (m1, p1), (m2, p2) in zip(targets, back):
            assert m1 == m2
            assert np.array_equal(p1.values, p2.values)
            assert p2.normalization == "peak-one"

    def test_malformed_json_reports_line(self, small_geometry, grid):
        with pytest.raises(DataFormatError, match="line 1"):
            read_targets_jsonl(io.StringIO("{not json}\n"), small_geometry, grid)

    def test_missing_fields_rejected(self, small_geometry, grid):
        with pytest.raises(DataFormatError, match="missing"):
            read_targets_jsonl(io.StringIO('{"mask":[1]}\n'),
                               small_geometry, grid)

    def test_wrong_mask_length_rejected(self, small_geometry, grid):
        record = '{"mask":[1,0],"pattern":[0.0]}\n'
        with pytest.raises(DataFormatError, match="sections"):
            read_targets_jsonl(io.StringIO(record), small_geometry, grid)

    def test_wrong_pattern_length_rejected(self, small_geometry, grid):
        mask = "[" + ",".join(["1"] * 16) + "]"
        record = f'{{"mask":{mask},"pattern":[0.0,1.0]}}\n'
        with pytest.raises(DataFormatError, match="samples"):
            read_targets_jsonl(io.StringIO(record), small_geometry, grid)
