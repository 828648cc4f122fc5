"""Serialization: number formatting, CSV layout, SVG, atomic writes."""

import os
import xml.etree.ElementTree as ET

import pytest

from secrecy_region import SweepConfig, capacity_region
from secrecy_region import output


@pytest.fixture(scope="module")
def boundary(example_channel):
    return capacity_region(
        example_channel, SweepConfig(grid_points=17, sagitta_tol=1e-4, refine=False)
    )


class TestNumberFormat:
    def test_twelve_significant_digits(self):
        assert output.fmt(1.2478311716202364) == "1.24783117162"
        assert output.fmt(0.5) == "0.5"
        assert output.fmt(123456789012345.0) == "1.23456789012e+14"

    def test_round12_recursive(self):
        data = {"a": [1.0000000000001, {"b": 2.5}], "c": True, "d": None}
        rounded = output.round12(data)
        assert rounded["a"][0] == 1.0
        assert rounded["a"][1]["b"] == 2.5
        assert rounded["c"] is True and rounded["d"] is None


class TestBoundaryCsv:
    def test_layout(self, boundary):
        text = output.boundary_csv(boundary)
        lines = text.strip().split("\n")
        assert lines[0] == "param,r1_bits,r2_bits"
        sentinel = lines.index("# hull")
        assert sentinel == 1 + len(boundary.points)
        data_rows = lines[1:sentinel]
        assert all(len(row.split(",")) == 3 for row in data_rows)
        hull_rows = lines[sentinel + 1 :]
        assert len(hull_rows) == len(boundary.hull)
        assert all(len(row.split(",")) == 2 for row in hull_rows)

    def test_beta_columns(self, boundary):
        dists = [0.0] * len(boundary.points)
        text = output.boundary_csv(boundary, dists, 1.5e-7)
        lines = text.strip().split("\n")
        assert lines[0] == "param,r1_bits,r2_bits,beta_dist"
        assert lines[1].count(",") == 3
        assert lines[-1] == "# beta_hausdorff,1.5e-07"


class TestAtomicWrite:
    def test_write_and_no_temp_leftovers(self, tmp_path):
        target = tmp_path / "out" / "file.csv"
        output.atomic_write_text(str(target), "hello\n")
        assert target.read_text() == "hello\n"
        leftovers = [p for p in os.listdir(target.parent) if p.startswith(".tmp-")]
        assert leftovers == []

    def test_overwrite_is_atomic(self, tmp_path):
        target = tmp_path / "file.txt"
        output.atomic_write_text(str(target), "one\n")
        output.atomic_write_text(str(target), "two\n")
        assert target.read_text() == "two\n"


class TestSvg:
    def test_well_formed_and_deterministic(self, boundary, example_channel):
        curves = [
            ("capacity region", boundary.frontier(), "solid"),
            ("time sharing", [(0.0, 1.0), (1.0, 0.0)], "dashdot"),
        ]
        svg1 = output.region_svg(curves)
        svg2 = output.region_svg(curves)
        assert svg1 == svg2  # no timestamps, no randomness
        root = ET.fromstring(svg1)
        assert root.tag.endswith("svg")
        assert "stroke-dasharray" in svg1
        assert "<path" in svg1

    def test_single_point_curve(self):
        svg = output.region_svg([("point", [(0.0, 0.0)], "solid")])
        assert "<circle" in svg
