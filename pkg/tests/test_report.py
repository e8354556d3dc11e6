import json
import xml.etree.ElementTree as ET

import numpy as np
import pandas as pd
import pytest

from qna.errors import ExportError, FigureError
from qna.report.export import (
    export_tables, keyness_frame, matrix_frame, posterior_frame, rates_table, write_csv, write_json, write_svg,
)
from qna.report.figures import dispersion_svg, heatmap_svg, render_figure, scatter_svg
from qna.schemas import KeynessResult, PosteriorSamples

SVG_NS = "{http://www.w3.org/2000/svg}"


def elements_of_class(svg: str, cls: str):
    root = ET.fromstring(svg)
    return [e for e in root.iter() if e.get("class") == cls]


# ============== Figures ==============

def test_heatmap_has_one_cell_per_entry():
    matrix = pd.DataFrame(np.random.default_rng(0).uniform(size=(47, 20)),
                          index=[f"author {i}" for i in range(47)], columns=[f"t{j}" for j in range(20)])
    cells = elements_of_class(heatmap_svg(matrix, title="Topics"), "cell")
    assert len(cells) == 940
    assert all(c.tag == f"{SVG_NS}rect" for c in cells)


def test_scatter_marks_and_labels_every_point():
    points = pd.DataFrame({"dim1": [0.0, 1.0], "dim2": [1.0, 0.0]}, index=["Blake", "Keats & Co <x>"])
    svg = scatter_svg(points)
    assert len(elements_of_class(svg, "point")) == 2
    labels = [e.text for e in elements_of_class(svg, "label")]
    assert labels == ["Blake", "Keats & Co <x>"]


def test_dispersion_ticks():
    svg = render_figure("dispersion", {"love": [0.0, 0.5, 1.0], "absent": []})
    assert len(elements_of_class(svg, "tick")) == 3


def test_figure_errors():
    with pytest.raises(FigureError):
        scatter_svg(pd.DataFrame(columns=["dim1", "dim2"]))
    with pytest.raises(FigureError):
        heatmap_svg(pd.DataFrame([[-1.0]]))
    with pytest.raises(FigureError):
        dispersion_svg({"love": [1.5]})
    with pytest.raises(FigureError):
        render_figure("pie", pd.DataFrame([[1.0]]))


# ============== Export ==============

def test_empty_keyness_table_is_header_only(tmp_path):
    path = write_csv(keyness_frame([]), tmp_path / "keyness.csv")
    assert path.read_text(encoding="utf-8") == "word,rate_a,rate_b,corpus_avg,unique_to,keyness,p_delta_neg\n"


def test_keyness_rows_are_rounded(tmp_path):
    frame = keyness_frame([KeynessResult(word="love", rate_a=1 / 3, rate_b=0.0, corpus_avg_rate=0.5, keyness=2 / 3)])
    lines = write_csv(frame, tmp_path / "k.csv").read_text(encoding="utf-8").splitlines()
    assert lines[1] == "love,0.3333,0.0000,0.5000,,0.6667,"


def test_reruns_are_byte_identical(tmp_path):
    data = {"b": 1 / 3, "a": [np.float64(2.0), np.int64(3)]}
    first = write_json(data, tmp_path / "one.json").read_bytes()
    second = write_json(data, tmp_path / "two.json").read_bytes()
    assert first == second
    assert json.loads(first) == {"a": [2.0, 3], "b": 0.3333}


def test_non_finite_values_become_null(tmp_path):
    path = write_json({"x": float("nan"), "y": np.inf}, tmp_path / "x.json")
    assert json.loads(path.read_text(encoding="utf-8")) == {"x": None, "y": None}


def test_unwritable_target(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x", encoding="utf-8")
    with pytest.raises(ExportError):
        write_csv(pd.DataFrame({"a": [1]}), blocker / "out.csv")
    with pytest.raises(ExportError):
        write_svg("<svg/>", blocker / "out.svg")


def test_table_layouts():
    rates = pd.DataFrame({"love": [1.0, 2.0]}, index=["a", "b"])
    table = rates_table(rates, ["b"], ["love", "absent"])
    assert table.to_dict("records") == [{"doc_id": "b", "love": 2.0, "absent": 0.0}]
    frame = matrix_frame(np.eye(2), ["a", "b"], ["dim1", "dim2"])
    assert list(frame.columns) == ["doc_id", "dim1", "dim2"]
    assert posterior_frame(PosteriorSamples(delta_draws=[0.1, -0.2], p_delta_neg=0.5))["delta"].tolist() == [0.1, -0.2]


def test_export_tables_picks_format_by_type(tmp_path):
    written = export_tables({"rates": pd.DataFrame({"a": [1.0]}), "meta": {"k": 2}}, tmp_path)
    assert [p.name for p in written] == ["meta.json", "rates.csv"]
