import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from errors import NotCentred, ParseError, ShapeMismatch, WidthMismatch
from formats import ProblemFile, ResultReport, load_dataset, read_samples, save_samples
from sections import BlockLayout, sections

PROBLEM = {
    "vertices": ["u", "v"],
    "dims": {"u": 2, "v": 1},
    "edges": [{"name": "a", "source": "u", "target": "v", "matrix": {"shape": [1, 2], "data": [1, 2]}}],
}


def problem_with(**changes) -> dict:
    doc = json.loads(json.dumps(PROBLEM))
    doc.update(changes)
    return doc


class TestProblemFile:
    def test_parse(self):
        problem = ProblemFile.from_dict(PROBLEM)
        rep = problem.representation()
        assert rep.dims == (2, 1)
        assert_allclose(rep.maps[0], [[1.0, 2.0]])
        assert problem.tol is None

    def test_bundled_files_round_trip(self, problems_dir):
        for path in sorted(problems_dir.glob("*.json")):
            problem = ProblemFile.load(path)
            again = ProblemFile.loads(problem.dumps())
            assert again.to_dict() == problem.to_dict()

    def test_edge_names_default_to_positions(self):
        doc = problem_with(edges=[{"source": "u", "target": "v"}, {"source": "u", "target": "v"}])
        problem = ProblemFile.from_dict(doc)
        assert [e.name for e in problem.edges] == ["e0", "e1"]
        assert not problem.has_matrices

    @pytest.mark.parametrize(
        "doc, location",
        [
            ({"dims": {}}, "vertices"),
            (problem_with(dims={"u": 2}), "dims.v"),
            (problem_with(dims={"u": 2, "v": 1, "w": 3}), "dims.w"),
            (problem_with(dims={"u": 2, "v": "one"}), "dims.v"),
            (problem_with(vertices=["u", "u"]), "vertices[1]"),
            (problem_with(edges=[{"source": "u"}]), "edges[0].target"),
            (problem_with(edges=[{"source": "u", "target": "x"}]), "edges[0].target"),
            (problem_with(edges=[{"source": "u", "target": "v", "matrix": {"shape": [1, 2]}}]), "edges[0].matrix.data"),
            (
                problem_with(edges=[{"source": "u", "target": "v", "matrix": {"shape": [1, 2], "data": [1]}}]),
                "edges[0].matrix.data",
            ),
            (
                problem_with(edges=[{"source": "u", "target": "v", "matrix": {"shape": [1, 2], "data": [1, "x"]}}]),
                "edges[0].matrix.data[1]",
            ),
            (problem_with(tol=-1.0), "tol"),
            (problem_with(tol="small"), "tol"),
        ],
    )
    def test_errors_name_the_field(self, doc, location):
        with pytest.raises(ParseError) as info:
            ProblemFile.from_dict(doc)
        assert info.value.location == location
        assert str(info.value).startswith(f"{location}: ")

    def test_json_errors_carry_line_and_column(self):
        with pytest.raises(ParseError) as info:
            ProblemFile.loads('{\n  "vertices": [\n}', "broken.json")
        assert info.value.location.startswith("broken.json:3:")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            ProblemFile.load(tmp_path / "absent.json")

    def test_shape_mismatch_is_not_a_parse_error(self):
        doc = problem_with(
            edges=[{"source": "u", "target": "v", "matrix": {"shape": [2, 2], "data": [1, 0, 0, 1]}}]
        )
        problem = ProblemFile.from_dict(doc)
        with pytest.raises(ShapeMismatch):
            problem.representation()

    def test_representation_needs_matrices(self):
        problem = ProblemFile.from_dict(problem_with(edges=[{"source": "u", "target": "v"}]))
        with pytest.raises(ParseError) as info:
            problem.representation()
        assert info.value.location == "edges[0].matrix"

    def test_with_matrices(self, tmp_path):
        problem = ProblemFile.from_dict(problem_with(edges=[{"name": "a", "source": "u", "target": "v"}]))
        filled = problem.with_matrices([np.array([[3.0, 4.0]])])
        filled.dump(tmp_path / "out.json")
        loaded = ProblemFile.load(tmp_path / "out.json")
        assert_allclose(loaded.representation().maps[0], [[3.0, 4.0]])
        assert problem.edges[0].matrix is None

    def test_vertex_ids(self):
        problem = ProblemFile.from_dict(PROBLEM)
        assert problem.vertex_ids(["v", "u"]) == [1, 0]
        with pytest.raises(ParseError):
            problem.vertex_ids(["w"])


class TestResultReport:
    def test_round_trip(self, load_problem):
        rep = load_problem("two_arrow").representation()
        space, _ = sections(rep.quiver, rep)
        report = ResultReport(
            command="sections",
            tol=1e-10,
            section_dim=space.d,
            total_dim=space.n,
            blocks={"V": space.block(1).tolist()},
            eigenvalues=[0.1 + 0.2, 1 / 3],
            ties=[False, True],
            timing={"total": 0.125},
            provenance=["spanning tree keeps edges [0, 1]"],
            details={"status": "PASS"},
        )
        again = ResultReport.from_json(report.to_json())
        assert again == report
        assert again.to_json() == report.to_json()

    def test_rejects_unknown_fields(self):
        with pytest.raises(ParseError):
            ResultReport.from_dict({"command": "x", "tol": 1.0, "extra": 1})
        with pytest.raises(ParseError) as info:
            ResultReport.from_dict({"command": "x"})
        assert info.value.location == "tol"
        with pytest.raises(ParseError):
            ResultReport.from_json("{")


class TestSamples:
    def test_round_trip(self, tmp_path, rng):
        x = rng.standard_normal((7, 3))
        path = tmp_path / "data.csv"
        save_samples(path, x, header="a,b,c")
        assert_allclose(read_samples(path), x, rtol=0, atol=0)

    def test_single_row_and_comments(self, tmp_path):
        path = tmp_path / "one.csv"
        path.write_text("# u1,u2\n1,2\n")
        assert read_samples(path).shape == (1, 2)

    def test_bad_values(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2\n3,x\n")
        with pytest.raises(ParseError):
            read_samples(path)
        path.write_text("1,2\n3,nan\n")
        with pytest.raises(ParseError):
            read_samples(path)
        with pytest.raises(ParseError):
            read_samples(tmp_path / "absent.csv")

    def test_load_dataset(self, tmp_path, problems_dir):
        layout = BlockLayout((2, 2))
        data = load_dataset(problems_dir / "one_arrow_data.csv", layout)
        assert data.centred
        assert_allclose(data.samples.mean(axis=0), 0.0, atol=1e-12)
        with pytest.raises(WidthMismatch):
            load_dataset(problems_dir / "one_arrow_data.csv", BlockLayout((2, 3)))

    def test_uncentred_data_is_rejected_without_centering(self, tmp_path):
        path = tmp_path / "shifted.csv"
        save_samples(path, np.array([[1.0, 2.0], [3.0, 2.0]]))
        with pytest.raises(NotCentred):
            load_dataset(path, center=False)
