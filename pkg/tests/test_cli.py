import json

import numpy as np
import pytest
from loguru import logger
from numpy.testing import assert_allclose

from config import Settings
from formats import ProblemFile, ResultReport, save_samples
from main import main


@pytest.fixture(autouse=True)
def quiet_logging():
    yield
    # main() replaces every loguru handler with its own stderr sink.
    logger.remove()


def run(capsys, *argv) -> tuple[int, ResultReport]:
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, ResultReport.from_json(out) if out.strip() else None


def problem_path(problems_dir, name: str) -> str:
    return str(problems_dir / f"{name}.json")


class TestSectionsCommand:
    @pytest.mark.parametrize("name, d", [("marginals", 4), ("loop_jordan", 1), ("strongly_connected_random", 0)])
    def test_dimension(self, capsys, problems_dir, name, d):
        code, report = run(capsys, "sections", problem_path(problems_dir, name))
        assert code == 0
        assert report.section_dim == d
        assert report.command == "sections"
        assert "total" in report.timing

    def test_blocks_and_stages(self, capsys, problems_dir):
        _, report = run(capsys, "sections", problem_path(problems_dir, "running"))
        assert set(report.blocks) == {f"v{i}" for i in range(7)}
        assert report.stages["cyclic_components"] == 1
        assert report.stages["terminal_edges"] == 3
        assert report.stages["root_dim"] == 3
        assert report.provenance

    def test_restrict(self, capsys, problems_dir):
        code, report = run(capsys, "sections", problem_path(problems_dir, "grid"), "--restrict", "v11,v12")
        assert code == 0
        assert report.stages == {**report.stages, "vertices": 2, "edges": 1}
        assert report.section_dim == 2
        assert set(report.blocks) == {"v11", "v12"}

    def test_unknown_restrict_label(self, capsys, problems_dir):
        assert main(["sections", problem_path(problems_dir, "grid"), "--restrict", "nope"]) == 2

    def test_tolerance_precedence(self, capsys, problems_dir, tmp_path, monkeypatch):
        path = problem_path(problems_dir, "kronecker")
        assert run(capsys, "sections", path)[1].tol == 1e-10
        monkeypatch.setenv("QSEC_TOL", "1e-9")
        Settings.reset()
        assert run(capsys, "sections", path)[1].tol == 1e-9
        problem = ProblemFile.load(path)
        problem.tol = 1e-8
        problem.dump(tmp_path / "with_tol.json")
        assert run(capsys, "sections", str(tmp_path / "with_tol.json"))[1].tol == 1e-8
        assert run(capsys, "sections", str(tmp_path / "with_tol.json"), "--tol", "1e-7")[1].tol == 1e-7

    def test_text_output(self, capsys, problems_dir):
        assert main(["sections", problem_path(problems_dir, "kronecker")]) == 0
        out = capsys.readouterr().out
        assert "sections: d = 1 of 4" in out
        assert "F[u]:" in out

    def test_parse_error(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"vertices": ["a"],\n "dims": {"a": 1},\n "edges": [}\n')
        assert main(["sections", str(path)]) == 2
        assert capsys.readouterr().out == ""

    def test_shape_error(self, capsys, tmp_path, problems_dir):
        doc = json.loads((problems_dir / "kronecker.json").read_text())
        doc["edges"][0]["matrix"] = {"shape": [2, 3], "data": [1, 0, 0, 0, 1, 0]}
        path = tmp_path / "corrupt.json"
        path.write_text(json.dumps(doc))
        assert main(["sections", str(path)]) == 3
        assert main(["check", str(path)]) == 3

    def test_missing_command(self):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2


class TestPCACommand:
    def test_matches_ordinary_on_data_in_sections(self, capsys, problems_dir):
        problem = problem_path(problems_dir, "one_arrow")
        data = str(problems_dir / "one_arrow_data.csv")
        code, quiver = run(capsys, "pca", problem, data, "--r", "2")
        assert code == 0
        _, plain = run(capsys, "pca", problem, data, "--r", "2", "--ordinary")
        assert quiver.details["mode"] == "quiver"
        assert plain.details["mode"] == "ordinary"
        assert_allclose(quiver.eigenvalues, plain.eigenvalues, rtol=1e-8)
        for a, b in zip(quiver.directions, plain.directions):
            assert abs(float(np.dot(a, b))) == pytest.approx(1.0, abs=1e-8)

    def test_one_arrow_block_components(self, capsys, problems_dir):
        problem = problem_path(problems_dir, "one_arrow")
        data_path = problems_dir / "one_arrow_data.csv"
        _, report = run(capsys, "pca", problem, str(data_path), "--r", "2")
        x = np.loadtxt(data_path, delimiter=",")
        u = x[:, :2] - x[:, :2].mean(axis=0)
        values, vectors = np.linalg.eigh(u.T @ u / len(u))
        j = np.array([[1.0, -1.0], [1.0, 1.0]])
        for direction, w in zip(report.directions, vectors[:, ::-1].T):
            expected = np.concatenate([w, j @ w])
            expected /= np.linalg.norm(expected)
            assert abs(float(np.dot(direction, expected))) == pytest.approx(1.0, abs=1e-8)

    def test_too_many_components(self, capsys, problems_dir):
        code = main(["pca", problem_path(problems_dir, "one_arrow"), str(problems_dir / "one_arrow_data.csv"), "--r", "3"])
        assert code == 2

    def test_trivial_sections(self, capsys, problems_dir, tmp_path, rng):
        data = tmp_path / "data.csv"
        save_samples(data, rng.standard_normal((20, 6)))
        problem = problem_path(problems_dir, "strongly_connected_random")
        assert main(["pca", problem, str(data)]) == 4
        code, report = run(capsys, "pca", problem, str(data), "--restrict", "a")
        assert code == 0
        assert report.section_dim == 2

    def test_width_mismatch(self, capsys, problems_dir, tmp_path, rng):
        data = tmp_path / "narrow.csv"
        save_samples(data, rng.standard_normal((20, 3)))
        assert main(["pca", problem_path(problems_dir, "one_arrow"), str(data)]) == 3

    def test_no_center_requires_centred_data(self, capsys, problems_dir, tmp_path):
        data = tmp_path / "shifted.csv"
        save_samples(data, np.array([[1.0, 0.0, 1.0, 1.0], [3.0, 0.0, 3.0, 3.0]]))
        problem = problem_path(problems_dir, "one_arrow")
        assert main(["pca", problem, str(data), "--no-center"]) == 2
        code, report = run(capsys, "pca", problem, str(data))
        assert code == 0
        assert report.details["centred"] is True


class TestLearnCommand:
    def test_writes_learned_problem(self, capsys, problems_dir, tmp_path):
        out = tmp_path / "learned.json"
        code, report = run(
            capsys,
            "learn",
            problem_path(problems_dir, "one_arrow"),
            str(problems_dir / "one_arrow_data.csv"),
            "--out",
            str(out),
        )
        assert code == 0
        learned = ProblemFile.load(out).representation()
        assert_allclose(learned.maps[0], [[1.0, -1.0], [1.0, 1.0]], atol=1e-10)
        assert report.residuals["J"] <= 1e-10
        assert report.section_dim == 2

    def test_with_components(self, capsys, problems_dir):
        code, report = run(
            capsys,
            "learn",
            problem_path(problems_dir, "one_arrow"),
            str(problems_dir / "one_arrow_data.csv"),
            "--r",
            "1",
        )
        assert code == 0
        assert len(report.eigenvalues) == 1
        assert len(report.directions[0]) == 4


class TestCheckCommand:
    @pytest.mark.parametrize(
        "name",
        [
            "bulk_single_cell",
            "grid",
            "kronecker",
            "loop_jordan",
            "marginals",
            "one_arrow",
            "running",
            "strongly_connected_random",
            "two_arrow",
        ],
    )
    def test_bundled_problems_pass(self, capsys, problems_dir, name):
        code, report = run(capsys, "check", problem_path(problems_dir, name))
        assert code == 0
        assert report.details["status"] == "PASS"
        assert report.details["pipeline_dim"] == report.details["naive_dim"]

    def test_needs_a_problem(self, capsys):
        assert main(["check"]) == 2

    def test_small_bench(self, capsys):
        code, report = run(capsys, "check", "--bench", "--sizes", "4,6", "--repeats", "1")
        assert code == 0
        assert report.details["status"] == "PASS"
        assert [row[0] for row in report.details["table"]["rows"]] == [4, 6]

    def test_bad_sizes(self):
        with pytest.raises(SystemExit):
            main(["check", "--bench", "--sizes", "1,x"])


class TestBoundCommand:
    def test_two_arrow(self, capsys, problems_dir):
        code, report = run(capsys, "bound", problem_path(problems_dir, "two_arrow"), "--verify")
        assert code == 0
        assert report.details["bound"] == 2
        assert report.details["merge_bound"] == 2
        assert report.section_dim == 2
        assert report.details["tight"] is True
        assert report.details["path_counts"] == {"U": 1, "V": 1, "W": 1}

    def test_dimensions_only(self, capsys, tmp_path):
        path = tmp_path / "diamond.json"
        ProblemFile.from_dict(
            {
                "vertices": ["a", "b", "c", "d"],
                "dims": {"a": 2, "b": 2, "c": 2, "d": 2},
                "edges": [
                    {"source": "a", "target": "b"},
                    {"source": "a", "target": "c"},
                    {"source": "b", "target": "d"},
                    {"source": "c", "target": "d"},
                ],
            }
        ).dump(path)
        code, report = run(capsys, "bound", str(path))
        assert code == 0
        assert report.details["bound"] == 0
        assert report.details["merge_bound"] == 0
        assert report.details["path_counts"]["d"] == 2

    def test_cyclic_problem(self, capsys, problems_dir):
        assert main(["bound", problem_path(problems_dir, "loop_jordan")]) == 2

    def test_merge_bound_below_path_count_bound(self, capsys, tmp_path, rng):
        # Merge at a vertex that is not maximal: the path-count bound overshoots.
        dims = {"a": 2, "b": 4, "c": 4, "d": 3}
        pairs = [("a", "c"), ("b", "c"), ("c", "d")]
        path = tmp_path / "inner_merge.json"
        ProblemFile.from_dict(
            {
                "vertices": list(dims),
                "dims": dims,
                "edges": [
                    {
                        "source": s,
                        "target": t,
                        "matrix": {"shape": [dims[t], dims[s]], "data": rng.standard_normal(dims[t] * dims[s]).tolist()},
                    }
                    for s, t in pairs
                ],
            }
        ).dump(path)
        code, report = run(capsys, "bound", str(path), "--verify")
        assert code == 0
        assert report.details["bound"] == 3
        assert report.details["merge_bound"] == 2
        assert report.section_dim == 2
        assert report.details["tight"] is False
