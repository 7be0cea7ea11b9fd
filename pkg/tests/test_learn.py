import networkx as nx
import numpy as np
import pytest
from numpy.testing import assert_allclose

from errors import DimensionMismatch, NotCentred, ShapeMismatch, WidthMismatch
from graph.quiver import Quiver
from learn import VertexData, delta_blowup, fit_edge, fit_edge_maps, learn_then_pca, node_name
from qpca import Dataset, covariance, one_arrow_pencil, quiver_pca, solve_pencil, split_blocks
from sections import Representation, sections
from subspace import principal_angle_distance
from tests.corpus import gaussian_representation

TREE = Quiver.from_pairs(4, [(0, 1), (0, 2), (1, 3)])
CHAIN_WITH_BRANCH = Quiver.from_pairs(4, [(0, 1), (1, 2), (1, 3)])


def propagate(rep: Representation, root_samples: np.ndarray) -> np.ndarray:
    """Samples of an arborescence representation rooted at vertex 0, determined by the root block."""
    q = rep.quiver
    blocks = {0: root_samples}
    for edge in q.edges:
        blocks[edge.target] = blocks[edge.source] @ rep.maps[edge.id].T
    return np.hstack([blocks[v] for v in q.vertices])


def objective(vd: VertexData, q: Quiver, maps) -> float:
    return sum(
        float(np.linalg.norm(vd.blocks[e.target] - vd.blocks[e.source] @ a.T) ** 2)
        for e, a in zip(q.edges, maps)
    )


class TestFit:
    def test_planted_maps_are_recovered(self, rng):
        for _ in range(10):
            rep = gaussian_representation(rng, TREE, (3, 3, 2, 2))
            x = propagate(rep, rng.standard_normal((30, 3)))
            data = Dataset.from_samples(x, rep.layout)
            fitted = fit_edge_maps(TREE, VertexData.from_dataset(data, rep.dims))
            for learned, planted in zip(fitted.representation.maps, rep.maps):
                assert_allclose(learned, planted, atol=1e-9)
            assert fitted.worst_residual <= 1e-9

    def test_matches_normal_equations(self, rng):
        for _ in range(20):
            ys = rng.standard_normal((40, 3))
            yt = rng.standard_normal((40, 2))
            a, residual = fit_edge(ys, yt)
            expected = np.linalg.solve(ys.T @ ys, ys.T @ yt).T
            assert_allclose(a, expected, atol=1e-9)
            assert residual == pytest.approx(np.linalg.norm(yt - ys @ expected.T))

    def test_zero_source(self, rng):
        yt = rng.standard_normal((10, 2))
        a, residual = fit_edge(np.zeros((10, 3)), yt)
        assert_allclose(a, np.zeros((2, 3)))
        assert residual == pytest.approx(np.linalg.norm(yt))

    def test_perturbations_never_improve_the_fit(self, rng):
        rep = gaussian_representation(rng, TREE, (3, 3, 2, 2))
        x = propagate(rep, rng.standard_normal((30, 3))) + 0.1 * rng.standard_normal((30, 10))
        vd = VertexData.from_dataset(Dataset.from_samples(x, rep.layout), rep.dims)
        fitted = fit_edge_maps(TREE, vd).representation.maps
        best = objective(vd, TREE, fitted)
        for e in range(TREE.n_edges):
            for _ in range(100):
                moved = list(fitted)
                moved[e] = moved[e] + 1e-3 * rng.standard_normal(moved[e].shape)
                assert objective(vd, TREE, moved) >= best

    def test_workers_do_not_change_the_fit(self, rng):
        rep = gaussian_representation(rng, TREE, (3, 3, 2, 2))
        x = propagate(rep, rng.standard_normal((30, 3))) + 0.1 * rng.standard_normal((30, 10))
        vd = VertexData.from_dataset(Dataset.from_samples(x, rep.layout), rep.dims)
        serial = fit_edge_maps(TREE, vd)
        threaded = fit_edge_maps(TREE, vd, workers=3)
        for a, b in zip(serial.representation.maps, threaded.representation.maps):
            assert_allclose(a, b)
        assert serial.residuals == threaded.residuals

    def test_cycles_are_fitted_edge_by_edge(self, rng, log_messages):
        q = Quiver.from_pairs(2, [(0, 1), (1, 0)])
        data = Dataset.from_samples(rng.standard_normal((20, 4)))
        fitted = fit_edge_maps(q, VertexData.from_dataset(data, (2, 2)))
        assert len(fitted.residuals) == 2
        assert any("cycles" in m for m in log_messages)

    def test_vertex_data_checks(self, rng):
        data = Dataset.from_samples(rng.standard_normal((10, 4)))
        with pytest.raises(WidthMismatch):
            VertexData.from_dataset(data, (2, 3))
        with pytest.raises(NotCentred):
            VertexData.from_dataset(Dataset(rng.standard_normal((10, 4))), (2, 2))
        with pytest.raises(WidthMismatch):
            VertexData((np.zeros((3, 1)), np.zeros((4, 1))))
        with pytest.raises(WidthMismatch):
            fit_edge_maps(TREE, VertexData.from_dataset(data, (2, 2)))


class TestBlowup:
    def test_unit_counts_give_the_quiver(self):
        q = Quiver.from_pairs(3, [(0, 1), (1, 2), (0, 2)])
        blowup = delta_blowup(q, [1, 1, 1])
        expected = nx.MultiDiGraph([(node_name(s, 0), node_name(t, 0)) for s, t in [(0, 1), (1, 2), (0, 2)]])
        assert nx.is_isomorphic(blowup.graph, expected)

    def test_counts(self):
        blowup = delta_blowup(CHAIN_WITH_BRANCH, [1, 2, 3, 2])
        assert blowup.n_nodes == 8
        assert blowup.n_edges == 12
        assert [len(blowup.bundle(e)) for e in range(3)] == [2, 6, 4]
        assert blowup.nodes_of(2) == ["2_0", "2_1", "2_2"]
        assert nx.is_directed_acyclic_graph(blowup.graph)

    def test_counts_from_mapping(self):
        blowup = delta_blowup(TREE, {0: 2, 1: 1, 2: 0, 3: 4})
        assert blowup.n_nodes == 7
        assert blowup.n_edges == 2 * 1 + 2 * 0 + 1 * 4

    def test_weighted_single_edge(self):
        q = Quiver.from_pairs(2, [(0, 1)])
        rep = Representation.build(q, (2, 2), [[[1.0, 2.0], [3.0, 4.0]]])
        blowup = delta_blowup(q, rep.dims, rep)
        assert sorted(blowup.bundle(0)) == [
            ("0_0", "1_0", 1.0),
            ("0_0", "1_1", 3.0),
            ("0_1", "1_0", 2.0),
            ("0_1", "1_1", 4.0),
        ]
        lines = blowup.to_edgelist().splitlines()
        assert sorted(lines) == ["0_0 1_0 1.0", "0_0 1_1 3.0", "0_1 1_0 2.0", "0_1 1_1 4.0"]

    def test_unweighted_edges_have_unit_weight(self):
        blowup = delta_blowup(Quiver.from_pairs(2, [(0, 1)]), [1, 1])
        assert blowup.to_edgelist() == "0_0 1_0 1.0\n"
        assert delta_blowup(Quiver.from_pairs(1, []), [2]).to_edgelist() == ""

    def test_bad_counts(self):
        with pytest.raises(DimensionMismatch):
            delta_blowup(TREE, [1, 2])
        with pytest.raises(DimensionMismatch):
            delta_blowup(TREE, [1, -1, 1, 1])
        with pytest.raises(DimensionMismatch):
            delta_blowup(TREE, {0: 1})

    def test_weights_must_match(self, rng):
        rep = gaussian_representation(rng, TREE, (1, 2, 3, 2))
        with pytest.raises(ShapeMismatch):
            delta_blowup(TREE, [1, 2, 3, 3], rep)

    def test_several_incoming_edges_warn(self, log_messages):
        delta_blowup(Quiver.from_pairs(3, [(0, 2), (1, 2)]), [1, 1, 1])
        assert any("several incoming edges" in m for m in log_messages)


class TestLearnThenPCA:
    def test_one_arrow_pencil(self, rng):
        q = Quiver.from_pairs(2, [(0, 1)])
        x = rng.standard_normal((60, 5))
        data = Dataset.from_samples(x)
        learned = learn_then_pca(q, data, (3, 2), 2)
        yu, yv = data.samples[:, :3], data.samples[:, 3:]
        j = (np.linalg.pinv(yu) @ yv).T
        assert_allclose(learned.fitted.representation.maps[0], j, atol=1e-10)

        s = covariance(data)
        a, b = one_arrow_pencil(split_blocks(s, 3), j)
        assert_allclose(learned.pcs.eigenvalues, solve_pencil(a, b).eigenvalues[:2], atol=1e-10)
        f = learned.pcs.sections.embedding
        assert_allclose(f[3:] @ np.linalg.pinv(f[:3]), j, atol=1e-10)

    def test_planted_sections_are_recovered(self, rng):
        rep = gaussian_representation(rng, TREE, (3, 3, 2, 2))
        x = propagate(rep, rng.standard_normal((40, 3)))
        data = Dataset.from_samples(x, rep.layout)
        learned = learn_then_pca(TREE, data, rep.dims, 2)
        truth, _ = sections(TREE, rep)
        assert principal_angle_distance(learned.pcs.sections.image(), truth.image()) <= 1e-8
        expected = quiver_pca(data, truth, 2)
        assert_allclose(learned.pcs.eigenvalues, expected.eigenvalues, atol=1e-8)

    def test_zero_dataset(self):
        q = Quiver.from_pairs(2, [(0, 1)])
        data = Dataset.from_samples(np.zeros((5, 4)))
        learned = learn_then_pca(q, data, (2, 2), 2)
        assert_allclose(learned.fitted.representation.maps[0], np.zeros((2, 2)))
        assert learned.pcs.ties[0]
        assert_allclose(learned.pcs.eigenvalues, [0.0, 0.0])
