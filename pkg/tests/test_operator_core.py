import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from graphdeco.errors import ConvergenceError, InputError, PoleError
from graphdeco.graph_model import (
    RootedGraph,
    complete_graph,
    cycle_graph,
    decorate,
    laplacian,
    path_graph,
    single_vertex,
    star_graph,
)
from graphdeco.operator_core import (
    SymmetricOperator,
    build_decorated_operator,
    eigendecompose,
    green_diag,
    krylov_cyclic_decomposition,
)
from graphdeco.tolerances import Tolerances

from conftest import connected_graphs, graph_and_operator

K2 = laplacian(complete_graph(2))
K3 = laplacian(complete_graph(3))
STAR = laplacian(star_graph(3))


def random_symmetric(seed, n):
    a = np.random.default_rng(seed).uniform(-1, 1, (n, n))
    return SymmetricOperator(a + a.T)


def test_asymmetric_operator_rejected():
    with pytest.raises(InputError, match=r"entries\[0\]\[1\]"):
        SymmetricOperator([[0.0, 1.0], [0.5, 0.0]])


def test_operator_is_read_only():
    op = SymmetricOperator([[1.0]])
    with pytest.raises(ValueError):
        op.entries[0, 0] = 2.0


class TestBuildDecoratedOperator:
    def test_single_vertex_base(self):
        H = build_decorated_operator(SymmetricOperator([[0.0]]), K2, 0, 1)
        np.testing.assert_array_equal(H.entries, [[1, -1], [-1, 1]])

    def test_edge_base_by_edge(self):
        H = build_decorated_operator(laplacian(path_graph(2)), K2, 0, 2)
        expected = [[2, -1, -1, 0], [-1, 1, 0, 0], [-1, 0, 2, -1], [0, 0, -1, 1]]
        np.testing.assert_array_equal(H.entries, expected)

    def test_laplacian_of_decorated_graph(self):
        base, dec = cycle_graph(4), RootedGraph(complete_graph(2), 0)
        H = build_decorated_operator(laplacian(base), K2, 0, 4)
        assert H == laplacian(decorate(base, dec).product)

    @settings(max_examples=60, deadline=None)
    @given(connected_graphs(max_n=8), connected_graphs(max_n=5), st.data())
    def test_laplacian_property(self, base, g, data):
        root = data.draw(st.integers(0, g.n - 1))
        H = build_decorated_operator(laplacian(base), laplacian(g), root, base.n)
        assert H == laplacian(decorate(base, RootedGraph(g, root)).product)

    def test_dimension_mismatch(self):
        with pytest.raises(InputError):
            build_decorated_operator(K3, K2, 0, 2)
        with pytest.raises(InputError):
            build_decorated_operator(K2, K2, 2, 2)


class TestEigendecompose:
    def test_scalar(self):
        eig = eigendecompose(SymmetricOperator([[2.5]]))
        assert eig.values.tolist() == [2.5]
        assert abs(eig.vectors[0, 0]) == 1.0

    def test_triangle(self):
        np.testing.assert_allclose(eigendecompose(K3).values, [0, 3, 3], atol=1e-13)

    def test_four_cycle(self):
        # 2 - 2 cos(2 pi k / 4), k = 0..3
        np.testing.assert_allclose(eigendecompose(laplacian(cycle_graph(4))).values, [0, 2, 2, 4], atol=1e-13)

    def test_zero_matrix(self):
        eig = eigendecompose(SymmetricOperator(np.zeros((3, 3))))
        np.testing.assert_array_equal(eig.values, [0, 0, 0])

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(1, 12))
    def test_invariants_against_lapack(self, seed, n):
        op = random_symmetric(seed, n)
        eig = eigendecompose(op)
        a = op.entries
        scale = np.linalg.norm(a)
        assert np.all(np.diff(eig.values) >= 0)
        assert np.linalg.norm(a @ eig.vectors - eig.vectors * eig.values, axis=0).max() <= 1e-11 * scale
        np.testing.assert_allclose(eig.vectors.T @ eig.vectors, np.eye(n), atol=1e-11)
        np.testing.assert_allclose(eig.values, np.linalg.eigvalsh(a), atol=1e-12 * scale)

    def test_sweep_cap(self):
        op = random_symmetric(3, 6)
        with pytest.raises(ConvergenceError):
            eigendecompose(op, Tolerances(max_sweeps=1))


class TestGreenDiag:
    def test_scalar(self):
        assert green_diag(SymmetricOperator([[0.7]]), 0, 1j) == pytest.approx(1 / (0.7 - 1j), abs=1e-15)

    @pytest.mark.parametrize("z", [0.3 + 0.5j, -2 + 1j, 5.0, 0.25])
    def test_edge(self, z):
        assert green_diag(K2, 0, z) == pytest.approx((1 - z) / ((1 - z) ** 2 - 1), abs=1e-13)

    def test_triangle_at_2i(self):
        expected = (2 / 3) / (3 - 2j) + (1 / 3) / (0 - 2j)
        direct = np.linalg.solve(K3.entries - 2j * np.eye(3), np.eye(3)[0])[0]
        assert expected == pytest.approx(direct, abs=1e-15)
        assert green_diag(K3, 0, 2j) == pytest.approx(expected, abs=1e-13)

    def test_real_z_at_eigenvalue(self):
        with pytest.raises(PoleError):
            green_diag(K3, 0, 3.0)

    def test_vector_argument(self):
        v = np.array([1.0, 1.0]) / np.sqrt(2)
        # v is the zero mode of K2
        assert green_diag(K2, v, 1j) == pytest.approx(1 / (0 - 1j), abs=1e-14)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(1, 12), st.floats(-3, 3), st.floats(0.05, 3))
    def test_against_direct_solve(self, seed, n, x, y):
        op = random_symmetric(seed, n)
        z = complex(x, y)
        k = seed % n
        direct = np.linalg.solve(op.entries - z * np.eye(n), np.eye(n)[k])[k]
        g = green_diag(op, k, z)
        assert abs(g - direct) <= 1e-10
        assert g.imag > 0
        assert green_diag(op, k, z.conjugate()) == pytest.approx(g.conjugate(), abs=1e-14)


class TestKrylov:
    def test_edge_is_cyclic(self):
        d = krylov_cyclic_decomposition(K2, 0)
        assert d.size == 2
        assert d.remainder_eigenvalues == ()
        assert d.cyclic

    def test_triangle(self):
        d = krylov_cyclic_decomposition(K3, 0)
        assert d.size == 2
        np.testing.assert_allclose(d.remainder_eigenvalues, [3.0], atol=1e-13)

    def test_star_from_center(self):
        # the leaf-difference modes (eigenvalue 1, twice) never see the center
        d = krylov_cyclic_decomposition(STAR, 0)
        assert d.size == 2
        np.testing.assert_allclose(d.remainder_eigenvalues, [1.0, 1.0], atol=1e-13)
        cyclic = np.linalg.eigvalsh(d.tridiagonal())
        np.testing.assert_allclose(sorted([*cyclic, *d.remainder_eigenvalues]), np.linalg.eigvalsh(STAR.entries), atol=1e-13)

    def test_single_vertex(self):
        d = krylov_cyclic_decomposition(laplacian(single_vertex()), 0)
        assert d.size == 1 and d.cyclic

    @settings(max_examples=60, deadline=None)
    @given(graph_and_operator(max_n=7), st.data())
    def test_invariants(self, go, data):
        g, A = go
        root = data.draw(st.integers(0, g.n - 1))
        d = krylov_cyclic_decomposition(A, root)
        Q = d.basis
        assert d.size + len(d.remainder_eigenvalues) == A.dim
        np.testing.assert_array_equal(Q[:, 0], np.eye(A.dim)[root])
        np.testing.assert_allclose(Q.T @ Q, np.eye(d.size), atol=1e-12)
        np.testing.assert_allclose(Q.T @ A.entries @ Q, d.tridiagonal(), atol=1e-11 * max(A.frobenius_norm, 1))
        assert np.all(d.beta > 1e-10 * A.frobenius_norm)
        union = sorted([*np.linalg.eigvalsh(d.tridiagonal()), *d.remainder_eigenvalues])
        np.testing.assert_allclose(union, np.linalg.eigvalsh(A.entries), atol=1e-10 * max(A.frobenius_norm, 1))
