import math

import numpy as np
import pytest

from graphdeco.errors import PoleError
from graphdeco.graph_model import (
    Graph,
    RootedGraph,
    complete_graph,
    cycle_graph,
    laplacian,
    path_graph,
    single_vertex,
)
from graphdeco.operator_core import SymmetricOperator, build_decorated_operator
from graphdeco.oracle import (
    Instance,
    fixed_instance,
    lift_eigenfunction,
    run_campaign,
    sample_z,
    spectral_measure_at,
    verify_gamma_identities,
    verify_green_relation,
    verify_measure_relation,
    verify_spectral_map,
)

K2 = RootedGraph(complete_graph(2), 0)
K3 = RootedGraph(complete_graph(3), 0)


def instance(base, dec):
    return Instance(base, laplacian(base), dec, laplacian(dec.graph))


def assert_all_pass(report):
    failed = [c for c in report.checks if not c.passed]
    assert not failed, failed


class TestSpectralMeasure:
    def test_scalar(self):
        mu = spectral_measure_at(SymmetricOperator([[1.25]]), [1.0])
        assert mu.atoms == ((1.25, 1.0),)

    def test_triangle(self):
        mu = spectral_measure_at(laplacian(complete_graph(3)), [1.0, 0, 0])
        np.testing.assert_allclose(mu.atoms, [(0.0, 1 / 3), (3.0, 2 / 3)], atol=1e-14)

    def test_four_cycle(self):
        mu = spectral_measure_at(laplacian(cycle_graph(4)), [1.0, 0, 0, 0])
        np.testing.assert_allclose(mu.atoms, [(0, 0.25), (2, 0.5), (4, 0.25)], atol=1e-14)
        assert mu.total_mass == pytest.approx(1.0, abs=1e-14)


class TestSpectralMap:
    def test_single_vertex_base(self):
        inst = instance(single_vertex(), K2)
        report = verify_spectral_map(inst)
        assert_all_pass(report)
        assert report.check("spectral_map").max_error <= 1e-10
        np.testing.assert_allclose(inst.predicted_eigenvalues(), [0, 2], atol=1e-14)

    def test_four_cycle_by_edge(self):
        inst = instance(cycle_graph(4), K2)
        r2, r5 = math.sqrt(2), math.sqrt(5)
        expected = sorted([0, 2 - r2, 2 - r2, 3 - r5, 2, 2 + r2, 2 + r2, 3 + r5])
        np.testing.assert_allclose(inst.predicted_eigenvalues(), expected, atol=1e-13)
        np.testing.assert_allclose(np.linalg.eigvalsh(inst.H.entries), expected, atol=1e-13)
        assert_all_pass(verify_spectral_map(inst))

    def test_four_cycle_by_triangle(self):
        inst = instance(cycle_graph(4), K3)
        # gamma(E) = lambda  <=>  E^2 - (3 + lambda) E + lambda = 0
        roots = []
        for lam in (0, 2, 2, 4):
            disc = math.sqrt((3 + lam) ** 2 - 4 * lam)
            roots += [(3 + lam - disc) / 2, (3 + lam + disc) / 2]
        expected = sorted(roots + [3.0] * 4)
        np.testing.assert_allclose(inst.predicted_eigenvalues(), expected, atol=1e-12)
        assert_all_pass(verify_spectral_map(inst))

    def test_incompatible_operator_marks_failure(self):
        base = Graph(2)
        bad = SymmetricOperator([[0.0, 0.5], [0.5, 0.0]])
        inst = Instance(base, bad, K2, laplacian(K2.graph))
        report = verify_spectral_map(inst)
        assert not report.check("compatibility").passed
        assert not report.passed


class TestGreenRelation:
    def test_single_vertex_by_edge(self):
        z = 1j
        lhs = np.linalg.inv(np.array([[1, -1], [-1, 1]]) - z * np.eye(2))[0, 0]
        gamma = z - 1 + 1 / (1 - z)
        assert lhs == pytest.approx(-1 / gamma, abs=1e-12)
        report = verify_green_relation(instance(single_vertex(), K2), z_samples=[z])
        assert report.check("green_relation").max_error <= 1e-12

    def test_path_by_triangle(self, rng):
        report = verify_green_relation(instance(path_graph(5), K3), z_samples=sample_z(rng, 2.0, 4.0))
        assert_all_pass(report)
        assert report.check("green_relation").max_error <= 1e-9

    def test_conjugate_symmetry(self, rng):
        report = verify_green_relation(fixed_instance(), z_samples=sample_z(rng, 0.0, 3.0, 5))
        assert report.check("green_conjugate_symmetry").max_error <= 1e-12


class TestMeasureRelation:
    def test_single_vertex_by_edge(self):
        inst = instance(single_vertex(), K2)
        mu_t = spectral_measure_at(inst.H, [1.0, 0.0])
        np.testing.assert_allclose(mu_t.atoms, [(0, 0.5), (2, 0.5)], atol=1e-14)
        assert inst.gamma.derivative(0.0) == pytest.approx(2.0)
        assert inst.gamma.derivative(2.0) == pytest.approx(2.0)
        assert_all_pass(verify_measure_relation(inst))

    def test_trivial_decoration_is_identity(self):
        base = cycle_graph(4)
        inst = Instance(base, laplacian(base), RootedGraph(single_vertex(), 0), SymmetricOperator([[0.0]]))
        assert inst.gamma.n == 0
        for x in range(4):
            e = np.eye(4)[x]
            assert spectral_measure_at(inst.H, e).atoms == spectral_measure_at(inst.H_o, e).atoms
        assert_all_pass(verify_measure_relation(inst))

    def test_four_cycle_by_triangle(self):
        report = verify_measure_relation(instance(cycle_graph(4), K3))
        assert_all_pass(report)
        assert report.check("measure_relation_atoms").max_error <= 1e-8


class TestLift:
    def test_root_value_is_one(self):
        A = laplacian(complete_graph(3))
        psi = lift_eigenfunction([1.0], 0.5, A, 0)
        assert psi[0] == pytest.approx(1.0, abs=1e-15)

    def test_single_vertex_by_edge(self):
        A = laplacian(complete_graph(2))
        psi = lift_eigenfunction([1.0], 2.0, A, 0)
        np.testing.assert_allclose(psi, [1.0, -1.0], atol=1e-14)
        H = np.array([[1.0, -1.0], [-1.0, 1.0]])
        np.testing.assert_allclose(H @ psi, 2 * psi, atol=1e-14)

    def test_four_cycle_top_mode(self):
        base = laplacian(cycle_graph(4))
        A = laplacian(complete_graph(2))
        psi = np.array([1.0, -1.0, 1.0, -1.0])
        np.testing.assert_allclose(base.entries @ psi, 4 * psi)
        E = 3 + math.sqrt(5)
        Psi = lift_eigenfunction(psi, E, A, 0)
        H = build_decorated_operator(base, A, 0, 4).entries
        assert np.linalg.norm(H @ Psi - E * Psi) <= 1e-9 * np.linalg.norm(Psi)

    def test_pole_rejected(self):
        with pytest.raises(PoleError):
            lift_eigenfunction([1.0], 1.0, laplacian(complete_graph(2)), 0)


class TestCampaign:
    def test_fixed_instance(self):
        report = run_campaign(1, 1, instances=[fixed_instance()])
        assert report["summary"] == {"passed": 1, "failed": 0}

    def test_empty(self):
        assert run_campaign(3, 0) == {"seed": 3, "cases": [], "summary": {"passed": 0, "failed": 0}}

    def test_deterministic(self):
        assert run_campaign(11, 4) == run_campaign(11, 4)

    def test_case_independent_of_count(self):
        assert run_campaign(5, 3)["cases"][:2] == run_campaign(5, 2)["cases"]

    def test_gamma_identities_on_random_symmetric(self, rng):
        a = rng.uniform(-1, 1, (4, 4))
        A = SymmetricOperator(a + a.T)
        inst = Instance(single_vertex(), SymmetricOperator([[0.3]]), RootedGraph(complete_graph(4), 2), A)
        assert_all_pass(verify_gamma_identities(inst, z_samples=sample_z(rng, 0, 3)))
