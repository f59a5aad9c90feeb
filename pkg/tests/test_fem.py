import math

import numpy as np
import pytest
import scipy.sparse as sparse

from helpers import random_hulls, transformed
from neumannlab.errors import ConnectivityError, PreconditionError
from neumannlab.fem import (Spectrum, assemble, default_levels,
                            neumann_spectrum, solve_smallest)
from neumannlab.geometry import ConvexPolygon
from neumannlab.mesh import TriMesh, refine, triangulate

UNIT_SQUARE = ConvexPolygon([(0, 0), (1, 0), (1, 1), (0, 1)])
PI2 = math.pi ** 2


def reference_triangle_mesh():
    return TriMesh(np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),
                   np.array([[0, 1, 2]]),
                   np.array([[0, 1], [1, 2], [2, 0]]))


class TestAssemble:
    def test_element_stiffness_by_hand(self):
        # gradients of the barycentric basis on the unit right triangle are
        # (-1,-1), (1,0), (0,1); K_ij = area * grad_i . grad_j
        stiffness, _ = assemble(reference_triangle_mesh())
        expected = 0.5 * np.array([[2.0, -1.0, -1.0],
                                   [-1.0, 1.0, 0.0],
                                   [-1.0, 0.0, 1.0]])
        np.testing.assert_allclose(stiffness.toarray(), expected, atol=1e-15)

    def test_element_mass_by_hand(self):
        # exact barycentric moments: area/12 * (1 + delta_ij), area = 1/2
        _, mass = assemble(reference_triangle_mesh())
        expected = (np.ones((3, 3)) + np.eye(3)) / 24.0
        np.testing.assert_allclose(mass.toarray(), expected, atol=1e-15)

    def test_stiffness_rows_sum_to_zero(self):
        mesh = refine(triangulate(ConvexPolygon.regular(7)), 2)
        stiffness, mass = assemble(mesh)
        np.testing.assert_allclose(np.asarray(stiffness.sum(axis=1)).ravel(),
                                   0.0, atol=1e-12)
        # mass integrates 1 over the domain
        assert mass.sum() == pytest.approx(ConvexPolygon.regular(7).area,
                                           rel=1e-12)

    def test_matrices_symmetric(self):
        mesh = refine(triangulate(UNIT_SQUARE), 2)
        stiffness, mass = assemble(mesh)
        assert abs(stiffness - stiffness.T).max() == 0.0
        assert abs(mass - mass.T).max() == 0.0

    def test_degenerate_triangle_rejected(self):
        from neumannlab.errors import InvalidGeometryError

        # second triangle has area 5e-17, far below 1e-14 x domain area
        mesh = TriMesh(
            np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.5, 1e-16]]),
            np.array([[0, 1, 3], [0, 1, 2]]),
            np.array([[1, 2], [2, 0]]),
        )
        with pytest.raises(InvalidGeometryError):
            assemble(mesh)


class TestSolveSmallest:
    def test_diagonal_pencil(self):
        k = sparse.csr_matrix(np.diag([0.0, 1.0, 4.0]))
        m = sparse.identity(3, format="csr")
        spec = solve_smallest(k, m, 2, domain="diag")
        np.testing.assert_allclose(spec.values, [0.0, 1.0, 4.0], atol=1e-12)

    def test_m_too_large_rejected(self):
        k = sparse.csr_matrix(np.diag([0.0, 1.0, 4.0]))
        m = sparse.identity(3, format="csr")
        with pytest.raises(PreconditionError):
            solve_smallest(k, m, 3)

    def test_disconnected_mesh_raises_connectivity_error(self):
        mesh = TriMesh(
            np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0],
                      [5.0, 5.0], [6.0, 5.0], [5.0, 6.0]]),
            np.array([[0, 1, 2], [3, 4, 5]]),
            np.array([[0, 1]]),
        )
        stiffness, mass = assemble(mesh)
        with pytest.raises(ConnectivityError):
            solve_smallest(stiffness, mass, 2)

    def test_thin_strip_is_one_dimensional(self):
        # the flattened fan converges cleanly but needs an extra level
        strip = ConvexPolygon.rectangle(1.0, 0.05)
        spec = neumann_spectrum(strip, 1, levels=7)
        assert spec.lam(1) == pytest.approx(PI2, rel=0.01)

    def test_unit_square_multiplicity_two(self):
        spec = neumann_spectrum(UNIT_SQUARE, 2, levels=5)
        assert abs(spec.lam(1) - spec.lam(2)) <= 0.005 * spec.lam(1)

    def test_iterative_path_matches_dense(self):
        # same operator just above and below the dense cutoff by refining
        spec_dense = neumann_spectrum(UNIT_SQUARE, 3, levels=5)   # 2113 > 2000
        assert spec_dense.vertex_count > 2000  # sanity: iterative path
        spec_small = neumann_spectrum(UNIT_SQUARE, 3, levels=4)   # 545 dense
        assert spec_small.vertex_count <= 2000
        for k in (1, 2, 3):
            assert spec_dense.lam(k) == pytest.approx(spec_small.lam(k),
                                                      rel=5e-3)


class TestNeumannSpectrum:
    def test_unit_square_closed_form(self):
        spec = neumann_spectrum(UNIT_SQUARE, 5, levels=6)
        exact = PI2 * np.array([0, 1, 1, 2, 4, 4])
        assert spec.vertex_count >= 5000
        np.testing.assert_allclose(spec.values[1:], exact[1:], rtol=0.01)

    def test_rectangle_closed_form(self):
        spec = neumann_spectrum(ConvexPolygon.rectangle(1.0, 2.0), 4, levels=6)
        exact = PI2 * np.array([0, 0.25, 1, 1, 1.25])
        np.testing.assert_allclose(spec.values[1:], exact[1:], rtol=0.01)

    def test_triangle_self_convergence(self):
        tri = ConvexPolygon([(0, 0), (1, 0), (0.52, 0.85)])
        coarse = neumann_spectrum(tri, 1, levels=4)
        fine = neumann_spectrum(tri, 1, levels=6)
        # Richardson extrapolation from the two finest levels of `fine`
        assert coarse.lam(1) == pytest.approx(fine.lam(1), rel=0.005)

    def test_refinement_monotone_from_above(self):
        values = [neumann_spectrum(UNIT_SQUARE, 3, levels=lvl).values[1:]
                  for lvl in (2, 3, 4)]
        assert np.all(values[1] <= values[0] * (1 + 1e-12))
        assert np.all(values[2] <= values[1] * (1 + 1e-12))

    def test_scaling_law(self):
        spec1 = neumann_spectrum(UNIT_SQUARE, 3, levels=4)
        spec3 = neumann_spectrum(UNIT_SQUARE.scaled(3.0), 3, levels=4)
        np.testing.assert_allclose(spec3.values[1:], spec1.values[1:] / 9.0,
                                   rtol=1e-9)

    def test_rigid_motion_invariance(self):
        (hull,) = random_hulls(1, seed=5, points=10)
        a = neumann_spectrum(hull, 3, levels=3)
        b = neumann_spectrum(transformed(hull, 1.1, (4.0, -2.0)), 3, levels=3)
        np.testing.assert_allclose(a.values[1:], b.values[1:], rtol=1e-8)

    def test_values_sorted_and_zero_mode(self):
        spec = neumann_spectrum(ConvexPolygon.regular(5), 4, levels=3)
        assert np.all(np.diff(spec.values) >= 0)
        assert spec.values[0] <= spec.tol_zero

    def test_error_proxy_recorded(self):
        spec = neumann_spectrum(UNIT_SQUARE, 3, levels=4)
        assert spec.error_proxy is not None
        assert 0 <= spec.error_proxy < 0.05

    def test_default_levels_target(self):
        lvl = default_levels(UNIT_SQUARE)
        spec = neumann_spectrum(UNIT_SQUARE, 1, levels=lvl)
        assert 5000 <= spec.vertex_count <= 50000

    def test_json_contract(self):
        spec = neumann_spectrum(UNIT_SQUARE, 2, levels=3)
        doc = spec.to_json()
        assert set(doc) == {"domain", "n", "vertex_count", "values"}
        assert len(doc["values"]) == 3


class TestSpectrumType:
    def test_lam_accessor_bounds(self):
        spec = Spectrum(np.array([0.0, 1.0, 2.0]), n=2, domain="x",
                        vertex_count=None)
        assert spec.lam(0) == 0.0
        assert spec.lam(2) == 2.0
        with pytest.raises(PreconditionError):
            spec.lam(3)

    def test_unsorted_rejected(self):
        with pytest.raises(PreconditionError):
            Spectrum(np.array([0.0, 2.0, 1.0]), n=2, domain="x",
                     vertex_count=None)

    def test_nonzero_first_mode_rejected(self):
        with pytest.raises(PreconditionError):
            Spectrum(np.array([0.5, 1.0, 2.0]), n=2, domain="x",
                     vertex_count=None)
