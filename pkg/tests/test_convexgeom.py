import itertools

import numpy as np
import pytest

from jordantp import (
    InfeasiblePointError,
    PolytopeStateSpace,
    check_extreme_affinity,
    e_omega_value,
    get_model,
    induced_affine_model,
    polytope_from_csv,
    smooth_ball_e_omega,
    verify_atom_state_uniqueness,
    verify_certainty_order,
    vertex_tp_matrix,
)

TRIANGLE = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
PENTAGON = np.array([[np.cos(2.0 * np.pi * k / 5 + np.pi / 2),
                      np.sin(2.0 * np.pi * k / 5 + np.pi / 2)] for k in range(5)])


def e_omega_by_enumeration(verts, omega_index, zeta):
    """Oracle: minimize c + f . zeta by enumerating basic feasible points of
    the vertex-value constraints; independent of the LP solver."""
    verts = np.asarray(verts, dtype=float)
    n_var = verts.shape[1] + 1
    rows = []
    for v in verts:
        rows.append((np.concatenate([[-1.0], -v]), 0.0))
        rows.append((np.concatenate([[1.0], v]), 1.0))
    eq_row = np.concatenate([[1.0], verts[omega_index]])
    objective = np.concatenate([[1.0], np.asarray(zeta, dtype=float)])
    best = np.inf
    for combo in itertools.combinations(range(len(rows)), n_var - 1):
        a = np.vstack([eq_row] + [rows[i][0] for i in combo])
        b = np.array([1.0] + [rows[i][1] for i in combo])
        if abs(np.linalg.det(a)) < 1e-12:
            continue
        z = np.linalg.solve(a, b)
        if all(np.dot(normal, z) <= rhs + 1e-9 for normal, rhs in rows):
            best = min(best, float(np.dot(objective, z)))
    return best


def test_triangle_vertex_values():
    poly = PolytopeStateSpace(TRIANGLE)
    assert e_omega_value(poly, 0, TRIANGLE[1]) == pytest.approx(0.0, abs=1e-10)
    assert e_omega_value(poly, 0, TRIANGLE[2]) == pytest.approx(0.0, abs=1e-10)
    assert e_omega_value(poly, 0, TRIANGLE[0]) == pytest.approx(1.0, abs=1e-12)


def test_square_corner_and_center():
    poly = PolytopeStateSpace(SQUARE)
    # the two edge functions force zero at every other corner
    for j in (1, 2, 3):
        assert e_omega_value(poly, 0, SQUARE[j]) == pytest.approx(0.0, abs=1e-10)
    assert e_omega_value(poly, 0, [0.5, 0.5]) == pytest.approx(0.5, abs=1e-10)


def test_lp_matches_enumeration_oracle():
    rng = np.random.default_rng(23)
    for verts in (TRIANGLE, SQUARE, PENTAGON):
        poly = PolytopeStateSpace(verts)
        for w in range(len(verts)):
            for _ in range(4):
                lam = rng.dirichlet(np.ones(len(verts)))
                zeta = verts.T @ lam
                got = e_omega_value(poly, w, zeta)
                want = e_omega_by_enumeration(verts, w, zeta)
                assert got == pytest.approx(want, abs=1e-9)


def test_triangle_passes_affinity():
    reports = check_extreme_affinity(PolytopeStateSpace(TRIANGLE), midpoint_samples=32)
    assert all(r.passes for r in reports)
    assert max(r.affinity_defect for r in reports) <= 1e-9
    # e_omega are the barycentric coordinates: 1 at omega, 0 elsewhere
    for r in reports:
        values = np.array(r.values_at_vertices)
        assert values[r.omega_index] == pytest.approx(1.0, abs=1e-12)
        assert np.max(np.delete(values, r.omega_index)) <= 1e-10


def test_square_fails_with_half_defect():
    reports = check_extreme_affinity(PolytopeStateSpace(SQUARE), midpoint_samples=16)
    assert not any(r.passes for r in reports)
    for r in reports:
        # the diagonal midpoint representation exposes the non-affinity
        assert r.affinity_defect == pytest.approx(0.5, abs=1e-6)


@pytest.mark.parametrize("dim", [3, 4])
def test_simplices_pass(dim):
    verts = np.vstack([np.zeros(dim), np.eye(dim)])
    reports = check_extreme_affinity(PolytopeStateSpace(verts), midpoint_samples=16)
    assert all(r.passes for r in reports)
    assert max(r.affinity_defect for r in reports) <= 1e-9


def test_pentagon_fails_with_positive_defect():
    reports = check_extreme_affinity(PolytopeStateSpace(PENTAGON), midpoint_samples=16)
    assert not any(r.passes for r in reports)
    defect = max(r.affinity_defect for r in reports)
    # golden-ratio geometry: the worst midpoint defect is sqrt(5) - 2
    assert defect == pytest.approx(np.sqrt(5.0) - 2.0, abs=1e-9)


def test_e_omega_below_feasible_functions():
    # pointwise infimum: e_omega never exceeds a feasible affine function
    poly = PolytopeStateSpace(SQUARE)
    feasible = [(0.0, np.array([1.0, 0.0])),   # 1 on the right edge, 0 on the left
                (0.0, np.array([0.0, 1.0]))]   # 1 on the top edge, 0 on the bottom
    rng = np.random.default_rng(3)
    for c, f in feasible:
        assert c + np.dot(f, SQUARE[2]) == 1.0  # pinned at omega_2
        for _ in range(8):
            lam = rng.dirichlet(np.ones(4))
            zeta = SQUARE.T @ lam
            assert e_omega_value(poly, 2, zeta) <= c + np.dot(f, zeta) + 1e-9


def test_infeasible_point_raises():
    poly = PolytopeStateSpace(TRIANGLE)
    with pytest.raises(InfeasiblePointError):
        e_omega_value(poly, 0, [2.0, 2.0])


def test_polytope_validation():
    with pytest.raises(ValueError):
        PolytopeStateSpace([[0.0, 0.0]])
    with pytest.raises(ValueError):
        PolytopeStateSpace([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
    with pytest.raises(ValueError):  # the center is not extreme
        PolytopeStateSpace(np.vstack([SQUARE, [0.5, 0.5]]))


def test_polytope_csv(tmp_path):
    path = tmp_path / "triangle.csv"
    np.savetxt(path, TRIANGLE, delimiter=",")
    poly = polytope_from_csv(path)
    assert poly.n_vertices == 3


def test_disk_analytic_endpoints_exact():
    disk = get_model("lpq", 2, 2.0)
    rng = np.random.default_rng(9)
    for _ in range(10):
        omega = disk.random_atom_param(rng)
        assert smooth_ball_e_omega(disk, omega, -omega) == 0.0
        assert smooth_ball_e_omega(disk, omega, omega) == 1.0


def test_lp_ball_p3_example():
    ball = get_model("lpq", 2, 3.0)
    got = smooth_ball_e_omega(ball, np.array([1.0, 0.0]), np.array([0.0, 1.0]))
    assert got == pytest.approx(0.5, abs=1e-12)


def test_smooth_ball_validates_inputs():
    ball = get_model("lpq", 2, 3.0)
    with pytest.raises(Exception):
        smooth_ball_e_omega(ball, np.array([0.5, 0.0]), np.array([0.0, 0.0]))
    with pytest.raises(ValueError):
        smooth_ball_e_omega(ball, np.array([1.0, 0.0]), np.array([3.0, 0.0]))


def test_simplex_classicality_tp_identity():
    for verts in (TRIANGLE, np.vstack([np.zeros(3), np.eye(3)])):
        mat = vertex_tp_matrix(PolytopeStateSpace(verts))
        np.testing.assert_allclose(mat, np.eye(len(verts)), atol=1e-9)


def test_induced_model_on_triangle():
    model = induced_affine_model(PolytopeStateSpace(TRIANGLE))
    assert model.kind == "polytope_affine"
    assert model.ambient_dim == 3
    for check in verify_atom_state_uniqueness(model, 1, 30):
        assert check.passed, check
    for check in verify_certainty_order(model, 2, 30):
        assert check.passed, check


def test_induced_model_rejects_square():
    with pytest.raises(ValueError):
        induced_affine_model(PolytopeStateSpace(SQUARE), midpoint_samples=8)


def test_affine_function_and_vertex_value_map():
    from jordantp import AffineFunction
    func = AffineFunction(0.5, np.array([1.0, -1.0]))
    assert func([0.25, 0.25]) == pytest.approx(0.5)
    model = induced_affine_model(PolytopeStateSpace(TRIANGLE))
    element = model.affine_to_element(func)
    np.testing.assert_allclose(element.coords, [0.5, 1.5, -0.5])


def test_e_omega_report_values_in_unit_range():
    reports = check_extreme_affinity(PolytopeStateSpace(PENTAGON), midpoint_samples=8)
    for r in reports:
        values = np.array(r.values_at_vertices)
        assert np.all(values >= -1e-9) and np.all(values <= 1.0 + 1e-9)


def test_uncapped_infimum_variant():
    # restricting competitors to unit effects never changes the verdict and
    # never changes values on passing shapes; on failing shapes the bare
    # infimum over nonnegative pinned functions can dip lower
    tri = PolytopeStateSpace(TRIANGLE)
    rng = np.random.default_rng(31)
    for _ in range(6):
        lam = rng.dirichlet(np.ones(3))
        zeta = TRIANGLE.T @ lam
        capped = e_omega_value(tri, 0, zeta)
        bare = e_omega_value(tri, 0, zeta, unit_capped=False)
        assert capped == pytest.approx(bare, abs=1e-9)

    sq = PolytopeStateSpace(SQUARE)
    assert e_omega_value(sq, 0, [0.5, 0.5], unit_capped=False) == pytest.approx(0.5, abs=1e-9)

    pent = PolytopeStateSpace(PENTAGON)
    capped_reports = check_extreme_affinity(pent, midpoint_samples=8)
    bare_reports = check_extreme_affinity(pent, midpoint_samples=8, unit_capped=False)
    assert not any(r.passes for r in capped_reports)
    assert not any(r.passes for r in bare_reports)
    # golden-ratio pair: capped defect sqrt(5) - 2, bare defect (sqrt(5) - 1)/2
    assert max(r.affinity_defect for r in capped_reports) == pytest.approx(
        np.sqrt(5.0) - 2.0, abs=1e-9)
    assert max(r.affinity_defect for r in bare_reports) == pytest.approx(
        (np.sqrt(5.0) - 1.0) / 2.0, abs=1e-9)

    for dim in (2, 3):
        simplex = PolytopeStateSpace(np.vstack([np.zeros(dim), np.eye(dim)]))
        reports = check_extreme_affinity(simplex, midpoint_samples=8, unit_capped=False)
        assert all(r.passes for r in reports)
