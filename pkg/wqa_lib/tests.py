from .errors import ConfigError, NongenericMapError, PreconditionError
from .mat2 import Mat2
from .pwlmap import (
    MapParams, ParameterId, Partition, Point2, branch_matrix, critical_lines, fixed_points,
    inverse_images, iterate_orbit, partition_of, step,
)
from .symbolicsequence import (
    EigenKind, SymbolicSequence, all_words, basic_closed_form, char_poly_at, closed_form_slope,
    composite_matrix, eigen2, eigen_slope_at_one, fixed_point_of_composite, recurrence_a, recurrence_b,
)
from .invariantsets import (
    AdmissibilityStatus, BoundaryFamily, FamilyKind, admissible_interval, bisect_root, boundary_residual,
    boundary_roots, cycle_at_infinity, degenerate_set_at, divergence_membership, segment_set_at,
    trace_boundary_curve,
)
from .classifier import (
    AttractorFingerprint, AttractorRegistry, BoundaryKind, ClassifyOptions, InvertibilityType, OrbitKind,
    PhaseGrid, StabilityKind, attractor_points, basin_grid, classify_orbit, fixed_point_stability,
    invertibility_type, is_cyclic_under, lyapunov_max, newton_periodic_search, zone_of_point,
)
from .scanner import (
    CellClass, ScanAxis, ScanGrid, ScanSpec, classify_cell, overlay_boundaries, record_dtype, scan_1d, scan_2d,
    seed_points,
)
from .config import RunConfig
from .examples import Examples
from . import orbitkernels as kernels
from . import render
from . import cli

import csv
import math
import os
import tempfile

import numpy as np
import pytest

# Small iteration budgets for the fast suite.
QUICK = ClassifyOptions(max_iter=3000, transient=100, fingerprint_samples=2000)

def all_tests(slow=False):
    mat2_tests()
    pwlmap_tests()
    symbolic_sequence_tests()
    composite_matrix_tests()
    boundary_residual_tests()
    boundary_root_tests()
    segment_set_tests()
    cycle_at_infinity_tests()
    boundary_curve_tests()
    stability_tests()
    stability_triangle_tests()
    invertibility_tests()
    orbit_classification_tests()
    lyapunov_tests()
    orbit_kernel_tests()
    fingerprint_tests()
    periodic_search_tests()
    basin_tests()
    scanner_tests()
    render_tests()
    config_tests()
    cli_tests()
    if slow:
        slow_segment_set_checks()
        slow_regime_checks()
        slow_no_hyperbolic_cycle_checks()
        slow_z0_avoidance_checks()
        slow_lyapunov_checks()
        slow_two_wqa_checks()
        slow_scan_checks()
        slow_boundary_agreement_checks()

def _root(family, params, axis, lo, hi):
    roots = boundary_roots(family, params, axis, (lo, hi))
    assert len(roots) >= 1, f"{family} has no root in [{lo}, {hi}] at {params}."
    return roots

def _closest(roots, target):
    return min(roots, key=lambda r: abs(r - target))

def _on_curve(name, kind, n, axis, lo, hi, target):
    p = Examples.get_params(name)
    family = BoundaryFamily(kind, n)
    root = _closest(_root(family, p, axis, lo, hi), target)
    return p.with_value(axis, root), family

# TESTS FOR THE MAP

def mat2_tests():
    print("Testing Mat2 class.")

    M = Mat2(1.0, 2.0, 3.0, 4.0)
    assert M.det() == -2.0 and M.trace() == 5.0, "det or trace is wrong."
    assert M @ Mat2.identity() == M and Mat2.identity() @ M == M, "identity is not neutral."
    assert (M @ M).as_tuple() == (7.0, 10.0, 15.0, 22.0), "matrix product is wrong."
    assert M.apply(1.0, -1.0) == (-1.0, -1.0), "apply is wrong."
    assert Mat2.from_array(M.as_array()) == M, "array conversion is broken."
    assert M.minus_identity() == Mat2(0.0, 2.0, 3.0, 3.0), "minus_identity is wrong."

    try:
        Mat2(math.inf, 0.0, 0.0, 1.0)
        assert False, "Non-finite entries should be rejected."
    except ValueError:
        pass

    print("Mat2 tests complete.\n")

def pwlmap_tests():
    print("Testing the map F.")

    p = MapParams(0.9, 0.7, -2.0, 1.16)

    assert partition_of(Point2(-2, 0)) is Partition.L, "(-2, 0) should be in L."
    assert partition_of(Point2(0, 0)) is Partition.R, "(0, 0) should be in R."
    assert partition_of(Point2(-1, 5)) is Partition.R, "The border line belongs to R."
    try:
        partition_of(Point2(math.nan, 0.0))
        assert False, "Non-finite points have no partition."
    except PreconditionError:
        pass

    JL = branch_matrix(p, Partition.L)
    assert JL == Mat2(-2.0, 1.0, -0.9, 0.0), f"J_L is wrong: {JL}."
    assert JL.det() == p.delta_L and JL.trace() == p.tau_L, "J_L does not have det delta_L and trace tau_L."
    assert branch_matrix(p, Partition.R) == Mat2(1.16, 1.0, -0.7, 0.0), "J_R is wrong."

    assert step(p, Point2(0, 0)) == Point2(0.0, 0.0), "O should be fixed."
    q = step(p, Point2(-2, 0.5))
    assert math.isclose(q.x, 4.5) and math.isclose(q.y, 1.8), f"F_L(-2, 0.5) should be (4.5, 1.8), got {q}."
    q = step(p, Point2(1, 1))
    assert math.isclose(q.x, 2.16) and math.isclose(q.y, -0.7), f"F_R(1, 1) should be (2.16, -0.7), got {q}."

    # branch linearity
    for base, alpha in ((Point2(2.0, 1.0), 3.0), (Point2(-3.0, 0.5), 2.5), (Point2(-0.5, 4.0), 0.25)):
        lhs = step(p, base.scaled(alpha))
        rhs = step(p, base).scaled(alpha)
        assert math.isclose(lhs.x, rhs.x, abs_tol=1e-12) and math.isclose(lhs.y, rhs.y, abs_tol=1e-12), \
            f"F is not linear along the ray of {base}."

    # step agrees with the branch matrix
    for point in (Point2(-4.0, 1.0), Point2(3.0, -2.0), Point2(-1.0, 0.3)):
        expected = branch_matrix(p, partition_of(point)).apply(point.x, point.y)
        assert step(p, point).as_tuple() == expected, f"step disagrees with the branch matrix at {point}."

    orbit = iterate_orbit(p, Point2(0, 0), 10)
    assert len(orbit) == 11 and not orbit.escaped(), "Orbit of O should have 11 points."
    assert all(q.norm() == 0.0 for q in orbit.points), "Orbit of O should stay at O."
    assert orbit.itinerary_word() == "R"*11, "Orbit of O should stay in R."

    spiral = iterate_orbit(MapParams(0.9, 0.7, -2.0, 1.5), Point2(0.1, 0.1), 300)
    assert spiral.points[-1].norm() < 1e-6, "The attracting focus should pull (0.1, 0.1) to O."

    expanding = MapParams(0.9, 0.7, -2.0, 3.0)
    lam = (3.0 + math.sqrt(9.0 - 2.8))/2.0
    escaping = iterate_orbit(expanding, Point2(1.0, lam - 3.0), 50, escape_radius=1e3)
    assert escaping.escaped(), "A point on the unstable eigenline should escape."
    assert len(escaping) == escaping.escaped_at, "The escaped point should not be stored."

    try:
        iterate_orbit(p, Point2(0, 0), 0)
        assert False, "n_steps = 0 should be rejected."
    except PreconditionError:
        pass

    assert inverse_images(p, Point2(0, 0.8)) == [], "(0, 0.8) is in Z_0 for delta = (0.9, 0.7)."
    assert len(inverse_images(p, Point2(0, 0))) == 1, "O should have exactly one preimage."
    q = MapParams(0.9, 1.1, -2.5, -0.7)
    assert len(inverse_images(q, Point2(0, 1.0))) == 2, "(0, 1) is in Z_2 for delta = (0.9, 1.1)."
    rng = np.random.default_rng(1)
    for x, y in rng.uniform(-5, 5, size=(200, 2)):
        for pre in inverse_images(p, Point2(x, y)):
            image = step(p, pre)
            assert math.isclose(image.x, x, rel_tol=1e-9, abs_tol=1e-9) and \
                math.isclose(image.y, y, rel_tol=1e-9, abs_tol=1e-9), f"Preimage of {(x, y)} does not map back."
    try:
        inverse_images(MapParams(0.0, 0.7, -2.0, 1.16), Point2(0, 0))
        assert False, "delta_L = 0 should be rejected."
    except NongenericMapError:
        pass

    assert critical_lines(p) == (0.9, 0.7), "Critical lines are y = delta_L and y = delta_R."
    assert fixed_points(p) == [Point2(0.0, 0.0)], "O should be the only fixed point."

    try:
        MapParams(0.9, math.inf, 0.0, 0.0)
        assert False, "Non-finite parameters should be rejected."
    except PreconditionError:
        pass
    assert MapParams.parse("0.9,0.7,-2,1.16") == p, "Parameter parsing is broken."
    assert p.mirrored().mirrored() == p, "Mirroring twice should be the identity."
    assert p.with_value("tR", 1.1).tau_R == 1.1 and ParameterId.parse("delta_L") is ParameterId.DELTA_L, \
        "Parameter ids are broken."

    print("Map tests complete.\n")

# TESTS FOR SYMBOLIC SEQUENCES AND COMPOSITE MAPS

def symbolic_sequence_tests():
    print("Testing SymbolicSequence class.")

    s = SymbolicSequence("LR^4")
    assert len(s) == 5 and s.word == "LRRRR" and str(s) == "LR^4", "LR^4 is not parsed correctly."
    assert SymbolicSequence.basic(5) == s, "basic(5) should be LR^4."
    assert SymbolicSequence.complementary(5) == SymbolicSequence("LLRRR"), "complementary(5) should be L^2R^3."
    assert SymbolicSequence.basic(5, Partition.R) == SymbolicSequence("RL^4"), "basic(5, R) should be RL^4."
    assert s.mirrored() == SymbolicSequence("RL^4"), "Mirroring is broken."
    assert s.count(Partition.R) == 4 and s[0] is Partition.L, "Letter access is broken."
    assert s.rotation(1) == SymbolicSequence("R^4L") and s.rotation(1).is_rotation_of(s), "Rotations are broken."
    assert len(set(s.rotations())) == 5, "LR^4 has five distinct rotations."
    assert SymbolicSequence([Partition.L, Partition.R]) == SymbolicSequence("LR"), "Iterable construction is broken."

    for bad in ("", "L^65", "R"*65):
        try:
            SymbolicSequence(bad)
            assert False, f"{bad!r} should be rejected."
        except PreconditionError:
            pass
    try:
        SymbolicSequence("LXR")
        assert False, "Unknown letters should be rejected."
    except ValueError:
        pass

    words = all_words(2, 6)
    assert len(words) == 124 and len(set(words)) == 124, f"There are 124 words of length 2 to 6, got {len(words)}."
    assert words[0] == SymbolicSequence("LL") and words[-1] == SymbolicSequence("R^6"), "Word order is wrong."

    print("SymbolicSequence tests complete.\n")

def composite_matrix_tests():
    print("Testing composite matrices.")

    p = MapParams(0.9, 0.7, 1.2, -2.0)
    assert recurrence_a(p, -1) == 0.0 and recurrence_a(p, 0) == 1.0, "Initial values of a_k are wrong."
    assert math.isclose(recurrence_a(p, 2), 3.3), "a_2 = tau_R^2 - delta_R."
    assert math.isclose(recurrence_b(p, 2), 1.2*1.2 - 0.9), "b_2 = tau_L^2 - delta_L."
    # J_R^(n-1) = [[a_{n-1}, a_{n-2}], [-delta_R a_{n-2}, -delta_R a_{n-3}]] for 3 <= n <= 20
    rng = np.random.default_rng(12)
    for dL, dR, tL, tR in rng.uniform(-2, 2, size=(100, 4)):
        q = MapParams(dL, dR, tL, tR)
        JR = branch_matrix(q, Partition.R)
        norm = math.hypot(*JR.as_tuple())
        power = JR
        for n in range(3, 21):
            power = JR @ power
            expected = Mat2(recurrence_a(q, n - 1), recurrence_a(q, n - 2),
                            -dR*recurrence_a(q, n - 2), -dR*recurrence_a(q, n - 3))
            assert power.is_close(expected, 1e-9, 1e-12*norm**(n - 1)), \
                f"J_R^{n - 1} does not match the recurrence at {q}."
    try:
        recurrence_a(p, 65)
        assert False, "Recurrence indices beyond the word length cap should be rejected."
    except PreconditionError:
        pass

    J = composite_matrix(p, "LR")
    assert J == branch_matrix(p, Partition.R) @ branch_matrix(p, Partition.L), "L must be applied first."

    rng = np.random.default_rng(2)
    for dL, dR, tL, tR in rng.uniform(-2, 2, size=(30, 4)):
        q = MapParams(dL, dR, tL, tR)
        for n in range(2, 9):
            assert basic_closed_form(q, n).is_close(composite_matrix(q, SymbolicSequence.basic(n)), 1e-9, 1e-9), \
                f"Closed form of J_LR^{n - 1} is wrong at {q}."

    # det J_sigma = delta_L^#L delta_R^#R, one random draw per word up to length 12
    rng = np.random.default_rng(13)
    for sigma, (dL, dR, tL, tR) in zip(all_words(1, 12), rng.uniform(-2, 2, size=(8190, 4))):
        q = MapParams(dL, dR, tL, tR)
        scale = 1.0
        for letter in sigma:
            scale *= math.hypot(*branch_matrix(q, letter).as_tuple())
        expected = dL**sigma.count(Partition.L)*dR**sigma.count(Partition.R)
        assert abs(composite_matrix(q, sigma).det() - expected) <= 1e-12*scale**2, \
            f"det J_{sigma} is not the product of the determinants at {q}."

    eig = eigen2(Mat2(1.16, 1.0, -0.7, 0.0))
    assert eig.kind is EigenKind.COMPLEX_CONJUGATE and math.isclose(abs(eig.lambda1)**2, 0.7), \
        "J_R at tau_R = 1.16 has complex eigenvalues of modulus sqrt(0.7)."
    eig = eigen2(Mat2(3.0, 1.0, -0.7, 0.0))
    lam = (3.0 + math.sqrt(9.0 - 2.8))/2.0
    assert eig.kind is EigenKind.REAL_DISTINCT and math.isclose(eig.lambda1.real, lam), "Real eigenvalues are wrong."
    assert math.isclose(eig.slope1, lam - 3.0), "Eigenvector slope is wrong."
    assert eigen2(Mat2.identity()).kind is EigenKind.REAL_DOUBLE, "The identity has a double eigenvalue."
    assert eigen2(Mat2(1.0, 0.0, 5.0, 2.0)).slope1 == math.inf, "The eigenvector for 2 is vertical."

    try:
        eigen_slope_at_one(MapParams(0.9, 0.7, -2.0, 1.16), "LR^4")
        assert False, "1 is not an eigenvalue of J_LR^4 at tau_R = 1.16."
    except PreconditionError:
        pass
    assert fixed_point_of_composite(MapParams(0.9, 0.7, -2.0, 1.16), "LR^4") == (0.0, 0.0), \
        "The only fixed point of a nonsingular composite is O."

    print("Composite matrix tests complete.\n")

# TESTS FOR BOUNDARY CURVES AND SEGMENT SETS

def boundary_residual_tests():
    print("Testing boundary residuals.")

    rng = np.random.default_rng(3)
    for dL, dR, tL, tR in rng.uniform(-1.5, 1.5, size=(40, 4)):
        p = MapParams(dL, dR, tL, tR)
        for n in range(3, 9):
            for kind, sigma in ((FamilyKind.B_LRn1, SymbolicSequence.basic(n)),
                                (FamilyKind.B_L2Rn2, SymbolicSequence.complementary(n)),
                                (FamilyKind.B_RLn1, SymbolicSequence.basic(n, Partition.R)),
                                (FamilyKind.B_R2Ln2, SymbolicSequence.complementary(n, Partition.R))):
                value = boundary_residual(p, BoundaryFamily(kind, n))
                expected = char_poly_at(p, sigma, 1.0)
                assert math.isclose(value, expected, rel_tol=1e-9, abs_tol=1e-9), \
                    f"{kind.value}:{n} is not P_sigma(1) at {p}."
            for kind, sigma in ((FamilyKind.E_LRn1, SymbolicSequence.basic(n)),
                                (FamilyKind.E_L2Rn2, SymbolicSequence.complementary(n)),
                                (FamilyKind.E_RLn1, SymbolicSequence.basic(n, Partition.R)),
                                (FamilyKind.E_R2Ln2, SymbolicSequence.complementary(n, Partition.R))):
                J = composite_matrix(p, sigma)
                value = boundary_residual(p, BoundaryFamily(kind, n))
                expected = J.trace()**2 - 4.0*J.det()
                assert math.isclose(value, expected, rel_tol=1e-9, abs_tol=1e-9), \
                    f"{kind.value}:{n} is not the discriminant of J_sigma at {p}."
            H = boundary_residual(p, BoundaryFamily(FamilyKind.H_LRn1, n))
            JH = composite_matrix(p, SymbolicSequence.basic(n))
            assert math.isclose(p.delta_R*H, JH.m21, rel_tol=1e-9, abs_tol=1e-9), \
                f"delta_R H_LR^{n - 1} should be the lower left entry of J_LR^{n - 1}."
        assert math.isclose(boundary_residual(p, BoundaryFamily(FamilyKind.B_LR)), char_poly_at(p, "LR", 1.0),
                            rel_tol=1e-9, abs_tol=1e-9), "B_LR is not P_LR(1)."

    f = BoundaryFamily.parse("B_LRn1:5")
    assert f.sigma() == SymbolicSequence("LR^4") and f.label() == "B_{LR^4}", "Family parsing is broken."
    assert BoundaryFamily.parse("B_R2Ln2:5").sigma() == SymbolicSequence("R^2L^3"), "Mirror words are wrong."
    assert BoundaryFamily.parse("H_LRn1:5").partner() == SymbolicSequence("L^2R^3"), "H partner is wrong."
    assert BoundaryFamily.parse("B_LR").n == 2, "B_LR has period 2."
    for bad in (("B_LR", 3), ("B_LRn1", 2)):
        try:
            BoundaryFamily(*bad)
            assert False, f"{bad} should be rejected."
        except ValueError:
            pass

    print("Boundary residual tests complete.\n")

def boundary_root_tests():
    print("Testing boundary roots.")

    p = MapParams(0.9, 0.7, -2.0, 0.0)
    roots = _root(BoundaryFamily("B_LRn1", 5), p, "tau_R", 1.1, 1.2)
    assert abs(_closest(roots, 1.15045) - 1.15045) < 1e-3, f"B_LR^4 root at tau_L = -2 is wrong: {roots}."
    roots = _root(BoundaryFamily("B_L2Rn2", 5), p, "tau_R", 1.05, 1.1)
    assert abs(_closest(roots, 1.0719) - 1.0719) < 1e-3, f"B_L^2R^3 root at tau_L = -2 is wrong: {roots}."
    roots = _root(BoundaryFamily("B_LRn1", 5), p.with_value("tau_L", -1.125), "tau_R", 1.0, 1.08)
    assert abs(_closest(roots, 1.04053) - 1.04053) < 1e-3, f"B_LR^4 root at tau_L = -1.125 is wrong: {roots}."
    q = MapParams(0.9, 0.7, 0.0, -1.6)
    roots = _root(BoundaryFamily("B_R2Ln2", 5), q, "tau_L", 1.15, 1.25)
    assert abs(_closest(roots, 1.201945) - 1.201945) < 1e-3, f"B_R^2L^3 root at tau_R = -1.6 is wrong: {roots}."
    roots = _root(BoundaryFamily("B_RLn1", 5), q.with_value("tau_R", -1.7), "tau_L", 1.3, 1.36)
    assert abs(_closest(roots, 1.333153) - 1.333153) < 1e-3, f"B_RL^4 root at tau_R = -1.7 is wrong: {roots}."
    roots = _root(BoundaryFamily("E_RLn1", 5), q.with_value("tau_R", -2.0), "tau_L", 1.3, 1.45)
    assert abs(_closest(roots, 1.36540484) - 1.36540484) < 1e-5, f"E_RL^4 root at tau_R = -2 is wrong: {roots}."

    roots = _root(BoundaryFamily("B_LR"), p, "tau_R", -3.0, 0.0)
    assert len(roots) == 1 and math.isclose(roots[0], -1.615, abs_tol=1e-9), \
        f"B_LR at tau_L = -2 is tau_R = -3.23/2, got {roots}."

    assert math.isclose(bisect_root(lambda v: v*v - 2.0, 0.0, 2.0), math.sqrt(2.0), abs_tol=1e-9), \
        "Bisection is broken."
    try:
        bisect_root(lambda v: v*v + 1.0, -1.0, 1.0)
        assert False, "Bisection needs a sign change."
    except ValueError:
        pass

    print("Boundary root tests complete.\n")

def segment_set_tests():
    print("Testing segment sets.")

    p, family = _on_curve("lr4_halflines", "B_LRn1", 5, "tau_R", 1.14, 1.16, 1.15045)
    result = admissible_interval(p, family.sigma())
    assert result.status is AdmissibilityStatus.ADMISSIBLE_UNBOUNDED, f"LR^4 set should be halflines, got {result.status}."
    assert math.isclose(result.slope, closed_form_slope(p, family.sigma()), rel_tol=1e-6, abs_tol=1e-9), \
        "Eigenvector slope disagrees with the closed form."
    S = result.segments
    assert len(S) == 5 and S.layout() == "LRRRR", f"LR^4 layout should be LRRRR, got {S.layout()}."
    assert all(seg.lies_in_partition() for seg in S), "Every segment must lie in its partition."
    assert len(S.border_endpoints()) >= 1, "A maximal set has an endpoint on x = -1."
    assert S.periodicity_error(p) < 1e-8, f"Points of S_0 should be 5-periodic, error {S.periodicity_error(p)}."

    p, family = _on_curve("lr4_segments", "B_LRn1", 5, "tau_R", 1.0, 1.08, 1.04053)
    result = admissible_interval(p, family.sigma())
    assert result.status is AdmissibilityStatus.ADMISSIBLE_BOUNDED, f"LR^4 set should be bounded, got {result.status}."
    assert result.segments.is_bounded() and len(result.segments.border_endpoints()) >= 2, \
        "Bounded segments have both ends on x = -1."
    assert result.segments.periodicity_error(p) < 1e-8, "Points of the bounded S_0 should be 5-periodic."

    p, family = _on_curve("l2r3_halflines", "B_L2Rn2", 5, "tau_R", 1.05, 1.1, 1.0719)
    assert math.isclose(eigen_slope_at_one(p, family.sigma()), closed_form_slope(p, family.sigma()),
                        rel_tol=1e-6, abs_tol=1e-9), "Complementary slope disagrees with the closed form."

    base = MapParams(0.9, 0.7, -2.0, 0.0)
    lower = _closest(_root(BoundaryFamily("B_LRn1", 5), base, "tau_R", 0.5, 0.7), 0.58574)
    assert abs(lower - 0.58574) < 1e-3, f"B_LR^4 has a second root near tau_R = 0.58574, got {lower}."
    result = admissible_interval(base.with_value("tau_R", lower), "LR^4")
    assert result.status is AdmissibilityStatus.VIRTUAL and result.segments is None, \
        f"The LR^4 set at tau_R = {lower} should be virtual, got {result.status}."
    try:
        segment_set_at(base.with_value("tau_R", lower), "LR^4", tol=1e-6)
        assert False, "A virtual set has no segments."
    except PreconditionError:
        pass

    p = base.with_value("tau_R", _root(BoundaryFamily("B_LR"), base, "tau_R", -3.0, 0.0)[0])
    result = admissible_interval(p, "LR")
    assert math.isclose(result.slope, 2.0*0.7/1.7, rel_tol=1e-6), \
        f"S_0 of the LR-cycles lies on slope -tau_L delta_R/(1 + delta_R), got {result.slope}."

    try:
        segment_set_at(MapParams(0.9, 0.7, -2.0, 1.16), "LR^4")
        assert False, "No segment set exists off the curve."
    except PreconditionError:
        pass

    plus_one = MapParams(0.9, 0.7, -2.0, 1.0 + 0.7)
    S = degenerate_set_at(plus_one)
    assert S.sigma == SymbolicSequence("R") and not S.is_bounded(), "Degenerate +1 gives a halfline of fixed points."
    assert S.periodicity_error(plus_one) < 1e-12, "Points of the halfline should be fixed."
    flip = MapParams(0.9, 0.7, -2.0, -(1.0 + 0.7))
    S = degenerate_set_at(flip)
    assert S.sigma == SymbolicSequence("RR") and S.is_bounded() and len(S) == 2, \
        "Degenerate flip gives a segment of 2-cycles."
    assert math.isclose(S.t_lo, -1.0) and math.isclose(S.t_hi, 1.0), "The flip segment spans -1 <= x <= 1."
    assert S.periodicity_error(flip) < 1e-12, "Points of the flip segment should be 2-periodic."
    try:
        degenerate_set_at(MapParams(0.9, 0.7, -2.0, 1.16))
        assert False, "Generic parameters have no degenerate set."
    except PreconditionError:
        pass

    print("Segment set tests complete.\n")

def cycle_at_infinity_tests():
    print("Testing cycles at infinity.")

    inside = Examples.get_params("divergence_with_o")
    cycle = cycle_at_infinity(inside, "LR^4")
    assert cycle is not None, "LR^4 should carry a cycle at infinity inside the divergence region."
    assert abs(cycle.multiplier - 1.348) < 5e-3, f"Multiplier should be about 1.348, got {cycle.multiplier}."
    assert cycle.halflines.layout() == "LRRRR" and not cycle.halflines.is_bounded(), "Cycle halflines are wrong."
    assert SymbolicSequence("LR^4") in divergence_membership(inside, 5), "Membership should report LR^4."

    outside = Examples.get_params("wqa_with_o")
    assert cycle_at_infinity(outside, "LR^4") is None, "LR^4 has no eigenvalue above 1 at tau_R = 1.16."

    print("Cycle at infinity tests complete.\n")

def boundary_curve_tests():
    print("Testing boundary curve tracing.")

    p = MapParams(0.9, 0.7, -2.0, 1.15)
    curve = trace_boundary_curve(BoundaryFamily("B_LRn1", 5), p, "tau_L", "tau_R", (-2.1, -1.9), (1.1, 1.2), steps=5)
    assert len(curve) >= 5, f"Every sweep sample should have a root, got {len(curve)} points."
    middle = [q for q in curve.points if abs(q.sweep_value + 2.0) < 1e-9]
    assert middle and abs(_closest([q.solve_value for q in middle], 1.15045) - 1.15045) < 1e-3, \
        "The curve should pass through (-2, 1.15045)."
    assert any(q.status is AdmissibilityStatus.ADMISSIBLE_UNBOUNDED for q in middle), \
        "The curve is a divergence boundary at tau_L = -2."
    assert curve.divergence_points(), "Divergence points should be reported."
    parallel = trace_boundary_curve(BoundaryFamily("B_LRn1", 5), p, "tau_L", "tau_R", (-2.1, -1.9), (1.1, 1.2),
                                    steps=5, n_jobs=2)
    assert parallel.points == curve.points, "Tracing must not depend on the worker count."

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "curve.csv")
        curve.to_csv(path)
        with open(path, newline="") as f:
            rows = list(csv.reader(f))
    assert rows[0] == ["sweep_value", "solve_value", "admissibility_status"], "CSV header is wrong."
    assert len(rows) == len(curve) + 1, "CSV should have one row per point."

    try:
        trace_boundary_curve(BoundaryFamily("B_LR"), p, "tau_L", "tau_L", (-3, 3), (-3, 3))
        assert False, "Sweep and solve axes must differ."
    except ValueError:
        pass

    print("Boundary curve tests complete.\n")

# TESTS FOR THE CLASSIFIER

def stability_tests():
    print("Testing fixed point stability.")

    for k in range(-3000, 3001):
        tau = k/1000.0
        kind = fixed_point_stability(MapParams(0.9, 0.7, -2.0, tau)).kind
        assert (kind is StabilityKind.ATTRACTING) == (-1700 < k < 1700), \
            f"O should be attracting exactly for -1.7 < tau_R < 1.7, got {kind} at {tau}."

    assert fixed_point_stability(MapParams(0.9, 0.7, -2.0, -2.0)).kind is StabilityKind.SADDLE, \
        "O is a saddle at tau_R = -2."
    flip = fixed_point_stability(MapParams(0.9, 0.7, -2.0, -1.7))
    assert flip.kind is StabilityKind.NONHYPERBOLIC_BOUNDARY and flip.boundary_kind is BoundaryKind.DEGENERATE_FLIP, \
        "tau_R = -1.7 is a degenerate flip bifurcation."
    plus_one = fixed_point_stability(MapParams(0.9, 0.7, -2.0, 1.7))
    assert plus_one.boundary_kind is BoundaryKind.DEGENERATE_PLUS_ONE, "tau_R = 1.7 is a degenerate +1 bifurcation."
    assert fixed_point_stability(MapParams(0.9, 1.0, -2.0, 0.5)).boundary_kind is BoundaryKind.CENTER, \
        "delta_R = 1 with |tau_R| < 2 is a center bifurcation."
    assert fixed_point_stability(MapParams(0.9, 2.0, -2.0, 0.0)).kind is StabilityKind.REPELLING, \
        "delta_R = 2, tau_R = 0 makes O a repelling focus."

    print("Fixed point stability tests complete.\n")

def stability_triangle_tests():
    print("Testing orbit classification against the stability triangle.")

    opts = ClassifyOptions(max_iter=500000, transient=100, fingerprint_samples=2000)
    rng = np.random.default_rng(8)
    draws = zip(rng.uniform(-2, 2, size=(200, 2)), rng.uniform(-1.5, 1.5, size=200), rng.uniform(-3, 3, size=200),
                rng.uniform(0, 2*math.pi, size=200))
    checked = attracting = 0
    for (dL, tL), dR, tR, angle in draws:
        p = MapParams(dL, dR, tL, tR)
        # near unit spectral radius the iteration budget is too small to decide
        if abs(eigen2(branch_matrix(p, Partition.R)).spectral_radius() - 1.0) < 1e-4:
            continue
        stable = fixed_point_stability(p).kind is StabilityKind.ATTRACTING
        seed = Point2(1e-4*math.cos(angle), 1e-4*math.sin(angle))
        converged = classify_orbit(p, seed, opts).kind is OrbitKind.CONVERGED_TO_O
        assert converged == stable, f"The seed {seed} at {p} converges: {converged}, O attracting: {stable}."
        checked += 1
        attracting += stable
    assert checked >= 190 and 0 < attracting < checked, f"Too few usable draws: {checked}, {attracting} attracting."

    print("Stability triangle tests complete.\n")

def invertibility_tests():
    print("Testing invertibility types and zones.")

    cases = {
        (0.9, 0.7): InvertibilityType.A,
        (-0.9, -0.5): InvertibilityType.A,
        (0.9, 1.1): InvertibilityType.B,
        (-0.5, -0.9): InvertibilityType.B,
        (0.9, -0.5): InvertibilityType.C,
        (0.0, 0.7): InvertibilityType.D,
        (0.9, 0.0): InvertibilityType.E,
        (0.8, 0.8): InvertibilityType.F,
        (0.0, 0.0): InvertibilityType.F,
    }
    for (dL, dR), expected in cases.items():
        found = invertibility_type(MapParams(dL, dR, 0.0, 0.0))
        assert found is expected, f"delta = ({dL}, {dR}) should be case {expected.value}, got {found.value}."
    assert InvertibilityType.A.zones() == "Z1-Z0-Z1" and InvertibilityType.C.zones() == "Z0-Z1-Z2", \
        "Zone sequences are wrong."

    a = MapParams(0.9, 0.7, -2.0, 1.16)
    assert zone_of_point(a, Point2(0, 0.8)) == 0, "(0, 0.8) is in Z_0."
    assert zone_of_point(a, Point2(0, 5.0)) == 1, "Points far above the critical lines are in Z_1."
    assert zone_of_point(MapParams(0.9, 1.1, 0.3, 0.71), Point2(0, 1.0)) == 2, "(0, 1) is in Z_2."
    try:
        zone_of_point(MapParams(0.9, 0.0, 0.3, 0.71), Point2(0, 1.0))
        assert False, "Zones need a generic map."
    except NongenericMapError:
        pass

    print("Invertibility tests complete.\n")

def orbit_classification_tests():
    print("Testing orbit classification.")

    try:
        ClassifyOptions(max_iter=100, transient=100)
        assert False, "transient must be smaller than max_iter."
    except ConfigError:
        pass
    assert ClassifyOptions.from_dict(QUICK.to_dict()) == QUICK, "Options do not serialize."

    c = Examples.get_params("wqa_with_o")
    result = classify_orbit(c, Point2(0.01, 0.01), QUICK)
    assert result.kind is OrbitKind.CONVERGED_TO_O and result.fingerprint is None, \
        f"A seed next to the attracting focus should converge, got {result.kind}."
    assert classify_orbit(c, Point2(0.0, 0.0), QUICK).kind is OrbitKind.CONVERGED_TO_O, "O converges to itself."

    expanding = MapParams(0.9, 0.7, -2.0, 3.0)
    lam = (3.0 + math.sqrt(9.0 - 2.8))/2.0
    result = classify_orbit(expanding, Point2(1.0, lam - 3.0), QUICK)
    assert result.kind is OrbitKind.DIVERGED and result.fingerprint is None, "The unstable eigenline escapes."

    # a 2-cycle of the flip segment is bounded and does not converge
    flip = MapParams(0.9, 0.7, -2.0, -(1.0 + 0.7))
    result = classify_orbit(flip, Point2(0.5, 0.35), QUICK)
    assert result.kind is OrbitKind.BOUNDED_APERIODIC and result.fingerprint is not None, \
        "A nonhyperbolic 2-cycle is bounded and never reaches O."

    print("Orbit classification tests complete.\n")

def lyapunov_tests():
    print("Testing Lyapunov estimates.")

    focus = Examples.get_params("wqa_with_o")
    estimate = lyapunov_max(focus, Point2(0, 0), 100000)
    assert abs(estimate - 0.5*math.log(0.7)) < 1e-3, f"At O the estimate is ln sqrt(0.7), got {estimate}."

    saddle = MapParams(0.9, 0.7, -2.0, -2.0)
    rho = eigen2(branch_matrix(saddle, Partition.R)).spectral_radius()
    estimate = lyapunov_max(saddle, Point2(0, 0), 100000)
    assert abs(estimate - math.log(rho)) < 1e-3, f"At a saddle O the estimate is ln rho(J_R), got {estimate}."

    expanding = MapParams(0.9, 0.7, -2.0, 3.0)
    lam = (3.0 + math.sqrt(9.0 - 2.8))/2.0
    try:
        lyapunov_max(expanding, Point2(1.0, lam - 3.0), 1000)
        assert False, "Escaping orbits have no Lyapunov estimate."
    except PreconditionError:
        pass

    print("Lyapunov tests complete.\n")

def orbit_kernel_tests():
    print("Testing orbit kernels.")

    assert kernels.cell_index(0.0, 0.0, 1.0, 10) == 0 and kernels.cell_index(0.55, 0.0, 1.0, 10) == 5, \
        "Cells are counted from lo."
    assert kernels.cell_index(1.0, 0.0, 1.0, 10) == 9, "hi belongs to the last cell."
    assert kernels.cell_index(-0.05, 0.0, 1.0, 10) == -1, "Values just below lo are outside the window."
    assert kernels.cell_index(1.05, 0.0, 1.0, 10) == 10, "Values above hi are outside the window."
    assert kernels.cell_index(math.nan, 0.0, 1.0, 10) == -1 and kernels.cell_index(math.inf, 0.0, 1.0, 10) == 10, \
        "Non-finite values are outside the window."

    # along the unstable eigenline x = lam^k: two iterates fall in [0, 10], then the orbit escapes
    lam = (3.0 + math.sqrt(9.0 - 2.8))/2.0
    occupancy = np.ones((8, 8), dtype=np.uint8)
    hits = kernels.count_hits(0.9, 0.7, -2.0, 3.0, 1.0, lam - 3.0, 2000, 0.0, 10.0, -30.0, 30.0, occupancy, 1e8)
    assert hits == 2, f"Only the iterates inside the window count, got {hits}."
    below = kernels.count_hits(0.9, 0.7, -2.0, 3.0, 1.0, lam - 3.0, 5, 100.0, 200.0, -30.0, 30.0, occupancy, 1e8)
    assert below == 0, "Iterates outside the window are not hits."

    print("Orbit kernel tests complete.\n")

def fingerprint_tests():
    print("Testing attractor fingerprints.")

    occupancy = np.zeros((16, 16), dtype=bool)
    occupancy[2:6, 3:9] = True
    a = AttractorFingerprint((0.0, 1.0, 0.0, 1.0), occupancy, 100)
    assert a.similarity(a) == 1.0 and a.containment(a) == 1.0, "A fingerprint is identical to itself."
    assert np.array_equal(a.reprojected(a.window), a.occupancy), "Reprojection onto the own window is the identity."
    assert AttractorFingerprint.from_dict(a.to_dict()) == a, "Fingerprints do not serialize."

    other = np.zeros((16, 16), dtype=bool)
    other[10:14, 10:14] = True
    b = AttractorFingerprint((0.0, 1.0, 0.0, 1.0), other, 100)
    assert a.similarity(b) == 0.0 and b.similarity(a) == 0.0, "Disjoint occupancies have Jaccard 0."
    part = np.zeros((16, 16), dtype=bool)
    part[2:4, 3:5] = True
    c = AttractorFingerprint((0.0, 1.0, 0.0, 1.0), part, 100)
    assert a.containment(c) == 1.0 and c.containment(a) < 1.0, "Containment is not symmetric."

    registry = AttractorRegistry()
    assert registry.match_or_add(a) == 0 and registry.match_or_add(a) == 0, "Equal fingerprints share an id."
    assert registry.match_or_add(b) == 1 and registry.match_or_add(c) == 0, "Registry ids are wrong."
    assert len(registry) == 2, "Two attractors should be registered."

    try:
        AttractorFingerprint((0.0, 1.0, 0.0, 1.0), np.zeros((4, 4), dtype=bool), 1)
        assert False, "Empty occupancies should be rejected."
    except ValueError:
        pass

    flip = MapParams(0.9, 0.7, -2.0, -(1.0 + 0.7))
    fp = AttractorFingerprint.from_tail(flip, Point2(0.5, 0.35), 100)
    assert fp is not None and fp.cell_count() == 2, "A 2-cycle occupies two cells."
    assert fp == AttractorFingerprint.from_tail(flip, Point2(0.5, 0.35), 100), "Fingerprints are deterministic."
    assert fp.contains_orbit(flip, Point2(0.5, 0.35)) == 1.0, "The 2-cycle stays in its own fingerprint."
    expanding = MapParams(0.9, 0.7, -2.0, 3.0)
    assert AttractorFingerprint.from_tail(expanding, Point2(1.0, 0.0), 1000) is None, "Escaping tails have no fingerprint."

    golden = math.pi*(3.0 - math.sqrt(5.0))
    k = np.arange(20000)
    circle = np.column_stack((np.cos(golden*k), np.sin(golden*k)))
    assert not is_cyclic_under(flip, circle, 2), "A quasiperiodic circle is not made of 2 blocks."
    shifted = circle + np.column_stack((np.where(k % 2 == 0, 10.0, -10.0), np.zeros(len(k))))
    assert is_cyclic_under(flip, shifted, 2), "Alternating far clusters are 2 cyclic blocks."

    print("Fingerprint tests complete.\n")

def periodic_search_tests():
    print("Testing the periodic point search.")

    for name in ("wqa_with_o", "wqa_gallery_a"):
        found = newton_periodic_search(Examples.get_params(name), max_period=4)
        assert len(found) == 1 and found[0].norm() < 1e-9, f"Only O should be found at {name}, got {found}."

    print("Periodic point search tests complete.\n")

def basin_tests():
    print("Testing basin grids.")

    c = Examples.get_params("wqa_with_o")
    grid = basin_grid(c, (-0.05, 0.05, -0.05, 0.05), (6, 5), QUICK)
    assert grid.status.shape == (5, 6), "Grid shape should be (ny, nx)."
    assert grid.counts()[OrbitKind.CONVERGED_TO_O] == 30, "The immediate basin of O converges everywhere."
    assert grid.attractor_count() == 0 and (grid.cluster == -1).all(), "No bounded attractor should be found."
    parallel = basin_grid(c, (-0.05, 0.05, -0.05, 0.05), (6, 5), QUICK, n_jobs=2)
    assert np.array_equal(parallel.status, grid.status), "Basins must not depend on the worker count."

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "basin.csv")
        grid.to_csv(path)
        with open(path, newline="") as f:
            rows = list(csv.reader(f))
    assert rows[0] == ["x", "y", "class", "cluster"] and len(rows) == 31, "Basin CSV is wrong."
    assert rows[1][2] == "ConvergedToO", "Classes are written by name."

    try:
        basin_grid(c, (1.0, 0.0, 0.0, 1.0), (4, 4), QUICK)
        assert False, "Empty windows should be rejected."
    except ConfigError:
        pass

    print("Basin grid tests complete.\n")

# TESTS FOR SCANS, RENDERING AND THE COMMAND LINE

def _empty_grid(axis1, axis2, base=MapParams(0.9, 0.7, 0.0, 0.0)):
    spec = ScanSpec(axis1, axis2, base, "single", QUICK)
    return ScanGrid(spec, np.zeros(spec.shape, dtype=record_dtype(spec.seed_count())))

def scanner_tests():
    print("Testing scans.")

    axis = ScanAxis.parse("tau_L:-3:3:200")
    assert axis.parameter is ParameterId.TAU_L and axis.samples == 200, "Axis parsing is broken."
    assert math.isclose(axis.values()[0], -2.985) and axis.index_of(-2.0) == 33, "Axis cells are wrong."
    assert ScanAxis(ParameterId.TAU_R, 0.0, 1.0, 1).values()[0] == 0.5, "A single sample is the midpoint."
    try:
        ScanSpec(axis, ScanAxis.parse("tau_L:0:1:5"), MapParams(0.9, 0.7, 0.0, 0.0))
        assert False, "Scan axes must be distinct."
    except ConfigError:
        pass

    p = Examples.get_params("wqa_with_o")
    seeds = seed_points("default", p)
    assert len(seeds) == 9 and seeds == seed_points("default", p), "The default battery has 9 fixed seeds."
    assert seeds[-1] == Point2(-1.0 - 1e-3, 0.9), "The last seed sits next to the critical structures."
    assert len(seed_points("dense", p)) == 25 and len(seed_points("single", p)) == 1, "Strategy sizes are wrong."

    summaries = {
        (3, 0, 0): CellClass.O_ONLY,
        (0, 5, 0): CellClass.DIVERGENCE_ONLY,
        (2, 3, 0): CellClass.MIXED,
        (0, 0, 1): CellClass.WQA,
        (0, 3, 1): CellClass.WQA,
        (1, 0, 1): CellClass.COEXISTENCE,
        (0, 0, 2): CellClass.COEXISTENCE,
    }
    for counts, expected in summaries.items():
        assert CellClass.summarize(*counts) is expected, f"{counts} should summarize to {expected}."
    assert CellClass.MIXED.is_divergent() and not CellClass.WQA.is_divergent(), "Divergent classes are wrong."

    spec = ScanSpec(ScanAxis.parse("tau_L:-0.5:0.5:3"), ScanAxis.parse("tau_R:1.4:1.6:2"),
                    MapParams(0.9, 0.7, 0.0, 0.0), "default", QUICK)
    grid = scan_2d(spec)
    assert grid.shape == (2, 3), "Rows follow axis2 and columns axis1."
    assert scan_2d(spec, n_jobs=2) == grid, "Scans must not depend on the worker count."
    for row in range(2):
        for col in range(3):
            r = grid.record(row, col)
            assert r.converged + r.diverged + r.bounded == 9, "Every seed is classified once."
            assert r.cell_class is CellClass.summarize(r.converged, r.diverged, r.attractor_count), \
                "Stored class disagrees with the seed counts."

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "grid.wqas")
        grid.write(path)
        assert ScanGrid.read(path) == grid, "A written grid reloads equal."
        with open(path, "rb") as f:
            assert f.read(4) == b"WQAS", "Grid files start with the magic."
        grid.to_csv(os.path.join(tmp, "grid.csv"))
        with open(os.path.join(tmp, "grid.csv"), newline="") as f:
            rows = list(csv.reader(f))
        assert rows[0][:3] == ["tau_L", "tau_R", "class"] and len(rows) == 7, "Scan CSV is wrong."
    try:
        ScanGrid.from_bytes(b"NOPE" + bytes(20))
        assert False, "Bad magic should be rejected."
    except ConfigError:
        pass

    line = ScanSpec(ScanAxis.parse("tau_L:-0.5:0.5:4"), None, MapParams(0.9, 0.7, 0.0, 1.5), "single", QUICK)
    diagram = scan_1d(line, projection="y", n_tail=50)
    assert len(diagram) == 4 and len(diagram.classes) == 4, "One entry per sweep value."
    for cls, samples in zip(diagram.classes, diagram.samples):
        assert cls is not CellClass.DIVERGENCE_ONLY or len(samples) == 0, "Divergent values carry no samples."
    try:
        scan_1d(spec)
        assert False, "scan_1d needs a single axis."
    except ConfigError:
        pass

    plane = _empty_grid(ScanAxis.parse("tau_L:-3:-1.5:10"), ScanAxis.parse("tau_R:-3:-1:10"))
    overlay_boundaries(plane, [])
    assert plane.overlays == [], "An empty family list leaves the grid unchanged."
    overlay_boundaries(plane, ["B_LR"], steps=20)
    curve = plane.overlays[0]
    assert len(curve) == 20, f"B_LR crosses every sweep sample once, got {len(curve)} points."
    for q in curve.points:
        assert abs(q.sweep_value*q.solve_value - 3.23) < 1e-6, "B_LR is tau_L tau_R = (1 + delta_L)(1 + delta_R)."
    try:
        overlay_boundaries(_empty_grid(ScanAxis.parse("tau_L:-3:3:4"), None), ["B_LR"])
        assert False, "Overlays need a two parameter scan."
    except ConfigError:
        pass

    print("Scan tests complete.\n")

def render_tests():
    print("Testing rendering.")

    grid = _empty_grid(ScanAxis.parse("tau_L:-3:3:3"), ScanAxis.parse("tau_R:-3:3:2"))
    rgb = render.scan_rgb(grid)
    assert rgb.shape == (2, 3, 3) and tuple(rgb[0, 0]) == (0x20, 0x60, 0xFF), "O-only cells are blue."
    single = _empty_grid(ScanAxis.parse("tau_L:-3:3:1"), ScanAxis.parse("tau_R:-3:3:1"))
    phase = PhaseGrid(MapParams(0.9, 0.7, -2.0, 1.16), (-1, 1, -1, 1), (2, 2),
                      [[kernels.STATUS_CONVERGED, kernels.STATUS_DIVERGED],
                       [kernels.STATUS_BOUNDED, kernels.STATUS_BOUNDED]], [[-1, -1], [0, 1]], [])
    colors = render.phase_rgb(phase)
    assert tuple(colors[1, 0]) == render.hex_to_rgb(render.O_BASIN), "The O basin is light blue."
    assert tuple(colors[1, 1]) == render.hex_to_rgb(render.DIVERGENCE), "Divergence is gray."
    assert tuple(colors[0, 0]) != tuple(colors[0, 1]), "Distinct attractors get distinct basin colors."
    try:
        render.palette("rainbow")
        assert False, "Unknown palettes should be rejected."
    except ConfigError:
        pass

    with tempfile.TemporaryDirectory() as tmp:
        path = render.write_image(render.scan_rgb(single), os.path.join(tmp, "one.png"))
        assert os.path.getsize(path) > 0, "A 1x1 scan still yields an image."
        path = render.write_ppm(rgb, os.path.join(tmp, "grid.ppm"))
        with open(path, "rb") as f:
            assert f.read(11) == b"P6\n3 2\n255\n", "PPM header is wrong."

    print("Rendering tests complete.\n")

def config_tests():
    print("Testing run configuration.")

    text = """
    # a comment
    command = scan2d
    params = 0.9,0.7,0,0   # trailing comment
    axis1 = tau_L:-3:3:200
    axis2 = tau_R:-3:3:200
    families = B_LRn1:5,B_LR
    continuation = false
    """
    cfg = RunConfig.from_text(text)
    assert cfg.command == "scan2d" and cfg.params == MapParams(0.9, 0.7, 0.0, 0.0), "Configuration parsing is broken."
    assert cfg.families == (BoundaryFamily("B_LRn1", 5), BoundaryFamily("B_LR")), "Family lists are broken."
    assert cfg.continuation is False and cfg.threads is None and cfg.thread_count() >= 1, "Defaults are wrong."
    assert RunConfig.from_text(cfg.to_text()) == cfg, "Configurations should survive being written out."
    assert cfg.scan_spec().axis2.samples == 200, "Scan specs are built from the axes."

    override = RunConfig(threads=3, params=MapParams(0.9, 1.1, 0.0, 0.0))
    merged = cfg.merged(override)
    assert merged.threads == 3 and merged.params.delta_R == 1.1 and merged.axis1 == cfg.axis1, "Flags should override."
    assert RunConfig.from_text("threads = -1").threads == -1, "Negative worker counts are passed to joblib."

    for bad in ("colour = red", "params = 1,2,3", "threads = many", "threads = 0", "just words", "command = draw"):
        try:
            RunConfig.from_text(bad)
            assert False, f"{bad!r} should be rejected."
        except ConfigError:
            pass
    try:
        RunConfig(max_iter=10, transient=20).classify_options()
        assert False, "Inconsistent iteration budgets should be rejected."
    except ConfigError:
        pass
    try:
        RunConfig.from_file("/nonexistent/wqa.cfg")
        assert False, "Missing files are configuration errors."
    except ConfigError:
        pass

    print("Run configuration tests complete.\n")

def cli_tests():
    print("Testing the command line.")

    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "origin")
        code = cli.main(["orbit", "--params", "0.9,0.7,-2,1.16", "--seed", "0,0", "--steps", "5", "--out", out])
        assert code == cli.EXIT_OK, f"orbit should succeed, got exit code {code}."
        with open(out + ".csv", newline="") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["k", "x", "y", "partition"] and len(rows) == 7, "Orbit CSV is wrong."
        assert all(float(r[1]) == 0.0 and float(r[2]) == 0.0 for r in rows[1:]), "The orbit of O is constant."

        cfg_path = os.path.join(tmp, "run.cfg")
        with open(cfg_path, "w") as f:
            f.write(f"command = boundary\nparams = 0.9,0.7,-2,1.15\nfamily = B_LRn1\nn = 5\n"
                    f"sweep = tau_L:-2.05:-1.95\nsolve = tau_R:1.1:1.2\nsteps = 3\nout = {os.path.join(tmp, 'b')}\n")
        assert cli.main(["boundary", "--config", cfg_path, "--threads", "1"]) == cli.EXIT_OK, "boundary should succeed."
        with open(os.path.join(tmp, "b.csv"), newline="") as f:
            rows = list(csv.reader(f))
        assert any(abs(float(r[0]) + 2.0) < 1e-9 and abs(float(r[1]) - 1.15045) < 1e-3 for r in rows[1:]), \
            "The boundary CSV should contain (-2, 1.15045)."

        assert cli.main(["orbit", "--params", "1,2,3"]) == cli.EXIT_CONFIG, "Bad parameters are config errors."
        for command in (["scan2d", "--params", "0.9,0.7,0,0", "--axis1", "tau_L:-1:1:2", "--axis2", "tau_R:-1:1:2"],
                        ["orbit", "--params", "0.9,0.7,-2,1.16"]):
            assert cli.main(command + ["--threads", "0", "--out", os.path.join(tmp, "t")]) == cli.EXIT_CONFIG, \
                f"A zero worker count is a config error for {command[0]}."
        assert cli.main(["orbit", "--params", "0.9,0.7,-2,1.16", "--out", "/nonexistent/dir/o"]) == cli.EXIT_CONFIG, \
            "Missing output directories are config errors."
        assert cli.main(["segments", "--params", "0.9,0.7,-2,1.16", "--out", os.path.join(tmp, "s")]) \
            == cli.EXIT_PRECONDITION, "Generic parameters have no degenerate set."
        assert cli.main(["segments", "--params", "0.9,0.7,-2,-1.7", "--out", os.path.join(tmp, "s")]) \
            == cli.EXIT_OK, "The flip segment should be written."

    print("Command line tests complete.\n")

# ACCEPTANCE-SCALE CHECKS, RUN WITH pytest -m slow OR all_tests(slow=True)

@pytest.mark.slow
def slow_segment_set_checks():
    print("Checking segment sets at the figure parameters.")

    layouts = (
        ("lr4_halflines", "B_LRn1", "tau_R", 1.14, 1.16, 1.15045, "LRRRR", AdmissibilityStatus.ADMISSIBLE_UNBOUNDED),
        ("l2r3_halflines", "B_L2Rn2", "tau_R", 1.06, 1.08, 1.0719, "LLRRR", AdmissibilityStatus.ADMISSIBLE_UNBOUNDED),
        ("lr4_segments", "B_LRn1", "tau_R", 1.03, 1.05, 1.04053, "LRRRR", AdmissibilityStatus.ADMISSIBLE_BOUNDED),
        ("r2l3_halflines", "B_R2Ln2", "tau_L", 1.19, 1.21, 1.201945, "RRLLL", AdmissibilityStatus.ADMISSIBLE_UNBOUNDED),
        ("rl4_halflines_flip", "B_RLn1", "tau_L", 1.32, 1.34, 1.333153, "RLLLL", AdmissibilityStatus.ADMISSIBLE_UNBOUNDED),
    )
    for name, kind, axis, lo, hi, target, layout, status in layouts:
        p, family = _on_curve(name, kind, 5, axis, lo, hi, target)
        result = admissible_interval(p, family.sigma())
        assert result.status is status, f"{name}: expected {status}, got {result.status}."
        assert result.segments.layout() == layout, f"{name}: layout should be {layout}."
        assert result.segments.periodicity_error(p) < 1e-8, f"{name}: sampled points are not periodic."

    base = Examples.get_params("r4l3_segments")
    sigma = SymbolicSequence("R^4L^3")
    f = lambda v: char_poly_at(base.with_value("tau_R", v), sigma, 1.0)
    p = base.with_value("tau_R", bisect_root(f, -2.21, -2.19))
    S = segment_set_at(p, sigma)
    assert len(S) == 7 and S.is_bounded() and S.layout() == "RRRRLLL", "R^4L^3 gives 7 bounded segments."
    assert S.periodicity_error(p) < 1e-8, "Points of the R^4L^3 segments should be 7-periodic."

    print("Segment set checks complete.\n")

def _battery(params, opts=None):
    opts = opts or ClassifyOptions()
    return [classify_orbit(params, seed, opts) for seed in seed_points("default", params)]

@pytest.mark.slow
def slow_regime_checks():
    print("Checking the regimes around the divergence region of rotation number 1/5.")

    expectations = {1.1: False, 1.16: True, 1.075: False, 1.067: True}
    for tau_R, bounded in expectations.items():
        results = _battery(MapParams(0.9, 0.7, -2.0, tau_R))
        kinds = {r.kind for r in results}
        assert OrbitKind.CONVERGED_TO_O in kinds, f"O should attract some seeds at tau_R = {tau_R}."
        assert (OrbitKind.BOUNDED_APERIODIC in kinds) == bounded, \
            f"Bounded aperiodic attractor expected {bounded} at tau_R = {tau_R}, got {kinds}."
        if not bounded:
            assert OrbitKind.DIVERGED in kinds, f"Divergence expected at tau_R = {tau_R}."

    print("Regime checks complete.\n")

@pytest.mark.slow
def slow_no_hyperbolic_cycle_checks():
    print("Checking the absence of hyperbolic cycles.")

    rng = np.random.default_rng(6)
    draws = [MapParams(*v) for v in rng.uniform(-2.5, 2.5, size=(100, 4))]
    words = all_words(2, 6)
    for p in draws:
        for sigma in words:
            if abs(char_poly_at(p, sigma, 1.0)) > 1e-6:
                assert fixed_point_of_composite(p, sigma) == (0.0, 0.0), f"F_{sigma} has a nonzero fixed point at {p}."
    for p in draws[:5]:
        found = newton_periodic_search(p, max_period=6)
        assert len(found) == 1 and found[0].norm() < 1e-9, f"Only O is periodic at {p}, got {found}."

    print("Hyperbolic cycle checks complete.\n")

@pytest.mark.slow
def slow_z0_avoidance_checks():
    print("Checking that attractors avoid Z_0.")

    rng = np.random.default_rng(7)
    opts = ClassifyOptions(max_iter=50000, transient=10000, fingerprint_samples=10000)
    tail = ClassifyOptions(max_iter=2, transient=0)
    checked = 0
    for _ in range(2000):
        if checked == 20:
            break
        dR = rng.uniform(0.2, 0.8)
        dL = rng.uniform(dR + 0.05, 0.99)
        p = MapParams(dL, dR, rng.uniform(-2.6, -1.0), rng.uniform(0.9, 1.6))
        bounded = [r for r in _battery(p, opts) if r.kind is OrbitKind.BOUNDED_APERIODIC]
        if not bounded:
            continue
        points = attractor_points(p, bounded[0].final_point, tail, 10**6)
        if len(points) < 10**6:
            continue
        y = points[:, 1]
        assert not ((y > dR + 1e-9) & (y < dL - 1e-9)).any(), f"An attractor enters Z_0 at {p}."
        checked += 1
    assert checked == 20, f"Only {checked} parameter draws had a bounded aperiodic attractor."

    print("Z_0 avoidance checks complete.\n")

@pytest.mark.slow
def slow_lyapunov_checks():
    print("Checking Lyapunov estimates on attractors.")

    for name in ("wqa_with_o", "wqa_gallery_a"):
        p = Examples.get_params(name)
        results = _battery(p)
        bounded = [r for r in results if r.kind is OrbitKind.BOUNDED_APERIODIC]
        assert bounded, f"{name} should have a bounded aperiodic attractor."
        estimate = lyapunov_max(p, bounded[0].final_point, 10**7)
        assert abs(estimate) < 0.02, f"{name}: Lyapunov estimate {estimate} on the attractor is not small."
        fp = bounded[0].fingerprint
        assert fp.invariance(p) >= 0.9, f"{name}: the attractor should be nearly invariant."
        converged = [r for r in results if r.kind is OrbitKind.CONVERGED_TO_O]
        if converged:
            estimate = lyapunov_max(p, Point2(0.01, 0.01), 10**6)
            assert estimate < -0.05, f"{name}: converging runs should have a negative estimate, got {estimate}."

    print("Lyapunov checks complete.\n")

@pytest.mark.slow
def slow_two_wqa_checks():
    print("Checking coexisting attractors.")

    opts = ClassifyOptions(max_iter=20000, transient=5000, fingerprint_samples=20000)
    for name in ("two_wqas_expanding", "two_wqas_left"):
        example = Examples.get_example(name)
        p = MapParams.from_dict(example["params"])
        grid = basin_grid(p, example["window"], (400, 400), opts, n_jobs=os.cpu_count() or 1)
        assert grid.attractor_count() == 2, f"{name} should have 2 attractors, got {grid.attractor_count()}."

    print("Coexisting attractor checks complete.\n")

@pytest.mark.slow
def slow_scan_checks():
    print("Checking divergence boundaries against a parameter scan.")

    opts = ClassifyOptions(max_iter=100000, transient=10000, fingerprint_samples=20000)
    spec = ScanSpec(ScanAxis.parse("tau_L:-3:3:300"), ScanAxis.parse("tau_R:-3:3:300"),
                    MapParams(0.9, 0.7, 0.0, 0.0), "default", opts)
    grid = scan_2d(spec, n_jobs=os.cpu_count() or 1)
    families = ["B_LR"] + [f"{k}:{n}" for n in range(3, 10) for k in ("B_LRn1", "B_L2Rn2")]
    overlay_boundaries(grid, families, steps=300, n_jobs=os.cpu_count() or 1)

    gray = np.vectorize(lambda c: CellClass.from_code(c).is_divergent())(grid.classes())
    rows, cols = gray.shape
    hits = total = 0
    for curve in grid.overlays:
        for q in curve.divergence_points():
            v1, v2 = (q.sweep_value, q.solve_value) if curve.sweep_axis is ParameterId.TAU_L else (q.solve_value, q.sweep_value)
            cell = grid.cell_of(v1, v2)
            if cell is None:
                continue
            r, c = cell
            block = gray[max(r - 1, 0):min(r + 2, rows), max(c - 1, 0):min(c + 2, cols)]
            total += 1
            hits += bool(block.any() and not block.all())
    assert total > 0 and hits >= 0.95*total, f"Only {hits} of {total} boundary cells lie on a gray transition."

    print("Scan checks complete.\n")

@pytest.mark.slow
def slow_boundary_agreement_checks():
    print("Checking scan classes on both sides of a divergence boundary.")

    opts = ClassifyOptions(max_iter=100000, transient=10000, fingerprint_samples=20000)
    p = MapParams(0.9, 0.7, -2.0, 1.15)
    curve = trace_boundary_curve(BoundaryFamily("B_LRn1", 5), p, "tau_L", "tau_R", (-2.1, -1.9), (1.1, 1.2),
                                 steps=60, n_jobs=os.cpu_count() or 1)
    points = curve.divergence_points()
    assert len(points) >= 20, f"Need 20 divergence boundary points, got {len(points)}."
    for q in (points[k*len(points)//20] for k in range(20)):
        sides = []
        for offset in (-5e-3, 5e-3):
            params = MapParams(0.9, 0.7, q.sweep_value, q.solve_value + offset)
            record, _ = classify_cell(params, seed_points("default", params), opts)
            sides.append(record.cell_class.is_divergent())
        assert sides[0] != sides[1], \
            f"Exactly one side of ({q.sweep_value}, {q.solve_value}) should contain divergence, got {sides}."

    print("Boundary agreement checks complete.\n")
