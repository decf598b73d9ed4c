import math
from fractions import Fraction

import numpy as np
import pytest

from cuspinv import brieskorn
from cuspinv.equivalence import (
    cusp_torus_equivalent,
    fitted_pair,
    invariant_report,
    normalize_invariant,
    one_dof_equivalent,
    parabolic_equivalent,
    rescale_r_h,
    verify_relations,
    verify_relations_numeric,
)
from cuspinv.model import (
    Density,
    Poly2,
    cusp_compact_model,
    cusp_local_model,
)
from cuspinv.series import TruncatedSeries, phi_r_apply, phi_r_invert
from cuspinv.specfun import puiseux_constants

F_ONE = Density.constant(1)
F_ONE_PLUS_Y = Density({(0, 0, 0): 1, (0, 1, 0): 1})


def _area_pair(density):
    pair = brieskorn.reduce(density)
    c = puiseux_constants()
    A = phi_r_invert(
        TruncatedSeries([float(v) for v in pair.alpha.coeffs]) * c["C0"], Fraction(5, 6)
    )
    B = phi_r_invert(
        TruncatedSeries([float(v) for v in pair.beta.coeffs]) * c["C1"], Fraction(7, 6)
    )
    return A, B


class TestRescaleMap:
    def test_identity_for_unit_g(self):
        rmap = rescale_r_h(TruncatedSeries([1.0], order=3))
        assert rmap.apply(0.4, 0.7) == (0.4, 0.7)
        assert rmap.jacobian_det(0.4, 0.7) == 1.0

    def test_constant_scaling(self):
        rmap = rescale_r_h(TruncatedSeries([4.0], order=3))
        for (x, y) in ((0.3, 0.5), (-0.2, 0.9), (0.1, -0.3)):
            u, v = rmap.apply(x, y)
            H = y**3 - x**2
            assert abs((v**3 - u**2) - 4.0 * H) < 1e-12

    def test_jacobian_formula_at_zero_level(self):
        rmap = rescale_r_h(TruncatedSeries([1.0, 0.5], order=3))
        # points on H = 0: det = g(0)^(-1/6) g(0) = 1
        assert abs(rmap.jacobian_det(1.0, 1.0) - 1.0) < 1e-14

    def test_h_compatibility_pointwise(self):
        rmap = rescale_r_h(TruncatedSeries([1.0, 0.5, -0.2], order=4))
        for (x, y) in ((0.3, 0.7), (-0.25, 0.55)):
            u, v = rmap.apply(x, y)
            H = y**3 - x**2
            assert abs((v**3 - u**2) - rmap.h(H)) < 1e-13

    def test_inverse_roundtrip(self):
        rmap = rescale_r_h(TruncatedSeries([1.0, 0.5], order=4))
        u, v = rmap.apply(0.3, 0.7)
        x, y = rmap.inverse(u, v)
        assert abs(x - 0.3) < 1e-12 and abs(y - 0.7) < 1e-12

    def test_nonpositive_g_rejected(self):
        with pytest.raises(ValueError):
            rescale_r_h(TruncatedSeries([-1.0, 0.2]))

    def test_h_inverse_rejects_beyond_monotone_branch(self):
        # h(H) = H(1 - 2H) folds at H = 1/4; targets above the fold value
        # cannot be reached on the branch through 0
        rmap = rescale_r_h(TruncatedSeries([1.0, -2.0], order=3))
        assert abs(rmap.h_inverse(0.1) - rmap.h_inverse(0.1)) == 0.0
        with pytest.raises(ValueError):
            rmap.h_inverse(0.2)


class TestVerifyRelations:
    def test_unit_g_identical_pairs(self):
        A, B = _area_pair(F_ONE_PLUS_Y)
        res = verify_relations((A, B), (A, B), TruncatedSeries([1.0], order=4))
        assert res["max_abs"] < 1e-14

    def test_synthetic_consistency_of_forms(self):
        # (iii) follows from (i)/(ii) through phi_r: construct exact data and
        # check all residual families vanish to rounding
        g = TruncatedSeries([1.3, -0.4, 0.2], order=6)
        At = TruncatedSeries([1.1, 0.3, -0.2, 0.1, 0.0, 0.05, 0.0])
        Bt = TruncatedSeries([-0.6, 0.2, 0.3, -0.1, 0.2, 0.0, 0.0])
        h = TruncatedSeries([0] + list(g.coeffs), order=g.order)
        A = g.pow(5.0 / 6.0) * At.compose(h)
        B = g.pow(7.0 / 6.0) * Bt.compose(h)
        res = verify_relations((A, B), (At, Bt), g)
        assert res["max_abs"] < 1e-10

    def test_numeric_pullback_defect(self):
        g = TruncatedSeries([1.0, 0.5], order=4)
        rmap = rescale_r_h(g)
        ftilde = rmap.pushforward_density(F_ONE_PLUS_Y)
        res = verify_relations_numeric(F_ONE_PLUS_Y, ftilde, g)
        assert res["max_abs"] < 1e-4

    def test_numeric_defect_detects_wrong_g(self):
        g = TruncatedSeries([1.0, 0.5], order=4)
        rmap = rescale_r_h(g)
        ftilde = rmap.pushforward_density(F_ONE_PLUS_Y)
        wrong = TruncatedSeries([1.0, 0.8], order=4)
        res = verify_relations_numeric(F_ONE_PLUS_Y, ftilde, wrong)
        assert res["max_abs"] > 1e-2


class TestNormalizeInvariant:
    def test_unit_density(self):
        c = puiseux_constants()
        out = normalize_invariant(brieskorn.reduce(F_ONE))
        assert abs(out["g"].coeffs[0] - (1.2 * c["C0"]) ** 1.2) < 1e-12
        assert all(abs(float(v)) < 1e-12 for v in out["g"].coeffs[1:])
        assert all(abs(float(v)) < 1e-12 for v in out["canonical_f"].coeffs)
        assert all(
            abs(float(v) - (1.0 if k == 0 else 0.0)) < 1e-12
            for k, v in enumerate(out["g_unit_alpha"].coeffs)
        )

    def test_zero_beta_forces_zero_canonical_f(self):
        out = normalize_invariant(brieskorn.reduce(Density.constant(3)))
        assert all(abs(float(v)) < 1e-12 for v in out["canonical_f"].coeffs)

    def test_wrong_orientation_rejected(self):
        with pytest.raises(ValueError):
            normalize_invariant(brieskorn.reduce(Density.constant(-1)))
        with pytest.raises(ValueError):
            normalize_invariant(brieskorn.reduce(Density({(0, 1, 0): 1})))

    def test_fitted_route_matches_exact_route(self):
        f = F_ONE_PLUS_Y
        exact = normalize_invariant(brieskorn.reduce(f))
        triple, _ = fitted_pair(f)
        fitted = normalize_invariant(triple)
        for k in range(2):
            assert abs(
                float(exact["canonical_f"].coeffs[k]) - float(fitted["canonical_f"].coeffs[k])
            ) < 1e-4


class TestOneDofEquivalent:
    def test_self_equivalence(self):
        for mode in ("H_preserving", "fibration_preserving"):
            v = one_dof_equivalent(F_ONE_PLUS_Y, F_ONE_PLUS_Y, mode=mode)
            assert v.equivalent

    def test_scaling_breaks_H_preserving_only(self):
        f2 = Density.constant(2)
        v_h = one_dof_equivalent(F_ONE, f2, mode="H_preserving")
        assert not v_h.equivalent
        v_f = one_dof_equivalent(F_ONE, f2, mode="fibration_preserving")
        assert v_f.equivalent
        assert abs(float(v_f.witness_g.coeffs[0]) - 2.0 ** (-1.2)) < 1e-12

    def test_beta_difference_detected(self):
        v = one_dof_equivalent(F_ONE, F_ONE_PLUS_Y, mode="H_preserving")
        assert not v.equivalent

    def test_orientation_autocorrection(self):
        # -f(-x, y) is the sign-map image of f and must compare equal
        flipped = Density({(0, 0, 0): -1, (0, 1, 0): -1})
        v = one_dof_equivalent(F_ONE_PLUS_Y, flipped, mode="H_preserving")
        assert v.equivalent
        assert v.orientation_corrected

    def test_witness_satisfies_relations(self):
        f2 = Density({(0, 0, 0): 2, (0, 1, 0): 1})
        v = one_dof_equivalent(F_ONE_PLUS_Y, f2, mode="fibration_preserving")
        if v.equivalent:
            res = verify_relations(
                _area_pair(F_ONE_PLUS_Y), _area_pair(f2), v.witness_g
            )
            assert res["max_abs"] < 1e-3


class TestCanonicalFInvariance:
    def test_pullback_invariance_random_g(self):
        rng = np.random.default_rng(31)
        f = F_ONE_PLUS_Y
        reference = normalize_invariant(brieskorn.reduce(f))["canonical_f"]
        for _ in range(5):
            g = TruncatedSeries(
                [float(rng.uniform(0.6, 1.6)), float(rng.uniform(-0.4, 0.4)),
                 float(rng.uniform(-0.2, 0.2))],
                order=4,
            )
            rmap = rescale_r_h(g)
            ftilde = rmap.pushforward_density(f)
            triple, _ = fitted_pair(ftilde, h_max=0.05, n_samples=36, order=(3, 3, 5))
            out = normalize_invariant(triple)
            for k in range(2):
                ref = float(reference.coeffs[k])
                got = float(out["canonical_f"].coeffs[k])
                assert abs(got - ref) <= 1e-3 * max(1.0, abs(ref))


class TestParabolicEquivalent:
    def test_self_identity(self):
        m = cusp_local_model(F_ONE_PLUS_Y)
        v = parabolic_equivalent(m, m)
        assert v.equivalent

    def test_density_scaling_not_equivalent(self):
        v = parabolic_equivalent(
            cusp_local_model(F_ONE), cusp_local_model(Density.constant(2))
        )
        assert not v.equivalent
        assert not v.checks["I_circ"]["ok"]

    def test_sigma_violating_phi_rejected_as_nonequivalent(self):
        m = cusp_local_model(F_ONE)
        phi = (Poly2({(1, 0): 1, (0, 3): 1}), Poly2({(0, 1): 1}))  # (H + F^3, F)
        v = parabolic_equivalent(m, m, phi)
        assert not v.equivalent
        assert not v.checks["sigma"]["ok"]

    def test_verdict_symmetry(self):
        m1 = cusp_local_model(F_ONE)
        m2 = cusp_local_model(Density.constant(2))
        assert parabolic_equivalent(m1, m2).equivalent == parabolic_equivalent(m2, m1).equivalent

    def test_verdict_symmetry_under_inverted_phi(self):
        # (H, F) -> (c^3 H, c^2 F) preserves the standard diagram but scales
        # the actions; the verdict must agree with the phi^-1 comparison
        m = cusp_local_model(F_ONE)
        c = 1.3
        phi = (Poly2({(1, 0): c**3}), Poly2({(0, 1): c**2}))
        phi_inv = (Poly2({(1, 0): c**-3}), Poly2({(0, 1): c**-2}))
        v12 = parabolic_equivalent(m, m, phi)
        v21 = parabolic_equivalent(m, m, phi_inv)
        assert v12.checks["sigma"]["ok"] and v21.checks["sigma"]["ok"]
        assert v12.equivalent == v21.equivalent == False  # noqa: E712

    def test_degenerate_phi_rejected(self):
        m = cusp_local_model(F_ONE)
        phi = (Poly2({(1, 0): 1}), Poly2({(1, 0): 1}))
        with pytest.raises(ValueError):
            parabolic_equivalent(m, m, phi)


class TestCuspTorusEquivalent:
    def test_self_identity_k0(self):
        m = cusp_compact_model(F_ONE)
        v = cusp_torus_equivalent(m, m)
        assert v.equivalent
        assert v.k == 0

    def test_mu_shift_recovered(self):
        m = cusp_compact_model(F_ONE)
        v = cusp_torus_equivalent(m, m, mu_shift2=1)
        assert v.equivalent
        assert v.k == -1

    def test_lambda_dependent_density_not_equivalent(self):
        f2 = Density({(0, 0, 0): 1.0, (0, 0, 2): 0.1})  # 1 + lambda^2/10
        v = cusp_torus_equivalent(cusp_compact_model(F_ONE), cusp_compact_model(f2))
        assert not v.equivalent

    def test_local_models_rejected(self):
        with pytest.raises(ValueError):
            cusp_torus_equivalent(cusp_local_model(F_ONE), cusp_local_model(F_ONE))


class TestInvariantReport:
    def test_unit_density_report(self):
        rep = invariant_report(cusp_local_model(F_ONE))
        assert all(abs(float(v)) < 1e-10 for v in rep.canonical_f.coeffs)
        assert rep.orientation["density_positive_at_orbit"]
        assert all(h > 0 for _, h in rep.h_samples)
        assert all(a < 0 for _, a in rep.log_coeffs)

    def test_density_scaling_doubles_h(self):
        r1 = invariant_report(cusp_local_model(F_ONE), lam_values=(-0.05,), log_lam_values=())
        r2 = invariant_report(
            cusp_local_model(Density.constant(2)), lam_values=(-0.05,), log_lam_values=()
        )
        assert abs(r2.h_samples[0][1] - 2.0 * r1.h_samples[0][1]) < 1e-12

    def test_compact_report_fitted_route(self):
        rep = invariant_report(cusp_compact_model(F_ONE), lam_values=(-0.05,), log_lam_values=())
        assert float(rep.alpha.coeffs[0]) > 0
        # the quartic term feeds the beta-content of the compact germ
        assert abs(float(rep.beta.coeffs[0])) > 1e-3

    def test_h_invariance_under_fiber_relabeling(self):
        # h(lambda) depends only on the fiber structure: relabeling
        # H~ = H + 0.1 H^2 reaches the same separatrix fiber
        m = cusp_local_model(F_ONE_PLUS_Y)
        lam = -0.3
        from cuspinv.quadrature import loop_action, separatrix_action

        h_ref = separatrix_action(m, lam)
        h_hyp = 2.0 * 0.3**1.5 / (3.0 * math.sqrt(3.0))
        # sample I_o against the relabeled coordinate and take the supremum
        hs = h_hyp - np.geomspace(1e-9, 0.5 * h_hyp, 25)
        vals = []
        for h in hs:
            h_relabel = h + 0.1 * h * h  # monotone near 0: same fiber set
            h_back = (math.sqrt(1 + 0.4 * h_relabel) - 1) / 0.2
            vals.append(loop_action(m, h_back, lam))
        assert abs(max(vals) - h_ref) < 1e-5


class TestJson:
    def test_verdict_json(self):
        m = cusp_local_model(F_ONE)
        v = parabolic_equivalent(m, m)
        data = v.to_json()
        assert data["equivalent"] is True

    def test_report_json(self):
        rep = invariant_report(cusp_local_model(F_ONE), lam_values=(-0.05,), log_lam_values=())
        data = rep.to_json()
        assert "one_dof" in data and "h_samples" in data
