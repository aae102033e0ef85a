import math

import numpy as np
import pytest

from fracstefan.errors import (
    BracketFailure,
    DegenerateProblem,
    DomainError,
    InvalidParameter,
)
from fracstefan.special_fn import fractional_erf, mainardi
from fracstefan.stefan import (
    Convective,
    Dirichlet,
    Flux,
    ProblemSpec,
    TranscendentalTarget,
    assemble,
    bisect_increasing,
    boundary_defect,
    evaluate_s,
    evaluate_u,
    evaluate_ux,
    in_domain,
    robin_ratio,
    sample_profile,
    solve,
    solve_root,
    target_for,
    trans_H,
    trans_J,
    trans_K,
    trans_function,
)

# 60-digit series / mpmath gamma, rounded to 30 digits
H_1 = 1.50931702878415814592120094059
J_1 = 2.60868147521038972307109444798
K_1 = 3.63812877907488829964461456564
G075_OVER_G125 = 1.35195648013456945799089536934
G075SQ_OVER_G125 = 1.65671005176293255314715414089

CONV = ProblemSpec(0.5, 1.0, 1.0, 0.0, Convective(1.0, 1.0, 1.0))
SPECS = [
    ProblemSpec(0.3, 0.5, 2.0, -1.0, Dirichlet(2.0)),
    ProblemSpec(0.5, 1.0, 1.0, 0.0, Flux(1.0)),
    ProblemSpec(0.7, 2.0, 0.3, 1.0, Convective(0.5, 3.0, 5.0)),
    CONV,
]


@pytest.fixture(scope="module", params=range(len(SPECS)), ids=lambda i: SPECS[i].kind + str(i))
def case(request):
    spec = SPECS[request.param]
    return spec, solve(spec)


class TestProblemSpec:
    def test_dirichlet_equal_is_degenerate(self):
        with pytest.raises(DegenerateProblem, match="B>C required"):
            ProblemSpec(0.5, 1.0, 1.0, 0.0, Dirichlet(0.0))

    def test_convective_equal_is_degenerate(self):
        with pytest.raises(DegenerateProblem, match="D>C required"):
            ProblemSpec(0.5, 1.0, 1.0, 2.0, Convective(1.0, 1.0, 2.0))

    def test_dirichlet_below(self):
        with pytest.raises(InvalidParameter, match="B>C required"):
            ProblemSpec(0.5, 1.0, 1.0, 1.0, Dirichlet(0.0))

    @pytest.mark.parametrize(
        "kwargs, name",
        [
            ({"lam": 0.0}, "lambda"),
            ({"k": -1.0}, "k"),
            ({"bc": Flux(0.0)}, "q"),
            ({"bc": Convective(0.0, 1.0, 1.0)}, "m"),
            ({"bc": Convective(1.0, -2.0, 1.0)}, "h"),
        ],
    )
    def test_positivity(self, kwargs, name):
        base = {"order": 0.5, "lam": 1.0, "k": 1.0, "C": 0.0, "bc": Dirichlet(1.0)}
        base.update(kwargs)
        with pytest.raises(InvalidParameter, match=f"{name}>0 required"):
            ProblemSpec(**base)

    def test_alpha_interval(self):
        with pytest.raises(InvalidParameter, match=r"alpha in \(0,1\)"):
            ProblemSpec(1.0, 1.0, 1.0, 0.0, Dirichlet(1.0))

    def test_unknown_bc(self):
        with pytest.raises(InvalidParameter):
            ProblemSpec(0.5, 1.0, 1.0, 0.0, object())

    def test_target_must_be_positive(self):
        with pytest.raises(DegenerateProblem):
            TranscendentalTarget(0.0, "H")
        with pytest.raises(InvalidParameter):
            TranscendentalTarget(1.0, "X")


class TestTargets:
    def test_dirichlet(self):
        t = target_for(ProblemSpec(0.5, 1.0, 1.0, 3.0, Dirichlet(4.0)))
        assert t.which == "H"
        assert t.value == pytest.approx(G075_OVER_G125, rel=1e-14)

    def test_flux(self):
        t = target_for(ProblemSpec(0.5, 1.0, 1.0, 0.0, Flux(1.0)))
        assert t.which == "J"
        assert t.value == pytest.approx(G075SQ_OVER_G125, rel=1e-14)

    def test_convective_matches_dirichlet_form(self):
        t = target_for(CONV)
        assert t.which == "K"
        assert t.value == pytest.approx(G075_OVER_G125, rel=1e-14)


class TestTranscendental:
    def test_values_at_one(self):
        assert trans_H(1.0, 0.5) == pytest.approx(H_1, rel=1e-13)
        assert trans_J(1.0, 0.5) == pytest.approx(J_1, rel=1e-13)
        assert trans_K(1.0, CONV) == pytest.approx(K_1, rel=1e-13)

    def test_vanish_at_zero(self):
        for f in (lambda x: trans_H(x, 0.5), lambda x: trans_J(x, 0.5), lambda x: trans_K(x, CONV)):
            assert f(1e-9) < 1e-8

    def test_k_decomposition(self):
        r = robin_ratio(CONV)
        for eta in (0.1, 0.7, 1.5, 3.0, 5.0):
            expected = trans_H(eta, 0.5) + eta * r / mainardi(0.25, eta)
            assert trans_K(eta, CONV) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("which", ["H", "J", "K"])
    def test_strictly_increasing_on_fine_grid(self, which):
        x = np.arange(1e-3, 4.0 + 1e-12, 1e-3)
        f = {
            "H": lambda v: trans_H(v, 0.5),
            "J": lambda v: trans_J(v, 0.5),
            "K": lambda v: trans_K(v, CONV),
        }[which]
        vals = np.array([f(v) for v in x])
        assert np.all(vals > 0)
        assert np.all(np.diff(vals) > 0)

    def test_robin_ratio_requires_convective(self):
        with pytest.raises(InvalidParameter):
            robin_ratio(SPECS[0])


class TestRoot:
    def test_round_trip_small_target(self):
        spec = CONV
        target = trans_K(1e-3, spec)
        root = bisect_increasing(trans_function(spec), target)
        assert root == pytest.approx(1e-3, abs=1e-12)

    def test_residual_within_tolerance(self, case):
        spec, sol = case
        target = target_for(spec).value
        assert abs(trans_function(spec)(sol.root) - target) <= 1e-12 * max(1.0, target)

    def test_scan_oracle(self):
        root = solve_root(CONV)
        grid = np.arange(0.0, 3.0, 1e-4)[1:]
        vals = np.array([trans_K(v, CONV) for v in grid])
        scan = grid[np.argmax(vals >= target_for(CONV).value)]
        assert abs(scan - root) <= 1e-4

    def test_wrong_which(self):
        with pytest.raises(InvalidParameter, match="uses K"):
            solve_root(CONV, which="H")

    def test_bracket_failure(self):
        with pytest.raises(BracketFailure, match="exceeds 2"):
            bisect_increasing(lambda x: x, 10.0, max_root=2.0)

    def test_huge_target_fails_bracket(self):
        spec = ProblemSpec(0.5, 1.0, 1.0, 0.0, Dirichlet(1e200))
        with pytest.raises(BracketFailure):
            solve_root(spec)

    def test_assemble_rejects_nonpositive_root(self):
        with pytest.raises(DomainError):
            assemble(CONV, 0.0)

    def test_assemble_fits_front_and_wall_for_any_root(self):
        # only the Stefan condition pins the root down
        sol = assemble(CONV, 0.9 * solve_root(CONV))
        assert boundary_defect(CONV, sol, 2.0) <= 1e-12


class TestSolution:
    def test_front_condition(self, case):
        spec, sol = case
        for t in (0.1, 1.0, 10.0):
            assert evaluate_u(sol, evaluate_s(sol, t), t) == pytest.approx(spec.C, abs=1e-10)

    def test_boundary(self, case):
        spec, sol = case
        for t in (0.1, 0.5, 1.0, 10.0):
            assert boundary_defect(spec, sol, t) <= 1e-10

    def test_dirichlet_trace(self):
        spec = SPECS[0]
        sol = solve(spec)
        for t in (0.01, 1.0, 100.0):
            assert evaluate_u(sol, 0.0, t) == pytest.approx(spec.bc.B, abs=1e-13)

    def test_flux_trace(self):
        spec = SPECS[1]
        sol = solve(spec)
        for t in (0.01, 1.0, 100.0):
            assert evaluate_ux(sol, 0.0, t) * t**0.25 == pytest.approx(-spec.bc.q, rel=1e-13)

    def test_convective_wall_value(self):
        sol = solve(CONV)
        r = robin_ratio(CONV)
        expected = CONV.bc.D - (CONV.bc.D - CONV.C) * r / (fractional_erf(sol.root, 0.5) + r)
        vals = [evaluate_u(sol, 0.0, t) for t in (0.01, 1.0, 100.0)]
        assert max(vals) < CONV.bc.D
        assert np.allclose(vals, expected, rtol=0, atol=1e-13)

    def test_ux_at_wall(self, case):
        spec, sol = case
        nu = spec.order.nu
        for t in (0.3, 2.0):
            expected = -sol.b / (sol.lam * t**nu * math.gamma(1.0 - nu))
            assert evaluate_ux(sol, 0.0, t) == pytest.approx(expected, rel=1e-13)

    def test_self_similarity(self, case):
        _, sol = case
        alpha = sol.order.alpha
        x, t = 0.4 * evaluate_s(sol, 1.3), 1.3
        for c in (0.2, 1.7, 5.0):
            assert evaluate_u(sol, c * x, c ** (2 / alpha) * t) == pytest.approx(
                evaluate_u(sol, x, t), abs=1e-12
            )

    def test_front_shape(self, case):
        _, sol = case
        t = np.linspace(0.01, 10.0, 200)
        s = evaluate_s(sol, t)
        assert np.all(np.diff(s) > 0)
        np.testing.assert_allclose(s / t**sol.order.nu, sol.lam * sol.root, rtol=1e-12)
        assert evaluate_s(sol, 0.0) == 0.0

    def test_monotone_and_bounded(self, case):
        spec, sol = case
        for t in (0.1, 1.0, 10.0):
            x = np.linspace(0.0, evaluate_s(sol, t), 201)
            u = evaluate_u(sol, x, t)
            assert np.all(np.diff(u) < 0)
            assert np.all(u >= spec.C - 1e-10)
            assert np.all(u <= u[0] + 1e-10)

    def test_time_must_be_positive(self):
        sol = solve(CONV)
        with pytest.raises(DomainError):
            evaluate_u(sol, 0.1, 0.0)
        with pytest.raises(DomainError):
            evaluate_ux(sol, 0.1, -1.0)
        with pytest.raises(DomainError):
            evaluate_s(sol, -1.0)

    def test_out_of_domain_flag(self):
        sol = solve(CONV)
        s1 = evaluate_s(sol, 1.0)
        u, flag = sample_profile(sol, [0.0, 0.5 * s1, s1, 1.5 * s1], 1.0)
        assert flag.tolist() == [True, True, True, False]
        assert u[-1] < CONV.C
        assert in_domain(sol, 0.5 * s1, 1.0) is True
        assert in_domain(sol, -0.1, 1.0) is False
