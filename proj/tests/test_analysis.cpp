#include "goalctl/analysis/belief_dp.hpp"
#include "goalctl/analysis/grid_dp.hpp"
#include "goalctl/analysis/kalman.hpp"
#include "goalctl/analysis/objectives.hpp"
#include "goalctl/analysis/quadrature.hpp"
#include "goalctl/analysis/riccati.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "test_models.hpp"

using namespace goalctl;
using namespace goalctl::analysis;
using goalctl::testing::lg2d;
using goalctl::testing::lg_scalar;

namespace {

Trajectory constant_trajectory(const Vec& x, int steps, double gamma) {
    Trajectory t;
    t.gamma = gamma;
    for (int i = 0; i < steps; ++i) t.states.push_back(x);
    return t;
}

// spectral-radius-stable random linear gain for a 2D system
Mat random_stabilizing_gain(const env::LinearGaussianParams& p, RandomStream& rng) {
    for (;;) {
        Mat k(1, 2);
        k << rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5);
        const Mat closed = p.A - p.B * k;
        if (closed.eigenvalues().cwiseAbs().maxCoeff() < 0.95) return k;
    }
}

} // namespace

TEST_CASE("score_trajectory: at the origin classical is 1 and goal sums the discounts") {
    auto t = constant_trajectory(Vec::Zero(2), 600, 0.9);
    auto s = score_trajectory(t);
    CHECK(s.classical == 1.0);
    CHECK(s.goal_oriented == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("score_trajectory: far-then-goal reproduces the sparsity arithmetic") {
    Trajectory t;
    t.gamma = 0.9;
    for (int i = 0; i < 5; ++i) t.states.push_back(Vec::Constant(1, 10.0));
    for (int i = 5; i < 400; ++i) t.states.push_back(Vec::Zero(1));
    auto s = score_trajectory(t);
    // goal objective ~ gamma^5 / (1 - gamma); the five far terms add ~e^-50
    CHECK(std::abs(s.goal_oriented - std::pow(0.9, 5) / 0.1) < 1e-6);
    CHECK(s.classical <= std::exp(-50.0));
}

TEST_CASE("jensen_check: hand-computed two-term convex combination") {
    // gamma = 0.5 gives weights (2/3, 1/3)
    auto jc = jensen_check({0.2, 0.8}, 0.5);
    CHECK(jc.lhs == doctest::Approx(-1.14734).epsilon(1e-4));
    CHECK(jc.rhs == doctest::Approx(std::log(0.4)).epsilon(1e-12));
    CHECK(jc.holds);
}

TEST_CASE("jensen_check: equality on constant sequences") {
    auto jc = jensen_check(std::vector<double>(50, 0.37), 0.93);
    CHECK(std::abs(jc.slack) < 1e-9);
}

TEST_CASE("verify_prob_bound: constant trajectory gives equality") {
    auto rep = verify_prob_bound_trajectory(std::vector<double>(80, 0.15), 0.9);
    CHECK(rep.holds);
    CHECK(std::abs(rep.gap) < 1e-9);
}

TEST_CASE("verify_prob_bound holds over random linear policies") {
    auto m = lg2d();
    RandomStream rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        Mat k = random_stabilizing_gain(m.lg(), rng);
        Policy pi = [k](const Vec& x) { return Vec(-(k * x)); };
        RandomStream ep = rng.child(trial);
        auto rep = verify_prob_bound(pi, m, 0.9, 40, 120, ep);
        REQUIRE(rep.holds);
        REQUIRE(rep.min_trajectory_slack >= -1e-12);
    }
}

TEST_CASE("verify_lqr_bound: origin equilibrium gives equality") {
    env::LinearGaussianParams p;
    p.A = 0.5 * Mat::Identity(2, 2);
    p.B = (Mat(2, 1) << 0.0, 1.0).finished();
    p.sigma_w = Mat::Zero(2, 2);
    p.C = Mat::Identity(2, 2);
    p.sigma_v = Mat::Zero(2, 2);
    p.x0_mean = Vec::Zero(2);
    p.x0_cov = Mat::Zero(2, 2);
    auto m = env::EnvModel::linear_gaussian(p);
    Policy zero = [](const Vec&) { return Vec::Zero(1); };
    RandomStream rng(3);
    auto rep = verify_lqr_bound(zero, m, Mat::Identity(2, 2), Mat::Identity(1, 1), 0.9, 4,
                                400, rng);
    CHECK(rep.holds);
    CHECK(std::abs(rep.lhs) < 1e-12);
    CHECK(std::abs(rep.rhs) < 1e-12);
}

TEST_CASE("verify_lqr_bound: scaling R lowers the left side and fixes the right") {
    auto m = lg2d();
    Mat k = (Mat(1, 2) << 0.3, 0.8).finished();
    Policy pi = [k](const Vec& x) { return Vec(-(k * x)); };
    const Mat mm = Mat::Identity(2, 2);
    RandomStream r1(7), r2(7); // same rollouts
    auto rep1 = verify_lqr_bound(pi, m, mm, Mat::Identity(1, 1), 0.9, 50, 120, r1);
    auto rep10 = verify_lqr_bound(pi, m, mm, 10.0 * Mat::Identity(1, 1), 0.9, 50, 120, r2);
    CHECK(rep10.lhs < rep1.lhs);
    CHECK(rep10.rhs == rep1.rhs);
    CHECK(rep1.holds);
    CHECK(rep10.holds);
}

TEST_CASE("verify_lqr_bound holds over random SPD weights and stabilizing policies") {
    RandomStream rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        auto m = lg2d();
        Mat g(2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) g(r, c) = rng.normal();
        Mat mm = g * g.transpose() + 0.1 * Mat::Identity(2, 2);
        Mat rr = Mat::Constant(1, 1, rng.uniform(0.05, 3.0));
        Mat k = random_stabilizing_gain(m.lg(), rng);
        Policy pi = [k](const Vec& x) { return Vec(-(k * x)); };
        RandomStream ep = rng.child(trial);
        auto rep = verify_lqr_bound(pi, m, mm, rr, 0.9, 30, 120, ep);
        REQUIRE(rep.holds);
    }
}

TEST_CASE("kalman: near-noiseless measurements pin the posterior to the observation") {
    auto m = lg_scalar(0.9, 1.0, 0.5, 1e-6, 0.0, 2.0);
    std::vector<Vec> obs{Vec::Constant(1, 1.234)};
    auto est = kalman_filter(m, obs, {});
    CHECK(std::abs(est[0].mean(0) - 1.234) < 1e-6);
}

TEST_CASE("kalman: open-loop covariance follows the predict recursion") {
    auto m = lg2d();
    std::vector<Vec> actions(5, Vec::Zero(1));
    auto est = kalman_filter(m, {}, actions);
    Mat cov = m.lg().x0_cov;
    CHECK((est[0].cov - cov).norm() == 0.0);
    for (int t = 0; t < 5; ++t) {
        cov = m.lg().A * cov * m.lg().A.transpose() + m.lg().sigma_w;
        CHECK((est[t + 1].cov - cov).norm() < 1e-14);
    }
}

TEST_CASE("kalman: long-run covariance matches the Riccati fixed point") {
    auto m = lg2d();
    const Mat steady = kalman_steady_state_cov(m);
    // run the filter for many steps on synthetic data
    RandomStream rng(9);
    auto [x, psi] = m.sample_initial(rng);
    std::vector<Vec> obs{m.measure(x, rng)};
    std::vector<Vec> actions;
    for (int t = 0; t < 200; ++t) {
        Vec u = Vec::Constant(1, 0.1);
        actions.push_back(u);
        x = m.transition(x, u, psi, rng);
        obs.push_back(m.measure(x, rng));
    }
    auto est = kalman_filter(m, obs, actions);
    CHECK((est.back().cov - steady).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("dlqr: scalar unit system solves to the golden ratio") {
    auto res = dlqr(Mat::Identity(1, 1), Mat::Identity(1, 1), Mat::Identity(1, 1),
                    Mat::Identity(1, 1), 1.0);
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    CHECK(res.cost_to_go(0, 0) == doctest::Approx(phi).epsilon(1e-10));
    CHECK(res.gain(0, 0) == doctest::Approx(phi / (1.0 + phi)).epsilon(1e-10));
}

TEST_CASE("dlqr: no actuation means zero gain") {
    Mat a = (Mat(2, 2) << 0.8, 0.1, 0.0, 0.7).finished();
    auto res = dlqr(a, Mat::Zero(2, 1), Mat::Identity(2, 2), Mat::Identity(1, 1), 0.95);
    CHECK(res.gain.norm() == 0.0);
}

TEST_CASE("dlqr: myopic limit collapses the gain") {
    const double gamma = 1e-8;
    Mat a = (Mat(1, 1) << 1.2).finished();
    Mat b = Mat::Identity(1, 1);
    Mat q = Mat::Identity(1, 1);
    Mat r = Mat::Identity(1, 1);
    auto res = dlqr(a, b, q, r, gamma);
    CHECK(res.gain.norm() <= 1e-6);
    // P -> Q, K -> gamma (R + gamma B'QB)^-1 B'QA
    const double expect = gamma / (1.0 + gamma) * 1.2;
    CHECK(res.gain(0, 0) == doctest::Approx(expect).epsilon(1e-4));
}

TEST_CASE("grid DP: zero reward gives zero value everywhere") {
    auto m = lg_scalar(1.0, 1.0, 1.0, 1.0);
    reward::RewardSpec spec{reward::Indicator{1e-6}, Vec::Constant(1, 1e6)};
    GridSpec xg{-2.0, 2.0, 41}, ug{-2.0, 2.0, 41};
    auto res = grid_value_iteration(m, spec, 0.9, xg, ug);
    CHECK(res.value.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("grid DP: myopic goal-density policy is deadbeat on the grid") {
    auto m = lg_scalar(1.0, 1.0, 1.0, 1.0);
    reward::RewardSpec spec{reward::GoalDensity{}, Vec::Zero(1)};
    GridSpec xg{-2.0, 2.0, 21}, ug{-2.0, 2.0, 21}; // aligned grids: -x_i is on the grid
    auto res = grid_value_iteration(m, spec, 0.0, xg, ug);
    for (int i = 0; i < xg.points; ++i)
        CHECK(res.greedy_action(i) == doctest::Approx(-res.states(i)).epsilon(1e-12));
}

TEST_CASE("grid DP goal-oriented policy beats the Riccati LQR under the goal objective") {
    // desk-scale study system
    auto m = lg_scalar(1.05, 1.0, 1.0, 1.0, 0.0, 1.0);
    const double gamma = 0.95;
    reward::RewardSpec spec{reward::GoalDensity{}, Vec::Zero(1)};
    GridSpec xg{-8.0, 8.0, 161}, ug{-9.0, 9.0, 121};
    auto dp = grid_value_iteration(m, spec, gamma, xg, ug);

    auto lqr = dlqr(m.lg().A, m.lg().B, Mat::Identity(1, 1), Mat::Identity(1, 1), gamma);
    Policy lqr_pi = [k = lqr.gain](const Vec& x) { return Vec(-(k * x)); };

    RandomStream rng(77);
    auto diff = policy_eval_difference(dp.greedy_policy(), lqr_pi, m, spec, gamma, 600, 120,
                                       rng);
    CHECK(diff.value > 0.0);
    CHECK(diff.value > 3.0 * diff.std_error);
}

TEST_CASE("policy_eval: zero and constant rewards") {
    auto m = lg_scalar(0.9, 1.0, 0.3, 0.3);
    Policy zero = [](const Vec&) { return Vec::Zero(1); };
    RandomStream rng(5);

    reward::RewardSpec never{reward::Indicator{1e-9}, Vec::Constant(1, 1e9)};
    auto e0 = policy_eval_goal_objective(zero, m, never, 0.9, 20, 50, rng);
    CHECK(e0.value == 0.0);
    CHECK(e0.std_error == 0.0);

    reward::RewardSpec always{reward::Indicator{1e18}, Vec::Zero(1)};
    auto e1 = policy_eval_goal_objective(zero, m, always, 0.9, 20, 50, rng);
    CHECK(e1.value == doctest::Approx((1.0 - std::pow(0.9, 50)) / 0.1).epsilon(1e-12));
    CHECK(e1.std_error < 1e-12);
}

TEST_CASE("policy_eval: J grows with gamma for nonnegative rewards") {
    auto m = lg_scalar(0.9, 1.0, 0.4, 0.4);
    Policy zero = [](const Vec&) { return Vec::Zero(1); };
    reward::RewardSpec spec{reward::GaussianShaped{Mat::Identity(1, 1)}, Vec::Zero(1)};
    double prev = -1.0;
    for (double gamma : {0.5, 0.9, 0.99}) {
        RandomStream rng(8);
        auto est = policy_eval_goal_objective(zero, m, spec, gamma, 50, 400, rng);
        CHECK(est.value > prev);
        prev = est.value;
    }
}

TEST_CASE("belief DP: tower property equates the two reward placements") {
    auto m = lg_scalar(1.0, 1.0, 0.6, 0.5);
    reward::RewardSpec spec{reward::GoalDensity{}, Vec::Zero(1)};
    GridSpec mg{-4.0, 4.0, 81}, vg{std::log(1e-4), std::log(4.0), 31}, ug{-3.0, 3.0, 13};
    auto prior =
        belief_grid_value_iteration(m, spec, 0.9, mg, vg, ug, RewardPlacement::PriorReward, 32);
    auto cond = belief_grid_value_iteration(m, spec, 0.9, mg, vg, ug,
                                            RewardPlacement::ObservationConditioned, 32);
    CHECK((prior.value - cond.value).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("belief DP: uninformative measurements make the value variance-free") {
    // shaped reward on the mean; with K ~ 0 the mean path never feels the
    // variance coordinate
    auto m = lg_scalar(0.9, 1.0, 0.5, 1e8);
    reward::RewardSpec spec{reward::GaussianShaped{Mat::Identity(1, 1)}, Vec::Zero(1)};
    GridSpec mg{-4.0, 4.0, 81}, vg{std::log(1e-4), std::log(4.0), 21}, ug{-3.0, 3.0, 13};
    auto res = belief_grid_value_iteration(m, spec, 0.9, mg, vg, ug,
                                           RewardPlacement::PriorReward, 16);
    for (int i = 0; i < mg.points; ++i) {
        const double spread = res.value.row(i).maxCoeff() - res.value.row(i).minCoeff();
        CHECK(spread < 1e-6);
    }
}

TEST_CASE("belief DP: variance-zero slice matches the state-grid solver") {
    // near-noiseless measurements keep the belief on the zero-variance slice
    auto m = lg_scalar(0.95, 1.0, 0.7, 1e-3);
    reward::RewardSpec spec{reward::GoalDensity{}, Vec::Zero(1)};
    const double gamma = 0.9;
    GridSpec xg{-5.0, 5.0, 101}, ug{-4.0, 4.0, 41};
    auto state_dp = grid_value_iteration(m, spec, gamma, xg, ug, 32);

    GridSpec vg{std::log(1e-8), std::log(4.0), 41};
    auto belief_dp = belief_grid_value_iteration(m, spec, gamma, xg, vg, ug,
                                                 RewardPlacement::PriorReward, 32);

    // interpolation error scale of the state grid: max second difference / 8
    double interp_err = 0.0;
    for (int i = 1; i + 1 < xg.points; ++i)
        interp_err = std::max(interp_err,
                              std::abs(state_dp.value(i + 1) - 2 * state_dp.value(i)
                                       + state_dp.value(i - 1)) / 8.0);

    double worst = 0.0;
    for (int i = 0; i < xg.points; ++i)
        worst = std::max(worst, std::abs(belief_dp.value(i, 0) - state_dp.value(i)));
    CHECK(worst <= 2.0 * interp_err);
}

TEST_CASE("gauss-hermite integrates polynomial moments exactly") {
    auto gh = GaussHermite::make(16);
    double m2 = 0.0, m4 = 0.0, m6 = 0.0;
    for (int k = 0; k < 16; ++k) {
        const double z = gh.points(k), w = gh.weights(k);
        m2 += w * z * z;
        m4 += w * z * z * z * z;
        m6 += w * std::pow(z, 6);
    }
    CHECK(m2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m4 == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(m6 == doctest::Approx(15.0).epsilon(1e-11));
}
