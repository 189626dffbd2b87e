#include "goalctl/reward/reward.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "test_models.hpp"

using namespace goalctl;
using namespace goalctl::reward;
using goalctl::testing::lg2d;
using goalctl::testing::lg_scalar;
using Mat = Eigen::MatrixXd;

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

} // namespace

TEST_CASE("GaussianShaped is one at the goal") {
    auto m = lg2d();
    RewardSpec spec{GaussianShaped{Mat::Identity(2, 2)}, (Vec(2) << 0.4, -0.7).finished()};
    CHECK(stage_reward(spec, spec.goal, Vec::Zero(1), Vec::Zero(2), m) == 1.0);
}

TEST_CASE("GaussianShaped at the hanging pendulum is exp(-4)") {
    auto m = env::EnvModel::double_pendulum(env::default_pendulum_params());
    RewardSpec spec{GaussianShaped{Mat::Identity(2, 2)}, Vec::Zero(6)};
    Vec hanging = Vec::Zero(6);
    hanging(0) = std::numbers::pi;
    hanging(1) = std::numbers::pi;
    CHECK(stage_reward(spec, hanging, Vec::Zero(1), Vec::Zero(6), m) ==
          doctest::Approx(std::exp(-4.0)).epsilon(1e-12));
}

TEST_CASE("GoalDensity on a scalar linear-Gaussian system") {
    auto m = lg_scalar(1.0, 1.0, 1.0, 1.0);
    RewardSpec spec{GoalDensity{}, Vec::Zero(1)};
    // Ax + Bu = 0 at x = 1, u = -1
    const double r = stage_reward(spec, Vec::Constant(1, 1.0), Vec::Constant(1, -1.0),
                                  Vec::Zero(1), m);
    CHECK(r == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("GoalDensity raises DensityUnavailable on deterministic environments") {
    auto m = env::EnvModel::cstr(env::default_cstr_params());
    RewardSpec spec{GoalDensity{}, Vec::Zero(4)};
    CHECK_THROWS_AS(stage_reward(spec, Vec::Zero(4), Vec::Zero(2), Vec::Zero(4), m),
                    DensityUnavailable);
}

TEST_CASE("Quadratic reward is a negative cost with action penalty") {
    auto m = lg2d();
    RewardSpec spec{Quadratic{2.0 * Mat::Identity(2, 2), Mat::Identity(1, 1)}, Vec::Zero(2)};
    const Vec x = (Vec(2) << 1.0, 1.0).finished();
    const Vec u = Vec::Constant(1, 2.0);
    // -(1/2)(2*2 + 4) = -4
    CHECK(stage_reward(spec, x, u, Vec::Zero(2), m) == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(stage_reward(spec, x, u, Vec::Zero(2), m) <= 0.0);
}

TEST_CASE("Indicator fires only inside the epsilon ball") {
    auto m = lg2d();
    RewardSpec spec{Indicator{0.25}, Vec::Zero(2)};
    CHECK(stage_reward(spec, (Vec(2) << 0.1, 0.1).finished(), Vec::Zero(1), Vec::Zero(2), m) == 1.0);
    CHECK(stage_reward(spec, (Vec(2) << 0.3, 0.0).finished(), Vec::Zero(1), Vec::Zero(2), m) == 0.0);
}

TEST_CASE("measurement-conditioned reward: all particles inside / none inside") {
    auto m = lg_scalar(1.0, 0.0, 0.1, 0.5); // A=1, B=0, mild process noise
    const double eps = 0.05;
    RewardSpec spec{MeasurementConditioned{eps, {0}}, Vec::Zero(1)};

    // particle cloud pinned at the goal; y at the goal keeps them inside
    std::vector<belief::Particle> ps(64, belief::Particle{Vec::Zero(1), {}});
    belief::ParticleBelief b(ps, Vec::Constant(64, 1.0 / 64));
    RandomStream rng(3);

    // process noise 0.1 moves particles < eps with high probability per draw;
    // use zero-noise model for the exact all-inside arithmetic
    auto m0 = lg_scalar(1.0, 0.0, 0.0, 0.5);
    const double r = measurement_conditioned_reward(spec, b, Vec::Zero(1), Vec::Zero(1), m0, rng);
    CHECK(r == doctest::Approx(1.0 / (2.0 * eps)).epsilon(1e-12));

    // far goal: nothing inside
    RewardSpec far{MeasurementConditioned{eps, {0}}, Vec::Constant(1, 100.0)};
    CHECK(measurement_conditioned_reward(far, b, Vec::Zero(1), Vec::Zero(1), m0, rng) == 0.0);
}

TEST_CASE("measurement-conditioned reward matches the analytic one-step posterior") {
    // scalar LG where the one-step posterior is Gaussian in closed form
    const double a = 0.9, bcoef = 1.0, sw = 0.4, sv = 0.5;
    const double m0 = 0.3, s0 = 0.6;
    auto model = lg_scalar(a, bcoef, sw, sv, m0, s0);

    const double eps = 0.1;
    RewardSpec spec{MeasurementConditioned{eps, {0}}, Vec::Zero(1)};

    const int p = 10000;
    RandomStream rng(101);
    auto b = belief::init_from_prior(model, p, rng);

    const double u = -0.2, y_next = 0.15;
    belief::ParticleBelief post = b;
    const double est = measurement_conditioned_reward(spec, b, Vec::Constant(1, u),
                                                      Vec::Constant(1, y_next), model, rng, &post);

    // analytic: predict N(a m0 + b u, a^2 s0^2 + sw^2), then Kalman update
    const double m1 = a * m0 + bcoef * u;
    const double s1 = a * a * s0 * s0 + sw * sw;
    const double k = s1 / (s1 + sv * sv);
    const double mu = m1 + k * (y_next - m1);
    const double var = (1.0 - k) * s1;
    const double sd = std::sqrt(var);
    const double exact =
        (normal_cdf((eps - mu) / sd) - normal_cdf((-eps - mu) / sd)) / (2.0 * eps);

    // weighted-mean standard error of the histogram estimate
    double se2 = 0.0;
    for (int i = 0; i < post.size(); ++i) {
        const double fi = std::abs(post.particles()[i].state(0)) < eps ? 1.0 / (2 * eps) : 0.0;
        se2 += post.weights()(i) * post.weights()(i) * (fi - est) * (fi - est);
    }
    CHECK(std::abs(est - exact) < 3.0 * std::sqrt(se2) + 1e-9);
}

TEST_CASE("GaussianShaped decreases strictly in the quadratic form") {
    auto m = lg2d();
    Mat M = (Mat(2, 2) << 2.0, 0.3, 0.3, 1.0).finished();
    RewardSpec spec{GaussianShaped{M}, Vec::Zero(2)};
    RandomStream rng(7);
    for (int k = 0; k < 200; ++k) {
        Vec x1 = rng.normal_vector(2), x2 = rng.normal_vector(2);
        const double q1 = x1.dot(M * x1), q2 = x2.dot(M * x2);
        const double r1 = stage_reward(spec, x1, Vec::Zero(1), Vec::Zero(2), m);
        const double r2 = stage_reward(spec, x2, Vec::Zero(1), Vec::Zero(2), m);
        if (q1 < q2) CHECK(r1 > r2);
        if (q2 < q1) CHECK(r2 > r1);
    }
}

TEST_CASE("scaled GaussianShaped approaches the indicator outside the ball") {
    auto m = lg2d();
    const Vec x = (Vec(2) << 0.5, 0.0).finished(); // ||x|| = 0.5 > eps
    double prev = 2.0;
    for (double c : {1.0, 10.0, 100.0}) {
        RewardSpec spec{GaussianShaped{c * Mat::Identity(2, 2)}, Vec::Zero(2)};
        const double r = stage_reward(spec, x, Vec::Zero(1), Vec::Zero(2), m);
        CHECK(r < prev);
        prev = r;
    }
    CHECK(prev < 1e-5); // c = 100: exp(-12.5)
}

TEST_CASE("time_near_goal sums the Gaussian proximity kernel") {
    Trajectory traj;
    traj.gamma = 0.9;
    const double sigma = 0.05;

    SUBCASE("pinned at the goal for L steps") {
        for (int t = 0; t < 12; ++t)
            traj.states.push_back((Vec(4) << 0.8, 0.6, 134.0, 130.0).finished());
        CHECK(reward::time_near_goal(traj, 0.6, sigma, 1) == doctest::Approx(12.0).epsilon(1e-12));
    }
    SUBCASE("empty trajectory scores zero") {
        CHECK(reward::time_near_goal(traj, 0.6, sigma, 1) == 0.0);
    }
    SUBCASE("offset by exactly sigma each step") {
        for (int t = 0; t < 7; ++t)
            traj.states.push_back((Vec(4) << 0.8, 0.6 + sigma, 134.0, 130.0).finished());
        CHECK(reward::time_near_goal(traj, 0.6, sigma, 1) ==
              doctest::Approx(7.0 * std::exp(-0.5)).epsilon(1e-12));
    }
}

TEST_CASE("reward values are finite for finite inputs") {
    auto m = lg2d();
    RandomStream rng(15);
    std::vector<RewardSpec> specs;
    specs.push_back({Quadratic{Mat::Identity(2, 2), Mat::Identity(1, 1)}, Vec::Zero(2)});
    specs.push_back({GaussianShaped{Mat::Identity(2, 2)}, Vec::Zero(2)});
    specs.push_back({GoalDensity{}, Vec::Zero(2)});
    specs.push_back({Indicator{0.1}, Vec::Zero(2)});
    for (int k = 0; k < 100; ++k) {
        Vec x = 100.0 * rng.normal_vector(2);
        Vec u = 100.0 * rng.normal_vector(1);
        for (const auto& spec : specs)
            CHECK(std::isfinite(stage_reward(spec, x, u, Vec::Zero(2), m)));
    }
}
