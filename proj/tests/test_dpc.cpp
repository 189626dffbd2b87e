#include "goalctl/dpc/dpc.hpp"

#include <cmath>

#include "doctest.h"
#include "fd_oracle.hpp"

using namespace goalctl;
using namespace goalctl::dpc;
using goalctl::testing::fd_mlp_grads;
using goalctl::testing::max_rel_error;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

namespace {

env::EnvModel pendulum() { return env::EnvModel::double_pendulum(env::default_pendulum_params()); }

nnopt::MLP zero_policy() {
    RandomStream rng(1);
    auto net = nnopt::MLP::make({policy_feature_dim(), 16, 1}, rng);
    for (auto& w : net.weights) w.setZero();
    for (auto& b : net.biases) b.setZero();
    return net;
}

} // namespace

TEST_CASE("zero policy from rest: goal-oriented loss is 4") {
    auto model = pendulum();
    auto policy = zero_policy();
    auto rl = rollout_loss(policy, model, {ObjectiveKind::GoalOriented, 75});
    // hanging equilibrium: 1 - cos(pi) = 2 per link, cost 4, reward e^-4 per step
    CHECK(rl.loss == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(rl.mean_cos == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("objective aggregation at and near the goal") {
    const int t_len = 75;

    SUBCASE("pinned at the goal: both objectives vanish") {
        std::vector<double> costs(t_len, 0.0);
        CHECK(objective_from_costs(ObjectiveKind::GoalOriented, costs) == 0.0);
        CHECK(objective_from_costs(ObjectiveKind::Classical, costs) == 0.0);
    }

    SUBCASE("goal reached for the last k steps: loss is -log(k/T)") {
        // far (reward ~ 0) before, exactly at goal after; the undiscounted
        // finite-horizon analogue of the sparsity arithmetic
        for (int k : {5, 25, 60}) {
            std::vector<double> costs(t_len, 60.0); // e^-60: negligible reward mass
            for (int t = t_len - k; t < t_len; ++t) costs[t] = 0.0;
            const double loss = objective_from_costs(ObjectiveKind::GoalOriented, costs);
            CHECK(loss == doctest::Approx(-std::log(double(k) / t_len)).epsilon(1e-9));
        }
    }
}

TEST_CASE("rollout_loss gradients match finite differences at T = 10") {
    auto model = pendulum();
    RandomStream rng(3);
    auto policy = nnopt::MLP::make({policy_feature_dim(), 8, 1}, rng);
    // small weights so the short rollout stays in a smooth regime
    for (auto& w : policy.weights) w *= 0.3;

    for (ObjectiveKind kind : {ObjectiveKind::GoalOriented, ObjectiveKind::Classical}) {
        DpcObjective obj{kind, 10};
        auto rl = rollout_loss(policy, model, obj);
        rl.tape.backward(rl.loss_var);
        auto ad = nnopt::collect_grads(rl.tape, rl.slots);

        auto loss_value = [&]() { return rollout_loss(policy, model, obj).loss; };
        auto fd = fd_mlp_grads(policy, loss_value, 1e-5);
        CHECK(max_rel_error(ad, fd) < 1e-4);
    }
}

TEST_CASE("per-rollout Jensen ordering of the two objectives") {
    auto model = pendulum();
    RandomStream rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto policy = nnopt::MLP::make({policy_feature_dim(), 16, 1}, rng);
        auto rl = rollout_loss(policy, model, {ObjectiveKind::GoalOriented, 40});

        std::vector<double> costs;
        for (std::size_t t = 1; t < rl.rollout.states.size(); ++t) {
            const Vec& s = rl.rollout.states[t];
            const double r1 = 1.0 - std::cos(s(0)), r2 = 1.0 - std::cos(s(1));
            costs.push_back(0.5 * (r1 * r1 + r2 * r2));
        }
        // (1/T) sum log r_t <= log((1/T) sum r_t)
        double mean_log = 0.0, mean_r = 0.0;
        for (double c : costs) {
            mean_log += -c;
            mean_r += std::exp(-c);
        }
        mean_log /= costs.size();
        mean_r /= costs.size();
        CHECK(mean_log <= std::log(mean_r) + 1e-12);
    }
}

TEST_CASE("Jensen ordering is an equality on constant trajectories") {
    auto model = pendulum();
    auto policy = zero_policy(); // stays at the hanging equilibrium
    auto rl = rollout_loss(policy, model, {ObjectiveKind::GoalOriented, 30});
    const double goal_loss = rl.loss;
    auto rl2 = rollout_loss(policy, model, {ObjectiveKind::Classical, 30});
    // -goal_loss = log mean r; -classical = mean log r; equal for constant r_t
    CHECK(-goal_loss == doctest::Approx(-rl2.loss).epsilon(1e-9));
}

TEST_CASE("train_dpc with zero iterations returns the initialized policy") {
    auto model = pendulum();
    DpcConfig cfg;
    cfg.iterations = 0;
    cfg.seed = 9;
    auto run = train_dpc(cfg, model);
    RandomStream rng = named_stream(9, "net-init");
    auto expect = nnopt::MLP::make({policy_feature_dim(), 64, 64, 1}, rng);
    for (std::size_t l = 0; l < expect.weights.size(); ++l)
        CHECK(run.policy.weights[l] == expect.weights[l]);
    CHECK(run.curve.empty());
}

TEST_CASE("train_dpc is reproducible: identical config and seed, identical curve") {
    auto model = pendulum();
    DpcConfig cfg;
    cfg.iterations = 8;
    cfg.objective.horizon = 20;
    cfg.hidden = {16};
    cfg.seed = 4;
    auto a = train_dpc(cfg, model);
    auto b = train_dpc(cfg, model);
    REQUIRE(a.curve.size() == b.curve.size());
    for (std::size_t i = 0; i < a.curve.size(); ++i) {
        CHECK(a.curve[i].loss == b.curve[i].loss);
        CHECK(a.curve[i].mean_cos == b.curve[i].mean_cos);
    }
    for (std::size_t l = 0; l < a.policy.weights.size(); ++l)
        CHECK(a.policy.weights[l] == b.policy.weights[l]);
}

TEST_CASE("training reduces the goal-oriented loss on a short horizon") {
    auto model = pendulum();
    DpcConfig cfg;
    cfg.iterations = 60;
    cfg.objective = {ObjectiveKind::GoalOriented, 25};
    cfg.hidden = {16};
    cfg.optimizer = OptimizerKind::Adam;
    cfg.lr = 1e-2;
    cfg.seed = 3;
    auto run = train_dpc(cfg, model);
    CHECK(run.curve.back().loss < run.curve.front().loss);
}
