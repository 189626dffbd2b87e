#include "goalctl/analysis/grid_dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "goalctl/analysis/quadrature.hpp"

namespace goalctl::analysis {

namespace {

double interp_clamped(const Vec& axis, const Vec& values, double x) {
    const int n = static_cast<int>(axis.size());
    if (x <= axis(0)) return values(0);
    if (x >= axis(n - 1)) return values(n - 1);
    const double step = (axis(n - 1) - axis(0)) / (n - 1);
    const int i = std::min(n - 2, static_cast<int>((x - axis(0)) / step));
    const double w = (x - axis(i)) / step;
    return (1.0 - w) * values(i) + w * values(i + 1);
}

} // namespace

double GridDpResult::value_at(double x) const { return interp_clamped(states, value, x); }
double GridDpResult::action_at(double x) const { return interp_clamped(states, greedy_action, x); }

Policy GridDpResult::greedy_policy() const {
    return [self = *this](const Vec& x) { return Vec::Constant(1, self.action_at(x(0))); };
}

GridDpResult grid_value_iteration(const EnvModel& model, const reward::RewardSpec& spec,
                                  double gamma, const GridSpec& state_grid,
                                  const GridSpec& action_grid, int quad_order, double tol,
                                  int max_iters) {
    const auto& p = model.lg();
    if (p.A.rows() != 1 || p.B.cols() != 1)
        throw ConfigError("grid_value_iteration: needs a scalar state and action");
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw ConfigError("grid_value_iteration: gamma must lie in [0,1)");
    const double a = p.A(0, 0), b = p.B(0, 0);
    const double sw = std::sqrt(p.sigma_w(0, 0));

    const Vec xs = state_grid.axis();
    const Vec us = action_grid.axis();
    const int nx = state_grid.points, nu = action_grid.points;
    const GaussHermite gh = GaussHermite::make(quad_order);
    const int nq = quad_order;

    // precompute rewards and interpolation stencils per (state, action)
    Mat rewards(nx, nu);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nu; ++j)
            rewards(i, j) = reward::stage_reward(spec, Vec::Constant(1, xs(i)),
                                                 Vec::Constant(1, us(j)), Vec(), model);

    const double step = (state_grid.hi - state_grid.lo) / (nx - 1);
    std::vector<int> idx(static_cast<std::size_t>(nx) * nu * nq);
    std::vector<double> frac(idx.size());
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nu; ++j)
            for (int q = 0; q < nq; ++q) {
                const double xn = a * xs(i) + b * us(j) + sw * gh.points(q);
                double pos = (xn - state_grid.lo) / step;
                pos = std::clamp(pos, 0.0, static_cast<double>(nx - 1));
                int cell = std::min(nx - 2, static_cast<int>(pos));
                const std::size_t k = (static_cast<std::size_t>(i) * nu + j) * nq + q;
                idx[k] = cell;
                frac[k] = pos - cell;
            }

    Vec value = Vec::Zero(nx);
    Vec next(nx);
    Vec greedy = Vec::Zero(nx);
    int iterations = 0;
    for (int it = 1; it <= max_iters; ++it) {
        for (int i = 0; i < nx; ++i) {
            double best = -std::numeric_limits<double>::infinity();
            int best_j = 0;
            for (int j = 0; j < nu; ++j) {
                double ev = 0.0;
                const std::size_t base = (static_cast<std::size_t>(i) * nu + j) * nq;
                for (int q = 0; q < nq; ++q) {
                    const int c = idx[base + q];
                    const double f = frac[base + q];
                    ev += gh.weights(q) * ((1.0 - f) * value(c) + f * value(c + 1));
                }
                const double cand = rewards(i, j) + gamma * ev;
                if (cand > best) {
                    best = cand;
                    best_j = j;
                }
            }
            next(i) = best;
            greedy(i) = us(best_j);
        }
        const double delta = (next - value).cwiseAbs().maxCoeff();
        value = next;
        iterations = it;
        if (delta < tol) {
            GridDpResult out;
            out.states = xs;
            out.value = value;
            out.greedy_action = greedy;
            out.iterations = iterations;
            return out;
        }
    }
    throw NonConvergence("grid_value_iteration: sup-norm tolerance not reached");
}

} // namespace goalctl::analysis
