#pragma once

#include <utility>
#include <variant>

#include <Eigen/Dense>

#include "goalctl/core/errors.hpp"
#include "goalctl/core/gaussian.hpp"
#include "goalctl/core/random.hpp"
#include "goalctl/env/cstr.hpp"
#include "goalctl/env/double_pendulum.hpp"

namespace goalctl::env {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Fixed-per-episode multipliers on CSTR kinetics; identity for other kinds.
struct ScenarioParams {
    double alpha = 1.0;
    double beta = 1.0;
};

struct LinearGaussianParams {
    Mat A, B;
    Mat sigma_w;       // process noise covariance (zero allowed: deterministic)
    Mat C;             // measurement map
    Mat sigma_v;       // measurement noise covariance (zero: noiseless)
    Vec x0_mean;
    Mat x0_cov;        // zero: point mass
    Vec u_lo, u_hi;
};

struct CstrParams {
    CstrConstants constants;
    double dt = 0.005;  // hours
    int substeps = 4;
    Vec meas_noise_std; // 4-vector, per-state measurement noise
    Vec x0_lo, x0_hi;   // box-uniform initial state
    double alpha_lo = 0.85, alpha_hi = 1.15;
    double beta_lo = 0.85, beta_hi = 1.15;
    Vec u_lo, u_hi;
};

enum class EnvKind { LinearGaussian, Cstr, DoublePendulum };

// Immutable simulated plant: transition/measurement pair with sampling, plus
// the transition log-density where it exists in closed form. Safe to share
// across rollouts; all randomness comes through the caller's streams.
class EnvModel {
public:
    static EnvModel linear_gaussian(LinearGaussianParams p);
    static EnvModel cstr(CstrParams p);
    static EnvModel double_pendulum(DoublePendulumParams p);

    EnvKind kind() const { return kind_; }
    int state_dim() const;
    int action_dim() const;
    int obs_dim() const;

    Vec action_lower() const;
    Vec action_upper() const;
    // Out-of-bounds actions are clipped, never rejected.
    Vec clamp_action(const Vec& u) const;

    std::pair<Vec, ScenarioParams> sample_initial(RandomStream& rng) const;
    ScenarioParams nominal_scenario() const { return {}; }
    ScenarioParams sample_scenario(RandomStream& rng) const;

    Vec transition(const Vec& x, const Vec& u, const ScenarioParams& psi, RandomStream& rng) const;
    Vec measure(const Vec& x, RandomStream& rng) const;

    // log N(x_next; Ax + Bu, sigma_w); DensityUnavailable for deterministic kinds.
    double transition_logpdf(const Vec& x, const Vec& u, const ScenarioParams& psi,
                             const Vec& x_next) const;
    double measurement_logpdf(const Vec& x, const Vec& y) const;

    bool has_transition_density() const;
    // sup of the transition density, i.e. the bounded-density constant used
    // in truncation tail bounds.
    double transition_density_bound() const;

    const LinearGaussianParams& lg() const;
    const CstrParams& cstr_params() const;
    const DoublePendulumParams& pendulum_params() const;

private:
    EnvModel(EnvKind kind) : kind_(kind) {}

    EnvKind kind_;
    std::variant<LinearGaussianParams, CstrParams, DoublePendulumParams> params_;

    // caches for the linear-Gaussian kind
    GaussianDensity proc_noise_, meas_noise_, init_dist_;
    bool proc_noise_zero_ = false, meas_noise_zero_ = false, init_point_mass_ = false;
};

// Benchmark operating point: van-de-Vusse constants, box-uniform start around
// (0.8, 0.5, 134.14, 130), uniform scenario priors on [0.85, 1.15].
CstrParams default_cstr_params();

DoublePendulumParams default_pendulum_params();

} // namespace goalctl::env
