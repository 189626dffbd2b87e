#include "goalctl/env/model.hpp"

#include <cmath>
#include <numbers>

namespace goalctl::env {

namespace {

bool is_zero(const Mat& m) { return m.size() == 0 || m.isZero(0.0); }

void require_covariance(const Mat& m, const char* name) {
    if (m.rows() != m.cols()) throw ConfigError(std::string(name) + ": covariance must be square");
    if (!m.isApprox(m.transpose(), 1e-12))
        throw ConfigError(std::string(name) + ": covariance must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    if (es.eigenvalues().minCoeff() < -1e-12)
        throw ConfigError(std::string(name) + ": covariance must be positive semidefinite");
}

} // namespace

EnvModel EnvModel::linear_gaussian(LinearGaussianParams p) {
    if (p.A.rows() != p.A.cols()) throw ConfigError("linear_gaussian: A must be square");
    if (p.B.rows() != p.A.rows()) throw ConfigError("linear_gaussian: B row count must match A");
    require_covariance(p.sigma_w, "sigma_w");
    require_covariance(p.sigma_v, "sigma_v");
    require_covariance(p.x0_cov, "x0_cov");
    if (p.C.size() == 0) p.C = Mat::Identity(p.A.rows(), p.A.cols());
    if (p.u_lo.size() == 0) p.u_lo = Vec::Constant(p.B.cols(), -1e18);
    if (p.u_hi.size() == 0) p.u_hi = Vec::Constant(p.B.cols(), 1e18);

    EnvModel m(EnvKind::LinearGaussian);
    m.proc_noise_zero_ = is_zero(p.sigma_w);
    m.meas_noise_zero_ = is_zero(p.sigma_v);
    m.init_point_mass_ = is_zero(p.x0_cov);
    if (!m.proc_noise_zero_) m.proc_noise_ = GaussianDensity(p.sigma_w);
    if (!m.meas_noise_zero_) m.meas_noise_ = GaussianDensity(p.sigma_v);
    if (!m.init_point_mass_) m.init_dist_ = GaussianDensity(p.x0_cov);
    m.params_ = std::move(p);
    return m;
}

EnvModel EnvModel::cstr(CstrParams p) {
    if (p.dt <= 0.0) throw ConfigError("cstr: dt must be positive");
    if (p.substeps < 1) throw ConfigError("cstr: substeps must be >= 1");
    if (p.meas_noise_std.size() == 0) p.meas_noise_std = Vec::Zero(4);
    if (p.meas_noise_std.size() != 4) throw ConfigError("cstr: meas_noise_std must have 4 entries");
    if (p.x0_lo.size() != 4 || p.x0_hi.size() != 4)
        throw ConfigError("cstr: x0 box must have 4 entries");
    if (p.u_lo.size() != 2 || p.u_hi.size() != 2)
        throw ConfigError("cstr: action bounds must have 2 entries");
    EnvModel m(EnvKind::Cstr);
    m.params_ = std::move(p);
    return m;
}

EnvModel EnvModel::double_pendulum(DoublePendulumParams p) {
    if (p.dt <= 0.0) throw ConfigError("double_pendulum: dt must be positive");
    if (p.substeps < 1) throw ConfigError("double_pendulum: substeps must be >= 1");
    EnvModel m(EnvKind::DoublePendulum);
    m.params_ = std::move(p);
    return m;
}

const LinearGaussianParams& EnvModel::lg() const {
    if (kind_ != EnvKind::LinearGaussian) throw ConfigError("model is not linear-Gaussian");
    return std::get<LinearGaussianParams>(params_);
}

const CstrParams& EnvModel::cstr_params() const {
    if (kind_ != EnvKind::Cstr) throw ConfigError("model is not a CSTR");
    return std::get<CstrParams>(params_);
}

const DoublePendulumParams& EnvModel::pendulum_params() const {
    if (kind_ != EnvKind::DoublePendulum) throw ConfigError("model is not a double pendulum");
    return std::get<DoublePendulumParams>(params_);
}

int EnvModel::state_dim() const {
    switch (kind_) {
        case EnvKind::LinearGaussian: return static_cast<int>(lg().A.rows());
        case EnvKind::Cstr: return 4;
        case EnvKind::DoublePendulum: return 6;
    }
    return 0;
}

int EnvModel::action_dim() const {
    switch (kind_) {
        case EnvKind::LinearGaussian: return static_cast<int>(lg().B.cols());
        case EnvKind::Cstr: return 2;
        case EnvKind::DoublePendulum: return 1;
    }
    return 0;
}

int EnvModel::obs_dim() const {
    switch (kind_) {
        case EnvKind::LinearGaussian: return static_cast<int>(lg().C.rows());
        case EnvKind::Cstr: return 4;
        case EnvKind::DoublePendulum: return 6;
    }
    return 0;
}

Vec EnvModel::action_lower() const {
    switch (kind_) {
        case EnvKind::LinearGaussian: return lg().u_lo;
        case EnvKind::Cstr: return cstr_params().u_lo;
        case EnvKind::DoublePendulum:
            return Vec::Constant(1, -pendulum_params().force_limit);
    }
    return {};
}

Vec EnvModel::action_upper() const {
    switch (kind_) {
        case EnvKind::LinearGaussian: return lg().u_hi;
        case EnvKind::Cstr: return cstr_params().u_hi;
        case EnvKind::DoublePendulum:
            return Vec::Constant(1, pendulum_params().force_limit);
    }
    return {};
}

Vec EnvModel::clamp_action(const Vec& u) const {
    if (u.size() != action_dim()) throw ShapeMismatch("clamp_action: wrong action dimension");
    return u.cwiseMax(action_lower()).cwiseMin(action_upper());
}

ScenarioParams EnvModel::sample_scenario(RandomStream& rng) const {
    if (kind_ != EnvKind::Cstr) return {};
    const auto& p = cstr_params();
    ScenarioParams psi;
    psi.alpha = rng.uniform(p.alpha_lo, p.alpha_hi);
    psi.beta = rng.uniform(p.beta_lo, p.beta_hi);
    return psi;
}

std::pair<Vec, ScenarioParams> EnvModel::sample_initial(RandomStream& rng) const {
    switch (kind_) {
        case EnvKind::LinearGaussian: {
            const auto& p = lg();
            Vec x = p.x0_mean;
            if (!init_point_mass_) x += init_dist_.sample(rng);
            return {x, ScenarioParams{}};
        }
        case EnvKind::Cstr: {
            const auto& p = cstr_params();
            ScenarioParams psi = sample_scenario(rng);
            Vec x(4);
            for (int i = 0; i < 4; ++i) x(i) = rng.uniform(p.x0_lo(i), p.x0_hi(i));
            return {x, psi};
        }
        case EnvKind::DoublePendulum: {
            // hanging rest: both links down, everything still
            Vec x = Vec::Zero(6);
            x(0) = std::numbers::pi;
            x(1) = std::numbers::pi;
            return {x, ScenarioParams{}};
        }
    }
    return {};
}

Vec EnvModel::transition(const Vec& x, const Vec& u_raw, const ScenarioParams& psi,
                         RandomStream& rng) const {
    const Vec u = clamp_action(u_raw);
    Vec next;
    switch (kind_) {
        case EnvKind::LinearGaussian: {
            const auto& p = lg();
            next = p.A * x + p.B * u;
            if (!proc_noise_zero_) next += proc_noise_.sample(rng);
            break;
        }
        case EnvKind::Cstr: {
            const auto& p = cstr_params();
            next = cstr_step(p.constants, x.head<4>(), u.head<2>(),
                             CstrScenario{psi.alpha, psi.beta}, p.dt, p.substeps);
            break;
        }
        case EnvKind::DoublePendulum: {
            next = dip_step(pendulum_params(), x.head<6>(), u(0));
            break;
        }
    }
    if (!next.allFinite())
        throw NonFiniteState("transition produced non-finite state (dt or input too large)");
    return next;
}

Vec EnvModel::measure(const Vec& x, RandomStream& rng) const {
    switch (kind_) {
        case EnvKind::LinearGaussian: {
            const auto& p = lg();
            Vec y = p.C * x;
            if (!meas_noise_zero_) y += meas_noise_.sample(rng);
            return y;
        }
        case EnvKind::Cstr: {
            const auto& p = cstr_params();
            Vec y = x;
            for (int i = 0; i < 4; ++i)
                if (p.meas_noise_std(i) > 0.0) y(i) += p.meas_noise_std(i) * rng.normal();
            return y;
        }
        case EnvKind::DoublePendulum:
            return x; // fully observed
    }
    return {};
}

bool EnvModel::has_transition_density() const {
    return kind_ == EnvKind::LinearGaussian && !proc_noise_zero_;
}

double EnvModel::transition_logpdf(const Vec& x, const Vec& u_raw, const ScenarioParams&,
                                   const Vec& x_next) const {
    if (!has_transition_density())
        throw DensityUnavailable("transition density only exists for noisy linear-Gaussian models");
    const auto& p = lg();
    const Vec u = clamp_action(u_raw);
    return proc_noise_.logpdf(x_next - (p.A * x + p.B * u));
}

double EnvModel::measurement_logpdf(const Vec& x, const Vec& y) const {
    switch (kind_) {
        case EnvKind::LinearGaussian: {
            if (meas_noise_zero_)
                throw ConfigError("measurement_logpdf: no measurement noise density configured");
            return meas_noise_.logpdf(y - lg().C * x);
        }
        case EnvKind::Cstr: {
            const auto& p = cstr_params();
            double lp = 0.0;
            for (int i = 0; i < 4; ++i) {
                const double s = p.meas_noise_std(i);
                if (s <= 0.0)
                    throw ConfigError("measurement_logpdf: no measurement noise density configured");
                const double r = (y(i) - x(i)) / s;
                lp += -0.5 * r * r - std::log(s) - 0.5 * std::log(2.0 * std::numbers::pi);
            }
            return lp;
        }
        case EnvKind::DoublePendulum:
            throw ConfigError("measurement_logpdf: double pendulum is fully observed");
    }
    return 0.0;
}

double EnvModel::transition_density_bound() const {
    if (!has_transition_density())
        throw DensityUnavailable("no transition density bound for deterministic kinds");
    return std::exp(proc_noise_.max_logpdf());
}

CstrParams default_cstr_params() {
    CstrParams p;
    p.dt = 0.005;
    p.substeps = 4;
    p.meas_noise_std = (Vec(4) << 0.03, 0.03, 0.8, 0.8).finished();
    p.x0_lo = (Vec(4) << 0.6, 0.35, 128.0, 124.0).finished();
    p.x0_hi = (Vec(4) << 1.0, 0.65, 140.0, 136.0).finished();
    p.u_lo = (Vec(2) << 5.0, -8500.0).finished();
    p.u_hi = (Vec(2) << 100.0, 0.0).finished();
    return p;
}

DoublePendulumParams default_pendulum_params() { return {}; }

} // namespace goalctl::env
