#include "goalctl/analysis/riccati.hpp"

#include "goalctl/core/errors.hpp"

namespace goalctl::analysis {

DlqrResult dlqr(const Mat& a, const Mat& b, const Mat& q, const Mat& r, double gamma,
                double tol, int max_iters) {
    if (gamma <= 0.0 || gamma > 1.0) throw ConfigError("dlqr: gamma must lie in (0, 1]");
    Mat p = q;
    for (int i = 1; i <= max_iters; ++i) {
        const Mat btpb = r + gamma * b.transpose() * p * b;
        const Mat gain = gamma * btpb.ldlt().solve(b.transpose() * p * a);
        const Mat next = q + gamma * a.transpose() * p * a
                         - gamma * a.transpose() * p * b * gain;
        if ((next - p).cwiseAbs().maxCoeff() < tol) {
            DlqrResult out;
            out.cost_to_go = next;
            out.gain = gamma * (r + gamma * b.transpose() * next * b)
                                   .ldlt()
                                   .solve(b.transpose() * next * a);
            out.iterations = i;
            return out;
        }
        p = next;
    }
    throw NonConvergence("dlqr: Riccati iteration did not converge");
}

} // namespace goalctl::analysis
