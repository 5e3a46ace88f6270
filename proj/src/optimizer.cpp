#include "lexinfo/optimizer.hpp"

#include <cmath>

#include "lexinfo/errors.hpp"

namespace lexinfo {

Adam::Adam(const std::vector<Tensor>& params, AdamConfig cfg) : cfg_(cfg) {
    m_.reserve(params.size());
    v_.reserve(params.size());
    for (const Tensor& p : params) {
        m_.push_back(Tensor::zeros(p.shape));
        v_.push_back(Tensor::zeros(p.shape));
    }
}

void Adam::step(std::vector<Tensor>& params, const std::vector<Tensor>& grads) {
    if (params.size() != m_.size() || grads.size() != m_.size())
        throw InputError("optimizer_step: parameter/gradient count mismatch");

    double sq = 0.0;
    for (std::size_t k = 0; k < grads.size(); ++k) {
        if (!grads[k].same_shape(params[k]))
            throw InputError("optimizer_step: gradient shape mismatch");
        for (double gv : grads[k].v) {
            if (!std::isfinite(gv)) throw NumericError("optimizer_step: non-finite gradient");
            sq += gv * gv;
        }
    }
    const double norm = std::sqrt(sq);
    const double scale = (cfg_.clip_norm > 0.0 && norm > cfg_.clip_norm) ? cfg_.clip_norm / norm : 1.0;

    ++step_;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(step_));
    const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(step_));
    for (std::size_t k = 0; k < params.size(); ++k) {
        Tensor& p = params[k];
        const Tensor& gr = grads[k];
        Tensor& m = m_[k];
        Tensor& v = v_[k];
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double gv = gr.v[i] * scale;
            m.v[i] = cfg_.beta1 * m.v[i] + (1.0 - cfg_.beta1) * gv;
            v.v[i] = cfg_.beta2 * v.v[i] + (1.0 - cfg_.beta2) * gv * gv;
            const double mhat = m.v[i] / bc1;
            const double vhat = v.v[i] / bc2;
            p.v[i] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps);
        }
    }
}

double gradient_check(const LossFn& f, std::vector<Tensor> params, double eps) {
    std::vector<Tensor> analytic;
    analytic.reserve(params.size());
    for (const Tensor& p : params) analytic.push_back(Tensor::zeros(p.shape));
    f(params, &analytic);

    double max_rel = 0.0;
    for (std::size_t k = 0; k < params.size(); ++k) {
        for (std::size_t i = 0; i < params[k].size(); ++i) {
            const double orig = params[k].v[i];
            params[k].v[i] = orig + eps;
            const double fp = f(params, nullptr);
            params[k].v[i] = orig - eps;
            const double fm = f(params, nullptr);
            params[k].v[i] = orig;
            const double fd = (fp - fm) / (2.0 * eps);
            const double ad = analytic[k].v[i];
            const double denom = std::max({1.0, std::fabs(ad), std::fabs(fd)});
            max_rel = std::max(max_rel, std::fabs(ad - fd) / denom);
        }
    }
    return max_rel;
}

}  // namespace lexinfo
