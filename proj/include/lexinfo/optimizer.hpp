#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lexinfo/tensor.hpp"

namespace lexinfo {

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double clip_norm = 5.0;  // global gradient-norm threshold
};

// Adaptive-moment optimizer with bias correction and global norm clipping.
class Adam {
public:
    Adam(const std::vector<Tensor>& params, AdamConfig cfg = {});

    // Applies one update in place. Gradients must be finite and match the
    // parameter shapes; throws NumericError otherwise.
    void step(std::vector<Tensor>& params, const std::vector<Tensor>& grads);

    std::int64_t step_count() const { return step_; }
    const AdamConfig& config() const { return cfg_; }

private:
    AdamConfig cfg_;
    std::vector<Tensor> m_;
    std::vector<Tensor> v_;
    std::int64_t step_ = 0;
};

// Loss function over a parameter set. When `grads` is non-null the callee
// must fill it with d(loss)/d(params); when null only the value is needed.
using LossFn = std::function<double(const std::vector<Tensor>& params, std::vector<Tensor>* grads)>;

// Compares reverse-mode gradients against central finite differences.
// Returns the maximum relative error over all parameter entries, with the
// error scaled by max(1, |analytic|, |numeric|).
double gradient_check(const LossFn& f, std::vector<Tensor> params, double eps = 1e-5);

}  // namespace lexinfo
