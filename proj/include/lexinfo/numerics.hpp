#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace lexinfo {

inline constexpr double kLog2E = 1.4426950408889634074;  // log2(e)

inline double nats_to_bits(double nats) { return nats * kLog2E; }

// Numerically stable softmax; shift-invariant by max subtraction.
inline std::vector<double> softmax(const std::vector<double>& v) {
    std::vector<double> p(v.size());
    const double mx = *std::max_element(v.begin(), v.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        p[i] = std::exp(v[i] - mx);
        sum += p[i];
    }
    for (double& x : p) x /= sum;
    return p;
}

// Surprisal of `target` under `dist`, in bits. A zero-probability target
// yields +infinity; callers decide how to quarantine it.
inline double cross_entropy_bits(const std::vector<double>& dist, std::size_t target) {
    const double p = dist[target];
    if (p <= 0.0) return std::numeric_limits<double>::infinity();
    return -std::log2(p);
}

// Shannon entropy of a distribution, in bits. Zero-probability entries
// contribute nothing.
inline double entropy_bits(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log2(x);
    return h;
}

// KL(p || q) in bits. Requires q[i] > 0 wherever p[i] > 0.
inline double kl_bits(const std::vector<double>& p, const std::vector<double>& q) {
    double kl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0.0) kl += p[i] * std::log2(p[i] / q[i]);
    return kl;
}

}  // namespace lexinfo
