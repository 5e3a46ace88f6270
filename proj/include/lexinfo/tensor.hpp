#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace lexinfo {

// Dense row-major tensor of 64-bit reals. Rank 1 and 2 cover everything the
// sequence models need.
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<double> v;

    Tensor() = default;

    static Tensor zeros(std::vector<std::size_t> shape) {
        Tensor t;
        std::size_t n = 1;
        for (std::size_t d : shape) n *= d;
        t.shape = std::move(shape);
        t.v.assign(n, 0.0);
        return t;
    }

    static Tensor vec(std::vector<double> values) {
        Tensor t;
        t.shape = {values.size()};
        t.v = std::move(values);
        return t;
    }

    static Tensor scalar(double x) {
        Tensor t;
        t.shape = {1};
        t.v = {x};
        return t;
    }

    std::size_t size() const { return v.size(); }
    std::size_t rank() const { return shape.size(); }

    std::size_t rows() const {
        assert(rank() == 2);
        return shape[0];
    }
    std::size_t cols() const {
        assert(rank() == 2);
        return shape[1];
    }

    double& at(std::size_t i) { return v[i]; }
    double at(std::size_t i) const { return v[i]; }
    double& at(std::size_t r, std::size_t c) {
        assert(rank() == 2 && r < shape[0] && c < shape[1]);
        return v[r * shape[1] + c];
    }
    double at(std::size_t r, std::size_t c) const {
        assert(rank() == 2 && r < shape[0] && c < shape[1]);
        return v[r * shape[1] + c];
    }

    bool same_shape(const Tensor& o) const { return shape == o.shape; }

    bool all_finite() const {
        for (double x : v)
            if (!std::isfinite(x)) return false;
        return true;
    }

    void fill(double x) { std::fill(v.begin(), v.end(), x); }
};

}  // namespace lexinfo
