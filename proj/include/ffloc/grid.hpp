#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "core.hpp"

namespace ffloc {

/// One-dimensional quadrature rule (nodes + positive weights).
struct Quadrature {
    std::vector<double> x;
    std::vector<double> w;
    size_t size() const { return x.size(); }
};

/// Gauss-Legendre on [-1,1]; Newton iteration on P_n, standard recurrence.
inline Quadrature gauss_legendre(int n) {
    Quadrature q;
    q.x.resize(n);
    q.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        q.x[i] = -z;
        q.x[n - 1 - i] = z;
        q.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        q.w[n - 1 - i] = q.w[i];
    }
    return q;
}

/// Gauss-Legendre mapped to [a,b].
inline Quadrature gauss_legendre(int n, double a, double b) {
    Quadrature q = gauss_legendre(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        q.x[i] = c + h * q.x[i];
        q.w[i] *= h;
    }
    return q;
}

/// Rapidity grid shared by Fock levels and kernel samples.
struct Grid {
    double theta_max = 5.0;
    Quadrature rule;

    Grid() = default;
    Grid(int points, double theta) : theta_max(theta), rule(gauss_legendre(points, -theta, theta)) {}
    size_t size() const { return rule.size(); }
    double node(size_t i) const { return rule.x[i]; }
    double weight(size_t i) const { return rule.w[i]; }
    bool operator==(const Grid& o) const {
        return theta_max == o.theta_max && rule.x == o.rule.x;
    }
};

/// Row-major dense complex tensor, rank = shape.size(). Rank 0 = scalar.
class NDArray {
  public:
    NDArray() : data_(1, Cx{0.0, 0.0}) {}
    explicit NDArray(std::vector<size_t> shape) : shape_(std::move(shape)) {
        size_t n = 1;
        for (size_t s : shape_) n *= s;
        data_.assign(n, Cx{0.0, 0.0});
    }
    static NDArray scalar(Cx v) {
        NDArray a;
        a.data_[0] = v;
        return a;
    }

    size_t rank() const { return shape_.size(); }
    const std::vector<size_t>& shape() const { return shape_; }
    size_t size() const { return data_.size(); }
    Cx* data() { return data_.data(); }
    const Cx* data() const { return data_.data(); }
    Cx& operator[](size_t flat) { return data_[flat]; }
    const Cx& operator[](size_t flat) const { return data_[flat]; }

    size_t flat_index(std::span<const size_t> idx) const {
        size_t f = 0;
        for (size_t d = 0; d < shape_.size(); ++d) f = f * shape_[d] + idx[d];
        return f;
    }
    Cx& at(std::span<const size_t> idx) { return data_[flat_index(idx)]; }
    const Cx& at(std::span<const size_t> idx) const { return data_[flat_index(idx)]; }

    NDArray& operator+=(const NDArray& o) {
        for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    NDArray& operator*=(Cx c) {
        for (auto& v : data_) v *= c;
        return *this;
    }

  private:
    std::vector<size_t> shape_;
    std::vector<Cx> data_;
};

/// Iterates all multi-indices of shape grid_size^rank, calling f(idx).
template <typename F>
void for_each_multi_index(size_t rank, size_t grid_size, F&& f) {
    std::vector<size_t> idx(rank, 0);
    if (rank == 0) {
        f(std::span<const size_t>(idx));
        return;
    }
    while (true) {
        f(std::span<const size_t>(idx));
        size_t d = rank;
        while (d > 0) {
            --d;
            if (++idx[d] < grid_size) break;
            idx[d] = 0;
            if (d == 0) return;
        }
    }
}

inline double product_weight(const Grid& g, std::span<const size_t> idx) {
    double w = 1.0;
    for (size_t i : idx) w *= g.weight(i);
    return w;
}

/// Richardson extrapolation of F(eps) -> F(0) from a halving ladder
/// {eps, eps/2, eps/4}, eliminating first and second order terms.
inline Cx richardson3(Cx f_eps, Cx f_half, Cx f_quarter) {
    return (f_eps - 6.0 * f_half + 8.0 * f_quarter) / 3.0;
}

}  // namespace ffloc
