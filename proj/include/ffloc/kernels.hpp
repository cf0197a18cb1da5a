#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "core.hpp"
#include "grid.hpp"
#include "indicatrix.hpp"
#include "rng.hpp"

namespace ffloc {

using CMatrix = Eigen::Matrix<Cx, Eigen::Dynamic, Eigen::Dynamic>;
using CVector = Eigen::Matrix<Cx, Eigen::Dynamic, 1>;

/// Kernel of an m x n integral operator sampled on the product grid g^(m+n),
/// theta slots first.
struct KernelSample {
    NDArray values;
    Grid grid;
    int m = 0;
    int n = 0;

    KernelSample() = default;
    KernelSample(NDArray v, Grid g, int m_, int n_)
        : values(std::move(v)), grid(std::move(g)), m(m_), n(n_) {
        if (values.rank() != static_cast<size_t>(m + n))
            throw std::invalid_argument("KernelSample: rank does not match split");
        for (size_t d = 0; d < values.rank(); ++d)
            if (values.shape()[d] != grid.size())
                throw std::invalid_argument("KernelSample: shape does not match grid");
    }
    size_t rows() const {
        size_t r = 1;
        for (int d = 0; d < m; ++d) r *= grid.size();
        return r;
    }
    size_t cols() const {
        size_t c = 1;
        for (int d = 0; d < n; ++d) c *= grid.size();
        return c;
    }
};

inline double spectral_norm(const CMatrix& M) {
    if (M.rows() == 0 || M.cols() == 0) return 0.0;
    if (M.rows() == 1 || M.cols() == 1) return M.norm();
    if (std::max(M.rows(), M.cols()) <= 96) {
        Eigen::JacobiSVD<CMatrix> svd(M);
        return svd.singularValues()(0);
    }
    Eigen::BDCSVD<CMatrix> svd(M);
    return svd.singularValues()(0);
}

/// sum of cosh over the slot values of a multi-index restricted to [lo, hi)
inline double energy_of(const Grid& g, std::span<const size_t> idx, size_t lo, size_t hi) {
    double e = 0.0;
    for (size_t d = lo; d < hi; ++d) e += std::cosh(g.node(idx[d]));
    return e;
}

namespace detail {

/// Weighted matrix of the discretized kernel, optionally damped on the left
/// (theta) or right (eta) block by exp(-omega(E(.))).
inline CMatrix weighted_matrix(const KernelSample& f, const Indicatrix* damp_side,
                               bool damp_left) {
    const size_t R = f.rows(), C = f.cols();
    CMatrix M(R, C);
    const size_t k = f.values.rank();
    for_each_multi_index(k, f.grid.size(), [&](std::span<const size_t> idx) {
        size_t r = 0, c = 0;
        double w = 1.0;
        for (int d = 0; d < f.m; ++d) r = r * f.grid.size() + idx[d];
        for (int d = f.m; d < f.m + f.n; ++d) c = c * f.grid.size() + idx[d];
        for (size_t d = 0; d < k; ++d) w *= f.grid.weight(idx[d]);
        Cx v = f.values.at(idx) * std::sqrt(w);
        if (damp_side) {
            double e = damp_left ? energy_of(f.grid, idx, 0, f.m)
                                 : energy_of(f.grid, idx, f.m, f.m + f.n);
            v *= std::exp(-(*damp_side)(e));
        }
        M(r, c) = v;
    });
    return M;
}

}  // namespace detail

/// Operator norm ||f||_{m x n} of the discretized kernel (quadrature weights
/// absorbed symmetrically). With an indicatrix, the omega-damped version
/// (half damped on each side).
inline double cross_norm(const KernelSample& f, const Indicatrix* ind = nullptr) {
    if (f.values.size() == 0) throw std::invalid_argument("cross_norm: empty sample");
    if (f.m + f.n == 0) {
        double v = std::abs(f.values[0]);
        return v;  // scalar kernel
    }
    if (!ind) return spectral_norm(detail::weighted_matrix(f, nullptr, true));
    double left = spectral_norm(detail::weighted_matrix(f, ind, true));
    double right = spectral_norm(detail::weighted_matrix(f, ind, false));
    return 0.5 * left + 0.5 * right;
}

struct FullCrossNormOptions {
    int restarts = 5;
    int max_iters = 60;
    double tol = 1e-10;
    std::uint64_t seed = 20140212;
};

/// Lower-bound estimate of ||f||_x: best |<f, g_1 x ... x g_k>| over unit
/// vectors, by alternating (rank-one) power iteration with restarts.
/// Deterministic given the seed.
inline double full_cross_norm(const KernelSample& f, FullCrossNormOptions opt = {}) {
    const size_t k = f.values.rank();
    const size_t G = f.grid.size();
    if (k == 0) return std::abs(f.values[0]);

    // weights absorbed: ft = f * prod sqrt(w)
    NDArray ft(f.values.shape());
    for_each_multi_index(k, G, [&](std::span<const size_t> idx) {
        double w = 1.0;
        for (size_t i : idx) w *= f.grid.weight(i);
        ft.at(idx) = f.values.at(idx) * std::sqrt(w);
    });
    if (k == 1) {
        double s = 0.0;
        for (size_t i = 0; i < G; ++i) s += std::norm(ft[i]);
        return std::sqrt(s);
    }

    Rng rng(opt.seed);
    double best = 0.0;
    std::vector<std::vector<Cx>> gvec(k, std::vector<Cx>(G));
    std::vector<Cx> contr(G);
    for (int r = 0; r < opt.restarts; ++r) {
        for (size_t j = 0; j < k; ++j) {
            double nrm = 0.0;
            for (size_t i = 0; i < G; ++i) {
                gvec[j][i] = Cx{rng.gaussian(), rng.gaussian()};
                nrm += std::norm(gvec[j][i]);
            }
            nrm = std::sqrt(nrm);
            for (size_t i = 0; i < G; ++i) gvec[j][i] /= nrm;
        }
        double prev = 0.0;
        for (int it = 0; it < opt.max_iters; ++it) {
            double val = 0.0;
            for (size_t j = 0; j < k; ++j) {
                std::fill(contr.begin(), contr.end(), Cx{0, 0});
                for_each_multi_index(k, G, [&](std::span<const size_t> idx) {
                    Cx prod = ft.at(idx);
                    for (size_t l = 0; l < k; ++l)
                        if (l != j) prod *= gvec[l][idx[l]];
                    contr[idx[j]] += prod;
                });
                double nrm = 0.0;
                for (size_t i = 0; i < G; ++i) nrm += std::norm(contr[i]);
                nrm = std::sqrt(nrm);
                if (nrm < 1e-300) { val = 0.0; break; }
                for (size_t i = 0; i < G; ++i) gvec[j][i] = std::conj(contr[i]) / nrm;
                val = nrm;
            }
            if (std::abs(val - prev) <= opt.tol * std::max(1.0, val)) { prev = val; break; }
            prev = val;
        }
        best = std::max(best, prev);
    }
    return best;
}

}  // namespace ffloc
