#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "grid.hpp"

namespace ffloc {

/// Two-particle scattering function S together with its 2*pi*i-periodic
/// meromorphic extension. Built-in models evaluate the closed form, which
/// already is the extension. Poles of the extension (all off the physical
/// strip) are declared explicitly so evaluation near them can refuse.
struct ScatteringModel {
    std::string name;
    std::map<std::string, double> params;
    std::function<Cx(Cx)> eval_raw;
    /// pole representatives with Im in (-pi, pi]; continued 2*pi*i-periodically
    std::vector<Cx> poles;
    double pole_tol = 1e-9;

    double distance_to_pole(Cx zeta) const {
        double best = 1e300;
        for (Cx p : poles) {
            double dim = std::remainder(zeta.imag() - p.imag(), 2.0 * kPi);
            double d = std::hypot(zeta.real() - p.real(), dim);
            best = std::min(best, d);
        }
        return best;
    }

    Cx operator()(Cx zeta) const {
        if (!poles.empty() && distance_to_pole(zeta) < pole_tol)
            throw pole_hit_error(name + ": evaluation within pole tolerance at Im=" +
                                 std::to_string(zeta.imag()));
        return eval_raw(zeta);
    }
};

inline double get_param(const std::map<std::string, double>& p, const std::string& key,
                        double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

/// Builtins: free, ising, sinh-gordon (param a in (0,1)), exotic (param a > 0).
inline ScatteringModel make_model(const std::string& name,
                                  std::map<std::string, double> params = {}) {
    ScatteringModel m;
    m.name = name;
    m.params = params;
    if (name == "free") {
        m.eval_raw = [](Cx) { return Cx{1.0, 0.0}; };
    } else if (name == "ising") {
        m.eval_raw = [](Cx) { return Cx{-1.0, 0.0}; };
    } else if (name == "sinh-gordon") {
        double a = get_param(params, "a", 0.5);
        if (!(a > 0.0 && a < 1.0))
            throw std::invalid_argument("sinh-gordon: parameter a must be in (0,1)");
        m.params["a"] = a;
        m.eval_raw = [a](Cx z) {
            Cx s = std::sinh(z);
            return (s - kI * a) / (s + kI * a);
        };
        double y = std::asin(a);
        m.poles = {Cx{0.0, -y}, Cx{0.0, y - kPi}};
    } else if (name == "exotic") {
        double a = get_param(params, "a", 1.0);
        if (!(a > 0.0)) throw std::invalid_argument("exotic: parameter a must be > 0");
        m.params["a"] = a;
        m.eval_raw = [a](Cx z) { return std::exp(kI * a * std::sinh(z)); };
    } else {
        throw std::invalid_argument("unknown scattering model: " + name);
    }
    return m;
}

/// Permutation of {0,...,k-1}.
struct Permutation {
    std::vector<int> map;

    explicit Permutation(std::vector<int> m) : map(std::move(m)) {
        std::vector<char> seen(map.size(), 0);
        for (int v : map) {
            if (v < 0 || static_cast<size_t>(v) >= map.size() || seen[v])
                throw std::invalid_argument("not a permutation");
            seen[v] = 1;
        }
    }
    static Permutation identity(int k) {
        std::vector<int> m(k);
        for (int i = 0; i < k; ++i) m[i] = i;
        return Permutation(std::move(m));
    }
    static Permutation transposition(int k, int j) {  // swaps slots j, j+1
        Permutation p = identity(k);
        std::swap(p.map[j], p.map[j + 1]);
        return p;
    }
    int k() const { return static_cast<int>(map.size()); }
};

inline std::vector<Permutation> all_permutations(int k) {
    std::vector<int> m(k);
    for (int i = 0; i < k; ++i) m[i] = i;
    std::vector<Permutation> out;
    do {
        out.emplace_back(m);
    } while (std::next_permutation(m.begin(), m.end()));
    return out;
}

/// S^sigma(theta) = prod over inversion pairs i<j, sigma(i)>sigma(j) of
/// S(theta_{sigma(i)} - theta_{sigma(j)}).
inline Cx s_perm(const ScatteringModel& s, const Permutation& sigma,
                 std::span<const Cx> theta) {
    const int k = sigma.k();
    if (static_cast<int>(theta.size()) != k) throw arity_error("s_perm: arity mismatch");
    Cx prod{1.0, 0.0};
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (sigma.map[i] > sigma.map[j])
                prod *= s(theta[sigma.map[i]] - theta[sigma.map[j]]);
    return prod;
}

inline Cx s_perm(const ScatteringModel& s, const Permutation& sigma,
                 std::span<const double> theta) {
    std::vector<Cx> z(theta.begin(), theta.end());
    return s_perm(s, sigma, std::span<const Cx>(z));
}

/// Residuals of the defining relations of S on a real grid plus
/// 2*pi*i-periodicity at strip samples.
inline CheckReport check_s_axioms(const ScatteringModel& s,
                                  std::span<const double> grid, double tol) {
    if (grid.empty()) throw std::invalid_argument("check_s_axioms: empty grid");
    CheckReport rep;
    rep.name = "s-axioms:" + s.name;
    double r_unit = 0, r_conj = 0, r_cross = 0, r_mod0 = 0, r_modpi = 0, r_per = 0,
           r_s0 = 0;
    for (double th : grid) {
        Cx v = s(Cx{th, 0.0});
        Cx vm = s(Cx{-th, 0.0});
        Cx vp = s(Cx{th, kPi});
        r_unit = std::max(r_unit, std::abs(v * vm - 1.0));
        r_conj = std::max(r_conj, std::abs(vm - std::conj(v)));
        r_cross = std::max(r_cross, std::abs(vp - 1.0 / v));
        r_mod0 = std::max(r_mod0, std::abs(std::abs(v) - 1.0));
        r_modpi = std::max(r_modpi, std::abs(std::abs(vp) - 1.0));
        for (double lam : {0.0, 0.37 * kPi, 0.81 * kPi}) {
            Cx z{th, lam};
            if (!s.poles.empty() && (s.distance_to_pole(z) < 1e-3 ||
                                     s.distance_to_pole(z + 2.0 * kPi * kI) < 1e-3))
                continue;
            r_per = std::max(r_per, std::abs(s(z + 2.0 * kPi * kI) - s(z)));
        }
    }
    Cx s0 = s(Cx{0.0, 0.0});
    r_s0 = std::min(std::abs(s0 - 1.0), std::abs(s0 + 1.0));
    long n = static_cast<long>(grid.size());
    rep.add("unitarity", r_unit, tol, n);
    rep.add("hermitian-analyticity", r_conj, tol, n);
    rep.add("crossing", r_cross, tol, n);
    rep.add("modulus-on-R", r_mod0, tol, n);
    rep.add("modulus-on-R+ipi", r_modpi, tol, n);
    rep.add("2pii-periodicity", r_per, tol, 3 * n);
    rep.add("S0-sign", r_s0, tol, 1);
    return rep;
}

/// Max residual of f(theta) = S^sigma(theta) f(theta^sigma) over adjacent
/// transpositions, for f sampled on the product grid g^k.
inline CheckReport check_s_symmetry(const NDArray& f, const Grid& g,
                                    const ScatteringModel& s, double tol) {
    const size_t k = f.rank();
    for (size_t d = 0; d < k; ++d)
        if (f.shape()[d] != g.size())
            throw std::invalid_argument("check_s_symmetry: sample is not on the product grid");
    CheckReport rep;
    rep.name = "s-symmetry:" + s.name;
    double worst = 0.0;
    long used = 0;
    if (k >= 2) {
        std::vector<size_t> pidx(k);
        std::vector<Cx> th(k);
        for_each_multi_index(k, g.size(), [&](std::span<const size_t> idx) {
            for (size_t d = 0; d < k; ++d) th[d] = Cx{g.node(idx[d]), 0.0};
            for (size_t j = 0; j + 1 < k; ++j) {
                for (size_t d = 0; d < k; ++d) pidx[d] = idx[d];
                std::swap(pidx[j], pidx[j + 1]);
                Cx factor = s(th[j + 1] - th[j]);  // S^sigma for adjacent swap
                Cx res = f.at(idx) - factor * f.at(std::span<const size_t>(pidx));
                worst = std::max(worst, std::abs(res));
                ++used;
            }
        });
    }
    rep.add("s-symmetry", worst, tol, used);
    return rep;
}

/// Twisted permutation action (D_sigma f)(theta) = S^sigma(theta) f(theta^sigma)
/// on a product-grid sample.
inline NDArray s_twisted_action(const NDArray& f, const Grid& g,
                                const ScatteringModel& s, const Permutation& sigma) {
    NDArray out(f.shape());
    const size_t k = f.rank();
    std::vector<size_t> pidx(k);
    std::vector<Cx> th(k);
    for_each_multi_index(k, g.size(), [&](std::span<const size_t> idx) {
        for (size_t d = 0; d < k; ++d) th[d] = Cx{g.node(idx[d]), 0.0};
        for (size_t d = 0; d < k; ++d) pidx[d] = idx[sigma.map[d]];
        out.at(idx) = s_perm(s, sigma, std::span<const Cx>(th)) *
                      f.at(std::span<const size_t>(pidx));
    });
    return out;
}

/// Average of the twisted action over all permutations; lands in the
/// S-symmetric subspace.
inline NDArray s_symmetrize(const NDArray& f, const Grid& g, const ScatteringModel& s) {
    const size_t k = f.rank();
    NDArray acc(f.shape());
    auto perms = all_permutations(static_cast<int>(k));
    for (const auto& sigma : perms) acc += s_twisted_action(f, g, s, sigma);
    acc *= Cx{1.0 / static_cast<double>(perms.size()), 0.0};
    return acc;
}

/// Morera-type analyticity probe for user-supplied models: contour integrals
/// over small squares inside the physical strip, normalized by perimeter and
/// the max modulus on the contour.
inline CheckReport morera_s_check(const ScatteringModel& s, int n_squares,
                                  std::uint64_t seed, double tol) {
    CheckReport rep;
    rep.name = "s-morera:" + s.name;
    Quadrature leg = gauss_legendre(8, 0.0, 1.0);
    double worst = 0.0;
    std::uint64_t state = seed;
    auto rnd = [&state]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    };
    for (int q = 0; q < n_squares; ++q) {
        double h = 0.05 + 0.1 * rnd();
        Cx c{-4.0 + 8.0 * rnd(), h + rnd() * (kPi - 2.0 * h)};
        Cx corner[4] = {c + Cx{-h, -h}, c + Cx{h, -h}, c + Cx{h, h}, c + Cx{-h, h}};
        Cx integral{0, 0};
        double fmax = 0.0;
        for (int e = 0; e < 4; ++e) {
            Cx a = corner[e], b = corner[(e + 1) % 4];
            for (size_t i = 0; i < leg.size(); ++i) {
                Cx z = a + (b - a) * leg.x[i];
                Cx v = s(z);
                integral += v * (b - a) * leg.w[i];
                fmax = std::max(fmax, std::abs(v));
            }
        }
        worst = std::max(worst, std::abs(integral) / (8.0 * h * std::max(fmax, 1e-300)));
    }
    rep.add("morera", worst, tol, n_squares);
    return rep;
}

}  // namespace ffloc
