#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "core.hpp"
#include "scattering.hpp"

namespace ffloc {

/// A contraction pairs distinct left slots with distinct right slots.
/// Internally 0-based: l in [0,m), r in [m, m+n). Pairs kept sorted by l.
struct Contraction {
    int m = 0;
    int n = 0;
    std::vector<std::pair<int, int>> pairs;

    Contraction() = default;
    Contraction(int m_, int n_, std::vector<std::pair<int, int>> p)
        : m(m_), n(n_), pairs(std::move(p)) {
        std::sort(pairs.begin(), pairs.end());
        std::vector<char> ls(m, 0), rs(n, 0);
        for (auto [l, r] : pairs) {
            if (l < 0 || l >= m || r < m || r >= m + n)
                throw std::invalid_argument("contraction: pair out of range");
            if (ls[l]++ || rs[r - m]++)
                throw std::invalid_argument("contraction: repeated index");
        }
    }
    int size() const { return static_cast<int>(pairs.size()); }
    bool contains_left(int l) const {
        for (auto [a, b] : pairs)
            if (a == l) return true;
        return false;
    }
    bool contains_right(int r) const {
        for (auto [a, b] : pairs)
            if (b == r) return true;
        return false;
    }
    bool operator<(const Contraction& o) const {
        if (pairs.size() != o.pairs.size()) return pairs.size() < o.pairs.size();
        return pairs < o.pairs;
    }
    bool operator==(const Contraction& o) const {
        return m == o.m && n == o.n && pairs == o.pairs;
    }
};

/// All contractions for fixed (m, n), sorted by |C| then lexicographically.
inline std::vector<Contraction> enumerate_contractions(int m, int n) {
    if (m < 0 || n < 0) throw std::invalid_argument("enumerate_contractions: m, n >= 0");
    std::vector<Contraction> out;
    const int cmax = std::min(m, n);
    for (int c = 0; c <= cmax; ++c) {
        // choose c left slots
        std::vector<int> lsel(c);
        std::function<void(int, int)> choose_l = [&](int start, int depth) {
            if (depth == c) {
                // choose c right slots, then all assignments
                std::vector<int> rsel(c);
                std::function<void(int, int)> choose_r = [&](int rstart, int rdepth) {
                    if (rdepth == c) {
                        std::vector<int> perm(c);
                        for (int i = 0; i < c; ++i) perm[i] = i;
                        do {
                            std::vector<std::pair<int, int>> pairs(c);
                            for (int i = 0; i < c; ++i)
                                pairs[i] = {lsel[i], m + rsel[perm[i]]};
                            out.emplace_back(m, n, pairs);
                        } while (std::next_permutation(perm.begin(), perm.end()));
                        return;
                    }
                    for (int r = rstart; r < n; ++r) {
                        rsel[rdepth] = r;
                        choose_r(r + 1, rdepth + 1);
                    }
                };
                choose_r(0, 0);
                return;
            }
            for (int l = start; l < m; ++l) {
                lsel[depth] = l;
                choose_l(l + 1, depth + 1);
            }
        };
        choose_l(0, 0);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// sum_k C(m,k) C(n,k) k!
inline long contraction_count_formula(int m, int n) {
    auto binom = [](int a, int b) {
        if (b < 0 || b > a) return 0.0;
        double r = 1.0;
        for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
        return r;
    };
    double total = 0.0;
    double fact = 1.0;
    for (int k = 0; k <= std::min(m, n); ++k) {
        if (k > 0) fact *= k;
        total += binom(m, k) * binom(n, k) * fact;
    }
    return std::lround(total);
}

/// S^{(m)}_{p,q} on the concatenated argument (theta_1..theta_m, eta_1..eta_n):
/// S(xi_p - xi_q) when p, q lie in the same block, S(xi_q - xi_p) otherwise.
inline Cx s_block(const ScatteringModel& s, int m, int p, int q,
                  std::span<const Cx> xi) {
    const bool pl = p < m, ql = q < m;
    if (pl == ql) return s(xi[p] - xi[q]);
    return s(xi[q] - xi[p]);
}

inline std::vector<Cx> concat_args(std::span<const Cx> theta, std::span<const Cx> eta) {
    std::vector<Cx> xi(theta.begin(), theta.end());
    xi.insert(xi.end(), eta.begin(), eta.end());
    return xi;
}

/// S_C: for each pair, the product of S^{(m)}_{p,l} over p strictly between l
/// and r, times S^{(m)}_{l_j, r_i} over crossing-ordered pair combinations.
inline Cx s_c(const ScatteringModel& s, const Contraction& c, std::span<const Cx> theta,
              std::span<const Cx> eta) {
    if (static_cast<int>(theta.size()) != c.m || static_cast<int>(eta.size()) != c.n)
        throw arity_error("s_c: arity mismatch");
    auto xi = concat_args(theta, eta);
    Cx prod{1.0, 0.0};
    for (auto [l, r] : c.pairs)
        for (int p = l + 1; p < r; ++p) prod *= s_block(s, c.m, p, l, xi);
    for (size_t i = 0; i < c.pairs.size(); ++i)
        for (size_t j = 0; j < c.pairs.size(); ++j)
            if (c.pairs[i].second < c.pairs[j].second && c.pairs[i].first < c.pairs[j].first)
                prod *= s_block(s, c.m, c.pairs[j].first, c.pairs[i].second, xi);
    return prod;
}

/// R_C: product over pairs of (1 - prod_p S^{(m)}_{l_j, p}).
inline Cx r_c(const ScatteringModel& s, const Contraction& c, std::span<const Cx> theta,
              std::span<const Cx> eta) {
    if (static_cast<int>(theta.size()) != c.m || static_cast<int>(eta.size()) != c.n)
        throw arity_error("r_c: arity mismatch");
    auto xi = concat_args(theta, eta);
    Cx prod{1.0, 0.0};
    for (auto [l, r] : c.pairs) {
        Cx inner{1.0, 0.0};
        for (int p = 0; p < c.m + c.n; ++p) inner *= s_block(s, c.m, l, p, xi);
        prod *= (Cx{1.0, 0.0} - inner);
    }
    return prod;
}

template <typename T>
std::vector<T> remove_slots(std::span<const T> v, const std::vector<int>& slots) {
    std::vector<T> out;
    out.reserve(v.size() - slots.size());
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (std::find(slots.begin(), slots.end(), i) == slots.end())
            out.push_back(v[i]);
    return out;
}

inline std::vector<int> left_slots(const Contraction& c) {
    std::vector<int> v;
    for (auto [l, r] : c.pairs) v.push_back(l);
    return v;
}
inline std::vector<int> right_slots_local(const Contraction& c) {
    std::vector<int> v;
    for (auto [l, r] : c.pairs) v.push_back(r - c.m);
    return v;
}

/// Removes the contracted slots from both tuples.
template <typename T>
std::pair<std::vector<T>, std::vector<T>> hat_tuple(const Contraction& c,
                                                    std::span<const T> theta,
                                                    std::span<const T> eta) {
    if (static_cast<int>(theta.size()) != c.m || static_cast<int>(eta.size()) != c.n)
        throw arity_error("hat_tuple: arity mismatch");
    return {remove_slots(theta, left_slots(c)), remove_slots(eta, right_slots_local(c))};
}

/// Cyclically reordered hatted tuple used in the lower-node recursion: right
/// block (contracted slots removed) followed by left block (contracted slots
/// removed). theta has length m + n.
template <typename T>
std::vector<T> check_tuple(const Contraction& c, std::span<const T> theta) {
    if (static_cast<int>(theta.size()) != c.m + c.n)
        throw arity_error("check_tuple: arity mismatch");
    std::span<const T> left = theta.subspan(0, c.m);
    std::span<const T> right = theta.subspan(c.m, c.n);
    std::vector<int> rloc = right_slots_local(c);
    std::vector<T> out = remove_slots(right, rloc);
    std::vector<T> l2 = remove_slots(left, left_slots(c));
    out.insert(out.end(), l2.begin(), l2.end());
    return out;
}

/// Splits C = C1 u C', C1 the first pair, C' the rest re-indexed to the hatted
/// slot space of C1. Used by the residue-factorization identity.
inline std::pair<Contraction, Contraction> split_first_pair(const Contraction& c) {
    if (c.pairs.empty()) throw std::invalid_argument("split_first_pair: empty contraction");
    Contraction c1(c.m, c.n, {c.pairs.front()});
    auto [l0, r0] = c.pairs.front();
    std::vector<std::pair<int, int>> rest;
    for (size_t j = 1; j < c.pairs.size(); ++j) {
        auto [l, r] = c.pairs[j];
        int lh = l - (l > l0 ? 1 : 0);
        int rh = r - (r > r0 ? 1 : 0) - 1;  // left block shrank by one
        rest.push_back({lh, rh});
    }
    return {c1, Contraction(c.m - 1, c.n - 1, rest)};
}

}  // namespace ffloc
