#pragma once

#include <functional>
#include <map>
#include <string>

#include "core.hpp"
#include "grid.hpp"

namespace ffloc {

/// High-energy weight omega with its half-plane majorant varpi and the
/// constants of the two-sided estimate omega(|z|) <= Re varpi(z) <=
/// a_omega * omega(|z|) + b_omega.
struct Indicatrix {
    std::string name;
    std::map<std::string, double> params;
    std::function<double(double)> omega;   // p >= 0
    std::function<Cx(Cx)> varpi;           // Im z >= 0
    double a_omega = 1.0;
    double b_omega = 0.0;

    double operator()(double p) const {
        if (p < 0.0) throw std::invalid_argument("indicatrix: omega argument must be >= 0");
        return omega(p);
    }
    Cx varpi_at(Cx z) const {
        if (z.imag() < -1e-12)
            throw std::invalid_argument("indicatrix: varpi argument must have Im >= 0");
        return varpi(z);
    }
};

/// log family: omega(p) = beta*log(1+p), varpi(z) = 2*beta*(Log(i+z)+1).
/// power family: omega(p) = p^alpha*cos(alpha*pi/2), varpi(z) = i^{-alpha}(z+i)^alpha.
inline Indicatrix make_indicatrix(const std::string& family,
                                  std::map<std::string, double> params = {}) {
    Indicatrix ind;
    ind.name = family;
    ind.params = params;
    if (family == "log") {
        double beta = params.count("beta") ? params.at("beta") : 1.0;
        if (beta < 0.0) throw std::invalid_argument("log indicatrix: beta must be >= 0");
        ind.params["beta"] = beta;
        ind.omega = [beta](double p) { return beta * std::log1p(p); };
        ind.varpi = [beta](Cx z) { return 2.0 * beta * (std::log(kI + z) + 1.0); };
        ind.a_omega = 2.0;
        ind.b_omega = 2.0 * beta;
    } else if (family == "power") {
        double alpha = params.count("alpha") ? params.at("alpha") : 0.5;
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("power indicatrix: alpha must be in (0,1)");
        ind.params["alpha"] = alpha;
        double c = std::cos(alpha * kPi / 2.0);
        ind.omega = [alpha, c](double p) { return std::pow(p, alpha) * c; };
        ind.varpi = [alpha](Cx z) {
            return std::pow(kI, -alpha) * std::pow(z + kI, alpha);
        };
        ind.a_omega = 1.0 / c;
        ind.b_omega = 1.0;
    } else {
        throw std::invalid_argument("unknown indicatrix family: " + family);
    }
    return ind;
}

struct IndicatrixGrids {
    std::vector<double> p;        // 1D grid for (w1), (w2), (w4)
    std::vector<double> p_log;    // log-spaced grid for the (w3) decay proxy
    std::vector<Cx> half_plane;   // samples with Im >= 0 for (w5)
};

inline IndicatrixGrids default_indicatrix_grids() {
    IndicatrixGrids g;
    for (int i = 0; i <= 60; ++i) g.p.push_back(i * 0.5);
    for (int i = 0; i <= 40; ++i) g.p_log.push_back(std::pow(10.0, -1.0 + i * 0.2));
    for (int ir = 1; ir <= 12; ++ir)
        for (int ip = 0; ip <= 12; ++ip) {
            double r = 0.3 * ir * ir;
            double phi = kPi * ip / 12.0;
            g.half_plane.push_back(r * Cx{std::cos(phi), std::sin(phi)});
        }
    return g;
}

/// Checks (w1) monotonicity, (w2) sublinearity, (w3) decay proxy
/// omega(p)/p -> 0, (w4) Re varpi even on R, (w5) two-sided majorant bound.
inline CheckReport check_indicatrix_axioms(const Indicatrix& ind,
                                           const IndicatrixGrids& grids, double tol) {
    CheckReport rep;
    rep.name = "indicatrix:" + ind.name;

    double r1 = 0.0;
    for (size_t i = 0; i + 1 < grids.p.size(); ++i)
        r1 = std::max(r1, ind(grids.p[i]) - ind(grids.p[i + 1]));
    rep.add("w1-monotone", std::max(r1, 0.0), tol, static_cast<long>(grids.p.size()));

    double r2 = 0.0;
    for (double p : grids.p)
        for (double q : grids.p)
            r2 = std::max(r2, ind(p + q) - ind(p) - ind(q));
    rep.add("w2-sublinear", std::max(r2, 0.0), tol,
            static_cast<long>(grids.p.size() * grids.p.size()));

    // (w3) proxy: omega(p)/p must decay along the log-spaced grid. The ratio of
    // the last to the first sampled value is the residual; linear omega gives 1.
    double first = ind(grids.p_log.front()) / grids.p_log.front();
    double last = ind(grids.p_log.back()) / grids.p_log.back();
    double decay = first > 0.0 ? last / first : 0.0;
    rep.add("w3-carleman-proxy", decay, 0.05, static_cast<long>(grids.p_log.size()),
            "necessary-condition proxy: omega(p)/p");

    double r4 = 0.0;
    for (double p : grids.p)
        r4 = std::max(r4, std::abs(ind.varpi_at(Cx{p, 0.0}).real() -
                                   ind.varpi_at(Cx{-p, 0.0}).real()));
    rep.add("w4-even-real-part", r4, tol, static_cast<long>(grids.p.size()));

    double r5 = 0.0;
    for (Cx z : grids.half_plane) {
        double re = ind.varpi_at(z).real();
        double w = ind(std::abs(z));
        r5 = std::max(r5, w - re);                                   // lower bound
        r5 = std::max(r5, re - (ind.a_omega * w + ind.b_omega));     // upper bound
    }
    rep.add("w5-majorant", std::max(r5, 0.0), tol,
            static_cast<long>(grids.half_plane.size()));
    return rep;
}

}  // namespace ffloc
