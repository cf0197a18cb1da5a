#pragma once

#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffloc {

using Cx = std::complex<double>;
using std::size_t;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr Cx kI{0.0, 1.0};

/// Thrown when an evaluator is asked for a point within pole tolerance of a
/// declared pole.
struct pole_hit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when argument counts do not match the declared arity.
struct arity_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when two quadrature refinement levels disagree beyond tolerance.
struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckItem {
    std::string id;
    double max_residual = 0.0;
    double tol = 0.0;
    long samples_used = 0;
    bool pass = false;
    std::string note;
};

struct CheckReport {
    std::string name;
    std::vector<CheckItem> items;
    std::vector<std::string> assumptions;

    bool pass() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
    CheckItem& add(std::string id, double residual, double tol, long samples,
                   std::string note = {}) {
        items.push_back(CheckItem{std::move(id), residual, tol, samples,
                                  residual <= tol, std::move(note)});
        return items.back();
    }
    CheckItem& add_bool(std::string id, bool ok, std::string note = {}) {
        items.push_back(
            CheckItem{std::move(id), ok ? 0.0 : 1.0, 0.5, 0, ok, std::move(note)});
        return items.back();
    }
    const CheckItem* find(const std::string& id) const {
        for (const auto& it : items)
            if (it.id == id) return &it;
        return nullptr;
    }
};

inline double sq(double x) { return x * x; }

inline bool close(Cx a, Cx b, double tol) { return std::abs(a - b) <= tol; }

/// FNV-1a, used to fingerprint configs in reports.
inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

inline constexpr const char* kToolkitVersion = "0.1.0";

}  // namespace ffloc
