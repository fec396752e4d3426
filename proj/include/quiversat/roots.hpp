#pragma once

// Root-lattice layer: the symmetric bilinear form of the underlying graph
// (diagonal 2, off-diagonal minus the edge count), simple reflections,
// fundamental-domain descent, and the closed-form values of the form on the
// reduction's dimension vector.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cnf.hpp"
#include "quiver.hpp"

namespace quiversat {

using RootVector = std::vector<long long>;

class RootError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RootLattice {
    std::size_t n = 0;
    std::vector<long long> gram; // n x n, row-major

    [[nodiscard]] long long entry(std::size_t i, std::size_t j) const { return gram[i * n + j]; }

    [[nodiscard]] long long pairing(const RootVector& a, const RootVector& b) const {
        if (a.size() != n || b.size() != n) throw RootError("coordinate count mismatch");
        long long acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            long long row = 0;
            for (std::size_t j = 0; j < n; ++j) row += entry(i, j) * b[j];
            acc += a[i] * row;
        }
        return acc;
    }

    /// (g, alpha_v) for a simple root alpha_v.
    [[nodiscard]] long long pairing_simple(const RootVector& g, std::size_t v) const {
        if (g.size() != n) throw RootError("coordinate count mismatch");
        long long acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc += entry(v, j) * g[j];
        return acc;
    }
};

/// Each pair of opposite arrows contributes two edges, hence pairing -2.
inline RootLattice gram_matrix(const Quiver& q) {
    if (q.has_self_loop()) throw RootError("quiver has a self-loop");
    RootLattice lat;
    lat.n = static_cast<std::size_t>(q.vertex_count());
    lat.gram.assign(lat.n * lat.n, 0);
    for (std::size_t v = 0; v < lat.n; ++v) lat.gram[v * lat.n + v] = 2;
    for (const ArrowSpec& a : q.arrows) {
        lat.gram[static_cast<std::size_t>(a.source) * lat.n + static_cast<std::size_t>(a.target)] -= 1;
        lat.gram[static_cast<std::size_t>(a.target) * lat.n + static_cast<std::size_t>(a.source)] -= 1;
    }
    return lat;
}

inline long long tits_value(const RootLattice& lat, const RootVector& a, const RootVector& b) {
    return lat.pairing(a, b);
}

inline RootVector reflect(const RootLattice& lat, std::size_t v, const RootVector& g) {
    if (v >= lat.n) throw RootError("vertex out of range");
    RootVector out = g;
    out[v] -= lat.pairing_simple(g, v);
    return out;
}

enum class RootClass { real, imaginary, undetermined };

inline const char* to_string(RootClass c) {
    switch (c) {
        case RootClass::real: return "real";
        case RootClass::imaginary: return "imaginary";
        case RootClass::undetermined: return "undetermined";
    }
    return "undetermined";
}

namespace detail {

inline bool is_simple_root(const RootVector& g) {
    int ones = 0;
    for (long long c : g) {
        if (c == 1) ++ones;
        else if (c != 0) return false;
    }
    return ones == 1;
}

inline bool support_connected(const RootLattice& lat, const RootVector& g) {
    std::vector<std::size_t> support;
    for (std::size_t v = 0; v < lat.n; ++v)
        if (g[v] != 0) support.push_back(v);
    if (support.empty()) return false;
    std::vector<bool> seen(lat.n, false);
    std::vector<std::size_t> stack{support.front()};
    seen[support.front()] = true;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : support)
            if (!seen[w] && lat.entry(v, w) != 0) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    for (std::size_t v : support)
        if (!seen[v]) return false;
    return true;
}

} // namespace detail

/// Weyl descent from a nonneg-coordinate vector: repeatedly reflect at the
/// smallest vertex with positive pairing. Reaching a simple root means real;
/// entering the fundamental domain with connected support means imaginary;
/// leaving the positive cone or exceeding the step budget is undetermined.
inline RootClass classify_root(const RootLattice& lat, RootVector g, std::uint64_t max_steps = 0) {
    if (g.size() != lat.n) throw RootError("coordinate count mismatch");
    bool nonzero = false;
    long long height = 0;
    for (long long c : g) {
        if (c < 0) throw RootError("coordinates must be non-negative");
        if (c != 0) nonzero = true;
        height += c;
    }
    if (!nonzero) throw RootError("zero vector");
    if (max_steps == 0) max_steps = 10 * static_cast<std::uint64_t>(height);

    for (std::uint64_t step = 0; step <= max_steps; ++step) {
        if (detail::is_simple_root(g)) return RootClass::real;
        std::size_t v = lat.n;
        for (std::size_t u = 0; u < lat.n; ++u)
            if (lat.pairing_simple(g, u) > 0) {
                v = u;
                break;
            }
        if (v == lat.n)
            return detail::support_connected(lat, g) ? RootClass::imaginary
                                                     : RootClass::undetermined;
        g = reflect(lat, v, g);
        for (long long c : g)
            if (c < 0) return RootClass::undetermined;
    }
    return RootClass::undetermined;
}

/// The closed form of (alpha, alpha) on the reduction's dimension vector:
/// -4L - 2 sum |Omega_i|^2 when B = 1, and 2B(L - sum |Omega_i|(B|Omega_i|+1))
/// in general.
inline long long closed_form_tits(const Formula& preprocessed, long long B) {
    const OccurrenceSets occ = occurrence_sets(preprocessed);
    const long long L = preprocessed.num_clauses();
    if (B == 1) {
        long long sum_sq = 0;
        for (const auto& omega : occ.all) {
            const auto m = static_cast<long long>(omega.size());
            sum_sq += m * m;
        }
        return -4 * L - 2 * sum_sq;
    }
    long long sum = 0;
    for (const auto& omega : occ.all) {
        const auto m = static_cast<long long>(omega.size());
        sum += m * (B * m + 1);
    }
    return 2 * B * (L - sum);
}

} // namespace quiversat
