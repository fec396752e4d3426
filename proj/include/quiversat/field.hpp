#pragma once

// Exact arithmetic in small finite fields GF(p^d), table-driven.
//
// Elements are handled through their canonical index: the little-endian
// base-p value of the coefficient vector of the residue-class representative.
// Index 0 is the additive identity and index 1 the multiplicative identity,
// for every field, which is also exactly the boolean embedding 0↦0, 1↦1.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace quiversat {

/// Canonical element index in [0, q).
using Elt = std::uint8_t;

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[nodiscard]] inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace poly {

// Little-endian coefficient vectors over GF(p), trailing zeros trimmed.

inline void trim(std::vector<std::uint32_t>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::vector<std::uint32_t> mul(const std::vector<std::uint32_t>& f,
                                      const std::vector<std::uint32_t>& g,
                                      std::uint32_t p) {
    if (f.empty() || g.empty()) return {};
    std::vector<std::uint32_t> out(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            out[i + j] = (out[i + j] + f[i] * g[j]) % p;
    trim(out);
    return out;
}

/// Remainder of f modulo a monic divisor g.
inline std::vector<std::uint32_t> mod(std::vector<std::uint32_t> f,
                                      const std::vector<std::uint32_t>& g,
                                      std::uint32_t p) {
    trim(f);
    const std::size_t dg = g.size() - 1;
    while (f.size() > dg) {
        const std::uint32_t lead = f.back();
        const std::size_t shift = f.size() - 1 - dg;
        if (lead != 0) {
            for (std::size_t j = 0; j <= dg; ++j) {
                std::uint32_t& c = f[shift + j];
                c = (c + p - (lead * g[j]) % p) % p;
            }
        }
        f.pop_back();
        trim(f);
        if (f.size() <= shift && f.size() <= dg) break;
    }
    trim(f);
    return f;
}

} // namespace poly

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// A finite field GF(p^d) with q = p^d <= 256, with full add/mul tables.
class Field {
public:
    /// Build GF(p^d). For d > 1 a monic irreducible modulus of degree d may be
    /// supplied (little-endian, d+1 coefficients); when omitted the first monic
    /// irreducible in counting order of the non-leading coefficients is used.
    static FieldPtr make(std::uint32_t p, std::uint32_t d = 1,
                         std::vector<std::uint32_t> modulus = {}) {
        return FieldPtr(new Field(p, d, std::move(modulus)));
    }

    /// Parse a CLI field spec: "p" or "p^d", digits only, no whitespace.
    static FieldPtr parse(std::string_view text) {
        const auto caret = text.find('^');
        const auto to_u32 = [](std::string_view s) -> std::uint32_t {
            if (s.empty() || s.size() > 9) throw FieldError("bad field spec");
            std::uint32_t v = 0;
            for (char ch : s) {
                if (ch < '0' || ch > '9') throw FieldError("bad field spec");
                v = v * 10 + static_cast<std::uint32_t>(ch - '0');
            }
            return v;
        };
        if (caret == std::string_view::npos) return make(to_u32(text), 1);
        return make(to_u32(text.substr(0, caret)), to_u32(text.substr(caret + 1)));
    }

    [[nodiscard]] std::uint32_t characteristic() const { return p_; }
    [[nodiscard]] std::uint32_t degree() const { return d_; }
    [[nodiscard]] std::uint32_t order() const { return q_; }
    [[nodiscard]] const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    [[nodiscard]] std::string name() const {
        return d_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(d_);
    }

    [[nodiscard]] Elt zero() const { return 0; }
    [[nodiscard]] Elt one() const { return 1; }

    [[nodiscard]] Elt add(Elt a, Elt b) const { return add_[(std::size_t(a) << 8) | b]; }
    [[nodiscard]] Elt mul(Elt a, Elt b) const { return mul_[(std::size_t(a) << 8) | b]; }
    [[nodiscard]] Elt neg(Elt a) const { return neg_[a]; }
    [[nodiscard]] Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }

    [[nodiscard]] Elt inv(Elt a) const {
        if (a == 0) throw FieldError("inverse of zero");
        return inv_[a];
    }

    [[nodiscard]] Elt pow(Elt a, std::uint64_t e) const {
        Elt acc = 1, base = a;
        while (e) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    /// Constant embedding of a machine integer (value mod p).
    [[nodiscard]] Elt from_int(std::uint64_t v) const { return static_cast<Elt>(v % p_); }

    [[nodiscard]] Elt embed_bool(bool b) const { return b ? 1 : 0; }
    [[nodiscard]] bool is_boolean(Elt a) const { return a <= 1; }

    [[nodiscard]] Elt from_coeffs(const std::vector<std::uint32_t>& c) const {
        if (c.size() > d_) throw FieldError("coefficient vector longer than degree");
        std::uint32_t idx = 0, scale = 1;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] >= p_) throw FieldError("coefficient out of range");
            idx += c[i] * scale;
            scale *= p_;
        }
        return static_cast<Elt>(idx);
    }

    /// Little-endian coefficients of the canonical representative, length d.
    [[nodiscard]] std::vector<std::uint32_t> coeffs(Elt a) const {
        std::vector<std::uint32_t> c(d_);
        std::uint32_t v = a;
        for (std::uint32_t i = 0; i < d_; ++i) { c[i] = v % p_; v /= p_; }
        return c;
    }

    // Raw table access for elimination hot loops. add_data is 256-strided:
    // add_data()[(a << 8) | b].
    [[nodiscard]] const Elt* add_data() const { return add_.data(); }
    [[nodiscard]] const Elt* mul_row(Elt a) const { return &mul_[std::size_t(a) << 8]; }

    /// Prime fields small enough for the branchless byte-arithmetic row ops.
    [[nodiscard]] bool prime_fast() const { return d_ == 1 && p_ <= 127; }

private:
    Field(std::uint32_t p, std::uint32_t d, std::vector<std::uint32_t> modulus)
        : p_(p), d_(d), modulus_(std::move(modulus)) {
        if (!is_prime(p_)) throw FieldError("characteristic must be prime");
        if (d_ < 1) throw FieldError("extension degree must be at least 1");
        if (d_ > 4) throw FieldError("extension degree above 4 unsupported");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < d_; ++i) q *= p_;
        if (q > 256) throw FieldError("field order above 256 unsupported");
        q_ = static_cast<std::uint32_t>(q);

        if (d_ == 1) {
            if (!modulus_.empty()) throw FieldError("modulus not allowed for prime fields");
        } else if (modulus_.empty()) {
            modulus_ = default_modulus();
        } else {
            if (modulus_.size() != d_ + 1) throw FieldError("modulus must have d+1 coefficients");
            for (auto c : modulus_)
                if (c >= p_) throw FieldError("modulus coefficient out of range");
            if (modulus_.back() != 1) throw FieldError("modulus must be monic");
            if (!irreducible(modulus_)) throw FieldError("modulus is reducible");
        }
        build_tables();
    }

    [[nodiscard]] bool irreducible(const std::vector<std::uint32_t>& f) const {
        // Trial division by every monic polynomial of lower degree >= 1.
        for (std::uint32_t e = 1; e < d_; ++e) {
            std::uint64_t count = 1;
            for (std::uint32_t i = 0; i < e; ++i) count *= p_;
            for (std::uint64_t v = 0; v < count; ++v) {
                std::vector<std::uint32_t> g(e + 1, 0);
                std::uint64_t t = v;
                for (std::uint32_t i = 0; i < e; ++i) { g[i] = t % p_; t /= p_; }
                g[e] = 1;
                if (poly::mod(f, g, p_).empty()) return false;
            }
        }
        return true;
    }

    [[nodiscard]] std::vector<std::uint32_t> default_modulus() const {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d_; ++i) count *= p_;
        for (std::uint64_t v = 0; v < count; ++v) {
            std::vector<std::uint32_t> f(d_ + 1, 0);
            std::uint64_t t = v;
            for (std::uint32_t i = 0; i < d_; ++i) { f[i] = t % p_; t /= p_; }
            f[d_] = 1;
            if (irreducible(f)) return f;
        }
        throw FieldError("no irreducible modulus found"); // unreachable
    }

    void build_tables() {
        add_.assign(std::size_t(q_) << 8, 0);
        mul_.assign(std::size_t(q_) << 8, 0);
        neg_.assign(q_, 0);
        inv_.assign(q_, 0);
        for (std::uint32_t a = 0; a < q_; ++a) {
            const auto ca = coeffs(static_cast<Elt>(a));
            for (std::uint32_t b = 0; b < q_; ++b) {
                const auto cb = coeffs(static_cast<Elt>(b));
                std::vector<std::uint32_t> s(d_);
                for (std::uint32_t i = 0; i < d_; ++i) s[i] = (ca[i] + cb[i]) % p_;
                add_[(std::size_t(a) << 8) | b] = from_coeffs(s);

                Elt prod;
                if (d_ == 1) {
                    prod = static_cast<Elt>((a * b) % p_);
                } else {
                    auto fa = ca, fb = cb;
                    poly::trim(fa);
                    poly::trim(fb);
                    auto r = poly::mod(poly::mul(fa, fb, p_), modulus_, p_);
                    r.resize(d_, 0);
                    prod = from_coeffs(r);
                }
                mul_[(std::size_t(a) << 8) | b] = prod;
            }
        }
        for (std::uint32_t a = 0; a < q_; ++a) {
            for (std::uint32_t b = 0; b < q_; ++b) {
                if (add(static_cast<Elt>(a), static_cast<Elt>(b)) == 0) neg_[a] = static_cast<Elt>(b);
                if (a != 0 && mul(static_cast<Elt>(a), static_cast<Elt>(b)) == 1)
                    inv_[a] = static_cast<Elt>(b);
            }
        }
    }

    std::uint32_t p_, d_, q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<Elt> add_, mul_, neg_, inv_;
};

} // namespace quiversat
