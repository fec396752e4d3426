#pragma once

// Test-only oracles and generators, kept independent of the implementation
// paths they cross-check: kernels by exhaustive vector enumeration, SAT by
// truth-table scan with a direct clause evaluator, seeded random formulas.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "quiversat/cnf.hpp"
#include "quiversat/linalg.hpp"

namespace oracle {

using quiversat::Assignment;
using quiversat::Clause;
using quiversat::Elt;
using quiversat::Field;
using quiversat::Formula;
using quiversat::Literal;
using quiversat::Matrix;
using quiversat::SubspaceBasis;
using quiversat::Vec;

/// All kernel vectors of m, found by trying every vector of F^cols.
inline std::set<Vec> brute_force_kernel(const Matrix& m) {
    const Field& F = *m.field();
    const std::uint64_t q = F.order();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < m.cols(); ++i) total *= q;

    std::set<Vec> kernel;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Vec x(m.cols());
        std::uint64_t t = idx;
        for (std::size_t i = 0; i < m.cols(); ++i) {
            x[i] = static_cast<Elt>(t % q);
            t /= q;
        }
        bool zero = true;
        for (std::size_t r = 0; r < m.rows() && zero; ++r) {
            Elt acc = 0;
            for (std::size_t c = 0; c < m.cols(); ++c) acc = F.add(acc, F.mul(m(r, c), x[c]));
            zero = acc == 0;
        }
        if (zero) kernel.insert(std::move(x));
    }
    return kernel;
}

/// Every vector in the span of a basis, by enumerating coefficient tuples.
inline std::set<Vec> span_of(const Field& F, const SubspaceBasis& basis) {
    const std::uint64_t q = F.order();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < basis.dim(); ++i) total *= q;
    std::set<Vec> out;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Vec v(basis.ambient, 0);
        std::uint64_t t = idx;
        for (std::size_t i = 0; i < basis.dim(); ++i) {
            const Elt c = static_cast<Elt>(t % q);
            t /= q;
            if (c == 0) continue;
            for (std::size_t j = 0; j < basis.ambient; ++j)
                v[j] = F.add(v[j], F.mul(c, basis.vectors[i][j]));
        }
        out.insert(std::move(v));
    }
    return out;
}

/// Direct boolean clause evaluation, written independently of the library's
/// field-valued evaluator.
inline bool bool_clause_sat(const Clause& cl, std::uint64_t bits) {
    for (const Literal& lit : cl) {
        const bool v = (bits >> (lit.var - 1)) & 1;
        if (lit.negated ? !v : v) return true;
    }
    return false;
}

inline bool bool_formula_sat(const Formula& f, std::uint64_t bits) {
    for (const Clause& cl : f.clauses)
        if (!bool_clause_sat(cl, bits)) return false;
    return true;
}

/// Truth-table SAT, for formulas with at most ~20 variables.
inline bool brute_force_sat(const Formula& f) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << f.num_vars); ++bits)
        if (bool_formula_sat(f, bits)) return true;
    return false;
}

inline std::uint64_t model_count(const Formula& f) {
    std::uint64_t n = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << f.num_vars); ++bits)
        if (bool_formula_sat(f, bits)) ++n;
    return n;
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

/// Random 3-CNF whose clauses already have three distinct variables; after
/// preprocessing only unused variables can disappear.
inline Formula random_clean_formula(std::mt19937_64& rng, int max_vars, int max_clauses) {
    const int m = 3 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_vars - 2));
    const int l = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_clauses));
    Formula f;
    f.num_vars = m;
    f.provenance.original_num_vars = m;
    for (int k = 0; k < l; ++k) {
        std::vector<int> vars;
        while (static_cast<int>(vars.size()) < 3) {
            const int v = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(m));
            bool dup = false;
            for (int u : vars) dup = dup || u == v;
            if (!dup) vars.push_back(v);
        }
        Clause cl;
        for (int v : vars) cl.push_back(Literal{v, (rng() & 1) != 0});
        f.clauses.push_back(cl);
    }
    return f;
}

/// Random raw formula with short clauses, duplicate literals and tautologies
/// all allowed, to exercise the whole preprocessing pipeline.
inline Formula random_raw_formula(std::mt19937_64& rng, int max_vars, int max_clauses) {
    const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_vars));
    const int l = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_clauses));
    Formula f;
    f.num_vars = m;
    f.provenance.original_num_vars = m;
    for (int k = 0; k < l; ++k) {
        const int len = 1 + static_cast<int>(rng() % 3);
        Clause cl;
        for (int j = 0; j < len; ++j)
            cl.push_back(Literal{1 + static_cast<int>(rng() % static_cast<std::uint64_t>(m)),
                                 (rng() & 1) != 0});
        f.clauses.push_back(cl);
    }
    return f;
}

inline Matrix random_matrix(std::mt19937_64& rng, quiversat::FieldPtr field, std::size_t rows,
                            std::size_t cols) {
    Matrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = static_cast<Elt>(rng() % field->order());
    return m;
}

/// Worked example used across the test suite:
/// (X1 v X2 v ~X3) (X2 v X3 v X5) (X3 v ~X4 v ~X5).
inline Formula running_example() {
    return quiversat::parse_dimacs("p cnf 5 3\n1 2 -3 0\n2 3 5 0\n3 -4 -5 0\n");
}

inline Formula single_clause() { return quiversat::parse_dimacs("p cnf 3 1\n1 2 3 0\n"); }

/// All eight sign patterns over three variables: unsatisfiable, already in
/// preprocessed shape.
inline Formula contradiction_m3() {
    std::string text = "p cnf 3 8\n";
    for (int s = 0; s < 8; ++s) {
        text += std::to_string((s & 1) ? -1 : 1);
        text += ' ';
        text += std::to_string((s & 2) ? -2 : 2);
        text += ' ';
        text += std::to_string((s & 4) ? -3 : 3);
        text += " 0\n";
    }
    return quiversat::parse_dimacs(text);
}

} // namespace oracle
