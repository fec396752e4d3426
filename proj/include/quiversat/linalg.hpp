#pragma once

// Dense exact linear algebra over a finite field: products, reduced
// row-echelon form, rank, canonical kernel bases, linear solves and
// direct-sum checks. Rows are stored as canonical element indices; GF(2)
// elimination runs on machine-word bitsets instead. Both paths produce the
// unique RREF and the same RREF-derived kernel basis (free columns set to
// unit values in ascending column order), so results are backend-independent.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace quiversat {

using Vec = std::vector<Elt>; // column vector of canonical element indices

class LinalgError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A list of linearly independent column vectors of a common ambient space.
struct SubspaceBasis {
    std::size_t ambient = 0;
    std::vector<Vec> vectors;

    [[nodiscard]] std::size_t dim() const { return vectors.size(); }
};

enum class Backend { automatic, generic, bitpacked };

class Matrix {
public:
    Matrix() = default;

    Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static Matrix identity(FieldPtr field, std::size_t n) {
        Matrix m(std::move(field), n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    /// Test/readability helper: entries given as canonical indices.
    static Matrix from_rows(FieldPtr field, const std::vector<std::vector<int>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.front().size();
        Matrix m(field, r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw LinalgError("ragged row list");
            for (std::size_t j = 0; j < c; ++j) {
                const int v = rows[i][j];
                if (v < 0 || static_cast<std::uint32_t>(v) >= field->order())
                    throw LinalgError("entry out of field range");
                m(i, j) = static_cast<Elt>(v);
            }
        }
        return m;
    }

    static Matrix from_columns(FieldPtr field, std::size_t ambient, const std::vector<Vec>& cols) {
        Matrix m(field, ambient, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != ambient) throw LinalgError("column length mismatch");
            for (std::size_t i = 0; i < ambient; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] const FieldPtr& field() const { return field_; }

    Elt& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    Elt operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    [[nodiscard]] const Elt* row_ptr(std::size_t r) const { return a_.data() + r * cols_; }
    Elt* row_ptr(std::size_t r) { return a_.data() + r * cols_; }

    [[nodiscard]] Vec column(std::size_t c) const {
        Vec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
        return v;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    [[nodiscard]] Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    [[nodiscard]] bool is_zero() const {
        for (Elt e : a_)
            if (e != 0) return false;
        return true;
    }

    [[nodiscard]] bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

private:
    FieldPtr field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Elt> a_;
};

// ---------------------------------------------------------------------------
// products
// ---------------------------------------------------------------------------

inline Matrix mul(const Matrix& x, const Matrix& y) {
    if (x.cols() != y.rows()) throw LinalgError("product dimension mismatch");
    const Field& F = *x.field();
    Matrix out(x.field(), x.rows(), y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t k = 0; k < x.cols(); ++k) {
            const Elt a = x(i, k);
            if (a == 0) continue;
            const Elt* mrow = F.mul_row(a);
            for (std::size_t j = 0; j < y.cols(); ++j)
                out(i, j) = F.add(out(i, j), mrow[y(k, j)]);
        }
    }
    return out;
}

inline Matrix operator*(const Matrix& x, const Matrix& y) { return mul(x, y); }

inline Vec mul(const Matrix& m, const Vec& x) {
    if (m.cols() != x.size()) throw LinalgError("apply dimension mismatch");
    const Field& F = *m.field();
    Vec out(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Elt acc = 0;
        const Elt* row = m.row_ptr(i);
        for (std::size_t j = 0; j < x.size(); ++j)
            if (row[j] != 0 && x[j] != 0) acc = F.add(acc, F.mul(row[j], x[j]));
        out[i] = acc;
    }
    return out;
}

inline Matrix add(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) throw LinalgError("sum dimension mismatch");
    const Field& F = *x.field();
    Matrix out(x.field(), x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = F.add(x(i, j), y(i, j));
    return out;
}

inline Matrix scale(Elt c, const Matrix& x) {
    const Field& F = *x.field();
    Matrix out(x.field(), x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = F.mul(c, x(i, j));
    return out;
}

// ---------------------------------------------------------------------------
// elimination backends
// ---------------------------------------------------------------------------

namespace detail {

struct EchelonInfo {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols; // ascending
    std::vector<std::size_t> free_cols;  // ascending, within [0, pivot_limit)
};

// In-place RREF on a row-major byte grid. Pivots are only chosen in columns
// < pivot_limit; trailing columns (e.g. an augmented right-hand side) are
// carried along. Rows end fully reduced and sorted: pivot rows first.
inline EchelonInfo rref_generic(const Field& F, std::vector<Elt>& a, std::size_t rows,
                                std::size_t width, std::size_t pivot_limit) {
    EchelonInfo info;
    const std::uint32_t q = F.order();
    const std::uint32_t p = F.characteristic();
    const bool fast = F.prime_fast();
    const Elt* add_tab = F.add_data();

    std::vector<Vec> scaled(q);      // lazily built (-lambda) * pivot row, suffix [col, width)
    std::vector<std::uint8_t> have(q);

    std::size_t row = 0, col = 0;
    for (; col < pivot_limit && row < rows; ++col) {
        std::size_t pr = row;
        while (pr < rows && a[pr * width + col] == 0) ++pr;
        if (pr == rows) {
            info.free_cols.push_back(col);
            continue;
        }
        if (pr != row)
            for (std::size_t j = col; j < width; ++j)
                std::swap(a[row * width + j], a[pr * width + j]);

        Elt* piv = &a[row * width];
        const Elt pv = piv[col];
        if (pv != 1) {
            const Elt* mrow = F.mul_row(F.inv(pv));
            for (std::size_t j = col; j < width; ++j) piv[j] = mrow[piv[j]];
        }

        std::fill(have.begin(), have.end(), 0);
        for (std::size_t r2 = 0; r2 < rows; ++r2) {
            if (r2 == row) continue;
            const Elt lam = a[r2 * width + col];
            if (lam == 0) continue;
            const Elt neg_lam = F.neg(lam);
            if (!have[neg_lam]) {
                Vec& s = scaled[neg_lam];
                s.resize(width);
                const Elt* mrow = F.mul_row(neg_lam);
                for (std::size_t j = col; j < width; ++j) s[j] = mrow[piv[j]];
                have[neg_lam] = 1;
            }
            Elt* dst = &a[r2 * width];
            const Elt* src = scaled[neg_lam].data();
            if (fast) {
                for (std::size_t j = col; j < width; ++j) {
                    const unsigned s = unsigned(dst[j]) + unsigned(src[j]);
                    dst[j] = static_cast<Elt>(s >= p ? s - p : s);
                }
            } else {
                for (std::size_t j = col; j < width; ++j)
                    dst[j] = add_tab[(std::size_t(dst[j]) << 8) | src[j]];
            }
        }

        info.pivot_cols.push_back(col);
        ++row;
    }
    for (; col < pivot_limit; ++col) info.free_cols.push_back(col);
    info.rank = info.pivot_cols.size();
    return info;
}

// Bit-packed grid for GF(2): one row = ceil(width/64) machine words.
struct BitGrid {
    std::size_t rows = 0, width = 0, wpr = 0;
    std::vector<std::uint64_t> w;

    BitGrid(std::size_t r, std::size_t wd)
        : rows(r), width(wd), wpr((wd + 63) / 64), w(r * wpr, 0) {}

    [[nodiscard]] bool get(std::size_t r, std::size_t c) const {
        return (w[r * wpr + c / 64] >> (c % 64)) & 1;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        const std::uint64_t mask = std::uint64_t(1) << (c % 64);
        auto& word = w[r * wpr + c / 64];
        word = v ? (word | mask) : (word & ~mask);
    }
};

inline EchelonInfo rref_bitpacked(BitGrid& g, std::size_t pivot_limit) {
    EchelonInfo info;
    std::size_t row = 0, col = 0;
    for (; col < pivot_limit && row < g.rows; ++col) {
        std::size_t pr = row;
        while (pr < g.rows && !g.get(pr, col)) ++pr;
        if (pr == g.rows) {
            info.free_cols.push_back(col);
            continue;
        }
        if (pr != row)
            for (std::size_t k = 0; k < g.wpr; ++k)
                std::swap(g.w[row * g.wpr + k], g.w[pr * g.wpr + k]);

        const std::uint64_t* piv = &g.w[row * g.wpr];
        const std::size_t w0 = col / 64;
        for (std::size_t r2 = 0; r2 < g.rows; ++r2) {
            if (r2 == row || !g.get(r2, col)) continue;
            std::uint64_t* dst = &g.w[r2 * g.wpr];
            for (std::size_t k = w0; k < g.wpr; ++k) dst[k] ^= piv[k];
        }
        info.pivot_cols.push_back(col);
        ++row;
    }
    for (; col < pivot_limit; ++col) info.free_cols.push_back(col);
    info.rank = info.pivot_cols.size();
    return info;
}

inline bool use_bitpacked(const Field& F, Backend b) {
    switch (b) {
        case Backend::bitpacked:
            if (F.order() != 2) throw LinalgError("bit-packed backend requires GF(2)");
            return true;
        case Backend::generic: return false;
        case Backend::automatic: return F.order() == 2;
    }
    return false;
}

// Runs RREF with either backend and hands back the reduced grid as bytes.
inline EchelonInfo run_rref(const Field& F, std::vector<Elt>& grid, std::size_t rows,
                            std::size_t width, std::size_t pivot_limit, Backend backend) {
    if (!use_bitpacked(F, backend)) return rref_generic(F, grid, rows, width, pivot_limit);
    BitGrid g(rows, width);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < width; ++c)
            if (grid[r * width + c]) g.set(r, c, true);
    const EchelonInfo info = rref_bitpacked(g, pivot_limit);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < width; ++c) grid[r * width + c] = g.get(r, c) ? 1 : 0;
    return info;
}

/// Rank of a set of columns, without materializing a Matrix.
inline std::size_t rank_of_columns(const Field& F, std::size_t ambient,
                                   const std::vector<const Vec*>& cols,
                                   Backend backend = Backend::automatic) {
    const std::size_t n = cols.size();
    if (n == 0 || ambient == 0) return 0;
    std::vector<Elt> grid(ambient * n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        if (cols[j]->size() != ambient) throw LinalgError("ambient mismatch");
        for (std::size_t i = 0; i < ambient; ++i) grid[i * n + j] = (*cols[j])[i];
    }
    return run_rref(F, grid, ambient, n, n, backend).rank;
}

} // namespace detail

// ---------------------------------------------------------------------------
// public elimination ops
// ---------------------------------------------------------------------------

struct RrefResult {
    Matrix rref;
    std::size_t rank = 0;
    SubspaceBasis kernel;
    std::vector<std::size_t> pivot_cols;
};

inline RrefResult rref_rank_kernel(const Matrix& m, Backend backend = Backend::automatic) {
    const Field& F = *m.field();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<Elt> grid(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) grid[r * cols + c] = m(r, c);

    const auto info = detail::run_rref(F, grid, rows, cols, cols, backend);

    RrefResult out;
    out.rank = info.rank;
    out.pivot_cols = info.pivot_cols;
    out.rref = Matrix(m.field(), rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out.rref(r, c) = grid[r * cols + c];

    out.kernel.ambient = cols;
    for (std::size_t f : info.free_cols) {
        Vec v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < info.pivot_cols.size(); ++i)
            v[info.pivot_cols[i]] = F.neg(grid[i * cols + f]);
        out.kernel.vectors.push_back(std::move(v));
    }
    return out;
}

struct SolveResult {
    Vec particular;
    SubspaceBasis kernel;
};

/// Solve m x = b; nullopt when b is outside the column span. The particular
/// solution sets all free variables to zero.
inline std::optional<SolveResult> solve(const Matrix& m, const Vec& b,
                                        Backend backend = Backend::automatic) {
    if (b.size() != m.rows()) throw LinalgError("right-hand side length mismatch");
    const Field& F = *m.field();
    const std::size_t rows = m.rows(), cols = m.cols(), width = cols + 1;
    std::vector<Elt> grid(rows * width);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) grid[r * width + c] = m(r, c);
        grid[r * width + cols] = b[r];
    }

    const auto info = detail::run_rref(F, grid, rows, width, cols, backend);

    for (std::size_t r = info.rank; r < rows; ++r)
        if (grid[r * width + cols] != 0) return std::nullopt;

    SolveResult out;
    out.particular.assign(cols, 0);
    for (std::size_t i = 0; i < info.pivot_cols.size(); ++i)
        out.particular[info.pivot_cols[i]] = grid[i * width + cols];
    out.kernel.ambient = cols;
    for (std::size_t f : info.free_cols) {
        Vec v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < info.pivot_cols.size(); ++i)
            v[info.pivot_cols[i]] = F.neg(grid[i * width + f]);
        out.kernel.vectors.push_back(std::move(v));
    }
    return out;
}

inline std::size_t rank(const Matrix& m, Backend backend = Backend::automatic) {
    const Field& F = *m.field();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<Elt> grid(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) grid[r * cols + c] = m(r, c);
    return detail::run_rref(F, grid, rows, cols, cols, backend).rank;
}

/// True iff the two bases together span the whole ambient space exactly once:
/// dim a + dim b = ambient and their concatenation has full rank.
inline bool is_direct_sum(const Field& F, const SubspaceBasis& a, const SubspaceBasis& b,
                          Backend backend = Backend::automatic) {
    if (a.ambient != b.ambient) throw LinalgError("ambient dimension mismatch");
    if (a.dim() + b.dim() != a.ambient) return false;
    std::vector<const Vec*> cols;
    cols.reserve(a.dim() + b.dim());
    for (const auto& v : a.vectors) cols.push_back(&v);
    for (const auto& v : b.vectors) cols.push_back(&v);
    return detail::rank_of_columns(F, a.ambient, cols, backend) == a.ambient;
}

/// Checked constructor for a SubspaceBasis: verifies linear independence.
inline SubspaceBasis make_basis(const Field& F, std::size_t ambient, std::vector<Vec> vectors,
                                Backend backend = Backend::automatic) {
    std::vector<const Vec*> cols;
    cols.reserve(vectors.size());
    for (const auto& v : vectors) cols.push_back(&v);
    if (detail::rank_of_columns(F, ambient, cols, backend) != vectors.size())
        throw LinalgError("vectors are linearly dependent");
    return SubspaceBasis{ambient, std::move(vectors)};
}

} // namespace quiversat
