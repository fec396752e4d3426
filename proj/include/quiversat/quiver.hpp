#pragma once

// Quivers and their representations: endomorphism-space computation by
// solving the commutation equations, the Schur test, subrepresentation and
// direct-sum-decomposition verification, and a decomposability search that
// drives Fitting splitting over the endomorphism space.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace quiversat {

class QuiverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ArrowSpec {
    int source = 0;
    int target = 0;
};

struct Quiver {
    std::vector<std::string> vertex_names;
    std::vector<ArrowSpec> arrows; // parallel arrows allowed

    [[nodiscard]] int vertex_count() const { return static_cast<int>(vertex_names.size()); }
    [[nodiscard]] int arrow_count() const { return static_cast<int>(arrows.size()); }

    [[nodiscard]] bool has_self_loop() const {
        for (const ArrowSpec& a : arrows)
            if (a.source == a.target) return true;
        return false;
    }

    void validate() const {
        for (const ArrowSpec& a : arrows)
            if (a.source < 0 || a.source >= vertex_count() || a.target < 0 ||
                a.target >= vertex_count())
                throw QuiverError("arrow endpoint out of range");
    }
};

using QuiverPtr = std::shared_ptr<const Quiver>;

struct Representation {
    QuiverPtr quiver;
    FieldPtr field;
    std::vector<int> dims;     // per vertex
    std::vector<Matrix> maps;  // per arrow, dims[target] x dims[source]

    [[nodiscard]] int total_dim() const {
        int t = 0;
        for (int d : dims) t += d;
        return t;
    }

    void validate() const {
        quiver->validate();
        if (static_cast<int>(dims.size()) != quiver->vertex_count())
            throw QuiverError("dimension vector length mismatch");
        if (static_cast<int>(maps.size()) != quiver->arrow_count())
            throw QuiverError("arrow map count mismatch");
        for (int e = 0; e < quiver->arrow_count(); ++e) {
            const ArrowSpec& a = quiver->arrows[static_cast<std::size_t>(e)];
            const Matrix& m = maps[static_cast<std::size_t>(e)];
            if (static_cast<int>(m.rows()) != dims[static_cast<std::size_t>(a.target)] ||
                static_cast<int>(m.cols()) != dims[static_cast<std::size_t>(a.source)])
                throw QuiverError("arrow map shape mismatch");
        }
    }
};

/// One endomorphism: a square matrix per vertex.
using EndoTuple = std::vector<Matrix>;

struct EndomorphismSpace {
    std::vector<EndoTuple> basis;

    [[nodiscard]] std::size_t dimension() const { return basis.size(); }
};

struct SubrepWitness {
    std::vector<SubspaceBasis> first, second; // per vertex
};

// ---------------------------------------------------------------------------
// endomorphisms
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::size_t> endo_offsets(const Representation& r, std::size_t& total) {
    std::vector<std::size_t> off(r.dims.size());
    total = 0;
    for (std::size_t v = 0; v < r.dims.size(); ++v) {
        off[v] = total;
        total += static_cast<std::size_t>(r.dims[v]) * static_cast<std::size_t>(r.dims[v]);
    }
    return off;
}

} // namespace detail

inline Vec flatten_tuple(const Representation& r, const EndoTuple& t) {
    std::size_t total = 0;
    const auto off = detail::endo_offsets(r, total);
    Vec out(total, 0);
    for (std::size_t v = 0; v < r.dims.size(); ++v) {
        const auto n = static_cast<std::size_t>(r.dims[v]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[off[v] + i * n + j] = t[v](i, j);
    }
    return out;
}

inline EndoTuple tuple_from_flat(const Representation& r, const Vec& flat) {
    std::size_t total = 0;
    const auto off = detail::endo_offsets(r, total);
    if (flat.size() != total) throw QuiverError("flat endomorphism length mismatch");
    EndoTuple t;
    t.reserve(r.dims.size());
    for (std::size_t v = 0; v < r.dims.size(); ++v) {
        const auto n = static_cast<std::size_t>(r.dims[v]);
        Matrix m(r.field, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = flat[off[v] + i * n + j];
        t.push_back(std::move(m));
    }
    return t;
}

inline EndoTuple identity_tuple(const Representation& r) {
    EndoTuple t;
    t.reserve(r.dims.size());
    for (int d : r.dims) t.push_back(Matrix::identity(r.field, static_cast<std::size_t>(d)));
    return t;
}

/// Checks the commutation equations map∘a_source = a_target∘map on every arrow.
inline bool commutes(const Representation& r, const EndoTuple& t) {
    if (t.size() != r.dims.size()) return false;
    for (int e = 0; e < r.quiver->arrow_count(); ++e) {
        const ArrowSpec& a = r.quiver->arrows[static_cast<std::size_t>(e)];
        const Matrix& m = r.maps[static_cast<std::size_t>(e)];
        if (!(mul(m, t[static_cast<std::size_t>(a.source)]) ==
              mul(t[static_cast<std::size_t>(a.target)], m)))
            return false;
    }
    return true;
}

/// Solves the homogeneous commutation system over the per-vertex matrix
/// entries (vertices in quiver order, each matrix row-major) and returns the
/// canonical kernel basis.
inline EndomorphismSpace endomorphism_space(const Representation& r) {
    std::size_t unknowns = 0;
    const auto off = detail::endo_offsets(r, unknowns);

    std::size_t eqs = 0;
    for (const ArrowSpec& a : r.quiver->arrows)
        eqs += static_cast<std::size_t>(r.dims[static_cast<std::size_t>(a.source)]) *
               static_cast<std::size_t>(r.dims[static_cast<std::size_t>(a.target)]);

    Matrix system(r.field, eqs, unknowns);
    const Field& F = *r.field;
    std::size_t row = 0;
    for (int e = 0; e < r.quiver->arrow_count(); ++e) {
        const ArrowSpec& a = r.quiver->arrows[static_cast<std::size_t>(e)];
        const Matrix& m = r.maps[static_cast<std::size_t>(e)];
        const auto nv = static_cast<std::size_t>(r.dims[static_cast<std::size_t>(a.source)]);
        const auto nw = static_cast<std::size_t>(r.dims[static_cast<std::size_t>(a.target)]);
        const std::size_t ov = off[static_cast<std::size_t>(a.source)];
        const std::size_t ow = off[static_cast<std::size_t>(a.target)];
        // Equation (rr, c): sum_j m[rr][j] a_src[j][c] - sum_j a_tgt[rr][j] m[j][c] = 0.
        for (std::size_t rr = 0; rr < nw; ++rr) {
            for (std::size_t c = 0; c < nv; ++c) {
                Elt* out = system.row_ptr(row++);
                for (std::size_t j = 0; j < nv; ++j) {
                    const Elt coeff = m(rr, j);
                    if (coeff == 0) continue;
                    Elt& slot = out[ov + j * nv + c];
                    slot = F.add(slot, coeff);
                }
                for (std::size_t j = 0; j < nw; ++j) {
                    const Elt coeff = m(j, c);
                    if (coeff == 0) continue;
                    Elt& slot = out[ow + rr * nw + j];
                    slot = F.sub(slot, coeff);
                }
            }
        }
    }

    EndomorphismSpace space;
    for (const Vec& k : rref_rank_kernel(system).kernel.vectors)
        space.basis.push_back(tuple_from_flat(r, k));
    return space;
}

inline std::size_t endomorphism_dimension(const Representation& r) {
    return endomorphism_space(r).dimension();
}

/// dim End = 1, i.e. only scalar endomorphisms; implies absolute
/// indecomposability.
inline bool is_schur(const Representation& r) {
    if (r.total_dim() == 0) throw QuiverError("Schur test on the zero representation");
    return endomorphism_dimension(r) == 1;
}

// ---------------------------------------------------------------------------
// subrepresentations and decompositions
// ---------------------------------------------------------------------------

/// True iff for every arrow the image of the source subspace lies in the span
/// of the target subspace.
inline bool is_subrepresentation(const Representation& r, const std::vector<SubspaceBasis>& s) {
    if (s.size() != r.dims.size()) throw QuiverError("per-vertex basis count mismatch");
    for (std::size_t v = 0; v < s.size(); ++v)
        if (s[v].ambient != static_cast<std::size_t>(r.dims[v]))
            throw QuiverError("subspace ambient mismatch");
    const Field& F = *r.field;
    for (int e = 0; e < r.quiver->arrow_count(); ++e) {
        const ArrowSpec& a = r.quiver->arrows[static_cast<std::size_t>(e)];
        const SubspaceBasis& sv = s[static_cast<std::size_t>(a.source)];
        const SubspaceBasis& sw = s[static_cast<std::size_t>(a.target)];
        if (sv.dim() == 0) continue;
        std::vector<Vec> images;
        images.reserve(sv.dim());
        for (const Vec& b : sv.vectors)
            images.push_back(mul(r.maps[static_cast<std::size_t>(e)], b));
        std::vector<const Vec*> cols;
        for (const Vec& b : sw.vectors) cols.push_back(&b);
        const std::size_t base = detail::rank_of_columns(F, sw.ambient, cols);
        for (const Vec& img : images) cols.push_back(&img);
        if (detail::rank_of_columns(F, sw.ambient, cols) != base) return false;
    }
    return true;
}

/// True iff both families are subrepresentations, their spans are
/// complementary at every vertex, and both are nonzero overall.
inline bool verify_decomposition(const Representation& r, const SubrepWitness& w) {
    if (w.first.size() != r.dims.size() || w.second.size() != r.dims.size())
        throw QuiverError("witness vertex count mismatch");
    std::size_t d1 = 0, d2 = 0;
    for (std::size_t v = 0; v < r.dims.size(); ++v) {
        d1 += w.first[v].dim();
        d2 += w.second[v].dim();
    }
    if (d1 == 0 || d2 == 0) return false;
    const Field& F = *r.field;
    for (std::size_t v = 0; v < r.dims.size(); ++v)
        if (!is_direct_sum(F, w.first[v], w.second[v])) return false;
    return is_subrepresentation(r, w.first) && is_subrepresentation(r, w.second);
}

namespace detail {

inline Matrix matrix_power(const Matrix& m, std::uint64_t e) {
    Matrix acc = Matrix::identity(m.field(), m.rows());
    Matrix base = m;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

/// Canonical column-space basis: the columns of m sitting at the pivot
/// columns of its RREF.
inline SubspaceBasis column_space(const Matrix& m) {
    SubspaceBasis out;
    out.ambient = m.rows();
    for (std::size_t c : rref_rank_kernel(m).pivot_cols) out.vectors.push_back(m.column(c));
    return out;
}

} // namespace detail

/// Fitting splitting along an endomorphism: with N the total dimension,
/// splits into ker(phi_v^N) and im(phi_v^N) per vertex. Returns nothing when
/// phi is nilpotent or invertible.
inline std::optional<SubrepWitness> fitting_split(const Representation& r, const EndoTuple& phi) {
    if (!commutes(r, phi)) throw QuiverError("Fitting split on a non-endomorphism");
    const auto N = static_cast<std::uint64_t>(r.total_dim());
    SubrepWitness w;
    w.first.resize(r.dims.size());
    w.second.resize(r.dims.size());
    std::size_t kdim = 0, idim = 0;
    for (std::size_t v = 0; v < r.dims.size(); ++v) {
        const Matrix power = detail::matrix_power(phi[v], N);
        w.first[v] = rref_rank_kernel(power).kernel;
        w.second[v] = detail::column_space(power);
        kdim += w.first[v].dim();
        idim += w.second[v].dim();
    }
    if (kdim == 0 || idim == 0) return std::nullopt;
    if (!verify_decomposition(r, w)) throw QuiverError("Fitting split produced an invalid witness");
    return w;
}

inline bool is_scalar_tuple(const Representation& r, const EndoTuple& t) {
    bool have = false;
    Elt c = 0;
    for (std::size_t v = 0; v < t.size(); ++v) {
        const auto n = static_cast<std::size_t>(r.dims[v]);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const Elt e = t[v](i, j);
                if (i != j) {
                    if (e != 0) return false;
                } else if (!have) {
                    c = e;
                    have = true;
                } else if (e != c) {
                    return false;
                }
            }
        }
    }
    return true;
}

struct SearchOutcome {
    enum class Status {
        found,        ///< a verified decomposition witness was produced
        exhausted,    ///< full End space enumerated: indecomposable over F
        inconclusive  ///< sampling budget spent without a witness
    };
    Status status = Status::inconclusive;
    std::optional<SubrepWitness> witness;
    std::uint64_t tried = 0;
};

/// Enumerates endomorphisms (exhaustively when q^dim fits the budget, else a
/// deterministic seeded sample), Fitting-splitting every non-scalar element.
/// Candidates are coefficient vectors over the canonical End basis in
/// lexicographic field order, first coordinate most significant, so the first
/// witness found is the lexicographically smallest one.
inline SearchOutcome search_decomposition(const Representation& r, std::uint64_t budget,
                                          std::uint64_t seed = 0x5eedULL) {
    if (budget < 1) throw QuiverError("search budget must be at least 1");
    const EndomorphismSpace space = endomorphism_space(r);
    const std::size_t dim = space.dimension();
    const std::uint64_t q = r.field->order();

    SearchOutcome out;
    if (dim == 0) {
        out.status = SearchOutcome::Status::exhausted;
        return out;
    }

    bool exhaustive = true;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < dim && exhaustive; ++i) {
        if (count > budget / q + 1) exhaustive = false;
        count *= q;
        if (count > budget) exhaustive = false;
    }

    const auto assemble = [&](const std::vector<Elt>& coeff) {
        EndoTuple t;
        t.reserve(r.dims.size());
        for (std::size_t v = 0; v < r.dims.size(); ++v)
            t.push_back(Matrix(r.field, static_cast<std::size_t>(r.dims[v]),
                               static_cast<std::size_t>(r.dims[v])));
        for (std::size_t i = 0; i < dim; ++i) {
            if (coeff[i] == 0) continue;
            for (std::size_t v = 0; v < r.dims.size(); ++v)
                t[v] = add(t[v], scale(coeff[i], space.basis[i][v]));
        }
        return t;
    };

    const auto try_candidate = [&](const std::vector<Elt>& coeff) -> bool {
        const EndoTuple t = assemble(coeff);
        if (is_scalar_tuple(r, t)) return false;
        ++out.tried;
        auto w = fitting_split(r, t);
        if (!w) return false;
        out.status = SearchOutcome::Status::found;
        out.witness = std::move(w);
        return true;
    };

    if (exhaustive) {
        std::vector<Elt> coeff(dim, 0);
        for (std::uint64_t idx = 1; idx < count; ++idx) {
            // increment base-q counter, last coordinate fastest
            for (std::size_t pos = dim; pos-- > 0;) {
                if (++coeff[pos] < q) break;
                coeff[pos] = 0;
            }
            if (try_candidate(coeff)) return out;
        }
        out.status = SearchOutcome::Status::exhausted;
        return out;
    }

    std::mt19937_64 rng(seed);
    std::vector<Elt> coeff(dim);
    for (std::uint64_t n = 0; n < budget; ++n) {
        for (std::size_t i = 0; i < dim; ++i) coeff[i] = static_cast<Elt>(rng() % q);
        if (try_candidate(coeff)) return out;
    }
    out.status = SearchOutcome::Status::inconclusive;
    return out;
}

inline std::vector<long long> dim_vector(const Representation& r) {
    return std::vector<long long>(r.dims.begin(), r.dims.end());
}

} // namespace quiversat
