#pragma once

// The 3-SAT -> quiver-representation reduction. From a preprocessed 3-CNF
// with M variables and L clauses it builds a quiver with one anchor cycle
// vertex u_i and one variable vertex v_i per variable plus B = (q-1)^3 clause
// block vertices w_k^(l) per clause, and a symbolic representation template
// whose only indeterminate entries are the X_i in the u_i -> v_i columns
// (1, X_i, 0, ..., 0). Substituting a falsifying assignment yields an
// explicit two-sided decomposition witness; substituting a satisfying boolean
// assignment yields a Schur representation.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnf.hpp"
#include "quiver.hpp"

namespace quiversat {

class ReductionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A template matrix entry: either a field constant or an indeterminate X_var.
struct SymbolicEntry {
    bool is_var = false;
    Elt value = 0; // constant value when !is_var
    int var = 0;   // 1-based variable index when is_var
};

struct SymbolicMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<SymbolicEntry> entries; // row-major

    SymbolicMatrix() = default;
    SymbolicMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

    SymbolicEntry& operator()(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const SymbolicEntry& operator()(std::size_t r, std::size_t c) const {
        return entries[r * cols + c];
    }
};

/// How the connector vectors carried by the clause-block arrows are chosen.
/// `cycle_sum` is the B = 1 recipe (unit vectors for all but the largest
/// clause index, whose connector is the sum of the whole marker basis);
/// `unit_special` gives the first (clause, block) pair the vector
/// (0,1,1,...,1) and unit vectors to the rest. Both satisfy every basis
/// genericity condition; `automatic` picks cycle_sum iff B = 1.
enum class ConnectorStyle { automatic, cycle_sum, unit_special };

struct FalsifiedWitness {
    int clause = 0; // 0-based
    int block = 0;  // 0-based
};

struct ReductionOutput {
    FieldPtr field;
    int num_vars = 0;   // M
    int num_clauses = 0; // L
    int blocks = 1;      // B = (q-1)^3
    std::vector<Clause> clauses;
    OccurrenceSets occ;
    std::vector<int> block_dim; // n_i per variable
    QuiverPtr quiver;
    std::vector<int> dims; // per vertex
    std::vector<SymbolicMatrix> maps;

    struct ArrowInfo {
        enum class Kind { cycle, variable_in, clause_out, clause_in };
        Kind kind = Kind::cycle;
        int var = -1;    // 0-based, for variable_in/clause_out/clause_in
        int clause = -1; // 0-based
        int block = -1;  // 0-based
    };
    std::vector<ArrowInfo> arrow_info;

    // per variable: connector vectors in (clause ascending, block ascending)
    // order over the variable's occurrence set
    std::vector<std::vector<Vec>> connectors;

    [[nodiscard]] int cycle_vertex(int i) const { return i; }
    [[nodiscard]] int var_vertex(int i) const { return num_vars + i; }
    [[nodiscard]] int clause_vertex(int k, int l) const {
        return 2 * num_vars + k * blocks + l;
    }

    /// Position of clause k inside variable i's occurrence list.
    [[nodiscard]] int occurrence_index(int i, int k) const {
        const auto& omega = occ.all[static_cast<std::size_t>(i)];
        for (std::size_t pos = 0; pos < omega.size(); ++pos)
            if (omega[pos] == k) return static_cast<int>(pos);
        throw ReductionError("clause not in the variable's occurrence set");
    }

    [[nodiscard]] const Vec& connector(int i, int k, int l) const {
        return connectors[static_cast<std::size_t>(i)]
                         [static_cast<std::size_t>(occurrence_index(i, k) * blocks + l)];
    }

    [[nodiscard]] Vec true_marker(int i) const {
        Vec v(static_cast<std::size_t>(block_dim[static_cast<std::size_t>(i)]), 0);
        v[0] = 1;
        v[1] = 1;
        return v;
    }

    [[nodiscard]] Vec false_marker(int i) const {
        Vec v(static_cast<std::size_t>(block_dim[static_cast<std::size_t>(i)]), 0);
        v[0] = 1;
        return v;
    }

    /// The vector (1, c, 0, ..., 0) in variable i's space.
    [[nodiscard]] Vec marker(int i, Elt c) const {
        Vec v(static_cast<std::size_t>(block_dim[static_cast<std::size_t>(i)]), 0);
        v[0] = 1;
        v[1] = c;
        return v;
    }

    /// Block index <-> triple of nonzero field elements, lexicographic over
    /// the canonical element order, first component most significant.
    [[nodiscard]] std::array<Elt, 3> block_triple(int l) const {
        const int nz = static_cast<int>(field->order()) - 1;
        std::array<Elt, 3> t{};
        t[2] = static_cast<Elt>(1 + l % nz);
        t[1] = static_cast<Elt>(1 + (l / nz) % nz);
        t[0] = static_cast<Elt>(1 + (l / (nz * nz)) % nz);
        return t;
    }

    [[nodiscard]] int triple_block(const std::array<Elt, 3>& t) const {
        const int nz = static_cast<int>(field->order()) - 1;
        for (Elt b : t)
            if (b == 0 || b >= field->order()) throw ReductionError("triple entry must be nonzero");
        return ((t[0] - 1) * nz + (t[1] - 1)) * nz + (t[2] - 1);
    }

    [[nodiscard]] std::vector<long long> dimension_vector() const {
        return std::vector<long long>(dims.begin(), dims.end());
    }
};

// ---------------------------------------------------------------------------
// quiver construction
// ---------------------------------------------------------------------------

/// Vertices u_1..u_M, v_1..v_M, then w_k^(l) with k outer and l inner. Arrows:
/// the u-cycle, u_i -> v_i, and for every occurrence (i, k) and block l one
/// arrow v_i -> w_k^(l) and one w_k^(l) -> v_i.
inline Quiver build_quiver(const OccurrenceSets& occ, int M, int L, int B) {
    if (M < 2) throw ReductionError("need at least 2 variables (preprocess first)");
    if (B < 1) throw ReductionError("block count must be positive");
    for (int i = 0; i < M; ++i)
        if (occ.all[static_cast<std::size_t>(i)].empty())
            throw ReductionError("unused variable (preprocess first)");

    Quiver q;
    for (int i = 1; i <= M; ++i) q.vertex_names.push_back("u" + std::to_string(i));
    for (int i = 1; i <= M; ++i) q.vertex_names.push_back("v" + std::to_string(i));
    for (int k = 1; k <= L; ++k)
        for (int l = 1; l <= B; ++l)
            q.vertex_names.push_back(B == 1 ? "w" + std::to_string(k)
                                            : "w" + std::to_string(k) + "_" + std::to_string(l));

    for (int i = 0; i < M; ++i) q.arrows.push_back({i, (i + 1) % M});
    for (int i = 0; i < M; ++i) q.arrows.push_back({i, M + i});
    for (int i = 0; i < M; ++i)
        for (int k : occ.all[static_cast<std::size_t>(i)])
            for (int l = 0; l < B; ++l) {
                const int w = 2 * M + k * B + l;
                q.arrows.push_back({M + i, w});
                q.arrows.push_back({w, M + i});
            }
    return q;
}

// ---------------------------------------------------------------------------
// connector selection
// ---------------------------------------------------------------------------

/// Connector vectors for one variable with occurrence count m, in
/// (clause ascending, block ascending) order; n = B*m + 1.
inline std::vector<Vec> select_connectors(const Field& F, int m, int B, ConnectorStyle style) {
    if (m < 1) throw ReductionError("empty occurrence set");
    if (style == ConnectorStyle::automatic)
        style = B == 1 ? ConnectorStyle::cycle_sum : ConnectorStyle::unit_special;
    const auto n = static_cast<std::size_t>(B * m + 1);
    const auto unit = [&](std::size_t coord) {
        Vec v(n, 0);
        v[coord] = 1;
        return v;
    };
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(B) * static_cast<std::size_t>(m));

    if (style == ConnectorStyle::cycle_sum) {
        if (B != 1) throw ReductionError("cycle_sum connectors are a B = 1 recipe");
        // All but the largest clause index take unit vectors; the last takes
        // the sum of the marker basis {T, F, units}.
        for (int pos = 0; pos + 1 < m; ++pos) out.push_back(unit(2 + static_cast<std::size_t>(pos)));
        Vec last(n, 0);
        last[0] = F.add(1, 1);  // T[0] + F[0]
        last[1] = 1;            // T[1] + F[1]
        for (std::size_t c = 2; c < n; ++c) last[c] = 1;
        out.push_back(std::move(last));
        return out;
    }

    // unit_special: the first (clause, block) pair takes (0,1,1,...,1).
    Vec special(n, 0);
    for (std::size_t c = 1; c < n; ++c) special[c] = 1;
    out.push_back(std::move(special));
    for (std::size_t pos = 2; pos < n; ++pos) out.push_back(unit(pos));
    return out;
}

/// Exhaustive rank checks of the genericity conditions the reduction needs.
struct ConnectorCheckReport {
    bool subset_bases_ok = true; ///< every n-subset of (connectors ∪ {T, F}) is a basis
    bool marker_basis_ok = true; ///< connectors ∪ {(1,c,0..)} is a basis for every c
    bool swap_basis_ok = true;   ///< {F,(1,c,0..)} ∪ (connectors minus one) is a basis, c != 0
};

inline ConnectorCheckReport check_connector_conditions(const ReductionOutput& t) {
    ConnectorCheckReport rep;
    const Field& F = *t.field;
    for (int i = 0; i < t.num_vars; ++i) {
        const auto n = static_cast<std::size_t>(t.block_dim[static_cast<std::size_t>(i)]);
        const auto& conns = t.connectors[static_cast<std::size_t>(i)];
        const Vec tm = t.true_marker(i), fm = t.false_marker(i);

        std::vector<const Vec*> family;
        for (const Vec& e : conns) family.push_back(&e);
        family.push_back(&tm);
        family.push_back(&fm);
        for (std::size_t skip = 0; skip < family.size(); ++skip) {
            std::vector<const Vec*> cols;
            for (std::size_t j = 0; j < family.size(); ++j)
                if (j != skip) cols.push_back(family[j]);
            if (detail::rank_of_columns(F, n, cols) != n) rep.subset_bases_ok = false;
        }

        for (std::uint32_t c = 0; c < F.order(); ++c) {
            const Vec mk = t.marker(i, static_cast<Elt>(c));
            std::vector<const Vec*> cols;
            for (const Vec& e : conns) cols.push_back(&e);
            cols.push_back(&mk);
            if (detail::rank_of_columns(F, n, cols) != n) rep.marker_basis_ok = false;
        }

        for (std::uint32_t c = 1; c < F.order(); ++c) {
            const Vec mk = t.marker(i, static_cast<Elt>(c));
            for (std::size_t skip = 0; skip < conns.size(); ++skip) {
                std::vector<const Vec*> cols{&fm, &mk};
                for (std::size_t j = 0; j < conns.size(); ++j)
                    if (j != skip) cols.push_back(&conns[j]);
                if (detail::rank_of_columns(F, n, cols) != n) rep.swap_basis_ok = false;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// template construction
// ---------------------------------------------------------------------------

namespace detail {

/// The unique row vector sending each constraint vector to its target value.
/// The constraint vectors must form a basis.
inline Vec solve_row(FieldPtr field, const std::vector<const Vec*>& vectors,
                     const std::vector<Elt>& targets) {
    const std::size_t n = vectors.size();
    Matrix system(field, n, n);
    for (std::size_t r = 0; r < n; ++r) {
        if (vectors[r]->size() != n) throw ReductionError("constraint vector length mismatch");
        for (std::size_t c = 0; c < n; ++c) system(r, c) = (*vectors[r])[c];
    }
    const auto sol = solve(system, targets);
    if (!sol || !sol->kernel.vectors.empty())
        throw ReductionError("clause map constraints are not a basis");
    return sol->particular;
}

} // namespace detail

inline void require_preprocessed(const Formula& f) {
    if (f.num_clauses() == 0) throw ReductionError("empty formula has no quiver");
    if (f.num_vars < 2) throw ReductionError("need at least 2 variables");
    for (const Clause& cl : f.clauses) {
        if (cl.size() != 3 || !quiversat::detail::clause_vars_distinct(cl))
            throw ReductionError("clause without 3 distinct variables (preprocess first)");
        for (const Literal& lit : cl)
            if (lit.var < 1 || lit.var > f.num_vars)
                throw ReductionError("literal variable out of range");
    }
}

inline ReductionOutput build_template(const Formula& f, FieldPtr field,
                                      ConnectorStyle style = ConnectorStyle::automatic) {
    require_preprocessed(f);
    const Field& F = *field;
    const int nz = static_cast<int>(F.order()) - 1;
    const int B = nz * nz * nz;
    const int M = f.num_vars;
    const int L = f.num_clauses();
    if (static_cast<long long>(B) * L > (1 << 20))
        throw ReductionError("clause block count too large for this field");

    ReductionOutput t;
    t.field = field;
    t.num_vars = M;
    t.num_clauses = L;
    t.blocks = B;
    t.clauses = f.clauses;
    t.occ = occurrence_sets(f);
    for (int i = 0; i < M; ++i) {
        const auto occ_count = static_cast<int>(t.occ.all[static_cast<std::size_t>(i)].size());
        if (occ_count == 0) throw ReductionError("unused variable (preprocess first)");
        t.block_dim.push_back(B * occ_count + 1);
    }

    Quiver q = build_quiver(t.occ, M, L, B);
    t.quiver = std::make_shared<const Quiver>(std::move(q));

    t.dims.assign(static_cast<std::size_t>(t.quiver->vertex_count()), 1);
    for (int i = 0; i < M; ++i)
        t.dims[static_cast<std::size_t>(t.var_vertex(i))] = t.block_dim[static_cast<std::size_t>(i)];

    for (int i = 0; i < M; ++i) {
        const auto m = static_cast<int>(t.occ.all[static_cast<std::size_t>(i)].size());
        t.connectors.push_back(select_connectors(F, m, B, style));
    }

    const auto check = check_connector_conditions(t);
    if (!check.subset_bases_ok || !check.marker_basis_ok || !check.swap_basis_ok)
        throw ReductionError("connector genericity conditions failed");

    // Position of the negative occurrence of variable i in clause k.
    const auto negative_slot = [&](int i, int k) {
        const Clause& cl = f.clauses[static_cast<std::size_t>(k)];
        for (std::size_t u = 0; u < 3; ++u)
            if (cl[u].var == i + 1 && cl[u].negated) return u;
        throw ReductionError("variable does not occur negatively in the clause");
    };

    t.maps.reserve(t.quiver->arrows.size());
    t.arrow_info.reserve(t.quiver->arrows.size());

    using Kind = ReductionOutput::ArrowInfo::Kind;
    std::size_t arrow = 0;
    for (int i = 0; i < M; ++i, ++arrow) {
        SymbolicMatrix m(1, 1);
        m(0, 0) = SymbolicEntry{false, 1, 0};
        t.maps.push_back(std::move(m));
        t.arrow_info.push_back({Kind::cycle, i, -1, -1});
    }
    for (int i = 0; i < M; ++i, ++arrow) {
        const auto n = static_cast<std::size_t>(t.block_dim[static_cast<std::size_t>(i)]);
        SymbolicMatrix m(n, 1);
        m(0, 0) = SymbolicEntry{false, 1, 0};
        m(1, 0) = SymbolicEntry{true, 0, i + 1};
        for (std::size_t r = 2; r < n; ++r) m(r, 0) = SymbolicEntry{false, 0, 0};
        t.maps.push_back(std::move(m));
        t.arrow_info.push_back({Kind::variable_in, i, -1, -1});
    }
    for (int i = 0; i < M; ++i) {
        const auto n = static_cast<std::size_t>(t.block_dim[static_cast<std::size_t>(i)]);
        const auto& omega_pos = t.occ.positive[static_cast<std::size_t>(i)];
        const Vec tm = t.true_marker(i), fm = t.false_marker(i);
        for (int k : t.occ.all[static_cast<std::size_t>(i)]) {
            const bool positive =
                std::find(omega_pos.begin(), omega_pos.end(), k) != omega_pos.end();
            for (int l = 0; l < B; ++l) {
                // v_i -> w_k^(l): kill every other connector, plus either
                // (positive) F |-> 0, T |-> 1 or (negative) (1,b_u,0..) |-> 0,
                // F |-> 1 where b_u is the block triple entry at the clause
                // slot holding the negated occurrence.
                std::vector<const Vec*> vectors;
                std::vector<Elt> targets;
                Vec killed;
                if (positive) {
                    killed = fm;
                    vectors.push_back(&killed);
                    targets.push_back(0);
                    vectors.push_back(&tm);
                    targets.push_back(1);
                } else {
                    killed = t.marker(i, t.block_triple(l)[negative_slot(i, k)]);
                    vectors.push_back(&killed);
                    targets.push_back(0);
                    vectors.push_back(&fm);
                    targets.push_back(1);
                }
                const auto& conns = t.connectors[static_cast<std::size_t>(i)];
                const std::size_t self =
                    static_cast<std::size_t>(t.occurrence_index(i, k) * B + l);
                for (std::size_t j = 0; j < conns.size(); ++j) {
                    if (j == self) continue;
                    vectors.push_back(&conns[j]);
                    targets.push_back(0);
                }
                const Vec row = detail::solve_row(field, vectors, targets);
                SymbolicMatrix m(1, n);
                for (std::size_t c = 0; c < n; ++c) m(0, c) = SymbolicEntry{false, row[c], 0};
                t.maps.push_back(std::move(m));
                t.arrow_info.push_back({Kind::clause_out, i, k, l});

                // w_k^(l) -> v_i: the connector column.
                const Vec& e = conns[self];
                SymbolicMatrix wm(n, 1);
                for (std::size_t r = 0; r < n; ++r) wm(r, 0) = SymbolicEntry{false, e[r], 0};
                t.maps.push_back(std::move(wm));
                t.arrow_info.push_back({Kind::clause_in, i, k, l});
            }
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// substitution and witnesses
// ---------------------------------------------------------------------------

inline Representation substitute(const ReductionOutput& t, const Assignment& x) {
    if (static_cast<int>(x.size()) != t.num_vars) throw ReductionError("assignment length mismatch");
    for (Elt v : x)
        if (v >= t.field->order()) throw ReductionError("assignment value outside field");
    Representation r;
    r.quiver = t.quiver;
    r.field = t.field;
    r.dims = t.dims;
    r.maps.reserve(t.maps.size());
    for (const SymbolicMatrix& sm : t.maps) {
        Matrix m(t.field, sm.rows, sm.cols);
        for (std::size_t i = 0; i < sm.rows; ++i)
            for (std::size_t j = 0; j < sm.cols; ++j) {
                const SymbolicEntry& e = sm(i, j);
                m(i, j) = e.is_var ? x[static_cast<std::size_t>(e.var) - 1] : e.value;
            }
        r.maps.push_back(std::move(m));
    }
    r.validate();
    return r;
}

/// Smallest falsified clause plus the block whose triple is (y_1,y_2,y_3)
/// with y_j = x_j when nonzero and 1 otherwise; nothing when the formula
/// evaluates to true.
inline std::optional<FalsifiedWitness> find_falsified_witness(const Formula& f,
                                                              const Assignment& x,
                                                              const ReductionOutput& t) {
    for (int k = 0; k < f.num_clauses(); ++k) {
        const Clause& cl = f.clauses[static_cast<std::size_t>(k)];
        if (!clause_false(cl, x)) continue;
        std::array<Elt, 3> triple{};
        for (std::size_t j = 0; j < 3; ++j) {
            const Elt v = x[static_cast<std::size_t>(cl[j].var) - 1];
            triple[j] = v != 0 ? v : Elt{1};
        }
        return FalsifiedWitness{k, t.triple_block(triple)};
    }
    return std::nullopt;
}

/// The explicit decomposition attached to a falsified clause: the clause
/// block together with its connectors on one side; everything else, with the
/// variable spaces cut down to (1,x_i,0..) plus the remaining connectors, on
/// the other.
inline SubrepWitness explicit_decomposition(const ReductionOutput& t, const Assignment& x,
                                            const FalsifiedWitness& w) {
    if (static_cast<int>(x.size()) != t.num_vars) throw ReductionError("assignment length mismatch");
    if (w.clause < 0 || w.clause >= t.num_clauses || w.block < 0 || w.block >= t.blocks)
        throw ReductionError("witness indices out of range");

    const int k = w.clause, l = w.block;
    const auto triple = t.block_triple(l);

    // Precondition: the clause is falsified, and the block triple matches the
    // assignment at every negated slot (the positive slots only select l).
    const Clause& cl = t.clauses[static_cast<std::size_t>(k)];
    if (!clause_false(cl, x)) throw ReductionError("clause is not falsified by the assignment");
    for (std::size_t j = 0; j < 3; ++j)
        if (cl[j].negated && triple[j] != x[static_cast<std::size_t>(cl[j].var) - 1])
            throw ReductionError("block triple does not match the assignment");

    SubrepWitness out;
    const auto vertices = static_cast<std::size_t>(t.quiver->vertex_count());
    out.first.resize(vertices);
    out.second.resize(vertices);
    for (std::size_t v = 0; v < vertices; ++v) {
        out.first[v].ambient = static_cast<std::size_t>(t.dims[v]);
        out.second[v].ambient = static_cast<std::size_t>(t.dims[v]);
    }

    const auto unit1 = Vec{1};
    for (int i = 0; i < t.num_vars; ++i) {
        out.second[static_cast<std::size_t>(t.cycle_vertex(i))].vectors.push_back(unit1);
    }
    for (int k2 = 0; k2 < t.num_clauses; ++k2)
        for (int l2 = 0; l2 < t.blocks; ++l2) {
            auto& side = (k2 == k && l2 == l) ? out.first : out.second;
            side[static_cast<std::size_t>(t.clause_vertex(k2, l2))].vectors.push_back(unit1);
        }

    for (int i = 0; i < t.num_vars; ++i) {
        const auto vv = static_cast<std::size_t>(t.var_vertex(i));
        const auto& omega = t.occ.all[static_cast<std::size_t>(i)];
        const bool touches = std::find(omega.begin(), omega.end(), k) != omega.end();
        if (!touches) {
            const auto n = static_cast<std::size_t>(t.block_dim[static_cast<std::size_t>(i)]);
            for (std::size_t c = 0; c < n; ++c) {
                Vec unit(n, 0);
                unit[c] = 1;
                out.second[vv].vectors.push_back(std::move(unit));
            }
            continue;
        }
        out.first[vv].vectors.push_back(t.connector(i, k, l));
        out.second[vv].vectors.push_back(t.marker(i, x[static_cast<std::size_t>(i)]));
        const auto& conns = t.connectors[static_cast<std::size_t>(i)];
        const auto self = static_cast<std::size_t>(t.occurrence_index(i, k) * t.blocks + l);
        for (std::size_t j = 0; j < conns.size(); ++j)
            if (j != self) out.second[vv].vectors.push_back(conns[j]);
    }
    return out;
}

} // namespace quiversat
