#pragma once

// 3-CNF data model: DIMACS parsing/emission, truth evaluation over an
// arbitrary finite field (a clause is false iff every positive literal takes
// the value 0 and every negative literal a nonzero value), and the
// preprocessing pass that makes the three variables of each clause pairwise
// distinct while preserving satisfiability.

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "field.hpp"

namespace quiversat {

class CnfError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Literal {
    int var = 0; // 1-based
    bool negated = false;

    friend bool operator==(const Literal& a, const Literal& b) {
        return a.var == b.var && a.negated == b.negated;
    }
};

using Clause = std::vector<Literal>; // 1..3 literals; exactly 3 after preprocessing

/// Where a (post-preprocessing) variable came from.
struct VarOrigin {
    int original_var = 0;             // > 0: index in the input formula
    std::optional<bool> forced;       // fresh variables: pinned value, or free helper
};

struct Provenance {
    int original_num_vars = 0;
    std::vector<int> deleted_tautologies; // 0-based input clause indices
    std::vector<int> padded_clauses;      // 0-based input clause indices
    std::vector<VarOrigin> vars;          // per output variable, 1-based order
    bool preprocessed = false;
};

struct Formula {
    int num_vars = 0;
    std::vector<Clause> clauses;
    std::vector<std::string> comments; // DIMACS comment lines, kept on read only
    Provenance provenance;

    [[nodiscard]] int num_clauses() const { return static_cast<int>(clauses.size()); }
};

using Assignment = std::vector<Elt>;

// ---------------------------------------------------------------------------
// DIMACS
// ---------------------------------------------------------------------------

inline Formula parse_dimacs(std::string_view text) {
    Formula f;
    std::istringstream in{std::string(text)};
    std::string line;
    bool have_header = false;
    int declared_clauses = 0;
    std::vector<int> pending;

    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c" || first[0] == 'c') {
            f.comments.push_back(line);
            continue;
        }
        if (first == "p") {
            if (have_header) throw CnfError("duplicate DIMACS header");
            std::string kind;
            long m = -1, l = -1;
            if (!(ls >> kind >> m >> l) || kind != "cnf" || m < 0 || l < 0)
                throw CnfError("malformed DIMACS header");
            f.num_vars = static_cast<int>(m);
            declared_clauses = static_cast<int>(l);
            have_header = true;
            continue;
        }
        if (!have_header) throw CnfError("clause data before DIMACS header");
        std::istringstream body(line);
        int v;
        while (body >> v) pending.push_back(v);
        std::string junk;
        if (body.clear(), body >> junk) throw CnfError("non-integer token in clause data");
    }
    if (!have_header) throw CnfError("missing DIMACS header");

    Clause cur;
    for (int v : pending) {
        if (v == 0) {
            if (cur.empty()) throw CnfError("empty clause");
            if (cur.size() > 3) throw CnfError("clause longer than 3 literals");
            f.clauses.push_back(cur);
            cur.clear();
            continue;
        }
        const int var = v > 0 ? v : -v;
        if (var > f.num_vars) throw CnfError("variable index out of range");
        cur.push_back(Literal{var, v < 0});
        if (cur.size() > 3) throw CnfError("clause longer than 3 literals");
    }
    if (!cur.empty()) throw CnfError("missing clause terminator");
    if (f.num_clauses() != declared_clauses)
        throw CnfError("clause count does not match header");
    f.provenance.original_num_vars = f.num_vars;
    return f;
}

inline std::string emit_dimacs(const Formula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const Clause& cl : f.clauses) {
        for (const Literal& lit : cl) out << (lit.negated ? -lit.var : lit.var) << ' ';
        out << "0\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

/// A clause is false iff all its positive literals evaluate to 0 and all its
/// negative literals evaluate to a nonzero element. Over GF(2) this is the
/// ordinary boolean reading.
inline bool clause_false(const Clause& cl, const Assignment& x) {
    for (const Literal& lit : cl) {
        const Elt v = x[static_cast<std::size_t>(lit.var) - 1];
        if (lit.negated ? (v == 0) : (v != 0)) return false;
    }
    return true;
}

inline bool evaluate(const Formula& f, const Assignment& x, const Field& F) {
    if (static_cast<int>(x.size()) != f.num_vars) throw CnfError("assignment length mismatch");
    for (Elt v : x)
        if (v >= F.order()) throw CnfError("assignment value outside field");
    for (const Clause& cl : f.clauses)
        if (clause_false(cl, x)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// preprocessing
// ---------------------------------------------------------------------------

/// The four clauses that force `target` to hold in every satisfying
/// assignment: (t∨b∨c)(t∨b∨¬c)(t∨¬b∨c)(t∨¬b∨¬c) with b, c fresh.
inline std::array<Clause, 4> force_gadget(Literal target, int fresh_b, int fresh_c) {
    if (fresh_b == target.var || fresh_c == target.var || fresh_b == fresh_c)
        throw CnfError("gadget helper variables must be fresh");
    std::array<Clause, 4> out;
    int idx = 0;
    for (bool nb : {false, true})
        for (bool nc : {false, true})
            out[idx++] = Clause{target, Literal{fresh_b, nb}, Literal{fresh_c, nc}};
    return out;
}

namespace detail {

inline bool clause_tautological(const Clause& cl) {
    for (std::size_t i = 0; i < cl.size(); ++i)
        for (std::size_t j = i + 1; j < cl.size(); ++j)
            if (cl[i].var == cl[j].var && cl[i].negated != cl[j].negated) return true;
    return false;
}

inline bool clause_vars_distinct(const Clause& cl) {
    for (std::size_t i = 0; i < cl.size(); ++i)
        for (std::size_t j = i + 1; j < cl.size(); ++j)
            if (cl[i].var == cl[j].var) return false;
    return true;
}

} // namespace detail

/// Rewrites the formula so that every clause has exactly 3 pairwise-distinct
/// variables and no variable is unused. Satisfiability is preserved: original
/// variables keep their meaning and every fresh variable is either forced by
/// a gadget or a free gadget helper.
inline Formula preprocess(const Formula& input) {
    struct Fresh {
        int var;
        std::optional<bool> forced;
    };
    std::vector<Clause> kept;       // transformed originals, in order
    std::vector<Clause> appended;   // gadget clauses, in encounter order
    std::vector<Fresh> fresh;
    Provenance prov;
    prov.original_num_vars = input.num_vars;

    int next_var = input.num_vars;
    const auto alloc = [&](std::optional<bool> forced) {
        fresh.push_back(Fresh{++next_var, forced});
        return next_var;
    };
    const auto force = [&](Literal target) {
        const int b = alloc(std::nullopt);
        const int c = alloc(std::nullopt);
        for (const Clause& g : force_gadget(target, b, c)) appended.push_back(g);
    };

    for (int ci = 0; ci < input.num_clauses(); ++ci) {
        Clause cl = input.clauses[ci];
        if (cl.empty() || cl.size() > 3) throw CnfError("clause length outside 1..3");
        if (detail::clause_tautological(cl)) {
            prov.deleted_tautologies.push_back(ci);
            continue;
        }
        if (cl.size() == 3) {
            if (detail::clause_vars_distinct(cl)) {
                kept.push_back(cl);
                continue;
            }
            // Same variable twice or three times, same sign (mixed signs were
            // tautological). Three times: keep only the forcing gadget.
            if (cl[0] == cl[1] && cl[1] == cl[2]) {
                force(cl[0]);
                continue;
            }
            // Twice: replace one duplicate with a fresh variable forced false,
            // which keeps the clause equivalent to the two distinct literals.
            std::size_t dup = cl[0] == cl[1] ? 1 : 2;
            const int z = alloc(false);
            cl[dup] = Literal{z, false};
            force(Literal{z, true});
            kept.push_back(cl);
            continue;
        }
        // Short clause: drop duplicate literals, then pad with fresh variables
        // forced false.
        Clause uniq;
        for (const Literal& lit : cl) {
            bool seen = false;
            for (const Literal& u : uniq) seen = seen || u == lit;
            if (!seen) uniq.push_back(lit);
        }
        prov.padded_clauses.push_back(ci);
        while (uniq.size() < 3) {
            const int z = alloc(false);
            uniq.push_back(Literal{z, false});
            force(Literal{z, true});
        }
        kept.push_back(uniq);
    }

    std::vector<Clause> clauses = std::move(kept);
    clauses.insert(clauses.end(), appended.begin(), appended.end());

    // Unchanged fallback the construction never needs in practice: every kept
    // clause has 3 distinct variables, so L >= 1 already implies M >= 3.
    if (!clauses.empty()) {
        std::vector<bool> used(static_cast<std::size_t>(next_var) + 1, false);
        for (const Clause& cl : clauses)
            for (const Literal& lit : cl) used[static_cast<std::size_t>(lit.var)] = true;
        int used_count = 0;
        for (int v = 1; v <= next_var; ++v) used_count += used[static_cast<std::size_t>(v)];
        if (used_count < 2) {
            const int z = alloc(true);
            force(Literal{z, false});
            clauses.insert(clauses.end(), appended.end() - 4, appended.end());
        }
    }

    // Renumber: surviving original variables first (ascending), fresh after,
    // dropping anything unused.
    std::vector<bool> used(static_cast<std::size_t>(next_var) + 1, false);
    for (const Clause& cl : clauses)
        for (const Literal& lit : cl) used[static_cast<std::size_t>(lit.var)] = true;

    std::vector<int> remap(static_cast<std::size_t>(next_var) + 1, 0);
    int out_vars = 0;
    for (int v = 1; v <= next_var; ++v) {
        if (!used[static_cast<std::size_t>(v)]) continue;
        remap[static_cast<std::size_t>(v)] = ++out_vars;
        VarOrigin origin;
        if (v <= input.num_vars) {
            origin.original_var = v;
        } else {
            origin.forced = fresh[static_cast<std::size_t>(v - input.num_vars) - 1].forced;
        }
        prov.vars.push_back(origin);
    }

    Formula out;
    out.num_vars = out_vars;
    out.clauses = std::move(clauses);
    for (Clause& cl : out.clauses)
        for (Literal& lit : cl) lit.var = remap[static_cast<std::size_t>(lit.var)];
    prov.preprocessed = true;
    out.provenance = std::move(prov);
    return out;
}

/// Extend an assignment of the original variables to the preprocessed ones:
/// forced fresh variables take their forced value, free helpers take 0.
inline Assignment extend_assignment(const Formula& preprocessed, const Assignment& original,
                                    const Field& F) {
    const Provenance& prov = preprocessed.provenance;
    if (!prov.preprocessed) throw CnfError("formula is not preprocessed");
    if (static_cast<int>(original.size()) != prov.original_num_vars)
        throw CnfError("assignment length mismatch");
    Assignment out(static_cast<std::size_t>(preprocessed.num_vars), 0);
    for (std::size_t i = 0; i < prov.vars.size(); ++i) {
        const VarOrigin& origin = prov.vars[i];
        if (origin.original_var > 0)
            out[i] = original[static_cast<std::size_t>(origin.original_var) - 1];
        else if (origin.forced.has_value())
            out[i] = F.embed_bool(*origin.forced);
    }
    return out;
}

/// Clause-occurrence sets per variable: clause indices (0-based, ascending)
/// where the variable appears positively / negatively / at all.
struct OccurrenceSets {
    std::vector<std::vector<int>> positive, negative, all;
};

inline OccurrenceSets occurrence_sets(const Formula& f) {
    OccurrenceSets occ;
    occ.positive.resize(static_cast<std::size_t>(f.num_vars));
    occ.negative.resize(static_cast<std::size_t>(f.num_vars));
    occ.all.resize(static_cast<std::size_t>(f.num_vars));
    for (int k = 0; k < f.num_clauses(); ++k) {
        for (const Literal& lit : f.clauses[static_cast<std::size_t>(k)]) {
            const auto i = static_cast<std::size_t>(lit.var) - 1;
            (lit.negated ? occ.negative : occ.positive)[i].push_back(k);
            occ.all[i].push_back(k);
        }
    }
    return occ;
}

} // namespace quiversat
