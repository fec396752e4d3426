#pragma once

// End-to-end verification: sweep assignments over the field, certify every
// satisfying boolean assignment with the Schur property (dim End = 1) and
// every falsifying one with an explicit verified decomposition; decide SAT
// through the indecomposability certificates; certify the Schur-root
// property of the dimension vector through the negation-stripped formula.

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnf.hpp"
#include "reduction.hpp"
#include "roots.hpp"

namespace quiversat {

class HarnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// FNV-1a over the canonical DIMACS emission, as a hex string.
inline std::string fingerprint(const Formula& f) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : emit_dimacs(f)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return buf;
}

/// Assignment number `index` in scan order: all-zeros first, variable 1
/// varying fastest.
inline Assignment assignment_from_index(std::uint64_t index, int num_vars, std::uint32_t q) {
    Assignment x(static_cast<std::size_t>(num_vars));
    for (int i = 0; i < num_vars; ++i) {
        x[static_cast<std::size_t>(i)] = static_cast<Elt>(index % q);
        index /= q;
    }
    return x;
}

/// q^M, saturating at 2^63.
inline std::uint64_t assignment_count(int num_vars, std::uint32_t q) {
    std::uint64_t count = 1;
    const std::uint64_t cap = 1ull << 63;
    for (int i = 0; i < num_vars; ++i) {
        if (count > cap / q) return cap;
        count *= q;
    }
    return count;
}

inline bool boolean_valued(const Assignment& x) {
    for (Elt v : x)
        if (v > 1) return false;
    return true;
}

enum class CertificateKind { schur, explicit_decomposition, search_decomposition, violation };

inline const char* to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::schur: return "schur";
        case CertificateKind::explicit_decomposition: return "explicit-decomposition";
        case CertificateKind::search_decomposition: return "search-decomposition";
        case CertificateKind::violation: return "violation";
    }
    return "violation";
}

struct AssignmentRecord {
    Assignment assignment;
    bool evaluates = false;
    bool boolean = true;
    std::optional<std::size_t> end_dim;
    CertificateKind certificate = CertificateKind::violation;
    bool observational = false; ///< satisfying non-boolean point: no claim made
    std::optional<FalsifiedWitness> witness;
    std::vector<int> first_dims, second_dims; // witness dims per vertex
    std::string note;
};

struct VerificationReport {
    std::string formula_fingerprint;
    std::string field;
    std::string mode;
    Formula formula; // preprocessed
    QuiverPtr quiver;
    std::vector<AssignmentRecord> assignments;
    long long tits_gram = 0, tits_closed_form = 0;
    RootClass root_class = RootClass::undetermined;
    bool pass = false;
    double elapsed_ms = 0.0;

    [[nodiscard]] std::size_t violations() const {
        std::size_t n = 0;
        for (const auto& rec : assignments)
            if (rec.certificate == CertificateKind::violation) ++n;
        return n;
    }
};

struct VerifyOptions {
    enum class Mode { exhaustive, sample };
    Mode mode = Mode::exhaustive;
    std::uint64_t sample_count = 64;
    std::uint64_t seed = 1;
    std::uint64_t assignment_budget = 1ull << 16;
    std::uint64_t search_budget = 1ull << 20;
    /// Check dim End >= 2 on falsifying assignments (on top of the verified
    /// explicit decomposition, which already implies it).
    bool end_check_for_falsifying = true;
};

namespace detail {

inline AssignmentRecord verify_one(const Formula& f, const ReductionOutput& t,
                                   const Assignment& x, const VerifyOptions& opt) {
    const Field& F = *t.field;
    AssignmentRecord rec;
    rec.assignment = x;
    rec.evaluates = evaluate(f, x, F);
    rec.boolean = boolean_valued(x);

    const auto record_witness = [&](const SubrepWitness& w) {
        for (const auto& b : w.first) rec.first_dims.push_back(static_cast<int>(b.dim()));
        for (const auto& b : w.second) rec.second_dims.push_back(static_cast<int>(b.dim()));
    };

    if (rec.evaluates && rec.boolean) {
        const Representation r = substitute(t, x);
        rec.end_dim = endomorphism_dimension(r);
        if (*rec.end_dim == 1) {
            rec.certificate = CertificateKind::schur;
        } else {
            rec.certificate = CertificateKind::violation;
            rec.note = "satisfying boolean assignment is not Schur";
        }
        return rec;
    }

    if (!rec.evaluates) {
        const auto w = find_falsified_witness(f, x, t);
        if (!w) {
            rec.certificate = CertificateKind::violation;
            rec.note = "no falsified clause found";
            return rec;
        }
        rec.witness = w;
        const Representation r = substitute(t, x);
        const SubrepWitness deco = explicit_decomposition(t, x, *w);
        if (!verify_decomposition(r, deco)) {
            rec.certificate = CertificateKind::violation;
            rec.note = "explicit decomposition failed verification";
            return rec;
        }
        record_witness(deco);
        if (opt.end_check_for_falsifying) {
            rec.end_dim = endomorphism_dimension(r);
            if (*rec.end_dim < 2) {
                rec.certificate = CertificateKind::violation;
                rec.note = "falsifying assignment with dim End < 2";
                return rec;
            }
        }
        rec.certificate = CertificateKind::explicit_decomposition;
        return rec;
    }

    // Satisfying non-boolean point: record what the machinery sees, make no
    // claim either way.
    const Representation r = substitute(t, x);
    rec.end_dim = endomorphism_dimension(r);
    rec.observational = true;
    rec.certificate = CertificateKind::search_decomposition;
    if (*rec.end_dim == 1) {
        rec.note = "schur";
    } else {
        const SearchOutcome s = search_decomposition(r, opt.search_budget, opt.seed);
        switch (s.status) {
            case SearchOutcome::Status::found:
                rec.note = "decomposition-found";
                record_witness(*s.witness);
                break;
            case SearchOutcome::Status::exhausted: rec.note = "indecomposable-over-F"; break;
            case SearchOutcome::Status::inconclusive: rec.note = "inconclusive"; break;
        }
    }
    return rec;
}

} // namespace detail

inline VerificationReport verify_formula(const Formula& f, FieldPtr field,
                                         const VerifyOptions& opt = {}) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.formula = f;
    rep.formula_fingerprint = fingerprint(f);
    rep.field = field->name();
    rep.mode = opt.mode == VerifyOptions::Mode::exhaustive ? "exhaustive" : "sample";

    if (f.num_clauses() == 0) {
        // Nothing to verify: the construction needs at least one clause.
        rep.pass = true;
        rep.root_class = RootClass::undetermined;
        rep.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        return rep;
    }

    const ReductionOutput t = build_template(f, field);
    rep.quiver = t.quiver;

    const RootLattice lat = gram_matrix(*t.quiver);
    const RootVector alpha = t.dimension_vector();
    rep.tits_gram = lat.pairing(alpha, alpha);
    rep.tits_closed_form = closed_form_tits(f, t.blocks);
    rep.root_class = classify_root(lat, alpha);

    const std::uint64_t total = assignment_count(f.num_vars, field->order());
    if (opt.mode == VerifyOptions::Mode::exhaustive) {
        if (total > opt.assignment_budget)
            throw HarnessError("assignment budget exceeded in exhaustive mode");
        for (std::uint64_t idx = 0; idx < total; ++idx)
            rep.assignments.push_back(detail::verify_one(
                f, t, assignment_from_index(idx, f.num_vars, field->order()), opt));
    } else {
        std::mt19937_64 rng(opt.seed);
        for (std::uint64_t n = 0; n < opt.sample_count; ++n) {
            Assignment x(static_cast<std::size_t>(f.num_vars));
            for (auto& v : x) v = static_cast<Elt>(rng() % field->order());
            rep.assignments.push_back(detail::verify_one(f, t, x, opt));
        }
    }

    rep.pass = rep.violations() == 0;
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return rep;
}

struct SatVerdict {
    bool satisfiable = false;
    std::optional<Assignment> witness;
    std::string method = "exhaustive";
};

/// Decides SAT through the reduction: scans assignments in order and returns
/// the first one whose representation is Schur; reports unsatisfiable only
/// when every assignment carries a verified decomposition.
inline SatVerdict decide_sat(const Formula& f, FieldPtr field,
                             std::uint64_t assignment_budget = 1ull << 16,
                             std::uint64_t search_budget = 1ull << 20) {
    SatVerdict verdict;
    if (f.num_clauses() == 0) {
        // All clauses were tautologies: satisfiable, no quiver needed.
        verdict.satisfiable = true;
        verdict.witness = Assignment(static_cast<std::size_t>(f.num_vars), 0);
        return verdict;
    }
    const std::uint64_t total = assignment_count(f.num_vars, field->order());
    if (total > assignment_budget) throw HarnessError("assignment budget exceeded");

    const ReductionOutput t = build_template(f, field);
    bool all_decomposable = true;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const Assignment x = assignment_from_index(idx, f.num_vars, field->order());
        if (!evaluate(f, x, *field)) {
            const auto w = find_falsified_witness(f, x, t);
            const Representation r = substitute(t, x);
            if (!w || !verify_decomposition(r, explicit_decomposition(t, x, *w)))
                throw HarnessError("falsifying assignment without a verified decomposition");
            continue;
        }
        const Representation r = substitute(t, x);
        if (endomorphism_dimension(r) == 1) {
            verdict.satisfiable = true;
            verdict.witness = x;
            return verdict;
        }
        if (boolean_valued(x))
            throw HarnessError("satisfying boolean assignment is not Schur");
        const SearchOutcome s = search_decomposition(r, search_budget);
        if (s.status != SearchOutcome::Status::found) all_decomposable = false;
    }
    if (!all_decomposable)
        throw HarnessError("inconclusive certificate: neither Schur nor decomposable");
    verdict.satisfiable = false;
    return verdict;
}

/// Strips all negations, substitutes the all-ones assignment, and checks that
/// the result is Schur with the same dimension vector as the original
/// template. True certifies the dimension vector as a Schur root no matter
/// whether the formula is satisfiable.
inline bool schur_root_certificate(const Formula& f, FieldPtr field) {
    if (f.num_clauses() == 0) return true; // nothing to certify
    Formula positive = f;
    for (Clause& cl : positive.clauses)
        for (Literal& lit : cl) lit.negated = false;

    const ReductionOutput t = build_template(f, field);
    const ReductionOutput tp = build_template(positive, field);
    if (t.dimension_vector() != tp.dimension_vector()) return false;

    const Assignment ones(static_cast<std::size_t>(f.num_vars), 1);
    return is_schur(substitute(tp, ones));
}

} // namespace quiversat
