// Acceptance suite: one pass/fail line per criterion, exit code equal to the
// number of failed criteria. An optional argv[1] names the CLI binary, used
// for the exit-code checks of the SAT/verify subcommands.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "quiversat/quiversat.hpp"
#include "test_support.hpp"

using namespace quiversat;

namespace {

const FieldPtr F2 = Field::make(2);
const FieldPtr F3 = Field::make(3);

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    [[nodiscard]] double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

/// Fixed evaluation corpus: 50 seeded random 3-CNF formulas, preprocessed,
/// with M <= 8 and L <= 12, plus the worked example.
std::vector<Formula> build_corpus() {
    std::vector<Formula> corpus;
    std::mt19937_64 rng(0xACCE55);
    while (corpus.size() < 50) {
        Formula f = preprocess(oracle::random_clean_formula(rng, 8, 12));
        if (f.num_clauses() < 1 || f.num_vars > 8 || f.num_clauses() > 12) continue;
        corpus.push_back(std::move(f));
    }
    corpus.push_back(preprocess(oracle::running_example()));
    return corpus;
}

/// The five small GF(3) formulas: every clause uses all of X1..X3.
std::vector<Formula> gf3_formulas() {
    return {
        preprocess(parse_dimacs("p cnf 3 1\n1 2 3 0\n")),
        preprocess(parse_dimacs("p cnf 3 1\n-1 2 -3 0\n")),
        preprocess(parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 3 0\n")),
        preprocess(parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n")),
        preprocess(parse_dimacs("p cnf 3 3\n1 2 3 0\n1 -2 3 0\n1 2 -3 0\n")),
    };
}

struct Criterion {
    bool pass = true;
    std::ostringstream detail;
};

// criterion 1: exhaustive GF(2) sweep over the corpus; satisfying => Schur,
// falsifying => verified explicit decomposition with dim End >= 2
Criterion criterion_1(const std::vector<Formula>& corpus) {
    Criterion c;
    Timer timer;
    std::size_t assignments = 0, violations = 0;
    for (const Formula& f : corpus) {
        const VerificationReport rep = verify_formula(f, F2);
        assignments += rep.assignments.size();
        violations += rep.violations();
    }
    const double secs = timer.seconds();
    c.pass = violations == 0 && secs < 120.0;
    c.detail << corpus.size() << " formulas, " << assignments << " assignments, " << violations
             << " violations, " << secs << " s (limit 120)";
    return c;
}

// criterion 2: gram-matrix Tits value equals the closed form for B in
// {1, 8, 27}; the three per-vertex pairing formulas hold at B = 1
Criterion criterion_2(const std::vector<Formula>& corpus) {
    Criterion c;
    std::size_t checked = 0;
    for (const Formula& f : corpus) {
        const OccurrenceSets occ = occurrence_sets(f);
        const int M = f.num_vars, L = f.num_clauses();
        for (const int B : {1, 8, 27}) {
            const Quiver q = build_quiver(occ, M, L, B);
            const RootLattice lat = gram_matrix(q);
            RootVector alpha(static_cast<std::size_t>(q.vertex_count()), 1);
            for (int i = 0; i < M; ++i)
                alpha[static_cast<std::size_t>(M + i)] =
                    B * static_cast<long long>(occ.all[static_cast<std::size_t>(i)].size()) + 1;
            if (lat.pairing(alpha, alpha) != closed_form_tits(f, B)) {
                c.pass = false;
                c.detail << "closed-form mismatch at B=" << B << "; ";
                continue;
            }
            ++checked;
            if (B != 1) continue;
            for (int i = 0; i < M; ++i) {
                const long long n_i =
                    static_cast<long long>(occ.all[static_cast<std::size_t>(i)].size()) + 1;
                if (lat.pairing_simple(alpha, static_cast<std::size_t>(i)) != -n_i) c.pass = false;
                if (lat.pairing_simple(alpha, static_cast<std::size_t>(M + i)) != 1) c.pass = false;
            }
            for (int k = 0; k < L; ++k) {
                long long occ_sum = 0;
                for (int i = 0; i < M; ++i) {
                    const auto& omega = occ.all[static_cast<std::size_t>(i)];
                    if (std::find(omega.begin(), omega.end(), k) != omega.end())
                        occ_sum += static_cast<long long>(omega.size());
                }
                if (lat.pairing_simple(alpha, static_cast<std::size_t>(2 * M + k)) !=
                    -4 - 2 * occ_sum)
                    c.pass = false;
            }
        }
    }
    c.detail << checked << " closed-form comparisons, per-vertex pairings at B=1";
    return c;
}

// criterion 3: GF(3) — boolean satisfying assignments of the five small
// formulas are Schur; every assignment of an unsatisfiable formula carries a
// verified explicit decomposition
Criterion criterion_3() {
    Criterion c;
    Timer timer;
    std::size_t schur_checked = 0;
    for (const Formula& f : gf3_formulas()) {
        const ReductionOutput t = build_template(f, F3);
        for (std::uint64_t bits = 0; bits < (1ull << f.num_vars); ++bits) {
            Assignment x(static_cast<std::size_t>(f.num_vars));
            for (int v = 0; v < f.num_vars; ++v)
                x[static_cast<std::size_t>(v)] = static_cast<Elt>((bits >> v) & 1);
            if (!evaluate(f, x, *F3)) continue;
            ++schur_checked;
            if (endomorphism_dimension(substitute(t, x)) != 1) {
                c.pass = false;
                c.detail << "non-Schur satisfying boolean point; ";
            }
        }
    }

    const Formula unsat = preprocess(oracle::contradiction_m3());
    const ReductionOutput t = build_template(unsat, F3);
    const std::uint64_t total = assignment_count(unsat.num_vars, 3);
    std::size_t decomposed = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const Assignment x = assignment_from_index(idx, unsat.num_vars, 3);
        if (evaluate(unsat, x, *F3)) {
            c.pass = false;
            c.detail << "unsatisfiable formula evaluated true; ";
            continue;
        }
        const auto w = find_falsified_witness(unsat, x, t);
        if (w && verify_decomposition(substitute(t, x), explicit_decomposition(t, x, *w)))
            ++decomposed;
        else {
            c.pass = false;
            c.detail << "decomposition failed at index " << idx << "; ";
        }
    }
    const double secs = timer.seconds();
    if (secs >= 600.0) c.pass = false;
    c.detail << schur_checked << " Schur points, " << decomposed << "/" << total
             << " decompositions, " << secs << " s (limit 600)";
    return c;
}

// criterion 4: the negation-stripped Schur-root certificate holds for every
// corpus formula, for unsatisfiable formulas, and over GF(3)
Criterion criterion_4(const std::vector<Formula>& corpus) {
    Criterion c;
    std::size_t checked = 0;
    for (const Formula& f : corpus) {
        if (!schur_root_certificate(f, F2)) {
            c.pass = false;
            c.detail << "certificate failed on a corpus formula; ";
        }
        ++checked;
    }
    for (const Formula& f : {preprocess(oracle::contradiction_m3())}) {
        if (!schur_root_certificate(f, F2)) {
            c.pass = false;
            c.detail << "certificate failed on an unsatisfiable formula; ";
        }
        ++checked;
    }
    for (const Formula& f : gf3_formulas()) {
        if (!schur_root_certificate(f, F3)) {
            c.pass = false;
            c.detail << "certificate failed over GF(3); ";
        }
        ++checked;
    }
    c.detail << checked << " certificates";
    return c;
}

// criterion 5: connector genericity conditions pass exhaustively for every
// corpus formula over GF(2) and GF(3)
Criterion criterion_5(const std::vector<Formula>& corpus) {
    Criterion c;
    std::size_t checked = 0;
    for (const Formula& f : corpus) {
        for (const FieldPtr& F : {F2, F3}) {
            const ReductionOutput t = build_template(f, F);
            const ConnectorCheckReport rep = check_connector_conditions(t);
            if (!rep.subset_bases_ok || !rep.marker_basis_ok || !rep.swap_basis_ok) {
                c.pass = false;
                c.detail << "condition failed over GF(" << F->name() << "); ";
            }
            ++checked;
        }
    }
    c.detail << checked << " formula/field pairs";
    return c;
}

// criterion 6: the dimension vector classifies as an imaginary root with
// non-positive Tits value for every corpus formula
Criterion criterion_6(const std::vector<Formula>& corpus) {
    Criterion c;
    for (const Formula& f : corpus) {
        const ReductionOutput t = build_template(f, F2);
        const RootLattice lat = gram_matrix(*t.quiver);
        const RootVector alpha = t.dimension_vector();
        if (classify_root(lat, alpha) != RootClass::imaginary) {
            c.pass = false;
            c.detail << "non-imaginary classification; ";
        }
        if (lat.pairing(alpha, alpha) > 0) {
            c.pass = false;
            c.detail << "positive Tits value; ";
        }
    }
    c.detail << corpus.size() << " classifications";
    return c;
}

// criterion 7: preprocessing preserves satisfiability on 200 random raw
// formulas with tautologies, duplicate literals and short clauses
Criterion criterion_7() {
    Criterion c;
    std::mt19937_64 rng(0x5A7);
    std::size_t checked = 0;
    while (checked < 200) {
        const Formula f = oracle::random_raw_formula(rng, 4, 4);
        const Formula g = preprocess(f);
        if (g.num_vars > 18) continue; // keep the truth-table oracle cheap
        ++checked;
        if (oracle::brute_force_sat(f) != oracle::brute_force_sat(g)) {
            c.pass = false;
            c.detail << "equisatisfiability broken; ";
        }
    }
    c.detail << checked << " formulas";
    return c;
}

// criterion 8: GF(2) bit-packed elimination matches the generic path
// entry-for-entry on 1000 random instances up to 64x64
Criterion criterion_8() {
    Criterion c;
    std::mt19937_64 rng(0xB17);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t rows = 1 + rng() % 64, cols = 1 + rng() % 64;
        const Matrix m = oracle::random_matrix(rng, F2, rows, cols);
        const auto a = rref_rank_kernel(m, Backend::generic);
        const auto b = rref_rank_kernel(m, Backend::bitpacked);
        if (!(a.rref == b.rref) || a.rank != b.rank || a.kernel.vectors != b.kernel.vectors) {
            c.pass = false;
            c.detail << "rref/kernel mismatch at instance " << i << "; ";
            break;
        }
        Vec rhs(rows);
        for (auto& v : rhs) v = static_cast<Elt>(rng() % 2);
        const auto sa = solve(m, rhs, Backend::generic);
        const auto sb = solve(m, rhs, Backend::bitpacked);
        const bool same = sa.has_value() == sb.has_value() &&
                          (!sa || (sa->particular == sb->particular &&
                                   sa->kernel.vectors == sb->kernel.vectors));
        if (!same) {
            c.pass = false;
            c.detail << "solve mismatch at instance " << i << "; ";
            break;
        }
    }
    c.detail << "1000 rref/kernel/solve instances";
    return c;
}

int run_cli(const std::string& cli, const std::string& args) {
    const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    const int ret = std::system(cmd.c_str());
    if (ret == -1 || !WIFEXITED(ret)) return -1;
    return WEXITSTATUS(ret);
}

// criterion 9: decide_sat agrees with truth-table SAT (GF(2) corpus with
// M <= 5 and GF(3) small formulas), with the documented CLI exit codes
Criterion criterion_9(const std::vector<Formula>& corpus, const std::string& cli) {
    Criterion c;
    std::size_t checked = 0;
    for (const Formula& f : corpus) {
        if (f.num_vars > 5) continue;
        ++checked;
        if (decide_sat(f, F2).satisfiable != oracle::brute_force_sat(f)) {
            c.pass = false;
            c.detail << "GF(2) disagreement; ";
        }
    }
    for (const Formula& f : gf3_formulas()) {
        ++checked;
        if (decide_sat(f, F3).satisfiable != oracle::brute_force_sat(f)) {
            c.pass = false;
            c.detail << "GF(3) disagreement; ";
        }
    }
    {
        const Formula unsat = preprocess(oracle::contradiction_m3());
        ++checked;
        if (decide_sat(unsat, F3).satisfiable) {
            c.pass = false;
            c.detail << "GF(3) unsat disagreement; ";
        }
    }
    c.detail << checked << " formulas";

    if (!cli.empty()) {
        const auto write = [](const char* path, const std::string& text) {
            std::ofstream out(path);
            out << text;
        };
        write("/tmp/quiversat_sat.cnf", "p cnf 3 1\n1 2 3 0\n");
        write("/tmp/quiversat_unsat.cnf", emit_dimacs(oracle::contradiction_m3()));
        const int sat_code = run_cli(cli, "sat /tmp/quiversat_sat.cnf");
        const int unsat_code = run_cli(cli, "sat /tmp/quiversat_unsat.cnf");
        const int verify_code = run_cli(cli, "verify /tmp/quiversat_sat.cnf");
        if (sat_code != 0 || unsat_code != 1 || verify_code != 0) {
            c.pass = false;
            c.detail << "; CLI exit codes sat=" << sat_code << " unsat=" << unsat_code
                     << " verify=" << verify_code << " (want 0/1/0)";
        } else {
            c.detail << ", CLI exit codes 0/1/0 as documented";
        }
    } else {
        c.detail << ", CLI exit codes not checked (no binary path given)";
    }
    return c;
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::vector<Formula> corpus = build_corpus();

    int failures = 0;
    const auto report = [&](int index, const Criterion& c) {
        std::cout << "criterion " << index << ": " << (c.pass ? "PASS" : "FAIL") << " — "
                  << c.detail.str() << '\n';
        std::cout.flush();
        if (!c.pass) ++failures;
    };

    report(1, criterion_1(corpus));
    report(2, criterion_2(corpus));
    report(3, criterion_3());
    report(4, criterion_4(corpus));
    report(5, criterion_5(corpus));
    report(6, criterion_6(corpus));
    report(7, criterion_7());
    report(8, criterion_8());
    report(9, criterion_9(corpus, cli));

    std::cout << "summary: " << (9 - failures) << "/9 criteria passed\n";
    return failures;
}
