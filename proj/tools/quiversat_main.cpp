// Command-line front end: reduce a DIMACS 3-CNF to a quiver-representation
// template, check single assignments, run the full per-assignment
// verification sweep, decide SAT through the indecomposability certificates,
// and report the root-lattice data of the dimension vector.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "quiversat/quiversat.hpp"

namespace {

using namespace quiversat;

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Formula load_preprocessed(const std::string& path) {
    return preprocess(parse_dimacs(read_file(path)));
}

Assignment parse_assignment(const std::string& text, const Field& F) {
    Assignment x;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) throw std::runtime_error("empty assignment entry");
        const long v = std::stol(tok);
        if (v < 0 || v >= static_cast<long>(F.order()))
            throw std::runtime_error("assignment value outside field");
        x.push_back(static_cast<Elt>(v));
    }
    return x;
}

int cmd_reduce(const std::string& path, const std::string& field_spec, const std::string& out) {
    const Formula f = load_preprocessed(path);
    const FieldPtr F = Field::parse(field_spec);
    if (f.num_clauses() == 0) throw std::runtime_error("formula is empty after preprocessing");
    const ReductionOutput t = build_template(f, F);
    if (out == "dot")
        std::cout << to_dot(*t.quiver);
    else
        std::cout << to_json(t).dump(2) << '\n';
    return 0;
}

int cmd_check(const std::string& path, const std::string& field_spec, const std::string& assign) {
    const Formula f = load_preprocessed(path);
    const FieldPtr F = Field::parse(field_spec);
    Assignment x = parse_assignment(assign, *F);
    if (static_cast<int>(x.size()) == f.provenance.original_num_vars &&
        f.provenance.original_num_vars != f.num_vars)
        x = extend_assignment(f, x, *F);
    if (static_cast<int>(x.size()) != f.num_vars)
        throw std::runtime_error("assignment length matches neither the original nor the "
                                 "preprocessed variable count");

    json j{{"schema_version", 1}, {"field", F->name()}};
    json xa = json::array();
    for (Elt v : x) xa.push_back(static_cast<int>(v));
    j["assignment"] = xa;

    if (f.num_clauses() == 0) {
        j["evaluates"] = true;
        j["certificate"] = "schur";
        j["note"] = "empty formula, no quiver built";
        std::cout << j.dump(2) << '\n';
        return 0;
    }

    const ReductionOutput t = build_template(f, F);
    const Representation r = substitute(t, x);
    const bool sat = evaluate(f, x, *F);
    const std::size_t end_dim = endomorphism_dimension(r);
    j["evaluates"] = sat;
    j["end_dim"] = end_dim;
    if (sat) {
        j["certificate"] = end_dim == 1 ? "schur" : "search-decomposition";
        if (end_dim != 1) {
            const SearchOutcome s = search_decomposition(r, 1ull << 20);
            j["search"] = s.status == SearchOutcome::Status::found ? "decomposition-found"
                          : s.status == SearchOutcome::Status::exhausted
                              ? "indecomposable-over-F"
                              : "inconclusive";
        }
    } else {
        const auto w = find_falsified_witness(f, x, t);
        const SubrepWitness deco = explicit_decomposition(t, x, *w);
        j["certificate"] = "explicit-decomposition";
        j["witness"] = {{"clause", w->clause + 1}, {"block", w->block + 1}};
        j["verified"] = verify_decomposition(r, deco);
        json d1 = json::array(), d2 = json::array();
        for (const auto& b : deco.first) d1.push_back(b.dim());
        for (const auto& b : deco.second) d2.push_back(b.dim());
        j["witness_dims"] = {{"first", d1}, {"second", d2}};
    }
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_verify(const std::string& path, const std::string& field_spec, const std::string& mode,
               std::uint64_t seed, std::uint64_t budget, std::uint64_t samples) {
    const Formula f = load_preprocessed(path);
    const FieldPtr F = Field::parse(field_spec);
    VerifyOptions opt;
    opt.mode = mode == "sample" ? VerifyOptions::Mode::sample : VerifyOptions::Mode::exhaustive;
    opt.seed = seed;
    opt.assignment_budget = budget;
    opt.sample_count = samples;
    const VerificationReport rep = verify_formula(f, F, opt);
    std::cout << to_json(rep).dump(2) << '\n';
    return rep.pass ? 0 : 2;
}

int cmd_sat(const std::string& path, const std::string& field_spec, std::uint64_t budget) {
    const Formula f = load_preprocessed(path);
    const FieldPtr F = Field::parse(field_spec);
    const SatVerdict v = decide_sat(f, F, budget);
    std::cout << to_json(v).dump(2) << '\n';
    return v.satisfiable ? 0 : 1;
}

int cmd_root(const std::string& path, const std::string& field_spec) {
    const Formula f = load_preprocessed(path);
    const FieldPtr F = Field::parse(field_spec);
    json j{{"schema_version", 1}, {"field", F->name()}};
    if (f.num_clauses() == 0) {
        j["note"] = "empty formula, no quiver built";
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    const ReductionOutput t = build_template(f, F);
    const RootLattice lat = gram_matrix(*t.quiver);
    const RootVector alpha = t.dimension_vector();
    j["dim_vector"] = alpha;
    j["tits"] = {{"gram_value", lat.pairing(alpha, alpha)},
                 {"closed_form", closed_form_tits(f, t.blocks)}};
    j["root_class"] = to_string(classify_root(lat, alpha));
    std::cout << j.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"3-SAT to quiver-representation reduction toolkit"};
    app.require_subcommand(1);

    std::string input, field_spec = "2", out = "json", assign, mode = "exhaustive";
    std::uint64_t seed = 1, budget = 1ull << 16, samples = 64;

    auto* reduce = app.add_subcommand("reduce", "emit the quiver and representation template");
    reduce->add_option("dimacs", input, "DIMACS CNF file, or - for stdin")->required();
    reduce->add_option("--field", field_spec, "field spec: p or p^d (default 2)");
    reduce->add_option("--out", out, "output format: json or dot")
        ->check(CLI::IsMember({"json", "dot"}));

    auto* check = app.add_subcommand("check", "evaluate and certify one assignment");
    check->add_option("dimacs", input, "DIMACS CNF file, or - for stdin")->required();
    check->add_option("--assign", assign, "comma-separated field values")->required();
    check->add_option("--field", field_spec, "field spec: p or p^d (default 2)");

    auto* verify = app.add_subcommand("verify", "per-assignment verification sweep");
    verify->add_option("dimacs", input, "DIMACS CNF file, or - for stdin")->required();
    verify->add_option("--field", field_spec, "field spec: p or p^d (default 2)");
    verify->add_option("--mode", mode, "exhaustive or sample")
        ->check(CLI::IsMember({"exhaustive", "sample"}));
    verify->add_option("--seed", seed, "sampling seed");
    verify->add_option("--budget", budget, "assignment budget for exhaustive mode");
    verify->add_option("--samples", samples, "sample count in sample mode");

    auto* sat = app.add_subcommand("sat", "SAT verdict via indecomposability certificates");
    sat->add_option("dimacs", input, "DIMACS CNF file, or - for stdin")->required();
    sat->add_option("--field", field_spec, "field spec: p or p^d (default 2)");
    sat->add_option("--budget", budget, "assignment budget");

    auto* root = app.add_subcommand("root", "dimension vector and root-lattice data");
    root->add_option("dimacs", input, "DIMACS CNF file, or - for stdin")->required();
    root->add_option("--field", field_spec, "field spec: p or p^d (default 2)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (reduce->parsed()) return cmd_reduce(input, field_spec, out);
        if (check->parsed()) return cmd_check(input, field_spec, assign);
        if (verify->parsed()) return cmd_verify(input, field_spec, mode, seed, budget, samples);
        if (sat->parsed()) return cmd_sat(input, field_spec, budget);
        if (root->parsed()) return cmd_root(input, field_spec);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
