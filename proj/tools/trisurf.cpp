#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "trisurf/census.hpp"
#include "trisurf/derivation_tables.hpp"

using json = nlohmann::ordered_json;
using namespace trisurf;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw invalid_input("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<CensusEntry> load(const std::string& path) {
    auto entries = parse_census(slurp(path));
    if (entries.empty()) throw invalid_input(path + ": no entries");
    return entries;
}

std::string rational_str(Rational r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << "/" << r.denominator();
    return os.str();
}

int cmd_validate(const std::string& path) {
    int rc = 0;
    auto entries = load(path);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto r = triangulation_from_faces(entries[i].faces);
        if (!std::holds_alternative<Triangulation>(r)) {
            auto& err = std::get<ValidationError>(r);
            std::cout << "entry " << i << ": invalid: " << to_string(err.violation)
                      << " (" << err.detail << ")\n";
            rc = 1;
            continue;
        }
        const auto& t = std::get<Triangulation>(r);
        bool match = t.orientable() == entries[i].orientable &&
                     t.euler_genus() == entries[i].genus;
        std::cout << "entry " << i << ": "
                  << (match ? "ok" : "surface mismatch") << " ("
                  << (t.orientable() ? "o" : "n") << " eg " << t.euler_genus()
                  << ", V=" << t.graph().vertex_count() << ")\n";
        if (!match) rc = 1;
    }
    return rc;
}

int cmd_genus(const std::string& path) {
    for (auto& e : load(path)) {
        auto r = triangulation_from_faces(e.faces);
        if (!std::holds_alternative<Triangulation>(r))
            throw invalid_input(path + ": entry is not a triangulation");
        const auto& t = std::get<Triangulation>(r);
        std::cout << (t.orientable() ? "orientable" : "nonorientable")
                  << " eg " << t.euler_genus() << " V="
                  << t.graph().vertex_count() << " E=" << t.graph().edge_count()
                  << " F=" << t.face_triples().size() << "\n";
    }
    return 0;
}

int cmd_irreducible(const std::string& path) {
    int rc = 0;
    auto entries = load(path);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto r = triangulation_from_faces(entries[i].faces);
        if (!std::holds_alternative<Triangulation>(r))
            throw invalid_input(path + ": entry is not a triangulation");
        auto res = is_irreducible(std::get<Triangulation>(r));
        if (res.irreducible) {
            std::cout << "entry " << i << ": irreducible\n";
        } else {
            std::cout << "entry " << i << ": reducible, edge "
                      << res.contractible_edge->first << "-"
                      << res.contractible_edge->second << " is contractible\n";
            rc = 1;
        }
    }
    return rc;
}

int cmd_contract(const std::string& path, Vertex u, Vertex v) {
    auto entries = load(path);
    if (entries.size() != 1)
        throw invalid_input("contract: expected a single-entry file");
    auto r = triangulation_from_faces(entries[0].faces);
    if (!std::holds_alternative<Triangulation>(r))
        throw invalid_input(path + ": entry is not a triangulation");
    auto out = contract_edge(std::get<Triangulation>(r), u, v);
    if (!out.valid) {
        const char* why = "";
        switch (*out.failure_reason) {
            case ContractionFailure::CommonNeighborCount:
                why = "endpoints have more than two common neighbours";
                break;
            case ContractionFailure::PostValidation:
                why = "result is not a triangulation";
                break;
            case ContractionFailure::GenusChange:
                why = "result lies on a different surface";
                break;
        }
        std::cout << "contraction of " << u << "-" << v << " invalid: " << why
                  << "\n";
        return 1;
    }
    const auto& t = *out.result;
    std::cout << write_census(
        {{t.orientable(), t.euler_genus(), t.face_triples()}});
    return 0;
}

json entries_json(const CertificateResult& res) {
    json out;
    out["ok"] = res.ok;
    out["degenerate"] = res.degenerate;
    out["inequalities"] = json::array();
    for (auto& e : res.entries)
        out["inequalities"].push_back(
            {{"id", e.id}, {"holds", e.holds}, {"gap", rational_str(e.gap)}});
    out["bounds"] = json::array();
    for (auto& b : res.bounds)
        out["bounds"].push_back({{"description", b.description},
                                 {"lhs", b.lhs},
                                 {"rhs", b.rhs},
                                 {"holds", b.holds}});
    return out;
}

int cmd_certificate(const std::string& path, bool simple, bool as_json) {
    int rc = 0;
    json report;
    report["mode"] = simple ? "simple" : "full";
    report["entries"] = json::array();
    auto entries = load(path);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto r = triangulation_from_faces(entries[i].faces);
        if (!std::holds_alternative<Triangulation>(r))
            throw invalid_input(path + ": entry is not a triangulation");
        const auto& t = std::get<Triangulation>(r);
        auto good = simple ? build_simple_S(t) : build_good_S(t);
        auto rep = full_partition(t, good);
        auto res = simple ? verify_simple_certificate(rep)
                          : verify_full_certificate(rep);
        long tree_bound = validate_tree_representation(good.tree);
        bool tree_ok = static_cast<long>(good.S.size()) <= tree_bound &&
                       tree_bound <= rep.g;
        if (!res.ok || !tree_ok) rc = 1;
        if (as_json) {
            json je = entries_json(res);
            je["index"] = i;
            je["vertices"] = rep.V;
            je["genus"] = rep.g;
            je["S"] = json::array();
            for (Vertex v : rep.S) je["S"].push_back(v);
            je["tree_genus_bound"] = tree_bound;
            je["tree_bound_ok"] = tree_ok;
            report["entries"].push_back(std::move(je));
        } else {
            std::cout << "entry " << i << ": V=" << rep.V << " g=" << rep.g
                      << " |S|=" << rep.S.size()
                      << " tree bound " << good.S.size() << " <= " << tree_bound
                      << " <= " << rep.g << (tree_ok ? "" : " FAILED") << "\n";
            for (auto& e : res.entries)
                if (!e.holds)
                    std::cout << "  inequality " << e.id << " FAILED, gap "
                              << rational_str(e.gap) << "\n";
            for (auto& b : res.bounds)
                std::cout << "  " << b.description << ": " << b.lhs
                          << " <= " << b.rhs
                          << (b.holds ? "" : " FAILED") << "\n";
            std::cout << "  " << (res.ok && tree_ok ? "certificate holds"
                                                    : "certificate FAILED")
                      << "\n";
        }
    }
    if (as_json) {
        report["ok"] = rc == 0;
        std::cout << report.dump(2) << "\n";
    }
    return rc;
}

int cmd_farkas(bool simple, const std::string& table_path) {
    std::string text = table_path.empty()
                           ? std::string(simple ? tables::derivation_simple
                                                : tables::derivation_full)
                           : slurp(table_path);
    auto steps = parse_derivation_table(text);
    auto result = verify_derivation(steps, builtin_hypotheses());
    for (auto& name : result.verified_steps)
        std::cout << "step " << name << ": ok\n";
    if (!result.ok) {
        std::cout << "step " << result.failed_step
                  << ": FAILED, residual " << result.residual.str() << "\n";
        return 1;
    }
    Rational cv = Rational(0) - result.final_form.coeff("V");
    LinForm lhs = LinForm::var("V", cv);
    std::cout << "final: " << lhs.str() << " <= "
              << (result.final_form + lhs).str() << "\n";
    std::cout << "rounded: V <= " << rational_str(result.genus_coeff)
              << "*g " << (result.rounded_constant < 0 ? "- " : "+ ")
              << (result.rounded_constant < 0 ? -result.rounded_constant
                                              : result.rounded_constant)
              << "\n";
    return 0;
}

std::pair<bool, int> parse_surface(const std::string& spec) {
    if (spec == "sphere") return {true, 0};
    if (spec == "projective-plane" || spec == "N1") return {false, 1};
    if (spec == "torus") return {true, 2};
    if (spec.size() >= 2 && (spec[0] == 'o' || spec[0] == 'n')) {
        try {
            return {spec[0] == 'o', std::stoi(spec.substr(1))};
        } catch (const std::exception&) {
        }
    }
    throw invalid_input("unknown surface '" + spec +
                        "' (use sphere, projective-plane, torus, o<g> or n<g>)");
}

int cmd_enumerate(const std::string& surface, int max_n, bool irreducible_only) {
    auto [orientable, genus] = parse_surface(surface);
    auto entries =
        enumerate_triangulations(orientable, genus, max_n, irreducible_only);
    std::cout << "# surface " << surface << " max-n " << max_n
              << (irreducible_only ? " irreducible-only" : "") << ": "
              << entries.size() << " entries\n";
    std::cout << write_census(entries);
    return 0;
}

int cmd_census(const std::string& path, bool check_bound) {
    auto rep = check_census(load(path), check_bound);
    std::cout << "entries: " << rep.entries << "\n";
    std::cout << "max vertices: " << rep.max_vertices << "\n";
    for (auto& p : rep.problems) std::cout << p << "\n";
    std::cout << (rep.ok ? "census ok" : "census FAILED") << "\n";
    return rep.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"triangulation census and certificate tool"};
    app.require_subcommand(1);

    std::string path, table_path, surface;
    Vertex u = 0, v = 0;
    int max_n = 4;
    bool simple = false, full = false, as_json = false, irreducible_only = false,
         check_bound = false;

    auto* c_validate = app.add_subcommand("validate", "validate a census file");
    c_validate->add_option("file", path)->required();
    auto* c_genus = app.add_subcommand("genus", "surface of each entry");
    c_genus->add_option("file", path)->required();
    auto* c_irr = app.add_subcommand("irreducible", "irreducibility of entries");
    c_irr->add_option("file", path)->required();
    auto* c_contract = app.add_subcommand("contract", "contract an edge");
    c_contract->add_option("file", path)->required();
    c_contract->add_option("u", u)->required();
    c_contract->add_option("v", v)->required();
    auto* c_cert = app.add_subcommand("certificate", "verify bound certificates");
    c_cert->add_option("file", path)->required();
    c_cert->add_flag("--simple", simple);
    c_cert->add_flag("--full", full);
    c_cert->add_flag("--json", as_json);
    auto* c_farkas = app.add_subcommand("farkas", "replay a derivation table");
    c_farkas->add_flag("--simple", simple);
    c_farkas->add_flag("--full", full);
    c_farkas->add_option("--table", table_path);
    auto* c_enum = app.add_subcommand("enumerate", "enumerate triangulations");
    c_enum->add_option("--surface", surface)->required();
    c_enum->add_option("--max-n", max_n)->required();
    c_enum->add_flag("--irreducible-only", irreducible_only);
    auto* c_census = app.add_subcommand("census", "check a census file");
    c_census->add_option("file", path)->required();
    c_census->add_flag("--check-bound", check_bound);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (simple && full) {
        std::cerr << "--simple and --full are mutually exclusive\n";
        return 2;
    }

    try {
        if (c_validate->parsed()) return cmd_validate(path);
        if (c_genus->parsed()) return cmd_genus(path);
        if (c_irr->parsed()) return cmd_irreducible(path);
        if (c_contract->parsed()) return cmd_contract(path, u, v);
        if (c_cert->parsed()) return cmd_certificate(path, simple, as_json);
        if (c_farkas->parsed()) return cmd_farkas(simple, table_path);
        if (c_enum->parsed()) return cmd_enumerate(surface, max_n, irreducible_only);
        if (c_census->parsed()) return cmd_census(path, check_bound);
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
