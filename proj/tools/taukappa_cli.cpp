#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "taukappa/dfiz.hpp"
#include "taukappa/dual_graph.hpp"
#include "taukappa/kappa.hpp"
#include "taukappa/lemma2.hpp"
#include "taukappa/rational.hpp"
#include "taukappa/ribbon.hpp"
#include "taukappa/tau_engine.hpp"
#include "taukappa/verification.hpp"

namespace {

using taukappa::Rational;
using Json = nlohmann::ordered_json;

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    if (text.empty()) return out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(std::stoi(item));
    return out;
}

struct Options {
    bool json = false;
    std::string cache_path;
    std::string table_path;
};

struct Emitter {
    const Options& options;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    void value(const std::string& op, const Json& input, const Rational& value, const Json& meta = {}) {
        if (options.json) {
            Json envelope;
            envelope["op"] = op;
            envelope["input"] = input;
            envelope["value"] = value.str();
            if (!meta.empty()) envelope["meta"] = meta;
            std::cout << envelope.dump() << "\n";
            return;
        }
        std::cout << value.str() << "\n";
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
        std::ostringstream metatext;
        for (const auto& [key, val] : meta.items())
            metatext << key << '=' << (val.is_string() ? val.get<std::string>() : val.dump()) << ' ';
        std::cerr << "# " << metatext.str() << "time=" << ms.count() << "ms\n";
    }
};

const taukappa::DfizTable& table_for(const Options& options) {
    if (!options.table_path.empty()) {
        static taukappa::DfizTable loaded = taukappa::DfizTable::load_file(options.table_path);
        return loaded;
    }
    return taukappa::DfizTable::builtin();
}

void load_cache(const Options& options, taukappa::TauEngine& engine) {
    if (options.cache_path.empty()) return;
    std::ifstream is(options.cache_path);
    if (!is) return;  // absent cache file: cold start
    engine.memo().load(is);
}

void save_cache(const Options& options, const taukappa::TauEngine& engine) {
    if (options.cache_path.empty()) return;
    std::ofstream os(options.cache_path);
    if (!os) throw std::runtime_error("cannot write cache file '" + options.cache_path + "'");
    engine.memo().save(os);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"taukappa: exact psi/kappa intersection numbers, boundary classes, and combinatorial W cycles"};
    app.require_subcommand(1);

    Options options;
    app.add_flag("--json", options.json, "emit a stable JSON envelope instead of plain text");
    app.add_option("--cache", options.cache_path, "memo cache file (load before, save after)")
        ->envname("TAUKAPPA_CACHE");
    app.add_option("--table", options.table_path, "identity table file (default: bundled data/dfiz_table.txt)")
        ->envname("TAUKAPPA_TABLE");

    // tau
    auto* tau_cmd = app.add_subcommand("tau", "psi intersection number <tau_{d_1}...tau_{d_n}>_{g,n}");
    std::optional<int> tau_genus;
    std::string tau_d;
    tau_cmd->add_option("--genus", tau_genus, "genus; inferred from the dimension relation when omitted");
    tau_cmd->add_option("--d", tau_d, "comma-separated insertion indices")->required();

    // kappa
    auto* kappa_cmd = app.add_subcommand("kappa", "mixed integral of psi exponents and a kappa monomial");
    int kappa_genus = 0;
    std::string kappa_psi, kappa_indices;
    kappa_cmd->add_option("--genus", kappa_genus, "ambient genus")->required();
    kappa_cmd->add_option("--psi", kappa_psi, "comma-separated psi exponents, one per marked point")->required();
    kappa_cmd->add_option("--kappa", kappa_indices, "comma-separated kappa indices (empty for a pure psi bracket)");

    // delta
    auto* delta_cmd = app.add_subcommand("delta", "boundary class integral of delta against psi^d");
    int delta_genus = 0, delta_n = 0;
    std::string delta_d;
    delta_cmd->add_option("--genus", delta_genus)->required();
    delta_cmd->add_option("--n", delta_n, "number of marked points")->required();
    delta_cmd->add_option("--d", delta_d, "comma-separated psi exponents (default all zero)");

    // w
    auto* w_cmd = app.add_subcommand("w", "integral over the combinatorial cycle W_{m_*,n}");
    std::string w_profile, w_d;
    int w_n = 0;
    w_cmd->add_option("--profile", w_profile, "index:multiplicity pairs over i >= 2, e.g. \"2:1\" or \"2:1,3:1\"")
        ->required();
    w_cmd->add_option("--n", w_n, "number of marked points")->required();
    w_cmd->add_option("--d", w_d, "comma-separated psi exponents")->required();

    // graph
    auto* graph_cmd = app.add_subcommand("graph", "validate a dual graph and count its automorphisms");
    std::string graph_text;
    int graph_genus = 0, graph_n = 0;
    graph_cmd->add_option("--text", graph_text, "canonical form v:(p,markers);...|e:(i,j);...")->required();
    graph_cmd->add_option("--genus", graph_genus, "ambient genus")->required();
    graph_cmd->add_option("--n", graph_n, "number of marked points")->required();

    // xtable
    auto* xtable_cmd = app.add_subcommand("xtable", "kappa-polynomial parts of the X classes, by codimension");
    std::optional<int> xtable_codim;
    xtable_cmd->add_option("--codim", xtable_codim, "restrict to one codimension");

    // ribbon count
    auto* ribbon_cmd = app.add_subcommand("ribbon", "ribbon graph operations");
    ribbon_cmd->require_subcommand(1);
    auto* count_cmd = ribbon_cmd->add_subcommand("count", "W point count on Mbar_{0,4} at fixed perimeters");
    std::string count_perimeters;
    count_cmd->add_option("--perimeters", count_perimeters, "four rationals with P_{i+1} >= 10 P_i")->required();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suites");
    std::string verify_suite = "all";
    verify_cmd->add_option("--suite", verify_suite, "engine|dfiz|lemma2|m04|all")
        ->check(CLI::IsMember({"engine", "dfiz", "lemma2", "m04", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2
    }

    try {
        taukappa::TauEngine engine;
        load_cache(options, engine);
        Emitter emit{options};

        if (tau_cmd->parsed()) {
            std::vector<int> d = parse_int_list(tau_d);
            if (d.empty()) throw std::invalid_argument("tau: --d needs at least one insertion");
            Rational value = tau_genus ? engine.tau(*tau_genus, d) : engine.tau_auto(d);
            Json input{{"d", d}};
            Json meta;
            if (tau_genus) {
                input["genus"] = *tau_genus;
            } else {
                long t = 0;
                for (int x : d) t += x;
                t += 3 - static_cast<long>(d.size());
                meta["inferred_genus"] = (t >= 0 && t % 3 == 0) ? Json(t / 3) : Json(nullptr);
            }
            emit.value("tau", input, value, meta);
        } else if (kappa_cmd->parsed()) {
            std::vector<int> psi = parse_int_list(kappa_psi);
            std::vector<int> indices = parse_int_list(kappa_indices);
            Rational value =
                mixed_integral(engine, kappa_genus, psi, taukappa::KappaMonomial::of(indices));
            emit.value("kappa", Json{{"genus", kappa_genus}, {"psi", psi}, {"kappa", indices}}, value);
        } else if (delta_cmd->parsed()) {
            std::vector<int> d = parse_int_list(delta_d);
            if (d.empty()) d.assign(delta_n, 0);
            Rational value = taukappa::delta_integral(engine, delta_genus, delta_n, d);
            emit.value("delta", Json{{"genus", delta_genus}, {"n", delta_n}, {"d", d}}, value);
        } else if (w_cmd->parsed()) {
            const auto profile = taukappa::ValenceProfile::parse(w_profile);
            std::vector<int> d = parse_int_list(w_d);
            const auto& table = table_for(options);
            Rational value = taukappa::w_integral(engine, table, profile, w_n, d);
            int genus = taukappa::inferred_genus(profile, w_n, d);
            Json meta{{"genus", genus}, {"m1", taukappa::derived_m1(profile, genus, w_n)}};
            emit.value("w", Json{{"profile", profile.str()}, {"n", w_n}, {"d", d}}, value, meta);
        } else if (graph_cmd->parsed()) {
            const taukappa::DualGraph graph = taukappa::parse_dual_graph(graph_text);
            const bool valid = taukappa::validate(graph, graph_genus, graph_n);
            const long aut = taukappa::automorphism_count(graph);
            Json meta{{"valid", valid}, {"canonical", taukappa::to_string(graph)}};
            emit.value("graph", Json{{"text", graph_text}, {"genus", graph_genus}, {"n", graph_n}},
                       Rational(aut), meta);
        } else if (xtable_cmd->parsed()) {
            const auto& table = table_for(options);
            Json rows = Json::array();
            std::vector<taukappa::ValenceProfile> profiles;
            for (const auto& ident : table.identities())
                profiles.push_back(
                    taukappa::ValenceProfile::of({ident.nu.entries.begin(), ident.nu.entries.end()}));
            std::stable_sort(profiles.begin(), profiles.end(),
                             [](const auto& a, const auto& b) { return a.codim() < b.codim(); });
            for (const auto& profile : profiles) {
                if (xtable_codim && profile.codim() != *xtable_codim) continue;
                const auto poly = taukappa::kappa_part(table, profile);
                if (options.json) {
                    rows.push_back(Json{{"profile", profile.str()},
                                        {"codim", profile.codim()},
                                        {"kappa_part", poly.str()}});
                } else {
                    std::cout << "codim " << profile.codim() << "  m*=" << profile.str() << "  X = " << poly.str()
                              << " + boundary terms\n";
                }
            }
            if (options.json) std::cout << Json{{"op", "xtable"}, {"rows", rows}}.dump() << "\n";
        } else if (count_cmd->parsed()) {
            std::vector<std::string> parts;
            {
                std::istringstream is(count_perimeters);
                std::string item;
                while (std::getline(is, item, ',')) parts.push_back(item);
            }
            if (parts.size() != 4) throw std::invalid_argument("ribbon count: need exactly four perimeters");
            std::array<Rational, 4> perimeters;
            for (int i = 0; i < 4; ++i) perimeters[i] = Rational::from_string(parts[i]);
            long points = taukappa::count_w04(perimeters);
            emit.value("ribbon.count", Json{{"perimeters", count_perimeters}}, Rational(points));
        } else if (verify_cmd->parsed()) {
            taukappa::Suite suite = taukappa::Suite::All;
            if (verify_suite == "engine") suite = taukappa::Suite::Engine;
            else if (verify_suite == "dfiz") suite = taukappa::Suite::Dfiz;
            else if (verify_suite == "lemma2") suite = taukappa::Suite::Lemma2;
            else if (verify_suite == "m04") suite = taukappa::Suite::M04;
            const auto results = taukappa::run_acceptance(suite);
            bool all_pass = true;
            Json checks = Json::array();
            for (const auto& result : results) {
                all_pass = all_pass && result.pass;
                if (options.json) {
                    checks.push_back(Json{{"name", result.name}, {"pass", result.pass}});
                } else {
                    std::cout << (result.pass ? "PASS " : "FAIL ") << result.name;
                    if (!result.pass) std::cout << "  [" << result.detail << "]";
                    std::cout << "\n";
                }
            }
            if (options.json)
                std::cout << Json{{"op", "verify"}, {"suite", verify_suite}, {"checks", checks}, {"pass", all_pass}}
                                 .dump()
                          << "\n";
            if (!all_pass) return 1;
        }

        save_cache(options, engine);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
