// Command-line surface over the digraph packing library: classification,
// out-forest solvers, Steiner cycle packing, gadget generation, oracles and
// the cross-check suites.
//
// Exit codes: 0 yes/found/all-agree, 1 no/none, 2 usage or input error,
// 3 budget exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "steinerforge/digraph.hpp"
#include "steinerforge/out_forest.hpp"
#include "steinerforge/reductions.hpp"
#include "steinerforge/steiner_cycles.hpp"
#include "steinerforge/symmetric_packing.hpp"
#include "steinerforge/verify.hpp"

namespace sf = steinerforge;
using nlohmann::ordered_json;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

double default_budget_secs() {
    if (const char* env = std::getenv("STEINERFORGE_BUDGET_SECS")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            throw std::runtime_error(
                "bad STEINERFORGE_BUDGET_SECS value");
        }
    }
    return 60.0;
}

sf::Budget make_budget(double secs) {
    return secs > 0 ? sf::Budget::seconds(secs) : sf::Budget::unlimited();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

sf::Digraph load_digraph(const std::string& path) {
    return sf::parse_digraph(slurp(path));
}

std::vector<int> parse_vertex_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoi(tok));
    }
    if (out.empty()) throw std::runtime_error("empty vertex list");
    return out;
}

ordered_json report_to_json(const sf::ClassReport& r) {
    return ordered_json{{"connected", r.connected},
                        {"strong", r.strong},
                        {"acyclic", r.acyclic},
                        {"semicomplete", r.semicomplete},
                        {"tournament", r.tournament},
                        {"symmetric", r.symmetric},
                        {"eulerian", r.eulerian}};
}

ordered_json forest_to_json(const sf::OutForest& f,
                            const sf::ForestReport& r) {
    ordered_json trees = ordered_json::array();
    for (int t = 0; t < f.tree_count(); ++t) {
        ordered_json members = ordered_json::array();
        for (std::size_t v = 0; v < f.tree_of.size(); ++v)
            if (f.tree_of[v] == t) members.push_back(v);
        trees.push_back(
            ordered_json{{"root", f.roots[t]}, {"vertices", members}});
    }
    ordered_json arcs = ordered_json::array();
    for (auto [u, v] : f.arcs) arcs.push_back(ordered_json::array({u, v}));
    return ordered_json{{"trees", trees},
                        {"arcs", arcs},
                        {"report",
                         ordered_json{{"spanning", r.spanning},
                                      {"trees_induced", r.trees_induced},
                                      {"out_tree_valid", r.out_tree_valid},
                                      {"even_degree_count",
                                       r.even_degree_count},
                                      {"arc_count", r.arc_count}}}};
}

ordered_json certificate_to_json(const sf::PackingCertificate& c) {
    ordered_json cycles = ordered_json::array();
    for (const auto& cycle : c.cycles) cycles.push_back(cycle.vertices);
    return ordered_json{
        {"mode",
         c.mode == sf::DisjointnessMode::internal ? "internal" : "arc"},
        {"value", c.value},
        {"exhaustive", c.exhaustive},
        {"cycles", cycles}};
}

std::string gadget_file_text(const sf::GadgetOutput& g) {
    std::ostringstream out;
    out << "# " << g.provenance << "\n";
    if (!g.terminal_set.empty()) {
        out << "# terminals ";
        for (std::size_t i = 0; i < g.terminal_set.size(); ++i)
            out << (i ? "," : "") << g.terminal_set[i];
        out << "\n";
    }
    if (g.threshold) out << "# threshold " << *g.threshold << "\n";
    out << sf::serialize_digraph(g.digraph) << "\n";
    return out.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        spill(out_path, text);
}

struct OutForestArgs {
    std::string file, mode = "auto", check, out;
    int i = 0;
    int min_arcs = -1;
    double budget = 0;
    bool json = false;
};

int run_outforest(const OutForestArgs& a) {
    sf::Digraph d = load_digraph(a.file);

    if (!a.check.empty()) {
        sf::OutForest f = sf::parse_out_forest(slurp(a.check), d.order());
        sf::ForestReport r = sf::verify_out_forest(d, f);
        bool ok = r.is_i_perfect(a.i) &&
                  (a.min_arcs < 0 || r.arc_count >= a.min_arcs);
        if (a.json) {
            std::cout << forest_to_json(f, r).dump(2) << "\n";
        } else {
            std::cout << "spanning=" << r.spanning
                      << " trees_induced=" << r.trees_induced
                      << " out_tree_valid=" << r.out_tree_valid
                      << " even_degree_count=" << r.even_degree_count
                      << " arc_count=" << r.arc_count << "\n";
        }
        return ok ? kExitYes : kExitNo;
    }

    std::optional<sf::OutForest> found;
    bool timed_out = false;
    bool semicomplete = sf::classify(d).semicomplete;
    std::string mode = a.mode;
    if (mode == "auto") mode = semicomplete ? "semicomplete" : "exact";

    if (mode == "semicomplete") {
        auto f = sf::semicomplete_i_perfect(d, a.i);  // throws if not
        // Any i-perfect out-forest here has (n - i) / 2 arcs.
        if (f && (a.min_arcs < 0 || f->arc_count() >= a.min_arcs)) found = *f;
    } else if (mode == "exact") {
        sf::Budget budget = make_budget(a.budget);
        auto out = a.min_arcs >= 0
                       ? sf::decide_i_perfect_min_arcs(d, a.i, a.min_arcs,
                                                       budget)
                       : sf::max_i_perfect(d, a.i, budget);
        if (out.timed_out())
            timed_out = true;
        else if (out)
            found = *out.value;
    } else {
        throw std::runtime_error("unknown mode '" + mode + "'");
    }

    if (timed_out) {
        std::cerr << "budget exceeded\n";
        return kExitBudget;
    }
    if (!found) {
        std::cout << (a.json ? "{\"status\":\"none\"}" : "none") << "\n";
        return kExitNo;
    }
    sf::ForestReport r = sf::verify_out_forest(d, *found);
    std::string text = a.json ? forest_to_json(*found, r).dump(2) + "\n"
                              : sf::serialize_out_forest(*found) + "\n";
    if (!a.out.empty()) {
        spill(a.out, sf::serialize_out_forest(*found) + "\n");
        if (!a.json)
            std::cout << "arc_count " << r.arc_count << " trees "
                      << found->tree_count() << "\n";
        else
            std::cout << text;
    } else {
        std::cout << text;
    }
    return kExitYes;
}

struct CyclePackArgs {
    std::string file, set_csv, measure = "kappa", mode = "auto", out;
    int at_least = -1;
    std::size_t cap = sf::kDefaultCycleCap;
    double budget = 0;
    bool json = false;
};

int run_cyclepack(const CyclePackArgs& a) {
    sf::Digraph d = load_digraph(a.file);
    std::vector<int> S = parse_vertex_list(a.set_csv);
    sf::DisjointnessMode mode = a.measure == "lambda"
                                    ? sf::DisjointnessMode::arc
                                    : sf::DisjointnessMode::internal;
    bool symmetric = sf::classify(d).symmetric;
    std::string engine = a.mode;
    if (engine == "auto")
        engine = (symmetric && mode == sf::DisjointnessMode::internal)
                     ? "symmetric"
                     : "exact";

    sf::PackingCertificate cert;
    bool timed_out = false;
    if (engine == "symmetric") {
        if (mode != sf::DisjointnessMode::internal)
            throw std::runtime_error(
                "the structured engine only answers kappa queries");
        if (a.at_least >= 1) {
            auto out = sf::symmetric_kappa_at_least(d, S, a.at_least,
                                                    make_budget(a.budget));
            if (out.timed_out()) {
                timed_out = true;
            } else if (out) {
                cert = *out.value;
            } else {
                cert.mode = mode;
                cert.value = 0;
                cert.exhaustive = true;  // decision resolved: below target
            }
        } else {
            // Exact value by iterative deepening of the decision procedure.
            cert.mode = mode;
            cert.exhaustive = true;
            for (int l = 1;; ++l) {
                auto out = sf::symmetric_kappa_at_least(
                    d, S, l, make_budget(a.budget));
                if (out.timed_out()) {
                    timed_out = true;
                    break;
                }
                if (!out) break;
                cert = *out.value;
            }
        }
    } else if (engine == "exact") {
        std::optional<int> target;
        if (a.at_least >= 1) target = a.at_least;
        cert = sf::pack_cycles(d, S, mode, target, a.cap,
                               make_budget(a.budget));
        timed_out = !cert.exhaustive;
    } else {
        throw std::runtime_error("unknown mode '" + engine + "'");
    }

    if (timed_out) {
        std::cerr << "budget or cap exceeded\n";
        return kExitBudget;
    }
    std::string text = a.json ? certificate_to_json(cert).dump(2) + "\n"
                              : sf::serialize_certificate(cert) + "\n";
    if (!a.out.empty()) spill(a.out, sf::serialize_certificate(cert) + "\n");
    std::cout << text;
    if (a.at_least >= 1) return cert.value >= a.at_least ? kExitYes : kExitNo;
    return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "steinerforge: out-forest and Steiner-cycle packing toolkit for "
        "digraphs"};
    app.require_subcommand(1);
    double budget_default;
    try {
        budget_default = default_budget_secs();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    int rc = kExitYes;
    // classify
    {
        auto* cmd = app.add_subcommand("classify",
                                       "structural predicates of a digraph");
        auto file = std::make_shared<std::string>();
        auto json = std::make_shared<bool>(false);
        cmd->add_option("file", *file, "digraph file")->required();
        cmd->add_flag("--json", *json, "JSON output");
        cmd->callback([file, json, &rc] {
            sf::ClassReport r = sf::classify(load_digraph(*file));
            if (*json)
                std::cout << report_to_json(r).dump(2) << "\n";
            else
                std::cout << sf::format_class_report(r) << "\n";
            rc = kExitYes;
        });
    }
    // outforest
    {
        auto* cmd = app.add_subcommand(
            "outforest", "find or check i-perfect out-forests");
        auto a = std::make_shared<OutForestArgs>();
        a->budget = budget_default;
        cmd->add_option("file", a->file, "digraph file")->required();
        cmd->add_option("--i", a->i, "0- or 1-perfect")
            ->required()
            ->check(CLI::Range(0, 1));
        cmd->add_option("--min-arcs", a->min_arcs,
                        "require at least this many arcs");
        cmd->add_option("--mode", a->mode, "exact|semicomplete|auto")
            ->check(CLI::IsMember({"exact", "semicomplete", "auto"}));
        cmd->add_option("--budget", a->budget, "seconds per solve");
        cmd->add_option("--check", a->check, "verify a forest certificate");
        cmd->add_option("-o,--out", a->out, "write the certificate here");
        cmd->add_flag("--json", a->json, "JSON output");
        cmd->callback([a, &rc] { rc = run_outforest(*a); });
    }
    // cyclepack
    {
        auto* cmd = app.add_subcommand(
            "cyclepack", "pack internally or arc-disjoint terminal cycles");
        auto a = std::make_shared<CyclePackArgs>();
        a->budget = budget_default;
        cmd->add_option("file", a->file, "digraph file")->required();
        cmd->add_option("--set", a->set_csv, "terminal vertices, comma-separated")
            ->required();
        cmd->add_option("--measure", a->measure, "kappa|lambda")
            ->check(CLI::IsMember({"kappa", "lambda"}));
        cmd->add_option("--at-least", a->at_least, "decide value >= L");
        cmd->add_option("--mode", a->mode, "exact|symmetric|auto")
            ->check(CLI::IsMember({"exact", "symmetric", "auto"}));
        cmd->add_option("--cap", a->cap, "cycle enumeration cap");
        cmd->add_option("--budget", a->budget, "seconds per solve");
        cmd->add_option("-o,--out", a->out, "write the certificate here");
        cmd->add_flag("--json", a->json, "JSON output");
        cmd->callback([a, &rc] { rc = run_cyclepack(*a); });
    }
    // kcyclic
    {
        auto* cmd = app.add_subcommand(
            "kcyclic", "does every k-subset lie on a common cycle");
        auto file = std::make_shared<std::string>();
        auto k = std::make_shared<int>(2);
        auto budget = std::make_shared<double>(budget_default);
        auto json = std::make_shared<bool>(false);
        cmd->add_option("file", *file, "digraph file")->required();
        cmd->add_option("--k", *k, "subset size")->required();
        cmd->add_option("--budget", *budget, "seconds");
        cmd->add_flag("--json", *json, "JSON output");
        cmd->callback([file, k, budget, json, &rc] {
            auto got =
                sf::is_k_cyclic(load_digraph(*file), *k, make_budget(*budget));
            if (!got) {
                std::cerr << "budget exceeded\n";
                rc = kExitBudget;
                return;
            }
            if (*json)
                std::cout << ordered_json{{"k", *k}, {"k_cyclic", *got}}.dump(2)
                          << "\n";
            else
                std::cout << (*got ? "k-cyclic" : "not k-cyclic") << "\n";
            rc = *got ? kExitYes : kExitNo;
        });
    }
    // gadget
    {
        auto* gadget = app.add_subcommand(
            "gadget", "emit a hardness-reduction construction");
        gadget->require_subcommand(1);
        {
            auto* cmd = gadget->add_subcommand(
                "nae3sat", "variable-chain gadget from a CNF instance");
            auto cnf = std::make_shared<std::string>();
            auto out = std::make_shared<std::string>();
            cmd->add_option("cnf", *cnf, "DIMACS file")->required();
            cmd->add_option("-o,--out", *out, "output digraph file");
            cmd->callback([cnf, out, &rc] {
                sf::GadgetOutput g =
                    sf::build_nae_gadget(sf::parse_dimacs(slurp(*cnf)));
                emit(gadget_file_text(g), *out);
                rc = kExitYes;
            });
        }
        {
            auto* cmd = gadget->add_subcommand(
                "oneperfect", "source or 2-cycle pendant extension");
            auto file = std::make_shared<std::string>();
            auto mode = std::make_shared<std::string>();
            auto target = std::make_shared<int>();
            auto out = std::make_shared<std::string>();
            cmd->add_option("file", *file, "digraph file")->required();
            cmd->add_option("--mode", *mode, "add-source|add-2cycle-pendant")
                ->required()
                ->check(CLI::IsMember({"add-source", "add-2cycle-pendant"}));
            cmd->add_option("--target", *target, "attachment vertex")
                ->required();
            cmd->add_option("-o,--out", *out, "output digraph file");
            cmd->callback([file, mode, target, out, &rc] {
                sf::Digraph d = load_digraph(*file);
                sf::Digraph g = sf::to_one_perfect_gadget(
                    d,
                    *mode == "add-source"
                        ? sf::OnePerfectMode::add_source
                        : sf::OnePerfectMode::add_2cycle_pendant,
                    *target);
                emit(sf::serialize_digraph(g) + "\n", *out);
                rc = kExitYes;
            });
        }
        auto add_linkage = [&](const char* name, const char* what,
                               bool split) {
            auto* cmd = gadget->add_subcommand(name, what);
            auto file = std::make_shared<std::string>();
            auto terms = std::make_shared<std::string>();
            auto k = std::make_shared<int>(2);
            auto l = std::make_shared<int>(1);
            auto out = std::make_shared<std::string>();
            cmd->add_option("file", *file, "eulerian digraph file")
                ->required();
            cmd->add_option("--terminals", *terms, "s1,t1,s2,t2")->required();
            cmd->add_option("--k", *k, "terminal ring size")->required();
            cmd->add_option("--l", *l, "packing target")->required();
            cmd->add_option("-o,--out", *out, "output digraph file");
            cmd->callback([file, terms, k, l, out, split, &rc] {
                auto t = parse_vertex_list(*terms);
                if (t.size() != 4)
                    throw std::runtime_error(
                        "--terminals needs exactly four vertices");
                sf::LinkageInstance L(load_digraph(*file),
                                      {t[0], t[1], t[2], t[3]});
                sf::GadgetOutput g = sf::build_linkage_kappa_gadget(L, *k, *l);
                if (split) g = sf::split_vertices(g);
                emit(gadget_file_text(g), *out);
                rc = kExitYes;
            });
        };
        add_linkage("linkage-kappa",
                    "terminal-ring gadget for internal packing", false);
        add_linkage("linkage-lambda",
                    "split terminal-ring gadget for arc packing", true);
    }
    // oracle
    {
        auto* oracle = app.add_subcommand(
            "oracle", "brute-force source-problem oracles");
        oracle->require_subcommand(1);
        {
            auto* cmd = oracle->add_subcommand("nae3sat",
                                               "exhaustive NAE solver");
            auto cnf = std::make_shared<std::string>();
            cmd->add_option("cnf", *cnf, "DIMACS file")->required();
            cmd->callback([cnf, &rc] {
                auto found = sf::oracle_nae3sat(sf::parse_dimacs(slurp(*cnf)));
                if (found) {
                    std::cout << "NAE-satisfiable:";
                    for (bool b : *found) std::cout << " " << (b ? 1 : 0);
                    std::cout << "\n";
                    rc = kExitYes;
                } else {
                    std::cout << "not NAE-satisfiable\n";
                    rc = kExitNo;
                }
            });
        }
        {
            auto* cmd = oracle->add_subcommand(
                "linkage", "exhaustive two-path linkage search");
            auto file = std::make_shared<std::string>();
            auto terms = std::make_shared<std::string>();
            auto budget = std::make_shared<double>(budget_default);
            cmd->add_option("file", *file, "digraph file")->required();
            cmd->add_option("--terminals", *terms, "s1,t1,s2,t2")->required();
            cmd->add_option("--budget", *budget, "seconds");
            cmd->callback([file, terms, budget, &rc] {
                auto t = parse_vertex_list(*terms);
                if (t.size() != 4)
                    throw std::runtime_error(
                        "--terminals needs exactly four vertices");
                sf::LinkageInstance L(load_digraph(*file),
                                      {t[0], t[1], t[2], t[3]});
                auto got = sf::oracle_2linkage(L, make_budget(*budget));
                if (got.timed_out()) {
                    std::cerr << "budget exceeded\n";
                    rc = kExitBudget;
                    return;
                }
                if (got) {
                    auto print = [](const char* tag,
                                    const std::vector<int>& p) {
                        std::cout << tag;
                        for (int v : p) std::cout << " " << v;
                        std::cout << "\n";
                    };
                    print("path1", got.value->first);
                    print("path2", got.value->second);
                    rc = kExitYes;
                } else {
                    std::cout << "no linkage\n";
                    rc = kExitNo;
                }
            });
        }
    }
    // verify
    {
        auto* cmd = app.add_subcommand(
            "verify", "run a cross-check suite against the oracles");
        auto suite = std::make_shared<std::string>();
        auto opt = std::make_shared<sf::SuiteOptions>();
        opt->solve_budget_secs = budget_default;
        auto quiet = std::make_shared<bool>(false);
        cmd->add_option("suite", *suite, "thmA-b|thmB|thmC|thm1a|thm1d|thm1c")
            ->required()
            ->check(CLI::IsMember(sf::verify_suite_names()));
        cmd->add_option("--samples", opt->samples, "sample count");
        cmd->add_option("--seed", opt->seed, "generator seed");
        cmd->add_option("--max-n", opt->max_n, "largest instance order");
        cmd->add_option("--budget", opt->solve_budget_secs,
                        "seconds per solve");
        cmd->add_flag("--quiet", *quiet, "summary only");
        cmd->callback([suite, opt, quiet, &rc] {
            sf::SuiteReport report = sf::run_verify_suite(*suite, *opt);
            if (!*quiet)
                for (const auto& line : report.lines)
                    std::cout << line << "\n";
            std::cout << report.summary() << "\n";
            if (report.disagreements > 0)
                rc = kExitNo;
            else if (report.timeouts > 0)
                rc = kExitBudget;
            else
                rc = kExitYes;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return rc;
}
