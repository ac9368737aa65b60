#include "steinerforge/verify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "steinerforge/generators.hpp"
#include "steinerforge/out_forest.hpp"
#include "steinerforge/reductions.hpp"
#include "steinerforge/steiner_cycles.hpp"
#include "steinerforge/symmetric_packing.hpp"

namespace steinerforge {

std::string SuiteReport::summary() const {
    std::ostringstream out;
    out << suite << ": " << agreements << "/" << samples << " agree, "
        << disagreements << " disagreements, " << timeouts << " timeouts";
    return out.str();
}

namespace {

enum class Verdict { agree, disagree, timeout };

struct SampleSink {
    SuiteReport& report;

    void record(int index, const std::string& what, Verdict v) {
        ++report.samples;
        std::ostringstream line;
        line << "sample " << index << ": " << what << " -> ";
        switch (v) {
            case Verdict::agree:
                ++report.agreements;
                line << "agree";
                break;
            case Verdict::disagree:
                ++report.disagreements;
                line << "DISAGREE";
                break;
            case Verdict::timeout:
                ++report.timeouts;
                line << "timeout";
                break;
        }
        report.lines.push_back(line.str());
    }
};

Budget make_budget(const SuiteOptions& opt) {
    return opt.solve_budget_secs > 0 ? Budget::seconds(opt.solve_budget_secs)
                                     : Budget::unlimited();
}

SuiteReport suite_semicomplete(const SuiteOptions& opt) {
    SuiteReport report;
    report.suite = "thmA-b";
    SampleSink sink{report};
    Rng rng(opt.seed);
    std::uniform_int_distribution<int> order(1, std::max(1, opt.max_n));
    for (int s = 0; s < opt.samples; ++s) {
        int n = order(rng);
        Digraph d = random_semicomplete(n, rng);
        Verdict verdict = Verdict::agree;
        for (int i = 0; i <= 1 && verdict == Verdict::agree; ++i) {
            bool fast = semicomplete_i_perfect(d, i).has_value();
            auto exact = max_i_perfect(d, i, make_budget(opt));
            if (exact.timed_out())
                verdict = Verdict::timeout;
            else if (fast != static_cast<bool>(exact))
                verdict = Verdict::disagree;
        }
        std::ostringstream what;
        what << "semicomplete n=" << n;
        sink.record(s, what.str(), verdict);
    }
    return report;
}

std::vector<CnfInstance> nae_instances(int samples, Rng& rng) {
    std::vector<CnfInstance> out;
    // The eight polarity patterns of one clause on three variables.
    for (int bits = 0; bits < 8; ++bits) {
        Clause c{{Literal{0, (bits & 1) != 0}, Literal{1, (bits & 2) != 0},
                  Literal{2, (bits & 4) != 0}}};
        out.emplace_back(3, std::vector<Clause>{c});
    }
    std::uniform_int_distribution<int> clause_count(1, 2);
    std::uniform_int_distribution<int> polarity(0, 1);
    while (static_cast<int>(out.size()) < samples) {
        std::vector<Clause> clauses;
        int m = clause_count(rng);
        for (int j = 0; j < m; ++j) {
            int vars[3] = {0, 1, 2};
            std::shuffle(std::begin(vars), std::end(vars), rng);
            clauses.push_back(
                Clause{{Literal{vars[0], polarity(rng) != 0},
                        Literal{vars[1], polarity(rng) != 0},
                        Literal{vars[2], polarity(rng) != 0}}});
        }
        out.emplace_back(3, std::move(clauses));
    }
    return out;
}

SuiteReport suite_nae_gadget(const SuiteOptions& opt, bool one_perfect) {
    SuiteReport report;
    report.suite = one_perfect ? "thmC" : "thmB";
    SampleSink sink{report};
    Rng rng(opt.seed);
    auto instances = nae_instances(opt.samples, rng);
    for (std::size_t s = 0; s < instances.size(); ++s) {
        const CnfInstance& I = instances[s];
        bool oracle = oracle_nae3sat(I).has_value();
        GadgetOutput g = build_nae_gadget(I);
        Digraph target = g.digraph;
        int i = 0;
        if (one_perfect) {
            int entry = *g.digraph.vertex_by_label("x^1_1");
            target = to_one_perfect_gadget(g.digraph,
                                           OnePerfectMode::add_source, entry);
            i = 1;
        }
        int min_arcs = target.order() - 2;
        auto solved =
            decide_i_perfect_min_arcs(target, i, min_arcs, make_budget(opt));
        Verdict verdict;
        if (solved.timed_out()) {
            verdict = Verdict::timeout;
        } else if (oracle != static_cast<bool>(solved)) {
            verdict = Verdict::disagree;
        } else {
            verdict = Verdict::agree;
            if (solved) {
                ForestReport fr = verify_out_forest(target, *solved.value);
                if (!fr.is_i_perfect(i) || fr.arc_count < min_arcs)
                    verdict = Verdict::disagree;
            }
        }
        std::ostringstream what;
        what << "cnf vars=" << I.variable_count()
             << " clauses=" << I.clause_count() << " order=" << target.order();
        sink.record(static_cast<int>(s), what.str(), verdict);
    }
    return report;
}

struct LinkageSample {
    LinkageInstance instance;
    bool oracle_found = false;
    bool oracle_timeout = false;
};

LinkageSample draw_linkage(Rng& rng, const SuiteOptions& opt) {
    int hi = std::max(4, std::min(opt.max_n, 6));
    std::uniform_int_distribution<int> order(4, hi);
    int n = order(rng);
    Digraph h = random_eulerian(n, rng);
    std::vector<int> verts(n);
    std::iota(verts.begin(), verts.end(), 0);
    std::shuffle(verts.begin(), verts.end(), rng);
    LinkageInstance L(h, {verts[0], verts[1], verts[2], verts[3]});
    auto found = oracle_2linkage(L, make_budget(opt));
    return {std::move(L), static_cast<bool>(found), found.timed_out()};
}

SuiteReport suite_linkage_kappa(const SuiteOptions& opt) {
    SuiteReport report;
    report.suite = "thm1a";
    SampleSink sink{report};
    Rng rng(opt.seed);
    const std::pair<int, int> configs[] = {{2, 1}, {2, 2}, {3, 1}};
    for (int s = 0; s < opt.samples; ++s) {
        LinkageSample sample = draw_linkage(rng, opt);
        Verdict verdict = sample.oracle_timeout ? Verdict::timeout
                                                : Verdict::agree;
        for (auto [k, l] : configs) {
            if (verdict != Verdict::agree) break;
            GadgetOutput g = build_linkage_kappa_gadget(sample.instance, k, l);
            auto cert = pack_cycles(g.digraph, g.terminal_set,
                                    DisjointnessMode::internal, l,
                                    kDefaultCycleCap, make_budget(opt));
            if (!cert.exhaustive)
                verdict = Verdict::timeout;
            else if ((cert.value >= l) != sample.oracle_found)
                verdict = Verdict::disagree;
        }
        std::ostringstream what;
        what << "eulerian n=" << sample.instance.digraph.order()
             << " linkage=" << (sample.oracle_found ? "yes" : "no");
        sink.record(s, what.str(), verdict);
    }
    return report;
}

SuiteReport suite_split_lambda(const SuiteOptions& opt) {
    SuiteReport report;
    report.suite = "thm1d";
    SampleSink sink{report};
    Rng rng(opt.seed);
    for (int s = 0; s < opt.samples; ++s) {
        LinkageSample sample = draw_linkage(rng, opt);
        GadgetOutput g = build_linkage_kappa_gadget(sample.instance, 2, 2);
        GadgetOutput split = split_vertices(g);
        auto kappa = pack_cycles(g.digraph, g.terminal_set,
                                 DisjointnessMode::internal, 2,
                                 kDefaultCycleCap, make_budget(opt));
        auto lambda = pack_cycles(split.digraph, split.terminal_set,
                                  DisjointnessMode::arc, 2, kDefaultCycleCap,
                                  make_budget(opt));
        Verdict verdict;
        if (!kappa.exhaustive || !lambda.exhaustive)
            verdict = Verdict::timeout;
        else
            verdict = ((kappa.value >= 2) == (lambda.value >= 2))
                          ? Verdict::agree
                          : Verdict::disagree;
        std::ostringstream what;
        what << "eulerian n=" << sample.instance.digraph.order()
             << " split order=" << split.digraph.order();
        sink.record(s, what.str(), verdict);
    }
    return report;
}

SuiteReport suite_symmetric_kappa(const SuiteOptions& opt) {
    SuiteReport report;
    report.suite = "thm1c";
    SampleSink sink{report};
    Rng rng(opt.seed);
    std::uniform_int_distribution<int> order(3, std::max(3, opt.max_n));
    for (int s = 0; s < opt.samples; ++s) {
        int n = order(rng);
        Digraph d = random_connected_symmetric(n, rng);
        Verdict verdict = Verdict::agree;
        std::ostringstream what;
        what << "symmetric n=" << n;
        for (int k : {2, 3}) {
            if (k > n || verdict != Verdict::agree) continue;
            std::vector<int> verts(n);
            std::iota(verts.begin(), verts.end(), 0);
            std::shuffle(verts.begin(), verts.end(), rng);
            std::vector<int> S(verts.begin(), verts.begin() + k);
            for (int l : {1, 2}) {
                if (verdict != Verdict::agree) break;
                auto fast = symmetric_kappa_at_least(d, S, l, make_budget(opt));
                auto brute = pack_cycles(d, S, DisjointnessMode::internal, l,
                                         kDefaultCycleCap, make_budget(opt));
                if (fast.timed_out() || !brute.exhaustive)
                    verdict = Verdict::timeout;
                else if (static_cast<bool>(fast) != (brute.value >= l))
                    verdict = Verdict::disagree;
            }
        }
        sink.record(s, what.str(), verdict);
    }
    return report;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
    return {"thmA-b", "thmB", "thmC", "thm1a", "thm1d", "thm1c"};
}

SuiteReport run_verify_suite(const std::string& name,
                             const SuiteOptions& opt) {
    if (name == "thmA-b") return suite_semicomplete(opt);
    if (name == "thmB") return suite_nae_gadget(opt, false);
    if (name == "thmC") return suite_nae_gadget(opt, true);
    if (name == "thm1a") return suite_linkage_kappa(opt);
    if (name == "thm1d") return suite_split_lambda(opt);
    if (name == "thm1c") return suite_symmetric_kappa(opt);
    throw std::invalid_argument("unknown verify suite '" + name + "'");
}

}  // namespace steinerforge
