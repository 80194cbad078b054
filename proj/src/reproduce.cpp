#include "sdl/reproduce.hpp"

#include "sdl/agnostic.hpp"
#include "sdl/error.hpp"
#include "sdl/simulate.hpp"
#include "sdl/zoo.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <sstream>

namespace sdl {

bool SuiteResult::all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
}

bool SuiteResult::any_budget() const {
    return std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.budget; });
}

std::string SuiteResult::table(bool with_timing) const {
    std::size_t w = 5;
    for (const auto& r : rows) w = std::max(w, r.claim.size());
    std::ostringstream o;
    o << std::left << std::setw(int(w) + 2) << "claim" << std::setw(14) << "expected" << std::setw(14) << "computed"
      << "result";
    if (with_timing) o << "  seconds";
    o << "\n";
    for (const auto& r : rows) {
        o << std::setw(int(w) + 2) << r.claim << std::setw(14) << r.expected << std::setw(14) << r.computed
          << (r.pass ? "PASS" : "FAIL");
        if (with_timing) o << "  " << std::fixed << std::setprecision(2) << r.seconds;
        o << "\n";
    }
    o << suite << ": " << (all_pass() ? "all PASS" : "FAILURES") << "\n";
    return o.str();
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"core", "long"};
    return names;
}

namespace {

struct Runner {
    EngineOptions options;
    SearchBudget budget;
    SuiteResult result;

    // value claims: `cmp` is "=" or ">=".
    void value(const std::string& claim, const std::string& cmp, int expected, const std::function<int()>& compute) {
        ClaimRow row;
        row.claim = claim;
        row.expected = (cmp == "=" ? "" : cmp) + std::to_string(expected);
        auto t0 = std::chrono::steady_clock::now();
        try {
            int v = compute();
            row.computed = std::to_string(v);
            row.pass = cmp == "=" ? v == expected : v >= expected;
        } catch (const BudgetExceeded& e) {
            row.budget = true;
            row.computed = "[" + std::to_string(e.lower()) + "," + std::to_string(e.upper()) + "]";
            row.pass = cmp == "=" ? (e.lower() == expected && e.upper() == expected) : e.lower() >= expected;
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        result.rows.push_back(std::move(row));
    }

    void check(const std::string& claim, const std::string& expected, const std::function<std::pair<bool, std::string>()>& f) {
        ClaimRow row;
        row.claim = claim;
        row.expected = expected;
        auto t0 = std::chrono::steady_clock::now();
        auto [ok, computed] = f();
        row.pass = ok;
        row.computed = computed;
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        result.rows.push_back(std::move(row));
    }

    Engine engine() const { return Engine(options, budget); }
};

std::string fmt(double v) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(2) << v;
    return o.str();
}

void core(Runner& r) {
    auto e = [&] { return r.engine(); };
    r.value("m_sd singletons(8)", "=", 1, [&] { return e().m_sd(zoo::singletons(8)); });
    r.value("m_sd thresholds(8)", "=", 1, [&] { return e().m_sd(zoo::thresholds(8)); });
    r.value("m_sd k_intervals(2,8)", "=", 4, [&] { return e().m_sd(zoo::k_intervals(2, 8)); });
    r.value("m_sd grid_rectangles(2,3)", "=", 4, [&] { return e().m_sd(zoo::grid_rectangles(2, 3)); });
    r.value("vc grid_rectangles(2,3)", "=", 4, [&] { return vc_dim(zoo::grid_rectangles(2, 3), r.budget); });
    const auto bd = zoo::bendavid(3, 1);
    r.value("|H| bendavid(3,1)", "=", 24, [&] { return int(bd.num_concepts()); });
    r.value("vc bendavid(3,1)", "=", 3, [&] { return vc_dim(bd, r.budget); });
    r.value("m_sd bendavid(3,1)", "=", 4, [&] { return e().m_sd(bd); });
    r.value("td bendavid(3,1)", "=", 4, [&] { return teaching_dim(bd, r.budget); });

    const auto th4 = zoo::thresholds(4);
    r.value("ld thresholds(4)", "=", 2, [&] { return e().online_bound(th4); });
    r.value("m_worst thresholds(4)", "=", 2, [&] { return e().m_worst(th4); });
    r.value("m_best thresholds(4)", "=", 1, [&] { return e().m_best(th4); });
    r.value("m_sd thresholds(4)", "=", 1, [&] { return e().m_sd(th4); });
    r.value("vc thresholds(4)", "=", 1, [&] { return vc_dim(th4, r.budget); });
    r.value("ld thresholds(7)", "=", 3, [&] { return e().online_bound(zoo::thresholds(7)); });

    for (auto [name, cls] : {std::pair<std::string, ConceptClass>{"k_intervals(2,8)", zoo::k_intervals(2, 8)},
                             {"bendavid(3,1)", bd}}) {
        r.value("sd_soa vs optimal mistakes " + name, "=", 4, [&, cls = cls] {
            Engine eng = r.engine();
            SdSoaLearner learner(eng);
            OptimalAdversary adversary(eng);
            return run_episode(cls, learner, adversary).mistakes;
        });
    }

    const auto perm2 = zoo::perm_thresholds(2);
    r.value("|H| perm_thresholds(2)", "=", 96, [&] { return int(perm2.num_concepts()); });
    r.value("m_sd perm_thresholds(2)", "=", 2, [&] { return e().m_sd(perm2); });

    const auto oct = zoo::linear_separators(zoo::octagon_config());
    r.value("dichotomies octagon", "=", 58, [&] { return int(oct.num_concepts()); });
    r.value("m_sd octagon", ">=", 4, [&] { return e().m_sd(oct); });
    r.value("m_sd regular (convex) octagon [finding]", "=", 3,
            [&] { return e().m_sd(zoo::linear_separators(zoo::regular_octagon_config())); });

    // Agnostic bounds on 3x3 rectangles, T = 200.
    const auto rect = zoo::grid_rectangles(2, 3);
    agnostic::SampleMultiset cyclic;
    for (std::size_t t = 0; t < 200; ++t) cyclic.points.push_back(PointId(t % rect.num_points()));
    for (auto src : {agnostic::LabelSource::adversarial(), agnostic::LabelSource::realizable(5)}) {
        r.check("agnostic upper bound, " + src.name(), "<= bound", [&, src = src] {
            auto rep = agnostic::run_agnostic(rect, cyclic, src, 20, 7, std::nullopt, r.options.workers);
            return std::pair{rep.upper_bound_holds(), fmt(rep.max_expected_regret) + "/" + fmt(rep.upper_bound)};
        });
    }
    r.check("agnostic lower bound, bernoulli_half k=50", ">= bound-3se", [&] {
        auto sample = agnostic::lower_bound_instance(rect, 50, r.budget);
        auto rep = agnostic::run_agnostic(rect, sample, agnostic::LabelSource::bernoulli_half(), 1000, 11, std::nullopt,
                                          r.options.workers);
        return std::pair{rep.lower_bound_holds(), fmt(rep.mean_regret) + "/" + fmt(rep.lower_bound)};
    });
    for (std::size_t k : {16, 64, 256}) {
        r.check("khinchine k=" + std::to_string(k), ">= sqrt(k/8)", [&] {
            auto d = agnostic::khinchine_deviation(k, 4000, 13);
            return std::pair{d.holds(), fmt(d.mean) + "/" + fmt(d.bound)};
        });
    }
}

void long_suite(Runner& r) {
    const auto perm3 = zoo::perm_thresholds(3);
    r.value("m_sd perm_thresholds(3)", "=", 2, [&] { return r.engine().m_sd(perm3); });
    r.value("m_best perm_thresholds(3) (full domain)", ">=", 3,
            [&] { return r.engine().m_best(perm3, VersionSpace::full(perm3), ActiveSet::full(perm3)); });
    const auto emb = zoo::linear_separators(zoo::embed_2d(2));
    r.value("m_sd embed_2d(2), 6 dims", ">=", 8, [&] { return r.engine().m_sd(emb); });
}

}  // namespace

SuiteResult reproduce(const std::string& suite, EngineOptions options, SearchBudget budget) {
    Runner r{options, budget, {}};
    r.result.suite = suite;
    if (suite == "core")
        core(r);
    else if (suite == "long")
        long_suite(r);
    else
        throw ArgumentError("unknown suite '" + suite + "' (available: core, long)");
    return r.result;
}

}  // namespace sdl
