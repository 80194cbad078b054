// Acceptance run: one PASS/FAIL line per criterion, exit status = number of failures.
//   sdl_acceptance            all criteria
//   sdl_acceptance 1 4 9      selected criteria

#include "helpers.hpp"
#include "oracles.hpp"
#include "properties.hpp"

#include "sdl/agnostic.hpp"
#include "sdl/dimensions.hpp"
#include "sdl/error.hpp"
#include "sdl/simulate.hpp"
#include "sdl/zoo.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace sdl;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void expect(bool ok, const std::string& what) {
        if (!ok) pass = false;
        detail << (ok ? "" : "MISS ") << what << "; ";
    }
};

std::string s(int v) { return std::to_string(v); }

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// Value or proven bracket under a budget.
struct Bounded {
    int lo, hi;
    bool exact() const { return lo == hi; }
    std::string str() const { return exact() ? s(lo) : "[" + s(lo) + "," + s(hi) + "]"; }
};

Bounded bounded(const std::function<int()>& f) {
    try {
        int v = f();
        return {v, v};
    } catch (const BudgetExceeded& e) {
        return {e.lower(), e.upper()};
    }
}

// 1. Values from the literature, exact.
void c1(Verdict& v) {
    auto t0 = std::chrono::steady_clock::now();
    Engine e;
    v.expect(e.m_sd(zoo::singletons(8)) == 1, "m_sd singletons(8)=1");
    v.expect(e.m_sd(zoo::thresholds(8)) == 1, "m_sd thresholds(8)=1");
    v.expect(e.m_sd(zoo::k_intervals(2, 8)) == 4, "m_sd k_intervals(2,8)=4");
    auto r = zoo::grid_rectangles(2, 3);
    v.expect(e.m_sd(r) == 4, "m_sd rectangles 3x3=4");
    v.expect(vc_dim(r) == 4, "vc rectangles 3x3=4");
    auto b = zoo::bendavid(3, 1);
    v.expect(b.num_concepts() == 24, "|bendavid(3,1)|=24");
    v.expect(vc_dim(b) == 3, "vc=3");
    v.expect(e.m_sd(b) == 4, "m_sd=4");
    v.expect(teaching_dim(b) == 4, "td=4");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.expect(secs < 300, "runtime " + fixed2(secs) + "s < 300s");
}

// 2. Labelling game value equals the self-directed value.
ConceptClass capped(std::uint64_t seed, std::size_t L) {
    std::size_t n = 1 + seed % 4;
    std::size_t cap = 1;
    for (std::size_t i = 0; i < n; ++i) cap *= L;
    std::size_t m = 1 + (seed * 5) % std::min<std::size_t>(cap, L == 2 ? 10 : 16);
    return zoo::random_class(m, n, L, 50000 + seed * 3 + L);
}

void c2(Verdict& v) {
    int bin_bad = 0, tern_bad = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto c = capped(seed, 2);
        auto all = ActiveSet::full(c);
        if (labelling_game_value(c, all, false) != m_sd(c, VersionSpace::full(c), all)) ++bin_bad;
    }
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto c = capped(seed, 3);
        auto all = ActiveSet::full(c);
        if (labelling_game_value(c, all, true) != m_sd(c, VersionSpace::full(c), all)) ++tern_bad;
    }
    v.expect(bin_bad == 0, "binary mismatches " + s(bin_bad) + "/200");
    v.expect(tern_bad == 0, "ternary mismatches " + s(tern_bad) + "/50");
}

// 3. Mistake-bound chain.
void c3(Verdict& v) {
    int zoo_bad = 0, rnd_bad = 0;
    auto zoo_classes = props::small_zoo();
    for (const auto& z : zoo_classes)
        if (!props::chain(z.cls).holds()) ++zoo_bad;
    for (std::uint64_t seed = 0; seed < 300; ++seed)
        if (!props::chain(props::sweep_class(seed)).holds()) ++rnd_bad;
    v.expect(zoo_bad == 0, "zoo violations " + s(zoo_bad) + "/" + s(int(zoo_classes.size())));
    v.expect(rnd_bad == 0, "random violations " + s(rnd_bad) + "/300");
    auto t = props::chain(zoo::thresholds(4));
    v.expect(t.ld == 2 && t.worst == 2 && t.best == 1 && t.sd == 1 && t.vc == 1,
             "thresholds(4) (" + s(t.ld) + "," + s(t.worst) + "," + s(t.best) + "," + s(t.sd) + "," + s(t.vc) +
                 ") = (2,2,1,1,1)");
    oracle::Oracle o(zoo::thresholds(4));
    v.expect(o.worst_full() == 2 && o.best_max() == 1, "ordering brute force agrees");
}

// 4. SD-SOA is optimal against the optimal adversary.
void c4(Verdict& v) {
    struct Case {
        std::string name;
        ConceptClass c;
    };
    std::vector<Case> cases{{"singletons(8)", zoo::singletons(8)},
                            {"thresholds(8)", zoo::thresholds(8)},
                            {"k_intervals(2,8)", zoo::k_intervals(2, 8)},
                            {"rectangles 3x3", zoo::grid_rectangles(2, 3)},
                            {"bendavid(3,1)", zoo::bendavid(3, 1)}};
    for (const auto& [name, c] : cases) {
        Engine e;
        int target = e.m_sd(c);
        SdSoaLearner learner(e);
        OptimalAdversary adv(e);
        auto tr = run_episode(c, learner, adv, 0, std::nullopt, name);
        bool drops = true;
        auto vs = VersionSpace::full(c);
        auto active = ActiveSet::of(c, tr.domain);
        for (const auto& st : tr.steps) {
            int before = e.m_sd(c, vs, active);
            vs = restrict(c, vs, {st.point, st.truth});
            active.erase(st.point);
            if (st.mistake && e.m_sd(c, vs, active) > before - 1) drops = false;
        }
        v.expect(tr.mistakes == target && drops, name + " " + s(tr.mistakes) + "=" + s(target));
    }
}

// 5. Value-1 biconditionals.
void c5(Verdict& v) {
    std::vector<ConceptClass> pool;
    for (std::uint64_t seed = 0; seed < 300; ++seed) pool.push_back(props::sweep_class(seed));
    for (std::uint64_t seed = 0; seed < 100; ++seed) pool.push_back(zoo::vc1_tree_class(2 + seed % 9, seed));
    for (const auto& z : props::small_zoo()) pool.push_back(z.cls);
    int best_bad = 0, vc_bad = 0, tree_bad = 0;
    SearchBudget b;
    b.max_order_points = 10;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const auto& c = pool[i];
        Engine e({}, b);
        int sd = e.m_sd(c);
        if ((sd == 1) != (e.m_best(c) == 1)) ++best_bad;
        if (c.is_binary() && (sd == 1) != (vc_dim(c) == 1)) ++vc_bad;
        if (i >= 300 && i < 400 && (sd != 1 || vc_dim(c) != 1)) ++tree_bad;
    }
    v.expect(best_bad == 0, "m_sd=1<=>m_best=1 violations " + s(best_bad) + "/" + s(int(pool.size())));
    v.expect(vc_bad == 0, "m_sd=1<=>vc=1 violations " + s(vc_bad));
    v.expect(tree_bad == 0, "vc1 trees with value != 1: " + s(tree_bad) + "/100");
}

// 6. Monotonicity and point existence.
void c6(Verdict& v) {
    int mono = props::monotonicity_violations(300);
    int exist = props::point_existence_violations(300);
    v.expect(mono == 0, "monotonicity violations " + s(mono) + "/300");
    v.expect(exist == 0, "point-existence violations " + s(exist) + "/300");
}

// 7. Linear separators in the plane.
void c7(Verdict& v) {
    SearchBudget b;
    b.max_time = std::chrono::minutes(10);
    auto oct = zoo::linear_separators(zoo::octagon_config());
    auto val = bounded([&] { return Engine({}, b).m_sd(oct); });
    v.expect(val.lo >= 4, "m_sd octagon " + val.str() + " >= 4");
    auto reg = bounded([&] { return Engine({}, b).m_sd(zoo::linear_separators(zoo::regular_octagon_config())); });
    v.detail << "finding: convex regular octagon gives " << reg.str() << "; ";
}

// 8. Long targets.
void c8(Verdict& v) {
    SearchBudget b;
    b.max_time = std::chrono::minutes(30);
    auto t0 = std::chrono::steady_clock::now();
    auto perm = zoo::perm_thresholds(3);
    auto sd = bounded([&] { return Engine({}, b).m_sd(perm); });
    v.expect(sd.exact() && sd.lo == 2, "m_sd perm_thresholds(3) " + sd.str() + " = 2");
    auto best = bounded([&] { return Engine({}, b).m_best(perm, VersionSpace::full(perm), ActiveSet::full(perm)); });
    v.expect(best.lo >= 3, "m_best perm_thresholds(3) " + best.str() + " >= 3");
    auto emb = zoo::linear_separators(zoo::embed_2d(2));
    auto e8 = bounded([&] { return Engine({}, b).m_sd(emb); });
    v.expect(e8.lo >= 8, "m_sd embed_2d(2) " + e8.str() + " >= 8");
    v.detail << fixed2(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()) << "s; ";
}

// 9. Agnostic bounds.
void c9(Verdict& v) {
    using namespace agnostic;
    auto r = zoo::grid_rectangles(2, 3);
    SampleMultiset cyclic;
    for (std::size_t t = 0; t < 200; ++t) cyclic.points.push_back(PointId(t % 9));
    auto block = lower_bound_instance(r, 50);
    int runs = 0, over = 0;
    for (const auto* sample : {&cyclic, &block})
        for (auto src : {LabelSource::adversarial(), LabelSource::realizable(0), LabelSource::realizable(11)}) {
            auto rep = run_agnostic(r, *sample, src, 50, 21);
            for (const auto& t : rep.per_trial) {
                ++runs;
                if (t.expected_regret() > rep.upper_bound) ++over;
            }
        }
    v.expect(over == 0, "upper bound exceeded in " + s(over) + "/" + s(runs) + " runs");

    auto lb = run_agnostic(r, block, LabelSource::bernoulli_half(), 1000, 77);
    double need = std::sqrt(4.0 * 200 / 8) - 3 * lb.std_error();
    v.expect(lb.mean_regret >= need, "lower bound mean regret " + fixed2(lb.mean_regret) + " >= " + fixed2(need));
    for (std::size_t k : {16, 64, 256}) {
        auto d = khinchine_deviation(k, 5000, k);
        v.expect(d.holds(), "khinchine k=" + std::to_string(k) + " " + fixed2(d.mean) + " vs " + fixed2(d.bound));
    }
}

// 10. Byte-identical output across reruns and worker counts.
void c10(Verdict& v) {
    const std::string exe = SDLAB_EXE;
    const std::vector<std::string> cmds{
        " dims zoo:bendavid:3:1",
        " dims zoo:k_intervals:2:8 --format csv",
        " dims zoo:octagon --measures vc,m_sd,ld",
        " simulate zoo:k_intervals:2:8 --seed 4",
        " simulate zoo:bendavid:3:1 --adversary fixed_target:7 --format table",
        " game zoo:thresholds:4 --side none",
        " agnostic zoo:grid_rectangles:2:3 --sample lowerbound:50 --labels bernoulli --trials 200 --seed 9",
        " agnostic zoo:grid_rectangles:2:3 --labels adversarial --trials 20 --seed 9 --format csv",
        " agnostic zoo:grid_rectangles:2:3 --labels adaptive --trials 20 --seed 9",
        " zoo export zoo:perm_thresholds:2",
        " reproduce core",
    };
    int differ = 0;
    for (const auto& c : cmds) {
        bool workers = c.find(" zoo export") == std::string::npos && c.find(" game") == std::string::npos;
        auto base = testing::run(exe + c + (workers ? " --workers 1" : ""));
        auto again = testing::run(exe + c + (workers ? " --workers 1" : ""));
        bool same = base.out == again.out && !base.out.empty();
        if (workers) {
            for (const char* w : {" --workers 2", " --workers 4"}) same = same && testing::run(exe + c + w).out == base.out;
            same = same && testing::run("SDL_WORKERS=3 " + exe + c).out == base.out;
        }
        if (!same) {
            ++differ;
            v.detail << "differs:" << c << "; ";
        }
    }
    v.expect(differ == 0, s(int(cmds.size()) - differ) + "/" + s(int(cmds.size())) + " commands stable");
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, void (*)(Verdict&)>> criteria{
        {"value table", c1},           {"game oracle equivalence", c2}, {"mistake-bound chain", c3},
        {"SD-SOA optimality", c4},     {"value-1 biconditionals", c5},  {"monotonicity and point existence", c6},
        {"planar linear separators", c7}, {"long targets", c8},           {"agnostic bounds", c9},
        {"determinism", c10}};
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        int id = int(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        Verdict v;
        auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(v);
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << "exception: " << e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2d %-34s %s  (%.1fs) %s\n", id, criteria[i].first.c_str(), v.pass ? "PASS" : "FAIL",
                    secs, v.detail.str().c_str());
        std::fflush(stdout);
        failures += !v.pass;
    }
    return failures;
}
