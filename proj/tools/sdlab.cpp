// sdlab: command-line front end for the self-directed learning toolkit.

#include "sdl/agnostic.hpp"
#include "sdl/class_json.hpp"
#include "sdl/class_ref.hpp"
#include "sdl/dimensions.hpp"
#include "sdl/error.hpp"
#include "sdl/reproduce.hpp"
#include "sdl/simulate.hpp"
#include "sdl/zoo.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace sdl;

enum Exit { ok = 0, usage = 1, budget = 2, invariant = 3 };

struct Common {
    std::size_t budget_states = SearchBudget{}.max_states;
    long long budget_ms = 0;  // 0 = no time limit
    std::size_t max_order_points = SearchBudget{}.max_order_points;
    unsigned workers = 1;
    bool dedupe = false;

    SearchBudget search_budget() const {
        SearchBudget b;
        b.max_states = budget_states;
        b.max_order_points = max_order_points;
        if (budget_ms > 0) b.max_time = std::chrono::milliseconds(budget_ms);
        return b;
    }
    DuplicateRows policy() const { return dedupe ? DuplicateRows::dedupe : DuplicateRows::reject; }
};

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ArgumentError("cannot write '" + out + "'");
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("cannot read '" + path + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<std::string> tokens(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

std::optional<std::size_t> parse_uint(std::string_view s) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

// Points by name, "x<id>" or bare id.
PointId parse_point(const ConceptClass& cls, const std::string& tok) {
    for (PointId x = 0; x < cls.num_points(); ++x)
        if (cls.point_name(x) == tok) return x;
    std::string_view v = tok;
    if (!v.empty() && v.front() == 'x') v.remove_prefix(1);
    if (auto id = parse_uint(v); id && *id < cls.num_points()) return PointId(*id);
    throw ArgumentError("unknown point '" + tok + "'");
}

LabelId parse_label(const ConceptClass& cls, const std::string& tok) {
    for (LabelId y = 0; y < cls.num_labels(); ++y)
        if (cls.label_name(y) == tok) return y;
    if (auto id = parse_uint(tok); id && *id < cls.num_labels()) return LabelId(*id);
    throw ArgumentError("unknown label '" + tok + "'");
}

ActiveSet parse_points(const ConceptClass& cls, const std::string& spec) {
    if (spec.empty() || spec == "all") return ActiveSet::full(cls);
    std::vector<PointId> pts;
    for (const auto& t : split(spec, ',')) pts.push_back(parse_point(cls, t));
    return ActiveSet::of(cls, pts);
}

// ---------------------------------------------------------------------------

struct DimsArgs {
    std::string ref, measures = "all", format = "json", out;
    bool timing = false, no_prune = false, no_decompose = false;
};

int cmd_dims(const DimsArgs& a, const Common& c) {
    ConceptClass cls = resolve_class(a.ref, c.policy());
    std::vector<Measure> ms;
    if (a.measures == "all")
        ms = all_measures();
    else
        for (const auto& name : split(a.measures, ',')) ms.push_back(parse_measure(name));
    if (a.format != "json" && a.format != "csv") throw ArgumentError("--format must be json or csv");
    EngineOptions opts;
    opts.pruning = !a.no_prune;
    opts.decompose = !a.no_decompose;
    opts.workers = c.workers;
    DimReport rep = full_report(cls, ms, c.search_budget(), opts, a.ref);
    emit(a.format == "json" ? report_json(rep, a.timing) : report_csv(rep, a.timing), a.out);
    for (const auto& [m, r] : rep.results)
        if (r.status == MeasureResult::Status::budget) return budget;
    return ok;
}

// ---------------------------------------------------------------------------

struct SimArgs {
    std::string ref, learner = "sd_soa", adversary = "optimal", format = "jsonl", out, points;
    std::uint64_t seed = 0;
};

std::vector<LabeledExample> read_learner_script(const ConceptClass& cls, const std::string& path) {
    std::vector<LabeledExample> moves;
    for (const auto& t : tokens(read_file(path))) {
        auto eq = t.find('=');
        if (eq == std::string::npos) throw ArgumentError("learner script: expected point=label, got '" + t + "'");
        moves.push_back({parse_point(cls, t.substr(0, eq)), parse_label(cls, t.substr(eq + 1))});
    }
    return moves;
}

int cmd_simulate(const SimArgs& a, const Common& c) {
    ConceptClass cls = resolve_class(a.ref, c.policy());
    EngineOptions opts;
    opts.workers = c.workers;
    Engine engine(opts, c.search_budget());

    std::unique_ptr<Learner> learner;
    if (a.learner == "sd_soa")
        learner = std::make_unique<SdSoaLearner>(engine);
    else if (a.learner.rfind("scripted:", 0) == 0)
        learner = std::make_unique<ScriptedLearner>(read_learner_script(cls, a.learner.substr(9)));
    else
        throw ArgumentError("unknown learner '" + a.learner + "' (sd_soa, scripted:FILE)");

    std::unique_ptr<Adversary> adversary;
    if (a.adversary == "optimal") {
        adversary = std::make_unique<OptimalAdversary>(engine);
    } else if (a.adversary.rfind("fixed_target:", 0) == 0) {
        auto id = parse_uint(a.adversary.substr(13));
        if (!id || *id >= cls.num_concepts()) throw ArgumentError("bad target in '" + a.adversary + "'");
        adversary = std::make_unique<FixedTargetAdversary>(ConceptId(*id));
    } else if (a.adversary.rfind("scripted:", 0) == 0) {
        std::vector<LabelId> answers;
        for (const auto& t : tokens(read_file(a.adversary.substr(9)))) answers.push_back(parse_label(cls, t));
        adversary = std::make_unique<ScriptedAdversary>(std::move(answers));
    } else {
        throw ArgumentError("unknown adversary '" + a.adversary + "' (optimal, fixed_target:ID, scripted:FILE)");
    }
    if (a.format != "jsonl" && a.format != "table") throw ArgumentError("--format must be jsonl or table");

    std::optional<ActiveSet> domain;
    if (!a.points.empty()) domain = parse_points(cls, a.points);
    Transcript tr = run_episode(cls, *learner, *adversary, a.seed, domain, a.ref);
    emit(a.format == "jsonl" ? tr.to_jsonl() : tr.to_table(cls), a.out);
    return ok;
}

// ---------------------------------------------------------------------------

struct GameArgs {
    std::string ref, side = "learner", points, record;
    bool multiclass = false;
};

int cmd_game(const GameArgs& a, const Common& c) {
    ConceptClass cls = resolve_class(a.ref, c.policy());
    GameSide side;
    if (a.side == "learner")
        side = GameSide::learner;
    else if (a.side == "adversary")
        side = GameSide::adversary;
    else if (a.side == "none")
        side = GameSide::none;
    else
        throw ArgumentError("--side must be learner, adversary or none");
    GameRecord rec = play_labelling_game(cls, parse_points(cls, a.points), a.multiclass, side, std::cin, std::cout);
    if (!a.record.empty()) emit(rec.to_json() + "\n", a.record);
    return ok;
}

// ---------------------------------------------------------------------------

struct AgnosticArgs {
    std::string ref, sample = "all", labels = "bernoulli", format = "json", out;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::optional<double> eta;
};

agnostic::SampleMultiset parse_sample(const ConceptClass& cls, const std::string& spec, const Common& c) {
    agnostic::SampleMultiset s;
    if (spec == "all") {
        for (PointId x = 0; x < cls.num_points(); ++x) s.points.push_back(x);
    } else if (spec.rfind("lowerbound:", 0) == 0) {
        auto k = parse_uint(spec.substr(11));
        if (!k || *k == 0) throw ArgumentError("lowerbound:k needs k >= 1");
        s = agnostic::lower_bound_instance(cls, *k, c.search_budget());
    } else if (spec.rfind("points:", 0) == 0) {
        for (const auto& t : split(spec.substr(7), ',')) s.points.push_back(parse_point(cls, t));
    } else if (spec.rfind("file:", 0) == 0) {
        for (const auto& t : tokens(read_file(spec.substr(5)))) s.points.push_back(parse_point(cls, t));
    } else {
        throw ArgumentError("unknown sample '" + spec + "' (all, lowerbound:K, points:A,B,..., file:PATH)");
    }
    return s;
}

agnostic::LabelSource parse_labels(const std::string& spec) {
    using agnostic::LabelSource;
    if (spec == "bernoulli" || spec == "bernoulli_half") return LabelSource::bernoulli_half();
    if (spec == "adversarial") return LabelSource::adversarial();
    if (spec == "adaptive") return LabelSource::adaptive();
    auto arg = [&](std::size_t n) { return spec.substr(n); };
    if (spec.rfind("realizable:", 0) == 0) {
        auto i = parse_uint(arg(11));
        if (!i) throw ArgumentError("realizable:I needs an expert index");
        return LabelSource::realizable(*i);
    }
    if (spec.rfind("oblivious:", 0) == 0) {
        auto s = parse_uint(arg(10));
        if (!s) throw ArgumentError("oblivious:SEED needs an integer seed");
        return LabelSource::oblivious(*s);
    }
    if (spec.rfind("fixed:", 0) == 0) {
        std::vector<std::uint8_t> ys;
        for (const auto& t : tokens(read_file(arg(6)))) {
            if (t != "0" && t != "1") throw ArgumentError("fixed label file: expected 0/1, got '" + t + "'");
            ys.push_back(std::uint8_t(t == "1"));
        }
        return LabelSource::fixed(std::move(ys));
    }
    throw ArgumentError("unknown label source '" + spec +
                        "' (bernoulli, adversarial, adaptive, realizable:I, oblivious:SEED, fixed:FILE)");
}

int cmd_agnostic(const AgnosticArgs& a, const Common& c) {
    if (a.trials == 0) throw ArgumentError("--trials must be at least 1");
    if (a.format != "json" && a.format != "csv") throw ArgumentError("--format must be json or csv");
    ConceptClass cls = resolve_class(a.ref, c.policy());
    auto sample = parse_sample(cls, a.sample, c);
    auto rep = agnostic::run_agnostic(cls, sample, parse_labels(a.labels), a.trials, a.seed, a.eta, c.workers, a.ref);
    emit(a.format == "json" ? rep.to_json() + "\n" : rep.to_csv(), a.out);
    return ok;
}

// ---------------------------------------------------------------------------

int cmd_reproduce(const std::string& suite, bool timing, const Common& c) {
    EngineOptions opts;
    opts.workers = c.workers;
    SearchBudget b = c.search_budget();
    SuiteResult r = reproduce(suite, opts, b);
    std::cout << r.table(timing);
    if (r.all_pass()) return ok;
    for (const auto& row : r.rows)
        if (!row.pass && !row.budget) return invariant;
    return budget;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sdlab: exact mistake-bound measures, simulations and experiments on finite concept classes"};
    app.require_subcommand(1);
    Common common;

    auto add_common = [&](CLI::App* sub, bool with_budget) {
        if (with_budget) {
            sub->add_option("--budget-states", common.budget_states, "Search state budget")
                ->envname("SDL_BUDGET_STATES");
            sub->add_option("--budget-ms", common.budget_ms, "Wall-clock budget in ms (0 = none)")
                ->envname("SDL_BUDGET_MS");
            sub->add_option("--max-order-points", common.max_order_points,
                            "Largest point count for exhaustive ordering search (m_best, m_worst)");
        }
        sub->add_option("--workers", common.workers, "Worker threads")->envname("SDL_WORKERS")->check(
            CLI::Range(1u, 256u));
        sub->add_flag("--dedupe", common.dedupe, "Drop duplicate rows of a loaded class instead of rejecting");
    };
    const std::string ref_help = "Class: zoo URI (see `zoo list`) or JSON file";

    DimsArgs dims;
    auto* d = app.add_subcommand("dims", "Report mistake-bound measures of a class");
    d->add_option("class", dims.ref, ref_help)->required();
    d->add_option("--measures", dims.measures, "Comma list of vc,ld,m_worst,m_best,m_sd,td or 'all'");
    d->add_option("--format", dims.format, "json or csv");
    d->add_option("--out", dims.out, "Output file (default stdout)");
    d->add_flag("--timing", dims.timing, "Include state counts and timings");
    d->add_flag("--no-prune", dims.no_prune, "Disable alpha-beta pruning");
    d->add_flag("--no-decompose", dims.no_decompose, "Disable product decomposition");
    add_common(d, true);

    SimArgs sim;
    auto* s = app.add_subcommand("simulate", "Run a learner against an adversary");
    s->add_option("class", sim.ref, ref_help)->required();
    s->add_option("--learner", sim.learner, "sd_soa or scripted:FILE (tokens point=label)");
    s->add_option("--adversary", sim.adversary, "optimal, fixed_target:ID or scripted:FILE (labels)");
    s->add_option("--seed", sim.seed, "Episode seed");
    s->add_option("--points", sim.points, "Restrict the domain (comma list)");
    s->add_option("--format", sim.format, "jsonl or table");
    s->add_option("--out", sim.out, "Output file (default stdout)");
    add_common(s, true);

    GameArgs game;
    auto* g = app.add_subcommand("game", "Play the labelling game at the terminal");
    g->add_option("class", game.ref, ref_help)->required();
    g->add_option("--side", game.side, "Human side: learner, adversary, or none (machine vs machine)");
    g->add_flag("--multiclass", game.multiclass, "Multi-class rules (label pairs are designated)");
    g->add_option("--points", game.points, "Active points (comma list, default all)");
    g->add_option("--record", game.record, "Write the game record as JSON");
    add_common(g, false);

    AgnosticArgs ag;
    auto* a = app.add_subcommand("agnostic", "Multiplicative weights over projection experts");
    a->add_option("class", ag.ref, ref_help)->required();
    a->add_option("--sample", ag.sample, "all, lowerbound:K, points:A,B,... or file:PATH");
    a->add_option("--labels", ag.labels,
                  "bernoulli, adversarial, adaptive, realizable:I, oblivious:SEED or fixed:FILE");
    a->add_option("--trials", ag.trials, "Number of trials");
    a->add_option("--seed", ag.seed, "Seed");
    a->add_option("--eta", ag.eta, "Learning rate (default sqrt(8 ln N / T))");
    a->add_option("--format", ag.format, "json or csv");
    a->add_option("--out", ag.out, "Output file (default stdout)");
    add_common(a, true);

    auto* z = app.add_subcommand("zoo", "Built-in concept classes");
    z->require_subcommand(1);
    std::string zoo_ref, zoo_out;
    auto* ze = z->add_subcommand("export", "Write a zoo class as JSON");
    ze->add_option("uri", zoo_ref, "Zoo URI")->required();
    ze->add_option("--out", zoo_out, "Output file (default stdout)");
    auto* zl = z->add_subcommand("list", "List zoo URIs");

    std::string suite;
    bool rep_timing = false;
    auto* r = app.add_subcommand("reproduce", "Run a claim-vs-computed suite (core, long)");
    r->add_option("suite", suite, "Suite name")->required();
    r->add_flag("--timing", rep_timing, "Show per-claim seconds");
    add_common(r, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (d->parsed()) return cmd_dims(dims, common);
        if (s->parsed()) return cmd_simulate(sim, common);
        if (g->parsed()) return cmd_game(game, common);
        if (a->parsed()) return cmd_agnostic(ag, common);
        if (ze->parsed()) {
            if (zoo_ref.rfind("zoo:", 0) != 0) throw ArgumentError("not a zoo URI: '" + zoo_ref + "'");
            emit(class_to_json(resolve_class(zoo_ref)), zoo_out);
            return ok;
        }
        if (zl->parsed()) {
            for (const auto& u : zoo_uris()) std::cout << u << "\n";
            return ok;
        }
        if (r->parsed()) return cmd_reproduce(suite, rep_timing, common);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return budget;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return invariant;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return invariant;
    } catch (const ProtocolError& e) {
        std::cerr << "protocol error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        // ArgumentError, UnsupportedError, StateError
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}
