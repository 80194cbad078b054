#include "sdl/agnostic.hpp"

#include "sdl/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <sstream>
#include <thread>

namespace sdl::agnostic {

std::uint64_t sauer_bound(std::uint64_t T, int d) {
    std::uint64_t total = 0;
    std::uint64_t c = 1;  // C(T, i)
    for (int i = 0; i <= d && std::uint64_t(i) <= T; ++i) {
        if (i > 0) {
            // c * (T - i + 1) / i, saturating
            unsigned __int128 next = (unsigned __int128)c * (T - i + 1) / i;
            c = next > UINT64_MAX ? UINT64_MAX : std::uint64_t(next);
        }
        total = total > UINT64_MAX - c ? UINT64_MAX : total + c;
    }
    return total;
}

ExpertPool project(const ConceptClass& cls, const SampleMultiset& sample, const SearchBudget& budget) {
    if (!cls.is_binary()) throw UnsupportedError("agnostic learning is defined for binary classes only");
    if (sample.points.empty()) throw ArgumentError("sample must contain at least one point");
    for (auto x : sample.points)
        if (x >= cls.num_points()) throw ArgumentError("sample point " + std::to_string(x) + " out of range");
    ExpertPool pool;
    pool.vc = vc_dim(cls, budget);
    std::map<std::vector<std::uint8_t>, bool> seen;
    for (ConceptId c = 0; c < cls.num_concepts(); ++c) {
        std::vector<std::uint8_t> a(sample.size());
        for (std::size_t t = 0; t < sample.size(); ++t) a[t] = static_cast<std::uint8_t>(cls.at(c, sample.points[t]));
        if (seen.emplace(a, true).second) pool.advice.push_back(std::move(a));
    }
    if (pool.vc >= 0 && pool.size() > sauer_bound(sample.size(), pool.vc))
        throw InvariantViolation("expert pool larger than the Sauer bound");
    return pool;
}

double mw_predict(const std::vector<double>& weights, const std::vector<std::uint8_t>& advice) {
    if (weights.size() != advice.size()) throw ArgumentError("mw_predict: weights and advice differ in length");
    double z = 0, ones = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        z += weights[i];
        if (advice[i]) ones += weights[i];
    }
    if (!(z > 0) || !std::isfinite(z)) throw NumericError("mw_predict: weights must sum to a positive finite value");
    return std::clamp(ones / z, 0.0, 1.0);
}

std::vector<double> mw_update(const std::vector<double>& weights, const std::vector<std::uint8_t>& advice, int label,
                              double eta) {
    if (weights.size() != advice.size()) throw ArgumentError("mw_update: weights and advice differ in length");
    if (eta < 0 || !std::isfinite(eta)) throw ArgumentError("mw_update: eta must be a finite value >= 0");
    const double shrink = std::exp(-eta);
    std::vector<double> out(weights);
    for (std::size_t i = 0; i < out.size(); ++i)
        if (int(advice[i]) != label) out[i] *= shrink;
    return out;
}

namespace {
std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t trial, std::uint64_t round, std::uint64_t stream) {
    return splitmix(splitmix(splitmix(splitmix(seed) ^ trial) ^ round) ^ stream);
}

double counter_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t round, std::uint64_t stream) {
    return double(counter_hash(seed, trial, round, stream) >> 11) * 0x1.0p-53;
}

LabelSource LabelSource::fixed(std::vector<std::uint8_t> labels) {
    LabelSource s;
    s.kind = Kind::fixed;
    s.labels = std::move(labels);
    return s;
}
LabelSource LabelSource::oblivious(std::uint64_t seed) {
    LabelSource s;
    s.kind = Kind::oblivious;
    s.seed = seed;
    return s;
}
LabelSource LabelSource::bernoulli_half() { return LabelSource{}; }
LabelSource LabelSource::adaptive(std::function<int(const History&)> rule) {
    LabelSource s;
    s.kind = Kind::adaptive;
    s.rule = rule ? std::move(rule) : [](const History& h) { return h.predictions.empty() ? 1 : 1 - h.predictions.back(); };
    return s;
}
LabelSource LabelSource::adversarial() {
    LabelSource s;
    s.kind = Kind::adversarial;
    return s;
}
LabelSource LabelSource::realizable(std::size_t expert) {
    LabelSource s;
    s.kind = Kind::realizable;
    s.expert = expert;
    return s;
}

std::string LabelSource::name() const {
    switch (kind) {
        case Kind::fixed: return "fixed";
        case Kind::oblivious: return "oblivious:" + std::to_string(seed);
        case Kind::bernoulli_half: return "bernoulli_half";
        case Kind::adaptive: return "adaptive";
        case Kind::adversarial: return "adversarial";
        case Kind::realizable: return "realizable:" + std::to_string(expert);
    }
    return "?";
}

double RegretReport::std_error() const { return trials > 0 ? std_regret / std::sqrt(double(trials)) : 0; }

namespace {

constexpr std::uint64_t kPredictionStream = 0;
constexpr std::uint64_t kLabelStream = 1;

TrialResult run_trial(const ExpertPool& pool, const LabelSource& source, std::size_t trial, std::uint64_t seed,
                      double eta) {
    const std::size_t N = pool.size(), T = pool.rounds();
    std::vector<double> w(N, 1.0);
    std::vector<std::uint8_t> advice(N);
    std::vector<std::size_t> expert_loss(N, 0);
    History h;
    h.trial = trial;
    TrialResult r;
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t i = 0; i < N; ++i) advice[i] = pool.advice[i][t];
        const double p = mw_predict(w, advice);
        h.round = t;
        h.p_hat = p;
        int y = 0;
        switch (source.kind) {
            case LabelSource::Kind::fixed: y = source.labels[t]; break;
            case LabelSource::Kind::oblivious: y = counter_uniform(source.seed, 0, t, kLabelStream) < 0.5; break;
            case LabelSource::Kind::bernoulli_half: y = counter_uniform(seed, trial, t, kLabelStream) < 0.5; break;
            case LabelSource::Kind::adaptive: y = source.rule(h) != 0; break;
            case LabelSource::Kind::adversarial: y = p < 0.5; break;
            case LabelSource::Kind::realizable: y = pool.advice[source.expert][t]; break;
        }
        const int y_hat = counter_uniform(seed, trial, t, kPredictionStream) < p;
        r.sampled_loss += y_hat != y;
        r.expected_loss += std::abs(p - y);
        for (std::size_t i = 0; i < N; ++i) expert_loss[i] += advice[i] != y;
        w = mw_update(w, advice, y, eta);
        // Rescale before underflow; predictions only see ratios.
        const double top = *std::max_element(w.begin(), w.end());
        if (top < 1e-150)
            for (auto& v : w) v /= top;
        h.predictions.push_back(static_cast<std::uint8_t>(y_hat));
        h.labels.push_back(static_cast<std::uint8_t>(y));
    }
    r.best_loss = *std::min_element(expert_loss.begin(), expert_loss.end());
    return r;
}

}  // namespace

RegretReport run_agnostic(const ConceptClass& cls, const SampleMultiset& sample, const LabelSource& source,
                          std::size_t trials, std::uint64_t seed, std::optional<double> eta, unsigned workers,
                          std::string class_id) {
    if (trials == 0) throw ArgumentError("trials must be >= 1");
    if (sample.points.empty()) throw ArgumentError("sample must contain at least one point (T >= 1)");
    ExpertPool pool = project(cls, sample);
    if (pool.size() == 0) throw ArgumentError("expert pool is empty (empty class)");
    const std::size_t N = pool.size(), T = pool.rounds();
    if (source.kind == LabelSource::Kind::fixed && source.labels.size() != T)
        throw ArgumentError("fixed label sequence has " + std::to_string(source.labels.size()) + " labels, expected " +
                            std::to_string(T));
    if (source.kind == LabelSource::Kind::fixed)
        for (auto v : source.labels)
            if (v > 1) throw ArgumentError("fixed labels must be 0 or 1");
    if (source.kind == LabelSource::Kind::realizable && source.expert >= N)
        throw ArgumentError("realizable source: expert " + std::to_string(source.expert) + " out of range");
    if (source.kind == LabelSource::Kind::adaptive && !source.rule) throw ArgumentError("adaptive source needs a rule");
    if (eta && (*eta < 0 || !std::isfinite(*eta))) throw ArgumentError("eta must be a finite value >= 0");

    RegretReport rep;
    rep.class_id = std::move(class_id);
    rep.label_source = source.name();
    rep.seed = seed;
    rep.trials = trials;
    rep.T = T;
    rep.N = N;
    rep.vc = pool.vc;
    rep.eta_default = !eta.has_value();
    rep.eta = eta ? *eta : std::sqrt(8.0 * std::log(double(N)) / double(T));
    rep.per_trial.resize(trials);

    // User rules are not assumed thread-safe.
    if (source.kind == LabelSource::Kind::adaptive) workers = 1;
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(trials)));
    if (workers == 1) {
        for (std::size_t i = 0; i < trials; ++i) rep.per_trial[i] = run_trial(pool, source, i, seed, rep.eta);
    } else {
        std::vector<std::thread> pool_threads;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool_threads.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < trials; i += workers)
                        rep.per_trial[i] = run_trial(pool, source, i, seed, rep.eta);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto& t : pool_threads) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    double sum = 0, sum_e = 0;
    rep.max_expected_regret = -1e300;
    for (const auto& r : rep.per_trial) {
        sum += r.regret();
        sum_e += r.expected_regret();
        rep.max_expected_regret = std::max(rep.max_expected_regret, r.expected_regret());
    }
    rep.mean_regret = sum / double(trials);
    rep.mean_expected_regret = sum_e / double(trials);
    double ss = 0;
    for (const auto& r : rep.per_trial) ss += (r.regret() - rep.mean_regret) * (r.regret() - rep.mean_regret);
    rep.std_regret = trials > 1 ? std::sqrt(ss / double(trials - 1)) : 0;
    rep.upper_bound = std::sqrt(0.5 * std::log(double(N)) * double(T));
    rep.lower_bound = std::sqrt(double(std::max(rep.vc, 0)) * double(T) / 8.0);
    return rep;
}

std::string RegretReport::to_json() const {
    nlohmann::ordered_json j;
    j["class_id"] = class_id;
    j["label_source"] = label_source;
    j["seed"] = seed;
    j["trials"] = trials;
    j["T"] = T;
    j["N"] = N;
    j["vc"] = vc;
    j["eta"] = eta;
    j["eta_default"] = eta_default;
    j["mean_regret"] = mean_regret;
    j["std_regret"] = std_regret;
    j["std_error"] = std_error();
    j["mean_expected_regret"] = mean_expected_regret;
    j["max_expected_regret"] = max_expected_regret;
    j["upper_bound"] = upper_bound;
    j["lower_bound"] = lower_bound;
    j["upper_bound_holds"] = upper_bound_holds();
    j["lower_bound_check"] = lower_bound_holds();
    auto& rows = j["per_trial"] = nlohmann::ordered_json::array();
    for (const auto& r : per_trial)
        rows.push_back({{"sampled_loss", r.sampled_loss}, {"expected_loss", r.expected_loss}, {"best_loss", r.best_loss}});
    return j.dump(2) + "\n";
}

std::string RegretReport::to_csv() const {
    std::ostringstream o;
    o.precision(17);
    o << "trial,sampled_loss,expected_loss,best_loss,regret,expected_regret\n";
    for (std::size_t i = 0; i < per_trial.size(); ++i) {
        const auto& r = per_trial[i];
        o << i << ',' << r.sampled_loss << ',' << r.expected_loss << ',' << r.best_loss << ',' << r.regret() << ','
          << r.expected_regret() << '\n';
    }
    return o.str();
}

SampleMultiset lower_bound_instance(const ConceptClass& cls, std::size_t k, const SearchBudget& budget) {
    if (!cls.is_binary()) throw UnsupportedError("lower_bound_instance needs a binary class");
    if (k == 0) throw ArgumentError("lower_bound_instance: k must be >= 1");
    auto shattered = shattered_set(cls, budget);
    if (shattered.empty()) throw ArgumentError("lower_bound_instance: class has VC dimension < 1");
    SampleMultiset s;
    for (auto x : shattered) s.points.insert(s.points.end(), k, x);
    return s;
}

Deviation khinchine_deviation(std::size_t k, std::size_t trials, std::uint64_t seed) {
    if (k == 0 || trials < 2) throw ArgumentError("khinchine_deviation: need k >= 1 and trials >= 2");
    std::vector<double> dev(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        std::size_t r = 0;
        for (std::size_t t = 0; t < k; ++t) r += counter_uniform(seed, i, t, kLabelStream) < 0.5;
        dev[i] = std::abs(double(r) - double(k) / 2);
    }
    Deviation d;
    double sum = 0;
    for (double v : dev) sum += v;
    d.mean = sum / double(trials);
    double ss = 0;
    for (double v : dev) ss += (v - d.mean) * (v - d.mean);
    d.std_error = std::sqrt(ss / double(trials - 1)) / std::sqrt(double(trials));
    d.bound = std::sqrt(double(k) / 8.0);
    return d;
}

}  // namespace sdl::agnostic
