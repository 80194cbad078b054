#include "sdl/dimensions.hpp"

#include "sdl/error.hpp"
#include "sdl/state_table.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace sdl {

const std::vector<Measure>& all_measures() {
    static const std::vector<Measure> all{Measure::vc, Measure::ld, Measure::m_worst,
                                          Measure::m_best, Measure::m_sd, Measure::td};
    return all;
}

std::string measure_name(Measure m) {
    switch (m) {
        case Measure::vc: return "vc";
        case Measure::ld: return "ld";
        case Measure::m_worst: return "m_worst";
        case Measure::m_best: return "m_best";
        case Measure::m_sd: return "m_sd";
        case Measure::td: return "td";
    }
    return "?";
}

Measure parse_measure(const std::string& name) {
    for (auto m : all_measures())
        if (measure_name(m) == name) return m;
    if (name == "online") return Measure::ld;
    throw ArgumentError("unknown measure '" + name + "' (expected vc, ld, m_worst, m_best, m_sd, td)");
}

std::string status_name(MeasureResult::Status s) {
    switch (s) {
        case MeasureResult::Status::ok: return "ok";
        case MeasureResult::Status::budget: return "budget";
        case MeasureResult::Status::unsupported: return "unsupported";
    }
    return "?";
}

std::optional<int> DimReport::value(Measure m) const {
    auto it = results.find(m);
    if (it == results.end()) return std::nullopt;
    return it->second.value;
}

bool DimReport::complete() const {
    return std::all_of(results.begin(), results.end(),
                       [](const auto& kv) { return kv.second.status == MeasureResult::Status::ok; });
}

bool DimReport::chain_holds() const {
    const Measure chain[] = {Measure::ld, Measure::m_worst, Measure::m_best, Measure::m_sd, Measure::vc};
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) {
            auto a = value(chain[i]);
            auto b = value(chain[j]);
            if (a && b && *a < *b) return false;
        }
    return true;
}

DimReport full_report(const ConceptClass& cls, std::span<const Measure> measures, const SearchBudget& budget,
                      EngineOptions options, std::string class_id) {
    budget.validate();
    DimReport report;
    report.class_id = std::move(class_id);
    std::vector<Measure> wanted(measures.begin(), measures.end());
    // Cheap and bounding measures first: m_sd and ld bracket the ordering measures.
    const Measure order[] = {Measure::vc, Measure::m_sd, Measure::ld, Measure::m_best, Measure::m_worst, Measure::td};
    Engine engine(options, budget);
    const int ub = cls.num_concepts() > 0 ? floor_log2(cls.num_concepts()) : -1;

    for (Measure m : order) {
        if (std::find(wanted.begin(), wanted.end(), m) == wanted.end()) continue;
        MeasureResult r;
        auto t0 = std::chrono::steady_clock::now();
        try {
            int v = 0;
            std::size_t states = 0;
            switch (m) {
                case Measure::vc: v = vc_dim(cls, budget); break;
                case Measure::td: v = teaching_dim(cls, budget); break;
                case Measure::m_sd: v = engine.m_sd(cls); states = engine.states_explored(); break;
                case Measure::ld: v = engine.online_bound(cls); states = engine.states_explored(); break;
                case Measure::m_best: v = engine.m_best(cls); states = engine.states_explored(); break;
                case Measure::m_worst: v = engine.m_worst(cls); states = engine.states_explored(); break;
            }
            r.value = v;
            r.lower = r.upper = v;
            r.states_explored = states;
        } catch (const BudgetExceeded& e) {
            r.status = MeasureResult::Status::budget;
            r.lower = e.lower();
            r.upper = e.upper();
            r.states_explored = e.states();
            r.message = e.what();
        } catch (const UnsupportedError& e) {
            r.status = MeasureResult::Status::unsupported;
            r.message = e.what();
        } catch (const ArgumentError& e) {
            // Ordering enumeration refused (too many distinct points): bracket by the chain.
            if (m != Measure::m_best && m != Measure::m_worst) throw;
            r.status = MeasureResult::Status::budget;
            auto lo = report.value(Measure::m_sd);
            auto hi = report.value(Measure::ld);
            r.lower = lo ? *lo : std::min(1, ub);
            r.upper = hi ? *hi : ub;
            r.message = e.what();
            if (lo && hi && *lo == *hi) {  // squeezed: the chain alone proves the value
                r.status = MeasureResult::Status::ok;
                r.value = *lo;
                r.message = "determined by m_sd = ld";
            }
        }
        r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        report.results[m] = std::move(r);
    }
    if (!report.chain_holds()) throw InvariantViolation("mistake-bound chain violated for class '" + report.class_id + "'");
    return report;
}

namespace {

nlohmann::json result_json(Measure m, const MeasureResult& r, bool with_timing) {
    nlohmann::json j;
    j["measure"] = measure_name(m);
    j["status"] = status_name(r.status);
    j["value"] = r.value ? nlohmann::json(*r.value) : nlohmann::json(nullptr);
    if (r.status != MeasureResult::Status::unsupported) {
        j["lower"] = r.lower;
        j["upper"] = r.upper;
    }
    j["states_explored"] = with_timing ? r.states_explored : 0;
    j["millis"] = with_timing ? r.millis : 0.0;
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

}  // namespace

std::string report_json(const DimReport& report, bool with_timing) {
    nlohmann::json j;
    j["class_id"] = report.class_id;
    j["measures"] = nlohmann::json::array();
    for (const auto& [m, r] : report.results) j["measures"].push_back(result_json(m, r, with_timing));
    j["complete"] = report.complete();
    j["chain_holds"] = report.chain_holds();
    return j.dump(2) + "\n";
}

std::string report_csv(const DimReport& report, bool with_timing, bool header) {
    std::ostringstream out;
    if (header) out << "class_id,measure,value,states_explored,millis,status,lower,upper\n";
    for (const auto& [m, r] : report.results) {
        out << report.class_id << ',' << measure_name(m) << ',';
        if (r.value) out << *r.value;
        out << ',' << (with_timing ? r.states_explored : 0) << ',';
        if (with_timing)
            out << r.millis;
        else
            out << 0;
        out << ',' << status_name(r.status) << ',';
        if (r.status != MeasureResult::Status::unsupported) out << r.lower << ',' << r.upper;
        else out << ',';
        out << '\n';
    }
    return out.str();
}

}  // namespace sdl
