#pragma once

#include "sdl/concept_class.hpp"

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sdl {

/// Limits for the exponential searches. Exceeding any of them raises
/// BudgetExceeded with the bounds proven so far; a value is never guessed.
struct SearchBudget {
    std::size_t max_states = 200'000'000;
    std::optional<std::chrono::milliseconds> max_time;
    std::optional<int> depth_cap;
    /// Ordering enumeration (m_best / m_worst) refuses more distinct points than this.
    std::size_t max_order_points = 8;
    /// Candidate sets examined by teaching_dim / vc_dim.
    std::size_t max_subsets = 50'000'000;

    void validate() const;
};

struct EngineOptions {
    /// Alpha-beta windows, static bounds (1 <= value <= floor(log2 |vs|)) and
    /// MTD-style probing. Off = plain memoized minimax.
    bool pruning = true;
    /// Split the root into independent factors (product classes) and add their values.
    bool decompose = true;
    /// Root-level worker threads. Values never depend on this.
    unsigned workers = 1;
};

/// A value that is a maximum over subsets of the active points, with a maximizing subset.
struct SubsetValue {
    int value = 0;
    std::vector<PointId> points;
};

/// Memoizing minimax engine for the mistake-bound recursions. The memo is keyed
/// by canonical state tables, so one engine can serve many queries (and classes).
/// Thread-compatible: one engine may be used by one caller at a time; internally
/// it may fan out over `workers` threads.
class Engine {
public:
    explicit Engine(EngineOptions options = {}, SearchBudget budget = {});
    ~Engine();
    Engine(Engine&&) noexcept;
    Engine& operator=(Engine&&) noexcept;

    /// Optimal self-directed mistake bound when the learner must label exactly the
    /// active points (the game on a fixed S). -1 for empty vs.
    int m_sd(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active);
    /// max over S within `active` of the fixed-S value, with the first maximizing S found.
    SubsetValue m_sd_max(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active);
    /// Class measure: max over S within the domain. Not monotone in S (extra points
    /// can help the learner), hence the subset search.
    int m_sd(const ConceptClass& cls);

    /// Littlestone / adaptive-adversary bound on the active points.
    int online_bound(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active);
    /// Class measure; monotone in S, so the whole domain.
    int online_bound(const ConceptClass& cls);

    /// Optimal prediction along the fixed sequence `order` (a permutation of the active points).
    int fixed_order_bound(const ConceptClass& cls, const VersionSpace& vs, std::span<const PointId> order);

    /// Best / worst fixed ordering of exactly the active points.
    int m_best(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active);
    int m_worst(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active);
    SubsetValue m_best_max(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active);
    /// Class measures: m_best maximizes over S, m_worst is monotone in S (append points last).
    int m_best(const ConceptClass& cls);
    int m_worst(const ConceptClass& cls);

    /// States expanded by the last top-level call.
    std::size_t states_explored() const noexcept;
    std::size_t memo_size() const;
    void clear_memo();

    const EngineOptions& options() const noexcept;
    const SearchBudget& budget() const noexcept;
    void set_budget(SearchBudget budget);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// One-shot conveniences (fresh engine per call). The (cls, active) forms are the
// fixed-S values; the (cls) forms are the class measures.
int m_sd(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active, const SearchBudget& budget = {});
int m_sd(const ConceptClass& cls, const SearchBudget& budget = {});
int online_bound(const ConceptClass& cls, const ActiveSet& active, const SearchBudget& budget = {});
int online_bound(const ConceptClass& cls, const SearchBudget& budget = {});
int fixed_order_bound(const ConceptClass& cls, std::span<const PointId> order, const SearchBudget& budget = {});
int m_best(const ConceptClass& cls, const ActiveSet& active, const SearchBudget& budget = {});
int m_best(const ConceptClass& cls, const SearchBudget& budget = {});
int m_worst(const ConceptClass& cls, const ActiveSet& active, const SearchBudget& budget = {});
int m_worst(const ConceptClass& cls, const SearchBudget& budget = {});

/// Largest shattered subset (first found in lexicographic order). Binary classes only.
std::vector<PointId> shattered_set(const ConceptClass& cls, const SearchBudget& budget = {});
/// VC dimension; -1 for the empty class. Throws UnsupportedError unless num_labels == 2.
int vc_dim(const ConceptClass& cls, const SearchBudget& budget = {});

/// Smallest point set whose labels under `target` rule out every other concept.
std::vector<PointId> teaching_set(const ConceptClass& cls, ConceptId target, const SearchBudget& budget = {});
/// max over concepts of the teaching-set size; 0 for one concept, -1 for none.
int teaching_dim(const ConceptClass& cls, const SearchBudget& budget = {});

/// Hard caps of the exhaustive labelling-game oracle.
inline constexpr std::size_t kGameMaxPoints = 4;
inline constexpr std::size_t kGameMaxConcepts = 16;
inline constexpr std::size_t kGameMaxLabels = 3;

/// Minimax payout of the labelling game on (cls, active), by exhaustive play.
/// Binary mode needs num_labels == 2; multiclass mode lets the adversary designate
/// two labels per open point. Caps violated -> ArgumentError.
int labelling_game_value(const ConceptClass& cls, const ActiveSet& active, bool multiclass);

// ---------------------------------------------------------------------------
// Reports

enum class Measure { vc, ld, m_worst, m_best, m_sd, td };

const std::vector<Measure>& all_measures();
std::string measure_name(Measure m);
/// Accepts the canonical names plus "online" for ld. Throws ArgumentError.
Measure parse_measure(const std::string& name);

struct MeasureResult {
    enum class Status { ok, budget, unsupported };
    Status status = Status::ok;
    std::optional<int> value;
    /// Proven bounds (equal to value when ok).
    int lower = 0;
    int upper = 0;
    std::size_t states_explored = 0;
    double millis = 0;
    std::string message;
};

std::string status_name(MeasureResult::Status s);

struct DimReport {
    std::string class_id;
    std::map<Measure, MeasureResult> results;

    std::optional<int> value(Measure m) const;
    bool complete() const;
    /// ld >= m_worst >= m_best >= m_sd >= vc over the measures present with values.
    bool chain_holds() const;
};

/// Runs the requested measures on the full state of `cls`. Budget errors and
/// unsupported measures are recorded per measure. Throws InvariantViolation if
/// the mistake-bound chain fails among the computed values.
DimReport full_report(const ConceptClass& cls, std::span<const Measure> measures, const SearchBudget& budget = {},
                      EngineOptions options = {}, std::string class_id = {});

/// `with_timing` = false writes 0 for states_explored and millis so reports are
/// byte-stable across runs and worker counts.
std::string report_json(const DimReport& report, bool with_timing);
std::string report_csv(const DimReport& report, bool with_timing, bool header = true);

}  // namespace sdl
