#pragma once

#include "sdl/concept_class.hpp"
#include "sdl/dimensions.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sdl {

struct TranscriptStep {
    PointId point = 0;
    LabelId predicted = 0;
    LabelId truth = 0;
    bool mistake = false;
    std::size_t vs_size = 0;  // after the answer
};

struct Transcript {
    std::string class_id;
    std::string learner;
    std::string adversary;
    std::uint64_t seed = 0;
    std::vector<PointId> domain;  // the points played, ascending
    std::vector<TranscriptStep> steps;
    int mistakes = 0;

    /// One JSON object per step, then a summary line.
    std::string to_jsonl() const;
    std::string to_table(const ConceptClass& cls) const;
};

/// SD-SOA move: the pair (x, y) minimizing max over y'' != y of m_sd(vs_(x,y''), active - x),
/// ties to the lowest point, then the lowest label. Throws StateError on an empty state.
LabeledExample sd_soa_step(Engine& engine, const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active);
LabeledExample sd_soa_step(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active);

/// Realizable answer maximizing mistake + m_sd of the successor; ties prefer a
/// mistake, then the lowest label.
LabelId optimal_adversary_answer(Engine& engine, const ConceptClass& cls, const VersionSpace& vs,
                                 const ActiveSet& active, PointId point, LabelId predicted);
LabelId optimal_adversary_answer(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active,
                                 PointId point, LabelId predicted);

class Learner {
public:
    virtual ~Learner() = default;
    virtual std::string name() const = 0;
    /// `step` is 1-based.
    virtual LabeledExample choose(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active,
                                  std::size_t step) = 0;
};

class Adversary {
public:
    virtual ~Adversary() = default;
    virtual std::string name() const = 0;
    /// The finite set S the episode is played on. Default: the whole domain.
    virtual ActiveSet domain(const ConceptClass& cls) { return ActiveSet::full(cls); }
    virtual LabelId answer(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active, PointId point,
                           LabelId predicted, std::size_t step) = 0;
};

class SdSoaLearner : public Learner {
public:
    explicit SdSoaLearner(Engine& engine) : engine_(engine) {}
    std::string name() const override { return "sd_soa"; }
    LabeledExample choose(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active,
                          std::size_t step) override;

private:
    Engine& engine_;
};

/// Plays the given moves in order; running out or picking a labelled point is a ProtocolError.
class ScriptedLearner : public Learner {
public:
    explicit ScriptedLearner(std::vector<LabeledExample> moves) : moves_(std::move(moves)) {}
    std::string name() const override { return "scripted"; }
    LabeledExample choose(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active,
                          std::size_t step) override;

private:
    std::vector<LabeledExample> moves_;
};

/// Interactive hook: the callback decides each move.
class CallbackLearner : public Learner {
public:
    using Fn = std::function<LabeledExample(const ConceptClass&, const VersionSpace&, const ActiveSet&, std::size_t)>;
    explicit CallbackLearner(Fn fn, std::string name = "interactive") : fn_(std::move(fn)), name_(std::move(name)) {}
    std::string name() const override { return name_; }
    LabeledExample choose(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active,
                          std::size_t step) override {
        return fn_(cls, vs, active, step);
    }

private:
    Fn fn_;
    std::string name_;
};

/// Picks S maximizing the self-directed value (unless one is given), then answers optimally.
class OptimalAdversary : public Adversary {
public:
    explicit OptimalAdversary(Engine& engine) : engine_(engine) {}
    std::string name() const override { return "optimal"; }
    ActiveSet domain(const ConceptClass& cls) override;
    LabelId answer(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active, PointId point,
                   LabelId predicted, std::size_t step) override;

private:
    Engine& engine_;
};

class FixedTargetAdversary : public Adversary {
public:
    explicit FixedTargetAdversary(ConceptId target) : target_(target) {}
    std::string name() const override { return "fixed_target:" + std::to_string(target_); }
    LabelId answer(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active, PointId point,
                   LabelId predicted, std::size_t step) override;

private:
    ConceptId target_;
};

/// Answers with the given labels in order.
class ScriptedAdversary : public Adversary {
public:
    explicit ScriptedAdversary(std::vector<LabelId> answers) : answers_(std::move(answers)) {}
    std::string name() const override { return "scripted"; }
    LabelId answer(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active, PointId point,
                   LabelId predicted, std::size_t step) override;

private:
    std::vector<LabelId> answers_;
};

/// Runs the protocol until every point of the domain is labelled. `domain`
/// overrides the adversary's choice of S. Protocol breaches raise ProtocolError.
Transcript run_episode(const ConceptClass& cls, Learner& learner, Adversary& adversary, std::uint64_t seed = 0,
                       std::optional<ActiveSet> domain = std::nullopt, std::string class_id = {});

// ---------------------------------------------------------------------------
// Labelling game session

enum class GameSide { none, adversary, learner };

struct GameRecord {
    std::vector<std::string> moves;
    int rounds = 0;
    std::optional<int> payout;  // set when the game finished
    bool quit = false;

    std::string to_json() const;
};

/// Plays the labelling game on (cls, active). The human (if any) reads prompts from
/// `out` and answers on `in`; the machine side plays optimal moves from the
/// exhaustive oracle. Illegal human moves are rejected with a reason and re-prompted.
/// "quit" (or end of input) stops the game and returns the partial record.
///
/// Adversary input:  "x0=1 x3=0" (labels for C) or "-" for C empty; in multi-class
/// mode then "x1=0/2 x2=1/2" designating a label pair per open point.
/// Learner input:    "x1=0".  Points and labels may be given by id or by name.
GameRecord play_labelling_game(const ConceptClass& cls, const ActiveSet& active, bool multiclass, GameSide human,
                               std::istream& in, std::ostream& out);

}  // namespace sdl
