#include "sdl/simulate.hpp"

#include "sdl/error.hpp"
#include "sdl/labelling_game.hpp"

#include "json.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace sdl {

namespace {

void require_state(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active) {
    if (vs.universe() != cls.num_concepts()) throw ArgumentError("version space does not belong to this class");
    if (active.universe() != cls.num_points()) throw ArgumentError("active set does not belong to this class");
    if (vs.empty()) throw StateError("empty version space");
    if (active.empty()) throw StateError("no active points left");
}

int successor_value(Engine& engine, const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active,
                    PointId x, LabelId y) {
    VersionSpace next = restrict(cls, vs, {x, y});
    if (next.empty()) return -1;
    return engine.m_sd(cls, next, active.without(x));
}

}  // namespace

LabeledExample sd_soa_step(Engine& engine, const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active) {
    require_state(cls, vs, active);
    LabeledExample best;
    int best_score = 1 << 20;
    for (auto x : active.members()) {
        std::vector<int> v(cls.num_labels());
        for (LabelId y = 0; y < cls.num_labels(); ++y) v[y] = successor_value(engine, cls, vs, active, x, y);
        for (LabelId y = 0; y < cls.num_labels(); ++y) {
            int score = -1;
            for (LabelId other = 0; other < cls.num_labels(); ++other)
                if (other != y) score = std::max(score, v[other]);
            if (score < best_score) {
                best_score = score;
                best = {x, y};
            }
        }
    }
    return best;
}

LabeledExample sd_soa_step(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active) {
    Engine engine;
    return sd_soa_step(engine, cls, vs, active);
}

LabelId optimal_adversary_answer(Engine& engine, const ConceptClass& cls, const VersionSpace& vs,
                                 const ActiveSet& active, PointId point, LabelId predicted) {
    require_state(cls, vs, active);
    if (!active.contains(point)) throw ArgumentError("point " + std::to_string(point) + " is not active");
    LabelId best = 0;
    int best_score = -(1 << 20);
    bool best_mistake = false;
    for (auto y : realizable_labels(cls, vs, point)) {
        const bool mistake = y != predicted;
        const int score = (mistake ? 1 : 0) + successor_value(engine, cls, vs, active, point, y);
        if (score > best_score || (score == best_score && mistake && !best_mistake)) {
            best = y;
            best_score = score;
            best_mistake = mistake;
        }
    }
    return best;
}

LabelId optimal_adversary_answer(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active,
                                 PointId point, LabelId predicted) {
    Engine engine;
    return optimal_adversary_answer(engine, cls, vs, active, point, predicted);
}

LabeledExample SdSoaLearner::choose(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active,
                                    std::size_t) {
    return sd_soa_step(engine_, cls, vs, active);
}

LabeledExample ScriptedLearner::choose(const ConceptClass&, const VersionSpace&, const ActiveSet&, std::size_t step) {
    if (step > moves_.size()) throw ProtocolError(step, "learner script exhausted");
    return moves_[step - 1];
}

ActiveSet OptimalAdversary::domain(const ConceptClass& cls) {
    auto best = engine_.m_sd_max(cls, VersionSpace::full(cls), ActiveSet::full(cls));
    return ActiveSet::of(cls, best.points);
}

LabelId OptimalAdversary::answer(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active,
                                 PointId point, LabelId predicted, std::size_t) {
    return optimal_adversary_answer(engine_, cls, vs, active, point, predicted);
}

LabelId FixedTargetAdversary::answer(const ConceptClass& cls, const VersionSpace&, const ActiveSet&, PointId point,
                                     LabelId, std::size_t step) {
    if (target_ >= cls.num_concepts()) throw ProtocolError(step, "target concept " + std::to_string(target_) + " does not exist");
    return cls.at(target_, point);
}

LabelId ScriptedAdversary::answer(const ConceptClass&, const VersionSpace&, const ActiveSet&, PointId, LabelId,
                                  std::size_t step) {
    if (step > answers_.size()) throw ProtocolError(step, "adversary script exhausted");
    return answers_[step - 1];
}

Transcript run_episode(const ConceptClass& cls, Learner& learner, Adversary& adversary, std::uint64_t seed,
                       std::optional<ActiveSet> domain, std::string class_id) {
    if (cls.empty()) throw StateError("cannot run an episode on the empty class");
    ActiveSet active = domain ? *domain : adversary.domain(cls);
    if (active.universe() != cls.num_points()) throw ArgumentError("domain does not belong to this class");
    Transcript tr;
    tr.class_id = std::move(class_id);
    tr.learner = learner.name();
    tr.adversary = adversary.name();
    tr.seed = seed;
    tr.domain = active.members();

    VersionSpace vs = VersionSpace::full(cls);
    for (std::size_t step = 1; !active.empty(); ++step) {
        LabeledExample move = learner.choose(cls, vs, active, step);
        if (move.point >= cls.num_points() || !active.contains(move.point))
            throw ProtocolError(step, "learner chose point " + std::to_string(move.point) + ", which is not unlabelled");
        if (move.label >= cls.num_labels())
            throw ProtocolError(step, "learner predicted label " + std::to_string(move.label) + ", which does not exist");
        LabelId truth = adversary.answer(cls, vs, active, move.point, move.label, step);
        if (truth >= cls.num_labels())
            throw ProtocolError(step, "adversary answered label " + std::to_string(truth) + ", which does not exist");
        VersionSpace next = restrict(cls, vs, {move.point, truth});
        if (next.empty()) throw ProtocolError(step, "adversary answer " + std::to_string(truth) + " is not realizable");
        vs = std::move(next);
        active.erase(move.point);
        const bool mistake = truth != move.label;
        tr.mistakes += mistake ? 1 : 0;
        tr.steps.push_back({move.point, move.label, truth, mistake, vs.size()});
    }
    return tr;
}

std::string Transcript::to_jsonl() const {
    std::string out;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        nlohmann::ordered_json j;
        j["step"] = i + 1;
        j["point"] = s.point;
        j["predicted"] = s.predicted;
        j["truth"] = s.truth;
        j["mistake"] = s.mistake;
        j["vs_size"] = s.vs_size;
        out += j.dump() + "\n";
    }
    nlohmann::ordered_json j;
    j["summary"] = true;
    j["class_id"] = class_id;
    j["learner"] = learner;
    j["adversary"] = adversary;
    j["seed"] = seed;
    j["domain"] = domain;
    j["steps"] = steps.size();
    j["mistakes"] = mistakes;
    out += j.dump() + "\n";
    return out;
}

std::string Transcript::to_table(const ConceptClass& cls) const {
    std::ostringstream o;
    o << "class " << class_id << "  learner " << learner << "  adversary " << adversary << "  seed " << seed << "\n";
    o << std::left << std::setw(6) << "step" << std::setw(12) << "point" << std::setw(12) << "predicted"
      << std::setw(12) << "truth" << std::setw(9) << "mistake" << "|vs|\n";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        o << std::setw(6) << i + 1 << std::setw(12) << cls.point_name(s.point) << std::setw(12)
          << cls.label_name(s.predicted) << std::setw(12) << cls.label_name(s.truth) << std::setw(9)
          << (s.mistake ? "yes" : "") << s.vs_size << "\n";
    }
    o << "mistakes: " << mistakes << "\n";
    return o.str();
}

// ---------------------------------------------------------------------------

std::string GameRecord::to_json() const {
    nlohmann::ordered_json j;
    j["moves"] = moves;
    j["rounds"] = rounds;
    j["payout"] = payout ? nlohmann::ordered_json(*payout) : nlohmann::ordered_json(nullptr);
    j["quit"] = quit;
    return j.dump(2) + "\n";
}

namespace {

std::optional<std::uint32_t> parse_id(const std::string& tok, const std::vector<std::string>& names, char prefix,
                                      std::size_t limit) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == tok) return static_cast<std::uint32_t>(i);
    std::string digits = tok;
    if (!digits.empty() && digits[0] == prefix) digits.erase(0, 1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return std::nullopt;
    if (digits.size() > 9) return std::nullopt;
    auto v = static_cast<std::size_t>(std::stoul(digits));
    if (v >= limit) return std::nullopt;
    return static_cast<std::uint32_t>(v);
}

std::vector<std::string> split(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
}

class GameSession {
public:
    using Mask = LabellingGameOracle::Mask;

    GameSession(const ConceptClass& cls, const ActiveSet& active, bool multiclass, GameSide human, std::istream& in,
                std::ostream& out)
        : cls_(cls), oracle_(cls, active, multiclass), human_(human), in_(in), out_(out) {}

    GameRecord run() {
        Mask h = oracle_.all_concepts();
        Mask open = oracle_.all_points();
        while (true) {
            if (h == 0) return finish(-1, "labelling is unrealizable");
            if (open == 0) return finish(record_.rounds, "all points labelled");
            status(h, open);

            // Player A
            Mask c = 0;
            std::vector<LabelId> labels(oracle_.points().size(), 0);
            std::vector<std::uint8_t> designation(oracle_.points().size(), 0);
            if (human_ == GameSide::adversary) {
                if (!human_adversary(open, c, labels, designation)) return quit();
            } else {
                auto mv = oracle_.best_adversary_move(h, open);
                c = mv.labelled;
                labels = mv.labels;
                designation = mv.designation;
            }
            h = oracle_.consistent(h, c, labels);
            open &= ~c;
            log("A labels " + describe_labels(c, labels));
            if (h == 0) return finish(-1, "labelling is unrealizable");
            if (open == 0) return finish(record_.rounds, "all points labelled");
            if (oracle_.multiclass()) log("A designates " + describe_designation(open, designation));

            // Player B
            std::uint32_t j = 0;
            LabelId y = 0;
            if (human_ == GameSide::learner) {
                if (!human_learner(open, designation, j, y)) return quit();
            } else {
                auto mv = oracle_.best_learner_move(h, open, designation);
                j = mv.point;
                y = mv.label;
            }
            h = oracle_.consistent(h, j, y);
            open &= ~(Mask(1) << j);
            ++record_.rounds;
            log("B labels " + cls_.point_name(oracle_.points()[j]) + "=" + cls_.label_name(y));
        }
    }

private:
    const ConceptClass& cls_;
    LabellingGameOracle oracle_;
    GameSide human_;
    std::istream& in_;
    std::ostream& out_;
    GameRecord record_;

    void log(const std::string& s) {
        record_.moves.push_back(s);
        out_ << s << "\n";
    }

    GameRecord finish(int payout, const std::string& why) {
        record_.payout = payout;
        out_ << "game over (" << why << "): payout " << payout << "\n";
        return record_;
    }

    GameRecord quit() {
        record_.quit = true;
        out_ << "game stopped after " << record_.rounds << " round(s)\n";
        return record_;
    }

    std::optional<std::uint32_t> local_of(const std::string& tok) const {
        auto x = parse_id(tok, cls_.point_names(), 'x', cls_.num_points());
        if (!x) return std::nullopt;
        const auto& pts = oracle_.points();
        auto it = std::find(pts.begin(), pts.end(), *x);
        if (it == pts.end()) return std::nullopt;
        return static_cast<std::uint32_t>(it - pts.begin());
    }

    std::string describe_labels(Mask c, const std::vector<LabelId>& labels) const {
        if (c == 0) return "nothing";
        std::string s;
        for (std::uint32_t j = 0; j < oracle_.points().size(); ++j)
            if (c >> j & 1u) s += (s.empty() ? "" : " ") + cls_.point_name(oracle_.points()[j]) + "=" + cls_.label_name(labels[j]);
        return s;
    }

    std::string describe_designation(Mask open, const std::vector<std::uint8_t>& d) const {
        std::string s;
        for (std::uint32_t j = 0; j < oracle_.points().size(); ++j)
            if (open >> j & 1u) {
                auto [a, b] = oracle_.pairs()[d[j]];
                s += (s.empty() ? "" : " ") + cls_.point_name(oracle_.points()[j]) + "=" + cls_.label_name(a) + "/" +
                     cls_.label_name(b);
            }
        return s;
    }

    void status(Mask h, Mask open) {
        std::string pts;
        for (std::uint32_t j = 0; j < oracle_.points().size(); ++j)
            if (open >> j & 1u) pts += " " + cls_.point_name(oracle_.points()[j]);
        out_ << "round " << record_.rounds + 1 << ": unlabelled" << pts << "; realizable concepts " << std::popcount(h)
             << "\n";
    }

    bool read_line(const std::string& prompt, std::string& line) {
        out_ << prompt << std::flush;
        if (!std::getline(in_, line)) return false;
        return line != "quit" && line != "q";
    }

    bool human_adversary(Mask open, Mask& c, std::vector<LabelId>& labels, std::vector<std::uint8_t>& designation) {
        std::string line;
        while (true) {
            if (!read_line("A> label points (x=y ..., '-' for none): ", line)) return false;
            std::string err;
            Mask cc = 0;
            auto ll = labels;
            auto toks = split(line);
            if (!(toks.size() == 1 && toks[0] == "-")) {
                for (const auto& t : toks) {
                    auto eq = t.find('=');
                    auto j = eq == std::string::npos ? std::nullopt : local_of(t.substr(0, eq));
                    auto y = eq == std::string::npos ? std::nullopt
                                                     : parse_id(t.substr(eq + 1), cls_.label_names(), 'y', cls_.num_labels());
                    if (!j || !y) {
                        err = "cannot read '" + t + "'";
                        break;
                    }
                    if (!(open >> *j & 1u) || (cc >> *j & 1u)) {
                        err = "point " + t.substr(0, eq) + " is already labelled";
                        break;
                    }
                    cc |= Mask(1) << *j;
                    ll[*j] = *y;
                }
            }
            if (!err.empty()) {
                out_ << "rejected: " << err << "\n";
                continue;
            }
            c = cc;
            labels = ll;
            break;
        }
        const Mask rest = open & ~c;
        if (!oracle_.multiclass() || rest == 0) return true;
        while (true) {
            if (!read_line("A> designate two labels per open point (x=a/b ...): ", line)) return false;
            std::string err;
            auto d = designation;
            Mask seen = 0;
            for (const auto& t : split(line)) {
                auto eq = t.find('=');
                auto slash = t.find('/', eq == std::string::npos ? 0 : eq);
                auto j = eq == std::string::npos ? std::nullopt : local_of(t.substr(0, eq));
                std::optional<std::uint32_t> a, b;
                if (eq != std::string::npos && slash != std::string::npos) {
                    a = parse_id(t.substr(eq + 1, slash - eq - 1), cls_.label_names(), 'y', cls_.num_labels());
                    b = parse_id(t.substr(slash + 1), cls_.label_names(), 'y', cls_.num_labels());
                }
                if (!j || !a || !b) {
                    err = "cannot read '" + t + "'";
                    break;
                }
                if (!(rest >> *j & 1u)) {
                    err = "point " + t.substr(0, eq) + " is not open";
                    break;
                }
                if (*a == *b) {
                    err = "the two designated labels must differ";
                    break;
                }
                auto pair = std::minmax(*a, *b);
                const auto& pairs = oracle_.pairs();
                auto it = std::find(pairs.begin(), pairs.end(), std::pair<LabelId, LabelId>(pair.first, pair.second));
                d[*j] = static_cast<std::uint8_t>(it - pairs.begin());
                seen |= Mask(1) << *j;
            }
            if (err.empty() && seen != rest) err = "every open point needs a designation";
            if (!err.empty()) {
                out_ << "rejected: " << err << "\n";
                continue;
            }
            designation = d;
            return true;
        }
    }

    bool human_learner(Mask open, const std::vector<std::uint8_t>& designation, std::uint32_t& j, LabelId& y) {
        std::string line;
        while (true) {
            if (!read_line("B> label one point (x=y): ", line)) return false;
            auto toks = split(line);
            std::string err;
            if (toks.size() != 1 || toks[0].find('=') == std::string::npos) {
                err = "expected exactly one x=y";
            } else {
                auto eq = toks[0].find('=');
                auto jj = local_of(toks[0].substr(0, eq));
                auto yy = parse_id(toks[0].substr(eq + 1), cls_.label_names(), 'y', cls_.num_labels());
                if (!jj || !yy) {
                    err = "cannot read '" + toks[0] + "'";
                } else if (!(open >> *jj & 1u)) {
                    err = "point is already labelled";
                } else {
                    auto [a, b] = oracle_.pairs()[designation[*jj]];
                    if (*yy != a && *yy != b) {
                        err = "label must be one of the designated pair";
                    } else {
                        j = *jj;
                        y = *yy;
                        return true;
                    }
                }
            }
            out_ << "rejected: " << err << "\n";
        }
    }
};

}  // namespace

GameRecord play_labelling_game(const ConceptClass& cls, const ActiveSet& active, bool multiclass, GameSide human,
                               std::istream& in, std::ostream& out) {
    GameSession session(cls, active, multiclass, human, in, out);
    return session.run();
}

}  // namespace sdl
