#include "sdl/concept_class.hpp"

#include "sdl/error.hpp"
#include "sdl/state_table.hpp"

#include <unordered_set>

namespace sdl {

namespace {

struct RowHash {
    std::size_t operator()(const std::vector<LabelId>& r) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (auto v : r) h = (h ^ v) * 0x100000001b3ull;
        return h;
    }
};

}  // namespace

ConceptClass ConceptClass::from_rows(std::size_t num_points, std::size_t num_labels,
                                     const std::vector<std::vector<LabelId>>& rows, DuplicateRows policy,
                                     std::vector<std::string> point_names, std::vector<std::string> label_names) {
    if (num_labels < 2) throw ArgumentError("a concept class needs at least 2 labels, got " + std::to_string(num_labels));
    if (!point_names.empty() && point_names.size() != num_points)
        throw ArgumentError("point_names has " + std::to_string(point_names.size()) + " entries, expected " +
                            std::to_string(num_points));
    if (!label_names.empty() && label_names.size() != num_labels)
        throw ArgumentError("label_names has " + std::to_string(label_names.size()) + " entries, expected " +
                            std::to_string(num_labels));

    ConceptClass cls;
    cls.num_points_ = num_points;
    cls.num_labels_ = num_labels;
    cls.point_names_ = std::move(point_names);
    cls.label_names_ = std::move(label_names);

    std::unordered_set<std::vector<LabelId>, RowHash> seen;
    seen.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != num_points)
            throw ArgumentError("row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                                " entries, expected " + std::to_string(num_points));
        for (std::size_t x = 0; x < row.size(); ++x)
            if (row[x] >= num_labels)
                throw ArgumentError("row " + std::to_string(i) + ", point " + std::to_string(x) + ": label " +
                                    std::to_string(row[x]) + " out of range");
        if (!seen.insert(row).second) {
            if (policy == DuplicateRows::reject) throw ArgumentError("row " + std::to_string(i) + " duplicates an earlier row");
            continue;
        }
        cls.table_.insert(cls.table_.end(), row.begin(), row.end());
        ++cls.num_concepts_;
    }
    return cls;
}

std::string ConceptClass::point_name(PointId x) const {
    return x < point_names_.size() ? point_names_[x] : "x" + std::to_string(x);
}

std::string ConceptClass::label_name(LabelId y) const {
    return y < label_names_.size() ? label_names_[y] : std::to_string(y);
}

ConceptClass ConceptClass::select(std::span<const ConceptId> concepts) const {
    ConceptClass out = *this;
    out.table_.clear();
    out.num_concepts_ = 0;
    for (auto c : concepts) {
        if (c >= num_concepts_) throw ArgumentError("concept id " + std::to_string(c) + " out of range");
        auto r = row(c);
        out.table_.insert(out.table_.end(), r.begin(), r.end());
        ++out.num_concepts_;
    }
    return out;
}

VersionSpace VersionSpace::full(const ConceptClass& cls) {
    VersionSpace vs(cls.num_concepts());
    vs.bits_.set();
    return vs;
}

VersionSpace VersionSpace::of(const ConceptClass& cls, std::span<const ConceptId> members) {
    VersionSpace vs(cls.num_concepts());
    for (auto c : members) {
        if (c >= cls.num_concepts()) throw ArgumentError("concept id " + std::to_string(c) + " out of range");
        vs.insert(c);
    }
    return vs;
}

std::vector<ConceptId> VersionSpace::members() const {
    std::vector<ConceptId> out;
    out.reserve(bits_.count());
    for (auto i = bits_.find_first(); i != decltype(bits_)::npos; i = bits_.find_next(i))
        out.push_back(static_cast<ConceptId>(i));
    return out;
}

ActiveSet ActiveSet::full(const ConceptClass& cls) {
    ActiveSet a(cls.num_points());
    a.bits_.set();
    return a;
}

ActiveSet ActiveSet::of(const ConceptClass& cls, std::span<const PointId> points) {
    ActiveSet a(cls.num_points());
    for (auto x : points) {
        if (x >= cls.num_points()) throw ArgumentError("point id " + std::to_string(x) + " out of range");
        a.insert(x);
    }
    return a;
}

std::vector<PointId> ActiveSet::members() const {
    std::vector<PointId> out;
    out.reserve(bits_.count());
    for (auto i = bits_.find_first(); i != decltype(bits_)::npos; i = bits_.find_next(i))
        out.push_back(static_cast<PointId>(i));
    return out;
}

void check_example(const ConceptClass& cls, const LabeledExample& ex) {
    if (ex.point >= cls.num_points())
        throw ArgumentError("point id " + std::to_string(ex.point) + " out of range (class has " +
                            std::to_string(cls.num_points()) + " points)");
    if (ex.label >= cls.num_labels())
        throw ArgumentError("label id " + std::to_string(ex.label) + " out of range (class has " +
                            std::to_string(cls.num_labels()) + " labels)");
}

namespace {

void check_universe(const ConceptClass& cls, const VersionSpace& vs) {
    if (vs.universe() != cls.num_concepts()) throw ArgumentError("version space does not belong to this class");
}

void check_universe(const ConceptClass& cls, const ActiveSet& active) {
    if (active.universe() != cls.num_points()) throw ArgumentError("active set does not belong to this class");
}

}  // namespace

VersionSpace restrict(const ConceptClass& cls, const VersionSpace& vs, const LabeledExample& ex) {
    check_example(cls, ex);
    check_universe(cls, vs);
    VersionSpace out(cls.num_concepts());
    for (auto c : vs.members())
        if (cls.at(c, ex.point) == ex.label) out.insert(c);
    return out;
}

std::vector<LabelId> realizable_labels(const ConceptClass& cls, const VersionSpace& vs, PointId point) {
    check_universe(cls, vs);
    if (vs.empty()) throw StateError("realizable_labels: empty version space");
    if (point >= cls.num_points()) throw ArgumentError("point id " + std::to_string(point) + " out of range");
    std::vector<bool> seen(cls.num_labels(), false);
    for (auto c : vs.members()) seen[cls.at(c, point)] = true;
    std::vector<LabelId> out;
    for (LabelId y = 0; y < seen.size(); ++y)
        if (seen[y]) out.push_back(y);
    return out;
}

ActiveSet forced_point_reduction(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active) {
    check_universe(cls, vs);
    check_universe(cls, active);
    ActiveSet out = active;
    auto members = vs.members();
    for (auto x : active.members()) {
        bool forced = true;
        for (std::size_t i = 1; i < members.size() && forced; ++i)
            forced = cls.at(members[i], x) == cls.at(members[0], x);
        if (forced) out.erase(x);
    }
    return out;
}

CanonicalKey canonical_key(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active) {
    check_universe(cls, vs);
    check_universe(cls, active);
    auto points = active.members();
    StateTable t = make_table(cls, vs, points);
    canonicalize(t, ColumnOrder::free);
    return CanonicalKey{table_key(t, 'S')};
}

}  // namespace sdl
