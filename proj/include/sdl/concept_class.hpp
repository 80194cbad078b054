#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace sdl {

using PointId = std::uint32_t;
using LabelId = std::uint32_t;
using ConceptId = std::uint32_t;

struct LabeledExample {
    PointId point = 0;
    LabelId label = 0;
    friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

enum class DuplicateRows { reject, dedupe };

/// A finite concept class: `num_concepts` x `num_points` matrix of label ids.
/// Rows are pairwise distinct. Zero rows encodes the empty class.
class ConceptClass {
public:
    ConceptClass() = default;

    /// Validates the table. Duplicate rows either raise ArgumentError or are
    /// dropped keeping the first occurrence.
    static ConceptClass from_rows(std::size_t num_points, std::size_t num_labels,
                                  const std::vector<std::vector<LabelId>>& rows,
                                  DuplicateRows policy = DuplicateRows::dedupe,
                                  std::vector<std::string> point_names = {},
                                  std::vector<std::string> label_names = {});

    std::size_t num_points() const noexcept { return num_points_; }
    std::size_t num_labels() const noexcept { return num_labels_; }
    std::size_t num_concepts() const noexcept { return num_concepts_; }
    bool empty() const noexcept { return num_concepts_ == 0; }
    bool is_binary() const noexcept { return num_labels_ == 2; }

    LabelId at(ConceptId c, PointId x) const { return table_[std::size_t(c) * num_points_ + x]; }
    std::span<const LabelId> row(ConceptId c) const {
        return {table_.data() + std::size_t(c) * num_points_, num_points_};
    }

    const std::vector<std::string>& point_names() const noexcept { return point_names_; }
    const std::vector<std::string>& label_names() const noexcept { return label_names_; }
    std::string point_name(PointId x) const;
    std::string label_name(LabelId y) const;

    /// Sub-class made of the given concepts (in the given order).
    ConceptClass select(std::span<const ConceptId> concepts) const;

    friend bool operator==(const ConceptClass&, const ConceptClass&) = default;

private:
    std::size_t num_points_ = 0;
    std::size_t num_labels_ = 2;
    std::size_t num_concepts_ = 0;
    std::vector<LabelId> table_;
    std::vector<std::string> point_names_;
    std::vector<std::string> label_names_;
};

/// Concepts still consistent with the examples seen so far.
class VersionSpace {
public:
    VersionSpace() = default;
    explicit VersionSpace(std::size_t universe) : bits_(universe) {}

    static VersionSpace full(const ConceptClass& cls);
    static VersionSpace of(const ConceptClass& cls, std::span<const ConceptId> members);

    std::size_t universe() const noexcept { return bits_.size(); }
    std::size_t size() const noexcept { return bits_.count(); }
    bool empty() const noexcept { return bits_.none(); }
    bool contains(ConceptId c) const { return c < bits_.size() && bits_.test(c); }
    void insert(ConceptId c) { bits_.set(c); }
    std::vector<ConceptId> members() const;
    bool is_subset_of(const VersionSpace& other) const { return bits_.is_subset_of(other.bits_); }

    friend bool operator==(const VersionSpace&, const VersionSpace&) = default;

private:
    boost::dynamic_bitset<std::uint64_t> bits_;
};

/// Points not yet labelled.
class ActiveSet {
public:
    ActiveSet() = default;
    explicit ActiveSet(std::size_t universe) : bits_(universe) {}

    static ActiveSet full(const ConceptClass& cls);
    static ActiveSet of(const ConceptClass& cls, std::span<const PointId> points);

    std::size_t universe() const noexcept { return bits_.size(); }
    std::size_t size() const noexcept { return bits_.count(); }
    bool empty() const noexcept { return bits_.none(); }
    bool contains(PointId x) const { return x < bits_.size() && bits_.test(x); }
    void insert(PointId x) { bits_.set(x); }
    void erase(PointId x) { bits_.reset(x); }
    ActiveSet without(PointId x) const {
        ActiveSet out = *this;
        out.erase(x);
        return out;
    }
    std::vector<PointId> members() const;

    friend bool operator==(const ActiveSet&, const ActiveSet&) = default;

private:
    boost::dynamic_bitset<std::uint64_t> bits_;
};

/// Memo key of a search state after value-preserving reductions.
struct CanonicalKey {
    std::string bytes;
    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
    std::size_t operator()(const CanonicalKey& k) const noexcept {
        return std::hash<std::string>{}(k.bytes);
    }
};

void check_example(const ConceptClass& cls, const LabeledExample& ex);

/// Concepts of `vs` labelling `ex.point` with `ex.label`.
VersionSpace restrict(const ConceptClass& cls, const VersionSpace& vs, const LabeledExample& ex);

/// Labels of `point` that keep `vs` non-empty, ascending. Throws StateError on empty vs.
std::vector<LabelId> realizable_labels(const ConceptClass& cls, const VersionSpace& vs, PointId point);

/// Drops every active point on which all concepts of `vs` agree.
ActiveSet forced_point_reduction(const ConceptClass& cls, const VersionSpace& vs,
                                 const ActiveSet& active);

/// Deterministic key invariant under forced-point removal, duplicate-column
/// collapse, and permutations of rows, columns and per-column label names
/// (the last three only up to the sorting heuristic).
CanonicalKey canonical_key(const ConceptClass& cls, const VersionSpace& vs, const ActiveSet& active);

}  // namespace sdl
