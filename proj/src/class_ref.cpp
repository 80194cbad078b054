#include "sdl/class_ref.hpp"

#include "sdl/class_json.hpp"
#include "sdl/error.hpp"
#include "sdl/zoo.hpp"

#include <charconv>

namespace sdl {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) return out;
        start = pos + 1;
    }
}

std::uint64_t number(const std::string& tok, const std::string& ref) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty())
        throw ArgumentError("'" + ref + "': parameter '" + tok + "' is not a non-negative integer");
    return v;
}

}  // namespace

const std::vector<std::string>& zoo_uris() {
    static const std::vector<std::string> uris{
        "zoo:singletons:N",          "zoo:thresholds:N",         "zoo:k_intervals:K:N",
        "zoo:grid_rectangles:D:N",   "zoo:rectangles:D:N",       "zoo:bendavid:D:N",
        "zoo:perm_thresholds:N",     "zoo:octagon",              "zoo:regular_octagon",
        "zoo:embed:COPIES",          "zoo:random:M:N:L:SEED",    "zoo:vc1_tree:N:SEED",
    };
    return uris;
}

ConceptClass resolve_class(const std::string& ref, DuplicateRows policy) {
    if (ref.rfind("zoo:", 0) != 0) return load_class(ref, policy);
    auto parts = split(ref.substr(4), ':');
    const std::string& name = parts[0];
    std::vector<std::uint64_t> p;
    for (std::size_t i = 1; i < parts.size(); ++i) p.push_back(number(parts[i], ref));
    auto need = [&](std::size_t n) {
        if (p.size() != n)
            throw ArgumentError("'" + ref + "': " + name + " takes " + std::to_string(n) + " parameter(s)");
    };
    if (name == "singletons") return need(1), zoo::singletons(p[0]);
    if (name == "thresholds") return need(1), zoo::thresholds(p[0]);
    if (name == "k_intervals") return need(2), zoo::k_intervals(p[0], p[1]);
    if (name == "grid_rectangles" || name == "rectangles") return need(2), zoo::grid_rectangles(p[0], p[1]);
    if (name == "bendavid") return need(2), zoo::bendavid(p[0], p[1]);
    if (name == "perm_thresholds") return need(1), zoo::perm_thresholds(p[0]);
    if (name == "octagon") return need(0), zoo::linear_separators(zoo::octagon_config());
    if (name == "regular_octagon") return need(0), zoo::linear_separators(zoo::regular_octagon_config());
    if (name == "embed" || name == "embed_2d") return need(1), zoo::linear_separators(zoo::embed_2d(p[0]));
    if (name == "random") return need(4), zoo::random_class(p[0], p[1], p[2], p[3]);
    if (name == "vc1_tree") return need(2), zoo::vc1_tree_class(p[0], p[1]);
    std::string known;
    for (const auto& u : zoo_uris()) known += "\n  " + u;
    throw ArgumentError("unknown zoo generator '" + name + "'; known:" + known);
}

}  // namespace sdl
