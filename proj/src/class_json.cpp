#include "sdl/class_json.hpp"

#include "sdl/error.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace sdl {

ConceptClass class_from_json(const std::string& text, DuplicateRows policy) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ArgumentError(std::string("class file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ArgumentError("class file: top level must be an object");
    for (const char* key : {"num_points", "num_labels", "table"})
        if (!j.contains(key)) throw ArgumentError(std::string("class file: missing \"") + key + "\"");
    try {
        auto n = j.at("num_points").get<std::int64_t>();
        auto l = j.at("num_labels").get<std::int64_t>();
        if (n < 0) throw ArgumentError("class file: num_points must be >= 0");
        if (l < 0) throw ArgumentError("class file: num_labels must be >= 0");
        std::vector<std::vector<LabelId>> rows;
        for (const auto& row : j.at("table")) {
            std::vector<LabelId> r;
            for (const auto& cell : row) {
                auto v = cell.get<std::int64_t>();
                if (v < 0 || v >= l)
                    throw ArgumentError("class file: table entry " + std::to_string(v) + " outside [0, num_labels)");
                r.push_back(static_cast<LabelId>(v));
            }
            rows.push_back(std::move(r));
        }
        std::vector<std::string> points, labels;
        if (j.contains("points")) points = j.at("points").get<std::vector<std::string>>();
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        return ConceptClass::from_rows(static_cast<std::size_t>(n), static_cast<std::size_t>(l), rows, policy,
                                       std::move(points), std::move(labels));
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("class file: ") + e.what());
    }
}

std::string class_to_json(const ConceptClass& cls) {
    nlohmann::ordered_json j;
    j["num_points"] = cls.num_points();
    j["num_labels"] = cls.num_labels();
    if (!cls.point_names().empty()) j["points"] = cls.point_names();
    if (!cls.label_names().empty()) j["labels"] = cls.label_names();
    j["table"] = nlohmann::ordered_json::array();
    for (ConceptId c = 0; c < cls.num_concepts(); ++c) {
        auto row = cls.row(c);
        j["table"].push_back(std::vector<LabelId>(row.begin(), row.end()));
    }
    return j.dump() + "\n";
}

ConceptClass load_class(const std::filesystem::path& path, DuplicateRows policy) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open class file '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return class_from_json(ss.str(), policy);
}

void save_class(const ConceptClass& cls, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot write class file '" + path.string() + "'");
    out << class_to_json(cls);
}

}  // namespace sdl
