// Python bindings: thin wrappers, JSON-shaped results are parsed on the Python side.

#include "sdl/agnostic.hpp"
#include "sdl/class_json.hpp"
#include "sdl/class_ref.hpp"
#include "sdl/dimensions.hpp"
#include "sdl/error.hpp"
#include "sdl/reproduce.hpp"
#include "sdl/simulate.hpp"
#include "sdl/zoo.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace sdl;

namespace {

SearchBudget make_budget(std::optional<std::size_t> states, std::optional<long long> ms) {
    SearchBudget b;
    if (states) b.max_states = *states;
    if (ms) b.max_time = std::chrono::milliseconds(*ms);
    return b;
}

ActiveSet active_of(const ConceptClass& c, const std::optional<std::vector<PointId>>& pts) {
    return pts ? ActiveSet::of(c, *pts) : ActiveSet::full(c);
}

std::vector<std::vector<LabelId>> rows_of(const ConceptClass& c) {
    std::vector<std::vector<LabelId>> out;
    for (ConceptId i = 0; i < c.num_concepts(); ++i) out.emplace_back(c.row(i).begin(), c.row(i).end());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact mistake-bound measures on finite concept classes";

    auto base = py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<StateError>(m, "StateError", PyExc_RuntimeError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_ValueError);
    py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);
    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_AssertionError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    (void)base;

    py::class_<ConceptClass>(m, "ConceptClass")
        .def_static(
            "from_rows",
            [](const std::vector<std::vector<LabelId>>& rows, std::size_t num_points, std::size_t num_labels,
               bool dedupe) {
                return ConceptClass::from_rows(num_points, num_labels, rows,
                                               dedupe ? DuplicateRows::dedupe : DuplicateRows::reject);
            },
            py::arg("rows"), py::arg("num_points"), py::arg("num_labels") = 2, py::arg("dedupe") = false)
        .def_static("from_json", [](const std::string& s) { return class_from_json(s); })
        .def("to_json", [](const ConceptClass& c) { return class_to_json(c); })
        .def_property_readonly("num_points", &ConceptClass::num_points)
        .def_property_readonly("num_labels", &ConceptClass::num_labels)
        .def_property_readonly("num_concepts", &ConceptClass::num_concepts)
        .def("rows", &rows_of)
        .def("__len__", &ConceptClass::num_concepts)
        .def("__eq__", [](const ConceptClass& a, const ConceptClass& b) { return a == b; })
        .def("__repr__", [](const ConceptClass& c) {
            return "<ConceptClass points=" + std::to_string(c.num_points()) + " labels=" +
                   std::to_string(c.num_labels()) + " concepts=" + std::to_string(c.num_concepts()) + ">";
        });

    m.def("resolve", [](const std::string& ref) { return resolve_class(ref); }, py::arg("ref"),
          "Zoo URI (zoo:name:params) or JSON file path.");
    m.def("zoo_uris", &zoo_uris);

    auto z = m.def_submodule("zoo", "Built-in classes");
    z.def("singletons", &zoo::singletons);
    z.def("thresholds", &zoo::thresholds);
    z.def("k_intervals", &zoo::k_intervals);
    z.def("grid_rectangles", &zoo::grid_rectangles);
    z.def("bendavid", &zoo::bendavid);
    z.def("perm_thresholds", &zoo::perm_thresholds);
    z.def("octagon", [] { return zoo::linear_separators(zoo::octagon_config()); });
    z.def("regular_octagon", [] { return zoo::linear_separators(zoo::regular_octagon_config()); });
    z.def("embed_2d", [](std::size_t copies) { return zoo::linear_separators(zoo::embed_2d(copies)); });
    z.def("random_class", &zoo::random_class, py::arg("m"), py::arg("n"), py::arg("num_labels"), py::arg("seed"));
    z.def("vc1_tree_class", &zoo::vc1_tree_class, py::arg("n"), py::arg("seed"));

    // Class-level measures; `points` switches to the fixed-domain value on those points.
    auto measure = [&](const char* name, auto fixed, auto whole) {
        m.def(
            name,
            [fixed, whole](const ConceptClass& c, std::optional<std::vector<PointId>> points,
                           std::optional<std::size_t> budget_states, std::optional<long long> budget_ms) {
                Engine e({}, make_budget(budget_states, budget_ms));
                return points ? fixed(e, c, ActiveSet::of(c, *points)) : whole(e, c);
            },
            py::arg("cls"), py::arg("points") = py::none(), py::arg("budget_states") = py::none(),
            py::arg("budget_ms") = py::none());
    };
    measure(
        "m_sd", [](Engine& e, const ConceptClass& c, const ActiveSet& a) { return e.m_sd(c, VersionSpace::full(c), a); },
        [](Engine& e, const ConceptClass& c) { return e.m_sd(c); });
    measure(
        "online_bound",
        [](Engine& e, const ConceptClass& c, const ActiveSet& a) { return e.online_bound(c, VersionSpace::full(c), a); },
        [](Engine& e, const ConceptClass& c) { return e.online_bound(c); });
    measure(
        "m_best",
        [](Engine& e, const ConceptClass& c, const ActiveSet& a) { return e.m_best(c, VersionSpace::full(c), a); },
        [](Engine& e, const ConceptClass& c) { return e.m_best(c); });
    measure(
        "m_worst",
        [](Engine& e, const ConceptClass& c, const ActiveSet& a) { return e.m_worst(c, VersionSpace::full(c), a); },
        [](Engine& e, const ConceptClass& c) { return e.m_worst(c); });

    m.def("vc_dim", [](const ConceptClass& c) { return vc_dim(c); });
    m.def("teaching_dim", [](const ConceptClass& c) { return teaching_dim(c); });
    m.def("fixed_order_bound", [](const ConceptClass& c, const std::vector<PointId>& order) {
        return fixed_order_bound(c, order);
    });
    m.def(
        "labelling_game_value",
        [](const ConceptClass& c, std::optional<std::vector<PointId>> points, bool multiclass) {
            return labelling_game_value(c, active_of(c, points), multiclass);
        },
        py::arg("cls"), py::arg("points") = py::none(), py::arg("multiclass") = false);

    m.def(
        "_report_json",
        [](const ConceptClass& c, std::vector<std::string> names, std::string class_id,
           std::optional<std::size_t> budget_states, std::optional<long long> budget_ms) {
            std::vector<Measure> ms;
            for (const auto& n : names) ms.push_back(parse_measure(n));
            if (ms.empty()) ms = all_measures();
            return report_json(full_report(c, ms, make_budget(budget_states, budget_ms), {}, class_id), false);
        },
        py::arg("cls"), py::arg("measures"), py::arg("class_id"), py::arg("budget_states") = py::none(),
        py::arg("budget_ms") = py::none());

    m.def(
        "_simulate_jsonl",
        [](const ConceptClass& c, std::optional<ConceptId> target, std::uint64_t seed) {
            Engine e;
            SdSoaLearner learner(e);
            if (target) {
                FixedTargetAdversary adv(*target);
                return run_episode(c, learner, adv, seed).to_jsonl();
            }
            OptimalAdversary adv(e);
            return run_episode(c, learner, adv, seed).to_jsonl();
        },
        py::arg("cls"), py::arg("target") = py::none(), py::arg("seed") = 0);

    m.def(
        "_agnostic_json",
        [](const ConceptClass& c, std::optional<std::vector<PointId>> sample, std::optional<std::size_t> lowerbound_k,
           const std::string& labels, std::size_t trials, std::uint64_t seed, std::optional<double> eta) {
            agnostic::SampleMultiset s;
            if (lowerbound_k)
                s = agnostic::lower_bound_instance(c, *lowerbound_k);
            else if (sample)
                s.points = *sample;
            else
                for (PointId x = 0; x < c.num_points(); ++x) s.points.push_back(x);
            agnostic::LabelSource src;
            if (labels == "bernoulli")
                src = agnostic::LabelSource::bernoulli_half();
            else if (labels == "adversarial")
                src = agnostic::LabelSource::adversarial();
            else if (labels == "adaptive")
                src = agnostic::LabelSource::adaptive();
            else if (labels.rfind("realizable:", 0) == 0)
                src = agnostic::LabelSource::realizable(std::stoul(labels.substr(11)));
            else
                throw ArgumentError("unknown label source '" + labels + "'");
            return agnostic::run_agnostic(c, s, src, trials, seed, eta).to_json();
        },
        py::arg("cls"), py::arg("sample"), py::arg("lowerbound_k"), py::arg("labels"), py::arg("trials"),
        py::arg("seed"), py::arg("eta"));

    m.def("_reproduce", [](const std::string& suite) {
        auto r = reproduce(suite);
        std::vector<py::dict> rows;
        for (const auto& row : r.rows) {
            py::dict d;
            d["claim"] = row.claim;
            d["expected"] = row.expected;
            d["computed"] = row.computed;
            d["pass"] = row.pass;
            rows.push_back(d);
        }
        return rows;
    });
}
