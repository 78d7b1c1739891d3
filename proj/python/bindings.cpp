#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "uxlens/budget.hpp"
#include "uxlens/heuristics.hpp"
#include "uxlens/json_extract.hpp"
#include "uxlens/order.hpp"
#include "uxlens/similarity.hpp"
#include "uxlens/templates.hpp"
#include "uxlens/version.hpp"

namespace py = pybind11;

namespace {

uxlens::TemplateId template_id_from_name(const std::string& name) {
    for (uxlens::TemplateId id : uxlens::all_template_ids()) {
        std::string filename = uxlens::template_filename(id);
        if (filename.substr(0, filename.size() - 4) == name) return id;
    }
    throw std::invalid_argument("unknown template id: " + name);
}

std::vector<uxlens::EmbeddingVector> to_vectors(const std::vector<std::vector<double>>& rows) {
    std::vector<uxlens::EmbeddingVector> vectors;
    vectors.reserve(rows.size());
    for (const auto& row : rows) vectors.push_back({row});
    return vectors;
}

} // namespace

PYBIND11_MODULE(_uxlens, m) {
    m.doc() = "Core operations of the uxlens usability-evaluation pipeline";
    m.attr("__version__") = uxlens::kPipelineVersion;

    m.def("estimate_video_tokens", &uxlens::estimate_video_tokens, py::arg("duration_seconds"),
          py::arg("fps") = uxlens::kDefaultFramesPerSecond,
          py::arg("tokens_per_frame") = uxlens::kDefaultTokensPerFrame,
          "Estimated context tokens for a recording: ceil(duration * fps) * tokens_per_frame.");

    m.def(
        "check_context_budget",
        [](std::int64_t estimated_tokens, std::int64_t context_limit, std::int64_t text_reserve) {
            const auto verdict =
                uxlens::check_context_budget(estimated_tokens, context_limit, text_reserve);
            py::dict out;
            out["ok"] = verdict.ok;
            out["excess"] = verdict.excess;
            return out;
        },
        py::arg("estimated_tokens"), py::arg("context_limit"),
        py::arg("text_reserve") = uxlens::kDefaultTextReserveTokens);

    m.def("default_heuristics", [] {
        py::list out;
        for (const auto& heuristic : uxlens::default_heuristics()) {
            py::dict entry;
            entry["id"] = heuristic.id.ordinal();
            entry["name"] = heuristic.name;
            entry["guiding_question"] = heuristic.guiding_question;
            out.append(std::move(entry));
        }
        return out;
    });

    m.def(
        "cosine",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            return uxlens::cosine({a}, {b});
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "group_by_similarity",
        [](const std::vector<std::vector<double>>& vectors, double threshold) {
            py::list out;
            for (const auto& group :
                 uxlens::group_indices_by_similarity(to_vectors(vectors), threshold))
                out.append(group.members);
            return out;
        },
        py::arg("vectors"), py::arg("threshold"),
        "Connected components of the thresholded cosine-similarity graph, as index lists.");

    m.def(
        "extract_json",
        [](const std::string& text) { return uxlens::extract_json(text).dump(); },
        py::arg("text"),
        "Extracts the first balanced JSON value from model output; returns it serialized.");

    m.def(
        "repair_order",
        [](const std::vector<std::int64_t>& order, int n) { return uxlens::repair_order(order, n); },
        py::arg("order"), py::arg("n"));

    m.def(
        "order_is_valid",
        [](const std::vector<std::int64_t>& order, int n) {
            return uxlens::order_is_valid(order, n);
        },
        py::arg("order"), py::arg("n"));

    m.def(
        "render_template",
        [](const std::string& template_id, const std::map<std::string, std::string>& variables) {
            return uxlens::TemplateSet::builtin().render(template_id_from_name(template_id),
                                                         variables);
        },
        py::arg("template_id"), py::arg("variables"),
        "Renders one of the built-in prompt templates (e.g. \"eval_user\").");
}
