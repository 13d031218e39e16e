#ifndef NEQRSCOPE_IO_ANALYSIS_IO_HPP
#define NEQRSCOPE_IO_ANALYSIS_IO_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "neqrscope/analysis.hpp"
#include "neqrscope/io/circuit_io.hpp"

namespace neqrscope::io {

inline constexpr std::string_view kAnalysisFormat = "neqrscope-analysis";
inline constexpr int kAnalysisVersion = 1;

/// A simulated circuit together with its analysis.
struct AnalysisDocument {
    Circuit circuit;
    AnalysisBundle bundle;
};

namespace detail {

template <class T, class Fn>
Json grid_to_json(const Grid<T>& grid, Fn&& cell) {
    Json rows = Json::array();
    for (int r = 0; r < grid.side(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < grid.side(); ++c) {
            row.push_back(cell(grid.at(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class T, class Fn>
Grid<T> grid_from_json(const Json& j, int side, const std::string& path, Fn&& cell) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(side)) {
        fail(path, "expected " + std::to_string(side) + " rows");
    }
    std::vector<T> cells;
    for (int r = 0; r < side; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(side)) {
            fail(path + "/" + std::to_string(r), "expected " + std::to_string(side) + " columns");
        }
        for (int c = 0; c < side; ++c) {
            cells.push_back(cell(row[static_cast<std::size_t>(c)], path + "/" + std::to_string(r) + "/" + std::to_string(c)));
        }
    }
    return Grid<T>(side, std::move(cells));
}

inline double number(const Json& j, const std::string& path) {
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    return j.get<double>();
}

inline double number_field(const Json& obj, const std::string& path, const char* key) {
    return number(field(obj, path, key), path + "/" + key);
}

inline std::vector<double> numbers(const Json& j, const std::string& path, std::size_t expected) {
    if (!j.is_array() || j.size() != expected) {
        fail(path, "expected an array of " + std::to_string(expected) + " numbers");
    }
    std::vector<double> out;
    out.reserve(expected);
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(number(j[i], path + "/" + std::to_string(i)));
    }
    return out;
}

inline Json modality_to_json(const ModalityClass& m) {
    return Json{{"tag", std::string(to_string(m.tag))}, {"peaks", m.peaks}};
}

inline ModalityClass modality_from_json(const Json& j, const std::string& path) {
    const auto tag = string_field(j, path, "tag");
    const int peaks = int_field(j, path, "peaks");
    ModalityClass m;
    if (tag == "zero_mass") {
        m = ModalityClass::zero_mass();
    } else if (tag == "uniform") {
        m = ModalityClass::uniform();
    } else if (tag == "unimodal") {
        m = ModalityClass::unimodal();
    } else if (tag == "multimodal") {
        if (peaks < 2) {
            fail(path + "/peaks", "multimodal needs at least 2 peaks");
        }
        m = ModalityClass::multimodal(peaks);
    } else {
        fail(path + "/tag", "unknown modality '" + tag + "'");
    }
    if (m.peaks != peaks) {
        fail(path + "/peaks", "inconsistent with tag");
    }
    return m;
}

inline Json image_to_json(const ClassicalImage& img) {
    return grid_to_json(img.values, [](int v) { return Json(v); });
}

inline ClassicalImage image_from_json(const Json& j, const NeqrLayout& layout, const std::string& path) {
    auto grid = grid_from_json<int>(j, layout.side(), path, [&](const Json& v, const std::string& p) {
        if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() > layout.max_value()) {
            fail(p, "expected a gray value in [0, " + std::to_string(layout.max_value()) + "]");
        }
        return v.get<int>();
    });
    return ClassicalImage(layout, grid.cells());
}

} // namespace detail

/// Structured form of an analysis document. Timing is optional so that
/// golden files stay reproducible.
[[nodiscard]] inline Json analysis_to_json(const AnalysisDocument& doc, bool include_timing = true) {
    using namespace detail;
    const auto& b = doc.bundle;
    const int side = b.layout.side();

    Json initial = Json::array();
    for (const auto& h : b.initial_histograms) {
        initial.push_back(h.probs);
    }

    Json gates = Json::array();
    for (std::size_t i = 0; i < b.gates.size(); ++i) {
        const auto& g = b.gates[i];
        Json pixels = Json::array();
        for (int r = 0; r < side; ++r) {
            for (int c = 0; c < side; ++c) {
                const auto& p = g.pixel(r, c);
                Json top = Json::array();
                for (const auto& t : p.top_colors) {
                    top.push_back(Json{{"color", t.color}, {"conditional", t.conditional}, {"joint", t.joint}});
                }
                pixels.push_back(Json{{"row", r},
                                      {"col", c},
                                      {"joint_mass", p.joint_mass},
                                      {"histogram", p.histogram.probs},
                                      {"signed_diff", p.signed_diff},
                                      {"absolute_diff", p.absolute_diff},
                                      {"top_colors", std::move(top)}});
            }
        }
        gates.push_back(Json{{"index", i},
                             {"name", g.name},
                             {"before_image", image_to_json(g.before_image)},
                             {"after_image", image_to_json(g.after_image)},
                             {"modality", grid_to_json(g.modality, modality_to_json)},
                             {"variation", grid_to_json(g.variation, [](double v) { return Json(v); })},
                             {"pixels", std::move(pixels)}});
    }

    Json out{{"format", std::string(kAnalysisFormat)},
             {"version", kAnalysisVersion},
             {"circuit", circuit_to_json(doc.circuit)},
             {"bins", b.bins},
             {"peak_eps", b.peak_eps},
             {"initial_histograms", std::move(initial)},
             {"gates", std::move(gates)}};
    if (include_timing) {
        out["timing"] = Json{{"gate_ms", b.gate_ms}};
    }
    return out;
}

[[nodiscard]] inline AnalysisDocument analysis_from_json(const Json& j) {
    using namespace detail;
    if (string_field(j, "", "format") != kAnalysisFormat) {
        fail("/format", "not an analysis document");
    }
    if (int_field(j, "", "version") != kAnalysisVersion) {
        fail("/version", "unsupported version");
    }
    AnalysisDocument doc;
    doc.circuit = circuit_from_json(field(j, "", "circuit"), "/circuit");
    auto& b = doc.bundle;
    b.layout = doc.circuit.layout;
    b.bins = int_field(j, "", "bins");
    if (b.bins < 1 || b.layout.color_count() % static_cast<std::size_t>(b.bins) != 0 ||
        static_cast<std::size_t>(b.bins) > b.layout.color_count()) {
        fail("/bins", "does not divide the color count");
    }
    b.peak_eps = number_field(j, "", "peak_eps");
    const auto bins = static_cast<std::size_t>(b.bins);
    const int width = static_cast<int>(b.layout.color_count() / bins);
    const int side = b.layout.side();

    const auto& initial = array_field(j, "", "initial_histograms");
    if (initial.size() != b.layout.pixel_count()) {
        fail("/initial_histograms", "expected one histogram per pixel");
    }
    for (std::size_t i = 0; i < initial.size(); ++i) {
        b.initial_histograms.push_back({width, numbers(initial[i], "/initial_histograms/" + std::to_string(i), bins)});
    }

    const auto& gates = array_field(j, "", "gates");
    if (gates.size() != doc.circuit.gates.size()) {
        fail("/gates", "expected one analysis per circuit gate");
    }
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const std::string path = "/gates/" + std::to_string(i);
        const auto& gj = gates[i];
        if (int_field(gj, path, "index") != static_cast<int>(i)) {
            fail(path + "/index", "out of order");
        }
        GateAnalysis g;
        g.name = string_field(gj, path, "name");
        g.before_image = image_from_json(field(gj, path, "before_image"), b.layout, path + "/before_image");
        g.after_image = image_from_json(field(gj, path, "after_image"), b.layout, path + "/after_image");
        g.modality = grid_from_json<ModalityClass>(field(gj, path, "modality"), side, path + "/modality",
                                                   modality_from_json);
        g.variation = grid_from_json<double>(field(gj, path, "variation"), side, path + "/variation", number);

        const auto& pixels = array_field(gj, path, "pixels");
        if (pixels.size() != b.layout.pixel_count()) {
            fail(path + "/pixels", "expected one entry per pixel");
        }
        for (std::size_t k = 0; k < pixels.size(); ++k) {
            const std::string pp = path + "/pixels/" + std::to_string(k);
            const auto& pj = pixels[k];
            const auto row = static_cast<std::size_t>(int_field(pj, pp, "row"));
            const auto col = static_cast<std::size_t>(int_field(pj, pp, "col"));
            if (row * static_cast<std::size_t>(side) + col != k) {
                fail(pp, "pixels must be row-major");
            }
            PixelGateAnalysis p;
            p.joint_mass = number_field(pj, pp, "joint_mass");
            p.histogram = {width, numbers(field(pj, pp, "histogram"), pp + "/histogram", bins)};
            p.signed_diff = numbers(field(pj, pp, "signed_diff"), pp + "/signed_diff", bins);
            p.absolute_diff = numbers(field(pj, pp, "absolute_diff"), pp + "/absolute_diff", bins);
            const auto& top = array_field(pj, pp, "top_colors");
            for (std::size_t t = 0; t < top.size(); ++t) {
                const std::string tp = pp + "/top_colors/" + std::to_string(t);
                p.top_colors.push_back({int_field(top[t], tp, "color"), number_field(top[t], tp, "conditional"),
                                        number_field(top[t], tp, "joint")});
            }
            g.pixels.push_back(std::move(p));
        }
        b.gates.push_back(std::move(g));
    }

    if (j.contains("timing")) {
        b.gate_ms = numbers(field(field(j, "", "timing"), "/timing", "gate_ms"), "/timing/gate_ms", gates.size());
    }
    return doc;
}

[[nodiscard]] inline std::string serialize_analysis(const AnalysisDocument& doc, bool include_timing = true) {
    return analysis_to_json(doc, include_timing).dump() + "\n";
}

[[nodiscard]] inline AnalysisDocument parse_analysis(std::string_view text) {
    return analysis_from_json(detail::parse_json(text));
}

} // namespace neqrscope::io

#endif
