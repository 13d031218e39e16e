#ifndef NEQRSCOPE_API_HPP
#define NEQRSCOPE_API_HPP

#include <charconv>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "neqrscope/analysis.hpp"
#include "neqrscope/io/analysis_io.hpp"

// Read-only request handling for the debugging UI. Transport-independent so
// the same responses can be produced in-process and over HTTP.
namespace neqrscope::api {

using io::Json;

inline constexpr int kDefaultPort = 8787;

/// Immutable data behind every response.
struct Session {
    Circuit circuit;
    AnalysisBundle bundle;
    /// Decoded snapshots (initial state first). Present when the session was
    /// built by simulating a circuit; allows any bin count per request.
    std::optional<std::vector<QuantumImage>> snapshots;

    /// Simulates `circuit` and keeps the decoded snapshots.
    static Session from_circuit(Circuit circuit, int bins = kAutoBins, double peak_eps = kDefaultPeakEps) {
        Session s;
        Analyzer analyzer(circuit.layout, bins, peak_eps);
        std::vector<QuantumImage> images;
        run_streaming(circuit, [&](std::size_t i, const Statevector& state) {
            analyzer.push(state, i == 0 ? std::string{} : circuit.gates[i - 1].name);
            images.push_back(decode(state, circuit.layout));
        });
        s.bundle = std::move(analyzer).take();
        s.snapshots = std::move(images);
        s.circuit = std::move(circuit);
        return s;
    }

    static Session from_document(io::AnalysisDocument doc) {
        Session s;
        s.circuit = std::move(doc.circuit);
        s.bundle = std::move(doc.bundle);
        return s;
    }
};

struct Response {
    int status = 200;
    std::string body;

    friend bool operator==(const Response&, const Response&) = default;
};

using Query = std::multimap<std::string, std::string>;

namespace detail {

inline Response json_response(const Json& j) { return {200, j.dump()}; }

inline Response error_response(int status, const std::string& message) {
    return {status, Json{{"error", {{"code", status}, {"message", message}}}}.dump()};
}

inline std::optional<long long> to_int(std::string_view s) {
    long long v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty()) {
        return std::nullopt;
    }
    return v;
}

inline std::vector<std::string_view> split_path(std::string_view path) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (pos < path.size()) {
        const auto next = path.find('/', pos);
        const auto end = next == std::string_view::npos ? path.size() : next;
        if (end > pos) {
            parts.push_back(path.substr(pos, end - pos));
        }
        pos = end + 1;
    }
    return parts;
}

inline Json histogram_json(const Histogram& h) {
    Json ranges = Json::array();
    for (int j = 0; j < h.bins(); ++j) {
        const auto [lo, hi] = h.range(j);
        ranges.push_back(Json::array({lo, hi}));
    }
    return Json{{"bins", h.bins()}, {"ranges", std::move(ranges)}, {"probs", h.probs}};
}

} // namespace detail

class Api {
public:
    explicit Api(std::shared_ptr<const Session> session) : session_(std::move(session)) {}

    /// Dispatches a GET request for `path` (without query string).
    [[nodiscard]] Response get(std::string_view path, const Query& query = {}) const {
        const auto parts = detail::split_path(path);
        if (parts.empty() || parts[0] != "api") {
            return detail::error_response(404, "no such endpoint");
        }
        if (!session_) {
            return detail::error_response(503, "no circuit loaded");
        }
        if (parts.size() == 2 && parts[1] == "meta") {
            return meta();
        }
        if (parts.size() == 2 && parts[1] == "circuit") {
            return circuit();
        }
        if (parts.size() == 3 && parts[1] == "gates") {
            const auto i = detail::to_int(parts[2]);
            if (!i) {
                return detail::error_response(400, "gate index must be an integer");
            }
            return gate_analysis(*i);
        }
        if (parts.size() == 4 && parts[1] == "pixels") {
            const auto row = detail::to_int(parts[2]);
            const auto col = detail::to_int(parts[3]);
            if (!row || !col) {
                return detail::error_response(400, "pixel coordinates must be integers");
            }
            long long bins = session_->bundle.bins;
            if (auto it = query.find("bins"); it != query.end()) {
                const auto k = detail::to_int(it->second);
                if (!k) {
                    return detail::error_response(400, "bins must be an integer");
                }
                bins = *k;
            }
            return pixel_series(*row, *col, bins);
        }
        return detail::error_response(404, "no such endpoint");
    }

    [[nodiscard]] Response meta() const {
        const auto& s = *session_;
        return detail::json_response(Json{
            {"layout", {{"n", s.circuit.layout.n}, {"b", s.circuit.layout.b}}},
            {"qubit_count", s.circuit.qubit_count()},
            {"side", s.circuit.layout.side()},
            {"gate_count", s.circuit.gates.size()},
            {"bins", s.bundle.bins},
            {"peak_eps", s.bundle.peak_eps},
            {"zero_mass_eps", kZeroMassEps},
            {"any_bins", s.snapshots.has_value()},
            {"defaults", {{"bins", kDefaultBins}, {"port", kDefaultPort}}}});
    }

    [[nodiscard]] Response circuit() const {
        const auto& c = session_->circuit;
        auto doc = io::circuit_to_json(c);
        Json gates = Json::array();
        for (std::size_t i = 0; i < doc["gates"].size(); ++i) {
            gates.push_back(Json{{"index", i}, {"name", doc["gates"][i]["name"]},
                                 {"basic_gates", doc["gates"][i]["basic_gates"]}});
        }
        return detail::json_response(Json{{"qubit_count", c.qubit_count()},
                                          {"layout", doc["layout"]},
                                          {"qubit_order", doc["qubit_order"]},
                                          {"names", [&] {
                                               Json names = Json::array();
                                               for (const auto& g : c.gates) {
                                                   names.push_back(g.name);
                                               }
                                               return names;
                                           }()},
                                          {"gates", std::move(gates)}});
    }

    [[nodiscard]] Response gate_analysis(long long index) const {
        const auto& gates = session_->bundle.gates;
        if (index < 0 || index >= static_cast<long long>(gates.size())) {
            return detail::error_response(404, "gate " + std::to_string(index) + " not found (" +
                                                   std::to_string(gates.size()) + " gates)");
        }
        const auto& g = gates[static_cast<std::size_t>(index)];
        return detail::json_response(
            Json{{"index", index},
                 {"name", g.name},
                 {"before_image", io::detail::image_to_json(g.before_image)},
                 {"after_image", io::detail::image_to_json(g.after_image)},
                 {"modality_grid", io::detail::grid_to_json(g.modality, io::detail::modality_to_json)},
                 {"variation_grid", io::detail::grid_to_json(g.variation, [](double v) { return Json(v); })}});
    }

    [[nodiscard]] Response pixel_series(long long row, long long col, long long bins) const {
        const auto& s = *session_;
        const auto& layout = s.bundle.layout;
        if (row < 0 || col < 0 || row >= layout.side() || col >= layout.side()) {
            return detail::error_response(400, "pixel (" + std::to_string(row) + "," + std::to_string(col) +
                                                   ") outside the image");
        }
        const auto colors = static_cast<long long>(layout.color_count());
        if (bins < 1 || bins > colors || colors % bins != 0) {
            return detail::error_response(400, "bins=" + std::to_string(bins) + " does not divide " +
                                                   std::to_string(colors) + " colors");
        }
        const int r = static_cast<int>(row);
        const int c = static_cast<int>(col);
        const int k = static_cast<int>(bins);
        const bool stored = k == s.bundle.bins;
        if (!stored && !s.snapshots && s.bundle.bins % k != 0) {
            return detail::error_response(400, "bins=" + std::to_string(k) + " unavailable; this session supports divisors of " +
                                                   std::to_string(s.bundle.bins));
        }

        auto histogram_at = [&](std::size_t snapshot) -> Histogram {
            if (stored) {
                return snapshot == 0 ? s.bundle.before_histogram(0, r, c)
                                     : s.bundle.gates[snapshot - 1].pixel(r, c).histogram;
            }
            if (s.snapshots) {
                return bin_histogram((*s.snapshots)[snapshot].at(r, c), k);
            }
            const auto& h = snapshot == 0 ? s.bundle.before_histogram(0, r, c)
                                          : s.bundle.gates[snapshot - 1].pixel(r, c).histogram;
            return rebin(h, k);
        };

        Json entries = Json::array();
        Histogram prev = histogram_at(0);
        for (std::size_t i = 0; i < s.bundle.gates.size(); ++i) {
            const auto& gp = s.bundle.gates[i].pixel(r, c);
            Histogram next = histogram_at(i + 1);
            Json top = Json::array();
            for (const auto& t : gp.top_colors) {
                top.push_back(Json{{"color", t.color}, {"conditional", t.conditional}, {"joint", t.joint}});
            }
            entries.push_back(Json{
                {"index", i},
                {"name", s.bundle.gates[i].name},
                {"joint_mass", gp.joint_mass},
                {"histogram", detail::histogram_json(next)},
                {"signed_diff", stored ? gp.signed_diff : binned_difference(prev, next, DiffMode::Signed)},
                {"absolute_diff", stored ? gp.absolute_diff : binned_difference(prev, next, DiffMode::Absolute)},
                {"top_colors", std::move(top)}});
            prev = std::move(next);
        }
        return detail::json_response(Json{{"row", r}, {"col", c}, {"bins", k}, {"gates", std::move(entries)}});
    }

private:
    std::shared_ptr<const Session> session_;
};

} // namespace neqrscope::api

#endif
