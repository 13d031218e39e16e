#ifndef NEQRSCOPE_ANALYSIS_HPP
#define NEQRSCOPE_ANALYSIS_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "neqrscope/circuit.hpp"
#include "neqrscope/decode.hpp"
#include "neqrscope/image.hpp"
#include "neqrscope/simulator.hpp"

namespace neqrscope {

inline constexpr double kDefaultPeakEps = 1e-9;
inline constexpr int kDefaultBins = 8;
/// Bin-count argument meaning "kDefaultBins, or one bin per color when there are fewer colors".
inline constexpr int kAutoBins = 0;

[[nodiscard]] inline int resolve_bins(int bins, const NeqrLayout& layout) {
    if (bins != kAutoBins) {
        return bins;
    }
    return static_cast<int>(std::min<std::size_t>(kDefaultBins, layout.color_count()));
}
/// Entries reported per pixel in the tooltip payload.
inline constexpr std::size_t kTopColorCount = 3;

// ---------------------------------------------------------------------------
// Modality

struct ModalityClass {
    enum class Tag { ZeroMass, Uniform, Unimodal, Multimodal };

    Tag tag = Tag::ZeroMass;
    /// Number of local maxima; 0 for ZeroMass and Uniform.
    int peaks = 0;

    static ModalityClass zero_mass() { return {Tag::ZeroMass, 0}; }
    static ModalityClass uniform() { return {Tag::Uniform, 0}; }
    static ModalityClass unimodal() { return {Tag::Unimodal, 1}; }
    static ModalityClass multimodal(int k) { return {Tag::Multimodal, k}; }

    friend bool operator==(const ModalityClass&, const ModalityClass&) = default;
};

[[nodiscard]] inline std::string_view to_string(ModalityClass::Tag tag) noexcept {
    switch (tag) {
    case ModalityClass::Tag::ZeroMass: return "zero_mass";
    case ModalityClass::Tag::Uniform: return "uniform";
    case ModalityClass::Tag::Unimodal: return "unimodal";
    case ModalityClass::Tag::Multimodal: return "multimodal";
    }
    return "?";
}

/// Counts local maxima of `values`. A run of entries equal (within eps) to its
/// first entry is one candidate; it is a peak when it exceeds each existing
/// neighbor by more than eps. Array ends only have one neighbor; a run
/// covering the whole array is not a peak.
[[nodiscard]] inline int count_peaks(std::span<const double> values, double eps) {
    const std::size_t n = values.size();
    int peaks = 0;
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start;
        while (end + 1 < n && std::abs(values[end + 1] - values[start]) <= eps) {
            ++end;
        }
        const bool left_ok = start == 0 || values[start] > values[start - 1] + eps;
        const bool right_ok = end + 1 == n || values[end] > values[end + 1] + eps;
        const bool has_neighbor = start > 0 || end + 1 < n;
        if (left_ok && right_ok && has_neighbor) {
            ++peaks;
        }
        start = end + 1;
    }
    return peaks;
}

[[nodiscard]] inline ModalityClass modality(const PixelDistribution& dist, double peak_eps = kDefaultPeakEps) {
    if (dist.joint_mass < kZeroMassEps) {
        return ModalityClass::zero_mass();
    }
    const auto& p = dist.conditional;
    const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
    if (*hi - *lo <= peak_eps) {
        return ModalityClass::uniform();
    }
    const int k = count_peaks(p, peak_eps);
    if (k == 0) {
        return ModalityClass::uniform();
    }
    return k == 1 ? ModalityClass::unimodal() : ModalityClass::multimodal(k);
}

// ---------------------------------------------------------------------------
// Departure index

/// Signed shift of `test` relative to `ref` along the color axis, in [-2, 2]:
///
///     M = 2/(K-1) * sum_{k=0}^{K-2} (F_ref(k) - F_test(k))
///
/// with F the cumulative sums over K colors. M > 0 means mass moved toward
/// brighter colors. An all-zero input (a zero-mass pixel) is read as a point
/// mass at color 0, the way such pixels are rendered.
[[nodiscard]] inline double departure_index(std::span<const double> ref, std::span<const double> test) {
    if (ref.size() != test.size()) {
        throw AnalysisError("departure index: length mismatch (" + std::to_string(ref.size()) + " vs " +
                            std::to_string(test.size()) + ")");
    }
    const std::size_t k = ref.size();
    if (k < 2) {
        throw AnalysisError("departure index: need at least two colors");
    }
    auto is_empty = [](std::span<const double> p) {
        return std::accumulate(p.begin(), p.end(), 0.0) < kZeroMassEps;
    };
    const bool ref_empty = is_empty(ref);
    const bool test_empty = is_empty(test);

    double f_ref = 0.0;
    double f_test = 0.0;
    double acc = 0.0;
    for (std::size_t c = 0; c + 1 < k; ++c) {
        f_ref += ref_empty ? (c == 0 ? 1.0 : 0.0) : ref[c];
        f_test += test_empty ? (c == 0 ? 1.0 : 0.0) : test[c];
        acc += f_ref - f_test;
    }
    return 2.0 * acc / static_cast<double>(k - 1);
}

/// Departure index of every pixel from `before` to `after`.
[[nodiscard]] inline Grid<double> variation_map(const QuantumImage& before, const QuantumImage& after) {
    if (!(before.layout == after.layout)) {
        throw AnalysisError("variation map: layout mismatch");
    }
    Grid<double> out(before.layout.side(), 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.cells()[i] = departure_index(before.pixels.cells()[i].conditional, after.pixels.cells()[i].conditional);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Histograms and bin differences

struct Histogram {
    /// Colors per bin.
    int width = 1;
    std::vector<double> probs;

    [[nodiscard]] int bins() const noexcept { return static_cast<int>(probs.size()); }
    /// Inclusive color range [first, last] of bin j.
    [[nodiscard]] std::pair<int, int> range(int j) const noexcept { return {j * width, (j + 1) * width - 1}; }

    friend bool operator==(const Histogram&, const Histogram&) = default;
};

[[nodiscard]] inline Histogram bin_histogram(std::span<const double> conditional, int bins) {
    const auto colors = static_cast<int>(conditional.size());
    if (bins < 1 || bins > colors || colors % bins != 0) {
        throw AnalysisError("binning: " + std::to_string(bins) + " bins do not divide " + std::to_string(colors) +
                            " colors");
    }
    Histogram h{colors / bins, std::vector<double>(static_cast<std::size_t>(bins), 0.0)};
    for (int c = 0; c < colors; ++c) {
        h.probs[static_cast<std::size_t>(c / h.width)] += conditional[static_cast<std::size_t>(c)];
    }
    return h;
}

[[nodiscard]] inline Histogram bin_histogram(const PixelDistribution& dist, int bins) {
    return bin_histogram(std::span<const double>(dist.conditional), bins);
}

/// Merges adjacent bins of `h` into `bins` coarser bins.
[[nodiscard]] inline Histogram rebin(const Histogram& h, int bins) {
    auto coarse = bin_histogram(std::span<const double>(h.probs), bins);
    coarse.width *= h.width;
    return coarse;
}

enum class DiffMode { Signed, Absolute };

/// Bin-wise change from `prev` to `next` after scaling both by the larger of
/// their two maxima.
[[nodiscard]] inline std::vector<double> binned_difference(const Histogram& prev, const Histogram& next,
                                                           DiffMode mode) {
    if (prev.bins() != next.bins()) {
        throw AnalysisError("bin difference: bin count mismatch (" + std::to_string(prev.bins()) + " vs " +
                            std::to_string(next.bins()) + ")");
    }
    std::vector<double> diff(prev.probs.size(), 0.0);
    if (diff.empty()) {
        return diff;
    }
    const double scale = std::max(*std::max_element(prev.probs.begin(), prev.probs.end()),
                                  *std::max_element(next.probs.begin(), next.probs.end()));
    if (scale < kZeroMassEps) {
        return diff;
    }
    for (std::size_t j = 0; j < diff.size(); ++j) {
        const double d = next.probs[j] / scale - prev.probs[j] / scale;
        diff[j] = mode == DiffMode::Absolute ? std::abs(d) : d;
    }
    return diff;
}

// ---------------------------------------------------------------------------
// Tooltip payload

struct TopColor {
    int color = 0;
    double conditional = 0.0;
    /// Probability of this (position, color) pair in the whole state.
    double joint = 0.0;

    friend bool operator==(const TopColor&, const TopColor&) = default;
};

/// The `count` most probable colors, darkest first among equals. Colors with
/// zero probability are never listed.
[[nodiscard]] inline std::vector<TopColor> top_colors(const PixelDistribution& dist,
                                                      std::size_t count = kTopColorCount) {
    std::vector<TopColor> out;
    if (dist.joint_mass < kZeroMassEps) {
        return out;
    }
    std::vector<int> order(dist.conditional.size());
    std::iota(order.begin(), order.end(), 0);
    const auto take = std::min(count, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                      [&](int a, int b) {
                          const double pa = dist.conditional[static_cast<std::size_t>(a)];
                          const double pb = dist.conditional[static_cast<std::size_t>(b)];
                          return pa != pb ? pa > pb : a < b;
                      });
    for (std::size_t i = 0; i < take; ++i) {
        const double p = dist.conditional[static_cast<std::size_t>(order[i])];
        if (p <= 0.0) {
            break;
        }
        out.push_back({order[i], p, p * dist.joint_mass});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Per-circuit bundle

struct PixelGateAnalysis {
    double joint_mass = 0.0;
    /// Histogram after the gate.
    Histogram histogram;
    std::vector<double> signed_diff;
    std::vector<double> absolute_diff;
    std::vector<TopColor> top_colors;

    friend bool operator==(const PixelGateAnalysis&, const PixelGateAnalysis&) = default;
};

struct GateAnalysis {
    std::string name;
    ClassicalImage before_image;
    ClassicalImage after_image;
    Grid<ModalityClass> modality;
    Grid<double> variation;
    /// Row-major, one entry per pixel.
    std::vector<PixelGateAnalysis> pixels;

    [[nodiscard]] const PixelGateAnalysis& pixel(int row, int col) const {
        return pixels.at(static_cast<std::size_t>(row) * static_cast<std::size_t>(after_image.layout.side()) +
                         static_cast<std::size_t>(col));
    }

    friend bool operator==(const GateAnalysis&, const GateAnalysis&) = default;
};

struct AnalysisBundle {
    NeqrLayout layout;
    int bins = kDefaultBins;
    double peak_eps = kDefaultPeakEps;
    /// Row-major histograms of the initial state; the "before" of gate 0.
    std::vector<Histogram> initial_histograms;
    std::vector<GateAnalysis> gates;
    /// Wall time per gate in milliseconds. Not part of equality.
    std::vector<double> gate_ms;

    [[nodiscard]] const Histogram& before_histogram(std::size_t gate, int row, int col) const {
        const auto idx = static_cast<std::size_t>(row) * static_cast<std::size_t>(layout.side()) +
                         static_cast<std::size_t>(col);
        return gate == 0 ? initial_histograms.at(idx) : gates.at(gate - 1).pixels.at(idx).histogram;
    }

    friend bool operator==(const AnalysisBundle& a, const AnalysisBundle& b) {
        return a.layout == b.layout && a.bins == b.bins && a.peak_eps == b.peak_eps &&
               a.initial_histograms == b.initial_histograms && a.gates == b.gates;
    }
};

/// Incremental analyzer: feed snapshots in order, one GateAnalysis is produced
/// per consecutive pair. Only the previous decoded image is retained.
class Analyzer {
public:
    Analyzer(NeqrLayout layout, int bins = kAutoBins, double peak_eps = kDefaultPeakEps) {
        layout.validate();
        bins = resolve_bins(bins, layout);
        if (bins < 1 || layout.color_count() % static_cast<std::size_t>(bins) != 0 ||
            static_cast<std::size_t>(bins) > layout.color_count()) {
            throw AnalysisError("analysis: " + std::to_string(bins) + " bins do not divide " +
                                std::to_string(layout.color_count()) + " colors");
        }
        bundle_.layout = layout;
        bundle_.bins = bins;
        bundle_.peak_eps = peak_eps;
    }

    /// Adds the next snapshot. `name` labels the gate that produced it and is
    /// ignored for the first snapshot.
    void push(const Statevector& state, std::string name = {}) {
        auto image = decode(state, bundle_.layout);
        std::vector<Histogram> hists;
        hists.reserve(image.pixels.size());
        for (const auto& px : image.pixels.cells()) {
            hists.push_back(bin_histogram(px, bundle_.bins));
        }
        if (!previous_) {
            bundle_.initial_histograms = hists;
        } else {
            bundle_.gates.push_back(compare(*previous_, prev_hists_, image, hists, std::move(name)));
        }
        previous_ = std::move(image);
        prev_hists_ = std::move(hists);
    }

    void record_time(double ms) { bundle_.gate_ms.push_back(ms); }

    [[nodiscard]] const AnalysisBundle& bundle() const& noexcept { return bundle_; }
    [[nodiscard]] AnalysisBundle take() && { return std::move(bundle_); }

private:
    [[nodiscard]] GateAnalysis compare(const QuantumImage& before, const std::vector<Histogram>& before_hists,
                                       const QuantumImage& after, const std::vector<Histogram>& after_hists,
                                       std::string name) const {
        GateAnalysis g;
        g.name = std::move(name);
        g.before_image = argmax_image(before);
        g.after_image = argmax_image(after);
        g.variation = variation_map(before, after);
        g.modality = Grid<ModalityClass>(after.layout.side(), ModalityClass{});
        g.pixels.resize(after.pixels.size());
        for (std::size_t i = 0; i < after.pixels.size(); ++i) {
            const auto& px = after.pixels.cells()[i];
            g.modality.cells()[i] = modality(px, bundle_.peak_eps);
            auto& out = g.pixels[i];
            out.joint_mass = px.joint_mass;
            out.histogram = after_hists[i];
            out.signed_diff = binned_difference(before_hists[i], after_hists[i], DiffMode::Signed);
            out.absolute_diff = binned_difference(before_hists[i], after_hists[i], DiffMode::Absolute);
            out.top_colors = top_colors(px);
        }
        return g;
    }

    AnalysisBundle bundle_;
    std::optional<QuantumImage> previous_;
    std::vector<Histogram> prev_hists_;
};

/// Analyzes a recorded snapshot series. Gate names are taken from `circuit`
/// when given, otherwise "gate i".
[[nodiscard]] inline AnalysisBundle analyze_circuit(const SnapshotSeries& snapshots, const NeqrLayout& layout,
                                                    int bins = kAutoBins, double peak_eps = kDefaultPeakEps,
                                                    const Circuit* circuit = nullptr) {
    Analyzer analyzer(layout, bins, peak_eps);
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        std::string name;
        if (i > 0) {
            name = circuit && i - 1 < circuit->gates.size() ? circuit->gates[i - 1].name
                                                              : "gate " + std::to_string(i - 1);
        }
        const auto t0 = std::chrono::steady_clock::now();
        analyzer.push(snapshots[i], std::move(name));
        if (i > 0) {
            analyzer.record_time(
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
        }
    }
    return std::move(analyzer).take();
}

/// Simulates and analyzes without keeping the snapshot series in memory.
/// Per-gate timings cover both simulation and analysis.
[[nodiscard]] inline AnalysisBundle simulate_and_analyze(const Circuit& circuit, int bins = kAutoBins,
                                                         double peak_eps = kDefaultPeakEps) {
    Analyzer analyzer(circuit.layout, bins, peak_eps);
    auto t0 = std::chrono::steady_clock::now();
    run_streaming(circuit, [&](std::size_t i, const Statevector& s) {
        analyzer.push(s, i == 0 ? std::string{} : circuit.gates[i - 1].name);
        const auto t1 = std::chrono::steady_clock::now();
        if (i > 0) {
            analyzer.record_time(std::chrono::duration<double, std::milli>(t1 - t0).count());
        }
        t0 = t1;
    });
    return std::move(analyzer).take();
}

/// Mass bookkeeping of every snapshot in `bundle`: total joint mass is 1 and
/// each non-empty pixel's histogram sums to 1, both within `tol`. Returns one
/// message per violation.
[[nodiscard]] inline std::vector<std::string> check_layout(const AnalysisBundle& bundle, double tol = 1e-9) {
    std::vector<std::string> problems;
    for (std::size_t i = 0; i < bundle.gates.size(); ++i) {
        double total = 0.0;
        for (std::size_t k = 0; k < bundle.gates[i].pixels.size(); ++k) {
            const auto& p = bundle.gates[i].pixels[k];
            total += p.joint_mass;
            if (p.joint_mass >= kZeroMassEps) {
                const double s = std::accumulate(p.histogram.probs.begin(), p.histogram.probs.end(), 0.0);
                if (std::abs(s - 1.0) > tol) {
                    problems.push_back("gate " + std::to_string(i) + ", pixel " + std::to_string(k) +
                                       ": conditional sums to " + std::to_string(s));
                }
            }
        }
        if (std::abs(total - 1.0) > tol) {
            problems.push_back("gate " + std::to_string(i) + ": total mass " + std::to_string(total));
        }
    }
    return problems;
}

} // namespace neqrscope

#endif
