// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "neqrscope/neqrscope.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

using namespace neqrscope;

namespace {

struct Check {
    std::ostringstream notes;
    bool ok = true;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes << " [" << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double peak_rss_mib() {
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    return static_cast<double>(usage.ru_maxrss) / 1024.0; // ru_maxrss is KiB on Linux
}

// --- criteria --------------------------------------------------------------

void four_pixel_reproduction(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto image = io::read_image(std::string(NEQRSCOPE_TEST_DATA) + "/eq1.pgm");
    const auto circuit = build_neqr_prep(image);
    const auto state = run_final(circuit);
    const auto qimg = decode(state, circuit.layout);
    const double elapsed = seconds_since(t0);

    int nonzero = 0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        nonzero += state[i] != Amplitude{0.0, 0.0} ? 1 : 0;
    }
    c.expect(nonzero == 4, "nonzero amplitudes = " + std::to_string(nonzero));
    for (int r = 0; r < 2; ++r) {
        for (int col = 0; col < 2; ++col) {
            const auto idx = circuit.layout.basis_index(r, col, image.at(r, col));
            c.expect(std::abs(std::abs(state[idx]) - 0.5) <= 1e-12, "|amp| at index " + std::to_string(idx));
            c.expect(std::abs(qimg.at(r, col).joint_mass - 0.25) <= 1e-9, "joint mass");
        }
    }
    c.expect(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
    c.notes << " runtime=" << elapsed << "s";
}

void three_gate_pipeline(Check& c) {
    const auto circuit = scenarios::by_name("broken-final-gate");
    const auto b = simulate_and_analyze(circuit, 8);
    c.expect(b.gates.size() == 3, "gate count");
    if (b.gates.size() != 3) {
        return;
    }
    const auto& v0 = b.gates[0].variation;
    c.expect(std::abs(v0.at(0, 0)) <= 1e-12, "gate 0 M(0,0) = 0");
    c.expect(v0.at(0, 1) > 0.0 && v0.at(1, 0) > v0.at(0, 1) && v0.at(1, 1) > v0.at(1, 0),
             "gate 0 strictly increasing positive M");

    const auto& v1 = b.gates[1].variation;
    c.expect(v1.at(0, 0) > 0 && v1.at(0, 1) > 0 && v1.at(1, 0) < 0 && v1.at(1, 1) < 0, "gate 1 sign pattern");
    c.expect(std::abs(v1.at(0, 0) + v1.at(1, 1)) <= 1e-9, "M(0,0) = -M(1,1)");
    c.expect(std::abs(v1.at(0, 1) + v1.at(1, 0)) <= 1e-9, "M(0,1) = -M(1,0)");

    for (const auto& m : b.gates[2].modality.cells()) {
        c.expect(m == ModalityClass::uniform(), "gate 2 modality uniform");
    }
    for (const auto& p : b.gates[2].pixels) {
        for (double x : p.histogram.probs) {
            c.expect(std::abs(x - 0.125) <= 1e-9, "gate 2 bin = 0.125");
        }
    }
    c.notes << " M0=(" << v0.at(0, 0) << "," << v0.at(0, 1) << "," << v0.at(1, 0) << "," << v0.at(1, 1) << ")"
            << " M1=(" << v1.at(0, 0) << "," << v1.at(0, 1) << "," << v1.at(1, 0) << "," << v1.at(1, 1) << ")";
}

void difference_pattern(Check& c) {
    const auto b = simulate_and_analyze(scenarios::by_name("broken-final-gate"), 8);
    const std::vector<double> at_inversion{-1, 0, 0, 0, 0, 0, 0, 1};
    const std::vector<double> at_broken{0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125, -0.875};
    const auto& s1 = b.gates[1].pixel(0, 0).signed_diff;
    const auto& s2 = b.gates[2].pixel(0, 0).signed_diff;
    for (std::size_t j = 0; j < 8; ++j) {
        c.expect(std::abs(s1[j] - at_inversion[j]) <= 1e-9, "inversion bin " + std::to_string(j));
        c.expect(std::abs(s2[j] - at_broken[j]) <= 1e-9, "broken bin " + std::to_string(j));
    }
}

void prep_8x8(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto circuit = scenarios::by_name("prep8x8");
    const auto b = simulate_and_analyze(circuit, 8);
    const double elapsed = seconds_since(t0);
    c.expect(circuit.gates.size() == 65, "65 gates");
    c.expect(circuit.qubit_count() == 14, "14 qubits");
    for (const auto& m : b.gates.back().modality.cells()) {
        c.expect(m == ModalityClass::unimodal(), "final modality unimodal");
    }
    const auto image = scenarios::card8x8_image();
    const auto q = decode(run_final(circuit), circuit.layout);
    for (const auto& px : q.pixels.cells()) {
        const double joint = px.joint_mass * px.conditional[static_cast<std::size_t>(image.at(px.row, px.col))];
        c.expect(std::abs(joint - 1.0 / 64.0) <= 1e-9, "joint probability 1/64");
    }
    c.expect(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s");
    c.notes << " runtime=" << elapsed << "s";
}

void fault_scenario(Check& c) {
    const auto circuit = scenarios::by_name("prep8x8-hfault");
    const auto fault = scenarios::prep_setter_index(circuit.layout, 7, 4);
    c.expect(circuit.gates[fault].name == "PIXEL(POS=(7,4), VAL=250)", "fault gate name");
    const auto b = simulate_and_analyze(circuit, 8);

    auto all_unimodal = [](const GateAnalysis& g) {
        for (const auto& m : g.modality.cells()) {
            if (!(m == ModalityClass::unimodal())) {
                return false;
            }
        }
        return true;
    };
    for (std::size_t i = 0; i < b.gates.size(); ++i) {
        if (i < fault) {
            c.expect(all_unimodal(b.gates[i]), "gate " + std::to_string(i) + " unimodal before the fault");
        } else {
            c.expect(!all_unimodal(b.gates[i]), "gate " + std::to_string(i) + " not all-unimodal");
        }
    }

    // golden file
    const auto golden = io::parse_analysis(
        io::read_text_file(std::string(NEQRSCOPE_GOLDEN_DIR) + "/prep8x8-hfault.analysis.json"));
    c.expect(golden.circuit == circuit, "golden circuit");
    c.expect(golden.bundle == b, "golden bundle");

    // independent oracle: sparse simulation + brute-force pixel sums
    oracle::SparseSim sim;
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        for (const auto& g : circuit.gates[i].gates) {
            sim.apply(g);
        }
        if (i < fault) {
            continue;
        }
        const auto probs = oracle::pixel_probs(sim.entries(), 3, 8);
        for (int r = 0; r < 8; ++r) {
            for (int col = 0; col < 8; ++col) {
                const PixelDistribution px{r, col, probs.mass(r, col), probs.conditional(r, col)};
                c.expect(modality(px) == golden.bundle.gates[i].modality.at(r, col),
                         "oracle modality gate " + std::to_string(i));
            }
        }
    }

    // pixel (7,4) flattens: point mass before, spread after
    auto peak = [](const PixelGateAnalysis& p) { return p.top_colors.empty() ? 0.0 : p.top_colors[0].conditional; };
    const double before = peak(b.gates[fault - 1].pixel(7, 4));
    const double after = peak(b.gates[fault].pixel(7, 4));
    const auto final_class = b.gates.back().modality.at(7, 4);
    c.expect(before == 1.0, "(7,4) point mass before");
    c.expect(after < 1.0 - 1e-9, "(7,4) flatter after");
    c.expect(!(b.gates[fault].modality.at(7, 4) == ModalityClass::unimodal()), "(7,4) not unimodal");
    c.notes << " (7,4) peak " << before << " -> " << after << ", class " << to_string(final_class.tag) << "("
            << final_class.peaks << ")";
}

void oracle_equivalence(Check& c) {
    std::mt19937_64 rng(20240901);
    double worst = 0.0;
    int count = 0;
    for (; count < 200; ++count) {
        const auto circuit = oracle::random_circuit(rng, 6, 30);
        worst = std::max(worst, oracle::max_abs_diff(dense_oracle(circuit), run_final(circuit)));
    }
    c.expect(worst < 1e-9, "max amplitude error " + std::to_string(worst));
    c.notes << " circuits=" << count << " max_err=" << worst;
}

void property_suites(Check& c) {
    const std::vector<std::pair<std::string, props::Outcome>> suites{
        {"departure", props::departure_properties(1000, 101)},
        {"binning", props::binning_properties(1000, 102)},
        {"modality", props::modality_translation(1000, 103)},
        {"roundtrip", props::neqr_roundtrip(1000, 104)},
        {"simulator", props::simulator_invariants(1000, 105)},
    };
    for (const auto& [name, o] : suites) {
        c.expect(o.ok() && o.cases >= 1000, name + ": " + o.failure.value_or(std::to_string(o.cases) + " cases"));
        c.notes << " " << name << "=" << o.cases;
    }
}

void scale_16x16(Check& c) {
    std::mt19937_64 rng(16);
    const auto image = oracle::random_image(rng, 4, 8);
    const auto t0 = std::chrono::steady_clock::now();
    const auto circuit = build_neqr_prep(image);
    const auto b = simulate_and_analyze(circuit, 8);
    const double elapsed = seconds_since(t0);
    const double rss = peak_rss_mib();
    c.expect(circuit.gates.size() == 257, "257 gates");
    c.expect(circuit.qubit_count() == 16, "16 qubits");
    c.expect(b.gates.back().after_image == image, "decoded image");
    c.expect(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s");
    c.expect(rss < 1024.0, "peak RSS " + std::to_string(rss) + " MiB");
    c.notes << " runtime=" << elapsed << "s peak_rss=" << rss << "MiB";
}

} // namespace

int main() {
    // Scale first so peak RSS reflects that criterion alone.
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"AC8 scale 16x16 b=8 (<30 s, <1 GiB)", scale_16x16},
        {"AC1 2x2 four-level preparation amplitudes and masses", four_pixel_reproduction},
        {"AC2 three-gate pipeline variation/modality/histograms", three_gate_pipeline},
        {"AC3 pixel (0,0) signed bin differences", difference_pattern},
        {"AC4 8x8 preparation", prep_8x8},
        {"AC5 fault scenario vs golden and brute-force oracle", fault_scenario},
        {"AC6 dense oracle equivalence (200 circuits)", oracle_equivalence},
        {"AC7 property suites (>=1000 cases each)", property_suites},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Check c;
        try {
            run(c);
        } catch (const std::exception& e) {
            c.ok = false;
            c.notes << " exception: " << e.what();
        }
        std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << name << " --" << c.notes.str() << std::endl;
        failed += c.ok ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed")
              << std::endl;
    return failed == 0 ? 0 : 1;
}
