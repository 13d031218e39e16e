#ifndef NEQRSCOPE_CIRCUIT_HPP
#define NEQRSCOPE_CIRCUIT_HPP

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "neqrscope/error.hpp"
#include "neqrscope/layout.hpp"

namespace neqrscope {

enum class GateKind { H, X, MCX };

[[nodiscard]] inline std::string_view to_string(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::MCX: return "mcx";
    }
    return "?";
}

/// H, X or a multi-controlled X. Controls fire on 1; zero-controls are
/// expressed by surrounding X gates.
struct BasicGate {
    GateKind kind = GateKind::H;
    int target = 0;
    std::vector<int> controls;

    static BasicGate h(int target) { return {GateKind::H, target, {}}; }
    static BasicGate x(int target) { return {GateKind::X, target, {}}; }
    static BasicGate mcx(std::vector<int> controls, int target) {
        return {GateKind::MCX, target, std::move(controls)};
    }

    /// Throws InvalidGate unless every index is in [0, qubit_count) and the
    /// target is distinct from the controls.
    void validate(int qubit_count) const {
        auto in_range = [&](int q) { return q >= 0 && q < qubit_count; };
        if (!in_range(target)) {
            throw InvalidGate("target qubit " + std::to_string(target) + " out of range for " +
                              std::to_string(qubit_count) + " qubits");
        }
        if (kind != GateKind::MCX && !controls.empty()) {
            throw InvalidGate(std::string(to_string(kind)) + " gate cannot carry controls");
        }
        for (std::size_t i = 0; i < controls.size(); ++i) {
            const int c = controls[i];
            if (!in_range(c)) {
                throw InvalidGate("control qubit " + std::to_string(c) + " out of range for " +
                                  std::to_string(qubit_count) + " qubits");
            }
            if (c == target) {
                throw InvalidGate("control qubit " + std::to_string(c) + " equals the target");
            }
            if (std::find(controls.begin(), controls.begin() + static_cast<std::ptrdiff_t>(i), c) !=
                controls.begin() + static_cast<std::ptrdiff_t>(i)) {
                throw InvalidGate("duplicate control qubit " + std::to_string(c));
            }
        }
    }

    friend bool operator==(const BasicGate&, const BasicGate&) = default;
};

/// A named group of basic gates; the unit of one snapshot.
struct CompositeGate {
    std::string name;
    std::vector<BasicGate> gates;

    friend bool operator==(const CompositeGate&, const CompositeGate&) = default;
};

struct Circuit {
    NeqrLayout layout;
    std::vector<CompositeGate> gates;

    Circuit() = default;
    explicit Circuit(NeqrLayout l, std::vector<CompositeGate> g = {})
        : layout(l), gates(std::move(g)) {}

    [[nodiscard]] int qubit_count() const noexcept { return layout.qubit_count(); }

    /// Throws InvalidGate naming the offending composite and basic gate.
    void validate() const {
        layout.validate();
        for (std::size_t i = 0; i < gates.size(); ++i) {
            if (gates[i].name.empty()) {
                throw InvalidGate("composite " + std::to_string(i) + ": empty name");
            }
            for (std::size_t j = 0; j < gates[i].gates.size(); ++j) {
                try {
                    gates[i].gates[j].validate(qubit_count());
                } catch (const InvalidGate& e) {
                    throw InvalidGate("composite " + std::to_string(i) + " ('" + gates[i].name +
                                      "'), basic gate " + std::to_string(j) + ": " + e.what());
                }
            }
        }
    }

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

} // namespace neqrscope

#endif
