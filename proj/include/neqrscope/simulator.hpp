#ifndef NEQRSCOPE_SIMULATOR_HPP
#define NEQRSCOPE_SIMULATOR_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "neqrscope/circuit.hpp"
#include "neqrscope/statevector.hpp"

namespace neqrscope {

/// Applies `gate` to `state` without copying. Throws InvalidGate on bad indices.
inline void apply_in_place(Statevector& state, const BasicGate& gate) {
    gate.validate(state.qubit_count());
    auto amps = state.amplitudes();
    const std::uint64_t dim = amps.size();
    const std::uint64_t tbit = std::uint64_t{1} << gate.target;

    switch (gate.kind) {
    case GateKind::H: {
        constexpr double s = 0.70710678118654752440; // 1/sqrt(2)
        for (std::uint64_t i = 0; i < dim; ++i) {
            if (i & tbit) {
                continue;
            }
            const Amplitude a = amps[i];
            const Amplitude b = amps[i | tbit];
            amps[i] = (a + b) * s;
            amps[i | tbit] = (a - b) * s;
        }
        break;
    }
    case GateKind::X:
        for (std::uint64_t i = 0; i < dim; ++i) {
            if (!(i & tbit)) {
                std::swap(amps[i], amps[i | tbit]);
            }
        }
        break;
    case GateKind::MCX: {
        std::uint64_t cmask = 0;
        for (int c : gate.controls) {
            cmask |= std::uint64_t{1} << c;
        }
        for (std::uint64_t i = 0; i < dim; ++i) {
            if (!(i & tbit) && (i & cmask) == cmask) {
                std::swap(amps[i], amps[i | tbit]);
            }
        }
        break;
    }
    }
}

[[nodiscard]] inline Statevector apply_basic_gate(Statevector state, const BasicGate& gate) {
    apply_in_place(state, gate);
    return state;
}

/// Snapshot 0 is |0...0>; snapshot i follows composite i-1.
using SnapshotSeries = std::vector<Statevector>;

/// Simulates `circuit` from |0...0>, calling `on_snapshot(index, state)` for the
/// initial state and after every composite. Only one state is alive at a time.
template <class Fn>
void run_streaming(const Circuit& circuit, Fn&& on_snapshot) {
    circuit.validate();
    Statevector state(circuit.qubit_count());
    on_snapshot(std::size_t{0}, static_cast<const Statevector&>(state));
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        for (const auto& g : circuit.gates[i].gates) {
            apply_in_place(state, g);
        }
        on_snapshot(i + 1, static_cast<const Statevector&>(state));
    }
}

[[nodiscard]] inline SnapshotSeries run_with_snapshots(const Circuit& circuit) {
    SnapshotSeries out;
    out.reserve(circuit.gates.size() + 1);
    run_streaming(circuit, [&](std::size_t, const Statevector& s) { out.push_back(s); });
    return out;
}

[[nodiscard]] inline Statevector run_final(const Circuit& circuit) {
    Statevector last;
    run_streaming(circuit, [&](std::size_t i, const Statevector& s) {
        if (i == circuit.gates.size()) {
            last = s;
        }
    });
    return last;
}

} // namespace neqrscope

#endif
