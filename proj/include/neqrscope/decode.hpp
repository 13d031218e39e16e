#ifndef NEQRSCOPE_DECODE_HPP
#define NEQRSCOPE_DECODE_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "neqrscope/image.hpp"
#include "neqrscope/statevector.hpp"

namespace neqrscope {

/// Splits a statevector into per-pixel color distributions.
[[nodiscard]] inline QuantumImage decode(const Statevector& state, const NeqrLayout& layout) {
    if (state.qubit_count() != layout.qubit_count()) {
        throw DecodeError("decode: state has " + std::to_string(state.qubit_count()) +
                          " qubits, layout needs " + std::to_string(layout.qubit_count()));
    }
    const int side = layout.side();
    const std::size_t colors = layout.color_count();
    auto amps = state.amplitudes();

    std::vector<PixelDistribution> cells(layout.pixel_count());
    for (int row = 0; row < side; ++row) {
        for (int col = 0; col < side; ++col) {
            auto& px = cells[static_cast<std::size_t>(row) * side + col];
            px.row = row;
            px.col = col;
            px.conditional.assign(colors, 0.0);
            const std::size_t base = layout.basis_index(row, col, 0);
            double mass = 0.0;
            for (std::size_t c = 0; c < colors; ++c) {
                const double p = std::norm(amps[base + c]);
                px.conditional[c] = p;
                mass += p;
            }
            px.joint_mass = mass;
            if (mass < kZeroMassEps) {
                px.conditional.assign(colors, 0.0);
            } else {
                for (auto& p : px.conditional) {
                    p /= mass;
                }
            }
        }
    }
    return QuantumImage{layout, Grid<PixelDistribution>(side, std::move(cells))};
}

/// Index of the largest entry; ties (and all-zero input) go to the smallest index.
[[nodiscard]] inline int most_probable_color(const std::vector<double>& conditional) {
    int best = 0;
    for (std::size_t c = 1; c < conditional.size(); ++c) {
        if (conditional[c] > conditional[static_cast<std::size_t>(best)]) {
            best = static_cast<int>(c);
        }
    }
    return best;
}

/// Most probable color per pixel, darkest on ties.
[[nodiscard]] inline ClassicalImage argmax_image(const QuantumImage& qimg) {
    ClassicalImage out(qimg.layout);
    for (const auto& px : qimg.pixels.cells()) {
        out.at(px.row, px.col) = most_probable_color(px.conditional);
    }
    return out;
}

} // namespace neqrscope

#endif
