#ifndef NEQRSCOPE_BUILDERS_HPP
#define NEQRSCOPE_BUILDERS_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "neqrscope/circuit.hpp"
#include "neqrscope/image.hpp"

namespace neqrscope {

/// "PIXEL(POS=(row,col), VAL=value)"
[[nodiscard]] inline std::string pixel_setter_name(int row, int col, int value) {
    return "PIXEL(POS=(" + std::to_string(row) + "," + std::to_string(col) + "), VAL=" +
           std::to_string(value) + ")";
}

/// One H per position qubit, as a composite named "H".
[[nodiscard]] inline CompositeGate build_position_superposition(const NeqrLayout& layout) {
    CompositeGate g{"H", {}};
    for (int q = layout.b; q < layout.qubit_count(); ++q) {
        g.gates.push_back(BasicGate::h(q));
    }
    return g;
}

/// Gates that XOR `xor_mask` into the color register of pixel (row, col) only.
///
/// Position bits that are 0 in (row, col) are flipped before and after the MCX
/// block so that every MCX fires exactly on that position. A zero mask gives
/// an empty composite.
[[nodiscard]] inline std::vector<BasicGate> pixel_setter_gates(const NeqrLayout& layout, int row, int col,
                                                               int xor_mask) {
    if (!layout.contains(row, col)) {
        throw BuilderError("pixel setter: position (" + std::to_string(row) + "," + std::to_string(col) +
                           ") outside " + std::to_string(layout.side()) + "x" +
                           std::to_string(layout.side()) + " image");
    }
    if (xor_mask < 0 || xor_mask > layout.max_value()) {
        throw BuilderError("pixel setter: mask " + std::to_string(xor_mask) + " outside [0, " +
                           std::to_string(layout.max_value()) + "]");
    }
    std::vector<BasicGate> gates;
    if (xor_mask == 0) {
        return gates;
    }

    std::vector<int> controls;
    std::vector<int> zero_bits;
    for (int j = 0; j < layout.n; ++j) {
        controls.push_back(layout.col_qubit(j));
        if (((col >> j) & 1) == 0) {
            zero_bits.push_back(layout.col_qubit(j));
        }
    }
    for (int j = 0; j < layout.n; ++j) {
        controls.push_back(layout.row_qubit(j));
        if (((row >> j) & 1) == 0) {
            zero_bits.push_back(layout.row_qubit(j));
        }
    }

    for (int q : zero_bits) {
        gates.push_back(BasicGate::x(q));
    }
    for (int i = 0; i < layout.b; ++i) {
        if ((xor_mask >> i) & 1) {
            gates.push_back(BasicGate::mcx(controls, layout.color_qubit(i)));
        }
    }
    for (int q : zero_bits) {
        gates.push_back(BasicGate::x(q));
    }
    return gates;
}

/// Named pixel setter; `label_value` is the gray value shown in the name
/// (defaults to the mask, which is the value when the register starts at 0).
[[nodiscard]] inline CompositeGate build_pixel_setter(const NeqrLayout& layout, int row, int col, int xor_mask,
                                                      int label_value = -1) {
    auto gates = pixel_setter_gates(layout, row, col, xor_mask);
    return {pixel_setter_name(row, col, label_value < 0 ? xor_mask : label_value), std::move(gates)};
}

/// Position superposition followed by one setter per pixel, row by row.
[[nodiscard]] inline Circuit build_neqr_prep(const ClassicalImage& image) {
    const auto& layout = image.layout;
    Circuit c(layout);
    c.gates.push_back(build_position_superposition(layout));
    for (int row = 0; row < layout.side(); ++row) {
        for (int col = 0; col < layout.side(); ++col) {
            c.gates.push_back(build_pixel_setter(layout, row, col, image.at(row, col)));
        }
    }
    return c;
}

/// X on every color qubit.
[[nodiscard]] inline CompositeGate build_inversion(const NeqrLayout& layout) {
    CompositeGate g{"X", {}};
    for (int i = 0; i < layout.b; ++i) {
        g.gates.push_back(BasicGate::x(layout.color_qubit(i)));
    }
    return g;
}

/// Maps every pixel of `current` to white if its value is >= threshold and to
/// black otherwise, by XOR-ing the difference into each pixel.
[[nodiscard]] inline CompositeGate build_threshold(const ClassicalImage& current, int threshold) {
    const auto& layout = current.layout;
    const int white = layout.max_value();
    if (threshold < 0 || threshold > white + 1) {
        throw BuilderError("threshold: t=" + std::to_string(threshold) + " outside [0, " +
                           std::to_string(white + 1) + "]");
    }
    CompositeGate g{"THRESHOLD(" + std::to_string(threshold) + ")", {}};
    for (int row = 0; row < layout.side(); ++row) {
        for (int col = 0; col < layout.side(); ++col) {
            const int v = current.at(row, col);
            const int mask = v ^ (v >= threshold ? white : 0);
            auto setter = pixel_setter_gates(layout, row, col, mask);
            g.gates.insert(g.gates.end(), setter.begin(), setter.end());
        }
    }
    return g;
}

/// The classical result of build_threshold.
[[nodiscard]] inline ClassicalImage apply_threshold(ClassicalImage image, int threshold) {
    for (auto& v : image.values.cells()) {
        v = v >= threshold ? image.layout.max_value() : 0;
    }
    return image;
}

/// Copy of `circuit` with `stray` inserted into composite `gate_index` before
/// position `position`. The composite keeps its name.
[[nodiscard]] inline Circuit inject_fault(Circuit circuit, std::size_t gate_index, std::size_t position,
                                          const BasicGate& stray) {
    if (gate_index >= circuit.gates.size()) {
        throw BuilderError("inject: gate index " + std::to_string(gate_index) + " out of range (circuit has " +
                           std::to_string(circuit.gates.size()) + " gates)");
    }
    auto& target = circuit.gates[gate_index].gates;
    if (position > target.size()) {
        throw BuilderError("inject: position " + std::to_string(position) + " out of range (composite has " +
                           std::to_string(target.size()) + " gates)");
    }
    try {
        stray.validate(circuit.qubit_count());
    } catch (const InvalidGate& e) {
        throw BuilderError(std::string("inject: ") + e.what());
    }
    target.insert(target.begin() + static_cast<std::ptrdiff_t>(position), stray);
    return circuit;
}

} // namespace neqrscope

#endif
