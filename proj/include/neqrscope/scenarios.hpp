#ifndef NEQRSCOPE_SCENARIOS_HPP
#define NEQRSCOPE_SCENARIOS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "neqrscope/builders.hpp"
#include "neqrscope/circuit.hpp"
#include "neqrscope/image.hpp"

// Debugging scenarios used as regression fixtures: image preparation,
// inversion, a broken pixel setter, a faulty preparation and thresholding.
namespace neqrscope::scenarios {

/// 2x2 8-bit image {0, 85, 170, 255}.
[[nodiscard]] inline ClassicalImage eq1_image() {
    return ClassicalImage(NeqrLayout(1, 8), {0, 85, 170, 255});
}

/// 8x8 8-bit test card: value = 32*row + 4*col, with (6,5) = 238 and (7,4) = 250.
[[nodiscard]] inline ClassicalImage card8x8_image() {
    ClassicalImage img(NeqrLayout(3, 8));
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            img.at(r, c) = 32 * r + 4 * c;
        }
    }
    img.at(6, 5) = 238;
    img.at(7, 4) = 250;
    return img;
}

/// 4x4 image with eight gray values: value = (4*row + col) / 2.
[[nodiscard]] inline ClassicalImage c2_image() {
    ClassicalImage img(NeqrLayout(2, 3));
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            img.at(r, c) = (4 * r + c) / 2;
        }
    }
    return img;
}

inline constexpr int kC2Threshold = 4;

/// Index of the setter for (row, col) in a build_neqr_prep circuit.
[[nodiscard]] inline std::size_t prep_setter_index(const NeqrLayout& layout, int row, int col) {
    return 1 + static_cast<std::size_t>(row) * static_cast<std::size_t>(layout.side()) + static_cast<std::size_t>(col);
}

[[nodiscard]] inline Circuit eq1_prep() { return build_neqr_prep(eq1_image()); }

[[nodiscard]] inline Circuit inversion() {
    auto c = eq1_prep();
    c.gates.push_back(build_inversion(c.layout));
    return c;
}

/// Three composites: the whole preparation as one "NEQR" gate, the inversion,
/// and a setter for (0,0) -> 255 that applies H to every color qubit instead of
/// position-controlled toggles.
[[nodiscard]] inline Circuit broken_final_gate() {
    const auto prep = eq1_prep();
    Circuit c(prep.layout);
    CompositeGate neqr{"NEQR", {}};
    for (const auto& g : prep.gates) {
        neqr.gates.insert(neqr.gates.end(), g.gates.begin(), g.gates.end());
    }
    c.gates.push_back(std::move(neqr));
    c.gates.push_back(build_inversion(c.layout));
    CompositeGate broken{pixel_setter_name(0, 0, 255), {}};
    for (int i = 0; i < c.layout.b; ++i) {
        broken.gates.push_back(BasicGate::h(c.layout.color_qubit(i)));
    }
    c.gates.push_back(std::move(broken));
    return c;
}

[[nodiscard]] inline Circuit prep8x8() { return build_neqr_prep(card8x8_image()); }

/// Qubit hit by the stray H in prep8x8-hfault: the lowest row bit.
[[nodiscard]] inline int hfault_qubit() { return NeqrLayout(3, 8).row_qubit(0); }

/// prep8x8 with a stray H inserted at the start of PIXEL(POS=(7,4), VAL=250).
[[nodiscard]] inline Circuit prep8x8_hfault() {
    auto c = prep8x8();
    const auto index = prep_setter_index(c.layout, 7, 4);
    return inject_fault(std::move(c), index, 0, BasicGate::h(hfault_qubit()));
}

/// Preparation of c2_image followed by a threshold at kC2Threshold.
[[nodiscard]] inline Circuit threshold_c2() {
    const auto img = c2_image();
    auto c = build_neqr_prep(img);
    c.gates.push_back(build_threshold(img, kC2Threshold));
    return c;
}

[[nodiscard]] inline const std::vector<std::string>& names() {
    static const std::vector<std::string> all{"eq1-prep",  "inversion",      "broken-final-gate",
                                              "prep8x8",   "prep8x8-hfault", "threshold-c2"};
    return all;
}

/// Throws BuilderError for unknown names.
[[nodiscard]] inline Circuit by_name(std::string_view name) {
    if (name == "eq1-prep") return eq1_prep();
    if (name == "inversion") return inversion();
    if (name == "broken-final-gate") return broken_final_gate();
    if (name == "prep8x8") return prep8x8();
    if (name == "prep8x8-hfault") return prep8x8_hfault();
    if (name == "threshold-c2") return threshold_c2();
    throw BuilderError("unknown scenario '" + std::string(name) + "'");
}

} // namespace neqrscope::scenarios

#endif
