#ifndef NEQRSCOPE_LAYOUT_HPP
#define NEQRSCOPE_LAYOUT_HPP

#include <cstddef>
#include <cstdint>
#include <string>

#include "neqrscope/error.hpp"

namespace neqrscope {

/// Qubit assignment of a 2^n x 2^n image with b-bit gray values.
///
/// Color qubits are the least significant, followed by the column (Y) register
/// and then the row (X) register:
///
///     basis index = row * 2^(n+b) + col * 2^b + color
///
/// so color bit i is qubit i, column bit j is qubit b+j and row bit j is qubit b+n+j.
struct NeqrLayout {
    int n = 1;
    int b = 1;

    /// Largest register the library will allocate a statevector for.
    static constexpr int kMaxQubits = 30;

    NeqrLayout() = default;
    NeqrLayout(int n_, int b_) : n(n_), b(b_) { validate(); }

    void validate() const {
        if (n < 1 || b < 1 || 2 * n + b > kMaxQubits) {
            throw Error("layout: invalid (n=" + std::to_string(n) + ", b=" + std::to_string(b) + ")");
        }
    }

    [[nodiscard]] int qubit_count() const noexcept { return 2 * n + b; }
    [[nodiscard]] int side() const noexcept { return 1 << n; }
    [[nodiscard]] std::size_t pixel_count() const noexcept { return std::size_t{1} << (2 * n); }
    [[nodiscard]] std::size_t color_count() const noexcept { return std::size_t{1} << b; }
    [[nodiscard]] int max_value() const noexcept { return (1 << b) - 1; }

    [[nodiscard]] int color_qubit(int bit) const noexcept { return bit; }
    [[nodiscard]] int col_qubit(int bit) const noexcept { return b + bit; }
    [[nodiscard]] int row_qubit(int bit) const noexcept { return b + n + bit; }
    [[nodiscard]] bool is_position_qubit(int q) const noexcept { return q >= b && q < qubit_count(); }

    [[nodiscard]] std::uint64_t basis_index(int row, int col, int color) const noexcept {
        return (static_cast<std::uint64_t>(row) << (n + b)) |
               (static_cast<std::uint64_t>(col) << b) | static_cast<std::uint64_t>(color);
    }

    [[nodiscard]] bool contains(int row, int col) const noexcept {
        return row >= 0 && col >= 0 && row < side() && col < side();
    }

    friend bool operator==(const NeqrLayout&, const NeqrLayout&) = default;
};

} // namespace neqrscope

#endif
