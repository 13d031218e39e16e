#ifndef NEQRSCOPE_IMAGE_HPP
#define NEQRSCOPE_IMAGE_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "neqrscope/error.hpp"
#include "neqrscope/layout.hpp"

namespace neqrscope {

/// Row-major square grid addressed as (row, col).
template <class T>
class Grid {
public:
    Grid() = default;
    Grid(int side, T fill) : side_(side), cells_(static_cast<std::size_t>(side) * side, fill) {}
    Grid(int side, std::vector<T> cells) : side_(side), cells_(std::move(cells)) {
        if (cells_.size() != static_cast<std::size_t>(side) * side) {
            throw Error("grid: " + std::to_string(cells_.size()) + " cells do not form a " +
                        std::to_string(side) + "x" + std::to_string(side) + " grid");
        }
    }

    [[nodiscard]] int side() const noexcept { return side_; }
    [[nodiscard]] std::size_t size() const noexcept { return cells_.size(); }

    T& at(int row, int col) { return cells_[index(row, col)]; }
    const T& at(int row, int col) const { return cells_[index(row, col)]; }

    [[nodiscard]] const std::vector<T>& cells() const noexcept { return cells_; }
    [[nodiscard]] std::vector<T>& cells() noexcept { return cells_; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    [[nodiscard]] std::size_t index(int row, int col) const {
        if (row < 0 || col < 0 || row >= side_ || col >= side_) {
            throw Error("grid: (" + std::to_string(row) + "," + std::to_string(col) + ") out of range");
        }
        return static_cast<std::size_t>(row) * side_ + static_cast<std::size_t>(col);
    }

    int side_ = 0;
    std::vector<T> cells_;
};

/// A 2^n x 2^n image of integer gray values in [0, 2^b - 1].
struct ClassicalImage {
    NeqrLayout layout;
    Grid<int> values;

    ClassicalImage() = default;
    explicit ClassicalImage(NeqrLayout l) : layout(l), values(l.side(), 0) {}
    ClassicalImage(NeqrLayout l, std::vector<int> row_major) : layout(l), values(l.side(), std::move(row_major)) {
        for (int v : values.cells()) {
            if (v < 0 || v > layout.max_value()) {
                throw Error("image: value " + std::to_string(v) + " outside [0, " +
                            std::to_string(layout.max_value()) + "]");
            }
        }
    }

    [[nodiscard]] int at(int row, int col) const { return values.at(row, col); }
    int& at(int row, int col) { return values.at(row, col); }

    friend bool operator==(const ClassicalImage&, const ClassicalImage&) = default;
};

/// Color statistics of one pixel position.
struct PixelDistribution {
    int row = 0;
    int col = 0;
    /// Probability of measuring this position at all.
    double joint_mass = 0.0;
    /// Color probabilities given the position; all zeros for zero-mass pixels.
    std::vector<double> conditional;
};

/// Pixels with joint mass below this are treated as empty.
inline constexpr double kZeroMassEps = 1e-12;

struct QuantumImage {
    NeqrLayout layout;
    Grid<PixelDistribution> pixels;

    [[nodiscard]] const PixelDistribution& at(int row, int col) const { return pixels.at(row, col); }
};

} // namespace neqrscope

#endif
