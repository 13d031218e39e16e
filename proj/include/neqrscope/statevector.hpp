#ifndef NEQRSCOPE_STATEVECTOR_HPP
#define NEQRSCOPE_STATEVECTOR_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "neqrscope/error.hpp"

namespace neqrscope {

using Amplitude = std::complex<double>;

/// Complex amplitudes of a q-qubit register. Basis index = sum of bit_i * 2^i,
/// so qubit 0 is the least significant bit.
class Statevector {
public:
    Statevector() = default;

    /// |0...0> on `qubit_count` qubits.
    explicit Statevector(int qubit_count) : Statevector(qubit_count, 0) {}

    /// Computational basis state |index>.
    Statevector(int qubit_count, std::uint64_t index)
        : qubit_count_(qubit_count) {
        if (qubit_count < 0 || qubit_count > 30) {
            throw Error("statevector: unsupported qubit count " + std::to_string(qubit_count));
        }
        amplitudes_.assign(std::size_t{1} << qubit_count, Amplitude{0.0, 0.0});
        if (index >= amplitudes_.size()) {
            throw Error("statevector: basis index out of range");
        }
        amplitudes_[index] = Amplitude{1.0, 0.0};
    }

    /// Takes ownership of raw amplitudes; the length must be a power of two.
    static Statevector from_amplitudes(std::vector<Amplitude> amplitudes) {
        int q = 0;
        while ((std::size_t{1} << q) < amplitudes.size()) {
            ++q;
        }
        if (amplitudes.empty() || (std::size_t{1} << q) != amplitudes.size()) {
            throw Error("statevector: length " + std::to_string(amplitudes.size()) +
                        " is not a power of two");
        }
        Statevector s;
        s.qubit_count_ = q;
        s.amplitudes_ = std::move(amplitudes);
        return s;
    }

    [[nodiscard]] int qubit_count() const noexcept { return qubit_count_; }
    [[nodiscard]] std::size_t size() const noexcept { return amplitudes_.size(); }

    [[nodiscard]] std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] std::span<Amplitude> amplitudes() noexcept { return amplitudes_; }

    [[nodiscard]] const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }
    [[nodiscard]] Amplitude& operator[](std::size_t i) { return amplitudes_[i]; }

    [[nodiscard]] double norm_squared() const noexcept {
        double acc = 0.0;
        for (const auto& a : amplitudes_) {
            acc += std::norm(a);
        }
        return acc;
    }

    friend bool operator==(const Statevector&, const Statevector&) = default;

private:
    int qubit_count_ = 0;
    std::vector<Amplitude> amplitudes_;
};

} // namespace neqrscope

#endif
