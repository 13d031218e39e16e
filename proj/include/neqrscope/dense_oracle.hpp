#ifndef NEQRSCOPE_DENSE_ORACLE_HPP
#define NEQRSCOPE_DENSE_ORACLE_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "neqrscope/circuit.hpp"
#include "neqrscope/statevector.hpp"

namespace neqrscope {

// Reference simulator: every basic gate becomes a full 2^q x 2^q matrix built
// from Kronecker products of 2x2 factors, then multiplies the state. Only used
// to cross-check the simulator on small registers.
namespace dense {

constexpr int kMaxQubits = 12;

/// Row-major square complex matrix.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static Matrix identity(std::size_t dim) {
        Matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    Amplitude& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Amplitude& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] += o.data_[i];
        }
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] -= o.data_[i];
        }
        return *this;
    }

private:
    std::size_t dim_ = 0;
    std::vector<Amplitude> data_;
};

using Factor = std::array<Amplitude, 4>; // [[f0 f1] [f2 f3]]

inline const Factor kIdentity{1.0, 0.0, 0.0, 1.0};
inline const Factor kPauliX{0.0, 1.0, 1.0, 0.0};
inline const Factor kProjOne{0.0, 0.0, 0.0, 1.0};
inline const Factor kHadamard{M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2};

[[nodiscard]] inline Matrix kron(const Matrix& a, const Factor& f) {
    Matrix out(a.dim() * 2);
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t c = 0; c < a.dim(); ++c) {
            for (std::size_t fr = 0; fr < 2; ++fr) {
                for (std::size_t fc = 0; fc < 2; ++fc) {
                    out(2 * r + fr, 2 * c + fc) = a(r, c) * f[2 * fr + fc];
                }
            }
        }
    }
    return out;
}

/// factors[q] acts on qubit q; the highest qubit is the leftmost Kronecker factor.
[[nodiscard]] inline Matrix kron_chain(const std::vector<Factor>& factors) {
    Matrix m = Matrix::identity(1);
    for (std::size_t k = factors.size(); k-- > 0;) {
        m = kron(m, factors[k]);
    }
    return m;
}

[[nodiscard]] inline Matrix gate_matrix(const BasicGate& gate, int qubit_count) {
    gate.validate(qubit_count);
    std::vector<Factor> factors(static_cast<std::size_t>(qubit_count), kIdentity);
    const auto t = static_cast<std::size_t>(gate.target);
    switch (gate.kind) {
    case GateKind::H:
        factors[t] = kHadamard;
        return kron_chain(factors);
    case GateKind::X:
        factors[t] = kPauliX;
        return kron_chain(factors);
    case GateKind::MCX: {
        // I - P_ctrl (x) I_t + P_ctrl (x) X_t
        Matrix m = Matrix::identity(std::size_t{1} << qubit_count);
        for (int c : gate.controls) {
            factors[static_cast<std::size_t>(c)] = kProjOne;
        }
        m -= kron_chain(factors);
        factors[t] = kPauliX;
        m += kron_chain(factors);
        return m;
    }
    }
    return {};
}

[[nodiscard]] inline std::vector<Amplitude> multiply(const Matrix& m, const std::vector<Amplitude>& v) {
    std::vector<Amplitude> out(v.size());
    for (std::size_t r = 0; r < m.dim(); ++r) {
        Amplitude acc{};
        for (std::size_t c = 0; c < m.dim(); ++c) {
            acc += m(r, c) * v[c];
        }
        out[r] = acc;
    }
    return out;
}

} // namespace dense

/// Final state of `circuit` computed with dense gate matrices. Throws
/// OracleUnavailable above dense::kMaxQubits qubits.
[[nodiscard]] inline Statevector dense_oracle(const Circuit& circuit) {
    const int q = circuit.qubit_count();
    if (q > dense::kMaxQubits) {
        throw OracleUnavailable("dense oracle: " + std::to_string(q) + " qubits exceeds limit of " +
                                std::to_string(dense::kMaxQubits));
    }
    circuit.validate();
    std::vector<Amplitude> v(std::size_t{1} << q);
    v[0] = 1.0;
    for (const auto& composite : circuit.gates) {
        for (const auto& g : composite.gates) {
            v = dense::multiply(dense::gate_matrix(g, q), v);
        }
    }
    return Statevector::from_amplitudes(std::move(v));
}

} // namespace neqrscope

#endif
