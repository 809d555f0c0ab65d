#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace edss {

using cx = std::complex<double>;

/// N-qubit Pauli operator in symplectic form: i^phase_exp * prod_q X_q^{x_q} Z_q^{z_q},
/// with the convention Y = i X Z. Qubit 0 is the most significant index bit.
struct PauliWord {
    int n_qubits = 0;
    std::uint32_t x_mask = 0;
    std::uint32_t z_mask = 0;
    int phase_exp = 0;  // exponent of i, mod 4

    PauliWord() = default;
    explicit PauliWord(int n) : n_qubits(n) {
        if (n < 1 || n > 20) throw std::invalid_argument("PauliWord: bad qubit count");
    }

    static PauliWord identity(int n) { return PauliWord(n); }

    bool x_bit(int q) const { return (x_mask >> q) & 1u; }
    bool z_bit(int q) const { return (z_mask >> q) & 1u; }

    /// Letter at qubit q ignoring the global phase ('I','X','Y','Z').
    char letter(int q) const {
        bool x = x_bit(q), z = z_bit(q);
        if (x && z) return 'Y';
        if (x) return 'X';
        if (z) return 'Z';
        return 'I';
    }

    /// Overwrites qubit q with the given letter, keeping the i^phase bookkeeping so
    /// that a word built from letters realizes exactly the product of those Paulis.
    void set_letter(int q, char letter);

    int y_count() const;

    /// Self-adjoint iff phase_exp and the number of Y letters have equal parity.
    bool is_hermitian() const { return ((phase_exp - y_count()) & 1) == 0; }

    /// For a Hermitian word, the sign relative to the canonical letter product (+1 or -1).
    int hermitian_sign() const;

    PauliWord operator*(const PauliWord& other) const;

    bool commutes_with(const PauliWord& other) const;

    /// Dense 2^n x 2^n realization.
    Eigen::MatrixXcd dense() const;

    /// e.g. "ZC.XA" for labels (C,A,B); identity prints "I"; a -1 sign prints a leading '-'.
    std::string to_string(const std::vector<char>& labels) const;
};

/// Builds a word from per-label letters, e.g. pauli_from_letters({'C','A','B'}, "IZX") = Z_A X_B.
PauliWord pauli_from_letters(const std::vector<char>& labels, const std::string& letters);

}  // namespace edss
