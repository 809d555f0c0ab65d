#include "edss/pauli.hpp"

#include <bit>

namespace edss {

namespace {

int popcount(std::uint32_t v) { return std::popcount(v); }

Eigen::Matrix2cd letter_factor(bool x, bool z) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    if (x && z) {  // X*Z
        m(0, 1) = -1.0;
        m(1, 0) = 1.0;
    } else if (x) {
        m(0, 1) = 1.0;
        m(1, 0) = 1.0;
    } else if (z) {
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
    } else {
        m.setIdentity();
    }
    return m;
}

}  // namespace

void PauliWord::set_letter(int q, char letter) {
    if (q < 0 || q >= n_qubits) throw std::invalid_argument("PauliWord::set_letter: bad qubit");
    if (x_bit(q) && z_bit(q)) phase_exp = (phase_exp + 3) & 3;  // remove the old Y's i
    std::uint32_t bit = 1u << q;
    x_mask &= ~bit;
    z_mask &= ~bit;
    switch (letter) {
        case 'I': break;
        case 'X': x_mask |= bit; break;
        case 'Z': z_mask |= bit; break;
        case 'Y':
            x_mask |= bit;
            z_mask |= bit;
            phase_exp = (phase_exp + 1) & 3;
            break;
        default: throw std::invalid_argument("PauliWord::set_letter: unknown letter");
    }
}

int PauliWord::y_count() const { return popcount(x_mask & z_mask); }

int PauliWord::hermitian_sign() const {
    if (!is_hermitian()) throw std::logic_error("PauliWord: sign of a non-Hermitian word");
    return ((phase_exp - y_count()) & 3) == 0 ? 1 : -1;
}

PauliWord PauliWord::operator*(const PauliWord& other) const {
    if (n_qubits != other.n_qubits) throw std::invalid_argument("PauliWord: size mismatch");
    PauliWord out(n_qubits);
    // Z^z1 X^x2 = (-1)^{|z1 & x2|} X^x2 Z^z1 on each qubit.
    out.phase_exp = (phase_exp + other.phase_exp + 2 * popcount(z_mask & other.x_mask)) & 3;
    out.x_mask = x_mask ^ other.x_mask;
    out.z_mask = z_mask ^ other.z_mask;
    return out;
}

bool PauliWord::commutes_with(const PauliWord& other) const {
    if (n_qubits != other.n_qubits) throw std::invalid_argument("PauliWord: size mismatch");
    int symplectic = popcount(x_mask & other.z_mask) + popcount(z_mask & other.x_mask);
    return (symplectic & 1) == 0;
}

Eigen::MatrixXcd PauliWord::dense() const {
    // Qubit 0 is the most significant index bit, so it must be the outermost factor.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Ones(1, 1);
    for (int q = n_qubits - 1; q >= 0; --q) {
        Eigen::Matrix2cd f = letter_factor(x_bit(q), z_bit(q));
        Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
        next.topLeftCorner(m.rows(), m.cols()) = f(0, 0) * m;
        next.topRightCorner(m.rows(), m.cols()) = f(0, 1) * m;
        next.bottomLeftCorner(m.rows(), m.cols()) = f(1, 0) * m;
        next.bottomRightCorner(m.rows(), m.cols()) = f(1, 1) * m;
        m.swap(next);
    }
    static const cx phases[4] = {cx(1, 0), cx(0, 1), cx(-1, 0), cx(0, -1)};
    return phases[phase_exp & 3] * m;
}

std::string PauliWord::to_string(const std::vector<char>& labels) const {
    if (static_cast<int>(labels.size()) != n_qubits)
        throw std::invalid_argument("PauliWord::to_string: label count mismatch");
    std::string out;
    if (is_hermitian() && hermitian_sign() < 0) out += '-';
    bool any = false;
    for (int q = 0; q < n_qubits; ++q) {
        char l = letter(q);
        if (l == 'I') continue;
        if (any) out += '.';
        out += l;
        out += labels[q];
        any = true;
    }
    if (!any) out += 'I';
    return out;
}

PauliWord pauli_from_letters(const std::vector<char>& labels, const std::string& letters) {
    if (labels.size() != letters.size())
        throw std::invalid_argument("pauli_from_letters: letter count mismatch");
    PauliWord w(static_cast<int>(labels.size()));
    for (int q = 0; q < w.n_qubits; ++q) w.set_letter(q, letters[q]);
    return w;
}

}  // namespace edss
