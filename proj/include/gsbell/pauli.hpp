#pragma once

// Signed Pauli strings in symplectic form and real-weighted sums of them.
//
// A PauliString stores i^phase * P_1 (x) P_2 (x) ... (x) P_n where each P_k is
// read from the bit pair (x_k, z_k): (0,0) = I, (1,0) = X, (1,1) = Y,
// (0,1) = Z. Because Y is stored directly (not as XZ), an operator is
// Hermitian exactly when phase is even.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gsbell/error.hpp"

namespace gsbell {

inline constexpr int kMaxQubits = 64;

enum class Letter : std::uint8_t { I, X, Y, Z };

constexpr char letter_char(Letter l) noexcept { return "IXYZ"[static_cast<int>(l)]; }

constexpr std::uint64_t low_bits(int n) noexcept {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

class PauliString {
  public:
    PauliString() = default;

    /// Identity on `n` qubits.
    explicit PauliString(int n) : n_(checked_width(n)) {}

    PauliString(int n, std::uint64_t x_mask, std::uint64_t z_mask, int phase = 0)
        : n_(checked_width(n)), x_(x_mask), z_(z_mask), phase_(static_cast<std::uint8_t>(((phase % 4) + 4) % 4)) {
        if (((x_ | z_) & ~low_bits(n_)) != 0) throw DimensionError("Pauli masks set bits beyond qubit count");
    }

    static PauliString single(int n, int qubit, Letter l) {
        if (qubit < 0 || qubit >= n) throw DimensionError("qubit index out of range");
        const std::uint64_t bit = std::uint64_t{1} << qubit;
        const bool has_x = l == Letter::X || l == Letter::Y;
        const bool has_z = l == Letter::Z || l == Letter::Y;
        return PauliString(n, has_x ? bit : 0, has_z ? bit : 0);
    }

    /// Parses "[+|-|i|+i|-i]LETTERS" with letters from IXYZ, qubit 1 leftmost.
    static PauliString parse(std::string_view text) {
        int phase = 0;
        if (text.starts_with("+i")) {
            phase = 1;
            text.remove_prefix(2);
        } else if (text.starts_with("-i")) {
            phase = 3;
            text.remove_prefix(2);
        } else if (text.starts_with('i')) {
            phase = 1;
            text.remove_prefix(1);
        } else if (text.starts_with('+')) {
            text.remove_prefix(1);
        } else if (text.starts_with('-')) {
            phase = 2;
            text.remove_prefix(1);
        }
        if (text.empty()) throw ParseError("empty Pauli string");
        if (text.size() > kMaxQubits) throw ParseError("Pauli string longer than 64 qubits");
        std::uint64_t x = 0, z = 0;
        for (std::size_t k = 0; k < text.size(); ++k) {
            const std::uint64_t bit = std::uint64_t{1} << k;
            switch (text[k]) {
                case 'I': break;
                case 'X': x |= bit; break;
                case 'Y': x |= bit; z |= bit; break;
                case 'Z': z |= bit; break;
                default: throw ParseError(std::string("unexpected character '") + text[k] + "' in Pauli string");
            }
        }
        return PauliString(static_cast<int>(text.size()), x, z, phase);
    }

    int num_qubits() const noexcept { return n_; }
    std::uint64_t x_mask() const noexcept { return x_; }
    std::uint64_t z_mask() const noexcept { return z_; }
    /// Exponent of i, in [0, 4).
    int phase() const noexcept { return phase_; }
    std::uint64_t support() const noexcept { return x_ | z_; }
    int weight() const noexcept { return std::popcount(support()); }
    bool is_identity() const noexcept { return support() == 0; }

    Letter letter(int qubit) const noexcept {
        const bool x = (x_ >> qubit) & 1u;
        const bool z = (z_ >> qubit) & 1u;
        return x ? (z ? Letter::Y : Letter::X) : (z ? Letter::Z : Letter::I);
    }

    bool is_hermitian() const noexcept { return (phase_ & 1u) == 0; }

    /// +1 or -1; only meaningful for Hermitian strings.
    int sign() const noexcept { return phase_ == 2 ? -1 : 1; }

    PauliString unsigned_part() const { return PauliString(n_, x_, z_, 0); }
    PauliString negated() const { return PauliString(n_, x_, z_, phase_ + 2); }

    bool commutes_with(const PauliString& other) const {
        require_same_width(other);
        return (std::popcount((x_ & other.z_) ^ (z_ & other.x_)) & 1) == 0;
    }

    /// Relabels qubits: the letter on qubit q moves to qubit perm[q].
    PauliString permuted(std::span<const int> perm) const {
        if (static_cast<int>(perm.size()) != n_) throw DimensionError("permutation length differs from qubit count");
        std::uint64_t x = 0, z = 0, seen = 0;
        for (int q = 0; q < n_; ++q) {
            const int to = perm[q];
            if (to < 0 || to >= n_ || ((seen >> to) & 1u)) throw PreconditionError("not a permutation");
            seen |= std::uint64_t{1} << to;
            x |= ((x_ >> q) & 1u) << to;
            z |= ((z_ >> q) & 1u) << to;
        }
        return PauliString(n_, x, z, phase_);
    }

    std::string str() const {
        static constexpr std::string_view prefixes[] = {"", "i", "-", "-i"};
        std::string out(prefixes[phase_]);
        for (int q = 0; q < n_; ++q) out += letter_char(letter(q));
        return out;
    }

    friend PauliString operator*(const PauliString& a, const PauliString& b) {
        a.require_same_width(b);
        // Single-qubit products in the cyclic order X -> Y -> Z contribute +i,
        // the reverse order -i.
        const std::uint64_t ax = a.x_ & ~a.z_, ay = a.x_ & a.z_, az = ~a.x_ & a.z_;
        const std::uint64_t bx = b.x_ & ~b.z_, by = b.x_ & b.z_, bz = ~b.x_ & b.z_;
        const int forward = std::popcount((ax & by) | (ay & bz) | (az & bx));
        const int backward = std::popcount((ay & bx) | (az & by) | (ax & bz));
        return PauliString(a.n_, a.x_ ^ b.x_, a.z_ ^ b.z_, a.phase_ + b.phase_ + forward - backward);
    }

    friend bool operator==(const PauliString&, const PauliString&) = default;

    void require_same_width(const PauliString& other) const {
        if (n_ != other.n_) {
            throw DimensionError("qubit count mismatch: " + std::to_string(n_) + " vs " + std::to_string(other.n_));
        }
    }

  private:
    static int checked_width(int n) {
        if (n < 0 || n > kMaxQubits) throw DimensionError("qubit count must lie in [0, 64]");
        return n;
    }

    int n_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    std::uint8_t phase_ = 0;
};

inline PauliString pauli_mul(const PauliString& a, const PauliString& b) { return a * b; }

/// Real-weighted sum of Hermitian Pauli strings. Stored strings carry phase 0;
/// their signs live in the coefficients. Terms are ordered by (x_mask, z_mask).
class PauliSum {
  public:
    struct Term {
        double coeff;
        PauliString op;
    };

    PauliSum() = default;
    explicit PauliSum(int n) : n_(n) {}

    static PauliSum of(const PauliString& p, double coeff = 1.0) {
        PauliSum s(p.num_qubits());
        s.add(coeff, p);
        return s;
    }

    /// Merges `coeff * p` into the sum; a coefficient that becomes exactly zero drops the term.
    PauliSum& add(double coeff, const PauliString& p) {
        if (p.num_qubits() != n_) throw DimensionError("term qubit count differs from sum");
        if (!p.is_hermitian()) throw PreconditionError("non-Hermitian term " + p.str() + " rejected");
        const double c = coeff * p.sign();
        const PauliString key = p.unsigned_part();
        auto it = std::lower_bound(terms_.begin(), terms_.end(), key, [](const Term& t, const PauliString& k) {
            return less(t.op, k);
        });
        if (it != terms_.end() && it->op == key) {
            it->coeff += c;
            if (it->coeff == 0.0) terms_.erase(it);
        } else if (c != 0.0) {
            terms_.insert(it, Term{c, key});
        }
        return *this;
    }

    PauliSum& add(const PauliSum& other) {
        for (const auto& t : other.terms_) add(t.coeff, t.op);
        return *this;
    }

    int num_qubits() const noexcept { return n_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }

    /// Coefficient of the unsigned string `p` (0 when absent).
    double coefficient(const PauliString& p) const {
        for (const auto& t : terms_)
            if (t.op == p.unsigned_part()) return t.coeff * p.sign();
        return 0.0;
    }

    bool has_integer_coefficients() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return std::nearbyint(t.coeff) == t.coeff; });
    }

    std::uint64_t support() const {
        std::uint64_t s = 0;
        for (const auto& t : terms_) s |= t.op.support();
        return s;
    }

    PauliSum scaled(double factor) const {
        PauliSum out(n_);
        for (const auto& t : terms_) out.add(t.coeff * factor, t.op);
        return out;
    }

    PauliSum permuted(std::span<const int> perm) const {
        PauliSum out(n_);
        for (const auto& t : terms_) out.add(t.coeff, t.op.permuted(perm));
        return out;
    }

    /// Termwise comparison with absolute coefficient tolerance.
    bool approx_equal(const PauliSum& other, double tol) const {
        if (n_ != other.n_ || terms_.size() != other.terms_.size()) return false;
        for (std::size_t k = 0; k < terms_.size(); ++k) {
            if (!(terms_[k].op == other.terms_[k].op)) return false;
            if (std::abs(terms_[k].coeff - other.terms_[k].coeff) > tol) return false;
        }
        return true;
    }

    /// "+ZXZ +YYZ +ZYY -YXY" style rendering; integral coefficients of
    /// magnitude one are left implicit.
    std::string str() const {
        std::string out;
        for (const auto& t : terms_) {
            if (!out.empty()) out += ' ';
            out += t.coeff < 0 ? '-' : '+';
            const double mag = std::abs(t.coeff);
            if (mag != 1.0) {
                std::string num = std::to_string(mag);
                num.erase(num.find_last_not_of('0') + 1);
                if (num.back() == '.') num.pop_back();
                out += num + '*';
            }
            out += t.op.str();
        }
        return out;
    }

    friend bool operator==(const PauliSum& a, const PauliSum& b) {
        if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t k = 0; k < a.terms_.size(); ++k)
            if (!(a.terms_[k].op == b.terms_[k].op) || a.terms_[k].coeff != b.terms_[k].coeff) return false;
        return true;
    }

    /// Operator product. Every pairwise term product must be Hermitian, which
    /// holds when the factors' terms commute.
    friend PauliSum operator*(const PauliSum& a, const PauliSum& b) {
        if (a.n_ != b.n_) throw DimensionError("qubit count mismatch in PauliSum product");
        PauliSum out(a.n_);
        for (const auto& s : a.terms_) {
            for (const auto& t : b.terms_) {
                const PauliString p = s.op * t.op;
                if (!p.is_hermitian()) {
                    throw PreconditionError("product of anticommuting terms " + s.op.str() + " and " + t.op.str());
                }
                out.add(s.coeff * t.coeff, p);
            }
        }
        return out;
    }

    friend PauliSum operator+(PauliSum a, const PauliSum& b) {
        a.add(b);
        return a;
    }

    static bool less(const PauliString& a, const PauliString& b) {
        return a.x_mask() != b.x_mask() ? a.x_mask() < b.x_mask() : a.z_mask() < b.z_mask();
    }

  private:
    int n_ = 0;
    std::vector<Term> terms_;
};

inline PauliSum sum_add(PauliSum s, double coeff, const PauliString& p) {
    s.add(coeff, p);
    return s;
}

}  // namespace gsbell
