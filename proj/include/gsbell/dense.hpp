#pragma once

// Small-n dense backend: graph-state vectors, expectations by applying Pauli
// strings to amplitudes, and Hermitian eigendecomposition of Pauli sums.
//
// Bit k of a basis index is the value of qubit k (qubit k+1 in 1-based labels).

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "gsbell/error.hpp"
#include "gsbell/graph.hpp"
#include "gsbell/pauli.hpp"

namespace gsbell {

inline constexpr int kMaxStateQubits = 14;
inline constexpr int kMaxMatrixQubits = 10;
inline constexpr double kEigenTolerance = 1e-8;
inline constexpr double kPsdTolerance = 1e-9;

using cplx = std::complex<double>;

struct StateVector {
    int n = 0;
    Eigen::VectorXcd amplitudes;
};

struct SpectrumSummary {
    double max_eigenvalue = 0.0;
    int multiplicity = 0;  // eigenvalues within kEigenTolerance of the maximum
    double min_eigenvalue = 0.0;
    Eigen::MatrixXcd top_eigenvectors;  // orthonormal basis of the top eigenspace
};

struct PsdResult {
    double min_eigenvalue = 0.0;
    bool is_psd = false;
};

namespace detail {

inline cplx i_power(int k) {
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((k % 4) + 4) % 4];
}

inline void require_qubits(int n, int cap, const char* what) {
    if (n > cap) {
        throw ResourceError(std::string(what) + " on " + std::to_string(n) + " qubits exceeds the cap of " + std::to_string(cap));
    }
}

}  // namespace detail

/// Uniform superposition with a controlled-phase on every edge; the all-zeros
/// amplitude is real and positive.
inline StateVector graph_state_vector(const Graph& g, int cap = kMaxStateQubits) {
    const int n = g.num_vertices();
    detail::require_qubits(n, cap, "graph state vector");
    const auto edges = g.edges();
    const std::size_t dim = std::size_t{1} << n;
    StateVector s{n, Eigen::VectorXcd(static_cast<Eigen::Index>(dim))};
    const double amp = std::pow(2.0, -0.5 * n);
    for (std::size_t b = 0; b < dim; ++b) {
        int parity = 0;
        for (auto [u, v] : edges) parity ^= static_cast<int>((b >> u) & (b >> v) & 1u);
        s.amplitudes[static_cast<Eigen::Index>(b)] = parity ? -amp : amp;
    }
    return s;
}

/// p|psi>. On basis states, p|b> = i^(phase + #Y) (-1)^popcount(b & z) |b ^ x>.
inline Eigen::VectorXcd apply_pauli(const PauliString& p, const Eigen::VectorXcd& psi) {
    if (psi.size() != (Eigen::Index{1} << p.num_qubits())) throw DimensionError("state dimension does not match Pauli string");
    const cplx base = detail::i_power(p.phase() + std::popcount(p.x_mask() & p.z_mask()));
    Eigen::VectorXcd out(psi.size());
    for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(psi.size()); ++b) {
        const cplx f = (std::popcount(b & p.z_mask()) & 1) ? -base : base;
        out[static_cast<Eigen::Index>(b ^ p.x_mask())] = f * psi[static_cast<Eigen::Index>(b)];
    }
    return out;
}

inline cplx expectation(const StateVector& s, const PauliString& p) {
    if (p.num_qubits() != s.n) throw DimensionError("state and operator differ in qubit count");
    return s.amplitudes.dot(apply_pauli(p, s.amplitudes));
}

/// Sum of coeff * <s|term|s> in stored term order; real part of a Hermitian form.
inline double expectation(const StateVector& s, const PauliSum& b) {
    if (b.num_qubits() != s.n) throw DimensionError("state and operator differ in qubit count");
    double total = 0.0;
    for (const auto& t : b.terms()) total += t.coeff * expectation(s, t.op).real();
    return total;
}

/// Normalized post-measurement state after Z measurements on the given
/// vertices (0-based) with the given +-1 outcomes.
inline StateVector project_z(const StateVector& s, const std::map<int, int>& outcomes) {
    std::uint64_t mask = 0, minus = 0;
    for (auto [v, o] : outcomes) {
        if (v < 0 || v >= s.n) throw PreconditionError("measured vertex out of range");
        if (o != 1 && o != -1) throw PreconditionError("measurement outcome must be +1 or -1");
        mask |= std::uint64_t{1} << v;
        if (o < 0) minus |= std::uint64_t{1} << v;
    }
    StateVector out = s;
    for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(out.amplitudes.size()); ++b)
        if ((b & mask) != minus) out.amplitudes[static_cast<Eigen::Index>(b)] = 0;
    const double norm = out.amplitudes.norm();
    if (norm == 0.0) throw PreconditionError("measurement outcomes have probability zero");
    out.amplitudes /= norm;
    return out;
}

inline Eigen::MatrixXcd dense_matrix(const PauliString& p, int cap = kMaxMatrixQubits) {
    detail::require_qubits(p.num_qubits(), cap, "dense matrix");
    const std::uint64_t dim = std::uint64_t{1} << p.num_qubits();
    const cplx base = detail::i_power(p.phase() + std::popcount(p.x_mask() & p.z_mask()));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t b = 0; b < dim; ++b)
        m(static_cast<Eigen::Index>(b ^ p.x_mask()), static_cast<Eigen::Index>(b)) = (std::popcount(b & p.z_mask()) & 1) ? -base : base;
    return m;
}

inline Eigen::MatrixXcd dense_matrix(const PauliSum& s, int cap = kMaxMatrixQubits) {
    detail::require_qubits(s.num_qubits(), cap, "dense matrix");
    const Eigen::Index dim = Eigen::Index{1} << s.num_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : s.terms()) m += t.coeff * dense_matrix(t.op, cap);
    return m;
}

inline SpectrumSummary spectrum_of(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
    const auto& ev = solver.eigenvalues();
    SpectrumSummary out;
    out.max_eigenvalue = ev[ev.size() - 1];
    out.min_eigenvalue = ev[0];
    Eigen::Index first = ev.size() - 1;
    while (first > 0 && out.max_eigenvalue - ev[first - 1] <= kEigenTolerance) --first;
    out.multiplicity = static_cast<int>(ev.size() - first);
    out.top_eigenvectors = solver.eigenvectors().rightCols(out.multiplicity);
    return out;
}

inline SpectrumSummary spectrum(const PauliSum& b) {
    detail::require_qubits(b.num_qubits(), kMaxMatrixQubits, "spectrum");
    return spectrum_of(dense_matrix(b));
}

/// Weight of `s` inside the top eigenspace; 1 iff s lies in it.
inline double top_space_overlap(const SpectrumSummary& spec, const StateVector& s) {
    return (spec.top_eigenvectors.adjoint() * s.amplitudes).squaredNorm();
}

/// Minimum eigenvalue of scale * |s><s| - b.
inline PsdResult psd_check(const PauliSum& b, double projector_scale, const StateVector& s) {
    detail::require_qubits(b.num_qubits(), kMaxMatrixQubits, "PSD check");
    if (b.num_qubits() != s.n) throw DimensionError("state and operator differ in qubit count");
    const Eigen::MatrixXcd m = projector_scale * (s.amplitudes * s.amplitudes.adjoint()) - dense_matrix(b);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
    const double min = solver.eigenvalues()[0];
    return {min, min >= -kPsdTolerance};
}

/// Cluster-state fidelity lower bound from the summed expectations of the four
/// base LC_4 Bell operators: F >= sum / 16.
inline double fidelity_bound(double expectation_sum) { return expectation_sum / 16.0; }

}  // namespace gsbell
