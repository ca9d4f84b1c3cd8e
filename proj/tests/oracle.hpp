#pragma once

// Independent reference computations for the tests. Nothing here calls the
// fast paths it is used to check: Pauli matrices come from Kronecker products
// of explicit 2x2 blocks, LHV maxima from plain nested enumeration over
// assignment maps, and ranks from exact rational elimination.

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "gsbell/bell.hpp"
#include "gsbell/graph.hpp"
#include "gsbell/lhv.hpp"
#include "gsbell/pauli.hpp"

namespace gsbell::oracle {

using Mat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

inline Mat pauli_2x2(Letter l) {
    Mat m(2, 2);
    const cplx i{0, 1};
    switch (l) {
        case Letter::I: m << 1, 0, 0, 1; break;
        case Letter::X: m << 0, 1, 1, 0; break;
        case Letter::Y: m << 0, -i, i, 0; break;
        case Letter::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

/// Qubit k is bit k of the basis index, so the last qubit is the leftmost factor.
inline Mat matrix(const PauliString& p) {
    Mat m = Mat::Identity(1, 1);
    for (int q = p.num_qubits() - 1; q >= 0; --q) m = kron(m, pauli_2x2(p.letter(q)));
    const cplx phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return phases[p.phase()] * m;
}

inline Mat matrix(const PauliSum& s) {
    const Eigen::Index dim = Eigen::Index{1} << s.num_qubits();
    Mat m = Mat::Zero(dim, dim);
    for (const auto& t : s.terms()) m += t.coeff * matrix(t.op);
    return m;
}

/// Graph state as prod_k (1 + g_k)/2 applied to |0...0>, normalized and phased
/// so that the |0...0> amplitude is positive.
inline Eigen::VectorXcd graph_state(const Graph& g) {
    const int n = g.num_vertices();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    v[0] = 1;
    const Mat id = Mat::Identity(v.size(), v.size());
    for (int k = 0; k < n; ++k) v = 0.5 * (id + matrix(generator(g, k))) * v;
    v /= v.norm();
    v *= std::abs(v[0]) / v[0];
    return v;
}

inline double expectation(const Eigen::VectorXcd& psi, const PauliSum& s) {
    return (psi.adjoint() * matrix(s) * psi)(0, 0).real();
}

/// Variables of `b` in canonical order; Z variables omitted when `pin_z`.
inline std::vector<QubitVariable> variables(const PauliSum& b, bool pin_z) {
    std::vector<QubitVariable> vars;
    for (const auto& t : b.terms())
        for (int q = 0; q < b.num_qubits(); ++q) {
            const Letter l = t.op.letter(q);
            if (l != Letter::I && !(pin_z && l == Letter::Z)) vars.push_back({q, l});
        }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

/// max |E_L(b)| by direct substitution into every assignment.
inline double brute_force_max(const PauliSum& b, bool pin_z = false) {
    auto vars = variables(b, pin_z);
    Assignment a;
    if (pin_z)
        for (const auto& t : b.terms())
            for (int q = 0; q < b.num_qubits(); ++q)
                if (t.op.letter(q) == Letter::Z) a[{q, Letter::Z}] = 1;
    double best = 0.0;
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << vars.size()); ++c) {
        for (std::size_t k = 0; k < vars.size(); ++k) a[vars[k]] = ((c >> k) & 1u) ? -1 : 1;
        best = std::max(best, std::abs(classical_value(b, a)));
    }
    return best;
}

/// max |e| over all 2^(2P) setting assignments, evaluated term by term.
inline double brute_force_settings_max(const TwoSettingExpression& e) {
    const int p = e.parties();
    double best = 0.0;
    for (std::uint32_t a = 0; a < (1u << (2 * p)); ++a) {
        double v = 0.0;
        for (const auto& t : e.terms()) {
            int prod = 1;
            for (int k = 0; k < p; ++k) {
                const int setting = (t.settings >> k) & 1u;
                if ((a >> (2 * k + setting)) & 1u) prod = -prod;
            }
            v += t.coeff * prod;
        }
        best = std::max(best, std::abs(v));
    }
    return best;
}

/// Exact rank over the rationals.
inline int exact_rank(std::vector<std::vector<boost::multiprecision::cpp_rational>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    int rank = 0;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || rows[r][c] == 0) continue;
            const boost::multiprecision::cpp_rational f = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

struct FacetEvidence {
    int saturating = 0;
    int affine_dim = -1;
};

/// Saturating full-correlation points of e <= bound and their affine dimension,
/// enumerated with nested setting loops.
inline FacetEvidence facet_evidence(const TwoSettingExpression& e, double bound) {
    const int p = e.parties();
    std::vector<std::vector<int>> points;
    for (std::uint32_t a = 0; a < (1u << (2 * p)); ++a) {
        std::vector<int> values(2 * p);
        for (int k = 0; k < 2 * p; ++k) values[k] = ((a >> k) & 1u) ? -1 : 1;
        std::vector<int> corr(std::size_t{1} << p);
        for (std::uint32_t s = 0; s < corr.size(); ++s) {
            int prod = 1;
            for (int k = 0; k < p; ++k) prod *= values[2 * k + ((s >> k) & 1u)];
            corr[s] = prod;
        }
        double v = 0.0;
        for (const auto& t : e.terms()) v += t.coeff * corr[t.settings];
        if (v == bound) points.push_back(corr);
    }
    FacetEvidence out;
    out.saturating = static_cast<int>(points.size());
    if (points.empty()) return out;
    std::vector<std::vector<boost::multiprecision::cpp_rational>> diffs;
    for (const auto& pt : points) {
        std::vector<boost::multiprecision::cpp_rational> row;
        for (std::size_t k = 0; k < pt.size(); ++k) row.emplace_back(pt[k] - points[0][k]);
        diffs.push_back(std::move(row));
    }
    out.affine_dim = exact_rank(std::move(diffs));
    return out;
}

inline Graph random_graph(int n, double edge_probability, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(edge_probability);
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (coin(rng)) edges.emplace_back(a, b);
    return Graph(n, edges);
}

inline Graph random_connected_graph(int n, double edge_probability, std::mt19937_64& rng) {
    for (;;) {
        Graph g = random_graph(n, edge_probability, rng);
        if (g.is_connected()) return g;
    }
}

inline PauliString random_pauli(int n, std::mt19937_64& rng, bool hermitian = false) {
    std::uniform_int_distribution<std::uint64_t> bits(0, low_bits(n));
    std::uniform_int_distribution<int> phase(0, 3);
    const int ph = hermitian ? 2 * phase(rng) % 4 : phase(rng);
    return PauliString(n, bits(rng), bits(rng), ph);
}

/// A uniformly chosen vertex with an independent neighbour subset I, |I| >= min_size.
struct Theorem1Pick {
    int center = -1;
    VertexSet leaves;
};

inline Theorem1Pick random_theorem1_pick(const Graph& g, std::mt19937_64& rng, int min_size = 1) {
    std::vector<Theorem1Pick> options;
    for (int v = 0; v < g.num_vertices(); ++v) {
        const std::uint64_t nb = g.neighbors(v).bits();
        for (std::uint64_t sub = nb; sub != 0; sub = (sub - 1) & nb) {
            const VertexSet s(sub);
            if (s.size() >= min_size && is_independent_set(g, s)) options.push_back({v, s});
        }
    }
    if (options.empty()) return {};
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    return options[pick(rng)];
}

}  // namespace gsbell::oracle
