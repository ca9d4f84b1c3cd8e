#pragma once

// Deterministic local-hidden-variable evaluation.
//
// A deterministic model assigns +-1 to every local variable. Variables are
// packed into an integer counter, first variable in the most significant
// bit, with a set bit meaning -1; counter order is therefore lexicographic
// order on assignments with +1 before -1. The search splits the counter into
// a high part, enumerated term by term with parity sums, and a low part of up
// to 16 bits evaluated for all values at once by a Walsh-Hadamard transform.
// Work is divided into contiguous ranges of the high part and reduced by
// (larger |value|, then smaller counter), so the result does not depend on
// the number of workers.

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gsbell/bell.hpp"
#include "gsbell/error.hpp"
#include "gsbell/graph.hpp"
#include "gsbell/pauli.hpp"

namespace gsbell {

inline constexpr int kMaxEnumerationVariables = 36;
inline constexpr int kMaxFacetParties = 5;

struct QubitVariable {
    int qubit;
    Letter letter;

    std::string name() const { return std::string(1, letter_char(letter)) + std::to_string(qubit + 1); }

    friend auto operator<=>(const QubitVariable&, const QubitVariable&) = default;
};

using Assignment = std::map<QubitVariable, int>;

/// Variable name -> +-1, in canonical variable order.
using NamedAssignment = std::vector<std::pair<std::string, int>>;

struct SearchOptions {
    /// When set, Z variables are pinned to +1 after checking that every term is
    /// a (signed) stabilizer element of this graph's state.
    const Graph* lemma1_graph = nullptr;
    unsigned workers = 1;
};

struct ClassicalMaximum {
    double value = 0.0;  // max |E_L| over deterministic models
    NamedAssignment argmax;
    bool lemma1_used = false;
    int enumerated_variables = 0;
};

struct BoundsReport {
    double classical_max = 0.0;
    double quantum_value = 0.0;
    double violation = 0.0;
    NamedAssignment argmax;
    bool lemma1_used = false;

    bool is_bell_inequality() const { return violation > 1.0; }
};

/// E_L(b): each Pauli letter replaced by its assigned +-1 value.
inline double classical_value(const PauliSum& b, const Assignment& a) {
    double total = 0.0;
    for (const auto& t : b.terms()) {
        int product = 1;
        for (int q = 0; q < b.num_qubits(); ++q) {
            const Letter l = t.op.letter(q);
            if (l == Letter::I) continue;
            const auto it = a.find({q, l});
            if (it == a.end()) throw PreconditionError("assignment misses variable " + QubitVariable{q, l}.name());
            product *= it->second;
        }
        total += t.coeff * product;
    }
    return total;
}

namespace detail {

template <class Value>
struct ParityTerm {
    Value coeff;
    std::uint64_t mask;
};

struct SearchHit {
    double abs_value = -1.0;
    std::uint64_t counter = 0;

    bool beats(const SearchHit& other) const {
        return abs_value > other.abs_value || (abs_value == other.abs_value && counter < other.counter);
    }
};

template <class Value>
void walsh_hadamard(std::vector<Value>& buf) {
    const std::size_t size = buf.size();
    for (std::size_t len = 1; len < size; len <<= 1) {
        for (std::size_t i = 0; i < size; i += 2 * len) {
            for (std::size_t j = i; j < i + len; ++j) {
                const Value u = buf[j], v = buf[j + len];
                buf[j] = u + v;
                buf[j + len] = u - v;
            }
        }
    }
}

/// Maximizes |sum_t coeff_t (-1)^popcount(a & mask_t)| over a in [0, 2^num_vars).
template <class Value>
SearchHit maximize_parity(int num_vars, const std::vector<ParityTerm<Value>>& terms, unsigned workers) {
    if (num_vars > kMaxEnumerationVariables) {
        throw ResourceError("exhaustive search over " + std::to_string(num_vars) + " variables exceeds the cap of " +
                            std::to_string(kMaxEnumerationVariables));
    }
    const int low = std::min(num_vars, 16);
    const int high = num_vars - low;
    const std::uint64_t low_mask = (std::uint64_t{1} << low) - 1;
    const std::uint64_t num_high = std::uint64_t{1} << high;
    const std::uint64_t num_workers = std::clamp<std::uint64_t>(workers, 1, num_high);

    auto scan = [&](std::uint64_t begin, std::uint64_t end) {
        SearchHit best;
        std::vector<Value> buf(std::size_t{1} << low);
        for (std::uint64_t h = begin; h < end; ++h) {
            std::fill(buf.begin(), buf.end(), Value{0});
            for (const auto& t : terms) {
                const bool flip = std::popcount(h & (t.mask >> low)) & 1;
                buf[t.mask & low_mask] += flip ? -t.coeff : t.coeff;
            }
            walsh_hadamard(buf);
            for (std::size_t l = 0; l < buf.size(); ++l) {
                const SearchHit hit{static_cast<double>(buf[l] < 0 ? -buf[l] : buf[l]), (h << low) | l};
                if (hit.beats(best)) best = hit;
            }
        }
        return best;
    };

    std::vector<SearchHit> partial(num_workers);
    if (num_workers == 1) {
        partial[0] = scan(0, num_high);
    } else {
        std::vector<std::thread> pool;
        for (std::uint64_t w = 0; w < num_workers; ++w) {
            const std::uint64_t begin = num_high * w / num_workers, end = num_high * (w + 1) / num_workers;
            pool.emplace_back([&, w, begin, end] { partial[w] = scan(begin, end); });
        }
        for (auto& t : pool) t.join();
    }
    SearchHit best = partial[0];
    for (const auto& p : partial)
        if (p.beats(best)) best = p;
    return best;
}

/// Dispatches to exact integer accumulation when all coefficients are integral.
inline SearchHit maximize(int num_vars, const std::vector<std::pair<double, std::uint64_t>>& terms, bool integral, unsigned workers) {
    if (integral) {
        std::vector<ParityTerm<std::int64_t>> t;
        for (auto [c, m] : terms) t.push_back({static_cast<std::int64_t>(c), m});
        return maximize_parity(num_vars, t, workers);
    }
    std::vector<ParityTerm<double>> t;
    for (auto [c, m] : terms) t.push_back({c, m});
    return maximize_parity(num_vars, t, workers);
}

inline std::uint64_t counter_bit(int index, int num_vars) { return std::uint64_t{1} << (num_vars - 1 - index); }

}  // namespace detail

/// C(b) = max over deterministic models of |E_L(b)|, by exhaustive search.
inline ClassicalMaximum classical_max(const PauliSum& b, const SearchOptions& opts = {}) {
    const int n = b.num_qubits();
    const bool lemma1 = opts.lemma1_graph != nullptr;
    if (lemma1) {
        const Graph& g = *opts.lemma1_graph;
        if (g.num_vertices() != n) throw DimensionError("pinning graph and operator differ in size");
        for (const auto& t : b.terms()) {
            const int sign = t.coeff < 0 ? -1 : 1;
            if (graph_state_expectation(g, t.op) * sign != 1) {
                throw PreconditionError("Z pinning requires stabilizer terms; " + std::string(sign < 0 ? "-" : "") + t.op.str() +
                                        " does not stabilize the graph state");
            }
        }
    }
    std::vector<QubitVariable> pinned, free_vars;
    for (const auto& t : b.terms()) {
        for (int q = 0; q < n; ++q) {
            const Letter l = t.op.letter(q);
            if (l == Letter::I) continue;
            auto& bucket = (lemma1 && l == Letter::Z) ? pinned : free_vars;
            bucket.push_back({q, l});
        }
    }
    for (auto* v : {&pinned, &free_vars}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    const int num_vars = static_cast<int>(free_vars.size());
    std::vector<std::pair<double, std::uint64_t>> terms;
    for (const auto& t : b.terms()) {
        std::uint64_t mask = 0;
        for (int q = 0; q < n; ++q) {
            const Letter l = t.op.letter(q);
            if (l == Letter::I || (lemma1 && l == Letter::Z)) continue;
            const auto idx = std::lower_bound(free_vars.begin(), free_vars.end(), QubitVariable{q, l}) - free_vars.begin();
            mask |= detail::counter_bit(static_cast<int>(idx), num_vars);
        }
        terms.emplace_back(t.coeff, mask);
    }
    const auto hit = detail::maximize(num_vars, terms, b.has_integer_coefficients(), opts.workers);

    ClassicalMaximum out;
    out.value = b.empty() ? 0.0 : hit.abs_value;
    out.lemma1_used = lemma1;
    out.enumerated_variables = num_vars;
    std::vector<std::pair<QubitVariable, int>> values;
    for (int k = 0; k < num_vars; ++k)
        values.emplace_back(free_vars[k], (hit.counter & detail::counter_bit(k, num_vars)) ? -1 : 1);
    for (const auto& v : pinned) values.emplace_back(v, 1);
    std::sort(values.begin(), values.end());
    for (const auto& [v, s] : values) out.argmax.emplace_back(v.name(), s);
    return out;
}

/// Name of the setting variable: "A<p>" for setting 0, "B<p>" for setting 1.
inline std::string setting_variable_name(int party, int setting) {
    return std::string(1, setting == 0 ? 'A' : 'B') + std::to_string(party + 1);
}

/// Exhaustive maximum of |e| over +-1 values of the setting variables.
inline ClassicalMaximum classical_max_settings(const TwoSettingExpression& e, const SearchOptions& opts = {}) {
    std::vector<int> used;  // variable index 2p + s
    for (const auto& t : e.terms())
        for (int p = 0; p < e.parties(); ++p) used.push_back(2 * p + static_cast<int>((t.settings >> p) & 1u));
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    const int num_vars = static_cast<int>(used.size());
    std::vector<std::pair<double, std::uint64_t>> terms;
    for (const auto& t : e.terms()) {
        std::uint64_t mask = 0;
        for (int p = 0; p < e.parties(); ++p) {
            const int var = 2 * p + static_cast<int>((t.settings >> p) & 1u);
            const auto idx = std::lower_bound(used.begin(), used.end(), var) - used.begin();
            mask |= detail::counter_bit(static_cast<int>(idx), num_vars);
        }
        terms.emplace_back(t.coeff, mask);
    }
    const auto hit = detail::maximize(num_vars, terms, e.has_integer_coefficients(), opts.workers);
    ClassicalMaximum out;
    out.value = e.terms().empty() ? 0.0 : hit.abs_value;
    out.enumerated_variables = num_vars;
    for (int k = 0; k < num_vars; ++k) {
        out.argmax.emplace_back(setting_variable_name(used[k] / 2, used[k] % 2),
                                (hit.counter & detail::counter_bit(k, num_vars)) ? -1 : 1);
    }
    return out;
}

/// Classical maximum of a Bell inequality. Inequalities whose observables are
/// single Pauli strings are searched over per-qubit Pauli variables; the
/// others (rotated settings) over the per-party setting variables.
inline ClassicalMaximum classical_max(const BellInequality& b, const SearchOptions& opts = {}) {
    if (b.pauli_form && b.has_pauli_observables()) return classical_max(*b.pauli_form, opts);
    SearchOptions settings_opts = opts;
    settings_opts.lemma1_graph = nullptr;
    return classical_max_settings(b.expression, settings_opts);
}

/// V(b) = quantum_value / C(b).
inline BoundsReport violation_report(const BellInequality& b, double quantum_value, const SearchOptions& opts = {}) {
    const ClassicalMaximum cm = classical_max(b, opts);
    if (cm.value == 0.0) throw PreconditionError("classical maximum is zero; violation ratio undefined");
    return BoundsReport{cm.value, quantum_value, quantum_value / cm.value, cm.argmax, cm.lemma1_used};
}

struct FacetResult {
    int saturating_count = 0;
    int affine_rank = -1;  // dimension of the affine hull of saturating points; -1 when none
    int dimension = 0;     // number of full-correlation coordinates, 2^P
    bool valid = false;    // no deterministic point exceeds the bound
    bool is_facet = false;
};

/// Full-correlation vector of one deterministic assignment: coordinate s is
/// the product over parties of the value of party p's setting (bit p of s).
/// Bit 2p + k of `assignment` set means setting k of party p takes -1.
inline std::vector<int> correlation_vector(int parties, std::uint32_t assignment) {
    std::vector<int> v(std::size_t{1} << parties);
    for (std::uint32_t s = 0; s < v.size(); ++s) {
        int prod = 1;
        for (int p = 0; p < parties; ++p)
            if ((assignment >> (2 * p + ((s >> p) & 1u))) & 1u) prod = -prod;
        v[s] = prod;
    }
    return v;
}

/// Tests whether `e <= bound` defines a facet of the full-correlation LHV
/// polytope: the saturating deterministic points must span an affine hull of
/// dimension 2^P - 1.
inline FacetResult facet_test(const TwoSettingExpression& e, double bound) {
    const int parties = e.parties();
    if (parties > kMaxFacetParties) {
        throw ResourceError("facet test is limited to " + std::to_string(kMaxFacetParties) + " parties");
    }
    if (!e.has_integer_coefficients()) throw PreconditionError("facet test requires integer coefficients");
    FacetResult out;
    out.dimension = 1 << parties;
    out.valid = true;
    std::vector<std::vector<int>> saturating;
    for (std::uint32_t a = 0; a < (1u << (2 * parties)); ++a) {
        const auto v = correlation_vector(parties, a);
        double value = 0.0;
        for (const auto& t : e.terms()) value += t.coeff * v[t.settings];
        if (value > bound) out.valid = false;
        if (value == bound) saturating.push_back(v);
    }
    out.saturating_count = static_cast<int>(saturating.size());
    if (!saturating.empty()) {
        Eigen::MatrixXd diffs(static_cast<Eigen::Index>(saturating.size()), out.dimension);
        for (std::size_t r = 0; r < saturating.size(); ++r)
            for (int c = 0; c < out.dimension; ++c) diffs(static_cast<Eigen::Index>(r), c) = saturating[r][c] - saturating[0][c];
        out.affine_rank = static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(diffs).rank());
    }
    out.is_facet = out.valid && out.affine_rank == out.dimension - 1;
    return out;
}

}  // namespace gsbell
