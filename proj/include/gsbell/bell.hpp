#pragma once

// Two-setting Bell inequalities built from graph-state stabilizers.
//
// Every inequality is carried on two levels: an abstract correlation
// polynomial over per-party dichotomic settings (TwoSettingExpression), and,
// where it exists, the equivalent real-weighted Pauli operator (pauli_form).
// The ObservableMap realizes each (party, setting) as a multi-qubit observable;
// expanding the expression through it reproduces pauli_form.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "gsbell/error.hpp"
#include "gsbell/graph.hpp"
#include "gsbell/pauli.hpp"

namespace gsbell {

inline constexpr int kMaxParties = 31;

/// Sum of coeff * prod_p S_p where S_p is party p's setting-0 ("A") or
/// setting-1 ("B") variable. Bit p of `settings` selects party p's setting.
class TwoSettingExpression {
  public:
    struct Term {
        double coeff;
        std::uint32_t settings;
    };

    TwoSettingExpression() = default;
    explicit TwoSettingExpression(int parties) : parties_(parties) {
        if (parties < 1 || parties > kMaxParties) throw PreconditionError("party count must lie in [1, 31]");
    }

    TwoSettingExpression& add(double coeff, std::uint32_t settings) {
        if ((settings >> parties_) != 0) throw DimensionError("setting choice names a party beyond the party count");
        auto it = terms_.begin();
        while (it != terms_.end() && it->settings < settings) ++it;
        if (it != terms_.end() && it->settings == settings) {
            it->coeff += coeff;
            if (it->coeff == 0.0) terms_.erase(it);
        } else if (coeff != 0.0) {
            terms_.insert(it, Term{coeff, settings});
        }
        return *this;
    }

    int parties() const noexcept { return parties_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    bool has_integer_coefficients() const {
        for (const auto& t : terms_)
            if (std::nearbyint(t.coeff) != t.coeff) return false;
        return true;
    }

    /// Terms as signed words over {A, B}, party 1 leftmost: "+BAA -BBB".
    std::string str() const {
        std::string out;
        for (const auto& t : terms_) {
            if (!out.empty()) out += ' ';
            out += t.coeff < 0 ? '-' : '+';
            if (std::abs(t.coeff) != 1.0) out += std::to_string(std::abs(t.coeff)) + '*';
            for (int p = 0; p < parties_; ++p) out += ((t.settings >> p) & 1u) ? 'B' : 'A';
        }
        return out;
    }

    /// Parses comma- or space-separated words like "AA,AB,BA,-BB".
    static TwoSettingExpression parse(std::string_view text) {
        TwoSettingExpression out;
        std::string word;
        auto flush = [&] {
            if (word.empty()) return;
            double sign = 1.0;
            std::string_view w = word;
            if (w.front() == '+' || w.front() == '-') {
                sign = w.front() == '-' ? -1.0 : 1.0;
                w.remove_prefix(1);
            }
            if (w.empty()) throw ParseError("empty expression term");
            if (out.parties_ == 0) out = TwoSettingExpression(static_cast<int>(w.size()));
            if (static_cast<int>(w.size()) != out.parties_) throw ParseError("expression terms differ in party count");
            std::uint32_t s = 0;
            for (std::size_t p = 0; p < w.size(); ++p) {
                if (w[p] == 'B') s |= 1u << p;
                else if (w[p] != 'A') throw ParseError(std::string("unexpected setting letter '") + w[p] + "'");
            }
            out.add(sign, s);
            word.clear();
        };
        for (char c : text) {
            if (c == ',' || c == ' ' || c == '\t') flush();
            else word += c;
        }
        flush();
        if (out.parties_ == 0) throw ParseError("empty expression");
        return out;
    }

    /// Product of expressions on disjoint party sets; `b`'s parties follow `a`'s.
    friend TwoSettingExpression operator*(const TwoSettingExpression& a, const TwoSettingExpression& b) {
        TwoSettingExpression out(a.parties_ + b.parties_);
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) out.add(s.coeff * t.coeff, s.settings | (t.settings << a.parties_));
        return out;
    }

  private:
    int parties_ = 0;
    std::vector<Term> terms_;
};

/// Qubits owned by each party, pairwise disjoint.
struct PartyLayout {
    std::vector<VertexSet> parties;

    std::size_t size() const noexcept { return parties.size(); }
};

/// observables[p][s]: the observable party p measures for setting s.
using ObservableMap = std::vector<std::array<PauliSum, 2>>;

struct BellInequality {
    std::string label;
    int num_qubits = 0;
    TwoSettingExpression expression;
    PartyLayout layout;
    ObservableMap observables;
    double classical_bound = 0.0;
    std::optional<PauliSum> pauli_form;

    /// True when every observable is a single Pauli string, so the Pauli-level
    /// classical variables coincide with the setting variables' products.
    bool has_pauli_observables() const {
        for (const auto& party : observables)
            for (const auto& obs : party)
                if (obs.size() != 1) return false;
        return true;
    }
};

/// m-partite Mermin bound.
inline double mermin_bound(int m) {
    if (m < 1) throw PreconditionError("party count must be >= 1");
    return std::ldexp(1.0, m % 2 == 1 ? (m - 1) / 2 : m / 2);
}

/// m-partite Ardehali bound.
inline double ardehali_bound(int m) {
    if (m < 1) throw PreconditionError("party count must be >= 1");
    return std::ldexp(1.0, m % 2 == 1 ? (m + 1) / 2 : m / 2);
}

/// All choices with an odd number k of B settings, signed (-1)^((k-1)/2).
inline TwoSettingExpression mermin_pattern(int parties) {
    TwoSettingExpression e(parties);
    for (std::uint32_t s = 0; s < (1u << parties); ++s) {
        const int k = std::popcount(s);
        if (k % 2 == 1) e.add(((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0, s);
    }
    return e;
}

/// Party 1 measures Q (setting 0) or W (setting 1). With k the number of B
/// settings among the remaining parties: even k contributes
/// (Q - W) * -(-1)^(k/2), odd k contributes (Q + W) * (-1)^((k-1)/2).
/// For two parties this is the CHSH expression.
inline TwoSettingExpression ardehali_pattern(int parties) {
    if (parties < 2) throw PreconditionError("the Ardehali pattern needs at least two parties");
    TwoSettingExpression e(parties);
    for (std::uint32_t rest = 0; rest < (1u << (parties - 1)); ++rest) {
        const int k = std::popcount(rest);
        const std::uint32_t q = rest << 1, w = (rest << 1) | 1u;
        if (k % 2 == 0) {
            const double s = (k / 2) % 2 == 0 ? -1.0 : 1.0;
            e.add(s, q);
            e.add(-s, w);
        } else {
            const double s = ((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
            e.add(s, q);
            e.add(s, w);
        }
    }
    return e;
}

/// Operator obtained by substituting each party's observables into `e`.
inline PauliSum expand(const TwoSettingExpression& e, const ObservableMap& obs, int n) {
    if (static_cast<int>(obs.size()) != e.parties()) throw DimensionError("observable map and expression differ in party count");
    PauliSum out(n);
    for (const auto& t : e.terms()) {
        PauliSum prod = PauliSum::of(PauliString(n));
        for (int p = 0; p < e.parties(); ++p) prod = prod * obs[p][(t.settings >> p) & 1u];
        out.add(prod.scaled(t.coeff));
    }
    return out;
}

namespace detail {

inline PauliString letter_with_z(int n, int qubit, Letter l, VertexSet zs) {
    return PauliString::single(n, qubit, l) * PauliString(n, 0, zs.bits());
}

/// Parties own what they claim; a qubit claimed twice stays with the first claimant.
inline PartyLayout claim_layout(std::span<const VertexSet> claims) {
    PartyLayout layout;
    VertexSet taken;
    for (VertexSet c : claims) {
        layout.parties.push_back(c - taken);
        taken = taken | c;
    }
    return layout;
}

inline VertexSet observable_support(const std::array<PauliSum, 2>& party) {
    return VertexSet(party[0].support() | party[1].support());
}

inline std::string vertex_label(int v) { return std::to_string(v + 1); }

}  // namespace detail

/// B(i, I) = g_i prod_{j in I} (1 + g_j): a Mermin inequality whose parties
/// are the centre and each member of I, with bound L_M(|I| + 1) and value
/// 2^|I| on the graph state.
inline BellInequality theorem1_operator(const Graph& g, int center, VertexSet leaves) {
    g.check_vertex(center);
    if (leaves.empty()) throw PreconditionError("I must contain at least one vertex");
    if (!leaves.subset_of(g.neighbors(center))) {
        throw PreconditionError("I = " + format_vertices(leaves) + " is not contained in N(" + detail::vertex_label(center) + ")");
    }
    if (!is_independent_set(g, leaves)) {
        throw PreconditionError("vertices of I = " + format_vertices(leaves) + " are connected by an edge");
    }
    const int n = g.num_vertices();
    const VertexSet core = leaves | VertexSet{center};
    auto reduced = [&](int k) { return g.neighbors(k) - core; };

    BellInequality b;
    b.label = "B(" + detail::vertex_label(center) + "," + format_vertices(leaves) + ")";
    b.num_qubits = n;

    PauliSum form(n);
    const std::uint64_t all = leaves.bits();
    for (std::uint64_t sub = all;; sub = (sub - 1) & all) {
        form.add(1.0, stabilizer_element(g, VertexSet(sub) | VertexSet{center}));
        if (sub == 0) break;
    }
    b.pauli_form = std::move(form);

    std::vector<VertexSet> claims;
    claims.push_back(VertexSet{center} | reduced(center));
    b.observables.push_back({PauliSum::of(detail::letter_with_z(n, center, Letter::Y, reduced(center))),
                             PauliSum::of(detail::letter_with_z(n, center, Letter::X, reduced(center)))});
    for (int j : leaves.members()) {
        claims.push_back(VertexSet{j} | reduced(j));
        b.observables.push_back({PauliSum::of(PauliString::single(n, j, Letter::Z)),
                                 PauliSum::of(detail::letter_with_z(n, j, Letter::Y, reduced(j)))});
    }
    b.layout = detail::claim_layout(claims);
    b.expression = mermin_pattern(leaves.size() + 1);
    b.classical_bound = mermin_bound(leaves.size() + 1);
    return b;
}

/// g_a + g_b + g_c + g_a g_b g_c for a triangle (a, b, c): a three-party
/// Mermin inequality with bound 2 and value 4 on the graph state.
inline BellInequality fc3_operator(const Graph& g, std::array<int, 3> triangle) {
    for (int v : triangle) g.check_vertex(v);
    const auto [a, b, c] = triangle;
    if (a == b || b == c || a == c || !g.adjacent(a, b) || !g.adjacent(b, c) || !g.adjacent(a, c)) {
        throw PreconditionError("vertices " + format_vertices(VertexSet{a, b, c}) + " do not form a triangle");
    }
    const int n = g.num_vertices();
    const VertexSet t{a, b, c};

    BellInequality ineq;
    ineq.label = "FC3" + format_vertices(t);
    ineq.num_qubits = n;
    PauliSum form(n);
    for (int v : triangle) form.add(1.0, generator(g, v));
    form.add(1.0, generator(g, a) * generator(g, b) * generator(g, c));
    ineq.pauli_form = std::move(form);

    std::vector<VertexSet> claims;
    for (int v : triangle) {
        const VertexSet outside = g.neighbors(v) - t;
        claims.push_back(VertexSet{v} | outside);
        ineq.observables.push_back({PauliSum::of(PauliString::single(n, v, Letter::Z)),
                                    PauliSum::of(detail::letter_with_z(n, v, Letter::X, outside))});
    }
    ineq.layout = detail::claim_layout(claims);
    ineq.expression = mermin_pattern(3);
    ineq.classical_bound = mermin_bound(3);
    return ineq;
}

/// Every qubit on which the parts cannot be multiplied into a Bell operator,
/// with the letters involved. Parts may share a qubit only if each uses one and the same
/// letter there.
inline std::optional<std::string> composition_conflict(std::span<const BellInequality> parts) {
    if (parts.empty()) return "no parts to compose";
    const int n = parts.front().num_qubits;
    std::vector<std::vector<unsigned>> letters;  // letters[part][qubit]: bit per Letter
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (!parts[k].pauli_form) return "part " + std::to_string(k + 1) + " has no Pauli form";
        if (parts[k].num_qubits != n) return "parts act on different qubit counts";
        std::vector<unsigned> used(static_cast<std::size_t>(n), 0);
        for (const auto& t : parts[k].pauli_form->terms())
            for (int q = 0; q < n; ++q)
                if (Letter l = t.op.letter(q); l != Letter::I) used[q] |= 1u << static_cast<int>(l);
        letters.push_back(std::move(used));
    }
    auto describe = [](unsigned mask) {
        std::string s;
        for (Letter l : {Letter::X, Letter::Y, Letter::Z})
            if (mask & (1u << static_cast<int>(l))) s += (s.empty() ? "" : "/") + std::string(1, letter_char(l));
        return s;
    };
    std::string report;
    for (int q = 0; q < n; ++q) {
        std::optional<std::size_t> first;
        for (std::size_t k = 0; k < parts.size(); ++k) {
            const unsigned m = letters[k][q];
            if (m == 0) continue;
            if (!first) {
                first = k;
                continue;
            }
            const unsigned f = letters[*first][q];
            if (std::popcount(f) != 1 || std::popcount(m) != 1 || f != m) {
                report += (report.empty() ? "" : "; ") + ("qubit " + std::to_string(q + 1)) + " carries " + describe(f) +
                          " in part " + std::to_string(*first + 1) + " and " + describe(m) + " in part " + std::to_string(k + 1);
                break;
            }
        }
    }
    if (report.empty()) return std::nullopt;
    return report;
}

/// Product of Bell inequalities; bounds and quantum values multiply.
inline BellInequality composite(std::span<const BellInequality> parts) {
    if (auto conflict = composition_conflict(parts)) throw PreconditionError("cannot compose: " + *conflict);
    if (parts.size() == 1) return parts.front();
    BellInequality out;
    out.num_qubits = parts.front().num_qubits;
    out.classical_bound = 1.0;
    PauliSum form = PauliSum::of(PauliString(out.num_qubits));
    std::vector<VertexSet> claims;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const auto& p = parts[k];
        out.label += (k == 0 ? "" : "*") + p.label;
        out.expression = k == 0 ? p.expression : out.expression * p.expression;
        out.observables.insert(out.observables.end(), p.observables.begin(), p.observables.end());
        for (const auto& party : p.observables) claims.push_back(detail::observable_support(party));
        out.classical_bound *= p.classical_bound;
        form = form * *p.pauli_form;
    }
    out.pauli_form = std::move(form);
    out.layout = detail::claim_layout(claims);
    return out;
}

/// Blocks B(i, {i-1, i+1}) on LC_n at i = 2, 6, 10, ... (1-based), i <= n - 1.
inline BellInequality lc_composite(int n) {
    if (n < 3) throw PreconditionError("LC composite needs n >= 3");
    const Graph g = family(Family::LC, n);
    std::vector<BellInequality> blocks;
    for (int c = 1; c <= n - 2; c += 4) blocks.push_back(theorem1_operator(g, c, VertexSet{c - 1, c + 1}));
    return composite(blocks);
}

/// The composite inequality behind each row of the LC/RC/ST violation table.
inline BellInequality family_composite(Family f, int n) {
    if (n < 3) throw PreconditionError("family composite needs n >= 3");
    switch (f) {
        case Family::LC: return lc_composite(n);
        case Family::RC: {
            const Graph g = family(Family::RC, n);
            if (n == 3) return fc3_operator(g, {0, 1, 2});
            std::vector<BellInequality> blocks;
            const int count = std::max(1, n / 4);
            for (int j = 0; j < count; ++j) {
                const int c = 1 + 4 * j;
                blocks.push_back(theorem1_operator(g, c, VertexSet{c - 1, (c + 1) % n}));
            }
            return composite(blocks);
        }
        case Family::ST: {
            const Graph g = family(Family::ST, n);
            return theorem1_operator(g, 0, g.neighbors(0));
        }
        default: throw PreconditionError("no composite construction for family " + std::string(family_name(f)));
    }
}

struct Block {
    int center;
    VertexSet leaves;

    friend bool operator==(const Block&, const Block&) = default;
};

/// Greedy vertex-order packing of mutually composable Theorem-1 blocks.
inline std::vector<Block> select_blocks(const Graph& g) {
    std::vector<Block> blocks;
    VertexSet used;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (used.contains(v)) continue;
        const VertexSet candidates = g.neighbors(v) - used;
        VertexSet chosen;
        for (int seed : candidates.members()) {
            VertexSet s{seed};
            for (int u : candidates.members())
                if (!s.contains(u) && (g.neighbors(u) & s).empty()) s.insert(u);
            if (s.size() >= 2) {
                chosen = s;
                break;
            }
        }
        if (chosen.size() < 2) continue;
        blocks.push_back({v, chosen});
        const VertexSet closed = chosen | VertexSet{v};
        used = used | closed;
        for (int u : closed.members()) used = used | g.neighbors(u);
    }
    return blocks;
}

/// Composite of all blocks found by select_blocks.
inline BellInequality block_composite(const Graph& g) {
    const auto blocks = select_blocks(g);
    if (blocks.empty()) throw PreconditionError("graph has no vertex with two non-adjacent neighbours");
    std::vector<BellInequality> parts;
    for (const auto& b : blocks) parts.push_back(theorem1_operator(g, b.center, b.leaves));
    return composite(parts);
}

/// Ardehali-type inequality on the Theorem-1 parties, with the centre party
/// measuring Q = (A - B)/sqrt2 and W = (A + B)/sqrt2. Bound L_A(|I| + 1);
/// the operator equals sqrt2 times B(i, I).
inline BellInequality ardehali_expression(const Graph& g, int center, VertexSet leaves) {
    if (leaves.size() < 2) throw PreconditionError("the Ardehali construction needs |I| >= 2");
    BellInequality b = theorem1_operator(g, center, leaves);
    const int n = g.num_vertices();
    const double r = 1.0 / std::numbers::sqrt2;
    const PauliString a1 = b.observables[0][0].terms().front().op;
    const PauliString b1 = b.observables[0][1].terms().front().op;
    PauliSum q(n), w(n);
    q.add(r, a1).add(-r, b1);
    w.add(r, a1).add(r, b1);
    b.observables[0] = {q, w};
    b.label = "A(" + detail::vertex_label(center) + "," + format_vertices(leaves) + ")";
    b.expression = ardehali_pattern(leaves.size() + 1);
    b.classical_bound = ardehali_bound(leaves.size() + 1);
    b.pauli_form = expand(b.expression, b.observables, n);
    return b;
}

/// Substitutes +-1 outcomes of Z measurements on the given vertices.
inline BellInequality condition_on_z(const BellInequality& b, const std::map<int, int>& outcomes) {
    if (!b.pauli_form) throw PreconditionError("conditioning requires a Pauli form");
    const int n = b.num_qubits;
    std::uint64_t mask = 0;
    for (auto [v, o] : outcomes) {
        if (v < 0 || v >= n) throw PreconditionError("conditioned vertex " + std::to_string(v + 1) + " out of range");
        if (o != 1 && o != -1) throw PreconditionError("measurement outcome must be +1 or -1");
        mask |= std::uint64_t{1} << v;
    }
    auto condition = [&](const PauliSum& s) {
        PauliSum out(n);
        for (const auto& t : s.terms()) {
            if ((t.op.x_mask() & mask) != 0) {
                const int v = std::countr_zero(t.op.x_mask() & mask);
                throw PreconditionError("vertex " + std::to_string(v + 1) + " carries " + letter_char(t.op.letter(v)) +
                                        ", not Z, in term " + t.op.str());
            }
            double c = t.coeff;
            for (auto [v, o] : outcomes)
                if ((t.op.z_mask() >> v) & 1u) c *= o;
            out.add(c, PauliString(n, t.op.x_mask(), t.op.z_mask() & ~mask));
        }
        return out;
    };
    BellInequality out = b;
    out.pauli_form = condition(*b.pauli_form);
    for (auto& party : out.observables)
        for (auto& obs : party) obs = condition(obs);
    for (auto& p : out.layout.parties) {
        p = p - VertexSet(mask);
        if (p.empty()) throw PreconditionError("conditioning removes every qubit of a party");
    }
    if (!outcomes.empty()) {
        std::string cond;
        for (auto [v, o] : outcomes) cond += (cond.empty() ? "" : ",") + ("Z" + detail::vertex_label(v)) + (o > 0 ? "=+1" : "=-1");
        out.label += "|" + cond;
    }
    return out;
}

/// Recovers the two-setting structure of `form` for a given party layout.
/// Each party's restrictions of the terms must take at most two distinct
/// values; the smaller in (x_mask, z_mask) order becomes setting 0.
inline std::pair<TwoSettingExpression, ObservableMap> decompose(const PauliSum& form, const PartyLayout& layout) {
    const int n = form.num_qubits();
    VertexSet covered;
    for (VertexSet p : layout.parties) {
        if (!(covered & p).empty()) throw PreconditionError("parties overlap");
        covered = covered | p;
    }
    if (!VertexSet(form.support()).subset_of(covered)) throw PreconditionError("terms act outside the party layout");
    const int parties = static_cast<int>(layout.size());
    ObservableMap obs;
    std::vector<std::vector<PauliString>> values(static_cast<std::size_t>(parties));
    for (int p = 0; p < parties; ++p) {
        const std::uint64_t m = layout.parties[p].bits();
        auto& vals = values[p];
        for (const auto& t : form.terms()) {
            const PauliString r(n, t.op.x_mask() & m, t.op.z_mask() & m);
            if (std::find(vals.begin(), vals.end(), r) == vals.end()) vals.push_back(r);
        }
        if (vals.size() > 2) {
            throw PreconditionError("party " + format_vertices(layout.parties[p]) + " needs more than two settings");
        }
        std::sort(vals.begin(), vals.end(), PauliSum::less);
        if (vals.size() == 1) vals.push_back(vals.front());
        obs.push_back({PauliSum::of(vals[0]), PauliSum::of(vals[1])});
    }
    TwoSettingExpression e(parties);
    for (const auto& t : form.terms()) {
        std::uint32_t s = 0;
        for (int p = 0; p < parties; ++p) {
            const std::uint64_t m = layout.parties[p].bits();
            const PauliString r(n, t.op.x_mask() & m, t.op.z_mask() & m);
            if (!(r == values[p][0])) s |= 1u << p;
        }
        e.add(t.coeff, s);
    }
    return {std::move(e), std::move(obs)};
}

/// The eight four-qubit cluster-state inequalities: four base operators and
/// their images under the relabelling 1<->4, 2<->3. Each has bound 2 and
/// value 4 on |LC_4>.
inline std::vector<BellInequality> lc4_set() {
    static constexpr std::array<std::array<std::string_view, 4>, 4> base = {{
        {"XIXZ", "ZYYZ", "XIYY", "-ZYXY"},
        {"IZXZ", "ZYYZ", "IZYY", "-ZYXY"},
        {"XIXZ", "-YXYZ", "XIYY", "YXXY"},
        {"IZXZ", "-YXYZ", "IZYY", "YXXY"},
    }};
    static constexpr std::array<int, 4> swap = {3, 2, 1, 0};
    const PartyLayout layout{{VertexSet{0, 1}, VertexSet{2}, VertexSet{3}}};
    const PartyLayout swapped{{VertexSet{3, 2}, VertexSet{1}, VertexSet{0}}};
    std::vector<BellInequality> out;
    for (int relabel = 0; relabel < 2; ++relabel) {
        for (std::size_t k = 0; k < base.size(); ++k) {
            PauliSum form(4);
            for (auto text : base[k]) form.add(1.0, PauliString::parse(text));
            if (relabel == 1) form = form.permuted(swap);
            BellInequality b;
            b.label = "LC4#" + std::to_string(k + 1 + 4 * relabel);
            b.num_qubits = 4;
            b.layout = relabel == 1 ? swapped : layout;
            std::tie(b.expression, b.observables) = decompose(form, b.layout);
            b.pauli_form = std::move(form);
            b.classical_bound = 2.0;
            out.push_back(std::move(b));
        }
    }
    return out;
}

/// A two-setting inequality violated by a factor of two for any graph with a
/// vertex of degree >= 2: B(i, {j, k}) if some pair of i's neighbours is
/// non-adjacent, otherwise the triangle operator on (i, j, k).
inline BellInequality nontrivial_inequality(const Graph& g) {
    for (int i = 0; i < g.num_vertices(); ++i) {
        const auto nb = g.neighbors(i).members();
        if (nb.size() < 2) continue;
        for (std::size_t x = 0; x < nb.size(); ++x)
            for (std::size_t y = x + 1; y < nb.size(); ++y)
                if (!g.adjacent(nb[x], nb[y])) return theorem1_operator(g, i, VertexSet{nb[x], nb[y]});
        return fc3_operator(g, {i, nb[0], nb[1]});
    }
    throw PreconditionError("graph has no vertex of degree >= 2");
}

}  // namespace gsbell
