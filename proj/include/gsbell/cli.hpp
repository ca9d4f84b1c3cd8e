#pragma once

// Command implementations behind the gsbell executable. Each command returns
// its report as a value; the executable only parses flags and prints.
// Output depends only on the configuration, never on the worker count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "gsbell/bell.hpp"
#include "gsbell/dense.hpp"
#include "gsbell/error.hpp"
#include "gsbell/graph.hpp"
#include "gsbell/lhv.hpp"
#include "gsbell/pauli.hpp"

namespace gsbell::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv };

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Exactly one of `file` or `family` is set.
struct GraphSource {
    std::optional<std::string> file;
    std::optional<std::string> family;
    int n = 0;
    int rows = 0;
    int cols = 0;
};

enum class Construction { Theorem1, Triangle, Ardehali, Lc4, Composite, Blocks, Nontrivial };

/// Vertex labels are 1-based, as on the command line.
struct InequalityConfig {
    std::optional<GraphSource> graph;
    Construction construction = Construction::Theorem1;
    int center = 0;
    std::vector<int> set;  // I for Theorem1/Ardehali, the triangle for Triangle
    int lc4_member = 0;    // 1..8
    std::map<int, int> condition;
    bool lemma1 = true;
    bool dense = false;
    unsigned workers = 1;
};

struct FacetConfig {
    std::optional<std::string> pattern;  // mermin | ardehali | chsh
    int parties = 0;
    std::optional<std::string> expression;
    std::optional<double> bound;
    std::optional<InequalityConfig> inequality;
};

struct Table1Row {
    Family family;
    int n;
    double classical_max;
    double quantum_value;
    double violation;
};

namespace detail {

/// Integral values are emitted as JSON integers.
inline Json number(double x) {
    if (std::isfinite(x) && std::nearbyint(x) == x && std::abs(x) < 9.0e15) return static_cast<std::int64_t>(x);
    return x;
}

inline std::string format_number(double x) {
    if (std::isfinite(x) && std::nearbyint(x) == x && std::abs(x) < 9.0e15) return std::to_string(static_cast<std::int64_t>(x));
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

inline Json vertex_list(VertexSet s) {
    Json out = Json::array();
    for (int v : s.members()) out.push_back(v + 1);
    return out;
}

inline Json sum_json(const PauliSum& s) {
    Json out = Json::array();
    for (const auto& t : s.terms()) out.push_back(Json{{"coeff", number(t.coeff)}, {"pauli", t.op.str()}});
    return out;
}

inline int zero_based(int v, int n) {
    if (v < 1 || v > n) throw PreconditionError("vertex " + std::to_string(v) + " is outside 1.." + std::to_string(n));
    return v - 1;
}

inline VertexSet zero_based_set(const std::vector<int>& vs, int n) {
    VertexSet s;
    for (int v : vs) s.insert(zero_based(v, n));
    return s;
}

/// Z pinning applies when every term is a signed stabilizer element of g.
inline bool pinning_applies(const PauliSum& b, const Graph& g) {
    if (g.num_vertices() != b.num_qubits()) return false;
    for (const auto& t : b.terms())
        if (graph_state_expectation(g, t.op) * (t.coeff < 0 ? -1 : 1) != 1) return false;
    return true;
}

}  // namespace detail

inline Graph load_graph(const GraphSource& src) {
    if (src.file.has_value() == src.family.has_value()) throw PreconditionError("give exactly one of --graph or --family");
    if (src.file) {
        std::ifstream in(*src.file);
        if (!in) throw PreconditionError("cannot read graph file " + *src.file);
        std::stringstream text;
        text << in.rdbuf();
        return parse_graph(text.str());
    }
    const Family f = parse_family(*src.family);
    if (f == Family::GRID) {
        if (src.rows < 1 || src.cols < 1) throw PreconditionError("GRID needs --rows and --cols");
        return grid(src.rows, src.cols);
    }
    if (src.n < 1) throw PreconditionError("--family needs --n");
    return family(f, src.n);
}

/// The inequality selected by `cfg` on graph `g`.
inline BellInequality build_inequality(const InequalityConfig& cfg, const Graph& g) {
    const int n = g.num_vertices();
    BellInequality b;
    switch (cfg.construction) {
        case Construction::Theorem1:
            b = theorem1_operator(g, detail::zero_based(cfg.center, n), detail::zero_based_set(cfg.set, n));
            break;
        case Construction::Ardehali:
            b = ardehali_expression(g, detail::zero_based(cfg.center, n), detail::zero_based_set(cfg.set, n));
            break;
        case Construction::Triangle:
            if (cfg.set.size() != 3) throw PreconditionError("--triangle needs three vertices");
            b = fc3_operator(g, {detail::zero_based(cfg.set[0], n), detail::zero_based(cfg.set[1], n), detail::zero_based(cfg.set[2], n)});
            break;
        case Construction::Lc4: {
            if (cfg.lc4_member < 1 || cfg.lc4_member > 8) throw PreconditionError("--lc4 selects a member 1..8");
            if (!(g == family(Family::LC, 4))) throw PreconditionError("the four-qubit cluster set lives on LC 4");
            b = lc4_set()[static_cast<std::size_t>(cfg.lc4_member - 1)];
            break;
        }
        case Construction::Composite: {
            if (!cfg.graph || !cfg.graph->family) throw PreconditionError("--composite needs --family");
            b = family_composite(parse_family(*cfg.graph->family), n);
            break;
        }
        case Construction::Blocks: b = block_composite(g); break;
        case Construction::Nontrivial: b = nontrivial_inequality(g); break;
    }
    if (!cfg.condition.empty()) {
        std::map<int, int> outcomes;
        for (auto [v, o] : cfg.condition) outcomes[detail::zero_based(v, n)] = o;
        b = condition_on_z(b, outcomes);
    }
    return b;
}

inline Json inequality_json(const BellInequality& b) {
    Json parties = Json::array();
    for (VertexSet p : b.layout.parties) parties.push_back(detail::vertex_list(p));
    Json observables = Json::array();
    for (std::size_t p = 0; p < b.observables.size(); ++p) {
        observables.push_back(Json{{"party", p + 1}, {"A", b.observables[p][0].str()}, {"B", b.observables[p][1].str()}});
    }
    Json out{{"label", b.label}, {"n", b.num_qubits}, {"parties", parties}, {"expression", b.expression.str()}, {"observables", observables}};
    out["terms"] = b.pauli_form ? detail::sum_json(*b.pauli_form) : Json::array();
    out["classical_bound"] = detail::number(b.classical_bound);
    return out;
}

inline Json bounds_json(const BoundsReport& r) {
    Json argmax = Json::object();
    for (const auto& [name, value] : r.argmax) argmax[name] = value;
    return Json{{"classical_max", detail::number(r.classical_max)},
                {"quantum_value", detail::number(r.quantum_value)},
                {"violation", detail::number(r.violation)},
                {"argmax", argmax},
                {"lemma1_used", r.lemma1_used}};
}

/// Quantum value on the graph state, or on the post-measurement state when
/// the inequality is conditioned on Z outcomes.
inline double quantum_value(const BellInequality& b, const Graph& g, const std::map<int, int>& outcomes) {
    if (!b.pauli_form) throw PreconditionError("inequality has no Pauli form");
    if (outcomes.empty()) return graph_state_expectation(g, *b.pauli_form);
    return expectation(project_z(graph_state_vector(g), outcomes), *b.pauli_form);
}

inline Json cmd_inequality(const InequalityConfig& cfg) {
    if (!cfg.graph) throw PreconditionError("no graph source given");
    const Graph g = load_graph(*cfg.graph);
    const BellInequality b = build_inequality(cfg, g);
    std::map<int, int> outcomes;
    for (auto [v, o] : cfg.condition) outcomes[v - 1] = o;
    const double q = quantum_value(b, g, outcomes);

    SearchOptions opts{.lemma1_graph = nullptr, .workers = cfg.workers};
    if (cfg.lemma1 && outcomes.empty() && b.has_pauli_observables() && detail::pinning_applies(*b.pauli_form, g)) {
        opts.lemma1_graph = &g;
    }
    const BoundsReport report = violation_report(b, q, opts);

    Json out = inequality_json(b);
    out["quantum_value"] = detail::number(q);
    out["violation"] = detail::number(report.violation);
    out["bounds_report"] = bounds_json(report);
    if (cfg.dense) {
        const SpectrumSummary spec = spectrum(*b.pauli_form);
        StateVector state = graph_state_vector(g);
        if (!outcomes.empty()) state = project_z(state, outcomes);
        out["dense"] = Json{{"expectation", expectation(state, *b.pauli_form)},
                            {"max_eigenvalue", spec.max_eigenvalue},
                            {"multiplicity", spec.multiplicity},
                            {"state_in_top_space", top_space_overlap(spec, state)}};
    }
    return out;
}

/// Violation table rows for LC, RC and ST with n = 3..max_n, each classical
/// maximum found by exhaustive search over the composed operator.
inline std::vector<Table1Row> table1_rows(int max_n, unsigned workers) {
    if (max_n < 3 || max_n > 12) throw PreconditionError("table1 covers 3 <= n <= 12");
    std::vector<Table1Row> rows;
    for (Family f : {Family::LC, Family::RC, Family::ST}) {
        for (int n = 3; n <= max_n; ++n) {
            const BellInequality b = family_composite(f, n);
            const double q = graph_state_expectation(family(f, n), *b.pauli_form);
            const double c = classical_max(*b.pauli_form, {.lemma1_graph = nullptr, .workers = workers}).value;
            rows.push_back({f, n, c, q, q / c});
        }
    }
    return rows;
}

inline std::string cmd_table1(int max_n, Format format, unsigned workers) {
    const auto rows = table1_rows(max_n, workers);
    if (format == Format::Csv) {
        std::string out = "family,n,violation\n";
        for (const auto& r : rows) out += std::string(family_name(r.family)) + "," + std::to_string(r.n) + "," + detail::format_number(r.violation) + "\n";
        return out;
    }
    Json arr = Json::array();
    for (const auto& r : rows) {
        arr.push_back(Json{{"family", family_name(r.family)},
                           {"n", r.n},
                           {"classical_max", detail::number(r.classical_max)},
                           {"quantum_value", detail::number(r.quantum_value)},
                           {"violation", detail::number(r.violation)}});
    }
    return Json{{"rows", arr}}.dump(2) + "\n";
}

inline constexpr double kFidelityTolerance = 1e-8;

/// The four-qubit cluster-state claims: bound 2 and value 4 per member, a
/// doubly degenerate maximum, a unique cluster-state maximum for every pair
/// sum, and the PSD certificate behind the fidelity bound.
inline Json cmd_verify_lc4(unsigned workers) {
    const Graph g = family(Family::LC, 4);
    const StateVector cluster = graph_state_vector(g);
    const auto set = lc4_set();
    bool pass = true;

    Json members = Json::array();
    for (const auto& b : set) {
        const double c = classical_max(*b.pauli_form, {.lemma1_graph = nullptr, .workers = workers}).value;
        const double q = graph_state_expectation(g, *b.pauli_form);
        const SpectrumSummary spec = spectrum(*b.pauli_form);
        const bool ok = c == 2.0 && q == 4.0 && std::abs(spec.max_eigenvalue - 4.0) <= kEigenTolerance && spec.multiplicity == 2;
        pass = pass && ok;
        members.push_back(Json{{"label", b.label},
                               {"terms", detail::sum_json(*b.pauli_form)},
                               {"classical_max", detail::number(c)},
                               {"quantum_value", detail::number(q)},
                               {"max_eigenvalue", spec.max_eigenvalue},
                               {"multiplicity", spec.multiplicity},
                               {"pass", ok}});
    }

    Json pairs = Json::array();
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            PauliSum sum = *set[i].pauli_form;
            sum.add(*set[j].pauli_form);
            const SpectrumSummary spec = spectrum(sum);
            const double fidelity = top_space_overlap(spec, cluster);
            const bool ok = spec.multiplicity == 1 && std::abs(fidelity - 1.0) <= kFidelityTolerance;
            pass = pass && ok;
            pairs.push_back(Json{{"members", Json::array({i + 1, j + 1})},
                                 {"max_eigenvalue", spec.max_eigenvalue},
                                 {"multiplicity", spec.multiplicity},
                                 {"fidelity", fidelity},
                                 {"pass", ok}});
        }
    }

    PauliSum base(4);
    for (std::size_t k = 0; k < 4; ++k) base.add(*set[k].pauli_form);
    const PsdResult psd = psd_check(base, 16.0, cluster);
    pass = pass && psd.is_psd;

    return Json{{"members", members},
                {"pairs", pairs},
                {"psd", Json{{"scale", 16}, {"min_eigenvalue", psd.min_eigenvalue}, {"is_psd", psd.is_psd}}},
                {"fidelity_bound_on_cluster", detail::number(fidelity_bound(expectation(cluster, base)))},
                {"pass", pass}};
}

inline Json cmd_facet(const FacetConfig& cfg) {
    const int sources = static_cast<int>(cfg.pattern.has_value()) + static_cast<int>(cfg.expression.has_value()) +
                        static_cast<int>(cfg.inequality.has_value());
    if (sources != 1) throw PreconditionError("give exactly one of --pattern, --expression or an inequality selection");
    TwoSettingExpression e;
    double bound = 0.0;
    std::string label;
    if (cfg.pattern) {
        if (cfg.parties < 1) throw PreconditionError("--pattern needs --parties");
        if (*cfg.pattern == "mermin") {
            e = mermin_pattern(cfg.parties);
            bound = mermin_bound(cfg.parties);
        } else if (*cfg.pattern == "ardehali") {
            e = ardehali_pattern(cfg.parties);
            bound = ardehali_bound(cfg.parties);
        } else if (*cfg.pattern == "chsh") {
            if (cfg.parties != 2) throw PreconditionError("chsh has two parties");
            e = ardehali_pattern(2);
            bound = 2.0;
        } else {
            throw PreconditionError("unknown pattern '" + *cfg.pattern + "'");
        }
        label = *cfg.pattern + "(" + std::to_string(cfg.parties) + ")";
    } else if (cfg.expression) {
        if (!cfg.bound) throw PreconditionError("--expression needs --bound");
        e = TwoSettingExpression::parse(*cfg.expression);
        bound = *cfg.bound;
        label = "expression";
    } else {
        const auto& ic = *cfg.inequality;
        if (!ic.graph) throw PreconditionError("no graph source given");
        const BellInequality b = build_inequality(ic, load_graph(*ic.graph));
        e = b.expression;
        bound = b.classical_bound;
        label = b.label;
    }
    if (cfg.bound && !cfg.expression) bound = *cfg.bound;
    const FacetResult r = facet_test(e, bound);
    return Json{{"label", label},
                {"expression", e.str()},
                {"parties", e.parties()},
                {"bound", detail::number(bound)},
                {"dimension", r.dimension},
                {"saturating_count", r.saturating_count},
                {"affine_rank", r.affine_rank},
                {"valid", r.valid},
                {"is_facet", r.is_facet}};
}

/// Parses "4=+1,5=-1" (1-based vertices).
inline std::map<int, int> parse_outcomes(const std::string& text) {
    std::map<int, int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("outcome '" + item + "' is not of the form VERTEX=+1|-1");
        const std::string v = item.substr(0, eq), o = item.substr(eq + 1);
        int vertex = 0;
        try {
            vertex = std::stoi(v);
        } catch (const std::exception&) {
            throw ParseError("bad vertex in '" + item + "'");
        }
        if (o != "+1" && o != "1" && o != "-1") throw ParseError("outcome in '" + item + "' must be +1 or -1");
        out[vertex] = o == "-1" ? -1 : 1;
    }
    return out;
}

}  // namespace gsbell::cli
