#pragma once

// Simple undirected graphs on at most 64 vertices, the standard families, and
// the stabilizer group of the associated graph state.
//
// Vertices are 0-based here. Text formats and reports use 1-based labels.

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gsbell/error.hpp"
#include "gsbell/pauli.hpp"

namespace gsbell {

/// Set of vertex indices packed into one word.
class VertexSet {
  public:
    constexpr VertexSet() = default;
    constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}
    VertexSet(std::initializer_list<int> members) {
        for (int v : members) insert(v);
    }

    static VertexSet from(std::span<const int> members) {
        VertexSet s;
        for (int v : members) s.insert(v);
        return s;
    }

    constexpr std::uint64_t bits() const noexcept { return bits_; }
    constexpr int size() const noexcept { return std::popcount(bits_); }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr bool contains(int v) const noexcept { return v >= 0 && v < 64 && ((bits_ >> v) & 1u); }
    constexpr bool subset_of(VertexSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }

    void insert(int v) {
        if (v < 0 || v >= 64) throw DimensionError("vertex index out of range");
        bits_ |= std::uint64_t{1} << v;
    }

    /// Members in ascending order.
    std::vector<int> members() const {
        std::vector<int> out;
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }

    friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
    friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
    friend constexpr VertexSet operator^(VertexSet a, VertexSet b) { return VertexSet(a.bits_ ^ b.bits_); }
    friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
    friend constexpr bool operator==(VertexSet, VertexSet) = default;

  private:
    std::uint64_t bits_ = 0;
};

/// "{1,3}" with 1-based labels.
inline std::string format_vertices(VertexSet s) {
    std::string out = "{";
    for (int v : s.members()) {
        if (out.size() > 1) out += ',';
        out += std::to_string(v + 1);
    }
    return out + "}";
}

class Graph {
  public:
    Graph() = default;

    /// Edgeless graph on n vertices.
    explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), 0) {
        if (n < 1 || n > kMaxQubits) throw PreconditionError("vertex count must lie in [1, 64]");
    }

    Graph(int n, std::span<const std::pair<int, int>> edges) : Graph(n) {
        for (auto [a, b] : edges) connect(a, b);
    }

    Graph(int n, std::initializer_list<std::pair<int, int>> edges)
        : Graph(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size())) {}

    int num_vertices() const noexcept { return n_; }
    VertexSet vertices() const noexcept { return VertexSet(low_bits(n_)); }

    VertexSet neighbors(int v) const {
        check_vertex(v);
        return VertexSet(adj_[v]);
    }

    bool adjacent(int a, int b) const {
        check_vertex(a);
        check_vertex(b);
        return (adj_[a] >> b) & 1u;
    }

    int degree(int v) const { return neighbors(v).size(); }

    /// Edges as (a, b) with a < b, ascending.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int a = 0; a < n_; ++a)
            for (int b : VertexSet(adj_[a] & ~low_bits(a + 1)).members()) out.emplace_back(a, b);
        return out;
    }

    bool is_connected() const {
        std::uint64_t reached = 1, frontier = 1;
        while (frontier != 0) {
            std::uint64_t next = 0;
            for (int v : VertexSet(frontier).members()) next |= adj_[v];
            frontier = next & ~reached;
            reached |= next;
        }
        return reached == low_bits(n_);
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= n_) {
            throw PreconditionError("vertex " + std::to_string(v + 1) + " out of range [1, " + std::to_string(n_) + "]");
        }
    }

    friend bool operator==(const Graph&, const Graph&) = default;

  private:
    void connect(int a, int b) {
        check_vertex(a);
        check_vertex(b);
        if (a == b) throw PreconditionError("self-loop on vertex " + std::to_string(a + 1));
        adj_[a] |= std::uint64_t{1} << b;
        adj_[b] |= std::uint64_t{1} << a;
    }

    int n_ = 0;
    std::vector<std::uint64_t> adj_;
};

/// Edge-list document: first line n, then one "a b" pair (1-based) per line.
/// Blank lines and lines starting with '#' are skipped.
inline Graph parse_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    auto read_ints = [&](const std::string& s) {
        std::istringstream ls(s);
        std::vector<long long> vals;
        std::string tok;
        while (ls >> tok) {
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(tok, &used);
            } catch (const std::exception&) {
                throw ParseError("malformed token '" + tok + "'", line_no);
            }
            if (used != tok.size()) throw ParseError("malformed token '" + tok + "'", line_no);
            vals.push_back(v);
        }
        return vals;
    };
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto vals = read_ints(line);
        if (n == 0) {
            if (vals.size() != 1) throw ParseError("expected the vertex count alone on the first line", line_no);
            if (vals[0] < 1 || vals[0] > kMaxQubits) throw ParseError("vertex count must lie in [1, 64]", line_no);
            n = static_cast<int>(vals[0]);
            continue;
        }
        if (vals.size() != 2) throw ParseError("expected two vertex indices", line_no);
        for (long long v : vals)
            if (v < 1 || v > n) throw ParseError("vertex index " + std::to_string(v) + " out of range", line_no);
        if (vals[0] == vals[1]) throw ParseError("self-loop on vertex " + std::to_string(vals[0]), line_no);
        edges.emplace_back(static_cast<int>(vals[0] - 1), static_cast<int>(vals[1] - 1));
    }
    if (n == 0) throw ParseError("missing vertex count");
    return Graph(n, edges);
}

inline std::string format_graph(const Graph& g) {
    std::string out = std::to_string(g.num_vertices()) + "\n";
    for (auto [a, b] : g.edges()) out += std::to_string(a + 1) + " " + std::to_string(b + 1) + "\n";
    return out;
}

enum class Family { LC, RC, ST, FC, GRID };

inline Family parse_family(std::string_view name) {
    if (name == "LC") return Family::LC;
    if (name == "RC") return Family::RC;
    if (name == "ST") return Family::ST;
    if (name == "FC") return Family::FC;
    if (name == "GRID") return Family::GRID;
    throw ParseError("unknown graph family '" + std::string(name) + "'");
}

inline std::string_view family_name(Family f) {
    switch (f) {
        case Family::LC: return "LC";
        case Family::RC: return "RC";
        case Family::ST: return "ST";
        case Family::FC: return "FC";
        case Family::GRID: return "GRID";
    }
    return "?";
}

/// Rectangular lattice with 4-neighbour edges, row-major vertex order.
inline Graph grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw PreconditionError("grid needs rows, cols >= 1");
    if (rows * cols > kMaxQubits) throw PreconditionError("grid larger than 64 vertices");
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int v = r * cols + c;
            if (c + 1 < cols) edges.emplace_back(v, v + 1);
            if (r + 1 < rows) edges.emplace_back(v, v + cols);
        }
    }
    return Graph(rows * cols, edges);
}

/// LC/RC/ST/FC take {n}; GRID takes {rows, cols}.
inline Graph family(Family f, std::span<const int> params) {
    if (f == Family::GRID) {
        if (params.size() != 2) throw PreconditionError("GRID takes rows and cols");
        return grid(params[0], params[1]);
    }
    if (params.size() != 1) throw PreconditionError(std::string(family_name(f)) + " takes a single size parameter");
    const int n = params[0];
    const int min_n = f == Family::RC ? 3 : f == Family::ST ? 2 : 1;
    if (n < min_n || n > kMaxQubits) {
        throw PreconditionError(std::string(family_name(f)) + " needs " + std::to_string(min_n) + " <= n <= 64");
    }
    std::vector<std::pair<int, int>> edges;
    switch (f) {
        case Family::LC:
            for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
            break;
        case Family::RC:
            for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
            break;
        case Family::ST:
            for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
            break;
        case Family::FC:
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b);
            break;
        case Family::GRID: break;
    }
    return Graph(n, edges);
}

inline Graph family(Family f, int n) {
    const int params[] = {n};
    return family(f, params);
}

/// g_k: X on k, Z on every neighbour of k.
inline PauliString generator(const Graph& g, int k) {
    return PauliString(g.num_vertices(), std::uint64_t{1} << k, g.neighbors(k).bits());
}

/// Product of generators over `subset`, ascending vertex order.
inline PauliString stabilizer_element(const Graph& g, VertexSet subset) {
    if (!subset.subset_of(g.vertices())) throw PreconditionError("subset contains vertices outside the graph");
    PauliString out(g.num_vertices());
    for (int k : subset.members()) out = out * generator(g, k);
    return out;
}

inline bool is_independent_set(const Graph& g, VertexSet s) {
    if (!s.subset_of(g.vertices())) throw PreconditionError("set contains vertices outside the graph");
    for (int v : s.members())
        if (!(g.neighbors(v) & s).empty()) return false;
    return true;
}

/// <G|p|G> for the graph state of `g`: +1, -1 or 0.
///
/// Each generator is the only one with an X component on its own vertex, so
/// the X-support of p fixes the single stabilizer element that could equal +-p.
inline int graph_state_expectation(const Graph& g, const PauliString& p) {
    if (p.num_qubits() != g.num_vertices()) throw DimensionError("Pauli string and graph differ in size");
    if (!p.is_hermitian()) throw PreconditionError("expectation of non-Hermitian string " + p.str());
    const PauliString s = stabilizer_element(g, VertexSet(p.x_mask()));
    if (s.z_mask() != p.z_mask()) return 0;
    return s.sign() * p.sign();
}

/// <G|b|G> accumulated term by term in stored order.
inline double graph_state_expectation(const Graph& g, const PauliSum& b) {
    double total = 0.0;
    for (const auto& t : b.terms()) total += t.coeff * graph_state_expectation(g, t.op);
    return total;
}

}  // namespace gsbell
