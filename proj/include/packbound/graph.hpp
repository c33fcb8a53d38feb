#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "packbound/common.hpp"

namespace pb {

// Finite loopless undirected graph with bitset adjacency rows.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return int(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    void add_edge(int i, int j);
    bool has_edge(int i, int j) const;
    int degree(int v) const;

    // adjacency row of v as packed 64-bit words
    const std::vector<std::uint64_t>& adjacency_row(int v) const { return adj_[v]; }
    int words() const { return words_; }

    std::vector<std::string> labels; // optional, opaque annotations

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

    // stable structural hash over (n, sorted edge list)
    std::uint64_t canonical_hash() const;

    // text format: "n m" then m lines "i j"
    static Graph read(std::istream& in);
    static Graph read_file(const std::string& path);
    void write(std::ostream& out) const;

private:
    int n_ = 0;
    int words_ = 0;
    std::vector<std::pair<int, int>> edges_;           // sorted, i < j
    std::vector<std::vector<std::uint64_t>> adj_;      // per-vertex bitset
};

struct GraphHom {
    Graph source;
    Graph target;
    std::vector<int> map;

    bool valid() const;
};

Graph complement(const Graph& g);
Graph join(const Graph& g, const Graph& h);
Graph disjoint_union(const Graph& g, const Graph& h);
Graph induced_subgraph(const Graph& g, const std::vector<int>& keep);

// Exact invariants. Throw SizeCapExceeded when the graph exceeds `cap`
// (defaults come from caps()).
int independence_number(const Graph& g, int cap = -1);
int clique_number(const Graph& g, int cap = -1);
int chromatic_number(const Graph& g, int cap = -1);

// First homomorphism in lexicographic vertex order, or nullopt when none
// exists. Exhaustive backtracking; both sides capped.
std::optional<GraphHom> find_homomorphism(const Graph& g, const Graph& h, int cap = -1);

// test oracles; exponential, intended for n <= 16 / n <= 8
int independence_number_bruteforce(const Graph& g);
int chromatic_number_bruteforce(const Graph& g);

Graph random_graph(int n, double edge_prob, Rng& rng);

// named small graphs used all over the tests
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph empty_graph(int n);

} // namespace pb
