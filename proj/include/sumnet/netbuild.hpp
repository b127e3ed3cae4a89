#pragma once

// The sum-network built from an r x c (0,1)-matrix A. Every edge has the same
// multiplicity alpha, stored as an attribute rather than as parallel edges.
//
// Node ids are fixed by (r, c):
//   sources    0 .. r+c-1          (points s_p1..s_pr, then blocks s_B1..s_Bc)
//   terminals  r+c .. 2(r+c)-1     (same order)
//   tails      2(r+c) .. 2(r+c)+r-1
//   heads      2(r+c)+r .. 2(r+c)+2r-1
// Edge order: bottlenecks e_1..e_r; tail feeds grouped by bottleneck (point
// source first, then incident block sources ascending); head feeds grouped
// the same way; direct edges into t_p1..t_pr; direct edges into t_B1..t_Bc.

#include "sumnet/gf.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace sumnet {

enum class NodeRole { Source, Terminal, Relay };
enum class NodeSide { Point, Block, Tail, Head };
enum class EdgeKind { Bottleneck, TailFeed, HeadFeed, Direct };

struct Node {
    NodeRole role;
    NodeSide side;
    std::size_t index;  // 0-based within its side
    bool operator==(const Node&) const = default;
};

struct Edge {
    std::size_t tail;
    std::size_t head;
    EdgeKind kind;
    std::size_t multiplicity;
    bool operator==(const Edge&) const = default;
};

class SumNetwork {
 public:
    SumNetwork(IntMatrix a, std::size_t alpha, std::vector<Node> nodes, std::vector<Edge> edges);

    std::size_t r() const noexcept { return a_.rows(); }
    std::size_t c() const noexcept { return a_.cols(); }
    std::size_t alpha() const noexcept { return alpha_; }
    const IntMatrix& matrix() const noexcept { return a_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    /// k in [0, r+c): points first, then blocks. Mirrors the stacked message order.
    std::size_t source(std::size_t k) const noexcept { return k; }
    std::size_t terminal(std::size_t k) const noexcept { return r() + c() + k; }
    std::size_t tail(std::size_t i) const noexcept { return 2 * (r() + c()) + i; }
    std::size_t head(std::size_t i) const noexcept { return 2 * (r() + c()) + r() + i; }
    std::size_t num_sources() const noexcept { return r() + c(); }

    /// Edge id of bottleneck e_i (they come first).
    std::size_t bottleneck(std::size_t i) const noexcept { return i; }

    const std::vector<std::size_t>& in_edges(std::size_t node) const { return in_.at(node); }
    const std::vector<std::size_t>& out_edges(std::size_t node) const { return out_.at(node); }

    /// Nodes ordered so every edge goes forward. Throws if a cycle exists.
    std::vector<std::size_t> topological_order() const;

    std::string node_label(std::size_t node) const;

    bool operator==(const SumNetwork& other) const {
        return a_ == other.a_ && alpha_ == other.alpha_ && nodes_ == other.nodes_ && edges_ == other.edges_;
    }

 private:
    IntMatrix a_;
    std::size_t alpha_;
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> in_;
    std::vector<std::vector<std::size_t>> out_;
};

/// Throws std::invalid_argument if A is not a (0,1)-matrix, has an all-zero
/// row or column, or alpha is 0.
SumNetwork sum_net_cons(const IntMatrix& a, std::size_t alpha = 1);

/// Checks every structural property the construction promises (node
/// inventory, feed sets, direct edges, acyclicity). Returns a description of
/// the first violation, or an empty string.
std::string check_structure(const SumNetwork& net);

/// Value of a minimum edge cut between two nodes, counting multiplicities.
std::size_t min_cut(const SumNetwork& net, std::size_t from, std::size_t to);

/// Expected edge count r + 2(r + nnz) + r(r-1) + 2z + d, with z the zeros of
/// A and d the ordered pairs of disjoint columns.
std::size_t expected_edge_count(const IntMatrix& a);

/// DOT text with role/side/kind attributes; see import_graph.
std::string export_graph(const SumNetwork& net);
/// Parses text produced by export_graph. Throws std::invalid_argument on
/// malformed input or a graph that is not a sum-network of its matrix.
SumNetwork import_graph(const std::string& text);

const char* to_string(NodeRole role);
const char* to_string(NodeSide side);
const char* to_string(EdgeKind kind);

}  // namespace sumnet
