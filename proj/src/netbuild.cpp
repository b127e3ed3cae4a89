#include "sumnet/netbuild.hpp"

#include "sumnet/flow.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sumnet {

const char* to_string(NodeRole role) {
    switch (role) {
        case NodeRole::Source: return "source";
        case NodeRole::Terminal: return "terminal";
        case NodeRole::Relay: return "relay";
    }
    return "?";
}

const char* to_string(NodeSide side) {
    switch (side) {
        case NodeSide::Point: return "point";
        case NodeSide::Block: return "block";
        case NodeSide::Tail: return "tail";
        case NodeSide::Head: return "head";
    }
    return "?";
}

const char* to_string(EdgeKind kind) {
    switch (kind) {
        case EdgeKind::Bottleneck: return "bottleneck";
        case EdgeKind::TailFeed: return "tailfeed";
        case EdgeKind::HeadFeed: return "headfeed";
        case EdgeKind::Direct: return "direct";
    }
    return "?";
}

SumNetwork::SumNetwork(IntMatrix a, std::size_t alpha, std::vector<Node> nodes, std::vector<Edge> edges)
    : a_(std::move(a)), alpha_(alpha), nodes_(std::move(nodes)), edges_(std::move(edges)) {
    in_.assign(nodes_.size(), {});
    out_.assign(nodes_.size(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].tail >= nodes_.size() || edges_[e].head >= nodes_.size())
            throw std::invalid_argument("edge " + std::to_string(e) + " has an endpoint outside the node list");
        out_[edges_[e].tail].push_back(e);
        in_[edges_[e].head].push_back(e);
    }
}

std::vector<std::size_t> SumNetwork::topological_order() const {
    std::vector<std::size_t> indegree(nodes_.size());
    for (std::size_t v = 0; v < nodes_.size(); ++v) indegree[v] = in_[v].size();
    std::deque<std::size_t> ready;
    for (std::size_t v = 0; v < nodes_.size(); ++v)
        if (indegree[v] == 0) ready.push_back(v);
    std::vector<std::size_t> order;
    while (!ready.empty()) {
        const std::size_t v = ready.front();
        ready.pop_front();
        order.push_back(v);
        for (std::size_t e : out_[v])
            if (--indegree[edges_[e].head] == 0) ready.push_back(edges_[e].head);
    }
    if (order.size() != nodes_.size()) throw std::logic_error("sum-network has a directed cycle");
    return order;
}

std::string SumNetwork::node_label(std::size_t node) const {
    const Node& n = nodes_.at(node);
    std::string prefix;
    switch (n.side) {
        case NodeSide::Point: prefix = n.role == NodeRole::Source ? "s_p" : "t_p"; break;
        case NodeSide::Block: prefix = n.role == NodeRole::Source ? "s_B" : "t_B"; break;
        case NodeSide::Tail: prefix = "tail_e"; break;
        case NodeSide::Head: prefix = "head_e"; break;
    }
    return prefix + std::to_string(n.index + 1);
}

namespace {

bool columns_disjoint(const IntMatrix& a, std::size_t j, std::size_t l) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (a(i, j) != 0 && a(i, l) != 0) return false;
    return true;
}

void check_matrix(const IntMatrix& a) {
    if (a.empty()) throw std::invalid_argument("sum-network matrix must be nonempty");
    if (!a.is_binary()) throw std::invalid_argument("sum-network matrix must have entries in {0,1}");
    for (std::size_t i = 0; i < a.rows(); ++i) {
        bool any = false;
        for (std::size_t j = 0; j < a.cols(); ++j) any = any || a(i, j) != 0;
        if (!any) throw std::invalid_argument("row " + std::to_string(i + 1) + " of the matrix is all zero");
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
        bool any = false;
        for (std::size_t i = 0; i < a.rows(); ++i) any = any || a(i, j) != 0;
        if (!any) throw std::invalid_argument("column " + std::to_string(j + 1) + " of the matrix is all zero");
    }
}

}  // namespace

SumNetwork sum_net_cons(const IntMatrix& a, std::size_t alpha) {
    check_matrix(a);
    if (alpha == 0) throw std::invalid_argument("edge capacity alpha must be at least 1");
    const std::size_t r = a.rows(), c = a.cols();

    std::vector<Node> nodes;
    for (std::size_t i = 0; i < r; ++i) nodes.push_back({NodeRole::Source, NodeSide::Point, i});
    for (std::size_t j = 0; j < c; ++j) nodes.push_back({NodeRole::Source, NodeSide::Block, j});
    for (std::size_t i = 0; i < r; ++i) nodes.push_back({NodeRole::Terminal, NodeSide::Point, i});
    for (std::size_t j = 0; j < c; ++j) nodes.push_back({NodeRole::Terminal, NodeSide::Block, j});
    for (std::size_t i = 0; i < r; ++i) nodes.push_back({NodeRole::Relay, NodeSide::Tail, i});
    for (std::size_t i = 0; i < r; ++i) nodes.push_back({NodeRole::Relay, NodeSide::Head, i});

    const std::size_t src_p = 0, src_b = r, term_p = r + c, term_b = r + c + r, tail = 2 * (r + c),
                      head = 2 * (r + c) + r;
    std::vector<Edge> edges;
    auto add = [&](std::size_t from, std::size_t to, EdgeKind kind) { edges.push_back({from, to, kind, alpha}); };

    for (std::size_t i = 0; i < r; ++i) add(tail + i, head + i, EdgeKind::Bottleneck);
    for (std::size_t i = 0; i < r; ++i) {
        add(src_p + i, tail + i, EdgeKind::TailFeed);
        for (std::size_t j = 0; j < c; ++j)
            if (a(i, j) == 1) add(src_b + j, tail + i, EdgeKind::TailFeed);
    }
    for (std::size_t i = 0; i < r; ++i) {
        add(head + i, term_p + i, EdgeKind::HeadFeed);
        for (std::size_t j = 0; j < c; ++j)
            if (a(i, j) == 1) add(head + i, term_b + j, EdgeKind::HeadFeed);
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t k = 0; k < r; ++k)
            if (k != i) add(src_p + k, term_p + i, EdgeKind::Direct);
        for (std::size_t j = 0; j < c; ++j)
            if (a(i, j) == 0) add(src_b + j, term_p + i, EdgeKind::Direct);
    }
    for (std::size_t j = 0; j < c; ++j) {
        for (std::size_t i = 0; i < r; ++i)
            if (a(i, j) == 0) add(src_p + i, term_b + j, EdgeKind::Direct);
        for (std::size_t l = 0; l < c; ++l)
            if (columns_disjoint(a, j, l)) {
                if (l == j) throw std::logic_error("a nonempty column cannot be disjoint from itself");
                add(src_b + l, term_b + j, EdgeKind::Direct);
            }
    }
    return SumNetwork(a, alpha, std::move(nodes), std::move(edges));
}

std::size_t expected_edge_count(const IntMatrix& a) {
    const std::size_t r = a.rows(), c = a.cols();
    const std::size_t nnz = a.count_nonzero(), zeros = r * c - nnz;
    std::size_t disjoint = 0;
    for (std::size_t j = 0; j < c; ++j)
        for (std::size_t l = 0; l < c; ++l)
            if (columns_disjoint(a, j, l)) ++disjoint;
    return r + 2 * (r + nnz) + r * (r - 1) + 2 * zeros + disjoint;
}

std::string check_structure(const SumNetwork& net) {
    const std::size_t r = net.r(), c = net.c(), s = r + c;
    const IntMatrix& a = net.matrix();
    if (net.nodes().size() != 2 * s + 2 * r) return "node count differs from 2(r+c)+2r";
    for (std::size_t k = 0; k < s; ++k) {
        const Node& src = net.nodes()[net.source(k)];
        const Node& dst = net.nodes()[net.terminal(k)];
        if (src.role != NodeRole::Source || dst.role != NodeRole::Terminal) return "source/terminal roles misplaced";
        if (!net.in_edges(net.source(k)).empty()) return "source " + net.node_label(net.source(k)) + " has incoming edges";
        if (!net.out_edges(net.terminal(k)).empty())
            return "terminal " + net.node_label(net.terminal(k)) + " has outgoing edges";
    }
    for (const Edge& e : net.edges())
        if (e.multiplicity != net.alpha()) return "edge multiplicity differs from alpha";
    try {
        (void)net.topological_order();
    } catch (const std::logic_error&) {
        return "graph is not acyclic";
    }

    auto tails_of = [&](std::size_t node) {
        std::set<std::size_t> out;
        for (std::size_t e : net.in_edges(node)) out.insert(net.edges()[e].tail);
        return out;
    };
    auto heads_of = [&](std::size_t node) {
        std::set<std::size_t> out;
        for (std::size_t e : net.out_edges(node)) out.insert(net.edges()[e].head);
        return out;
    };
    for (std::size_t i = 0; i < r; ++i) {
        const Edge& b = net.edges()[net.bottleneck(i)];
        if (b.kind != EdgeKind::Bottleneck || b.tail != net.tail(i) || b.head != net.head(i))
            return "bottleneck e_" + std::to_string(i + 1) + " misplaced";
        std::set<std::size_t> feeds{net.source(i)}, outs{net.terminal(i)};
        for (std::size_t j = 0; j < c; ++j)
            if (a(i, j) == 1) {
                feeds.insert(net.source(r + j));
                outs.insert(net.terminal(r + j));
            }
        if (tails_of(net.tail(i)) != feeds) return "In(tail(e_" + std::to_string(i + 1) + ")) is wrong";
        if (heads_of(net.head(i)) != outs) return "Out(head(e_" + std::to_string(i + 1) + ")) is wrong";
        if (net.out_edges(net.tail(i)).size() != 1 || net.in_edges(net.head(i)).size() != 1)
            return "relay of e_" + std::to_string(i + 1) + " has extra edges";
    }
    for (std::size_t i = 0; i < r; ++i) {
        std::set<std::size_t> expected{net.head(i)};
        for (std::size_t k = 0; k < r; ++k)
            if (k != i) expected.insert(net.source(k));
        for (std::size_t j = 0; j < c; ++j)
            if (a(i, j) == 0) expected.insert(net.source(r + j));
        if (tails_of(net.terminal(i)) != expected) return "inputs of " + net.node_label(net.terminal(i)) + " are wrong";
    }
    for (std::size_t j = 0; j < c; ++j) {
        std::set<std::size_t> expected;
        for (std::size_t i = 0; i < r; ++i)
            expected.insert(a(i, j) == 1 ? net.head(i) : net.source(i));
        for (std::size_t l = 0; l < c; ++l)
            if (columns_disjoint(a, j, l)) expected.insert(net.source(r + l));
        if (tails_of(net.terminal(r + j)) != expected)
            return "inputs of " + net.node_label(net.terminal(r + j)) + " are wrong";
    }
    if (net.edges().size() != expected_edge_count(a)) return "edge count differs from the construction's inventory";
    return {};
}

std::size_t min_cut(const SumNetwork& net, std::size_t from, std::size_t to) {
    FlowNetwork flow(net.nodes().size());
    for (const Edge& e : net.edges()) flow.add_arc(e.tail, e.head, static_cast<std::int64_t>(e.multiplicity));
    return static_cast<std::size_t>(flow.max_flow(from, to));
}

std::string export_graph(const SumNetwork& net) {
    std::ostringstream os;
    os << "digraph sumnet {\n";
    os << "  graph [rows=" << net.r() << ", cols=" << net.c() << ", alpha=" << net.alpha() << ", matrix=\"";
    for (std::size_t i = 0; i < net.r(); ++i) {
        if (i) os << ';';
        for (std::size_t j = 0; j < net.c(); ++j) os << net.matrix()(i, j);
    }
    os << "\"];\n";
    for (std::size_t v = 0; v < net.nodes().size(); ++v) {
        const Node& n = net.nodes()[v];
        os << "  n" << v << " [role=" << to_string(n.role) << ", side=" << to_string(n.side) << ", index=" << n.index + 1
           << ", label=\"" << net.node_label(v) << "\"];\n";
    }
    for (const Edge& e : net.edges()) {
        os << "  n" << e.tail << " -> n" << e.head << " [kind=" << to_string(e.kind);
        if (e.kind == EdgeKind::Bottleneck) os << ", bottleneck=true";
        os << ", multiplicity=" << e.multiplicity << "];\n";
    }
    os << "}\n";
    return os.str();
}

namespace {

template <class Enum, std::size_t N>
Enum parse_enum(const std::string& text, const Enum (&values)[N], const char* what) {
    for (Enum v : values)
        if (text == to_string(v)) return v;
    throw std::invalid_argument(std::string("graph import: unknown ") + what + " '" + text + "'");
}

std::map<std::string, std::string> parse_attributes(const std::string& body) {
    static const std::regex attr(R"re(\s*([a-z]+)=("[^"]*"|[^,\s]+)\s*(,|$))re");
    std::map<std::string, std::string> out;
    auto begin = std::sregex_iterator(body.begin(), body.end(), attr);
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        std::string value = (*it)[2];
        if (value.size() >= 2 && value.front() == '"') value = value.substr(1, value.size() - 2);
        out[(*it)[1]] = value;
    }
    return out;
}

std::size_t to_size(const std::map<std::string, std::string>& attrs, const std::string& key) {
    const auto it = attrs.find(key);
    if (it == attrs.end()) throw std::invalid_argument("graph import: missing attribute '" + key + "'");
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(key);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw std::invalid_argument("graph import: attribute '" + key + "' is not a nonnegative integer");
    }
}

}  // namespace

SumNetwork import_graph(const std::string& text) {
    static const std::regex graph_line(R"re(^\s*graph\s*\[(.*)\];\s*$)re");
    static const std::regex node_line(R"re(^\s*n(\d+)\s*\[(.*)\];\s*$)re");
    static const std::regex edge_line(R"re(^\s*n(\d+)\s*->\s*n(\d+)\s*\[(.*)\];\s*$)re");
    static const std::regex open_line(R"re(^\s*digraph\s+\w+\s*\{\s*$)re");
    static const std::regex close_line(R"re(^\s*\}\s*$)re");

    std::istringstream in(text);
    std::string line;
    bool have_graph = false;
    IntMatrix a;
    std::size_t alpha = 0;
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::smatch m;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (std::regex_match(line, open_line) || std::regex_match(line, close_line)) continue;
        if (std::regex_match(line, m, graph_line)) {
            const auto attrs = parse_attributes(m[1]);
            const std::size_t rows = to_size(attrs, "rows"), cols = to_size(attrs, "cols");
            alpha = to_size(attrs, "alpha");
            const auto mit = attrs.find("matrix");
            if (mit == attrs.end()) throw std::invalid_argument("graph import: missing matrix");
            a = IntMatrix(rows, cols);
            std::istringstream ms(mit->second);
            std::string row;
            std::size_t i = 0;
            while (std::getline(ms, row, ';')) {
                if (i >= rows || row.size() != cols || row.find_first_not_of("01") != std::string::npos)
                    throw std::invalid_argument("graph import: matrix attribute does not match rows/cols");
                for (std::size_t j = 0; j < cols; ++j) a(i, j) = row[j] - '0';
                ++i;
            }
            if (i != rows) throw std::invalid_argument("graph import: matrix attribute has the wrong row count");
            have_graph = true;
        } else if (std::regex_match(line, m, edge_line)) {
            const auto attrs = parse_attributes(m[3]);
            const auto kit = attrs.find("kind");
            if (kit == attrs.end()) throw std::invalid_argument("graph import: edge without kind");
            static constexpr EdgeKind kinds[] = {EdgeKind::Bottleneck, EdgeKind::TailFeed, EdgeKind::HeadFeed,
                                                 EdgeKind::Direct};
            const EdgeKind kind = parse_enum(kit->second, kinds, "edge kind");
            if ((kind == EdgeKind::Bottleneck) != (attrs.count("bottleneck") == 1))
                throw std::invalid_argument("graph import: bottleneck flag disagrees with edge kind");
            edges.push_back({std::stoull(m[1]), std::stoull(m[2]), kind, to_size(attrs, "multiplicity")});
        } else if (std::regex_match(line, m, node_line)) {
            if (std::stoull(m[1]) != nodes.size()) throw std::invalid_argument("graph import: node ids must be 0,1,2,...");
            const auto attrs = parse_attributes(m[2]);
            static constexpr NodeRole roles[] = {NodeRole::Source, NodeRole::Terminal, NodeRole::Relay};
            static constexpr NodeSide sides[] = {NodeSide::Point, NodeSide::Block, NodeSide::Tail, NodeSide::Head};
            const auto rit = attrs.find("role"), sit = attrs.find("side");
            if (rit == attrs.end() || sit == attrs.end()) throw std::invalid_argument("graph import: node without role/side");
            const std::size_t index = to_size(attrs, "index");
            if (index == 0) throw std::invalid_argument("graph import: node indices are 1-based");
            nodes.push_back({parse_enum(rit->second, roles, "role"), parse_enum(sit->second, sides, "side"), index - 1});
        } else {
            throw std::invalid_argument("graph import: unrecognised line '" + line + "'");
        }
    }
    if (!have_graph) throw std::invalid_argument("graph import: missing graph attribute line");
    SumNetwork net(a, alpha, std::move(nodes), std::move(edges));
    if (const std::string problem = check_structure(net); !problem.empty())
        throw std::invalid_argument("graph import: " + problem);
    if (!(net == sum_net_cons(a, alpha)))
        throw std::invalid_argument("graph import: node or edge order differs from the canonical construction");
    return net;
}

}  // namespace sumnet
