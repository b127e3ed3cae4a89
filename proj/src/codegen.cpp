#include "sumnet/codegen.hpp"

#include "sumnet/flow.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace sumnet {

const char* to_string(NetworkKind kind) { return kind == NetworkKind::Normal ? "normal" : "transpose"; }

IntMatrix network_matrix(const IncidenceStructure& structure, NetworkKind kind) {
    return kind == NetworkKind::Normal ? structure.matrix() : structure.matrix().transpose();
}

IntMatrix source_payload(std::size_t m, std::size_t n, std::size_t alpha) {
    if (alpha == 0 || m % alpha != 0) throw std::invalid_argument("message length must be a multiple of alpha");
    const std::size_t per_edge = m / alpha;
    if (per_edge > n) throw std::invalid_argument("an edge cannot carry more message symbols than its length");
    IntMatrix out(alpha * n, m);
    for (std::size_t k = 0; k < alpha; ++k)
        for (std::size_t l = 0; l < per_edge; ++l) out(k * n + l, k * per_edge + l) = 1;
    return out;
}

std::string validate_D(const IntMatrix& a, const IntMatrix& d) {
    if (d.rows() != a.rows() || d.cols() != a.cols()) return "D has a different shape from A";
    const auto r = static_cast<std::int64_t>(a.rows()), c = static_cast<std::int64_t>(a.cols());
    for (std::size_t i = 0; i < d.rows(); ++i) {
        std::int64_t sum = 0;
        for (std::size_t j = 0; j < d.cols(); ++j) {
            if (d(i, j) < 0) return "D has a negative entry";
            if (a(i, j) == 0 && d(i, j) != 0)
                return "D(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is nonzero where A is zero";
            sum += d(i, j);
        }
        if (sum != c) return "row " + std::to_string(i + 1) + " of D sums to " + std::to_string(sum) + ", not c";
    }
    for (std::size_t j = 0; j < d.cols(); ++j) {
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < d.rows(); ++i) sum += d(i, j);
        if (sum != r) return "column " + std::to_string(j + 1) + " of D sums to " + std::to_string(sum) + ", not r";
    }
    return {};
}

std::optional<IntMatrix> find_D(const IntMatrix& a) {
    const std::size_t r = a.rows(), c = a.cols();
    const std::size_t source = 0, sink = r + c + 1;
    FlowNetwork flow(r + c + 2);
    for (std::size_t i = 0; i < r; ++i) flow.add_arc(source, 1 + i, static_cast<std::int64_t>(c));
    const auto unbounded = static_cast<std::int64_t>(r * c);
    std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> middle;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (a(i, j) != 0) middle.push_back({flow.add_arc(1 + i, 1 + r + j, unbounded), {i, j}});
    for (std::size_t j = 0; j < c; ++j) flow.add_arc(1 + r + j, sink, static_cast<std::int64_t>(r));
    if (flow.max_flow(source, sink) != static_cast<std::int64_t>(r * c)) return std::nullopt;
    IntMatrix d(r, c);
    for (const auto& [arc, ij] : middle) d(ij.first, ij.second) = flow.flow_on(arc);
    return d;
}

bool check_feasibility_bruteforce(const IntMatrix& a) {
    const std::size_t r = a.rows(), c = a.cols();
    if (r + c > 24) throw std::invalid_argument("brute-force feasibility check refused for r + c > 24");
    std::vector<std::uint32_t> row_cols(r, 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (a(i, j) != 0) row_cols[i] |= 1u << j;
    for (std::uint32_t rows = 0; rows < (1u << r); ++rows) {
        std::uint32_t touched = 0;
        for (std::size_t i = 0; i < r; ++i)
            if (rows >> i & 1u) touched |= row_cols[i];
        const auto outside = static_cast<long long>(r) - std::popcount(rows);
        for (std::uint32_t cols = 0; cols < (1u << c); ++cols) {
            if ((cols & touched) != 0) continue;
            // No arc between I and J: the cut needs (r-|I|)c >= |J|r.
            if (static_cast<long long>(std::popcount(cols)) * static_cast<long long>(r) >
                outside * static_cast<long long>(c))
                return false;
        }
    }
    return true;
}

bool DiagResult::all_nonzero() const {
    return std::all_of(mu.begin(), mu.end(), [](std::int64_t x) { return x != 0; });
}

bool DiagResult::all_zero() const {
    return std::all_of(mu.begin(), mu.end(), [](std::int64_t x) { return x == 0; });
}

DiagResult diag_residue(const IntMatrix& a, const PrimeField& field) {
    const IntMatrix at = a.transpose();
    const IntMatrix gram = at * a;
    const IntMatrix residue = gram - sharp_product(at, a);
    DiagResult out;
    out.is_diagonal = true;
    for (std::size_t j = 0; j < residue.rows(); ++j) {
        out.mu.push_back(field.reduce(residue(j, j)));
        for (std::size_t l = 0; l < residue.cols(); ++l) {
            if (l == j) continue;
            if (field.reduce(residue(j, l)) != 0) out.is_diagonal = false;
            if (j < l && gram(j, l) > 0 && field.reduce(gram(j, l)) == 0) out.vanishing_overlaps.push_back({j, l});
        }
    }
    return out;
}

std::vector<std::vector<Piece>> piece_layout(const IntMatrix& a, const IntMatrix& d) {
    std::vector<std::vector<Piece>> out(a.rows());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        std::size_t start = 0;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (d(i, j) <= 0) continue;
            const auto count = static_cast<std::size_t>(d(i, j));
            out[i].push_back({j, start, count});
            start += count;
        }
    }
    return out;
}

namespace {

// Fills one terminal's decoder; entries are accumulated mod p.
class DecoderAssembler {
 public:
    DecoderAssembler(const SumNetwork& net, std::size_t terminal, std::size_t m, std::size_t width,
                     const PrimeField& field)
        : net_(net), width_(width), field_(field) {
        decoder_.inputs = net.in_edges(terminal);
        decoder_.matrix = IntMatrix(m, width * decoder_.inputs.size());
        for (std::size_t k = 0; k < decoder_.inputs.size(); ++k) slot_of_tail_[net.edges()[decoder_.inputs[k]].tail] = k;
    }

    void add(std::size_t from_node, std::size_t component, std::size_t out, std::int64_t coef) {
        const std::size_t col = slot_of_tail_.at(from_node) * width_ + component;
        decoder_.matrix(out, col) = field_.add(decoder_.matrix(out, col), coef);
    }

    /// Adds the first `count` components of every input edge of the given kind.
    void add_all(EdgeKind kind, std::size_t count) {
        for (std::size_t e : decoder_.inputs) {
            const Edge& edge = net_.edges()[e];
            if (edge.kind != kind) continue;
            for (std::size_t l = 0; l < count; ++l) add(edge.tail, l, l, 1);
        }
    }

    Decoder take() { return std::move(decoder_); }

 private:
    const SumNetwork& net_;
    std::size_t width_;
    const PrimeField& field_;
    Decoder decoder_;
    std::map<std::size_t, std::size_t> slot_of_tail_;
};

// Column of X_s[l] in the stacked message vector.
std::size_t message_col(std::size_t source, std::size_t m, std::size_t l) { return source * m + l; }

// Partial-sum rows 0..m-1 of bottleneck i: X_pi + sum of incident X_Bj.
void partial_sum_rows(IntMatrix& enc, const IntMatrix& a, std::size_t i, std::size_t m) {
    for (std::size_t l = 0; l < m; ++l) {
        enc(l, message_col(i, m, l)) = 1;
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) == 1) enc(l, message_col(a.rows() + j, m, l)) = 1;
    }
}

}  // namespace

NetworkCode build_normal_code(const IntMatrix& a, const PrimeField& field) {
    const DiagResult diag = diag_residue(a, field);
    if (!diag.is_diagonal || !diag.all_nonzero())
        throw ConstructionError("diagonal condition fails: A^T A - (A^T A)_# is not diagonal with nonzero entries mod " +
                                std::to_string(field.p()));
    const auto d = find_D(a);
    if (!d) throw ConstructionError("no suitable D: no nonnegative integral D with row sums c and column sums r");
    return build_normal_code(a, field, *d);
}

NetworkCode build_normal_code(const IntMatrix& a, const PrimeField& field, const IntMatrix& d) {
    const DiagResult diag = diag_residue(a, field);
    if (!diag.is_diagonal || !diag.all_nonzero())
        throw ConstructionError("diagonal condition fails: A^T A - (A^T A)_# is not diagonal with nonzero entries mod " +
                                std::to_string(field.p()));
    if (const std::string problem = validate_D(a, d); !problem.empty())
        throw ConstructionError("no suitable D: " + problem);

    const SumNetwork net = sum_net_cons(a);
    const std::size_t r = a.rows(), c = a.cols(), m = r, n = r + c;
    NetworkCode code;
    code.m = m;
    code.n = n;
    code.p = field.p();
    code.construction = "normal";
    code.matrix = a;

    const auto layout = piece_layout(a, d);
    // offset_of[i][j] = first symbol of e_i carrying pieces of X_Bj.
    std::vector<std::map<std::size_t, std::size_t>> offset_of(r);
    for (std::size_t i = 0; i < r; ++i) {
        IntMatrix enc(n, m * (r + c));
        partial_sum_rows(enc, a, i, m);
        std::size_t offset = r;
        for (const Piece& piece : layout[i]) {
            offset_of[i][piece.column] = offset;
            for (std::size_t q = 0; q < piece.count; ++q)
                enc(offset + q, message_col(r + piece.column, m, piece.start + q)) = 1;
            offset += piece.count;
        }
        code.encoders.push_back(std::move(enc));
    }

    for (std::size_t i = 0; i < r; ++i) {
        DecoderAssembler dec(net, net.terminal(i), m, n, field);
        dec.add_all(EdgeKind::HeadFeed, m);
        dec.add_all(EdgeKind::Direct, m);
        code.decoders.push_back(dec.take());
    }
    for (std::size_t j = 0; j < c; ++j) {
        DecoderAssembler dec(net, net.terminal(r + j), m, n, field);
        dec.add_all(EdgeKind::HeadFeed, m);
        dec.add_all(EdgeKind::Direct, m);
        // Remove mu_j copies of X_Bj, rebuilt from its pieces.
        const std::int64_t minus_mu = field.neg(diag.mu[j]);
        for (std::size_t i = 0; i < r; ++i) {
            if (a(i, j) == 0) continue;
            for (const Piece& piece : layout[i]) {
                if (piece.column != j) continue;
                for (std::size_t q = 0; q < piece.count; ++q)
                    dec.add(net.head(i), offset_of[i][j] + q, piece.start + q, minus_mu);
            }
        }
        code.decoders.push_back(dec.take());
    }
    return code;
}

NetworkCode build_rate1_code(const IntMatrix& a, const PrimeField& field) {
    const IntMatrix at = a.transpose();
    const IntMatrix residue = reduce_mod(at * a - sharp_product(at, a), field);
    if (!residue.is_zero())
        throw ConstructionError("rate-1 condition fails: A^T A differs from (A^T A)_# mod " + std::to_string(field.p()));
    const SumNetwork net = sum_net_cons(a);
    const std::size_t r = a.rows(), c = a.cols();
    NetworkCode code;
    code.m = 1;
    code.n = 1;
    code.p = field.p();
    code.construction = "rate-1";
    code.matrix = a;
    for (std::size_t i = 0; i < r; ++i) {
        IntMatrix enc(1, r + c);
        partial_sum_rows(enc, a, i, 1);
        code.encoders.push_back(std::move(enc));
    }
    for (std::size_t t = 0; t < r + c; ++t) {
        DecoderAssembler dec(net, net.terminal(t), 1, 1, field);
        dec.add_all(EdgeKind::HeadFeed, 1);
        dec.add_all(EdgeKind::Direct, 1);
        code.decoders.push_back(dec.take());
    }
    return code;
}

NetworkCode build_irregular_transpose_code(const IncidenceStructure& graph, const PrimeField& field) {
    if (!graph.is_graph()) throw std::invalid_argument("irregular-transpose code needs a graph");
    const std::vector<std::size_t> pts = graph_reduced_points(graph, field);
    if (pts.empty())
        throw ConstructionError("P' is empty over GF(" + std::to_string(field.p()) + "); the rate-1 code applies instead");
    const std::vector<std::size_t> edges = graph_reduced_blocks(graph, pts);

    const IntMatrix a = graph.matrix().transpose();  // rows = edges, columns = vertices
    const IntMatrix sub = a.select(edges, pts);
    const auto d = find_D(sub);
    if (!d) throw ConstructionError("the B' x P' submatrix admits no D with row sums |P'| and column sums |B'|");

    const SumNetwork net = sum_net_cons(a);
    const std::size_t r = a.rows(), c = a.cols(), m = edges.size(), n = m + pts.size();
    NetworkCode code;
    code.m = m;
    code.n = n;
    code.p = field.p();
    code.construction = "irregular-transpose";
    code.matrix = a;

    const auto layout = piece_layout(sub, *d);
    std::vector<std::map<std::size_t, std::size_t>> offset_of(r);  // bottleneck -> (vertex -> first symbol)
    std::vector<std::vector<Piece>> pieces_of(r);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        std::size_t offset = m;
        for (Piece piece : layout[k]) {
            piece.column = pts[piece.column];
            offset_of[edges[k]][piece.column] = offset;
            offset += piece.count;
            pieces_of[edges[k]].push_back(piece);
        }
    }
    for (std::size_t i = 0; i < r; ++i) {
        IntMatrix enc(n, m * (r + c));
        partial_sum_rows(enc, a, i, m);
        for (const Piece& piece : pieces_of[i])
            for (std::size_t q = 0; q < piece.count; ++q)
                enc(offset_of[i][piece.column] + q, message_col(r + piece.column, m, piece.start + q)) = 1;
        code.encoders.push_back(std::move(enc));
    }

    const auto deg = graph.point_degrees();
    for (std::size_t t = 0; t < r + c; ++t) {
        DecoderAssembler dec(net, net.terminal(t), m, n, field);
        dec.add_all(EdgeKind::HeadFeed, m);
        dec.add_all(EdgeKind::Direct, m);
        if (t >= r) {
            const std::size_t v = t - r;
            const std::int64_t minus_excess = field.neg(static_cast<std::int64_t>(deg[v]) - 1);
            if (minus_excess != 0)
                for (std::size_t i = 0; i < r; ++i)
                    for (const Piece& piece : pieces_of[i]) {
                        if (piece.column != v) continue;
                        for (std::size_t q = 0; q < piece.count; ++q)
                            dec.add(net.head(i), offset_of[i][v] + q, piece.start + q, minus_excess);
                    }
        }
        code.decoders.push_back(dec.take());
    }
    return code;
}

NetworkCode alpha_lift(const NetworkCode& code, std::size_t alpha) {
    if (alpha == 0) throw std::invalid_argument("alpha must be at least 1");
    if (code.alpha != 1) throw std::invalid_argument("alpha_lift expects a code for the unit-capacity network");
    if (alpha == 1) return code;
    const std::size_t m = code.m, n = code.n, sources = code.r() + code.c();
    NetworkCode out = code;
    out.m = alpha * m;
    out.alpha = alpha;
    out.construction = code.construction + "+lift";
    for (std::size_t i = 0; i < code.encoders.size(); ++i) {
        const IntMatrix& enc = code.encoders[i];
        IntMatrix lifted(alpha * n, alpha * m * sources);
        for (std::size_t k = 0; k < alpha; ++k)
            for (std::size_t row = 0; row < n; ++row)
                for (std::size_t s = 0; s < sources; ++s)
                    for (std::size_t l = 0; l < m; ++l)
                        lifted(k * n + row, s * alpha * m + k * m + l) = enc(row, s * m + l);
        out.encoders[i] = std::move(lifted);
    }
    for (std::size_t t = 0; t < code.decoders.size(); ++t) {
        const Decoder& dec = code.decoders[t];
        IntMatrix lifted(alpha * m, alpha * n * dec.inputs.size());
        for (std::size_t k = 0; k < alpha; ++k)
            for (std::size_t row = 0; row < m; ++row)
                for (std::size_t in = 0; in < dec.inputs.size(); ++in)
                    for (std::size_t b = 0; b < n; ++b)
                        lifted(k * m + row, in * alpha * n + k * n + b) = dec.matrix(row, in * n + b);
        out.decoders[t].matrix = std::move(lifted);
    }
    return out;
}

NetworkCode build_best_code(const IncidenceStructure& structure, NetworkKind kind, const PrimeField& field) {
    const IntMatrix a = network_matrix(structure, kind);
    if (kind == NetworkKind::Transpose && structure.is_graph()) {
        if (graph_reduced_points(structure, field).empty()) return build_rate1_code(a, field);
        return build_irregular_transpose_code(structure, field);
    }
    const DiagResult diag = diag_residue(a, field);
    if (!diag.is_diagonal)
        throw ConstructionError("A^T A - (A^T A)_# is not diagonal mod " +
                                std::to_string(field.p()));
    if (diag.all_zero()) return build_rate1_code(a, field);
    if (!diag.all_nonzero())
        throw ConstructionError("some but not all mu_j vanish mod " + std::to_string(field.p()));
    return build_normal_code(a, field);
}

}  // namespace sumnet
