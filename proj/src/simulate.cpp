#include "sumnet/simulate.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sumnet {

const char* to_string(VerifyMode mode) {
    switch (mode) {
        case VerifyMode::ExactBasis: return "exact-basis";
        case VerifyMode::Randomized: return "randomized";
        case VerifyMode::Exhaustive: return "exhaustive";
    }
    return "?";
}

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::int64_t message_symbol(std::uint64_t seed, std::uint64_t trial, std::uint64_t coordinate, std::uint64_t dim,
                            std::uint64_t p) noexcept {
    const std::uint64_t counter = trial * dim + coordinate + 1;
    return static_cast<std::int64_t>(splitmix64_mix(seed + counter * 0x9E3779B97F4A7C15ULL) % p);
}

void check_dimensions(const SumNetwork& net, const NetworkCode& code) {
    auto fail = [](const std::string& what) { throw std::invalid_argument("code does not fit network: " + what); };
    if (!(code.matrix == net.matrix())) fail("built from a different matrix");
    if (code.alpha != net.alpha()) fail("alpha " + std::to_string(code.alpha) + " vs network " + std::to_string(net.alpha()));
    if (code.m == 0 || code.n == 0) fail("m and n must be positive");
    if (code.m % code.alpha != 0 || code.m / code.alpha > code.n) fail("message length does not fit on the edges");
    if (!is_prime(code.p)) fail("field characteristic is not prime");
    const std::size_t dim = code.m * net.num_sources(), width = code.symbols_per_edge();
    if (code.encoders.size() != net.r()) fail("one encoder per bottleneck expected");
    for (const IntMatrix& enc : code.encoders)
        if (enc.rows() != width || enc.cols() != dim) fail("encoder shape");
    if (code.decoders.size() != net.num_sources()) fail("one decoder per terminal expected");
    for (std::size_t t = 0; t < code.decoders.size(); ++t) {
        const Decoder& dec = code.decoders[t];
        for (std::size_t e : dec.inputs)
            if (e >= net.edges().size() || net.edges()[e].head != net.terminal(t))
                fail("decoder " + std::to_string(t + 1) + " reads an edge that does not enter its terminal");
        if (std::set<std::size_t>(dec.inputs.begin(), dec.inputs.end()).size() != dec.inputs.size())
            fail("decoder " + std::to_string(t + 1) + " lists an input twice");
        if (dec.matrix.rows() != code.m || dec.matrix.cols() != width * dec.inputs.size())
            fail("decoder " + std::to_string(t + 1) + " shape");
    }
}

std::vector<IntMatrix> edge_global_maps(const SumNetwork& net, const NetworkCode& code) {
    check_dimensions(net, code);
    const PrimeField field(code.p);
    const std::size_t m = code.m, dim = m * net.num_sources(), width = code.symbols_per_edge();
    const IntMatrix payload = source_payload(m, code.n, code.alpha);
    std::vector<IntMatrix> maps;
    maps.reserve(net.edges().size());
    for (const Edge& e : net.edges()) {
        const std::size_t tail = e.tail;
        if (tail < net.num_sources()) {
            IntMatrix map(width, dim);
            for (std::size_t row = 0; row < width; ++row)
                for (std::size_t l = 0; l < m; ++l) map(row, tail * m + l) = payload(row, l);
            maps.push_back(std::move(map));
        } else {
            // Bottlenecks and head feeds both carry the bottleneck's symbols.
            const std::size_t i = e.kind == EdgeKind::Bottleneck ? tail - net.tail(0) : tail - net.head(0);
            maps.push_back(reduce_mod(code.encoders.at(i), field));
        }
    }
    return maps;
}

namespace {

IntMatrix stacked_inputs(const std::vector<IntMatrix>& maps, const Decoder& dec, std::size_t width, std::size_t dim) {
    IntMatrix out(width * dec.inputs.size(), dim);
    for (std::size_t k = 0; k < dec.inputs.size(); ++k) {
        const IntMatrix& map = maps[dec.inputs[k]];
        for (std::size_t row = 0; row < width; ++row)
            std::copy(map.row(row).begin(), map.row(row).end(), out.row(k * width + row).begin());
    }
    return out;
}

// Fails if any encoder of bottleneck i reads a message its tail never sees.
void check_locality(const SumNetwork& net, const NetworkCode& code) {
    for (std::size_t i = 0; i < net.r(); ++i) {
        std::vector<char> seen(net.num_sources(), 0);
        for (std::size_t e : net.in_edges(net.tail(i))) seen[net.edges()[e].tail] = 1;
        const IntMatrix& enc = code.encoders[i];
        for (std::size_t row = 0; row < enc.rows(); ++row)
            for (std::size_t col = 0; col < enc.cols(); ++col)
                if (enc(row, col) % static_cast<std::int64_t>(code.p) != 0 && !seen[col / code.m])
                    throw std::logic_error("encoder of e_" + std::to_string(i + 1) + " reads " +
                                           net.node_label(col / code.m) + ", which does not feed its tail");
    }
}

// Runs one message tuple through the network; returns the terminals that decode wrongly.
class Propagator {
 public:
    Propagator(const SumNetwork& net, const NetworkCode& code)
        : net_(net), code_(code), field_(code.p), order_(net.topological_order()),
          payload_(source_payload(code.m, code.n, code.alpha)) {
        check_locality(net, code);
    }

    std::vector<std::size_t> run(const std::vector<std::int64_t>& x) {
        const std::size_t m = code_.m, width = code_.symbols_per_edge();
        values_.assign(net_.edges().size(), std::vector<std::int64_t>(width, 0));
        for (std::size_t v : order_) {
            const Node& node = net_.nodes()[v];
            if (node.role == NodeRole::Source) {
                std::vector<std::int64_t> carried(width, 0);
                for (std::size_t row = 0; row < width; ++row)
                    for (std::size_t l = 0; l < m; ++l)
                        if (payload_(row, l)) carried[row] = field_.add(carried[row], x[v * m + l]);
                for (std::size_t e : net_.out_edges(v)) values_[e] = carried;
            } else if (node.side == NodeSide::Tail) {
                // Recover each feeding source's message from what its edge carried.
                std::vector<std::int64_t> local(m * net_.num_sources(), 0);
                for (std::size_t e : net_.in_edges(v)) {
                    const std::size_t s = net_.edges()[e].tail;
                    for (std::size_t row = 0; row < width; ++row)
                        for (std::size_t l = 0; l < m; ++l)
                            if (payload_(row, l)) local[s * m + l] = values_[e][row];
                }
                const IntMatrix& enc = code_.encoders[node.index];
                std::vector<std::int64_t> out(width, 0);
                for (std::size_t row = 0; row < width; ++row)
                    for (std::size_t col = 0; col < enc.cols(); ++col)
                        if (enc(row, col) != 0) out[row] = field_.add(out[row], field_.mul(enc(row, col), local[col]));
                for (std::size_t e : net_.out_edges(v)) values_[e] = out;
            } else if (node.side == NodeSide::Head) {
                const std::vector<std::int64_t> incoming = values_[net_.in_edges(v).front()];
                for (std::size_t e : net_.out_edges(v)) values_[e] = incoming;
            }
        }

        std::vector<std::int64_t> target(m, 0);
        for (std::size_t s = 0; s < net_.num_sources(); ++s)
            for (std::size_t l = 0; l < m; ++l) target[l] = field_.add(target[l], x[s * m + l]);

        std::vector<std::size_t> wrong;
        for (std::size_t t = 0; t < code_.decoders.size(); ++t) {
            const Decoder& dec = code_.decoders[t];
            bool good = true;
            for (std::size_t row = 0; row < m && good; ++row) {
                std::int64_t acc = 0;
                for (std::size_t k = 0; k < dec.inputs.size(); ++k) {
                    const auto& val = values_[dec.inputs[k]];
                    for (std::size_t b = 0; b < width; ++b) {
                        const std::int64_t coef = dec.matrix(row, k * width + b);
                        if (coef != 0) acc = field_.add(acc, field_.mul(coef, val[b]));
                    }
                }
                good = acc == target[row];
            }
            if (!good) wrong.push_back(t);
        }
        return wrong;
    }

 private:
    const SumNetwork& net_;
    const NetworkCode& code_;
    PrimeField field_;
    std::vector<std::size_t> order_;
    IntMatrix payload_;
    std::vector<std::vector<std::int64_t>> values_;
};

void record(VerifyReport& report, const std::vector<std::size_t>& wrong, const std::vector<std::int64_t>& x) {
    if (wrong.empty()) return;
    report.ok = false;
    ++report.failing_tuples;
    for (std::size_t t : wrong) {
        const bool known = std::any_of(report.failures.begin(), report.failures.end(),
                                       [t](const VerifyFailure& f) { return f.terminal == t; });
        if (!known) report.failures.push_back({t, x});
    }
}

}  // namespace

VerifyReport verify_exact(const SumNetwork& net, const NetworkCode& code) {
    const std::vector<IntMatrix> maps = edge_global_maps(net, code);
    const PrimeField field(code.p);
    const std::size_t m = code.m, dim = m * net.num_sources(), width = code.symbols_per_edge();
    VerifyReport report;
    report.mode = VerifyMode::ExactBasis;
    report.trials_or_dim = dim;
    for (std::size_t t = 0; t < code.decoders.size(); ++t) {
        const Decoder& dec = code.decoders[t];
        const IntMatrix composed = multiply_mod(reduce_mod(dec.matrix, field), stacked_inputs(maps, dec, width, dim), field);
        for (std::size_t col = 0; col < dim; ++col) {
            bool column_ok = true;
            for (std::size_t row = 0; row < m && column_ok; ++row)
                column_ok = composed(row, col) == (row == col % m ? 1 : 0);
            if (!column_ok) {
                std::vector<std::int64_t> witness(dim, 0);
                witness[col] = 1;
                report.ok = false;
                report.failures.push_back({t, std::move(witness)});
                break;
            }
        }
    }
    return report;
}

VerifyReport verify_random(const SumNetwork& net, const NetworkCode& code, std::size_t trials, std::uint64_t seed) {
    check_dimensions(net, code);
    const std::size_t dim = code.m * net.num_sources();
    VerifyReport report;
    report.mode = VerifyMode::Randomized;
    report.trials_or_dim = trials;
    report.seed = seed;
    Propagator propagate(net, code);
    std::vector<std::int64_t> x(dim);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        for (std::size_t j = 0; j < dim; ++j) x[j] = message_symbol(seed, trial, j, dim, code.p);
        record(report, propagate.run(x), x);
    }
    return report;
}

VerifyReport exhaustive_oracle(const SumNetwork& net, const NetworkCode& code, std::uint64_t limit) {
    check_dimensions(net, code);
    const std::size_t dim = code.m * net.num_sources();
    std::uint64_t tuples = 1;
    for (std::size_t j = 0; j < dim; ++j) {
        if (tuples > limit / code.p)
            throw std::length_error("exhaustive check refused: " + std::to_string(code.p) + "^" + std::to_string(dim) +
                                    " tuples exceed the limit " + std::to_string(limit));
        tuples *= code.p;
    }
    VerifyReport report;
    report.mode = VerifyMode::Exhaustive;
    report.trials_or_dim = static_cast<std::size_t>(tuples);
    Propagator propagate(net, code);
    std::vector<std::int64_t> x(dim, 0);
    for (std::uint64_t k = 0; k < tuples; ++k) {
        record(report, propagate.run(x), x);
        for (std::size_t j = 0; j < dim; ++j) {
            if (++x[j] < static_cast<std::int64_t>(code.p)) break;
            x[j] = 0;
        }
    }
    return report;
}

std::string render_report(const VerifyReport& report) {
    std::ostringstream os;
    os << "mode=" << to_string(report.mode) << '\n';
    os << "ok=" << (report.ok ? "true" : "false") << '\n';
    os << (report.mode == VerifyMode::ExactBasis ? "dim=" : report.mode == VerifyMode::Randomized ? "trials=" : "tuples=")
       << report.trials_or_dim << '\n';
    if (report.seed) os << "seed=" << *report.seed << '\n';
    if (report.mode != VerifyMode::ExactBasis) os << "failing_tuples=" << report.failing_tuples << '\n';
    for (const VerifyFailure& f : report.failures) {
        os << "failure terminal=" << f.terminal + 1 << " messages=";
        for (std::size_t j = 0; j < f.messages.size(); ++j) os << (j ? "," : "") << f.messages[j];
        os << '\n';
    }
    return os.str();
}

}  // namespace sumnet
