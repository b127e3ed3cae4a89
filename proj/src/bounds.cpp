#include "sumnet/bounds.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sumnet {

std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << q.numerator();
    if (q.denominator() != 1) os << '/' << q.denominator();
    return os.str();
}

const char* to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::GraphNormal: return "graph-normal";
        case FamilyKind::GraphTranspose: return "graph-transpose";
        case FamilyKind::BibdNormal: return "bibd-normal";
        case FamilyKind::BibdTranspose: return "bibd-transpose";
        case FamilyKind::TDesignTranspose: return "tdesign-transpose";
        case FamilyKind::HigherNormal: return "higher-normal";
        case FamilyKind::HigherTranspose: return "higher-transpose";
    }
    return "?";
}

std::optional<FamilyKind> parse_family_kind(const std::string& text) {
    for (FamilyKind k : {FamilyKind::GraphNormal, FamilyKind::GraphTranspose, FamilyKind::BibdNormal,
                         FamilyKind::BibdTranspose, FamilyKind::TDesignTranspose, FamilyKind::HigherNormal,
                         FamilyKind::HigherTranspose})
        if (text == to_string(k)) return k;
    return std::nullopt;
}

bool is_transpose_kind(FamilyKind kind) {
    return kind == FamilyKind::GraphTranspose || kind == FamilyKind::BibdTranspose ||
           kind == FamilyKind::TDesignTranspose || kind == FamilyKind::HigherTranspose;
}

IntMatrix sharp_product(const IntMatrix& n1, const IntMatrix& n2) {
    if (n1.cols() != n2.rows()) throw std::invalid_argument("sharp product: inner dimensions differ");
    IntMatrix out = n1 * n2;
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = out(i, j) > 0 ? 1 : 0;
    return out;
}

IntMatrix build_MA(const IntMatrix& a) {
    const IntMatrix at = a.transpose();
    return block_matrix(IntMatrix::identity(a.rows()), a, at, sharp_product(at, a));
}

IntMatrix sharp_residual(const IntMatrix& a) {
    const IntMatrix at = a.transpose();
    return sharp_product(at, a) - at * a;
}

BoundResult rank_bound(const IntMatrix& a, const PrimeField& field) {
    const std::size_t rank = rank_mod_p(build_MA(a), field);
    BoundResult out;
    out.kind = BoundKind::Rank;
    out.field_char = field.p();
    out.rank_t = rank - a.rows();
    out.bound = Rational(static_cast<long long>(a.rows()), static_cast<long long>(rank));
    return out;
}

std::vector<std::size_t> closure_columns(const IntMatrix& a, const std::vector<std::size_t>& subset) {
    std::vector<char> in_s(a.rows(), 0);
    for (std::size_t i : subset) in_s.at(i) = 1;
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        bool inside = true;
        for (std::size_t i = 0; i < a.rows() && inside; ++i) inside = a(i, j) == 0 || in_s[i];
        if (inside) out.push_back(j);
    }
    return out;
}

namespace {

std::size_t residual_rank(const IntMatrix& residual_mod, const PrimeField& field, const std::vector<std::size_t>& cols) {
    if (cols.empty()) return 0;
    return rank_mod_p(residual_mod.select_rows(cols), field);
}

// k / (k + extra) < best, compared without division.
bool less_than(std::size_t k, std::size_t x, const Rational& best) {
    return static_cast<long long>(k) * best.denominator() < best.numerator() * static_cast<long long>(x);
}

}  // namespace

std::size_t subset_rank(const IntMatrix& a, const PrimeField& field, const std::vector<std::size_t>& subset) {
    const IntMatrix residual = reduce_mod(sharp_residual(a), field);
    return subset.size() + residual_rank(residual, field, closure_columns(a, subset));
}

BoundResult subset_bound(const IntMatrix& a, const PrimeField& field, SubsetSearch search) {
    const std::size_t r = a.rows();
    if (r == 0) throw std::invalid_argument("subset bound of an empty matrix");
    const bool capped = search.max_subset_size != 0 && search.max_subset_size < r;
    if (!capped && r > search.exhaustive_limit)
        throw ExactModeRefused("exact subset search over 2^" + std::to_string(r) + " subsets refused (limit r <= " +
                               std::to_string(search.exhaustive_limit) + ")");

    const IntMatrix residual = reduce_mod(sharp_residual(a), field);
    BoundResult best;
    best.kind = BoundKind::Subset;
    best.field_char = field.p();
    best.exact = !capped;
    bool have = false;

    auto consider = [&](const std::vector<std::size_t>& s) {
        const std::vector<std::size_t> cols = closure_columns(a, s);
        // Rank of the residual rows is at most |S''|, so k/(k+|S''|) is a floor on the term.
        if (have && !less_than(s.size(), s.size() + cols.size(), best.bound)) return;
        const std::size_t x = s.size() + residual_rank(residual, field, cols);
        if (!have || less_than(s.size(), x, best.bound)) {
            have = true;
            best.bound = Rational(static_cast<long long>(s.size()), static_cast<long long>(x));
            best.subset = s;
            best.closure = cols;
            best.x_s = x;
        }
    };

    const std::size_t top = capped ? search.max_subset_size : r;
    std::vector<std::size_t> s;
    for (std::size_t k = 1; k <= top; ++k) {
        s.resize(k);
        std::iota(s.begin(), s.end(), 0);
        while (true) {
            consider(s);
            std::size_t i = k;
            while (i > 0 && s[i - 1] == r - k + i - 1) --i;
            if (i == 0) break;
            ++s[i - 1];
            for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
        }
    }
    if (capped) {
        s.resize(r);
        std::iota(s.begin(), s.end(), 0);
        consider(s);
        best.note = "search capped at |S| <= " + std::to_string(search.max_subset_size) + " plus S = [r]";
    }
    return best;
}

std::vector<std::size_t> graph_reduced_points(const IncidenceStructure& graph, const PrimeField& field) {
    std::vector<std::size_t> out;
    const auto deg = graph.point_degrees();
    for (std::size_t v = 0; v < deg.size(); ++v)
        if (field.reduce(static_cast<std::int64_t>(deg[v]) - 1) != 0) out.push_back(v);
    return out;
}

std::vector<std::size_t> graph_reduced_blocks(const IncidenceStructure& graph, const std::vector<std::size_t>& points) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < graph.num_blocks(); ++j) {
        const Block& b = graph.blocks()[j];
        if (std::any_of(b.begin(), b.end(),
                        [&](std::size_t p) { return std::binary_search(points.begin(), points.end(), p); }))
            out.push_back(j);
    }
    return out;
}

namespace {

Rational ratio(std::uint64_t num, std::uint64_t den) {
    return Rational(static_cast<long long>(num), static_cast<long long>(den));
}

DesignParams require_design(const IncidenceStructure& I, std::size_t t, FamilyKind kind) {
    const auto params = validate_design(I, t);
    if (!params)
        throw std::invalid_argument(std::string(to_string(kind)) + " needs a " + std::to_string(t) +
                                    "-design; the structure is not one");
    return *params;
}

void mark(BoundResult& out, bool holds, Rational value, const std::string& note) {
    out.applicable = holds;
    out.bound = holds ? value : Rational(1);
    out.note = note;
}

// Applicable exactly when p does not divide `what`.
void mark_divides(BoundResult& out, bool holds, Rational value, std::uint64_t p, const std::string& what) {
    const std::string ch = std::to_string(p);
    mark(out, holds, value, holds ? ch + " does not divide " + what : "inapplicable: " + ch + " divides " + what);
}

}  // namespace

BoundResult family_bound(const IncidenceStructure& I, FamilyKind kind, const PrimeField& field) {
    BoundResult out;
    out.kind = BoundKind::Family;
    out.field_char = field.p();
    const std::uint64_t p = field.p();

    switch (kind) {
        case FamilyKind::GraphNormal: {
            if (!I.is_graph()) throw std::invalid_argument("graph-normal needs a graph");
            mark(out, true, ratio(I.num_points(), I.num_points() + I.num_blocks()), "");
            break;
        }
        case FamilyKind::GraphTranspose: {
            if (!I.is_graph()) throw std::invalid_argument("graph-transpose needs a graph");
            out.family_points = graph_reduced_points(I, field);
            out.family_blocks = graph_reduced_blocks(I, out.family_points);
            if (out.family_points.empty()) {
                mark(out, false, Rational(1), "inapplicable: " + std::to_string(p) + " divides deg(v)-1 for every vertex");
            } else {
                mark(out, true, ratio(out.family_blocks.size(), out.family_blocks.size() + out.family_points.size()),
                     "");
            }
            break;
        }
        case FamilyKind::BibdNormal: {
            const DesignParams d = require_design(I, 2, kind);
            if (d.lambda != 1) throw std::invalid_argument("bibd-normal needs lambda = 1, got " + d.label());
            mark_divides(out, (d.k - 1) % p != 0, ratio(d.v, d.v + d.num_blocks()), p, "k-1");
            break;
        }
        case FamilyKind::BibdTranspose: {
            const DesignParams d = require_design(I, 2, kind);
            if (d.lambda != 1) throw std::invalid_argument("bibd-transpose needs lambda = 1, got " + d.label());
            const std::uint64_t q = (d.v - d.k) / (d.k - 1);
            mark_divides(out, q % p != 0, ratio(d.num_blocks(), d.v + d.num_blocks()), p, "(v-k)/(k-1)");
            break;
        }
        case FamilyKind::TDesignTranspose: {
            const DesignParams d = require_design(I, 2, kind);
            // det of (rho-b2) I + (b2-1) J is [rho - b2 + v(b2-1)] (rho-b2)^(v-1).
            const std::int64_t rho = static_cast<std::int64_t>(d.rho), b2 = static_cast<std::int64_t>(d.b[2]);
            const std::int64_t lead = field.reduce(rho - b2 + static_cast<std::int64_t>(d.v) * (b2 - 1));
            const std::int64_t base = field.reduce(rho - b2);
            const bool nonzero = lead != 0 && (d.v == 1 || base != 0);
            mark_divides(out, nonzero, ratio(d.num_blocks(), d.v + d.num_blocks()), p,
                         "[rho-b2+v(b2-1)](rho-b2)^(v-1)");
            break;
        }
        case FamilyKind::HigherNormal:
        case FamilyKind::HigherTranspose: {
            if (I.num_blocks() == 0) throw std::invalid_argument("higher families need a nonempty design");
            const std::size_t t = I.blocks().front().size() - 1;
            if (t == 0) throw std::invalid_argument("higher families need blocks of size at least 2");
            const DesignParams d = require_design(I, t, kind);
            if (d.lambda == 1) throw std::invalid_argument("higher families need lambda != 1, got " + d.label());
            if (kind == FamilyKind::HigherNormal)
                mark_divides(out, t % p != 0, ratio(t + 1, d.lambda + t + 1), p, "t");
            else
                mark_divides(out, (d.lambda - 1) % p != 0, ratio(d.lambda, d.lambda + t + 1), p, "lambda-1");
            break;
        }
    }
    return out;
}

BigInt large_design_denominator(unsigned t) {
    if (t == 0) throw std::invalid_argument("t must be positive");
    BigInt tf = 1;
    for (unsigned i = 2; i <= t; ++i) tf *= i;
    const BigInt t1f = tf * (t + 1);
    BigInt power = 1;
    for (unsigned i = 0; i + 1 < 2 * t; ++i) power *= t1f;
    return 1 + tf * tf * power;
}

}  // namespace sumnet
