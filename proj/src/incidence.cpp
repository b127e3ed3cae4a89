#include "sumnet/incidence.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sumnet {

namespace {

// Calls f on every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

template <class F>
void for_each_subset_of(const Block& items, std::size_t k, F&& f) {
    std::vector<std::size_t> picked(k);
    for_each_subset(items.size(), k, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i = 0; i < k; ++i) picked[i] = items[idx[i]];
        f(picked);
    });
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
    return result;
}

IncidenceStructure IncidenceStructure::from_blocks(std::size_t num_points, std::vector<Block> blocks,
                                                   bool allow_repeated_blocks) {
    IncidenceStructure s;
    s.num_points_ = num_points;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        Block& b = blocks[j];
        if (b.empty()) throw std::invalid_argument("block " + std::to_string(j + 1) + " is empty");
        std::sort(b.begin(), b.end());
        if (std::adjacent_find(b.begin(), b.end()) != b.end())
            throw std::invalid_argument("block " + std::to_string(j + 1) + " lists a point twice");
        if (b.back() >= num_points)
            throw std::invalid_argument("block " + std::to_string(j + 1) + " mentions a point outside 1.." +
                                        std::to_string(num_points));
    }
    if (!allow_repeated_blocks) {
        std::set<Block> seen;
        for (std::size_t j = 0; j < blocks.size(); ++j)
            if (!seen.insert(blocks[j]).second)
                throw std::invalid_argument("block " + std::to_string(j + 1) + " repeats an earlier block");
    }
    s.blocks_ = std::move(blocks);
    s.matrix_ = IntMatrix(num_points, s.blocks_.size());
    for (std::size_t j = 0; j < s.blocks_.size(); ++j)
        for (std::size_t p : s.blocks_[j]) s.matrix_(p, j) = 1;
    return s;
}

IncidenceStructure IncidenceStructure::from_matrix(const IntMatrix& a, bool allow_repeated_blocks) {
    if (!a.is_binary()) throw std::invalid_argument("incidence matrix must have entries in {0,1}");
    std::vector<Block> blocks(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (a(i, j) == 1) blocks[j].push_back(i);
    return from_blocks(a.rows(), std::move(blocks), allow_repeated_blocks);
}

std::vector<std::size_t> IncidenceStructure::point_degrees() const {
    std::vector<std::size_t> deg(num_points_, 0);
    for (const auto& b : blocks_)
        for (std::size_t p : b) ++deg[p];
    return deg;
}

bool IncidenceStructure::is_graph() const noexcept {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.size() == 2; });
}

std::vector<std::size_t> IncidenceStructure::block_neighbourhood(std::size_t j) const {
    std::vector<std::size_t> out;
    const Block& bj = blocks_.at(j);
    for (std::size_t l = 0; l < blocks_.size(); ++l) {
        const Block& bl = blocks_[l];
        std::vector<std::size_t> common;
        std::set_intersection(bj.begin(), bj.end(), bl.begin(), bl.end(), std::back_inserter(common));
        if (!common.empty()) out.push_back(l);
    }
    return out;
}

std::string DesignParams::label() const {
    std::ostringstream os;
    os << t << "-(" << v << "," << k << "," << lambda << ")";
    return os.str();
}

IncidenceStructure from_graph(std::size_t num_vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<Block> blocks;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& [u, w] : edges) {
        if (u == w) throw std::invalid_argument("graph has a loop at vertex " + std::to_string(u + 1));
        const auto key = std::minmax(u, w);
        if (!seen.insert(key).second)
            throw std::invalid_argument("graph repeats edge " + std::to_string(key.first + 1) + "-" +
                                        std::to_string(key.second + 1));
        blocks.push_back({u, w});
    }
    return IncidenceStructure::from_blocks(num_vertices, std::move(blocks));
}

IncidenceStructure fano() {
    return IncidenceStructure::from_blocks(
        7, {{0, 1, 2}, {2, 3, 4}, {0, 4, 5}, {0, 3, 6}, {1, 4, 6}, {2, 5, 6}, {1, 3, 5}});
}

IncidenceStructure steiner_triple(std::size_t v) {
    if (v < 7 || (v % 6 != 1 && v % 6 != 3))
        throw std::invalid_argument("a Steiner triple system on " + std::to_string(v) +
                                    " points needs v = 1 or 3 (mod 6) and v >= 7");
    std::vector<Block> blocks;
    if (v % 6 == 3) {
        // Bose: points (x,i), x in Z_{2n+1}, i in Z_3, id = x + (2n+1) i.
        const std::size_t n = (v - 3) / 6, q = 2 * n + 1;
        auto id = [q](std::size_t x, std::size_t i) { return x + q * (i % 3); };
        auto op = [n, q](std::size_t x, std::size_t y) { return ((x + y) * (n + 1)) % q; };
        for (std::size_t x = 0; x < q; ++x) blocks.push_back({id(x, 0), id(x, 1), id(x, 2)});
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t x = 0; x < q; ++x)
                for (std::size_t y = x + 1; y < q; ++y) blocks.push_back({id(x, i), id(y, i), id(op(x, y), i + 1)});
    } else {
        // Skolem: point 0 is the extra point, (x,i) in Z_{2n} x Z_3 is 1 + x + 2n i.
        const std::size_t n = (v - 1) / 6, q = 2 * n;
        auto id = [q](std::size_t x, std::size_t i) { return 1 + x + q * (i % 3); };
        auto op = [n, q](std::size_t x, std::size_t y) {
            const std::size_t s = (x + y) % q;
            return s % 2 == 0 ? s / 2 : n + (s - 1) / 2;
        };
        for (std::size_t x = 0; x < n; ++x) blocks.push_back({id(x, 0), id(x, 1), id(x, 2)});
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t x = 0; x < n; ++x) blocks.push_back({0, id(x + n, i), id(x, i + 1)});
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t x = 0; x < q; ++x)
                for (std::size_t y = x + 1; y < q; ++y) blocks.push_back({id(x, i), id(y, i), id(op(x, y), i + 1)});
    }
    return IncidenceStructure::from_blocks(v, std::move(blocks));
}

std::optional<DesignParams> validate_design(const IncidenceStructure& I, std::size_t t) {
    if (t == 0) throw std::invalid_argument("design strength t must be at least 1");
    const auto& blocks = I.blocks();
    if (blocks.empty()) return std::nullopt;
    const std::size_t k = blocks.front().size();
    if (std::any_of(blocks.begin(), blocks.end(), [k](const Block& b) { return b.size() != k; })) return std::nullopt;
    const std::size_t v = I.num_points();
    if (t > k || v < k) return std::nullopt;

    DesignParams params;
    params.t = t;
    params.v = v;
    params.k = k;
    params.b.assign(t + 1, 0);
    params.b[0] = blocks.size();
    // Count blocks through every i-subset for i = 1..t and require uniformity.
    for (std::size_t i = 1; i <= t; ++i) {
        std::map<Block, std::uint64_t> counts;
        for (const auto& b : blocks) for_each_subset_of(b, i, [&](const Block& s) { ++counts[s]; });
        if (counts.size() != binomial(v, i)) return std::nullopt;
        const std::uint64_t value = counts.begin()->second;
        for (const auto& [subset, n] : counts)
            if (n != value) return std::nullopt;
        params.b[i] = value;
    }
    params.lambda = params.b[t];
    params.rho = params.b[1];
    for (std::size_t i = 0; i <= t; ++i) {
        const std::uint64_t num = params.lambda * binomial(v - i, t - i);
        const std::uint64_t den = binomial(k - i, t - i);
        if (den == 0 || num % den != 0 || num / den != params.b[i])
            throw std::logic_error("block counts of a " + params.label() + " design contradict the counting identity");
    }
    if (params.b[0] * k != v * params.rho)
        throw std::logic_error("design " + params.label() + " violates b*k = v*rho");
    return params;
}

std::optional<DesignParams> strongest_design(const IncidenceStructure& I) {
    if (I.num_blocks() == 0) return std::nullopt;
    const std::size_t k = I.blocks().front().size();
    for (std::size_t t = k > 1 ? k - 1 : 1; t >= 1; --t)
        if (auto params = validate_design(I, t)) return params;
    return std::nullopt;
}

IncidenceStructure higher_incidence(const IncidenceStructure& I) {
    if (I.num_blocks() == 0) throw std::invalid_argument("higher incidence of an empty structure");
    const std::size_t k = I.blocks().front().size();
    if (k < 2) throw std::invalid_argument("higher incidence needs blocks of size at least 2");
    const std::size_t t = k - 1;
    const auto params = validate_design(I, t);
    if (!params)
        throw std::invalid_argument("higher incidence needs a t-(v,t+1,lambda) design; this is not a " +
                                    std::to_string(t) + "-design with block size " + std::to_string(k));
    if (params->lambda == 1) throw std::invalid_argument("higher incidence needs lambda != 1, got " + params->label());

    std::map<Block, std::size_t> row_of;
    std::size_t rows = 0;
    for_each_subset(I.num_points(), t, [&](const std::vector<std::size_t>& s) { row_of[s] = rows++; });
    std::vector<Block> columns;
    for (const auto& b : I.blocks()) {
        Block col;
        for_each_subset_of(b, t, [&](const Block& s) { col.push_back(row_of.at(s)); });
        columns.push_back(std::move(col));
    }
    return IncidenceStructure::from_blocks(rows, std::move(columns));
}

IncidenceStructure transpose(const IncidenceStructure& I) {
    std::vector<Block> blocks(I.num_points());
    for (std::size_t j = 0; j < I.num_blocks(); ++j)
        for (std::size_t p : I.blocks()[j]) blocks[p].push_back(j);
    for (std::size_t p = 0; p < blocks.size(); ++p)
        if (blocks[p].empty())
            throw std::invalid_argument("point " + std::to_string(p + 1) + " lies in no block; its transpose column would be empty");
    return IncidenceStructure::from_blocks(I.num_blocks(), std::move(blocks), true);
}

IncidenceStructure star_composite() {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    constexpr std::size_t a = StarCompositeCentres::a, b = StarCompositeCentres::b, c = StarCompositeCentres::c;
    for (std::size_t leaf = a + 1; leaf <= a + 6; ++leaf) edges.emplace_back(a, leaf);
    edges.emplace_back(a, b);
    for (std::size_t leaf = b + 1; leaf <= b + 14; ++leaf) edges.emplace_back(b, leaf);
    edges.emplace_back(b, c);
    for (std::size_t leaf = c + 1; leaf <= c + 10; ++leaf) edges.emplace_back(c, leaf);
    return from_graph(33, edges);
}

IncidenceStructure complete_design(std::size_t v, std::size_t k) {
    if (k == 0 || k > v) throw std::invalid_argument("complete design needs 1 <= k <= v");
    std::vector<Block> blocks;
    for_each_subset(v, k, [&](const std::vector<std::size_t>& s) { blocks.push_back(s); });
    return IncidenceStructure::from_blocks(v, std::move(blocks));
}

IncidenceStructure complete_graph(std::size_t n) {
    if (n < 2) throw std::invalid_argument("complete graph needs at least 2 vertices");
    return complete_design(n, 2);
}

namespace {

std::pair<std::size_t, std::size_t> read_header(std::istream& in, const char* what) {
    std::string line;
    while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
    }
    std::istringstream hs(line);
    long long a = -1, b = -1;
    if (!(hs >> a >> b) || a <= 0 || b <= 0)
        throw std::invalid_argument(std::string(what) + ": first line must hold two positive integers");
    return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
}

bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
}

}  // namespace

IncidenceStructure read_matrix_text(std::istream& in) {
    const auto [r, c] = read_header(in, "incidence matrix");
    IntMatrix a(r, c);
    std::string line;
    for (std::size_t i = 0; i < r; ++i) {
        if (!next_content_line(in, line))
            throw std::invalid_argument("incidence matrix: expected " + std::to_string(r) + " rows, got " +
                                        std::to_string(i));
        line.erase(std::remove_if(line.begin(), line.end(), [](char ch) { return ch == ' ' || ch == '\t'; }),
                   line.end());
        if (line.size() != c)
            throw std::invalid_argument("incidence matrix: row " + std::to_string(i + 1) + " has " +
                                        std::to_string(line.size()) + " entries, expected " + std::to_string(c));
        for (std::size_t j = 0; j < c; ++j) {
            if (line[j] != '0' && line[j] != '1')
                throw std::invalid_argument("incidence matrix: row " + std::to_string(i + 1) + " has a non-binary entry");
            a(i, j) = line[j] - '0';
        }
    }
    return IncidenceStructure::from_matrix(a);
}

IncidenceStructure read_block_list(std::istream& in) {
    const auto [v, b] = read_header(in, "block list");
    std::vector<Block> blocks;
    std::string line;
    for (std::size_t j = 0; j < b; ++j) {
        if (!next_content_line(in, line))
            throw std::invalid_argument("block list: expected " + std::to_string(b) + " blocks, got " +
                                        std::to_string(j));
        std::istringstream ls(line);
        Block block;
        long long p;
        while (ls >> p) {
            if (p < 1) throw std::invalid_argument("block list: point indices are 1-based");
            block.push_back(static_cast<std::size_t>(p - 1));
        }
        if (!ls.eof()) throw std::invalid_argument("block list: block " + std::to_string(j + 1) + " is not a list of integers");
        blocks.push_back(std::move(block));
    }
    return IncidenceStructure::from_blocks(v, std::move(blocks));
}

IncidenceStructure read_structure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    std::istringstream probe(text);
    const auto [rows, cols] = read_header(probe, path.c_str());
    std::string line;
    bool matrix_like = false;
    if (next_content_line(probe, line)) {
        const bool binary = line.find_first_not_of("01") == std::string::npos;
        matrix_like = binary && line.size() == cols && (cols > 1 || rows > 1);
        (void)rows;
    }
    std::istringstream body(text);
    return matrix_like ? read_matrix_text(body) : read_block_list(body);
}

void write_matrix_text(std::ostream& out, const IncidenceStructure& I) {
    const IntMatrix& a = I.matrix();
    out << a.rows() << ' ' << a.cols() << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out << a(i, j);
        out << '\n';
    }
}

}  // namespace sumnet
