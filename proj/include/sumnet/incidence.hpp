#pragma once

// Incidence structures: a point set {0..v-1} and a list of blocks, kept in
// sync with the v x b (0,1) incidence matrix. Rows are points, columns are
// blocks, and the input order of both is preserved everywhere.

#include "sumnet/gf.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sumnet {

using Block = std::vector<std::size_t>;  // sorted, 0-based point indices

class IncidenceStructure {
 public:
    IncidenceStructure() = default;

    /// Blocks are sorted on entry. Rejects empty blocks, out-of-range points,
    /// repeated points inside a block and, unless allow_repeated_blocks, two
    /// equal blocks.
    static IncidenceStructure from_blocks(std::size_t num_points, std::vector<Block> blocks,
                                          bool allow_repeated_blocks = false);

    /// Reads blocks off the columns of a (0,1)-matrix.
    static IncidenceStructure from_matrix(const IntMatrix& a, bool allow_repeated_blocks = false);

    std::size_t num_points() const noexcept { return num_points_; }
    std::size_t num_blocks() const noexcept { return blocks_.size(); }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    const IntMatrix& matrix() const noexcept { return matrix_; }

    /// Number of blocks through each point.
    std::vector<std::size_t> point_degrees() const;

    /// True when every block has exactly two points.
    bool is_graph() const noexcept;

    /// Blocks sharing at least one point with block j, j itself included.
    std::vector<std::size_t> block_neighbourhood(std::size_t j) const;

    bool operator==(const IncidenceStructure& other) const {
        return num_points_ == other.num_points_ && blocks_ == other.blocks_;
    }

 private:
    std::size_t num_points_ = 0;
    std::vector<Block> blocks_;
    IntMatrix matrix_;
};

struct DesignParams {
    std::size_t t = 0;
    std::size_t v = 0;
    std::size_t k = 0;
    std::uint64_t lambda = 0;
    std::uint64_t rho = 0;
    std::vector<std::uint64_t> b;  // b[i] = blocks through any i-subset, i = 0..t

    std::uint64_t num_blocks() const { return b.at(0); }
    /// "t-(v,k,lambda)"
    std::string label() const;
    bool operator==(const DesignParams&) const = default;
};

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Vertices are 0-based. Rejects loops and duplicate edges.
IncidenceStructure from_graph(std::size_t num_vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

/// The Fano plane with points 1..7 and blocks A..G in the standard order
/// A={1,2,3}, B={3,4,5}, C={1,5,6}, D={1,4,7}, E={2,5,7}, F={3,6,7}, G={2,4,6}.
IncidenceStructure fano();

/// A 2-(v,3,1) design by the Bose (v = 3 mod 6) or Skolem (v = 1 mod 6)
/// construction.
IncidenceStructure steiner_triple(std::size_t v);

/// Returns the parameters when I is a t-design: equal block sizes and every
/// t-subset of points in the same positive number of blocks. The counts for
/// every i < t are checked as well, not inferred.
std::optional<DesignParams> validate_design(const IncidenceStructure& I, std::size_t t);

/// Largest t in [1, k-1] for which I is a t-design, if any.
std::optional<DesignParams> strongest_design(const IncidenceStructure& I);

/// Rows are the t-subsets of points in lexicographic order, t = k - 1; entry
/// (i,j) is 1 when the i-th subset lies inside block j. Requires I to be a
/// t-(v,t+1,lambda) design with lambda != 1.
IncidenceStructure higher_incidence(const IncidenceStructure& I);

/// Points and blocks swap roles. Distinct points may have the same block
/// set, so the result may carry repeated blocks; a point in no block makes
/// this throw.
IncidenceStructure transpose(const IncidenceStructure& I);

/// Stars with 6, 14 and 10 leaves centred at a, b, c, joined by a-b and b-c.
/// Vertex order: a, a's leaves, b, b's leaves, c, c's leaves. Edge order:
/// a's star, a-b, b's star, b-c, c's star.
IncidenceStructure star_composite();

struct StarCompositeCentres {
    static constexpr std::size_t a = 0;
    static constexpr std::size_t b = 7;
    static constexpr std::size_t c = 22;
};

/// Every k-subset of {0..v-1}, lexicographic.
IncidenceStructure complete_design(std::size_t v, std::size_t k);

IncidenceStructure complete_graph(std::size_t n);

/// Matrix format: "r c" then r lines of c characters over {0,1}.
IncidenceStructure read_matrix_text(std::istream& in);
/// Block-list format: "v b" then b lines of 1-based point indices.
IncidenceStructure read_block_list(std::istream& in);
/// Detects the format: a second line made only of 0/1 characters of the
/// announced width is a matrix.
IncidenceStructure read_structure_file(const std::string& path);

void write_matrix_text(std::ostream& out, const IncidenceStructure& I);

}  // namespace sumnet
