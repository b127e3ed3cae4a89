#pragma once

// Linear network codes for the sum-network of a matrix A.
//
// Messages are stacked as X = (X_p1, .., X_pr, X_B1, .., X_Bc), m symbols
// each. A code carries, per bottleneck, the global map from X to the
// alpha*n symbols on that edge, and per terminal a decoder over the
// concatenated symbols of its input edges (all of In(t), in edge order).
// Edges leaving a source carry that source's message: unit edge k of the
// alpha parallel edges holds X_s[k*m/alpha, (k+1)*m/alpha) in its first
// m/alpha components and zeros after.

#include "sumnet/bounds.hpp"
#include "sumnet/gf.hpp"
#include "sumnet/incidence.hpp"
#include "sumnet/netbuild.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumnet {

/// A construction's precondition failed; the message names the condition.
class ConstructionError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

struct Decoder {
    std::vector<std::size_t> inputs;  // edge ids
    IntMatrix matrix;                 // m x (alpha*n*inputs.size())
    bool operator==(const Decoder&) const = default;
};

struct NetworkCode {
    std::size_t m = 0;
    std::size_t n = 0;
    std::uint64_t p = 2;
    std::size_t alpha = 1;
    std::string construction;
    IntMatrix matrix;                   // the A the network is built from
    std::vector<IntMatrix> encoders;    // per bottleneck: (alpha*n) x (m*(r+c))
    std::vector<Decoder> decoders;      // per terminal, in terminal order

    std::size_t r() const noexcept { return matrix.rows(); }
    std::size_t c() const noexcept { return matrix.cols(); }
    std::size_t symbols_per_edge() const noexcept { return alpha * n; }
    Rational rate() const { return Rational(static_cast<long long>(m), static_cast<long long>(n)); }
    /// "m/n" without reduction, "1" when m = n.
    std::string rate_text() const { return m == n ? "1" : std::to_string(m) + "/" + std::to_string(n); }
    bool operator==(const NetworkCode&) const = default;
};

/// (alpha*n) x m map from a source message to what each of its out-edges carries.
IntMatrix source_payload(std::size_t m, std::size_t n, std::size_t alpha);

/// Empty when D is supported on A with every row summing to c and every
/// column to r; otherwise the first violated condition.
std::string validate_D(const IntMatrix& a, const IntMatrix& d);

/// Integral max-flow from a source through rows (capacity c), along the
/// ones of A, to columns and a sink (capacity r). D is read off the middle
/// arcs when the flow saturates at r*c.
std::optional<IntMatrix> find_D(const IntMatrix& a);

/// Checks the cut condition for every row set I and column set J (each
/// I, J with no one of A between them must have (r-|I|)c >= |J|r).
/// Refuses r + c > 24.
bool check_feasibility_bruteforce(const IntMatrix& a);

struct DiagResult {
    bool is_diagonal = false;
    std::vector<std::int64_t> mu;  // diagonal of A^T A - (A^T A)_# reduced mod p
    /// Pairs of distinct columns whose positive integer overlap vanishes mod p.
    std::vector<std::pair<std::size_t, std::size_t>> vanishing_overlaps;
    bool all_nonzero() const;
    bool all_zero() const;
};

DiagResult diag_residue(const IntMatrix& a, const PrimeField& field);

/// (r, r+c) code: the first r symbols of e_i carry X_pi plus the incident
/// block messages, the remaining c symbols carry pieces of block messages
/// laid out by D. Requires a diagonal residue with every mu_j nonzero
/// and a D.
NetworkCode build_normal_code(const IntMatrix& a, const PrimeField& field);
/// Same with a caller-supplied D, validated first.
NetworkCode build_normal_code(const IntMatrix& a, const PrimeField& field, const IntMatrix& d);

/// Scalar code e_i = X_pi + sum of incident block messages. Requires
/// A^T A = (A^T A)_# mod p.
NetworkCode build_rate1_code(const IntMatrix& a, const PrimeField& field);

/// Code of rate |B'|/(|B'|+|P'|) for the transpose network of a graph (rows
/// are edges, columns vertices). Bottlenecks of edges in B' also ferry
/// pieces of X_v for v in P'. Throws ConstructionError if P' is empty or the
/// B' x P' submatrix admits no D.
NetworkCode build_irregular_transpose_code(const IncidenceStructure& graph, const PrimeField& field);

/// alpha copies of the code side by side: rate (alpha*m)/n on the network
/// whose edges have multiplicity alpha. Copy k rides unit edge k.
NetworkCode alpha_lift(const NetworkCode& code, std::size_t alpha);

enum class NetworkKind { Normal, Transpose };
const char* to_string(NetworkKind kind);

/// Picks the construction that applies to the network of the structure:
/// graphs in transpose use the irregular-transpose code (or rate 1 when P'
/// is empty); everything else follows the residue matrix. Throws
/// ConstructionError naming the failed condition when nothing applies.
NetworkCode build_best_code(const IncidenceStructure& structure, NetworkKind kind, const PrimeField& field);

/// The matrix whose sum-network is meant by (structure, kind).
IntMatrix network_matrix(const IncidenceStructure& structure, NetworkKind kind);

/// Per-bottleneck layout of D: for bottleneck i, the pieces it carries as
/// (column j, first coordinate of X_Bj, count), in ascending j.
struct Piece {
    std::size_t column;
    std::size_t start;
    std::size_t count;
};
std::vector<std::vector<Piece>> piece_layout(const IntMatrix& a, const IntMatrix& d);

}  // namespace sumnet
