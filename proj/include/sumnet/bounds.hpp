#pragma once

// Upper bounds on the computation capacity of the sum-network built from A.
// All bounds are exact rationals. The rank and subset bounds take any
// (0,1)-matrix; the family bounds take the incidence structure the matrix
// came from and apply closed forms valid for that family.

#include "sumnet/gf.hpp"
#include "sumnet/incidence.hpp"

#include <boost/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumnet {

using Rational = boost::rational<long long>;

/// Lowest terms, "n/d", or just "n" for an integer.
std::string to_string(const Rational& q);

/// Thrown when exhaustive subset search would exceed the configured limit.
class ExactModeRefused : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

enum class BoundKind { Rank, Subset, Family };

enum class FamilyKind {
    GraphNormal,
    GraphTranspose,
    BibdNormal,
    BibdTranspose,
    TDesignTranspose,
    HigherNormal,
    HigherTranspose,
};

const char* to_string(FamilyKind kind);
std::optional<FamilyKind> parse_family_kind(const std::string& text);
/// True for the kinds whose network is built from the transposed matrix.
bool is_transpose_kind(FamilyKind kind);

struct BoundResult {
    BoundKind kind = BoundKind::Rank;
    Rational bound{1};
    std::uint64_t field_char = 0;

    std::size_t rank_t = 0;              // rank: rank(M_A) - r
    std::vector<std::size_t> subset;     // subset: S, 0-based rows
    std::vector<std::size_t> closure;    // subset: S'', 0-based columns
    std::size_t x_s = 0;                 // subset: rank of M_A restricted to S and S''
    bool exact = true;                   // subset: false when |S| was capped

    bool applicable = true;              // family: false when the divisibility condition fails
    std::vector<std::size_t> family_points;  // graph-transpose: P'
    std::vector<std::size_t> family_blocks;  // graph-transpose: B'
    std::string note;
};

/// Entry (i,j) is 1 iff the integer inner product of row i of n1 and
/// column j of n2 is positive.
IntMatrix sharp_product(const IntMatrix& n1, const IntMatrix& n2);

/// [[I_r, A], [A^T, (A^T A)_#]].
IntMatrix build_MA(const IntMatrix& a);

/// (A^T A)_# - A^T A over the integers. Column operations reduce M_A to
/// [[I_r, 0], [A^T, this]], which is what the subset bound evaluates.
IntMatrix sharp_residual(const IntMatrix& a);

/// r / rank_p(M_A).
BoundResult rank_bound(const IntMatrix& a, const PrimeField& field);

/// Columns of A whose support lies inside the row set S.
std::vector<std::size_t> closure_columns(const IntMatrix& a, const std::vector<std::size_t>& subset);

/// rank_p of M_A restricted to the rows S and r + S''.
std::size_t subset_rank(const IntMatrix& a, const PrimeField& field, const std::vector<std::size_t>& subset);

struct SubsetSearch {
    std::size_t exhaustive_limit = 20;
    /// 0 searches every nonempty S. Otherwise only |S| <= max_subset_size and
    /// S = [r] are tried and the result is marked inexact.
    std::size_t max_subset_size = 0;
};

/// min over nonempty S of |S| / x_S, ties to the smallest |S| and then the
/// lexicographically first S. Throws ExactModeRefused when a full search is
/// requested and r exceeds the limit.
BoundResult subset_bound(const IntMatrix& a, const PrimeField& field, SubsetSearch search = {});

/// Closed-form bound for a family. For the higher kinds, I is the underlying
/// t-(v,t+1,lambda) design, not its higher incidence structure. When the
/// divisibility condition fails the result is 1 with applicable = false.
/// Throws std::invalid_argument if I does not have the family's shape.
BoundResult family_bound(const IncidenceStructure& I, FamilyKind kind, const PrimeField& field);

/// P' = vertices v with p not dividing deg(v) - 1, in increasing order.
std::vector<std::size_t> graph_reduced_points(const IncidenceStructure& graph, const PrimeField& field);
/// B' = edges meeting P', in increasing order.
std::vector<std::size_t> graph_reduced_blocks(const IncidenceStructure& graph, const std::vector<std::size_t>& points);

/// The denominator 1 + t!^2 (t+1)!^(2t-1) of the capacity 1/(1 + t!^2 (t+1)!^(2t-1)).
BigInt large_design_denominator(unsigned t);

}  // namespace sumnet
