#pragma once

// Exact arithmetic for the capacity computations: prime fields GF(p) and
// dense integer matrices. Every matrix that enters a bound is a (0,1)-matrix
// or a small integer combination of one, so 64-bit entries are ample; the
// determinant is carried out in arbitrary precision.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace sumnet {

using BigInt = boost::multiprecision::cpp_int;

/// The prime field GF(p). Construction rejects non-primes and p >= 2^32, which
/// keeps every product of two residues inside 64 bits.
class PrimeField {
 public:
    explicit PrimeField(std::uint64_t p);

    /// Accepts a prime power q = p^k and returns GF(p). Every quantity this
    /// library computes depends on the field only through its characteristic.
    static PrimeField from_order(std::uint64_t q);

    std::uint64_t p() const noexcept { return p_; }

    std::int64_t reduce(std::int64_t x) const noexcept {
        const auto m = static_cast<std::int64_t>(p_);
        std::int64_t r = x % m;
        return r < 0 ? r + m : r;
    }
    std::int64_t add(std::int64_t a, std::int64_t b) const noexcept { return reduce(a + b); }
    std::int64_t sub(std::int64_t a, std::int64_t b) const noexcept { return reduce(a - b); }
    std::int64_t neg(std::int64_t a) const noexcept { return reduce(-a); }
    std::int64_t mul(std::int64_t a, std::int64_t b) const noexcept {
        return static_cast<std::int64_t>(static_cast<std::uint64_t>(reduce(a)) * static_cast<std::uint64_t>(reduce(b)) % p_);
    }
    /// Multiplicative inverse; throws std::domain_error on zero.
    std::int64_t inv(std::int64_t a) const;

    bool operator==(const PrimeField&) const = default;

 private:
    std::uint64_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0);
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<std::int64_t> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const std::int64_t> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    IntMatrix transpose() const;
    IntMatrix select_rows(std::span<const std::size_t> indices) const;
    IntMatrix select(std::span<const std::size_t> row_indices, std::span<const std::size_t> col_indices) const;

    /// True when every entry is 0 or 1.
    bool is_binary() const noexcept;
    bool is_zero() const noexcept;
    std::size_t count_nonzero() const noexcept;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
    bool operator==(const IntMatrix&) const = default;

 private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// [[top_left, top_right], [bottom_left, bottom_right]]; block shapes must agree.
IntMatrix block_matrix(const IntMatrix& top_left, const IntMatrix& top_right, const IntMatrix& bottom_left,
                       const IntMatrix& bottom_right);

/// Entries reduced into [0, p).
IntMatrix reduce_mod(const IntMatrix& m, const PrimeField& field);

/// Product over GF(p). Zero entries of the left factor are skipped, which is
/// what keeps code composition cheap on the sparse encoders in use here.
IntMatrix multiply_mod(const IntMatrix& a, const IntMatrix& b, const PrimeField& field);

/// Rank of m over GF(p) by Gaussian elimination with first-nonzero pivoting.
std::size_t rank_mod_p(const IntMatrix& m, const PrimeField& field);

/// Exact integer determinant (Bareiss fraction-free elimination).
/// Throws std::invalid_argument for non-square input.
BigInt det_exact(const IntMatrix& m);

}  // namespace sumnet
