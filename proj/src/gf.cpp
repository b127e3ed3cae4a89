#include "sumnet/gf.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace sumnet {

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (std::uint64_t{1} << 32)) throw std::invalid_argument("field characteristic must be below 2^32");
    if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
}

PrimeField PrimeField::from_order(std::uint64_t q) {
    if (q < 2) throw std::invalid_argument("field order must be at least 2");
    std::uint64_t p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) p = q;
    std::uint64_t rest = q;
    while (rest % p == 0) rest /= p;
    if (rest != 1) throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
    return PrimeField(p);
}

std::int64_t PrimeField::inv(std::int64_t a) const {
    std::int64_t base = reduce(a);
    if (base == 0) throw std::domain_error("inverse of zero in GF(" + std::to_string(p_) + ")");
    // Fermat: a^(p-2).
    std::uint64_t e = p_ - 2;
    std::int64_t result = 1;
    while (e > 0) {
        if (e & 1u) result = mul(result, base);
        base = mul(base, base);
        e >>= 1u;
    }
    return result;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> indices) const {
    IntMatrix out(indices.size(), cols_);
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] >= rows_) throw std::out_of_range("row index out of range");
        std::copy_n(row(indices[k]).begin(), cols_, out.row(k).begin());
    }
    return out;
}

IntMatrix IntMatrix::select(std::span<const std::size_t> row_indices,
                            std::span<const std::size_t> col_indices) const {
    IntMatrix out(row_indices.size(), col_indices.size());
    for (std::size_t a = 0; a < row_indices.size(); ++a)
        for (std::size_t b = 0; b < col_indices.size(); ++b) {
            if (row_indices[a] >= rows_ || col_indices[b] >= cols_) throw std::out_of_range("index out of range");
            out(a, b) = (*this)(row_indices[a], col_indices[b]);
        }
    return out;
}

bool IntMatrix::is_binary() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](std::int64_t x) { return x == 0 || x == 1; });
}

bool IntMatrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](std::int64_t x) { return x == 0; });
}

std::size_t IntMatrix::count_nonzero() const noexcept {
    return static_cast<std::size_t>(std::count_if(data_.begin(), data_.end(), [](std::int64_t x) { return x != 0; }));
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: inner dimensions differ");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const std::int64_t x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
        }
    return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shapes differ");
    IntMatrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
    return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: shapes differ");
    IntMatrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
    return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
        os << '\n';
    }
    return os;
}

IntMatrix block_matrix(const IntMatrix& top_left, const IntMatrix& top_right, const IntMatrix& bottom_left,
                       const IntMatrix& bottom_right) {
    if (top_left.rows() != top_right.rows() || bottom_left.rows() != bottom_right.rows() ||
        top_left.cols() != bottom_left.cols() || top_right.cols() != bottom_right.cols())
        throw std::invalid_argument("block matrix: incompatible block shapes");
    const std::size_t r = top_left.rows(), c = top_left.cols();
    IntMatrix out(r + bottom_left.rows(), c + top_right.cols());
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) {
            if (i < r)
                out(i, j) = j < c ? top_left(i, j) : top_right(i, j - c);
            else
                out(i, j) = j < c ? bottom_left(i - r, j) : bottom_right(i - r, j - c);
        }
    return out;
}

IntMatrix reduce_mod(const IntMatrix& m, const PrimeField& field) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = field.reduce(m(i, j));
    return out;
}

IntMatrix multiply_mod(const IntMatrix& a, const IntMatrix& b, const PrimeField& field) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: inner dimensions differ");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto dst = out.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const std::int64_t x = field.reduce(a(i, k));
            if (x == 0) continue;
            auto src = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (src[j] != 0) dst[j] = field.add(dst[j], field.mul(x, src[j]));
        }
    }
    return out;
}

std::size_t rank_mod_p(const IntMatrix& m, const PrimeField& field) {
    IntMatrix w = reduce_mod(m, field);
    const std::size_t rows = w.rows(), cols = w.cols();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && w(pivot, col) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank)
            for (std::size_t j = col; j < cols; ++j) std::swap(w(pivot, j), w(rank, j));
        const std::int64_t scale = field.inv(w(rank, col));
        for (std::size_t j = col; j < cols; ++j) w(rank, j) = field.mul(w(rank, j), scale);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            const std::int64_t f = w(i, col);
            if (f == 0) continue;
            for (std::size_t j = col; j < cols; ++j) w(i, j) = field.sub(w(i, j), field.mul(f, w(rank, j)));
        }
        ++rank;
    }
    return rank;
}

BigInt det_exact(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    std::vector<BigInt> w(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w[i * n + j] = m(i, j);
    auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return w[i * n + j]; };

    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && at(swap_row, k) == 0) ++swap_row;
            if (swap_row == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

}  // namespace sumnet
