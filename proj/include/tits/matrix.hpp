#pragma once

#include "tits/quadext.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tits {

// Square matrix over a quadratic extension (or the base field via a split context).
class Matrix {
public:
    Matrix() = default;
    Matrix(const QuadExtCtx& c, std::size_t n);
    static Matrix identity(const QuadExtCtx& c, std::size_t n);
    static Matrix diagonal(const std::vector<QuadExtNumber>& d);

    const QuadExtCtx& ctx() const { return *ctx_; }
    std::size_t size() const { return n_; }
    QuadExtNumber& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const QuadExtNumber& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const QuadExtNumber& c) const;
    Matrix transpose() const;
    Matrix gamma0() const;
    Matrix frob(std::uint32_t times = 1) const;
    std::optional<Matrix> inverse() const;
    QuadExtNumber det() const;

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    bool is_identity() const;
    bool is_diagonal() const;
    // permutation pi with the single nonzero entry of column j in row pi[j]
    std::optional<std::vector<std::size_t>> monomial_permutation() const;
    std::int64_t min_prec() const;

    std::vector<std::vector<std::string>> dump() const;

private:
    const QuadExtCtx* ctx_ = nullptr;
    std::size_t n_ = 0;
    std::vector<QuadExtNumber> e_;
};

}  // namespace tits
