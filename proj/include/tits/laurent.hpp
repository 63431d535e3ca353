#pragma once

#include "tits/finite_field.hpp"
#include "tits/kernels.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace tits {

// Arithmetic context for F_{p^k}((t)) truncated to N known coefficients.
struct LaurentCtx {
    const FiniteField* field;
    std::uint32_t p, k, N;
    const CoeffKernels* kern;

    static const LaurentCtx& get(std::uint32_t p, std::uint32_t k, std::uint32_t N);
    std::string header() const;
};

// sum_{i>=val} c_i t^i known up to absolute precision `prec` (exclusive).
// Exact elements carry prec == kExact and every nonzero term in the window.
class LaurentNumber {
public:
    static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max() / 4;

    LaurentNumber() = default;
    static LaurentNumber zero(const LaurentCtx& c, std::int64_t prec = kExact);
    static LaurentNumber constant(const LaurentCtx& c, std::uint32_t code);
    static LaurentNumber from_int(const LaurentCtx& c, std::int64_t n);
    static LaurentNumber monomial(const LaurentCtx& c, std::uint32_t code, std::int64_t e);
    // coefficients low-first starting at exponent v
    static LaurentNumber from_coeffs(const LaurentCtx& c, std::int64_t v, const std::vector<std::uint32_t>& codes,
                                     std::int64_t prec = kExact);

    const LaurentCtx& ctx() const { return *ctx_; }
    bool is_zero() const { return d_.empty(); }
    bool exact() const { return prec_ == kExact; }
    std::int64_t prec() const { return prec_; }
    // Valuation; throws precision_exhausted for a zero at finite precision
    // and domain_error for exact zero.
    std::int64_t val() const;
    std::int64_t val_or(std::int64_t fallback) const { return is_zero() ? fallback : val_; }
    std::uint32_t coeff(std::int64_t e) const;  // field code of the t^e coefficient
    std::uint32_t lead() const { return coeff(val_); }
    std::uint32_t known() const;                // number of known coefficients from val
    bool is_one() const;

    LaurentNumber operator+(const LaurentNumber& o) const;
    LaurentNumber operator-(const LaurentNumber& o) const;
    LaurentNumber operator-() const;
    LaurentNumber operator*(const LaurentNumber& o) const;
    LaurentNumber inverse() const;
    LaurentNumber operator/(const LaurentNumber& o) const { return *this * o.inverse(); }
    LaurentNumber scale(std::uint32_t code) const;
    LaurentNumber shift(std::int64_t e) const;  // multiply by t^e
    LaurentNumber frob(std::uint32_t times) const;
    LaurentNumber truncate(std::int64_t prec) const;
    LaurentNumber pow(std::int64_t e) const;

    // Difference vanishes at the known precision.
    bool operator==(const LaurentNumber& o) const { return (*this - o).is_zero(); }
    bool operator!=(const LaurentNumber& o) const { return !(*this == o); }
    bool same_repr(const LaurentNumber& o) const;

    std::string to_string() const;
    static LaurentNumber parse(const LaurentCtx& c, const std::string& s);

private:
    const LaurentCtx* ctx_ = nullptr;
    std::int64_t val_ = 0;
    std::int64_t prec_ = kExact;
    std::vector<std::uint32_t> d_;  // k planes of N digits; empty means zero

    static LaurentNumber normalize(const LaurentCtx& c, std::vector<std::uint32_t>&& buf, std::int64_t v0,
                                   std::int64_t prec);
    std::int64_t rel_degree() const;  // index of last nonzero coefficient
};

// Residue-digit square root of a unit power series; odd characteristic.
LaurentNumber sqrt_unit_series(const LaurentNumber& w);

}  // namespace tits
