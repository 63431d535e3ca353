#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tits {

// F_{p^k} as F_p[y]/(m(y)) with m the lexicographically least primitive
// monic polynomial of degree k. An element is its code sum d_j p^j where d_j
// is the coefficient of y^j.
class FiniteField {
public:
    static const FiniteField& get(std::uint32_t p, std::uint32_t k);

    std::uint32_t p() const { return p_; }
    std::uint32_t degree() const { return k_; }
    std::uint32_t order() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return mod_; }  // low-first, monic omitted

    std::uint32_t digit(std::uint32_t a, std::uint32_t j) const { return digits_[a * k_ + j]; }
    std::uint32_t from_digits(const std::uint32_t* d) const;

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t frob(std::uint32_t a, std::uint32_t times = 1) const;
    std::uint32_t from_int(std::int64_t c) const;
    std::uint32_t generator() const { return exp_[1]; }
    std::uint32_t exp(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }
    std::uint32_t log(std::uint32_t a) const { return log_[a]; }
    bool is_square(std::uint32_t a) const;
    // Some square root; requires is_square(a).
    std::uint32_t sqrt(std::uint32_t a) const;

    std::string to_string(std::uint32_t a) const;
    std::uint32_t parse(const std::string& s) const;

private:
    FiniteField(std::uint32_t p, std::uint32_t k);
    std::uint32_t p_, k_, q_;
    std::vector<std::uint32_t> mod_;
    std::vector<std::uint32_t> digits_;
    std::vector<std::uint32_t> exp_, log_;
};

// Owning field element; thin wrapper over a code for property tests and
// callers that prefer value semantics.
struct FiniteFieldElem {
    const FiniteField* field = nullptr;
    std::uint32_t code = 0;

    FiniteFieldElem operator+(const FiniteFieldElem& o) const { return {field, field->add(code, o.code)}; }
    FiniteFieldElem operator-(const FiniteFieldElem& o) const { return {field, field->sub(code, o.code)}; }
    FiniteFieldElem operator*(const FiniteFieldElem& o) const { return {field, field->mul(code, o.code)}; }
    FiniteFieldElem inverse() const { return {field, field->inv(code)}; }
    bool operator==(const FiniteFieldElem& o) const { return code == o.code; }
};

}  // namespace tits
