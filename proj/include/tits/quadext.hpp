#pragma once

#include "tits/laurent.hpp"
#include "tits/rational.hpp"

#include <optional>
#include <string>
#include <variant>

namespace tits {

enum class ExtKind { split, unramified, ramified };

// E = F[x]/(x^2 - alpha x + beta); `split` means E = F and c1 stays zero.
struct QuadExtCtx {
    const LaurentCtx* base;
    ExtKind kind;
    LaurentNumber alpha, beta;
    std::uint32_t f;  // Frobenius on coefficients is y -> y^(p^f)

    static const QuadExtCtx& get(const LaurentCtx& base, ExtKind kind, const LaurentNumber& alpha,
                                 const LaurentNumber& beta, std::uint32_t f);
    static const QuadExtCtx& split(const LaurentCtx& base, std::uint32_t f);
    bool wild() const { return kind == ExtKind::ramified && base->p == 2; }
    bool tame() const { return kind == ExtKind::ramified && base->p != 2; }
    std::string describe() const;
};

class QuadExtNumber {
public:
    QuadExtNumber() = default;
    QuadExtNumber(const QuadExtCtx& c, LaurentNumber a0, LaurentNumber a1);
    QuadExtNumber(const QuadExtCtx& c, LaurentNumber a0);
    static QuadExtNumber from_int(const QuadExtCtx& c, std::int64_t n);
    static QuadExtNumber zero(const QuadExtCtx& c);
    static QuadExtNumber gen(const QuadExtCtx& c);  // the adjoined root x
    static QuadExtNumber t(const QuadExtCtx& c);    // base uniformizer

    const QuadExtCtx& ctx() const { return *ctx_; }
    const LaurentNumber& c0() const { return c0_; }
    const LaurentNumber& c1() const { return c1_; }

    QuadExtNumber operator+(const QuadExtNumber& o) const;
    QuadExtNumber operator-(const QuadExtNumber& o) const;
    QuadExtNumber operator-() const;
    QuadExtNumber operator*(const QuadExtNumber& o) const;
    QuadExtNumber inverse() const;
    QuadExtNumber operator/(const QuadExtNumber& o) const { return *this * o.inverse(); }
    QuadExtNumber pow(std::int64_t e) const;
    QuadExtNumber gamma0() const;
    QuadExtNumber frob(std::uint32_t times = 1) const;  // coefficientwise, `times` applications of y -> y^(p^f)
    LaurentNumber norm() const;
    LaurentNumber trace() const;

    bool is_zero() const { return c0_.is_zero() && c1_.is_zero(); }
    bool in_base() const { return c1_.is_zero(); }
    // Valuation normalized so the base uniformizer has valuation 1.
    Q val() const;
    // Valuation of the extension, uniformizer of E has valuation 1.
    std::int64_t val_ext() const;
    bool is_unit() const { return !is_zero() && val() == 0; }
    // Residue class in the coefficient field (units only).
    std::uint32_t residue() const;
    std::int64_t min_prec() const { return std::min(c0_.prec(), c1_.prec()); }
    bool exact() const { return c0_.exact() && c1_.exact(); }

    bool operator==(const QuadExtNumber& o) const { return (*this - o).is_zero(); }
    bool operator!=(const QuadExtNumber& o) const { return !(*this == o); }
    bool same_repr(const QuadExtNumber& o) const { return c0_.same_repr(o.c0_) && c1_.same_repr(o.c1_); }

    std::string to_string() const;
    static QuadExtNumber parse(const QuadExtCtx& c, const std::string& s);

private:
    const QuadExtCtx* ctx_ = nullptr;
    LaurentNumber c0_, c1_;
};

// (u, v) in H0: u * gamma0(u) = v + gamma0(v).
bool trace_pair_test(const QuadExtNumber& u, const QuadExtNumber& v);
bool norm_one_test(const QuadExtNumber& u);

// c with c gamma0(c) = target, or nullopt when no norm exists at precision.
struct NormSolveFailure {
    std::string reason;
};
std::variant<QuadExtNumber, NormSolveFailure> solve_c_gamma_c(const QuadExtCtx& e, const LaurentNumber& target);

struct AbsenceCertificate {
    std::string statement;
    std::int64_t required_valuation;  // valuation a gamma0-fixed uniformizer would need
    bool fixed_field_admits;          // fixed_field_valuation_test(required_valuation)
};
std::variant<QuadExtNumber, AbsenceCertificate> pick_uniformizer(const QuadExtCtx& e, bool want_antisymmetric);

// Fixed elements of gamma0 form the base field, whose extension valuations are even.
bool fixed_field_valuation_test(std::int64_t target_valuation);

}  // namespace tits
