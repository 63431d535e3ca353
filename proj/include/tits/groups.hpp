#pragma once

#include "tits/affine.hpp"
#include "tits/matrix.hpp"
#include "tits/quadext.hpp"
#include "tits/rootsys.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tits {

enum class Family { SL, Sp, SO_odd, SO_even, U };

std::string family_name(Family f);
Family parse_family(const std::string& s);

struct ExtensionSpec {
    ExtKind kind = ExtKind::split;
    // series text "v:c0,c1,..." with prime-field digits; empty selects the default Eisenstein data
    std::string alpha, beta;
};

struct GroupSpec {
    Family family = Family::SL;
    int n = 3;  // matrix size
    std::uint32_t p = 5, f = 1, N = 24, M = 6;
    ExtensionSpec ext;
    std::string uniformizer = "auto";  // auto | antisymmetric | generator
};

// Matrix model of one group: weights of the standard basis, form, pinning, representatives.
class GroupModel {
public:
    explicit GroupModel(const GroupSpec& spec);

    const GroupSpec& spec() const { return spec_; }
    const QuadExtCtx& field() const { return *field_; }
    const LaurentCtx& base() const { return *base_; }
    std::size_t size() const { return std::size_t(spec_.n); }
    const std::vector<Root>& weights() const { return weights_; }
    const RootSystem& roots() const { return datum_.finite_system; }
    const AffineRootDatum& datum() const { return datum_; }
    const Matrix& form() const { return form_; }
    bool unitary() const { return spec_.family == Family::U; }
    bool multipliable(const Root& b) const;
    bool divisible(const Root& b) const;
    std::size_t mirror(std::size_t i) const { return size() - 1 - i; }

    QuadExtNumber scalar(std::int64_t k) const { return QuadExtNumber::from_int(*field_, k); }
    const QuadExtNumber& uniformizer() const { return uniformizer_; }
    const QuadExtNumber& c_two() const { return c_two_; }  // c gamma0(c) = 2
    const QuadExtNumber& c_zero() const { return c_zero_; }  // c0 gamma0(c0) = Tr(uniformizer)
    std::string uniformizer_kind() const { return uniformizer_kind_; }

    // Unipotent root-group elements. The one-parameter form covers non-multipliable roots and,
    // for divisible roots, the trace-zero parameter v of x_{b/2}(0, v).
    Matrix root_subgroup(const Root& b, const QuadExtNumber& u) const;
    Matrix root_subgroup(const Root& b, const QuadExtNumber& u, const QuadExtNumber& v) const;

    // Relative coroot b^vee evaluated at x: diag(x^<wt_j, b^vee>).
    Matrix coroot_at(const Root& b, const QuadExtNumber& x) const;
    Matrix coroot_minus_one(const Root& b) const { return coroot_at(b, scalar(-1)); }
    // Nm of the absolute coroot chosen for b_* evaluated at w.
    Matrix norm_coroot(const Root& bstar, const QuadExtNumber& w) const;
    // uniformizer of the splitting field of the chosen absolute root of b_*
    QuadExtNumber root_uniformizer(const Root& bstar) const;

    Matrix weyl_rep(const Root& b) const;  // x_b(1) x_{-b}(1) x_b(1) or its multipliable analogue
    Matrix rep_finite_simple(int i) const;
    Matrix rep_affine_simple(int i) const;
    // Second construction route: the triple product in uniformizer parameters.
    Matrix rep_affine_triple(int i) const;
    // The literal parameter tuples of the multipliable triple product as usually displayed;
    // reported because they fail the H0 condition in this pinning.
    bool displayed_multipliable_tuples_in_h0() const;
    const Matrix& rep(int i) const;  // cached representative of s_i, i indexing the simple affine roots

    IwahoriWeylElement weyl_image(const Matrix& g) const;
    bool in_t1(const Matrix& g) const;
    bool is_member(const Matrix& g) const;
    Matrix theta(const Matrix& g) const;  // J^{-1} gamma0(g)^{-T} J

    // S2: generated by b^vee(-1) over all relative roots.
    const std::vector<std::uint32_t>& s2_basis() const { return s2_basis_; }
    std::vector<Matrix> s2_elements() const;
    bool in_s2(const Matrix& g) const;
    Matrix sign_matrix(std::uint32_t mask) const;

    std::string describe() const;

private:
    struct Position {
        std::size_t p, q;
    };
    Position position_of(const Root& b) const;  // GL-level root position carrying b
    Matrix exp_nilpotent(const std::vector<std::vector<std::int64_t>>& z, const QuadExtNumber& u) const;
    Matrix gl_unipotent(std::size_t p, std::size_t q, const QuadExtNumber& u) const;

    struct SplitRootData {
        std::vector<std::vector<std::int64_t>> x;  // integer root vector
        std::int64_t k;                             // Y = k x^T
    };
    const SplitRootData& split_data(const Root& positive) const;

    GroupSpec spec_;
    const LaurentCtx* base_;
    const QuadExtCtx* field_;
    std::vector<Root> weights_;
    AffineRootDatum datum_;
    Matrix form_, form_inv_;
    std::vector<std::vector<std::int64_t>> form_int_;
    QuadExtNumber uniformizer_, c_two_, c_zero_;
    std::string uniformizer_kind_;
    std::vector<std::uint32_t> s2_basis_;
    mutable std::map<Root, SplitRootData> split_cache_;
    mutable std::vector<std::optional<Matrix>> rep_cache_;
};

// Root system, value sets and label of a spec, without building the matrix model.
AffineRootDatum affine_datum_for(const GroupSpec& spec);

}  // namespace tits
