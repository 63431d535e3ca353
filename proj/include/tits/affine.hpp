#pragma once

#include "tits/linalg.hpp"
#include "tits/rootsys.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tits {

// shift + step * Z
struct ValueSet {
    Q step, shift;
    bool contains(const Q& k) const;
    Q min_positive() const;
    std::string to_string() const;
};

struct AffineRoot {
    Root gradient;
    Q offset;
    Q eval(const QVec& x) const { return dot(gradient, x) + offset; }
    bool operator==(const AffineRoot& o) const { return gradient == o.gradient && offset == o.offset; }
    std::string to_string() const;
};

// x -> translation + finite_part * x on V (epsilon coordinates)
struct IwahoriWeylElement {
    QVec translation;
    QMat finite_part;

    static IwahoriWeylElement identity(std::size_t d);
    static IwahoriWeylElement pure_translation(const QVec& l);
    QVec apply(const QVec& x) const;
    QVec apply_linear(const QVec& x) const { return mat_vec(finite_part, x); }
    IwahoriWeylElement operator*(const IwahoriWeylElement& o) const;
    IwahoriWeylElement inverse() const;
    // image of the affine function f under f -> f o this^{-1}
    AffineRoot act(const AffineRoot& f) const;
    bool is_identity() const;
    bool operator==(const IwahoriWeylElement& o) const {
        return translation == o.translation && finite_part == o.finite_part;
    }
    bool operator<(const IwahoriWeylElement& o) const {
        if (translation != o.translation) return translation < o.translation;
        return finite_part < o.finite_part;
    }
};

std::pair<QVec, QMat> decompose(const IwahoriWeylElement& w);
IwahoriWeylElement recompose(const QVec& lambda, const QMat& w0);

IwahoriWeylElement affine_reflection(const AffineRoot& a);

constexpr int kCoxeterInfinity = 0;
using CoxeterMatrix = std::vector<std::vector<int>>;
std::string coxeter_entry_string(int m);

using Word = std::vector<int>;

struct AffineRootDatum {
    RootSystem finite_system;
    std::map<Root, ValueSet> value_sets;  // every root, including divisible ones
    std::vector<AffineRoot> simple_affine;  // index 0 is the affine root, 1..r the finite simple roots
    std::vector<int> simple_finite;         // indices into simple_affine
    std::string echelonnage_label;
    QMat complement;  // rows z with z . x = 0 cutting V out of the epsilon space
    std::vector<Root> directions;  // positive non-divisible roots

    std::size_t dim() const { return finite_system.dim(); }
    std::size_t size() const { return simple_affine.size(); }
    const ValueSet& gamma_prime(const Root& b) const;
    // offsets of affine hyperplanes with gradient direction rho (rho non-divisible)
    bool is_affine_hyperplane(const Root& rho, const Q& k) const;
    QVec alcove_barycenter() const;
    std::vector<QVec> alcove_vertices() const;
    IwahoriWeylElement reflection(int i) const;
    IwahoriWeylElement word_element(const Word& w) const;

    int length(const IwahoriWeylElement& w) const;
    bool in_affine_weyl_group(const IwahoriWeylElement& w) const;
    std::vector<int> right_descents(const IwahoriWeylElement& w) const;
    std::vector<int> left_descents(const IwahoriWeylElement& w) const;

private:
    mutable std::optional<QVec> barycenter_;
    mutable std::vector<IwahoriWeylElement> reflections_;
};

AffineRootDatum build_affine_datum(const RootSystem& phi, const std::function<ValueSet(const Root&)>& gamma_prime,
                                   const std::string& label);
// Gamma' = Z for every root.
AffineRootDatum split_affine_datum(RootType type, int rank, const std::string& label);

CoxeterMatrix coxeter_matrix(const AffineRootDatum& datum);
std::optional<CoxeterMatrix> standard_coxeter_matrix(const std::string& label, int rank);

class ReducedWordEnumerator {
public:
    ReducedWordEnumerator(const AffineRootDatum& d, const IwahoriWeylElement& w);
    std::optional<Word> next();

private:
    struct Frame {
        IwahoriWeylElement w;
        std::vector<int> descents;
        std::size_t pos;
    };
    const AffineRootDatum* d_;
    std::vector<Frame> stack_;
    Word suffix_;  // generators removed so far, innermost last
    bool done_ = false;
    bool identity_pending_ = false;
};

struct ReducedExpressions {
    int length;
    Word word;
    ReducedWordEnumerator all;
};
ReducedExpressions reduced_expressions(const IwahoriWeylElement& w, const AffineRootDatum& d);

struct BallEntry {
    IwahoriWeylElement w;
    int length;
    int parent;  // index of w * s^{-1}, -1 for identity
    int gen;
};
// Elements of length <= radius, breadth-first from the identity by right multiplication.
std::vector<BallEntry> cayley_ball(const AffineRootDatum& d, const std::vector<IwahoriWeylElement>& gens, int radius);

using SigmaAction = std::vector<int>;  // permutation of simple_affine indices

struct SigmaOrbit {
    std::vector<int> members;
    bool finite;
};
std::vector<SigmaOrbit> sigma_orbits(const AffineRootDatum& d, const SigmaAction& sigma);

struct LusztigEntry {
    std::vector<int> orbit;
    Word longest_word;
    IwahoriWeylElement element;
    bool involution;
    bool sigma_invariant;
};
std::vector<LusztigEntry> lusztig_bijection(const AffineRootDatum& d, const SigmaAction& sigma);

// Permutation of the simple affine roots induced by an affine map preserving the alcove.
std::optional<SigmaAction> induced_permutation(const AffineRootDatum& d, const IwahoriWeylElement& g);

}  // namespace tits
