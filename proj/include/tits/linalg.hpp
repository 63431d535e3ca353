#pragma once

#include "tits/rational.hpp"

#include <optional>
#include <vector>

namespace tits {

using QMat = std::vector<QVec>;  // row-major

QMat identity_q(std::size_t n);
QMat mat_mul(const QMat& a, const QMat& b);
QVec mat_vec(const QMat& a, const QVec& v);
QMat transpose(const QMat& a);

// Unique solution of A x = b, or nullopt when singular or inconsistent.
std::optional<QVec> solve_unique(const QMat& a, const QVec& b);
// Basis of {x : A x = 0}.
QMat null_space(const QMat& a, std::size_t ncols);
std::size_t rank_q(QMat a);

// Integer lattices given by generating rows; reduced to Hermite normal form.
using IVec = std::vector<std::int64_t>;
using IMat = std::vector<IVec>;

IMat hermite_normal_form(IMat rows);
bool lattice_contains(const IMat& hnf, const IVec& v);
bool same_lattice(const IMat& a, const IMat& b);

}  // namespace tits
