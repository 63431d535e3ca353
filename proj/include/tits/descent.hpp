#pragma once

#include "tits/groups.hpp"
#include "tits/report.hpp"

namespace tits {

struct DescentConfig {
    std::string twist = "none";  // none | rotation (SL only: conjugation by the cyclic shift with t in the corner)
    int power = 1;               // rotation power
};

// sigma = Ad(twist) o coefficient Frobenius y -> y^(p^f)
class SigmaModel {
public:
    SigmaModel(const GroupModel& g, const DescentConfig& cfg);
    Matrix apply(const Matrix& x) const;
    Matrix apply_pow(const Matrix& x, int k) const;
    const SigmaAction& permutation() const { return perm_; }
    const Matrix& twist() const { return twist_; }

private:
    const GroupModel* g_;
    Matrix twist_, twist_inv_;
    SigmaAction perm_;
};

struct StableFamily {
    std::vector<Matrix> reps;  // indexed like the simple affine roots
    nlohmann::json certificate;
    bool certified = false;
};

StableFamily sigma_stable_representatives(const GroupModel& g, const SigmaModel& sigma);

// S2^sigma by enumeration of S2
std::vector<Matrix> sigma_fixed_s2(const GroupModel& g, const SigmaModel& sigma);

CheckRecord descend_and_verify(const GroupModel& g, const DescentConfig& cfg, int length_bound);

}  // namespace tits
