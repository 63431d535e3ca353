#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <vector>

// Under C++20 rewritten comparisons, boost's mixed rational/integer
// operators recurse forever; exact non-template overloads take precedence.
namespace boost {
#define TITS_Q_MIXED_CMP(T)                                                                                    \
    inline bool operator==(const rational<std::int64_t>& a, T b) { return a == rational<std::int64_t>(b); }  \
    inline bool operator==(T b, const rational<std::int64_t>& a) { return a == rational<std::int64_t>(b); }  \
    inline bool operator<(const rational<std::int64_t>& a, T b) { return a < rational<std::int64_t>(b); }    \
    inline bool operator<(T b, const rational<std::int64_t>& a) { return rational<std::int64_t>(b) < a; }    \
    inline bool operator>(const rational<std::int64_t>& a, T b) { return rational<std::int64_t>(b) < a; }    \
    inline bool operator>(T b, const rational<std::int64_t>& a) { return a < rational<std::int64_t>(b); }    \
    inline bool operator<=(const rational<std::int64_t>& a, T b) { return !(a > b); }                        \
    inline bool operator<=(T b, const rational<std::int64_t>& a) { return !(b > a); }                        \
    inline bool operator>=(const rational<std::int64_t>& a, T b) { return !(a < b); }                        \
    inline bool operator>=(T b, const rational<std::int64_t>& a) { return !(b < a); }
TITS_Q_MIXED_CMP(int)
TITS_Q_MIXED_CMP(long)
TITS_Q_MIXED_CMP(long long)
#undef TITS_Q_MIXED_CMP
}  // namespace boost

namespace tits {

using Q = boost::rational<std::int64_t>;
using QVec = std::vector<Q>;

inline std::string to_string(const Q& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline Q dot(const QVec& a, const QVec& b) {
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline QVec operator+(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline QVec operator-(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline QVec operator-(const QVec& a) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline QVec operator*(const Q& c, const QVec& a) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline bool is_zero(const QVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

std::int64_t floor_q(const Q& q);
std::int64_t ceil_q(const Q& q);
std::string vec_to_string(const QVec& v);

}  // namespace tits
