#pragma once

#include "svrisk/rational.hpp"

#include <Eigen/Dense>

#include <initializer_list>

namespace Eigen {

template <>
struct NumTraits<svrisk::Rational> : GenericNumTraits<svrisk::Rational> {
    using Real = svrisk::Rational;
    using NonInteger = svrisk::Rational;
    using Nested = svrisk::Rational;
    using Literal = long;
    static inline svrisk::Rational epsilon() { return svrisk::Rational(0); }
    static inline svrisk::Rational dummy_precision() { return svrisk::Rational(0); }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 60,
        MulCost = 60
    };
};

}  // namespace Eigen

namespace svrisk {

using RVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Index = Eigen::Index;

inline RVec rvec(std::initializer_list<Rational> xs) {
    RVec v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (const auto& x : xs) v(i++) = x;
    return v;
}

inline bool is_zero(const RVec& v) {
    for (Index i = 0; i < v.size(); ++i)
        if (!v(i).is_zero()) return false;
    return true;
}

}  // namespace svrisk
