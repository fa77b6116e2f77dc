#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace svrisk {

namespace detail {
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;
}  // namespace detail

/// Exact arbitrary-precision rational, the sole scalar type of the engine.
/// Stored in lowest terms with positive denominator; all arithmetic is exact.
class Rational {
public:
    Rational() = default;
    Rational(int v) : v_(v) {}                 // NOLINT: implicit by design
    Rational(long v) : v_(v) {}                // NOLINT
    Rational(long long v) : v_(v) {}           // NOLINT
    Rational(long long num, long long den) : v_(detail::BigRat(num) / detail::BigRat(den)) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    }

    static Rational from_parts(detail::BigInt num, detail::BigInt den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        Rational r;
        r.v_ = detail::BigRat(std::move(num)) / detail::BigRat(std::move(den));
        return r;
    }

    /// Parses "p", "-p", or "p/q" with arbitrary-precision integer parts.
    static Rational parse(std::string_view text);

    detail::BigInt num() const { return numerator(v_); }
    detail::BigInt den() const { return denominator(v_); }

    bool is_zero() const { return v_.is_zero(); }
    int sign() const { return v_.sign(); }
    Rational abs() const { return sign() < 0 ? -*this : *this; }

    std::string str() const;

    Rational operator-() const {
        Rational r;
        r.v_ = -v_;
        return r;
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (a.v_ < b.v_) return std::strong_ordering::less;
        if (a.v_ == b.v_) return std::strong_ordering::equal;
        return std::strong_ordering::greater;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    detail::BigRat v_;
};

/// Extended rational: a finite value or one of the two infinities.
/// Houses the values of support functions and scalarizations.
class ExtReal {
public:
    ExtReal() : kind_(Kind::Finite) {}
    ExtReal(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}  // NOLINT
    static ExtReal neg_inf() { return ExtReal(Kind::NegInf); }
    static ExtReal pos_inf() { return ExtReal(Kind::PosInf); }

    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }

    const Rational& value() const {
        if (!is_finite()) throw std::logic_error("ExtReal: value() on infinite");
        return value_;
    }

    ExtReal operator-() const {
        if (is_neg_inf()) return pos_inf();
        if (is_pos_inf()) return neg_inf();
        return ExtReal(-value_);
    }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        if (a.kind_ != b.kind_) return false;
        return a.kind_ != Kind::Finite || a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
        auto rank = [](Kind k) { return k == Kind::NegInf ? 0 : (k == Kind::Finite ? 1 : 2); };
        if (rank(a.kind_) != rank(b.kind_)) return rank(a.kind_) <=> rank(b.kind_);
        if (a.kind_ != Kind::Finite) return std::strong_ordering::equal;
        return a.value_ <=> b.value_;
    }

    std::string str() const;

private:
    enum class Kind { NegInf, Finite, PosInf };
    explicit ExtReal(Kind k) : kind_(k) {}
    Kind kind_;
    Rational value_;
};

}  // namespace svrisk

template <>
struct std::hash<svrisk::Rational> {
    std::size_t operator()(const svrisk::Rational& r) const noexcept {
        return std::hash<std::string>()(r.str());
    }
};
