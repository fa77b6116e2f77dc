#include "svrisk/rational.hpp"

#include <ostream>
#include <sstream>

namespace svrisk {

Rational Rational::parse(std::string_view text) {
    auto parse_int = [](std::string_view s) -> detail::BigInt {
        if (s.empty()) throw std::invalid_argument("Rational::parse: empty integer part");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument("Rational::parse: sign without digits");
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9')
                throw std::invalid_argument("Rational::parse: invalid digit in '" + std::string(s) + "'");
        return detail::BigInt(std::string(s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return from_parts(parse_int(text), 1);
    detail::BigInt num = parse_int(text.substr(0, slash));
    detail::BigInt den = parse_int(text.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("Rational::parse: denominator must be positive");
    return from_parts(std::move(num), std::move(den));
}

std::string Rational::str() const {
    std::ostringstream os;
    os << v_;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

std::string ExtReal::str() const {
    if (is_neg_inf()) return "-inf";
    if (is_pos_inf()) return "inf";
    return value_.str();
}

}  // namespace svrisk
