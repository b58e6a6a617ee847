#ifndef KVV_RATIONAL_HPP
#define KVV_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "kvv/error.hpp"

namespace kvv {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction over arbitrary-precision integers.
///
/// Always held in lowest terms with a positive denominator (cpp_rational
/// normalises on every operation). Text form is "n" for integers and "n/d"
/// otherwise; from_string accepts both.
class Rational {
public:
    using Impl = boost::multiprecision::cpp_rational;

    Rational() = default;
    Rational(std::int64_t n) : v_(n) {} // NOLINT: implicit by design of a scalar
    Rational(const BigInt& n) : v_(n) {} // NOLINT
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::domain_error("zero denominator");
        v_ = Impl(num, den);
    }

    static Rational from_string(std::string_view text) {
        auto bad = [&] { return std::invalid_argument("not a rational: '" + std::string(text) + "'"); };
        auto parse_int = [&](std::string_view s) {
            std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
            if (i == s.size()) throw bad();
            for (std::size_t j = i; j < s.size(); ++j)
                if (s[j] < '0' || s[j] > '9') throw bad();
            if (s[0] == '+') s.remove_prefix(1);
            return BigInt(std::string(s));
        };
        const auto slash = text.find('/');
        if (slash == std::string_view::npos) return Rational(parse_int(text));
        const BigInt den = parse_int(text.substr(slash + 1));
        if (den <= 0) throw bad();
        return Rational(parse_int(text.substr(0, slash)), den);
    }

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_integer() const { return denominator() == 1; }
    bool is_zero() const { return v_ == 0; }
    int sign() const { return v_.sign(); }

    /// Greatest integer not exceeding the value.
    Rational floor() const {
        const BigInt n = numerator();
        const BigInt d = denominator();
        BigInt q = n / d; // truncates toward zero
        if (n < 0 && q * d != n) q -= 1;
        return Rational(q);
    }

    /// Fractional part, always in [0, 1).
    Rational frac() const { return *this - floor(); }

    std::string to_string() const {
        const BigInt d = denominator();
        if (d == 1) return numerator().str();
        return numerator().str() + "/" + d.str();
    }

    Rational operator-() const { return Rational(Impl(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero");
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
        if (a.v_ > b.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    explicit Rational(Impl v) : v_(std::move(v)) {}
    Impl v_;
};

} // namespace kvv

#endif // KVV_RATIONAL_HPP
