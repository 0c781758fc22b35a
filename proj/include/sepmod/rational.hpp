// Exact rational arithmetic on 64-bit numerator/denominator.
//
// All order comparisons in the toolkit reduce to comparisons of these
// values, so everything here is exact: no floating point anywhere.
// Intermediate products are computed in 128 bits and checked back into
// 64-bit range; desk-scale inputs never get close to the limit.

#ifndef SEPMOD_RATIONAL_HPP
#define SEPMOD_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sepmod {

class RationalOverflow : public std::overflow_error {
public:
    RationalOverflow() : std::overflow_error("rational arithmetic overflow") {}
};

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 lhs = i128(a.num_) * b.den_;
        __int128 rhs = i128(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    // Largest integer <= value.
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    static Rational midpoint(const Rational& a, const Rational& b) {
        return (a + b) / Rational(2);
    }

    // "a/b" with the slash omitted for integers.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Parses "a" or "a/b"; throws std::invalid_argument on junk.
    static Rational parse(const std::string& text) {
        std::size_t slash = text.find('/');
        try {
            if (slash == std::string::npos) {
                std::size_t used = 0;
                std::int64_t n = std::stoll(text, &used);
                if (used != text.size()) throw std::invalid_argument("");
                return Rational(n);
            }
            std::size_t used_n = 0, used_d = 0;
            std::int64_t n = std::stoll(text.substr(0, slash), &used_n);
            std::int64_t d = std::stoll(text.substr(slash + 1), &used_d);
            if (used_n != slash || used_d != text.size() - slash - 1 || d <= 0)
                throw std::invalid_argument("");
            return Rational(n, d);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad rational literal: '" + text + "'");
        }
    }

    std::size_t hash() const {
        std::size_t h = std::hash<std::int64_t>()(num_);
        return h ^ (std::hash<std::int64_t>()(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }

private:
    static __int128 i128(std::int64_t v) { return static_cast<__int128>(v); }

    static Rational make(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) throw RationalOverflow();
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num_;
    std::int64_t den_;
};

} // namespace sepmod

#endif
