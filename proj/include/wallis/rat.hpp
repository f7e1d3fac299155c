#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wallis/errors.hpp"

namespace wallis {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Exact rational. Always normalized: positive denominator, gcd(|num|,den)=1
// (cpp_rational maintains this), so equality is structural.
class Rat {
  public:
    Rat() = default;
    Rat(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
    explicit Rat(const BigInt& n) : v_(n) {}
    Rat(const BigInt& num, const BigInt& den) {
        if (den == 0) throw DomainError("rational with zero denominator");
        v_ = BigRational(num, den);
    }
    Rat(long num, long den) : Rat(BigInt(num), BigInt(den)) {}

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return den() == 1; }
    int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

    Rat operator-() const { return Rat(BigRational(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw DomainError("rational division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        if (a.v_ < b.v_) return std::strong_ordering::less;
        if (a.v_ > b.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Rat abs() const { return v_ < 0 ? -*this : *this; }

    // Integer power, negative exponents allowed for nonzero values.
    Rat pow(long e) const {
        if (e == 0) return Rat(1);
        if (is_zero()) {
            if (e < 0) throw DomainError("0 raised to a negative power");
            return Rat(0);
        }
        Rat base = e < 0 ? Rat(1) / *this : *this;
        unsigned long n = e < 0 ? -static_cast<unsigned long>(e) : e;
        Rat acc(1);
        while (n) {
            if (n & 1) acc *= base;
            base *= base;
            n >>= 1;
        }
        return acc;
    }

    // Largest integer <= value.
    BigInt floor() const {
        BigInt q = num() / den();
        if (v_ < 0 && q * den() != num()) --q;
        return q;
    }

    std::string str() const {
        if (is_integer()) return num().str();
        return num().str() + "/" + den().str();
    }

    // Accepts "p", "p/q", optional leading sign, no whitespace.
    static Rat parse(std::string_view s) {
        auto bad = [&]() -> ParseError {
            return ParseError("bad rational '" + std::string(s) + "'", 0, 0);
        };
        if (s.empty()) throw bad();
        size_t slash = s.find('/');
        try {
            if (slash == std::string_view::npos) return Rat(BigInt(std::string(s)));
            BigInt n{std::string(s.substr(0, slash))};
            BigInt d{std::string(s.substr(slash + 1))};
            if (d == 0) throw bad();
            return Rat(n, d);
        } catch (const std::runtime_error&) {
            throw bad();
        }
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
        return os << r.str();
    }

  private:
    explicit Rat(BigRational v) : v_(std::move(v)) {}
    BigRational v_;
};

// Exact sum of j-th powers; one side of the theorem criteria.
inline Rat rat_pow_sum(std::span<const Rat> xs, long j) {
    if (xs.empty()) throw DomainError("rat_pow_sum on empty list");
    if (j < 1) throw DomainError("rat_pow_sum needs j >= 1");
    Rat acc(0);
    for (const Rat& x : xs) acc += x.pow(j);
    return acc;
}

inline Rat rat_pow_sum(const std::vector<Rat>& xs, long j) {
    return rat_pow_sum(std::span<const Rat>(xs), j);
}

inline BigInt factorial(long n) {
    BigInt f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

inline BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    BigInt f = 1;
    for (long i = 0; i < k; ++i) f = f * (n - i) / (i + 1);
    return f;
}

}  // namespace wallis
