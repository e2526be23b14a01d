#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace toepsv {

/// Exact signed rational with arbitrary-precision numerator and denominator.
///
/// Always kept in lowest terms with a positive denominator. Used for the matrix
/// parameters so that hypothesis predicates are decided exactly.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t numerator, std::int64_t denominator);

    /// Parses "p", "p/q", decimals like "-2.75", and sums of such terms like "100-1/6".
    static Rational parse(std::string_view text);

    static Rational from_mpq(mpq_class value);

    /// Exact value of a finite binary64.
    static Rational from_double(double value);

    /// Correctly rounded (to nearest, ties to even) conversion to binary64.
    [[nodiscard]] double to_double() const;

    /// "p" or "p/q" in lowest terms.
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] std::string numerator_string() const;
    [[nodiscard]] std::string denominator_string() const;

    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] bool is_integer() const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    friend Rational operator-(const Rational& x);

    friend bool operator==(const Rational& lhs, const Rational& rhs);
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

    [[nodiscard]] const mpq_class& raw() const { return value_; }

private:
    explicit Rational(mpq_class value);

    mpq_class value_{0};
};

Rational abs(const Rational& x);

}  // namespace toepsv
