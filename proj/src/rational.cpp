#include "toepsv/rational.hpp"

#include "toepsv/errors.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>
#include <string>
#include <utility>

namespace toepsv {

namespace {

class TermParser {
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    Rational parse_sum() {
        skip_space();
        if (at_end()) fail("empty rational literal");
        int sign = 1;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1 : 1;
            ++pos_;
        }
        Rational total = sign < 0 ? -parse_term() : parse_term();
        for (;;) {
            skip_space();
            if (at_end()) break;
            const char op = peek();
            if (op != '+' && op != '-') fail("expected '+' or '-'");
            ++pos_;
            const Rational term = parse_term();
            if (op == '+') {
                total += term;
            } else {
                total -= term;
            }
        }
        return total;
    }

private:
    // decimal [ "/" integer ]
    Rational parse_term() {
        skip_space();
        Rational value = parse_decimal();
        skip_space();
        if (!at_end() && peek() == '/') {
            ++pos_;
            skip_space();
            const std::string digits = take_digits();
            if (digits.empty()) fail("expected denominator digits");
            const mpz_class den(digits, 10);
            if (den == 0) fail("zero denominator");
            value /= Rational::from_mpq(mpq_class(den));
        }
        return value;
    }

    Rational parse_decimal() {
        std::string digits = take_digits();
        std::string fraction;
        if (!at_end() && peek() == '.') {
            ++pos_;
            fraction = take_digits();
        }
        if (digits.empty() && fraction.empty()) fail("expected a number");
        long exponent = 0;
        if (!at_end() && (peek() == 'e' || peek() == 'E')) {
            ++pos_;
            int esign = 1;
            if (!at_end() && (peek() == '+' || peek() == '-')) {
                esign = peek() == '-' ? -1 : 1;
                ++pos_;
            }
            const std::string edigits = take_digits();
            if (edigits.empty() || edigits.size() > 6) fail("bad exponent");
            exponent = esign * std::stol(edigits);
        }
        exponent -= static_cast<long>(fraction.size());
        const std::string all = (digits.empty() ? std::string("0") : digits) + fraction;
        mpq_class q{mpz_class(all, 10)};
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
        if (exponent < 0) {
            q /= scale;
        } else {
            q *= scale;
        }
        q.canonicalize();
        return Rational::from_mpq(std::move(q));
    }

    std::string take_digits() {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    [[nodiscard]] bool at_end() const { return pos_ >= text_.size(); }
    [[nodiscard]] char peek() const { return text_[pos_]; }

    [[noreturn]] void fail(const char* what) const {
        throw ParseError("invalid rational \"" + std::string(text_) + "\" at offset " + std::to_string(pos_) +
                         ": " + what);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Rational::Rational(std::int64_t value) : value_(mpz_class(std::to_string(value), 10)) {}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw DomainError("rational with zero denominator");
    value_ = mpq_class(mpz_class(std::to_string(numerator), 10), mpz_class(std::to_string(denominator), 10));
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::from_mpq(mpq_class value) { return Rational(std::move(value)); }

Rational Rational::parse(std::string_view text) { return TermParser(text).parse_sum(); }

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) throw DomainError("cannot represent a non-finite double as a rational");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), value);
    return Rational(std::move(q));
}

double Rational::to_double() const {
    mpfr_t tmp;
    mpfr_init2(tmp, 53);
    mpfr_set_q(tmp, value_.get_mpq_t(), MPFR_RNDN);
    const double out = mpfr_get_d(tmp, MPFR_RNDN);
    mpfr_clear(tmp);
    return out;
}

std::string Rational::to_string() const { return value_.get_str(10); }
std::string Rational::numerator_string() const { return value_.get_num().get_str(10); }
std::string Rational::denominator_string() const { return value_.get_den().get_str(10); }

bool Rational::is_integer() const { return value_.get_den() == 1; }

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw DomainError("rational division by zero");
    value_ /= rhs.value_;
    return *this;
}

Rational operator-(const Rational& x) { return Rational(mpq_class(-x.value_)); }

bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

}  // namespace toepsv
