#pragma once

// Shared numeric types: big integers, exact rationals, and the error types
// used across the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace oddorder {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Violated precondition of a library call (mismatched levels, bad input).
class contract_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Input curve or subgroup falls outside the hypotheses of the classification.
class hypothesis_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A computation exceeded its configured work budget.
class budget_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

constexpr std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

inline std::int64_t mod_floor(std::int64_t x, std::int64_t m) {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

inline BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Exact rational density value. Decimals are for display only.
class DensityValue {
  public:
    DensityValue() = default;
    explicit DensityValue(Rational v) : value_(std::move(v)) {}
    DensityValue(std::int64_t num, std::int64_t den) : value_(Rational(num, den)) {}

    const Rational& value() const { return value_; }
    BigInt num() const { return numerator_of(value_); }
    BigInt den() const { return denominator_of(value_); }

    /// "num/den" in lowest terms.
    std::string str() const {
        std::ostringstream os;
        os << num() << "/" << den();
        return os.str();
    }

    double to_double() const { return value_.convert_to<double>(); }

    std::string decimal(int digits = 6) const {
        std::ostringstream os;
        os << std::fixed << std::setprecision(digits) << to_double();
        return os.str();
    }

    friend bool operator==(const DensityValue&, const DensityValue&) = default;
    friend auto operator<=>(const DensityValue& x, const DensityValue& y) {
        if (x.value_ < y.value_) return std::strong_ordering::less;
        if (x.value_ > y.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

  private:
    Rational value_{0};
};

}  // namespace oddorder
