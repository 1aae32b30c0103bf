#pragma once

#include <mpfr.h>

#include <string>
#include <string_view>

#include "volterra/errors.hpp"

namespace volterra {

/// Describes the working precision of a computation as a number of
/// significant decimal digits. Immutable after construction; passed
/// explicitly to every scalar constructor (no hidden global precision
/// state, so independent computations at different precisions can run
/// side by side).
class PrecisionContext {
public:
    /// Lower bound: never below the double-precision equivalent.
    static constexpr int kMinDigits = 15;
    /// Extra digits used internally by quadrature and linear algebra;
    /// results are rounded back so user-visible digits stay honest.
    static constexpr int kGuardDigits = 10;

    explicit PrecisionContext(int decimal_digits) : digits_(decimal_digits) {
        if (decimal_digits < kMinDigits) {
            throw ConfigError("precision of " + std::to_string(decimal_digits) +
                              " decimal digits is below the minimum of " +
                              std::to_string(kMinDigits));
        }
    }

    int decimal_digits() const noexcept { return digits_; }

    /// Context widened by `extra` decimal digits for internal kernels.
    PrecisionContext with_guard_digits(int extra = kGuardDigits) const {
        return PrecisionContext(digits_ + extra);
    }

    /// Binary precision required to carry `decimal_digits()` significant
    /// decimal digits through round-trips, plus a few spare bits.
    mpfr_prec_t bit_precision() const noexcept;

    friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

private:
    int digits_;
};

/// Arbitrary-precision real number. Every value carries its own precision
/// (derived from the context it was created under); binary operations
/// produce results at the wider of the two operand contexts. Values are
/// immutable in the sense that all operators return fresh scalars; the
/// compound assignments mutate the receiver in place and keep its context.
class Real {
public:
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    Real(long value, const PrecisionContext& ctx);
    Real(int value, const PrecisionContext& ctx) : Real(static_cast<long>(value), ctx) {}

    static Real zero(const PrecisionContext& ctx) { return Real(0L, ctx); }
    static Real nan(const PrecisionContext& ctx);
    static Real pi(const PrecisionContext& ctx);
    /// 10^exponent, correctly rounded. Handy for tolerances and noise floors.
    static Real pow10(int exponent, const PrecisionContext& ctx);

    /// Parses a signed decimal string, optionally with a (lowercase or
    /// uppercase) exponent part. Rejects anything else with a ParseError
    /// naming the offending character position.
    static Real from_decimal(std::string_view text, const PrecisionContext& ctx);
    /// Exact conversion from a machine double (used for seeding iterations,
    /// never on the main data path).
    static Real from_double(double value, const PrecisionContext& ctx);

    PrecisionContext context() const noexcept { return PrecisionContext(digits_); }
    /// Rounds (or zero-extends) this value into another context.
    Real to_context(const PrecisionContext& ctx) const;

    bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
    bool is_nan() const noexcept { return mpfr_nan_p(v_) != 0; }
    bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
    int sign() const noexcept { return mpfr_sgn(v_); }

    /// Shortest decimal string that parses back (in this context) to the
    /// identical value. Scientific notation with lowercase "e" once the
    /// decimal exponent reaches 6 in magnitude.
    std::string to_decimal() const;
    double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }

    Real operator-() const;
    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);

    friend Real operator*(long a, const Real& b);
    friend Real operator*(const Real& a, long b) { return b * a; }
    friend Real operator+(const Real& a, long b);
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator-(const Real& a, long b);
    friend Real operator-(long a, const Real& b);
    friend Real operator/(const Real& a, long b);
    friend Real operator/(long a, const Real& b);

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return mpfr_lessgreater_p(a.v_, b.v_) != 0 || a.is_nan() || b.is_nan(); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

    friend Real exp(const Real& x);
    friend Real log(const Real& x);
    friend Real cosh(const Real& x);
    friend Real sinh(const Real& x);
    friend Real tanh(const Real& x);
    friend Real sqrt(const Real& x);
    friend Real abs(const Real& x);

    friend const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }
    friend const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }

private:
    struct Raw {};
    /// Uninitialized (NaN) value at the given context.
    Real(Raw, int digits);

    static Real binary(const Real& a, const Real& b,
                       int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t));
    static Real unary(const Real& a, int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t));

    mpfr_t v_;
    int digits_;
};

}  // namespace volterra
