#include "volterra/precision.hpp"

#include <cmath>
#include <cstddef>
#include <utility>

namespace volterra {

namespace {

constexpr double kLog2Of10 = 3.3219280948873623;

}  // namespace

mpfr_prec_t PrecisionContext::bit_precision() const noexcept {
    return static_cast<mpfr_prec_t>(std::ceil(digits_ * kLog2Of10)) + 8;
}

Real::Real(Raw, int digits) : digits_(digits) {
    mpfr_init2(v_, PrecisionContext(digits).bit_precision());
}

Real::Real(const Real& other) : digits_(other.digits_) {
    mpfr_init2(v_, PrecisionContext(digits_).bit_precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept : digits_(other.digits_) {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(v_, PrecisionContext(other.digits_).bit_precision());
        mpfr_set(v_, other.v_, MPFR_RNDN);
        digits_ = other.digits_;
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    std::swap(digits_, other.digits_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real::Real(long value, const PrecisionContext& ctx) : Real(Raw{}, ctx.decimal_digits()) {
    mpfr_set_si(v_, value, MPFR_RNDN);
}

Real Real::nan(const PrecisionContext& ctx) { return Real(Raw{}, ctx.decimal_digits()); }

Real Real::pi(const PrecisionContext& ctx) {
    Real r(Raw{}, ctx.decimal_digits());
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

Real Real::pow10(int exponent, const PrecisionContext& ctx) {
    Real ten(10L, ctx);
    Real r(Raw{}, ctx.decimal_digits());
    mpfr_pow_si(r.v_, ten.v_, exponent, MPFR_RNDN);
    return r;
}

Real Real::from_decimal(std::string_view text, const PrecisionContext& ctx) {
    const auto fail = [&](std::size_t pos, const char* what) {
        throw ParseError(std::string("invalid number \"") + std::string(text) + "\": " + what,
                         pos);
    };
    std::size_t i = 0;
    const std::size_t n = text.size();
    if (n == 0) fail(0, "empty string");
    if (text[i] == '+' || text[i] == '-') ++i;
    std::size_t int_digits = 0;
    while (i < n && text[i] >= '0' && text[i] <= '9') ++i, ++int_digits;
    std::size_t frac_digits = 0;
    if (i < n && text[i] == '.') {
        ++i;
        while (i < n && text[i] >= '0' && text[i] <= '9') ++i, ++frac_digits;
    }
    if (int_digits + frac_digits == 0) fail(i < n ? i : n, "expected a digit");
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
        std::size_t exp_digits = 0;
        while (i < n && text[i] >= '0' && text[i] <= '9') ++i, ++exp_digits;
        if (exp_digits == 0) fail(i < n ? i : n, "expected an exponent digit");
    }
    if (i != n) fail(i, "unexpected character");

    Real r(Raw{}, ctx.decimal_digits());
    std::string buf(text);
    if (mpfr_set_str(r.v_, buf.c_str(), 10, MPFR_RNDN) != 0) {
        fail(0, "not a base-10 number");
    }
    return r;
}

Real Real::from_double(double value, const PrecisionContext& ctx) {
    Real r(Raw{}, ctx.decimal_digits());
    mpfr_set_d(r.v_, value, MPFR_RNDN);
    return r;
}

Real Real::to_context(const PrecisionContext& ctx) const {
    Real r(Raw{}, ctx.decimal_digits());
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

std::string Real::to_decimal() const {
    if (is_nan()) return "nan";
    if (!is_finite()) return sign() < 0 ? "-inf" : "inf";
    if (is_zero()) return "0";

    const bool negative = sign() < 0;
    const int max_digits = digits_ + 6;
    for (int k = 1; k <= max_digits; ++k) {
        mpfr_exp_t exp = 0;
        char* raw = mpfr_get_str(nullptr, &exp, 10, static_cast<std::size_t>(k), v_, MPFR_RNDN);
        std::string mantissa(raw + (negative ? 1 : 0));
        mpfr_free_str(raw);

        // Value is 0.mantissa * 10^exp; the printed exponent is one less.
        std::string candidate;
        const long sci_exp = static_cast<long>(exp) - 1;
        if (sci_exp >= 6 || sci_exp <= -6) {
            candidate = mantissa.substr(0, 1);
            if (mantissa.size() > 1) candidate += "." + mantissa.substr(1);
            candidate += "e" + std::to_string(sci_exp);
        } else if (exp >= static_cast<mpfr_exp_t>(mantissa.size())) {
            candidate = mantissa + std::string(static_cast<std::size_t>(exp) - mantissa.size(), '0');
        } else if (exp > 0) {
            candidate = mantissa.substr(0, static_cast<std::size_t>(exp)) + "." +
                        mantissa.substr(static_cast<std::size_t>(exp));
        } else {
            candidate = "0." + std::string(static_cast<std::size_t>(-exp), '0') + mantissa;
        }
        if (negative) candidate.insert(candidate.begin(), '-');

        Real back(Raw{}, digits_);
        mpfr_set_str(back.v_, candidate.c_str(), 10, MPFR_RNDN);
        if (mpfr_equal_p(back.v_, v_) != 0) return candidate;
    }
    // Unreachable for finite values: digits_+6 decimal digits always
    // round-trip bit_precision() bits.
    char* raw = mpfr_get_str(nullptr, nullptr, 10, 0, v_, MPFR_RNDN);
    std::string out(raw);
    mpfr_free_str(raw);
    return out;
}

Real Real::operator-() const {
    Real r(Raw{}, digits_);
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::binary(const Real& a, const Real& b,
                  int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t)) {
    Real r(Raw{}, a.digits_ > b.digits_ ? a.digits_ : b.digits_);
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real Real::unary(const Real& a, int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
    Real r(Raw{}, a.digits_);
    op(r.v_, a.v_, MPFR_RNDN);
    return r;
}

Real& Real::operator+=(const Real& rhs) {
    mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& rhs) {
    mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& rhs) {
    mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& rhs) {
    if (rhs.is_zero()) throw DomainError("division by zero");
    mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

Real operator+(const Real& a, const Real& b) { return Real::binary(a, b, mpfr_add); }
Real operator-(const Real& a, const Real& b) { return Real::binary(a, b, mpfr_sub); }
Real operator*(const Real& a, const Real& b) { return Real::binary(a, b, mpfr_mul); }

Real operator/(const Real& a, const Real& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    return Real::binary(a, b, mpfr_div);
}

Real operator*(long a, const Real& b) {
    Real r(Real::Raw{}, b.digits_);
    mpfr_mul_si(r.v_, b.v_, a, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, long b) {
    Real r(Real::Raw{}, a.digits_);
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, long b) {
    Real r(Real::Raw{}, a.digits_);
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator-(long a, const Real& b) {
    Real r(Real::Raw{}, b.digits_);
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, long b) {
    if (b == 0) throw DomainError("division by zero");
    Real r(Real::Raw{}, a.digits_);
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator/(long a, const Real& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    Real r(Real::Raw{}, b.digits_);
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}

Real exp(const Real& x) {
    Real r = Real::unary(x, mpfr_exp);
    if (!r.is_finite()) throw OverflowError("exp overflowed the representable range");
    return r;
}

Real log(const Real& x) {
    if (x.is_nan() || x.sign() <= 0) {
        throw DomainError("log requires a positive argument, got " + x.to_decimal());
    }
    return Real::unary(x, mpfr_log);
}

Real cosh(const Real& x) {
    Real r = Real::unary(x, mpfr_cosh);
    if (!r.is_finite()) throw OverflowError("cosh overflowed the representable range");
    return r;
}

Real sinh(const Real& x) {
    Real r = Real::unary(x, mpfr_sinh);
    if (!r.is_finite()) throw OverflowError("sinh overflowed the representable range");
    return r;
}

Real tanh(const Real& x) { return Real::unary(x, mpfr_tanh); }

Real sqrt(const Real& x) {
    if (x.is_nan() || x.sign() < 0) {
        throw DomainError("sqrt requires a nonnegative argument, got " + x.to_decimal());
    }
    return Real::unary(x, mpfr_sqrt);
}

Real abs(const Real& x) { return Real::unary(x, mpfr_abs); }

}  // namespace volterra
