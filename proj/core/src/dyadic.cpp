#include "factpow/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace factpow {

namespace {

mpz_class shifted_left(const mpz_class& v, std::uint64_t bits) {
  mpz_class r;
  mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), bits);
  return r;
}

std::uint64_t distance(std::int64_t hi, std::int64_t lo) {
  return static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
}

}  // namespace

Dyadic::Dyadic(mpz_class mantissa, std::int64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  if (sgn(mantissa_) == 0) {
    exponent_ = 0;
    return;
  }
  const auto tz = mpz_scan1(mantissa_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_tdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), tz);
    exponent_ += static_cast<std::int64_t>(tz);
  }
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.exponent_ >= b.exponent_)
    return Dyadic(shifted_left(a.mantissa_, distance(a.exponent_, b.exponent_)) + b.mantissa_,
                  b.exponent_);
  return Dyadic(a.mantissa_ + shifted_left(b.mantissa_, distance(b.exponent_, a.exponent_)),
                a.exponent_);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

Dyadic operator*(const Dyadic& a, const mpz_class& k) { return Dyadic(a.mantissa_ * k, a.exponent_); }

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const int s = (a - b).sign();
  return s < 0 ? std::strong_ordering::less
               : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

mpz_class Dyadic::floor() const {
  if (exponent_ >= 0) return shifted_left(mantissa_, static_cast<std::uint64_t>(exponent_));
  mpz_class r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<std::uint64_t>(-exponent_));
  return r;
}

mpz_class Dyadic::ceil() const {
  if (exponent_ >= 0) return floor();
  mpz_class r;
  mpz_cdiv_q_2exp(r.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<std::uint64_t>(-exponent_));
  return r;
}

std::string Dyadic::to_decimal(unsigned digits, Rounding dir) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class scaled;
  if (exponent_ >= 0) {
    scaled = floor() * scale;
  } else {
    const mpz_class num = mantissa_ * scale;
    if (dir == Rounding::Down)
      mpz_fdiv_q_2exp(scaled.get_mpz_t(), num.get_mpz_t(), static_cast<std::uint64_t>(-exponent_));
    else
      mpz_cdiv_q_2exp(scaled.get_mpz_t(), num.get_mpz_t(), static_cast<std::uint64_t>(-exponent_));
  }
  const bool negative = sgn(scaled) < 0;
  std::string s = mpz_class(abs(scaled)).get_str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

double Dyadic::to_double() const {
  long exp2 = 0;
  const double m = mpz_get_d_2exp(&exp2, mantissa_.get_mpz_t());
  const long double e = static_cast<long double>(exp2) + static_cast<long double>(exponent_);
  if (e > 4096) return m < 0 ? -HUGE_VAL : HUGE_VAL;
  if (e < -4096) return 0.0;
  return std::ldexp(m, static_cast<int>(e));
}

}  // namespace factpow
