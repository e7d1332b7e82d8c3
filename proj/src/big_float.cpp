#include "euminima/big_float.hpp"

#include <utility>
#include <vector>

namespace euminima {

BigFloat::BigFloat(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
  live_ = true;
}

BigFloat::BigFloat(double value, mpfr_prec_t precision) : BigFloat(precision) {
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
  live_ = true;
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // mpfr_t is an array of one struct; moving swaps ownership of the limbs.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
  live_ = true;
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() {
  if (live_) mpfr_clear(value_);
}

std::string BigFloat::to_string(int digits) const {
  const int len = mpfr_snprintf(nullptr, 0, "%.*Rg", digits, value_);
  std::vector<char> buf(static_cast<std::size_t>(len) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

}  // namespace euminima
