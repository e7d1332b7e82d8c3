#pragma once

// Thin RAII handle over an MPFR value. Arithmetic is done through the raw
// mpfr_* calls so that every operation names its rounding direction.

#include <mpfr.h>

#include <string>

namespace euminima {

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision = 128);
  BigFloat(double value, mpfr_prec_t precision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  // %.<digits>Rg rendering.
  std::string to_string(int digits) const;

 private:
  mpfr_t value_;
  bool live_ = false;
};

}  // namespace euminima
