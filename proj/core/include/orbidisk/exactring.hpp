#pragma once

#include <gmpxx.h>

#include <complex>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orbidisk/matrix.hpp"

namespace orbidisk {

using Integer = mpz_class;
using Rational = mpq_class;
using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

// Raised when a Pochhammer symbol or Gamma ratio hits a pole.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when a phase needs a root of unity the working field does not contain.
class OrderError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
// Fractional part in [0,1).
Rational frac(const Rational& q);
Integer factorial(long n);
Integer lcm(const Integer& a, const Integer& b);
// Parses "p", "p/q" or "-p/q".
Rational parse_rational(const std::string& text);
// n/d in canonical form. gmpxx's two-argument constructor does not reduce.
Rational ratio(const Integer& n, const Integer& d);
std::string to_string(const Rational& q);

// Falling factorial: a(a-1)...(a-n+1) for n > 0, 1 for n = 0, 1/((a+1)...(a-n)) for n < 0.
Rational pochhammer(const Rational& a, long n);

RatMatrix to_rational(const IntMatrix& m);
// Gauss-Jordan inverse; throws std::domain_error when singular.
RatMatrix inverse(const RatMatrix& m);
Rational determinant(RatMatrix m);
std::size_t rank(RatMatrix m);

// Q(zeta_M) presented as Q[x]/Phi_M(x), zeta_M = exp(2 pi i / M).
class CyclotomicField {
 public:
  static std::shared_ptr<const CyclotomicField> create(long order);

  long order() const { return order_; }
  std::size_t degree() const { return degree_; }
  // Coefficients of Phi_M, constant term first.
  const std::vector<Integer>& minimal_polynomial() const { return phi_; }
  // Canonical coordinates of x^j for 0 <= j < max(order, 2*degree - 1).
  const std::vector<Rational>& power(std::size_t j) const { return powers_.at(j); }
  std::size_t power_table_size() const { return powers_.size(); }

  explicit CyclotomicField(long order);

 private:
  long order_;
  std::size_t degree_;
  std::vector<Integer> phi_;
  std::vector<std::vector<Rational>> powers_;
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

class CycloNumber {
 public:
  CycloNumber() = default;
  explicit CycloNumber(FieldPtr field);
  CycloNumber(FieldPtr field, const Rational& value);
  CycloNumber(FieldPtr field, std::vector<Rational> coefficients);

  // zeta_M^j for any integer j.
  static CycloNumber root_of_unity(const FieldPtr& field, long j);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  // Throws std::domain_error unless rational.
  Rational rational_value() const;
  // (q, j) with value = q * zeta_M^j and 0 <= j < M, when such a form exists.
  std::optional<std::pair<Rational, long>> as_scaled_root() const;

  CycloNumber inverse() const;
  std::complex<double> to_complex() const;
  std::string to_string() const;

  CycloNumber& operator+=(const CycloNumber& o);
  CycloNumber& operator-=(const CycloNumber& o);
  CycloNumber& operator*=(const CycloNumber& o);
  CycloNumber& operator*=(const Rational& q);

  friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
  friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
  friend CycloNumber operator*(CycloNumber a, const CycloNumber& b) { return a *= b; }
  friend CycloNumber operator*(CycloNumber a, const Rational& q) { return a *= q; }
  friend CycloNumber operator*(const Rational& q, CycloNumber a) { return a *= q; }
  CycloNumber operator-() const;
  friend bool operator==(const CycloNumber& a, const CycloNumber& b);
  friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

 private:
  void check_same_field(const CycloNumber& o) const;

  FieldPtr field_;
  std::vector<Rational> coeffs_;
};

// exp(i pi r) inside the given field.
CycloNumber phase(const FieldPtr& field, const Rational& r);

// Smallest M such that exp(i pi r) lies in Q(zeta_M) for every listed r.
long phase_order(const std::vector<Rational>& exponents);

}  // namespace orbidisk
