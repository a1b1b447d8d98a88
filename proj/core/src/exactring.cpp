#include "orbidisk/exactring.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace orbidisk {

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

Integer factorial(long n) {
  if (n < 0) throw PoleError("factorial of a negative integer");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Rational ratio(const Integer& n, const Integer& d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw std::invalid_argument("empty rational");
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto slash = t.find('/');
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (num.size() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("malformed rational '" + text + "'");
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational pochhammer(const Rational& a, long n) {
  Rational r(1);
  if (n >= 0) {
    for (long j = 0; j < n; ++j) r *= a - j;
    return r;
  }
  for (long j = 1; j <= -n; ++j) {
    Rational f = a + j;
    if (f == 0) throw PoleError("Pochhammer symbol (" + a.get_str() + ")_" + std::to_string(n) + " has a pole");
    r *= f;
  }
  return 1 / r;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    a.swap_rows(p, c);
    inv.swap_rows(p, c);
    Rational s = 1 / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

Rational determinant(RatMatrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

std::size_t rank(RatMatrix a) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

namespace {

using Poly = std::vector<Integer>;

// Exact division of monic integer polynomials.
Poly divide(Poly num, const Poly& den) {
  Poly q(num.size() - den.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    Integer c = num[k + den.size() - 1];
    q[k] = c;
    for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
  }
  return q;
}

Poly cyclotomic_polynomial(long m) {
  Poly p(static_cast<std::size_t>(m) + 1);
  p[0] = -1;
  p[m] = 1;
  for (long d = 1; d < m; ++d)
    if (m % d == 0) p = divide(p, cyclotomic_polynomial(d));
  return p;
}

}  // namespace

CyclotomicField::CyclotomicField(long order) : order_(order) {
  if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
  phi_ = cyclotomic_polynomial(order);
  degree_ = phi_.size() - 1;
  std::size_t table = std::max<std::size_t>(static_cast<std::size_t>(order), 2 * degree_);
  powers_.reserve(table);
  std::vector<Rational> cur(degree_, Rational(0));
  cur[0] = 1;
  for (std::size_t j = 0; j < table; ++j) {
    powers_.push_back(cur);
    // multiply by x and reduce the overflowing coefficient with Phi_M
    Rational top = cur[degree_ - 1];
    for (std::size_t i = degree_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::size_t i = 0; i < degree_; ++i) cur[i] -= top * Rational(phi_[i]);
  }
}

std::shared_ptr<const CyclotomicField> CyclotomicField::create(long order) {
  return std::make_shared<const CyclotomicField>(order);
}

CycloNumber::CycloNumber(FieldPtr field) : field_(std::move(field)) {
  if (!field_) throw std::invalid_argument("null cyclotomic field");
  coeffs_.assign(field_->degree(), Rational(0));
}

CycloNumber::CycloNumber(FieldPtr field, const Rational& value) : CycloNumber(std::move(field)) {
  coeffs_[0] = value;
}

CycloNumber::CycloNumber(FieldPtr field, std::vector<Rational> coefficients)
    : field_(std::move(field)), coeffs_(std::move(coefficients)) {
  if (!field_) throw std::invalid_argument("null cyclotomic field");
  if (coeffs_.size() != field_->degree()) throw std::invalid_argument("coefficient vector has wrong length");
}

CycloNumber CycloNumber::root_of_unity(const FieldPtr& field, long j) {
  long m = field->order();
  long r = ((j % m) + m) % m;
  return CycloNumber(field, field->power(static_cast<std::size_t>(r)));
}

bool CycloNumber::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycloNumber::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rational CycloNumber::rational_value() const {
  if (!is_rational()) throw std::domain_error("cyclotomic number is not rational: " + to_string());
  return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

std::optional<std::pair<Rational, long>> CycloNumber::as_scaled_root() const {
  if (is_zero()) return std::make_pair(Rational(0), 0L);
  const long m = field_->order();
  for (long j = 0; j < m; ++j) {
    CycloNumber t = *this * root_of_unity(field_, -j);
    if (t.is_rational()) return std::make_pair(t.coeffs_[0], j);
  }
  return std::nullopt;
}

CycloNumber CycloNumber::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  const std::size_t n = field_->degree();
  RatMatrix mul(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    CycloNumber col = *this * CycloNumber(field_, field_->power(j));
    for (std::size_t i = 0; i < n; ++i) mul(i, j) = col.coeffs_[i];
  }
  RatMatrix inv = orbidisk::inverse(mul);
  return CycloNumber(field_, inv.column(0));
}

std::complex<double> CycloNumber::to_complex() const {
  std::complex<double> z(0.0, 0.0);
  const double m = static_cast<double>(field_->order());
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / m;
    z += coeffs_[j].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return z;
}

std::string CycloNumber::to_string() const {
  if (is_rational()) return rational_value().get_str();
  if (auto sr = as_scaled_root()) {
    std::ostringstream os;
    os << sr->first.get_str() << "*z" << field_->order() << "^" << sr->second;
    return os.str();
  }
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    if (!first) os << " + ";
    os << "(" << coeffs_[j].get_str() << ")*z" << field_->order() << "^" << j;
    first = false;
  }
  return os.str();
}

void CycloNumber::check_same_field(const CycloNumber& o) const {
  if (!field_ || !o.field_) throw std::invalid_argument("uninitialised cyclotomic number");
  if (field_->order() != o.field_->order()) throw std::invalid_argument("cyclotomic numbers from different fields");
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& o) {
  check_same_field(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& o) {
  check_same_field(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CycloNumber& CycloNumber::operator*=(const CycloNumber& o) {
  check_same_field(o);
  const std::size_t n = coeffs_.size();
  if (n == 1) {
    coeffs_[0] *= o.coeffs_[0];
    return *this;
  }
  std::vector<Rational> prod(2 * n - 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (o.coeffs_[j] != 0) prod[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  std::vector<Rational> out(prod.begin(), prod.begin() + static_cast<long>(n));
  for (std::size_t t = n; t < prod.size(); ++t) {
    if (prod[t] == 0) continue;
    const auto& red = field_->power(t);
    for (std::size_t i = 0; i < n; ++i)
      if (red[i] != 0) out[i] += prod[t] * red[i];
  }
  coeffs_ = std::move(out);
  return *this;
}

CycloNumber& CycloNumber::operator*=(const Rational& q) {
  for (auto& c : coeffs_) c *= q;
  return *this;
}

CycloNumber CycloNumber::operator-() const {
  CycloNumber r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  a.check_same_field(b);
  return a.coeffs_ == b.coeffs_;
}

CycloNumber phase(const FieldPtr& field, const Rational& r) {
  Rational j = r * field->order() / 2;
  if (j.get_den() != 1)
    throw OrderError("exp(i pi * " + r.get_str() + ") is not in Q(zeta_" + std::to_string(field->order()) + ")");
  Integer jm = j.get_num() % field->order();
  return CycloNumber::root_of_unity(field, jm.get_si());
}

long phase_order(const std::vector<Rational>& exponents) {
  Integer l(1);
  for (const auto& r : exponents) l = lcm(l, r.get_den());
  Integer m = 2 * l;
  if (!m.fits_slong_p()) throw OrderError("root of unity order overflows");
  return m.get_si();
}

}  // namespace orbidisk
