#include "orbidisk/series.hpp"

#include <algorithm>
#include <sstream>

namespace orbidisk {

SeriesSpace::SeriesSpace(std::vector<Variable> variables, std::optional<Rational> truncation, FieldPtr field)
    : vars_(std::move(variables)), truncation_(std::move(truncation)), field_(std::move(field)) {
  if (!field_) throw std::invalid_argument("series space needs a coefficient field");
  Integer scale(1);
  std::vector<Rational> per_unit;
  for (const auto& v : vars_) {
    if (v.denominator < 1) throw std::invalid_argument("variable '" + v.name + "' has a non-positive denominator");
    if (v.weight <= 0) throw std::invalid_argument("variable '" + v.name + "' has a non-positive weight");
    Rational w = v.weight / v.denominator;
    per_unit.push_back(w);
    scale = lcm(scale, w.get_den());
  }
  if (truncation_) scale = lcm(scale, truncation_->get_den());
  scale_ = scale;
  for (const auto& w : per_unit) scaled_weight_.push_back(Integer(w * Rational(scale)));
  if (truncation_) {
    if (*truncation_ < 0) throw std::invalid_argument("negative truncation");
    scaled_truncation_ = floor(*truncation_ * Rational(scale));
  }
}

std::shared_ptr<const SeriesSpace> SeriesSpace::make(std::vector<Variable> variables,
                                                     std::optional<Rational> truncation, FieldPtr field) {
  return std::make_shared<const SeriesSpace>(std::move(variables), std::move(truncation), std::move(field));
}

Rational SeriesSpace::degree(const Exponent& e) const {
  Integer s(0);
  for (std::size_t i = 0; i < e.size(); ++i) s += scaled_weight_[i] * std::labs(e[i]);
  return ratio(s, scale_);
}

bool SeriesSpace::within_truncation(const Exponent& e) const {
  if (!scaled_truncation_) return true;
  Integer s(0);
  for (std::size_t i = 0; i < e.size(); ++i) s += scaled_weight_[i] * std::labs(e[i]);
  return s <= *scaled_truncation_;
}

Rational SeriesSpace::true_exponent(const Exponent& e, std::size_t i) const {
  return ratio(e.at(i), vars_.at(i).denominator);
}

long SeriesSpace::scaled_exponent(const Rational& true_exp, std::size_t i) const {
  Rational s = true_exp * vars_.at(i).denominator;
  if (s.get_den() != 1)
    throw std::domain_error("exponent " + true_exp.get_str() + " of '" + vars_[i].name +
                            "' needs a larger denominator than " + std::to_string(vars_[i].denominator));
  if (!vars_[i].laurent && s < 0)
    throw std::domain_error("negative exponent of non-Laurent variable '" + vars_[i].name + "'");
  if (!s.get_num().fits_slong_p()) throw std::overflow_error("exponent overflow");
  return s.get_num().get_si();
}

bool SeriesSpace::compatible(const SeriesSpace& o) const {
  if (vars_.size() != o.vars_.size() || field_->order() != o.field_->order()) return false;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto& a = vars_[i];
    const auto& b = o.vars_[i];
    if (a.name != b.name || a.denominator != b.denominator || a.weight != b.weight || a.laurent != b.laurent)
      return false;
  }
  return truncation_ == o.truncation_;
}

std::optional<std::size_t> SeriesSpace::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return i;
  return std::nullopt;
}

PuiseuxSeries::PuiseuxSeries(SpacePtr space) : space_(std::move(space)) {
  if (!space_) throw std::invalid_argument("null series space");
}

PuiseuxSeries PuiseuxSeries::constant(const SpacePtr& space, const Rational& c) {
  return constant(space, CycloNumber(space->field(), c));
}

PuiseuxSeries PuiseuxSeries::constant(const SpacePtr& space, const CycloNumber& c) {
  return monomial(space, Exponent(space->size(), 0), c);
}

PuiseuxSeries PuiseuxSeries::variable(const SpacePtr& space, std::size_t i) {
  Exponent e(space->size(), 0);
  e.at(i) = space->variable(i).denominator;
  return monomial(space, e, CycloNumber(space->field(), Rational(1)));
}

PuiseuxSeries PuiseuxSeries::monomial(const SpacePtr& space, const Exponent& e, const CycloNumber& c) {
  PuiseuxSeries s(space);
  s.add_term(e, c);
  return s;
}

bool PuiseuxSeries::has_negative_exponent() const {
  for (const auto& [e, c] : terms_)
    for (long x : e)
      if (x < 0) return true;
  return false;
}

void PuiseuxSeries::add_term(const Exponent& e, const CycloNumber& c) {
  if (e.size() != space_->size()) throw std::invalid_argument("exponent has wrong arity");
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] < 0 && !space_->variable(i).laurent)
      throw std::domain_error("negative exponent of non-Laurent variable '" + space_->variable(i).name + "'");
  if (c.is_zero() || !space_->within_truncation(e)) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

CycloNumber PuiseuxSeries::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? CycloNumber(space_->field()) : it->second;
}

CycloNumber PuiseuxSeries::constant_term() const { return coefficient(Exponent(space_->size(), 0)); }

PuiseuxSeries PuiseuxSeries::truncated(const Rational& t) const {
  PuiseuxSeries r(space_);
  for (const auto& [e, c] : terms_)
    if (space_->degree(e) <= t) r.terms_.emplace(e, c);
  return r;
}

std::optional<Rational> PuiseuxSeries::min_positive_degree() const {
  std::optional<Rational> best;
  for (const auto& [e, c] : terms_) {
    Rational d = space_->degree(e);
    if (d > 0 && (!best || d < *best)) best = d;
  }
  return best;
}

void PuiseuxSeries::check_space(const PuiseuxSeries& o) const {
  if (space_ != o.space_ && !space_->compatible(*o.space_))
    throw std::invalid_argument("series live in different spaces");
}

PuiseuxSeries& PuiseuxSeries::operator+=(const PuiseuxSeries& o) {
  check_space(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

PuiseuxSeries& PuiseuxSeries::operator-=(const PuiseuxSeries& o) {
  check_space(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

PuiseuxSeries& PuiseuxSeries::operator*=(const CycloNumber& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

PuiseuxSeries& PuiseuxSeries::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

PuiseuxSeries PuiseuxSeries::operator-() const {
  PuiseuxSeries r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  a.check_space(b);
  if (a.space_->truncation() && (a.has_negative_exponent() || b.has_negative_exponent()))
    throw std::domain_error("truncated product of series with negative exponents is not well defined");
  struct Entry {
    Rational degree;
    const Exponent* exp;
    const CycloNumber* coeff;
  };
  auto sorted = [&](const PuiseuxSeries& s) {
    std::vector<Entry> v;
    v.reserve(s.terms_.size());
    for (const auto& [e, c] : s.terms_) v.push_back({s.space_->degree(e), &e, &c});
    std::stable_sort(v.begin(), v.end(), [](const Entry& x, const Entry& y) { return x.degree < y.degree; });
    return v;
  };
  const auto ea = sorted(a);
  const auto eb = sorted(b);
  const auto& trunc = a.space_->truncation();
  PuiseuxSeries r(a.space_);
  Exponent sum(a.space_->size());
  for (const auto& x : ea) {
    for (const auto& y : eb) {
      if (trunc && x.degree + y.degree > *trunc) break;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = (*x.exp)[i] + (*y.exp)[i];
      r.add_term(sum, *x.coeff * *y.coeff);
    }
  }
  return r;
}

bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  a.check_space(b);
  return a.terms_ == b.terms_;
}

std::string PuiseuxSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << space_->variable(i).name;
      Rational u = space_->true_exponent(e, i);
      if (u != 1) os << "^(" << u.get_str() << ")";
    }
  }
  return os.str();
}

namespace {

void require_truncation(const PuiseuxSeries& f, const char* what) {
  if (!f.space()->truncation()) throw std::domain_error(std::string(what) + " needs a truncated series space");
}

}  // namespace

PuiseuxSeries pow(const PuiseuxSeries& f, unsigned long n) {
  PuiseuxSeries r = PuiseuxSeries::constant(f.space(), Rational(1));
  PuiseuxSeries base = f;
  while (n) {
    if (n & 1UL) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}

PuiseuxSeries exp(const PuiseuxSeries& f) {
  if (!f.constant_term().is_zero()) throw std::domain_error("exp needs a vanishing constant term");
  PuiseuxSeries result = PuiseuxSeries::constant(f.space(), Rational(1));
  if (f.is_zero()) return result;
  require_truncation(f, "exp");
  PuiseuxSeries term = result;
  for (long n = 1;; ++n) {
    term = term * f;
    term *= Rational(1, n);
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

PuiseuxSeries log(const PuiseuxSeries& f) {
  if (f.constant_term() != CycloNumber(f.space()->field(), Rational(1)))
    throw std::domain_error("log needs constant term 1");
  PuiseuxSeries g = f - PuiseuxSeries::constant(f.space(), Rational(1));
  PuiseuxSeries result(f.space());
  if (g.is_zero()) return result;
  require_truncation(f, "log");
  PuiseuxSeries power = g;
  for (long n = 1; !power.is_zero(); ++n) {
    result += power * Rational(n % 2 ? 1 : -1, n);
    power = power * g;
  }
  return result;
}

PuiseuxSeries inverse(const PuiseuxSeries& f) {
  CycloNumber c = f.constant_term();
  if (c.is_zero()) throw std::domain_error("series with vanishing constant term is not invertible");
  CycloNumber ci = c.inverse();
  PuiseuxSeries g = f * ci - PuiseuxSeries::constant(f.space(), Rational(1));
  PuiseuxSeries result = PuiseuxSeries::constant(f.space(), Rational(1));
  if (!g.is_zero()) {
    require_truncation(f, "inverse");
    PuiseuxSeries power = -g;
    PuiseuxSeries neg = -g;
    while (!power.is_zero()) {
      result += power;
      power = power * neg;
    }
  }
  return result * ci;
}

PuiseuxSeries substitute_monomial(const PuiseuxSeries& f, const RatMatrix& transform, const SpacePtr& target) {
  const auto& src = *f.space();
  if (transform.rows() != src.size() || transform.cols() != target->size())
    throw std::invalid_argument("monomial transform has the wrong shape");
  if (rank(transform) != transform.rows()) throw std::domain_error("monomial transform is not invertible");
  if (src.field()->order() != target->field()->order())
    throw std::invalid_argument("source and target spaces use different coefficient fields");
  PuiseuxSeries r(target);
  Exponent out(target->size());
  for (const auto& [e, c] : f.terms()) {
    for (std::size_t j = 0; j < target->size(); ++j) {
      Rational t(0);
      for (std::size_t i = 0; i < src.size(); ++i)
        if (e[i] != 0) t += src.true_exponent(e, i) * transform(i, j);
      out[j] = target->scaled_exponent(t, j);
    }
    r.add_term(out, c);
  }
  return r;
}

PuiseuxSeries phase_twist(const PuiseuxSeries& f, const std::vector<Rational>& r) {
  const auto& sp = *f.space();
  if (r.size() != sp.size()) throw std::invalid_argument("phase twist has the wrong arity");
  PuiseuxSeries out(f.space());
  for (const auto& [e, c] : f.terms()) {
    Rational s(0);
    for (std::size_t i = 0; i < e.size(); ++i) s += sp.true_exponent(e, i) * r[i];
    out.add_term(e, c * phase(sp.field(), s));
  }
  return out;
}

PuiseuxSeries integrate_dlog(const PuiseuxSeries& f, std::size_t var, long s) {
  PuiseuxSeries out(f.space());
  for (const auto& [e, c] : f.terms()) {
    if (e.at(var) == 0) throw std::domain_error("term without dependence on the integration variable");
    Rational d = f.space()->true_exponent(e, var);
    out.add_term(e, c * (Rational(s) / d));
  }
  return out;
}

PuiseuxSeries drop_independent_of(const PuiseuxSeries& f, std::size_t var) {
  PuiseuxSeries out(f.space());
  for (const auto& [e, c] : f.terms())
    if (e.at(var) != 0) out.add_term(e, c);
  return out;
}

PuiseuxSeries newton_solve(const SeriesMap& residual, const SeriesMap& derivative, const SpacePtr& space,
                           int max_iterations) {
  PuiseuxSeries u(space);
  for (int it = 0; it < max_iterations; ++it) {
    PuiseuxSeries r = residual(u);
    if (r.is_zero()) return u;
    PuiseuxSeries d = derivative(u);
    if (d.constant_term().is_zero()) throw SingularLinearization("Newton step has a singular linearization");
    u -= r * inverse(d);
  }
  throw std::runtime_error("Newton iteration did not reach a fixed point");
}

PuiseuxSeries newton_solve_polynomial(const std::vector<PuiseuxSeries>& coefficients, int max_iterations) {
  if (coefficients.empty()) throw std::invalid_argument("empty polynomial");
  const SpacePtr& space = coefficients.front().space();
  auto horner = [](const std::vector<PuiseuxSeries>& c, const PuiseuxSeries& u) {
    PuiseuxSeries acc = c.back();
    for (std::size_t j = c.size() - 1; j-- > 0;) acc = acc * u + c[j];
    return acc;
  };
  std::vector<PuiseuxSeries> deriv;
  for (std::size_t j = 1; j < coefficients.size(); ++j) deriv.push_back(coefficients[j] * Rational(static_cast<long>(j)));
  if (deriv.empty()) deriv.push_back(PuiseuxSeries(space));
  return newton_solve([&](const PuiseuxSeries& u) { return horner(coefficients, u); },
                      [&](const PuiseuxSeries& u) { return horner(deriv, u); }, space, max_iterations);
}

}  // namespace orbidisk
