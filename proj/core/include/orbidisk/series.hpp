#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orbidisk/exactring.hpp"

namespace orbidisk {

// One formal variable. Stored exponents are integers e; the true exponent is e / denominator.
struct Variable {
  std::string name;
  long denominator = 1;
  Rational weight = 1;
  // Negative exponents allowed; such a variable contributes weight * |exponent| to the degree.
  bool laurent = false;
};

// Stored (scaled) exponent vector.
using Exponent = std::vector<long>;

class SeriesSpace {
 public:
  SeriesSpace(std::vector<Variable> variables, std::optional<Rational> truncation, FieldPtr field);

  static std::shared_ptr<const SeriesSpace> make(std::vector<Variable> variables, std::optional<Rational> truncation,
                                                 FieldPtr field);

  std::size_t size() const { return vars_.size(); }
  const Variable& variable(std::size_t i) const { return vars_.at(i); }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::optional<Rational>& truncation() const { return truncation_; }
  const FieldPtr& field() const { return field_; }

  Rational degree(const Exponent& e) const;
  bool within_truncation(const Exponent& e) const;
  Rational true_exponent(const Exponent& e, std::size_t i) const;
  // Throws when the true exponent cannot be stored in this space.
  long scaled_exponent(const Rational& true_exp, std::size_t i) const;
  // Same variables, weights and field.
  bool compatible(const SeriesSpace& o) const;
  std::optional<std::size_t> index_of(const std::string& name) const;

 private:
  std::vector<Variable> vars_;
  std::optional<Rational> truncation_;
  FieldPtr field_;
  // weight_i / denominator_i scaled to integers by a common factor
  std::vector<Integer> scaled_weight_;
  Integer scale_;
  std::optional<Integer> scaled_truncation_;
};

using SpacePtr = std::shared_ptr<const SeriesSpace>;

class PuiseuxSeries {
 public:
  using TermMap = std::map<Exponent, CycloNumber>;

  explicit PuiseuxSeries(SpacePtr space);

  static PuiseuxSeries constant(const SpacePtr& space, const Rational& c);
  static PuiseuxSeries constant(const SpacePtr& space, const CycloNumber& c);
  static PuiseuxSeries variable(const SpacePtr& space, std::size_t i);
  static PuiseuxSeries monomial(const SpacePtr& space, const Exponent& e, const CycloNumber& c);

  const SpacePtr& space() const { return space_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool has_negative_exponent() const;

  // Adds c * monomial(e); dropped when beyond the truncation.
  void add_term(const Exponent& e, const CycloNumber& c);
  CycloNumber coefficient(const Exponent& e) const;
  CycloNumber constant_term() const;
  PuiseuxSeries truncated(const Rational& t) const;
  // Lowest degree among nonconstant terms, or nullopt.
  std::optional<Rational> min_positive_degree() const;

  PuiseuxSeries& operator+=(const PuiseuxSeries& o);
  PuiseuxSeries& operator-=(const PuiseuxSeries& o);
  PuiseuxSeries& operator*=(const CycloNumber& c);
  PuiseuxSeries& operator*=(const Rational& c);
  friend PuiseuxSeries operator+(PuiseuxSeries a, const PuiseuxSeries& b) { return a += b; }
  friend PuiseuxSeries operator-(PuiseuxSeries a, const PuiseuxSeries& b) { return a -= b; }
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator*(PuiseuxSeries a, const CycloNumber& c) { return a *= c; }
  friend PuiseuxSeries operator*(PuiseuxSeries a, const Rational& c) { return a *= c; }
  PuiseuxSeries operator-() const;
  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b);

  std::string to_string() const;

 private:
  void check_space(const PuiseuxSeries& o) const;

  SpacePtr space_;
  TermMap terms_;
};

PuiseuxSeries pow(const PuiseuxSeries& f, unsigned long n);
// Requires a vanishing constant term and a finite truncation.
PuiseuxSeries exp(const PuiseuxSeries& f);
// Requires constant term 1.
PuiseuxSeries log(const PuiseuxSeries& f);
// Requires an invertible constant term.
PuiseuxSeries inverse(const PuiseuxSeries& f);

// Monomial change of variables: source variable i maps to prod_j target_j^{transform(i, j)}.
// The transform must have full row rank over Q.
PuiseuxSeries substitute_monomial(const PuiseuxSeries& f, const RatMatrix& transform, const SpacePtr& target);

// Multiplies the coefficient of each monomial with true exponents u by exp(i pi sum_i u_i r_i).
PuiseuxSeries phase_twist(const PuiseuxSeries& f, const std::vector<Rational>& r);

// x^d -> (s / d) x^d in the given variable; throws if a term has no x dependence.
PuiseuxSeries integrate_dlog(const PuiseuxSeries& f, std::size_t var, long s);

// Drops the terms whose exponent in the given variable vanishes.
PuiseuxSeries drop_independent_of(const PuiseuxSeries& f, std::size_t var);

class SingularLinearization : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using SeriesMap = std::function<PuiseuxSeries(const PuiseuxSeries&)>;

// Solves residual(u) = 0 with u(0) = 0 by Newton iteration in the truncated ring.
PuiseuxSeries newton_solve(const SeriesMap& residual, const SeriesMap& derivative, const SpacePtr& space,
                           int max_iterations = 64);

// Same for residual(u) = sum_j coefficients[j] u^j.
PuiseuxSeries newton_solve_polynomial(const std::vector<PuiseuxSeries>& coefficients, int max_iterations = 64);

}  // namespace orbidisk
