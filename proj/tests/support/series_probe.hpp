#pragma once

#include <vector>

#include "orbidisk/series.hpp"

namespace orbidisk::testing {

// Coefficient at the given true exponents.
inline CycloNumber coeff(const PuiseuxSeries& f, const std::vector<Rational>& true_exps) {
  Exponent e(true_exps.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = f.space()->scaled_exponent(true_exps[i], i);
  return f.coefficient(e);
}

inline CycloNumber num(const PuiseuxSeries& f, const Rational& q) { return CycloNumber(f.space()->field(), q); }

}  // namespace orbidisk::testing
