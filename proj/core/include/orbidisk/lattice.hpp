#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orbidisk/exactring.hpp"

namespace orbidisk {

// Element of N = Z^3 + sum_j Z/m_j: three free coordinates followed by one residue per torsion factor.
using LatticeVector = std::vector<Integer>;
using Cone = std::array<int, 3>;  // sorted 0-based ray indices

struct StackyFan {
  int rank = 3;
  std::vector<Integer> torsion;
  std::vector<LatticeVector> rays;    // b_1 .. b_r'
  std::vector<LatticeVector> extras;  // b_{r'+1} .. b_r
  std::vector<Cone> cones;

  std::size_t r_prime() const { return rays.size(); }
  std::size_t r() const { return rays.size() + extras.size(); }
  std::size_t k() const { return r() - static_cast<std::size_t>(rank); }
  std::size_t coordinates() const { return static_cast<std::size_t>(rank) + torsion.size(); }
  const LatticeVector& b(std::size_t i) const { return i < rays.size() ? rays.at(i) : extras.at(i - rays.size()); }
  // Index of the cone with exactly these rays, if any.
  std::optional<std::size_t> find_cone(std::array<int, 3> rays_any_order) const;
};

struct Diagnostic {
  std::string invariant;
  std::string detail;
};

class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(std::vector<Diagnostic> diagnostics);
  InvalidInput(std::string invariant, std::string detail);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

std::vector<Diagnostic> check_fan(const StackyFan& fan);
// Throws InvalidInput listing every failed invariant.
void validate_fan(const StackyFan& fan);
// Reduces torsion coordinates into [0, m_j).
LatticeVector reduce(const StackyFan& fan, LatticeVector v);

struct SmithForm {
  IntMatrix U, S, V;  // U * M * V = S
};
SmithForm smith_normal_form(const IntMatrix& m);
// Row-style Hermite form with positive pivots; rows above a pivot are reduced into [0, pivot). Zero rows removed.
IntMatrix hermite_normal_form(const IntMatrix& m);
// Rows form a Z-basis of {x : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

// k x r matrix whose rows l^(a) form the canonical basis of ker(Z^r -> N):
// Hermite reduced, then rows sorted ascending lexicographically.
IntMatrix charge_matrix(const StackyFan& fan);

struct AbelianGroup {
  long free_rank = 0;
  std::vector<Integer> invariants;  // each >= 2, divisibility chain
  std::string to_string() const;
  Integer order() const;  // 0 when infinite
};
// L^dual modulo the span of the extra divisor classes.
AbelianGroup picard_cokernel(const StackyFan& fan);

struct BoxElement {
  LatticeVector v;
  std::size_t cone = 0;
  std::array<Rational, 3> c;  // weights of the cone rays, in the cone's ray order
  Rational age;

  // c_i(v); zero for rays outside the host cone.
  Rational weight(const StackyFan& fan, std::size_t ray) const;
};

// Sorted by age, then weight vector descending, then v ascending.
std::vector<BoxElement> box_elements(const StackyFan& fan, std::size_t cone);

struct FlagData {
  std::size_t sigma = 0;
  int i1 = 0, i2 = 0, i3 = 0;
  long s1 = 1;
  Integer g_sigma, g_tau;
  bool inner = false;
  // Inner branes only.
  std::size_t sigma_minus = 0;
  int i4 = -1;
  long s1_minus = 1;
};

// orientation = (i1, i2, i3), 0-based; tau = {i2, i3}.
FlagData flag_data(const StackyFan& fan, std::array<int, 3> orientation);

// Basis {e^a} of L_Q dual to p_a = D_{i(a)}, i(a) running over the rays outside the cone in ascending order.
struct ConeBasis {
  std::size_t cone = 0;
  std::vector<int> p_indices;
  RatMatrix dual;  // row a holds e^a in charge-row coordinates
};
ConeBasis cone_basis(const StackyFan& fan, const IntMatrix& charges, std::size_t cone);

// <D_i, beta> for beta in charge-row coordinates.
Rational pairing(const IntMatrix& charges, std::size_t i, const std::vector<Rational>& beta);

struct CurveClass {
  std::vector<Integer> n;         // coordinates in the dual basis
  std::vector<Rational> beta;     // charge-row coordinates
  std::vector<Rational> pairings; // <D_i, beta>, i = 0 .. r-1
  std::size_t box = 0;            // index of v(beta) in box_elements(fan, cone)
};

// v(beta) = sum_i ceil(<D_i, beta>) b_i.
LatticeVector sector_vector(const StackyFan& fan, const std::vector<Rational>& pairings);
std::size_t locate_box(const std::vector<BoxElement>& box, const LatticeVector& v);

CurveClass make_curve_class(const StackyFan& fan, const IntMatrix& charges, const ConeBasis& basis,
                            const std::vector<BoxElement>& box, const std::vector<Integer>& n);

// All n in Z_{>=0}^k with sum n <= bound, ordered by total degree then lexicographically.
std::vector<CurveClass> k_eff_enumerate(const StackyFan& fan, std::size_t cone, const Rational& bound);

// Calls fn(n) for every n in Z_{>=0}^k with sum n <= total, by total degree then lexicographically.
void for_each_bounded(std::size_t k, long total, const std::function<void(const std::vector<Integer>&)>& fn);

struct LeadingDegree {
  std::size_t cone = 0;           // a cone containing b_i
  std::vector<Rational> beta;     // charge-row coordinates
  std::vector<Rational> pairings; // <D_j, D_i^dual>
};
// i is an absolute 0-based index of an extra vector.
LeadingDegree leading_degree(const StackyFan& fan, std::size_t i);

bool semiprojectivity_check(const StackyFan& fan);

// Ray images in the free part, as rationals.
std::vector<Rational> free_part(const StackyFan& fan, std::size_t i);

}  // namespace orbidisk
