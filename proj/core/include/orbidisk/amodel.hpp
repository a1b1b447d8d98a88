#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbidisk/lattice.hpp"
#include "orbidisk/series.hpp"

namespace orbidisk {

struct FramedBrane {
  FlagData flag;
  long f = 0;        // f, or f+ for inner branes
  long f_minus = 0;  // inner branes only
  // Inner branes: alpha with <D_i1,alpha> = 1/s1+, <D_i4,alpha> = 1/s1-, <D_i2,alpha> = a2, <D_i3,alpha> = a3.
  Rational a2, a3;
};

// Orientation is (i1, i2, i3), 0-based. For inner branes f_minus defaults to the value forced by the fan.
FramedBrane make_brane(const StackyFan& fan, std::array<int, 3> orientation, long f,
                       std::optional<long> f_minus = std::nullopt);

// Everything both pipelines derive from (fan, brane), computed once.
struct BraneSetup {
  StackyFan fan;
  FramedBrane brane;
  IntMatrix charges;
  ConeBasis basis;
  std::vector<BoxElement> box;        // Box(sigma)
  std::vector<BoxElement> box_minus;  // Box(sigma-), inner branes only
  RatMatrix dual_pairings;            // (a, i) -> <D_i, e^a>
  FieldPtr field;
};

inline constexpr long default_order_cap = 720;

// Throws OrderError when the required root-of-unity order exceeds the cap.
BraneSetup prepare(const StackyFan& fan, const FramedBrane& brane, long order_cap = default_order_cap);

// (k+1) x (r+2); row 0 is the framing row.
IntMatrix extended_charge_matrix(const StackyFan& fan, const FramedBrane& brane);

struct ExtendedDegree {
  Integer d0;
  std::vector<Integer> ntilde;     // <D_i1, beta~>, n_1 .. n_k
  CurveClass beta;
  std::vector<Rational> pairings;  // <D_i, beta~>, i = 0 .. r+1 (two phantom columns last)
};

// Weighted degree |d0|/s1 + sum n_a of x^d0 q^n.
Rational weighted_degree(const BraneSetup& s, const Integer& d0, const std::vector<Integer>& n);

// Degrees with d0 != 0 and weighted degree <= T, sorted by (d0, n).
std::vector<ExtendedDegree> enumerate_extended(const BraneSetup& s, const Rational& t);

struct DiskFactor {
  CycloNumber value;
  Rational w1_power;
};
// d0 > 0 uses k in Box(sigma); d0 < 0 (inner) needs k_minus in Box(sigma-).
DiskFactor disk_factor_prime(const BraneSetup& s, const Integer& d0, const BoxElement& k,
                             const BoxElement* k_minus = nullptr);

CycloNumber amplitude_coefficient(const BraneSetup& s, const ExtendedDegree& deg);

// exp(i pi {c_i2(v) - f c_i1(v)}), the principal branch.
CycloNumber character_sqrt(const BraneSetup& s, const BoxElement& v);

// Variables (x, q_1 .. q_k); x has weight 1/s1 and is Laurent for inner branes.
SpacePtr xq_space(const BraneSetup& s, const Rational& t);

struct APotential {
  std::vector<PuiseuxSeries> sectors;  // W_v, indexed like s.box
  PuiseuxSeries assembled;
};
APotential disk_potential_A(const BraneSetup& s, const Rational& t);

struct MirrorSeries {
  std::vector<PuiseuxSeries> a;  // A_1 .. A_r
  std::vector<PuiseuxSeries> s;  // S_1 .. S_k'
  std::size_t k_prime = 0;
};
// q-exponents are taken in the dual basis of reference_cone; classes from every cone are merged.
MirrorSeries a_i_series(const StackyFan& fan, std::size_t reference_cone, const Rational& t, const FieldPtr& field);

struct MirrorMaps {
  // tau_a = log q_a + series when has_log[a], else series alone.
  std::vector<bool> has_log;
  std::vector<PuiseuxSeries> closed;
  PuiseuxSeries open;  // log X - log x
};
// Throws InvalidInput when N has torsion.
MirrorMaps mirror_maps(const BraneSetup& s, const Rational& t);

}  // namespace orbidisk
