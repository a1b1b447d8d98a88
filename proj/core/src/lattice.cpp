#include "orbidisk/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace orbidisk {

std::optional<std::size_t> StackyFan::find_cone(std::array<int, 3> rays_any_order) const {
  std::sort(rays_any_order.begin(), rays_any_order.end());
  for (std::size_t c = 0; c < cones.size(); ++c)
    if (cones[c] == rays_any_order) return c;
  return std::nullopt;
}

InvalidInput::InvalidInput(std::string invariant, std::string detail)
    : InvalidInput(std::vector<Diagnostic>{{std::move(invariant), std::move(detail)}}) {}

InvalidInput::InvalidInput(std::vector<Diagnostic> diagnostics)
    : std::invalid_argument([&] {
        std::string msg = "invalid input:";
        for (const auto& d : diagnostics) msg += " [" + d.invariant + "] " + d.detail + ";";
        return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

LatticeVector reduce(const StackyFan& fan, LatticeVector v) {
  for (std::size_t j = 0; j < fan.torsion.size(); ++j) {
    Integer& x = v.at(static_cast<std::size_t>(fan.rank) + j);
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), fan.torsion[j].get_mpz_t());
  }
  return v;
}

std::vector<Rational> free_part(const StackyFan& fan, std::size_t i) {
  const auto& b = fan.b(i);
  return {Rational(b[0]), Rational(b[1]), Rational(b[2])};
}

// ---------------------------------------------------------------- integer linear algebra

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  IntMatrix S = m, U = IntMatrix::identity(R), V = IntMatrix::identity(C);
  auto row_axpy = [&](std::size_t i, std::size_t t, const Integer& q) {
    for (std::size_t j = 0; j < C; ++j) S(i, j) -= q * S(t, j);
    for (std::size_t j = 0; j < R; ++j) U(i, j) -= q * U(t, j);
  };
  auto col_axpy = [&](std::size_t j, std::size_t t, const Integer& q) {
    for (std::size_t i = 0; i < R; ++i) S(i, j) -= q * S(i, t);
    for (std::size_t i = 0; i < C; ++i) V(i, j) -= q * V(i, t);
  };
  const std::size_t n = std::min(R, C);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::size_t pi = R, pj = C;
      Integer best;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (S(i, j) != 0 && (pi == R || abs(S(i, j)) < best)) {
            best = abs(S(i, j));
            pi = i;
            pj = j;
          }
      if (pi == R) return {U, S, V};
      S.swap_rows(t, pi);
      U.swap_rows(t, pi);
      S.swap_cols(t, pj);
      V.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i)
        if (S(i, t) != 0) {
          Integer q = S(i, t) / S(t, t);
          row_axpy(i, t, q);
          if (S(i, t) != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < C; ++j)
        if (S(t, j) != 0) {
          Integer q = S(t, j) / S(t, t);
          col_axpy(j, t, q);
          if (S(t, j) != 0) clean = false;
        }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < R && divides; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (S(i, j) % S(t, t) != 0) {
            row_axpy(t, i, Integer(-1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (S(t, t) < 0) {
      for (std::size_t j = 0; j < C; ++j) S(t, j) = -S(t, j);
      for (std::size_t j = 0; j < R; ++j) U(t, j) = -U(t, j);
    }
  }
  return {U, S, V};
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix H = m;
  const std::size_t R = H.rows(), C = H.cols();
  auto row_axpy = [&](std::size_t i, std::size_t t, const Integer& q) {
    for (std::size_t j = 0; j < C; ++j) H(i, j) -= q * H(t, j);
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    bool pivot = false;
    for (;;) {
      std::size_t p = R;
      for (std::size_t i = r; i < R; ++i)
        if (H(i, c) != 0 && (p == R || abs(H(i, c)) < abs(H(p, c)))) p = i;
      if (p == R) break;
      pivot = true;
      H.swap_rows(r, p);
      bool clean = true;
      for (std::size_t i = r + 1; i < R; ++i)
        if (H(i, c) != 0) {
          row_axpy(i, r, H(i, c) / H(r, c));
          if (H(i, c) != 0) clean = false;
        }
      if (clean) break;
    }
    if (!pivot) continue;
    if (H(r, c) < 0)
      for (std::size_t j = 0; j < C; ++j) H(r, j) = -H(r, j);
    for (std::size_t i = 0; i < r; ++i) row_axpy(i, r, floor(ratio(H(i, c), H(r, c))));
    ++r;
  }
  IntMatrix out(r, C);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < C; ++j) out(i, j) = H(i, j);
  return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  SmithForm snf = smith_normal_form(m);
  std::size_t rk = 0;
  while (rk < std::min(m.rows(), m.cols()) && snf.S(rk, rk) != 0) ++rk;
  IntMatrix k(m.cols() - rk, m.cols());
  for (std::size_t a = rk; a < m.cols(); ++a)
    for (std::size_t i = 0; i < m.cols(); ++i) k(a - rk, i) = snf.V(i, a);
  return k;
}

namespace {

// Columns b_1..b_r followed by m_j e_{3+j}: the presentation of Z^r -> N.
IntMatrix presentation(const StackyFan& fan) {
  const std::size_t rows = fan.coordinates(), r = fan.r(), t = fan.torsion.size();
  IntMatrix a(rows, r + t);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < rows; ++j) a(j, i) = fan.b(i).at(j);
  for (std::size_t j = 0; j < t; ++j) a(static_cast<std::size_t>(fan.rank) + j, r + j) = fan.torsion[j];
  return a;
}

RatMatrix cone_matrix(const StackyFan& fan, std::size_t cone) {
  RatMatrix b(3, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    auto col = free_part(fan, static_cast<std::size_t>(fan.cones.at(cone)[j]));
    for (std::size_t i = 0; i < 3; ++i) b(i, j) = col[i];
  }
  return b;
}

std::vector<Rational> mat_vec(const RatMatrix& m, const std::vector<Rational>& x) {
  std::vector<Rational> y(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

struct Point2 {
  Rational x, y;
};

Rational cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Linear functional h with h(b_i) = 1 for all i, if one exists.
std::optional<std::vector<Rational>> cy_functional(const StackyFan& fan) {
  const std::size_t r = fan.r();
  RatMatrix rows(r, 3);
  for (std::size_t i = 0; i < r; ++i) {
    auto b = free_part(fan, i);
    for (std::size_t j = 0; j < 3; ++j) rows(i, j) = b[j];
  }
  // pick three independent rows greedily
  std::vector<std::size_t> pick;
  for (std::size_t i = 0; i < r && pick.size() < 3; ++i) {
    RatMatrix trial(pick.size() + 1, 3);
    for (std::size_t a = 0; a < pick.size(); ++a)
      for (std::size_t j = 0; j < 3; ++j) trial(a, j) = rows(pick[a], j);
    for (std::size_t j = 0; j < 3; ++j) trial(pick.size(), j) = rows(i, j);
    if (rank(trial) == pick.size() + 1) pick.push_back(i);
  }
  if (pick.size() < 3) return std::nullopt;
  RatMatrix sq(3, 3);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t j = 0; j < 3; ++j) sq(a, j) = rows(pick[a], j);
  std::vector<Rational> h = mat_vec(inverse(sq), {Rational(1), Rational(1), Rational(1)});
  for (std::size_t i = 0; i < r; ++i) {
    Rational s(0);
    for (std::size_t j = 0; j < 3; ++j) s += rows(i, j) * h[j];
    if (s != 1) return std::nullopt;
  }
  return h;
}

// Coordinates of every b_i in the plane h = 1, by dropping one coordinate with h_j != 0.
std::vector<Point2> plane_points(const StackyFan& fan, const std::vector<Rational>& h) {
  std::size_t drop = 0;
  while (h[drop] == 0) ++drop;
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < fan.r(); ++i) {
    auto b = free_part(fan, i);
    std::vector<Rational> keep;
    for (std::size_t j = 0; j < 3; ++j)
      if (j != drop) keep.push_back(b[j]);
    pts.push_back({keep[0], keep[1]});
  }
  return pts;
}

// True when the closed triangles have overlapping interiors.
bool interiors_overlap(const std::array<Point2, 3>& a, const std::array<Point2, 3>& b) {
  auto separated_by = [](const std::array<Point2, 3>& t, const std::array<Point2, 3>& o) {
    Rational orient = cross(t[0], t[1], t[2]);
    for (int e = 0; e < 3; ++e) {
      const Point2& p = t[e];
      const Point2& q = t[(e + 1) % 3];
      bool all_out = true;
      for (const auto& v : o) {
        Rational s = cross(p, q, v) * orient;
        if (s > 0) {
          all_out = false;
          break;
        }
      }
      if (all_out) return true;
    }
    return false;
  };
  return !separated_by(a, b) && !separated_by(b, a);
}

}  // namespace

// ---------------------------------------------------------------- validation

std::vector<Diagnostic> check_fan(const StackyFan& fan) {
  std::vector<Diagnostic> out;
  auto fail = [&](std::string inv, std::string detail) { out.push_back({std::move(inv), std::move(detail)}); };
  if (fan.rank != 3) fail("rank", "rank of N must be 3, got " + std::to_string(fan.rank));
  for (const auto& m : fan.torsion)
    if (m < 2) fail("torsion", "torsion invariant factors must be >= 2, got " + m.get_str());
  if (fan.rays.empty()) fail("rays", "no ray vectors");
  if (fan.cones.empty()) fail("cones", "no maximal cones");
  const std::size_t coords = fan.coordinates();
  for (std::size_t i = 0; i < fan.r(); ++i)
    if (fan.b(i).size() != coords)
      fail("vector arity", "b_" + std::to_string(i + 1) + " has " + std::to_string(fan.b(i).size()) +
                               " coordinates, expected " + std::to_string(coords));
  if (!out.empty()) return out;

  std::set<Cone> seen;
  std::vector<bool> used(fan.r_prime(), false);
  bool cones_ok = true;
  for (std::size_t c = 0; c < fan.cones.size(); ++c) {
    const Cone& cone = fan.cones[c];
    std::string name = "cone " + std::to_string(c + 1);
    bool ok = true;
    for (int i : cone)
      if (i < 0 || static_cast<std::size_t>(i) >= fan.r_prime()) {
        fail("cone index", name + " references a ray index outside 1.." + std::to_string(fan.r_prime()));
        ok = false;
      }
    if (!ok) {
      cones_ok = false;
      continue;
    }
    if (!std::is_sorted(cone.begin(), cone.end()) || cone[0] == cone[1] || cone[1] == cone[2]) {
      fail("cone arity", name + " must list three distinct rays");
      cones_ok = false;
      continue;
    }
    if (!seen.insert(cone).second) fail("duplicate cone", name + " is listed twice");
    for (int i : cone) used[static_cast<std::size_t>(i)] = true;
    if (determinant(cone_matrix(fan, c)) == 0) {
      fail("simplicial", name + " is not 3-dimensional simplicial");
      cones_ok = false;
    }
  }
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) fail("ray unused", "ray b_" + std::to_string(i + 1) + " lies in no maximal cone");

  SmithForm snf = smith_normal_form(presentation(fan));
  bool surjective = true;
  for (std::size_t t = 0; t < coords; ++t)
    if (t >= snf.S.cols() || abs(snf.S(t, t)) != 1) surjective = false;
  if (!surjective) fail("surjectivity", "b_1..b_r do not generate N");

  auto h = cy_functional(fan);
  if (!h) {
    fail("calabi-yau", "no linear functional takes the value 1 on every b_i");
  } else {
    for (const auto& x : *h)
      if (x.get_den() != 1) {
        fail("calabi-yau", "the functional taking value 1 on every b_i is not integral");
        break;
      }
  }
  if (!cones_ok || !h) return out;

  auto pts = plane_points(fan, *h);
  for (std::size_t a = 0; a < fan.cones.size(); ++a)
    for (std::size_t b = a + 1; b < fan.cones.size(); ++b) {
      std::array<Point2, 3> ta, tb;
      for (int j = 0; j < 3; ++j) {
        ta[j] = pts[static_cast<std::size_t>(fan.cones[a][j])];
        tb[j] = pts[static_cast<std::size_t>(fan.cones[b][j])];
      }
      if (interiors_overlap(ta, tb))
        fail("fan overlap", "cones " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " overlap");
    }
  for (std::size_t e = fan.r_prime(); e < fan.r(); ++e) {
    bool inside = false;
    auto b = free_part(fan, e);
    for (std::size_t c = 0; c < fan.cones.size() && !inside; ++c) {
      auto w = mat_vec(inverse(cone_matrix(fan, c)), b);
      inside = std::all_of(w.begin(), w.end(), [](const Rational& x) { return x >= 0; });
    }
    if (!inside) fail("extra vector", "b_" + std::to_string(e + 1) + " lies outside the support of the fan");
  }
  return out;
}

void validate_fan(const StackyFan& fan) {
  auto d = check_fan(fan);
  if (!d.empty()) throw InvalidInput(std::move(d));
}

// ---------------------------------------------------------------- charge data

IntMatrix charge_matrix(const StackyFan& fan) {
  const std::size_t r = fan.r();
  IntMatrix ker = integer_kernel(presentation(fan));
  IntMatrix proj(ker.rows(), r);
  for (std::size_t a = 0; a < ker.rows(); ++a)
    for (std::size_t i = 0; i < r; ++i) proj(a, i) = ker(a, i);
  IntMatrix h = hermite_normal_form(proj);
  if (h.rows() != fan.k()) throw InvalidInput("surjectivity", "charge lattice has unexpected rank");
  std::vector<std::vector<Integer>> rows;
  for (std::size_t a = 0; a < h.rows(); ++a) rows.push_back(h.row(a));
  std::sort(rows.begin(), rows.end());
  return IntMatrix::from_rows(rows, r);
}

std::string AbelianGroup::to_string() const {
  std::vector<std::string> parts;
  for (const auto& m : invariants) parts.push_back("Z/" + m.get_str());
  for (long i = 0; i < free_rank; ++i) parts.push_back("Z");
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

Integer AbelianGroup::order() const {
  if (free_rank > 0) return 0;
  Integer o(1);
  for (const auto& m : invariants) o *= m;
  return o;
}

AbelianGroup picard_cokernel(const StackyFan& fan) {
  IntMatrix l = charge_matrix(fan);
  const std::size_t k = l.rows(), extra = fan.r() - fan.r_prime();
  AbelianGroup g;
  if (k == 0) return g;
  IntMatrix m(k, extra);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t j = 0; j < extra; ++j) m(a, j) = l(a, fan.r_prime() + j);
  std::size_t rk = 0;
  if (extra > 0) {
    SmithForm snf = smith_normal_form(m);
    for (std::size_t t = 0; t < std::min(k, extra); ++t) {
      if (snf.S(t, t) == 0) break;
      ++rk;
      if (snf.S(t, t) > 1) g.invariants.push_back(snf.S(t, t));
    }
  }
  g.free_rank = static_cast<long>(k - rk);
  return g;
}

// ---------------------------------------------------------------- Box

Rational BoxElement::weight(const StackyFan& fan, std::size_t ray) const {
  const Cone& c3 = fan.cones.at(cone);
  for (int j = 0; j < 3; ++j)
    if (static_cast<std::size_t>(c3[j]) == ray) return c[j];
  return 0;
}

std::vector<BoxElement> box_elements(const StackyFan& fan, std::size_t cone) {
  RatMatrix b = cone_matrix(fan, cone);
  if (determinant(b) == 0) throw std::invalid_argument("cone is not simplicial");
  RatMatrix binv = inverse(b);
  IntMatrix bi(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) bi(i, j) = b(i, j).get_num();
  SmithForm snf = smith_normal_form(bi);
  RatMatrix uinv = inverse(to_rational(snf.U));

  std::set<std::vector<Integer>> free_parts;
  std::vector<Integer> x(3, Integer(0));
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == 3) {
      std::vector<Rational> xr = {Rational(x[0]), Rational(x[1]), Rational(x[2])};
      auto c = mat_vec(binv, mat_vec(uinv, xr));
      for (auto& ci : c) ci = frac(ci);
      auto v = mat_vec(b, c);
      free_parts.insert(std::vector<Integer>{Integer(v[0].get_num()), Integer(v[1].get_num()), Integer(v[2].get_num())});
      return;
    }
    Integer s = abs(snf.S(i, i));
    for (x[i] = 0; x[i] < s; ++x[i]) rec(i + 1);
    x[i] = 0;
  };
  rec(0);

  std::vector<std::vector<Integer>> torsion_parts = {{}};
  for (const auto& m : fan.torsion) {
    std::vector<std::vector<Integer>> next;
    for (const auto& t : torsion_parts)
      for (Integer j = 0; j < m; ++j) {
        auto u = t;
        u.push_back(j);
        next.push_back(std::move(u));
      }
    torsion_parts = std::move(next);
  }

  std::vector<BoxElement> out;
  for (const auto& fp : free_parts) {
    std::vector<Rational> vr = {Rational(fp[0]), Rational(fp[1]), Rational(fp[2])};
    auto c = mat_vec(binv, vr);
    for (const auto& t : torsion_parts) {
      BoxElement e;
      e.v = fp;
      e.v.insert(e.v.end(), t.begin(), t.end());
      e.cone = cone;
      e.c[0] = c[0];
      e.c[1] = c[1];
      e.c[2] = c[2];
      e.age = c[0] + c[1] + c[2];
      out.push_back(std::move(e));
    }
  }
  std::sort(out.begin(), out.end(), [](const BoxElement& a, const BoxElement& b) {
    if (a.age != b.age) return a.age < b.age;
    if (a.c != b.c) return b.c < a.c;
    return a.v < b.v;
  });
  return out;
}

// ---------------------------------------------------------------- flags

FlagData flag_data(const StackyFan& fan, std::array<int, 3> orientation) {
  for (int i : orientation)
    if (i < 0 || static_cast<std::size_t>(i) >= fan.r_prime())
      throw InvalidInput("flag", "orientation index " + std::to_string(i + 1) + " is not a ray");
  auto sigma = fan.find_cone(orientation);
  if (!sigma) throw InvalidInput("flag", "the orientation triple does not span a maximal cone");
  FlagData f;
  f.sigma = *sigma;
  f.i1 = orientation[0];
  f.i2 = orientation[1];
  f.i3 = orientation[2];
  auto order_of = [&](std::size_t cone, int ray) {
    auto box = box_elements(fan, cone);
    Integer s(1), fixed(0);
    for (const auto& e : box) {
      Rational w = e.weight(fan, static_cast<std::size_t>(ray));
      s = lcm(s, w.get_den());
      if (w == 0) ++fixed;
    }
    return std::make_tuple(s.get_si(), Integer(box.size()), fixed);
  };
  auto [s1, gs, gt] = order_of(f.sigma, f.i1);
  f.s1 = s1;
  f.g_sigma = gs;
  f.g_tau = gt;
  if (Integer(f.s1) * f.g_tau != f.g_sigma) throw std::logic_error("local group sequence is not exact");
  std::vector<std::size_t> adjacent;
  for (std::size_t c = 0; c < fan.cones.size(); ++c) {
    const Cone& cn = fan.cones[c];
    if (std::count(cn.begin(), cn.end(), f.i2) && std::count(cn.begin(), cn.end(), f.i3)) adjacent.push_back(c);
  }
  if (adjacent.size() == 2) {
    f.inner = true;
    f.sigma_minus = adjacent[0] == f.sigma ? adjacent[1] : adjacent[0];
    for (int i : fan.cones[f.sigma_minus])
      if (i != f.i2 && i != f.i3) f.i4 = i;
    f.s1_minus = std::get<0>(order_of(f.sigma_minus, f.i4));
  } else if (adjacent.size() != 1) {
    throw InvalidInput("flag", "the 2-cone is a face of more than two maximal cones");
  }
  return f;
}

// ---------------------------------------------------------------- curve classes

ConeBasis cone_basis(const StackyFan& fan, const IntMatrix& charges, std::size_t cone) {
  ConeBasis cb;
  cb.cone = cone;
  const Cone& c3 = fan.cones.at(cone);
  for (std::size_t i = 0; i < fan.r(); ++i)
    if (std::find(c3.begin(), c3.end(), static_cast<int>(i)) == c3.end()) cb.p_indices.push_back(static_cast<int>(i));
  const std::size_t k = charges.rows();
  if (cb.p_indices.size() != k) throw std::logic_error("charge matrix rank does not match the cone complement");
  RatMatrix p(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) p(a, b) = Rational(charges(b, static_cast<std::size_t>(cb.p_indices[a])));
  RatMatrix pinv = inverse(p);
  cb.dual = pinv.transpose();
  return cb;
}

Rational pairing(const IntMatrix& charges, std::size_t i, const std::vector<Rational>& beta) {
  Rational s(0);
  for (std::size_t a = 0; a < charges.rows(); ++a) s += Rational(charges(a, i)) * beta[a];
  return s;
}

LatticeVector sector_vector(const StackyFan& fan, const std::vector<Rational>& pairings) {
  LatticeVector v(fan.coordinates(), Integer(0));
  for (std::size_t i = 0; i < fan.r(); ++i) {
    Integer c = ceil(pairings[i]);
    if (c == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += c * fan.b(i)[j];
  }
  return reduce(fan, v);
}

std::size_t locate_box(const std::vector<BoxElement>& box, const LatticeVector& v) {
  for (std::size_t i = 0; i < box.size(); ++i)
    if (box[i].v == v) return i;
  throw std::logic_error("sector vector is not a Box element");
}

CurveClass make_curve_class(const StackyFan& fan, const IntMatrix& charges, const ConeBasis& basis,
                            const std::vector<BoxElement>& box, const std::vector<Integer>& n) {
  const std::size_t k = charges.rows();
  CurveClass cc;
  cc.n = n;
  cc.beta.assign(k, Rational(0));
  for (std::size_t a = 0; a < k; ++a) {
    if (n[a] == 0) continue;
    for (std::size_t b = 0; b < k; ++b) cc.beta[b] += Rational(n[a]) * basis.dual(a, b);
  }
  for (std::size_t i = 0; i < fan.r(); ++i) cc.pairings.push_back(pairing(charges, i, cc.beta));
  cc.box = locate_box(box, sector_vector(fan, cc.pairings));
  return cc;
}

void for_each_bounded(std::size_t k, long total, const std::function<void(const std::vector<Integer>&)>& fn) {
  std::vector<Integer> n(k, Integer(0));
  std::function<void(std::size_t, long)> rec = [&](std::size_t pos, long remaining) {
    if (pos + 1 >= k) {
      if (k > 0) n[k - 1] = remaining;
      fn(n);
      return;
    }
    for (long v = 0; v <= remaining; ++v) {
      n[pos] = v;
      rec(pos + 1, remaining - v);
    }
    n[pos] = 0;
  };
  if (total < 0) return;
  if (k == 0) {
    fn(n);
    return;
  }
  for (long d = 0; d <= total; ++d) rec(0, d);
}

std::vector<CurveClass> k_eff_enumerate(const StackyFan& fan, std::size_t cone, const Rational& bound) {
  if (bound < 0) throw std::invalid_argument("negative weight bound");
  IntMatrix l = charge_matrix(fan);
  ConeBasis basis = cone_basis(fan, l, cone);
  auto box = box_elements(fan, cone);
  std::vector<CurveClass> out;
  for_each_bounded(l.rows(), floor(bound).get_si(),
                   [&](const std::vector<Integer>& n) { out.push_back(make_curve_class(fan, l, basis, box, n)); });
  return out;
}

LeadingDegree leading_degree(const StackyFan& fan, std::size_t i) {
  if (i < fan.r_prime() || i >= fan.r()) throw std::invalid_argument("leading_degree needs an extra vector index");
  auto b = free_part(fan, i);
  for (std::size_t c = 0; c < fan.cones.size(); ++c) {
    auto w = mat_vec(inverse(cone_matrix(fan, c)), b);
    if (!std::all_of(w.begin(), w.end(), [](const Rational& x) { return x >= 0; })) continue;
    std::vector<Rational> x(fan.r(), Rational(0));
    x[i] = 1;
    for (int j = 0; j < 3; ++j) x[static_cast<std::size_t>(fan.cones[c][j])] = -w[j];
    IntMatrix l = charge_matrix(fan);
    ConeBasis basis = cone_basis(fan, l, c);
    LeadingDegree ld;
    ld.cone = c;
    ld.beta.assign(l.rows(), Rational(0));
    for (std::size_t a = 0; a < l.rows(); ++a)
      for (std::size_t bb = 0; bb < l.rows(); ++bb)
        ld.beta[bb] += x[static_cast<std::size_t>(basis.p_indices[a])] * basis.dual(a, bb);
    for (std::size_t j = 0; j < fan.r(); ++j) ld.pairings.push_back(pairing(l, j, ld.beta));
    if (ld.pairings != x) throw std::logic_error("leading degree is not a class in the charge lattice");
    return ld;
  }
  throw std::invalid_argument("b_" + std::to_string(i + 1) + " lies in no maximal cone");
}

bool semiprojectivity_check(const StackyFan& fan) {
  auto h = cy_functional(fan);
  if (!h) throw InvalidInput("calabi-yau", "no linear functional takes the value 1 on every b_i");
  auto pts = plane_points(fan, *h);
  Rational cones_area(0);
  for (const auto& c : fan.cones)
    cones_area += abs(cross(pts[static_cast<std::size_t>(c[0])], pts[static_cast<std::size_t>(c[1])],
                            pts[static_cast<std::size_t>(c[2])]));
  std::vector<Point2> sorted = pts;
  std::sort(sorted.begin(), sorted.end(),
            [](const Point2& a, const Point2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  std::vector<Point2> hull;
  for (int pass = 0; pass < 2; ++pass) {
    std::size_t base = hull.size();
    for (const auto& p : sorted) {
      while (hull.size() >= base + 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
      hull.push_back(p);
    }
    hull.pop_back();
    std::reverse(sorted.begin(), sorted.end());
  }
  Rational hull_area(0);
  for (std::size_t j = 0; j < hull.size(); ++j) {
    const auto& p = hull[j];
    const auto& q = hull[(j + 1) % hull.size()];
    hull_area += p.x * q.y - p.y * q.x;
  }
  return abs(hull_area) == cones_area;
}

}  // namespace orbidisk
