#include "orbidisk/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace orbidisk::cli {

using nlohmann::json;

Format parse_format(const std::string& name) {
  if (name == "text") return Format::text;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw InvalidInput("format", "unknown output format '" + name + "'");
}

Command parse_command(const std::string& name) {
  static const std::map<std::string, Command> table = {{"inspect", Command::inspect},
                                                       {"amodel", Command::amodel},
                                                       {"bmodel", Command::bmodel},
                                                       {"verify", Command::verify},
                                                       {"appendix-check", Command::appendix_check}};
  auto it = table.find(name);
  if (it == table.end()) throw InvalidInput("command", "unknown command '" + name + "'");
  return it->second;
}

std::string command_name(Command c) {
  switch (c) {
    case Command::inspect: return "inspect";
    case Command::amodel: return "amodel";
    case Command::bmodel: return "bmodel";
    case Command::verify: return "verify";
    case Command::appendix_check: return "appendix-check";
  }
  return "?";
}

// ---------------------------------------------------------------- input

namespace {

struct Collector {
  std::vector<Diagnostic> diags;
  void fail(std::string inv, std::string detail) { diags.push_back({std::move(inv), std::move(detail)}); }
};

std::optional<long> as_long(const json& j) {
  if (j.is_number_integer()) return j.get<long>();
  return std::nullopt;
}

std::optional<Rational> as_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<long>> int_list(const json& j) {
  if (!j.is_array()) return std::nullopt;
  std::vector<long> out;
  for (const auto& e : j) {
    auto v = as_long(e);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

std::vector<LatticeVector> vector_list(const json& j, const std::string& key, Collector& c) {
  std::vector<LatticeVector> out;
  if (!j.is_array()) {
    c.fail(key, "'" + key + "' must be an array of integer vectors");
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto v = int_list(j[i]);
    if (!v) {
      c.fail(key, "entry " + std::to_string(i + 1) + " of '" + key + "' is not an integer vector");
      continue;
    }
    LatticeVector lv;
    for (long x : *v) lv.push_back(Integer(x));
    out.push_back(std::move(lv));
  }
  return out;
}

std::string vec_string(const LatticeVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::string rat_list(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

std::string cone_string(const Cone& c) {
  return "{" + std::to_string(c[0] + 1) + "," + std::to_string(c[1] + 1) + "," + std::to_string(c[2] + 1) + "}";
}

}  // namespace

Model parse_input(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput("syntax", std::string("malformed input document: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("syntax", "the input document must be a JSON object");
  Collector c;
  Model m;
  m.config.source = source;

  const json fan = doc.value("fan", json());
  if (!fan.is_object()) {
    c.fail("fan", "missing 'fan' section");
  } else {
    if (fan.contains("rank")) {
      auto r = as_long(fan["rank"]);
      if (!r) c.fail("rank", "'rank' must be an integer");
      else m.fan.rank = static_cast<int>(*r);
    }
    if (fan.contains("torsion")) {
      auto t = int_list(fan["torsion"]);
      if (!t) c.fail("torsion", "'torsion' must be an array of integers");
      else
        for (long x : *t) m.fan.torsion.push_back(Integer(x));
    }
    m.fan.rays = fan.contains("rays") ? vector_list(fan["rays"], "rays", c) : std::vector<LatticeVector>{};
    if (fan.contains("extras")) m.fan.extras = vector_list(fan["extras"], "extras", c);
    if (fan.contains("cones")) {
      for (const auto& v : vector_list(fan["cones"], "cones", c)) {
        if (v.size() != 3) {
          c.fail("cone arity", "cone " + vec_string(v) + " must list three rays");
          continue;
        }
        Cone cone;
        for (int i = 0; i < 3; ++i) cone[i] = static_cast<int>(v[i].get_si()) - 1;
        std::sort(cone.begin(), cone.end());
        m.fan.cones.push_back(cone);
      }
    }
  }

  const bool fan_parsed = fan.is_object() && c.diags.empty();

  const json brane = doc.value("brane", json());
  if (!brane.is_object()) {
    c.fail("brane", "missing 'brane' section");
  } else {
    auto order = brane.contains("order") ? int_list(brane["order"]) : std::nullopt;
    if (!order || order->size() != 3) {
      c.fail("brane order", "'order' must list (i1, i2, i3)");
    } else {
      for (int i = 0; i < 3; ++i) m.config.brane.order[i] = static_cast<int>((*order)[i]) - 1;
    }
    for (const char* key : {"tau", "sigma"}) {
      if (!brane.contains(key)) continue;
      auto l = int_list(brane[key]);
      if (!l) {
        c.fail(std::string("brane ") + key, std::string("'") + key + "' must be an integer array");
        continue;
      }
      std::vector<int> v;
      for (long x : *l) v.push_back(static_cast<int>(x) - 1);
      std::sort(v.begin(), v.end());
      (std::string(key) == "tau" ? m.config.brane.tau : m.config.brane.sigma) = v;
    }
    if (brane.contains("type")) {
      if (!brane["type"].is_string()) c.fail("brane type", "'type' must be \"outer\" or \"inner\"");
      else m.config.brane.type = brane["type"].get<std::string>();
    }
    if (brane.contains("framing")) {
      const json& f = brane["framing"];
      if (auto v = as_long(f)) {
        m.config.brane.framing = {*v};
      } else if (auto l = int_list(f); l && (l->size() == 1 || l->size() == 2)) {
        m.config.brane.framing = *l;
      } else {
        c.fail("framing", "'framing' must be an integer or one or two integers");
      }
    }
  }

  if (doc.contains("run")) {
    const json& run = doc["run"];
    if (run.contains("T")) {
      auto t = as_rational(run["T"]);
      if (!t || *t < 0) c.fail("truncation", "'T' must be a non-negative rational");
      else m.config.truncation = *t;
    }
    if (run.contains("M_cap")) {
      auto mc = as_long(run["M_cap"]);
      if (!mc || *mc < 1) c.fail("order cap", "'M_cap' must be a positive integer");
      else m.config.order_cap = *mc;
    }
  }

  if (fan_parsed)
    for (auto& d : check_fan(m.fan)) c.diags.push_back(std::move(d));
  if (!c.diags.empty()) throw InvalidInput(c.diags);
  return m;
}

namespace {

struct ExampleEntry {
  std::string name;
  std::vector<std::string> aliases;
  std::string document;
};

const std::vector<ExampleEntry>& registry() {
  static const std::vector<ExampleEntry> entries = {
      {"c3", {}, R"({
  "fan": {"rank": 3, "torsion": [], "rays": [[1,0,1],[0,1,1],[0,0,1]], "extras": [], "cones": [[1,2,3]]},
  "brane": {"order": [1,2,3], "framing": 0, "type": "outer"},
  "run": {"T": "5", "M_cap": 720}
})"},
      {"x111", {}, R"({
  "fan": {"rank": 3, "torsion": [], "rays": [[1,0,1],[0,1,1],[-1,-1,1]], "extras": [[0,0,1]], "cones": [[1,2,3]]},
  "brane": {"order": [1,2,3], "framing": 0, "type": "outer"},
  "run": {"T": "5", "M_cap": 720}
})"},
      {"x120", {"x012"}, R"({
  "fan": {"rank": 3, "torsion": [], "rays": [[1,0,1],[0,3,1],[0,0,1]], "extras": [[0,1,1],[0,2,1]], "cones": [[1,2,3]]},
  "brane": {"order": [1,2,3], "framing": 0, "type": "outer"},
  "run": {"T": "4", "M_cap": 720}
})"},
      {"x000", {}, R"({
  "fan": {"rank": 3, "torsion": [3], "rays": [[1,0,0,0],[0,1,0,0],[0,0,1,0]], "extras": [[1,0,0,1]], "cones": [[1,2,3]]},
  "brane": {"order": [1,2,3], "framing": 0, "type": "outer"},
  "run": {"T": "3", "M_cap": 720}
})"},
      {"kp2", {}, R"({
  "fan": {"rank": 3, "torsion": [], "rays": [[0,0,1],[1,0,1],[0,1,1],[-1,-1,1]], "extras": [],
          "cones": [[1,2,3],[1,3,4],[1,2,4]]},
  "brane": {"order": [1,2,3], "framing": 0, "type": "outer"},
  "run": {"T": "4", "M_cap": 720}
})"},
      {"conifold", {}, R"({
  "fan": {"rank": 3, "torsion": [], "rays": [[0,0,1],[1,0,1],[0,1,1],[1,1,1]], "extras": [],
          "cones": [[1,2,3],[2,3,4]]},
  "brane": {"order": [1,2,3], "framing": 0, "type": "inner"},
  "run": {"T": "3", "M_cap": 720}
})"},
      {"o3o1", {}, R"({
  "fan": {"rank": 3, "torsion": [], "rays": [[0,0,1],[1,0,1],[0,1,1],[-1,-1,1]], "extras": [],
          "cones": [[1,2,3],[1,2,4]]},
  "brane": {"order": [3,1,2], "framing": 0, "type": "inner"},
  "run": {"T": "3", "M_cap": 720}
})"},
  };
  return entries;
}

}  // namespace

std::vector<std::string> example_names() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.push_back(e.name);
  return out;
}

std::string example_document(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name || std::find(e.aliases.begin(), e.aliases.end(), name) != e.aliases.end()) return e.document;
  std::string known;
  for (const auto& n : example_names()) known += (known.empty() ? "" : ", ") + n;
  throw InvalidInput("example", "unknown example '" + name + "'; known: " + known);
}

Model load_example(const std::string& name) { return parse_input(example_document(name), name); }

Model load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("input", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_input(ss.str(), path);
}

FramedBrane build_brane(const Model& m) {
  const auto& b = m.config.brane;
  const int rp = static_cast<int>(m.fan.r_prime());
  for (int i : b.order)
    if (i < 0 || i >= rp) throw InvalidInput("brane order", "ray index " + std::to_string(i + 1) + " is out of range");
  std::vector<int> sig(b.order.begin(), b.order.end());
  std::sort(sig.begin(), sig.end());
  if (std::adjacent_find(sig.begin(), sig.end()) != sig.end())
    throw InvalidInput("brane order", "(i1, i2, i3) must be distinct");
  std::vector<int> tau = {std::min(b.order[1], b.order[2]), std::max(b.order[1], b.order[2])};
  if (b.sigma && *b.sigma != sig) throw InvalidInput("brane sigma", "'sigma' does not match the rays in 'order'");
  if (b.tau && *b.tau != tau) throw InvalidInput("brane tau", "'tau' must be {i2, i3}");
  std::optional<long> fm;
  if (b.framing.size() == 2) fm = b.framing[1];
  FramedBrane fb = make_brane(m.fan, b.order, b.framing.at(0), fm);
  if (b.type) {
    if (*b.type != "outer" && *b.type != "inner")
      throw InvalidInput("brane type", "'type' must be \"outer\" or \"inner\"");
    if ((*b.type == "inner") != fb.flag.inner)
      throw InvalidInput("brane type", "the edge tau is " + std::string(fb.flag.inner ? "inner" : "outer") +
                                           " but the input says " + *b.type);
  }
  return fb;
}

// ---------------------------------------------------------------- coefficients

std::vector<CoefficientPart> encode_coefficient(const CycloNumber& c) {
  std::vector<CoefficientPart> out;
  if (c.is_zero()) return out;
  const long m = c.field()->order();
  auto part = [m](const Rational& q, long j) {
    long g = std::gcd(j, m);
    return CoefficientPart{q, j / g, m / g};
  };
  if (auto sr = c.as_scaled_root()) {
    out.push_back(part(sr->first, sr->second));
    return out;
  }
  const auto& co = c.coefficients();
  for (std::size_t j = 0; j < co.size(); ++j)
    if (co[j] != 0) out.push_back(part(co[j], static_cast<long>(j)));
  return out;
}

CycloNumber decode_coefficient(const std::vector<CoefficientPart>& parts, const FieldPtr& field) {
  CycloNumber v(field);
  const long m = field->order();
  for (const auto& p : parts) {
    if (p.phase_den <= 0 || m % p.phase_den != 0)
      throw InvalidInput("coefficient", "phase denominator " + std::to_string(p.phase_den) + " does not divide " +
                                            std::to_string(m));
    v += CycloNumber::root_of_unity(field, p.phase_num * (m / p.phase_den)) * p.magnitude;
  }
  return v;
}

Table coefficient_table(const std::string& name, const PuiseuxSeries& f) {
  const auto& sp = *f.space();
  Table t{name, {}, {}};
  for (const auto& v : sp.variables()) t.columns.push_back(v.name);
  for (const char* c : {"num", "den", "phase_num", "phase_den"}) t.columns.push_back(c);
  for (const auto& [e, c] : f.terms()) {
    std::vector<std::string> ex;
    for (std::size_t i = 0; i < e.size(); ++i) {
      Rational q = sp.true_exponent(e, i);
      ex.push_back(sp.variable(i).name == "x" ? q.get_num().get_str() + "/" + q.get_den().get_str() : to_string(q));
    }
    for (const auto& p : encode_coefficient(c)) {
      auto row = ex;
      row.push_back(p.magnitude.get_num().get_str());
      row.push_back(p.magnitude.get_den().get_str());
      row.push_back(std::to_string(p.phase_num));
      row.push_back(std::to_string(p.phase_den));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

PuiseuxSeries decode_coefficient_table(const Table& t, const SpacePtr& space) {
  const std::size_t n = space->size();
  if (t.columns.size() != n + 4) throw InvalidInput("table", "column count does not match the series space");
  PuiseuxSeries out(space);
  for (const auto& row : t.rows) {
    if (row.size() != n + 4) throw InvalidInput("table", "ragged coefficient row");
    Exponent e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = space->scaled_exponent(parse_rational(row[i]), i);
    CoefficientPart p{ratio(Integer(row[n]), Integer(row[n + 1])), std::stol(row[n + 2]), std::stol(row[n + 3])};
    p.magnitude.canonicalize();
    out.add_term(e, out.coefficient(e) + decode_coefficient({p}, space->field()));
  }
  return out;
}

// ---------------------------------------------------------------- run

namespace {

std::string flag_string(const FlagData& f) {
  return "(" + std::to_string(f.i1 + 1) + "," + std::to_string(f.i2 + 1) + "," + std::to_string(f.i3 + 1) + ")";
}

void brane_summary(Report& r, const BraneSetup& s, const Rational& t) {
  const auto& b = s.brane;
  r.summary.push_back({"flag (i1,i2,i3)", flag_string(b.flag)});
  r.summary.push_back({"brane", b.flag.inner ? "inner" : "outer"});
  r.summary.push_back({"s1", std::to_string(b.flag.s1)});
  r.summary.push_back({"framing", std::to_string(b.f)});
  if (b.flag.inner) {
    r.summary.push_back({"framing f-", std::to_string(b.f_minus)});
    r.summary.push_back({"s1-", std::to_string(b.flag.s1_minus)});
  }
  r.summary.push_back({"root of unity order M", std::to_string(s.field->order())});
  r.summary.push_back({"truncation T", to_string(t)});
}

Table box_table(const StackyFan& fan) {
  Table t{"box", {"cone", "v", "c", "age"}, {}};
  for (std::size_t c = 0; c < fan.cones.size(); ++c)
    for (const auto& e : box_elements(fan, c))
      t.rows.push_back({cone_string(fan.cones[c]), vec_string(e.v), rat_list({e.c[0], e.c[1], e.c[2]}), to_string(e.age)});
  return t;
}

Report inspect(const Model& m) {
  Report r;
  r.command = "inspect";
  r.status = "ok";
  const StackyFan& fan = m.fan;
  r.summary.push_back({"source", m.config.source});
  r.summary.push_back({"r'", std::to_string(fan.r_prime())});
  r.summary.push_back({"r", std::to_string(fan.r())});
  r.summary.push_back({"k", std::to_string(fan.k())});
  std::string tor;
  for (const auto& x : fan.torsion) tor += (tor.empty() ? "Z/" : " + Z/") + x.get_str();
  r.summary.push_back({"torsion", tor.empty() ? "0" : tor});
  r.summary.push_back({"picard", picard_cokernel(fan).to_string()});
  r.summary.push_back({"semiprojective", semiprojectivity_check(fan) ? "yes" : "no"});

  Table rays{"vectors", {"i", "b_i", "kind"}, {}};
  for (std::size_t i = 0; i < fan.r(); ++i)
    rays.rows.push_back({std::to_string(i + 1), vec_string(fan.b(i)), i < fan.r_prime() ? "ray" : "extra"});
  r.tables.push_back(rays);

  IntMatrix l = charge_matrix(fan);
  Table ch{"charges", {"a", "l^(a)"}, {}};
  for (std::size_t a = 0; a < l.rows(); ++a) ch.rows.push_back({std::to_string(a + 1), vec_string(l.row(a))});
  r.tables.push_back(ch);

  r.primary = r.tables.size();
  r.tables.push_back(box_table(fan));

  FramedBrane fb = build_brane(m);
  BraneSetup s = prepare(fan, fb, m.config.order_cap);
  brane_summary(r, s, m.config.truncation);
  r.summary.push_back({"sigma", cone_string(fan.cones[fb.flag.sigma])});

  Table keff{"k_eff", {"n", "beta", "pairings", "v(beta)"}, {}};
  for (const auto& cc : k_eff_enumerate(fan, fb.flag.sigma, m.config.truncation)) {
    LatticeVector n(cc.n.begin(), cc.n.end());
    keff.rows.push_back({vec_string(n), rat_list(cc.beta), rat_list(cc.pairings), vec_string(s.box.at(cc.box).v)});
  }
  r.tables.push_back(keff);

  IntMatrix ext = extended_charge_matrix(fan, fb);
  Table et{"extended charges", {"a", "row"}, {}};
  for (std::size_t a = 0; a < ext.rows(); ++a) et.rows.push_back({std::to_string(a), vec_string(ext.row(a))});
  r.tables.push_back(et);

  if (fan.r() > fan.r_prime()) {
    Table ld{"leading degrees", {"i", "cone", "D_i^dual", "pairings"}, {}};
    for (std::size_t i = fan.r_prime(); i < fan.r(); ++i) {
      auto d = leading_degree(fan, i);
      ld.rows.push_back({std::to_string(i + 1), cone_string(fan.cones[d.cone]), rat_list(d.beta), rat_list(d.pairings)});
    }
    r.tables.push_back(ld);
  }
  return r;
}

Report amodel(const Model& m) {
  Report r;
  r.command = "amodel";
  r.status = "ok";
  FramedBrane fb = build_brane(m);
  BraneSetup s = prepare(m.fan, fb, m.config.order_cap);
  const Rational& t = m.config.truncation;
  brane_summary(r, s, t);
  APotential a = disk_potential_A(s, t);
  r.summary.push_back({"terms", std::to_string(a.assembled.terms().size())});

  r.primary = 0;
  r.tables.push_back(coefficient_table("assembled W", a.assembled));
  Table chi{"sqrt chi", {"v", "num", "den", "phase_num", "phase_den"}, {}};
  for (std::size_t v = 0; v < s.box.size(); ++v) {
    for (const auto& p : encode_coefficient(character_sqrt(s, s.box[v])))
      chi.rows.push_back({vec_string(s.box[v].v), p.magnitude.get_num().get_str(), p.magnitude.get_den().get_str(),
                          std::to_string(p.phase_num), std::to_string(p.phase_den)});
  }
  r.tables.push_back(chi);
  for (std::size_t v = 0; v < s.box.size(); ++v)
    r.tables.push_back(coefficient_table("W_v v=" + vec_string(s.box[v].v), a.sectors[v]));

  if (!m.fan.torsion.empty()) {
    r.summary.push_back({"mirror maps", "skipped: torsion unsupported in mirror pipeline"});
  } else {
    MirrorMaps mm = mirror_maps(s, t);
    for (std::size_t a2 = 0; a2 < mm.closed.size(); ++a2)
      r.tables.push_back(coefficient_table(
          std::string("tau_") + std::to_string(a2 + 1) + (mm.has_log[a2] ? " - log q" + std::to_string(a2 + 1) : ""),
          mm.closed[a2]));
    r.tables.push_back(coefficient_table("log X - log x", mm.open));
  }
  return r;
}

Report bmodel(const Model& m) {
  Report r;
  r.command = "bmodel";
  r.status = "ok";
  if (!m.fan.torsion.empty()) throw InvalidInput("torsion", "torsion unsupported in mirror pipeline");
  FramedBrane fb = build_brane(m);
  BraneSetup s = prepare(m.fan, fb, m.config.order_cap);
  const Rational& t = m.config.truncation;
  brane_summary(r, s, t);
  MirrorCurve c = build_curve(s);
  BPotential b = w_h_inst(s, c, t, Solver::newton);
  r.summary.push_back({"terms", std::to_string(b.inst.terms().size())});
  r.primary = 0;
  r.tables.push_back(coefficient_table("W_H,inst", b.inst));
  Table curve{"curve", {"a", "epsilon_a", "tq_a in (x,q)"}, {}};
  for (std::size_t a = 0; a < c.epsilon.size(); ++a) curve.rows.push_back({std::to_string(a), to_string(c.epsilon[a]), rat_list(c.to_xq.row(a))});
  r.tables.push_back(curve);
  r.tables.push_back(coefficient_table("log term", b.log_term));
  return r;
}

Report verify(const Model& m) {
  Report r;
  r.command = "verify";
  FramedBrane fb = build_brane(m);
  const Rational& t = m.config.truncation;
  VerifyOptions opt;
  opt.order_cap = m.config.order_cap;
  opt.perturb = m.config.perturb;
  VerifyReport v = verify_identity(m.fan, fb, t, opt);
  if (v.status == VerifyReport::Status::refused) throw InvalidInput(v.refusal_invariant, v.refusal_detail);
  BraneSetup s = prepare(m.fan, fb, m.config.order_cap);
  brane_summary(r, s, t);
  const bool equal = v.status == VerifyReport::Status::equal;
  r.status = equal ? "equal" : "mismatch";
  r.exit_code = equal ? 0 : 1;
  r.summary.push_back({"A-side terms", std::to_string(v.a_terms)});
  r.summary.push_back({"B-side terms", std::to_string(v.b_terms)});
  r.summary.push_back({"monomials compared", std::to_string(v.compared)});
  r.summary.push_back({"mismatches", std::to_string(v.mismatches)});
  r.summary.push_back({"closed form equals Newton", v.closed_matches_newton ? "yes" : "no"});
  if (opt.perturb) r.summary.push_back({"perturbed monomial", rat_list(*opt.perturb)});
  if (v.first_mismatch) {
    r.summary.push_back({"first mismatch", rat_list(v.first_mismatch->exponent)});
    r.summary.push_back({"first mismatch A", v.first_mismatch->a_side.to_string()});
    r.summary.push_back({"first mismatch B", v.first_mismatch->b_side.to_string()});
  }
  Table cmp = coefficient_table("W", *v.a_side);
  cmp.columns.push_back("equal");
  const auto& sp = *v.a_side->space();
  for (auto& row : cmp.rows) {
    Exponent e(sp.size());
    for (std::size_t i = 0; i < sp.size(); ++i) e[i] = sp.scaled_exponent(parse_rational(row[i]), i);
    row.push_back(v.a_side->coefficient(e) == v.b_side->coefficient(e) ? "true" : "false");
  }
  // monomials only the B side produced
  for (const auto& [e, c] : v.b_side->terms()) {
    if (!v.a_side->coefficient(e).is_zero()) continue;
    PuiseuxSeries one(v.b_side->space());
    one.add_term(e, c);
    for (auto row : coefficient_table("", one).rows) {
      row[sp.size()] = "0";
      row[sp.size() + 1] = "1";
      row[sp.size() + 2] = "0";
      row[sp.size() + 3] = "1";
      row.push_back("false");
      cmp.rows.push_back(std::move(row));
    }
  }
  r.primary = 0;
  r.tables.push_back(cmp);
  r.tables.push_back(coefficient_table("W_H,inst", *v.b_side));
  return r;
}

Report appendix_check(const Model& m) {
  Report r;
  r.command = "appendix-check";
  Table inst{"instances", {"id", "epsilon", "T", "terms", "equal"}, {}};
  bool all = true;
  FieldPtr field = CyclotomicField::create(2);
  auto check = [&](const std::string& id, const std::vector<Rational>& eps, const Rational& t) {
    std::vector<Variable> vars;
    for (std::size_t a = 0; a < eps.size(); ++a) vars.push_back({"s" + std::to_string(a + 1), 1, Rational(1), false});
    SpacePtr sp = SeriesSpace::make(vars, t, field);
    PuiseuxSeries c = exp_poly_closed(eps, sp), n = exp_poly_newton(eps, sp);
    const bool eq = c == n;
    all = all && eq;
    inst.rows.push_back({id, rat_list(eps), to_string(t), std::to_string(c.terms().size()), eq ? "true" : "false"});
    return c;
  };
  // single variable with exponent 0 solves to log(1 + s)
  {
    const Rational t(6);
    PuiseuxSeries v = check("log(1+s)", {Rational(0)}, t);
    SpacePtr sp = v.space();
    PuiseuxSeries ref = log(PuiseuxSeries::constant(sp, 1) + PuiseuxSeries::variable(sp, 0));
    const bool eq = v == ref;
    all = all && eq;
    r.summary.push_back({"log(1+s) reproduced", eq ? "yes" : "no"});
  }
  // the loaded example's own curve
  if (m.fan.torsion.empty()) {
    FramedBrane fb = build_brane(m);
    BraneSetup s = prepare(m.fan, fb, m.config.order_cap);
    MirrorCurve c = build_curve(s);
    SpacePtr sp = tq_space(c, tq_truncation(s, c, m.config.truncation), s.field);
    const bool eq = solve_log_y_closed(c, sp) == solve_log_y_newton(c, sp);
    all = all && eq;
    inst.rows.push_back({"curve", rat_list(c.epsilon), to_string(*sp->truncation()), "-", eq ? "true" : "false"});
  }
  std::mt19937_64 rng(20240521);
  for (int i = 0; i < 20; ++i) {
    std::uniform_int_distribution<int> kd(1, 3), dd(1, 4), td(1, 5);
    const int k = kd(rng);
    std::vector<Rational> eps;
    for (int a = 0; a < k; ++a) {
      const int den = dd(rng);
      std::uniform_int_distribution<int> nd(-2 * den, 2 * den);
      Rational q(nd(rng), den);
      q.canonicalize();
      eps.push_back(q);
    }
    check("random " + std::to_string(i + 1), eps, Rational(td(rng)));
  }
  r.status = all ? "equal" : "mismatch";
  r.exit_code = all ? 0 : 1;
  r.summary.push_back({"instances", std::to_string(inst.rows.size())});
  r.primary = 0;
  r.tables.push_back(inst);
  return r;
}

}  // namespace

Report invalid_report(Command command, const std::vector<Diagnostic>& diagnostics) {
  Report r;
  r.command = command_name(command);
  r.status = "invalid";
  r.exit_code = 2;
  Table t{"diagnostics", {"invariant", "detail"}, {}};
  for (const auto& d : diagnostics) t.rows.push_back({d.invariant, d.detail});
  r.tables.push_back(t);
  return r;
}

Report run(Command command, const Model& model) {
  try {
    switch (command) {
      case Command::inspect: return inspect(model);
      case Command::amodel: return amodel(model);
      case Command::bmodel: return bmodel(model);
      case Command::verify: return verify(model);
      case Command::appendix_check: return appendix_check(model);
    }
  } catch (const InvalidInput& e) {
    return invalid_report(command, e.diagnostics());
  } catch (const OrderError& e) {
    return invalid_report(command, {{"order", e.what()}});
  }
  return invalid_report(command, {{"command", "unknown command"}});
}

// ---------------------------------------------------------------- output

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void csv_row(std::ostream& o, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) o << (i ? "," : "") << csv_field(row[i]);
  o << "\n";
}

void text_table(std::ostream& o, const Table& t) {
  o << "[" << t.name << "]\n";
  std::vector<std::size_t> w(t.columns.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = t.columns[i].size();
  for (const auto& row : t.rows)
    for (std::size_t i = 0; i < row.size() && i < w.size(); ++i) w[i] = std::max(w[i], row[i].size());
  auto line = [&](const std::vector<std::string>& row) {
    std::string s;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::string cell = row[i];
      if (i + 1 < row.size()) cell.resize(std::max(w[i], cell.size()), ' ');
      s += (i ? "  " : "") + cell;
    }
    o << s << "\n";
  };
  line(t.columns);
  for (const auto& row : t.rows) line(row);
  if (t.rows.empty()) o << "(none)\n";
}

}  // namespace

json report_to_json(const Report& r) {
  json j;
  j["command"] = r.command;
  j["status"] = r.status;
  j["exit_code"] = r.exit_code;
  j["summary"] = json::array();
  for (const auto& [k, v] : r.summary) j["summary"].push_back({{"key", k}, {"value", v}});
  j["tables"] = json::array();
  for (const auto& t : r.tables) j["tables"].push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}});
  j["primary"] = r.primary;
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.exit_code = j.at("exit_code").get<int>();
  for (const auto& e : j.at("summary")) r.summary.emplace_back(e.at("key").get<std::string>(), e.at("value").get<std::string>());
  for (const auto& t : j.at("tables"))
    r.tables.push_back({t.at("name").get<std::string>(), t.at("columns").get<std::vector<std::string>>(),
                        t.at("rows").get<std::vector<std::vector<std::string>>>()});
  r.primary = j.at("primary").get<std::size_t>();
  return r;
}

std::string emit_report(const Report& r, Format format) {
  std::ostringstream o;
  switch (format) {
    case Format::json: o << report_to_json(r).dump(2) << "\n"; break;
    case Format::csv:
      if (r.primary < r.tables.size()) {
        csv_row(o, r.tables[r.primary].columns);
        for (const auto& row : r.tables[r.primary].rows) csv_row(o, row);
      }
      break;
    case Format::text:
      o << "command: " << r.command << "\nstatus: " << r.status << "\n";
      for (const auto& [k, v] : r.summary) o << k << ": " << v << "\n";
      for (const auto& t : r.tables) {
        o << "\n";
        text_table(o, t);
      }
      break;
  }
  return o.str();
}

int execute(const Invocation& inv, std::ostream& out, std::ostream& err) {
  Report r;
  try {
    if (inv.example.has_value() == inv.input.has_value())
      throw InvalidInput("input", "exactly one of --example or --input is required");
    Model m = inv.example ? load_example(*inv.example) : load_file(*inv.input);
    if (inv.framing) {
      std::vector<long> f;
      std::stringstream ss(*inv.framing);
      std::string part;
      while (std::getline(ss, part, ',')) {
        std::size_t used = 0;
        long v = 0;
        try {
          v = std::stol(part, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != part.size()) throw InvalidInput("framing", "framing must be int or int,int");
        f.push_back(v);
      }
      if (f.empty() || f.size() > 2) throw InvalidInput("framing", "framing must be int or int,int");
      m.config.brane.framing = f;
    }
    if (inv.max_degree) {
      Rational t;
      try {
        t = parse_rational(*inv.max_degree);
      } catch (const std::exception&) {
        throw InvalidInput("truncation", "--max-degree must be a rational p or p/q");
      }
      if (t < 0) throw InvalidInput("truncation", "--max-degree must be non-negative");
      m.config.truncation = t;
    }
    if (inv.perturb) {
      std::vector<Rational> e;
      std::stringstream ss(*inv.perturb);
      std::string part;
      try {
        while (std::getline(ss, part, ',')) e.push_back(parse_rational(part));
      } catch (const std::exception&) {
        throw InvalidInput("perturb", "--perturb takes comma separated exponents of x, q_1, ..");
      }
      m.config.perturb = e;
    }
    m.config.format = inv.format;
    r = run(inv.command, m);
  } catch (const InvalidInput& e) {
    r = invalid_report(inv.command, e.diagnostics());
  }
  if (r.status == "invalid")
    for (const auto& row : r.tables.front().rows) err << "error: " << row[0] << ": " << row[1] << "\n";
  out << emit_report(r, inv.format);
  return r.exit_code;
}

}  // namespace orbidisk::cli
