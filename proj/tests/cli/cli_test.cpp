#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "orbidisk/cli.hpp"

using namespace orbidisk;
using namespace orbidisk::cli;

namespace {

std::vector<Diagnostic> diagnostics_of(const std::string& text) {
  try {
    parse_input(text);
  } catch (const InvalidInput& e) {
    return e.diagnostics();
  }
  return {};
}

bool mentions(const std::vector<Diagnostic>& d, const std::string& inv) {
  for (const auto& x : d)
    if (x.invariant == inv) return true;
  return false;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int exec(Invocation inv, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  int code = execute(inv, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

Invocation example(Command c, const std::string& name) {
  Invocation inv;
  inv.command = c;
  inv.example = name;
  return inv;
}

}  // namespace

TEST(Input, ExamplesParse) {
  for (const auto& n : example_names()) {
    Model m = load_example(n);
    EXPECT_TRUE(check_fan(m.fan).empty()) << n;
  }
  EXPECT_EQ(load_example("x012").fan.rays, load_example("x120").fan.rays);
  EXPECT_EQ(load_example("x111").config.truncation, 5);
  EXPECT_THROW(load_example("nosuch"), InvalidInput);
}

TEST(Input, OneBasedIndices) {
  Model m = parse_input(R"({"fan":{"rank":3,"rays":[[1,0,1],[0,1,1],[0,0,1]],"cones":[[1,2,3]]},
                           "brane":{"order":[2,3,1],"framing":[2]},"run":{"T":"7/2"}})");
  EXPECT_EQ(m.config.brane.order, (std::array<int, 3>{1, 2, 0}));
  EXPECT_EQ(m.config.brane.framing, std::vector<long>{2});
  EXPECT_EQ(m.config.truncation, Rational(7, 2));
  EXPECT_EQ(m.fan.cones.front(), (Cone{0, 1, 2}));
  EXPECT_EQ(build_brane(m).f, 2);
}

TEST(Input, Diagnostics) {
  EXPECT_TRUE(mentions(diagnostics_of("{"), "syntax"));
  EXPECT_TRUE(mentions(diagnostics_of("[1]"), "syntax"));
  auto d = diagnostics_of(R"({"fan":{"rank":3,"rays":[[1,0,1],[0,1,1],[0,0,1]]},"brane":{"order":[1,2,3]}})");
  ASSERT_TRUE(mentions(d, "cones"));
  auto multi = diagnostics_of(R"({"fan":{"rank":"x","rays":[[1,0,1]]},"brane":{"order":[1,2]},"run":{"T":"-1"}})");
  EXPECT_TRUE(mentions(multi, "rank"));
  EXPECT_TRUE(mentions(multi, "brane order"));
  EXPECT_TRUE(mentions(multi, "truncation"));
  EXPECT_TRUE(mentions(diagnostics_of(R"({"brane":{"order":[1,2,3]}})"), "fan"));
  auto cy = diagnostics_of(R"({"fan":{"rank":3,"rays":[[1,0,0],[0,1,0],[1,1,2]],"cones":[[1,2,3]]},
                               "brane":{"order":[1,2,3]}})");
  EXPECT_TRUE(mentions(cy, "calabi-yau"));
}

TEST(Input, BraneChecks) {
  Model m = load_example("x111");
  m.config.brane.order = {0, 0, 1};
  EXPECT_THROW(build_brane(m), InvalidInput);
  m = load_example("x111");
  m.config.brane.type = "inner";
  EXPECT_THROW(build_brane(m), InvalidInput);
  m = load_example("conifold");
  FramedBrane b = build_brane(m);
  m.config.brane.framing = {0, b.f_minus + 1};
  EXPECT_THROW(build_brane(m), InvalidInput);
}

TEST(Coefficients, EncodeRoundTrip) {
  auto field = CyclotomicField::create(12);
  std::vector<CycloNumber> values = {CycloNumber(field, 0), CycloNumber(field, Rational(-3, 4)),
                                     CycloNumber(field, 3) * phase(field, Rational(1, 3)),
                                     phase(field, Rational(1, 6)) + CycloNumber(field, 1)};
  for (const auto& v : values) EXPECT_EQ(decode_coefficient(encode_coefficient(v), field), v);
  auto p = encode_coefficient(CycloNumber(field, 3) * phase(field, Rational(1, 3)));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].magnitude, 3);
  EXPECT_EQ(p[0].phase_num, 1);
  EXPECT_EQ(p[0].phase_den, 6);
}

TEST(Csv, X111Row) {
  Invocation inv = example(Command::amodel, "x111");
  inv.max_degree = "2";
  inv.format = Format::csv;
  std::string out;
  ASSERT_EQ(exec(inv, &out), 0);
  EXPECT_EQ(out.substr(0, out.find('\n')), "x,q1,num,den,phase_num,phase_den");
  EXPECT_NE(out.find("\n1/1,1,3,1,1,6\n"), std::string::npos);
}

TEST(Json, ReportRoundTrip) {
  Model m = load_example("x111");
  m.config.truncation = 3;
  Report r = run(Command::amodel, m);
  EXPECT_EQ(report_from_json(report_to_json(r)), r);
  EXPECT_EQ(report_from_json(nlohmann::json::parse(emit_report(r, Format::json))), r);

  auto s = prepare(m.fan, build_brane(m));
  auto w = disk_potential_A(s, 3).assembled;
  EXPECT_EQ(decode_coefficient_table(coefficient_table("W", w), w.space()), w);
  EXPECT_EQ(decode_coefficient_table(r.tables.at(r.primary), w.space()), w);
}

TEST(Execute, ExitCodes) {
  EXPECT_EQ(exec(example(Command::verify, "x111")), 0);
  EXPECT_EQ(exec(example(Command::verify, "conifold")), 0);
  Invocation bad = example(Command::verify, "x111");
  bad.perturb = "1,1";
  std::string out;
  EXPECT_EQ(exec(bad, &out), 1);
  EXPECT_NE(out.find("mismatch"), std::string::npos);
  EXPECT_EQ(exec(example(Command::verify, "x000")), 2);
  EXPECT_EQ(exec(example(Command::verify, "o3o1")), 2);
  EXPECT_EQ(exec(example(Command::inspect, "nosuch")), 2);
  Invocation f = example(Command::amodel, "c3");
  f.framing = "1,2,3";
  EXPECT_EQ(exec(f), 2);
  Invocation t = example(Command::amodel, "c3");
  t.max_degree = "-1";
  EXPECT_EQ(exec(t), 2);
  Invocation none;
  EXPECT_EQ(exec(none), 2);
  EXPECT_EQ(exec(example(Command::appendix_check, "x111")), 0);
  EXPECT_EQ(exec(example(Command::bmodel, "x000")), 2);
}

TEST(Execute, FramingOverride) {
  Invocation inv = example(Command::amodel, "c3");
  inv.framing = "1";
  inv.max_degree = "2";
  inv.format = Format::csv;
  std::string out;
  ASSERT_EQ(exec(inv, &out), 0);
  EXPECT_NE(out.find("\n1/1,-1,1,0,1\n2/1,-3,4,0,1\n"), std::string::npos) << out;
}

class Golden : public ::testing::TestWithParam<std::string> {};

TEST_P(Golden, InspectMatches) {
  std::string out;
  ASSERT_EQ(exec(example(Command::inspect, GetParam()), &out), 0);
  EXPECT_EQ(out, read_file(std::string(ORBIDISK_GOLDEN_DIR) + "/inspect_" + GetParam() + ".txt"));
}

INSTANTIATE_TEST_SUITE_P(Examples, Golden,
                         ::testing::Values("c3", "x111", "x120", "x000", "kp2", "conifold", "o3o1"));
