#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "orbidisk/bmodel.hpp"

namespace orbidisk::cli {

enum class Format { text, json, csv };
Format parse_format(const std::string& name);

enum class Command { inspect, amodel, bmodel, verify, appendix_check };
Command parse_command(const std::string& name);
std::string command_name(Command c);

struct BraneSpec {
  std::array<int, 3> order{};  // (i1, i2, i3), 0-based
  std::optional<std::vector<int>> tau, sigma;
  std::optional<std::string> type;  // "outer" | "inner"
  std::vector<long> framing{0};
};

struct RunConfig {
  std::string source;  // example name or file path
  BraneSpec brane;
  Rational truncation = 4;
  long order_cap = default_order_cap;
  Format format = Format::text;
  // verify only: adds 1 to the A-side coefficient of this (x, q) monomial
  std::optional<std::vector<Rational>> perturb;
};

struct Model {
  StackyFan fan;
  RunConfig config;
};

// Parses the JSON input document. Throws InvalidInput carrying every diagnostic found.
Model parse_input(const std::string& text, const std::string& source = "<input>");

std::vector<std::string> example_names();
// Accepts aliases; throws InvalidInput for unknown names.
std::string example_document(const std::string& name);
Model load_example(const std::string& name);
Model load_file(const std::string& path);

// Validates the brane section against the fan and builds the framed brane.
FramedBrane build_brane(const Model& m);

// One rendered coefficient: magnitude * exp(2 pi i phase_num / phase_den).
struct CoefficientPart {
  Rational magnitude;
  long phase_num = 0;
  long phase_den = 1;
};
// A single part when the value is a rational multiple of a root of unity, else one part per basis power.
std::vector<CoefficientPart> encode_coefficient(const CycloNumber& c);
CycloNumber decode_coefficient(const std::vector<CoefficientPart>& parts, const FieldPtr& field);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  friend bool operator==(const Table&, const Table&) = default;
};

struct Report {
  std::string command;
  std::string status;  // "ok", "equal", "mismatch", "invalid"
  int exit_code = 0;
  std::vector<std::pair<std::string, std::string>> summary;
  std::vector<Table> tables;
  std::size_t primary = 0;  // table written by the csv format
  friend bool operator==(const Report&, const Report&) = default;
};

// Coefficient table: exponent columns (x as p/q, then q_a), then num, den, phase_num, phase_den.
Table coefficient_table(const std::string& name, const PuiseuxSeries& f);
// Inverse of coefficient_table for a series space with matching variables.
PuiseuxSeries decode_coefficient_table(const Table& t, const SpacePtr& space);

Report run(Command command, const Model& model);
Report invalid_report(Command command, const std::vector<Diagnostic>& diagnostics);

std::string emit_report(const Report& report, Format format);
nlohmann::json report_to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

struct Invocation {
  Command command = Command::inspect;
  std::optional<std::string> example, input;
  std::optional<std::string> framing, max_degree, perturb;
  Format format = Format::text;
};
// Loads, applies command-line overrides, runs and prints. Returns the exit code.
int execute(const Invocation& inv, std::ostream& out, std::ostream& err);

}  // namespace orbidisk::cli
