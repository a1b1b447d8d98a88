#include <iostream>

#include <CLI11.hpp>

#include "orbidisk/cli.hpp"

int main(int argc, char** argv) {
  using namespace orbidisk::cli;
  CLI::App app{"orbidisk: exact orbifold disk potentials and the open mirror identity"};
  app.require_subcommand(1);
  Invocation inv;
  std::string format = "text";

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"inspect", "print Box, age, charge and K_eff tables"},
      {"amodel", "A-side pulled-back disk potential"},
      {"bmodel", "B-side instanton superpotential from the mirror curve"},
      {"verify", "compare both sides monomial by monomial"},
      {"appendix-check", "closed form against Newton on the exponential polynomial"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    auto* ex = sub->add_option("--example", inv.example, "built-in example name");
    auto* in = sub->add_option("--input", inv.input, "input document (JSON)");
    ex->excludes(in);
    sub->add_option("--framing", inv.framing, "f or f+,f-");
    sub->add_option("--max-degree", inv.max_degree, "truncation T (rational)");
    if (name == "verify")
      sub->add_option("--perturb", inv.perturb, "negative control: add 1 to the A-side coefficient at x,q1,..");
    sub->add_option("--format", format, "text|json|csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->callback([&inv, name = name] { inv.command = parse_command(name); });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  inv.format = parse_format(format);
  return execute(inv, std::cout, std::cerr);
}
