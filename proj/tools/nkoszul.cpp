// nkoszul <command> <file...> [--nmax K] [--imax K] [--seed S] [--field rational|gf:P] [--json]
//
// Exit codes: 0 success, 1 bad input, 2 internal inconsistency.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nkoszul/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Koszul N-complexes of N-homogeneous algebras"};
  std::string command;
  std::vector<std::string> files;
  nkoszul::Options opt;
  bool json = false;
  long nmax = 0, degree = 0, p = 0, r = 0;
  std::string field;

  std::string commands;
  for (const auto& c : nkoszul::command_names()) commands += (commands.empty() ? "" : ", ") + c;
  app.add_option("command", command, "one of: " + commands)->required();
  app.add_option("files", files, "algebra definition files")->required();
  auto* nmax_opt = app.add_option("--nmax", nmax, "largest total degree (default 2N+2)");
  app.add_option("--imax", opt.imax, "largest homological degree (default 4)");
  app.add_option("--seed", opt.seed, "seed recorded in the report (default 0)");
  auto* field_opt = app.add_option("--field", field, "rational or gf:P, overrides the definition files");
  auto* degree_opt = app.add_option("--degree", degree, "single total degree for koszul-complex and homology");
  auto* p_opt = app.add_option("--p", p, "p of the contracted complex C_{p,r} (default N-1)");
  auto* r_opt = app.add_option("--r", r, "r of C_{p,r} (default 0), or the shift for lemma3 (default 1)");
  app.add_flag("--json", json, "print the report as JSON");
  app.add_flag("--timing", opt.timing, "add wall-clock time to the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (*nmax_opt) opt.nmax = nmax;
  if (*field_opt) opt.field = field;
  if (*degree_opt) opt.degree = degree;
  if (*p_opt) opt.p = p;
  if (*r_opt) opt.r = r;

  try {
    const auto report = nkoszul::run(command, files, opt);
    std::cout << (json ? nkoszul::render_json(report) : nkoszul::render_text(report));
    return 0;
  } catch (const nkoszul::ContractViolation& e) {
    std::cerr << "internal error (this is a bug in nkoszul): " << e.what() << "\n";
    return 2;
  } catch (const nkoszul::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
