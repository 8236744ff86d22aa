#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qks/workbench.hpp"

using namespace qks;

namespace {

struct CaseOptions {
  std::string id;
  int n = 0;
  int k = 0;
  std::string q;
  std::string localization;
};

void add_case_options(CLI::App* cmd, CaseOptions& o) {
  cmd->add_option("--case", o.id, "catalog case: 0, i, ii, iii, iv")->required();
  cmd->add_option("--n", o.n, "group parameter n");
  cmd->add_option("--k", o.k, "order of q in case i");
  cmd->add_option("--q", o.q, "rational q in case i (not a root of unity)");
  cmd->add_option("--localization", o.localization, "none, torus, denominator, torus+denominator");
}

CaseSpec case_from(const CaseOptions& o, std::optional<Localization> fallback = std::nullopt) {
  CaseParams p;
  p.id = o.id;
  p.n = o.n;
  p.k = o.k;
  if (!o.q.empty()) p.q = parse_rational(o.q);
  if (!o.localization.empty()) p.localization = parse_localization(o.localization);
  else p.localization = fallback;
  return make_case(p);
}

// "name=value,name=value" with values in the case's cyclotomic field.
std::map<std::string, Cyclotomic> parse_point(const std::string& text, long conductor) {
  std::map<std::string, Cyclotomic> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(start, end - start);
    auto eq = item.find('=');
    if (eq == std::string::npos) throw usage_error("point entry '" + item + "' is not name=value");
    std::string name = item.substr(0, eq);
    name.erase(0, name.find_first_not_of(' '));
    name.erase(name.find_last_not_of(' ') + 1);
    out[name] = Cyclotomic::parse(item.substr(eq + 1), conductor);
    start = end + 1;
  }
  return out;
}

std::string molien_kind(const std::string& id) {
  if (id == "iii" || id == "dihedral") return "dihedral";
  if (id == "i" || id == "cyclic") return "cyclic";
  if (id == "trivial") return "trivial";
  throw usage_error("molien case must be dihedral (iii), cyclic (i) or trivial");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qks: exact workbench for skew group rings of quantum Kleinian pairs"};
  app.require_subcommand(1);
  std::string format = "human";
  std::string out;
  app.add_option("--format", format, "human or json")->check(CLI::IsMember({"human", "json"}));
  app.add_option("--out", out, "output path (stdout when omitted)");

  CaseOptions co;
  int degree = 4, guard = 6, samples = 25, m = 2;
  std::uint64_t seed = 1;
  std::string point;

  auto* center = app.add_subcommand("center", "graded center of A#G up to a degree");
  add_case_options(center, co);
  center->add_option("--degree", degree)->required();

  auto* invariants = app.add_subcommand("invariants", "graded invariant ring A^G up to a degree");
  add_case_options(invariants, co);
  invariants->add_option("--degree", degree)->required();

  auto* molien = app.add_subcommand("molien", "Molien series against closed form and invariant counts");
  molien->add_option("--case", co.id, "dihedral (iii), cyclic (i) or trivial")->required();
  molien->add_option("--m", m, "group parameter")->required();
  molien->add_option("--degree", degree)->required();

  auto* fiber = app.add_subcommand("fiber", "fiber algebra T/mT at one central point");
  add_case_options(fiber, co);
  fiber->add_option("--point", point, "name=value,... for central generators or sampling parameters")->required();

  auto* scan = app.add_subcommand("scan", "pointwise Azumaya scan");
  add_case_options(scan, co);
  scan->add_option("--samples", samples);
  scan->add_option("--seed", seed);

  auto* freeness = app.add_subcommand("freeness", "stabilizers of points of MaxSpec Z(A)");
  add_case_options(freeness, co);
  freeness->add_option("--samples", samples);
  freeness->add_option("--seed", seed);

  auto* auslander = app.add_subcommand("auslander", "graded check of End_{A^G}(A) = A#G");
  add_case_options(auslander, co);
  auslander->add_option("--degree", degree)->required();
  auslander->add_option("--guard", guard);

  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("--format", format, "human or json")->check(CLI::IsMember({"human", "json"}));
    sub->add_option("--out", out, "output path (stdout when omitted)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitCode::usage);
  }

  try {
    Format f = parse_format(format);
    ExitCode code = ExitCode::consistent;
    if (center->parsed()) {
      code = emit_report(center_report(case_from(co), degree), f, out);
    } else if (invariants->parsed()) {
      code = emit_report(invariants_report(case_from(co), degree), f, out);
    } else if (molien->parsed()) {
      code = emit_report(series_check(molien_kind(co.id), m, degree), f, out);
    } else if (fiber->parsed()) {
      auto c = case_from(co);
      code = emit_report(fiber_report(c, parse_point(point, c.conductor)), f, out);
    } else if (scan->parsed()) {
      code = emit_report(azumaya_scan(case_from(co), samples, seed), f, out);
    } else if (freeness->parsed()) {
      code = emit_report(freeness_scan(case_from(co), samples, seed), f, out);
    } else if (auslander->parsed()) {
      code = emit_report(auslander_check(case_from(co, Localization::none), degree, guard), f, out);
    }
    return static_cast<int>(code);
  } catch (const io_error& e) {
    std::cerr << "qks: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "qks: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    std::cerr << "qks: " << e.what() << "\n";
  }
  return static_cast<int>(ExitCode::usage);
}
