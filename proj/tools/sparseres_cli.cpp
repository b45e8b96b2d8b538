// sparseres: command-line front end.
//
//   sparseres bounds <file> [--with-resultant] [--terms] [--mahler N] [--seed S] [--json|--text]
//   sparseres subdivision <file> [--seed S]
//   sparseres table-sylvester [--dmax D] [--tsv]
//   sparseres verify-paper [--json]
//
// Exit codes: 0 ok, 2 invalid input, 3 extraction failure, 4 invariant violation.

#include "sparseres/io.hpp"
#include "sparseres/reference_checks.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace sparseres;

struct BoundsArgs {
  std::string file;
  bool with_resultant = false;
  bool terms = false;
  std::optional<std::size_t> mahler;
  std::uint64_t seed = 1;
  bool json = true;
};

void print_text(const BoundsReport& r, const Json& j) {
  auto line = [](const std::string& k, const std::string& v) {
    std::cout << std::left << std::setw(22) << k << v << "\n";
  };
  std::ostringstream mv, m;
  for (std::size_t i = 0; i < r.mv.size(); ++i) mv << (i ? " " : "") << r.mv[i];
  for (std::size_t i = 0; i < r.m.size(); ++i) m << (i ? " " : "") << r.m[i];
  line("family", r.family);
  line("cardinalities", m.str());
  line("mixed volumes", mv.str());
  line("lattice index", r.index.str());
  line("E", r.E.str());
  line("log E", detail::fixed(r.log_E));
  if (r.H) {
    line("H", r.H->str());
    line("h", detail::fixed(*r.h));
    line("q", r.q ? format_q(*r.q) : "undefined (H <= 1)");
    line("H <= E", *r.height_bound ? "yes" : "NO");
  }
  if (r.ce) {
    std::ostringstream n;
    for (std::size_t i = 0; i < r.counts->size(); ++i) n << (i ? " " : "") << (*r.counts)[i];
    line("partition counts N", n.str());
    line("matrix log bound", detail::fixed(r.ce->log_value) +
                             (r.ce->exponent ? "  (= " + std::to_string(r.m.front()) + "^" +
                                                   std::to_string(*r.ce->exponent) + ")"
                                             : std::string()));
  }
  if (r.factorial) line("factorial bound", r.factorial->str());
  if (j.contains("vanishing")) line("vanishing checks", j["vanishing"]["passed"].get<bool>() ? "pass" : "FAIL");
  if (r.mahler) {
    line("Mahler estimate", detail::fixed(r.mahler->estimate) + " +- " + detail::fixed(r.mahler->std_error) +
                                "  (" + std::to_string(r.mahler->samples) + " samples, seed " +
                                std::to_string(r.mahler->seed) + ")");
    line("m <= log E", *r.mahler_bound ? "yes (3 stderr)" : "NO");
    if (r.mh_sandwich) line("|m - h| <= log E", *r.mh_sandwich ? "yes (3 stderr)" : "NO");
  }
}

int cmd_bounds(const BoundsArgs& a) {
  const SupportFamily family = load_family(a.file);
  const Essentiality ess = is_essential(family);
  if (!ess.essential) {
    std::ostringstream w;
    for (std::size_t i = 0; i < ess.witness.size(); ++i) w << (i ? "," : "") << ess.witness[i];
    fail(ErrorKind::kInvalidInput, "family is not essential; rank condition fails for supports {" + w.str() + "}");
  }
  BoundsReport r = basic_report(family);
  Json j = {{"tool", kToolName}, {"version", kToolVersion}, {"seed", a.seed}, {"input", family_to_json(family)}};
  const bool need_resultant = a.with_resultant || a.mahler.has_value();
  if (need_resultant) {
    const ResultantCertificate cert = resultant_for(family, a.seed);
    add_resultant(r, cert);
    const VanishingReport v = verify_vanishing(cert, 25, derive_seed(a.seed, 2));
    j["resultant"] = certificate_to_json(cert, a.terms);
    j["vanishing"] = {{"forced_zero", v.forced_zero},
                      {"forced_trials", v.forced_trials},
                      {"random_nonzero", v.random_nonzero},
                      {"random_trials", v.random_trials},
                      {"passed", v.passed()}};
    if (a.mahler) add_mahler(r, mahler_mc(cert.polynomial, *a.mahler, derive_seed(a.seed, 3)));
  }
  j["report"] = report_to_json(r);
  if (a.json) std::cout << j.dump(2) << "\n";
  else print_text(r, j);
  return 0;
}

int cmd_subdivision(const std::string& file, std::uint64_t seed) {
  const SupportFamily family = load_family(file);
  const MixedSubdivision sub = build_validated_subdivision(family.supports(), derive_seed(seed, 0));
  Json j = subdivision_to_json(sub);
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["seed"] = seed;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_table(std::size_t dmax, std::size_t limit, bool tsv) {
  if (dmax < 2 || dmax > limit)
    fail(ErrorKind::kInvalidInput, "--dmax must lie in [2, " + std::to_string(limit) + "]");
  std::vector<std::array<std::string, 4>> rows = {{"d", "H(d)", "E(d)", "q(d)"}};
  for (std::size_t d = 2; d <= dmax; ++d) {
    const SupportFamily fam = sylvester_family(d, d);
    BoundsReport r = basic_report(fam);
    add_resultant(r, resultant_for(fam));
    rows.push_back({std::to_string(d), r.H->str(), r.E.str(), r.q ? format_q(*r.q) : "-"});
  }
  std::array<std::size_t, 4> width{};
  for (const auto& row : rows)
    for (std::size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < 4; ++c) {
      if (tsv) std::cout << (c ? "\t" : "") << row[c];
      else std::cout << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << std::right << row[c];
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_verify(bool json, const std::string& mutate, std::uint64_t seed) {
  ReferenceOptions opt;
  opt.seed = seed;
  if (mutate == "degree") opt.mutate_degree = true;
  else if (!mutate.empty()) fail(ErrorKind::kInvalidInput, "unknown mutation " + mutate);
  const auto checks = run_reference_checks(opt);
  const Json summary = reference_summary_json(checks, opt);
  if (json) {
    std::cout << summary.dump(2) << "\n";
  } else {
    for (const auto& c : checks) std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  if (!summary["passed"].get<bool>()) {
    std::cerr << "sparseres: check failed: " << summary["first_failure"].get<std::string>() << "\n";
    return static_cast<int>(ErrorKind::kInvariant);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse resultants: heights, bounds and certified computation", "sparseres"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  BoundsArgs bounds;
  bool text = false;
  auto* b = app.add_subcommand("bounds", "Mixed volumes, E(A) and, optionally, the certified resultant");
  b->add_option("file", bounds.file, "Family file (JSON with dim, supports, name)")->required();
  b->add_flag("--with-resultant", bounds.with_resultant, "Compute and certify the resultant");
  b->add_flag("--terms", bounds.terms, "Include the resultant term list");
  b->add_option("--mahler", bounds.mahler, "Monte Carlo Mahler measure with N samples")->check(CLI::Range(100, 100000000));
  b->add_option("--seed", bounds.seed, "Random seed (default 1)");
  auto* jf = b->add_flag("--json", "JSON output (default)");
  auto* tf = b->add_flag("--text", text, "Aligned text output");
  jf->excludes(tf);

  std::string sub_file;
  std::uint64_t sub_seed = 1;
  auto* s = app.add_subcommand("subdivision", "Dump a validated coherent mixed subdivision");
  s->add_option("file", sub_file, "Family file")->required();
  s->add_option("--seed", sub_seed, "Random seed (default 1)");

  std::size_t dmax = 7, limit = 7;
  bool tsv = false;
  auto* t = app.add_subcommand("table-sylvester", "H, E and q for dense Sylvester resultants of degree d");
  t->add_option("--dmax", dmax, "Largest degree (default 7)");
  t->add_option("--limit", limit, "Largest accepted --dmax (default 7)");
  t->add_flag("--tsv", tsv, "Tab-separated output");

  bool vjson = false;
  std::string mutate;
  std::uint64_t vseed = 1;
  auto* v = app.add_subcommand("verify-paper", "Run the bundled reference checks");
  v->add_flag("--json", vjson, "JSON summary");
  v->add_option("--seed", vseed, "Random seed (default 1)");
  v->add_option("--mutate", mutate)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorKind::kInvalidInput);
  }

  try {
    bounds.json = !text;
    if (*b) return cmd_bounds(bounds);
    if (*s) return cmd_subdivision(sub_file, sub_seed);
    if (*t) return cmd_table(dmax, limit, tsv);
    if (*v) return cmd_verify(vjson, mutate, vseed);
  } catch (const Error& e) {
    std::cerr << "sparseres: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "sparseres: internal error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::kInvariant);
  }
  return 0;
}
