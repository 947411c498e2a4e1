#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "citenoise/audit.hpp"
#include "citenoise/fixtures.hpp"
#include "citenoise/io.hpp"
#include "citenoise/noise_metrics.hpp"
#include "citenoise/simulator.hpp"

namespace citenoise::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kUsage = 2 };

namespace detail {

inline void emit(const std::string& content, const std::string& out_path, std::ostream& out) {
  if (out_path.empty())
    out << content;
  else
    io::write_file(out_path, content);
}

inline GenerativeConfig load_config(const std::string& path, std::uint64_t seed) {
  auto c = io::config_from_json(io::parse_json(io::read_file(path), path));
  c.seed = seed;
  return c;
}

inline std::vector<std::size_t> parse_sizes(const std::string& csv) {
  std::vector<std::size_t> ns;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto t = citenoise::detail::trim(item);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string_view::npos)
      throw CLI::ValidationError("--ns", "'" + item + "' is not a positive integer");
    ns.push_back(std::stoull(std::string(t)));
  }
  return ns;
}

}  // namespace detail

/// Runs one CLI invocation. Documents go to `out` (or to --out files), error
/// messages to `err`. Returns 0 on success, 1 on validation or parse errors
/// and 2 on usage errors.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Citation noise, bias and accuracy analysis", "citenoise"};
  app.require_subcommand(1);

  std::string input, accurate_csv, format = "json", out_path;
  auto* analyze = app.add_subcommand("analyze", "Noise and bias report for a citation system");
  analyze->add_option("--input", input, "System document (.json) or realized matrix (.csv)")->required();
  analyze->add_option("--accurate", accurate_csv, "Accurate matrix CSV when --input is a CSV");
  analyze->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
  analyze->add_option("--out", out_path, "Write to a file instead of stdout");

  std::string config_path, latent_path;
  std::uint64_t seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic citation system");
  simulate->add_option("--config", config_path, "Generative config (JSON)")->required();
  simulate->add_option("--out", out_path, "System document output")->required();
  simulate->add_option("--latent", latent_path, "Latent truth sidecar output");
  simulate->add_option("--seed", seed, "Random seed")->required();

  auto* retest = app.add_subcommand("retest", "Stable/occasion decomposition of pattern noise");
  retest->add_option("--config", config_path, "Generative config (JSON)")->required();
  retest->add_option("--seed", seed, "Random seed")->required();
  retest->add_option("--out", out_path, "Write to a file instead of stdout");

  std::string ns_csv;
  std::size_t trials = 0;
  auto* aggregate = app.add_subcommand("aggregate", "Standard error of averaged decisions vs n");
  aggregate->add_option("--config", config_path, "Generative config (JSON)")->required();
  aggregate->add_option("--ns", ns_csv, "Comma-separated sample sizes")->required();
  aggregate->add_option("--trials", trials, "Trials per sample size (>= 100)")->required();
  aggregate->add_option("--seed", seed, "Random seed")->required();
  aggregate->add_option("--out", out_path, "Write to a file instead of stdout");

  std::string refs_path, intext_path, jt_path;
  auto* audit = app.add_subcommand("audit", "Cross-check a citation justification table");
  audit->add_option("--refs", refs_path, "Reference keys, one per line")->required();
  audit->add_option("--intext", intext_path, "In-text citation keys, one per line")->required();
  audit->add_option("--jt", jt_path, "Justification table")->required();
  audit->add_option("--out", out_path, "Write to a file instead of stdout");

  std::string sim_path, citations_path;
  std::size_t k = 0;
  auto* omissions = app.add_subcommand("omissions", "Flag uncited similar predecessors");
  omissions->add_option("--sim", sim_path, "Similarity document (JSON)")->required();
  omissions->add_option("--citations", citations_path, "Citation matrix document (JSON)")->required();
  omissions->add_option("--k", k, "Size of the most-similar set")->required()->check(CLI::PositiveNumber);
  omissions->add_option("--out", out_path, "Write to a file instead of stdout");

  std::string fixture_name, fixture_format = "json";
  auto* fixtures = app.add_subcommand("fixtures", "Dump a built-in example system");
  fixtures->add_option("--name", fixture_name, "table1, table2 or table3")->required();
  fixtures->add_option("--format", fixture_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  fixtures->add_option("--out", out_path,
                       "Output file (csv writes <out> for R and <out stem>.accurate.csv for A)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (analyze->parsed()) {
      const auto system = io::load_system(input, accurate_csv);
      const auto report = citenoise::analyze(system);
      detail::emit(format == "table" ? io::report_to_table(system, report)
                                     : io::dump(io::report_to_json(system, report)),
                   out_path, out);
    } else if (simulate->parsed()) {
      const auto config = detail::load_config(config_path, seed);
      const auto generated = generate_system(config);
      io::write_file(out_path, io::dump(io::system_to_json(generated.system)));
      if (!latent_path.empty())
        io::write_file(latent_path, io::dump(io::latent_to_json(generated.system, generated.truth)));
    } else if (retest->parsed()) {
      const auto config = detail::load_config(config_path, seed);
      const auto set = replicate_decisions(config);
      const auto d = decompose_pattern_noise(set);
      io::json doc = {{"schema_version", io::kSchemaVersion},
                      {"seed", seed},
                      {"replicates", d.replicates},
                      {"stable_sigma", d.stable_sigma},
                      {"occasion_sigma", d.occasion_sigma},
                      {"total_pattern_variance", d.total_pattern_variance},
                      {"latent_stable_sigma", latent_stable_sigma(set.base, set.truth)}};
      detail::emit(io::dump(doc), out_path, out);
    } else if (aggregate->parsed()) {
      const auto config = detail::load_config(config_path, seed);
      const auto ns = detail::parse_sizes(ns_csv);
      detail::emit(io::aggregation_csv(aggregation_curve(config, ns, trials)), out_path, out);
    } else if (audit->parsed()) {
      const auto refs = io::parse_key_list(io::read_file(refs_path));
      const auto intext = io::parse_key_list(io::read_file(intext_path));
      const auto jt = parse_justification_table(io::read_file(jt_path));
      detail::emit(io::dump(io::audit_to_json(audit_justification(refs, intext, jt))), out_path, out);
    } else if (omissions->parsed()) {
      const auto sim = io::similarity_from_json(io::parse_json(io::read_file(sim_path), sim_path));
      const auto citations =
          io::citations_from_json(io::parse_json(io::read_file(citations_path), citations_path), sim);
      const auto flags = omission_indicator(sim, citations, k);
      for (const auto& w : flags.warnings) err << "warning: " << w << "\n";
      detail::emit(io::dump(io::omissions_to_json(sim, flags)), out_path, out);
    } else if (fixtures->parsed()) {
      CitationSystem system = [&] {
        try {
          return builtin_fixture(fixture_name);
        } catch (const Error& e) {
          err << e.what() << "\n";
          throw CLI::ValidationError("--name", "unknown fixture");
        }
      }();
      if (fixture_format == "csv") {
        auto [r, a] = io::system_to_csv(system);
        if (out_path.empty()) {
          out << r << "\n" << a;
        } else {
          auto stem = out_path.ends_with(".csv") ? out_path.substr(0, out_path.size() - 4) : out_path;
          io::write_file(out_path, r);
          io::write_file(stem + ".accurate.csv", a);
        }
      } else {
        detail::emit(io::dump(io::system_to_json(system)), out_path, out);
      }
    }
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}

}  // namespace citenoise::cli
