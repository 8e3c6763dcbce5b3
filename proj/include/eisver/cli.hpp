#pragma once

// Command-line front end: verify, scan and inspect.
//
// Exit codes: 0 success (Verified or HypothesisNotMet), 2 usage error,
// 3 an upper bound stayed non-tight (verify only), 4 a Refuted-Flag verdict.

#include "eisver/cache.hpp"
#include "eisver/report.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace eisver {

enum ExitCode : int { exit_ok = 0, exit_usage = 2, exit_not_tight = 3, exit_refuted = 4 };

struct RunConfig {
  std::string command;
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t ell = 0;
  std::int64_t level = 0;
  std::int64_t pq_max = 210;
  std::int64_t ell_max = 50;
  std::int64_t r_budget = 200;
  std::size_t window = 0;
  std::size_t threads = 1;
  std::string cache_dir;
  std::string format = "json";
  std::string output;
  int verbosity = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void validate(const RunConfig& c)
{
  auto prime = [](std::int64_t x, const char* name) {
    if (x < 2 || !is_prime(x)) throw UsageError(std::string(name) + " must be a prime, got " + std::to_string(x));
  };
  if (c.r_budget < 3) throw UsageError("--r-budget must be at least 3");
  if (c.command == "verify") {
    prime(c.p, "--p");
    prime(c.q, "--q");
    prime(c.ell, "--ell");
    if (c.p == c.q) throw UsageError("--p and --q must be distinct");
  } else if (c.command == "scan") {
    if (c.pq_max < 1) throw UsageError("--pq-max must be positive");
    if (c.ell_max < 1) throw UsageError("--ell-max must be positive");
    if (c.threads < 1) throw UsageError("--threads must be positive");
  } else if (c.command == "inspect") {
    if (c.level < 2 || !is_squarefree(c.level) || prime_divisors(c.level).size() > 2)
      throw UsageError("--N must be a prime or a product of two distinct primes, got " + std::to_string(c.level));
  }
}

/// EISVER_CACHE_DIR takes precedence over --cache-dir.
inline std::string resolve_cache_dir(const std::string& flag)
{
  if (const char* env = std::getenv("EISVER_CACHE_DIR"); env && *env) return env;
  return flag;
}

struct CliContext {
  RunConfig config;
  std::ostream& out;
  std::ostream& err;
  CacheStats stats;

  LevelData::ProviderFactory factory()
  {
    if (config.cache_dir.empty()) return {};
    std::filesystem::path dir = config.cache_dir;
    return [this, dir](const ManinSpace& s) { return caching_provider(s, dir, &stats); };
  }

  void log(const std::string& msg) const
  {
    if (config.verbosity > 0) err << "[eisver] " << msg << '\n';
  }

  ScanOptions scan_options() const
  {
    ScanOptions o;
    o.pq_max = config.pq_max;
    o.ell_max = config.ell_max;
    o.r_budget = config.r_budget;
    o.window = config.window;
    o.threads = config.threads;
    return o;
  }

  nlohmann::json parameters() const
  {
    nlohmann::json j;
    j["command"] = config.command;
    j["r_budget"] = config.r_budget;
    j["window"] = config.window;
    if (config.command == "verify") {
      j["p"] = config.p;
      j["q"] = config.q;
      j["ell"] = config.ell;
    } else if (config.command == "scan") {
      j["pq_max"] = config.pq_max;
      j["ell_max"] = config.ell_max;
    } else {
      j["N"] = config.level;
    }
    return j;
  }

  void emit(const std::string& text)
  {
    if (config.output.empty() || config.output == "-") {
      out << text;
      return;
    }
    const std::filesystem::path target = config.output;
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw UsageError("cannot write output file " + config.output);
      f << text;
      if (!f) throw UsageError("cannot write output file " + config.output);
    }
    std::filesystem::rename(tmp, target);
  }

  /// Fails early when the output path cannot be created.
  void check_output() const
  {
    if (config.output.empty() || config.output == "-") return;
    const std::filesystem::path tmp = config.output + ".tmp";
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write output file " + config.output);
    f.close();
    std::filesystem::remove(tmp);
  }
};

inline int status_exit_code(const std::vector<Verdict>& vs, bool not_tight_counts)
{
  bool refuted = false, loose = false;
  for (const auto& v : vs) {
    refuted |= v.status == Status::RefutedFlag;
    loose |= v.status == Status::UpperBoundNotTight;
  }
  if (refuted) return exit_refuted;
  if (loose && not_tight_counts) return exit_not_tight;
  return exit_ok;
}

inline int cmd_verify(CliContext& ctx)
{
  const auto& c = ctx.config;
  ctx.check_output();
  LevelData data(c.p * c.q, ctx.factory());
  auto verdicts = verify_triple(data, c.p, c.q, c.ell, ctx.scan_options());
  const ConditionProfile prof = evaluate_conditions(c.p, c.q, c.ell);
  for (auto& v : verdicts)
    if (v.claim == "torsion-at-p" || v.claim == "torsion-3p") v.witnesses["case"] = std::to_string(prof.at_p_case());
  ctx.emit(render_report(c.format, ctx.parameters(), verdicts));
  ctx.log("cache hits " + std::to_string(ctx.stats.hits) + ", misses " + std::to_string(ctx.stats.misses) +
          ", rejected " + std::to_string(ctx.stats.rejected));
  return status_exit_code(verdicts, true);
}

inline int cmd_scan(CliContext& ctx)
{
  ctx.check_output();
  const auto start = std::chrono::steady_clock::now();
  auto verdicts = scan(ctx.scan_options(), ctx.factory());
  ctx.emit(render_report(ctx.config.format, ctx.parameters(), verdicts));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ctx.log(std::to_string(verdicts.size()) + " verdicts in " + std::to_string(secs) + " s; cache hits " +
          std::to_string(ctx.stats.hits) + ", misses " + std::to_string(ctx.stats.misses) + ", rejected " +
          std::to_string(ctx.stats.rejected));
  return status_exit_code(verdicts, false);
}

inline nlohmann::json inspect_json(const LevelData& data)
{
  const std::int64_t n = data.level();
  const auto& space = data.space();
  const auto& alg = data.algebra();
  nlohmann::json j;
  j["N"] = n;
  j["genus"] = space.genus();
  j["full_rank"] = space.rank();
  j["cuspidal_rank"] = space.cuspidal_rank();
  j["sturm_bound"] = alg.sturm_bound();
  j["algebra_rank"] = alg.rank();
  j["saturation_index"] = integer_json(alg.saturation_index());
  j["cusps"] = nlohmann::json::array();
  for (const auto& c : cusp_classes(n)) j["cusps"].push_back(c.to_string());
  j["hecke_matrices"] = nlohmann::json::object();
  for (std::int64_t k = 1; k <= alg.sturm_bound(); ++k) {
    const IntMatrix m = alg.operator_matrix(k);
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t s = 0; s < m.cols(); ++s) row.push_back(integer_json(m(r, s)));
      rows.push_back(row);
    }
    j["hecke_matrices"][std::to_string(k)] = rows;
  }
  j["cuspidal_group"] = data.cuspidal_group().to_string();
  j["cuspidal_group_order"] = integer_json(data.cuspidal_group().order());
  if (data.symbols()) j["cuspidal_group_symbols"] = data.symbols()->structure().to_string();
  const auto ps = prime_divisors(n);
  if (ps.size() == 2) {
    j["pairs"] = nlohmann::json::array();
    for (auto [p, q] : {std::pair{ps[0], ps[1]}, std::pair{ps[1], ps[0]}}) {
      const IdealSet& ideals = data.ideals(p, q);
      nlohmann::json e;
      e["p"] = p;
      e["q"] = q;
      for (const auto* ideal : {&ideals.i0, &ideals.i1, &ideals.i2, &ideals.i3}) {
        const AbGroupStructure s = algebra_quotient(alg, ideal->lattice);
        e["quotients"][to_string(ideal->kind)] = s.to_string();
        e["indices"][to_string(ideal->kind)] = s.is_finite() ? integer_json(s.order()) : nlohmann::json("infinite");
      }
      const ConditionProfile c = evaluate_conditions(p, q, p);
      e["conditions"] = {{"P", c.big_p},
                         {"q_one_mod_p", c.q_one_mod_p},
                         {"q_one_mod_P", c.q_one_mod_big_p},
                         {"power_residue", c.power_residue},
                         {"at_p_holds", c.at_p_holds()},
                         {"at_p_case", c.at_p_case()}};
      const AlphaBeta ab = m_alpha_beta(p, q, 3);
      e["M_p"] = integer_json(ab.m_p);
      e["M_q"] = integer_json(ab.m_q);
      j["pairs"].push_back(e);
    }
  }
  return j;
}

inline std::string inspect_text(const nlohmann::json& j)
{
  std::ostringstream out;
  out << "N = " << j["N"] << "\n";
  out << "genus " << j["genus"] << ", cusps " << j["cusps"].size() << ", Sturm bound " << j["sturm_bound"] << "\n";
  out << "cusp classes:";
  for (const auto& c : j["cusps"]) out << " " << c.get<std::string>();
  out << "\nfull rank " << j["full_rank"] << ", cuspidal rank " << j["cuspidal_rank"] << ", algebra rank "
      << j["algebra_rank"] << ", saturation index " << j["saturation_index"] << "\n";
  out << "cuspidal group " << j["cuspidal_group"].get<std::string>() << " (order " << j["cuspidal_group_order"] << ")\n";
  for (const auto& [k, m] : j["hecke_matrices"].items()) {
    out << "T_" << k << ":\n";
    for (const auto& row : m) {
      out << "  [";
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
      out << "]\n";
    }
  }
  if (j.contains("pairs"))
    for (const auto& e : j["pairs"]) {
      out << "(p, q) = (" << e["p"] << ", " << e["q"] << "): M_p = " << e["M_p"] << ", M_q = " << e["M_q"] << "\n";
      for (const auto& [k, s] : e["quotients"].items()) out << "  T/" << k << " = " << s.get<std::string>() << "\n";
      out << "  conditions " << e["conditions"].dump() << "\n";
    }
  return out.str();
}

inline int cmd_inspect(CliContext& ctx)
{
  ctx.check_output();
  LevelData data(ctx.config.level, ctx.factory());
  const nlohmann::json j = inspect_json(data);
  if (ctx.config.format == "text")
    ctx.emit(inspect_text(j));
  else if (ctx.config.format == "json")
    ctx.emit(j.dump(2) + "\n");
  else
    throw UsageError("inspect supports --format json or text");
  return exit_ok;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
  RunConfig cfg;
  CLI::App app{"Hecke algebras, Eisenstein ideals and torsion bounds for J_0(pq)"};
  app.require_subcommand(1);
  auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--cache-dir", cfg.cache_dir, "Directory for cached Hecke matrices (EISVER_CACHE_DIR overrides)");
    sub->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--output,-o", cfg.output, "Write the report to this file instead of stdout");
    sub->add_flag("-v,--verbose", cfg.verbosity, "Progress messages on stderr");
    sub->add_option("--r-budget", cfg.r_budget, "Point counts use odd primes r below this bound");
    sub->add_option("--window", cfg.window, "Stop the gcd bound after this many unchanged primes (0: use all)");
  };
  auto* verify = app.add_subcommand("verify", "Run every claim for one triple (p, q, ell)");
  verify->add_option("--p", cfg.p)->required();
  verify->add_option("--q", cfg.q)->required();
  verify->add_option("--ell", cfg.ell)->required();
  common(verify);
  auto* scan_cmd = app.add_subcommand("scan", "Run all applicable claims over a range");
  scan_cmd->add_option("--pq-max", cfg.pq_max, "Largest level pq");
  scan_cmd->add_option("--ell-max", cfg.ell_max, "Largest prime ell");
  scan_cmd->add_option("--threads,-j", cfg.threads, "Worker threads");
  common(scan_cmd);
  auto* inspect = app.add_subcommand("inspect", "Dump the data computed for one level");
  inspect->add_option("--N", cfg.level)->required();
  common(inspect);
  inspect->get_option("--format")->default_str("text");
  cfg.format = "";

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  cfg.command = verify->parsed() ? "verify" : scan_cmd->parsed() ? "scan" : "inspect";
  if (cfg.format.empty()) cfg.format = cfg.command == "inspect" ? "text" : "json";
  cfg.cache_dir = resolve_cache_dir(cfg.cache_dir);

  CliContext ctx{cfg, out, err, {}};
  try {
    validate(cfg);
    if (cfg.command == "verify") return cmd_verify(ctx);
    if (cfg.command == "scan") return cmd_scan(ctx);
    return cmd_inspect(ctx);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

} // namespace eisver
