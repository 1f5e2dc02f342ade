#pragma once

// Command-line front end: compute, validate, export-covers, cache.
// run_cli() holds all behavior so tests can drive it with string streams.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "twisted_hurwitz/factorization_count.hpp"
#include "twisted_hurwitz/feynman.hpp"
#include "twisted_hurwitz/fock.hpp"
#include "twisted_hurwitz/io.hpp"
#include "twisted_hurwitz/tropical_covers.hpp"

namespace twisted_hurwitz {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitIncompatible = 2, kExitBudget = 3, kExitUnwritable = 4 };

class IncompatibleQuery : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> methods = {"symgroup", "tropical", "feynman", "fock"};
  return methods;
}

/// fock computes disconnected numbers; every other method defaults to connected.
inline bool default_connected(const std::string& method) { return method != "fock"; }

/// Empty when (method, d, g, connected) is computable; otherwise a one-line reason.
inline std::string incompatibility(const std::string& method, int d, int g, bool connected) {
  if (d < 1) return "degree d must be at least 1";
  if (g < 1) return "genus g must be at least 1";
  if (method == "symgroup") return {};
  if (method == "tropical") {
    if (g < 2) return "tropical pipeline defined only for g >= 2";
    if (!connected) return "tropical pipeline counts connected covers only";
    return {};
  }
  if (method == "feynman") {
    if (g <= 2) return "Feynman pipeline defined only for g > 2";
    if (!connected) return "Feynman pipeline counts connected covers only";
    return {};
  }
  if (method == "fock") {
    if (connected) return "Fock pipeline computes disconnected numbers only";
    return {};
  }
  return "unknown method '" + method + "'";
}

/// The Feynman prefactor fixed once per process by agreement with the
/// symmetric-group count on the anchor set.
inline NormalizationReading calibrated_reading() {
  static const NormalizationReading reading =
      calibrate_normalization([](int d, int g) { return count_twisted(d, g, true).value; }).reading;
  return reading;
}

struct ComputeRequest {
  std::string method = "symgroup";
  int d = 1;
  int g = 1;
  bool connected = true;
  SearchOptions search;
};

/// Throws IncompatibleQuery or BudgetExceeded.
inline RunRecord compute_record(const ComputeRequest& req) {
  if (auto why = incompatibility(req.method, req.d, req.g, req.connected); !why.empty()) throw IncompatibleQuery(why);
  RunRecord rec;
  rec.method = req.method;
  rec.d = req.d;
  rec.g = req.g;
  rec.connected = req.connected;
  const auto start = std::chrono::steady_clock::now();
  Rational value;
  if (req.method == "symgroup") {
    value = count_twisted(req.d, req.g, req.connected, req.search).value;
  } else if (req.method == "tropical") {
    value = count_tropical(req.d, req.g);
  } else if (req.method == "feynman") {
    const auto reading = calibrated_reading();
    rec.normalization_reading = to_string(reading);
    value = generating_series_coefficient(req.d, req.g, reading);
  } else {
    value = elliptic_disconnected(req.d, req.g);
  }
  rec.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  rec.set_value(value);
  return rec;
}

inline CacheKey cache_key(const ComputeRequest& req) {
  CacheKey key{req.method, req.d, req.g, req.connected, kToolVersion, {}};
  if (req.method == "feynman") key.normalization_reading = to_string(calibrated_reading());
  return key;
}

inline void print_record(std::ostream& out, const RunRecord& rec, const std::string& format) {
  if (format == "json") {
    out << to_json(rec).dump(2) << "\n";
  } else if (format == "csv") {
    out << csv_header() << "\n" << to_csv_row(rec) << "\n";
  } else {
    out << to_string(rec.value()) << "\n";
    out << "# method=" << rec.method << " d=" << rec.d << " g=" << rec.g
        << (rec.connected ? " connected" : " disconnected") << " wall_time_ms=" << rec.wall_time_ms;
    if (!rec.normalization_reading.empty()) out << " normalization=" << rec.normalization_reading;
    out << " version=" << rec.tool_version << "\n";
  }
}

namespace detail {

inline int cmd_compute(const ComputeRequest& req, const std::string& format, const std::string& cache_path,
                       std::ostream& out, std::ostream& err) {
  if (auto why = incompatibility(req.method, req.d, req.g, req.connected); !why.empty()) {
    err << "error: " << why << "\n";
    return kExitIncompatible;
  }
  std::optional<ResultCache> cache;
  if (!cache_path.empty()) cache.emplace(cache_path, &err);
  try {
    if (cache) {
      if (auto hit = cache->lookup(cache_key(req))) {
        err << "served from cache " << cache->path().string() << "\n";
        print_record(out, *hit, format);
        return kExitOk;
      }
    }
    const RunRecord rec = compute_record(req);
    if (cache && !cache->store(rec)) err << "warning: cannot append to cache " << cache->path().string() << "\n";
    print_record(out, rec, format);
    return kExitOk;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (raise --budget or TH_BUDGET)\n";
    return kExitBudget;
  }
}

struct ValidateCell {
  std::optional<Rational> value;
  bool skipped = false;
};

inline int cmd_validate(int d_max, int g_max, const SearchOptions& search, std::ostream& out) {
  int failures = 0, passes = 0, skips = 0;
  auto compute = [&](const std::string& method, int d, int g, bool connected) {
    ValidateCell cell;
    if (!incompatibility(method, d, g, connected).empty()) return cell;
    try {
      cell.value = compute_record({method, d, g, connected, search}).value();
    } catch (const BudgetExceeded&) {
      cell.skipped = true;
    }
    return cell;
  };
  auto show = [](const ValidateCell& c) -> std::string {
    if (c.skipped) return "budget";
    return c.value ? to_string(*c.value) : "-";
  };
  auto check = [&](const std::string& identity, int d, int g, const ValidateCell& a, const ValidateCell& b) {
    if (!a.value && !a.skipped) return;
    if (!b.value && !b.skipped) return;
    const char* verdict = "SKIP";
    if (a.value && b.value) verdict = *a.value == *b.value ? "PASS" : "FAIL";
    if (std::string(verdict) == "PASS") ++passes;
    if (std::string(verdict) == "FAIL") ++failures;
    if (std::string(verdict) == "SKIP") ++skips;
    out << verdict << " " << identity << " d=" << d << " g=" << g << "\n";
  };
  for (int d = 1; d <= d_max; ++d)
    for (int g = 1; g <= g_max; ++g) {
      const auto sym = compute("symgroup", d, g, true);
      const auto trop = compute("tropical", d, g, true);
      const auto feyn = compute("feynman", d, g, true);
      const auto sym_dis = compute("symgroup", d, g, false);
      const auto fock = compute("fock", d, g, false);
      out << "d=" << d << " g=" << g << " symgroup=" << show(sym) << " tropical=" << show(trop)
          << " feynman=" << show(feyn) << " symgroup*=" << show(sym_dis) << " fock=" << show(fock) << "\n";
      check("symgroup=tropical", d, g, sym, trop);
      check("symgroup=feynman", d, g, sym, feyn);
      check("symgroup*=fock", d, g, sym_dis, fock);
    }
  if (g_max > 2) out << "feynman normalization: " << to_string(calibrated_reading()) << "\n";
  out << "summary: " << passes << " PASS, " << failures << " FAIL, " << skips << " SKIP\n";
  return failures == 0 ? kExitOk : kExitFailure;
}

inline int cmd_export_covers(int d, int g, const std::string& format, const std::string& out_path,
                             std::ostream& out, std::ostream& err) {
  if (d < 1 || g < 2) {
    err << "error: cover export needs d >= 1 and g >= 2\n";
    return kExitIncompatible;
  }
  namespace fs = std::filesystem;
  if (format == "json") {
    Json records = Json::array();
    for (const auto& tc : enumerate_twisted_covers(d, g)) records.push_back(to_json(tc, g));
    if (out_path.empty() || out_path == "-") {
      out << records.dump(2) << "\n";
      return kExitOk;
    }
    std::ofstream file(out_path);
    if (!file || !(file << records.dump(2) << "\n")) {
      err << "error: cannot write " << out_path << "\n";
      return kExitUnwritable;
    }
    out << "wrote " << records.size() << " cover records to " << out_path << "\n";
    return kExitOk;
  }
  if (out_path.empty()) {
    err << "error: dot export needs --out DIR\n";
    return kExitIncompatible;
  }
  std::error_code ec;
  fs::create_directories(out_path, ec);
  if (ec || !fs::is_directory(out_path)) {
    err << "error: cannot create directory " << out_path << "\n";
    return kExitUnwritable;
  }
  const auto quotients = enumerate_quotient_covers(d, g);
  for (std::size_t k = 0; k < quotients.size(); ++k) {
    const auto mult = cover_multiplicity(quotients[k], g);
    const std::string name = "cover_" + std::to_string(k + 1);
    const fs::path file_path = fs::path(out_path) / (name + ".dot");
    std::ofstream file(file_path);
    if (!file || !(file << to_dot(quotients[k], name, "multiplicity " + to_string(mult.value)))) {
      err << "error: cannot write " << file_path.string() << "\n";
      return kExitUnwritable;
    }
  }
  out << "wrote " << quotients.size() << " DOT files to " << out_path << "\n";
  return kExitOk;
}

inline int cmd_cache(const std::string& action, const std::string& path, std::ostream& out, std::ostream& err) {
  ResultCache cache(path, &err);
  if (action == "clear") {
    if (!cache.clear()) {
      err << "error: cannot remove " << path << "\n";
      return kExitUnwritable;
    }
    out << "cleared " << path << "\n";
    return kExitOk;
  }
  const auto records = cache.records();
  out << csv_header() << "\n";
  for (const auto& r : records) out << to_csv_row(r) << "\n";
  return kExitOk;
}

}  // namespace detail

/// Parses argv and dispatches; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Twisted Hurwitz numbers of an elliptic curve, by four independent methods"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  ComputeRequest req;
  std::string format = "plain";
  std::string cache_path;
  bool want_connected = false, want_disconnected = false;
  std::optional<std::uint64_t> budget;
  unsigned threads = 1;

  auto* compute = app.add_subcommand("compute", "Compute one twisted Hurwitz number");
  compute->add_option("--method", req.method, "symgroup | tropical | feynman | fock")
      ->check(CLI::IsMember(known_methods()));
  compute->add_option("-d,--degree", req.d, "Degree d")->required();
  compute->add_option("-g,--genus", req.g, "Genus g")->required();
  auto* conn = compute->add_flag("--connected", want_connected, "Connected count (default except fock)");
  compute->add_flag("--disconnected", want_disconnected, "Disconnected count (default for fock)")->excludes(conn);
  compute->add_option("--format", format, "plain | json | csv")->check(CLI::IsMember({"plain", "json", "csv"}));
  compute->add_option("--threads", threads, "Worker threads for symgroup (0 = all cores)");
  compute->add_option("--budget", budget, "Step budget for symgroup (overrides TH_BUDGET)");
  compute->add_option("--cache", cache_path, "Append-only JSONL result cache");

  int d_max = 2, g_max = 3;
  auto* validate = app.add_subcommand("validate", "Cross-check all methods on a grid of (d, g)");
  validate->add_option("-d,--degree", d_max, "Largest degree")->check(CLI::PositiveNumber);
  validate->add_option("-g,--genus", g_max, "Largest genus")->check(CLI::PositiveNumber);
  validate->add_option("--threads", threads, "Worker threads for symgroup (0 = all cores)");
  validate->add_option("--budget", budget, "Step budget for symgroup (overrides TH_BUDGET)");

  int export_d = 2, export_g = 3;
  std::string export_format = "json", export_out;
  auto* export_cmd = app.add_subcommand("export-covers", "Write twisted covers (json) or quotient covers (dot)");
  export_cmd->add_option("-d,--degree", export_d, "Degree d")->required();
  export_cmd->add_option("-g,--genus", export_g, "Genus g")->required();
  export_cmd->add_option("--format", export_format, "json | dot")->check(CLI::IsMember({"json", "dot"}));
  export_cmd->add_option("-o,--out", export_out, "Output file (json, default stdout) or directory (dot)");

  std::string cache_action;
  std::string cache_file;
  auto* cache_cmd = app.add_subcommand("cache", "Inspect or clear a result cache");
  cache_cmd->add_option("action", cache_action, "inspect | clear")
      ->required()
      ->check(CLI::IsMember({"inspect", "clear"}));
  cache_cmd->add_option("--cache", cache_file, "Cache file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIncompatible;
  }

  SearchOptions search;
  try {
    search.budget = budget ? *budget : budget_from_env();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitIncompatible;
  }
  if (budget && *budget == 0) {
    err << "error: --budget must be positive\n";
    return kExitIncompatible;
  }
  search.threads = threads;

  try {
    if (*compute) {
      req.connected = want_connected || (!want_disconnected && default_connected(req.method));
      req.search = search;
      return detail::cmd_compute(req, format, cache_path, out, err);
    }
    if (*validate) return detail::cmd_validate(d_max, g_max, search, out);
    if (*export_cmd) return detail::cmd_export_covers(export_d, export_g, export_format, export_out, out, err);
    return detail::cmd_cache(cache_action, cache_file, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace twisted_hurwitz
