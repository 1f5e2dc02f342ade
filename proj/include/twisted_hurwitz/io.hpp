#pragma once

// Run records, JSON/CSV serialization and the append-only result cache.

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "twisted_hurwitz/feynman.hpp"
#include "twisted_hurwitz/rational.hpp"
#include "twisted_hurwitz/tropical_covers.hpp"

namespace twisted_hurwitz {

inline constexpr const char* kToolVersion = "1.0.0";

using Json = nlohmann::ordered_json;

struct RunRecord {
  std::string method;
  int d = 1;
  int g = 1;
  bool connected = true;
  std::string numerator = "0";
  std::string denominator = "1";
  std::int64_t wall_time_ms = 0;
  /// Empty except for the feynman method.
  std::string normalization_reading;
  std::string tool_version = kToolVersion;

  Rational value() const { return parse_rational(numerator + "/" + denominator); }
  void set_value(const Rational& q) {
    numerator = numerator_string(q);
    denominator = denominator_string(q);
  }

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline Json rational_json(const Rational& q) {
  return Json{{"numerator", numerator_string(q)}, {"denominator", denominator_string(q)}};
}

inline Json to_json(const RunRecord& r) {
  return Json{{"method", r.method},
              {"d", r.d},
              {"g", r.g},
              {"connected", r.connected},
              {"numerator", r.numerator},
              {"denominator", r.denominator},
              {"wall_time_ms", r.wall_time_ms},
              {"normalization_reading", r.normalization_reading},
              {"tool_version", r.tool_version}};
}

/// Throws nlohmann::json::exception or std::invalid_argument on malformed input.
inline RunRecord run_record_from_json(const Json& j) {
  RunRecord r;
  r.method = j.at("method").get<std::string>();
  r.d = j.at("d").get<int>();
  r.g = j.at("g").get<int>();
  r.connected = j.at("connected").get<bool>();
  r.numerator = j.at("numerator").get<std::string>();
  r.denominator = j.at("denominator").get<std::string>();
  r.wall_time_ms = j.at("wall_time_ms").get<std::int64_t>();
  r.normalization_reading = j.at("normalization_reading").get<std::string>();
  r.tool_version = j.at("tool_version").get<std::string>();
  const Rational q = r.value();
  if (numerator_string(q) != r.numerator || denominator_string(q) != r.denominator)
    throw std::invalid_argument("rational not in lowest terms");
  return r;
}

inline std::string csv_header() {
  return "method,d,g,connected,numerator,denominator,wall_time_ms,normalization_reading,tool_version";
}

inline std::string to_csv_row(const RunRecord& r) {
  std::ostringstream os;
  os << r.method << ',' << r.d << ',' << r.g << ',' << (r.connected ? "true" : "false") << ',' << r.numerator << ','
     << r.denominator << ',' << r.wall_time_ms << ',' << r.normalization_reading << ',' << r.tool_version;
  return os.str();
}

inline Json to_json(const QuotientCover& cover) {
  Json edges = Json::array();
  for (const auto& e : cover.edges)
    edges.push_back({{"source", e.source + 1}, {"target", e.target + 1}, {"weight", e.weight},
                     {"crossings", e.crossings}});
  Json graph = Json::array();
  for (auto [a, b] : cover.graph().edges) graph.push_back({a + 1, b + 1});
  std::vector<int> order;
  for (int v : cover.order()) order.push_back(v + 1);
  return Json{{"vertex_count", cover.vertex_count}, {"graph", graph},         {"order", order},
              {"weights", cover.weights()},         {"crossings", cover.crossings()},
              {"multidegree", cover.multidegree()}, {"edges", edges}};
}

/// One record per twisted cover; `g` fixes the quotient genus and multiplicities.
inline Json to_json(const TwistedCover& tc, int g) {
  const auto quotient_mult = cover_multiplicity(tc.quotient, g);
  Json j = to_json(tc.quotient);
  j["quotient_index"] = tc.quotient_index;
  j["c"] = quotient_mult.four_valent_count;
  j["g_prime"] = quotient_mult.quotient_genus;
  Json sheets = Json::array();
  for (const auto& s : tc.lift.sheet) sheets.push_back({s[0], s[1]});
  j["lift"] = Json{{"sheets", sheets}, {"automorphism_count", tc.lift.automorphism_count}};
  j["quotient_multiplicity"] = rational_json(quotient_mult.value);
  j["multiplicity"] = rational_json(tc.multiplicity);
  return j;
}

inline Json feynman_series_json(int g, const std::vector<std::pair<int, Rational>>& coefficients,
                                NormalizationReading reading) {
  Json coeffs = Json::array();
  for (const auto& [d, q] : coefficients) coeffs.push_back({{"d", d}, {"value", rational_json(q)}});
  return Json{{"g", g}, {"coefficients", coeffs}, {"normalization_reading", to_string(reading)}};
}

struct CacheKey {
  std::string method;
  int d = 1;
  int g = 1;
  bool connected = true;
  std::string tool_version = kToolVersion;
  std::string normalization_reading;

  static CacheKey of(const RunRecord& r) {
    return {r.method, r.d, r.g, r.connected, r.tool_version, r.normalization_reading};
  }
  friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

/// Read-through cache stored as one JSON record per line. Unparseable lines
/// are reported to `warnings` and ignored; the latest matching line wins.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path path, std::ostream* warnings = nullptr)
      : path_(std::move(path)), warnings_(warnings) {}

  const std::filesystem::path& path() const { return path_; }

  std::vector<RunRecord> records() const {
    std::vector<RunRecord> out;
    std::ifstream in(path_);
    if (!in) return out;
    std::string line;
    int line_no = 0;
    int bad = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        out.push_back(run_record_from_json(Json::parse(line)));
      } catch (const std::exception&) {
        ++bad;
      }
    }
    if (bad > 0 && warnings_ != nullptr)
      *warnings_ << "warning: ignoring " << bad << " corrupt line(s) in cache " << path_.string() << "\n";
    return out;
  }

  std::optional<RunRecord> lookup(const CacheKey& key) const {
    std::optional<RunRecord> hit;
    for (auto& r : records())
      if (CacheKey::of(r) == key) hit = std::move(r);
    return hit;
  }

  /// Returns false when the file cannot be appended to.
  bool store(const RunRecord& record) const {
    std::ofstream out(path_, std::ios::app);
    if (!out) return false;
    out << to_json(record).dump() << "\n";
    return static_cast<bool>(out);
  }

  bool clear() const {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
    return !ec;
  }

 private:
  std::filesystem::path path_;
  std::ostream* warnings_;
};

}  // namespace twisted_hurwitz
