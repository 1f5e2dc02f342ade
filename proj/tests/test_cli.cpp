#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "twisted_hurwitz/cli.hpp"

using namespace twisted_hurwitz;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "twisted-hurwitz");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("th_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  static inline int counter_ = 0;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Minimal reader for the DOT that to_dot(QuotientCover) emits.
QuotientCover parse_cover_dot(const std::string& dot) {
  QuotientCover cover;
  const std::regex node(R"re(^\s*x(\d+) \[label="x\d+ @ p\d+"\];)re");
  const std::regex edge(R"re(^\s*x(\d+) -> x(\d+) \[label="q(\d+) w=(\d+) k=(\d+)"\];)re");
  std::istringstream in(dot);
  std::string line;
  std::smatch m;
  while (std::getline(in, line)) {
    if (std::regex_search(line, m, node)) cover.vertex_count = std::max(cover.vertex_count, std::stoi(m[1]));
    if (std::regex_search(line, m, edge)) {
      const std::size_t k = std::stoul(m[3]);
      if (cover.edges.size() < k) cover.edges.resize(k);
      cover.edges[k - 1] = {std::stoi(m[1]) - 1, std::stoi(m[2]) - 1, std::stoi(m[4]), std::stoi(m[5])};
    }
  }
  return cover;
}

}  // namespace

TEST(Compute, SymgroupGoldenValue) {
  const auto r = run({"compute", "--method", "symgroup", "-d", "2", "-g", "3", "--connected"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(first_line(r.out), "16");
}

TEST(Compute, AllMethodsAgreeAtDegree2Genus3) {
  EXPECT_EQ(first_line(run({"compute", "--method", "tropical", "-d", "2", "-g", "3"}).out), "16");
  EXPECT_EQ(first_line(run({"compute", "--method", "feynman", "-d", "2", "-g", "3"}).out), "16");
  EXPECT_EQ(first_line(run({"compute", "--method", "fock", "-d", "2", "-g", "3"}).out), "20");
  EXPECT_EQ(first_line(run({"compute", "-d", "2", "-g", "3", "--disconnected"}).out), "20");
}

TEST(Compute, FractionalValuesPrintExactly) {
  EXPECT_EQ(first_line(run({"compute", "-d", "2", "-g", "1"}).out), "3/4");
}

TEST(Compute, IncompatibleParametersExitTwo) {
  auto r = run({"compute", "--method", "feynman", "-d", "2", "-g", "2"});
  EXPECT_EQ(r.code, kExitIncompatible);
  EXPECT_NE(r.err.find("Feynman pipeline defined only for g > 2"), std::string::npos);
  EXPECT_EQ(run({"compute", "--method", "tropical", "-d", "2", "-g", "1"}).code, kExitIncompatible);
  EXPECT_EQ(run({"compute", "--method", "tropical", "-d", "2", "-g", "3", "--disconnected"}).code, kExitIncompatible);
  EXPECT_EQ(run({"compute", "--method", "fock", "-d", "2", "-g", "3", "--connected"}).code, kExitIncompatible);
  EXPECT_EQ(run({"compute", "--method", "nope", "-d", "2", "-g", "3"}).code, kExitIncompatible);
  EXPECT_EQ(run({"compute", "-d", "0", "-g", "3"}).code, kExitIncompatible);
  EXPECT_EQ(run({"compute", "-d", "2", "-g", "3", "--connected", "--disconnected"}).code, kExitIncompatible);
  EXPECT_EQ(run({}).code, kExitIncompatible);
}

TEST(Compute, BudgetExceededExitsThree) {
  auto r = run({"compute", "-d", "3", "-g", "5", "--budget", "1000"});
  EXPECT_EQ(r.code, kExitBudget);
  EXPECT_NE(r.err.find("budget"), std::string::npos);
  ::setenv("TH_BUDGET", "1000", 1);
  EXPECT_EQ(run({"compute", "-d", "3", "-g", "5"}).code, kExitBudget);
  // The flag wins over the environment.
  EXPECT_EQ(run({"compute", "-d", "2", "-g", "3", "--budget", "1000000"}).code, kExitOk);
  ::unsetenv("TH_BUDGET");
}

TEST(Compute, JsonRoundTrip) {
  const auto r = run({"compute", "--method", "feynman", "-d", "2", "-g", "3", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk);
  const auto j = Json::parse(r.out);
  const auto rec = run_record_from_json(j);
  EXPECT_EQ(rec.value(), Rational(16));
  EXPECT_EQ(rec.method, "feynman");
  EXPECT_EQ(rec.normalization_reading, to_string(NormalizationReading::kNumeratorOverAut));
  EXPECT_EQ(rec.tool_version, kToolVersion);
  EXPECT_EQ(run_record_from_json(to_json(rec)), rec);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"method", "d", "g", "connected", "numerator", "denominator",
                                            "wall_time_ms", "normalization_reading", "tool_version"}));
}

TEST(Compute, CsvHasHeader) {
  const auto r = run({"compute", "-d", "2", "-g", "1", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk);
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, csv_header());
  EXPECT_EQ(row.rfind("symgroup,2,1,true,3,4,", 0), 0u);
}

TEST(Compute, DeterministicAcrossThreads) {
  const auto one = run({"compute", "-d", "3", "-g", "4", "--threads", "1"});
  const auto four = run({"compute", "-d", "3", "-g", "4", "--threads", "4"});
  EXPECT_EQ(first_line(one.out), first_line(four.out));
  EXPECT_EQ(first_line(one.out), "1464");
}

TEST(RunRecord, RejectsMalformedJson) {
  EXPECT_THROW(run_record_from_json(Json::parse(R"({"method":"x"})")), Json::exception);
  auto j = to_json(RunRecord{});
  j["numerator"] = "2";
  j["denominator"] = "4";
  EXPECT_THROW(run_record_from_json(j), std::invalid_argument);
}

TEST(Cache, SecondInvocationServedFromCache) {
  TempDir dir;
  const std::string cache = (dir.path() / "cache.jsonl").string();
  const auto first = run({"compute", "-d", "2", "-g", "3", "--cache", cache});
  const auto second = run({"compute", "-d", "2", "-g", "3", "--cache", cache});
  EXPECT_EQ(first.code, kExitOk);
  EXPECT_EQ(second.code, kExitOk);
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(first.err.find("served from cache"), std::string::npos);
  EXPECT_NE(second.err.find("served from cache"), std::string::npos);
  const auto inspect = run({"cache", "inspect", "--cache", cache});
  EXPECT_NE(inspect.out.find("symgroup,2,3,true,16,1,"), std::string::npos);
}

TEST(Cache, DeletedFileRecomputes) {
  TempDir dir;
  const std::string cache = (dir.path() / "cache.jsonl").string();
  run({"compute", "-d", "2", "-g", "3", "--cache", cache});
  EXPECT_EQ(run({"cache", "clear", "--cache", cache}).code, kExitOk);
  EXPECT_FALSE(fs::exists(cache));
  const auto again = run({"compute", "-d", "2", "-g", "3", "--cache", cache});
  EXPECT_EQ(first_line(again.out), "16");
  EXPECT_EQ(again.err.find("served from cache"), std::string::npos);
}

TEST(Cache, CorruptLinesWarnAndRecompute) {
  TempDir dir;
  const fs::path cache = dir.path() / "cache.jsonl";
  {
    std::ofstream f(cache);
    f << "{not json\n";
    RunRecord wrong;
    wrong.method = "symgroup";
    wrong.d = 2;
    wrong.g = 3;
    wrong.numerator = "17";
    auto j = to_json(wrong);
    j.erase("wall_time_ms");
    f << j.dump() << "\n";
  }
  const auto r = run({"compute", "-d", "2", "-g", "3", "--cache", cache.string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(first_line(r.out), "16");
  EXPECT_NE(r.err.find("corrupt"), std::string::npos);
}

TEST(Cache, VersionBumpMisses) {
  TempDir dir;
  const fs::path cache_path = dir.path() / "cache.jsonl";
  RunRecord old;
  old.method = "symgroup";
  old.d = 2;
  old.g = 3;
  old.set_value(99);
  old.tool_version = "0.0.1";
  ResultCache cache(cache_path);
  ASSERT_TRUE(cache.store(old));
  EXPECT_FALSE(cache.lookup({"symgroup", 2, 3, true, kToolVersion, ""}).has_value());
  EXPECT_TRUE(cache.lookup({"symgroup", 2, 3, true, "0.0.1", ""}).has_value());
  EXPECT_EQ(first_line(run({"compute", "-d", "2", "-g", "3", "--cache", cache_path.string()}).out), "16");
}

TEST(Validate, Degree2Genus3AllPass) {
  const auto r = run({"validate", "-d", "2", "-g", "3"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("d=2 g=3 symgroup=16 tropical=16 feynman=16 symgroup*=20 fock=20"), std::string::npos);
  EXPECT_NE(r.out.find("PASS symgroup=feynman d=2 g=3"), std::string::npos);
  EXPECT_EQ(r.out.find("\nFAIL "), std::string::npos);
  EXPECT_NE(r.out.find(" 0 FAIL,"), std::string::npos);
}

TEST(Validate, DegreeOneIsZeroEverywhere) {
  const auto r = run({"validate", "-d", "1", "-g", "5"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("d=1 g=5 symgroup=0 tropical=0 feynman=0 symgroup*=0 fock=0"), std::string::npos);
}

TEST(Validate, BudgetSkipsAreNotFailures) {
  const auto r = run({"validate", "-d", "3", "-g", "4", "--budget", "100000"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("SKIP symgroup=tropical d=3 g=4"), std::string::npos);
  EXPECT_EQ(r.out.find("\nFAIL "), std::string::npos);
  EXPECT_NE(r.out.find(" 0 FAIL,"), std::string::npos);
}

TEST(ExportCovers, JsonHasFiveTwistedCovers) {
  const auto r = run({"export-covers", "-d", "2", "-g", "3", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk);
  const auto j = Json::parse(r.out);
  ASSERT_EQ(j.size(), 5u);
  std::multiset<std::string> mult;
  for (const auto& rec : j) {
    mult.insert(rec["multiplicity"]["numerator"].get<std::string>() + "/" +
                rec["multiplicity"]["denominator"].get<std::string>());
    for (const char* key : {"graph", "order", "weights", "crossings", "c", "g_prime", "lift", "quotient_multiplicity"})
      EXPECT_TRUE(rec.contains(key)) << key;
  }
  EXPECT_EQ(mult, (std::multiset<std::string>{"4/1", "4/1", "4/1", "2/1", "2/1"}));
}

TEST(ExportCovers, EmptyListIsValid) {
  const auto r = run({"export-covers", "-d", "1", "-g", "2", "--format", "json"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(Json::parse(r.out).is_array());
}

TEST(ExportCovers, DotFilesRoundTrip) {
  TempDir dir;
  const auto out_dir = dir.path() / "dot";
  const auto r = run({"export-covers", "-d", "3", "-g", "4", "--format", "dot", "--out", out_dir.string()});
  ASSERT_EQ(r.code, kExitOk);
  const auto covers = enumerate_quotient_covers(3, 4);
  for (std::size_t k = 0; k < covers.size(); ++k) {
    const auto text = slurp(out_dir / ("cover_" + std::to_string(k + 1) + ".dot"));
    ASSERT_FALSE(text.empty());
    EXPECT_EQ(text.rfind("digraph cover_" + std::to_string(k + 1) + " {", 0), 0u);
    EXPECT_EQ(std::count(text.begin(), text.end(), '{'), std::count(text.begin(), text.end(), '}'));
    const auto parsed = parse_cover_dot(text);
    EXPECT_EQ(parsed.vertex_count, covers[k].vertex_count);
    ASSERT_EQ(parsed.edges.size(), covers[k].edges.size());
    for (std::size_t e = 0; e < parsed.edges.size(); ++e) {
      EXPECT_EQ(parsed.edges[e].source, covers[k].edges[e].source);
      EXPECT_EQ(parsed.edges[e].target, covers[k].edges[e].target);
      EXPECT_EQ(parsed.edges[e].weight, covers[k].edges[e].weight);
      EXPECT_EQ(parsed.edges[e].crossings, covers[k].edges[e].crossings);
    }
  }
  EXPECT_FALSE(fs::exists(out_dir / ("cover_" + std::to_string(covers.size() + 1) + ".dot")));
}

TEST(ExportCovers, UnwritablePathExitsFour) {
  TempDir dir;
  const auto blocker = dir.path() / "file";
  std::ofstream(blocker) << "x";
  EXPECT_EQ(run({"export-covers", "-d", "2", "-g", "3", "--out", (blocker / "x.json").string()}).code,
            kExitUnwritable);
  EXPECT_EQ(run({"export-covers", "-d", "2", "-g", "3", "--format", "dot", "--out", (blocker / "d").string()}).code,
            kExitUnwritable);
}

TEST(ExportCovers, GenusOneIsIncompatible) {
  EXPECT_EQ(run({"export-covers", "-d", "2", "-g", "1"}).code, kExitIncompatible);
}
