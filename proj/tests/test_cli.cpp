#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "citenoise/cli.hpp"

namespace fs = std::filesystem;
using namespace citenoise;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "citenoise");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("citenoise_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& content) const {
    io::write_file(path(name), content);
    return path(name);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, AnalyzeTable1Fixture) {
  ASSERT_EQ(run({"fixtures", "--name", "table1", "--out", path("t1.json")}).code, 0);
  const auto table = run({"analyze", "--input", path("t1.json"), "--format", "table"});
  ASSERT_EQ(table.code, 0) << table.err;
  EXPECT_NE(table.out.find("sigma_LN      0.06"), std::string::npos);
  EXPECT_NE(table.out.find("sigma_PN      0.17"), std::string::npos);
  EXPECT_NE(table.out.find("sigma_SYS     0.18"), std::string::npos);

  const auto json = run({"analyze", "--input", path("t1.json")});
  ASSERT_EQ(json.code, 0);
  const auto doc = io::json::parse(json.out);
  EXPECT_EQ(doc["printed"]["sigma_sys"], "0.18");
  EXPECT_DOUBLE_EQ(doc["mean_ec"].get<double>(), 5.2);
}

TEST_F(CliTest, AnalyzeCsvPairMatchesJson) {
  ASSERT_EQ(run({"fixtures", "--name", "table3", "--format", "csv", "--out", path("t3.csv")}).code, 0);
  ASSERT_TRUE(fs::exists(path("t3.accurate.csv")));
  ASSERT_EQ(run({"fixtures", "--name", "table3", "--out", path("t3.json")}).code, 0);
  const auto a = run({"analyze", "--input", path("t3.csv"), "--accurate", path("t3.accurate.csv")});
  const auto b = run({"analyze", "--input", path("t3.json")});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, ExitCodes) {
  const auto unknown = run({"fixtures", "--name", "table9"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("UnknownFixture"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"analyze"}).code, 2);
  EXPECT_EQ(run({"analyze", "--input", path("t.json"), "--format", "xml"}).code, 2);

  const auto missing = run({"analyze", "--input", path("missing.json")});
  EXPECT_EQ(missing.code, 1);
  EXPECT_FALSE(missing.err.empty());

  auto doc = io::system_to_json(builtin_fixture("table1"));
  doc["realized"][2][3] = 2;
  write("bad.json", io::dump(doc));
  const auto bad = run({"analyze", "--input", path("bad.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("NonBinaryEntry"), std::string::npos);
  EXPECT_NE(bad.err.find("realized[2][3]"), std::string::npos);
}

TEST_F(CliTest, SeedIsMandatory) {
  write("cfg.json", R"({"n_authors": 2, "papers_per_author": 2, "n_cited": 3, "base_error": 0.2})");
  EXPECT_EQ(run({"simulate", "--config", path("cfg.json"), "--out", path("s.json")}).code, 2);
  EXPECT_EQ(run({"aggregate", "--config", path("cfg.json"), "--ns", "10", "--trials", "100"}).code, 2);
}

TEST_F(CliTest, SimulateWritesSystemAndLatentSidecar) {
  write("cfg.json", R"({"n_authors": 3, "papers_per_author": 2, "n_cited": 4,
                        "base_error": 0.3, "level_spread": 0.1})");
  const auto r = run({"simulate", "--config", path("cfg.json"), "--out", path("s.json"), "--latent",
                      path("l.json"), "--seed", "42"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto system = io::load_system(path("s.json"));
  EXPECT_EQ(system.num_citing(), 6u);
  const auto latent = io::json::parse(io::read_file(path("l.json")));
  EXPECT_EQ(latent["author_offsets"].size(), 3u);
  EXPECT_EQ(latent["flip_probabilities"].size(), 6u);
}

TEST_F(CliTest, AggregateClosedFormColumn) {
  write("cfg.json", R"({"should_cite_prob": 0.5})");
  const auto r = run({"aggregate", "--config", path("cfg.json"), "--ns", "10,100", "--trials", "200",
                      "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,empirical_se,theoretical_se");
  EXPECT_NE(r.out.find("\n100,"), std::string::npos);
  EXPECT_NE(r.out.find(",0.050000\n"), std::string::npos);
  EXPECT_EQ(run({"aggregate", "--config", path("cfg.json"), "--ns", "10,x", "--trials", "200",
                 "--seed", "1"})
                .code,
            2);
  EXPECT_EQ(run({"aggregate", "--config", path("cfg.json"), "--ns", "10", "--trials", "5", "--seed",
                 "1"})
                .code,
            1);
}

TEST_F(CliTest, Retest) {
  write("cfg.json", R"({"n_authors": 4, "papers_per_author": 3, "n_cited": 10,
                        "base_error": 0.4, "interaction_spread": 0.2, "replicates": 20})");
  const auto r = run({"retest", "--config", path("cfg.json"), "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = io::json::parse(r.out);
  EXPECT_EQ(doc["replicates"], 20);
  EXPECT_GT(doc["occasion_sigma"].get<double>(), 0.0);

  write("one.json", R"({"replicates": 1})");
  EXPECT_EQ(run({"retest", "--config", path("one.json"), "--seed", "5"}).code, 1);
}

TEST_F(CliTest, Audit) {
  write("refs.txt", "Smith (2014)\nJaffe et al. (2000)\n");
  write("intext.txt", "smith (2014)\nJaffe et al. (2000)\nSmith (2014)\nUnknown (1999)\n");
  write("jt.txt",
        "Cited work | Section | Knowledge flowed\nSection: Introduction\n"
        "Smith (2014) | | Definition of knowledge flow.\nGhost (2001) | | Nothing.\n");
  const auto r = run({"audit", "--refs", path("refs.txt"), "--intext", path("intext.txt"), "--jt",
                      path("jt.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = io::json::parse(r.out);
  EXPECT_DOUBLE_EQ(doc["coverage_ratio"].get<double>(), 0.5);
  EXPECT_EQ(doc["unjustified_citations"],
            (std::vector<std::string>{"jaffe et al. (2000)", "unknown (1999)"}));
  EXPECT_EQ(doc["orphan_justifications"], std::vector<std::string>{"ghost (2001)"});

  write("badjt.txt", "Cited work | Section | Knowledge flowed\na | b | c | d\n");
  const auto bad = run({"audit", "--refs", path("refs.txt"), "--intext", path("intext.txt"), "--jt",
                        path("badjt.txt")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos);
}

TEST_F(CliTest, Omissions) {
  write("sim.json", R"({"papers": [{"id": "a", "timestamp": 2000}, {"id": "b", "timestamp": 2005},
                                   {"id": "c", "timestamp": 2010}],
                        "similarity": [[1, 0.9, 0.2], [0.9, 1, 0.8], [0.2, 0.8, 1]]})");
  write("cites.json", R"({"paper_ids": ["a", "b", "c"], "citations": [[0,0,0],[0,0,0],[1,0,0]]})");
  const auto r = run({"omissions", "--sim", path("sim.json"), "--citations", path("cites.json"), "--k", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = io::json::parse(r.out);
  EXPECT_EQ(doc["flagged"], 2);  // b misses a, c misses b
  EXPECT_EQ(run({"omissions", "--sim", path("sim.json"), "--citations", path("cites.json"), "--k", "0"}).code,
            2);
  const auto wide = run({"omissions", "--sim", path("sim.json"), "--citations", path("cites.json"), "--k", "3"});
  EXPECT_EQ(wide.code, 0);
  EXPECT_NE(wide.err.find("warning"), std::string::npos);
}

TEST_F(CliTest, RandomizedSubcommandsAreByteDeterministic) {
  write("cfg.json", R"({"n_authors": 5, "papers_per_author": 3, "n_cited": 8, "should_cite_prob": 0.3,
                        "base_error": 0.25, "level_spread": 0.1, "interaction_spread": 0.1,
                        "replicates": 10})");
  for (int pass = 0; pass < 2; ++pass) {
    const std::string tag = std::to_string(pass);
    ASSERT_EQ(run({"simulate", "--config", path("cfg.json"), "--out", path("s" + tag + ".json"),
                   "--latent", path("l" + tag + ".json"), "--seed", "7"})
                  .code,
              0);
  }
  EXPECT_EQ(io::read_file(path("s0.json")), io::read_file(path("s1.json")));
  EXPECT_EQ(io::read_file(path("l0.json")), io::read_file(path("l1.json")));
  const auto a = run({"retest", "--config", path("cfg.json"), "--seed", "7"});
  EXPECT_EQ(a.out, run({"retest", "--config", path("cfg.json"), "--seed", "7"}).out);
  const auto g = run({"aggregate", "--config", path("cfg.json"), "--ns", "5,50", "--trials", "300", "--seed", "7"});
  EXPECT_EQ(g.out,
            run({"aggregate", "--config", path("cfg.json"), "--ns", "5,50", "--trials", "300", "--seed", "7"}).out);
  EXPECT_NE(g.out,
            run({"aggregate", "--config", path("cfg.json"), "--ns", "5,50", "--trials", "300", "--seed", "8"}).out);
}
