#include <gtest/gtest.h>

#include <random>

#include "citenoise/citation_model.hpp"
#include "citenoise/fixtures.hpp"
#include "oracles.hpp"

using namespace citenoise;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected citenoise::Error";
  return ErrorKind::ParseError;
}

struct Table1Inputs {
  std::vector<std::string> authors{"I", "II", "III"};
  std::vector<CitingPaper> papers;
  std::vector<std::string> cited{"A", "B", "C", "D", "E"};
  std::vector<std::vector<int>> realized, accurate;

  Table1Inputs() {
    const auto s = builtin_fixture("table1");
    papers = s.citing_papers();
    realized = s.realized().to_rows();
    accurate = s.accurate().to_rows();
  }
  CitationSystem build() const { return build_system(authors, papers, cited, realized, accurate); }
};

}  // namespace

TEST(BuildSystem, Table1Shape) {
  const auto s = Table1Inputs().build();
  EXPECT_EQ(s.num_citing(), 10u);
  EXPECT_EQ(s.num_cited(), 5u);
  EXPECT_EQ(s.papers_of(0), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(s.papers_of(1), (std::vector<std::size_t>{3, 4}));
  EXPECT_EQ(s.papers_of(2), (std::vector<std::size_t>{5, 6, 7, 8, 9}));
}

TEST(BuildSystem, MinimalSystem) {
  const auto s = build_system({"x"}, {{"p", 0}}, {"c"}, std::vector<std::vector<int>>{{0}},
                              std::vector<std::vector<int>>{{0}});
  EXPECT_EQ(s.num_authors(), 1u);
  EXPECT_EQ(s.realized()(0, 0), 0);
}

TEST(BuildSystem, RejectsInvalidInputs) {
  Table1Inputs in;
  in.realized[0][0] = 2;
  EXPECT_EQ(kind_of([&] { in.build(); }), ErrorKind::NonBinaryEntry);

  in = Table1Inputs();
  in.accurate.pop_back();
  EXPECT_EQ(kind_of([&] { in.build(); }), ErrorKind::DimensionMismatch);

  in = Table1Inputs();
  in.realized[3].push_back(0);
  EXPECT_EQ(kind_of([&] { in.build(); }), ErrorKind::DimensionMismatch);

  in = Table1Inputs();
  in.papers[4].author = 7;
  EXPECT_EQ(kind_of([&] { in.build(); }), ErrorKind::UnknownAuthor);

  in = Table1Inputs();
  in.authors.push_back("IV");  // owns no paper
  EXPECT_EQ(kind_of([&] { in.build(); }), ErrorKind::UnknownAuthor);

  in = Table1Inputs();
  in.cited[4] = "A";
  EXPECT_EQ(kind_of([&] { in.build(); }), ErrorKind::DuplicateId);

  in = Table1Inputs();
  in.papers[9].id = "1";
  EXPECT_EQ(kind_of([&] { in.build(); }), ErrorKind::DuplicateId);

  EXPECT_EQ(kind_of([] {
              build_system({"x"}, {}, {"c"}, std::vector<std::vector<int>>{},
                           std::vector<std::vector<int>>{});
            }),
            ErrorKind::EmptySystem);
}

TEST(BuildSystem, Deterministic) { EXPECT_EQ(Table1Inputs().build(), Table1Inputs().build()); }

TEST(ErrorMatrix, Table1FirstRow) {
  const auto e = error_matrix(builtin_fixture("table1"));
  const std::vector<int> expected{1, 0, 1, 1, 1};
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(e(0, k), expected[k]) << k;
}

TEST(ErrorMatrix, PerfectWorldIsZero) {
  auto in = Table1Inputs();
  in.realized = in.accurate;
  const auto e = error_matrix(in.build());
  for (auto v : e.cells()) EXPECT_EQ(v, 0);
}

TEST(ErrorMatrix, MatchesBruteForceXorAndClassification) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = oracle::random_system(gen, 4, 3, 2);
    const auto e = error_matrix(s);
    const auto expected = oracle::xor_grid(s.realized().to_rows(), s.accurate().to_rows());
    EXPECT_EQ(e.to_rows(), expected);
    bool all_zero = true;
    for (std::size_t j = 0; j < s.num_citing(); ++j)
      for (std::size_t k = 0; k < s.num_cited(); ++k) {
        const auto cls = classify_decision(s.realized()(j, k), s.accurate()(j, k));
        EXPECT_EQ(is_error(cls), e(j, k) == 1);
        all_zero = all_zero && e(j, k) == 0;
      }
    EXPECT_EQ(all_zero, s.realized() == s.accurate());
  }
}

TEST(ClassifyDecision, AllFourCases) {
  EXPECT_EQ(classify_decision(true, true), DecisionClass::CorrectPositive);
  EXPECT_EQ(classify_decision(false, false), DecisionClass::CorrectNegative);
  EXPECT_EQ(classify_decision(true, false), DecisionClass::IncorrectPositive);
  EXPECT_EQ(classify_decision(false, true), DecisionClass::IncorrectNegative);

  const auto t1 = builtin_fixture("table1");
  EXPECT_EQ(classify_decision(t1.realized()(0, 0), t1.accurate()(0, 0)),
            DecisionClass::IncorrectNegative);
}
