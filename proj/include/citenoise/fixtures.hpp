#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "citenoise/citation_model.hpp"

namespace citenoise {

namespace detail {

struct FixtureRow {
  std::size_t author;
  const char* paper;
  std::vector<int> realized;
  std::vector<int> accurate;
};

inline CitationSystem make_fixture(std::vector<std::string> cited, const std::vector<FixtureRow>& rows) {
  std::vector<CitingPaper> papers;
  std::vector<std::vector<int>> r, a;
  for (const auto& row : rows) {
    papers.push_back({row.paper, row.author});
    r.push_back(row.realized);
    a.push_back(row.accurate);
  }
  return build_system({"I", "II", "III"}, std::move(papers), std::move(cited), r, a);
}

}  // namespace detail

inline constexpr std::array<std::string_view, 3> kFixtureNames = {"table1", "table2", "table3"};

/// The three published example systems: a mixed-error world (table1), a
/// low-noise world whose counts are all wrong (table2), and a maximally noisy
/// world whose counts are all right (table3).
inline CitationSystem builtin_fixture(std::string_view name) {
  if (name == "table1") {
    return detail::make_fixture({"A", "B", "C", "D", "E"},
                                {
                                    {0, "1", {0, 1, 1, 0, 0}, {1, 1, 0, 1, 1}},
                                    {0, "2", {1, 0, 0, 1, 1}, {1, 1, 0, 1, 1}},
                                    {0, "3", {0, 1, 0, 0, 0}, {1, 0, 0, 0, 1}},
                                    {1, "4", {1, 1, 0, 1, 0}, {1, 0, 0, 0, 1}},
                                    {1, "5", {1, 1, 1, 0, 0}, {1, 0, 1, 0, 1}},
                                    {2, "6", {0, 1, 0, 1, 0}, {1, 0, 0, 0, 0}},
                                    {2, "7", {1, 1, 1, 1, 0}, {1, 0, 0, 1, 0}},
                                    {2, "8", {1, 1, 1, 0, 0}, {1, 1, 1, 1, 0}},
                                    {2, "9", {0, 0, 0, 0, 0}, {1, 1, 0, 0, 0}},
                                    {2, "10", {1, 0, 1, 0, 0}, {1, 1, 0, 0, 0}},
                                });
  }
  if (name == "table2") {
    return detail::make_fixture({"A", "B", "C", "D"},
                                {
                                    {0, "1", {1, 1, 0, 1}, {1, 1, 1, 0}},
                                    {0, "2", {1, 1, 0, 1}, {1, 1, 1, 0}},
                                    {0, "3", {1, 1, 0, 1}, {1, 1, 1, 0}},
                                    {1, "4", {1, 1, 0, 1}, {1, 1, 1, 0}},
                                    {1, "5", {1, 1, 0, 1}, {1, 1, 1, 0}},
                                    {2, "6", {1, 0, 1, 1}, {0, 1, 1, 1}},
                                    {2, "7", {1, 0, 1, 1}, {0, 1, 1, 1}},
                                    {2, "8", {1, 0, 1, 1}, {0, 1, 1, 1}},
                                    {2, "9", {1, 0, 1, 1}, {0, 1, 1, 1}},
                                    {2, "10", {1, 0, 1, 1}, {0, 1, 1, 1}},
                                });
  }
  if (name == "table3") {
    return detail::make_fixture({"A", "B", "C", "D", "E"},
                                {
                                    {0, "1", {1, 1, 1, 1, 1}, {0, 0, 0, 0, 0}},
                                    {0, "2", {0, 0, 0, 0, 0}, {1, 1, 1, 1, 1}},
                                    {0, "3", {1, 1, 1, 1, 1}, {0, 0, 0, 0, 0}},
                                    {1, "4", {0, 0, 0, 0, 0}, {1, 1, 1, 1, 1}},
                                    {1, "5", {1, 1, 1, 1, 1}, {0, 0, 0, 0, 0}},
                                    {1, "6", {0, 0, 0, 0, 0}, {1, 1, 1, 1, 1}},
                                    {2, "7", {0, 1, 0, 1, 1}, {0, 1, 0, 1, 1}},
                                    {2, "8", {0, 1, 0, 1, 1}, {0, 1, 0, 1, 1}},
                                    {2, "9", {0, 1, 0, 1, 1}, {0, 1, 0, 1, 1}},
                                    {2, "10", {0, 1, 0, 1, 1}, {0, 1, 0, 1, 1}},
                                    {2, "11", {0, 1, 0, 1, 1}, {0, 1, 0, 1, 1}},
                                });
  }
  throw Error(ErrorKind::UnknownFixture, "no fixture named '" + std::string(name) + "'");
}

}  // namespace citenoise
