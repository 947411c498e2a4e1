#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "citenoise/error.hpp"

namespace citenoise {

/// Dense row-major matrix of 0/1 citation decisions.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  explicit BinaryMatrix(std::size_t rows, std::size_t cols, std::uint8_t fill = 0)
      : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::uint8_t operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
  std::uint8_t& operator()(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }

  std::span<const std::uint8_t> row(std::size_t r) const {
    return {cells_.data() + r * cols_, cols_};
  }
  std::span<const std::uint8_t> cells() const noexcept { return cells_; }

  std::vector<std::vector<int>> to_rows() const {
    std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
    return out;
  }

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> cells_;
};

struct CitingPaper {
  std::string id;
  std::size_t author = 0;

  friend bool operator==(const CitingPaper&, const CitingPaper&) = default;
};

/// A closed social citation system: authors write citing papers, each of
/// which makes one realized (R) and one accurate (A) decision per cited paper.
/// Instances are only obtainable through build_system and are immutable.
class CitationSystem {
 public:
  const std::vector<std::string>& author_ids() const noexcept { return author_ids_; }
  const std::vector<CitingPaper>& citing_papers() const noexcept { return citing_papers_; }
  const std::vector<std::string>& cited_paper_ids() const noexcept { return cited_paper_ids_; }
  const BinaryMatrix& realized() const noexcept { return realized_; }
  const BinaryMatrix& accurate() const noexcept { return accurate_; }

  std::size_t num_authors() const noexcept { return author_ids_.size(); }
  std::size_t num_citing() const noexcept { return citing_papers_.size(); }
  std::size_t num_cited() const noexcept { return cited_paper_ids_.size(); }

  /// Citing-paper indices owned by author i, in input order.
  const std::vector<std::size_t>& papers_of(std::size_t author) const {
    if (author >= papers_by_author_.size())
      throw Error(ErrorKind::IndexOutOfRange, "author index " + std::to_string(author));
    return papers_by_author_[author];
  }

  friend bool operator==(const CitationSystem& a, const CitationSystem& b) {
    return a.author_ids_ == b.author_ids_ && a.citing_papers_ == b.citing_papers_ &&
           a.cited_paper_ids_ == b.cited_paper_ids_ && a.realized_ == b.realized_ &&
           a.accurate_ == b.accurate_;
  }

 private:
  friend CitationSystem build_system(std::vector<std::string>, std::vector<CitingPaper>,
                                     std::vector<std::string>, BinaryMatrix, BinaryMatrix);

  std::vector<std::string> author_ids_;
  std::vector<CitingPaper> citing_papers_;
  std::vector<std::string> cited_paper_ids_;
  BinaryMatrix realized_;
  BinaryMatrix accurate_;
  std::vector<std::vector<std::size_t>> papers_by_author_;
};

namespace detail {

inline void require_unique(const std::vector<std::string>& ids, const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& id : ids)
    if (!seen.insert(id).second)
      throw Error(ErrorKind::DuplicateId, std::string("duplicate ") + what + " id '" + id + "'");
}

inline BinaryMatrix to_binary(const std::vector<std::vector<int>>& rows, std::size_t expected_rows,
                              std::size_t expected_cols, const char* name) {
  if (rows.size() != expected_rows)
    throw Error(ErrorKind::DimensionMismatch, std::string(name) + " has " +
                                                  std::to_string(rows.size()) + " rows, expected " +
                                                  std::to_string(expected_rows));
  BinaryMatrix m(expected_rows, expected_cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != expected_cols)
      throw Error(ErrorKind::DimensionMismatch,
                  std::string(name) + " row " + std::to_string(r) + " has " +
                      std::to_string(rows[r].size()) + " columns, expected " +
                      std::to_string(expected_cols));
    for (std::size_t c = 0; c < expected_cols; ++c) {
      int v = rows[r][c];
      if (v != 0 && v != 1)
        throw Error(ErrorKind::NonBinaryEntry, std::string(name) + "[" + std::to_string(r) + "][" +
                                                   std::to_string(c) + "] = " + std::to_string(v));
      m(r, c) = static_cast<std::uint8_t>(v);
    }
  }
  return m;
}

}  // namespace detail

inline CitationSystem build_system(std::vector<std::string> author_ids,
                                   std::vector<CitingPaper> citing_papers,
                                   std::vector<std::string> cited_paper_ids, BinaryMatrix realized,
                                   BinaryMatrix accurate) {
  if (author_ids.empty() || citing_papers.empty() || cited_paper_ids.empty())
    throw Error(ErrorKind::EmptySystem, "system needs at least one author, citing and cited paper");
  if (realized.rows() != citing_papers.size() || realized.cols() != cited_paper_ids.size() ||
      accurate.rows() != realized.rows() || accurate.cols() != realized.cols())
    throw Error(ErrorKind::DimensionMismatch,
                "matrices must be " + std::to_string(citing_papers.size()) + "x" +
                    std::to_string(cited_paper_ids.size()));

  detail::require_unique(author_ids, "author");
  std::vector<std::string> paper_ids;
  paper_ids.reserve(citing_papers.size());
  for (const auto& p : citing_papers) paper_ids.push_back(p.id);
  detail::require_unique(paper_ids, "citing paper");
  detail::require_unique(cited_paper_ids, "cited paper");

  std::vector<std::vector<std::size_t>> by_author(author_ids.size());
  for (std::size_t j = 0; j < citing_papers.size(); ++j) {
    if (citing_papers[j].author >= author_ids.size())
      throw Error(ErrorKind::UnknownAuthor, "citing paper '" + citing_papers[j].id +
                                                "' references author index " +
                                                std::to_string(citing_papers[j].author));
    by_author[citing_papers[j].author].push_back(j);
  }
  for (std::size_t i = 0; i < by_author.size(); ++i)
    if (by_author[i].empty())
      throw Error(ErrorKind::UnknownAuthor, "author '" + author_ids[i] + "' owns no citing paper");

  CitationSystem s;
  s.author_ids_ = std::move(author_ids);
  s.citing_papers_ = std::move(citing_papers);
  s.cited_paper_ids_ = std::move(cited_paper_ids);
  s.realized_ = std::move(realized);
  s.accurate_ = std::move(accurate);
  s.papers_by_author_ = std::move(by_author);
  return s;
}

/// Overload taking integer rows so that non-binary input can be rejected.
inline CitationSystem build_system(std::vector<std::string> author_ids,
                                   std::vector<CitingPaper> citing_papers,
                                   std::vector<std::string> cited_paper_ids,
                                   const std::vector<std::vector<int>>& realized,
                                   const std::vector<std::vector<int>>& accurate) {
  if (author_ids.empty() || citing_papers.empty() || cited_paper_ids.empty())
    throw Error(ErrorKind::EmptySystem, "system needs at least one author, citing and cited paper");
  auto r = detail::to_binary(realized, citing_papers.size(), cited_paper_ids.size(), "realized");
  auto a = detail::to_binary(accurate, citing_papers.size(), cited_paper_ids.size(), "accurate");
  return build_system(std::move(author_ids), std::move(citing_papers), std::move(cited_paper_ids),
                      std::move(r), std::move(a));
}

using ErrorMatrix = BinaryMatrix;

/// E[j][k] = |R[j][k] - A[j][k]|.
inline ErrorMatrix error_matrix(const CitationSystem& system) {
  const auto& r = system.realized();
  const auto& a = system.accurate();
  ErrorMatrix e(r.rows(), r.cols());
  for (std::size_t j = 0; j < r.rows(); ++j)
    for (std::size_t k = 0; k < r.cols(); ++k) e(j, k) = r(j, k) ^ a(j, k);
  return e;
}

enum class DecisionClass { CorrectPositive, CorrectNegative, IncorrectPositive, IncorrectNegative };

constexpr DecisionClass classify_decision(bool realized, bool accurate) noexcept {
  if (realized) return accurate ? DecisionClass::CorrectPositive : DecisionClass::IncorrectPositive;
  return accurate ? DecisionClass::IncorrectNegative : DecisionClass::CorrectNegative;
}

constexpr bool is_error(DecisionClass c) noexcept {
  return c == DecisionClass::IncorrectPositive || c == DecisionClass::IncorrectNegative;
}

}  // namespace citenoise
