#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "citenoise/citation_model.hpp"
#include "citenoise/error.hpp"

namespace citenoise {

// ---------------------------------------------------------------------------
// Key canonicalization

namespace detail {

inline char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  auto cont = [&](std::size_t off) -> char32_t {
    if (pos + off >= s.size()) return 0xFFFD;
    return static_cast<unsigned char>(s[pos + off]) & 0x3F;
  };
  if (b0 < 0x80) {
    pos += 1;
    return b0;
  }
  if ((b0 >> 5) == 0x6) {
    char32_t cp = ((b0 & 0x1F) << 6) | cont(1);
    pos += 2;
    return cp;
  }
  if ((b0 >> 4) == 0xE) {
    char32_t cp = ((b0 & 0x0F) << 12) | (cont(1) << 6) | cont(2);
    pos += 3;
    return cp;
  }
  if ((b0 >> 3) == 0x1E) {
    char32_t cp = ((b0 & 0x07) << 18) | (cont(1) << 12) | (cont(2) << 6) | cont(3);
    pos += 4;
    return cp;
  }
  pos += 1;
  return 0xFFFD;
}

inline void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Simple case folding for Latin, Greek and Cyrillic letters.
inline char32_t fold_case(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 0x20;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c >= 0x100 && c <= 0x17F) {
    if (c == 0x130) return 'i';
    if (c == 0x178) return 0xFF;
    if (c == 0x17F) return 's';
    // Latin Extended-A pairs switch parity at U+0139..U+0148 and U+0179..U+017E.
    const bool odd_upper = (c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E);
    if (c == 0x138 || c == 0x149) return c;
    if (odd_upper) return (c % 2 == 1) ? c + 1 : c;
    return (c % 2 == 0) ? c + 1 : c;
  }
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 0x20;
  if (c == 0x3C2) return 0x3C3;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  return c;
}

inline bool is_space(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' || c == 0xA0;
}

}  // namespace detail

/// Case-folds, trims, and collapses internal whitespace runs to one space.
inline std::string canonical_key(std::string_view key) {
  std::string out;
  out.reserve(key.size());
  bool pending_space = false;
  std::size_t pos = 0;
  while (pos < key.size()) {
    const char32_t cp = detail::decode_utf8(key, pos);
    if (detail::is_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    if (cp == 0xDF) {
      out += "ss";
      continue;
    }
    detail::encode_utf8(detail::fold_case(cp), out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Omission indicator

struct PublishedPaper {
  std::string id;
  std::int64_t timestamp = 0;
};

/// Symmetric pairwise similarity over papers; the diagonal is ignored.
class SimilarityMatrix {
 public:
  SimilarityMatrix(std::vector<PublishedPaper> papers, std::vector<std::vector<double>> scores)
      : papers_(std::move(papers)), scores_(std::move(scores)) {
    const std::size_t n = papers_.size();
    if (scores_.size() != n)
      throw Error(ErrorKind::DimensionMismatch, "similarity matrix must be square over the papers");
    std::vector<std::string> ids;
    for (const auto& p : papers_) ids.push_back(p.id);
    detail::require_unique(ids, "paper");
    for (std::size_t a = 0; a < n; ++a) {
      if (scores_[a].size() != n)
        throw Error(ErrorKind::DimensionMismatch,
                    "similarity row " + std::to_string(a) + " has wrong length");
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const double v = scores_[a][b];
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
          throw Error(ErrorKind::InvalidScore, "similarity[" + std::to_string(a) + "][" +
                                                   std::to_string(b) + "] outside [0, 1]");
        if (std::abs(v - scores_[b][a]) > 1e-9)
          throw Error(ErrorKind::NonSymmetric,
                      "similarity between '" + papers_[a].id + "' and '" + papers_[b].id +
                          "' is not symmetric");
      }
  }

  std::size_t size() const noexcept { return papers_.size(); }
  const std::vector<PublishedPaper>& papers() const noexcept { return papers_; }
  double operator()(std::size_t a, std::size_t b) const { return scores_[a][b]; }

  /// Publication order: timestamp, then id.
  bool earlier(std::size_t a, std::size_t b) const {
    const auto& pa = papers_[a];
    const auto& pb = papers_[b];
    return pa.timestamp != pb.timestamp ? pa.timestamp < pb.timestamp : pa.id < pb.id;
  }

 private:
  std::vector<PublishedPaper> papers_;
  std::vector<std::vector<double>> scores_;
};

struct OmissionFlag {
  std::size_t citing = 0;  // index into SimilarityMatrix::papers()
  std::size_t earlier = 0;
  bool flag = false;

  friend bool operator==(const OmissionFlag&, const OmissionFlag&) = default;
};

struct OmissionFlags {
  std::size_t k = 0;
  // One entry per (citing, earlier) pair, citing papers in input order and
  // predecessors in publication order.
  std::vector<OmissionFlag> flags;
  std::vector<std::string> warnings;

  bool at(std::size_t citing, std::size_t earlier) const {
    for (const auto& f : flags)
      if (f.citing == citing && f.earlier == earlier) return f.flag;
    throw Error(ErrorKind::IndexOutOfRange, "pair is not a (citing, earlier) pair");
  }
};

/// Flags (j, p) when p is among the k predecessors most similar to j and j
/// does not cite p. `citations[j][p]` is 1 when paper j cites paper p.
inline OmissionFlags omission_indicator(const SimilarityMatrix& sim,
                                        const std::vector<std::vector<int>>& citations,
                                        std::size_t k) {
  const std::size_t n = sim.size();
  if (k == 0) throw Error(ErrorKind::IndexOutOfRange, "k must be >= 1");
  if (citations.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "citation matrix must be square over the papers");
  for (const auto& row : citations)
    if (row.size() != n)
      throw Error(ErrorKind::DimensionMismatch, "citation matrix must be square over the papers");

  OmissionFlags out;
  out.k = k;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> preds;
    for (std::size_t p = 0; p < n; ++p)
      if (p != j && sim.earlier(p, j)) preds.push_back(p);
    if (preds.empty()) continue;
    if (preds.size() < k)
      out.warnings.push_back("paper '" + sim.papers()[j].id + "' has only " +
                             std::to_string(preds.size()) + " earlier papers (k = " +
                             std::to_string(k) + "); using all of them");

    std::vector<std::size_t> ranked = preds;
    std::sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
      if (sim(j, a) != sim(j, b)) return sim(j, a) > sim(j, b);
      return sim.earlier(a, b);
    });
    ranked.resize(std::min(k, ranked.size()));
    std::sort(preds.begin(), preds.end(),
              [&](std::size_t a, std::size_t b) { return sim.earlier(a, b); });
    for (auto p : preds) {
      const bool in_set = std::find(ranked.begin(), ranked.end(), p) != ranked.end();
      out.flags.push_back({j, p, in_set && citations[j][p] == 0});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Citation justification tables

struct JustificationEntry {
  std::string cited_work_key;
  std::string section_label;
  std::string knowledge_flow;
  std::size_t source_line = 0;  // diagnostics only, ignored by ==

  friend bool operator==(const JustificationEntry& a, const JustificationEntry& b) {
    return a.cited_work_key == b.cited_work_key && a.section_label == b.section_label &&
           a.knowledge_flow == b.knowledge_flow;
  }
};

struct JustificationTable {
  std::vector<JustificationEntry> entries;

  friend bool operator==(const JustificationTable&, const JustificationTable&) = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto bar = line.find('|', start);
    fields.emplace_back(trim(line.substr(start, bar == std::string_view::npos ? bar : bar - start)));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return fields;
}

inline bool is_header(const std::vector<std::string>& fields) {
  auto eq = [](const std::string& a, std::string_view b) { return canonical_key(a) == b; };
  if (fields.size() == 2) return eq(fields[0], "cited work") && eq(fields[1], "knowledge flowed");
  if (fields.size() == 3)
    return eq(fields[0], "cited work") && eq(fields[1], "section") &&
           eq(fields[2], "knowledge flowed");
  return false;
}

inline constexpr std::string_view kSectionPrefix = "Section:";

}  // namespace detail

/// Parses the `|`-delimited justification format:
///
///   # comment
///   Cited work | Section | Knowledge flowed
///   Section: Introduction
///   Smith (2014) | | Definition of knowledge flow.
///   Jaffe et al. (2000) | Results | Half of patent citations ...
///
/// Rows with two fields omit the section. An empty section inherits the most
/// recent `Section:` row. LF and CRLF line endings are accepted.
inline JustificationTable parse_justification_table(std::string_view text) {
  JustificationTable table;
  std::string current_section;
  bool seen_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') {
      if (nl == text.size()) break;
      continue;
    }

    auto fields = detail::split_fields(line);
    if (!seen_header) {
      if (!detail::is_header(fields))
        throw Error(ErrorKind::MalformedRow,
                    "line " + std::to_string(line_no) +
                        ": expected header 'Cited work | Section | Knowledge flowed'",
                    line_no);
      seen_header = true;
    } else if (fields.front().starts_with(detail::kSectionPrefix)) {
      const bool rest_empty = std::all_of(fields.begin() + 1, fields.end(),
                                          [](const std::string& f) { return f.empty(); });
      if (fields.size() > 3 || !rest_empty)
        throw Error(ErrorKind::MalformedRow,
                    "line " + std::to_string(line_no) + ": section row carries extra fields",
                    line_no);
      current_section =
          std::string(detail::trim(std::string_view(fields.front()).substr(detail::kSectionPrefix.size())));
    } else {
      if (fields.size() != 2 && fields.size() != 3)
        throw Error(ErrorKind::MalformedRow,
                    "line " + std::to_string(line_no) + ": expected 2 or 3 fields, found " +
                        std::to_string(fields.size()),
                    line_no);
      JustificationEntry e;
      e.cited_work_key = fields.front();
      e.knowledge_flow = fields.back();
      e.section_label = (fields.size() == 3 && !fields[1].empty()) ? fields[1] : current_section;
      e.source_line = line_no;
      if (e.cited_work_key.empty())
        throw Error(ErrorKind::EmptyKey, "line " + std::to_string(line_no) + ": empty cited work",
                    line_no);
      if (e.knowledge_flow.empty())
        throw Error(ErrorKind::EmptyReason,
                    "line " + std::to_string(line_no) + ": empty knowledge flow", line_no);
      table.entries.push_back(std::move(e));
    }
    if (nl == text.size()) break;
  }
  return table;
}

/// Emits the three-column form with LF line endings.
inline std::string serialize_justification_table(const JustificationTable& table) {
  std::string out = "Cited work | Section | Knowledge flowed\n";
  for (const auto& e : table.entries) {
    for (const std::string* field : {&e.cited_work_key, &e.section_label, &e.knowledge_flow})
      if (field->find_first_of("|\n\r") != std::string::npos || detail::trim(*field) != *field)
        throw Error(ErrorKind::MalformedRow,
                    "field '" + *field + "' cannot be written in the justification format");
    if (e.cited_work_key.empty()) throw Error(ErrorKind::EmptyKey, "entry with empty cited work");
    if (e.knowledge_flow.empty()) throw Error(ErrorKind::EmptyReason, "entry with empty reason");
    if (e.cited_work_key.starts_with(detail::kSectionPrefix))
      throw Error(ErrorKind::MalformedRow, "cited work may not start with 'Section:'");
    out += e.cited_work_key;
    out += e.section_label.empty() ? " |" : " | " + e.section_label;
    out += " | ";
    out += e.knowledge_flow;
    out += '\n';
  }
  return out;
}

struct DuplicateEntry {
  std::string key;  // canonical
  std::string section;
  std::size_t count = 0;

  friend bool operator==(const DuplicateEntry&, const DuplicateEntry&) = default;
};

struct AuditReport {
  std::vector<std::string> unjustified_citations;  // canonical, first-appearance order
  std::vector<std::string> orphan_justifications;
  std::vector<DuplicateEntry> duplicate_entries;
  std::size_t in_text_total = 0;
  std::size_t in_text_justified = 0;
  double coverage_ratio = 1.0;
};

/// Keys are canonicalized with canonical_key. A key justified anywhere in the
/// table justifies every in-text occurrence of it.
inline AuditReport audit_justification(std::span<const std::string> reference_keys,
                                       std::span<const std::string> in_text_keys,
                                       const JustificationTable& jt) {
  std::unordered_set<std::string> references;
  for (const auto& k : reference_keys) references.insert(canonical_key(k));
  std::unordered_set<std::string> justified;
  for (const auto& e : jt.entries) justified.insert(canonical_key(e.cited_work_key));

  AuditReport rep;
  std::unordered_set<std::string> listed;
  for (const auto& raw : in_text_keys) {
    const auto key = canonical_key(raw);
    ++rep.in_text_total;
    if (justified.contains(key)) {
      ++rep.in_text_justified;
    } else if (listed.insert(key).second) {
      rep.unjustified_citations.push_back(key);
    }
  }

  std::unordered_set<std::string> orphan_seen;
  std::vector<std::pair<std::string, std::string>> pair_order;
  std::vector<std::size_t> pair_counts;
  for (const auto& e : jt.entries) {
    const auto key = canonical_key(e.cited_work_key);
    if (!references.contains(key) && orphan_seen.insert(key).second)
      rep.orphan_justifications.push_back(key);
    std::pair<std::string, std::string> pair{key, canonical_key(e.section_label)};
    auto it = std::find(pair_order.begin(), pair_order.end(), pair);
    if (it == pair_order.end()) {
      pair_order.push_back(std::move(pair));
      pair_counts.push_back(1);
    } else {
      ++pair_counts[static_cast<std::size_t>(it - pair_order.begin())];
    }
  }
  for (std::size_t i = 0; i < pair_order.size(); ++i)
    if (pair_counts[i] > 1)
      rep.duplicate_entries.push_back({pair_order[i].first, pair_order[i].second, pair_counts[i]});

  rep.coverage_ratio = rep.in_text_total == 0 ? 1.0
                                              : static_cast<double>(rep.in_text_justified) /
                                                    static_cast<double>(rep.in_text_total);
  return rep;
}

}  // namespace citenoise
