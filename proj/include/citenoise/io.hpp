#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "citenoise/audit.hpp"
#include "citenoise/citation_model.hpp"
#include "citenoise/error.hpp"
#include "citenoise/noise_metrics.hpp"
#include "citenoise/simulator.hpp"

namespace citenoise::io {

using json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "1";

// ---------------------------------------------------------------------------
// Printed values

/// Rounds half away from zero to two decimals. The 1e-9 nudge keeps decimal
/// ties such as 0.125 (stored as 0.12499999...) rounding up.
inline double round2(double value) {
  const double scaled = std::abs(value) * 100.0;
  const double r = std::floor(scaled + 0.5 + 1e-9) / 100.0;
  return std::copysign(r, value);
}

inline std::string printed(double value) {
  char buf[32];
  double r = round2(value);
  if (r == 0.0) r = 0.0;  // drop negative zero
  std::snprintf(buf, sizeof buf, "%.2f", r);
  return buf;
}

inline std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
  out << content;
}

/// Serializes with two-space indent and a trailing LF.
inline std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

inline json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset to a line number.
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i)
      if (text[i] == '\n') ++line;
    throw Error(ErrorKind::ParseError,
                std::string(what) + ": line " + std::to_string(line) + ": " + e.what(), line);
  }
}

namespace detail {

template <typename T>
T field(const json& doc, const std::string& name, std::string_view where) {
  if (!doc.is_object() || !doc.contains(name))
    throw Error(ErrorKind::ParseError, std::string(where) + ": missing field '" + name + "'");
  try {
    return doc.at(name).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError,
                std::string(where) + ": field '" + name + "' has the wrong type (" + e.what() + ")");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// SystemDocument

inline json system_to_json(const CitationSystem& s) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["author_ids"] = s.author_ids();
  json papers = json::array();
  for (const auto& p : s.citing_papers())
    papers.push_back({{"id", p.id}, {"author_id", s.author_ids()[p.author]}});
  doc["citing_papers"] = std::move(papers);
  doc["cited_paper_ids"] = s.cited_paper_ids();
  doc["realized"] = s.realized().to_rows();
  doc["accurate"] = s.accurate().to_rows();
  return doc;
}

inline CitationSystem system_from_json(const json& doc) {
  constexpr std::string_view where = "system document";
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "system document must be an object");
  const auto version = detail::field<std::string>(doc, "schema_version", where);
  if (version != kSchemaVersion)
    throw Error(ErrorKind::SchemaVersionUnsupported, "schema_version '" + version + "'");

  auto authors = detail::field<std::vector<std::string>>(doc, "author_ids", where);
  std::map<std::string, std::size_t> author_index;
  for (std::size_t i = 0; i < authors.size(); ++i) author_index.emplace(authors[i], i);

  const auto& papers_doc = doc.contains("citing_papers") ? doc.at("citing_papers") : json();
  if (!papers_doc.is_array())
    throw Error(ErrorKind::ParseError, "system document: 'citing_papers' must be an array");
  std::vector<CitingPaper> papers;
  for (std::size_t j = 0; j < papers_doc.size(); ++j) {
    const std::string at = "citing_papers[" + std::to_string(j) + "]";
    auto id = detail::field<std::string>(papers_doc[j], "id", at);
    auto author = detail::field<std::string>(papers_doc[j], "author_id", at);
    auto it = author_index.find(author);
    if (it == author_index.end())
      throw Error(ErrorKind::UnknownAuthor, at + ": author '" + author + "' is not listed");
    papers.push_back({std::move(id), it->second});
  }

  auto cited = detail::field<std::vector<std::string>>(doc, "cited_paper_ids", where);
  auto realized = detail::field<std::vector<std::vector<int>>>(doc, "realized", where);
  auto accurate = detail::field<std::vector<std::vector<int>>>(doc, "accurate", where);
  return build_system(std::move(authors), std::move(papers), std::move(cited), realized, accurate);
}

// ---------------------------------------------------------------------------
// CSV matrix pair
//
//   author,paper,A,B,C
//   I,1,0,1,1
//
// One file for R and one for A; both must list the same rows and columns.

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(citenoise::detail::trim(
        line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct CsvMatrix {
  std::vector<std::string> cited;
  std::vector<std::pair<std::string, std::string>> rows;  // (author, paper)
  std::vector<std::vector<int>> values;
};

inline CsvMatrix parse_csv_matrix(std::string_view text, std::string_view name) {
  CsvMatrix m;
  std::size_t line_no = 0, pos = 0;
  bool header = true;
  auto fail = [&](ErrorKind kind, const std::string& msg) {
    throw Error(kind, std::string(name) + ": line " + std::to_string(line_no) + ": " + msg, line_no);
  };
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (citenoise::detail::trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (header) {
      if (fields.size() < 3 || fields[0] != "author" || fields[1] != "paper")
        fail(ErrorKind::ParseError, "header must be 'author,paper,<cited ids...>'");
      m.cited.assign(fields.begin() + 2, fields.end());
      header = false;
      continue;
    }
    if (fields.size() != m.cited.size() + 2)
      fail(ErrorKind::ParseError, "expected " + std::to_string(m.cited.size() + 2) + " fields, found " +
                                      std::to_string(fields.size()));
    std::vector<int> row;
    for (std::size_t c = 2; c < fields.size(); ++c) {
      const auto& f = fields[c];
      if (f == "0" || f == "1") {
        row.push_back(f[0] - '0');
      } else {
        fail(f.find_first_not_of("-0123456789") == std::string::npos && !f.empty()
                 ? ErrorKind::NonBinaryEntry
                 : ErrorKind::ParseError,
             "row '" + fields[1] + "', column '" + m.cited[c - 2] + "': value '" + f +
                 "' is not 0 or 1");
      }
    }
    m.rows.emplace_back(fields[0], fields[1]);
    m.values.push_back(std::move(row));
  }
  if (header) throw Error(ErrorKind::ParseError, std::string(name) + ": empty file");
  return m;
}

inline std::string csv_matrix(const CitationSystem& s, const BinaryMatrix& m) {
  std::string out = "author,paper";
  for (const auto& id : s.cited_paper_ids()) out += "," + id;
  out += '\n';
  for (std::size_t j = 0; j < s.num_citing(); ++j) {
    const auto& p = s.citing_papers()[j];
    out += s.author_ids()[p.author] + "," + p.id;
    for (auto v : m.row(j)) out += v ? ",1" : ",0";
    out += '\n';
  }
  return out;
}

}  // namespace detail

inline CitationSystem system_from_csv(std::string_view realized_csv, std::string_view accurate_csv) {
  auto r = detail::parse_csv_matrix(realized_csv, "realized csv");
  auto a = detail::parse_csv_matrix(accurate_csv, "accurate csv");
  if (r.cited != a.cited || r.rows != a.rows)
    throw Error(ErrorKind::DimensionMismatch, "realized and accurate csv list different rows or columns");

  std::vector<std::string> authors;
  std::map<std::string, std::size_t> index;
  std::vector<CitingPaper> papers;
  for (const auto& [author, paper] : r.rows) {
    auto [it, inserted] = index.emplace(author, authors.size());
    if (inserted) authors.push_back(author);
    papers.push_back({paper, it->second});
  }
  return build_system(std::move(authors), std::move(papers), std::move(r.cited), r.values, a.values);
}

inline std::pair<std::string, std::string> system_to_csv(const CitationSystem& s) {
  return {detail::csv_matrix(s, s.realized()), detail::csv_matrix(s, s.accurate())};
}

/// Loads a system document (JSON); a path ending in ".csv" is treated as the
/// realized matrix and `accurate_csv_path` must name the accurate one.
inline CitationSystem load_system(const std::string& path, const std::string& accurate_csv_path = {}) {
  if (path.ends_with(".csv")) {
    if (accurate_csv_path.empty())
      throw Error(ErrorKind::ParseError, "csv input needs both the realized and accurate files");
    return system_from_csv(read_file(path), read_file(accurate_csv_path));
  }
  return system_from_json(parse_json(read_file(path), path));
}

// ---------------------------------------------------------------------------
// ReportDocument

inline json report_to_json(const CitationSystem& s, const NoiseReport& r) {
  json doc;
  doc["schema_version"] = kSchemaVersion;

  json citing = json::array();
  for (std::size_t j = 0; j < r.citing.size(); ++j) {
    const auto& c = r.citing[j];
    citing.push_back({{"id", s.citing_papers()[j].id},
                      {"author_id", s.author_ids()[s.citing_papers()[j].author]},
                      {"pr", c.pr},
                      {"pa", c.pa},
                      {"pe", c.pe}});
  }
  json authors = json::array();
  for (std::size_t i = 0; i < r.author_error_rates.size(); ++i)
    authors.push_back({{"id", s.author_ids()[i]},
                       {"papers", s.papers_of(i).size()},
                       {"pe", r.author_error_rates[i]},
                       {"sigma_pn", r.author_pattern_noise[i]}});
  json cited = json::array();
  for (std::size_t k = 0; k < r.cited.size(); ++k) {
    const auto& c = r.cited[k];
    cited.push_back({{"id", s.cited_paper_ids()[k]},
                     {"pr", c.pr},
                     {"tc", c.tc},
                     {"ec", c.ec},
                     {"pa", c.pa},
                     {"pe", c.pe}});
  }
  doc["citing_papers"] = std::move(citing);
  doc["authors"] = std::move(authors);
  doc["cited_papers"] = std::move(cited);
  doc["pa"] = r.mean_accuracy;
  doc["pe"] = r.mean_error;
  doc["sigma_ln"] = r.sigma_ln;
  doc["sigma_pn"] = r.sigma_pn;
  doc["sigma_sys"] = r.sigma_sys;
  doc["mean_tc"] = r.bias.mean_tc;
  doc["mean_ec"] = r.bias.mean_ec;
  doc["bias"] = r.bias.bias;
  doc["bias_direction"] = to_string(r.bias.direction);

  json p;
  p["pa"] = printed(r.mean_accuracy);
  p["pe"] = printed(r.mean_error);
  p["sigma_ln"] = printed(r.sigma_ln);
  p["sigma_pn"] = printed(r.sigma_pn);
  p["sigma_sys"] = printed(r.sigma_sys);
  p["mean_tc"] = printed(r.bias.mean_tc);
  p["mean_ec"] = printed(r.bias.mean_ec);
  p["bias"] = printed(r.bias.bias);
  json pa = json::array();
  for (std::size_t i = 0; i < r.author_error_rates.size(); ++i)
    pa.push_back({{"id", s.author_ids()[i]},
                  {"pe", printed(r.author_error_rates[i])},
                  {"sigma_pn", printed(r.author_pattern_noise[i])}});
  p["authors"] = std::move(pa);
  doc["printed"] = std::move(p);
  return doc;
}

/// Aligned plain-text rendering of the printed (2-decimal) values.
inline std::string report_to_table(const CitationSystem& s, const NoiseReport& r) {
  std::ostringstream out;
  out << std::left;
  out << std::setw(14) << "citing paper" << std::setw(10) << "author" << std::setw(7) << "PR"
      << std::setw(7) << "PA" << "PE\n";
  for (std::size_t j = 0; j < r.citing.size(); ++j) {
    const auto& p = s.citing_papers()[j];
    out << std::setw(14) << p.id << std::setw(10) << s.author_ids()[p.author] << std::setw(7)
        << printed(r.citing[j].pr) << std::setw(7) << printed(r.citing[j].pa)
        << printed(r.citing[j].pe) << '\n';
  }
  out << '\n' << std::setw(14) << "author" << std::setw(8) << "papers" << std::setw(7) << "PE_i"
      << "sigma_PN,i\n";
  for (std::size_t i = 0; i < r.author_error_rates.size(); ++i)
    out << std::setw(14) << s.author_ids()[i] << std::setw(8) << s.papers_of(i).size()
        << std::setw(7) << printed(r.author_error_rates[i]) << printed(r.author_pattern_noise[i])
        << '\n';
  out << '\n' << std::setw(14) << "cited paper" << std::setw(7) << "PR" << std::setw(6) << "TC"
      << std::setw(6) << "EC" << std::setw(7) << "PA" << "PE\n";
  for (std::size_t k = 0; k < r.cited.size(); ++k) {
    const auto& c = r.cited[k];
    out << std::setw(14) << s.cited_paper_ids()[k] << std::setw(7) << printed(c.pr) << std::setw(6)
        << c.tc << std::setw(6) << c.ec << std::setw(7) << printed(c.pa) << printed(c.pe) << '\n';
  }
  out << '\n';
  auto line = [&](const char* label, const std::string& value) {
    out << std::setw(14) << label << value << '\n';
  };
  line("PA", printed(r.mean_accuracy));
  line("PE", printed(r.mean_error));
  line("sigma_LN", printed(r.sigma_ln));
  line("sigma_PN", printed(r.sigma_pn));
  line("sigma_SYS", printed(r.sigma_sys));
  line("mean TC", printed(r.bias.mean_tc));
  line("mean EC", printed(r.bias.mean_ec));
  line("bias", printed(r.bias.bias) + " (" + to_string(r.bias.direction) + ")");
  return out.str();
}

// ---------------------------------------------------------------------------
// Simulator documents

inline GenerativeConfig config_from_json(const json& doc) {
  constexpr std::string_view where = "config";
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "config must be an object");
  GenerativeConfig c;
  auto opt = [&](const char* name, auto& target) {
    if (doc.contains(name))
      target = detail::field<std::remove_reference_t<decltype(target)>>(doc, name, where);
  };
  opt("n_authors", c.n_authors);
  opt("papers_per_author", c.papers_per_author);
  opt("n_cited", c.n_cited);
  opt("should_cite_prob", c.should_cite_prob);
  opt("base_error", c.base_error);
  opt("level_spread", c.level_spread);
  opt("interaction_spread", c.interaction_spread);
  opt("replicates", c.replicates);
  opt("seed", c.seed);
  if (doc.contains("bias_shift")) {
    const auto& b = doc.at("bias_shift");
    if (b.is_number())
      c.bias_shift = {b.get<double>()};
    else
      c.bias_shift = detail::field<std::vector<double>>(doc, "bias_shift", where);
  }
  return c;
}

inline json config_to_json(const GenerativeConfig& c) {
  return {{"n_authors", c.n_authors},
          {"papers_per_author", c.papers_per_author},
          {"n_cited", c.n_cited},
          {"should_cite_prob", c.should_cite_prob},
          {"base_error", c.base_error},
          {"level_spread", c.level_spread},
          {"interaction_spread", c.interaction_spread},
          {"bias_shift", c.bias_shift},
          {"replicates", c.replicates},
          {"seed", c.seed}};
}

inline json latent_to_json(const CitationSystem& s, const LatentTruth& t) {
  auto rows = [](const RealMatrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      out.push_back(std::move(row));
    }
    return out;
  };
  return {{"schema_version", kSchemaVersion},
          {"author_offsets", t.author_offsets},
          {"interaction_offsets", rows(t.interaction_offsets)},
          {"flip_probabilities", rows(t.flip_probabilities)},
          {"latent_level_sigma", latent_level_sigma(s, t)},
          {"latent_stable_sigma", latent_stable_sigma(s, t)}};
}

inline std::string aggregation_csv(const std::vector<AggregationPoint>& curve) {
  std::string out = "n,empirical_se,theoretical_se\n";
  for (const auto& p : curve)
    out += std::to_string(p.n) + "," + fixed(p.empirical_se, 6) + "," + fixed(p.theoretical_se, 6) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Audit documents

/// One key per line; blank lines and '#' comments are skipped.
inline std::vector<std::string> parse_key_list(std::string_view text) {
  std::vector<std::string> keys;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = citenoise::detail::trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty() || line.front() == '#') continue;
    keys.emplace_back(line);
  }
  return keys;
}

inline json audit_to_json(const AuditReport& r) {
  json dups = json::array();
  for (const auto& d : r.duplicate_entries)
    dups.push_back({{"key", d.key}, {"section", d.section}, {"count", d.count}});
  return {{"schema_version", kSchemaVersion},
          {"in_text_total", r.in_text_total},
          {"in_text_justified", r.in_text_justified},
          {"coverage_ratio", r.coverage_ratio},
          {"unjustified_citations", r.unjustified_citations},
          {"orphan_justifications", r.orphan_justifications},
          {"duplicate_entries", std::move(dups)}};
}

/// {"papers": [{"id": "p1", "timestamp": 2001}, ...], "similarity": [[...], ...]}
inline SimilarityMatrix similarity_from_json(const json& doc) {
  constexpr std::string_view where = "similarity document";
  const auto& papers_doc = doc.is_object() && doc.contains("papers") ? doc.at("papers") : json();
  if (!papers_doc.is_array())
    throw Error(ErrorKind::ParseError, "similarity document: 'papers' must be an array");
  std::vector<PublishedPaper> papers;
  for (std::size_t i = 0; i < papers_doc.size(); ++i) {
    const std::string at = "papers[" + std::to_string(i) + "]";
    papers.push_back({detail::field<std::string>(papers_doc[i], "id", at),
                      detail::field<std::int64_t>(papers_doc[i], "timestamp", at)});
  }
  return SimilarityMatrix(std::move(papers),
                          detail::field<std::vector<std::vector<double>>>(doc, "similarity", where));
}

/// {"paper_ids": [...], "citations": [[0/1 ...], ...]}; paper_ids must match
/// the similarity document's order.
inline std::vector<std::vector<int>> citations_from_json(const json& doc, const SimilarityMatrix& sim) {
  constexpr std::string_view where = "citations document";
  const auto ids = detail::field<std::vector<std::string>>(doc, "paper_ids", where);
  if (ids.size() != sim.size())
    throw Error(ErrorKind::DimensionMismatch, "citations document lists a different number of papers");
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] != sim.papers()[i].id)
      throw Error(ErrorKind::DimensionMismatch,
                  "citations paper_ids[" + std::to_string(i) + "] = '" + ids[i] +
                      "' does not match similarity paper '" + sim.papers()[i].id + "'");
  auto citations = detail::field<std::vector<std::vector<int>>>(doc, "citations", where);
  for (std::size_t r = 0; r < citations.size(); ++r)
    for (std::size_t c = 0; c < citations[r].size(); ++c)
      if (citations[r][c] != 0 && citations[r][c] != 1)
        throw Error(ErrorKind::NonBinaryEntry,
                    "citations[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  return citations;
}

inline json omissions_to_json(const SimilarityMatrix& sim, const OmissionFlags& f) {
  json flags = json::array();
  std::size_t flagged = 0;
  for (const auto& e : f.flags) {
    flags.push_back({{"citing", sim.papers()[e.citing].id},
                     {"earlier", sim.papers()[e.earlier].id},
                     {"flag", e.flag ? 1 : 0}});
    flagged += e.flag;
  }
  return {{"schema_version", kSchemaVersion},
          {"k", f.k},
          {"flagged", flagged},
          {"warnings", f.warnings},
          {"flags", std::move(flags)}};
}

}  // namespace citenoise::io
