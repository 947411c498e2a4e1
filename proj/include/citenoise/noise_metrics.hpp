#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "citenoise/citation_model.hpp"

namespace citenoise {

struct CitingPaperStats {
  double pr = 0.0;  // share of cited papers actually cited
  double pa = 0.0;  // share of correct decisions
  double pe = 0.0;  // share of erroneous decisions
};

struct CitedPaperStats {
  double pr = 0.0;
  std::size_t tc = 0;  // times cited (column sum of R)
  std::size_t ec = 0;  // expected citations (column sum of A)
  double pa = 0.0;
  double pe = 0.0;
};

enum class BiasDirection { Under, None, Over };

constexpr const char* to_string(BiasDirection d) noexcept {
  switch (d) {
    case BiasDirection::Under: return "under";
    case BiasDirection::Over: return "over";
    case BiasDirection::None: break;
  }
  return "none";
}

struct BiasResult {
  double mean_tc = 0.0;
  double mean_ec = 0.0;
  double bias = 0.0;  // mean_tc - mean_ec; positive means over-cited
  BiasDirection direction = BiasDirection::None;
};

struct NoiseReport {
  std::vector<CitingPaperStats> citing;
  std::vector<double> author_error_rates;
  std::vector<double> author_pattern_noise;
  std::vector<CitedPaperStats> cited;
  double mean_accuracy = 0.0;  // PA-bar
  double mean_error = 0.0;     // PE-bar
  double sigma_ln = 0.0;
  double sigma_pn = 0.0;
  double sigma_sys = 0.0;
  BiasResult bias;
};

inline CitingPaperStats citing_paper_stats(const CitationSystem& system, std::size_t j) {
  if (j >= system.num_citing())
    throw Error(ErrorKind::IndexOutOfRange, "citing paper index " + std::to_string(j));
  const auto r = system.realized().row(j);
  const auto a = system.accurate().row(j);
  std::size_t cited = 0, correct = 0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    cited += r[k];
    correct += (r[k] == a[k]);
  }
  const double n = static_cast<double>(r.size());
  CitingPaperStats s;
  s.pr = cited / n;
  s.pa = correct / n;
  s.pe = (r.size() - correct) / n;
  return s;
}

/// Unweighted mean of PE_ij over the author's citing papers.
inline double author_error_rate(const CitationSystem& system, std::size_t i) {
  const auto& papers = system.papers_of(i);
  double sum = 0.0;
  for (auto j : papers) sum += citing_paper_stats(system, j).pe;
  return sum / static_cast<double>(papers.size());
}

/// Within-author standard deviation of PE_ij (population form, 0 for a
/// single paper).
inline double author_pattern_noise(const CitationSystem& system, std::size_t i) {
  const auto& papers = system.papers_of(i);
  const double mean = author_error_rate(system, i);
  double ss = 0.0;
  for (auto j : papers) {
    const double d = mean - citing_paper_stats(system, j).pe;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(papers.size()));
}

inline CitedPaperStats cited_paper_stats(const CitationSystem& system, std::size_t k) {
  if (k >= system.num_cited())
    throw Error(ErrorKind::IndexOutOfRange, "cited paper index " + std::to_string(k));
  const auto& r = system.realized();
  const auto& a = system.accurate();
  std::size_t correct = 0;
  CitedPaperStats s;
  for (std::size_t j = 0; j < r.rows(); ++j) {
    s.tc += r(j, k);
    s.ec += a(j, k);
    correct += (r(j, k) == a(j, k));
  }
  const double n = static_cast<double>(r.rows());
  s.pr = s.tc / n;
  s.pa = correct / n;
  s.pe = (r.rows() - correct) / n;
  return s;
}

struct SystemAccuracy {
  double pa = 0.0;
  double pe = 0.0;
};

inline SystemAccuracy system_accuracy(const CitationSystem& system) {
  double sum = 0.0;
  for (std::size_t j = 0; j < system.num_citing(); ++j) sum += citing_paper_stats(system, j).pa;
  SystemAccuracy acc;
  acc.pa = sum / static_cast<double>(system.num_citing());
  acc.pe = 1.0 - acc.pa;
  return acc;
}

/// Paper-weighted standard deviation of author error rates around PE-bar.
inline double level_noise(const CitationSystem& system) {
  const double overall = system_accuracy(system).pe;
  double ss = 0.0;
  for (std::size_t i = 0; i < system.num_authors(); ++i) {
    const double d = overall - author_error_rate(system, i);
    ss += static_cast<double>(system.papers_of(i).size()) * d * d;
  }
  return std::sqrt(ss / static_cast<double>(system.num_citing()));
}

/// Root of the paper-weighted mean of squared author pattern noise.
inline double pattern_noise(const CitationSystem& system) {
  double ss = 0.0;
  for (std::size_t i = 0; i < system.num_authors(); ++i) {
    const double s = author_pattern_noise(system, i);
    ss += static_cast<double>(system.papers_of(i).size()) * s * s;
  }
  return std::sqrt(ss / static_cast<double>(system.num_citing()));
}

inline double system_noise(const CitationSystem& system) {
  return std::hypot(level_noise(system), pattern_noise(system));
}

inline BiasResult citation_bias(const CitationSystem& system) {
  std::size_t tc = 0, ec = 0;
  for (std::size_t k = 0; k < system.num_cited(); ++k) {
    const auto s = cited_paper_stats(system, k);
    tc += s.tc;
    ec += s.ec;
  }
  const double n = static_cast<double>(system.num_cited());
  BiasResult b;
  b.mean_tc = tc / n;
  b.mean_ec = ec / n;
  // Difference of integer sums keeps bias exactly zero when counts match.
  b.bias = (static_cast<double>(tc) - static_cast<double>(ec)) / n;
  b.direction = tc > ec ? BiasDirection::Over : tc < ec ? BiasDirection::Under : BiasDirection::None;
  return b;
}

inline NoiseReport analyze(const CitationSystem& system) {
  NoiseReport rep;
  rep.citing.reserve(system.num_citing());
  for (std::size_t j = 0; j < system.num_citing(); ++j)
    rep.citing.push_back(citing_paper_stats(system, j));
  for (std::size_t i = 0; i < system.num_authors(); ++i) {
    rep.author_error_rates.push_back(author_error_rate(system, i));
    rep.author_pattern_noise.push_back(author_pattern_noise(system, i));
  }
  for (std::size_t k = 0; k < system.num_cited(); ++k)
    rep.cited.push_back(cited_paper_stats(system, k));
  const auto acc = system_accuracy(system);
  rep.mean_accuracy = acc.pa;
  rep.mean_error = acc.pe;
  rep.sigma_ln = level_noise(system);
  rep.sigma_pn = pattern_noise(system);
  rep.sigma_sys = std::hypot(rep.sigma_ln, rep.sigma_pn);
  rep.bias = citation_bias(system);
  return rep;
}

}  // namespace citenoise
