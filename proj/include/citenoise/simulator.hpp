#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "citenoise/citation_model.hpp"
#include "citenoise/noise_metrics.hpp"
#include "citenoise/parallel.hpp"
#include "citenoise/random.hpp"

namespace citenoise {

/// Parameters of the additive flip-propensity model
///   pi_jk = clamp(base_error + e_i + u_ik + b_k * dir(A_jk), 0, 1)
/// with e_i ~ U(-level_spread, level_spread), u_ik ~ U(-interaction_spread,
/// interaction_spread) and dir = +1 on A = 0 cells, -1 on A = 1 cells.
struct GenerativeConfig {
  std::size_t n_authors = 1;
  std::size_t papers_per_author = 1;
  std::size_t n_cited = 1;
  double should_cite_prob = 0.5;
  double base_error = 0.0;
  double level_spread = 0.0;
  double interaction_spread = 0.0;
  // Empty means no bias, one value applies to every cited paper, otherwise
  // one value per cited paper.
  std::vector<double> bias_shift;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;

  std::size_t num_citing() const noexcept { return n_authors * papers_per_author; }

  double bias_for(std::size_t k) const noexcept {
    if (bias_shift.empty()) return 0.0;
    return bias_shift.size() == 1 ? bias_shift.front() : bias_shift[k];
  }

  friend bool operator==(const GenerativeConfig&, const GenerativeConfig&) = default;
};

/// Dense row-major matrix of reals.
class RealMatrix {
 public:
  RealMatrix() = default;
  explicit RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  std::span<const double> cells() const noexcept { return cells_; }

  friend bool operator==(const RealMatrix&, const RealMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> cells_;
};

struct LatentTruth {
  std::vector<double> author_offsets;  // e_i
  RealMatrix interaction_offsets;      // u_ik, authors x cited
  RealMatrix flip_probabilities;       // pi_jk, citing x cited, as used

  friend bool operator==(const LatentTruth&, const LatentTruth&) = default;
};

struct GeneratedSystem {
  CitationSystem system;
  LatentTruth truth;
};

/// T realized matrices over one accurate matrix and one latent truth.
/// `base.realized()` is occasion 0.
struct ReplicateSet {
  CitationSystem base;
  std::vector<BinaryMatrix> realized;
  LatentTruth truth;

  std::size_t num_replicates() const noexcept { return realized.size(); }
};

namespace detail {

inline bool is_probability(double p) noexcept { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

inline void validate(const GenerativeConfig& c) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidConfig, msg); };
  if (c.n_authors == 0 || c.papers_per_author == 0 || c.n_cited == 0)
    fail("n_authors, papers_per_author and n_cited must be positive");
  if (!is_probability(c.should_cite_prob)) fail("should_cite_prob must lie in [0, 1]");
  if (!is_probability(c.base_error)) fail("base_error must lie in [0, 1]");
  if (!std::isfinite(c.level_spread) || c.level_spread < 0) fail("level_spread must be >= 0");
  if (!std::isfinite(c.interaction_spread) || c.interaction_spread < 0)
    fail("interaction_spread must be >= 0");
  if (c.bias_shift.size() > 1 && c.bias_shift.size() != c.n_cited)
    fail("bias_shift needs 0, 1 or n_cited entries");
  for (double b : c.bias_shift)
    if (!std::isfinite(b) || b < -1.0 || b > 1.0) fail("bias_shift entries must lie in [-1, 1]");
  if (c.replicates == 0) fail("replicates must be >= 1");
}

inline std::vector<std::string> numbered_ids(const char* prefix, std::size_t n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i + 1));
  return ids;
}

inline BinaryMatrix sample_flips(const GenerativeConfig& c, const BinaryMatrix& accurate,
                                 const RealMatrix& pi, std::uint64_t occasion) {
  BinaryMatrix realized(accurate.rows(), accurate.cols());
  for (std::size_t j = 0; j < accurate.rows(); ++j)
    for (std::size_t k = 0; k < accurate.cols(); ++k) {
      const bool flip = rng::uniform(c.seed, {rng::kFlip, occasion, j, k}) < pi(j, k);
      realized(j, k) = accurate(j, k) ^ static_cast<std::uint8_t>(flip);
    }
  return realized;
}

struct LatentDraw {
  BinaryMatrix accurate;
  LatentTruth truth;
  std::vector<CitingPaper> papers;
};

inline LatentDraw draw_latent(const GenerativeConfig& c) {
  validate(c);
  const std::size_t J = c.num_citing();
  const std::size_t K = c.n_cited;

  LatentDraw d;
  d.accurate = BinaryMatrix(J, K);
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t k = 0; k < K; ++k)
      d.accurate(j, k) = rng::uniform(c.seed, {rng::kAccurate, j, k}) < c.should_cite_prob;

  d.truth.author_offsets.resize(c.n_authors);
  d.truth.interaction_offsets = RealMatrix(c.n_authors, K);
  for (std::size_t i = 0; i < c.n_authors; ++i) {
    d.truth.author_offsets[i] = rng::centered(c.seed, {rng::kAuthorOffset, i}, c.level_spread);
    for (std::size_t k = 0; k < K; ++k)
      d.truth.interaction_offsets(i, k) =
          rng::centered(c.seed, {rng::kInteraction, i, k}, c.interaction_spread);
  }

  d.truth.flip_probabilities = RealMatrix(J, K);
  std::size_t out_of_range = 0;
  for (std::size_t j = 0; j < J; ++j) {
    const std::size_t i = j / c.papers_per_author;
    for (std::size_t k = 0; k < K; ++k) {
      const double dir = d.accurate(j, k) ? -1.0 : 1.0;
      const double raw = c.base_error + d.truth.author_offsets[i] +
                         d.truth.interaction_offsets(i, k) + c.bias_for(k) * dir;
      if (raw < 0.0 || raw > 1.0) ++out_of_range;
      d.truth.flip_probabilities(j, k) = std::clamp(raw, 0.0, 1.0);
    }
  }
  if (out_of_range * 100 > J * K)
    throw Error(ErrorKind::InvalidConfig,
                std::to_string(out_of_range) + " of " + std::to_string(J * K) +
                    " flip propensities fall outside [0, 1] before clamping (limit 1%)");

  d.papers.reserve(J);
  for (std::size_t j = 0; j < J; ++j)
    d.papers.push_back({"p" + std::to_string(j + 1), j / c.papers_per_author});
  return d;
}

}  // namespace detail

/// Samples A cell-wise with probability should_cite_prob, then flips each cell
/// of A with its latent probability to obtain R (occasion 0).
inline GeneratedSystem generate_system(const GenerativeConfig& config) {
  auto d = detail::draw_latent(config);
  auto realized = detail::sample_flips(config, d.accurate, d.truth.flip_probabilities, 0);
  auto system = build_system(detail::numbered_ids("a", config.n_authors), std::move(d.papers),
                             detail::numbered_ids("c", config.n_cited), std::move(realized),
                             std::move(d.accurate));
  return {std::move(system), std::move(d.truth)};
}

/// Occasion t uses its own substream, so occasion 0 reproduces
/// generate_system and adding occasions leaves earlier ones untouched.
inline ReplicateSet replicate_decisions(const GenerativeConfig& config) {
  if (config.replicates < 2)
    throw Error(ErrorKind::InvalidConfig, "test-retest needs replicates >= 2");
  auto generated = generate_system(config);
  std::vector<BinaryMatrix> realized(config.replicates);
  realized[0] = generated.system.realized();
  detail::parallel_for(config.replicates - 1, [&](std::size_t t) {
    realized[t + 1] = detail::sample_flips(config, generated.system.accurate(),
                                           generated.truth.flip_probabilities, t + 1);
  });
  return {std::move(generated.system), std::move(realized), std::move(generated.truth)};
}

struct PatternDecomposition {
  double stable_sigma = 0.0;
  double occasion_sigma = 0.0;
  double total_pattern_variance = 0.0;
  std::size_t replicates = 0;
};

/// Splits within-author decision-error variance into an occasion part (the
/// unbiased across-occasion variance inside each citing x cited cell) and a
/// stable part (what remains: cell-to-cell differences within an author).
/// stable^2 + occasion^2 == total_pattern_variance unless stable is clipped at 0.
inline PatternDecomposition decompose_pattern_noise(const CitationSystem& base,
                                                    std::span<const BinaryMatrix> realized) {
  const std::size_t T = realized.size();
  if (T < 2)
    throw Error(ErrorKind::InsufficientReplicates,
                "need at least 2 occasions, got " + std::to_string(T));
  const auto& accurate = base.accurate();
  for (const auto& r : realized)
    if (r.rows() != accurate.rows() || r.cols() != accurate.cols())
      throw Error(ErrorKind::DimensionMismatch, "replicate shape differs from the accurate matrix");

  const std::size_t K = base.num_cited();
  const double t = static_cast<double>(T);
  double total_ss = 0.0;
  double occasion_var_sum = 0.0;
  for (std::size_t i = 0; i < base.num_authors(); ++i) {
    const auto& papers = base.papers_of(i);
    std::vector<double> counts;
    counts.reserve(papers.size() * K);
    double author_errors = 0.0;
    for (auto j : papers)
      for (std::size_t k = 0; k < K; ++k) {
        double c = 0.0;
        for (const auto& r : realized) c += r(j, k) ^ accurate(j, k);
        counts.push_back(c);
        author_errors += c;
      }
    const double author_mean = author_errors / (t * static_cast<double>(counts.size()));
    for (double c : counts) {
      // sum over occasions of (x - m)^2 for binary x with c ones
      total_ss += c * (1.0 - 2.0 * author_mean) + t * author_mean * author_mean;
      occasion_var_sum += (c - c * c / t) / (t - 1.0);
    }
  }
  const double cells = static_cast<double>(base.num_citing() * K);
  PatternDecomposition out;
  out.replicates = T;
  out.total_pattern_variance = total_ss / (cells * t);
  const double occasion_var = occasion_var_sum / cells;
  out.occasion_sigma = std::sqrt(occasion_var);
  out.stable_sigma = std::sqrt(std::max(0.0, out.total_pattern_variance - occasion_var));
  return out;
}

inline PatternDecomposition decompose_pattern_noise(const ReplicateSet& replicates) {
  return decompose_pattern_noise(replicates.base, replicates.realized);
}

/// Population sd across authors of each author's mean flip propensity.
inline double latent_level_sigma(const CitationSystem& system, const LatentTruth& truth) {
  const std::size_t K = system.num_cited();
  std::vector<double> means;
  for (std::size_t i = 0; i < system.num_authors(); ++i) {
    double s = 0.0;
    for (auto j : system.papers_of(i))
      for (std::size_t k = 0; k < K; ++k) s += truth.flip_probabilities(j, k);
    means.push_back(s / static_cast<double>(system.papers_of(i).size() * K));
  }
  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= static_cast<double>(means.size());
  double ss = 0.0;
  for (double m : means) ss += (m - mean) * (m - mean);
  return std::sqrt(ss / static_cast<double>(means.size()));
}

/// Root mean squared deviation of pi_jk from its author's mean propensity.
inline double latent_stable_sigma(const CitationSystem& system, const LatentTruth& truth) {
  const std::size_t K = system.num_cited();
  double ss = 0.0;
  for (std::size_t i = 0; i < system.num_authors(); ++i) {
    const auto& papers = system.papers_of(i);
    double mean = 0.0;
    for (auto j : papers)
      for (std::size_t k = 0; k < K; ++k) mean += truth.flip_probabilities(j, k);
    mean /= static_cast<double>(papers.size() * K);
    for (auto j : papers)
      for (std::size_t k = 0; k < K; ++k) {
        const double d = truth.flip_probabilities(j, k) - mean;
        ss += d * d;
      }
  }
  return std::sqrt(ss / static_cast<double>(system.num_citing() * K));
}

struct AggregationPoint {
  std::size_t n = 0;
  double empirical_se = 0.0;
  double theoretical_se = 0.0;
};

/// For each n, the spread of `trials` means of n Bernoulli(should_cite_prob)
/// decisions against the closed form sqrt(p(1-p)/n).
inline std::vector<AggregationPoint> aggregation_curve(const GenerativeConfig& config,
                                                       std::span<const std::size_t> sample_sizes,
                                                       std::size_t trials) {
  const double p = config.should_cite_prob;
  if (!detail::is_probability(p))
    throw Error(ErrorKind::InvalidConfig, "should_cite_prob must lie in [0, 1]");
  if (trials < 100) throw Error(ErrorKind::InvalidConfig, "trials must be >= 100");
  if (sample_sizes.empty()) throw Error(ErrorKind::InvalidConfig, "no sample sizes given");
  for (auto n : sample_sizes)
    if (n == 0) throw Error(ErrorKind::InvalidConfig, "sample sizes must be >= 1");

  std::vector<AggregationPoint> curve;
  for (auto n : sample_sizes) {
    std::vector<double> means(trials);
    detail::parallel_for(trials, [&](std::size_t trial) {
      std::size_t hits = 0;
      for (std::size_t d = 0; d < n; ++d)
        hits += rng::uniform(config.seed, {rng::kAggregate, n, trial, d}) < p;
      means[trial] = static_cast<double>(hits) / static_cast<double>(n);
    });
    double mean = 0.0;
    for (double m : means) mean += m;
    mean /= static_cast<double>(trials);
    double ss = 0.0;
    for (double m : means) ss += (m - mean) * (m - mean);
    curve.push_back({n, std::sqrt(ss / static_cast<double>(trials - 1)),
                     std::sqrt(p * (1.0 - p) / static_cast<double>(n))});
  }
  return curve;
}

struct BiasRecovery {
  double expected_bias = 0.0;  // analytic E[TC - EC] per cited paper, averaged over trials
  double estimated_bias_mean = 0.0;
  double estimated_bias_se = 0.0;
  std::size_t trials = 0;
};

/// Seed used for trial `trial` of a multi-system experiment.
inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) noexcept {
  return rng::hash(seed, {rng::kTrial, trial});
}

inline BiasRecovery bias_recovery(const GenerativeConfig& config, std::size_t trials) {
  detail::validate(config);
  if (trials < 100) throw Error(ErrorKind::InvalidConfig, "trials must be >= 100");

  std::vector<double> estimated(trials), expected(trials);
  detail::parallel_for(trials, [&](std::size_t trial) {
    GenerativeConfig c = config;
    c.seed = trial_seed(config.seed, trial);
    const auto g = generate_system(c);
    estimated[trial] = citation_bias(g.system).bias;
    const auto& a = g.system.accurate();
    double e = 0.0;
    for (std::size_t j = 0; j < a.rows(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k)
        e += (a(j, k) ? -1.0 : 1.0) * g.truth.flip_probabilities(j, k);
    expected[trial] = e / static_cast<double>(a.cols());
  });

  BiasRecovery out;
  out.trials = trials;
  const double n = static_cast<double>(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    out.estimated_bias_mean += estimated[t];
    out.expected_bias += expected[t];
  }
  out.estimated_bias_mean /= n;
  out.expected_bias /= n;
  double ss = 0.0;
  for (double b : estimated) ss += (b - out.estimated_bias_mean) * (b - out.estimated_bias_mean);
  out.estimated_bias_se = std::sqrt(ss / (n - 1.0) / n);
  return out;
}

}  // namespace citenoise
