#pragma once

// Parallel prime sweeps: one row per prime, rows in ascending prime order for
// any worker count, and a summary that is exactly the fold of the rows.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recdiv/charpoly.hpp"
#include "recdiv/divisor.hpp"
#include "recdiv/recurrence.hpp"

namespace recdiv {

inline constexpr unsigned kMaxSweepOrder = 5;
inline constexpr u64 kMaxSweepLimit = 3'000'000;
inline constexpr u64 kZeroScanBound = 200;

struct SweepConfig {
  RecurrenceSpec spec;
  u64 limit = 0;
  u64 r_cap = kDefaultRCap;
  u64 brute_cap = kDefaultBruteCap;
  unsigned workers = 1;
  u64 seed = 0;
  bool cross_check = false;
  bool recover_witness = true;
};

// Throws std::invalid_argument unless d <= 5, limit <= 3e6 and limit^{d-1} < 2^63.
void check_guard(const SweepConfig& config);

// RECDIV_SEED (decimal) if set, else `fallback`; throws std::invalid_argument on garbage.
u64 seed_from_env(u64 fallback);

struct SweepRow {
  u64 p = 0;
  FactorPattern pattern;
  Verdict verdict = Verdict::excluded(ExclusionReason::ramified);
  std::optional<u64> ord_g;
  std::optional<u64> index_g;
  std::optional<u64> q;
};

struct PatternCounts {
  u64 total = 0;
  u64 divisor = 0;
  u64 nondivisor = 0;
  u64 indeterminate = 0;
  friend bool operator==(const PatternCounts&, const PatternCounts&) = default;
};

class SweepSummary {
 public:
  // An empty fingerprint marks the neutral summary, which merges with anything.
  explicit SweepSummary(std::string fingerprint = {}) : fingerprint_(std::move(fingerprint)) {}

  void add(const SweepRow& row);
  void add(const std::string& pattern_label, Verdict::Kind kind, std::optional<ExclusionReason> reason);

  const std::string& fingerprint() const { return fingerprint_; }
  const std::map<std::string, PatternCounts>& patterns() const { return patterns_; }
  const std::map<std::string, u64>& excluded() const { return excluded_; }

  u64 unexcluded() const;
  u64 excluded_total() const;
  PatternCounts overall() const;
  PatternCounts counts(const std::string& label) const;
  // Share of unexcluded primes with this pattern.
  double pattern_frequency(const std::string& label) const;
  // divisor / total for the pattern: indeterminate rows count against it.
  double divisor_fraction(const std::string& label) const;
  // Overall divisor / unexcluded.
  double divisor_lower_bound() const;

  friend bool operator==(const SweepSummary&, const SweepSummary&) = default;
  friend SweepSummary merge_summaries(const SweepSummary& a, const SweepSummary& b);

 private:
  std::string fingerprint_;
  std::map<std::string, PatternCounts> patterns_;
  std::map<std::string, u64> excluded_;
};

// Componentwise sum; throws std::invalid_argument on a fingerprint mismatch.
SweepSummary merge_summaries(const SweepSummary& a, const SweepSummary& b);

struct SweepResult {
  SweepConfig config;
  PolyProfile profile;
  std::optional<u64> degenerate_zero;  // least exact zero term, if any
  std::vector<SweepRow> rows;
  SweepSummary summary;
};

SweepRow sweep_row(const RecurrenceSpec& spec, u64 p, const DetectPolicy& policy);
SweepResult run_sweep(const SweepConfig& config);
// Rows for primes in [lo, hi] only, folded into their own summary.
SweepResult run_sweep_range(const SweepConfig& config, u64 lo, u64 hi);

inline constexpr const char* kCsvHeader = "p,pattern,squarefree,excluded_reason,verdict,method,witness_n,ord_G,index_G,Q";

std::string csv_row(const SweepRow& row);
std::string to_csv(const std::vector<SweepRow>& rows);
// Folds CSV text (with header) back into a summary.
SweepSummary summary_from_csv(const std::string& csv, const std::string& fingerprint);

std::string summary_json(const SweepSummary& summary);
// Metadata (spec, budgets, hypotheses profile and stamp) plus the summary.
std::string result_json(const SweepResult& result);

// Throws std::runtime_error naming the path on I/O failure.
void write_csv(const std::string& path, const std::vector<SweepRow>& rows);
void write_json(const std::string& path, const SweepResult& result);

}  // namespace recdiv
