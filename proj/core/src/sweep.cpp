#include "recdiv/sweep.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace recdiv {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_opt(const std::optional<u64>& v) { return v ? std::to_string(*v) : std::string(); }

ordered_json counts_json(const PatternCounts& c) {
  ordered_json j;
  j["total"] = c.total;
  j["divisor"] = c.divisor;
  j["nondivisor"] = c.nondivisor;
  j["indeterminate"] = c.indeterminate;
  return j;
}

ordered_json summary_to_json(const SweepSummary& s) {
  ordered_json j;
  j["fingerprint"] = s.fingerprint();
  j["unexcluded"] = s.unexcluded();
  j["excluded_total"] = s.excluded_total();
  ordered_json excluded = ordered_json::object();
  for (const auto& [reason, n] : s.excluded()) excluded[reason] = n;
  j["excluded"] = excluded;
  ordered_json patterns = ordered_json::object();
  for (const auto& [label, c] : s.patterns()) {
    ordered_json pj = counts_json(c);
    pj["frequency"] = s.pattern_frequency(label);
    pj["divisor_fraction"] = s.divisor_fraction(label);
    patterns[label] = pj;
  }
  j["patterns"] = patterns;
  ordered_json overall = counts_json(s.overall());
  overall["divisor_lower_bound_fraction"] = s.divisor_lower_bound();
  j["overall"] = overall;
  return j;
}

ordered_json profile_to_json(const PolyProfile& p) {
  ordered_json j;
  j["polynomial"] = p.polynomial.to_string();
  j["discriminant"] = p.discriminant.get_str();
  j["irreducible"] = to_string(p.irreducible.verdict);
  j["irreducible_witness"] = p.irreducible.witness;
  j["nondegenerate"] = to_string(p.nondegenerate);
  j["degeneracy_witness_m"] = p.degeneracy_witness_m ? ordered_json(*p.degeneracy_witness_m) : ordered_json();
  j["sd_certified"] = p.sd.certified ? "yes" : "unknown";
  auto opt = [](const std::optional<u64>& v) { return v ? ordered_json(*v) : ordered_json(); };
  j["witness_full_cycle"] = opt(p.sd.full_cycle_prime);
  j["witness_transposition"] = opt(p.sd.transposition_prime);
  j["witness_long_cycle"] = opt(p.sd.long_cycle_prime);
  j["multiplicative_independence"] = p.multiplicative_independence;
  return j;
}

std::string join(const std::vector<i64>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path);
}

DetectPolicy policy_for(const SweepConfig& config, std::optional<u64> zero_term) {
  DetectPolicy policy;
  policy.r_cap = config.r_cap;
  policy.brute_cap = config.brute_cap;
  policy.recover_witness = config.recover_witness;
  policy.cross_check = config.cross_check;
  policy.seed = config.seed;
  policy.zero_term = zero_term;
  return policy;
}

}  // namespace

void check_guard(const SweepConfig& config) {
  const unsigned d = config.spec.order();
  if (d > kMaxSweepOrder) throw std::invalid_argument("sweep guard: order must be at most 5");
  if (config.limit > kMaxSweepLimit) throw std::invalid_argument("sweep guard: limit must be at most 3000000");
  u128 power = 1;
  for (unsigned i = 0; i + 1 < d; ++i) {
    power *= config.limit;
    if (power >= (static_cast<u128>(1) << 63))
      throw std::invalid_argument("sweep guard: limit^(d-1) must be below 2^63");
  }
  if (config.workers == 0) throw std::invalid_argument("need at least one worker");
}

u64 seed_from_env(u64 fallback) {
  const char* env = std::getenv("RECDIV_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  std::string s(env);
  if (s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("RECDIV_SEED must be a decimal integer");
  try {
    return std::stoull(s);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("RECDIV_SEED out of range");
  }
}

// ----------------------------------------------------------------- summary

void SweepSummary::add(const std::string& label, Verdict::Kind kind, std::optional<ExclusionReason> reason) {
  if (kind == Verdict::Kind::excluded) {
    ++excluded_[reason ? to_string(*reason) : std::string("unknown")];
    return;
  }
  PatternCounts& c = patterns_[label];
  ++c.total;
  switch (kind) {
    case Verdict::Kind::divisor: ++c.divisor; break;
    case Verdict::Kind::nondivisor: ++c.nondivisor; break;
    case Verdict::Kind::indeterminate: ++c.indeterminate; break;
    case Verdict::Kind::excluded: break;
  }
}

void SweepSummary::add(const SweepRow& row) { add(row.pattern.label(), row.verdict.kind(), row.verdict.reason()); }

u64 SweepSummary::unexcluded() const { return overall().total; }

u64 SweepSummary::excluded_total() const {
  u64 n = 0;
  for (const auto& [reason, count] : excluded_) n += count;
  return n;
}

PatternCounts SweepSummary::overall() const {
  PatternCounts o;
  for (const auto& [label, c] : patterns_) {
    o.total += c.total;
    o.divisor += c.divisor;
    o.nondivisor += c.nondivisor;
    o.indeterminate += c.indeterminate;
  }
  return o;
}

PatternCounts SweepSummary::counts(const std::string& label) const {
  auto it = patterns_.find(label);
  return it == patterns_.end() ? PatternCounts{} : it->second;
}

double SweepSummary::pattern_frequency(const std::string& label) const {
  const u64 n = unexcluded();
  return n == 0 ? 0.0 : static_cast<double>(counts(label).total) / static_cast<double>(n);
}

double SweepSummary::divisor_fraction(const std::string& label) const {
  const PatternCounts c = counts(label);
  return c.total == 0 ? 0.0 : static_cast<double>(c.divisor) / static_cast<double>(c.total);
}

double SweepSummary::divisor_lower_bound() const {
  const PatternCounts o = overall();
  return o.total == 0 ? 0.0 : static_cast<double>(o.divisor) / static_cast<double>(o.total);
}

SweepSummary merge_summaries(const SweepSummary& a, const SweepSummary& b) {
  if (!a.fingerprint().empty() && !b.fingerprint().empty() && a.fingerprint() != b.fingerprint())
    throw std::invalid_argument("cannot merge summaries of different sequences");
  SweepSummary out(a.fingerprint().empty() ? b.fingerprint() : a.fingerprint());
  for (const auto* s : {&a, &b}) {
    for (const auto& [label, c] : s->patterns_) {
      PatternCounts& t = out.patterns_[label];
      t.total += c.total;
      t.divisor += c.divisor;
      t.nondivisor += c.nondivisor;
      t.indeterminate += c.indeterminate;
    }
    for (const auto& [reason, n] : s->excluded_) out.excluded_[reason] += n;
  }
  return out;
}

// ------------------------------------------------------------------- sweep

SweepRow sweep_row(const RecurrenceSpec& spec, u64 p, const DetectPolicy& policy) {
  Detection det = detect_full(spec, p, policy);
  SweepRow row;
  row.p = p;
  row.pattern = std::move(det.pattern);
  row.verdict = det.verdict;
  const Method m = row.verdict.method();
  if (det.context && (m == Method::structural || m == Method::both)) {
    row.ord_g = det.context->ord_g;
    row.index_g = det.context->index_g();
    row.q = det.context->q;
  }
  return row;
}

SweepResult run_sweep_range(const SweepConfig& config, u64 lo, u64 hi) {
  check_guard(config);
  SweepResult result{config, analyze(config.spec.charpoly()), std::nullopt, {}, SweepSummary(config.spec.fingerprint())};
  const auto zeros = zero_term_scan(config.spec, kZeroScanBound);
  if (!zeros.empty()) result.degenerate_zero = zeros.front();
  const DetectPolicy policy = policy_for(config, result.degenerate_zero);

  std::vector<u64> primes;
  for (u64 p : sieve_primes(std::min(hi, config.limit)))
    if (p >= lo) primes.push_back(p);

  // Contiguous blocks claimed dynamically; each block's rows land in its own slot.
  const std::size_t block = std::max<std::size_t>(1, primes.size() / (std::size_t{config.workers} * 32 + 1));
  const std::size_t blocks = (primes.size() + block - 1) / block;
  std::vector<std::vector<SweepRow>> slots(blocks);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(config.workers);
  auto work = [&](unsigned worker) {
    try {
      for (std::size_t b; (b = next.fetch_add(1)) < blocks;) {
        const std::size_t end = std::min(primes.size(), (b + 1) * block);
        for (std::size_t i = b * block; i < end; ++i) slots[b].push_back(sweep_row(config.spec, primes[i], policy));
      }
    } catch (...) {
      errors[worker] = std::current_exception();
      next.store(blocks);
    }
  };
  if (config.workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < config.workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  result.rows.reserve(primes.size());
  for (auto& slot : slots)
    for (auto& row : slot) {
      result.summary.add(row);
      result.rows.push_back(std::move(row));
    }
  return result;
}

SweepResult run_sweep(const SweepConfig& config) { return run_sweep_range(config, 0, config.limit); }

// --------------------------------------------------------------------- I/O

std::string csv_row(const SweepRow& row) {
  std::string s;
  s += std::to_string(row.p) + ',';
  s += row.pattern.label() + ',';
  s += row.pattern.squarefree ? "1," : "0,";
  s += (row.verdict.reason() ? to_string(*row.verdict.reason()) : std::string()) + ',';
  s += to_string(row.verdict.kind()) + ',';
  s += to_string(row.verdict.method()) + ',';
  s += fmt_opt(row.verdict.witness()) + ',';
  s += fmt_opt(row.ord_g) + ',' + fmt_opt(row.index_g) + ',' + fmt_opt(row.q);
  return s;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kCsvHeader) + '\n';
  for (const auto& row : rows) out += csv_row(row) + '\n';
  return out;
}

SweepSummary summary_from_csv(const std::string& csv, const std::string& fingerprint) {
  SweepSummary s(fingerprint);
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("unexpected CSV header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 10) throw std::invalid_argument("malformed CSV row: " + line);
    Verdict::Kind kind;
    if (fields[4] == "divisor") kind = Verdict::Kind::divisor;
    else if (fields[4] == "nondivisor") kind = Verdict::Kind::nondivisor;
    else if (fields[4] == "indeterminate") kind = Verdict::Kind::indeterminate;
    else if (fields[4] == "excluded") kind = Verdict::Kind::excluded;
    else throw std::invalid_argument("unknown verdict: " + fields[4]);
    s.add(fields[1], kind, exclusion_from_string(fields[3]));
  }
  return s;
}

std::string summary_json(const SweepSummary& summary) { return summary_to_json(summary).dump(2) + '\n'; }

std::string result_json(const SweepResult& result) {
  const SweepConfig& c = result.config;
  ordered_json meta;
  std::vector<i64> desc(c.spec.coeffs().rbegin(), c.spec.coeffs().rend());
  desc.insert(desc.begin(), 1);
  meta["poly"] = join(desc);
  meta["init"] = join(c.spec.init());
  meta["limit"] = c.limit;
  meta["r_cap"] = c.r_cap;
  meta["brute_cap"] = c.brute_cap;
  meta["seed"] = c.seed;
  meta["cross_check"] = c.cross_check;
  meta["hypotheses"] = result.profile.hypotheses_verified() ? "verified" : "unverified";
  meta["degenerate"] = result.degenerate_zero ? ordered_json("zero term") : ordered_json();
  meta["degenerate_zero_index"] = result.degenerate_zero ? ordered_json(*result.degenerate_zero) : ordered_json();
  meta["profile"] = profile_to_json(result.profile);
  ordered_json j;
  j["metadata"] = meta;
  j["summary"] = summary_to_json(result.summary);
  return j.dump(2) + '\n';
}

void write_csv(const std::string& path, const std::vector<SweepRow>& rows) { write_text(path, to_csv(rows)); }

void write_json(const std::string& path, const SweepResult& result) { write_text(path, result_json(result)); }

}  // namespace recdiv
