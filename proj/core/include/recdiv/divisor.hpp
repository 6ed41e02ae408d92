#pragma once

// Per-prime divisorship. For primes where P splits as a linear factor times an
// irreducible factor of degree d-1, writing n = kQ + r with Q = (p^{d-1}-1)/(p-1)
// turns a_n == 0 (mod p) into G^k == RHS_r in F_p, where
//   G     = a1^d / Nloc,  Nloc = (-1)^d c_0 = product of all roots mod p,
//   RHS_r = -(a_r - g1 a1^r) / (g1 a1^r),
// a1 is the F_p root and g1 its coefficient in the root expansion of a_n.
// Every other prime goes to the brute-force period scan.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "recdiv/polyfield.hpp"
#include "recdiv/recurrence.hpp"

namespace recdiv {

enum class ExclusionReason { ramified, divides_c0, gamma1_vanishes, pattern_mismatch, zero_term_degenerate };
enum class Method { structural, brute, both, none };

std::string to_string(ExclusionReason r);
std::string to_string(Method m);
std::optional<ExclusionReason> exclusion_from_string(const std::string& s);

class Verdict {
 public:
  enum class Kind { divisor, nondivisor, excluded, indeterminate };

  // Re-verifies term_mod(spec, witness, p) == 0; throws std::logic_error otherwise.
  static Verdict divisor(const RecurrenceSpec& spec, u64 p, u64 witness, Method method);
  // Divisor established by subgroup membership alone (witness recovery disabled).
  static Verdict divisor_by_membership(u64 scanned);
  static Verdict nondivisor(Method method, u64 scanned);
  static Verdict excluded(ExclusionReason reason);
  static Verdict indeterminate(Method method, u64 scanned);

  Kind kind() const { return kind_; }
  Method method() const { return method_; }
  std::optional<u64> witness() const { return witness_; }
  std::optional<ExclusionReason> reason() const { return reason_; }
  u64 scanned() const { return scanned_; }

  friend bool operator==(const Verdict&, const Verdict&) = default;

 private:
  Verdict() = default;

  Kind kind_ = Kind::indeterminate;
  Method method_ = Method::none;
  std::optional<u64> witness_;
  std::optional<ExclusionReason> reason_;
  u64 scanned_ = 0;
};

std::string to_string(Verdict::Kind k);

struct StructuralContext {
  u64 p = 0;
  u64 a1 = 0;                          // the F_p root
  std::shared_ptr<const ExtField> ext;  // F_p[x]/(g), g the degree-(d-1) factor
  std::vector<ExtElem> conj_roots;      // x, x^p, x^{p^2}, ...
  std::vector<ExtElem> gammas;          // root-expansion coefficients, gammas[0] in F_p
  u64 gamma1 = 0;
  u64 nloc = 0;
  u64 g = 0;
  u64 ord_g = 0;
  u64 q = 0;
  FactoredInteger p_minus_1;

  u64 index_g() const { return (p - 1) / ord_g; }
};

// Excluded with the matching reason when the prime does not qualify.
std::variant<StructuralContext, ExclusionReason> build_context(const RecurrenceSpec& spec, u64 p,
                                                               u64 seed = 0);

u64 structural_base(const StructuralContext& ctx);

inline constexpr u64 kDefaultRCap = 2'000'000;

// Scans r = 0..min(Q, r_cap)-1; a hit is RHS_r != 0 with RHS_r^{ord G} == 1.
// With `recover_witness`, k is found by baby-step giant-step and n = kQ + r is
// verified; otherwise the divisor verdict carries no witness.
Verdict structural_detect(const StructuralContext& ctx, const RecurrenceSpec& spec,
                          u64 r_cap = kDefaultRCap, bool recover_witness = true);

// Discrete log of `target` to `base` in F_p^*, with ord(base) = `order`.
std::optional<u64> discrete_log(u64 base, u64 target, u64 order, u64 p);

struct DetectPolicy {
  u64 r_cap = kDefaultRCap;
  u64 brute_cap = kDefaultBruteCap;
  bool recover_witness = true;
  bool cross_check = false;  // also run brute force on structural primes
  u64 seed = 0;
  // Least exact zero index of the sequence, if the run is degenerate.
  std::optional<u64> zero_term;
};

// Detection outcome plus the structural data that produced it, if any.
struct Detection {
  FactorPattern pattern;
  Verdict verdict;
  std::optional<StructuralContext> context;
};

Detection detect_full(const RecurrenceSpec& spec, u64 p, const DetectPolicy& policy = {});
Verdict detect(const RecurrenceSpec& spec, u64 p, const DetectPolicy& policy = {});

struct Disagreement {
  u64 p;
  Verdict structural;
  ZeroScan brute;
};

// Runs both detectors on every unexcluded pattern-{1, d-1} prime <= prime_limit.
std::vector<Disagreement> cross_validate(const RecurrenceSpec& spec, u64 prime_limit,
                                         u64 cap = kDefaultBruteCap, u64 seed = 0);

}  // namespace recdiv
