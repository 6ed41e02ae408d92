#pragma once

// Linear recurrences a_{n+d} + c_{d-1} a_{n+d-1} + ... + c_0 a_n = 0 with
// integer data, indexed from 0.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "recdiv/arith.hpp"
#include "recdiv/polyfield.hpp"

namespace recdiv {

class RecurrenceSpec {
 public:
  // coeffs = c_0..c_{d-1}, init = a_0..a_{d-1}; throws std::invalid_argument
  // unless both have the same length d >= 1.
  RecurrenceSpec(std::vector<i64> coeffs, std::vector<i64> init);
  // Builds from a monic characteristic polynomial; throws
  // std::invalid_argument("characteristic polynomial must be monic") otherwise.
  static RecurrenceSpec from_charpoly(const IntPoly& charpoly, std::vector<i64> init);

  unsigned order() const { return static_cast<unsigned>(coeffs_.size()); }
  const std::vector<i64>& coeffs() const { return coeffs_; }
  const std::vector<i64>& init() const { return init_; }
  // x^d + c_{d-1} x^{d-1} + ... + c_0
  IntPoly charpoly() const;
  std::vector<u64> init_mod(u64 p) const;
  // Stable identity of the spec, e.g. "poly=1,-1,-1,-1;init=1,1,1".
  std::string fingerprint() const;

  friend bool operator==(const RecurrenceSpec&, const RecurrenceSpec&) = default;

 private:
  std::vector<i64> coeffs_;
  std::vector<i64> init_;
};

// Streams a_n mod p for n = 0, 1, 2, ... Single consumer.
class ModStream {
 public:
  ModStream(const RecurrenceSpec& spec, u64 p);

  u64 current() const { return window_[0]; }
  u64 index() const { return index_; }
  void advance();
  // True when the state window (a_n, ..., a_{n+d-1}) equals the initial one.
  bool at_initial_state() const;

 private:
  u64 p_;
  std::vector<u64> neg_coeffs_;  // -c_i mod p
  std::vector<u64> initial_;
  std::vector<u64> window_;  // (a_n, ..., a_{n+d-1})
  u64 index_ = 0;
  bool narrow_;  // p < 2^30: d products of residues sum without overflow in 64 bits
  u64 barrett_ = 0;  // floor(2^64 / p), narrow path only
};

inline constexpr u64 kTermIntGuard = 10'000;

// Exact a_n; throws std::out_of_range("use term_mod") beyond kTermIntGuard.
mpz_class term_int(const RecurrenceSpec& spec, u64 n);

// a_n mod p by companion-matrix binary powering.
u64 term_mod(const RecurrenceSpec& spec, u64 n, u64 p);

enum class PeriodMethod { brute, root_orders };

inline constexpr u64 kDefaultBruteCap = 10'000'000;

// Least T >= 1 with the state returning to its initial value.
// Throws std::domain_error("not purely periodic") when p | c_0; the root-orders
// method also throws when P is not squarefree mod p, and the brute method throws
// std::runtime_error if the period exceeds `step_cap`.
u64 period_mod(const RecurrenceSpec& spec, u64 p, PeriodMethod method,
               u64 step_cap = kDefaultBruteCap * 10, u64 seed = 0);

struct ZeroScan {
  enum class Kind { divisor, nondivisor, capped };
  Kind kind = Kind::capped;
  u64 witness = 0;  // least n with p | a_n, for divisor
  u64 steps = 0;    // terms inspected

  friend bool operator==(const ZeroScan&, const ZeroScan&) = default;
};

// Scans a_0, a_1, ... mod p until a zero, a full period, or `cap` terms.
ZeroScan has_zero_bruteforce(const RecurrenceSpec& spec, u64 p, u64 cap = kDefaultBruteCap);

// Indices n <= bound with a_n = 0 exactly.
std::vector<u64> zero_term_scan(const RecurrenceSpec& spec, u64 bound);

struct PowerProbe {
  bool all_powers = true;
  std::optional<u64> counterexample;  // first n with |a_{An+B}| not a D-th power
};

// Integer perfect-power test of |a_{A n + B}| for n = 0..count-1.
PowerProbe perfect_power_probe(const RecurrenceSpec& spec, unsigned D, u64 A, u64 B, u64 count);

}  // namespace recdiv
