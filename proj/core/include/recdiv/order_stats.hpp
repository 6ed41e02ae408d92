#pragma once

// Multiplicative orders of a root of P modulo p: per-prime rows, the index
// histogram (p-1)/ord as a function of the cutoff C, and the Artin
// primitive-root fraction as a calibration point.

#include <optional>
#include <vector>

#include "recdiv/polyfield.hpp"

namespace recdiv {

struct OrderRow {
  u64 p = 0;
  u64 root = 0;   // smallest root of P mod p
  u64 order = 0;  // multiplicative order of root
  u64 index = 0;  // (p - 1) / order
};

// None when P has no root mod p, when the smallest root is 0, or when p divides
// the leading coefficient or the discriminant (P not squarefree mod p).
std::optional<OrderRow> root_order_row(const IntPoly& poly, u64 p, u64 seed = 0);

// Rows for all odd primes p <= limit that yield one.
std::vector<OrderRow> order_rows(const IntPoly& poly, u64 limit, u64 seed = 0);

struct HistogramPoint {
  u64 c = 0;
  u64 count = 0;  // rows with index <= c
  double density = 0;
};

struct IndexHistogram {
  u64 rows = 0;
  u64 max_index = 0;
  std::vector<HistogramPoint> points;
};

// Throws std::invalid_argument for a non-ascending grid and
// std::domain_error("no qualifying primes") when no prime contributes a row.
IndexHistogram index_histogram(const IntPoly& poly, u64 limit, const std::vector<u64>& c_grid,
                               u64 seed = 0);
IndexHistogram index_histogram(const std::vector<OrderRow>& rows, const std::vector<u64>& c_grid);

struct ArtinCount {
  u64 primitive = 0;
  u64 primes = 0;
  double fraction() const { return primes == 0 ? 0.0 : static_cast<double>(primitive) / primes; }
};

// Odd primes p <= limit with p not dividing a, and how many have ord_p(a) = p - 1.
ArtinCount artin_count(i64 a, u64 limit);
double artin_fraction(i64 a, u64 limit);

}  // namespace recdiv
