#include "recdiv/order_stats.hpp"

#include <algorithm>
#include <stdexcept>

namespace recdiv {

std::optional<OrderRow> root_order_row(const IntPoly& poly, u64 p, u64 seed) {
  if (poly.degree() < 1 || to_residue(poly.leading(), p) == 0) return std::nullopt;
  const FpPoly f = reduce_poly(poly, p);
  if (gcd(f, f.derivative()).degree() != 0) return std::nullopt;
  auto root = fp_root(poly, p, seed);
  if (!root || *root == 0) return std::nullopt;
  OrderRow row;
  row.p = p;
  row.root = *root;
  row.order = mult_order(*root, p);
  row.index = (p - 1) / row.order;
  if (pow_mod(row.root, row.order, p) != 1 || f.evaluate(row.root) != 0)
    throw std::logic_error("order row invariant violated");
  return row;
}

std::vector<OrderRow> order_rows(const IntPoly& poly, u64 limit, u64 seed) {
  std::vector<OrderRow> rows;
  for (u64 p : sieve_primes(limit)) {
    if (p == 2) continue;
    if (auto row = root_order_row(poly, p, seed)) rows.push_back(*row);
  }
  return rows;
}

IndexHistogram index_histogram(const std::vector<OrderRow>& rows, const std::vector<u64>& c_grid) {
  if (!std::is_sorted(c_grid.begin(), c_grid.end()))
    throw std::invalid_argument("C grid must be ascending");
  if (rows.empty()) throw std::domain_error("no qualifying primes");
  IndexHistogram h;
  h.rows = rows.size();
  for (const auto& row : rows) h.max_index = std::max(h.max_index, row.index);
  for (u64 c : c_grid) {
    HistogramPoint pt;
    pt.c = c;
    pt.count = static_cast<u64>(std::count_if(rows.begin(), rows.end(), [c](const OrderRow& r) { return r.index <= c; }));
    pt.density = static_cast<double>(pt.count) / static_cast<double>(h.rows);
    h.points.push_back(pt);
  }
  return h;
}

IndexHistogram index_histogram(const IntPoly& poly, u64 limit, const std::vector<u64>& c_grid, u64 seed) {
  return index_histogram(order_rows(poly, limit, seed), c_grid);
}

ArtinCount artin_count(i64 a, u64 limit) {
  ArtinCount out;
  for (u64 p : sieve_primes(limit)) {
    if (p == 2) continue;
    const u64 r = to_residue(a, p);
    if (r == 0) continue;
    ++out.primes;
    if (mult_order(r, p) == p - 1) ++out.primitive;
  }
  return out;
}

double artin_fraction(i64 a, u64 limit) { return artin_count(a, limit).fraction(); }

}  // namespace recdiv
