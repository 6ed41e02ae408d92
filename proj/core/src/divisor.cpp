#include "recdiv/divisor.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace recdiv {

std::string to_string(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::ramified: return "ramified";
    case ExclusionReason::divides_c0: return "divides-c0";
    case ExclusionReason::gamma1_vanishes: return "gamma1-vanishes";
    case ExclusionReason::pattern_mismatch: return "pattern-mismatch";
    case ExclusionReason::zero_term_degenerate: return "zero-term-degenerate";
  }
  return "";
}

std::optional<ExclusionReason> exclusion_from_string(const std::string& s) {
  for (auto r : {ExclusionReason::ramified, ExclusionReason::divides_c0, ExclusionReason::gamma1_vanishes,
                 ExclusionReason::pattern_mismatch, ExclusionReason::zero_term_degenerate})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::structural: return "structural";
    case Method::brute: return "brute";
    case Method::both: return "both";
    case Method::none: return "none";
  }
  return "none";
}

std::string to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::divisor: return "divisor";
    case Verdict::Kind::nondivisor: return "nondivisor";
    case Verdict::Kind::excluded: return "excluded";
    case Verdict::Kind::indeterminate: return "indeterminate";
  }
  return "";
}

Verdict Verdict::divisor(const RecurrenceSpec& spec, u64 p, u64 witness, Method method) {
  if (term_mod(spec, witness, p) != 0)
    throw std::logic_error("divisor witness " + std::to_string(witness) + " fails at p = " + std::to_string(p));
  Verdict v;
  v.kind_ = Kind::divisor;
  v.method_ = method;
  v.witness_ = witness;
  return v;
}

Verdict Verdict::divisor_by_membership(u64 scanned) {
  Verdict v;
  v.kind_ = Kind::divisor;
  v.method_ = Method::structural;
  v.scanned_ = scanned;
  return v;
}

Verdict Verdict::nondivisor(Method method, u64 scanned) {
  Verdict v;
  v.kind_ = Kind::nondivisor;
  v.method_ = method;
  v.scanned_ = scanned;
  return v;
}

Verdict Verdict::excluded(ExclusionReason reason) {
  Verdict v;
  v.kind_ = Kind::excluded;
  v.reason_ = reason;
  return v;
}

Verdict Verdict::indeterminate(Method method, u64 scanned) {
  Verdict v;
  v.kind_ = Kind::indeterminate;
  v.method_ = method;
  v.scanned_ = scanned;
  return v;
}

std::variant<StructuralContext, ExclusionReason> build_context(const RecurrenceSpec& spec, u64 p, u64 seed) {
  const unsigned d = spec.order();
  if (d < 2) return ExclusionReason::pattern_mismatch;
  const u64 c0 = to_residue(spec.coeffs()[0], p);
  if (c0 == 0) return ExclusionReason::divides_c0;
  const IntPoly charpoly = spec.charpoly();
  const FactorPattern pat = pattern(charpoly, p, seed);
  if (!pat.squarefree) return ExclusionReason::ramified;
  if (!pat.is_one_and_rest(d)) return ExclusionReason::pattern_mismatch;

  // Sorted by degree, so the first factor is linear with the smallest root when d = 2.
  const auto factors = factor_mod_p(reduce_poly(charpoly, p), seed);
  StructuralContext ctx;
  ctx.p = p;
  ctx.a1 = sub_mod(0, factors.front().factor[0], p);
  ctx.ext = std::make_shared<const ExtField>(factors.back().factor);

  ExtElem theta = ExtElem::generator(ctx.ext);
  for (unsigned i = 0; i + 1 < d; ++i) {
    ctx.conj_roots.push_back(theta);
    theta = frobenius(theta);
  }
  std::vector<ExtElem> roots{ExtElem::scalar(ctx.ext, ctx.a1)};
  roots.insert(roots.end(), ctx.conj_roots.begin(), ctx.conj_roots.end());
  try {
    ctx.gammas = solve_gamma(roots, spec.init_mod(p));
  } catch (const std::domain_error&) {
    return ExclusionReason::ramified;
  }
  if (!ctx.gammas[0].in_base_field()) throw std::logic_error("gamma_1 left the base field");
  ctx.gamma1 = ctx.gammas[0].base_coord();
  if (ctx.gamma1 == 0) return ExclusionReason::gamma1_vanishes;

  ctx.nloc = d % 2 == 0 ? c0 : sub_mod(0, c0, p);
  if (ctx.nloc != mul_mod(ctx.a1, ext_norm(ctx.conj_roots.front()), p))
    throw std::logic_error("local norm identity fails at p = " + std::to_string(p));
  ctx.g = mul_mod(pow_mod(ctx.a1, d, p), inv_mod(ctx.nloc, p), p);
  ctx.p_minus_1 = factor_integer(p - 1);
  ctx.ord_g = mult_order(ctx.g, p, ctx.p_minus_1);

  u128 q = 0, pk = 1;
  for (unsigned i = 0; i + 1 < d; ++i) {
    q += pk;
    pk *= p;
  }
  if (q > static_cast<u128>(INT64_MAX)) throw std::overflow_error("(p^{d-1}-1)/(p-1) exceeds 2^63");
  ctx.q = static_cast<u64>(q);
  return ctx;
}

u64 structural_base(const StructuralContext& ctx) { return ctx.g; }

std::optional<u64> discrete_log(u64 base, u64 target, u64 order, u64 p) {
  const u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(order)))) + 1;
  std::unordered_map<u64, u64> baby;
  baby.reserve(m);
  u64 cur = 1;
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = mul_mod(cur, base, p);
  }
  const u64 giant = inv_mod(pow_mod(base, m, p), p);
  u64 gamma = target % p;
  for (u64 i = 0; i <= m; ++i) {
    if (auto it = baby.find(gamma); it != baby.end()) return (i * m + it->second) % order;
    gamma = mul_mod(gamma, giant, p);
  }
  return std::nullopt;
}

Verdict structural_detect(const StructuralContext& ctx, const RecurrenceSpec& spec, u64 r_cap,
                          bool recover_witness) {
  const u64 p = ctx.p;
  const u64 limit = std::min(ctx.q, r_cap);
  const bool whole_group = ctx.ord_g == p - 1;
  const u64 a1_inv = inv_mod(ctx.a1, p);
  ModStream stream(spec, p);
  u64 lead = ctx.gamma1;                 // gamma1 * a1^r
  u64 lead_inv = inv_mod(ctx.gamma1, p);  // (gamma1 * a1^r)^{-1}
  for (u64 r = 0; r < limit; ++r) {
    const u64 tail = sub_mod(stream.current(), lead, p);
    if (tail != 0) {
      const u64 rhs = mul_mod(sub_mod(0, tail, p), lead_inv, p);
      if (whole_group || pow_mod(rhs, ctx.ord_g, p) == 1) {
        if (!recover_witness) return Verdict::divisor_by_membership(r + 1);
        auto k = discrete_log(ctx.g, rhs, ctx.ord_g, p);
        if (!k) throw std::logic_error("discrete log failed for a subgroup member");
        u128 n = static_cast<u128>(*k) * ctx.q + r;
        if (n > static_cast<u128>(INT64_MAX)) throw std::overflow_error("witness index exceeds 2^63");
        return Verdict::divisor(spec, p, static_cast<u64>(n), Method::structural);
      }
    }
    stream.advance();
    lead = mul_mod(lead, ctx.a1, p);
    lead_inv = mul_mod(lead_inv, a1_inv, p);
  }
  if (limit == ctx.q) return Verdict::nondivisor(Method::structural, limit);
  return Verdict::indeterminate(Method::structural, limit);
}

namespace {

Verdict from_scan(const RecurrenceSpec& spec, u64 p, const ZeroScan& scan, Method method) {
  switch (scan.kind) {
    case ZeroScan::Kind::divisor: return Verdict::divisor(spec, p, scan.witness, method);
    case ZeroScan::Kind::nondivisor: return Verdict::nondivisor(method, scan.steps);
    case ZeroScan::Kind::capped: break;
  }
  return Verdict::indeterminate(method, scan.steps);
}

bool same_decision(const Verdict& v, const ZeroScan& scan) {
  return (v.kind() == Verdict::Kind::divisor && scan.kind == ZeroScan::Kind::divisor) ||
         (v.kind() == Verdict::Kind::nondivisor && scan.kind == ZeroScan::Kind::nondivisor);
}

}  // namespace

Detection detect_full(const RecurrenceSpec& spec, u64 p, const DetectPolicy& policy) {
  const unsigned d = spec.order();
  Detection out{pattern(spec.charpoly(), p, policy.seed), Verdict::excluded(ExclusionReason::ramified), {}};
  if (policy.zero_term) {
    out.verdict = Verdict::divisor(spec, p, *policy.zero_term, Method::none);
    return out;
  }
  if (to_residue(spec.coeffs()[0], p) == 0) {
    out.verdict = Verdict::excluded(ExclusionReason::divides_c0);
    return out;
  }
  if (!out.pattern.squarefree) {
    out.verdict = Verdict::excluded(ExclusionReason::ramified);
    return out;
  }
  if (out.pattern.is_one_and_rest(d)) {
    auto built = build_context(spec, p, policy.seed);
    if (auto* reason = std::get_if<ExclusionReason>(&built)) {
      out.verdict = Verdict::excluded(*reason);
      return out;
    }
    out.context = std::get<StructuralContext>(std::move(built));
    out.verdict = structural_detect(*out.context, spec, policy.r_cap, policy.recover_witness);
    if (policy.cross_check) {
      ZeroScan scan = has_zero_bruteforce(spec, p, policy.brute_cap);
      if (scan.kind == ZeroScan::Kind::capped) return out;
      if (out.verdict.kind() == Verdict::Kind::indeterminate) {
        out.verdict = from_scan(spec, p, scan, Method::brute);
      } else if (same_decision(out.verdict, scan)) {
        if (out.verdict.kind() == Verdict::Kind::nondivisor) {
          out.verdict = Verdict::nondivisor(Method::both, out.verdict.scanned());
        } else {
          out.verdict = Verdict::divisor(spec, p, out.verdict.witness().value_or(scan.witness), Method::both);
        }
      } else {
        throw std::logic_error("structural and brute-force detectors disagree at p = " + std::to_string(p));
      }
    }
    return out;
  }
  out.verdict = from_scan(spec, p, has_zero_bruteforce(spec, p, policy.brute_cap), Method::brute);
  return out;
}

Verdict detect(const RecurrenceSpec& spec, u64 p, const DetectPolicy& policy) {
  return detect_full(spec, p, policy).verdict;
}

std::vector<Disagreement> cross_validate(const RecurrenceSpec& spec, u64 prime_limit, u64 cap, u64 seed) {
  std::vector<Disagreement> out;
  for (u64 p : sieve_primes(prime_limit)) {
    auto built = build_context(spec, p, seed);
    const auto* ctx = std::get_if<StructuralContext>(&built);
    if (ctx == nullptr) continue;
    Verdict structural = structural_detect(*ctx, spec, UINT64_MAX, true);
    ZeroScan brute = has_zero_bruteforce(spec, p, cap);
    if (!same_decision(structural, brute)) out.push_back({p, structural, brute});
  }
  return out;
}

}  // namespace recdiv
