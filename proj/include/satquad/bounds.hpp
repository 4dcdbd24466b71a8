#ifndef SATQUAD_BOUNDS_HPP
#define SATQUAD_BOUNDS_HPP

// Upper bounds on the length function l_q(3t+1, 3) built from the greedy
// quadric construction, and the previously known bound they are compared to.
//
// Integer recurrences run in 128-bit arithmetic; real-valued bounds use long
// double with the natural logarithm throughout.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satquad/error.hpp"
#include "satquad/numeric.hpp"
#include "satquad/projective.hpp"

namespace satquad::bounds {

using real = long double;

namespace constants {
inline constexpr std::uint64_t kV = 1516750;            // threshold for Bound C
inline constexpr std::uint64_t kQ0 = 100000;            // Bound B region
inline constexpr std::uint64_t kDeltaThreshold = 88274;  // stated sign change of delta(q)
inline constexpr std::uint64_t kKnownFloor = 14983;      // known bound, lambda = cbrt(36)
inline constexpr std::uint64_t kBoundEMin = 13;
inline constexpr std::uint64_t kBoundEMax = 7949;
inline const real kLambdaStar = std::cbrt(36.0L);
inline const real kCbrt18 = std::cbrt(18.0L);                    // ~2.6207
inline const real kKnownLimit = 1.5L * std::cbrt(36.0L);         // ~4.953
inline const real kRatioLimit = 1.5L * std::cbrt(2.0L);          // ~1.8899
inline constexpr real kKMax = 20.339L;                           // last usable k
}  // namespace constants

/// (q ln q)^{1/3}, the normalizing scale of every bound.
inline real scale(real q) { return std::cbrt(q * std::log(q)); }
inline real normalized(real n, real q) { return n / scale(q); }

inline std::uint64_t binom2(std::uint64_t w) { return w * (w - 1) / 2; }

/// Lower bound on S_w^min, the least number of candidate quadric points that
/// newly cover a given uncovered point.
inline std::uint64_t s_w_min(std::uint64_t w, std::uint64_t q) {
  if (w < 3) throw Error(Errc::kInvalidArgument, "s_w_min needs w >= 3");
  if (q < 2) throw Error(Errc::kInvalidArgument, "s_w_min needs q >= 2");
  const std::uint64_t pairs = binom2(w);
  if (2 * pairs - 1 <= q) return pairs * (q - pairs);
  return (q % 2 == 1) ? (q * q - 1) / 4 : q * q / 4;
}

/// True when s_w_min uses the pair-count branch (2*C(w,2) - 1 <= q).
inline bool s_w_min_small_branch(std::uint64_t w, std::uint64_t q) { return 2 * binom2(w) - 1 <= q; }

// ---------------------------------------------------------------- Bound A

struct BoundA {
  std::uint64_t q = 0;
  std::uint64_t w_a = 0;
  std::uint64_t n_a = 0;
  /// uncovered[i] is #U_{3+i}; starts at q^3, ends at the first value <= 1.
  std::vector<u128> uncovered;

  /// Recurrence value for a set of size w (w >= 3); nullopt past the end.
  std::optional<u128> uncovered_at(std::uint64_t w) const {
    if (w < 3 || w - 3 >= uncovered.size()) return std::nullopt;
    return uncovered[w - 3];
  }
};

/// #U_3 = q^3, #U_{w+1} = #U_w - ceil(S_w^min #U_w / (q^2+1-w)), until
/// #U_{w+1} <= 1; then n^A = w + 1.
inline BoundA bound_a(std::uint64_t q) {
  if (q < 2) throw Error(Errc::kInvalidArgument, "bound_a needs q >= 2");
  BoundA out;
  out.q = q;
  u128 u = checked_pow(q, 3);
  out.uncovered.push_back(u);
  const u128 points = checked_add(checked_mul(q, q), 1);
  for (std::uint64_t w = 3;; ++w) {
    if (w >= points) throw Error(Errc::kOverflow, "bound_a recurrence ran past the quadric");
    const u128 den = points - w;
    const u128 num = checked_mul(s_w_min(w, q), u);
    const u128 step = (num + den - 1) / den;
    u = step >= u ? 0 : u - step;
    out.uncovered.push_back(u);
    if (u <= 1) {
      out.w_a = w;
      out.n_a = w + 1;
      return out;
    }
  }
}

/// Real-valued relaxation q^3 * prod_j (1 - S_j^min / (q^2+1-j)); entry i
/// corresponds to w = 3 + i like BoundA::uncovered.
inline std::vector<real> bound_a_product_form(std::uint64_t q, std::size_t steps) {
  std::vector<real> out;
  real u = std::pow(static_cast<real>(q), 3);
  out.push_back(u);
  const real points = static_cast<real>(q) * q + 1;
  for (std::uint64_t w = 3; out.size() < steps; ++w) {
    u *= 1.0L - static_cast<real>(s_w_min(w, q)) / (points - static_cast<real>(w));
    out.push_back(u);
  }
  return out;
}

// ---------------------------------------------------------------- Bound B

struct BoundB {
  std::uint64_t q = 0;
  std::optional<std::uint64_t> w_b;  // nullopt: not applicable
  std::optional<std::uint64_t> n_b;
  bool in_region = false;  // q >= q0
};

/// Left minus right side of (w-1)^3 - 0.3 w^5 / q >= 18 q ln q.
inline real bound_b_slack(std::uint64_t w, std::uint64_t q) {
  const real wr = static_cast<real>(w), qr = static_cast<real>(q);
  return (wr - 1) * (wr - 1) * (wr - 1) - 0.3L * std::pow(wr, 5) / qr - 18.0L * qr * std::log(qr);
}

/// Smallest w meeting the analytic inequality while 2 C(w,2) - 1 <= q holds.
inline BoundB bound_b(std::uint64_t q) {
  if (q < 2) throw Error(Errc::kInvalidArgument, "bound_b needs q >= 2");
  BoundB out;
  out.q = q;
  out.in_region = q >= constants::kQ0;
  for (std::uint64_t w = 3; s_w_min_small_branch(w, q); ++w) {
    if (bound_b_slack(w, q) >= 0) {
      out.w_b = w;
      out.n_b = w + 1;
      break;
    }
  }
  return out;
}

/// delta(q) = (sqrt q - 1)^3 - 0.3 q sqrt q - 18 q ln q.
inline real delta_q0(real q) {
  const real s = std::sqrt(q);
  return (s - 1) * (s - 1) * (s - 1) - 0.3L * q * s - 18.0L * q * std::log(q);
}

/// Smallest integer q in [lo, hi] with delta(q) > 0, by bisection; needs
/// delta(lo) <= 0 < delta(hi).
inline std::uint64_t delta_q0_root(std::uint64_t lo = 1000, std::uint64_t hi = 10000000) {
  if (delta_q0(static_cast<real>(lo)) > 0 || delta_q0(static_cast<real>(hi)) <= 0) {
    throw Error(Errc::kInvalidArgument, "delta_q0_root bracket does not straddle the sign change");
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (delta_q0(static_cast<real>(mid)) > 0) hi = mid;
    else lo = mid;
  }
  return hi;
}

// ---------------------------------------------------------------- Bound C

inline void require_k(real k) {
  // F is increasing in k for k < 45; beyond that the root stops being monotone.
  if (!(k > 18.0L) || !(k < 45.0L)) throw Error(Errc::kOutOfRange, "k must lie in (18, 45)");
}

/// F(k,q) = ((k-18)/0.302)^3 / k^5 - ln^2 q / q.
inline real f_kq(real k, real q) {
  require_k(k);
  const real a = (k - 18.0L) / 0.302L;
  const real l = std::log(q);
  return a * a * a / (k * k * k * k * k) - l * l / q;
}

struct WRoot {
  real k = 0;
  u128 ceil_w = 0;      // smallest integer q >= 8 with F(k,q) >= 0
  bool above_v = false;  // usable only when ceil_w > V
};

/// ceil(W(k)) by doubling and integer bisection; F(k,.) increases for q > e^2.
inline WRoot solve_w(real k) {
  require_k(k);
  auto f = [k](u128 q) { return f_kq(k, static_cast<real>(q)); };
  u128 lo = 8;
  u128 hi = constants::kV + 1;
  if (f(lo) >= 0) throw Error(Errc::kOutOfRange, "F(k, 8) >= 0; k outside the useful window");
  while (f(hi) < 0) {
    lo = hi;
    hi = checked_mul(hi, 2);
  }
  while (hi - lo > 1) {
    const u128 mid = lo + (hi - lo) / 2;
    if (f(mid) >= 0) hi = mid;
    else lo = mid;
  }
  return WRoot{k, hi, hi > constants::kV};
}

struct RealBound {
  real value = 0;       // length bound (a real)
  real normalized = 0;  // value / (q ln q)^{1/3}
  std::uint64_t ceil() const { return static_cast<std::uint64_t>(std::ceil(value)); }
};

/// n^C = (k q ln q)^{1/3} + 2, without a validity check.
inline RealBound bound_c_value(real k, real q) {
  const real s = scale(q);
  const real v = std::cbrt(k * q * std::log(q)) + 2.0L;
  return RealBound{v, std::cbrt(k) + 2.0L / s};
}

/// Explicit Bound C; throws out-of-region unless q >= ceil(W(k)) > V.
inline RealBound bound_c(real k, real q) {
  const WRoot root = solve_w(k);
  if (!root.above_v) throw Error(Errc::kOutOfRegion, "ceil(W(k)) <= V; k not usable");
  if (q < static_cast<real>(root.ceil_w)) throw Error(Errc::kOutOfRegion, "q below ceil(W(k))");
  return bound_c_value(k, q);
}

// ---------------------------------------------------------------- Bound D, E

/// n^D = ((18 + eps) q ln q)^{1/3} + 2; asymptotic, no hard floor.
inline RealBound bound_d(real q, real eps) {
  if (!(eps > 0)) throw Error(Errc::kInvalidArgument, "eps must be positive");
  return bound_c_value(18.0L + eps, q);
}

inline real bound_e_constant(std::uint64_t q) {
  if (q < constants::kBoundEMin || q > constants::kBoundEMax) {
    throw Error(Errc::kOutOfRange, "Bound E covers 13 <= q <= 7949");
  }
  if (q <= 4373) return 2.61L;
  if (q <= 7723) return 2.65L;
  return 2.69L;
}

inline RealBound bound_e(std::uint64_t q) {
  const real c = bound_e_constant(q);
  return RealBound{c * scale(static_cast<real>(q)), c};
}

// ---------------------------------------------------------------- known bound

/// Validity floor of the known bound: q > ceil(y) with Upsilon(y) = 1,
/// y > e^2. For lambda = cbrt(36) the published floor 14983 is used.
inline std::uint64_t known_bound_floor(real lambda) {
  if (std::fabs(lambda - constants::kLambdaStar) < 1e-12L) return constants::kKnownFloor;
  auto upsilon = [lambda](real y) {
    const real l = std::log(y);
    return lambda * lambda / 2 * std::cbrt(l * l / y);
  };
  real lo = std::exp(2.0L), hi = lo * 2;
  while (upsilon(hi) > 1) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    const real mid = (lo + hi) / 2;
    (upsilon(mid) > 1 ? lo : hi) = mid;
  }
  return static_cast<std::uint64_t>(std::ceil(hi)) + 1;
}

struct KnownBound {
  real value = 0;
  real normalized = 0;
  real omega = 0;
  bool valid = false;  // q at or above the published floor
};

/// n^knw = Omega_lambda(q) (q ln q)^{1/3} + 6.
inline KnownBound known_bound(real q, real lambda = constants::kLambdaStar) {
  if (!(lambda > 0)) throw Error(Errc::kInvalidArgument, "lambda must be positive");
  const real s = scale(q);
  const real l = std::log(q);
  const real upsilon = lambda * lambda / 2 * std::cbrt(l * l / q);
  const real beta = lambda - 2.0L / s;
  const real denom = 2.0L - 1.0L / q - upsilon;
  if (!(denom > 0) || !(beta > 0)) {
    throw Error(Errc::kOutOfRegion, "known bound undefined at this q");
  }
  KnownBound out;
  out.omega = lambda + 36.0L / (beta * beta * denom);
  out.value = out.omega * s + 6.0L;
  out.normalized = out.value / s;
  out.valid = q >= static_cast<real>(known_bound_floor(lambda));
  return out;
}

inline real ratio_knw_over_a(std::uint64_t q) {
  if (q < constants::kKnownFloor) throw Error(Errc::kOutOfRegion, "ratio needs q >= 14983");
  return known_bound(static_cast<real>(q)).value / static_cast<real>(bound_a(q).n_a);
}

/// 0.302 x^5 >= 0.3 (x+1)^5 with x = ((18+eps) q ln q)^{1/3}.
inline bool check_v(real q, real eps) {
  if (!(eps > 0)) throw Error(Errc::kInvalidArgument, "eps must be positive");
  const real x = std::cbrt((18.0L + eps) * q * std::log(q));
  return 0.302L * std::pow(x, 5) >= 0.3L * std::pow(x + 1, 5);
}

// ---------------------------------------------------------------- lifting

inline unsigned lift_t(unsigned r) {
  if (r < 4 || r % 3 != 1) throw Error(Errc::kInvalidArgument, "r must be 3t+1 with t >= 1");
  return (r - 1) / 3;
}

/// Delta(r,q) = 3 floor(q^{(r-7)/3}) + 2 floor(q^{(r-10)/3}) + [r == 13].
inline u128 delta_lift(unsigned r, std::uint64_t q) {
  const unsigned t = lift_t(r);
  if (q < 2) throw Error(Errc::kInvalidArgument, "q >= 2");
  // The exponents are t-2 and t-3; negative powers floor to zero.
  const u128 a = t >= 2 ? checked_pow(q, t - 2) : 0;
  const u128 b = t >= 3 ? checked_pow(q, t - 3) : 0;
  return checked_add(checked_add(checked_mul(3, a), checked_mul(2, b)), r == 13 ? 1 : 0);
}

/// n = n0 q^{(r-4)/3} + Delta(r,q) for a starting code with n0 < q.
inline u128 lift_length(std::uint64_t n0, unsigned r, std::uint64_t q) {
  const unsigned t = lift_t(r);
  if (n0 >= q) throw Error(Errc::kInapplicable, "lifting needs n0 < q");
  return checked_add(checked_mul(n0, checked_pow(q, t - 1)), delta_lift(r, q));
}

/// Real-valued lift of a real starting length (Bounds C, D, E).
inline real lift_real(real n0, unsigned r, std::uint64_t q) {
  const unsigned t = lift_t(r);
  if (!(n0 < static_cast<real>(q))) throw Error(Errc::kInapplicable, "lifting needs n0 < q");
  return n0 * std::pow(static_cast<real>(q), static_cast<real>(t - 1)) +
         static_cast<real>(delta_lift(r, q));
}

/// n^knw_{r,q} = n^knw_{4,q} q^{(r-4)/3} + 3 theta_{t-1,q}. At r = 4 this is
/// n^knw_{4,q} + 3, not the direct r = 4 value.
inline real known_lift(unsigned r, std::uint64_t q) {
  const unsigned t = lift_t(r);
  const KnownBound base = known_bound(static_cast<real>(q));
  return base.value * std::pow(static_cast<real>(q), static_cast<real>(t - 1)) +
         3.0L * static_cast<real>(theta(t - 1, q));
}

/// Normalization for codimension r: q^{(r-3)/3} (ln q)^{1/3}.
inline real lift_scale(unsigned r, real q) {
  return std::pow(q, (static_cast<real>(r) - 3.0L) / 3.0L) * std::cbrt(std::log(q));
}

// ---------------------------------------------------------------- reports

struct Table1Row {
  real k = 0;
  WRoot root;
  std::optional<real> nc_norm, nknw_norm, ratio;  // empty when ceil(W) <= V
};

inline Table1Row table1_row(real k) {
  Table1Row row;
  row.k = k;
  row.root = solve_w(k);
  if (row.root.above_v) {
    const real q = static_cast<real>(row.root.ceil_w);
    const RealBound c = bound_c_value(k, q);
    const KnownBound knw = known_bound(q);
    row.nc_norm = c.normalized;
    row.nknw_norm = knw.normalized;
    row.ratio = knw.value / c.value;
  }
  return row;
}

inline const std::vector<real>& table1_ks() {
  static const std::vector<real> ks{20.340L, 20.339L, 20.335L, 20.0L,  19.7L,   19.0L,
                                    18.5L,   18.1L,   18.05L,  18.01L, 18.001L, 18.0001L};
  return ks;
}

inline std::vector<Table1Row> table1() {
  std::vector<Table1Row> rows;
  for (real k : table1_ks()) rows.push_back(table1_row(k));
  return rows;
}

struct BoundReport {
  std::uint64_t q = 0;
  std::optional<std::uint64_t> n_a, n_b;
  std::optional<real> n_c, n_d, n_e, n_knw;
  std::optional<real> ratio_knw_a;
  bool b_in_region = false;
  real k = constants::kKMax;
  real eps = 0;

  static std::optional<real> norm(std::optional<real> n, std::uint64_t q) {
    if (!n) return std::nullopt;
    return normalized(*n, static_cast<real>(q));
  }
};

struct ReportOptions {
  bool a = true, b = true, c = true, d = false, e = true, knw = true, ratio = true;
  real k = constants::kKMax;
  real eps = 1e-3L;
};

/// Every bound at q, each left empty outside its validity region.
inline BoundReport report(std::uint64_t q, const ReportOptions& opt = {}) {
  BoundReport r;
  r.q = q;
  r.k = opt.k;
  r.eps = opt.eps;
  std::optional<BoundA> a;
  if (opt.a || opt.ratio) a = bound_a(q);
  if (opt.a) r.n_a = a->n_a;
  if (opt.b) {
    const BoundB b = bound_b(q);
    r.b_in_region = b.in_region;
    if (b.in_region && b.n_b) r.n_b = b.n_b;
  }
  if (opt.c) {
    const WRoot root = solve_w(opt.k);
    if (root.above_v && static_cast<real>(q) >= static_cast<real>(root.ceil_w)) {
      r.n_c = bound_c_value(opt.k, static_cast<real>(q)).value;
    }
  }
  if (opt.d) r.n_d = bound_d(static_cast<real>(q), opt.eps).value;
  if (opt.e && q >= constants::kBoundEMin && q <= constants::kBoundEMax) r.n_e = bound_e(q).value;
  if ((opt.knw || opt.ratio) && q >= constants::kKnownFloor) {
    const real knw = known_bound(static_cast<real>(q)).value;
    if (opt.knw) r.n_knw = knw;
    if (opt.ratio) r.ratio_knw_a = knw / static_cast<real>(a->n_a);
  }
  return r;
}

/// `samples` log-spaced integers covering [from, to], deduplicated.
inline std::vector<std::uint64_t> log_spaced(std::uint64_t from, std::uint64_t to,
                                             std::size_t samples) {
  if (from < 2 || to < from || samples == 0) {
    throw Error(Errc::kInvalidArgument, "empty or invalid sampling range");
  }
  std::vector<std::uint64_t> out;
  if (samples == 1 || from == to) {
    out.push_back(from);
    if (to != from && samples > 1) out.push_back(to);
    return out;
  }
  const real lf = std::log(static_cast<real>(from)), lt = std::log(static_cast<real>(to));
  for (std::size_t i = 0; i < samples; ++i) {
    std::uint64_t v = (i + 1 == samples)
                          ? to
                          : static_cast<std::uint64_t>(std::llround(
                                std::exp(lf + (lt - lf) * static_cast<real>(i) /
                                                  static_cast<real>(samples - 1))));
    v = std::clamp(v, from, to);
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  return out;
}

}  // namespace satquad::bounds

#endif  // SATQUAD_BOUNDS_HPP
