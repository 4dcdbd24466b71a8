#ifndef SATQUAD_FIELD_HPP
#define SATQUAD_FIELD_HPP

#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "satquad/error.hpp"
#include "satquad/numeric.hpp"

namespace satquad {

/// A field element is its integer encoding in [0, q): the base-p digits are
/// the polynomial coefficients, constant term least significant.
using Elem = std::uint32_t;

namespace detail {

// Polynomials over GF(p) as coefficient vectors, constant term first.
using Poly = std::vector<std::uint32_t>;

inline void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  // p is prime and small, Fermat is plenty.
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e != 0; e >>= 1) {
    if (e & 1U) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  poly_trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod_p(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = factor * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    poly_trim(a);
  }
  return a;
}

inline bool poly_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg <= 1) return deg == 1;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// GF(p^h) with eager lookup tables. Immutable after construction.
class GaloisField {
 public:
  static constexpr unsigned kMaxDegree = 7;
  static constexpr std::uint32_t kMaxOrder = 1U << 16;

  /// Deterministic field: the modulus is the smallest monic irreducible of
  /// degree h when coefficient tuples (c_{h-1},...,c_0) are compared
  /// lexicographically. For h = 1 the modulus is x.
  GaloisField(std::uint32_t p, unsigned h) : GaloisField(p, h, smallest_modulus(p, h)) {}

  /// Field with an explicit modulus (h coefficients, constant term first,
  /// leading 1 implicit), e.g. as read back from a set file.
  GaloisField(std::uint32_t p, unsigned h, std::vector<std::uint32_t> modulus)
      : p_(p), h_(h), modulus_(std::move(modulus)) {
    validate(p, h);
    if (modulus_.size() != h) {
      throw Error(Errc::kInvalidArgument, "modulus must have h coefficients");
    }
    for (auto c : modulus_) {
      if (c >= p) throw Error(Errc::kInvalidArgument, "modulus coefficient out of range");
    }
    if (!detail::poly_irreducible(full_modulus(), p_)) {
      throw Error(Errc::kInvalidArgument, "modulus is not irreducible");
    }
    q_ = 1;
    for (unsigned i = 0; i < h_; ++i) q_ *= p_;
    build_tables();
  }

  /// Field of order q; throws when q is not a prime power.
  static GaloisField of_order(std::uint64_t q) {
    const auto pp = prime_power(q);
    if (!pp) throw Error(Errc::kNonPrime, "q = " + std::to_string(q) + " is not a prime power");
    if (q > kMaxOrder) throw Error(Errc::kOutOfRange, "q exceeds 2^16");
    return GaloisField(static_cast<std::uint32_t>(pp->p), pp->h);
  }

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return h_; }
  std::uint32_t order() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  Elem primitive_element() const noexcept { return generator_; }

  Elem add(Elem a, Elem b) const noexcept {
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    return add_digits(a, b);
  }
  Elem neg(Elem a) const noexcept { return neg_[a]; }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg_[b]); }

  Elem mul(Elem a, Elem b) const noexcept {
    if (!mul_table_.empty()) return mul_table_[a * q_ + b];
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  Elem inv(Elem a) const {
    if (a == 0) throw Error(Errc::kDivisionByZero, "inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t e) const noexcept {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1)) % (q_ - 1)];
  }

  /// Schoolbook polynomial product reduced by the modulus. Table-free; used
  /// to build the tables and as a cross-check.
  Elem mul_poly(Elem a, Elem b) const {
    detail::Poly pa = digits(a), pb = digits(b);
    detail::Poly prod(pa.size() + pb.size(), 0);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = 0; j < pb.size(); ++j) {
        prod[i + j] = static_cast<std::uint32_t>(
            (prod[i + j] + static_cast<std::uint64_t>(pa[i]) * pb[j]) % p_);
      }
    }
    return from_digits(detail::poly_mod(std::move(prod), full_modulus(), p_));
  }

  /// `q <q> p <p> h <h> modulus <c0,...,c_{h-1}>`
  std::string spec_line() const {
    std::ostringstream out;
    out << "q " << q_ << " p " << p_ << " h " << h_ << " modulus ";
    for (unsigned i = 0; i < h_; ++i) out << (i ? "," : "") << modulus_[i];
    return out.str();
  }

  static std::vector<std::uint32_t> smallest_modulus(std::uint32_t p, unsigned h) {
    validate(p, h);
    if (h == 1) return {0};
    std::uint64_t count = 1;
    for (unsigned i = 0; i < h; ++i) count *= p;
    // Integer order of sum c_i p^i equals lexicographic order of (c_{h-1},...,c_0).
    for (std::uint64_t code = 0; code < count; ++code) {
      detail::Poly f(h + 1, 0);
      std::uint64_t c = code;
      for (unsigned i = 0; i < h; ++i) {
        f[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      f[h] = 1;
      if (detail::poly_irreducible(f, p)) return {f.begin(), f.begin() + h};
    }
    throw Error(Errc::kInvalidArgument, "no irreducible polynomial found");
  }

 private:
  static void validate(std::uint32_t p, unsigned h) {
    if (!is_prime(p)) throw Error(Errc::kNonPrime, std::to_string(p) + " is not prime");
    if (h < 1 || h > kMaxDegree) throw Error(Errc::kOutOfRange, "degree h must be in [1, 7]");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < h; ++i) {
      q *= p;
      if (q > kMaxOrder) throw Error(Errc::kOutOfRange, "p^h exceeds 2^16");
    }
  }

  detail::Poly full_modulus() const {
    detail::Poly f(modulus_.begin(), modulus_.end());
    f.push_back(1);
    return f;
  }

  detail::Poly digits(Elem a) const {
    detail::Poly d;
    while (a != 0) {
      d.push_back(a % p_);
      a /= p_;
    }
    return d;
  }

  Elem from_digits(const detail::Poly& d) const {
    Elem v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + d[i];
    return v;
  }

  Elem add_digits(Elem a, Elem b) const noexcept {
    if (h_ == 1) return (a + b) % p_;
    if (p_ == 2) return a ^ b;
    Elem result = 0, scale = 1;
    for (unsigned i = 0; i < h_; ++i) {
      result += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return result;
  }

  void build_tables() {
    neg_.resize(q_);
    for (Elem a = 0; a < q_; ++a) {
      Elem n = 0, scale = 1, x = a;
      for (unsigned i = 0; i < h_; ++i) {
        n += ((p_ - x % p_) % p_) * scale;
        x /= p_;
        scale *= p_;
      }
      neg_[a] = n;
    }

    // Smallest primitive element by direct order computation.
    log_.assign(q_, 0);
    exp_.assign(2 * static_cast<std::size_t>(q_), 0);
    for (Elem g = (q_ == 2 ? 1 : 2); g < q_; ++g) {
      Elem x = 1;
      std::uint32_t order = 0;
      do {
        x = mul_poly(x, g);
        ++order;
      } while (x != 1);
      if (order == q_ - 1) {
        generator_ = g;
        break;
      }
    }
    Elem x = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = x;
      exp_[i + q_ - 1] = x;
      log_[x] = i;
      x = mul_poly(x, generator_);
    }

    if (q_ <= kDenseTableLimit) {
      add_table_.resize(static_cast<std::size_t>(q_) * q_);
      mul_table_.resize(static_cast<std::size_t>(q_) * q_);
      for (Elem a = 0; a < q_; ++a) {
        for (Elem b = 0; b < q_; ++b) {
          add_table_[a * q_ + b] = add_digits(a, b);
          mul_table_[a * q_ + b] = (a == 0 || b == 0) ? 0 : exp_[log_[a] + log_[b]];
        }
      }
    }
  }

  static constexpr std::uint32_t kDenseTableLimit = 256;

  std::uint32_t p_ = 0;
  unsigned h_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Elem generator_ = 1;
  std::vector<Elem> neg_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
  std::vector<Elem> add_table_;
  std::vector<Elem> mul_table_;
};

}  // namespace satquad

#endif  // SATQUAD_FIELD_HPP
