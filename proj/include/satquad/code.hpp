#ifndef SATQUAD_CODE_HPP
#define SATQUAD_CODE_HPP

// Codes of codimension 4 whose parity-check columns are the points of a set.

#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <vector>

#include "satquad/error.hpp"
#include "satquad/field.hpp"
#include "satquad/projective.hpp"

namespace satquad {

struct CodeSpec {
  GaloisField field;
  std::vector<Vec4> columns;  // canonical, in set order

  std::uint32_t q() const noexcept { return field.order(); }
  std::size_t n() const noexcept { return columns.size(); }
  static constexpr unsigned r = 4;
};

inline CodeSpec parity_check_from_set(const GaloisField& field, std::span<const Vec4> points) {
  if (points.size() < 4) throw Error(Errc::kDegenerateSet, "need at least four columns");
  CodeSpec spec{field, {}};
  std::set<Vec4> seen;
  for (const Vec4& v : points) {
    std::size_t lead = 0;
    while (lead < 4 && v[lead] == 0) ++lead;
    if (lead == 4) throw Error(Errc::kDegenerateSet, "zero column");
    Vec4 c = v;
    const Elem s = field.inv(c[lead]);
    for (auto& x : c) x = field.mul(x, s);
    if (!seen.insert(c).second) throw Error(Errc::kDegenerateSet, "repeated projective point");
    spec.columns.push_back(c);
  }
  if (RowReducer<4>(field).rank(spec.columns) != 4) {
    throw Error(Errc::kDegenerateSet, "parity-check matrix has rank < 4");
  }
  return spec;
}

inline CodeSpec parity_check_from_set(const ProjectiveSpace3& space, std::span<const PointId> set) {
  std::vector<Vec4> cols;
  cols.reserve(set.size());
  for (PointId p : set) cols.push_back(space.point(p));
  return parity_check_from_set(space.field(), cols);
}

/// 4 rows of n field-element integers.
inline void dump_matrix(std::ostream& out, const CodeSpec& code) {
  for (std::size_t row = 0; row < 4; ++row) {
    for (std::size_t j = 0; j < code.n(); ++j) out << (j ? " " : "") << code.columns[j][row];
    out << '\n';
  }
}

struct MinDistance {
  unsigned d = 0;
  bool exact = true;  // false: only d >= 5 is known
};

inline constexpr std::size_t kMinDistanceMaxLength = 60;
inline constexpr std::uint32_t kMinDistanceMaxOrder = 13;

/// Smallest dependent column subset of size <= 4; larger distances are
/// reported as {5, inexact}.
inline MinDistance min_distance(const CodeSpec& code) {
  if (code.n() > kMinDistanceMaxLength || code.q() > kMinDistanceMaxOrder) {
    throw Error(Errc::kSizeLimit, "min_distance supports n <= 60, q <= 13");
  }
  const RowReducer<4> rr(code.field);
  const auto& c = code.columns;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (rr.rank({c[i], c[j], c[k]}) < 3) return {3, true};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l)
          if (rr.rank({c[i], c[j], c[k], c[l]}) < 4) return {4, true};
  return {5, false};
}

inline constexpr std::uint32_t kSyndromeMaxOrder = 16;

namespace detail {

// Breadth-first search over F_q^4 from 0, one column multiple per level.
// Returns the level of every syndrome (0xff if beyond max_level).
inline std::vector<std::uint8_t> syndrome_levels(const CodeSpec& code, unsigned max_level) {
  if (code.q() > kSyndromeMaxOrder) throw Error(Errc::kSizeLimit, "syndrome search supports q <= 16");
  const std::uint32_t q = code.q();
  const std::uint32_t total = q * q * q * q;
  const auto& f = code.field;
  auto encode = [q](const Vec4& v) { return ((v[0] * q + v[1]) * q + v[2]) * q + v[3]; };
  auto decode = [q](std::uint32_t s) {
    Vec4 v{};
    for (int i = 3; i >= 0; --i) {
      v[static_cast<std::size_t>(i)] = s % q;
      s /= q;
    }
    return v;
  };

  std::vector<Vec4> steps;
  for (const Vec4& col : code.columns) {
    for (Elem a = 1; a < q; ++a) steps.push_back({f.mul(a, col[0]), f.mul(a, col[1]), f.mul(a, col[2]), f.mul(a, col[3])});
  }

  std::vector<std::uint8_t> level(total, 0xff);
  level[0] = 0;
  std::vector<std::uint32_t> frontier{0}, next;
  std::uint32_t reached = 1;
  for (unsigned l = 1; l <= max_level && !frontier.empty() && reached < total; ++l) {
    next.clear();
    for (std::uint32_t s : frontier) {
      const Vec4 v = decode(s);
      for (const Vec4& st : steps) {
        const std::uint32_t t = encode({f.add(v[0], st[0]), f.add(v[1], st[1]), f.add(v[2], st[2]), f.add(v[3], st[3])});
        if (level[t] == 0xff) {
          level[t] = static_cast<std::uint8_t>(l);
          next.push_back(t);
          ++reached;
        }
      }
    }
    frontier.swap(next);
  }
  return level;
}

}  // namespace detail

/// Whether every syndrome is a combination of at most three columns.
inline bool covering_radius_le3(const CodeSpec& code) {
  const auto level = detail::syndrome_levels(code, 3);
  for (auto l : level) {
    if (l == 0xff) return false;
  }
  return true;
}

/// Exact covering radius (the deepest BFS level).
inline unsigned covering_radius(const CodeSpec& code) {
  const auto level = detail::syndrome_levels(code, 254);
  unsigned r = 0;
  for (auto l : level) {
    if (l == 0xff) throw Error(Errc::kDegenerateSet, "syndrome space not spanned");
    r = std::max<unsigned>(r, l);
  }
  return r;
}

/// Number of syndromes at each combination weight 0..R.
inline std::vector<std::uint64_t> syndrome_level_sizes(const CodeSpec& code) {
  const auto level = detail::syndrome_levels(code, 254);
  std::vector<std::uint64_t> sizes;
  for (auto l : level) {
    if (l == 0xff) continue;
    if (sizes.size() <= l) sizes.resize(l + 1U, 0);
    ++sizes[l];
  }
  return sizes;
}

}  // namespace satquad

#endif  // SATQUAD_CODE_HPP
