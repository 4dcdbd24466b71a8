#ifndef SATQUAD_PROJECTIVE_HPP
#define SATQUAD_PROJECTIVE_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "satquad/error.hpp"
#include "satquad/field.hpp"
#include "satquad/numeric.hpp"

namespace satquad {

/// Dense index of a projective object; the tag keeps points and planes apart.
template <class Tag>
struct Index {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(Index, Index) = default;
};

struct PointTag;
struct PlaneTag;
using PointId = Index<PointTag>;
using PlaneId = Index<PlaneTag>;

template <std::size_t D>
using Vec = std::array<Elem, D>;
using Vec3 = Vec<3>;
using Vec4 = Vec<4>;

/// theta_{N,q} = (q^{N+1} - 1) / (q - 1), the number of points of PG(N,q).
inline u128 theta(unsigned n, u128 q) {
  if (q < 2) throw Error(Errc::kInvalidArgument, "theta needs q >= 2");
  u128 sum = 0, term = 1;
  for (unsigned i = 0; i <= n; ++i) {
    sum = checked_add(sum, term);
    if (i < n) term = checked_mul(term, q);
  }
  return sum;
}

/// Small dense linear algebra over a GaloisField on fixed-width rows.
template <std::size_t D>
class RowReducer {
 public:
  explicit RowReducer(const GaloisField& field) : f_(field) {}

  /// Reduced row echelon form in place; returns the pivot columns.
  std::vector<std::size_t> rref(std::vector<Vec<D>>& rows) const {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < D && r < rows.size(); ++col) {
      std::size_t sel = r;
      while (sel < rows.size() && rows[sel][col] == 0) ++sel;
      if (sel == rows.size()) continue;
      std::swap(rows[r], rows[sel]);
      const Elem s = f_.inv(rows[r][col]);
      for (auto& x : rows[r]) x = f_.mul(x, s);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == r || rows[i][col] == 0) continue;
        const Elem factor = rows[i][col];
        for (std::size_t j = 0; j < D; ++j) {
          rows[i][j] = f_.sub(rows[i][j], f_.mul(factor, rows[r][j]));
        }
      }
      pivots.push_back(col);
      ++r;
    }
    rows.resize(r);
    return pivots;
  }

  std::size_t rank(std::vector<Vec<D>> rows) const { return rref(rows).size(); }

  /// Basis of {x : row . x = 0 for all rows}, itself in reduced echelon form,
  /// so every combination with a canonical coefficient tuple is canonical.
  std::vector<Vec<D>> nullspace(std::vector<Vec<D>> rows) const {
    const auto pivots = rref(rows);
    std::vector<Vec<D>> basis;
    for (std::size_t free = 0; free < D; ++free) {
      if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
      Vec<D> v{};
      v[free] = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f_.neg(rows[r][free]);
      basis.push_back(v);
    }
    rref(basis);
    return basis;
  }

 private:
  const GaloisField& f_;
};

/// Closed-form ranking of canonical vectors in PG(D-1, q). The order is
/// lexicographic over canonical coordinate tuples.
template <std::size_t D>
class ProjectiveIndexer {
 public:
  explicit ProjectiveIndexer(std::uint32_t q) : q_(q) {
    // block_offset_[j]: rank of the first vector whose leading 1 sits at j.
    std::uint64_t off = 0;
    for (std::size_t j = D; j-- > 0;) {
      block_offset_[j] = off;
      std::uint64_t block = 1;
      for (std::size_t i = j + 1; i < D; ++i) block *= q;
      off += block;
    }
    size_ = off;
  }

  std::uint64_t size() const noexcept { return size_; }

  std::uint64_t rank(const Vec<D>& v) const noexcept {
    std::size_t lead = 0;
    while (v[lead] == 0) ++lead;
    std::uint64_t r = 0;
    for (std::size_t i = lead + 1; i < D; ++i) r = r * q_ + v[i];
    return block_offset_[lead] + r;
  }

  Vec<D> unrank(std::uint64_t r) const noexcept {
    std::size_t lead = 0;
    while (r < block_offset_[lead]) ++lead;
    r -= block_offset_[lead];
    Vec<D> v{};
    v[lead] = 1;
    for (std::size_t i = D; i-- > lead + 1;) {
      v[i] = static_cast<Elem>(r % q_);
      r /= q_;
    }
    return v;
  }

 private:
  std::uint64_t q_;
  std::array<std::uint64_t, D> block_offset_{};
  std::uint64_t size_ = 0;
};

/// A line of PG(3,q), represented by its two smallest-index points.
struct ProjLine {
  PointId first;
  PointId second;
  friend constexpr bool operator==(const ProjLine&, const ProjLine&) = default;
};

/// PG(3,q): points and planes share the same dense indexing, a plane being
/// indexed by its canonical coefficient vector.
class ProjectiveSpace3 {
 public:
  static constexpr std::uint32_t kMaxOrder = 256;

  explicit ProjectiveSpace3(GaloisField field)
      : field_(std::move(field)), index_(field_.order()), plane_index_(field_.order()) {
    if (field_.order() > kMaxOrder) {
      throw Error(Errc::kSizeLimit, "PG(3,q) indexing supports q <= 256");
    }
  }

  const GaloisField& field() const noexcept { return field_; }
  std::uint32_t q() const noexcept { return field_.order(); }
  std::uint32_t num_points() const noexcept { return static_cast<std::uint32_t>(index_.size()); }
  std::uint32_t num_planes() const noexcept { return num_points(); }
  std::uint32_t points_per_plane() const noexcept {
    return static_cast<std::uint32_t>(plane_index_.size());
  }

  Vec4 point(PointId id) const noexcept { return index_.unrank(id.value); }
  Vec4 plane(PlaneId id) const noexcept { return index_.unrank(id.value); }

  template <std::size_t D>
  Vec<D> canonical(Vec<D> v) const {
    std::size_t lead = 0;
    while (lead < D && v[lead] == 0) ++lead;
    if (lead == D) throw Error(Errc::kInvalidArgument, "zero vector has no projective point");
    if (v[lead] != 1) {
      const Elem s = field_.inv(v[lead]);
      for (std::size_t i = lead; i < D; ++i) v[i] = field_.mul(v[i], s);
    }
    return v;
  }

  PointId point_id(const Vec4& v) const { return PointId{rank_canonical(canonical(v))}; }
  PlaneId plane_id(const Vec4& v) const { return PlaneId{rank_canonical(canonical(v))}; }
  std::uint32_t rank_canonical(const Vec4& v) const noexcept {
    return static_cast<std::uint32_t>(index_.rank(v));
  }

  template <std::size_t D>
  Elem dot(const Vec<D>& a, const Vec<D>& b) const noexcept {
    Elem s = 0;
    for (std::size_t i = 0; i < D; ++i) s = field_.add(s, field_.mul(a[i], b[i]));
    return s;
  }

  bool incident(PointId p, PlaneId pi) const noexcept { return dot(point(p), plane(pi)) == 0; }

  Elem det3(const Vec3& a, const Vec3& b, const Vec3& c) const noexcept {
    const auto& f = field_;
    const Elem m0 = f.sub(f.mul(b[1], c[2]), f.mul(b[2], c[1]));
    const Elem m1 = f.sub(f.mul(b[0], c[2]), f.mul(b[2], c[0]));
    const Elem m2 = f.sub(f.mul(b[0], c[1]), f.mul(b[1], c[0]));
    return f.add(f.sub(f.mul(a[0], m0), f.mul(a[1], m1)), f.mul(a[2], m2));
  }

  Elem det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) const noexcept {
    Elem sum = 0;
    for (std::size_t col = 0; col < 4; ++col) {
      const Elem minor = det3(drop(b, col), drop(c, col), drop(d, col));
      const Elem term = field_.mul(a[col], minor);
      sum = (col % 2 == 0) ? field_.add(sum, term) : field_.sub(sum, term);
    }
    return sum;
  }

  /// Generalized cross product: the signed 3x3 minors of the 3x4 matrix
  /// [a; b; c]. All zero exactly when the rows have rank < 3.
  Vec4 cross(const Vec4& a, const Vec4& b, const Vec4& c) const noexcept {
    Vec4 n{};
    for (std::size_t col = 0; col < 4; ++col) {
      const Elem minor = det3(drop(a, col), drop(b, col), drop(c, col));
      n[col] = (col % 2 == 0) ? minor : field_.neg(minor);
    }
    return n;
  }

  bool collinear(PointId a, PointId b, PointId c) const noexcept {
    const Vec4 n = cross(point(a), point(b), point(c));
    return n == Vec4{};
  }

  /// Unique plane through three non-collinear points.
  PlaneId plane_through(PointId a, PointId b, PointId c) const {
    const Vec4 n = cross(point(a), point(b), point(c));
    if (n == Vec4{}) throw Error(Errc::kDegenerateSpan, "points are repeated or collinear");
    return plane_id(n);
  }

  std::optional<PlaneId> try_plane_through(const Vec4& a, const Vec4& b, const Vec4& c) const {
    const Vec4 n = cross(a, b, c);
    if (n == Vec4{}) return std::nullopt;
    return plane_id(n);
  }

  /// Calls fn(PointId) for each of the q^2+q+1 points of the plane; the
  /// points are generated from an echelon spanning triple, no sorting.
  template <class Fn>
  void for_each_point_on_plane(PlaneId pi, Fn&& fn) const {
    const auto basis = RowReducer<4>(field_).nullspace({plane(pi)});
    span3(basis, [&](const Vec4& v) { fn(PointId{rank_canonical(v)}); });
  }

  /// Dual of the above: every plane through the point.
  template <class Fn>
  void for_each_plane_through_point(PointId p, Fn&& fn) const {
    const auto basis = RowReducer<4>(field_).nullspace({point(p)});
    span3(basis, [&](const Vec4& v) { fn(PlaneId{rank_canonical(v)}); });
  }

  std::vector<PointId> points_on_plane(PlaneId pi) const {
    std::vector<PointId> out;
    out.reserve(points_per_plane());
    for_each_point_on_plane(pi, [&](PointId p) { out.push_back(p); });
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<PlaneId> planes_through_point(PointId p) const {
    std::vector<PlaneId> out;
    out.reserve(points_per_plane());
    for_each_plane_through_point(p, [&](PlaneId pi) { out.push_back(pi); });
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<PointId> points_on_line(PointId a, PointId b) const {
    if (a == b) throw Error(Errc::kDegenerateSpan, "a line needs two distinct points");
    std::vector<Vec4> rows{point(a), point(b)};
    RowReducer<4>(field_).rref(rows);
    std::vector<PointId> out;
    out.reserve(q() + 1);
    for (Elem t = 0; t < q(); ++t) out.push_back(PointId{rank_canonical(combine(rows[0], t, rows[1]))});
    out.push_back(PointId{rank_canonical(rows[1])});
    std::sort(out.begin(), out.end());
    return out;
  }

  ProjLine line_through(PointId a, PointId b) const {
    const auto pts = points_on_line(a, b);
    return ProjLine{pts[0], pts[1]};
  }

  std::vector<PointId> points_on_line(const ProjLine& line) const {
    return points_on_line(line.first, line.second);
  }

  /// The q+1 planes containing the line.
  std::vector<PlaneId> pencil_through_line(const ProjLine& line) const {
    if (line.first == line.second) throw Error(Errc::kDegenerateSpan, "line needs two points");
    const auto basis = RowReducer<4>(field_).nullspace({point(line.first), point(line.second)});
    std::vector<PlaneId> out;
    out.reserve(q() + 1);
    for (Elem t = 0; t < q(); ++t) out.push_back(PlaneId{rank_canonical(combine(basis[0], t, basis[1]))});
    out.push_back(PlaneId{rank_canonical(basis[1])});
    return out;
  }

  /// a + t*b (componentwise).
  template <std::size_t D>
  Vec<D> combine(const Vec<D>& a, Elem t, const Vec<D>& b) const noexcept {
    Vec<D> v;
    for (std::size_t i = 0; i < D; ++i) v[i] = field_.add(a[i], field_.mul(t, b[i]));
    return v;
  }

 private:
  static Vec3 drop(const Vec4& v, std::size_t col) noexcept {
    Vec3 r{};
    for (std::size_t i = 0, j = 0; i < 4; ++i) {
      if (i != col) r[j++] = v[i];
    }
    return r;
  }

  // Visits every canonical combination of an echelon basis of three vectors.
  template <class Fn>
  void span3(const std::vector<Vec4>& basis, Fn&& fn) const {
    const Elem q = this->q();
    for (Elem b = 0; b < q; ++b) {
      const Vec4 head = combine(basis[0], b, basis[1]);
      for (Elem c = 0; c < q; ++c) fn(combine(head, c, basis[2]));
    }
    for (Elem c = 0; c < q; ++c) fn(combine(basis[1], c, basis[2]));
    fn(basis[2]);
  }

  GaloisField field_;
  ProjectiveIndexer<4> index_;
  ProjectiveIndexer<3> plane_index_;
};

}  // namespace satquad

#endif  // SATQUAD_PROJECTIVE_HPP
