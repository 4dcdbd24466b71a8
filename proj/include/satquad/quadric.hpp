#ifndef SATQUAD_QUADRIC_HPP
#define SATQUAD_QUADRIC_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "satquad/bitset.hpp"
#include "satquad/error.hpp"
#include "satquad/projective.hpp"

namespace satquad {

enum class LineKind { kExternal, kTangent, kBisecant };

/// Elliptic quadric x0*x1 = x2^2 + b*x2*x3 + c*x3^2 with t^2 + b*t + c
/// irreducible over GF(q). Owns the ambient space; immutable.
class EllipticQuadric {
 public:
  /// Uses the lexicographically smallest admissible (b, c).
  explicit EllipticQuadric(ProjectiveSpace3 space)
      : EllipticQuadric(std::move(space), std::pair<Elem, Elem>{}, true) {}

  EllipticQuadric(ProjectiveSpace3 space, Elem b, Elem c)
      : EllipticQuadric(std::move(space), std::pair<Elem, Elem>{b, c}, false) {}

  static EllipticQuadric of_order(std::uint64_t q) {
    return EllipticQuadric(ProjectiveSpace3(GaloisField::of_order(q)));
  }

  static bool irreducible_quadratic(const GaloisField& f, Elem b, Elem c) {
    for (Elem t = 0; t < f.order(); ++t) {
      if (f.add(f.mul(t, f.add(t, b)), c) == 0) return false;
    }
    return true;
  }

  static std::pair<Elem, Elem> smallest_form(const GaloisField& f) {
    for (Elem b = 0; b < f.order(); ++b) {
      for (Elem c = 0; c < f.order(); ++c) {
        if (irreducible_quadratic(f, b, c)) return {b, c};
      }
    }
    throw Error(Errc::kInvalidArgument, "no irreducible quadratic");  // unreachable
  }

  const ProjectiveSpace3& space() const noexcept { return space_; }
  const GaloisField& field() const noexcept { return space_.field(); }
  std::uint32_t q() const noexcept { return space_.q(); }
  Elem b() const noexcept { return b_; }
  Elem c() const noexcept { return c_; }

  /// Quadric points in ascending index order.
  std::span<const PointId> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool contains(PointId p) const noexcept { return member_.test(p.value); }
  const Bitset& membership() const noexcept { return member_; }

  bool on_form(const Vec4& x) const noexcept {
    const auto& f = field();
    const Elem lhs = f.mul(x[0], x[1]);
    const Elem rhs = f.add(f.add(f.mul(x[2], x[2]), f.mul(b_, f.mul(x[2], x[3]))),
                           f.mul(c_, f.mul(x[3], x[3])));
    return lhs == rhs;
  }

  std::vector<PointId> plane_section(PlaneId pi) const {
    std::vector<PointId> out;
    space_.for_each_point_on_plane(pi, [&](PointId p) {
      if (contains(p)) out.push_back(p);
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Polar plane of a quadric point, i.e. its tangent plane.
  PlaneId tangent_plane(PointId p) const {
    if (!contains(p)) throw Error(Errc::kNotOnQuadric, "tangent plane of a non-quadric point");
    const auto& f = field();
    const Vec4 x = space_.point(p);
    const Elem two_x2 = f.add(x[2], x[2]);
    const Elem two_x3 = f.add(x[3], x[3]);
    const Vec4 polar{x[1], x[0], f.neg(f.add(two_x2, f.mul(b_, x[3]))),
                     f.neg(f.add(f.mul(b_, x[2]), f.mul(c_, two_x3)))};
    return space_.plane_id(polar);
  }

  /// Number of quadric points on both planes (the common points of the two
  /// plane sections).
  std::size_t arc_intersection(PlaneId a, PlaneId b) const {
    if (a == b) throw Error(Errc::kInvalidPair, "planes must differ");
    const auto sa = plane_section(a);
    const auto sb = plane_section(b);
    if (sa.size() != q() + 1 || sb.size() != q() + 1) {
      throw Error(Errc::kInvalidPair, "both planes must be secant");
    }
    std::size_t common = 0;
    for (PointId p : sa) {
      if (space_.incident(p, b)) ++common;
    }
    return common;
  }

  /// Classifies the line pi1 ∩ pi2 by its number of quadric points.
  LineKind classify_common_line(PlaneId a, PlaneId b) const {
    if (a == b) throw Error(Errc::kInvalidPair, "planes must differ");
    const auto basis = RowReducer<4>(field()).nullspace({space_.plane(a), space_.plane(b)});
    std::size_t hits = on_form(basis[1]) ? 1 : 0;
    for (Elem t = 0; t < q(); ++t) {
      if (on_form(space_.combine(basis[0], t, basis[1]))) ++hits;
    }
    if (hits > 2) throw Error(Errc::kInvalidArgument, "line meets the quadric in > 2 points");
    return hits == 0 ? LineKind::kExternal : hits == 1 ? LineKind::kTangent : LineKind::kBisecant;
  }

  /// `quadric b <b> c <c>`
  std::string form_line() const {
    return "quadric b " + std::to_string(b_) + " c " + std::to_string(c_);
  }

 private:
  EllipticQuadric(ProjectiveSpace3 space, std::pair<Elem, Elem> form, bool pick_smallest)
      : space_(std::move(space)) {
    if (pick_smallest) form = smallest_form(space_.field());
    b_ = form.first;
    c_ = form.second;
    if (b_ >= q() || c_ >= q() || !irreducible_quadratic(field(), b_, c_)) {
      throw Error(Errc::kInvalidArgument, "t^2 + b t + c must be irreducible");
    }
    member_ = Bitset(space_.num_points());
    for (std::uint32_t i = 0; i < space_.num_points(); ++i) {
      if (on_form(space_.point(PointId{i}))) {
        member_.set(i);
        points_.push_back(PointId{i});
      }
    }
    const std::size_t expected = static_cast<std::size_t>(q()) * q() + 1;
    if (points_.size() != expected) {
      throw Error(Errc::kInvalidArgument, "quadric has " + std::to_string(points_.size()) +
                                              " points, expected q^2+1");
    }
  }

  ProjectiveSpace3 space_;
  Elem b_ = 0;
  Elem c_ = 0;
  std::vector<PointId> points_;
  Bitset member_;
};

}  // namespace satquad

#endif  // SATQUAD_QUADRIC_HPP
