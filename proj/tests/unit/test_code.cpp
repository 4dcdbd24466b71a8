#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "satquad/code.hpp"
#include "satquad/saturator.hpp"

using namespace satquad;

namespace {

GreedyConfig one_thread() {
  GreedyConfig cfg;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST_CASE("parity-check construction") {
  const auto quad = EllipticQuadric::of_order(3);
  const auto res = run(quad, one_thread());
  const auto code = parity_check_from_set(quad.space(), res.set);
  CHECK(code.n() == res.set.size());
  CHECK(code.q() == 3);
  CHECK(RowReducer<4>(code.field).rank(code.columns) == 4);

  const GaloisField f = GaloisField::of_order(3);
  const std::vector<Vec4> coplanar{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 1, 1, 0}};
  try {
    (void)parity_check_from_set(f, coplanar);
    FAIL("expected degenerate-set");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kDegenerateSet);
  }
  const std::vector<Vec4> repeated{{1, 0, 0, 0}, {2, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}};
  CHECK_THROWS_AS(parity_check_from_set(f, repeated), Error);
  CHECK_THROWS_AS(parity_check_from_set(f, std::vector<Vec4>{{1, 0, 0, 0}}), Error);
}

TEST_CASE("matrix dump") {
  const GaloisField f = GaloisField::of_order(5);
  const std::vector<Vec4> cols{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 2, 3, 4}};
  std::ostringstream out;
  dump_matrix(out, parity_check_from_set(f, cols));
  CHECK(out.str() == "1 0 0 0 1\n0 1 0 0 2\n0 0 1 0 3\n0 0 0 1 4\n");
}

TEST_CASE("minimum distance") {
  for (std::uint64_t q : {3, 4, 5, 7}) {
    const auto quad = EllipticQuadric::of_order(q);
    const auto res = run(quad, one_thread());
    const auto code = parity_check_from_set(quad.space(), res.set);
    const auto d = min_distance(code);
    CHECK(d.d >= 4);
    if (q == 5) CHECK(d.d == 4);

    // Add a point on the line through two set points.
    auto pts = res.set;
    for (PointId p : quad.space().points_on_line(pts[0], pts[1])) {
      if (p != pts[0] && p != pts[1]) {
        pts.push_back(p);
        break;
      }
    }
    const auto bad = min_distance(parity_check_from_set(quad.space(), pts));
    CHECK(bad.d == 3);
  }
  const auto quad = EllipticQuadric::of_order(17);
  const auto code = parity_check_from_set(quad.space(), std::vector<PointId>(quad.points().begin(), quad.points().begin() + 5));
  CHECK_THROWS_AS(min_distance(code), Error);
}

TEST_CASE("cap subsets give d >= 4, exhaustive over small sets") {
  std::mt19937 rng(2);
  for (std::uint64_t q : {2, 3, 4, 5, 7}) {
    const auto quad = EllipticQuadric::of_order(q);
    for (int t = 0; t < 10; ++t) {
      std::vector<PointId> pts(quad.points().begin(), quad.points().end());
      std::shuffle(pts.begin(), pts.end(), rng);
      pts.resize(std::min<std::size_t>(pts.size(), 5 + static_cast<std::size_t>(t)));
      try {
        const auto code = parity_check_from_set(quad.space(), pts);
        REQUIRE(min_distance(code).d >= 4);
      } catch (const Error& e) {
        REQUIRE(e.code() == Errc::kDegenerateSet);  // a coplanar sample
      }
    }
  }
}

TEST_CASE("covering radius agrees with geometric saturation") {
  std::mt19937 rng(9);
  for (std::uint64_t q : {2, 3, 4, 5, 7}) {
    const auto quad = EllipticQuadric::of_order(q);
    const auto res = run(quad, one_thread());
    const auto code = parity_check_from_set(quad.space(), res.set);
    CHECK(covering_radius_le3(code));
    CHECK(covering_radius(code) <= 3);

    int compared = 0;
    for (int t = 0; t < 40 && compared < 20; ++t) {
      std::vector<PointId> pts(quad.points().begin(), quad.points().end());
      std::shuffle(pts.begin(), pts.end(), rng);
      pts.resize(std::min<std::size_t>(pts.size(), 4 + static_cast<std::size_t>(t) % (q + 4)));
      try {
        const auto c = parity_check_from_set(quad.space(), pts);
        REQUIRE(covering_radius_le3(c) == verify_2saturating(quad, pts).saturating);
        ++compared;
      } catch (const Error& e) {
        REQUIRE(e.code() == Errc::kDegenerateSet);
      }
    }
    CHECK(compared >= 10);
  }
}

TEST_CASE("exact covering radius and syndrome levels") {
  const auto quad = EllipticQuadric::of_order(5);
  const auto res = run(quad, one_thread());
  const auto code = parity_check_from_set(quad.space(), res.set);
  const auto levels = syndrome_level_sizes(code);
  REQUIRE(levels.size() == 4);  // R = 3
  CHECK(levels[0] == 1);
  CHECK(levels[1] == code.n() * 4);
  std::uint64_t total = 0;
  for (auto v : levels) total += v;
  CHECK(total == 625);

  // Four independent columns: every syndrome needs up to four of them.
  const GaloisField f = GaloisField::of_order(3);
  const std::vector<Vec4> basis{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  const auto c4 = parity_check_from_set(f, basis);
  CHECK(covering_radius(c4) == 4);
  CHECK_FALSE(covering_radius_le3(c4));
}
