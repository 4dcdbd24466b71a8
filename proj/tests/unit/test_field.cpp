#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "satquad/field.hpp"

using satquad::Elem;
using satquad::Errc;
using satquad::Error;
using satquad::GaloisField;

namespace {

bool throws_code(auto&& fn, Errc code) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("smallest moduli") {
  CHECK(GaloisField(2, 2).modulus() == std::vector<std::uint32_t>{1, 1});  // x^2+x+1
  CHECK(GaloisField(3, 2).modulus() == std::vector<std::uint32_t>{1, 0});  // x^2+1
  CHECK(GaloisField(2, 3).modulus() == std::vector<std::uint32_t>{1, 1, 0});  // x^3+x+1
  CHECK(GaloisField(5, 2).modulus() == std::vector<std::uint32_t>{2, 0});  // x^2+2
  CHECK(GaloisField(7, 1).modulus() == std::vector<std::uint32_t>{0});
  CHECK(GaloisField(2, 2).spec_line() == "q 4 p 2 h 2 modulus 1,1");
}

TEST_CASE("modulus is the smallest irreducible by brute force") {
  for (auto [p, h] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
    const GaloisField f(p, h);
    std::uint64_t count = 1;
    for (unsigned i = 0; i < h; ++i) count *= p;
    // A monic f of degree h is irreducible iff it has no root in any
    // extension of degree <= h/2; for h <= 3 that is just "no root in GF(p)".
    auto code_of = [&](const std::vector<std::uint32_t>& m) {
      std::uint64_t c = 0;
      for (unsigned i = h; i-- > 0;) c = c * p + m[i];
      return c;
    };
    const std::uint64_t chosen = code_of(f.modulus());
    for (std::uint64_t c = 0; c < chosen; ++c) {
      std::vector<std::uint32_t> m(h);
      std::uint64_t x = c;
      for (unsigned i = 0; i < h; ++i) {
        m[i] = static_cast<std::uint32_t>(x % p);
        x /= p;
      }
      CHECK_THROWS(GaloisField(p, h, m));
    }
    (void)count;
  }
}

TEST_CASE("small mul and inv values") {
  const GaloisField f4(2, 2), f7(7, 1);
  CHECK(f4.mul(2, 2) == 3);
  CHECK(f7.mul(3, 5) == 1);
  CHECK(f7.inv(3) == 5);
  CHECK(f4.inv(2) == 3);
  for (Elem a = 0; a < 4; ++a) CHECK(f4.mul(a, 1) == a);
  CHECK(f7.inv(1) == 1);
}

TEST_CASE("errors") {
  CHECK(throws_code([] { GaloisField(4, 1); }, Errc::kNonPrime));
  CHECK(throws_code([] { GaloisField(2, 8); }, Errc::kOutOfRange));
  CHECK(throws_code([] { GaloisField::of_order(256); }, Errc::kOutOfRange));
  CHECK(throws_code([] { GaloisField(2, 0); }, Errc::kOutOfRange));
  CHECK(throws_code([] { GaloisField::of_order(6); }, Errc::kNonPrime));
  CHECK(throws_code([] { GaloisField::of_order(1); }, Errc::kNonPrime));
  CHECK(throws_code([] { (void)GaloisField(5, 1).inv(0); }, Errc::kDivisionByZero));
  CHECK(throws_code([] { GaloisField(2, 2, {0, 1}); }, Errc::kInvalidArgument));  // x^2+x reducible
}

TEST_CASE("table arithmetic matches polynomial arithmetic") {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32}) {
    const GaloisField f = GaloisField::of_order(q);
    const oracle::PolyField ref{f.characteristic(), f.degree(), f.modulus()};
    for (Elem a = 0; a < q; ++a) {
      for (Elem b = 0; b < q; ++b) {
        REQUIRE(f.mul(a, b) == ref.mul(a, b));
        REQUIRE(f.mul(a, b) == f.mul_poly(a, b));
        REQUIRE(f.add(a, b) == ref.add(a, b));
      }
    }
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(7);
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 128, 243, 2187}) {
    const GaloisField f = GaloisField::of_order(q);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(q - 1));
    for (int i = 0; i < 10000; ++i) {
      const Elem a = pick(rng), b = pick(rng), c = pick(rng);
      REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
      REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      REQUIRE(f.add(a, f.neg(a)) == 0);
      REQUIRE(f.sub(f.add(a, b), b) == a);
      if (a != 0) {
        REQUIRE(f.mul(a, f.inv(a)) == 1);
        REQUIRE(f.div(f.mul(a, b), a) == b);
      }
    }
  }
}

TEST_CASE("multiplicative group is cyclic of order q-1") {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 16, 49, 64, 81, 101, 128, 243}) {
    const GaloisField f = GaloisField::of_order(q);
    for (Elem a = 1; a < q; ++a) REQUIRE(f.pow(a, q - 1) == 1);
    // The generator has full order.
    const Elem g = f.primitive_element();
    Elem x = 1;
    for (std::uint64_t e = 1; e < q - 1; ++e) {
      x = f.mul(x, g);
      REQUIRE(x != 1);
    }
  }
}

TEST_CASE("pow agrees with repeated multiplication") {
  const GaloisField f = GaloisField::of_order(27);
  for (Elem a = 0; a < 27; ++a) {
    Elem x = 1;
    for (std::uint64_t e = 0; e < 60; ++e) {
      REQUIRE(f.pow(a, e) == x);
      x = f.mul(x, a);
    }
  }
}
