#ifndef SATQUAD_SETFILE_HPP
#define SATQUAD_SETFILE_HPP

// Plain-text point-set files:
//
//   satset v1
//   q 9 p 3 h 2 modulus 2,2
//   quadric b 0 c 1
//   n 7
//   1 0 0 0
//   ...
//
// Blank lines and lines starting with '#' are ignored.

#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "satquad/error.hpp"
#include "satquad/field.hpp"
#include "satquad/projective.hpp"
#include "satquad/quadric.hpp"

namespace satquad {

struct SetFile {
  std::uint32_t p = 0;
  unsigned h = 0;
  std::vector<std::uint32_t> modulus;
  Elem b = 0;
  Elem c = 0;
  std::vector<Vec4> points;  // canonical, in file order

  std::uint64_t q() const {
    std::uint64_t v = 1;
    for (unsigned i = 0; i < h; ++i) v *= p;
    return v;
  }
  GaloisField field() const { return GaloisField(p, h, modulus); }
};

inline void write_set(std::ostream& out, const EllipticQuadric& quadric, std::span<const PointId> set) {
  out << "satset v1\n" << quadric.field().spec_line() << '\n' << quadric.form_line() << '\n';
  out << "n " << set.size() << '\n';
  for (PointId id : set) {
    const Vec4 v = quadric.space().point(id);
    out << v[0] << ' ' << v[1] << ' ' << v[2] << ' ' << v[3] << '\n';
  }
}

inline std::string set_to_string(const EllipticQuadric& quadric, std::span<const PointId> set) {
  std::ostringstream out;
  write_set(out, quadric, set);
  return out.str();
}

namespace detail {

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
  throw Error(Errc::kParse, "line " + std::to_string(line) + ": " + what);
}

inline bool next_line(std::istream& in, std::string& line, std::size_t& no) {
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

inline std::vector<std::uint32_t> parse_csv_ints(const std::string& s, std::size_t line) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(tok, &used);
      if (used != tok.size()) parse_fail(line, "bad integer '" + tok + "'");
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::logic_error&) {
      parse_fail(line, "bad integer '" + tok + "'");
    }
  }
  return out;
}

}  // namespace detail

/// Parses and validates a set file. Points must be canonical and distinct;
/// they need not lie on the quadric.
inline SetFile read_set(std::istream& in) {
  SetFile f;
  std::string line, word;
  std::size_t no = 0;

  if (!detail::next_line(in, line, no) || line != "satset v1") detail::parse_fail(no, "expected 'satset v1'");

  if (!detail::next_line(in, line, no)) detail::parse_fail(no, "missing field line");
  {
    std::istringstream ls(line);
    std::uint64_t q = 0;
    std::string kq, kp, kh, km, mod;
    if (!(ls >> kq >> q >> kp >> f.p >> kh >> f.h >> km >> mod) || kq != "q" || kp != "p" || kh != "h" ||
        km != "modulus") {
      detail::parse_fail(no, "expected 'q <q> p <p> h <h> modulus <c0,...>'");
    }
    f.modulus = detail::parse_csv_ints(mod, no);
    if (!is_prime(f.p) || f.h == 0 || f.h > GaloisField::kMaxDegree) detail::parse_fail(no, "bad field parameters");
    if (f.q() != q) detail::parse_fail(no, "q does not equal p^h");
    (void)f.field();  // rejects a reducible modulus
  }

  if (!detail::next_line(in, line, no)) detail::parse_fail(no, "missing quadric line");
  {
    std::istringstream ls(line);
    std::string kq, kb, kc;
    if (!(ls >> kq >> kb >> f.b >> kc >> f.c) || kq != "quadric" || kb != "b" || kc != "c") {
      detail::parse_fail(no, "expected 'quadric b <b> c <c>'");
    }
  }

  std::size_t n = 0;
  if (!detail::next_line(in, line, no)) detail::parse_fail(no, "missing size line");
  {
    std::istringstream ls(line);
    if (!(ls >> word >> n) || word != "n") detail::parse_fail(no, "expected 'n <n>'");
  }

  const std::uint64_t q = f.q();
  std::set<Vec4> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (!detail::next_line(in, line, no)) detail::parse_fail(no, "expected " + std::to_string(n) + " points");
    std::istringstream ls(line);
    Vec4 v{};
    for (auto& x : v) {
      long long t = -1;
      if (!(ls >> t) || t < 0 || static_cast<std::uint64_t>(t) >= q) detail::parse_fail(no, "bad coordinate");
      x = static_cast<Elem>(t);
    }
    if (ls >> word) detail::parse_fail(no, "trailing data on point line");
    std::size_t lead = 0;
    while (lead < 4 && v[lead] == 0) ++lead;
    if (lead == 4 || v[lead] != 1) detail::parse_fail(no, "point not in canonical form");
    if (!seen.insert(v).second) throw Error(Errc::kRepeatedPoint, "line " + std::to_string(no) + ": repeated point");
    f.points.push_back(v);
  }
  if (detail::next_line(in, line, no)) detail::parse_fail(no, "unexpected data after the last point");
  return f;
}

inline SetFile read_set_string(const std::string& text) {
  std::istringstream in(text);
  return read_set(in);
}

}  // namespace satquad

#endif  // SATQUAD_SETFILE_HPP
