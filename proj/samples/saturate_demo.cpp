// Builds a 2-saturating set for a small q and prints it next to Bound A.

#include <cstdlib>
#include <iostream>

#include "satquad/satquad.hpp"

int main(int argc, char** argv) {
  const std::uint64_t q = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 9;
  try {
    const auto quadric = satquad::EllipticQuadric::of_order(q);
    const auto result = satquad::run(quadric, {});
    const auto bound = satquad::bounds::bound_a(q);
    std::cout << "q=" << q << "  |S|=" << result.set.size() << "  n^A=" << bound.n_a << "\n\n";
    satquad::write_set(std::cout, quadric, result.set);

    const auto code = satquad::parity_check_from_set(quadric.space(), result.set);
    std::cout << "\nparity-check matrix\n";
    satquad::dump_matrix(std::cout, code);
  } catch (const satquad::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
}
