#ifndef EFBOUND_TESTS_FIXTURES_HPP
#define EFBOUND_TESTS_FIXTURES_HPP

#include "efbound/encodings.hpp"
#include "efbound/polyhedra.hpp"

namespace fixtures {

using namespace efbound;

// [0,1] in 1-D: -x <= 0, x <= 1; points {0, 1}.
inline VRep segment_v() { return VRep(1, RationalMatrix::from_ints({{0}, {1}}), RationalMatrix(0, 1)); }
inline HRep segment_h() { return HRep(1, RationalMatrix::from_ints({{-1}, {1}}), {0, 1}); }

// [0,1]^d with rows -x_j <= 0 then x_j <= 1 per coordinate, vertices by bitmask.
inline HRep box_h(std::size_t d) {
  RationalMatrix a(2 * d, d);
  RationalVector b;
  for (std::size_t j = 0; j < d; ++j) {
    a(2 * j, j) = -1;
    a(2 * j + 1, j) = 1;
    b.push_back(0);
    b.push_back(1);
  }
  return HRep(d, std::move(a), std::move(b));
}

inline VRep box_v(std::size_t d) {
  RationalMatrix pts(std::size_t{1} << d, d);
  for (std::size_t s = 0; s < (std::size_t{1} << d); ++s)
    for (std::size_t j = 0; j < d; ++j) pts(s, j) = (s >> j) & 1U;
  return VRep(d, std::move(pts), RationalMatrix(0, d));
}

// The unit square written against two extra redundant rows, so its slack
// matrix is not square.
inline HRep square_with_redundant_rows() {
  HRep h = box_h(2);
  RationalMatrix extra = RationalMatrix::from_ints({{1, 1}, {-1, -1}});
  return HRep(2, h.A.vconcat(extra), {0, 1, 0, 1, 2, 0});
}

}  // namespace fixtures

#endif  // EFBOUND_TESTS_FIXTURES_HPP
