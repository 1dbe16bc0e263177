#pragma once

#include <initializer_list>
#include <map>
#include <vector>

#include "ulm/module.hpp"
#include "ulm/ring.hpp"

namespace testing {

inline ulm::ModuleShape int_shape(std::uint64_t p, std::map<int, int> mult) {
  return ulm::ModuleShape(ulm::RingSpec::integer_local(p, 1), mult);
}

inline ulm::ModuleShape poly_shape(std::uint64_t q, std::map<int, int> mult) {
  return ulm::ModuleShape(ulm::RingSpec::polynomial_local(q, 1), mult);
}

// Coordinates given as raw codes, in factor order.
inline ulm::Element el(std::initializer_list<std::uint64_t> codes) {
  ulm::Element a;
  for (auto c : codes) a.coords.push_back(ulm::Scalar{c});
  return a;
}

inline ulm::ElementTuple tup(std::initializer_list<ulm::Element> xs) { return ulm::ElementTuple(xs); }

inline std::vector<ulm::Scalar> sc(std::initializer_list<std::uint64_t> codes) {
  std::vector<ulm::Scalar> out;
  for (auto c : codes) out.push_back(ulm::Scalar{c});
  return out;
}

}  // namespace testing
