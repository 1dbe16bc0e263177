#include "ulm/oracle.hpp"

#include <algorithm>

namespace ulm {

namespace {

std::vector<Element> annihilated_by(const ModuleShape& shape, int alpha) {
  const Scalar order = shape.ring().uniformizer_power(alpha);
  std::vector<Element> out;
  for (std::uint64_t idx = 0; idx < shape.order(); ++idx) {
    Element x = shape.element_at(idx);
    if (alpha >= shape.exponent() || shape.is_zero(shape.scale(order, x))) out.push_back(std::move(x));
  }
  return out;
}

// Image index of every element of A under phi. With f the lowest nonzero
// coordinate of x (value c), phi(x) = phi(x - c e_f) + c phi(e_f), and x - c e_f
// has a smaller index. Sums are taken directly on element indices.
std::vector<std::uint64_t> element_images(const HomTable& phi) {
  const ModuleShape& A = phi.source();
  const ModuleShape& B = phi.target();
  const RingSpec& ring = B.ring();
  std::vector<std::uint64_t> stride(A.factor_count() + 1, 1);
  std::vector<std::vector<std::uint64_t>> multiples(A.factor_count());
  for (std::size_t f = 0; f < A.factor_count(); ++f) {
    const std::uint64_t radix = A.ring().power_of_q(A.factor_exponent(f));
    stride[f + 1] = stride[f] * radix;
    for (std::uint64_t c = 0; c < radix; ++c) multiples[f].push_back(B.index_of(B.scale(Scalar{c}, phi.images()[f])));
  }
  std::vector<std::uint64_t> b_radix;
  for (const Factor& g : B.factors()) b_radix.push_back(ring.power_of_q(g.alpha));
  auto add_indices = [&](std::uint64_t x, std::uint64_t y) {
    std::uint64_t out = 0, scale = 1;
    for (std::size_t g = 0; g < b_radix.size(); ++g) {
      const Scalar sum = ring.add(Scalar{x % b_radix[g]}, Scalar{y % b_radix[g]});
      out += ring.reduce(sum, B.factor_exponent(g)).code * scale;
      scale *= b_radix[g];
      x /= b_radix[g];
      y /= b_radix[g];
    }
    return out;
  };
  std::vector<std::uint64_t> out(A.order(), 0);
  for (std::uint64_t idx = 1; idx < out.size(); ++idx) {
    std::size_t f = 0;
    while (idx % stride[f + 1] == 0) ++f;
    const std::uint64_t c = idx % stride[f + 1] / stride[f];
    out[idx] = add_indices(out[idx - c * stride[f]], multiples[f][c]);
  }
  return out;
}

bool is_permutation(std::vector<std::uint64_t> images) {
  std::sort(images.begin(), images.end());
  return std::adjacent_find(images.begin(), images.end()) == images.end();
}

// One pass over all generator-image choices. Keeps every map, or only the
// bijective ones.
EndoSet enumerate_maps(const ModuleShape& shape, std::uint64_t bound, bool automorphisms_only) {
  check_bound("endomorphism enumeration", shape.order(), bound);
  std::vector<std::vector<Element>> choices;
  for (const Factor& f : shape.factors()) choices.push_back(annihilated_by(shape, f.alpha));
  std::uint64_t total = 1;
  for (const auto& c : choices) total = total > UINT64_MAX / c.size() ? UINT64_MAX : total * c.size();
  check_bound("endomorphism enumeration", total, bound);

  EndoSet out{shape, {}, total, 0};
  if (!automorphisms_only) out.maps.reserve(total);
  std::vector<std::size_t> pick(choices.size(), 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<Element> images;
    for (std::size_t f = 0; f < choices.size(); ++f) images.push_back(choices[f][pick[f]]);
    HomTable phi(shape, shape, std::move(images));
    const bool bijective = is_permutation(element_images(phi));
    out.automorphism_count += bijective ? 1 : 0;
    if (bijective || !automorphisms_only) out.maps.push_back(std::move(phi));
    for (std::size_t f = 0; f < pick.size() && ++pick[f] == choices[f].size(); ++f) pick[f] = 0;
  }
  return out;
}

std::uint64_t tuple_image(const std::vector<std::uint64_t>& images, std::uint64_t tuple, int n, std::uint64_t base) {
  std::uint64_t out = 0, scale = 1;
  for (int i = 0; i < n; ++i) {
    out += images[tuple % base] * scale;
    tuple /= base;
    scale *= base;
  }
  return out;
}

}  // namespace

std::uint64_t endomorphism_count(const ModuleShape& shape) {
  std::uint64_t total = 1;
  for (const Factor& f : shape.factors()) {
    std::uint64_t choices = annihilated_by(shape, f.alpha).size();
    total = total > UINT64_MAX / choices ? UINT64_MAX : total * choices;
  }
  return total;
}

EndoSet enumerate_endomorphisms(const ModuleShape& shape, std::uint64_t bound) {
  return enumerate_maps(shape, bound, false);
}

EndoSet enumerate_automorphisms(const ModuleShape& shape, std::uint64_t bound) {
  return enumerate_maps(shape, bound, true);
}

EndoSet automorphisms_of(const EndoSet& endomorphisms) {
  EndoSet out{endomorphisms.shape, {}, endomorphisms.endomorphism_count, 0};
  for (const HomTable& phi : endomorphisms.maps)
    if (is_permutation(element_images(phi))) out.maps.push_back(phi);
  out.automorphism_count = out.maps.size();
  return out;
}

OrbitPartition brute_orbits(const ModuleShape& shape, int n, std::uint64_t bound) {
  return brute_orbits(enumerate_automorphisms(shape, bound), n, bound);
}

OrbitPartition brute_orbits(const EndoSet& automorphisms, int n, std::uint64_t bound) {
  if (n < 1) throw InvalidInput("tuple length must be >= 1");
  const ModuleShape& shape = automorphisms.shape;
  const std::uint64_t count = tuple_count(shape, n);
  check_bound("brute orbit enumeration", count, bound);
  std::vector<std::vector<std::uint64_t>> images;
  for (const HomTable& g : automorphisms.maps) images.push_back(element_images(g));

  constexpr std::uint32_t kUnset = UINT32_MAX;
  OrbitPartition out{std::vector<std::uint32_t>(count, kUnset), {}};
  for (std::uint64_t t = 0; t < count; ++t) {
    if (out.orbit_of[t] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(out.orbits.size());
    std::vector<std::uint64_t> orbit;
    for (const auto& img : images) {
      std::uint64_t u = tuple_image(img, t, n, shape.order());
      if (out.orbit_of[u] == kUnset) {
        out.orbit_of[u] = id;
        orbit.push_back(u);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.orbits.push_back(std::move(orbit));
  }
  return out;
}

bool brute_degenerates(const ModuleShape& shape, std::span<const Element> a, std::span<const Element> b,
                       std::uint64_t bound) {
  return brute_degenerates(enumerate_endomorphisms(shape, bound), a, b);
}

bool brute_degenerates(const EndoSet& endomorphisms, std::span<const Element> a, std::span<const Element> b) {
  if (a.size() != b.size()) throw InvalidInput("tuple length mismatch");
  endomorphisms.shape.validate(a);
  endomorphisms.shape.validate(b);
  return std::any_of(endomorphisms.maps.begin(), endomorphisms.maps.end(), [&](const HomTable& phi) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (phi.apply(a[i]) != b[i]) return false;
    return true;
  });
}

ReachabilityTable::ReachabilityTable(const EndoSet& endomorphisms, int n, std::uint64_t bound) {
  if (n < 1) throw InvalidInput("tuple length must be >= 1");
  const ModuleShape& shape = endomorphisms.shape;
  count_ = ulm::tuple_count(shape, n);
  check_bound("reachability table", count_, bound);
  std::vector<std::vector<std::uint64_t>> element_maps;
  for (const HomTable& phi : endomorphisms.maps) element_maps.push_back(element_images(phi));
  images_.resize(count_);
  for (std::uint64_t t = 0; t < count_; ++t) {
    auto& row = images_[t];
    for (const auto& img : element_maps) row.push_back(tuple_image(img, t, n, shape.order()));
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
}

bool ReachabilityTable::reaches(std::uint64_t from, std::uint64_t to) const {
  const auto& row = images_.at(from);
  return std::binary_search(row.begin(), row.end(), to);
}

}  // namespace ulm
