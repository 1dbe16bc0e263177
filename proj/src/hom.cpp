#include "ulm/hom.hpp"

#include "ulm/errors.hpp"

namespace ulm {

HomTable::HomTable(ModuleShape source, ModuleShape target, std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (!source_.ring().same_base(target_.ring()))
    throw InvalidInput("homomorphism between modules over different rings");
  if (images_.size() != source_.factor_count())
    throw InvalidInput("homomorphism table needs one image per cyclic factor");
  for (std::size_t f = 0; f < images_.size(); ++f) {
    target_.validate(images_[f]);
    // p^alpha kills all of B once alpha reaches B's exponent.
    const int alpha = source_.factor_exponent(f);
    if (alpha < target_.exponent() && !target_.is_zero(target_.scale(target_.ring().uniformizer_power(alpha), images_[f])))
      throw InvalidInput("image of generator " + std::to_string(f) + " is not killed by p^" +
                         std::to_string(source_.factor_exponent(f)));
  }
  is_automorphism_ = source_ == target_ && is_bijective(*this);
}

Element HomTable::apply(const Element& x) const {
  source_.validate(x);
  Element out = target_.zero();
  for (std::size_t f = 0; f < images_.size(); ++f)
    if (x.coords[f].code != 0) out = target_.add(out, target_.scale(x.coords[f], images_[f]));
  return out;
}

ElementTuple HomTable::apply(std::span<const Element> tuple) const {
  ElementTuple out;
  out.reserve(tuple.size());
  for (const auto& x : tuple) out.push_back(apply(x));
  return out;
}

HomTable identity_table(const ModuleShape& shape) {
  std::vector<Element> images;
  for (std::size_t f = 0; f < shape.factor_count(); ++f) images.push_back(shape.generator(f));
  return HomTable(shape, shape, std::move(images));
}

bool is_bijective(const HomTable& phi) {
  if (phi.source().log_order() != phi.target().log_order()) return false;
  for (const Element& s : phi.source().socle())
    if (!phi.source().is_zero(s) && phi.target().is_zero(phi.apply(s))) return false;
  return true;
}

bool verify_homomorphism(const HomTable& phi) {
  const ModuleShape& A = phi.source();
  const ModuleShape& B = phi.target();
  const int K = std::max(A.exponent(), B.exponent());
  const RingSpec ring = A.ring().with_precision(K);
  // Well-definedness: the relation p^alpha e_f = 0 must be respected.
  for (std::size_t f = 0; f < A.factor_count(); ++f)
    if (!B.is_zero(B.scale(ring.uniformizer_power(A.factor_exponent(f)), phi.images()[f]))) return false;
  // Additivity and linearity on generator pairs with unit-digit scalars.
  for (std::size_t f = 0; f < A.factor_count(); ++f) {
    for (std::size_t g = 0; g < A.factor_count(); ++g) {
      for (std::uint64_t c = 0; c < ring.residue_field_size(); ++c) {
        Element x = A.add(A.generator(f), A.scale(Scalar{c}, A.generator(g)));
        Element lhs = phi.apply(x);
        Element rhs = B.add(phi.images()[f], B.scale(Scalar{c}, phi.images()[g]));
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

}  // namespace ulm
