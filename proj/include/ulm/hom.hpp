#pragma once

#include <span>
#include <vector>

#include "ulm/module.hpp"

namespace ulm {

/// A homomorphism A -> B given by the images of the canonical generators
/// e_f of A (one per cyclic factor, in factor order).
class HomTable {
 public:
  /// Throws InvalidInput unless every image lies in B and p^alpha_f kills image f.
  /// Both shapes must share one ring backend and residue field.
  HomTable(ModuleShape source, ModuleShape target, std::vector<Element> images);

  const ModuleShape& source() const { return source_; }
  const ModuleShape& target() const { return target_; }
  const std::vector<Element>& images() const { return images_; }
  /// Source equals target and the map is bijective.
  bool is_automorphism() const { return is_automorphism_; }

  Element apply(const Element& x) const;
  ElementTuple apply(std::span<const Element> tuple) const;

  friend bool operator==(const HomTable& a, const HomTable& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.images_ == b.images_;
  }

 private:
  ModuleShape source_;
  ModuleShape target_;
  std::vector<Element> images_;
  bool is_automorphism_ = false;
};

HomTable identity_table(const ModuleShape& shape);

/// Injective on the socle and |A| = |B|; for finite modules this is bijectivity.
bool is_bijective(const HomTable& phi);

/// Exhaustive check that phi(x + y) = phi(x) + phi(y) and phi(r x) = r phi(x)
/// on generator pairs and residue-field scalars. Used to replay witnesses.
bool verify_homomorphism(const HomTable& phi);

}  // namespace ulm
