#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ulm/module.hpp"
#include "ulm/ring.hpp"

namespace ulm {

using CoeffVector = std::vector<Scalar>;

/// A submodule of (R/p^K)^n held in Howell normal form:
///  - rows are nonzero and in echelon form with strictly increasing pivot columns;
///  - each pivot is exactly p^v with v < K;
///  - entries above a pivot p^v are reduced to residues mod p^v;
///  - Howell property: the rows whose first j entries vanish span every vector
///    of the submodule whose first j entries vanish.
/// Two forms are equal iff they span the same submodule.
class SubmoduleForm {
 public:
  SubmoduleForm(RingSpec ring, std::size_t n) : ring_(std::move(ring)), n_(n) {}

  /// The whole of (R/p^K)^n.
  static SubmoduleForm full(const RingSpec& ring, std::size_t n);

  const RingSpec& ring() const { return ring_; }
  std::size_t dimension() const { return n_; }
  const std::vector<CoeffVector>& rows() const { return rows_; }
  bool is_zero() const { return rows_.empty(); }

  struct Pivot {
    std::size_t column;
    int valuation;
  };
  Pivot pivot(std::size_t row) const;

  friend bool operator==(const SubmoduleForm& a, const SubmoduleForm& b) {
    return a.n_ == b.n_ && a.ring_.precision() == b.ring_.precision() && a.rows_ == b.rows_;
  }

 private:
  friend SubmoduleForm howell_form(const RingSpec& ring, std::size_t n, std::span<const CoeffVector> rows);
  RingSpec ring_;
  std::size_t n_;
  std::vector<CoeffVector> rows_;
};

SubmoduleForm howell_form(const RingSpec& ring, std::size_t n, std::span<const CoeffVector> rows);
bool membership(const SubmoduleForm& form, const CoeffVector& v);
/// span(inner) is contained in span(outer).
bool includes(const SubmoduleForm& outer, const SubmoduleForm& inner);
/// e with |span| = q^e.
int log_cardinality(const SubmoduleForm& form);

enum class TableStrategy {
  Auto,        // Exhaustive when q^(nK) <= kExhaustiveTableLimit, otherwise Kernel
  Exhaustive,  // enumerate every coefficient vector
  Kernel,      // Howell form of the map r -> sum r_i a_i into A/p^h A
};

inline constexpr std::uint64_t kExhaustiveTableLimit = std::uint64_t{1} << 20;

/// M_h(a) = { r mod p^K : height(sum r_i a_i) >= h } for h = 0..K.
struct HeightTable {
  std::vector<SubmoduleForm> levels;

  int precision() const { return static_cast<int>(levels.size()) - 1; }
  friend bool operator==(const HeightTable&, const HeightTable&) = default;
};

/// Table at the shape's exponent.
HeightTable height_table(const ModuleShape& shape, std::span<const Element> tuple,
                         TableStrategy strategy = TableStrategy::Auto);
/// Table at a larger working precision (needed to compare tuples in two modules).
HeightTable height_table(const ModuleShape& shape, std::span<const Element> tuple, int precision,
                         TableStrategy strategy = TableStrategy::Auto);

/// Flat canonical key of a table, usable for ordering and hashing.
std::vector<std::uint64_t> fingerprint(const HeightTable& table);

}  // namespace ulm
