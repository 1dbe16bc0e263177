#include "ulm/linear.hpp"

#include <algorithm>

#include "ulm/errors.hpp"

namespace ulm {

namespace {

bool is_zero_row(const CoeffVector& row) {
  return std::all_of(row.begin(), row.end(), [](Scalar s) { return s.code == 0; });
}

// row -= c * pivot
void subtract_multiple(const RingSpec& ring, CoeffVector& row, Scalar c, const CoeffVector& pivot) {
  if (c.code == 0) return;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (pivot[j].code == 0) continue;
    row[j] = ring.sub(row[j], ring.mul(c, pivot[j]));
  }
}

CoeffVector scaled(const RingSpec& ring, Scalar c, const CoeffVector& row) {
  CoeffVector out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) out[j] = ring.mul(c, row[j]);
  return out;
}

}  // namespace

SubmoduleForm SubmoduleForm::full(const RingSpec& ring, std::size_t n) {
  std::vector<CoeffVector> id(n, CoeffVector(n));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = ring.uniformizer_power(0);
  return howell_form(ring, n, id);
}

SubmoduleForm::Pivot SubmoduleForm::pivot(std::size_t row) const {
  const CoeffVector& r = rows_.at(row);
  for (std::size_t j = 0; j < r.size(); ++j)
    if (r[j].code != 0) return {j, ring_.valuation(r[j]).value()};
  throw std::logic_error("zero row in Howell form");
}

SubmoduleForm howell_form(const RingSpec& ring, std::size_t n, std::span<const CoeffVector> rows) {
  const int K = ring.precision();
  std::vector<CoeffVector> work;
  for (const auto& r : rows) {
    if (r.size() != n) throw InvalidInput("howell_form: row length mismatch");
    CoeffVector reduced(n);
    for (std::size_t j = 0; j < n; ++j) reduced[j] = Scalar{r[j].code % ring.size()};
    if (!is_zero_row(reduced)) work.push_back(std::move(reduced));
  }

  SubmoduleForm form(ring, n);
  for (std::size_t col = 0; col < n && !work.empty(); ++col) {
    // Every row in work vanishes on columns < col.
    std::size_t best = work.size();
    Height best_val = Height::infinity();
    for (std::size_t i = 0; i < work.size(); ++i) {
      Height v = ring.valuation(work[i][col]);
      if (v < best_val) {
        best_val = v;
        best = i;
      }
    }
    if (best == work.size()) continue;
    CoeffVector pivot = std::move(work[best]);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));

    const int v = best_val.value();
    pivot = scaled(ring, ring.unit_inverse(ring.shift_down(pivot[col], v)), pivot);
    for (auto& w : work)
      if (w[col].code != 0) subtract_multiple(ring, w, ring.shift_down(w[col], v), pivot);
    if (v > 0) {
      CoeffVector annihilated = scaled(ring, ring.uniformizer_power(K - v), pivot);
      work.push_back(std::move(annihilated));
    }
    std::erase_if(work, is_zero_row);
    form.rows_.push_back(std::move(pivot));
  }

  // Reduce entries above each pivot to residues mod p^v.
  for (std::size_t i = 0; i < form.rows_.size(); ++i) {
    auto [col, v] = form.pivot(i);
    for (std::size_t j = 0; j < i; ++j) {
      Scalar c = ring.shift_down(form.rows_[j][col], v);
      subtract_multiple(ring, form.rows_[j], c, form.rows_[i]);
    }
  }
  return form;
}

bool membership(const SubmoduleForm& form, const CoeffVector& v) {
  if (v.size() != form.dimension()) throw InvalidInput("membership: dimension mismatch");
  const RingSpec& ring = form.ring();
  CoeffVector w(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) w[j] = Scalar{v[j].code % ring.size()};
  std::size_t next_col = 0;
  for (std::size_t i = 0; i < form.rows().size(); ++i) {
    auto [col, val] = form.pivot(i);
    for (; next_col < col; ++next_col)
      if (w[next_col].code != 0) return false;
    if (w[col].code != 0) {
      if (ring.valuation(w[col]).value() < val) return false;
      subtract_multiple(ring, w, ring.shift_down(w[col], val), form.rows()[i]);
    }
    next_col = col + 1;
  }
  return is_zero_row(w);
}

bool includes(const SubmoduleForm& outer, const SubmoduleForm& inner) {
  if (outer.dimension() != inner.dimension()) throw InvalidInput("includes: dimension mismatch");
  return std::all_of(inner.rows().begin(), inner.rows().end(),
                     [&](const CoeffVector& r) { return membership(outer, r); });
}

int log_cardinality(const SubmoduleForm& form) {
  int e = 0;
  for (std::size_t i = 0; i < form.rows().size(); ++i) e += form.ring().precision() - form.pivot(i).valuation;
  return e;
}

namespace {

HeightTable exhaustive_table(const ModuleShape& shape, std::span<const Element> tuple, const RingSpec& ring) {
  const int K = ring.precision();
  const std::size_t n = tuple.size();
  HeightTable table;
  for (int h = 0; h <= K; ++h) table.levels.emplace_back(ring, n);
  std::vector<std::vector<CoeffVector>> gens(K + 1);

  const std::uint64_t count = saturating_pow(ring.size(), n);
  CoeffVector r(n);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (auto& c : r) {
      c = Scalar{rest % ring.size()};
      rest /= ring.size();
    }
    Height ht = height(shape, linear_combination(shape, tuple, r));
    for (int h = 0; h <= K && Height(h) <= ht; ++h) {
      if (membership(table.levels[h], r)) continue;
      gens[h].push_back(r);
      table.levels[h] = howell_form(ring, n, gens[h]);
    }
  }
  return table;
}

HeightTable kernel_table(const ModuleShape& shape, std::span<const Element> tuple, const RingSpec& ring) {
  const int K = ring.precision();
  const std::size_t n = tuple.size();
  HeightTable table;
  for (int h = 0; h <= K; ++h) {
    // r is in M_h iff, for each factor f, sum_j r_j a_j[f] = 0 mod p^min(h, alpha_f).
    std::vector<std::size_t> constrained;
    std::vector<int> target;
    for (std::size_t f = 0; f < shape.factor_count(); ++f) {
      int e = std::min(h, shape.factor_exponent(f));
      if (e > 0) {
        constrained.push_back(f);
        target.push_back(e);
      }
    }
    const std::size_t m = constrained.size();
    std::vector<CoeffVector> rows;
    for (std::size_t j = 0; j < n; ++j) {
      CoeffVector row(m + n);
      for (std::size_t c = 0; c < m; ++c) row[c] = tuple[j].coords[constrained[c]];
      row[m + j] = ring.uniformizer_power(0);
      rows.push_back(std::move(row));
    }
    for (std::size_t c = 0; c < m; ++c) {
      CoeffVector row(m + n);
      row[c] = ring.uniformizer_power(target[c]);
      rows.push_back(std::move(row));
    }
    SubmoduleForm big = howell_form(ring, m + n, rows);
    std::vector<CoeffVector> kernel;
    for (std::size_t i = 0; i < big.rows().size(); ++i) {
      if (big.pivot(i).column < m) continue;
      kernel.emplace_back(big.rows()[i].begin() + static_cast<std::ptrdiff_t>(m), big.rows()[i].end());
    }
    table.levels.push_back(howell_form(ring, n, kernel));
  }
  return table;
}

}  // namespace

HeightTable height_table(const ModuleShape& shape, std::span<const Element> tuple, TableStrategy strategy) {
  return height_table(shape, tuple, shape.exponent(), strategy);
}

HeightTable height_table(const ModuleShape& shape, std::span<const Element> tuple, int precision,
                         TableStrategy strategy) {
  if (precision < shape.exponent())
    throw InvalidInput("height_table: precision below the exponent of the module");
  shape.validate(tuple);
  const RingSpec ring = shape.ring().with_precision(precision);
  if (strategy == TableStrategy::Auto) {
    std::uint64_t space = saturating_pow(ring.size(), tuple.size());
    strategy = space <= kExhaustiveTableLimit ? TableStrategy::Exhaustive : TableStrategy::Kernel;
  }
  return strategy == TableStrategy::Exhaustive ? exhaustive_table(shape, tuple, ring)
                                               : kernel_table(shape, tuple, ring);
}

std::vector<std::uint64_t> fingerprint(const HeightTable& table) {
  std::vector<std::uint64_t> key;
  for (const auto& level : table.levels) {
    key.push_back(level.rows().size());
    for (const auto& row : level.rows())
      for (Scalar s : row) key.push_back(s.code);
  }
  return key;
}

}  // namespace ulm
