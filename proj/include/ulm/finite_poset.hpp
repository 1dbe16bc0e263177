#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace ulm {

/// A finite poset over labelled elements with an explicit comparability
/// matrix. leq(i, j) means element i <= element j.
template <class Label>
class FinitePoset {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;  // (lower, upper)

  FinitePoset() = default;

  FinitePoset(std::vector<Label> elements, const std::function<bool(const Label&, const Label&)>& leq)
      : elements_(std::move(elements)), leq_(elements_.size() * elements_.size(), 0) {
    const std::size_t n = elements_.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) leq_[i * n + j] = leq(elements_[i], elements_[j]) ? 1 : 0;
  }

  std::size_t size() const { return elements_.size(); }
  const std::vector<Label>& elements() const { return elements_; }
  const Label& operator[](std::size_t i) const { return elements_[i]; }

  bool leq(std::size_t i, std::size_t j) const { return leq_[i * size() + j] != 0; }
  bool less(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }

  std::optional<std::size_t> index_of(const Label& label) const {
    auto it = std::find(elements_.begin(), elements_.end(), label);
    if (it == elements_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
  }

  bool is_partial_order() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq(i, i)) return false;
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && leq(i, j) && leq(j, i)) return false;
        for (std::size_t k = 0; k < n; ++k)
          if (leq(i, j) && leq(j, k) && !leq(i, k)) return false;
      }
    }
    return true;
  }

  /// Covering pairs x < y with nothing strictly between, sorted.
  std::vector<Edge> hasse() const {
    const std::size_t n = size();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!less(i, j)) continue;
        bool cover = true;
        for (std::size_t k = 0; k < n && cover; ++k)
          if (less(i, k) && less(k, j)) cover = false;
        if (cover) edges.emplace_back(i, j);
      }
    }
    return edges;
  }

  /// Number of arrows in a longest strict chain.
  int height() const {
    const std::size_t n = size();
    // Order by number of elements below, which is a linear extension.
    std::vector<std::size_t> order(n), below(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      order[i] = i;
      for (std::size_t j = 0; j < n; ++j) below[i] += less(j, i) ? 1 : 0;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
    std::vector<int> longest(n, 0);
    int best = 0;
    for (std::size_t idx = 0; idx < n; ++idx) {
      std::size_t i = order[idx];
      for (std::size_t j = 0; j < n; ++j)
        if (less(j, i)) longest[i] = std::max(longest[i], longest[j] + 1);
      best = std::max(best, longest[i]);
    }
    return best;
  }

  std::vector<std::size_t> minimal_elements() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i) {
      bool minimal = true;
      for (std::size_t j = 0; j < size() && minimal; ++j)
        if (less(j, i)) minimal = false;
      if (minimal) out.push_back(i);
    }
    return out;
  }

 private:
  std::vector<Label> elements_;
  std::vector<char> leq_;
};

template <class Label>
std::vector<typename FinitePoset<Label>::Edge> hasse(const FinitePoset<Label>& poset) {
  return poset.hasse();
}

/// True iff `map` sends the elements of `a` bijectively onto those of `b` and
/// x <= y in a exactly when map(x) <= map(y) in b.
template <class L1, class L2, class Map>
bool poset_isomorphism_check(const FinitePoset<L1>& a, const FinitePoset<L2>& b, Map map) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> image(a.size());
  std::vector<char> hit(b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto j = b.index_of(map(a[i]));
    if (!j || hit[*j]) return false;
    hit[*j] = 1;
    image[i] = *j;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a.leq(i, j) != b.leq(image[i], image[j])) return false;
  return true;
}

/// Identity labelling: labels must coincide.
template <class L>
bool poset_isomorphism_check(const FinitePoset<L>& a, const FinitePoset<L>& b) {
  return poset_isomorphism_check(a, b, [](const L& x) { return x; });
}

}  // namespace ulm
