// Copyright 2026 The covelim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "covelim/error.hpp"

namespace covelim {

/// Index of a group element inside its owning FiniteGroup.
using Element = std::size_t;

/// Building block of a supported group. Direct products concatenate factors,
/// which is what lets character tables be generated for them.
struct GroupFactor {
  enum class Kind { cyclic, dihedral3 };
  Kind kind;
  std::size_t order;

  friend bool operator==(const GroupFactor&, const GroupFactor&) = default;
};

inline constexpr std::size_t kMaxGroupOrder = 65536;

/// Finite group stored as a dense multiplication table. Immutable.
class FiniteGroup {
 public:
  /// Validates `table` (row-major, order x order) and derives identity and
  /// inverses. Associativity is checked exhaustively for order <= 64.
  static FiniteGroup from_table(std::size_t order, std::vector<Element> table,
                                std::vector<std::string> labels,
                                std::vector<GroupFactor> factors = {}) {
    if (order == 0) throw Error(ErrorCode::invalid_parameter, "group order must be positive");
    if (order > kMaxGroupOrder)
      throw Error(ErrorCode::size_limit, "group order " + std::to_string(order) + " exceeds " +
                                             std::to_string(kMaxGroupOrder));
    if (table.size() != order * order)
      throw Error(ErrorCode::invalid_parameter, "multiplication table has wrong size");
    if (labels.size() != order)
      throw Error(ErrorCode::invalid_parameter, "one label per element required");
    for (Element x : table)
      if (x >= order) throw Error(ErrorCode::invalid_parameter, "table entry out of range");

    FiniteGroup g;
    g.order_ = order;
    g.table_ = std::move(table);
    g.labels_ = std::move(labels);
    g.factors_ = std::move(factors);

    bool found = false;
    for (Element e = 0; e < order && !found; ++e) {
      bool ok = true;
      for (Element x = 0; x < order && ok; ++x)
        ok = g.multiply(e, x) == x && g.multiply(x, e) == x;
      if (ok) {
        g.identity_ = e;
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::invalid_parameter, "table has no identity element");

    g.inverse_.assign(order, order);
    for (Element x = 0; x < order; ++x) {
      for (Element y = 0; y < order; ++y) {
        if (g.multiply(x, y) == g.identity_ && g.multiply(y, x) == g.identity_) {
          g.inverse_[x] = y;
          break;
        }
      }
      if (g.inverse_[x] == order)
        throw Error(ErrorCode::invalid_parameter, "element " + g.labels_[x] + " has no inverse");
    }

    if (order <= 64) {
      for (Element a = 0; a < order; ++a)
        for (Element b = 0; b < order; ++b)
          for (Element c = 0; c < order; ++c)
            if (g.multiply(g.multiply(a, b), c) != g.multiply(a, g.multiply(b, c)))
              throw Error(ErrorCode::invalid_parameter, "table is not associative");
    }
    return g;
  }

  std::size_t order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }
  Element multiply(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inverse(Element a) const { return inverse_[a]; }
  const std::string& label(Element a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<GroupFactor>& factors() const noexcept { return factors_; }
  bool is_abelian() const {
    for (Element a = 0; a < order_; ++a)
      for (Element b = a + 1; b < order_; ++b)
        if (multiply(a, b) != multiply(b, a)) return false;
    return true;
  }

  /// Element with the given label, or order() if absent.
  Element find(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    return static_cast<Element>(it - labels_.begin());
  }

  /// Per-factor element indices (mixed radix, first factor most significant).
  std::vector<Element> components(Element a) const {
    std::vector<Element> out(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
      out[i] = a % factors_[i].order;
      a /= factors_[i].order;
    }
    return out;
  }

  /// Conjugacy classes, each sorted, ordered by smallest member.
  std::vector<std::vector<Element>> conjugacy_classes() const {
    std::vector<std::vector<Element>> classes;
    std::vector<bool> seen(order_, false);
    for (Element x = 0; x < order_; ++x) {
      if (seen[x]) continue;
      std::vector<Element> cls;
      for (Element g = 0; g < order_; ++g) {
        const Element c = multiply(multiply(g, x), inverse(g));
        if (!seen[c]) {
          seen[c] = true;
          cls.push_back(c);
        }
      }
      std::sort(cls.begin(), cls.end());
      classes.push_back(std::move(cls));
    }
    return classes;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order_ == b.order_ && a.table_ == b.table_;
  }

 private:
  FiniteGroup() = default;

  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  Element identity_ = 0;
  std::vector<std::string> labels_;
  std::vector<GroupFactor> factors_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr build_cyclic(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_parameter, "cyclic group order must be >= 1");
  if (n > kMaxGroupOrder) throw Error(ErrorCode::size_limit, "cyclic group too large");
  std::vector<Element> table(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) table[j * n + k] = (j + k) % n;
  std::vector<std::string> labels(n);
  for (std::size_t j = 0; j < n; ++j) labels[j] = "g^" + std::to_string(j);
  return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(
      n, std::move(table), std::move(labels), {{GroupFactor::Kind::cyclic, n}}));
}

/// Element (a, b) has index a * |B| + b.
inline GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order();
  const std::size_t nb = b.order();
  if (na * nb > kMaxGroupOrder)
    throw Error(ErrorCode::size_limit, "direct product order " + std::to_string(na * nb) +
                                           " exceeds " + std::to_string(kMaxGroupOrder));
  const std::size_t n = na * nb;
  std::vector<Element> table(n * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      table[x * n + y] = a.multiply(x / nb, y / nb) * nb + b.multiply(x % nb, y % nb);
  std::vector<std::string> labels(n);
  for (Element x = 0; x < n; ++x) labels[x] = a.label(x / nb) + "," + b.label(x % nb);

  std::vector<GroupFactor> factors;
  if (!a.factors().empty() && !b.factors().empty()) {
    factors = a.factors();
    factors.insert(factors.end(), b.factors().begin(), b.factors().end());
  }
  return std::make_shared<const FiniteGroup>(
      FiniteGroup::from_table(n, std::move(table), std::move(labels), std::move(factors)));
}

/// G x G x ... x G (`copies` factors).
inline GroupPtr direct_power(const GroupPtr& g, std::size_t copies) {
  if (copies == 0) throw Error(ErrorCode::invalid_parameter, "direct power needs >= 1 copy");
  GroupPtr out = g;
  for (std::size_t i = 1; i < copies; ++i) out = direct_product(*out, *g);
  return out;
}

/// D3 with elements r^a s^b at index a + 3b: {e, r, r2, s, rs, r2s}.
inline GroupPtr build_dihedral3() {
  // (r^a s^b)(r^c s^d) = r^(a + (-1)^b c) s^(b + d)
  std::vector<Element> table(36);
  for (Element x = 0; x < 6; ++x) {
    for (Element y = 0; y < 6; ++y) {
      const std::size_t a = x % 3, b = x / 3, c = y % 3, d = y / 3;
      const std::size_t rot = (b == 0 ? a + c : a + 3 - c) % 3;
      table[x * 6 + y] = rot + 3 * ((b + d) % 2);
    }
  }
  return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(
      6, std::move(table), {"e", "r", "r2", "s", "rs", "r2s"},
      {{GroupFactor::Kind::dihedral3, 6}}));
}

inline bool is_subgroup(const FiniteGroup& g, const std::vector<Element>& members) {
  std::vector<bool> in(g.order(), false);
  for (Element m : members) {
    if (m >= g.order()) return false;
    in[m] = true;
  }
  if (!in[g.identity()]) return false;
  for (Element a : members) {
    if (!in[g.inverse(a)]) return false;
    for (Element b : members)
      if (!in[g.multiply(a, b)]) return false;
  }
  return true;
}

/// Verified subgroup of a parent group; members kept sorted and unique.
class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<Element> members) : parent_(std::move(parent)) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (!parent_ || !is_subgroup(*parent_, members))
      throw Error(ErrorCode::invalid_subgroup, "member set is not a subgroup");
    members_ = std::move(members);
  }

  static Subgroup trivial(GroupPtr parent) {
    const Element e = parent->identity();
    return Subgroup(std::move(parent), {e});
  }

  const GroupPtr& parent() const noexcept { return parent_; }
  const std::vector<Element>& members() const noexcept { return members_; }
  std::size_t order() const noexcept { return members_.size(); }

 private:
  GroupPtr parent_;
  std::vector<Element> members_;
};

struct CosetPartition {
  std::vector<std::vector<Element>> cosets;
  std::vector<Element> representatives;
  // coset index for each group element
  std::vector<std::size_t> coset_of;
};

/// Left cosets gH. The coset holding the identity comes first (represented by
/// the identity); the rest are sorted by, and represented by, their smallest
/// member.
inline CosetPartition left_cosets(const FiniteGroup& g, const Subgroup& h) {
  if (!(*h.parent() == g) || !is_subgroup(g, h.members()))
    throw Error(ErrorCode::invalid_subgroup, "subgroup does not belong to this group");
  CosetPartition out;
  const std::size_t none = g.order();
  out.coset_of.assign(g.order(), none);
  // identity first so the subgroup itself is coset 0
  std::vector<Element> order(g.order());
  std::iota(order.begin(), order.end(), Element{0});
  std::stable_partition(order.begin(), order.end(),
                        [&](Element x) { return x == g.identity(); });
  for (Element x : order) {
    if (out.coset_of[x] != none) continue;
    std::vector<Element> coset;
    coset.reserve(h.order());
    for (Element m : h.members()) coset.push_back(g.multiply(x, m));
    std::sort(coset.begin(), coset.end());
    for (Element c : coset) out.coset_of[c] = out.cosets.size();
    out.representatives.push_back(x);
    out.cosets.push_back(std::move(coset));
  }
  return out;
}

}  // namespace covelim
