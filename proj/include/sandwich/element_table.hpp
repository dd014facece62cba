#pragma once

#include <cstdint>
#include <cstring>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sandwich/errors.hpp"
#include "sandwich/matrix.hpp"
#include "sandwich/model.hpp"

namespace sandwich {

using ElemId = std::uint32_t;

inline constexpr std::size_t kDefaultCap = 2'000'000;

/// Every element of a GroupModel, indexed. Element 0 is the identity and
/// indices follow breadth-first order from the identity under right
/// multiplication by the elementary generators x_delta(1).
class ElementTable {
 public:
  static ElementTable build(const GroupModel& model, std::size_t cap = kDefaultCap) {
    const auto expected = group_order_formula(model.kind(), model.degree(), model.modulus());
    if (expected > cap)
      throw SizeError(model.group_name() + " has " + std::to_string(expected) + " elements, above the cap of " +
                      std::to_string(cap));
    ElementTable t(model);
    t.reserve(static_cast<std::size_t>(expected));
    const int m = model.modulus();
    for (const auto& g : model.generators()) {
      t.gen_mats_.push_back(root_element(model, g.delta, 1));
    }
    const std::size_t ng = t.gen_mats_.size();
    t.insert(ModMatrix::identity(model.degree()));
    for (std::size_t head = 0; head < t.elems_.size(); ++head) {
      for (std::size_t g = 0; g < ng; ++g) {
        const ModMatrix y = mat_mul(t.elems_[head], t.gen_mats_[g], m);
        auto idx = t.find(y);
        if (!idx) {
          if (t.elems_.size() >= cap)
            throw SizeError(model.group_name() + " exceeds the cap of " + std::to_string(cap) + " elements");
          idx = t.insert(y);
        }
        t.right_.push_back(*idx);
      }
    }
    t.inv_.resize(t.elems_.size());
    for (std::size_t i = 0; i < t.elems_.size(); ++i) t.inv_[i] = t.index_of(inverse(t.elems_[i], m));
    for (const auto& g : t.gen_mats_) t.gen_ids_.push_back(t.index_of(g));
    return t;
  }

  const GroupModel& model() const { return model_; }
  std::size_t size() const { return elems_.size(); }
  const ModMatrix& element(ElemId i) const { return elems_[i]; }
  static constexpr ElemId identity() { return 0; }

  std::optional<ElemId> find(const ModMatrix& x) const {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t h = hash(x) & mask;; h = (h + 1) & mask) {
      const ElemId s = slots_[h];
      if (s == kEmpty) return std::nullopt;
      if (elems_[s] == x) return s;
    }
  }
  ElemId index_of(const ModMatrix& x) const {
    auto i = find(x);
    if (!i) throw PreconditionError("matrix is not an element of " + model_.group_name() + ": " + to_string(x));
    return *i;
  }

  ElemId inverse_of(ElemId i) const { return inv_[i]; }
  ElemId mul(ElemId a, ElemId b) const { return index_of(mat_mul(elems_[a], elems_[b], model_.modulus())); }
  /// a^b = b^{-1} a b.
  ElemId conj(ElemId a, ElemId b) const { return mul(mul(inv_[b], a), b); }
  /// [a,b] = a^{-1} b^{-1} a b.
  ElemId commutator(ElemId a, ElemId b) const { return mul(mul(inv_[a], inv_[b]), mul(a, b)); }

  std::size_t generator_count() const { return gen_ids_.size(); }
  const std::vector<ElemId>& generator_ids() const { return gen_ids_; }
  /// x * generator g.
  ElemId right(ElemId x, std::size_t g) const { return right_[x * gen_ids_.size() + g]; }
  /// g^{-1} x g using the Cayley tables.
  ElemId conj_by_generator(ElemId x, std::size_t g) const { return right(inv_[right(inv_[x], g)], g); }

 private:
  static constexpr ElemId kEmpty = std::numeric_limits<ElemId>::max();

  explicit ElementTable(const GroupModel& model) : model_(model) { slots_.assign(16, kEmpty); }

  static std::size_t hash(const ModMatrix& x) {
    std::uint64_t a, b;
    std::memcpy(&a, x.e.data(), 8);
    std::memcpy(&b, x.e.data() + 8, 8);
    std::uint64_t h = a * 0x9E3779B97F4A7C15ULL ^ (b + 0x632BE59BD9B4E019ULL) * 0xC2B2AE3D27D4EB4FULL;
    h ^= h >> 29;
    h *= 0xBF58476D1CE4E5B9ULL;
    h ^= h >> 32;
    return static_cast<std::size_t>(h);
  }

  void reserve(std::size_t n) {
    elems_.reserve(n);
    right_.reserve(n * model_.generators().size());
    std::size_t cap = 16;
    while (cap < 2 * n + 2) cap <<= 1;
    rehash(cap);
  }

  void rehash(std::size_t cap) {
    slots_.assign(cap, kEmpty);
    for (ElemId i = 0; i < elems_.size(); ++i) place(i);
  }

  void place(ElemId i) {
    const std::size_t mask = slots_.size() - 1;
    std::size_t h = hash(elems_[i]) & mask;
    while (slots_[h] != kEmpty) h = (h + 1) & mask;
    slots_[h] = i;
  }

  ElemId insert(const ModMatrix& x) {
    elems_.push_back(x);
    const ElemId i = static_cast<ElemId>(elems_.size() - 1);
    if (2 * elems_.size() > slots_.size()) {
      rehash(slots_.size() * 2);
    } else {
      place(i);
    }
    return i;
  }

  GroupModel model_;
  std::vector<ModMatrix> elems_;
  std::vector<ElemId> slots_;
  std::vector<ElemId> inv_;
  std::vector<ElemId> right_;
  std::vector<ModMatrix> gen_mats_;
  std::vector<ElemId> gen_ids_;
};

/// Independent enumeration of the group by its defining predicate, used to
/// cross-check the generator closure. Returns nullopt when the search space is
/// too large for a scan.
inline std::optional<std::vector<ModMatrix>> predicate_scan(const GroupModel& model) {
  const int n = model.degree(), m = model.modulus();
  std::vector<ModMatrix> out;
  if (model.kind() == GroupKind::SL) {
    double space = 1;
    for (int i = 0; i < n * n; ++i) space *= m;
    if (space > static_cast<double>(1 << 22)) return std::nullopt;
    ModMatrix x = ModMatrix::zero(n);
    std::vector<int> digits(n * n, 0);
    while (true) {
      for (int k = 0; k < n * n; ++k) x.set(k / n, k % n, digits[k]);
      if (det(x, m) == 1 % m) out.push_back(x);
      int k = n * n - 1;
      while (k >= 0 && ++digits[k] == m) digits[k--] = 0;
      if (k < 0) break;
    }
    return out;
  }
  if (m > 3) return std::nullopt;
  // Columns c_0..c_3 with omega(c_i, c_j) = Omega_ij, chosen one at a time.
  const ModMatrix om = model.omega();
  auto form = [&](const std::array<int, 4>& a, const std::array<int, 4>& b) {
    return ((a[0] * b[2] + a[1] * b[3] - a[2] * b[0] - a[3] * b[1]) % m + m) % m;
  };
  std::vector<std::array<int, 4>> vectors;
  for (const auto& v : all_vectors(4, m)) vectors.push_back({v[0], v[1], v[2], v[3]});
  std::array<std::array<int, 4>, 4> cols{};
  auto extend = [&](auto&& self, int j) -> void {
    if (j == 4) {
      ModMatrix x = ModMatrix::zero(4);
      for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r) x.set(r, c, cols[c][r]);
      out.push_back(x);
      return;
    }
    for (const auto& v : vectors) {
      bool ok = true;
      for (int i = 0; i < j && ok; ++i) ok = form(cols[i], v) == om(i, j);
      if (!ok) continue;
      cols[j] = v;
      self(self, j + 1);
    }
  };
  extend(extend, 0);
  // The form conditions only force nondegeneracy; keep the invertible ones.
  std::erase_if(out, [&](const ModMatrix& x) { return !model.satisfies_invariant(x); });
  return out;
}

}  // namespace sandwich
