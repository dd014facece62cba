#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "sandwich/element_table.hpp"

namespace sandwich {

/// A set of element indices of an ElementTable, stored as a bitset.
class Subgroup {
 public:
  Subgroup() = default;
  explicit Subgroup(std::size_t universe) : universe_(universe), bits_((universe + 63) / 64, 0) {}

  static Subgroup trivial(std::size_t universe) {
    Subgroup s(universe);
    s.insert(ElementTable::identity());
    return s;
  }
  static Subgroup whole(std::size_t universe) {
    Subgroup s(universe);
    for (ElemId i = 0; i < universe; ++i) s.insert(i);
    return s;
  }

  std::size_t universe() const { return universe_; }
  std::size_t order() const { return count_; }
  bool contains(ElemId i) const { return bits_[i >> 6] >> (i & 63) & 1; }
  bool insert(ElemId i) {
    std::uint64_t& w = bits_[i >> 6];
    const std::uint64_t b = std::uint64_t{1} << (i & 63);
    if (w & b) return false;
    w |= b;
    ++count_;
    return true;
  }

  std::vector<ElemId> elements() const {
    std::vector<ElemId> out;
    out.reserve(count_);
    for (std::size_t w = 0; w < bits_.size(); ++w)
      for (std::uint64_t x = bits_[w]; x; x &= x - 1)
        out.push_back(static_cast<ElemId>(w * 64 + std::countr_zero(x)));
    return out;
  }

  bool subset_of(const Subgroup& o) const {
    for (std::size_t w = 0; w < bits_.size(); ++w)
      if (bits_[w] & ~o.bits_[w]) return false;
    return true;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.bits_ == b.bits_; }

 private:
  std::size_t universe_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Grows a subgroup one generator at a time (Dimino's coset method): the new
/// group is a union of right cosets H r of the old one, and the cosets are
/// closed under right multiplication by every generator.
class ClosureBuilder {
 public:
  explicit ClosureBuilder(const ElementTable& t) : t_(&t), sub_(Subgroup::trivial(t.size())), elems_{0} {}

  const Subgroup& subgroup() const { return sub_; }
  const std::vector<ElemId>& generators() const { return gens_; }
  bool contains(ElemId x) const { return sub_.contains(x); }

  /// Adds s; returns false if s was already in the subgroup.
  bool add_generator(ElemId s) {
    if (sub_.contains(s)) return false;
    gens_.push_back(s);
    const std::size_t old_size = elems_.size();
    auto add_coset = [&](ElemId r) {
      for (std::size_t i = 0; i < old_size; ++i) {
        const ElemId x = t_->mul(elems_[i], r);
        sub_.insert(x);
        elems_.push_back(x);
      }
    };
    std::vector<ElemId> reps{s};
    add_coset(s);
    for (std::size_t q = 0; q < reps.size(); ++q) {
      for (ElemId g : gens_) {
        const ElemId c = t_->mul(reps[q], g);
        if (sub_.contains(c)) continue;
        reps.push_back(c);
        add_coset(c);
      }
    }
    return true;
  }

 private:
  const ElementTable* t_;
  Subgroup sub_;
  std::vector<ElemId> elems_;
  std::vector<ElemId> gens_;
};

inline Subgroup subgroup_closure(const ElementTable& t, const std::vector<ElemId>& seeds) {
  ClosureBuilder b(t);
  for (ElemId s : seeds) b.add_generator(s);
  return b.subgroup();
}

/// Conjugation by a fixed set of normalizing elements, using the Cayley tables
/// when an element is one of the table's generators.
class Conjugator {
 public:
  Conjugator(const ElementTable& t, const std::vector<ElemId>& normalizers) : t_(&t), normalizers_(normalizers) {
    std::unordered_map<ElemId, std::size_t> slot;
    for (std::size_t g = 0; g < t.generator_count(); ++g) slot.emplace(t.generator_ids()[g], g);
    for (ElemId n : normalizers_) {
      auto it = slot.find(n);
      slots_.push_back(it == slot.end() ? -1 : static_cast<long>(it->second));
    }
  }
  std::size_t size() const { return normalizers_.size(); }
  ElemId apply(ElemId x, std::size_t k) const {
    return slots_[k] >= 0 ? t_->conj_by_generator(x, static_cast<std::size_t>(slots_[k])) : t_->conj(x, normalizers_[k]);
  }

 private:
  const ElementTable* t_;
  std::vector<ElemId> normalizers_;
  std::vector<long> slots_;
};

/// Smallest subgroup containing the seeds and normalized by the normalizers.
inline ClosureBuilder normal_closure_builder(const ElementTable& t, const std::vector<ElemId>& seeds,
                                             const std::vector<ElemId>& normalizers) {
  ClosureBuilder b(t);
  const Conjugator conj(t, normalizers);
  std::vector<ElemId> queue(seeds.begin(), seeds.end());
  while (!queue.empty()) {
    const ElemId x = queue.back();
    queue.pop_back();
    if (!b.add_generator(x)) continue;
    for (std::size_t k = 0; k < conj.size(); ++k) queue.push_back(conj.apply(x, k));
  }
  return b;
}

inline Subgroup normal_closure(const ElementTable& t, const std::vector<ElemId>& seeds,
                               const std::vector<ElemId>& normalizers) {
  return normal_closure_builder(t, seeds, normalizers).subgroup();
}

/// Greedy generating set: scan elements in index order, keep those not yet
/// generated.
inline std::vector<ElemId> generating_set(const ElementTable& t, const Subgroup& h) {
  ClosureBuilder b(t);
  for (ElemId x : h.elements()) {
    if (b.subgroup().order() == h.order()) break;
    b.add_generator(x);
  }
  return b.generators();
}

/// True iff conjugating by every normalizer maps the subgroup into itself.
inline bool is_normalized_by(const ElementTable& t, const Subgroup& h, const std::vector<ElemId>& normalizers) {
  const Conjugator conj(t, normalizers);
  for (ElemId x : generating_set(t, h))
    for (std::size_t k = 0; k < conj.size(); ++k)
      if (!h.contains(conj.apply(x, k))) return false;
  return true;
}

/// Orbits of conjugation by the table generators, each sorted, ordered by
/// least member.
inline std::vector<std::vector<ElemId>> generator_conjugacy_orbits(const ElementTable& t) {
  const std::size_t n = t.size();
  std::vector<ElemId> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](ElemId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (ElemId x = 0; x < n; ++x)
    for (std::size_t g = 0; g < t.generator_count(); ++g) {
      ElemId a = find(x), b = find(t.conj_by_generator(x, g));
      if (a == b) continue;
      if (a < b) std::swap(a, b);
      parent[a] = b;
    }
  std::vector<std::vector<ElemId>> orbits;
  std::vector<long> slot(n, -1);
  for (ElemId x = 0; x < n; ++x) {
    const ElemId r = find(x);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(orbits.size());
      orbits.emplace_back();
    }
    orbits[slot[r]].push_back(x);
  }
  return orbits;
}

}  // namespace sandwich
