#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "sandwich/errors.hpp"
#include "sandwich/matrix.hpp"
#include "sandwich/relroots.hpp"
#include "sandwich/rootsys.hpp"
#include "sandwich/zm.hpp"

namespace sandwich {

enum class GroupKind { SL, Sp4 };

/// The three standard parabolics of Sp_4: Borel, stabilizer of an isotropic
/// line (Heisenberg radical, relative type BC_1) and Siegel (abelian radical).
enum class SpParabolic { Borel, Line, Siegel };

inline std::string to_string(SpParabolic p) {
  switch (p) {
    case SpParabolic::Borel: return "borel";
    case SpParabolic::Line: return "line";
    case SpParabolic::Siegel: return "siegel";
  }
  return "?";
}

inline SpParabolic parse_sp_parabolic(const std::string& s) {
  if (s == "borel") return SpParabolic::Borel;
  if (s == "line") return SpParabolic::Line;
  if (s == "siegel") return SpParabolic::Siegel;
  throw ConstructionError("unknown Sp_4 parabolic '" + s + "' (expected borel, line or siegel)");
}

/// Coordinates of an element of V_alpha in the chosen basis.
using VVec = std::vector<int>;

/// Module V_alpha for one relative root, with a basis of nilpotent matrices.
/// Basis element k sits at `pivots[k]` with coefficient `pivot_signs[k]`; no
/// other basis element of any root space touches that entry.
struct RootSpace {
  RelativeRoot root;
  std::string label;
  std::vector<ModMatrix> basis;
  std::vector<std::pair<int, int>> pivots;
  std::vector<int> pivot_signs;
  std::vector<Root> absolute;  // the absolute root carried by each basis element

  int dim() const { return static_cast<int>(basis.size()); }
};

/// An elementary generator x_delta(1) of the matrix model.
struct GeneratorSpec {
  Root delta;
  std::string label;
  ModMatrix basis;
};

/// A concrete matrix group (SL_n or Sp_4 over Z/m) together with a standard
/// parabolic: relative roots, root spaces, and the block shape used by the
/// Gauss cell.
class GroupModel {
 public:
  static GroupModel sl(int n, int m, std::vector<int> blocks) {
    if (n < 2 || n > kMaxDegree) throw ConstructionError("SL_n supported for 2 <= n <= 4, got n=" + std::to_string(n));
    GroupModel g(GroupKind::SL, n, m, RootSystemType{Family::A, n - 1});
    if (blocks.empty()) blocks.assign(n, 1);
    int total = 0;
    for (int b : blocks) {
      if (b <= 0) throw ConstructionError("block sizes must be positive");
      total += b;
    }
    if (total != n) throw ConstructionError("block sizes must sum to " + std::to_string(n));
    if (blocks.size() < 2) throw ConstructionError("a proper parabolic needs at least two blocks");
    g.blocks_ = std::move(blocks);
    g.build_sl();
    return g;
  }

  static GroupModel sp4(int m, SpParabolic p) {
    GroupModel g(GroupKind::Sp4, 4, m, RootSystemType{Family::C, 2});
    g.sp_parabolic_ = p;
    g.build_sp4();
    return g;
  }

  GroupKind kind() const { return kind_; }
  int degree() const { return degree_; }
  int modulus() const { return ring_.modulus(); }
  const ZmRing& ring() const { return ring_; }
  const RootSystem& absolute() const { return absolute_; }
  /// Absolute simple roots outside the Levi subsystem.
  const std::vector<int>& marked() const { return marked_; }
  const std::vector<int>& blocks() const { return blocks_; }
  SpParabolic sp_parabolic() const { return sp_parabolic_; }

  std::string group_name() const {
    return (kind_ == GroupKind::SL ? "SL_" + std::to_string(degree_) : std::string("Sp_4")) + "(Z/" +
           std::to_string(modulus()) + ")";
  }
  std::string parabolic_name() const {
    if (kind_ == GroupKind::Sp4) return to_string(sp_parabolic_);
    std::string s = "(";
    for (std::size_t i = 0; i < blocks_.size(); ++i) s += (i ? "," : "") + std::to_string(blocks_[i]);
    return s + ")";
  }
  int isotropic_rank() const { return absolute_.rank(); }

  const std::vector<RootSpace>& root_spaces() const { return spaces_; }
  bool has_root(const RelativeRoot& a) const { return space_index_.count(a) != 0; }
  const RootSpace& space(const RelativeRoot& a) const {
    auto it = space_index_.find(a);
    if (it == space_index_.end()) throw PreconditionError("not a relative root of the parabolic: " + to_string(a));
    return spaces_[it->second];
  }
  std::vector<RelativeRoot> relative_roots() const {
    std::vector<RelativeRoot> out;
    for (const auto& s : spaces_) out.push_back(s.root);
    return out;
  }
  int relative_rank() const { return spaces_.empty() ? 0 : static_cast<int>(spaces_.front().root.size()); }

  /// Basis indices grouped into the diagonal blocks of the parabolic, in the
  /// order that makes P block upper triangular.
  const std::vector<std::vector<int>>& gauss_blocks() const { return gauss_blocks_; }

  const std::vector<GeneratorSpec>& generators() const { return generators_; }

  /// The nilpotent matrix spanning the absolute root space of delta.
  const ModMatrix& absolute_root_matrix(const Root& delta) const {
    auto it = absolute_matrices_.find(delta);
    if (it == absolute_matrices_.end()) throw PreconditionError("not an absolute root: " + to_string(delta));
    return it->second;
  }

  /// det = 1 for SL_n; g^T Omega g = Omega for Sp_4.
  bool satisfies_invariant(const ModMatrix& g) const {
    const int m = modulus();
    if (g.n != degree_) return false;
    if (kind_ == GroupKind::SL) return det(g, m) == 1 % m;
    return mat_mul(mat_mul(transpose(g), omega(), m), g, m) == omega();
  }

  ModMatrix omega() const {
    const int m = modulus();
    ModMatrix o = ModMatrix::zero(4);
    o.set(0, 2, 1);
    o.set(1, 3, 1);
    o.set(2, 0, m - 1);
    o.set(3, 1, m - 1);
    return o;
  }

  /// Same group and parabolic over Z/d.
  GroupModel with_modulus(int d) const {
    return kind_ == GroupKind::SL ? sl(degree_, d, blocks_) : sp4(d, sp_parabolic_);
  }
  GroupModel with_blocks(std::vector<int> blocks) const { return sl(degree_, modulus(), std::move(blocks)); }
  GroupModel with_sp_parabolic(SpParabolic p) const { return sp4(modulus(), p); }

  /// Block of the Gauss order containing basis vector p.
  int block_of(int p) const { return block_of_[p]; }

 private:
  GroupModel(GroupKind k, int n, int m, RootSystemType t) : kind_(k), degree_(n), ring_(m), absolute_(t) {}

  ModMatrix unit_matrix(int p, int q, int sign = 1) const {
    ModMatrix e = ModMatrix::zero(degree_);
    e.set(p, q, sign > 0 ? 1 : modulus() - 1);
    return e;
  }

  void index_spaces() {
    for (std::size_t i = 0; i < spaces_.size(); ++i) space_index_.emplace(spaces_[i].root, static_cast<int>(i));
    block_of_.assign(degree_, -1);
    for (std::size_t b = 0; b < gauss_blocks_.size(); ++b)
      for (int p : gauss_blocks_[b]) block_of_[p] = static_cast<int>(b);
  }

  // e_p - e_q in simple coordinates of A_{n-1}.
  Root sl_root(int p, int q) const {
    Root r = Root::zero(degree_ - 1);
    const int lo = std::min(p, q), hi = std::max(p, q);
    for (int i = lo; i < hi; ++i) r[i] = p < q ? 1 : -1;
    return r;
  }

  void build_sl() {
    const int n = degree_, k = static_cast<int>(blocks_.size());
    std::vector<int> start(k + 1, 0);
    for (int i = 0; i < k; ++i) start[i + 1] = start[i] + blocks_[i];
    for (int i = 0; i + 1 < k; ++i) marked_.push_back(start[i + 1] - 1);
    for (int i = 0; i < k; ++i) {
      gauss_blocks_.emplace_back();
      for (int p = start[i]; p < start[i + 1]; ++p) gauss_blocks_.back().push_back(p);
    }
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        if (p == q) continue;
        absolute_matrices_.emplace(sl_root(p, q), unit_matrix(p, q));
        generators_.push_back({sl_root(p, q), "e" + std::to_string(p + 1) + std::to_string(q + 1), unit_matrix(p, q)});
      }
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        RootSpace s;
        s.root = RelativeRoot::zero(k - 1);
        for (int t = std::min(i, j); t < std::max(i, j); ++t) s.root[t] = i < j ? 1 : -1;
        s.label = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        for (int p = start[i]; p < start[i + 1]; ++p)
          for (int q = start[j]; q < start[j + 1]; ++q) {
            s.basis.push_back(unit_matrix(p, q));
            s.pivots.emplace_back(p, q);
            s.pivot_signs.push_back(1);
            s.absolute.push_back(sl_root(p, q));
          }
        spaces_.push_back(std::move(s));
      }
    std::sort(spaces_.begin(), spaces_.end(),
              [](const RootSpace& a, const RootSpace& b) { return CanonicalRootOrder{}(a.root, b.root); });
    index_spaces();
  }

  void build_sp4() {
    // Basis v0..v3 with form Omega = [[0, I], [-I, 0]]; root vectors for
    // alpha1 = e1 - e2 (short) and alpha2 = 2 e2 (long).
    auto pos = [&](std::initializer_list<std::tuple<int, int, int>> entries) {
      ModMatrix e = ModMatrix::zero(4);
      for (auto [p, q, s] : entries) e.set(p, q, s > 0 ? 1 : modulus() - 1);
      return e;
    };
    const std::vector<std::pair<Root, ModMatrix>> positive = {
        {Root{1, 0}, pos({{0, 1, 1}, {3, 2, -1}})},
        {Root{0, 1}, pos({{1, 3, 1}})},
        {Root{1, 1}, pos({{0, 3, 1}, {1, 2, 1}})},
        {Root{2, 1}, pos({{0, 2, 1}})},
    };
    for (const auto& [r, mtx] : positive) {
      absolute_matrices_.emplace(r, mtx);
      absolute_matrices_.emplace(-r, transpose(mtx));
    }
    for (const auto& r : absolute_.roots())
      generators_.push_back({r, "x" + to_string(r), absolute_matrices_.at(r)});

    switch (sp_parabolic_) {
      case SpParabolic::Borel: marked_ = {0, 1}; break;
      case SpParabolic::Line: marked_ = {0}; break;
      case SpParabolic::Siegel: marked_ = {1}; break;
    }
    const RelativeRootSystem rel = build_relative({absolute_, marked_, {}});
    for (const auto& a : rel.roots()) {
      RootSpace s;
      s.root = a;
      s.label = to_string(a);
      for (const auto& mu : rel.fiber(a)) {
        const ModMatrix& b = absolute_matrices_.at(mu);
        int pp = -1, pq = -1;
        for (int p = 0; p < 4 && pp < 0; ++p)
          for (int q = 0; q < 4; ++q)
            if (b(p, q) != 0) {
              pp = p;
              pq = q;
              break;
            }
        s.basis.push_back(b);
        s.pivots.emplace_back(pp, pq);
        s.pivot_signs.push_back(b(pp, pq) == 1 ? 1 : -1);
        s.absolute.push_back(mu);
      }
      spaces_.push_back(std::move(s));
    }

    // Doubled weights of the basis vectors in simple coordinates.
    const std::vector<std::vector<int>> weight = {{2, 1}, {0, 1}, {-2, -1}, {0, -1}};
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int p = 0; p < 4; ++p) {
      std::vector<int> w;
      for (int j : marked_) w.push_back(weight[p][j]);
      groups[w].push_back(p);
    }
    std::vector<std::pair<int, std::vector<int>>> order;
    for (auto& [w, ps] : groups) order.emplace_back(-std::accumulate(w.begin(), w.end(), 0), ps);
    std::sort(order.begin(), order.end());
    for (auto& [f, ps] : order) gauss_blocks_.push_back(ps);
    index_spaces();
  }

  GroupKind kind_;
  int degree_;
  ZmRing ring_;
  RootSystem absolute_;
  std::vector<int> blocks_;
  SpParabolic sp_parabolic_ = SpParabolic::Borel;
  std::vector<int> marked_;
  std::vector<RootSpace> spaces_;
  std::map<RelativeRoot, int> space_index_;
  std::vector<std::vector<int>> gauss_blocks_;
  std::vector<int> block_of_;
  std::vector<GeneratorSpec> generators_;
  std::map<Root, ModMatrix> absolute_matrices_;
};

/// I + sum_k v_k B_k.
inline ModMatrix relative_root_element(const GroupModel& model, const RelativeRoot& a, const VVec& v) {
  const RootSpace& s = model.space(a);
  if (static_cast<int>(v.size()) != s.dim())
    throw PreconditionError("element of V_" + s.label + " needs " + std::to_string(s.dim()) + " coordinates");
  const int m = model.modulus();
  ModMatrix x = ModMatrix::identity(model.degree());
  for (int k = 0; k < s.dim(); ++k) x = mat_add(x, mat_scale(s.basis[k], v[k], m), m);
  return x;
}

/// Transvection e + t e_ij for SL_n (0-based positions).
inline ModMatrix elementary_generator(const GroupModel& model, int i, int j, int t) {
  if (model.kind() != GroupKind::SL) throw PreconditionError("matrix positions address SL_n generators only");
  if (i == j) throw PreconditionError("elementary generator needs an off-diagonal position");
  if (i < 0 || j < 0 || i >= model.degree() || j >= model.degree()) throw PreconditionError("position out of range");
  ModMatrix x = ModMatrix::identity(model.degree());
  x.set(i, j, model.ring().reduce(t));
  return x;
}

/// Root element x_delta(t) for an absolute root delta.
inline ModMatrix root_element(const GroupModel& model, const Root& delta, int t) {
  const int m = model.modulus();
  return mat_add(ModMatrix::identity(model.degree()), mat_scale(model.absolute_root_matrix(delta), t, m), m);
}

/// Every vector of V_alpha, in lexicographic order of coordinates.
inline std::vector<VVec> all_vectors(int dim, int m) {
  std::vector<VVec> out;
  VVec v(dim, 0);
  while (true) {
    out.push_back(v);
    int i = dim - 1;
    while (i >= 0 && ++v[i] == m) v[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

/// Order of the model's group, from the standard formulas over Z/p^k.
inline unsigned long long group_order_formula(GroupKind kind, int n, int m) {
  unsigned long long order = 1;
  for (int p : ZmRing(m).prime_divisors()) {
    int k = 0;
    for (int r = m; r % p == 0; r /= p) ++k;
    auto ipow = [](unsigned long long b, int e) {
      unsigned long long r = 1;
      while (e-- > 0) r *= b;
      return r;
    };
    const unsigned long long q = static_cast<unsigned long long>(p);
    unsigned long long field;
    int dim;
    if (kind == GroupKind::SL) {
      field = ipow(q, n * (n - 1) / 2);
      for (int i = 2; i <= n; ++i) field *= ipow(q, i) - 1;
      dim = n * n - 1;
    } else {
      field = ipow(q, 4) * (ipow(q, 2) - 1) * (ipow(q, 4) - 1);
      dim = 10;
    }
    order *= field * ipow(q, (k - 1) * dim);
  }
  return order;
}

}  // namespace sandwich
