#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sandwich/element_table.hpp"
#include "sandwich/errors.hpp"
#include "sandwich/matrix.hpp"
#include "sandwich/model.hpp"
#include "sandwich/relroots.hpp"
#include "sandwich/subgroup.hpp"
#include "sandwich/zm.hpp"

namespace sandwich {

// ---------------------------------------------------------------------------
// Block shape of the parabolic

/// Position of basis vector p in the Gauss order.
inline std::vector<int> gauss_order(const GroupModel& model) {
  std::vector<int> order;
  for (const auto& b : model.gauss_blocks()) order.insert(order.end(), b.begin(), b.end());
  return order;
}

/// Block upper triangular in the Gauss order (sign > 0), lower (sign < 0) or
/// block diagonal (sign == 0).
inline bool has_block_shape(const GroupModel& model, const ModMatrix& g, int sign) {
  for (int p = 0; p < model.degree(); ++p)
    for (int q = 0; q < model.degree(); ++q) {
      if (g(p, q) == 0) continue;
      const int bp = model.block_of(p), bq = model.block_of(q);
      if (sign >= 0 && bp > bq) return false;
      if (sign <= 0 && bp < bq) return false;
    }
  return true;
}

inline bool in_parabolic(const GroupModel& model, const ModMatrix& g) { return has_block_shape(model, g, 1); }
inline bool in_levi(const GroupModel& model, const ModMatrix& g) { return has_block_shape(model, g, 0); }

/// Element of U_P (sign > 0) or U_{P^-} (sign < 0): block triangular with
/// identity diagonal blocks.
inline bool in_unipotent_radical(const GroupModel& model, const ModMatrix& g, int sign) {
  if (!has_block_shape(model, g, sign)) return false;
  for (int p = 0; p < model.degree(); ++p)
    for (int q = 0; q < model.degree(); ++q)
      if (model.block_of(p) == model.block_of(q) && g(p, q) != (p == q ? 1 : 0)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Subgroups of the element table

inline Subgroup elementary_subgroup(const ElementTable& t) { return subgroup_closure(t, t.generator_ids()); }

/// Kernel of reduction modulo q.
inline Subgroup congruence_subgroup(const ElementTable& t, const ZmIdeal& q) {
  Subgroup s(t.size());
  const ModMatrix id = ModMatrix::identity(t.model().degree());
  for (ElemId i = 0; i < t.size(); ++i)
    if (reduce_mod(t.element(i), q.d) == reduce_mod(id, q.d)) s.insert(i);
  return s;
}

/// Elements commuting with every listed element.
inline Subgroup centralizer_of(const ElementTable& t, const std::vector<ElemId>& with) {
  const Conjugator conj(t, with);
  Subgroup s(t.size());
  for (ElemId x = 0; x < t.size(); ++x) {
    bool central = true;
    for (std::size_t k = 0; k < conj.size() && central; ++k) central = conj.apply(x, k) == x;
    if (central) s.insert(x);
  }
  return s;
}

inline Subgroup centralizer(const ElementTable& t, const Subgroup& s) {
  return centralizer_of(t, generating_set(t, s));
}

/// Center of the whole group (the table generators generate it).
inline Subgroup center(const ElementTable& t) { return centralizer_of(t, t.generator_ids()); }

/// Preimage of the center of G(R/q) under reduction; the center is computed
/// in a separately enumerated model over Z/d.
inline Subgroup full_congruence_subgroup(const ElementTable& t, const ZmIdeal& q, std::size_t cap = kDefaultCap) {
  if (q.is_unit()) return Subgroup::whole(t.size());
  if (q.is_zero()) return center(t);
  const ElementTable quotient = ElementTable::build(t.model().with_modulus(q.d), cap);
  std::set<ModMatrix> central;
  for (ElemId x : center(quotient).elements()) central.insert(quotient.element(x));
  Subgroup s(t.size());
  for (ElemId i = 0; i < t.size(); ++i)
    if (central.count(reduce_mod(t.element(i), q.d))) s.insert(i);
  return s;
}

/// Indices of X_alpha(v) for v in q V_alpha. The parabolic may differ from the
/// table's own as long as the group and modulus agree.
inline std::vector<ElemId> root_subgroup_elements(const ElementTable& t, const GroupModel& model, const RelativeRoot& a,
                                                  const ZmIdeal& q) {
  const int m = model.modulus();
  std::set<ElemId> out;
  for (const auto& w : all_vectors(model.space(a).dim(), m)) {
    VVec v = w;
    for (int& c : v) c = c * q.d % m;
    out.insert(t.index_of(relative_root_element(model, a, v)));
  }
  return {out.begin(), out.end()};
}

/// Normal closure in E of all X_alpha(v), v in q V_alpha, alpha in Phi_P.
inline Subgroup relative_elementary_subgroup(const ElementTable& t, const GroupModel& model, const ZmIdeal& q) {
  std::vector<ElemId> seeds;
  for (const auto& s : model.root_spaces()) {
    const auto part = root_subgroup_elements(t, model, s.root, q);
    seeds.insert(seeds.end(), part.begin(), part.end());
  }
  return normal_closure(t, seeds, t.generator_ids());
}

inline Subgroup relative_elementary_subgroup(const ElementTable& t, const ZmIdeal& q) {
  return relative_elementary_subgroup(t, t.model(), q);
}

/// [X, Y]: normal closure of commutators of generators under both generating sets.
inline Subgroup commutator_subgroup(const ElementTable& t, const Subgroup& x, const Subgroup& y) {
  const auto gx = generating_set(t, x);
  const auto gy = generating_set(t, y);
  std::vector<ElemId> seeds;
  for (ElemId a : gx)
    for (ElemId b : gy) seeds.push_back(t.commutator(a, b));
  std::vector<ElemId> normalizers = gx;
  normalizers.insert(normalizers.end(), gy.begin(), gy.end());
  return normal_closure(t, seeds, normalizers);
}

/// [x, yz]^{z^{-1}} = [z^{-1}, x][x, y].
inline bool commutator_identity_check(const ElementTable& t, ElemId x, ElemId y, ElemId z) {
  const ElemId zi = t.inverse_of(z);
  const ElemId lhs = t.conj(t.commutator(x, t.mul(y, z)), zi);
  const ElemId rhs = t.mul(t.commutator(zi, x), t.commutator(x, y));
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Unipotent factorization and the commutator calculus

using Factorization = std::vector<std::pair<RelativeRoot, VVec>>;

inline ModMatrix unipotent_product(const GroupModel& model, const Factorization& f) {
  ModMatrix x = ModMatrix::identity(model.degree());
  for (const auto& [a, v] : f) x = mat_mul(x, relative_root_element(model, a, v), model.modulus());
  return x;
}

/// Orders Psi by a linear functional positive on it (height for positive sets,
/// minus height for negative ones), ties broken lexicographically.
inline std::vector<RelativeRoot> canonical_factor_order(std::vector<RelativeRoot> psi) {
  if (psi.empty()) return psi;
  const std::size_t k = psi.front().size();
  std::vector<int> w(k, 1);
  const bool all_pos = std::all_of(psi.begin(), psi.end(), [](const auto& a) { return a.is_positive(); });
  const bool all_neg = std::all_of(psi.begin(), psi.end(), [](const auto& a) { return a.is_negative(); });
  auto value = [&](const RelativeRoot& a) {
    int s = 0;
    for (std::size_t i = 0; i < k; ++i) s += w[i] * a[i];
    return s;
  };
  if (all_neg) {
    std::fill(w.begin(), w.end(), -1);
  } else if (!all_pos) {
    std::vector<int> c(k, -3);
    bool found = false;
    while (!found) {
      w = c;
      found = std::all_of(psi.begin(), psi.end(), [&](const auto& a) { return value(a) > 0; });
      std::size_t i = 0;
      while (i < k && ++c[i] > 3) c[i++] = -3;
      if (i == k && !found) throw PreconditionError("root set does not lie in an open half-space");
    }
  }
  std::sort(psi.begin(), psi.end(), [&](const RelativeRoot& a, const RelativeRoot& b) {
    const int fa = value(a), fb = value(b);
    if (fa != fb) return fa < fb;
    return a.values() < b.values();
  });
  return psi;
}

/// Peels x = prod X_alpha(v_alpha) from the left in the given order, reading
/// each component at the pivot entries. Returns nullopt if x is not such a
/// product.
inline std::optional<Factorization> peel_factors(const GroupModel& model, const std::vector<RelativeRoot>& order,
                                                 ModMatrix x) {
  const int m = model.modulus();
  Factorization out;
  for (const auto& a : order) {
    const RootSpace& s = model.space(a);
    VVec v(s.dim());
    for (int k = 0; k < s.dim(); ++k) {
      const auto [p, q] = s.pivots[k];
      v[k] = s.pivot_signs[k] > 0 ? x(p, q) : (m - x(p, q)) % m;
    }
    const ModMatrix xa = relative_root_element(model, a, v);
    x = mat_mul(inverse(xa, m), x, m);
    out.emplace_back(a, std::move(v));
  }
  if (!x.is_identity()) return std::nullopt;
  return out;
}

/// Components of x in U_Psi in the canonical order.
inline Factorization unipotent_factor(const GroupModel& model, const std::vector<RelativeRoot>& psi, const ModMatrix& x) {
  const std::set<RelativeRoot> s(psi.begin(), psi.end());
  for (const auto& a : psi) {
    if (!model.has_root(a)) throw PreconditionError("factor set contains a non-root " + to_string(a));
    for (const auto& b : psi)
      if (model.has_root(a + b) && !s.count(a + b))
        throw PreconditionError("factor set is not closed under addition");
  }
  auto f = peel_factors(model, canonical_factor_order(psi), x);
  if (!f) throw PreconditionError("element is not in the unipotent subgroup U_Psi");
  return *f;
}

inline bool is_zero_vec(const VVec& v) {
  return std::all_of(v.begin(), v.end(), [](int c) { return c == 0; });
}

struct CommutatorTerm {
  int i = 0, j = 0;
  RelativeRoot root;
  VVec value;
};

inline bool opposite_multiples(const RelativeRoot& a, const RelativeRoot& b) {
  for (int mi = 1; mi <= 4; ++mi)
    for (int k = 1; k <= 4; ++k)
      if (mi * a == -(k * b)) return true;
  return false;
}

/// [X_alpha(u), X_beta(v)] factored over {i alpha + j beta} in the order of
/// (i + j, i); zero components omitted.
inline std::vector<CommutatorTerm> chevalley_commutator_decompose(const GroupModel& model, const RelativeRoot& a,
                                                                  const VVec& u, const RelativeRoot& b,
                                                                  const VVec& v) {
  if (!model.has_root(a) || !model.has_root(b)) throw PreconditionError("commutator roots must be relative roots");
  if (opposite_multiples(a, b)) throw PreconditionError("commutator formula needs m a != -k b");
  const int m = model.modulus();
  std::vector<std::pair<int, int>> ij;
  std::map<RelativeRoot, std::pair<int, int>> seen;
  for (int s = 2; s <= 8; ++s)
    for (int i = 1; i < s; ++i) {
      const RelativeRoot r = i * a + (s - i) * b;
      if (!model.has_root(r)) continue;
      if (seen.count(r)) throw PreconditionError("two exponent pairs give the same root " + to_string(r));
      seen.emplace(r, std::make_pair(i, s - i));
      ij.emplace_back(i, s - i);
    }
  const ModMatrix xa = relative_root_element(model, a, u), xb = relative_root_element(model, b, v);
  const ModMatrix c = mat_mul(mat_mul(inverse(xa, m), inverse(xb, m), m), mat_mul(xa, xb, m), m);
  std::vector<RelativeRoot> order;
  for (auto [i, j] : ij) order.push_back(i * a + j * b);
  auto f = peel_factors(model, order, c);
  if (!f) throw PreconditionError("commutator does not factor over the expected roots");
  std::vector<CommutatorTerm> out;
  for (std::size_t k = 0; k < ij.size(); ++k)
    if (!is_zero_vec((*f)[k].second)) out.push_back({ij[k].first, ij[k].second, (*f)[k].first, (*f)[k].second});
  return out;
}

/// Component (i, j) of the commutator decomposition, zero if absent.
inline VVec commutator_component(const GroupModel& model, const RelativeRoot& a, const VVec& u, const RelativeRoot& b,
                                 const VVec& v, int i, int j) {
  for (const auto& t : chevalley_commutator_decompose(model, a, u, b, v))
    if (t.i == i && t.j == j) return t.value;
  const RelativeRoot r = i * a + j * b;
  return VVec(model.has_root(r) ? model.space(r).dim() : 0, 0);
}

struct SumDecomposition {
  VVec sum;
  std::vector<std::pair<int, VVec>> higher;  // (i, q^i(v, w)), zero terms omitted
};

/// X_alpha(v) X_alpha(w) = X_alpha(v + w) prod_{i>1} X_{i alpha}(q^i(v, w)).
inline SumDecomposition sum_formula_decompose(const GroupModel& model, const RelativeRoot& a, const VVec& v,
                                              const VVec& w) {
  const int m = model.modulus();
  SumDecomposition out;
  out.sum.resize(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out.sum[k] = (v[k] + w[k]) % m;
  const ModMatrix y = mat_mul(inverse(relative_root_element(model, a, out.sum), m),
                              mat_mul(relative_root_element(model, a, v), relative_root_element(model, a, w), m), m);
  std::vector<RelativeRoot> order;
  std::vector<int> degs;
  for (int i = 2; i <= 4; ++i)
    if (model.has_root(i * a)) {
      order.push_back(i * a);
      degs.push_back(i);
    }
  auto f = peel_factors(model, order, y);
  if (!f) throw PreconditionError("sum formula remainder does not factor over multiples of the root");
  for (std::size_t k = 0; k < order.size(); ++k)
    if (!is_zero_vec((*f)[k].second)) out.higher.emplace_back(degs[k], (*f)[k].second);
  return out;
}

/// g X_alpha(v) g^{-1} = prod_{i>=1} X_{i alpha}(phi^i(v)) for g in the Levi.
inline std::vector<std::pair<int, VVec>> levi_conjugation_decompose(const GroupModel& model, const ModMatrix& g,
                                                                    const RelativeRoot& a, const VVec& v) {
  if (!model.satisfies_invariant(g) || !in_levi(model, g)) throw PreconditionError("element is not in the Levi subgroup");
  const int m = model.modulus();
  const ModMatrix y = mat_mul(mat_mul(g, relative_root_element(model, a, v), m), inverse(g, m), m);
  std::vector<RelativeRoot> order;
  std::vector<int> degs;
  for (int i = 1; i <= 4; ++i)
    if (model.has_root(i * a)) {
      order.push_back(i * a);
      degs.push_back(i);
    }
  auto f = peel_factors(model, order, y);
  if (!f) throw PreconditionError("conjugate does not factor over multiples of the root");
  std::vector<std::pair<int, VVec>> out;
  for (std::size_t k = 0; k < order.size(); ++k) out.emplace_back(degs[k], (*f)[k].second);
  return out;
}

inline VVec basis_vector(int dim, int k) {
  VVec e(dim, 0);
  e[k] = 1;
  return e;
}

/// Index i of a generator e_i of V_alpha with N_{alpha beta 1 1}(e_i, u) != 0.
inline std::optional<std::size_t> lemma_ABe_witness(const GroupModel& model, const RelativeRoot& a,
                                                    const RelativeRoot& b, const VVec& u,
                                                    const std::vector<VVec>& gens) {
  if (!model.has_root(a + b)) throw PreconditionError("witness search needs a + b to be a relative root");
  if (is_zero_vec(u)) throw PreconditionError("witness search needs u != 0");
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!is_zero_vec(commutator_component(model, a, gens[i], b, u, 1, 1))) return i;
  return std::nullopt;
}

inline std::vector<VVec> standard_basis(const GroupModel& model, const RelativeRoot& a) {
  std::vector<VVec> out;
  const int d = model.space(a).dim();
  for (int k = 0; k < d; ++k) out.push_back(basis_vector(d, k));
  return out;
}

/// Additive subgroup of (Z/m)^d generated by the given vectors.
inline std::set<VVec> additive_span(const std::vector<VVec>& gens, int dim, int m) {
  std::set<VVec> span{VVec(dim, 0)};
  std::vector<VVec> queue{VVec(dim, 0)};
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (const auto& g : gens) {
      VVec s = queue[h];
      for (int k = 0; k < dim; ++k) s[k] = (s[k] + g[k]) % m;
      if (span.insert(s).second) queue.push_back(s);
    }
  return span;
}

struct ConstCheck {
  bool primary_generates = false;  // images of N_{ab11} alone
  bool secondary_used = false;     // a - b is a relative root
  bool generates = false;
};

/// Whether the images of N_{ab11} (together with the extra terms when a - b is
/// a relative root) generate V_{a+b} as an abelian group.
inline ConstCheck lemma_const_check(const GroupModel& model, const RelativeRoot& a, const RelativeRoot& b) {
  if (!model.has_root(a + b) || opposite_multiples(a, b))
    throw PreconditionError("constant check needs a + b a relative root and m a != -k b");
  const int m = model.modulus();
  const int dim = model.space(a + b).dim();
  const auto full = static_cast<std::size_t>(std::pow(m, dim) + 0.5);
  std::vector<VVec> images;
  for (const auto& u : all_vectors(model.space(a).dim(), m))
    for (const auto& v : all_vectors(model.space(b).dim(), m))
      images.push_back(commutator_component(model, a, u, b, v, 1, 1));
  ConstCheck c;
  c.primary_generates = additive_span(images, dim, m).size() == full;
  c.generates = c.primary_generates;
  const RelativeRoot d = a - b;
  if (model.has_root(d) && !opposite_multiples(d, b)) {
    c.secondary_used = true;
    if (model.has_root(2 * b) && !opposite_multiples(d, 2 * b))
      for (const auto& u : all_vectors(model.space(d).dim(), m))
        for (const auto& v : all_vectors(model.space(2 * b).dim(), m))
          images.push_back(commutator_component(model, d, u, 2 * b, v, 1, 1));
    for (const auto& u : all_vectors(model.space(d).dim(), m))
      for (const auto& v : all_vectors(model.space(b).dim(), m))
        images.push_back(commutator_component(model, d, u, b, v, 1, 2));
    c.generates = additive_span(images, dim, m).size() == full;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Gauss cell

struct GaussFactors {
  ModMatrix upper;  // in U_P
  ModMatrix levi;   // in L_P
  ModMatrix lower;  // in U_{P^-}
};

namespace detail {
using DynMat = std::vector<std::vector<int>>;

inline DynMat dyn_mul(const DynMat& a, const DynMat& b, int m) {
  const std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  DynMat out(r, std::vector<int>(c, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      long long s = 0;
      for (std::size_t t = 0; t < k; ++t) s += static_cast<long long>(a[i][t]) * b[t][j];
      out[i][j] = static_cast<int>(s % m);
    }
  return out;
}

inline ModMatrix to_mod(const DynMat& a) {
  ModMatrix r = ModMatrix::zero(static_cast<int>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) r.set(static_cast<int>(i), static_cast<int>(j), a[i][j]);
  return r;
}

inline DynMat to_dyn(const ModMatrix& a) {
  DynMat r(a.n, std::vector<int>(a.n));
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r[i][j] = a(i, j);
  return r;
}
}  // namespace detail

/// Verdict by the minor criterion: every trailing block principal minor of g
/// (in the Gauss order) is a unit.
inline bool gauss_minor_test(const GroupModel& model, const ModMatrix& g) {
  const ZmRing& ring = model.ring();
  const auto& blocks = model.gauss_blocks();
  std::vector<int> idx;
  for (std::size_t b = blocks.size(); b-- > 1;) {
    idx.insert(idx.begin(), blocks[b].begin(), blocks[b].end());
    if (!ring.is_unit(principal_minor(g, idx, model.modulus()))) return false;
  }
  return true;
}

/// g = upper * levi * lower with upper in U_P, levi in L_P, lower in U_{P^-},
/// by successive Schur complements on the trailing block.
inline std::optional<GaussFactors> gauss_cell_membership(const GroupModel& model, const ModMatrix& g) {
  using detail::DynMat;
  const int m = model.modulus(), n = model.degree();
  const std::vector<int> order = gauss_order(model);
  std::vector<int> sizes;
  for (const auto& b : model.gauss_blocks()) sizes.push_back(static_cast<int>(b.size()));

  DynMat s(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s[i][j] = g(order[i], order[j]);
  DynMat up(n, std::vector<int>(n, 0)), lo(n, std::vector<int>(n, 0)), lv(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) up[i][i] = lo[i][i] = 1;

  int size = n;
  for (std::size_t b = sizes.size(); b-- > 1;) {
    const int dsz = sizes[b], asz = size - dsz;
    DynMat d(dsz, std::vector<int>(dsz)), bm(asz, std::vector<int>(dsz)), cm(dsz, std::vector<int>(asz)),
        a(asz, std::vector<int>(asz));
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) {
        const int v = s[i][j];
        if (i < asz && j < asz) a[i][j] = v;
        else if (i < asz) bm[i][j - asz] = v;
        else if (j < asz) cm[i - asz][j] = v;
        else d[i - asz][j - asz] = v;
      }
    const ModMatrix dm = detail::to_mod(d);
    if (!model.ring().is_unit(det(dm, m))) return std::nullopt;
    const DynMat dinv = detail::to_dyn(inverse(dm, m));
    const DynMat bd = detail::dyn_mul(bm, dinv, m);
    const DynMat dc = detail::dyn_mul(dinv, cm, m);
    const DynMat bdc = detail::dyn_mul(bd, cm, m);
    for (int i = 0; i < asz; ++i)
      for (int j = 0; j < dsz; ++j) up[i][asz + j] = bd[i][j];
    for (int i = 0; i < dsz; ++i)
      for (int j = 0; j < asz; ++j) lo[asz + i][j] = dc[i][j];
    for (int i = 0; i < dsz; ++i)
      for (int j = 0; j < dsz; ++j) lv[asz + i][asz + j] = d[i][j];
    DynMat next(asz, std::vector<int>(asz));
    for (int i = 0; i < asz; ++i)
      for (int j = 0; j < asz; ++j) next[i][j] = ((a[i][j] - bdc[i][j]) % m + m) % m;
    s = std::move(next);
    size = asz;
  }
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) lv[i][j] = s[i][j];

  // The collected U and V blocks compose to the factors in one step: each
  // stage only fills entries outside the blocks touched by earlier stages.
  auto unpermute = [&](const DynMat& x) {
    ModMatrix r = ModMatrix::zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.set(order[i], order[j], x[i][j]);
    return r;
  };
  GaussFactors f{unpermute(up), unpermute(lv), unpermute(lo)};
  if (mat_mul(mat_mul(f.upper, f.levi, m), f.lower, m) != g)
    throw PreconditionError("Gauss factorization failed to round-trip");
  return f;
}

// ---------------------------------------------------------------------------
// Hypotheses

struct HypothesisReport {
  bool irreducible = true;
  std::set<int> structure_primes;
  bool primes_invertible = true;
  int isotropic_rank = 0;
  bool rank_ok = true;
  bool residue_two_exception = false;  // residue field F_2 with type C_2 or G_2

  /// All hypotheses of the classification hold.
  bool passes() const { return irreducible && primes_invertible && rank_ok; }
  /// Perfectness of E additionally needs no residue field F_2 in type C_2/G_2.
  bool perfect_expected() const { return passes() && !residue_two_exception; }
};

inline HypothesisReport hypothesis_check(const GroupModel& model) {
  HypothesisReport h;
  const int m = model.modulus();
  h.structure_primes = structure_constant_primes(model.absolute());
  for (int p : h.structure_primes)
    if (m % p == 0) h.primes_invertible = false;
  h.isotropic_rank = model.isotropic_rank();
  h.rank_ok = h.isotropic_rank >= 2;
  const auto fam = model.absolute().type().family;
  h.residue_two_exception = m % 2 == 0 && ((fam == Family::C && model.absolute().rank() == 2) || fam == Family::G);
  return h;
}

// ---------------------------------------------------------------------------
// Cross-check of the matrix parabolic against the abstract projection

/// The model's relative roots and root-space fibers agree with the relative
/// root system of (absolute type, marked set, trivial twist).
inline bool matches_relative_system(const GroupModel& model) {
  const RelativeRootSystem rel = build_relative({model.absolute(), model.marked(), {}});
  if (rel.roots().size() != model.root_spaces().size()) return false;
  for (const auto& s : model.root_spaces()) {
    if (!rel.contains(s.root)) return false;
    const auto& fib = rel.fiber(s.root);
    if (std::set<Root>(fib.begin(), fib.end()) != std::set<Root>(s.absolute.begin(), s.absolute.end())) return false;
    if (s.absolute.size() != fib.size()) return false;
  }
  return true;
}

}  // namespace sandwich
