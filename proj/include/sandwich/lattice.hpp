#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "sandwich/chevgroup.hpp"
#include "sandwich/element_table.hpp"
#include "sandwich/subgroup.hpp"

namespace sandwich {

/// Runs body(i) for i in [0, n) on up to `jobs` threads. Results must be
/// written to per-index slots.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& body) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) body(i);
    });
  for (auto& th : pool) th.join();
}

/// Orbits of E-conjugation, ordered by least member.
inline std::vector<std::vector<ElemId>> e_conjugacy_orbits(const ElementTable& t) {
  return generator_conjugacy_orbits(t);
}

/// Everything the theorem-level checks share for one model: the element
/// table, the sandwich bounds for each ideal, and the normal closure of each
/// orbit representative.
struct LatticeContext {
  ElementTable table;
  HypothesisReport hypotheses;
  std::vector<ZmIdeal> ideals;
  Subgroup elementary;
  Subgroup center_subgroup;
  std::vector<Subgroup> relative_elementary;  // E(R,q), per ideal
  std::vector<Subgroup> congruence;           // G(R,q)
  std::vector<Subgroup> full_congruence;      // C(R,q)
  std::vector<std::vector<ElemId>> orbits;
  std::vector<Subgroup> orbit_closures;
  std::vector<int> orbit_of;  // element -> orbit

  explicit LatticeContext(ElementTable t) : table(std::move(t)) {}

  static LatticeContext build(const GroupModel& model, std::size_t cap = kDefaultCap, int jobs = 1) {
    LatticeContext c(ElementTable::build(model, cap));
    const ElementTable& t = c.table;
    c.hypotheses = hypothesis_check(model);
    c.ideals = ring_ideals(model.ring());
    c.elementary = elementary_subgroup(t);
    c.center_subgroup = center(t);
    for (const auto& q : c.ideals) {
      c.relative_elementary.push_back(relative_elementary_subgroup(t, q));
      c.congruence.push_back(congruence_subgroup(t, q));
      c.full_congruence.push_back(full_congruence_subgroup(t, q, cap));
    }
    c.orbits = e_conjugacy_orbits(t);
    c.orbit_of.assign(t.size(), -1);
    for (std::size_t o = 0; o < c.orbits.size(); ++o)
      for (ElemId x : c.orbits[o]) c.orbit_of[x] = static_cast<int>(o);
    c.orbit_closures.resize(c.orbits.size());
    parallel_for(c.orbits.size(), jobs, [&](std::size_t o) {
      c.orbit_closures[o] = normal_closure(t, {c.orbits[o].front()}, t.generator_ids());
    });
    return c;
  }

  const GroupModel& model() const { return table.model(); }

  /// Ideals q with E(R,q) <= H <= C(R,q).
  std::vector<ZmIdeal> admissible_ideals(const Subgroup& h) const {
    std::vector<ZmIdeal> out;
    for (std::size_t i = 0; i < ideals.size(); ++i)
      if (relative_elementary[i].subset_of(h) && h.subset_of(full_congruence[i])) out.push_back(ideals[i]);
    return out;
  }
  std::optional<ZmIdeal> level(const Subgroup& h) const {
    const auto a = admissible_ideals(h);
    if (a.size() != 1) return std::nullopt;
    return a.front();
  }
  std::size_t ideal_slot(const ZmIdeal& q) const {
    return static_cast<std::size_t>(std::find(ideals.begin(), ideals.end(), q) - ideals.begin());
  }
};

// ---------------------------------------------------------------------------
// Sandwich classification

struct SandwichResult {
  ElemId seed = 0;
  std::size_t orbit_size = 0;
  std::size_t closure_order = 0;
  std::vector<ZmIdeal> admissible;

  std::string verdict() const { return admissible.size() == 1 ? "unique" : admissible.empty() ? "none" : "multiple"; }
};

inline std::vector<SandwichResult> sandwich_classify(const LatticeContext& c) {
  std::vector<SandwichResult> out;
  for (std::size_t o = 0; o < c.orbits.size(); ++o) {
    SandwichResult r;
    r.seed = c.orbits[o].front();
    r.orbit_size = c.orbits[o].size();
    r.closure_order = c.orbit_closures[o].order();
    r.admissible = c.admissible_ideals(c.orbit_closures[o]);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commutator formula and independence of the parabolic

struct CommutatorFormulaEntry {
  ZmIdeal ideal;
  std::size_t commutator_order = 0;  // |[G(R,q), E(R)]|
  std::size_t relative_order = 0;    // |E(R,q)|
  bool equal = false;
};

inline std::vector<CommutatorFormulaEntry> verify_commutator_formula(const LatticeContext& c) {
  std::vector<CommutatorFormulaEntry> out;
  for (std::size_t i = 0; i < c.ideals.size(); ++i) {
    const Subgroup comm = commutator_subgroup(c.table, c.congruence[i], c.elementary);
    out.push_back({c.ideals[i], comm.order(), c.relative_elementary[i].order(), comm == c.relative_elementary[i]});
  }
  return out;
}

/// Block compositions of n with at least two parts, coarsest last.
inline std::vector<std::vector<int>> proper_compositions(int n) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
    std::vector<int> parts{1};
    for (int i = 0; i + 1 < n; ++i) {
      if (mask >> i & 1) parts.back() += 1;
      else parts.push_back(1);
    }
    if (parts.size() >= 2) out.push_back(parts);
  }
  return out;
}

struct ParabolicIndependenceEntry {
  ZmIdeal ideal;
  std::vector<std::string> parabolics;
  std::vector<std::size_t> orders;
  bool equal = false;
};

/// E(R,q) computed from every proper block composition agrees.
inline std::vector<ParabolicIndependenceEntry> verify_parabolic_independence(const LatticeContext& c) {
  const GroupModel& base = c.model();
  if (base.kind() != GroupKind::SL || base.degree() < 3)
    throw PreconditionError("parabolic independence is checked on SL_n with n >= 3");
  std::vector<ParabolicIndependenceEntry> out;
  const auto comps = proper_compositions(base.degree());
  for (std::size_t i = 0; i < c.ideals.size(); ++i) {
    ParabolicIndependenceEntry e{c.ideals[i], {}, {}, true};
    for (const auto& blocks : comps) {
      const GroupModel other = base.with_blocks(blocks);
      const Subgroup s = relative_elementary_subgroup(c.table, other, c.ideals[i]);
      e.parabolics.push_back(other.parabolic_name());
      e.orders.push_back(s.order());
      if (!(s == c.relative_elementary[i])) e.equal = false;
    }
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Level theorem

struct LevelEntry {
  std::string root;
  std::size_t intersection = 0;  // |H ∩ X_alpha(V_alpha)|
  std::size_t expected = 0;      // |X_alpha(q V_alpha)|
  bool equal = false;
};

struct LevelReport {
  ElemId seed = 0;
  ZmIdeal level;
  bool normalized = false;
  std::vector<LevelEntry> entries;
  bool equal() const {
    return normalized && std::all_of(entries.begin(), entries.end(), [](const LevelEntry& e) { return e.equal; });
  }
};

inline LevelReport verify_level_theorem(const LatticeContext& c, const Subgroup& h, const ZmIdeal& q, ElemId seed = 0) {
  const ElementTable& t = c.table;
  LevelReport r;
  r.seed = seed;
  r.level = q;
  r.normalized = is_normalized_by(t, h, t.generator_ids());
  const ZmIdeal unit{1, q.m};
  for (const auto& s : c.model().root_spaces()) {
    std::set<ElemId> found;
    for (ElemId x : root_subgroup_elements(t, c.model(), s.root, unit))
      if (h.contains(x)) found.insert(x);
    const auto expected = root_subgroup_elements(t, c.model(), s.root, q);
    const bool eq = std::set<ElemId>(expected.begin(), expected.end()) == found;
    r.entries.push_back({s.label, found.size(), expected.size(), eq});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Structure theorems

struct StructureReport {
  std::size_t group_order = 0;
  std::size_t elementary_order = 0;
  bool e_normal = false;
  std::size_t center_order = 0;
  bool centralizer_is_center = false;
  bool scalar_center_matches = false;
  std::optional<bool> brute_center_matches;  // pairwise check on small groups
  std::size_t derived_order = 0;
  std::size_t derived_index = 0;
  std::size_t hall_witt_checked = 0;
  std::size_t hall_witt_failures = 0;

  bool perfect() const { return derived_order == elementary_order; }
};

inline std::vector<ElemId> scalar_elements(const ElementTable& t) {
  std::vector<ElemId> out;
  const int n = t.model().degree(), m = t.model().modulus();
  for (int lam = 1; lam < m; ++lam) {
    ModMatrix x = ModMatrix::identity(n);
    for (int i = 0; i < n; ++i) x.set(i, i, lam);
    if (!t.model().satisfies_invariant(x)) continue;
    if (auto i = t.find(x)) out.push_back(*i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline StructureReport verify_structure_theorems(const LatticeContext& c) {
  const ElementTable& t = c.table;
  StructureReport r;
  r.group_order = t.size();
  r.elementary_order = c.elementary.order();
  const Subgroup whole = Subgroup::whole(t.size());
  r.e_normal = is_normalized_by(t, c.elementary, generating_set(t, whole));
  const Subgroup cent_e = centralizer(t, c.elementary);
  const Subgroup cent_g = centralizer(t, whole);
  r.center_order = cent_g.order();
  r.centralizer_is_center = cent_e == cent_g;
  const auto scalars = scalar_elements(t);
  r.scalar_center_matches = scalars == cent_g.elements();
  if (t.size() <= 6000) {
    bool ok = true;
    for (ElemId x = 0; x < t.size() && ok; ++x) {
      bool central = true;
      for (ElemId y = 0; y < t.size() && central; ++y) central = t.mul(x, y) == t.mul(y, x);
      ok = central == cent_g.contains(x);
    }
    r.brute_center_matches = ok;
  }
  const Subgroup derived = commutator_subgroup(t, c.elementary, c.elementary);
  r.derived_order = derived.order();
  r.derived_index = c.elementary.order() / std::max<std::size_t>(derived.order(), 1);
  for (const auto& h : c.orbit_closures) {
    const Subgroup he = commutator_subgroup(t, h, c.elementary);
    const Subgroup hee = commutator_subgroup(t, he, c.elementary);
    ++r.hall_witt_checked;
    if (!(he == hee)) ++r.hall_witt_failures;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Extraction of root unipotents

struct RootUnipotent {
  RelativeRoot root;
  std::string label;
  VVec value;
  ElemId element = 0;
};

/// Every X_alpha(v) with v != 0, in root order then lexicographic v.
inline std::vector<RootUnipotent> nontrivial_root_elements(const ElementTable& t) {
  std::vector<RootUnipotent> out;
  const GroupModel& model = t.model();
  for (const auto& s : model.root_spaces())
    for (const auto& v : all_vectors(s.dim(), model.modulus())) {
      if (is_zero_vec(v)) continue;
      out.push_back({s.root, s.label, v, t.index_of(relative_root_element(model, s.root, v))});
    }
  return out;
}

inline std::optional<RootUnipotent> extract_unipotent(const std::vector<RootUnipotent>& candidates, const Subgroup& h) {
  for (const auto& u : candidates)
    if (h.contains(u.element)) return u;
  return std::nullopt;
}

struct ExtractionReport {
  std::size_t subgroups = 0;
  std::size_t noncentral = 0;
  std::size_t found = 0;
  std::size_t failures = 0;  // noncentral without a root unipotent
  std::size_t radical_noncentral = 0;
  std::size_t radical_failures = 0;
  ZmIdeal radical;
};

inline ExtractionReport verify_extraction(const LatticeContext& c) {
  const ElementTable& t = c.table;
  ExtractionReport r;
  r.radical = jacobson_radical(c.model().ring());
  const Subgroup rad_congruence = congruence_subgroup(t, r.radical);
  const auto candidates = nontrivial_root_elements(t);
  for (const auto& h : c.orbit_closures) {
    ++r.subgroups;
    const auto u = extract_unipotent(candidates, h);
    if (u) ++r.found;
    if (!h.subset_of(c.center_subgroup)) {
      ++r.noncentral;
      if (!u) ++r.failures;
    }
    bool rad_noncentral = false;
    for (ElemId x : h.elements())
      if (rad_congruence.contains(x) && !c.center_subgroup.contains(x)) {
        rad_noncentral = true;
        break;
      }
    if (rad_noncentral) {
      ++r.radical_noncentral;
      if (!u) ++r.radical_failures;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Simplicity over prime fields

struct SimplicityReport {
  std::size_t elements_covered = 0;
  std::size_t closures_computed = 0;
  std::size_t full = 0;
  std::size_t central = 0;
  std::size_t failures = 0;  // proper noncentral closures
  bool per_element = false;  // every element closed individually, not via orbits
};

inline SimplicityReport simplicity_check(const LatticeContext& c, std::size_t per_element_limit = 6000) {
  if (!c.model().ring().is_prime()) throw PreconditionError("simplicity check needs a prime modulus");
  const ElementTable& t = c.table;
  SimplicityReport r;
  r.per_element = t.size() <= per_element_limit;
  auto judge = [&](const Subgroup& h) {
    ++r.closures_computed;
    if (h.order() == t.size()) ++r.full;
    else if (h.subset_of(c.center_subgroup)) ++r.central;
    else ++r.failures;
  };
  if (r.per_element) {
    for (ElemId x = 1; x < t.size(); ++x) {
      judge(normal_closure(t, {x}, t.generator_ids()));
      ++r.elements_covered;
    }
  } else {
    for (std::size_t o = 0; o < c.orbits.size(); ++o) {
      if (c.orbits[o].front() == ElementTable::identity()) continue;
      judge(c.orbit_closures[o]);
      r.elements_covered += c.orbits[o].size();
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Join compatibility of levels

struct JoinReport {
  std::size_t pairs = 0;
  std::size_t failures = 0;
};

/// For sampled (g, g'), the level of <g, g'>^E is the sum of the two levels.
inline JoinReport verify_join_compatibility(const LatticeContext& c, std::size_t pairs, std::uint32_t seed) {
  const ElementTable& t = c.table;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<ElemId> pick(0, static_cast<ElemId>(t.size() - 1));
  JoinReport r;
  for (std::size_t k = 0; k < pairs; ++k) {
    const ElemId g = pick(rng), h = pick(rng);
    const auto lg = c.level(c.orbit_closures[c.orbit_of[g]]);
    const auto lh = c.level(c.orbit_closures[c.orbit_of[h]]);
    const auto lj = c.level(normal_closure(t, {g, h}, t.generator_ids()));
    ++r.pairs;
    if (!lg || !lh || !lj || *lj != lg->sum(*lh)) ++r.failures;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Centralizer lemmas

struct CentralizerLemmaReport {
  // [g, U_P] = 1 implies g in P, over every proper parabolic (fields only).
  std::size_t cent_parabolics = 0;
  std::size_t cent_elements = 0;
  std::size_t cent_centralizing = 0;
  std::size_t cent_failures = 0;
  // x in U_{Q±} commuting with X_beta(V_beta) factors over alpha with
  // alpha + beta outside Phi_Q ∪ {0}.
  std::size_t beta_cases = 0;
  std::size_t beta_elements = 0;
  std::size_t beta_commuting = 0;
  std::size_t beta_failures = 0;
  // x in U_(beta) L_Q U_(-beta) commuting with X_beta(V_beta) lies in
  // X_{m beta}(V_{m beta}) L_Q.
  std::size_t levi_elements = 0;
  std::size_t levi_commuting = 0;
  std::size_t levi_failures = 0;

  bool ok() const { return cent_failures == 0 && beta_failures == 0 && levi_failures == 0; }
};

/// Every proper standard parabolic of the model's group.
inline std::vector<GroupModel> standard_parabolics(const GroupModel& model) {
  std::vector<GroupModel> out;
  if (model.kind() == GroupKind::SL) {
    for (const auto& b : proper_compositions(model.degree())) out.push_back(model.with_blocks(b));
  } else {
    for (auto p : {SpParabolic::Borel, SpParabolic::Line, SpParabolic::Siegel}) out.push_back(model.with_sp_parabolic(p));
  }
  return out;
}

/// All products prod X_alpha(v_alpha) over the given roots in canonical order.
inline std::vector<ModMatrix> enumerate_unipotent(const GroupModel& q, const std::vector<RelativeRoot>& roots) {
  const auto order = canonical_factor_order(roots);
  std::vector<ModMatrix> out{ModMatrix::identity(q.degree())};
  for (const auto& a : order) {
    std::vector<ModMatrix> next;
    const auto vs = all_vectors(q.space(a).dim(), q.modulus());
    for (const auto& x : out)
      for (const auto& v : vs) next.push_back(mat_mul(x, relative_root_element(q, a, v), q.modulus()));
    out = std::move(next);
  }
  return out;
}

inline bool commutes_with_root_group(const GroupModel& q, const ModMatrix& x, const RelativeRoot& b) {
  const int m = q.modulus();
  for (const auto& v : all_vectors(q.space(b).dim(), m)) {
    const ModMatrix y = relative_root_element(q, b, v);
    if (mat_mul(x, y, m) != mat_mul(y, x, m)) return false;
  }
  return true;
}

inline CentralizerLemmaReport verify_centralizer_lemmas(const ElementTable& t) {
  const GroupModel& base = t.model();
  const int m = base.modulus();
  CentralizerLemmaReport r;
  const auto parabolics = standard_parabolics(base);

  if (base.ring().is_prime()) {
    for (const auto& p : parabolics) {
      ++r.cent_parabolics;
      std::vector<ElemId> unipotent_gens;
      for (const auto& s : p.root_spaces()) {
        if (!s.root.is_positive()) continue;
        for (int k = 0; k < s.dim(); ++k)
          unipotent_gens.push_back(t.index_of(relative_root_element(p, s.root, basis_vector(s.dim(), k))));
      }
      const Subgroup cent = centralizer_of(t, unipotent_gens);
      r.cent_elements += t.size();
      for (ElemId g : cent.elements()) {
        ++r.cent_centralizing;
        if (!in_parabolic(p, t.element(g))) ++r.cent_failures;
      }
    }
  }

  std::vector<ModMatrix> levi_all;
  for (const auto& q : parabolics) {
    if (q.relative_rank() < 2) continue;
    levi_all.clear();
    for (ElemId i = 0; i < t.size(); ++i)
      if (in_levi(q, t.element(i))) levi_all.push_back(t.element(i));
    std::vector<RelativeRoot> pos, neg;
    for (const auto& a : q.relative_roots()) (a.is_positive() ? pos : neg).push_back(a);
    for (const auto& beta : pos) {
      if (beta.height() != 1) continue;
      ++r.beta_cases;
      for (const auto* side : {&pos, &neg}) {
        for (const auto& x : enumerate_unipotent(q, *side)) {
          ++r.beta_elements;
          if (!commutes_with_root_group(q, x, beta)) continue;
          ++r.beta_commuting;
          for (const auto& [a, v] : unipotent_factor(q, *side, x)) {
            if (is_zero_vec(v)) continue;
            const RelativeRoot s = a + beta;
            if (s.is_zero() || q.has_root(s)) {
              ++r.beta_failures;
              break;
            }
          }
        }
      }
      // Small Levi: U_(beta) L_Q U_(-beta).
      std::vector<RelativeRoot> up, down;
      int top = 0;
      for (int i = 1; i <= 4; ++i)
        if (q.has_root(i * beta)) {
          up.push_back(i * beta);
          down.push_back(-(i * beta));
          top = i;
        }
      std::set<ModMatrix> candidates;
      const auto ups = enumerate_unipotent(q, up), downs = enumerate_unipotent(q, down);
      for (const auto& a : ups)
        for (const auto& h : levi_all)
          for (const auto& b : downs) candidates.insert(mat_mul(mat_mul(a, h, m), b, m));
      for (const auto& x : candidates) {
        ++r.levi_elements;
        if (!commutes_with_root_group(q, x, beta)) continue;
        ++r.levi_commuting;
        bool ok = false;
        for (const auto& v : all_vectors(q.space(top * beta).dim(), m)) {
          const ModMatrix rest = mat_mul(inverse(relative_root_element(q, top * beta, v), m), x, m);
          if (in_levi(q, rest)) {
            ok = true;
            break;
          }
        }
        if (!ok) ++r.levi_failures;
      }
    }
  }
  return r;
}

}  // namespace sandwich
