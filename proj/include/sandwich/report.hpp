#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "sandwich/chevgroup.hpp"
#include "sandwich/lattice.hpp"
#include "sandwich/relroots.hpp"
#include "sandwich/rootsys.hpp"

namespace sandwich {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

struct SuiteOptions {
  int roots_max_rank = 8;
  int relroots_max_rank = 5;
  int identity_triples = 1000;  // random triples for the commutator identity
  int pair_samples = 100;       // (u, v) samples per root pair
  int join_pairs = 100;
  std::uint32_t seed = 20261016;
};

/// Collects check records for one suite. A check that is not asserted never
/// fails the run: a pass is recorded as informational, a failure as an
/// expected exception.
class CheckList {
 public:
  void add(const std::string& name, const std::string& anchor, bool passed, Json data, bool asserted = true) {
    std::string verdict = asserted ? (passed ? "pass" : "fail") : (passed ? "informational" : "expected_exception");
    if (asserted && !passed) failed_ = true;
    Json rec;
    rec["name"] = name;
    rec["anchor"] = anchor;
    rec["verdict"] = verdict;
    rec["data"] = std::move(data);
    checks_.push_back(std::move(rec));
  }
  bool failed() const { return failed_; }
  Json to_json() const {
    Json j;
    j["verdict"] = failed_ ? "fail" : "pass";
    j["checks"] = checks_;
    return j;
  }

 private:
  std::vector<Json> checks_;
  bool failed_ = false;
};

inline Json roots_json(const std::vector<Root>& rs) {
  Json a = Json::array();
  for (const auto& r : rs) a.push_back(r.values());
  return a;
}
inline Json rel_json(const std::vector<RelativeRoot>& rs) {
  Json a = Json::array();
  for (const auto& r : rs) a.push_back(r.values());
  return a;
}
inline Json ideals_json(const std::vector<ZmIdeal>& qs) {
  Json a = Json::array();
  for (const auto& q : qs) a.push_back(q.name());
  return a;
}

// ---------------------------------------------------------------------------
// roots

inline Json run_roots_suite(const SuiteOptions& opt) {
  CheckList checks;
  Json per_type = Json::array();
  bool all_ok = true;
  for (const auto& t : all_types_up_to(opt.roots_max_rank)) {
    const RootSystem sys(t);
    const auto a = audit_root_system(sys);
    all_ok = all_ok && a.ok();
    Json e;
    e["type"] = t.name();
    e["roots"] = sys.roots().size();
    e["highest_root"] = sys.highest_root().values();
    e["automorphisms"] = a.automorphism_count;
    e["structure_primes"] = structure_constant_primes(sys);
    e["ok"] = a.ok();
    per_type.push_back(e);
  }
  checks.add("root system axioms", "root system in the sense of Bourbaki", all_ok, {{"types", per_type}});

  const RootSystem a3({Family::A, 3}), c2({Family::C, 2}), g2({Family::G, 2});
  const bool primes_ok = structure_constant_primes(a3).empty() && structure_constant_primes(c2) == std::set<int>{2} &&
                         structure_constant_primes(g2) == std::set<int>{2, 3};
  checks.add("structure constant primes", "structure constants of the root system", primes_ok,
             {{"A_3", structure_constant_primes(a3)},
              {"C_2", structure_constant_primes(c2)},
              {"G_2", structure_constant_primes(g2)}});

  bool sums_ok = true;
  for (const auto& t : all_types_up_to(std::min(opt.roots_max_rank, 4))) {
    const RootSystem sys(t);
    for (const auto& x : sys.roots())
      for (const auto& y : sys.roots()) {
        const auto s = root_sum(sys, x, y), s2 = root_sum(sys, y, x), n = root_sum(sys, -x, -y);
        if (s != s2 || s.has_value() != n.has_value() || (s && *n != -*s)) sums_ok = false;
      }
  }
  checks.add("root sums commute and negate", "root system in the sense of Bourbaki", sums_ok, Json::object());
  return checks.to_json();
}

// ---------------------------------------------------------------------------
// relroots

inline Json run_relroots_suite(const SuiteOptions& opt) {
  CheckList checks;
  auto data = enumerate_relative_data(opt.relroots_max_rank);
  const RootSystem e6({Family::E, 6});
  const auto e6_extra = enumerate_twisted_data(e6, DiagramAutomorphism{{5, 1, 4, 3, 2, 0}});
  data.insert(data.end(), e6_extra.begin(), e6_extra.end());

  std::size_t adj_checks = 0, adj_fail = 0, add_checks = 0, add_fail = 0, sig_checks = 0, sig_fail = 0,
              form_checks = 0, form_fail = 0, proj_fail = 0, literal_excluded = 0;
  Json failures = Json::array();
  for (const auto& d : data) {
    const RelativeRootSystem rel = build_relative(d);
    const auto a = audit_relative(rel);
    adj_checks += a.adjacency_checks;
    adj_fail += a.adjacency_failures;
    add_checks += a.additivity_checks;
    add_fail += a.additivity_failures;
    sig_checks += a.sigma_checks;
    sig_fail += a.sigma_failures;
    form_checks += a.form_checks;
    form_fail += a.form_mismatches;
    if (!a.projection_ok) ++proj_fail;
    for (const auto& b : relative_simple_roots(rel)) {
      const auto sigma = sigma_set(rel, b);
      if (std::find(sigma.begin(), sigma.end(), -b) == sigma.end()) ++literal_excluded;
    }
    if (!a.ok() && failures.size() < 20) failures.push_back({{"base", a.base}, {"marked", a.marked}});
  }
  checks.add("relative root data", "Lemma relroots", proj_fail == 0,
             {{"data", data.size()}, {"projection_failures", proj_fail}, {"failing_data", failures}});
  checks.add("adjacent simple roots", "Lemma adj-simple-roots", adj_fail == 0,
             {{"checks", adj_checks}, {"counterexamples", adj_fail}});
  checks.add("fiber additivity", "Lemma parab-centr-root", add_fail == 0,
             {{"checks", add_checks}, {"counterexamples", add_fail}});
  checks.add("parabolic set properties", "Lemma parab-centr-root", sig_fail == 0,
             {{"checks", sig_checks}, {"counterexamples", sig_fail}});
  checks.add("parabolic set forms agree", "Lemma parab-centr-root", form_fail == 0,
             {{"checks", form_checks}, {"mismatches", form_fail}});
  checks.add("parabolic set requirement reading", "Lemma centr-beta", true,
             {{"implemented", "contains every alpha with alpha + beta outside the relative roots and zero"},
              {"literal_reading_violations", literal_excluded},
              {"note", "read literally the requirement would also demand -beta, which the pairing formula rejects"}},
             false);

  Json folds = Json::array();
  bool folds_ok = true;
  for (const auto& target : std::vector<RootSystemType>{{Family::C, 2}, {Family::C, 3}, {Family::C, 4}, {Family::B, 2},
                                                        {Family::B, 3}, {Family::B, 4}, {Family::B, 5}, {Family::B, 6},
                                                        {Family::B, 7}, {Family::F, 4}, {Family::G, 2}}) {
    const Unfolding u = unfolding_of(target);
    const RootSystem cover(u.cover);
    const auto folded = fold(cover, generate_automorphism_group(u.generators, cover.rank()));
    const auto match = match_root_system(folded, RootSystem(target));
    folds_ok = folds_ok && match.has_value();
    folds.push_back({{"cover", u.cover.name()}, {"target", target.name()}, {"matches", match.has_value()}});
  }
  checks.add("foldings", "Lemma parab-centr-root", folds_ok, {{"foldings", folds}});
  return checks.to_json();
}

// ---------------------------------------------------------------------------
// group

inline VVec random_vec(int dim, int m, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(0, m - 1);
  VVec v(dim);
  for (int& c : v) c = d(rng);
  return v;
}

inline Json hypotheses_json(const HypothesisReport& h) {
  return {{"irreducible", h.irreducible},
          {"structure_primes", h.structure_primes},
          {"structure_primes_invertible", h.primes_invertible},
          {"isotropic_rank", h.isotropic_rank},
          {"isotropic_rank_at_least_2", h.rank_ok},
          {"residue_field_2_exception", h.residue_two_exception},
          {"passes", h.passes()}};
}

inline Json run_group_suite(const LatticeContext& c, const SuiteOptions& opt) {
  const ElementTable& t = c.table;
  const GroupModel& model = t.model();
  const int m = model.modulus();
  const bool assert_theorems = c.hypotheses.passes();
  std::mt19937 rng(opt.seed);
  CheckList checks;

  {
    const auto formula = group_order_formula(model.kind(), model.degree(), m);
    const auto scan = predicate_scan(model);
    bool scan_ok = true;
    if (scan) {
      scan_ok = scan->size() == t.size();
      for (const auto& x : *scan) scan_ok = scan_ok && t.find(x).has_value();
    }
    checks.add("element table", "group enumeration", formula == t.size() && scan_ok,
               {{"order", t.size()}, {"order_formula", formula}, {"predicate_scan", scan ? (scan_ok ? "agree" : "disagree") : "skipped"}});
  }

  const auto parabolics = standard_parabolics(model);
  {
    bool ok = true;
    std::size_t tested = 0;
    for (const auto& g : model.generators()) {
      ok = ok && model.satisfies_invariant(root_element(model, g.delta, 1));
      ++tested;
    }
    for (const auto& p : parabolics)
      for (const auto& s : p.root_spaces())
        for (int k = 0; k < 20; ++k) {
          ok = ok && p.satisfies_invariant(relative_root_element(p, s.root, random_vec(s.dim(), m, rng)));
          ++tested;
        }
    checks.add("generator invariants", "Lemma relschemes", ok, {{"elements_tested", tested}});
  }

  checks.add("elementary subgroup", "elementary subgroup E_P(R)", c.elementary.order() == t.size(),
             {{"order", c.elementary.order()}, {"group_order", t.size()}});

  {
    bool ok = true;
    Json per = Json::array();
    for (const auto& p : parabolics) {
      const bool match = matches_relative_system(p);
      ok = ok && match;
      per.push_back({{"parabolic", p.parabolic_name()}, {"relative_roots", p.root_spaces().size()}, {"matches", match}});
    }
    checks.add("parabolic matches projection", "Lemma relroots", ok, {{"parabolics", per}});
  }

  {
    std::uniform_int_distribution<ElemId> pick(0, static_cast<ElemId>(t.size() - 1));
    std::size_t fails = 0;
    for (int k = 0; k < opt.identity_triples; ++k)
      if (!commutator_identity_check(t, pick(rng), pick(rng), pick(rng))) ++fails;
    checks.add("commutator identity", "commutator identity", fails == 0,
               {{"triples", opt.identity_triples}, {"failures", fails}});
  }

  {
    std::size_t pairs = 0, samples = 0, fails = 0;
    for (const auto& p : parabolics)
      for (const auto& a : p.relative_roots())
        for (const auto& b : p.relative_roots()) {
          if (opposite_multiples(a, b)) continue;
          ++pairs;
          const int da = p.space(a).dim(), db = p.space(b).dim();
          for (int k = 0; k < opt.pair_samples; ++k) {
            const VVec u = random_vec(da, m, rng), v = random_vec(db, m, rng);
            ++samples;
            const auto base = chevalley_commutator_decompose(p, a, u, b, v);
            for (int r = 0; r < m; ++r) {
              VVec ru = u, rv = v;
              for (int& x : ru) x = x * r % m;
              for (int& x : rv) x = x * r % m;
              for (const auto& term : base) {
                const VVec cu = commutator_component(p, a, ru, b, v, term.i, term.j);
                const VVec cv = commutator_component(p, a, u, b, rv, term.i, term.j);
                const int su = model.ring().pow(r, term.i), sv = model.ring().pow(r, term.j);
                for (std::size_t q = 0; q < term.value.size(); ++q) {
                  if (cu[q] != term.value[q] * su % m) ++fails;
                  if (cv[q] != term.value[q] * sv % m) ++fails;
                }
              }
              // Terms absent at (u, v) must stay absent after scaling.
              const auto scaled = chevalley_commutator_decompose(p, a, ru, b, v);
              for (const auto& s : scaled) {
                bool present = false;
                for (const auto& term : base) present = present || (term.i == s.i && term.j == s.j);
                if (!present) ++fails;
              }
            }
          }
        }
    checks.add("commutator formula homogeneity", "Lemma rootels (iii)", fails == 0,
               {{"root_pairs", pairs}, {"samples", samples}, {"scalars", m}, {"failures", fails}});
  }

  {
    std::size_t tested = 0, fails = 0, higher_terms = 0;
    for (const auto& p : parabolics)
      for (const auto& s : p.root_spaces()) {
        const auto vs = all_vectors(s.dim(), m);
        const bool exhaustive = vs.size() * vs.size() <= 4096;
        const std::size_t count = exhaustive ? vs.size() * vs.size() : 1000;
        for (std::size_t k = 0; k < count; ++k) {
          const VVec v = exhaustive ? vs[k / vs.size()] : random_vec(s.dim(), m, rng);
          const VVec w = exhaustive ? vs[k % vs.size()] : random_vec(s.dim(), m, rng);
          ++tested;
          const auto d = sum_formula_decompose(p, s.root, v, w);
          ModMatrix rhs = relative_root_element(p, s.root, d.sum);
          for (const auto& [i, val] : d.higher) rhs = mat_mul(rhs, relative_root_element(p, i * s.root, val), m);
          const ModMatrix lhs = mat_mul(relative_root_element(p, s.root, v), relative_root_element(p, s.root, w), m);
          if (lhs != rhs) ++fails;
          if (!d.higher.empty()) ++higher_terms;
          // q^i(v, w) is homogeneous of degree i and q^2 is antisymmetric.
          const auto swapped = sum_formula_decompose(p, s.root, w, v);
          for (const auto& [i, val] : d.higher) {
            for (int r = 0; r < m; ++r) {
              VVec rv = v, rw = w;
              for (int& x : rv) x = x * r % m;
              for (int& x : rw) x = x * r % m;
              VVec got(val.size(), 0);
              for (const auto& [j, val2] : sum_formula_decompose(p, s.root, rv, rw).higher)
                if (j == i) got = val2;
              for (std::size_t q = 0; q < val.size(); ++q)
                if (got[q] != val[q] * p.ring().pow(r, i) % m) ++fails;
            }
            if (i == 2) {
              VVec other(val.size(), 0);
              for (const auto& [j, val2] : swapped.higher)
                if (j == 2) other = val2;
              for (std::size_t q = 0; q < val.size(); ++q)
                if ((val[q] + other[q]) % m != 0) ++fails;
            }
          }
        }
      }
    checks.add("sum formula", "Lemma rootels (i)", fails == 0,
               {{"pairs", tested}, {"pairs_with_higher_terms", higher_terms}, {"failures", fails}});
  }

  {
    std::size_t tested = 0, fails = 0, higher_terms = 0;
    for (const auto& p : parabolics) {
      std::vector<ElemId> levi;
      for (ElemId i = 0; i < t.size(); ++i)
        if (in_levi(p, t.element(i))) levi.push_back(i);
      std::shuffle(levi.begin(), levi.end(), rng);
      if (levi.size() > 24) levi.resize(24);
      for (ElemId g : levi)
        for (const auto& s : p.root_spaces())
          for (int k = 0; k < 4; ++k) {
            const VVec v = random_vec(s.dim(), m, rng);
            ++tested;
            const auto d = levi_conjugation_decompose(p, t.element(g), s.root, v);
            ModMatrix rhs = ModMatrix::identity(p.degree());
            for (const auto& [i, val] : d) {
              rhs = mat_mul(rhs, relative_root_element(p, i * s.root, val), m);
              if (i >= 2 && !is_zero_vec(val)) ++higher_terms;
            }
            const ModMatrix& gm = t.element(g);
            if (mat_mul(mat_mul(gm, relative_root_element(p, s.root, v), m), inverse(gm, m), m) != rhs) ++fails;
            for (int r = 0; r < m; ++r) {
              VVec rv = v;
              for (int& x : rv) x = x * r % m;
              const auto dr = levi_conjugation_decompose(p, gm, s.root, rv);
              for (std::size_t q = 0; q < d.size(); ++q)
                for (std::size_t z = 0; z < d[q].second.size(); ++z)
                  if (dr[q].second[z] != d[q].second[z] * p.ring().pow(r, d[q].first) % m) ++fails;
            }
          }
    }
    checks.add("Levi conjugation", "Lemma rootels (ii)", fails == 0,
               {{"samples", tested}, {"higher_terms_observed", higher_terms}, {"failures", fails}});
  }

  {
    std::size_t tested = 0, fails = 0, membership_checked = 0;
    for (const auto& p : parabolics) {
      std::vector<RelativeRoot> pos, neg;
      for (const auto& a : p.relative_roots()) (a.is_positive() ? pos : neg).push_back(a);
      for (const auto* side : {&pos, &neg}) {
        const auto order = canonical_factor_order(*side);
        for (int k = 0; k < 100; ++k) {
          Factorization f;
          for (const auto& a : order) f.emplace_back(a, k == 0 ? VVec(p.space(a).dim(), 0) : random_vec(p.space(a).dim(), m, rng));
          ++tested;
          if (unipotent_factor(p, *side, unipotent_product(p, f)) != f) ++fails;
        }
      }
      // Membership: peeling succeeds exactly on block unipotent elements.
      const auto order = canonical_factor_order(pos);
      const std::size_t stride = std::max<std::size_t>(1, t.size() / 3000);
      for (ElemId i = 0; i < t.size(); i += static_cast<ElemId>(stride)) {
        ++membership_checked;
        const bool peeled = peel_factors(p, order, t.element(i)).has_value();
        if (peeled != in_unipotent_radical(p, t.element(i), 1)) ++fails;
      }
    }
    checks.add("unipotent factorization", "Lemma rootels (iv)", fails == 0,
               {{"round_trips", tested}, {"membership_checked", membership_checked}, {"failures", fails}});
  }

  {
    std::size_t tested = 0, members = 0, fails = 0;
    bool brute = t.size() <= 10000;
    for (const auto& p : parabolics) {
      std::set<ElemId> member_set;
      const std::size_t stride = brute ? 1 : std::max<std::size_t>(1, t.size() / 3000);
      for (ElemId i = 0; i < t.size(); i += static_cast<ElemId>(stride)) {
        ++tested;
        const ModMatrix& g = t.element(i);
        const auto f = gauss_cell_membership(p, g);
        if (f.has_value() != gauss_minor_test(p, g)) ++fails;
        if (!f) continue;
        ++members;
        member_set.insert(i);
        if (!in_unipotent_radical(p, f->upper, 1) || !in_levi(p, f->levi) || !in_unipotent_radical(p, f->lower, -1) ||
            !p.satisfies_invariant(f->upper) || !p.satisfies_invariant(f->levi) || !p.satisfies_invariant(f->lower))
          ++fails;
      }
      if (brute) {
        std::vector<ElemId> up, lv, lo;
        for (ElemId i = 0; i < t.size(); ++i) {
          const ModMatrix& g = t.element(i);
          if (in_unipotent_radical(p, g, 1)) up.push_back(i);
          if (in_unipotent_radical(p, g, -1)) lo.push_back(i);
          if (in_levi(p, g)) lv.push_back(i);
        }
        std::set<ElemId> products;
        for (ElemId u : up)
          for (ElemId l : lv) {
            const ElemId ul = t.mul(u, l);
            for (ElemId v : lo) products.insert(t.mul(ul, v));
          }
        if (products != member_set) ++fails;
      }
    }
    checks.add("Gauss cell", "Gauss cell", fails == 0,
               {{"elements_tested", tested}, {"members", members}, {"brute_force", brute}, {"failures", fails}});
  }

  {
    std::size_t cases = 0, missing = 0;
    for (const auto& p : parabolics)
      for (const auto& a : p.relative_roots())
        for (const auto& b : p.relative_roots()) {
          if (!p.has_root(a + b) || opposite_multiples(a, b)) continue;
          const auto gens = standard_basis(p, a);
          for (const auto& u : all_vectors(p.space(b).dim(), m)) {
            if (is_zero_vec(u)) continue;
            ++cases;
            if (!lemma_ABe_witness(p, a, b, u, gens)) ++missing;
          }
        }
    checks.add("generator witness", "Lemma ABe", missing == 0,
               {{"generators", "basis of V_alpha"}, {"cases", cases}, {"without_witness", missing}}, assert_theorems);
  }

  {
    std::size_t pairs = 0, fails = 0, secondary = 0;
    for (const auto& p : parabolics)
      for (const auto& a : p.relative_roots())
        for (const auto& b : p.relative_roots()) {
          if (!p.has_root(a + b) || opposite_multiples(a, b)) continue;
          ++pairs;
          const auto r = lemma_const_check(p, a, b);
          if (r.secondary_used) ++secondary;
          if (!r.generates) ++fails;
        }
    checks.add("commutator images generate", "Lemma const", fails == 0,
               {{"pairs", pairs}, {"pairs_with_difference_root", secondary}, {"failures", fails}}, assert_theorems);
  }

  {
    bool normal = true, contained = true, monotone = true;
    const auto whole_gens = generating_set(t, Subgroup::whole(t.size()));
    for (std::size_t i = 0; i < c.ideals.size(); ++i) {
      normal = normal && is_normalized_by(t, c.congruence[i], whole_gens);
      contained = contained && c.congruence[i].subset_of(c.full_congruence[i]);
      for (std::size_t j = 0; j < c.ideals.size(); ++j) {
        if (!c.ideals[i].subset_of(c.ideals[j])) continue;
        monotone = monotone && c.relative_elementary[i].subset_of(c.relative_elementary[j]) &&
                   c.congruence[i].subset_of(c.congruence[j]) && c.full_congruence[i].subset_of(c.full_congruence[j]);
      }
    }
    Json per = Json::array();
    for (std::size_t i = 0; i < c.ideals.size(); ++i)
      per.push_back({{"ideal", c.ideals[i].name()},
                     {"relative_elementary", c.relative_elementary[i].order()},
                     {"congruence", c.congruence[i].order()},
                     {"full_congruence", c.full_congruence[i].order()}});
    checks.add("congruence subgroups", "congruence subgroups", normal && contained && monotone,
               {{"normal", normal}, {"full_contains_congruence", contained}, {"monotone", monotone}, {"ideals", per}});
  }
  return checks.to_json();
}

// ---------------------------------------------------------------------------
// sandwich

inline Json run_sandwich_suite(const LatticeContext& c, const SuiteOptions& opt, int jobs = 1) {
  (void)jobs;
  const ElementTable& t = c.table;
  const GroupModel& model = t.model();
  const bool assert_theorems = c.hypotheses.passes();
  CheckList checks;

  const auto results = sandwich_classify(c);
  {
    bool ok = true;
    Json per = Json::array();
    for (const auto& r : results) {
      ok = ok && r.verdict() == "unique";
      per.push_back({{"seed", r.seed},
                     {"orbit_size", r.orbit_size},
                     {"closure_order", r.closure_order},
                     {"admissible", ideals_json(r.admissible)},
                     {"verdict", r.verdict()}});
    }
    checks.add("sandwich classification", "Theorem main (ii)", ok, {{"orbits", results.size()}, {"results", per}},
               assert_theorems);
  }

  {
    bool ok = true;
    Json per = Json::array();
    for (const auto& e : verify_commutator_formula(c)) {
      ok = ok && e.equal;
      per.push_back({{"ideal", e.ideal.name()},
                     {"commutator_order", e.commutator_order},
                     {"relative_elementary_order", e.relative_order},
                     {"equal", e.equal}});
    }
    checks.add("commutator formula", "Theorem main (i)", ok, {{"ideals", per}}, assert_theorems);
  }

  if (model.kind() == GroupKind::SL && model.degree() >= 3) {
    bool ok = true;
    Json per = Json::array();
    for (const auto& e : verify_parabolic_independence(c)) {
      ok = ok && e.equal;
      per.push_back({{"ideal", e.ideal.name()}, {"parabolics", e.parabolics}, {"orders", e.orders}, {"equal", e.equal}});
    }
    checks.add("parabolic independence", "Lemma E_P", ok, {{"ideals", per}}, assert_theorems);
  }

  {
    bool ok = true;
    std::size_t checked = 0, skipped = 0;
    Json per = Json::array();
    for (std::size_t o = 0; o < c.orbits.size(); ++o) {
      const auto q = c.level(c.orbit_closures[o]);
      if (!q) {
        ++skipped;
        ok = false;
        continue;
      }
      const auto rep = verify_level_theorem(c, c.orbit_closures[o], *q, c.orbits[o].front());
      ++checked;
      ok = ok && rep.equal();
      Json entries = Json::array();
      for (const auto& e : rep.entries)
        entries.push_back({{"root", e.root}, {"intersection", e.intersection}, {"expected", e.expected}});
      per.push_back({{"seed", rep.seed}, {"level", q->name()}, {"equal", rep.equal()}, {"roots", entries}});
    }
    checks.add("level theorem", "Theorem cong-N", ok, {{"checked", checked}, {"without_level", skipped}, {"subgroups", per}},
               assert_theorems);
  }

  {
    const auto s = verify_structure_theorems(c);
    checks.add("elementary subgroup is normal", "Theorem EE", s.e_normal, {{"elementary_order", s.elementary_order}},
               assert_theorems);
    Json cent = {{"center_order", s.center_order},
                 {"centralizer_of_E_is_center", s.centralizer_is_center},
                 {"scalar_matrices_agree", s.scalar_center_matches}};
    if (s.brute_center_matches) cent["pairwise_center_agrees"] = *s.brute_center_matches;
    checks.add("centralizer of E", "Theorem E-cent",
               s.centralizer_is_center && s.scalar_center_matches && s.brute_center_matches.value_or(true), cent,
               assert_theorems);
    checks.add("perfectness", "Theorem perfect", s.perfect(),
               {{"derived_order", s.derived_order}, {"derived_index", s.derived_index}},
               c.hypotheses.perfect_expected());
    checks.add("Hall-Witt consequence", "Lemma HallWitt", s.hall_witt_failures == 0,
               {{"subgroups", s.hall_witt_checked}, {"failures", s.hall_witt_failures}}, assert_theorems);
  }

  {
    const auto e = verify_extraction(c);
    checks.add("root unipotent extraction", "Corollary InPQ", e.failures == 0,
               {{"subgroups", e.subgroups}, {"noncentral", e.noncentral}, {"with_root_unipotent", e.found},
                {"failures", e.failures}},
               assert_theorems);
    checks.add("extraction under the radical", "Corollary UnderRad", e.radical_failures == 0,
               {{"radical", e.radical.name()}, {"noncentral_radical_part", e.radical_noncentral},
                {"failures", e.radical_failures}},
               assert_theorems);
  }

  if (model.ring().is_prime()) {
    const auto s = simplicity_check(c);
    checks.add("simple central quotient", "simplicity of the central quotient", s.failures == 0,
               {{"per_element", s.per_element}, {"elements_covered", s.elements_covered},
                {"closures_computed", s.closures_computed}, {"full", s.full}, {"central", s.central},
                {"failures", s.failures}},
               assert_theorems);
  }

  {
    const auto r = verify_centralizer_lemmas(t);
    if (model.ring().is_prime())
      checks.add("unipotent centralizer", "Lemma u-cent-field", r.cent_failures == 0,
                 {{"parabolics", r.cent_parabolics}, {"elements", r.cent_elements},
                  {"centralizing", r.cent_centralizing}, {"counterexamples", r.cent_failures}});
    checks.add("root centralizer", "Lemma centr-beta", r.beta_failures == 0,
               {{"simple_roots", r.beta_cases}, {"elements", r.beta_elements}, {"commuting", r.beta_commuting},
                {"counterexamples", r.beta_failures}},
               assert_theorems);
    checks.add("small Levi centralizer", "Lemma small-levi-b", r.levi_failures == 0,
               {{"elements", r.levi_elements}, {"commuting", r.levi_commuting}, {"counterexamples", r.levi_failures}},
               assert_theorems);
  }

  {
    const auto j = verify_join_compatibility(c, static_cast<std::size_t>(opt.join_pairs), opt.seed);
    checks.add("join compatibility", "Theorem main (ii)", j.failures == 0, {{"pairs", j.pairs}, {"failures", j.failures}},
               assert_theorems);
  }

  {
    bool fixed = true;
    for (const auto& h : c.orbit_closures) {
      for (ElemId x : h.elements()) {
        for (std::size_t g = 0; g < t.generator_count() && fixed; ++g) fixed = h.contains(t.conj_by_generator(x, g));
        if (!fixed) break;
      }
    }
    checks.add("normal closure is a fixed point", "normal closure", fixed, {{"subgroups", c.orbit_closures.size()}});
  }
  return checks.to_json();
}

// ---------------------------------------------------------------------------
// Model header shared by the group and sandwich suites

inline Json model_header(const LatticeContext& c, bool negative_control) {
  const GroupModel& m = c.model();
  return {{"model", m.group_name()},
          {"parabolic", m.parabolic_name()},
          {"order", c.table.size()},
          {"negative_control", negative_control},
          {"mode", c.hypotheses.passes() ? "assert" : "expect_exception"},
          {"hypotheses", hypotheses_json(c.hypotheses)}};
}

}  // namespace sandwich
