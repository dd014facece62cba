#include <random>

#include <gtest/gtest.h>

#include "sandwich/lattice.hpp"
#include "sandwich/report.hpp"

using namespace sandwich;

namespace {

const LatticeContext& sl3(int m) {
  static const LatticeContext c2 = LatticeContext::build(GroupModel::sl(3, 2, {}));
  static const LatticeContext c3 = LatticeContext::build(GroupModel::sl(3, 3, {}));
  static const LatticeContext c4 = LatticeContext::build(GroupModel::sl(3, 4, {}));
  return m == 2 ? c2 : m == 3 ? c3 : c4;
}
const LatticeContext& sp4(int m) {
  static const LatticeContext c2 = LatticeContext::build(GroupModel::sp4(2, SpParabolic::Borel));
  static const LatticeContext c3 = LatticeContext::build(GroupModel::sp4(3, SpParabolic::Borel));
  return m == 2 ? c2 : c3;
}

ElemId e(const LatticeContext& c, int i, int j, int t) {
  return c.table.index_of(elementary_generator(c.model(), i, j, t));
}

std::vector<int> divisors(const std::vector<ZmIdeal>& qs) {
  std::vector<int> out;
  for (const auto& q : qs) out.push_back(q.d);
  return out;
}

}  // namespace

TEST(NormalClosure, Examples) {
  const auto& c2 = sl3(2);
  const auto& t2 = c2.table;
  EXPECT_EQ(normal_closure(t2, {e(c2, 0, 1, 1)}, t2.generator_ids()).order(), 168u);
  EXPECT_EQ(normal_closure(t2, {ElementTable::identity()}, t2.generator_ids()).order(), 1u);
  const auto& c4 = sl3(4);
  const Subgroup h = normal_closure(c4.table, {e(c4, 0, 1, 2)}, c4.table.generator_ids());
  EXPECT_TRUE(h.subset_of(c4.congruence[1]));
  EXPECT_EQ(c4.ideals[1].d, 2);
}

TEST(NormalClosure, IsAFixedPoint) {
  const auto& c = sl3(4);
  for (const auto& h : c.orbit_closures)
    for (ElemId x : generating_set(c.table, h))
      for (std::size_t g = 0; g < c.table.generator_count(); ++g) EXPECT_TRUE(h.contains(c.table.conj_by_generator(x, g)));
}

TEST(Orbits, CountsAndIdentity) {
  EXPECT_EQ(sl3(2).orbits.size(), 6u);
  EXPECT_EQ(sl3(3).orbits.size(), 12u);
  EXPECT_EQ(sp4(2).orbits.size(), 11u);
  for (int m : {2, 3, 4}) EXPECT_EQ(sl3(m).orbits.front(), std::vector<ElemId>{0});
  // Orbits partition the group and are ordered by least member.
  const auto& c = sl3(4);
  std::size_t total = 0;
  for (std::size_t o = 0; o < c.orbits.size(); ++o) {
    total += c.orbits[o].size();
    if (o) { EXPECT_LT(c.orbits[o - 1].front(), c.orbits[o].front()); }
  }
  EXPECT_EQ(total, c.table.size());
}

TEST(Orbits, ParallelBuildMatchesSerial) {
  const auto serial = LatticeContext::build(GroupModel::sl(3, 3, {}), kDefaultCap, 1);
  const auto parallel = LatticeContext::build(GroupModel::sl(3, 3, {}), kDefaultCap, 4);
  ASSERT_EQ(serial.orbit_closures.size(), parallel.orbit_closures.size());
  for (std::size_t o = 0; o < serial.orbit_closures.size(); ++o)
    EXPECT_EQ(serial.orbit_closures[o], parallel.orbit_closures[o]);
}

TEST(Sandwich, Sl3Mod4Examples) {
  const auto& c = sl3(4);
  auto level_of = [&](ElemId g) { return divisors(c.admissible_ideals(c.orbit_closures[c.orbit_of[g]])); };
  EXPECT_EQ(level_of(e(c, 0, 1, 2)), std::vector<int>{2});
  EXPECT_EQ(level_of(ElementTable::identity()), std::vector<int>{4});
  EXPECT_EQ(level_of(e(c, 0, 1, 1)), std::vector<int>{1});
  EXPECT_EQ(c.orbit_closures[c.orbit_of[e(c, 0, 1, 1)]].order(), c.table.size());
}

TEST(Sandwich, UniqueOnPassingModelsOnly) {
  for (const auto* c : {&sl3(2), &sl3(3), &sl3(4), &sp4(3)})
    for (const auto& r : sandwich_classify(*c)) EXPECT_EQ(r.verdict(), "unique") << c->model().group_name();
  std::size_t not_unique = 0;
  for (const auto& r : sandwich_classify(sp4(2))) not_unique += r.verdict() != "unique";
  EXPECT_GT(not_unique, 0u);
}

TEST(CommutatorFormula, EveryIdeal) {
  for (const auto* c : {&sl3(2), &sl3(4), &sp4(3)})
    for (const auto& entry : verify_commutator_formula(*c)) EXPECT_TRUE(entry.equal) << entry.ideal.name();
  const auto& c = sl3(4);
  const auto entries = verify_commutator_formula(c);
  EXPECT_EQ(entries.back().commutator_order, 1u);
  EXPECT_EQ(entries[1].relative_order, 256u);
}

TEST(CommutatorFormula, ParabolicIndependence) {
  const auto entries = verify_parabolic_independence(sl3(4));
  ASSERT_EQ(entries.size(), 3u);
  for (const auto& entry : entries) {
    EXPECT_TRUE(entry.equal);
    EXPECT_GE(entry.parabolics.size(), 2u);
  }
  EXPECT_EQ(proper_compositions(3), (std::vector<std::vector<int>>{{1, 1, 1}, {2, 1}, {1, 2}}));
}

TEST(LevelTheorem, Examples) {
  const auto& c = sl3(4);
  const auto& t = c.table;
  const Subgroup h = normal_closure(t, {e(c, 0, 2, 2)}, t.generator_ids());
  const ZmIdeal two{2, 4};
  const auto rep = verify_level_theorem(c, h, two);
  EXPECT_TRUE(rep.equal());
  std::set<ElemId> found;
  for (ElemId x : root_subgroup_elements(t, c.model(), RelativeRoot{1, 0}, {1, 4}))
    if (h.contains(x)) found.insert(x);
  EXPECT_EQ(found, (std::set<ElemId>{ElementTable::identity(), e(c, 0, 1, 2)}));

  const auto trivial = verify_level_theorem(c, Subgroup::trivial(t.size()), {4, 4});
  EXPECT_TRUE(trivial.equal());
  for (const auto& entry : trivial.entries) EXPECT_EQ(entry.intersection, 1u);
  const auto whole = verify_level_theorem(c, Subgroup::whole(t.size()), {1, 4});
  EXPECT_TRUE(whole.equal());
  for (const auto& entry : whole.entries) EXPECT_EQ(entry.intersection, 4u);
  // A wrong level is caught.
  EXPECT_FALSE(verify_level_theorem(c, h, {1, 4}).equal());
}

TEST(Structure, Sl3Mod2AndNegativeControl) {
  const auto s = verify_structure_theorems(sl3(2));
  EXPECT_TRUE(s.e_normal);
  EXPECT_TRUE(s.centralizer_is_center);
  EXPECT_TRUE(s.perfect());
  EXPECT_EQ(s.hall_witt_failures, 0u);
  const auto n = verify_structure_theorems(sp4(2));
  EXPECT_FALSE(n.perfect());
  EXPECT_EQ(n.derived_index, 2u);
  EXPECT_FALSE(sp4(2).hypotheses.perfect_expected());
}

TEST(Extraction, Examples) {
  const auto& c = sl3(4);
  const auto candidates = nontrivial_root_elements(c.table);
  const Subgroup h = normal_closure(c.table, {e(c, 0, 1, 2)}, c.table.generator_ids());
  const auto u = extract_unipotent(candidates, h);
  ASSERT_TRUE(u.has_value());
  for (int x : u->value) EXPECT_EQ(x % 2, 0);
  EXPECT_FALSE(extract_unipotent(candidates, c.center_subgroup).has_value());
  const auto& c2 = sl3(2);
  EXPECT_TRUE(extract_unipotent(nontrivial_root_elements(c2.table), Subgroup::whole(c2.table.size())).has_value());
  EXPECT_EQ(verify_extraction(c).failures, 0u);
  EXPECT_EQ(verify_extraction(c).radical_failures, 0u);
}

TEST(Simplicity, PrimeFields) {
  const auto s2 = simplicity_check(sl3(2));
  EXPECT_TRUE(s2.per_element);
  EXPECT_EQ(s2.closures_computed, 167u);
  EXPECT_EQ(s2.full, 167u);
  const auto s3 = simplicity_check(sl3(3));
  EXPECT_EQ(s3.failures, 0u);
  EXPECT_EQ(s3.elements_covered, 5615u);
  const auto sp = simplicity_check(sp4(3));
  EXPECT_EQ(sp.failures, 0u);
  EXPECT_EQ(sp.central, 1u);
  EXPECT_THROW(simplicity_check(sl3(4)), PreconditionError);
}

TEST(CentralizerLemmas, ExhaustiveSmallFields) {
  for (const auto* c : {&sl3(2), &sl3(3), &sp4(3)}) {
    const auto r = verify_centralizer_lemmas(c->table);
    EXPECT_TRUE(r.ok()) << c->model().group_name();
    EXPECT_GT(r.cent_elements, 0u);
    EXPECT_GT(r.beta_elements, 0u);
    EXPECT_GT(r.levi_elements, 0u);
  }
  // Lemma (a) on SL_3(F_2), Borel: all 168 elements are examined.
  EXPECT_EQ(verify_centralizer_lemmas(sl3(2).table).cent_elements, 3u * 168u);
}

TEST(LatticeProperties, Monotonicity) {
  for (const auto* c : {&sl3(4), &sp4(3)})
    for (std::size_t i = 0; i < c->ideals.size(); ++i)
      for (std::size_t j = 0; j < c->ideals.size(); ++j) {
        if (!c->ideals[i].subset_of(c->ideals[j])) continue;
        EXPECT_TRUE(c->relative_elementary[i].subset_of(c->relative_elementary[j]));
        EXPECT_TRUE(c->congruence[i].subset_of(c->congruence[j]));
        EXPECT_TRUE(c->full_congruence[i].subset_of(c->full_congruence[j]));
      }
}

TEST(LatticeProperties, JoinCompatibility) {
  EXPECT_EQ(verify_join_compatibility(sl3(4), 100, 1).failures, 0u);
  EXPECT_EQ(verify_join_compatibility(sp4(3), 100, 2).failures, 0u);
}

TEST(Reports, CheckVerdicts) {
  CheckList l;
  l.add("a", "x", true, Json::object());
  l.add("b", "x", false, Json::object(), false);
  l.add("c", "x", true, Json::object(), false);
  EXPECT_FALSE(l.failed());
  const Json j = l.to_json();
  EXPECT_EQ(j["checks"][0]["verdict"], "pass");
  EXPECT_EQ(j["checks"][1]["verdict"], "expected_exception");
  EXPECT_EQ(j["checks"][2]["verdict"], "informational");
  l.add("d", "x", false, Json::object());
  EXPECT_TRUE(l.failed());
  EXPECT_EQ(l.to_json()["verdict"], "fail");
}
