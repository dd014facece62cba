#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sandwich/errors.hpp"
#include "sandwich/rootsys.hpp"

namespace sandwich {

struct RelativeRootTag;
using RelativeRoot = Coords<RelativeRootTag>;

/// Data of a relative root system: a base system, the set of marked simple
/// roots (their complement spans the Levi subsystem) and a twisting group of
/// diagram automorphisms that must preserve the marked set.
struct RelativeDatum {
  RootSystem base;
  std::vector<int> marked;  // 0-based simple-root indices
  AutomorphismGroup twist;  // empty means trivial
};

/// Image of the base root system under the projection that kills the unmarked
/// simple roots and identifies twist orbits of marked ones. Coordinates index
/// the twist orbits of the marked set, ordered by least member.
class RelativeRootSystem {
 public:
  explicit RelativeRootSystem(RelativeDatum d) : datum_(std::move(d)) {
    const RootSystem& base = datum_.base;
    const int n = base.rank();
    auto& twist = datum_.twist;
    if (twist.empty()) twist.push_back(DiagramAutomorphism::identity(n));
    std::sort(twist.begin(), twist.end());
    twist.erase(std::unique(twist.begin(), twist.end()), twist.end());
    const auto autos = diagram_automorphisms(base);
    for (const auto& s : twist) {
      if (!std::binary_search(autos.begin(), autos.end(), s))
        throw ConstructionError("twist element is not a diagram automorphism of " + base.type().name());
    }
    if (generate_automorphism_group(twist, n) != twist)
      throw ConstructionError("twist is not closed under composition");

    auto& marked = datum_.marked;
    std::sort(marked.begin(), marked.end());
    marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
    for (int i : marked)
      if (i < 0 || i >= n) throw ConstructionError("marked index out of range");
    for (const auto& s : twist)
      for (int i : marked)
        if (!std::binary_search(marked.begin(), marked.end(), s.perm[i]))
          throw ConstructionError("marked set is not invariant under the twist group");

    std::vector<bool> seen(n, false);
    for (int i : marked) {
      if (seen[i]) continue;
      std::set<int> orbit;
      for (const auto& s : twist) orbit.insert(s.perm[i]);
      for (int j : orbit) seen[j] = true;
      orbits_.emplace_back(orbit.begin(), orbit.end());
    }
    projection_.assign(orbits_.size(), std::vector<int>(n, 0));
    for (std::size_t o = 0; o < orbits_.size(); ++o)
      for (int i : orbits_[o]) projection_[o][i] = 1;

    for (const auto& mu : base.roots()) {
      RelativeRoot r = project(mu);
      if (r.is_zero()) {
        kernel_.push_back(mu);
      } else {
        fibers_[r].push_back(mu);
      }
    }
    for (const auto& [r, f] : fibers_) roots_.push_back(r);
    std::sort(roots_.begin(), roots_.end(), CanonicalRootOrder{});
  }

  const RelativeDatum& datum() const { return datum_; }
  const RootSystem& base() const { return datum_.base; }
  int rank() const { return static_cast<int>(orbits_.size()); }
  const std::vector<std::vector<int>>& orbits() const { return orbits_; }
  const IntMatrix& projection() const { return projection_; }

  RelativeRoot project(const Root& mu) const {
    std::vector<int> out(orbits_.size(), 0);
    for (std::size_t o = 0; o < orbits_.size(); ++o)
      for (int i : orbits_[o]) out[o] += mu[i];
    return RelativeRoot(std::move(out));
  }

  const std::vector<RelativeRoot>& roots() const { return roots_; }
  bool contains(const RelativeRoot& r) const { return fibers_.count(r) != 0; }
  const std::vector<Root>& fiber(const RelativeRoot& r) const {
    auto it = fibers_.find(r);
    if (it == fibers_.end()) throw PreconditionError("not a relative root: " + to_string(r));
    return it->second;
  }
  /// Base roots projecting to zero (the Levi subsystem).
  const std::vector<Root>& kernel_roots() const { return kernel_; }

 private:
  RelativeDatum datum_;
  std::vector<std::vector<int>> orbits_;
  IntMatrix projection_;
  std::map<RelativeRoot, std::vector<Root>> fibers_;
  std::vector<RelativeRoot> roots_;
  std::vector<Root> kernel_;
};

inline RelativeRootSystem build_relative(RelativeDatum datum) { return RelativeRootSystem(std::move(datum)); }

/// Projections of the simple roots that are nonzero: the unit vectors.
inline std::vector<RelativeRoot> relative_simple_roots(const RelativeRootSystem& rel) {
  std::set<RelativeRoot> out;
  for (const auto& a : rel.base().simple_roots()) {
    auto r = rel.project(a);
    if (rel.contains(r)) out.insert(r);
  }
  std::vector<RelativeRoot> v(out.begin(), out.end());
  std::sort(v.begin(), v.end(), CanonicalRootOrder{});
  return v;
}

inline bool is_relative_simple(const RelativeRootSystem& rel, const RelativeRoot& r) {
  const auto s = relative_simple_roots(rel);
  return std::find(s.begin(), s.end(), r) != s.end();
}

/// Every base root over a+b splits as a root over a plus a root over b.
inline bool check_fiber_additivity(const RelativeRootSystem& rel, const RelativeRoot& a, const RelativeRoot& b) {
  if (!rel.contains(a) || !rel.contains(b) || !rel.contains(a + b))
    throw PreconditionError("fiber additivity needs a, b, a+b relative roots");
  const auto& fb = rel.fiber(b);
  const std::set<Root> fb_set(fb.begin(), fb.end());
  for (const auto& mu : rel.fiber(a + b)) {
    bool split = false;
    for (const auto& mu1 : rel.fiber(a)) {
      if (fb_set.count(mu - mu1)) {
        split = true;
        break;
      }
    }
    if (!split) return false;
  }
  return true;
}

/// For distinct simple a, b with a+b a relative root: a + j b is a relative
/// root whenever j b is.
inline bool check_adjacent_simple(const RelativeRootSystem& rel, const RelativeRoot& a, const RelativeRoot& b) {
  if (a == b || !is_relative_simple(rel, a) || !is_relative_simple(rel, b) || !rel.contains(a + b))
    throw PreconditionError("adjacency check needs distinct simple relative roots with a+b a relative root");
  for (int j = 1; j <= 4; ++j) {
    if (rel.contains(j * b) && !rel.contains(a + j * b)) return false;
  }
  return true;
}

/// The folding data realizing a non-simply-laced type as a twisted image of a
/// simply-laced one.
struct Unfolding {
  RootSystemType cover;
  std::vector<DiagramAutomorphism> generators;
  std::vector<int> image;  // cover simple index -> folded simple index
};

inline Unfolding unfolding_of(RootSystemType folded) {
  folded.validate();
  const int n = folded.rank;
  Unfolding u;
  DiagramAutomorphism g;
  switch (folded.family) {
    case Family::C: {
      u.cover = {Family::A, 2 * n - 1};
      g = DiagramAutomorphism::identity(2 * n - 1);
      for (int i = 0; i < 2 * n - 1; ++i) {
        g.perm[i] = 2 * n - 2 - i;
        u.image.push_back(std::min(i, 2 * n - 2 - i));
      }
      break;
    }
    case Family::B: {
      u.cover = {Family::D, n + 1};
      g = DiagramAutomorphism::identity(n + 1);
      std::swap(g.perm[n - 1], g.perm[n]);
      for (int i = 0; i <= n; ++i) u.image.push_back(std::min(i, n - 1));
      break;
    }
    case Family::F:
      u.cover = {Family::E, 6};
      g.perm = {5, 1, 4, 3, 2, 0};
      u.image = {3, 0, 2, 1, 2, 3};
      break;
    case Family::G:
      u.cover = {Family::D, 4};
      g.perm = {2, 1, 3, 0};
      u.image = {0, 1, 0, 0};
      break;
    default:
      throw PreconditionError(folded.name() + " is simply laced; nothing to unfold");
  }
  u.cover.validate();
  u.generators.push_back(g);
  return u;
}

/// Folds a simply-laced system by a group of diagram automorphisms (all
/// simple roots marked).
inline RelativeRootSystem fold(const RootSystem& simply_laced, const AutomorphismGroup& gamma) {
  if (!simply_laced.simply_laced())
    throw PreconditionError("fold expects a simply-laced system, got " + simply_laced.type().name());
  std::vector<int> all(simply_laced.rank());
  std::iota(all.begin(), all.end(), 0);
  return build_relative({simply_laced, all, gamma});
}

/// A coordinate permutation p with {r[p]} = target roots, if one exists.
inline std::optional<std::vector<int>> match_root_system(const RelativeRootSystem& rel, const RootSystem& target) {
  const int k = rel.rank();
  if (k != target.rank() || rel.roots().size() != target.roots().size()) return std::nullopt;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (const auto& r : rel.roots()) {
      Root t = Root::zero(k);
      for (int i = 0; i < k; ++i) t[p[i]] = r[i];
      if (!target.contains(t)) {
        ok = false;
        break;
      }
    }
    if (ok) return p;
  } while (std::next_permutation(p.begin(), p.end()));
  return std::nullopt;
}

/// A relative system over a non-simply-laced base, re-expressed over the
/// simply-laced cover. `to_base[o]` is the base coordinate of cover coordinate o.
struct LiftedRelative {
  RelativeRootSystem cover;
  std::vector<int> to_base;

  RelativeRoot to_base_coords(const RelativeRoot& r) const {
    RelativeRoot out = RelativeRoot::zero(r.size());
    for (std::size_t o = 0; o < r.size(); ++o) out[to_base[o]] = r[o];
    return out;
  }
  RelativeRoot to_cover_coords(const RelativeRoot& r) const {
    RelativeRoot out = RelativeRoot::zero(r.size());
    for (std::size_t o = 0; o < r.size(); ++o) out[o] = r[to_base[o]];
    return out;
  }
};

inline LiftedRelative lift_to_simply_laced(const RelativeRootSystem& rel) {
  const auto& d = rel.datum();
  for (const auto& s : d.twist)
    if (!s.is_identity()) throw PreconditionError("lifting expects a trivial twist on a non-simply-laced base");
  const Unfolding u = unfolding_of(d.base.type());
  std::vector<int> marked;
  for (int i = 0; i < static_cast<int>(u.image.size()); ++i)
    if (std::binary_search(d.marked.begin(), d.marked.end(), u.image[i])) marked.push_back(i);
  RootSystem cover(u.cover);
  auto twist = generate_automorphism_group(u.generators, cover.rank());
  LiftedRelative lifted{build_relative({cover, marked, twist}), {}};
  for (const auto& orbit : lifted.cover.orbits()) {
    const int target = u.image[orbit.front()];
    lifted.to_base.push_back(
        static_cast<int>(std::lower_bound(d.marked.begin(), d.marked.end(), target) - d.marked.begin()));
  }
  std::set<RelativeRoot> lifted_roots;
  for (const auto& r : lifted.cover.roots()) lifted_roots.insert(lifted.to_base_coords(r));
  if (lifted_roots != std::set<RelativeRoot>(rel.roots().begin(), rel.roots().end()))
    throw PreconditionError("unfolded relative system disagrees with the direct projection");
  return lifted;
}

/// The two set forms of the parabolic set attached to a simple relative root
/// over a simply-laced base: pairing with the fiber sum nonnegative for every
/// (resp. some) base root in the fiber.
struct SigmaForms {
  std::vector<RelativeRoot> for_all;
  std::vector<RelativeRoot> for_some;
};

inline SigmaForms sigma_forms(const RelativeRootSystem& rel, const RelativeRoot& b) {
  if (!rel.base().simply_laced()) throw PreconditionError("sigma_forms expects a simply-laced base");
  if (!is_relative_simple(rel, b)) throw PreconditionError("sigma set needs a simple relative root");
  Root s = Root::zero(rel.base().rank());
  for (const auto& nu : rel.fiber(b)) s += nu;
  SigmaForms out;
  for (const auto& a : rel.roots()) {
    bool all = true, some = false;
    for (const auto& mu : rel.fiber(a)) {
      const bool nonneg = rel.base().pairing(mu, s) >= 0;
      all = all && nonneg;
      some = some || nonneg;
    }
    if (all) out.for_all.push_back(a);
    if (some) out.for_some.push_back(a);
  }
  return out;
}

/// Proper parabolic subset of the relative roots containing every a with
/// a + b outside the relative roots and zero. Non-simply-laced bases are
/// handled on their simply-laced cover.
inline std::vector<RelativeRoot> sigma_set(const RelativeRootSystem& rel, const RelativeRoot& b) {
  if (!is_relative_simple(rel, b)) throw PreconditionError("sigma set needs a simple relative root");
  if (rel.base().simply_laced()) return sigma_forms(rel, b).for_all;
  const LiftedRelative lifted = lift_to_simply_laced(rel);
  std::vector<RelativeRoot> out;
  for (const auto& a : sigma_forms(lifted.cover, lifted.to_cover_coords(b)).for_all)
    out.push_back(lifted.to_base_coords(a));
  std::sort(out.begin(), out.end(), CanonicalRootOrder{});
  return out;
}

struct SigmaAudit {
  bool additively_closed = true;
  bool covers = true;  // sigma ∪ -sigma is everything
  bool proper = true;
  bool contains_non_adjacent = true;
  bool ok() const { return additively_closed && covers && proper && contains_non_adjacent; }
};

inline SigmaAudit audit_sigma(const RelativeRootSystem& rel, const RelativeRoot& b,
                              const std::vector<RelativeRoot>& sigma) {
  SigmaAudit a;
  const std::set<RelativeRoot> s(sigma.begin(), sigma.end());
  for (const auto& x : sigma)
    for (const auto& y : sigma)
      if (rel.contains(x + y) && !s.count(x + y)) a.additively_closed = false;
  for (const auto& r : rel.roots()) {
    if (!s.count(r) && !s.count(-r)) a.covers = false;
    const auto sum = r + b;
    if (!sum.is_zero() && !rel.contains(sum) && !s.count(r)) a.contains_non_adjacent = false;
  }
  a.proper = s.size() < rel.roots().size();
  return a;
}

/// Outcome of the exhaustive lemma checks on one relative datum.
struct RelativeAudit {
  std::string base;
  std::vector<int> marked;
  std::size_t twist_order = 1;
  std::size_t relative_roots = 0;
  std::size_t adjacency_checks = 0, adjacency_failures = 0;
  std::size_t additivity_checks = 0, additivity_failures = 0;
  std::size_t sigma_checks = 0, sigma_failures = 0;
  std::size_t form_checks = 0, form_mismatches = 0;
  bool projection_ok = true;  // kills unmarked roots and twist differences, twist invariant

  bool ok() const {
    return projection_ok && adjacency_failures == 0 && additivity_failures == 0 && sigma_failures == 0 &&
           form_mismatches == 0;
  }
};

inline RelativeAudit audit_relative(const RelativeRootSystem& rel) {
  RelativeAudit out;
  const auto& d = rel.datum();
  const auto& base = rel.base();
  out.base = base.type().name();
  out.marked = d.marked;
  out.twist_order = d.twist.size();
  out.relative_roots = rel.roots().size();

  for (int i = 0; i < base.rank(); ++i) {
    const bool is_marked = std::binary_search(d.marked.begin(), d.marked.end(), i);
    if (!is_marked && !rel.project(base.simple_roots()[i]).is_zero()) out.projection_ok = false;
    if (is_marked)
      for (const auto& s : d.twist)
        if (!rel.project(base.simple_roots()[i] - s.apply(base.simple_roots()[i])).is_zero())
          out.projection_ok = false;
  }
  for (const auto& mu : base.roots())
    for (const auto& s : d.twist)
      if (rel.project(s.apply(mu)) != rel.project(mu)) out.projection_ok = false;

  const auto simple = relative_simple_roots(rel);
  for (const auto& a : simple)
    for (const auto& b : simple) {
      if (a == b || !rel.contains(a + b)) continue;
      ++out.adjacency_checks;
      if (!check_adjacent_simple(rel, a, b)) ++out.adjacency_failures;
    }
  for (const auto& a : rel.roots())
    for (const auto& b : rel.roots()) {
      if (!rel.contains(a + b)) continue;
      ++out.additivity_checks;
      if (!check_fiber_additivity(rel, a, b)) ++out.additivity_failures;
    }
  std::optional<LiftedRelative> lifted;
  if (!base.simply_laced()) lifted.emplace(lift_to_simply_laced(rel));
  for (const auto& b : simple) {
    ++out.sigma_checks;
    if (!audit_sigma(rel, b, sigma_set(rel, b)).ok()) ++out.sigma_failures;
    ++out.form_checks;
    const SigmaForms f = lifted ? sigma_forms(lifted->cover, lifted->to_cover_coords(b)) : sigma_forms(rel, b);
    if (f.for_all != f.for_some) ++out.form_mismatches;
  }
  return out;
}

/// Every (base, twist subgroup, nonempty twist-invariant marked set) for base
/// rank up to max_rank.
inline std::vector<RelativeDatum> enumerate_relative_data(int max_rank) {
  std::vector<RelativeDatum> out;
  for (const auto& t : all_types_up_to(max_rank)) {
    RootSystem sys(t);
    const int n = sys.rank();
    for (const auto& twist : automorphism_subgroups(diagram_automorphisms(sys))) {
      for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> marked;
        for (int i = 0; i < n; ++i)
          if (mask >> i & 1) marked.push_back(i);
        bool invariant = true;
        for (const auto& s : twist)
          for (int i : marked)
            if (!(mask >> s.perm[i] & 1)) invariant = false;
        if (invariant) out.push_back({sys, marked, twist});
      }
    }
  }
  return out;
}

/// Data over one base restricted to twist groups containing `required`.
inline std::vector<RelativeDatum> enumerate_twisted_data(const RootSystem& sys, const DiagramAutomorphism& required) {
  std::vector<RelativeDatum> out;
  const int n = sys.rank();
  for (const auto& twist : automorphism_subgroups(diagram_automorphisms(sys))) {
    if (!std::binary_search(twist.begin(), twist.end(), required)) continue;
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> marked;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) marked.push_back(i);
      bool invariant = true;
      for (const auto& s : twist)
        for (int i : marked)
          if (!(mask >> s.perm[i] & 1)) invariant = false;
      if (invariant) out.push_back({sys, marked, twist});
    }
  }
  return out;
}

}  // namespace sandwich
