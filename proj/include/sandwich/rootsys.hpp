#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdlib>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "sandwich/errors.hpp"

namespace sandwich {

/// Integer coordinate vector. The tag keeps absolute and relative roots apart.
template <class Tag>
class Coords {
 public:
  Coords() = default;
  explicit Coords(std::vector<int> c) : c_(std::move(c)) {}
  Coords(std::initializer_list<int> c) : c_(c) {}

  static Coords zero(std::size_t n) { return Coords(std::vector<int>(n, 0)); }
  static Coords unit(std::size_t n, std::size_t i) {
    auto z = zero(n);
    z.c_[i] = 1;
    return z;
  }

  std::size_t size() const { return c_.size(); }
  int operator[](std::size_t i) const { return c_[i]; }
  int& operator[](std::size_t i) { return c_[i]; }
  const std::vector<int>& values() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](int x) { return x == 0; });
  }
  int height() const { return std::accumulate(c_.begin(), c_.end(), 0); }
  bool is_positive() const {
    return !is_zero() && std::all_of(c_.begin(), c_.end(), [](int x) { return x >= 0; });
  }
  bool is_negative() const {
    return !is_zero() && std::all_of(c_.begin(), c_.end(), [](int x) { return x <= 0; });
  }

  Coords operator-() const {
    Coords r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Coords& operator+=(const Coords& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Coords& operator-=(const Coords& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend Coords operator+(Coords a, const Coords& b) { return a += b; }
  friend Coords operator-(Coords a, const Coords& b) { return a -= b; }
  friend Coords operator*(int k, Coords a) {
    for (auto& x : a.c_) x *= k;
    return a;
  }

  friend bool operator==(const Coords&, const Coords&) = default;
  friend auto operator<=>(const Coords&, const Coords&) = default;

 private:
  std::vector<int> c_;
};

template <class Tag>
std::string to_string(const Coords<Tag>& c) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ')';
  return os.str();
}

template <class Tag>
std::ostream& operator<<(std::ostream& os, const Coords<Tag>& c) {
  return os << to_string(c);
}

/// Positives first, by height then lexicographically; negatives follow in the
/// order of their opposites.
struct CanonicalRootOrder {
  template <class Tag>
  bool operator()(const Coords<Tag>& a, const Coords<Tag>& b) const {
    return key(a) < key(b);
  }

 private:
  template <class Tag>
  static std::tuple<int, int, std::vector<int>> key(const Coords<Tag>& c) {
    const bool neg = c.is_negative();
    const Coords<Tag> p = neg ? -c : c;
    return {neg ? 1 : 0, p.height(), p.values()};
  }
};

struct RootTag;
using Root = Coords<RootTag>;
using IntMatrix = std::vector<std::vector<int>>;

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct RootSystemType {
  Family family = Family::A;
  int rank = 1;

  std::string name() const { return std::string(1, static_cast<char>(family)) + "_" + std::to_string(rank); }

  void validate() const {
    const bool ok = [&] {
      switch (family) {
        // A and D go beyond rank 8 only far enough to unfold C_8 and B_8.
        case Family::A: return rank >= 1 && rank <= 15;
        case Family::B:
        case Family::C: return rank >= 2 && rank <= 8;
        case Family::D: return rank >= 3 && rank <= 9;
        case Family::E: return rank >= 6 && rank <= 8;
        case Family::F: return rank == 4;
        case Family::G: return rank == 2;
      }
      return false;
    }();
    if (!ok) throw ConstructionError("invalid root system type " + name());
  }

  bool simply_laced() const { return family == Family::A || family == Family::D || family == Family::E; }

  /// Accepts "A3", "A_3", "a3".
  static RootSystemType parse(std::string_view s) {
    if (s.size() < 2) throw ConstructionError("cannot parse root system type '" + std::string(s) + "'");
    char f = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    if (std::string_view("ABCDEFG").find(f) == std::string_view::npos)
      throw ConstructionError("unknown root system family '" + std::string(1, s[0]) + "'");
    std::string_view digits = s.substr(s[1] == '_' ? 2 : 1);
    int rank = 0;
    for (char ch : digits) {
      if (ch < '0' || ch > '9') throw ConstructionError("cannot parse root system type '" + std::string(s) + "'");
      rank = rank * 10 + (ch - '0');
    }
    RootSystemType t{static_cast<Family>(f), rank};
    t.validate();
    return t;
  }

  friend bool operator==(const RootSystemType&, const RootSystemType&) = default;
};

/// Permutation of simple-root indices: simple root i goes to simple root perm[i].
struct DiagramAutomorphism {
  std::vector<int> perm;

  static DiagramAutomorphism identity(int rank) {
    DiagramAutomorphism a;
    a.perm.resize(rank);
    std::iota(a.perm.begin(), a.perm.end(), 0);
    return a;
  }
  bool is_identity() const {
    for (std::size_t i = 0; i < perm.size(); ++i)
      if (perm[i] != static_cast<int>(i)) return false;
    return true;
  }
  /// (this ∘ other)(i) = this(other(i)).
  DiagramAutomorphism after(const DiagramAutomorphism& other) const {
    DiagramAutomorphism r;
    r.perm.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) r.perm[i] = perm[other.perm[i]];
    return r;
  }
  Root apply(const Root& r) const {
    Root out = Root::zero(r.size());
    for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i]] = r[i];
    return out;
  }
  friend bool operator==(const DiagramAutomorphism&, const DiagramAutomorphism&) = default;
  friend auto operator<=>(const DiagramAutomorphism&, const DiagramAutomorphism&) = default;
};

/// A finite group of diagram automorphisms, kept sorted with the identity first.
using AutomorphismGroup = std::vector<DiagramAutomorphism>;

/// Irreducible crystallographic root system in simple-root coordinates.
///
/// The invariant form is stored as an integer Gram matrix on the simple roots,
/// scaled so that short roots have squared length 2 (long roots: 4 for B, C, F
/// and 6 for G). Coroot pairings are scale free.
class RootSystem {
 public:
  explicit RootSystem(RootSystemType t) : type_(t) {
    t.validate();
    build_gram();
    const int n = t.rank;
    cartan_.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cartan_[i][j] = 2 * gram_[i][j] / gram_[j][j];
    for (int i = 0; i < n; ++i) simple_.push_back(Root::unit(n, i));
    build_roots();
  }

  const RootSystemType& type() const { return type_; }
  int rank() const { return type_.rank; }
  bool simply_laced() const { return type_.simply_laced(); }
  const std::vector<Root>& simple_roots() const { return simple_; }
  /// Canonical order: positive roots by height, then their negatives.
  const std::vector<Root>& roots() const { return roots_; }
  std::size_t positive_count() const { return roots_.size() / 2; }
  const IntMatrix& cartan() const { return cartan_; }
  const IntMatrix& gram() const { return gram_; }

  bool contains(const Root& r) const { return index_.count(r) != 0; }
  std::optional<int> index_of(const Root& r) const {
    auto it = index_.find(r);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Invariant form (a, b) in the stored normalization.
  int pairing(const Root& a, const Root& b) const {
    int s = 0;
    for (int i = 0; i < rank(); ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < rank(); ++j) s += a[i] * gram_[i][j] * b[j];
    }
    return s;
  }
  /// <a, b^vee> = 2 (a,b) / (b,b).
  int coroot_pairing(const Root& a, const Root& b) const {
    const int num = 2 * pairing(a, b);
    const int den = pairing(b, b);
    if (num % den != 0) throw PreconditionError("non-integral coroot pairing " + to_string(a) + ", " + to_string(b));
    return num / den;
  }
  Root reflect(const Root& a, const Root& b) const { return a - coroot_pairing(a, b) * b; }

  Root highest_root() const { return roots_[positive_count() - 1]; }

  static std::size_t classical_count(RootSystemType t) {
    const std::size_t n = t.rank;
    switch (t.family) {
      case Family::A: return n * (n + 1);
      case Family::B:
      case Family::C: return 2 * n * n;
      case Family::D: return 2 * n * (n - 1);
      case Family::E: return n == 6 ? 72 : n == 7 ? 126 : 240;
      case Family::F: return 48;
      case Family::G: return 12;
    }
    return 0;
  }

 private:
  void build_gram() {
    const int n = type_.rank;
    gram_.assign(n, std::vector<int>(n, 0));
    auto link = [&](int i, int j, int v) { gram_[i][j] = gram_[j][i] = v; };
    switch (type_.family) {
      case Family::A:
        for (int i = 0; i < n; ++i) gram_[i][i] = 2;
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
        break;
      case Family::B:
        for (int i = 0; i < n; ++i) gram_[i][i] = i + 1 < n ? 4 : 2;
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -2);
        break;
      case Family::C:
        for (int i = 0; i < n; ++i) gram_[i][i] = i + 1 < n ? 2 : 4;
        for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
        link(n - 2, n - 1, -2);
        break;
      case Family::D:
        for (int i = 0; i < n; ++i) gram_[i][i] = 2;
        for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
        link(n - 3, n - 1, -1);
        break;
      case Family::E:
        // Bourbaki: 1-3-4-5-...-n with 2 attached to 4.
        for (int i = 0; i < n; ++i) gram_[i][i] = 2;
        link(0, 2, -1);
        link(1, 3, -1);
        for (int i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
        break;
      case Family::F:
        gram_[0][0] = gram_[1][1] = 4;
        gram_[2][2] = gram_[3][3] = 2;
        link(0, 1, -2);
        link(1, 2, -2);
        link(2, 3, -1);
        break;
      case Family::G:
        gram_[0][0] = 2;
        gram_[1][1] = 6;
        link(0, 1, -3);
        break;
    }
  }

  void build_roots() {
    std::set<Root> found(simple_.begin(), simple_.end());
    std::vector<Root> queue(simple_.begin(), simple_.end());
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const auto& s : simple_) {
        Root r = reflect(queue[head], s);
        if (found.insert(r).second) queue.push_back(std::move(r));
      }
    }
    roots_.assign(found.begin(), found.end());
    std::sort(roots_.begin(), roots_.end(), CanonicalRootOrder{});
    for (std::size_t i = 0; i < roots_.size(); ++i) index_.emplace(roots_[i], static_cast<int>(i));
  }

  RootSystemType type_;
  IntMatrix gram_;
  IntMatrix cartan_;
  std::vector<Root> simple_;
  std::vector<Root> roots_;
  std::map<Root, int> index_;
};

inline RootSystem build_root_system(RootSystemType t) { return RootSystem(t); }

inline std::optional<Root> root_sum(const RootSystem& sys, const Root& a, const Root& b) {
  Root s = a + b;
  if (sys.contains(s)) return s;
  return std::nullopt;
}

/// Primes among the structure constants of the Chevalley commutator formula.
inline std::set<int> structure_constant_primes(const RootSystem& sys) {
  switch (sys.type().family) {
    case Family::B:
    case Family::C:
    case Family::F: return {2};
    case Family::G: return {2, 3};
    default: return {};
  }
}

/// Every permutation of simple roots preserving the Cartan matrix.
inline AutomorphismGroup diagram_automorphisms(const RootSystem& sys) {
  const int n = sys.rank();
  const auto& a = sys.cartan();
  AutomorphismGroup out;
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, int i) -> void {
    if (i == n) {
      out.push_back(DiagramAutomorphism{perm});
      return;
    }
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = a[c][perm[j]] == a[i][j] && a[perm[j]][c] == a[j][i];
      if (!ok) continue;
      used[c] = true;
      perm[i] = c;
      self(self, i + 1);
      used[c] = false;
    }
  };
  extend(extend, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Smallest group containing the given automorphisms.
inline AutomorphismGroup generate_automorphism_group(const std::vector<DiagramAutomorphism>& gens, int rank) {
  std::set<DiagramAutomorphism> seen{DiagramAutomorphism::identity(rank)};
  std::vector<DiagramAutomorphism> queue(seen.begin(), seen.end());
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (const auto& g : gens) {
      auto x = g.after(queue[h]);
      if (seen.insert(x).second) queue.push_back(x);
    }
  }
  return {seen.begin(), seen.end()};
}

/// All subgroups of a small automorphism group (every subgroup that occurs
/// for Dynkin diagrams is generated by at most two elements).
inline std::vector<AutomorphismGroup> automorphism_subgroups(const AutomorphismGroup& group) {
  const int rank = group.empty() ? 0 : static_cast<int>(group.front().perm.size());
  std::set<AutomorphismGroup> subs;
  for (const auto& x : group)
    for (const auto& y : group) subs.insert(generate_automorphism_group({x, y}, rank));
  return {subs.begin(), subs.end()};
}

/// Results of the exhaustive self-checks of a root system.
struct RootSystemAudit {
  bool count_matches = false;
  bool closed_under_negation = false;
  bool reflection_stable = false;
  bool coroot_pairings_bounded = false;
  bool root_strings_unbroken = false;
  bool sign_coherent = false;
  bool automorphisms_extend = false;
  std::size_t automorphism_count = 0;

  bool ok() const {
    return count_matches && closed_under_negation && reflection_stable && coroot_pairings_bounded &&
           root_strings_unbroken && sign_coherent && automorphisms_extend;
  }
};

inline RootSystemAudit audit_root_system(const RootSystem& sys) {
  RootSystemAudit a;
  const auto& roots = sys.roots();
  a.count_matches = roots.size() == RootSystem::classical_count(sys.type());
  a.closed_under_negation = std::all_of(roots.begin(), roots.end(), [&](const Root& r) { return sys.contains(-r); });
  a.sign_coherent = std::all_of(roots.begin(), roots.end(), [](const Root& r) { return r.is_positive() || r.is_negative(); });
  a.reflection_stable = true;
  a.coroot_pairings_bounded = true;
  a.root_strings_unbroken = true;
  for (const auto& x : roots) {
    for (const auto& y : roots) {
      if (!sys.contains(sys.reflect(x, y))) a.reflection_stable = false;
      const int c = sys.coroot_pairing(x, y);
      if (std::abs(c) > 3) a.coroot_pairings_bounded = false;
      if (x == y || x == -y) continue;
      std::vector<int> ks;
      for (int k = -4; k <= 4; ++k)
        if (sys.contains(y + k * x)) ks.push_back(k);
      if (ks.empty() || ks.back() - ks.front() + 1 != static_cast<int>(ks.size()) || ks.size() > 4)
        a.root_strings_unbroken = false;
    }
  }
  const auto autos = diagram_automorphisms(sys);
  a.automorphism_count = autos.size();
  a.automorphisms_extend = true;
  for (const auto& s : autos) {
    for (const auto& x : roots) {
      if (!sys.contains(s.apply(x))) a.automorphisms_extend = false;
    }
    for (int i = 0; i < sys.rank() && a.automorphisms_extend; ++i)
      for (int j = 0; j < sys.rank(); ++j)
        if (sys.gram()[s.perm[i]][s.perm[j]] != sys.gram()[i][j]) a.automorphisms_extend = false;
  }
  return a;
}

/// All types with rank at most max_rank, in a fixed order.
inline std::vector<RootSystemType> all_types_up_to(int max_rank) {
  std::vector<RootSystemType> out;
  for (char f : std::string_view("ABCDEFG")) {
    for (int r = 1; r <= max_rank; ++r) {
      RootSystemType t{static_cast<Family>(f), r};
      try {
        t.validate();
        out.push_back(t);
      } catch (const ConstructionError&) {
      }
    }
  }
  return out;
}

}  // namespace sandwich
