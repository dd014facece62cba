#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sandwich/errors.hpp"

namespace sandwich {

/// The ring Z/m. Elements are ints in [0, m).
class ZmRing {
 public:
  explicit ZmRing(int m) : m_(m) {
    if (m < 2) throw ConstructionError("modulus must be at least 2, got " + std::to_string(m));
    if (m > 255) throw ConstructionError("modulus above 255 is not supported");
  }

  int modulus() const { return m_; }
  int reduce(long long x) const {
    long long r = x % m_;
    return static_cast<int>(r < 0 ? r + m_ : r);
  }
  int add(int a, int b) const { return reduce(a + b); }
  int sub(int a, int b) const { return reduce(a - b); }
  int mul(int a, int b) const { return reduce(static_cast<long long>(a) * b); }
  int neg(int a) const { return reduce(-a); }
  int pow(int a, unsigned e) const {
    int r = reduce(1);
    for (; e; --e) r = mul(r, a);
    return r;
  }
  bool is_unit(int a) const { return std::gcd(reduce(a), m_) == 1; }
  std::optional<int> inverse(int a) const {
    a = reduce(a);
    for (int x = 1; x < m_; ++x)
      if (mul(a, x) == 1 % m_) return x;
    return std::nullopt;
  }

  /// Distinct primes dividing m, ascending.
  std::vector<int> prime_divisors() const {
    std::vector<int> out;
    int r = m_;
    for (int p = 2; p * p <= r; ++p) {
      if (r % p) continue;
      out.push_back(p);
      while (r % p == 0) r /= p;
    }
    if (r > 1) out.push_back(r);
    return out;
  }
  bool is_prime() const {
    const auto ps = prime_divisors();
    return ps.size() == 1 && ps[0] == m_;
  }

  friend bool operator==(const ZmRing&, const ZmRing&) = default;

 private:
  int m_;
};

/// The ideal (d) of Z/m with d | m. d = m is the zero ideal, d = 1 the unit ideal.
struct ZmIdeal {
  int d = 1;
  int m = 2;

  bool is_zero() const { return d == m; }
  bool is_unit() const { return d == 1; }
  bool contains(int x) const { return ((x % d) + d) % d == 0; }
  /// this ⊆ other.
  bool subset_of(const ZmIdeal& o) const { return d % o.d == 0; }
  ZmIdeal sum(const ZmIdeal& o) const { return {std::gcd(d, o.d), m}; }
  std::string name() const { return "(" + std::to_string(d) + ")"; }

  friend bool operator==(const ZmIdeal&, const ZmIdeal&) = default;
  friend auto operator<=>(const ZmIdeal&, const ZmIdeal&) = default;
};

inline ZmIdeal make_ideal(const ZmRing& ring, int generator) {
  const int d = std::gcd(ring.reduce(generator), ring.modulus());
  return {d == 0 ? ring.modulus() : d, ring.modulus()};
}

/// All ideals of Z/m, one per divisor, ascending by generator.
inline std::vector<ZmIdeal> ring_ideals(const ZmRing& ring) {
  std::vector<ZmIdeal> out;
  for (int d = 1; d <= ring.modulus(); ++d)
    if (ring.modulus() % d == 0) out.push_back({d, ring.modulus()});
  return out;
}

inline ZmIdeal jacobson_radical(const ZmRing& ring) {
  int r = 1;
  for (int p : ring.prime_divisors()) r *= p;
  return {r, ring.modulus()};
}

}  // namespace sandwich
