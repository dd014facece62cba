#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <string>

#include "sandwich/errors.hpp"
#include "sandwich/zm.hpp"

namespace sandwich {

inline constexpr int kMaxDegree = 4;

/// Square matrix of size n ≤ 4 over Z/m, row-major with canonical entries.
/// Unused slots stay zero so that bytewise equality is matrix equality.
struct ModMatrix {
  std::uint8_t n = 0;
  std::array<std::uint8_t, kMaxDegree * kMaxDegree> e{};

  int operator()(int i, int j) const { return e[i * kMaxDegree + j]; }
  void set(int i, int j, int v) { e[i * kMaxDegree + j] = static_cast<std::uint8_t>(v); }

  static ModMatrix identity(int n) {
    if (n < 1 || n > kMaxDegree) throw ConstructionError("matrix degree must be in 1..4");
    ModMatrix r;
    r.n = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i) r.set(i, i, 1);
    return r;
  }
  static ModMatrix zero(int n) {
    ModMatrix r;
    r.n = static_cast<std::uint8_t>(n);
    return r;
  }

  bool is_identity() const { return *this == identity(n); }

  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;
  friend auto operator<=>(const ModMatrix&, const ModMatrix&) = default;
};

inline ModMatrix mat_mul(const ModMatrix& a, const ModMatrix& b, int m) {
  ModMatrix r = ModMatrix::zero(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      int s = 0;
      for (int k = 0; k < a.n; ++k) s += a(i, k) * b(k, j);
      r.set(i, j, s % m);
    }
  return r;
}

inline ModMatrix mat_add(const ModMatrix& a, const ModMatrix& b, int m) {
  ModMatrix r = ModMatrix::zero(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r.set(i, j, (a(i, j) + b(i, j)) % m);
  return r;
}

inline ModMatrix mat_sub(const ModMatrix& a, const ModMatrix& b, int m) {
  ModMatrix r = ModMatrix::zero(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r.set(i, j, (a(i, j) - b(i, j) + m) % m);
  return r;
}

inline ModMatrix mat_scale(const ModMatrix& a, int c, int m) {
  c = ((c % m) + m) % m;
  ModMatrix r = ModMatrix::zero(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r.set(i, j, a(i, j) * c % m);
  return r;
}

inline ModMatrix transpose(const ModMatrix& a) {
  ModMatrix r = ModMatrix::zero(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r.set(j, i, a(i, j));
  return r;
}

/// Entrywise reduction to Z/d for d | m.
inline ModMatrix reduce_mod(const ModMatrix& a, int d) {
  ModMatrix r = ModMatrix::zero(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r.set(i, j, a(i, j) % d);
  return r;
}

namespace detail {
inline long long det_rec(const int* a, int n, int stride) {
  if (n == 1) return a[0];
  if (n == 2) return static_cast<long long>(a[0]) * a[stride + 1] - static_cast<long long>(a[1]) * a[stride];
  long long s = 0;
  int minor[kMaxDegree * kMaxDegree];
  for (int c = 0; c < n; ++c) {
    if (a[c] == 0) continue;
    for (int i = 1; i < n; ++i)
      for (int j = 0, k = 0; j < n; ++j)
        if (j != c) minor[(i - 1) * kMaxDegree + k++] = a[i * stride + j];
    const long long sub = det_rec(minor, n - 1, kMaxDegree);
    s += (c % 2 ? -1 : 1) * a[c] * sub;
  }
  return s;
}
}  // namespace detail

/// Determinant of the submatrix on rows/columns listed in idx.
template <class Index>
int principal_minor(const ModMatrix& a, const Index& idx, int m) {
  int buf[kMaxDegree * kMaxDegree];
  const int k = static_cast<int>(idx.size());
  if (k == 0) return 1 % m;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) buf[i * kMaxDegree + j] = a(idx[i], idx[j]);
  const long long d = detail::det_rec(buf, k, kMaxDegree) % m;
  return static_cast<int>(d < 0 ? d + m : d);
}

inline int det(const ModMatrix& a, int m) {
  int buf[kMaxDegree * kMaxDegree];
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) buf[i * kMaxDegree + j] = a(i, j);
  const long long d = detail::det_rec(buf, a.n, kMaxDegree) % m;
  return static_cast<int>(d < 0 ? d + m : d);
}

inline ModMatrix adjugate(const ModMatrix& a, int m) {
  const int n = a.n;
  ModMatrix r = ModMatrix::zero(n);
  if (n == 1) {
    r.set(0, 0, 1 % m);
    return r;
  }
  int buf[kMaxDegree * kMaxDegree];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int p = 0, pi = 0; p < n; ++p) {
        if (p == i) continue;
        for (int q = 0, qj = 0; q < n; ++q) {
          if (q == j) continue;
          buf[pi * kMaxDegree + qj++] = a(p, q);
        }
        ++pi;
      }
      long long c = detail::det_rec(buf, n - 1, kMaxDegree) % m;
      if ((i + j) % 2) c = -c;
      r.set(j, i, static_cast<int>((c % m + m) % m));
    }
  return r;
}

/// Inverse over Z/m; throws if the determinant is not a unit.
inline ModMatrix inverse(const ModMatrix& a, int m) {
  const ZmRing ring(m);
  const auto dinv = ring.inverse(det(a, m));
  if (!dinv) throw PreconditionError("matrix is not invertible mod " + std::to_string(m));
  return mat_scale(adjugate(a, m), *dinv, m);
}

inline std::string to_string(const ModMatrix& a) {
  std::string s = "[";
  for (int i = 0; i < a.n; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < a.n; ++j) s += (j ? "," : "") + std::to_string(a(i, j));
    s += "]";
  }
  return s + "]";
}

}  // namespace sandwich
