#pragma once

// Exact integer lattice arithmetic in small fixed dimension.
//
// Every vector is an integer D-tuple. Rational points of an overlattice
// L of Z^D are stored scaled by a common denominator r, so "v" below means
// the numerator vector of v/r. No floating point is used anywhere.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qbraid/errors.hpp"

namespace qbraid {

using Int = std::int64_t;

template <std::size_t D>
using Vec = std::array<Int, D>;

// D vectors; element j is the j-th column (basis vector).
template <std::size_t D>
using Basis = std::array<Vec<D>, D>;

// Row-major square integer matrix acting on column vectors. Same storage as
// Basis; det() is transpose-invariant so it serves both.
template <std::size_t D>
using Mat = std::array<std::array<Int, D>, D>;

namespace checked {

inline Int add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer overflow in addition");
  return out;
}

inline Int sub(Int a, Int b) {
  Int out;
  if (__builtin_sub_overflow(a, b, &out)) throw OverflowError("integer overflow in subtraction");
  return out;
}

inline Int mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer overflow in multiplication");
  return out;
}

inline Int neg(Int a) { return sub(0, a); }

inline Int abs(Int a) { return a < 0 ? neg(a) : a; }

// Floor division and the matching non-negative remainder.
inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int mod(Int a, Int b) { return sub(a, mul(floor_div(a, b), b)); }

inline Int pow(Int base, unsigned exp) {
  Int out = 1;
  for (unsigned i = 0; i < exp; ++i) out = mul(out, base);
  return out;
}

}  // namespace checked

inline Int gcd(Int a, Int b) { return std::gcd(checked::abs(a), checked::abs(b)); }

// Returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
struct ExtGcd {
  Int g, x, y;
};

inline ExtGcd ext_gcd(Int a, Int b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const Int q = old_r / r;
    old_r = checked::sub(old_r, checked::mul(q, r));
    std::swap(old_r, r);
    old_s = checked::sub(old_s, checked::mul(q, s));
    std::swap(old_s, s);
    old_t = checked::sub(old_t, checked::mul(q, t));
    std::swap(old_t, t);
  }
  if (old_r < 0) return {checked::neg(old_r), checked::neg(old_s), checked::neg(old_t)};
  return {old_r, old_s, old_t};
}

template <std::size_t D>
Int content(const Vec<D>& v) {
  Int g = 0;
  for (Int x : v) g = gcd(g, x);
  return g;
}

template <std::size_t D>
bool is_zero(const Vec<D>& v) {
  return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
}

template <std::size_t D>
Vec<D> operator+(const Vec<D>& a, const Vec<D>& b) {
  Vec<D> out{};
  for (std::size_t i = 0; i < D; ++i) out[i] = checked::add(a[i], b[i]);
  return out;
}

template <std::size_t D>
Vec<D> operator-(const Vec<D>& a, const Vec<D>& b) {
  Vec<D> out{};
  for (std::size_t i = 0; i < D; ++i) out[i] = checked::sub(a[i], b[i]);
  return out;
}

template <std::size_t D>
Vec<D> operator-(const Vec<D>& a) {
  Vec<D> out{};
  for (std::size_t i = 0; i < D; ++i) out[i] = checked::neg(a[i]);
  return out;
}

template <std::size_t D>
Vec<D> operator*(Int s, const Vec<D>& a) {
  Vec<D> out{};
  for (std::size_t i = 0; i < D; ++i) out[i] = checked::mul(s, a[i]);
  return out;
}

template <std::size_t D>
Int dot(const Vec<D>& a, const Vec<D>& b) {
  Int out = 0;
  for (std::size_t i = 0; i < D; ++i) out = checked::add(out, checked::mul(a[i], b[i]));
  return out;
}

inline Vec<3> cross(const Vec<3>& a, const Vec<3>& b) {
  using namespace checked;
  return {sub(mul(a[1], b[2]), mul(a[2], b[1])), sub(mul(a[2], b[0]), mul(a[0], b[2])),
          sub(mul(a[0], b[1]), mul(a[1], b[0]))};
}

inline Int cross(const Vec<2>& a, const Vec<2>& b) {
  return checked::sub(checked::mul(a[0], b[1]), checked::mul(a[1], b[0]));
}

// Determinant of the matrix whose columns are the given vectors (Bareiss
// fraction-free elimination; every division is exact).
template <std::size_t D>
Int det(const Basis<D>& cols) {
  std::array<std::array<Int, D>, D> m{};
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j) m[i][j] = cols[j][i];
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < D; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < D && m[p][k] == 0) ++p;
      if (p == D) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < D; ++i)
      for (std::size_t j = k + 1; j < D; ++j)
        m[i][j] = checked::sub(checked::mul(m[i][j], m[k][k]), checked::mul(m[i][k], m[k][j])) / prev;
    prev = m[k][k];
  }
  return checked::mul(sign, m[D - 1][D - 1]);
}

template <std::size_t D>
Vec<D> apply(const Mat<D>& m, const Vec<D>& v) {
  Vec<D> out{};
  for (std::size_t i = 0; i < D; ++i) out[i] = dot(m[i], v);
  return out;
}

template <std::size_t D>
Mat<D> multiply(const Mat<D>& a, const Mat<D>& b) {
  Mat<D> out{};
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j) {
      Int s = 0;
      for (std::size_t k = 0; k < D; ++k) s = checked::add(s, checked::mul(a[i][k], b[k][j]));
      out[i][j] = s;
    }
  return out;
}

template <std::size_t D>
Mat<D> identity_matrix() {
  Mat<D> out{};
  for (std::size_t i = 0; i < D; ++i) out[i][i] = 1;
  return out;
}

// Adjugate, so that m * adjugate(m) = det(m) * I.
template <std::size_t D>
Mat<D> adjugate(const Mat<D>& m) {
  Mat<D> out{};
  if constexpr (D == 1) {
    out[0][0] = 1;
  } else {
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < D; ++j) {
        Mat<D - 1> minor{};
        for (std::size_t r = 0, mr = 0; r < D; ++r) {
          if (r == j) continue;
          for (std::size_t c = 0, mc = 0; c < D; ++c) {
            if (c == i) continue;
            minor[mr][mc++] = m[r][c];
          }
          ++mr;
        }
        const Int cof = det<D - 1>(minor);
        out[i][j] = ((i + j) % 2 == 0) ? cof : checked::neg(cof);
      }
  }
  return out;
}

template <std::size_t D>
Mat<D> from_columns(const Basis<D>& cols) {
  Mat<D> out{};
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j) out[i][j] = cols[j][i];
  return out;
}

// Canonical column Hermite form of the lattice spanned by `gens`:
// column j has zeros above row j, a positive pivot at row j, and every entry
// left of a pivot lies in [0, pivot). Throws RankError when the span is not
// full rank.
template <std::size_t D>
Basis<D> hermite_basis(std::span<const Vec<D>> gens) {
  std::vector<Vec<D>> cols(gens.begin(), gens.end());
  Basis<D> out{};
  std::size_t next = 0;  // columns [0, next) are finished pivots
  for (std::size_t row = 0; row < D; ++row) {
    // Euclid on row `row` across the unfinished columns.
    for (;;) {
      std::size_t best = cols.size();
      for (std::size_t j = next; j < cols.size(); ++j)
        if (cols[j][row] != 0 && (best == cols.size() || checked::abs(cols[j][row]) < checked::abs(cols[best][row])))
          best = j;
      if (best == cols.size()) throw RankError("generators do not span a full-rank lattice");
      std::swap(cols[next], cols[best]);
      bool done = true;
      for (std::size_t j = next + 1; j < cols.size(); ++j) {
        if (cols[j][row] == 0) continue;
        const Int q = checked::floor_div(cols[j][row], cols[next][row]);
        cols[j] = cols[j] - q * cols[next];
        if (cols[j][row] != 0) done = false;
      }
      if (done) break;
    }
    if (cols[next][row] < 0) cols[next] = -cols[next];
    ++next;
  }
  for (std::size_t j = 0; j < D; ++j) out[j] = cols[j];
  for (std::size_t row = 1; row < D; ++row)
    for (std::size_t j = 0; j < row; ++j) {
      const Int q = checked::floor_div(out[j][row], out[row][row]);
      if (q != 0) out[j] = out[j] - q * out[row];
    }
  return out;
}

// A rational point (1/denominator) * numerators.
template <std::size_t D>
struct LatticePoint {
  Vec<D> numerators{};
  Int denominator = 1;

  LatticePoint() = default;
  LatticePoint(Vec<D> num, Int den) : numerators(num), denominator(den) {
    if (den < 1) throw LatticeError("denominator must be positive");
  }

  LatticePoint reduced() const {
    const Int g = gcd(content(numerators), denominator);
    Vec<D> n{};
    for (std::size_t i = 0; i < D; ++i) n[i] = numerators[i] / g;
    return {n, denominator / g};
  }

  // Numerator vector over a different common denominator; throws when the
  // point is not representable there.
  Vec<D> scaled_to(Int den) const {
    Vec<D> out{};
    for (std::size_t i = 0; i < D; ++i) {
      const Int num = checked::mul(numerators[i], den);
      if (num % denominator != 0) throw LatticeError("point not representable over denominator " + std::to_string(den));
      out[i] = num / denominator;
    }
    return out;
  }

  friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
    const auto ra = a.reduced(), rb = b.reduced();
    return ra.numerators == rb.numerators && ra.denominator == rb.denominator;
  }
};

// A full-rank lattice L in (1/r) Z^D containing Z^D. Stored by its scaled
// canonical basis, i.e. the Hermite basis of r*L inside Z^D.
template <std::size_t D>
class Lattice {
 public:
  Lattice() : Lattice(1, standard_generators(1)) {}

  Lattice(Int denominator, std::vector<Vec<D>> scaled_generators)
      : denominator_(denominator), generators_(std::move(scaled_generators)) {
    if (denominator_ < 1) throw LatticeError("denominator must be positive");
    basis_ = hermite_basis<D>(generators_);
    basis_det_ = det<D>(basis_);
    for (std::size_t i = 0; i < D; ++i) {
      Vec<D> e{};
      e[i] = denominator_;
      if (!contains(e)) throw LatticeError("lattice does not contain Z^D");
    }
  }

  static Lattice standard() { return Lattice(); }

  static std::vector<Vec<D>> standard_generators(Int denominator) {
    std::vector<Vec<D>> out;
    for (std::size_t i = 0; i < D; ++i) {
      Vec<D> e{};
      e[i] = denominator;
      out.push_back(e);
    }
    return out;
  }

  Int denominator() const { return denominator_; }
  const std::vector<Vec<D>>& generators() const { return generators_; }
  const Basis<D>& basis() const { return basis_; }
  static constexpr std::size_t rank() { return D; }

  // |det| of the scaled basis; the covolume of L is basis_determinant() / r^D.
  Int basis_determinant() const { return basis_det_; }

  // Index of Z^D in L.
  Int index_in_refinement() const { return checked::pow(denominator_, D) / basis_det_; }

  // Integer coordinates of a scaled vector in the canonical basis, if it lies in L.
  std::optional<Vec<D>> coords(const Vec<D>& v) const {
    Vec<D> rest = v;
    Vec<D> c{};
    for (std::size_t j = 0; j < D; ++j) {
      if (rest[j] % basis_[j][j] != 0) return std::nullopt;
      c[j] = rest[j] / basis_[j][j];
      rest = rest - c[j] * basis_[j];
    }
    return c;
  }

  Vec<D> coords_or_throw(const Vec<D>& v) const {
    auto c = coords(v);
    if (!c) throw LatticeError("vector does not lie in the lattice");
    return *c;
  }

  bool contains(const Vec<D>& v) const { return coords(v).has_value(); }

  bool is_primitive(const Vec<D>& v) const {
    auto c = coords(v);
    return c && content(*c) == 1;
  }

  // Scales v down to the primitive lattice vector on its ray.
  Vec<D> primitive(const Vec<D>& v) const {
    const Vec<D> c = coords_or_throw(v);
    const Int g = content(c);
    if (g == 0) throw LatticeError("zero vector has no primitive generator");
    Vec<D> out{};
    for (std::size_t i = 0; i < D; ++i) out[i] = v[i] / g;
    return out;
  }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.denominator_ == b.denominator_ && a.basis_ == b.basis_;
  }

 private:
  Int denominator_;
  std::vector<Vec<D>> generators_;
  Basis<D> basis_{};
  Int basis_det_ = 1;
};

// Canonical basis of the lattice spanned by the given scaled generators.
template <std::size_t D>
Basis<D> basis_of(const Lattice<D>& lattice) {
  return lattice.basis();
}

// A cone is a sorted set of indices into a shared ray table.
struct Cone {
  std::vector<std::size_t> ray_indices;
  std::size_t dimension = 0;

  Cone() = default;
  Cone(std::vector<std::size_t> rays, std::size_t dim) : ray_indices(std::move(rays)), dimension(dim) {
    std::sort(ray_indices.begin(), ray_indices.end());
  }

  bool has_ray(std::size_t i) const { return std::binary_search(ray_indices.begin(), ray_indices.end(), i); }

  friend bool operator==(const Cone& a, const Cone& b) { return a.ray_indices == b.ray_indices; }
  friend bool operator<(const Cone& a, const Cone& b) { return a.ray_indices < b.ray_indices; }
};

template <std::size_t D>
std::size_t rank_of(std::span<const Vec<D>> vs) {
  // Fraction-free row echelon on a copy.
  std::vector<Vec<D>> rows(vs.begin(), vs.end());
  std::size_t rank = 0;
  for (std::size_t col = 0; col < D && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      const Int a = rows[rank][col], b = rows[i][col];
      rows[i] = a * rows[i] - b * rows[rank];
      const Int g = content(rows[i]);
      if (g > 1)
        for (auto& x : rows[i]) x /= g;
    }
    ++rank;
  }
  return rank;
}

// Lattice determinant of a full-dimensional simplicial cone: |det| of its
// primitive generators measured in a basis of L. Value 1 means a smooth chart.
template <std::size_t D>
Int normalized_volume(std::span<const Vec<D>> generators, const Lattice<D>& lattice) {
  if (generators.size() != D) throw DimensionError("normalized volume needs a simplicial full-dimensional cone");
  Basis<D> cols{};
  for (std::size_t j = 0; j < D; ++j) cols[j] = lattice.primitive(generators[j]);
  const Int d = checked::abs(det<D>(cols));
  if (d == 0) throw DimensionError("cone is not full-dimensional");
  return d / lattice.basis_determinant();
}

template <std::size_t D>
Int normalized_volume(const Cone& cone, std::span<const Vec<D>> rays, const Lattice<D>& lattice) {
  std::vector<Vec<D>> gens;
  for (auto i : cone.ray_indices) gens.push_back(rays[i]);
  return normalized_volume<D>(gens, lattice);
}

enum class Containment { outside, boundary, interior };

// Exact membership of `point` in the simplicial cone spanned by `generators`.
// `interior` means the relative interior of the cone.
template <std::size_t D>
Containment contains(std::span<const Vec<D>> generators, const Vec<D>& point) {
  const std::size_t k = generators.size();
  if (k == 0) return is_zero(point) ? Containment::interior : Containment::outside;
  if (rank_of<D>(generators) != k) throw DimensionError("cone generators are not linearly independent");
  // Complete to a basis of Q^D with standard vectors, then solve by Cramer.
  Basis<D> cols{};
  for (std::size_t j = 0; j < k; ++j) cols[j] = generators[j];
  std::size_t filled = k;
  for (std::size_t e = 0; e < D && filled < D; ++e) {
    Vec<D> unit{};
    unit[e] = 1;
    std::vector<Vec<D>> trial(cols.begin(), cols.begin() + filled);
    trial.push_back(unit);
    if (rank_of<D>(trial) == filled + 1) cols[filled++] = unit;
  }
  const Int base = det<D>(cols);
  const int sign = base > 0 ? 1 : -1;
  bool on_boundary = false;
  for (std::size_t j = 0; j < D; ++j) {
    Basis<D> swapped = cols;
    swapped[j] = point;
    const Int num = det<D>(swapped);
    const int s = num == 0 ? 0 : ((num > 0 ? 1 : -1) * sign);
    if (j >= k) {
      if (s != 0) return Containment::outside;
    } else if (s < 0) {
      return Containment::outside;
    } else if (s == 0) {
      on_boundary = true;
    }
  }
  return on_boundary ? Containment::boundary : Containment::interior;
}

// Unimodular A with A * c = e_0 for a primitive integer vector c.
template <std::size_t D>
Mat<D> unimodular_to_first_axis(const Vec<D>& c) {
  if (content(c) != 1) throw LatticeError("vector is not primitive");
  Mat<D> a = identity_matrix<D>();
  Vec<D> v = c;
  // Fold every coordinate into v[0] by 2x2 unimodular row operations.
  for (std::size_t i = 1; i < D; ++i) {
    if (v[i] == 0) continue;
    const auto [g, x, y] = ext_gcd(v[0], v[i]);
    const Int p = v[0] / g, q = v[i] / g;
    // [x y; -q p] has det x*p + y*q = 1.
    auto row0 = a[0], rowi = a[i];
    for (std::size_t j = 0; j < D; ++j) {
      a[0][j] = checked::add(checked::mul(x, row0[j]), checked::mul(y, rowi[j]));
      a[i][j] = checked::sub(checked::mul(p, rowi[j]), checked::mul(q, row0[j]));
    }
    v[0] = g;
    v[i] = 0;
  }
  if (v[0] == -1) {
    for (auto& x : a[0]) x = checked::neg(x);
  }
  return a;
}

}  // namespace qbraid
