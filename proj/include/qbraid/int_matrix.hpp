#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "qbraid/lattice.hpp"

namespace qbraid {

// Dense square integer matrix; used for Euler pairings and twist matrices on
// K-classes [E_1], ..., [E_n].
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) : n_(rows.size()), a_() {
    for (const auto& r : rows) {
      if (r.size() != n_) throw DimensionError("matrix must be square");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const { return n_; }
  Int& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  Int operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::vector<Int> row(std::size_t i) const { return {a_.begin() + static_cast<std::ptrdiff_t>(i * n_), a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_)}; }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.n_ != y.n_) throw DimensionError("matrix size mismatch");
    IntMatrix out(x.n_);
    for (std::size_t i = 0; i < x.n_; ++i)
      for (std::size_t k = 0; k < x.n_; ++k) {
        if (x(i, k) == 0) continue;
        for (std::size_t j = 0; j < x.n_; ++j) out(i, j) = checked::add(out(i, j), checked::mul(x(i, k), y(k, j)));
      }
    return out;
  }

  friend IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix out(x.n_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) out.a_[i] = checked::sub(x.a_[i], y.a_[i]);
    return out;
  }

  std::vector<Int> apply(const std::vector<Int>& v) const {
    std::vector<Int> out(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i] = checked::add(out[i], checked::mul((*this)(i, j), v[j]));
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Int determinant() const {
    if (n_ == 0) return 1;
    std::vector<Int> m = a_;
    auto at = [&](std::size_t i, std::size_t j) -> Int& { return m[i * n_ + j]; };
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n_; ++k) {
      if (at(k, k) == 0) {
        std::size_t p = k + 1;
        while (p < n_ && at(p, k) == 0) ++p;
        if (p == n_) return 0;
        for (std::size_t j = 0; j < n_; ++j) std::swap(at(k, j), at(p, j));
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n_; ++i)
        for (std::size_t j = k + 1; j < n_; ++j)
          at(i, j) = checked::sub(checked::mul(at(i, j), at(k, k)), checked::mul(at(i, k), at(k, j))) / prev;
      prev = at(k, k);
    }
    return sign * at(n_ - 1, n_ - 1);
  }

  // Inverse of a unimodular matrix, via cofactors.
  IntMatrix inverse() const {
    const Int d = determinant();
    if (d != 1 && d != -1) throw DimensionError("matrix is not invertible over the integers");
    IntMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        IntMatrix minor(n_ - 1);
        for (std::size_t r = 0, mr = 0; r < n_; ++r) {
          if (r == i) continue;
          for (std::size_t c = 0, mc = 0; c < n_; ++c) {
            if (c == j) continue;
            minor(mr, mc++) = (*this)(r, c);
          }
          ++mr;
        }
        const Int cof = ((i + j) % 2 == 0 ? 1 : -1) * minor.determinant();
        out(j, i) = cof * d;
      }
    return out;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Int> a_;
};

}  // namespace qbraid
