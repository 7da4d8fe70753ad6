#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>

namespace geomopt {

// Dense N x N matrix, row-major. All tensors in this library are 3x3 or 4x4,
// so everything lives on the stack and is passed by value.
template <std::size_t N>
struct Matrix {
  std::array<double, N * N> a{};

  constexpr double& operator()(std::size_t i, std::size_t j) { return a[i * N + j]; }
  constexpr double operator()(std::size_t i, std::size_t j) const { return a[i * N + j]; }

  static constexpr std::size_t size() { return N; }

  static constexpr Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static constexpr Matrix diagonal(const std::array<double, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  constexpr Matrix transposed() const {
    Matrix t;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
  }

  friend constexpr bool operator==(const Matrix&, const Matrix&) = default;

  friend constexpr Matrix operator+(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < N * N; ++i) x.a[i] += y.a[i];
    return x;
  }
  friend constexpr Matrix operator-(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < N * N; ++i) x.a[i] -= y.a[i];
    return x;
  }
  friend constexpr Matrix operator*(double s, Matrix x) {
    for (double& v : x.a) v *= s;
    return x;
  }
  friend constexpr Matrix operator*(const Matrix& x, const Matrix& y) {
    Matrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const double xik = x(i, k);
        for (std::size_t j = 0; j < N; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }
};

using Mat3 = Matrix<3>;
using Mat4 = Matrix<4>;

// LU factorisation with partial pivoting, kept private to the helpers below.
namespace detail {

template <std::size_t N>
struct Lu {
  Matrix<N> lu;
  std::array<std::size_t, N> perm{};
  int sign = 1;
  bool singular = false;
};

template <std::size_t N>
constexpr Lu<N> lu_decompose(const Matrix<N>& m) {
  Lu<N> f{m, {}, 1, false};
  for (std::size_t i = 0; i < N; ++i) f.perm[i] = i;
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t pivot = col;
    double best = std::abs(f.lu(col, col));
    for (std::size_t r = col + 1; r < N; ++r) {
      if (std::abs(f.lu(r, col)) > best) {
        best = std::abs(f.lu(r, col));
        pivot = r;
      }
    }
    if (best == 0.0) {
      f.singular = true;
      continue;
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < N; ++j) std::swap(f.lu(col, j), f.lu(pivot, j));
      std::swap(f.perm[col], f.perm[pivot]);
      f.sign = -f.sign;
    }
    for (std::size_t r = col + 1; r < N; ++r) {
      const double factor = f.lu(r, col) / f.lu(col, col);
      f.lu(r, col) = factor;
      if (factor == 0.0) continue;
      for (std::size_t j = col + 1; j < N; ++j) f.lu(r, j) -= factor * f.lu(col, j);
    }
  }
  return f;
}

template <std::size_t N>
constexpr std::array<double, N> lu_solve(const Lu<N>& f, const std::array<double, N>& b) {
  std::array<double, N> x{};
  for (std::size_t i = 0; i < N; ++i) {
    double s = b[f.perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t ii = N; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t j = ii + 1; j < N; ++j) s -= f.lu(ii, j) * x[j];
    x[ii] = s / f.lu(ii, ii);
  }
  return x;
}

}  // namespace detail

template <std::size_t N>
constexpr double determinant(const Matrix<N>& m) {
  const auto f = detail::lu_decompose(m);
  if (f.singular) return 0.0;
  double d = f.sign;
  for (std::size_t i = 0; i < N; ++i) d *= f.lu(i, i);
  return d;
}

/// Solves m x = b. Returns nullopt when a zero pivot is met.
template <std::size_t N>
constexpr std::optional<std::array<double, N>> solve(const Matrix<N>& m,
                                                     const std::array<double, N>& b) {
  const auto f = detail::lu_decompose(m);
  if (f.singular) return std::nullopt;
  return detail::lu_solve(f, b);
}

template <std::size_t N>
constexpr std::optional<Matrix<N>> invert(const Matrix<N>& m) {
  const auto f = detail::lu_decompose(m);
  if (f.singular) return std::nullopt;
  Matrix<N> inv;
  for (std::size_t c = 0; c < N; ++c) {
    std::array<double, N> e{};
    e[c] = 1.0;
    const auto col = detail::lu_solve(f, e);
    for (std::size_t r = 0; r < N; ++r) inv(r, c) = col[r];
  }
  return inv;
}

}  // namespace geomopt
