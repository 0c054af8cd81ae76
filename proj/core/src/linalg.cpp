// Copyright 2026 The tvadmm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tvadmm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tvadmm/error.hpp"

namespace tvadmm {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiRelTol = 1e-12;
constexpr double kSignTol = 1e-12;

void check_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw InvalidInputError(std::string(what) + ": non-finite entry");
    }
  }
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SymMatrix::SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {
  if (n == 0) throw InvalidInputError("SymMatrix: dimension must be >= 1");
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  check_finite(diag, "SymMatrix::diagonal");
  SymMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.data_[i * m.n_ + i] = diag[i];
  return m;
}

SymMatrix SymMatrix::from_row_major(std::size_t n,
                                    std::span<const double> values) {
  if (values.size() != n * n) {
    throw InvalidInputError("SymMatrix: expected " + std::to_string(n * n) +
                            " entries, got " + std::to_string(values.size()));
  }
  check_finite(values, "SymMatrix");
  SymMatrix m(n);
  double scale = 1.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < n; ++i) {
    m.data_[i * n + i] = values[i * n + i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = values[i * n + j];
      const double b = values[j * n + i];
      if (std::abs(a - b) > kSymmetryTolerance * scale) {
        throw InvalidInputError("SymMatrix: entries (" + std::to_string(i) +
                                "," + std::to_string(j) +
                                ") and its transpose differ");
      }
      const double avg = a == b ? a : 0.5 * (a + b);
      m.data_[i * n + j] = avg;
      m.data_[j * n + i] = avg;
    }
  }
  return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw InvalidInputError("SymMatrix: matrix not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return from_row_major(n, flat);
}

SymMatrix SymMatrix::outer(std::span<const double> y) {
  check_finite(y, "SymMatrix::outer");
  SymMatrix m(y.size());
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      m.data_[i * n + j] = y[i] * y[j];
      m.data_[j * n + i] = y[i] * y[j];
    }
  }
  return m;
}

void SymMatrix::set(std::size_t i, std::size_t j, double value) {
  data_[i * n_ + j] = value;
  data_[j * n_ + i] = value;
}

double SymMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (double v : data_) sum += v * v;
  return std::sqrt(sum);
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += data_[i * n_ + i];
  return t;
}

bool SymMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (i != j && data_[i * n_ + j] != 0.0) return false;
    }
  }
  return true;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  if (other.n_ != n_) throw InvalidInputError("SymMatrix: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other) {
  if (other.n_ != n_) throw InvalidInputError("SymMatrix: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

std::vector<double> SymMatrix::multiply(std::span<const double> x) const {
  if (x.size() != n_) throw InvalidInputError("SymMatrix: dimension mismatch");
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += data_[i * n_ + j] * x[j];
    y[i] = acc;
  }
  return y;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

SymMatrix EigenDecomposition::reconstruct(
    std::span<const double> values) const {
  const std::size_t n = eigenvectors.dim();
  if (values.size() != n) {
    throw InvalidInputError("reconstruct: expected " + std::to_string(n) +
                            " eigenvalues");
  }
  SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        acc += eigenvectors(i, k) * values[k] * eigenvectors(j, k);
      }
      out.set(i, j, acc);
    }
  }
  return out;
}

EigenDecomposition sym_eig(const SymMatrix& input) {
  const std::size_t n = input.dim();
  check_finite(input.data(), "sym_eig");

  Matrix a(n);
  std::copy(input.data().begin(), input.data().end(), a.data().begin());
  Matrix v = Matrix::identity(n);

  const double threshold = kJacobiRelTol * input.frobenius_norm();
  auto off_norm = [&] {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) sum += a(i, j) * a(i, j);
      }
    }
    return std::sqrt(sum);
  };

  int sweep = 0;
  double off = off_norm();
  while (off > threshold) {
    if (sweep == kMaxJacobiSweeps) throw EigenSolverError(off, sweep);
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a(r, p);
            const double arq = a(r, q);
            a(r, p) = c * arp - s * arq;
            a(p, r) = a(r, p);
            a(r, q) = s * arp + c * arq;
            a(q, r) = a(r, q);
          }
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
    ++sweep;
    off = off_norm();
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i) < a(j, j);
  });

  EigenDecomposition out{std::vector<double>(n), Matrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = a(src, src);
    double sign = 1.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (std::abs(v(r, src)) > kSignTol) {
        sign = v(r, src) < 0.0 ? -1.0 : 1.0;
        break;
      }
    }
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = sign * v(r, src);
  }
  return out;
}

double CholeskyFactor::log_det() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < lower_.dim(); ++i) acc += std::log(lower_(i, i));
  return 2.0 * acc;
}

CholeskyFactor spd_factor(const SymMatrix& a) {
  const std::size_t n = a.dim();
  check_finite(a.data(), "spd_factor");
  Matrix l(n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = a(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > 0.0)) throw NotPositiveDefiniteError(j, pivot);
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double acc = a(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * l(j, k);
      l(i, j) = acc / ljj;
    }
  }
  return CholeskyFactor(std::move(l));
}

std::vector<double> forward_solve(const CholeskyFactor& factor,
                                  std::span<const double> b) {
  const std::size_t n = factor.dim();
  if (b.size() != n) {
    throw InvalidInputError("spd_solve: right-hand side has length " +
                            std::to_string(b.size()) + ", expected " +
                            std::to_string(n));
  }
  std::vector<double> y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    double acc = y[i];
    for (std::size_t k = 0; k < i; ++k) acc -= factor(i, k) * y[k];
    y[i] = acc / factor(i, i);
  }
  return y;
}

std::vector<double> spd_solve(const CholeskyFactor& factor,
                              std::span<const double> b) {
  std::vector<double> x = forward_solve(factor, b);
  const std::size_t n = factor.dim();
  for (std::size_t ii = n; ii-- > 0;) {
    double acc = x[ii];
    for (std::size_t k = ii + 1; k < n; ++k) acc -= factor(k, ii) * x[k];
    x[ii] = acc / factor(ii, ii);
  }
  return x;
}

SymMatrix spd_inverse(const CholeskyFactor& factor) {
  const std::size_t n = factor.dim();
  SymMatrix inv(n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const std::vector<double> col = spd_solve(factor, e);
    e[j] = 0.0;
    for (std::size_t i = j; i < n; ++i) inv.set(i, j, col[i]);
  }
  return inv;
}

bool is_positive_definite(const SymMatrix& a, double rel_tol) {
  const EigenDecomposition eig = sym_eig(a);
  double largest = 0.0;
  for (double lam : eig.eigenvalues) largest = std::max(largest, std::abs(lam));
  return largest > 0.0 && eig.eigenvalues.front() > rel_tol * largest;
}

}  // namespace tvadmm
