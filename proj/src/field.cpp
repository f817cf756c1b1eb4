#include "beadlink/field.hpp"

#include <sstream>

#include "beadlink/error.hpp"

namespace beadlink {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::size_t checked_power(std::uint64_t p, std::size_t n, std::size_t limit) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (r > limit / p) {
      throw InputError(std::to_string(p) + "^" + std::to_string(n) + " exceeds limit " +
                       std::to_string(limit));
    }
    r *= p;
  }
  return r;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
  if (p > (1u << 31)) throw InputError("modulus " + std::to_string(p) + " too large");
}

namespace {

void require_same_modulus(std::uint32_t a, std::uint32_t b) {
  if (a != b) {
    throw InputError("modulus mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw InputError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

FieldElem operator+(FieldElem a, FieldElem b) {
  require_same_modulus(a.modulus, b.modulus);
  FieldElem r = a;
  r.value = static_cast<Scalar>((std::uint64_t{a.value} + b.value) % a.modulus);
  return r;
}

FieldElem operator*(FieldElem a, FieldElem b) {
  require_same_modulus(a.modulus, b.modulus);
  FieldElem r = a;
  r.value = static_cast<Scalar>((std::uint64_t{a.value} * b.value) % a.modulus);
  return r;
}

FieldElem operator-(FieldElem a) {
  if (a.value != 0) a.value = a.modulus - a.value;
  return a;
}

Vec::Vec(const PrimeField& f, std::vector<Scalar> entries) : p_(f.modulus()), entries_(std::move(entries)) {
  for (auto& e : entries_) e %= p_;
}

Vec::Vec(const PrimeField& f, std::size_t n) : p_(f.modulus()), entries_(n, 0) {}

bool Vec::is_zero() const noexcept {
  for (auto e : entries_) {
    if (e != 0) return false;
  }
  return true;
}

Matrix::Matrix(const PrimeField& f, std::size_t n) : p_(f.modulus()), n_(n), entries_(n * n, 0) {}

Matrix::Matrix(const PrimeField& f, std::size_t n, std::vector<Scalar> row_major)
    : p_(f.modulus()), n_(n), entries_(std::move(row_major)) {
  if (entries_.size() != n * n) {
    throw InputError("matrix needs " + std::to_string(n * n) + " entries, got " +
                     std::to_string(entries_.size()));
  }
  for (auto& e : entries_) e %= p_;
}

void Matrix::set(std::size_t i, std::size_t j, std::int64_t v) {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  entries_[i * n_ + j] = static_cast<Scalar>(r < 0 ? r + p_ : r);
}

bool Matrix::is_zero() const noexcept {
  for (auto e : entries_) {
    if (e != 0) return false;
  }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t = *this;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) t.entries_[j * n_ + i] = entries_[i * n_ + j];
  }
  return t;
}

bool is_alternating(const Matrix& m) {
  const std::uint32_t p = m.modulus();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (m.at(i, i) != 0) return false;
    for (std::size_t j = i + 1; j < m.dim(); ++j) {
      if ((m.at(i, j) + m.at(j, i)) % p != 0) return false;
    }
  }
  return true;
}

std::size_t matrix_rank(const Matrix& m) {
  PrimeField f(m.modulus());
  const std::size_t n = m.dim();
  std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j);
  }
  auto inverse = [&](Scalar x) {
    // Fermat: x^(p-2)
    Scalar r = 1, b = x;
    for (std::uint64_t e = f.modulus() - 2; e; e >>= 1) {
      if (e & 1) r = f.mul(r, b);
      b = f.mul(b, b);
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) continue;
    std::swap(a[pivot], a[rank]);
    const Scalar inv = inverse(a[rank][col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      const Scalar k = f.mul(a[r][col], inv);
      for (std::size_t c = col; c < n; ++c) a[r][c] = f.sub(a[r][c], f.mul(k, a[rank][c]));
    }
    ++rank;
  }
  return rank;
}

Vec vec_add(const Vec& a, const Vec& b) {
  require_same_modulus(a.modulus(), b.modulus());
  require_same_dim(a.dim(), b.dim());
  std::vector<Scalar> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<Scalar>((std::uint64_t{a[i]} + b[i]) % a.modulus());
  }
  return Vec(a.modulus(), std::move(out), nullptr);
}

Vec scalar_mul(FieldElem s, const Vec& v) {
  require_same_modulus(s.modulus, v.modulus());
  std::vector<Scalar> out(v.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<Scalar>((std::uint64_t{s.value} * v[i]) % v.modulus());
  }
  return Vec(v.modulus(), std::move(out), nullptr);
}

FieldElem bilinear_eval(const Matrix& b, const Vec& u, const Vec& v) {
  require_same_modulus(b.modulus(), u.modulus());
  require_same_modulus(b.modulus(), v.modulus());
  require_same_dim(b.dim(), u.dim());
  require_same_dim(b.dim(), v.dim());
  const std::uint64_t p = b.modulus();
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    if (u[i] == 0) continue;
    std::uint64_t row = 0;
    for (std::size_t j = 0; j < b.dim(); ++j) row = (row + std::uint64_t{b.at(i, j)} * v[j]) % p;
    acc = (acc + u[i] * row) % p;
  }
  FieldElem r;
  r.value = static_cast<Scalar>(acc);
  r.modulus = b.modulus();
  return r;
}

std::vector<Vec> all_vectors(std::uint32_t p, std::size_t n) {
  PrimeField f(p);
  if (n == 0) throw InputError("vector dimension must be at least 1");
  const std::size_t count = checked_power(p, n, std::size_t{1} << 32);
  std::vector<Vec> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(vector_at(f, n, k));
  return out;
}

std::size_t vector_index(const Vec& v) {
  std::size_t idx = 0;
  for (auto e : v.entries()) idx = idx * v.modulus() + e;
  return idx;
}

Vec vector_at(const PrimeField& f, std::size_t n, std::size_t index) {
  std::vector<Scalar> e(n);
  for (std::size_t i = n; i-- > 0;) {
    e[i] = static_cast<Scalar>(index % f.modulus());
    index /= f.modulus();
  }
  return Vec(f, std::move(e));
}

std::vector<Matrix> all_matrices(std::uint32_t p, std::size_t n) {
  PrimeField f(p);
  const std::size_t count = checked_power(p, n * n, std::size_t{1} << 24);
  std::vector<Matrix> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Scalar> e(n * n);
    std::size_t rem = k;
    for (std::size_t i = n * n; i-- > 0;) {
      e[i] = static_cast<Scalar>(rem % p);
      rem /= p;
    }
    out.emplace_back(f, n, std::move(e));
  }
  return out;
}

std::string to_string(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << (i ? ";" : "");
    for (std::size_t j = 0; j < m.dim(); ++j) os << (j ? " " : "") << m.at(i, j);
  }
  os << ']';
  return os.str();
}

}  // namespace beadlink
