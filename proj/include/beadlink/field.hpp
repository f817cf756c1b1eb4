#pragma once

// Arithmetic over prime fields F_p, plus vectors and square matrices over
// them. Modulus and dimension are runtime values.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace beadlink {

using Scalar = std::uint32_t;

bool is_prime(std::uint64_t n);

/// p^n, throwing InputError if the result does not fit in `limit`.
std::size_t checked_power(std::uint64_t p, std::size_t n, std::size_t limit = SIZE_MAX);

class PrimeField {
 public:
  /// Throws InputError unless p is prime and small enough that products fit in 64 bits.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const noexcept { return p_; }

  Scalar reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Scalar>(r < 0 ? r + p_ : r);
  }
  Scalar add(Scalar a, Scalar b) const noexcept { return static_cast<Scalar>((std::uint64_t{a} + b) % p_); }
  Scalar sub(Scalar a, Scalar b) const noexcept { return static_cast<Scalar>((std::uint64_t{a} + p_ - b) % p_); }
  Scalar mul(Scalar a, Scalar b) const noexcept { return static_cast<Scalar>((std::uint64_t{a} * b) % p_); }
  Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

struct FieldElem {
  Scalar value = 0;
  std::uint32_t modulus = 2;

  FieldElem() = default;
  FieldElem(std::int64_t v, const PrimeField& f) : value(f.reduce(v)), modulus(f.modulus()) {}

  bool operator==(const FieldElem&) const = default;
};

FieldElem operator+(FieldElem a, FieldElem b);
FieldElem operator*(FieldElem a, FieldElem b);
FieldElem operator-(FieldElem a);

/// Vector in F_p^n. Entries are always reduced.
class Vec {
 public:
  Vec(const PrimeField& f, std::vector<Scalar> entries);
  /// Zero vector.
  Vec(const PrimeField& f, std::size_t n);

  std::uint32_t modulus() const noexcept { return p_; }
  std::size_t dim() const noexcept { return entries_.size(); }
  Scalar operator[](std::size_t i) const { return entries_[i]; }
  std::span<const Scalar> entries() const noexcept { return entries_; }
  bool is_zero() const noexcept;

  bool operator==(const Vec&) const = default;
  auto operator<=>(const Vec&) const = default;

 private:
  friend Vec vec_add(const Vec&, const Vec&);
  friend Vec scalar_mul(FieldElem, const Vec&);
  Vec(std::uint32_t p, std::vector<Scalar> entries, std::nullptr_t) : p_(p), entries_(std::move(entries)) {}

  std::uint32_t p_;
  std::vector<Scalar> entries_;
};

/// Square n x n matrix over F_p, row-major.
class Matrix {
 public:
  /// Zero matrix.
  Matrix(const PrimeField& f, std::size_t n);
  /// Throws InputError if row_major.size() != n*n.
  Matrix(const PrimeField& f, std::size_t n, std::vector<Scalar> row_major);

  std::uint32_t modulus() const noexcept { return p_; }
  std::size_t dim() const noexcept { return n_; }
  Scalar at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, std::int64_t v);
  std::span<const Scalar> entries() const noexcept { return entries_; }
  bool is_zero() const noexcept;
  Matrix transpose() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::uint32_t p_;
  std::size_t n_;
  std::vector<Scalar> entries_;
};

/// Zero diagonal and Bᵀ = -B. Over any field this is equivalent to
/// uᵀBu = 0 for all u.
bool is_alternating(const Matrix& m);
std::size_t matrix_rank(const Matrix& m);

Vec vec_add(const Vec& a, const Vec& b);
Vec scalar_mul(FieldElem s, const Vec& v);
/// u^T B v.
FieldElem bilinear_eval(const Matrix& b, const Vec& u, const Vec& v);

inline Vec operator+(const Vec& a, const Vec& b) { return vec_add(a, b); }
inline Vec operator*(FieldElem s, const Vec& v) { return scalar_mul(s, v); }

/// All p^n vectors of F_p^n in lexicographic order (first coordinate most
/// significant). This order is part of the contract: quandle elements of a
/// symplectic quandle and vector indices in the kernels both use it.
std::vector<Vec> all_vectors(std::uint32_t p, std::size_t n);

/// Position of v in all_vectors(p, n).
std::size_t vector_index(const Vec& v);
/// Inverse of vector_index.
Vec vector_at(const PrimeField& f, std::size_t n, std::size_t index);

/// All p^(n*n) matrices, lexicographic over row-major entries.
std::vector<Matrix> all_matrices(std::uint32_t p, std::size_t n);

std::string to_string(const Vec& v);
std::string to_string(const Matrix& m);

}  // namespace beadlink
