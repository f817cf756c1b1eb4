#pragma once

// Lookup-table kernels shared by the form validator, the form search and the
// propagating bead counter. Vectors are represented by their index in
// all_vectors order.

#include <cstdint>
#include <vector>

#include "beadlink/field.hpp"
#include "beadlink/forms.hpp"

namespace beadlink {

/// Builds BilinearForm values for code that has already established validity.
struct FormFactory {
  static BilinearForm make(const Quandle& q, FormData d) { return BilinearForm(q, std::move(d)); }
};

}  // namespace beadlink

namespace beadlink::detail {

using VecIndex = std::uint32_t;

struct SpaceShape {
  std::uint32_t p;
  std::size_t n;
  std::size_t size;  // p^n

  SpaceShape(std::uint32_t p_, std::size_t n_);
};

struct MatrixTables {
  std::vector<Scalar> eval;     // [a * N + b] = aᵀ B b
  std::vector<VecIndex> plus;   // [a * N + b] = a + (aᵀ B b) b
  std::vector<VecIndex> minus;  // [a * N + b] = a - (aᵀ B b) b
};

MatrixTables make_tables(const Matrix& m, const SpaceShape& s);

/// Scans axiom (ii) for one triple over V³ in lexicographic (a,b,c) order.
/// `xy`, `xz`, `yz` are the tables for those pairs and `target` the one for
/// (x▷z, y▷z). Calls on_fail(a, b, c, lhs, rhs) per violation; stops early
/// when it returns false. Returns true if no violation was seen.
template <class OnFail>
bool scan_axiom2(const MatrixTables& xy, const MatrixTables& xz, const MatrixTables& yz,
                 const MatrixTables& target, std::size_t n, OnFail&& on_fail) {
  bool clean = true;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Scalar lhs = xy.eval[a * n + b];
      for (std::size_t c = 0; c < n; ++c) {
        const VecIndex a2 = xz.plus[a * n + c];
        const VecIndex b2 = yz.plus[b * n + c];
        const Scalar rhs = target.eval[a2 * n + b2];
        if (lhs != rhs) {
          clean = false;
          if (!on_fail(a, b, c, lhs, rhs)) return false;
        }
      }
    }
  }
  return clean;
}

/// Axiom (iii) for one triple. `shifted` is the table for (x▷y, z).
template <class OnFail>
bool scan_axiom3(const MatrixTables& xy, const MatrixTables& xz, const MatrixTables& yz,
                 const MatrixTables& shifted, std::size_t n, std::uint32_t p, OnFail&& on_fail) {
  bool clean = true;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::uint64_t ab = xy.eval[a * n + b];
      for (std::size_t c = 0; c < n; ++c) {
        const auto lhs = static_cast<Scalar>((shifted.eval[a * n + c] + ab * shifted.eval[b * n + c]) % p);
        const auto rhs = static_cast<Scalar>((xz.eval[a * n + c] + ab * yz.eval[b * n + c]) % p);
        if (lhs != rhs) {
          clean = false;
          if (!on_fail(a, b, c, lhs, rhs)) return false;
        }
      }
    }
  }
  return clean;
}

int resolve_threads(int requested);

}  // namespace beadlink::detail
