#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "beadlink/field.hpp"

namespace beadlink {

using Element = std::uint32_t;
using Table = std::vector<std::vector<std::int64_t>>;

/// A finite quandle stored as its operation table, table[x][y] = x ▷ y,
/// with the inverse table precomputed. Only obtainable through
/// validate_quandle or the constructors below, so every instance satisfies
/// the quandle axioms.
class Quandle {
 public:
  std::size_t order() const noexcept { return order_; }
  Element op(Element x, Element y) const { return table_[x * order_ + y]; }
  /// x ▷⁻¹ y, i.e. the unique w with w ▷ y = x.
  Element inv_op(Element x, Element y) const { return inv_[x * order_ + y]; }
  /// Sign-dependent action: ▷ for +1, ▷⁻¹ for -1.
  Element act(Element x, Element y, int sign) const { return sign > 0 ? op(x, y) : inv_op(x, y); }
  /// True when every right translation is an involution (a kei).
  bool is_involutory() const noexcept;

  Table table() const;

  bool operator==(const Quandle& o) const { return order_ == o.order_ && table_ == o.table_; }

 private:
  friend struct QuandleBuilder;
  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inv_;
};

struct QuandleViolation {
  /// 1 = idempotence, 2 = right translations bijective, 3 = right self-distributivity.
  int axiom;
  Element x, y, z;
  std::string message;
};

struct QuandleCheck {
  std::optional<Quandle> quandle;
  std::vector<QuandleViolation> violations;

  bool valid() const noexcept { return quandle.has_value(); }
};

/// Checks the three axioms exhaustively, reporting every violation. Throws
/// InputError for a non-square table or an out-of-range entry; those are not
/// axiom violations.
QuandleCheck validate_quandle(const Table& table);

/// Like validate_quandle, but throws InputError listing the first few
/// violations when the table is not a quandle.
Quandle make_quandle(const Table& table);

/// Finite group given by its multiplication table, g*h = mul[g][h].
/// Validated on construction (closure, associativity, identity, inverses).
class Group {
 public:
  explicit Group(const Table& mul);

  std::size_t order() const noexcept { return n_; }
  Element mul(Element g, Element h) const { return mul_[g * n_ + h]; }
  Element inv(Element g) const { return inv_[g]; }
  Element identity() const noexcept { return e_; }

 private:
  std::size_t n_;
  std::vector<Element> mul_;
  std::vector<Element> inv_;
  Element e_ = 0;
};

Table cyclic_group_table(std::size_t n);
/// Symmetries of a regular n-gon, order 2n. Element r^k s^j is indexed 2k + j.
Table dihedral_group_table(std::size_t n);
/// Quaternion group of order 8.
Table quaternion_group_table();

/// g ▷ h = h⁻¹ g h
Quandle conjugation_quandle(const Group& g);
/// g ▷ h = h g⁻¹ h
Quandle core_quandle(const Group& g);
/// x ▷ y = t x + (1 - t) y mod n; requires gcd(t, n) = 1.
Quandle alexander_quandle(std::uint32_t n, std::int64_t t);
/// Elements are F_p^n in all_vectors order; x ▷ y = x + (xᵀ S y) y.
/// S must be alternating and nondegenerate.
Quandle symplectic_quandle(std::uint32_t p, std::size_t n, const Matrix& s);

Quandle trivial_quandle(std::size_t m);

/// `quandle m` followed by m rows of m 1-indexed entries. Blank lines and
/// lines starting with '#' are ignored.
Quandle parse_quandle(std::istream& in, const std::string& source = "<input>");
/// Parses the table without validating the axioms.
Table parse_quandle_table(std::istream& in, const std::string& source = "<input>");
Quandle load_quandle(const std::filesystem::path& path);
std::string format_quandle(const Quandle& q);

}  // namespace beadlink
