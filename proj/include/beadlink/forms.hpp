#pragma once

// X-bilinear forms: a family of bilinear forms [,]_{x,y} on V = F_p^n, one
// per ordered pair of quandle elements, given by matrices B[x][y] with
// [u,v]_{x,y} = uᵀ B[x][y] v. A family is an X-bilinear form when
//
//   (i)   [a,a]_{x,x} = 0
//   (ii)  [a,b]_{x,y} = [a + [a,c]_{x,z} c, b + [b,c]_{y,z} c]_{x▷z, y▷z}
//   (iii) [a,c]_{x▷y,z} + [a,b]_{x,y} [b,c]_{x▷y,z} = [a,c]_{x,z} + [a,b]_{x,y} [b,c]_{y,z}
//
// for all x,y,z in X and a,b,c in V.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "beadlink/error.hpp"
#include "beadlink/field.hpp"
#include "beadlink/quandle.hpp"

namespace beadlink {

/// An unchecked m x m array of n x n matrices over F_p.
struct FormData {
  std::size_t quandle_order = 0;
  std::size_t dim = 0;
  std::uint32_t modulus = 2;
  std::vector<Matrix> blocks;  // row-major, blocks[x * m + y]

  const Matrix& block(Element x, Element y) const { return blocks[x * quandle_order + y]; }
  Matrix& block(Element x, Element y) { return blocks[x * quandle_order + y]; }

  bool operator==(const FormData&) const = default;
};

FormData zero_form(std::size_t quandle_order, std::uint32_t p, std::size_t n);
/// [,]_{x,y} = S for every pair.
FormData constant_form(std::size_t quandle_order, const Matrix& s);

/// A family that has passed validate_form against a specific quandle.
class BilinearForm {
 public:
  std::size_t quandle_order() const noexcept { return data_.quandle_order; }
  std::size_t dim() const noexcept { return data_.dim; }
  std::uint32_t modulus() const noexcept { return data_.modulus; }
  const Matrix& block(Element x, Element y) const { return data_.block(x, y); }
  const FormData& data() const noexcept { return data_; }
  /// The quandle this form was validated against.
  const Quandle& quandle() const noexcept { return quandle_; }

  /// [a,b]_{x,y}. Throws InputError on out-of-range elements or mismatched vectors.
  FieldElem eval(Element x, Element y, const Vec& a, const Vec& b) const;

  bool operator==(const BilinearForm& o) const { return data_ == o.data_; }

 private:
  friend struct FormFactory;
  BilinearForm(Quandle q, FormData d) : quandle_(std::move(q)), data_(std::move(d)) {}

  Quandle quandle_;
  FormData data_;
};

struct FormViolation {
  /// 1, 2 or 3 for axioms (i), (ii), (iii).
  int axiom;
  Element x, y, z;
  Vec a, b, c;
  Scalar lhs, rhs;

  bool operator==(const FormViolation&) const = default;
};

std::string describe(const FormViolation& v);

struct FormCheck {
  std::optional<BilinearForm> form;
  /// First `cap` witnesses in canonical order: axiom (i) by x, then
  /// triples (x,y,z) row-major with (ii) before (iii), vectors lexicographic.
  std::vector<FormViolation> violations;
  /// Exact number of violated instances.
  std::uint64_t violation_count = 0;

  bool valid() const noexcept { return form.has_value(); }
};

struct ValidateOptions {
  std::size_t cap = 20;
  /// 0 = OpenMP default, 1 = serial.
  int threads = 0;
};

/// Table-driven validator, parallel over (x,y,z) triples. Uses the
/// alternating-matrix pre-filter for axiom (i).
FormCheck validate_form(const Quandle& q, const FormData& raw, const ValidateOptions& opts = {});

/// Serial reference: brute force over X³ x V³ using only field-level
/// operations. Same report as validate_form.
FormCheck validate_form_reference(const Quandle& q, const FormData& raw, std::size_t cap = 20);

/// validate_form, throwing InputError with the first witnesses on failure.
BilinearForm make_form(const Quandle& q, const FormData& raw);

enum class SearchMode { All, AlternatingOnly, ConstantDiagonal };

std::string to_string(SearchMode m);
SearchMode parse_search_mode(const std::string& s);

class SearchTooLarge : public InputError {
 public:
  SearchTooLarge(double estimate, double bound);
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

struct SearchOptions {
  SearchMode mode = SearchMode::All;
  /// Stop after this many forms; 0 means no limit.
  std::size_t limit = 0;
  /// Zero means no budget.
  std::chrono::milliseconds time_budget{0};
  /// Refuse searches whose estimated raw space exceeds this unless allow_large.
  double space_bound = 1e12;
  bool allow_large = false;
  /// 1 = sequential DFS. Otherwise top-level branches run in parallel and
  /// results are merged in branch order; 0 = OpenMP default.
  int threads = 1;
  /// Called for each form in emission order. In parallel mode calls happen
  /// after all branches finish.
  std::function<void(const BilinearForm&)> on_form;
  /// Keep emitted forms in SearchResult::forms.
  bool collect = true;
};

struct SearchResult {
  std::vector<BilinearForm> forms;
  std::size_t emitted = 0;
  /// False when the limit or the time budget cut the search short.
  bool complete = true;
  bool timed_out = false;
  bool hit_limit = false;
  double space_estimate = 0;
  std::uint64_t nodes = 0;
};

/// Product over pairs of the number of candidate matrices for that pair
/// (alternating only on the diagonal, plus the mode's restrictions).
double search_space_estimate(const Quandle& q, std::uint32_t p, std::size_t n, SearchMode mode);

/// Depth-first assignment of B[x][y], diagonal pairs first then the rest
/// row-major, candidates in all_matrices order. After each assignment every
/// axiom (ii)/(iii) instance whose pairs are all assigned is checked by brute
/// force over V³. Emission order is deterministic.
SearchResult search_forms(const Quandle& q, std::uint32_t p, std::size_t n, const SearchOptions& opts = {});

/// `form m n p`, then for each pair `B x y` (1-indexed) followed by n rows
/// of n entries.
FormData parse_form(std::istream& in, const std::string& source = "<input>");
FormData load_form(const std::filesystem::path& path);
std::string format_form(const FormData& f);

}  // namespace beadlink
