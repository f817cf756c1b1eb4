#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "beadlink/coloring.hpp"

namespace beadlink {

/// Σ c·u^k stored as exponent -> multiplicity. The exponent multiset is the
/// multiset-valued invariant; the polynomial is its generating function.
class InvariantPolynomial {
 public:
  using Terms = std::map<std::uint64_t, std::uint64_t, std::greater<>>;

  InvariantPolynomial() = default;
  explicit InvariantPolynomial(const std::vector<std::uint64_t>& exponents);

  void add_term(std::uint64_t exponent, std::uint64_t multiplicity = 1);
  const Terms& terms() const noexcept { return terms_; }
  /// [[exponent, multiplicity], ...] by descending exponent.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> term_list() const;
  /// Value at u = 1, i.e. the number of X-colorings.
  std::uint64_t at_one() const;
  bool empty() const noexcept { return terms_.empty(); }

  /// Descending exponents, coefficient 1 omitted: `u^16 + 4u^10`.
  std::string to_string() const;
  /// Inverse of to_string. Throws InputError on malformed text.
  static InvariantPolynomial parse(std::string_view text);

  bool operator==(const InvariantPolynomial&) const = default;

 private:
  Terms terms_;
};

struct ComputeOptions {
  Engine engine = Engine::Propagate;
  /// 1 = serial, 0 = OpenMP default. Output does not depend on this.
  int threads = 1;
  const CancelToken* cancel = nullptr;
};

struct InvariantResult {
  InvariantPolynomial polynomial;
  std::vector<XColoring> colorings;
  /// Bead-coloring count for each entry of `colorings`.
  std::vector<std::uint64_t> counts;

  std::uint64_t counting_invariant() const noexcept { return colorings.size(); }
};

/// One term u^count per X-coloring. Per-coloring counts run in parallel when
/// opts.threads != 1; the reduction is in coloring order.
InvariantResult compute_invariant(const LinkDiagram& d, const Quandle& q, const BilinearForm& phi,
                                  const ComputeOptions& opts = {});

std::uint64_t counting_invariant(const LinkDiagram& d, const Quandle& q);

enum class Comparison { Equal, Distinguished };

Comparison compare(const InvariantPolynomial& a, const InvariantPolynomial& b);

/// The JSON object emitted per computation.
struct InvariantRecord {
  std::string link;
  std::string quandle;
  std::string form;
  InvariantPolynomial polynomial;
  std::uint64_t counting_invariant = 0;
  std::string engine;
  double elapsed_ms = 0;
};

nlohmann::json to_json(const InvariantRecord& r);
InvariantRecord record_from_json(const nlohmann::json& j);
/// Text form of one record, identical to what the text output mode prints.
std::string render_text(const InvariantRecord& r);

}  // namespace beadlink
