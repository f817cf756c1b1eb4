#include "beadlink/invariant.hpp"

#include <atomic>
#include <cctype>
#include <exception>
#include <sstream>

#include "form_kernel.hpp"

namespace beadlink {

InvariantPolynomial::InvariantPolynomial(const std::vector<std::uint64_t>& exponents) {
  for (auto e : exponents) add_term(e);
}

void InvariantPolynomial::add_term(std::uint64_t exponent, std::uint64_t multiplicity) {
  if (multiplicity == 0) return;
  terms_[exponent] += multiplicity;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> InvariantPolynomial::term_list() const {
  return {terms_.begin(), terms_.end()};
}

std::uint64_t InvariantPolynomial::at_one() const {
  std::uint64_t s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

std::string InvariantPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (e == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c;
    os << 'u';
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

InvariantPolynomial InvariantPolynomial::parse(std::string_view text) {
  InvariantPolynomial p;
  std::size_t i = 0;
  auto fail = [&](const std::string& what) -> void {
    throw InputError("bad polynomial `" + std::string(text) + "` at position " + std::to_string(i + 1) + ": " + what);
  };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&](std::uint64_t& out) {
    const std::size_t start = i;
    std::uint64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
    if (i == start) return false;
    out = v;
    return true;
  };
  skip();
  if (text.substr(i) == "0") return p;
  while (true) {
    skip();
    std::uint64_t coeff = 1, exp = 0;
    const bool has_coeff = number(coeff);
    if (i < text.size() && text[i] == 'u') {
      ++i;
      exp = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        if (!number(exp)) fail("expected exponent");
      }
    } else if (!has_coeff) {
      fail("expected a term");
    }
    if (coeff == 0) fail("zero coefficient");
    p.add_term(exp, coeff);
    skip();
    if (i == text.size()) break;
    if (text[i] != '+') fail("expected '+'");
    ++i;
  }
  return p;
}

InvariantResult compute_invariant(const LinkDiagram& d, const Quandle& q, const BilinearForm& phi,
                                  const ComputeOptions& opts) {
  const BeadCounter counter(d, q, phi);
  InvariantResult r;
  r.colorings = enumerate_xcolorings(d, q);
  r.counts.assign(r.colorings.size(), 0);

  const std::size_t n = r.colorings.size();
  [[maybe_unused]] const int threads = detail::resolve_threads(opts.threads);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<bool> failed{false};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
#endif
  for (std::size_t i = 0; i < n; ++i) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      r.counts[i] = counter.count(r.colorings[i], opts.engine, 0, opts.cancel).count;
    } catch (...) {
      errors[i] = std::current_exception();
      failed.store(true, std::memory_order_relaxed);
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto c : r.counts) r.polynomial.add_term(c);
  return r;
}

std::uint64_t counting_invariant(const LinkDiagram& d, const Quandle& q) {
  return enumerate_xcolorings(d, q).size();
}

Comparison compare(const InvariantPolynomial& a, const InvariantPolynomial& b) {
  return a == b ? Comparison::Equal : Comparison::Distinguished;
}

nlohmann::json to_json(const InvariantRecord& r) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : r.polynomial.term_list()) terms.push_back({e, c});
  return {{"link", r.link},
          {"quandle", r.quandle},
          {"form", r.form},
          {"terms", terms},
          {"polynomial", r.polynomial.to_string()},
          {"counting_invariant", r.counting_invariant},
          {"engine", r.engine},
          {"elapsed_ms", r.elapsed_ms}};
}

InvariantRecord record_from_json(const nlohmann::json& j) {
  try {
    InvariantRecord r;
    r.link = j.at("link").get<std::string>();
    r.quandle = j.at("quandle").get<std::string>();
    r.form = j.at("form").get<std::string>();
    for (const auto& t : j.at("terms")) {
      if (!t.is_array() || t.size() != 2) throw InputError("term entries must be [exponent, multiplicity]");
      r.polynomial.add_term(t[0].get<std::uint64_t>(), t[1].get<std::uint64_t>());
    }
    r.counting_invariant = j.at("counting_invariant").get<std::uint64_t>();
    r.engine = j.at("engine").get<std::string>();
    r.elapsed_ms = j.value("elapsed_ms", 0.0);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed invariant record: ") + e.what());
  }
}

std::string render_text(const InvariantRecord& r) { return r.polynomial.to_string() + "\n"; }

}  // namespace beadlink
