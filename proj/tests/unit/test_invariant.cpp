#include <doctest.h>

#include "beadlink/error.hpp"
#include "beadlink/invariant.hpp"
#include "support.hpp"

using namespace beadlink;

namespace {

Quandle ex33() { return test::catalog().quandle("ex33"); }
BilinearForm form(const std::string& id) { return make_form(ex33(), test::catalog().form(id)); }

InvariantPolynomial phi_of(const LinkDiagram& d, const BilinearForm& phi, int threads = 1) {
  ComputeOptions opts;
  opts.threads = threads;
  return compute_invariant(d, phi.quandle(), phi, opts).polynomial;
}

}  // namespace

TEST_CASE("canonical rendering") {
  InvariantPolynomial p;
  CHECK(p.to_string() == "0");
  p.add_term(10, 4);
  p.add_term(16);
  CHECK(p.to_string() == "u^16 + 4u^10");
  CHECK(p.at_one() == 5);
  CHECK(p.term_list() == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{16, 1}, {10, 4}});
  CHECK(InvariantPolynomial({4, 4, 4}).to_string() == "3u^4");
  CHECK(InvariantPolynomial({1, 0, 0}).to_string() == "u + 2");
  for (const char* s : {"u^16 + 4u^10", "19u^64 + 8u^40", "5u^10", "0", "u", "7", "2u + 3"}) {
    CHECK(InvariantPolynomial::parse(s).to_string() == s);
  }
  CHECK(InvariantPolynomial::parse(" 4u^10+u^16 ") == InvariantPolynomial::parse("u^16 + 4u^10"));
  for (const char* bad : {"", "u^", "0u^3", "u^2 +", "x^2", "2 u^3", "u^2 - u"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(InvariantPolynomial::parse(bad), InputError);
  }
}

TEST_CASE("worked examples") {
  const auto cat = test::catalog();
  const auto l2a1 = cat.load("L2a1").diagram;
  const auto l6a4 = cat.load("L6a4").diagram;
  CHECK(phi_of(l2a1, form("ex33")).to_string() == "u^16 + 4u^10");
  CHECK(phi_of(l6a4, form("ex33")).to_string() == "19u^64 + 8u^40");
  CHECK(phi_of(l2a1, form("ex43")).to_string() == "5u^10");
  CHECK(phi_of(l6a4, form("ex43")).to_string() == "18u^64 + 9u^40");
  CHECK(phi_of(test::diagram("unknot"), form("ex33")).to_string() == "3u^4");
  CHECK(counting_invariant(l2a1, ex33()) == 5);
  CHECK(counting_invariant(l6a4, ex33()) == 27);
  CHECK(counting_invariant(test::diagram("unknot"), ex33()) == 3);
}

TEST_CASE("compare") {
  const auto cat = test::catalog();
  const auto phi = form("ex33");
  const auto l6a3 = phi_of(cat.load("L6a3").diagram, phi);
  const auto l2a1 = phi_of(cat.load("L2a1").diagram, phi);
  CHECK(l6a3.at_one() == l2a1.at_one());
  CHECK(compare(l6a3, l2a1) == Comparison::Distinguished);
  CHECK(compare(phi_of(cat.load("L7a2").diagram, phi), phi_of(cat.load("L7a3").diagram, phi)) == Comparison::Equal);
  CHECK(compare(l6a3, l6a3) == Comparison::Equal);
}

TEST_CASE("u = 1 gives the counting invariant; thread count does not matter") {
  const auto cat = test::catalog();
  for (const char* id : {"ex33", "ex43", "zero-form"}) {
    const auto phi = form(id);
    for (const auto& name : cat.list()) {
      CAPTURE(name);
      const auto d = cat.load(name).diagram;
      ComputeOptions serial, parallel;
      parallel.threads = 0;
      const auto a = compute_invariant(d, ex33(), phi, serial);
      const auto b = compute_invariant(d, ex33(), phi, parallel);
      CHECK(a.polynomial.at_one() == counting_invariant(d, ex33()));
      CHECK(a.polynomial.at_one() == a.counting_invariant());
      CHECK(a.counts == b.counts);
      CHECK(a.colorings == b.colorings);
    }
  }
}

TEST_CASE("zero form collapses to the counting invariant") {
  const auto cat = test::catalog();
  const auto zero = form("zero-form");
  for (const auto& name : cat.list()) {
    const auto d = cat.load(name).diagram;
    std::uint64_t free = 1;
    for (std::size_t c = 0; c < d.components.size(); ++c) free *= 4;
    InvariantPolynomial expected;
    expected.add_term(free, counting_invariant(d, ex33()));
    CHECK(phi_of(d, zero) == expected);
  }
}

TEST_CASE("Reidemeister variants give identical polynomials") {
  const std::vector<std::vector<const char*>> families = {
      {"unknot", "unknot-r1", "unknot-r2"},
      {"trefoil", "trefoil-r1", "trefoil-r1neg", "trefoil-r2"},
      {"hopf", "hopf-r1", "hopf-r2"},
  };
  const auto sp = symplectic_quandle(2, 2, test::swap_matrix());
  const std::vector<BilinearForm> forms = {form("ex33"), form("ex43"), form("zero-form"),
                                           make_form(sp, constant_form(4, test::swap_matrix()))};
  for (const auto& family : families) {
    for (const auto& phi : forms) {
      const auto base = phi_of(test::diagram(family[0]), phi);
      for (std::size_t i = 1; i < family.size(); ++i) {
        CAPTURE(family[i]);
        CHECK(phi_of(test::diagram(family[i]), phi) == base);
      }
    }
  }
  CHECK(phi_of(test::diagram("hopf"), form("ex33")) == phi_of(test::catalog().load("L2a1").diagram, form("ex33")));
}

TEST_CASE("reversing components does not change the polynomial over this kei") {
  const auto cat = test::catalog();
  const auto phi = form("ex33");
  for (const char* name : {"L2a1", "L5a1", "L6a4", "L6n1", "L7n2"}) {
    const auto d = cat.load(name).diagram;
    const auto base = phi_of(d, phi);
    for (std::size_t c = 0; c < d.components.size(); ++c) CHECK(phi_of(reverse_components(d, {c}), phi) == base);
  }
}

TEST_CASE("JSON record round trip") {
  InvariantRecord r{"L2a1", "ex33", "ex33", InvariantPolynomial::parse("u^16 + 4u^10"), 5, "propagate", 1.5};
  const auto j = to_json(r);
  CHECK(j.at("terms") == nlohmann::json::parse("[[16,1],[10,4]]"));
  CHECK(j.at("polynomial") == "u^16 + 4u^10");
  const auto back = record_from_json(j);
  CHECK(back.polynomial == r.polynomial);
  CHECK(back.counting_invariant == 5);
  CHECK(render_text(back) == "u^16 + 4u^10\n");
  CHECK_THROWS_AS(record_from_json(nlohmann::json::object()), InputError);
}

TEST_CASE("cancellation stops compute_invariant") {
  CancelToken token;
  token.cancel();
  ComputeOptions opts;
  opts.cancel = &token;
  opts.threads = 0;
  CHECK_THROWS_AS(compute_invariant(test::catalog().load("L6a4").diagram, ex33(), form("ex33"), opts), Cancelled);
}
