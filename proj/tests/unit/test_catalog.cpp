#include <doctest.h>

#include <cstdlib>
#include <set>

#include "beadlink/catalog.hpp"
#include "beadlink/error.hpp"
#include "support.hpp"

using namespace beadlink;

TEST_CASE("catalog listing") {
  const auto cat = test::catalog();
  const std::vector<std::string> expected = {"L2a1", "L4a1", "L5a1", "L6a1", "L6a2", "L6a3", "L6a4", "L6a5", "L6n1",
                                             "L7a1", "L7a2", "L7a3", "L7a4", "L7a5", "L7a6", "L7a7", "L7n1", "L7n2"};
  CHECK(cat.list() == expected);
  CHECK(cat.quandle_ids() == std::vector<std::string>{"ex33", "sp2"});
  CHECK(cat.form_ids() == std::vector<std::string>{"ex33", "ex43", "sp2-const", "zero-form"});
}

TEST_CASE("loading entries") {
  const auto cat = test::catalog();
  const auto e = cat.load("L2a1");
  CHECK(e.diagram.crossings.size() == 2);
  CHECK(e.diagram.components.size() == 2);
  CHECK_FALSE(e.source_pd.empty());
  CHECK_FALSE(e.orientation_note.empty());
  CHECK(e.expected.at({"ex33", "ex33"}).to_string() == "u^16 + 4u^10");
  CHECK(e.expected.at({"ex33", "ex43"}).to_string() == "5u^10");
  CHECK_THROWS_AS(cat.load("bogus"), InputError);
  CHECK_THROWS_AS(cat.quandle("bogus"), InputError);
  CHECK_THROWS_AS(cat.form("bogus"), InputError);
  CHECK_THROWS_AS(Catalog("/nonexistent/catalog"), InputError);
}

TEST_CASE("expected tables cover every link once") {
  const auto cat = test::catalog();
  const auto tables = cat.expected_tables();
  CHECK(tables.size() == 2);
  const auto names = cat.list();
  for (const auto& t : tables) {
    std::multiset<std::string> seen;
    for (const auto& [poly, links] : t.rows) seen.insert(links.begin(), links.end());
    CHECK(seen == std::multiset<std::string>(names.begin(), names.end()));
  }
  CHECK(cat.expected("ex33", "ex43").has_value());
  CHECK_FALSE(cat.expected("ex33", "zero-form").has_value());
}

TEST_CASE("counting invariant matches the expected tables at u = 1") {
  const auto cat = test::catalog();
  const auto q = cat.quandle("ex33");
  for (const auto& name : cat.list()) {
    CAPTURE(name);
    const auto e = cat.load(name);
    const auto n = counting_invariant(e.diagram, q);
    for (const auto& [key, poly] : e.expected) CHECK(poly.at_one() == n);
  }
}

TEST_CASE("natural ordering") {
  CHECK(natural_less("L2a1", "L10a1"));
  CHECK(natural_less("L7a7", "L7n1"));
  CHECK_FALSE(natural_less("L7a1", "L7a1"));
  CHECK(natural_less("a", "ab"));
}

TEST_CASE("catalog root from the environment") {
  setenv("BEADLINK_CATALOG", "/some/where", 1);
  CHECK(Catalog::default_root() == "/some/where");
  unsetenv("BEADLINK_CATALOG");
  CHECK(Catalog::default_root() != "/some/where");
}
