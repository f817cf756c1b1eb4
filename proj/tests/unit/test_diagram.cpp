#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "beadlink/coloring.hpp"
#include "beadlink/diagram.hpp"
#include "beadlink/error.hpp"
#include "support.hpp"

using namespace beadlink;

namespace {

std::vector<Crossing> sorted(std::vector<Crossing> cs) {
  std::sort(cs.begin(), cs.end(), [](const Crossing& a, const Crossing& b) {
    return std::tie(a.under_in, a.over, a.under_out, a.sign) < std::tie(b.under_in, b.over, b.under_out, b.sign);
  });
  return cs;
}

bool mentions(const DiagramReport& r, const std::string& needle) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("zero-crossing unknot is a free loop") {
  const auto d = test::diagram("unknot");
  const auto r = validate_diagram(d);
  CHECK(r.ok());
  CHECK(r.free_loops == std::vector<std::size_t>{0});
  CHECK(crossing_relations(d).empty());
}

TEST_CASE("Hopf diagram") {
  const auto d = test::diagram("hopf");
  CHECK(validate_diagram(d).ok());
  CHECK(d.arc_count == 2);
  const auto rel = crossing_relations(d);
  REQUIRE(rel.size() == 2);
  CHECK(rel[0] == CrossingRelation{0, 1, 0, 1});
  CHECK(rel[1] == CrossingRelation{1, 0, 1, 1});
}

TEST_CASE("structural violations") {
  LinkDiagram d = test::diagram("hopf");
  d.crossings[0].over = 4;
  auto r = validate_diagram(d);
  CHECK_FALSE(r.ok());
  CHECK(mentions(r, "dangling arc 5"));
  CHECK_THROWS_AS(require_valid(d), InputError);

  d = test::diagram("trefoil");
  d.crossings[0].under_out = d.crossings[1].under_out;
  CHECK_FALSE(validate_diagram(d).ok());

  d = test::diagram("trefoil");
  d.components = {{0, 2, 1}};
  r = validate_diagram(d);
  CHECK_FALSE(r.ok());
  CHECK(mentions(r, "passes under into arc"));

  d = test::diagram("hopf");
  d.components = {{0}};
  CHECK_FALSE(validate_diagram(d).ok());
}

TEST_CASE("RI kink relation has under_in equal to over") {
  const auto d = test::diagram("unknot-r1");
  CHECK(validate_diagram(d).ok());
  const auto rel = crossing_relations(d);
  REQUIRE(rel.size() == 1);
  CHECK(rel[0].under_in == rel[0].over);
}

TEST_CASE("import_pd: Hopf with explicit signs") {
  std::vector<std::size_t> overridden;
  const auto d = import_pd("X[4,1,3,2] X[2,3,1,4]", std::vector<Sign>{Sign::Positive, Sign::Positive}, &overridden);
  CHECK(validate_diagram(d).ok());
  const auto hopf = test::diagram("hopf");
  CHECK(d.arc_count == 2);
  CHECK(sorted(d.crossings) == sorted(hopf.crossings));
  CHECK(d.components == hopf.components);
  CHECK(enumerate_xcolorings(d, make_quandle({{0, 0, 1}, {1, 1, 0}, {2, 2, 2}})).size() == 5);
  // Under the counterclockwise convention this PD is the negatively signed Hopf link.
  CHECK(overridden == std::vector<std::size_t>{0, 1});

  const auto negative = import_pd("X[4,1,3,2] X[2,3,1,4]", std::vector<Sign>{Sign::Negative, Sign::Negative}, &overridden);
  CHECK(overridden.empty());
  CHECK(negative.crossings[0].sign == Sign::Negative);
}

TEST_CASE("import_pd: kink") {
  const auto d = import_pd("X[1,2,2,1]", std::vector<Sign>{Sign::Negative});
  CHECK(validate_diagram(d).ok());
  CHECK(d.arc_count == 1);
  CHECK(d.components.size() == 1);
  REQUIRE(d.crossings.size() == 1);
  CHECK(d.crossings[0].under_in == d.crossings[0].over);

  const auto pos = import_pd("X[1,1,2,2]", std::vector<Sign>{Sign::Positive});
  CHECK(validate_diagram(pos).ok());
}

TEST_CASE("import_pd: sign inference") {
  const auto left = import_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
  for (const auto& c : left.crossings) CHECK(c.sign == Sign::Negative);
  const auto right = import_pd("PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]");
  for (const auto& c : right.crossings) CHECK(c.sign == Sign::Positive);
  CHECK(right.arc_count == 3);
  CHECK(validate_diagram(right).ok());
}

TEST_CASE("import_pd: errors") {
  CHECK_THROWS_AS(import_pd(""), InputError);
  CHECK_THROWS_AS(import_pd("   "), InputError);
  CHECK_THROWS_AS(import_pd("X[1,2,3]"), InputError);
  CHECK_THROWS_AS(import_pd("X[1,2,2,1] X[1,2,3,4]"), InputError);
  try {
    import_pd("X[4,1,3,2] X[2,3,1,4]");
    FAIL("expected ambiguity error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("crossing 1 X[4,1,3,2]") != std::string::npos);
  }
  CHECK_THROWS_AS(import_pd("X[4,1,3,2] X[2,3,1,4]", std::vector<Sign>{Sign::Positive}), InputError);
  try {
    import_pd("X[1,4,2 5]");
    FAIL("expected parse error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

TEST_CASE("catalog diagrams: arcs equal crossings and PD re-import is stable") {
  const auto cat = test::catalog();
  for (const auto& name : cat.list()) {
    CAPTURE(name);
    const auto d = cat.load(name).diagram;
    CHECK(validate_diagram(d).ok());
    CHECK(d.arc_count == d.crossings.size());
    std::vector<Sign> signs;
    for (const auto& c : d.crossings) signs.push_back(c.sign);
    std::vector<std::size_t> overridden;
    const auto again = import_pd(d.source_pd, signs, &overridden);
    CHECK(overridden.empty());
    CHECK(again.crossings == d.crossings);
    CHECK(again.components == d.components);
  }
}

TEST_CASE("diagram file format") {
  const auto d = test::diagram("trefoil-r2");
  std::istringstream in(format_diagram(d));
  CHECK(parse_diagram(in) == d);

  std::istringstream pd("link h\npd \"X[4,1,3,2] X[2,3,1,4]\" signs --\n");
  const auto h = parse_diagram(pd);
  CHECK(h.name == "h");
  CHECK(h.crossings.size() == 2);
  CHECK(h.source_pd == "X[4,1,3,2] X[2,3,1,4]");

  std::istringstream bad_arc("link x\narcs 2\nx + 1 2 3\n");
  try {
    parse_diagram(bad_arc, "bad.diagram");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream bad_sign("link x\narcs 1\nx * 1 1 1\ncomponent 1\n");
  CHECK_THROWS_AS(parse_diagram(bad_sign), ParseError);
  std::istringstream invalid("link x\narcs 2\nx + 1 2 2\ncomponent 1 2\n");
  CHECK_THROWS_AS(parse_diagram(invalid), InputError);
}

TEST_CASE("reversing components") {
  const auto d = test::catalog().load("L6a4").diagram;
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    const auto r = reverse_components(d, {c});
    CHECK(validate_diagram(r).ok());
    CHECK(reverse_components(r, {c}) == d);
  }
  const auto all = reverse_components(d, {0, 1, 2});
  CHECK(validate_diagram(all).ok());
  // Reversing everything keeps every crossing sign.
  for (std::size_t i = 0; i < d.crossings.size(); ++i) CHECK(all.crossings[i].sign == d.crossings[i].sign);
  CHECK_THROWS_AS(reverse_components(d, {7}), InputError);
}
