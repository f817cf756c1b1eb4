#include <doctest.h>

#include <algorithm>
#include <set>

#include "beadlink/coloring.hpp"
#include "beadlink/error.hpp"
#include "support.hpp"

using namespace beadlink;

namespace {

Quandle ex33() { return test::catalog().quandle("ex33"); }
BilinearForm form(const std::string& id) { return make_form(ex33(), test::catalog().form(id)); }

const char* kFixtures[] = {"unknot", "unknot-r1", "unknot-r2", "trefoil", "trefoil-r1", "trefoil-r1neg",
                           "trefoil-r2", "hopf", "hopf-r1", "hopf-r2"};

}  // namespace

TEST_CASE("X-coloring counts") {
  const auto q = ex33();
  CHECK(enumerate_xcolorings(test::diagram("hopf"), q).size() == 5);
  CHECK(enumerate_xcolorings(test::diagram("unknot"), q).size() == 3);
  CHECK(enumerate_xcolorings(test::diagram("unknot"), alexander_quandle(7, 3)).size() == 7);
  CHECK(enumerate_xcolorings(test::diagram("trefoil"), alexander_quandle(3, 2)).size() == 9);
}

TEST_CASE("backtracking enumeration matches brute force") {
  const auto cat = test::catalog();
  const std::vector<Quandle> qs = {ex33(), alexander_quandle(3, 2), alexander_quandle(5, 2),
                                   symplectic_quandle(2, 2, test::swap_matrix()),
                                   conjugation_quandle(Group(dihedral_group_table(3)))};
  std::vector<LinkDiagram> ds;
  for (const auto& name : cat.list()) ds.push_back(cat.load(name).diagram);
  for (const char* f : kFixtures) ds.push_back(test::diagram(f));
  for (const auto& d : ds) {
    for (const auto& q : qs) {
      CAPTURE(d.name);
      const auto fast = enumerate_xcolorings(d, q);
      CHECK(fast == enumerate_xcolorings_bruteforce(d, q));
      CHECK(std::is_sorted(fast.begin(), fast.end()));
      for (const auto& f : fast) CHECK(is_xcoloring(d, q, f));
    }
  }
}

TEST_CASE("Hopf bead counts") {
  const auto d = test::diagram("hopf");
  const auto q = ex33();
  const auto phi = form("ex33");
  std::vector<std::uint64_t> counts;
  for (const auto& f : enumerate_xcolorings(d, q)) {
    const auto oracle = count_beads(d, q, phi, f, Engine::Oracle).count;
    CHECK(count_beads(d, q, phi, f, Engine::Propagate).count == oracle);
    counts.push_back(oracle);
  }
  std::sort(counts.begin(), counts.end());
  CHECK(counts == std::vector<std::uint64_t>{10, 10, 10, 10, 16});
  CHECK(count_beads(d, q, phi, XColoring{{0, 0}}, Engine::Propagate).count == 10);
  CHECK(count_beads(d, q, phi, XColoring{{2, 2}}, Engine::Propagate).count == 16);
}

TEST_CASE("Hopf coloring by 1 with b = (1,1)") {
  const auto d = test::diagram("hopf");
  const auto q = ex33();
  const auto phi = form("ex33");
  for (auto engine : {Engine::Oracle, Engine::Propagate}) {
    const auto r = BeadCounter(d, q, phi).count(XColoring{{0, 0}}, engine, 100);
    REQUIRE(r.witnesses.size() == 10);
    for (ArcId b_arc = 0; b_arc < 2; ++b_arc) {
      std::set<Vec> a_values;
      for (const auto& w : r.witnesses) {
        if (w[b_arc] == test::vec2(1, 1)) a_values.insert(w[1 - b_arc]);
      }
      CHECK(a_values == std::set<Vec>{test::vec2(1, 1), test::vec2(0, 0)});
    }
  }
}

TEST_CASE("zero form leaves beads constant along components") {
  const auto q = ex33();
  const auto zero = form("zero-form");
  const auto d = test::diagram("hopf");
  for (const auto& f : enumerate_xcolorings(d, q)) {
    CHECK(count_beads(d, q, zero, f, Engine::Oracle).count == 16);
    CHECK(count_beads(d, q, zero, f, Engine::Propagate).count == 16);
  }
  const auto l6a4 = test::catalog().load("L6a4").diagram;
  for (const auto& f : enumerate_xcolorings(l6a4, q)) CHECK(count_beads(l6a4, q, zero, f, Engine::Propagate).count == 64);
}

TEST_CASE("unknot has |V| bead colorings") {
  const auto q = ex33();
  for (const char* id : {"ex33", "ex43", "zero-form"}) {
    const auto phi = form(id);
    for (const char* name : {"unknot", "unknot-r1", "unknot-r2"}) {
      const auto d = test::diagram(name);
      for (const auto& f : enumerate_xcolorings(d, q)) {
        CHECK(count_beads(d, q, phi, f, Engine::Oracle).count == 4);
        CHECK(count_beads(d, q, phi, f, Engine::Propagate).count == 4);
      }
    }
  }
}

TEST_CASE("engines agree on fixtures, catalog samples and the symplectic form") {
  const auto q = ex33();
  std::vector<LinkDiagram> ds;
  for (const char* f : kFixtures) ds.push_back(test::diagram(f));
  for (const char* name : {"L2a1", "L4a1", "L6a4", "L6n1", "L7n2"}) ds.push_back(test::catalog().load(name).diagram);
  for (const char* id : {"ex33", "ex43"}) {
    const auto phi = form(id);
    for (const auto& d : ds) {
      const BeadCounter counter(d, q, phi);
      for (const auto& f : enumerate_xcolorings(d, q)) {
        CAPTURE(d.name);
        CHECK(counter.count(f, Engine::Oracle).count == counter.count(f, Engine::Propagate).count);
      }
    }
  }
  const auto sp = symplectic_quandle(2, 2, test::swap_matrix());
  const auto sphi = make_form(sp, constant_form(4, test::swap_matrix()));
  for (const char* name : {"trefoil", "trefoil-r2", "hopf-r2"}) {
    const auto d = test::diagram(name);
    const BeadCounter counter(d, sp, sphi);
    for (const auto& f : enumerate_xcolorings(d, sp)) {
      CHECK(counter.count(f, Engine::Oracle).count == counter.count(f, Engine::Propagate).count);
    }
  }
}

TEST_CASE("branch order prefers arcs that pass over most") {
  const auto d = test::diagram("trefoil-r2");
  const BeadCounter counter(d, ex33(), form("ex33"));
  const auto& order = counter.branch_order();
  REQUIRE(order.size() == d.arc_count);
  CHECK(order.front() == 0);  // arc 1 is over at three crossings
  std::vector<int> over(d.arc_count, 0);
  for (const auto& c : d.crossings) ++over[c.over];
  for (std::size_t i = 1; i < order.size(); ++i) {
    CHECK(over[order[i - 1]] >= over[order[i]]);
    if (over[order[i - 1]] == over[order[i]]) CHECK(order[i - 1] < order[i]);
  }
}

TEST_CASE("errors and cancellation") {
  const auto q = ex33();
  const auto d = test::diagram("hopf");
  const auto phi = form("ex33");
  CHECK_THROWS_AS(count_beads(d, q, phi, XColoring{{0, 2}}, Engine::Propagate), InputError);
  CHECK_THROWS_AS(count_beads(d, q, phi, XColoring{{0}}, Engine::Propagate), InputError);
  const auto other = trivial_quandle(3);
  CHECK_THROWS_AS(BeadCounter(d, q, make_form(other, zero_form(3, 2, 2))), InputError);
  CancelToken token;
  token.cancel();
  for (auto engine : {Engine::Oracle, Engine::Propagate}) {
    CHECK_THROWS_AS(BeadCounter(d, q, phi).count(XColoring{{2, 2}}, engine, 0, &token), Cancelled);
  }
  CHECK(parse_engine("oracle") == Engine::Oracle);
  CHECK(to_string(Engine::Propagate) == "propagate");
  CHECK_THROWS_AS(parse_engine("fast"), InputError);
}
