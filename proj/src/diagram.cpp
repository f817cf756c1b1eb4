#include "beadlink/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "beadlink/error.hpp"

namespace beadlink {

namespace {

std::string arc_label(ArcId a) { return std::to_string(a + 1); }

std::string crossing_label(std::size_t i, const Crossing& c) {
  return "crossing " + std::to_string(i + 1) + " (" + to_char(c.sign) + " " + arc_label(c.under_in) + " " +
         arc_label(c.over) + " " + arc_label(c.under_out) + ")";
}

}  // namespace

DiagramReport validate_diagram(const LinkDiagram& d) {
  DiagramReport r;
  const std::size_t k = d.arc_count;
  if (k == 0) r.violations.push_back("diagram has no arcs");
  if (d.components.empty()) r.violations.push_back("diagram has no components");

  std::vector<int> as_in(k, 0), as_out(k, 0);
  std::vector<ArcId> successor(k, 0);
  for (std::size_t i = 0; i < d.crossings.size(); ++i) {
    const auto& c = d.crossings[i];
    if (c.sign != Sign::Positive && c.sign != Sign::Negative) {
      r.violations.push_back(crossing_label(i, c) + ": invalid sign");
    }
    bool in_range = true;
    for (ArcId a : {c.under_in, c.over, c.under_out}) {
      if (a >= k) {
        r.violations.push_back(crossing_label(i, c) + ": dangling arc " + arc_label(a) + " (diagram has " +
                               std::to_string(k) + " arcs)");
        in_range = false;
      }
    }
    if (!in_range) continue;
    ++as_in[c.under_in];
    ++as_out[c.under_out];
    successor[c.under_in] = c.under_out;
  }
  for (std::size_t a = 0; a < k; ++a) {
    if (as_in[a] > 1) {
      r.violations.push_back("arc " + arc_label(static_cast<ArcId>(a)) + " used " + std::to_string(as_in[a]) +
                             " times as under_in");
    }
    if (as_out[a] > 1) {
      r.violations.push_back("arc " + arc_label(static_cast<ArcId>(a)) + " used " + std::to_string(as_out[a]) +
                             " times as under_out");
    }
  }

  std::vector<int> owner(k, -1);
  for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
    const auto& comp = d.components[ci];
    const std::string cname = "component " + std::to_string(ci + 1);
    if (comp.empty()) {
      r.violations.push_back(cname + " is empty");
      continue;
    }
    bool in_range = true;
    for (ArcId a : comp) {
      if (a >= k) {
        r.violations.push_back(cname + " lists dangling arc " + arc_label(a));
        in_range = false;
        continue;
      }
      if (owner[a] >= 0) {
        r.violations.push_back("arc " + arc_label(a) + " listed in component " + std::to_string(owner[a] + 1) +
                               " and " + cname);
      }
      owner[a] = static_cast<int>(ci);
    }
    if (!in_range) continue;
    if (comp.size() == 1 && as_in[comp[0]] == 0 && as_out[comp[0]] == 0) {
      r.free_loops.push_back(ci);
      continue;
    }
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const ArcId a = comp[i];
      const ArcId next = comp[(i + 1) % comp.size()];
      if (as_in[a] != 1 || as_out[a] != 1) {
        r.violations.push_back(cname + ": arc " + arc_label(a) + " appears " + std::to_string(as_in[a]) +
                               " times as under_in and " + std::to_string(as_out[a]) +
                               " times as under_out (expected once each)");
        continue;
      }
      if (successor[a] != next) {
        r.violations.push_back(cname + ": arc " + arc_label(a) + " passes under into arc " +
                               arc_label(successor[a]) + ", but the component order says " + arc_label(next));
      }
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    if (owner[a] < 0) r.violations.push_back("arc " + arc_label(static_cast<ArcId>(a)) + " is in no component");
  }
  return r;
}

void require_valid(const LinkDiagram& d) {
  const auto r = validate_diagram(d);
  if (r.ok()) return;
  std::string msg = "invalid diagram";
  if (!d.name.empty()) msg += " " + d.name;
  for (const auto& v : r.violations) msg += "\n  " + v;
  throw InputError(msg);
}

std::vector<CrossingRelation> crossing_relations(const LinkDiagram& d) {
  std::vector<CrossingRelation> out;
  out.reserve(d.crossings.size());
  for (const auto& c : d.crossings) out.push_back({c.under_in, c.over, c.under_out, to_int(c.sign)});
  return out;
}

// --- PD import --------------------------------------------------------------

namespace {

struct PdTuple {
  std::int64_t e[4];
  std::size_t pos;
};

class PdScanner {
 public:
  explicit PdScanner(std::string_view s) : s_(s) {}

  std::vector<PdTuple> tuples() {
    std::vector<PdTuple> out;
    skip_separators();
    bool wrapped = false;
    if (s_.substr(i_, 3) == "PD[") {
      wrapped = true;
      i_ += 3;
    }
    while (true) {
      skip_separators();
      if (i_ >= s_.size()) break;
      if (wrapped && s_[i_] == ']') {
        ++i_;
        wrapped = false;
        skip_separators();
        if (i_ < s_.size()) fail("trailing characters after PD[...]");
        break;
      }
      out.push_back(tuple());
    }
    if (wrapped) fail("unterminated PD[");
    if (out.empty()) fail("no X[...] tuples");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("PD parse error at position " + std::to_string(i_ + 1) + ": " + what);
  }

  void skip_separators() {
    while (i_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[i_])) || s_[i_] == ',')) ++i_;
  }
  void skip_space() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  void expect(char ch) {
    skip_space();
    if (i_ >= s_.size() || s_[i_] != ch) fail(std::string("expected '") + ch + "'");
    ++i_;
  }
  std::int64_t integer() {
    skip_space();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a non-negative integer");
    return std::stoll(std::string(s_.substr(start, i_ - start)));
  }
  PdTuple tuple() {
    PdTuple t{};
    t.pos = i_ + 1;
    expect('X');
    expect('[');
    for (int k = 0; k < 4; ++k) {
      if (k) expect(',');
      t.e[k] = integer();
    }
    expect(']');
    return t;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

std::string tuple_text(const PdTuple& t) {
  return "X[" + std::to_string(t.e[0]) + "," + std::to_string(t.e[1]) + "," + std::to_string(t.e[2]) + "," +
         std::to_string(t.e[3]) + "]";
}

}  // namespace

std::vector<Sign> parse_signs(std::string_view text) {
  std::vector<Sign> out;
  for (char ch : text) {
    if (ch == '+') {
      out.push_back(Sign::Positive);
    } else if (ch == '-') {
      out.push_back(Sign::Negative);
    } else if (!std::isspace(static_cast<unsigned char>(ch)) && ch != ',') {
      throw InputError(std::string("invalid sign character '") + ch + "'");
    }
  }
  return out;
}

LinkDiagram import_pd(std::string_view pd_text, const std::optional<std::vector<Sign>>& signs,
                      std::vector<std::size_t>* overridden) {
  const auto tuples = PdScanner(pd_text).tuples();
  const std::size_t nc = tuples.size();
  if (signs && signs->size() != nc) {
    throw InputError("PD has " + std::to_string(nc) + " crossings but " + std::to_string(signs->size()) +
                     " signs were given");
  }

  // Each edge has two ends, (crossing, slot). Slots 0/2 are the under-strand,
  // 1/3 the over-strand.
  struct End {
    std::size_t crossing;
    int slot;
    bool operator==(const End&) const = default;
  };
  std::map<std::int64_t, std::vector<End>> ends;
  for (std::size_t i = 0; i < nc; ++i) {
    for (int k = 0; k < 4; ++k) ends[tuples[i].e[k]].push_back({i, k});
  }
  std::map<std::int64_t, std::size_t> edge_index;
  std::vector<std::int64_t> edge_label;
  for (const auto& [e, list] : ends) {
    if (list.size() != 2) {
      throw InputError("PD edge " + std::to_string(e) + " appears " + std::to_string(list.size()) +
                       " times (expected 2)");
    }
    edge_index[e] = edge_label.size();
    edge_label.push_back(e);
  }
  const std::size_t ne = edge_label.size();
  auto index_at = [&](End x) { return edge_index.at(tuples[x.crossing].e[x.slot]); };
  auto other_end = [&](std::size_t e, End x) {
    const auto& l = ends.at(edge_label[e]);
    return l[0] == x ? l[1] : l[0];
  };

  // Walk each component as an undirected cycle, then orient it.
  std::vector<int> component_of(ne, -1);
  std::vector<End> head(ne);
  std::vector<std::vector<std::size_t>> cycles;
  for (std::size_t start = 0; start < ne; ++start) {
    if (component_of[start] >= 0) continue;
    const int cid = static_cast<int>(cycles.size());
    std::vector<std::size_t> cycle;
    std::size_t e = start;
    End tail = ends.at(edge_label[e])[0];
    while (component_of[e] < 0) {
      component_of[e] = cid;
      cycle.push_back(e);
      head[e] = other_end(e, tail);
      tail = {head[e].crossing, head[e].slot ^ 2};
      e = index_at(tail);
    }
    // Under-passes run slot 0 -> slot 2.
    int forward = 0, backward = 0;
    for (auto c : cycle) {
      if (head[c].slot == 0) ++forward;
      if (head[c].slot == 2) ++backward;
    }
    if (forward && backward) {
      throw InputError("PD orientation inconsistent: under-strands of the component containing edge " +
                       std::to_string(edge_label[start]) + " run in both directions");
    }
    if (backward) {
      for (auto c : cycle) head[c] = other_end(c, head[c]);
      std::reverse(cycle.begin(), cycle.end());
    }
    cycles.push_back(std::move(cycle));
  }

  // Successor of an edge label within its component's label range.
  std::vector<std::int64_t> lo(cycles.size(), INT64_MAX), hi(cycles.size(), INT64_MIN);
  for (std::size_t e = 0; e < ne; ++e) {
    lo[component_of[e]] = std::min(lo[component_of[e]], edge_label[e]);
    hi[component_of[e]] = std::max(hi[component_of[e]], edge_label[e]);
  }
  auto succ = [&](std::int64_t label) {
    const int c = component_of[edge_index.at(label)];
    return label == hi[c] ? lo[c] : label + 1;
  };

  // A component that never passes under takes increasing labels as its
  // orientation.
  for (auto& cycle : cycles) {
    bool has_under = false;
    for (auto c : cycle) has_under = has_under || head[c].slot == 0;
    if (has_under || cycle.size() < 2 || succ(edge_label[cycle[1]]) != edge_label[cycle[0]]) continue;
    for (auto c : cycle) head[c] = other_end(c, head[c]);
    std::reverse(cycle.begin(), cycle.end());
  }

  std::vector<Sign> sign(nc);
  if (overridden) overridden->clear();
  for (std::size_t i = 0; i < nc; ++i) {
    const auto& t = tuples[i];
    // Over-strand running d -> b is a positive crossing.
    const bool d_to_b = head[edge_index.at(t.e[3])] == End{i, 3};
    const Sign geometric = d_to_b ? Sign::Positive : Sign::Negative;
    if (signs) {
      sign[i] = (*signs)[i];
      if (sign[i] != geometric && overridden) overridden->push_back(i);
      continue;
    }
    const bool pos = succ(t.e[3]) == t.e[1];
    const bool neg = succ(t.e[1]) == t.e[3];
    if (pos == neg) {
      throw InputError("cannot infer sign of crossing " + std::to_string(i + 1) + " " + tuple_text(t) +
                       " (successor rule is ambiguous); give explicit signs");
    }
    sign[i] = pos ? Sign::Positive : Sign::Negative;
    if (sign[i] != geometric) {
      throw InputError("PD orientation inconsistent at crossing " + std::to_string(i + 1) + " " + tuple_text(t) +
                       " (edge numbering disagrees with the under-strand direction)");
    }
  }

  // Edges on either side of an overcrossing belong to the same arc.
  std::vector<std::size_t> parent(ne);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& t : tuples) parent[find(edge_index.at(t.e[1]))] = find(edge_index.at(t.e[3]));

  LinkDiagram d;
  std::map<std::size_t, ArcId> arc_of_root;
  for (auto& cycle : cycles) {
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    // Begin where an arc begins (the edge leaving an undercrossing) so the
    // arc list does not wrap.
    std::size_t offset = 0;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const auto prev = cycle[(i + cycle.size() - 1) % cycle.size()];
      if (head[prev].slot == 0) {
        offset = i;
        break;
      }
    }
    std::vector<ArcId> comp;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const auto root = find(cycle[(offset + i) % cycle.size()]);
      auto [it, inserted] = arc_of_root.try_emplace(root, static_cast<ArcId>(arc_of_root.size()));
      if (comp.empty() || comp.back() != it->second) comp.push_back(it->second);
    }
    while (comp.size() > 1 && comp.front() == comp.back()) comp.pop_back();
    d.components.push_back(std::move(comp));
  }
  d.arc_count = arc_of_root.size();
  for (std::size_t i = 0; i < nc; ++i) {
    const auto& t = tuples[i];
    d.crossings.push_back({sign[i], arc_of_root.at(find(edge_index.at(t.e[0]))),
                           arc_of_root.at(find(edge_index.at(t.e[1]))),
                           arc_of_root.at(find(edge_index.at(t.e[2])))});
  }
  std::ostringstream src;
  for (std::size_t i = 0; i < nc; ++i) src << (i ? " " : "") << tuple_text(tuples[i]);
  d.source_pd = src.str();
  return d;
}

// --- text format ------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

/// Splits `"quoted" rest` into (quoted, rest).
std::pair<std::string, std::string> quoted(const std::string& s, const std::string& source, std::size_t lineno) {
  const auto b = s.find('"');
  const auto e = b == std::string::npos ? std::string::npos : s.find('"', b + 1);
  if (b != 0 || e == std::string::npos) throw ParseError(source, lineno, "expected a double-quoted string");
  return {s.substr(1, e - 1), trim(std::string_view(s).substr(e + 1))};
}

ArcId parse_arc(const std::string& tok, std::size_t arcs, const std::string& source, std::size_t lineno) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty()) throw ParseError(source, lineno, "invalid arc label `" + tok + "`");
  if (v < 1 || static_cast<std::size_t>(v) > arcs) {
    throw ParseError(source, lineno, "arc " + tok + " out of range 1.." + std::to_string(arcs));
  }
  return static_cast<ArcId>(v - 1);
}

}  // namespace

LinkDiagram parse_diagram(std::istream& in, const std::string& source) {
  LinkDiagram d;
  bool have_arcs = false, have_pd = false, have_link = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto sp = t.find_first_of(" \t");
    const std::string kw = t.substr(0, sp);
    const std::string rest = sp == std::string::npos ? std::string() : trim(std::string_view(t).substr(sp));
    if (kw == "link") {
      if (rest.empty()) throw ParseError(source, lineno, "`link` needs a name");
      d.name = rest;
      have_link = true;
    } else if (kw == "source") {
      d.source_pd = quoted(rest, source, lineno).first;
    } else if (kw == "orientation") {
      d.orientation_note = quoted(rest, source, lineno).first;
    } else if (kw == "pd") {
      if (have_arcs || have_pd) throw ParseError(source, lineno, "`pd` cannot be combined with other diagram data");
      auto [pd, tail] = quoted(rest, source, lineno);
      std::optional<std::vector<Sign>> signs;
      if (!tail.empty()) {
        std::istringstream ts(tail);
        std::string skw, sv;
        if (!(ts >> skw >> sv) || skw != "signs") throw ParseError(source, lineno, "expected `signs <+-...>`");
        try {
          signs = parse_signs(sv);
        } catch (const InputError& e) {
          throw ParseError(source, lineno, e.what());
        }
      }
      LinkDiagram imported;
      try {
        imported = import_pd(pd, signs);
      } catch (const ParseError&) {
        throw;
      } catch (const InputError& e) {
        throw ParseError(source, lineno, e.what());
      }
      d.arc_count = imported.arc_count;
      d.crossings = std::move(imported.crossings);
      d.components = std::move(imported.components);
      if (d.source_pd.empty()) d.source_pd = imported.source_pd;
      have_pd = true;
    } else if (kw == "arcs") {
      if (have_arcs || have_pd) throw ParseError(source, lineno, "duplicate arc count");
      std::istringstream rs(rest);
      long long k = 0;
      std::string extra;
      if (!(rs >> k) || k <= 0 || (rs >> extra)) throw ParseError(source, lineno, "expected `arcs <positive count>`");
      d.arc_count = static_cast<std::size_t>(k);
      have_arcs = true;
    } else if (kw == "x") {
      if (!have_arcs) throw ParseError(source, lineno, "`x` before `arcs`");
      std::istringstream rs(rest);
      std::string s, a, b, c, extra;
      if (!(rs >> s >> a >> b >> c) || (rs >> extra) || (s != "+" && s != "-")) {
        throw ParseError(source, lineno, "expected `x <+|-> <under_in> <over> <under_out>`");
      }
      d.crossings.push_back({s == "+" ? Sign::Positive : Sign::Negative, parse_arc(a, d.arc_count, source, lineno),
                             parse_arc(b, d.arc_count, source, lineno), parse_arc(c, d.arc_count, source, lineno)});
    } else if (kw == "component") {
      if (!have_arcs) throw ParseError(source, lineno, "`component` before `arcs`");
      std::istringstream rs(rest);
      std::vector<ArcId> comp;
      std::string tok;
      while (rs >> tok) comp.push_back(parse_arc(tok, d.arc_count, source, lineno));
      if (comp.empty()) throw ParseError(source, lineno, "empty component");
      d.components.push_back(std::move(comp));
    } else {
      throw ParseError(source, lineno, "unknown keyword `" + kw + "`");
    }
  }
  if (!have_link) throw ParseError(source, lineno, "missing `link <name>` line");
  if (!have_arcs && !have_pd) throw ParseError(source, lineno, "missing `arcs` or `pd` data");
  require_valid(d);
  return d;
}

LinkDiagram load_diagram(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open diagram file " + path.string());
  return parse_diagram(in, path.string());
}

std::string format_diagram(const LinkDiagram& d) {
  std::ostringstream os;
  os << "link " << (d.name.empty() ? "unnamed" : d.name) << '\n';
  if (!d.source_pd.empty()) os << "source \"" << d.source_pd << "\"\n";
  if (!d.orientation_note.empty()) os << "orientation \"" << d.orientation_note << "\"\n";
  os << "arcs " << d.arc_count << '\n';
  for (const auto& c : d.crossings) {
    os << "x " << to_char(c.sign) << ' ' << c.under_in + 1 << ' ' << c.over + 1 << ' ' << c.under_out + 1 << '\n';
  }
  for (const auto& comp : d.components) {
    os << "component";
    for (auto a : comp) os << ' ' << a + 1;
    os << '\n';
  }
  return os.str();
}

LinkDiagram reverse_components(const LinkDiagram& d, const std::vector<std::size_t>& which) {
  std::vector<int> comp_of(d.arc_count, -1);
  for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
    for (auto a : d.components[ci]) comp_of[a] = static_cast<int>(ci);
  }
  std::set<std::size_t> flip(which.begin(), which.end());
  for (auto ci : flip) {
    if (ci >= d.components.size()) throw InputError("no component " + std::to_string(ci + 1));
  }
  auto flipped = [&](ArcId a) { return flip.count(static_cast<std::size_t>(comp_of[a])) > 0; };

  LinkDiagram r = d;
  for (auto& c : r.crossings) {
    const bool under = flipped(c.under_in);
    const bool over = flipped(c.over);
    if (under) std::swap(c.under_in, c.under_out);
    if (under != over) c.sign = c.sign == Sign::Positive ? Sign::Negative : Sign::Positive;
  }
  for (auto ci : flip) {
    auto& comp = r.components[ci];
    std::reverse(comp.begin(), comp.end());
  }
  return r;
}

}  // namespace beadlink
