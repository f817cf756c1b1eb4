#pragma once

// Oriented link diagrams as arcs and signed crossings. Virtual crossings
// impose no relation and do not break arcs, so a virtual diagram is just its
// list of classical crossings.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace beadlink {

using ArcId = std::uint32_t;

enum class Sign : std::int8_t { Negative = -1, Positive = 1 };

inline int to_int(Sign s) { return static_cast<int>(s); }
inline char to_char(Sign s) { return s == Sign::Positive ? '+' : '-'; }

/// The over-strand is not broken at a crossing, so a single arc labels it.
struct Crossing {
  Sign sign;
  ArcId under_in;
  ArcId over;
  ArcId under_out;

  bool operator==(const Crossing&) const = default;
};

struct LinkDiagram {
  std::string name;
  std::size_t arc_count = 0;
  std::vector<Crossing> crossings;
  /// Arcs of each component in orientation order; consecutive arcs (and the
  /// last and first) meet at an undercrossing of that component.
  std::vector<std::vector<ArcId>> components;
  /// Provenance, carried through the file format but not used in computation.
  std::string source_pd;
  std::string orientation_note;

  bool operator==(const LinkDiagram&) const = default;
};

struct DiagramReport {
  std::vector<std::string> violations;
  /// Components made of one arc that never passes under anything.
  std::vector<std::size_t> free_loops;

  bool ok() const noexcept { return violations.empty(); }
};

DiagramReport validate_diagram(const LinkDiagram& d);
/// Throws InputError carrying the report when the diagram is invalid.
void require_valid(const LinkDiagram& d);

struct CrossingRelation {
  ArcId under_in;
  ArcId over;
  ArcId under_out;
  int sign;

  bool operator==(const CrossingRelation&) const = default;
};

/// One relation per crossing: color(under_out) = color(under_in) ▷^sign color(over).
std::vector<CrossingRelation> crossing_relations(const LinkDiagram& d);

/// Imports PD notation: a sequence of X[a,b,c,d] tuples, edges listed
/// counterclockwise from the incoming under-edge a, under-strand a -> c.
/// Each component's orientation comes from its under-passes. Without
/// explicit signs, a crossing is positive when b is the successor of d in
/// its component's edge numbering and negative when d is the successor of b;
/// anything else, or numbering that disagrees with the under-strand
/// direction, is an error. Explicit `signs` are taken as given; crossings
/// where they differ from the sign implied by the PD geometry are listed in
/// `overridden` (0-indexed) when it is non-null.
/// Arcs are numbered in order of first appearance walking the components,
/// components ordered by their smallest edge label.
LinkDiagram import_pd(std::string_view pd_text, const std::optional<std::vector<Sign>>& signs = std::nullopt,
                      std::vector<std::size_t>* overridden = nullptr);
std::vector<Sign> parse_signs(std::string_view text);

/// Line-oriented diagram format:
///   link <name>
///   arcs <k>
///   x <+|-> <under_in> <over> <under_out>     (1-indexed arcs)
///   component <arc> <arc> ...
/// or, instead of arcs/x/component lines,
///   pd "<PD string>" [signs <+-...>]
/// Optional `source "<PD>"` and `orientation "<note>"` lines record provenance.
LinkDiagram parse_diagram(std::istream& in, const std::string& source = "<input>");
LinkDiagram load_diagram(const std::filesystem::path& path);
std::string format_diagram(const LinkDiagram& d);

/// Same link with every component's orientation reversed on the listed
/// components. Crossing records are rewritten so that arcs keep their ids.
LinkDiagram reverse_components(const LinkDiagram& d, const std::vector<std::size_t>& which);

}  // namespace beadlink
