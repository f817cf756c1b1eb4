#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "beadlink/diagram.hpp"
#include "beadlink/error.hpp"
#include "beadlink/field.hpp"
#include "beadlink/forms.hpp"
#include "beadlink/quandle.hpp"

namespace beadlink {

/// Shared stop signal for long computations: set explicitly or by deadline.
class CancelToken {
 public:
  CancelToken() = default;
  explicit CancelToken(std::chrono::milliseconds budget)
      : deadline_(std::chrono::steady_clock::now() + budget) {}

  void cancel() noexcept { flag_.store(true, std::memory_order_relaxed); }
  bool cancelled() const noexcept {
    if (flag_.load(std::memory_order_relaxed)) return true;
    if (deadline_ && std::chrono::steady_clock::now() > *deadline_) {
      flag_.store(true, std::memory_order_relaxed);
      return true;
    }
    return false;
  }

 private:
  mutable std::atomic<bool> flag_{false};
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

class Cancelled : public std::runtime_error {
 public:
  Cancelled() : std::runtime_error("computation cancelled (budget exhausted)") {}
};

struct XColoring {
  std::vector<Element> colors;  // indexed by ArcId

  bool operator==(const XColoring&) const = default;
  auto operator<=>(const XColoring&) const = default;
};

bool is_xcoloring(const LinkDiagram& d, const Quandle& q, const XColoring& f);

/// All X-colorings in lexicographic order of the color vector. Backtracks
/// over arcs in component order; an arc fixed by a crossing whose other two
/// arcs are colored is derived rather than branched on.
std::vector<XColoring> enumerate_xcolorings(const LinkDiagram& d, const Quandle& q);

/// Reference enumeration: tests every one of m^arcs assignments.
std::vector<XColoring> enumerate_xcolorings_bruteforce(const LinkDiagram& d, const Quandle& q);

enum class Engine { Oracle, Propagate };

std::string to_string(Engine e);
Engine parse_engine(const std::string& s);

struct BeadCount {
  std::uint64_t count = 0;
  /// Bead vectors per arc, only when witnesses were requested; capped.
  std::vector<std::vector<Vec>> witnesses;
};

/// Counts bead colorings over a fixed (diagram, quandle, form). At a crossing
/// with x = color(under_in), y = color(over):
///   positive: bead(under_out) = bead(under_in) + [bead(under_in), bead(over)]_{x,y} bead(over)
///   negative: bead(under_out) = bead(under_in) - [bead(under_in), bead(over)]_{x,y} bead(over)
class BeadCounter {
 public:
  /// Throws InputError if the diagram is invalid or the form was validated
  /// against a different quandle.
  BeadCounter(const LinkDiagram& d, const Quandle& q, const BilinearForm& phi);

  /// Oracle: every |V|^arcs assignment is checked with field arithmetic.
  /// Propagate: branches on arcs in descending order of how often they are
  /// the over-arc (ties by id), deriving under_out beads from the rule and
  /// rejecting on conflict. Throws InputError if f is not an X-coloring and
  /// Cancelled if the token fires.
  BeadCount count(const XColoring& f, Engine engine, std::size_t witness_cap = 0,
                  const CancelToken* cancel = nullptr) const;

  /// Arc branch order used by the propagating engine.
  const std::vector<ArcId>& branch_order() const noexcept;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

BeadCount count_beads(const LinkDiagram& d, const Quandle& q, const BilinearForm& phi, const XColoring& f,
                      Engine engine, std::size_t witness_cap = 0);

}  // namespace beadlink
