#include "beadlink/coloring.hpp"

#include <algorithm>

#include "form_kernel.hpp"

namespace beadlink {

bool is_xcoloring(const LinkDiagram& d, const Quandle& q, const XColoring& f) {
  if (f.colors.size() != d.arc_count) return false;
  for (auto c : f.colors) {
    if (c >= q.order()) return false;
  }
  for (const auto& c : d.crossings) {
    if (f.colors[c.under_out] != q.act(f.colors[c.under_in], f.colors[c.over], to_int(c.sign))) return false;
  }
  return true;
}

namespace {

std::vector<std::vector<std::size_t>> incidence(const LinkDiagram& d) {
  std::vector<std::vector<std::size_t>> inc(d.arc_count);
  for (std::size_t i = 0; i < d.crossings.size(); ++i) {
    const auto& c = d.crossings[i];
    inc[c.under_in].push_back(i);
    if (c.over != c.under_in) inc[c.over].push_back(i);
    if (c.under_out != c.under_in && c.under_out != c.over) inc[c.under_out].push_back(i);
  }
  return inc;
}

/// Partial assignment with an undo trail and a pending-propagation stack.
template <class Value>
class Assignment {
 public:
  static constexpr Value unset = static_cast<Value>(-1);

  explicit Assignment(std::size_t n) : values_(n, unset) {}

  Value operator[](std::size_t i) const { return values_[i]; }
  bool has(std::size_t i) const { return values_[i] != unset; }
  std::size_t mark() const { return trail_.size(); }

  bool set(std::size_t i, Value v) {
    if (values_[i] == unset) {
      values_[i] = v;
      trail_.push_back(i);
      pending_.push_back(i);
      return true;
    }
    return values_[i] == v;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      values_[trail_.back()] = unset;
      trail_.pop_back();
    }
    pending_.clear();
  }

  bool pop_pending(std::size_t& i) {
    if (pending_.empty()) return false;
    i = pending_.back();
    pending_.pop_back();
    return true;
  }

  const std::vector<Value>& values() const { return values_; }

 private:
  std::vector<Value> values_;
  std::vector<std::size_t> trail_;
  std::vector<std::size_t> pending_;
};

}  // namespace

std::vector<XColoring> enumerate_xcolorings(const LinkDiagram& d, const Quandle& q) {
  require_valid(d);
  const auto inc = incidence(d);
  std::vector<ArcId> order;
  for (const auto& comp : d.components) order.insert(order.end(), comp.begin(), comp.end());

  Assignment<Element> colors(d.arc_count);
  auto propagate = [&]() {
    std::size_t arc = 0;
    while (colors.pop_pending(arc)) {
      for (auto ci : inc[arc]) {
        const auto& c = d.crossings[ci];
        const int s = to_int(c.sign);
        if (colors.has(c.under_in) && colors.has(c.over)) {
          if (!colors.set(c.under_out, q.act(colors[c.under_in], colors[c.over], s))) return false;
        } else if (colors.has(c.under_out) && colors.has(c.over)) {
          if (!colors.set(c.under_in, q.act(colors[c.under_out], colors[c.over], -s))) return false;
        }
      }
    }
    return true;
  };

  std::vector<XColoring> out;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    while (pos < order.size() && colors.has(order[pos])) ++pos;
    if (pos == order.size()) {
      out.push_back({colors.values()});
      return;
    }
    for (Element c = 0; c < q.order(); ++c) {
      const auto mark = colors.mark();
      if (colors.set(order[pos], c) && propagate()) self(self, pos + 1);
      colors.undo(mark);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<XColoring> enumerate_xcolorings_bruteforce(const LinkDiagram& d, const Quandle& q) {
  require_valid(d);
  const std::size_t total = checked_power(q.order(), d.arc_count, std::size_t{1} << 32);
  std::vector<XColoring> out;
  XColoring f{std::vector<Element>(d.arc_count, 0)};
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rem = k;
    for (std::size_t i = d.arc_count; i-- > 0;) {
      f.colors[i] = static_cast<Element>(rem % q.order());
      rem /= q.order();
    }
    if (is_xcoloring(d, q, f)) out.push_back(f);
  }
  return out;
}

std::string to_string(Engine e) { return e == Engine::Oracle ? "oracle" : "propagate"; }

Engine parse_engine(const std::string& s) {
  if (s == "oracle") return Engine::Oracle;
  if (s == "propagate") return Engine::Propagate;
  throw InputError("unknown engine `" + s + "` (expected oracle or propagate)");
}

struct BeadCounter::Impl {
  LinkDiagram diagram;
  Quandle quandle;
  BilinearForm form;
  detail::SpaceShape shape;
  PrimeField field;
  std::vector<Vec> vectors;
  std::vector<detail::MatrixTables> tables;
  std::vector<std::size_t> table_of;  // per (x,y) pair
  std::vector<ArcId> order;
  std::vector<std::vector<std::size_t>> incident;

  Impl(const LinkDiagram& d, const Quandle& q, const BilinearForm& phi)
      : diagram(d),
        quandle(q),
        form(phi),
        shape(phi.modulus(), phi.dim()),
        field(phi.modulus()),
        vectors(all_vectors(phi.modulus(), phi.dim())) {
    const std::size_t m = q.order();
    table_of.resize(m * m);
    std::vector<const Matrix*> distinct;
    for (Element x = 0; x < m; ++x) {
      for (Element y = 0; y < m; ++y) {
        const auto& b = phi.block(x, y);
        std::size_t id = 0;
        while (id < distinct.size() && !(*distinct[id] == b)) ++id;
        if (id == distinct.size()) {
          distinct.push_back(&b);
          tables.push_back(detail::make_tables(b, shape));
        }
        table_of[x * m + y] = id;
      }
    }
    std::vector<std::size_t> over_count(d.arc_count, 0);
    for (const auto& c : d.crossings) ++over_count[c.over];
    order.resize(d.arc_count);
    for (ArcId a = 0; a < d.arc_count; ++a) order[a] = a;
    std::stable_sort(order.begin(), order.end(),
                     [&](ArcId a, ArcId b) { return over_count[a] > over_count[b]; });
    // Bead propagation only runs forward, so only under_in and over matter.
    incident.assign(d.arc_count, {});
    for (std::size_t i = 0; i < d.crossings.size(); ++i) {
      const auto& c = d.crossings[i];
      incident[c.under_in].push_back(i);
      if (c.over != c.under_in) incident[c.over].push_back(i);
    }
  }

  std::vector<Vec> witness(const std::vector<detail::VecIndex>& beads) const {
    std::vector<Vec> w;
    w.reserve(beads.size());
    for (auto b : beads) w.push_back(vectors[b]);
    return w;
  }

  BeadCount oracle(const XColoring& f, std::size_t cap, const CancelToken* cancel) const {
    const std::size_t k = diagram.arc_count;
    const std::size_t N = vectors.size();
    const std::size_t total = checked_power(N, k, std::size_t{1} << 34);
    BeadCount out;
    std::vector<detail::VecIndex> idx(k, 0);
    for (std::size_t step = 0; step < total; ++step) {
      if (cancel && (step & 0xfff) == 0 && cancel->cancelled()) throw Cancelled();
      bool ok = true;
      for (const auto& c : diagram.crossings) {
        const Vec& in = vectors[idx[c.under_in]];
        const Vec& over = vectors[idx[c.over]];
        FieldElem t = form.eval(f.colors[c.under_in], f.colors[c.over], in, over);
        if (c.sign == Sign::Negative) t = -t;
        if (!(in + t * over == vectors[idx[c.under_out]])) {
          ok = false;
          break;
        }
      }
      if (ok) {
        ++out.count;
        if (out.witnesses.size() < cap) out.witnesses.push_back(witness(idx));
      }
      for (std::size_t i = k; i-- > 0;) {
        if (++idx[i] < N) break;
        idx[i] = 0;
      }
    }
    return out;
  }

  BeadCount propagate(const XColoring& f, std::size_t cap, const CancelToken* cancel) const {
    const std::size_t N = vectors.size();
    const std::size_t m = quandle.order();
    std::vector<const detail::MatrixTables*> at_crossing(diagram.crossings.size());
    for (std::size_t i = 0; i < diagram.crossings.size(); ++i) {
      const auto& c = diagram.crossings[i];
      at_crossing[i] = &tables[table_of[f.colors[c.under_in] * m + f.colors[c.over]]];
    }
    Assignment<detail::VecIndex> beads(diagram.arc_count);
    auto propagate_all = [&]() {
      std::size_t arc = 0;
      while (beads.pop_pending(arc)) {
        for (auto ci : incident[arc]) {
          const auto& c = diagram.crossings[ci];
          if (!beads.has(c.under_in) || !beads.has(c.over)) continue;
          const auto& t = *at_crossing[ci];
          const std::size_t slot = beads[c.under_in] * N + beads[c.over];
          const auto next = c.sign == Sign::Positive ? t.plus[slot] : t.minus[slot];
          if (!beads.set(c.under_out, next)) return false;
        }
      }
      return true;
    };

    BeadCount out;
    std::uint64_t nodes = 0;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
      while (pos < order.size() && beads.has(order[pos])) ++pos;
      if (pos == order.size()) {
        ++out.count;
        if (out.witnesses.size() < cap) out.witnesses.push_back(witness(beads.values()));
        return;
      }
      for (detail::VecIndex v = 0; v < N; ++v) {
        if (cancel && (++nodes & 0xfff) == 0 && cancel->cancelled()) throw Cancelled();
        const auto mark = beads.mark();
        if (beads.set(order[pos], v) && propagate_all()) self(self, pos + 1);
        beads.undo(mark);
      }
    };
    rec(rec, 0);
    return out;
  }
};

BeadCounter::BeadCounter(const LinkDiagram& d, const Quandle& q, const BilinearForm& phi) {
  require_valid(d);
  if (!(phi.quandle() == q)) throw InputError("form was validated against a different quandle");
  impl_ = std::make_shared<const Impl>(d, q, phi);
}

BeadCount BeadCounter::count(const XColoring& f, Engine engine, std::size_t witness_cap,
                             const CancelToken* cancel) const {
  if (!is_xcoloring(impl_->diagram, impl_->quandle, f)) throw InputError("not an X-coloring of this diagram");
  if (cancel && cancel->cancelled()) throw Cancelled();
  return engine == Engine::Oracle ? impl_->oracle(f, witness_cap, cancel) : impl_->propagate(f, witness_cap, cancel);
}

const std::vector<ArcId>& BeadCounter::branch_order() const noexcept { return impl_->order; }

BeadCount count_beads(const LinkDiagram& d, const Quandle& q, const BilinearForm& phi, const XColoring& f,
                      Engine engine, std::size_t witness_cap) {
  return BeadCounter(d, q, phi).count(f, engine, witness_cap);
}

}  // namespace beadlink
