#include <atomic>
#include <cmath>
#include <sstream>

#include "beadlink/forms.hpp"
#include "form_kernel.hpp"

namespace beadlink {

std::string to_string(SearchMode m) {
  switch (m) {
    case SearchMode::All:
      return "all";
    case SearchMode::AlternatingOnly:
      return "alternating-only";
    case SearchMode::ConstantDiagonal:
      return "constant-diagonal";
  }
  return "?";
}

SearchMode parse_search_mode(const std::string& s) {
  if (s == "all") return SearchMode::All;
  if (s == "alternating-only") return SearchMode::AlternatingOnly;
  if (s == "constant-diagonal") return SearchMode::ConstantDiagonal;
  throw InputError("unknown search mode `" + s + "` (expected all, alternating-only or constant-diagonal)");
}

namespace {

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

}  // namespace

SearchTooLarge::SearchTooLarge(double estimate, double bound)
    : InputError("search space estimate " + sci(estimate) + " exceeds bound " + sci(bound) +
                 "; rerun with the large-search override to proceed"),
      estimate_(estimate) {}

double search_space_estimate(const Quandle& q, std::uint32_t p, std::size_t n, SearchMode mode) {
  PrimeField f(p);
  const double all = std::pow(static_cast<double>(p), static_cast<double>(n * n));
  const double alternating = std::pow(static_cast<double>(p), static_cast<double>(n * (n - 1) / 2));
  const double m = static_cast<double>(q.order());
  const double diag = mode == SearchMode::ConstantDiagonal ? alternating : std::pow(alternating, m);
  const double off = std::pow(mode == SearchMode::AlternatingOnly ? alternating : all, m * m - m);
  return diag * off;
}

namespace {

using detail::MatrixTables;

struct Constraint {
  int axiom;
  std::size_t xy, xz, yz, other;  // pair ids; `other` is (x▷z,y▷z) for (ii), (x▷y,z) for (iii)
};

/// Everything the DFS needs that does not change while searching.
struct SearchPlan {
  const Quandle* q;
  std::uint32_t p;
  std::size_t n;
  std::size_t N;
  std::size_t m;
  SearchMode mode;
  std::vector<Matrix> matrices;
  std::vector<MatrixTables> tables;
  std::vector<std::size_t> order;  // pair ids in assignment order
  std::vector<std::vector<std::uint32_t>> candidates;  // per depth
  std::vector<std::vector<Constraint>> constraints;    // per depth
};

SearchPlan make_plan(const Quandle& q, std::uint32_t p, std::size_t n, SearchMode mode) {
  SearchPlan plan;
  plan.q = &q;
  plan.p = p;
  plan.n = n;
  plan.m = q.order();
  plan.mode = mode;
  const detail::SpaceShape shape(p, n);
  plan.N = shape.size;
  const std::size_t count = checked_power(p, n * n, std::size_t{1} << 16);
  if (static_cast<double>(count) * static_cast<double>(plan.N * plan.N) > static_cast<double>(1u << 24)) {
    throw InputError("search over " + std::to_string(count) + " candidate matrices on a space of size " +
                     std::to_string(plan.N) + " is too large for the table kernel");
  }
  plan.matrices = all_matrices(p, n);
  plan.tables.reserve(count);
  for (const auto& mat : plan.matrices) plan.tables.push_back(detail::make_tables(mat, shape));

  const std::size_t m = plan.m;
  for (std::size_t x = 0; x < m; ++x) plan.order.push_back(x * m + x);
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      if (x != y) plan.order.push_back(x * m + y);
    }
  }
  std::vector<std::size_t> position(m * m);
  for (std::size_t d = 0; d < plan.order.size(); ++d) position[plan.order[d]] = d;

  std::vector<std::uint32_t> alternating, every;
  for (std::uint32_t k = 0; k < plan.matrices.size(); ++k) {
    every.push_back(k);
    if (is_alternating(plan.matrices[k])) alternating.push_back(k);
  }
  for (std::size_t d = 0; d < plan.order.size(); ++d) {
    const bool diag = d < m;
    plan.candidates.push_back(diag || mode == SearchMode::AlternatingOnly ? alternating : every);
  }

  plan.constraints.resize(plan.order.size());
  auto pair = [m](std::size_t a, std::size_t b) { return a * m + b; };
  for (Element x = 0; x < m; ++x) {
    for (Element y = 0; y < m; ++y) {
      for (Element z = 0; z < m; ++z) {
        const Constraint c2{2, pair(x, y), pair(x, z), pair(y, z), pair(q.op(x, z), q.op(y, z))};
        const Constraint c3{3, pair(x, y), pair(x, z), pair(y, z), pair(q.op(x, y), z)};
        for (const auto& c : {c2, c3}) {
          const std::size_t depth =
              std::max({position[c.xy], position[c.xz], position[c.yz], position[c.other]});
          plan.constraints[depth].push_back(c);
        }
      }
    }
  }
  return plan;
}

class Searcher {
 public:
  Searcher(const SearchPlan& plan, std::size_t limit, std::chrono::steady_clock::time_point deadline,
           bool has_deadline, std::atomic<bool>& stop_all)
      : plan_(plan),
        limit_(limit),
        deadline_(deadline),
        has_deadline_(has_deadline),
        stop_all_(stop_all),
        assigned_(plan.m * plan.m, 0) {}

  /// Runs the subtree below a fixed choice at depth 0 (or the whole tree).
  template <class Emit>
  void run(std::optional<std::uint32_t> first, Emit&& emit) {
    if (first) {
      assigned_[plan_.order[0]] = *first;
      ++nodes_;
      if (satisfied(0)) dfs(1, emit);
    } else {
      dfs(0, emit);
    }
  }

  std::uint64_t nodes() const noexcept { return nodes_; }
  std::size_t emitted() const noexcept { return emitted_; }
  bool timed_out() const noexcept { return timed_out_; }
  bool hit_limit() const noexcept { return limit_ != 0 && emitted_ >= limit_; }

 private:
  bool stopped() {
    if (hit_limit() || timed_out_) return true;
    if (stop_all_.load(std::memory_order_relaxed)) {
      timed_out_ = true;
      return true;
    }
    if (has_deadline_ && (nodes_ & 0x3ff) == 0 && std::chrono::steady_clock::now() > deadline_) {
      timed_out_ = true;
      stop_all_.store(true, std::memory_order_relaxed);
      return true;
    }
    return false;
  }

  bool satisfied(std::size_t depth) const {
    const auto& tabs = plan_.tables;
    auto fail = [](std::size_t, std::size_t, std::size_t, Scalar, Scalar) { return false; };
    for (const auto& c : plan_.constraints[depth]) {
      const auto& xy = tabs[assigned_[c.xy]];
      const auto& xz = tabs[assigned_[c.xz]];
      const auto& yz = tabs[assigned_[c.yz]];
      const auto& other = tabs[assigned_[c.other]];
      const bool ok = c.axiom == 2 ? detail::scan_axiom2(xy, xz, yz, other, plan_.N, fail)
                                   : detail::scan_axiom3(xy, xz, yz, other, plan_.N, plan_.p, fail);
      if (!ok) return false;
    }
    return true;
  }

  template <class Emit>
  void dfs(std::size_t depth, Emit& emit) {
    if (depth == plan_.order.size()) {
      ++emitted_;
      emit(assigned_);
      return;
    }
    const std::size_t pair = plan_.order[depth];
    const bool forced = plan_.mode == SearchMode::ConstantDiagonal && depth > 0 && depth < plan_.m;
    const std::vector<std::uint32_t> only{assigned_[plan_.order[0]]};
    const auto& cands = forced ? only : plan_.candidates[depth];
    for (auto k : cands) {
      ++nodes_;
      if (stopped()) return;
      assigned_[pair] = k;
      if (satisfied(depth)) dfs(depth + 1, emit);
      if (hit_limit() || timed_out_) return;
    }
  }

  const SearchPlan& plan_;
  std::size_t limit_;
  std::chrono::steady_clock::time_point deadline_;
  bool has_deadline_;
  std::atomic<bool>& stop_all_;
  std::vector<std::uint32_t> assigned_;
  std::uint64_t nodes_ = 0;
  std::size_t emitted_ = 0;
  bool timed_out_ = false;
};

FormData to_form(const SearchPlan& plan, const std::vector<std::uint32_t>& assigned) {
  FormData d;
  d.quandle_order = plan.m;
  d.dim = plan.n;
  d.modulus = plan.p;
  d.blocks.reserve(assigned.size());
  for (auto k : assigned) d.blocks.push_back(plan.matrices[k]);
  return d;
}

}  // namespace

SearchResult search_forms(const Quandle& q, std::uint32_t p, std::size_t n, const SearchOptions& opts) {
  SearchResult result;
  result.space_estimate = search_space_estimate(q, p, n, opts.mode);
  if (result.space_estimate > opts.space_bound && !opts.allow_large) {
    throw SearchTooLarge(result.space_estimate, opts.space_bound);
  }
  const SearchPlan plan = make_plan(q, p, n, opts.mode);
  const auto start = std::chrono::steady_clock::now();
  const bool has_deadline = opts.time_budget.count() > 0;
  const auto deadline = start + opts.time_budget;
  std::atomic<bool> stop_all{false};

  auto deliver = [&](const std::vector<std::uint32_t>& assigned) {
    if (!opts.on_form && !opts.collect) return;
    auto form = FormFactory::make(q, to_form(plan, assigned));
    if (opts.on_form) opts.on_form(form);
    if (opts.collect) result.forms.push_back(std::move(form));
  };

  const int threads = detail::resolve_threads(opts.threads);
  if (threads <= 1) {
    Searcher s(plan, opts.limit, deadline, has_deadline, stop_all);
    s.run(std::nullopt, deliver);
    result.nodes = s.nodes();
    result.emitted = s.emitted();
    result.timed_out = s.timed_out();
    result.hit_limit = s.hit_limit();
  } else {
    const auto& top = plan.candidates[0];
    std::vector<std::vector<std::vector<std::uint32_t>>> found(top.size());
    std::vector<std::uint64_t> nodes(top.size(), 0);
    std::vector<char> branch_timed_out(top.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::size_t i = 0; i < top.size(); ++i) {
      Searcher s(plan, opts.limit, deadline, has_deadline, stop_all);
      s.run(top[i], [&](const std::vector<std::uint32_t>& a) { found[i].push_back(a); });
      nodes[i] = s.nodes();
      branch_timed_out[i] = s.timed_out();
    }
    for (std::size_t i = 0; i < top.size(); ++i) {
      result.nodes += nodes[i];
      result.timed_out = result.timed_out || branch_timed_out[i];
      for (const auto& a : found[i]) {
        if (opts.limit != 0 && result.emitted >= opts.limit) break;
        deliver(a);
        ++result.emitted;
      }
    }
    result.hit_limit = opts.limit != 0 && result.emitted >= opts.limit;
  }
  result.complete = !result.timed_out && !result.hit_limit;
  return result;
}

}  // namespace beadlink
