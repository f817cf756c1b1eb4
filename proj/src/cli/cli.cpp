#include "beadlink/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "beadlink/catalog.hpp"
#include "beadlink/coloring.hpp"
#include "beadlink/diagram.hpp"
#include "beadlink/error.hpp"
#include "beadlink/forms.hpp"
#include "beadlink/invariant.hpp"
#include "beadlink/quandle.hpp"

namespace beadlink {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// A loaded input together with the name it is reported under.
template <class T>
struct Named {
  std::string id;
  T value;
};

class Resolver {
 public:
  explicit Resolver(std::string catalog_root) : root_(std::move(catalog_root)) {}

  const Catalog& catalog() {
    if (!catalog_) catalog_.emplace(root_.empty() ? Catalog::default_root() : fs::path(root_));
    return *catalog_;
  }

  // Arguments naming an existing file are loaded from it; anything else is
  // a catalog id.
  Named<Quandle> quandle(const std::string& arg) {
    if (fs::is_regular_file(arg)) return {fs::path(arg).stem().string(), load_quandle(arg)};
    return {arg, catalog().quandle(arg)};
  }
  Named<FormData> form(const std::string& arg) {
    if (fs::is_regular_file(arg)) return {fs::path(arg).stem().string(), load_form(arg)};
    return {arg, catalog().form(arg)};
  }
  Named<LinkDiagram> link(const std::string& arg) {
    if (fs::is_regular_file(arg)) {
      auto d = load_diagram(arg);
      std::string id = d.name.empty() ? fs::path(arg).stem().string() : d.name;
      return {std::move(id), std::move(d)};
    }
    return {arg, catalog().load(arg).diagram};
  }

 private:
  std::string root_;
  std::optional<Catalog> catalog_;
};

struct EngineChoice {
  bool both = false;
  Engine engine = Engine::Propagate;
};

EngineChoice parse_engine_choice(const std::string& s) {
  if (s == "both") return {true, Engine::Propagate};
  return {false, parse_engine(s)};
}

/// Computes with the chosen engine; with `both`, runs the oracle as well and
/// throws on any per-coloring disagreement.
class EngineDivergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

InvariantResult compute_checked(const LinkDiagram& d, const Quandle& q, const BilinearForm& phi,
                                const EngineChoice& engine, int threads) {
  ComputeOptions opts;
  opts.engine = engine.engine;
  opts.threads = threads;
  auto result = compute_invariant(d, q, phi, opts);
  if (engine.both) {
    opts.engine = Engine::Oracle;
    const auto oracle = compute_invariant(d, q, phi, opts);
    for (std::size_t i = 0; i < result.counts.size(); ++i) {
      if (result.counts[i] != oracle.counts[i]) {
        std::ostringstream os;
        os << "engine divergence on " << (d.name.empty() ? "diagram" : d.name) << " coloring " << i + 1
           << ": propagate=" << result.counts[i] << " oracle=" << oracle.counts[i];
        throw EngineDivergence(os.str());
      }
    }
  }
  return result;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void write_output(std::ostream& out, const json& doc, const std::string& format) {
  if (format == "json") {
    out << doc.dump(2) << '\n';
  } else {
    out << render_json_as_text(doc);
  }
}

}  // namespace

std::string render_batch_text(const json& batch) {
  std::ostringstream os;
  os << "quandle " << batch.at("quandle").get<std::string>() << ", form " << batch.at("form").get<std::string>()
     << '\n';
  for (const auto& row : batch.at("table")) {
    os << row.at("polynomial").get<std::string>() << " |";
    bool first = true;
    for (const auto& l : row.at("links")) {
      os << (first ? " " : ", ") << l.get<std::string>();
      first = false;
    }
    os << '\n';
  }
  const auto& diff = batch.at("diff");
  if (diff.is_null()) {
    os << "no expected table for this quandle and form\n";
  } else {
    for (const auto& m : diff) {
      os << "MISMATCH " << m.at("link").get<std::string>() << ": expected " << m.at("expected").get<std::string>()
         << ", got " << m.at("got").get<std::string>() << '\n';
    }
    os << diff.size() << (diff.size() == 1 ? " difference" : " differences") << " from expected table\n";
  }
  return os.str();
}

std::string render_json_as_text(const json& doc) {
  if (doc.contains("table")) return render_batch_text(doc);
  return render_text(record_from_json(doc));
}

namespace {

int cmd_quandle_check(Resolver& res, const std::string& arg, std::ostream& out) {
  Table table;
  if (fs::is_regular_file(arg)) {
    std::ifstream in(arg);
    table = parse_quandle_table(in, arg);
  } else {
    table = res.quandle(arg).value.table();
  }
  const auto check = validate_quandle(table);
  if (check.valid()) {
    out << "valid quandle of order " << check.quandle->order()
        << (check.quandle->is_involutory() ? " (involutory)" : "") << '\n';
    return kExitOk;
  }
  for (const auto& v : check.violations) out << v.message << '\n';
  out << check.violations.size() << " axiom violations\n";
  return kExitFailure;
}

int cmd_form_check(Resolver& res, const std::string& qarg, const std::string& farg, std::size_t cap,
                   bool reference, int threads, std::ostream& out) {
  const auto q = res.quandle(qarg);
  const auto f = res.form(farg);
  const auto check =
      reference ? validate_form_reference(q.value, f.value, cap) : validate_form(q.value, f.value, {cap, threads});
  if (check.valid()) {
    out << "valid X-bilinear form " << f.id << " on quandle " << q.id << " (n=" << f.value.dim
        << ", p=" << f.value.modulus << ")\n";
    return kExitOk;
  }
  for (const auto& v : check.violations) out << describe(v) << '\n';
  out << check.violation_count << " violated axiom instances";
  if (check.violations.size() < check.violation_count) out << " (first " << check.violations.size() << " shown)";
  out << '\n';
  return kExitFailure;
}

struct SearchArgs {
  std::string quandle;
  std::uint32_t p = 2;
  std::size_t n = 2;
  std::string mode = "all";
  std::size_t limit = 0;
  double budget_s = 0;
  bool allow_large = false;
  double bound = 1e12;
  int threads = 1;
  std::string format = "text";
};

int cmd_form_search(Resolver& res, const SearchArgs& a, std::ostream& out) {
  const auto q = res.quandle(a.quandle);
  SearchOptions opts;
  opts.mode = parse_search_mode(a.mode);
  opts.limit = a.limit;
  opts.time_budget = std::chrono::milliseconds(static_cast<long long>(a.budget_s * 1000));
  opts.allow_large = a.allow_large;
  opts.space_bound = a.bound;
  opts.threads = a.threads;
  opts.collect = false;
  json forms = json::array();
  std::size_t index = 0;
  opts.on_form = [&](const BilinearForm& f) {
    ++index;
    if (a.format == "json") {
      json blocks = json::array();
      for (const auto& b : f.data().blocks) {
        json rows = json::array();
        for (std::size_t i = 0; i < b.dim(); ++i) {
          json row = json::array();
          for (std::size_t j = 0; j < b.dim(); ++j) row.push_back(b.at(i, j));
          rows.push_back(row);
        }
        blocks.push_back(rows);
      }
      forms.push_back(blocks);
    } else {
      out << "# form " << index << '\n' << format_form(f.data());
    }
  };
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = search_forms(q.value, a.p, a.n, opts);
  const std::string status = r.complete ? "complete" : (r.timed_out ? "incomplete: time budget exhausted"
                                                                    : "incomplete: limit reached");
  if (a.format == "json") {
    out << json{{"quandle", q.id},           {"p", a.p},
                {"n", a.n},                  {"mode", to_string(opts.mode)},
                {"forms", forms},            {"count", r.emitted},
                {"complete", r.complete},    {"timed_out", r.timed_out},
                {"hit_limit", r.hit_limit},  {"nodes", r.nodes},
                {"space_estimate", r.space_estimate}, {"elapsed_ms", ms_since(t0)}}
               .dump(2)
        << '\n';
  } else {
    out << "# " << r.emitted << " forms found (" << status << "), " << r.nodes << " nodes\n";
  }
  return kExitOk;
}

int cmd_invariant(Resolver& res, const std::string& larg, const std::string& qarg, const std::string& farg,
                  const std::string& engine, int threads, const std::string& format, std::ostream& out) {
  const auto link = res.link(larg);
  const auto q = res.quandle(qarg);
  const auto f = res.form(farg);
  const auto phi = make_form(q.value, f.value);
  const auto choice = parse_engine_choice(engine);
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = compute_checked(link.value, q.value, phi, choice, threads);
  InvariantRecord rec{link.id, q.id, f.id, r.polynomial, r.counting_invariant(), engine, ms_since(t0)};
  write_output(out, to_json(rec), format);
  return kExitOk;
}

int cmd_batch(Resolver& res, std::vector<std::string> links, const std::string& qarg, const std::string& farg,
              const std::string& engine, int threads, const std::string& format, std::ostream& out) {
  const auto q = res.quandle(qarg);
  const auto f = res.form(farg);
  const auto phi = make_form(q.value, f.value);
  const auto choice = parse_engine_choice(engine);
  if (links.empty()) links = res.catalog().list();
  const auto expected = res.catalog().expected(q.id, f.id);

  json records = json::array();
  // polynomial text -> links, in first-seen order
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  json diff = expected ? json::array() : json(nullptr);
  const auto t_all = std::chrono::steady_clock::now();
  for (const auto& name : links) {
    const auto link = res.link(name);
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = compute_checked(link.value, q.value, phi, choice, threads);
    InvariantRecord rec{link.id, q.id, f.id, r.polynomial, r.counting_invariant(), engine, ms_since(t0)};
    records.push_back(to_json(rec));
    const auto text = r.polynomial.to_string();
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == text; });
    if (it == groups.end()) {
      groups.push_back({text, {}});
      it = std::prev(groups.end());
    }
    it->second.push_back(link.id);
    if (expected) {
      const auto want = expected->lookup(link.id);
      if (!want || !(*want == r.polynomial)) {
        diff.push_back({{"link", link.id}, {"expected", want ? want->to_string() : "(none)"}, {"got", text}});
      }
    }
  }
  // Order rows like the expected table where possible.
  std::vector<std::pair<std::string, std::vector<std::string>>> ordered;
  if (expected) {
    for (const auto& [poly, _] : expected->rows) {
      const auto text = poly.to_string();
      auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == text; });
      if (it != groups.end()) {
        ordered.push_back(std::move(*it));
        groups.erase(it);
      }
    }
  }
  for (auto& g : groups) ordered.push_back(std::move(g));
  json table = json::array();
  for (const auto& [poly, ls] : ordered) table.push_back({{"polynomial", poly}, {"links", ls}});

  const json doc{{"quandle", q.id}, {"form", f.id},   {"engine", engine},
                 {"results", records}, {"table", table}, {"diff", diff},
                 {"elapsed_ms", ms_since(t_all)}};
  write_output(out, doc, format);
  return diff.is_array() && !diff.empty() ? kExitFailure : kExitOk;
}

int cmd_catalog_list(Resolver& res, const std::string& kind, std::ostream& out) {
  std::vector<std::string> names;
  if (kind == "links") {
    names = res.catalog().list();
  } else if (kind == "quandles") {
    names = res.catalog().quandle_ids();
  } else if (kind == "forms") {
    names = res.catalog().form_ids();
  } else {
    throw InputError("unknown catalog kind `" + kind + "`");
  }
  for (const auto& n : names) out << n << '\n';
  return kExitOk;
}

int cmd_import_pd(const std::string& pd, const std::string& signs, const std::string& name,
                  const std::string& orientation, std::ostream& out, std::ostream& err) {
  std::optional<std::vector<Sign>> s;
  if (!signs.empty()) s = parse_signs(signs);
  std::vector<std::size_t> overridden;
  auto d = import_pd(pd, s, &overridden);
  for (auto i : overridden) {
    err << "warning: explicit sign of crossing " << i + 1 << " differs from the sign implied by the PD code\n";
  }
  d.name = name;
  d.orientation_note = orientation;
  require_valid(d);
  out << format_diagram(d);
  return kExitOk;
}

int cmd_render(const std::string& path, std::ostream& out) {
  json doc;
  try {
    if (path.empty() || path == "-") {
      doc = json::parse(std::cin);
    } else {
      std::ifstream in(path);
      if (!in) throw InputError("cannot open " + path);
      doc = json::parse(in);
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  try {
    out << render_json_as_text(doc);
  } catch (const json::exception& e) {
    throw InputError(std::string("unrecognized JSON document: ") + e.what());
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quandle counting invariants and bilinear bead-coloring enhancements"};
  app.require_subcommand(1);
  std::string catalog_root;
  app.add_option("--catalog", catalog_root, "Catalog directory (default: $BEADLINK_CATALOG or the bundled catalog)");

  const std::vector<std::string> formats{"text", "json"};
  const std::vector<std::string> engines{"oracle", "propagate", "both"};

  auto* qcheck = app.add_subcommand("quandle-check", "Validate a quandle table against the quandle axioms");
  std::string qc_arg;
  qcheck->add_option("quandle", qc_arg, "Quandle file or catalog id")->required();

  auto* fcheck = app.add_subcommand("form-check", "Validate an X-bilinear form against a quandle");
  std::string fc_q, fc_f;
  std::size_t fc_cap = 20;
  bool fc_ref = false;
  int fc_threads = 0;
  fcheck->add_option("quandle", fc_q, "Quandle file or catalog id")->required();
  fcheck->add_option("form", fc_f, "Form file or catalog id")->required();
  fcheck->add_option("--cap", fc_cap, "Maximum number of witnesses to print");
  fcheck->add_flag("--reference", fc_ref, "Use the serial brute-force validator");
  fcheck->add_option("--threads", fc_threads, "Worker threads (0 = all)")->check(CLI::NonNegativeNumber);

  auto* search = app.add_subcommand("form-search", "Search for X-bilinear forms on a quandle");
  SearchArgs sa;
  search->add_option("--quandle", sa.quandle, "Quandle file or catalog id")->required();
  search->add_option("--p", sa.p, "Prime modulus");
  search->add_option("--n", sa.n, "Dimension of V")->check(CLI::PositiveNumber);
  search->add_option("--mode", sa.mode, "all | alternating-only | constant-diagonal")
      ->check(CLI::IsMember({"all", "alternating-only", "constant-diagonal"}));
  search->add_option("--limit", sa.limit, "Stop after this many forms (0 = no limit)");
  search->add_option("--budget", sa.budget_s, "Time budget in seconds (0 = none)")->check(CLI::NonNegativeNumber);
  search->add_option("--bound", sa.bound, "Refuse searches whose estimated space exceeds this")
      ->check(CLI::PositiveNumber);
  search->add_flag("--allow-large", sa.allow_large, "Run even when the space estimate exceeds the bound");
  search->add_option("--threads", sa.threads, "Worker threads over top-level branches (0 = all)")
      ->check(CLI::NonNegativeNumber);
  search->add_option("--format", sa.format, "text | json")->check(CLI::IsMember(formats));

  auto* inv = app.add_subcommand("invariant", "Compute the enhanced polynomial for one link");
  std::string inv_link, inv_q, inv_f, inv_engine = "propagate", inv_format = "text";
  int inv_threads = 0;
  inv->add_option("--link", inv_link, "Diagram file or catalog link name")->required();
  inv->add_option("--quandle", inv_q, "Quandle file or catalog id")->required();
  inv->add_option("--form", inv_f, "Form file or catalog id")->required();
  inv->add_option("--engine", inv_engine, "oracle | propagate | both")->check(CLI::IsMember(engines));
  inv->add_option("--threads", inv_threads, "Worker threads (0 = all)")->check(CLI::NonNegativeNumber);
  inv->add_option("--format", inv_format, "text | json")->check(CLI::IsMember(formats));

  auto* batch = app.add_subcommand("batch", "Compute a table over catalog links and diff it against expectations");
  std::vector<std::string> b_links;
  std::string b_q, b_f, b_engine = "propagate", b_format = "text";
  int b_threads = 0;
  batch->add_option("--links", b_links, "Links to include (default: whole catalog)")->delimiter(',');
  batch->add_option("--quandle", b_q, "Quandle file or catalog id")->required();
  batch->add_option("--form", b_f, "Form file or catalog id")->required();
  batch->add_option("--engine", b_engine, "oracle | propagate | both")->check(CLI::IsMember(engines));
  batch->add_option("--threads", b_threads, "Worker threads (0 = all)")->check(CLI::NonNegativeNumber);
  batch->add_option("--format", b_format, "text | json")->check(CLI::IsMember(formats));

  auto* list = app.add_subcommand("catalog-list", "List catalog entries");
  std::string list_kind = "links";
  list->add_option("--kind", list_kind, "links | quandles | forms")
      ->check(CLI::IsMember({"links", "quandles", "forms"}));

  auto* imp = app.add_subcommand("import-pd", "Convert a PD code to the diagram file format");
  std::string imp_pd, imp_signs, imp_name = "unnamed", imp_orient;
  imp->add_option("pd", imp_pd, "PD string, e.g. \"X[4,1,3,2] X[2,3,1,4]\"")->required();
  imp->add_option("--signs", imp_signs, "Explicit crossing signs, e.g. ++-");
  imp->add_option("--name", imp_name, "Link name");
  imp->add_option("--orientation", imp_orient, "Orientation note to record");

  auto* render = app.add_subcommand("render", "Render JSON output (file or stdin) as text");
  std::string render_path;
  render->add_option("file", render_path, "JSON file ('-' or omitted for stdin)");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("beadlink");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  Resolver res(catalog_root);
  try {
    if (*qcheck) return cmd_quandle_check(res, qc_arg, out);
    if (*fcheck) return cmd_form_check(res, fc_q, fc_f, fc_cap, fc_ref, fc_threads, out);
    if (*search) return cmd_form_search(res, sa, out);
    if (*inv) return cmd_invariant(res, inv_link, inv_q, inv_f, inv_engine, inv_threads, inv_format, out);
    if (*batch) return cmd_batch(res, b_links, b_q, b_f, b_engine, b_threads, b_format, out);
    if (*list) return cmd_catalog_list(res, list_kind, out);
    if (*imp) return cmd_import_pd(imp_pd, imp_signs, imp_name, imp_orient, out, err);
    if (*render) return cmd_render(render_path, out);
  } catch (const EngineDivergence& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const Cancelled& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitInputError;
}

}  // namespace beadlink
