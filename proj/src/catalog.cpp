#include "beadlink/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "beadlink/error.hpp"

#ifndef BEADLINK_CATALOG_DIR
#define BEADLINK_CATALOG_DIR "catalog"
#endif

namespace beadlink {

std::optional<InvariantPolynomial> ExpectedTable::lookup(const std::string& link) const {
  for (const auto& [poly, links] : rows) {
    if (std::find(links.begin(), links.end(), link) != links.end()) return poly;
  }
  return std::nullopt;
}

bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      const auto na = std::stoull(a.substr(i, ie - i)), nb = std::stoull(b.substr(j, je - j));
      if (na != nb) return na < nb;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

Catalog::Catalog(std::filesystem::path root) : root_(std::move(root)) {
  if (!std::filesystem::is_directory(root_)) throw InputError("catalog directory not found: " + root_.string());
}

std::filesystem::path Catalog::default_root() {
  if (const char* env = std::getenv("BEADLINK_CATALOG"); env && *env) return env;
  return BEADLINK_CATALOG_DIR;
}

std::vector<std::string> Catalog::ids(const std::string& dir, const std::string& ext) const {
  std::vector<std::string> out;
  const auto path = root_ / dir;
  if (!std::filesystem::is_directory(path)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ext) out.push_back(entry.path().stem().string());
  }
  std::sort(out.begin(), out.end(), natural_less);
  return out;
}

std::vector<std::string> Catalog::list() const { return ids("links", ".diagram"); }
std::vector<std::string> Catalog::quandle_ids() const { return ids("quandles", ".quandle"); }
std::vector<std::string> Catalog::form_ids() const { return ids("forms", ".form"); }

CatalogEntry Catalog::load(const std::string& name) const {
  const auto path = root_ / "links" / (name + ".diagram");
  if (!std::filesystem::is_regular_file(path)) throw InputError("unknown catalog link `" + name + "`");
  CatalogEntry e;
  e.name = name;
  e.diagram = load_diagram(path);
  e.source_pd = e.diagram.source_pd;
  e.orientation_note = e.diagram.orientation_note;
  for (const auto& t : expected_tables()) {
    if (auto p = t.lookup(name)) e.expected[{t.quandle, t.form}] = *p;
  }
  return e;
}

Quandle Catalog::quandle(const std::string& id) const {
  const auto path = root_ / "quandles" / (id + ".quandle");
  if (!std::filesystem::is_regular_file(path)) throw InputError("unknown catalog quandle `" + id + "`");
  return load_quandle(path);
}

FormData Catalog::form(const std::string& id) const {
  const auto path = root_ / "forms" / (id + ".form");
  if (!std::filesystem::is_regular_file(path)) throw InputError("unknown catalog form `" + id + "`");
  return load_form(path);
}

ExpectedTable parse_expected_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    const auto j = nlohmann::json::parse(in);
    ExpectedTable t;
    t.quandle = j.at("quandle").get<std::string>();
    t.form = j.at("form").get<std::string>();
    for (const auto& row : j.at("rows")) {
      t.rows.emplace_back(InvariantPolynomial::parse(row.at("polynomial").get<std::string>()),
                          row.at("links").get<std::vector<std::string>>());
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::vector<ExpectedTable> Catalog::expected_tables() const {
  std::vector<ExpectedTable> out;
  for (const auto& id : ids("expected", ".json")) out.push_back(parse_expected_table(root_ / "expected" / (id + ".json")));
  return out;
}

std::optional<ExpectedTable> Catalog::expected(const std::string& quandle_id, const std::string& form_id) const {
  for (auto& t : expected_tables()) {
    if (t.quandle == quandle_id && t.form == form_id) return t;
  }
  return std::nullopt;
}

}  // namespace beadlink
