#pragma once

// Shipped fixtures. Layout under the catalog root:
//   links/<name>.diagram   quandles/<id>.quandle   forms/<id>.form
//   expected/*.json        (one table per quandle/form pair)

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "beadlink/diagram.hpp"
#include "beadlink/forms.hpp"
#include "beadlink/invariant.hpp"
#include "beadlink/quandle.hpp"

namespace beadlink {

struct ExpectedTable {
  std::string quandle;
  std::string form;
  /// Rows in file order: polynomial and the links sharing it.
  std::vector<std::pair<InvariantPolynomial, std::vector<std::string>>> rows;

  std::optional<InvariantPolynomial> lookup(const std::string& link) const;
};

struct CatalogEntry {
  std::string name;
  LinkDiagram diagram;
  std::string source_pd;
  std::string orientation_note;
  /// Expected polynomial per (quandle id, form id).
  std::map<std::pair<std::string, std::string>, InvariantPolynomial> expected;
};

class Catalog {
 public:
  explicit Catalog(std::filesystem::path root);

  /// $BEADLINK_CATALOG if set, otherwise the catalog in the source tree.
  static std::filesystem::path default_root();

  const std::filesystem::path& root() const noexcept { return root_; }

  /// Link names in natural order (L2a1, L4a1, ..., L7n2).
  std::vector<std::string> list() const;
  CatalogEntry load(const std::string& name) const;

  std::vector<std::string> quandle_ids() const;
  std::vector<std::string> form_ids() const;
  Quandle quandle(const std::string& id) const;
  FormData form(const std::string& id) const;

  std::vector<ExpectedTable> expected_tables() const;
  std::optional<ExpectedTable> expected(const std::string& quandle_id, const std::string& form_id) const;

 private:
  std::vector<std::string> ids(const std::string& dir, const std::string& ext) const;

  std::filesystem::path root_;
};

/// Natural ordering: digit runs compare numerically.
bool natural_less(const std::string& a, const std::string& b);

ExpectedTable parse_expected_table(const std::filesystem::path& path);

}  // namespace beadlink
