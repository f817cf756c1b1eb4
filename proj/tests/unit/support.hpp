#pragma once

#include <filesystem>
#include <string>

#include "beadlink/catalog.hpp"
#include "beadlink/diagram.hpp"
#include "beadlink/field.hpp"
#include "beadlink/forms.hpp"
#include "beadlink/quandle.hpp"

namespace test {

inline std::filesystem::path fixture(const std::string& rel) { return std::filesystem::path(BEADLINK_FIXTURE_DIR) / rel; }

inline beadlink::Catalog catalog() { return beadlink::Catalog(BEADLINK_TEST_CATALOG); }

inline beadlink::LinkDiagram diagram(const std::string& name) {
  return beadlink::load_diagram(fixture("diagrams/" + name + ".diagram"));
}

inline beadlink::Matrix swap_matrix() { return beadlink::Matrix(beadlink::PrimeField(2), 2, {0, 1, 1, 0}); }

inline beadlink::Vec vec2(beadlink::Scalar a, beadlink::Scalar b) { return beadlink::Vec(beadlink::PrimeField(2), {a, b}); }

}  // namespace test
