#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skt/forms.hpp"
#include "skt/hermitian.hpp"

namespace skt {

struct CatalogEntry {
  std::string name;
  HermitianTriple triple;
  AlternatingForm expected_c;
  bool abelian_J = false;
  int dim = 0;
  std::string citation;
};

struct CatalogRow {
  std::string name;
  int dim = 0;
  int step = 0;
  bool abelian_J = false;
  bool is_skt = false;
};

namespace catalog {

/// Entry names in catalog order.
std::vector<std::string> names();

/// Throws InputError naming every available entry when `name` is unknown.
/// The first call loads all entries and runs the self-test.
const CatalogEntry& get(std::string_view name);
const std::vector<CatalogEntry>& entries();

std::vector<CatalogRow> list();

/// Recomputes c and the SKT verdict of every entry; throws
/// InternalInconsistency on any mismatch with the stored data.
void self_test();

}  // namespace catalog

namespace detail {
/// (name, JSON text) of every shipped entry; generated at build time.
const std::vector<std::pair<std::string_view, std::string_view>>& catalog_sources();
}  // namespace detail

}  // namespace skt
