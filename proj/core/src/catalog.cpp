#include "skt/catalog.hpp"

#include "skt/algebra_file.hpp"
#include "skt/bismut.hpp"
#include "skt/errors.hpp"

namespace skt::catalog {

namespace {

std::string citation_of(const HermitianTriple& t) {
  std::string out;
  for (const auto& [k, v] : t.provenance) {
    if (!out.empty()) out += "; ";
    out += k + ": " + v;
  }
  return out;
}

std::vector<CatalogEntry> load() {
  std::vector<CatalogEntry> out;
  for (const auto& [name, text] : detail::catalog_sources()) {
    AlgebraDocument doc = parse_document(text);
    if (!doc.expected_c) throw InternalInconsistency("catalog entry " + std::string(name) + " has no expected_c");
    CatalogEntry e;
    e.name = std::string(name);
    e.triple = std::move(doc.triple);
    e.expected_c = std::move(*doc.expected_c);
    e.dim = e.triple.dim();
    e.abelian_J = is_abelian_J(e.triple.algebra, e.triple.J).abelian;
    e.citation = citation_of(e.triple);
    out.push_back(std::move(e));
  }
  return out;
}

void check(const CatalogEntry& e) {
  const SktVerdict v = is_skt(e.triple);
  if (v.c != e.expected_c)
    throw InternalInconsistency("catalog entry " + e.name + ": computed c = " + v.c.str() + ", stored " +
                                e.expected_c.str());
  if (!v.is_skt) throw InternalInconsistency("catalog entry " + e.name + " is not SKT: dc = " + v.dc.str());
}

}  // namespace

const std::vector<CatalogEntry>& entries() {
  static const std::vector<CatalogEntry> all = [] {
    auto loaded = load();
    for (const auto& e : loaded) check(e);
    return loaded;
  }();
  return all;
}

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : detail::catalog_sources()) out.emplace_back(name);
  return out;
}

const CatalogEntry& get(std::string_view name) {
  for (const auto& e : entries())
    if (e.name == name) return e;
  std::string avail;
  for (const auto& n : names()) avail += (avail.empty() ? "" : ", ") + n;
  throw InputError("unknown catalog entry '" + std::string(name) + "'; available: " + avail);
}

std::vector<CatalogRow> list() {
  std::vector<CatalogRow> rows;
  for (const auto& e : entries()) {
    const auto step = nilpotency_step(e.triple.algebra);
    rows.push_back({e.name, e.dim, step ? *step : -1, e.abelian_J, is_skt(e.triple).is_skt});
  }
  return rows;
}

void self_test() {
  for (const auto& e : load()) check(e);
}

}  // namespace skt::catalog
