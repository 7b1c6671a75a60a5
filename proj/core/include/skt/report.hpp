#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "skt/catalog.hpp"
#include "skt/compose.hpp"
#include "skt/decomp.hpp"
#include "skt/search.hpp"

namespace skt {

/// text: indented key/value listing with aligned tables.
/// structured: one JSON object (keys in a fixed order, trailing newline).
enum class ReportFormat { text, structured };

/// Accepts "text" and "structured"; throws InputError otherwise.
ReportFormat parse_report_format(std::string_view name);

struct Report {
  std::string body;
  bool positive = true;  // false for a negative verdict
};

/// Validity flags, step, center, derived algebra, v + z split, c, dc, the
/// abelian-J flag and the structural checks. Accepts invalid triples (the
/// report then stops after the validity section, positive = false).
Report verify_report(const HermitianTriple& triple, ReportFormat format);

Report compose_report(const HermitianTriple& composed, const CompositionSpec& spec,
                      const IrreducibilityCertificate& certificate, ReportFormat format);

Report iterate_report(const HermitianTriple& result, int target_dim, ReportFormat format);

/// positive = every invariant holds.
Report split_report(const HermitianTriple& triple, const Codim2Data& data, const InvariantReport& invariants,
                    ReportFormat format);

/// positive = converged.
Report search_report(const HermitianTriple& triple, const SearchResult& result, ReportFormat format);

Report catalog_list_report(const std::vector<CatalogRow>& rows, ReportFormat format);

}  // namespace skt
