#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "skt/forms.hpp"
#include "skt/hermitian.hpp"

namespace skt {

/// A parsed algebra document. `expected_c` is the optional annotation used by
/// catalog files to record the known torsion form.
struct AlgebraDocument {
  HermitianTriple triple;
  std::optional<AlternatingForm> expected_c;
};

struct ParseOptions {
  /// Throw ValidationError unless all four Hermitian axioms hold. When false
  /// the flags are still computed and stored on the triple.
  bool require_valid = true;
};

/// Parses the JSON algebra format (indices 1-based, rationals as strings).
/// Throws InputError for syntax and schema problems and ValidationError for a
/// failed axiom.
AlgebraDocument parse_document(std::string_view text, const ParseOptions& options = {});
HermitianTriple parse_algebra(std::string_view text, const ParseOptions& options = {});
HermitianTriple read_algebra_file(const std::filesystem::path& path, const ParseOptions& options = {});

/// Canonical text: brackets sorted by (i, j), targets by k, J as pairs when
/// possible. parse_algebra(serialize_algebra(t)) == t.
std::string serialize_algebra(const HermitianTriple& triple);
void write_algebra_file(const std::filesystem::path& path, const HermitianTriple& triple);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace skt
