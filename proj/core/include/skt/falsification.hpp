#pragma once

#include <string>
#include <vector>

namespace skt::falsification {

/// Records a failed theorem-level invariant. Every event is written to
/// stderr immediately, with the full context supplied by the caller.
void record(const std::string& theorem, const std::string& context);

/// Events recorded since process start (or the last reset).
int count();
std::vector<std::string> events();
void reset();

}  // namespace skt::falsification
