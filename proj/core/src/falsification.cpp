#include "skt/falsification.hpp"

#include <iostream>
#include <mutex>

namespace skt::falsification {

namespace {
std::mutex& mutex() {
  static std::mutex m;
  return m;
}
std::vector<std::string>& log() {
  static std::vector<std::string> events;
  return events;
}
}  // namespace

void record(const std::string& theorem, const std::string& context) {
  std::lock_guard lock(mutex());
  const std::string line = "FALSIFICATION [" + theorem + "] " + context;
  std::cerr << "\n*** " << line << " ***\n";
  log().push_back(line);
}

int count() {
  std::lock_guard lock(mutex());
  return static_cast<int>(log().size());
}

std::vector<std::string> events() {
  std::lock_guard lock(mutex());
  return log();
}

void reset() {
  std::lock_guard lock(mutex());
  log().clear();
}

}  // namespace skt::falsification
