#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace patterns {

// A located witness that some law fails. Fields are ordered key/value pairs
// so the text rendering stays deterministic.
struct Counterexample {
  std::string location;
  std::vector<std::pair<std::string, std::string>> fields;
};

struct LawResult {
  std::string law;
  bool passed = true;
  bool exhaustive = true;
  std::size_t checked = 0;
  std::optional<Counterexample> counterexample;
  std::string note;
};

struct Report {
  std::string subject;
  std::vector<LawResult> laws;

  bool passed() const {
    for (const auto& l : laws)
      if (!l.passed) return false;
    return true;
  }
  const LawResult* find(const std::string& law) const {
    for (const auto& l : laws)
      if (l.law == law) return &l;
    return nullptr;
  }
};

// One line per law, followed by a COUNTEREXAMPLE block for each failure.
std::string render_text(const Report& r);
std::string render_json(const Report& r);

}  // namespace patterns
