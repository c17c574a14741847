#include "patterns/report.hpp"

#include "json.hpp"

namespace patterns {

std::string render_text(const Report& r) {
  std::string out = "subject: " + r.subject + "\n";
  for (const auto& l : r.laws) {
    out += l.law + "\t" + (l.passed ? "pass" : "FAIL") + "\t" + (l.exhaustive ? "exhaustive" : "sampled") + "\t" +
           std::to_string(l.checked) + (l.note.empty() ? "" : "\t" + l.note) + "\n";
  }
  for (const auto& l : r.laws) {
    if (l.passed || !l.counterexample) continue;
    out += "COUNTEREXAMPLE BEGIN\n";
    out += "law: " + l.law + "\n";
    out += "location: " + l.counterexample->location + "\n";
    for (const auto& [k, v] : l.counterexample->fields) out += k + ": " + v + "\n";
    out += "COUNTEREXAMPLE END\n";
  }
  out += std::string("verdict: ") + (r.passed() ? "pass" : "fail") + "\n";
  return out;
}

std::string render_json(const Report& r) {
  nlohmann::ordered_json j;
  j["subject"] = r.subject;
  j["passed"] = r.passed();
  auto laws = nlohmann::ordered_json::array();
  for (const auto& l : r.laws) {
    nlohmann::ordered_json e;
    e["law"] = l.law;
    e["passed"] = l.passed;
    e["mode"] = l.exhaustive ? "exhaustive" : "sampled";
    e["checked"] = l.checked;
    if (!l.note.empty()) e["note"] = l.note;
    if (l.counterexample) {
      nlohmann::ordered_json c;
      c["location"] = l.counterexample->location;
      for (const auto& [k, v] : l.counterexample->fields) c[k] = v;
      e["counterexample"] = c;
    }
    laws.push_back(e);
  }
  j["laws"] = laws;
  return j.dump(2) + "\n";
}

}  // namespace patterns
