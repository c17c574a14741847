#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "patterns/dilator.hpp"

namespace patterns {

using nlohmann::json;

namespace {

json table_fields(const FiniteTable& t) {
  json j = json::object();
  j["bound"] = t.bound;
  json values = json::array();
  for (auto v : t.values) values.push_back(render(Ordinal::nat(v)));
  j["values"] = values;
  json cof = json::object();
  for (std::size_t n = 0; n < t.cofaces.size(); ++n)
    for (std::size_t i = 0; i < t.cofaces[n].size(); ++i) {
      json row = json::array();
      for (auto v : t.cofaces[n][i]) row.push_back(render(Ordinal::nat(v)));
      cof[std::to_string(n) + "," + std::to_string(i)] = row;
    }
  j["cofaces"] = cof;
  json sup = json::object();
  for (std::size_t n = 0; n < t.supports.size(); ++n)
    for (std::size_t s = 0; s < t.supports[n].size(); ++s) sup[std::to_string(n) + "," + std::to_string(s)] = t.supports[n][s];
  j["supports"] = sup;
  if (t.mu) {
    json mu = json::object();
    for (std::size_t n = 0; n < t.mu->size(); ++n) {
      json row = json::array();
      for (auto v : (*t.mu)[n]) row.push_back(render(Ordinal::nat(v)));
      mu[std::to_string(n)] = row;
    }
    j["mu"] = mu;
  }
  return j;
}

json expr_json(const Dilator& d) {
  json j = json::object();
  switch (d.kind()) {
    case Dilator::Kind::table:
      j = table_fields(d.table_data());
      j["op"] = "table";
      break;
    case Dilator::Kind::constant:
      j["op"] = "const";
      j["value"] = render(d.const_value());
      break;
    case Dilator::Kind::identity: j["op"] = "identity"; break;
    case Dilator::Kind::sum:
      j["op"] = "sum";
      j["args"] = json::array({expr_json(d.child(0)), expr_json(d.child(1))});
      break;
    case Dilator::Kind::sigma:
      j["op"] = "sigma";
      j["args"] = json::array({expr_json(d.child(0))});
      break;
  }
  return j;
}

[[noreturn]] void bad(const std::string& m) { throw DilatorError("dilator spec: " + m); }

std::uint64_t finite_ordinal(const json& v, const std::string& where) {
  if (!v.is_string()) bad(where + " must be an ordinal string");
  Ordinal o = parse_ordinal(v.get<std::string>());
  if (!o.is_finite()) bad(where + " must be finite in a table");
  return o.to_nat();
}

std::pair<std::size_t, std::size_t> split_key(const std::string& key) {
  auto comma = key.find(',');
  if (comma == std::string::npos) bad("key \"" + key + "\" must have the form \"a,b\"");
  try {
    std::size_t used = 0;
    auto a = std::stoul(key.substr(0, comma), &used);
    if (used != comma) bad("bad key \"" + key + "\"");
    auto b = std::stoul(key.substr(comma + 1), &used);
    if (used != key.size() - comma - 1) bad("bad key \"" + key + "\"");
    return {a, b};
  } catch (const std::logic_error&) {
    bad("bad key \"" + key + "\"");
  }
}

FiniteTable table_from(const json& j) {
  FiniteTable t;
  if (!j.contains("bound") || !j["bound"].is_number_integer()) bad("table needs an integer bound");
  t.bound = j["bound"].get<int>();
  if (t.bound < 0 || t.bound > 64) bad("bound out of range");
  auto N = static_cast<std::size_t>(t.bound);
  if (!j.contains("values") || !j["values"].is_array()) bad("table needs values");
  for (const auto& v : j["values"]) t.values.push_back(finite_ordinal(v, "values entry"));
  if (t.values.size() != N + 1) bad("values must list D(0..bound)");
  t.cofaces.resize(N);
  for (std::size_t n = 0; n < N; ++n) t.cofaces[n].resize(n + 1);
  if (!j.contains("cofaces") || !j["cofaces"].is_object()) bad("table needs cofaces");
  for (const auto& [key, row] : j["cofaces"].items()) {
    auto [n, i] = split_key(key);
    if (n >= N || i > n) bad("coface key \"" + key + "\" out of range");
    if (!row.is_array()) bad("coface row must be a list");
    for (const auto& v : row) t.cofaces[n][i].push_back(finite_ordinal(v, "coface entry"));
  }
  t.supports.resize(N + 1);
  for (std::size_t n = 0; n <= N; ++n) t.supports[n].resize(t.values[n]);
  if (!j.contains("supports") || !j["supports"].is_object()) bad("table needs supports");
  std::size_t seen = 0;
  for (const auto& [key, row] : j["supports"].items()) {
    auto [n, s] = split_key(key);
    if (n > N || s >= t.values[n]) bad("support key \"" + key + "\" out of range");
    if (!row.is_array()) bad("support entry must be a list");
    for (const auto& v : row) {
      if (!v.is_number_integer()) bad("support indices must be integers");
      t.supports[n][s].push_back(v.get<int>());
    }
    ++seen;
  }
  std::size_t total = 0;
  for (auto v : t.values) total += v;
  if (seen != total) bad("supports must list every element of every D(n)");
  if (j.contains("mu")) {
    t.mu.emplace(N + 1);
    for (const auto& [key, row] : j["mu"].items()) {
      std::size_t n = 0;
      try {
        n = std::stoul(key);
      } catch (const std::logic_error&) {
        bad("bad mu key \"" + key + "\"");
      }
      if (n > N || std::to_string(n) != key) bad("mu key \"" + key + "\" out of range");
      for (const auto& v : row) (*t.mu)[n].push_back(finite_ordinal(v, "mu entry"));
    }
  }
  return t;
}

Dilator expr_from(const json& j) {
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) bad("expression needs an op");
  auto op = j["op"].get<std::string>();
  auto args = [&](std::size_t n) {
    if (!j.contains("args") || !j["args"].is_array() || j["args"].size() != n)
      bad("op " + op + " takes " + std::to_string(n) + " args");
    return j["args"];
  };
  if (op == "identity") return Dilator::identity();
  if (op == "const") {
    if (!j.contains("value") || !j["value"].is_string()) bad("const needs a value");
    return Dilator::constant(parse_ordinal(j["value"].get<std::string>()));
  }
  if (op == "sum") {
    auto a = args(2);
    return Dilator::sum(expr_from(a[0]), expr_from(a[1]));
  }
  if (op == "sigma") return Dilator::sigma(expr_from(args(1)[0]));
  if (op == "table") return Dilator::table(table_from(j));
  bad("unknown op \"" + op + "\"");
}

}  // namespace

std::string to_spec(const Dilator& d) {
  json j;
  if (d.kind() == Dilator::Kind::table) {
    j = table_fields(d.table_data());
    j["kind"] = "table";
  } else {
    j["kind"] = "combinator";
    j["expr"] = expr_json(d);
  }
  return j.dump(2) + "\n";
}

Dilator parse_spec(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) bad("missing kind");
  auto kind = j["kind"].get<std::string>();
  if (kind == "table") return Dilator::table(table_from(j));
  if (kind == "combinator") {
    if (!j.contains("expr")) bad("combinator needs expr");
    return expr_from(j["expr"]);
  }
  bad("unknown kind \"" + kind + "\"");
}

namespace {

class BuiltinParser {
 public:
  explicit BuiltinParser(std::string_view s) : s_(s) {}

  Dilator expr() {
    ws();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::string name(s_.substr(start, i_ - start));
    if (name == "identity" || name == "id") return Dilator::identity();
    if (name == "none") return Dilator::constant(Ordinal());
    if (name == "const") {
      open();
      std::size_t depth = 0, j = i_;
      while (j < s_.size() && !(depth == 0 && s_[j] == ')')) {
        if (s_[j] == '(') ++depth;
        if (s_[j] == ')') --depth;
        ++j;
      }
      if (j == s_.size()) throw ParseError("expected ')'", j);
      Ordinal nu;
      try {
        nu = parse_ordinal(s_.substr(i_, j - i_));
      } catch (const ParseError& e) {
        throw ParseError("bad constant", i_ + e.position());
      }
      i_ = j + 1;
      return Dilator::constant(nu);
    }
    if (name == "sum") {
      open();
      Dilator a = expr();
      expect(',');
      Dilator b = expr();
      expect(')');
      return Dilator::sum(a, b);
    }
    if (name == "sigma") {
      open();
      Dilator a = expr();
      expect(')');
      return Dilator::sigma(a);
    }
    throw ParseError("unknown dilator \"" + name + "\"", start);
  }

  void end() {
    ws();
    if (i_ != s_.size()) throw ParseError("trailing input", i_);
  }

 private:
  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  void open() { expect('('); }
  void expect(char c) {
    ws();
    if (i_ >= s_.size() || s_[i_] != c) throw ParseError(std::string("expected '") + c + "'", i_);
    ++i_;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

Dilator parse_builtin(std::string_view text) {
  BuiltinParser p(text);
  Dilator d = p.expr();
  p.end();
  return d;
}

Dilator load_dilator(const std::string& arg) {
  std::ifstream in(arg);
  if (in) {
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
  }
  return parse_builtin(arg);
}

}  // namespace patterns
