#include "patterns/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "patterns/collapse.hpp"
#include "patterns/resemblance.hpp"
#include "patterns/sigma.hpp"

namespace patterns {

namespace {

// Input the user got wrong: exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// A self-check on our own output failed: exit 3.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(std::string s) {
  auto sp = [](unsigned char c) { return std::isspace(c); };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), sp));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), sp).base(), s.end());
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A representation "(s ; args)" or an ordinal to be represented.
Representation repr_arg(const Dilator& e, const std::string& text) {
  std::string t = trim(text);
  if (!t.empty() && t.front() == '(') return parse_representation(t);
  return repr_of_ordinal(e, parse_ordinal(t));
}

int report_exit(const Report& r, const std::string& format, std::ostream& out) {
  out << (format == "json" ? render_json(r) : render_text(r));
  return r.passed() ? 0 : 1;
}

void self_check(const Leq1Table& t) {
  const auto& u = t.universe();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!t.holds_at(i, i)) throw InternalError("leq1 table is not reflexive at " + render(u[i]));
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (j < i && t.holds_at(i, j)) throw InternalError("leq1 table relates " + render(u[i]) + " down to " + render(u[j]));
      for (std::size_t k = 0; k < u.size(); ++k)
        if (t.holds_at(i, j) && t.holds_at(j, k) && !t.holds_at(i, k))
          throw InternalError("leq1 table is not transitive at " + render(u[i]) + ", " + render(u[j]) + ", " + render(u[k]));
    }
  }
}

PatternStructure structure_for(const Dilator& d, const std::string& universe, const std::string& semantics) {
  auto u = parse_universe(universe);
  bool segment = true;
  for (std::size_t i = 0; i < u.size(); ++i) segment = segment && u[i] == Ordinal::nat(i);
  if (semantics == "exact" || (semantics == "auto" && segment && !u.empty()))
    return PatternStructure::segment(d, u.empty() ? 0 : u.back().to_nat());
  return PatternStructure::relativized(d, u);
}

void print_slice(const Slice& s, std::ostream& out) {
  for (const auto& m : s.members) out << "member\t" << render(m) << "\n";
  for (const auto& m : s.undetermined) out << "undetermined\t" << render(m) << "\n";
}

std::vector<ExtendedBase> extended_list(const std::string& text) {
  std::vector<ExtendedBase> out;
  std::string tok;
  std::stringstream ss(text);
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    auto dots = tok.find("..");
    if (dots != std::string::npos) {
      for (const auto& o : parse_universe(tok)) out.emplace_back(o);
    } else if (!tok.empty()) {
      out.push_back(parse_extended(tok));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<Ordinal> parse_universe(const std::string& text) {
  std::vector<Ordinal> out;
  std::string tok;
  std::stringstream ss(text);
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    auto dots = tok.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_ordinal(tok));
      continue;
    }
    Ordinal lo = parse_ordinal(trim(tok.substr(0, dots)));
    Ordinal hi = parse_ordinal(trim(tok.substr(dots + 2)));
    if (!lo.is_finite() || !hi.is_finite()) throw UsageError("ranges a..b need finite ends: " + tok);
    if (hi.to_nat() - std::min(hi.to_nat(), lo.to_nat()) > 4096) throw UsageError("range too long: " + tok);
    for (auto k = lo.to_nat(); k <= hi.to_nat(); ++k) out.push_back(Ordinal::nat(k));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Patterns of resemblance over dilators"};
  app.name("patterns");
  app.require_subcommand(1);

  std::string dil, format = "text", universe, semantics = "auto";
  int bound = 8;
  std::uint64_t seed = 1;
  std::function<int()> action;

  auto* validate = app.add_subcommand("validate", "Check the pre-dilator laws up to a bound");
  validate->add_option("dilator", dil, "Spec file or builtin expression")->required();
  validate->add_option("--bound", bound)->check(CLI::Range(0, 16));
  validate->add_option("--seed", seed);
  validate->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  validate->callback([&] {
    action = [&] { return report_exit(validate_predilator(load_dilator(dil), bound, seed), format, out); };
  });

  auto* normality = app.add_subcommand("normality", "Check the normality laws up to a bound");
  normality->add_option("dilator", dil)->required();
  normality->add_option("--bound", bound)->check(CLI::Range(0, 16));
  normality->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  normality->callback([&] { action = [&] { return report_exit(validate_normality(load_dilator(dil), bound), format, out); }; });

  int trace_bound = 4;
  auto* trace = app.add_subcommand("trace", "List trace elements (sigma, arity)");
  trace->add_option("dilator", dil)->required();
  trace->add_option("--bound", trace_bound)->check(CLI::Range(0, 16));
  trace->callback([&] {
    action = [&] {
      out << "sigma\tarity\n";
      for (const auto& te : enumerate_trace(load_dilator(dil), trace_bound)) out << render(te.sigma) << "\t" << te.arity << "\n";
      return 0;
    };
  });

  std::string lhs, rhs;
  auto* cmp = app.add_subcommand("compare", "Compare two terms over a common base");
  cmp->add_option("dilator", dil)->required();
  cmp->add_option("lhs", lhs)->required();
  cmp->add_option("rhs", rhs)->required();
  cmp->callback([&] {
    action = [&] {
      auto c = term_compare(load_dilator(dil), parse_term(lhs), parse_term(rhs));
      out << (c < 0 ? "<" : c > 0 ? ">" : "=") << "\n";
      return 0;
    };
  });

  std::string what;
  auto* repr = app.add_subcommand("repr", "Representation of an ordinal, or value of a representation");
  repr->add_option("dilator", dil)->required();
  repr->add_option("input", what, "Ordinal, or (sigma ; args)")->required();
  repr->callback([&] {
    action = [&] {
      Dilator d = load_dilator(dil);
      std::string t = trim(what);
      if (!t.empty() && t.front() == '(')
        out << render(repr_value(d, parse_representation(t))) << "\n";
      else
        out << render(repr_of_ordinal(d, parse_ordinal(t))) << "\n";
      return 0;
    };
  });

  auto* sigma = app.add_subcommand("sigma", "Emit the spec of the normalization of a dilator");
  sigma->add_option("dilator", dil)->required();
  sigma->add_option("--bound", bound)->check(CLI::Range(0, 16));
  sigma->callback([&] {
    action = [&] {
      Dilator d = load_dilator(dil);
      Report r = validate_predilator(d, bound);
      if (!r.passed()) return report_exit(r, "text", out);
      out << to_spec(sigma_dilator(d, bound).sigma);
      return 0;
    };
  });

  std::string leq_format = "tsv";
  bool criterion = false;
  auto* leq1 = app.add_subcommand("leq1", "Tabulate <=_1 on a finite universe");
  leq1->add_option("--dilator", dil, "Use 'none' for the pure language")->required();
  leq1->add_option("--universe", universe, "e.g. 0..12 or 0,1,w,w + 1")->required();
  leq1->add_option("--semantics", semantics)->check(CLI::IsMember({"auto", "exact", "relativized"}));
  leq1->add_option("--format", leq_format)->check(CLI::IsMember({"tsv", "dot"}));
  leq1->add_flag("--criterion", criterion, "Forward-only transfer of representation atoms");
  leq1->callback([&] {
    action = [&] {
      auto s = structure_for(load_dilator(dil), universe, semantics);
      Leq1Table t = criterion ? leq1_criterion(s) : leq1_table(s);
      self_check(t);
      out << (leq_format == "dot" ? render_dot(t) : render_tsv(t));
      return 0;
    };
  });

  std::string gamma;
  auto* club = app.add_subcommand("club", "Slice of the club determined by gamma");
  club->add_option("--dilator", dil)->required();
  club->add_option("--universe", universe)->required();
  club->add_option("--gamma", gamma, "Ordinal or (sigma ; args)")->required();
  club->add_option("--semantics", semantics)->check(CLI::IsMember({"auto", "exact", "relativized"}));
  club->callback([&] {
    action = [&] {
      Dilator e = load_dilator(dil);
      Leq1Table t = leq1_table(structure_for(e, universe, semantics));
      Representation g = repr_arg(e, gamma);
      out << "gamma\t" << render(g) << "\n";
      out << "star\t" << render(star(e, g)) << "\n";
      print_slice(club_slice(t, g), out);
      return 0;
    };
  });

  std::string eta = "0", window;
  int max_args = 2;
  auto* fd = app.add_subcommand("fd", "Intersection of clubs over DD(eta)");
  fd->add_option("--dilator", dil)->required();
  fd->add_option("--universe", universe)->required();
  fd->add_option("--gamma", gamma)->required();
  fd->add_option("--eta", eta);
  fd->add_option("--window", window, "Stand-in for Omega; defaults to the largest universe element + 1");
  fd->add_option("--max-args", max_args)->check(CLI::Range(0, 3));
  fd->add_option("--semantics", semantics)->check(CLI::IsMember({"auto", "exact", "relativized"}));
  fd->callback([&] {
    action = [&] {
      Dilator e = load_dilator(dil);
      Leq1Table t = leq1_table(structure_for(e, universe, semantics));
      Representation g = repr_arg(e, gamma);
      Ordinal w = window.empty() ? (t.universe().empty() ? Ordinal() : succ(t.universe().back())) : parse_ordinal(window);
      FdSlice f = fd_slice(t, g, parse_ordinal(eta), w, max_args);
      out << "gamma\t" << render(g) << "\n";
      for (const auto& b : f.index) out << "index\t" << render(b) << "\n";
      print_slice(f.slice, out);
      return 0;
    };
  });

  auto* collapse = app.add_subcommand("collapse", "Build or check collapse tables");
  collapse->require_subcommand(1);
  std::string alpha, mode = "normal", oracle_kind = "table", range;
  std::uint64_t trunc = 8;
  bool audit = false;
  auto* build = collapse->add_subcommand("build", "Emit a collapse table as TSV");
  build->add_option("--dilator", dil)->required();
  build->add_option("--alpha", alpha, "Base (lambda in normal mode)")->required();
  build->add_option("--mode", mode)->check(CLI::IsMember({"normal", "oracle"}));
  build->add_option("--truncation", trunc, "Domain: terms with arguments below this")->check(CLI::Range(0, 64));
  build->add_option("--oracle", oracle_kind)->check(CLI::IsMember({"table", "star", "stub-true", "stub-false"}));
  build->add_option("--universe", universe, "Universe of the table oracle");
  build->add_option("--range", range, "Search range for delta");
  build->add_flag("--audit", audit, "Re-scan for minimality and the support chain");
  build->callback([&] {
    action = [&]() -> int {
      Dilator d = load_dilator(dil);
      ExtendedBase a = parse_extended(alpha);
      auto domain = finite_truncation(d, a, trunc);
      if (mode == "normal") {
        CollapseTable t = normal_collapse(d, a, domain);
        CollapseReport r = validate_collapse(d, t);
        if (!r.valid()) throw InternalError("normal collapse fails validation:\n" + render_text(r));
        out << render_tsv(t);
        return 0;
      }
      std::unique_ptr<ResemblanceOracle> oracle;
      std::optional<std::vector<ExtendedBase>> rng;
      if (!range.empty()) rng = extended_list(range);
      if (oracle_kind == "table") {
        if (universe.empty()) throw UsageError("--oracle table needs --universe");
        Dilator s = Dilator::sigma(d);
        auto table = std::make_unique<TableOracle>(d, leq1_table(PatternStructure::relativized(s, parse_universe(universe))));
        if (!rng) rng = table->answerable_range(a, domain);
        oracle = std::move(table);
      } else if (oracle_kind == "star") {
        oracle = star_fixture(d);
      } else {
        oracle = std::make_unique<StubOracle>(oracle_kind == "stub-true");
      }
      if (!rng) throw UsageError("--oracle " + oracle_kind + " needs --range");
      CollapseTable t = build_collapse(d, a, *oracle, domain, rng);
      out << render_tsv(t);
      if (!audit) return 0;
      Report r = audit_build(d, t, *oracle, *rng);
      if (!r.passed()) throw InternalError("built table fails its audit:\n" + render_text(r));
      out << render_text(r);
      return 0;
    };
  });
  std::string file;
  auto* check = collapse->add_subcommand("check", "Validate conditions (a) and (b) of a TSV table");
  check->add_option("file", file)->required();
  check->add_option("--dilator", dil, "Defaults to identity")->default_val("identity");
  check->callback([&] {
    action = [&] {
      Dilator d = load_dilator(dil);
      CollapseReport r = validate_collapse(d, parse_collapse_tsv(d, read_file(file)));
      out << render_text(r);
      return r.valid() ? 0 : 1;
    };
  });

  std::size_t samples = 1000;
  auto* fund = app.add_subcommand("fundlemma", "Sampled battery for clauses (a)-(g)");
  fund->add_option("--dilator", dil)->default_val("sigma(const(1))");
  fund->add_option("--samples", samples)->check(CLI::Range(1, 1000000));
  fund->add_option("--seed", seed);
  fund->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  fund->callback([&] {
    action = [&] { return report_exit(check_fund_basic(load_dilator(dil), samples, seed), format, out); };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (!action) return 2;
  try {
    return action();
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err << "parse error at " << e.position() << ": " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DilatorError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const OracleError& e) {
    err << "oracle error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace patterns
