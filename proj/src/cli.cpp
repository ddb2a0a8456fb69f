#include "jordan/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "jordan/algebra.hpp"
#include "jordan/error.hpp"
#include "jordan/io.hpp"
#include "jordan/maps.hpp"
#include "jordan/peirce.hpp"
#include "jordan/search.hpp"

namespace jordan::cli {

namespace {

class Reporter {
 public:
  Reporter(std::ostream& out, RunReport& report) : out_(out), report_(report) {}

  void info(std::string_view key, std::string_view value) { out_ << key << " = " << value << "\n"; }
  void info(std::string_view key, bool value) { info(key, std::string_view(value ? "true" : "false")); }
  void info(std::string_view key, const char* value) { info(key, std::string_view(value)); }
  void info(std::string_view key, const std::string& value) { info(key, std::string_view(value)); }
  void info(std::string_view key, std::size_t value) { info(key, std::to_string(value)); }

  void verdict(std::string check, bool pass, std::string witness = {}) {
    out_ << (pass ? "PASS " : "FAIL ") << check;
    if (!pass && !witness.empty()) out_ << " : " << witness;
    out_ << "\n";
    report_.verdicts.push_back({std::move(check), pass, std::move(witness)});
  }

 private:
  std::ostream& out_;
  RunReport& report_;
};

std::string coords(const Element& x) { return "(" + x.to_string() + ")"; }

std::string tuple_text(const std::vector<Element>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : " ") + coords(x);
  return out;
}

std::string verdict_witness(const jordan::Verdict& v) {
  std::string out = tuple_text(v.witness);
  if (v.tree) out = v.tree->to_string() + " at " + out;
  return out;
}

std::string bases_text(const std::vector<Element>& basis) {
  if (basis.empty()) return "{}";
  std::string out;
  for (const auto& v : basis) out += (out.empty() ? "" : " ") + coords(v);
  return out;
}

Field parse_field(const std::string& text) {
  if (text == "rational") return Field::rational();
  if (text.rfind("p=", 0) == 0) {
    const std::string digits = text.substr(2);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 10) {
      throw Error(ErrorCode::ParseError, "bad field '" + text + "'; expected rational or p=<prime>");
    }
    const unsigned long long p = std::stoull(digits);
    if (p > 0x7fffffffULL) throw Error(ErrorCode::NonPrimeModulus, "modulus too large");
    return Field::prime(static_cast<std::uint32_t>(p));
  }
  throw Error(ErrorCode::ParseError, "bad field '" + text + "'; expected rational or p=<prime>");
}

std::uint64_t digest(std::uint64_t h, const std::vector<CarrierIndex>& images) {
  for (CarrierIndex x : images) {
    for (int b = 0; b < 4; ++b) {
      h ^= (x >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void report_conditions(Reporter& r, const TheoremConditions& t) {
  auto w = [](const std::optional<Element>& x) { return x ? coords(*x) : std::string(); };
  r.verdict("condition (i)", t.cond_i, w(t.witness_i));
  r.verdict("condition (ii)", t.cond_ii, w(t.witness_ii));
  r.verdict("condition (iii)", t.cond_iii, w(t.witness_iii));
}

void info_conditions(Reporter& r, const TheoremConditions& t) {
  r.info("cond_i", t.cond_i);
  r.info("cond_ii", t.cond_ii);
  r.info("cond_iii", t.cond_iii);
}

void header(Reporter& r, const Algebra& a) {
  r.info("algebra", a.name());
  r.info("field", a.field().name());
  r.info("dim", a.dim());
}

// Options shared by the subcommand handlers.
struct Args {
  std::string alg, alg2, map, idempotent, y, z, out, mode, field, which;
  std::vector<std::string> require;
  std::size_t n = 2;
  bool all_trees = false, exhaustive = false, symmetrized = false;
  std::optional<std::size_t> budget_nodes, budget_seconds, budget_witnesses;
  std::size_t workers = 1;
};

void cmd_check(const Args& args, Reporter& r) {
  const AlgebraPtr a = load_algebra(args.alg);
  header(r, *a);
  const IdentityReport rep = identity_report(*a);
  auto line = [&](const char* key, bool value, const std::optional<std::vector<Element>>& w) {
    r.info(key, value);
    if (w) r.info(std::string(key) + "_witness", tuple_text(*w));
  };
  line("commutative", rep.commutative, rep.commutative_witness);
  line("associative", rep.associative, rep.associative_witness);
  line("flexible", rep.flexible, rep.flexible_witness);
  line("jordan", rep.jordan, rep.jordan_witness);
  r.info("jordan_route", rep.route == JordanRoute::linearized ? "linearized" : "exhaustive");
  for (const auto& req : args.require) {
    if (req == "jordan") r.verdict("require jordan", rep.jordan, rep.jordan_witness ? tuple_text(*rep.jordan_witness) : "");
    if (req == "commutative") {
      r.verdict("require commutative", rep.commutative,
                rep.commutative_witness ? tuple_text(*rep.commutative_witness) : "");
    }
    if (req == "associative") {
      r.verdict("require associative", rep.associative,
                rep.associative_witness ? tuple_text(*rep.associative_witness) : "");
    }
  }
}

void cmd_idempotents(const Args& args, Reporter& r) {
  const AlgebraPtr a = load_algebra(args.alg);
  header(r, *a);
  const auto found =
      find_idempotents(*a, args.exhaustive ? IdempotentSearch::exhaustive : IdempotentSearch::heuristic);
  r.info("mode", args.exhaustive ? "exhaustive" : "heuristic");
  r.info("count", found.size());
  for (const auto& c : found) {
    r.info("idempotent", coords(c.element) + " " + c.element.pretty() + " [" + std::string(to_string(c.kind)) + "]");
  }
}

void cmd_peirce(const Args& args, Reporter& r) {
  const AlgebraPtr a = load_algebra(args.alg);
  header(r, *a);
  const Element e = a->parse_element(args.idempotent);
  r.info("idempotent", coords(e) + " " + e.pretty());
  const PeirceDecomposition d = peirce_decompose(*a, e, PeirceOptions{args.symmetrized});
  r.info("symmetrized", d.symmetrized());
  r.info("dims", "(" + std::to_string(d.dim(Component::one)) + "," + std::to_string(d.dim(Component::half)) + "," +
                     std::to_string(d.dim(Component::zero)) + ")");
  for (Component c : kComponents) r.info("basis " + std::string(to_string(c)), bases_text(d.basis(c)));
  for (const auto& rel : verify_peirce_relations(d).relations) {
    r.verdict("relation " + rel.name, rel.holds,
              rel.witness ? coords(rel.witness->first) + " " + coords(rel.witness->second) : "");
  }
  report_conditions(r, check_theorem_conditions(d));
}

void cmd_check_map(const Args& args, Reporter& r) {
  const AlgebraPtr a = load_algebra(args.alg);
  const AlgebraPtr b = load_algebra(args.alg2);
  const MapTable phi = load_map(args.map, MapRole::map, a, b);
  r.info("domain", a->name());
  r.info("codomain", b->name());
  r.info("n", args.n);
  r.info("trees", args.all_trees ? "all" : "canonical");
  r.verdict("bijective", is_bijective(phi));
  const auto v = is_n_multiplicative(phi, args.n, args.all_trees ? TreeMode::all_trees : TreeMode::canonical);
  r.verdict(std::to_string(args.n) + "-multiplicative", v.holds, verdict_witness(v));
  const auto add = is_additive(phi);
  r.info("additive", add.holds);
  if (!add) r.info("additive_witness", tuple_text(add.witness));
}

void cmd_check_derivation(const Args& args, Reporter& r) {
  const AlgebraPtr a = load_algebra(args.alg);
  const DerivationTable d(load_map(args.map, MapRole::derivation, a, a));
  header(r, *a);
  r.info("n", args.n);
  r.info("trees", args.all_trees ? "all" : "canonical");
  const auto v = is_n_derivation(d, args.n, args.all_trees ? TreeMode::all_trees : TreeMode::canonical);
  r.verdict(std::to_string(args.n) + "-derivation", v.holds, verdict_witness(v));
  const auto add = is_additive(d);
  r.info("additive", add.holds);
  if (!add) r.info("additive_witness", tuple_text(add.witness));
}

void cmd_inner_derivation(const Args& args, Reporter& r) {
  const AlgebraPtr a = load_algebra(args.alg);
  header(r, *a);
  const Element y = a->parse_element(args.y);
  const Element z = a->parse_element(args.z);
  r.info("y", coords(y));
  r.info("z", coords(z));
  const Matrix m = inner_derivation(*a, y, z);
  for (std::size_t i = 0; i < a->dim(); ++i) {
    const Element image = a->element(m.column(i));
    r.info("D(" + a->basis_names()[i] + ")", coords(image) + " " + image.pretty());
  }
  const DerivationTable d = DerivationTable::linear(a, m);
  const auto v = is_n_derivation(d, 2);
  r.verdict("2-derivation", v.holds, verdict_witness(v));
  if (!args.out.empty()) {
    save_map(d.map(), args.out);
    r.info("wrote", args.out);
  }
}

void cmd_reduce_derivation(const Args& args, Reporter& r) {
  const AlgebraPtr a = load_algebra(args.alg);
  const DerivationTable d(load_map(args.map, MapRole::derivation, a, a));
  header(r, *a);
  const Element e = a->parse_element(args.idempotent);
  r.info("idempotent", coords(e));
  r.info("n", args.n);
  const ReducedDerivation red = reduce_derivation(*a, e, d, args.n);
  r.info("d(e)", coords(red.d_of_e) + " " + red.d_of_e.pretty());
  const Element delta_e = red.delta.apply(e);
  r.info("Delta(e)", coords(delta_e));
  r.verdict("Delta(e) = 0", delta_e.is_zero(), coords(delta_e));
  const auto v = derivation_peirce_check(red.delta, red.decomposition);
  r.verdict("Delta(J_i) in J_i", v.holds, verdict_witness(v));
  r.info("d additive", is_additive(d).holds);
  r.info("Delta additive", is_additive(red.delta).holds);
}

void cmd_audit(const Args& args, Reporter& r) {
  const AlgebraPtr a = load_algebra(args.alg);
  header(r, *a);
  r.info("n", args.n);
  r.info("mode", args.mode);

  std::optional<PeirceDecomposition> decomposition;
  if (!args.idempotent.empty()) {
    decomposition = peirce_decompose(*a, a->parse_element(args.idempotent));
  } else if (a->field().characteristic() != 2 && is_commutative(*a)) {
    for (const auto& c : find_idempotents(*a, IdempotentSearch::heuristic)) {
      if (c.kind != IdempotentClass::nontrivial) continue;
      try {
        decomposition = peirce_decompose(*a, c.element);
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DecompositionIncomplete) throw;
      }
    }
  }
  std::optional<TheoremConditions> hypotheses;
  if (decomposition) {
    r.info("idempotent", coords(decomposition->idempotent()));
    hypotheses = check_theorem_conditions(*decomposition);
    info_conditions(r, *hypotheses);
  } else {
    r.info("idempotent", "none");
  }

  const SearchBudget budget{args.budget_nodes, args.budget_seconds, args.budget_witnesses};
  const SearchOptions options{args.workers};
  std::uint64_t h = 0xcbf29ce484222325ULL;
  AuditReport report;
  SearchTerminator term;
  std::optional<bool> half_ok;
  std::string half_witness;
  if (args.mode == "maps") {
    const MapStream s = enumerate_multiplicative_bijections(a, a, args.n, budget, options);
    for (const auto& m : s.items) h = digest(h, m.images());
    report = additivity_audit(s, hypotheses);
    term = s.terminator;
  } else {
    const bool seed = !args.idempotent.empty();
    const DerivationStream s =
        enumerate_n_derivations(a, args.n, budget, seed ? decomposition : std::nullopt, options);
    for (const auto& d : s.items) h = digest(h, d.map().images());
    report = additivity_audit(s, hypotheses);
    term = s.terminator;
    if (decomposition) {
      half_ok = true;
      for (const auto& d : s.items) {
        const Element de = d.apply(decomposition->idempotent());
        if (!in_component(*decomposition, de, Component::half)) {
          half_ok = false;
          half_witness = "d(e) = " + coords(de);
          break;
        }
      }
    }
  }
  r.info("seeded", args.mode == "derivations" && !args.idempotent.empty());
  r.info("witnesses_found", report.witnesses_found);
  r.info("nodes", term.nodes);
  r.info("status", to_string(term.status));
  r.info("exhausted", report.exhausted);
  r.info("stream_digest", hex(h));
  r.info("all_additive", report.all_additive);
  r.info("nonadditive_count", report.nonadditive_witnesses.size());
  std::string witness;
  if (!report.nonadditive_witnesses.empty()) {
    const MapTable& m = report.nonadditive_witnesses.front();
    witness = "first non-additive at " + tuple_text(is_additive(m).witness);
  }
  r.verdict("all witnesses additive", report.all_additive, witness);
  if (half_ok) r.verdict("d(e) in J1/2 for every witness", *half_ok, half_witness);
}

void cmd_example(const Args& args, Reporter& r) {
  const Field f = parse_field(args.field);
  AlgebraPtr a;
  if (args.which == "m2") {
    a = matrix_units_algebra(f);
  } else if (args.which == "jordanified-m2") {
    a = jordanify(*matrix_units_algebra(f));
  } else {
    throw Error(ErrorCode::ParseError, "unknown example '" + args.which + "'; expected m2 or jordanified-m2");
  }
  header(r, *a);
  if (args.out.empty()) {
    r.info("json", algebra_to_json(*a));
  } else {
    save_algebra(*a, args.out);
    r.info("wrote", args.out);
  }
}

}  // namespace

RunReport run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunReport report;
  Args args;
  CLI::App app{"Exact checks for finite-dimensional nonassociative algebras", "jordanctl"};
  app.require_subcommand(1, 1);
  std::function<void(const Args&, Reporter&)> handler;
  auto add = [&](const char* name, const char* help, void (*fn)(const Args&, Reporter&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&, fn, name] {
      handler = fn;
      report.command = name;
    });
    return sub;
  };
  auto n_option = [&](CLI::App* sub) { sub->add_option("--n", args.n, "monomial degree")->required(); };

  auto* check = add("check", "identity report for an algebra file", cmd_check);
  check->add_option("alg", args.alg, "algebra file")->required();
  check->add_option("--require", args.require, "property that must hold")
      ->check(CLI::IsMember({"jordan", "commutative", "associative"}));

  auto* idem = add("idempotents", "list nonzero idempotents", cmd_idempotents);
  idem->add_option("alg", args.alg, "algebra file")->required();
  idem->add_flag("--exhaustive", args.exhaustive, "scan the whole finite carrier");

  auto* peirce = add("peirce", "Peirce decomposition and conditions (i)-(iii)", cmd_peirce);
  peirce->add_option("alg", args.alg, "algebra file")->required();
  peirce->add_option("--idempotent", args.idempotent, "coordinates c1,...,cd")->required();
  peirce->add_flag("--symmetrized", args.symmetrized, "use (L_e + R_e)/2 on a noncommutative algebra");

  auto* cmap = add("check-map", "check that a bijection is n-multiplicative", cmd_check_map);
  cmap->add_option("alg", args.alg, "domain algebra file")->required();
  cmap->add_option("alg2", args.alg2, "codomain algebra file")->required();
  cmap->add_option("map", args.map, "map file")->required();
  n_option(cmap);
  cmap->add_flag("--all-trees", args.all_trees, "check every monomial shape");

  auto* cder = add("check-derivation", "check that a map is an n-derivation", cmd_check_derivation);
  cder->add_option("alg", args.alg, "algebra file")->required();
  cder->add_option("map", args.map, "map file")->required();
  n_option(cder);
  cder->add_flag("--all-trees", args.all_trees, "check every monomial shape");

  auto* inner = add("inner-derivation", "the operator D_{y,z}", cmd_inner_derivation);
  inner->add_option("alg", args.alg, "algebra file")->required();
  inner->add_option("--y", args.y, "coordinates of y")->required();
  inner->add_option("--z", args.z, "coordinates of z")->required();
  inner->add_option("--out", args.out, "write the operator as a map file");

  auto* reduce = add("reduce-derivation", "reduce a derivation to one vanishing at e", cmd_reduce_derivation);
  reduce->add_option("alg", args.alg, "algebra file")->required();
  reduce->add_option("map", args.map, "derivation map file")->required();
  reduce->add_option("--idempotent", args.idempotent, "coordinates of e")->required();
  n_option(reduce);

  auto* audit = add("audit", "enumerate and audit multiplicative maps or derivations", cmd_audit);
  audit->add_option("alg", args.alg, "algebra file")->required();
  n_option(audit);
  audit->add_option("--mode", args.mode, "maps or derivations")
      ->required()
      ->check(CLI::IsMember({"maps", "derivations"}));
  audit->add_option("--budget-nodes", args.budget_nodes, "node budget");
  audit->add_option("--budget-seconds", args.budget_seconds, "time budget");
  audit->add_option("--budget-witnesses", args.budget_witnesses, "witness budget");
  audit->add_option("--idempotent", args.idempotent, "idempotent for the hypotheses and the derivation seed");
  audit->add_option("--workers", args.workers, "parallel workers")->check(CLI::PositiveNumber);

  auto* example = add("example", "write a built-in example algebra", cmd_example);
  example->add_option("which", args.which, "m2 or jordanified-m2")->required();
  example->add_option("--field", args.field, "rational or p=<prime>")->required();
  example->add_option("--out", args.out, "output path");

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    report.exit_code = code == 0 ? 0 : 2;
    return report;
  }

  Reporter reporter(out, report);
  reporter.info("command", report.command);
  try {
    handler(args, reporter);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    report.exit_code = 2;
    return report;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    report.exit_code = 2;
    return report;
  }
  for (const auto& v : report.verdicts) {
    if (!v.pass) report.exit_code = 1;
  }
  return report;
}

}  // namespace jordan::cli
