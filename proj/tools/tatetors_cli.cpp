// tatetors_cli: computations and invariant suites from the command line.
// Exit codes: 0 pass, 1 verification failure, 2 usage or input error.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <string>

#include "tatetors/suites.hpp"

using namespace tatetors;
using json = nlohmann::ordered_json;

namespace {

struct Report {
  bool pass = true;
  json data = json::object();
  std::string text;
};

struct Globals {
  std::string field = "F5", group = "Z";
  std::uint64_t seed = 7;
  std::optional<std::size_t> trials;
  std::size_t budget = 200000;
  int degree = -1;
  bool json_out = false;
};

json witness_json(const Witness& w) {
  json o = json::object();
  for (auto& [name, text] : w) o[name] = text;
  return o;
}

json suite_json(const SuiteResult& r) {
  json o;
  o["status"] = r.pass ? "pass" : "fail";
  o["suite"] = r.name;
  o["trials"] = r.trials;
  o["violations"] = r.violations;
  o["notes"] = r.notes;
  o["witness"] = witness_json(r.witness);
  return o;
}

std::string suite_text(const SuiteResult& r) {
  std::string s = r.name + ": " + (r.pass ? "pass" : "FAIL") + " (" + std::to_string(r.trials) + " trials, " +
                  std::to_string(r.violations) + " violations)\n";
  for (auto& n : r.notes) s += "  " + n + "\n";
  for (auto& [name, text] : r.witness) s += "--- " + name + "\n" + text;
  return s;
}

Report lattice_report(const Lattice& L) {
  Report r;
  r.text = print_lattice(L);
  r.data["lattice"] = r.text;
  return r;
}

// The two ends of a Tate sequence, validated.
TateSES read_ses(const std::string& i, const std::string& j) {
  auto c = check_tate_ses(read_laurent_matrix(i), read_laurent_matrix(j));
  if (auto* d = std::get_if<TateSesDiagnosis>(&c))
    throw Error(std::string("not a short exact sequence: ") + to_string(d->failure) + " (" + d->detail + ")");
  return std::get<TateSES>(c);
}

Report run_det_symmetry(const Globals& g, bool ungraded, std::size_t max_dim) {
  Field f = Field::parse(g.field);
  DetTheory t{!ungraded, {}};
  std::vector<std::pair<FdSpace, FdSpace>> pairs;
  for (std::size_t a = 0; a <= max_dim; ++a)
    for (std::size_t b = 0; b <= max_dim; ++b) pairs.push_back({FdSpace{a, f}, FdSpace{b, f}});
  SymmetryReport s = check_symmetry(t, pairs, all_subspace_grids(f, max_dim));
  Report r;
  r.pass = s.pair_pass() && s.grid_pass();
  r.data["theory"] = ungraded ? "ungraded" : "graded";
  r.data["field"] = f.name();
  r.data["pair_criterion"] = s.pair_pass();
  r.data["grid_criterion"] = s.grid_pass();
  r.data["criteria_agree"] = s.criteria_agree();
  json fails = json::array();
  for (auto* list : {&s.pairs, &s.grids})
    for (auto& x : *list)
      if (!x.pass) fails.push_back({{"instance", x.what}, {"lhs", x.lhs.str()}, {"rhs", x.rhs.str()}});
  r.data["failures"] = fails;
  r.text = std::string(ungraded ? "ungraded" : "graded") + " det over " + f.name() + ": pair " +
           (s.pair_pass() ? "pass" : "fail") + ", grid " + (s.grid_pass() ? "pass" : "fail") +
           (s.criteria_agree() ? ", criteria agree\n" : ", criteria DISAGREE\n");
  std::size_t shown = 0;
  for (auto& x : fails)
    if (shown++ < 5)
      r.text += "  " + x["instance"].get<std::string>() + ": " + x["lhs"].get<std::string>() + " vs " +
                x["rhs"].get<std::string>() + "\n";
  return r;
}

Report run_cohomology(const Globals& g, const std::string& sset) {
  if (g.degree < 0) throw CLI::ValidationError("--degree", "cohomology needs --degree");
  SimplicialSet k = read_sset(sset);
  Cohomology h = cohomology(k, g.degree, AbelianGroup::parse(g.group));
  Report r;
  r.text = h.group().str() + "\n";
  r.data["degree"] = g.degree;
  r.data["coefficients"] = g.group;
  r.data["group"] = h.group().str();
  r.data["presentation"] = h.presentation().str();
  json reps = json::array();
  for (auto& c : h.representatives()) reps.push_back(print_cochain(c));
  r.data["representatives"] = reps;
  return r;
}

Report run_classify(const std::string& sset, const std::string& coch, const std::string& other) {
  SimplicialSet k = read_sset(sset);
  MultTorsorRep t = MultTorsorRep::from_cochain(read_cochain(coch, k));
  Report r;
  r.data["degree"] = t.degree;
  MultTorsorReport rep = check_mult_torsor(t);
  if (!rep.pass) {
    r.pass = false;
    json v = json::array();
    r.text = "not a multiplicative torsor:\n";
    for (auto& x : rep.violations) {
      v.push_back({{"simplex", x.tau}, {"e_minus_o", x.e_minus_o.str()}});
      r.text += "  E-O = " + x.e_minus_o.str() + " on " + x.tau + "\n";
    }
    r.data["violations"] = v;
    return r;
  }
  Cohomology h = cohomology(k, t.degree + 1, t.group);
  GroupElem cls = classify_torsor(h, t);
  r.data["cohomology"] = h.group().str();
  r.data["presentation"] = h.presentation().str();
  r.data["class"] = cls.coords();
  r.text = "degree " + std::to_string(t.degree) + " torsor, H^" + std::to_string(t.degree + 1) + " = " +
           h.group().str() + ", class " + cls.str() + " in " + h.presentation().str() + "\n";
  if (!other.empty()) {
    MultTorsorRep u = MultTorsorRep::from_cochain(read_cochain(other, k));
    auto x = iso_decide(t, u);
    r.data["isomorphic"] = x.has_value();
    r.data["transporter"] = x ? json(print_cochain(*x)) : json(nullptr);
    r.text += x ? "isomorphic, transporter:\n" + print_cochain(*x) : "not isomorphic\n";
  }
  return r;
}

Report run_gerbe(const std::string& sset, const std::string& coch) {
  SimplicialSet k = read_sset(sset);
  Cochain beta = read_cochain(coch, k);
  GerbeRep g{k, beta.group(), beta};
  Report r;
  auto bad = gerbe_violations(g);
  if (!bad.empty()) {
    r.pass = false;
    json v = json::array();
    r.text = "not a gerbe:\n";
    for (auto& x : bad) {
      v.push_back({{"simplex", x.simplex}, {"even", x.even.str()}, {"odd", x.odd.str()}});
      r.text += "  " + x.simplex + ": " + x.even.str() + " vs " + x.odd.str() + "\n";
    }
    r.data["violations"] = v;
    return r;
  }
  MultTorsorRep t = gerbe_to_torsor(g);
  MultTorsorReport rep = check_mult_torsor(t);
  r.pass = rep.pass;
  r.data["torsor"] = print_cochain(t.alpha);
  r.data["torsor_check"] = rep.pass;
  r.text = print_cochain(t.alpha);
  if (rep.pass) {
    GroupElem cls = classify_torsor(t);
    r.data["class"] = cls.coords();
    r.text += "# class " + cls.str() + "\n";
  }
  return r;
}

Report run_s_enumerate(const Globals& g, std::size_t D, int N, bool check) {
  SSkeleton sk = enumerate_s_skeleton(Field::parse(g.field), D, N, g.budget);
  Report r;
  json levels = json::array();
  r.text = "S(Vect " + g.field + ") dims <= " + std::to_string(D) + "\n";
  for (int n = 0; n <= N; ++n) {
    levels.push_back(sk.levels[n].size());
    r.text += "  level " + std::to_string(n) + ": " + std::to_string(sk.levels[n].size()) + "\n";
  }
  r.data["field"] = g.field;
  r.data["max_dim"] = D;
  r.data["levels"] = levels;
  if (check) {
    SkeletonReport s = check_skeleton_identities(sk);
    r.pass = s.pass();
    r.data["identities_checked"] = s.checked;
    r.data["identity_violations"] = s.violations;
    r.text += "  simplicial identities: " + std::to_string(s.checked) + " checked, " +
              std::to_string(s.violations.size()) + " violations\n";
  }
  return r;
}

int emit(const Globals& g, const std::string& verb, Report r) {
  if (g.json_out) {
    json o;
    o["status"] = r.pass ? "pass" : "fail";
    o["verb"] = verb;
    for (auto& [k, v] : r.data.items()) o[k] = v;
    std::cout << o.dump(2) << "\n";
  } else {
    std::cout << r.text;
  }
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tate lattices, determinantal theories and multiplicative torsors"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--field", g.field, "F<p> or Q")->capture_default_str();
  app.add_option("--group", g.group, "coefficients: Z, Z/6, Z+Z/2")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for randomized suites")->capture_default_str();
  app.add_option("--trials", g.trials, "trials for randomized suites");
  app.add_option("--budget", g.budget, "enumeration budget")->capture_default_str();
  app.add_option("--degree", g.degree, "cohomology degree");
  app.add_flag("--json", g.json_out, "machine-readable output");

  std::string a, b, c;
  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto* index = sub("index", "relative index [a : b]");
  index->add_option("a", a)->required();
  index->add_option("b", b)->required();
  auto* meet = sub("meet", "a ∩ b");
  meet->add_option("a", a)->required();
  meet->add_option("b", b)->required();
  auto* join = sub("join", "a + b");
  join->add_option("a", a)->required();
  join->add_option("b", b)->required();
  auto* lift = sub("lift", "U ∩ X' for 0 → X' →i X →j X'' → 0");
  auto* project = sub("project", "image of U in X''");
  for (auto* s : {lift, project}) {
    s->add_option("i", a, "i.lmx")->required();
    s->add_option("j", b, "j.lmx")->required();
    s->add_option("u", c, "u.lat")->required();
  }
  auto* ses = sub("ses-check", "is 0 → X' →i X →j X'' → 0 exact");
  ses->add_option("i", a)->required();
  ses->add_option("j", b)->required();
  auto* mu = sub("mu-eval", "value of the combined standard dimension theory on U");
  mu->add_option("i", a)->required();
  mu->add_option("j", b)->required();
  mu->add_option("u", c)->required();
  bool ungraded = false;
  std::size_t max_dim = 2;
  auto* det = sub("det-symmetry", "pair and grid symmetry criteria");
  det->add_flag("--ungraded", ungraded, "drop the grading of det");
  det->add_option("--max-dim", max_dim)->capture_default_str();
  auto* coh = sub("cohomology", "H^n(K; G) via Smith normal form");
  coh->add_option("complex", a)->required();
  auto* cls = sub("classify", "class of a torsor in H^(n+1), optionally iso_decide against another");
  cls->add_option("complex", a)->required();
  cls->add_option("alpha", b)->required();
  cls->add_option("other", c);
  auto* gerbe = sub("gerbe-torsor", "degree-2 torsor of a gerbe");
  gerbe->add_option("complex", a)->required();
  gerbe->add_option("beta", b)->required();
  std::size_t D = 2;
  int N = 3;
  bool check = false;
  auto* senum = sub("s-enumerate", "enumerate S_n(Vect) up to level N with dims ≤ D");
  senum->add_option("D", D)->required();
  senum->add_option("N", N)->required();
  senum->add_flag("--check", check, "check the simplicial identities");
  std::string suite;
  auto* verify = sub("verify", "run an invariant suite (or 'all')");
  verify->add_option("suite", suite)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string verb = app.get_subcommands().front()->get_name();
  try {
    if (verb == "index") {
      Report r;
      std::int64_t v = relative_index(read_lattice(a), read_lattice(b));
      r.text = std::to_string(v) + "\n";
      r.data["index"] = v;
      return emit(g, verb, r);
    }
    if (verb == "meet") return emit(g, verb, lattice_report(lattice_meet(read_lattice(a), read_lattice(b))));
    if (verb == "join") return emit(g, verb, lattice_report(lattice_join(read_lattice(a), read_lattice(b))));
    if (verb == "lift") return emit(g, verb, lattice_report(lift_lattice(read_ses(a, b), read_lattice(c))));
    if (verb == "project") return emit(g, verb, lattice_report(project_lattice(read_ses(a, b), read_lattice(c))));
    if (verb == "ses-check") {
      auto res = check_tate_ses(read_laurent_matrix(a), read_laurent_matrix(b));
      Report r;
      if (auto* d = std::get_if<TateSesDiagnosis>(&res)) {
        r.pass = false;
        r.data["failure"] = to_string(d->failure);
        r.data["detail"] = d->detail;
        r.text = std::string("not exact: ") + to_string(d->failure) + " (" + d->detail + ")\n";
      } else {
        r.text = "exact\n";
      }
      return emit(g, verb, r);
    }
    if (verb == "mu-eval") {
      TateSES s = read_ses(a, b);
      AbelianGroup grp = AbelianGroup::parse(g.group);
      if (grp.is_trivial()) throw Error("mu-eval needs a nonzero group");
      std::vector<std::int64_t> gen(grp.rank(), 0);
      gen[0] = 1;
      DimTheory chi{GroupElem(grp, gen)};
      GroupElem zero(grp, std::vector<std::int64_t>(grp.rank(), 0));
      GroupElem v = mu_eval(s, standard_reldim(chi, s.sub, zero), standard_reldim(chi, s.quot, zero), read_lattice(c));
      Report r;
      r.text = v.str() + "\n";
      r.data["value"] = v.str();
      return emit(g, verb, r);
    }
    if (verb == "det-symmetry") return emit(g, verb, run_det_symmetry(g, ungraded, max_dim));
    if (verb == "cohomology") return emit(g, verb, run_cohomology(g, a));
    if (verb == "classify") return emit(g, verb, run_classify(a, b, c));
    if (verb == "gerbe-torsor") return emit(g, verb, run_gerbe(a, b));
    if (verb == "s-enumerate") return emit(g, verb, run_s_enumerate(g, D, N, check));
    if (verb == "verify") {
      SuiteOptions opt{g.seed, g.trials};
      std::vector<SuiteResult> results;
      if (suite == "all") {
        for (auto& s : suites()) results.push_back(s.run(opt));
      } else if (auto* s = find_suite(suite)) {
        results.push_back(s->run(opt));
      } else {
        std::string names;
        for (auto& s : suites()) names += " " + s.name;
        std::cerr << "unknown suite '" << suite << "'; known:" << names << " all\n";
        return 2;
      }
      bool pass = true;
      for (auto& r : results) pass = pass && r.pass;
      if (g.json_out) {
        json out = json::array();
        for (auto& r : results) out.push_back(suite_json(r));
        std::cout << (suite == "all" ? out : out[0]).dump(2) << "\n";
      } else {
        for (auto& r : results) std::cout << suite_text(r);
      }
      return pass ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    if (g.json_out) std::cout << json{{"status", "error"}, {"verb", verb}, {"message", e.what()}}.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
