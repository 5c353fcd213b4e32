// Command-line front end. Exit codes: 0 success, 1 property failure,
// 2 input error, 3 precision-undetermined.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "adic/error.hpp"
#include "adic/harness.hpp"
#include "adic/matlis.hpp"
#include "adic/nakayama.hpp"
#include "adic/session.hpp"

using namespace adic;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kProperty = 1, kInput = 2, kUndetermined = 3 };

struct Globals {
  int precision = 4;
  uint32_t prime = 5;
  int vars = 1;
  uint64_t seed = 1;
  std::string json_out;
};

struct Outcome {
  std::string text;
  json sidecar;
  int code = kOk;
};

json dims_of(const std::map<int, size_t>& dims) {
  json out = json::object();
  for (const auto& [d, v] : dims) out[std::to_string(d)] = v;
  return out;
}

Outcome cmd_koszul(const Ring& ring, int power) {
  Outcome o;
  KoszulComplex k = koszul_powers(ring, power);
  std::map<int, size_t> dims;
  bool det = true;
  for (int i = k.complex.lo; i <= k.complex.hi(); ++i) {
    TorsionCohomology tc = torsion_cohomology(k.complex, i);
    dims[i] = tc.value.h.module.dim();
    det = det && tc.determined;
  }
  KoszulDual kd = koszul_dual(k);
  std::ostringstream s;
  s << "Koszul complex on x_i^" << power << ", n = " << ring.vars() << "\n";
  for (const auto& [i, d] : dims) s << "  H^" << i << " dim " << d << "\n";
  s << "self-duality K^dual = K[-n]: " << (kd.verified ? "verified" : "FAILED " + kd.diagnostic) << "\n";
  o.text = s.str();
  o.sidecar = {{"H", dims_of(dims)}, {"determined", det}, {"self_dual", kd.verified}};
  o.code = !kd.verified ? kProperty : det ? kOk : kUndetermined;
  return o;
}

Outcome cmd_gamma(const Ring& ring, const std::string& module, int budget) {
  Outcome o;
  IndComplex g = telescope_gamma(parse_module(ring, module), budget);
  std::ostringstream s;
  json degs = json::object();
  s << "telescope of " << module << " over " << budget << " stages\n";
  for (const auto& [i, sys] : g.cohomology) {
    s << "  H^" << i << " stage dims";
    for (auto d : sys.dims()) s << " " << d;
    s << (g.stable.at(i) ? ", stable from stage " + std::to_string(g.stable_from.at(i)) +
                               ", colimit dim " + std::to_string(sys.colimit_dim())
                         : ", not stable within budget")
      << "\n";
    degs[std::to_string(i)] = {{"dims", sys.dims()}, {"stable", g.stable.at(i)}, {"colimit_dim", sys.colimit_dim()}};
  }
  o.text = s.str();
  o.sidecar = {{"degrees", degs}};
  return o;
}

Outcome cmd_complete(const Ring& ring, const std::string& module) {
  Outcome o;
  FgPresentation m = parse_module(ring, module);
  CompletedModule c = complete_fg(m);
  std::ostringstream s;
  json dims = json::array(), tau = json::array();
  s << "completion tower of " << module << "\n";
  for (int k = 0; k <= ring.precision(); ++k) {
    const bool b = check_tau_bijective(m, k).bijective;
    s << "  level " << k << ": dim " << c.tower.levels[k].dim() << ", tau " << (b ? "bijective" : "NOT bijective")
      << "\n";
    dims.push_back(c.tower.levels[k].dim());
    tau.push_back(b);
    if (!b) o.code = kProperty;
  }
  o.text = s.str();
  o.sidecar = {{"dims", dims}, {"tau_bijective", tau}};
  return o;
}

Outcome cmd_ext(const Ring& ring, const std::string& module, int degree) {
  Outcome o;
  TorsionCohomology e = ext_A0(single_presentation(parse_module(ring, module), 0), degree);
  std::ostringstream s;
  s << "Ext^" << degree << "(A_0, " << module << ") dim " << e.value.h.module.dim() << " at level " << e.value.level
    << (e.determined ? "" : " (undetermined at this precision)") << "\n";
  o.text = s.str();
  o.sidecar = {{"degree", degree}, {"dim", e.value.h.module.dim()}, {"determined", e.determined}};
  o.code = e.determined ? kOk : kUndetermined;
  return o;
}

IndTorsionModule torsion_input(const Ring& ring, const std::string& module) {
  if (module == "J") return injective_hull(ring, ring.precision());
  return matlis_dual_fg(parse_module(ring, module), ring.precision());
}

Outcome cmd_bass(const Ring& ring, const std::string& module) {
  Outcome o;
  BassProfile b = bass_numbers(torsion_input(ring, module), ring.vars());
  std::ostringstream s;
  s << "Bass numbers of " << (module == "J" ? "J(m)" : "D(" + module + ")") << "\n" << b.to_string();
  json stamps = json::array();
  for (const auto& v : b.mu) stamps.push_back(v.stamp());
  o.text = s.str();
  o.sidecar = {{"mu", b.values()}, {"finite", b.all_finite()}, {"stamps", stamps}};
  o.code = b.all_finite() ? kOk : kUndetermined;
  return o;
}

Outcome cmd_cofinite(const Ring& ring, const std::string& module, int window, int budget) {
  Outcome o;
  CofinitenessReport c;
  std::string what;
  if (window > 0) {
    c = is_cohomologically_cofinite(growing_window_family(ring, window, std::min(ring.precision(), window + 1)));
    what = "sum of A/m^i over " + std::to_string(window) + " windows";
  } else if (module == "J") {
    c = is_cohomologically_cofinite(constant_family("J", injective_hull(ring, ring.precision())));
    what = "J(m)";
  } else {
    c = is_cohomologically_cofinite(telescope_gamma(parse_module(ring, module), budget));
    what = "RGamma(" + module + ")";
  }
  json stamps = json::array();
  for (const auto& v : c.ext.mu) stamps.push_back(v.stamp());
  o.text = what + "\n" + c.report;
  o.sidecar = {{"input", what}, {"verdict", to_string(c.verdict)}, {"window", {c.window_lo, c.window_hi}}, {"stamps", stamps}};
  o.code = c.verdict == CofiniteVerdict::Undetermined ? kUndetermined : kOk;
  return o;
}

Outcome cmd_demo(const Ring& ring, const std::string& name, size_t window) {
  require(name == "example-1-15", ErrorKind::InvalidInput, "demo: unknown demo '" + name + "'");
  Outcome o;
  NonCompleteCandidate c = non_complete_h0_candidate(ring, window, ring.precision());
  json inj = json::array();
  for (bool b : c.injective_by_level) inj.push_back(b);
  o.text = c.report;
  o.sidecar = {{"injective_by_level", inj},
               {"certificate", to_string(c.certificate.verdict)},
               {"h0_dims", c.h0_dims},
               {"report", c.report}};
  return o;
}

Outcome cmd_suite(const std::string& name, uint64_t seed, size_t count, std::optional<uint32_t> prime) {
  Outcome o;
  SuiteReport r = theorem_suite(name, {seed, count, prime});
  o.text = r.text();
  o.sidecar = r.json();
  o.code = r.ok() ? kOk : kProperty;
  return o;
}

Outcome cmd_check(const std::string& path, uint64_t seed) {
  Outcome o;
  SessionResult r = run_session(path, seed);
  o.text = r.text;
  o.sidecar = r.sidecar;
  o.code = r.property_failure ? kProperty : r.undetermined ? kUndetermined : kOk;
  return o;
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::PrecisionExceeded:
    case ErrorKind::Undetermined:
      return kUndetermined;
    case ErrorKind::NotCofinite:
      return kProperty;
    default:
      return kInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derived adic completion and torsion over F_p[[x_1..x_n]]"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  bool prime_given = false;
  app.add_option("--precision", g.precision, "adic precision N")->check(CLI::Range(0, 12));
  app.add_option_function<uint32_t>("--prime", [&](const uint32_t& p) { g.prime = p; prime_given = true; },
                                    "residue characteristic p");
  app.add_option("--vars", g.vars, "number of variables n")->check(CLI::Range(1, 4));
  app.add_option("--seed", g.seed, "seed");
  app.add_option("--json-out", g.json_out, "write the JSON sidecar here");

  std::string session_path, suite_name, module = "A", demo_name;
  size_t count = 20, demo_window = 4;
  int power = 1, budget = 3, degree = 0, window = 0;

  auto* check = app.add_subcommand("check", "run a session file");
  check->add_option("session", session_path)->required()->check(CLI::ExistingFile);
  auto* suite = app.add_subcommand("suite", "run a theorem suite");
  suite->add_option("name", suite_name)->required()->check(CLI::IsMember(suite_names()));
  suite->add_option("--count", count, "number of cases");
  auto* kz = app.add_subcommand("koszul", "Koszul complex cohomology and self-duality");
  kz->add_option("--power", power, "use x_i^t")->check(CLI::Range(1, 6));
  auto* gamma = app.add_subcommand("gamma", "telescope for derived torsion");
  gamma->add_option("--module", module, "A, A0, A^r or A/(f,...)");
  gamma->add_option("--budget", budget, "stages")->check(CLI::Range(1, 8));
  auto* complete = app.add_subcommand("complete", "completion tower and tau");
  complete->add_option("--module", module, "A, A0, A^r or A/(f,...)");
  auto* ext = app.add_subcommand("ext", "Ext^j(A_0, M)");
  ext->add_option("--module", module, "A, A0, A^r or A/(f,...)");
  ext->add_option("--degree", degree, "j");
  auto* bass = app.add_subcommand("bass", "Bass numbers of D(M) or of J");
  bass->add_option("--module", module, "J, or a module whose Matlis dual is used");
  auto* cof = app.add_subcommand("cofinite", "cohomological cofiniteness");
  cof->add_option("--module", module, "J, or M for RGamma(M)");
  cof->add_option("--budget", budget, "telescope stages")->check(CLI::Range(1, 8));
  cof->add_option("--growing", window, "use the sum of A/m^i over this many windows");
  auto* demo = app.add_subcommand("demo", "diagnostic demos");
  demo->add_option("name", demo_name)->required();
  demo->add_option("--window", demo_window, "index window")->check(CLI::Range(1, 12));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    Outcome o;
    const std::optional<uint32_t> prime = prime_given ? std::optional<uint32_t>(g.prime) : std::nullopt;
    if (check->parsed()) {
      o = cmd_check(session_path, g.seed);
    } else if (suite->parsed()) {
      o = cmd_suite(suite_name, g.seed, count, prime);
    } else {
      const Ring ring({g.prime, g.vars, g.precision});
      if (kz->parsed()) o = cmd_koszul(ring, power);
      else if (gamma->parsed()) o = cmd_gamma(ring, module, budget);
      else if (complete->parsed()) o = cmd_complete(ring, module);
      else if (ext->parsed()) o = cmd_ext(ring, module, degree);
      else if (bass->parsed()) o = cmd_bass(ring, module);
      else if (cof->parsed()) o = cmd_cofinite(ring, module, window, budget);
      else o = cmd_demo(ring, demo_name, demo_window);
    }
    std::cout << o.text;
    if (!g.json_out.empty()) {
      std::ofstream out(g.json_out);
      if (!out) {
        std::cerr << "error: cannot write " << g.json_out << "\n";
        return kInput;
      }
      out << o.sidecar.dump(2) << "\n";
    }
    return o.code;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_for(e.kind());
  }
}
