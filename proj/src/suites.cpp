#include <chrono>
#include <map>
#include <sstream>

#include "adic/error.hpp"
#include "adic/harness.hpp"
#include "adic/matlis.hpp"
#include "adic/nakayama.hpp"
#include "adic/random.hpp"

namespace adic {

std::string SuiteReport::text() const {
  std::ostringstream s;
  s << "# suite " << suite << " wall " << static_cast<long>(wall_seconds * 1000) << " ms\n";
  s << "seed " << seed << ", " << requested << " cases requested\n";
  if (report_only) {
    s << "report only\n";
  } else {
    s << run << " run, " << passed << " passed: " << (ok() ? "PASS" : "FAIL") << "\n";
  }
  if (failing_seed) {
    s << "first failure: case seed " << *failing_seed << ", shrunk to size " << failing_size << "\n";
    s << "shrink trace:";
    for (const auto& st : shrink_trace) s << " " << st.size << (st.fails ? "F" : "P");
    s << "\ncounterexample: " << counterexample << "\n";
  }
  for (const auto& st : stamps) s << "stamp: " << st << "\n";
  for (const auto& n : notes) s << n << "\n";
  return s.str();
}

nlohmann::json SuiteReport::json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["requested"] = requested;
  j["run"] = run;
  j["passed"] = passed;
  j["report_only"] = report_only;
  j["ok"] = ok();
  j["stamps"] = stamps;
  j["notes"] = notes;
  if (failing_seed) {
    nlohmann::json f;
    f["case_seed"] = *failing_seed;
    f["size"] = failing_size;
    f["counterexample"] = counterexample;
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& st : shrink_trace) trace.push_back({{"size", st.size}, {"fails", st.fails}});
    f["shrink_trace"] = trace;
    j["failure"] = f;
  } else {
    j["failure"] = nullptr;
  }
  return j;
}

namespace {

CaseOutcome guarded(const CaseRunner& run, uint64_t seed, int size) {
  try {
    return run(seed, size);
  } catch (const Error& e) {
    return {false, std::string("error (") + to_string(e.kind()) + "): " + e.what()};
  }
}

}  // namespace

SuiteReport run_cases(const std::string& name, uint64_t seed, size_t count, int max_size, const CaseRunner& run) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.suite = name;
  rep.seed = seed;
  rep.requested = count;
  for (size_t i = 0; i < count; ++i) {
    const uint64_t cs = case_seed(seed, i);
    CaseOutcome out = guarded(run, cs, max_size);
    ++rep.run;
    if (out.passed) {
      ++rep.passed;
      continue;
    }
    if (rep.failing_seed) continue;
    rep.failing_seed = cs;
    rep.failing_size = max_size;
    rep.counterexample = out.detail;
    for (int size = max_size - 1; size >= 1; --size) {
      CaseOutcome smaller = guarded(run, cs, size);
      rep.shrink_trace.push_back({size, !smaller.passed});
      if (smaller.passed) continue;
      rep.failing_size = size;
      rep.counterexample = smaller.detail;
    }
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

namespace {

std::string describe(const FgPresentation& m) {
  return "presentation of rank " + std::to_string(m.rank) + " with " + std::to_string(m.num_relations()) +
         " relations";
}

std::string describe(const FgComplex& c) {
  std::ostringstream s;
  s << "complex in degrees " << c.lo << ".." << c.hi() << " with ranks";
  for (const auto& t : c.terms) s << " " << t.rank << "/" << t.num_relations();
  return s.str();
}

Ring suite_ring(const SuiteOptions& o, uint32_t p, int n, int big_n) { return Ring({o.prime.value_or(p), n, big_n}); }

// dim of a tensor product over A_k from the defining relations x m (x) n = m (x) x n
size_t tensor_dim(const LevelModule& a, const LevelModule& b) {
  if (!a.dim() || !b.dim()) return 0;
  const uint32_t p = a.p();
  MatrixK rel(p, a.dim() * b.dim(), 0);
  for (int i = 0; i < a.ring().vars(); ++i)
    rel = hstack(rel, kron(a.action(i), MatrixK::identity(p, b.dim())) - kron(MatrixK::identity(p, a.dim()), b.action(i)));
  return a.dim() * b.dim() - rank(rel);
}

SuiteReport nakayama_suite(const SuiteOptions& o) {
  return run_cases("nakayama", o.seed, o.count, 3, [&](uint64_t s, int size) -> CaseOutcome {
    Rng rng(s);
    const Ring r = suite_ring(o, 5, 1 + static_cast<int>(s % 2), 5);
    FgComplex c{r, 0, {}, {}};
    size_t expected = 0;
    if (rng.chance(1, 2)) {
      const FgPresentation m = random_presentation(rng, r, static_cast<size_t>(size), static_cast<size_t>(size), 2);
      c = resolve_free_fg(m, r.vars()).complex;
      expected = minimal_generator_count(complete_fg(m).tower.levels[r.precision()]);
    } else {
      // f with entries in m: coker f needs every generator of the target
      const size_t a = 1 + rng.below(size), b = 1 + rng.below(size);
      c = FgComplex{r, -1, {FgPresentation::free(r, a), FgPresentation::free(r, b)},
                    {random_series_matrix(rng, r, b, a, 1, 2)}};
      expected = b;
    }
    const NakayamaGenerators g = nakayama_generators(tower_complex(c), 0);
    bool every = g.generates_at_level.size() == static_cast<size_t>(r.precision() + 1);
    for (bool b : g.generates_at_level) every = every && b;
    const bool ok = g.verified && every && g.generators.cols() == expected;
    return {ok, describe(c) + ": " + std::to_string(g.generators.cols()) + " generators, expected " +
                    std::to_string(expected) + (every ? "" : ", fails to generate at some level")};
  });
}

SuiteReport kunneth_suite(const SuiteOptions& o) {
  return run_cases("kunneth", o.seed, o.count, 2, [&](uint64_t s, int size) -> CaseOutcome {
    Rng rng(s);
    const Ring r = suite_ring(o, 5, 2, 1);
    const LevelComplex m = random_free_level_complex(rng, r, 1, -1, 3, static_cast<size_t>(size));
    const LevelComplex n = random_free_level_complex(rng, r, 1, -2, 3, static_cast<size_t>(size));
    const int i = std::max(profile(m).sup, m.lo), j = std::max(profile(n).sup, n.lo);
    const KunnethWitness w = kunneth_top(m, n, i, j);
    const size_t oracle = tensor_dim(cohomology(m, i).module, cohomology(n, j).module);
    const bool ok = w.ok() && w.total.module.dim() == oracle;
    std::ostringstream d;
    d << "H^" << i << " (x) H^" << j << ": dims " << w.left.module.dim() << ", " << w.right.module.dim()
      << ", total " << w.total.module.dim() << ", expected " << oracle << (w.ok() ? "" : ", map not an isomorphism");
    return {ok, d.str()};
  });
}

SuiteReport conservativity_suite(const SuiteOptions& o) {
  return run_cases("conservativity", o.seed, o.count, 3, [&](uint64_t s, int size) -> CaseOutcome {
    Rng rng(s);
    const Ring r = suite_ring(o, 5, 1 + static_cast<int>(s % 2), 5);
    FgComplex c = random_fg_complex(rng, r, size);
    for (int attempt = 0; attempt < 20 && fg_profile(c).profile.is_zero(); ++attempt) c = random_fg_complex(rng, r, size);
    if (fg_profile(c).profile.is_zero()) return {true, "no nonzero instance drawn"};
    const ConservativityEvidence e = conservativity_probe(c);
    return {e.nonzero(), describe(c) + ": sup " + std::to_string(e.sup) + ", H^sup(A_0 (x)^L M) of dim " +
                             std::to_string(e.tor_dim)};
  });
}

SuiteReport koszul_selfdual_suite(const SuiteOptions& o) {
  return run_cases("koszul_selfdual", o.seed, o.count, 3, [&](uint64_t s, int size) -> CaseOutcome {
    Rng rng(s);
    static const uint32_t primes[] = {2, 5, 101};
    const Ring r({o.prime.value_or(primes[rng.below(3)]), size, 4});
    const int t = rng.between(1, 2);
    const KoszulDual kd = koszul_dual(koszul_powers(r, t));
    return {kd.verified, "n = " + std::to_string(size) + ", powers " + std::to_string(t) + ", p = " +
                             std::to_string(r.p()) + (kd.verified ? "" : ": " + kd.diagnostic)};
  });
}

SuiteReport tau_suite(const SuiteOptions& o) {
  return run_cases("cor_1_11", o.seed, o.count, 2, [&](uint64_t s, int size) -> CaseOutcome {
    Rng rng(s);
    const Ring r = suite_ring(o, 5, 1 + static_cast<int>(s % 2), 5);
    const FgPresentation m = random_presentation(rng, r, static_cast<size_t>(size), 2, 2);
    for (int k = 0; k <= r.precision(); ++k) {
      const TauCheck t = check_tau_bijective(m, k);
      if (!t.bijective)
        return {false, describe(m) + ": tau not bijective at level " + std::to_string(k) + " (" +
                           std::to_string(t.source_dim) + " -> " + std::to_string(t.target_dim) + ")"};
    }
    return {true, describe(m)};
  });
}

SuiteReport splitting_suite(const SuiteOptions& o) {
  return run_cases("splitting", o.seed, o.count, 4, [&](uint64_t s, int size) -> CaseOutcome {
    Rng rng(s);
    const Ring r = suite_ring(o, 5, 1 + static_cast<int>(s % 2), 5);
    const size_t z = 1 + rng.below(static_cast<uint64_t>(size));
    const size_t rk = rng.below(z + 1);
    const IdempotentImage img = idempotent_image(random_idempotent(rng, r, z, rk, 2));
    const SplittingTower sp = lift_splittings(img.free, img.image, img.alpha);
    bool ok = sp.verified;
    for (int k = 0; k <= r.precision() && ok; ++k) {
      ok = (sp.alpha[k] * sp.beta[k]).is_identity();
      if (k < r.precision()) ok = ok && sp.free.transitions[k] * sp.beta[k + 1] == sp.beta[k] * img.image.transitions[k];
    }
    return {ok, "|Z| = " + std::to_string(z) + ", rank " + std::to_string(rk) + (ok ? "" : ": " + sp.diagnostic)};
  });
}

SuiteReport roundtrip_suite(const SuiteOptions& o) {
  return run_cases("matlis_roundtrip", o.seed, o.count, 2, [&](uint64_t s, int size) -> CaseOutcome {
    Rng rng(s);
    static const uint32_t primes[] = {2, 3, 5, 7};
    const Ring r({o.prime.value_or(primes[rng.below(4)]), 1, 6});
    const FgPresentation m = random_presentation(rng, r, static_cast<size_t>(size), 2, 3);
    const MatlisRoundtrip rt = matlis_roundtrip(m, r.precision());
    return {rt.ok(), describe(m) + (rt.ok() ? "" : ": " + rt.back.diagnostic)};
  });
}

// Sum of A/(x^a) pieces with a random in 1..max_a.
std::vector<LevelModule> random_cyclic_pieces(Rng& rng, const Ring& r, int count, int max_a) {
  std::vector<LevelModule> pieces;
  for (int i = 0; i < count; ++i) pieces.push_back(LevelModule::free(r, rng.between(0, max_a - 1), 1));
  return pieces;
}

SuiteReport cofinite_suite(const SuiteOptions& o) {
  return run_cases("cofinite", o.seed, o.count, 4, [&](uint64_t s, int size) -> CaseOutcome {
    Rng rng(s);
    if (s % 3 != 2) {
      const Ring r = suite_ring(o, 5, 1, 8);
      const FgPresentation m = random_presentation(rng, r, 1 + (size > 2), 1, 2);
      const CofinitenessReport c = is_cohomologically_cofinite(telescope_gamma(m, 4));
      return {c.cofinite() && c.vanishes_outside_window, "RGamma of " + describe(m) + ": " + to_string(c.verdict)};
    }
    const Ring r = suite_ring(o, 5, 1, 6);
    const TorsionFamily f = growing_sum_family("random sum", random_cyclic_pieces(rng, r, size + 1, 3), 4);
    const CofinitenessReport c = is_cohomologically_cofinite(f);
    return {c.verdict == CofiniteVerdict::NotCofinite,
            "growing sum over " + std::to_string(size + 1) + " windows: " + to_string(c.verdict)};
  });
}

SuiteReport hartshorne_suite(const SuiteOptions& o) {
  return run_cases("hartshorne_n1", o.seed, o.count, 3, [&](uint64_t s, int size) -> CaseOutcome {
    Rng rng(s);
    const Ring r = suite_ring(o, 5, 1, 6);
    TorsionFamily f;
    bool expect = true;
    switch (s % 3) {
      case 0: {
        const FgPresentation m = random_presentation(rng, r, static_cast<size_t>(size), 2, 3);
        f = constant_family("dual of " + describe(m), matlis_dual_fg(m, 6));
        break;
      }
      case 1: {
        std::vector<LevelModule> pieces;
        for (const auto& piece : random_cyclic_pieces(rng, r, size, 4)) pieces.push_back(piece.relabeled(6));
        f = constant_family("finite sum", ind_from_torsion_module(direct_sum(pieces), 6));
        break;
      }
      default:
        f = growing_sum_family("growing sum", random_cyclic_pieces(rng, r, size + 1, 3), 6);
        expect = false;
    }
    const HartshorneComparison h = hartshorne_compare_n1(f);
    return {h.agree() && h.dual_pipeline == expect, f.name + ": " + h.report};
  });
}

SuiteReport example_suite(const SuiteOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.suite = "example_1_15";
  rep.seed = o.seed;
  rep.requested = 1;
  rep.run = 1;
  rep.report_only = true;
  const Ring r = suite_ring(o, 5, 1, 6);
  const NonCompleteCandidate c = non_complete_h0_candidate(r, 3 + o.seed % 3, 6);
  rep.passed = 1;
  std::istringstream lines(c.report);
  for (std::string line; std::getline(lines, line);) rep.notes.push_back(line);
  rep.stamps.push_back("levels 0..6, window " + std::to_string(3 + o.seed % 3));
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

using SuiteFn = SuiteReport (*)(const SuiteOptions&);

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> r = {
      {"nakayama", nakayama_suite},         {"kunneth", kunneth_suite},
      {"conservativity", conservativity_suite}, {"koszul_selfdual", koszul_selfdual_suite},
      {"cor_1_11", tau_suite},              {"splitting", splitting_suite},
      {"matlis_roundtrip", roundtrip_suite}, {"cofinite", cofinite_suite},
      {"hartshorne_n1", hartshorne_suite},  {"example_1_15", example_suite},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"nakayama", "kunneth",  "conservativity",   "koszul_selfdual",
                                                 "cor_1_11", "splitting", "matlis_roundtrip", "cofinite",
                                                 "hartshorne_n1", "example_1_15"};
  return names;
}

SuiteReport theorem_suite(const std::string& name, const SuiteOptions& opts) {
  auto it = registry().find(name);
  require(it != registry().end(), ErrorKind::InvalidInput, "unknown suite '" + name + "'");
  SuiteReport rep = it->second(opts);
  if (!rep.report_only) rep.stamps.push_back("all checks exact over F_p at the suite's fixed precision");
  return rep;
}

}  // namespace adic
