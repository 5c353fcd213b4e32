// Acceptance run: one PASS/FAIL line per criterion, exact checks, wall-clock limits.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "adic/error.hpp"
#include "adic/matlis.hpp"
#include "adic/nakayama.hpp"
#include "adic/random.hpp"

using namespace adic;

namespace {

constexpr uint64_t kSeed = 20240611;

struct Tally {
  size_t passed = 0, total = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    ++total;
    if (ok) {
      ++passed;
    } else if (failures.size() < 5) {
      failures.push_back(what);
    }
  }
  bool ok() const { return total > 0 && passed == total; }
};

// Runs body, turning library errors into a failed case instead of aborting the criterion.
void guarded(Tally& t, const std::string& what, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    t.check(false, what + ": error (" + to_string(e.kind()) + ") " + e.what());
  }
}

bool all_true(const std::vector<bool>& v) {
  for (bool b : v)
    if (!b) return false;
  return true;
}

// ---- oracles ----

// dim of M (x)_{A_k} N from the relations x m (x) n = m (x) x n.
size_t tensor_dim(const LevelModule& a, const LevelModule& b) {
  if (!a.dim() || !b.dim()) return 0;
  const uint32_t p = a.p();
  MatrixK rel(p, a.dim() * b.dim(), 0);
  for (int i = 0; i < a.ring().vars(); ++i)
    rel = hstack(rel, kron(a.action(i), MatrixK::identity(p, b.dim())) -
                          kron(MatrixK::identity(p, a.dim()), b.action(i)));
  return a.dim() * b.dim() - rank(rel);
}

// dim of coker(A_k^s -> A_k^r) straight from the relation matrix.
size_t coker_dim(const FgPresentation& m, int k) {
  const size_t ambient = m.rank * m.ring().level_dim(k);
  return m.num_relations() ? ambient - rank(m.relations.level_matrix(k)) : ambient;
}

size_t socle_dim(const LevelModule& m) {
  if (!m.dim()) return 0;
  MatrixK stacked(m.p(), 0, m.dim());
  for (const auto& a : m.actions()) stacked = vstack(stacked, a);
  return m.dim() - rank(stacked);
}

bool is_injective(const MatrixK& f) { return rank(f) == f.cols(); }

// Entry is the constant +1 or -1.
int unit_sign(const TruncatedSeries& f) {
  const Ring& r = f.ring();
  if (f == TruncatedSeries::constant(r, 1)) return 1;
  if (f == TruncatedSeries::constant(r, -1)) return -1;
  return 0;
}

bool signed_permutation(const SeriesMatrix& m) {
  if (m.rows() != m.cols()) return false;
  std::vector<int> row_hits(m.rows(), 0);
  for (size_t c = 0; c < m.cols(); ++c) {
    int hits = 0;
    for (size_t r = 0; r < m.rows(); ++r) {
      if (m(r, c).is_zero()) continue;
      if (!unit_sign(m(r, c))) return false;
      ++hits;
      ++row_hits[r];
    }
    if (hits != 1) return false;
  }
  for (int h : row_hits)
    if (h != 1) return false;
  return true;
}

// ---- criteria ----

Tally koszul_correctness() {
  Tally t;
  for (int n = 1; n <= 3; ++n) {
    for (uint32_t p : {2u, 5u, 101u}) {
      const Ring ring({p, n, 4});
      const int big_n = ring.precision();
      const std::string tag = "n = " + std::to_string(n) + ", p = " + std::to_string(p);
      guarded(t, tag, [&] {
        const FgComplex k = koszul_powers(ring, 1).complex;
        for (int i = k.lo; i < 0; ++i) {
          const size_t rk = k.term(i).rank;
          const MatrixK cycles = kernel(k.diff(i).level_matrix(big_n));
          for (int j = 0; j < big_n; ++j) {
            // true cycles land in the boundaries at every level below the kernel level
            const MatrixK projected = ring.free_projection(big_n, j, rk) * cycles;
            const MatrixK bounds = i - 1 >= k.lo ? k.diff(i - 1).level_matrix(j)
                                                 : MatrixK(p, rk * ring.level_dim(j), 0);
            t.check(in_span(bounds, projected), tag + ": H^" + std::to_string(i) + " nonzero at level " +
                                                    std::to_string(j));
            t.check(stable_cohomology(k, i, j, big_n).h.module.dim() == 0,
                    tag + ": stable H^" + std::to_string(i) + " nonzero at level " + std::to_string(j));
          }
        }
        for (int j = 0; j <= big_n; ++j) {
          // H^0 = coker d^{-1} is right exact, so it is read exactly at every level
          const size_t h0 = ring.level_dim(j) - rank(k.diff(-1).level_matrix(j));
          t.check(h0 == 1, tag + ": H^0 of dim " + std::to_string(h0) + " at level " + std::to_string(j));
          if (j < big_n)
            t.check(is_isomorphic(stable_cohomology(k, 0, j, big_n).h.module, LevelModule::residue_field(ring, j)),
                    tag + ": stable H^0 not A_0 at level " + std::to_string(j));
        }
      });
    }
  }
  return t;
}

Tally koszul_self_duality() {
  Tally t;
  for (int n = 1; n <= 3; ++n) {
    for (uint32_t p : {2u, 5u, 101u}) {
      for (int power = 1; power <= 2; ++power) {
        const Ring ring({p, n, 4});
        const std::string tag =
            "n = " + std::to_string(n) + ", p = " + std::to_string(p) + ", power " + std::to_string(power);
        guarded(t, tag, [&] {
          const KoszulComplex k = koszul_powers(ring, power);
          const KoszulDual kd = koszul_dual(k);
          const int64_t shift_sign = n % 2 ? -1 : 1;
          bool shape = kd.dual.lo == 0 && kd.dual.hi() == n && kd.shifted.lo == 0 && kd.shifted.hi() == n;
          for (int d = 0; d < n && shape; ++d) {
            shape = kd.dual.diff(d) == transpose(k.complex.diff(-d - 1)) &&
                    kd.shifted.diff(d) == scaled(k.complex.diff(d - n), shift_sign);
          }
          t.check(shape, tag + ": dual or shifted complex has the wrong differentials");
          bool iso = true;
          for (int d = 0; d <= n && iso; ++d) {
            iso = signed_permutation(kd.iso.at(d));
            if (iso && d < n) iso = kd.iso.at(d + 1) * kd.dual.diff(d) == kd.shifted.diff(d) * kd.iso.at(d);
          }
          t.check(iso, tag + ": iso is not a chain map by signed permutations");
          t.check(kd.verified, tag + ": library verification failed: " + kd.diagnostic);
        });
      }
    }
  }
  return t;
}

Tally kunneth() {
  Tally t;
  const Ring ring({5, 2, 1});
  for (uint64_t c = 0; c < 100; ++c) {
    const std::string tag = "pair " + std::to_string(c);
    guarded(t, tag, [&] {
      Rng rng(case_seed(kSeed, c));
      // free A_1 terms of rank <= 2: dims <= 6
      const LevelComplex m = random_free_level_complex(rng, ring, 1, -1, 3, 2);
      const LevelComplex n = random_free_level_complex(rng, ring, 1, -2, 3, 2);
      const int i = std::max(profile(m).sup, m.lo), j = std::max(profile(n).sup, n.lo);
      const KunnethWitness w = kunneth_top(m, n, i, j);
      const size_t oracle = tensor_dim(cohomology(m, i).module, cohomology(n, j).module);
      const bool iso_ok = w.iso.rows() == oracle && w.iso.cols() == oracle && rank(w.iso) == oracle;
      t.check(w.ok() && iso_ok && w.total.module.dim() == oracle,
              tag + ": total " + std::to_string(w.total.module.dim()) + ", expected " + std::to_string(oracle));
    });
  }
  return t;
}

Tally tau_bijectivity() {
  Tally t;
  for (uint64_t c = 0; c < 50; ++c) {
    const std::string tag = "presentation " + std::to_string(c);
    guarded(t, tag, [&] {
      Rng rng(case_seed(kSeed + 4, c));
      const Ring ring({5, 1 + static_cast<int>(c % 2), 5});
      const FgPresentation m = random_presentation(rng, ring, 2, 2, 2);
      bool ok = true;
      for (int k = 0; k <= 5 && ok; ++k) {
        const TauCheck tc = check_tau_bijective(m, k);
        const size_t expected = coker_dim(m, k);
        ok = tc.bijective && tc.source_dim == expected && tc.target_dim == expected &&
             tc.witness.rows() == expected && tc.witness.cols() == expected && rank(tc.witness) == expected;
      }
      t.check(ok, tag + ": tau not bijective");
    });
  }
  return t;
}

Tally splitting() {
  Tally t;
  for (uint64_t c = 0; c < 30; ++c) {
    const std::string tag = "tower " + std::to_string(c);
    guarded(t, tag, [&] {
      Rng rng(case_seed(kSeed + 5, c));
      const Ring ring({5, 1 + static_cast<int>(c % 2), 5});
      const size_t z = 1 + rng.below(4);
      const size_t rk = rng.below(z + 1);
      const IdempotentImage img = idempotent_image(random_idempotent(rng, ring, z, rk, 2));
      const SplittingTower sp = lift_splittings(img.free, img.image, img.alpha);
      bool ok = sp.alpha.size() == 6 && sp.beta.size() == 6;
      for (int k = 0; k <= 5 && ok; ++k) {
        ok = (sp.alpha[k] * sp.beta[k]).is_identity();
        if (ok && k < 5) {
          ok = sp.free.transitions[k] * sp.beta[k + 1] == sp.beta[k] * img.image.transitions[k] &&
               img.image.transitions[k] * sp.alpha[k + 1] == sp.alpha[k] * sp.free.transitions[k];
        }
      }
      t.check(ok && sp.verified, tag + ": |Z| = " + std::to_string(z) + ", " + sp.diagnostic);
    });
  }
  return t;
}

Tally nakayama() {
  Tally t;
  for (uint64_t c = 0; c < 30; ++c) {
    const std::string tag = "complex " + std::to_string(c);
    guarded(t, tag, [&] {
      Rng rng(case_seed(kSeed + 6, c));
      const Ring ring({5, 1 + static_cast<int>(c % 2), 5});
      FgComplex fc{ring, 0, {}, {}};
      if (c % 2 == 0) {
        FgPresentation m = random_presentation(rng, ring, 2, 2, 2);
        while (coker_dim(m, 0) == 0) m = random_presentation(rng, ring, 2, 2, 2);
        fc = resolve_free_fg(m, ring.vars()).complex;
      } else {
        const size_t a = 1 + rng.below(3), b = 1 + rng.below(3);
        fc = FgComplex{ring, -1, {FgPresentation::free(ring, a), FgPresentation::free(ring, b)},
                       {random_series_matrix(rng, ring, b, a, 1, 2)}};
      }
      const TowerComplex p = tower_complex(fc);
      const NakayamaGenerators g = nakayama_generators(p, 0);
      const TowerModule& top_term = p.terms[static_cast<size_t>(0 - p.lo)];
      const size_t rk = fc.term(0).rank;
      // L_0 = coker of d^{-1} at level 0
      const size_t l0 = rk - rank(fc.diff(-1).level_matrix(0));
      bool ok = g.generators.cols() == l0 && l0 > 0;
      for (int k = 0; k <= 5 && ok; ++k) {
        const LevelModule& pk = top_term.levels[k];
        const MatrixK gens = top_term.transition(top_term.top(), k) * g.generators;
        const MatrixK span = hstack(generated_submodule(pk, gens), fc.diff(-1).level_matrix(k));
        ok = rank(span) == pk.dim();
      }
      t.check(ok && g.verified, tag + ": " + std::to_string(g.generators.cols()) + " generators, L_0 of dim " +
                                    std::to_string(l0));
    });
  }
  return t;
}

Tally conservativity() {
  Tally t;
  for (uint64_t c = 0; c < 200; ++c) {
    const std::string tag = "complex " + std::to_string(c);
    guarded(t, tag, [&] {
      Rng rng(case_seed(kSeed + 7, c));
      const Ring ring({5, 1 + static_cast<int>(c % 2), 5});
      FgComplex m = random_fg_complex(rng, ring, 3);
      while (fg_profile(m).profile.is_zero()) m = random_fg_complex(rng, ring, 3);
      const ConservativityEvidence e = conservativity_probe(m);
      t.check(e.nonzero() && e.agree() && e.sup == fg_profile(m).profile.sup,
              tag + ": H^sup(A_0 (x)^L M) of dim " + std::to_string(e.tor_dim) + " at sup " +
                  std::to_string(e.sup));
    });
  }
  return t;
}

Tally matlis_roundtrip_and_hull() {
  Tally t;
  static const uint32_t primes[] = {2, 3, 5, 7};
  for (uint64_t c = 0; c < 50; ++c) {
    const std::string tag = "presentation " + std::to_string(c);
    guarded(t, tag, [&] {
      Rng rng(case_seed(kSeed + 8, c));
      const Ring ring({primes[c % 4], 1, 6});
      const FgPresentation m = random_presentation(rng, ring, 2, 2, 3);
      const MatlisRoundtrip rt = matlis_roundtrip(m, 6);
      bool dims = true;
      for (int k = 0; k <= 6 && dims; ++k) {
        dims = coker_dim(rt.back.presentation, k) == coker_dim(m, k) &&
               rt.dual.stages[k].dim() == coker_dim(m, k);
      }
      t.check(rt.ok() && dims, tag + ": " + rt.back.diagnostic);
    });
  }
  guarded(t, "J(m)", [&] {
    const Ring ring({5, 1, 8});
    const IndTorsionModule j = injective_hull(ring, 8);
    bool stages = j.stages.size() == 9;
    for (int s = 0; s <= 8 && stages; ++s) {
      stages = j.stages[s].dim() == static_cast<size_t>(s + 1) && socle_dim(j.stages[s]) == 1 &&
               (s == 8 || is_injective(j.transitions[s]));
    }
    t.check(stages, "J(m): stages are not the duals of A_t");
    const BassProfile b = bass_numbers(j, 2);
    t.check(b.all_finite() && b.values() == std::vector<size_t>{1, 0, 0}, "mu(J(m)) = " + b.to_string());
    for (const auto& v : b.mu) t.check(!v.stamp().empty() && v.stable_from >= 0, "mu(J(m)) missing stamp");
  });
  return t;
}

bool stamped(const CofinitenessReport& c) {
  if (c.ext.mu.empty()) return false;
  for (const auto& v : c.ext.mu) {
    if (v.stamp().empty() || v.stages < 2) return false;
    if (c.cofinite() && !v.finite()) return false;
  }
  return true;
}

Tally cofiniteness() {
  Tally t;
  const Ring ring({5, 1, 8});
  guarded(t, "RGamma(A)", [&] {
    const CofinitenessReport c = is_cohomologically_cofinite(telescope_gamma(FgPresentation::free(ring, 1), 4));
    bool values = true;
    for (const auto& v : c.ext.mu) values = values && v.value == (v.degree == 1 ? 1u : 0u);
    t.check(c.cofinite() && c.vanishes_outside_window && values && stamped(c), "RGamma(A): " + c.report);
  });
  for (uint64_t s = 0; s < 20; ++s) {
    const std::string tag = "RGamma(M) " + std::to_string(s);
    guarded(t, tag, [&] {
      Rng rng(case_seed(kSeed + 9, s));
      const FgPresentation m = random_presentation(rng, ring, 2, 1, 2);
      const CofinitenessReport c = is_cohomologically_cofinite(telescope_gamma(m, 4));
      // RHom(A_0, RGamma M) = RHom(A_0, M)
      bool values = true;
      for (const auto& v : c.ext.mu) {
        const TorsionCohomology e = ext_A0(single_presentation(m, 0), v.degree);
        values = values && e.determined && v.value == e.value.h.module.dim();
      }
      t.check(c.cofinite() && c.vanishes_outside_window && values && stamped(c), tag + ": " + c.report);
    });
  }
  guarded(t, "growing window", [&] {
    const Ring r({5, 1, 6});
    const CofinitenessReport c = is_cohomologically_cofinite(growing_window_family(r, 4, 5));
    bool growth = false;
    for (const auto& v : c.ext.mu) {
      if (!v.at_least) continue;
      bool increasing = v.by_window.size() >= 2;
      for (size_t w = 1; w < v.by_window.size(); ++w) increasing = increasing && v.by_window[w] > v.by_window[w - 1];
      growth = growth || (increasing && !v.stamp().empty());
    }
    t.check(c.verdict == CofiniteVerdict::NotCofinite && growth, "growing window: " + c.report);
  });
  return t;
}

std::vector<LevelModule> cyclic_pieces(Rng& rng, const Ring& r, int count, int max_a) {
  std::vector<LevelModule> pieces;
  for (int i = 0; i < count; ++i) pieces.push_back(LevelModule::free(r, rng.between(0, max_a - 1), 1));
  return pieces;
}

Tally hartshorne() {
  Tally t;
  const Ring ring({5, 1, 6});
  for (uint64_t c = 0; c < 30; ++c) {
    const std::string tag = "instance " + std::to_string(c);
    guarded(t, tag, [&] {
      Rng rng(case_seed(kSeed + 10, c));
      TorsionFamily f;
      bool expect = true;
      if (c < 10) {
        const FgPresentation m = random_presentation(rng, ring, 2, 2, 3);
        f = constant_family("D(M)", matlis_dual_fg(m, 6));
      } else if (c < 20) {
        std::vector<LevelModule> pieces;
        for (const auto& piece : cyclic_pieces(rng, ring, 1 + static_cast<int>(c % 3), 4))
          pieces.push_back(piece.relabeled(6));
        f = constant_family("finite sum", ind_from_torsion_module(direct_sum(pieces), 6));
      } else {
        f = growing_sum_family("growing sum", cyclic_pieces(rng, ring, 2 + static_cast<int>(c % 3), 3), 6);
        expect = false;
      }
      const HartshorneComparison h = hartshorne_compare_n1(f);
      t.check(h.agree() && h.dual_pipeline == expect && h.ext_pipeline.cofinite() == expect,
              tag + " (" + f.name + "): " + h.report);
    });
  }
  return t;
}

Tally non_complete_candidate() {
  Tally t;
  guarded(t, "candidate", [&] {
    const Ring ring({5, 1, 6});
    const NonCompleteCandidate c = non_complete_h0_candidate(ring, 4, 6);
    t.check(c.injective_by_level.size() == 7 && all_true(c.injective_by_level), "d not injective at some level");
    bool direct = c.complex.diffs.size() == 1 && c.complex.diffs[0].size() == 7;
    for (int k = 0; k <= 6 && direct; ++k) direct = is_injective(c.complex.diffs[0][k]);
    t.check(direct, "level matrices of d are not injective");
    t.check(c.certificate.verdict == CompletenessVerdict::AdicallyFreeTerms,
            "certificate " + to_string(c.certificate.verdict));
    t.check(c.report.find("consistent with") != std::string::npos, "report lacks the consistency statement");
    t.check(c.report.find("not certified") != std::string::npos, "report does not flag the missing certification");
    t.notes.push_back(c.report);
  });
  return t;
}

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Tally()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Koszul correctness: H^0(K) = A_0, H^{<0}(K) = 0, n 1..3, p 2/5/101, N 4", 5, koszul_correctness},
      {2, "Koszul self-duality K^dual = K[-n] entrywise, n <= 3", 1, koszul_self_duality},
      {3, "top-degree Kunneth isomorphism, 100 pairs, n 2, p 5", 30, kunneth},
      {4, "tau bijectivity, 50 presentations, n <= 2, N 5, k <= 5", 20, tau_bijectivity},
      {5, "splitting lifts of 30 idempotent images, |Z| <= 4, k <= 5", 20, splitting},
      {6, "Nakayama generators, 30 complexes, every level k <= 5", 30, nakayama},
      {7, "conservativity, 200 nonzero complexes", 60, conservativity},
      {8, "Matlis roundtrip, 50 presentations, and mu(J(m)) = (1,0,0), n 1", 20, matlis_roundtrip_and_hull},
      {9, "cofiniteness of RGamma(A), 20 RGamma(M), not of the growing window", 60, cofiniteness},
      {10, "one-variable cofiniteness pipelines agree, 20 + 10 instances", 30, hartshorne},
      {11, "non-complete H0 candidate diagnostic, levels <= 6", 10, non_complete_candidate},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Tally t;
    try {
      t = c.run();
    } catch (const std::exception& e) {
      t.check(false, std::string("uncaught: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = t.ok() && in_time;
    if (!pass) ++failed;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s (limit %.0f s)", secs, c.limit_s);
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << t.passed << "/" << t.total
              << " checks, " << timing << "\n";
    for (const auto& f : t.failures) std::cout << "    " << f << "\n";
    if (!in_time) std::cout << "    over the time limit\n";
    for (const auto& n : t.notes) {
      std::istringstream lines(n);
      for (std::string line; std::getline(lines, line);) std::cout << "    | " << line << "\n";
    }
  }
  std::cout << (failed ? "FAILED " + std::to_string(failed) + " of " : "all ") << criteria.size()
            << " criteria" << (failed ? "" : " passed") << "\n";
  return failed ? 1 : 0;
}
