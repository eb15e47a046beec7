// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Each criterion pins its tolerances and time limits in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "qwst/qwst.hpp"

using namespace qwst;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, double time_limit_s,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    const auto t0 = Clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (time_limit_s > 0 && secs > time_limit_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("exceeded time limit of ") +
                  std::to_string(time_limit_s) + " s";
    }
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number,
                label.c_str(), secs, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

struct Corpus {
    std::vector<Graph> graphs;
    std::vector<WeightMatrix> weights;
};

Corpus make_corpus(int count) {
    Corpus c;
    std::mt19937 rng(987654321);
    for (int i = 0; i < count; ++i) {
        Graph g = testing::random_connected_graph(rng, 8);
        c.weights.push_back(testing::random_normalized_weights(g, rng));
        c.graphs.push_back(std::move(g));
    }
    return c;
}

}  // namespace

int main() {
    criterion(1, "Figure 1 reproduction: PST 0 -> 3 at t = 6 on the 3-pair cocktail party", 1.0,
              [](std::string& detail) {
                  FamilyInstance fi = cocktail_party(3);
                  TransitionMatrix u(fi.graph, fi.weights);
                  const double f = fidelity(u, 0, 3, 6);
                  if (f < 1.0 - 1e-9) {
                      detail = "fidelity(6) = " + std::to_string(f);
                      return false;
                  }
                  SpectralData sd = decompose(fi.h);
                  CospectralityCertificate cert = strong_cospectrality(sd, 0, 3);
                  if (!m_strong_cospectrality(cert)) {
                      detail = "no m-strong certificate";
                      return false;
                  }
                  TransferVerdict v = pst_check(fi.graph, fi.h, cert, 6, &fi.weights);
                  if (v.kind != TransferVerdict::Kind::Pst) {
                      detail = "pst_check: " + v.reason;
                      return false;
                  }
                  return true;
              });

    Corpus corpus = make_corpus(100);

    criterion(2, "spectral correspondence on 100 random weighted graphs (n <= 8)", 30.0,
              [&](std::string& detail) {
                  for (size_t i = 0; i < corpus.graphs.size(); ++i) {
                      const Graph& g = corpus.graphs[i];
                      const WeightMatrix& w = corpus.weights[i];
                      TransitionMatrix u(g, w);
                      SpectralData sd = decompose(hermitian_from_weights(g, w));
                      const CMatrix n = tail_incidence(g, w, u.arc_space());
                      auto spaces = unitary_eigenspaces(u.dense());
                      for (const auto& s : spaces) {
                          CMatrix nfn = n * s.projection * n.adjoint();
                          if (std::fabs(std::sin(s.theta)) > 1e-9) {
                              double best = 1e9;
                              int gi = -1;
                              for (int k = 0; k < sd.group_count(); ++k)
                                  if (std::fabs(std::cos(s.theta) - sd.eigenvalues[k]) < best) {
                                      best = std::fabs(std::cos(s.theta) - sd.eigenvalues[k]);
                                      gi = k;
                                  }
                              if (best > 1e-9) {
                                  detail = "graph " + std::to_string(i) +
                                           ": unmatched eigenphase, gap " + std::to_string(best);
                                  return false;
                              }
                              if ((nfn - sd.projections[gi] * cplx(0.5)).max_abs() > 1e-9) {
                                  detail = "graph " + std::to_string(i) + ": N F N* != E/2";
                                  return false;
                              }
                          } else {
                              const double target = std::cos(s.theta) > 0 ? 1.0 : -1.0;
                              const int gi = sd.group_of(target);
                              const double err = gi >= 0
                                                     ? (nfn - sd.projections[gi]).max_abs()
                                                     : nfn.max_abs();
                              if (err > 1e-9) {
                                  detail = "graph " + std::to_string(i) +
                                           ": N F N* != E at theta in {0, pi}";
                                  return false;
                              }
                          }
                      }
                  }
                  return true;
              });

    criterion(3, "three-inequality chain on the corpus for t in 0..20", 60.0,
              [&](std::string& detail) {
                  std::mt19937 rng(24680);
                  for (size_t i = 0; i < corpus.graphs.size(); ++i) {
                      const Graph& g = corpus.graphs[i];
                      TransitionMatrix u(g, corpus.weights[i]);
                      auto spaces = unitary_eigenspaces(u.dense());
                      std::uniform_int_distribution<int> vd(0, g.vertex_count() - 1);
                      const int a = vd(rng), b = vd(rng);
                      WalkState x = vertex_state(u, a), y = vertex_state(u, b);
                      double s1 = 0, s2 = 0, sx = 0, sy = 0;
                      for (const auto& s : spaces) {
                          WalkState fx = s.projection * x, fy = s.projection * y;
                          s1 += std::abs(inner(fx, fy));
                          s2 += norm2(fx) * norm2(fy);
                          sx += norm2(fx) * norm2(fx);
                          sy += norm2(fy) * norm2(fy);
                      }
                      const double s3 = std::sqrt(sx) * std::sqrt(sy);
                      if (!(s1 <= s2 + 1e-9 && s2 <= s3 + 1e-9 && s3 <= 1.0 + 1e-9)) {
                          detail = "graph " + std::to_string(i) + ": chain broken";
                          return false;
                      }
                      WalkState cur = x;
                      for (int t = 0; t <= 20; ++t) {
                          if (std::abs(inner(cur, y)) > s1 + 1e-9) {
                              detail = "graph " + std::to_string(i) + ": |<U^t x, y>| above bound";
                              return false;
                          }
                          cur = u.apply(cur);
                      }
                  }
                  return true;
              });

    std::vector<std::pair<std::string, FamilyInstance>> pgst_cases;
    criterion(4, "PGST deciders across the families (each decision < 5 s)", 0.0,
              [&](std::string& detail) {
                  auto decide = [&detail](const std::string& name, const FamilyInstance& fi,
                                          TransferVerdict::Kind want) {
                      const auto t0 = Clock::now();
                      TransferVerdict v = pgst_decide(fi.graph, fi.h, fi.pair_a, fi.pair_b, 0);
                      const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
                      if (secs > 5.0) {
                          detail = name + ": decision took " + std::to_string(secs) + " s";
                          return false;
                      }
                      if (v.kind != want) {
                          detail = name + ": verdict " + kind_name(v.kind) + " (" + v.reason + ")";
                          return false;
                      }
                      return true;
                  };
                  for (int n = 4; n <= 10; ++n) {
                      FamilyInstance fi = cocktail_party(n);
                      if (!decide("cocktail(" + std::to_string(n) + ")", fi,
                                  TransferVerdict::Kind::Pgst))
                          return false;
                      pgst_cases.emplace_back("cocktail(" + std::to_string(n) + ")", fi);
                  }
                  for (int p : {3, 5, 7}) {
                      FamilyInstance fi = hypercube(p);
                      if (!decide("hypercube(" + std::to_string(p) + ")", fi,
                                  TransferVerdict::Kind::Pgst))
                          return false;
                      pgst_cases.emplace_back("hypercube(" + std::to_string(p) + ")", fi);
                  }
                  {
                      FamilyInstance fi = seidel_complete(3);
                      if (!decide("seidel(3)", fi, TransferVerdict::Kind::Pgst)) return false;
                      pgst_cases.emplace_back("seidel(3)", fi);
                  }
                  for (int m : {2, 4, 6}) {
                      FamilyInstance fi = k4_family(m, 5);
                      if (!decide("k4(" + std::to_string(m) + ",5)", fi,
                                  TransferVerdict::Kind::Pgst))
                          return false;
                      pgst_cases.emplace_back("k4(" + std::to_string(m) + ",5)", fi);
                  }
                  {
                      FamilyInstance fi = hypercube(4);
                      if (!decide("hypercube(4)", fi, TransferVerdict::Kind::Undecided))
                          return false;
                  }
                  return true;
              });

    criterion(5, "numeric PGST evidence: sweeps reach 0.99 by t <= 1e5 (families <= |Q5|)",
              300.0, [&](std::string& detail) {
                  for (const auto& [name, fi] : pgst_cases) {
                      if (fi.graph.vertex_count() > 32) continue;
                      TransitionMatrix u(fi.graph, fi.weights);
                      SweepResult sw = fidelity_sweep(u, fi.pair_a, fi.pair_b, 100000);
                      if (sw.best < 0.99) {
                          detail = name + ": best " + std::to_string(sw.best) + " at t = " +
                                   std::to_string(sw.best_t);
                          return false;
                      }
                  }
                  return !pgst_cases.empty();
              });

    criterion(6, "PST constructions: hadamard(s=2) at t = prod q_j; C4 at t = 2", 30.0,
              [](std::string& detail) {
                  FamilyInstance h2 = hadamard_bipartite(2);
                  TransitionMatrix u2(h2.graph, h2.weights);
                  const long long t = hadamard_pst_time(h2);
                  const double f = fidelity(u2, 0, 1, t);
                  if (f < 1.0 - 1e-9) {
                      detail = "hadamard fidelity(" + std::to_string(t) + ") = " + std::to_string(f);
                      return false;
                  }
                  FamilyInstance c2 = cocktail_party(2);
                  TransitionMatrix uc(c2.graph, c2.weights);
                  if (fidelity(uc, 0, 2, 2) < 1.0 - 1e-9) {
                      detail = "C4 fidelity(2) below 1";
                      return false;
                  }
                  auto spaces = unitary_eigenspaces(uc.dense());
                  TransferVerdict v =
                      abstract_pst_check(spaces, vertex_state(uc, 0), vertex_state(uc, 2), 2);
                  if (v.kind != TransferVerdict::Kind::Pst) {
                      detail = "C4 oracle check: " + v.reason;
                      return false;
                  }
                  return true;
              });

    criterion(7, "cyclic covers: doubling law d = 4..9, fixture pair supports, pgst d in {5,7}",
              600.0, [](std::string& detail) {
                  std::vector<SpectralData> sds;
                  for (int d = 4; d <= 9; ++d) sds.push_back(decompose(cyclic_cover_family(d).h));
                  for (int d = 5; d <= 9; ++d) {
                      const SpectralData& sp = sds[d - 5];
                      const SpectralData& sc = sds[d - 4];
                      for (double lam : sp.eigenvalues) {
                          const double un = lam * (d - 1);
                          const double nx = std::sqrt(un * un + 1.0);
                          bool hit_p = false, hit_m = false;
                          for (double mu : sc.eigenvalues) {
                              if (std::fabs(mu * d - nx) <= 1e-9) hit_p = true;
                              if (std::fabs(mu * d + nx) <= 1e-9) hit_m = true;
                          }
                          if (!hit_p || !hit_m) {
                              detail = "doubling law broken at d = " + std::to_string(d);
                              return false;
                          }
                      }
                  }
                  for (int d = 4; d <= 9; ++d) {
                      const SpectralData& sd = sds[d - 4];
                      CospectralityCertificate cert = strong_cospectrality(sd, 1, 10);
                      if (!cert.cospectral || !m_strong_cospectrality(cert) || cert.m != 2) {
                          detail = "fixture pair not 2-strongly cospectral at d = " +
                                   std::to_string(d);
                          return false;
                      }
                      std::multiset<long long> c0, c1;
                      for (size_t i = 0; i < cert.support.size(); ++i)
                          (cert.residues[i] == 0 ? c0 : c1)
                              .insert(std::llround(cert.support_values[i] * d * 1e7));
                      auto key = [](double x) { return std::llround(x * 1e7); };
                      std::multiset<long long> w0{key(std::sqrt(d)), key(-std::sqrt(d))};
                      std::multiset<long long> w1{key(std::sqrt(d - 4.0)), key(-std::sqrt(d - 4.0)),
                                                  key(std::sqrt(d + 8.0)), key(-std::sqrt(d + 8.0))};
                      if (d == 4) w1 = {key(0.0), key(std::sqrt(12.0)), key(-std::sqrt(12.0))};
                      if (c0 != w0 || c1 != w1) {
                          detail = "fixture supports wrong at d = " + std::to_string(d);
                          return false;
                      }
                  }
                  for (int d : {5, 7}) {
                      FamilyInstance fi = cyclic_cover_family(d);
                      TransferVerdict v = pgst_decide(fi.graph, fi.h, 1, 10, 0);
                      if (v.kind != TransferVerdict::Kind::Pgst) {
                          detail = "cyclic(" + std::to_string(d) + "): " + kind_name(v.kind) +
                                   " (" + v.reason + ")";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(8, "number theory: square-free laws, prime lemma, Erdos consequence", 60.0,
              [](std::string& detail) {
                  for (long long n = 1; n <= 1000000; ++n) {
                      const long long sf = squarefree_part(n);
                      if (n % sf != 0 || !is_perfect_square(n / sf)) {
                          detail = "division law fails at n = " + std::to_string(n);
                          return false;
                      }
                  }
                  // square-freeness itself, exhaustive on the same range
                  for (long long n = 1; n <= 1000000; ++n) {
                      const long long sf = squarefree_part(n);
                      for (long long p = 2; p * p <= sf; ++p)
                          if (sf % (p * p) == 0) {
                              detail = "square factor survives at n = " + std::to_string(n);
                              return false;
                          }
                  }
                  std::vector<long long> sftab(2001);
                  for (long long n = 1; n <= 2000; ++n) sftab[n] = squarefree_part(n);
                  for (long long m = 1; m <= 2000; ++m)
                      for (long long n = 1; n <= 2000; ++n)
                          if ((sftab[m] == sftab[n]) != is_perfect_square(m * n)) {
                              detail = "product law fails at (" + std::to_string(m) + "," +
                                       std::to_string(n) + ")";
                              return false;
                          }
                  for (long long p = 3; p <= 100; p += 2) {
                      bool prime = true;
                      for (long long d = 2; d * d <= p; ++d)
                          if (p % d == 0) prime = false;
                      if (!prime) continue;
                      for (long long j = 1; j <= (p - 1) / 2; ++j)
                          for (long long k = j + 1; k <= (p - 1) / 2; ++k)
                              if (squarefree_part(j * (p - j)) == squarefree_part(k * (p - k))) {
                                  detail = "prime lemma fails at p = " + std::to_string(p);
                                  return false;
                              }
                  }
                  for (long long n = 1; n <= 1000000; ++n)
                      if (is_perfect_square(n * (n + 1))) {
                          detail = "n(n+1) square at n = " + std::to_string(n);
                          return false;
                      }
                  return true;
              });

    criterion(9, "property suite: verdict symmetry, cospectrality necessity, abstract PST oracle",
              120.0, [&](std::string& detail) {
                  for (const auto& [name, fi] : pgst_cases) {
                      if (fi.graph.vertex_count() > 32) continue;
                      TransferVerdict ab = pgst_decide(fi.graph, fi.h, fi.pair_a, fi.pair_b, 0);
                      TransferVerdict ba = pgst_decide(fi.graph, fi.h, fi.pair_b, fi.pair_a, 0);
                      if (ab.kind != ba.kind) {
                          detail = name + ": verdict not symmetric";
                          return false;
                      }
                  }
                  std::mt19937 rng(13572468);
                  int abstract_checks = 0;
                  for (int i = 0; i < 20; ++i) {
                      const Graph& g = corpus.graphs[i];
                      TransitionMatrix u(g, corpus.weights[i]);
                      auto spaces = unitary_eigenspaces(u.dense());
                      std::uniform_int_distribution<int> vd(0, g.vertex_count() - 1);
                      const int a = vd(rng), b = vd(rng);
                      WalkState x = vertex_state(u, a), y = vertex_state(u, b);
                      // section-4 bound governs every t when not strongly cospectral
                      double bound = 0.0;
                      bool cosp = true;
                      for (const auto& s : spaces) {
                          WalkState fx = s.projection * x, fy = s.projection * y;
                          bound += std::abs(inner(fx, fy));
                          const double nx = norm2(fx), ny = norm2(fy);
                          if (std::fabs(nx - ny) > 1e-9) cosp = false;
                      }
                      WalkState cur = x;
                      for (long long t = 0; t <= 50; ++t) {
                          const double f = std::abs(inner(cur, y));
                          if (!cosp && f > bound + 1e-9) {
                              detail = "graph " + std::to_string(i) + ": sweep exceeds bound";
                              return false;
                          }
                          const bool pst =
                              abstract_pst_check(spaces, x, y, t).kind ==
                              TransferVerdict::Kind::Pst;
                          if (pst != (f >= 1.0 - 1e-9)) {
                              detail = "graph " + std::to_string(i) +
                                       ": abstract check disagrees with fidelity at t = " +
                                       std::to_string(t);
                              return false;
                          }
                          ++abstract_checks;
                          cur = u.apply(cur);
                      }
                  }
                  return abstract_checks > 0;
              });

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
