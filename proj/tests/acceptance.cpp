// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "support.hpp"

using namespace polytile;

namespace {

constexpr double kLine3Seconds = 1.0;
constexpr double kInstanceSeconds = 60.0;
constexpr double kGraphSeconds = 10.0;
constexpr int kNetInstances = 200;
constexpr int kSubspaces = 1000;
constexpr int kGraphs = 100;
constexpr int kHulls = 200;
const std::vector<std::int64_t> kDilations{1, 2, 3};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool passed = true;
  std::string detail;
  std::string failure;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) {
      passed = false;
      failure = what;
    }
  }
};

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <class T>
std::vector<T> sorted(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// ---------------------------------------------------------------------------
// Shared net corpus: n = types - 1 <= 3, r = dim - 1 <= 4, |H| <= 12.

struct Instance {
  std::uint64_t seed = 0;
  RandomNetOptions opt;
  bool twisted = false;
};

std::vector<Instance> net_corpus() {
  std::vector<Instance> out;
  for (std::uint64_t seed = 1; out.size() < static_cast<std::size_t>(kNetInstances); ++seed) {
    Instance in;
    in.seed = seed;
    in.opt.types = 2 + seed % 3;
    in.opt.dim = 1 + (seed / 3) % 5;
    in.opt.max_offset = in.opt.types == 4 ? 2 : 3;
    in.opt.max_vertices = 12;
    in.twisted = seed % 2 == 0;
    out.push_back(in);
  }
  return out;
}

template <ExactField F>
NetPresentation<F> build(const F& field, const Instance& in) {
  auto net = generate_random(field, in.seed, in.opt).second;
  return in.twisted ? twist(net, in.seed) : net;
}

std::string describe(const Instance& in) {
  std::ostringstream s;
  s << "seed " << in.seed << " (types " << in.opt.types << ", dim " << in.opt.dim
    << (in.twisted ? ", twisted)" : ")");
  return s.str();
}

// ---------------------------------------------------------------------------

Outcome line3_instance() {
  Outcome out;
  const RationalField q;
  auto t0 = Clock::now();
  auto net = generate_monomial(q, fixtures::line3());
  out.require(net.vertices == VertexSet{{0, 0}, {1, 0}, {2, 0}}, "H differs from {z0, z1, z2}");
  out.require(verify(net).passed(), "verify failed");

  const std::vector<std::vector<std::int64_t>> listed_mu{
      {0, 1, 0, 1, 0, 1, 0, 2}, {0, 0, 0, 1, 0, 0, 1, 2}, {0, 0, 0, 0, 1, 1, 1, 2}};
  const std::vector<std::vector<std::vector<std::int64_t>>> listed_vertices{
      {{2, 0, 0}, {1, 1, 0}, {1, 0, 1}},
      {{1, 0, 1}, {1, 1, 0}, {0, 1, 1}, {0, 2, 0}},
      {{0, 0, 2}, {0, 1, 1}, {1, 0, 1}}};
  auto pairs = vertex_pairs(net);
  for (std::size_t v = 0; v < 3; ++v) {
    auto t = oracle::tables_q(oracle::vertex_rows(net, v), 3, 2);
    const std::string z = "z" + std::to_string(v);
    out.require(t.mu == listed_mu[v], "oracle mu table for " + z + " differs from the listed table");
    out.require(pairs[v].mu.values() == t.mu, "mu table for " + z);
    out.require(pairs[v].mu_star.values() == t.mu_star, "mu* table for " + z);
    out.require(sorted(polytope_vertices(pairs[v])) == sorted(listed_vertices[v]), "polytope vertices of " + z);
    out.require(sorted(oracle::integer_points(t.mu, t.mu_star, 3, 2)) == sorted(listed_vertices[v]),
                "oracle lattice points of " + z);
  }
  out.require(extreme_vertices(net.vertices) == VertexSet{{0, 0}, {2, 0}}, "extreme vertices");

  auto chow = chow_class(net);
  out.require(chow.is_partition(), "Chow class is not a partition");
  out.require(chow.sets == std::vector<std::vector<std::size_t>>{{0}, {1}, {2}}, "M_v are not singletons");
  if (chow.entries.size() == 3)
    for (std::size_t v = 0; v < 3; ++v) {
      std::vector<std::int64_t> e(3, 0);
      e[v] = 1;
      out.require(chow.entries[chow.sets[v].front()].q == e, "M_z" + std::to_string(v));
    }

  auto rc = reduction_complex(net);
  out.require(rc.consistent && rc.simplices == std::vector<Mask>{0b001, 0b010, 0b100, 0b011, 0b110},
              "reduction complex is not the path z0 - z1 - z2");
  out.require(tiling_certificate(net, kDilations).passed(), "tiling certificate failed");
  const double s = seconds_since(t0);
  out.require(s < kLine3Seconds, "slower than 1 s");
  std::ostringstream d;
  d << "tables, vertices, extremes, M_v, complex match the oracle; " << s << " s";
  out.detail = d.str();
  return out;
}

// Everything integer-valued about a net, for comparing fields and reruns.
template <class Net, class Pairs, class Cert>
std::string integer_report(const Net& net, const Pairs& pairs, const Cert& cert) {
  Json mus = Json::array();
  for (const auto& p : pairs) mus.push_back({{"mu", p.mu.values()}, {"mu_star", p.mu_star.values()}});
  Json clauses = Json::array();
  for (const auto& c : cert.clauses) clauses.push_back({c.name, c.passed});
  return Json{{"vertices", net.vertices},
              {"pairs", mus},
              {"clauses", clauses},
              {"chow", chow_class_from_pairs(pairs, net.ids).to_json()},
              {"complex", reduction_complex(net).simplices}}
      .dump();
}

struct CorpusRun {
  Outcome tiling, chow, faces;
  double slowest = 0;
  std::size_t largest = 0;
  // Per instance, for the field and rerun checks.
  std::vector<std::string> reports, certificates, nets;
};

CorpusRun corpus_checks(const std::vector<Instance>& corpus) {
  CorpusRun run;
  const RationalField q;
  std::size_t two_gons = 0, faces = 0;
  for (const auto& in : corpus) {
    const std::string who = describe(in);
    auto t0 = Clock::now();
    auto net = build(q, in);
    run.largest = std::max(run.largest, net.size());
    auto cert = tiling_certificate(net, kDilations);
    const double s = seconds_since(t0);
    run.slowest = std::max(run.slowest, s);
    run.tiling.require(cert.passed(), "certificate failed for " + who);
    for (auto name : {"simplicity", "separations", "completeness", "coverage t=1", "coverage t=2", "coverage t=3"})
      run.tiling.require(cert.find(name) != nullptr, std::string("missing clause ") + name + " for " + who);
    run.tiling.require(s < kInstanceSeconds, "over 60 s for " + who);

    auto pairs = vertex_pairs(net);
    run.reports.push_back(integer_report(net, pairs, cert));
    run.certificates.push_back(cert.to_json().dump());
    run.nets.push_back(to_json(net).dump());
    auto chow = chow_class_from_pairs(pairs, net.ids);
    const auto h = static_cast<std::int64_t>(net.size());
    run.chow.require(chow.is_partition(), "M_v overlap or miss a point for " + who);
    run.chow.require(static_cast<std::int64_t>(chow.entries.size()) == binomial(chow.r + h - 1, h - 1),
                     "Omega_r size for " + who);

    auto polys = polygons(net.vertices);
    for (std::size_t v = 0; v < net.size(); ++v) {
      auto rep = faces_meeting_interior(net, v, polys, pairs[v].mu);
      faces += rep.faces.size();
      run.faces.require(rep.bijective, "faces/polygons not bijective at " + net.ids[v] + " for " + who);
    }
    for (const auto& poly : polys) {
      if (poly.size() != 2) continue;
      ++two_gons;
      const std::size_t v = poly.members[0], u = poly.members[1];
      auto pi = induced_partition(poly, v, net.vertices);
      auto mu_delta = modular_pair_of(polygon_space(net, poly)).mu;
      run.faces.require(split(pairs[v].mu, pi) == mu_delta, "split(mu_v, pi) != mu_Delta for " + who);
      run.faces.require(split(pairs[u].mu, pi.complement()) == mu_delta, "split(mu_u, pi^c) != mu_Delta for " + who);
    }
  }
  std::ostringstream d;
  d << corpus.size() << " instances, |H| <= " << run.largest << ", slowest " << run.slowest << " s";
  run.tiling.detail = d.str();
  run.chow.detail = std::to_string(corpus.size()) + " instances, every multiplicity 1";
  run.faces.detail = std::to_string(faces) + " interior faces, " + std::to_string(two_gons) + " 2-gons";
  return run;
}

// ---------------------------------------------------------------------------

template <ExactField F>
Subspace<F> random_subspace(const F& field, std::mt19937_64& rng, std::size_t h, std::size_t d) {
  auto rows = oracle::random_rows(rng, h, d, d);
  return Subspace<F>::span(field, Ambient::uniform(h, d), fixtures::mat(field, rows));
}

bool simplicity_hypothesis(const SetFn& mu_star, std::size_t h) {
  const Mask full = full_mask(h);
  bool nonzero = true, attained = false;
  for (std::size_t v = 0; v < h; ++v) {
    nonzero = nonzero && mu_star(bit(v)) != 0;
    attained = attained || mu_star(bit(v)) == mu_star(full);
  }
  return nonzero && attained;
}

std::pair<Outcome, Outcome> subspace_checks() {
  Outcome split_ok, monotone;
  const RationalField q;
  const PrimeField fp;
  std::mt19937_64 rng(2024);
  std::size_t partitions = 0, hypothesis = 0;
  for (int trial = 0; trial < kSubspaces; ++trial) {
    const std::size_t h = 1 + trial % 4, d = 1 + (trial / 4) % 4;
    auto rows = oracle::random_rows(rng, h, d, d);
    auto amb = Ambient::uniform(h, d);
    auto check = [&](const auto& field) {
      using Field = std::decay_t<decltype(field)>;
      auto w = Subspace<Field>::span(field, amb, fixtures::mat(field, rows));
      auto pair = modular_pair_of(w);
      oracle::ordered_partitions(h, [&](const std::vector<Mask>& parts) {
        OrderedPartition pi{parts};
        ++partitions;
        auto lhs = modular_pair_of(split_subspace(w, pi));
        split_ok.require(lhs.mu == split(pair.mu, pi), "trial " + std::to_string(trial));
        split_ok.require(lhs.mu_star == adjoint(split(pair.mu, pi)), "adjoint, trial " + std::to_string(trial));
      });
      monotone.require(is_nondecreasing(pair.mu) && is_nondecreasing(pair.mu_star),
                    "not nondecreasing, trial " + std::to_string(trial));
      if (simplicity_hypothesis(pair.mu_star, h)) {
        ++hypothesis;
        monotone.require(is_simple(pair.mu), "hypothesis holds but not simple, trial " + std::to_string(trial));
      }
    };
    check(q);
    check(fp);
  }
  split_ok.detail = std::to_string(kSubspaces) + " subspaces x 2 fields, " + std::to_string(partitions) + " partitions";
  monotone.detail = std::to_string(hypothesis) + " of " + std::to_string(2 * kSubspaces) + " runs meet the hypothesis";
  return {split_ok, monotone};
}

// ---------------------------------------------------------------------------

Graph random_graph(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size(1, 6);
  const std::size_t n = size(rng);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng), v);
  std::uniform_int_distribution<std::size_t> extra(0, 10 - edges.size()), pick(0, n - 1);
  for (std::size_t k = n > 1 ? extra(rng) : 0; k > 0; --k) {
    auto a = pick(rng), b = pick(rng);
    if (a != b) edges.emplace_back(a, b);
  }
  return Graph(n, edges);
}

// D is a-reduced iff D >= 0 away from a and every nonempty S avoiding a has a
// vertex that would go into debt if S fired.
bool reduced_brute(const Graph& g, const Divisor& d, std::size_t a) {
  const std::size_t n = g.vertices();
  for (std::size_t u = 0; u < n; ++u)
    if (u != a && d[u] < 0) return false;
  for (Mask s = 1; s < (Mask{1} << n); ++s) {
    if (has_bit(s, a)) continue;
    bool debt = false;
    for (std::size_t u = 0; u < n && !debt; ++u) {
      if (!has_bit(s, u)) continue;
      std::int64_t out = 0;
      for (std::size_t w = 0; w < n; ++w)
        if (!has_bit(s, w) && w != u) out += g.multiplicity(u, w);
      debt = d[u] < out;
    }
    if (!debt) return false;
  }
  return true;
}

Outcome chipfire_checks() {
  Outcome out;
  std::mt19937_64 rng(7);
  double slowest = 0;
  std::size_t members = 0;
  for (int trial = 0; trial < kGraphs; ++trial) {
    auto g = random_graph(rng);
    const std::size_t n = g.vertices();
    Divisor d(n, 0);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (auto k = std::uniform_int_distribution<int>(0, 6)(rng); k > 0; --k) ++d[pick(rng)];
    auto t0 = Clock::now();
    auto ls = linear_system(g, d);
    members += ls.size();
    auto ex = extreme_vertices(linear_system_vertices(ls));
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<Divisor> reduced;
      for (const auto& m : ls)
        if (reduced_brute(g, m.divisor, a)) reduced.push_back(m.divisor);
      out.require(reduced.size() == 1, "reduced divisor not unique, graph " + std::to_string(trial));
      std::size_t hits = 0;
      for (const auto& m : ls)
        if (m.coords == ex[a]) {
          ++hits;
          out.require(!reduced.empty() && m.divisor == reduced.front(),
                      "extreme vertex is not the reduced divisor, graph " + std::to_string(trial));
        }
      out.require(hits == 1, "extreme vertex missing from the linear system, graph " + std::to_string(trial));
    }
    const double s = seconds_since(t0);
    slowest = std::max(slowest, s);
    out.require(s < kGraphSeconds, "over 10 s, graph " + std::to_string(trial));
  }
  std::ostringstream det;
  det << kGraphs << " graphs, " << members << " divisors, slowest " << slowest << " s";
  out.detail = det.str();
  return out;
}

// ---------------------------------------------------------------------------

Outcome hull_checks() {
  Outcome out;
  std::mt19937_64 rng(11);
  std::size_t largest = 0;
  for (int trial = 0; trial < kHulls; ++trial) {
    const std::size_t types = 2 + trial % 3;
    std::uniform_int_distribution<int> size(1, 5), coord(0, 3);
    VertexSet s;
    for (int k = size(rng); k > 0; --k) {
      Vertex v(types);
      for (auto& x : v) x = coord(rng);
      s.push_back(normalize(v));
    }
    auto p = hull(s);
    largest = std::max(largest, p.size());
    auto ex = extreme_vertices(p);
    out.require(ex.size() == types, "wrong number of extreme vertices, hull " + std::to_string(trial));
    for (std::size_t a = 0; a < types && a < ex.size(); ++a) {
      const Mask others = full_mask(types) & ~bit(a);
      std::size_t count = 0;
      for (const auto& v : p) {
        std::size_t cone = 0;
        for (const auto& u : p) cone += in_cone(v, others, u) ? 1 : 0;
        if (cone == 1) {
          ++count;
          out.require(v == ex[a], "cone-minimal vertex differs from e_a, hull " + std::to_string(trial));
        }
        out.require(!has_bit(essential_type(v, ex[a]), a), "path to e_a uses type a, hull " + std::to_string(trial));
      }
      out.require(count == 1, "extreme vertex not unique, hull " + std::to_string(trial));
    }
  }
  out.detail = std::to_string(kHulls) + " hulls, largest " + std::to_string(largest) + " vertices";
  return out;
}

// ---------------------------------------------------------------------------

// Compares against the rational run recorded by corpus_checks: the same net
// over F_p, and a fresh rational rerun on two threads.
Outcome field_checks(const std::vector<Instance>& corpus, const CorpusRun& run) {
  Outcome out;
  const RationalField q;
  const PrimeField fp(1000003);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const std::string who = describe(corpus[i]);
    auto b = build(fp, corpus[i]);
    out.require(integer_report(b, vertex_pairs(b), tiling_certificate(b, kDilations)) == run.reports[i],
                "Q and F_p differ for " + who);
    auto a = build(q, corpus[i]);
    out.require(to_json(a).dump() == run.nets[i], "generator not reproducible for " + who);
    out.require(tiling_certificate(a, kDilations, 2).to_json().dump() == run.certificates[i],
                "threaded rerun differs for " + who);
  }
  out.detail = std::to_string(corpus.size()) + " instances, p = 1000003, threaded reruns byte-identical";
  return out;
}

void report(int id, const std::string& name, const Outcome& o, double s, bool& all) {
  all = all && o.passed;
  std::printf("[%s] criterion %d: %s: %s", o.passed ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
  if (!o.passed) std::printf("; first failure: %s", o.failure.c_str());
  std::printf(" (%.2f s)\n", s);
  std::fflush(stdout);
}

template <class Fn>
auto timed(Fn&& fn, double& s) {
  auto t0 = Clock::now();
  auto r = fn();
  s = seconds_since(t0);
  return r;
}

}  // namespace

int main() {
  bool all = true;
  double s = 0;
  auto guard = [](auto fn) {
    return [fn]() {
      try {
        return fn();
      } catch (const std::exception& e) {
        Outcome o;
        o.require(false, std::string("exception: ") + e.what());
        return o;
      }
    };
  };

  auto first = timed(guard(line3_instance), s);
  report(1, "line3 worked instance", first, s, all);

  const auto corpus = net_corpus();
  CorpusRun run;
  try {
    run = timed([&] { return corpus_checks(corpus); }, s);
  } catch (const std::exception& e) {
    for (auto* o : {&run.tiling, &run.chow, &run.faces}) o->require(false, std::string("exception: ") + e.what());
  }
  report(2, "tiling certificate on generated nets", run.tiling, s, all);
  report(3, "Chow class partition", run.chow, s, all);
  report(4, "interior faces and polygons", run.faces, s, all);

  std::pair<Outcome, Outcome> sub;
  try {
    sub = timed(subspace_checks, s);
  } catch (const std::exception& e) {
    sub.first.require(false, std::string("exception: ") + e.what());
    sub.second.require(false, std::string("exception: ") + e.what());
  }
  report(5, "split compatibility on random subspaces", sub.first, s, all);
  report(6, "monotonicity and simplicity", sub.second, s, all);

  auto chip = timed(guard(chipfire_checks), s);
  report(7, "extreme vertices are reduced divisors", chip, s, all);
  auto hulls = timed(guard(hull_checks), s);
  report(8, "extreme vertices of random hulls", hulls, s, all);
  auto fields = timed(guard([&] {
                        if (run.reports.size() == corpus.size()) return field_checks(corpus, run);
                        Outcome o;
                        o.require(false, "rational corpus run did not complete");
                        return o;
                      }),
                      s);
  report(9, "field agreement and determinism", fields, s, all);

  std::printf("%s\n", all ? "all criteria passed" : "some criteria failed");
  return all ? 0 : 1;
}
