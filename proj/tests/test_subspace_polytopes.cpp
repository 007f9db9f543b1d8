#include <gtest/gtest.h>

#include "support.hpp"

using namespace polytile;
using fixtures::mat;

namespace {

const RationalField Q;

template <ExactField F>
Subspace<F> span(const F& field, AmbientPtr amb, std::vector<std::vector<std::int64_t>> rows) {
  return Subspace<F>::span(field, std::move(amb), mat(field, std::move(rows)));
}

NetPresentation<RationalField> line3() { return generate_monomial(Q, fixtures::line3()); }

std::vector<OrderedPartition> all_partitions(std::size_t h) {
  std::vector<OrderedPartition> out;
  oracle::ordered_partitions(h, [&](const std::vector<Mask>& p) { out.push_back({p}); });
  return out;
}

}  // namespace

TEST(ModularPairOf, Diagonal) {
  auto w = span(Q, Ambient::uniform(2, 2), {{1, 0, 1, 0}, {0, 1, 0, 1}});
  auto p = modular_pair_of(w);
  EXPECT_EQ(p.mu, SetFn::over(2, {0, 0, 0, 2}));
  EXPECT_EQ(p.mu_star, SetFn::over(2, {0, 2, 2, 2}));
}

TEST(ModularPairOf, SingleBlock) {
  auto w = span(Q, Ambient::uniform(3, 2), {{0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0}});
  auto p = modular_pair_of(w);
  for (Mask i = 0; i < 8; ++i) EXPECT_EQ(p.mu(i), has_bit(i, 1) ? 2 : 0);
  EXPECT_EQ(polytope_vertices(p), (std::vector<std::vector<std::int64_t>>{{0, 2, 0}}));
}

TEST(ModularPairOf, Line3VertexSpaceMatchesOracle) {
  auto net = line3();
  for (std::size_t v = 0; v < 3; ++v) {
    auto t = oracle::tables_q(oracle::vertex_rows(net, v), 3, 2);
    auto p = modular_pair_of(vertex_space(net, v));
    EXPECT_EQ(p.mu.values(), t.mu);
    EXPECT_EQ(p.mu_star.values(), t.mu_star);
  }
}

TEST(ModularPairOf, RandomSubspacesAgreeWithOracle) {
  std::mt19937_64 rng(31);
  PrimeField fp;
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t h = 1 + trial % 4, d = 1 + trial % 3;
    auto rows = oracle::random_rows(rng, h, d, d);
    std::vector<oracle::QRow> q;
    for (const auto& r : rows) q.emplace_back(r.begin(), r.end());
    auto t = oracle::tables_q(q, h, d);
    auto amb = Ambient::uniform(h, d);
    auto pq = modular_pair_of(span(Q, amb, rows));
    EXPECT_EQ(pq.mu.values(), t.mu);
    EXPECT_EQ(pq.mu_star.values(), t.mu_star);
    EXPECT_TRUE(is_supermodular(pq.mu));
    EXPECT_EQ(adjoint(pq.mu), pq.mu_star);
    auto pp = modular_pair_of(span(fp, amb, rows));
    EXPECT_EQ(pp.mu_star.range(), pq.mu_star.range());
  }
}

TEST(SplitSubspace, TrivialPartition) {
  auto net = line3();
  auto w = vertex_space(net, 1);
  EXPECT_EQ(split_subspace(w, {{7}}), w);
}

TEST(SplitSubspace, Diagonal) {
  auto w = span(Q, Ambient::uniform(2, 2), {{1, 0, 1, 0}, {0, 1, 0, 1}});
  OrderedPartition pi{{0b01, 0b10}};
  auto s = split_subspace(w, pi);
  EXPECT_EQ(s, span(Q, Ambient::uniform(2, 2), {{0, 0, 1, 0}, {0, 0, 0, 1}}));
  EXPECT_EQ(modular_pair_of(s).mu, split(modular_pair_of(w).mu, pi));
}

TEST(SplitSubspace, Line3Face) {
  auto w = vertex_space(line3(), 1);
  OrderedPartition pi{{0b001, 0b110}};
  auto s = split_subspace(w, pi);
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_EQ(modular_pair_of(s).mu, split(modular_pair_of(w).mu, pi));
}

TEST(SplitSubspace, CompatibleWithSplitting) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t h = 2 + trial % 3, d = 1 + trial % 3;
    auto amb = Ambient::uniform(h, d);
    auto w = span(Q, amb, oracle::random_rows(rng, h, d, d));
    auto mu = modular_pair_of(w).mu;
    for (const auto& pi : all_partitions(h)) {
      auto s = split_subspace(w, pi);
      EXPECT_EQ(s.dim(), w.dim());
      EXPECT_EQ(modular_pair_of(s).mu, split(mu, pi));
    }
  }
}

TEST(Scaling, InvariantUnderAutomorphisms) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    auto amb = Ambient::uniform(3, 2);
    auto w = span(Q, amb, oracle::random_rows(rng, 3, 2, 2));
    auto s = scale({Rational(3), Rational(-1), Rational(1, 2)}, w);
    EXPECT_EQ(modular_pair_of(s).mu, modular_pair_of(w).mu);
  }
}

TEST(Scaling, IsomorphismBranch) {
  auto w = vertex_space(line3(), 1);
  auto v = interiors_disjoint_or_isomorphic(w, w, {Rational(1), Rational(1), Rational(1)});
  EXPECT_EQ(v.branch, ScalingBranch::isomorphism);
  EXPECT_EQ(v.support, Mask{7});
}

TEST(Scaling, SeparationBranchFromNet) {
  auto net = line3();
  auto c = find_scaling(net, 1, 0);
  EXPECT_EQ(c, (std::vector<Rational>{Rational(1), Rational(0), Rational(0)}));
  auto v = interiors_disjoint_or_isomorphic(vertex_space(net, 1), vertex_space(net, 0), c);
  EXPECT_EQ(v.branch, ScalingBranch::separation);
  EXPECT_EQ(v.support, Mask{0b001});
  EXPECT_LE(v.image_dim, v.section_dim);
}

TEST(Scaling, Preconditions) {
  auto net = line3();
  auto w = vertex_space(net, 1);
  try {
    (void)interiors_disjoint_or_isomorphic(w, w, {Rational(0), Rational(0), Rational(0)});
    FAIL();
  } catch (const ScalingPreconditionError& e) {
    EXPECT_EQ(e.kind(), ScalingPrecondition::zero_scaling);
  }
  try {
    (void)interiors_disjoint_or_isomorphic(vertex_space(net, 0), vertex_space(net, 2),
                                           {Rational(1), Rational(1), Rational(1)});
    FAIL();
  } catch (const ScalingPreconditionError& e) {
    EXPECT_EQ(e.kind(), ScalingPrecondition::not_contained);
  }
}

TEST(Coverage, Line3) {
  auto pairs = vertex_pairs(line3());
  for (std::int64_t t = 1; t <= 3; ++t) {
    auto cov = simplex_coverage(pairs, 2, t);
    EXPECT_TRUE(cov.covered());
    EXPECT_EQ(cov.simplex_points, composition_count(3, 2 * t));
  }
  std::vector<ModularPair> two{pairs[0], pairs[2]};
  auto cov = simplex_coverage(two, 2, 1);
  ASSERT_FALSE(cov.covered());
  EXPECT_EQ(*cov.uncovered, (std::vector<std::int64_t>{0, 2, 0}));
}

TEST(Coverage, MatchesMembershipScan) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t h = 3, d = 2;
    auto amb = Ambient::uniform(h, d);
    std::vector<ModularPair> pairs;
    for (int k = 0; k < 2; ++k) pairs.push_back(modular_pair_of(span(Q, amb, oracle::random_rows(rng, h, d, d))));
    if (pairs[0].range() != pairs[1].range()) continue;
    for (std::int64_t t = 1; t <= 2; ++t) {
      bool all = true;
      for_each_composition(h, t * pairs[0].range(), [&](const std::vector<std::int64_t>& q) {
        bool in = false;
        for (const auto& p : pairs) {
          bool ok = true;
          for (Mask i = 1; i <= p.mu.full(); ++i) {
            std::int64_t s = 0;
            for (auto x : mask_elements(i)) s += q[x];
            if (s < t * p.mu(i) || s > t * p.mu_star(i)) ok = false;
          }
          in = in || ok;
        }
        all = all && in;
      });
      EXPECT_EQ(simplex_coverage(pairs, pairs[0].range(), t).covered(), all);
    }
  }
}

TEST(CheckCollection, Singleton) {
  auto w = span(Q, Ambient::uniform(2, 2), {{1, 0, 1, 0}, {0, 1, 0, 1}});
  auto cert = check_collection<RationalField>({w}, {1, 2, 3});
  EXPECT_TRUE(cert.passed()) << cert.to_json().dump(2);
}

TEST(CheckCollection, Line3WithScalings) {
  auto net = line3();
  std::vector<Subspace<RationalField>> ws;
  ScalingMap<RationalField> sc;
  for (std::size_t v = 0; v < 3; ++v) ws.push_back(vertex_space(net, v));
  for (std::size_t v = 0; v < 3; ++v)
    for (std::size_t u = 0; u < 3; ++u)
      if (u != v) sc[{v, u}] = find_scaling(net, v, u);
  auto cert = check_collection(ws, {1, 2, 3}, sc);
  EXPECT_TRUE(cert.passed()) << cert.to_json().dump(2);
  ASSERT_NE(cert.find("coverage t=1"), nullptr);
  EXPECT_EQ(cert.find("coverage t=1")->details["simplex_points"], 6);
}

TEST(CheckCollection, DuplicateFailsNonequivalence) {
  auto w = vertex_space(line3(), 0);
  auto cert = check_collection<RationalField>({w, w}, {1});
  EXPECT_FALSE(cert.find("nonequivalence")->passed);
  EXPECT_FALSE(cert.passed());
}

TEST(CheckCollection, MissingPieceFailsCoverage) {
  auto net = line3();
  auto cert = check_collection<RationalField>({vertex_space(net, 0), vertex_space(net, 2)}, {1});
  EXPECT_FALSE(cert.find("coverage t=1")->passed);
}
