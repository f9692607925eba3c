#include <doctest.h>

#include <cmath>
#include <sstream>

#include "aifl/bn/inference.hpp"
#include "aifl/bn/serialize.hpp"
#include "support/enum_oracle.hpp"

using namespace aifl;

namespace {

// A -> B with P(A=1)=0.3, P(B=1|A=0)=0.2, P(B=1|A=1)=0.9.
bn::BayesNet two_node_net() {
  bn::BayesNet net;
  net.dag.vars = {{"A", 2, bn::VarRole::system}, {"B", 2, bn::VarRole::system}};
  net.dag.edges.insert({0, 1});
  bn::Cpd a;
  a.child = 0;
  a.child_card = 2;
  a.counts = {0.7, 0.3};
  a.renormalize_all();
  bn::Cpd b;
  b.child = 1;
  b.parents = {0};
  b.parent_cards = {2};
  b.child_card = 2;
  b.counts = {0.8, 0.1, 0.2, 0.9};  // rows: B state, cols: A state
  b.renormalize_all();
  net.cpds = {a, b};
  return net;
}

bn::BayesNet single_node_net(std::vector<double> counts) {
  bn::BayesNet net;
  net.dag.vars = {{"X", static_cast<int>(counts.size()), bn::VarRole::system}};
  bn::Cpd x;
  x.child = 0;
  x.child_card = static_cast<int>(counts.size());
  x.counts = std::move(counts);
  x.renormalize_all();
  net.cpds = {x};
  return net;
}

}  // namespace

TEST_CASE("validate accepts a well-formed net") {
  CHECK(bn::validate(two_node_net()).empty());
  CHECK(bn::validate(bn::uniform_net({{"A", 3, bn::VarRole::system}})).empty());
}

TEST_CASE("validate reports a denormalized probability column") {
  bn::BayesNet net = two_node_net();
  net.cpds[0].probs = {0.6, 0.3};  // sums to 0.9
  const auto problems = bn::validate(net);
  REQUIRE(!problems.empty());
  CHECK(problems.front().find("sums to") != std::string::npos);
}

TEST_CASE("validate reports a cycle") {
  bn::BayesNet net = two_node_net();
  net.dag.edges.insert({1, 0});
  const auto problems = bn::validate(net);
  bool found = false;
  for (const auto& p : problems) found = found || p.find("cycle") != std::string::npos;
  CHECK(found);
}

TEST_CASE("validate reports cardinality and duplicate-name breaches") {
  bn::BayesNet net = two_node_net();
  net.dag.vars[1].name = "A";
  auto problems = bn::validate(net);
  bool dup = false;
  for (const auto& p : problems) dup = dup || p.find("duplicate") != std::string::npos;
  CHECK(dup);

  bn::BayesNet one = single_node_net({1.0});
  CHECK(!bn::validate(one).empty());
}

TEST_CASE("factor product of independent uniforms") {
  bn::Factor f1{{0}, {2}, {0.5, 0.5}};
  bn::Factor f2{{1}, {2}, {0.5, 0.5}};
  const bn::Factor prod = bn::factor_product(f1, f2);
  REQUIRE(prod.values.size() == 4);
  for (double v : prod.values) CHECK(v == doctest::Approx(0.25));
}

TEST_CASE("factor marginalize and reduce on the A,B joint") {
  // Joint of two_node_net in A-major order.
  bn::Factor joint{{0, 1}, {2, 2}, {0.56, 0.14, 0.03, 0.27}};
  const bn::Factor a_marginal = bn::factor_marginalize(joint, 1);
  REQUIRE(a_marginal.values.size() == 2);
  CHECK(a_marginal.values[0] == doctest::Approx(0.70).epsilon(1e-12));
  CHECK(a_marginal.values[1] == doctest::Approx(0.30).epsilon(1e-12));

  const bn::Factor sliced = bn::factor_reduce(joint, {{1, 1}});
  REQUIRE(sliced.values.size() == 2);
  CHECK(sliced.values[0] == doctest::Approx(0.14).epsilon(1e-12));
  CHECK(sliced.values[1] == doctest::Approx(0.27).epsilon(1e-12));
}

TEST_CASE("factor product rejects mismatched cardinalities") {
  bn::Factor f1{{0}, {2}, {0.5, 0.5}};
  bn::Factor f2{{0}, {3}, {0.3, 0.3, 0.4}};
  CHECK_THROWS_AS(bn::factor_product(f1, f2), std::invalid_argument);
}

TEST_CASE("query_marginal on a single uniform node") {
  const bn::BayesNet net = single_node_net({1.0, 1.0});
  const bn::Factor m = bn::query_marginal(net, {0}, {});
  CHECK(m.values[0] == doctest::Approx(0.5));
  CHECK(m.values[1] == doctest::Approx(0.5));
}

TEST_CASE("query_marginal matches the enumeration oracle on the two-node net") {
  const bn::BayesNet net = two_node_net();
  const auto oracle_b = testsupport::oracle_marginal(net, {1}, {});
  CHECK(oracle_b[1] == doctest::Approx(0.41).epsilon(1e-12));
  const bn::Factor m = bn::query_marginal(net, {1}, {});
  CHECK(m.values[1] == doctest::Approx(0.41).epsilon(1e-12));

  const auto oracle_a = testsupport::oracle_marginal(net, {0}, {{1, 1}});
  CHECK(oracle_a[1] == doctest::Approx(0.27 / 0.41).epsilon(1e-12));
  const bn::Factor cond = bn::query_marginal(net, {0}, {{1, 1}});
  CHECK(cond.values[1] == doctest::Approx(0.27 / 0.41).epsilon(1e-12));
}

TEST_CASE("query_marginal raises on zero-probability evidence") {
  bn::BayesNet net = two_node_net();
  net.cpds[0].counts = {1.0, 0.0};  // P(A=1) = 0
  net.cpds[0].renormalize_all();
  CHECK_THROWS_AS(bn::query_marginal(net, {1}, {{0, 1}}), bn::ZeroEvidenceProbability);
}

TEST_CASE("query_marginal rejects bad arguments") {
  const bn::BayesNet net = two_node_net();
  CHECK_THROWS_AS(bn::query_marginal(net, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(bn::query_marginal(net, {0}, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(bn::query_marginal(net, {0, 1}, {{1, 5}}), std::invalid_argument);
}

TEST_CASE("map_query basics") {
  CHECK(bn::map_query(single_node_net({0.9, 0.1}), {0}, {}).at(0) == 0);
  CHECK(bn::map_query(single_node_net({1.0, 1.0}), {0}, {}).at(0) == 0);  // tie -> state 0
  const bn::BayesNet net = two_node_net();
  CHECK(bn::map_query(net, {0}, {{1, 1}}).at(0) == 1);  // 0.6585 vs 0.3415
}

TEST_CASE("random nets: elimination matches enumeration, MAP is maximal") {
  rngu::Rng rng(20240511);
  for (int trial = 0; trial < 40; ++trial) {
    const int n_vars = 2 + rng.below_int(5);
    const bn::BayesNet net = testsupport::random_net(rng, n_vars, 4, 0.4);
    REQUIRE(bn::validate(net).empty());

    for (int q = 0; q < 5; ++q) {
      std::vector<int> ids = rng.permutation(n_vars);
      const int n_targets = 1 + rng.below_int(std::min(2, n_vars));
      std::vector<int> targets(ids.begin(), ids.begin() + n_targets);
      bn::Evidence evidence;
      for (int i = n_targets; i < n_vars; ++i) {
        if (rng.uniform01() < 0.4) {
          evidence[ids[i]] = rng.below_int(net.dag.vars[ids[i]].cardinality);
        }
      }
      const bn::Factor got = bn::query_marginal(net, targets, evidence);
      const auto want = testsupport::oracle_marginal(net, targets, evidence);
      REQUIRE(got.values.size() == want.size());
      double total = 0.0;
      for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(std::fabs(got.values[i] - want[i]) < 1e-9);
        total += got.values[i];
      }
      CHECK(std::fabs(total - 1.0) < 1e-9);

      // Any elimination order must agree.
      std::set<int> hidden_set;
      for (int v = 0; v < n_vars; ++v) hidden_set.insert(v);
      for (int t : targets) hidden_set.erase(t);
      for (const auto& [v, s] : evidence) {
        (void)s;
        hidden_set.erase(v);
      }
      std::vector<int> order(hidden_set.begin(), hidden_set.end());
      rng.shuffle(order);
      const bn::Factor reordered = bn::query_marginal(net, targets, evidence, &order);
      for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(std::fabs(reordered.values[i] - got.values[i]) < 1e-9);
      }

      // MAP posterior probability must not be beaten by any joint assignment.
      const auto map_assignment = bn::map_query(net, targets, evidence);
      std::vector<int> sorted_targets = targets;
      std::sort(sorted_targets.begin(), sorted_targets.end());
      std::size_t map_idx = 0;
      for (int t : sorted_targets) {
        map_idx = map_idx * net.dag.vars[t].cardinality + map_assignment.at(t);
      }
      for (double p : want) CHECK(want[map_idx] >= p - 1e-12);
    }
  }
}

TEST_CASE("net serialization carries vertices, edges, and counts") {
  const bn::BayesNet net = two_node_net();
  const std::string text = bn::to_text(net);
  CHECK(text.find("bayesnet v1") != std::string::npos);
  CHECK(text.find("A 2 system") != std::string::npos);
  CHECK(text.find("A -> B") != std::string::npos);
  CHECK(text.find("cpd B | A") != std::string::npos);
  CHECK(text.find("0.7") != std::string::npos);
}
