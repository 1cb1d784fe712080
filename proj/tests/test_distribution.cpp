#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "radsum/distribution.hpp"
#include "radsum/sampling.hpp"

using namespace radsum;
using radsum::testing::Q;
using radsum::testing::W;

TEST_CASE("PMF of a single weight") {
  auto d = exact_distribution(W({"1"}));
  REQUIRE(d.atoms.size() == 2);
  CHECK(d.atoms[0].value == -1);
  CHECK(d.atoms[0].count == 1);
  CHECK(d.atoms[1].value == 1);
  CHECK(d.atoms[1].count == 1);
}

TEST_CASE("PMF of four half weights is binomial") {
  auto d = exact_distribution(W({"1/2", "1/2", "1/2", "1/2"}));
  REQUIRE(d.atoms.size() == 5);
  std::vector<std::pair<Rational, std::uint64_t>> expect{
      {Q("-2"), 1}, {Q("-1"), 4}, {Q("0"), 6}, {Q("1"), 4}, {Q("2"), 1}};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(d.atoms[i].value == expect[i].first);
    CHECK(d.atoms[i].count == expect[i].second);
  }
}

TEST_CASE("PMF of (3/5, 4/5)") {
  auto d = exact_distribution(W({"3/5", "4/5"}));
  REQUIRE(d.atoms.size() == 4);
  CHECK(d.atoms[0].value == Q("-7/5"));
  CHECK(d.atoms[1].value == Q("-1/5"));
  CHECK(d.atoms[2].value == Q("1/5"));
  CHECK(d.atoms[3].value == Q("7/5"));
  for (auto& a : d.atoms) CHECK(a.count == 1);
}

TEST_CASE("prob_abs_le on the tight n=4 example") {
  auto w = W({"1/2", "1/2", "1/2", "1/2"});
  CHECK(prob_abs_le(w, Q("1")).exact() == Rational(7, 8));
  CHECK(prob_abs_le(w, Q("1"), true).exact() == Rational(3, 8));
}

TEST_CASE("prob_abs_le on (3/5, 4/5)") {
  CHECK(prob_abs_le(W({"3/5", "4/5"}), Q("1")).exact() == Rational(1, 2));
}

TEST_CASE("prob_abs_le rejects negative thresholds") {
  CHECK_THROWS_AS(prob_abs_le(W({"1/2"}), Q("-1")), std::invalid_argument);
}

TEST_CASE("shifted_prob examples") {
  CHECK(shifted_prob(Q("0"), W({"1/2", "1/2", "1/2", "1/2"}), Q("1")).exact() ==
        Rational(7, 8));
  CHECK(shifted_prob(Q("1"), W({"1/2", "1/2"}), Q("1")).exact() == Rational(3, 4));
  CHECK(shifted_prob(Q("1"), W({"4/5"}), Q("1")).exact() == Rational(1, 2));
}

TEST_CASE("empty weight vector: S = 0 surely") {
  Weights<Rational> w;
  CHECK(prob_abs_le(w, Q("1")).exact() == 1);
  CHECK(prob_abs_le(w, Q("0")).exact() == 1);
  CHECK(prob_abs_le(w, Q("0"), true).exact() == 0);
  auto d = exact_distribution(w);
  REQUIRE(d.atoms.size() == 1);
  CHECK(d.atoms[0].value == 0);
  CHECK(d.atoms[0].count == 1);
}

TEST_CASE("size limits") {
  Weights<Rational> big27(std::vector<Rational>(27, Rational(1, 27)));
  CHECK_THROWS_AS(exact_distribution(big27), std::length_error);
  Weights<Rational> big53(std::vector<Rational>(53, Rational(1, 53)));
  CHECK_THROWS_AS(prob_abs_le(big53, Rational(1)), std::length_error);
}

TEST_CASE("float mode: the sqrt(1/2) pair") {
  double v = 1.0 / std::sqrt(2.0);
  Weights<double> w({v, v});
  CHECK(prob_abs_le(w, 1.0).value() == 0.5);
}

TEST_CASE("distribution invariants: total count and symmetry") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 40; ++rep) {
    auto w = random_instance(rng, 1, 12);
    auto d = exact_distribution(w);
    std::uint64_t total = 0;
    for (auto& a : d.atoms) total += a.count;
    CHECK(total == d.total());
    CHECK(std::is_sorted(d.atoms.begin(), d.atoms.end(),
                         [](auto& a, auto& b) { return a.value < b.value; }));
    // symmetric: atom (s, m) pairs with (-s, m)
    for (std::size_t i = 0; i < d.atoms.size(); ++i) {
      auto& mirror = d.atoms[d.atoms.size() - 1 - i];
      CHECK(d.atoms[i].value == -mirror.value);
      CHECK(d.atoms[i].count == mirror.count);
    }
  }
}

TEST_CASE("prob_abs_le is invariant under sign flips and permutations") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 30; ++rep) {
    auto w = random_instance(rng, 2, 12);
    Rational t(rep % 5, 3);
    auto base = prob_abs_le(w, t).count;
    auto flipped = w.values;
    for (auto& v : flipped)
      if (rng() & 1) v = -v;
    std::shuffle(flipped.begin(), flipped.end(), rng);
    CHECK(prob_abs_le(Weights<Rational>(flipped), t).count == base);
  }
}

TEST_CASE("prob_abs_le is monotone in the threshold") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 30; ++rep) {
    auto w = random_instance(rng, 1, 12);
    Rational t1(rng() % 8, 5), t2 = t1 + Rational(rng() % 8, 5);
    CHECK(prob_abs_le(w, t1).count <= prob_abs_le(w, t2).count);
  }
}

TEST_CASE("appending zero weights never changes the probability") {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 20; ++rep) {
    auto w = random_instance(rng, 1, 10);
    Rational t(rng() % 6, 4);
    auto padded = w.values;
    padded.insert(padded.end(), 3, Rational(0));
    CHECK(prob_abs_le(Weights<Rational>(padded), t).count ==
          prob_abs_le(w, t).count << 3);
  }
}

TEST_CASE("strict + boundary atom mass = non-strict") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 30; ++rep) {
    auto w = random_instance(rng, 1, 10);
    Rational t(rng() % 6, 4);
    auto d = exact_distribution(w);
    std::uint64_t at_t = 0;
    for (auto& a : d.atoms)
      if (abs(a.value) == t) at_t += a.count;
    CHECK(prob_abs_le(w, t, true).count + at_t == prob_abs_le(w, t).count);
  }
}

TEST_CASE("meet-in-the-middle agrees with direct enumeration") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 60; ++rep) {
    auto w = random_instance(rng, 1, 20);
    Rational t(1 + rng() % 4, 1 + rng() % 3);
    bool strict = rng() & 1;
    auto mitm = prob_abs_le(w, t, strict);
    auto naive = prob_from_distribution(exact_distribution(w), t, strict);
    CHECK(mitm.count == naive.count);
    if (w.n() <= 13)
      CHECK(mitm.count == radsum::testing::oracle_count_abs_le(w, t, strict));
  }
}

TEST_CASE("shifted_prob agrees with the bitmask oracle") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 30; ++rep) {
    auto w = random_instance(rng, 1, 12);
    Rational x(static_cast<long>(rng() % 17) - 8, 8);
    CHECK(shifted_prob(x, w, Q("1")).count ==
          radsum::testing::oracle_count_shifted(x, w, Q("1")));
  }
}
