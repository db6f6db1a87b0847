#include <random>
#include <sstream>

#include "catch_amalgamated.hpp"

#include "oracles.hpp"
#include "sepgrowth/depth.hpp"
#include "sepgrowth/verify.hpp"

using namespace sepgrowth;

namespace {
  ParameterTables const& toy() {
    static auto const t = locality_toy_tables();
    return t;
  }

  ParameterTables const& balanced20() {
    static auto const t = [] {
      auto const p = preset("balanced");
      return build_double_index(p.f1, p.f2, 20, p.constants);
    }();
    return t;
  }

  // Smallest order among every Alt coordinate and every Z_3 wr Z_k, k <=
  // k_cap, where pred says the quotient separates; 0 when none does.
  template <typename AltPred, typename WreathPred>
  big_int brute_min(ParameterTables const& t,
                    std::uint64_t          k_cap,
                    AltPred                alt_sep,
                    WreathPred             wr_sep) {
    big_int best = 0;
    auto    take = [&](QuotientSize const& q) {
      auto const o = q.exact_order();
      if (best == 0 || o < best) {
        best = o;
      }
    };
    for (auto c : table_coordinates(t)) {
      if (alt_sep(c)) {
        take(QuotientSize::alt(t.d(c.n, c.m)));
      }
    }
    for (std::uint64_t k = 1; k <= k_cap; ++k) {
      if (wr_sep(k)) {
        take(QuotientSize::wreath_mod(k));
      }
    }
    return best;
  }
}  // namespace

TEST_CASE("quotient orders", "[depth]") {
  CHECK(QuotientSize::alt(5).exact_order() == 60);
  CHECK(QuotientSize::wreath_mod(2).exact_order() == 18);
  CHECK(QuotientSize::wreath_mod(3) < QuotientSize::alt(6));
  CHECK(QuotientSize::alt(5) < QuotientSize::wreath_mod(3));
  // Alt(3) and Z_3 wr Z_1 both have order 3
  CHECK(compare_orders(QuotientSize::alt(3), QuotientSize::wreath_mod(1)) == 0);
  auto const big = QuotientSize::alt(307);
  CHECK(big.exact_order().str().size()
        == static_cast<std::size_t>(std::floor(big.log10_order())) + 1);
  CHECK(to_string(QuotientSize::alt(43)) == "Alt(43)");
  CHECK(to_string(QuotientSize::wreath_mod(4)) == "Z3wrZ4");
  CHECK_THROWS_AS(QuotientSize::alt(1), InvalidArgument);
  CHECK_THROWS_AS(QuotientSize::wreath_mod(0), InvalidArgument);
}

TEST_CASE("rf_upper examples", "[depth]") {
  auto const b = rf_upper(parse_word("b"), toy());
  CHECK(b.value == QuotientSize::wreath_mod(1));
  CHECK(b.modulus == std::optional<std::uint64_t>(1));
  auto const a = rf_upper(parse_word("a"), toy());
  CHECK(a.value == QuotientSize::wreath_mod(2));
  auto const g = rf_upper(v_word(7), toy());
  CHECK(g.value == QuotientSize::alt(43));
  CHECK(g.coordinate == std::optional<Coordinate>(Coordinate{1, 1}));
  CHECK(to_string(g) == "Alt(43) at (1,1)");
  CHECK(g.direction == DepthReport::Direction::upper);
  CHECK_THROWS_AS(rf_upper(Word(), toy()), InvalidArgument);
  // a^6 survives in Z_3 wr Z_k only for k not dividing 6
  auto const a6 = rf_upper(parse_word("a^6"), toy(), 3);
  CHECK(a6.value == QuotientSize::alt(43));
  CHECK(rf_upper(parse_word("a^6"), toy()).value == QuotientSize::wreath_mod(4));
}

TEST_CASE("rf_upper agrees with a scan of every quotient", "[depth][oracle]") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 200; ++i) {
    auto const w = random_test_word(rng, 1 + rng() % 16);
    if (oracle::is_identity_everywhere(w, toy())) {
      continue;
    }
    auto const inf  = oracle::dense_inf(w);
    auto const want = brute_min(
        toy(), 6,
        [&](Coordinate c) { return !oracle::dense_image(w, toy(), c).is_identity(); },
        [&](std::uint64_t k) { return !project_mod_k(inf, k).is_identity(); });
    auto const got = rf_upper(w, toy(), 6);
    if (want == 0) {
      CHECK_FALSE(got.found());
    } else {
      REQUIRE(got.found());
      CHECK(got.value.exact_order() == want);
    }
  }
}

TEST_CASE("conj_upper agrees with a scan of every quotient", "[depth][oracle]") {
  std::mt19937_64 rng(67);
  int             compared = 0;
  while (compared < 60) {
    auto const w1 = random_test_word(rng, 1 + rng() % 8);
    auto const w2 = random_test_word(rng, 1 + rng() % 8);
    if (is_conjugate_element(w1, w2, toy()).conjugate) {
      continue;
    }
    ++compared;
    auto const i1   = oracle::dense_inf(w1);
    auto const i2   = oracle::dense_inf(w2);
    auto const want = brute_min(
        toy(), 4,
        [&](Coordinate c) {
          auto const p = oracle::dense_image(w1, toy(), c);
          auto const q = oracle::dense_image(w2, toy(), c);
          return !is_conjugate_sym(p, q) || !is_conjugate_alt(p, q);
        },
        [&](std::uint64_t k) {
          return !oracle::finite_conjugate_exhaustive(project_mod_k(i1, k),
                                                      project_mod_k(i2, k));
        });
    auto const got = conj_upper(w1, w2, toy(), 4);
    if (want == 0) {
      CHECK_FALSE(got.found());
    } else {
      REQUIRE(got.found());
      CHECK(got.value.exact_order() == want);
    }
  }
  CHECK_THROWS_AS(conj_upper(parse_word("a b"), parse_word("b a"), toy()),
                  InvalidArgument);
}

TEST_CASE("rf lower witnesses", "[depth]") {
  auto const& t = balanced20();
  for (std::size_t n = 1; n <= t.n_max(); ++n) {
    auto const rep = rf_lower_witness(n, t);
    CHECK(rep.direction == DepthReport::Direction::proven_lower);
    CHECK(rep.value == QuotientSize::alt(t.d(n, 1)));
    CHECK(rep.norm == 4 * t.r(n) + 4);
    CHECK(rep.norm <= 4 * 37 * n + 4);
    CHECK(rep.coordinate == std::optional<Coordinate>(Coordinate{n, 1}));
    // independent recheck of the support by dense evaluation
    auto const w = v_word(t.r(n));
    for (auto c : table_coordinates(t)) {
      if (t.d(c.n, c.m) < 2000) {
        CHECK((c.n == n) != oracle::dense_image(w, t, c).is_identity());
      }
    }
  }
  auto bad = balanced20();
  bad.row(2).r = bad.row(1).r;
  try {
    rf_lower_witness(1, bad);
    FAIL("expected a premise failure");
  } catch (PremiseFailure const& e) {
    CHECK(e.clause() == "rows");
  }
}

TEST_CASE("conjugacy pair witnesses", "[depth]") {
  auto const& t = balanced20();
  for (std::size_t n = 1; n <= 8; ++n) {
    auto const rep = conj_pair_witness(n, t);
    CHECK(rep.value == QuotientSize::alt(t.d2(n)));
    CHECK(rep.norm <= 9 + 4 * 37 * n);
    CHECK(rep.premises.size() == 5);
    CHECK(rep.coordinate == std::optional<Coordinate>(Coordinate{n, t.m_n(n)}));
  }
  auto const single = build_single_index(GrowthSpec::family(16, 0.1, 16), 5);
  try {
    conj_pair_witness(1, single);
    FAIL("expected a premise failure");
  } catch (PremiseFailure const& e) {
    CHECK(e.clause() == "pre");
  }
  auto const sr = rf_lower_witness(3, single);
  CHECK(sr.norm_bound == 4 * 18 * 3 + 4);
}

TEST_CASE("reduced words", "[depth]") {
  CHECK(reduced_words_of_length(0).size() == 1);
  auto const all = oracle::words_up_to(4);
  for (std::size_t L = 1; L <= 4; ++L) {
    auto const ws = reduced_words_of_length(L);
    std::size_t expect = 4;
    for (std::size_t i = 1; i < L; ++i) {
      expect *= 3;
    }
    CHECK(ws.size() == expect);
    std::size_t in_oracle = 0;
    for (auto const& w : all) {
      in_oracle += w.length() == L;
    }
    CHECK(in_oracle == expect);
    for (auto const& w : ws) {
      CHECK(w.length() == L);
    }
  }
}

TEST_CASE("growth tables", "[depth]") {
  auto const& t  = toy();
  auto const  rf = growth_tables(t, 3, GrowthMode::rf);
  auto const  cj = growth_tables(t, 3, GrowthMode::conj);
  REQUIRE(rf.size() == 3);
  REQUIRE(cj.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(log10_value(rf[i]) <= log10_value(cj[i]));
    if (i > 0) {
      CHECK(log10_value(rf[i - 1]) <= log10_value(rf[i]));
      CHECK(log10_value(cj[i - 1]) <= log10_value(cj[i]));
    }
  }
  CHECK(rf[0].words_examined == 4);
  CHECK(rf[1].words_examined == 16);
  std::ostringstream a, b;
  write_csv(a, rf);
  write_csv(b, growth_tables(t, 3, GrowthMode::rf));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("n,mode,log10_depth,witness_kind,witness_params,words_examined\n", 0)
        == 0);
  CHECK(a.str().find("1,rf,1.255273,wreath_mod,k=2;w=a,4\n") != std::string::npos);
}
