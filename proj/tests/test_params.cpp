#include <random>

#include "catch_amalgamated.hpp"

#include "oracles.hpp"
#include "sepgrowth/params.hpp"
#include "sepgrowth/params_io.hpp"

using namespace sepgrowth;

namespace {
  ParameterTables const& balanced20() {
    static auto const t = [] {
      auto const p = preset("balanced");
      return build_double_index(p.f1, p.f2, 20, p.constants);
    }();
    return t;
  }

  bool pm12(std::uint64_t x, std::uint64_t y, std::uint64_t p) {
    for (std::uint64_t c : {y, 2 * y, p * 4 - y, p * 4 - 2 * y}) {
      if (x % p == c % p) {
        return true;
      }
    }
    return false;
  }

  // Conditions on r and the primes of a double-index table, rechecked
  // without the library validator.
  bool independently_valid(ParameterTables const& t) {
    auto const& k = t.constants();
    for (std::size_t n = 1; n <= t.n_max(); ++n) {
      auto const& row = t.row(n);
      if (row.d.empty() || row.r % 6 != 1 || row.r < n
          || row.r >= (k.M + 1) * n || 6 * row.r >= row.d[0]) {
        return false;
      }
      if (n > 1 && row.d[0] < t.row(n - 1).d[0]) {
        return false;
      }
      for (std::size_t m = 0; m < row.d.size(); ++m) {
        if (!oracle::is_prime_trial(row.d[m]) || row.d[m] % 2 == 0) {
          return false;
        }
        if (m + 1 < row.d.size()
            && !(row.d[m + 1] > 2 * row.d[m] && row.d[m + 1] < 8 * row.d[m])) {
          return false;
        }
        for (std::size_t l = 1; l <= t.n_max(); ++l) {
          if (l != n && pm12(t.r(l), row.r, row.d[m])) {
            return false;
          }
        }
      }
    }
    return true;
  }
}  // namespace

TEST_CASE("is_prime agrees with trial division", "[params][oracle]") {
  for (std::uint64_t n = 0; n < 30000; ++n) {
    REQUIRE(is_prime(n) == oracle::is_prime_trial(n));
  }
  std::mt19937_64 rng(31);
  for (int i = 0; i < 2000; ++i) {
    auto const n = rng() % 2000000000ULL;
    REQUIRE(is_prime(n) == oracle::is_prime_trial(n));
  }
  CHECK(is_prime(18446744073709551557ULL));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to 2, 3, 5, 7
}

TEST_CASE("next_prime_congruent", "[params][oracle]") {
  CHECK(next_prime_congruent(12, 1, 6) == 13);
  CHECK(next_prime_congruent(13, 1, 6) == 19);
  CHECK(next_prime_congruent(70, 5, 6) == 71);
  CHECK(next_prime_congruent(0, 1, 2) == 3);
  for (std::uint64_t lower = 0; lower < 3000; lower += 7) {
    for (std::uint64_t res : {1, 5}) {
      REQUIRE(next_prime_congruent(lower, res, 6)
              == oracle::next_prime_scan(lower, res, 6));
    }
  }
  CHECK_THROWS_AS(next_prime_congruent(10, 3, 6), InvalidArgument);
  CHECK_THROWS_AS(next_prime_congruent(10, 1, 0), InvalidArgument);
}

TEST_CASE("growth functions", "[params]") {
  auto const g = GrowthSpec::family(16, 0.1, 16);
  std::uint64_t prev = 0;
  for (std::size_t n = 1; n <= 200; ++n) {
    auto const f = g.f(n);
    CHECK(f >= prev);
    prev = f;
  }
  CHECK_THROWS_AS(GrowthSpec::family(1e-6, 0.1, 0).f(1), GrowthTooSmall);
  CHECK_THROWS_AS(GrowthSpec::family(0, 0.1, 0), InvalidArgument);
  CHECK_THROWS_AS(GrowthSpec::table({3, 2}), InvalidArgument);
  CHECK(GrowthSpec::constant(7, 4).f(4) == 7);
  CHECK_THROWS_AS(GrowthSpec::constant(7, 4).f(5), InvalidArgument);
  CHECK(clamped_loglog(2.0) == 0.0);
  CHECK(condition_d_bound(1, 4, 0.05) == 4.0);
}

TEST_CASE("toy construction", "[params]") {
  // f1 = 12, f2 = 70: d(1) = (13, 71) and the window for r(2) is empty
  TableConstants k;
  auto rows = build_d_rows(GrowthSpec::constant(12, 2),
                           GrowthSpec::constant(70, 2), 2, k);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].d == std::vector<std::uint64_t>{13, 71});
  CHECK(rows[1].d == std::vector<std::uint64_t>{13, 71});
  std::size_t failed_row = 0;
  try {
    greedy_r(rows, k.M);
  } catch (WindowExhausted const& e) {
    failed_row = e.row();
  }
  CHECK(failed_row == 2);
  CHECK(rows[0].r == 1);
}

TEST_CASE("branching rows", "[params]") {
  // d2 far above C1 d1 forces intermediate primes
  TableConstants k;
  auto const rows = build_d_rows(GrowthSpec::constant(12, 1),
                                 GrowthSpec::constant(5000, 1), 1, k);
  auto const& d = rows[0].d;
  REQUIRE(d.size() >= 3);
  CHECK(d.front() == 13);
  CHECK(d.back() == oracle::next_prime_scan(5000, 5, 6));
  for (std::size_t m = 1; m + 1 < d.size(); ++m) {
    CHECK(d[m] == oracle::next_prime_scan(2 * d[m - 1], 1, 6));
  }
  CHECK(k.max_prime_ratio >= 1.0);
}

TEST_CASE("preset tables validate", "[params]") {
  auto const& t   = balanced20();
  auto const  rep = validate(t);
  INFO(rep.summary());
  CHECK(rep.ok());
  CHECK(independently_valid(t));
  CHECK(t.mode() == TableMode::double_index);
  CHECK(t.n_max() == 20);
  for (std::size_t n = 1; n <= 20; ++n) {
    CHECK(t.m_n(n) >= 2);
    CHECK(t.d(n, 99) == t.d2(n));
  }
  CHECK_THROWS_AS(t.row(21), InvalidArgument);
  CHECK_THROWS_AS(t.d(1, 0), InvalidArgument);

  auto const w = preset("wide");
  auto const t2 = build_double_index(w.f1, w.f2, 20, w.constants);
  CHECK(validate(t2).ok());
  CHECK(independently_valid(t2));
  CHECK_THROWS_AS(preset("narrow"), InvalidArgument);
}

TEST_CASE("single-index tables validate", "[params]") {
  auto const t = build_single_index(GrowthSpec::family(16, 0.1, 16), 30);
  auto const rep = validate(t);
  INFO(rep.summary());
  CHECK(rep.ok());
  for (std::size_t n = 1; n <= 30; ++n) {
    CHECK(oracle::is_prime_trial(t.d(n)));
    CHECK(t.r(n) > n);
    CHECK(t.r(n) < 18 * n);
    CHECK(3 * t.r(n) < t.d(n));
    for (std::size_t l = 1; l <= 30; ++l) {
      CHECK((l == n || !pm12(t.r(l), t.r(n), t.d(n))));
    }
  }
}

TEST_CASE("validation catches mutations", "[params]") {
  auto t = balanced20();
  t.row(3).d[0] += 1;
  auto rep = validate(t);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.at("b").passed);
  CHECK(rep.at("b").counterexample == "n=3 m=1");

  t = balanced20();
  t.row(2).r = t.row(1).r;
  rep = validate(t);
  CHECK_FALSE(rep.at("2'").passed);
  CHECK(rep.at("3'").passed);

  t = balanced20();
  t.row(5).r += 1;
  CHECK_FALSE(validate(t).at("3'").passed);

  t = balanced20();
  std::swap(t.row(4).d[0], t.row(5).d[0]);
  CHECK_FALSE(validate(t).at("a").passed);

  t = balanced20();
  t.row(6).d.clear();
  CHECK_FALSE(validate(t).at("stabilization").passed);

  // a toy table that only fails condition (d)
  t = balanced20();
  t.constants().c2 = 1e6;
  rep = validate(t);
  CHECK_FALSE(rep.at("d").passed);
  CHECK(validate(t, true).ok());
  CHECK(validate(t, true).at("d").skipped);
}

TEST_CASE("json round trip", "[params]") {
  auto const& t = balanced20();
  auto const  j = to_json(t);
  CHECK(j["mode"] == "double-index");
  CHECK(j["rows"][0]["n"] == 1);
  CHECK(tables_from_json(j) == t);
  CHECK(tables_from_json(nlohmann::json::parse(j.dump())) == t);

  auto bad               = j;
  bad["rows"][1]["r"]    = t.r(1);
  CHECK_THROWS_AS(tables_from_json(bad), ValidationFailed);
  CHECK_NOTHROW(tables_from_json(bad, false, false));
  bad                    = j;
  bad["rows"][0]["m_n"]  = 9;
  CHECK_THROWS_AS(tables_from_json(bad), ParseError);
  bad                    = j;
  bad["mode"]            = "triple";
  CHECK_THROWS_AS(tables_from_json(bad), ParseError);
  CHECK_THROWS_AS(tables_from_json(nlohmann::json::object()), ParseError);
}

TEST_CASE("factorial sandwich on a short range", "[params]") {
  for (auto const& p : presets()) {
    for (auto const& row : factorial_sandwich(p.f1, 10, 60)) {
      INFO(p.name << " n = " << row.n);
      CHECK(row.ok);
    }
  }
}
