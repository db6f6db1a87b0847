#include <random>

#include "catch_amalgamated.hpp"

#include "oracles.hpp"
#include "sepgrowth/perm.hpp"
#include "sepgrowth/words.hpp"

using namespace sepgrowth;

namespace {
  Permutation random_perm(std::mt19937_64& rng, std::size_t d) {
    std::vector<point_type> v(d);
    std::iota(v.begin(), v.end(), 0);
    std::shuffle(v.begin(), v.end(), rng);
    return Permutation(v);
  }

  Permutation random_even(std::mt19937_64& rng, std::size_t d) {
    for (;;) {
      auto p = random_perm(rng, d);
      if (is_even(p)) {
        return p;
      }
    }
  }

  std::pair<Permutation, Permutation> g1g2(std::uint64_t r, std::size_t d) {
    PermutationGroup ctx{d};
    auto const       a = make_alpha(d);
    auto const       b = make_beta(r, d);
    return {evaluate(g1_word(r), a, b, ctx), evaluate(g2_word(r), a, b, ctx)};
  }
}  // namespace

TEST_CASE("make_alpha", "[perm]") {
  CHECK(make_alpha(5)(4) == 0);
  CHECK(make_alpha(1).is_identity());
  auto const a = make_alpha(31);
  CHECK(a(30) == 0);
  CHECK(a(7) == 8);
  CHECK_THROWS_AS(make_alpha(0), InvalidArgument);
}

TEST_CASE("make_beta", "[perm]") {
  auto const b = make_beta(7, 31);
  CHECK(b(0) == 7);
  CHECK(b(7) == 14);
  CHECK(b(14) == 0);
  CHECK(b(1) == 1);
  CHECK(make_beta(1, 3) == parse_cycles("(0 1 2)", 3));
  CHECK_THROWS_AS(make_beta(2, 4), DegenerateParameter);
  CHECK_THROWS_AS(make_beta(0, 5), DegenerateParameter);
}

TEST_CASE("arithmetic", "[perm]") {
  auto const a = make_alpha(5);
  CHECK(compose(a, inverse(a)).is_identity());
  CHECK(parity(make_beta(2, 7)) == Parity::even);
  CHECK(parity(parse_cycles("(0 1)", 4)) == Parity::odd);
  // (p q)(x) = p(q(x))
  auto const p = parse_cycles("(0 1)", 3);
  auto const q = parse_cycles("(1 2)", 3);
  CHECK(compose(p, q)(1) == 2);
  CHECK(apply(compose(p, q), 2) == 0);
  CHECK_THROWS_AS(compose(make_alpha(3), make_alpha(4)), DegreeMismatch);
  CHECK(power(a, 5).is_identity());
  CHECK(power(a, -1) == inverse(a));
  CHECK(power(a, 7) == compose(a, a));
}

TEST_CASE("cycle type of g1 at r = 7, d = 29", "[perm]") {
  auto const [p1, p2] = g1g2(7, 29);
  auto const ct       = cycle_type(p1);
  CHECK(ct.lengths == std::vector<std::size_t>{12, 12, 5});
  CHECK(ct.cycle_count() == 3);
  CHECK(cycle_type(p2).lengths == std::vector<std::size_t>{29});
}

TEST_CASE("is_conjugate_sym", "[perm]") {
  CHECK(is_conjugate_sym(parse_cycles("(0 1 2)", 3), parse_cycles("(0 2 1)", 3)));
  CHECK_FALSE(is_conjugate_sym(Permutation(3), parse_cycles("(0 1 2)", 3)));
  auto const [p1, p2] = g1g2(7, 29);
  CHECK_FALSE(is_conjugate_sym(p1, p2));
  CHECK_THROWS_AS(is_conjugate_sym(Permutation(3), Permutation(4)),
                  DegreeMismatch);
}

TEST_CASE("is_conjugate_alt examples", "[perm]") {
  auto const id = Permutation(5);
  auto const w  = find_conjugator_alt(id, id);
  REQUIRE(w);
  CHECK(w->is_identity());

  auto const c1 = parse_cycles("(0 1 2)", 3);
  auto const c2 = parse_cycles("(0 2 1)", 3);
  CHECK_FALSE(is_conjugate_alt(c1, c2));
  CHECK_FALSE(oracle::alt_conjugate_exhaustive(
      c1, c2, oracle::all_even_permutations(3)));

  auto const [p1, p2] = g1g2(7, 31);
  auto const s        = find_conjugator_alt(p1, p2);
  REQUIRE(s);
  CHECK(is_even(*s));
  CHECK(conjugate(*s, p1) == p2);

  CHECK_THROWS_AS(is_conjugate_alt(parse_cycles("(0 1)", 3), Permutation(3)),
                  InvalidArgument);
}

TEST_CASE("canonical_conjugator_single_cycle", "[perm]") {
  auto const a = make_alpha(7);
  CHECK(canonical_conjugator_single_cycle(a, a, 0).is_identity());

  auto const h = canonical_conjugator_single_cycle(
      parse_cycles("(0 1 2)", 3), parse_cycles("(0 2 1)", 3), 0);
  CHECK(h(0) == 0);
  CHECK(h(1) == 2);
  CHECK(h(2) == 1);

  auto const [p1, p2] = g1g2(7, 31);
  auto const h31      = canonical_conjugator_single_cycle(p1, p2, 0);
  CHECK(h31(0) == 0);
  CHECK(compose(h31, p1) == compose(p2, h31));
  CHECK(is_even(h31));

  CHECK_THROWS_AS(canonical_conjugator_single_cycle(Permutation(3), a, 0),
                  DegreeMismatch);
  CHECK_THROWS_AS(
      canonical_conjugator_single_cycle(Permutation(7), a, 0), InvalidArgument);
}

TEST_CASE("alt conjugacy agrees with exhaustive search, d <= 7", "[perm][oracle]") {
  for (std::size_t d = 1; d <= 7; ++d) {
    oracle::AltClasses const classes(d);
    auto const&              alt = classes.elements();
    std::vector<Permutation> reps;
    std::set<std::size_t>    seen;
    for (auto const& p : alt) {
      if (seen.insert(classes.label(p)).second) {
        reps.push_back(p);
      }
    }
    std::size_t mismatches = 0;
    for (auto const& p : alt) {
      for (auto const& q : (d <= 6 ? alt : reps)) {
        bool const want = classes.label(p) == classes.label(q);
        auto const s    = find_conjugator_alt(p, q);
        if (s.has_value() != want
            || (s && (!is_even(*s) || conjugate(*s, p) != q))) {
          ++mismatches;
        }
      }
    }
    INFO("degree " << d);
    CHECK(mismatches == 0);
  }
}

TEST_CASE("alt conjugacy agrees with exhaustive search, d = 8, 9", "[perm][oracle]") {
  std::mt19937_64 rng(7);
  for (std::size_t d : {8, 9}) {
    auto const alt = oracle::all_even_permutations(d);
    for (int i = 0; i < 12; ++i) {
      auto const p = random_even(rng, d);
      // same cycle type, so only the splitting question is open
      auto const q = conjugate(random_perm(rng, d), p);
      CHECK(is_conjugate_alt(p, q) == oracle::alt_conjugate_exhaustive(p, q, alt));
    }
    // a split class: cycle lengths 5 and 3 in degree 8, 1, 3, 5 in degree 9
    auto const p = d == 8 ? parse_cycles("(0 1 2 3 4)(5 6 7)", 8)
                          : parse_cycles("(0 1 2 3 4)(5 6 7)", 9);
    auto const q = conjugate(parse_cycles("(0 1)", d), p);
    CHECK_FALSE(is_conjugate_alt(p, q));
    CHECK_FALSE(oracle::alt_conjugate_exhaustive(p, q, alt));
  }
}

TEST_CASE("cycle type is a conjugacy invariant", "[perm][property]") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto const d = 1 + rng() % 40;
    auto const p = random_perm(rng, d);
    auto const s = random_perm(rng, d);
    CHECK(cycle_type(conjugate(s, p)) == cycle_type(p));
  }
}

TEST_CASE("canonical conjugator of random full cycles", "[perm][property]") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    auto const d = 2 + rng() % 30;
    auto const p = conjugate(random_perm(rng, d), make_alpha(d));
    auto const q = conjugate(random_perm(rng, d), make_alpha(d));
    auto const b = static_cast<point_type>(rng() % d);
    auto const h = canonical_conjugator_single_cycle(p, q, b);
    CHECK(h(b) == b);
    CHECK(conjugate(h, p) == q);
  }
}

TEST_CASE("parity agrees with inversion count", "[perm][property]") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    auto const p = random_perm(rng, 1 + rng() % 12);
    std::vector<point_type> v(p.images().begin(), p.images().end());
    CHECK(is_even(p) == oracle::is_even_by_inversions(v));
  }
}

TEST_CASE("cycle notation", "[perm]") {
  auto const p = parse_cycles("(0 7 14)", 31);
  CHECK(p == make_beta(7, 31));
  CHECK(to_cycle_string(p) == "(0 7 14)");
  CHECK(to_cycle_string(Permutation(4)) == "()");
  CHECK(to_cycle_string(parse_cycles("(3 1)(2 0 4)", 5)) == "(0 4 2)(1 3)");
  CHECK(parse_cycles(to_cycle_string(make_alpha(9)), 9) == make_alpha(9));
  CHECK_THROWS_AS(parse_cycles("(0 1)(1 2)", 3), ParseError);
  CHECK_THROWS_AS(parse_cycles("(0 5)", 3), ParseError);
  CHECK_THROWS_AS(Permutation(std::vector<point_type>{0, 0}), InvalidArgument);
}
