#ifndef SEPGROWTH_VERIFY_HPP_
#define SEPGROWTH_VERIFY_HPP_

// Batch checks of the structural properties of the construction. Each suite
// recomputes coordinate images through the generic evaluate route with
// dense permutations, independently of the sparse route used by the
// deciders.

#include <cstddef>  // for size_t
#include <cstdint>  // for uint64_t
#include <random>   // for mt19937_64
#include <string>   // for string
#include <vector>   // for vector

#include "depth.hpp"
#include "groups.hpp"
#include "params.hpp"
#include "perm.hpp"
#include "words.hpp"
#include "wreath.hpp"

namespace sepgrowth {

  struct SuiteResult {
    std::string              name;
    std::uint64_t            checks   = 0;
    std::uint64_t            failures = 0;
    std::vector<std::string> failure_details;  // the first few failures
    std::vector<std::string> notes;

    bool passed() const noexcept {
      return failures == 0 && checks > 0;
    }

    void check(bool ok, std::string const& what) {
      ++checks;
      if (!ok) {
        ++failures;
        if (failure_details.size() < 10) {
          failure_details.push_back(what);
        }
      }
    }
  };

  ////////////////////////////////////////////////////////////////////////
  // Random words
  ////////////////////////////////////////////////////////////////////////

  //! Uniform among the 4 * 3^{L-1} reduced words of length L.
  inline Word random_reduced_word(std::mt19937_64& rng, std::size_t L) {
    std::vector<Syllable> raw;
    int                   prev = -1;
    for (std::size_t i = 0; i < L; ++i) {
      int x;
      do {
        x = static_cast<int>(rng() % 4);
      } while (prev >= 0 && x == (prev ^ 1));
      raw.push_back({x < 2 ? Generator::a : Generator::b, (x & 1) ? -1 : 1});
      prev = x;
    }
    return Word::reduce(raw);
  }

  //! Half of the time a reduced word of uniform length in [1, L]; otherwise
  //! a commutator [x, y] of words with zero exponent sum in a, which is
  //! trivial at infinity, of length at most L.
  inline Word random_test_word(std::mt19937_64& rng, std::size_t L) {
    if (L == 0) {
      return {};
    }
    if (L < 4 || rng() % 2 == 0) {
      return random_reduced_word(rng, 1 + rng() % L);
    }
    auto balanced = [&](std::size_t budget) {
      for (;;) {
        auto       w = random_reduced_word(rng, 1 + rng() % budget);
        std::int64_t s = 0;
        for (auto const& y : w.syllables()) {
          if (y.gen == Generator::a) {
            s += y.exponent;
          }
        }
        w *= Word::a(-s);
        if (w.length() <= budget && !w.empty()) {
          return w;
        }
      }
    };
    for (;;) {
      auto const x = balanced(L / 2);
      auto const y = balanced(L / 2);
      auto const c = commutator(x, y);
      if (c.length() <= L) {
        return c;
      }
    }
  }

  namespace detail {
    inline Permutation dense_image(Word const&            w,
                                   ParameterTables const& t,
                                   Coordinate             c) {
      auto const d = t.d(c.n, c.m);
      return evaluate(w, make_alpha(d), make_beta(t.r(c.n), d),
                      PermutationGroup{d});
    }

    inline WreathElement dense_inf(Word const& w) {
      return evaluate(w, alpha_inf(), beta_inf(), WreathGroup{});
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Suites
  ////////////////////////////////////////////////////////////////////////

  //! For r = 1 mod 6 with 3 < r <= r_max and primes 4r < d <= d_cap: if
  //! d = 1 mod 6 then g1, g2 are single d-cycles, conjugate in Alt(d), and
  //! the conjugator fixing 0 is even; if d = 5 mod 6 then g1 has three
  //! cycles, g2 one, and they are not conjugate.
  inline SuiteResult verify_appendix(std::uint64_t r_max  = 31,
                                     std::uint64_t d_cap  = 200) {
    SuiteResult out;
    out.name = "appendix";
    for (std::uint64_t r = 7; r <= r_max; r += 6) {
      for (std::uint64_t d = 4 * r + 1; d <= d_cap; ++d) {
        if (!is_prime(d)) {
          continue;
        }
        PermutationGroup ctx{d};
        auto const       a  = make_alpha(d);
        auto const       b  = make_beta(r, d);
        auto const       p1 = evaluate(g1_word(r), a, b, ctx);
        auto const       p2 = evaluate(g2_word(r), a, b, ctx);
        auto const       t1 = cycle_type(p1);
        auto const       t2 = cycle_type(p2);
        auto const where = "r=" + std::to_string(r) + " d=" + std::to_string(d);
        if (d % 6 == 1) {
          bool ok = t1.lengths == std::vector<std::size_t>{d}
                    && t2.lengths == std::vector<std::size_t>{d}
                    && is_conjugate_alt(p1, p2)
                    && is_even(canonical_conjugator_single_cycle(p1, p2, 0));
          out.check(ok, where + ": expected conjugate single cycles");
        } else {
          bool ok = t1.cycle_count() == 3 && t1.fixed_points() == 0
                    && t2.lengths == std::vector<std::size_t>{d}
                    && !is_conjugate_alt(p1, p2);
          out.check(ok, where + ": expected 3 vs 1 cycles, not conjugate");
        }
      }
    }
    return out;
  }

  //! For random words w of length L: at every coordinate with r >= 2L + 1
  //! and d - 2r >= 2L + 1, w is trivial iff it is trivial at infinity.
  inline SuiteResult verify_locality(ParameterTables const& t,
                                     std::size_t            len,
                                     std::uint64_t          trials,
                                     std::uint64_t          seed) {
    SuiteResult     out;
    out.name = "locality";
    std::mt19937_64 rng(seed);
    std::uint64_t   kernel = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
      auto const w   = random_test_word(rng, len);
      auto const L   = w.length();
      bool const inf = detail::dense_inf(w).is_identity();
      kernel += inf;
      for (auto c : table_coordinates(t)) {
        auto const r = t.r(c.n);
        auto const d = t.d(c.n, c.m);
        if (r < 2 * L + 1 || d < 2 * r + 2 * L + 1) {
          continue;
        }
        out.check(detail::dense_image(w, t, c).is_identity() == inf,
                  to_string(w) + " at " + to_string(c));
      }
    }
    out.notes.push_back(std::to_string(kernel)
                        + " words trivial at infinity");
    return out;
  }

  //! v_{r(m)} = [a^{r(m)} b^-1 a^{-r(m)}, b^-1] is trivial at every
  //! coordinate of row n iff m != n, for m, n <= n_max.
  inline SuiteResult verify_commute(ParameterTables const& t,
                                    std::size_t            n_max) {
    SuiteResult out;
    out.name = "commute";
    n_max    = std::min(n_max, t.n_max());
    for (std::size_t m = 1; m <= n_max; ++m) {
      auto const v = v_word(t.r(m));
      for (std::size_t n = 1; n <= n_max; ++n) {
        for (std::size_t k = 1; k <= t.m_n(n); ++k) {
          bool const trivial = detail::dense_image(v, t, {n, k}).is_identity();
          out.check(trivial == (m != n),
                    "v_" + std::to_string(m) + " at "
                        + to_string(Coordinate{n, k}));
        }
      }
    }
    return out;
  }

  //! w_{n,m} is the 3-cycle (0, d(n,m) - 3r(n), 3r(n)) at (n, m) and trivial
  //! at infinity, on every other row and at (n, m') for m' > m.
  inline SuiteResult verify_alt_containment(ParameterTables const& t,
                                            std::size_t            n_max) {
    SuiteResult out;
    out.name = "alt-containment";
    n_max    = std::min(n_max, t.n_max());
    for (std::size_t n = 1; n <= n_max; ++n) {
      auto const r = t.r(n);
      for (std::size_t m = 1; m <= t.m_n(n); ++m) {
        auto const d = t.d(n, m);
        auto const w = w_word(r, d);
        auto const tag =
            "w_{" + std::to_string(n) + "," + std::to_string(m) + "}";
        out.check(detail::dense_inf(w).is_identity(), tag + " at infinity");
        for (auto c : table_coordinates(t)) {
          auto const p = detail::dense_image(w, t, c);
          if (c.n == n && c.m == m) {
            auto const want = parse_cycles(
                "(0 " + std::to_string(d - 3 * r) + " " + std::to_string(3 * r)
                    + ")",
                d);
            out.check(p == want, tag + " at its own coordinate");
          } else if (c.n != n || c.m > m) {
            out.check(p.is_identity(), tag + " at " + to_string(c));
          }
        }
      }
    }
    return out;
  }

  //! For random words w: on each row, triviality agrees between all
  //! coordinates with d - 2r >= 2|w| + 2.
  inline SuiteResult verify_d_invariance(ParameterTables const& t,
                                         std::size_t            len,
                                         std::uint64_t          trials,
                                         std::uint64_t          seed) {
    SuiteResult     out;
    out.name = "d-invariance";
    std::mt19937_64 rng(seed);
    std::uint64_t   compared = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
      auto const w = random_test_word(rng, len);
      auto const L = w.length();
      for (std::size_t n = 1; n <= t.n_max(); ++n) {
        auto const      r = t.r(n);
        std::vector<bool> trivial;
        for (std::size_t m = 1; m <= t.m_n(n); ++m) {
          if (t.d(n, m) >= 2 * r + 2 * L + 2) {
            trivial.push_back(
                detail::dense_image(w, t, {n, m}).is_identity());
          }
        }
        for (std::size_t j = 1; j < trivial.size(); ++j) {
          ++compared;
          out.check(trivial[j] == trivial[0],
                    to_string(w) + " on row " + std::to_string(n));
        }
      }
    }
    out.notes.push_back(std::to_string(compared) + " coordinate pairs");
    return out;
  }

  //! rf_lower_witness(n) = rf_upper(g_n) = Alt(d(n,1)) and
  //! conj_pair_witness(n) = conj_upper(g1, g2) = Alt(d(n, m_n)) with their
  //! norm certificates, for n <= n_max.
  inline SuiteResult verify_witnesses(ParameterTables const& t,
                                      std::size_t            n_max,
                                      bool                   relaxed = false) {
    SuiteResult out;
    out.name = "witnesses";
    n_max    = std::min(n_max, t.n_max());
    for (std::size_t n = 1; n <= n_max; ++n) {
      auto const tag = "n=" + std::to_string(n);
      auto const r   = t.r(n);
      try {
        auto const lo = rf_lower_witness(n, t);
        auto const up = rf_upper(v_word(r), t);
        out.check(lo.value == QuotientSize::alt(t.d(n, 1))
                      && up.value == lo.value && lo.norm == 4 * r + 4
                      && lo.norm <= lo.norm_bound,
                  tag + ": rf sandwich");
      } catch (PremiseFailure const& e) {
        out.check(false, tag + ": rf premise " + e.clause() + ": " + e.what());
      }
      try {
        auto const lo = conj_pair_witness(n, t, relaxed);
        auto const up = conj_upper(g1_word(r), g2_word(r), t);
        out.check(lo.value == QuotientSize::alt(t.d2(n))
                      && up.value == lo.value && lo.norm <= lo.norm_bound,
                  tag + ": conj sandwich");
      } catch (PremiseFailure const& e) {
        out.check(false,
                  tag + ": conj premise " + e.clause() + ": " + e.what());
      }
    }
    return out;
  }

  //! Six rows with r(n) = 7, 13, ..., 37, each row (d_1, d_2) with d_1 the
  //! least prime = 1 mod 6 above 6r and d_2 the least prime = 5 mod 6 above
  //! 2 d_1. Valid with the default constants.
  inline ParameterTables locality_toy_tables() {
    TableConstants k;
    return ParameterTables(TableMode::double_index,
                           k,
                           {{7, {43, 89}},
                            {13, {79, 167}},
                            {19, {127, 257}},
                            {25, {151, 311}},
                            {31, {193, 389}},
                            {37, {223, 449}}});
  }

}  // namespace sepgrowth

#endif  // SEPGROWTH_VERIFY_HPP_
