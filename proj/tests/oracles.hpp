#ifndef SEPGROWTH_TESTS_ORACLES_HPP_
#define SEPGROWTH_TESTS_ORACLES_HPP_

// Brute-force reference implementations. None of these use the deciders
// under test; they enumerate, multiply literally and compare.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "sepgrowth/groups.hpp"
#include "sepgrowth/params.hpp"
#include "sepgrowth/perm.hpp"
#include "sepgrowth/words.hpp"
#include "sepgrowth/wreath.hpp"

namespace oracle {

  using namespace sepgrowth;

  ////////////////////////////////////////////////////////////////////////
  // Permutations
  ////////////////////////////////////////////////////////////////////////

  inline bool is_even_by_inversions(std::vector<point_type> const& v) {
    std::size_t inv = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        inv += v[i] > v[j];
      }
    }
    return inv % 2 == 0;
  }

  //! Every permutation of degree d, in lexicographic order of image tables.
  inline std::vector<Permutation> all_permutations(std::size_t d) {
    std::vector<point_type> v(d);
    std::iota(v.begin(), v.end(), 0);
    std::vector<Permutation> out;
    do {
      out.emplace_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
  }

  inline std::vector<Permutation> all_even_permutations(std::size_t d) {
    std::vector<point_type> v(d);
    std::iota(v.begin(), v.end(), 0);
    std::vector<Permutation> out;
    do {
      if (is_even_by_inversions(v)) {
        out.emplace_back(v);
      }
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
  }

  //! Literal s p s^-1 via image tables: (s p s^-1)(s(x)) = s(p(x)).
  inline std::vector<point_type> conj_images(Permutation const& s,
                                             Permutation const& p) {
    std::vector<point_type> out(p.degree());
    for (point_type x = 0; x < p.degree(); ++x) {
      out[s(x)] = s(p(x));
    }
    return out;
  }

  inline bool alt_conjugate_exhaustive(Permutation const&              p,
                                       Permutation const&              q,
                                       std::vector<Permutation> const& alt) {
    auto const target = std::vector<point_type>(q.images().begin(),
                                                q.images().end());
    for (auto const& s : alt) {
      if (conj_images(s, p) == target) {
        return true;
      }
    }
    return false;
  }

  //! Class labels of Alt(d) for small d, keyed by image table.
  class AltClasses {
   public:
    explicit AltClasses(std::size_t d) : _alt(all_even_permutations(d)) {
      for (auto const& p : _alt) {
        auto key = images(p);
        if (_label.count(key)) {
          continue;
        }
        auto const id = _count++;
        for (auto const& s : _alt) {
          _label.emplace(conj_images(s, p), id);
        }
      }
    }

    std::size_t label(Permutation const& p) const {
      return _label.at(images(p));
    }

    std::size_t class_count() const {
      return _count;
    }

    std::vector<Permutation> const& elements() const {
      return _alt;
    }

   private:
    static std::vector<point_type> images(Permutation const& p) {
      return {p.images().begin(), p.images().end()};
    }

    std::vector<Permutation>                       _alt;
    std::map<std::vector<point_type>, std::size_t> _label;
    std::size_t                                    _count = 0;
  };

  ////////////////////////////////////////////////////////////////////////
  // Z_3 wr Z
  ////////////////////////////////////////////////////////////////////////

  //! Elements with support in [lo, hi] and shift in [-tmax, tmax].
  inline std::vector<WreathElement> wreath_box(std::int64_t lo,
                                               std::int64_t hi,
                                               std::int64_t tmax) {
    std::vector<WreathElement> out;
    auto const                 width = static_cast<std::size_t>(hi - lo + 1);
    std::size_t                total = 1;
    for (std::size_t i = 0; i < width; ++i) {
      total *= 3;
    }
    for (std::int64_t t = -tmax; t <= tmax; ++t) {
      for (std::size_t code = 0; code < total; ++code) {
        std::map<std::int64_t, std::int64_t> m;
        auto                                 c = code;
        for (std::size_t i = 0; i < width; ++i) {
          m[lo + static_cast<std::int64_t>(i)] = static_cast<std::int64_t>(c % 3);
          c /= 3;
        }
        out.emplace_back(m, t);
      }
    }
    return out;
  }

  //! Enumerates conjugators c = (g, s) with supp g in [-B, B] and |s| <= B,
  //! assigning g position by position in the order in which each value of
  //! the conjugate's lamp function becomes final, pruning as soon as a
  //! final value is rejected by `accept`. Each surviving leaf is re-checked
  //! by literal multiplication and passed to `emit`.
  inline void wreath_conjugates(
      WreathElement const&                               e,
      std::int64_t                                       B,
      std::function<bool(std::int64_t, lamp_type)> const& accept,
      std::function<void(WreathElement const&, WreathElement const&)> const&
          emit) {
    auto const t = e.shift();
    for (std::int64_t s = -B; s <= B; ++s) {
      // lamp function of tau_s f
      std::map<std::int64_t, lamp_type> moved;
      for (auto const& [x, v] : e.support()) {
        moved[x + s] = v;
      }
      auto tf = [&](std::int64_t x) -> lamp_type {
        auto it = moved.find(x);
        return it == moved.end() ? 0 : it->second;
      };
      auto finish = [&](std::map<std::int64_t, std::int64_t> const& g) {
        WreathElement const c(g, s);
        auto const          conj = c * e * c.inverse();
        for (auto const& [x, v] : conj.support()) {
          if (!accept(x, v)) {
            return;
          }
        }
        emit(c, conj);
      };
      if (t == 0) {
        // the lamp part of c cancels: c e c^-1 = (tau_s f, 0)
        finish({});
        continue;
      }
      // f'(y) = tau_s f(y) + g(y) - g(y - t); for t > 0 walk y upward so
      // g(y - t) is known, for t < 0 walk downward.
      auto const                 T     = t > 0 ? t : -t;
      std::int64_t const         first = t > 0 ? -B : B;
      std::int64_t const         step  = t > 0 ? 1 : -1;
      std::vector<lamp_type>     g(static_cast<std::size_t>(2 * B + 1), 0);
      auto gat = [&](std::int64_t y) -> lamp_type {
        return (y < -B || y > B) ? 0 : g[static_cast<std::size_t>(y + B)];
      };
      auto value_at = [&](std::int64_t y) {
        return static_cast<lamp_type>(
            (tf(y) + gat(y) + 3 - gat(y - t)) % 3);
      };
      // positions beyond the window whose value is decided by g alone
      std::int64_t const tail_lo = t > 0 ? B + 1 : -B - T;
      std::int64_t const tail_hi = t > 0 ? B + T : -B - 1;
      std::function<void(std::int64_t)> rec = [&](std::int64_t y) {
        if (y < -B || y > B) {
          for (auto z = tail_lo; z <= tail_hi; ++z) {
            if (!accept(z, value_at(z))) {
              return;
            }
          }
          // positions before the window only see tau_s f
          for (auto const& [x, v] : moved) {
            if ((x < -B || x > B) && (x < tail_lo || x > tail_hi)
                && !accept(x, v)) {
              return;
            }
          }
          std::map<std::int64_t, std::int64_t> gm;
          for (std::int64_t z = -B; z <= B; ++z) {
            if (gat(z) != 0) {
              gm[z] = gat(z);
            }
          }
          finish(gm);
          return;
        }
        for (lamp_type v = 0; v < 3; ++v) {
          g[static_cast<std::size_t>(y + B)] = v;
          if (accept(y, value_at(y))) {
            rec(y + step);
          }
        }
        g[static_cast<std::size_t>(y + B)] = 0;
      };
      rec(first);
    }
  }

  //! Some c with supp g in [-B, B], |s| <= B and c e1 c^-1 = e2.
  inline std::optional<WreathElement>
  wreath_conjugator_bounded(WreathElement const& e1,
                            WreathElement const& e2,
                            std::int64_t         B) {
    if (e1.shift() != e2.shift()) {
      return std::nullopt;
    }
    std::optional<WreathElement> found;
    wreath_conjugates(
        e1, B,
        [&](std::int64_t y, lamp_type v) { return !found && e2.lamp(y) == v; },
        [&](WreathElement const& c, WreathElement const& conj) {
          if (!found && conj == e2) {
            found = c;
          }
        });
    return found;
  }

  //! Exhaustive conjugacy in Z_3 wr Z_k over all 3^k k conjugators.
  inline bool finite_conjugate_exhaustive(FiniteWreathElement const& x,
                                          FiniteWreathElement const& y) {
    auto const  k     = x.modulus();
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
      total *= 3;
    }
    for (std::size_t s = 0; s < k; ++s) {
      for (std::size_t code = 0; code < total; ++code) {
        std::vector<lamp_type> f(k);
        auto                   c = code;
        for (std::size_t i = 0; i < k; ++i) {
          f[i] = static_cast<lamp_type>(c % 3);
          c /= 3;
        }
        FiniteWreathElement const g(f, s);
        if (g * x * g.inverse() == y) {
          return true;
        }
      }
    }
    return false;
  }

  ////////////////////////////////////////////////////////////////////////
  // Words and tables
  ////////////////////////////////////////////////////////////////////////

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

  //! Trivial at infinity and at every coordinate of the table.
  inline bool is_identity_everywhere(Word const& w, ParameterTables const& t) {
    if (!dense_inf(w).is_identity()) {
      return false;
    }
    for (auto c : table_coordinates(t)) {
      if (!dense_image(w, t, c).is_identity()) {
        return false;
      }
    }
    return true;
  }

  inline bool is_prime_trial(std::uint64_t n) {
    if (n < 2) {
      return false;
    }
    for (std::uint64_t p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        return false;
      }
    }
    return true;
  }

  inline std::uint64_t next_prime_scan(std::uint64_t lower,
                                       std::uint64_t residue,
                                       std::uint64_t modulus) {
    for (auto p = lower + 1;; ++p) {
      if (p % modulus == residue % modulus && is_prime_trial(p)) {
        return p;
      }
    }
  }

  //! Every reduced word of length <= L, built letter by letter.
  inline std::vector<Word> words_up_to(std::size_t L) {
    std::vector<Word> out{Word()};
    std::vector<Word> frontier{Word()};
    std::vector<int>  last{-1};
    for (std::size_t len = 1; len <= L; ++len) {
      std::vector<Word> next;
      std::vector<int>  next_last;
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        for (int x = 0; x < 4; ++x) {
          if (last[i] >= 0 && x == (last[i] ^ 1)) {
            continue;
          }
          auto const letter = x < 2 ? Word::a(x == 0 ? 1 : -1)
                                    : Word::b(x == 2 ? 1 : -1);
          next.push_back(frontier[i] * letter);
          next_last.push_back(x);
        }
      }
      out.insert(out.end(), next.begin(), next.end());
      frontier = std::move(next);
      last     = std::move(next_last);
    }
    return out;
  }

}  // namespace oracle

#endif  // SEPGROWTH_TESTS_ORACLES_HPP_
