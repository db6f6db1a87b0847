#ifndef SEPGROWTH_DEPTH_HPP_
#define SEPGROWTH_DEPTH_HPP_

// Depth of elements and of non-conjugate pairs with respect to the
// quotients Alt(d(n, m)) (coordinate projections) and Z_3 wr Z_k (folded
// images of the coordinate at infinity). Values from rf_upper and
// conj_upper are upper bounds; rf_lower_witness and conj_pair_witness
// certify the matching lower bounds for the witness families.

#include <algorithm>  // for sort, max
#include <cmath>      // for lgamma, log10
#include <cstddef>    // for size_t
#include <cstdint>    // for uint64_t
#include <cstdio>     // for snprintf
#include <functional> // for function
#include <optional>   // for optional
#include <ostream>    // for ostream
#include <random>     // for mt19937_64
#include <sstream>    // for ostringstream
#include <string>     // for string
#include <vector>     // for vector

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "groups.hpp"
#include "params.hpp"
#include "words.hpp"
#include "wreath.hpp"

namespace sepgrowth {

  using big_int = boost::multiprecision::cpp_int;

  ////////////////////////////////////////////////////////////////////////
  // QuotientSize
  ////////////////////////////////////////////////////////////////////////

  class QuotientSize {
   public:
    enum class Kind { trivial, alt, wreath_mod };

    QuotientSize() = default;

    //! Alt(d), of order d!/2.
    static QuotientSize alt(std::uint64_t d) {
      if (d < 2) {
        throw InvalidArgument("Alt(d) needs d >= 2");
      }
      return QuotientSize(Kind::alt, d);
    }

    //! Z_3 wr Z_k, of order 3^k k.
    static QuotientSize wreath_mod(std::uint64_t k) {
      if (k == 0) {
        throw InvalidArgument("Z_3 wr Z_k needs k >= 1");
      }
      return QuotientSize(Kind::wreath_mod, k);
    }

    Kind kind() const noexcept {
      return _kind;
    }

    //! d for alt, k for wreath_mod.
    std::uint64_t parameter() const noexcept {
      return _param;
    }

    double log10_order() const {
      auto const x = static_cast<double>(_param);
      switch (_kind) {
        case Kind::alt:
          return std::lgamma(x + 1) / std::log(10.0) - std::log10(2.0);
        case Kind::wreath_mod:
          return x * std::log10(3.0) + std::log10(x);
        case Kind::trivial:
        default:
          return 0;
      }
    }

    big_int exact_order() const {
      big_int v = 1;
      switch (_kind) {
        case Kind::alt:
          for (std::uint64_t i = 3; i <= _param; ++i) {
            v *= i;
          }
          return v;
        case Kind::wreath_mod:
          for (std::uint64_t i = 0; i < _param; ++i) {
            v *= 3;
          }
          return v * _param;
        case Kind::trivial:
        default:
          return v;
      }
    }

    friend bool operator==(QuotientSize const&, QuotientSize const&)
        = default;

   private:
    QuotientSize(Kind k, std::uint64_t p) : _kind(k), _param(p) {}

    Kind          _kind  = Kind::trivial;
    std::uint64_t _param = 0;
  };

  inline char const* to_string(QuotientSize::Kind k) {
    switch (k) {
      case QuotientSize::Kind::alt:
        return "alt";
      case QuotientSize::Kind::wreath_mod:
        return "wreath_mod";
      case QuotientSize::Kind::trivial:
      default:
        return "trivial";
    }
  }

  inline std::string to_string(QuotientSize const& q) {
    switch (q.kind()) {
      case QuotientSize::Kind::alt:
        return "Alt(" + std::to_string(q.parameter()) + ")";
      case QuotientSize::Kind::wreath_mod:
        return "Z3wrZ" + std::to_string(q.parameter());
      case QuotientSize::Kind::trivial:
      default:
        return "1";
    }
  }

  //! Orders compared in log10, with an exact recount when the logs are
  //! within 1e-9 of each other.
  inline int compare_orders(QuotientSize const& a, QuotientSize const& b) {
    auto const la = a.log10_order();
    auto const lb = b.log10_order();
    if (la + 1e-9 < lb) {
      return -1;
    }
    if (lb + 1e-9 < la) {
      return 1;
    }
    auto const x = a.exact_order();
    auto const y = b.exact_order();
    return x < y ? -1 : (y < x ? 1 : 0);
  }

  inline bool operator<(QuotientSize const& a, QuotientSize const& b) {
    return compare_orders(a, b) < 0;
  }

  ////////////////////////////////////////////////////////////////////////
  // DepthReport
  ////////////////////////////////////////////////////////////////////////

  struct DepthReport {
    enum class Direction { upper, proven_lower };
    enum class Status { found, no_separating_quotient };

    QuotientSize              value;
    Direction                 direction = Direction::upper;
    Status                    status    = Status::found;
    std::optional<Coordinate> coordinate;  // for alt values
    std::optional<std::uint64_t> modulus;  // for wreath_mod values
    // Witness reports: word norm of the witness and the bound it meets.
    std::uint64_t            norm      = 0;
    std::uint64_t            norm_bound = 0;
    std::vector<std::string> premises;

    bool found() const noexcept {
      return status == Status::found;
    }
  };

  //! "Alt(307) at (1,1)" / "Z3wrZ2 (k=2)" / "none".
  inline std::string to_string(DepthReport const& r) {
    if (!r.found()) {
      return "no separating quotient found";
    }
    std::string s = to_string(r.value);
    if (r.coordinate) {
      s += " at " + to_string(*r.coordinate);
    }
    return s;
  }

  inline constexpr std::uint64_t default_k_cap = 12;

  namespace detail {
    // Coordinates sorted by (d, n, m).
    inline std::vector<Coordinate>
    coordinates_by_degree(ParameterTables const& t) {
      auto cs = table_coordinates(t);
      std::stable_sort(cs.begin(), cs.end(), [&](auto const& x, auto const& y) {
        return t.d(x.n, x.m) < t.d(y.n, y.m);
      });
      return cs;
    }

    inline void offer(DepthReport&              best,
                      QuotientSize const&       q,
                      std::optional<Coordinate> c,
                      std::optional<std::uint64_t> k) {
      if (!best.found() || q < best.value) {
        best.value      = q;
        best.status     = DepthReport::Status::found;
        best.coordinate = c;
        best.modulus    = k;
      }
    }

    inline DepthReport empty_report() {
      DepthReport r;
      r.status = DepthReport::Status::no_separating_quotient;
      return r;
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Upper bounds
  ////////////////////////////////////////////////////////////////////////

  //! The smallest quotient in the family where w is nontrivial.
  inline DepthReport rf_upper(TruncatedElement const& w,
                              std::uint64_t k_cap = default_k_cap) {
    if (is_identity_element(w)) {
      throw InvalidArgument("rf_upper: the element is trivial");
    }
    auto best = detail::empty_report();
    if (!w.inf().is_identity()) {
      for (std::uint64_t k = 1; k <= k_cap; ++k) {
        if (!project_mod_k(w.inf(), k).is_identity()) {
          detail::offer(best, QuotientSize::wreath_mod(k), std::nullopt, k);
          break;
        }
      }
    }
    auto const& t = w.tables();
    for (auto c : detail::coordinates_by_degree(t)) {
      auto const q = QuotientSize::alt(t.d(c.n, c.m));
      if (best.found() && !(q < best.value)) {
        break;
      }
      if (!w.is_trivial_at(c)) {
        detail::offer(best, q, c, std::nullopt);
        break;
      }
    }
    return best;
  }

  inline DepthReport rf_upper(Word const&            w,
                              ParameterTables const& t,
                              std::uint64_t          k_cap = default_k_cap) {
    return rf_upper(TruncatedElement(w, t), k_cap);
  }

  //! The smallest quotient in the family where the images of x and y are
  //! not conjugate; no_separating_quotient when only the coordinate at
  //! infinity separates and no Z_3 wr Z_k with k <= k_cap does.
  inline DepthReport conj_upper(TruncatedElement const& x,
                                TruncatedElement const& y,
                                std::uint64_t k_cap = default_k_cap) {
    if (is_conjugate_element(x, y).conjugate) {
      throw InvalidArgument("conj_upper: the elements are conjugate");
    }
    auto best = detail::empty_report();
    if (!is_conjugate_wreath(x.inf(), y.inf())) {
      for (std::uint64_t k = 1; k <= k_cap; ++k) {
        if (!is_conjugate_finite(project_mod_k(x.inf(), k),
                                 project_mod_k(y.inf(), k))) {
          detail::offer(best, QuotientSize::wreath_mod(k), std::nullopt, k);
          break;
        }
      }
    }
    auto const& t = x.tables();
    for (auto c : detail::coordinates_by_degree(t)) {
      auto const q = QuotientSize::alt(t.d(c.n, c.m));
      if (best.found() && !(q < best.value)) {
        break;
      }
      if (!coordinate_conjugate(x, y, c)) {
        detail::offer(best, q, c, std::nullopt);
        break;
      }
    }
    return best;
  }

  inline DepthReport conj_upper(Word const&            w1,
                                Word const&            w2,
                                ParameterTables const& t,
                                std::uint64_t          k_cap = default_k_cap) {
    return conj_upper(TruncatedElement(w1, t), TruncatedElement(w2, t), k_cap);
  }

  ////////////////////////////////////////////////////////////////////////
  // Witnesses
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline std::uint64_t r_window(ParameterTables const& t) {
      // r(n) < (M + 1) n, or r(n) < 18 n for single-index tables
      return t.mode() == TableMode::single_index ? 18 : t.constants().M + 1;
    }
  }  // namespace detail

  //! g_n = [a^{r(n)} b^-1 a^{-r(n)}, b^-1] is trivial at infinity and at
  //! every row other than n, and nontrivial at row n; any quotient in
  //! which it survives therefore has order at least d(n, 1)!/2.
  inline DepthReport rf_lower_witness(std::size_t n, ParameterTables const& t) {
    auto const       r = t.r(n);
    TruncatedElement g(v_word(r), t);
    DepthReport      out;
    out.direction = DepthReport::Direction::proven_lower;
    if (!g.inf().is_identity()) {
      throw PremiseFailure("inf", "g_n is nontrivial at infinity");
    }
    out.premises.push_back("trivial at infinity");
    bool nontrivial_here = false;
    for (auto c : table_coordinates(t)) {
      bool const trivial = g.is_trivial_at(c);
      if (c.n != n && !trivial) {
        throw PremiseFailure("rows",
                             "g_n is nontrivial at " + to_string(c));
      }
      if (c.n == n && !trivial && !nontrivial_here) {
        nontrivial_here = true;
        out.coordinate  = c;
      }
    }
    if (!nontrivial_here) {
      throw PremiseFailure("row", "g_n is trivial on its own row");
    }
    out.premises.push_back("trivial on every other row");
    out.premises.push_back("nontrivial at " + to_string(*out.coordinate));
    out.norm       = g.word().length();
    out.norm_bound = 4 * detail::r_window(t) * n + 4;
    if (out.norm != 4 * r + 4 || out.norm > out.norm_bound) {
      throw PremiseFailure("norm", "norm certificate fails");
    }
    out.premises.push_back("norm " + std::to_string(out.norm)
                           + " <= " + std::to_string(out.norm_bound));
    out.value = QuotientSize::alt(t.d(n, 1));
    return out;
  }

  //! For g1 = a^3 b^-1 v b^-1 and g2 = a^3 b v with v = g_n, checks
  //!  (i)   not conjugate at (n, m_n), where d = 5 mod 6;
  //!  (ii)  conjugate at (n, m) for m < m_n, where d = 1 mod 6;
  //!  (iii) equal at infinity and on every other row;
  //!  (iv)  conjugate once (n, m_n) is deleted from the tables;
  //! so any quotient separating them has order at least d(n, m_n)!/2.
  inline DepthReport conj_pair_witness(std::size_t            n,
                                       ParameterTables const& t,
                                       bool relaxed = false) {
    auto const r  = t.r(n);
    auto const mn = t.m_n(n);
    if (mn < 2 || t.d(n, mn) % 6 != 5 || r % 6 != 1) {
      throw PremiseFailure("pre",
                           "needs m_n >= 2, d(n, m_n) = 5 mod 6 and "
                           "r(n) = 1 mod 6");
    }
    for (std::size_t m = 1; m < mn; ++m) {
      if (t.d(n, m) % 6 != 1) {
        throw PremiseFailure("pre", "needs d(n, m) = 1 mod 6 for m < m_n");
      }
    }
    TruncatedElement g1(g1_word(r), t), g2(g2_word(r), t);
    DepthReport      out;
    out.direction = DepthReport::Direction::proven_lower;

    Coordinate const top{n, mn};
    if (coordinate_conjugate(g1, g2, top)) {
      throw PremiseFailure("i", "g1, g2 conjugate at " + to_string(top));
    }
    out.premises.push_back("(i) not conjugate at " + to_string(top));
    for (std::size_t m = 1; m < mn; ++m) {
      if (!coordinate_conjugate(g1, g2, {n, m})) {
        throw PremiseFailure("ii",
                             "g1, g2 not conjugate at "
                                 + to_string(Coordinate{n, m}));
      }
    }
    out.premises.push_back("(ii) conjugate at (n, m < m_n)");
    if (!(g1.inf() == g2.inf())) {
      throw PremiseFailure("iii", "g1, g2 differ at infinity");
    }
    for (auto c : table_coordinates(t)) {
      if (c.n != n && !(g1.projection(c) == g2.projection(c))) {
        throw PremiseFailure("iii", "g1, g2 differ at " + to_string(c));
      }
    }
    out.premises.push_back("(iii) equal at infinity and on other rows");
    auto const reduced = delete_top_coordinate(t, n, relaxed);
    auto const dec     = is_conjugate_element(g1.word(), g2.word(), reduced);
    if (!dec.conjugate
        || !verify_conjugator(*dec.witness, g1.word(), g2.word(), reduced)) {
      throw PremiseFailure("iv", "g1, g2 not conjugate on the reduced table");
    }
    out.premises.push_back("(iv) conjugate with (n, m_n) deleted");
    out.norm       = std::max(g1.word().length(), g2.word().length());
    out.norm_bound = 9 + 4 * detail::r_window(t) * n;
    if (out.norm > out.norm_bound) {
      throw PremiseFailure("norm", "norm certificate fails");
    }
    out.premises.push_back("norm " + std::to_string(out.norm)
                           + " <= " + std::to_string(out.norm_bound));
    out.coordinate = top;
    out.value      = QuotientSize::alt(t.d(n, mn));
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Growth tables
  ////////////////////////////////////////////////////////////////////////

  //! All freely reduced words of length exactly L, in a fixed order
  //! (4 * 3^{L-1} of them for L >= 1).
  inline std::vector<Word> reduced_words_of_length(std::size_t L) {
    std::vector<Word> out;
    if (L == 0) {
      out.emplace_back();
      return out;
    }
    // letters 0..3 = a, A, b, B; a letter may not follow its inverse
    std::vector<int> seq(L, 0);
    auto const       inv = [](int x) { return x ^ 1; };
    auto const       emit = [&] {
      std::vector<Syllable> raw;
      for (int x : seq) {
        raw.push_back({x < 2 ? Generator::a : Generator::b,
                       (x & 1) ? -1 : 1});
      }
      out.push_back(Word::reduce(raw));
    };
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == L) {
        emit();
        return;
      }
      for (int x = 0; x < 4; ++x) {
        if (i > 0 && x == inv(seq[i - 1])) {
          continue;
        }
        seq[i] = x;
        rec(i + 1);
      }
    };
    rec(0);
    return out;
  }

  enum class GrowthMode { rf, conj };

  inline char const* to_string(GrowthMode m) {
    return m == GrowthMode::rf ? "rf" : "conj";
  }

  struct GrowthRow {
    std::size_t  n;
    GrowthMode   mode;
    QuotientSize value;
    std::string  witness_params;
    std::uint64_t words_examined = 0;
    bool         found           = false;  // false if every element is trivial
    std::uint64_t unresolved      = 0;     // pairs with no quotient found
  };

  struct GrowthOptions {
    std::size_t   exhaustive_up_to = 5;  // conj mode
    std::uint64_t samples          = 4000;
    std::uint64_t seed             = 20240601;
    std::uint64_t k_cap            = default_k_cap;
  };

  namespace detail {
    inline std::string witness_params(DepthReport const& r,
                                      ParameterTables const& t) {
      std::ostringstream out;
      if (r.coordinate) {
        out << "d=" << t.d(r.coordinate->n, r.coordinate->m)
            << ";coord=" << r.coordinate->n << "." << r.coordinate->m;
      } else if (r.modulus) {
        out << "k=" << *r.modulus;
      }
      return out.str();
    }

    inline void absorb(GrowthRow&          row,
                       DepthReport const&  r,
                       ParameterTables const& t,
                       std::string const&  words) {
      if (!r.found()) {
        ++row.unresolved;
        return;
      }
      if (!row.found || row.value < r.value) {
        row.found          = true;
        row.value          = r.value;
        row.witness_params = witness_params(r, t) + ";" + words;
      }
    }
  }  // namespace detail

  //! Row n holds the largest upper bound over nontrivial elements (rf) or
  //! non-conjugate pairs (conj) of word length <= n. Conj rows up to
  //! exhaustive_up_to use every pair; later rows add the pairs (w, 1) for
  //! every w of length n plus seeded random pairs, so that row n of conj
  //! dominates row n of rf.
  inline std::vector<GrowthRow> growth_tables(ParameterTables const& t,
                                              std::size_t            L_max,
                                              GrowthMode             mode,
                                              GrowthOptions const& opt = {}) {
    std::vector<std::vector<TruncatedElement>> by_len;
    std::vector<GrowthRow>                     rows;
    GrowthRow                                  acc;
    acc.mode = mode;
    by_len.emplace_back();
    by_len[0].emplace_back(Word(), t);
    std::mt19937_64 rng(opt.seed);
    auto            pick = [&](std::uint64_t bound) {
      return static_cast<std::size_t>(rng() % bound);
    };
    auto label = [](Word const& w) { return "w=" + to_string(w); };
    auto label2 = [](Word const& u, Word const& v) {
      return "w1=" + to_string(u) + ";w2=" + to_string(v);
    };

    for (std::size_t n = 1; n <= L_max; ++n) {
      by_len.emplace_back();
      for (auto& w : reduced_words_of_length(n)) {
        by_len[n].emplace_back(std::move(w), t);
      }
      auto const& fresh = by_len[n];
      if (mode == GrowthMode::rf) {
        for (auto const& e : fresh) {
          ++acc.words_examined;
          if (!is_identity_element(e)) {
            detail::absorb(acc, rf_upper(e, opt.k_cap), t, label(e.word()));
          }
        }
      } else {
        auto consider = [&](TruncatedElement const& x,
                            TruncatedElement const& y) {
          ++acc.words_examined;
          if (!is_conjugate_element(x, y).conjugate) {
            detail::absorb(acc,
                           conj_upper(x, y, opt.k_cap),
                           t,
                           label2(x.word(), y.word()));
          }
        };
        if (n <= opt.exhaustive_up_to) {
          for (std::size_t i = 0; i < fresh.size(); ++i) {
            for (std::size_t len = 0; len < n; ++len) {
              for (auto const& y : by_len[len]) {
                consider(fresh[i], y);
              }
            }
            for (std::size_t j = i + 1; j < fresh.size(); ++j) {
              consider(fresh[i], fresh[j]);
            }
          }
        } else {
          for (auto const& x : fresh) {
            consider(x, by_len[0][0]);
          }
          std::uint64_t total = 0;
          for (auto const& b : by_len) {
            total += b.size();
          }
          for (std::uint64_t s = 0; s < opt.samples; ++s) {
            auto const& x = fresh[pick(fresh.size())];
            auto        j = pick(total);
            std::size_t len = 0;
            while (j >= by_len[len].size()) {
              j -= by_len[len].size();
              ++len;
            }
            consider(x, by_len[len][j]);
          }
        }
      }
      acc.n = n;
      rows.push_back(acc);
    }
    return rows;
  }

  inline double log10_value(GrowthRow const& r) {
    return r.found ? r.value.log10_order() : 0.0;
  }

  //! CSV with header n,mode,log10_depth,witness_kind,witness_params,
  //! words_examined.
  inline void write_csv(std::ostream& out, std::vector<GrowthRow> const& rows) {
    out << "n,mode,log10_depth,witness_kind,witness_params,words_examined\n";
    char buf[64];
    for (auto const& r : rows) {
      std::snprintf(buf, sizeof(buf), "%.6f", log10_value(r));
      out << r.n << ',' << to_string(r.mode) << ',' << buf << ','
          << (r.found ? to_string(r.value.kind()) : "trivial") << ','
          << r.witness_params << ',' << r.words_examined << '\n';
    }
  }

}  // namespace sepgrowth

#endif  // SEPGROWTH_DEPTH_HPP_
