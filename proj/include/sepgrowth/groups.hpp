#ifndef SEPGROWTH_GROUPS_HPP_
#define SEPGROWTH_GROUPS_HPP_

// The group generated by alpha_* and beta_* inside
//
//   prod_{(n, m)} Alt(d(n, m))  x  Z_3 wr Z,
//
// truncated to the rows of a parameter table. Coordinates are (n, m) with
// 1 <= n <= n_max and 1 <= m <= m_n; larger m repeat d(n, m_n) and so
// carry the same image.
//
// Writing w = (prod_i a^{s_i} b^{f_i} a^{-s_i}) a^S, the image of w at a
// coordinate of degree d is x -> P(x + S) with P the product of the
// 3-cycles (s_i, s_i + r, s_i + 2r)^{f_i}, so triviality and sparse images
// cost O(k^2) in the number k of b-syllables, independent of d.

#include <algorithm>  // for sort, unique
#include <cstddef>    // for size_t
#include <cstdint>    // for int64_t, uint64_t
#include <map>        // for map
#include <mutex>      // for mutex, lock_guard
#include <optional>   // for optional
#include <string>     // for string
#include <utility>    // for pair
#include <vector>     // for vector

#include "errors.hpp"
#include "params.hpp"
#include "perm.hpp"
#include "words.hpp"
#include "wreath.hpp"

namespace sepgrowth {

  struct Coordinate {
    std::size_t n = 1;
    std::size_t m = 1;

    friend auto operator<=>(Coordinate const&, Coordinate const&) = default;
  };

  inline std::string to_string(Coordinate c) {
    return "(" + std::to_string(c.n) + "," + std::to_string(c.m) + ")";
  }

  //! Every coordinate (n, m) with m <= m_n.
  inline std::vector<Coordinate> table_coordinates(ParameterTables const& t) {
    std::vector<Coordinate> out;
    for (std::size_t n = 1; n <= t.n_max(); ++n) {
      for (std::size_t m = 1; m <= t.m_n(n); ++m) {
        out.push_back({n, m});
      }
    }
    return out;
  }

  //! Coordinates with r(n) < T or d(n, m) - 2 r(n) < T. A word u of length
  //! L with trivial image at infinity has trivial image at every coordinate
  //! outside this set for T = 2L + 1.
  inline std::vector<Coordinate> sensitive_set(ParameterTables const& t,
                                               std::uint64_t threshold) {
    std::vector<Coordinate> out;
    auto const              T = static_cast<std::int64_t>(threshold);
    for (std::size_t n = 1; n <= t.n_max(); ++n) {
      auto const r = static_cast<std::int64_t>(t.r(n));
      for (std::size_t m = 1; m <= t.m_n(n); ++m) {
        auto const d = static_cast<std::int64_t>(t.d(n, m));
        if (r < T || d - 2 * r < T) {
          out.push_back({n, m});
        }
      }
    }
    return out;
  }

  inline std::uint64_t locality_threshold(std::uint64_t length) {
    return 2 * length + 1;
  }

  //! True when every row beyond the table is outside the sensitive set for
  //! words of the given length, so that decisions made on the table also
  //! hold in the untruncated group (uses r(n) >= n and 6 r(n) < d(n, 1)).
  inline bool table_covers_length(ParameterTables const& t,
                                  std::uint64_t          length) {
    return t.n_max() + 1 >= locality_threshold(length);
  }

  ////////////////////////////////////////////////////////////////////////
  // Coordinate images
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline std::uint64_t mod_d(std::int64_t x, std::uint64_t d) {
      return static_cast<std::uint64_t>(
          floor_mod(x, static_cast<std::int64_t>(d)));
    }

    // P(x) for the 3-cycle product of a conjugate form.
    inline std::uint64_t apply_factors(ConjugateForm const& cf,
                                       std::uint64_t        r,
                                       std::uint64_t        d,
                                       std::uint64_t        x) {
      auto const r2 = (2 * r) % d;
      for (auto it = cf.factors.rbegin(); it != cf.factors.rend(); ++it) {
        auto const e = floor_mod(it->exponent, 3);
        if (e == 0) {
          continue;
        }
        auto const s = mod_d(it->offset, d);
        auto const o = (x + d - s) % d;
        int        j;
        if (o == 0) {
          j = 0;
        } else if (o == r) {
          j = 1;
        } else if (o == r2) {
          j = 2;
        } else {
          continue;
        }
        j              = static_cast<int>((j + e) % 3);
        std::uint64_t const off[3] = {0, r, r2};
        x              = (s + off[j]) % d;
      }
      return x;
    }

    // Sorted distinct points moved by some factor.
    inline std::vector<std::uint64_t> touched_points(ConjugateForm const& cf,
                                                     std::uint64_t        r,
                                                     std::uint64_t        d) {
      std::vector<std::uint64_t> pts;
      for (auto const& f : cf.factors) {
        if (floor_mod(f.exponent, 3) == 0) {
          continue;
        }
        auto const s = mod_d(f.offset, d);
        pts.push_back(s);
        pts.push_back((s + r) % d);
        pts.push_back((s + 2 * r) % d);
      }
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      return pts;
    }

    inline void check_coordinate_params(std::uint64_t r, std::uint64_t d) {
      if (r == 0 || 2 * r >= d) {
        throw DegenerateParameter("coordinate needs 0 < r and 2r < d");
      }
    }
  }  // namespace detail

  //! Whether w(alpha_d, beta_{r,d}) is the identity.
  inline bool alt_image_is_identity(ConjugateForm const& cf,
                                    std::uint64_t        r,
                                    std::uint64_t        d) {
    detail::check_coordinate_params(r, d);
    if (detail::mod_d(cf.shift, d) != 0) {
      return false;
    }
    for (auto x : detail::touched_points(cf, r, d)) {
      if (detail::apply_factors(cf, r, d, x) != x) {
        return false;
      }
    }
    return true;
  }

  //! w(alpha_d, beta_{r,d}) as a dense permutation in O(d + k^2).
  inline Permutation alt_image(ConjugateForm const& cf,
                               std::uint64_t        r,
                               std::uint64_t        d) {
    detail::check_coordinate_params(r, d);
    auto const              S = detail::mod_d(cf.shift, d);
    std::vector<point_type> img(d);
    for (std::uint64_t x = 0; x < d; ++x) {
      img[x] = static_cast<point_type>((x + S) % d);
    }
    for (auto y : detail::touched_points(cf, r, d)) {
      img[(y + d - S) % d]
          = static_cast<point_type>(detail::apply_factors(cf, r, d, y));
    }
    return Permutation(std::move(img));
  }

  ////////////////////////////////////////////////////////////////////////
  // TruncatedElement
  ////////////////////////////////////////////////////////////////////////

  //! An element of the truncated group, identified with a defining word.
  //! Dense coordinate images and their cycle types are computed on demand
  //! and cached; concurrent use is safe. The tables must outlive the
  //! element.
  class TruncatedElement {
   public:
    TruncatedElement(Word w, ParameterTables const& t)
        : _word(std::move(w)),
          _tables(&t),
          _form(conjugate_form(_word)),
          _inf(evaluate_inf(_word)) {}

    TruncatedElement(TruncatedElement const& that)
        : _word(that._word),
          _tables(that._tables),
          _form(that._form),
          _inf(that._inf) {}

    TruncatedElement& operator=(TruncatedElement const& that) {
      if (this != &that) {
        std::lock_guard<std::mutex> lock(_mtx);
        _word   = that._word;
        _tables = that._tables;
        _form   = that._form;
        _inf    = that._inf;
        _perm.clear();
        _type.clear();
      }
      return *this;
    }

    Word const& word() const noexcept {
      return _word;
    }

    ParameterTables const& tables() const noexcept {
      return *_tables;
    }

    ConjugateForm const& form() const noexcept {
      return _form;
    }

    //! The image at infinity.
    WreathElement const& inf() const noexcept {
      return _inf;
    }

    bool is_trivial_at(Coordinate c) const {
      auto const k = clamp(c);
      return alt_image_is_identity(
          _form, _tables->r(k.n), _tables->d(k.n, k.m));
    }

    Permutation const& projection(Coordinate c) const {
      auto const                  k = clamp(c);
      std::lock_guard<std::mutex> lock(_mtx);
      auto                        it = _perm.find(k);
      if (it == _perm.end()) {
        it = _perm
                 .emplace(k,
                          alt_image(_form,
                                    _tables->r(k.n),
                                    _tables->d(k.n, k.m)))
                 .first;
      }
      return it->second;
    }

    CycleType const& cycle_type(Coordinate c) const {
      auto const& p = projection(c);
      auto const  k = clamp(c);
      std::lock_guard<std::mutex> lock(_mtx);
      auto                        it = _type.find(k);
      if (it == _type.end()) {
        it = _type.emplace(k, sepgrowth::cycle_type(p)).first;
      }
      return it->second;
    }

   private:
    Coordinate clamp(Coordinate c) const {
      if (c.n == 0 || c.n > _tables->n_max() || c.m == 0) {
        throw InvalidArgument("coordinate " + to_string(c)
                              + " outside the table");
      }
      return {c.n, std::min(c.m, _tables->m_n(c.n))};
    }

    Word                   _word;
    ParameterTables const* _tables;
    ConjugateForm          _form;
    WreathElement          _inf;

    mutable std::mutex                         _mtx;
    mutable std::map<Coordinate, Permutation> _perm;
    mutable std::map<Coordinate, CycleType>   _type;
  };

  inline Permutation projection(TruncatedElement const& e,
                                std::size_t             n,
                                std::size_t             m) {
    return e.projection({n, m});
  }

  inline WreathElement projection_inf(TruncatedElement const& e) {
    return e.inf();
  }

  ////////////////////////////////////////////////////////////////////////
  // Word problem
  ////////////////////////////////////////////////////////////////////////

  //! Trivial at infinity and at every coordinate of the sensitive set for
  //! T = 2|w| + 1.
  inline bool is_identity_element(Word const& w, ParameterTables const& t) {
    if (!evaluate_inf(w).is_identity()) {
      return false;
    }
    auto const cf = conjugate_form(w);
    for (auto c : sensitive_set(t, locality_threshold(w.length()))) {
      if (!alt_image_is_identity(cf, t.r(c.n), t.d(c.n, c.m))) {
        return false;
      }
    }
    return true;
  }

  inline bool is_identity_element(TruncatedElement const& e) {
    return is_identity_element(e.word(), e.tables());
  }

  ////////////////////////////////////////////////////////////////////////
  // Conjugacy
  ////////////////////////////////////////////////////////////////////////

  //! h = c * w0 where w0 is a word and c is supported on finitely many
  //! coordinates, each entry an even permutation.
  struct ConjugatorWitness {
    Word                              w0;
    std::map<Coordinate, Permutation> corrections;
  };

  struct ConjugacyDecision {
    bool                             conjugate = false;
    std::optional<ConjugatorWitness> witness;
    // When not conjugate: the infinity images are not conjugate, or the
    // first coordinate found where the Alt images are not.
    bool                      separated_at_inf = false;
    std::optional<Coordinate> separating;
    // Threshold used for the sensitive set, 2|w0 w1 w0^-1 w2^-1| + 1.
    std::uint64_t threshold = 0;
  };

  //! Whether the images of x and y at c are conjugate in Alt(d).
  inline bool coordinate_conjugate(TruncatedElement const& x,
                                   TruncatedElement const& y,
                                   Coordinate              c) {
    if (x.cycle_type(c) != y.cycle_type(c)) {
      return false;
    }
    return is_conjugate_alt(x.projection(c), y.projection(c));
  }

  //! Decides conjugacy: the images at infinity must be conjugate, say by
  //! g0 with word w0; then u = w0 w1 w0^-1 w2^-1 is trivial at infinity, so
  //! w0 already conjugates at every coordinate outside the sensitive set
  //! for T = 2|u| + 1, and the remaining coordinates are checked in Alt.
  inline ConjugacyDecision is_conjugate_element(TruncatedElement const& x,
                                                TruncatedElement const& y) {
    if (&x.tables() != &y.tables() && !(x.tables() == y.tables())) {
      throw InvalidArgument("elements over different tables");
    }
    auto const&       t = x.tables();
    ConjugacyDecision out;
    auto const        g0 = find_conjugator_wreath(x.inf(), y.inf());
    if (!g0) {
      out.separated_at_inf = true;
      return out;
    }
    ConjugatorWitness wit;
    wit.w0       = element_to_word(*g0);
    auto const u = wit.w0 * x.word() * wit.w0.inverse() * y.word().inverse();
    out.threshold = locality_threshold(u.length());
    auto const h0 = conjugate_form(wit.w0);
    for (auto c : sensitive_set(t, out.threshold)) {
      auto const& p = x.projection(c);
      auto const& q = y.projection(c);
      if (x.cycle_type(c) != y.cycle_type(c)) {
        out.separating = c;
        return out;
      }
      auto const s = find_conjugator_alt(p, q);
      if (!s) {
        out.separating = c;
        return out;
      }
      auto const base = alt_image(h0, t.r(c.n), t.d(c.n, c.m));
      auto       corr = compose(*s, inverse(base));
      if (!corr.is_identity()) {
        wit.corrections.emplace(c, std::move(corr));
      }
    }
    out.conjugate = true;
    out.witness   = std::move(wit);
    return out;
  }

  inline ConjugacyDecision is_conjugate_element(Word const&            w1,
                                                Word const&            w2,
                                                ParameterTables const& t) {
    return is_conjugate_element(TruncatedElement(w1, t),
                                TruncatedElement(w2, t));
  }

  //! Checks h w1 h^-1 = w2 exactly at infinity and at every coordinate of
  //! the table, and that every correction is even.
  inline bool verify_conjugator(ConjugatorWitness const& h,
                                Word const&              w1,
                                Word const&              w2,
                                ParameterTables const&   t) {
    auto const g = evaluate_inf(h.w0);
    if (!(g * evaluate_inf(w1) * g.inverse() == evaluate_inf(w2))) {
      return false;
    }
    auto const f0 = conjugate_form(h.w0);
    auto const f1 = conjugate_form(w1);
    auto const f2 = conjugate_form(w2);
    for (auto const& [c, corr] : h.corrections) {
      if (c.n == 0 || c.n > t.n_max() || c.m == 0 || c.m > t.m_n(c.n)
          || corr.degree() != t.d(c.n, c.m) || !is_even(corr)) {
        return false;
      }
    }
    for (auto c : table_coordinates(t)) {
      auto const r = t.r(c.n);
      auto const d = t.d(c.n, c.m);
      auto       s = alt_image(f0, r, d);
      if (auto it = h.corrections.find(c); it != h.corrections.end()) {
        s = compose(it->second, s);
      }
      if (!(conjugate(s, alt_image(f1, r, d)) == alt_image(f2, r, d))) {
        return false;
      }
    }
    return true;
  }

  //! The tables with the last coordinate of row n removed: m_n drops by one
  //! and d(n, m) = d(n, m_n - 1) for m >= m_n - 1. Revalidates.
  inline ParameterTables delete_top_coordinate(ParameterTables const& t,
                                               std::size_t            n,
                                               bool relaxed = false) {
    if (t.m_n(n) < 2) {
      throw InvalidArgument("delete_top_coordinate: row "
                            + std::to_string(n) + " has m_n = 1");
    }
    ParameterTables out = t;
    out.row(n).d.pop_back();
    auto const rep = validate(out, relaxed);
    if (!rep.ok()) {
      throw ValidationFailed("modified table fails validation: "
                             + rep.summary());
    }
    return out;
  }

}  // namespace sepgrowth

#endif  // SEPGROWTH_GROUPS_HPP_
