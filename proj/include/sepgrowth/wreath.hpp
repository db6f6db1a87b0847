#ifndef SEPGROWTH_WREATH_HPP_
#define SEPGROWTH_WREATH_HPP_

// The lamplighter group Z_3 wr Z and its folded finite quotients
// Z_3 wr Z_k.
//
// An element is a pair (f, t) with f : Z -> Z_3 finitely supported and t an
// integer shift, multiplied by
//
//   (f, t) * (g, s) = (f + tau_t g, t + s),   (tau_t g)(x) = g(x - t).
//
// Conjugating (f, t) by (g, s) gives (tau_s f + g - tau_t g, t). For t != 0
// the functions g - tau_t g are exactly those whose sums over the residue
// classes mod |t| vanish, which yields the class-sum criterion below.

#include <algorithm>    // for sort, max, min
#include <cstddef>      // for size_t
#include <cstdint>      // for int64_t, uint8_t, uint64_t
#include <map>          // for map
#include <numeric>      // for gcd
#include <optional>     // for optional
#include <sstream>      // for ostringstream
#include <string>       // for string
#include <string_view>  // for string_view
#include <utility>      // for pair
#include <vector>       // for vector

#include "errors.hpp"
#include "words.hpp"

namespace sepgrowth {

  using lamp_type = std::uint8_t;

  namespace detail {
    inline std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
      auto r = x % m;
      return r < 0 ? r + m : r;
    }

    inline lamp_type add3(lamp_type x, lamp_type y) {
      return static_cast<lamp_type>((x + y) % 3);
    }

    inline lamp_type neg3(lamp_type x) {
      return static_cast<lamp_type>((3 - x) % 3);
    }

    inline lamp_type to_lamp(std::int64_t v) {
      return static_cast<lamp_type>(floor_mod(v, 3));
    }
  }  // namespace detail

  class WreathElement {
   public:
    using entry_type = std::pair<std::int64_t, lamp_type>;

    WreathElement() = default;

    //! Values are reduced mod 3; zero values are dropped.
    WreathElement(std::map<std::int64_t, std::int64_t> const& support,
                  std::int64_t                                shift)
        : _shift(shift) {
      for (auto const& [x, v] : support) {
        auto l = detail::to_lamp(v);
        if (l != 0) {
          _support.emplace_back(x, l);
        }
      }
    }

    //! alpha_inf = (0, 1).
    static WreathElement alpha() {
      return WreathElement({}, 1);
    }

    //! beta_inf = the generator of the lamp at 0.
    static WreathElement beta() {
      return WreathElement({{0, 1}}, 0);
    }

    static WreathElement delta(std::int64_t x, std::int64_t v = 1) {
      return WreathElement({{x, v}}, 0);
    }

    //! Nonzero lamps sorted by position.
    std::vector<entry_type> const& support() const noexcept {
      return _support;
    }

    std::int64_t shift() const noexcept {
      return _shift;
    }

    lamp_type lamp(std::int64_t x) const {
      auto it = std::lower_bound(
          _support.begin(), _support.end(), x,
          [](entry_type const& e, std::int64_t y) { return e.first < y; });
      return (it != _support.end() && it->first == x) ? it->second : 0;
    }

    bool is_identity() const noexcept {
      return _shift == 0 && _support.empty();
    }

    WreathElement inverse() const {
      // (f, t)^-1 = (-tau_{-t} f, -t)
      WreathElement e;
      e._shift = -_shift;
      e._support.reserve(_support.size());
      for (auto const& [x, v] : _support) {
        e._support.emplace_back(x - _shift, detail::neg3(v));
      }
      return e;
    }

    friend WreathElement operator*(WreathElement const& x,
                                   WreathElement const& y) {
      WreathElement e;
      e._shift = x._shift + y._shift;
      e._support.reserve(x._support.size() + y._support.size());
      auto i = x._support.begin();
      auto j = y._support.begin();
      while (i != x._support.end() || j != y._support.end()) {
        if (j == y._support.end()
            || (i != x._support.end() && i->first < j->first + x._shift)) {
          e._support.push_back(*i++);
        } else if (i == x._support.end()
                   || j->first + x._shift < i->first) {
          e._support.emplace_back(j->first + x._shift, j->second);
          ++j;
        } else {
          auto v = detail::add3(i->second, j->second);
          if (v != 0) {
            e._support.emplace_back(i->first, v);
          }
          ++i;
          ++j;
        }
      }
      return e;
    }

    friend bool operator==(WreathElement const&, WreathElement const&)
        = default;

   private:
    std::vector<entry_type> _support;
    std::int64_t            _shift = 0;
  };

  inline WreathElement alpha_inf() {
    return WreathElement::alpha();
  }

  inline WreathElement beta_inf() {
    return WreathElement::beta();
  }

  inline WreathElement multiply(WreathElement const& x,
                                WreathElement const& y) {
    return x * y;
  }

  inline WreathElement inverse(WreathElement const& x) {
    return x.inverse();
  }

  inline bool is_identity(WreathElement const& x) {
    return x.is_identity();
  }

  //! tau_s f as an element with the same shift.
  inline WreathElement translate(WreathElement const& e, std::int64_t s) {
    std::map<std::int64_t, std::int64_t> m;
    for (auto const& [x, v] : e.support()) {
      m[x + s] = v;
    }
    return WreathElement(m, e.shift());
  }

  //! Entry i is the sum of f(x) over x = i mod |t|; t must be nonzero.
  inline std::vector<lamp_type> class_sums(WreathElement const& e) {
    if (e.shift() == 0) {
      throw InvalidArgument("class_sums: shift must be nonzero");
    }
    auto const             T = e.shift() < 0 ? -e.shift() : e.shift();
    std::vector<lamp_type> sums(static_cast<std::size_t>(T), 0);
    for (auto const& [x, v] : e.support()) {
      auto& s = sums[static_cast<std::size_t>(detail::floor_mod(x, T))];
      s       = detail::add3(s, v);
    }
    return sums;
  }

  namespace detail {
    // Smallest s in [0, n) with b[i] = a[(i - s) mod n] for all i.
    inline std::optional<std::size_t>
    rotation_offset(std::vector<lamp_type> const& a,
                    std::vector<lamp_type> const& b) {
      auto const n = a.size();
      if (n != b.size()) {
        return std::nullopt;
      }
      for (std::size_t s = 0; s < n; ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
          ok = b[i] == a[(i + n - s) % n];
        }
        if (ok) {
          return s;
        }
      }
      return n == 0 ? std::optional<std::size_t>(0) : std::nullopt;
    }

    // The unique finitely supported g with g - tau_t g = h, for h whose
    // class sums mod |t| vanish and t != 0.
    inline std::map<std::int64_t, std::int64_t>
    telescope(WreathElement const& h, std::int64_t t) {
      auto const T = t < 0 ? -t : t;
      std::map<std::int64_t, std::vector<WreathElement::entry_type>> classes;
      for (auto const& e : h.support()) {
        classes[floor_mod(e.first, T)].push_back(e);
      }
      std::map<std::int64_t, std::int64_t> g;
      for (auto& [res, pts] : classes) {
        if (t < 0) {
          std::reverse(pts.begin(), pts.end());
        }
        // t > 0: g(x) = sum_{k>=0} h(x - kT), running upward.
        // t < 0: g(x) = sum_{k>=0} h(x + kT), running downward.
        std::int64_t const step = t > 0 ? T : -T;
        lamp_type          acc  = 0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
          acc = add3(acc, pts[j].second);
          if (acc == 0) {
            continue;
          }
          auto const stop = j + 1 < pts.size() ? pts[j + 1].first : 0;
          for (auto x = pts[j].first; x != stop; x += step) {
            g[x] = acc;
          }
        }
      }
      return g;
    }
  }  // namespace detail

  //! Some c with c * e1 * c^-1 = e2, if one exists.
  inline std::optional<WreathElement>
  find_conjugator_wreath(WreathElement const& e1, WreathElement const& e2) {
    if (e1.shift() != e2.shift()) {
      return std::nullopt;
    }
    auto const t = e1.shift();
    if (t == 0) {
      auto const& f1 = e1.support();
      auto const& f2 = e2.support();
      if (f1.size() != f2.size()) {
        return std::nullopt;
      }
      if (f1.empty()) {
        return WreathElement();
      }
      auto const s = f2.front().first - f1.front().first;
      for (std::size_t i = 0; i < f1.size(); ++i) {
        if (f1[i].first + s != f2[i].first || f1[i].second != f2[i].second) {
          return std::nullopt;
        }
      }
      return WreathElement({}, s);
    }
    auto const s = detail::rotation_offset(class_sums(e1), class_sums(e2));
    if (!s) {
      return std::nullopt;
    }
    auto const shift = static_cast<std::int64_t>(*s);
    // h = f2 - tau_s f1 has vanishing class sums.
    auto const moved = translate(e1, shift);
    auto const h     = WreathElement(
        [&] {
          std::map<std::int64_t, std::int64_t> m;
          for (auto const& [x, v] : e2.support()) {
            m[x] += v;
          }
          for (auto const& [x, v] : moved.support()) {
            m[x] -= v;
          }
          return m;
        }(),
        0);
    return WreathElement(detail::telescope(h, t), shift);
  }

  inline bool is_conjugate_wreath(WreathElement const& e1,
                                  WreathElement const& e2) {
    if (e1.shift() != e2.shift()) {
      return false;
    }
    if (e1.shift() == 0) {
      return find_conjugator_wreath(e1, e2).has_value();
    }
    return detail::rotation_offset(class_sums(e1), class_sums(e2))
        .has_value();
  }

  //! A reduced word w with w(alpha_inf, beta_inf) = e: the product over the
  //! support of a^x b^{+-1} a^-x, followed by a^t.
  inline Word element_to_word(WreathElement const& e) {
    Word w;
    for (auto const& [x, v] : e.support()) {
      w *= Word::a(x) * Word::b(v == 1 ? 1 : -1) * Word::a(-x);
    }
    w *= Word::a(e.shift());
    return w;
  }

  //! "(x1:v1, x2:v2 | t)", support sorted by position.
  inline std::string to_string(WreathElement const& e) {
    std::ostringstream out;
    out << '(';
    bool first = true;
    for (auto const& [x, v] : e.support()) {
      out << (first ? "" : ", ") << x << ':' << static_cast<int>(v);
      first = false;
    }
    out << (first ? "| " : " | ") << e.shift() << ')';
    return out.str();
  }

  struct WreathGroup {
    using element_type = WreathElement;

    WreathElement identity() const {
      return {};
    }
    WreathElement multiply(WreathElement const& x,
                           WreathElement const& y) const {
      return x * y;
    }
    WreathElement inverse(WreathElement const& x) const {
      return x.inverse();
    }
  };

  //! w(alpha_inf, beta_inf), computed from the conjugate form in
  //! O(|w| log |w|).
  inline WreathElement evaluate_inf(Word const& w) {
    auto const                           cf = conjugate_form(w);
    std::map<std::int64_t, std::int64_t> m;
    for (auto const& f : cf.factors) {
      m[f.offset] += f.exponent;
    }
    return WreathElement(m, cf.shift);
  }

  ////////////////////////////////////////////////////////////////////////
  // Finite quotients Z_3 wr Z_k
  ////////////////////////////////////////////////////////////////////////

  class FiniteWreathElement {
   public:
    FiniteWreathElement() : FiniteWreathElement(1) {}

    explicit FiniteWreathElement(std::size_t k) : _lamps(k, 0), _shift(0) {
      if (k == 0) {
        throw InvalidArgument("finite wreath modulus must be positive");
      }
    }

    FiniteWreathElement(std::vector<lamp_type> lamps, std::size_t shift)
        : _lamps(std::move(lamps)), _shift(shift) {
      if (_lamps.empty()) {
        throw InvalidArgument("finite wreath modulus must be positive");
      }
      for (auto& l : _lamps) {
        l %= 3;
      }
      _shift %= _lamps.size();
    }

    std::size_t modulus() const noexcept {
      return _lamps.size();
    }

    std::vector<lamp_type> const& lamps() const noexcept {
      return _lamps;
    }

    std::size_t shift() const noexcept {
      return _shift;
    }

    bool is_identity() const noexcept {
      if (_shift != 0) {
        return false;
      }
      for (auto l : _lamps) {
        if (l != 0) {
          return false;
        }
      }
      return true;
    }

    FiniteWreathElement inverse() const {
      auto const          k = modulus();
      FiniteWreathElement out(k);
      for (std::size_t x = 0; x < k; ++x) {
        out._lamps[(x + k - _shift) % k] = detail::neg3(_lamps[x]);
      }
      out._shift = (k - _shift) % k;
      return out;
    }

    friend FiniteWreathElement operator*(FiniteWreathElement const& x,
                                         FiniteWreathElement const& y) {
      auto const k = x.modulus();
      if (y.modulus() != k) {
        throw InvalidArgument("finite wreath modulus mismatch");
      }
      FiniteWreathElement out = x;
      for (std::size_t i = 0; i < k; ++i) {
        auto& l = out._lamps[(i + x._shift) % k];
        l       = detail::add3(l, y._lamps[i]);
      }
      out._shift = (x._shift + y._shift) % k;
      return out;
    }

    friend bool operator==(FiniteWreathElement const&,
                           FiniteWreathElement const&)
        = default;

   private:
    std::vector<lamp_type> _lamps;
    std::size_t            _shift;
  };

  //! Folds the lamps mod k and reduces the shift mod k; a homomorphism
  //! Z_3 wr Z -> Z_3 wr Z_k of order 3^k k.
  inline FiniteWreathElement project_mod_k(WreathElement const& e,
                                           std::size_t          k) {
    if (k == 0) {
      throw InvalidArgument("project_mod_k: k must be positive");
    }
    auto const             K = static_cast<std::int64_t>(k);
    std::vector<lamp_type> f(k, 0);
    for (auto const& [x, v] : e.support()) {
      auto& l = f[static_cast<std::size_t>(detail::floor_mod(x, K))];
      l       = detail::add3(l, v);
    }
    return FiniteWreathElement(
        std::move(f),
        static_cast<std::size_t>(detail::floor_mod(e.shift(), K)));
  }

  //! Conjugacy in Z_3 wr Z_k. With q = gcd(t, k) (q = k when t = 0), the
  //! conjugates of (f, t) are the (f', t) whose sums over residues mod q
  //! are a rotation of those of f.
  inline bool is_conjugate_finite(FiniteWreathElement const& x,
                                  FiniteWreathElement const& y) {
    auto const k = x.modulus();
    if (y.modulus() != k) {
      throw InvalidArgument("finite wreath modulus mismatch");
    }
    if (x.shift() != y.shift()) {
      return false;
    }
    auto const q = std::gcd(x.shift(), k);  // gcd(0, k) = k
    auto sums    = [&](FiniteWreathElement const& z) {
      std::vector<lamp_type> s(q, 0);
      for (std::size_t i = 0; i < k; ++i) {
        s[i % q] = detail::add3(s[i % q], z.lamps()[i]);
      }
      return s;
    };
    return detail::rotation_offset(sums(x), sums(y)).has_value();
  }

  struct FiniteWreathGroup {
    using element_type = FiniteWreathElement;
    std::size_t k;

    FiniteWreathElement identity() const {
      return FiniteWreathElement(k);
    }
    FiniteWreathElement multiply(FiniteWreathElement const& x,
                                 FiniteWreathElement const& y) const {
      return x * y;
    }
    FiniteWreathElement inverse(FiniteWreathElement const& x) const {
      return x.inverse();
    }
  };

}  // namespace sepgrowth

#endif  // SEPGROWTH_WREATH_HPP_
