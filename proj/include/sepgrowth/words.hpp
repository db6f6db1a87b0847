#ifndef SEPGROWTH_WORDS_HPP_
#define SEPGROWTH_WORDS_HPP_

// Freely reduced words in the free group on {a, b}, stored in syllable form
// (generator, nonzero exponent), their evaluation in an arbitrary group, and
// the named word families used by the constructions.

#include <concepts>     // for convertible_to
#include <cstddef>      // for size_t
#include <cstdint>      // for int64_t, uint64_t
#include <cstdlib>      // for llabs
#include <initializer_list>
#include <span>         // for span
#include <sstream>      // for ostringstream
#include <string>       // for string
#include <string_view>  // for string_view
#include <utility>      // for move
#include <vector>       // for vector

#include "errors.hpp"

namespace sepgrowth {

  enum class Generator : std::uint8_t { a, b };

  struct Syllable {
    Generator    gen;
    std::int64_t exponent;

    friend bool operator==(Syllable const&, Syllable const&) = default;
  };

  class Word {
   public:
    Word() = default;

    Word(std::initializer_list<Syllable> raw) : Word(reduce(raw)) {}

    //! Free reduction of an arbitrary syllable sequence.
    static Word reduce(std::span<Syllable const> raw) {
      Word w;
      for (auto const& s : raw) {
        w.push(s);
      }
      return w;
    }

    static Word reduce(std::initializer_list<Syllable> raw) {
      return reduce(std::span<Syllable const>(raw.begin(), raw.size()));
    }

    static Word a(std::int64_t k = 1) {
      return reduce({Syllable{Generator::a, k}});
    }

    static Word b(std::int64_t k = 1) {
      return reduce({Syllable{Generator::b, k}});
    }

    std::span<Syllable const> syllables() const noexcept {
      return _syl;
    }

    bool empty() const noexcept {
      return _syl.empty();
    }

    //! Word norm with respect to {a, b}: sum of absolute exponents.
    std::uint64_t length() const noexcept {
      std::uint64_t n = 0;
      for (auto const& s : _syl) {
        n += static_cast<std::uint64_t>(std::llabs(s.exponent));
      }
      return n;
    }

    Word inverse() const {
      Word w;
      w._syl.reserve(_syl.size());
      for (auto it = _syl.rbegin(); it != _syl.rend(); ++it) {
        w._syl.push_back({it->gen, -it->exponent});
      }
      return w;
    }

    friend Word operator*(Word const& u, Word const& v) {
      Word w = u;
      for (auto const& s : v._syl) {
        w.push(s);
      }
      return w;
    }

    Word& operator*=(Word const& v) {
      for (auto const& s : v._syl) {
        push(s);
      }
      return *this;
    }

    friend bool operator==(Word const&, Word const&) = default;

   private:
    void push(Syllable s) {
      if (s.exponent == 0) {
        return;
      }
      if (!_syl.empty() && _syl.back().gen == s.gen) {
        _syl.back().exponent += s.exponent;
        if (_syl.back().exponent == 0) {
          _syl.pop_back();
        }
        return;
      }
      _syl.push_back(s);
    }

    std::vector<Syllable> _syl;
  };

  inline Word inverse(Word const& w) {
    return w.inverse();
  }

  inline std::uint64_t length(Word const& w) {
    return w.length();
  }

  //! [u, v] = u v u^-1 v^-1.
  inline Word commutator(Word const& u, Word const& v) {
    return u * v * u.inverse() * v.inverse();
  }

  ////////////////////////////////////////////////////////////////////////
  // Evaluation
  ////////////////////////////////////////////////////////////////////////

  template <typename G>
  concept GroupContext = requires(G const&                       ctx,
                                  typename G::element_type const& x) {
    { ctx.identity() } -> std::convertible_to<typename G::element_type>;
    { ctx.multiply(x, x) } -> std::convertible_to<typename G::element_type>;
    { ctx.inverse(x) } -> std::convertible_to<typename G::element_type>;
  };

  //! x^k; uses ctx.power when the context provides one, otherwise square
  //! and multiply.
  template <GroupContext G>
  typename G::element_type group_power(G const&                        ctx,
                                       typename G::element_type const& x,
                                       std::int64_t                    k) {
    if constexpr (requires { ctx.power(x, k); }) {
      return ctx.power(x, k);
    } else {
      using T     = typename G::element_type;
      T base      = k < 0 ? ctx.inverse(x) : x;
      auto e      = static_cast<std::uint64_t>(k < 0 ? -k : k);
      T    result = ctx.identity();
      while (e != 0) {
        if (e & 1) {
          result = ctx.multiply(result, base);
        }
        e >>= 1;
        if (e != 0) {
          base = ctx.multiply(base, base);
        }
      }
      return result;
    }
  }

  //! The image of w under the homomorphism a -> a_img, b -> b_img.
  template <GroupContext G>
  typename G::element_type evaluate(Word const&                     w,
                                    typename G::element_type const& a_img,
                                    typename G::element_type const& b_img,
                                    G const&                        ctx) {
    auto result = ctx.identity();
    for (auto const& s : w.syllables()) {
      auto const& base = s.gen == Generator::a ? a_img : b_img;
      result = ctx.multiply(result, group_power(ctx, base, s.exponent));
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Conjugate form
  ////////////////////////////////////////////////////////////////////////

  //! w = (prod_i a^{offset_i} b^{exponent_i} a^{-offset_i}) a^{shift}.
  //!
  //! Offsets are prefix sums of the a-exponents, so |offset_i| <= |w|.
  struct ConjugateForm {
    struct Factor {
      std::int64_t offset;
      std::int64_t exponent;
    };
    std::vector<Factor> factors;
    std::int64_t        shift = 0;
  };

  inline ConjugateForm conjugate_form(Word const& w) {
    ConjugateForm cf;
    std::int64_t  prefix = 0;
    for (auto const& s : w.syllables()) {
      if (s.gen == Generator::a) {
        prefix += s.exponent;
      } else {
        cf.factors.push_back({prefix, s.exponent});
      }
    }
    cf.shift = prefix;
    return cf;
  }

  ////////////////////////////////////////////////////////////////////////
  // Word families
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline void require_positive_r(std::uint64_t r, char const* who) {
      if (r == 0) {
        throw InvalidArgument(std::string(who) + ": r must be positive");
      }
    }
  }  // namespace detail

  //! v_r = [a^r b^-1 a^-r, b^-1].
  inline Word v_word(std::uint64_t r) {
    detail::require_positive_r(r, "v_word");
    auto const k = static_cast<std::int64_t>(r);
    return commutator(Word::a(k) * Word::b(-1) * Word::a(-k), Word::b(-1));
  }

  //! [a^{d-3r} v_r a^{-(d-3r)}, v_r]; requires d > 3r.
  inline Word w_word(std::uint64_t r, std::uint64_t d) {
    detail::require_positive_r(r, "w_word");
    if (d <= 3 * r) {
      throw InvalidArgument("w_word: requires d > 3r");
    }
    auto const v = v_word(r);
    auto const k = static_cast<std::int64_t>(d - 3 * r);
    return commutator(Word::a(k) * v * Word::a(-k), v);
  }

  //! a^3 b^-1 v_r b^-1.
  inline Word g1_word(std::uint64_t r) {
    detail::require_positive_r(r, "g1_word");
    return Word::a(3) * Word::b(-1) * v_word(r) * Word::b(-1);
  }

  //! a^3 b v_r.
  inline Word g2_word(std::uint64_t r) {
    detail::require_positive_r(r, "g2_word");
    return Word::a(3) * Word::b(1) * v_word(r);
  }

  ////////////////////////////////////////////////////////////////////////
  // Text form
  ////////////////////////////////////////////////////////////////////////

  //! "a^3 b^-1 a"; the empty word prints as "1".
  inline std::string to_string(Word const& w) {
    if (w.empty()) {
      return "1";
    }
    std::ostringstream out;
    bool               first = true;
    for (auto const& s : w.syllables()) {
      out << (first ? "" : " ") << (s.gen == Generator::a ? 'a' : 'b');
      if (s.exponent != 1) {
        out << '^' << s.exponent;
      }
      first = false;
    }
    return out.str();
  }

  //! Accepts whitespace- or '*'-separated factors "a", "b^-2", "a^7", the
  //! inverse shorthands "A" and "B", and "1" or "e" for the identity. The
  //! result is freely reduced.
  inline Word parse_word(std::string_view text) {
    std::vector<Syllable> raw;
    std::size_t           i = 0;
    auto                  is_sep = [](char c) {
      return c == ' ' || c == '\t' || c == '*' || c == '.';
    };
    while (i < text.size()) {
      if (is_sep(text[i])) {
        ++i;
        continue;
      }
      char const c = text[i++];
      if (c == '1' || c == 'e') {
        continue;
      }
      Generator    g;
      std::int64_t sign = 1;
      switch (c) {
        case 'a': g = Generator::a; break;
        case 'b': g = Generator::b; break;
        case 'A': g = Generator::a; sign = -1; break;
        case 'B': g = Generator::b; sign = -1; break;
        default:
          throw ParseError(std::string("unexpected character '") + c
                           + "' in word");
      }
      std::int64_t e = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::int64_t s = 1;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
          s = text[i] == '-' ? -1 : 1;
          ++i;
        }
        std::size_t  digits = 0;
        std::int64_t v      = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
          v = v * 10 + (text[i] - '0');
          ++i;
          ++digits;
        }
        if (digits == 0) {
          throw ParseError("missing exponent after '^'");
        }
        e = s * v;
      }
      raw.push_back({g, sign * e});
    }
    return Word::reduce(raw);
  }

}  // namespace sepgrowth

#endif  // SEPGROWTH_WORDS_HPP_
