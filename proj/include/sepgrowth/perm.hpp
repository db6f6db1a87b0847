#ifndef SEPGROWTH_PERM_HPP_
#define SEPGROWTH_PERM_HPP_

// Permutations of {0, ..., d - 1} stored as dense image tables, the two
// generators alpha_d and beta_{r,d}, and conjugacy decisions in Sym(d) and
// Alt(d).
//
// Composition is (p * q)(x) = p(q(x)), i.e. permutations act from the left
// and the right-hand factor is applied first.

#include <algorithm>    // for sort, fill
#include <cstddef>      // for size_t
#include <cstdint>      // for uint32_t, uint64_t, int64_t
#include <map>          // for map
#include <optional>     // for optional
#include <span>         // for span
#include <sstream>      // for ostringstream
#include <string>       // for string
#include <string_view>  // for string_view
#include <utility>      // for move
#include <vector>       // for vector

#include "errors.hpp"

namespace sepgrowth {

  using point_type = std::uint32_t;

  class Permutation {
   public:
    //! The identity of degree 0; mostly useful as a placeholder.
    Permutation() = default;

    //! The identity permutation of the given degree.
    explicit Permutation(std::size_t degree) : _images(degree) {
      for (std::size_t x = 0; x < degree; ++x) {
        _images[x] = static_cast<point_type>(x);
      }
    }

    //! Takes an image table; throws InvalidArgument unless it is a bijection.
    explicit Permutation(std::vector<point_type> images)
        : _images(std::move(images)) {
      std::vector<bool> seen(_images.size(), false);
      for (point_type y : _images) {
        if (y >= _images.size() || seen[y]) {
          throw InvalidArgument("image table is not a bijection");
        }
        seen[y] = true;
      }
    }

    static Permutation identity(std::size_t degree) {
      return Permutation(degree);
    }

    std::size_t degree() const noexcept {
      return _images.size();
    }

    point_type operator()(point_type x) const {
      if (x >= _images.size()) {
        throw DegreeMismatch("point " + std::to_string(x)
                             + " outside permutation of degree "
                             + std::to_string(_images.size()));
      }
      return _images[x];
    }

    std::span<point_type const> images() const noexcept {
      return _images;
    }

    bool is_identity() const noexcept {
      for (std::size_t x = 0; x < _images.size(); ++x) {
        if (_images[x] != x) {
          return false;
        }
      }
      return true;
    }

    friend bool operator==(Permutation const&, Permutation const&) = default;

   private:
    std::vector<point_type> _images;
  };

  //! Cycle lengths >= 2 in non-increasing order; fixed points are implicit.
  struct CycleType {
    std::size_t              degree = 0;
    std::vector<std::size_t> lengths;

    std::size_t fixed_points() const noexcept {
      std::size_t moved = 0;
      for (auto l : lengths) {
        moved += l;
      }
      return degree - moved;
    }

    //! Number of cycles, fixed points included.
    std::size_t cycle_count() const noexcept {
      return lengths.size() + fixed_points();
    }

    friend bool operator==(CycleType const&, CycleType const&) = default;
  };

  enum class Parity { even, odd };

  namespace detail {
    inline void check_same_degree(Permutation const& p, Permutation const& q) {
      if (p.degree() != q.degree()) {
        throw DegreeMismatch("degree mismatch: " + std::to_string(p.degree())
                             + " vs " + std::to_string(q.degree()));
      }
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Generators
  ////////////////////////////////////////////////////////////////////////

  //! The d-cycle (0, 1, ..., d - 1), i.e. x -> x + 1 mod d.
  inline Permutation make_alpha(std::size_t d) {
    if (d == 0) {
      throw InvalidArgument("make_alpha: degree must be positive");
    }
    std::vector<point_type> img(d);
    for (std::size_t x = 0; x < d; ++x) {
      img[x] = static_cast<point_type>((x + 1) % d);
    }
    return Permutation(std::move(img));
  }

  //! The 3-cycle (0, r, 2r) on d points.
  inline Permutation make_beta(std::uint64_t r, std::size_t d) {
    if (d == 0 || r == 0 || r % d == 0 || (2 * r) % d == 0) {
      throw DegenerateParameter("make_beta: 0, r, 2r are not distinct mod d"
                                " (r="
                                + std::to_string(r)
                                + ", d=" + std::to_string(d) + ")");
    }
    std::vector<point_type> img(d);
    for (std::size_t x = 0; x < d; ++x) {
      img[x] = static_cast<point_type>(x);
    }
    point_type const x1 = static_cast<point_type>(r % d);
    point_type const x2 = static_cast<point_type>((2 * r) % d);
    img[0]              = x1;
    img[x1]             = x2;
    img[x2]             = 0;
    return Permutation(std::move(img));
  }

  ////////////////////////////////////////////////////////////////////////
  // Arithmetic
  ////////////////////////////////////////////////////////////////////////

  //! (p * q)(x) = p(q(x)).
  inline Permutation compose(Permutation const& p, Permutation const& q) {
    detail::check_same_degree(p, q);
    auto                    pi = p.images();
    auto                    qi = q.images();
    std::vector<point_type> img(p.degree());
    for (std::size_t x = 0; x < img.size(); ++x) {
      img[x] = pi[qi[x]];
    }
    return Permutation(std::move(img));
  }

  inline Permutation inverse(Permutation const& p) {
    auto                    pi = p.images();
    std::vector<point_type> img(p.degree());
    for (std::size_t x = 0; x < img.size(); ++x) {
      img[pi[x]] = static_cast<point_type>(x);
    }
    return Permutation(std::move(img));
  }

  inline point_type apply(Permutation const& p, point_type x) {
    return p(x);
  }

  inline bool is_identity(Permutation const& p) noexcept {
    return p.is_identity();
  }

  //! s * p * s^-1.
  inline Permutation conjugate(Permutation const& s, Permutation const& p) {
    detail::check_same_degree(s, p);
    auto                    si = s.images();
    auto                    pi = p.images();
    std::vector<point_type> img(p.degree());
    for (std::size_t x = 0; x < img.size(); ++x) {
      img[si[x]] = si[pi[x]];
    }
    return Permutation(std::move(img));
  }

  //! Cycles of p, each starting at its least element, ordered by that
  //! element. Fixed points are listed as 1-cycles only if requested.
  inline std::vector<std::vector<point_type>>
  cycle_decomposition(Permutation const& p, bool include_fixed = false) {
    std::vector<std::vector<point_type>> result;
    std::vector<bool>                    seen(p.degree(), false);
    auto                                 pi = p.images();
    for (std::size_t s = 0; s < p.degree(); ++s) {
      if (seen[s]) {
        continue;
      }
      std::vector<point_type> cycle;
      for (point_type x = static_cast<point_type>(s); !seen[x]; x = pi[x]) {
        seen[x] = true;
        cycle.push_back(x);
      }
      if (cycle.size() > 1 || include_fixed) {
        result.push_back(std::move(cycle));
      }
    }
    return result;
  }

  inline CycleType cycle_type(Permutation const& p) {
    CycleType         ct{p.degree(), {}};
    std::vector<bool> seen(p.degree(), false);
    auto              pi = p.images();
    for (std::size_t s = 0; s < p.degree(); ++s) {
      if (seen[s]) {
        continue;
      }
      std::size_t len = 0;
      for (point_type x = static_cast<point_type>(s); !seen[x]; x = pi[x]) {
        seen[x] = true;
        ++len;
      }
      if (len > 1) {
        ct.lengths.push_back(len);
      }
    }
    std::sort(ct.lengths.rbegin(), ct.lengths.rend());
    return ct;
  }

  inline Parity parity(Permutation const& p) {
    auto ct = cycle_type(p);
    return (ct.degree - ct.cycle_count()) % 2 == 0 ? Parity::even
                                                   : Parity::odd;
  }

  inline bool is_even(Permutation const& p) {
    return parity(p) == Parity::even;
  }

  //! p^k for any integer k, in O(degree) via the cycle decomposition.
  inline Permutation power(Permutation const& p, std::int64_t k) {
    std::vector<point_type> img(p.degree());
    for (auto const& c : cycle_decomposition(p, true)) {
      auto const len   = static_cast<std::int64_t>(c.size());
      auto const shift = ((k % len) + len) % len;
      for (std::int64_t i = 0; i < len; ++i) {
        img[c[i]] = c[(i + shift) % len];
      }
    }
    return Permutation(std::move(img));
  }

  ////////////////////////////////////////////////////////////////////////
  // Conjugacy
  ////////////////////////////////////////////////////////////////////////

  inline bool is_conjugate_sym(Permutation const& p, Permutation const& q) {
    detail::check_same_degree(p, q);
    return cycle_type(p) == cycle_type(q);
  }

  //! Some s with s * p * s^-1 = q, if one exists in Sym(d).
  inline std::optional<Permutation> find_conjugator_sym(Permutation const& p,
                                                        Permutation const& q) {
    detail::check_same_degree(p, q);
    // Cycles grouped by length; matching cycles of equal length in order
    // gives s(c_p[i]) = c_q[i].
    std::map<std::size_t, std::vector<std::vector<point_type>>> pc, qc;
    for (auto& c : cycle_decomposition(p, true)) {
      pc[c.size()].push_back(std::move(c));
    }
    for (auto& c : cycle_decomposition(q, true)) {
      qc[c.size()].push_back(std::move(c));
    }
    if (pc.size() != qc.size()) {
      return std::nullopt;
    }
    std::vector<point_type> img(p.degree());
    for (auto const& [len, cycles] : pc) {
      auto it = qc.find(len);
      if (it == qc.end() || it->second.size() != cycles.size()) {
        return std::nullopt;
      }
      for (std::size_t j = 0; j < cycles.size(); ++j) {
        for (std::size_t i = 0; i < len; ++i) {
          img[cycles[j][i]] = it->second[j][i];
        }
      }
    }
    return Permutation(std::move(img));
  }

  namespace detail {
    inline void check_even(Permutation const& p, char const* who) {
      if (!is_even(p)) {
        throw InvalidArgument(std::string(who) + ": odd input permutation");
      }
    }

    // An odd permutation commuting with p, if one exists. None exists
    // exactly when the cycle lengths of p (fixed points included) are odd
    // and pairwise distinct.
    inline std::optional<Permutation> odd_centralizer_element(
        Permutation const& p) {
      auto cycles = cycle_decomposition(p, true);
      for (auto const& c : cycles) {
        if (c.size() % 2 == 0) {
          // The cycle itself, acting only on its own points.
          std::vector<point_type> id(p.degree());
          for (std::size_t x = 0; x < id.size(); ++x) {
            id[x] = static_cast<point_type>(x);
          }
          for (std::size_t i = 0; i < c.size(); ++i) {
            id[c[i]] = c[(i + 1) % c.size()];
          }
          return Permutation(std::move(id));
        }
      }
      std::map<std::size_t, std::vector<point_type> const*> first;
      for (auto const& c : cycles) {
        auto [it, inserted] = first.emplace(c.size(), &c);
        if (!inserted) {
          // Swap two cycles of equal odd length L: a product of L
          // transpositions.
          std::vector<point_type> id(p.degree());
          for (std::size_t x = 0; x < id.size(); ++x) {
            id[x] = static_cast<point_type>(x);
          }
          auto const& c1 = *it->second;
          for (std::size_t i = 0; i < c.size(); ++i) {
            id[c1[i]] = c[i];
            id[c[i]]  = c1[i];
          }
          return Permutation(std::move(id));
        }
      }
      return std::nullopt;
    }
  }  // namespace detail

  //! An even s with s * p * s^-1 = q, if one exists. Both inputs must be
  //! even permutations of the same degree.
  inline std::optional<Permutation> find_conjugator_alt(Permutation const& p,
                                                        Permutation const& q) {
    detail::check_same_degree(p, q);
    detail::check_even(p, "find_conjugator_alt");
    detail::check_even(q, "find_conjugator_alt");
    auto s = find_conjugator_sym(p, q);
    if (!s || is_even(*s)) {
      return s;
    }
    auto c = detail::odd_centralizer_element(p);
    if (!c) {
      // The Sym-class of p splits in Alt and q lies in the other half.
      return std::nullopt;
    }
    return compose(*s, *c);
  }

  inline bool is_conjugate_alt(Permutation const& p, Permutation const& q) {
    return find_conjugator_alt(p, q).has_value();
  }

  //! The unique h with h(basepoint) = basepoint and h * p = q * h, where p
  //! and q are both single cycles through every point.
  inline Permutation canonical_conjugator_single_cycle(Permutation const& p,
                                                       Permutation const& q,
                                                       point_type basepoint) {
    detail::check_same_degree(p, q);
    auto const d = p.degree();
    if (basepoint >= d) {
      throw InvalidArgument("basepoint outside the permutation domain");
    }
    auto full = [d](Permutation const& x) {
      auto ct = cycle_type(x);
      return d == 1 || (ct.lengths.size() == 1 && ct.lengths[0] == d);
    };
    if (!full(p) || !full(q)) {
      throw InvalidArgument(
          "canonical_conjugator_single_cycle: inputs must be full cycles");
    }
    std::vector<point_type> img(d);
    point_type              x = basepoint, y = basepoint;
    for (std::size_t k = 0; k < d; ++k) {
      img[x] = y;
      x      = p(x);
      y      = q(y);
    }
    return Permutation(std::move(img));
  }

  ////////////////////////////////////////////////////////////////////////
  // Text form
  ////////////////////////////////////////////////////////////////////////

  //! Cycle notation, e.g. "(0 7 14)(1 2)"; the identity prints as "()".
  inline std::string to_cycle_string(Permutation const& p) {
    std::ostringstream out;
    auto               cycles = cycle_decomposition(p);
    if (cycles.empty()) {
      return "()";
    }
    for (auto const& c : cycles) {
      out << '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        out << (i == 0 ? "" : " ") << c[i];
      }
      out << ')';
    }
    return out.str();
  }

  //! Parses disjoint cycles such as "(0 7 14)(1 2)" on the given degree.
  //! Commas are accepted as separators; "()" and "" give the identity.
  inline Permutation parse_cycles(std::string_view text, std::size_t degree) {
    std::vector<point_type> img(degree);
    std::vector<bool>       used(degree, false);
    for (std::size_t x = 0; x < degree; ++x) {
      img[x] = static_cast<point_type>(x);
    }
    std::size_t i = 0;
    auto        skip_space = [&] {
      while (i < text.size()
             && (text[i] == ' ' || text[i] == ',' || text[i] == '\t')) {
        ++i;
      }
    };
    skip_space();
    while (i < text.size()) {
      if (text[i] != '(') {
        throw ParseError("expected '(' in cycle notation");
      }
      ++i;
      std::vector<point_type> cycle;
      while (true) {
        skip_space();
        if (i >= text.size()) {
          throw ParseError("unterminated cycle");
        }
        if (text[i] == ')') {
          ++i;
          break;
        }
        std::uint64_t v      = 0;
        std::size_t   digits = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
          v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
          ++i;
          ++digits;
        }
        if (digits == 0) {
          throw ParseError("expected a point in cycle notation");
        }
        if (v >= degree || used[v]) {
          throw ParseError("point " + std::to_string(v)
                           + " out of range or repeated");
        }
        used[v] = true;
        cycle.push_back(static_cast<point_type>(v));
      }
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        img[cycle[k]] = cycle[(k + 1) % cycle.size()];
      }
      skip_space();
    }
    return Permutation(std::move(img));
  }

  //! Group context for words::evaluate over Sym(degree).
  struct PermutationGroup {
    using element_type = Permutation;
    std::size_t degree;

    Permutation identity() const {
      return Permutation(degree);
    }
    Permutation multiply(Permutation const& x, Permutation const& y) const {
      return compose(x, y);
    }
    Permutation inverse(Permutation const& x) const {
      return sepgrowth::inverse(x);
    }
    Permutation power(Permutation const& x, std::int64_t k) const {
      return sepgrowth::power(x, k);
    }
  };

}  // namespace sepgrowth

#endif  // SEPGROWTH_PERM_HPP_
