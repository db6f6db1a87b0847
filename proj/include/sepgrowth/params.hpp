#ifndef SEPGROWTH_PARAMS_HPP_
#define SEPGROWTH_PARAMS_HPP_

// Parameter functions d(n, m), m_n and r(n).
//
// Double-index tables satisfy
//   (a)  d(., 1) non-decreasing
//   (b)  every d(n, m) an odd prime
//   (c)  C1 d(n, m) > d(n, m + 1) > C0 d(n, m) for m < m_n
//   (d)  d(n, 1) >= max(C2 n log n (log log n)^{1 + eps}, C2)
//   (1') n <= r(n) < (M + 1) n and r(n) < d(n, 1) / 6
//   (2') l != n implies r(l) is not +-r(n), +-2r(n) mod d(n, m)
//   (3') r(n) = 1 mod 6
// and d(n, m) = d(n, m_n) for m >= m_n. Single-index tables have one d per
// row and satisfy d(n) prime > 5, d non-decreasing, n < r(n) < 18n,
// 3 r(n) < d(n), and the same incongruence.

#include <algorithm>  // for max, min
#include <cmath>      // for log, ceil, lgamma
#include <cstddef>    // for size_t
#include <cstdint>    // for uint64_t
#include <numeric>    // for gcd
#include <optional>   // for optional
#include <sstream>    // for ostringstream
#include <string>     // for string
#include <vector>     // for vector

#include "errors.hpp"

namespace sepgrowth {

  ////////////////////////////////////////////////////////////////////////
  // Primes
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline std::uint64_t mulmod(std::uint64_t a,
                                std::uint64_t b,
                                std::uint64_t m) {
      return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b
                                        % m);
    }

    inline std::uint64_t powmod(std::uint64_t a,
                                std::uint64_t e,
                                std::uint64_t m) {
      std::uint64_t r = 1 % m;
      a %= m;
      while (e != 0) {
        if (e & 1) {
          r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
      }
      return r;
    }
  }  // namespace detail

  //! Deterministic Miller-Rabin for 64-bit integers.
  inline bool is_prime(std::uint64_t n) {
    if (n < 2) {
      return false;
    }
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
      if (n % p == 0) {
        return n == p;
      }
    }
    std::uint64_t d = n - 1;
    unsigned      s = 0;
    while ((d & 1) == 0) {
      d >>= 1;
      ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
      auto x = detail::powmod(a, d, n);
      if (x == 1 || x == n - 1) {
        continue;
      }
      bool composite = true;
      for (unsigned i = 1; i < s && composite; ++i) {
        x         = detail::mulmod(x, x, n);
        composite = x != n - 1;
      }
      if (composite) {
        return false;
      }
    }
    return true;
  }

  //! Least prime p > lower with p = residue mod modulus. The scan stops with
  //! SearchCapExceeded beyond 4 lower + 1000, far past any Bertrand bound.
  inline std::uint64_t next_prime_congruent(std::uint64_t lower,
                                            std::uint64_t residue,
                                            std::uint64_t modulus) {
    if (modulus == 0) {
      throw InvalidArgument("next_prime_congruent: modulus must be positive");
    }
    residue %= modulus;
    if (std::gcd(residue, modulus) != 1 && modulus != 1) {
      throw InvalidArgument("next_prime_congruent: residue and modulus "
                            "must be coprime");
    }
    std::uint64_t const cap = 4 * lower + 1000;
    std::uint64_t       p   = lower + 1;
    p += (residue + modulus - p % modulus) % modulus;
    for (; p <= cap; p += modulus) {
      if (is_prime(p)) {
        return p;
      }
    }
    std::ostringstream msg;
    msg << "no prime = " << residue << " mod " << modulus << " in ("
        << lower << ", " << cap << "]";
    throw SearchCapExceeded(msg.str());
  }

  ////////////////////////////////////////////////////////////////////////
  // Growth functions
  ////////////////////////////////////////////////////////////////////////

  //! log log x clamped at 0, so the growth formulas stay defined for small
  //! arguments.
  inline double clamped_loglog(double x) {
    if (x <= 1.0) {
      return 0.0;
    }
    auto const ll = std::log(std::log(x));
    return ll > 0.0 ? ll : 0.0;
  }

  //! max(C2 n log n (log log n)^{1 + eps}, C2).
  inline double condition_d_bound(std::size_t n, double c2, double eps) {
    auto const x = static_cast<double>(n);
    auto const v = c2 * x * std::log(x) * std::pow(clamped_loglog(x), 1 + eps);
    return std::max(v, c2);
  }

  //! Either the family log F(m) = c m log^2 m (log log m)^{1 + eps} with
  //! f(n) = ceil(log F(n + offset) / log log F(n + offset)), or an explicit
  //! table of f(1), f(2), ...
  class GrowthSpec {
   public:
    static GrowthSpec family(double c, double eps, std::size_t offset) {
      if (!(c > 0) || !(eps > 0)) {
        throw InvalidArgument("growth family needs c > 0 and eps > 0");
      }
      GrowthSpec g;
      g._c      = c;
      g._eps    = eps;
      g._offset = offset;
      return g;
    }

    static GrowthSpec table(std::vector<std::uint64_t> values) {
      if (values.empty()) {
        throw InvalidArgument("growth table must be nonempty");
      }
      for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[i - 1]) {
          throw InvalidArgument("growth table must be non-decreasing");
        }
      }
      GrowthSpec g;
      g._table = std::move(values);
      return g;
    }

    //! The constant function n -> v.
    static GrowthSpec constant(std::uint64_t v, std::size_t n_max) {
      return table(std::vector<std::uint64_t>(n_max, v));
    }

    bool is_family() const noexcept {
      return _table.empty();
    }

    double c() const noexcept {
      return _c;
    }

    double epsilon() const noexcept {
      return _eps;
    }

    std::size_t offset() const noexcept {
      return _offset;
    }

    std::vector<std::uint64_t> const& values() const noexcept {
      return _table;
    }

    //! Natural log of F(m); family specs only.
    double log_growth(std::size_t m) const {
      if (!is_family()) {
        throw InvalidArgument("log_growth needs a growth family");
      }
      auto const x  = static_cast<double>(m);
      auto const lx = std::log(x);
      return _c * x * lx * lx * std::pow(clamped_loglog(x), 1 + _eps);
    }

    std::uint64_t f(std::size_t n) const {
      if (n == 0) {
        throw InvalidArgument("growth functions are indexed from 1");
      }
      if (!is_family()) {
        if (n > _table.size()) {
          throw InvalidArgument("growth table too short");
        }
        return _table[n - 1];
      }
      auto const L = log_growth(n + _offset);
      if (!(L > std::exp(1.0))) {
        throw GrowthTooSmall("log F(" + std::to_string(n + _offset)
                             + ") too small for f to be defined");
      }
      return static_cast<std::uint64_t>(std::ceil(L / std::log(L)));
    }

   private:
    double                     _c      = 0;
    double                     _eps    = 0;
    std::size_t                _offset = 0;
    std::vector<std::uint64_t> _table;
  };

  ////////////////////////////////////////////////////////////////////////
  // Tables
  ////////////////////////////////////////////////////////////////////////

  enum class TableMode { single_index, double_index };

  inline char const* to_string(TableMode m) {
    return m == TableMode::single_index ? "single-index" : "double-index";
  }

  struct TableConstants {
    double        epsilon = 0.05;  // exponent in condition (d)
    double        c0      = 2;
    double        c1      = 8;     // also the branch multiplier
    double        c2      = 4;
    std::uint64_t M       = 36;    // r(n) < (M + 1) n
    // Largest prime / lower bound ratio seen by the builder; informational.
    double        max_prime_ratio = 0;

    friend bool operator==(TableConstants const&, TableConstants const&)
        = default;
  };

  struct TableRow {
    std::uint64_t              r = 0;
    std::vector<std::uint64_t> d;  // d(n, 1), ..., d(n, m_n)

    friend bool operator==(TableRow const&, TableRow const&) = default;
  };

  class ParameterTables {
   public:
    ParameterTables() = default;

    ParameterTables(TableMode             mode,
                    TableConstants        constants,
                    std::vector<TableRow> rows)
        : _mode(mode), _constants(constants), _rows(std::move(rows)) {}

    TableMode mode() const noexcept {
      return _mode;
    }

    TableConstants const& constants() const noexcept {
      return _constants;
    }

    TableConstants& constants() noexcept {
      return _constants;
    }

    std::size_t n_max() const noexcept {
      return _rows.size();
    }

    std::vector<TableRow> const& rows() const noexcept {
      return _rows;
    }

    TableRow const& row(std::size_t n) const {
      check_row(n);
      return _rows[n - 1];
    }

    TableRow& row(std::size_t n) {
      check_row(n);
      return _rows[n - 1];
    }

    std::uint64_t r(std::size_t n) const {
      return row(n).r;
    }

    std::size_t m_n(std::size_t n) const {
      return row(n).d.size();
    }

    //! d(n, m), with m clamped to m_n.
    std::uint64_t d(std::size_t n, std::size_t m = 1) const {
      if (m == 0) {
        throw InvalidArgument("coordinates are indexed from 1");
      }
      auto const& ds = row(n).d;
      return ds[std::min(m, ds.size()) - 1];
    }

    std::uint64_t d1(std::size_t n) const {
      return d(n, 1);
    }

    std::uint64_t d2(std::size_t n) const {
      return row(n).d.back();
    }

    friend bool operator==(ParameterTables const&, ParameterTables const&)
        = default;

   private:
    void check_row(std::size_t n) const {
      if (n == 0 || n > _rows.size()) {
        throw InvalidArgument("row " + std::to_string(n)
                              + " outside table range [1, "
                              + std::to_string(_rows.size()) + "]");
      }
    }

    TableMode             _mode = TableMode::double_index;
    TableConstants        _constants;
    std::vector<TableRow> _rows;
  };

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  struct ConditionResult {
    std::string id;
    bool        passed  = true;
    bool        skipped = false;
    std::string counterexample;
  };

  struct ValidationReport {
    std::vector<ConditionResult> conditions;

    bool ok() const {
      return std::all_of(conditions.begin(),
                         conditions.end(),
                         [](auto const& c) { return c.passed || c.skipped; });
    }

    ConditionResult const& at(std::string const& id) const {
      for (auto const& c : conditions) {
        if (c.id == id) {
          return c;
        }
      }
      throw InvalidArgument("no condition " + id);
    }

    //! "a: pass, b: FAIL (n=2 m=1), ..." on one line.
    std::string summary() const {
      std::ostringstream out;
      bool               first = true;
      for (auto const& c : conditions) {
        out << (first ? "" : ", ") << c.id << ": "
            << (c.skipped ? "skipped" : c.passed ? "pass" : "FAIL");
        if (!c.passed && !c.skipped) {
          out << " (" << c.counterexample << ")";
        }
        first = false;
      }
      return out.str();
    }
  };

  namespace detail {
    inline std::string at(std::size_t n) {
      return "n=" + std::to_string(n);
    }

    inline std::string at(std::size_t n, std::size_t m) {
      return at(n) + " m=" + std::to_string(m);
    }

    inline std::string at(std::size_t n, std::size_t m, std::size_t l) {
      return at(n, m) + " l=" + std::to_string(l);
    }

    // True if x = +-y or +-2y mod p.
    inline bool congruent_pm12(std::uint64_t x,
                               std::uint64_t y,
                               std::uint64_t p) {
      auto const a  = x % p;
      auto const y1 = y % p;
      auto const y2 = (2 * y) % p;
      return a == y1 || a == y2 || a == (p - y1) % p || a == (p - y2) % p;
    }

    class ConditionRecorder {
     public:
      explicit ConditionRecorder(std::string id) {
        _c.id = std::move(id);
      }

      void fail(std::string where) {
        if (_c.passed) {
          _c.passed         = false;
          _c.counterexample = std::move(where);
        }
      }

      bool failed() const {
        return !_c.passed;
      }

      ConditionResult done() {
        return _c;
      }

     private:
      ConditionResult _c;
    };

    // Incongruence: for l != n and every m, r(l) is not +-r(n), +-2r(n)
    // mod d(n, m).
    inline ConditionResult check_incongruence(ParameterTables const& t,
                                              std::string            id) {
      ConditionRecorder c(std::move(id));
      for (std::size_t n = 1; n <= t.n_max() && !c.failed(); ++n) {
        auto const& row = t.row(n);
        for (std::size_t m = 1; m <= row.d.size() && !c.failed(); ++m) {
          for (std::size_t l = 1; l <= t.n_max(); ++l) {
            if (l != n && congruent_pm12(t.r(l), row.r, row.d[m - 1])) {
              c.fail(at(n, m, l));
              break;
            }
          }
        }
      }
      return c.done();
    }
  }  // namespace detail

  //! Checks every condition; relaxed mode skips the growth condition (d),
  //! which toy tables are allowed to violate.
  inline ValidationReport validate(ParameterTables const& t,
                                   bool                   relaxed = false) {
    using detail::at;
    ValidationReport rep;
    auto const&      k = t.constants();

    if (t.mode() == TableMode::single_index) {
      detail::ConditionRecorder shape("shape"), prime("prime"),
          mono("nondecreasing"), one("1");
      for (std::size_t n = 1; n <= t.n_max(); ++n) {
        auto const& row = t.row(n);
        if (row.d.size() != 1) {
          shape.fail(at(n));
          continue;
        }
        auto const d = row.d[0];
        if (d <= 5 || !is_prime(d)) {
          prime.fail(at(n));
        }
        if (n > 1 && d < t.d(n - 1)) {
          mono.fail(at(n));
        }
        if (!(n < row.r && row.r < 18 * n && 3 * row.r < d)) {
          one.fail(at(n));
        }
      }
      rep.conditions = {shape.done(), prime.done(), mono.done(), one.done()};
      rep.conditions.push_back(detail::check_incongruence(t, "2"));
      return rep;
    }

    detail::ConditionRecorder a("a"), b("b"), c("c"), dd("d"), one("1'"),
        three("3'"), stab("stabilization");
    for (std::size_t n = 1; n <= t.n_max(); ++n) {
      auto const& row = t.row(n);
      if (row.d.empty()) {
        stab.fail(at(n));
        continue;
      }
      if (n > 1 && !t.row(n - 1).d.empty() && row.d[0] < t.d(n - 1, 1)) {
        a.fail(at(n));
      }
      for (std::size_t m = 1; m <= row.d.size(); ++m) {
        auto const x = row.d[m - 1];
        if (x % 2 == 0 || !is_prime(x)) {
          b.fail(at(n, m));
        }
        if (m < row.d.size()) {
          auto const y  = static_cast<double>(row.d[m]);
          auto const xd = static_cast<double>(x);
          if (!(k.c1 * xd > y && y > k.c0 * xd)) {
            c.fail(at(n, m));
          }
        }
      }
      if (!relaxed
          && static_cast<double>(row.d[0])
                 < condition_d_bound(n, k.c2, k.epsilon)) {
        dd.fail(at(n));
      }
      if (!(n <= row.r && row.r < (k.M + 1) * n && 6 * row.r < row.d[0])) {
        one.fail(at(n));
      }
      if (row.r % 6 != 1) {
        three.fail(at(n));
      }
    }
    auto d_result    = dd.done();
    d_result.skipped = relaxed;
    rep.conditions   = {a.done(), b.done(), c.done(), d_result, one.done()};
    rep.conditions.push_back(detail::check_incongruence(t, "2'"));
    rep.conditions.push_back(three.done());
    rep.conditions.push_back(stab.done());
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // Construction
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline std::uint64_t
    next_prime_tracked(std::uint64_t lower,
                       std::uint64_t residue,
                       std::uint64_t modulus,
                       double&       ratio) {
      auto const p = next_prime_congruent(lower, residue, modulus);
      if (lower > 0) {
        ratio = std::max(ratio,
                         static_cast<double>(p) / static_cast<double>(lower));
      }
      return p;
    }

    inline void require_valid(ParameterTables const& t, bool relaxed) {
      auto const rep = validate(t, relaxed);
      if (!rep.ok()) {
        throw ValidationFailed("table fails validation: " + rep.summary());
      }
    }
  }  // namespace detail

  //! The d(n, m) rows without r: d_1(n) is the least prime = 1 mod 6 above
  //! f1(n) and at least d_1(n - 1); d_2(n) the least prime = 5 mod 6 above
  //! max(f2(n), 2 d_1(n)) and at least d_2(n - 1). Starting at d_1(n), the
  //! next entry is d_2(n) once d_2(n) <= C1 times the current one, otherwise
  //! the least prime = 1 mod 6 above twice the current one.
  inline std::vector<TableRow> build_d_rows(GrowthSpec const& f1,
                                            GrowthSpec const& f2,
                                            std::size_t       n_max,
                                            TableConstants&   k) {
    std::vector<TableRow> rows;
    rows.reserve(n_max);
    std::uint64_t d1_prev = 0, d2_prev = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
      auto const a = f1.f(n);
      auto const b = f2.f(n);
      if (b < a) {
        throw InvalidArgument("f2(" + std::to_string(n) + ") < f1("
                              + std::to_string(n) + ")");
      }
      auto const d1 = detail::next_prime_tracked(
          std::max(a, d1_prev == 0 ? 0 : d1_prev - 1), 1, 6,
          k.max_prime_ratio);
      auto const d2 = detail::next_prime_tracked(
          std::max({b, 2 * d1, d2_prev == 0 ? 0 : d2_prev - 1}), 5, 6,
          k.max_prime_ratio);
      d1_prev = d1;
      d2_prev = d2;
      TableRow row;
      row.d.push_back(d1);
      while (true) {
        auto const prev = row.d.back();
        if (static_cast<double>(d2) <= k.c1 * static_cast<double>(prev)) {
          row.d.push_back(d2);
          break;
        }
        row.d.push_back(detail::next_prime_tracked(
            2 * prev, 1, 6, k.max_prime_ratio));
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }

  //! For n = 1, 2, ... picks the least r in [n, (M + 1) n) with r = 1 mod 6
  //! and 6r < d(n, 1) such that for every l < n and every m, r is not
  //! +-r(l), +-2r(l) mod d(l, m) and r(l) is not +-r, +-2r mod d(n, m).
  inline void greedy_r(std::vector<TableRow>& rows, std::uint64_t M) {
    for (std::size_t n = 1; n <= rows.size(); ++n) {
      auto&         row   = rows[n - 1];
      std::uint64_t r     = n + (7 - n % 6) % 6;  // least r >= n, r = 1 mod 6
      bool          found = false;
      for (; r < (M + 1) * n && 6 * r < row.d[0]; r += 6) {
        bool ok = true;
        for (std::size_t l = 1; l < n && ok; ++l) {
          auto const& prev = rows[l - 1];
          for (auto p : prev.d) {
            ok = ok && !detail::congruent_pm12(r, prev.r, p);
          }
          for (auto p : row.d) {
            ok = ok && !detail::congruent_pm12(prev.r, r, p);
          }
        }
        if (ok) {
          found = true;
          break;
        }
      }
      if (!found) {
        throw WindowExhausted(n,
                              "no admissible r(" + std::to_string(n)
                                  + ") in the search window; C2 too small?");
      }
      row.r = r;
    }
  }

  //! Checks f1(n) against the bound of condition (d), builds the d rows,
  //! runs greedy_r and validates the result.
  inline ParameterTables build_double_index(GrowthSpec const& f1,
                                            GrowthSpec const& f2,
                                            std::size_t       n_max,
                                            TableConstants    k = {}) {
    if (n_max == 0) {
      throw InvalidArgument("n_max must be positive");
    }
    for (std::size_t n = 1; n <= n_max; ++n) {
      if (static_cast<double>(f1.f(n))
          < condition_d_bound(n, k.c2, k.epsilon)) {
        throw GrowthTooSmall("f1(" + std::to_string(n)
                             + ") below the bound of condition (d)");
      }
    }
    k.max_prime_ratio = 0;
    auto rows         = build_d_rows(f1, f2, n_max, k);
    greedy_r(rows, k.M);
    ParameterTables t(TableMode::double_index, k, std::move(rows));
    detail::require_valid(t, false);
    return t;
  }

  //! d(n) the least prime > 5 that is >= f(n) and >= d(n - 1); r(n) the
  //! least r in (n, 18n) with 3r < d(n) and the incongruences against every
  //! earlier row, in both directions.
  inline ParameterTables build_single_index(GrowthSpec const& f,
                                            std::size_t       n_max,
                                            TableConstants    k = {}) {
    if (n_max == 0) {
      throw InvalidArgument("n_max must be positive");
    }
    k.max_prime_ratio = 0;
    std::vector<TableRow> rows;
    std::uint64_t         d_prev = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
      auto const lower = std::max<std::uint64_t>(
          {f.f(n) == 0 ? 0 : f.f(n) - 1, 5, d_prev == 0 ? 0 : d_prev - 1});
      TableRow row;
      row.d.push_back(
          detail::next_prime_tracked(lower, 1, 2, k.max_prime_ratio));
      d_prev = row.d[0];
      bool found = false;
      for (std::uint64_t r = n + 1; r < 18 * n && 3 * r < row.d[0]; ++r) {
        bool ok = true;
        for (std::size_t l = 1; l < n && ok; ++l) {
          auto const& prev = rows[l - 1];
          ok = !detail::congruent_pm12(r, prev.r, prev.d[0])
               && !detail::congruent_pm12(prev.r, r, row.d[0]);
        }
        if (ok) {
          row.r = r;
          found = true;
          break;
        }
      }
      if (!found) {
        throw WindowExhausted(n,
                              "no admissible r(" + std::to_string(n)
                                  + ") in (n, 18n)");
      }
      rows.push_back(std::move(row));
    }
    ParameterTables t(TableMode::single_index, k, std::move(rows));
    detail::require_valid(t, false);
    return t;
  }

  ////////////////////////////////////////////////////////////////////////
  // Factorial sandwich and presets
  ////////////////////////////////////////////////////////////////////////

  struct SandwichRow {
    std::size_t   n;
    std::uint64_t f;
    double        log_F;          // log F(n + offset)
    double        log_half_fact;  // log(f! / 2)
    bool          ok;             // F^{1/2} <= f!/2 <= F^{3/2}
  };

  //! Checks F^{1/2} <= f(n)!/2 <= F^{3/2} in log space for n in [lo, hi],
  //! with F evaluated at n + offset, the argument f is computed from.
  inline std::vector<SandwichRow> factorial_sandwich(GrowthSpec const& g,
                                                     std::size_t       lo,
                                                     std::size_t       hi) {
    std::vector<SandwichRow> out;
    for (std::size_t n = lo; n <= hi; ++n) {
      SandwichRow row;
      row.n             = n;
      row.f             = g.f(n);
      row.log_F         = g.log_growth(n + g.offset());
      row.log_half_fact = std::lgamma(static_cast<double>(row.f) + 1.0)
                          - std::log(2.0);
      row.ok = 0.5 * row.log_F <= row.log_half_fact
               && row.log_half_fact <= 1.5 * row.log_F;
      out.push_back(row);
    }
    return out;
  }

  struct Preset {
    std::string    name;
    GrowthSpec     f1;
    GrowthSpec     f2;
    TableConstants constants;
  };

  //! Growth families c n log^2 n (log log n)^{1.1} with offset 16; the
  //! table exponent in condition (d) is half the growth exponent.
  inline std::vector<Preset> presets() {
    TableConstants k;
    k.epsilon = 0.05;
    k.c2      = 4;
    return {
        {"balanced",
         GrowthSpec::family(16, 0.1, 16),
         GrowthSpec::family(16, 0.1, 16),
         k},
        {"wide",
         GrowthSpec::family(16, 0.1, 16),
         GrowthSpec::family(256, 0.1, 16),
         k},
    };
  }

  inline Preset preset(std::string const& name) {
    for (auto& p : presets()) {
      if (p.name == name) {
        return p;
      }
    }
    throw InvalidArgument("unknown preset '" + name + "'");
  }

}  // namespace sepgrowth

#endif  // SEPGROWTH_PARAMS_HPP_
