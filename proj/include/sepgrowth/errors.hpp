#ifndef SEPGROWTH_ERRORS_HPP_
#define SEPGROWTH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sepgrowth {

  //! Base class of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class InvalidArgument : public Error {
   public:
    using Error::Error;
  };

  //! Two permutations (or a permutation and a point) of different degree.
  class DegreeMismatch : public InvalidArgument {
   public:
    using InvalidArgument::InvalidArgument;
  };

  //! The points 0, r, 2r are not pairwise distinct modulo d.
  class DegenerateParameter : public InvalidArgument {
   public:
    using InvalidArgument::InvalidArgument;
  };

  class ParseError : public InvalidArgument {
   public:
    using InvalidArgument::InvalidArgument;
  };

  //! A growth function is too small for the requested construction.
  class GrowthTooSmall : public Error {
   public:
    using Error::Error;
  };

  //! The greedy search for r(n) found no admissible value in its window.
  class WindowExhausted : public Error {
   public:
    WindowExhausted(std::size_t n, std::string const& msg)
        : Error(msg), _n(n) {}

    std::size_t row() const noexcept {
      return _n;
    }

   private:
    std::size_t _n;
  };

  //! A bounded search (prime scan, enumeration) hit its safety cap.
  class SearchCapExceeded : public Error {
   public:
    using Error::Error;
  };

  //! A parameter table failed validation on load.
  class ValidationFailed : public Error {
   public:
    using Error::Error;
  };

  //! A lower-bound witness could not be certified; what() names the clause.
  class PremiseFailure : public Error {
   public:
    PremiseFailure(std::string clause, std::string const& msg)
        : Error(msg), _clause(std::move(clause)) {}

    std::string const& clause() const noexcept {
      return _clause;
    }

   private:
    std::string _clause;
  };

}  // namespace sepgrowth

#endif  // SEPGROWTH_ERRORS_HPP_
