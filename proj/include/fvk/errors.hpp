#ifndef FVK_ERRORS_HPP
#define FVK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fvk {

// Syntax error in a diagram or curve file. Positions are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// A diagram failed structural validation.
class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// State-sum size guard tripped.
class CapExceededError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A curve is not generic: degenerate projection or degenerate position
// with respect to the symmetry group.
class GenericityError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fvk

#endif
