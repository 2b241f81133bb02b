#ifndef FVK_POLY2_HPP
#define FVK_POLY2_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace fvk {

// Exact sparse polynomial in Z[a, a^-1, b]. Keys are (a exponent, b exponent);
// a exponents may be negative, b exponents are nonnegative. No zero
// coefficients are stored, so the representation is canonical and equality
// is structural.
class Poly2 {
 public:
  using Key = std::pair<int, int>;  // (a_exp, b_exp)
  using TermMap = std::map<Key, std::int64_t>;

  Poly2() = default;

  static Poly2 monomial(std::int64_t coeff, int a_exp = 0, int b_exp = 0);

  // -a^2 - a^-2, the weight of a closed loop.
  static const Poly2& circle_factor();
  // circle_factor() to the k-th power, cached.
  static const Poly2& circle_power(int k);

  void add_term(std::int64_t coeff, int a_exp, int b_exp);
  Poly2& operator+=(const Poly2& other);
  Poly2 operator+(const Poly2& other) const;
  Poly2 operator*(const Poly2& other) const;

  // *= coeff * a^a_exp * b^b_exp
  void scale(std::int64_t coeff, int a_exp = 0, int b_exp = 0);

  bool is_zero() const { return terms_.empty(); }
  bool operator==(const Poly2& other) const { return terms_ == other.terms_; }
  bool operator!=(const Poly2& other) const { return !(*this == other); }

  // True if any term has a positive b exponent.
  bool mentions_b() const;
  int min_a_exp() const;  // 0 for the zero polynomial
  int max_a_exp() const;
  int max_b_exp() const;

  const TermMap& terms() const { return terms_; }

  // Canonical text form: terms sorted by (a exponent, b exponent) ascending,
  // e.g. "-a^-10 - a^-6 + a^-6*b^2 - a^-2*b^2". Unit coefficients drop the
  // digit except for constant terms. The zero polynomial prints as "0".
  std::string to_string() const;

 private:
  TermMap terms_;
};

}  // namespace fvk

#endif
