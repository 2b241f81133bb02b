#include "fvk/poly2.hpp"

#include <mutex>
#include <sstream>
#include <vector>

namespace fvk {

Poly2 Poly2::monomial(std::int64_t coeff, int a_exp, int b_exp) {
  Poly2 p;
  p.add_term(coeff, a_exp, b_exp);
  return p;
}

const Poly2& Poly2::circle_factor() {
  static const Poly2 delta = [] {
    Poly2 p;
    p.add_term(-1, 2, 0);
    p.add_term(-1, -2, 0);
    return p;
  }();
  return delta;
}

const Poly2& Poly2::circle_power(int k) {
  static std::vector<Poly2> cache{Poly2::monomial(1)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= k) {
    cache.push_back(cache.back() * circle_factor());
  }
  return cache[k];
}

void Poly2::add_term(std::int64_t coeff, int a_exp, int b_exp) {
  if (coeff == 0) return;
  Key key{a_exp, b_exp};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly2& Poly2::operator+=(const Poly2& other) {
  for (const auto& [key, coeff] : other.terms_) {
    add_term(coeff, key.first, key.second);
  }
  return *this;
}

Poly2 Poly2::operator+(const Poly2& other) const {
  Poly2 result = *this;
  result += other;
  return result;
}

Poly2 Poly2::operator*(const Poly2& other) const {
  Poly2 result;
  for (const auto& [k1, c1] : terms_) {
    for (const auto& [k2, c2] : other.terms_) {
      result.add_term(c1 * c2, k1.first + k2.first, k1.second + k2.second);
    }
  }
  return result;
}

void Poly2::scale(std::int64_t coeff, int a_exp, int b_exp) {
  TermMap scaled;
  if (coeff != 0) {
    for (const auto& [key, c] : terms_) {
      scaled.emplace(Key{key.first + a_exp, key.second + b_exp}, c * coeff);
    }
  }
  terms_ = std::move(scaled);
}

bool Poly2::mentions_b() const {
  for (const auto& [key, c] : terms_) {
    (void)c;
    if (key.second > 0) return true;
  }
  return false;
}

int Poly2::min_a_exp() const {
  int m = 0;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    (void)c;
    if (first || key.first < m) m = key.first;
    first = false;
  }
  return m;
}

int Poly2::max_a_exp() const {
  int m = 0;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    (void)c;
    if (first || key.first > m) m = key.first;
    first = false;
  }
  return m;
}

int Poly2::max_b_exp() const {
  int m = 0;
  for (const auto& [key, c] : terms_) {
    (void)c;
    if (key.second > m) m = key.second;
  }
  return m;
}

namespace {

void append_monomial(std::ostringstream& out, std::int64_t abs_coeff, int a_exp,
                     int b_exp) {
  if (a_exp == 0 && b_exp == 0) {
    out << abs_coeff;
    return;
  }
  bool need_star = false;
  if (abs_coeff != 1) {
    out << abs_coeff;
    need_star = true;
  }
  if (a_exp != 0) {
    if (need_star) out << '*';
    out << 'a';
    if (a_exp != 1) out << '^' << a_exp;
    need_star = true;
  }
  if (b_exp != 0) {
    if (need_star) out << '*';
    out << 'b';
    if (b_exp != 1) out << '^' << b_exp;
  }
}

}  // namespace

std::string Poly2::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, coeff] : terms_) {
    std::int64_t abs = coeff < 0 ? -coeff : coeff;
    if (first) {
      if (coeff < 0) out << '-';
    } else {
      out << (coeff < 0 ? " - " : " + ");
    }
    append_monomial(out, abs, key.first, key.second);
    first = false;
  }
  return out.str();
}

}  // namespace fvk
