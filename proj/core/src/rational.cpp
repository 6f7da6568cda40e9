#include "spectile/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace spectile {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("not a rational number: \"" + std::string(text) + "\"");
}

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad(text);

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    mpz_class d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
    value = Rational(mpz_class{std::string(num)}, d);
    value.canonicalize();
  } else {
    long exponent = 0;
    auto e = s.find_first_of("eE");
    if (e != std::string_view::npos) {
      auto exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) bad(text);
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    long frac_digits = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      auto whole = s.substr(0, dot);
      auto frac = s.substr(dot + 1);
      if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
          (whole.empty() && frac.empty()))
        bad(text);
      digits = std::string(whole) + std::string(frac);
      frac_digits = static_cast<long>(frac.size());
    } else {
      if (!all_digits(s)) bad(text);
      digits = std::string(s);
    }
    value = Rational(mpz_class(digits)) * pow10(exponent - frac_digits);
    value.canonicalize();
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("from_double: non-finite value");
  Rational q(x);
  q.canonicalize();
  return q;
}

bool is_integer(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_den() == 1;
}

Rational floor(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace spectile
