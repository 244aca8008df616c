#include "ndtopt/rational.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace ndtopt {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  std::string s = text;
  // strip surrounding whitespace
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = (s[0] == '-');
    s.erase(s.begin());
  }
  if (s.empty()) throw std::invalid_argument("bad rational literal: " + text);

  Rat value;
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("bad rational literal: " + text);
    }
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    value = Rat(n, d);
  } else if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot);
    std::string fp = s.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (fp.empty()) fp = "0";
    if (!all_digits(ip) || !all_digits(fp)) {
      throw std::invalid_argument("bad rational literal: " + text);
    }
    mpz_class den(1);
    for (size_t i = 0; i < fp.size(); ++i) den *= 10;
    mpz_class num = mpz_class(ip, 10) * den + mpz_class(fp, 10);
    value = Rat(num, den);
  } else {
    if (!all_digits(s)) throw std::invalid_argument("bad rational literal: " + text);
    value = Rat(mpz_class(s, 10));
  }
  value.canonicalize();
  return negative ? Rat(-value) : value;
}

std::string to_string(const Rat& value) {
  Rat v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string to_decimal_string(const Rat& value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value.get_d());
  return buf;
}

}  // namespace ndtopt
