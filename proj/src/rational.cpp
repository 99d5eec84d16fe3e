#include "lcurve/rational.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace lcurve {

namespace {

bool is_integer_text(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat rat_parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("rat_parse: empty literal");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den))
      throw std::invalid_argument("rat_parse: bad fraction '" + text + "'");
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
      throw std::invalid_argument("rat_parse: bad fraction '" + text + "'");
    if (r.get_den() == 0)
      throw std::invalid_argument("rat_parse: zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
  }

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string head = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (!head.empty() && (head[0] == '+' || head[0] == '-')) head = head.substr(1);
    if (head.empty()) head = "0";
    if (!is_integer_text(head) || (!frac.empty() && !is_integer_text(frac)))
      throw std::invalid_argument("rat_parse: bad decimal '" + text + "'");
    mpz_class ipart(head), fpart(frac.empty() ? "0" : frac);
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rat r = Rat(ipart) + Rat(fpart) / Rat(scale);
    if (neg) r = -r;
    r.canonicalize();
    return r;
  }

  if (!is_integer_text(s))
    throw std::invalid_argument("rat_parse: bad literal '" + text + "'");
  Rat r{mpz_class(s)};
  return r;
}

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite");
  Rat r(x);
  r.canonicalize();
  return r;
}

double rat_to_double(const Rat& x) { return x.get_d(); }

std::string rat_str(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string double_str(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

}  // namespace lcurve
