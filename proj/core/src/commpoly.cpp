#include "qks/commpoly.hpp"

#include <cctype>
#include <stdexcept>

namespace qks {

void CommPoly::add(const Exponents& e, const Cyclotomic& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

CommPoly CommPoly::constant(std::size_t nvars, const Cyclotomic& c) {
  CommPoly p(nvars);
  p.add(Exponents(nvars, 0), c);
  return p;
}

CommPoly CommPoly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("variable index");
  CommPoly p(nvars);
  Exponents e(nvars, 0);
  e[index] = 1;
  p.add(e, Cyclotomic(1));
  return p;
}

int CommPoly::weighted_degree(const std::vector<int>& weights) const {
  int best = 0;
  bool first = true;
  for (const auto& [e, _] : terms_) {
    int d = 0;
    for (std::size_t i = 0; i < nvars_; ++i) d += e[i] * weights.at(i);
    if (first || d > best) best = d;
    first = false;
  }
  return best;
}

CommPoly& CommPoly::operator+=(const CommPoly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("CommPoly variable count mismatch");
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

CommPoly& CommPoly::operator-=(const CommPoly& o) { return *this += -o; }

CommPoly CommPoly::operator-() const { return scaled(Cyclotomic(-1)); }

CommPoly CommPoly::scaled(const Cyclotomic& c) const {
  CommPoly p(nvars_);
  for (const auto& [e, k] : terms_) p.add(e, k * c);
  return p;
}

CommPoly operator*(const CommPoly& a, const CommPoly& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("CommPoly variable count mismatch");
  CommPoly p(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      CommPoly::Exponents e(a.nvars_);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      p.add(e, ca * cb);
    }
  }
  return p;
}

CommPoly CommPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power of a polynomial");
  CommPoly acc = constant(nvars_, Cyclotomic(1));
  for (int k = 0; k < e; ++k) acc = acc * *this;
  return acc;
}

Cyclotomic CommPoly::evaluate(const std::vector<Cyclotomic>& values) const {
  if (values.size() != nvars_) throw std::invalid_argument("CommPoly::evaluate: wrong number of values");
  return evaluate_in<Cyclotomic>(
      values, Cyclotomic(1), Cyclotomic(0), [](const Cyclotomic& x, const Cyclotomic& y) { return x * y; },
      [](const Cyclotomic& x, const Cyclotomic& c) { return x * c; });
}

CommPoly CommPoly::substitute(const std::vector<CommPoly>& images) const {
  if (images.size() != nvars_) throw std::invalid_argument("CommPoly::substitute: wrong number of images");
  std::size_t m = images.empty() ? 0 : images[0].nvars();
  return evaluate_in<CommPoly>(
      images, constant(m, Cyclotomic(1)), CommPoly(m), [](const CommPoly& x, const CommPoly& y) { return x * y; },
      [](const CommPoly& x, const Cyclotomic& c) { return x.scaled(c); });
}

std::string CommPoly::to_string(const std::vector<std::string>& names, long conductor) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  // highest total degree first reads more naturally
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c0] = *it;
    Cyclotomic c = conductor > 0 ? c0.coerce(lcm_long(conductor, c0.conductor())) : c0;
    bool negative = c.is_rational() && sgn(c.rational_value()) < 0;
    Cyclotomic mag = negative ? -c : c;
    std::string mono;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(i);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coef = mag.is_rational() ? mag.to_string() : "(" + mag.to_string() + ")";
    if (!first) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    first = false;
    if (mono.empty()) out += coef;
    else if (coef == "1") out += mono;
    else out += coef + "*" + mono;
  }
  return out;
}

CommPoly CommPoly::parse(std::string_view text, const std::vector<std::string>& names) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  const std::size_t n = names.size();
  CommPoly out(n);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  if (s.empty()) fail("empty");
  while (pos < s.size()) {
    Cyclotomic coef(1);
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') coef = Cyclotomic(-1);
      ++pos;
    } else if (pos != 0) {
      fail("expected sign");
    }
    Exponents e(n, 0);
    bool any = false;
    while (true) {
      if (pos >= s.size()) fail("dangling operator");
      if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
        std::size_t st = pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
        coef *= Cyclotomic(parse_rational(s.substr(st, pos - st)));
      } else {
        std::size_t st = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
        std::string name = s.substr(st, pos - st);
        std::size_t idx = n;
        for (std::size_t i = 0; i < n; ++i) {
          if (names[i] == name) idx = i;
        }
        if (idx == n) fail("unknown name '" + name + "'");
        int power = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          std::size_t ps = pos;
          while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
          if (ps == pos) fail("missing exponent");
          power = std::stoi(s.substr(ps, pos - ps));
        }
        e[idx] += power;
      }
      any = true;
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    out.add(e, coef);
  }
  return out;
}

}  // namespace qks
