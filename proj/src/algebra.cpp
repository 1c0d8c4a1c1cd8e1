#include "leray/algebra.hpp"

#include <cstring>
#include <sstream>

namespace leray {

void Mono::set_exp(int i, int b) {
  xd = static_cast<std::uint16_t>(xd - x[63 - i] + b);
  x[63 - i] = static_cast<std::uint8_t>(b);
  if (b)
    xs |= bit(i);
  else
    xs &= ~bit(i);
}

Mono Mono::ext(Mask s) {
  Mono m;
  m.e = s;
  return m;
}

Mono Mono::var(int i, int b) {
  Mono m;
  m.set_exp(i, b);
  return m;
}

int compare(const Mono& a, const Mono& b) {
  int ta = a.total(), tb = b.total();
  if (ta != tb) return ta < tb ? -1 : 1;
  if (a.e != b.e) {
    Mask diff = a.e ^ b.e;
    int top = 63 - __builtin_clzll(diff);
    return (a.e >> top) & 1 ? 1 : -1;
  }
  int c = std::memcmp(a.x.data(), b.x.data(), 64);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

size_t MonoHash::operator()(const Mono& m) const {
  size_t h = std::hash<std::uint64_t>()(m.e * 0x9E3779B97F4A7C15ULL ^ m.xs);
  for (int i : mask_members(m.xs)) h = h * 31 + static_cast<size_t>(m.exp(i)) * 1315423911u + i;
  return h;
}

bool divides(const Mono& a, const Mono& b) {
  if ((a.e & b.e) != a.e || (a.xs & b.xs) != a.xs) return false;
  for (int i : mask_members(a.xs))
    if (a.exp(i) > b.exp(i)) return false;
  return true;
}

Mono quotient(const Mono& b, const Mono& a) {
  Mono q = b;
  q.e = b.e & ~a.e;
  for (int i : mask_members(a.xs)) q.set_exp(i, b.exp(i) - a.exp(i));
  return q;
}

Mono mono_mul(const Mono& a, const Mono& b, int* sign) {
  Mono m;
  if (a.e & b.e) {
    *sign = 0;
    return m;
  }
  int inv = 0;
  for (int j : mask_members(b.e)) {
    Mask higher = j == 63 ? 0 : ~((Mask{2} << j) - 1);
    inv += popcount(a.e & higher);
  }
  *sign = (inv & 1) ? -1 : 1;
  m = a;
  m.e = a.e | b.e;
  for (int i : mask_members(b.xs)) {
    int v = a.exp(i) + b.exp(i);
    if (v > 255) throw std::overflow_error("exponent overflow");
    m.set_exp(i, v);
  }
  return m;
}

Element::Element(const Mono& m, const Q& c) {
  if (sgn(c) != 0) t_.emplace(m, c);
}

Element Element::scalar(const Q& c) { return Element(Mono::one(), c); }

Q Element::coeff(const Mono& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Q(0) : it->second;
}

void Element::add(const Mono& m, const Q& c) {
  if (sgn(c) == 0) return;
  auto [it, ins] = t_.emplace(m, c);
  if (!ins) {
    it->second += c;
    if (sgn(it->second) == 0) t_.erase(it);
  }
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [m, c] : o.t_) add(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [m, c] : o.t_) add(m, -c);
  return *this;
}

Element Element::operator+(const Element& o) const {
  Element r = *this;
  r += o;
  return r;
}

Element Element::operator-(const Element& o) const {
  Element r = *this;
  r -= o;
  return r;
}

Element Element::operator*(const Q& c) const {
  Element r;
  if (sgn(c) == 0) return r;
  for (const auto& [m, v] : t_) r.t_.emplace_hint(r.t_.end(), m, v * c);
  return r;
}

bool Element::homogeneous() const {
  if (t_.empty()) return true;
  int xd = t_.begin()->first.xdeg(), ed = t_.begin()->first.edeg();
  for (const auto& [m, c] : t_)
    if (m.xdeg() != xd || m.edeg() != ed) return false;
  return true;
}

std::string mono_str(const Mono& m, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool any = false;
  if (m.e) {
    os << "e_{";
    bool first = true;
    for (int i : mask_members(m.e)) {
      os << (first ? "" : ",") << names[i];
      first = false;
    }
    os << "}";
    any = true;
  }
  for (int i : mask_members(m.xs)) {
    os << (any ? " " : "") << "x_" << names[i];
    if (m.exp(i) > 1) os << "^" << m.exp(i);
    any = true;
  }
  if (!any) os << "1";
  return os.str();
}

std::string Element::str(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    Q a = abs(c);
    bool unit = a == 1;
    if (!unit) os << a << (m == Mono::one() ? "" : "*");
    if (!unit || !(m == Mono::one())) os << (m == Mono::one() ? (unit ? "1" : "") : mono_str(m, names));
    first = false;
  }
  return os.str();
}

Element mul(const Mono& m, const Element& b) {
  Element r;
  for (const auto& [mb, cb] : b.terms()) {
    int s;
    Mono p = mono_mul(m, mb, &s);
    if (s) r.add(p, s > 0 ? cb : Q(-cb));
  }
  return r;
}

Element mul(const Element& a, const Element& b) {
  Element r;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      int s;
      Mono p = mono_mul(ma, mb, &s);
      if (s) r.add(p, s > 0 ? Q(ca * cb) : Q(-ca * cb));
    }
  return r;
}

Element differential(const Element& a) {
  Element r;
  for (const auto& [m, c] : a.terms()) {
    int k = 0;
    for (int g : mask_members(m.e)) {
      Mono t = m;
      t.e &= ~bit(g);
      t.set_exp(g, t.exp(g) + 1);
      r.add(t, (k & 1) ? Q(-c) : c);
      ++k;
    }
  }
  return r;
}

Element boundary(const Element& a) {
  Element r;
  for (const auto& [m, c] : a.terms()) {
    int k = 0;
    for (int g : mask_members(m.e)) {
      Mono t = m;
      t.e &= ~bit(g);
      r.add(t, (k & 1) ? Q(-c) : c);
      ++k;
    }
  }
  return r;
}

Element substitute(const Element& a, const std::vector<Element>& e_img, const std::vector<Element>& x_img) {
  Element r;
  for (const auto& [m, c] : a.terms()) {
    Element t = Element::scalar(c);
    for (int g : mask_members(m.e)) t = mul(t, e_img[g]);
    for (int g : mask_members(m.xs))
      for (int k = 0; k < m.exp(g); ++k) t = mul(t, x_img[g]);
    r += t;
  }
  return r;
}

}  // namespace leray
