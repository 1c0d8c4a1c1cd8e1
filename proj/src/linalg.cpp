#include "leray/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace leray {

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  QMatrix out(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Q& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (int j = 0; j < o.c_; ++j)
        if (sgn(o(k, j)) != 0) out(i, j) += a * o(k, j);
    }
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix out(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

bool QMatrix::operator==(const QMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

bool QMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Q& q) { return sgn(q) == 0; });
}

std::string QMatrix::str() const {
  std::ostringstream os;
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j);
    os << "\n";
  }
  return os.str();
}

std::vector<std::pair<int, Z>> integerize(const SparseVec& v) {
  Z l = 1;
  for (const auto& [c, q] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<std::pair<int, Z>> out;
  for (const auto& [c, q] : v)
    if (sgn(q) != 0) out.emplace_back(c, Z(q.get_num() * (l / q.get_den())));
  return out;
}

static void make_primitive(std::vector<std::pair<int, Z>>& row) {
  Z g = 0;
  for (const auto& e : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
  if (g > 1)
    for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
  if (!row.empty() && row.front().second < 0)
    for (auto& e : row) e.second = -e.second;
}

bool IntEchelon::add(std::vector<std::pair<int, Z>> row) {
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  row.erase(std::remove_if(row.begin(), row.end(), [](const auto& e) { return sgn(e.second) == 0; }), row.end());
  while (!row.empty()) {
    auto it = rows_.find(row.front().first);
    if (it == rows_.end()) {
      make_primitive(row);
      rows_.emplace(row.front().first, std::move(row));
      return true;
    }
    const auto& piv = it->second;
    Z a = piv.front().second, b = row.front().second;
    Z g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    a /= g;
    b /= g;
    // row <- a*row - b*piv
    std::vector<std::pair<int, Z>> out;
    out.reserve(row.size() + piv.size());
    size_t i = 0, j = 0;
    while (i < row.size() || j < piv.size()) {
      if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
        out.emplace_back(row[i].first, a * row[i].second);
        ++i;
      } else if (i == row.size() || piv[j].first < row[i].first) {
        out.emplace_back(piv[j].first, -b * piv[j].second);
        ++j;
      } else {
        Z v = a * row[i].second - b * piv[j].second;
        if (sgn(v) != 0) out.emplace_back(row[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    make_primitive(out);
    row = std::move(out);
  }
  return false;
}

int rank_sparse(const std::vector<SparseVec>& rows) {
  IntEchelon e;
  for (const auto& r : rows) e.add(integerize(r));
  return e.rank();
}

int rank(const QMatrix& m) {
  std::vector<SparseVec> rows(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) rows[i][j] = m(i, j);
  return rank_sparse(rows);
}

std::vector<int> rref(QMatrix& m) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (sgn(m(i, c)) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Q inv = 1 / m(r, c);
    for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Q f = m(i, c);
      for (int j = c; j < m.cols(); ++j)
        if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

std::vector<std::vector<Q>> kernel_basis(const QMatrix& m) {
  QMatrix a = m;
  auto piv = rref(a);
  std::vector<char> is_piv(m.cols(), 0);
  for (int c : piv) is_piv[c] = 1;
  std::vector<std::vector<Q>> out;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    std::vector<Q> v(m.cols());
    v[f] = 1;
    for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -a(static_cast<int>(k), f);
    out.push_back(std::move(v));
  }
  return out;
}

bool solve(const QMatrix& m, const std::vector<Q>& b, std::vector<Q>* x) {
  QMatrix aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols()) return false;
  if (x) {
    x->assign(m.cols(), Q(0));
    for (size_t k = 0; k < piv.size(); ++k) (*x)[piv[k]] = aug(static_cast<int>(k), m.cols());
  }
  return true;
}

SparseVec Echelon::reduce(SparseVec v) const {
  auto it = v.begin();
  while (it != v.end()) {
    auto r = rows_.find(it->first);
    if (r == rows_.end() || sgn(it->second) == 0) {
      if (sgn(it->second) == 0)
        it = v.erase(it);
      else
        ++it;
      continue;
    }
    Q f = it->second;
    int col = it->first;
    for (const auto& [c, q] : r->second) {
      Q& t = v[c];
      t -= f * q;
    }
    // entries at columns >= col may have changed; restart from col
    it = v.lower_bound(col);
  }
  for (auto i = v.begin(); i != v.end();)
    i = sgn(i->second) == 0 ? v.erase(i) : std::next(i);
  return v;
}

bool Echelon::add(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Q inv = 1 / v.begin()->second;
  for (auto& [c, q] : v) q *= inv;
  int p = v.begin()->first;
  rows_.emplace(p, std::move(v));
  return true;
}

}  // namespace leray

namespace leray {

namespace {

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  for (; e; e >>= 1, a = a * a % p)
    if (e & 1) r = r * a % p;
  return r;
}

std::uint32_t mod_of(const Z& z, std::uint32_t p) {
  Z m = z % p;
  if (m < 0) m += p;
  return static_cast<std::uint32_t>(m.get_ui());
}

}  // namespace

std::uint32_t to_mod_p(const Q& q, std::uint32_t p) {
  std::uint32_t den = mod_of(q.get_den(), p);
  if (den == 0) throw std::domain_error("denominator divisible by the working prime");
  return static_cast<std::uint32_t>(std::uint64_t{mod_of(q.get_num(), p)} * pow_mod(den, p - 2, p) % p);
}

int rank_mod_p(std::vector<ModRow> rows, std::uint32_t p) {
  std::sort(rows.begin(), rows.end(), [](const ModRow& a, const ModRow& b) { return a.size() < b.size(); });
  std::unordered_map<int, ModRow> piv;  // pivot column -> row with leading 1
  ModRow tmp;
  for (auto& row : rows) {
    while (!row.empty()) {
      auto it = piv.find(row.front().first);
      if (it == piv.end()) break;
      // row -= row[lead] * pivot row
      std::uint64_t f = p - row.front().second;
      const ModRow& pr = it->second;
      tmp.clear();
      size_t i = 0, j = 0;
      while (i < row.size() || j < pr.size()) {
        if (j == pr.size() || (i < row.size() && row[i].first < pr[j].first)) {
          tmp.push_back(row[i++]);
        } else if (i == row.size() || pr[j].first < row[i].first) {
          tmp.emplace_back(pr[j].first, static_cast<std::uint32_t>(f * pr[j].second % p));
          ++j;
        } else {
          auto v = static_cast<std::uint32_t>((row[i].second + f * pr[j].second) % p);
          if (v) tmp.emplace_back(row[i].first, v);
          ++i, ++j;
        }
      }
      row.swap(tmp);
    }
    if (row.empty()) continue;
    std::uint64_t inv = pow_mod(row.front().second, p - 2, p);
    for (auto& [c, v] : row) v = static_cast<std::uint32_t>(v * inv % p);
    int lead = row.front().first;
    piv.emplace(lead, std::move(row));
  }
  return static_cast<int>(piv.size());
}

}  // namespace leray
