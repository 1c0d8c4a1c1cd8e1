#include "leray/poset.hpp"

#include <algorithm>
#include <queue>

namespace leray {

Poset Poset::from_covers(int n, const std::vector<std::pair<int, int>>& covers,
                         std::vector<std::string> labels) {
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indeg(n, 0);
  for (auto [a, b] : covers) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw PosetError("cover refers to unknown element");
    if (a == b) throw PosetError("cover relation has a loop");
    succ[a].push_back(b);
    ++indeg[b];
  }
  // Kahn, smallest id first for determinism
  std::priority_queue<int, std::vector<int>, std::greater<>> q;
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) q.push(i);
  Poset p;
  p.n_ = n;
  while (!q.empty()) {
    int a = q.top();
    q.pop();
    p.order_.push_back(a);
    for (int b : succ[a])
      if (--indeg[b] == 0) q.push(b);
  }
  if (static_cast<int>(p.order_.size()) != n) throw PosetError("cover relation has a cycle");
  p.pos_.assign(n, 0);
  for (int i = 0; i < n; ++i) p.pos_[p.order_[i]] = i;
  p.up_.assign(n, Bits(n));
  p.down_.assign(n, Bits(n));
  for (int i = n - 1; i >= 0; --i) {
    int a = p.order_[i];
    p.up_[a].set(i);
    for (int b : succ[a]) p.up_[a] |= p.up_[b];
  }
  for (int a = 0; a < n; ++a)
    for (auto i = p.up_[a].find_first(); i != Bits::npos; i = p.up_[a].find_next(i))
      p.down_[p.order_[i]].set(p.pos_[a]);
  p.labels_ = std::move(labels);
  p.finish_from_bits();
  return p;
}

void Poset::finish_from_bits() {
  if (labels_.empty()) {
    labels_.resize(n_);
    for (int i = 0; i < n_; ++i) labels_[i] = std::to_string(i);
  }
  if (static_cast<int>(labels_.size()) != n_) throw PosetError("label count does not match element count");
  ucov_.assign(n_, {});
  lcov_.assign(n_, {});
  // upper covers of a: minimal elements of the strict up-set, scanned in
  // linear-extension order
  for (int a = 0; a < n_; ++a) {
    Bits reached(n_);
    const Bits& u = up_[a];
    for (auto i = u.find_next(pos_[a]); i != Bits::npos; i = u.find_next(i)) {
      if (reached.test(i)) continue;
      int b = order_[i];
      ucov_[a].push_back(b);
      lcov_[b].push_back(a);
      reached |= up_[b];
    }
  }
  for (auto& v : ucov_) std::sort(v.begin(), v.end());
  for (auto& v : lcov_) std::sort(v.begin(), v.end());
  rank_.assign(n_, 0);
  for (int a : order_)
    for (int b : ucov_[a]) rank_[b] = std::max(rank_[b], rank_[a] + 1);
  ranked_ = true;
  for (int a = 0; a < n_; ++a) {
    for (int b : ucov_[a])
      if (rank_[b] != rank_[a] + 1) ranked_ = false;
    if (lcov_[a].empty() && rank_[a] != 0) ranked_ = false;
  }
  bottom_.reset();
  top_.reset();
  auto mins = minimal();
  auto maxs = maximal();
  if (mins.size() == 1) bottom_ = mins[0];
  if (maxs.size() == 1) top_ = maxs[0];
}

std::vector<std::pair<int, int>> Poset::covers() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n_; ++a)
    for (int b : ucov_[a]) out.emplace_back(a, b);
  return out;
}

std::vector<int> Poset::ids_of(const Bits& b) const {
  std::vector<int> out;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(order_[i]);
  return out;
}

int Poset::height() const {
  int h = 0;
  for (int r : rank_) h = std::max(h, r);
  return h;
}

std::vector<int> Poset::minimal() const {
  std::vector<int> out;
  for (int a = 0; a < n_; ++a)
    if (lcov_[a].empty()) out.push_back(a);
  return out;
}

std::vector<int> Poset::maximal() const {
  std::vector<int> out;
  for (int a = 0; a < n_; ++a)
    if (ucov_[a].empty()) out.push_back(a);
  return out;
}

std::optional<int> Poset::join_of(const std::vector<int>& s) const {
  for (int x : s)
    if (x < 0 || x >= n_) throw PosetError("unknown element id " + std::to_string(x));
  if (s.empty()) return bottom_;
  Bits b = up_[s[0]];
  for (size_t k = 1; k < s.size(); ++k) b &= up_[s[k]];
  auto i = b.find_first();
  if (i == Bits::npos) return std::nullopt;
  int j = order_[i];
  // least element only if every upper bound lies above it
  if (!b.is_subset_of(up_[j])) return std::nullopt;
  return j;
}

std::optional<int> Poset::meet_of(const std::vector<int>& s) const {
  for (int x : s)
    if (x < 0 || x >= n_) throw PosetError("unknown element id " + std::to_string(x));
  if (s.empty()) return top_;
  Bits b = down_[s[0]];
  for (size_t k = 1; k < s.size(); ++k) b &= down_[s[k]];
  if (b.none()) return std::nullopt;
  size_t last = 0;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) last = i;
  int j = order_[last];
  if (!b.is_subset_of(down_[j])) return std::nullopt;
  return j;
}

int Poset::interval_length(int x, int y) const {
  if (!leq(x, y)) throw PosetError("interval endpoints are not ordered");
  std::vector<int> best(n_, -1);
  best[x] = 0;
  for (int i = pos_[x]; i <= pos_[y]; ++i) {
    int a = order_[i];
    if (best[a] < 0) continue;
    for (int b : ucov_[a])
      if (leq(b, y)) best[b] = std::max(best[b], best[a] + 1);
  }
  return best[y];
}

std::pair<Poset, std::vector<int>> Poset::induced(const std::vector<int>& ids) const {
  std::vector<std::string> lab;
  for (int a : ids) lab.push_back(labels_[a]);
  Poset p = from_leq(
      static_cast<int>(ids.size()), [&](int a, int b) { return leq(ids[a], ids[b]); }, lab);
  return {std::move(p), ids};
}

std::pair<Poset, std::vector<int>> Poset::interval(int x, int y) const {
  if (!leq(x, y)) throw PosetError("interval endpoints are not ordered");
  Bits b = up_[x] & down_[y];
  std::vector<int> ids = ids_of(b);
  std::sort(ids.begin(), ids.end());
  return induced(ids);
}

Poset Poset::opposite() const {
  std::vector<std::pair<int, int>> cov;
  for (auto [a, b] : covers()) cov.emplace_back(b, a);
  return from_covers(n_, cov, labels_);
}

std::vector<std::vector<int>> Poset::chains(int p) const {
  std::vector<std::vector<int>> out;
  if (p < 0) return out;
  for (int x = 0; x < n_; ++x) for_each_chain_from(x, p, [&](const std::vector<int>& c) { out.push_back(c); });
  return out;
}

int Poset::find_label(const std::string& s) const {
  for (int i = 0; i < n_; ++i)
    if (labels_[i] == s) return i;
  return -1;
}

bool is_geometric_lattice(const Poset& p) {
  if (p.size() == 0 || !p.bottom() || !p.top() || !p.is_ranked()) return false;
  int n = p.size();
  int bot = *p.bottom();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!p.join(a, b) || !p.meet(a, b)) return false;
  std::vector<int> atoms = p.upper_covers(bot);
  for (int x = 0; x < n; ++x) {
    if (x == bot) continue;
    std::vector<int> below;
    for (int a : atoms)
      if (p.leq(a, x)) below.push_back(a);
    if (p.join_of(below) != x) return false;
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (p.rank(a) + p.rank(b) < p.rank(*p.join(a, b)) + p.rank(*p.meet(a, b))) return false;
  return true;
}

}  // namespace leray
