#pragma once

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace leray {

using Bits = boost::dynamic_bitset<std::uint64_t>;

struct PosetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite poset with dense integer ids. Order queries go through up-set
// bitsets indexed by position in a fixed linear extension, so the least
// element of any up-set intersection is its first set bit.
class Poset {
 public:
  Poset() = default;

  // covers: (lower, upper) pairs.
  static Poset from_covers(int n, const std::vector<std::pair<int, int>>& covers,
                           std::vector<std::string> labels = {});
  // leq(a, b) must be a partial order on [0, n).
  template <class Leq>
  static Poset from_leq(int n, Leq&& leq, std::vector<std::string> labels = {});

  int size() const { return n_; }
  bool leq(int a, int b) const { return up_[a].test(pos_[b]); }
  bool lt(int a, int b) const { return a != b && leq(a, b); }
  bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }

  const std::vector<int>& upper_covers(int x) const { return ucov_[x]; }
  const std::vector<int>& lower_covers(int x) const { return lcov_[x]; }
  std::vector<std::pair<int, int>> covers() const;

  // Linear extension; position of each id in it.
  const std::vector<int>& linear_order() const { return order_; }
  int position(int x) const { return pos_[x]; }

  const Bits& up_bits(int x) const { return up_[x]; }
  const Bits& down_bits(int x) const { return down_[x]; }
  std::vector<int> ids_of(const Bits& b) const;

  // Longest chain length from a minimal element below x.
  int rank(int x) const { return rank_[x]; }
  bool is_ranked() const { return ranked_; }
  int height() const;

  std::optional<int> bottom() const { return bottom_; }
  std::optional<int> top() const { return top_; }
  std::vector<int> minimal() const;
  std::vector<int> maximal() const;

  std::optional<int> join_of(const std::vector<int>& s) const;
  std::optional<int> meet_of(const std::vector<int>& s) const;
  std::optional<int> join(int a, int b) const { return join_of({a, b}); }
  std::optional<int> meet(int a, int b) const { return meet_of({a, b}); }

  // Longest chain inside [x, y].
  int interval_length(int x, int y) const;

  // Induced subposet on [x, y]; second member maps new ids to old ids.
  std::pair<Poset, std::vector<int>> interval(int x, int y) const;
  std::pair<Poset, std::vector<int>> induced(const std::vector<int>& ids) const;
  Poset opposite() const;

  // All chains x_0 < ... < x_p, lexicographic on ids.
  std::vector<std::vector<int>> chains(int p) const;
  template <class F>
  void for_each_chain_from(int x, int p, F&& f) const;

  const std::string& label(int x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int find_label(const std::string& s) const;

 private:
  void finish_from_bits();

  int n_ = 0;
  std::vector<int> order_, pos_;
  std::vector<Bits> up_, down_;  // indexed by position
  std::vector<std::vector<int>> ucov_, lcov_;
  std::vector<int> rank_;
  bool ranked_ = true;
  std::optional<int> bottom_, top_;
  std::vector<std::string> labels_;
};

bool is_geometric_lattice(const Poset& p);

template <class Leq>
Poset Poset::from_leq(int n, Leq&& leq, std::vector<std::string> labels) {
  // order ids by number of elements below (a linear extension)
  std::vector<int> below(n, 0);
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (leq(a, b)) {
        rel[a][b] = 1;
        ++below[b];
      }
  for (int a = 0; a < n; ++a)
    if (!rel[a][a]) throw PosetError("order relation is not reflexive");
  Poset p;
  p.n_ = n;
  p.order_.resize(n);
  for (int i = 0; i < n; ++i) p.order_[i] = i;
  std::stable_sort(p.order_.begin(), p.order_.end(),
                   [&](int a, int b) { return below[a] < below[b]; });
  p.pos_.assign(n, 0);
  for (int i = 0; i < n; ++i) p.pos_[p.order_[i]] = i;
  p.up_.assign(n, Bits(n));
  p.down_.assign(n, Bits(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (rel[a][b]) {
        if (a != b && rel[b][a]) throw PosetError("order relation is not antisymmetric");
        p.up_[a].set(p.pos_[b]);
        p.down_[b].set(p.pos_[a]);
      }
  p.labels_ = std::move(labels);
  p.finish_from_bits();
  return p;
}

template <class F>
void Poset::for_each_chain_from(int x, int p, F&& f) const {
  std::vector<int> cur{x};
  auto rec = [&](auto& self) -> void {
    if (static_cast<int>(cur.size()) == p + 1) {
      f(cur);
      return;
    }
    Bits b = up_[cur.back()];
    b.reset(pos_[cur.back()]);
    std::vector<int> nxt = ids_of(b);
    std::sort(nxt.begin(), nxt.end());
    for (int y : nxt) {
      cur.push_back(y);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
}

}  // namespace leray
