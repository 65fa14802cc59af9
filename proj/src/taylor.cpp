#include "finsler/taylor.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace finsler {

namespace {

struct SpaceKey {
  std::vector<std::pair<int, int>> groups;
  int total;
  bool operator<(const SpaceKey& o) const { return std::tie(groups, total) < std::tie(o.groups, o.total); }
};

// Enumerates admissible exponent vectors in graded order.
void enumerate(const std::vector<JetSpace::Group>& groups, int total, std::vector<std::vector<int>>& out) {
  int nv = 0;
  for (const auto& g : groups) nv += g.count;
  std::vector<int> group_of;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    for (int i = 0; i < groups[gi].count; ++i) group_of.push_back(static_cast<int>(gi));
  }
  std::vector<int> cur(static_cast<std::size_t>(nv), 0);
  std::vector<int> group_deg(groups.size(), 0);
  for (int deg = 0; deg <= total; ++deg) {
    // distribute `deg` over variables, lexicographically descending
    auto rec = [&](auto&& self, int var, int left) -> void {
      if (var == nv) {
        if (left == 0) out.push_back(cur);
        return;
      }
      const int g = group_of[static_cast<std::size_t>(var)];
      const int room = groups[static_cast<std::size_t>(g)].max_order - group_deg[static_cast<std::size_t>(g)];
      for (int e = std::min(left, room); e >= 0; --e) {
        cur[static_cast<std::size_t>(var)] = e;
        group_deg[static_cast<std::size_t>(g)] += e;
        self(self, var + 1, left - e);
        group_deg[static_cast<std::size_t>(g)] -= e;
      }
      cur[static_cast<std::size_t>(var)] = 0;
    };
    if (nv == 0) {
      if (deg == 0) out.push_back({});
      continue;
    }
    rec(rec, 0, deg);
  }
}

}  // namespace

const JetSpace& JetSpace::get(const std::vector<Group>& groups, int total_order) {
  static std::mutex mu;
  static std::map<SpaceKey, std::unique_ptr<JetSpace>> cache;
  SpaceKey key{{}, total_order};
  for (const auto& g : groups) key.groups.emplace_back(g.count, g.max_order);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto space = std::unique_ptr<JetSpace>(new JetSpace(groups, total_order));
  const JetSpace& ref = *space;
  cache.emplace(std::move(key), std::move(space));
  return ref;
}

JetSpace::JetSpace(std::vector<Group> groups, int total_order)
    : groups_(std::move(groups)), total_order_(total_order) {
  for (const auto& g : groups_) {
    if (g.count < 0 || g.max_order < 0) throw std::invalid_argument("JetSpace: negative group parameter");
    num_vars_ += g.count;
  }
  if (total_order_ < 0) throw std::invalid_argument("JetSpace: negative total order");

  std::vector<std::vector<int>> monos;
  enumerate(groups_, total_order_, monos);
  const std::size_t st = stride();
  exponents_.assign(monos.size() * st, 0);
  for (std::size_t m = 0; m < monos.size(); ++m) {
    int deg = 0;
    double w = 1.0;
    for (std::size_t v = 0; v < monos[m].size(); ++v) {
      exponents_[m * st + v] = monos[m][v];
      deg += monos[m][v];
      for (int f = 2; f <= monos[m][v]; ++f) w *= f;
    }
    degrees_.push_back(deg);
    weights_.push_back(w);
  }

  for (std::size_t m = 0; m < monos.size(); ++m) {
    lookup_.emplace_back(encode(exponents(static_cast<int>(m))), static_cast<int>(m));
  }
  std::sort(lookup_.begin(), lookup_.end());

  linear_.assign(static_cast<std::size_t>(num_vars_), -1);
  std::vector<int> e(st, 0);
  for (int v = 0; v < num_vars_; ++v) {
    std::fill(e.begin(), e.end(), 0);
    e[static_cast<std::size_t>(v)] = 1;
    linear_[static_cast<std::size_t>(v)] = find(e);
  }

  const int n = size();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (degrees_[a] + degrees_[b] > total_order_) continue;
      for (std::size_t v = 0; v < st; ++v) e[v] = exponents(a)[v] + exponents(b)[v];
      const int out = find(e);
      if (out >= 0) {
        products_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                             static_cast<std::uint32_t>(out)});
      }
    }
  }
}

std::uint64_t JetSpace::encode(std::span<const int> exps) const {
  std::uint64_t code = 0;
  const std::uint64_t base = static_cast<std::uint64_t>(total_order_) + 1;
  for (int e : exps) code = code * base + static_cast<std::uint64_t>(e);
  return code;
}

int JetSpace::find(std::span<const int> exps) const {
  if (static_cast<int>(exps.size()) != num_vars_ && !(num_vars_ == 0 && exps.size() <= 1)) return -1;
  int deg = 0;
  for (int e : exps) {
    if (e < 0) return -1;
    deg += e;
  }
  if (deg > total_order_) return -1;
  const std::uint64_t code = encode(exps);
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::make_pair(code, -1));
  if (it == lookup_.end() || it->first != code) return -1;
  return it->second;
}

}  // namespace finsler
