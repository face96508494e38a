#include "segre/bases.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <unordered_map>

namespace segre {

long binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r.get_si();
}

long module_dim(const Dims& d, TriDegree t) {
  if (t.m < 0 || t.n < 0 || t.p < 0 || t.p > d.grid()) return 0;
  return binomial(t.m + d.e - 1, d.e - 1) * binomial(t.n + d.g - 1, d.g - 1) *
         binomial(d.grid(), t.p);
}

namespace {

std::mutex cache_mutex;

void gen_exponents(int len, int deg, Exponents& cur, std::vector<Exponents>& out) {
  if (len == 1) {
    cur.push_back(deg);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int x = deg; x >= 0; --x) {
    cur.push_back(x);
    gen_exponents(len - 1, deg - x, cur, out);
    cur.pop_back();
  }
}

struct MonomialHash {
  size_t operator()(const Monomial& m) const {
    size_t h = 1469598103934665603ull;
    auto mix = [&h](int v) {
      h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    };
    for (int v : m.a) mix(v);
    mix(-1);
    for (int v : m.b) mix(v);
    mix(-2);
    for (int v : m.z) mix(v);
    return h;
  }
};

struct ModuleBasis {
  std::vector<Monomial> elems;
  std::unordered_map<Monomial, long, MonomialHash> index;
};

using ModuleKey = std::tuple<int, int, int, int, int, int>;

const ModuleBasis& cached_basis(const Dims& d, Kind k, TriDegree t) {
  static std::map<ModuleKey, std::unique_ptr<ModuleBasis>> cache;
  ModuleKey key{d.e, d.g, static_cast<int>(k), t.m, t.n, t.p};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto mb = std::make_unique<ModuleBasis>();
  if (module_dim(d, t) > 0) {
    const auto& as = exponent_vectors(d.e, t.m);
    const auto& bs = exponent_vectors(d.g, t.n);
    const auto& zs = subsets(d.grid(), t.p);
    mb->elems.reserve(as.size() * bs.size() * zs.size());
    for (const auto& a : as)
      for (const auto& b : bs)
        for (const auto& z : zs) mb->elems.push_back({a, b, z});
    mb->index.reserve(mb->elems.size() * 2);
    for (long i = 0; i < static_cast<long>(mb->elems.size()); ++i)
      mb->index[mb->elems[i]] = i;
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[key];
  if (!slot) slot = std::move(mb);
  return *slot;
}

}  // namespace

const std::vector<Exponents>& exponent_vectors(int len, int deg) {
  static std::map<std::pair<int, int>, std::unique_ptr<std::vector<Exponents>>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[{len, deg}];
  if (!slot) {
    slot = std::make_unique<std::vector<Exponents>>();
    if (len <= 0) {
      if (deg == 0) slot->push_back({});
    } else if (deg >= 0) {
      Exponents cur;
      gen_exponents(len, deg, cur, *slot);
    }
  }
  return *slot;
}

const std::vector<PairSet>& subsets(int n, int p) {
  static std::map<std::pair<int, int>, std::unique_ptr<std::vector<PairSet>>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[{n, p}];
  if (!slot) {
    slot = std::make_unique<std::vector<PairSet>>();
    if (p >= 0 && p <= n) {
      PairSet cur(p);
      for (int i = 0; i < p; ++i) cur[i] = i;
      while (true) {
        slot->push_back(cur);
        int i = p - 1;
        while (i >= 0 && cur[i] == n - p + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < p; ++j) cur[j] = cur[j - 1] + 1;
      }
    }
  }
  return *slot;
}

const std::vector<Monomial>& module_basis(const Dims& d, Kind k, TriDegree t) {
  return cached_basis(d, k, t).elems;
}

long basis_index(const Dims& d, Kind k, TriDegree t, const Monomial& mono) {
  const auto& mb = cached_basis(d, k, t);
  auto it = mb.index.find(mono);
  if (it == mb.index.end())
    throw OutOfRange("basis_index: monomial not in the requested module");
  return it->second;
}

std::pair<Exponents, Exponents> set_content(const Dims& d, const PairSet& z) {
  Exponents rows(d.e, 0), cols(d.g, 0);
  for (int code : z) {
    rows[code_row(d, code) - 1]++;
    cols[code_col(d, code) - 1]++;
  }
  return {rows, cols};
}

std::pair<Exponents, Exponents> natural_content(const Dims& d, const Monomial& mono) {
  auto [rows, cols] = set_content(d, mono.z);
  for (int i = 0; i < d.e; ++i) rows[i] += mono.a[i];
  for (int j = 0; j < d.g; ++j) cols[j] += mono.b[j];
  return {rows, cols};
}

}  // namespace segre
