#include "segre/strands.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "segre/errors.hpp"

namespace segre {

ChainComplex strand_restrict(const ChainComplex& c, const StrandKey& key) {
  ChainComplex out;
  out.dims = c.dims;
  out.label = c.label + " strand";

  std::map<int, std::vector<long>> sel;
  for (const auto& [i, keys] : c.keys) {
    std::vector<long> idx;
    for (long j = 0; j < (long)keys.size(); ++j)
      if (keys[j] == key) idx.push_back(j);
    if (!idx.empty()) sel[i] = std::move(idx);
  }

  for (const auto& [i, idx] : sel) {
    out.slots[i] = {Slot{Family::Sym, {0, 0, 0}, (long)idx.size()}};
    out.keys[i] = std::vector<StrandKey>(idx.size(), key);
  }

  for (const auto& [i, idx] : sel) {
    auto rit = sel.find(i - 1);
    if (rit == sel.end()) continue;
    auto dit = c.diffs.find(i);
    if (dit == c.diffs.end()) continue;
    const auto& rows = rit->second;
    std::map<long, long> row_of;
    for (long j = 0; j < (long)rows.size(); ++j) row_of[rows[j]] = j;
    SparseExactMatrix sub((long)rows.size(), (long)idx.size(),
                          dit->second.ring());
    for (long cc = 0; cc < (long)idx.size(); ++cc)
      for (const auto& [r, v] : dit->second.column(idx[cc])) {
        auto it = row_of.find(r);
        if (it != row_of.end()) sub.add(it->second, cc, v);
      }
    out.diffs[i] = sub;
  }
  return out;
}

std::vector<StrandKey> strand_keys(const ChainComplex& c) {
  std::set<StrandKey> seen;
  for (const auto& [i, keys] : c.keys)
    for (const auto& k : keys) seen.insert(k);
  return {seen.begin(), seen.end()};
}

ComplexReport verify_key_conservation(const ChainComplex& c) {
  ComplexReport rep;
  for (const auto& [i, mat] : c.diffs) {
    auto sit = c.keys.find(i);
    auto tit = c.keys.find(i - 1);
    for (long col = 0; col < mat.cols(); ++col) {
      for (const auto& [row, v] : mat.column(col)) {
        if (tit == c.keys.end() || sit == c.keys.end() ||
            sit->second[col] != tit->second[row]) {
          rep.ok = false;
          rep.failures.push_back(c.label + ": d[" + std::to_string(i) +
                                 "] entry (" + std::to_string(row) + "," +
                                 std::to_string(col) + ") crosses strands");
          if (rep.failures.size() >= 16) return rep;
        }
      }
    }
  }
  return rep;
}

std::vector<Monomial> strand_module_basis(const Dims& d, TriDegree t,
                                          const StrandKey& key) {
  std::vector<Monomial> out;
  if (t.m < 0 || t.n < 0 || t.p < 0 || t.p > d.grid()) return out;
  const auto& [gamma, delta] = key;
  if ((int)gamma.size() != d.e || (int)delta.size() != d.g) return out;
  long gsum = 0, dsum = 0;
  for (int v : gamma) {
    if (v < 0) return out;
    gsum += v;
  }
  for (int v : delta) {
    if (v < 0) return out;
    dsum += v;
  }
  if (gsum != t.m + t.p || dsum != t.n + t.p) return out;
  for (const auto& z : subsets(d.grid(), t.p)) {
    auto [rows, cols] = set_content(d, z);
    bool fits = true;
    for (int k = 0; k < d.e && fits; ++k) fits = rows[k] <= gamma[k];
    for (int l = 0; l < d.g && fits; ++l) fits = cols[l] <= delta[l];
    if (!fits) continue;
    Exponents a(d.e), b(d.g);
    for (int k = 0; k < d.e; ++k) a[k] = gamma[k] - rows[k];
    for (int l = 0; l < d.g; ++l) b[l] = delta[l] - cols[l];
    out.push_back({std::move(a), std::move(b), z});
  }
  return out;
}

SparseExactMatrix strand_matrix(const Dims& d,
                                ModElement (*f)(const Dims&, const Monomial&),
                                const std::vector<Monomial>& src,
                                const std::vector<Monomial>& dst) {
  std::map<Monomial, long> index;
  for (long i = 0; i < (long)dst.size(); ++i) index[dst[i]] = i;
  SparseExactMatrix out((long)dst.size(), (long)src.size());
  for (long c = 0; c < (long)src.size(); ++c) {
    std::map<long, Int> col;
    for (const auto& [mono, coef] : f(d, src[c])) {
      auto it = index.find(mono);
      if (it == index.end())
        throw DegreeMismatch("strand_matrix: image leaves the target basis");
      col[it->second] = coef;
    }
    out.set_column(c, col);
  }
  return out;
}

}  // namespace segre
