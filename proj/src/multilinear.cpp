#include "segre/multilinear.hpp"

#include <algorithm>
#include <numeric>

namespace segre {

void add_term(ExtElement& e, const PairSet& z, const Int& c) {
  if (c == 0) return;
  auto it = e.find(z);
  if (it == e.end()) {
    e.emplace(z, c);
  } else {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

void add_term(ModElement& e, const Monomial& m, const Int& c) {
  if (c == 0) return;
  auto it = e.find(m);
  if (it == e.end()) {
    e.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

int wedge_merge(const PairSet& a, const PairSet& b, PairSet& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  long inversions = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      // b[j] jumps over every remaining factor of a.
      inversions += static_cast<long>(a.size() - i);
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return (inversions % 2 == 0) ? 1 : -1;
}

ExtElement wedge(const ExtElement& a, const ExtElement& b) {
  ExtElement out;
  PairSet merged;
  for (const auto& [za, ca] : a)
    for (const auto& [zb, cb] : b) {
      int s = wedge_merge(za, zb, merged);
      if (s != 0) add_term(out, merged, s * ca * cb);
    }
  return out;
}

ExtElement interior(int code, const ExtElement& z) {
  ExtElement out;
  for (const auto& [zs, c] : z) {
    auto it = std::lower_bound(zs.begin(), zs.end(), code);
    if (it == zs.end() || *it != code) continue;
    long idx = it - zs.begin();
    PairSet rest = zs;
    rest.erase(rest.begin() + idx);
    add_term(out, rest, (idx % 2 == 0) ? c : -c);
  }
  return out;
}

ExtElement interior_set(const PairSet& a, const ExtElement& z) {
  ExtElement cur = z;
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    cur = interior(*it, cur);
    if (cur.empty()) break;
  }
  return cur;
}

std::pair<int, PairSet> evaluate_top(const Dims& d, const PairSet& z) {
  int n = d.grid();
  // Against the full declared-order set the t-th factor of z sits at
  // position (code + 1), so the raw iterated-interior sign is
  // (-1)^(sum of codes); the normalization makes the full set give +1.
  long s = std::accumulate(z.begin(), z.end(), 0L);
  s += static_cast<long>(n) * (n - 1) / 2;
  PairSet comp;
  comp.reserve(n - z.size());
  size_t i = 0;
  for (int c = 0; c < n; ++c) {
    if (i < z.size() && z[i] == c)
      ++i;
    else
      comp.push_back(c);
  }
  return {(s % 2 == 0) ? 1 : -1, comp};
}

ExtElement evaluate_top(const Dims& d, const ExtElement& z) {
  ExtElement out;
  for (const auto& [zs, c] : z) {
    auto [sign, comp] = evaluate_top(d, zs);
    add_term(out, comp, sign * c);
  }
  return out;
}

Int set_pairing(const PairSet& a, const PairSet& z) {
  if (a != z) return 0;
  long p = static_cast<long>(a.size());
  return (p * (p - 1) / 2) % 2 == 0 ? 1 : -1;
}

Int pairing(const Dims& d, const Monomial& sym_side, const Monomial& div_side) {
  (void)d;
  if (sym_side.a.size() != div_side.a.size() ||
      sym_side.b.size() != div_side.b.size() ||
      sym_side.z.size() != div_side.z.size())
    throw DegreeMismatch("pairing: operands have different tridegrees");
  if (sym_side.a != div_side.a || sym_side.b != div_side.b) return 0;
  return set_pairing(sym_side.z, div_side.z);
}

bool contract_divided(int k, Exponents& a) {
  if (a[k - 1] == 0) return false;
  a[k - 1]--;
  return true;
}

void sym_multiply(int k, Exponents& b) { b[k - 1]++; }

namespace {

// Calls f on every word (as slot values) of the given exponent content.
template <class F>
void for_each_word(Exponents content, int len, std::vector<int>& word, F&& f) {
  if (static_cast<int>(word.size()) == len) {
    f(word);
    return;
  }
  for (size_t k = 0; k < content.size(); ++k) {
    if (content[k] == 0) continue;
    content[k]--;
    word.push_back(static_cast<int>(k + 1));
    for_each_word(content, len, word, f);
    word.pop_back();
    content[k]++;
  }
}

// Sorts a list of distinct codes, returning the permutation sign.
int sort_sign(std::vector<int>& codes) {
  int sign = 1;
  for (size_t i = 1; i < codes.size(); ++i)
    for (size_t j = i; j > 0 && codes[j - 1] > codes[j]; --j) {
      std::swap(codes[j - 1], codes[j]);
      sign = -sign;
    }
  return sign;
}

}  // namespace

ExtElement bowtie_DE(const Dims& d, const Exponents& u, const std::vector<int>& cols) {
  long deg = std::accumulate(u.begin(), u.end(), 0L);
  if (deg != static_cast<long>(cols.size()))
    throw DegreeMismatch("bowtie: divided-power degree " + std::to_string(deg) +
                         " vs exterior degree " + std::to_string(cols.size()));
  ExtElement out;
  std::vector<int> word;
  for_each_word(u, static_cast<int>(cols.size()), word, [&](const std::vector<int>& w) {
    std::vector<int> codes(w.size());
    for (size_t t = 0; t < w.size(); ++t) codes[t] = pair_code(d, w[t], cols[t]);
    int s = sort_sign(codes);
    add_term(out, codes, s);
  });
  return out;
}

ExtElement bowtie_ED(const Dims& d, const std::vector<int>& rows, const Exponents& y) {
  long deg = std::accumulate(y.begin(), y.end(), 0L);
  if (deg != static_cast<long>(rows.size()))
    throw DegreeMismatch("bowtie: exterior degree " + std::to_string(rows.size()) +
                         " vs divided-power degree " + std::to_string(deg));
  ExtElement out;
  std::vector<int> word;
  for_each_word(y, static_cast<int>(rows.size()), word, [&](const std::vector<int>& w) {
    std::vector<int> codes(w.size());
    for (size_t t = 0; t < w.size(); ++t) codes[t] = pair_code(d, rows[t], w[t]);
    int s = sort_sign(codes);
    add_term(out, codes, s);
  });
  return out;
}

bool tau(int j, const Exponents& above, const Exponents& below, Exponents& out) {
  int g = static_cast<int>(above.size());
  if (j < 1 || j > g) throw OutOfRange("tau: slot " + std::to_string(j));
  for (int i = j; i < g; ++i)
    if (above[i] != 0) return false;
  for (int i = 0; i < j - 1; ++i)
    if (below[i] != 0) return false;
  out = above;
  out[j - 1] += below[j - 1] + 1;
  for (int i = j; i < g; ++i) out[i] = below[i];
  return true;
}

bool proj_L(const Dims& d, int j, const Exponents& b) {
  if (j < 0 || j > d.g) throw OutOfRange("proj_L: index " + std::to_string(j));
  for (int i = 0; i < j; ++i)
    if (b[i] != 0) return false;
  return true;
}

bool proj_Upsilon(const Dims& d, int j, const Exponents& b) {
  if (j < 1 || j > d.g + 1)
    throw OutOfRange("proj_Upsilon: index " + std::to_string(j));
  for (int i = j - 1; i < d.g; ++i)
    if (b[i] != 0) return false;
  return true;
}

std::vector<int> y_minus(const Dims& d, int j) {
  if (j < 0 || j > d.g) throw OutOfRange("y_minus: index " + std::to_string(j));
  std::vector<int> out(j);
  for (int i = 0; i < j; ++i) out[i] = i + 1;
  return out;
}

std::vector<int> y_plus(const Dims& d, int j) {
  if (j < 1 || j > d.g + 1) throw OutOfRange("y_plus: index " + std::to_string(j));
  std::vector<int> out(d.g - j + 1);
  for (int i = 0; i < static_cast<int>(out.size()); ++i) out[i] = j + i;
  return out;
}

ModElement apply_D(const Dims& d, const Monomial& t) {
  ModElement out;
  PairSet merged;
  for (int k = 1; k <= d.e; ++k) {
    if (t.a[k - 1] == 0) continue;
    for (int l = 1; l <= d.g; ++l) {
      if (t.b[l - 1] == 0) continue;
      PairSet unit{pair_code(d, k, l)};
      int s = wedge_merge(unit, t.z, merged);
      if (s == 0) continue;
      Monomial nt = t;
      nt.a[k - 1]--;
      nt.b[l - 1]--;
      nt.z = merged;
      add_term(out, nt, s);
    }
  }
  return out;
}

ModElement apply_K(const Dims& d, const Monomial& s) {
  ModElement out;
  for (size_t idx = 0; idx < s.z.size(); ++idx) {
    int code = s.z[idx];
    Monomial ns = s;
    ns.a[code_row(d, code) - 1]++;
    ns.b[code_col(d, code) - 1]++;
    ns.z.erase(ns.z.begin() + idx);
    add_term(out, ns, (idx % 2 == 0) ? 1 : -1);
  }
  return out;
}

ModElement apply_linear(ModElement (*f)(const Dims&, const Monomial&),
                        const Dims& d, const ModElement& x) {
  ModElement out;
  for (const auto& [mono, c] : x)
    for (const auto& [m2, c2] : f(d, mono)) add_term(out, m2, c * c2);
  return out;
}

}  // namespace segre
