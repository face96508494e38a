#include "segre/schur.hpp"

#include <algorithm>
#include <string>

#include "segre/errors.hpp"

namespace segre {

Partition conjugate(const Partition& p) {
  Partition out;
  if (p.empty()) return out;
  out.resize(p[0], 0);
  for (int part : p)
    for (int j = 0; j < part; ++j) out[j] += 1;
  return out;
}

std::vector<Partition> partitions_in_box(int total, int parts, int size) {
  std::vector<Partition> out;
  if (total < 0) return out;
  if (total == 0) {
    out.push_back({});
    return out;
  }
  if (parts <= 0 || size <= 0) return out;
  Partition cur;
  auto rec = [&](auto&& self, int left, int remaining_parts, int cap) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    if (remaining_parts == 0) return;
    for (int v = std::min(cap, left); v >= 1; --v) {
      cur.push_back(v);
      self(self, left - v, remaining_parts - 1, v);
      cur.pop_back();
    }
  };
  rec(rec, total, parts, size);
  return out;
}

Int schur_dimension(const Partition& lambda, int r) {
  if ((int)lambda.size() > r) return 0;
  if (lambda.empty()) return 1;
  Partition conj = conjugate(lambda);
  Int num = 1, den = 1;
  for (int i = 1; i <= (int)lambda.size(); ++i) {
    for (int j = 1; j <= lambda[i - 1]; ++j) {
      num *= r + j - i;
      den *= (lambda[i - 1] - j) + (conj[j - 1] - i) + 1;
    }
  }
  Int out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

namespace {

// Trims trailing zeros and rejects anything that is not weakly decreasing.
bool normalize_partition(std::vector<int>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1]) return false;
  while (!v.empty() && v.back() == 0) v.pop_back();
  for (int x : v)
    if (x < 0) return false;
  return true;
}

}  // namespace

std::vector<std::pair<Partition, Partition>> tor_partition_pairs(const Dims& d,
                                                                 int ell, int p,
                                                                 int q) {
  std::vector<std::pair<Partition, Partition>> out;
  int s = q + ell - p;
  if (s < 0 || s < ell) return out;
  int rows_l = s + 1 - ell;  // rectangle rows inside lambda
  int rows_m = s + 1;        // rectangle rows inside mu
  long w = (long)(q + ell) - (long)rows_l * s;
  if (w < 0 || w > q + std::abs(ell) + d.grid() * d.grid()) return out;
  for (int aw = 0; aw <= w; ++aw) {
    auto alphas = partitions_in_box(aw, d.e, s);
    auto betas = partitions_in_box((int)w - aw, s - ell, d.g);
    for (const auto& alpha : alphas) {
      for (const auto& beta : betas) {
        std::vector<int> lambda(rows_l, s);
        for (std::size_t i = 0; i < beta.size(); ++i) lambda[i] += beta[i];
        lambda.insert(lambda.end(), alpha.begin(), alpha.end());
        if (!normalize_partition(lambda)) continue;
        if ((int)lambda.size() > d.e) continue;
        Partition ac = conjugate(alpha), bc = conjugate(beta);
        std::vector<int> mu(rows_m, s - ell);
        for (std::size_t i = 0; i < ac.size(); ++i) mu[i] += ac[i];
        mu.insert(mu.end(), bc.begin(), bc.end());
        if (!normalize_partition(mu)) continue;
        if ((int)mu.size() > d.g) continue;
        out.push_back({lambda, mu});
      }
    }
  }
  return out;
}

Int tor_dimension_char0(const Dims& d, int ell, int p, int q) {
  Int total = 0;
  for (const auto& [lambda, mu] : tor_partition_pairs(d, ell, p, q))
    total += schur_dimension(lambda, d.e) * schur_dimension(mu, d.g);
  return total;
}

bool cauchy_identity_check(const Dims& d, int p) {
  int pp = d.grid() - d.e - d.g - p;
  if (p < 0 || pp < 0)
    throw HypothesisViolation(
        "cauchy_identity_check: p must lie in [0, eg - e - g]");
  Int lhs = tor_dimension_char0(d, -d.e, p, p + d.e) +
            tor_dimension_char0(d, d.g, pp, pp);
  return lhs == Int(binomial(d.grid(), d.e + p));
}

ComplexReport oracle_agreement(const Dims& d, int ell, int qmax,
                               EngineOptions opt) {
  ComplexReport rep;
  for (int p = 0; p <= d.grid(); ++p) {
    for (int q = p; q <= qmax; ++q) {
      Int expected = tor_dimension_char0(d, ell, p, q);
      long got = tor_group(d, ell, p, q, Ring::rationals(), opt).free_rank;
      if (expected != Int(got)) {
        rep.ok = false;
        rep.failures.push_back(
            "Tor(" + std::to_string(p) + "," + std::to_string(q) +
            ") with ell=" + std::to_string(ell) + ": engine " +
            std::to_string(got) + ", closed form " + expected.get_str());
      }
    }
  }
  return rep;
}

}  // namespace segre
