#include "segre/chessboard.hpp"

#include <map>

#include "segre/errors.hpp"

namespace segre {

namespace {

void check_caps(const Dims& d, const Exponents& rowcap,
                const Exponents& colcap) {
  if ((int)rowcap.size() != d.e || (int)colcap.size() != d.g)
    throw OutOfRange("chessboard: cap vectors must have lengths e and g");
  for (int v : rowcap)
    if (v < 0) throw OutOfRange("chessboard: negative row cap");
  for (int v : colcap)
    if (v < 0) throw OutOfRange("chessboard: negative column cap");
}

std::vector<PairSet> faces_of_size(const Dims& d, const Exponents& rowcap,
                                   const Exponents& colcap, int k) {
  std::vector<PairSet> out;
  if (k < 0 || k > d.grid()) return out;
  for (const auto& z : subsets(d.grid(), k)) {
    auto [rows, cols] = set_content(d, z);
    bool ok = true;
    for (int i = 0; i < d.e && ok; ++i) ok = rows[i] <= rowcap[i];
    for (int j = 0; j < d.g && ok; ++j) ok = cols[j] <= colcap[j];
    if (ok) out.push_back(z);
  }
  return out;
}

SparseExactMatrix boundary(const std::vector<PairSet>& from,
                           const std::vector<PairSet>& to) {
  std::map<PairSet, long> index;
  for (long i = 0; i < (long)to.size(); ++i) index[to[i]] = i;
  SparseExactMatrix out((long)to.size(), (long)from.size());
  for (long c = 0; c < (long)from.size(); ++c) {
    std::map<long, Int> col;
    PairSet sub(from[c].size() - 1);
    for (std::size_t t = 0; t < from[c].size(); ++t) {
      std::size_t w = 0;
      for (std::size_t u = 0; u < from[c].size(); ++u)
        if (u != t) sub[w++] = from[c][u];
      col[index.at(sub)] += (t % 2 == 0) ? 1 : -1;
    }
    out.set_column(c, col);
  }
  return out;
}

}  // namespace

std::vector<long> chessboard_f_vector(const Dims& d, const Exponents& rowcap,
                                      const Exponents& colcap) {
  check_caps(d, rowcap, colcap);
  std::vector<long> out{1};
  for (int k = 1; k <= d.grid(); ++k) {
    long count = (long)faces_of_size(d, rowcap, colcap, k).size();
    if (count == 0) break;
    out.push_back(count);
  }
  return out;
}

AbelianGroupInvariants chessboard_homology(const Dims& d,
                                           const Exponents& rowcap,
                                           const Exponents& colcap, int degree,
                                           Ring ring) {
  check_caps(d, rowcap, colcap);
  ring.check_valid();
  auto mid = faces_of_size(d, rowcap, colcap, degree + 1);
  if (mid.empty()) return {};
  auto above = faces_of_size(d, rowcap, colcap, degree + 2);
  auto below = faces_of_size(d, rowcap, colcap, degree);
  SparseExactMatrix d_in =
      above.empty() ? SparseExactMatrix((long)mid.size(), 0)
                    : boundary(above, mid);
  SparseExactMatrix d_out =
      (degree >= 0 && below.empty())
          ? SparseExactMatrix(0, (long)mid.size())
          : (degree < 0 ? SparseExactMatrix(0, (long)mid.size())
                        : boundary(mid, below));
  return homology_pair(d_in, d_out, ring);
}

}  // namespace segre
