#include "segre/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>

namespace segre {

std::string Ring::name() const {
  switch (kind) {
    case Z: return "Z";
    case Q: return "Q";
    case GF: return "GF(" + std::to_string(p) + ")";
  }
  return "?";
}

void Ring::check_valid() const {
  if (kind != GF) return;
  Int m(static_cast<unsigned long>(p));
  if (p < 2 || mpz_probab_prime_p(m.get_mpz_t(), 30) == 0)
    throw NotPrime("modulus " + std::to_string(p) + " is not prime");
}

Ring parse_ring(const std::string& text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::tolower(c));
  if (t == "z" || t == "int" || t == "integers") return Ring::integers();
  if (t == "q" || t == "rational" || t == "rationals") return Ring::rationals();
  if (t.rfind("gf", 0) == 0) {
    std::string num = t.substr(2);
    if (!num.empty() && (num[0] == ':' || num[0] == '(')) num = num.substr(1);
    if (!num.empty() && num.back() == ')') num.pop_back();
    if (!num.empty() && num.find_first_not_of("0123456789") == std::string::npos) {
      Ring r = Ring::gf(std::strtoull(num.c_str(), nullptr, 10));
      r.check_valid();
      return r;
    }
  }
  throw OutOfRange("unrecognized ring '" + text + "' (expected z, q or gf<p>)");
}

std::string AbelianGroupInvariants::str() const {
  if (trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const Int& d : torsion) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

SparseExactMatrix::SparseExactMatrix(long rows, long cols, Ring ring)
    : rows_(rows), cols_(cols), ring_(ring), cols_data_(cols) {}

long SparseExactMatrix::nnz() const {
  long n = 0;
  for (const auto& col : cols_data_) n += static_cast<long>(col.size());
  return n;
}

Int SparseExactMatrix::canon(const Int& v) const {
  if (ring_.kind != Ring::GF) return v;
  Int m(static_cast<unsigned long>(ring_.p)), r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

void SparseExactMatrix::add(long r, long c, const Int& v) {
  Column& col = cols_data_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& e, long row) { return e.first < row; });
  if (it != col.end() && it->first == r) {
    it->second = canon(it->second + v);
    if (it->second == 0) col.erase(it);
  } else {
    Int cv = canon(v);
    if (cv != 0) col.insert(it, {r, cv});
  }
}

void SparseExactMatrix::set(long r, long c, const Int& v) {
  Column& col = cols_data_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& e, long row) { return e.first < row; });
  Int cv = canon(v);
  if (it != col.end() && it->first == r) {
    if (cv == 0)
      col.erase(it);
    else
      it->second = cv;
  } else if (cv != 0) {
    col.insert(it, {r, cv});
  }
}

Int SparseExactMatrix::get(long r, long c) const {
  const Column& col = cols_data_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& e, long row) { return e.first < row; });
  if (it != col.end() && it->first == r) return it->second;
  return 0;
}

void SparseExactMatrix::set_column(long c, const std::map<long, Int>& entries) {
  Column col;
  col.reserve(entries.size());
  for (const auto& [r, v] : entries) {
    Int cv = canon(v);
    if (cv != 0) col.emplace_back(r, cv);
  }
  cols_data_[c] = std::move(col);
}

SparseExactMatrix SparseExactMatrix::transpose() const {
  SparseExactMatrix t(cols_, rows_, ring_);
  std::vector<long> count(rows_, 0);
  for (const auto& col : cols_data_)
    for (const auto& [r, v] : col) count[r]++;
  for (long r = 0; r < rows_; ++r) t.cols_data_[r].reserve(count[r]);
  for (long c = 0; c < cols_; ++c)
    for (const auto& [r, v] : cols_data_[c]) t.cols_data_[r].emplace_back(c, v);
  return t;
}

SparseExactMatrix SparseExactMatrix::multiply(const SparseExactMatrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw DegreeMismatch("matrix product shape mismatch: " + std::to_string(cols_) +
                         " vs " + std::to_string(rhs.rows_));
  SparseExactMatrix out(rows_, rhs.cols_, ring_);
  std::map<long, Int> acc;
  for (long c = 0; c < rhs.cols_; ++c) {
    acc.clear();
    for (const auto& [k, w] : rhs.cols_data_[c])
      for (const auto& [r, v] : cols_data_[k]) acc[r] += v * w;
    out.set_column(c, acc);
  }
  return out;
}

SparseExactMatrix SparseExactMatrix::with_ring(Ring ring) const {
  SparseExactMatrix out(rows_, cols_, ring);
  for (long c = 0; c < cols_; ++c) {
    for (const auto& [r, v] : cols_data_[c]) {
      Int cv = out.canon(v);
      if (cv != 0) out.cols_data_[c].emplace_back(r, cv);
    }
  }
  return out;
}

void SparseExactMatrix::negate_in_place() {
  for (auto& col : cols_data_)
    for (auto& [r, v] : col) v = canon(-v);
}

namespace {

// Row-indexed working form with a per-column index of occupied rows, so both
// row and column operations stay cheap during elimination.
struct ElimState {
  long nrows, ncols;
  std::vector<std::map<long, Int>> row;
  std::vector<std::set<long>> colrows;
  std::vector<char> rowdone, coldone;

  explicit ElimState(const SparseExactMatrix& a)
      : nrows(a.rows()),
        ncols(a.cols()),
        row(a.rows()),
        colrows(a.cols()),
        rowdone(a.rows(), 0),
        coldone(a.cols(), 0) {
    for (long c = 0; c < a.cols(); ++c)
      for (const auto& [r, v] : a.column(c)) {
        row[r][c] = v;
        colrows[c].insert(r);
      }
  }

  void put(long r, long c, const Int& v) {
    if (v == 0) {
      row[r].erase(c);
      colrows[c].erase(r);
    } else {
      row[r][c] = v;
      colrows[c].insert(r);
    }
  }

  // row[r] -= q * row[pr]
  void row_axpy(long r, long pr, const Int& q) {
    if (q == 0) return;
    for (const auto& [c, v] : row[pr]) {
      auto it = row[r].find(c);
      Int nv = (it == row[r].end() ? Int(0) : it->second) - q * v;
      put(r, c, nv);
    }
  }

  // Smallest-|value| pivot among active entries, ties by least fill-in.
  bool find_pivot(long& pr, long& pc) {
    bool found = false;
    Int best_abs;
    long best_fill = 0;
    for (long r = 0; r < nrows; ++r) {
      if (rowdone[r] || row[r].empty()) continue;
      long rn = static_cast<long>(row[r].size());
      for (const auto& [c, v] : row[r]) {
        Int a = abs(v);
        long fill = (rn - 1) * (static_cast<long>(colrows[c].size()) - 1);
        if (!found || a < best_abs || (a == best_abs && fill < best_fill)) {
          found = true;
          best_abs = a;
          best_fill = fill;
          pr = r;
          pc = c;
        }
      }
      if (found && best_abs == 1 && best_fill == 0) return true;
    }
    return found;
  }
};

// Diagonal entries produced by elimination, normalized to the invariant
// factor chain by pairwise gcd/lcm exchanges.
std::vector<Int> chain_from_pivots(std::vector<Int> piv) {
  return divisibility_chain(std::move(piv));
}

long rank_mod_p(const SparseExactMatrix& a, std::uint64_t p) {
  ElimState st(a.with_ring(Ring::gf(p)));
  auto inv_mod = [&](const Int& v) {
    Int m(static_cast<unsigned long>(p)), r;
    mpz_invert(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return r;
  };
  Int mod(static_cast<unsigned long>(p));
  long rank = 0;
  long pr = 0, pc = 0;
  while (st.find_pivot(pr, pc)) {
    Int pinv = inv_mod(st.row[pr][pc]);
    std::vector<long> rows_in_col(st.colrows[pc].begin(), st.colrows[pc].end());
    for (long r : rows_in_col) {
      if (r == pr) continue;
      Int q = st.row[r][pc] * pinv;
      mpz_mod(q.get_mpz_t(), q.get_mpz_t(), mod.get_mpz_t());
      for (const auto& [c, v] : st.row[pr]) {
        auto it = st.row[r].find(c);
        Int nv = (it == st.row[r].end() ? Int(0) : it->second) - q * v;
        mpz_mod(nv.get_mpz_t(), nv.get_mpz_t(), mod.get_mpz_t());
        st.put(r, c, nv);
      }
    }
    for (auto& [c, v] : st.row[pr]) st.colrows[c].erase(pr);
    st.row[pr].clear();
    st.rowdone[pr] = 1;
    st.coldone[pc] = 1;
    ++rank;
  }
  return rank;
}

}  // namespace

std::vector<Int> divisibility_chain(std::vector<Int> factors) {
  for (Int& d : factors) d = abs(d);
  std::vector<Int> units, rest;
  for (Int& d : factors)
    (d == 1 ? units : rest).push_back(d);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < rest.size(); ++i)
      for (size_t j = i + 1; j < rest.size(); ++j) {
        if (rest[j] % rest[i] == 0) continue;
        Int g = gcd(rest[i], rest[j]);
        Int l = rest[i] / g * rest[j];
        rest[i] = g;
        rest[j] = l;
        changed = true;
      }
  }
  std::sort(rest.begin(), rest.end());
  std::vector<Int> out = units;
  out.insert(out.end(), rest.begin(), rest.end());
  // Any unit produced by an exchange sorts to the front of rest already.
  std::sort(out.begin(), out.end());
  return out;
}

SmithResult smith_normal_form(const SparseExactMatrix& a) {
  if (a.ring().kind == Ring::GF)
    throw OutOfRange("smith_normal_form is defined over Z, not " + a.ring().name());
  ElimState st(a);
  std::vector<Int> pivots;
  long pr = 0, pc = 0;
  while (st.find_pivot(pr, pc)) {
    // Reduce until the pivot divides everything in its own row and column;
    // each pass strictly shrinks |pivot|, so this terminates.
    while (true) {
      Int d = st.row[pr][pc];
      // Clear the pivot column, keeping remainders in [0, |d|).
      std::vector<long> rows_in_col(st.colrows[pc].begin(), st.colrows[pc].end());
      for (long r : rows_in_col) {
        if (r == pr) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), st.row[r][pc].get_mpz_t(), d.get_mpz_t());
        st.row_axpy(r, pr, q);
      }
      long next_r = -1;
      Int best;
      for (long r : st.colrows[pc]) {
        if (r == pr) continue;
        Int a_ = abs(st.row[r][pc]);
        if (next_r < 0 || a_ < best) {
          next_r = r;
          best = a_;
        }
      }
      if (next_r >= 0) {
        pr = next_r;
        continue;
      }
      // Column is clear; reduce the pivot row. Column operations against a
      // cleared pivot column touch only the pivot row itself.
      long next_c = -1;
      for (auto it = st.row[pr].begin(); it != st.row[pr].end();) {
        long c = it->first;
        if (c == pc) {
          ++it;
          continue;
        }
        Int q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), it->second.get_mpz_t(),
                    d.get_mpz_t());
        if (rem == 0) {
          st.colrows[c].erase(pr);
          it = st.row[pr].erase(it);
        } else {
          it->second = rem;
          if (next_c < 0 || abs(rem) < abs(st.row[pr][next_c])) next_c = c;
          ++it;
        }
      }
      if (next_c >= 0) {
        pc = next_c;
        continue;
      }
      break;
    }
    pivots.push_back(abs(st.row[pr][pc]));
    st.put(pr, pc, 0);
    st.rowdone[pr] = 1;
    st.coldone[pc] = 1;
  }
  SmithResult res;
  res.factors = chain_from_pivots(std::move(pivots));
  res.rank = static_cast<long>(res.factors.size());
  return res;
}

long rank_over_field(const SparseExactMatrix& a, Ring field) {
  if (!field.is_field())
    throw OutOfRange("rank_over_field requires a field, got " + field.name());
  field.check_valid();
  if (field.kind == Ring::GF) return rank_mod_p(a, field.p);
  // Rank over Q of an integer matrix equals the number of Smith pivots.
  return smith_normal_form(a.with_ring(Ring::integers())).rank;
}

AbelianGroupInvariants homology_pair(const SparseExactMatrix& d_in,
                                     const SparseExactMatrix& d_out,
                                     Ring ring) {
  if (d_in.rows() != d_out.cols())
    throw DegreeMismatch("homology_pair: middle dimensions differ (" +
                         std::to_string(d_in.rows()) + " vs " +
                         std::to_string(d_out.cols()) + ")");
  ring.check_valid();
  long mid = d_in.rows();
  SparseExactMatrix comp =
      d_out.with_ring(ring).multiply(d_in.with_ring(ring));
  if (!comp.is_zero())
    throw CompositionNotZero("d_out * d_in has " + std::to_string(comp.nnz()) +
                             " nonzero entries");
  AbelianGroupInvariants inv;
  if (ring.is_field()) {
    long r_in = rank_over_field(d_in, ring);
    long r_out = rank_over_field(d_out, ring);
    inv.free_rank = mid - r_in - r_out;
    return inv;
  }
  SmithResult s_in = smith_normal_form(d_in);
  long r_out = smith_normal_form(d_out).rank;
  inv.free_rank = mid - s_in.rank - r_out;
  for (const Int& d : s_in.factors)
    if (d > 1) inv.torsion.push_back(d);
  if (inv.free_rank < 0)
    throw std::logic_error("rank bookkeeping produced negative free rank");
  return inv;
}

AbelianGroupInvariants homology_pair(const SparseExactMatrix& d_in,
                                     const SparseExactMatrix& d_out) {
  return homology_pair(d_in, d_out, d_in.ring());
}

AbelianGroupInvariants direct_sum(const AbelianGroupInvariants& a,
                                  const AbelianGroupInvariants& b) {
  AbelianGroupInvariants out;
  out.free_rank = a.free_rank + b.free_rank;
  std::vector<Int> all = a.torsion;
  all.insert(all.end(), b.torsion.begin(), b.torsion.end());
  for (const Int& d : divisibility_chain(std::move(all)))
    if (d > 1) out.torsion.push_back(d);
  return out;
}

}  // namespace segre
