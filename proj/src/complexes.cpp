#include "segre/complexes.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "segre/errors.hpp"

namespace segre {

namespace {

// Value of the pairing on a matched exterior pair of degree p.
Int eps_pairing(int p) {
  int r = ((p % 4) + 4) % 4;
  return (r == 2 || r == 3) ? Int(-1) : Int(1);
}

std::vector<int> all_rows(const Dims& d) {
  std::vector<int> out(d.e);
  for (int k = 1; k <= d.e; ++k) out[k - 1] = k;
  return out;
}

std::vector<int> all_cols(const Dims& d) {
  std::vector<int> out(d.g);
  for (int l = 1; l <= d.g; ++l) out[l - 1] = l;
  return out;
}

ExtElement wedge_set(const ExtElement& a, const PairSet& z) {
  if (z.empty()) return a;
  ExtElement out;
  PairSet merged;
  for (const auto& [za, c] : a) {
    int sgn = wedge_merge(za, z, merged);
    if (sgn != 0) add_term(out, merged, sgn > 0 ? c : -c);
  }
  return out;
}

// Scalar value of a top-degree element against the dual top form. With the
// normalization used by evaluate_top the full grid set evaluates to +1, so
// the value is the coefficient of the full set, the only set of its degree.
Int top_value(const Dims& d, const ExtElement& x) {
  if (x.empty()) return 0;
  if ((int)x.begin()->first.size() != d.grid())
    throw DegreeMismatch("top_value: element does not have top degree");
  return x.begin()->second;
}

Exponents complement_to(int value, const Exponents& c) {
  Exponents out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = value - c[i];
  return out;
}

// Rows of a target module grouped by bidegree, to skip the evaluations that
// vanish for content reasons.
std::map<StrandKey, std::vector<long>> rows_by_content(const Dims& d, Kind k,
                                                       TriDegree t) {
  std::map<StrandKey, std::vector<long>> out;
  const auto& basis = module_basis(d, k, t);
  for (long i = 0; i < (long)basis.size(); ++i)
    out[natural_content(d, basis[i])].push_back(i);
  return out;
}

}  // namespace

Int eval_M(const Dims& d, int m, const Monomial& t, const Monomial& tp) {
  if (m < 0 || m + 1 > d.g) return 0;
  Exponents ty;
  if (!tau(m + 1, tp.b, t.b, ty)) return 0;
  ExtElement acc = bowtie_ED(d, all_rows(d), ty);
  acc = wedge_set(acc, tp.z);
  if (acc.empty()) return 0;
  acc = wedge_set(acc, t.z);
  if (acc.empty()) return 0;
  acc = wedge(acc, bowtie_DE(d, t.a, y_minus(d, m)));
  if (acc.empty()) return 0;
  acc = wedge(acc, bowtie_DE(d, tp.a, y_plus(d, m + 2)));
  return top_value(d, acc);
}

Int eval_N(const Dims& d, int m, const Monomial& t, const Monomial& tp) {
  if (m < 0 || m + 2 > d.g) return 0;
  Exponents ty;
  if (!tau(m + 1, tp.b, t.b, ty)) return 0;
  // Contracting the last column out of y_{m+2} ^ ... ^ y_g hits the final
  // factor, leaving columns m+2 .. g-1 with sign (-1)^(g-m).
  std::vector<int> cols;
  for (int l = m + 2; l <= d.g - 1; ++l) cols.push_back(l);
  ExtElement acc = bowtie_ED(d, all_rows(d), ty);
  acc = wedge_set(acc, tp.z);
  if (acc.empty()) return 0;
  acc = wedge_set(acc, t.z);
  if (acc.empty()) return 0;
  acc = wedge(acc, bowtie_DE(d, t.a, y_minus(d, m)));
  if (acc.empty()) return 0;
  acc = wedge(acc, bowtie_DE(d, tp.a, cols));
  Int val = top_value(d, acc);
  if (val == 0) return val;
  int sign = ((d.g - m) % 2 == 0) ? 1 : -1;
  if ((m + (int)t.z.size()) % 2 != 0) sign = -sign;
  return sign < 0 ? Int(-val) : val;
}

SparseExactMatrix matrix_D(const Dims& d, TriDegree t) {
  TriDegree tt{t.m - 1, t.n - 1, t.p + 1};
  const auto& src = module_basis(d, Kind::M, t);
  SparseExactMatrix out(module_dim(d, tt), module_dim(d, t));
  if (out.rows() == 0) return out;
  for (long c = 0; c < (long)src.size(); ++c) {
    std::map<long, Int> col;
    for (const auto& [mono, coef] : apply_D(d, src[c]))
      col[basis_index(d, Kind::M, tt, mono)] = coef;
    out.set_column(c, col);
  }
  return out;
}

SparseExactMatrix matrix_K(const Dims& d, TriDegree t) {
  TriDegree tt{t.m + 1, t.n + 1, t.p - 1};
  const auto& src = module_basis(d, Kind::N, t);
  SparseExactMatrix out(module_dim(d, tt), module_dim(d, t));
  if (out.rows() == 0) return out;
  for (long c = 0; c < (long)src.size(); ++c) {
    std::map<long, Int> col;
    for (const auto& [mono, coef] : apply_K(d, src[c]))
      col[basis_index(d, Kind::N, tt, mono)] = coef;
    out.set_column(c, col);
  }
  return out;
}

SparseExactMatrix matrix_M(const Dims& d, TriDegree t) {
  TriDegree tt{d.g - 1 - t.m, d.e - 1 - t.n, d.alpha() - t.p};
  const auto& src = module_basis(d, Kind::M, t);
  const auto& dst = module_basis(d, Kind::N, tt);
  SparseExactMatrix out((long)dst.size(), (long)src.size());
  if (out.rows() == 0 || out.cols() == 0) return out;
  auto ix = rows_by_content(d, Kind::N, tt);
  Int norm = eps_pairing(tt.p);
  for (long c = 0; c < (long)src.size(); ++c) {
    const Monomial& T = src[c];
    auto [cu, cy] = natural_content(d, T);
    StrandKey want{complement_to(d.g - 1, cu), complement_to(d.e - 1, cy)};
    auto it = ix.find(want);
    if (it == ix.end()) continue;
    std::map<long, Int> col;
    for (long r : it->second) {
      Int v = eval_M(d, t.m, T, dst[r]);
      if (v != 0) col[r] = norm * v;
    }
    out.set_column(c, col);
  }
  return out;
}

SparseExactMatrix matrix_N_map(const Dims& d, TriDegree t) {
  TriDegree tt{d.g - 2 - t.m, d.e - 1 - t.n, d.alpha() + 1 - t.p};
  const auto& src = module_basis(d, Kind::M, t);
  const auto& dst = module_basis(d, Kind::N, tt);
  SparseExactMatrix out((long)dst.size(), (long)src.size());
  if (out.rows() == 0 || out.cols() == 0) return out;
  auto ix = rows_by_content(d, Kind::N, tt);
  Int norm = eps_pairing(tt.p);
  for (long c = 0; c < (long)src.size(); ++c) {
    const Monomial& T = src[c];
    auto [cu, cy] = natural_content(d, T);
    Exponents wy = complement_to(d.e - 1, cy);
    wy[d.g - 1] += 1;
    StrandKey want{complement_to(d.g - 1, cu), wy};
    auto it = ix.find(want);
    if (it == ix.end()) continue;
    std::map<long, Int> col;
    for (long r : it->second) {
      Int v = eval_N(d, t.m, T, dst[r]);
      if (v != 0) col[r] = norm * v;
    }
    out.set_column(c, col);
  }
  return out;
}

SparseExactMatrix matrix_x_contract(const Dims& d, TriDegree t) {
  TriDegree tt{t.m, t.n - 1, t.p};
  const auto& src = module_basis(d, Kind::M, t);
  SparseExactMatrix out(module_dim(d, tt), module_dim(d, t));
  if (out.rows() == 0) return out;
  for (long c = 0; c < (long)src.size(); ++c) {
    Monomial mono = src[c];
    if (!contract_divided(d.g, mono.b)) continue;
    out.set(basis_index(d, Kind::M, tt, mono), c, 1);
  }
  return out;
}

SparseExactMatrix matrix_x_multiply(const Dims& d, TriDegree t) {
  TriDegree tt{t.m, t.n + 1, t.p};
  const auto& src = module_basis(d, Kind::N, t);
  SparseExactMatrix out(module_dim(d, tt), module_dim(d, t));
  if (out.rows() == 0) return out;
  for (long c = 0; c < (long)src.size(); ++c) {
    Monomial mono = src[c];
    sym_multiply(d.g, mono.b);
    out.set(basis_index(d, Kind::N, tt, mono), c, 1);
  }
  return out;
}

namespace {

// Image of a test monomial under the corner map into the bare exterior power.
ExtElement gamma_image(const Dims& d, GammaVariant v, const Monomial& t) {
  if (v == GammaVariant::ZeroE)
    return wedge_set(bowtie_ED(d, all_rows(d), t.b), t.z);
  return wedge_set(bowtie_DE(d, t.a, all_cols(d)), t.z);
}

}  // namespace

SparseExactMatrix matrix_gamma(const Dims& d, GammaVariant v, int p) {
  TriDegree t = (v == GammaVariant::ZeroE) ? TriDegree{0, d.e, p}
                                           : TriDegree{d.g, 0, p};
  int pb = (v == GammaVariant::ZeroE) ? d.e + p : d.g + p;
  const auto& src = module_basis(d, Kind::M, t);
  const auto& sets = subsets(d.grid(), pb);
  std::map<PairSet, long> set_index;
  for (long i = 0; i < (long)sets.size(); ++i) set_index[sets[i]] = i;
  SparseExactMatrix out((long)sets.size(), (long)src.size());
  if (out.rows() == 0 || out.cols() == 0) return out;
  for (long c = 0; c < (long)src.size(); ++c) {
    std::map<long, Int> col;
    for (const auto& [z, coef] : gamma_image(d, v, src[c]))
      col[set_index.at(z)] = coef;
    out.set_column(c, col);
  }
  return out;
}

SparseExactMatrix matrix_Gamma(const Dims& d, GammaVariant v, int p) {
  TriDegree tt = (v == GammaVariant::ZeroE)
                     ? TriDegree{0, d.e, d.grid() - d.e - p}
                     : TriDegree{d.g, 0, d.grid() - d.g - p};
  const auto& sets = subsets(d.grid(), p);
  const auto& dst = module_basis(d, Kind::N, tt);
  SparseExactMatrix out((long)dst.size(), (long)sets.size());
  if (out.rows() == 0 || out.cols() == 0) return out;
  auto ix = rows_by_content(d, Kind::N, tt);
  Int norm = eps_pairing(tt.p);
  for (long c = 0; c < (long)sets.size(); ++c) {
    auto [br, bc] = set_content(d, sets[c]);
    StrandKey want = (v == GammaVariant::ZeroE)
                         ? StrandKey{complement_to(d.g - 1, br),
                                     complement_to(d.e, bc)}
                         : StrandKey{complement_to(d.g, br),
                                     complement_to(d.e - 1, bc)};
    auto it = ix.find(want);
    if (it == ix.end()) continue;
    std::map<long, Int> col;
    for (long r : it->second) {
      ExtElement img = wedge_set(gamma_image(d, v, dst[r]), sets[c]);
      Int val = top_value(d, img);
      if (val != 0) col[r] = norm * val;
    }
    out.set_column(c, col);
  }
  return out;
}

SparseExactMatrix matrix_nu(const Dims& d, int s) {
  TriDegree t{d.g - 1, 0, d.alpha() - s};
  int pb = d.grid() - d.e - s;
  const auto& src = module_basis(d, Kind::M, t);
  const auto& sets = subsets(d.grid(), pb);
  std::map<PairSet, long> set_index;
  for (long i = 0; i < (long)sets.size(); ++i) set_index[sets[i]] = i;
  SparseExactMatrix out((long)sets.size(), (long)src.size());
  if (out.rows() == 0 || out.cols() == 0) return out;
  for (long c = 0; c < (long)src.size(); ++c) {
    const Monomial& T = src[c];
    ExtElement img =
        wedge(ExtElement{{T.z, Int(1)}}, bowtie_DE(d, T.a, y_minus(d, d.g - 1)));
    std::map<long, Int> col;
    for (const auto& [z, coef] : img) col[set_index.at(z)] = coef;
    out.set_column(c, col);
  }
  return out;
}

long ChainComplex::dim_at(int i) const {
  auto it = slots.find(i);
  if (it == slots.end()) return 0;
  long total = 0;
  for (const auto& sl : it->second) total += sl.dim;
  return total;
}

int ChainComplex::lo() const { return slots.empty() ? 0 : slots.begin()->first; }

int ChainComplex::hi() const {
  return slots.empty() ? -1 : slots.rbegin()->first;
}

long ChainComplex::total_dim() const {
  long total = 0;
  for (const auto& [i, _] : slots) total += dim_at(i);
  return total;
}

SparseExactMatrix ChainComplex::differential(int i) const {
  auto it = diffs.find(i);
  if (it != diffs.end()) return it->second;
  return SparseExactMatrix(dim_at(i - 1), dim_at(i));
}

ComplexReport verify_complex(const ChainComplex& c) {
  ComplexReport rep;
  if (c.slots.empty()) return rep;
  for (const auto& [i, mat] : c.diffs) {
    if (mat.rows() != c.dim_at(i - 1) || mat.cols() != c.dim_at(i)) {
      rep.ok = false;
      rep.failures.push_back(c.label + ": d[" + std::to_string(i) +
                             "] has the wrong shape");
    }
  }
  if (!rep.ok) return rep;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    auto prod = c.differential(i).multiply(c.differential(i + 1));
    if (!prod.is_zero()) {
      rep.ok = false;
      rep.failures.push_back(c.label + ": d[" + std::to_string(i) + "] * d[" +
                             std::to_string(i + 1) + "] != 0");
    }
  }
  return rep;
}

SparseExactMatrix ChainMap::map_at(int i) const {
  auto it = maps.find(i);
  if (it != maps.end()) return it->second;
  return SparseExactMatrix(target.dim_at(i), source.dim_at(i));
}

ComplexReport verify_chain_map(const ChainMap& f) {
  ComplexReport rep;
  int lo = std::min(f.source.lo(), f.target.lo());
  int hi = std::max(f.source.hi(), f.target.hi());
  for (int i = lo; i <= hi + 1; ++i) {
    auto lhs = f.target.differential(i).multiply(f.map_at(i));
    auto rhs = f.map_at(i - 1).multiply(f.source.differential(i));
    if (!(lhs == rhs)) {
      rep.ok = false;
      rep.failures.push_back(f.label + ": square at position " +
                             std::to_string(i) + " does not commute");
    }
  }
  return rep;
}

ChainComplex build_N_complex(const Dims& d, int P, int Q) {
  ChainComplex c;
  c.dims = d;
  c.label = "N(" + std::to_string(P) + "," + std::to_string(Q) + ")";
  if (P < 0 || Q < 0) return c;
  int top = std::min({P, Q, d.grid()});
  for (int i = 0; i <= top; ++i) {
    TriDegree t{P - i, Q - i, i};
    c.slots[i] = {Slot{Family::Sym, t, module_dim(d, t)}};
    auto& kv = c.keys[i];
    for (const auto& mono : module_basis(d, Kind::N, t))
      kv.push_back(natural_content(d, mono));
    if (i >= 1) c.diffs[i] = matrix_K(d, t);
  }
  return c;
}

ChainComplex build_M_complex(const Dims& d, int P, int Q) {
  ChainComplex c;
  c.dims = d;
  c.label = "M(" + std::to_string(P) + "," + std::to_string(Q) + ")";
  if (P < 0 || Q < 0) return c;
  int top = std::min({P, Q, d.grid()});
  for (int j = 0; j <= top; ++j) {
    TriDegree t{P - j, Q - j, j};
    int pos = P + Q + 1 - j;
    c.slots[pos] = {Slot{Family::Div, t, module_dim(d, t)}};
    auto& kv = c.keys[pos];
    for (const auto& mono : module_basis(d, Kind::M, t))
      kv.push_back(natural_content(d, mono));
    if (j + 1 <= top) c.diffs[pos] = matrix_D(d, t);
  }
  return c;
}

namespace {

struct CSlot {
  Family fam;
  TriDegree tri;
};

long cslot_dim(const Dims& d, const CSlot& s) {
  if (s.fam == Family::Grid) return binomial(d.grid(), s.tri.p);
  return module_dim(d, s.tri);
}

std::vector<CSlot> c_slots_at(const Dims& d, int r, int s, int i) {
  std::vector<CSlot> out;
  const int alpha = d.alpha();
  TriDegree mt{d.g + i - s - 2, r + i - s - 2, alpha - i + 1};
  if (!module_zero(d, mt)) out.push_back({Family::Div, mt});
  if (r == 0 && i == s + 1) {
    int pb = d.grid() - d.e - s;
    if (0 <= pb && pb <= d.grid()) out.push_back({Family::Grid, {0, 0, pb}});
  }
  if (r == d.e + d.g && i == s - d.g + 1) {
    int pb = d.grid() - s;
    if (0 <= pb && pb <= d.grid()) out.push_back({Family::Grid, {0, 0, pb}});
  }
  TriDegree nt{s - i, d.e + s - r - i, i};
  if (!module_zero(d, nt)) out.push_back({Family::Sym, nt});
  return out;
}

void append_cslot_keys(const Dims& d, int r, const CSlot& cs,
                       std::vector<StrandKey>& kv) {
  if (cs.fam == Family::Sym) {
    for (const auto& mono : module_basis(d, Kind::N, cs.tri))
      kv.push_back(natural_content(d, mono));
  } else if (cs.fam == Family::Div) {
    for (const auto& mono : module_basis(d, Kind::M, cs.tri)) {
      auto [cu, cy] = natural_content(d, mono);
      kv.push_back({complement_to(d.g - 1, cu), complement_to(d.e - 1, cy)});
    }
  } else {
    for (const auto& z : subsets(d.grid(), cs.tri.p)) {
      auto [br, bc] = set_content(d, z);
      if (r == 0)
        kv.push_back({complement_to(d.g - 1, br), complement_to(d.e, bc)});
      else
        kv.push_back({complement_to(d.g, br), complement_to(d.e - 1, bc)});
    }
  }
}

// Block of the differential from src to tgt, when the structure maps
// connect them.
bool structure_block(const Dims& d, const CSlot& src, const CSlot& tgt,
                     SparseExactMatrix& block) {
  const int alpha = d.alpha();
  if (src.fam == Family::Div && tgt.fam == Family::Div) {
    if (tgt.tri == TriDegree{src.tri.m - 1, src.tri.n - 1, src.tri.p + 1}) {
      block = matrix_D(d, src.tri);
      return true;
    }
    return false;
  }
  if (src.fam == Family::Div && tgt.fam == Family::Sym) {
    if (tgt.tri ==
        TriDegree{d.g - 1 - src.tri.m, d.e - 1 - src.tri.n, alpha - src.tri.p}) {
      block = matrix_M(d, src.tri);
      return true;
    }
    return false;
  }
  if (src.fam == Family::Div && tgt.fam == Family::Grid) {
    if (src.tri.m == 0 && src.tri.n == d.e &&
        tgt.tri.p == d.e + src.tri.p) {
      block = matrix_gamma(d, GammaVariant::ZeroE, src.tri.p);
      return true;
    }
    if (src.tri.m == d.g && src.tri.n == 0 &&
        tgt.tri.p == d.g + src.tri.p) {
      block = matrix_gamma(d, GammaVariant::GZero, src.tri.p);
      return true;
    }
    return false;
  }
  if (src.fam == Family::Grid && tgt.fam == Family::Sym) {
    if (tgt.tri == TriDegree{0, d.e, d.grid() - d.e - src.tri.p}) {
      block = matrix_Gamma(d, GammaVariant::ZeroE, src.tri.p);
      return true;
    }
    if (tgt.tri == TriDegree{d.g, 0, d.grid() - d.g - src.tri.p}) {
      block = matrix_Gamma(d, GammaVariant::GZero, src.tri.p);
      return true;
    }
    return false;
  }
  if (src.fam == Family::Sym && tgt.fam == Family::Sym) {
    if (tgt.tri == TriDegree{src.tri.m + 1, src.tri.n + 1, src.tri.p - 1}) {
      block = matrix_K(d, src.tri);
      return true;
    }
    return false;
  }
  return false;
}

void copy_block(SparseExactMatrix& into, const SparseExactMatrix& block,
                long roff, long coff, bool negate = false) {
  for (long c = 0; c < block.cols(); ++c)
    for (const auto& [r, v] : block.column(c))
      into.add(roff + r, coff + c, negate ? Int(-v) : v);
}

}  // namespace

ChainComplex build_C(const Dims& d, int r, int s, bool negate_first_M) {
  if (r < 0 || r > d.e + d.g)
    throw OutOfRange("spliced complex: r must lie in [0, e+g]");
  ChainComplex c;
  c.dims = d;
  c.label = "C(" + std::to_string(r) + "," + std::to_string(s) + ")";
  const int alpha = d.alpha();
  int wlo = std::min({0, alpha + 1 - d.grid(), s - d.g + 1}) - 1;
  int whi = std::max({alpha + 1, s + 1, 0}) + 1;

  std::map<int, std::vector<CSlot>> layout;
  for (int i = wlo; i <= whi; ++i) {
    auto sl = c_slots_at(d, r, s, i);
    if (sl.empty()) continue;
    layout[i] = sl;
    auto& slots = c.slots[i];
    auto& kv = c.keys[i];
    for (const auto& cs : sl) {
      slots.push_back({cs.fam, cs.tri, cslot_dim(d, cs)});
      append_cslot_keys(d, r, cs, kv);
    }
  }

  // Lowest position whose duality block is nonzero, for the sign-flip
  // control.
  int flip_at = whi + 1;
  if (negate_first_M) {
    for (const auto& [i, sl] : layout) {
      if (flip_at <= whi) break;
      if (layout.count(i - 1) == 0) continue;
      for (const auto& src : sl)
        for (const auto& tgt : layout[i - 1])
          if (src.fam == Family::Div && tgt.fam == Family::Sym) {
            SparseExactMatrix block;
            if (structure_block(d, src, tgt, block) && block.nnz() > 0) {
              flip_at = i;
              break;
            }
          }
    }
  }

  for (const auto& [i, sl] : layout) {
    if (layout.count(i - 1) == 0) continue;
    const auto& tl = layout[i - 1];
    SparseExactMatrix dmat(c.dim_at(i - 1), c.dim_at(i));
    long coff = 0;
    for (const auto& src : sl) {
      long roff = 0;
      for (const auto& tgt : tl) {
        SparseExactMatrix block;
        if (structure_block(d, src, tgt, block)) {
          bool neg = negate_first_M && i == flip_at &&
                     src.fam == Family::Div && tgt.fam == Family::Sym;
          copy_block(dmat, block, roff, coff, neg);
        }
        roff += cslot_dim(d, tgt);
      }
      coff += cslot_dim(d, src);
    }
    c.diffs[i] = dmat;
  }
  return c;
}

namespace {

bool psi_block(const Dims& d, int r, int s, const CSlot& src, const CSlot& tgt,
               int eps, SparseExactMatrix& out) {
  const int alpha = d.alpha();
  if (src.fam == Family::Div && tgt.fam == Family::Div) {
    if (tgt.tri == TriDegree{src.tri.m, src.tri.n - 1, src.tri.p}) {
      out = matrix_x_contract(d, src.tri);
      if (eps < 0) out.negate_in_place();
      return true;
    }
    return false;
  }
  if (src.fam == Family::Div && tgt.fam == Family::Sym && r >= 2) {
    if (tgt.tri == TriDegree{d.g - 2 - src.tri.m, d.e - 1 - src.tri.n,
                             alpha + 1 - src.tri.p}) {
      out = matrix_N_map(d, src.tri);
      return true;
    }
    return false;
  }
  if (src.fam == Family::Div && tgt.fam == Family::Grid && r == 1) {
    if (src.tri == TriDegree{d.g - 1, 0, alpha - s} &&
        tgt.tri.p == d.grid() - d.e - s) {
      out = matrix_nu(d, s);
      return true;
    }
    return false;
  }
  if (src.fam == Family::Sym && tgt.fam == Family::Sym) {
    if (tgt.tri == TriDegree{src.tri.m, src.tri.n + 1, src.tri.p}) {
      out = matrix_x_multiply(d, src.tri);
      return true;
    }
    return false;
  }
  return false;
}

}  // namespace

ChainMap build_psi(const Dims& d, int r, int s) {
  if (r < 1 || r > d.e + d.g - 1)
    throw OutOfRange("comparison map: r must lie in [1, e+g-1]");
  ChainMap f;
  f.label = "psi(" + std::to_string(r) + "," + std::to_string(s) + ")";
  f.source = build_C(d, r, s);
  f.target = build_C(d, r - 1, s);

  auto slots_of = [&](const ChainComplex& c, int i) {
    std::vector<CSlot> out;
    auto it = c.slots.find(i);
    if (it == c.slots.end()) return out;
    for (const auto& sl : it->second) out.push_back({sl.family, sl.tri});
    return out;
  };

  auto assemble = [&](int eps) {
    std::map<int, SparseExactMatrix> maps;
    for (const auto& [i, _] : f.source.slots) {
      if (!f.target.has_position(i)) continue;
      auto ssl = slots_of(f.source, i);
      auto tsl = slots_of(f.target, i);
      SparseExactMatrix m(f.target.dim_at(i), f.source.dim_at(i));
      long coff = 0;
      for (const auto& src : ssl) {
        long roff = 0;
        for (const auto& tgt : tsl) {
          SparseExactMatrix block;
          if (psi_block(d, r, s, src, tgt, eps, block))
            copy_block(m, block, roff, coff);
          roff += cslot_dim(d, tgt);
        }
        coff += cslot_dim(d, src);
      }
      maps[i] = m;
    }
    return maps;
  };

  f.maps = assemble(1);
  f.resolved_sign = 1;
  if (r == 1 && !verify_chain_map(f).ok) {
    f.maps = assemble(-1);
    f.resolved_sign = -1;
    if (!verify_chain_map(f).ok)
      throw std::logic_error(
          "comparison map: neither sign of the contraction blocks commutes");
  }
  return f;
}

ModElement build_zeta(const Dims& d) {
  ModElement out;
  std::vector<int> seq(d.e > 0 ? d.e - 1 : 0);
  // Enumerates nondecreasing sequences 1 <= i_1 <= ... <= i_{e-1} <= g and
  // emits one term per sequence.
  auto emit = [&]() {
    Exponents a(d.e, 0), b(d.g, 0);
    PairSet stair;
    long total = 0;
    int prev = 1;
    for (int t = 1; t <= d.e; ++t) {
      int cur = (t < d.e) ? seq[t - 1] : d.g;
      a[t - 1] = cur - prev;
      for (int w = prev; w <= cur; ++w) stair.push_back(pair_code(d, t, w));
      prev = cur;
    }
    for (int v : seq) {
      b[v - 1] += 1;
      total += v;
    }
    auto [sgn, comp] = evaluate_top(d, stair);
    int sign = (total % 2 == 0) ? sgn : -sgn;
    add_term(out, Monomial{a, b, comp}, Int(sign));
  };
  auto rec = [&](auto&& self, int k, int lo) -> void {
    if (k == (int)seq.size()) {
      emit();
      return;
    }
    for (int v = lo; v <= d.g; ++v) {
      seq[k] = v;
      self(self, k + 1, v);
    }
  };
  rec(rec, 0, 1);
  return out;
}

Int apply_M_top(const Dims& d, const ModElement& x) {
  Monomial unit{Exponents(d.e, 0), Exponents(d.g, 0), {}};
  Int acc = 0;
  for (const auto& [mono, c] : x) acc += c * eval_M(d, d.g - 1, mono, unit);
  return acc;
}

ModElement apply_D_element(const Dims& d, const ModElement& x) {
  ModElement out;
  for (const auto& [mono, c] : x)
    for (const auto& [m2, c2] : apply_D(d, mono)) add_term(out, m2, c * c2);
  return out;
}

}  // namespace segre
