#pragma once

// Closed-form dimensions of the characteristic-zero Tor modules, used as an
// oracle against the homology engine. The closed form indexes summands by
// an integer shift and a pair of partitions nested against complementary
// rectangles.

#include <utility>
#include <vector>

#include "segre/homology.hpp"

namespace segre {

// Weakly decreasing, no trailing zeros.
using Partition = std::vector<int>;

Partition conjugate(const Partition& p);

// Partitions of total with at most `parts` parts, each part at most `size`.
std::vector<Partition> partitions_in_box(int total, int parts, int size);

// Dimension of the Schur module S_lambda of a free module of rank r, by the
// hook content formula; zero when lambda has more than r parts.
Int schur_dimension(const Partition& lambda, int r);

// The partition pairs (lambda, mu) whose Schur module product forms
// Tor_{p,q} of the module with parameter ell over a characteristic-zero
// field. The contribution of one pair is
// schur_dimension(lambda, e) * schur_dimension(mu, g).
std::vector<std::pair<Partition, Partition>> tor_partition_pairs(const Dims& d,
                                                                 int ell, int p,
                                                                 int q);

// Characteristic-zero dimension of Tor_{p,q}(M_ell) by the closed form.
Int tor_dimension_char0(const Dims& d, int ell, int p, int q);

// The two closed-form columns at complementary homological degrees must add
// up to an exterior power dimension (the Cauchy formula).
bool cauchy_identity_check(const Dims& d, int p);

// Engine homology over the rationals against the closed form, for all
// p and all q <= qmax.
ComplexReport oracle_agreement(const Dims& d, int ell, int qmax,
                               EngineOptions opt = {});

}  // namespace segre
