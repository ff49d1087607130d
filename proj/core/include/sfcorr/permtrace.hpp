// Copyright 2026 The sfcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SFCORR_PERMTRACE_HPP
#define SFCORR_PERMTRACE_HPP

#include <span>
#include <vector>

#include "sfcorr/matcore.hpp"

namespace sfcorr {

inline constexpr int kMaxSymmetricOrder = 8;

/// Element of S_k. Labels are 0-based: images()[i] is the image of i.
class Permutation {
  public:
    /// Throws OutOfRange unless `images` is a bijection on {0..k-1}.
    explicit Permutation(std::vector<int> images);
    static Permutation identity(int k);

    int k() const noexcept {
        return static_cast<int>(images_.size());
    }
    int operator()(int i) const {
        return images_[static_cast<size_t>(i)];
    }
    const std::vector<int> &images() const noexcept {
        return images_;
    }
    Permutation inverse() const;
    /// (*this o other)(i) = (*this)(other(i))
    Permutation compose(const Permutation &other) const;

    bool operator==(const Permutation &) const = default;

  private:
    std::vector<int> images_;
};

/// Disjoint cycles covering {0..k-1}. Each cycle starts at its smallest label
/// and lists successive images: (l, p(l), p(p(l)), ...). Fixed points are
/// length-1 cycles.
struct CycleDecomposition {
    std::vector<std::vector<int>> cycles;
};

/// All k! permutations in lexicographic order of their image arrays.
/// Throws OutOfRange unless 1 <= k <= 8.
std::vector<Permutation> enumerate_sk(int k);

/// Shared immutable table, built once per k.
const std::vector<Permutation> &symmetric_group(int k);

CycleDecomposition cycle_decompose(const Permutation &p);

/// Tr((A_1 x ... x A_k) V_d(p)) evaluated as a product over cycles c of
/// Tr(A_l A_{p^-1(l)} A_{p^-2(l)} ...), never forming the d^k operator.
/// V_d(p) maps |i_1..i_k> to |i_{p^-1(1)}..i_{p^-1(k)}>.
Complex perm_trace(std::span<const ComplexMatrix> ops, const Permutation &p);

/// Same product, but each cycle's word starts at the label `reference[c]`
/// for cycle index c of cycle_decompose(p). Exposed so that the freedom in
/// the reference element can be tested.
Complex perm_trace_with_references(std::span<const ComplexMatrix> ops, const Permutation &p,
                                   std::span<const int> reference);

/// E_psi[ prod_m <psi|A_m|psi> ] over Haar-random pure states, i.e.
/// <0|^k E_U[U^k O U^dag^k] |0>^k for O = A_1 x ... x A_k:
///
///     sum_{p in S_k} perm_trace(ops, p) / (d (d+1) ... (d+k-1))
///
/// The uniform 1/rising-factorial weight holds only for this pure-state
/// contraction. It is NOT a general Haar unitary moment (no Weingarten
/// weights are applied).
Complex moment_contraction(std::span<const ComplexMatrix> ops, int d);

/// d (d+1) ... (d+k-1)
double rising_factorial(int d, int k);

}  // namespace sfcorr

#endif
