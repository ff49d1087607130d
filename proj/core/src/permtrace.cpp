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

#include "sfcorr/permtrace.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <numeric>
#include <string>

namespace sfcorr {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int k = static_cast<int>(images_.size());
    if (k < 1) {
        fail(ErrorCode::OutOfRange, "permutation needs k >= 1");
    }
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
        if (v < 0 || v >= k || seen[static_cast<size_t>(v)]) {
            fail(ErrorCode::OutOfRange, "image array is not a bijection");
        }
        seen[static_cast<size_t>(v)] = true;
    }
}

Permutation Permutation::identity(int k) {
    std::vector<int> images(static_cast<size_t>(std::max(k, 0)));
    std::iota(images.begin(), images.end(), 0);
    return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (size_t i = 0; i < images_.size(); i++) {
        inv[static_cast<size_t>(images_[i])] = static_cast<int>(i);
    }
    return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation &other) const {
    if (other.k() != k()) {
        fail(ErrorCode::DimensionMismatch, "composing permutations of different order");
    }
    std::vector<int> out(images_.size());
    for (size_t i = 0; i < images_.size(); i++) {
        out[i] = images_[static_cast<size_t>(other.images_[i])];
    }
    return Permutation(std::move(out));
}

std::vector<Permutation> enumerate_sk(int k) {
    if (k < 1 || k > kMaxSymmetricOrder) {
        fail(ErrorCode::OutOfRange, "enumerate_sk supports 1 <= k <= 8, got " + std::to_string(k));
    }
    std::vector<int> images(static_cast<size_t>(k));
    std::iota(images.begin(), images.end(), 0);
    std::vector<Permutation> out;
    do {
        out.emplace_back(images);
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

const std::vector<Permutation> &symmetric_group(int k) {
    if (k < 1 || k > kMaxSymmetricOrder) {
        fail(ErrorCode::OutOfRange, "symmetric_group supports 1 <= k <= 8, got " + std::to_string(k));
    }
    static std::array<std::vector<Permutation>, kMaxSymmetricOrder + 1> tables;
    static std::array<std::once_flag, kMaxSymmetricOrder + 1> flags;
    std::call_once(flags[static_cast<size_t>(k)], [k] { tables[static_cast<size_t>(k)] = enumerate_sk(k); });
    return tables[static_cast<size_t>(k)];
}

CycleDecomposition cycle_decompose(const Permutation &p) {
    CycleDecomposition out;
    std::vector<bool> visited(static_cast<size_t>(p.k()), false);
    for (int start = 0; start < p.k(); start++) {
        if (visited[static_cast<size_t>(start)]) {
            continue;
        }
        std::vector<int> cycle;
        for (int cur = start; !visited[static_cast<size_t>(cur)]; cur = p(cur)) {
            visited[static_cast<size_t>(cur)] = true;
            cycle.push_back(cur);
        }
        out.cycles.push_back(std::move(cycle));
    }
    return out;
}

namespace {

void check_ops(std::span<const ComplexMatrix> ops, int k) {
    if (static_cast<int>(ops.size()) != k) {
        fail(ErrorCode::DimensionMismatch,
             "expected " + std::to_string(k) + " operators, got " + std::to_string(ops.size()));
    }
    for (const auto &op : ops) {
        require_same_dim(op.dim(), ops[0].dim(), "perm_trace operand");
    }
}

// Trace of A_l A_{c^-1(l)} A_{c^-2(l)} ... for the cycle containing `reference`.
Complex cycle_word_trace(std::span<const ComplexMatrix> ops, const Permutation &inverse, int reference) {
    int next = inverse(reference);
    if (next == reference) {
        return ops[static_cast<size_t>(reference)].mat().trace();
    }
    Matrix word = ops[static_cast<size_t>(reference)].mat();
    while (next != reference) {
        word = word * ops[static_cast<size_t>(next)].mat();
        next = inverse(next);
    }
    return word.trace();
}

}  // namespace

Complex perm_trace(std::span<const ComplexMatrix> ops, const Permutation &p) {
    check_ops(ops, p.k());
    auto inverse = p.inverse();
    Complex product(1.0, 0.0);
    for (const auto &cycle : cycle_decompose(p).cycles) {
        product *= cycle_word_trace(ops, inverse, cycle.front());
    }
    return product;
}

Complex perm_trace_with_references(std::span<const ComplexMatrix> ops, const Permutation &p,
                                   std::span<const int> reference) {
    check_ops(ops, p.k());
    auto cycles = cycle_decompose(p).cycles;
    if (reference.size() != cycles.size()) {
        fail(ErrorCode::DimensionMismatch, "one reference element per cycle is required");
    }
    auto inverse = p.inverse();
    Complex product(1.0, 0.0);
    for (size_t c = 0; c < cycles.size(); c++) {
        if (std::find(cycles[c].begin(), cycles[c].end(), reference[c]) == cycles[c].end()) {
            fail(ErrorCode::OutOfRange, "reference element does not belong to its cycle");
        }
        product *= cycle_word_trace(ops, inverse, reference[c]);
    }
    return product;
}

double rising_factorial(int d, int k) {
    double out = 1.0;
    for (int j = 0; j < k; j++) {
        out *= static_cast<double>(d + j);
    }
    return out;
}

Complex moment_contraction(std::span<const ComplexMatrix> ops, int d) {
    const int k = static_cast<int>(ops.size());
    if (k < 1 || k > kMaxSymmetricOrder) {
        fail(ErrorCode::OutOfRange, "moment_contraction supports 1 <= k <= 8");
    }
    for (const auto &op : ops) {
        require_same_dim(op.dim(), d, "moment_contraction");
    }
    Complex sum(0.0, 0.0);
    for (const auto &p : symmetric_group(k)) {
        sum += perm_trace(ops, p);
    }
    return sum / rising_factorial(d, k);
}

}  // namespace sfcorr
