#pragma once

#include <cstdint>
#include <vector>

#include "cqc/common.hpp"

namespace cqc {

// F2 linear algebra on bit-packed rows (up to 63 columns).
using F2Row = std::uint64_t;

int f2_rank(std::vector<F2Row> rows, int cols);

// Inverse of a k x k bit matrix; throws if singular.
std::vector<F2Row> f2_invert(const std::vector<F2Row>& rows, int k);

// Invertible linear map f on k = k1 + k2 bits whose first k1 output bits form
// a Toeplitz hash of the input. The Toeplitz block is the universal2 family
// member selected by the seed bits; the remaining rows are a completion that
// makes f a bijection, so a pre-code table can be relabelled by f^{-1}.
class ToeplitzHash {
  public:
    // seed_bits must have length k + k1 - 1; completion rows are drawn from
    // `rng` by rejection until the full map is invertible.
    ToeplitzHash(int k1, int k2, const std::vector<int>& seed_bits, Rng rng);

    static ToeplitzHash sample(int k1, int k2, Rng rng);

    int k1() const { return k1_; }
    int k2() const { return k2_; }
    int input_bits() const { return k1_ + k2_; }

    // Full bijection on k-bit words; output bits 0..k1-1 carry the message
    // block m and bits k1..k-1 the lane block l, i.e. pairs pack as m | (l << k1).
    std::uint64_t apply(std::uint64_t v) const;
    std::uint64_t apply_inverse(std::uint64_t v) const;

    // First block only: the k1-bit Toeplitz hash.
    std::uint64_t hash_block(std::uint64_t v) const;

    const std::vector<F2Row>& forward_rows() const { return rows_; }

  private:
    int k1_;
    int k2_;
    std::vector<F2Row> rows_;      // k rows; row i gives output bit i
    std::vector<F2Row> inv_rows_;  // rows of f^{-1}
};

}  // namespace cqc
