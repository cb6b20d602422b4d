#include "cqc/hash.hpp"

#include <bit>
#include <sstream>

namespace cqc {

int f2_rank(std::vector<F2Row> rows, int cols) {
    int rank = 0;
    for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        const F2Row mask = F2Row{1} << c;
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
            if (rows[r] & mask) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r)
            if (r != rank && (rows[r] & mask)) rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

std::vector<F2Row> f2_invert(const std::vector<F2Row>& rows, int k) {
    if (static_cast<int>(rows.size()) != k) throw ValidationError("f2_invert: not square");
    // Gauss-Jordan on [A | I].
    std::vector<F2Row> a = rows;
    std::vector<F2Row> inv(k);
    for (int i = 0; i < k; ++i) inv[i] = F2Row{1} << i;
    for (int c = 0; c < k; ++c) {
        const F2Row mask = F2Row{1} << c;
        int pivot = -1;
        for (int r = c; r < k; ++r) {
            if (a[r] & mask) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) throw ValidationError("f2_invert: matrix is singular");
        std::swap(a[c], a[pivot]);
        std::swap(inv[c], inv[pivot]);
        for (int r = 0; r < k; ++r) {
            if (r != c && (a[r] & mask)) {
                a[r] ^= a[c];
                inv[r] ^= inv[c];
            }
        }
    }
    return inv;
}

namespace {
std::uint64_t apply_rows(const std::vector<F2Row>& rows, std::uint64_t v) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        out |= static_cast<std::uint64_t>(std::popcount(rows[i] & v) & 1) << i;
    return out;
}
}  // namespace

ToeplitzHash::ToeplitzHash(int k1, int k2, const std::vector<int>& seed_bits, Rng rng)
    : k1_(k1), k2_(k2) {
    if (k1 < 1 || k2 < 1) throw ValidationError("ToeplitzHash: k1 and k2 must be >= 1");
    const int k = k1 + k2;
    if (k > 62) throw ValidationError("ToeplitzHash: k1 + k2 must be <= 62");
    if (static_cast<int>(seed_bits.size()) != k + k1 - 1)
        throw ValidationError("ToeplitzHash: seed must have k + k1 - 1 bits");

    // Toeplitz block: T[i][j] = seed[i - j + k - 1].
    rows_.assign(k, 0);
    for (int i = 0; i < k1; ++i) {
        F2Row row = 0;
        for (int j = 0; j < k; ++j)
            if (seed_bits[i - j + k - 1]) row |= F2Row{1} << j;
        rows_[i] = row;
    }
    if (f2_rank(std::vector<F2Row>(rows_.begin(), rows_.begin() + k1), k) < k1)
        throw ValidationError("ToeplitzHash: Toeplitz block is rank-deficient; no completion exists");

    // Rejection-sample completion rows until the map is a bijection.
    const F2Row row_mask = (k == 62) ? ((F2Row{1} << 62) - 1) : ((F2Row{1} << k) - 1);
    bool done = false;
    for (int attempt = 0; attempt < 256 && !done; ++attempt) {
        for (int i = k1; i < k; ++i) rows_[i] = rng.next_u64() & row_mask;
        done = f2_rank(rows_, k) == k;
    }
    if (!done) {
        // Deterministic fallback: extend the row space with unit rows.
        for (int i = k1; i < k; ++i) rows_[i] = 0;
        int fill = k1;
        for (int c = 0; c < k && fill < k; ++c) {
            rows_[fill] = F2Row{1} << c;
            if (f2_rank(std::vector<F2Row>(rows_.begin(), rows_.begin() + fill + 1), k) == fill + 1)
                ++fill;
            else
                rows_[fill] = 0;
        }
    }
    inv_rows_ = f2_invert(rows_, k);
}

ToeplitzHash ToeplitzHash::sample(int k1, int k2, Rng rng) {
    if (k1 < 1 || k2 < 1 || k1 + k2 > 62)
        throw ValidationError("ToeplitzHash::sample: need k1, k2 >= 1 and k1 + k2 <= 62");
    const int k = k1 + k2;
    // The seed is uniform over the Toeplitz family; a rank-deficient block
    // admits no invertible completion, so such seeds are redrawn.
    for (int attempt = 0;; ++attempt) {
        std::vector<int> seed(k + k1 - 1);
        for (auto& b : seed) b = static_cast<int>(rng.next_u64() & 1);
        try {
            return ToeplitzHash(k1, k2, seed, rng.child(0x746f65706cULL + attempt));
        } catch (const ValidationError&) {
            if (attempt > 4096) throw;
        }
    }
}

std::uint64_t ToeplitzHash::apply(std::uint64_t v) const { return apply_rows(rows_, v); }

std::uint64_t ToeplitzHash::apply_inverse(std::uint64_t v) const { return apply_rows(inv_rows_, v); }

std::uint64_t ToeplitzHash::hash_block(std::uint64_t v) const {
    return apply(v) & ((F2Row{1} << k1_) - 1);
}

}  // namespace cqc
