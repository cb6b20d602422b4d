#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cqc {

// Error taxonomy mapped to CLI exit codes: validation -> 2, resource -> 3,
// solver non-convergence -> 4.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& msg, double best_value, double gap)
        : std::runtime_error(msg), best_value(best_value), gap(gap) {}
    double best_value = 0.0;
    double gap = 0.0;
};

namespace tol {
inline constexpr double herm = 1e-10;        // max |A - A^dagger| entry
inline constexpr double trace_one = 1e-10;   // |tr(rho) - 1|
inline constexpr double eig_neg = -1e-10;    // eigenvalues below this are invalid
inline constexpr double support = 1e-12;     // pseudo-inverse support cutoff
inline constexpr double prob_sum = 1e-12;    // |sum(P) - 1|
inline constexpr double state_eq = 1e-9;     // stabilizer state-equality (trace distance)
inline constexpr double nr_margin = 1e-8;    // non-redundancy threshold on hull distance^2
}  // namespace tol

// All entropic quantities in this library are base-2 (bits).
double log2_safe(double x);  // log2 with 0*log(0) callers handling zero themselves

// Deterministic SplitMix64 stream. Child streams are pure functions of the
// construction seed, independent of how many values the parent has drawn.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : base_(seed), state_(mix(seed ^ 0x1234567981abcdefULL)) {}

    std::uint64_t seed() const { return base_; }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in {0, ..., n-1}, rejection-sampled to avoid modulo bias.
    std::uint64_t next_below(std::uint64_t n);

    // Index sampled from an (unnormalized is fine) nonnegative weight vector.
    std::size_t sample(const std::vector<double>& weights);

    // Deterministic child stream for task `stream`.
    Rng child(std::uint64_t stream) const { return Rng(mix(base_ + 0x9e3779b97f4a7c15ULL * (stream + 1))); }

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

  private:
    std::uint64_t base_;
    std::uint64_t state_;
};

// Thread count used by parallel loops; 0 means hardware concurrency.
void set_num_threads(unsigned n);
unsigned num_threads();

// Deterministic parallel map: body(i) runs for i in [0, count) with results
// independent of the thread schedule (callers write to preallocated slots).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace cqc
