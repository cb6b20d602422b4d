#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "cqc/channel.hpp"
#include "cqc/hash.hpp"
#include "cqc/info.hpp"
#include "cqc/separators.hpp"

namespace cqc {

using Word = std::vector<int>;  // letter indices into the channel alphabet

int hamming_distance(const Word& a, const Word& b);

struct PreCode {
    int n = 0;
    int alphabet_size = 0;
    std::vector<Word> rows;  // message -> word

    std::size_t size() const { return rows.size(); }
};

struct Code {
    int n = 0;
    int alphabet_size = 0;
    std::size_t num_messages = 0;  // M
    std::size_t num_lanes = 0;     // L (the private randomness alphabet)
    std::vector<Word> table;       // index m * L + l

    const Word& word(std::size_t m, std::size_t l) const { return table[m * num_lanes + l]; }
};

// i.i.d. P^n rows, deterministic under the rng seed.
PreCode random_precode(const Distribution& p, int n, std::size_t mbar, Rng rng);

// Flag per row: 1 iff some other row lies within Hamming distance n*eps2.
std::vector<int> hamming_filter(const std::vector<Word>& rows, double eps2);

// Verifier projections Pi_{x^n} = {Xi^{(n)}_{x^n} >= -n eps1}, realized
// spectrally: per codeword letter, the eigenvalues of Xi_c and the overlap
// probabilities <e_{j,c}| W_x |e_{j,c}> for every channel letter x. Acceptance
// probabilities reduce to tail probabilities of sums of independent
// per-position variables.
struct Verifier {
    int n = 0;
    int alphabet_size = 0;
    double eps1 = 0.0;
    double bin_hint = 0.0;  // zeta1 / 1000, convolution fallback bin width
    std::vector<Word> codewords;
    std::vector<RealVector> letter_values;                // [c] -> spectrum of Xi_c
    std::vector<std::vector<RealVector>> letter_probs;    // [c][x] -> overlaps

    double threshold() const { return -eps1 * static_cast<double>(n); }
    std::size_t size() const { return codewords.size(); }
};

Verifier build_verifier(const std::vector<Word>& codewords, const SeparatorFamily& fam,
                        const CqChannel& w);

// Dense realization (dim^n-dimensional projectors) for cross-checking the
// spectral path; dim^n must fit the dense budget.
struct DenseVerifier {
    double threshold = 0.0;
    std::vector<Matrix> projectors;
};

DenseVerifier build_dense_verifier(const Verifier& v, const SeparatorFamily& fam,
                                   const CqChannel& w, long dense_budget = kDefaultDenseBudget);

double accept_prob_dense(const DenseVerifier& dv, std::size_t member, const Word& x_word,
                         const CqChannel& w, long dense_budget = kDefaultDenseBudget);

struct AcceptProb {
    double value = 0.0;
    // Probability mass whose comparison against the threshold is ambiguous at
    // the working precision (exact path: ties; binned path: bin smearing).
    double error_bound = 0.0;
};

// Exact convolution over per-position spectra (values merged at 1e-12); falls
// back to a binned sum with tracked error when the support would exceed the cap.
AcceptProb accept_prob_spectral(const Verifier& v, std::size_t member, const Word& x_word,
                                std::size_t support_cap = (std::size_t{1} << 21));

double accept_prob(const Verifier& v, std::size_t member, const Word& x_word);

struct EpsAReport {
    double max_eps = 0.0;
    double avg_eps = 0.0;
    std::vector<double> per_member;
};

// Own-codeword rejection probabilities (condition (a) / (A)).
EpsAReport eval_eps_A(const Verifier& v);

struct DeltaCReport {
    double value = 0.0;
    Word attaining_word;
    std::size_t best_member = 0;
    std::size_t second_member = 0;
    bool approximate = false;       // sampled instead of exhaustive
    std::uint64_t words_scanned = 0;
};

// Max over x^n of the second-largest acceptance across verifier members; with
// a single member there is no second reveal and the value is 0 by convention.
// Enumeration capped by `word_budget`; beyond it, `sampled_words` random words
// are scanned and the report is flagged approximate.
DeltaCReport eval_delta_C(const Verifier& v, std::uint64_t word_budget = (std::uint64_t{1} << 20),
                          std::uint64_t sampled_words = 0, std::uint64_t sample_seed = 0);

struct DeltaBReport {
    double full_norm = 0.0;  // max_{m,m'} || Ybar_m - Ybar_m' ||_1 as written
    double half = 0.0;       // trace-distance normalization
    std::size_t worst_m = 0;
    std::size_t worst_m_prime = 0;
};

DeltaBReport eval_delta_B(const Code& code, const CqChannel& w,
                          long dense_budget = kDefaultDenseBudget);

struct EAlphaReport {
    double e_alpha_bits = 0.0;
    double gap = 0.0;
    int iterations = 0;
    DensityMatrix sigma_star;
};

// E_alpha(pre) = log2 Mtilde - min_sigma (1/(alpha-1)) log2 of the averaged
// sandwiched-Q of the codeword states.
EAlphaReport eval_E_alpha(const PreCode& pre, const CqChannel& w, RenyiOrder order,
                          long dense_budget = kDefaultDenseBudget, const SigmaOptions& opts = {});

// phi(m, l) := pre(f^{-1}(m | l<<k1)); the codeword multiset is preserved.
Code precode_to_code(const PreCode& pre, const ToeplitzHash& hash);

struct SecurityReport {
    double eps_A = 0.0;
    double eps_A_avg = 0.0;
    double delta_B = 0.0;       // full trace norm
    double delta_B_half = 0.0;
    double delta_C = 0.0;
    double E_alpha = 0.0;
    double chebyshev_delta_C_bound = 0.0;   // zeta2 / (n [zeta1 eps2/2 - eps1]_+^2)
    double leftover_hash_delta_B_bound = 0.0;  // 2^{2/a - 1 + (a-1)/a (k1 - E_alpha)}
    // parameter echo
    int n = 0;
    double r1 = 0.0, r2 = 0.0;
    int k1 = 0, k2 = 0;
    std::uint64_t mbar = 0, mtilde = 0;
    double eps1 = 0.0, eps2 = 0.0, alpha = 0.0;
    double zeta1 = 0.0, zeta2 = 0.0;
    std::uint64_t seed = 0;
};

struct PipelineOptions {
    double eps1_override = -1.0;   // default: zeta1 * eps2 / 4
    double eps2_override = -1.0;   // default: 0.2
    double alpha = 2.0;
    long dense_budget = kDefaultDenseBudget;
    std::uint64_t delta_c_word_budget = std::uint64_t{1} << 20;
    int max_retries = 16;
    SigmaOptions sigma_opts{};
};

struct PipelineResult {
    SeparatorFamily family;
    PreCode kept_precode;
    Code code;
    Verifier verifier;
    SecurityReport report;
    std::vector<std::string> warnings;
    int retries_used = 0;
};

// Steps: sample ceil(3/2 * 2^{k1+k2}) i.i.d. rows, score each by own-codeword
// rejection plus the Hamming flag, keep the best 2^{k1+k2} below three times
// the empirical mean (Markov selection), verify the pairwise distance
// condition, hash, and measure every security parameter with its analytic
// bounds. Rate preconditions are warnings, not failures.
PipelineResult build_pipeline(const CqChannel& w, const Distribution& p, int n, double r1,
                              double r2, std::uint64_t seed, const PipelineOptions& opts = {});

// Code/pre-code table serialization (structured text).
void save_code(std::ostream& out, const Code& code, const std::vector<std::string>& alphabet);
Code load_code(std::istream& in, const std::string& source_name = "<stream>");
void save_precode(std::ostream& out, const PreCode& pre, const std::vector<std::string>& alphabet);
PreCode load_precode(std::istream& in, const std::string& source_name = "<stream>");

}  // namespace cqc
