#pragma once

#include "cqc/codes.hpp"

namespace cqc {

// Non-interactive protocol P(phi_n, D_n): Alice commits by sending
// W^{(n)}_{phi(M,L)}; the reveal is the pair (m, l) and Bob applies the
// projection of the revealed codeword. The verifier member for (m, l) is
// m * L + l.
struct ProtocolInstance {
    Code code;
    Verifier verifier;
    CqChannel channel;
    int n = 0;

    std::size_t member(std::size_t m, std::size_t l) const { return m * code.num_lanes + l; }
};

ProtocolInstance make_protocol_instance(const Code& code, const SeparatorFamily& fam,
                                        const CqChannel& w);

// Exact honest acceptance probability for (m, l).
double honest_accept_prob(const ProtocolInstance& inst, std::size_t m, std::size_t l);

// Sampled verdict of one honest run.
bool honest_run_sampled(const ProtocolInstance& inst, std::size_t m, std::size_t l, Rng& rng);

// Active concealing parameter: max over message pairs of the trace norm
// between lane-averaged commit states. Equals delta_B of the code by the
// protocol/code parameter identification.
struct ConcealingReport {
    double eps_a_trace_norm = 0.0;  // the paper's convention (no 1/2)
    double eps_a_half = 0.0;
    std::size_t worst_m = 0, worst_m_prime = 0;
};
ConcealingReport protocol_eps_a(const ProtocolInstance& inst, long dense_budget = kDefaultDenseBudget);

// Best dishonest reveal after an honest commit of (m, l): maximizes acceptance
// over reveals with a different message. Empty result for a single message.
struct PassiveCheat {
    bool exists = false;
    std::size_t m_prime = 0, l_prime = 0;
    double probability = 0.0;
};
PassiveCheat passive_cheat_best_reveal(const ProtocolInstance& inst, std::size_t m, std::size_t l);

// Optimal active commit word and its two best reveals; the value (the smaller
// of the two acceptance probabilities) coincides with delta_C.
struct ActiveCheat {
    double value = 0.0;
    Word commit_word;
    std::size_t reveal_a = 0, reveal_b = 0;  // verifier member indices
    bool approximate = false;
};
ActiveCheat active_cheat_best(const ProtocolInstance& inst,
                              std::uint64_t word_budget = (std::uint64_t{1} << 20),
                              std::uint64_t sampled_words = 0, std::uint64_t sample_seed = 0);

// Converse-proof estimator: Good(m) = {l : f(m,l) > 1 - delta^{1/3}},
// F(x|m) = max_{l in Good(m)} Tr[W_x Pi_{m,l}], h(x) = argmax_m F(x|m) with
// ties to the smallest message.
struct FanoResult {
    std::vector<std::int64_t> h_table;  // word index (odometer order) -> decoded message
    std::vector<std::vector<std::size_t>> good_sets;
    bool some_good_empty = false;
    double good_prob = 0.0;     // Pr{L in Good(M)}
    double error_prob = 0.0;    // Pr{M != h(X^n)} under honest uniform (M, L)
    double delta_used = 0.0;
    double bound = 0.0;         // 3 delta^{1/3}
    double good_prob_bound = 0.0;  // 1 - delta^{2/3}
};
FanoResult fano_estimator(const ProtocolInstance& inst, double delta,
                          std::uint64_t word_budget = (std::uint64_t{1} << 20));

// eta(eps) = (eps+1) log2(eps+1) - eps log2 eps, the continuity correction.
double eta_continuity(double eps);

struct ConverseCheck {
    double lhs = 0.0;           // (1 - eps - 3 delta^{1/3}) R
    double rhs = 0.0;           // H(X|Y)_{P_X} + (1 + eta(eps)) / n
    double rate_bits = 0.0;
    double h_xy = 0.0;
    double eta = 0.0;
    std::vector<double> p_empirical;
    bool holds = false;
};
// eps: half-trace-norm concealing; delta: active binding.
ConverseCheck converse_check(const ProtocolInstance& inst, double eps, double delta);

// Full audit: parameter identities, correctness, Fano estimator, converse.
struct ProtocolReport {
    double eps_a = 0.0;          // = delta_B (paper convention, full norm)
    double eps_a_half = 0.0;
    double delta_a = 0.0;        // = max(eps_A, delta_C)
    double eps_A = 0.0;
    double delta_C = 0.0;
    double correctness = 0.0;    // min over (m,l) honest acceptance
    double fano_error = 0.0;
    double fano_bound = 0.0;
    double good_prob = 0.0;
    double good_prob_bound = 0.0;
    bool fano_good_empty = false;
    double converse_lhs = 0.0;
    double converse_rhs = 0.0;
    bool converse_holds = false;
};
ProtocolReport audit_protocol(const ProtocolInstance& inst,
                              long dense_budget = kDefaultDenseBudget,
                              std::uint64_t word_budget = (std::uint64_t{1} << 20));

}  // namespace cqc
