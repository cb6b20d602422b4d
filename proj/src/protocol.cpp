#include "cqc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cqc {

ProtocolInstance make_protocol_instance(const Code& code, const SeparatorFamily& fam,
                                        const CqChannel& w) {
    ProtocolInstance inst;
    inst.code = code;
    inst.verifier = build_verifier(code.table, fam, w);
    inst.channel = w;
    inst.n = code.n;
    return inst;
}

double honest_accept_prob(const ProtocolInstance& inst, std::size_t m, std::size_t l) {
    if (m >= inst.code.num_messages || l >= inst.code.num_lanes)
        throw ValidationError("honest_accept_prob: (m, l) out of range");
    return accept_prob(inst.verifier, inst.member(m, l), inst.code.word(m, l));
}

bool honest_run_sampled(const ProtocolInstance& inst, std::size_t m, std::size_t l, Rng& rng) {
    return rng.next_double() < honest_accept_prob(inst, m, l);
}

ConcealingReport protocol_eps_a(const ProtocolInstance& inst, long dense_budget) {
    const Code& code = inst.code;
    std::vector<Matrix> averaged(code.num_messages);
    parallel_for(code.num_messages, [&](std::size_t m) {
        Matrix acc;
        for (std::size_t l = 0; l < code.num_lanes; ++l) {
            const DensityMatrix state =
                tensor_power_state(code.word(m, l), inst.channel.states(), dense_budget);
            if (l == 0)
                acc = state.matrix();
            else
                acc += state.matrix();
        }
        averaged[m] = acc / static_cast<double>(code.num_lanes);
    });
    ConcealingReport rep;
    for (std::size_t m = 0; m < code.num_messages; ++m) {
        for (std::size_t mp = m + 1; mp < code.num_messages; ++mp) {
            const double norm = trace_norm_hermitian(averaged[m] - averaged[mp]);
            if (norm > rep.eps_a_trace_norm) {
                rep.eps_a_trace_norm = norm;
                rep.worst_m = m;
                rep.worst_m_prime = mp;
            }
        }
    }
    rep.eps_a_half = 0.5 * rep.eps_a_trace_norm;
    return rep;
}

PassiveCheat passive_cheat_best_reveal(const ProtocolInstance& inst, std::size_t m, std::size_t l) {
    PassiveCheat cheat;
    const Word& committed = inst.code.word(m, l);
    for (std::size_t mp = 0; mp < inst.code.num_messages; ++mp) {
        if (mp == m) continue;
        for (std::size_t lp = 0; lp < inst.code.num_lanes; ++lp) {
            const double prob = accept_prob(inst.verifier, inst.member(mp, lp), committed);
            if (!cheat.exists || prob > cheat.probability) {
                cheat.exists = true;
                cheat.m_prime = mp;
                cheat.l_prime = lp;
                cheat.probability = prob;
            }
        }
    }
    return cheat;
}

ActiveCheat active_cheat_best(const ProtocolInstance& inst, std::uint64_t word_budget,
                              std::uint64_t sampled_words, std::uint64_t sample_seed) {
    const DeltaCReport delta_c =
        eval_delta_C(inst.verifier, word_budget, sampled_words, sample_seed);
    ActiveCheat cheat;
    cheat.value = delta_c.value;
    cheat.commit_word = delta_c.attaining_word;
    cheat.reveal_a = delta_c.best_member;
    cheat.reveal_b = delta_c.second_member;
    cheat.approximate = delta_c.approximate;
    return cheat;
}

FanoResult fano_estimator(const ProtocolInstance& inst, double delta, std::uint64_t word_budget) {
    const Code& code = inst.code;
    FanoResult out;
    out.delta_used = delta;
    const double delta_13 = std::cbrt(delta);
    out.bound = 3.0 * delta_13;
    out.good_prob_bound = 1.0 - std::cbrt(delta * delta);

    out.good_sets.resize(code.num_messages);
    for (std::size_t m = 0; m < code.num_messages; ++m) {
        for (std::size_t l = 0; l < code.num_lanes; ++l)
            if (honest_accept_prob(inst, m, l) > 1.0 - delta_13) out.good_sets[m].push_back(l);
        if (out.good_sets[m].empty()) out.some_good_empty = true;
        out.good_prob += static_cast<double>(out.good_sets[m].size());
    }
    out.good_prob /= static_cast<double>(code.num_messages * code.num_lanes);

    const std::uint64_t k = static_cast<std::uint64_t>(code.alphabet_size);
    double total_d = 1.0;
    for (int i = 0; i < code.n; ++i) total_d *= static_cast<double>(k);
    if (total_d > static_cast<double>(word_budget)) {
        std::ostringstream os;
        os << "fano_estimator: " << total_d << " words exceed the enumeration budget "
           << word_budget;
        throw ResourceError(os.str());
    }
    const std::uint64_t total = static_cast<std::uint64_t>(total_d);

    // F(x|m) = max over Good(m) reveals; ties in argmax go to the smallest m.
    auto decode = [&](const Word& word) -> std::int64_t {
        std::int64_t best_m = -1;
        double best_f = -1.0;
        for (std::size_t m = 0; m < code.num_messages; ++m) {
            double f = -1.0;
            for (std::size_t l : out.good_sets[m])
                f = std::max(f, accept_prob(inst.verifier, inst.member(m, l), word));
            if (f > best_f) {
                best_f = f;
                best_m = static_cast<std::int64_t>(m);
            }
        }
        return best_m;
    };

    out.h_table.assign(total, -1);
    std::vector<Word> words(total);
    {
        Word word(code.n, 0);
        for (std::uint64_t idx = 0;; ++idx) {
            words[idx] = word;
            int pos = code.n - 1;
            while (pos >= 0 && word[pos] == static_cast<int>(k) - 1) word[pos--] = 0;
            if (pos < 0) break;
            ++word[pos];
        }
    }
    parallel_for(total, [&](std::size_t idx) { out.h_table[idx] = decode(words[idx]); });

    auto word_index = [&](const Word& word) {
        std::uint64_t idx = 0;
        for (int i = 0; i < code.n; ++i) idx = idx * k + static_cast<std::uint64_t>(word[i]);
        return idx;
    };
    std::size_t errors = 0;
    for (std::size_t m = 0; m < code.num_messages; ++m)
        for (std::size_t l = 0; l < code.num_lanes; ++l)
            if (out.h_table[word_index(code.word(m, l))] != static_cast<std::int64_t>(m)) ++errors;
    out.error_prob =
        static_cast<double>(errors) / static_cast<double>(code.num_messages * code.num_lanes);
    return out;
}

double eta_continuity(double eps) {
    if (eps <= 0.0) return 0.0;
    return (eps + 1.0) * std::log2(eps + 1.0) - eps * std::log2(eps);
}

ConverseCheck converse_check(const ProtocolInstance& inst, double eps, double delta) {
    const Code& code = inst.code;
    ConverseCheck out;
    std::vector<double> counts(code.alphabet_size, 0.0);
    for (const Word& word : code.table)
        for (int letter : word) counts[static_cast<std::size_t>(letter)] += 1.0;
    const double total = static_cast<double>(code.table.size()) * code.n;
    for (double& c : counts) c /= total;
    out.p_empirical = counts;
    out.rate_bits = std::log2(static_cast<double>(code.num_messages)) / code.n;
    out.h_xy = conditional_entropy(inst.channel, Distribution(counts));
    out.eta = eta_continuity(eps);
    out.lhs = (1.0 - eps - 3.0 * std::cbrt(delta)) * out.rate_bits;
    out.rhs = out.h_xy + (1.0 + out.eta) / static_cast<double>(inst.n);
    out.holds = out.lhs <= out.rhs + 1e-12;
    return out;
}

ProtocolReport audit_protocol(const ProtocolInstance& inst, long dense_budget,
                              std::uint64_t word_budget) {
    ProtocolReport rep;
    const ConcealingReport conceal = protocol_eps_a(inst, dense_budget);
    rep.eps_a = conceal.eps_a_trace_norm;
    rep.eps_a_half = conceal.eps_a_half;

    double min_accept = 1.0;
    double max_reject = 0.0;
    for (std::size_t m = 0; m < inst.code.num_messages; ++m) {
        for (std::size_t l = 0; l < inst.code.num_lanes; ++l) {
            const double a = honest_accept_prob(inst, m, l);
            min_accept = std::min(min_accept, a);
            max_reject = std::max(max_reject, 1.0 - a);
        }
    }
    rep.correctness = min_accept;
    rep.eps_A = max_reject;

    const ActiveCheat active = active_cheat_best(inst, word_budget);
    rep.delta_C = active.value;
    rep.delta_a = std::max(rep.eps_A, rep.delta_C);

    const FanoResult fano = fano_estimator(inst, rep.delta_a, word_budget);
    rep.fano_error = fano.error_prob;
    rep.fano_bound = fano.bound;
    rep.good_prob = fano.good_prob;
    rep.good_prob_bound = fano.good_prob_bound;
    rep.fano_good_empty = fano.some_good_empty;

    const ConverseCheck conv = converse_check(inst, rep.eps_a_half, rep.delta_a);
    rep.converse_lhs = conv.lhs;
    rep.converse_rhs = conv.rhs;
    rep.converse_holds = conv.holds;
    return rep;
}

}  // namespace cqc
