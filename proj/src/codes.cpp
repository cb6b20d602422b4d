#include "cqc/codes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace cqc {

int hamming_distance(const Word& a, const Word& b) {
    if (a.size() != b.size()) throw ValidationError("hamming_distance: length mismatch");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) ++d;
    return d;
}

PreCode random_precode(const Distribution& p, int n, std::size_t mbar, Rng rng) {
    if (n <= 0) throw ValidationError("random_precode: n must be positive");
    if (mbar < 2) throw ValidationError("random_precode: need at least two rows");
    PreCode pre;
    pre.n = n;
    pre.alphabet_size = static_cast<int>(p.size());
    pre.rows.resize(mbar);
    for (std::size_t m = 0; m < mbar; ++m) {
        Rng row_rng = rng.child(m);
        Word w(n);
        for (int i = 0; i < n; ++i) w[i] = static_cast<int>(row_rng.sample(p.probs()));
        pre.rows[m] = std::move(w);
    }
    return pre;
}

std::vector<int> hamming_filter(const std::vector<Word>& rows, double eps2) {
    const std::size_t m = rows.size();
    std::vector<int> flags(m, 0);
    if (m == 0) return flags;
    const double threshold = eps2 * static_cast<double>(rows.front().size());
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (static_cast<double>(hamming_distance(rows[i], rows[j])) <= threshold) {
                flags[i] = 1;
                flags[j] = 1;
            }
        }
    }
    return flags;
}

Verifier build_verifier(const std::vector<Word>& codewords, const SeparatorFamily& fam,
                        const CqChannel& w) {
    if (codewords.empty()) throw ValidationError("build_verifier: no codewords");
    if (fam.xis.size() != w.alphabet_size())
        throw ValidationError("build_verifier: separator family does not match the channel");
    Verifier v;
    v.n = static_cast<int>(codewords.front().size());
    v.alphabet_size = static_cast<int>(w.alphabet_size());
    v.eps1 = fam.epsilon1;
    v.bin_hint = fam.zeta1 > 0.0 ? fam.zeta1 / 1000.0 : 1e-3;
    v.codewords = codewords;
    for (const Word& cw : codewords)
        if (static_cast<int>(cw.size()) != v.n)
            throw ValidationError("build_verifier: codewords have unequal lengths");

    const std::size_t nx = w.alphabet_size();
    v.letter_values.resize(nx);
    v.letter_probs.assign(nx, std::vector<RealVector>(nx));
    for (std::size_t c = 0; c < nx; ++c) {
        const Eigensystem es = eig_hermitian(fam.xis[c]);
        v.letter_values[c] = es.values;
        for (std::size_t x = 0; x < nx; ++x) {
            RealVector probs(es.values.size());
            for (Eigen::Index j = 0; j < es.values.size(); ++j) {
                const Vector e = es.vectors.col(j);
                probs[j] = std::max(0.0, (e.adjoint() * w.state(x).matrix() * e)(0, 0).real());
            }
            v.letter_probs[c][x] = std::move(probs);
        }
    }
    return v;
}

namespace {

constexpr double kMergeEps = 1e-12;
constexpr double kTieBand = 1e-11;

struct SumDist {
    std::vector<double> values;  // ascending
    std::vector<double> probs;
};

void convolve_letter(SumDist& dist, const RealVector& values, const RealVector& probs,
                     std::vector<std::pair<double, double>>& scratch) {
    scratch.clear();
    scratch.reserve(dist.values.size() * static_cast<std::size_t>(values.size()));
    for (std::size_t i = 0; i < dist.values.size(); ++i) {
        for (Eigen::Index j = 0; j < values.size(); ++j) {
            const double pr = dist.probs[i] * probs[j];
            if (pr > 0.0) scratch.emplace_back(dist.values[i] + values[j], pr);
        }
    }
    std::sort(scratch.begin(), scratch.end());
    dist.values.clear();
    dist.probs.clear();
    for (const auto& [val, pr] : scratch) {
        if (!dist.values.empty() && val - dist.values.back() <= kMergeEps) {
            const double total = dist.probs.back() + pr;
            // probability-weighted representative value limits drift
            dist.values.back() = (dist.values.back() * dist.probs.back() + val * pr) / total;
            dist.probs.back() = total;
        } else {
            dist.values.push_back(val);
            dist.probs.push_back(pr);
        }
    }
}

AcceptProb tail_at_threshold(const SumDist& dist, double threshold, double smear) {
    AcceptProb out;
    for (std::size_t i = 0; i < dist.values.size(); ++i) {
        if (dist.values[i] >= threshold) out.value += dist.probs[i];
        if (std::abs(dist.values[i] - threshold) <= smear) out.error_bound += dist.probs[i];
    }
    return out;
}

AcceptProb accept_prob_binned(const Verifier& v, std::size_t member, const Word& x_word) {
    const Word& cw = v.codewords[member];
    const double delta = v.bin_hint;
    // Range of attainable sums on the grid.
    double min_sum = 0.0, max_sum = 0.0;
    for (int i = 0; i < v.n; ++i) {
        min_sum += v.letter_values[cw[i]].minCoeff();
        max_sum += v.letter_values[cw[i]].maxCoeff();
    }
    const long bins = static_cast<long>(std::ceil((max_sum - min_sum) / delta)) + 2;
    if (bins > (1L << 26)) throw ResourceError("accept_prob: binned support too large");
    std::vector<double> grid(static_cast<std::size_t>(bins), 0.0);
    std::vector<double> next(grid.size());
    grid[0] = 1.0;  // grid index 0 tracks the running minimum sum
    double running_min = 0.0;
    for (int i = 0; i < v.n; ++i) {
        std::fill(next.begin(), next.end(), 0.0);
        const RealVector& vals = v.letter_values[cw[i]];
        const RealVector& prs = v.letter_probs[cw[i]][x_word[i]];
        const double letter_min = vals.minCoeff();
        for (std::size_t b = 0; b < grid.size(); ++b) {
            if (grid[b] == 0.0) continue;
            for (Eigen::Index j = 0; j < vals.size(); ++j) {
                const long shift = std::lround((vals[j] - letter_min) / delta);
                const std::size_t nb = b + static_cast<std::size_t>(shift);
                if (nb < next.size()) next[nb] += grid[b] * prs[j];
            }
        }
        grid.swap(next);
        running_min += letter_min;
    }
    // value of bin b is running_min + b*delta, each letter rounded within delta/2
    const double smear = 0.5 * delta * static_cast<double>(v.n) + delta;
    AcceptProb out;
    const double threshold = v.threshold();
    for (std::size_t b = 0; b < grid.size(); ++b) {
        if (grid[b] == 0.0) continue;
        const double value = running_min + static_cast<double>(b) * delta;
        if (value >= threshold) out.value += grid[b];
        if (std::abs(value - threshold) <= smear) out.error_bound += grid[b];
    }
    return out;
}

}  // namespace

AcceptProb accept_prob_spectral(const Verifier& v, std::size_t member, const Word& x_word,
                                std::size_t support_cap) {
    if (member >= v.size()) throw ValidationError("accept_prob: member out of range");
    if (static_cast<int>(x_word.size()) != v.n)
        throw ValidationError("accept_prob: word length mismatch");
    const Word& cw = v.codewords[member];
    SumDist dist;
    dist.values = {0.0};
    dist.probs = {1.0};
    std::vector<std::pair<double, double>> scratch;
    for (int i = 0; i < v.n; ++i) {
        if (x_word[i] < 0 || x_word[i] >= v.alphabet_size)
            throw ValidationError("accept_prob: letter out of range");
        if (dist.values.size() * static_cast<std::size_t>(v.letter_values[cw[i]].size()) > support_cap)
            return accept_prob_binned(v, member, x_word);
        convolve_letter(dist, v.letter_values[cw[i]], v.letter_probs[cw[i]][x_word[i]], scratch);
    }
    return tail_at_threshold(dist, v.threshold(), kTieBand);
}

double accept_prob(const Verifier& v, std::size_t member, const Word& x_word) {
    return accept_prob_spectral(v, member, x_word).value;
}

DenseVerifier build_dense_verifier(const Verifier& v, const SeparatorFamily& fam,
                                   const CqChannel& w, long dense_budget) {
    const int d = w.dim();
    long total = 1;
    for (int i = 0; i < v.n; ++i) {
        if (total > dense_budget / d) {
            std::ostringstream os;
            os << "build_dense_verifier: dimension " << d << "^" << v.n << " exceeds budget "
               << dense_budget;
            throw ResourceError(os.str());
        }
        total *= d;
    }
    DenseVerifier dv;
    dv.threshold = v.threshold();
    dv.projectors.resize(v.size());
    parallel_for(v.size(), [&](std::size_t m) {
        const Word& cw = v.codewords[m];
        Matrix xi_n = Matrix::Zero(total, total);
        for (int i = 0; i < v.n; ++i) {
            Matrix term = Matrix::Identity(1, 1);
            for (int j = 0; j < v.n; ++j) {
                const Matrix& factor =
                    (j == i) ? fam.xis[cw[i]] : Matrix(Matrix::Identity(d, d));
                term = kron(term, factor).eval();
            }
            xi_n += term;
        }
        // include eigenvalues down to the tie band so both paths rule alike
        dv.projectors[m] = projector_at_least(xi_n, dv.threshold - kTieBand);
    });
    return dv;
}

double accept_prob_dense(const DenseVerifier& dv, std::size_t member, const Word& x_word,
                         const CqChannel& w, long dense_budget) {
    const DensityMatrix state = tensor_power_state(x_word, w.states(), dense_budget);
    return std::clamp((state.matrix() * dv.projectors[member]).trace().real(), 0.0, 1.0);
}

EpsAReport eval_eps_A(const Verifier& v) {
    EpsAReport rep;
    rep.per_member.resize(v.size());
    parallel_for(v.size(), [&](std::size_t m) {
        rep.per_member[m] = 1.0 - accept_prob(v, m, v.codewords[m]);
    });
    for (double e : rep.per_member) {
        rep.max_eps = std::max(rep.max_eps, e);
        rep.avg_eps += e;
    }
    rep.avg_eps /= static_cast<double>(v.size());
    return rep;
}

namespace {

// Largest two acceptance probabilities over verifier members for one word.
std::pair<std::pair<double, std::size_t>, std::pair<double, std::size_t>> top_two(
    const Verifier& v, const Word& word) {
    std::pair<double, std::size_t> best{-1.0, 0}, second{-1.0, 0};
    for (std::size_t m = 0; m < v.size(); ++m) {
        const double a = accept_prob(v, m, word);
        if (a > best.first) {
            second = best;
            best = {a, m};
        } else if (a > second.first) {
            second = {a, m};
        }
    }
    return {best, second};
}

}  // namespace

DeltaCReport eval_delta_C(const Verifier& v, std::uint64_t word_budget,
                          std::uint64_t sampled_words, std::uint64_t sample_seed) {
    DeltaCReport rep;
    if (v.size() < 2) return rep;  // one member: no second reveal exists

    const int n = v.n;
    const std::uint64_t k = static_cast<std::uint64_t>(v.alphabet_size);
    double total_d = 1.0;
    for (int i = 0; i < n; ++i) total_d *= static_cast<double>(k);

    auto scan_word = [&](const Word& word) {
        const auto [best, second] = top_two(v, word);
        if (second.first > rep.value) {
            rep.value = second.first;
            rep.attaining_word = word;
            rep.best_member = best.second;
            rep.second_member = second.second;
        }
    };

    if (total_d <= static_cast<double>(word_budget)) {
        Word word(n, 0);
        std::uint64_t count = 0;
        for (;;) {
            scan_word(word);
            ++count;
            int pos = n - 1;
            while (pos >= 0 && word[pos] == static_cast<int>(k) - 1) word[pos--] = 0;
            if (pos < 0) break;
            ++word[pos];
        }
        rep.words_scanned = count;
        return rep;
    }
    if (sampled_words == 0) {
        std::ostringstream os;
        os << "eval_delta_C: " << total_d << " words exceed the enumeration budget " << word_budget
           << "; rerun with a sampling count for an approximate scan";
        throw ResourceError(os.str());
    }
    Rng rng(sample_seed);
    Word word(n, 0);
    for (std::uint64_t s = 0; s < sampled_words; ++s) {
        for (int i = 0; i < n; ++i) word[i] = static_cast<int>(rng.next_below(k));
        scan_word(word);
    }
    // codewords themselves are always candidates; include them in the scan
    for (const Word& cw : v.codewords) scan_word(cw);
    rep.approximate = true;
    rep.words_scanned = sampled_words + v.size();
    return rep;
}

DeltaBReport eval_delta_B(const Code& code, const CqChannel& w, long dense_budget) {
    if (code.num_messages == 0 || code.num_lanes == 0)
        throw ValidationError("eval_delta_B: empty code");
    std::vector<Matrix> averaged(code.num_messages);
    parallel_for(code.num_messages, [&](std::size_t m) {
        Matrix acc;
        for (std::size_t l = 0; l < code.num_lanes; ++l) {
            const DensityMatrix state = tensor_power_state(code.word(m, l), w.states(), dense_budget);
            if (l == 0)
                acc = state.matrix();
            else
                acc += state.matrix();
        }
        averaged[m] = acc / static_cast<double>(code.num_lanes);
    });
    DeltaBReport rep;
    for (std::size_t m = 0; m < code.num_messages; ++m) {
        for (std::size_t mp = m + 1; mp < code.num_messages; ++mp) {
            const double norm = trace_norm_hermitian(averaged[m] - averaged[mp]);
            if (norm > rep.full_norm) {
                rep.full_norm = norm;
                rep.worst_m = m;
                rep.worst_m_prime = mp;
            }
        }
    }
    rep.half = 0.5 * rep.full_norm;
    return rep;
}

EAlphaReport eval_E_alpha(const PreCode& pre, const CqChannel& w, RenyiOrder order,
                          long dense_budget, const SigmaOptions& opts) {
    if (pre.rows.empty()) throw ValidationError("eval_E_alpha: empty pre-code");
    std::vector<Matrix> states(pre.rows.size());
    parallel_for(pre.rows.size(), [&](std::size_t m) {
        states[m] = tensor_power_state(pre.rows[m], w.states(), dense_budget).matrix();
    });
    std::vector<const Matrix*> ptrs(states.size());
    std::vector<double> weights(states.size(), 1.0 / static_cast<double>(states.size()));
    for (std::size_t m = 0; m < states.size(); ++m) ptrs[m] = &states[m];
    const SigmaOptimum opt = minimize_weighted_renyi(weights, ptrs, order, opts);
    EAlphaReport rep;
    rep.e_alpha_bits = std::log2(static_cast<double>(pre.rows.size())) -
                       std::log2(opt.linear_value) / (order.alpha - 1.0);
    rep.gap = opt.gap;
    rep.iterations = opt.iterations;
    rep.sigma_star = opt.sigma;
    return rep;
}

Code precode_to_code(const PreCode& pre, const ToeplitzHash& hash) {
    const std::size_t expected = std::size_t{1} << hash.input_bits();
    if (pre.size() != expected) {
        std::ostringstream os;
        os << "precode_to_code: pre-code has " << pre.size() << " rows, hash expects " << expected;
        throw ValidationError(os.str());
    }
    Code code;
    code.n = pre.n;
    code.alphabet_size = pre.alphabet_size;
    code.num_messages = std::size_t{1} << hash.k1();
    code.num_lanes = std::size_t{1} << hash.k2();
    code.table.resize(pre.size());
    for (std::size_t m = 0; m < code.num_messages; ++m) {
        for (std::size_t l = 0; l < code.num_lanes; ++l) {
            const std::uint64_t packed = static_cast<std::uint64_t>(m) |
                                         (static_cast<std::uint64_t>(l) << hash.k1());
            code.table[m * code.num_lanes + l] = pre.rows[hash.apply_inverse(packed)];
        }
    }
    return code;
}

PipelineResult build_pipeline(const CqChannel& w, const Distribution& p, int n, double r1,
                              double r2, std::uint64_t seed, const PipelineOptions& opts) {
    if (n <= 0) throw ValidationError("build_pipeline: n must be positive");
    const int k1 = static_cast<int>(std::floor(n * r1));
    const int k2 = static_cast<int>(std::floor(n * r2));
    if (k1 < 1 || k2 < 1) {
        std::ostringstream os;
        os << "build_pipeline: floor(n R1) = " << k1 << " and floor(n R2) = " << k2
           << " must both be >= 1";
        throw ValidationError(os.str());
    }
    const std::uint64_t mtilde = std::uint64_t{1} << (k1 + k2);
    const std::uint64_t mbar = 3 * (std::uint64_t{1} << (k1 + k2 - 1));  // ceil(3/2 * 2^{k1+k2})

    PipelineResult result;
    const double h_p = p.entropy_bits();
    const double i_xy = holevo_info(w, p);
    if (!(r1 + r2 < h_p)) {
        std::ostringstream os;
        os << "rate check: R1 + R2 = " << r1 + r2 << " is not below H(X)_P = " << h_p;
        result.warnings.push_back(os.str());
    }
    if (!(r2 > i_xy)) {
        std::ostringstream os;
        os << "rate check: R2 = " << r2 << " is not above I(X;Y)_P = " << i_xy;
        result.warnings.push_back(os.str());
    }

    SeparatorFamily fam = find_separators(w);
    fam.epsilon2 = opts.eps2_override >= 0.0 ? opts.eps2_override : 0.2;
    fam.epsilon1 = opts.eps1_override >= 0.0 ? opts.eps1_override : fam.zeta1 * fam.epsilon2 / 4.0;
    if (!(fam.zeta1 * fam.epsilon2 / 2.0 - fam.epsilon1 > 0.0))
        throw ValidationError("build_pipeline: zeta1*eps2/2 - eps1 must be positive");

    Rng master(seed);
    int attempt = 0;
    for (; attempt < opts.max_retries; ++attempt) {
        Rng rng = master.child(attempt);
        PreCode pre = random_precode(p, n, mbar, rng.child(0));
        Verifier scoring = build_verifier(pre.rows, fam, w);
        const EpsAReport eps_pre = eval_eps_A(scoring);
        const std::vector<int> flags = hamming_filter(pre.rows, fam.epsilon2);

        std::vector<double> score(pre.size());
        double mean = 0.0;
        for (std::size_t m = 0; m < pre.size(); ++m) {
            score[m] = eps_pre.per_member[m] + static_cast<double>(flags[m]);
            mean += score[m];
        }
        mean /= static_cast<double>(pre.size());
        const double eps3 = 3.0 * mean;

        std::vector<std::size_t> eligible;
        for (std::size_t m = 0; m < pre.size(); ++m)
            if (score[m] <= eps3) eligible.push_back(m);
        if (eligible.size() < mtilde) continue;
        std::stable_sort(eligible.begin(), eligible.end(),
                         [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
        eligible.resize(mtilde);
        std::sort(eligible.begin(), eligible.end());

        PreCode kept;
        kept.n = n;
        kept.alphabet_size = pre.alphabet_size;
        for (std::size_t m : eligible) kept.rows.push_back(pre.rows[m]);

        // The Hamming flags were computed against all sampled rows; the
        // distance condition must hold pairwise within the kept set.
        bool mufv = true;
        const double dist_threshold = fam.epsilon2 * static_cast<double>(n);
        for (std::size_t i = 0; i < kept.rows.size() && mufv; ++i)
            for (std::size_t j = i + 1; j < kept.rows.size() && mufv; ++j)
                if (!(static_cast<double>(hamming_distance(kept.rows[i], kept.rows[j])) > dist_threshold))
                    mufv = false;
        if (!mufv) continue;

        Verifier verifier = build_verifier(kept.rows, fam, w);
        const ToeplitzHash hash = ToeplitzHash::sample(k1, k2, rng.child(1));
        Code code = precode_to_code(kept, hash);

        const EpsAReport eps_kept = eval_eps_A(verifier);
        const DeltaCReport delta_c = eval_delta_C(verifier, opts.delta_c_word_budget);
        const DeltaBReport delta_b = eval_delta_B(code, w, opts.dense_budget);
        const EAlphaReport e_alpha =
            eval_E_alpha(kept, w, RenyiOrder(opts.alpha), opts.dense_budget, opts.sigma_opts);

        SecurityReport rep;
        rep.eps_A = eps_kept.max_eps;
        rep.eps_A_avg = eps_kept.avg_eps;
        rep.delta_B = delta_b.full_norm;
        rep.delta_B_half = delta_b.half;
        rep.delta_C = delta_c.value;
        rep.E_alpha = e_alpha.e_alpha_bits;
        const double margin = fam.zeta1 * fam.epsilon2 / 2.0 - fam.epsilon1;
        rep.chebyshev_delta_C_bound = fam.zeta2 / (static_cast<double>(n) * margin * margin);
        rep.leftover_hash_delta_B_bound =
            std::exp2(2.0 / opts.alpha - 1.0 +
                      (opts.alpha - 1.0) / opts.alpha * (static_cast<double>(k1) - rep.E_alpha));
        rep.n = n;
        rep.r1 = r1;
        rep.r2 = r2;
        rep.k1 = k1;
        rep.k2 = k2;
        rep.mbar = mbar;
        rep.mtilde = mtilde;
        rep.eps1 = fam.epsilon1;
        rep.eps2 = fam.epsilon2;
        rep.alpha = opts.alpha;
        rep.zeta1 = fam.zeta1;
        rep.zeta2 = fam.zeta2;
        rep.seed = seed;

        result.family = std::move(fam);
        result.kept_precode = std::move(kept);
        result.code = std::move(code);
        result.verifier = std::move(verifier);
        result.report = rep;
        result.retries_used = attempt;
        return result;
    }
    std::ostringstream os;
    os << "build_pipeline: no attempt of " << opts.max_retries
       << " produced " << mtilde << " rows satisfying the pairwise distance condition "
       << "(n eps2 = " << fam.epsilon2 * n << "); lower eps2 or the rates";
    throw ConvergenceError(os.str(), 0.0, 0.0);
}

void save_code(std::ostream& out, const Code& code, const std::vector<std::string>& alphabet) {
    out << "kind code\n";
    out << "n " << code.n << "\n";
    out << "alphabet";
    for (const auto& a : alphabet) out << ' ' << a;
    out << "\n";
    out << "M " << code.num_messages << "\n";
    out << "L " << code.num_lanes << "\n";
    for (std::size_t m = 0; m < code.num_messages; ++m) {
        for (std::size_t l = 0; l < code.num_lanes; ++l) {
            out << "row " << m << ' ' << l;
            for (int letter : code.word(m, l)) out << ' ' << letter;
            out << "\n";
        }
    }
}

void save_precode(std::ostream& out, const PreCode& pre, const std::vector<std::string>& alphabet) {
    out << "kind precode\n";
    out << "n " << pre.n << "\n";
    out << "alphabet";
    for (const auto& a : alphabet) out << ' ' << a;
    out << "\n";
    out << "Mtilde " << pre.size() << "\n";
    for (std::size_t m = 0; m < pre.size(); ++m) {
        out << "row " << m;
        for (int letter : pre.rows[m]) out << ' ' << letter;
        out << "\n";
    }
}

namespace {

std::vector<std::vector<std::string>> read_table_lines(std::istream& in) {
    std::vector<std::vector<std::string>> lines;
    std::string line;
    while (std::getline(in, line)) {
        const std::string body = line.substr(0, line.find('#'));
        std::istringstream is(body);
        std::vector<std::string> toks;
        std::string t;
        while (is >> t) toks.push_back(t);
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

}  // namespace

Code load_code(std::istream& in, const std::string& source_name) {
    auto fail = [&](const std::string& msg) -> void {
        throw ValidationError(source_name + ": " + msg);
    };
    Code code;
    std::size_t alphabet = 0;
    for (const auto& toks : read_table_lines(in)) {
        if (toks[0] == "kind") {
            if (toks.size() != 2 || toks[1] != "code") fail("expected 'kind code'");
        } else if (toks[0] == "n") {
            code.n = std::stoi(toks.at(1));
        } else if (toks[0] == "alphabet") {
            alphabet = toks.size() - 1;
            code.alphabet_size = static_cast<int>(alphabet);
        } else if (toks[0] == "M") {
            code.num_messages = std::stoull(toks.at(1));
        } else if (toks[0] == "L") {
            code.num_lanes = std::stoull(toks.at(1));
            code.table.assign(code.num_messages * code.num_lanes, Word());
        } else if (toks[0] == "row") {
            if (code.table.empty()) fail("'row' before M/L header");
            if (toks.size() != 3 + static_cast<std::size_t>(code.n)) fail("bad row arity");
            const std::size_t m = std::stoull(toks[1]);
            const std::size_t l = std::stoull(toks[2]);
            if (m >= code.num_messages || l >= code.num_lanes) fail("row index out of range");
            Word word(code.n);
            for (int i = 0; i < code.n; ++i) {
                word[i] = std::stoi(toks[3 + i]);
                if (word[i] < 0 || word[i] >= code.alphabet_size) fail("letter out of range");
            }
            code.table[m * code.num_lanes + l] = std::move(word);
        } else {
            fail("unexpected line starting with '" + toks[0] + "'");
        }
    }
    for (const Word& word : code.table)
        if (word.empty()) fail("incomplete table: some (m, l) rows are missing");
    return code;
}

PreCode load_precode(std::istream& in, const std::string& source_name) {
    auto fail = [&](const std::string& msg) -> void {
        throw ValidationError(source_name + ": " + msg);
    };
    PreCode pre;
    std::size_t expected = 0;
    for (const auto& toks : read_table_lines(in)) {
        if (toks[0] == "kind") {
            if (toks.size() != 2 || toks[1] != "precode") fail("expected 'kind precode'");
        } else if (toks[0] == "n") {
            pre.n = std::stoi(toks.at(1));
        } else if (toks[0] == "alphabet") {
            pre.alphabet_size = static_cast<int>(toks.size() - 1);
        } else if (toks[0] == "Mtilde") {
            expected = std::stoull(toks.at(1));
            pre.rows.assign(expected, Word());
        } else if (toks[0] == "row") {
            if (pre.rows.empty()) fail("'row' before Mtilde header");
            if (toks.size() != 2 + static_cast<std::size_t>(pre.n)) fail("bad row arity");
            const std::size_t m = std::stoull(toks[1]);
            if (m >= expected) fail("row index out of range");
            Word word(pre.n);
            for (int i = 0; i < pre.n; ++i) {
                word[i] = std::stoi(toks[2 + i]);
                if (word[i] < 0 || word[i] >= pre.alphabet_size) fail("letter out of range");
            }
            pre.rows[m] = std::move(word);
        } else {
            fail("unexpected line starting with '" + toks[0] + "'");
        }
    }
    for (const Word& word : pre.rows)
        if (word.empty()) fail("incomplete table: some rows are missing");
    return pre;
}

}  // namespace cqc
