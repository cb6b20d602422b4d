#include "cqc/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cqc/channel.hpp"
#include "cqc/codes.hpp"
#include "cqc/info.hpp"
#include "cqc/protocol.hpp"
#include "cqc/report.hpp"
#include "cqc/separators.hpp"
#include "cqc/symmetric.hpp"

namespace cqc::cli {

namespace {

constexpr const char* kVersion = "cqc 0.1.0";

struct CommonOpts {
    std::string out = "-";
    std::string format = "json";
    unsigned threads = 0;
    long dense_budget = kDefaultDenseBudget;
    std::uint64_t word_budget = std::uint64_t{1} << 20;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--out", c.out, "Report path ('-' for stdout)");
    cmd->add_option("--format", c.format, "Report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--threads", c.threads, "Worker threads (0 = hardware concurrency)");
    cmd->add_option("--budget", c.dense_budget, "Dense tensor dimension budget")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--word-budget", c.word_budget, "Word enumeration budget");
}

void emit(const Json& report, const CommonOpts& c) {
    const std::string text = c.format == "csv" ? report.dump_csv() : report.dump_string();
    if (c.out == "-") {
        std::cout << text;
    } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) throw ValidationError("cannot open output file '" + c.out + "'");
        f << text;
    }
}

Json matrix_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index cidx = 0; cidx < m.cols(); ++cidx) {
            Json pair = Json::array();
            pair.push(m(r, cidx).real()).push(m(r, cidx).imag());
            row.push(std::move(pair));
        }
        rows.push(std::move(row));
    }
    return rows;
}

Json distribution_json(const std::vector<double>& p) {
    Json arr = Json::array();
    for (double v : p) arr.push(v);
    return arr;
}

Json report_shell(const std::string& subcommand) {
    Json j = Json::object();
    j.set("tool", kVersion);
    j.set("subcommand", subcommand);
    return j;
}

// State file: dim header, then dim rows of (re im) pairs.
DensityMatrix load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open state file '" + path + "'");
    int dim = 0;
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const std::string body = line.substr(0, line.find('#'));
        std::istringstream is(body);
        std::vector<std::string> toks;
        std::string t;
        while (is >> t) toks.push_back(t);
        if (toks.empty()) continue;
        if (toks[0] == "dim") {
            dim = std::stoi(toks.at(1));
        } else {
            std::vector<double> row;
            for (const auto& tok : toks) row.push_back(std::stod(tok));
            rows.push_back(std::move(row));
        }
    }
    if (dim <= 0) throw ValidationError(path + ": missing 'dim'");
    if (static_cast<int>(rows.size()) != dim)
        throw ValidationError(path + ": expected " + std::to_string(dim) + " rows");
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        if (static_cast<int>(rows[r].size()) != 2 * dim)
            throw ValidationError(path + ": row " + std::to_string(r) + " needs " +
                                  std::to_string(2 * dim) + " numbers (re im pairs)");
        for (int c = 0; c < dim; ++c) m(r, c) = Complex(rows[r][2 * c], rows[r][2 * c + 1]);
    }
    return DensityMatrix::from_matrix(std::move(m), path);
}

std::vector<Complex> parse_amplitudes(const std::string& spec) {
    std::vector<Complex> amps;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            amps.emplace_back(std::stod(item), 0.0);
        } else {
            amps.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
        }
    }
    if (amps.empty()) throw ValidationError("--amplitudes: empty list");
    return amps;
}

DensityMatrix pure_state(const std::vector<Complex>& amps) {
    double norm2 = 0.0;
    for (const Complex& a : amps) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-6)
        throw ValidationError("--amplitudes: squared norm " + std::to_string(norm2) +
                              " differs from 1 beyond 1e-6");
    const double scale = 1.0 / std::sqrt(norm2);
    const int d = static_cast<int>(amps.size());
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = scale * amps[i] * std::conj(scale * amps[j]);
    return DensityMatrix::unchecked(std::move(m));
}

Distribution parse_distribution(const std::string& spec, std::size_t expected) {
    if (spec.empty()) return Distribution::uniform(expected);
    std::vector<double> probs;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) probs.push_back(std::stod(item));
    if (probs.size() != expected)
        throw ValidationError("--p: expected " + std::to_string(expected) + " probabilities");
    return Distribution(std::move(probs));
}

Json security_report_json(const SecurityReport& r) {
    Json j = Json::object();
    j.set("eps_A", r.eps_A);
    j.set("eps_A_avg", r.eps_A_avg);
    j.set("delta_B", r.delta_B);
    j.set("delta_B_half", r.delta_B_half);
    j.set("delta_C", r.delta_C);
    j.set("E_alpha_bits", r.E_alpha);
    Json bounds = Json::object();
    bounds.set("chebyshev_delta_C", r.chebyshev_delta_C_bound);
    bounds.set("leftover_hash_delta_B", r.leftover_hash_delta_B_bound);
    j.set("bounds", std::move(bounds));
    Json params = Json::object();
    params.set("n", r.n);
    params.set("R1", r.r1);
    params.set("R2", r.r2);
    params.set("k1", r.k1);
    params.set("k2", r.k2);
    params.set("Mbar", r.mbar);
    params.set("Mtilde", r.mtilde);
    params.set("eps1", r.eps1);
    params.set("eps2", r.eps2);
    params.set("alpha", r.alpha);
    params.set("zeta1", r.zeta1);
    params.set("zeta2", r.zeta2);
    params.set("seed", r.seed);
    j.set("parameters", std::move(params));
    return j;
}

// Separator family with the pipeline's verifier-constant defaults; shared by
// audit-style subcommands so a rebuilt verifier matches build-code output.
SeparatorFamily family_for_audit(const CqChannel& w, double eps1, double eps2) {
    SeparatorFamily fam = find_separators(w);
    fam.epsilon2 = eps2 >= 0.0 ? eps2 : 0.2;
    fam.epsilon1 = eps1 >= 0.0 ? eps1 : fam.zeta1 * fam.epsilon2 / 4.0;
    if (!(fam.zeta1 * fam.epsilon2 / 2.0 - fam.epsilon1 > 0.0))
        throw ValidationError("zeta1*eps2/2 - eps1 must be positive for the verifier constants");
    return fam;
}

int run_capacity(const std::string& channel_path, const CommonOpts& common) {
    const CqChannel w = load_channel_file(channel_path);
    const CapacityResult res = capacity(w);
    Json j = report_shell("capacity");
    Json config = Json::object();
    config.set("channel", channel_path);
    j.set("config", std::move(config));
    Json result = Json::object();
    result.set("value_bits", res.value_bits);
    result.set("argmax_P", distribution_json(res.argmax_p.probs()));
    result.set("certificate_gap", res.certificate_gap);
    result.set("iterations", res.iterations);
    result.set("certified", res.certified);
    j.set("result", std::move(result));
    emit(j, common);
    return 0;
}

int run_symmetric(const std::string& group, int d, int mult, const std::string& amplitudes,
                  const std::string& rho_path, const CommonOpts& common) {
    DensityMatrix rho;
    if (!amplitudes.empty() && !rho_path.empty())
        throw ValidationError("give either --amplitudes or --rho, not both");
    std::optional<ProjectiveRep> rep;
    if (group == "zd") {
        rep.emplace(clock_rep(d));
    } else if (group == "zd2") {
        rep.emplace(weyl_heisenberg_rep(d, mult > 0 ? mult : d));
    } else {
        throw ValidationError("--group must be zd or zd2");
    }
    if (!amplitudes.empty()) {
        auto amps = parse_amplitudes(amplitudes);
        if (static_cast<int>(amps.size()) != rep->dim())
            throw ValidationError("--amplitudes: expected " + std::to_string(rep->dim()) +
                                  " entries for this representation");
        rho = pure_state(amps);
    } else if (!rho_path.empty()) {
        rho = load_state_file(rho_path);
        if (rho.dim() != rep->dim())
            throw ValidationError("--rho: dimension " + std::to_string(rho.dim()) +
                                  " does not match the representation dimension " +
                                  std::to_string(rep->dim()));
    } else {
        throw ValidationError("one of --amplitudes or --rho is required");
    }

    const SymmetricCapacity res = symmetric_capacity(*rep, rho);
    Json j = report_shell("symmetric");
    Json config = Json::object();
    config.set("group", group);
    config.set("d", d);
    if (group == "zd2") config.set("multiplicity", mult > 0 ? mult : d);
    if (!amplitudes.empty()) config.set("amplitudes", amplitudes);
    if (!rho_path.empty()) config.set("rho", rho_path);
    j.set("config", std::move(config));

    Json result = Json::object();
    Json stab = Json::array();
    for (int g : res.stabilizer_elements) stab.push(rep->group().name(g));
    result.set("stabilizer", std::move(stab));
    Json cosets = Json::array();
    for (std::size_t g = 0; g < res.induced.coset_of.size(); ++g) {
        Json entry = Json::object();
        entry.set("element", rep->group().name(static_cast<int>(g)));
        entry.set("coset", res.induced.channel.label(res.induced.coset_of[g]));
        cosets.push(std::move(entry));
    }
    result.set("coset_map", std::move(cosets));
    Json comps = Json::array();
    for (const auto& c : res.decomposition.components) {
        Json entry = Json::object();
        entry.set("label", c.label);
        entry.set("d_lambda", c.d_lambda);
        entry.set("n_lambda", c.n_lambda);
        entry.set("p_lambda", c.p_lambda);
        entry.set("entropy_bits", c.p_lambda > 1e-15 ? von_neumann_entropy(c.rho_lambda) : 0.0);
        comps.push(std::move(entry));
    }
    result.set("components", std::move(comps));
    result.set("capacity_bits", res.capacity_bits);
    result.set("czj_gap", res.czj_gap);
    result.set("cross_check_gap", res.cross_check_gap);
    j.set("result", std::move(result));
    emit(j, common);
    return 0;
}

int run_separators(const std::string& channel_path, double eps1, double eps2,
                   const CommonOpts& common) {
    const CqChannel w = load_channel_file(channel_path);
    SeparatorOptions opts;
    opts.epsilon1_override = eps1;
    opts.epsilon2_override = eps2;
    const SeparatorFamily fam = find_separators(w, opts);
    const SeparatorReport rep = verify_separators(w, fam);

    Json j = report_shell("separators");
    Json config = Json::object();
    config.set("channel", channel_path);
    config.set("eps1_override", eps1);
    config.set("eps2_override", eps2);
    j.set("config", std::move(config));
    Json result = Json::object();
    Json xis = Json::array();
    for (std::size_t x = 0; x < fam.xis.size(); ++x) {
        Json entry = Json::object();
        entry.set("letter", w.label(x));
        entry.set("xi", matrix_json(fam.xis[x]));
        entry.set("cs1_residual", rep.cs1_residuals[x]);
        xis.push(std::move(entry));
    }
    result.set("separators", std::move(xis));
    result.set("zeta1", fam.zeta1);
    result.set("zeta2", fam.zeta2);
    result.set("epsilon1", fam.epsilon1);
    result.set("epsilon2", fam.epsilon2);
    result.set("ll12_margin", rep.ll12_margin);
    result.set("max_op_norm", rep.max_op_norm);
    j.set("result", std::move(result));
    emit(j, common);
    return 0;
}

int run_build_code(const std::string& channel_path, const std::string& p_spec, int n, double r1,
                   double r2, std::uint64_t seed, double alpha, double eps1, double eps2,
                   const std::string& code_out, const std::string& precode_out,
                   const CommonOpts& common) {
    const CqChannel w = load_channel_file(channel_path);
    const Distribution p = parse_distribution(p_spec, w.alphabet_size());
    PipelineOptions opts;
    opts.eps1_override = eps1;
    opts.eps2_override = eps2;
    opts.alpha = alpha;
    opts.dense_budget = common.dense_budget;
    opts.delta_c_word_budget = common.word_budget;
    const PipelineResult res = build_pipeline(w, p, n, r1, r2, seed, opts);

    if (!code_out.empty()) {
        std::ofstream f(code_out, std::ios::binary);
        if (!f) throw ValidationError("cannot open '" + code_out + "'");
        save_code(f, res.code, w.labels());
    }
    if (!precode_out.empty()) {
        std::ofstream f(precode_out, std::ios::binary);
        if (!f) throw ValidationError("cannot open '" + precode_out + "'");
        save_precode(f, res.kept_precode, w.labels());
    }

    Json j = report_shell("build-code");
    Json config = Json::object();
    config.set("channel", channel_path);
    config.set("P", distribution_json(p.probs()));
    config.set("n", n);
    config.set("R1", r1);
    config.set("R2", r2);
    config.set("seed", seed);
    config.set("alpha", alpha);
    config.set("eps1_override", eps1);
    config.set("eps2_override", eps2);
    config.set("dense_budget", static_cast<std::int64_t>(common.dense_budget));
    config.set("word_budget", common.word_budget);
    j.set("config", std::move(config));
    Json result = security_report_json(res.report);
    result.set("retries_used", res.retries_used);
    Json warnings = Json::array();
    for (const auto& wmsg : res.warnings) warnings.push(wmsg);
    result.set("warnings", std::move(warnings));
    j.set("result", std::move(result));
    emit(j, common);
    return 0;
}

int run_audit(const std::string& channel_path, const std::string& code_path, double alpha,
              double eps1, double eps2, const CommonOpts& common) {
    const CqChannel w = load_channel_file(channel_path);
    std::ifstream cf(code_path);
    if (!cf) throw ValidationError("cannot open code file '" + code_path + "'");
    const Code code = load_code(cf, code_path);
    if (code.alphabet_size != static_cast<int>(w.alphabet_size()))
        throw ValidationError("audit: code alphabet differs from the channel alphabet");

    const SeparatorFamily fam = family_for_audit(w, eps1, eps2);
    const Verifier verifier = build_verifier(code.table, fam, w);
    const EpsAReport eps_rep = eval_eps_A(verifier);
    const DeltaCReport delta_c = eval_delta_C(verifier, common.word_budget);
    const DeltaBReport delta_b = eval_delta_B(code, w, common.dense_budget);
    PreCode as_pre;
    as_pre.n = code.n;
    as_pre.alphabet_size = code.alphabet_size;
    as_pre.rows = code.table;
    const EAlphaReport e_alpha = eval_E_alpha(as_pre, w, RenyiOrder(alpha), common.dense_budget);

    const double k1 = std::log2(static_cast<double>(code.num_messages));
    Json j = report_shell("audit");
    Json config = Json::object();
    config.set("channel", channel_path);
    config.set("code", code_path);
    config.set("alpha", alpha);
    config.set("eps1", fam.epsilon1);
    config.set("eps2", fam.epsilon2);
    j.set("config", std::move(config));
    Json result = Json::object();
    result.set("eps_A", eps_rep.max_eps);
    result.set("eps_A_avg", eps_rep.avg_eps);
    result.set("delta_C", delta_c.value);
    result.set("delta_B", delta_b.full_norm);
    result.set("delta_B_half", delta_b.half);
    result.set("E_alpha_bits", e_alpha.e_alpha_bits);
    Json bounds = Json::object();
    const double margin = fam.zeta1 * fam.epsilon2 / 2.0 - fam.epsilon1;
    bounds.set("chebyshev_delta_C", fam.zeta2 / (code.n * margin * margin));
    bounds.set("leftover_hash_delta_B",
               std::exp2(2.0 / alpha - 1.0 + (alpha - 1.0) / alpha * (k1 - e_alpha.e_alpha_bits)));
    result.set("bounds", std::move(bounds));
    j.set("result", std::move(result));
    emit(j, common);
    return 0;
}

int run_simulate(const std::string& channel_path, const std::string& code_path, double eps1,
                 double eps2, std::uint64_t seed, std::uint64_t trials, const std::string& mode,
                 const CommonOpts& common) {
    const CqChannel w = load_channel_file(channel_path);
    std::ifstream cf(code_path);
    if (!cf) throw ValidationError("cannot open code file '" + code_path + "'");
    const Code code = load_code(cf, code_path);
    const SeparatorFamily fam = family_for_audit(w, eps1, eps2);
    const ProtocolInstance inst = make_protocol_instance(code, fam, w);

    Json j = report_shell("simulate");
    Json config = Json::object();
    config.set("channel", channel_path);
    config.set("code", code_path);
    config.set("eps1", fam.epsilon1);
    config.set("eps2", fam.epsilon2);
    config.set("seed", seed);
    config.set("trials", trials);
    config.set("mode", mode);
    j.set("config", std::move(config));

    Json result = Json::object();
    const ProtocolReport rep = audit_protocol(inst, common.dense_budget, common.word_budget);
    Json exact = Json::object();
    exact.set("eps_a", rep.eps_a);
    exact.set("eps_a_half", rep.eps_a_half);
    exact.set("delta_a", rep.delta_a);
    exact.set("eps_A", rep.eps_A);
    exact.set("delta_C", rep.delta_C);
    exact.set("correctness", rep.correctness);
    exact.set("fano_error", rep.fano_error);
    exact.set("fano_bound", rep.fano_bound);
    exact.set("good_prob", rep.good_prob);
    exact.set("good_prob_bound", rep.good_prob_bound);
    exact.set("fano_good_empty", rep.fano_good_empty);
    exact.set("converse_lhs", rep.converse_lhs);
    exact.set("converse_rhs", rep.converse_rhs);
    exact.set("converse_holds", rep.converse_holds);
    result.set("exact", std::move(exact));

    if (mode == "sampled") {
        Rng rng(seed);
        std::uint64_t accepts = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            const std::size_t m = rng.next_below(code.num_messages);
            const std::size_t l = rng.next_below(code.num_lanes);
            if (honest_run_sampled(inst, m, l, rng)) ++accepts;
        }
        Json sampled = Json::object();
        sampled.set("honest_trials", trials);
        sampled.set("honest_accepts", accepts);
        sampled.set("honest_acceptance_rate",
                    trials ? static_cast<double>(accepts) / static_cast<double>(trials) : 0.0);
        result.set("sampled", std::move(sampled));
    }
    j.set("result", std::move(result));
    emit(j, common);
    return 0;
}

int run_converse_check(const std::string& channel_path, const std::string& code_path, double eps1,
                       double eps2, const CommonOpts& common) {
    const CqChannel w = load_channel_file(channel_path);
    std::ifstream cf(code_path);
    if (!cf) throw ValidationError("cannot open code file '" + code_path + "'");
    const Code code = load_code(cf, code_path);
    const SeparatorFamily fam = family_for_audit(w, eps1, eps2);
    const ProtocolInstance inst = make_protocol_instance(code, fam, w);

    const ConcealingReport conceal = protocol_eps_a(inst, common.dense_budget);
    double eps_A = 0.0;
    for (std::size_t m = 0; m < code.num_messages; ++m)
        for (std::size_t l = 0; l < code.num_lanes; ++l)
            eps_A = std::max(eps_A, 1.0 - honest_accept_prob(inst, m, l));
    const ActiveCheat active = active_cheat_best(inst, common.word_budget);
    const double delta_a = std::max(eps_A, active.value);
    const ConverseCheck conv = converse_check(inst, conceal.eps_a_half, delta_a);

    Json j = report_shell("converse-check");
    Json config = Json::object();
    config.set("channel", channel_path);
    config.set("code", code_path);
    config.set("eps1", fam.epsilon1);
    config.set("eps2", fam.epsilon2);
    j.set("config", std::move(config));
    Json result = Json::object();
    result.set("epsilon", conceal.eps_a_half);
    result.set("delta", delta_a);
    result.set("rate_bits", conv.rate_bits);
    result.set("H_X_given_Y", conv.h_xy);
    result.set("eta", conv.eta);
    result.set("lhs", conv.lhs);
    result.set("rhs", conv.rhs);
    result.set("holds", conv.holds);
    result.set("P_empirical", distribution_json(conv.p_empirical));
    j.set("result", std::move(result));
    emit(j, common);
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Commitment-capacity toolkit for classical-quantum channels"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config");
    app.require_subcommand(1);

    CommonOpts common;

    // capacity
    auto* cap = app.add_subcommand("capacity", "sup_P H(X|Y)_P over the input simplex");
    std::string cap_channel;
    cap->add_option("--channel", cap_channel, "Channel spec file")->required();

    // symmetric
    auto* sym = app.add_subcommand("symmetric", "Closed-form capacity of a symmetric channel");
    std::string sym_group = "zd", sym_amps, sym_rho;
    int sym_d = 2, sym_mult = 0;
    sym->add_option("--group", sym_group, "Group type: zd or zd2")
        ->check(CLI::IsMember({"zd", "zd2"}));
    sym->add_option("--d", sym_d, "Cyclic order d")->check(CLI::PositiveNumber);
    sym->add_option("--multiplicity", sym_mult, "Multiplicity factor dimension (zd2; default d)");
    sym->add_option("--amplitudes", sym_amps, "Pure state amplitudes re[:im], comma separated");
    sym->add_option("--rho", sym_rho, "State file");

    // separators
    auto* sep = app.add_subcommand("separators", "Separator observables with margins");
    std::string sep_channel;
    double sep_eps1 = -1.0, sep_eps2 = -1.0;
    sep->add_option("--channel", sep_channel, "Channel spec file")->required();
    sep->add_option("--eps1", sep_eps1, "Verifier slack override");
    sep->add_option("--eps2", sep_eps2, "Hamming margin override");

    // build-code
    auto* build = app.add_subcommand("build-code", "Random-coding pipeline with security report");
    std::string build_channel, build_p, build_code_out, build_precode_out;
    int build_n = 6;
    double build_r1 = 0.2, build_r2 = 0.6, build_alpha = 2.0;
    double build_eps1 = -1.0, build_eps2 = -1.0;
    std::uint64_t build_seed = 1;
    build->add_option("--channel", build_channel, "Channel spec file")->required();
    build->add_option("--p", build_p, "Input distribution, comma separated (default uniform)");
    build->add_option("--n", build_n, "Block length")->check(CLI::PositiveNumber);
    build->add_option("--r1", build_r1, "Message rate R1")->required();
    build->add_option("--r2", build_r2, "Randomness rate R2")->required();
    build->add_option("--seed", build_seed, "Master seed");
    build->add_option("--alpha", build_alpha, "Renyi order in (1,2]");
    build->add_option("--eps1", build_eps1, "Verifier slack override");
    build->add_option("--eps2", build_eps2, "Hamming margin override");
    build->add_option("--code-out", build_code_out, "Write the hashed code table here");
    build->add_option("--precode-out", build_precode_out, "Write the kept pre-code table here");

    // audit
    auto* audit = app.add_subcommand("audit", "Re-measure security parameters of a code table");
    std::string audit_channel, audit_code;
    double audit_alpha = 2.0, audit_eps1 = -1.0, audit_eps2 = -1.0;
    audit->add_option("--channel", audit_channel, "Channel spec file")->required();
    audit->add_option("--code", audit_code, "Code table file")->required();
    audit->add_option("--alpha", audit_alpha, "Renyi order in (1,2]");
    audit->add_option("--eps1", audit_eps1, "Verifier slack override");
    audit->add_option("--eps2", audit_eps2, "Hamming margin override");

    // simulate
    auto* simc = app.add_subcommand("simulate", "Honest/cheating protocol runs");
    std::string sim_channel, sim_code, sim_mode = "exact";
    double sim_eps1 = -1.0, sim_eps2 = -1.0;
    std::uint64_t sim_seed = 1, sim_trials = 10000;
    simc->add_option("--channel", sim_channel, "Channel spec file")->required();
    simc->add_option("--code", sim_code, "Code table file")->required();
    simc->add_option("--eps1", sim_eps1, "Verifier slack override");
    simc->add_option("--eps2", sim_eps2, "Hamming margin override");
    simc->add_option("--seed", sim_seed, "Sampling seed");
    simc->add_option("--trials", sim_trials, "Sampled honest runs");
    simc->add_option("--mode", sim_mode, "exact or sampled")
        ->check(CLI::IsMember({"exact", "sampled"}));

    // converse-check
    auto* conv = app.add_subcommand("converse-check", "Finite-n converse inequality check");
    std::string conv_channel, conv_code;
    double conv_eps1 = -1.0, conv_eps2 = -1.0;
    conv->add_option("--channel", conv_channel, "Channel spec file")->required();
    conv->add_option("--code", conv_code, "Code table file")->required();
    conv->add_option("--eps1", conv_eps1, "Verifier slack override");
    conv->add_option("--eps2", conv_eps2, "Hamming margin override");

    for (CLI::App* cmd : {cap, sym, sep, build, audit, simc, conv}) add_common(cmd, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help / --version
            return app.exit(e);
        }
        Json err = Json::object();
        Json detail = Json::object();
        detail.set("type", "validation");
        detail.set("message", std::string(e.what()));
        err.set("error", std::move(detail));
        std::cerr << err.dump_string();
        return 2;
    }

    try {
        set_num_threads(common.threads);
        if (cap->parsed()) return run_capacity(cap_channel, common);
        if (sym->parsed())
            return run_symmetric(sym_group, sym_d, sym_mult, sym_amps, sym_rho, common);
        if (sep->parsed()) return run_separators(sep_channel, sep_eps1, sep_eps2, common);
        if (build->parsed())
            return run_build_code(build_channel, build_p, build_n, build_r1, build_r2, build_seed,
                                  build_alpha, build_eps1, build_eps2, build_code_out,
                                  build_precode_out, common);
        if (audit->parsed())
            return run_audit(audit_channel, audit_code, audit_alpha, audit_eps1, audit_eps2, common);
        if (simc->parsed())
            return run_simulate(sim_channel, sim_code, sim_eps1, sim_eps2, sim_seed, sim_trials,
                                sim_mode, common);
        if (conv->parsed())
            return run_converse_check(conv_channel, conv_code, conv_eps1, conv_eps2, common);
        throw ValidationError("no subcommand given");
    } catch (const std::exception& e) {
        std::string type = "internal";
        int code = 1;
        if (dynamic_cast<const ValidationError*>(&e)) {
            type = "validation";
            code = 2;
        } else if (dynamic_cast<const ResourceError*>(&e)) {
            type = "resource";
            code = 3;
        } else if (dynamic_cast<const ConvergenceError*>(&e)) {
            type = "non-convergence";
            code = 4;
        }
        Json err = Json::object();
        Json detail = Json::object();
        detail.set("type", type);
        detail.set("message", std::string(e.what()));
        err.set("error", std::move(detail));
        std::cerr << err.dump_string();
        return code;
    }
}

}  // namespace cqc::cli
