#include "cqc/info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace cqc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Mass of rho outside sigma's support, using the library support cutoff.
double mass_outside_support(const Matrix& rho, const Eigensystem& sigma_eig) {
    double mass = 0.0;
    for (Eigen::Index j = 0; j < sigma_eig.values.size(); ++j) {
        if (sigma_eig.values[j] > tol::support) continue;
        const Vector v = sigma_eig.vectors.col(j);
        mass += std::max(0.0, (v.adjoint() * rho * v)(0, 0).real());
    }
    return mass;
}
}  // namespace

RenyiOrder::RenyiOrder(double a) : alpha(a) {
    if (!(a > 1.0) || !(a <= 2.0)) {
        std::ostringstream os;
        os << "RenyiOrder: alpha " << a << " outside (1, 2]";
        throw ValidationError(os.str());
    }
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw ValidationError("relative_entropy: dimension mismatch");
    const Eigensystem se = eig_hermitian(sigma.matrix());
    if (mass_outside_support(rho.matrix(), se) > 1e-10) return kInf;
    const Eigensystem re = eig_hermitian(rho.matrix());
    double tr_rho_log_rho = 0.0;
    for (Eigen::Index i = 0; i < re.values.size(); ++i)
        if (re.values[i] > 0.0) tr_rho_log_rho += re.values[i] * std::log2(re.values[i]);
    double tr_rho_log_sigma = 0.0;
    for (Eigen::Index j = 0; j < se.values.size(); ++j) {
        if (se.values[j] <= tol::support) continue;
        const Vector v = se.vectors.col(j);
        const double overlap = (v.adjoint() * rho.matrix() * v)(0, 0).real();
        tr_rho_log_sigma += overlap * std::log2(se.values[j]);
    }
    return tr_rho_log_rho - tr_rho_log_sigma;
}

double sandwiched_q(const Matrix& rho, const Eigensystem& sigma_eig, double alpha) {
    const double c = (alpha - 1.0) / (2.0 * alpha);
    RealVector inv_pow = RealVector::Zero(sigma_eig.values.size());
    for (Eigen::Index i = 0; i < sigma_eig.values.size(); ++i)
        if (sigma_eig.values[i] > tol::support)
            inv_pow[i] = std::pow(sigma_eig.values[i], -c);
    const Matrix sig_c = sigma_eig.vectors * inv_pow.asDiagonal() * sigma_eig.vectors.adjoint();
    const Matrix a = sig_c * rho * sig_c;
    const Eigensystem ae = eig_hermitian(a);
    double q = 0.0;
    for (Eigen::Index i = 0; i < ae.values.size(); ++i)
        if (ae.values[i] > 0.0) q += std::pow(ae.values[i], alpha);
    return q;
}

double sandwiched_divergence(const DensityMatrix& rho, const DensityMatrix& sigma, RenyiOrder order) {
    if (rho.dim() != sigma.dim()) throw ValidationError("sandwiched_divergence: dimension mismatch");
    const Eigensystem se = eig_hermitian(sigma.matrix());
    if (mass_outside_support(rho.matrix(), se) > 1e-10) return kInf;
    const double q = sandwiched_q(rho.matrix(), se, order.alpha);
    return std::log2(q) / (order.alpha - 1.0);
}

namespace {

// State of one solver iteration on the (possibly support-restricted) problem.
struct DenseObjective {
    const std::vector<double>& weights;
    const std::vector<Matrix>& states;  // restricted to the joint support
    double alpha;

    double c() const { return (alpha - 1.0) / (2.0 * alpha); }

    // Iterates are full rank by construction, so the inverse power uses the
    // true spectrum (floored at 1e-300), not the pseudo-inverse cutoff; with
    // the cutoff a near-singular iterate would silently drop divergent
    // directions and fake a lower objective.
    double value(const Eigensystem& sig_eig) const { return value_grad(sig_eig, nullptr, nullptr); }

    // Value, gradient (as a Hermitian matrix), and the Sibson aggregate
    //   B = sum_k q_k (sigma^{-c} rho_k sigma^{-c})^alpha
    // in one pass over the states.
    double value_grad(const Eigensystem& sig_eig, Matrix* grad, Matrix* sibson) const {
        const Eigen::Index d = sig_eig.values.size();
        RealVector s = sig_eig.values.cwiseMax(1e-300);
        RealVector s_c(d);
        for (Eigen::Index i = 0; i < d; ++i) s_c[i] = std::pow(s[i], -c());
        const Matrix sig_c = sig_eig.vectors * s_c.asDiagonal() * sig_eig.vectors.adjoint();

        double f = 0.0;
        Matrix csum = Matrix::Zero(d, d);
        if (sibson) sibson->setZero(d, d);
        for (std::size_t k = 0; k < states.size(); ++k) {
            if (weights[k] <= 0.0) continue;
            const Matrix r = sig_c * states[k];       // sigma^{-c} rho_k
            const Matrix a = r * sig_c;               // sigma^{-c} rho_k sigma^{-c}
            const Eigensystem ae = eig_hermitian(a);
            RealVector pow_am1(d), pow_a(d);
            for (Eigen::Index i = 0; i < d; ++i) {
                const double v = std::max(ae.values[i], 0.0);
                pow_am1[i] = v > 0.0 ? std::pow(v, alpha - 1.0) : 0.0;
                pow_a[i] = v > 0.0 ? std::pow(v, alpha) : 0.0;
            }
            f += weights[k] * pow_a.sum();
            const Matrix m = ae.vectors * pow_am1.asDiagonal() * ae.vectors.adjoint();
            // C_k = rho_k sigma^{-c} A^{a-1} + A^{a-1} sigma^{-c} rho_k = r^dag m + m r
            csum += weights[k] * (r.adjoint() * m + m * r);
            if (sibson) *sibson += weights[k] * (ae.vectors * pow_a.asDiagonal() * ae.vectors.adjoint());
        }
        if (grad) {
            // dTr[(sigma^{-c} rho sigma^{-c})^a] = a Tr[(D s^{-c})[dsigma] C];
            // pull back through the divided differences of t -> t^{-c}.
            Matrix ctil = sig_eig.vectors.adjoint() * csum * sig_eig.vectors;
            for (Eigen::Index i = 0; i < d; ++i) {
                for (Eigen::Index j = 0; j < d; ++j) {
                    const double si = s[i], sj = s[j];
                    double dd;
                    if (std::abs(si - sj) > 1e-12 * std::max(si, sj))
                        dd = (std::pow(si, -c()) - std::pow(sj, -c())) / (si - sj);
                    else
                        dd = -c() * std::pow(0.5 * (si + sj), -c() - 1.0);
                    ctil(i, j) *= dd;
                }
            }
            *grad = alpha * (sig_eig.vectors * ctil * sig_eig.vectors.adjoint());
            *grad = 0.5 * (*grad + grad->adjoint().eval());
        }
        return f;
    }
};

DensityMatrix normalize_state(Matrix m) {
    const double tr = m.trace().real();
    if (!(tr > 0.0)) throw ConvergenceError("sigma solver: candidate state has nonpositive trace", 0.0, 0.0);
    return DensityMatrix::unchecked(m / tr);
}

// Candidate sigma' propto (sigma^{(a-1)/2} B sigma^{(a-1)/2})^{1/a}; in the
// commuting case its fixed point is the closed-form Sibson minimizer.
Matrix sibson_candidate(const Eigensystem& sig_eig, const Matrix& b, double alpha) {
    const Eigen::Index d = sig_eig.values.size();
    RealVector s_half(d);
    for (Eigen::Index i = 0; i < d; ++i)
        s_half[i] = std::pow(std::max(sig_eig.values[i], 1e-300), 0.5 * (alpha - 1.0));
    const Matrix sh = sig_eig.vectors * s_half.asDiagonal() * sig_eig.vectors.adjoint();
    Matrix core = sh * b * sh;
    core = 0.5 * (core + core.adjoint().eval());
    const Eigensystem ce = eig_hermitian(core);
    RealVector root(d);
    for (Eigen::Index i = 0; i < d; ++i)
        root[i] = std::pow(std::max(ce.values[i], 0.0), 1.0 / alpha);
    Matrix out = ce.vectors * root.asDiagonal() * ce.vectors.adjoint();
    const double tr = out.trace().real();
    if (!(tr > 0.0)) return Matrix::Identity(d, d) / static_cast<double>(d);
    return out / tr;
}

// Floor tiny/negative eigenvalues so iterates stay strictly positive.
Matrix clamp_state(const Matrix& m, double floor_eps) {
    const Eigensystem es = eig_hermitian(m);
    RealVector v = es.values.cwiseMax(floor_eps);
    Matrix out = es.vectors * v.asDiagonal() * es.vectors.adjoint();
    return out / out.trace().real();
}

SigmaOptimum solve_classical_diagonal(const std::vector<double>& weights,
                                      const std::vector<const Matrix*>& states, double alpha) {
    const Eigen::Index d = states.front()->rows();
    RealVector t = RealVector::Zero(d);
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (weights[k] <= 0.0) continue;
        for (Eigen::Index j = 0; j < d; ++j) {
            const double w = std::max((*states[k])(j, j).real(), 0.0);
            t[j] += weights[k] * std::pow(w, alpha);
        }
    }
    double z = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) z += std::pow(t[j], 1.0 / alpha);
    Matrix sigma = Matrix::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j) sigma(j, j) = std::pow(t[j], 1.0 / alpha) / z;
    SigmaOptimum out;
    out.sigma = DensityMatrix::unchecked(std::move(sigma));
    out.linear_value = std::pow(z, alpha);
    out.gap = 0.0;
    out.iterations = 0;
    out.classical_path = true;
    return out;
}

bool all_diagonal(const std::vector<const Matrix*>& states) {
    for (const Matrix* m : states)
        for (Eigen::Index i = 0; i < m->rows(); ++i)
            for (Eigen::Index j = 0; j < m->cols(); ++j)
                if (i != j && std::abs((*m)(i, j)) > 1e-13) return false;
    return true;
}

}  // namespace

SigmaOptimum minimize_weighted_renyi(const std::vector<double>& weights,
                                     const std::vector<const Matrix*>& states,
                                     RenyiOrder order, const SigmaOptions& opts) {
    if (weights.size() != states.size() || states.empty())
        throw ValidationError("minimize_weighted_renyi: weight/state mismatch");
    const double alpha = order.alpha;
    if (!opts.force_dense && all_diagonal(states)) return solve_classical_diagonal(weights, states, alpha);

    const Eigen::Index full_dim = states.front()->rows();
    // The optimum is supported on the joint support of the weighted mixture;
    // restrict there so inverse powers stay bounded.
    Matrix mix = Matrix::Zero(full_dim, full_dim);
    double wsum = 0.0;
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (states[k]->rows() != full_dim)
            throw ValidationError("minimize_weighted_renyi: state dimension mismatch");
        mix += std::max(weights[k], 0.0) * (*states[k]);
        wsum += std::max(weights[k], 0.0);
    }
    if (wsum <= 0.0) throw ValidationError("minimize_weighted_renyi: all weights vanish");
    const Eigensystem mix_eig = eig_hermitian(mix / wsum);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < mix_eig.values.size(); ++i)
        if (mix_eig.values[i] > tol::support) keep.push_back(i);
    Matrix basis(full_dim, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) basis.col(static_cast<Eigen::Index>(i)) = mix_eig.vectors.col(keep[i]);
    const Eigen::Index d = basis.cols();

    std::vector<Matrix> restricted(states.size());
    for (std::size_t k = 0; k < states.size(); ++k)
        restricted[k] = basis.adjoint() * (*states[k]) * basis;

    DenseObjective obj{weights, restricted, alpha};

    Matrix sigma = basis.adjoint() * (mix / wsum) * basis;
    sigma = clamp_state(sigma, 1e-14);

    double f_prev = kInf;
    double f = 0.0;
    Matrix grad, sibson;
    double gap = kInf;
    int it = 0;
    for (; it < opts.max_iterations; ++it) {
        Eigensystem se = eig_hermitian(sigma);
        f = obj.value_grad(se, &grad, &sibson);
        const double tr_sg = (sigma * grad).trace().real();
        const Eigensystem ge = eig_hermitian(grad);
        gap = tr_sg - ge.values.minCoeff();

        const bool value_settled = std::abs(f_prev - f) <= opts.value_tol * (alpha - 1.0) * std::max(f, 1e-300) * std::log(2.0);
        if (gap <= opts.gap_tol * std::max(f, 1e-300) || (value_settled && gap <= 1e-8 * std::max(f, 1e-300))) break;
        f_prev = f;

        // Fixed-point proposal, damped toward the current iterate when it
        // fails to descend.
        const Matrix cand = sibson_candidate(se, sibson, alpha);
        bool moved = false;
        double t = 1.0;
        for (int bt = 0; bt < 12 && !moved; ++bt, t *= 0.5) {
            Matrix trial = (1.0 - t) * sigma + t * cand;
            trial = clamp_state(trial, 1e-300);
            const double f_trial = obj.value(eig_hermitian(trial));
            if (f_trial < f - 1e-16 * std::abs(f)) {
                sigma = std::move(trial);
                moved = true;
            }
        }
        if (!moved) {
            // Mirror-descent fallback: sigma' propto exp(log sigma - eta grad).
            RealVector logs = se.values.cwiseMax(1e-300).array().log().matrix();
            const Matrix log_sigma = se.vectors * logs.asDiagonal() * se.vectors.adjoint();
            const double gscale = std::max(std::abs(ge.values.maxCoeff()), std::abs(ge.values.minCoeff()));
            double eta = gscale > 0.0 ? 1.0 / gscale : 1.0;
            for (int bt = 0; bt < 40 && !moved; ++bt, eta *= 0.5) {
                Matrix expo = log_sigma - eta * grad;
                expo = 0.5 * (expo + expo.adjoint().eval());
                const Eigensystem ee = eig_hermitian(expo);
                const double shift = ee.values.maxCoeff();
                RealVector scaled(ee.values.size());
                for (Eigen::Index i = 0; i < ee.values.size(); ++i)
                    scaled[i] = std::exp(ee.values[i] - shift);
                Matrix trial = ee.vectors * scaled.asDiagonal() * ee.vectors.adjoint();
                trial /= trial.trace().real();
                trial = clamp_state(trial, 1e-300);
                const double f_trial = obj.value(eig_hermitian(trial));
                if (f_trial < f - 1e-16 * std::abs(f)) {
                    sigma = std::move(trial);
                    moved = true;
                }
            }
        }
        if (!moved) break;  // numerically stationary
    }

    if (it >= opts.max_iterations && gap > 1e-6 * std::max(f, 1e-300)) {
        std::ostringstream os;
        os << "sigma solver: no convergence after " << opts.max_iterations
           << " iterations (value " << f << ", relative gap " << gap / std::max(f, 1e-300) << ")";
        throw ConvergenceError(os.str(), f, gap);
    }

    // Re-evaluate at the returned point so value and sigma are consistent.
    Eigensystem se = eig_hermitian(sigma);
    SigmaOptimum out;
    out.linear_value = obj.value(se);
    Matrix embedded = basis * sigma * basis.adjoint();
    out.sigma = DensityMatrix::unchecked(0.5 * (embedded + embedded.adjoint().eval()));
    out.gap = gap;
    out.iterations = it;
    out.classical_path = false;
    return out;
}

ConditionalRenyi min_sigma_conditional(const CqChannel& w, const Distribution& p, RenyiOrder order,
                                       const SigmaOptions& opts) {
    if (p.size() != w.alphabet_size())
        throw ValidationError("min_sigma_conditional: distribution index mismatch");
    std::vector<double> weights(w.alphabet_size());
    std::vector<const Matrix*> states(w.alphabet_size());
    for (std::size_t x = 0; x < w.alphabet_size(); ++x) {
        weights[x] = std::pow(p[x], order.alpha);
        states[x] = &w.state(x).matrix();
    }
    SigmaOptimum opt = minimize_weighted_renyi(weights, states, order, opts);
    ConditionalRenyi out;
    out.sigma_star = opt.sigma;
    out.h_tilde_bits = -std::log2(opt.linear_value) / (order.alpha - 1.0);
    out.gap = opt.gap;
    out.iterations = opt.iterations;
    return out;
}

MutualRenyi sandwiched_mutual_info(const CqChannel& w, const Distribution& p, RenyiOrder order,
                                   const SigmaOptions& opts) {
    if (p.size() != w.alphabet_size())
        throw ValidationError("sandwiched_mutual_info: distribution index mismatch");
    std::vector<double> weights(p.probs());
    std::vector<const Matrix*> states(w.alphabet_size());
    for (std::size_t x = 0; x < w.alphabet_size(); ++x) states[x] = &w.state(x).matrix();
    SigmaOptimum opt = minimize_weighted_renyi(weights, states, order, opts);
    MutualRenyi out;
    out.sigma_star = opt.sigma;
    out.i_tilde_bits = std::log2(opt.linear_value) / (order.alpha - 1.0);
    out.gap = opt.gap;
    out.iterations = opt.iterations;
    return out;
}

double holevo_info(const CqChannel& w, const Distribution& p) {
    if (p.size() != w.alphabet_size())
        throw ValidationError("holevo_info: distribution index mismatch");
    double avg_entropy = 0.0;
    for (std::size_t x = 0; x < w.alphabet_size(); ++x)
        if (p[x] > 0.0) avg_entropy += p[x] * von_neumann_entropy(w.state(x));
    const double mix_entropy = von_neumann_entropy(w.average_state(p));
    return std::max(0.0, mix_entropy - avg_entropy);
}

double conditional_entropy(const CqChannel& w, const Distribution& p) {
    if (p.size() != w.alphabet_size())
        throw ValidationError("conditional_entropy: distribution index mismatch");
    double h = p.entropy_bits();
    for (std::size_t x = 0; x < w.alphabet_size(); ++x)
        if (p[x] > 0.0) h += p[x] * von_neumann_entropy(w.state(x));
    h -= von_neumann_entropy(w.average_state(p));
    return std::max(0.0, h);
}

std::vector<double> conditional_entropy_gradient(const CqChannel& w, const Distribution& p) {
    if (p.size() != w.alphabet_size())
        throw ValidationError("conditional_entropy_gradient: distribution index mismatch");
    const Eigensystem avg = eig_hermitian(w.average_state(p).matrix());
    std::vector<double> grad(w.alphabet_size());
    for (std::size_t x = 0; x < w.alphabet_size(); ++x) {
        double tr_w_log = 0.0;
        for (Eigen::Index j = 0; j < avg.values.size(); ++j) {
            if (avg.values[j] <= tol::support) continue;
            const Vector v = avg.vectors.col(j);
            const double overlap = (v.adjoint() * w.state(x).matrix() * v)(0, 0).real();
            tr_w_log += overlap * std::log2(avg.values[j]);
        }
        const double log_p = p[x] > 0.0 ? std::log2(p[x]) : -kInf;
        grad[x] = von_neumann_entropy(w.state(x)) + tr_w_log - log_p;
    }
    return grad;
}

namespace {

// Euclidean projection onto the probability simplex.
std::vector<double> project_simplex(std::vector<double> y) {
    std::vector<double> sorted = y;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double acc = 0.0, theta = 0.0;
    int rho = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        acc += sorted[i];
        const double t = (acc - 1.0) / static_cast<double>(i + 1);
        if (sorted[i] - t > 0.0) {
            rho = static_cast<int>(i + 1);
            theta = t;
        }
    }
    (void)rho;
    for (double& v : y) v = std::max(0.0, v - theta);
    double sum = std::accumulate(y.begin(), y.end(), 0.0);
    for (double& v : y) v /= sum;
    return y;
}

}  // namespace

CapacityResult capacity(const CqChannel& w, const CapacityOptions& opts) {
    const std::size_t k = w.alphabet_size();
    std::vector<double> p(k, 1.0 / static_cast<double>(k));
    double f = conditional_entropy(w, Distribution(p));
    double gap = kInf;
    int it = 0;
    const double floor_eps = 1e-12;
    for (; it < opts.max_iterations; ++it) {
        const std::vector<double> g = conditional_entropy_gradient(w, Distribution(p));
        double g_dot_p = 0.0, g_max = -kInf;
        for (std::size_t x = 0; x < k; ++x) {
            g_dot_p += g[x] * p[x];
            g_max = std::max(g_max, g[x]);
        }
        gap = g_max - g_dot_p;
        if (gap < opts.gap_tol) break;

        bool moved = false;
        double eta = 1.0;
        for (int bt = 0; bt < 50 && !moved; ++bt, eta *= 0.5) {
            std::vector<double> trial(k);
            for (std::size_t x = 0; x < k; ++x) trial[x] = p[x] + eta * (g[x] - g_dot_p);
            trial = project_simplex(std::move(trial));
            // Keep iterates interior: the objective has infinite inward slope
            // at the boundary, so a vanishing coordinate is never optimal.
            double sum = 0.0;
            for (double& v : trial) {
                v = std::max(v, floor_eps);
                sum += v;
            }
            for (double& v : trial) v /= sum;
            const double f_trial = conditional_entropy(w, Distribution(trial));
            if (f_trial > f + 1e-15) {
                p = std::move(trial);
                f = f_trial;
                moved = true;
            }
        }
        if (!moved) break;  // at numerical stationarity
    }
    CapacityResult out{f, Distribution(p), it, gap, gap < opts.gap_tol};
    return out;
}

}  // namespace cqc
