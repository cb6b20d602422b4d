#pragma once

#include "cqc/channel.hpp"
#include "cqc/linalg.hpp"

namespace cqc {

// Renyi order restricted to (1, 2], the range the hashing bound needs.
struct RenyiOrder {
    explicit RenyiOrder(double a);
    double alpha;
};

// D(rho || sigma) in bits; +infinity when supp(rho) is not inside supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

// Sandwiched divergence
//   D_a(rho || sigma) = (1/(a-1)) log2 Tr (sigma^{-(a-1)/2a} rho sigma^{-(a-1)/2a})^a,
// pseudo-inverse on sigma's support; +infinity on support violation.
double sandwiched_divergence(const DensityMatrix& rho, const DensityMatrix& sigma, RenyiOrder order);

// Tr (sigma^{-c} rho sigma^{-c})^alpha = 2^{(alpha-1) D_alpha(rho||sigma)} for a
// normalized rho. Building block shared by the solver and by direct bounds.
double sandwiched_q(const Matrix& rho, const Eigensystem& sigma_eig, double alpha);

struct SigmaOptions {
    int max_iterations = 500;
    double value_tol = 1e-10;      // successive objective change, log2 scale
    double gap_tol = 1e-11;        // relative first-order optimality gap
    bool force_dense = false;      // bypass the diagonal closed form
};

// Minimizer of f(sigma) = sum_k q_k 2^{(alpha-1) D_alpha(rho_k || sigma)} over
// density operators. Convex in sigma for alpha in (1,2]; solved by the
// Sibson-form fixed-point update safeguarded with certified descent steps.
struct SigmaOptimum {
    DensityMatrix sigma;
    double linear_value = 0.0;     // f(sigma) at the returned point
    double gap = 0.0;              // first-order bound on f(sigma) - f*
    int iterations = 0;
    bool classical_path = false;
};

SigmaOptimum minimize_weighted_renyi(const std::vector<double>& weights,
                                     const std::vector<const Matrix*>& states,
                                     RenyiOrder order, const SigmaOptions& opts = {});

// H_a(X|Y) = -min_sigma (1/(a-1)) log2 sum_x P(x)^a 2^{(a-1) D_a(W_x||sigma)}.
struct ConditionalRenyi {
    DensityMatrix sigma_star;
    double h_tilde_bits = 0.0;
    double gap = 0.0;
    int iterations = 0;
};
ConditionalRenyi min_sigma_conditional(const CqChannel& w, const Distribution& p, RenyiOrder order,
                                       const SigmaOptions& opts = {});

// I_a(X;Y) stored as the nonnegative divergence form
//   (1/(a-1)) log2 min_sigma sum_x P(x) 2^{(a-1) D_a(W_x||sigma)},
// whose minimizer sigma_{P,a} is the reference state of the random-coding
// identity.
struct MutualRenyi {
    DensityMatrix sigma_star;
    double i_tilde_bits = 0.0;
    double gap = 0.0;
    int iterations = 0;
};
MutualRenyi sandwiched_mutual_info(const CqChannel& w, const Distribution& p, RenyiOrder order,
                                   const SigmaOptions& opts = {});

// I(X;Y) = S(W_P) - sum_x P(x) S(W_x) >= 0.
double holevo_info(const CqChannel& w, const Distribution& p);

// H(X|Y) = H(P) + sum_x P(x) S(W_x) - S(W_P), in [0, log2 |X|].
double conditional_entropy(const CqChannel& w, const Distribution& p);

// Simplex gradient d/dP(x) H(X|Y)_P = S(W_x) + Tr[W_x log2 W_P] - log2 P(x).
// Requires P interior (the slope toward any zero coordinate is +infinity).
std::vector<double> conditional_entropy_gradient(const CqChannel& w, const Distribution& p);

struct CapacityOptions {
    int max_iterations = 10000;
    double gap_tol = 1e-7;
};

struct CapacityResult {
    double value_bits = 0.0;
    Distribution argmax_p;
    int iterations = 0;
    double certificate_gap = 0.0;
    bool certified = false;
};

// sup_P H(X|Y)_P by projected gradient ascent with backtracking from the
// uniform start; the gap certifies first-order optimality of the concave
// objective over the simplex.
CapacityResult capacity(const CqChannel& w, const CapacityOptions& opts = {});

}  // namespace cqc
