#pragma once

#include "cqc/channel.hpp"
#include "cqc/linalg.hpp"

namespace cqc {

// Separator observables {Xi_x}: Tr[W_x Xi_x] = 0, Tr[W_x' Xi_x] <= -zeta1 for
// x' != x, with the per-letter second moment bounded by zeta2. epsilon1 is
// the verifier threshold slack, epsilon2 the Hamming margin; their product
// condition zeta1 eps2 / 2 - eps1 > 0 keeps the binding bound nontrivial.
struct SeparatorFamily {
    std::vector<Matrix> xis;
    double zeta1 = 0.0;
    double zeta2 = 0.0;
    double epsilon1 = 0.0;
    double epsilon2 = 0.0;
};

struct SeparatorOptions {
    // Defaults: eps1 = zeta1/8 and eps2 = 8 eps1 / zeta1. Both are free
    // constants of the construction and can be overridden; note the default
    // pair gives eps2 = 1, which satisfies the margin condition but makes the
    // pairwise-distance filter unsatisfiable for more than one message, so
    // code-building callers pass tighter values.
    double epsilon1_override = -1.0;  // negative: use default policy
    double epsilon2_override = -1.0;
    int max_cut_rounds = 200;
};

// Per-letter LP (over the real vector space of Hermitian matrices): maximize
// the worst separation t subject to Tr[W_x A] = 0, Tr[W_x' A] <= -t, and
// ||A||_op <= 1 enforced by eigenvector cutting planes on top of a sufficient
// coefficient box. Throws a ValidationError naming the redundant letter when
// the channel fails non-redundancy.
SeparatorFamily find_separators(const CqChannel& w, const SeparatorOptions& opts = {});

struct SeparatorReport {
    std::vector<double> cs1_residuals;  // |Tr W_x Xi_x|
    double zeta1_recomputed = 0.0;
    double zeta2_recomputed = 0.0;
    double ll12_margin = 0.0;  // zeta1 eps2/2 - eps1
    double max_op_norm = 0.0;
    bool cs1_ok = false;
    bool cs2_ok = false;
    bool margin_ok = false;
};

// Recomputes every condition from scratch; never mutates the family.
SeparatorReport verify_separators(const CqChannel& w, const SeparatorFamily& fam);

}  // namespace cqc
