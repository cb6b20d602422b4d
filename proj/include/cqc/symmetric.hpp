#pragma once

#include "cqc/channel.hpp"
#include "cqc/group.hpp"
#include "cqc/linalg.hpp"

namespace cqc {

// Projective unitary representation: U_e = I and U_g U_g' = e^{i theta} U_{gg'}.
// The supported decomposition classes are tracked by the constructors.
class ProjectiveRep {
  public:
    enum class Kind { CommutativeTrivialCocycle, WeylHeisenberg, Generic };

    ProjectiveRep(FiniteGroup group, std::vector<Matrix> unitaries, Kind kind = Kind::Generic);

    const FiniteGroup& group() const { return group_; }
    const Matrix& unitary(int g) const { return unitaries_[g]; }
    int dim() const { return static_cast<int>(unitaries_.front().rows()); }
    Kind kind() const { return kind_; }

    // Weyl-Heisenberg metadata (irrep dim, multiplicity); zero otherwise.
    int wh_irrep_dim() const { return wh_irrep_dim_; }
    int wh_multiplicity() const { return wh_multiplicity_; }

    friend ProjectiveRep weyl_heisenberg_rep(int d, int multiplicity);

  private:
    FiniteGroup group_;
    std::vector<Matrix> unitaries_;
    Kind kind_;
    int wh_irrep_dim_ = 0;
    int wh_multiplicity_ = 0;
};

// Z_d clock representation U_g = Z^g on C^d (diagonal phases).
ProjectiveRep clock_rep(int d);

// Z_d acting as the scalar e^{2 pi i g/d} on C^n: one irrep with multiplicity n.
ProjectiveRep scalar_rep(int d, int n);

// Z_d^2 discrete Weyl representation U_{(j,k)} = X^j Z^k tensored with an
// identity multiplicity factor of the given dimension.
ProjectiveRep weyl_heisenberg_rep(int d, int multiplicity);

// W_g = U_g rho U_g^dagger, labelled by group element names.
CqChannel make_symmetric_channel(const ProjectiveRep& rep, const DensityMatrix& rho);

// Stabilizer K = {g : W_g = W_e} under trace distance <= tol::state_eq;
// verified to be a subgroup (an inconsistency means the tolerance merged
// states it should not have).
std::vector<int> stabilizer(const ProjectiveRep& rep, const CqChannel& channel);

struct InducedChannel {
    CqChannel channel;          // one representative state per coset
    FiniteGroup quotient;       // G / K
    std::vector<int> coset_of;  // original element -> coset index
    std::vector<int> representatives;
};

InducedChannel induce(const ProjectiveRep& rep, const CqChannel& channel,
                      const std::vector<int>& k);

// Non-redundancy margins: for each letter, the squared Frobenius distance of
// W_x to the convex hull of the other outputs (projected-gradient QP).
struct NrReport {
    std::vector<double> margins;
    double threshold = tol::nr_margin;
    bool holds = false;
    int worst_letter = -1;
};
NrReport check_NR(const CqChannel& w);

struct IsotypicComponent {
    std::string label;
    int d_lambda = 1;        // irrep dimension
    int n_lambda = 0;        // multiplicity
    Matrix projector;        // onto H_lambda (x) C^{n_lambda}
    double p_lambda = 0.0;   // Tr P rho
    DensityMatrix rho_lambda;  // state on the multiplicity space (when p > 0)
};

struct IsotypicDecomposition {
    std::vector<IsotypicComponent> components;
};

// Supported classes: commutative groups with trivial cocycle (simultaneous
// eigenspaces grouped by character) and the Weyl-Heisenberg construction.
// Anything else fails loudly.
IsotypicDecomposition isotypic_decompose(const ProjectiveRep& rep, const DensityMatrix& rho);

// sum_lambda p (S(rho_lambda) + log2 (d_lambda / p)); equals the entropy of
// the uniform-average output state.
double average_state_entropy(const IsotypicDecomposition& decomp);

struct SymmetricCapacity {
    double capacity_bits = 0.0;
    std::vector<int> stabilizer_elements;
    InducedChannel induced;
    IsotypicDecomposition decomposition;
    double czj_gap = 0.0;          // |closed-form avg entropy - direct S(W_bar)|
    double cross_check_gap = 0.0;  // |closed form - H(X|Y) at uniform on the induced channel|
};

// Closed-form commitment capacity log2|G/K| + S(rho) - S(W_bar) with the
// average-state entropy evaluated through the isotypic decomposition.
SymmetricCapacity symmetric_capacity(const ProjectiveRep& rep, const DensityMatrix& rho);

}  // namespace cqc
