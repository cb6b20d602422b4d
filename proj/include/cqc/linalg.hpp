#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "cqc/common.hpp"

namespace cqc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct Eigensystem {
    RealVector values;   // ascending
    Matrix vectors;      // columns are the orthonormal eigenbasis
};

// Max |A(i,j) - conj(A(j,i))| over all entries.
double hermiticity_defect(const Matrix& a);

bool is_hermitian(const Matrix& a, double tolerance = tol::herm);

// Spectral decomposition of a Hermitian matrix. The single spectral primitive
// of the library; inputs are symmetrized (A + A^dagger)/2 before solving so a
// 1e-10-level defect cannot leak into the eigenbasis.
Eigensystem eig_hermitian(const Matrix& a);

// Hermitian operator with validated conjugate symmetry.
class HermitianOperator {
  public:
    explicit HermitianOperator(Matrix m, const std::string& what = "HermitianOperator");

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& matrix() const { return mat_; }

  private:
    Matrix mat_;
};

// Density operator: Hermitian, unit trace, PSD within tolerance.
// `from_matrix` runs the full (eigenvalue) validation; `unchecked` is for
// values produced by operations that preserve validity (tensor products,
// unitary conjugation, convex mixtures).
class DensityMatrix {
  public:
    DensityMatrix() = default;  // empty placeholder; populate via the factories

    static DensityMatrix from_matrix(Matrix m, const std::string& what = "DensityMatrix");
    static DensityMatrix unchecked(Matrix m);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& matrix() const { return mat_; }

  private:
    Matrix mat_;
};

// S(rho) = -sum_i lambda_i log2 lambda_i, in bits; 0 log 0 := 0.
double von_neumann_entropy(const DensityMatrix& rho);
double entropy_of_spectrum(const RealVector& values);

// (1/2) sum |eigenvalues of rho - sigma|; in [0, 1] for states.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// sum |eigenvalues| of a Hermitian operator.
double trace_norm_hermitian(const Matrix& a);

// Eigenvalue map lambda -> lambda^p on a PSD operator. Negative powers act on
// the support only (eigenvalues <= `support_cutoff` are dropped); p = 0 yields
// the support projector. Throws if the input is not PSD beyond tolerance.
Matrix matrix_power(const Matrix& a, double p, double support_cutoff = tol::support);

// Spectral projector onto eigenspaces with eigenvalue >= threshold.
Matrix projector_at_least(const Matrix& a, double threshold);

// Kronecker product, row-major convention (left factor owns the slow index).
Matrix kron(const Matrix& a, const Matrix& b);

// Maximum dense dimension allowed for tensor-power states / verifiers.
inline constexpr long kDefaultDenseBudget = 4096;

// W_{x_1} (x) ... (x) W_{x_n}. Throws ResourceError when dim^n exceeds the
// budget, naming required and allowed sizes.
DensityMatrix tensor_power_state(const std::vector<int>& word,
                                 const std::vector<DensityMatrix>& letter_states,
                                 long dense_budget = kDefaultDenseBudget);

}  // namespace cqc
