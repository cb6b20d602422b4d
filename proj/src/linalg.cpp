#include "cqc/linalg.hpp"

#include <cmath>
#include <sstream>

namespace cqc {

double hermiticity_defect(const Matrix& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& a, double tolerance) {
    if (a.rows() != a.cols() || a.rows() == 0) return false;
    return hermiticity_defect(a) <= tolerance;
}

Eigensystem eig_hermitian(const Matrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw ValidationError("eig_hermitian: matrix must be square and nonempty");
    Matrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("eig_hermitian: eigensolver failed", 0.0, 0.0);
    return Eigensystem{solver.eigenvalues(), solver.eigenvectors()};
}

HermitianOperator::HermitianOperator(Matrix m, const std::string& what) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() == 0)
        throw ValidationError(what + ": must be a square, nonempty matrix");
    const double defect = hermiticity_defect(mat_);
    if (defect > tol::herm) {
        std::ostringstream os;
        os << what << ": not Hermitian (defect " << defect << " > " << tol::herm << ")";
        throw ValidationError(os.str());
    }
    mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
}

DensityMatrix DensityMatrix::from_matrix(Matrix m, const std::string& what) {
    HermitianOperator herm(std::move(m), what);
    DensityMatrix rho;
    rho.mat_ = herm.matrix();
    const double tr = rho.mat_.trace().real();
    if (std::abs(tr - 1.0) > tol::trace_one) {
        std::ostringstream os;
        os << what << ": trace " << tr << " differs from 1 beyond " << tol::trace_one;
        throw ValidationError(os.str());
    }
    const Eigensystem es = eig_hermitian(rho.mat_);
    const double min_eig = es.values.minCoeff();
    if (min_eig < tol::eig_neg) {
        std::ostringstream os;
        os << what << ": minimum eigenvalue " << min_eig << " below " << tol::eig_neg;
        throw ValidationError(os.str());
    }
    return rho;
}

DensityMatrix DensityMatrix::unchecked(Matrix m) {
    DensityMatrix rho;
    rho.mat_ = std::move(m);
    return rho;
}

double entropy_of_spectrum(const RealVector& values) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (v > 0.0) s -= v * std::log2(v);
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const Eigensystem es = eig_hermitian(rho.matrix());
    // Eigenvalues in [-1e-10, 0] are clamped to zero by the v > 0 guard.
    return entropy_of_spectrum(es.values);
}

double trace_norm_hermitian(const Matrix& a) {
    const Eigensystem es = eig_hermitian(a);
    return es.values.cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw ValidationError("trace_distance: dimension mismatch");
    return 0.5 * trace_norm_hermitian(rho.matrix() - sigma.matrix());
}

Matrix matrix_power(const Matrix& a, double p, double support_cutoff) {
    const Eigensystem es = eig_hermitian(a);
    const double scale = std::max(1.0, es.values.cwiseAbs().maxCoeff());
    if (es.values.minCoeff() < -1e-10 * scale)
        throw ValidationError("matrix_power: operator is not PSD within tolerance");
    RealVector powered = RealVector::Zero(es.values.size());
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        const double v = es.values[i];
        // Below the cutoff the eigenvalue is treated as outside the support,
        // so it contributes nothing even for p = 0.
        if (v > support_cutoff) powered[i] = std::pow(v, p);
    }
    return es.vectors * powered.asDiagonal() * es.vectors.adjoint();
}

Matrix projector_at_least(const Matrix& a, double threshold) {
    const Eigensystem es = eig_hermitian(a);
    RealVector ind = RealVector::Zero(es.values.size());
    for (Eigen::Index i = 0; i < es.values.size(); ++i)
        if (es.values[i] >= threshold) ind[i] = 1.0;
    return es.vectors * ind.asDiagonal() * es.vectors.adjoint();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

DensityMatrix tensor_power_state(const std::vector<int>& word,
                                 const std::vector<DensityMatrix>& letter_states,
                                 long dense_budget) {
    if (word.empty()) throw ValidationError("tensor_power_state: empty word");
    if (letter_states.empty()) throw ValidationError("tensor_power_state: no letter states");
    const long dim = letter_states.front().dim();
    long total = 1;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i] < 0 || word[i] >= static_cast<int>(letter_states.size()))
            throw ValidationError("tensor_power_state: letter index out of range");
        if (total > dense_budget / dim) {
            std::ostringstream os;
            os << "tensor_power_state: required dimension " << dim << "^" << word.size()
               << " exceeds dense budget " << dense_budget;
            throw ResourceError(os.str());
        }
        total *= dim;
    }
    Matrix acc = letter_states[word[0]].matrix();
    for (std::size_t i = 1; i < word.size(); ++i)
        acc = kron(acc, letter_states[word[i]].matrix()).eval();
    return DensityMatrix::unchecked(std::move(acc));
}

}  // namespace cqc
