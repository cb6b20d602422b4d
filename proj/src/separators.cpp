#include "cqc/separators.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cqc/lp.hpp"

namespace cqc {

namespace {

// Orthonormal Hermitian basis under the Hilbert-Schmidt inner product:
// diagonal units, then (E_ij + E_ji)/sqrt(2) and i(E_ij - E_ji)/sqrt(2).
std::vector<Matrix> hermitian_basis(int d) {
    std::vector<Matrix> basis;
    basis.reserve(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        Matrix e = Matrix::Zero(d, d);
        e(i, i) = 1.0;
        basis.push_back(std::move(e));
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            Matrix re = Matrix::Zero(d, d);
            re(i, j) = inv_sqrt2;
            re(j, i) = inv_sqrt2;
            basis.push_back(std::move(re));
            Matrix im = Matrix::Zero(d, d);
            im(i, j) = Complex(0.0, inv_sqrt2);
            im(j, i) = Complex(0.0, -inv_sqrt2);
            basis.push_back(std::move(im));
        }
    }
    return basis;
}

Matrix from_coefficients(const std::vector<Matrix>& basis, const Eigen::VectorXd& a) {
    Matrix out = Matrix::Zero(basis.front().rows(), basis.front().cols());
    for (std::size_t k = 0; k < basis.size(); ++k) out += a[static_cast<Eigen::Index>(k)] * basis[k];
    return out;
}

double op_norm(const Matrix& a) {
    const Eigensystem es = eig_hermitian(a);
    return std::max(std::abs(es.values.maxCoeff()), std::abs(es.values.minCoeff()));
}

// One letter's separator: LP over (coefficients, t) with eigenvector cutting
// planes standing in for -I <= A <= I.
Matrix separator_for_letter(const CqChannel& w, std::size_t x, int max_cut_rounds, double* t_out) {
    const int d = w.dim();
    const std::vector<Matrix> basis = hermitian_basis(d);
    const int nb = static_cast<int>(basis.size());
    const int nv = nb + 1;  // coefficients + t

    Eigen::VectorXd obj = Eigen::VectorXd::Zero(nv);
    obj[nb] = 1.0;

    // Tr[W_x A] = 0
    Eigen::MatrixXd a_eq(1, nv);
    a_eq.setZero();
    for (int k = 0; k < nb; ++k)
        a_eq(0, k) = (w.state(x).matrix() * basis[k]).trace().real();
    Eigen::VectorXd b_eq = Eigen::VectorXd::Zero(1);

    // Tr[W_x' A] + t <= 0 for the other letters; cutting planes appended below.
    std::vector<Eigen::VectorXd> ub_rows;
    std::vector<double> ub_rhs;
    for (std::size_t xp = 0; xp < w.alphabet_size(); ++xp) {
        if (xp == x) continue;
        Eigen::VectorXd row = Eigen::VectorXd::Zero(nv);
        for (int k = 0; k < nb; ++k)
            row[k] = (w.state(xp).matrix() * basis[k]).trace().real();
        row[nb] = 1.0;
        ub_rows.push_back(std::move(row));
        ub_rhs.push_back(0.0);
    }

    // |coef| <= sqrt(2) contains every ||A||_op <= 1 matrix (trace-norm duality
    // per basis element); t in [0, 2].
    Eigen::VectorXd lower = Eigen::VectorXd::Constant(nv, -std::sqrt(2.0));
    Eigen::VectorXd upper = Eigen::VectorXd::Constant(nv, std::sqrt(2.0));
    lower[nb] = 0.0;
    upper[nb] = 2.0;

    Matrix a_mat;
    double t_val = 0.0;
    for (int round = 0; round < max_cut_rounds; ++round) {
        Eigen::MatrixXd a_ub(static_cast<Eigen::Index>(ub_rows.size()), nv);
        Eigen::VectorXd b_ub(static_cast<Eigen::Index>(ub_rows.size()));
        for (std::size_t r = 0; r < ub_rows.size(); ++r) {
            a_ub.row(static_cast<Eigen::Index>(r)) = ub_rows[r].transpose();
            b_ub[static_cast<Eigen::Index>(r)] = ub_rhs[r];
        }
        const LpResult lp = solve_lp_max(obj, a_ub, b_ub, a_eq, b_eq, lower, upper);
        if (lp.status != LpResult::Status::Optimal)
            throw ValidationError("find_separators: LP failed for letter '" + w.label(x) + "'");
        a_mat = from_coefficients(basis, lp.x.head(nb));
        t_val = lp.x[nb];

        const Eigensystem es = eig_hermitian(a_mat);
        const double lo = es.values.minCoeff(), hi = es.values.maxCoeff();
        bool cut = false;
        if (hi > 1.0 + 1e-9) {
            Eigen::Index idx;
            es.values.maxCoeff(&idx);
            const Vector v = es.vectors.col(idx);
            Eigen::VectorXd row = Eigen::VectorXd::Zero(nv);
            for (int k = 0; k < nb; ++k) row[k] = (v.adjoint() * basis[k] * v)(0, 0).real();
            ub_rows.push_back(std::move(row));
            ub_rhs.push_back(1.0);
            cut = true;
        }
        if (lo < -1.0 - 1e-9) {
            Eigen::Index idx;
            es.values.minCoeff(&idx);
            const Vector v = es.vectors.col(idx);
            Eigen::VectorXd row = Eigen::VectorXd::Zero(nv);
            for (int k = 0; k < nb; ++k) row[k] = -(v.adjoint() * basis[k] * v)(0, 0).real();
            ub_rows.push_back(std::move(row));
            ub_rhs.push_back(1.0);
            cut = true;
        }
        if (!cut) break;
    }

    // Final polish: exact CS1 via the identity shift, then pull inside the
    // operator-norm ball.
    const double mean = (w.state(x).matrix() * a_mat).trace().real();
    a_mat -= mean * Matrix::Identity(d, d);
    const double norm = op_norm(a_mat);
    if (norm > 1.0) {
        a_mat /= norm;
        t_val /= norm;
    }
    if (t_out) *t_out = t_val;
    return a_mat;
}

}  // namespace

SeparatorFamily find_separators(const CqChannel& w, const SeparatorOptions& opts) {
    const std::size_t nx = w.alphabet_size();
    if (nx < 2)
        throw ValidationError("find_separators: need at least two letters");

    std::vector<Matrix> xis(nx);
    std::vector<double> ts(nx, 0.0);
    parallel_for(nx, [&](std::size_t x) {
        xis[x] = separator_for_letter(w, x, opts.max_cut_rounds, &ts[x]);
    });

    // zeta1/zeta2 from the final family (authoritative recomputation).
    double zeta1 = std::numeric_limits<double>::infinity();
    std::size_t worst = 0;
    double zeta2 = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t xp = 0; xp < nx; ++xp) {
            const double mean = (w.state(xp).matrix() * xis[x]).trace().real();
            if (xp != x && -mean < zeta1) {
                zeta1 = -mean;
                worst = x;
            }
            const Matrix centered = xis[x] - mean * Matrix::Identity(w.dim(), w.dim());
            zeta2 = std::max(zeta2, (w.state(xp).matrix() * centered * centered).trace().real());
        }
    }
    if (!(zeta1 > tol::nr_margin)) {
        std::ostringstream os;
        os << "find_separators: letter '" << w.label(worst)
           << "' is redundant (no separating observable; best margin " << zeta1 << ")";
        throw ValidationError(os.str());
    }

    SeparatorFamily fam;
    fam.xis = std::move(xis);
    fam.zeta1 = zeta1;
    fam.zeta2 = zeta2;
    fam.epsilon1 = opts.epsilon1_override >= 0.0 ? opts.epsilon1_override : zeta1 / 8.0;
    fam.epsilon2 = opts.epsilon2_override >= 0.0 ? opts.epsilon2_override : 8.0 * fam.epsilon1 / zeta1;
    if (!(fam.zeta1 * fam.epsilon2 / 2.0 - fam.epsilon1 > 0.0)) {
        std::ostringstream os;
        os << "find_separators: zeta1*eps2/2 - eps1 = "
           << fam.zeta1 * fam.epsilon2 / 2.0 - fam.epsilon1
           << " must be positive (eps1 " << fam.epsilon1 << ", eps2 " << fam.epsilon2 << ")";
        throw ValidationError(os.str());
    }
    return fam;
}

SeparatorReport verify_separators(const CqChannel& w, const SeparatorFamily& fam) {
    const std::size_t nx = w.alphabet_size();
    if (fam.xis.size() != nx)
        throw ValidationError("verify_separators: family size differs from the alphabet");
    SeparatorReport rep;
    rep.cs1_residuals.resize(nx);
    double zeta1 = std::numeric_limits<double>::infinity();
    double zeta2 = 0.0;
    double max_norm = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
        rep.cs1_residuals[x] = std::abs((w.state(x).matrix() * fam.xis[x]).trace().real());
        max_norm = std::max(max_norm, op_norm(fam.xis[x]));
        for (std::size_t xp = 0; xp < nx; ++xp) {
            const double mean = (w.state(xp).matrix() * fam.xis[x]).trace().real();
            if (xp != x) zeta1 = std::min(zeta1, -mean);
            const Matrix centered = fam.xis[x] - mean * Matrix::Identity(w.dim(), w.dim());
            zeta2 = std::max(zeta2, (w.state(xp).matrix() * centered * centered).trace().real());
        }
    }
    rep.zeta1_recomputed = zeta1;
    rep.zeta2_recomputed = zeta2;
    rep.ll12_margin = fam.zeta1 * fam.epsilon2 / 2.0 - fam.epsilon1;
    rep.max_op_norm = max_norm;
    rep.cs1_ok = true;
    for (double r : rep.cs1_residuals) rep.cs1_ok = rep.cs1_ok && r <= 1e-9;
    rep.cs2_ok = zeta1 > 0.0;
    rep.margin_ok = rep.ll12_margin > 0.0;
    return rep;
}

}  // namespace cqc
