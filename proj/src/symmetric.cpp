#include "cqc/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "cqc/info.hpp"

namespace cqc {

namespace {

void check_unitary(const Matrix& u, const std::string& what) {
    const Matrix gram = u.adjoint() * u;
    const double defect = (gram - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (defect > tol::herm) {
        std::ostringstream os;
        os << what << ": not unitary (defect " << defect << ")";
        throw ValidationError(os.str());
    }
}

// U_g U_g' must equal U_{gg'} up to a unimodular scalar.
void check_projective_closure(const FiniteGroup& g, const std::vector<Matrix>& u) {
    const int n = g.size();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const Matrix t = u[g.mul(a, b)].adjoint() * (u[a] * u[b]);
            const Complex phase = t.trace() / static_cast<double>(t.rows());
            if (std::abs(std::abs(phase) - 1.0) > 1e-8 ||
                (t - phase * Matrix::Identity(t.rows(), t.cols())).cwiseAbs().maxCoeff() > 1e-8) {
                std::ostringstream os;
                os << "ProjectiveRep: U_" << g.name(a) << " U_" << g.name(b)
                   << " is not a phase times U_" << g.name(g.mul(a, b));
                throw ValidationError(os.str());
            }
        }
    }
}

Matrix clock_unitary(int d, int power) {
    Matrix z = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        const double theta = 2.0 * M_PI * static_cast<double>(j) * power / d;
        z(j, j) = Complex(std::cos(theta), std::sin(theta));
    }
    return z;
}

Matrix shift_unitary(int d, int power) {
    Matrix x = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j) x((j + power) % d, j) = 1.0;
    return x;
}

Matrix partial_trace_first(const Matrix& m, int d_first, int d_second) {
    Matrix out = Matrix::Zero(d_second, d_second);
    for (int a = 0; a < d_first; ++a)
        out += m.block(a * d_second, a * d_second, d_second, d_second);
    return out;
}

}  // namespace

ProjectiveRep::ProjectiveRep(FiniteGroup group, std::vector<Matrix> unitaries, Kind kind)
    : group_(std::move(group)), unitaries_(std::move(unitaries)), kind_(kind) {
    if (static_cast<int>(unitaries_.size()) != group_.size())
        throw ValidationError("ProjectiveRep: one unitary per group element required");
    const Eigen::Index d = unitaries_.front().rows();
    for (int g = 0; g < group_.size(); ++g) {
        if (unitaries_[g].rows() != d || unitaries_[g].cols() != d)
            throw ValidationError("ProjectiveRep: unitaries must share one dimension");
        check_unitary(unitaries_[g], "ProjectiveRep: U_" + group_.name(g));
    }
    const Matrix& ue = unitaries_[group_.identity()];
    if ((ue - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol::herm)
        throw ValidationError("ProjectiveRep: U_e must be the identity");
    check_projective_closure(group_, unitaries_);
}

ProjectiveRep clock_rep(int d) {
    FiniteGroup g = FiniteGroup::cyclic(d);
    std::vector<Matrix> u(d);
    for (int a = 0; a < d; ++a) u[a] = clock_unitary(d, a);
    return ProjectiveRep(std::move(g), std::move(u), ProjectiveRep::Kind::CommutativeTrivialCocycle);
}

ProjectiveRep scalar_rep(int d, int n) {
    if (n <= 0) throw ValidationError("scalar_rep: dimension must be positive");
    FiniteGroup g = FiniteGroup::cyclic(d);
    std::vector<Matrix> u(d);
    for (int a = 0; a < d; ++a) {
        const double theta = 2.0 * M_PI * a / d;
        u[a] = Complex(std::cos(theta), std::sin(theta)) * Matrix::Identity(n, n);
    }
    return ProjectiveRep(std::move(g), std::move(u), ProjectiveRep::Kind::CommutativeTrivialCocycle);
}

ProjectiveRep weyl_heisenberg_rep(int d, int multiplicity) {
    if (multiplicity <= 0) throw ValidationError("weyl_heisenberg_rep: multiplicity must be positive");
    FiniteGroup zd = FiniteGroup::cyclic(d);
    FiniteGroup g = FiniteGroup::direct_product(zd, zd);
    std::vector<Matrix> u(g.size());
    const Matrix eye_mult = Matrix::Identity(multiplicity, multiplicity);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            u[j * d + k] = kron(shift_unitary(d, j) * clock_unitary(d, k), eye_mult);
    ProjectiveRep rep(std::move(g), std::move(u), ProjectiveRep::Kind::WeylHeisenberg);
    rep.wh_irrep_dim_ = d;
    rep.wh_multiplicity_ = multiplicity;
    return rep;
}

CqChannel make_symmetric_channel(const ProjectiveRep& rep, const DensityMatrix& rho) {
    if (rho.dim() != rep.dim())
        throw ValidationError("make_symmetric_channel: state dimension differs from the representation");
    std::vector<std::string> labels;
    std::vector<DensityMatrix> states;
    for (int g = 0; g < rep.group().size(); ++g) {
        labels.push_back(rep.group().name(g));
        Matrix wg = rep.unitary(g) * rho.matrix() * rep.unitary(g).adjoint();
        states.push_back(DensityMatrix::unchecked(0.5 * (wg + wg.adjoint().eval())));
    }
    return CqChannel(std::move(labels), std::move(states));
}

std::vector<int> stabilizer(const ProjectiveRep& rep, const CqChannel& channel) {
    if (static_cast<int>(channel.alphabet_size()) != rep.group().size())
        throw ValidationError("stabilizer: channel is not indexed by the group");
    const int e = rep.group().identity();
    std::vector<int> k;
    for (int g = 0; g < rep.group().size(); ++g)
        if (trace_distance(channel.state(g), channel.state(e)) <= tol::state_eq) k.push_back(g);
    if (!rep.group().is_subgroup(k))
        throw ValidationError(
            "stabilizer: equal-state set fails subgroup closure; the state-equality tolerance "
            "merged states inconsistently");
    return k;
}

InducedChannel induce(const ProjectiveRep& rep, const CqChannel& channel, const std::vector<int>& k) {
    const FiniteGroup& g = rep.group();
    const FiniteGroup::Cosets cosets = g.cosets(k);
    std::vector<std::string> labels;
    std::vector<DensityMatrix> states;
    for (std::size_t c = 0; c < cosets.representatives.size(); ++c) {
        const int r = cosets.representatives[c];
        labels.push_back("[" + g.name(r) + "]");
        states.push_back(channel.state(r));
    }
    for (int a = 0; a < g.size(); ++a) {
        const int c = cosets.coset_of[a];
        const double dist = trace_distance(channel.state(a), states[c]);
        if (dist > tol::state_eq) {
            std::ostringstream os;
            os << "induce: state of " << g.name(a) << " differs from its coset representative by "
               << dist;
            throw ValidationError(os.str());
        }
    }
    return InducedChannel{CqChannel(std::move(labels), std::move(states)), g.quotient(k),
                          cosets.coset_of, cosets.representatives};
}

NrReport check_NR(const CqChannel& w) {
    const std::size_t nx = w.alphabet_size();
    NrReport report;
    report.margins.assign(nx, std::numeric_limits<double>::infinity());
    report.holds = true;
    if (nx == 1) return report;  // no other letters: non-redundancy is vacuous

    for (std::size_t x = 0; x < nx; ++x) {
        std::vector<std::size_t> others;
        for (std::size_t j = 0; j < nx; ++j)
            if (j != x) others.push_back(j);
        const std::size_t m = others.size();
        // q(P) = ||W_x - sum_j P_j W_j||_F^2 = P^T G P - 2 c.P + const
        Eigen::MatrixXd gram(m, m);
        Eigen::VectorXd cross(m);
        for (std::size_t i = 0; i < m; ++i) {
            cross[i] = (w.state(x).matrix().adjoint() * w.state(others[i]).matrix()).trace().real();
            for (std::size_t j = 0; j < m; ++j)
                gram(i, j) =
                    (w.state(others[i]).matrix().adjoint() * w.state(others[j]).matrix()).trace().real();
        }
        const double self = (w.state(x).matrix().adjoint() * w.state(x).matrix()).trace().real();

        Eigen::VectorXd p = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
        const double lipschitz = 2.0 * std::max(gram.trace(), 1e-30);
        double gap = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 200000; ++it) {
            Eigen::VectorXd grad = 2.0 * (gram * p - cross);
            gap = grad.dot(p) - grad.minCoeff();
            if (gap < 1e-10) break;
            Eigen::VectorXd y = p - grad / lipschitz;
            // simplex projection
            std::vector<double> sorted(y.data(), y.data() + m);
            std::sort(sorted.begin(), sorted.end(), std::greater<double>());
            double acc = 0.0, theta = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                acc += sorted[i];
                const double t = (acc - 1.0) / static_cast<double>(i + 1);
                if (sorted[i] - t > 0.0) theta = t;
            }
            for (std::size_t i = 0; i < m; ++i) p[i] = std::max(0.0, y[i] - theta);
            p /= p.sum();
        }
        const double q = std::max(0.0, p.dot(gram * p) - 2.0 * cross.dot(p) + self);
        report.margins[x] = q;
        if (q <= report.threshold) {
            report.holds = false;
            if (report.worst_letter < 0 || q < report.margins[report.worst_letter])
                report.worst_letter = static_cast<int>(x);
        }
    }
    return report;
}

namespace {

struct Block {
    Matrix basis;  // dim x blockdim, orthonormal columns
};

Matrix thin_q(const Matrix& v) {
    Eigen::HouseholderQR<Matrix> qr(v);
    Matrix q = qr.householderQ() * Matrix::Identity(v.rows(), v.cols());
    return q;
}

// Greedy generating set of a finite group (for component labels).
std::vector<int> generating_set(const FiniteGroup& g) {
    std::set<int> span{g.identity()};
    std::vector<int> gens;
    while (static_cast<int>(span.size()) < g.size()) {
        int pick = -1;
        for (int a = 0; a < g.size(); ++a)
            if (span.count(a) == 0) {
                pick = a;
                break;
            }
        gens.push_back(pick);
        // close the span
        std::vector<int> frontier(span.begin(), span.end());
        frontier.push_back(pick);
        std::set<int> closed(span.begin(), span.end());
        closed.insert(pick);
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<int> members(closed.begin(), closed.end());
            for (int a : members)
                for (int b : members)
                    if (closed.insert(g.mul(a, b)).second) grew = true;
        }
        span = std::move(closed);
    }
    return gens;
}

IsotypicDecomposition decompose_commutative(const ProjectiveRep& rep, const DensityMatrix& rho) {
    const FiniteGroup& g = rep.group();
    const int dim = rep.dim();
    std::vector<Block> blocks{Block{Matrix::Identity(dim, dim)}};

    for (int a = 0; a < g.size(); ++a) {
        if (a == g.identity()) continue;
        std::vector<Block> next;
        for (const Block& blk : blocks) {
            const Matrix restricted = blk.basis.adjoint() * rep.unitary(a) * blk.basis;
            Eigen::ComplexEigenSolver<Matrix> solver(restricted);
            if (solver.info() != Eigen::Success)
                throw ConvergenceError("isotypic_decompose: eigensolver failed", 0.0, 0.0);
            // cluster the unit-circle eigenvalues
            std::vector<Complex> centers;
            std::vector<std::vector<Eigen::Index>> clusters;
            for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
                const Complex ev = solver.eigenvalues()[i];
                bool placed = false;
                for (std::size_t cidx = 0; cidx < centers.size() && !placed; ++cidx) {
                    if (std::abs(ev - centers[cidx]) < 1e-7) {
                        clusters[cidx].push_back(i);
                        placed = true;
                    }
                }
                if (!placed) {
                    centers.push_back(ev);
                    clusters.push_back({i});
                }
            }
            for (const auto& cluster : clusters) {
                Matrix v(restricted.rows(), static_cast<Eigen::Index>(cluster.size()));
                for (std::size_t i = 0; i < cluster.size(); ++i)
                    v.col(static_cast<Eigen::Index>(i)) = solver.eigenvectors().col(cluster[i]);
                next.push_back(Block{blk.basis * thin_q(v)});
            }
        }
        blocks = std::move(next);
    }

    // Character labels; blocks sharing a label form one isotypic component,
    // so their bases are concatenated before the reduced state is taken
    // (coherences across equal-character blocks belong to rho_lambda).
    const std::vector<int> gens = generating_set(g);
    std::vector<std::string> labels;
    std::vector<Matrix> bases;
    for (const Block& blk : blocks) {
        std::ostringstream label;
        label << "chi";
        for (int gen : gens) {
            const Complex chi = (blk.basis.adjoint() * rep.unitary(gen) * blk.basis).trace() /
                                static_cast<double>(blk.basis.cols());
            long idx = std::lround(std::arg(chi) / (2.0 * M_PI) * g.size());
            idx = ((idx % g.size()) + g.size()) % g.size();
            label << "_" << idx;
        }
        bool merged = false;
        for (std::size_t i = 0; i < labels.size() && !merged; ++i) {
            if (labels[i] == label.str()) {
                Matrix joined(bases[i].rows(), bases[i].cols() + blk.basis.cols());
                joined << bases[i], blk.basis;
                bases[i] = std::move(joined);
                merged = true;
            }
        }
        if (!merged) {
            labels.push_back(label.str());
            bases.push_back(blk.basis);
        }
    }

    IsotypicDecomposition out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        IsotypicComponent comp;
        comp.label = labels[i];
        comp.d_lambda = 1;
        comp.n_lambda = static_cast<int>(bases[i].cols());
        comp.projector = bases[i] * bases[i].adjoint();
        const Matrix reduced = bases[i].adjoint() * rho.matrix() * bases[i];
        comp.p_lambda = std::max(0.0, reduced.trace().real());
        if (comp.p_lambda > 1e-15)
            comp.rho_lambda = DensityMatrix::unchecked(
                (0.5 / comp.p_lambda) * (reduced + reduced.adjoint().eval()));
        out.components.push_back(std::move(comp));
    }
    return out;
}

IsotypicDecomposition decompose_weyl_heisenberg(const ProjectiveRep& rep, const DensityMatrix& rho) {
    IsotypicComponent comp;
    comp.label = "wh";
    comp.d_lambda = rep.wh_irrep_dim();
    comp.n_lambda = rep.wh_multiplicity();
    comp.projector = Matrix::Identity(rep.dim(), rep.dim());
    comp.p_lambda = 1.0;
    comp.rho_lambda = DensityMatrix::unchecked(
        partial_trace_first(rho.matrix(), comp.d_lambda, comp.n_lambda));
    IsotypicDecomposition out;
    out.components.push_back(std::move(comp));
    return out;
}

bool commutative_trivial_cocycle(const ProjectiveRep& rep) {
    if (!rep.group().is_abelian()) return false;
    for (int a = 0; a < rep.group().size(); ++a)
        for (int b = 0; b < rep.group().size(); ++b) {
            const Matrix t = rep.unitary(a) * rep.unitary(b) - rep.unitary(rep.group().mul(a, b));
            if (t.cwiseAbs().maxCoeff() > 1e-8) return false;
        }
    return true;
}

}  // namespace

IsotypicDecomposition isotypic_decompose(const ProjectiveRep& rep, const DensityMatrix& rho) {
    if (rho.dim() != rep.dim())
        throw ValidationError("isotypic_decompose: state dimension differs from the representation");
    if (rep.kind() == ProjectiveRep::Kind::WeylHeisenberg)
        return decompose_weyl_heisenberg(rep, rho);
    if (commutative_trivial_cocycle(rep)) return decompose_commutative(rep, rho);
    throw ValidationError(
        "isotypic_decompose: unsupported representation class (supported: commutative groups "
        "with trivial cocycle, Weyl-Heisenberg)");
}

double average_state_entropy(const IsotypicDecomposition& decomp) {
    double s = 0.0;
    for (const auto& comp : decomp.components) {
        if (comp.p_lambda <= 1e-15) continue;
        s += comp.p_lambda * (von_neumann_entropy(comp.rho_lambda) +
                              std::log2(static_cast<double>(comp.d_lambda) / comp.p_lambda));
    }
    return s;
}

SymmetricCapacity symmetric_capacity(const ProjectiveRep& rep, const DensityMatrix& rho) {
    const CqChannel channel = make_symmetric_channel(rep, rho);
    std::vector<int> k = stabilizer(rep, channel);
    InducedChannel induced = induce(rep, channel, k);
    IsotypicDecomposition decomp = isotypic_decompose(rep, rho);

    const double s_closed = average_state_entropy(decomp);
    const double s_direct =
        von_neumann_entropy(channel.average_state(Distribution::uniform(channel.alphabet_size())));
    const double s_rho = von_neumann_entropy(rho);
    const double value =
        std::log2(static_cast<double>(induced.channel.alphabet_size())) + s_rho - s_closed;

    const double uniform_value =
        conditional_entropy(induced.channel, Distribution::uniform(induced.channel.alphabet_size()));

    return SymmetricCapacity{value,
                             std::move(k),
                             std::move(induced),
                             std::move(decomp),
                             std::abs(s_closed - s_direct),
                             std::abs(value - uniform_value)};
}

}  // namespace cqc
