#include "cqc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cqc {

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw ValidationError("Distribution: empty support");
    double sum = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (!(probs_[i] >= 0.0)) {
            std::ostringstream os;
            os << "Distribution: negative probability at index " << i << " (" << probs_[i] << ")";
            throw ValidationError(os.str());
        }
        sum += probs_[i];
    }
    if (std::abs(sum - 1.0) > tol::prob_sum) {
        std::ostringstream os;
        os << "Distribution: probabilities sum to " << sum << ", expected 1 within " << tol::prob_sum;
        throw ValidationError(os.str());
    }
}

Distribution Distribution::uniform(std::size_t n) {
    if (n == 0) throw ValidationError("Distribution::uniform: empty support");
    return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::point_mass(std::size_t n, std::size_t at) {
    if (at >= n) throw ValidationError("Distribution::point_mass: index out of range");
    std::vector<double> p(n, 0.0);
    p[at] = 1.0;
    return Distribution(std::move(p));
}

double Distribution::entropy_bits() const {
    double h = 0.0;
    for (double p : probs_)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

double Distribution::total_variation(const Distribution& other) const {
    if (size() != other.size()) throw ValidationError("total_variation: size mismatch");
    double tv = 0.0;
    for (std::size_t i = 0; i < size(); ++i) tv += std::abs(probs_[i] - other.probs_[i]);
    return 0.5 * tv;
}

CqChannel::CqChannel(std::vector<std::string> labels, std::vector<DensityMatrix> states)
    : labels_(std::move(labels)), states_(std::move(states)) {
    if (states_.empty()) throw ValidationError("CqChannel: alphabet must be nonempty");
    if (labels_.size() != states_.size())
        throw ValidationError("CqChannel: label/state count mismatch");
    const int d = states_.front().dim();
    for (std::size_t x = 0; x < states_.size(); ++x) {
        if (states_[x].dim() != d) {
            std::ostringstream os;
            os << "CqChannel: state '" << labels_[x] << "' has dim " << states_[x].dim()
               << ", expected " << d;
            throw ValidationError(os.str());
        }
    }
    std::set<std::string> seen;
    for (const auto& l : labels_)
        if (!seen.insert(l).second)
            throw ValidationError("CqChannel: duplicate alphabet label '" + l + "'");
}

DensityMatrix CqChannel::average_state(const Distribution& p) const {
    if (p.size() != alphabet_size())
        throw ValidationError("CqChannel::average_state: distribution index mismatch");
    Matrix acc = Matrix::Zero(dim(), dim());
    for (std::size_t x = 0; x < alphabet_size(); ++x) acc += p[x] * states_[x].matrix();
    return DensityMatrix::unchecked(std::move(acc));
}

bool CqChannel::is_diagonal(double offdiag_tol) const {
    for (const auto& s : states_) {
        const Matrix& m = s.matrix();
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                if (i != j && std::abs(m(i, j)) > offdiag_tol) return false;
    }
    return true;
}

DensityMatrix JointCqState::marginal_y() const {
    Matrix acc = Matrix::Zero(blocks.front().dim(), blocks.front().dim());
    for (std::size_t x = 0; x < blocks.size(); ++x) acc += weights[x] * blocks[x].matrix();
    return DensityMatrix::unchecked(std::move(acc));
}

JointCqState joint_state(const CqChannel& w, const Distribution& p) {
    if (p.size() != w.alphabet_size())
        throw ValidationError("joint_state: distribution not indexed by the channel alphabet");
    return JointCqState{w.labels(), p, w.states()};
}

namespace {

// Strips comments ('#' to end of line) and returns whitespace tokens.
std::vector<std::string> tokenize_line(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream is(body);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

}  // namespace

CqChannel load_channel(std::istream& in, const std::string& source_name) {
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<DensityMatrix> states;

    auto fail = [&](const std::string& msg) -> void {
        throw ValidationError(source_name + ": " + msg);
    };

    std::string line;
    std::string pending_label;
    std::vector<std::vector<std::string>> pending_rows;

    auto flush_state = [&]() {
        if (pending_label.empty()) return;
        if (static_cast<int>(pending_rows.size()) != dim)
            fail("state '" + pending_label + "' has " + std::to_string(pending_rows.size()) +
                 " rows, expected " + std::to_string(dim));
        Matrix m(dim, dim);
        for (int r = 0; r < dim; ++r) {
            const auto& toks = pending_rows[r];
            if (static_cast<int>(toks.size()) != 2 * dim)
                fail("state '" + pending_label + "' row " + std::to_string(r) + " has " +
                     std::to_string(toks.size()) + " numbers, expected " + std::to_string(2 * dim) +
                     " (re im pairs)");
            for (int c = 0; c < dim; ++c) {
                try {
                    std::size_t used = 0;
                    const double re = std::stod(toks[2 * c], &used);
                    if (used != toks[2 * c].size()) throw std::invalid_argument("trailing");
                    const double im = std::stod(toks[2 * c + 1], &used);
                    if (used != toks[2 * c + 1].size()) throw std::invalid_argument("trailing");
                    m(r, c) = Complex(re, im);
                } catch (const std::exception&) {
                    fail("state '" + pending_label + "' row " + std::to_string(r) + " col " +
                         std::to_string(c) + ": cannot parse complex entry");
                }
            }
        }
        try {
            states.push_back(DensityMatrix::from_matrix(std::move(m), "state '" + pending_label + "'"));
        } catch (const ValidationError& e) {
            fail(e.what());
        }
        pending_label.clear();
        pending_rows.clear();
    };

    while (std::getline(in, line)) {
        const auto toks = tokenize_line(line);
        if (toks.empty()) continue;
        if (toks[0] == "dim") {
            if (toks.size() != 2) fail("'dim' expects one integer");
            dim = std::stoi(toks[1]);
            if (dim <= 0) fail("'dim' must be positive");
        } else if (toks[0] == "alphabet") {
            if (toks.size() < 2) fail("'alphabet' expects at least one label");
            labels.assign(toks.begin() + 1, toks.end());
        } else if (toks[0] == "state") {
            if (dim == 0) fail("'state' before 'dim'");
            if (toks.size() != 2) fail("'state' expects one label");
            flush_state();
            pending_label = toks[1];
        } else {
            if (pending_label.empty()) fail("unexpected line: " + line);
            pending_rows.push_back(toks);
        }
    }
    flush_state();

    if (dim == 0) fail("missing 'dim'");
    if (labels.empty()) fail("missing 'alphabet'");
    if (labels.size() != states.size())
        fail("alphabet has " + std::to_string(labels.size()) + " labels but " +
             std::to_string(states.size()) + " states were given");
    return CqChannel(std::move(labels), std::move(states));
}

CqChannel load_channel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open channel file '" + path + "'");
    return load_channel(in, path);
}

void save_channel(std::ostream& out, const CqChannel& w) {
    out << "dim " << w.dim() << "\n";
    out << "alphabet";
    for (const auto& l : w.labels()) out << ' ' << l;
    out << "\n";
    char buf[64];
    for (std::size_t x = 0; x < w.alphabet_size(); ++x) {
        out << "state " << w.label(x) << "\n";
        const Matrix& m = w.state(x).matrix();
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                std::snprintf(buf, sizeof(buf), "%.17g %.17g", m(r, c).real(), m(r, c).imag());
                out << (c == 0 ? "" : "  ") << buf;
            }
            out << "\n";
        }
    }
}

}  // namespace cqc
