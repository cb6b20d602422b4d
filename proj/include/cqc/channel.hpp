#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cqc/linalg.hpp"

namespace cqc {

// Probability distribution over a finite index set.
class Distribution {
  public:
    explicit Distribution(std::vector<double> probs);

    static Distribution uniform(std::size_t n);
    static Distribution point_mass(std::size_t n, std::size_t at);

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }

    double entropy_bits() const;
    double total_variation(const Distribution& other) const;

  private:
    std::vector<double> probs_;
};

// Classical-quantum channel: one output density operator per input letter.
class CqChannel {
  public:
    CqChannel(std::vector<std::string> labels, std::vector<DensityMatrix> states);

    std::size_t alphabet_size() const { return states_.size(); }
    int dim() const { return states_.front().dim(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t x) const { return labels_[x]; }
    const DensityMatrix& state(std::size_t x) const { return states_[x]; }
    const std::vector<DensityMatrix>& states() const { return states_; }

    // W_P = sum_x P(x) W_x.
    DensityMatrix average_state(const Distribution& p) const;

    // True when all output states are diagonal in the computational basis
    // (within `offdiag_tol`); enables the classical evaluation paths.
    bool is_diagonal(double offdiag_tol = 1e-13) const;

  private:
    std::vector<std::string> labels_;
    std::vector<DensityMatrix> states_;
};

// Block-diagonal cq-state: one weight and one output block per letter.
struct JointCqState {
    std::vector<std::string> labels;
    Distribution weights;
    std::vector<DensityMatrix> blocks;

    // Marginal on the quantum system.
    DensityMatrix marginal_y() const;
};

JointCqState joint_state(const CqChannel& w, const Distribution& p);

// Channel spec file: `dim`, `alphabet` labels, then one `state <label>` block
// per letter with dim rows of dim (re, im) pairs.
CqChannel load_channel(std::istream& in, const std::string& source_name = "<stream>");
CqChannel load_channel_file(const std::string& path);
void save_channel(std::ostream& out, const CqChannel& w);

}  // namespace cqc
