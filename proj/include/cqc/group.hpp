#pragma once

#include <string>
#include <vector>

#include "cqc/common.hpp"

namespace cqc {

// Finite group given by an explicit multiplication table. Axioms (identity,
// inverses, associativity) are checked exhaustively for |G| <= 64 and on
// sampled triples beyond that.
class FiniteGroup {
  public:
    FiniteGroup(std::vector<std::string> names, std::vector<std::vector<int>> table);

    static FiniteGroup cyclic(int d);
    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

    int size() const { return static_cast<int>(table_.size()); }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return table_[a][b]; }
    int inverse(int a) const { return inverse_[a]; }
    const std::string& name(int a) const { return names_[a]; }
    bool is_abelian() const;

    // True when `elems` (unique indices containing the identity) is closed
    // under multiplication and inverse.
    bool is_subgroup(const std::vector<int>& elems) const;

    struct Cosets {
        std::vector<int> coset_of;        // element -> coset index
        std::vector<int> representatives; // coset index -> representative element
    };
    Cosets cosets(const std::vector<int>& subgroup) const;

    // Quotient by a (normal) subgroup; validity of the induced table is
    // re-checked by the constructor.
    FiniteGroup quotient(const std::vector<int>& subgroup) const;

  private:
    std::vector<std::string> names_;
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    int identity_ = -1;
};

}  // namespace cqc
