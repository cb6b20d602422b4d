#include "cqc/group.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cqc {

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<std::vector<int>> table)
    : names_(std::move(names)), table_(std::move(table)) {
    const int n = static_cast<int>(table_.size());
    if (n == 0) throw ValidationError("FiniteGroup: empty group");
    if (static_cast<int>(names_.size()) != n)
        throw ValidationError("FiniteGroup: name/table size mismatch");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != n)
            throw ValidationError("FiniteGroup: multiplication table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw ValidationError("FiniteGroup: table entry out of range");
    }
    // identity: the unique e with e*a = a*e = a
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
        if (ok) {
            identity_ = e;
            break;
        }
    }
    if (identity_ < 0) throw ValidationError("FiniteGroup: no identity element");
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (table_[a][b] == identity_ && table_[b][a] == identity_) {
                inverse_[a] = b;
                break;
            }
        }
        if (inverse_[a] < 0) {
            std::ostringstream os;
            os << "FiniteGroup: element " << names_[a] << " has no inverse";
            throw ValidationError(os.str());
        }
    }
    if (n <= 64) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                        throw ValidationError("FiniteGroup: multiplication table is not associative");
    } else {
        Rng rng(0x6772702d61737363ULL);
        for (int trial = 0; trial < 4096; ++trial) {
            const int a = static_cast<int>(rng.next_below(n));
            const int b = static_cast<int>(rng.next_below(n));
            const int c = static_cast<int>(rng.next_below(n));
            if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                throw ValidationError("FiniteGroup: multiplication table is not associative");
        }
    }
}

FiniteGroup FiniteGroup::cyclic(int d) {
    if (d <= 0) throw ValidationError("FiniteGroup::cyclic: order must be positive");
    std::vector<std::string> names(d);
    std::vector<std::vector<int>> table(d, std::vector<int>(d));
    for (int a = 0; a < d; ++a) {
        names[a] = std::to_string(a);
        for (int b = 0; b < d; ++b) table[a][b] = (a + b) % d;
    }
    return FiniteGroup(std::move(names), std::move(table));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int na = a.size(), nb = b.size();
    std::vector<std::string> names(na * nb);
    std::vector<std::vector<int>> table(na * nb, std::vector<int>(na * nb));
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            names[i * nb + j] = "(" + a.name(i) + "," + b.name(j) + ")";
    for (int i = 0; i < na * nb; ++i)
        for (int j = 0; j < na * nb; ++j) {
            const int ai = i / nb, bi = i % nb, aj = j / nb, bj = j % nb;
            table[i][j] = a.mul(ai, aj) * nb + b.mul(bi, bj);
        }
    return FiniteGroup(std::move(names), std::move(table));
}

bool FiniteGroup::is_abelian() const {
    const int n = size();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (table_[a][b] != table_[b][a]) return false;
    return true;
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elems) const {
    std::set<int> members(elems.begin(), elems.end());
    if (members.size() != elems.size()) return false;
    if (members.count(identity_) == 0) return false;
    for (int a : elems) {
        if (members.count(inverse_[a]) == 0) return false;
        for (int b : elems)
            if (members.count(table_[a][b]) == 0) return false;
    }
    return true;
}

FiniteGroup::Cosets FiniteGroup::cosets(const std::vector<int>& subgroup) const {
    if (!is_subgroup(subgroup)) throw ValidationError("FiniteGroup::cosets: not a subgroup");
    const int n = size();
    Cosets out;
    out.coset_of.assign(n, -1);
    for (int g = 0; g < n; ++g) {
        if (out.coset_of[g] >= 0) continue;
        const int idx = static_cast<int>(out.representatives.size());
        out.representatives.push_back(g);
        for (int k : subgroup) out.coset_of[table_[g][k]] = idx;
    }
    return out;
}

FiniteGroup FiniteGroup::quotient(const std::vector<int>& subgroup) const {
    const Cosets c = cosets(subgroup);
    const int q = static_cast<int>(c.representatives.size());
    std::vector<std::string> names(q);
    std::vector<std::vector<int>> table(q, std::vector<int>(q));
    for (int i = 0; i < q; ++i) names[i] = "[" + names_[c.representatives[i]] + "]";
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            const int prod = table_[c.representatives[i]][c.representatives[j]];
            table[i][j] = c.coset_of[prod];
        }
    // Well-definedness of the induced table (normality of the subgroup).
    for (int g = 0; g < size(); ++g)
        for (int h = 0; h < size(); ++h)
            if (table[c.coset_of[g]][c.coset_of[h]] != c.coset_of[table_[g][h]])
                throw ValidationError("FiniteGroup::quotient: subgroup is not normal");
    return FiniteGroup(std::move(names), std::move(table));
}

}  // namespace cqc
