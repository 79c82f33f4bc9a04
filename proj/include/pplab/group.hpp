#pragma once

#include "pplab/engine.hpp"

#include <map>
#include <memory>
#include <vector>

namespace pplab {

using Perm = std::vector<int>; // i -> p[i]

Perm perm_compose(const Perm& p, const Perm& q); // p after q
Perm perm_inverse(const Perm& p);

// Finite group stored by full composition table, with a fixed faithful
// permutation embedding. mult(g, h) is "g after h", matching composition of
// the associated automorphisms.
class FinGroup {
public:
    FinGroup(std::vector<std::vector<int>> table, std::vector<Perm> perms);

    int order() const { return order_; }
    int identity() const { return id_; }
    int mult(int g, int h) const { return table_[g][h]; }
    int inverse(int g) const { return inv_[g]; }
    const Perm& perm(int g) const { return perms_[g]; }
    int degree() const { return perms_.empty() ? 0 : static_cast<int>(perms_[0].size()); }
    int element_of_perm(const Perm& p) const;

    static std::shared_ptr<const FinGroup> trivial();
    static std::shared_ptr<const FinGroup> symmetric(int n);
    static std::shared_ptr<const FinGroup> product(const std::vector<std::shared_ptr<const FinGroup>>& gs);
    // prod_i Sym(n_i) acting on sum(n_i) points in consecutive blocks.
    static std::shared_ptr<const FinGroup> symmetric_multi(const std::vector<int>& n);

private:
    void validate() const;

    int order_, id_ = -1;
    std::vector<std::vector<int>> table_;
    std::vector<int> inv_;
    std::vector<Perm> perms_;
    std::map<Perm, int> perm_index_;
};

using FinGroupPtr = std::shared_ptr<const FinGroup>;

// Injective group homomorphism, given elementwise; validated at construction.
struct SubgroupEmbedding {
    FinGroupPtr sub;
    FinGroupPtr big;
    std::vector<int> map; // sub element -> big element

    SubgroupEmbedding(FinGroupPtr sub, FinGroupPtr big, std::vector<int> map);

    static SubgroupEmbedding full(FinGroupPtr g);
    static SubgroupEmbedding trivial_into(FinGroupPtr g);
    // prod_i (Sym(n_i - k_i) x Sym(k_i)) into prod_i Sym(n_i), blockwise.
    static SubgroupEmbedding young(const std::vector<int>& n, const std::vector<int>& k);

    // Left cosets g*H in element order; each coset sorted, least element first.
    std::vector<std::vector<int>> left_cosets() const;
};

// Group acting on an engine object by automorphisms.
class GroupAction {
public:
    GroupAction(FinGroupPtr group, Obj object, std::vector<Mor> maps);

    static GroupAction trivial(FinGroupPtr group, const Obj& object);

    const FinGroupPtr& group() const { return group_; }
    const Obj& object() const { return object_; }
    const Mor& action(int g) const { return maps_[g]; }

private:
    FinGroupPtr group_;
    Obj object_;
    std::vector<Mor> maps_;
};

struct Coinvariants {
    Obj obj;
    Mor projection; // object -> obj, a regular epi
};

Coinvariants coinvariants(const GroupAction& a);

struct InducedAction {
    GroupAction action;      // G acting on G .x_H X
    Mor projection;          // G . X -> underlying object of the induction
    std::vector<Mor> copies; // injections X -> G . X, one per g in G
};

// G .x_H X := (G . X)_H where H acts on the right on G and on the left on X.
InducedAction induce(const SubgroupEmbedding& emb, const GroupAction& x);

} // namespace pplab
