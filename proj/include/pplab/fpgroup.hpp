#pragma once

#include "pplab/matrix.hpp"

#include <string>
#include <vector>

namespace pplab {

// Isomorphism type of a finitely generated abelian group: free rank plus
// torsion coefficients t1 | t2 | ... with ti >= 2.
struct GroupType {
    int rank = 0;
    std::vector<Int> torsion;

    bool operator==(const GroupType&) const = default;
    bool is_trivial() const { return rank == 0 && torsion.empty(); }
    std::string to_string() const;
};

// Abelian group presented as Z^gens / column-span(rels). rels has `gens` rows.
class FPAbelianGroup {
public:
    FPAbelianGroup() : gens_(0), rels_(0, 0) {}
    FPAbelianGroup(int gens, IntMatrix rels);

    static FPAbelianGroup free_group(int rank) { return FPAbelianGroup(rank, IntMatrix(rank, 0)); }
    static FPAbelianGroup cyclic(const Int& n);

    int gens() const { return gens_; }
    const IntMatrix& rels() const { return rels_; }
    const GroupType& type() const { return type_; }
    bool is_free() const { return type_.torsion.empty(); }

    // Change of coordinates to the split form Z^rank + sum Z/ti: to_canonical
    // maps presentation generators to canonical coordinates (free block first,
    // then torsion block), from_canonical is a one-sided inverse mod relations.
    const IntMatrix& to_canonical() const { return to_canonical_; }
    const IntMatrix& from_canonical() const { return from_canonical_; }

    // Is the column vector v zero in the group, i.e. in the relation lattice?
    bool is_relation(const IntMatrix& v) const;

    bool operator==(const FPAbelianGroup& o) const { return gens_ == o.gens_ && rels_ == o.rels_; }

private:
    int gens_;
    IntMatrix rels_;
    GroupType type_;
    IntMatrix to_canonical_, from_canonical_;
};

} // namespace pplab
