#include "pplab/fpgroup.hpp"

#include <sstream>
#include <stdexcept>

namespace pplab {

std::string GroupType::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (rank == 1) {
        os << "Z";
        first = false;
    } else if (rank > 1) {
        os << "Z^" << rank;
        first = false;
    }
    for (const auto& t : torsion) {
        if (!first) os << "+";
        os << "Z/" << t;
        first = false;
    }
    return os.str();
}

FPAbelianGroup::FPAbelianGroup(int gens, IntMatrix rels) : gens_(gens), rels_(std::move(rels)) {
    if (rels_.rows() != gens_) throw std::invalid_argument("relation matrix must have one row per generator");
    SNFResult s = smith_normal_form(rels_);

    // In U-coordinates the group splits: unit pivots vanish, d >= 2 pivots give
    // torsion, pivotless rows give free summands. Free block first.
    std::vector<int> keep;
    for (int i = s.nonzero_count; i < gens_; ++i) keep.push_back(i);
    type_.rank = gens_ - s.nonzero_count;
    for (int i = 0; i < s.nonzero_count; ++i) {
        if (s.diagonal[i] >= 2) {
            keep.push_back(i);
            type_.torsion.push_back(s.diagonal[i]);
        }
    }

    to_canonical_ = IntMatrix(static_cast<int>(keep.size()), gens_);
    from_canonical_ = IntMatrix(gens_, static_cast<int>(keep.size()));
    for (int k = 0; k < static_cast<int>(keep.size()); ++k) {
        for (int j = 0; j < gens_; ++j) to_canonical_.at(k, j) = s.u.at(keep[k], j);
        for (int i = 0; i < gens_; ++i) from_canonical_.at(i, k) = s.u_inv.at(i, keep[k]);
    }
}

FPAbelianGroup FPAbelianGroup::cyclic(const Int& n) {
    IntMatrix r(1, 1);
    r.at(0, 0) = n;
    return FPAbelianGroup(1, r);
}

bool FPAbelianGroup::is_relation(const IntMatrix& v) const {
    if (v.rows() != gens_) throw std::invalid_argument("is_relation: wrong length");
    return columns_in_span(rels_, v);
}

} // namespace pplab
