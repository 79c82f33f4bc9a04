#include "pplab/chain.hpp"

namespace pplab {

ChainComplex::ChainComplex(int lo, std::vector<FPAbelianGroup> groups, std::vector<IntMatrix> diffs)
    : lo_(lo), hi_(lo + static_cast<int>(groups.size()) - 1), groups_(std::move(groups)),
      diffs_(std::move(diffs)) {
    if (diffs_.size() != groups_.size()) throw EngineError("chain: one differential per degree");
    validate();
}

const FPAbelianGroup& ChainComplex::group(int d) const {
    static const FPAbelianGroup zero;
    if (d < lo_ || d > hi_) return zero;
    return groups_[d - lo_];
}

IntMatrix ChainComplex::diff(int d) const {
    if (d < lo_ || d > hi_) return IntMatrix(gens(d - 1), gens(d));
    return diffs_[d - lo_];
}

void ChainComplex::validate() const {
    for (int d = lo_; d <= hi_; ++d) {
        const IntMatrix& m = diffs_[d - lo_];
        if (m.cols() != gens(d) || m.rows() != gens(d - 1))
            throw EngineError("chain: differential shape mismatch");
        // d respects relations and d o d lands in relations.
        if (gens(d - 1) > 0) {
            if (!columns_in_span(group(d - 1).rels(), m * group(d).rels()))
                throw EngineError("chain: differential does not respect relations");
        }
        if (d - 1 >= lo_ && gens(d - 2) > 0) {
            if (!columns_in_span(group(d - 2).rels(), diff(d - 1) * m))
                throw EngineError("chain: d o d != 0");
        }
    }
}

bool ChainComplex::equal_to(const ChainComplex& o) const {
    int a = std::min(lo_, o.lo_), b = std::max(hi_, o.hi_);
    for (int d = a; d <= b; ++d) {
        if (!(group(d) == o.group(d))) return false;
        if (diff(d) != o.diff(d)) return false;
    }
    return true;
}

Int ChainComplex::euler_characteristic() const {
    Int chi = 0;
    for (int d = lo_; d <= hi_; ++d) {
        Int r = group(d).type().rank;
        chi += (((d % 2) + 2) % 2 == 0) ? r : -r;
    }
    return chi;
}

ChainPtr ChainComplex::interval() {
    std::vector<FPAbelianGroup> groups{FPAbelianGroup::free_group(1), FPAbelianGroup::free_group(1)};
    std::vector<IntMatrix> diffs{IntMatrix(0, 1), IntMatrix::identity(1)};
    return std::make_shared<ChainComplex>(0, std::move(groups), std::move(diffs));
}

ChainPtr ChainComplex::concentrated(int degree, FPAbelianGroup g) {
    std::vector<FPAbelianGroup> groups{std::move(g)};
    std::vector<IntMatrix> diffs{IntMatrix(0, groups[0].gens())};
    return std::make_shared<ChainComplex>(degree, std::move(groups), std::move(diffs));
}

ChainMap::ChainMap(ChainPtr dom, ChainPtr cod, std::map<int, IntMatrix> mats)
    : dom_(std::move(dom)), cod_(std::move(cod)), mats_(std::move(mats)) {
    validate();
}

IntMatrix ChainMap::at(int d) const {
    auto it = mats_.find(d);
    if (it != mats_.end()) return it->second;
    return IntMatrix(cod_->gens(d), dom_->gens(d));
}

void ChainMap::validate() const {
    for (int d = dom_->lo(); d <= dom_->hi(); ++d) {
        IntMatrix f = at(d);
        if (f.rows() != cod_->gens(d) || f.cols() != dom_->gens(d))
            throw EngineError("chain map: component shape mismatch");
        if (cod_->gens(d) > 0 && dom_->group(d).rels().cols() > 0) {
            if (!columns_in_span(cod_->group(d).rels(), f * dom_->group(d).rels()))
                throw EngineError("chain map: does not respect relations");
        }
        if (dom_->gens(d) > 0 && cod_->gens(d) == 0 && dom_->group(d).type().is_trivial() == false) {
            // Mapping a nontrivial group to 0 is fine; nothing to check.
        }
        // Commutes with the differential up to relations.
        IntMatrix lhs = cod_->diff(d) * f;
        IntMatrix rhs = at(d - 1) * dom_->diff(d);
        if (lhs.rows() > 0) {
            IntMatrix delta = lhs - rhs;
            if (!delta.is_zero() && !columns_in_span(cod_->group(d - 1).rels(), delta))
                throw EngineError("chain map: does not commute with the differential");
        }
    }
    // Components with domain outside the stored range must vanish.
    for (const auto& [d, m] : mats_) {
        if ((d < dom_->lo() || d > dom_->hi()) && !m.is_zero())
            throw EngineError("chain map: component outside the domain range");
    }
}

std::optional<Mor> ChainMap::try_make(ChainPtr dom, ChainPtr cod, std::map<int, IntMatrix> mats) {
    try {
        return Mor(std::make_shared<ChainMap>(std::move(dom), std::move(cod), std::move(mats)));
    } catch (const EngineError&) {
        return std::nullopt;
    }
}

Mor make_chain_map(ChainPtr dom, ChainPtr cod, std::map<int, IntMatrix> mats) {
    return Mor(std::make_shared<ChainMap>(std::move(dom), std::move(cod), std::move(mats)));
}

std::vector<GroupType> chain_homology(const ChainComplex& c) {
    std::vector<GroupType> out;
    for (int d = c.lo(); d <= c.hi(); ++d) {
        if (c.gens(d) == 0) {
            out.push_back(GroupType{});
            continue;
        }
        // Cycles: x with d(x) in the relation lattice of C_{d-1}.
        IntMatrix bd = c.diff(d);
        IntMatrix rel_below = c.group(d - 1).rels();
        IntMatrix cycles(0, 0);
        if (bd.rows() == 0) {
            cycles = IntMatrix::identity(c.gens(d));
        } else {
            IntMatrix stacked = bd.hcat(rel_below.rows() == bd.rows() ? rel_below
                                                                      : IntMatrix(bd.rows(), 0));
            IntMatrix ker = kernel_basis(stacked);
            cycles = IntMatrix(c.gens(d), ker.cols());
            for (int i = 0; i < c.gens(d); ++i)
                for (int j = 0; j < ker.cols(); ++j) cycles.at(i, j) = ker.at(i, j);
        }
        // Boundaries + relations, expressed in the cycle basis.
        IntMatrix killers = c.diff(d + 1).hcat(c.group(d).rels());
        IntMatrix expressed(cycles.cols(), killers.cols());
        if (killers.cols() > 0) {
            auto sol = solve_linear(cycles, killers);
            if (!sol) throw EngineError("homology: boundaries are not cycles");
            expressed = *sol;
        }
        out.push_back(FPAbelianGroup(cycles.cols(), expressed).type());
    }
    return out;
}

ChainPtr mapping_cone(const Mor& f) {
    const auto& fm = f.chain();
    const ChainComplex& a = *fm.dom_ptr();
    const ChainComplex& b = *fm.cod_ptr();
    int lo = std::min(a.lo() + 1, b.lo());
    int hi = std::max(a.hi() + 1, b.hi());
    if (lo > hi) return ChainComplex::zero();

    std::vector<FPAbelianGroup> groups;
    std::vector<IntMatrix> diffs;
    for (int d = lo; d <= hi; ++d) {
        int ga = a.gens(d - 1), gb = b.gens(d);
        // Relations: block diagonal.
        IntMatrix rel(ga + gb, a.group(d - 1).rels().cols() + b.group(d).rels().cols());
        for (int i = 0; i < ga; ++i)
            for (int j = 0; j < a.group(d - 1).rels().cols(); ++j)
                rel.at(i, j) = a.group(d - 1).rels().at(i, j);
        for (int i = 0; i < gb; ++i)
            for (int j = 0; j < b.group(d).rels().cols(); ++j)
                rel.at(ga + i, a.group(d - 1).rels().cols() + j) = b.group(d).rels().at(i, j);
        groups.emplace_back(ga + gb, rel);

        // d(x, y) = (-d_A x, d_B y - f x).
        int rga = a.gens(d - 2), rgb = b.gens(d - 1);
        IntMatrix m(rga + rgb, ga + gb);
        IntMatrix da = a.diff(d - 1), db = b.diff(d), fc = fm.at(d - 1);
        for (int i = 0; i < rga; ++i)
            for (int j = 0; j < ga; ++j) m.at(i, j) = -da.at(i, j);
        for (int i = 0; i < rgb; ++i) {
            for (int j = 0; j < ga; ++j) m.at(rga + i, j) = -fc.at(i, j);
            for (int j = 0; j < gb; ++j) m.at(rga + i, ga + j) = db.at(i, j);
        }
        diffs.push_back(std::move(m));
    }
    return std::make_shared<ChainComplex>(lo, std::move(groups), std::move(diffs));
}

} // namespace pplab
