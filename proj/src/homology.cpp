#include "pplab/homology.hpp"

namespace pplab {

ChainPtr normalized_chains(const SimplicialSet& x) {
    if (x.dim() < 0) return ChainComplex::zero();
    std::vector<FPAbelianGroup> groups;
    std::vector<IntMatrix> diffs;
    for (int k = 0; k <= x.dim(); ++k) {
        groups.push_back(FPAbelianGroup::free_group(x.cells(k)));
        IntMatrix m(k >= 1 ? x.cells(k - 1) : 0, x.cells(k));
        for (int c = 0; k >= 1 && c < x.cells(k); ++c)
            for (int i = 0; i <= k; ++i) {
                const FaceRef& f = x.face(CellRef{k, c}, i);
                if (!f.word.empty()) continue; // degenerate faces vanish
                m.at(f.cell, c) += (i % 2 == 0) ? 1 : -1;
            }
        diffs.push_back(std::move(m));
    }
    return std::make_shared<ChainComplex>(0, std::move(groups), std::move(diffs));
}

Mor normalized_chain_map(const Mor& f) {
    const auto& fm = f.sset();
    auto dom = normalized_chains(*fm.dom_ptr());
    auto cod = normalized_chains(*fm.cod_ptr());
    std::map<int, IntMatrix> mats;
    for (int k = 0; k <= fm.dom_ptr()->dim(); ++k) {
        IntMatrix m(cod->gens(k), dom->gens(k));
        for (int c = 0; c < fm.dom_ptr()->cells(k); ++c) {
            const FormalSimplex& img = fm.images()[k][c];
            if (img.word.empty()) m.at(img.cell.idx, c) = 1;
        }
        mats[k] = std::move(m);
    }
    return make_chain_map(dom, cod, std::move(mats));
}

std::vector<GroupType> sset_homology(const SimplicialSet& x, int upto) {
    auto c = normalized_chains(x);
    auto h = chain_homology(*c);
    std::vector<GroupType> out;
    for (int k = 0; k <= upto; ++k)
        out.push_back(k - c->lo() >= 0 && k <= c->hi() ? h[k - c->lo()] : GroupType{});
    return out;
}

HomologyIsoVerdict is_homology_iso(const Mor& f, int upto) {
    Mor cf = normalized_chain_map(f);
    auto cone = mapping_cone(cf);
    auto h = chain_homology(*cone);
    HomologyIsoVerdict v;
    v.upto = upto;
    v.pass = true;
    for (int k = 0; k <= upto; ++k) {
        GroupType g = (k >= cone->lo() && k <= cone->hi()) ? h[k - cone->lo()] : GroupType{};
        if (!g.is_trivial()) v.pass = false;
        v.cone_homology.push_back(std::move(g));
    }
    return v;
}

} // namespace pplab
