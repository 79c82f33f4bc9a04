#include "pplab/homotopy.hpp"

#include <sstream>

namespace pplab {

Mor homotopy_endpoint(const HomotopyWitness& w, int which) {
    const auto& e = sset_engine();
    const Obj prod = w.homotopy.dom();
    int vertex = which == 0 ? w.p0 : w.p1;
    Mor to_p = sset_constant_map(w.source.sset_ptr(), w.parameter.sset_ptr(), vertex);
    Mor pairing = e.pair_into_product(prod, {to_p, e.identity(w.source)});
    return e.compose(w.homotopy, pairing);
}

HomotopyVerdict verify_homotopy(const HomotopyWitness& w) {
    const auto& e = sset_engine();
    HomotopyVerdict v;
    for (int which : {0, 1}) {
        Mor got = homotopy_endpoint(w, which);
        const Mor& want = which == 0 ? w.endpoint0 : w.endpoint1;
        if (!e.equal_morphisms(got, want)) {
            v.pass = false;
            // Locate the first disagreeing simplex.
            const auto& gm = got.sset();
            const auto& wm = want.sset();
            for (int k = 0; k <= gm.dom_ptr()->dim() && v.failure.empty(); ++k)
                for (int c = 0; c < gm.dom_ptr()->cells(k); ++c)
                    if (!(gm.images()[k][c] == wm.images()[k][c])) {
                        std::ostringstream os;
                        os << "endpoint " << (which == 0 ? 0 : 2) << " differs at cell (dim " << k
                           << ", idx " << c << ")";
                        v.failure = os.str();
                        break;
                    }
            return v;
        }
    }
    for (const auto& c : w.constraints) {
        Mor inc = e.sub_inclusion(c.sub_dom);
        Mor restricted = e.compose(w.homotopy, e.tensor_list_mor({e.identity(w.parameter), inc}));
        Subobject img = e.image_subobject(restricted);
        Subobject meet = e.sub_intersection(img, c.sub_cod);
        if (!(meet == img)) {
            v.pass = false;
            v.failure = "homotopy leaves the declared subobject";
            return v;
        }
    }
    return v;
}

HomotopyWitness build_horn_contraction_with_rule(int m, int k,
                                                 const std::function<int(int, int)>& rule) {
    if (m < 1 || k < 0 || k > m) throw EngineError("horn contraction: invalid (m, k)");
    const auto& e = sset_engine();
    auto lambda = SimplicialSet::horn(2, 1);
    auto simplex = SimplicialSet::standard_simplex(m);
    auto prod = SimplicialSet::product({lambda, simplex});

    // Vertex rule on Lambda x Delta^m; product vertices are (j, i) pairs.
    std::vector<int> vertex_images(prod->cells(0));
    auto meta = prod->product_meta();
    for (int c = 0; c < prod->cells(0); ++c) {
        int j = meta->tuples[0][c][0].cell.idx;
        int i = meta->tuples[0][c][1].cell.idx;
        vertex_images[c] = rule(j, i);
    }
    auto h = map_to_simplex(prod, m, vertex_images);
    if (!h) throw EngineError("horn contraction: vertex rule is not simplicial");

    HomotopyWitness w;
    w.parameter = Obj(lambda);
    w.p0 = 0;
    w.p1 = 2;
    w.source = Obj(simplex);
    w.target = Obj(simplex);
    w.homotopy = *h;
    w.endpoint0 = sset_identity(simplex);
    w.endpoint1 = sset_constant_map(simplex, simplex, k);
    Subobject horn_sub = e.image_subobject(horn_inclusion(m, k));
    w.constraints.push_back(HomotopyWitness::Constraint{horn_sub, horn_sub});
    return w;
}

HomotopyWitness build_horn_contraction(int m, int k) {
    return build_horn_contraction_with_rule(
        m, k, [k](int j, int i) { return j == 0 ? i : (j == 1 ? std::max(k, i) : k); });
}

} // namespace pplab
