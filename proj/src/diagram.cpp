#include "pplab/diagram.hpp"

#include <algorithm>
#include <sstream>

namespace pplab {

DiagramOnPoset::DiagramOnPoset(int n, std::vector<std::pair<int, int>> order_pairs,
                               std::vector<Obj> labels, std::map<std::pair<int, int>, Mor> cover_maps)
    : n_(n), labels_(std::move(labels)), cover_maps_(std::move(cover_maps)) {
    if (static_cast<int>(labels_.size()) != n_) throw EngineError("diagram: one label per element");
    leq_.assign(n_, std::vector<bool>(n_, false));
    for (int i = 0; i < n_; ++i) leq_[i][i] = true;
    for (auto [a, b] : order_pairs) leq_[a][b] = true;
    // Transitive closure.
    for (int k = 0; k < n_; ++k)
        for (int i = 0; i < n_; ++i)
            if (leq_[i][k])
                for (int j = 0; j < n_; ++j)
                    if (leq_[k][j]) leq_[i][j] = true;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (i != j && leq_[i][j] && leq_[j][i]) throw EngineError("diagram: order has a cycle");

    // Covering relations: x < y with nothing strictly between.
    for (int x = 0; x < n_; ++x)
        for (int y = 0; y < n_; ++y) {
            if (x == y || !leq_[x][y]) continue;
            bool covered = true;
            for (int z = 0; z < n_ && covered; ++z)
                if (z != x && z != y && leq_[x][z] && leq_[z][y]) covered = false;
            if (covered) covers_.emplace_back(x, y);
        }
    for (const auto& c : covers_)
        if (!cover_maps_.count(c)) throw EngineError("diagram: missing cover morphism");

    // Composites along least-index covering chains, bottom-up by interval.
    const auto& e = engine_for(labels_.empty() ? EngineTag::FinSet : labels_[0].tag());
    for (int x = 0; x < n_; ++x) path_maps_[{x, x}] = e.identity(labels_[x]);
    // Repeated passes until all intervals have a composite (chains are short).
    bool progress = true;
    while (progress) {
        progress = false;
        for (int x = 0; x < n_; ++x)
            for (int y = 0; y < n_; ++y) {
                if (!leq_[x][y] || path_maps_.count({x, y})) continue;
                for (const auto& [z, w] : covers_) {
                    if (w != y || !leq_[x][z] || !path_maps_.count({x, z})) continue;
                    path_maps_[{x, y}] = e.compose(cover_maps_.at({z, w}), path_maps_.at({x, z}));
                    progress = true;
                    break;
                }
            }
    }
    validate_functorial();
}

const Mor& DiagramOnPoset::cover_map(int x, int y) const { return cover_maps_.at({x, y}); }

const Mor& DiagramOnPoset::path_map(int x, int y) const {
    auto it = path_maps_.find({x, y});
    if (it == path_maps_.end()) throw EngineError("diagram: no path map for the pair");
    return it->second;
}

void DiagramOnPoset::validate_functorial() const {
    if (n_ == 0) return;
    const auto& e = engine_for(labels_[0].tag());
    // Every covering chain composes to the stored path map: it suffices that
    // for each cover z -> y and each x <= z, path(x,y) = cover(z,y) o path(x,z).
    for (const auto& [z, y] : covers_)
        for (int x = 0; x < n_; ++x) {
            if (!leq_[x][z]) continue;
            Mor via = e.compose(cover_maps_.at({z, y}), path_maps_.at({x, z}));
            if (!e.equal_morphisms(via, path_maps_.at({x, y}))) {
                std::ostringstream os;
                os << "diagram: labeling not functorial on triple (" << x << " <= " << z << " <= " << y
                   << ")";
                throw EngineError(os.str());
            }
        }
}

PosetColimit poset_colimit(const DiagramOnPoset& d, const EngineContract& e) {
    std::vector<Obj> labels;
    for (int i = 0; i < d.size(); ++i) labels.push_back(d.label(i));
    std::vector<Mor> inj;
    Obj sum = e.coproduct(labels, &inj);

    // Coequalize inj_y o f(x->y) against inj_x over all covers.
    std::vector<Obj> feet;
    std::vector<Mor> legs_u, legs_v;
    for (const auto& [x, y] : d.covers()) {
        feet.push_back(d.label(x));
        legs_u.push_back(e.compose(inj[y], d.cover_map(x, y)));
        legs_v.push_back(inj[x]);
    }
    Mor q;
    if (feet.empty()) {
        q = e.coequalizer(e.identity(sum), e.identity(sum));
    } else {
        std::vector<Mor> finj;
        Obj fsum = e.coproduct(feet, &finj);
        q = e.coequalizer(e.coproduct_map(fsum, legs_u), e.coproduct_map(fsum, legs_v));
    }

    PosetColimit c;
    c.obj = q.cod();
    c.projection = q;
    for (int i = 0; i < d.size(); ++i) c.cocone.push_back(e.compose(q, inj[i]));
    return c;
}

std::optional<Mor> colimit_universal(const DiagramOnPoset& d, const PosetColimit& c,
                                     const std::vector<Mor>& cocone, const EngineContract& e) {
    Mor h = e.coproduct_map(c.projection.dom(), cocone);
    return e.factor_through_epi(c.projection, h);
}

} // namespace pplab
