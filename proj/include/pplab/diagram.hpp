#pragma once

#include "pplab/engine.hpp"

#include <map>
#include <vector>

namespace pplab {

// Finite poset with object labels on elements and morphism labels on covering
// relations. The labeling must be functorial: composites along covering
// chains within any interval agree.
class DiagramOnPoset {
public:
    DiagramOnPoset(int n, std::vector<std::pair<int, int>> order_pairs, std::vector<Obj> labels,
                   std::map<std::pair<int, int>, Mor> cover_maps);

    int size() const { return n_; }
    bool leq(int x, int y) const { return leq_[x][y]; }
    const Obj& label(int x) const { return labels_[x]; }
    const std::vector<std::pair<int, int>>& covers() const { return covers_; }
    const Mor& cover_map(int x, int y) const;
    // Composite along (any) covering chain from x to y, x <= y.
    const Mor& path_map(int x, int y) const;

private:
    void validate_functorial() const;

    int n_;
    std::vector<std::vector<bool>> leq_;
    std::vector<Obj> labels_;
    std::vector<std::pair<int, int>> covers_;
    std::map<std::pair<int, int>, Mor> cover_maps_;
    std::map<std::pair<int, int>, Mor> path_maps_;
};

struct PosetColimit {
    Obj obj;
    std::vector<Mor> cocone; // one leg per poset element
    Mor projection;          // coproduct of all labels -> obj
};

// Colimit via iterated coproduct + coequalizer over covering relations.
PosetColimit poset_colimit(const DiagramOnPoset& d, const EngineContract& e);

// The induced map out of the colimit for a commuting cocone, if it exists.
std::optional<Mor> colimit_universal(const DiagramOnPoset& d, const PosetColimit& c,
                                     const std::vector<Mor>& cocone, const EngineContract& e);

} // namespace pplab
