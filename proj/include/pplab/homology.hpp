#pragma once

#include "pplab/chain.hpp"
#include "pplab/simplicial.hpp"

namespace pplab {

// Normalized chains: degree-k group free on the nondegenerate k-simplices,
// differential the alternating face sum with degenerate faces dropped.
ChainPtr normalized_chains(const SimplicialSet& x);
Mor normalized_chain_map(const Mor& f); // sset map -> chain map

// H_0..H_upto of the normalized chains.
std::vector<GroupType> sset_homology(const SimplicialSet& x, int upto);

// Homology-surrogate verdict for "f is a weak equivalence": the mapping cone
// of the induced chain map is acyclic through the given degree.
struct HomologyIsoVerdict {
    bool pass = false;
    int upto = 0;
    std::vector<GroupType> cone_homology;
    static constexpr const char* flag = "homology-surrogate";
};
HomologyIsoVerdict is_homology_iso(const Mor& f, int upto);

} // namespace pplab
