#pragma once

#include "pplab/simplicial.hpp"

#include <functional>
#include <string>

namespace pplab {

// A parametrized homotopy H : P x X -> Y with two distinguished parameter
// vertices and the claimed endpoint maps, plus optional subobject constraints
// "H carries P x sub_dom into sub_cod".
struct HomotopyWitness {
    Obj parameter; // P
    int p0 = 0, p1 = 0;
    Obj source, target;
    Mor homotopy; // P (x) X -> Y; domain carries product meta [P, X]
    Mor endpoint0, endpoint1;
    struct Constraint {
        Subobject sub_dom;
        Subobject sub_cod;
    };
    std::vector<Constraint> constraints;
};

struct HomotopyVerdict {
    bool pass = true;
    std::string failure; // first violation, human-readable
};

// Check endpoint identities and subobject preservation.
HomotopyVerdict verify_homotopy(const HomotopyWitness& w);

// Endpoint composite H o (p_i x X) for a witness-shaped homotopy.
Mor homotopy_endpoint(const HomotopyWitness& w, int which);

// The 2-horn-parametrized contraction of Delta^m onto vertex k, carrying
// Lambda^m_k into itself. Vertex rule: (0,i) -> i, (1,i) -> max(k,i),
// (2,i) -> k.
HomotopyWitness build_horn_contraction(int m, int k);

// Same construction with an arbitrary vertex rule (j, i) -> vertex; used for
// negative controls. Throws if the rule is not simplicial.
HomotopyWitness build_horn_contraction_with_rule(int m, int k,
                                                 const std::function<int(int, int)>& rule);

} // namespace pplab
