#pragma once

#include "pplab/diagram.hpp"
#include "pplab/group.hpp"
#include "pplab/simplicial.hpp"

#include <optional>
#include <vector>

namespace pplab {

// An object of Ar(C): a morphism with its engine tag.
using ArrowObject = Mor;

// Commutative square, i.e. a morphism src -> dst in the arrow category.
struct ArrowSquare {
    Mor src;    // f : A -> B
    Mor dst;    // g : C -> D
    Mor top;    // A -> C
    Mor bottom; // B -> D

    void validate() const; // commutativity under the engine's equality
};

// Is the square cocartesian? (pushout comparison map is an isomorphism)
bool is_cocartesian(const ArrowSquare& s);

// Componentwise comparison of two parallel arrows by isomorphisms commuting
// with them. Requires mono arrows for sset/finset; used by law checks.
std::optional<ArrowSquare> find_arrow_isomorphism(const Mor& a, const Mor& b);

// Sequence (n_1, ..., n_e) of nonnegative integers, not all zero.
struct MultiIndex {
    std::vector<int> parts;

    explicit MultiIndex(std::vector<int> p);
    static MultiIndex single(int n) { return MultiIndex(std::vector<int>{n}); }
    // All-zero allowed (used for the k-range of filtration steps).
    static MultiIndex unchecked(std::vector<int> p) {
        MultiIndex m(std::vector<int>{1});
        m.parts = std::move(p);
        return m;
    }

    int length() const { return static_cast<int>(parts.size()); }
    int total() const;
    bool leq(const MultiIndex& o) const; // componentwise
    bool operator==(const MultiIndex& o) const { return parts == o.parts; }
    std::string to_string() const;

    // All k with 0 <= k <= n, ascending by |k| then lex.
    std::vector<MultiIndex> sub_indices() const;
};

// Arrow with compatible group actions on both ends.
struct EquivariantArrow {
    Mor arrow;
    GroupAction dom_action;
    GroupAction cod_action;

    EquivariantArrow(Mor arrow, GroupAction dom, GroupAction cod);
    const FinGroupPtr& group() const { return dom_action.group(); }

    static EquivariantArrow with_trivial_action(FinGroupPtr g, const Mor& arrow);
};

// Result of a pushout product: the universal arrow, the punctured-cube cocone
// and (for powers) the symmetric-group action permuting the factors.
struct PPResult {
    Mor arrow;
    std::vector<Mor> factors; // the input family, one entry per tensor slot
    // Cube vertices are subsets eps of {0,1}^N minus all-ones, in lex order;
    // cocone[v] maps the eps-labeled tensor into the domain of `arrow`.
    std::vector<std::vector<int>> vertices;
    std::vector<Mor> cocone;
    bool mono_mode = false;
    Subobject domain_subobject; // meaningful in mono mode
    std::optional<EquivariantArrow> equivariant;
};

// Binary and n-ary pushout products.
PPResult pp(const Mor& f, const Mor& g);
PPResult pp_family(const std::vector<Mor>& fs);
// Binary pushout-product domain via the displayed pushout X1xY2 u_{X1xX2} Y1xX2.
Mor pp_binary_via_pushout(const Mor& f, const Mor& g);

// n-fold power with the place-permutation action of Sym(n).
PPResult pp_power(const Mor& f, int n);
// Multi-index power of a family with the prod Sym(n_i) action.
PPResult pp_multi(const std::vector<Mor>& family, const MultiIndex& n);

// Functorial map pp(fs) -> pp(gs) induced by componentwise squares.
ArrowSquare pp_functorial_map(const PPResult& a, const PPResult& b,
                              const std::vector<ArrowSquare>& components);

// The canonical comparison pp(f, g) -> pp(g, f) along the engine symmetry.
ArrowSquare pp_symmetry_comparison(const Mor& f, const Mor& g);

// Arrow-category cofibration test for sset (projective structure):
// top map mono and the induced map from the pushout to the bottom-right mono.
bool is_arrow_cofibration(const ArrowSquare& s);

struct CoinvPP {
    Mor arrow;                           // the quotient arrow
    EquivariantArrow equivariant_total;  // y pp s^{pp n} (or Y x s^{pp n}) with its action
    Coinvariants dom_quotient, cod_quotient;
};

// y pp_{Sigma_n} s^{pp n} := (y pp s^{pp n})_{Sigma_n}.
CoinvPP coinv_pp(const EquivariantArrow& y, const std::vector<Mor>& family, const MultiIndex& n);

// Y (x)_{Sigma_n} s^{pp n}.
CoinvPP tensor_coinv(const GroupAction& y_action, const std::vector<Mor>& family, const MultiIndex& n);

// The coinvariant arrow of an equivariant arrow.
CoinvPP arrow_coinvariants(const EquivariantArrow& a);

// Degreewise-discrete embedding finset -> sset (cocontinuous strong monoidal).
Obj discrete_obj(const Obj& finset_obj);
Mor discrete_map(const Mor& finset_map);

} // namespace pplab
